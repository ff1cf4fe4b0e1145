mod common;

use common::oracle_in_region;
use implicit_core::cox::{q_alpha, supp_local_cohomology};
use implicit_core::*;
use proptest::prelude::*;

fn blocks_and_gamma() -> impl Strategy<Value = (Vec<usize>, Vec<i64>)> {
    (1usize..=3).prop_flat_map(|s| (prop::collection::vec(1usize..=3, s), prop::collection::vec(1i64..=4, s)))
}

fn box_points(s: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut pts = vec![vec![]];
    for _ in 0..s {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    pts
}

#[test]
fn q_alpha_are_pairwise_disjoint() {
    for r in [vec![1], vec![1, 1], vec![1, 2], vec![2, 1, 1]] {
        let blocks = BlockStructure::new(r.clone()).unwrap();
        let regions: Vec<OrthantRegion> = blocks
            .nonempty_subsets()
            .iter()
            .map(|a| q_alpha(&blocks, a).unwrap())
            .collect();
        for p in box_points(r.len(), -6, 6) {
            let mu = MultiDegree(p);
            let hits = regions.iter().filter(|q| q.contains(&mu)).count();
            assert!(hits <= 1, "{mu} lies in {hits} orthants for blocks {r:?}");
        }
    }
}

#[test]
fn local_cohomology_of_p1_times_p1() {
    let blocks = BlockStructure::new(vec![1, 1]).unwrap();
    assert_eq!(supp_local_cohomology(&blocks, 2).parts.len(), 2);
    assert_eq!(supp_local_cohomology(&blocks, 3).parts.len(), 1);
    for ell in [0, 1, 4, 5] {
        assert!(supp_local_cohomology(&blocks, ell).is_empty());
    }
}

#[test]
fn corner_of_p_r_times_p_s_is_outside_region() {
    for r in 1..=3usize {
        for s in r..=3usize {
            for a in 1..=4i64 {
                for b in 1..=4i64 {
                    let blocks = BlockStructure::new(vec![r, s]).unwrap();
                    let region = region_rb(&blocks, &MultiDegree(vec![a, b])).unwrap();
                    let (ri, si) = (r as i64, s as i64);
                    let corner = MultiDegree(vec![ri * a - ri, ri * b + si * b - si]);
                    assert!(!region.contains(&corner), "{corner} for r={r} s={s} a={a} b={b}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn region_matches_support_definition((r, gamma) in blocks_and_gamma()) {
        let blocks = BlockStructure::new(r.clone()).unwrap();
        let region = region_rb(&blocks, &MultiDegree(gamma.clone())).unwrap();
        let radius = if r.len() == 3 { 5 } else { 10 };
        for p in box_points(r.len(), -radius, radius) {
            let want = oracle_in_region(&r, &gamma, &p);
            prop_assert_eq!(region.contains(&MultiDegree(p.clone())), want, "at {:?}", p);
        }
    }

    #[test]
    fn suggested_nu_is_a_minimal_corner_outside_region((r, gamma) in blocks_and_gamma()) {
        let blocks = BlockStructure::new(r).unwrap();
        let gamma = MultiDegree(gamma);
        let region = region_rb(&blocks, &gamma).unwrap();
        let corners = complement_corners(&blocks, &gamma).unwrap();
        prop_assert!(!corners.is_empty());
        for c in &corners {
            prop_assert!(!region.contains(c));
            prop_assert!(c.all_nonnegative());
            // minimal: stepping down in any coordinate lands in the region or leaves N^s
            for i in 0..c.len() {
                let mut below = c.clone();
                below.0[i] -= 1;
                prop_assert!(below.0[i] < 0 || region.contains(&below));
            }
        }
        let nu = suggest_nu(&blocks, &gamma).unwrap();
        prop_assert!(corners.contains(&nu));
        let best = corners.iter().map(|c| strand_dim(&blocks, c)).min().unwrap();
        prop_assert_eq!(strand_dim(&blocks, &nu), best);
    }

    #[test]
    fn strand_basis_has_the_right_size((r, _) in blocks_and_gamma(), d in prop::collection::vec(-1i64..=4, 3)) {
        let blocks = BlockStructure::new(r.clone()).unwrap();
        let d = MultiDegree(d[..r.len()].to_vec());
        let basis = strand_basis(&blocks, &d);
        prop_assert_eq!(basis.len(), strand_dim(&blocks, &d));
        for w in basis.windows(2) {
            prop_assert!(w[0] > w[1]);
        }
        for m in &basis {
            prop_assert_eq!(m.multidegree(&blocks), d.clone());
        }
    }
}
