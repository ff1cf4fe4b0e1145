//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.

mod common;

use std::time::{Duration, Instant};

use common::*;
use implicit_core::*;
use num_traits::Zero;
use rand::Rng;

const SEED: u64 = 20_240_601;
const GOLDEN_MATRIX_BUDGET: Duration = Duration::from_secs(5);
const GOLDEN_DET_BUDGET: Duration = Duration::from_secs(30);
const RANK_POINTS: usize = 20;
const RANDOM_PER_BIDEGREE: usize = 20;
const BASE_LOCUS_POINTS: usize = 500;
const LEFT_KERNEL_POINTS: usize = 100;
const ORACLE_MATRICES: usize = 50;
const REGION_BOX: i64 = 12;

const GOLDEN_COEFFS: [i64; 7] = [63569053, -159051916, 175350068, -82733240, 2363584, 14285376, 139968];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn nu31() -> MultiDegree {
    MultiDegree(vec![3, 1])
}

fn golden_matrix() -> Outcome {
    let inst = golden();
    let start = Instant::now();
    let m = representation_matrix(&inst, &nu31()).map_err(|e| e.to_string())?;
    ensure(m.rows() == 8 && m.cols() == 8, || format!("M_nu is {}x{}", m.rows(), m.cols()))?;
    let g = generic_rank(&m, 3, SEED);
    ensure(g == 8, || format!("generic rank {g}"))?;
    let report = rank_drop_check(&m, &inst, RANK_POINTS, SEED).map_err(|e| e.to_string())?;
    ensure(report.point_ranks.len() >= RANK_POINTS, || {
        format!("only {} points off the base locus", report.point_ranks.len())
    })?;
    ensure(report.point_ranks.iter().all(|&r| r == 7), || {
        format!("specialized ranks {:?}", report.point_ranks)
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < GOLDEN_MATRIX_BUDGET, || format!("took {elapsed:.2?}"))?;
    Ok(format!("8x8, generic rank 8, rank 7 at {} points, {elapsed:.2?}", report.point_ranks.len()))
}

fn golden_equation() -> Outcome {
    let inst = golden();
    let start = Instant::now();
    let m = representation_matrix(&inst, &nu31()).map_err(|e| e.to_string())?;
    let delta = det_linear_matrix(&m).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(delta.total_degree() == Some(8), || format!("degree {:?}", delta.total_degree()))?;
    let coeffs: Vec<Rational> = (0..7u32)
        .map(|i| delta.coeff(&Monomial::from_exponents(vec![8 - i, i, 0, 0])))
        .collect();
    ensure(coeffs[0] > rat(0), || "X_0^8 coefficient is not positive".into())?;
    for (c, &p) in coeffs.iter().zip(&GOLDEN_COEFFS) {
        ensure(c * rat(GOLDEN_COEFFS[0]) == rat(p) * &coeffs[0], || {
            format!("coefficients {coeffs:?} not proportional to {GOLDEN_COEFFS:?}")
        })?;
    }
    ensure(elapsed < GOLDEN_DET_BUDGET, || format!("took {elapsed:.2?}"))?;
    Ok(format!("degree 8, X_0^8..X_0^2*X_1^6 match, {elapsed:.2?}"))
}

fn verification() -> Outcome {
    let inst = golden();
    let m = representation_matrix(&inst, &nu31()).map_err(|e| e.to_string())?;
    let delta = det_linear_matrix(&m).map_err(|e| e.to_string())?;
    ensure(delta.substitute_targets(inst.f()).map_err(|e| e.to_string())?.is_zero(), || {
        "golden determinant does not vanish on the parametrization".into()
    })?;
    // a perturbed equation must be rejected
    let bumped = &delta + &MultiPoly::monomial(Ring::Target, Monomial::from_exponents(vec![8, 0, 0, 0]), rat(1));
    ensure(!bumped.substitute_targets(inst.f()).unwrap().is_zero(), || {
        "perturbed equation also vanishes".into()
    })?;
    let mut rng = rng(SEED);
    let mut count = 0;
    for (a, b) in [(1, 1), (2, 1)] {
        for i in 0..RANDOM_PER_BIDEGREE {
            let inst = random_p1p1(a, b, false, &mut rng);
            let opts = ImplicitOptions { seed: SEED + i as u64, ..Default::default() };
            let res = implicitize(&inst, &opts).map_err(|e| format!("bidegree ({a},{b}) #{i}: {e}"))?;
            ensure(res.delta.substitute_targets(inst.f()).unwrap().is_zero(), || {
                format!("bidegree ({a},{b}) #{i}: delta(f) != 0")
            })?;
            ensure(res.verified, || format!("bidegree ({a},{b}) #{i}: pipeline did not verify"))?;
            count += 1;
        }
    }
    Ok(format!("golden + {count} random instances vanish exactly"))
}

fn regions() -> Outcome {
    let blocks = BlockStructure::new(vec![1, 1]).unwrap();
    let corners = complement_corners(&blocks, &MultiDegree(vec![2, 2])).map_err(|e| e.to_string())?;
    let expected = vec![MultiDegree(vec![1, 3]), MultiDegree(vec![3, 1])];
    ensure(corners == expected, || format!("corners {corners:?}"))?;
    let mut points = 0;
    for r in 1..=2usize {
        for s in 1..=2usize {
            for a in 1..=3i64 {
                for b in 1..=3i64 {
                    let blocks = BlockStructure::new(vec![r, s]).unwrap();
                    let gamma = MultiDegree(vec![a, b]);
                    let region = region_rb(&blocks, &gamma).map_err(|e| e.to_string())?;
                    let sigma = implicit_core::cox::sigma_b(&blocks, &gamma)
                        .map_err(|e| e.to_string())?
                        .translated(&MultiDegree(vec![-a, -b]));
                    for x in -REGION_BOX..=REGION_BOX {
                        for y in -REGION_BOX..=REGION_BOX {
                            let mu = MultiDegree(vec![x, y]);
                            let want = oracle_in_region(&[r, s], &[a, b], &[x, y]);
                            ensure(region.contains(&mu) == want && sigma.contains(&mu) == want, || {
                                format!("blocks ({r},{s}) gamma ({a},{b}) disagree at {mu}")
                            })?;
                            points += 1;
                        }
                    }
                    let (ri, si) = (r as i64, s as i64);
                    let closed = vec![
                        MultiDegree(vec![ri * a - ri, ri * b + si * b - si]),
                        MultiDegree(vec![ri * a + si * a - ri, si * b - si]),
                    ];
                    let got = complement_corners(&blocks, &gamma).map_err(|e| e.to_string())?;
                    ensure(got == closed, || {
                        format!("blocks ({r},{s}) gamma ({a},{b}): corners {got:?}, closed form {closed:?}")
                    })?;
                }
            }
        }
    }
    Ok(format!("corners {{(1,3),(3,1)}}; {points} memberships agree over 36 cases"))
}

fn common_zero_found(inst: &ProblemInstance, rng: &mut rand_chacha::ChaCha8Rng) -> bool {
    (0..BASE_LOCUS_POINTS).any(|_| {
        let p: Vec<Rational> = (0..4).map(|_| rat(rng.gen_range(-1000..=1000))).collect();
        inst.f().iter().all(|f| f.eval_dense(&p).is_zero())
    })
}

fn degree_accounting() -> Outcome {
    let mut rng = rng(SEED + 5);
    let (mut total, mut with_h2, mut empty_base) = (0, 0, 0);
    for (a, b) in [(1u32, 1u32), (2, 1), (1, 2), (2, 2)] {
        for base_point in [false, true] {
            for i in 0..3 {
                let inst = random_p1p1(a, b, base_point, &mut rng);
                let (ai, bi) = (a as i64, b as i64);
                let nu = MultiDegree(vec![2 * ai - 1, bi - 1]);
                let opts = ImplicitOptions { nu: Some(nu), seed: SEED + i, ..Default::default() };
                let res = implicitize(&inst, &opts).map_err(|e| format!("({a},{b}) #{i}: {e}"))?;
                let h2 = homology_dim(&inst, 2, &MultiDegree(vec![4 * ai - 1, 3 * bi - 1]))
                    .map_err(|e| e.to_string())?;
                let want = (2 * a * b) as usize - h2;
                ensure(res.degree() as usize == want, || {
                    format!("({a},{b}) base point {base_point} #{i}: degree {} but 2ab - h2 = {want}", res.degree())
                })?;
                ensure(res.verified, || format!("({a},{b}) #{i}: not verified"))?;
                if h2 > 0 {
                    with_h2 += 1;
                }
                if !base_point && !common_zero_found(&inst, &mut rng) {
                    ensure(res.degree() == 2 * a * b, || {
                        format!("({a},{b}) #{i}: empty base locus but degree {}", res.degree())
                    })?;
                    empty_base += 1;
                }
                total += 1;
            }
        }
    }
    Ok(format!("{total} instances ({with_h2} with H_2 != 0, {empty_base} with empty base locus of degree 2ab)"))
}

fn strand_invariants(inst: &ProblemInstance, nu: &MultiDegree, rng: &mut rand_chacha::ChaCha8Rng) -> Result<(), String> {
    let n1 = inst.f().len();
    let gamma = inst.gamma().clone();
    for shift in 1..n1 as i64 {
        let d = nu + &gamma.scaled(shift);
        for q in 1..n1 {
            let dq = koszul_differential_strand(inst, q, &d).map_err(|e| e.to_string())?;
            let dq1 = koszul_differential_strand(inst, q + 1, &d).map_err(|e| e.to_string())?;
            let t = dq1.transpose();
            for c in 0..dq1.cols() {
                ensure(dq.mul_vec(t.row(c)).iter().all(Zero::is_zero), || {
                    format!("d_{q} d_{} != 0 at {d}", q + 1)
                })?;
            }
        }
    }
    let z = z_complex_strand(inst, nu).map_err(|e| e.to_string())?;
    for w in z.differentials.windows(2) {
        ensure(w[0].composes_to_zero(&w[1]), || format!("Z-strand differentials do not compose to 0 at {nu}"))?;
    }
    let basis = cycle_basis(inst, 1, nu).map_err(|e| e.to_string())?;
    let nvars = inst.blocks().nvars();
    for c in 0..basis.len() {
        let g = basis.cycle_polys(c, nvars);
        let sum = g
            .iter()
            .zip(inst.f())
            .fold(MultiPoly::zero(Ring::Parameter, nvars), |acc, (gj, fj)| &acc + &(gj * fj));
        ensure(sum.is_zero(), || format!("syzygy {c} at {nu} is not a syzygy"))?;
    }
    let d1 = koszul_differential_strand(inst, 1, &(nu + &gamma)).map_err(|e| e.to_string())?;
    let k = strand_dim(inst.blocks(), nu);
    ensure(basis.len() == n1 * k - oracle_rank(&rows_of(&d1)), || {
        format!("rank-nullity fails at {nu}")
    })?;
    let m = representation_matrix(inst, nu).map_err(|e| e.to_string())?;
    let monomials = strand_basis(inst.blocks(), nu);
    let mut checked = 0;
    while checked < LEFT_KERNEL_POINTS {
        let p: Vec<Rational> = (0..nvars).map(|_| rat(rng.gen_range(-1000..=1000))).collect();
        let values: Vec<Rational> = inst.f().iter().map(|f| f.eval_dense(&p)).collect();
        if values.iter().all(Zero::is_zero) {
            continue;
        }
        let row: Vec<Rational> = monomials.iter().map(|mono| mono.eval(&p)).collect();
        let s = m.specialize(&values);
        ensure(s.transpose().mul_vec(&row).iter().all(Zero::is_zero), || {
            format!("left-kernel law fails at {p:?}")
        })?;
        checked += 1;
    }
    Ok(())
}

fn rows_of(m: &QMatrix) -> Vec<Vec<Rational>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn invariants() -> Outcome {
    let mut rng = rng(SEED + 6);
    let mut cases: Vec<(ProblemInstance, MultiDegree)> = vec![(golden(), nu31()), (golden(), MultiDegree(vec![1, 3]))];
    for (a, b) in [(1, 1), (2, 1), (1, 2)] {
        for base_point in [false, true] {
            let inst = random_p1p1(a, b, base_point, &mut rng);
            let nu = suggest_nu(inst.blocks(), inst.gamma()).unwrap();
            cases.push((inst, nu));
        }
    }
    for (inst, nu) in &cases {
        strand_invariants(inst, nu, &mut rng)?;
    }
    for i in 0..ORACLE_MATRICES {
        let (r, c) = (rng.gen_range(1..=9), rng.gen_range(1..=9));
        let m = random_qmatrix(r, c, &mut rng);
        let null = m.nullspace_basis();
        let rank = oracle_rank(&rows_of(&m));
        ensure(null.len() == c - rank, || format!("matrix #{i}: nullity {} but oracle rank {rank}", null.len()))?;
        ensure(null.iter().all(|v| m.mul_vec(v).iter().all(Zero::is_zero)), || {
            format!("matrix #{i}: nullspace vector not in kernel")
        })?;
        ensure(oracle_rank(&null) == null.len(), || format!("matrix #{i}: dependent nullspace basis"))?;
    }
    Ok(format!("{} strand cases, {ORACLE_MATRICES} oracle matrices", cases.len()))
}

fn size_comparison_documented() -> Outcome {
    let readme = include_str!("../../../README.md");
    let blocks = BlockStructure::new(vec![1, 1]).unwrap();
    let (a, b) = (2i64, 2i64);
    let embedded = strand_dim(&blocks, &MultiDegree(vec![2 * a, 2 * b]));
    let strand = strand_dim(&blocks, &nu31());
    ensure(embedded == 25 && strand == 8, || format!("sizes {embedded} vs {strand}"))?;
    ensure(readme.contains("25") && readme.contains("2ab = 8"), || {
        "README lacks the matrix size comparison".into()
    })?;
    Ok("embedded pipeline not implemented; README compares 25 vs 2ab = 8".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("1 golden matrix and ranks", golden_matrix),
        ("2 golden implicit equation", golden_equation),
        ("3 exact verification", verification),
        ("4 region correctness", regions),
        ("5 degree accounting", degree_accounting),
        ("6 invariant suites", invariants),
        ("7 embedded example documented only", size_comparison_documented),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("PASS  criterion {name}: {detail} [{:.2?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why} [{:.2?}]", start.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
