#![allow(dead_code)]

use implicit_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const GOLDEN: [&str; 4] = [
    "3*s^2*t*v-2*s*u*t^2-s^2*v^2+s*u*t*v-3*s*u*v^2-u^2*t*v+4*u^2*v^2-u^2*t^2",
    "3*s^2*t*v-s^2*v^2-3*s*u*t*v-s*u*v^2+u^2*t*v+u^2*t^2+u^2*t^2+s^2*t^2",
    "2*s^2*t^2-3*s^2*t*v-s^2*v^2+s*u*t*v+3*s*u*v^2-3*u^2*t*v+2*u^2*v^2-u^2*t^2",
    "2*s^2*t^2-3*s^2*t*v-2*s*u*t^2+s^2*v^2+5*s*u*t*v-3*s*u*v^2-3*u^2*t*v+4*u^2*v^2-u^2*t^2",
];

pub fn p1p1_vars() -> Variables {
    Variables::new(
        vec![vec!["s".into(), "u".into()], vec!["t".into(), "v".into()]],
        (0..4).map(|j| format!("X_{j}")).collect(),
    )
    .unwrap()
}

pub fn golden() -> ProblemInstance {
    ProblemInstance::parse(p1p1_vars(), &GOLDEN).unwrap()
}

/// Four random polynomials of bidegree `(a, b)` on `P^1 x P^1` with
/// coefficients in `[-5, 5]`. With `base_point`, the coefficient of
/// `s^a t^b` is zero in all of them, so `((1:0),(1:0))` is a common zero.
pub fn random_p1p1(a: u32, b: u32, base_point: bool, rng: &mut ChaCha8Rng) -> ProblemInstance {
    let vars = p1p1_vars();
    let f = (0..4)
        .map(|_| {
            let mut terms = Vec::new();
            for i in 0..=a {
                for j in 0..=b {
                    if base_point && i == a && j == b {
                        continue;
                    }
                    let c: i64 = rng.gen_range(-5..=5);
                    terms.push((Monomial::from_exponents(vec![i, a - i, j, b - j]), rat(c)));
                }
            }
            MultiPoly::from_terms(Ring::Parameter, 4, terms)
        })
        .collect();
    ProblemInstance::new(vars, f).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rank by plain Gauss-Jordan elimination over `Q`, kept separate from the
/// fraction-free code under test.
pub fn oracle_rank(rows: &[Vec<Rational>]) -> usize {
    use num_traits::Zero;
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for x in a[rank].iter_mut() {
            *x /= pivot.clone();
        }
        for i in 0..a.len() {
            if i != rank && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                let pr = a[rank].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x -= factor.clone() * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn random_qmatrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> QMatrix {
    // low rank often enough to make nullspaces interesting
    let sparse = rng.gen_bool(0.5);
    QMatrix::from_rows(
        (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| {
                        if sparse && rng.gen_bool(0.6) {
                            rat(0)
                        } else {
                            Rational::new(rng.gen_range(-4..=4).into(), rng.gen_range(1..=3).into())
                        }
                    })
                    .collect()
            })
            .collect(),
    )
    .unwrap()
}

/// Membership in the region written out from the support definition:
/// `mu` is in it iff `mu + gamma - k*gamma` lies in the support of
/// `H^k_B(R)` for some `k`, where that support is the union of the orthants
/// `{x_j <= -r_j - 1 (j in alpha), x_j >= 0 (j not in alpha)}` over the
/// nonempty `alpha` with `sum_{j in alpha} r_j + 1 = k`.
pub fn oracle_in_region(r: &[usize], gamma: &[i64], mu: &[i64]) -> bool {
    let s = r.len();
    let top = r.iter().sum::<usize>() + 1;
    for k in 0..=top {
        for mask in 1u32..(1 << s) {
            let weight: usize = (0..s).filter(|j| mask >> j & 1 == 1).map(|j| r[j]).sum();
            if weight + 1 != k {
                continue;
            }
            let inside = (0..s).all(|j| {
                let x = mu[j] + gamma[j] - k as i64 * gamma[j];
                if mask >> j & 1 == 1 {
                    x < -(r[j] as i64)
                } else {
                    x >= 0
                }
            });
            if inside {
                return true;
            }
        }
    }
    false
}
