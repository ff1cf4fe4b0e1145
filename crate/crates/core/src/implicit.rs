//! Extracting and certifying the implicit equation from `M_nu`.
//!
//! Ranks over `Q(T)` are computed by specialization at random points, so they
//! are probabilistic; every random choice is driven by an explicit seed. The
//! determinant itself is exact, and the final certificate (substituting the
//! parametrization into the result) is exact as well.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cox::suggest_nu;
use crate::error::{Error, Result};
use crate::koszul::{homology_dim, representation_matrix, LinearFormMatrix, ProblemInstance};
use crate::linalg::Rational;
use crate::poly::{gcd_poly, Monomial, MultiDegree, MultiPoly, Ring};

/// Target-variable specializations are drawn uniformly from
/// `[-SPECIALIZATION_RANGE, SPECIALIZATION_RANGE]`.
pub const SPECIALIZATION_RANGE: i64 = 1 << 20;

/// Parameter points for rank-drop checks are drawn uniformly from
/// `[-POINT_RANGE, POINT_RANGE]` in every coordinate.
pub const POINT_RANGE: i64 = 1000;

/// Specializations used for the generic rank inside [`rank_drop_check`].
pub const RANK_TRIALS: usize = 3;

fn random_values(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Vec<Rational> {
    (0..n)
        .map(|_| Rational::from_integer(BigInt::from(rng.gen_range(-range..=range))))
        .collect()
}

/// Rank of `m` over `Q(T)`, estimated as the largest rank among `trials`
/// random specializations of `T`.
pub fn generic_rank(m: &LinearFormMatrix, trials: usize, seed: u64) -> usize {
    let full = m.rows().min(m.cols());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..trials.max(1) {
        let values = random_values(&mut rng, m.nforms(), SPECIALIZATION_RANGE);
        best = best.max(m.specialize(&values).rank());
        if best == full {
            break;
        }
    }
    best
}

/// Outcome of specializing `T_j = f_j(p)` at random parameter points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankDropReport {
    pub generic_rank: usize,
    /// Rank at each sampled point off the base locus, in sampling order.
    pub point_ranks: Vec<usize>,
    /// Sampled points where every `f_j` vanished.
    pub base_locus_hits: usize,
    pub passed: bool,
}

/// Checks that the rank of `m` drops at points of the image.
pub fn rank_drop_check(
    m: &LinearFormMatrix,
    inst: &ProblemInstance,
    points: usize,
    seed: u64,
) -> Result<RankDropReport> {
    if m.nforms() != inst.f().len() {
        return Err(Error::ArityMismatch {
            expected: inst.f().len(),
            found: m.nforms(),
        });
    }
    let generic = generic_rank(m, RANK_TRIALS, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x9e37_79b9_7f4a_7c15));
    let nvars = inst.blocks().nvars();
    let mut point_ranks = Vec::with_capacity(points);
    let mut base_locus_hits = 0;
    for _ in 0..points {
        let p = random_values(&mut rng, nvars, POINT_RANGE);
        let values: Vec<Rational> = inst.f().iter().map(|f| f.eval_dense(&p)).collect();
        if values.iter().all(Zero::is_zero) {
            base_locus_hits += 1;
            continue;
        }
        point_ranks.push(m.specialize(&values).rank());
    }
    if point_ranks.is_empty() {
        return Err(Error::Inconclusive(
            "every sampled point lies on the base locus".into(),
        ));
    }
    let passed = point_ranks.iter().all(|&r| r < generic);
    Ok(RankDropReport {
        generic_rank: generic,
        point_ranks,
        base_locus_hits,
        passed,
    })
}

/// Clears denominators column by column; only changes the determinant by a
/// nonzero rational factor.
fn integral_poly_matrix(m: &LinearFormMatrix) -> Vec<Vec<MultiPoly>> {
    let mut polys = m.to_polys();
    for j in 0..m.cols() {
        let lcm = (0..m.rows())
            .flat_map(|i| m.entry(i, j).iter())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        if lcm.is_one() {
            continue;
        }
        let factor = Rational::from_integer(lcm);
        for row in polys.iter_mut() {
            row[j] = row[j].scale(&factor);
        }
    }
    polys
}

/// Determinant of a polynomial matrix by fraction-free elimination with
/// exact polynomial division. Not normalized.
pub fn det_poly_matrix(mut a: Vec<Vec<MultiPoly>>, ring: Ring, nvars: usize) -> MultiPoly {
    let n = a.len();
    if n == 0 {
        return MultiPoly::one(ring, nvars);
    }
    let mut prev = MultiPoly::one(ring, nvars);
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return MultiPoly::zero(ring, nvars);
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = if prev.is_constant() {
                    v.scale(&(Rational::one() / prev.coeff(&Monomial::one(nvars))))
                } else {
                    v.div_exact(&prev).expect("Bareiss division is exact")
                };
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Exact determinant of a square matrix of linear forms, normalized to be
/// integer-primitive with positive leading coefficient.
pub fn det_linear_matrix(m: &LinearFormMatrix) -> Result<MultiPoly> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let polys = integral_poly_matrix(m);
    let det = match Packing::new(m.nforms(), 2 * m.rows() as u32) {
        Some(pk) => pk.det(&polys),
        None => det_poly_matrix(polys, Ring::Target, m.nforms()),
    };
    Ok(det.normalized())
}

/// Integer polynomial as `(packed exponents, coefficient)` pairs sorted by
/// descending key.
type PackedPoly = Vec<(u64, BigInt)>;

/// Exponent vectors packed into one `u64`, first variable in the highest
/// bits, so that key order is lex order and monomial products are sums.
struct Packing {
    bits: u32,
    nvars: usize,
}

impl Packing {
    fn new(nvars: usize, max_degree: u32) -> Option<Packing> {
        let bits = (32 - max_degree.leading_zeros()).max(1);
        (nvars > 0 && bits as usize * nvars <= 64).then_some(Packing { bits, nvars })
    }

    fn field(&self, key: u64, i: usize) -> u64 {
        (key >> (self.bits as usize * (self.nvars - 1 - i))) & ((1u64 << self.bits) - 1)
    }

    fn divides(&self, d: u64, k: u64) -> bool {
        (0..self.nvars).all(|i| self.field(d, i) <= self.field(k, i))
    }

    fn pack(&self, p: &MultiPoly) -> PackedPoly {
        let mut out: PackedPoly = p
            .terms()
            .map(|(m, c)| {
                let key = m
                    .exponents()
                    .iter()
                    .fold(0u64, |acc, &e| (acc << self.bits) | e as u64);
                (key, c.to_integer())
            })
            .collect();
        out.sort_unstable_by_key(|e| std::cmp::Reverse(e.0));
        out
    }

    fn unpack(&self, p: &PackedPoly) -> MultiPoly {
        MultiPoly::from_terms(
            Ring::Target,
            self.nvars,
            p.iter().map(|(k, c)| {
                let exps = (0..self.nvars).map(|i| self.field(*k, i) as u32).collect();
                (Monomial::from_exponents(exps), Rational::from_integer(c.clone()))
            }),
        )
    }

    fn mul(a: &PackedPoly, b: &PackedPoly) -> PackedPoly {
        let mut prods: PackedPoly = Vec::with_capacity(a.len() * b.len());
        for (ka, ca) in a {
            for (kb, cb) in b {
                prods.push((ka + kb, ca * cb));
            }
        }
        prods.sort_unstable_by_key(|e| std::cmp::Reverse(e.0));
        let mut out: PackedPoly = Vec::with_capacity(prods.len());
        for (k, c) in prods {
            match out.last_mut() {
                Some((lk, lc)) if *lk == k => *lc += c,
                _ => {
                    if out.last().is_some_and(|(_, lc)| lc.is_zero()) {
                        out.pop();
                    }
                    out.push((k, c));
                }
            }
        }
        if out.last().is_some_and(|(_, lc)| lc.is_zero()) {
            out.pop();
        }
        out
    }

    fn sub(a: PackedPoly, b: PackedPoly) -> PackedPoly {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut a, mut b) = (a.into_iter().peekable(), b.into_iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (k, c) = b.next().unwrap();
                    out.push((k, -c));
                }
                (Some((ka, _)), Some((kb, _))) => match ka.cmp(kb) {
                    std::cmp::Ordering::Greater => out.push(a.next().unwrap()),
                    std::cmp::Ordering::Less => {
                        let (k, c) = b.next().unwrap();
                        out.push((k, -c));
                    }
                    std::cmp::Ordering::Equal => {
                        let (k, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let c = ca - cb;
                        if !c.is_zero() {
                            out.push((k, c));
                        }
                    }
                },
            }
        }
        out
    }

    fn div_exact(&self, a: &PackedPoly, b: &PackedPoly) -> Option<PackedPoly> {
        let (dk, dc) = b.first()?;
        if b.len() == 1 {
            return a
                .iter()
                .map(|(k, c)| {
                    let (q, r) = c.div_rem(dc);
                    (self.divides(*dk, *k) && r.is_zero()).then(|| (k - dk, q))
                })
                .collect();
        }
        let mut rem: std::collections::BTreeMap<u64, BigInt> = a.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((lk, lc)) = rem.pop_last() {
            if !self.divides(*dk, lk) {
                return None;
            }
            let (qc, r) = lc.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            let qk = lk - dk;
            for (k, c) in &b[1..] {
                let e = rem.entry(k + qk).or_insert_with(BigInt::zero);
                *e -= c * &qc;
                if e.is_zero() {
                    rem.remove(&(k + qk));
                }
            }
            quot.push((qk, qc));
        }
        Some(quot)
    }

    /// Fraction-free elimination over `Z[T]`; every division is exact.
    fn det(&self, polys: &[Vec<MultiPoly>]) -> MultiPoly {
        let n = polys.len();
        if n == 0 {
            return MultiPoly::one(Ring::Target, self.nvars);
        }
        let mut a: Vec<Vec<PackedPoly>> = polys
            .iter()
            .map(|row| row.iter().map(|p| self.pack(p)).collect())
            .collect();
        let mut prev: PackedPoly = vec![(0, BigInt::one())];
        let mut negate = false;
        for k in 0..n - 1 {
            if a[k][k].is_empty() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_empty()) else {
                    return MultiPoly::zero(Ring::Target, self.nvars);
                };
                a.swap(k, p);
                negate = !negate;
            }
            let (top, rest) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in rest.iter_mut() {
                for j in k + 1..n {
                    let v = Self::sub(
                        Self::mul(&pivot_row[k], &row[j]),
                        Self::mul(&row[k], &pivot_row[j]),
                    );
                    row[j] = self.div_exact(&v, &prev).expect("Bareiss division is exact");
                }
            }
            prev = std::mem::take(&mut a[k][k]);
        }
        let det = self.unpack(&a[n - 1][n - 1]);
        if negate {
            -&det
        } else {
            det
        }
    }
}

fn column_subsets(cols: usize, size: usize, samples: usize, seed: u64) -> Vec<Vec<usize>> {
    let total = crate::koszul::subsets(cols, size);
    if total.len() <= samples {
        return total;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample(&mut rng, total.len(), samples)
        .into_vec()
        .into_iter()
        .map(|i| total[i].clone())
        .collect()
}

/// Gcd of up to `samples` maximal minors taken on pseudo-random column
/// subsets; identically zero minors are skipped.
pub fn minors_gcd(m: &LinearFormMatrix, samples: usize, seed: u64) -> Result<MultiPoly> {
    if m.rows() > m.cols() {
        return Err(Error::Precondition(format!(
            "maximal minors need rows <= cols, matrix is {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if m.is_square() {
        let d = det_linear_matrix(m)?;
        return if d.is_zero() { Err(Error::AllMinorsZero) } else { Ok(d) };
    }
    let mut acc = MultiPoly::zero(Ring::Target, m.nforms());
    for cols in column_subsets(m.cols(), m.rows(), samples.max(1), seed) {
        let minor = det_linear_matrix(&m.select_columns(&cols))?;
        if minor.is_zero() {
            continue;
        }
        acc = gcd_poly(&acc, &minor)?;
        if acc.is_constant() {
            break;
        }
    }
    if acc.is_zero() {
        return Err(Error::AllMinorsZero);
    }
    Ok(acc.normalized())
}

/// Grids larger than this fall back to symbolic substitution.
pub const VERIFY_GRID_LIMIT: usize = 1 << 18;

/// Whether `delta(f_0, ..., f_n)` vanishes identically.
///
/// For homogeneous `delta` of degree `k` the composite is multihomogeneous
/// of degree `k * gamma`; after setting the last variable of every block to
/// one it has degree at most `k * gamma_i` in each remaining variable, so it
/// vanishes iff it vanishes on the grid `{0, ..., k * gamma_i}`.
pub fn verify_implicit(delta: &MultiPoly, inst: &ProblemInstance) -> Result<bool> {
    if delta.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if delta.ring() != Ring::Target || delta.nvars() != inst.f().len() {
        return Err(Error::ArityMismatch {
            expected: inst.f().len(),
            found: delta.nvars(),
        });
    }
    let blocks = inst.blocks();
    let k = delta.total_degree().unwrap_or(0) as usize;
    let bounds: Vec<usize> = (0..blocks.s())
        .map(|i| k * inst.gamma().0[i] as usize + 1)
        .collect();
    let grid = (0..blocks.s()).try_fold(1usize, |acc, i| {
        (0..blocks.r()[i]).try_fold(acc, |a, _| a.checked_mul(bounds[i]))
    });
    match grid {
        Some(size) if delta.is_homogeneous() && size <= VERIFY_GRID_LIMIT => {
            // free coordinates: every variable of block i except its last
            let free: Vec<(usize, usize)> = (0..blocks.s())
                .flat_map(|i| (0..blocks.r()[i]).map(move |j| (i, blocks.offset(i) + j)))
                .collect();
            // delta is homogeneous, so scaling all f_j by one constant is harmless
            let f_lcm = inst.f().iter().fold(BigInt::one(), |acc, f| acc.lcm(&denominator_lcm(f)));
            let fs: Vec<IntPoly> = inst.f().iter().map(|f| IntPoly::new(f, &f_lcm)).collect();
            let d = IntPoly::new(delta, &denominator_lcm(delta));
            let mut point = vec![BigInt::one(); blocks.nvars()];
            let mut counter = vec![0usize; free.len()];
            loop {
                for (c, &(_, v)) in counter.iter().zip(&free) {
                    point[v] = BigInt::from(*c);
                }
                let values: Vec<BigInt> = fs.iter().map(|f| f.eval(&point)).collect();
                if !d.eval(&values).is_zero() {
                    return Ok(false);
                }
                let Some(pos) = (0..free.len()).find(|&t| counter[t] + 1 < bounds[free[t].0]) else {
                    return Ok(true);
                };
                counter[pos] += 1;
                counter[..pos].iter_mut().for_each(|c| *c = 0);
            }
        }
        _ => Ok(delta.substitute_targets(inst.f())?.is_zero()),
    }
}

fn denominator_lcm(p: &MultiPoly) -> BigInt {
    p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
}

/// Integer polynomial for fast repeated evaluation.
struct IntPoly {
    terms: Vec<(Vec<u32>, BigInt)>,
    max_exp: u32,
}

impl IntPoly {
    fn new(p: &MultiPoly, scale: &BigInt) -> IntPoly {
        let terms: Vec<(Vec<u32>, BigInt)> = p
            .terms()
            .map(|(m, c)| (m.exponents().to_vec(), (c * Rational::from_integer(scale.clone())).to_integer()))
            .collect();
        let max_exp = terms.iter().flat_map(|(e, _)| e.iter().copied()).max().unwrap_or(0);
        IntPoly { terms, max_exp }
    }

    fn eval(&self, values: &[BigInt]) -> BigInt {
        let powers: Vec<Vec<BigInt>> = values
            .iter()
            .map(|v| {
                let mut row = vec![BigInt::one()];
                for e in 0..self.max_exp as usize {
                    let next = &row[e] * v;
                    row.push(next);
                }
                row
            })
            .collect();
        self.terms
            .iter()
            .map(|(exps, c)| {
                exps.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(c.clone(), |acc, (j, &e)| acc * &powers[j][e as usize])
            })
            .sum()
    }
}

/// Degree of the strand determinant predicted from Koszul homology for
/// four polynomials of bidegree `(a, b)` on `P^1 x P^1`, at
/// `nu = (2a-1, b-1)` or `(a-1, 2b-1)`: `2ab - dim (H_2)_{nu + 2 gamma}`.
pub fn expected_degree_p1p1(inst: &ProblemInstance, nu: &MultiDegree) -> Result<usize> {
    if inst.blocks().r() != [1, 1] || inst.f().len() != 4 {
        return Err(Error::Precondition(
            "needs four polynomials on P^1 x P^1".into(),
        ));
    }
    let (a, b) = (inst.gamma().0[0], inst.gamma().0[1]);
    let allowed = [MultiDegree(vec![2 * a - 1, b - 1]), MultiDegree(vec![a - 1, 2 * b - 1])];
    if !allowed.contains(nu) {
        return Err(Error::Precondition(format!(
            "nu must be {} or {}",
            allowed[0], allowed[1]
        )));
    }
    let h2 = homology_dim(inst, 2, &(nu + &inst.gamma().scaled(2)))?;
    Ok((2 * a * b) as usize - h2)
}

/// Knobs for [`implicitize`]; see the defaults for the documented values.
#[derive(Clone, Debug)]
pub struct ImplicitOptions {
    /// Strand degree; `None` picks [`suggest_nu`].
    pub nu: Option<MultiDegree>,
    /// Maximal minors sampled when `M_nu` is not square.
    pub samples: usize,
    pub seed: u64,
    /// Parameter points used by the rank-drop check.
    pub rank_points: usize,
    /// Specializations used for the generic rank.
    pub rank_trials: usize,
}

impl Default for ImplicitOptions {
    fn default() -> Self {
        ImplicitOptions {
            nu: None,
            samples: 8,
            seed: 0,
            rank_points: 20,
            rank_trials: RANK_TRIALS,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtractionMethod {
    Determinant,
    MinorsGcd,
}

#[derive(Clone, Debug)]
pub struct ImplicitResult {
    /// Normalized strand determinant (or gcd of maximal minors).
    pub delta: MultiPoly,
    pub nu: MultiDegree,
    pub rows: usize,
    pub cols: usize,
    pub generic_rank: usize,
    pub square: bool,
    pub method: ExtractionMethod,
    pub expected_degree: Option<usize>,
    pub verified: bool,
    pub rank_drop: RankDropReport,
    pub warnings: Vec<String>,
}

impl ImplicitResult {
    pub fn degree(&self) -> u32 {
        self.delta.total_degree().unwrap_or(0)
    }

    pub fn to_document(&self, vars: &crate::poly::Variables) -> ImplicitResultDoc {
        ImplicitResultDoc {
            format: "implicit-result".into(),
            version: 1,
            nu: self.nu.clone(),
            rows: self.rows,
            cols: self.cols,
            generic_rank: self.generic_rank,
            specialized_ranks: self.rank_drop.point_ranks.clone(),
            rank_drop_passed: self.rank_drop.passed,
            square: self.square,
            method: self.method,
            degree: self.degree(),
            expected_degree: self.expected_degree,
            verified: self.verified,
            polynomial: self.delta.display(vars).to_string(),
            warnings: self.warnings.clone(),
        }
    }
}

/// JSON shape of an [`ImplicitResult`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImplicitResultDoc {
    pub format: String,
    pub version: u32,
    pub nu: MultiDegree,
    pub rows: usize,
    pub cols: usize,
    pub generic_rank: usize,
    pub specialized_ranks: Vec<usize>,
    pub rank_drop_passed: bool,
    pub square: bool,
    pub method: ExtractionMethod,
    pub degree: u32,
    pub expected_degree: Option<usize>,
    pub verified: bool,
    pub polynomial: String,
    pub warnings: Vec<String>,
}

/// Warnings about `nu` that do not stop the computation.
pub fn strand_warnings(inst: &ProblemInstance, nu: &MultiDegree) -> Result<Vec<String>> {
    let mut w = Vec::new();
    if inst.nu_in_region(nu)? {
        w.push(format!(
            "nu = {nu} lies in the region where the strand may have torsion; the determinant is not guaranteed to be a multiple of the implicit equation"
        ));
    }
    Ok(w)
}

/// Full pipeline: matrix, ranks, determinant or minors gcd, verification.
pub fn implicitize(inst: &ProblemInstance, opts: &ImplicitOptions) -> Result<ImplicitResult> {
    let blocks = inst.blocks();
    if inst.n() != blocks.dim() + 1 {
        return Err(Error::InvalidInstance(format!(
            "{} polynomials on a {}-dimensional space do not parametrize a hypersurface; need {}",
            inst.f().len(),
            blocks.dim(),
            blocks.dim() + 2
        )));
    }
    let nu = match &opts.nu {
        Some(nu) => {
            if nu.len() != blocks.s() {
                return Err(Error::ArityMismatch {
                    expected: blocks.s(),
                    found: nu.len(),
                });
            }
            nu.clone()
        }
        None => suggest_nu(blocks, inst.gamma())?,
    };
    let mut warnings = strand_warnings(inst, &nu)?;
    let m = representation_matrix(inst, &nu)?;
    if m.rows() == 0 || m.cols() == 0 {
        return Err(Error::Precondition(format!(
            "M_nu at nu = {nu} is {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let generic = generic_rank(&m, opts.rank_trials, opts.seed);
    let rank_drop = rank_drop_check(&m, inst, opts.rank_points, opts.seed)?;
    if !rank_drop.passed {
        warnings.push("rank of M_nu did not drop at every sampled point of the image".into());
    }
    if generic < m.rows() {
        return Err(Error::AllMinorsZero);
    }
    let (delta, method) = if m.is_square() {
        (det_linear_matrix(&m)?, ExtractionMethod::Determinant)
    } else {
        (minors_gcd(&m, opts.samples, opts.seed)?, ExtractionMethod::MinorsGcd)
    };
    let verified = verify_implicit(&delta, inst)?;
    let expected_degree = expected_degree_p1p1(inst, &nu).ok();
    let degree = delta.total_degree().unwrap_or(0) as usize;
    if let Some(e) = expected_degree {
        if e != degree {
            warnings.push(format!("degree {degree} differs from the predicted {e}"));
        }
    }
    Ok(ImplicitResult {
        delta,
        nu,
        rows: m.rows(),
        cols: m.cols(),
        generic_rank: generic,
        square: m.is_square(),
        method,
        expected_degree,
        verified,
        rank_drop,
        warnings,
    })
}
