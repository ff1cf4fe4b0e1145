//! Graded strands of the Koszul complex of `f_0..f_n`, their cycles, and the
//! strands of the approximation complex of cycles built from them.
//!
//! Bases are fixed throughout:
//! * `(K_q)_d` is indexed by pairs (size-`q` subset `S` of `{0..n}`, monomial
//!   of degree `d - q*gamma`), subsets in lexicographic order, monomials in
//!   [`strand_basis`] order, subset-major.
//! * The Koszul differential is `e_S -> sum_{j in S} (-1)^{pos(j,S)} f_j e_{S\j}`
//!   with `pos` the 0-based position of `j` in increasing `S`.
//! * Cycle bases are the kernel bases returned by
//!   [`QMatrix::nullspace_basis`], in that order.

use serde::{Deserialize, Serialize};

use crate::cox::{region_rb, strand_basis, strand_dim, BlockStructure};
use crate::error::{Error, Result};
use crate::linalg::{primitive_integer_vector, QMatrix, Rational};
use crate::poly::{parse_poly, Monomial, MultiDegree, MultiPoly, Ring, Variables};

use num_traits::{One, Zero};
use std::collections::HashMap;

/// Parametrization `f_0..f_n` of common multidegree `gamma`.
#[derive(Clone, Debug)]
pub struct ProblemInstance {
    vars: Variables,
    f: Vec<MultiPoly>,
    gamma: MultiDegree,
}

impl ProblemInstance {
    /// Validates that there are at least two polynomials, one per target
    /// variable, all nonzero and multihomogeneous of one multidegree.
    pub fn new(vars: Variables, f: Vec<MultiPoly>) -> Result<Self> {
        if f.len() < 2 {
            return Err(Error::InvalidInstance(format!(
                "need at least two polynomials, got {}",
                f.len()
            )));
        }
        if vars.n_targets() != f.len() {
            return Err(Error::InvalidInstance(format!(
                "{} target variables declared for {} polynomials",
                vars.n_targets(),
                f.len()
            )));
        }
        let blocks = vars.blocks().clone();
        let mut gamma: Option<MultiDegree> = None;
        for (i, fi) in f.iter().enumerate() {
            if fi.ring() != Ring::Parameter || fi.nvars() != blocks.nvars() {
                return Err(Error::MixedRings);
            }
            let d = fi.multidegree(&blocks).map_err(|e| {
                Error::InvalidInstance(format!("polynomial {i}: {e}"))
            })?;
            match &gamma {
                None => gamma = Some(d),
                Some(g) if *g != d => {
                    return Err(Error::InvalidInstance(format!(
                        "polynomial {i} has multidegree {d}, expected {g}"
                    )));
                }
                Some(_) => {}
            }
        }
        Ok(ProblemInstance {
            vars,
            f,
            gamma: gamma.expect("at least two polynomials"),
        })
    }

    /// Parses the polynomials in the parameter ring of `vars`.
    pub fn parse(vars: Variables, polys: &[&str]) -> Result<Self> {
        let f = polys
            .iter()
            .map(|p| parse_poly(p, &vars, Ring::Parameter))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vars, f)
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn blocks(&self) -> &BlockStructure {
        self.vars.blocks()
    }

    pub fn f(&self) -> &[MultiPoly] {
        &self.f
    }

    pub fn gamma(&self) -> &MultiDegree {
        &self.gamma
    }

    /// `n`, for `n + 1` polynomials.
    pub fn n(&self) -> usize {
        self.f.len() - 1
    }

    /// Whether `nu` lies in the region where the strand is not guaranteed to
    /// compute the implicit equation.
    pub fn nu_in_region(&self, nu: &MultiDegree) -> Result<bool> {
        Ok(region_rb(self.blocks(), &self.gamma)?.contains(nu))
    }

    fn check_degree(&self, d: &MultiDegree) -> Result<()> {
        if d.len() != self.blocks().s() {
            return Err(Error::ArityMismatch {
                expected: self.blocks().s(),
                found: d.len(),
            });
        }
        Ok(())
    }
}

/// Size-`q` subsets of `{0..n1-1}` in lexicographic order.
pub fn subsets(n1: usize, q: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n1: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for j in start..n1 {
            cur.push(j);
            rec(j + 1, n1, q, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if q <= n1 {
        rec(0, n1, q, &mut Vec::with_capacity(q), &mut out);
    }
    out
}

fn koszul_sign(pos: usize) -> Rational {
    if pos.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Basis data for `(K_q)_d`.
struct KoszulStrand {
    subsets: Vec<Vec<usize>>,
    monomials: Vec<Monomial>,
}

impl KoszulStrand {
    fn new(inst: &ProblemInstance, q: usize, d: &MultiDegree) -> Self {
        let coeff_degree = d - &inst.gamma.scaled(q as i64);
        KoszulStrand {
            subsets: subsets(inst.f.len(), q),
            monomials: strand_basis(inst.blocks(), &coeff_degree),
        }
    }

    fn dim(&self) -> usize {
        self.subsets.len() * self.monomials.len()
    }
}

/// Matrix of `d_q : (K_q)_d -> (K_{q-1})_d`. For `q = 0` this is the zero map
/// to the zero module, a `0 x dim R_d` matrix.
pub fn koszul_differential_strand(inst: &ProblemInstance, q: usize, d: &MultiDegree) -> Result<QMatrix> {
    inst.check_degree(d)?;
    if q == 0 {
        return Ok(QMatrix::zeros(0, strand_dim(inst.blocks(), d)));
    }
    let dom = KoszulStrand::new(inst, q, d);
    let cod = KoszulStrand::new(inst, q - 1, d);
    let subset_index: HashMap<&[usize], usize> = cod
        .subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let mono_index: HashMap<&Monomial, usize> =
        cod.monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let ncod = cod.monomials.len();
    let mut mat = QMatrix::zeros(cod.dim(), dom.dim());
    for (si, s) in dom.subsets.iter().enumerate() {
        for (mi, m) in dom.monomials.iter().enumerate() {
            let col = si * dom.monomials.len() + mi;
            for (pos, &j) in s.iter().enumerate() {
                let sign = koszul_sign(pos);
                let rest: Vec<usize> = s.iter().copied().filter(|&x| x != j).collect();
                let ti = subset_index[rest.as_slice()];
                for (fm, fc) in inst.f[j].terms() {
                    let row = ti * ncod + mono_index[&fm.mul(m)];
                    let v = mat.get(row, col) + &sign * fc;
                    mat.set(row, col, v);
                }
            }
        }
    }
    Ok(mat)
}

/// Basis of `(Z_q)_{nu + q*gamma}`. Every cycle has coefficients in `R_nu`.
#[derive(Clone, Debug)]
pub struct CycleBasis {
    pub q: usize,
    pub internal_degree: MultiDegree,
    /// Size-`q` subsets indexing the exterior basis.
    pub subsets: Vec<Vec<usize>>,
    /// Basis of `R_nu`, the coefficient space of every component.
    pub monomials: Vec<Monomial>,
    /// Coordinate vectors, subset-major.
    pub cycles: Vec<Vec<Rational>>,
}

impl CycleBasis {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Coefficient polynomials `(g_S)_S` of cycle `c`, one per subset.
    pub fn cycle_polys(&self, c: usize, nvars: usize) -> Vec<MultiPoly> {
        let k = self.monomials.len();
        self.subsets
            .iter()
            .enumerate()
            .map(|(si, _)| {
                MultiPoly::from_terms(
                    Ring::Parameter,
                    nvars,
                    self.monomials
                        .iter()
                        .zip(&self.cycles[c][si * k..(si + 1) * k])
                        .map(|(m, x)| (m.clone(), x.clone())),
                )
            })
            .collect()
    }

    /// Matrix whose columns are the basis cycles.
    fn as_columns(&self, ambient: usize) -> QMatrix {
        let mut m = QMatrix::zeros(ambient, self.cycles.len());
        for (c, v) in self.cycles.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, c, x.clone());
                }
            }
        }
        m
    }
}

/// Kernel of `d_q` at degree `nu + q*gamma`; for `q = 0` this is all of `R_nu`.
pub fn cycle_basis(inst: &ProblemInstance, q: usize, nu: &MultiDegree) -> Result<CycleBasis> {
    inst.check_degree(nu)?;
    let d = nu + &inst.gamma.scaled(q as i64);
    let strand = KoszulStrand::new(inst, q, &d);
    let cycles = if !d.all_nonnegative() || strand.dim() == 0 {
        Vec::new()
    } else {
        // integer-primitive cycles keep the matrix entries readable
        koszul_differential_strand(inst, q, &d)?
            .nullspace_basis()
            .iter()
            .map(|v| primitive_integer_vector(v).into_iter().map(Rational::from_integer).collect())
            .collect()
    };
    Ok(CycleBasis {
        q,
        internal_degree: d,
        subsets: strand.subsets,
        monomials: strand.monomials,
        cycles,
    })
}

/// `dim (H_q)_d = dim ker (d_q)_d - rank (d_{q+1})_d`.
pub fn homology_dim(inst: &ProblemInstance, q: usize, d: &MultiDegree) -> Result<usize> {
    let dq = koszul_differential_strand(inst, q, d)?;
    let kernel = dq.cols() - dq.rank();
    let image = koszul_differential_strand(inst, q + 1, d)?.rank();
    Ok(kernel - image)
}

/// Matrix of linear forms in `T_0..T_n`, stored as one coefficient vector
/// per cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFormMatrix {
    rows: usize,
    cols: usize,
    nforms: usize,
    entries: Vec<Vec<Rational>>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

impl LinearFormMatrix {
    pub fn zeros(rows: usize, cols: usize, nforms: usize) -> Self {
        LinearFormMatrix {
            rows,
            cols,
            nforms,
            entries: vec![vec![Rational::zero(); nforms]; rows * cols],
            row_labels: (0..rows).map(|i| i.to_string()).collect(),
            col_labels: (0..cols).map(|i| i.to_string()).collect(),
        }
    }

    /// Builds a matrix from target-ring polynomials of degree at most one.
    /// Constant terms are rejected.
    pub fn from_polys(rows: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let nforms = rows
            .iter()
            .flatten()
            .next()
            .map_or(0, MultiPoly::nvars);
        let mut m = Self::zeros(nrows, ncols, nforms);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for (j, p) in row.iter().enumerate() {
                if p.ring() != Ring::Target || p.nvars() != nforms {
                    return Err(Error::MixedRings);
                }
                for (mono, c) in p.terms() {
                    let Some(v) = (mono.degree() == 1)
                        .then(|| mono.exponents().iter().position(|&e| e == 1))
                        .flatten()
                    else {
                        return Err(Error::Precondition("entries must be linear forms".into()));
                    };
                    m.entries[i * ncols + j][v] = c.clone();
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of target variables.
    pub fn nforms(&self) -> usize {
        self.nforms
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &[Rational] {
        &self.entries[i * self.cols + j]
    }

    fn entry_mut(&mut self, i: usize, j: usize) -> &mut Vec<Rational> {
        &mut self.entries[i * self.cols + j]
    }

    pub fn entry_poly(&self, i: usize, j: usize) -> MultiPoly {
        MultiPoly::from_terms(
            Ring::Target,
            self.nforms,
            self.entry(i, j)
                .iter()
                .enumerate()
                .map(|(v, c)| (Monomial::var(self.nforms, v), c.clone())),
        )
    }

    pub fn to_polys(&self) -> Vec<Vec<MultiPoly>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry_poly(i, j)).collect())
            .collect()
    }

    /// Rational matrix obtained by setting `T_j = values[j]`.
    pub fn specialize(&self, values: &[Rational]) -> QMatrix {
        assert_eq!(values.len(), self.nforms, "one value per target variable");
        let mut m = QMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self
                    .entry(i, j)
                    .iter()
                    .zip(values)
                    .filter(|(c, _)| !c.is_zero())
                    .fold(Rational::zero(), |acc, (c, x)| acc + c * x);
                m.set(i, j, v);
            }
        }
        m
    }

    /// Restricts to a subset of columns, in the order given.
    pub fn select_columns(&self, cols: &[usize]) -> LinearFormMatrix {
        let mut m = Self::zeros(self.rows, cols.len(), self.nforms);
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                *m.entry_mut(i, jj) = self.entry(i, j).to_vec();
            }
        }
        m.row_labels = self.row_labels.clone();
        m.col_labels = cols.iter().map(|&j| self.col_labels[j].clone()).collect();
        m
    }

    /// Whether `self * next` is the zero matrix of quadratic forms.
    pub fn composes_to_zero(&self, next: &LinearFormMatrix) -> bool {
        assert_eq!(self.cols, next.rows, "composable shapes");
        let k = self.nforms;
        for i in 0..self.rows {
            for l in 0..next.cols {
                let mut quad = vec![Rational::zero(); k * k];
                for j in 0..self.cols {
                    let a = self.entry(i, j);
                    let b = next.entry(j, l);
                    for (x, ax) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        for (y, by) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                            let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
                            quad[lo * k + hi] += ax * by;
                        }
                    }
                }
                if quad.iter().any(|c| !c.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    /// Serializable view with entries printed as target-ring polynomials.
    pub fn to_document(&self, vars: &Variables) -> LinearFormMatrixDoc {
        LinearFormMatrixDoc {
            format: "linear-form-matrix".into(),
            version: 1,
            rows: self.rows,
            cols: self.cols,
            target_vars: vars.target_names().to_vec(),
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
            entries: (0..self.rows)
                .map(|i| {
                    (0..self.cols)
                        .map(|j| self.entry_poly(i, j).display(vars).to_string())
                        .collect()
                })
                .collect(),
        }
    }
}

/// JSON shape of a [`LinearFormMatrix`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearFormMatrixDoc {
    pub format: String,
    pub version: u32,
    pub rows: usize,
    pub cols: usize,
    pub target_vars: Vec<String>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

impl LinearFormMatrixDoc {
    /// Parses a document back into a matrix, reading entries in the target
    /// ring of `vars`.
    pub fn to_matrix(&self, vars: &Variables) -> Result<LinearFormMatrix> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::DimensionMismatch("entries do not match rows x cols".into()));
        }
        let polys = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| parse_poly(e, vars, Ring::Target))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut m = if self.rows == 0 || self.cols == 0 {
            LinearFormMatrix::zeros(self.rows, self.cols, vars.n_targets())
        } else {
            LinearFormMatrix::from_polys(polys)?
        };
        m.row_labels = self.row_labels.clone();
        m.col_labels = self.col_labels.clone();
        Ok(m)
    }
}

/// `M_nu`: rows indexed by the monomials of `R_nu`, one column per degree-`nu`
/// syzygy `(g_0..g_n)`, entry `sum_j coeff(g_j, x^u) T_j`.
pub fn representation_matrix(inst: &ProblemInstance, nu: &MultiDegree) -> Result<LinearFormMatrix> {
    let basis = cycle_basis(inst, 1, nu)?;
    let k = basis.monomials.len();
    let n1 = inst.f.len();
    let mut m = LinearFormMatrix::zeros(k, basis.len(), n1);
    for (c, cycle) in basis.cycles.iter().enumerate() {
        for u in 0..k {
            let cell = m.entry_mut(u, c);
            for j in 0..n1 {
                cell[j] = cycle[j * k + u].clone();
            }
        }
    }
    m.row_labels = basis
        .monomials
        .iter()
        .map(|mono| mono.display(inst.vars(), Ring::Parameter).to_string())
        .collect();
    Ok(m)
}

/// The degree-`nu` strand `0 -> (Z_n)_nu -> ... -> (Z_1)_nu -> (Z_0)_nu -> 0`
/// of the approximation complex.
#[derive(Clone, Debug)]
pub struct ZComplexStrand {
    pub nu: MultiDegree,
    /// Cycle bases for `q = 0..=n`.
    pub bases: Vec<CycleBasis>,
    /// `differentials[q - 1]` maps the `q`-th basis to the `(q-1)`-th.
    pub differentials: Vec<LinearFormMatrix>,
}

impl ZComplexStrand {
    /// Ranks of the free modules `(Z_q)_nu`, `q = 0..=n`.
    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(CycleBasis::len).collect()
    }

    /// Index of the last nonzero term.
    pub fn length(&self) -> usize {
        self.bases.iter().rposition(|b| !b.is_empty()).unwrap_or(0)
    }
}

/// Builds every differential of the strand by contracting with `T` and
/// rewriting the image in the target cycle basis.
pub fn z_complex_strand(inst: &ProblemInstance, nu: &MultiDegree) -> Result<ZComplexStrand> {
    let n1 = inst.f.len();
    let bases = (0..n1)
        .map(|q| cycle_basis(inst, q, nu))
        .collect::<Result<Vec<_>>>()?;
    let mut differentials = Vec::with_capacity(n1 - 1);
    for q in 1..n1 {
        let (src, dst) = (&bases[q], &bases[q - 1]);
        let k = dst.monomials.len();
        let target_index: HashMap<&[usize], usize> = dst
            .subsets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i))
            .collect();
        let ambient = dst.subsets.len() * k;
        let columns = dst.as_columns(ambient);
        let mut m = LinearFormMatrix::zeros(dst.len(), src.len(), n1);
        for (c, cycle) in src.cycles.iter().enumerate() {
            for j in 0..n1 {
                let mut w = vec![Rational::zero(); ambient];
                for (si, s) in src.subsets.iter().enumerate() {
                    let Some(pos) = s.iter().position(|&x| x == j) else {
                        continue;
                    };
                    let sign = koszul_sign(pos);
                    let rest: Vec<usize> = s.iter().copied().filter(|&x| x != j).collect();
                    let ti = target_index[rest.as_slice()];
                    for u in 0..k {
                        let x = &cycle[si * k + u];
                        if !x.is_zero() {
                            w[ti * k + u] += &sign * x;
                        }
                    }
                }
                if w.iter().all(Zero::is_zero) {
                    continue;
                }
                let coords = columns.solve(&w).ok_or_else(|| {
                    Error::StrandInvariant(format!(
                        "T-contraction of cycle {c} in Z_{q} is not a combination of Z_{} cycles",
                        q - 1
                    ))
                })?;
                for (i, x) in coords.into_iter().enumerate() {
                    m.entry_mut(i, c)[j] = x;
                }
            }
        }
        m.row_labels = (0..dst.len()).map(|i| format!("z{}_{i}", q - 1)).collect();
        m.col_labels = (0..src.len()).map(|i| format!("z{q}_{i}")).collect();
        if q == 1 {
            m.row_labels = dst
                .monomials
                .iter()
                .map(|mono| mono.display(inst.vars(), Ring::Parameter).to_string())
                .collect();
        }
        differentials.push(m);
    }
    Ok(ZComplexStrand {
        nu: nu.clone(),
        bases,
        differentials,
    })
}
