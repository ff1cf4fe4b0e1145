//! Dense exact linear algebra over Q.
//!
//! Everything is routed through one fraction-free (Bareiss) row echelon pass
//! on integer rows: each rational row is first scaled by the lcm of its
//! denominators, which changes neither the row space nor the kernel. Rank,
//! kernel, determinant and linear solves are read off that echelon form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number. Always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integral rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Dense row-major matrix over Q.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(QMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must share one length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(nrows, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        Echelon::of(self).pivots.len()
    }

    /// Basis of the right kernel.
    ///
    /// One vector per non-pivot column, in increasing column order. The vector
    /// for free column `f` has a 1 in position `f` and 0 in every other free
    /// position, i.e. the basis read off the reduced row echelon form.
    pub fn nullspace_basis(&self) -> Vec<Vec<Rational>> {
        let ech = Echelon::of(self);
        let free: Vec<usize> = ech.free_columns(self.cols);
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                ech.back_substitute(&mut x);
                x
            })
            .collect()
    }

    /// Exact determinant; errors on non-square input.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(Rational::one());
        }
        let ech = Echelon::of(self);
        if ech.pivots.len() < self.rows {
            return Ok(Rational::zero());
        }
        let last = ech.rows[self.rows - 1][self.cols - 1].clone();
        let scale = ech
            .scales
            .iter()
            .fold(BigInt::one(), |acc, s| acc * s);
        let mut det = BigRational::new(last, scale);
        if ech.swaps % 2 == 1 {
            det = -det;
        }
        Ok(det)
    }

    /// Solves `self * x = b`, returning one solution (free variables set to
    /// zero) or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "right-hand side length must equal row count");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let ech = Echelon::of(&aug);
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols + 1];
        // [A | b] (x, -1)^T = 0
        x[self.cols] = -Rational::one();
        ech.back_substitute(&mut x);
        x.truncate(self.cols);
        Some(x)
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Integer row echelon form produced by fraction-free elimination.
struct Echelon {
    /// Integer rows after elimination; only the first `pivots.len()` rows are nonzero.
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    /// Factor each original row was multiplied by to clear denominators.
    scales: Vec<BigInt>,
    swaps: usize,
}

impl Echelon {
    fn of(m: &QMatrix) -> Self {
        let (mut a, scales) = integer_rows(m);
        let nrows = m.rows;
        let ncols = m.cols;
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut r = 0;
        for c in 0..ncols {
            if r == nrows {
                break;
            }
            let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                swaps += 1;
            }
            let (top, below) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let pivot = &pivot_row[c];
            for row in below.iter_mut() {
                let factor = std::mem::take(&mut row[c]);
                for j in c + 1..ncols {
                    // Sylvester's identity: every entry stays a minor of the input.
                    let v = pivot * &row[j] - &factor * &pivot_row[j];
                    row[j] = if prev.is_one() { v } else { v / &prev };
                }
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        Echelon {
            rows: a,
            pivots,
            scales,
            swaps,
        }
    }

    fn free_columns(&self, ncols: usize) -> Vec<usize> {
        let mut is_pivot = vec![false; ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Fills the pivot coordinates of `x` so that every echelon row is
    /// annihilated. Free coordinates of `x` must already be set.
    fn back_substitute(&self, x: &mut [Rational]) {
        for (k, &p) in self.pivots.iter().enumerate().rev() {
            let row = &self.rows[k];
            let mut acc = Rational::zero();
            for j in p + 1..row.len() {
                if row[j].is_zero() || x[j].is_zero() {
                    continue;
                }
                acc += BigRational::from_integer(row[j].clone()) * &x[j];
            }
            x[p] = -acc / BigRational::from_integer(row[p].clone());
        }
    }
}

fn integer_rows(m: &QMatrix) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::with_capacity(m.rows);
    let mut scales = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let row = m.row(i);
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        rows.push(
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect::<Vec<_>>(),
        );
        scales.push(lcm);
    }
    (rows, scales)
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .map_or(BigInt::one(), |x| if x.is_negative() { -BigInt::one() } else { BigInt::one() });
    ints.into_iter().map(|x| x / &g * &sign).collect()
}
