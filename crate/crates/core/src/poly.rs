//! Exact sparse multivariate polynomials over Q.
//!
//! Two rings are in play: the parameter ring, whose variables are split into
//! blocks and which is graded by `Z^s`, and the target ring `Q[T_0..T_n]`
//! with its standard grading. A [`MultiPoly`] records which ring it belongs
//! to, and mixing rings is an error.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], ordered graded
//! lexicographically with the first variable largest. Iteration through
//! [`MultiPoly::terms`] is in descending order, which is also the printing
//! order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cox::BlockStructure;
use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::linalg::Rational;

/// An element of `Z^s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(pub Vec<i64>);

impl MultiDegree {
    pub fn new(components: Vec<i64>) -> Self {
        MultiDegree(components)
    }

    pub fn zero(s: usize) -> Self {
        MultiDegree(vec![0; s])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn scaled(&self, k: i64) -> Self {
        MultiDegree(self.0.iter().map(|x| x * k).collect())
    }

    pub fn all_positive(&self) -> bool {
        self.0.iter().all(|&x| x > 0)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &MultiDegree) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Add for &MultiDegree {
    type Output = MultiDegree;
    fn add(self, rhs: &MultiDegree) -> MultiDegree {
        assert_eq!(self.len(), rhs.len(), "multidegree length mismatch");
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &MultiDegree {
    type Output = MultiDegree;
    fn sub(self, rhs: &MultiDegree) -> MultiDegree {
        assert_eq!(self.len(), rhs.len(), "multidegree length mismatch");
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for MultiDegree {
    type Err = String;

    /// Accepts `3,1`, `(3,1)` or `3 1`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: std::result::Result<Vec<i64>, _> = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect();
        match parts {
            Ok(v) if !v.is_empty() => Ok(MultiDegree(v)),
            Ok(_) => Err("empty multidegree".into()),
            Err(e) => Err(format!("bad multidegree `{s}`: {e}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Parameter,
    Target,
}

/// A variable of either ring. Blocks are 0-based here; user-facing output
/// numbers them from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarId {
    Param { block: usize, pos: usize },
    Target(usize),
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Param { block, pos } => write!(f, "x{}_{}", block + 1, pos),
            VarId::Target(j) => write!(f, "T_{j}"),
        }
    }
}

/// Variable names for both rings, plus the block structure they induce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variables {
    blocks: BlockStructure,
    param: Vec<String>,
    target: Vec<String>,
    lookup: HashMap<String, (Ring, usize)>,
}

impl Variables {
    pub fn new(block_names: Vec<Vec<String>>, target_names: Vec<String>) -> Result<Self> {
        if block_names.iter().any(Vec::is_empty) {
            return Err(Error::InvalidBlocks("every block needs at least one variable".into()));
        }
        let blocks = BlockStructure::new(block_names.iter().map(|b| b.len() - 1).collect())?;
        let param: Vec<String> = block_names.into_iter().flatten().collect();
        let mut lookup = HashMap::new();
        let all = param
            .iter()
            .enumerate()
            .map(|(i, n)| (n, Ring::Parameter, i))
            .chain(target_names.iter().enumerate().map(|(i, n)| (n, Ring::Target, i)));
        for (name, ring, idx) in all {
            if !is_identifier(name) {
                return Err(Error::InvalidInstance(format!("`{name}` is not a valid variable name")));
            }
            if lookup.insert(name.clone(), (ring, idx)).is_some() {
                return Err(Error::InvalidInstance(format!("variable `{name}` declared twice")));
            }
        }
        Ok(Variables {
            blocks,
            param,
            target: target_names,
            lookup,
        })
    }

    /// Default names: `x1_0, x1_1, ...` per block and `T_0..T_{n}`.
    pub fn standard(blocks: &BlockStructure, n_targets: usize) -> Self {
        let names = blocks
            .r()
            .iter()
            .enumerate()
            .map(|(i, &r)| (0..=r).map(|j| format!("x{}_{}", i + 1, j)).collect())
            .collect();
        let targets = (0..n_targets).map(|j| format!("T_{j}")).collect();
        Self::new(names, targets).expect("generated names are unique identifiers")
    }

    /// Same parameter names, fresh target names `T_0..`.
    pub fn with_target_count(&self, n_targets: usize) -> Result<Self> {
        let targets = (0..n_targets).map(|j| format!("T_{j}")).collect();
        Self::new(self.block_names(), targets)
    }

    pub fn blocks(&self) -> &BlockStructure {
        &self.blocks
    }

    pub fn block_names(&self) -> Vec<Vec<String>> {
        (0..self.blocks.s())
            .map(|b| {
                let off = self.blocks.offset(b);
                self.param[off..off + self.blocks.r()[b] + 1].to_vec()
            })
            .collect()
    }

    pub fn target_names(&self) -> &[String] {
        &self.target
    }

    pub fn n_targets(&self) -> usize {
        self.target.len()
    }

    pub fn nvars(&self, ring: Ring) -> usize {
        match ring {
            Ring::Parameter => self.param.len(),
            Ring::Target => self.target.len(),
        }
    }

    pub fn name(&self, ring: Ring, index: usize) -> &str {
        match ring {
            Ring::Parameter => &self.param[index],
            Ring::Target => &self.target[index],
        }
    }

    pub fn lookup(&self, name: &str) -> Option<(Ring, usize)> {
        self.lookup.get(name).copied()
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Dense exponent vector over the variables of one ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Per-block degrees in the parameter ring.
    pub fn multidegree(&self, blocks: &BlockStructure) -> MultiDegree {
        MultiDegree(
            (0..blocks.s())
                .map(|b| {
                    let off = blocks.offset(b);
                    self.0[off..off + blocks.r()[b] + 1].iter().map(|&e| e as i64).sum()
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    fn without(&self, var: usize) -> Monomial {
        let mut e = self.0.clone();
        e[var] = 0;
        Monomial(e)
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::one();
        for (v, &e) in values.iter().zip(&self.0) {
            if e > 0 {
                acc *= num_traits::pow(v.clone(), e as usize);
            }
        }
        acc
    }

    pub fn display<'a>(&'a self, vars: &'a Variables, ring: Ring) -> impl fmt::Display + 'a {
        MonomialDisplay {
            mono: self,
            vars,
            ring,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    vars: &'a Variables,
    ring: Ring,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.mono.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.vars.name(self.ring, i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial with rational coefficients in one of the two rings.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ring: Ring,
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(ring: Ring, nvars: usize) -> Self {
        MultiPoly {
            ring,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: Ring, nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(ring, nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(ring: Ring, nvars: usize) -> Self {
        Self::constant(ring, nvars, Rational::one())
    }

    pub fn var(ring: Ring, nvars: usize, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(nvars, index), Rational::one())
    }

    pub fn monomial(ring: Ring, mono: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(ring, mono.nvars());
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, merging
    /// repeated monomials and dropping zeros.
    pub fn from_terms(
        ring: Ring,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(ring, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn check_same_ring(&self, other: &MultiPoly) -> Result<()> {
        if self.ring != other.ring || self.nvars != other.nvars {
            return Err(Error::MixedRings);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_ring(other)?;
        let mut out = Self::zero(self.ring, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.ring, self.nvars);
        }
        MultiPoly {
            ring: self.ring,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.ring, self.nvars);
        }
        MultiPoly {
            ring: self.ring,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.mul(mono), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one(self.ring, self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert!(self.ring == divisor.ring && self.nvars == divisor.nvars, "mixed rings");
        let (dm, dc) = divisor.leading_term()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        if divisor.terms.len() == 1 {
            // monomial divisor: termwise
            let mut q = Self::zero(self.ring, self.nvars);
            for (m, c) in &self.terms {
                if !dm.divides(m) {
                    return None;
                }
                q.terms.insert(dm.quotient_of(m), c / &dc);
            }
            return Some(q);
        }
        let mut rem = self.clone();
        let mut q = Self::zero(self.ring, self.nvars);
        while let Some((lm, lc)) = rem.leading_term() {
            if !dm.divides(lm) {
                return None;
            }
            let tm = dm.quotient_of(lm);
            let tc = lc / &dc;
            for (m, c) in &divisor.terms {
                rem.add_term(m.mul(&tm), -(c * &tc));
            }
            q.add_term(tm, tc);
        }
        Some(q)
    }

    /// Multidegree in the parameter ring; errors on zero or
    /// non-multihomogeneous input.
    pub fn multidegree(&self, blocks: &BlockStructure) -> Result<MultiDegree> {
        if self.ring != Ring::Parameter || self.nvars != blocks.nvars() {
            return Err(Error::MixedRings);
        }
        let mut degs = self.terms.keys().map(|m| m.multidegree(blocks));
        let first = degs.next().ok_or(Error::ZeroPolynomial)?;
        for d in degs {
            if d != first {
                return Err(Error::NotMultihomogeneous { first, second: d });
            }
        }
        Ok(first)
    }

    /// Replaces each target variable `T_j` by `images[j]`.
    pub fn substitute_targets(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if self.ring != Ring::Target {
            return Err(Error::MixedRings);
        }
        if images.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        if images.iter().any(|g| g.ring != first.ring || g.nvars != first.nvars) {
            return Err(Error::MixedRings);
        }
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|g| vec![Self::one(g.ring, g.nvars), g.clone()])
            .collect();
        let mut out = Self::zero(first.ring, first.nvars);
        for (m, c) in &self.terms {
            let mut term = Self::constant(first.ring, first.nvars, c.clone());
            for (j, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[j];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &images[j];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Evaluates at a point given as one value per variable of the ring.
    pub fn eval_dense(&self, values: &[Rational]) -> Rational {
        assert_eq!(values.len(), self.nvars, "point arity mismatch");
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, (m, c)| acc + c * m.eval(values))
    }

    /// Evaluates at a partial assignment, failing if a variable that occurs in
    /// the polynomial has no value.
    pub fn eval_at(&self, blocks: &BlockStructure, point: &BTreeMap<VarId, Rational>) -> Result<Rational> {
        let mut values = vec![Rational::zero(); self.nvars];
        for i in 0..self.nvars {
            if self.terms.keys().all(|m| m.0[i] == 0) {
                continue;
            }
            let id = match self.ring {
                Ring::Parameter => {
                    let block = blocks.block_of(i);
                    VarId::Param {
                        block,
                        pos: i - blocks.offset(block),
                    }
                }
                Ring::Target => VarId::Target(i),
            };
            values[i] = point
                .get(&id)
                .cloned()
                .ok_or_else(|| Error::MissingAssignment(id.to_string()))?;
        }
        Ok(self.eval_dense(&values))
    }

    /// Integer-primitive scalar multiple with positive leading coefficient.
    pub fn normalized(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let g = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&lcm / c.denom()))));
        let mut factor = Rational::new(lcm, g);
        if self.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            factor = -factor;
        }
        self.scale(&factor)
    }

    pub fn display<'a>(&'a self, vars: &'a Variables) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, vars }
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    fn highest_var(&self) -> Option<usize> {
        (0..self.nvars).rev().find(|&v| self.terms.keys().any(|m| m.0[v] > 0))
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `var`,
    /// lowest degree first.
    fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(self.ring, self.nvars); deg + 1];
        for (m, c) in &self.terms {
            out[m.0[var] as usize].terms.insert(m.without(var), c.clone());
        }
        out
    }

    fn from_coeffs_in(var: usize, coeffs: &[MultiPoly], ring: Ring, nvars: usize) -> MultiPoly {
        let mut p = Self::zero(ring, nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, x) in &c.terms {
                let mut e = m.0.clone();
                e[var] += k as u32;
                p.terms.insert(Monomial(e), x.clone());
            }
        }
        p
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let prefix = match self.ring {
            Ring::Parameter => "x",
            Ring::Target => "T",
        };
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    write!(f, "*{prefix}{i}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

struct PolyDisplay<'a> {
    poly: &'a MultiPoly,
    vars: &'a Variables,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mono = m.display(self.vars, self.poly.ring);
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("operands live in different rings")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("operands live in different rings")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("operands live in different rings")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

/// Normalized gcd of two polynomials of the same ring.
///
/// Content/primitive-part recursion on the highest occurring variable, with a
/// subresultant remainder sequence for the primitive parts.
pub fn gcd_poly(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly> {
    p.check_same_ring(q)?;
    Ok(gcd_rec(p, q).normalized())
}

fn gcd_rec(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    if p.is_constant() || q.is_constant() {
        return MultiPoly::one(p.ring, p.nvars);
    }
    let v = p.highest_var().max(q.highest_var()).expect("non-constant");
    if p.degree_in(v) == 0 {
        return gcd_rec(p, &content_in(q, v));
    }
    if q.degree_in(v) == 0 {
        return gcd_rec(&content_in(p, v), q);
    }
    let cp = content_in(p, v);
    let cq = content_in(q, v);
    let pp = p.div_exact(&cp).expect("content divides");
    let qq = q.div_exact(&cq).expect("content divides");
    let c = gcd_rec(&cp, &cq);
    let g = subresultant_gcd(&pp, &qq, v);
    let g = primitive_part_in(&g, v);
    &c * &g
}

fn content_in(p: &MultiPoly, v: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero(p.ring, p.nvars);
    // smallest coefficients first keeps the intermediate gcds cheap
    let mut coeffs: Vec<MultiPoly> = p.coeffs_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(MultiPoly::num_terms);
    for c in coeffs {
        acc = gcd_rec(&acc, &c);
        if acc.is_constant() {
            return MultiPoly::one(p.ring, p.nvars);
        }
    }
    acc.normalized()
}

fn primitive_part_in(p: &MultiPoly, v: usize) -> MultiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").normalized()
}

fn subresultant_gcd(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let (ring, nvars) = (a.ring, a.nvars);
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let mut g = MultiPoly::one(ring, nvars);
    let mut h = MultiPoly::one(ring, nvars);
    loop {
        let delta = a.degree_in(v) - b.degree_in(v);
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return b;
        }
        if r.degree_in(v) == 0 {
            return MultiPoly::one(ring, nvars);
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r.div_exact(&divisor).expect("subresultant division is exact");
        g = lead_coeff_in(&a, v);
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact"),
        };
    }
}

fn lead_coeff_in(p: &MultiPoly, v: usize) -> MultiPoly {
    p.coeffs_in(v).pop().expect("nonzero")
}

fn pseudo_remainder(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let (ring, nvars) = (a.ring, a.nvars);
    let bc = b.coeffs_in(v);
    let db = bc.len() - 1;
    let lb = bc[db].clone();
    let mut r = a.coeffs_in(v);
    let mut steps = (r.len() - 1 + 1).saturating_sub(db) as u32;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x = &*x * &lb;
        }
        for (i, c) in bc.iter().enumerate() {
            let t = &lr * c;
            r[i + dr - db] = &r[i + dr - db] - &t;
        }
        while r.last().is_some_and(MultiPoly::is_zero) {
            r.pop();
        }
        steps = steps.saturating_sub(1);
    }
    let rem = MultiPoly::from_coeffs_in(v, &r, ring, nvars);
    if steps > 0 {
        &rem * &lb.pow(steps)
    } else {
        rem
    }
}

/// Parses a polynomial in the given ring.
///
/// Grammar: `poly ::= [sign] term (sign term)*`, `term ::= factor ('*' factor)*`,
/// `factor ::= int ['/' int] | var ['^' int]`. Whitespace is ignored.
pub fn parse_poly(text: &str, vars: &Variables, ring: Ring) -> Result<MultiPoly> {
    Parser::new(text, vars, ring).parse().map_err(Error::from)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end_column: usize,
    text: &'a str,
    vars: &'a Variables,
    ring: Ring,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, vars: &'a Variables, ring: Ring) -> Self {
        Parser {
            tokens: Vec::new(),
            pos: 0,
            end_column: text.chars().count() + 1,
            text,
            vars,
            ring,
        }
    }

    fn err(column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { column, kind }
    }

    fn tokenize(&mut self) -> std::result::Result<(), ParseError> {
        let chars: Vec<char> = self.text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            match c {
                _ if c.is_whitespace() => i += 1,
                '+' | '-' | '*' | '^' | '/' => {
                    let t = match c {
                        '+' => Token::Plus,
                        '-' => Token::Minus,
                        '*' => Token::Star,
                        '^' => Token::Caret,
                        _ => Token::Slash,
                    };
                    self.tokens.push((t, col));
                    i += 1;
                }
                _ if c.is_ascii_digit() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    self.tokens.push((Token::Int(s.parse().expect("digits")), col));
                }
                _ if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    self.tokens.push((Token::Ident(chars[start..i].iter().collect()), col));
                }
                _ => {
                    return Err(Self::err(col, ParseErrorKind::Syntax(format!("unexpected character `{c}`"))));
                }
            }
        }
        Ok(())
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |(_, c)| *c)
    }

    fn next(&mut self) -> Option<(Token, usize)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn parse(mut self) -> std::result::Result<MultiPoly, ParseError> {
        self.tokenize()?;
        let nvars = self.vars.nvars(self.ring);
        let mut poly = MultiPoly::zero(self.ring, nvars);
        if self.tokens.is_empty() {
            return Err(Self::err(1, ParseErrorKind::Syntax("empty polynomial".into())));
        }
        let mut first = true;
        while self.peek().is_some() {
            let negative = match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => {
                    return Err(Self::err(self.column(), ParseErrorKind::Syntax("expected `+` or `-`".into())));
                }
            };
            first = false;
            let (mono, mut coeff) = self.term(nvars)?;
            if negative {
                coeff = -coeff;
            }
            poly.add_term(mono, coeff);
        }
        Ok(poly)
    }

    fn term(&mut self, nvars: usize) -> std::result::Result<(Monomial, Rational), ParseError> {
        let mut exps = vec![0u32; nvars];
        let mut coeff = Rational::one();
        loop {
            let col = self.column();
            match self.next() {
                Some((Token::Int(n), _)) => {
                    let mut value = Rational::from_integer(n);
                    if self.peek() == Some(&Token::Slash) {
                        self.pos += 1;
                        let dcol = self.column();
                        match self.next() {
                            Some((Token::Int(d), _)) if !d.is_zero() => value /= Rational::from_integer(d),
                            Some((Token::Int(_), _)) => {
                                return Err(Self::err(dcol, ParseErrorKind::Syntax("division by zero".into())));
                            }
                            _ => {
                                return Err(Self::err(dcol, ParseErrorKind::Syntax("expected denominator".into())));
                            }
                        }
                    }
                    coeff *= value;
                }
                Some((Token::Ident(name), _)) => {
                    let idx = match self.vars.lookup(&name) {
                        Some((ring, idx)) if ring == self.ring => idx,
                        Some(_) => return Err(Self::err(col, ParseErrorKind::MixedRings(name))),
                        None => return Err(Self::err(col, ParseErrorKind::UnknownVariable(name))),
                    };
                    let mut e = 1u32;
                    if self.peek() == Some(&Token::Caret) {
                        self.pos += 1;
                        let ecol = self.column();
                        match self.next() {
                            Some((Token::Int(n), _)) => {
                                e = u32::try_from(n).map_err(|_| Self::err(ecol, ParseErrorKind::MalformedExponent))?;
                            }
                            _ => return Err(Self::err(ecol, ParseErrorKind::MalformedExponent)),
                        }
                    }
                    exps[idx] += e;
                }
                Some((t, c)) => {
                    return Err(Self::err(c, ParseErrorKind::Syntax(format!("unexpected {t:?}"))));
                }
                None => {
                    return Err(Self::err(col, ParseErrorKind::Syntax("unexpected end of input".into())));
                }
            }
            if self.peek() == Some(&Token::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial(exps), coeff))
    }
}
