//! Grading of the Cox ring of `P^{r_1} x ... x P^{r_s}` and the regions of
//! `Z^s` cut out by the local cohomology of that ring.
//!
//! Block subsets `alpha` are given as sorted 0-based block indices.
//! Printed output numbers blocks from 1.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiDegree};

/// Shape `(r_1, ..., r_s)` of the multigraded polynomial ring: block `i`
/// has `r_i + 1` variables of degree `e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockStructure {
    r: Vec<usize>,
    offsets: Vec<usize>,
}

impl BlockStructure {
    pub fn new(r: Vec<usize>) -> Result<Self> {
        if r.is_empty() {
            return Err(Error::InvalidBlocks("at least one block is required".into()));
        }
        let offsets = r
            .iter()
            .scan(0, |acc, &ri| {
                let here = *acc;
                *acc += ri + 1;
                Some(here)
            })
            .collect();
        Ok(BlockStructure { r, offsets })
    }

    pub fn s(&self) -> usize {
        self.r.len()
    }

    pub fn r(&self) -> &[usize] {
        &self.r
    }

    /// Total number of parameter variables, `sum (r_i + 1)`.
    pub fn nvars(&self) -> usize {
        self.r.iter().map(|r| r + 1).sum()
    }

    /// Dimension of the product of projective spaces, `sum r_i`.
    pub fn dim(&self) -> usize {
        self.r.iter().sum()
    }

    /// Flat index of the first variable of `block`.
    pub fn offset(&self, block: usize) -> usize {
        self.offsets[block]
    }

    pub fn block_of(&self, var: usize) -> usize {
        self.offsets.partition_point(|&o| o <= var) - 1
    }

    /// `|alpha| = sum_{j in alpha} r_j`.
    pub fn weight(&self, alpha: &[usize]) -> usize {
        alpha.iter().map(|&j| self.r[j]).sum()
    }

    /// Every nonempty subset of the blocks, smallest first, each sorted.
    pub fn nonempty_subsets(&self) -> Vec<Vec<usize>> {
        let s = self.s();
        let mut out: Vec<Vec<usize>> = (1u32..(1 << s))
            .map(|mask| (0..s).filter(|j| mask & (1 << j) != 0).collect())
            .collect();
        out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    fn check_degree(&self, d: &MultiDegree) -> Result<()> {
        if d.len() != self.s() {
            return Err(Error::ArityMismatch {
                expected: self.s(),
                found: d.len(),
            });
        }
        Ok(())
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `dim_k R_d = prod_i binom(d_i + r_i, r_i)`, zero if some `d_i < 0`.
pub fn strand_dim(blocks: &BlockStructure, d: &MultiDegree) -> usize {
    assert_eq!(d.len(), blocks.s(), "multidegree arity");
    if !d.all_nonnegative() {
        return 0;
    }
    blocks
        .r()
        .iter()
        .zip(d.components())
        .map(|(&r, &di)| binomial(di as u64 + r as u64, r as u64))
        .product::<u128>()
        .try_into()
        .expect("strand dimension fits in usize")
}

/// All monomials of multidegree `d`, in descending canonical order.
pub fn strand_basis(blocks: &BlockStructure, d: &MultiDegree) -> Vec<Monomial> {
    assert_eq!(d.len(), blocks.s(), "multidegree arity");
    if !d.all_nonnegative() {
        return Vec::new();
    }
    let per_block: Vec<Vec<Vec<u32>>> = blocks
        .r()
        .iter()
        .zip(d.components())
        .map(|(&r, &di)| exponent_vectors(r + 1, di as u32))
        .collect();
    let mut out: Vec<Vec<u32>> = vec![Vec::with_capacity(blocks.nvars())];
    for block in &per_block {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                block.iter().map(move |e| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(e);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial::from_exponents).collect()
}

/// Exponent vectors of length `n` summing to `d`, lexicographically descending.
fn exponent_vectors(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    (0..=d)
        .rev()
        .flat_map(|first| {
            exponent_vectors(n - 1, d - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Shifted orthant of `Z^s`: coordinates in `negative` satisfy
/// `mu_j <= shift_j`, all others `mu_j >= shift_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthantRegion {
    pub negative: Vec<bool>,
    pub shift: MultiDegree,
}

impl OrthantRegion {
    pub fn contains(&self, mu: &MultiDegree) -> bool {
        debug_assert_eq!(mu.len(), self.shift.len());
        self.negative
            .iter()
            .zip(mu.components().iter().zip(self.shift.components()))
            .all(|(&neg, (&m, &s))| if neg { m <= s } else { m >= s })
    }

    pub fn translated(&self, by: &MultiDegree) -> OrthantRegion {
        OrthantRegion {
            negative: self.negative.clone(),
            shift: &self.shift + by,
        }
    }
}

impl fmt::Display for OrthantRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let signs: Vec<&str> = self
            .negative
            .iter()
            .map(|&n| if n { "-N" } else { "N" })
            .collect();
        write!(f, "{} + {}", signs.join(" x "), self.shift)
    }
}

/// Finite union of shifted orthants.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RegionUnion {
    pub parts: Vec<OrthantRegion>,
}

impl RegionUnion {
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, mu: &MultiDegree) -> bool {
        self.parts.iter().any(|p| p.contains(mu))
    }

    pub fn translated(&self, by: &MultiDegree) -> RegionUnion {
        RegionUnion {
            parts: self.parts.iter().map(|p| p.translated(by)).collect(),
        }
    }

    pub fn union(mut self, other: RegionUnion) -> RegionUnion {
        self.parts.extend(other.parts);
        self
    }
}

impl fmt::Display for RegionUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.parts.iter().map(|p| format!("({p})")).collect();
        write!(f, "{}", parts.join(" u "))
    }
}

/// Support of the Cech module attached to `alpha`: negative with shift
/// `-(r_j + 1)` on the blocks of `alpha`, non-negative elsewhere. `None`
/// for the empty subset.
pub fn q_alpha(blocks: &BlockStructure, alpha: &[usize]) -> Option<OrthantRegion> {
    if alpha.is_empty() {
        return None;
    }
    let s = blocks.s();
    let mut negative = vec![false; s];
    let mut shift = vec![0i64; s];
    for &j in alpha {
        negative[j] = true;
        shift[j] = -(blocks.r()[j] as i64 + 1);
    }
    Some(OrthantRegion {
        negative,
        shift: MultiDegree(shift),
    })
}

/// Support in `Z^s` of the local cohomology module `H^ell_B(R)`.
pub fn supp_local_cohomology(blocks: &BlockStructure, ell: usize) -> RegionUnion {
    RegionUnion {
        parts: blocks
            .nonempty_subsets()
            .into_iter()
            .filter(|alpha| blocks.weight(alpha) + 1 == ell)
            .filter_map(|alpha| q_alpha(blocks, &alpha))
            .collect(),
    }
}

/// Largest `ell` with `H^ell_B(R) != 0`.
pub fn cohomological_dimension(blocks: &BlockStructure) -> usize {
    blocks.dim() + 1
}

fn check_gamma(blocks: &BlockStructure, gamma: &MultiDegree) -> Result<()> {
    blocks.check_degree(gamma)?;
    if !gamma.all_positive() {
        return Err(Error::NonPositiveDegree(gamma.clone()));
    }
    Ok(())
}

/// `union_{k >= 0} (Supp H^k_B(R) + k*gamma)`, assembled cohomological
/// degree by cohomological degree.
pub fn sigma_b(blocks: &BlockStructure, gamma: &MultiDegree) -> Result<RegionUnion> {
    blocks.check_degree(gamma)?;
    Ok((0..=cohomological_dimension(blocks))
        .map(|k| supp_local_cohomology(blocks, k).translated(&gamma.scaled(k as i64)))
        .fold(RegionUnion::default(), RegionUnion::union))
}

/// Degrees where strands of the approximation complex may fail to be acyclic
/// or may carry torsion: `union_alpha (Q_alpha + |alpha| gamma)`.
pub fn region_rb(blocks: &BlockStructure, gamma: &MultiDegree) -> Result<RegionUnion> {
    check_gamma(blocks, gamma)?;
    Ok(RegionUnion {
        parts: blocks
            .nonempty_subsets()
            .into_iter()
            .filter_map(|alpha| {
                let w = blocks.weight(&alpha) as i64;
                q_alpha(blocks, &alpha).map(|q| q.translated(&gamma.scaled(w)))
            })
            .collect(),
    })
}

/// Upper end of the box scanned for complement corners:
/// `sum_i (r_i + 1) * max_j gamma_j`.
pub fn corner_search_bound(blocks: &BlockStructure, gamma: &MultiDegree) -> i64 {
    let gmax = gamma.components().iter().copied().max().unwrap_or(0);
    blocks.r().iter().map(|&r| (r as i64 + 1) * gmax).sum()
}

/// Componentwise-minimal degrees of the complement of [`region_rb`] inside
/// the box `[0, corner_search_bound]^s`, sorted lexicographically.
pub fn complement_corners(blocks: &BlockStructure, gamma: &MultiDegree) -> Result<Vec<MultiDegree>> {
    let region = region_rb(blocks, gamma)?;
    let s = blocks.s();
    let side = (corner_search_bound(blocks, gamma) + 1) as usize;
    let cells = side.checked_pow(s as u32).ok_or_else(|| {
        Error::Precondition("corner search box too large".into())
    })?;
    let point = |mut idx: usize| -> MultiDegree {
        let mut c = vec![0i64; s];
        for j in (0..s).rev() {
            c[j] = (idx % side) as i64;
            idx /= side;
        }
        MultiDegree(c)
    };
    let outside: Vec<bool> = (0..cells).map(|i| !region.contains(&point(i))).collect();
    // prefix[i] = number of complement points in the box [0, point(i)]
    let mut prefix: Vec<u64> = outside.iter().map(|&b| b as u64).collect();
    let mut stride = 1;
    for _ in 0..s {
        for i in 0..cells {
            if (i / stride) % side != 0 {
                prefix[i] += prefix[i - stride];
            }
        }
        stride *= side;
    }
    let mut corners: Vec<MultiDegree> = (0..cells)
        .filter(|&i| outside[i] && prefix[i] == 1)
        .map(point)
        .collect();
    corners.sort();
    Ok(corners)
}

/// A corner of the complement with the smallest strand dimension; ties go to
/// the lexicographically smallest degree.
pub fn suggest_nu(blocks: &BlockStructure, gamma: &MultiDegree) -> Result<MultiDegree> {
    complement_corners(blocks, gamma)?
        .into_iter()
        .min_by(|a, b| strand_dim(blocks, a).cmp(&strand_dim(blocks, b)).then_with(|| a.cmp(b)))
        .ok_or_else(|| Error::Precondition("no degree outside the region was found".into()))
}

/// Viewing window `[lo, hi]^2` used by the plots: wide enough to show every
/// orthant apex and every corner with a margin.
fn plot_window(region: &RegionUnion, corners: &[MultiDegree]) -> (i64, i64) {
    let coords = region
        .parts
        .iter()
        .flat_map(|p| p.shift.components().to_vec())
        .chain(corners.iter().flat_map(|c| c.components().to_vec()));
    let (lo, hi) = coords.fold((0i64, 0i64), |(lo, hi), x| (lo.min(x), hi.max(x)));
    (lo - 2, hi + 3)
}

/// ASCII picture of a two-block region: `#` inside, `.` outside, `o` on a
/// corner of the complement, `+` at the origin when it lies outside.
pub fn region_ascii(blocks: &BlockStructure, gamma: &MultiDegree) -> Result<String> {
    if blocks.s() != 2 {
        return Err(Error::Precondition("plots are only available for two blocks".into()));
    }
    let region = region_rb(blocks, gamma)?;
    let corners = complement_corners(blocks, gamma)?;
    let (lo, hi) = plot_window(&region, &corners);
    let mut out = String::new();
    for y in (lo..=hi).rev() {
        out.push_str(&format!("{y:>4} "));
        for x in lo..=hi {
            let mu = MultiDegree(vec![x, y]);
            let c = if corners.contains(&mu) {
                'o'
            } else if region.contains(&mu) {
                '#'
            } else if x == 0 && y == 0 {
                '+'
            } else {
                '.'
            };
            out.push(c);
        }
        out.push('\n');
    }
    out.push_str(&format!("     x from {lo} to {hi}\n"));
    Ok(out)
}

/// SVG picture of a two-block region, one square per lattice point.
pub fn region_svg(blocks: &BlockStructure, gamma: &MultiDegree) -> Result<String> {
    if blocks.s() != 2 {
        return Err(Error::Precondition("plots are only available for two blocks".into()));
    }
    const CELL: i64 = 20;
    let region = region_rb(blocks, gamma)?;
    let corners = complement_corners(blocks, gamma)?;
    let (lo, hi) = plot_window(&region, &corners);
    let n = hi - lo + 1;
    let size = n * CELL;
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
        w = size + 2 * CELL,
        h = size + 2 * CELL
    );
    svg.push_str(&format!(
        "  <title>region for blocks {:?}, gamma {}</title>\n",
        blocks.r(),
        gamma
    ));
    for y in lo..=hi {
        for x in lo..=hi {
            let mu = MultiDegree(vec![x, y]);
            let fill = if corners.contains(&mu) {
                "#d62728"
            } else if region.contains(&mu) {
                "#9e9e9e"
            } else {
                "#ffffff"
            };
            let px = (x - lo) * CELL + CELL;
            let py = (hi - y) * CELL + CELL;
            svg.push_str(&format!(
                "  <rect x=\"{px}\" y=\"{py}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"{fill}\" stroke=\"#cccccc\"/>\n"
            ));
        }
    }
    // axes through the origin cell centre
    let ox = (0 - lo) * CELL + CELL + CELL / 2;
    let oy = hi * CELL + CELL + CELL / 2;
    svg.push_str(&format!(
        "  <line x1=\"{CELL}\" y1=\"{oy}\" x2=\"{x2}\" y2=\"{oy}\" stroke=\"black\"/>\n",
        x2 = size + CELL
    ));
    svg.push_str(&format!(
        "  <line x1=\"{ox}\" y1=\"{CELL}\" x2=\"{ox}\" y2=\"{y2}\" stroke=\"black\"/>\n",
        y2 = size + CELL
    ));
    svg.push_str("</svg>\n");
    Ok(svg)
}
