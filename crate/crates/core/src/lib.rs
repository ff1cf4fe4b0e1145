//! Implicit equations of multigraded hypersurfaces from strands of the
//! approximation complex.
//!
//! A parametrization `P^{r_1} x ... x P^{r_s} --> P^n` given by polynomials
//! `f_0, ..., f_n` of a common multidegree `gamma` is turned into a matrix of
//! linear forms `M_nu` whose determinant (or gcd of maximal minors) is a
//! power of the implicit equation times extraneous factors.
//!
//! All arithmetic is exact over `Q`.

pub mod cox;
pub mod error;
pub mod implicit;
pub mod koszul;
pub mod linalg;
pub mod poly;

pub use cox::{
    complement_corners, region_rb, strand_basis, strand_dim, suggest_nu, BlockStructure,
    OrthantRegion, RegionUnion,
};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use implicit::{
    det_linear_matrix, generic_rank, implicitize, minors_gcd, rank_drop_check, verify_implicit,
    ExtractionMethod, ImplicitOptions, ImplicitResult, ImplicitResultDoc, RankDropReport,
};
pub use koszul::{
    cycle_basis, homology_dim, koszul_differential_strand, representation_matrix,
    z_complex_strand, CycleBasis, LinearFormMatrix, LinearFormMatrixDoc, ProblemInstance,
    ZComplexStrand,
};
pub use linalg::{rat, QMatrix, Rational};
pub use poly::{gcd_poly, parse_poly, Monomial, MultiDegree, MultiPoly, Ring, VarId, Variables};
