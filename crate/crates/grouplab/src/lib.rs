//! A computational laboratory for two families of finite orthogonal matrix
//! groups: a family acting on R^4 built from pairs of unit quaternions, and a
//! family acting on R^8 built from explicit 2x2 -> 4x4 -> 8x8 block matrices.
//!
//! Both families act absolutely irreducibly while every isotropy subgroup has
//! an even-dimensional fixed-point space, which makes them interesting test
//! cases for equivariant steady-state bifurcation. The crate provides:
//!
//! * [`matgroup`] — generator construction, breadth-first closure enumeration
//!   with canonically quantized element keys, and elementwise relation checks;
//! * [`repanalysis`] — commutant (absolute irreducibility) tests, isotropy
//!   types with fixed-point spaces, normalizers and Weyl-group actions;
//! * [`equivariants`] — dimensions of homogeneous equivariant polynomial maps
//!   by character averaging, with an independent Reynolds-projector oracle,
//!   plus the explicit cubic equivariants of the quaternionic family;
//! * [`bifurcation`] — phase vector fields on the unit sphere, zero finding
//!   and regularity certification on fixed-point circles;
//! * [`wordgroup`] — an exact, integer-only model of the abstract group
//!   presented by the relations the 8x8 generators satisfy, with coset normal
//!   forms and order certificates;
//! * [`certify`] — a one-shot verification suite over all of the above.
//!
//! Heavy inner loops are data-parallel via rayon when the `parallel` feature
//! (default) is enabled; a sequential fallback is compiled otherwise. All
//! results are bitwise independent of the thread count.

pub mod bifurcation;
pub mod certify;
pub mod equivariants;
pub mod linalg;
pub mod matgroup;
pub mod par;
pub mod quant;
pub mod quaternion;
pub mod repanalysis;
pub mod report;
pub mod wordgroup;

/// Orthogonality / membership tolerance for matrix entries.
pub const EPS_ORTH: f64 = 1e-9;
/// Unit-norm tolerance for quaternions.
pub const EPS_NORM: f64 = 1e-12;
/// Singular-value threshold for rank decisions.
pub const EPS_RANK: f64 = 1e-7;
/// Required ratio between accepted and rejected singular values.
pub const RANK_GAP: f64 = 1e3;
/// Equivariance check tolerance at sample points.
pub const EPS_EQ: f64 = 1e-8;
/// Threshold on |f'| below which a zero of a circle scalar is not regular.
pub const EPS_REG: f64 = 1e-6;

/// Errors shared by all analysis modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("tolerance fault: {what} (deviation {deviation:.3e})")]
    Tolerance { what: String, deviation: f64 },
    #[error("group not closed within bound {bound}")]
    NotClosed { bound: usize },
    #[error("rank decision ambiguous: singular values {above:.3e} / {below:.3e} violate the required gap")]
    RankGap { above: f64, below: f64 },
    #[error("internal consistency fault: {0}")]
    Internal(String),
    #[error("structural fault: {0}")]
    Structural(String),
    #[error("word rewriting fault: {0}")]
    Rewrite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
