//! Representation-theoretic analysis of closed matrix groups: fixed-point
//! subspaces, the commutant (absolute irreducibility), isotropy types,
//! normalizers and Weyl actions.

mod isotropy;
mod normalizer;
mod weyl_iso;

pub use isotropy::{
    isotropy_types, pointwise_stabilizer, random_stabilizer_oracle, stabilizer_of, IsotropyType,
};
pub use normalizer::{
    fix_h_pair_report, h_pair_indices, normalizer, omega_exponents, verify_omega_formulas,
    weyl_action, FixPairReport, OmegaReport,
};
pub use weyl_iso::{order_histogram, verify_weyl_is_g3, IsoOutcome};

use nalgebra::{DMatrix, DVector};

use crate::linalg;
use crate::matgroup::FiniteMatrixGroup;
use crate::{Error, Result, EPS_ORTH, EPS_RANK};

/// A linear subspace of R^n carried by a canonical orthonormal basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    pub ambient: usize,
    basis: Vec<DVector<f64>>,
}

impl Subspace {
    /// Canonicalizes a spanning set into the subspace's reference basis.
    pub fn from_spanning(ambient: usize, spanning: &[DVector<f64>]) -> Subspace {
        let basis = linalg::canonical_orthonormal_basis(spanning, ambient);
        Subspace { ambient, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[DVector<f64>] {
        &self.basis
    }

    /// Basis as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> DMatrix<f64> {
        let mut b = DMatrix::zeros(self.ambient, self.dim());
        for (j, v) in self.basis.iter().enumerate() {
            b.set_column(j, v);
        }
        b
    }

    /// Orthogonal projection of `v` onto the subspace.
    pub fn project(&self, v: &DVector<f64>) -> DVector<f64> {
        let mut p = DVector::zeros(self.ambient);
        for b in &self.basis {
            p += b * b.dot(v);
        }
        p
    }

    /// Membership: `v` lies in the subspace iff its projection residual is
    /// below [`EPS_ORTH`] (scaled by the vector norm).
    pub fn contains(&self, v: &DVector<f64>) -> bool {
        let scale = v.norm().max(1.0);
        (v - self.project(v)).norm() < EPS_ORTH * scale
    }

    /// The projector matrix `B B^T`.
    pub fn projector(&self) -> DMatrix<f64> {
        let mut p = DMatrix::zeros(self.ambient, self.ambient);
        for b in &self.basis {
            p += b * b.transpose();
        }
        p
    }

    /// Intersection with another subspace of the same ambient space.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        assert_eq!(self.ambient, other.ambient);
        let n = self.ambient;
        let id = DMatrix::identity(n, n);
        let mut stacked = DMatrix::zeros(2 * n, n);
        stacked
            .view_mut((0, 0), (n, n))
            .copy_from(&(&id - self.projector()));
        stacked
            .view_mut((n, 0), (n, n))
            .copy_from(&(&id - other.projector()));
        let ns = linalg::nullspace(&stacked, EPS_RANK)?;
        Ok(Subspace::from_spanning(n, &ns))
    }

    /// Rank of the union of the two bases (dimension of the sum).
    pub fn sum_dim(&self, other: &Subspace) -> Result<usize> {
        let mut rows: Vec<DVector<f64>> = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        if rows.is_empty() {
            return Ok(0);
        }
        let m = DMatrix::from_fn(rows.len(), self.ambient, |i, j| rows[i][j]);
        linalg::rank(&m, EPS_RANK)
    }
}

/// Orthonormal basis of the common fixed space of the elements indexed by
/// `set`: the accumulated nullspace of all `g - I`.
pub fn fixed_subspace(group: &FiniteMatrixGroup, set: &[usize]) -> Result<Subspace> {
    if set.is_empty() {
        return Err(Error::Parameter(
            "fixed_subspace requires a nonempty element set".into(),
        ));
    }
    let n = group.dim;
    let id = DMatrix::identity(n, n);
    let mut stacked = DMatrix::zeros(n * set.len(), n);
    for (row, &i) in set.iter().enumerate() {
        let diff = group.element(i) - &id;
        stacked.view_mut((row * n, 0), (n, n)).copy_from(&diff);
    }
    let ns = linalg::nullspace(&stacked, EPS_RANK)?;
    Ok(Subspace::from_spanning(n, &ns))
}

/// Dimension of the commutant `{T : T g = g T for all generators}`, computed
/// as the nullspace dimension of the stacked Sylvester system. A value of 1
/// certifies absolute irreducibility.
pub fn commutant_dimension(group: &FiniteMatrixGroup) -> Result<usize> {
    let n = group.dim;
    let id = DMatrix::identity(n, n);
    let gens: Vec<usize> = if group.generator_indices().is_empty() {
        (0..group.order()).collect()
    } else {
        group.generator_indices().to_vec()
    };
    let mut stacked = DMatrix::zeros(n * n * gens.len(), n * n);
    for (row, &gi) in gens.iter().enumerate() {
        let g = group.element(gi);
        // vec(T g - g T) = (g^T kron I - I kron g) vec(T)
        let block = g.transpose().kronecker(&id) - id.kronecker(g);
        stacked
            .view_mut((row * n * n, 0), (n * n, n * n))
            .copy_from(&block);
    }
    let ns = linalg::nullspace(&stacked, EPS_RANK)?;
    Ok(ns.len())
}
