//! Restriction of equivariant maps to a fixed-point subspace and the rank of
//! the restriction map.

use super::{reynolds_equivariant_basis, PolyMap};
use crate::linalg;
use crate::matgroup::FiniteMatrixGroup;
use crate::repanalysis::{fixed_subspace, weyl_action};
use crate::{Error, Result};

/// Outcome of [`restriction_rank`].
#[derive(Debug, Clone, serde::Serialize)]
pub struct RestrictionReport {
    pub degree: usize,
    /// Dimension of the degree-d equivariant space upstairs.
    pub domain_dim: usize,
    /// Rank of the restricted coefficient vectors.
    pub image_rank: usize,
    /// Dimension of the equivariant space of the restriction group on the
    /// fixed subspace.
    pub target_dim: usize,
    pub surjective: bool,
}

/// Restricts a polynomial map to a subspace with orthonormal basis columns
/// `b`: `q(w) = b^T p(b w)`.
pub fn restrict_map(p: &PolyMap, b: &nalgebra::DMatrix<f64>) -> PolyMap {
    let m = b.ncols();
    let composed: Vec<super::Poly> = p.components.iter().map(|c| c.compose_linear(b)).collect();
    let comps = (0..m)
        .map(|j| {
            let mut acc = super::Poly::zero(m);
            for (i, c) in composed.iter().enumerate() {
                let w = b[(i, j)];
                if w.abs() > 1e-14 {
                    acc = acc.add(&c.scale(w));
                }
            }
            acc
        })
        .collect();
    PolyMap {
        nvars: m,
        components: comps,
    }
}

/// Builds the degree-d equivariant basis upstairs, restricts it to the fixed
/// space of the subgroup `set`, and compares the image rank with the
/// dimension of the equivariant space of the restriction (Weyl) group.
pub fn restriction_rank(
    group: &FiniteMatrixGroup,
    set: &[usize],
    d: usize,
) -> Result<RestrictionReport> {
    let fix = fixed_subspace(group, set)?;
    if fix.dim() == 0 {
        return Err(Error::Parameter(
            "restriction to a trivial fixed space".into(),
        ));
    }
    let basis = reynolds_equivariant_basis(group, d)?;
    let b = fix.basis_matrix();
    let restricted: Vec<PolyMap> = basis.maps.iter().map(|p| restrict_map(p, &b)).collect();

    let image_rank = if restricted.is_empty() {
        0
    } else {
        let vecs: Vec<Vec<f64>> = restricted.iter().map(|p| p.coeff_vector(d)).collect();
        let m = nalgebra::DMatrix::from_fn(vecs.len(), vecs[0].len(), |i, j| vecs[i][j]);
        linalg::rank(&m, crate::EPS_RANK)?
    };

    let (weyl, _) = weyl_action(group, set)?;
    let target_dim = super::equivariant_dimension(&weyl, d)?;

    Ok(RestrictionReport {
        degree: d,
        domain_dim: basis.maps.len(),
        image_rank,
        target_dim,
        surjective: image_rank == target_dim,
    })
}
