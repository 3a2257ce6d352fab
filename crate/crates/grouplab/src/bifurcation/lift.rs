//! Transport of the circle analysis into the eight-dimensional family: the
//! Weyl action on `Fix(<R2^2>)` is the quaternionic family in the subspace
//! coordinates, so the same one-parameter cubic family drives the branches
//! inside each of its three fixed planes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::circle::{circle_scalar_of, find_branches_of};
use super::{BranchReport, PhaseFieldFamily};
use crate::matgroup::{build_g8_generators, close_group, FiniteMatrixGroup};
use crate::quaternion::{pair, quaternion_pair_to_matrix};
use crate::repanalysis::{
    fixed_subspace, h_pair_indices, isotropy_types, pointwise_stabilizer, weyl_action, Subspace,
};
use crate::{Error, Result};

/// The two-dimensional fixed planes of the Weyl action of `G(l)` on
/// `Fix(<R2^2>)`, labelled by the quaternionic reference planes, together
/// with the Weyl restriction group, the fixed subspace, and the ambient
/// group. Each reference plane is verified to represent exactly one
/// two-dimensional isotropy class of the Weyl action.
pub fn lifted_fixed_planes(
    l: u32,
    seed: u64,
) -> Result<(
    FiniteMatrixGroup,
    FiniteMatrixGroup,
    Subspace,
    Vec<(String, Subspace)>,
)> {
    let gens = build_g8_generators(l)?;
    let group = close_group(&gens)?;
    let (h, _) = h_pair_indices(&group, &gens)?;
    let (weyl, fix) = weyl_action(&group, &h)?;

    let types = isotropy_types(&weyl, seed)?;
    let mut plane_classes: Vec<Vec<usize>> = types
        .iter()
        .filter(|t| t.fixed_dim == 2)
        .map(|t| t.representative.clone())
        .collect();

    // the Weyl action contains the quaternionic reference generators; match
    // each reference plane's stabilizer class against the isotropy types
    let reference = [
        ("H1", pair([0.0, 0.0, 1.0, 0.0], [0.0, 1.0, 0.0, 0.0])?),
        ("H2", pair([0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 1.0, 0.0])?),
        ("H3", pair([0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0])?),
    ];
    let mut planes = Vec::new();
    for (label, p) in reference {
        let m = quaternion_pair_to_matrix(p)?.mat;
        let idx = weyl.find(&m).ok_or_else(|| {
            Error::Structural(
                "the Weyl action is not the standard quaternionic family in these coordinates"
                    .into(),
            )
        })?;
        let plane = fixed_subspace(&weyl, &[idx])?;
        if plane.dim() != 2 {
            return Err(Error::Structural(format!(
                "reference element for {label} fixes a space of dim {}",
                plane.dim()
            )));
        }
        let stab = pointwise_stabilizer(&weyl, &plane);
        let canon = weyl.conjugacy_canonical(&stab);
        let at = plane_classes
            .iter()
            .position(|c| *c == canon)
            .ok_or_else(|| {
                Error::Structural(format!(
                    "{label} stabilizer is not an isotropy class of the Weyl action"
                ))
            })?;
        plane_classes.remove(at);
        planes.push((label.to_string(), plane));
    }
    if !plane_classes.is_empty() {
        return Err(Error::Structural(format!(
            "{} two-dimensional Weyl isotropy classes beyond the three reference planes",
            plane_classes.len()
        )));
    }
    Ok((group, weyl, fix, planes))
}

/// Runs the circle analysis of `a t1 + t2` inside each two-dimensional fixed
/// plane of the Weyl action, emitting one report per plane with zero points
/// mapped back to R^8.
pub fn lift_branches_g8(l: u32, a: f64, seed: u64) -> Result<Vec<BranchReport>> {
    let (_group, weyl, fix, planes) = lifted_fixed_planes(l, seed)?;
    if planes.is_empty() {
        return Err(Error::Structural(
            "no two-dimensional Weyl fixed planes found".into(),
        ));
    }

    // the transported family must be equivariant under the Weyl action in
    // the subspace coordinates
    let family = PhaseFieldFamily::new(a);
    let combined = family.combined();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x77);
    let points: Vec<Vec<f64>> = (0..50)
        .map(|_| {
            let v: Vec<f64> = (0..4).map(|_| StandardNormal.sample(&mut rng)).collect();
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.into_iter().map(|x| x / n).collect()
        })
        .collect();
    for &gi in weyl.generator_indices() {
        let dev = combined.equivariance_deviation(weyl.element(gi), &points);
        if dev > 1e-8 {
            return Err(Error::Structural(format!(
                "cubic family is not equivariant under the Weyl action (deviation {dev:.3e})"
            )));
        }
    }

    let b = fix.basis_matrix();
    let mut reports = Vec::new();
    for (label, plane) in &planes {
        let scalar = circle_scalar_of(plane, &combined)?;
        let mut rep = find_branches_of(&scalar, label, true, a)?;
        for z in &mut rep.zeros {
            let w4 = nalgebra::DVector::from_vec(z.point.clone());
            let p8 = &b * w4;
            z.point = p8.iter().copied().collect();
        }
        reports.push(rep);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repanalysis::stabilizer_of;

    #[test]
    fn lift_produces_three_labelled_regular_reports() {
        let reports = lift_branches_g8(1, 0.0, 0).unwrap();
        assert_eq!(reports.len(), 3);
        let labels: Vec<&str> = reports.iter().map(|r| r.label.as_str()).collect();
        assert_eq!(labels, vec!["H1", "H2", "H3"]);
        for r in &reports {
            assert!(!r.degenerate);
            assert!(!r.zeros.is_empty());
            assert!(r.zeros.iter().all(|z| z.regular));
        }
    }

    #[test]
    fn lifted_h2_degenerates_at_minus_one() {
        let reports = lift_branches_g8(1, -1.0, 0).unwrap();
        let h2 = reports.iter().find(|r| r.label == "H2").unwrap();
        assert!(h2.degenerate);
        let h1 = reports.iter().find(|r| r.label == "H1").unwrap();
        assert!(!h1.degenerate);
    }

    #[test]
    fn lifted_zero_points_have_even_dimensional_isotropy() {
        let gens = build_g8_generators(1).unwrap();
        let group = close_group(&gens).unwrap();
        let reports = lift_branches_g8(1, 0.0, 0).unwrap();
        for r in &reports {
            for z in &r.zeros {
                let p = nalgebra::DVector::from_vec(z.point.clone());
                let stab = stabilizer_of(&group, &p);
                let fix = fixed_subspace(&group, &stab).unwrap();
                assert_eq!(fix.dim() % 2, 0, "odd fixed dim at a lifted zero");
                assert!(stab.len() > 1, "lifted zeros keep symmetry");
            }
        }
    }
}
