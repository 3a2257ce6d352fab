//! Phase vector fields on the unit sphere and steady-state branches on
//! fixed-point circles.
//!
//! The cubic equivariants `e_1, e_2` of the quaternionic family combine into
//! the one-parameter family `a e_1 + e_2` (the second coefficient normalized
//! to 1). Subtracting the radial part gives tangent fields; inside each
//! two-dimensional fixed-point space the unit circle is invariant and the
//! field reduces to a scalar `f(phi)` against the unit tangent. Zeros of `f`
//! with `f' != 0` are regular steady-state branches.

mod circle;
mod lift;

pub use circle::{circle_scalar, find_branches, CircleScalar};
pub use lift::{lift_branches_g8, lifted_fixed_planes};

use crate::equivariants::{g3_cubic_basis, radial_component, PolyMap};
use crate::repanalysis::Subspace;
use crate::{Error, Result};

/// A zero of the circle scalar.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BranchZero {
    /// Angle in `[0, 2 pi)` along the circle.
    pub angle: f64,
    /// The zero as a point of the ambient space.
    pub point: Vec<f64>,
    /// Central-difference derivative of the scalar at the zero.
    pub scalar_derivative: f64,
    pub regular: bool,
}

/// Zeros and regularity of the phase field on one fixed-point circle.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BranchReport {
    /// Fixed-space label (`H1`, `H2`, `H3`, or `custom`).
    pub label: String,
    /// True when the report was transported from an eight-dimensional group.
    pub lifted: bool,
    /// Family parameter `a` in `a e_1 + e_2`.
    pub a: f64,
    pub zeros: Vec<BranchZero>,
    /// The scalar vanishes identically on the circle for this `a`.
    pub degenerate: bool,
}

/// The one-parameter family of cubic phase fields of the quaternionic
/// family.
#[derive(Debug, Clone)]
pub struct PhaseFieldFamily {
    pub a: f64,
    pub t1: PolyMap,
    pub t2: PolyMap,
}

impl PhaseFieldFamily {
    /// Builds `a t_1 + t_2` from the tangent projections of the two cubic
    /// equivariants.
    pub fn new(a: f64) -> PhaseFieldFamily {
        let (e1, e2) = g3_cubic_basis();
        PhaseFieldFamily {
            a,
            t1: tangent_field(&e1),
            t2: tangent_field(&e2),
        }
    }

    /// The combined field `a t_1 + t_2`.
    pub fn combined(&self) -> PolyMap {
        self.t1.scale(self.a).add(&self.t2)
    }
}

/// Tangential part `t(v) = e(v) - <e(v), v> v` of a polynomial field,
/// interpreted on the unit sphere.
pub fn tangent_field(e: &PolyMap) -> PolyMap {
    let radial = radial_component(e);
    let n = e.nvars;
    let comps = (0..e.components.len())
        .map(|i| {
            let vi = crate::equivariants::Poly::var(n, i);
            e.components[i].sub(&radial.mul(&vi))
        })
        .collect();
    PolyMap {
        nvars: n,
        components: comps,
    }
}

/// The three two-dimensional fixed planes of the quaternionic family on R^4,
/// labelled by the generating pair (`H1 = <[j,i]>`, `H2 = <[j,j]>`,
/// `H3 = <[j,k]>`).
pub fn g3_fixed_planes() -> Result<Vec<(String, Subspace)>> {
    use crate::quaternion::{pair, quaternion_pair_to_matrix};
    let pairs = [
        ("H1", pair([0.0, 0.0, 1.0, 0.0], [0.0, 1.0, 0.0, 0.0])?),
        ("H2", pair([0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 1.0, 0.0])?),
        ("H3", pair([0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0])?),
    ];
    let mut out = Vec::new();
    for (label, p) in pairs {
        let m = quaternion_pair_to_matrix(p)?.mat;
        let id = nalgebra::DMatrix::identity(4, 4);
        let ns = crate::linalg::nullspace(&(m - id), crate::EPS_RANK)?;
        let sub = Subspace::from_spanning(4, &ns);
        if sub.dim() != 2 {
            return Err(Error::Internal(format!(
                "fixed plane of {label} has dim {}",
                sub.dim()
            )));
        }
        out.push((label.to_string(), sub));
    }
    Ok(out)
}

/// Matches a two-dimensional subspace against the three reference planes.
pub fn label_fixed_plane(fix: &Subspace) -> Result<String> {
    for (label, plane) in g3_fixed_planes()? {
        if fix.basis().iter().all(|b| plane.contains(b)) {
            return Ok(label);
        }
    }
    Ok("custom".to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariants::{radial_cubic, Poly};
    use rand::SeedableRng;
    use rand_distr::{Distribution, StandardNormal};

    fn random_sphere_points(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                v.into_iter().map(|x| x / norm).collect()
            })
            .collect()
    }

    #[test]
    fn radial_fields_have_zero_tangent_part() {
        let t = tangent_field(&radial_cubic(4));
        for p in random_sphere_points(4, 100, 1) {
            let val = t.eval(&p);
            assert!(val.iter().all(|x| x.abs() < 1e-12));
        }
    }

    #[test]
    fn tangency_on_the_sphere() {
        let fam = PhaseFieldFamily::new(0.7);
        for p in random_sphere_points(4, 100, 2) {
            for t in [&fam.t1, &fam.t2] {
                let val = t.eval(&p);
                let radial: f64 = val.iter().zip(p.iter()).map(|(a, b)| a * b).sum();
                assert!(radial.abs() < 1e-9, "radial component {radial}");
            }
        }
    }

    #[test]
    fn t1_vanishes_on_the_first_fixed_plane() {
        let fam = PhaseFieldFamily::new(1.0);
        let planes = g3_fixed_planes().unwrap();
        let (label, h1) = &planes[0];
        assert_eq!(label, "H1");
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let c1: f64 = StandardNormal.sample(&mut rng);
            let c2: f64 = StandardNormal.sample(&mut rng);
            let mut v = &h1.basis()[0] * c1 + &h1.basis()[1] * c2;
            v /= v.norm();
            let val = fam.t1.eval(v.as_slice());
            assert!(val.iter().all(|x| x.abs() < 1e-10), "t1 = {val:?}");
        }
    }

    #[test]
    fn tangent_fields_match_displayed_quintic_forms_on_sphere() {
        // t1 agrees with (rho2 (rho2 - rho1) v1, rho2 (rho2 - rho1) v2,
        // rho1 (rho1 - rho2) v3, rho1 (rho1 - rho2) v4) on the unit sphere
        let v = |i: usize| Poly::var(4, i);
        let rho1 = v(0).mul(&v(0)).add(&v(1).mul(&v(1)));
        let rho2 = v(2).mul(&v(2)).add(&v(3).mul(&v(3)));
        let d21 = rho2.sub(&rho1);
        let displayed = PolyMap {
            nvars: 4,
            components: vec![
                rho2.mul(&d21).mul(&v(0)),
                rho2.mul(&d21).mul(&v(1)),
                rho1.mul(&d21).scale(-1.0).mul(&v(2)),
                rho1.mul(&d21).scale(-1.0).mul(&v(3)),
            ],
        };
        let fam = PhaseFieldFamily::new(0.0);
        for p in random_sphere_points(4, 50, 3) {
            let lhs = fam.t1.eval(&p);
            let rhs = displayed.eval(&p);
            for (a, b) in lhs.iter().zip(rhs.iter()) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn combined_field_is_equivariant_under_the_group() {
        let gens = crate::matgroup::build_g3_generators(3).unwrap();
        let fam = PhaseFieldFamily::new(-2.0);
        let combined = fam.combined();
        let points = random_sphere_points(4, 50, 4);
        for g in &gens.generators {
            assert!(combined.equivariance_deviation(&g.mat, &points) < 1e-8);
        }
    }
}
