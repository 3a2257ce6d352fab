//! The explicit cubic equivariants of the quaternionic family on R^4: the
//! gradients of the two quartic invariants
//!
//! ```text
//! I_{ 4,1 } = 1/2 rho_1 rho_2            rho_1 = v1^2 + v2^2,  rho_2 = v3^2 + v4^2
//! I_{ 4,2 } = 1/2 (s_1 s_2 + 4 t_1 t_2)  s_i = v^2 - v^2 pairs, t_1 = v1 v2, t_2 = v3 v4
//! ```
//!
//! together with the radial cubic that completes the three-dimensional space.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{Poly, PolyMap};

fn v(i: usize) -> Poly {
    Poly::var(4, i)
}

fn rho1() -> Poly {
    v(0).mul(&v(0)).add(&v(1).mul(&v(1)))
}

fn rho2() -> Poly {
    v(2).mul(&v(2)).add(&v(3).mul(&v(3)))
}

fn sigma1() -> Poly {
    v(0).mul(&v(0)).sub(&v(1).mul(&v(1)))
}

fn sigma2() -> Poly {
    v(2).mul(&v(2)).sub(&v(3).mul(&v(3)))
}

fn tau1() -> Poly {
    v(0).mul(&v(1))
}

fn tau2() -> Poly {
    v(2).mul(&v(3))
}

/// The quartic invariant `1/2 rho_1 rho_2`.
pub fn invariant_i41() -> Poly {
    rho1().mul(&rho2()).scale(0.5)
}

/// The quartic invariant `1/2 (sigma_1 sigma_2 + 4 tau_1 tau_2)`.
pub fn invariant_i42() -> Poly {
    sigma1()
        .mul(&sigma2())
        .add(&tau1().mul(&tau2()).scale(4.0))
        .scale(0.5)
}

/// The two non-radial cubic equivariants (the invariant gradients), exactly
/// as expanded in the rho/sigma/tau variables.
pub fn g3_cubic_basis() -> (PolyMap, PolyMap) {
    let e1 = PolyMap {
        nvars: 4,
        components: vec![
            rho2().mul(&v(0)),
            rho2().mul(&v(1)),
            rho1().mul(&v(2)),
            rho1().mul(&v(3)),
        ],
    };
    let e2 = PolyMap {
        nvars: 4,
        components: vec![
            sigma2().mul(&v(0)).add(&tau2().mul(&v(1)).scale(2.0)),
            sigma2()
                .mul(&v(1))
                .scale(-1.0)
                .add(&tau2().mul(&v(0)).scale(2.0)),
            sigma1().mul(&v(2)).add(&tau1().mul(&v(3)).scale(2.0)),
            sigma1()
                .mul(&v(3))
                .scale(-1.0)
                .add(&tau1().mul(&v(2)).scale(2.0)),
        ],
    };
    (e1, e2)
}

/// The radial cubic `|v|^2 v` on R^n.
pub fn radial_cubic(n: usize) -> PolyMap {
    let norm_sq = (0..n).fold(Poly::zero(n), |acc, i| {
        acc.add(&Poly::var(n, i).mul(&Poly::var(n, i)))
    });
    PolyMap {
        nvars: n,
        components: (0..n).map(|i| norm_sq.mul(&Poly::var(n, i))).collect(),
    }
}

/// True iff `candidate` is proportional to the gradient of `invariant`,
/// checked symbolically and against central finite differences (step 1e-5,
/// tolerance 1e-6) at 20 seeded random points.
pub fn gradient_check(invariant: &Poly, candidate: &PolyMap) -> bool {
    let n = invariant.nvars;
    if candidate.components.len() != n {
        return false;
    }
    let grad = PolyMap {
        nvars: n,
        components: (0..n).map(|i| invariant.derivative(i)).collect(),
    };
    let d = candidate.max_degree();
    let gvec = grad.coeff_vector(d);
    let cvec = candidate.coeff_vector(d);
    // symbolic proportionality: grad = lambda * candidate
    let lambda = match cvec.iter().position(|c| c.abs() > 1e-9) {
        Some(i) => gvec[i] / cvec[i],
        None => return false,
    };
    if lambda.abs() < 1e-9 {
        return false;
    }
    for (g, c) in gvec.iter().zip(cvec.iter()) {
        if (g - lambda * c).abs() > 1e-9 {
            return false;
        }
    }
    // numerical cross-check by central differences
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let step = 1e-5;
    for _ in 0..20 {
        let p: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let cand = candidate.eval(&p);
        for i in 0..n {
            let mut hi = p.clone();
            let mut lo = p.clone();
            hi[i] += step;
            lo[i] -= step;
            let fd = (invariant.eval(&hi) - invariant.eval(&lo)) / (2.0 * step);
            if (fd - lambda * cand[i]).abs() > 1e-6 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::{build_g3_generators, close_group};

    #[test]
    fn e31_values_at_reference_points() {
        let (e1, _) = g3_cubic_basis();
        assert_eq!(e1.eval(&[1.0, 0.0, 0.0, 0.0]), vec![0.0, 0.0, 0.0, 0.0]);
        assert_eq!(e1.eval(&[1.0, 0.0, 1.0, 0.0]), vec![1.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn gradients_match_their_invariants() {
        let (e1, e2) = g3_cubic_basis();
        assert!(gradient_check(&invariant_i41(), &e1));
        assert!(gradient_check(&invariant_i42(), &e2));
        assert!(!gradient_check(&invariant_i41(), &e2));
        assert!(!gradient_check(&invariant_i42(), &e1));
    }

    #[test]
    fn cubic_basis_is_equivariant_under_all_generators() {
        let gens = build_g3_generators(3).unwrap();
        let (e1, e2) = g3_cubic_basis();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let points: Vec<Vec<f64>> = (0..30)
            .map(|_| (0..4).map(|_| StandardNormal.sample(&mut rng)).collect())
            .collect();
        for g in &gens.generators {
            assert!(e1.equivariance_deviation(&g.mat, &points) < 1e-10);
            assert!(e2.equivariance_deviation(&g.mat, &points) < 1e-10);
        }
    }

    #[test]
    fn radial_completes_the_cubic_space() {
        // e31, e32 and |v|^2 v are independent and all equivariant, so they
        // span the three-dimensional cubic space
        let g = close_group(&build_g3_generators(3).unwrap()).unwrap();
        let dim = crate::equivariants::equivariant_dimension(&g, 3).unwrap();
        assert_eq!(dim, 3);
        let (e1, e2) = g3_cubic_basis();
        let r = radial_cubic(4);
        let rows = [e1.coeff_vector(3), e2.coeff_vector(3), r.coeff_vector(3)];
        let m = nalgebra::DMatrix::from_fn(3, rows[0].len(), |i, j| rows[i][j]);
        assert_eq!(crate::linalg::rank(&m, crate::EPS_RANK).unwrap(), 3);
    }

    #[test]
    fn homogeneity_degree_three() {
        let (e1, e2) = g3_cubic_basis();
        assert!(e1.is_homogeneous(3));
        assert!(e2.is_homogeneous(3));
    }
}
