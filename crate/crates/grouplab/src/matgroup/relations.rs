//! Elementwise relation checks for the R^8 family generators.

use nalgebra::DMatrix;

use super::{close_matrices, g8_gen_a, FamilyTag};
use crate::linalg::{dist_from_identity, max_dist};
use crate::{Error, Result, EPS_ORTH};

/// Least n >= 1 with g^n = identity within [`EPS_ORTH`]; errors out past
/// `bound` as a non-closure indicator.
pub fn element_order(g: &DMatrix<f64>, bound: usize) -> Result<usize> {
    let mut p = g.clone();
    for n in 1..=bound {
        if dist_from_identity(&p) < EPS_ORTH {
            return Ok(n);
        }
        p = &p * g;
    }
    Err(Error::Structural(format!(
        "element order exceeds bound {bound}"
    )))
}

/// One verified identity.
#[derive(Debug, Clone, serde::Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
    /// Maximum entry deviation from the asserted identity.
    pub deviation: f64,
}

/// Outcome of [`verify_matrix_relations`].
#[derive(Debug, Clone, serde::Serialize)]
pub struct RelationReport {
    pub l: u32,
    pub k: u32,
    pub tau: u32,
    pub checks: Vec<RelationCheck>,
    pub all_hold: bool,
}

impl RelationReport {
    pub fn failing(&self) -> Vec<&RelationCheck> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }
}

fn pow(m: &DMatrix<f64>, e: u32) -> DMatrix<f64> {
    let mut out = DMatrix::identity(m.nrows(), m.ncols());
    for _ in 0..e {
        out = &out * m;
    }
    out
}

/// Verifies the defining relations of the R^8 family for a given `l`:
/// orders of `R1`, `A`, `R3`, the involution and conjugation identities, the
/// two words expressing `R2^2` and `-R2^2`, the impossibility of
/// `A R1^2 = R1^2 A^sigma`, and that `R1` and `A` generate the full group.
pub fn verify_matrix_relations(l: u32) -> Result<RelationReport> {
    let gens = super::build_g8_generators(l)?;
    let (k, tau) = match gens.family {
        FamilyTag::G8 { k, tau, .. } => (k, tau),
        _ => unreachable!(),
    };
    let r1 = gens.generators[0].mat.clone();
    let r2 = gens.generators[1].mat.clone();
    let r3 = gens.generators[2].mat.clone();
    let a = g8_gen_a(&gens)?.mat;
    let id = DMatrix::identity(8, 8);
    let neg_id = -&id;

    let mut checks: Vec<RelationCheck> = Vec::new();
    let push_eq =
        |name: &str, lhs: &DMatrix<f64>, rhs: &DMatrix<f64>, checks: &mut Vec<RelationCheck>| {
            let dev = max_dist(lhs, rhs);
            checks.push(RelationCheck {
                name: name.into(),
                holds: dev < EPS_ORTH,
                deviation: dev,
            });
        };

    push_eq("R1^8 = 1", &pow(&r1, 8), &id, &mut checks);
    push_eq("A^(2k) = 1", &pow(&a, 2 * k), &id, &mut checks);
    push_eq("A^k = -1", &pow(&a, k), &neg_id, &mut checks);
    push_eq("R1^4 = -1", &pow(&r1, 4), &neg_id, &mut checks);
    push_eq("A^8 = R3^8", &pow(&a, 8), &pow(&r3, 8), &mut checks);
    push_eq("(A R1)^2 = 1", &pow(&(&a * &r1), 2), &id, &mut checks);
    push_eq("(R1 A)^2 = 1", &pow(&(&r1 * &a), 2), &id, &mut checks);
    push_eq(
        "(A^3 R1^3)^2 = 1",
        &pow(&(pow(&a, 3) * pow(&r1, 3)), 2),
        &id,
        &mut checks,
    );
    push_eq(
        "(R1^3 A^3)^2 = 1",
        &pow(&(pow(&r1, 3) * pow(&a, 3)), 2),
        &id,
        &mut checks,
    );
    push_eq(
        "R1^2 A^2 R1^2 = A^2",
        &(pow(&r1, 2) * pow(&a, 2) * pow(&r1, 2)),
        &pow(&a, 2),
        &mut checks,
    );
    push_eq("R3^(2 tau) = 1", &pow(&r3, 2 * tau), &id, &mut checks);
    {
        let dev = dist_from_identity(&pow(&r3, tau));
        let expect_identity = tau % 4 == 3;
        checks.push(RelationCheck {
            name: format!("R3^tau = 1 iff tau = 3 mod 4 (tau = {tau})"),
            holds: (dev < EPS_ORTH) == expect_identity,
            deviation: dev,
        });
    }
    push_eq(
        "R2^2 = R1 A^2 R1^3 A^2",
        &pow(&r2, 2),
        &(&r1 * pow(&a, 2) * pow(&r1, 3) * pow(&a, 2)),
        &mut checks,
    );
    push_eq(
        "-R2^2 = R1 A^2 R1^3 A^(2+k)",
        &(-pow(&r2, 2)),
        &(&r1 * pow(&a, 2) * pow(&r1, 3) * pow(&a, 2 + k)),
        &mut checks,
    );
    {
        // no sigma in 0..2k-1 satisfies A R1^2 = R1^2 A^sigma
        let lhs = &a * pow(&r1, 2);
        let r1sq = pow(&r1, 2);
        let mut best = f64::INFINITY;
        let mut found = None;
        let mut rhs = r1sq.clone();
        for sigma in 0..(2 * k) {
            let dev = max_dist(&lhs, &rhs);
            if dev < EPS_ORTH {
                found = Some(sigma);
            }
            best = best.min(dev);
            rhs = &rhs * &a;
        }
        checks.push(RelationCheck {
            name: "no sigma with A R1^2 = R1^2 A^sigma".into(),
            holds: found.is_none(),
            deviation: best,
        });
    }
    {
        // <R1, A> is the whole group
        let full = close_matrices(
            8,
            FamilyTag::Custom,
            &[r1.clone(), r2.clone(), r3.clone()],
            1 << 20,
        )?;
        let sub = close_matrices(8, FamilyTag::Custom, &[r1.clone(), a.clone()], 1 << 20)?;
        let same = full.order() == sub.order()
            && (0..sub.order()).all(|i| full.find(sub.element(i)).is_some());
        checks.push(RelationCheck {
            name: "<R1, A> = <R1, R2, R3>".into(),
            holds: same,
            deviation: (full.order() as f64 - sub.order() as f64).abs(),
        });
    }

    let all_hold = checks.iter().all(|c| c.holds);
    Ok(RelationReport {
        l,
        k,
        tau,
        checks,
        all_hold,
    })
}

/// Convenience: `A` and `R3` orders for a given l, used by callers that only
/// need the order facts.
#[allow(dead_code)]
pub fn g8_special_orders(l: u32) -> Result<(usize, usize, usize)> {
    let gens = super::build_g8_generators(l)?;
    let k = match gens.family {
        FamilyTag::G8 { k, .. } => k,
        _ => unreachable!(),
    };
    let r1 = &gens.generators[0].mat;
    let r3 = &gens.generators[2].mat;
    let a = g8_gen_a(&gens)?.mat;
    let bound = (4 * k) as usize;
    Ok((
        element_order(r1, bound)?,
        element_order(&a, bound)?,
        element_order(r3, bound)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::build_g8_generators;

    #[test]
    fn identity_has_order_one() {
        let id = DMatrix::identity(5, 5);
        assert_eq!(element_order(&id, 3).unwrap(), 1);
    }

    #[test]
    fn r1_has_order_eight_and_a_has_order_2k() {
        for l in [1u32, 2] {
            let (o_r1, o_a, _) = g8_special_orders(l).unwrap();
            assert_eq!(o_r1, 8);
            assert_eq!(o_a, (2 * (4 + 8 * l)) as usize);
        }
    }

    #[test]
    fn r3_order_follows_tau_mod_4() {
        // l = 1: tau = 3 = 3 mod 4, so R3^3 = 1; l = 2: tau = 5, R3^5 != 1 but R3^10 = 1
        let g1 = build_g8_generators(1).unwrap();
        let r3 = &g1.generators[2].mat;
        assert_eq!(element_order(r3, 100).unwrap(), 3);
        let g2 = build_g8_generators(2).unwrap();
        let r3 = &g2.generators[2].mat;
        assert_eq!(element_order(r3, 100).unwrap(), 10);
    }

    #[test]
    fn all_relations_hold_for_l1() {
        let rep = verify_matrix_relations(1).unwrap();
        assert!(rep.all_hold, "failing: {:?}", rep.failing());
    }

    #[test]
    fn order_bound_exceeded_is_error() {
        let gens = build_g8_generators(1).unwrap();
        assert!(element_order(&gens.generators[0].mat, 3).is_err());
    }
}
