//! Generator matrices for the two group families.
//!
//! The R^4 family is generated by quaternion pairs
//! `<[e_m, 1], [1, i], [j, 1], [1, j]>` where `e_m = exp(i pi / m)` is a
//! primitive m-th root of -1 (m odd, so that the closure is finite of order
//! 16 m).
//!
//! The R^8 family is assembled from 2x2 blocks: reflections `F1, F2, T1, T2,
//! S1, S2` and the rotation `D_k` by `pi/2 + 2 pi / k`, combined into 4x4
//! blocks `FF, SS, TT, DD` and finally the 8x8 generators `R1, R2, R3(k)`
//! with `k = 4 + 8 l`. The product `A = R1 R2 R3` together with `R1`
//! generates the same group.

use nalgebra::DMatrix;

use super::{FamilyTag, GeneratorSet, MatrixElement};
use crate::quaternion::{pair, quaternion_pair_to_matrix, Quaternion, QuaternionPair};
use crate::{Error, Result};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Generators of the quaternionic family for odd `m >= 3`, with the default
/// root `e_m = exp(i pi / m)`.
pub fn build_g3_generators(m: u32) -> Result<GeneratorSet> {
    build_g3_generators_with_root(m, 1)
}

/// Same as [`build_g3_generators`] with an alternative primitive root of -1,
/// `exp(i pi root_index / m)` for odd `root_index` coprime to `2m`.
pub fn build_g3_generators_with_root(m: u32, root_index: u32) -> Result<GeneratorSet> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::Parameter(format!(
            "m must be odd and at least 3, got {m}"
        )));
    }
    if root_index.is_multiple_of(2) || gcd(root_index as u64, 2 * m as u64) != 1 {
        return Err(Error::Parameter(format!(
            "root index {root_index} does not give a primitive {m}-th root of -1"
        )));
    }
    let e_m = Quaternion::from_angle(std::f64::consts::PI * root_index as f64 / m as f64);
    let one = [1.0, 0.0, 0.0, 0.0];
    let i = [0.0, 1.0, 0.0, 0.0];
    let j = [0.0, 0.0, 1.0, 0.0];
    let pairs: Vec<QuaternionPair> = vec![
        QuaternionPair::new(e_m, Quaternion::ONE)?,
        pair(one, i)?,
        pair(j, one)?,
        pair(one, j)?,
    ];
    let generators = pairs
        .into_iter()
        .map(quaternion_pair_to_matrix)
        .collect::<Result<Vec<MatrixElement>>>()?;
    Ok(GeneratorSet {
        dim: 4,
        generators,
        family: FamilyTag::G3 { m },
    })
}

fn block2(a: f64, b: f64, c: f64, d: f64) -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[a, b, c, d])
}

/// Places `block` at block position (bi, bj) of `out` (blocks of size s).
fn set_block(out: &mut DMatrix<f64>, s: usize, bi: usize, bj: usize, block: &DMatrix<f64>) {
    out.view_mut((bi * s, bj * s), (s, s)).copy_from(block);
}

/// The 2x2 building blocks for a given k, plus the 4x4 and 8x8 assemblies.
pub struct G8Matrices {
    pub r1: DMatrix<f64>,
    pub r2: DMatrix<f64>,
    pub r3: DMatrix<f64>,
}

/// Assembles `R1, R2, R3(k)` for `k = 4 + 8 l` using the primitive k-th root
/// of unity `exp(2 pi i root_index / k)`.
pub fn g8_matrices(k: u32, root_index: u32) -> Result<G8Matrices> {
    if k < 12 || k % 8 != 4 {
        return Err(Error::Parameter(format!(
            "k must satisfy k >= 12 and k = 4 mod 8, got {k}"
        )));
    }
    if gcd(root_index as u64, k as u64) != 1 {
        return Err(Error::Parameter(format!(
            "root index {root_index} is not coprime to k = {k}"
        )));
    }
    // f = (zeta_8 - zeta_8^3)/2 = 1/sqrt(2); d1 = Re zeta_k, d2 = Im zeta_k.
    let f = 0.5_f64.sqrt();
    let theta = 2.0 * std::f64::consts::PI * root_index as f64 / k as f64;
    let d1 = theta.cos();
    let d2 = theta.sin();

    let f1 = block2(-f, -f, -f, f);
    let f2 = block2(-f, f, f, f);
    let t1 = block2(-1.0, 0.0, 0.0, 1.0);
    let t2 = block2(1.0, 0.0, 0.0, -1.0);
    let s1 = block2(0.0, -1.0, -1.0, 0.0);
    let s2 = block2(0.0, 1.0, 1.0, 0.0);
    let dk = block2(-d2, -d1, d1, -d2);

    let mut ff = DMatrix::zeros(4, 4);
    set_block(&mut ff, 2, 0, 1, &f1);
    set_block(&mut ff, 2, 1, 0, &f2);
    let mut ss = DMatrix::zeros(4, 4);
    set_block(&mut ss, 2, 0, 0, &s1);
    set_block(&mut ss, 2, 1, 1, &s2);
    let mut tt = DMatrix::zeros(4, 4);
    set_block(&mut tt, 2, 0, 1, &t1);
    set_block(&mut tt, 2, 1, 0, &t2);
    let mut dd = DMatrix::zeros(4, 4);
    set_block(&mut dd, 2, 0, 0, &dk);
    set_block(&mut dd, 2, 1, 1, &dk);

    let mut r1 = DMatrix::zeros(8, 8);
    set_block(&mut r1, 4, 0, 1, &ff);
    set_block(&mut r1, 4, 1, 0, &ff);
    let mut r2 = DMatrix::zeros(8, 8);
    set_block(&mut r2, 4, 0, 0, &ss);
    set_block(&mut r2, 4, 1, 1, &tt);
    let mut r3 = DMatrix::zeros(8, 8);
    set_block(&mut r3, 4, 0, 0, &dd);
    set_block(&mut r3, 4, 1, 1, &dd);

    Ok(G8Matrices { r1, r2, r3 })
}

/// Generators of the R^8 family for `l >= 1`, default root of unity.
pub fn build_g8_generators(l: u32) -> Result<GeneratorSet> {
    build_g8_generators_with_root(l, 1)
}

/// Same with an alternative primitive k-th root of unity.
pub fn build_g8_generators_with_root(l: u32, root_index: u32) -> Result<GeneratorSet> {
    if l < 1 {
        return Err(Error::Parameter(format!("l must be at least 1, got {l}")));
    }
    let k = 4 + 8 * l;
    let tau = k / 4;
    let mats = g8_matrices(k, root_index)?;
    let generators = vec![
        MatrixElement::new(mats.r1)?,
        MatrixElement::new(mats.r2)?,
        MatrixElement::new(mats.r3)?,
    ];
    Ok(GeneratorSet {
        dim: 8,
        generators,
        family: FamilyTag::G8 { l, k, tau },
    })
}

/// The combined generator `A = R1 R2 R3(k)` of a generator set from
/// [`build_g8_generators`].
pub fn g8_gen_a(gens: &GeneratorSet) -> Result<MatrixElement> {
    match gens.family {
        FamilyTag::G8 { .. } => MatrixElement::new(
            &gens.generators[0].mat * &gens.generators[1].mat * &gens.generators[2].mat,
        ),
        _ => Err(Error::Parameter(
            "A = R1 R2 R3 is defined for the R^8 family only".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_dist, orth_deviation};

    #[test]
    fn g3_rejects_even_or_small_m() {
        assert!(build_g3_generators(4).is_err());
        assert!(build_g3_generators(1).is_err());
        assert!(build_g3_generators(3).is_ok());
    }

    #[test]
    fn g3_generators_include_right_i_pair() {
        let gens = build_g3_generators(3).unwrap();
        let m =
            quaternion_pair_to_matrix(pair([1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]).unwrap())
                .unwrap();
        assert!(gens
            .generators
            .iter()
            .any(|g| max_dist(&g.mat, &m.mat) < 1e-14));
    }

    #[test]
    fn g8_rejects_l_zero() {
        assert!(build_g8_generators(0).is_err());
    }

    #[test]
    fn g8_generators_are_orthogonal() {
        let gens = build_g8_generators(1).unwrap();
        for g in &gens.generators {
            assert!(orth_deviation(&g.mat) < 1e-12);
            assert!((g.mat.determinant() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn r2_squared_is_split_sign_block() {
        let gens = build_g8_generators(1).unwrap();
        let r2 = &gens.generators[1].mat;
        let sq = r2 * r2;
        let mut expected = DMatrix::identity(8, 8);
        for i in 4..8 {
            expected[(i, i)] = -1.0;
        }
        assert!(max_dist(&sq, &expected) < 1e-12);
    }

    #[test]
    fn a_eighth_power_matches_r3_eighth_power() {
        let gens = build_g8_generators(1).unwrap();
        let a = g8_gen_a(&gens).unwrap().mat;
        let r3 = &gens.generators[2].mat;
        let mut a8 = DMatrix::identity(8, 8);
        let mut r38 = DMatrix::identity(8, 8);
        for _ in 0..8 {
            a8 = &a8 * &a;
            r38 = &r38 * r3;
        }
        assert!(max_dist(&a8, &r38) < 1e-12);
    }
}
