//! Unit quaternions and quaternion pairs acting on R^4.
//!
//! A pair `[a, b]` of unit quaternions acts on a quaternion `v` by
//! `v -> conj(a) * v * b`, an element of SO(4) in the basis `(1, i, j, k)`.
//! `[a, b]` and `[-a, -b]` act identically, so pairs are normalized by the
//! sign of the first nonzero component of the left factor.

use nalgebra::DMatrix;

use crate::matgroup::MatrixElement;
use crate::{Error, Result, EPS_NORM};

/// A quaternion `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    /// The complex number `cos t + sin t * i` as a quaternion.
    pub fn from_angle(t: f64) -> Self {
        Quaternion::new(t.cos(), t.sin(), 0.0, 0.0)
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm(self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }

    pub fn coords(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    fn basis(c: usize) -> Quaternion {
        match c {
            0 => Quaternion::ONE,
            1 => Quaternion::I,
            2 => Quaternion::J,
            _ => Quaternion::K,
        }
    }
}

/// A pair of unit quaternions acting by `v -> conj(left) * v * right`.
#[derive(Debug, Clone, Copy)]
pub struct QuaternionPair {
    pub left: Quaternion,
    pub right: Quaternion,
}

impl QuaternionPair {
    /// Builds a pair, checking unit norms and normalizing the overall sign by
    /// the first nonzero component of the left factor.
    pub fn new(left: Quaternion, right: Quaternion) -> Result<Self> {
        for (side, q) in [("left", left), ("right", right)] {
            let dev = (q.norm() - 1.0).abs();
            if dev > EPS_NORM {
                return Err(Error::Parameter(format!(
                    "{side} quaternion has norm {:.17e}, not a unit quaternion (deviation {dev:.3e})",
                    q.norm()
                )));
            }
        }
        let lead = [left.w, left.x, left.y, left.z]
            .into_iter()
            .find(|c| c.abs() > EPS_NORM)
            .unwrap_or(1.0);
        let s = if lead < 0.0 { -1.0 } else { 1.0 };
        Ok(QuaternionPair {
            left: Quaternion::new(s * left.w, s * left.x, s * left.y, s * left.z),
            right: Quaternion::new(s * right.w, s * right.x, s * right.y, s * right.z),
        })
    }
}

/// The 4x4 matrix of `v -> conj(left) * v * right` in the basis `(1, i, j, k)`.
pub fn quaternion_pair_to_matrix(p: QuaternionPair) -> Result<MatrixElement> {
    let mut m = DMatrix::zeros(4, 4);
    for c in 0..4 {
        let image = p.left.conj().mul(Quaternion::basis(c)).mul(p.right);
        let col = image.coords();
        for r in 0..4 {
            m[(r, c)] = col[r];
        }
    }
    MatrixElement::new(m)
}

/// Convenience constructor from coordinate arrays.
pub fn pair(left: [f64; 4], right: [f64; 4]) -> Result<QuaternionPair> {
    QuaternionPair::new(
        Quaternion::new(left[0], left[1], left[2], left[3]),
        Quaternion::new(right[0], right[1], right[2], right[3]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(p: QuaternionPair) -> DMatrix<f64> {
        quaternion_pair_to_matrix(p).unwrap().mat
    }

    #[test]
    fn identity_pair_gives_identity() {
        let p = QuaternionPair::new(Quaternion::ONE, Quaternion::ONE).unwrap();
        let m = mat(p);
        assert!(crate::linalg::dist_from_identity(&m) < 1e-15);
    }

    #[test]
    fn ji_pair_reverses_coordinates() {
        // [j,i] sends (v1,v2,v3,v4) to (v4,v3,v2,v1)
        let p = QuaternionPair::new(Quaternion::J, Quaternion::I).unwrap();
        let m = mat(p);
        let expected = DMatrix::from_row_slice(
            4,
            4,
            &[
                0.0, 0.0, 0.0, 1.0, //
                0.0, 0.0, 1.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                1.0, 0.0, 0.0, 0.0,
            ],
        );
        assert!(crate::linalg::max_dist(&m, &expected) < 1e-15);
    }

    #[test]
    fn jk_pair_matches_signed_swap() {
        // [j,k] sends (v1,v2,v3,v4) to (-v2,-v1,v4,v3)
        let p = QuaternionPair::new(Quaternion::J, Quaternion::K).unwrap();
        let m = mat(p);
        let expected = DMatrix::from_row_slice(
            4,
            4,
            &[
                0.0, -1.0, 0.0, 0.0, //
                -1.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0, //
                0.0, 0.0, 1.0, 0.0,
            ],
        );
        assert!(crate::linalg::max_dist(&m, &expected) < 1e-15);
    }

    #[test]
    fn non_unit_rejected_with_norm_diagnostic() {
        let q = Quaternion::new(1.1, 0.0, 0.0, 0.0);
        let err = QuaternionPair::new(q, Quaternion::ONE).unwrap_err();
        assert!(err.to_string().contains("norm"));
    }

    #[test]
    fn sign_normalization_identifies_antipodal_pairs() {
        let a = QuaternionPair::new(Quaternion::J, Quaternion::I).unwrap();
        let neg_j = Quaternion::new(0.0, 0.0, -1.0, 0.0);
        let neg_i = Quaternion::new(0.0, -1.0, 0.0, 0.0);
        let b = QuaternionPair::new(neg_j, neg_i).unwrap();
        assert!(crate::linalg::max_dist(&mat(a), &mat(b)) < 1e-15);
    }
}
