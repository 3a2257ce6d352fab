//! Small dense linear-algebra helpers on top of nalgebra.
//!
//! Rank decisions use singular values against [`crate::EPS_RANK`] and assert
//! a spectral gap of at least [`crate::RANK_GAP`] between the smallest
//! accepted and the largest rejected singular value; an ambiguous spectrum
//! aborts instead of guessing.

use nalgebra::{DMatrix, DVector};

use crate::{Error, Result, EPS_RANK, RANK_GAP};

/// Pads a wide matrix with zero rows so the thin SVD exposes the full set of
/// right singular vectors.
fn squared_up(m: &DMatrix<f64>) -> DMatrix<f64> {
    if m.nrows() >= m.ncols() {
        return m.clone();
    }
    let mut out = DMatrix::zeros(m.ncols(), m.ncols());
    out.view_mut((0, 0), (m.nrows(), m.ncols())).copy_from(m);
    out
}

fn checked_split(singular: &[f64], eps: f64) -> Result<usize> {
    let mut accepted = 0usize;
    let mut min_acc = f64::INFINITY;
    let mut max_rej = 0.0f64;
    for &s in singular {
        if s >= eps {
            accepted += 1;
            min_acc = min_acc.min(s);
        } else {
            max_rej = max_rej.max(s);
        }
    }
    if accepted > 0 && max_rej > 0.0 && min_acc / max_rej < RANK_GAP {
        return Err(Error::RankGap {
            above: min_acc,
            below: max_rej,
        });
    }
    Ok(accepted)
}

/// Rank of `m` by singular values, gap-audited.
pub fn rank(m: &DMatrix<f64>, eps: f64) -> Result<usize> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(0);
    }
    let sv = m.clone().singular_values();
    checked_split(sv.as_slice(), eps)
}

/// Orthonormal basis of the nullspace of `m` (right singular vectors whose
/// singular value falls below `eps`), gap-audited.
pub fn nullspace(m: &DMatrix<f64>, eps: f64) -> Result<Vec<DVector<f64>>> {
    let n = m.ncols();
    if n == 0 {
        return Ok(Vec::new());
    }
    let sq = squared_up(m);
    let svd = sq.svd(false, true);
    let v_t = svd.v_t.as_ref().expect("SVD with v_t requested");
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let accepted = checked_split(&sv, eps)?;
    let _ = accepted;
    let mut basis = Vec::new();
    for (i, &s) in sv.iter().enumerate() {
        if s < eps {
            basis.push(v_t.row(i).transpose());
        }
    }
    // Rows of v_t beyond the number of singular values cannot occur since the
    // matrix was squared up.
    Ok(basis)
}

/// Reduced row echelon form of the row span of `rows`; rows of the result are
/// a canonical (basis-independent) spanning set.
pub fn rref_rows(rows: &[DVector<f64>], n: usize, eps: f64) -> Vec<DVector<f64>> {
    let mut m: Vec<DVector<f64>> = rows.to_vec();
    let mut pivot_row = 0usize;
    for col in 0..n {
        let Some(best) = (pivot_row..m.len())
            .max_by(|&a, &b| m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap())
        else {
            break;
        };
        if m[best][col].abs() <= eps {
            continue;
        }
        m.swap(pivot_row, best);
        let p = m[pivot_row][col];
        m[pivot_row] /= p;
        for r in 0..m.len() {
            if r != pivot_row {
                let f = m[r][col];
                if f != 0.0 {
                    let sub = &m[pivot_row] * f;
                    m[r] -= sub;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == m.len() {
            break;
        }
    }
    m.truncate(pivot_row);
    m
}

/// Gram-Schmidt orthonormalization in the given order; vectors whose residual
/// norm falls below `eps` are dropped.
pub fn gram_schmidt(vecs: &[DVector<f64>], eps: f64) -> Vec<DVector<f64>> {
    let mut basis: Vec<DVector<f64>> = Vec::new();
    for v in vecs {
        let mut w = v.clone();
        for b in &basis {
            let c = b.dot(&w);
            w -= b * c;
        }
        // second pass for numerical stability
        for b in &basis {
            let c = b.dot(&w);
            w -= b * c;
        }
        let n = w.norm();
        if n > eps {
            basis.push(w / n);
        }
    }
    basis
}

/// Canonical orthonormal basis of the span of `vecs`: RREF for a
/// basis-independent spanning set, then Gram-Schmidt, then a sign convention
/// (largest-in-magnitude leading entry positive).
pub fn canonical_orthonormal_basis(vecs: &[DVector<f64>], n: usize) -> Vec<DVector<f64>> {
    let rref = rref_rows(vecs, n, EPS_RANK);
    let mut basis = gram_schmidt(&rref, EPS_RANK);
    for b in &mut basis {
        let lead = b.iter().find(|x| x.abs() > EPS_RANK);
        if let Some(&l) = lead {
            if l < 0.0 {
                *b = -&*b;
            }
        }
    }
    basis
}

/// Independent columns among `vecs` by sequential Gram-Schmidt acceptance;
/// returns the indices of the accepted vectors.
pub fn independent_indices(vecs: &[DVector<f64>], eps_rel: f64) -> Vec<usize> {
    let mut basis: Vec<DVector<f64>> = Vec::new();
    let mut picked = Vec::new();
    for (i, v) in vecs.iter().enumerate() {
        let scale = v.norm();
        if scale == 0.0 {
            continue;
        }
        let mut w = v.clone();
        for b in &basis {
            let c = b.dot(&w);
            w -= b * c;
        }
        for b in &basis {
            let c = b.dot(&w);
            w -= b * c;
        }
        let n = w.norm();
        if n > eps_rel * scale {
            basis.push(w / n);
            picked.push(i);
        }
    }
    picked
}

/// Orthogonality of a square matrix: max |g^T g - I| entry.
pub fn orth_deviation(g: &DMatrix<f64>) -> f64 {
    let n = g.nrows();
    let gtg = g.transpose() * g;
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((gtg[(i, j)] - target).abs());
        }
    }
    dev
}

/// Max-norm distance between two matrices.
pub fn max_dist(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    let mut d = 0.0f64;
    for (x, y) in a.iter().zip(b.iter()) {
        d = d.max((x - y).abs());
    }
    d
}

/// Maximum absolute entry of `a - I`.
pub fn dist_from_identity(a: &DMatrix<f64>) -> f64 {
    let mut d = 0.0f64;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            d = d.max((a[(i, j)] - target).abs());
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_projection() {
        // diag(1, 1, 0, 0) has a 2-dimensional nullspace
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0, 0.0, 0.0]));
        let ns = nullspace(&m, EPS_RANK).unwrap();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!((m.clone() * v).norm() < 1e-12);
        }
    }

    #[test]
    fn nullspace_of_wide_matrix() {
        let m = DMatrix::from_row_slice(1, 4, &[1.0, 1.0, 0.0, 0.0]);
        let ns = nullspace(&m, EPS_RANK).unwrap();
        assert_eq!(ns.len(), 3);
    }

    #[test]
    fn canonical_basis_is_basis_independent() {
        let v1 = DVector::from_vec(vec![1.0, 0.0, 0.0, 1.0]);
        let v2 = DVector::from_vec(vec![0.0, 1.0, 1.0, 0.0]);
        let a = canonical_orthonormal_basis(&[v1.clone(), v2.clone()], 4);
        let mixed = vec![&v1 * 0.3 + &v2 * 0.7, &v1 * -2.0 + &v2 * 0.1];
        let b = canonical_orthonormal_basis(&mixed, 4);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b.iter()) {
            assert!((x - y).norm() < 1e-9, "{x} vs {y}");
        }
    }

    #[test]
    fn rank_gap_detected() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![1e-6, 5e-8]));
        assert!(matches!(rank(&m, EPS_RANK), Err(Error::RankGap { .. })));
        let clean = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 5e-12]));
        assert_eq!(rank(&clean, EPS_RANK).unwrap(), 1);
    }
}
