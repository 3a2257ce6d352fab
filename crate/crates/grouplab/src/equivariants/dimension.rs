//! Two independent routes to `dim E_G^d`, the space of homogeneous degree-d
//! equivariant polynomial maps:
//!
//! * the character formula `(1/|G|) sum_g tr(g) tr(Sym^d g)`, with
//!   `tr(Sym^d g)` from power sums via the complete-homogeneous recursion;
//! * the averaging (Reynolds) projector applied to every monomial basis map,
//!   followed by an orthonormalization rank count.
//!
//! The two implementations share no code path; their agreement is one of the
//! standing cross-checks.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::collections::HashMap;

use super::{monomials_of_degree, Monomial, Poly, PolyMap};
use crate::matgroup::FiniteMatrixGroup;
use crate::{par, Error, Result, EPS_EQ};

/// Monomial-component budget for the averaging projector (allows degree 6 in
/// four variables and degree 3 in eight).
const REYNOLDS_BUDGET: u64 = 16384;

/// `dim E_G^d` by character averaging. The raw average must sit within
/// 1e-6 of an integer.
pub fn equivariant_dimension(group: &FiniteMatrixGroup, d: usize) -> Result<usize> {
    let contributions: Vec<f64> = par::map_range(group.order(), |i| {
        let g = group.element(i);
        let chi = g.trace();
        // power sums p_i = tr(g^i), complete homogeneous h_m via
        // h_m = (1/m) sum_{i=1..m} p_i h_{m-i}
        let mut p = Vec::with_capacity(d + 1);
        let mut pow = g.clone();
        for _ in 0..d {
            p.push(pow.trace());
            pow = &pow * g;
        }
        let mut h = vec![0.0f64; d + 1];
        h[0] = 1.0;
        for m in 1..=d {
            let mut acc = 0.0;
            for i in 1..=m {
                acc += p[i - 1] * h[m - i];
            }
            h[m] = acc / m as f64;
        }
        chi * h[d]
    });
    let total: f64 = contributions.iter().sum();
    let avg = total / group.order() as f64;
    let rounded = avg.round();
    if (avg - rounded).abs() > 1e-6 {
        return Err(Error::Tolerance {
            what: format!("character average {avg} is not an integer"),
            deviation: (avg - rounded).abs(),
        });
    }
    if rounded < 0.0 {
        return Err(Error::Internal("negative equivariant dimension".into()));
    }
    Ok(rounded as usize)
}

/// Indexed monomial list with a multiplication-by-variable table.
struct MonoTable {
    monos: Vec<Monomial>,
    index: HashMap<Vec<u8>, usize>,
}

impl MonoTable {
    fn new(n: usize, d: usize) -> MonoTable {
        let monos = monomials_of_degree(n, d);
        let index = monos
            .iter()
            .enumerate()
            .map(|(i, m)| (m.0.clone(), i))
            .collect();
        MonoTable { monos, index }
    }

    fn len(&self) -> usize {
        self.monos.len()
    }
}

/// Dense expansion coefficients of `m(g v)` over degree-d monomials, for all
/// degree-d monomials `m`: a `M x M` row-major matrix.
fn substitution_matrix(g: &DMatrix<f64>, tables: &[MonoTable], d: usize) -> Vec<Vec<f64>> {
    let n = g.nrows();
    if d == 0 {
        return vec![vec![1.0]];
    }
    // degree 1: the row of monomial v_i holds the coefficients of (g v)_i,
    // placed at the graded-lex positions of the unit monomials
    let mut prev: Vec<Vec<f64>> = (0..tables[1].len())
        .map(|row| {
            let var = tables[1].monos[row].0.iter().position(|&e| e == 1).unwrap();
            let mut out = vec![0.0f64; tables[1].len()];
            for j in 0..n {
                let mut e = vec![0u8; n];
                e[j] = 1;
                out[tables[1].index[&e]] = g[(var, j)];
            }
            out
        })
        .collect();
    for deg in 2..=d {
        let cur_table = &tables[deg];
        let prev_table = &tables[deg - 1];
        let mut cur = vec![vec![0.0f64; cur_table.len()]; cur_table.len()];
        for (row, mono) in cur_table.monos.iter().enumerate() {
            // split m = v_i * m' with i the first variable present
            let i = mono.0.iter().position(|&e| e > 0).unwrap();
            let mut rest = mono.0.clone();
            rest[i] -= 1;
            let prev_row = &prev[prev_table.index[&rest]];
            // multiply the degree-(deg-1) expansion by (g v)_i
            let out = &mut cur[row];
            for (pm, &pc) in prev_table.monos.iter().zip(prev_row.iter()) {
                if pc == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let gij = g[(i, j)];
                    if gij == 0.0 {
                        continue;
                    }
                    let mut e = pm.0.clone();
                    e[j] += 1;
                    out[cur_table.index[&e]] += pc * gij;
                }
            }
        }
        prev = cur;
    }
    prev
}

/// A spanning set of homogeneous degree-d equivariant maps.
#[derive(Debug, Clone)]
pub struct EquivariantBasis {
    pub degree: usize,
    pub maps: Vec<PolyMap>,
}

/// Averaging projector applied to a single polynomial map:
/// `p -> (1/|G|) sum_g g^-1 p(g v)`.
pub fn reynolds_average(group: &FiniteMatrixGroup, p: &PolyMap) -> PolyMap {
    let terms: Vec<PolyMap> = par::map_range(group.order(), |i| p.conjugate_by(group.element(i)));
    let mut acc = PolyMap::zero(p.nvars, p.components.len());
    for t in &terms {
        acc = acc.add(t);
    }
    acc.scale(1.0 / group.order() as f64)
}

/// Applies the averaging projector to every monomial basis map of degree `d`
/// and returns an independent spanning set of the image (the equivariant
/// space), leading-coefficient normalized. Construction checks the
/// equivariance of every returned map at 50 random points per generator.
pub fn reynolds_equivariant_basis(group: &FiniteMatrixGroup, d: usize) -> Result<EquivariantBasis> {
    let n = group.dim;
    if (n as u64).pow(d as u32 + 1) > REYNOLDS_BUDGET {
        return Err(Error::Parameter(format!(
            "degree {d} in dimension {n} exceeds the monomial budget"
        )));
    }
    if d == 0 {
        return Err(Error::Parameter("degree must be at least 1".into()));
    }
    let tables: Vec<MonoTable> = (0..=d).map(|e| MonoTable::new(n, e)).collect();
    let m_count = tables[d].len();

    // substitution matrices for every element, in element order
    let subs: Vec<Vec<Vec<f64>>> = par::map_range(group.order(), |i| {
        substitution_matrix(group.element(i), &tables, d)
    });

    // averaged coefficient rows: row (c, m) holds the projector image of the
    // basis map e_c * m, flattened over (r, m')
    let order = group.order();
    let rows: Vec<Vec<f64>> = par::map_range(n * m_count, |row_id| {
        let c = row_id / m_count;
        let m = row_id % m_count;
        let mut row = vec![0.0f64; n * m_count];
        for gi in 0..order {
            let g = group.element(gi);
            let s_row = &subs[gi][m];
            for r in 0..n {
                // (g^-1)_{r c} = g_{c r}
                let w = g[(c, r)];
                if w == 0.0 {
                    continue;
                }
                let out = &mut row[r * m_count..(r + 1) * m_count];
                for (o, s) in out.iter_mut().zip(s_row.iter()) {
                    *o += w * s;
                }
            }
        }
        for v in &mut row {
            *v /= order as f64;
        }
        row
    });

    // independent spanning set by sequential Gram-Schmidt acceptance
    let dim_flat = n * m_count;
    let mut basis_vecs: Vec<Vec<f64>> = Vec::new();
    let mut kept: Vec<Vec<f64>> = Vec::new();
    for row in &rows {
        let norm0 = l2(row);
        if norm0 < 1e-9 {
            continue;
        }
        let mut w = row.clone();
        for b in &basis_vecs {
            let c = dot(b, &w);
            axpy(&mut w, b, -c);
        }
        for b in &basis_vecs {
            let c = dot(b, &w);
            axpy(&mut w, b, -c);
        }
        let res = l2(&w);
        if res > 1e-7 {
            for v in &mut w {
                *v /= res;
            }
            basis_vecs.push(w.clone());
            kept.push(w);
        }
    }
    let _ = dim_flat;

    // rebuild polynomial maps from the orthonormal vectors, normalize
    let monos = &tables[d].monos;
    let mut maps = Vec::new();
    for vec in kept {
        let comps: Vec<Poly> = (0..n)
            .map(|r| {
                let terms: Vec<(Monomial, f64)> = monos
                    .iter()
                    .enumerate()
                    .map(|(mi, m)| (m.clone(), vec[r * m_count + mi]))
                    .collect();
                Poly::from_terms(n, terms)
            })
            .collect();
        maps.push(
            PolyMap {
                nvars: n,
                components: comps,
            }
            .normalize_leading(),
        );
    }

    // equivariance audit at 50 random points per generator
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let points: Vec<Vec<f64>> = (0..50)
        .map(|_| (0..n).map(|_| StandardNormal.sample(&mut rng)).collect())
        .collect();
    for (mi, map) in maps.iter().enumerate() {
        if !map.is_homogeneous(d) {
            return Err(Error::Internal(format!(
                "basis map {mi} is not homogeneous of degree {d}"
            )));
        }
        for &gi in group.generator_indices() {
            let dev = map.equivariance_deviation(group.element(gi), &points);
            if dev > EPS_EQ * 100.0 {
                return Err(Error::Internal(format!(
                    "averaged map {mi} fails equivariance by {dev:.3e}"
                )));
            }
        }
    }
    Ok(EquivariantBasis { degree: d, maps })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

fn l2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(y: &mut [f64], x: &[f64], a: f64) {
    for (yi, xi) in y.iter_mut().zip(x.iter()) {
        *yi += a * xi;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::{build_g3_generators, close_group, close_matrices, FamilyTag};

    fn g3_3() -> FiniteMatrixGroup {
        close_group(&build_g3_generators(3).unwrap()).unwrap()
    }

    #[test]
    fn linear_dimension_is_one_for_absolutely_irreducible_groups() {
        assert_eq!(equivariant_dimension(&g3_3(), 1).unwrap(), 1);
    }

    #[test]
    fn even_degrees_vanish_when_minus_identity_is_present() {
        let g = g3_3();
        assert_eq!(equivariant_dimension(&g, 2).unwrap(), 0);
        assert_eq!(equivariant_dimension(&g, 4).unwrap(), 0);
    }

    #[test]
    fn cubic_dimension_is_three() {
        assert_eq!(equivariant_dimension(&g3_3(), 3).unwrap(), 3);
    }

    #[test]
    fn trivial_group_linear_maps_have_dimension_four() {
        let g = close_matrices(2, FamilyTag::Custom, &[DMatrix::identity(2, 2)], 2).unwrap();
        assert_eq!(equivariant_dimension(&g, 1).unwrap(), 4);
        let basis = reynolds_equivariant_basis(&g, 1).unwrap();
        assert_eq!(basis.maps.len(), 4);
    }

    #[test]
    fn reynolds_rank_matches_character_dimension_on_g3() {
        let g = g3_3();
        for d in 1..=4 {
            let dim = equivariant_dimension(&g, d).unwrap();
            let basis = reynolds_equivariant_basis(&g, d).unwrap();
            assert_eq!(basis.maps.len(), dim, "degree {d}");
        }
    }

    #[test]
    fn reynolds_projector_is_idempotent_on_equivariant_maps() {
        let g = g3_3();
        let basis = reynolds_equivariant_basis(&g, 3).unwrap();
        for map in &basis.maps {
            let avg = reynolds_average(&g, map);
            let diff: f64 = avg
                .sub(map)
                .coeff_vector(3)
                .iter()
                .map(|c| c.abs())
                .fold(0.0, f64::max);
            assert!(diff < 1e-10, "projector moved an equivariant map by {diff}");
        }
    }

    #[test]
    fn monomial_budget_is_enforced() {
        use crate::matgroup::build_g8_generators;
        let g8 = crate::matgroup::close_group(&build_g8_generators(1).unwrap()).unwrap();
        assert!(matches!(
            reynolds_equivariant_basis(&g8, 4),
            Err(crate::Error::Parameter(_))
        ));
        let g4 = g3_3();
        assert!(reynolds_equivariant_basis(&g4, 6).is_ok());
        assert!(reynolds_equivariant_basis(&g4, 7).is_err());
    }

    #[test]
    fn substitution_matrix_expands_correctly() {
        // g = [[1,1],[0,1]]-ish is not orthogonal; use the swap instead and
        // check (v0 v1)(g v) = v0 v1
        let g = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let tables: Vec<MonoTable> = (0..=2).map(|e| MonoTable::new(2, e)).collect();
        let s = substitution_matrix(&g, &tables, 2);
        // monomials of degree 2 in graded-lex: v1^2, v0 v1, v0^2
        // row of v0^2 (index 2) must be v1^2 (index 0)
        assert_eq!(s[2], vec![1.0, 0.0, 0.0]);
        assert_eq!(s[1], vec![0.0, 1.0, 0.0]);
    }
}
