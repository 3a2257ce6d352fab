//! Isotropy types: the lattice method (meet-closure of element fixed spaces
//! with pointwise stabilizers) and an independent random-stabilizer oracle.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{fixed_subspace, Subspace};
use crate::matgroup::FiniteMatrixGroup;
use crate::quant::Quantizer;
use crate::{par, Error, Result, EPS_ORTH};

/// A conjugacy class of isotropy subgroups.
#[derive(Debug, Clone)]
pub struct IsotropyType {
    /// Canonical (lexicographically least conjugate) sorted element indices.
    pub representative: Vec<usize>,
    pub subgroup_order: usize,
    pub fixed_dim: usize,
    /// Number of distinct subgroups in the class.
    pub conjugates: usize,
    /// A point whose stabilizer is exactly the representative.
    pub witness: DVector<f64>,
}

/// Flattened row-major copies of the group elements for fast scans.
struct FlatElements {
    n: usize,
    data: Vec<Vec<f64>>,
}

impl FlatElements {
    fn new(group: &FiniteMatrixGroup) -> FlatElements {
        let n = group.dim;
        let data = (0..group.order())
            .map(|i| {
                let m = group.element(i);
                (0..n)
                    .flat_map(|r| (0..n).map(move |c| m[(r, c)]))
                    .collect()
            })
            .collect();
        FlatElements { n, data }
    }

    /// Does element `i` fix `v` within `tol` (max-norm, scaled)?
    fn fixes(&self, i: usize, v: &[f64], tol: f64) -> bool {
        let m = &self.data[i];
        let n = self.n;
        for r in 0..n {
            let mut acc = 0.0;
            let row = &m[r * n..(r + 1) * n];
            for c in 0..n {
                acc += row[c] * v[c];
            }
            if (acc - v[r]).abs() > tol {
                return false;
            }
        }
        true
    }
}

/// The stabilizer `{g : g v = v}` of a point, by exhaustive scan.
pub fn stabilizer_of(group: &FiniteMatrixGroup, v: &DVector<f64>) -> Vec<usize> {
    let flat = FlatElements::new(group);
    stabilizer_flat(&flat, group.order(), v.as_slice())
}

fn stabilizer_flat(flat: &FlatElements, order: usize, v: &[f64]) -> Vec<usize> {
    let scale = v.iter().map(|x| x.abs()).fold(0.0f64, f64::max).max(1.0);
    let tol = EPS_ORTH * scale;
    (0..order).filter(|&i| flat.fixes(i, v, tol)).collect()
}

/// Nonzero fixed spaces of single elements, deduplicated.
fn element_fixed_spaces(group: &FiniteMatrixGroup) -> Result<Vec<Subspace>> {
    let spaces: Vec<Result<Subspace>> =
        par::map_range(group.order(), |i| fixed_subspace(group, &[i]));
    let mut quant = Quantizer::new(1e-8, 1e-5);
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut out = Vec::new();
    for s in spaces {
        let s = s?;
        if s.dim() == 0 {
            continue;
        }
        let key = subspace_key(&s, &mut quant)?;
        if seen.insert(key) {
            out.push(s);
        }
    }
    Ok(out)
}

fn subspace_key(s: &Subspace, quant: &mut Quantizer) -> Result<Vec<i64>> {
    let p = s.projector();
    quant.key_insert_slice(p.as_slice())
}

/// Meet-closure of the element fixed spaces under intersection.
fn meet_closure(group: &FiniteMatrixGroup) -> Result<Vec<Subspace>> {
    let mut quant = Quantizer::new(1e-8, 1e-5);
    let mut spaces = element_fixed_spaces(group)?;
    let mut keys: BTreeSet<Vec<i64>> = BTreeSet::new();
    for s in &spaces {
        keys.insert(subspace_key(s, &mut quant)?);
    }
    let mut frontier: Vec<usize> = (0..spaces.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &fi in &frontier {
            for si in 0..spaces.len() {
                let meet = spaces[fi].intersect(&spaces[si])?;
                if meet.dim() == 0 {
                    continue;
                }
                let key = subspace_key(&meet, &mut quant)?;
                if keys.insert(key) {
                    next.push(spaces.len());
                    spaces.push(meet);
                }
            }
        }
        frontier = next;
    }
    Ok(spaces)
}

/// Pointwise stabilizer of a subspace: elements fixing every basis vector.
pub fn pointwise_stabilizer(group: &FiniteMatrixGroup, w: &Subspace) -> Vec<usize> {
    (0..group.order())
        .filter(|&i| {
            let g = group.element(i);
            w.basis().iter().all(|b| {
                let gb = g * b;
                (gb - b).norm() < EPS_ORTH
            })
        })
        .collect()
}

/// A seeded generic point of a subspace.
fn generic_point(w: &Subspace, rng: &mut ChaCha8Rng) -> DVector<f64> {
    let mut v = DVector::zeros(w.ambient);
    for b in w.basis() {
        let c: f64 = StandardNormal.sample(rng);
        v += b * c;
    }
    let n = v.norm();
    if n > 1e-12 {
        v /= n;
    }
    v
}

/// All nontrivial isotropy types of the group action, up to conjugacy, by
/// the lattice method. The trivial stabilizer and the full group are
/// excluded. Each type carries a verified witness point.
pub fn isotropy_types(group: &FiniteMatrixGroup, seed: u64) -> Result<Vec<IsotropyType>> {
    let lattice = meet_closure(group)?;
    let full: Vec<usize> = (0..group.order()).collect();

    // stabilizers, deduplicated exactly
    let mut stabs: BTreeSet<Vec<usize>> = BTreeSet::new();
    for w in &lattice {
        let s = pointwise_stabilizer(group, w);
        if s.len() <= 1 || s == full {
            continue;
        }
        stabs.insert(s);
    }

    // group into conjugacy classes
    let mut classes: BTreeMap<Vec<usize>, BTreeSet<Vec<usize>>> = BTreeMap::new();
    for s in &stabs {
        let canon = group.conjugacy_canonical(s);
        classes.entry(canon).or_default().insert(s.clone());
    }

    let flat = FlatElements::new(group);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut types = Vec::new();
    for (canon, members) in classes {
        let fix = fixed_subspace(group, &canon)?;
        // count all conjugates, not only the ones discovered in the lattice
        let mut all_conjugates: BTreeSet<Vec<usize>> = members;
        for g in 0..group.order() {
            all_conjugates.insert(group.conjugate_set(&canon, g));
        }
        let mut witness = None;
        for _ in 0..64 {
            let w = generic_point(&fix, &mut rng);
            let stab = stabilizer_flat(&flat, group.order(), w.as_slice());
            if stab == canon {
                witness = Some(w);
                break;
            }
        }
        let witness = witness.ok_or_else(|| {
            Error::Internal(format!(
                "no generic witness found for a stabilizer of order {}",
                canon.len()
            ))
        })?;
        types.push(IsotropyType {
            subgroup_order: canon.len(),
            fixed_dim: fix.dim(),
            conjugates: all_conjugates.len(),
            representative: canon,
            witness,
        });
    }
    types.sort_by(|a, b| {
        (a.fixed_dim, a.subgroup_order, &a.representative).cmp(&(
            b.fixed_dim,
            b.subgroup_order,
            &b.representative,
        ))
    });
    Ok(types)
}

/// Independent oracle: stabilizers of randomly sampled directions. Samples
/// are drawn from the ambient sphere and from random points of the fixed
/// spaces of random single elements, pairs, and triples, so that every
/// isotropy type generated by up to three elements is seen. Returns the
/// canonical conjugacy representatives of all nontrivial stabilizers found.
pub fn random_stabilizer_oracle(
    group: &FiniteMatrixGroup,
    samples: usize,
    seed: u64,
) -> Result<BTreeSet<Vec<usize>>> {
    let n = group.dim;
    let order = group.order();
    let full: Vec<usize> = (0..order).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // sample points sequentially (deterministic), scan stabilizers in parallel
    let mut points: Vec<DVector<f64>> = Vec::with_capacity(samples);
    let mut scratch: Vec<usize> = Vec::new();
    for i in 0..samples {
        let kind = i % 4;
        if kind == 0 {
            let v = DVector::from_fn(n, |_, _| StandardNormal.sample(&mut rng));
            let norm = v.norm();
            points.push(if norm > 1e-12 { v / norm } else { v });
            continue;
        }
        scratch.clear();
        for _ in 0..kind {
            scratch.push(rng.random_range(0..order));
        }
        let fix = fixed_subspace(group, &scratch)?;
        if fix.dim() == 0 {
            let v = DVector::from_fn(n, |_, _| StandardNormal.sample(&mut rng));
            let norm = v.norm();
            points.push(if norm > 1e-12 { v / norm } else { v });
        } else {
            points.push(generic_point(&fix, &mut rng));
        }
    }

    let flat = FlatElements::new(group);
    let stabs: Vec<Vec<usize>> =
        par::map_collect(&points, |p| stabilizer_flat(&flat, order, p.as_slice()));

    let mut distinct: BTreeSet<Vec<usize>> = BTreeSet::new();
    for s in stabs {
        if s.len() <= 1 || s == full {
            continue;
        }
        distinct.insert(s);
    }
    let mut canon: BTreeSet<Vec<usize>> = BTreeSet::new();
    for s in distinct {
        canon.insert(group.conjugacy_canonical(&s));
    }
    Ok(canon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::{build_g3_generators, close_group};

    #[test]
    fn g3_has_three_nontrivial_types_of_fixed_dim_two() {
        let g = close_group(&build_g3_generators(3).unwrap()).unwrap();
        let types = isotropy_types(&g, 0).unwrap();
        assert_eq!(
            types.len(),
            3,
            "types: {:?}",
            types
                .iter()
                .map(|t| (t.subgroup_order, t.fixed_dim))
                .collect::<Vec<_>>()
        );
        for t in &types {
            assert_eq!(t.fixed_dim, 2);
        }
    }

    #[test]
    fn witnesses_have_exactly_the_representative_stabilizer() {
        let g = close_group(&build_g3_generators(3).unwrap()).unwrap();
        for t in isotropy_types(&g, 0).unwrap() {
            assert_eq!(stabilizer_of(&g, &t.witness), t.representative);
        }
    }

    #[test]
    fn conjugation_preserves_fixed_dim() {
        let g = close_group(&build_g3_generators(3).unwrap()).unwrap();
        for t in isotropy_types(&g, 0).unwrap() {
            for gi in [1usize, 7, 20] {
                let conj = g.conjugate_set(&t.representative, gi % g.order());
                let f = fixed_subspace(&g, &conj).unwrap();
                assert_eq!(f.dim(), t.fixed_dim);
            }
        }
    }

    #[test]
    fn g8_type_structure_is_frozen() {
        // computed by the lattice method and confirmed by the sampling
        // oracle: three order-4 classes with two-dimensional fixed spaces,
        // the two-member class of the split involution pair, and a larger
        // class of swap involutions with four-dimensional fixed spaces
        let g = crate::matgroup::close_group(&crate::matgroup::build_g8_generators(1).unwrap())
            .unwrap();
        let types = isotropy_types(&g, 0).unwrap();
        let profile: Vec<(usize, usize, usize)> = types
            .iter()
            .map(|t| (t.subgroup_order, t.fixed_dim, t.conjugates))
            .collect();
        assert_eq!(
            profile,
            vec![(4, 2, 12), (4, 2, 12), (4, 2, 12), (2, 4, 2), (2, 4, 24)]
        );
    }

    #[test]
    fn oracle_agrees_with_lattice_on_g3() {
        let g = close_group(&build_g3_generators(3).unwrap()).unwrap();
        let types = isotropy_types(&g, 0).unwrap();
        let lattice_set: BTreeSet<Vec<usize>> =
            types.iter().map(|t| t.representative.clone()).collect();
        let oracle = random_stabilizer_oracle(&g, 4000, 1).unwrap();
        assert_eq!(lattice_set, oracle);
    }

    #[test]
    fn random_point_stabilizers_are_subgroups_and_known_types() {
        let g = close_group(&build_g3_generators(3).unwrap()).unwrap();
        let types = isotropy_types(&g, 0).unwrap();
        let known: BTreeSet<Vec<usize>> = types.iter().map(|t| t.representative.clone()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for i in 0..40 {
            // points in element fixed spaces hit nontrivial stabilizers
            let e = (i * 7) % g.order();
            let fix = fixed_subspace(&g, &[e]).unwrap();
            if fix.dim() == 0 {
                continue;
            }
            let p = generic_point(&fix, &mut rng);
            let stab = stabilizer_of(&g, &p);
            assert!(g.is_subgroup(&stab));
            if stab.len() > 1 && stab.len() < g.order() {
                assert!(known.contains(&g.conjugacy_canonical(&stab)));
            }
        }
    }
}
