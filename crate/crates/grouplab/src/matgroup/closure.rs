//! Breadth-first closure enumeration.
//!
//! The frontier is processed in key-sorted order and key assignment is
//! sequential, so element indices are reproducible across runs and thread
//! counts; only the matrix products of one BFS level are computed in
//! parallel. The final element list is re-sorted by canonical key.

use nalgebra::DMatrix;

use super::{ElementKey, FamilyTag, FiniteMatrixGroup, GeneratorSet};
use crate::linalg::{max_dist, orth_deviation};
use crate::quant::{Quantizer, EPS_KEY};
use crate::{par, Error, Result, EPS_ORTH};

/// Default bound on the number of elements a closure may reach.
pub const DEFAULT_CLOSURE_BOUND: usize = 1_000_000;

/// Closes a generator set under multiplication with the default bound.
pub fn close_group(gens: &GeneratorSet) -> Result<FiniteMatrixGroup> {
    close_group_bounded(gens, DEFAULT_CLOSURE_BOUND)
}

/// Closes a generator set under multiplication, failing once `bound`
/// elements are exceeded.
pub fn close_group_bounded(gens: &GeneratorSet, bound: usize) -> Result<FiniteMatrixGroup> {
    let mats: Vec<DMatrix<f64>> = gens.generators.iter().map(|g| g.mat.clone()).collect();
    close_matrices(gens.dim, gens.family.clone(), &mats, bound)
}

/// Closure of arbitrary orthogonal matrices (det +1) under multiplication.
pub fn close_matrices(
    dim: usize,
    family: FamilyTag,
    gens: &[DMatrix<f64>],
    bound: usize,
) -> Result<FiniteMatrixGroup> {
    for g in gens {
        if g.nrows() != dim || g.ncols() != dim {
            return Err(Error::Parameter("generator dimension mismatch".into()));
        }
        let dev = orth_deviation(g);
        if dev > EPS_ORTH {
            return Err(Error::Tolerance {
                what: "generator not orthogonal".into(),
                deviation: dev,
            });
        }
    }

    let mut quant = Quantizer::for_matrix_entries();
    let mut elements: Vec<DMatrix<f64>> = Vec::new();
    let mut keys: Vec<ElementKey> = Vec::new();
    let mut index: std::collections::HashMap<ElementKey, usize> = std::collections::HashMap::new();

    let insert = |m: DMatrix<f64>,
                  quant: &mut Quantizer,
                  elements: &mut Vec<DMatrix<f64>>,
                  keys: &mut Vec<ElementKey>,
                  index: &mut std::collections::HashMap<ElementKey, usize>|
     -> Result<Option<usize>> {
        let key = ElementKey(quant.key_insert_slice(m.as_slice())?);
        if let Some(&at) = index.get(&key) {
            let d = max_dist(&elements[at], &m);
            if d > EPS_KEY * 10.0 {
                return Err(Error::Tolerance {
                    what: "key collision between distant matrices".into(),
                    deviation: d,
                });
            }
            return Ok(None);
        }
        let dev = orth_deviation(&m);
        if dev > EPS_ORTH {
            return Err(Error::Tolerance {
                what: "accumulated product lost orthogonality".into(),
                deviation: dev,
            });
        }
        let at = elements.len();
        elements.push(m);
        keys.push(key.clone());
        index.insert(key, at);
        Ok(Some(at))
    };

    let identity = DMatrix::identity(dim, dim);
    insert(identity, &mut quant, &mut elements, &mut keys, &mut index)?;
    let mut frontier: Vec<usize> = vec![0];
    for g in gens {
        if let Some(i) = insert(g.clone(), &mut quant, &mut elements, &mut keys, &mut index)? {
            frontier.push(i);
        }
    }

    let gen_mats: Vec<DMatrix<f64>> = gens.to_vec();
    while !frontier.is_empty() {
        // key-sorted frontier order keeps key assignment deterministic
        frontier.sort_by(|a, b| keys[*a].cmp(&keys[*b]));
        let products: Vec<DMatrix<f64>> = par::map_collect(&frontier, |&f| {
            gen_mats
                .iter()
                .map(|g| &elements[f] * g)
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect();
        let mut next = Vec::new();
        for p in products {
            if let Some(i) = insert(p, &mut quant, &mut elements, &mut keys, &mut index)? {
                next.push(i);
                if elements.len() > bound {
                    return Err(Error::NotClosed { bound });
                }
            }
        }
        frontier = next;
    }

    // canonical ordering: sort by key
    let mut order: Vec<usize> = (0..elements.len()).collect();
    order.sort_by(|a, b| keys[*a].cmp(&keys[*b]));
    let sorted_elements: Vec<DMatrix<f64>> = order.iter().map(|&i| elements[i].clone()).collect();
    let sorted_keys: Vec<ElementKey> = order.iter().map(|&i| keys[i].clone()).collect();

    let group = FiniteMatrixGroup::from_parts(
        dim,
        family,
        sorted_elements,
        sorted_keys,
        Vec::new(),
        quant,
    )?;

    // generator positions and audits
    let mut gen_idx = Vec::new();
    for g in gens {
        let i = group
            .find(g)
            .ok_or_else(|| Error::Internal("generator missing from its own closure".into()))?;
        gen_idx.push(i);
    }
    let mut group = group;
    group.set_generators(gen_idx);

    audit(&group)?;
    Ok(group)
}

impl FiniteMatrixGroup {
    pub(crate) fn set_generators(&mut self, g: Vec<usize>) {
        self.generators = g;
    }
}

/// Build-time audit: determinants +1, inverses present, key margin below
/// half the minimum element gap.
fn audit(group: &FiniteMatrixGroup) -> Result<()> {
    for i in 0..group.order() {
        let det_dev = (group.element(i).determinant() - 1.0).abs();
        if det_dev > EPS_ORTH {
            return Err(Error::Tolerance {
                what: format!("element {i} drifted off determinant +1"),
                deviation: det_dev,
            });
        }
        let t = group.element(i).transpose();
        if group.find(&t).is_none() {
            return Err(Error::Internal(format!(
                "inverse of element {i} missing from closure"
            )));
        }
    }
    let gap = group.min_element_gap();
    if group.order() > 1 && gap / 2.0 <= EPS_KEY {
        return Err(Error::Tolerance {
            what: "minimum element gap too small for the key tolerance".into(),
            deviation: gap,
        });
    }
    Ok(())
}
