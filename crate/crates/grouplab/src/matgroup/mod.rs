//! Finite orthogonal matrix groups: elements, generator sets, and closed
//! groups with canonically keyed, deterministically ordered element lists.

mod closure;
mod generators;
mod relations;

pub use closure::{close_group, close_group_bounded, close_matrices, DEFAULT_CLOSURE_BOUND};
pub use generators::{
    build_g3_generators, build_g3_generators_with_root, build_g8_generators,
    build_g8_generators_with_root, g8_gen_a, g8_matrices,
};
pub use relations::{element_order, verify_matrix_relations, RelationCheck, RelationReport};

use std::collections::HashMap;

use nalgebra::DMatrix;

use crate::linalg::{max_dist, orth_deviation};
use crate::quant::Quantizer;
use crate::{Error, Result, EPS_ORTH};

/// Canonical quantized key of a matrix, valid within one group's dictionary.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementKey(pub Vec<i64>);

/// An orthogonal n x n matrix with determinant +1.
#[derive(Debug, Clone)]
pub struct MatrixElement {
    pub dim: usize,
    pub mat: DMatrix<f64>,
}

impl MatrixElement {
    /// Wraps a matrix, checking orthogonality and determinant +1.
    pub fn new(mat: DMatrix<f64>) -> Result<Self> {
        let dim = mat.nrows();
        if mat.ncols() != dim {
            return Err(Error::Parameter("matrix must be square".into()));
        }
        let dev = orth_deviation(&mat);
        if dev > EPS_ORTH {
            return Err(Error::Tolerance {
                what: "matrix is not orthogonal".into(),
                deviation: dev,
            });
        }
        let det_dev = (mat.determinant() - 1.0).abs();
        if det_dev > EPS_ORTH {
            return Err(Error::Tolerance {
                what: "determinant is not +1".into(),
                deviation: det_dev,
            });
        }
        Ok(MatrixElement { dim, mat })
    }

    pub fn identity(dim: usize) -> Self {
        MatrixElement {
            dim,
            mat: DMatrix::identity(dim, dim),
        }
    }
}

/// Which family a generator set belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyTag {
    /// Quaternionic family on R^4, parameter m (odd, >= 3).
    G3 {
        m: u32,
    },
    /// Block-matrix family on R^8, parameter l >= 1 with k = 4 + 8l, tau = k/4.
    G8 {
        l: u32,
        k: u32,
        tau: u32,
    },
    Custom,
}

impl FamilyTag {
    pub fn label(&self) -> String {
        match self {
            FamilyTag::G3 { m } => format!("G3({m})"),
            FamilyTag::G8 { l, .. } => format!("G({l})"),
            FamilyTag::Custom => "custom".into(),
        }
    }
}

/// Generator matrices with provenance.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub dim: usize,
    pub generators: Vec<MatrixElement>,
    pub family: FamilyTag,
}

/// A closed finite matrix group. Elements are sorted by canonical key, so the
/// ordering is reproducible across runs and thread counts.
#[derive(Debug, Clone)]
pub struct FiniteMatrixGroup {
    pub dim: usize,
    pub family: FamilyTag,
    elements: Vec<DMatrix<f64>>,
    keys: Vec<ElementKey>,
    index: HashMap<ElementKey, usize>,
    generators: Vec<usize>,
    identity: usize,
    quant: Quantizer,
}

impl FiniteMatrixGroup {
    pub(crate) fn from_parts(
        dim: usize,
        family: FamilyTag,
        elements: Vec<DMatrix<f64>>,
        keys: Vec<ElementKey>,
        generators: Vec<usize>,
        quant: Quantizer,
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, k) in keys.iter().enumerate() {
            if index.insert(k.clone(), i).is_some() {
                return Err(Error::Internal("duplicate element key".into()));
            }
        }
        let ident = DMatrix::identity(dim, dim);
        let identity = elements
            .iter()
            .position(|m| max_dist(m, &ident) < crate::quant::EPS_KEY)
            .ok_or_else(|| Error::Internal("closed group lost its identity".into()))?;
        Ok(FiniteMatrixGroup {
            dim,
            family,
            elements,
            keys,
            index,
            generators,
            identity,
            quant,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &DMatrix<f64> {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[DMatrix<f64>] {
        &self.elements
    }

    pub fn key(&self, i: usize) -> &ElementKey {
        &self.keys[i]
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    /// Index of a matrix in this group, snapping entries through the group's
    /// own key dictionary. `None` when the matrix is not an element.
    pub fn find(&self, m: &DMatrix<f64>) -> Option<usize> {
        let key = self.quant.key_lookup_slice(m.as_slice())?;
        self.index.get(&ElementKey(key)).copied()
    }

    /// Index of the product of two elements; the group is closed so this
    /// always succeeds on valid indices.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        let prod = &self.elements[i] * &self.elements[j];
        self.find(&prod)
            .expect("product of group elements must lie in the group")
    }

    /// Index of the inverse (= transpose) of an element.
    pub fn inv(&self, i: usize) -> usize {
        let t = self.elements[i].transpose();
        self.find(&t)
            .expect("inverse of a group element must lie in the group")
    }

    /// Conjugates an index set elementwise by the group element `g`.
    pub fn conjugate_set(&self, set: &[usize], g: usize) -> Vec<usize> {
        let gi = self.inv(g);
        let mut out: Vec<usize> = set.iter().map(|&s| self.mul(self.mul(g, s), gi)).collect();
        out.sort_unstable();
        out
    }

    /// Lexicographically minimal conjugate of a sorted index set, used as the
    /// canonical label of its conjugacy class.
    pub fn conjugacy_canonical(&self, set: &[usize]) -> Vec<usize> {
        let mut best: Option<Vec<usize>> = None;
        for g in 0..self.order() {
            let c = self.conjugate_set(set, g);
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
        }
        best.unwrap_or_else(|| set.to_vec())
    }

    /// Checks that an index set is closed under multiplication and contains
    /// the identity (sufficient for a subgroup of a finite group).
    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        if !set.contains(&self.identity) {
            return false;
        }
        let members: std::collections::HashSet<usize> = set.iter().copied().collect();
        set.iter()
            .all(|&a| set.iter().all(|&b| members.contains(&self.mul(a, b))))
    }

    /// Closure of a subset under multiplication, as sorted indices.
    pub fn generated_subgroup(&self, seed: &[usize]) -> Vec<usize> {
        let mut members: std::collections::BTreeSet<usize> = seed.iter().copied().collect();
        members.insert(self.identity);
        let mut frontier: Vec<usize> = members.iter().copied().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &f in &frontier {
                for &s in seed {
                    let p = self.mul(f, s);
                    if members.insert(p) {
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        members.into_iter().collect()
    }

    /// Minimum max-norm distance between distinct elements. Part of the
    /// build-time audit: the key tolerance must stay strictly below half of
    /// this gap.
    pub fn min_element_gap(&self) -> f64 {
        let n = self.order();
        let mins = crate::par::map_range(n, |i| {
            let mut m = f64::INFINITY;
            for j in (i + 1)..n {
                m = m.min(max_dist(&self.elements[i], &self.elements[j]));
            }
            m
        });
        mins.into_iter().fold(f64::INFINITY, f64::min)
    }
}
