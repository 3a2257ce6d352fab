//! Machine-readable report documents. All reports carry a schema version and
//! serialize with a stable field order, so identical runs produce identical
//! bytes regardless of thread count.

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::matgroup::{FamilyTag, FiniteMatrixGroup};
use crate::repanalysis::IsotropyType;
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Matrix entries wrapped so they serialize as decimal numbers with 17
/// significant digits (lossless for f64).
#[derive(Debug, Clone)]
pub struct Entries(pub Vec<Vec<f64>>);

fn serialize_f64_17<S: Serializer>(x: f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    let text = format!("{x:.16e}");
    let n = serde_json::Number::from_string_unchecked(text);
    n.serialize(s)
}

impl Serialize for Entries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Row<'a>(&'a [f64]);
        impl Serialize for Row<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                struct Cell(f64);
                impl Serialize for Cell {
                    fn serialize<S: Serializer>(
                        &self,
                        s: S,
                    ) -> std::result::Result<S::Ok, S::Error> {
                        serialize_f64_17(self.0, s)
                    }
                }
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for &x in self.0 {
                    seq.serialize_element(&Cell(x))?;
                }
                seq.end()
            }
        }
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for row in &self.0 {
            seq.serialize_element(&Row(row))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Entries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<Vec<serde_json::Number>> = Vec::deserialize(d)?;
        Ok(Entries(
            raw.into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|n| n.as_f64().unwrap_or(f64::NAN))
                        .collect()
                })
                .collect(),
        ))
    }
}

/// Serialized closed group: `{dim, order, family, parameters, elements}`
/// with row-major element entries.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupReport {
    pub schema_version: u32,
    pub dim: usize,
    pub order: usize,
    pub family: String,
    pub parameters: serde_json::Value,
    /// Row-major entries of every element, in canonical element order.
    pub elements: Vec<Entries>,
}

impl GroupReport {
    pub fn from_group(group: &FiniteMatrixGroup) -> GroupReport {
        let parameters = match &group.family {
            FamilyTag::G3 { m } => serde_json::json!({ "m": m }),
            FamilyTag::G8 { l, k, tau } => serde_json::json!({ "l": l, "k": k, "tau": tau }),
            FamilyTag::Custom => serde_json::json!({}),
        };
        let elements = (0..group.order())
            .map(|i| {
                let m = group.element(i);
                Entries(
                    (0..group.dim)
                        .map(|r| (0..group.dim).map(|c| m[(r, c)]).collect())
                        .collect(),
                )
            })
            .collect();
        GroupReport {
            schema_version: SCHEMA_VERSION,
            dim: group.dim,
            order: group.order(),
            family: group.family.label(),
            parameters,
            elements,
        }
    }

    /// Rebuilds the closed group from the document (re-deriving keys).
    pub fn to_group(&self) -> Result<FiniteMatrixGroup> {
        let mats: Vec<nalgebra::DMatrix<f64>> = self
            .elements
            .iter()
            .map(|e| nalgebra::DMatrix::from_fn(self.dim, self.dim, |r, c| e.0[r][c]))
            .collect();
        let group =
            crate::matgroup::close_matrices(self.dim, FamilyTag::Custom, &mats, self.order * 2)?;
        if group.order() != self.order {
            return Err(Error::Parameter(format!(
                "document claims order {} but the closure has {}",
                self.order,
                group.order()
            )));
        }
        Ok(group)
    }
}

/// One isotropy type in a report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IsotropyTypeReport {
    #[serde(rename = "fixedDim")]
    pub fixed_dim: usize,
    #[serde(rename = "subgroupOrder")]
    pub subgroup_order: usize,
    pub conjugates: usize,
    pub witness: Vec<f64>,
}

/// Isotropy scan of one group.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IsotropyReport {
    pub schema_version: u32,
    pub group: String,
    pub order: usize,
    pub types: Vec<IsotropyTypeReport>,
}

impl IsotropyReport {
    pub fn new(group: &FiniteMatrixGroup, types: &[IsotropyType]) -> IsotropyReport {
        IsotropyReport {
            schema_version: SCHEMA_VERSION,
            group: group.family.label(),
            order: group.order(),
            types: types
                .iter()
                .map(|t| IsotropyTypeReport {
                    fixed_dim: t.fixed_dim,
                    subgroup_order: t.subgroup_order,
                    conjugates: t.conjugates,
                    witness: t.witness.iter().copied().collect(),
                })
                .collect(),
        }
    }
}

/// Normalizer / Weyl structure of the distinguished subgroup pair.
#[derive(Debug, Clone, Serialize)]
pub struct NormalizerStructureReport {
    pub schema_version: u32,
    pub group: String,
    pub subgroup_order: usize,
    pub normalizer_order: usize,
    pub index_in_group: usize,
    pub weyl_order: usize,
    pub fix_dim: usize,
    pub fix_prime_dim: usize,
    pub direct_sum_dim: usize,
    pub q1: u32,
    pub q2: u32,
    pub q3: u32,
    pub c: u32,
    /// Exponents for which the generator-word block equations hold exactly.
    pub exact_exponents: [Option<u32>; 3],
}

/// One coefficient of one component of a polynomial map.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisTerm {
    pub component: usize,
    pub exponents: Vec<u8>,
    pub coefficient: f64,
}

/// Flat term list of an equivariant basis map.
pub fn poly_map_terms(map: &crate::equivariants::PolyMap) -> Vec<BasisTerm> {
    let mut terms = Vec::new();
    for (component, poly) in map.components.iter().enumerate() {
        for (mono, &coefficient) in &poly.terms {
            terms.push(BasisTerm {
                component,
                exponents: mono.0.clone(),
                coefficient,
            });
        }
    }
    terms
}
