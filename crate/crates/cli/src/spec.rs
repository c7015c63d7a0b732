//! Group-spec documents: JSON descriptions of a group by permutation
//! generators, by matrices acting on projective space, or by name.

use crate::error::{CliError, Result};
use genset_lab_core::arith::{FieldElement, FieldMatrix, FiniteField, Permutation};
use genset_lab_core::group::{catalog, Caps, GroupHandle};
use genset_lab_core::lie::{projective_action, projective_group_with, semilinear_group_with, LieGroupSpec};
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::sync::Arc;

/// Declared facts about the group. They label reports and parameterize
/// checks that need them (rank and field degree of a group of Lie type);
/// they never replace anything computed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_degree: Option<u64>,
}

impl Metadata {
    pub fn is_empty(&self) -> bool {
        self.rank.is_none() && self.field_degree.is_none()
    }
}

/// A matrix entry: an integer read in the prime field, or a coefficient
/// vector (lowest degree first) over `GF(p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Coefficients(Vec<u32>),
}

/// Named groups. `dihedral` takes the number of polygon vertices, so
/// `{"name": "dihedral", "n": 4}` is the group of order 8 on 4 points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum Constructor {
    Symmetric {
        n: usize,
    },
    Alternating {
        n: usize,
    },
    Cyclic {
        n: usize,
    },
    Dihedral {
        n: usize,
    },
    Quaternion,
    ElementaryAbelian {
        p: usize,
        rank: usize,
    },
    Metacyclic {
        m: usize,
        n: usize,
        k: usize,
        #[serde(default)]
        inverted: bool,
    },
    Frobenius {
        p: usize,
        k: usize,
    },
    Psl {
        n: usize,
        p: u32,
        f: u32,
    },
    Psigmal {
        n: usize,
        p: u32,
        f: u32,
    },
    DirectProduct {
        factors: Vec<Constructor>,
    },
}

impl Constructor {
    pub fn label(&self) -> String {
        match self {
            Constructor::Symmetric { n } => format!("S{n}"),
            Constructor::Alternating { n } => format!("A{n}"),
            Constructor::Cyclic { n } => format!("C{n}"),
            Constructor::Dihedral { n } => format!("D{}", 2 * n),
            Constructor::Quaternion => "Q8".into(),
            Constructor::ElementaryAbelian { p, rank } => format!("C{p}^{rank}"),
            Constructor::Metacyclic { m, n, k, inverted } => {
                let tag = if *inverted { "Minv" } else { "M" };
                format!("{tag}({m},{n},{k})")
            }
            Constructor::Frobenius { p, k } => format!("AGL1({p};{k})"),
            Constructor::Psl { n, p, f } => format!("PSL_{n}({})", u64::from(*p).pow(*f)),
            Constructor::Psigmal { n, p, f } => format!("PSigmaL_{n}({})", u64::from(*p).pow(*f)),
            Constructor::DirectProduct { factors } => {
                factors.iter().map(Constructor::label).collect::<Vec<_>>().join(" x ")
            }
        }
    }

    pub fn build(&self, caps: Caps) -> Result<GroupHandle> {
        let group = match self {
            Constructor::Symmetric { n } => catalog::symmetric(*n)?,
            Constructor::Alternating { n } => catalog::alternating(*n)?,
            Constructor::Cyclic { n } => catalog::cyclic(*n)?,
            Constructor::Dihedral { n } => catalog::dihedral(*n)?,
            Constructor::Quaternion => catalog::quaternion()?,
            Constructor::ElementaryAbelian { p, rank } => {
                if *rank == 0 {
                    return Err(CliError::Parse("elementary abelian rank must be positive".into()));
                }
                catalog::elementary_abelian(*p, *rank)?
            }
            Constructor::Metacyclic { m, n, k, inverted: false } => catalog::metacyclic(*m, *n, *k)?,
            Constructor::Metacyclic { m, n, k, inverted: true } => catalog::metacyclic_inverted(*m, *n, *k)?,
            Constructor::Frobenius { p, k } => catalog::frobenius(*p, *k)?,
            Constructor::Psl { n, p, f } => return Ok(projective_group_with(&LieGroupSpec::new(*n, *p, *f)?, caps)?),
            Constructor::Psigmal { n, p, f } => {
                return Ok(semilinear_group_with(&LieGroupSpec::new(*n, *p, *f)?, caps)?)
            }
            Constructor::DirectProduct { factors } => {
                let (first, rest) = factors
                    .split_first()
                    .ok_or_else(|| CliError::Parse("direct product needs at least one factor".into()))?;
                let mut acc = first.build(caps)?;
                for factor in rest {
                    acc = catalog::direct_product(&acc, &factor.build(caps)?)?;
                }
                acc
            }
        };
        if caps == Caps::default() {
            Ok(group)
        } else {
            Ok(group.with_caps(caps)?)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpecDocument {
    /// Generators in 1-indexed cycle notation on `{1, …, degree}`.
    Permutation {
        degree: usize,
        generators: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
        #[serde(default, skip_serializing_if = "Metadata::is_empty")]
        metadata: Metadata,
    },
    /// Matrices over `GF(p^f)` acting on the projective points of
    /// `GF(p^f)^dimension`. `modulus` is the defining polynomial, lowest
    /// coefficient first; without it the least irreducible is used.
    Matrix {
        p: u32,
        f: u32,
        dimension: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<Vec<u32>>,
        generators: Vec<Vec<Vec<Entry>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        projective: Option<bool>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
        #[serde(default, skip_serializing_if = "Metadata::is_empty")]
        metadata: Metadata,
    },
    Constructor {
        family: Constructor,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
        #[serde(default, skip_serializing_if = "Metadata::is_empty")]
        metadata: Metadata,
    },
}

/// A group built from a spec document, with its label and declared metadata.
#[derive(Debug, Clone)]
pub struct BuiltGroup {
    pub label: String,
    pub group: GroupHandle,
    pub metadata: Metadata,
}

impl GroupSpecDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn constructor(family: Constructor) -> Self {
        GroupSpecDocument::Constructor {
            family,
            label: None,
            metadata: Metadata::default(),
        }
    }

    pub fn metadata(&self) -> &Metadata {
        match self {
            GroupSpecDocument::Permutation { metadata, .. }
            | GroupSpecDocument::Matrix { metadata, .. }
            | GroupSpecDocument::Constructor { metadata, .. } => metadata,
        }
    }

    pub fn label(&self) -> String {
        match self {
            GroupSpecDocument::Permutation { label, degree, .. } => {
                label.clone().unwrap_or_else(|| format!("perm-group-deg{degree}"))
            }
            GroupSpecDocument::Matrix {
                label, p, f, dimension, ..
            } => label
                .clone()
                .unwrap_or_else(|| format!("matrix-group-{dimension}x{dimension}-GF({})", u64::from(*p).pow(*f))),
            GroupSpecDocument::Constructor { label, family, .. } => label.clone().unwrap_or_else(|| family.label()),
        }
    }

    pub fn build(&self, caps: Caps) -> Result<BuiltGroup> {
        let group = match self {
            GroupSpecDocument::Permutation { degree, generators, .. } => {
                if *degree == 0 {
                    return Err(CliError::Parse("degree must be positive".into()));
                }
                let mut gens = generators
                    .iter()
                    .map(|g| Permutation::parse_cycles(*degree, g))
                    .collect::<Result<Vec<_>, _>>()?;
                if gens.is_empty() {
                    gens.push(Permutation::identity(*degree));
                }
                GroupHandle::new(*degree, gens, caps)?
            }
            GroupSpecDocument::Matrix {
                p,
                f,
                dimension,
                modulus,
                generators,
                projective,
                ..
            } => {
                if *projective == Some(false) {
                    return Err(CliError::Parse(
                        "matrix groups act on projective points; \"projective\": false is not supported".into(),
                    ));
                }
                let field = Arc::new(match modulus {
                    Some(poly) => {
                        let field = FiniteField::with_modulus(*p, poly.clone())?;
                        if field.degree() != *f {
                            return Err(CliError::Parse(format!(
                                "modulus has degree {}, but f = {f}",
                                field.degree()
                            )));
                        }
                        field
                    }
                    None => FiniteField::new(*p, *f)?,
                });
                if generators.is_empty() {
                    return Err(CliError::Parse("matrix spec needs at least one generator".into()));
                }
                let matrices = generators
                    .iter()
                    .map(|rows| parse_matrix(&field, *dimension, rows))
                    .collect::<Result<Vec<_>>>()?;
                projective_action(&field, *dimension, &matrices, caps)?
            }
            GroupSpecDocument::Constructor { family, .. } => family.build(caps)?,
        };
        Ok(BuiltGroup {
            label: self.label(),
            group,
            metadata: self.metadata().clone(),
        })
    }
}

fn parse_entry(field: &FiniteField, entry: &Entry) -> Result<FieldElement> {
    Ok(match entry {
        Entry::Int(n) => field.from_int(*n),
        Entry::Coefficients(c) => field.from_coefficients(c)?,
    })
}

fn parse_matrix(field: &Arc<FiniteField>, dimension: usize, rows: &[Vec<Entry>]) -> Result<FieldMatrix> {
    if rows.len() != dimension || rows.iter().any(|r| r.len() != dimension) {
        return Err(CliError::Parse(format!("every matrix must be {dimension}x{dimension}")));
    }
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|e| parse_entry(field, e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let m = FieldMatrix::from_rows(field, rows)?;
    if m.determinant().is_zero() {
        return Err(CliError::Parse("matrix generator is singular".into()));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let doc = GroupSpecDocument::from_json(
            r#"{"kind": "permutation", "degree": 4, "generators": ["(1 2 3 4)", "(1 2)"], "label": "S4"}"#,
        )
        .unwrap();
        let g = doc.build(Caps::default()).unwrap();
        assert_eq!(g.label, "S4");
        assert_eq!(g.group.order().unwrap(), 24);

        let doc = GroupSpecDocument::from_json(
            r#"{"kind": "constructor", "family": {"name": "direct_product",
                "factors": [{"name": "quaternion"}, {"name": "cyclic", "n": 3}]}}"#,
        )
        .unwrap();
        let g = doc.build(Caps::default()).unwrap();
        assert_eq!(g.label, "Q8 x C3");
        assert_eq!(g.group.order().unwrap(), 24);

        // SL_2(3) generated by two transvections, acting on 4 projective points.
        let doc = GroupSpecDocument::from_json(
            r#"{"kind": "matrix", "p": 3, "f": 1, "dimension": 2,
                "generators": [[[1, 1], [0, 1]], [[1, 0], [1, 1]]],
                "metadata": {"rank": 1, "field_degree": 1}}"#,
        )
        .unwrap();
        let g = doc.build(Caps::default()).unwrap();
        assert_eq!(g.group.degree(), 4);
        assert_eq!(g.group.order().unwrap(), 12);
        assert_eq!(g.metadata.rank, Some(1));
    }

    #[test]
    fn coefficient_vectors_and_modulus() {
        // GF(4) = GF(2)[x]/(x^2 + x + 1); diag(x, x^-1) = diag(x, x + 1).
        let doc = GroupSpecDocument::from_json(
            r#"{"kind": "matrix", "p": 2, "f": 2, "dimension": 2, "modulus": [1, 1, 1],
                "generators": [[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[[0, 1], 0], [0, [1, 1]]]]}"#,
        )
        .unwrap();
        let g = doc.build(Caps::default()).unwrap();
        assert_eq!(g.group.degree(), 5);
        assert_eq!(g.group.order().unwrap(), 60);
    }

    #[test]
    fn rejects_malformed_documents() {
        for text in [
            r#"{"kind": "permutation", "degree": 3, "generators": ["(1 4)"]}"#,
            r#"{"kind": "permutation", "degree": 3, "generators": ["(1 2"]}"#,
            r#"{"kind": "permutation", "degree": 3, "generators": [], "colour": 1}"#,
            r#"{"kind": "lattice"}"#,
            r#"{"kind": "matrix", "p": 2, "f": 1, "dimension": 2, "generators": [[[1, 1]]]}"#,
            r#"{"kind": "matrix", "p": 2, "f": 1, "dimension": 2, "generators": [[[1, 1], [1, 1]]]}"#,
            r#"{"kind": "matrix", "p": 2, "f": 2, "dimension": 2, "modulus": [1, 0, 1], "generators": [[[1, 0], [0, 1]]]}"#,
            r#"{"kind": "matrix", "p": 2, "f": 1, "dimension": 2, "projective": false, "generators": [[[1, 0], [0, 1]]]}"#,
            r#"{"kind": "constructor", "family": {"name": "symmetric"}}"#,
        ] {
            let err = GroupSpecDocument::from_json(text).and_then(|d| d.build(Caps::default()).map(|_| ()));
            assert!(err.is_err(), "accepted {text}");
            assert_eq!(err.unwrap_err().exit_code(), crate::error::exit::PARSE, "{text}");
        }
    }

    #[test]
    fn round_trips_through_json() {
        let doc = GroupSpecDocument::constructor(Constructor::Metacyclic {
            m: 7,
            n: 3,
            k: 2,
            inverted: true,
        });
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(GroupSpecDocument::from_json(&text).unwrap(), doc);
        assert_eq!(doc.build(Caps::default()).unwrap().group.order().unwrap(), 42);
    }
}
