//! JSON documents read and written by the command line.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use hall_core::{families, Error, FiniteGroup, Limits, Origin, Permutation};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::LabError;

/// A group given by table, by permutation generators, or by family name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GroupDoc {
    Table {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        table: Vec<Vec<usize>>,
    },
    Perm {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    /// `cyclic n`, `dihedral n` (order `2n`), `symmetric n`, `alternating n`,
    /// `elementary-abelian n` with prime `p`, `klein`, `quaternion`.
    Family {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        family: String,
        #[serde(default)]
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<usize>,
    },
}

impl GroupDoc {
    pub fn family(family: &str, n: usize) -> GroupDoc {
        GroupDoc::Family {
            name: None,
            family: family.to_string(),
            n,
            p: None,
        }
    }

    pub fn name(&self) -> String {
        match self {
            GroupDoc::Table { name: Some(n), .. }
            | GroupDoc::Perm { name: Some(n), .. }
            | GroupDoc::Family { name: Some(n), .. } => n.clone(),
            GroupDoc::Table { table, .. } => format!("table-{}", table.len()),
            GroupDoc::Perm { degree, generators, .. } => {
                format!("perm-{degree}-{}", generators.len())
            }
            GroupDoc::Family { family, n, p, .. } => match (family.as_str(), p) {
                ("klein" | "quaternion", _) => family.clone(),
                ("elementary-abelian", Some(p)) => format!("elementary-abelian-{p}^{n}"),
                _ => format!("{family}-{n}"),
            },
        }
    }

    pub fn build(&self, limits: &Limits) -> Result<FiniteGroup, LabError> {
        let g = match self {
            GroupDoc::Table { table, .. } => FiniteGroup::from_table(table)?,
            GroupDoc::Perm { degree, generators, .. } => {
                let gens = generators
                    .iter()
                    .map(|g| Permutation::from_images(g.clone()))
                    .collect::<Result<Vec<_>, Error>>()?;
                FiniteGroup::from_permutations_bounded(*degree, &gens, limits.closure_ceiling)?
            }
            GroupDoc::Family { family, n, p, .. } => {
                let n = *n;
                let need = |min: usize| {
                    if n < min {
                        Err(LabError::Usage(format!("family {family} needs n >= {min}")))
                    } else {
                        Ok(())
                    }
                };
                match family.as_str() {
                    "cyclic" => {
                        need(1)?;
                        families::cyclic(n)
                    }
                    "dihedral" => {
                        need(1)?;
                        families::dihedral(n)
                    }
                    "symmetric" => {
                        need(1)?;
                        if (1..=n).product::<usize>() > limits.closure_ceiling {
                            return Err(Error::OrderCeilingExceeded {
                                ceiling: limits.closure_ceiling,
                            }
                            .into());
                        }
                        families::symmetric(n)
                    }
                    "alternating" => {
                        need(1)?;
                        if (1..=n).product::<usize>() / 2 > limits.closure_ceiling {
                            return Err(Error::OrderCeilingExceeded {
                                ceiling: limits.closure_ceiling,
                            }
                            .into());
                        }
                        families::alternating(n)
                    }
                    "elementary-abelian" => {
                        let p = p.ok_or_else(|| LabError::Usage("elementary-abelian needs p".into()))?;
                        if p < 2 || !(2..p).all(|d| p % d != 0) {
                            return Err(LabError::Usage(format!("{p} is not prime")));
                        }
                        let k = u32::try_from(n).map_err(|_| LabError::Usage("rank too large".into()))?;
                        families::elementary_abelian(p, k)
                    }
                    "klein" => families::klein_four(),
                    "quaternion" => families::quaternion(),
                    other => return Err(LabError::Usage(format!("unknown family {other}"))),
                }
            }
        };
        Ok(g)
    }

    /// A self-contained document for `g`.
    pub fn of_group(g: &FiniteGroup, name: Option<String>) -> GroupDoc {
        match g.origin() {
            Origin::Permutation { degree, generators } => GroupDoc::Perm {
                name,
                degree: *degree,
                generators: generators
                    .iter()
                    .map(|&i| g.permutation(i).expect("permutation group").images().to_vec())
                    .collect(),
            },
            Origin::Table => GroupDoc::Table {
                name,
                table: g.cayley_table(),
            },
        }
    }
}

/// An element named by index or, in a permutation group, by image array.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Perm(Vec<usize>),
}

impl ElementRef {
    pub fn resolve(&self, g: &FiniteGroup) -> Result<usize, LabError> {
        match self {
            ElementRef::Index(i) => {
                g.check_element(*i)?;
                Ok(*i)
            }
            ElementRef::Perm(images) => {
                let p = Permutation::from_images(images.clone())?;
                g.index_of(&p)
                    .ok_or_else(|| LabError::Usage(format!("{p} is not an element of the group")))
            }
        }
    }
}

pub fn resolve_all(refs: &[ElementRef], g: &FiniteGroup) -> Result<Vec<usize>, LabError> {
    refs.iter().map(|r| r.resolve(g)).collect()
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, LabError> {
    let text = fs::read_to_string(path)
        .map_err(|e| LabError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| LabError::Usage(format!("{}: {e}", path.display())))
}

/// Parses an inline JSON argument.
pub fn parse_arg<T: DeserializeOwned>(what: &str, text: &str) -> Result<T, LabError> {
    serde_json::from_str(text).map_err(|e| LabError::Usage(format!("--{what}: {e}")))
}

pub fn load_group(path: &Path, limits: &Limits) -> Result<(GroupDoc, Arc<FiniteGroup>), LabError> {
    let doc: GroupDoc = read_json(path)?;
    let g = doc.build(limits)?;
    Ok((doc, Arc::new(g)))
}

/// `[from, to]` pairs of involutions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvolutionMapDoc {
    pub assignment: Vec<(ElementRef, ElementRef)>,
}

/// A subgroup isomorphism: source and target by generators, images of the
/// source generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsoDoc {
    pub source: Vec<ElementRef>,
    pub target: Vec<ElementRef>,
    pub images: Vec<ElementRef>,
}

pub fn permutation_json(p: &Permutation) -> Value {
    json!({ "images": p.images(), "cycles": p.to_string() })
}
