//! JSON documents exchanged by the command-line tool. Points are 1-based in
//! every document; generators are written in cycle notation.

use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::coloring::TwoPartition;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::partitions::PartitionCertificate;
use crate::perm::Permutation;
use crate::product::{ProductGroupSpec, Twist};
use crate::tree::StructureTree;

pub const CERTIFICATE_FORMAT: &str = "permbase-certificate/1";

fn doc_err(e: serde_json::Error) -> Error {
    Error::Document(e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub degree: usize,
    pub generators: Vec<String>,
}

impl GroupFile {
    pub fn from_group(name: Option<String>, g: &PermGroup) -> Self {
        GroupFile {
            name,
            degree: g.degree(),
            generators: g
                .generators()
                .iter()
                .map(Permutation::to_cycle_string)
                .collect(),
        }
    }

    pub fn to_group(&self) -> Result<PermGroup> {
        PermGroup::from_cycle_strings(self.degree, &self.generators)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(doc_err)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifiedGroup {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub degree: usize,
    /// Decimal string, since orders overflow JSON numbers.
    pub order: String,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionEntry {
    pub part0: Vec<usize>,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub format: String,
    pub group: CertifiedGroup,
    pub seed: u64,
    pub count: usize,
    pub verified: bool,
    pub bound_ratio: f64,
    pub partitions: Vec<PartitionEntry>,
}

impl CertificateDocument {
    pub fn new(cert: &PartitionCertificate, group: &PermGroup) -> Self {
        CertificateDocument {
            format: CERTIFICATE_FORMAT.to_string(),
            group: CertifiedGroup {
                name: cert.name.clone(),
                degree: cert.degree,
                order: cert.order.to_string(),
                generators: group
                    .generators()
                    .iter()
                    .map(Permutation::to_cycle_string)
                    .collect(),
            },
            seed: cert.seed,
            count: cert.count(),
            verified: cert.verified,
            bound_ratio: cert.bound_ratio(),
            partitions: cert
                .partitions
                .iter()
                .zip(&cert.provenance)
                .map(|(p, tag)| PartitionEntry {
                    part0: p.part0().iter().map(|x| x + 1).collect(),
                    provenance: tag.clone(),
                })
                .collect(),
        }
    }

    pub fn group(&self) -> Result<PermGroup> {
        PermGroup::from_cycle_strings(self.group.degree, &self.group.generators)
    }

    /// The certificate as recorded. `verified` is copied from the document;
    /// callers re-check with [`PartitionCertificate::check`].
    pub fn to_certificate(&self) -> Result<PartitionCertificate> {
        if self.format != CERTIFICATE_FORMAT {
            return Err(Error::Document(format!(
                "unsupported format {:?}",
                self.format
            )));
        }
        let n = self.group.degree;
        let partitions = self
            .partitions
            .iter()
            .map(|e| {
                if e.part0.iter().any(|&x| x == 0 || x > n) {
                    return Err(Error::Document(format!(
                        "partition points must lie in 1..={n}"
                    )));
                }
                TwoPartition::new(n, e.part0.iter().map(|x| x - 1))
            })
            .collect::<Result<Vec<_>>>()?;
        let order = BigUint::from_str(&self.group.order)
            .map_err(|_| Error::Document(format!("bad order {:?}", self.group.order)))?;
        Ok(PartitionCertificate {
            name: self.group.name.clone(),
            degree: n,
            log2_order: crate::oracles::log2_big(&order),
            order,
            seed: self.seed,
            partitions,
            provenance: self
                .partitions
                .iter()
                .map(|e| e.provenance.clone())
                .collect(),
            verified: self.verified,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(doc_err)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeLevelDocument {
    pub vertices: Vec<Vec<usize>>,
    /// Index of the parent vertex on the next level up; empty at the root.
    pub parents: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LargeLevelDocument {
    pub level: usize,
    pub m: usize,
    pub a: usize,
    pub t: usize,
    pub classes: Vec<Vec<usize>>,
    /// `automorphisms[j][v]` in cycle notation on `1..=m`.
    pub automorphisms: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDocument {
    pub degree: usize,
    pub arities: Vec<usize>,
    pub sizes: Vec<usize>,
    pub levels: Vec<TreeLevelDocument>,
    pub large_levels: Vec<LargeLevelDocument>,
}

impl TreeDocument {
    pub fn new(tree: &StructureTree) -> Result<Self> {
        let one_based = |v: &[usize]| v.iter().map(|x| x + 1).collect::<Vec<_>>();
        let levels = tree
            .levels()
            .iter()
            .map(|l| TreeLevelDocument {
                vertices: l.vertices().iter().map(|v| one_based(v)).collect(),
                parents: l.parents().to_vec(),
            })
            .collect();
        let large_levels = tree
            .detect_large_levels()?
            .iter()
            .map(|l| LargeLevelDocument {
                level: l.level(),
                m: l.m(),
                a: l.a(),
                t: l.t(),
                classes: l.classes().to_vec(),
                automorphisms: l
                    .automorphisms()
                    .iter()
                    .map(|row| row.iter().map(Permutation::to_cycle_string).collect())
                    .collect(),
            })
            .collect();
        Ok(TreeDocument {
            degree: tree.degree(),
            arities: tree.arities(),
            sizes: tree.sizes(),
            levels,
            large_levels,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(doc_err)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistDocument {
    pub t: usize,
    pub sigmas: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSpecDocument {
    pub h: GroupFile,
    pub p: GroupFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<TwistDocument>,
    /// 1-based base of `H`; found by search when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_base: Option<Vec<usize>>,
}

impl ProductSpecDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(doc_err)
    }

    pub fn to_spec(&self) -> Result<ProductGroupSpec> {
        let h = self.h.to_group()?;
        let p = self.p.to_group()?;
        let twist = match &self.twist {
            None => None,
            Some(tw) => Some(Twist {
                t: tw.t,
                sigmas: tw
                    .sigmas
                    .iter()
                    .map(|s| Permutation::parse_cycles(h.degree(), s))
                    .collect::<Result<_>>()?,
            }),
        };
        ProductGroupSpec::new(h, p, twist)
    }

    pub fn h_base(&self) -> Result<Option<Vec<usize>>> {
        match &self.h_base {
            None => Ok(None),
            Some(b) => {
                if b.iter().any(|&x| x == 0 || x > self.h.degree) {
                    return Err(Error::Document(format!(
                        "H-base points must lie in 1..={}",
                        self.h.degree
                    )));
                }
                Ok(Some(b.iter().map(|x| x - 1).collect()))
            }
        }
    }
}
