//! JSON file formats. All integers are serialized as decimal strings so
//! any consumer sees them losslessly, however large they get.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knapsack::{IndexSet, KnapsackSet, Partition};
use crate::lifting::{LiftDirection, LiftStep, LiftedCoverInequality, LiftingTask};
use crate::verify::FacetReport;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("field `{field}`: `{value}` is not a decimal integer")]
    BadInteger { field: String, value: String },
    #[error("field `n` is {n} but `a` has {len} entries")]
    LengthMismatch { n: usize, len: usize },
    #[error("field `sequence` is present but `partition` is missing")]
    SequenceWithoutPartition,
    #[error("field `partition` is missing")]
    MissingPartition,
}

fn parse_int(field: &str, value: &str) -> Result<BigInt, IoError> {
    BigInt::from_str(value.trim()).map_err(|_| IoError::BadInteger {
        field: field.to_string(),
        value: value.to_string(),
    })
}

/// On-disk form of a knapsack instance, optionally with a partition and a
/// lifting sequence (1-based indices).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub a: Vec<String>,
    pub b: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionFile {
    #[serde(rename = "C")]
    pub cover: Vec<usize>,
    #[serde(rename = "N0")]
    pub fixed_zero: Vec<usize>,
    #[serde(rename = "N1")]
    pub fixed_one: Vec<usize>,
}

impl InstanceFile {
    pub fn from_task(task: &LiftingTask) -> Self {
        InstanceFile {
            n: task.set.n(),
            a: task.set.weights().iter().map(|w| w.to_string()).collect(),
            b: task.set.capacity().to_string(),
            partition: Some(PartitionFile {
                cover: task.partition.cover.iter().copied().collect(),
                fixed_zero: task.partition.fixed_zero.iter().copied().collect(),
                fixed_one: task.partition.fixed_one.iter().copied().collect(),
            }),
            sequence: Some(task.sequence.clone()),
        }
    }

    pub fn to_knapsack_set(&self) -> Result<KnapsackSet, IoError> {
        if self.a.len() != self.n {
            return Err(IoError::LengthMismatch { n: self.n, len: self.a.len() });
        }
        let weights = self
            .a
            .iter()
            .enumerate()
            .map(|(i, s)| parse_int(&format!("a[{}]", i + 1), s))
            .collect::<Result<Vec<_>, _>>()?;
        let capacity = parse_int("b", &self.b)?;
        // Structural validation (positivity etc.) happens in the domain
        // constructor; surface its message directly.
        KnapsackSet::new(weights, capacity).map_err(|e| IoError::BadInteger {
            field: "a/b".into(),
            value: e.to_string(),
        })
    }

    /// Interprets the file as a full lifting task. The partition is
    /// required; a missing sequence defaults to ascending order over
    /// `N0 ∪ N1`.
    pub fn to_task(&self) -> Result<LiftingTask, IoError> {
        let set = self.to_knapsack_set()?;
        let Some(p) = &self.partition else {
            return Err(IoError::MissingPartition);
        };
        let partition = Partition::new(
            p.cover.iter().copied().collect::<IndexSet>(),
            p.fixed_zero.iter().copied().collect::<IndexSet>(),
            p.fixed_one.iter().copied().collect::<IndexSet>(),
        );
        let sequence = match &self.sequence {
            Some(s) => s.clone(),
            None => partition
                .fixed_zero
                .union(&partition.fixed_one)
                .copied()
                .collect(),
        };
        Ok(LiftingTask::new(set, partition, sequence))
    }
}

/// On-disk form of an inequality, with the optional lifting trace.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InequalityFile {
    pub coeffs: Vec<String>,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceEntryFile>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceEntryFile {
    pub index: usize,
    pub direction: String,
    pub coefficient: String,
    pub optimum: String,
}

impl InequalityFile {
    pub fn from_lci(lci: &LiftedCoverInequality) -> Self {
        InequalityFile {
            coeffs: lci.coeffs.values().map(|c| c.to_string()).collect(),
            rhs: lci.rhs.to_string(),
            trace: Some(
                lci.trace
                    .iter()
                    .map(|s| TraceEntryFile {
                        index: s.index,
                        direction: match s.direction {
                            LiftDirection::Up => "up".into(),
                            LiftDirection::Down => "down".into(),
                        },
                        coefficient: s.coefficient.to_string(),
                        optimum: s.optimum.to_string(),
                    })
                    .collect(),
            ),
        }
    }

    pub fn coefficients(&self) -> Result<Vec<BigInt>, IoError> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, s)| parse_int(&format!("coeffs[{}]", i + 1), s))
            .collect()
    }

    pub fn rhs_value(&self) -> Result<BigInt, IoError> {
        parse_int("rhs", &self.rhs)
    }

    pub fn to_lci(&self) -> Result<LiftedCoverInequality, IoError> {
        let coeffs: BTreeMap<usize, BigInt> = self
            .coefficients()?
            .into_iter()
            .enumerate()
            .map(|(i, c)| (i + 1, c))
            .collect();
        let trace = match &self.trace {
            None => Vec::new(),
            Some(entries) => entries
                .iter()
                .map(|e| {
                    Ok(LiftStep {
                        index: e.index,
                        direction: if e.direction == "up" {
                            LiftDirection::Up
                        } else {
                            LiftDirection::Down
                        },
                        coefficient: parse_int("trace.coefficient", &e.coefficient)?,
                        optimum: parse_int("trace.optimum", &e.optimum)?,
                    })
                })
                .collect::<Result<Vec<_>, IoError>>()?,
        };
        Ok(LiftedCoverInequality { coeffs, rhs: self.rhs_value()?, trace })
    }
}

/// On-disk form of an RPP instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RppFile {
    pub m: u32,
    pub omega: Vec<String>,
}

impl RppFile {
    pub fn from_instance(inst: &crate::hardness::RppInstance) -> Self {
        RppFile {
            m: inst.m,
            omega: inst.omega.iter().map(|w| w.to_string()).collect(),
        }
    }

    pub fn to_instance(&self) -> Result<crate::hardness::RppInstance, IoError> {
        let omega = self
            .omega
            .iter()
            .enumerate()
            .map(|(i, s)| parse_int(&format!("omega[{}]", i + 1), s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(crate::hardness::RppInstance::new(self.m, omega))
    }
}

/// On-disk form of a facet report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FacetReportFile {
    pub valid: bool,
    pub tight_count: usize,
    pub tight_affine_dim: i64,
    pub polytope_dim: usize,
    pub is_facet: bool,
}

impl FacetReportFile {
    pub fn from_report(r: &FacetReport) -> Self {
        FacetReportFile {
            valid: r.valid,
            tight_count: r.tight_count,
            tight_affine_dim: r.tight_affine_dim,
            polytope_dim: r.polytope_dim,
            is_facet: r.is_facet,
        }
    }
}

pub fn load_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| IoError::Json {
        path: path.display().to_string(),
        source,
    })
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    out.push('\n');
    out
}
