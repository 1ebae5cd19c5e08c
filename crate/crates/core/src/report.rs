//! Versioned JSON reports emitted by the command-line tool.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::constants::{BoundSet, Certificate};
use crate::cycles::{ConstructiveResult, CycleWitness};
use crate::fas::{Fact1Report, FasResult, Lemma2Report, SullivanReport};
use crate::stats::{AuditReport, EdgeStats, GlobalStats, Lemma45Report};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

impl FileDigest {
    pub fn of(path: &str, bytes: &[u8]) -> FileDigest {
        let digest = Sha256::digest(bytes);
        FileDigest {
            path: path.to_string(),
            sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Inputs {
    pub params: BTreeMap<String, serde_json::Value>,
    pub files: Vec<FileDigest>,
}

impl Inputs {
    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).expect("parameters serialize");
        self.params.insert(key.to_string(), v);
        self
    }

    pub fn file(mut self, digest: FileDigest) -> Self {
        self.files.push(digest);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GirthPayload {
    pub girth: Option<usize>,
    pub witness: Option<CycleWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FindCyclePayload {
    pub result: ConstructiveResult,
    pub bfs_girth: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsPayload {
    pub global: GlobalStats,
    pub detail: Option<EdgeStats>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FasPayload {
    pub fas: FasResult,
    pub fact1: Option<Fact1Report>,
    pub lemma2: Option<Lemma2Report>,
    pub sullivan: Option<SullivanReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "kebab-case")]
pub enum Payload {
    Constants(Vec<BoundSet>),
    Certificate(Certificate),
    Girth(GirthPayload),
    FindCycle(FindCyclePayload),
    Stats(StatsPayload),
    Audit(AuditReport),
    AuditPair(Lemma45Report),
    Fas(FasPayload),
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported report version {0:?}")]
    Version(String),
    #[error("payload fails validation: {0}")]
    Invalid(&'static str),
}

impl Payload {
    /// Module-level invariants that can be checked without the input graph.
    pub fn validate(&self) -> Result<(), ReportError> {
        let ok = match self {
            Payload::Constants(rows) => rows.iter().all(BoundSet::is_consistent),
            Payload::Certificate(cert) => cert.is_consistent(),
            Payload::Girth(g) => match (&g.girth, &g.witness) {
                (None, None) => true,
                (Some(k), Some(w)) => w.check_shape().is_ok() && w.len() == *k,
                _ => false,
            },
            Payload::FindCycle(f) => {
                f.result.witness.check_shape().is_ok()
                    && f.bfs_girth.is_some_and(|g| g <= f.result.witness.len())
            }
            Payload::Stats(s) => {
                s.global.transitive_triangles == s.global.transitive_triangles_by_vertex
                    && s.global.sum_p == s.global.sum_q
                    && s.global.transitive_triangles <= s.global.out2claws
            }
            Payload::Audit(a) => a.is_consistent(),
            Payload::AuditPair(p) => p.lemma4.is_consistent() && p.lemma5.is_consistent(),
            Payload::Fas(f) => {
                let mut order = f.fas.order.clone();
                order.sort_unstable();
                f.fas.beta == f.fas.removed.len() && order.iter().enumerate().all(|(i, &v)| i == v)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(ReportError::Invalid(self.name()))
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Payload::Constants(_) => "constants",
            Payload::Certificate(_) => "certificate",
            Payload::Girth(_) => "girth",
            Payload::FindCycle(_) => "find-cycle",
            Payload::Stats(_) => "stats",
            Payload::Audit(_) => "audit",
            Payload::AuditPair(_) => "audit-pair",
            Payload::Fas(_) => "fas",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub inputs: Inputs,
    pub payload: Payload,
}

impl Report {
    pub fn new(command: &str, inputs: Inputs, payload: Payload) -> Report {
        Report {
            version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs,
            payload,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Report, ReportError> {
        let report: Report = serde_json::from_str(text)?;
        if report.version != SCHEMA_VERSION {
            return Err(ReportError::Version(report.version));
        }
        report.payload.validate()?;
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{bound_table, certify_theorem1};
    use crate::cycles::shortest_cycle;
    use crate::graph::directed_cycle;

    #[test]
    fn digest_is_hex_sha256() {
        let d = FileDigest::of("x", b"abc");
        assert_eq!(
            d.sha256,
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn round_trip_and_revalidation() {
        let report = Report::new(
            "constants",
            Inputs::default().param("m", "3..4"),
            Payload::Constants(bound_table(3, 4).unwrap()),
        );
        let back = Report::from_json(&report.to_json()).unwrap();
        assert_eq!(back, report);

        let cert = Report::new(
            "certify",
            Inputs::default(),
            Payload::Certificate(certify_theorem1(5).unwrap()),
        );
        assert_eq!(Report::from_json(&cert.to_json()).unwrap(), cert);

        let w = shortest_cycle(&directed_cycle(4));
        let mut bad = Report::new(
            "girth",
            Inputs::default(),
            Payload::Girth(GirthPayload {
                girth: Some(3),
                witness: w,
            }),
        );
        assert!(matches!(
            Report::from_json(&bad.to_json()),
            Err(ReportError::Invalid("girth"))
        ));
        bad.version = "0".into();
        assert!(matches!(
            Report::from_json(&bad.to_json()),
            Err(ReportError::Version(_))
        ));
    }
}
