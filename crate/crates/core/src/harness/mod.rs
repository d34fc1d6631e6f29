//! Mechanical checks of regularity bounds and equalities over graph corpora,
//! with JSON reports.

pub mod checks;
pub mod corpus;
pub mod suite;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::constructions::HtSpec;
use crate::error::Error;
use crate::graph::Graph;
use crate::invariants::DEFAULT_NODE_BUDGET;
use crate::resolution::{EngineConfig, Field};

pub use checks::*;
pub use corpus::{canonical_code, connected_graphs, generate_corpus, BaseFamily, CorpusSpec, Instance, TMode};
pub use suite::{run_suite, Report, Suite, Summary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TheoremId {
    /// `2r + ν − 2 ≤ reg(S/I^r) ≤ 2r + cochord − 2`.
    PowerBounds,
    LowerSymbolic,
    LemmaTech,
    PropRegsum,
    ThmBipartiteHt,
    CorCochordHt,
    PropNuCochord(u8),
    CorCamwal,
    ThmUnicyclicReg,
    PropOrdUni,
    PropSymUni,
    ThmMainUni,
    SvvBipartite,
    ColonLemma,
    RmkColonBound,
    /// Unicyclic graphs without attachments (attributed result).
    UnicyclicBare,
    /// Fixed reference values.
    Golden,
    /// Engine self-consistency.
    Engine,
    /// Box search vs. iterated intersection.
    SymbolicPaths,
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremId::PropNuCochord(c) => write!(f, "PROP_NU_COCHORD({c})"),
            other => {
                let s = serde_json::to_value(other).expect("unit variant");
                write!(f, "{}", s.as_str().unwrap_or("?"))
            }
        }
    }
}

/// Everything needed to replay a failed relation outside the harness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub graph: Graph,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ht: Option<HtSpec>,
    /// Nonempty when the instance is the disjoint union of these graphs.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<Graph>,
    pub r: Option<u32>,
    pub relation: String,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail { counterexample: Box<Counterexample> },
    Skipped { reason: String },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self, Verdict::Skipped { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub theorem: TheoremId,
    pub label: String,
    pub graph: Graph,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ht: Option<HtSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<Graph>,
    pub r_max: Option<u32>,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub evidence: BTreeMap<String, serde_json::Value>,
    /// Wall time; dropped from canonical reports.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Budgets shared by every check.
#[derive(Clone, Debug)]
pub struct HarnessConfig {
    pub field: Field,
    pub lattice_cap: usize,
    pub timeout: Duration,
    pub cochord_budget: u64,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            field: Field::default(),
            lattice_cap: 1_000_000,
            timeout: Duration::from_secs(120),
            cochord_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl HarnessConfig {
    /// Fresh engine settings with the per-instance deadline starting now.
    pub fn engine(&self) -> EngineConfig {
        let mut cfg = EngineConfig::with_field(self.field).with_timeout(self.timeout);
        cfg.lattice_cap = self.lattice_cap;
        cfg
    }
}

/// Caps and timeouts become skips; everything else is a real failure.
pub(crate) fn skip_reason(e: &Error) -> Option<String> {
    match e {
        Error::CapExceeded { .. } | Error::Timeout => Some(format!("cap: {e}")),
        Error::Precondition(_) | Error::NotUnicyclic(_) | Error::PartNotChordal(_) => {
            Some(format!("precondition: {e}"))
        }
        _ => None,
    }
}

/// Thread count from `EIL_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var("EIL_THREADS").ok()?.trim().parse().ok().filter(|&n| n > 0)
}
