//! Transformations that never lower the transmission price.
//!
//! Each rule takes a strongly connected digraph and either produces a new
//! digraph of the same order or reports that it could not make progress.

mod bridge;
mod bunch;
mod critical;
mod t1;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::invariants::transmission_price;

pub use bridge::{
    break_c2, break_c2_candidate, bridge_sigma_decomposition, contract_c2, find_c2_bridge, BreakCandidate,
    BridgePartition,
};
pub use bunch::{detect_bunches, Bunch, BunchOptions};
pub use critical::{find_non_critical_arrow, make_critical, make_critical_traced, remove_non_critical};
pub use t1::{longest_induced_path, t1_candidates, t1_step, InducedPath, T1Candidate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Critical,
    BreakC2,
    ContractC2,
    T1,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Critical => "critical",
            Rule::BreakC2 => "break-c2",
            Rule::ContractC2 => "contract-c2",
            Rule::T1 => "t1",
        }
    }

    /// One application of the rule.
    pub fn apply(self, g: &Digraph) -> Result<TransformOutcome> {
        match self {
            Rule::Critical => remove_non_critical(g),
            Rule::BreakC2 => match find_c2_bridge(g)? {
                Some(p) => break_c2(g, &p),
                None => TransformOutcome::unchanged(self, g),
            },
            Rule::ContractC2 => match find_c2_bridge(g)? {
                Some(p) => contract_c2(g, &p),
                None => TransformOutcome::unchanged(self, g),
            },
            Rule::T1 => t1_step(g),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "critical" => Ok(Rule::Critical),
            "break-c2" => Ok(Rule::BreakC2),
            "contract-c2" => Ok(Rule::ContractC2),
            "t1" => Ok(Rule::T1),
            other => Err(Error::arg(format!(
                "unknown rule {other:?} (expected critical, break-c2, contract-c2 or t1)"
            ))),
        }
    }
}

/// Result of one transformation attempt.
///
/// `pos_after` is the price of the candidate the rule built, also when the
/// candidate was rejected; it equals `pos_before` when there was no candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformOutcome {
    pub rule: Rule,
    pub applied: bool,
    pub result: Option<Digraph>,
    pub pos_before: i64,
    pub pos_after: i64,
}

impl TransformOutcome {
    fn unchanged(rule: Rule, g: &Digraph) -> Result<TransformOutcome> {
        let p = pos(g)?;
        Ok(TransformOutcome {
            rule,
            applied: false,
            result: None,
            pos_before: p,
            pos_after: p,
        })
    }
}

/// Transmission price; a domain error if `g` is not strongly connected.
pub(crate) fn pos(g: &Digraph) -> Result<i64> {
    transmission_price(g).ok_or_else(|| Error::not_strongly_connected("transmission price"))
}

pub(crate) fn require_strong(g: &Digraph, what: &str) -> Result<()> {
    if g.is_strongly_connected() {
        Ok(())
    } else {
        Err(Error::not_strongly_connected(what))
    }
}
