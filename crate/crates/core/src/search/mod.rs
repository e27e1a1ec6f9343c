//! Exhaustive and heuristic searches for digraphs with a large price.

mod enumerate;
mod heuristic;
pub mod random;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::invariants::{diameter, domination_number, transmission_price};
use crate::io;
use crate::iso::CanonicalForm;

pub use enumerate::{
    digraph_classes, enumerate_digraphs, enumerate_strongly_connected, enumerate_tournaments,
    strongly_connected_classes, strongly_connected_tournament_classes, tournament_classes,
    DIGRAPH_ENUM_MAX_ORDER, TOURNAMENT_ENUM_MAX_ORDER,
};
pub use heuristic::{hill_climb, HillClimbConfig, RestartTrace, StartFamily};
pub use verify::{
    exhaustive_search, tournament_extremality, verify_conjecture, verify_theorems, ConjectureReport, FamilyCheck,
    RankedClass, TheoremReport, TournamentReport, THEOREM_MAX_ORDER,
};

/// Quantity maximised by a search: the difference price of an invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Sigma,
    Diameter,
    Domination,
}

impl Objective {
    pub fn name(self) -> &'static str {
        match self {
            Objective::Sigma => "sigma",
            Objective::Diameter => "diameter",
            Objective::Domination => "domination",
        }
    }

    /// The price on `g`; `None` when it is undefined (distance invariants
    /// on digraphs that are not strongly connected).
    pub fn value(self, g: &Digraph) -> Option<i64> {
        match self {
            Objective::Sigma => transmission_price(g),
            Objective::Diameter => {
                let d = diameter(g).ok()?;
                let s = diameter(&g.symmetric_closure()).ok()?;
                Some(i64::from(d) - i64::from(s))
            }
            Objective::Domination => {
                let a = domination_number(g).ok()? as i64;
                let b = domination_number(&g.symmetric_closure()).ok()? as i64;
                Some((a - b).abs())
            }
        }
    }

    /// Whether the exhaustive domain is restricted to strongly connected digraphs.
    pub fn needs_strong(self) -> bool {
        !matches!(self, Objective::Domination)
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sigma" | "transmission" => Ok(Objective::Sigma),
            "diameter" => Ok(Objective::Diameter),
            "domination" => Ok(Objective::Domination),
            other => Err(Error::arg(format!(
                "unknown objective {other:?} (expected sigma, diameter or domination)"
            ))),
        }
    }
}

/// Best value found by a search and the graphs achieving it.
#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub n: usize,
    pub objective: Objective,
    pub best_value: i64,
    /// Canonical forms of the optimal classes found; empty above order 10.
    pub maximizers: Vec<CanonicalForm>,
    /// One digraph per optimal class found, in the text graph format.
    #[serde(serialize_with = "graphs_as_text")]
    pub graphs: Vec<Digraph>,
    /// True when the maximiser list is provably complete.
    pub exhaustive: bool,
    pub graphs_visited: u64,
    pub elapsed: f64,
    /// Per-restart log of heuristic runs; empty for exhaustive ones.
    pub trace: Vec<RestartTrace>,
}

impl SearchOutcome {
    /// Everything except the wall-clock time agrees.
    pub fn same_result(&self, other: &SearchOutcome) -> bool {
        self.n == other.n
            && self.objective == other.objective
            && self.best_value == other.best_value
            && self.maximizers == other.maximizers
            && self.graphs == other.graphs
            && self.exhaustive == other.exhaustive
            && self.graphs_visited == other.graphs_visited
            && self.trace == other.trace
    }
}

pub(crate) fn graphs_as_text<S: Serializer>(gs: &[Digraph], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(gs.iter().map(io::to_text))
}
