use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Call {
    pub caller: VertexId,
    pub callee: VertexId,
}

impl Call {
    pub fn new(caller: VertexId, callee: VertexId) -> Self {
        Call { caller, callee }
    }
}

/// How the hypercube phase of a construction schedule was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase1Strategy {
    #[serde(rename = "paper")]
    Constructive,
    Greedy,
    Exact,
}

/// Calls grouped by round; `rounds[i]` holds the calls of round `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub originator: VertexId,
    pub rounds: Vec<Vec<Call>>,
    pub phase1_strategy: Option<Phase1Strategy>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleJson {
    originator: u32,
    rounds: Vec<Vec<[u32; 2]>>,
    completes_at: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phase1_strategy: Option<Phase1Strategy>,
}

impl Schedule {
    pub fn new(originator: VertexId) -> Self {
        Schedule { originator, rounds: Vec::new(), phase1_strategy: None }
    }

    /// Appends a call to the given 1-based round, growing the round list.
    pub fn push(&mut self, round: usize, call: Call) {
        assert!(round >= 1, "rounds are numbered from 1");
        if self.rounds.len() < round {
            self.rounds.resize_with(round, Vec::new);
        }
        self.rounds[round - 1].push(call);
    }

    /// Last round containing a call; 0 for an empty schedule.
    pub fn completes_at(&self) -> usize {
        self.rounds.iter().rposition(|r| !r.is_empty()).map_or(0, |i| i + 1)
    }

    pub fn call_count(&self) -> usize {
        self.rounds.iter().map(Vec::len).sum()
    }

    /// Drops trailing empty rounds and sorts each round's calls.
    pub fn normalize(&mut self) {
        self.rounds.truncate(self.completes_at());
        for r in &mut self.rounds {
            r.sort_unstable();
        }
    }

    pub fn calls(&self) -> impl Iterator<Item = (usize, Call)> + '_ {
        self.rounds.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |c| (i + 1, *c)))
    }

    pub fn to_json(&self) -> String {
        let doc = ScheduleJson {
            originator: self.originator.0,
            rounds: self
                .rounds
                .iter()
                .map(|r| r.iter().map(|c| [c.caller.0, c.callee.0]).collect())
                .collect(),
            completes_at: self.completes_at(),
            phase1_strategy: self.phase1_strategy,
        };
        serde_json::to_string(&doc).expect("schedule JSON serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Schedule> {
        let doc: ScheduleJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let s = Schedule {
            originator: VertexId(doc.originator),
            rounds: doc
                .rounds
                .into_iter()
                .map(|r| r.into_iter().map(|[a, b]| Call::new(VertexId(a), VertexId(b))).collect())
                .collect(),
            phase1_strategy: doc.phase1_strategy,
        };
        if s.completes_at() != doc.completes_at {
            return Err(Error::Parse(format!(
                "completes_at = {} but last non-empty round is {}",
                doc.completes_at,
                s.completes_at()
            )));
        }
        Ok(s)
    }
}
