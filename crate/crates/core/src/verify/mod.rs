//! Schedule legality checking and whole-graph certification.

mod exact;

pub use exact::{exact_broadcast_time, optimal_schedule, EXACT_LIMIT};
pub(crate) use exact::search;

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::construct::Construction;
use crate::graph::{Graph, VertexId};
use crate::params::ceil_log2;
use crate::scheme::{classify, make_schedule, SchemeTag};
use crate::schedule::{Phase1Strategy, Schedule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    BusyCaller,
    BusyCallee,
    UninformedCaller,
    InformedCallee,
    NoEdge,
    UnknownVertex,
    SelfCall,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    IllegalCall { round: usize, caller: VertexId, callee: VertexId, reason: Reason },
    Incomplete { uninformed: usize, first: VertexId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IllegalCall { round, caller, callee, reason } => {
                write!(f, "round {round}: call {caller} -> {callee} is illegal ({reason:?})")
            }
            Violation::Incomplete { uninformed, first } => {
                write!(f, "{uninformed} vertices never informed, first {first}")
            }
        }
    }
}

impl std::error::Error for Violation {}

/// Replays `s` on `g` and returns the round in which the last vertex is
/// informed, or the earliest violation. Calls within a round are checked in
/// canonical order.
pub fn check_schedule(g: &Graph, s: &Schedule) -> Result<usize, Violation> {
    const NEVER: usize = usize::MAX;
    let n = g.len();
    let origin = s.originator;
    if !g.contains(origin) {
        return Err(Violation::IllegalCall { round: 0, caller: origin, callee: origin, reason: Reason::UnknownVertex });
    }
    let mut informed_at = vec![NEVER; n];
    let mut busy = vec![0usize; n];
    informed_at[origin.index()] = 0;
    let mut count = 1;
    let mut last = 0;
    for (i, calls) in s.rounds.iter().enumerate() {
        let round = i + 1;
        let mut calls = calls.clone();
        calls.sort_unstable();
        for call in calls {
            let (a, b) = (call.caller, call.callee);
            let illegal = |reason| Violation::IllegalCall { round, caller: a, callee: b, reason };
            if !g.contains(a) || !g.contains(b) {
                return Err(illegal(Reason::UnknownVertex));
            }
            if a == b {
                return Err(illegal(Reason::SelfCall));
            }
            if busy[a.index()] == round {
                return Err(illegal(Reason::BusyCaller));
            }
            if busy[b.index()] == round {
                return Err(illegal(Reason::BusyCallee));
            }
            if informed_at[a.index()] >= round {
                return Err(illegal(Reason::UninformedCaller));
            }
            if informed_at[b.index()] != NEVER {
                return Err(illegal(Reason::InformedCallee));
            }
            if !g.has_edge(a, b) {
                return Err(illegal(Reason::NoEdge));
            }
            busy[a.index()] = round;
            busy[b.index()] = round;
            informed_at[b.index()] = round;
            count += 1;
            last = round;
        }
    }
    if count < n {
        let first = informed_at.iter().position(|&r| r == NEVER).unwrap();
        return Err(Violation::Incomplete { uninformed: n - count, first: VertexId(first as u32) });
    }
    Ok(last)
}

/// Outcome for one originator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OriginatorResult {
    pub originator: VertexId,
    pub case: Option<SchemeTag>,
    pub completes_at: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<Phase1Strategy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub originator: VertexId,
    pub message: String,
}

/// `pass` holds iff every originator's schedule is legal and completes by
/// `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificationReport {
    pub graph: String,
    pub n: usize,
    pub edges: usize,
    pub target: usize,
    pub checked: usize,
    pub max_round: usize,
    pub pass: bool,
    pub first_failure: Option<Failure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub results: Vec<OriginatorResult>,
}

impl CertificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Drops the per-originator rows, keeping the aggregate.
    pub fn brief(mut self) -> Self {
        self.results.clear();
        self
    }
}

fn certify_one(c: &Construction, u: VertexId) -> OriginatorResult {
    let case = classify(c, u).ok().map(|s| s.tag);
    let mut r = OriginatorResult { originator: u, case, completes_at: None, strategy: None, error: None };
    match make_schedule(c, u) {
        Ok(s) => {
            r.strategy = s.phase1_strategy;
            match check_schedule(&c.graph, &s) {
                Ok(round) => r.completes_at = Some(round),
                Err(v) => r.error = Some(v.to_string()),
            }
        }
        Err(e) => r.error = Some(e.to_string()),
    }
    r
}

/// Generates and checks a schedule for each originator (every vertex when
/// `originators` is `None`). `jobs = 0` uses all cores; the report does not
/// depend on `jobs`.
pub fn certify_graph(c: &Construction, originators: Option<&[VertexId]>, jobs: usize) -> CertificationReport {
    let all: Vec<VertexId>;
    let list = match originators {
        Some(list) => list,
        None => {
            all = c.graph.vertices().collect();
            &all
        }
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    let results: Vec<OriginatorResult> = pool.install(|| list.par_iter().map(|&u| certify_one(c, u)).collect());

    let target = ceil_log2(c.graph.len() as u64) as usize;
    let mut first_failure = None;
    for r in &results {
        let message = match (r.completes_at, &r.error) {
            (_, Some(e)) => e.clone(),
            (Some(round), None) if round > target => format!("completes at round {round} > {target}"),
            _ => continue,
        };
        first_failure = Some(Failure { originator: r.originator, message });
        break;
    }
    let p = c.params;
    CertificationReport {
        graph: format!("t{}-k{}-n{}", p.t, p.k, p.n),
        n: c.graph.len(),
        edges: c.graph.edge_count(),
        target,
        checked: results.len(),
        max_round: results.iter().filter_map(|r| r.completes_at).max().unwrap_or(0),
        pass: first_failure.is_none(),
        first_failure,
        results,
    }
}
