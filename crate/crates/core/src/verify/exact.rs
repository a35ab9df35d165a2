//! Exact broadcast time by search over informed sets.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::schedule::{Call, Schedule};

/// Largest graph accepted by [`exact_broadcast_time`].
pub const EXACT_LIMIT: usize = 16;

/// Calls per round over mask-graph indices.
pub(crate) type Witness = Vec<Vec<(usize, usize)>>;

/// Fewest rounds that inform every vertex of `target` from `start`, with a
/// witness, or `None` when `target` is unreachable or needs more than
/// `max_rounds`. `adj[v]` is the neighbor mask of vertex `v`.
pub(crate) fn search(adj: &[u32], start: u32, target: u32, max_rounds: u32) -> Option<Witness> {
    assert!(adj.len() <= 32);
    let mut reach = start;
    loop {
        let next = (0..adj.len()).filter(|&v| reach >> v & 1 == 1).fold(reach, |m, v| m | adj[v]);
        if next == reach {
            break;
        }
        reach = next;
    }
    if target & !reach != 0 {
        return None;
    }
    let mut s = Search { adj, target, failed: HashSet::new() };
    (0..=max_rounds).find_map(|d| s.feasible(start, d))
}

struct Search<'a> {
    adj: &'a [u32],
    target: u32,
    failed: HashSet<(u32, u32)>,
}

impl Search<'_> {
    fn feasible(&mut self, informed: u32, rounds: u32) -> Option<Witness> {
        if informed & self.target == self.target {
            return Some(Vec::new());
        }
        if rounds == 0 || self.failed.contains(&(informed, rounds)) {
            return None;
        }
        // each round at most doubles the informed set
        let have = informed.count_ones() as u64;
        if ((informed | self.target).count_ones() as u64) > have << rounds {
            self.failed.insert((informed, rounds));
            return None;
        }
        let mut options = self.maximal_rounds(informed);
        options.sort_by_key(|(mask, _)| std::cmp::Reverse(mask.count_ones()));
        for (gained, calls) in options {
            if let Some(mut rest) = self.feasible(informed | gained, rounds - 1) {
                rest.insert(0, calls);
                return Some(rest);
            }
        }
        self.failed.insert((informed, rounds));
        None
    }

    /// Every maximal set of disjoint informed-to-uninformed calls, keyed by
    /// the newly informed mask.
    fn maximal_rounds(&self, informed: u32) -> Vec<(u32, Vec<(usize, usize)>)> {
        let callers: Vec<usize> = (0..self.adj.len())
            .filter(|&v| informed >> v & 1 == 1 && self.adj[v] & !informed != 0)
            .collect();
        let mut out = HashMap::new();
        let mut calls = Vec::new();
        self.extend(&callers, 0, informed, 0, 0, &mut calls, &mut out);
        let mut out: Vec<_> = out.into_iter().collect();
        out.sort_unstable();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        callers: &[usize],
        i: usize,
        informed: u32,
        used: u32,
        idle: u32,
        calls: &mut Vec<(usize, usize)>,
        out: &mut HashMap<u32, Vec<(usize, usize)>>,
    ) {
        if i == callers.len() {
            let blocked = (0..self.adj.len()).any(|v| idle >> v & 1 == 1 && self.adj[v] & !informed & !used != 0);
            if used != 0 && !blocked {
                out.entry(used).or_insert_with(|| calls.clone());
            }
            return;
        }
        let v = callers[i];
        let mut free = self.adj[v] & !informed & !used;
        while free != 0 {
            let c = free.trailing_zeros() as usize;
            free &= free - 1;
            calls.push((v, c));
            self.extend(callers, i + 1, informed, used | 1 << c, idle, calls, out);
            calls.pop();
        }
        self.extend(callers, i + 1, informed, used, idle | 1 << v, calls, out);
    }
}

fn masks(g: &Graph) -> Result<Vec<u32>> {
    if g.len() > EXACT_LIMIT {
        return Err(Error::TooLarge(g.len()));
    }
    Ok(g.vertices().map(|v| g.neighbors(v).iter().fold(0u32, |m, w| m | 1 << w.0)).collect())
}

/// Minimum number of rounds to inform all of `g` from `u`.
pub fn exact_broadcast_time(g: &Graph, u: VertexId) -> Result<u32> {
    Ok(optimal_schedule(g, u)?.completes_at() as u32)
}

/// An optimal broadcast schedule from `u`.
pub fn optimal_schedule(g: &Graph, u: VertexId) -> Result<Schedule> {
    let adj = masks(g)?;
    if !g.contains(u) {
        return Err(Error::unknown(u));
    }
    let all = if g.len() == 32 { u32::MAX } else { (1u32 << g.len()) - 1 };
    let witness = search(&adj, 1 << u.0, all, g.len() as u32)
        .ok_or_else(|| Error::InvalidGraph("graph is not connected".into()))?;
    let mut s = Schedule::new(u);
    for (i, round) in witness.into_iter().enumerate() {
        for (a, b) in round {
            s.push(i + 1, Call::new(VertexId(a as u32), VertexId(b as u32)));
        }
    }
    s.normalize();
    Ok(s)
}
