//! Broadcast schedules for every originator of a constructed graph.
//!
//! Phase 1 (rounds `1..=k`) informs every surviving root over the hypercube
//! and the attachment edges; phase 2 (rounds `k+1..=t+1`) broadcasts each tree
//! from its root.

use serde::Serialize;

use crate::construct::Construction;
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::primitives::{sweep_rounds, tree_rounds, Hypercube};
use crate::schedule::{Call, Phase1Strategy, Schedule};
use crate::verify::search;

/// Which rule of the scheme applies to an originator. `C1x` tags belong to the
/// full graph and `C2x` to pruned ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SchemeTag {
    /// A root or `w`.
    C11,
    /// A non-root vertex of a tree rooted in the upper half.
    C12,
    /// A non-root vertex of a tree rooted in the lower half.
    C13,
    C21,
    C22,
    C23,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SchemeCase {
    pub tag: SchemeTag,
    pub tree: u32,
    pub code: u64,
    /// Sub-cube `Q^i` of the vertex itself when it is on the cube, otherwise of
    /// its root; `None` for `w`.
    pub subcube: Option<u32>,
    pub subtree_order: u32,
}

impl SchemeCase {
    pub fn on_cube(&self) -> bool {
        matches!(self.tag, SchemeTag::C11 | SchemeTag::C21)
    }
}

pub fn classify(c: &Construction, u: VertexId) -> Result<SchemeCase> {
    let (tree, code) = c.locate(u).ok_or_else(|| Error::unknown(u))?;
    let pruned = !c.params.is_full();
    let on_cube = code == 0 || c.is_w(tree, code);
    let (tag, subcube) = if on_cube {
        let coord = if code == 0 { c.layout.coord(tree) } else { 0 };
        (if pruned { SchemeTag::C21 } else { SchemeTag::C11 }, Hypercube::subcube_of(coord))
    } else if c.layout.in_upper_half(tree) {
        (if pruned { SchemeTag::C22 } else { SchemeTag::C12 }, Some(c.layout.subcube_of_tree(tree)))
    } else {
        (if pruned { SchemeTag::C23 } else { SchemeTag::C13 }, Some(c.layout.subcube_of_tree(tree)))
    };
    Ok(SchemeCase { tag, tree, code, subcube, subtree_order: c.tree().subtree_order(code) })
}

/// Schedule from `u`, trying the constructive phase 1 first, then greedy, then
/// exact search; the strategy used is recorded on the schedule.
pub fn make_schedule(c: &Construction, u: VertexId) -> Result<Schedule> {
    let mut overrun = None;
    for strategy in [Phase1Strategy::Constructive, Phase1Strategy::Greedy, Phase1Strategy::Exact] {
        match make_schedule_with(c, u, strategy) {
            Err(e @ Error::SchemePhaseOverrun { .. }) => overrun = Some(e),
            other => return other,
        }
    }
    Err(overrun.expect("at least one strategy ran"))
}

/// Schedule from `u` with a fixed phase-1 strategy.
pub fn make_schedule_with(c: &Construction, u: VertexId, strategy: Phase1Strategy) -> Result<Schedule> {
    let case = classify(c, u)?;
    let k = c.params.k as usize;
    let phase = match strategy {
        Phase1Strategy::Constructive => constructive_phase(c, u, &case),
        Phase1Strategy::Greedy => greedy_phase(c, u),
        Phase1Strategy::Exact => exact_phase(c, u)?,
    };

    let mut informed = vec![false; c.graph.len()];
    informed[u.index()] = true;
    let mut s = Schedule::new(u);
    s.phase1_strategy = Some(strategy);
    for (i, calls) in phase.iter().enumerate() {
        for &call in calls {
            informed[call.callee.index()] = true;
            s.push(i + 1, call);
        }
    }
    let missing = (1..=c.layout.tree_count()).filter_map(|t| c.id(t, 0)).filter(|r| !informed[r.index()]).count();
    if phase.len() > k || missing > 0 {
        return Err(Error::SchemePhaseOverrun { round: k, uninformed: missing });
    }

    let tree = c.tree();
    for t in 1..=c.layout.tree_count() {
        if !c.is_alive(t, 0) {
            continue;
        }
        let pre: Vec<u64> = (0..tree.size())
            .filter(|&code| c.id(t, code).is_some_and(|v| informed[v.index()]))
            .collect();
        let rounds = tree_rounds(&tree, |code| c.is_alive(t, code), |code| pre.binary_search(&code).is_ok());
        for (i, calls) in rounds.into_iter().enumerate() {
            for (a, b) in calls {
                let id = |code| c.id(t, code).expect("tree calls stay on live vertices");
                s.push(k + 1 + i, Call::new(id(a), id(b)));
            }
        }
    }
    s.normalize();
    Ok(s)
}

struct Phase<'a> {
    c: &'a Construction,
    rounds: Vec<Vec<Call>>,
}

impl Phase<'_> {
    fn call(&mut self, round: usize, a: VertexId, b: VertexId) {
        if self.rounds.len() < round {
            self.rounds.resize_with(round, Vec::new);
        }
        self.rounds[round - 1].push(Call::new(a, b));
    }

    /// Sweeps `dims` from cube coordinate `start` beginning at `first_round`.
    fn sweep(&mut self, start: u64, dims: &[u32], first_round: usize) {
        let c = self.c;
        for (i, calls) in sweep_rounds(start, dims, |x| c.cube_id(x).is_some()).into_iter().enumerate() {
            for (a, b) in calls {
                self.call(first_round + i, c.cube_id(a).unwrap(), c.cube_id(b).unwrap());
            }
        }
    }
}

fn constructive_phase(c: &Construction, u: VertexId, case: &SchemeCase) -> Vec<Vec<Call>> {
    let k = c.params.k;
    let half = c.layout.half();
    let upper_dims: Vec<u32> = (0..k - 1).collect();
    let mut ph = Phase { c, rounds: Vec::new() };

    if case.on_cube() {
        let coord = if case.code == 0 { c.layout.coord(case.tree) } else { 0 };
        let partner = match c.cube_id(coord ^ half) {
            Some(_) => Some(coord ^ half),
            None => c.deletion.replacement_of(coord),
        };
        let Some(partner) = partner else { return ph.rounds };
        ph.call(1, u, c.cube_id(partner).unwrap());
        let (up, low) = if coord >= half { (coord, partner) } else { (partner, coord) };
        ph.sweep(up, &upper_dims, 2);
        ph.sweep(low, &lower_half_dims(low, c.deletion.dead_below, k), 2);
        return ph.rounds;
    }

    let own_root = c.id(case.tree, 0).expect("a live vertex has a live root");
    let own_sub = c.layout.subcube_of_tree(case.tree);
    if c.layout.in_upper_half(case.tree) {
        ph.call(1, u, own_root);
        ph.sweep(c.layout.coord(case.tree), &upper_dims, 2);
    } else {
        ph.call(1, u, c.id(c.layout.r_k(), 0).unwrap());
        ph.sweep(half, &upper_dims, 2);
    }
    for i in 2..=k {
        let sub = k - i;
        let dims: Vec<u32> = (0..sub).collect();
        if sub == own_sub && !c.layout.in_upper_half(case.tree) {
            // the designated root of u's own sub-cube is not a neighbor of u
            ph.call(i as usize, u, own_root);
            ph.sweep(c.layout.coord(case.tree), &dims, i as usize + 1);
        } else if let Some(r) = c.id(c.layout.designated(sub), 0) {
            ph.call(i as usize, u, r);
            ph.sweep(1 << sub, &dims, i as usize + 1);
        }
    }
    ph.rounds
}

/// Dimension order for the lower half from `start`: the dimensions below the
/// dead region first, then the upper ones with one set bit of `start` last,
/// so only the dead block itself is skipped.
fn lower_half_dims(start: u64, dead_below: u64, k: u32) -> Vec<u32> {
    let p = dead_below.trailing_zeros().min(k - 1) * u32::from(dead_below > 0);
    let mut dims: Vec<u32> = (0..p).collect();
    let mut high: Vec<u32> = (p..k - 1).collect();
    if let Some(i) = high.iter().position(|&d| start >> d & 1 == 1) {
        let d = high.remove(i);
        high.push(d);
    }
    dims.extend(high);
    dims
}

fn coord_of(c: &Construction, v: VertexId) -> Option<u64> {
    let (tree, code) = c.locate(v)?;
    if code == 0 {
        Some(c.layout.coord(tree))
    } else if c.is_w(tree, code) {
        Some(0)
    } else {
        None
    }
}

/// Cube vertices plus `u`, in id order.
fn phase_vertices(c: &Construction, u: VertexId) -> Vec<VertexId> {
    let mut vs: Vec<VertexId> = (0..c.layout.cube().size()).filter_map(|x| c.cube_id(x)).collect();
    vs.push(u);
    vs.sort_unstable();
    vs.dedup();
    vs
}

fn greedy_phase(c: &Construction, u: VertexId) -> Vec<Vec<Call>> {
    let k = c.params.k;
    let top = 1u64 << (k - 1);
    let vs = phase_vertices(c, u);
    let mut informed = vec![u];
    let mut rounds = Vec::new();
    // cross and replacement edges first, then the lowest dimension
    let priority = |a: VertexId, b: VertexId| match (coord_of(c, a), coord_of(c, b)) {
        (Some(x), Some(y)) => {
            let diff = x ^ y;
            let straight = diff.count_ones() == 1 && diff != top;
            (straight, diff.trailing_zeros(), b)
        }
        (_, Some(y)) => (false, k - Hypercube::subcube_of(y).map_or(0, |s| s + 1), b),
        _ => (true, k, b),
    };
    for _ in 0..k {
        let mut calls = Vec::new();
        let mut taken: Vec<VertexId> = Vec::new();
        for &a in &informed {
            let best = vs
                .iter()
                .copied()
                .filter(|&b| !informed.contains(&b) && !taken.contains(&b) && c.graph.has_edge(a, b))
                .min_by_key(|&b| priority(a, b));
            if let Some(b) = best {
                taken.push(b);
                calls.push(Call::new(a, b));
            }
        }
        if calls.is_empty() {
            break;
        }
        informed.extend(taken);
        informed.sort_unstable();
        rounds.push(calls);
    }
    rounds
}

/// Largest phase-1 subgraph handed to exact search.
const EXACT_PHASE_LIMIT: usize = 24;

fn exact_phase(c: &Construction, u: VertexId) -> Result<Vec<Vec<Call>>> {
    let k = c.params.k;
    let vs = phase_vertices(c, u);
    let overrun = |missing| Error::SchemePhaseOverrun { round: k as usize, uninformed: missing };
    if vs.len() > EXACT_PHASE_LIMIT {
        return Err(overrun(vs.len()));
    }
    let adj: Vec<u32> = vs
        .iter()
        .map(|&a| vs.iter().enumerate().filter(|&(_, &b)| c.graph.has_edge(a, b)).fold(0, |m, (j, _)| m | 1 << j))
        .collect();
    let start = 1u32 << vs.binary_search(&u).unwrap();
    let target = vs
        .iter()
        .enumerate()
        .filter(|&(_, &v)| c.locate(v).is_some_and(|(_, code)| code == 0))
        .fold(start, |m, (j, _)| m | 1 << j);
    let witness = search(&adj, start, target, k).ok_or_else(|| overrun(target.count_ones() as usize))?;
    Ok(witness
        .into_iter()
        .map(|round| round.into_iter().map(|(a, b)| Call::new(vs[a], vs[b])).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build;
    use crate::params::make_params;
    use crate::verify::check_schedule;

    fn all_pass(t: u32, k: u32, n: u64, strategy: Option<Phase1Strategy>) {
        let c = build(&make_params(t, k, n).unwrap()).unwrap();
        for u in c.graph.vertices() {
            let s = match strategy {
                Some(st) => make_schedule_with(&c, u, st).unwrap(),
                None => make_schedule(&c, u).unwrap(),
            };
            let round = check_schedule(&c.graph, &s).unwrap_or_else(|e| panic!("n={n} u={u}: {e}"));
            assert!(round <= t as usize + 1, "n={n} u={u} round {round}");
        }
    }

    #[test]
    fn classification() {
        let c = build(&make_params(7, 2, 192).unwrap()).unwrap();
        let rk = c.id(2, 0).unwrap();
        assert_eq!(classify(&c, rk).unwrap().tag, SchemeTag::C11);
        let w = c.id(1, c.layout.w_code()).unwrap();
        let wc = classify(&c, w).unwrap();
        assert_eq!((wc.tag, wc.subcube), (SchemeTag::C11, None));
        assert_eq!(classify(&c, c.id(3, 5).unwrap()).unwrap().tag, SchemeTag::C12);
        assert_eq!(classify(&c, c.id(1, 5).unwrap()).unwrap().tag, SchemeTag::C13);
        assert!(classify(&c, VertexId(5000)).is_err());
    }

    #[test]
    fn constructive_phase_suffices_on_small_graphs() {
        let p = Some(Phase1Strategy::Constructive);
        all_pass(7, 2, 192, p);
        all_pass(7, 2, 150, p);
        all_pass(7, 3, 191, p);
        all_pass(7, 3, 161, p);
        all_pass(8, 3, 300, p);
        all_pass(8, 3, 257, p);
    }

    #[test]
    fn fallbacks_are_legal_where_they_succeed() {
        let c = build(&make_params(8, 3, 300).unwrap()).unwrap();
        for u in c.graph.vertices().step_by(7) {
            for st in [Phase1Strategy::Greedy, Phase1Strategy::Exact] {
                match make_schedule_with(&c, u, st) {
                    Ok(s) => assert!(check_schedule(&c.graph, &s).unwrap() <= 9),
                    Err(e) => assert!(matches!(e, Error::SchemePhaseOverrun { .. }), "{e}"),
                }
            }
        }
        let s = make_schedule_with(&c, c.id(3, 0).unwrap(), Phase1Strategy::Exact).unwrap();
        assert_eq!(s.phase1_strategy, Some(Phase1Strategy::Exact));
    }

    #[test]
    fn lower_dims_put_a_start_bit_last() {
        assert_eq!(lower_half_dims(0b0110, 0b0100, 5), [0, 1, 3, 2]);
        assert_eq!(lower_half_dims(0b0011, 0, 3), [1, 0]);
        assert_eq!(lower_half_dims(0, 0, 3), [0, 1]);
    }
}
