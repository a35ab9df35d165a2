use std::ops::Range;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphMeta, VertexId, VertexLabel};
use crate::schedule::{Call, Schedule};

/// Hypercube of dimension `m` on `m`-bit coordinates.
///
/// The recursive decomposition is fixed canonically: the sub-cube `Q^i`
/// (`0 <= i < m`) is the set of coordinates whose highest set bit is `i`, and
/// `Q^01` is the all-zero corner. The upper half (top bit set) is `Q^(m-1)`;
/// the lower half is `Q^(m-2) ∪ ... ∪ Q^0 ∪ Q^01`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hypercube {
    dim: u32,
}

impl Hypercube {
    pub fn new(dim: u32) -> Self {
        assert!(dim < 32, "hypercube dimension {dim} too large");
        Hypercube { dim }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn size(&self) -> u64 {
        1 << self.dim
    }

    pub fn edge_count(&self) -> u64 {
        if self.dim == 0 {
            0
        } else {
            (self.dim as u64) << (self.dim - 1)
        }
    }

    pub fn neighbors(&self, c: u64) -> impl Iterator<Item = u64> {
        (0..self.dim).map(move |b| c ^ (1 << b))
    }

    /// Coordinates of `Q^i`.
    pub fn subcube(&self, i: u32) -> Range<u64> {
        assert!(i < self.dim, "sub-cube index {i} out of range");
        (1 << i)..(2 << i)
    }

    /// Index `i` of the sub-cube `Q^i` holding `c`; `None` for the corner `Q^01`.
    pub fn subcube_of(c: u64) -> Option<u32> {
        (c != 0).then(|| c.ilog2())
    }

    pub fn corner(&self) -> u64 {
        0
    }

    pub fn upper_half(&self) -> Range<u64> {
        self.subcube(self.dim - 1)
    }

    pub fn lower_half(&self) -> Range<u64> {
        0..1 << (self.dim - 1)
    }

    /// Stand-alone graph of the cube; vertex ids equal coordinates.
    pub fn graph(&self) -> Graph {
        let dim = self.dim as u8;
        let labels = (0..self.size()).map(|c| VertexLabel::cube_vertex(c, dim)).collect();
        let mut edges = Vec::new();
        for c in 0..self.size() {
            for d in self.neighbors(c).filter(|&d| d > c) {
                edges.push((VertexId(c as u32), VertexId(d as u32)));
            }
        }
        Graph::from_sorted_ids(labels, edges, GraphMeta::default()).expect("hypercube is a simple graph")
    }
}

/// Dimension sweep from `start`: in relative round `r` every vertex informed
/// before that round calls across dimension `dims[r]`, skipping callees that
/// are dead or already informed.
pub(crate) fn sweep_rounds(start: u64, dims: &[u32], alive: impl Fn(u64) -> bool) -> Vec<Vec<(u64, u64)>> {
    let mut informed = vec![start];
    let mut rounds = Vec::with_capacity(dims.len());
    for &d in dims {
        let mut calls = Vec::new();
        for &v in &informed {
            let c = v ^ (1 << d);
            if alive(c) && !informed.contains(&c) {
                calls.push((v, c));
            }
        }
        informed.extend(calls.iter().map(|&(_, c)| c));
        rounds.push(calls);
    }
    rounds
}

/// Round `i` sends along dimension `i - 1` from every informed vertex.
pub fn hypercube_schedule(cube: &Hypercube, originator: u64) -> Result<Schedule> {
    if originator >= cube.size() {
        return Err(Error::UnknownVertex(originator.to_string()));
    }
    let dims: Vec<u32> = (0..cube.dim()).collect();
    let mut s = Schedule::new(VertexId(originator as u32));
    for (i, calls) in sweep_rounds(originator, &dims, |_| true).into_iter().enumerate() {
        for (a, b) in calls {
            s.push(i + 1, Call::new(VertexId(a as u32), VertexId(b as u32)));
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        for (m, n, e) in [(0, 1, 0), (2, 4, 4), (4, 16, 32)] {
            let cube = Hypercube::new(m);
            let g = cube.graph();
            assert_eq!(g.len(), n);
            assert_eq!(g.edge_count(), e);
            assert_eq!(cube.edge_count(), e as u64);
            for v in g.vertices() {
                assert_eq!(g.degree(v).unwrap(), m as usize);
            }
        }
    }

    #[test]
    fn decomposition_partitions_lower_half() {
        let cube = Hypercube::new(5);
        assert_eq!(cube.upper_half(), cube.subcube(4));
        let mut covered = vec![cube.corner()];
        for i in 0..4 {
            covered.extend(cube.subcube(i));
        }
        covered.sort_unstable();
        assert_eq!(covered, cube.lower_half().collect::<Vec<_>>());
        for i in 0..5 {
            assert!(cube.subcube(i).all(|c| Hypercube::subcube_of(c) == Some(i)));
        }
        assert_eq!(Hypercube::subcube_of(0), None);
    }

    #[test]
    fn halves_are_matched() {
        let cube = Hypercube::new(4);
        let half = 1 << 3;
        let partners: Vec<u64> = cube.upper_half().map(|c| c ^ half).collect();
        assert_eq!(partners, cube.lower_half().collect::<Vec<_>>());
    }

    #[test]
    fn schedules() {
        let s0 = hypercube_schedule(&Hypercube::new(0), 0).unwrap();
        assert_eq!(s0.completes_at(), 0);
        for origin in 0..4 {
            let s = hypercube_schedule(&Hypercube::new(2), origin).unwrap();
            assert_eq!((s.completes_at(), s.call_count()), (2, 3));
        }
        let s4 = hypercube_schedule(&Hypercube::new(4), 0).unwrap();
        assert_eq!(s4.completes_at(), 4);
        assert_eq!(s4.call_count(), 15);
        let per_round: Vec<usize> = s4.rounds.iter().map(Vec::len).collect();
        assert_eq!(per_round, [1, 2, 4, 8]);
        assert!(hypercube_schedule(&Hypercube::new(2), 4).is_err());
    }
}
