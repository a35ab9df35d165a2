use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphMeta, VertexId, VertexLabel};
use crate::schedule::{Call, Schedule};

/// Binomial tree of a given order, with vertices addressed by position code.
///
/// A code is an `order`-bit integer. The root is `0`; the parent of a non-zero
/// code clears its lowest set bit, so the children of `v` are `v | 2^i` for
/// every `i` below the trailing-zero count of `v`. That count is the subtree
/// order of `v`, and the popcount is its depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinomialTree {
    order: u32,
}

impl BinomialTree {
    pub fn new(order: u32) -> Self {
        assert!(order < 64, "binomial tree order {order} too large");
        BinomialTree { order }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn size(&self) -> u64 {
        1 << self.order
    }

    pub fn height(&self) -> u32 {
        self.order
    }

    pub fn root(&self) -> u64 {
        0
    }

    pub fn contains(&self, v: u64) -> bool {
        v < self.size()
    }

    pub fn parent(&self, v: u64) -> Option<u64> {
        (v != 0).then(|| v & (v - 1))
    }

    /// Distance from `v` to its farthest descendant leaf.
    pub fn subtree_order(&self, v: u64) -> u32 {
        if v == 0 {
            self.order
        } else {
            v.trailing_zeros()
        }
    }

    pub fn depth(&self, v: u64) -> u32 {
        v.count_ones()
    }

    /// Children in decreasing subtree order.
    pub fn children(&self, v: u64) -> impl Iterator<Item = u64> {
        (0..self.subtree_order(v)).rev().map(move |i| v | (1 << i))
    }

    /// The deepest leaf reached by always entering the largest child.
    pub fn farthest_leaf(&self) -> u64 {
        self.size() - 1
    }

    /// Position string; empty for the root.
    pub fn position(&self, v: u64) -> BitString {
        if v == 0 {
            BitString::empty()
        } else {
            BitString::new(v, self.order as u8)
        }
    }

    pub fn code_of(&self, pos: &BitString) -> Option<u64> {
        if pos.is_empty() {
            Some(0)
        } else if pos.len() as u32 == self.order && pos.value() != 0 {
            Some(pos.value())
        } else {
            None
        }
    }

    /// Stand-alone graph of the tree (tree index 1); vertex ids equal codes.
    pub fn graph(&self) -> Graph {
        let labels = (0..self.size())
            .map(|v| VertexLabel { tree: Some(1), pos: self.position(v), cube: None })
            .collect();
        let edges = (1..self.size())
            .map(|v| (VertexId(self.parent(v).unwrap() as u32), VertexId(v as u32)))
            .collect();
        Graph::from_sorted_ids(labels, edges, GraphMeta::default())
            .expect("binomial tree is a simple graph")
    }
}

/// Greedy tree broadcast over the surviving vertices of a (possibly pruned) tree.
///
/// Each round every informed vertex calls its largest-order child that is alive
/// and still uninformed. `alive` must be closed under taking parents and
/// contain the root; `informed` marks vertices that already hold the message.
/// Returns calls per relative round (index 0 is the first round); when the
/// root is informed everything alive is reached within `order` rounds.
pub(crate) fn tree_rounds(
    tree: &BinomialTree,
    alive: impl Fn(u64) -> bool,
    informed: impl Fn(u64) -> bool,
) -> Vec<Vec<(u64, u64)>> {
    let size = tree.size() as usize;
    let mut is_informed = vec![false; size];
    let mut next = vec![0u32; size];
    let mut holders = Vec::new();
    for v in 0..tree.size() {
        if alive(v) && informed(v) {
            is_informed[v as usize] = true;
            next[v as usize] = tree.subtree_order(v);
            holders.push(v);
        }
    }
    let mut rounds = Vec::new();
    loop {
        let mut calls = Vec::new();
        for &v in &holders {
            let slot = &mut next[v as usize];
            while *slot > 0 {
                *slot -= 1;
                let c = v | (1 << *slot);
                if alive(c) && !is_informed[c as usize] {
                    calls.push((v, c));
                    break;
                }
            }
        }
        if calls.is_empty() {
            break;
        }
        for &(_, c) in &calls {
            is_informed[c as usize] = true;
            next[c as usize] = tree.subtree_order(c);
            holders.push(c);
        }
        rounds.push(calls);
    }
    rounds
}

/// Broadcast over a full binomial tree starting at `start_round`.
///
/// Vertices listed in `informed` are skipped as callees and call from
/// `start_round` on. The returned schedule is over [`BinomialTree::graph`],
/// with the root as originator.
pub fn binomial_schedule(tree: &BinomialTree, informed: &[u64], start_round: usize) -> Result<Schedule> {
    assert!(start_round >= 1, "rounds are numbered from 1");
    if !informed.contains(&tree.root()) {
        return Err(Error::RootNotInformed);
    }
    if let Some(&v) = informed.iter().find(|&&v| !tree.contains(v)) {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    let mut s = Schedule::new(VertexId(0));
    let rounds = tree_rounds(tree, |_| true, |v| informed.contains(&v));
    for (i, calls) in rounds.into_iter().enumerate() {
        for (a, b) in calls {
            s.push(start_round + i, Call::new(VertexId(a as u32), VertexId(b as u32)));
        }
    }
    Ok(s)
}
