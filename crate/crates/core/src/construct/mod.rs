//! The full graph on `N = (2^k - 1) 2^(t+1-k)` vertices and its pruned
//! variants for `2^t < n < N`.
//!
//! Every vertex not in `R ∪ {w}` is joined to its own root, to `r_k` when its
//! root lies in the lower half `Q_2^(k-1)`, and to the `V_1` roots: all of them
//! for upper-half trees, all but the designated root `r_{i+1}` of its sub-cube
//! `Q^i` otherwise. Pruning deletes whole trees for the lowest sub-cubes and
//! then individual vertices leaves-first, and patches the cube matching.

mod accounting;
mod layout;

pub use accounting::{audit_edges, classify_edge, AccountingItem, DeletionAccounting, EdgeAccounting, EdgeClass};
pub use layout::CaseOneLayout;

use serde::Serialize;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphMeta, VertexId, VertexLabel};
use crate::params::ConstructionParams;
use crate::primitives::BinomialTree;

const DEAD: u32 = u32::MAX;

/// What the pruning step removed from the full graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Deletion {
    /// Cube coordinates below this bound lost their whole tree (`2^p`, or 0).
    pub dead_below: u64,
    /// Individually deleted non-root vertices, per tree, in deletion order.
    pub pruned: Vec<(u32, Vec<u64>)>,
    /// Edges `(b, receiver)` between cube coordinates that re-match upper-half
    /// roots whose lower-half partner was deleted.
    pub replacement: Vec<(u64, u64)>,
}

impl Deletion {
    pub fn coord_alive(&self, coord: u64) -> bool {
        coord >= self.dead_below
    }

    pub fn w_alive(&self) -> bool {
        self.dead_below == 0
    }

    pub fn pruned_count(&self) -> u64 {
        self.pruned.iter().map(|(_, v)| v.len() as u64).sum()
    }

    /// Replacement partner of an upper-half coordinate, if it has one.
    pub fn replacement_of(&self, coord: u64) -> Option<u64> {
        self.replacement.iter().find(|&&(b, _)| b == coord).map(|&(_, r)| r)
    }
}

/// A built graph together with the structure it was built from.
#[derive(Clone, Debug)]
pub struct Construction {
    pub params: ConstructionParams,
    pub layout: CaseOneLayout,
    pub deletion: Deletion,
    pub graph: Graph,
    ids: Vec<Vec<u32>>,
}

impl Construction {
    pub fn tree(&self) -> BinomialTree {
        BinomialTree::new(self.layout.tree_order())
    }

    /// Graph id of the vertex at `code` in tree `tree`, if it survived.
    pub fn id(&self, tree: u32, code: u64) -> Option<VertexId> {
        let raw = *self.ids.get(tree as usize - 1)?.get(code as usize)?;
        (raw != DEAD).then_some(VertexId(raw))
    }

    pub fn is_alive(&self, tree: u32, code: u64) -> bool {
        self.id(tree, code).is_some()
    }

    /// `(tree, code)` of a graph vertex.
    pub fn locate(&self, v: VertexId) -> Option<(u32, u64)> {
        let label = self.graph.label(v)?;
        let tree = label.tree?;
        Some((tree, self.tree().code_of(&label.pos)?))
    }

    /// Graph id of the cube vertex at `coord` (a root or `w`), if present.
    pub fn cube_id(&self, coord: u64) -> Option<VertexId> {
        match self.layout.tree_at(coord) {
            Some(tree) => self.id(tree, 0),
            None => self.id(1, self.layout.w_code()),
        }
    }

    pub fn is_w(&self, tree: u32, code: u64) -> bool {
        tree == 1 && code == self.layout.w_code()
    }
}

/// Full construction; requires `n = N`.
pub fn build_case1(params: &ConstructionParams) -> Result<Construction> {
    if !params.is_full() {
        return Err(Error::ParamOutOfRange(format!(
            "n = {} but the full construction needs n = N = {}",
            params.n, params.big_n
        )));
    }
    build(params)
}

/// Pruned construction; requires `2^t < n < N`.
pub fn build_case2(params: &ConstructionParams) -> Result<Construction> {
    if params.is_full() {
        return Err(Error::ParamOutOfRange(format!(
            "n = N = {} calls for the full construction",
            params.n
        )));
    }
    build(params)
}

/// Builds either case depending on `params.n`.
pub fn build(params: &ConstructionParams) -> Result<Construction> {
    let layout = CaseOneLayout::new(params.k, params.tree_order());
    let deletion = plan_deletion(params, &layout)?;
    assemble(*params, layout, deletion)
}

/// Trees in the order they give up vertices, and how many vertices to take.
fn plan_deletion(params: &ConstructionParams, layout: &CaseOneLayout) -> Result<Deletion> {
    let mut deletion = Deletion::default();
    if params.is_full() {
        return Ok(deletion);
    }
    let k = params.k;
    let tree_size = params.tree_size();
    let (order, count): (Vec<u32>, u64) = if params.x == 0 {
        // upper-half V_2 trees first, highest index first; B_1 keeps w and is never touched
        let mut upper: Vec<u32> = (1..=layout.tree_count()).filter(|&t| layout.in_upper_half(t)).collect();
        upper.sort_unstable_by(|a, b| b.cmp(a));
        let lower = lower_half_order(layout, 0).into_iter().filter(|&t| t != 1);
        (upper.into_iter().chain(lower).collect(), params.y)
    } else {
        let p = params.p;
        deletion.dead_below = 1 << p;
        let mut upper: Vec<u32> = (1..=layout.tree_count()).filter(|&t| layout.in_upper_half(t)).collect();
        upper.sort_unstable_by(|a, b| b.cmp(a));
        let order = lower_half_order(layout, p).into_iter().chain(upper).collect();
        let whole_trees = (1u64 << p) - 1;
        (order, tree_size * (params.x - whole_trees) + params.y)
    };

    let tree = BinomialTree::new(params.tree_order());
    // vertices at depth >= 2, deepest first: removing them costs k + 1 edges each
    let mut removable: Vec<u64> = (0..tree.size()).filter(|&v| tree.depth(v) >= 2).collect();
    removable.sort_unstable_by(|&a, &b| tree.depth(b).cmp(&tree.depth(a)).then(b.cmp(&a)));

    let mut left = count;
    for t in order {
        if left == 0 {
            break;
        }
        let take = left.min(removable.len() as u64) as usize;
        deletion.pruned.push((t, removable[..take].to_vec()));
        left -= take as u64;
    }
    if left > 0 {
        return Err(Error::ParamOutOfRange(format!(
            "cannot delete {count} non-root vertices without touching root children"
        )));
    }

    if params.x > 0 {
        let half = layout.half();
        let receivers: Vec<u64> = layout.cube().subcube(k - 2).collect();
        let mut load = vec![0usize; receivers.len()];
        for b in half..half + deletion.dead_below {
            // fewest replacement edges so far, ties to the lowest coordinate
            let (slot, _) = load.iter().enumerate().min_by_key(|&(i, &l)| (l, i)).unwrap();
            load[slot] += 1;
            deletion.replacement.push((b, receivers[slot]));
        }
    }
    Ok(deletion)
}

/// Lower-half trees with roots at coordinates `>= 2^p`, by decreasing
/// sub-cube index and then decreasing tree index.
fn lower_half_order(layout: &CaseOneLayout, p: u32) -> Vec<u32> {
    let mut trees: Vec<u32> = (1..=layout.tree_count())
        .filter(|&t| !layout.in_upper_half(t) && layout.coord(t) >= 1 << p)
        .collect();
    trees.sort_unstable_by(|&a, &b| {
        layout.subcube_of_tree(b).cmp(&layout.subcube_of_tree(a)).then(b.cmp(&a))
    });
    trees
}

fn assemble(params: ConstructionParams, layout: CaseOneLayout, deletion: Deletion) -> Result<Construction> {
    let k = params.k;
    let tree = BinomialTree::new(params.tree_order());
    let size = tree.size() as usize;
    let trees = layout.tree_count();
    let w_code = layout.w_code();

    let mut alive = vec![vec![true; size]; trees as usize];
    for t in 1..=trees {
        if !deletion.coord_alive(layout.coord(t)) {
            alive[t as usize - 1].fill(false);
        }
    }
    for (t, codes) in &deletion.pruned {
        for &c in codes {
            alive[*t as usize - 1][c as usize] = false;
        }
    }

    let cube_bits = k as u8;
    let mut labels = Vec::with_capacity(params.n as usize);
    let mut ids = vec![vec![DEAD; size]; trees as usize];
    for t in 1..=trees {
        for code in 0..tree.size() {
            if !alive[t as usize - 1][code as usize] {
                continue;
            }
            let cube = if code == 0 {
                Some(BitString::new(layout.coord(t), cube_bits))
            } else if t == 1 && code == w_code {
                Some(BitString::new(0, cube_bits))
            } else {
                None
            };
            ids[t as usize - 1][code as usize] = labels.len() as u32;
            labels.push(VertexLabel { tree: Some(t), pos: tree.position(code), cube });
        }
    }
    if labels.len() as u64 != params.n {
        return Err(Error::InvalidGraph(format!(
            "pruning left {} vertices, expected {}",
            labels.len(),
            params.n
        )));
    }

    let id = |t: u32, code: u64| -> Option<VertexId> {
        let raw = ids[t as usize - 1][code as usize];
        (raw != DEAD).then_some(VertexId(raw))
    };
    let cube_vertex = |c: u64| match layout.tree_at(c) {
        Some(t) => id(t, 0),
        None => id(1, w_code),
    };

    let mut edges = Vec::new();
    let cube = layout.cube();
    for c in 0..cube.size() {
        let Some(a) = cube_vertex(c) else { continue };
        for d in cube.neighbors(c).filter(|&d| d > c) {
            if let Some(b) = cube_vertex(d) {
                edges.push((a, b));
            }
        }
    }
    for &(b, r) in &deletion.replacement {
        let (Some(x), Some(y)) = (cube_vertex(b), cube_vertex(r)) else {
            return Err(Error::InvalidGraph(format!("replacement edge {b}-{r} has a dead endpoint")));
        };
        edges.push((x, y));
    }

    for t in 1..=trees {
        let Some(root) = id(t, 0) else { continue };
        let sub = layout.subcube_of_tree(t);
        let upper = sub == k - 1;
        let mut targets: Vec<VertexId> = vec![root];
        for j in layout.v1() {
            if upper || j != layout.designated(sub) {
                targets.extend(id(j, 0));
            }
        }
        if !upper {
            targets.extend(id(layout.r_k(), 0));
        }
        targets.sort_unstable();
        targets.dedup();
        for code in 1..tree.size() {
            let Some(v) = id(t, code) else { continue };
            let parent = id(t, tree.parent(code).unwrap()).expect("deletions are descendant-closed");
            edges.push((parent, v));
            if t == 1 && code == w_code {
                continue;
            }
            for &r in &targets {
                if r != parent {
                    edges.push((r, v));
                }
            }
        }
    }

    let meta = GraphMeta { t: Some(params.t), k: Some(params.k) };
    let graph = Graph::from_sorted_ids(labels, edges, meta)?;
    Ok(Construction { params, layout, deletion, graph, ids })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::make_params;

    #[test]
    fn smallest_full_graph() {
        let c = build_case1(&make_params(7, 2, 192).unwrap()).unwrap();
        assert_eq!(c.graph.len(), 192);
        assert_eq!(c.graph.edge_count(), 551);
        assert!(c.graph.is_connected());
    }

    #[test]
    fn case_guards() {
        assert!(build_case1(&make_params(7, 2, 191).unwrap()).is_err());
        assert!(build_case2(&make_params(7, 2, 192).unwrap()).is_err());
    }

    #[test]
    fn one_leaf_removed() {
        let c = build_case2(&make_params(7, 2, 191).unwrap()).unwrap();
        assert_eq!(c.graph.len(), 191);
        assert_eq!(c.graph.edge_count(), 548);
        // the highest-index upper-half V_2 tree loses its last leaf
        assert_eq!(c.deletion.pruned, vec![(3, vec![63])]);
    }

    #[test]
    fn w_has_tree_parent_and_cube_neighbours_only() {
        let c = build_case1(&make_params(8, 3, 448).unwrap()).unwrap();
        let w = c.id(1, c.layout.w_code()).unwrap();
        assert_eq!(c.graph.degree(w).unwrap(), 1 + 3);
        assert_eq!(c.graph.label(w).unwrap().to_string(), "1:111111:000");
    }

    #[test]
    fn degree_law_in_full_graph() {
        for (t, k) in [(7, 2), (8, 3), (9, 3), (10, 4)] {
            let n = crate::params::full_size(t, k);
            let c = build_case1(&make_params(t, k, n).unwrap()).unwrap();
            let tree = c.tree();
            for tr in 1..=c.layout.tree_count() {
                for code in 1..tree.size() {
                    if c.is_w(tr, code) {
                        continue;
                    }
                    let j = tree.subtree_order(code);
                    let expect = if tree.parent(code) == Some(0) { k + j } else { k + j + 1 };
                    let v = c.id(tr, code).unwrap();
                    assert_eq!(c.graph.degree(v).unwrap() as u32, expect, "t={t} k={k} tree {tr} code {code}");
                }
            }
        }
    }

    #[test]
    fn whole_subcube_deletion_and_rematch() {
        // t=8, k=3, n=300: d=148, x=2, y=20, p=1
        let p = make_params(8, 3, 300).unwrap();
        assert_eq!((p.x, p.y, p.p), (2, 20, 1));
        let c = build_case2(&p).unwrap();
        assert_eq!(c.graph.len(), 300);
        assert!(c.graph.is_connected());
        assert_eq!(c.deletion.dead_below, 2);
        assert_eq!(c.deletion.replacement, vec![(4, 2), (5, 3)]);
        assert!(c.id(1, 0).is_none());
        assert!(c.cube_id(0).is_none());
        assert_eq!(c.deletion.pruned_count(), 64 + 20);
        // every upper-half root keeps a lower-half neighbour
        for coord in 4..8u64 {
            let b = c.cube_id(coord).unwrap();
            let lower: Vec<VertexId> = (2..4).filter_map(|x| c.cube_id(x)).collect();
            assert!(lower.iter().any(|&l| c.graph.has_edge(b, l)), "coord {coord}");
        }
    }

    #[test]
    fn deletions_spill_past_the_lower_half() {
        // t=8, k=3, n=257 needs 127 non-root deletions but Q^1's trees only
        // hold 2 * 57 removable vertices
        let c = build_case2(&make_params(8, 3, 257).unwrap()).unwrap();
        assert_eq!(c.graph.len(), 257);
        assert!(c.graph.is_connected());
        let trees: Vec<u32> = c.deletion.pruned.iter().map(|(t, _)| *t).collect();
        assert_eq!(trees, [7, 2, 6]);
    }

    #[test]
    fn pruning_never_removes_root_children() {
        for n in (129..192).step_by(7) {
            let c = build_case2(&make_params(7, 2, n).unwrap()).unwrap();
            let tree = c.tree();
            for t in 1..=c.layout.tree_count() {
                for child in tree.children(0) {
                    assert!(c.is_alive(t, child), "n={n} tree {t} child {child}");
                }
            }
        }
    }
}
