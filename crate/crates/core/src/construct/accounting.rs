use serde::Serialize;

use super::{build, CaseOneLayout, Construction};
use crate::bounds;
use crate::graph::{Graph, VertexLabel};
use crate::params::ConstructionParams;
use crate::primitives::BinomialTree;

/// Disjoint edge classes of the construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    Tree,
    Cube,
    Replacement,
    /// Non-root vertex to its own root, when that is not its tree parent.
    RootAttach,
    /// Lower-half non-root vertex to `r_k`.
    RkAttach,
    /// `V_1` root to a non-root vertex of an upper-half tree.
    V1ToUpper,
    /// `V_1` root to a non-root vertex of a lower-half tree other than its own.
    V1ToLower,
    Other,
}

/// Class of the edge `{a, b}` given the layout it was built on.
pub fn classify_edge(layout: &CaseOneLayout, a: &VertexLabel, b: &VertexLabel) -> EdgeClass {
    let tree = BinomialTree::new(layout.tree_order());
    let place = |l: &VertexLabel| Some((l.tree?, tree.code_of(&l.pos)?));
    let (Some((ta, ca)), Some((tb, cb))) = (place(a), place(b)) else {
        return EdgeClass::Other;
    };
    if ta == tb && (tree.parent(ca) == Some(cb) || tree.parent(cb) == Some(ca)) {
        return EdgeClass::Tree;
    }
    if let (Some(x), Some(y)) = (a.cube, b.cube) {
        return if (x.value() ^ y.value()).count_ones() == 1 {
            EdgeClass::Cube
        } else {
            EdgeClass::Replacement
        };
    }
    let ((rt, _), (vt, vc)) = match (ca == 0, cb == 0) {
        (true, false) => ((ta, ca), (tb, cb)),
        (false, true) => ((tb, cb), (ta, ca)),
        _ => return EdgeClass::Other,
    };
    if vt == 1 && vc == layout.w_code() {
        return EdgeClass::Other;
    }
    if rt == vt {
        EdgeClass::RootAttach
    } else if rt == layout.r_k() && !layout.in_upper_half(vt) {
        EdgeClass::RkAttach
    } else if layout.is_v1(rt) {
        if layout.in_upper_half(vt) {
            EdgeClass::V1ToUpper
        } else {
            EdgeClass::V1ToLower
        }
    } else {
        EdgeClass::Other
    }
}

/// A closed-form count next to the count measured on the built graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AccountingItem {
    pub formula: i64,
    pub measured: i64,
    pub delta: i64,
}

impl AccountingItem {
    fn new(formula: i64, measured: i64) -> Self {
        AccountingItem { formula, measured, delta: measured - formula }
    }
}

/// Deleted-edge items for a pruned graph, measured against the full graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeletionAccounting {
    /// Edges at non-root vertices of the whole trees removed with `Q^0..Q^(p-1)`.
    pub whole_tree_edges: AccountingItem,
    /// Net loss inside the cube: removed cube edges minus replacement edges.
    pub net_cube_edges: AccountingItem,
    /// Edges from the removed `V_1` roots to surviving non-root vertices.
    pub v1_root_edges: AccountingItem,
    /// Edges at individually pruned non-root vertices.
    pub pruned_vertex_edges: AccountingItem,
    /// Total net edges removed.
    pub removed_edges: AccountingItem,
    /// Edges of the pruned graph against the closed form.
    pub remaining_edges: AccountingItem,
    pub replacement_edges: usize,
    pub unclassified: i64,
}

/// Per-class edge counts of the full graph plus, for a pruned graph, the
/// deletion items; every closed form sits next to its measured value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeAccounting {
    pub case: u8,
    pub vertices: u64,
    pub edges: u64,
    pub tree_edges: AccountingItem,
    pub cube_edges: AccountingItem,
    pub root_attach_edges: AccountingItem,
    pub rk_attach_edges: AccountingItem,
    pub v1_to_upper_edges: AccountingItem,
    /// Against `(k-2)(2^(k-1)-1)(2^(t+1-k)-2)`, which undercounts the class.
    pub v1_to_lower_edges: AccountingItem,
    /// The same class against `(k-2)[(2^(k-1)-1)(2^(t+1-k)-1) - 1]`.
    pub v1_to_lower_class_count: AccountingItem,
    pub total_edges: AccountingItem,
    pub unclassified: i64,
    pub deletion: Option<DeletionAccounting>,
}

#[derive(Default)]
struct ClassCounts {
    tree: i64,
    cube: i64,
    replacement: i64,
    root_attach: i64,
    rk_attach: i64,
    v1_upper: i64,
    v1_lower: i64,
    other: i64,
}

fn count_classes(g: &Graph, layout: &CaseOneLayout) -> ClassCounts {
    let mut c = ClassCounts::default();
    for (a, b) in g.edges() {
        let slot = match classify_edge(layout, &g.labels()[a.index()], &g.labels()[b.index()]) {
            EdgeClass::Tree => &mut c.tree,
            EdgeClass::Cube => &mut c.cube,
            EdgeClass::Replacement => &mut c.replacement,
            EdgeClass::RootAttach => &mut c.root_attach,
            EdgeClass::RkAttach => &mut c.rk_attach,
            EdgeClass::V1ToUpper => &mut c.v1_upper,
            EdgeClass::V1ToLower => &mut c.v1_lower,
            EdgeClass::Other => &mut c.other,
        };
        *slot += 1;
    }
    c
}

/// Audits `c`: per-class counts on the full graph for `(t, k)` and, when `c`
/// is pruned, the deletion items measured between the full graph and `c`.
pub fn audit_edges(c: &Construction) -> EdgeAccounting {
    let params = c.params;
    let full;
    let base = if params.is_full() {
        c
    } else {
        full = build(&ConstructionParams::unchecked_k(params.t, params.k, params.big_n).expect("N is in range"))
            .expect("full graph builds");
        &full
    };
    let mut acc = audit_full(&base.graph, &base.layout, &params.base());
    acc.vertices = c.graph.len() as u64;
    acc.edges = c.graph.edge_count() as u64;
    if !params.is_full() {
        acc.case = 2;
        acc.deletion = Some(audit_deletion(base, c));
    }
    acc
}

fn audit_full(g: &Graph, layout: &CaseOneLayout, params: &ConstructionParams) -> EdgeAccounting {
    let f = bounds::case1_items(params.t, params.k);
    let m = count_classes(g, layout);
    EdgeAccounting {
        case: 1,
        vertices: g.len() as u64,
        edges: g.edge_count() as u64,
        tree_edges: AccountingItem::new(f.tree, m.tree),
        cube_edges: AccountingItem::new(f.cube, m.cube),
        root_attach_edges: AccountingItem::new(f.root_attach, m.root_attach),
        rk_attach_edges: AccountingItem::new(f.rk_attach, m.rk_attach),
        v1_to_upper_edges: AccountingItem::new(f.v1_upper, m.v1_upper),
        v1_to_lower_edges: AccountingItem::new(f.v1_lower_closed_form, m.v1_lower),
        v1_to_lower_class_count: AccountingItem::new(f.v1_lower_class, m.v1_lower),
        total_edges: AccountingItem::new(f.total, g.edge_count() as i64),
        unclassified: m.other + m.replacement,
        deletion: None,
    }
}

fn audit_deletion(full: &Construction, pruned: &Construction) -> DeletionAccounting {
    let params = pruned.params;
    let pruned_at = |t: u32, code: u64| pruned.deletion.coord_alive(full.layout.coord(t)) && !pruned.is_alive(t, code);
    let (mut whole, mut cube, mut roots, mut pruned_v, mut other) = (0i64, 0i64, 0i64, 0i64, 0i64);
    for (a, b) in full.graph.edges() {
        let (la, lb) = (&full.graph.labels()[a.index()], &full.graph.labels()[b.index()]);
        let (ta, ca) = full.locate(a).expect("constructed label");
        let (tb, cb) = full.locate(b).expect("constructed label");
        if pruned.is_alive(ta, ca) && pruned.is_alive(tb, cb) {
            continue;
        }
        let in_dead_tree = |t: u32, code: u64| code != 0 && !pruned.deletion.coord_alive(full.layout.coord(t));
        if la.cube.is_some() && lb.cube.is_some() {
            cube += 1;
        } else if in_dead_tree(ta, ca) || in_dead_tree(tb, cb) {
            whole += 1;
        } else if (ca != 0 && pruned_at(ta, ca)) || (cb != 0 && pruned_at(tb, cb)) {
            pruned_v += 1;
        } else if ca == 0 || cb == 0 {
            roots += 1;
        } else {
            other += 1;
        }
    }
    let added = pruned.deletion.replacement.len() as i64;
    cube -= added;
    let net = full.graph.edge_count() as i64 - pruned.graph.edge_count() as i64;
    let f = bounds::deletion_items(&params);
    DeletionAccounting {
        whole_tree_edges: AccountingItem::new(f.whole_trees, whole),
        net_cube_edges: AccountingItem::new(f.cube, cube),
        v1_root_edges: AccountingItem::new(f.v1_roots, roots),
        pruned_vertex_edges: AccountingItem::new(f.pruned, pruned_v),
        removed_edges: AccountingItem::new(f.total, net),
        remaining_edges: AccountingItem::new(bounds::bound_pruned_i64(&params), pruned.graph.edge_count() as i64),
        replacement_edges: added as usize,
        unclassified: other,
    }
}
