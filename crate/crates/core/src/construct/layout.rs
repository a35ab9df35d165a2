use serde::Serialize;

use crate::primitives::Hypercube;

/// Placement of the `2^k - 1` tree roots and the promoted leaf `w` on the
/// vertices of `Q^k`.
///
/// Tree `i + 1` sits on the corner `2^i` of sub-cube `Q^i` for `0 <= i < k`, so
/// trees `1..k` are `V_1` and tree `k` is `r_k`. `w` takes the corner `0`
/// (`Q^01`). The remaining trees (`V_2`) fill the free slots of
/// `Q^(k-1), Q^(k-2), ..., Q^1` in that order, increasing coordinate within a
/// sub-cube, increasing tree index overall.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseOneLayout {
    k: u32,
    tree_order: u32,
    tree_coord: Vec<u64>,
    coord_tree: Vec<Option<u32>>,
}

impl CaseOneLayout {
    pub fn new(k: u32, tree_order: u32) -> Self {
        assert!(k >= 2, "layout needs k >= 2");
        let cube = Hypercube::new(k);
        let trees = (1usize << k) - 1;
        let mut tree_coord = vec![0u64; trees];
        let mut coord_tree = vec![None; 1 << k];
        for i in 0..k {
            tree_coord[i as usize] = 1 << i;
            coord_tree[1 << i] = Some(i + 1);
        }
        let mut next = k + 1;
        for sub in (1..k).rev() {
            for c in cube.subcube(sub).skip(1) {
                tree_coord[next as usize - 1] = c;
                coord_tree[c as usize] = Some(next);
                next += 1;
            }
        }
        debug_assert_eq!(next as usize, trees + 1);
        CaseOneLayout { k, tree_order, tree_coord, coord_tree }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn tree_order(&self) -> u32 {
        self.tree_order
    }

    pub fn tree_count(&self) -> u32 {
        self.tree_coord.len() as u32
    }

    pub fn cube(&self) -> Hypercube {
        Hypercube::new(self.k)
    }

    /// Cube coordinate of the root of tree `tree` (1-based).
    pub fn coord(&self, tree: u32) -> u64 {
        self.tree_coord[tree as usize - 1]
    }

    /// Tree whose root sits at `coord`; `None` for `w`'s corner.
    pub fn tree_at(&self, coord: u64) -> Option<u32> {
        self.coord_tree[coord as usize]
    }

    /// Index `i` of the sub-cube `Q^i` holding the root of `tree`.
    pub fn subcube_of_tree(&self, tree: u32) -> u32 {
        Hypercube::subcube_of(self.coord(tree)).expect("roots never occupy the corner")
    }

    /// Root in the upper half `Q_1^(k-1)`.
    pub fn in_upper_half(&self, tree: u32) -> bool {
        self.subcube_of_tree(tree) == self.k - 1
    }

    /// `r_{i+1}`, the designated root of `Q^i`.
    pub fn designated(&self, subcube: u32) -> u32 {
        subcube + 1
    }

    pub fn r_k(&self) -> u32 {
        self.k
    }

    pub fn is_v1(&self, tree: u32) -> bool {
        tree < self.k
    }

    pub fn v1(&self) -> impl Iterator<Item = u32> {
        1..self.k
    }

    pub fn w_code(&self) -> u64 {
        (1 << self.tree_order) - 1
    }

    pub fn half(&self) -> u64 {
        1 << (self.k - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn designated_roots_sit_on_corners() {
        let l = CaseOneLayout::new(4, 5);
        for i in 0..4 {
            assert_eq!(l.coord(i + 1), 1 << i);
            assert_eq!(l.subcube_of_tree(i + 1), i);
        }
        assert_eq!(l.tree_at(0), None);
        assert_eq!(l.tree_count(), 15);
    }

    #[test]
    fn slot_counts_per_subcube() {
        for k in 2..=6 {
            let l = CaseOneLayout::new(k, 4);
            let mut per = vec![0u64; k as usize];
            for tree in 1..=l.tree_count() {
                per[l.subcube_of_tree(tree) as usize] += 1;
                assert_eq!(l.tree_at(l.coord(tree)), Some(tree));
            }
            for (i, &count) in per.iter().enumerate() {
                assert_eq!(count, 1 << i, "k={k} Q^{i}");
            }
            assert_eq!(l.v1().count() as u32 + 1 + (l.tree_count() - k), (1 << k) - 1);
        }
    }

    #[test]
    fn v2_fills_upper_subcubes_first() {
        let l = CaseOneLayout::new(3, 4);
        // Q^2 = {4,5,6,7}: r_3 at 4, then trees 4,5,6; Q^1 = {2,3}: r_2 at 2, tree 7 at 3
        assert_eq!((4..=7).map(|t| l.coord(t)).collect::<Vec<_>>(), [5, 6, 7, 3]);
        assert!(l.in_upper_half(3) && l.in_upper_half(6) && !l.in_upper_half(7));
    }
}
