//! Enumeration of non-isomorphic free trees via canonical level sequences.
//!
//! A rooted tree is written as its preorder depth list ("level sequence"),
//! canonical when every vertex's child subtrees appear in descending
//! lexicographic order. Free trees are represented by the canonical sequence
//! of a center rooting, filtered so each isomorphism class keeps exactly one
//! rooting. The generator walks these sequences in decreasing lexicographic
//! order using the successor/jump scheme of Wright, Richmond, Odlyzko and
//! McKay, which takes constant amortized time per tree.
//!
//! ```
//! use mdim::enumerate_trees;
//!
//! // The two trees on 4 vertices: the path, then the star.
//! let n4: Vec<_> = enumerate_trees(4)?.map(|t| t.level_sequence).collect();
//! assert_eq!(n4, vec![vec![0, 1, 2, 1], vec![0, 1, 1, 1]]);
//!
//! // Counts through n = 10: the free-tree sequence.
//! let counts: Vec<usize> = (1..=10)
//!     .map(|n| enumerate_trees(n).unwrap().count())
//!     .collect();
//! assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
//! # Ok::<(), mdim::Error>(())
//! ```
//!
//! [`canonical_code`] puts an arbitrarily-labeled tree into the same form,
//! making isomorphism checks a plain `==`:
//!
//! ```
//! use mdim::{canonical_code, canonical_graph6, Graph};
//!
//! let broom = Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (3, 4)])?;
//! let relabeled = Graph::from_edge_list(5, &[(4, 3), (4, 2), (4, 0), (0, 1)])?;
//! assert_eq!(canonical_code(&broom)?, canonical_code(&relabeled)?);
//!
//! // Same idea, packaged as a string key.
//! assert_eq!(canonical_graph6(&broom)?, canonical_graph6(&relabeled)?);
//! # Ok::<(), mdim::Error>(())
//! ```

use crate::error::{Error, Result};
use crate::graph::{all_pairs_distances, metric_profile, Graph};
use crate::graph6::encode_graph6;

/// One representative of a tree isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalTree {
    /// Canonical level sequence; equal sequences ⟺ isomorphic trees.
    pub level_sequence: Vec<usize>,
    /// The materialized tree: vertex ids are preorder positions of the level
    /// sequence, so vertex 0 is the canonical root.
    pub graph: Graph,
}

/// Streams all free trees of a fixed order, one per isomorphism class, in
/// decreasing lexicographic order of their canonical level sequences.
pub struct TreeGenerator {
    layout: Option<Vec<usize>>,
    single_vertex: bool,
}

pub fn enumerate_trees(n: usize) -> Result<TreeGenerator> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if n == 1 {
        return Ok(TreeGenerator {
            layout: None,
            single_vertex: true,
        });
    }
    // Start from the path rooted at its center: 0,1,..,⌈h⌉,1,2,..,⌊h⌋.
    let mut layout: Vec<usize> = (0..n / 2 + 1).collect();
    layout.extend(1..n.div_ceil(2));
    Ok(TreeGenerator {
        layout: Some(layout),
        single_vertex: false,
    })
}

impl Iterator for TreeGenerator {
    type Item = CanonicalTree;

    fn next(&mut self) -> Option<CanonicalTree> {
        if self.single_vertex {
            self.single_vertex = false;
            return Some(CanonicalTree {
                level_sequence: vec![0],
                graph: Graph::from_edge_list(1, &[]).expect("one vertex"),
            });
        }
        let candidate = self.layout.take()?;
        let layout = next_free_tree(candidate)?;
        let tree = CanonicalTree {
            graph: layout_to_graph(&layout),
            level_sequence: layout.clone(),
        };
        self.layout = next_rooted_tree(&layout, None);
        Some(tree)
    }
}

/// Convenience dump for interop/caching: one graph6 line per tree.
pub fn enumerate_trees_graph6(n: usize) -> Result<Vec<String>> {
    Ok(enumerate_trees(n)?
        .map(|t| crate::graph6::encode_graph6(&t.graph))
        .collect())
}

/// Beyer–Hedetniemi successor of a canonical rooted level sequence: find the
/// last entry > 1 (or use the supplied position), step it down by replanting
/// the suffix as copies of the block rooted at its new parent. `None` once
/// the star (all depth 1) is reached.
fn next_rooted_tree(pred: &[usize], position: Option<usize>) -> Option<Vec<usize>> {
    let p = position.unwrap_or_else(|| {
        let mut p = pred.len() - 1;
        while pred[p] == 1 {
            p -= 1;
        }
        p
    });
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut result = pred.to_vec();
    for i in p..result.len() {
        result[i] = result[i - p + q];
    }
    Some(result)
}

/// Splits a level sequence into the root's first child subtree (depths
/// shifted to start at 0) and the remainder (root plus later subtrees).
fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut m = layout.len();
    let mut ones = 0;
    for (i, &x) in layout.iter().enumerate() {
        if x == 1 {
            ones += 1;
            if ones == 2 {
                m = i;
                break;
            }
        }
    }
    let left = layout[1..m].iter().map(|&x| x - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&layout[m..]);
    (left, rest)
}

/// The free-tree validity test: the first (tallest) subtree must not be
/// taller than the rest of the tree, and on exact ties it must not be bigger
/// or lexicographically later. This picks exactly one rooting per free tree —
/// a centroid-flavored rule that lands on a center of the tree.
fn is_valid_free_layout(layout: &[usize]) -> bool {
    if layout.len() <= 1 {
        return layout == [0];
    }
    let (left, rest) = split_tree(layout);
    let left_height = *left.iter().max().expect("root has a child");
    let rest_height = *rest.iter().max().expect("rest contains the root");
    if rest_height < left_height {
        return false;
    }
    if rest_height == left_height {
        if left.len() > rest.len() {
            return false;
        }
        if left.len() == rest.len() && left > rest {
            return false;
        }
    }
    true
}

/// WROM step: accept a valid candidate as-is, otherwise jump directly to the
/// next valid free-tree sequence (successor at the first-subtree boundary,
/// with the tail rewritten as a path when the boundary entry was deep).
fn next_free_tree(candidate: Vec<usize>) -> Option<Vec<usize>> {
    if is_valid_free_layout(&candidate) {
        return Some(candidate);
    }
    let (left, _) = split_tree(&candidate);
    let p = left.len();
    let mut next = next_rooted_tree(&candidate, Some(p))?;
    if candidate[p] > 2 {
        let (new_left, _) = split_tree(&next);
        let new_height = *new_left.iter().max().expect("nonempty");
        let suffix: Vec<usize> = (1..=new_height + 1).collect();
        let start = next.len() - suffix.len();
        next[start..].copy_from_slice(&suffix);
    }
    Some(next)
}

/// Materializes a level sequence: each vertex attaches to the most recent
/// vertex one level up (preorder invariant).
fn layout_to_graph(layout: &[usize]) -> Graph {
    let n = layout.len();
    let mut last_at_level = vec![0usize; n + 1];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for (i, &level) in layout.iter().enumerate() {
        if level > 0 {
            edges.push((last_at_level[level - 1], i));
        }
        last_at_level[level] = i;
    }
    Graph::from_edge_list(n, &edges).expect("level sequence is a valid tree")
}

/// Canonical level sequence of an arbitrary tree: root at each center, take
/// the canonical rooted sequence there, and keep the rooting that passes the
/// free-tree validity test (ties produce identical sequences). Equal codes
/// ⟺ isomorphic trees, and the code matches what [`enumerate_trees`] emits
/// for the class.
pub fn canonical_code(g: &Graph) -> Result<Vec<usize>> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let n = g.order();
    if n == 1 {
        return Ok(vec![0]);
    }
    let profile = metric_profile(&all_pairs_distances(g))?;
    let mut best: Option<Vec<usize>> = None;
    for &c in &profile.centers {
        let code = rooted_code(g, c);
        if is_valid_free_layout(&code) && best.as_ref().is_none_or(|b| code > *b) {
            best = Some(code);
        }
    }
    Ok(best.expect("some center rooting is canonical"))
}

/// graph6 of the canonically relabeled copy of a tree. Isomorphic trees map
/// to the same string, matching the labels [`enumerate_trees`] would emit,
/// so this is the right key for comparing arbitrary input trees against
/// census records.
pub fn canonical_graph6(g: &Graph) -> Result<String> {
    Ok(encode_graph6(&layout_to_graph(&canonical_code(g)?)))
}

/// Canonical rooted level sequence: children blocks sorted descending, which
/// maximizes the sequence lexicographically.
fn rooted_code(g: &Graph, root: usize) -> Vec<usize> {
    fn block(g: &Graph, v: usize, parent: usize, depth: usize) -> Vec<usize> {
        let mut children: Vec<Vec<usize>> = g
            .neighbors(v)
            .iter()
            .filter(|&&u| u != parent)
            .map(|&u| block(g, u, v, depth + 1))
            .collect();
        children.sort_unstable_by(|a, b| b.cmp(a));
        let mut out = Vec::with_capacity(1 + children.iter().map(Vec::len).sum::<usize>());
        out.push(depth);
        for c in children {
            out.extend(c);
        }
        out
    }
    // The root has no parent; its own id is a safe non-neighbor stand-in.
    block(g, root, root, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph6::encode_graph6;
    use std::collections::BTreeSet;

    #[test]
    fn counts_match_the_free_tree_sequence() {
        let expected = [1usize, 1, 1, 2, 3, 6, 11, 23, 47, 106];
        for (i, &want) in expected.iter().enumerate() {
            let n = i + 1;
            let got = enumerate_trees(n).unwrap().count();
            assert_eq!(got, want, "tree count at order {n}");
        }
        assert!(matches!(enumerate_trees(0), Err(Error::ZeroOrder)));
    }

    #[test]
    fn emitted_trees_are_trees_with_distinct_codes() {
        for n in 1..=10 {
            let mut seen = BTreeSet::new();
            for t in enumerate_trees(n).unwrap() {
                assert!(t.graph.is_tree());
                assert_eq!(t.graph.order(), n);
                assert_eq!(t.graph.size(), n - 1);
                assert_eq!(canonical_code(&t.graph).unwrap(), t.level_sequence);
                assert!(seen.insert(t.level_sequence.clone()), "duplicate at n={n}");
            }
        }
    }

    #[test]
    fn generation_order_is_decreasing() {
        for n in 2..=10 {
            let seqs: Vec<_> = enumerate_trees(n)
                .unwrap()
                .map(|t| t.level_sequence)
                .collect();
            for pair in seqs.windows(2) {
                assert!(pair[0] > pair[1], "order violated at n={n}");
            }
        }
    }

    #[test]
    fn small_orders_come_out_exactly() {
        let n4: Vec<_> = enumerate_trees(4).unwrap().map(|t| t.level_sequence).collect();
        assert_eq!(n4, vec![vec![0, 1, 2, 1], vec![0, 1, 1, 1]]);
        let n5: Vec<_> = enumerate_trees(5).unwrap().map(|t| t.level_sequence).collect();
        assert_eq!(
            n5,
            vec![
                vec![0, 1, 2, 1, 2],
                vec![0, 1, 2, 1, 1],
                vec![0, 1, 1, 1, 1],
            ]
        );
    }

    #[test]
    fn codes_are_isomorphism_invariants() {
        // The same path under three labelings.
        let p4a = Graph::path(4);
        let p4b = Graph::from_edge_list(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_code(&p4a).unwrap(), canonical_code(&p4b).unwrap());

        // Star vs path of the same order differ.
        assert_ne!(
            canonical_code(&Graph::star(4)).unwrap(),
            canonical_code(&Graph::path(4)).unwrap()
        );

        // Relabeled 5-vertex broom (star with the tail first).
        let a = Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        let b = Graph::from_edge_list(5, &[(4, 2), (4, 3), (4, 0), (0, 1)]).unwrap();
        assert_eq!(canonical_code(&a).unwrap(), canonical_code(&b).unwrap());
        assert_eq!(canonical_code(&a).unwrap(), vec![0, 1, 2, 1, 1]);

        assert!(matches!(
            canonical_code(&Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()),
            Err(Error::NotATree)
        ));
    }

    #[test]
    fn graph6_dump_round_trips() {
        let lines = enumerate_trees_graph6(7).unwrap();
        assert_eq!(lines.len(), 11);
        for line in lines {
            let g = crate::graph6::parse_graph6(&line).unwrap();
            assert_eq!(encode_graph6(&g), line);
            assert!(g.is_tree());
        }
    }
}
