//! Simple undirected graphs on vertices `0..n`, BFS distances, and the
//! metric bookkeeping (eccentricities, center, twin classes) the solver and
//! the structural tests lean on.
//!
//! ```
//! use mdim::{all_pairs_distances, metric_profile, twin_classes, Graph};
//!
//! let g = Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (3, 4)])?;
//! let d = all_pairs_distances(&g);
//! assert_eq!(d.dist(1, 4), 3);
//!
//! // Eccentricities, radius, diameter, and the center in one sweep.
//! let profile = metric_profile(&d)?;
//! assert_eq!(profile.diameter, 3);
//! assert_eq!(profile.radius, 2);
//! assert_eq!(profile.centers, vec![0, 3]);
//!
//! // Leaves 1 and 2 hang off vertex 0 identically: they are twins, and
//! // no vertex other than themselves can tell them apart by distance.
//! assert_eq!(twin_classes(&g).classes, vec![vec![0], vec![1, 2], vec![3], vec![4]]);
//! # Ok::<(), mdim::Error>(())
//! ```

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Sentinel distance for unreachable vertex pairs.
pub const UNREACHABLE: usize = usize::MAX;

/// A simple undirected graph on vertices `0..n`, stored as sorted adjacency
/// lists. No self-loops, no multi-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are merged; out-of-range endpoints and self-loops are
    /// rejected.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, order: n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, order: n });
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            seen.insert((u.min(v), u.max(v)));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &seen {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj })
    }

    /// The path graph 0-1-...-(n-1).
    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n.max(1), &edges).expect("path edges are valid")
    }

    /// The star on `n` vertices: center 0 adjacent to 1..n-1.
    pub fn star(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Graph::from_edge_list(n.max(1), &edges).expect("star edges are valid")
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as (u, v) pairs with u < v, sorted ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// BFS distances from `src`; `UNREACHABLE` where no path exists.
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![UNREACHABLE; self.order()];
        let mut queue = std::collections::VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == UNREACHABLE {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Connected with exactly n−1 edges.
    pub fn is_tree(&self) -> bool {
        self.size() + 1 == self.order() && self.is_connected()
    }

    /// A tree whose maximum degree is at most 2 (includes the 1-vertex graph).
    pub fn is_path_graph(&self) -> bool {
        self.is_tree() && self.adj.iter().all(|nbrs| nbrs.len() <= 2)
    }

    /// Parses the plain edge-list text format: a header line `n m` followed
    /// by `m` lines `u v` (0-based ids).
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (lineno, header) = lines.next().ok_or(Error::EdgeList {
            line: 1,
            reason: "missing header line \"n m\"".into(),
        })?;
        let mut it = header.split_whitespace();
        let parse_num = |tok: Option<&str>, line: usize, what: &str| -> Result<usize> {
            tok.ok_or_else(|| Error::EdgeList {
                line,
                reason: format!("missing {what}"),
            })?
            .parse::<usize>()
            .map_err(|_| Error::EdgeList {
                line,
                reason: format!("invalid {what}"),
            })
        };
        let n = parse_num(it.next(), lineno + 1, "vertex count")?;
        let m = parse_num(it.next(), lineno + 1, "edge count")?;
        let mut edges = Vec::with_capacity(m);
        for (lineno, line) in lines.by_ref().take(m) {
            let mut it = line.split_whitespace();
            let u = parse_num(it.next(), lineno + 1, "edge endpoint")?;
            let v = parse_num(it.next(), lineno + 1, "edge endpoint")?;
            edges.push((u, v));
        }
        if edges.len() < m {
            return Err(Error::EdgeList {
                line: text.lines().count(),
                reason: format!("expected {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edge_list(n, &edges)
    }

    /// Serializes to the edge-list text format accepted by
    /// [`Graph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.order(), self.size());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// All-pairs shortest-path distances (hop counts).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<usize>,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> usize {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[usize] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn is_connected(&self) -> bool {
        self.dist.iter().all(|&d| d != UNREACHABLE)
    }
}

/// One BFS per vertex. Unreachable pairs get the [`UNREACHABLE`] sentinel;
/// metric-dependent consumers reject those rather than propagating them.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.order();
    let mut dist = Vec::with_capacity(n * n);
    for v in 0..n {
        dist.extend(g.bfs_distances(v));
    }
    debug_assert!((0..n).all(|u| (0..n).all(|v| dist[u * n + v] == dist[v * n + u])));
    DistanceMatrix { n, dist }
}

/// Eccentricities plus the derived radius / diameter / center set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricProfile {
    pub ecc: Vec<usize>,
    pub radius: usize,
    pub diameter: usize,
    /// Vertices of minimum eccentricity, ascending.
    pub centers: Vec<usize>,
}

pub fn metric_profile(d: &DistanceMatrix) -> Result<MetricProfile> {
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = d.order();
    let ecc: Vec<usize> = (0..n)
        .map(|v| d.row(v).iter().copied().max().unwrap_or(0))
        .collect();
    let radius = *ecc.iter().min().expect("n >= 1");
    let diameter = *ecc.iter().max().expect("n >= 1");
    let centers = (0..n).filter(|&v| ecc[v] == radius).collect();
    Ok(MetricProfile {
        ecc,
        radius,
        diameter,
        centers,
    })
}

impl MetricProfile {
    /// Distance from `v` to the nearest center, given the distance matrix the
    /// profile was computed from.
    pub fn distance_to_center(&self, d: &DistanceMatrix, v: usize) -> usize {
        self.centers
            .iter()
            .map(|&c| d.dist(v, c))
            .min()
            .expect("at least one center")
    }
}

/// Partition of the vertices into twin classes: `u` and `v` are twins when
/// `N(u)\{v} = N(v)\{u}`, i.e. they are indistinguishable by distances from
/// anywhere else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinPartition {
    /// Disjoint classes covering all vertices; each class sorted ascending,
    /// classes ordered by their minimum element.
    pub classes: Vec<Vec<usize>>,
}

impl TwinPartition {
    pub fn max_class_size(&self) -> usize {
        self.classes.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// True when `N(u)\{v} = N(v)\{u}`: adjacent twins share all other
/// neighbors, non-adjacent twins share all neighbors.
pub fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    if u == v {
        return false;
    }
    let a = g.neighbors(u).iter().filter(|&&x| x != v);
    let b = g.neighbors(v).iter().filter(|&&x| x != u);
    a.eq(b)
}

/// Computes twin classes as the reflexive-transitive closure of the pairwise
/// relation. On the graphs this crate cares about the pairwise relation is
/// already transitive (a class is either a clique or an independent set with
/// a common outside neighborhood); the closure also keeps odd inputs safe.
pub fn twin_classes(g: &Graph) -> TwinPartition {
    let n = g.order();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for u in 0..n {
        for v in u + 1..n {
            if are_twins(g, u, v) {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru.max(rv)] = ru.min(rv);
                }
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        let r = find(&mut parent, v);
        classes[r].push(v);
    }
    classes.retain(|c| !c.is_empty());
    TwinPartition { classes }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edge_list_dedups_and_sorts() {
        let g = Graph::from_edge_list(3, &[(1, 0), (0, 1), (2, 1)]).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.size(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn from_edge_list_rejects_bad_input() {
        assert!(matches!(
            Graph::from_edge_list(2, &[(0, 0)]),
            Err(Error::SelfLoop { vertex: 0 })
        ));
        assert!(matches!(
            Graph::from_edge_list(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, order: 2 })
        ));
        assert!(matches!(Graph::from_edge_list(0, &[]), Err(Error::EmptyGraph)));
    }

    #[test]
    fn path_and_star_shapes() {
        let p7 = Graph::path(7);
        assert!(p7.is_tree() && p7.is_path_graph());
        let s4 = Graph::star(4);
        assert!(s4.is_tree() && !s4.is_path_graph());
        assert_eq!(s4.degree(0), 3);
        let k3 = Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!k3.is_tree());
    }

    #[test]
    fn distances_on_small_graphs() {
        let p4 = Graph::path(4);
        let d = all_pairs_distances(&p4);
        assert_eq!(d.dist(0, 3), 3);
        assert_eq!(d.dist(0, 0), 0);
        let k3 = Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let d = all_pairs_distances(&k3);
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(d.dist(u, v), usize::from(u != v));
            }
        }
    }

    #[test]
    fn disconnected_pairs_get_sentinel() {
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        let d = all_pairs_distances(&g);
        assert_eq!(d.dist(0, 2), UNREACHABLE);
        assert!(!d.is_connected());
        assert!(matches!(metric_profile(&d), Err(Error::Disconnected)));
    }

    #[test]
    fn profile_of_p4_and_star() {
        let d = all_pairs_distances(&Graph::path(4));
        let p = metric_profile(&d).unwrap();
        assert_eq!(p.ecc, vec![3, 2, 2, 3]);
        assert_eq!((p.radius, p.diameter), (2, 3));
        assert_eq!(p.centers, vec![1, 2]);

        let d = all_pairs_distances(&Graph::star(4));
        let p = metric_profile(&d).unwrap();
        assert_eq!((p.radius, p.diameter), (1, 2));
        assert_eq!(p.centers, vec![0]);

        let d = all_pairs_distances(&Graph::path(3));
        let p = metric_profile(&d).unwrap();
        assert_eq!(p.centers, vec![1]);
    }

    #[test]
    fn twin_classes_on_known_graphs() {
        // S_4: the three leaves are mutual (non-adjacent) twins.
        let t = twin_classes(&Graph::star(4));
        assert_eq!(t.classes, vec![vec![0], vec![1, 2, 3]]);
        assert_eq!(t.max_class_size(), 3);

        // P_5: all neighborhoods distinct.
        let t = twin_classes(&Graph::path(5));
        assert_eq!(t.classes.len(), 5);

        // P_3: the two endpoints are twins through the middle vertex.
        let t = twin_classes(&Graph::path(3));
        assert_eq!(t.classes, vec![vec![0, 2], vec![1]]);

        // K_3: everyone is an adjacent twin of everyone.
        let k3 = Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(twin_classes(&k3).max_class_size(), 3);
    }

    #[test]
    fn edge_list_text_round_trip() {
        let g = Graph::from_edge_list(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let text = g.to_edge_list();
        assert_eq!(text.lines().next(), Some("5 4"));
        let back = Graph::parse_edge_list(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn edge_list_parse_errors_carry_line_numbers() {
        let err = Graph::parse_edge_list("3 2\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::EdgeList { .. }));
        let err = Graph::parse_edge_list("3 1\n0 x\n").unwrap_err();
        match err {
            Error::EdgeList { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
