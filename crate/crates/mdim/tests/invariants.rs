//! Property tests and cross-cutting invariants: randomized graphs and trees
//! against definitional re-implementations, plus exhaustive checks where the
//! search space is small enough to close outright.

mod common;

use std::collections::HashSet;

use proptest::prelude::*;

use mdim::{
    all_pairs_distances, encode_graph6, enumerate_trees, is_lobster, is_m_resolving,
    metric_profile, minimum_k_center_paths, multiset_dimension, parse_graph6,
    representation_multiset, separation, spine_decomposition, twin_classes, Certificate,
    ExtendedDim, Graph, SeparationKind,
};

use common::prufer_to_graph;

/// Arbitrary simple graph on 1..=12 vertices, one coin flip per vertex pair.
fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..=12).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |mask| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    if mask[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            Graph::from_edge_list(n, &edges).unwrap()
        })
    })
}

/// Uniform random labeled tree on 2..=max_n vertices via its code sequence.
fn arb_tree(max_n: usize) -> impl Strategy<Value = Graph> {
    (2usize..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0..n, n.saturating_sub(2))
            .prop_map(move |seq| prufer_to_graph(&seq, n))
    })
}

fn arb_dimension() -> impl Strategy<Value = ExtendedDim> {
    prop_oneof![
        (1usize..=20, prop::collection::btree_set(0usize..40, 1..8)).prop_map(|(value, w)| {
            ExtendedDim::Finite {
                value,
                witness: w.into_iter().collect(),
            }
        }),
        prop_oneof![
            Just(Certificate::TwinClass),
            Just(Certificate::Diameter2NonPath),
            Just(Certificate::Exhausted),
        ]
        .prop_map(|certificate| ExtendedDim::Infinite { certificate }),
    ]
}

/// All k-subsets of 0..n as sorted vectors, in lexicographic order.
fn subsets_lex(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

proptest! {
    #[test]
    fn graph6_round_trips_any_graph(g in arb_graph()) {
        let back = parse_graph6(&encode_graph6(&g)).unwrap();
        prop_assert_eq!(back.order(), g.order());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn twins_are_metrically_indistinguishable(g in arb_graph()) {
        prop_assume!(g.is_connected());
        let d = all_pairs_distances(&g);
        for class in &twin_classes(&g).classes {
            for (i, &u) in class.iter().enumerate() {
                for &v in &class[i + 1..] {
                    for x in 0..g.order() {
                        if x != u && x != v {
                            prop_assert_eq!(d.dist(u, x), d.dist(v, x));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn resolution_check_matches_its_definition(
        g in arb_graph(),
        picks in prop::collection::btree_set(0usize..12, 1..6),
    ) {
        prop_assume!(g.is_connected());
        let w: Vec<usize> = picks.into_iter().filter(|&v| v < g.order()).collect();
        prop_assume!(!w.is_empty());
        let d = all_pairs_distances(&g);
        let mut seen = HashSet::new();
        let distinct = (0..g.order()).all(|v| {
            seen.insert(representation_multiset(&d, v, &w).unwrap().distances().to_vec())
        });
        prop_assert_eq!(is_m_resolving(&d, &w), distinct);
    }

    #[test]
    fn tree_radius_and_centers_follow_the_diameter(t in arb_tree(40)) {
        let d = all_pairs_distances(&t);
        let profile = metric_profile(&d).unwrap();
        prop_assert_eq!(profile.radius, profile.diameter.div_ceil(2));
        if profile.diameter % 2 == 0 {
            prop_assert_eq!(profile.centers.len(), 1);
        } else {
            prop_assert_eq!(profile.centers.len(), 2);
            prop_assert!(t.has_edge(profile.centers[0], profile.centers[1]));
        }
        for v in 0..t.order() {
            let near = profile.distance_to_center(&d, v);
            prop_assert_eq!(profile.ecc[v], profile.radius + near);
        }
    }

    #[test]
    fn dimension_json_round_trips(dim in arb_dimension()) {
        let text = serde_json::to_string(&dim).unwrap();
        let back: ExtendedDim = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, dim);
    }
}

/// On every tree through 9 vertices the solver's verdict is exactly what raw
/// subset enumeration says: the witness is the lexicographically first
/// resolving set of its size, no smaller set resolves, and an infinite
/// verdict means no subset of any size resolves.
#[test]
fn witnesses_are_lex_minimal_and_truly_minimum() {
    for n in 1..=9 {
        for t in enumerate_trees(n).unwrap() {
            let g = &t.graph;
            let d = all_pairs_distances(g);
            match multiset_dimension(g).unwrap() {
                ExtendedDim::Finite { value, witness } => {
                    assert_eq!(witness.len(), value);
                    assert!(is_m_resolving(&d, &witness));
                    for smaller in 1..value {
                        assert!(
                            subsets_lex(n, smaller).iter().all(|w| !is_m_resolving(&d, w)),
                            "a {smaller}-set resolves below the reported dimension (n={n})"
                        );
                    }
                    let first = subsets_lex(n, value)
                        .into_iter()
                        .find(|w| is_m_resolving(&d, w))
                        .unwrap();
                    assert_eq!(witness, first, "witness not lex-first at n={n}");
                }
                ExtendedDim::Infinite { .. } => {
                    for k in 1..=n {
                        assert!(
                            subsets_lex(n, k).iter().all(|w| !is_m_resolving(&d, w)),
                            "infinite verdict contradicted by a {k}-set (n={n})"
                        );
                    }
                }
            }
        }
    }
}

/// Resolution is not monotone: growing a resolving set can destroy it.
/// Both endpoints of a path: the new landmark mirrors the old one and the
/// two ends become indistinguishable.
#[test]
fn adding_a_landmark_can_break_resolution() {
    for n in [3usize, 5, 7] {
        let p = Graph::path(n);
        let d = all_pairs_distances(&p);
        assert!(is_m_resolving(&d, &[0]));
        assert!(!is_m_resolving(&d, &[0, n - 1]), "both ends of P_{n}");
    }
}

/// Spine decompositions partition the tree, and each classified part really
/// is the shape its tag claims, checked against the induced subtree.
#[test]
fn separation_tags_match_materialized_subtrees() {
    for n in 2..=9 {
        for t in enumerate_trees(n).unwrap() {
            let g = &t.graph;
            if !is_lobster(g).unwrap() {
                continue;
            }
            for path in minimum_k_center_paths(g, 2).unwrap() {
                let decomp = spine_decomposition(g, &path).unwrap();
                let mut covered: Vec<usize> = path.vertices.clone();
                for comp in &decomp.components {
                    covered.extend(comp.vertices.iter().filter(|&&v| v != comp.root));
                    for class in separation(g, comp) {
                        let members: HashSet<usize> = class.vertices.iter().copied().collect();
                        assert!(members.contains(&class.attach));
                        assert!(g.has_edge(comp.root, class.attach));
                        for &c in &class.children {
                            assert!(g.has_edge(class.attach, c));
                        }
                        // Part names count the subdivided root edge, so a
                        // P2 part stores just the attach vertex, and so on.
                        match class.kind {
                            SeparationKind::P2 => {
                                assert_eq!(class.vertices, vec![class.attach]);
                                assert!(class.children.is_empty());
                                assert_eq!(g.degree(class.attach), 1);
                            }
                            SeparationKind::P3 => {
                                assert_eq!(class.vertices.len(), 2);
                                assert_eq!(class.children.len(), 1);
                                assert_eq!(g.degree(class.children[0]), 1);
                            }
                            SeparationKind::S4 => {
                                assert_eq!(class.vertices.len(), 3);
                                assert_eq!(class.children.len(), 2);
                                for &c in &class.children {
                                    assert_eq!(g.degree(c), 1, "4-star arms must be leaves");
                                }
                            }
                            SeparationKind::Other => {
                                let star4 =
                                    class.vertices.len() == 3 && class.children.len() == 2;
                                let p3 = class.vertices.len() == 2 && class.children.len() == 1;
                                let p2 = class.vertices.len() == 1;
                                assert!(!star4 && !p3 && !p2, "mistagged simple shape");
                            }
                        }
                    }
                }
                covered.sort_unstable();
                covered.dedup();
                assert_eq!(covered, (0..n).collect::<Vec<_>>(), "decomposition must cover");
            }
        }
    }
}
