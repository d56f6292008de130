//! Multiset dimension of small graphs, with a focus on trees.
//!
//! Pick a set W of landmark vertices and give every vertex v the *multiset*
//! of its distances to W — no labels, just the distance values with
//! multiplicity. W is **m-resolving** when those multisets are pairwise
//! distinct, and the **multiset dimension** of a connected graph is the
//! smallest size of an m-resolving set, or infinite when no set works at
//! all (dropping the labels loses real information: most graphs, including
//! all stars on four or more vertices, are unresolvable this way).
//!
//! ```
//! use mdim::{multiset_dimension, ExtendedDim, Graph};
//!
//! // Paths are the only graphs of dimension 1...
//! let path = Graph::path(10);
//! assert_eq!(multiset_dimension(&path)?, ExtendedDim::Finite { value: 1, witness: vec![0] });
//!
//! // ...and three leaves on one vertex are already unresolvable.
//! let star = Graph::star(4);
//! assert!(!multiset_dimension(&star)?.is_finite());
//! # Ok::<(), mdim::Error>(())
//! ```
//!
//! The crate has four working parts:
//!
//! * **Exact solver** ([`multiset_dimension`]) — exhaustive search over
//!   landmark sets, front-loaded with cheap screens (twin classes, the
//!   path shortcut, the small-diameter rule) that settle most graphs
//!   without searching. [`multiset_dimension_with`] switches the screens
//!   off for cross-checking.
//! * **Tree enumeration** ([`enumerate_trees`]) — every non-isomorphic
//!   free tree of a given order, generated as canonical level sequences
//!   in constant amortized time, plus [`canonical_code`] to put arbitrary
//!   trees into the same canonical form.
//! * **Structure** ([`minimum_k_center_paths`], [`lobster_md_finite`],
//!   [`construct_lobster_resolving_set`]) — caterpillar/lobster detection,
//!   the shape conditions that decide finiteness for lobsters, and a
//!   constructive resolving set that skips the search entirely.
//! * **Census** ([`run_census`], [`verify_bounds`],
//!   [`cross_validate_characterizations`]) — sweeps over all trees of an
//!   order range, tallies dimensions, checks the proven bound md ≤ n−2 and
//!   the conjectured md ≤ n−diam+1, and measures the structural
//!   predictions against brute force.
//!
//! ```
//! use mdim::{run_census, CensusOptions};
//!
//! let out = run_census(6, 7, &CensusOptions::default())?;
//! assert_eq!(out.rows[0].total, 6);   // six trees on 6 vertices
//! assert_eq!(out.rows[1].total, 11);  // eleven on 7
//! assert_eq!(out.rows[0].md_inf, 2);  // two of the six are unresolvable
//! # Ok::<(), mdim::Error>(())
//! ```
//!
//! Graphs enter either as explicit edge lists ([`Graph::from_edge_list`],
//! [`Graph::parse_edge_list`]) or in graph6 notation ([`parse_graph6`]).
//! Everything downstream works on a precomputed [`DistanceMatrix`].

pub mod census;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod resolve;
pub mod structure;
pub mod treegen;

pub use census::{
    broom, broom_family_check, census_csv, cross_validate_characterizations, read_cache,
    records_jsonl, run_census, verify_bounds, write_text, BoundReport, BroomEntry, CensusOptions,
    CensusOutput, CensusRow, TreeRecord, ValidationReport, DEFAULT_ORDER_GUARD,
};
pub use error::{Error, Result};
pub use graph::{
    all_pairs_distances, metric_profile, twin_classes, DistanceMatrix, Graph, MetricProfile,
    TwinPartition,
};
pub use graph6::{encode_graph6, parse_graph6};
pub use resolve::{
    infinity_screen, is_m_resolving, multiset_dimension, multiset_dimension_with,
    representation_multiset, Certificate, ExtendedDim, MultisetRepr, SolverOptions,
};
pub use structure::{
    caterpillar_md_finite, caterpillar_md_finite_all_paths, caterpillar_md_finite_on_path,
    component_landmarks, construct_lobster_resolving_set, is_caterpillar, is_lobster,
    lobster_md_finite, lobster_md_finite_all_paths, lobster_md_finite_on_path,
    minimum_k_center_paths, separation, spine_decomposition, CenterPath,
    ConstructedResolvingSet, LobsterCheck, ResolvingSetSource, RootedComponent,
    SeparationClass, SeparationKind, SeparationViolation, SideProfile, SpineDecomposition,
};
pub use treegen::{
    canonical_code, canonical_graph6, enumerate_trees, CanonicalTree, TreeGenerator,
};
