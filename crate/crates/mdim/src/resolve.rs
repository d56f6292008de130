//! Multiset representations and the exact multiset-dimension solver.
//!
//! A landmark set `W` assigns every vertex `v` the multiset of distances
//! `{d(v,w) : w ∈ W}`. `W` is m-resolving when those multisets are pairwise
//! distinct, and the multiset dimension is the size of a smallest m-resolving
//! set — or infinite when none exists, which genuinely happens (any star on
//! at least 4 vertices, for example).
//!
//! ```
//! use mdim::{all_pairs_distances, is_m_resolving, representation_multiset, Graph};
//!
//! let g = Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (3, 4)])?;
//! let d = all_pairs_distances(&g);
//!
//! assert_eq!(representation_multiset(&d, 0, &[1, 4])?.distances(), &[1, 2]);
//! assert_eq!(representation_multiset(&d, 3, &[1, 4])?.distances(), &[1, 2]);
//! assert!(!is_m_resolving(&d, &[1, 4]));
//!
//! // A third landmark on the hub breaks the tie.
//! assert!(is_m_resolving(&d, &[0, 1, 4]));
//! # Ok::<(), mdim::Error>(())
//! ```
//!
//! Unlike its labeled-vector cousin, multiset resolution is **not
//! monotone** — a landmark added to a working set can merge two multisets
//! that were distinct (both endpoints of a path are the classic trap). So
//! the solver searches each size independently and never grows sets
//! greedily.
//!
//! ```
//! use mdim::{all_pairs_distances, is_m_resolving, Graph};
//!
//! let d = all_pairs_distances(&Graph::path(3));
//! assert!(is_m_resolving(&d, &[0]));
//! assert!(!is_m_resolving(&d, &[0, 2])); // adding a landmark broke it
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{all_pairs_distances, metric_profile, twin_classes, DistanceMatrix, Graph};

/// Sorted multiset of distances from one vertex to a landmark set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MultisetRepr {
    distances: Vec<usize>,
}

impl MultisetRepr {
    pub fn distances(&self) -> &[usize] {
        &self.distances
    }
}

/// Why the solver concluded the dimension is infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certificate {
    /// Three or more vertices are pairwise twins; no landmark set can split
    /// them, since at most one of them can carry the distinguishing 0.
    #[serde(rename = "TWIN_CLASS")]
    TwinClass,
    /// Diameter at most 2 and not a path: representations over {0,1,2} with a
    /// single 0 cannot separate all vertices.
    #[serde(rename = "DIAMETER_2_NONPATH")]
    Diameter2NonPath,
    /// No screen applied; every candidate subset was tried and none resolves.
    #[serde(rename = "EXHAUSTED")]
    Exhausted,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Certificate::TwinClass => "TWIN_CLASS",
            Certificate::Diameter2NonPath => "DIAMETER_2_NONPATH",
            Certificate::Exhausted => "EXHAUSTED",
        };
        f.write_str(s)
    }
}

/// A multiset dimension: a positive integer with a witness, or infinity with
/// a certificate. The value 2 never occurs.
///
/// Serializes to a stable JSON wire form (used by the CLI's `--json` mode
/// and the census cache):
///
/// ```
/// use mdim::{multiset_dimension, Graph};
///
/// let g = Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (3, 4)])?;
/// let dim = multiset_dimension(&g)?;
/// assert_eq!(serde_json::to_string(&dim).unwrap(), r#"{"value":3,"witness":[0,1,4]}"#);
///
/// let star = multiset_dimension(&Graph::star(4))?;
/// assert_eq!(
///     serde_json::to_string(&star).unwrap(),
///     r#"{"value":"INF","certificate":"TWIN_CLASS"}"#
/// );
/// # Ok::<(), mdim::Error>(())
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtendedDim {
    Finite {
        value: usize,
        /// Lexicographically least minimum m-resolving set.
        witness: Vec<usize>,
    },
    Infinite { certificate: Certificate },
}

impl ExtendedDim {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedDim::Finite { .. })
    }

    pub fn value(&self) -> Option<usize> {
        match self {
            ExtendedDim::Finite { value, .. } => Some(*value),
            ExtendedDim::Infinite { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            ExtendedDim::Finite { witness, .. } => Some(witness),
            ExtendedDim::Infinite { .. } => None,
        }
    }

    pub fn certificate(&self) -> Option<Certificate> {
        match self {
            ExtendedDim::Finite { .. } => None,
            ExtendedDim::Infinite { certificate } => Some(*certificate),
        }
    }
}

impl fmt::Display for ExtendedDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedDim::Finite { value, .. } => write!(f, "{value}"),
            ExtendedDim::Infinite { .. } => f.write_str("INF"),
        }
    }
}

/// Wire form used for JSON: finite dimensions carry their witness, infinite
/// ones the string "INF" plus a certificate.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DimWire {
    Finite { value: usize, witness: Vec<usize> },
    Infinite { value: String, certificate: Certificate },
}

impl Serialize for ExtendedDim {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let wire = match self {
            ExtendedDim::Finite { value, witness } => DimWire::Finite {
                value: *value,
                witness: witness.clone(),
            },
            ExtendedDim::Infinite { certificate } => DimWire::Infinite {
                value: "INF".into(),
                certificate: *certificate,
            },
        };
        wire.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ExtendedDim {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        match DimWire::deserialize(de)? {
            DimWire::Finite { value, witness } => Ok(ExtendedDim::Finite { value, witness }),
            DimWire::Infinite { value, certificate } if value == "INF" => {
                Ok(ExtendedDim::Infinite { certificate })
            }
            DimWire::Infinite { value, .. } => Err(serde::de::Error::custom(format!(
                "expected \"INF\", got {value:?}"
            ))),
        }
    }
}

/// The multiset of distances from `v` to the landmark set `w` (treated as a
/// set: duplicates contribute once), sorted ascending.
pub fn representation_multiset(
    d: &DistanceMatrix,
    v: usize,
    w: &[usize],
) -> Result<MultisetRepr> {
    if w.is_empty() {
        return Err(Error::EmptyLandmarkSet);
    }
    let mut landmarks = w.to_vec();
    landmarks.sort_unstable();
    landmarks.dedup();
    let mut distances: Vec<usize> = landmarks.iter().map(|&x| d.dist(v, x)).collect();
    distances.sort_unstable();
    Ok(MultisetRepr { distances })
}

/// True when all vertices get pairwise-distinct distance multisets from `w`.
pub fn is_m_resolving(d: &DistanceMatrix, w: &[usize]) -> bool {
    let mut landmarks = w.to_vec();
    landmarks.sort_unstable();
    landmarks.dedup();
    resolves(d, &landmarks)
}

/// Same check with `w` already sorted and deduplicated.
fn resolves(d: &DistanceMatrix, w: &[usize]) -> bool {
    let n = d.order();
    let mut reps: Vec<Vec<usize>> = Vec::with_capacity(n);
    for v in 0..n {
        let mut rep: Vec<usize> = w.iter().map(|&x| d.dist(v, x)).collect();
        rep.sort_unstable();
        reps.push(rep);
    }
    reps.sort_unstable();
    reps.windows(2).all(|pair| pair[0] != pair[1])
}

/// Quick sufficient conditions for an infinite dimension. The twin test runs
/// first: a twin class of size ≥ 3 is the sharper explanation and also covers
/// small dense graphs (K_3 fires here, not on the diameter rule). Absence of
/// a certificate proves nothing.
///
/// ```
/// use mdim::{infinity_screen, Certificate, Graph};
///
/// assert_eq!(infinity_screen(&Graph::star(4)), Some(Certificate::TwinClass));
/// assert_eq!(infinity_screen(&Graph::path(5)), None); // screens prove nothing here
/// ```
pub fn infinity_screen(g: &Graph) -> Option<Certificate> {
    if twin_classes(g).max_class_size() >= 3 {
        return Some(Certificate::TwinClass);
    }
    if g.is_path_graph() {
        return None;
    }
    let profile = metric_profile(&all_pairs_distances(g)).ok()?;
    if profile.diameter <= 2 {
        return Some(Certificate::Diameter2NonPath);
    }
    None
}

/// Knobs for [`multiset_dimension_with`]. With screens off the solver is a
/// pure exhaustive scan over subset sizes 1..=n — the oracle the screened
/// solver is validated against.
#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    pub use_screens: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { use_screens: true }
    }
}

/// Exact multiset dimension with the standard screens enabled.
///
/// Finite answers carry the lexicographically least minimum resolving set,
/// so results are reproducible and cache-friendly:
///
/// ```
/// use mdim::{multiset_dimension, ExtendedDim, Graph};
///
/// let g = Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (3, 4)])?;
/// assert_eq!(
///     multiset_dimension(&g)?,
///     ExtendedDim::Finite { value: 3, witness: vec![0, 1, 4] }
/// );
/// # Ok::<(), mdim::Error>(())
/// ```
pub fn multiset_dimension(g: &Graph) -> Result<ExtendedDim> {
    multiset_dimension_with(g, &SolverOptions::default())
}

/// Exact multiset dimension with configurable screens. Screens are an
/// optimization and must never change an answer; the test suite compares the
/// two modes on every tree through 8 vertices. (They may report a different
/// *certificate* for an infinite dimension — `EXHAUSTED` versus the screen's
/// named reason — but never a different finiteness, value, or witness.)
///
/// ```
/// use mdim::{multiset_dimension, multiset_dimension_with, Graph, SolverOptions};
///
/// let g = Graph::star(4);
/// let pure = multiset_dimension_with(&g, &SolverOptions { use_screens: false })?;
/// assert_eq!(pure.is_finite(), multiset_dimension(&g)?.is_finite());
/// # Ok::<(), mdim::Error>(())
/// ```
pub fn multiset_dimension_with(g: &Graph, opts: &SolverOptions) -> Result<ExtendedDim> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.order();
    let d = all_pairs_distances(g);
    let start = if opts.use_screens {
        if g.is_path_graph() {
            // A path is resolved by either end, and by nothing else of size
            // 1; exhaustion over singletons would land on the smaller end id.
            let endpoint = (0..n)
                .find(|&v| g.degree(v) <= 1)
                .expect("a path has an endpoint");
            let witness = vec![endpoint];
            debug_assert!(resolves(&d, &witness));
            return Ok(ExtendedDim::Finite { value: 1, witness });
        }
        if let Some(certificate) = infinity_screen(g) {
            return Ok(ExtendedDim::Infinite { certificate });
        }
        // Not a path, so no single vertex resolves; size 2 never works for
        // any graph (the two 1-neighborhoods of the landmarks collide).
        3
    } else {
        1
    };
    for k in start..=n {
        if let Some(witness) = first_resolving_of_size(&d, k) {
            return Ok(ExtendedDim::Finite { value: k, witness });
        }
    }
    Ok(ExtendedDim::Infinite {
        certificate: Certificate::Exhausted,
    })
}

/// Scans k-subsets of vertices in lexicographic order and returns the first
/// one that resolves, which is also the lexicographically least.
fn first_resolving_of_size(d: &DistanceMatrix, k: usize) -> Option<Vec<usize>> {
    let n = d.order();
    if k == 0 || k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if resolves(d, &idx) {
            return Some(idx);
        }
        // Advance to the next combination; bail out after the last one.
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] != n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    /// Star on 4 vertices with one edge subdivided: 0 is the center with
    /// leaves 1 and 2, the tail runs 0-3-4.
    fn broom5() -> Graph {
        Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn representations_on_p4() {
        let d = all_pairs_distances(&Graph::path(4));
        assert_eq!(
            representation_multiset(&d, 3, &[0]).unwrap().distances(),
            &[3]
        );
        assert_eq!(
            representation_multiset(&d, 1, &[0, 3]).unwrap().distances(),
            &[1, 2]
        );
        // A landmark sees itself at distance 0, exactly once.
        let rep = representation_multiset(&d, 2, &[0, 2, 3]).unwrap();
        assert_eq!(rep.distances().iter().filter(|&&x| x == 0).count(), 1);
        assert!(matches!(
            representation_multiset(&d, 0, &[]),
            Err(Error::EmptyLandmarkSet)
        ));
    }

    #[test]
    fn path_endpoints_resolve() {
        for n in 1..=10 {
            let g = Graph::path(n);
            let d = all_pairs_distances(&g);
            assert!(is_m_resolving(&d, &[0]));
            assert!(is_m_resolving(&d, &[n - 1]));
            if n >= 3 {
                assert!(!is_m_resolving(&d, &[1]));
            }
        }
    }

    #[test]
    fn no_subset_resolves_a_star() {
        let g = Graph::star(4);
        let d = all_pairs_distances(&g);
        // All 15 nonempty subsets of a 4-vertex graph.
        for mask in 1u32..16 {
            let w: Vec<usize> = (0..4).filter(|&v| mask >> v & 1 == 1).collect();
            assert!(!is_m_resolving(&d, &w), "W={w:?} should not resolve S_4");
        }
    }

    #[test]
    fn diameter_three_witness_from_the_case_analysis() {
        // Centers u=0 (two leaves 1,2) and v=3 (one leaf 4); {u_1, u, v_1}
        // resolves.
        let d = all_pairs_distances(&broom5());
        assert!(is_m_resolving(&d, &[0, 1, 4]));
    }

    #[test]
    fn screens_fire_where_expected() {
        assert_eq!(
            infinity_screen(&Graph::star(4)),
            Some(Certificate::TwinClass)
        );
        // K_3's three vertices are mutual twins, so the twin rule wins even
        // though the diameter rule would apply too.
        assert_eq!(infinity_screen(&k3()), Some(Certificate::TwinClass));
        assert_eq!(infinity_screen(&Graph::path(10)), None);
        // 4-cycle: twin classes are only pairs, but diameter 2 non-path.
        let c4 = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(infinity_screen(&c4), Some(Certificate::Diameter2NonPath));
    }

    #[test]
    fn dimensions_of_reference_graphs() {
        let cases: Vec<(Graph, ExtendedDim)> = vec![
            (
                Graph::path(10),
                ExtendedDim::Finite { value: 1, witness: vec![0] },
            ),
            (
                Graph::path(1),
                ExtendedDim::Finite { value: 1, witness: vec![0] },
            ),
            (
                Graph::path(3),
                ExtendedDim::Finite { value: 1, witness: vec![0] },
            ),
            (
                Graph::star(4),
                ExtendedDim::Infinite { certificate: Certificate::TwinClass },
            ),
            (
                broom5(),
                ExtendedDim::Finite { value: 3, witness: vec![0, 1, 4] },
            ),
        ];
        for (g, expected) in cases {
            assert_eq!(multiset_dimension(&g).unwrap(), expected);
        }
    }

    #[test]
    fn screened_and_exhaustive_agree_on_samples() {
        let samples = vec![
            Graph::path(6),
            Graph::star(5),
            broom5(),
            k3(),
            Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap(),
            Graph::from_edge_list(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]).unwrap(),
        ];
        let pure = SolverOptions { use_screens: false };
        for g in samples {
            let fast = multiset_dimension(&g).unwrap();
            let slow = multiset_dimension_with(&g, &pure).unwrap();
            assert_eq!(fast.value(), slow.value());
            assert_eq!(fast.witness(), slow.witness());
        }
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            multiset_dimension(&g),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn extended_dim_json_round_trip() {
        let fin = ExtendedDim::Finite { value: 3, witness: vec![0, 1, 4] };
        let inf = ExtendedDim::Infinite { certificate: Certificate::TwinClass };
        let fin_json = serde_json::to_string(&fin).unwrap();
        let inf_json = serde_json::to_string(&inf).unwrap();
        assert_eq!(fin_json, r#"{"value":3,"witness":[0,1,4]}"#);
        assert_eq!(inf_json, r#"{"value":"INF","certificate":"TWIN_CLASS"}"#);
        assert_eq!(serde_json::from_str::<ExtendedDim>(&fin_json).unwrap(), fin);
        assert_eq!(serde_json::from_str::<ExtendedDim>(&inf_json).unwrap(), inf);
    }
}
