//! Sweeps over all non-isomorphic trees of given orders: per-tree records,
//! dimension tallies, bound verification, and cross-validation of the
//! structural characterizations against the exact solver.
//!
//! ```
//! use mdim::{broom, canonical_graph6, run_census, verify_bounds, CensusOptions, Graph};
//!
//! let out = run_census(1, 8, &CensusOptions::default())?;
//! let report = verify_bounds(&out.records);
//! assert!(report.upper_bound_violations.is_empty());
//! assert_eq!(
//!     report.extremal_trees,
//!     vec![
//!         canonical_graph6(&Graph::path(3))?,
//!         canonical_graph6(&broom(5))?,
//!     ]
//! );
//! # Ok::<(), mdim::Error>(())
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{all_pairs_distances, metric_profile, Graph};
use crate::graph6::encode_graph6;
use crate::resolve::{multiset_dimension, ExtendedDim};
use crate::structure::{
    caterpillar_md_finite, construct_lobster_resolving_set, is_caterpillar, is_lobster,
    lobster_md_finite, lobster_md_finite_all_paths,
};
use crate::treegen::enumerate_trees;

/// Orders above this need an explicit override: tree counts grow by a factor
/// of ~2.96 per vertex, and the exhaustive solver on top makes large sweeps
/// a deliberate decision rather than a typo.
pub const DEFAULT_ORDER_GUARD: usize = 12;

/// Dimension tally for one order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: usize,
    pub total: usize,
    /// Trees with no finite resolving set at all.
    pub md_inf: usize,
    /// Count of trees per finite dimension value (1, 3, 4, ... — there is no
    /// dimension 2).
    pub counts: BTreeMap<usize, usize>,
}

impl CensusRow {
    pub fn count(&self, md: usize) -> usize {
        self.counts.get(&md).copied().unwrap_or(0)
    }
}

/// Everything computed for a single tree. Serialized one-per-line in the
/// JSONL report and the cache.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeRecord {
    pub graph6: String,
    pub n: usize,
    pub diameter: usize,
    pub md: ExtendedDim,
    pub is_caterpillar: bool,
    pub is_lobster: bool,
    /// Structural finiteness prediction; present iff the tree is a lobster.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characterization_prediction: Option<bool>,
    /// Whether the constructive resolving set verified; present iff the tree
    /// is a lobster with finite dimension.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction_ok: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
    /// JSONL cache keyed by canonical graph6; read before computing, merged
    /// and rewritten afterwards. Missing file means a cold start.
    pub cache_path: Option<PathBuf>,
    /// Evaluate the lobster prediction on every minimum 2-center path and
    /// report trees whose paths disagree. The recorded prediction is always
    /// the first canonical path's verdict, so outputs don't change.
    pub strict: bool,
    pub order_guard: usize,
    pub force_large: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            workers: 0,
            cache_path: None,
            strict: false,
            order_guard: DEFAULT_ORDER_GUARD,
            force_large: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CensusOutput {
    pub rows: Vec<CensusRow>,
    /// All records in enumeration order (by n, then generation order).
    pub records: Vec<TreeRecord>,
    /// Trees analyzed from scratch this run.
    pub computed: usize,
    /// Trees served from the cache.
    pub cache_hits: usize,
    /// graph6 of trees whose minimum 2-center paths disagree on finiteness
    /// (strict mode only; cache hits are not re-examined).
    pub strict_disagreements: Vec<String>,
}

/// Enumerates every tree with `n_min ..= n_max` vertices and computes its
/// record, in parallel but with deterministic output order.
pub fn run_census(n_min: usize, n_max: usize, options: &CensusOptions) -> Result<CensusOutput> {
    if n_min == 0 {
        return Err(Error::ZeroOrder);
    }
    if n_max > options.order_guard && !options.force_large {
        return Err(Error::OrderGuardExceeded {
            order: n_max,
            guard: options.order_guard,
        });
    }
    let cache = match &options.cache_path {
        Some(p) => read_cache(p)?,
        None => HashMap::new(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .expect("building a rayon pool only fails on resource exhaustion");
    let computed = AtomicUsize::new(0);
    let cache_hits = AtomicUsize::new(0);

    let mut rows = Vec::new();
    let mut records: Vec<TreeRecord> = Vec::new();
    let mut strict_disagreements = Vec::new();
    for n in n_min..=n_max {
        let trees: Vec<Graph> = enumerate_trees(n)?.map(|t| t.graph).collect();
        let analyzed: Vec<(TreeRecord, bool)> = pool.install(|| {
            trees
                .par_iter()
                .map(|g| {
                    let g6 = encode_graph6(g);
                    if let Some(hit) = cache.get(&g6) {
                        cache_hits.fetch_add(1, Ordering::Relaxed);
                        return Ok((hit.clone(), false));
                    }
                    computed.fetch_add(1, Ordering::Relaxed);
                    analyze_tree(g, g6, options.strict)
                })
                .collect::<Result<_>>()
        })?;

        let mut row = CensusRow {
            n,
            total: analyzed.len(),
            md_inf: 0,
            counts: BTreeMap::new(),
        };
        for (rec, disagrees) in &analyzed {
            match rec.md.value() {
                Some(v) => *row.counts.entry(v).or_insert(0) += 1,
                None => row.md_inf += 1,
            }
            if *disagrees {
                strict_disagreements.push(rec.graph6.clone());
            }
        }
        rows.push(row);
        records.extend(analyzed.into_iter().map(|(r, _)| r));
    }

    if let Some(p) = &options.cache_path {
        let mut merged = cache;
        for r in &records {
            merged.insert(r.graph6.clone(), r.clone());
        }
        write_cache(p, merged)?;
    }

    Ok(CensusOutput {
        rows,
        records,
        computed: computed.into_inner(),
        cache_hits: cache_hits.into_inner(),
        strict_disagreements,
    })
}

fn analyze_tree(g: &Graph, graph6: String, strict: bool) -> Result<(TreeRecord, bool)> {
    let d = all_pairs_distances(g);
    let profile = metric_profile(&d)?;
    let md = multiset_dimension(g)?;
    let caterpillar = is_caterpillar(g)?;
    let lobster = is_lobster(g)?;
    let mut disagrees = false;
    let characterization_prediction = if lobster {
        if strict {
            let checks = lobster_md_finite_all_paths(g)?;
            disagrees = checks.windows(2).any(|w| w[0].finite != w[1].finite);
            Some(checks.iter().all(|c| c.finite))
        } else {
            Some(lobster_md_finite(g)?.finite)
        }
    } else {
        None
    };
    let construction_ok = if lobster && md.is_finite() {
        Some(construct_lobster_resolving_set(g).is_ok())
    } else {
        None
    };
    Ok((
        TreeRecord {
            graph6,
            n: g.order(),
            diameter: profile.diameter,
            md,
            is_caterpillar: caterpillar,
            is_lobster: lobster,
            characterization_prediction,
            construction_ok,
        },
        disagrees,
    ))
}

/// CSV rendering of the census rows. Columns cover md=1 and md=3 up to the
/// largest order minus one, zeros included, so the schema is a function of
/// the sweep range alone.
pub fn census_csv(rows: &[CensusRow]) -> String {
    let n_max = rows.iter().map(|r| r.n).max().unwrap_or(1);
    let finite_cols: Vec<usize> =
        std::iter::once(1).chain(3..=n_max.saturating_sub(1)).collect();
    let mut out = String::from("n,total,md_inf");
    for k in &finite_cols {
        let _ = write!(out, ",md_{k}");
    }
    out.push('\n');
    for r in rows {
        let _ = write!(out, "{},{},{}", r.n, r.total, r.md_inf);
        for k in &finite_cols {
            let _ = write!(out, ",{}", r.count(*k));
        }
        out.push('\n');
    }
    out
}

/// One JSON object per tree, newline-separated, in record order.
pub fn records_jsonl(records: &[TreeRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("record serialization cannot fail"));
        out.push('\n');
    }
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::File {
        path: path.to_path_buf(),
        source: e,
    })
}

/// Loads a JSONL cache. A missing file is an empty cache; unreadable lines
/// are skipped with a warning on stderr so a corrupted cache degrades to
/// recomputation instead of killing the run.
pub fn read_cache(path: &Path) -> Result<HashMap<String, TreeRecord>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(HashMap::new()),
        Err(e) => {
            return Err(Error::File {
                path: path.to_path_buf(),
                source: e,
            })
        }
    };
    let mut map = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<TreeRecord>(line) {
            Ok(rec) => {
                map.insert(rec.graph6.clone(), rec);
            }
            Err(e) => eprintln!(
                "warning: {}:{}: skipping unreadable cache line ({e})",
                path.display(),
                i + 1
            ),
        }
    }
    Ok(map)
}

fn write_cache(path: &Path, cache: HashMap<String, TreeRecord>) -> Result<()> {
    let mut entries: Vec<TreeRecord> = cache.into_values().collect();
    entries.sort_by(|a, b| (a.n, &a.graph6).cmp(&(b.n, &b.graph6)));
    write_text(path, &records_jsonl(&entries))
}

/// Checks the proven and conjectured upper bounds over a record set.
#[derive(Debug, Clone, Default)]
pub struct BoundReport {
    pub trees_checked: usize,
    /// Finite-dimension trees of diameter >= 2 with md > n-2 (provably none).
    pub upper_bound_violations: Vec<String>,
    /// Trees meeting md = n-2 exactly; known to be just the 3-path and the
    /// 5-vertex broom.
    pub extremal_trees: Vec<String>,
    /// Finite-dimension trees with md > n - diam + 1 (conjectured none).
    pub diameter_bound_violations: Vec<String>,
}

pub fn verify_bounds(records: &[TreeRecord]) -> BoundReport {
    let mut report = BoundReport::default();
    for r in records {
        report.trees_checked += 1;
        let Some(v) = r.md.value() else { continue };
        if r.diameter >= 2 {
            if v > r.n - 2 {
                report.upper_bound_violations.push(r.graph6.clone());
            }
            if v == r.n - 2 {
                report.extremal_trees.push(r.graph6.clone());
            }
        }
        if v > r.n - r.diameter + 1 {
            report.diameter_bound_violations.push(r.graph6.clone());
        }
    }
    report
}

/// Structural predictions and constructions measured against the exact
/// solver over every tree up to `n_max`.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub trees_checked: usize,
    pub caterpillars: usize,
    pub lobsters: usize,
    /// Caterpillar predictions that contradict brute force.
    pub caterpillar_mismatches: Vec<String>,
    /// Lobster predictions that contradict brute force.
    pub lobster_mismatches: Vec<String>,
    pub constructions: usize,
    /// Finite lobsters whose constructed set failed verification.
    pub construction_failures: Vec<String>,
    /// Trees where the solver-backed component cross-check disagrees with
    /// actual finiteness. Expected to be exactly the 4-star, which is an
    /// infinite-dimension lobster whose only cut component is itself.
    pub component_check_divergences: Vec<String>,
    /// How often each construction branch fired.
    pub source_counts: BTreeMap<String, usize>,
}

pub fn cross_validate_characterizations(n_max: usize) -> Result<ValidationReport> {
    let mut rep = ValidationReport::default();
    for n in 1..=n_max {
        for t in enumerate_trees(n)? {
            let g = &t.graph;
            let g6 = encode_graph6(g);
            rep.trees_checked += 1;
            let finite = multiset_dimension(g)?.is_finite();
            if is_caterpillar(g)? {
                rep.caterpillars += 1;
                if caterpillar_md_finite(g)? != finite {
                    rep.caterpillar_mismatches.push(g6.clone());
                }
            }
            if is_lobster(g)? {
                rep.lobsters += 1;
                let check = lobster_md_finite(g)?;
                if check.finite != finite {
                    rep.lobster_mismatches.push(g6.clone());
                }
                if check.infinite_components_are_s4 != finite {
                    rep.component_check_divergences.push(g6.clone());
                }
                if finite {
                    rep.constructions += 1;
                    match construct_lobster_resolving_set(g) {
                        Ok(c) => {
                            *rep.source_counts.entry(c.source.to_string()).or_insert(0) += 1;
                        }
                        Err(_) => rep.construction_failures.push(g6),
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// The star on four vertices with one edge subdivided `n - 4` times: the
/// family conjectured to pin the diameter bound, with dimension 3 against a
/// bound of n - (n-2) + 1 = 3.
pub fn broom(n: usize) -> Graph {
    assert!(n >= 4, "a broom needs at least 4 vertices");
    let mut edges = vec![(0, 1), (0, 2)];
    let mut prev = 0;
    for v in 3..n {
        edges.push((prev, v));
        prev = v;
    }
    Graph::from_edge_list(n, &edges).expect("broom edges are valid by construction")
}

#[derive(Debug, Clone)]
pub struct BroomEntry {
    pub n: usize,
    pub diameter: usize,
    pub md: ExtendedDim,
    /// n - diameter + 1 for this member.
    pub diameter_bound: usize,
}

/// Exact dimension of every broom from 5 vertices up to `n_max`.
pub fn broom_family_check(n_max: usize) -> Result<Vec<BroomEntry>> {
    (5..=n_max)
        .map(|n| {
            let g = broom(n);
            let d = all_pairs_distances(&g);
            let profile = metric_profile(&d)?;
            let md = multiset_dimension(&g)?;
            Ok(BroomEntry {
                n,
                diameter: profile.diameter,
                md,
                diameter_bound: n - profile.diameter + 1,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treegen::canonical_graph6;

    #[test]
    fn small_orders_tally_correctly() {
        let out = run_census(1, 6, &CensusOptions::default()).unwrap();
        let totals: Vec<usize> = out.rows.iter().map(|r| r.total).collect();
        assert_eq!(totals, vec![1, 1, 1, 2, 3, 6]);
        assert_eq!(out.computed, 14);
        assert_eq!(out.cache_hits, 0);

        // Paths are the only trees through n=3; stars go infinite from n=4.
        for r in &out.rows[..3] {
            assert_eq!(r.md_inf, 0);
            assert_eq!(r.count(1), r.total);
        }
        let n6 = &out.rows[5];
        assert_eq!(n6.md_inf, 2);
        assert_eq!(n6.count(1), 1);
        assert_eq!(n6.count(3), 3);
        assert_eq!(n6.md_inf + n6.count(1) + n6.count(3), n6.total);
    }

    #[test]
    fn records_carry_consistent_flags() {
        let out = run_census(1, 7, &CensusOptions::default()).unwrap();
        for r in &out.records {
            assert_eq!(r.characterization_prediction.is_some(), r.is_lobster);
            assert_eq!(
                r.construction_ok.is_some(),
                r.is_lobster && r.md.is_finite()
            );
            if r.is_caterpillar {
                assert!(r.is_lobster, "every caterpillar is a lobster");
            }
            if let Some(ok) = r.construction_ok {
                assert!(ok, "construction failed on {}", r.graph6);
            }
        }
    }

    #[test]
    fn csv_schema_is_fixed_by_the_range() {
        let out = run_census(6, 6, &CensusOptions::default()).unwrap();
        assert_eq!(
            census_csv(&out.rows),
            "n,total,md_inf,md_1,md_3,md_4,md_5\n6,6,2,1,3,0,0\n"
        );
        // Below the first branching order there are no md_k columns past 1.
        let out = run_census(1, 3, &CensusOptions::default()).unwrap();
        assert_eq!(
            census_csv(&out.rows),
            "n,total,md_inf,md_1\n1,1,0,1\n2,1,0,1\n3,1,0,1\n"
        );
    }

    #[test]
    fn warm_cache_skips_recomputation_and_preserves_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().join("census.cache.jsonl");
        let opts = CensusOptions {
            cache_path: Some(cache.clone()),
            ..CensusOptions::default()
        };
        let cold = run_census(1, 7, &opts).unwrap();
        assert_eq!(cold.cache_hits, 0);
        assert!(cold.computed > 0);

        let warm = run_census(1, 7, &opts).unwrap();
        assert_eq!(warm.computed, 0);
        assert_eq!(warm.cache_hits, cold.computed);
        assert_eq!(cold.rows, warm.rows);
        assert_eq!(records_jsonl(&cold.records), records_jsonl(&warm.records));

        // A narrower rerun must not shrink the cache.
        let narrow = run_census(6, 6, &opts).unwrap();
        assert_eq!(narrow.computed, 0);
        let merged = read_cache(&cache).unwrap();
        assert_eq!(merged.len(), cold.records.len());
    }

    #[test]
    fn corrupt_cache_lines_degrade_to_recomputation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().join("bad.jsonl");
        let opts = CensusOptions {
            cache_path: Some(cache.clone()),
            ..CensusOptions::default()
        };
        let cold = run_census(5, 5, &opts).unwrap();
        assert_eq!(cold.computed, 3);

        // Clobber one line; the other two survive.
        let text = fs::read_to_string(&cache).unwrap();
        let mut lines: Vec<&str> = text.lines().collect();
        lines[1] = "{not json";
        fs::write(&cache, lines.join("\n")).unwrap();

        let rerun = run_census(5, 5, &opts).unwrap();
        assert_eq!(rerun.computed, 1);
        assert_eq!(rerun.cache_hits, 2);
        assert_eq!(cold.rows, rerun.rows);
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let one = run_census(1, 7, &CensusOptions { workers: 1, ..CensusOptions::default() });
        let four = run_census(1, 7, &CensusOptions { workers: 4, ..CensusOptions::default() });
        let (one, four) = (one.unwrap(), four.unwrap());
        assert_eq!(one.rows, four.rows);
        assert_eq!(records_jsonl(&one.records), records_jsonl(&four.records));
        assert_eq!(census_csv(&one.rows), census_csv(&four.rows));
    }

    #[test]
    fn order_guard_blocks_oversized_sweeps() {
        let err = run_census(1, 13, &CensusOptions::default()).unwrap_err();
        assert!(matches!(err, Error::OrderGuardExceeded { order: 13, guard: 12 }));
        // The override exists, and a lowered guard triggers sooner.
        let opts = CensusOptions { order_guard: 6, ..CensusOptions::default() };
        assert!(run_census(1, 7, &opts).is_err());
        let opts = CensusOptions { order_guard: 6, force_large: true, ..CensusOptions::default() };
        assert!(run_census(1, 7, &opts).is_ok());
        assert!(matches!(run_census(0, 3, &CensusOptions::default()), Err(Error::ZeroOrder)));
    }

    #[test]
    fn bounds_hold_with_known_extremal_trees() {
        let out = run_census(1, 7, &CensusOptions::default()).unwrap();
        let report = verify_bounds(&out.records);
        assert_eq!(report.trees_checked, out.records.len());
        assert!(report.upper_bound_violations.is_empty());
        assert!(report.diameter_bound_violations.is_empty());
        assert_eq!(
            report.extremal_trees,
            vec![
                canonical_graph6(&Graph::path(3)).unwrap(),
                canonical_graph6(&broom(5)).unwrap(),
            ]
        );
    }

    #[test]
    fn characterizations_agree_with_brute_force_on_small_orders() {
        let rep = cross_validate_characterizations(7).unwrap();
        assert_eq!(rep.trees_checked, 1 + 1 + 1 + 2 + 3 + 6 + 11);
        assert!(rep.caterpillar_mismatches.is_empty());
        assert!(rep.lobster_mismatches.is_empty());
        assert!(rep.construction_failures.is_empty());
        // The 4-star is the lone divergence of the solver-backed component
        // cross-check: it is its own infinite 4-star component.
        assert_eq!(
            rep.component_check_divergences,
            vec![canonical_graph6(&Graph::star(4)).unwrap()]
        );
        assert!(rep.constructions > 0);
        assert!(rep.source_counts.contains_key("path-endpoint"));
        assert!(rep.source_counts.contains_key("odd-diameter"));
    }

    #[test]
    fn strict_mode_reports_path_disagreements() {
        let opts = CensusOptions { strict: true, ..CensusOptions::default() };
        let out = run_census(4, 4, &opts).unwrap();
        // The 4-star's leaf paths pass the shape test while its center path
        // fails it; the recorded prediction (infinite) is still correct.
        let star_g6 = canonical_graph6(&Graph::star(4)).unwrap();
        assert_eq!(out.strict_disagreements, vec![star_g6.clone()]);
        let star = out.records.iter().find(|r| r.graph6 == star_g6).unwrap();
        assert_eq!(star.characterization_prediction, Some(false));
        assert!(!star.md.is_finite());
    }

    #[test]
    fn broom_family_stays_at_dimension_three() {
        let entries = broom_family_check(9).unwrap();
        assert_eq!(entries.len(), 5);
        for e in &entries {
            assert_eq!(e.diameter, e.n - 2);
            assert_eq!(e.md.value(), Some(3));
            assert_eq!(e.diameter_bound, 3);
        }
    }
}
