//! Size-bound and catalog verification over enumerated levels.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{enumerate_all_3connected, LevelSet};
use crate::canonical::{are_isomorphic, canonical_code};
use crate::connectivity::is_minimal_unchecked;
use crate::error::Result;
use crate::families;
use crate::graph::Graph;
use crate::minors::MinorTester;

/// Which bound a report checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundKind {
    /// `|E(G)| <= |E(H)| + 3 (r(G) - r(H))`, plus `3r - 7` for `r >= 6` when `H` is the prism.
    MinorPreserving {
        h_edges: usize,
        h_rank: usize,
        prism: bool,
    },
    /// `|E(G)| <= 3r - 6` over minimally 3-connected graphs of rank at least 6,
    /// with equality only for `K_{3,r-2}`.
    Mader,
}

impl BoundKind {
    pub fn bound_at(&self, rank: usize) -> i64 {
        match *self {
            BoundKind::MinorPreserving {
                h_edges, h_rank, ..
            } => h_edges as i64 + 3 * (rank as i64 - h_rank as i64),
            BoundKind::Mader => 3 * rank as i64 - 6,
        }
    }

    pub fn secondary_bound_at(&self, rank: usize) -> Option<i64> {
        match *self {
            BoundKind::MinorPreserving { prism: true, .. } if rank >= 6 => {
                Some(3 * rank as i64 - 7)
            }
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRecord {
    pub code: String,
    pub rank: usize,
    pub edges: usize,
    pub bound: i64,
    pub slack: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub secondary_bound: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub secondary_slack: Option<i64>,
    pub violation: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankSummary {
    pub rank: usize,
    pub count: usize,
    pub max_edges: Option<usize>,
    pub bound: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub secondary_bound: Option<i64>,
    /// Codes of the members meeting the primary bound with equality.
    pub at_bound: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub records: Vec<BoundRecord>,
    pub summary: Vec<RankSummary>,
    pub violations: Vec<BoundRecord>,
}

impl BoundReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn bound_at(&self, rank: usize) -> i64 {
        self.kind.bound_at(rank)
    }

    pub fn record(&self, code: &str) -> Option<&BoundRecord> {
        self.records.iter().find(|r| r.code == code)
    }

    pub fn summary_at(&self, rank: usize) -> Option<&RankSummary> {
        self.summary.iter().find(|s| s.rank == rank)
    }
}

fn build_report<'a>(
    kind: BoundKind,
    members: impl Iterator<Item = (usize, &'a Graph, String)>,
    extra_violation: impl Fn(usize, &Graph, i64) -> bool,
) -> BoundReport {
    let mut records = Vec::new();
    let mut by_rank: BTreeMap<usize, RankSummary> = BTreeMap::new();
    for (rank, g, code) in members {
        let edges = g.edge_count();
        let bound = kind.bound_at(rank);
        let slack = bound - edges as i64;
        let secondary_bound = kind.secondary_bound_at(rank);
        let secondary_slack = secondary_bound.map(|b| b - edges as i64);
        let violation =
            slack < 0 || secondary_slack.is_some_and(|s| s < 0) || extra_violation(rank, g, slack);
        let entry = by_rank.entry(rank).or_insert_with(|| RankSummary {
            rank,
            count: 0,
            max_edges: None,
            bound,
            secondary_bound,
            at_bound: Vec::new(),
        });
        entry.count += 1;
        entry.max_edges = entry.max_edges.max(Some(edges));
        if slack == 0 {
            entry.at_bound.push(code.clone());
        }
        records.push(BoundRecord {
            code,
            rank,
            edges,
            bound,
            slack,
            secondary_bound,
            secondary_slack,
            violation,
        });
    }
    let violations = records.iter().filter(|r| r.violation).cloned().collect();
    BoundReport {
        kind,
        records,
        summary: by_rank.into_values().collect(),
        violations,
    }
}

/// Checks every member of `levels` (from the no-preserving engine with seed
/// `h`) against `|E(H)| + 3 (r - r(H))`, and against `3r - 7` at ranks 6 and
/// up when `h` is the prism.
pub fn verify_bounds(levels: &[LevelSet], h: &Graph) -> Result<BoundReport> {
    let kind = BoundKind::MinorPreserving {
        h_edges: h.edge_count(),
        h_rank: h.rank()?,
        prism: are_isomorphic(h, &families::prism()),
    };
    let members = levels.iter().flat_map(|level| {
        level
            .members
            .sorted_entries()
            .into_iter()
            .map(move |(code, m)| (level.rank, &m.graph, code.to_string()))
    });
    Ok(build_report(kind, members, |_, _, _| false))
}

fn is_k3p(g: &Graph) -> bool {
    let n = g.vertex_count();
    n >= 6 && families::k3p_variant(n - 3, 0).is_ok_and(|k| are_isomorphic(g, &k))
}

/// Checks `|E| <= 3r - 6` over the minimally 3-connected members of `levels`
/// (from the all-3-connected engine), with equality reserved for `K_{3,r-2}`.
/// Members below rank 6 are recorded but never counted as violations.
pub fn verify_mader(levels: &[LevelSet]) -> BoundReport {
    let minimal: Vec<(usize, Graph, String)> = levels
        .iter()
        .flat_map(|level| {
            let entries = level.members.sorted_entries();
            let keep: Vec<bool> = entries
                .par_iter()
                .map(|(_, m)| is_minimal_unchecked(&m.graph))
                .collect();
            entries
                .into_iter()
                .zip(keep)
                .filter(|(_, k)| *k)
                .map(|((code, m), _)| (level.rank, m.graph.clone(), code.to_string()))
                .collect::<Vec<_>>()
        })
        .collect();
    build_report(
        BoundKind::Mader,
        minimal.iter().map(|(r, g, c)| (*r, g, c.clone())),
        |rank, g, slack| rank >= 6 && slack == 0 && !is_k3p(g),
    )
    .with_rank_floor(6)
}

impl BoundReport {
    fn with_rank_floor(mut self, floor: usize) -> Self {
        for r in &mut self.records {
            if r.rank < floor {
                r.violation = false;
            }
        }
        self.violations = self
            .records
            .iter()
            .filter(|r| r.violation)
            .cloned()
            .collect();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiracReport {
    pub rank: usize,
    pub total: usize,
    pub with_prism_minor: usize,
    pub prism_free: Vec<String>,
    pub catalog: Vec<String>,
    pub missing: Vec<String>,
    pub unexpected: Vec<String>,
    pub matches: bool,
}

/// Compares the prism-free members of an all-3-connected level with the catalog.
pub fn verify_dirac_level(level: &LevelSet) -> Result<DiracReport> {
    let tester = MinorTester::new(families::prism());
    let entries = level.members.sorted_entries();
    let free: Vec<bool> = entries
        .par_iter()
        .map(|(_, m)| !tester.has_minor(&m.graph))
        .collect();
    let prism_free: Vec<String> = entries
        .iter()
        .zip(&free)
        .filter(|(_, f)| **f)
        .map(|((c, _), _)| c.to_string())
        .collect();
    let mut catalog: Vec<String> = families::dirac_catalog(level.rank)?
        .iter()
        .map(|g| canonical_code(g).to_string())
        .collect();
    catalog.sort();
    catalog.dedup();
    let missing: Vec<String> = catalog
        .iter()
        .filter(|c| !prism_free.contains(c))
        .cloned()
        .collect();
    let unexpected: Vec<String> = prism_free
        .iter()
        .filter(|c| !catalog.contains(c))
        .cloned()
        .collect();
    Ok(DiracReport {
        rank: level.rank,
        total: entries.len(),
        with_prism_minor: entries.len() - prism_free.len(),
        matches: missing.is_empty() && unexpected.is_empty(),
        prism_free,
        catalog,
        missing,
        unexpected,
    })
}

/// Enumerates all 3-connected graphs up to rank `r` and checks the catalog at rank `r`.
pub fn verify_dirac(r: usize) -> Result<DiracReport> {
    let levels = enumerate_all_3connected(r)?;
    verify_dirac_level(levels.last().expect("at least one level"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::OperationMask;
    use crate::enumeration::{enumerate_no_preserving, Seed};
    use crate::families::FamilySpec;

    #[test]
    fn prism_base_case_has_zero_slack() {
        let prism = families::prism();
        let levels =
            enumerate_no_preserving(&Seed::Family(FamilySpec::prism()), 6, OperationMask::ALL)
                .unwrap();
        let report = verify_bounds(&levels, &prism).unwrap();
        assert!(report.is_clean());
        let seed = report.record(canonical_code(&prism).as_str()).unwrap();
        assert_eq!((seed.edges, seed.bound, seed.slack), (9, 9, 0));
        let six = report.summary_at(6).unwrap();
        assert_eq!(six.secondary_bound, Some(11));
        assert_eq!(six.max_edges, Some(11));
    }

    #[test]
    fn petersen_bound_values() {
        let kind = BoundKind::MinorPreserving {
            h_edges: 15,
            h_rank: 9,
            prism: false,
        };
        assert_eq!(kind.bound_at(9), 15);
        assert_eq!(kind.bound_at(10), 18);
        assert_eq!(kind.bound_at(12), 3 * 12 - 12);
        assert_eq!(kind.secondary_bound_at(10), None);
    }

    #[test]
    fn mader_flags_non_k3p_equality() {
        let k33 = families::k3p_variant(3, 0).unwrap();
        let level = |g: &Graph, rank| {
            let mut store = crate::canonical::DedupStore::new();
            store.insert(g);
            LevelSet {
                rank,
                seed: Seed::Wheels,
                members: store,
            }
        };
        let r = verify_mader(&[level(&k33, 5)]);
        assert!(r.is_clean());
        assert_eq!(r.records[0].slack, 0);
        // W5 exceeds 3r - 6 at rank 5, below the range where the bound applies
        let r = verify_mader(&[level(&families::wheel(5).unwrap(), 5)]);
        assert!(r.is_clean());
        assert_eq!(r.records[0].slack, -1);
        let k34 = families::k3p_variant(4, 0).unwrap();
        let r = verify_mader(&[level(&k34, 6)]);
        assert!(r.is_clean());
        assert_eq!(r.summary_at(6).unwrap().at_bound.len(), 1);
    }

    #[test]
    fn dirac_small_ranks() {
        for r in 3..=5 {
            let report = verify_dirac(r).unwrap();
            assert!(report.matches, "rank {r}: {report:?}");
        }
    }
}
