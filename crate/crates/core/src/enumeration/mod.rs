//! Level-by-level isomorph-free enumeration.
//!
//! Three engines share one expansion routine:
//! - [`enumerate_with_minor`]: every 3-connected graph with an H-minor, as the
//!   edge-addition closure of the splits of the previous level;
//! - [`enumerate_no_preserving`]: graphs without H-preserving deletable edges,
//!   from the three constrained operations followed by a mandatory filter;
//! - [`enumerate_all_3connected`]: every 3-connected graph, seeded by wheels.
//!
//! Parents are expanded in parallel in fixed-size chunks, but classes are
//! inserted sequentially in sorted parent order, so level contents and the
//! recorded provenance do not depend on the number of workers.

mod persist;
mod verify;

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::canonical::{are_isomorphic, canonical_form, CanonicalCode, DedupStore, Member};
use crate::connectivity::{is_minimal_unchecked, is_three_connected};
use crate::construction::{
    constrained_candidates, splitter_children, ConstructionStep, OperationMask,
};
use crate::error::{Error, Result};
use crate::families::{self, FamilySpec};
use crate::graph::Graph;
use crate::minors::MinorTester;

pub use persist::{
    read_level, write_count_report, write_level, CountRow, Manifest, Pipeline, PipelineRun,
};
pub use verify::{
    verify_bounds, verify_dirac, verify_dirac_level, verify_mader, BoundKind, BoundRecord,
    BoundReport, DiracReport, RankSummary,
};

const CHUNK: usize = 2048;

/// Where a level's graphs come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Seed {
    Family(FamilySpec),
    External {
        name: String,
        graph: Graph,
    },
    /// Wheels at every rank, for the all-3-connected engine.
    Wheels,
}

impl Seed {
    pub fn name(&self) -> String {
        match self {
            Seed::Family(f) => f.to_string(),
            Seed::External { name, .. } => name.clone(),
            Seed::Wheels => "all".to_string(),
        }
    }

    pub fn graph(&self) -> Option<Graph> {
        match self {
            Seed::Family(f) => f.build().ok(),
            Seed::External { graph, .. } => Some(graph.clone()),
            Seed::Wheels => None,
        }
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// All classes of one rank produced by an engine.
#[derive(Clone, Debug)]
pub struct LevelSet {
    pub rank: usize,
    pub seed: Seed,
    pub members: DedupStore,
}

impl LevelSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Canonical representatives in ascending code order.
    pub fn graphs(&self) -> Vec<Graph> {
        self.members
            .sorted_entries()
            .into_iter()
            .map(|(_, m)| m.graph.clone())
            .collect()
    }

    pub fn sorted_codes(&self) -> Vec<CanonicalCode> {
        self.members.sorted_codes()
    }

    pub fn contains_graph(&self, g: &Graph) -> bool {
        self.members.contains(&canonical_form(g).0)
    }

    /// Counts the members with a given edge count.
    pub fn count_with_edges(&self, edges: usize) -> usize {
        self.members
            .sorted_entries()
            .iter()
            .filter(|(_, m)| m.graph.edge_count() == edges)
            .count()
    }
}

/// True when `g` is isomorphic to a wheel.
pub fn is_wheel(g: &Graph) -> bool {
    let n = g.vertex_count();
    n >= 4
        && g.edge_count() == 2 * (n - 1)
        && families::wheel(n - 1).is_ok_and(|w| are_isomorphic(g, &w))
}

type Expander<'a> = dyn Fn(&Graph) -> Vec<(Graph, ConstructionStep)> + Sync + 'a;

/// Expands `parents` (in the given order), returning the classes not already
/// in `known`, each with its first provenance in parent/child order.
fn expand(
    parents: &[&Member],
    known: &DedupStore,
    children: &Expander<'_>,
) -> Vec<(CanonicalCode, Member)> {
    let mut out = Vec::new();
    for chunk in parents.chunks(CHUNK) {
        let found: Vec<Vec<(CanonicalCode, Member)>> = chunk
            .par_iter()
            .map(|parent| {
                let mut seen = HashSet::new();
                let mut kids = Vec::new();
                for (child, step) in children(&parent.graph) {
                    debug_assert!(
                        is_three_connected(&child),
                        "candidate lost 3-connectivity: {step}"
                    );
                    let (code, canon) = canonical_form(&child);
                    if known.contains(&code) || !seen.insert(code.clone()) {
                        continue;
                    }
                    kids.push((
                        code,
                        Member {
                            graph: canon,
                            provenance: parent.provenance.extended(step),
                        },
                    ));
                }
                kids
            })
            .collect();
        out.extend(found.into_iter().flatten());
    }
    out
}

fn add_children(g: &Graph) -> Vec<(Graph, ConstructionStep)> {
    g.non_edges()
        .map(|e| {
            (
                g.add_edge(e.0, e.1).expect("non-edge"),
                ConstructionStep::AddEdge { edge: e },
            )
        })
        .collect()
}

fn split_children(g: &Graph) -> Vec<(Graph, ConstructionStep)> {
    splitter_children(g)
        .into_iter()
        .filter(|(_, s)| matches!(s, ConstructionStep::Split { .. }))
        .collect()
}

/// Closes `store` under single edge-additions (a fixpoint over edge count).
pub fn add_closure(mut store: DedupStore) -> DedupStore {
    let mut frontier = store.sorted_codes();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for chunk in frontier.chunks(CHUNK) {
            let parents: Vec<&Member> = chunk
                .iter()
                .map(|c| store.get(c).expect("frontier member"))
                .collect();
            let found = expand(&parents, &store, &add_children);
            for (code, member) in found {
                if store.insert_member(code.clone(), member) {
                    next.push(code);
                }
            }
        }
        next.sort_unstable();
        frontier = next;
    }
    store
}

fn sorted_members(level: &LevelSet) -> Vec<&Member> {
    level
        .members
        .sorted_entries()
        .into_iter()
        .map(|(_, m)| m)
        .collect()
}

fn collect_store(found: Vec<(CanonicalCode, Member)>) -> DedupStore {
    let mut store = DedupStore::new();
    for (code, member) in found {
        store.insert_member(code, member);
    }
    store
}

/// Every vertex split of every member of `level`, deduplicated.
pub fn split_level(level: &LevelSet) -> DedupStore {
    collect_store(expand(
        &sorted_members(level),
        &DedupStore::new(),
        &split_children,
    ))
}

fn single_root_store(g: &Graph) -> DedupStore {
    let mut store = DedupStore::new();
    store.insert(g);
    store
}

fn seed_graph(seed: &Seed) -> Result<Graph> {
    seed.graph()
        .ok_or_else(|| Error::BadParameter(format!("seed {seed} has no single graph")))
}

fn check_seed(h: &Graph) -> Result<usize> {
    if !is_three_connected(h) {
        return Err(Error::NotThreeConnected);
    }
    h.rank()
}

/// The rank-`r(H)` level of the with-minor engine: the edge-addition closure of `{H}`.
pub fn with_minor_base(seed: &Seed) -> Result<LevelSet> {
    let h = seed_graph(seed)?;
    let rank = check_seed(&h)?;
    Ok(LevelSet {
        rank,
        seed: seed.clone(),
        members: add_closure(single_root_store(&h)),
    })
}

/// The next with-minor level: the edge-addition closure of all splits of `prev`.
pub fn next_level_with_minor(prev: &LevelSet) -> LevelSet {
    LevelSet {
        rank: prev.rank + 1,
        seed: prev.seed.clone(),
        members: add_closure(split_level(prev)),
    }
}

/// Continues `levels` (non-empty, consecutive ranks) up to `r_max`.
pub fn extend_with_minor(levels: &mut Vec<LevelSet>, r_max: usize) {
    while let Some(last) = levels.last() {
        if last.rank >= r_max {
            break;
        }
        let next = next_level_with_minor(last);
        levels.push(next);
    }
}

/// Every 3-connected graph with an `H`-minor of rank `r(H)..=r_max`, one per
/// isomorphism class. `H` should not be a wheel (see [`is_wheel`]).
pub fn enumerate_with_minor(h: &Graph, r_max: usize) -> Result<Vec<LevelSet>> {
    let seed = Seed::External {
        name: "seed".into(),
        graph: h.clone(),
    };
    enumerate_with_minor_seed(&seed, r_max)
}

pub fn enumerate_with_minor_seed(seed: &Seed, r_max: usize) -> Result<Vec<LevelSet>> {
    let mut levels = vec![with_minor_base(seed)?];
    extend_with_minor(&mut levels, r_max);
    Ok(levels)
}

/// Rank-3 level of the all-3-connected engine: `{K4}`.
pub fn all_base() -> LevelSet {
    LevelSet {
        rank: 3,
        seed: Seed::Wheels,
        members: add_closure(single_root_store(&families::wheel(3).expect("W3"))),
    }
}

pub fn next_level_all(prev: &LevelSet) -> LevelSet {
    let mut store = split_level(prev);
    store.insert(&families::wheel(prev.rank + 1).expect("wheel rank in range"));
    LevelSet {
        rank: prev.rank + 1,
        seed: Seed::Wheels,
        members: add_closure(store),
    }
}

pub fn extend_all(levels: &mut Vec<LevelSet>, r_max: usize) {
    while let Some(last) = levels.last() {
        if last.rank >= r_max {
            break;
        }
        let next = next_level_all(last);
        levels.push(next);
    }
}

/// Every simple 3-connected graph of rank `3..=r_max`.
pub fn enumerate_all_3connected(r_max: usize) -> Result<Vec<LevelSet>> {
    if r_max < 3 {
        return Err(Error::BadParameter(format!(
            "max rank must be at least 3, got {r_max}"
        )));
    }
    let mut levels = vec![all_base()];
    extend_all(&mut levels, r_max);
    Ok(levels)
}

/// The minimally 3-connected members of `level`.
pub fn extract_minimal(level: &LevelSet) -> LevelSet {
    let entries = level.members.sorted_entries();
    let keep: Vec<bool> = entries
        .par_iter()
        .map(|(_, m)| is_minimal_unchecked(&m.graph))
        .collect();
    let mut members = DedupStore::new();
    for ((code, m), k) in entries.into_iter().zip(keep) {
        if k {
            members.insert_member(code.clone(), m.clone());
        }
    }
    LevelSet {
        rank: level.rank,
        seed: level.seed.clone(),
        members,
    }
}

/// The rank-`r(H)` level of the no-preserving engine: `{H}` itself.
pub fn no_preserving_base(seed: &Seed) -> Result<LevelSet> {
    let h = seed_graph(seed)?;
    let rank = check_seed(&h)?;
    Ok(LevelSet {
        rank,
        seed: seed.clone(),
        members: single_root_store(&h),
    })
}

/// Candidates from operations (i)–(iii) in `mask` over every member of `prev`,
/// deduplicated, keeping only graphs without an H-preserving deletable edge.
/// Members of `prev` must themselves have an H-minor and no such edge.
pub fn next_level_no_preserving(
    prev: &LevelSet,
    tester: &MinorTester,
    mask: OperationMask,
) -> Result<LevelSet> {
    if mask.is_empty() {
        return Err(Error::BadParameter("operation mask is empty".into()));
    }
    let parents = sorted_members(prev);
    let bad = parents.par_iter().find_first(|m| {
        !is_three_connected(&m.graph)
            || !tester.has_minor(&m.graph)
            || !tester.no_preserving_unchecked(&m.graph)
    });
    if let Some(m) = bad {
        return Err(Error::SeedMismatch(m.graph.to_graph6()));
    }
    let expander = move |g: &Graph| constrained_candidates(g, mask);
    let candidates: Vec<(CanonicalCode, Member)> = expand(&parents, &DedupStore::new(), &expander);
    let candidates = collect_store(candidates);
    let entries = candidates.sorted_entries();
    let keep: Vec<bool> = entries
        .par_iter()
        .map(|(_, m)| tester.no_preserving_unchecked(&m.graph))
        .collect();
    let mut members = DedupStore::new();
    for ((code, m), k) in entries.into_iter().zip(keep) {
        if k {
            members.insert_member(code.clone(), m.clone());
        }
    }
    Ok(LevelSet {
        rank: prev.rank + 1,
        seed: prev.seed.clone(),
        members,
    })
}

pub fn extend_no_preserving(
    levels: &mut Vec<LevelSet>,
    tester: &MinorTester,
    mask: OperationMask,
    r_max: usize,
) -> Result<()> {
    while let Some(last) = levels.last() {
        if last.rank >= r_max {
            break;
        }
        let next = next_level_no_preserving(last, tester, mask)?;
        levels.push(next);
    }
    Ok(())
}

/// Graphs of rank `r(H)..=r_max` with an `H`-minor and no H-preserving deletable edge.
pub fn enumerate_no_preserving(
    seed: &Seed,
    r_max: usize,
    mask: OperationMask,
) -> Result<Vec<LevelSet>> {
    let h = seed_graph(seed)?;
    let tester = MinorTester::new(h);
    let mut levels = vec![no_preserving_base(seed)?];
    extend_no_preserving(&mut levels, &tester, mask, r_max)?;
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prism_seed() -> Seed {
        Seed::Family(FamilySpec::prism())
    }

    #[test]
    fn all_engine_small_levels() {
        let levels = enumerate_all_3connected(5).unwrap();
        assert_eq!(levels[0].len(), 1);
        assert!(levels[0].contains_graph(&families::complete(4).unwrap()));
        assert_eq!(levels[1].len(), 3);
        assert_eq!(levels[2].len(), 17);
        assert!(enumerate_all_3connected(2).is_err());
    }

    #[test]
    fn with_minor_base_contains_k6() {
        let base = with_minor_base(&prism_seed()).unwrap();
        assert_eq!(base.rank, 5);
        assert!(base.contains_graph(&families::complete(6).unwrap()));
        assert!(base.contains_graph(&families::prism()));
        assert_eq!(extract_minimal(&base).len(), 1);
    }

    #[test]
    fn no_preserving_rank_six() {
        let levels = enumerate_no_preserving(&prism_seed(), 6, OperationMask::ALL).unwrap();
        assert_eq!(levels[0].len(), 1);
        assert_eq!(levels[1].len(), 3);
        assert!(levels[1].graphs().iter().all(|g| g.edge_count() == 11));
    }

    #[test]
    fn no_preserving_rejects_bad_parent() {
        let tester = MinorTester::new(families::prism());
        let mut store = DedupStore::new();
        store.insert(&families::complete(6).unwrap());
        let level = LevelSet {
            rank: 5,
            seed: prism_seed(),
            members: store,
        };
        assert!(matches!(
            next_level_no_preserving(&level, &tester, OperationMask::ALL),
            Err(Error::SeedMismatch(_))
        ));
    }

    #[test]
    fn provenance_replays_to_member() {
        let levels = enumerate_with_minor_seed(&prism_seed(), 6).unwrap();
        for level in &levels {
            for (code, m) in level.members.sorted_entries() {
                let g = m.provenance.replay().unwrap();
                assert_eq!(&canonical_form(&g).0, code);
            }
        }
    }

    #[test]
    fn wheels_are_recognised() {
        assert!(is_wheel(&families::wheel(5).unwrap()));
        assert!(is_wheel(&families::complete(4).unwrap()));
        assert!(!is_wheel(&families::prism()));
    }
}
