use std::collections::BTreeSet;

use tricon::enumeration::{
    enumerate_all_3connected, enumerate_no_preserving, enumerate_with_minor, extract_minimal,
    LevelSet, Pipeline, PipelineRun, Seed,
};
use tricon::families::{self, FamilySpec};
use tricon::{
    canonical_code, has_minor, is_minimally_three_connected, is_three_connected, OperationMask,
};

fn codes(level: &LevelSet) -> BTreeSet<String> {
    level.sorted_codes().iter().map(|c| c.to_string()).collect()
}

fn prism_seed() -> Seed {
    Seed::Family(FamilySpec::prism())
}

#[test]
fn minimal_members_agree_across_engines() {
    let with_minor = enumerate_with_minor(&families::prism(), 7).unwrap();
    let np = enumerate_no_preserving(&prism_seed(), 7, OperationMask::ALL).unwrap();
    for (wm, np) in with_minor.iter().zip(&np) {
        assert_eq!(wm.rank, np.rank);
        let minimal = extract_minimal(wm);
        let np_minimal: BTreeSet<String> = np
            .members
            .sorted_entries()
            .into_iter()
            .filter(|(_, m)| is_minimally_three_connected(&m.graph).unwrap())
            .map(|(c, _)| c.to_string())
            .collect();
        assert_eq!(codes(&minimal), np_minimal, "rank {}", wm.rank);
        // graphs with no prism-preserving deletable edge include every minimal one
        assert!(codes(&minimal).is_subset(&codes(np)));
    }
}

#[test]
fn with_minor_levels_are_exactly_the_prism_minor_part_of_all() {
    let all = enumerate_all_3connected(7).unwrap();
    let with_minor = enumerate_with_minor(&families::prism(), 7).unwrap();
    let prism = families::prism();
    for wm in &with_minor {
        let full = &all[wm.rank - 3];
        let expected: BTreeSet<String> = full
            .members
            .sorted_entries()
            .into_iter()
            .filter(|(_, m)| has_minor(&m.graph, &prism))
            .map(|(c, _)| c.to_string())
            .collect();
        assert_eq!(codes(wm), expected, "rank {}", wm.rank);
    }
}

#[test]
fn all_counts_match_known_sequence() {
    // 3-connected graphs on 4..=8 vertices
    let all = enumerate_all_3connected(7).unwrap();
    let counts: Vec<usize> = all.iter().map(LevelSet::len).collect();
    assert_eq!(counts, [1, 3, 17, 136, 2388]);
}

#[test]
fn members_are_well_formed() {
    let prism = families::prism();
    for level in enumerate_with_minor(&prism, 7).unwrap() {
        for (code, m) in level.members.sorted_entries() {
            assert_eq!(m.graph.rank().unwrap(), level.rank);
            assert!(is_three_connected(&m.graph));
            assert!(has_minor(&m.graph, &prism));
            assert_eq!(&canonical_code(&m.graph), code);
            let replayed = m.provenance.replay().unwrap();
            assert_eq!(
                &canonical_code(&replayed),
                code,
                "provenance {}",
                m.provenance
            );
        }
    }
}

#[test]
fn no_preserving_provenance_replays() {
    for level in enumerate_no_preserving(&prism_seed(), 8, OperationMask::ALL).unwrap() {
        for (code, m) in level.members.sorted_entries() {
            let replayed = m.provenance.replay().unwrap();
            assert_eq!(&canonical_code(&replayed), code);
            assert_eq!(m.provenance.len(), level.rank - 5);
        }
    }
}

#[test]
fn level_sizes_grow_and_edges_stay_bounded() {
    let np = enumerate_no_preserving(&prism_seed(), 9, OperationMask::ALL).unwrap();
    for pair in np.windows(2) {
        assert!(pair[1].len() > pair[0].len());
    }
    for level in &np {
        let r = level.rank;
        let max = level.graphs().iter().map(|g| g.edge_count()).max().unwrap();
        assert!(max <= 9 + 3 * (r - 5));
        if r >= 6 {
            assert_eq!(max, 3 * r - 7, "rank {r}");
        }
    }
}

#[test]
fn narrower_masks_give_subsets() {
    let full = enumerate_no_preserving(&prism_seed(), 7, OperationMask::ALL).unwrap();
    for mask in ["i", "ii", "i,ii", "i,iii"] {
        let part = enumerate_no_preserving(&prism_seed(), 7, mask.parse().unwrap()).unwrap();
        for (p, f) in part.iter().zip(&full) {
            assert!(codes(p).is_subset(&codes(f)), "mask {mask} rank {}", p.rank);
        }
    }
    let only_split = enumerate_no_preserving(&prism_seed(), 6, "i".parse().unwrap()).unwrap();
    // every vertex of the prism has degree 3, so plain splits produce nothing
    assert_eq!(only_split[1].len(), 0);
}

fn run_with_workers(workers: usize, dir: &std::path::Path) -> Vec<Vec<u8>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .unwrap();
    pool.install(|| {
        for pipeline in [Pipeline::WithMinor, Pipeline::NoPreserving] {
            PipelineRun {
                pipeline,
                seed: prism_seed(),
                max_rank: 7,
                ops: OperationMask::ALL,
                out_dir: Some(dir.to_path_buf()),
                resume: false,
            }
            .run()
            .unwrap();
        }
    });
    let mut files: Vec<_> = walk(dir);
    files.sort();
    files.iter().map(|p| std::fs::read(p).unwrap()).collect()
}

fn walk(dir: &std::path::Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_dir() {
            out.extend(walk(&path));
        } else {
            out.push(path);
        }
    }
    out
}

#[test]
fn output_is_independent_of_worker_count() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let one = run_with_workers(1, a.path());
    let four = run_with_workers(4, b.path());
    assert!(!one.is_empty());
    assert_eq!(one, four);
}

#[test]
fn petersen_seed_has_nothing_below_its_rank_and_a_clean_next_level() {
    let seed = Seed::Family(FamilySpec::petersen());
    let levels = enumerate_no_preserving(&seed, 10, OperationMask::ALL).unwrap();
    assert_eq!(levels.len(), 2);
    assert_eq!(levels[0].len(), 1);
    for g in levels[1].graphs() {
        assert!(g.edge_count() <= 18);
    }
}
