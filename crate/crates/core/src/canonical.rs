//! Canonical labeling, isomorphism testing and deduplicated storage.
//!
//! The canonical form is the relabeling with the lexicographically smallest
//! graph6 string among the leaves of an individualization-refinement search
//! tree. Automorphisms found at leaves prune sibling subtrees, both by orbit
//! and by jumping back to the node where a path first left the first leaf.

use std::collections::HashMap;
use std::fmt;

use crate::construction::ProvenanceChain;
use crate::graph::{Graph, VertexSet};
use crate::graph6::encode_adjacency;

/// graph6 bytes of the canonically relabeled graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Box<[u8]>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ascii")
    }

    /// The canonical representative encoded by this code.
    pub fn to_graph(&self) -> Graph {
        Graph::from_graph6(self.as_str()).expect("canonical codes are valid graph6")
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.as_str())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Splits cells by neighbor counts into each splitter cell until the ordered
/// partition is equitable. Fragments are ordered by count, which keeps the
/// result a function of the graph and the input partition alone.
fn refine(g: &Graph, cells: &mut Vec<u64>) {
    let adj = g.adjacency();
    let mut buckets = [0u64; 64];
    'outer: loop {
        for s in 0..cells.len() {
            let splitter = cells[s];
            let mut out: Vec<u64> = Vec::with_capacity(cells.len() + 2);
            let mut split_any = false;
            for &cell in cells.iter() {
                if cell & (cell - 1) == 0 {
                    out.push(cell);
                    continue;
                }
                let mut lo = usize::MAX;
                let mut hi = 0;
                for v in VertexSet(cell) {
                    let c = (adj[v] & splitter).count_ones() as usize;
                    buckets[c] |= 1 << v;
                    lo = lo.min(c);
                    hi = hi.max(c);
                }
                if lo == hi {
                    buckets[lo] = 0;
                    out.push(cell);
                    continue;
                }
                split_any = true;
                for b in &mut buckets[lo..=hi] {
                    if *b != 0 {
                        out.push(*b);
                        *b = 0;
                    }
                }
            }
            if split_any {
                *cells = out;
                continue 'outer;
            }
        }
        return;
    }
}

fn individualize(cells: &[u64], cell_index: usize, v: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(cells.len() + 1);
    out.extend_from_slice(&cells[..cell_index]);
    out.push(1 << v);
    out.push(cells[cell_index] & !(1 << v));
    out.extend_from_slice(&cells[cell_index + 1..]);
    out
}

struct Leaf {
    code: Vec<u8>,
    lab: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    first_path: Vec<usize>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn leaf_code(&self, lab: &[usize]) -> Vec<u8> {
        let n = lab.len();
        let mut pos = [0usize; 64];
        for (i, &v) in lab.iter().enumerate() {
            pos[v] = i;
        }
        let adj = self.g.adjacency();
        let relabeled: Vec<u64> = lab
            .iter()
            .map(|&v| {
                VertexSet(adj[v])
                    .iter()
                    .fold(0u64, |acc, x| acc | 1 << pos[x])
            })
            .collect();
        debug_assert_eq!(relabeled.len(), n);
        encode_adjacency(&relabeled)
    }

    fn record_automorphism(&mut self, from: &[usize], to: &[usize]) {
        let mut gamma = vec![0usize; from.len()];
        for (a, b) in from.iter().zip(to) {
            gamma[*a] = *b;
        }
        self.autos.push(gamma);
    }

    /// Whether `w` shares an orbit with an already explored sibling under the
    /// known automorphisms that fix `path` pointwise.
    fn in_explored_orbit(&self, path: &[usize], tried: &[usize], w: usize) -> bool {
        if tried.is_empty() {
            return false;
        }
        let n = self.g.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for gamma in &self.autos {
            if path.iter().any(|&v| gamma[v] != v) {
                continue;
            }
            for (v, &image) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, image));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let root = find(&mut parent, w);
        tried.iter().any(|&t| find(&mut parent, t) == root)
    }

    /// Explores the subtree below `cells`. Returns `Some(level)` to abandon
    /// every node deeper than `level`.
    fn explore(
        &mut self,
        cells: Vec<u64>,
        path: &mut Vec<usize>,
        first_div: Option<usize>,
    ) -> Option<usize> {
        let level = path.len();
        let Some(target) = cells.iter().position(|c| c & (c - 1) != 0) else {
            let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
            let code = self.leaf_code(&lab);
            let Some(first) = &self.first else {
                self.first_path = path.clone();
                self.first = Some(Leaf {
                    code: code.clone(),
                    lab: lab.clone(),
                });
                self.best = Some(Leaf { code, lab });
                return None;
            };
            if code == first.code {
                let from = first.lab.clone();
                self.record_automorphism(&from, &lab);
                return first_div;
            }
            let best = self.best.as_ref().expect("best set with first");
            match code.cmp(&best.code) {
                std::cmp::Ordering::Less => self.best = Some(Leaf { code, lab }),
                std::cmp::Ordering::Equal => {
                    let from = best.lab.clone();
                    self.record_automorphism(&from, &lab);
                }
                std::cmp::Ordering::Greater => {}
            }
            return None;
        };

        let mut tried: Vec<usize> = Vec::new();
        for w in VertexSet(cells[target]) {
            if self.in_explored_orbit(path, &tried, w) {
                continue;
            }
            let mut child = individualize(&cells, target, w);
            refine(self.g, &mut child);
            // the first child of a node on the first path stays on it
            let div = match first_div {
                Some(d) => Some(d),
                None if self.first.is_some() => Some(level),
                None => None,
            };
            path.push(w);
            let jump = self.explore(child, path, div);
            path.pop();
            tried.push(w);
            if let Some(l) = jump {
                if l < level {
                    return Some(l);
                }
            }
        }
        None
    }
}

/// Canonical code together with the canonically relabeled graph.
pub fn canonical_form(g: &Graph) -> (CanonicalCode, Graph) {
    let n = g.vertex_count();
    if n == 0 {
        return (CanonicalCode(encode_adjacency(&[]).into()), g.clone());
    }
    // initial partition by degree, ascending
    let mut by_degree = [0u64; 64];
    for v in 0..n {
        by_degree[g.degree(v)] |= 1 << v;
    }
    let mut cells: Vec<u64> = by_degree.iter().copied().filter(|&c| c != 0).collect();
    refine(g, &mut cells);

    let mut search = Search {
        g,
        first: None,
        first_path: Vec::new(),
        best: None,
        autos: Vec::new(),
    };
    search.explore(cells, &mut Vec::new(), None);
    let best = search.best.expect("search visits at least one leaf");
    let mut perm = vec![0usize; n];
    for (i, &v) in best.lab.iter().enumerate() {
        perm[v] = i;
    }
    let canon = g.permute(&perm);
    debug_assert_eq!(encode_adjacency(canon.adjacency()), best.code);
    (CanonicalCode(best.code.into()), canon)
}

pub fn canonical_code(g: &Graph) -> CanonicalCode {
    canonical_form(g).0
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count()
        || a.edge_count() != b.edge_count()
        || a.degree_sequence() != b.degree_sequence()
    {
        return false;
    }
    canonical_code(a) == canonical_code(b)
}

/// A stored isomorphism-class representative.
#[derive(Clone, Debug)]
pub struct Member {
    /// Canonically labeled representative.
    pub graph: Graph,
    pub provenance: ProvenanceChain,
}

/// One representative per isomorphism class, keyed by canonical code. The first
/// insertion of a class wins, so merging stores left to right is associative
/// and matches sequential insertion.
#[derive(Clone, Debug, Default)]
pub struct DedupStore {
    entries: HashMap<CanonicalCode, Member>,
}

impl DedupStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, code: &CanonicalCode) -> bool {
        self.entries.contains_key(code)
    }

    pub fn get(&self, code: &CanonicalCode) -> Option<&Member> {
        self.entries.get(code)
    }

    /// Inserts `g` as its own provenance root. Returns true for a new class.
    pub fn insert(&mut self, g: &Graph) -> bool {
        let (code, canon) = canonical_form(g);
        if self.entries.contains_key(&code) {
            return false;
        }
        let provenance = ProvenanceChain::root(canon.clone());
        self.entries.insert(
            code,
            Member {
                graph: canon,
                provenance,
            },
        );
        true
    }

    /// Inserts an already canonical member under `code`.
    pub fn insert_member(&mut self, code: CanonicalCode, member: Member) -> bool {
        use std::collections::hash_map::Entry;
        match self.entries.entry(code) {
            Entry::Occupied(_) => false,
            Entry::Vacant(v) => {
                v.insert(member);
                true
            }
        }
    }

    /// Left-biased union: classes already present keep their representative.
    pub fn merge(&mut self, other: DedupStore) {
        for (code, member) in other.sorted_entries_owned() {
            self.insert_member(code, member);
        }
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&CanonicalCode, &Member) -> bool) {
        self.entries.retain(|c, m| keep(c, m));
    }

    pub fn codes(&self) -> impl Iterator<Item = &CanonicalCode> {
        self.entries.keys()
    }

    pub fn sorted_codes(&self) -> Vec<CanonicalCode> {
        let mut v: Vec<CanonicalCode> = self.entries.keys().cloned().collect();
        v.sort_unstable();
        v
    }

    /// Entries in ascending code order.
    pub fn sorted_entries(&self) -> Vec<(&CanonicalCode, &Member)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort_unstable_by(|a, b| a.0.cmp(b.0));
        v
    }

    fn sorted_entries_owned(self) -> Vec<(CanonicalCode, Member)> {
        let mut v: Vec<_> = self.entries.into_iter().collect();
        v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        v
    }
}

/// Inserts `g` into `store`; true when it is a new isomorphism class.
pub fn dedup_insert(store: &mut DedupStore, g: &Graph) -> bool {
    store.insert(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn shuffled(g: &Graph, rng: &mut rand::rngs::StdRng) -> Graph {
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(rng);
        g.permute(&perm)
    }

    #[test]
    fn code_is_permutation_invariant() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for g in [
            families::prism(),
            families::petersen(),
            families::complete(7).unwrap(),
            families::k3p_variant(4, 2).unwrap(),
            families::wheel(6).unwrap(),
        ] {
            let c = canonical_code(&g);
            for _ in 0..50 {
                assert_eq!(canonical_code(&shuffled(&g, &mut rng)), c);
            }
        }
    }

    #[test]
    fn code_separates_prism_and_k33() {
        let k33 = families::k3p_variant(3, 0).unwrap();
        assert_ne!(canonical_code(&families::prism()), canonical_code(&k33));
        assert!(!are_isomorphic(&families::prism(), &k33));
        assert!(!are_isomorphic(
            &families::wheel(4).unwrap(),
            &families::k5_minus_e()
        ));
    }

    #[test]
    fn code_is_deterministic_and_decodes() {
        let g = families::petersen();
        let (a, canon) = canonical_form(&g);
        assert_eq!(a, canonical_code(&g));
        assert_eq!(a.to_graph(), canon);
        assert_eq!(canonical_code(&canon), a);
    }

    #[test]
    fn dedup_insert_examples() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        let prism = families::prism();
        let mut store = DedupStore::new();
        assert!(dedup_insert(&mut store, &prism));
        assert!(!dedup_insert(&mut store, &prism));
        assert!(!dedup_insert(&mut store, &shuffled(&prism, &mut rng)));
        assert!(dedup_insert(
            &mut store,
            &families::k3p_variant(3, 0).unwrap()
        ));
        assert_eq!(store.len(), 2);
    }

    #[test]
    fn merge_is_left_biased() {
        let prism = families::prism();
        let mut a = DedupStore::new();
        a.insert(&prism);
        let mut b = DedupStore::new();
        b.insert(&prism.permute(&[5, 4, 3, 2, 1, 0]));
        b.insert(&families::complete(5).unwrap());
        let before = a.get(&canonical_code(&prism)).unwrap().graph.clone();
        a.merge(b);
        assert_eq!(a.len(), 2);
        assert_eq!(a.get(&canonical_code(&prism)).unwrap().graph, before);
    }
}
