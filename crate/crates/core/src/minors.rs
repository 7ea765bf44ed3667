//! Minor containment and H-preserving deletable edges.
//!
//! The primary test searches for branch sets directly. When `G` is connected,
//! any model of `H` can be grown until its branch sets cover `V(G)`, so it is
//! enough to enumerate partitions of `V(G)` into exactly `|V(H)|` connected
//! blocks (as restricted growth strings) and look for `H` as a spanning
//! subgraph of the quotient. The independent oracle closes `G` under single
//! deletions and contractions instead.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::canonical::{canonical_code, CanonicalCode};
use crate::connectivity::{deletion_candidates, is_three_connected};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet};

/// Branch sets certifying that `H` is a minor of `G`: `branch_sets[a]` is the
/// set of `G`-vertices contracted onto vertex `a` of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub branch_sets: Vec<VertexSet>,
}

impl MinorWitness {
    /// Checks disjointness, connectivity of each set and coverage of every edge of `h`.
    pub fn verify(&self, g: &Graph, h: &Graph) -> bool {
        if self.branch_sets.len() != h.vertex_count() {
            return false;
        }
        let mut used = VertexSet::EMPTY;
        for &b in &self.branch_sets {
            if !b.is_subset(g.vertices())
                || !b.intersection(used).is_empty()
                || !g.is_connected_within(b)
            {
                return false;
            }
            used = used.union(b);
        }
        h.edges().all(|(a, b)| self.touching(g, a, b))
    }

    fn touching(&self, g: &Graph, a: usize, b: usize) -> bool {
        let nb = self.branch_sets[a]
            .iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.union(g.neighbors(v)));
        !nb.intersection(self.branch_sets[b]).is_empty()
    }

    /// Recovers `(X, Y)` with `H ≅ G \ X / Y`: `Y` is a spanning forest of the
    /// branch sets, `X` every other edge except one realizing each edge of `h`.
    pub fn deletions_and_contractions(&self, g: &Graph, h: &Graph) -> (Vec<Edge>, Vec<Edge>) {
        let mut contract = Vec::new();
        for &b in &self.branch_sets {
            let Some(start) = b.first() else { continue };
            let mut seen = VertexSet::singleton(start);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in g.neighbors(v).intersection(b).difference(seen) {
                    seen.insert(w);
                    contract.push(crate::graph::edge(v, w));
                    stack.push(w);
                }
            }
        }
        let mut kept: Vec<Edge> = Vec::new();
        for (a, b) in h.edges() {
            let (sa, sb) = (self.branch_sets[a], self.branch_sets[b]);
            if let Some((v, w)) = sa
                .iter()
                .find_map(|v| g.neighbors(v).intersection(sb).first().map(|w| (v, w)))
            {
                kept.push(crate::graph::edge(v, w));
            }
        }
        let delete = g
            .edges()
            .filter(|e| !contract.contains(e) && !kept.contains(e))
            .collect();
        contract.sort_unstable();
        (delete, contract)
    }
}

/// Maps `h` onto a spanning subgraph of the quotient `q` (both on `k` vertices).
struct QuotientMatcher<'a> {
    h: &'a Graph,
    order: Vec<usize>,
}

impl<'a> QuotientMatcher<'a> {
    fn new(h: &'a Graph) -> Self {
        let k = h.vertex_count();
        let mut order = Vec::with_capacity(k);
        let mut placed = VertexSet::EMPTY;
        while order.len() < k {
            let next = (0..k)
                .filter(|v| !placed.contains(*v))
                .max_by_key(|&v| {
                    (
                        h.neighbors(v).intersection(placed).len(),
                        h.degree(v),
                        std::cmp::Reverse(v),
                    )
                })
                .expect("unplaced vertex");
            placed.insert(next);
            order.push(next);
        }
        QuotientMatcher { h, order }
    }

    fn find(&self, q: &[u64]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order.len()];
        self.extend(q, 0, &mut map, 0).then_some(map)
    }

    fn extend(&self, q: &[u64], i: usize, map: &mut [usize], used: u64) -> bool {
        let Some(&x) = self.order.get(i) else {
            return true;
        };
        let dx = self.h.degree(x) as u32;
        let mut need = !used & VertexSet::full(q.len()).0;
        for y in self.h.neighbors(x) {
            if map[y] != usize::MAX {
                need &= q[map[y]];
            }
        }
        for c in VertexSet(need) {
            if q[c].count_ones() < dx {
                continue;
            }
            map[x] = c;
            if self.extend(q, i + 1, map, used | 1 << c) {
                return true;
            }
        }
        map[x] = usize::MAX;
        false
    }
}

struct PartitionSearch<'a> {
    g: &'a Graph,
    k: usize,
    order: Vec<usize>,
    allow_unused: bool,
    h_min_degree: usize,
    matcher: QuotientMatcher<'a>,
    h_edges: usize,
    blocks: Vec<u64>,
}

impl PartitionSearch<'_> {
    fn run(&mut self) -> Option<MinorWitness> {
        self.blocks = vec![0; self.k];
        self.step(0, 0)
    }

    fn unassigned_from(&self, i: usize) -> u64 {
        self.order[i..].iter().fold(0u64, |acc, &v| acc | 1 << v)
    }

    fn sealed_block_is_dead(&self, b: usize, open: u64) -> bool {
        let block = self.blocks[b];
        let nb = VertexSet(block)
            .iter()
            .fold(0u64, |acc, v| acc | self.g.neighbors(v).0);
        if nb & open != 0 {
            return false;
        }
        if !self.g.is_connected_within(VertexSet(block)) {
            return true;
        }
        let touching = self
            .blocks
            .iter()
            .filter(|&&o| o != block && o & nb != 0)
            .count();
        touching < self.h_min_degree
    }

    fn step(&mut self, i: usize, open_blocks: usize) -> Option<MinorWitness> {
        if i == self.order.len() {
            return if open_blocks == self.k {
                self.check_leaf()
            } else {
                None
            };
        }
        if !self.allow_unused && open_blocks + (self.order.len() - i) < self.k {
            return None;
        }
        let v = self.order[i];
        let rest = self.unassigned_from(i + 1);
        let options = open_blocks + usize::from(open_blocks < self.k);
        for b in 0..options {
            self.blocks[b] |= 1 << v;
            let next_open = open_blocks.max(b + 1);
            let dead = (0..next_open).any(|c| self.sealed_block_is_dead(c, rest));
            if !dead {
                if let Some(w) = self.step(i + 1, next_open) {
                    return Some(w);
                }
            }
            self.blocks[b] &= !(1 << v);
        }
        if self.allow_unused {
            let dead = (0..open_blocks).any(|c| self.sealed_block_is_dead(c, rest));
            if !dead {
                if let Some(w) = self.step(i + 1, open_blocks) {
                    return Some(w);
                }
            }
        }
        None
    }

    fn check_leaf(&self) -> Option<MinorWitness> {
        if !self
            .blocks
            .iter()
            .all(|&b| self.g.is_connected_within(VertexSet(b)))
        {
            return None;
        }
        let nbhd: Vec<u64> = self
            .blocks
            .iter()
            .map(|&b| {
                VertexSet(b)
                    .iter()
                    .fold(0u64, |acc, v| acc | self.g.neighbors(v).0)
            })
            .collect();
        let mut q = vec![0u64; self.k];
        for a in 0..self.k {
            for b in a + 1..self.k {
                if nbhd[a] & self.blocks[b] != 0 {
                    q[a] |= 1 << b;
                    q[b] |= 1 << a;
                }
            }
        }
        let q_edges: usize = q.iter().map(|x| x.count_ones() as usize).sum::<usize>() / 2;
        if q_edges < self.h_edges {
            return None;
        }
        let map = self.matcher.find(&q)?;
        Some(MinorWitness {
            branch_sets: map.iter().map(|&blk| VertexSet(self.blocks[blk])).collect(),
        })
    }
}

fn bfs_order(g: &Graph, within: VertexSet) -> Vec<usize> {
    let mut order = Vec::with_capacity(within.len());
    let mut seen = VertexSet::EMPTY;
    for s in within {
        if seen.contains(s) {
            continue;
        }
        seen.insert(s);
        let mut head = order.len();
        order.push(s);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for w in g.neighbors(v).intersection(within).difference(seen) {
                seen.insert(w);
                order.push(w);
            }
        }
    }
    order
}

fn quick_reject(g: &Graph, h: &Graph) -> bool {
    if g.vertex_count() < h.vertex_count() || g.edge_count() < h.edge_count() {
        return true;
    }
    // a branch set of an H-vertex of degree >= 3 contains a G-vertex of degree >= 3
    let heavy = |x: &Graph| (0..x.vertex_count()).filter(|&v| x.degree(v) >= 3).count();
    heavy(g) < heavy(h)
}

/// A branch-set certificate for `H ≤ G`, if one exists.
pub fn find_minor_witness(g: &Graph, h: &Graph) -> Option<MinorWitness> {
    let k = h.vertex_count();
    if k == 0 {
        return Some(MinorWitness {
            branch_sets: Vec::new(),
        });
    }
    if quick_reject(g, h) {
        return None;
    }
    let matcher = || QuotientMatcher::new(h);
    let search = |within: VertexSet, allow_unused: bool| {
        let sub_edges: usize = within
            .iter()
            .map(|v| g.neighbors(v).intersection(within).len())
            .sum::<usize>()
            / 2;
        if within.len() < k || sub_edges < h.edge_count() {
            return None;
        }
        PartitionSearch {
            g,
            k,
            order: bfs_order(g, within),
            allow_unused,
            h_min_degree: h.min_degree(),
            matcher: matcher(),
            h_edges: h.edge_count(),
            blocks: Vec::new(),
        }
        .run()
    };
    if h.is_connected() {
        g.components().into_iter().find_map(|c| search(c, false))
    } else {
        search(g.vertices(), true)
    }
}

pub fn has_minor(g: &Graph, h: &Graph) -> bool {
    find_minor_witness(g, h).is_some()
}

/// Delete/contract closure oracle for minor containment, memoized on
/// canonical codes. `h` must not have isolated vertices.
pub struct MinorOracle {
    target: CanonicalCode,
    vertices: usize,
    edges: usize,
    memo: HashMap<CanonicalCode, bool>,
}

impl MinorOracle {
    pub fn new(h: &Graph) -> Self {
        debug_assert_eq!(h.without_isolated().vertex_count(), h.vertex_count());
        MinorOracle {
            target: canonical_code(h),
            vertices: h.vertex_count(),
            edges: h.edge_count(),
            memo: HashMap::new(),
        }
    }

    pub fn contains(&mut self, g: &Graph) -> bool {
        self.visit(&g.without_isolated())
    }

    fn visit(&mut self, g: &Graph) -> bool {
        let (n, m) = (g.vertex_count(), g.edge_count());
        if n < self.vertices || m < self.edges {
            return false;
        }
        let code = canonical_code(g);
        if n == self.vertices && m == self.edges {
            return code == self.target;
        }
        if let Some(&known) = self.memo.get(&code) {
            return known;
        }
        let mut found = false;
        let edges: Vec<Edge> = g.edges().collect();
        for &e in &edges {
            if self.visit(&g.delete_edge(e).expect("edge of g")) {
                found = true;
                break;
            }
            if n > self.vertices && self.visit(&g.contract_edge(e).expect("edge of g")) {
                found = true;
                break;
            }
        }
        self.memo.insert(code, found);
        found
    }
}

/// Independent minor test by exhaustive deletion/contraction. Exponential; keep
/// `|V(G)|` small.
pub fn oracle_has_minor(g: &Graph, h: &Graph) -> bool {
    MinorOracle::new(h).contains(g)
}

/// Cached minor tests against a fixed `H`. Safe to share between threads; the
/// cache is cleared when it reaches its capacity.
pub struct MinorTester {
    h: Graph,
    cache: RwLock<HashMap<CanonicalCode, bool>>,
    capacity: usize,
}

impl MinorTester {
    pub const DEFAULT_CAPACITY: usize = 1 << 20;

    pub fn new(h: Graph) -> Self {
        Self::with_capacity(h, Self::DEFAULT_CAPACITY)
    }

    pub fn with_capacity(h: Graph, capacity: usize) -> Self {
        MinorTester {
            h,
            cache: RwLock::new(HashMap::new()),
            capacity: capacity.max(1),
        }
    }

    pub fn target(&self) -> &Graph {
        &self.h
    }

    pub fn has_minor(&self, g: &Graph) -> bool {
        if quick_reject(g, &self.h) {
            return false;
        }
        let code = canonical_code(g);
        if let Some(&v) = self.cache.read().expect("cache lock").get(&code) {
            return v;
        }
        let v = has_minor(g, &self.h);
        let mut cache = self.cache.write().expect("cache lock");
        if cache.len() >= self.capacity {
            cache.clear();
        }
        cache.insert(code, v);
        v
    }

    fn check(&self, g: &Graph) -> Result<()> {
        if !is_three_connected(g) {
            return Err(Error::NotThreeConnected);
        }
        if !self.has_minor(g) {
            return Err(Error::NoHMinor);
        }
        Ok(())
    }

    fn is_preserving(&self, g: &Graph, e: Edge) -> bool {
        let d = g.delete_edge(e).expect("edge of g");
        is_three_connected(&d) && self.has_minor(&d)
    }

    pub fn preserving_deletable_edges(&self, g: &Graph) -> Result<Vec<Edge>> {
        self.check(g)?;
        Ok(deletion_candidates(g)
            .filter(|&e| self.is_preserving(g, e))
            .collect())
    }

    pub fn has_no_preserving_deletable_edge(&self, g: &Graph) -> Result<bool> {
        self.check(g)?;
        Ok(self.no_preserving_unchecked(g))
    }

    /// Assumes `g` is 3-connected with an H-minor.
    pub(crate) fn no_preserving_unchecked(&self, g: &Graph) -> bool {
        !deletion_candidates(g).any(|e| self.is_preserving(g, e))
    }
}

/// Edges `e` with `G \ e` 3-connected and still containing an `H`-minor.
pub fn preserving_deletable_edges(g: &Graph, h: &Graph) -> Result<Vec<Edge>> {
    MinorTester::new(h.clone()).preserving_deletable_edges(g)
}

pub fn has_no_preserving_deletable_edge(g: &Graph, h: &Graph) -> Result<bool> {
    MinorTester::new(h.clone()).has_no_preserving_deletable_edge(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{op_add_then_split, op_add_two_then_split};
    use crate::families;

    #[test]
    fn prism_examples() {
        let prism = families::prism();
        assert!(has_minor(&prism, &prism));
        assert!(!has_minor(&families::k3p_variant(3, 0).unwrap(), &prism));
        assert!(!has_minor(&families::wheel(5).unwrap(), &prism));
        assert!(has_minor(&families::petersen(), &prism));
        assert!(has_minor(&families::complete(6).unwrap(), &prism));
    }

    #[test]
    fn identity_witness() {
        let prism = families::prism();
        let w = find_minor_witness(&prism, &prism).unwrap();
        assert!(w.verify(&prism, &prism));
        assert!(w.branch_sets.iter().all(|b| b.len() == 1));
        assert!(find_minor_witness(&families::wheel(5).unwrap(), &prism).is_none());
    }

    #[test]
    fn witness_after_constrained_split() {
        let prism = families::prism();
        for (g, _) in op_add_then_split(&prism) {
            let w = find_minor_witness(&g, &prism).expect("split preserves the minor");
            assert!(w.verify(&g, &prism));
            let (x, y) = w.deletions_and_contractions(&g, &prism);
            assert_eq!(x.len() + y.len() + prism.edge_count(), g.edge_count());
            let inner: usize = w.branch_sets.iter().map(|b| b.len() - 1).sum();
            assert_eq!(y.len(), inner);
            assert!(y
                .iter()
                .all(|&(a, b)| w.branch_sets.iter().any(|s| s.contains(a) && s.contains(b))));
        }
    }

    #[test]
    fn oracle_agrees_on_small_examples() {
        let prism = families::prism();
        assert!(oracle_has_minor(&prism, &prism));
        assert!(!oracle_has_minor(
            &families::k3p_variant(3, 0).unwrap(),
            &prism
        ));
        assert!(!oracle_has_minor(&families::wheel(5).unwrap(), &prism));
        assert!(oracle_has_minor(&families::complete(6).unwrap(), &prism));
    }

    #[test]
    fn disconnected_inputs() {
        let k4 = families::complete(4).unwrap();
        let two = Graph::from_edges(8, k4.edges().chain(k4.edges().map(|(a, b)| (a + 4, b + 4))))
            .unwrap();
        assert!(has_minor(&two, &k4));
        assert!(has_minor(&two, &two));
        assert!(!has_minor(&k4, &two));
        let k5 = families::complete(5).unwrap();
        assert!(!has_minor(&two, &k5));
    }

    #[test]
    fn preserving_edge_examples() {
        let prism = families::prism();
        assert!(preserving_deletable_edges(&prism, &prism)
            .unwrap()
            .is_empty());
        assert_eq!(has_no_preserving_deletable_edge(&prism, &prism), Ok(true));
        let k6 = families::complete(6).unwrap();
        assert_eq!(preserving_deletable_edges(&k6, &prism).unwrap().len(), 15);
        assert_eq!(has_no_preserving_deletable_edge(&k6, &prism), Ok(false));
        assert_eq!(
            preserving_deletable_edges(&families::wheel(5).unwrap(), &prism),
            Err(Error::NoHMinor)
        );
        let c6 = Graph::from_edges(6, (0..6).map(|i| crate::graph::edge(i, (i + 1) % 6))).unwrap();
        assert_eq!(
            preserving_deletable_edges(&c6, &prism),
            Err(Error::NotThreeConnected)
        );
    }

    #[test]
    fn op_iii_results_on_prism_all_have_preserving_edges() {
        let prism = families::prism();
        let tester = MinorTester::new(prism.clone());
        for (g, _) in op_add_two_then_split(&prism) {
            assert_eq!(tester.has_no_preserving_deletable_edge(&g), Ok(false));
        }
    }
}
