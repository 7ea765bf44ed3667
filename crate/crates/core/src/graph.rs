//! Simple undirected graphs on dense vertex sets `0..n` with bitset adjacency.

use std::fmt;

use crate::error::{Error, Result};

/// An unordered vertex pair, always stored with the smaller endpoint first.
pub type Edge = (usize, usize);

/// Normalizes a vertex pair so the smaller index comes first.
#[inline]
pub fn edge(u: usize, w: usize) -> Edge {
    if u < w {
        (u, w)
    } else {
        (w, u)
    }
}

/// A set of vertices of a graph with at most 64 vertices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    /// All vertices `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// A vertex split: `target` keeps the neighbors in `side_one`, a new vertex
/// (index `vertex_count`) takes the neighbors in `side_two`, and the two are
/// joined by the new edge `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitSpec {
    pub target: usize,
    pub side_one: VertexSet,
    pub side_two: VertexSet,
}

impl SplitSpec {
    pub fn new(target: usize, side_one: VertexSet, side_two: VertexSet) -> Self {
        SplitSpec {
            target,
            side_one,
            side_two,
        }
    }

    /// Checks the split invariants against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        g.check_vertex(self.target)?;
        let degree = g.degree(self.target);
        if degree < 4 {
            return Err(Error::DegreeTooLow {
                vertex: self.target,
                degree,
            });
        }
        let nbrs = g.neighbors(self.target);
        let (a, b) = (self.side_one, self.side_two);
        if a.len() < 2 || b.len() < 2 || !a.intersection(b).is_empty() || a.union(b) != nbrs {
            return Err(Error::BadPartition(self.target));
        }
        Ok(())
    }
}

/// A simple undirected graph. Values are immutable; every operation returns a
/// new graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub const MAX_VERTICES: usize = 62;

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > Self::MAX_VERTICES {
            return Err(Error::TooManyVertices {
                got: n,
                max: Self::MAX_VERTICES,
            });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from an edge list, rejecting loops, repeated edges and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut g = Graph::empty(n)?;
        for (u, w) in edges {
            g.check_vertex(u)?;
            g.check_vertex(w)?;
            if u == w {
                return Err(Error::SelfLoop(u));
            }
            if g.has_edge(u, w) {
                return Err(Error::AdjacentPair(u, w));
            }
            g.link(u, w);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency bitsets. Loops and asymmetric rows are rejected.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        if n > Self::MAX_VERTICES {
            return Err(Error::TooManyVertices {
                got: n,
                max: Self::MAX_VERTICES,
            });
        }
        let g = Graph { n, adj };
        for v in 0..n {
            if g.adj[v] & !VertexSet::full(n).0 != 0 {
                return Err(Error::VertexOutOfRange {
                    vertex: 63 - g.adj[v].leading_zeros() as usize,
                    vertex_count: n,
                });
            }
            if g.has_edge(v, v) {
                return Err(Error::SelfLoop(v));
            }
            for w in g.neighbors(v) {
                if !g.has_edge(w, v) {
                    return Err(Error::Parse(format!("asymmetric adjacency {v}-{w}")));
                }
            }
        }
        Ok(g)
    }

    pub(crate) fn from_adjacency_unchecked(adj: Vec<u64>) -> Self {
        Graph { n: adj.len(), adj }
    }

    #[inline]
    fn link(&mut self, u: usize, w: usize) {
        self.adj[u] |= 1 << w;
        self.adj[w] |= 1 << u;
    }

    #[inline]
    fn unlink(&mut self, u: usize, w: usize) {
        self.adj[u] &= !(1 << w);
        self.adj[w] &= !(1 << u);
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.n,
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|a| a.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub(crate) fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    #[inline]
    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        u < self.n && w < self.n && self.adj[u] >> w & 1 == 1
    }

    /// Edges in lexicographic order `(u, w)` with `u < w`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet(self.adj[u] & !((2u64 << u) - 1))
                .iter()
                .map(move |w| (u, w))
        })
    }

    /// Non-adjacent distinct pairs in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let all = VertexSet::full(self.n).0;
        (0..self.n).flat_map(move |u| {
            VertexSet(!self.adj[u] & all & !((2u64 << u) - 1))
                .iter()
                .map(move |w| (u, w))
        })
    }

    /// The edge-addition `G + e`.
    pub fn add_edge(&self, u: usize, w: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(w)?;
        if u == w {
            return Err(Error::SelfLoop(u));
        }
        if self.has_edge(u, w) {
            return Err(Error::AdjacentPair(u, w));
        }
        let mut g = self.clone();
        g.link(u, w);
        Ok(g)
    }

    /// The edge-deletion `G \ e`; vertices left isolated are removed and the
    /// remaining vertices renumbered in order.
    pub fn delete_edge(&self, e: Edge) -> Result<Graph> {
        let (u, w) = e;
        if !self.has_edge(u, w) {
            return Err(Error::MissingEdge(edge(u, w)));
        }
        let mut g = self.clone();
        g.unlink(u, w);
        let isolated: VertexSet = [u, w].into_iter().filter(|&v| g.adj[v] == 0).collect();
        if isolated.is_empty() {
            Ok(g)
        } else {
            Ok(g.induced(g.vertices().difference(isolated)))
        }
    }

    /// The edge-contraction `G / e`. The endpoints merge into the smaller index,
    /// the larger index is removed, and higher vertices shift down by one. The
    /// loop is dropped and parallel edges merged.
    pub fn contract_edge(&self, e: Edge) -> Result<Graph> {
        let (u, w) = edge(e.0, e.1);
        if !self.has_edge(u, w) {
            return Err(Error::MissingEdge((u, w)));
        }
        let mut g = self.clone();
        let merged = (g.adj[u] | g.adj[w]) & !(1 << u) & !(1 << w);
        for x in VertexSet(g.adj[w]) {
            g.adj[x] &= !(1 << w);
        }
        g.adj[w] = 0;
        g.adj[u] = merged;
        for x in VertexSet(merged) {
            g.adj[x] |= 1 << u;
        }
        Ok(g.induced(g.vertices().difference(VertexSet::singleton(w))))
    }

    /// The vertex split `G ∘ f` described by `spec`.
    pub fn vertex_split(&self, spec: &SplitSpec) -> Result<Graph> {
        spec.validate(self)?;
        if self.n + 1 > Self::MAX_VERTICES {
            return Err(Error::TooManyVertices {
                got: self.n + 1,
                max: Self::MAX_VERTICES,
            });
        }
        Ok(self.split_unchecked(spec))
    }

    pub(crate) fn split_unchecked(&self, spec: &SplitSpec) -> Graph {
        let v = spec.target;
        let new = self.n;
        let mut adj = self.adj.clone();
        adj.push(0);
        let mut g = Graph { n: new + 1, adj };
        for x in spec.side_two {
            g.unlink(v, x);
            g.link(new, x);
        }
        g.link(v, new);
        g
    }

    /// Every valid split of every vertex, each unordered partition once.
    /// `side_one` always holds the smallest neighbor of the target.
    pub fn enumerate_splits(&self) -> Vec<SplitSpec> {
        let mut out = Vec::new();
        for v in 0..self.n {
            out.extend(self.splits_of(v));
        }
        out
    }

    /// Valid splits of a single vertex; empty when its degree is below 4.
    pub fn splits_of(&self, v: usize) -> Vec<SplitSpec> {
        let nbrs: Vec<usize> = self.neighbors(v).iter().collect();
        let d = nbrs.len();
        let mut out = Vec::new();
        if d < 4 {
            return out;
        }
        // bit 0 of the mask always lands in side_one
        let rest = d - 1;
        for mask in 0u64..(1u64 << rest) {
            let ones = mask.count_ones() as usize + 1;
            if ones < 2 || d - ones < 2 {
                continue;
            }
            let mut one = VertexSet::singleton(nbrs[0]);
            let mut two = VertexSet::EMPTY;
            for (i, &x) in nbrs[1..].iter().enumerate() {
                if mask >> i & 1 == 1 {
                    one.insert(x);
                } else {
                    two.insert(x);
                }
            }
            out.push(SplitSpec::new(v, one, two));
        }
        out
    }

    /// One edge triple per degree-3 vertex, in vertex order.
    pub fn triads(&self) -> Vec<[Edge; 3]> {
        (0..self.n)
            .filter(|&v| self.degree(v) == 3)
            .map(|v| {
                let mut it = self.neighbors(v).iter().map(|x| edge(v, x));
                [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()]
            })
            .collect()
    }

    /// Size of a spanning tree.
    pub fn rank(&self) -> Result<usize> {
        if self.is_connected() {
            Ok(self.n - 1)
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Vertices reachable from `start` inside `allowed`.
    pub fn reach(&self, start: usize, allowed: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start).intersection(allowed);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = 0u64;
            for v in frontier {
                next |= self.adj[v];
            }
            let next = VertexSet(next).intersection(allowed).difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    /// Whether the subgraph induced on `set` is connected (the empty set is not).
    pub fn is_connected_within(&self, set: VertexSet) -> bool {
        match set.first() {
            None => false,
            Some(s) => self.reach(s, set) == set,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertices())
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(s) = left.first() {
            let c = self.reach(s, left);
            left = left.difference(c);
            out.push(c);
        }
        out
    }

    /// The subgraph induced on `keep`, renumbered in increasing vertex order.
    pub fn induced(&self, keep: VertexSet) -> Graph {
        let order: Vec<usize> = keep.intersection(self.vertices()).iter().collect();
        let mut pos = [usize::MAX; 64];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let adj = order
            .iter()
            .map(|&v| {
                VertexSet(self.adj[v])
                    .intersection(keep)
                    .iter()
                    .fold(0u64, |acc, x| acc | 1 << pos[x])
            })
            .collect();
        Graph::from_adjacency_unchecked(adj)
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            adj[perm[v]] = VertexSet(self.adj[v])
                .iter()
                .fold(0u64, |acc, x| acc | 1 << perm[x]);
        }
        Graph::from_adjacency_unchecked(adj)
    }

    /// Removes vertices of degree zero.
    pub fn without_isolated(&self) -> Graph {
        let keep: VertexSet = (0..self.n).filter(|&v| self.adj[v] != 0).collect();
        if keep == self.vertices() {
            self.clone()
        } else {
            self.induced(keep)
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; ", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn k(n: usize) -> Graph {
        families::complete(n).unwrap()
    }

    #[test]
    fn add_edge_counts_and_errors() {
        let prism = families::prism();
        let g = prism.add_edge(0, 4).unwrap();
        assert_eq!(g.edge_count(), 10);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(prism.add_edge(0, 1), Err(Error::AdjacentPair(0, 1)));
        assert_eq!(prism.add_edge(2, 2), Err(Error::SelfLoop(2)));
        let k5e = families::k5_minus_e();
        let (u, w) = k5e.non_edges().next().unwrap();
        assert_eq!(k5e.add_edge(u, w).unwrap(), k(5));
    }

    #[test]
    fn delete_edge_counts_and_errors() {
        let g = k(5).delete_edge((1, 3)).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 9));
        let prism = families::prism();
        assert_eq!(prism.delete_edge((0, 4)), Err(Error::MissingEdge((0, 4))));
        let g = prism.delete_edge((0, 3)).unwrap();
        assert_eq!(g.edge_count(), 8);
    }

    #[test]
    fn delete_edge_drops_isolated_vertices() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let g = path.delete_edge((1, 2)).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn contract_merges_parallel_edges() {
        let g = k(4).contract_edge((2, 3)).unwrap();
        assert_eq!(g, k(3));
        let c6 = Graph::from_edges(6, (0..6).map(|i| edge(i, (i + 1) % 6))).unwrap();
        let c5 = Graph::from_edges(5, (0..5).map(|i| edge(i, (i + 1) % 5))).unwrap();
        assert_eq!(c6.contract_edge((4, 5)).unwrap(), c5);
        assert!(c6.contract_edge((0, 3)).is_err());
    }

    #[test]
    fn split_counts_and_errors() {
        let spec = SplitSpec::new(
            0,
            [1, 2].into_iter().collect(),
            [3, 4].into_iter().collect(),
        );
        let g = k(5).vertex_split(&spec).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 11));
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(5), 3);

        let bad = SplitSpec::new(
            0,
            [1].into_iter().collect(),
            [2, 3, 4].into_iter().collect(),
        );
        assert_eq!(k(5).vertex_split(&bad), Err(Error::BadPartition(0)));

        let prism = families::prism();
        for v in 0..6 {
            let nb: Vec<usize> = prism.neighbors(v).iter().collect();
            let s = SplitSpec::new(
                v,
                nb[..1].iter().copied().collect(),
                nb[1..].iter().copied().collect(),
            );
            assert!(matches!(
                prism.vertex_split(&s),
                Err(Error::DegreeTooLow { .. })
            ));
        }
    }

    #[test]
    fn split_counts_per_family() {
        assert!(families::prism().enumerate_splits().is_empty());
        assert_eq!(k(5).enumerate_splits().len(), 15);
        let w4 = families::wheel(4).unwrap();
        let splits = w4.enumerate_splits();
        assert_eq!(splits.len(), 3);
        assert!(splits.iter().all(|s| w4.degree(s.target) == 4));
    }

    #[test]
    fn split_then_contract_is_identity() {
        let g = k(6);
        for s in g.enumerate_splits() {
            let split = g.vertex_split(&s).unwrap();
            assert_eq!(
                split.contract_edge((s.target, g.vertex_count())).unwrap(),
                g
            );
        }
    }

    #[test]
    fn triads_and_rank() {
        assert_eq!(families::prism().triads().len(), 6);
        assert!(k(5).triads().is_empty());
        assert_eq!(families::wheel(4).unwrap().triads().len(), 4);
        assert_eq!(families::prism().rank(), Ok(5));
        assert_eq!(k(4).rank(), Ok(3));
        for p in 3..7 {
            assert_eq!(families::k3p_variant(p, 0).unwrap().rank(), Ok(p + 2));
        }
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.rank(), Err(Error::Disconnected));
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(Error::AdjacentPair(1, 0))
        );
    }

    #[test]
    fn components_and_induced() {
        let g = Graph::from_edges(5, [(0, 1), (3, 4)]).unwrap();
        assert_eq!(g.components().len(), 3);
        let h = g.induced([0, 1, 3].into_iter().collect());
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 1);
    }
}
