//! Candidate generation: splitter steps (single edge-additions and vertex
//! splits) and the three constrained operations that build graphs without
//! H-preserving deletable edges from one rank lower.

use std::fmt;
use std::sync::Arc;

use crate::canonical::canonical_form;
use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, SplitSpec, VertexSet};

/// One construction step, applied to a canonically labeled parent. The split
/// always places `side_two` on the new vertex with index `vertex_count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstructionStep {
    /// `G + e`, same rank.
    AddEdge { edge: Edge },
    /// `G ∘ f`.
    Split { split: SplitSpec },
    /// `(G + e) ∘ f`, with `e` and `f` in the triad of the new vertex.
    AddThenSplit { edge: Edge, split: SplitSpec },
    /// `(G + {e1, e2}) ∘ f`, with `{e1, e2, f}` the triad of the new vertex.
    AddTwoThenSplit { edges: [Edge; 2], split: SplitSpec },
}

/// Which of the three constrained operations a step corresponds to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operation {
    SplitOnly,
    AddThenSplit,
    AddTwoThenSplit,
}

impl ConstructionStep {
    pub fn operation(&self) -> Option<Operation> {
        match self {
            ConstructionStep::AddEdge { .. } => None,
            ConstructionStep::Split { .. } => Some(Operation::SplitOnly),
            ConstructionStep::AddThenSplit { .. } => Some(Operation::AddThenSplit),
            ConstructionStep::AddTwoThenSplit { .. } => Some(Operation::AddTwoThenSplit),
        }
    }

    pub fn added_edges(&self) -> &[Edge] {
        match self {
            ConstructionStep::AddEdge { edge } | ConstructionStep::AddThenSplit { edge, .. } => {
                std::slice::from_ref(edge)
            }
            ConstructionStep::AddTwoThenSplit { edges, .. } => edges,
            ConstructionStep::Split { .. } => &[],
        }
    }

    pub fn split(&self) -> Option<&SplitSpec> {
        match self {
            ConstructionStep::AddEdge { .. } => None,
            ConstructionStep::Split { split }
            | ConstructionStep::AddThenSplit { split, .. }
            | ConstructionStep::AddTwoThenSplit { split, .. } => Some(split),
        }
    }

    /// Applies the step, checking every precondition and the triad constraint.
    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        let mut h = g.clone();
        for &(u, w) in self.added_edges() {
            h = h.add_edge(u, w)?;
        }
        let Some(split) = self.split() else {
            return Ok(h);
        };
        let out = h.vertex_split(split)?;
        let new = h.vertex_count();
        let ok = match self {
            ConstructionStep::AddThenSplit {
                edge: (a, b),
                split,
            } => {
                let other = if *a == split.target { *b } else { *a };
                (split.target == *a || split.target == *b)
                    && split.side_two.len() == 2
                    && split.side_two.contains(other)
            }
            ConstructionStep::AddTwoThenSplit {
                edges: [e1, e2],
                split,
            } => {
                let v = split.target;
                let far = |e: &Edge| {
                    if e.0 == v {
                        Some(e.1)
                    } else if e.1 == v {
                        Some(e.0)
                    } else {
                        None
                    }
                };
                match (far(e1), far(e2)) {
                    (Some(a), Some(b)) if a != b => {
                        split.side_two == [a, b].into_iter().collect::<VertexSet>()
                    }
                    _ => false,
                }
            }
            _ => true,
        };
        if !ok {
            return Err(Error::BadPartition(split.target));
        }
        debug_assert!(
            !matches!(
                self,
                ConstructionStep::AddThenSplit { .. } | ConstructionStep::AddTwoThenSplit { .. }
            ) || out.degree(new) == 3
        );
        Ok(out)
    }
}

fn write_sides(f: &mut fmt::Formatter<'_>, s: &SplitSpec) -> fmt::Result {
    let join = |set: VertexSet| {
        set.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    write!(f, "{} {}/{}", s.target, join(s.side_one), join(s.side_two))
}

/// Step syntax: `A u-w`, `S v a,b/c,d`, `AS u-w v a,b/c,d`, `A2S u-w u-x v a,b/c,d`.
impl fmt::Display for ConstructionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionStep::AddEdge { edge } => write!(f, "A {}-{}", edge.0, edge.1),
            ConstructionStep::Split { split } => {
                write!(f, "S ")?;
                write_sides(f, split)
            }
            ConstructionStep::AddThenSplit { edge, split } => {
                write!(f, "AS {}-{} ", edge.0, edge.1)?;
                write_sides(f, split)
            }
            ConstructionStep::AddTwoThenSplit { edges, split } => {
                write!(
                    f,
                    "A2S {}-{} {}-{} ",
                    edges[0].0, edges[0].1, edges[1].0, edges[1].1
                )?;
                write_sides(f, split)
            }
        }
    }
}

fn parse_usize(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Parse(format!("bad vertex index {s:?}")))
}

fn parse_edge(s: &str) -> Result<Edge> {
    let (a, b) = s
        .split_once('-')
        .ok_or_else(|| Error::Parse(format!("bad edge {s:?}")))?;
    Ok(edge(parse_usize(a)?, parse_usize(b)?))
}

fn parse_side(s: &str) -> Result<VertexSet> {
    s.split(',').map(parse_usize).collect()
}

fn parse_split(target: &str, sides: &str) -> Result<SplitSpec> {
    let (a, b) = sides
        .split_once('/')
        .ok_or_else(|| Error::Parse(format!("bad split sides {sides:?}")))?;
    Ok(SplitSpec::new(
        parse_usize(target)?,
        parse_side(a)?,
        parse_side(b)?,
    ))
}

impl std::str::FromStr for ConstructionStep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: Vec<&str> = s.split_whitespace().collect();
        match t.as_slice() {
            ["A", e] => Ok(ConstructionStep::AddEdge {
                edge: parse_edge(e)?,
            }),
            ["S", v, sides] => Ok(ConstructionStep::Split {
                split: parse_split(v, sides)?,
            }),
            ["AS", e, v, sides] => Ok(ConstructionStep::AddThenSplit {
                edge: parse_edge(e)?,
                split: parse_split(v, sides)?,
            }),
            ["A2S", e1, e2, v, sides] => Ok(ConstructionStep::AddTwoThenSplit {
                edges: [parse_edge(e1)?, parse_edge(e2)?],
                split: parse_split(v, sides)?,
            }),
            _ => Err(Error::Parse(format!("bad construction step {s:?}"))),
        }
    }
}

struct Link {
    step: ConstructionStep,
    prev: Option<Arc<Link>>,
}

/// The steps that build a graph from a root graph. Chains share their common
/// prefix, so extending one is O(1).
#[derive(Clone)]
pub struct ProvenanceChain {
    root: Arc<Graph>,
    tail: Option<Arc<Link>>,
    len: usize,
}

impl ProvenanceChain {
    /// An empty chain starting at `root`, which should be canonically labeled.
    pub fn root(root: Graph) -> Self {
        ProvenanceChain {
            root: Arc::new(root),
            tail: None,
            len: 0,
        }
    }

    pub fn root_graph(&self) -> &Graph {
        &self.root
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn extended(&self, step: ConstructionStep) -> Self {
        ProvenanceChain {
            root: Arc::clone(&self.root),
            tail: Some(Arc::new(Link {
                step,
                prev: self.tail.clone(),
            })),
            len: self.len + 1,
        }
    }

    pub fn steps(&self) -> Vec<ConstructionStep> {
        let mut out = Vec::with_capacity(self.len);
        let mut cur = self.tail.as_deref();
        while let Some(link) = cur {
            out.push(link.step);
            cur = link.prev.as_deref();
        }
        out.reverse();
        out
    }

    /// Replays the chain, canonically relabeling after every step.
    pub fn replay(&self) -> Result<Graph> {
        let mut g = canonical_form(&self.root).1;
        for step in self.steps() {
            g = canonical_form(&step.apply(&g)?).1;
        }
        Ok(g)
    }

    /// Parses `<root graph6>: <step>; <step>; ...`.
    pub fn parse(line: &str) -> Result<Self> {
        let (root, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("provenance line without root: {line:?}")))?;
        let mut chain = ProvenanceChain::root(Graph::from_graph6(root)?);
        for step in rest.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            chain = chain.extended(step.parse()?);
        }
        Ok(chain)
    }
}

impl fmt::Display for ProvenanceChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.root.to_graph6())?;
        for (i, step) in self.steps().iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, " {step}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ProvenanceChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProvenanceChain({self})")
    }
}

/// Which constrained operations to use; the mask must be nonempty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OperationMask {
    pub split_only: bool,
    pub add_then_split: bool,
    pub add_two_then_split: bool,
}

impl OperationMask {
    pub const ALL: OperationMask = OperationMask {
        split_only: true,
        add_then_split: true,
        add_two_then_split: true,
    };

    pub fn is_empty(&self) -> bool {
        !(self.split_only || self.add_then_split || self.add_two_then_split)
    }

    pub fn contains(&self, op: Operation) -> bool {
        match op {
            Operation::SplitOnly => self.split_only,
            Operation::AddThenSplit => self.add_then_split,
            Operation::AddTwoThenSplit => self.add_two_then_split,
        }
    }
}

impl Default for OperationMask {
    fn default() -> Self {
        Self::ALL
    }
}

/// Parses a comma-separated list of `i`, `ii`, `iii`.
impl std::str::FromStr for OperationMask {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut m = OperationMask {
            split_only: false,
            add_then_split: false,
            add_two_then_split: false,
        };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "i" => m.split_only = true,
                "ii" => m.add_then_split = true,
                "iii" => m.add_two_then_split = true,
                other => return Err(Error::BadParameter(format!("unknown operation {other:?}"))),
            }
        }
        if m.is_empty() {
            return Err(Error::BadParameter("operation mask is empty".into()));
        }
        Ok(m)
    }
}

impl fmt::Display for OperationMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = [
            (self.split_only, "i"),
            (self.add_then_split, "ii"),
            (self.add_two_then_split, "iii"),
        ]
        .into_iter()
        .filter_map(|(on, name)| on.then_some(name))
        .collect();
        f.write_str(&parts.join(","))
    }
}

/// Every single edge-addition and every vertex split of `g`.
pub fn splitter_children(g: &Graph) -> Vec<(Graph, ConstructionStep)> {
    let mut out: Vec<(Graph, ConstructionStep)> = g
        .non_edges()
        .map(|e| {
            let child = g.add_edge(e.0, e.1).expect("non-edge");
            (child, ConstructionStep::AddEdge { edge: e })
        })
        .collect();
    out.extend(split_children(g));
    out
}

fn split_children(g: &Graph) -> impl Iterator<Item = (Graph, ConstructionStep)> + '_ {
    g.enumerate_splits()
        .into_iter()
        .map(move |s| (g.split_unchecked(&s), ConstructionStep::Split { split: s }))
}

/// Operation (i): every vertex split of `g`.
pub fn op_split_only(g: &Graph) -> Vec<(Graph, ConstructionStep)> {
    split_children(g).collect()
}

/// Operation (ii): add a non-edge `e`, then split one of its endpoints so the
/// new vertex is incident to exactly `e`, `f` and one further edge.
pub fn op_add_then_split(g: &Graph) -> Vec<(Graph, ConstructionStep)> {
    let mut out = Vec::new();
    for (u, w) in g.non_edges() {
        let plus = g.add_edge(u, w).expect("non-edge");
        for (x, y) in [(u, w), (w, u)] {
            let nbrs = plus.neighbors(x);
            if nbrs.len() < 4 {
                continue;
            }
            for z in nbrs.difference(VertexSet::singleton(y)) {
                let two: VertexSet = [y, z].into_iter().collect();
                let split = SplitSpec::new(x, nbrs.difference(two), two);
                out.push((
                    plus.split_unchecked(&split),
                    ConstructionStep::AddThenSplit {
                        edge: (u, w),
                        split,
                    },
                ));
            }
        }
    }
    out
}

/// Operation (iii): add `e1 = va`, `e2 = vb` for non-neighbors `a`, `b` of `v`,
/// then split `v` so the new vertex is adjacent to exactly `a`, `b` and `v`.
pub fn op_add_two_then_split(g: &Graph) -> Vec<(Graph, ConstructionStep)> {
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        let nbrs = g.neighbors(v);
        let far: Vec<usize> = g
            .vertices()
            .difference(nbrs)
            .difference(VertexSet::singleton(v))
            .iter()
            .collect();
        if nbrs.len() < 2 {
            continue;
        }
        for (i, &a) in far.iter().enumerate() {
            for &b in &far[i + 1..] {
                let plus = g
                    .add_edge(v, a)
                    .and_then(|h| h.add_edge(v, b))
                    .expect("non-edges");
                let split = SplitSpec::new(v, nbrs, [a, b].into_iter().collect());
                out.push((
                    plus.split_unchecked(&split),
                    ConstructionStep::AddTwoThenSplit {
                        edges: [edge(v, a), edge(v, b)],
                        split,
                    },
                ));
            }
        }
    }
    out
}

/// Candidates from all operations enabled in `mask`, in operation order.
pub fn constrained_candidates(g: &Graph, mask: OperationMask) -> Vec<(Graph, ConstructionStep)> {
    let mut out = Vec::new();
    if mask.split_only {
        out.extend(op_split_only(g));
    }
    if mask.add_then_split {
        out.extend(op_add_then_split(g));
    }
    if mask.add_two_then_split {
        out.extend(op_add_two_then_split(g));
    }
    out
}

pub fn candidates_op_i(g: &Graph) -> Vec<Graph> {
    op_split_only(g).into_iter().map(|(c, _)| c).collect()
}

pub fn candidates_op_ii(g: &Graph) -> Vec<Graph> {
    op_add_then_split(g).into_iter().map(|(c, _)| c).collect()
}

pub fn candidates_op_iii(g: &Graph) -> Vec<Graph> {
    op_add_two_then_split(g)
        .into_iter()
        .map(|(c, _)| c)
        .collect()
}
