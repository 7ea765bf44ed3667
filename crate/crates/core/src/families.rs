//! Named graphs: prism, wheels, K_{3,p} and its variants, complete graphs,
//! K5\e, Petersen, and the catalog of 3-connected graphs without a prism minor.
//!
//! Labelings are fixed so canonical codes and fixtures are stable:
//! - prism: triangles {0,1,2}, {3,4,5}, matching i–(i+3)
//! - wheel(r): hub 0, rim cycle 1..=r
//! - k3p_variant(p, j): class {0,1,2}, class {3..p+3}, extra edges taken from
//!   01, 02, 12 in that order
//! - k5_minus_e: K5 without 3–4
//! - petersen: outer cycle 0..5, inner pentagram 5..10, spokes i–(i+5)

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Prism,
    Wheel,
    K3pVariant,
    Complete,
    K5MinusE,
    Petersen,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    /// r for wheels, p for K_{3,p} variants, n for complete graphs.
    pub size_param: usize,
    /// Edges inside the 3-class of a K_{3,p} variant (0–3).
    pub extra_edges: usize,
}

impl FamilySpec {
    pub fn prism() -> Self {
        FamilySpec {
            kind: FamilyKind::Prism,
            size_param: 0,
            extra_edges: 0,
        }
    }

    pub fn petersen() -> Self {
        FamilySpec {
            kind: FamilyKind::Petersen,
            size_param: 0,
            extra_edges: 0,
        }
    }

    pub fn k5_minus_e() -> Self {
        FamilySpec {
            kind: FamilyKind::K5MinusE,
            size_param: 0,
            extra_edges: 0,
        }
    }

    pub fn wheel(r: usize) -> Self {
        FamilySpec {
            kind: FamilyKind::Wheel,
            size_param: r,
            extra_edges: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        FamilySpec {
            kind: FamilyKind::Complete,
            size_param: n,
            extra_edges: 0,
        }
    }

    pub fn k3p_variant(p: usize, extra: usize) -> Self {
        FamilySpec {
            kind: FamilyKind::K3pVariant,
            size_param: p,
            extra_edges: extra,
        }
    }

    pub fn build(&self) -> Result<Graph> {
        build(self)
    }
}

/// Short names: `prism`, `petersen`, `k5e`, `wheel5`, `k6`, `k3p4`, `k3p4+2`.
impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::Prism => write!(f, "prism"),
            FamilyKind::Petersen => write!(f, "petersen"),
            FamilyKind::K5MinusE => write!(f, "k5e"),
            FamilyKind::Wheel => write!(f, "wheel{}", self.size_param),
            FamilyKind::Complete => write!(f, "k{}", self.size_param),
            FamilyKind::K3pVariant if self.extra_edges == 0 => write!(f, "k3p{}", self.size_param),
            FamilyKind::K3pVariant => write!(f, "k3p{}+{}", self.size_param, self.extra_edges),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadParameter(format!("unknown family {s:?}"));
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let spec = match s {
            "prism" => FamilySpec::prism(),
            "petersen" => FamilySpec::petersen(),
            "k5e" | "k5-e" => FamilySpec::k5_minus_e(),
            _ => {
                if let Some(r) = s.strip_prefix("wheel") {
                    FamilySpec::wheel(num(r)?)
                } else if let Some(rest) = s.strip_prefix("k3p") {
                    match rest.split_once('+') {
                        Some((p, j)) => FamilySpec::k3p_variant(num(p)?, num(j)?),
                        None => FamilySpec::k3p_variant(num(rest)?, 0),
                    }
                } else if let Some(n) = s.strip_prefix('k') {
                    FamilySpec::complete(num(n)?)
                } else {
                    return Err(bad());
                }
            }
        };
        validate(&spec)?;
        Ok(spec)
    }
}

fn validate(spec: &FamilySpec) -> Result<()> {
    match spec.kind {
        FamilyKind::Wheel if spec.size_param < 3 => Err(Error::BadParameter(format!(
            "wheel needs r >= 3, got {}",
            spec.size_param
        ))),
        FamilyKind::Wheel if spec.size_param + 1 > Graph::MAX_VERTICES => Err(Error::BadParameter(
            format!("wheel {} is too large", spec.size_param),
        )),
        FamilyKind::K3pVariant
            if spec.size_param < 3 || spec.size_param + 3 > Graph::MAX_VERTICES =>
        {
            Err(Error::BadParameter(format!(
                "K3,p needs 3 <= p <= {}, got {}",
                Graph::MAX_VERTICES - 3,
                spec.size_param
            )))
        }
        FamilyKind::K3pVariant if spec.extra_edges > 3 => Err(Error::BadParameter(format!(
            "K3,p variant takes 0-3 extra edges, got {}",
            spec.extra_edges
        ))),
        FamilyKind::Complete if spec.size_param > Graph::MAX_VERTICES => Err(Error::BadParameter(
            format!("K{} is too large", spec.size_param),
        )),
        _ => Ok(()),
    }
}

pub fn build(spec: &FamilySpec) -> Result<Graph> {
    validate(spec)?;
    let g = match spec.kind {
        FamilyKind::Prism => prism(),
        FamilyKind::Petersen => petersen(),
        FamilyKind::K5MinusE => k5_minus_e(),
        FamilyKind::Wheel => wheel(spec.size_param)?,
        FamilyKind::Complete => complete(spec.size_param)?,
        FamilyKind::K3pVariant => k3p_variant(spec.size_param, spec.extra_edges)?,
    };
    Ok(g)
}

fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Graph {
    Graph::from_edges(n, edges).expect("family edge lists are simple")
}

pub fn prism() -> Graph {
    from_edges(
        6,
        [
            (0, 1),
            (0, 2),
            (1, 2),
            (3, 4),
            (3, 5),
            (4, 5),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
    )
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| edge(i, (i + 1) % 5));
    let inner = (0..5).map(|i| edge(5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    from_edges(10, outer.chain(inner).chain(spokes))
}

pub fn complete(n: usize) -> Result<Graph> {
    validate(&FamilySpec::complete(n))?;
    Ok(from_edges(
        n,
        (0..n).flat_map(|j| (0..j).map(move |i| (i, j))),
    ))
}

pub fn k5_minus_e() -> Graph {
    complete(5)
        .unwrap()
        .delete_edge((3, 4))
        .expect("K5 has edge 3-4")
}

pub fn wheel(r: usize) -> Result<Graph> {
    validate(&FamilySpec::wheel(r))?;
    let spokes = (1..=r).map(|i| (0, i));
    let rim = (0..r).map(|i| edge(1 + i, 1 + (i + 1) % r));
    Ok(from_edges(r + 1, spokes.chain(rim)))
}

pub fn k3p_variant(p: usize, extra: usize) -> Result<Graph> {
    validate(&FamilySpec::k3p_variant(p, extra))?;
    let bipartite = (0..3).flat_map(|a| (3..p + 3).map(move |b| (a, b)));
    let inside = [(0, 1), (0, 2), (1, 2)].into_iter().take(extra);
    Ok(from_edges(p + 3, bipartite.chain(inside)))
}

/// The 3-connected graphs of rank `r` without a prism minor: K5, K5\e, W4 at
/// rank 4; W_r and the four K_{3,r-2} variants for r ≥ 5; W3 = K4 at rank 3.
pub fn dirac_catalog(r: usize) -> Result<Vec<Graph>> {
    match r {
        0..=2 => Err(Error::BadParameter(format!(
            "catalog is defined for r >= 3, got {r}"
        ))),
        3 => Ok(vec![wheel(3)?]),
        4 => Ok(vec![complete(5)?, k5_minus_e(), wheel(4)?]),
        _ => {
            let mut out = vec![wheel(r)?];
            for j in 0..=3 {
                out.push(k3p_variant(r - 2, j)?);
            }
            Ok(out)
        }
    }
}
