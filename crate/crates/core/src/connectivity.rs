//! 3-connectivity, deletable edges and minimal 3-connectivity.

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet};

/// True when `g` has at least 4 vertices and removing any set of at most two
/// vertices leaves it connected.
pub fn is_three_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n < 4 || g.min_degree() < 3 || !g.is_connected() {
        return false;
    }
    let all = g.vertices();
    for a in 0..n {
        let without_a = all.difference(VertexSet::singleton(a));
        if !g.is_connected_within(without_a) {
            return false;
        }
        for b in a + 1..n {
            if !g.is_connected_within(without_a.difference(VertexSet::singleton(b))) {
                return false;
            }
        }
    }
    true
}

fn require_three_connected(g: &Graph) -> Result<()> {
    if is_three_connected(g) {
        Ok(())
    } else {
        Err(Error::NotThreeConnected)
    }
}

/// Edges whose deletion can keep 3-connectivity: an endpoint of degree 3 would
/// drop to degree 2.
pub(crate) fn deletion_candidates(g: &Graph) -> impl Iterator<Item = Edge> + '_ {
    g.edges()
        .filter(|&(u, w)| g.degree(u) >= 4 && g.degree(w) >= 4)
}

pub(crate) fn deletable_edges_unchecked(g: &Graph) -> Vec<Edge> {
    deletion_candidates(g)
        .filter(|&e| is_three_connected(&g.delete_edge(e).expect("edge of g")))
        .collect()
}

/// Exactly the edges `e` with `G \ e` 3-connected.
pub fn deletable_edges(g: &Graph) -> Result<Vec<Edge>> {
    require_three_connected(g)?;
    Ok(deletable_edges_unchecked(g))
}

pub(crate) fn is_minimal_unchecked(g: &Graph) -> bool {
    !deletion_candidates(g).any(|e| is_three_connected(&g.delete_edge(e).expect("edge of g")))
}

/// True when `g` is 3-connected and no single edge deletion keeps it so.
pub fn is_minimally_three_connected(g: &Graph) -> Result<bool> {
    require_three_connected(g)?;
    Ok(is_minimal_unchecked(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::edge;

    #[test]
    fn small_cases() {
        assert!(is_three_connected(&families::complete(4).unwrap()));
        assert!(!is_three_connected(&families::complete(3).unwrap()));
        let c6 = Graph::from_edges(6, (0..6).map(|i| edge(i, (i + 1) % 6))).unwrap();
        assert!(!is_three_connected(&c6));
        assert!(is_three_connected(&families::prism()));
        assert!(!is_three_connected(
            &families::prism().delete_edge((0, 3)).unwrap()
        ));
    }

    #[test]
    fn two_cut_is_detected() {
        // two K4s glued along an edge: {0,1} separates
        let g = Graph::from_edges(
            6,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (0, 5),
                (1, 4),
                (1, 5),
                (4, 5),
            ],
        )
        .unwrap();
        assert!(g.min_degree() >= 3);
        assert!(!is_three_connected(&g));
    }

    #[test]
    fn deletable_examples() {
        assert!(deletable_edges(&families::prism()).unwrap().is_empty());
        assert_eq!(
            deletable_edges(&families::complete(5).unwrap())
                .unwrap()
                .len(),
            10
        );
        assert!(deletable_edges(&families::wheel(4).unwrap())
            .unwrap()
            .is_empty());
        let c6 = Graph::from_edges(6, (0..6).map(|i| edge(i, (i + 1) % 6))).unwrap();
        assert_eq!(deletable_edges(&c6), Err(Error::NotThreeConnected));
    }

    #[test]
    fn minimal_examples() {
        assert_eq!(is_minimally_three_connected(&families::prism()), Ok(true));
        assert_eq!(
            is_minimally_three_connected(&families::complete(5).unwrap()),
            Ok(false)
        );
        assert_eq!(
            is_minimally_three_connected(&families::k3p_variant(3, 0).unwrap()),
            Ok(true)
        );
        assert_eq!(
            is_minimally_three_connected(&families::complete(3).unwrap()),
            Err(Error::NotThreeConnected)
        );
    }
}
