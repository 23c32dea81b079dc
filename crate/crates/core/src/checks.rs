//! Feasibility checks for solver outputs.

use std::collections::HashSet;

use crate::graph::{Graph, Vertex};

fn membership(n: usize, set: &[Vertex]) -> Option<Vec<bool>> {
    let mut mark = vec![false; n];
    for &v in set {
        if v >= n || mark[v] {
            return None;
        }
        mark[v] = true;
    }
    Some(mark)
}

/// No two members adjacent, no repeats, all in range.
pub fn is_independent(g: &Graph, set: &[Vertex]) -> bool {
    let Some(mark) = membership(g.n(), set) else { return false };
    g.edges().iter().all(|&(u, v)| !(mark[u] && mark[v]))
}

/// Every edge has an endpoint in the set.
pub fn is_vertex_cover(g: &Graph, set: &[Vertex]) -> bool {
    let Some(mark) = membership(g.n(), set) else { return false };
    g.edges().iter().all(|&(u, v)| mark[u] || mark[v])
}

/// Every vertex of `required` is in the set or adjacent to it.
pub fn dominates(g: &Graph, set: &[Vertex], required: &[Vertex]) -> bool {
    let Some(mark) = membership(g.n(), set) else { return false };
    required.iter().all(|&r| r < g.n() && (mark[r] || g.neighbors(r).any(|w| mark[w])))
}

/// `map[i]` is the image of pattern vertex `i`. Checks injectivity, edge
/// preservation and, when `induced`, non-edge preservation.
pub fn verify_embedding_map(g: &Graph, h: &Graph, map: &[Vertex], induced: bool) -> bool {
    if map.len() != h.n() || map.iter().any(|&x| x >= g.n()) {
        return false;
    }
    if map.iter().collect::<HashSet<_>>().len() != map.len() {
        return false;
    }
    if !h.edges().iter().all(|&(a, b)| a != b && g.has_edge(map[a], map[b])) {
        return false;
    }
    if induced {
        for a in 0..h.n() {
            for b in a + 1..h.n() {
                if g.has_edge(map[a], map[b]) && !h.has_edge(a, b) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_checks() {
        let p4 = Graph::simple(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(is_independent(&p4, &[0, 2]));
        assert!(!is_independent(&p4, &[0, 1]));
        assert!(!is_independent(&p4, &[0, 0]));
        assert!(is_vertex_cover(&p4, &[1, 2]));
        assert!(!is_vertex_cover(&p4, &[1]));
        assert!(dominates(&p4, &[1, 2], &[0, 1, 2, 3]));
        assert!(dominates(&p4, &[], &[]));
        assert!(!dominates(&p4, &[0], &[3]));
        let p3 = Graph::simple(3, &[(0, 1), (1, 2)]).unwrap();
        let tri = Graph::simple(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(verify_embedding_map(&tri, &p3, &[0, 1, 2], false));
        assert!(!verify_embedding_map(&tri, &p3, &[0, 1, 2], true));
        assert!(!verify_embedding_map(&tri, &p3, &[0, 1, 1], false));
    }
}
