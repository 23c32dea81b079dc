//! Instance builders shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shallow::embed::{Dart, EmbeddedGraph};
use shallow::generators::{cycle, grid, path, random_planar_triangulation, star, subdivide, wall};
use shallow::Graph;

/// Disjoint union; the second graph's ids are shifted past the first's.
pub fn disjoint_union(a: &EmbeddedGraph, b: &EmbeddedGraph) -> EmbeddedGraph {
    let (na, ma) = (a.graph().n(), a.graph().m());
    let mut edges = a.graph().edges().to_vec();
    edges.extend(b.graph().edges().iter().map(|&(u, v)| (u + na, v + na)));
    let mut rot = a.rotations().to_vec();
    rot.extend(b.rotations().iter().map(|r| r.iter().map(|d| Dart::new(d.edge() + ma, d.end())).collect()));
    EmbeddedGraph::new(Graph::new(na + b.graph().n(), &edges).unwrap(), rot).unwrap()
}

/// Planar instances small enough for the exhaustive oracles (n <= 24).
pub fn small_planar_corpus() -> Vec<(String, EmbeddedGraph)> {
    let mut out: Vec<(String, EmbeddedGraph)> = Vec::new();
    for (r, c) in [(1, 1), (1, 5), (2, 2), (2, 6), (3, 3), (3, 5), (4, 4), (3, 8), (4, 6)] {
        out.push((format!("grid({r},{c})"), grid(r, c).unwrap()));
    }
    for s in [1, 2] {
        out.push((format!("wall({s})"), wall(s).unwrap().embedded));
    }
    out.push(("wall(1) subdivided x2".into(), subdivide(&wall(1).unwrap().embedded, 2).unwrap()));
    for n in [2, 7, 10, 24] {
        out.push((format!("path({n})"), path(n)));
    }
    for n in [3, 6, 11, 24] {
        out.push((format!("cycle({n})"), cycle(n).unwrap()));
    }
    for leaves in [1, 5, 12] {
        out.push((format!("star({leaves})"), star(leaves)));
    }
    for (i, n) in [4, 8, 12, 16, 20, 24].into_iter().enumerate() {
        out.push((format!("triangulation({n}, seed {i})"), random_planar_triangulation(n, i as u64).unwrap()));
    }
    out.push(("edgeless(5)".into(), EmbeddedGraph::new(Graph::empty(5), vec![vec![]; 5]).unwrap()));
    out.push(("path(4) + cycle(5)".into(), disjoint_union(&path(4), &cycle(5).unwrap())));
    out
}

/// Connected G(n, p): components are joined through their lowest vertices.
pub fn random_connected_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::new(n, &edges).unwrap();
    let comps = g.components();
    for w in comps.windows(2) {
        let u = w[0][rng.gen_range(0..w[0].len())];
        let v = w[1][rng.gen_range(0..w[1].len())];
        edges.push((u.min(v), u.max(v)));
    }
    Graph::simple(n, &edges).unwrap()
}

/// Maximum matching of a bipartite graph by augmenting paths; `side` marks
/// the left part.
pub fn bipartite_matching(g: &Graph, side: &[bool]) -> usize {
    let n = g.n();
    let mut mate = vec![usize::MAX; n];
    fn augment(g: &Graph, u: usize, seen: &mut [bool], mate: &mut [usize]) -> bool {
        for w in g.neighbors(u) {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            if mate[w] == usize::MAX || augment(g, mate[w], seen, mate) {
                mate[w] = u;
                mate[u] = w;
                return true;
            }
        }
        false
    }
    let mut size = 0;
    for u in (0..n).filter(|&u| side[u]) {
        let mut seen = vec![false; n];
        if augment(g, u, &mut seen, &mut mate) {
            size += 1;
        }
    }
    size
}
