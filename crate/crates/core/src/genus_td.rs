//! Decompositions of graphs embedded on orientable surfaces: a tree–cotree
//! cut graph is contracted to a point, the planar remainder is decomposed,
//! and the cut graph is added to every bag.

use crate::decomp::TreeDecomposition;
use crate::embed::EmbeddedGraph;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Layering, Vertex};
use crate::planar_td::{planar_bfs_td, tree_cotree};

/// Cut graph `X`: the leftover edges of a tree–cotree partition together
/// with the BFS root paths of their endpoints.
#[derive(Debug, Clone)]
pub struct CutGraph {
    pub layering: Layering,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
    pub leftover: Vec<EdgeId>,
    /// Vertices of `X` whose degree in `X` is not 2, plus the root.
    pub branch_vertices: Vec<Vertex>,
    /// Maximal paths of `X` between branch vertices (the edges of the
    /// multigraph `X` subdivides), as vertex sequences.
    pub branch_paths: Vec<Vec<Vertex>>,
}

/// Builds the cut graph from the BFS tree rooted at `root`. For planar
/// embeddings there are no leftover edges and `X = {root}`.
pub fn cut_graph(e: &EmbeddedGraph, root: Vertex) -> Result<CutGraph> {
    let g = e.graph();
    let pair = tree_cotree(e, root)?;
    let layering = pair.layering;
    let mut in_x = vec![false; g.n()];
    let mut edge_in_x = vec![false; g.m()];
    in_x[root] = true;
    for &l in &pair.leftover {
        edge_in_x[l] = true;
        let (u, v) = g.endpoints(l);
        for start in [u, v] {
            let mut cur = start;
            while !in_x[cur] {
                in_x[cur] = true;
                let pe = layering.parent_edge[cur].expect("non-root vertex has a parent");
                edge_in_x[pe] = true;
                cur = layering.parent[cur].expect("non-root vertex has a parent");
            }
        }
    }
    let vertices: Vec<Vertex> = (0..g.n()).filter(|&v| in_x[v]).collect();
    let edges: Vec<EdgeId> = (0..g.m()).filter(|&x| edge_in_x[x]).collect();

    let mut degree = vec![0usize; g.n()];
    let mut incident: Vec<Vec<EdgeId>> = vec![Vec::new(); g.n()];
    for &x in &edges {
        let (u, v) = g.endpoints(x);
        degree[u] += 1;
        degree[v] += 1;
        incident[u].push(x);
        if u != v {
            incident[v].push(x);
        }
    }
    let is_branch = |v: Vertex| v == root || degree[v] != 2;
    let branch_vertices: Vec<Vertex> = vertices.iter().copied().filter(|&v| is_branch(v)).collect();
    let mut used = vec![false; g.m()];
    let mut branch_paths = Vec::new();
    for &b in &branch_vertices {
        for &first in &incident[b] {
            if used[first] {
                continue;
            }
            let mut walk = vec![b];
            let mut edge = first;
            let mut cur = b;
            loop {
                used[edge] = true;
                cur = g.other(edge, cur);
                walk.push(cur);
                if is_branch(cur) {
                    break;
                }
                match incident[cur].iter().copied().find(|&x| !used[x]) {
                    Some(next) => edge = next,
                    None => break,
                }
            }
            branch_paths.push(walk);
        }
    }
    Ok(CutGraph { layering, vertices, edges, leftover: pair.leftover, branch_vertices, branch_paths })
}

impl CutGraph {
    pub fn euler_genus(&self) -> usize {
        self.leftover.len() / 2
    }

    /// `2g (2 depth + 1) + 1`, the size bound for `X`.
    pub fn size_bound(&self) -> usize {
        2 * self.euler_genus() * (2 * self.layering.depth + 1) + 1
    }
}

#[derive(Debug, Clone)]
pub struct GenusDecomposition {
    pub td: TreeDecomposition,
    pub cut: CutGraph,
    /// Genus of the embedding after contracting `X` (always 0 on success).
    pub contracted_genus: usize,
    /// BFS depth of the planar decomposition of the contracted graph.
    pub contracted_depth: usize,
    /// BFS depth of the root in the input graph.
    pub depth: usize,
}

impl GenusDecomposition {
    /// `3 (depth + 1) + |X|`.
    pub fn width_bound(&self) -> usize {
        3 * (self.depth + 1) + self.cut.vertices.len()
    }
}

/// Tree decomposition of an embedded graph of any orientable genus with
/// width at most `3 (depth + 1) + |X|`.
pub fn genus_td(e: &EmbeddedGraph, root: Vertex) -> Result<GenusDecomposition> {
    let g = e.graph();
    let cut = cut_graph(e, root)?;
    let contraction = e.contract_connected_set(&cut.vertices)?;
    let contracted_genus = contraction.embedded.genus();
    if contracted_genus != 0 {
        return Err(Error::GenusNotReduced(contracted_genus));
    }
    let hub = contraction.contracted;
    let pd = planar_bfs_td(&contraction.embedded, hub)?;
    let mut original = vec![usize::MAX; contraction.embedded.graph().n()];
    for (old, &new) in contraction.vertex_map.iter().enumerate() {
        if new != hub {
            original[new] = old;
        }
    }
    let bags = pd
        .td
        .bags
        .iter()
        .map(|bag| {
            bag.iter()
                .filter(|&&w| w != hub)
                .map(|&w| original[w])
                .chain(cut.vertices.iter().copied())
                .collect()
        })
        .collect();
    let depth = cut.layering.depth;
    Ok(GenusDecomposition {
        td: TreeDecomposition::new(g.n(), bags, pd.td.tree_edges),
        cut,
        contracted_genus,
        contracted_depth: pd.depth,
        depth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::validate;
    use crate::generators::{grid, toroidal_grid, wall};

    #[test]
    fn planar_cut_graph_is_root() {
        let g = grid(4, 5).unwrap();
        let cut = cut_graph(&g, 7).unwrap();
        assert!(cut.leftover.is_empty());
        assert_eq!(cut.vertices, vec![7]);
        let w = wall(2).unwrap();
        assert_eq!(cut_graph(&w.embedded, 0).unwrap().vertices, vec![0]);
    }

    #[test]
    fn torus_cut_graph() {
        let t = toroidal_grid(3, 3).unwrap();
        for root in 0..9 {
            let cut = cut_graph(&t, root).unwrap();
            assert_eq!(cut.leftover.len(), 2);
            assert_eq!(cut.layering.depth, 2);
            assert!(cut.vertices.len() <= 11);
            let c = t.contract_connected_set(&cut.vertices).unwrap();
            assert_eq!(c.embedded.genus(), 0);
            let path_edges: usize = cut.branch_paths.iter().map(|p| p.len() - 1).sum();
            assert_eq!(path_edges, cut.edges.len());
        }
    }

    #[test]
    fn torus_decomposition() {
        let t = toroidal_grid(3, 3).unwrap();
        let gd = genus_td(&t, 0).unwrap();
        let r = validate(&gd.td, t.graph());
        assert!(r.is_valid(), "{:?}", r.violation);
        assert!(r.width <= 20);
        assert!(r.width <= gd.width_bound());
        let t4 = toroidal_grid(4, 4).unwrap();
        let gd = genus_td(&t4, 5).unwrap();
        assert!(validate(&gd.td, t4.graph()).is_valid());
        assert!(gd.td.width() <= gd.width_bound());
    }

    #[test]
    fn planar_input_reduces_to_planar_bound() {
        let g = grid(5, 5).unwrap();
        let gd = genus_td(&g, 12).unwrap();
        assert!(validate(&gd.td, g.graph()).is_valid());
        assert!(gd.td.width() <= 3 * gd.depth + 1);
    }
}
