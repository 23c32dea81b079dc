//! Width `3 * depth` tree decompositions of planar embedded graphs built from
//! a BFS tree and an interdigitating dual spanning tree, and decompositions
//! of level slices obtained by deleting outer levels and contracting inner
//! ones.

use std::collections::VecDeque;

use crate::decomp::TreeDecomposition;
use crate::embed::EmbeddedGraph;
use crate::error::{Error, Result};
use crate::graph::{bfs_layering, EdgeId, Graph, Layering, Vertex};

/// BFS tree plus a spanning tree of the dual that only crosses non-tree
/// edges. Leftover edges are in neither tree; there are exactly `2g` of them.
#[derive(Debug, Clone)]
pub struct DualTreePair {
    pub layering: Layering,
    /// Dual tree edges `(face, face, crossed primal edge)`.
    pub cotree: Vec<(usize, usize, EdgeId)>,
    pub leftover: Vec<EdgeId>,
}

impl DualTreePair {
    /// Tree edges, cotree-crossed edges and leftover edges, each sorted.
    pub fn partition(&self, g: &Graph) -> (Vec<EdgeId>, Vec<EdgeId>, Vec<EdgeId>) {
        let mut tree: Vec<EdgeId> = self.layering.parent_edge.iter().flatten().copied().collect();
        tree.sort_unstable();
        let mut crossed: Vec<EdgeId> = self.cotree.iter().map(|c| c.2).collect();
        crossed.sort_unstable();
        debug_assert_eq!(tree.len() + crossed.len() + self.leftover.len(), g.m());
        (tree, crossed, self.leftover.clone())
    }
}

/// Tree–cotree decomposition of a connected embedded graph. The dual tree is
/// grown by BFS from face 0, scanning each face's darts in walk order.
pub fn tree_cotree(e: &EmbeddedGraph, root: Vertex) -> Result<DualTreePair> {
    let g = e.graph();
    let layering = bfs_layering(g, root)?;
    if !layering.spans() {
        return Err(Error::Disconnected);
    }
    let faces = e.faces();
    let mut crossed = vec![false; g.m()];
    for &pe in layering.parent_edge.iter().flatten() {
        crossed[pe] = true;
    }
    let mut cotree = Vec::new();
    if !faces.is_empty() {
        let mut seen = vec![false; faces.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(f) = queue.pop_front() {
            for &d in &faces[f] {
                let edge = d.edge();
                if crossed[edge] {
                    continue;
                }
                let other = e.face_of(d.twin());
                if !seen[other] {
                    seen[other] = true;
                    crossed[edge] = true;
                    cotree.push((f, other, edge));
                    queue.push_back(other);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidRotation("dual graph minus tree edges is disconnected".into()));
        }
    }
    let leftover = (0..g.m()).filter(|&x| !crossed[x]).collect();
    Ok(DualTreePair { layering, cotree, leftover })
}

/// Decomposition together with the BFS depth it was built from.
#[derive(Debug, Clone)]
pub struct PlanarDecomposition {
    pub td: TreeDecomposition,
    /// BFS depth of the root in the triangulated graph.
    pub depth: usize,
}

/// Tree decomposition of a connected planar embedded graph with one node
/// per triangle of a triangulation; each bag is the union of the BFS root
/// paths of the triangle's corners, so the width is at most `3 * depth`.
pub fn planar_bfs_td(e: &EmbeddedGraph, root: Vertex) -> Result<PlanarDecomposition> {
    let g = e.graph();
    g.check_vertex(root)?;
    if !e.is_planar() {
        return Err(Error::NotPlanar(e.genus()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.n() <= 2 {
        let depth = bfs_layering(g, root)?.depth;
        return Ok(PlanarDecomposition { td: TreeDecomposition::trivial(g), depth });
    }
    let tri = e.simplify().embedded.triangulate()?;
    let pair = tree_cotree(&tri, root)?;
    if !pair.leftover.is_empty() {
        return Err(Error::InvalidRotation(format!(
            "{} edges left over in a planar tree-cotree partition",
            pair.leftover.len()
        )));
    }
    let layering = &pair.layering;
    let mut stamp = vec![usize::MAX; g.n()];
    let mut bags = Vec::with_capacity(tri.faces().len());
    for (f, walk) in tri.faces().iter().enumerate() {
        let mut bag = Vec::new();
        for &d in walk {
            let mut v = tri.origin(d);
            while stamp[v] != f {
                stamp[v] = f;
                bag.push(v);
                match layering.parent[v] {
                    Some(p) => v = p,
                    None => break,
                }
            }
        }
        bag.sort_unstable();
        bags.push(bag);
    }
    let tree_edges = pair.cotree.iter().map(|&(a, b, _)| (a, b)).collect();
    Ok(PlanarDecomposition {
        td: TreeDecomposition { host_n: g.n(), bags, tree_edges },
        depth: layering.depth,
    })
}

/// Decomposition of the subgraph induced by levels `lo..=hi` of a layering.
#[derive(Debug, Clone)]
pub struct SliceDecomposition {
    pub lo: usize,
    pub hi: usize,
    /// Induced slice subgraph.
    pub graph: Graph,
    /// Slice vertex -> host vertex (sorted).
    pub back_map: Vec<Vertex>,
    pub td: TreeDecomposition,
    /// BFS depth used for the slice's decomposition.
    pub depth: usize,
}

/// Decomposes the level band `lo..=hi`: levels above `hi` are deleted,
/// levels below `lo` contracted to a single root, the result decomposed by
/// [`planar_bfs_td`] and the contracted root stripped from every bag.
pub fn slice_td(e: &EmbeddedGraph, layering: &Layering, lo: usize, hi: usize) -> Result<SliceDecomposition> {
    let g = e.graph();
    if !e.is_planar() {
        return Err(Error::NotPlanar(e.genus()));
    }
    if layering.level.len() != g.n() {
        return Err(Error::InvalidParameter("layering does not match the graph".into()));
    }
    if lo > hi || hi > layering.depth {
        return Err(Error::InvalidParameter(format!(
            "level range [{lo}, {hi}] outside [0, {}]",
            layering.depth
        )));
    }
    let removed: Vec<Vertex> = (0..g.n()).filter(|&v| layering.level[v].is_none_or(|l| l > hi)).collect();
    let (kept, kept_back) = e.delete_vertices(&removed);
    let (band, to_band, root) = if lo == 0 {
        let root = kept_back.binary_search(&layering.root).expect("root survives deletion");
        let identity = (0..kept.graph().n()).collect::<Vec<_>>();
        (kept, identity, root)
    } else {
        let inner: Vec<Vertex> = (0..kept.graph().n())
            .filter(|&v| layering.level[kept_back[v]].is_some_and(|l| l < lo))
            .collect();
        let c = kept.contract_connected_set(&inner)?;
        (c.embedded, c.vertex_map, c.contracted)
    };
    let pd = planar_bfs_td(&band, root)?;

    let slice_vertices: Vec<Vertex> =
        (0..g.n()).filter(|&v| layering.level[v].is_some_and(|l| (lo..=hi).contains(&l))).collect();
    let (graph, back_map) = g.induced_subgraph(&slice_vertices);
    let mut band_to_slice = vec![usize::MAX; band.graph().n()];
    for (i, &orig) in back_map.iter().enumerate() {
        let k = kept_back.binary_search(&orig).expect("slice vertex survives deletion");
        band_to_slice[to_band[k]] = i;
    }
    let bags = pd
        .td
        .bags
        .iter()
        .map(|bag| bag.iter().filter(|&&w| w != root || lo == 0).map(|&w| band_to_slice[w]).collect())
        .collect();
    Ok(SliceDecomposition {
        lo,
        hi,
        td: TreeDecomposition::new(graph.n(), bags, pd.td.tree_edges),
        graph,
        back_map,
        depth: pd.depth,
    })
}
