//! Undirected multigraphs with stable vertex and edge identifiers, plus BFS
//! layerings and the distance queries built on them.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;

/// Undirected multigraph. Vertices are `0..n`, edges are numbered in
/// insertion order. Loops and parallel edges are allowed unless the graph
/// was built through [`Graph::simple`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adjacency: Vec<Vec<EdgeId>>,
}

impl Graph {
    /// Builds a multigraph; edge ids follow the order of `edges`.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            for endpoint in [u, v] {
                if endpoint >= n {
                    return Err(Error::EndpointOutOfRange { endpoint, n });
                }
            }
            adjacency[u].push(id);
            adjacency[v].push(id);
        }
        Ok(Graph { n, edges: edges.to_vec(), adjacency })
    }

    /// Builds a simple graph, rejecting loops and parallel edges.
    pub fn simple(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let g = Graph::new(n, edges)?;
        g.check_simple()?;
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adjacency: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    /// Incident edge ids of `v`; a loop appears twice.
    pub fn incident(&self, v: Vertex) -> &[EdgeId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Endpoint of `e` opposite to `v`.
    pub fn other(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Neighbours of `v` with multiplicity, in incidence order.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adjacency[v].iter().map(move |&e| self.other(e, v))
    }

    /// Sorted, deduplicated neighbours of `v`, loops excluded.
    pub fn neighbor_set(&self, v: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.neighbors(v).filter(|&u| u != v).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).any(|w| w == b)
    }

    pub fn is_simple(&self) -> bool {
        self.check_simple().is_ok()
    }

    fn check_simple(&self) -> Result<()> {
        let mut seen = HashSet::with_capacity(self.edges.len());
        for &(u, v) in &self.edges {
            if u == v {
                return Err(Error::Loop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::ParallelEdge(u.min(v), u.max(v)));
            }
        }
        Ok(())
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest distance from `v` to a reachable vertex.
    pub fn eccentricity(&self, v: Vertex) -> usize {
        self.distances_from(v).into_iter().flatten().max().unwrap_or(0)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut head = 0;
            while head < members.len() {
                let u = members[head];
                head += 1;
                for w in self.neighbors(u) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Induced subgraph on the complement of `removed`. The back-map sends
    /// new vertex ids to original ones; edges keep their relative order.
    pub fn delete_vertices(&self, removed: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut keep = vec![true; self.n];
        for &v in removed {
            if v < self.n {
                keep[v] = false;
            }
        }
        self.restrict(&keep)
    }

    /// Induced subgraph on `vertices` (any order); back-map is sorted.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut keep = vec![false; self.n];
        for &v in vertices {
            keep[v] = true;
        }
        self.restrict(&keep)
    }

    fn restrict(&self, keep: &[bool]) -> (Graph, Vec<Vertex>) {
        let mut forward = vec![usize::MAX; self.n];
        let mut back = Vec::new();
        for v in 0..self.n {
            if keep[v] {
                forward[v] = back.len();
                back.push(v);
            }
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep[u] && keep[v])
            .map(|&(u, v)| (forward[u], forward[v]))
            .collect();
        let g = Graph::new(back.len(), &edges).expect("restricted edges stay in range");
        (g, back)
    }
}

/// BFS layering from a root: levels are graph distances, parents sit one
/// level closer to the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layering {
    pub root: Vertex,
    /// `None` for vertices outside the root's component.
    pub level: Vec<Option<usize>>,
    pub parent: Vec<Option<Vertex>>,
    /// Lowest-id edge joining each vertex to its parent.
    pub parent_edge: Vec<Option<EdgeId>>,
    pub depth: usize,
}

impl Layering {
    /// Number of vertices reached from the root.
    pub fn reached(&self) -> usize {
        self.level.iter().filter(|l| l.is_some()).count()
    }

    pub fn spans(&self) -> bool {
        self.reached() == self.level.len()
    }

    /// Vertices on each level, sorted.
    pub fn levels(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.depth + 1];
        for (v, l) in self.level.iter().enumerate() {
            if let Some(l) = l {
                out[*l].push(v);
            }
        }
        out
    }

    /// Path from `v` up to the root, `v` first.
    pub fn root_path(&self, v: Vertex) -> Vec<Vertex> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path
    }

    /// Whether `e` is a tree edge of this layering.
    pub fn is_tree_edge(&self, g: &Graph, e: EdgeId) -> bool {
        let (u, v) = g.endpoints(e);
        self.parent_edge[u] == Some(e) || self.parent_edge[v] == Some(e)
    }
}

/// BFS from `root`. Vertices outside the root's component are left
/// unlevelled (see [`Layering::spans`]). Each vertex's parent is its
/// lowest-numbered neighbour on the preceding level.
pub fn bfs_layering(g: &Graph, root: Vertex) -> Result<Layering> {
    g.check_vertex(root)?;
    let level = g.distances_from(root);
    let mut parent = vec![None; g.n()];
    let mut parent_edge = vec![None; g.n()];
    for v in 0..g.n() {
        let Some(lv) = level[v] else { continue };
        if lv == 0 {
            continue;
        }
        let mut best: Option<(Vertex, EdgeId)> = None;
        for &e in g.incident(v) {
            let u = g.other(e, v);
            if level[u] == Some(lv - 1) && best.is_none_or(|(bu, be)| (u, e) < (bu, be)) {
                best = Some((u, e));
            }
        }
        let (u, e) = best.expect("BFS levels have a predecessor");
        parent[v] = Some(u);
        parent_edge[v] = Some(e);
    }
    let depth = level.iter().flatten().copied().max().unwrap_or(0);
    Ok(Layering { root, level, parent, parent_edge, depth })
}

/// Diameter by repeated BFS; `None` means infinite (disconnected graph).
pub fn diameter(g: &Graph) -> Option<usize> {
    let mut best = 0;
    for v in 0..g.n() {
        let dist = g.distances_from(v);
        for d in dist {
            best = best.max(d?);
        }
    }
    Some(best)
}

/// Picks a root of small eccentricity by BFS from up to `samples` evenly
/// spaced vertices; ties go to the lowest id.
pub fn choose_root(g: &Graph, samples: usize) -> Vertex {
    if g.n() == 0 {
        return 0;
    }
    let samples = samples.clamp(1, g.n());
    let step = g.n() / samples;
    let mut best = (usize::MAX, 0);
    for i in 0..samples {
        let v = i * step.max(1);
        let ecc = g.eccentricity(v);
        if (ecc, v) < best {
            best = (ecc, v);
        }
    }
    best.1
}
