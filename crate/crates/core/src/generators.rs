//! Deterministic constructors for grids, apex graphs, hexagon-set graphs and
//! walls, random planar triangulations and toroidal grids.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embed::{Dart, EmbeddedGraph};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

fn grid_like(rows: usize, cols: usize, wrap: bool) -> EmbeddedGraph {
    let n = rows * cols;
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    let mut right = vec![usize::MAX; n];
    let mut down = vec![usize::MAX; n];
    for r in 0..rows {
        for c in 0..cols {
            let v = id(r, c);
            if c + 1 < cols || wrap {
                right[v] = edges.len();
                edges.push((v, id(r, (c + 1) % cols)));
            }
            if r + 1 < rows || wrap {
                down[v] = edges.len();
                edges.push((v, id((r + 1) % rows, c)));
            }
        }
    }
    let mut rotation = Vec::with_capacity(n);
    for r in 0..rows {
        for c in 0..cols {
            let v = id(r, c);
            let mut rot = Vec::with_capacity(4);
            if right[v] != usize::MAX {
                rot.push(Dart::new(right[v], 0));
            }
            if down[v] != usize::MAX {
                rot.push(Dart::new(down[v], 0));
            }
            if c > 0 || wrap {
                rot.push(Dart::new(right[id(r, (c + cols - 1) % cols)], 1));
            }
            if r > 0 || wrap {
                rot.push(Dart::new(down[id((r + rows - 1) % rows, c)], 1));
            }
            rotation.push(rot);
        }
    }
    let graph = Graph::new(n, &edges).expect("grid edges in range");
    EmbeddedGraph::new(graph, rotation).expect("grid rotation is consistent")
}

/// `rows x cols` grid; vertex `r * cols + c`, rotation (right, down, left, up).
pub fn grid(rows: usize, cols: usize) -> Result<EmbeddedGraph> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParameter(format!("grid dimensions must be positive, got {rows}x{cols}")));
    }
    Ok(grid_like(rows, cols, false))
}

/// `C_rows x C_cols` on the torus with the same rotation convention as [`grid`].
pub fn toroidal_grid(rows: usize, cols: usize) -> Result<EmbeddedGraph> {
    if rows < 3 || cols < 3 {
        return Err(Error::InvalidParameter(format!("toroidal grid needs both sides >= 3, got {rows}x{cols}")));
    }
    Ok(grid_like(rows, cols, true))
}

/// `n x n` grid plus an apex (vertex `n * n`) joined to every grid vertex.
pub fn apex_over_grid(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("apex grid size must be positive".into()));
    }
    let base = grid_like(n, n, false);
    let apex = n * n;
    let mut edges = base.graph().edges().to_vec();
    edges.extend((0..apex).map(|v| (v, apex)));
    Graph::new(apex + 1, &edges)
}

/// Path on `n` vertices.
pub fn path(n: usize) -> EmbeddedGraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    let rotation = (0..n)
        .map(|i| {
            let mut rot = Vec::new();
            if i + 1 < n {
                rot.push(Dart::new(i, 0));
            }
            if i > 0 {
                rot.push(Dart::new(i - 1, 1));
            }
            rot
        })
        .collect();
    EmbeddedGraph::new(Graph::new(n, &edges).expect("path"), rotation).expect("path rotation")
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Result<EmbeddedGraph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs at least 3 vertices, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let rotation = (0..n).map(|i| vec![Dart::new(i, 0), Dart::new((i + n - 1) % n, 1)]).collect();
    EmbeddedGraph::new(Graph::new(n, &edges)?, rotation)
}

/// Star with centre 0 and `leaves` leaves.
pub fn star(leaves: usize) -> EmbeddedGraph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    let mut rotation = vec![(0..leaves).map(|e| Dart::new(e, 0)).collect::<Vec<_>>()];
    rotation.extend((0..leaves).map(|e| vec![Dart::new(e, 1)]));
    EmbeddedGraph::new(Graph::new(leaves + 1, &edges).expect("star"), rotation).expect("star rotation")
}

/// Complete graph `K_n` with no embedding.
pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges).expect("complete graph")
}

/// Axial hexagon coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hex {
    pub q: i32,
    pub r: i32,
}

/// Axial neighbour offsets in cyclic order; corner `k` of a hexagon sits
/// between neighbours `k` and `k + 1`.
const HEX_DIRS: [(i32, i32); 6] = [(1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1)];

impl Hex {
    pub const ORIGIN: Hex = Hex { q: 0, r: 0 };

    pub fn new(q: i32, r: i32) -> Self {
        Hex { q, r }
    }

    pub fn neighbor(self, k: usize) -> Hex {
        let (dq, dr) = HEX_DIRS[k % 6];
        Hex { q: self.q + dq, r: self.r + dr }
    }

    pub fn neighbors(self) -> impl Iterator<Item = Hex> {
        (0..6).map(move |k| self.neighbor(k))
    }

    /// Tile distance in the hexagonal tiling.
    pub fn distance(self, other: Hex) -> u32 {
        let dq = self.q - other.q;
        let dr = self.r - other.r;
        (dq.unsigned_abs() + dr.unsigned_abs() + (dq + dr).unsigned_abs()) / 2
    }

    fn center(self) -> (f64, f64) {
        let q = f64::from(self.q);
        let r = f64::from(self.r);
        (3f64.sqrt() * (q + r / 2.0), 1.5 * r)
    }

    /// The three tiles meeting at corner `k`, sorted.
    fn corner(self, k: usize) -> [Hex; 3] {
        let mut c = [self, self.neighbor(k), self.neighbor(k + 1)];
        c.sort();
        c
    }
}

/// All hexagons within distance `radius` of the origin, sorted.
pub fn hex_ball(radius: u32) -> Vec<Hex> {
    let r = radius as i32;
    let mut out = Vec::new();
    for q in -r..=r {
        for s in -r..=r {
            let h = Hex::new(q, s);
            if h.distance(Hex::ORIGIN) <= radius {
                out.push(h);
            }
        }
    }
    out.sort();
    out
}

struct HexGraph {
    embedded: EmbeddedGraph,
    corners: Vec<[Hex; 3]>,
    hexes: Vec<Hex>,
}

fn build_hex_graph(coords: &[Hex]) -> Result<HexGraph> {
    let hexes: Vec<Hex> = coords.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if hexes.is_empty() {
        return Err(Error::InvalidParameter("empty hexagon set".into()));
    }
    let members: HashSet<Hex> = hexes.iter().copied().collect();
    let mut seen = HashSet::from([hexes[0]]);
    let mut queue = VecDeque::from([hexes[0]]);
    while let Some(h) = queue.pop_front() {
        for nb in h.neighbors() {
            if members.contains(&nb) && seen.insert(nb) {
                queue.push_back(nb);
            }
        }
    }
    if seen.len() != hexes.len() {
        return Err(Error::InvalidParameter("hexagon set is not connected".into()));
    }

    let mut corner_id: BTreeMap<[Hex; 3], usize> = BTreeMap::new();
    for h in &hexes {
        for k in 0..6 {
            corner_id.insert(h.corner(k), 0);
        }
    }
    let corners: Vec<[Hex; 3]> = corner_id.keys().copied().collect();
    for (i, c) in corners.iter().enumerate() {
        corner_id.insert(*c, i);
    }

    let mut edge_seen = HashSet::new();
    let mut edges = Vec::new();
    let mut sides = Vec::new();
    for h in &hexes {
        for k in 0..6 {
            let other = h.neighbor(k + 1);
            let side = if *h < other { (*h, other) } else { (other, *h) };
            if edge_seen.insert(side) {
                edges.push((corner_id[&h.corner(k)], corner_id[&h.corner(k + 1)]));
                sides.push(side);
            }
        }
    }
    let n = corners.len();
    let mut incident: Vec<Vec<(f64, Dart)>> = vec![Vec::new(); n];
    for (e, (&(u, v), &(a, b))) in edges.iter().zip(&sides).enumerate() {
        let (ax, ay) = a.center();
        let (bx, by) = b.center();
        let mid = ((ax + bx) / 2.0, (ay + by) / 2.0);
        for (end, w) in [(0, u), (1, v)] {
            let pos = corners[w].iter().map(|h| h.center()).fold((0.0, 0.0), |acc, c| (acc.0 + c.0 / 3.0, acc.1 + c.1 / 3.0));
            let angle = (mid.1 - pos.1).atan2(mid.0 - pos.0);
            incident[w].push((angle, Dart::new(e, end)));
        }
    }
    let rotation = incident
        .into_iter()
        .map(|mut list| {
            list.sort_by(|a, b| a.0.total_cmp(&b.0));
            list.into_iter().map(|(_, d)| d).collect()
        })
        .collect();
    let embedded = EmbeddedGraph::new(Graph::new(n, &edges)?, rotation)?;
    Ok(HexGraph { embedded, corners, hexes })
}

/// Planar graph of a connected set of hexagonal tiles: one vertex per tile
/// corner, one edge per tile side. Vertices are numbered by their sorted
/// corner keys (the three tiles meeting there) and rotations follow the
/// counterclockwise geometric order.
pub fn hex_set_graph(coords: &[Hex]) -> Result<EmbeddedGraph> {
    Ok(build_hex_graph(coords)?.embedded)
}

/// Structure of an unsubdivided wall of size `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallLayout {
    pub size: usize,
    pub hexes: Vec<Hex>,
    /// Smallest `t` for which each vertex is `t`-inner.
    pub inner_level: Vec<usize>,
    /// Vertices on the boundary of the tile union.
    pub outer: Vec<bool>,
}

impl WallLayout {
    pub fn hex_count(&self) -> usize {
        self.hexes.len()
    }

    pub fn is_inner(&self, v: Vertex, t: usize) -> bool {
        self.inner_level[v] <= t
    }

    pub fn inner_set(&self, t: usize) -> Vec<Vertex> {
        (0..self.inner_level.len()).filter(|&v| self.is_inner(v, t)).collect()
    }

    pub fn outer_set(&self) -> Vec<Vertex> {
        (0..self.outer.len()).filter(|&v| self.outer[v]).collect()
    }
}

#[derive(Debug, Clone)]
pub struct Wall {
    pub layout: WallLayout,
    pub embedded: EmbeddedGraph,
}

/// Wall of size `s`: the graph of all tiles within distance `s - 1` of the
/// central tile, with inner/outer vertex classification.
pub fn wall(s: usize) -> Result<Wall> {
    if s == 0 {
        return Err(Error::InvalidParameter("wall size must be positive".into()));
    }
    let hg = build_hex_graph(&hex_ball(s as u32 - 1))?;
    let members: HashSet<Hex> = hg.hexes.iter().copied().collect();
    let mut inner_level = Vec::with_capacity(hg.corners.len());
    let mut outer = Vec::with_capacity(hg.corners.len());
    for c in &hg.corners {
        let inside: Vec<&Hex> = c.iter().filter(|h| members.contains(h)).collect();
        let level = inside.iter().map(|h| h.distance(Hex::ORIGIN) as usize + 1).min().unwrap_or(s);
        inner_level.push(level);
        outer.push(inside.len() < 3);
    }
    Ok(Wall {
        layout: WallLayout { size: s, hexes: hg.hexes, inner_level, outer },
        embedded: hg.embedded,
    })
}

/// Replaces every edge by a path of `factor` edges. Edge `e` becomes edges
/// `e * factor .. (e + 1) * factor`; new vertices are appended.
pub fn subdivide(e: &EmbeddedGraph, factor: usize) -> Result<EmbeddedGraph> {
    if factor == 0 {
        return Err(Error::InvalidParameter("subdivision factor must be positive".into()));
    }
    let g = e.graph();
    let n = g.n();
    let inner = factor - 1;
    let total = n + g.m() * inner;
    let mut edges = Vec::with_capacity(g.m() * factor);
    let mut rotation: Vec<Vec<Dart>> = vec![Vec::new(); total];
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        let chain: Vec<Vertex> = std::iter::once(u).chain((0..inner).map(|j| n + id * inner + j)).chain(std::iter::once(v)).collect();
        for j in 0..factor {
            edges.push((chain[j], chain[j + 1]));
        }
        for j in 1..factor {
            let x = chain[j];
            rotation[x] = vec![Dart::new(id * factor + j - 1, 1), Dart::new(id * factor + j, 0)];
        }
    }
    for v in 0..n {
        rotation[v] = e
            .rotation(v)
            .iter()
            .map(|d| if d.end() == 0 { Dart::new(d.edge() * factor, 0) } else { Dart::new(d.edge() * factor + factor - 1, 1) })
            .collect();
    }
    EmbeddedGraph::new(Graph::new(total, &edges)?, rotation)
}

/// Planar triangulation grown from a triangle by inserting each new vertex
/// into a face chosen uniformly at random and joining it to the three corners.
pub fn random_planar_triangulation(n: usize, seed: u64) -> Result<EmbeddedGraph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("triangulation needs at least 3 vertices, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = vec![(0, 1), (1, 2), (2, 0)];
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    for x in 3..n {
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[f];
        edges.extend([(a, x), (b, x), (c, x)]);
        faces[f] = [a, b, x];
        faces.push([b, c, x]);
        faces.push([c, a, x]);
    }
    let cycles: Vec<Vec<Vertex>> = faces.iter().map(|f| f.to_vec()).collect();
    EmbeddedGraph::from_oriented_faces(Graph::new(n, &edges)?, &cycles)
}
