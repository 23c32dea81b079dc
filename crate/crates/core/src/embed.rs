//! Combinatorial (rotation-system) embeddings on orientable surfaces.
//!
//! Edge `e = (u, v)` owns two darts: `2e` leaves `u`, `2e + 1` leaves `v`.
//! A rotation lists the darts leaving each vertex in cyclic order, and the
//! face successor of a dart `d` is the rotation successor of its twin.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};

/// Half-edge: edge id plus the endpoint it leaves from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub usize);

impl Dart {
    pub fn new(edge: EdgeId, end: usize) -> Self {
        debug_assert!(end < 2);
        Dart(2 * edge + end)
    }

    pub fn edge(self) -> EdgeId {
        self.0 / 2
    }

    /// 0 when the dart leaves the first listed endpoint, 1 otherwise.
    pub fn end(self) -> usize {
        self.0 & 1
    }

    pub fn twin(self) -> Dart {
        Dart(self.0 ^ 1)
    }
}

/// Origin vertex of a dart in `g`.
pub fn dart_origin(g: &Graph, d: Dart) -> Vertex {
    let (u, v) = g.endpoints(d.edge());
    if d.end() == 0 {
        u
    } else {
        v
    }
}

/// Faces and Euler genus of a rotation system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    /// Face boundary walks, each a cycle of darts.
    pub faces: Vec<Vec<Dart>>,
    /// Faces counted by Euler's formula: traced faces plus one per isolated vertex.
    pub face_count: usize,
    pub components: usize,
    pub euler_genus: usize,
}

/// Traces faces of `rotation` and derives the genus from
/// `n - m + f = 2c - 2g` summed over the `c` components.
pub fn validate_embedding(g: &Graph, rotation: &[Vec<Dart>]) -> Result<EmbeddingReport> {
    let position = check_rotation(g, rotation)?;
    let (faces, _) = trace_faces(g, rotation, &position);
    let isolated = (0..g.n()).filter(|&v| g.degree(v) == 0).count();
    let face_count = faces.len() + isolated;
    let components = g.components().len();
    let twice = 2 * components as i64 - g.n() as i64 + g.m() as i64 - face_count as i64;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::InvalidRotation(format!(
            "Euler characteristic gives non-integral or negative genus ({twice}/2)"
        )));
    }
    Ok(EmbeddingReport { faces, face_count, components, euler_genus: (twice / 2) as usize })
}

fn check_rotation(g: &Graph, rotation: &[Vec<Dart>]) -> Result<Vec<usize>> {
    if rotation.len() != g.n() {
        return Err(Error::InvalidRotation(format!(
            "{} rotation lists for {} vertices",
            rotation.len(),
            g.n()
        )));
    }
    let mut position = vec![usize::MAX; 2 * g.m()];
    for (v, rot) in rotation.iter().enumerate() {
        for (i, &d) in rot.iter().enumerate() {
            if d.0 >= position.len() {
                return Err(Error::InvalidRotation(format!("dart {} does not exist", d.0)));
            }
            if dart_origin(g, d) != v {
                return Err(Error::InvalidRotation(format!(
                    "dart {} listed at vertex {v} but leaves vertex {}",
                    d.0,
                    dart_origin(g, d)
                )));
            }
            if position[d.0] != usize::MAX {
                return Err(Error::InvalidRotation(format!("dart {} listed twice", d.0)));
            }
            position[d.0] = i;
        }
    }
    if let Some(d) = position.iter().position(|&p| p == usize::MAX) {
        return Err(Error::InvalidRotation(format!("dart {d} missing from the rotation")));
    }
    Ok(position)
}

fn trace_faces(g: &Graph, rotation: &[Vec<Dart>], position: &[usize]) -> (Vec<Vec<Dart>>, Vec<usize>) {
    let mut face_of = vec![usize::MAX; position.len()];
    let mut faces = Vec::new();
    for start in 0..position.len() {
        if face_of[start] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut walk = Vec::new();
        let mut d = Dart(start);
        while face_of[d.0] == usize::MAX {
            face_of[d.0] = id;
            walk.push(d);
            let t = d.twin();
            let rot = &rotation[dart_origin(g, t)];
            d = rot[(position[t.0] + 1) % rot.len()];
        }
        faces.push(walk);
    }
    (faces, face_of)
}

/// A graph together with a validated orientable rotation system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedGraph {
    graph: Graph,
    rotation: Vec<Vec<Dart>>,
    position: Vec<usize>,
    faces: Vec<Vec<Dart>>,
    face_of: Vec<usize>,
    face_count: usize,
    genus: usize,
}

/// Result of contracting a vertex set (or simplifying) an embedding.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub embedded: EmbeddedGraph,
    /// Old vertex -> new vertex.
    pub vertex_map: Vec<Vertex>,
    /// New edge -> old edge.
    pub edge_origin: Vec<EdgeId>,
    /// The vertex the set was merged into.
    pub contracted: Vertex,
}

impl EmbeddedGraph {
    pub fn new(graph: Graph, rotation: Vec<Vec<Dart>>) -> Result<Self> {
        let position = check_rotation(&graph, &rotation)?;
        let report = validate_embedding(&graph, &rotation)?;
        let mut face_of = vec![0; position.len()];
        for (f, walk) in report.faces.iter().enumerate() {
            for d in walk {
                face_of[d.0] = f;
            }
        }
        Ok(EmbeddedGraph {
            graph,
            rotation,
            position,
            faces: report.faces,
            face_of,
            face_count: report.face_count,
            genus: report.euler_genus,
        })
    }

    /// Builds an embedding from oriented faces given as vertex cycles of a
    /// simple graph: within a face `.. a, b, c ..` the dart `b->c` follows
    /// `b->a` in the rotation at `b`.
    pub fn from_oriented_faces(graph: Graph, faces: &[Vec<Vertex>]) -> Result<Self> {
        let mut dart_of = HashMap::with_capacity(2 * graph.m());
        for (e, &(u, v)) in graph.edges().iter().enumerate() {
            dart_of.insert((u, v), Dart::new(e, 0));
            dart_of.insert((v, u), Dart::new(e, 1));
        }
        let lookup = |a: Vertex, b: Vertex| {
            dart_of
                .get(&(a, b))
                .copied()
                .ok_or_else(|| Error::InvalidRotation(format!("face uses missing edge {a}-{b}")))
        };
        let mut succ: HashMap<Dart, Dart> = HashMap::with_capacity(2 * graph.m());
        for face in faces {
            let k = face.len();
            for i in 0..k {
                let (a, b, c) = (face[i], face[(i + 1) % k], face[(i + 2) % k]);
                if succ.insert(lookup(b, a)?, lookup(b, c)?).is_some() {
                    return Err(Error::InvalidRotation(format!("corner at {b} used twice")));
                }
            }
        }
        let mut rotation = Vec::with_capacity(graph.n());
        for v in 0..graph.n() {
            let mut rot = Vec::new();
            if let Some(&first) = graph.incident(v).first() {
                let (a, _) = graph.endpoints(first);
                let start = Dart::new(first, usize::from(a != v));
                let mut d = start;
                loop {
                    rot.push(d);
                    d = *succ
                        .get(&d)
                        .ok_or_else(|| Error::InvalidRotation(format!("no successor at {v}")))?;
                    if d == start || rot.len() > graph.degree(v) {
                        break;
                    }
                }
            }
            rotation.push(rot);
        }
        EmbeddedGraph::new(graph, rotation)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: Vertex) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotation
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d.0]
    }

    /// Faces as counted by Euler's formula (isolated vertices contribute one).
    pub fn face_count(&self) -> usize {
        self.face_count
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn is_planar(&self) -> bool {
        self.genus == 0
    }

    pub fn origin(&self, d: Dart) -> Vertex {
        dart_origin(&self.graph, d)
    }

    pub fn target(&self, d: Dart) -> Vertex {
        dart_origin(&self.graph, d.twin())
    }

    pub fn rot_next(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.origin(d)];
        rot[(self.position[d.0] + 1) % rot.len()]
    }

    pub fn face_next(&self, d: Dart) -> Dart {
        self.rot_next(d.twin())
    }

    /// Corner vertices of a face, in walk order.
    pub fn face_vertices(&self, f: usize) -> Vec<Vertex> {
        self.faces[f].iter().map(|&d| self.origin(d)).collect()
    }

    /// Rebuilds an embedding from kept old edges and per-new-vertex
    /// rotations given in old darts.
    fn rebuild(
        &self,
        new_n: usize,
        vertex_map: &[Option<Vertex>],
        kept_edges: &[EdgeId],
        rotations: Vec<Vec<Dart>>,
    ) -> Result<(EmbeddedGraph, Vec<EdgeId>)> {
        let mut edge_new = vec![usize::MAX; self.graph.m()];
        let mut edges = Vec::with_capacity(kept_edges.len());
        for (i, &e) in kept_edges.iter().enumerate() {
            edge_new[e] = i;
            let (u, v) = self.graph.endpoints(e);
            edges.push((vertex_map[u].expect("kept edge"), vertex_map[v].expect("kept edge")));
        }
        let graph = Graph::new(new_n, &edges)?;
        let rotation = rotations
            .into_iter()
            .map(|rot| {
                rot.into_iter()
                    .filter(|d| edge_new[d.edge()] != usize::MAX)
                    .map(|d| Dart::new(edge_new[d.edge()], d.end()))
                    .collect()
            })
            .collect();
        Ok((EmbeddedGraph::new(graph, rotation)?, kept_edges.to_vec()))
    }

    /// Induced embedded subgraph on the complement of `removed`, with the
    /// back-map from new to old vertex ids.
    pub fn delete_vertices(&self, removed: &[Vertex]) -> (EmbeddedGraph, Vec<Vertex>) {
        let n = self.graph.n();
        let mut keep = vec![true; n];
        for &v in removed {
            if v < n {
                keep[v] = false;
            }
        }
        let mut map = vec![None; n];
        let mut back = Vec::new();
        for v in 0..n {
            if keep[v] {
                map[v] = Some(back.len());
                back.push(v);
            }
        }
        let kept: Vec<_> = (0..self.graph.m())
            .filter(|&e| {
                let (u, v) = self.graph.endpoints(e);
                keep[u] && keep[v]
            })
            .collect();
        let rotations = back.iter().map(|&v| self.rotation[v].clone()).collect();
        let (embedded, _) = self
            .rebuild(back.len(), &map, &kept, rotations)
            .expect("deleting vertices keeps a rotation system valid");
        (embedded, back)
    }

    /// Removes loops and merges parallel edges (keeping the lowest id).
    pub fn simplify(&self) -> Contraction {
        let n = self.graph.n();
        let kept = self.simple_edges(&(0..n).collect::<Vec<_>>(), |_| true);
        let map: Vec<_> = (0..n).map(Some).collect();
        let (embedded, edge_origin) = self
            .rebuild(n, &map, &kept, self.rotation.clone())
            .expect("dropping edges keeps a rotation system valid");
        Contraction { embedded, vertex_map: (0..n).collect(), edge_origin, contracted: 0 }
    }

    fn simple_edges(&self, vertex_map: &[Vertex], extra: impl Fn(EdgeId) -> bool) -> Vec<EdgeId> {
        let mut seen = HashSet::new();
        (0..self.graph.m())
            .filter(|&e| {
                let (u, v) = self.graph.endpoints(e);
                let (a, b) = (vertex_map[u], vertex_map[v]);
                a != b && extra(e) && seen.insert((a.min(b), a.max(b)))
            })
            .collect()
    }

    /// Contracts a connected vertex set to a single vertex. The merged
    /// rotation lists the edges leaving the set in the order they are met
    /// along the face walks of the subgraph induced by the set, one walk
    /// after another. Loops are then deleted and parallel edges merged. When
    /// the set cuts the surface into a disk the result is planar; the Euler
    /// genus is recomputed either way.
    pub fn contract_connected_set(&self, set: &[Vertex]) -> Result<Contraction> {
        let g = &self.graph;
        let n = g.n();
        let mut in_set = vec![false; n];
        for &v in set {
            g.check_vertex(v)?;
            in_set[v] = true;
        }
        let Some(root) = in_set.iter().position(|&b| b) else {
            return Err(Error::SetNotConnected);
        };
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                if in_set[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        if reached != in_set.iter().filter(|&&b| b).count() {
            return Err(Error::SetNotConnected);
        }

        let internal = |d: Dart| {
            let (u, v) = g.endpoints(d.edge());
            in_set[u] && in_set[v]
        };
        // Rotation restricted to internal darts, as positions into the full rotation.
        let mut internal_pos: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut rank = vec![usize::MAX; 2 * g.m()];
        for v in (0..n).filter(|&v| in_set[v]) {
            for (i, &d) in self.rotation[v].iter().enumerate() {
                if internal(d) {
                    rank[d.0] = internal_pos[v].len();
                    internal_pos[v].push(i);
                }
            }
        }
        let mut merged = Vec::new();
        if internal_pos[root].is_empty() {
            merged.extend(self.rotation[root].iter().copied());
        }
        let mut visited = vec![false; 2 * g.m()];
        for start in (0..2 * g.m()).map(Dart) {
            if visited[start.0] || !in_set[self.origin(start)] || !internal(start) {
                continue;
            }
            let mut d = start;
            while !visited[d.0] {
                visited[d.0] = true;
                let t = d.twin();
                let x = self.origin(t);
                let rot = &self.rotation[x];
                let slots = &internal_pos[x];
                let next_slot = slots[(rank[t.0] + 1) % slots.len()];
                let mut i = (self.position[t.0] + 1) % rot.len();
                while i != next_slot {
                    if !in_set[self.target(rot[i])] {
                        merged.push(rot[i]);
                    }
                    i = (i + 1) % rot.len();
                }
                d = rot[next_slot];
            }
        }

        let mut vertex_map = vec![0; n];
        let mut next = 0;
        let mut contracted = 0;
        for v in 0..n {
            if in_set[v] && v != root {
                continue;
            }
            if v == root {
                contracted = next;
            }
            vertex_map[v] = next;
            next += 1;
        }
        for v in 0..n {
            if in_set[v] {
                vertex_map[v] = contracted;
            }
        }
        let kept = self.simple_edges(&vertex_map, |_| true);
        let mut rotations = Vec::with_capacity(next);
        for v in 0..n {
            if v == root {
                rotations.push(std::mem::take(&mut merged));
            } else if !in_set[v] {
                rotations.push(self.rotation[v].clone());
            }
        }
        let map: Vec<_> = vertex_map.iter().map(|&v| Some(v)).collect();
        let (embedded, edge_origin) = self.rebuild(next, &map, &kept, rotations)?;
        Ok(Contraction { embedded, vertex_map, edge_origin, contracted })
    }

    /// Adds chords until every face is a triangle. Planar, connected input
    /// with at least three vertices is required. Original edges keep their
    /// ids; chords are appended. Each face is fanned from its lowest-id
    /// corner, skipping ahead when a chord would repeat an existing edge.
    pub fn triangulate(&self) -> Result<EmbeddedGraph> {
        let g = &self.graph;
        if !self.is_planar() {
            return Err(Error::NotPlanar(self.genus));
        }
        if g.n() < 3 {
            return Err(Error::InvalidParameter(format!(
                "triangulation needs at least 3 vertices, got {}",
                g.n()
            )));
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut edges = g.edges().to_vec();
        let mut rotation = self.rotation.clone();
        let mut existing: HashSet<(Vertex, Vertex)> =
            edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        let origin = |edges: &[(Vertex, Vertex)], d: Dart| {
            let (u, v) = edges[d.edge()];
            if d.end() == 0 {
                u
            } else {
                v
            }
        };
        let insert_before = |rot: &mut Vec<Dart>, new: Dart, anchor: Dart| {
            let at = rot.iter().position(|&x| x == anchor).expect("anchor dart in rotation");
            rot.insert(at, new);
        };
        for (f, walk) in self.faces.iter().enumerate() {
            let len = walk.len();
            if len < 3 {
                return Err(Error::DegenerateFace { face: f, len });
            }
            if len == 3 {
                continue;
            }
            let mut darts = walk.clone();
            let mut next: Vec<usize> = (0..len).map(|i| (i + 1) % len).collect();
            let mut alive = len;
            let mut cursor = (0..len).min_by_key(|&i| (self.origin(walk[i]), i)).unwrap_or(0);
            let mut skips = 0;
            while alive > 3 {
                let ear = next[cursor];
                let after = next[ear];
                let a = origin(&edges, darts[cursor]);
                let c = origin(&edges, darts[after]);
                let fresh = !existing.contains(&(a.min(c), a.max(c)));
                if a != c && (fresh || skips >= alive) {
                    let e = edges.len();
                    edges.push((c, a));
                    existing.insert((a.min(c), a.max(c)));
                    let at_c = Dart::new(e, 0);
                    let at_a = Dart::new(e, 1);
                    insert_before(&mut rotation[c], at_c, darts[after]);
                    insert_before(&mut rotation[a], at_a, darts[cursor]);
                    darts[cursor] = at_a;
                    next[cursor] = after;
                    alive -= 1;
                    skips = 0;
                } else {
                    cursor = next[cursor];
                    skips += 1;
                    if skips > 2 * alive + 2 {
                        return Err(Error::InvalidRotation(format!(
                            "face {f} admits no chord between distinct corners"
                        )));
                    }
                }
            }
        }
        let graph = Graph::new(g.n(), &edges)?;
        let out = EmbeddedGraph::new(graph, rotation)?;
        debug_assert!(out.faces.iter().all(|w| w.len() == 3));
        debug_assert_eq!(out.genus, 0);
        Ok(out)
    }
}
