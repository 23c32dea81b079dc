//! Tree decompositions: the bag-based validator, redundancy compression and
//! conversion to nice form for dynamic programming.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};

/// Tree of vertex bags over a host graph with `host_n` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub host_n: usize,
    /// Sorted, duplicate-free bags.
    pub bags: Vec<Vec<Vertex>>,
    pub tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Normalises bags (sorted, deduplicated) but performs no validation.
    pub fn new(host_n: usize, bags: Vec<Vec<Vertex>>, tree_edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { host_n, bags, tree_edges }
    }

    /// The one-bag decomposition; valid for every graph.
    pub fn trivial(g: &Graph) -> Self {
        TreeDecomposition { host_n: g.n(), bags: vec![(0..g.n()).collect()], tree_edges: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// Largest bag size minus one (0 when every bag is empty).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.tree_edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Contracts tree edges whose one bag is contained in the other, so no
    /// remaining bag is a subset of a neighbour's. Validity and width are
    /// unchanged.
    pub fn compress(&self) -> TreeDecomposition {
        let k = self.bags.len();
        if k <= 1 {
            return self.clone();
        }
        let mut rep: Vec<usize> = (0..k).collect();
        fn find(rep: &mut [usize], mut x: usize) -> usize {
            while rep[x] != x {
                rep[x] = rep[rep[x]];
                x = rep[x];
            }
            x
        }
        let subset = |a: &[Vertex], b: &[Vertex]| {
            let mut j = 0;
            a.iter().all(|x| {
                while j < b.len() && b[j] < *x {
                    j += 1;
                }
                j < b.len() && b[j] == *x
            })
        };
        loop {
            let mut changed = false;
            for &(a, b) in &self.tree_edges {
                let ra = find(&mut rep, a);
                let rb = find(&mut rep, b);
                if ra == rb {
                    continue;
                }
                if subset(&self.bags[ra], &self.bags[rb]) {
                    rep[ra] = rb;
                    changed = true;
                } else if subset(&self.bags[rb], &self.bags[ra]) {
                    rep[rb] = ra;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut new_id = vec![usize::MAX; k];
        let mut bags = Vec::new();
        for x in 0..k {
            if find(&mut rep, x) == x {
                new_id[x] = bags.len();
                bags.push(self.bags[x].clone());
            }
        }
        let mut tree_edges = Vec::new();
        for &(a, b) in &self.tree_edges {
            let ra = new_id[find(&mut rep, a)];
            let rb = new_id[find(&mut rep, b)];
            if ra != rb {
                tree_edges.push((ra.min(rb), ra.max(rb)));
            }
        }
        TreeDecomposition { host_n: self.host_n, bags, tree_edges }
    }
}

/// First violated decomposition condition, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    HostMismatch { decomposition: usize, graph: usize },
    NoNodes,
    VertexOutOfRange { node: usize, vertex: Vertex },
    TreeEdgeOutOfRange { index: usize },
    /// The tree edges do not form a tree; `node` is unreachable from node 0
    /// or closes a cycle.
    NotATree { node: usize },
    VertexUncovered { vertex: Vertex },
    EdgeUncovered { edge: EdgeId, u: Vertex, v: Vertex },
    SubtreeDisconnected { vertex: Vertex, nodes: (usize, usize) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::HostMismatch { decomposition, graph } => {
                write!(f, "decomposition is over {decomposition} vertices but the graph has {graph}")
            }
            Violation::NoNodes => write!(f, "decomposition has no nodes"),
            Violation::VertexOutOfRange { node, vertex } => write!(f, "bag {node} holds unknown vertex {vertex}"),
            Violation::TreeEdgeOutOfRange { index } => write!(f, "tree edge {index} references a missing node"),
            Violation::NotATree { node } => write!(f, "tree edges do not form a tree (at node {node})"),
            Violation::VertexUncovered { vertex } => write!(f, "vertex {vertex} is in no bag"),
            Violation::EdgeUncovered { edge, u, v } => write!(f, "edge {edge} ({u},{v}) is in no bag"),
            Violation::SubtreeDisconnected { vertex, nodes } => {
                write!(f, "bags holding vertex {vertex} are disconnected (nodes {} and {})", nodes.0, nodes.1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub width: usize,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the tree shape and the three bag conditions (vertex coverage,
/// edge coverage, subtree connectivity), reporting the first violation.
pub fn validate(td: &TreeDecomposition, g: &Graph) -> ValidationReport {
    let width = td.width();
    let report = |violation| ValidationReport { width, violation: Some(violation) };
    if td.host_n != g.n() {
        return report(Violation::HostMismatch { decomposition: td.host_n, graph: g.n() });
    }
    let k = td.bags.len();
    if k == 0 {
        return report(Violation::NoNodes);
    }
    for (node, bag) in td.bags.iter().enumerate() {
        if let Some(&vertex) = bag.iter().find(|&&v| v >= g.n()) {
            return report(Violation::VertexOutOfRange { node, vertex });
        }
    }
    // Tree shape via union-find.
    let mut rep: Vec<usize> = (0..k).collect();
    fn find(rep: &mut [usize], mut x: usize) -> usize {
        while rep[x] != x {
            rep[x] = rep[rep[x]];
            x = rep[x];
        }
        x
    }
    for (index, &(a, b)) in td.tree_edges.iter().enumerate() {
        if a >= k || b >= k {
            return report(Violation::TreeEdgeOutOfRange { index });
        }
        let (ra, rb) = (find(&mut rep, a), find(&mut rep, b));
        if ra == rb {
            return report(Violation::NotATree { node: b });
        }
        rep[ra] = rb;
    }
    let r0 = find(&mut rep, 0);
    if let Some(node) = (0..k).find(|&x| find(&mut rep, x) != r0) {
        return report(Violation::NotATree { node });
    }

    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (node, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            occurrences[v].push(node);
        }
    }
    if let Some(vertex) = (0..g.n()).find(|&v| occurrences[v].is_empty()) {
        return report(Violation::VertexUncovered { vertex });
    }
    for (edge, &(u, v)) in g.edges().iter().enumerate() {
        let (a, b) = if occurrences[u].len() <= occurrences[v].len() { (u, v) } else { (v, u) };
        if !occurrences[a].iter().any(|&node| td.bags[node].binary_search(&b).is_ok()) {
            return report(Violation::EdgeUncovered { edge, u, v });
        }
    }
    // A vertex's nodes induce a subforest; it is a subtree iff it has
    // exactly |nodes| - 1 edges.
    let mut shared = vec![0usize; g.n()];
    for &(a, b) in &td.tree_edges {
        let (x, y) = (&td.bags[a], &td.bags[b]);
        let (mut i, mut j) = (0, 0);
        while i < x.len() && j < y.len() {
            match x[i].cmp(&y[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    shared[x[i]] += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    if let Some(vertex) = (0..g.n()).find(|&v| shared[v] + 1 != occurrences[v].len()) {
        let adj = td.adjacency();
        let holds = |node: usize| td.bags[node].binary_search(&vertex).is_ok();
        let start = occurrences[vertex][0];
        let mut seen = vec![false; k];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] && holds(y) {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let other = occurrences[vertex].iter().copied().find(|&x| !seen[x]).unwrap_or(start);
        return report(Violation::SubtreeDisconnected { vertex, nodes: (start, other) });
    }
    ValidationReport { width, violation: None }
}

/// Greedy minimum-degree elimination decomposition, for graphs that come
/// without an embedding. Ties go to the lowest vertex id.
pub fn min_degree_decomposition(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition { host_n: 0, bags: vec![Vec::new()], tree_edges: Vec::new() };
    }
    let mut adj: Vec<BTreeSet<Vertex>> = (0..n).map(|v| g.neighbor_set(v).into_iter().collect()).collect();
    let mut alive = vec![true; n];
    let mut step_of = vec![usize::MAX; n];
    let mut bags = Vec::with_capacity(n);
    let mut later: Vec<Vec<Vertex>> = Vec::with_capacity(n);
    let mut queue: BTreeSet<(usize, Vertex)> = (0..n).map(|v| (adj[v].len(), v)).collect();
    while let Some((_, v)) = queue.pop_first() {
        let nbrs: Vec<Vertex> = adj[v].iter().copied().collect();
        step_of[v] = bags.len();
        alive[v] = false;
        let mut bag = nbrs.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        later.push(nbrs.clone());
        for &a in &nbrs {
            queue.remove(&(adj[a].len(), a));
            adj[a].remove(&v);
        }
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &nbrs {
            queue.insert((adj[a].len(), a));
        }
    }
    debug_assert!(alive.iter().all(|a| !a));
    let last = bags.len() - 1;
    let mut tree_edges = Vec::with_capacity(last);
    for (step, nbrs) in later.iter().enumerate() {
        if step == last {
            continue;
        }
        let parent = nbrs.iter().map(|&u| step_of[u]).min().unwrap_or(last);
        tree_edges.push((step, parent));
    }
    TreeDecomposition { host_n: n, bags, tree_edges }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce(Vertex),
    Forget(Vertex),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    pub bag: Vec<Vertex>,
    pub children: Vec<usize>,
}

/// Rooted nice decomposition. Children always have smaller ids than their
/// parent, and the root (the last node) has an empty bag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceDecomposition {
    pub host_n: usize,
    pub nodes: Vec<NiceNode>,
}

impl NiceDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn width(&self) -> usize {
        self.nodes.iter().map(|x| x.bag.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Checks the per-node rules of nice form.
    pub fn check(&self) -> Result<()> {
        let bad = |i: usize, msg: &str| Err(Error::InvalidDecomposition(format!("nice node {i}: {msg}")));
        if self.nodes.is_empty() {
            return Err(Error::InvalidDecomposition("no nodes".into()));
        }
        if !self.nodes[self.root()].bag.is_empty() {
            return bad(self.root(), "root bag is not empty");
        }
        let mut parents = vec![0usize; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            if node.bag.windows(2).any(|w| w[0] >= w[1]) {
                return bad(i, "bag not sorted");
            }
            if node.children.iter().any(|&c| c >= i) {
                return bad(i, "child id not smaller than parent");
            }
            for &c in &node.children {
                parents[c] += 1;
            }
            let child_bag = |j: usize| &self.nodes[node.children[j]].bag;
            let ok = match node.kind {
                NiceKind::Leaf => node.children.is_empty() && node.bag.is_empty(),
                NiceKind::Introduce(v) => {
                    node.children.len() == 1 && {
                        let mut expect = child_bag(0).clone();
                        !expect.contains(&v) && {
                            expect.push(v);
                            expect.sort_unstable();
                            expect == node.bag
                        }
                    }
                }
                NiceKind::Forget(v) => {
                    node.children.len() == 1 && {
                        let mut expect = node.bag.clone();
                        !expect.contains(&v) && {
                            expect.push(v);
                            expect.sort_unstable();
                            &expect == child_bag(0)
                        }
                    }
                }
                NiceKind::Join => node.children.len() == 2 && child_bag(0) == &node.bag && child_bag(1) == &node.bag,
            };
            if !ok {
                return bad(i, "violates its node-type rule");
            }
        }
        if parents[..self.root()].iter().any(|&p| p != 1) || parents[self.root()] != 0 {
            return Err(Error::InvalidDecomposition("nice nodes do not form a rooted tree".into()));
        }
        Ok(())
    }

    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|x| x.bag.clone()).collect();
        let tree_edges = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(i, x)| x.children.iter().map(move |&c| (c, i)))
            .collect();
        TreeDecomposition { host_n: self.host_n, bags, tree_edges }
    }

    /// Checks nice-form rules and validity against `g`.
    pub fn check_for(&self, g: &Graph) -> Result<()> {
        self.check()?;
        let report = validate(&self.to_tree_decomposition(), g);
        match report.violation {
            None => Ok(()),
            Some(v) => Err(Error::InvalidDecomposition(v.to_string())),
        }
    }
}

struct NiceBuilder {
    nodes: Vec<NiceNode>,
}

impl NiceBuilder {
    fn push(&mut self, kind: NiceKind, bag: Vec<Vertex>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    /// Forgets `from \ to`, then introduces `to \ from`, one vertex at a time.
    fn chain(&mut self, mut top: usize, from: &[Vertex], to: &[Vertex]) -> usize {
        let mut bag = from.to_vec();
        for &v in from {
            if to.binary_search(&v).is_err() {
                bag.retain(|&x| x != v);
                top = self.push(NiceKind::Forget(v), bag.clone(), vec![top]);
            }
        }
        for &v in to {
            if from.binary_search(&v).is_err() {
                let at = bag.binary_search(&v).unwrap_err();
                bag.insert(at, v);
                top = self.push(NiceKind::Introduce(v), bag.clone(), vec![top]);
            }
        }
        top
    }
}

/// Converts a valid decomposition into nice form of the same width. Bags
/// contained in a neighbour's bag are merged away first.
pub fn make_nice(td: &TreeDecomposition, g: &Graph) -> Result<NiceDecomposition> {
    if let Some(v) = validate(td, g).violation {
        return Err(Error::InvalidDecomposition(v.to_string()));
    }
    let td = td.compress();
    let k = td.bags.len();
    let adj = td.adjacency();
    let mut order = vec![0];
    let mut parent = vec![usize::MAX; k];
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                order.push(y);
            }
        }
    }
    let mut children = vec![Vec::new(); k];
    for &x in order.iter().skip(1) {
        children[parent[x]].push(x);
    }
    let mut builder = NiceBuilder { nodes: Vec::new() };
    let mut top = vec![usize::MAX; k];
    for &x in order.iter().rev() {
        let bag = &td.bags[x];
        let mut acc = None;
        for &c in &children[x] {
            let t = builder.chain(top[c], &td.bags[c], bag);
            acc = Some(match acc {
                None => t,
                Some(a) => builder.push(NiceKind::Join, bag.clone(), vec![a, t]),
            });
        }
        top[x] = match acc {
            Some(a) => a,
            None => {
                let leaf = builder.push(NiceKind::Leaf, Vec::new(), Vec::new());
                builder.chain(leaf, &[], bag)
            }
        };
    }
    let root_bag = &td.bags[0];
    let root = builder.chain(top[0], root_bag, &[]);
    debug_assert_eq!(root, builder.nodes.len() - 1);
    Ok(NiceDecomposition { host_n: td.host_n, nodes: builder.nodes })
}
