//! Slow reference implementations used to cross-check the solvers. Nothing
//! here calls into the decomposition or DP code, and every answer is checked
//! by the private verifiers below before it is returned.

use std::time::{Duration, Instant};

use crate::decomp::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    Mis,
    Vc,
    Ds,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Mis => "mis",
            Problem::Vc => "vc",
            Problem::Ds => "ds",
        }
    }
}

/// Size limits and a wall-clock ceiling. Calls outside the limits fail with
/// [`Error::BudgetExceeded`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_solve_vertices: usize,
    pub max_treewidth_vertices: usize,
    pub max_iso_host: usize,
    pub max_iso_pattern: usize,
    pub time_limit: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_solve_vertices: 24,
            max_treewidth_vertices: 16,
            max_iso_host: 100,
            max_iso_pattern: 6,
            time_limit: Duration::from_secs(60),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSolution {
    pub value: usize,
    pub witness: Vec<Vertex>,
}

struct Clock {
    start: Instant,
    limit: Duration,
    ticks: u32,
}

impl Clock {
    fn new(limit: Duration) -> Self {
        Clock { start: Instant::now(), limit, ticks: 0 }
    }

    fn tick(&mut self) -> Result<()> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(4096) && self.start.elapsed() > self.limit {
            return Err(Error::BudgetExceeded(format!("time limit of {:?} reached", self.limit)));
        }
        Ok(())
    }
}

fn over(what: &str, n: usize, limit: usize) -> Error {
    Error::BudgetExceeded(format!("{what} on {n} vertices exceeds the limit of {limit}"))
}

/// Neighbourhood bitmasks (loops excluded) and the set of looped vertices.
fn masks(g: &Graph) -> (Vec<u32>, u32) {
    let mut adj = vec![0u32; g.n()];
    let mut looped = 0;
    for &(u, v) in g.edges() {
        if u == v {
            looped |= 1 << u;
        } else {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    (adj, looped)
}

fn members(set: u32) -> Vec<Vertex> {
    (0..32).filter(|&i| set >> i & 1 == 1).collect()
}

fn independent(adj: &[u32], looped: u32, set: u32) -> bool {
    set & looped == 0 && members(set).iter().all(|&v| adj[v] & set == 0)
}

fn covers(g: &Graph, set: u32) -> bool {
    g.edges().iter().all(|&(u, v)| (set >> u | set >> v) & 1 == 1)
}

fn dominating(adj: &[u32], set: u32) -> bool {
    (0..adj.len()).all(|v| (set | set_neighbours(adj, set)) >> v & 1 == 1)
}

fn set_neighbours(adj: &[u32], set: u32) -> u32 {
    members(set).iter().fold(0, |acc, &v| acc | adj[v])
}

struct Search<'a> {
    adj: &'a [u32],
    clock: Clock,
    best: u32,
    best_size: u32,
}

impl Search<'_> {
    /// Largest independent subset of `open`, added to `taken`.
    fn mis(&mut self, open: u32, taken: u32) -> Result<()> {
        self.clock.tick()?;
        if taken.count_ones() + open.count_ones() <= self.best_size && self.best_size > 0 {
            return Ok(());
        }
        if open == 0 {
            if taken.count_ones() > self.best_size || self.best_size == 0 {
                self.best = taken;
                self.best_size = taken.count_ones();
            }
            return Ok(());
        }
        let v = members(open).into_iter().min_by_key(|&v| (self.adj[v] & open).count_ones()).unwrap();
        self.mis(open & !self.adj[v] & !(1 << v), taken | 1 << v)?;
        if (self.adj[v] & open).count_ones() >= 2 {
            self.mis(open & !(1 << v), taken)?;
        }
        Ok(())
    }

    /// Smallest cover: branch on the two ends of an uncovered edge.
    fn vc(&mut self, edges: &[(Vertex, Vertex)], taken: u32) -> Result<()> {
        self.clock.tick()?;
        if taken.count_ones() >= self.best_size {
            return Ok(());
        }
        match edges.iter().find(|&&(u, v)| (taken >> u | taken >> v) & 1 == 0) {
            None => {
                self.best = taken;
                self.best_size = taken.count_ones();
            }
            Some(&(u, v)) => {
                self.vc(edges, taken | 1 << u)?;
                if u != v {
                    self.vc(edges, taken | 1 << v)?;
                }
            }
        }
        Ok(())
    }

    /// Smallest dominating set: the lowest undominated vertex must have a
    /// chosen vertex in its closed neighbourhood.
    fn ds(&mut self, all: u32, taken: u32, dominated: u32) -> Result<()> {
        self.clock.tick()?;
        let open = all & !dominated;
        if open == 0 {
            if taken.count_ones() < self.best_size {
                self.best = taken;
                self.best_size = taken.count_ones();
            }
            return Ok(());
        }
        let reach = self.adj.iter().map(|a| a.count_ones() + 1).max().unwrap_or(1);
        if taken.count_ones() + open.count_ones().div_ceil(reach) >= self.best_size {
            return Ok(());
        }
        let u = open.trailing_zeros() as usize;
        for w in members(self.adj[u] | 1 << u) {
            self.ds(all, taken | 1 << w, dominated | self.adj[w] | 1 << w)?;
        }
        Ok(())
    }
}

/// Exact optimum of an unweighted problem by branch and bound.
pub fn oracle_solve(problem: Problem, g: &Graph, budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.n();
    if n > budget.max_solve_vertices || n > 31 {
        return Err(over(problem.name(), n, budget.max_solve_vertices));
    }
    let (adj, looped) = masks(g);
    let all: u32 = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let mut s = Search { adj: &adj, clock: Clock::new(budget.time_limit), best: 0, best_size: 0 };
    let set = match problem {
        Problem::Mis => {
            s.mis(all & !looped, 0)?;
            assert!(independent(&adj, looped, s.best), "oracle produced a dependent set");
            s.best
        }
        Problem::Vc => {
            s.best = all;
            s.best_size = n as u32 + 1;
            s.vc(g.edges(), 0)?;
            assert!(covers(g, s.best), "oracle produced a non-cover");
            s.best
        }
        Problem::Ds => {
            s.best = all;
            s.best_size = n as u32 + 1;
            s.ds(all, 0, 0)?;
            assert!(dominating(&adj, s.best), "oracle produced a non-dominating set");
            s.best
        }
    };
    let witness = members(set);
    Ok(OracleSolution { value: witness.len(), witness })
}

#[derive(Debug, Clone)]
pub struct TreewidthCertificate {
    pub width: usize,
    /// Elimination ordering achieving the width.
    pub ordering: Vec<Vertex>,
    /// Decomposition built from the ordering.
    pub decomposition: TreeDecomposition,
}

/// Vertices outside `set | {v}` reachable from `v` through `set`.
fn frontier(adj: &[u32], set: u32, v: usize) -> u32 {
    let mut seen = 1u32 << v;
    let mut stack = vec![v];
    let mut out = 0;
    while let Some(x) = stack.pop() {
        let mut nb = adj[x] & !seen;
        seen |= nb;
        out |= nb & !set;
        nb &= set;
        while nb != 0 {
            let y = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            stack.push(y);
        }
    }
    out
}

/// Exact treewidth by dynamic programming over vertex subsets: the best
/// width of eliminating `S` first is the minimum over the last vertex `v`
/// of `S` of the width for `S - v` and the size of `v`'s frontier.
pub fn exact_treewidth(g: &Graph, budget: &OracleBudget) -> Result<TreewidthCertificate> {
    let n = g.n();
    if n > budget.max_treewidth_vertices || n > 24 {
        return Err(over("treewidth", n, budget.max_treewidth_vertices));
    }
    let (adj, _) = masks(g);
    let mut clock = Clock::new(budget.time_limit);
    let size = 1usize << n;
    let mut tw = vec![u8::MAX; size];
    let mut last = vec![u8::MAX; size];
    tw[0] = 0;
    for set in 1..size {
        clock.tick()?;
        let s = set as u32;
        for v in members(s) {
            let rest = s & !(1 << v);
            let q = frontier(&adj, rest, v).count_ones() as u8;
            let cand = tw[rest as usize].max(q);
            if cand < tw[set] {
                tw[set] = cand;
                last[set] = v as u8;
            }
        }
    }
    let mut ordering = Vec::with_capacity(n);
    let mut s = size - 1;
    while s != 0 {
        let v = last[s] as usize;
        ordering.push(v);
        s &= !(1 << v);
    }
    ordering.reverse();
    let decomposition = elimination_decomposition(&adj, &ordering);
    let width = if n == 0 { 0 } else { tw[size - 1] as usize };
    let achieved = decomposition.bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1);
    assert_eq!(achieved, width, "elimination ordering does not reach the computed width");
    assert!(bags_cover(g, &decomposition), "oracle decomposition misses an edge");
    Ok(TreewidthCertificate { width, ordering, decomposition })
}

/// Bag of each vertex is itself plus its later neighbours in the filled
/// graph; it hangs below the bag of the earliest such neighbour.
fn elimination_decomposition(adj: &[u32], ordering: &[Vertex]) -> TreeDecomposition {
    let n = adj.len();
    if n == 0 {
        return TreeDecomposition { host_n: 0, bags: vec![Vec::new()], tree_edges: Vec::new() };
    }
    let mut filled = adj.to_vec();
    let mut rank = vec![0; n];
    for (i, &v) in ordering.iter().enumerate() {
        rank[v] = i;
    }
    let mut bags = Vec::with_capacity(n);
    let mut tree_edges = Vec::new();
    let mut eliminated = 0u32;
    for (i, &v) in ordering.iter().enumerate() {
        let later = filled[v] & !eliminated & !(1 << v);
        for w in members(later) {
            filled[w] |= later & !(1 << w);
        }
        eliminated |= 1 << v;
        let mut bag = members(later);
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        let parent = members(later).into_iter().map(|w| rank[w]).min();
        match parent {
            Some(p) => tree_edges.push((i, p)),
            None if i + 1 < n => tree_edges.push((i, n - 1)),
            None => {}
        }
    }
    TreeDecomposition { host_n: n, bags, tree_edges }
}

fn bags_cover(g: &Graph, td: &TreeDecomposition) -> bool {
    g.edges().iter().all(|&(u, v)| td.bags.iter().any(|b| b.contains(&u) && b.contains(&v)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoCount {
    /// First map found in the search order.
    pub first: Option<Vec<Vertex>>,
    /// Number of distinct injective maps.
    pub count: u64,
}

/// Counts every injective map from `h` into `g` preserving edges (and
/// non-edges when `induced`). Pattern vertices are placed in BFS order so
/// that candidates come from the neighbourhood of an already placed image.
pub fn subiso_backtracking(g: &Graph, h: &Graph, induced: bool, budget: &OracleBudget) -> Result<IsoCount> {
    if g.n() > budget.max_iso_host {
        return Err(over("host", g.n(), budget.max_iso_host));
    }
    if h.n() > budget.max_iso_pattern {
        return Err(over("pattern", h.n(), budget.max_iso_pattern));
    }
    let gadj = adjacency_matrix(g);
    let hadj = adjacency_matrix(h);
    let mut order = Vec::new();
    let mut placed = vec![false; h.n()];
    for s in 0..h.n() {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        let mut head = order.len();
        order.push(s);
        while head < order.len() {
            let a = order[head];
            head += 1;
            for b in 0..h.n() {
                if hadj[a][b] && !placed[b] {
                    placed[b] = true;
                    order.push(b);
                }
            }
        }
    }
    let gdeg: Vec<usize> = gadj.iter().map(|r| r.iter().filter(|&&x| x).count()).collect();
    let hdeg: Vec<usize> = hadj.iter().map(|r| r.iter().filter(|&&x| x).count()).collect();
    let mut state = IsoSearch {
        gadj: &gadj,
        hadj: &hadj,
        gdeg: &gdeg,
        hdeg: &hdeg,
        order: &order,
        induced,
        map: vec![usize::MAX; h.n()],
        used: vec![false; g.n()],
        result: IsoCount { first: None, count: 0 },
        clock: Clock::new(budget.time_limit),
    };
    state.extend(0)?;
    if let Some(m) = &state.result.first {
        assert!(map_ok(&gadj, &hadj, m, induced), "oracle produced an invalid map");
    }
    Ok(state.result)
}

fn adjacency_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; g.n()]; g.n()];
    for &(u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

fn map_ok(gadj: &[Vec<bool>], hadj: &[Vec<bool>], map: &[Vertex], induced: bool) -> bool {
    let k = map.len();
    (0..k).all(|a| {
        (0..k).all(|b| {
            a == b || (map[a] != map[b] && (!hadj[a][b] || gadj[map[a]][map[b]]) && (!induced || hadj[a][b] || !gadj[map[a]][map[b]]))
        })
    })
}

struct IsoSearch<'a> {
    gadj: &'a [Vec<bool>],
    hadj: &'a [Vec<bool>],
    gdeg: &'a [usize],
    hdeg: &'a [usize],
    order: &'a [Vertex],
    induced: bool,
    map: Vec<Vertex>,
    used: Vec<bool>,
    result: IsoCount,
    clock: Clock,
}

impl IsoSearch<'_> {
    fn extend(&mut self, depth: usize) -> Result<()> {
        self.clock.tick()?;
        if depth == self.order.len() {
            self.result.count += 1;
            if self.result.first.is_none() {
                self.result.first = Some(self.map.clone());
            }
            return Ok(());
        }
        let a = self.order[depth];
        let anchor = self.order[..depth].iter().copied().find(|&b| self.hadj[a][b]);
        let candidates: Vec<Vertex> = match anchor {
            Some(b) => (0..self.gadj.len()).filter(|&x| self.gadj[self.map[b]][x]).collect(),
            None => (0..self.gadj.len()).collect(),
        };
        for x in candidates {
            if self.used[x] || self.gdeg[x] < self.hdeg[a] {
                continue;
            }
            let fits = self.order[..depth].iter().all(|&b| {
                let host = self.gadj[x][self.map[b]];
                (!self.hadj[a][b] || host) && (!self.induced || self.hadj[a][b] || !host)
            });
            if !fits {
                continue;
            }
            self.map[a] = x;
            self.used[x] = true;
            self.extend(depth + 1)?;
            self.used[x] = false;
            self.map[a] = usize::MAX;
        }
        Ok(())
    }
}
