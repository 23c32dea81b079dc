mod common;

use proptest::prelude::*;
use shallow::baker::{build_slices, SliceMode};
use shallow::decomp::{min_degree_decomposition, TreeDecomposition};
use shallow::format::{parse_decomposition, parse_graph, write_decomposition, write_embedded};
use shallow::generators::{grid, random_planar_triangulation};
use shallow::{
    bfs_layering, dp_ds, dp_mis, dp_vc, make_nice, oracle_solve, planar_bfs_td, slice_td, validate, EmbeddedGraph,
    Graph, OracleBudget, Problem,
};

/// Subtree connectivity checked from scratch: for each vertex, BFS over the
/// tree restricted to bags holding it.
fn independent_validity(td: &TreeDecomposition, g: &Graph) -> bool {
    let k = td.bags.len();
    if k == 0 || td.tree_edges.len() + 1 != k {
        return false;
    }
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in &td.tree_edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let reach = |allowed: &dyn Fn(usize) -> bool, start: usize| {
        let mut seen = vec![false; k];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] && allowed(y) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    };
    if reach(&|_| true, 0).iter().any(|s| !s) {
        return false;
    }
    for v in 0..g.n() {
        let holding: Vec<usize> = (0..k).filter(|&i| td.bags[i].contains(&v)).collect();
        let Some(&first) = holding.first() else { return false };
        let seen = reach(&|i| td.bags[i].contains(&v), first);
        if holding.iter().any(|&i| !seen[i]) {
            return false;
        }
    }
    g.edges().iter().all(|&(u, v)| td.bags.iter().any(|b| b.contains(&u) && b.contains(&v)))
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (1usize..9).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..(2 * n)).prop_map(move |pairs| {
            let mut edges: Vec<(usize, usize)> =
                pairs.into_iter().filter(|(u, v)| u != v).map(|(u, v)| (u.min(v), u.max(v))).collect();
            edges.sort_unstable();
            edges.dedup();
            Graph::simple(n, &edges).unwrap()
        })
    })
}

fn random_td(n: usize) -> impl Strategy<Value = TreeDecomposition> {
    (1usize..6).prop_flat_map(move |k| {
        (prop::collection::vec(prop::collection::vec(0..n, 0..n + 1), k), prop::collection::vec(any::<usize>(), k))
            .prop_map(move |(bags, parents)| {
                let edges = (1..k).map(|i| (i, parents[i] % i)).collect();
                TreeDecomposition::new(n, bags, edges)
            })
    })
}

fn triangulation() -> impl Strategy<Value = EmbeddedGraph> {
    (4usize..60, any::<u64>()).prop_map(|(n, seed)| random_planar_triangulation(n, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn validator_matches_independent_check((g, td) in small_graph().prop_flat_map(|g| { let n = g.n(); (Just(g), random_td(n)) })) {
        prop_assert_eq!(validate(&td, &g).is_valid(), independent_validity(&td, &g));
    }

    #[test]
    fn heuristic_and_nice_forms_are_valid(g in small_graph()) {
        let td = min_degree_decomposition(&g);
        prop_assert!(independent_validity(&td, &g));
        let nd = make_nice(&td, &g).unwrap();
        prop_assert!(nd.check_for(&g).is_ok());
        prop_assert_eq!(nd.width(), td.width());
    }

    #[test]
    fn dynamic_programs_match_oracle(g in small_graph()) {
        let nd = make_nice(&min_degree_decomposition(&g), &g).unwrap();
        let b = OracleBudget::default();
        let all: Vec<usize> = (0..g.n()).collect();
        prop_assert_eq!(dp_mis(&nd, &g).unwrap().len(), oracle_solve(Problem::Mis, &g, &b).unwrap().value);
        prop_assert_eq!(dp_vc(&nd, &g).unwrap().len(), oracle_solve(Problem::Vc, &g, &b).unwrap().value);
        prop_assert_eq!(dp_ds(&nd, &g, &all).unwrap().len(), oracle_solve(Problem::Ds, &g, &b).unwrap().value);
    }

    #[test]
    fn planar_decompositions_of_triangulations(e in triangulation(), pick in any::<usize>()) {
        let root = pick % e.graph().n();
        let pd = planar_bfs_td(&e, root).unwrap();
        let depth = bfs_layering(e.graph(), root).unwrap().depth;
        let r = validate(&pd.td, e.graph());
        prop_assert!(r.is_valid());
        prop_assert!(r.width <= 3 * depth);
    }

    #[test]
    fn planar_decompositions_after_deletion(e in triangulation(), cut in prop::collection::vec(any::<usize>(), 0..10)) {
        let n = e.graph().n();
        let removed: Vec<usize> = cut.iter().map(|x| x % n).collect();
        let (sub, _) = e.delete_vertices(&removed);
        let comps = sub.graph().components();
        prop_assume!(!comps.is_empty());
        let biggest = comps.iter().max_by_key(|c| c.len()).unwrap();
        let mut outside: Vec<usize> = (0..sub.graph().n()).collect();
        outside.retain(|v| biggest.binary_search(v).is_err());
        let (piece, _) = sub.delete_vertices(&outside);
        prop_assert!(piece.is_planar());
        let pd = planar_bfs_td(&piece, 0).unwrap();
        let depth = bfs_layering(piece.graph(), 0).unwrap().depth;
        let r = validate(&pd.td, piece.graph());
        prop_assert!(r.is_valid());
        prop_assert!(r.width <= 3 * depth.max(1));
    }

    #[test]
    fn slices_are_valid(e in triangulation(), a in 0usize..8, b in 0usize..8) {
        let layering = bfs_layering(e.graph(), 0).unwrap();
        let lo = a.min(b).min(layering.depth);
        let hi = a.max(b).min(layering.depth);
        let s = slice_td(&e, &layering, lo, hi).unwrap();
        let r = validate(&s.td, &s.graph);
        prop_assert!(r.is_valid());
        prop_assert!(r.width <= 3 * (hi - lo + 2));
    }

    #[test]
    fn contracting_a_ball_stays_planar(e in triangulation(), pick in any::<usize>(), radius in 0usize..3) {
        let n = e.graph().n();
        let dist = e.graph().distances_from(pick % n);
        let ball: Vec<usize> = (0..n).filter(|&v| dist[v].is_some_and(|d| d <= radius)).collect();
        let c = e.contract_connected_set(&ball).unwrap();
        prop_assert_eq!(c.embedded.genus(), 0);
        prop_assert_eq!(c.embedded.graph().n(), n - ball.len() + 1);
    }

    #[test]
    fn slice_families(rows in 1usize..7, cols in 1usize..7, k in 2usize..6, o in 0usize..6) {
        let offset = o % k;
        let e = grid(rows, cols).unwrap();
        let g = e.graph();
        let layering = bfs_layering(g, 0).unwrap();
        let del = build_slices(g, &layering, k, offset, SliceMode::Delete).unwrap();
        let mut count = vec![0; g.n()];
        for s in &del.slices {
            for &v in &s.back_map {
                count[v] += 1;
            }
        }
        for v in 0..g.n() {
            let deleted = layering.level[v].unwrap() % k == offset;
            prop_assert_eq!(count[v], usize::from(!deleted));
        }
        let dup = build_slices(g, &layering, k, offset, SliceMode::Duplicate).unwrap();
        for &(u, v) in g.edges() {
            prop_assert!(dup.slices.iter().any(|s| s.back_map.contains(&u) && s.back_map.contains(&v)));
        }
        let dom = build_slices(g, &layering, k, offset, SliceMode::Dominating).unwrap();
        let mut core = vec![0; g.n()];
        for s in &dom.slices {
            for &i in &s.core_vertices {
                core[s.back_map[i]] += 1;
                for w in g.neighbors(s.back_map[i]) {
                    prop_assert!(s.back_map.contains(&w));
                }
            }
        }
        prop_assert!(core.iter().all(|&c| c == 1));
    }

    #[test]
    fn text_round_trips(e in triangulation(), pick in any::<usize>()) {
        let back = parse_graph(&write_embedded(&e)).unwrap().embedded().unwrap().unwrap();
        prop_assert_eq!(&back, &e);
        let td = planar_bfs_td(&e, pick % e.graph().n()).unwrap().td;
        prop_assert_eq!(parse_decomposition(&write_decomposition(&td)).unwrap(), td);
    }
}
