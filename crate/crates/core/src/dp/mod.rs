//! Exact dynamic programs over nice tree decompositions.
//!
//! Tables map a bag state to the best value seen for it and a link to the
//! child states it came from. Ties are broken toward the smaller link so the
//! witness does not depend on hash iteration order.

mod domination;
mod subiso;
mod vertex_sets;

use std::hash::Hash;

use rustc_hash::FxHashMap;

pub use domination::dp_ds;
pub use subiso::{dp_subiso, subiso_driver, SubisoSearch, MAX_PATTERN};
pub use vertex_sets::{dp_mis, dp_vc};

use crate::decomp::NiceDecomposition;
use crate::error::{Error, Result};
use crate::graph::Vertex;

/// Largest table a single node may hold before the solver gives up.
pub const MAX_STATES: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Link<S> {
    Start,
    One(S),
    Two(S, S),
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Entry<S> {
    pub value: i64,
    pub from: Link<S>,
}

pub(crate) type Table<S> = FxHashMap<S, Entry<S>>;

/// Keeps the larger value; equal values keep the smaller link.
pub(crate) fn offer<S: Copy + Eq + Hash + Ord>(t: &mut Table<S>, state: S, value: i64, from: Link<S>) {
    match t.get_mut(&state) {
        None => {
            t.insert(state, Entry { value, from });
        }
        Some(old) => {
            if value > old.value || (value == old.value && from < old.from) {
                *old = Entry { value, from };
            }
        }
    }
}

pub(crate) fn guard<S>(t: &Table<S>, node: usize) -> Result<()> {
    if t.len() > MAX_STATES {
        return Err(Error::StateSpace(format!("node {node} holds more than {MAX_STATES} states")));
    }
    Ok(())
}

pub(crate) fn position(bag: &[Vertex], v: Vertex) -> usize {
    bag.binary_search(&v).expect("vertex is in the bag")
}

/// Walks the links down from `state` at the root and calls `visit` with
/// every node, its state and the states chosen for its children.
pub(crate) fn trace<S: Copy + Eq + Hash>(
    nd: &NiceDecomposition,
    tables: &[Table<S>],
    state: S,
    mut visit: impl FnMut(usize, S, &[S]),
) {
    let mut stack = vec![(nd.root(), state)];
    while let Some((node, s)) = stack.pop() {
        let entry = tables[node][&s];
        let children = &nd.nodes[node].children;
        let picked: Vec<S> = match entry.from {
            Link::Start => Vec::new(),
            Link::One(a) => vec![a],
            Link::Two(a, b) => vec![a, b],
        };
        visit(node, s, &picked);
        for (&c, &cs) in children.iter().zip(&picked) {
            stack.push((c, cs));
        }
    }
}

/// Inserts bit `b` at position `p`, shifting higher bits up.
pub(crate) fn insert_bit(s: u64, p: usize, b: bool) -> u64 {
    let low = s & ((1u64 << p) - 1);
    let high = (s >> p) << (p + 1);
    low | high | ((b as u64) << p)
}

/// Removes the bit at position `p`, shifting higher bits down.
pub(crate) fn remove_bit(s: u64, p: usize) -> u64 {
    let low = s & ((1u64 << p) - 1);
    let high = if p + 1 >= 64 { 0 } else { (s >> (p + 1)) << p };
    low | high
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::{dominates, is_independent, is_vertex_cover, verify_embedding_map};
    use crate::decomp::{make_nice, min_degree_decomposition};
    use crate::generators::{cycle, grid, path, star, wall};
    use crate::graph::Graph;

    fn nice(g: &Graph) -> NiceDecomposition {
        make_nice(&min_degree_decomposition(g), g).unwrap()
    }

    #[test]
    fn small_optima() {
        let p4 = path(4);
        let c6 = cycle(6).unwrap();
        let g33 = grid(3, 3).unwrap();
        let tri = Graph::simple(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        for (g, mis, vc) in [(p4.graph(), 2, 2), (c6.graph(), 3, 3), (g33.graph(), 5, 4), (&tri, 1, 2)] {
            let nd = nice(g);
            let i = dp_mis(&nd, g).unwrap();
            let c = dp_vc(&nd, g).unwrap();
            assert!(is_independent(g, &i));
            assert!(is_vertex_cover(g, &c));
            assert_eq!((i.len(), c.len()), (mis, vc));
        }
    }

    #[test]
    fn domination() {
        let s = star(5);
        let all: Vec<_> = (0..6).collect();
        assert_eq!(dp_ds(&nice(s.graph()), s.graph(), &all).unwrap(), vec![0]);
        let c6 = cycle(6).unwrap();
        let d = dp_ds(&nice(c6.graph()), c6.graph(), &all).unwrap();
        assert_eq!(d.len(), 2);
        assert!(dominates(c6.graph(), &d, &all));
        assert!(dp_ds(&nice(c6.graph()), c6.graph(), &[]).unwrap().is_empty());
        let p7 = path(7);
        assert_eq!(dp_ds(&nice(p7.graph()), p7.graph(), &(0..7).collect::<Vec<_>>()).unwrap().len(), 3);
        assert_eq!(dp_ds(&nice(p7.graph()), p7.graph(), &[0, 6]).unwrap().len(), 2);
    }

    #[test]
    fn pattern_search() {
        let tri = Graph::simple(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let p3 = Graph::simple(3, &[(0, 1), (1, 2)]).unwrap();
        let nd = nice(&tri);
        let m = dp_subiso(&nd, &tri, &p3, false).unwrap().unwrap();
        assert!(verify_embedding_map(&tri, &p3, &m, false));
        assert_eq!(dp_subiso(&nd, &tri, &p3, true).unwrap(), None);
        let w = wall(2).unwrap();
        let c6 = cycle(6).unwrap();
        let m = dp_subiso(&nice(w.embedded.graph()), w.embedded.graph(), c6.graph(), true).unwrap().unwrap();
        assert!(verify_embedding_map(w.embedded.graph(), c6.graph(), &m, true));
        let g55 = grid(5, 5).unwrap();
        let k4 = crate::generators::complete(4);
        assert_eq!(dp_subiso(&nice(g55.graph()), g55.graph(), &k4, false).unwrap(), None);
        let big = crate::generators::complete(9);
        assert!(matches!(dp_subiso(&nd, &tri, &big, false), Err(Error::StateSpace(_))));
    }

    #[test]
    fn driver() {
        let g44 = grid(4, 4).unwrap();
        let c4 = cycle(4).unwrap();
        let found = subiso_driver(&g44, c4.graph(), false).unwrap();
        assert_eq!((found.window, found.offsets), (3, 4));
        let m = found.witness.unwrap();
        assert!(verify_embedding_map(g44.graph(), c4.graph(), &m, false));
        let p5 = path(5);
        assert_eq!(subiso_driver(&path(3), p5.graph(), false).unwrap().witness, None);
        let w3 = wall(3).unwrap();
        let c6 = cycle(6).unwrap();
        let m = subiso_driver(&w3.embedded, c6.graph(), true).unwrap().witness.unwrap();
        assert!(verify_embedding_map(w3.embedded.graph(), c6.graph(), &m, true));
        let split = Graph::empty(2);
        assert!(subiso_driver(&g44, &split, false).is_err());
    }

    #[test]
    fn rejects_invalid_decomposition() {
        let p4 = path(4);
        let other = path(5);
        let nd = nice(other.graph());
        assert!(matches!(dp_mis(&nd, p4.graph()), Err(Error::InvalidDecomposition(_))));
    }

    #[test]
    fn bit_shuffles() {
        assert_eq!(insert_bit(0b101, 1, true), 0b1011);
        assert_eq!(insert_bit(0b101, 0, false), 0b1010);
        assert_eq!(remove_bit(0b1011, 1), 0b101);
        assert_eq!(remove_bit(1 << 62, 62), 0);
        for s in 0..64u64 {
            for p in 0..6 {
                assert_eq!(remove_bit(insert_bit(s, p, true), p), s);
            }
        }
    }
}
