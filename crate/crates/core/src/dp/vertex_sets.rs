//! Maximum independent set and minimum vertex cover, one bit per bag vertex.

use super::{guard, insert_bit, offer, position, remove_bit, trace, Link, Table};
use crate::decomp::{NiceDecomposition, NiceKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Positions of `v`'s neighbours in `bag`, `v` itself excluded.
pub(super) fn neighbour_mask(g: &Graph, bag: &[Vertex], v: Vertex) -> u64 {
    let mut mask = 0;
    for (i, &w) in bag.iter().enumerate() {
        if w != v && g.has_edge(v, w) {
            mask |= 1 << i;
        }
    }
    mask
}

fn check_width(nd: &NiceDecomposition, g: &Graph, limit: usize) -> Result<()> {
    nd.check_for(g)?;
    if nd.width() + 1 > limit {
        return Err(Error::StateSpace(format!("bags of {} vertices exceed the limit of {limit}", nd.width() + 1)));
    }
    Ok(())
}

/// Shared driver. `allow(v, chosen, neighbours, take)` decides whether the
/// introduced vertex may be taken (or left out) given the bag positions of
/// its neighbours and which of them are chosen; `gain` is the value of
/// taking a vertex, negative when minimizing.
fn subset_dp(
    nd: &NiceDecomposition,
    g: &Graph,
    allow: impl Fn(Vertex, u64, u64, bool) -> bool,
    gain: i64,
) -> Result<(i64, Vec<Vertex>)> {
    check_width(nd, g, 63)?;
    let mut tables: Vec<Table<u64>> = Vec::with_capacity(nd.len());
    for (i, node) in nd.nodes.iter().enumerate() {
        let mut t = Table::default();
        match node.kind {
            NiceKind::Leaf => offer(&mut t, 0, 0, Link::Start),
            NiceKind::Introduce(v) => {
                let p = position(&node.bag, v);
                let nbrs = neighbour_mask(g, &node.bag, v);
                for (&s, e) in &tables[node.children[0]] {
                    for take in [false, true] {
                        let next = insert_bit(s, p, take);
                        if allow(v, next & nbrs, nbrs, take) {
                            offer(&mut t, next, e.value + if take { gain } else { 0 }, Link::One(s));
                        }
                    }
                }
            }
            NiceKind::Forget(v) => {
                let child = node.children[0];
                let p = position(&nd.nodes[child].bag, v);
                for (&s, e) in &tables[child] {
                    offer(&mut t, remove_bit(s, p), e.value, Link::One(s));
                }
            }
            NiceKind::Join => {
                let (a, b) = (&tables[node.children[0]], &tables[node.children[1]]);
                for (&s, ea) in a {
                    if let Some(eb) = b.get(&s) {
                        let shared = s.count_ones() as i64 * gain;
                        offer(&mut t, s, ea.value + eb.value - shared, Link::Two(s, s));
                    }
                }
            }
        }
        guard(&t, i)?;
        tables.push(t);
    }
    let root = tables[nd.root()].get(&0).map(|e| e.value);
    let Some(value) = root else {
        return Err(Error::InvalidDecomposition("no feasible state at the root".into()));
    };
    let mut chosen = Vec::new();
    trace(nd, &tables, 0, |node, _, children| {
        if let NiceKind::Forget(v) = nd.nodes[node].kind {
            let child = nd.nodes[node].children[0];
            let p = position(&nd.nodes[child].bag, v);
            if children[0] >> p & 1 == 1 {
                chosen.push(v);
            }
        }
    });
    chosen.sort_unstable();
    Ok((value, chosen))
}

/// Maximum independent set. A vertex with a loop is never taken.
pub fn dp_mis(nd: &NiceDecomposition, g: &Graph) -> Result<Vec<Vertex>> {
    let allow = |v: Vertex, chosen_nbrs: u64, _: u64, take: bool| !take || (chosen_nbrs == 0 && !g.has_edge(v, v));
    subset_dp(nd, g, allow, 1).map(|r| r.1)
}

/// Minimum vertex cover. A vertex with a loop is always taken.
pub fn dp_vc(nd: &NiceDecomposition, g: &Graph) -> Result<Vec<Vertex>> {
    let allow = |v: Vertex, chosen_nbrs: u64, nbrs: u64, take: bool| take || (chosen_nbrs == nbrs && !g.has_edge(v, v));
    subset_dp(nd, g, allow, -1).map(|r| r.1)
}
