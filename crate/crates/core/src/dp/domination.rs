//! Minimum dominating set with a required subset. Each bag vertex is chosen,
//! dominated, or not yet dominated; the state packs the chosen mask in the
//! low half and the dominated mask in the high half.

use super::vertex_sets::neighbour_mask;
use super::{guard, insert_bit, offer, position, remove_bit, trace, Link, Table};
use crate::decomp::{NiceDecomposition, NiceKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

const HALF: u32 = 32;
const LOW: u64 = (1 << HALF) - 1;

fn pack(chosen: u64, dominated: u64) -> u64 {
    chosen | (dominated << HALF)
}

fn unpack(s: u64) -> (u64, u64) {
    (s & LOW, s >> HALF)
}

/// Smallest set `S` such that every vertex of `required` is in `S` or has a
/// neighbour in `S`.
pub fn dp_ds(nd: &NiceDecomposition, g: &Graph, required: &[Vertex]) -> Result<Vec<Vertex>> {
    nd.check_for(g)?;
    if nd.width() + 1 > HALF as usize {
        return Err(Error::StateSpace(format!("bags of {} vertices exceed the limit of {HALF}", nd.width() + 1)));
    }
    let mut must = vec![false; g.n()];
    for &r in required {
        g.check_vertex(r)?;
        must[r] = true;
    }
    let mut tables: Vec<Table<u64>> = Vec::with_capacity(nd.len());
    for (i, node) in nd.nodes.iter().enumerate() {
        let mut t = Table::default();
        match node.kind {
            NiceKind::Leaf => offer(&mut t, 0, 0, Link::Start),
            NiceKind::Introduce(v) => {
                let p = position(&node.bag, v);
                let nbrs = neighbour_mask(g, &node.bag, v);
                for (&s, e) in &tables[node.children[0]] {
                    let (c, d) = unpack(s);
                    let c_out = insert_bit(c, p, false);
                    let d_out = insert_bit(d, p, c_out & nbrs != 0);
                    offer(&mut t, pack(c_out, d_out), e.value, Link::One(s));
                    let c_in = insert_bit(c, p, true);
                    let d_in = (insert_bit(d, p, false) | nbrs) & !c_in;
                    offer(&mut t, pack(c_in, d_in), e.value - 1, Link::One(s));
                }
            }
            NiceKind::Forget(v) => {
                let child = node.children[0];
                let p = position(&nd.nodes[child].bag, v);
                for (&s, e) in &tables[child] {
                    let (c, d) = unpack(s);
                    if (c | d) >> p & 1 == 1 || !must[v] {
                        offer(&mut t, pack(remove_bit(c, p), remove_bit(d, p)), e.value, Link::One(s));
                    }
                }
            }
            NiceKind::Join => {
                let mut by_chosen: rustc_hash::FxHashMap<u64, Vec<(u64, i64)>> = Default::default();
                for (&s, e) in &tables[node.children[1]] {
                    by_chosen.entry(s & LOW).or_default().push((s, e.value));
                }
                for (&sa, ea) in &tables[node.children[0]] {
                    let (c, da) = unpack(sa);
                    let Some(partners) = by_chosen.get(&c) else { continue };
                    for &(sb, vb) in partners {
                        let db = unpack(sb).1;
                        let value = ea.value + vb + c.count_ones() as i64;
                        offer(&mut t, pack(c, da | db), value, Link::Two(sa, sb));
                    }
                }
            }
        }
        guard(&t, i)?;
        tables.push(t);
    }
    if !tables[nd.root()].contains_key(&0) {
        return Err(Error::InvalidDecomposition("no feasible state at the root".into()));
    }
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
    Ok(chosen)
}
