//! Fixed-pattern (induced) subgraph isomorphism. A state holds one byte per
//! pattern vertex: unused, finished (its image was forgotten after all of
//! its pattern neighbours were placed), or the bag position of its image.

use super::{guard, offer, position, trace, Link, Table};
use crate::baker::{level_windows, SliceMode};
use crate::decomp::{make_nice, NiceDecomposition, NiceKind};
use crate::embed::EmbeddedGraph;
use crate::error::{Error, Result};
use crate::graph::{bfs_layering, diameter, Graph, Vertex};
use crate::planar_td::slice_td;

use rayon::prelude::*;

/// Largest pattern the state encoding supports.
pub const MAX_PATTERN: usize = 8;

const UNUSED: u8 = 0xFF;
const FINISHED: u8 = 0xFE;

fn byte(s: u64, a: usize) -> u8 {
    (s >> (8 * a)) as u8
}

fn set_byte(s: u64, a: usize, b: u8) -> u64 {
    (s & !(0xFF << (8 * a))) | ((b as u64) << (8 * a))
}

fn check_pattern(h: &Graph) -> Result<()> {
    if h.n() > MAX_PATTERN {
        return Err(Error::StateSpace(format!("pattern has {} vertices, at most {MAX_PATTERN} supported", h.n())));
    }
    if !h.is_simple() {
        return Err(Error::InvalidParameter("pattern must be a simple graph".into()));
    }
    Ok(())
}

/// Finds an injective map from `h` into `g` preserving edges (and
/// non-edges when `induced`). `map[a]` is the image of pattern vertex `a`.
pub fn dp_subiso(nd: &NiceDecomposition, g: &Graph, h: &Graph, induced: bool) -> Result<Option<Vec<Vertex>>> {
    check_pattern(h)?;
    nd.check_for(g)?;
    if nd.width() + 1 >= FINISHED as usize {
        return Err(Error::StateSpace(format!("bags of {} vertices are too large", nd.width() + 1)));
    }
    let k = h.n();
    let all_unused = (0..k).fold(0u64, |s, a| set_byte(s, a, UNUSED));
    let all_finished = (0..k).fold(0u64, |s, a| set_byte(s, a, FINISHED));
    let h_adj: Vec<Vec<bool>> = (0..k).map(|a| (0..k).map(|b| h.has_edge(a, b)).collect()).collect();

    let mut tables: Vec<Table<u64>> = Vec::with_capacity(nd.len());
    for (i, node) in nd.nodes.iter().enumerate() {
        let mut t = Table::default();
        match node.kind {
            NiceKind::Leaf => offer(&mut t, all_unused, 0, Link::Start),
            NiceKind::Introduce(v) => {
                let p = position(&node.bag, v);
                let host_adj: Vec<bool> = node.bag.iter().map(|&w| w != v && g.has_edge(v, w)).collect();
                for &s in tables[node.children[0]].keys() {
                    let mut shifted = s;
                    for a in 0..k {
                        let b = byte(s, a);
                        if b < FINISHED && b as usize >= p {
                            shifted = set_byte(shifted, a, b + 1);
                        }
                    }
                    offer(&mut t, shifted, 0, Link::One(s));
                    'pattern: for a in 0..k {
                        if byte(shifted, a) != UNUSED {
                            continue;
                        }
                        for b in 0..k {
                            let at = byte(shifted, b);
                            if b == a || at == UNUSED {
                                continue;
                            }
                            if at == FINISHED {
                                if h_adj[a][b] {
                                    continue 'pattern;
                                }
                                continue;
                            }
                            let host = host_adj[at as usize];
                            if (h_adj[a][b] && !host) || (induced && !h_adj[a][b] && host) {
                                continue 'pattern;
                            }
                        }
                        offer(&mut t, set_byte(shifted, a, p as u8), 0, Link::One(s));
                    }
                }
            }
            NiceKind::Forget(v) => {
                let child = node.children[0];
                let p = position(&nd.nodes[child].bag, v) as u8;
                'state: for &s in tables[child].keys() {
                    let mut next = s;
                    for a in 0..k {
                        let b = byte(s, a);
                        if b == p {
                            for c in 0..k {
                                if h_adj[a][c] && byte(s, c) == UNUSED {
                                    continue 'state;
                                }
                            }
                            next = set_byte(next, a, FINISHED);
                        } else if b < FINISHED && b > p {
                            next = set_byte(next, a, b - 1);
                        }
                    }
                    offer(&mut t, next, 0, Link::One(s));
                }
            }
            NiceKind::Join => {
                let key = |s: u64| (0..k).fold(s, |x, a| if byte(s, a) == FINISHED { set_byte(x, a, UNUSED) } else { x });
                let mut groups: rustc_hash::FxHashMap<u64, Vec<u64>> = Default::default();
                for &sb in tables[node.children[1]].keys() {
                    groups.entry(key(sb)).or_default().push(sb);
                }
                for &sa in tables[node.children[0]].keys() {
                    let Some(partners) = groups.get(&key(sa)) else { continue };
                    'pair: for &sb in partners {
                        let mut merged = sa;
                        for a in 0..k {
                            let (x, y) = (byte(sa, a), byte(sb, a));
                            if x == FINISHED && y == FINISHED {
                                continue 'pair;
                            }
                            if y == FINISHED {
                                merged = set_byte(merged, a, FINISHED);
                            }
                        }
                        for a in 0..k {
                            for b in 0..k {
                                if h_adj[a][b] && byte(sa, a) == FINISHED && byte(sb, b) == FINISHED {
                                    continue 'pair;
                                }
                            }
                        }
                        offer(&mut t, merged, 0, Link::Two(sa, sb));
                    }
                }
            }
        }
        guard(&t, i)?;
        tables.push(t);
    }
    if !tables[nd.root()].contains_key(&all_finished) {
        return Ok(None);
    }
    let mut map = vec![usize::MAX; k];
    trace(nd, &tables, all_finished, |node, _, children| {
        if let NiceKind::Forget(v) = nd.nodes[node].kind {
            let child = nd.nodes[node].children[0];
            let p = position(&nd.nodes[child].bag, v) as u8;
            for (a, slot) in map.iter_mut().enumerate() {
                if byte(children[0], a) == p {
                    *slot = v;
                }
            }
        }
    });
    debug_assert!(map.iter().all(|&x| x != usize::MAX));
    Ok(Some(map))
}

/// Outcome of the level-window search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubisoSearch {
    /// Image of each pattern vertex in the host, when an occurrence exists.
    pub witness: Option<Vec<Vertex>>,
    /// Levels per window, `diam(h) + 1`.
    pub window: usize,
    /// Number of offsets, `diam(h) + 2`.
    pub offsets: usize,
    /// Windows in the search plan, over all components and offsets.
    pub windows: usize,
}

/// Searches a planar host for a connected pattern. A connected pattern of
/// diameter `d` spans at most `d + 1` consecutive BFS levels; deleting the
/// levels of one residue class modulo `d + 2` leaves windows of `d + 1`
/// levels, and every run of `d + 1` levels is such a window for some offset.
/// Each window is decomposed by [`slice_td`] and searched by [`dp_subiso`].
/// The witness reported is the first in (component, offset, window) order.
pub fn subiso_driver(e: &EmbeddedGraph, h: &Graph, induced: bool) -> Result<SubisoSearch> {
    check_pattern(h)?;
    if !e.is_planar() {
        return Err(Error::NotPlanar(e.genus()));
    }
    if h.n() == 0 {
        return Ok(SubisoSearch { witness: Some(Vec::new()), window: 0, offsets: 0, windows: 0 });
    }
    let d = diameter(h).ok_or_else(|| Error::InvalidParameter("pattern must be connected".into()))?;
    let (window, k) = (d + 1, d + 2);
    let g = e.graph();
    let mut search = SubisoSearch { witness: None, window, offsets: k, windows: 0 };
    for comp in g.components() {
        if comp.len() < h.n() {
            continue;
        }
        let mut outside = vec![true; g.n()];
        for &v in &comp {
            outside[v] = false;
        }
        let removed: Vec<Vertex> = (0..g.n()).filter(|&v| outside[v]).collect();
        let (piece, back) = e.delete_vertices(&removed);
        let layering = bfs_layering(piece.graph(), 0)?;
        let mut plan = Vec::new();
        for o in 0..k {
            plan.extend(level_windows(layering.depth, k, o, SliceMode::Delete)?.into_iter().map(|w| (w.0, w.1)));
        }
        search.windows += plan.len();
        let hit = plan.par_iter().find_map_first(|&(lo, hi)| {
            let attempt = || -> Result<Option<Vec<Vertex>>> {
                let slice = slice_td(&piece, &layering, lo, hi)?;
                if slice.graph.n() < h.n() {
                    return Ok(None);
                }
                let nd = make_nice(&slice.td, &slice.graph)?;
                let found = dp_subiso(&nd, &slice.graph, h, induced)?;
                Ok(found.map(|map| map.iter().map(|&x| back[slice.back_map[x]]).collect()))
            };
            attempt().transpose()
        });
        if let Some(found) = hit {
            search.witness = Some(found?);
            return Ok(search);
        }
    }
    Ok(search)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn byte_packing() {
        let s = set_byte(u64::MAX, 3, 7);
        assert_eq!(byte(s, 3), 7);
        assert_eq!(byte(s, 2), 0xFF);
    }
}
