//! Level-slicing approximation schemes on planar embedded graphs. Levels of
//! a BFS layering are cut into windows; each window is decomposed with
//! [`slice_td`] and solved exactly, and the best of the `k` offsets wins.

use rayon::prelude::*;

use crate::decomp::make_nice;
use crate::dp::{dp_ds, dp_mis, dp_vc};
use crate::embed::EmbeddedGraph;
use crate::error::{Error, Result};
use crate::graph::{bfs_layering, Graph, Layering, Vertex};
use crate::oracles::Problem;
use crate::planar_td::slice_td;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SliceMode {
    /// Levels congruent to the offset are dropped; windows are the runs in between.
    Delete,
    /// Windows of `k + 1` levels; neighbouring windows share a level.
    Duplicate,
    /// `k`-level cores that partition the levels, each widened by one level per side.
    Dominating,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slice {
    pub lo: usize,
    pub hi: usize,
    /// Levels that must be handled by this slice (all of `lo..=hi` except
    /// in dominating mode).
    pub core: (usize, usize),
    pub graph: Graph,
    /// Slice vertex -> host vertex, sorted.
    pub back_map: Vec<Vertex>,
    /// Slice vertices on core levels.
    pub core_vertices: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceFamily {
    pub k: usize,
    pub offset: usize,
    pub mode: SliceMode,
    pub slices: Vec<Slice>,
}

/// Level windows `(lo, hi, core_lo, core_hi)` for one offset.
pub fn level_windows(depth: usize, k: usize, offset: usize, mode: SliceMode) -> Result<Vec<(usize, usize, usize, usize)>> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    if offset >= k {
        return Err(Error::InvalidParameter(format!("offset {offset} is not below k = {k}")));
    }
    let mut out = Vec::new();
    match mode {
        SliceMode::Delete => {
            let mut start = None;
            for l in 0..=depth {
                if l % k == offset {
                    if let Some(s) = start.take() {
                        out.push((s, l - 1, s, l - 1));
                    }
                } else if start.is_none() {
                    start = Some(l);
                }
            }
            if let Some(s) = start {
                out.push((s, depth, s, depth));
            }
        }
        SliceMode::Duplicate => {
            let mut lo = offset as isize - k as isize;
            while lo <= depth as isize {
                let hi = (lo + k as isize).min(depth as isize);
                if hi >= 0 {
                    let a = lo.max(0) as usize;
                    out.push((a, hi as usize, a, hi as usize));
                }
                lo += k as isize;
            }
            let all = out.clone();
            out.retain(|w| !all.iter().any(|x| x != w && x.0 <= w.0 && w.1 <= x.1));
            out.dedup();
        }
        SliceMode::Dominating => {
            let mut lo = offset as isize - k as isize;
            while lo <= depth as isize {
                let core_hi = lo + k as isize - 1;
                if core_hi >= 0 {
                    let core_lo = lo.max(0) as usize;
                    let core_hi = (core_hi as usize).min(depth);
                    out.push((core_lo.saturating_sub(1), (core_hi + 1).min(depth), core_lo, core_hi));
                }
                lo += k as isize;
            }
        }
    }
    Ok(out)
}

/// Slices of `g` for one offset. The graph is the one `layering` was built on.
pub fn build_slices(g: &Graph, layering: &Layering, k: usize, offset: usize, mode: SliceMode) -> Result<SliceFamily> {
    let windows = level_windows(layering.depth, k, offset, mode)?;
    let slices = windows
        .into_iter()
        .map(|(lo, hi, clo, chi)| {
            let vertices: Vec<Vertex> =
                (0..g.n()).filter(|&v| layering.level[v].is_some_and(|l| lo <= l && l <= hi)).collect();
            let (graph, back_map) = g.induced_subgraph(&vertices);
            let core_vertices = (0..back_map.len())
                .filter(|&i| layering.level[back_map[i]].is_some_and(|l| clo <= l && l <= chi))
                .collect();
            Slice { lo, hi, core: (clo, chi), graph, back_map, core_vertices }
        })
        .collect();
    Ok(SliceFamily { k, offset, mode, slices })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtasOutcome {
    pub solution: Vec<Vertex>,
    pub value: usize,
    /// Offset used in each connected component, in order of lowest vertex.
    pub offsets_chosen: Vec<usize>,
    /// Solution size when every component uses the same offset.
    pub per_offset_values: Vec<usize>,
    /// Widest slice decomposition met.
    pub max_slice_width: usize,
}

fn mode_for(problem: Problem) -> SliceMode {
    match problem {
        Problem::Mis => SliceMode::Delete,
        Problem::Vc => SliceMode::Duplicate,
        Problem::Ds => SliceMode::Dominating,
    }
}

/// Solves every slice of one offset exactly and returns the union together
/// with the widest decomposition used.
fn solve_offset(e: &EmbeddedGraph, layering: &Layering, problem: Problem, k: usize, offset: usize) -> Result<(Vec<Vertex>, usize)> {
    let g = e.graph();
    let family = build_slices(g, layering, k, offset, mode_for(problem))?;
    let mut chosen = vec![false; g.n()];
    let mut width = 0;
    for slice in &family.slices {
        let st = slice_td(e, layering, slice.lo, slice.hi)?;
        debug_assert_eq!(st.back_map, slice.back_map);
        width = width.max(st.td.width());
        let nd = make_nice(&st.td, &st.graph)?;
        let local = match problem {
            Problem::Mis => dp_mis(&nd, &st.graph)?,
            Problem::Vc => dp_vc(&nd, &st.graph)?,
            Problem::Ds => dp_ds(&nd, &st.graph, &slice.core_vertices)?,
        };
        for v in local {
            chosen[st.back_map[v]] = true;
        }
    }
    Ok(((0..g.n()).filter(|&v| chosen[v]).collect(), width))
}

fn better(problem: Problem, a: usize, b: usize) -> bool {
    match problem {
        Problem::Mis => a > b,
        Problem::Vc | Problem::Ds => a < b,
    }
}

/// Runs the scheme for `problem` on each component and merges the results.
/// Offsets are evaluated in parallel; ties go to the smaller offset.
pub fn ptas(e: &EmbeddedGraph, problem: Problem, k: usize) -> Result<PtasOutcome> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    if !e.is_planar() {
        return Err(Error::NotPlanar(e.genus()));
    }
    let g = e.graph();
    let mut out = PtasOutcome {
        solution: Vec::new(),
        value: 0,
        offsets_chosen: Vec::new(),
        per_offset_values: vec![0; k],
        max_slice_width: 0,
    };
    for comp in g.components() {
        let mut inside = vec![false; g.n()];
        for &v in &comp {
            inside[v] = true;
        }
        let removed: Vec<Vertex> = (0..g.n()).filter(|&v| !inside[v]).collect();
        let (piece, back) = e.delete_vertices(&removed);
        let layering = bfs_layering(piece.graph(), 0)?;
        let results: Vec<Result<(Vec<Vertex>, usize)>> =
            (0..k).into_par_iter().map(|o| solve_offset(&piece, &layering, problem, k, o)).collect();
        let mut best: Option<(usize, Vec<Vertex>)> = None;
        for (o, r) in results.into_iter().enumerate() {
            let (sol, width) = r?;
            out.per_offset_values[o] += sol.len();
            out.max_slice_width = out.max_slice_width.max(width);
            if best.as_ref().is_none_or(|(_, b)| better(problem, sol.len(), b.len())) {
                best = Some((o, sol));
            }
        }
        let (o, sol) = best.expect("k >= 2 offsets");
        out.offsets_chosen.push(o);
        out.solution.extend(sol.into_iter().map(|v| back[v]));
    }
    out.solution.sort_unstable();
    out.value = out.solution.len();
    Ok(out)
}

/// Independent set of size at least `OPT - floor(OPT / k)`.
pub fn ptas_mis(e: &EmbeddedGraph, k: usize) -> Result<PtasOutcome> {
    ptas(e, Problem::Mis, k)
}

/// Vertex cover of size at most `OPT + floor(OPT / k)`.
pub fn ptas_vc(e: &EmbeddedGraph, k: usize) -> Result<PtasOutcome> {
    ptas(e, Problem::Vc, k)
}

/// Dominating set of size at most `OPT + 2 ceil(OPT / k)`.
pub fn ptas_ds(e: &EmbeddedGraph, k: usize) -> Result<PtasOutcome> {
    ptas(e, Problem::Ds, k)
}
