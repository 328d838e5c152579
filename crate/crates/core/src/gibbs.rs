//! Breadth-first baseline numbering.
//!
//! Three steps: find two distant, low-degree ends of the mesh; partition the
//! mesh into breadth-first levels from one end; number level by level. The
//! result is the reference every evolutionary run is measured against.

use std::collections::VecDeque;

use crate::bandwidth::{bandwidth, Bandwidth};
use crate::error::{Error, Result};
use crate::mesh::MeshGraph;
use crate::numbering::Numbering;

/// Breadth-first distance partition rooted at one node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelStructure {
    pub root: usize,
    /// `levels[d]` holds the nodes at distance `d`, sorted ascending.
    pub levels: Vec<Vec<usize>>,
}

impl LevelStructure {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn width(&self) -> usize {
        self.levels.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn deepest(&self) -> &[usize] {
        self.levels.last().map(Vec::as_slice).unwrap_or(&[])
    }
}

fn require_connected(mesh: &MeshGraph) -> Result<()> {
    if mesh.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

pub fn level_structure(mesh: &MeshGraph, root: usize) -> Result<LevelStructure> {
    require_connected(mesh)?;
    let n = mesh.node_count();
    let mut dist = vec![usize::MAX; n];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    let mut levels: Vec<Vec<usize>> = vec![vec![root]];
    while let Some(node) = queue.pop_front() {
        let d = dist[node] + 1;
        for &next in mesh.neighbors(node) {
            if dist[next] == usize::MAX {
                dist[next] = d;
                if levels.len() == d {
                    levels.push(Vec::new());
                }
                levels[d].push(next);
                queue.push_back(next);
            }
        }
    }
    for level in &mut levels {
        level.sort_unstable();
    }
    Ok(LevelStructure { root, levels })
}

/// Lowest-degree node of `candidates`, ties broken by lowest index.
fn min_degree(mesh: &MeshGraph, candidates: &[usize]) -> usize {
    *candidates
        .iter()
        .min_by_key(|&&v| (mesh.degree(v), v))
        .expect("non-empty candidate set")
}

/// Two far-apart low-degree nodes.
///
/// Starts from the global minimum-degree node and repeatedly re-roots at the
/// minimum-degree node of the deepest level while that strictly increases
/// the depth. Depth is bounded by N, so this terminates.
pub fn pseudo_peripheral_ends(mesh: &MeshGraph) -> Result<(usize, usize)> {
    require_connected(mesh)?;
    let all: Vec<usize> = (0..mesh.node_count()).collect();
    let mut root = min_degree(mesh, &all);
    let mut structure = level_structure(mesh, root)?;
    loop {
        let candidate = min_degree(mesh, structure.deepest());
        let candidate_structure = level_structure(mesh, candidate)?;
        if candidate_structure.depth() > structure.depth() {
            root = candidate;
            structure = candidate_structure;
        } else {
            return Ok((root, candidate));
        }
    }
}

/// Numbers nodes level by level from `start`; within a level, by ascending
/// degree, then index.
pub fn breadth_first_numbering(mesh: &MeshGraph, start: usize) -> Result<Numbering> {
    let structure = level_structure(mesh, start)?;
    let mut order = Vec::with_capacity(mesh.node_count());
    for level in &structure.levels {
        let mut level = level.clone();
        level.sort_by_key(|&v| (mesh.degree(v), v));
        order.extend(level);
    }
    Numbering::from_order(&order)
}

/// Best of four candidates: breadth-first from each end, and the reversal
/// of each. Ties go to the earliest candidate.
pub fn gibbs_number(mesh: &MeshGraph) -> Result<Numbering> {
    let (start, end) = pseudo_peripheral_ends(mesh)?;
    let from_start = breadth_first_numbering(mesh, start)?;
    let from_end = breadth_first_numbering(mesh, end)?;
    let candidates = [
        from_start.reversed(),
        from_end.reversed(),
        from_start,
        from_end,
    ];
    let mut best: Option<(Bandwidth, usize)> = None;
    for (i, candidate) in candidates.iter().enumerate() {
        let b = bandwidth(mesh, candidate);
        if best.is_none_or(|(bb, _)| b < bb) {
            best = Some((b, i));
        }
    }
    let (_, index) = best.expect("four candidates");
    Ok(candidates[index].clone())
}
