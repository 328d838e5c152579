//! Crossover operators. Each produces exactly one offspring.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::mesh::MeshGraph;
use crate::numbering::Numbering;
use crate::operators::genome::TranspositionGenome;
use crate::rng::RandomStream;

/// Config tokens: `none`, `transposition`, `edge`, `breadth_first`,
/// `difference`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Crossover {
    None,
    Transposition,
    Edge,
    BreadthFirst,
    Difference,
}

impl FromStr for Crossover {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Crossover::None),
            "transposition" => Ok(Crossover::Transposition),
            "edge" => Ok(Crossover::Edge),
            "breadth_first" => Ok(Crossover::BreadthFirst),
            "difference" => Ok(Crossover::Difference),
            other => Err(Error::Config(format!("unknown crossover `{other}`"))),
        }
    }
}

impl fmt::Display for Crossover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Crossover::None => "none",
            Crossover::Transposition => "transposition",
            Crossover::Edge => "edge",
            Crossover::BreadthFirst => "breadth_first",
            Crossover::Difference => "difference",
        })
    }
}

/// One-point exchange of swap lists: head of A up to a uniform cut, then
/// tail of B from an independent uniform cut.
pub fn transposition_crossover(
    parent_a: &TranspositionGenome,
    parent_b: &TranspositionGenome,
    rng: &mut RandomStream,
) -> Result<TranspositionGenome> {
    let cut_a = rng.random_range(0..=parent_a.swaps().len());
    let cut_b = rng.random_range(0..=parent_b.swaps().len());
    transposition_crossover_at(parent_a, parent_b, cut_a, cut_b)
}

/// [`transposition_crossover`] with explicit cut points.
pub fn transposition_crossover_at(
    parent_a: &TranspositionGenome,
    parent_b: &TranspositionGenome,
    cut_a: usize,
    cut_b: usize,
) -> Result<TranspositionGenome> {
    if !parent_a.same_reference(parent_b) {
        return Err(Error::ReferenceMismatch);
    }
    let mut swaps = parent_a.swaps()[..cut_a].to_vec();
    swaps.extend_from_slice(&parent_b.swaps()[cut_b..]);
    TranspositionGenome::with_swaps(parent_a.reference().clone(), swaps)
}

/// Edge recombination on the number-order sequences of both parents.
///
/// Tour edges join nodes with consecutive numbers; the sequence is not
/// closed into a cycle since the first and last numbers are unrelated.
pub fn edge_crossover(
    parent_a: &Numbering,
    parent_b: &Numbering,
    rng: &mut RandomStream,
) -> Numbering {
    let n = parent_a.len();
    debug_assert_eq!(n, parent_b.len());
    let mut edges: Vec<Vec<usize>> = vec![Vec::with_capacity(4); n];
    for parent in [parent_a, parent_b] {
        let order = parent.node_order();
        for w in order.windows(2) {
            let (u, v) = (w[0], w[1]);
            if !edges[u].contains(&v) {
                edges[u].push(v);
                edges[v].push(u);
            }
        }
    }

    let mut visited = vec![false; n];
    let mut unvisited: Vec<usize> = (0..n).collect();
    let mut slot: Vec<usize> = (0..n).collect();
    let mut order = Vec::with_capacity(n);
    let mut current = rng.random_range(0..n);
    let mut ties = Vec::with_capacity(4);
    loop {
        visited[current] = true;
        order.push(current);
        let s = slot[current];
        let last = *unvisited.last().expect("current is unvisited");
        unvisited.swap_remove(s);
        if last != current {
            slot[last] = s;
        }
        let neighbors = std::mem::take(&mut edges[current]);
        for &m in &neighbors {
            edges[m].retain(|&x| x != current);
        }
        if unvisited.is_empty() {
            break;
        }
        let fewest = neighbors
            .iter()
            .filter(|&&m| !visited[m])
            .map(|&m| edges[m].len())
            .min();
        current = match fewest {
            Some(k) => {
                ties.clear();
                ties.extend(
                    neighbors
                        .iter()
                        .copied()
                        .filter(|&m| !visited[m] && edges[m].len() == k),
                );
                ties[rng.random_range(0..ties.len())]
            }
            None => unvisited[rng.random_range(0..unvisited.len())],
        };
    }
    Numbering::from_order(&order).expect("every node visited once")
}

/// Free numbers with nearest-neighbor lookup.
struct FreeNumbers(BTreeSet<usize>);

impl FreeNumbers {
    fn all(n: usize) -> Self {
        FreeNumbers((0..n).collect())
    }

    fn take(&mut self, x: usize) -> bool {
        self.0.remove(&x)
    }

    /// Removes and returns the free number closest to `target`, preferring
    /// the smaller one on ties.
    fn take_nearest(&mut self, target: usize) -> usize {
        let below = self.0.range(..=target).next_back().copied();
        let above = self.0.range(target..).next().copied();
        let x = match (below, above) {
            (Some(lo), Some(hi)) => {
                if target - lo <= hi - target {
                    lo
                } else {
                    hi
                }
            }
            (Some(lo), None) => lo,
            (None, Some(hi)) => hi,
            (None, None) => panic!("no free number left"),
        };
        self.0.remove(&x);
        x
    }
}

/// Breadth-first crossover, starting from a uniformly random node.
pub fn breadth_first_crossover(
    mesh: &MeshGraph,
    parent_a: &Numbering,
    parent_b: &Numbering,
    rng: &mut RandomStream,
) -> Result<Numbering> {
    let start = rng.random_range(0..mesh.node_count());
    breadth_first_crossover_from(mesh, parent_a, parent_b, start)
}

/// Spreads numbers outward from `start`. Each newly reached neighbor Q of
/// the current node M tries, in order, M's number plus the smaller of the
/// two parents' offsets, M's number plus the larger offset, then the free
/// number closest to M's. Candidates outside the valid range are skipped.
pub fn breadth_first_crossover_from(
    mesh: &MeshGraph,
    parent_a: &Numbering,
    parent_b: &Numbering,
    start: usize,
) -> Result<Numbering> {
    if !mesh.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = mesh.node_count();
    let mut free = FreeNumbers::all(n);
    let mut number = vec![usize::MAX; n];
    number[start] = parent_a.number_of(start);
    free.take(number[start]);
    let mut queue = VecDeque::from([start]);
    while let Some(m) = queue.pop_front() {
        let i_m = number[m] as i64;
        for &q in mesh.neighbors(m) {
            if number[q] != usize::MAX {
                continue;
            }
            let delta_a = parent_a.number_of(q) as i64 - parent_a.number_of(m) as i64;
            let delta_b = parent_b.number_of(q) as i64 - parent_b.number_of(m) as i64;
            let tries = [i_m + delta_a.min(delta_b), i_m + delta_a.max(delta_b)];
            let chosen = tries
                .into_iter()
                .find(|&c| (0..n as i64).contains(&c) && free.take(c as usize))
                .map(|c| c as usize)
                .unwrap_or_else(|| free.take_nearest(i_m as usize));
            number[q] = chosen;
            queue.push_back(q);
        }
    }
    Numbering::from_numbers(number)
}

/// Difference crossover.
///
/// Nodes numbered identically by both parents keep that number. The rest
/// are visited in random order, each taking the free number nearest to the
/// rounded mean of its already-numbered neighbors (or, with none, of its
/// two parent numbers).
pub fn difference_crossover(
    mesh: &MeshGraph,
    parent_a: &Numbering,
    parent_b: &Numbering,
    rng: &mut RandomStream,
) -> Numbering {
    let n = parent_a.len();
    let mut free = FreeNumbers::all(n);
    let mut number = vec![usize::MAX; n];
    let mut pending = Vec::new();
    for (v, slot) in number.iter_mut().enumerate() {
        if parent_a.number_of(v) == parent_b.number_of(v) {
            *slot = parent_a.number_of(v);
            free.take(*slot);
        } else {
            pending.push(v);
        }
    }
    pending.shuffle(rng);
    for v in pending {
        let (sum, count) = mesh
            .neighbors(v)
            .iter()
            .filter(|&&m| number[m] != usize::MAX)
            .fold((0usize, 0usize), |(s, c), &m| (s + number[m], c + 1));
        let (sum, count) = if count == 0 {
            (parent_a.number_of(v) + parent_b.number_of(v), 2)
        } else {
            (sum, count)
        };
        let target = (2 * sum + count) / (2 * count);
        number[v] = free.take_nearest(target);
    }
    Numbering::from_numbers_unchecked(number)
}
