use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::gibbs::{breadth_first_numbering, gibbs_number};
use crate::mesh::MeshGraph;
use crate::numbering::Numbering;
use crate::rng::RandomStream;

/// Population initialization procedure. Config tokens: `random`, `gibbs`,
/// `point`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Initializer {
    Random,
    Gibbs,
    Point,
}

impl FromStr for Initializer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Initializer::Random),
            "gibbs" => Ok(Initializer::Gibbs),
            "point" => Ok(Initializer::Point),
            other => Err(Error::Config(format!("unknown initializer `{other}`"))),
        }
    }
}

impl fmt::Display for Initializer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Initializer::Random => "random",
            Initializer::Gibbs => "gibbs",
            Initializer::Point => "point",
        })
    }
}

/// Uniformly random numbering of `node_count` nodes (Fisher–Yates).
pub fn random_init(node_count: usize, rng: &mut RandomStream) -> Numbering {
    let mut numbers: Vec<usize> = (0..node_count).collect();
    numbers.shuffle(rng);
    Numbering::from_numbers_unchecked(numbers)
}

/// Two distinct nodes drawn uniformly.
pub(crate) fn random_pair(n: usize, rng: &mut RandomStream) -> (usize, usize) {
    debug_assert!(n >= 2);
    let a = rng.random_range(0..n);
    let mut b = rng.random_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    (a, b)
}

/// Perturbs an already computed baseline. Individual 0 is the baseline
/// itself; every other individual gets between 1 and `max_swaps` random
/// transpositions, which are returned alongside the numbering.
pub fn perturb_baseline(
    baseline: &Numbering,
    rng: &mut RandomStream,
    max_swaps: usize,
    index_in_population: usize,
) -> (Numbering, Vec<(usize, usize)>) {
    let mut numbering = baseline.clone();
    if index_in_population == 0 || numbering.len() < 2 {
        return (numbering, Vec::new());
    }
    let k = rng.random_range(1..=max_swaps.max(1));
    let swaps: Vec<_> = (0..k).map(|_| random_pair(numbering.len(), rng)).collect();
    for &(a, b) in &swaps {
        numbering.swap(a, b);
    }
    (numbering, swaps)
}

/// Slight perturbation of the breadth-first baseline.
pub fn gibbs_init(
    mesh: &MeshGraph,
    rng: &mut RandomStream,
    max_swaps: usize,
    index_in_population: usize,
) -> Result<Numbering> {
    let baseline = gibbs_number(mesh)?;
    Ok(perturb_baseline(&baseline, rng, max_swaps, index_in_population).0)
}

/// Breadth-first numbering from a uniformly random start node.
pub fn point_init(mesh: &MeshGraph, rng: &mut RandomStream) -> Result<Numbering> {
    let start = rng.random_range(0..mesh.node_count());
    breadth_first_numbering(mesh, start)
}
