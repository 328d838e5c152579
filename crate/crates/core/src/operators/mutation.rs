//! Mutation operators. All of them work in place on a numbering.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bandwidth::bandwidth;
use crate::error::{Error, Result};
use crate::mesh::MeshGraph;
use crate::numbering::Numbering;
use crate::operators::init::random_pair;
use crate::rng::RandomStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MutationKind {
    RandomTransposition,
    NeighborTransposition,
    NeighborPermutation,
    Inversion,
    Origin,
}

impl MutationKind {
    pub const ALL: [MutationKind; 5] = [
        MutationKind::RandomTransposition,
        MutationKind::NeighborTransposition,
        MutationKind::NeighborPermutation,
        MutationKind::Inversion,
        MutationKind::Origin,
    ];

    /// Config key holding this operator's weight.
    pub fn weight_key(self) -> &'static str {
        match self {
            MutationKind::RandomTransposition => "pm_rand",
            MutationKind::NeighborTransposition => "pm_neighbor",
            MutationKind::NeighborPermutation => "pm_around",
            MutationKind::Inversion => "pm_inversion",
            MutationKind::Origin => "pm_origin",
        }
    }
}

impl fmt::Display for MutationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.weight_key())
    }
}

/// Relative operator weights, normalized to sum to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MutationWeights([f64; 5]);

impl MutationWeights {
    /// Weights in [`MutationKind::ALL`] order.
    pub fn new(
        pm_rand: f64,
        pm_neighbor: f64,
        pm_around: f64,
        pm_inversion: f64,
        pm_origin: f64,
    ) -> Result<Self> {
        Self::from_array([pm_rand, pm_neighbor, pm_around, pm_inversion, pm_origin])
    }

    pub fn from_array(raw: [f64; 5]) -> Result<Self> {
        if raw.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::Config(format!(
                "mutation weights must be finite and non-negative, got {raw:?}"
            )));
        }
        let total: f64 = raw.iter().sum();
        if total <= 0.0 {
            return Err(Error::Config("mutation weights sum to zero".into()));
        }
        Ok(MutationWeights(raw.map(|w| w / total)))
    }

    /// Only random transpositions.
    pub fn random_only() -> Self {
        MutationWeights([1.0, 0.0, 0.0, 0.0, 0.0])
    }

    pub fn weight(&self, kind: MutationKind) -> f64 {
        self.0[kind as usize]
    }

    pub fn as_array(&self) -> [f64; 5] {
        self.0
    }
}

impl Default for MutationWeights {
    /// Two thirds random transposition, one third neighbor transposition.
    fn default() -> Self {
        MutationWeights::new(0.66, 0.33, 0.0, 0.0, 0.0).expect("valid defaults")
    }
}

/// Categorical draw proportional to the weights.
pub fn choose_mutation(weights: &MutationWeights, rng: &mut RandomStream) -> MutationKind {
    let mut x: f64 = rng.random();
    let mut last = MutationKind::RandomTransposition;
    for kind in MutationKind::ALL {
        let w = weights.weight(kind);
        if w <= 0.0 {
            continue;
        }
        last = kind;
        if x < w {
            return kind;
        }
        x -= w;
    }
    // rounding left a sliver of probability past the last bucket
    last
}

/// Applies `strength` independent uniform transpositions and returns them
/// in application order.
pub fn mutate_random_transposition(
    numbering: &mut Numbering,
    rng: &mut RandomStream,
    strength: usize,
) -> Vec<(usize, usize)> {
    let n = numbering.len();
    if n < 2 {
        return Vec::new();
    }
    (0..strength)
        .map(|_| {
            let (a, b) = random_pair(n, rng);
            numbering.swap(a, b);
            (a, b)
        })
        .collect()
}

/// Draws the node pair a neighbor transposition would swap.
pub fn draw_neighbor_transposition(mesh: &MeshGraph, rng: &mut RandomStream) -> (usize, usize) {
    let a = rng.random_range(0..mesh.node_count());
    let neighbors = mesh.neighbors(a);
    (a, neighbors[rng.random_range(0..neighbors.len())])
}

/// Swaps a random node with one of its mesh neighbors.
pub fn mutate_neighbor_transposition(
    mesh: &MeshGraph,
    numbering: &mut Numbering,
    rng: &mut RandomStream,
) -> (usize, usize) {
    let (a, b) = draw_neighbor_transposition(mesh, rng);
    numbering.swap(a, b);
    (a, b)
}

/// Shuffles the numbers held by the neighbors of a random node. The node's
/// own number is untouched. Returns the chosen node.
pub fn mutate_neighbor_permutation(
    mesh: &MeshGraph,
    numbering: &mut Numbering,
    rng: &mut RandomStream,
) -> usize {
    let a = rng.random_range(0..mesh.node_count());
    let around = mesh.neighbors(a);
    let mut numbers: Vec<usize> = around.iter().map(|&m| numbering.number_of(m)).collect();
    numbers.shuffle(rng);
    let mut values = numbering.as_slice().to_vec();
    for (&m, x) in around.iter().zip(numbers) {
        values[m] = x;
    }
    *numbering = Numbering::from_numbers_unchecked(values);
    a
}

/// Reverses the numbers in `[u, v]`: every node numbered `x` there is
/// renumbered `u + v - x`.
pub fn invert_range(numbering: &mut Numbering, u: usize, v: usize) {
    debug_assert!(u <= v && v < numbering.len());
    let values = numbering
        .as_slice()
        .iter()
        .map(|&x| if (u..=v).contains(&x) { u + v - x } else { x })
        .collect();
    *numbering = Numbering::from_numbers_unchecked(values);
}

/// Reverses a random number range. With probability 1/N the whole
/// numbering is reversed. Returns the range used.
pub fn mutate_inversion(numbering: &mut Numbering, rng: &mut RandomStream) -> (usize, usize) {
    let n = numbering.len();
    if n < 2 {
        return (0, 0);
    }
    let (u, v) = if rng.random_range(0..n) == 0 {
        (0, n - 1)
    } else {
        let x = rng.random_range(0..n);
        let y = rng.random_range(0..n);
        (x.min(y), x.max(y))
    };
    invert_range(numbering, u, v);
    (u, v)
}

/// The two origin-shift variants for shift `i` in `[1, N]`: the rotation
/// `j -> i + j mod N` and the reflected rotation `j -> N - (i + j) mod N`,
/// written on 1-based numbers and shifted back into range.
pub fn origin_variants(numbering: &Numbering, i: usize) -> (Numbering, Numbering) {
    let n = numbering.len() as i64;
    let i = i as i64;
    let rotate = numbering
        .as_slice()
        .iter()
        .map(|&x| ((i + x as i64).rem_euclid(n)) as usize)
        .collect();
    let reflect = numbering
        .as_slice()
        .iter()
        .map(|&x| ((n - (i + x as i64 + 1)).rem_euclid(n)) as usize)
        .collect();
    (
        Numbering::from_numbers_unchecked(rotate),
        Numbering::from_numbers_unchecked(reflect),
    )
}

/// Moves the numbering origin by a random shift, keeping whichever of the
/// two variants has the lower bandwidth (rotation on ties). Returns the
/// shift drawn.
pub fn mutate_origin(mesh: &MeshGraph, numbering: &mut Numbering, rng: &mut RandomStream) -> usize {
    let i = rng.random_range(1..=numbering.len());
    let (rotate, reflect) = origin_variants(numbering, i);
    *numbering = if bandwidth(mesh, &reflect) < bandwidth(mesh, &rotate) {
        reflect
    } else {
        rotate
    };
    i
}
