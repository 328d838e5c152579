use std::sync::atomic::{AtomicU64, Ordering};

use crate::bandwidth::{bandwidth, Bandwidth};
use crate::mesh::MeshGraph;
use crate::numbering::Numbering;
use crate::operators::TranspositionGenome;

/// A population member.
///
/// The genome is either the numbering itself or, when `transpositions` is
/// set, a swap list whose decoding is kept in `numbering`.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    numbering: Numbering,
    transpositions: Option<TranspositionGenome>,
    fitness: Bandwidth,
    fresh: bool,
}

impl Individual {
    /// Unevaluated permutation genome.
    pub fn new(numbering: Numbering) -> Self {
        Individual {
            numbering,
            transpositions: None,
            fitness: Bandwidth(0),
            fresh: false,
        }
    }

    /// Unevaluated transposition genome.
    pub fn from_transpositions(genome: TranspositionGenome) -> Self {
        Individual {
            numbering: genome.decode(),
            transpositions: Some(genome),
            fitness: Bandwidth(0),
            fresh: false,
        }
    }

    pub fn numbering(&self) -> &Numbering {
        &self.numbering
    }

    pub fn transpositions(&self) -> Option<&TranspositionGenome> {
        self.transpositions.as_ref()
    }

    /// Cached fitness, if it matches the genome.
    pub fn fitness(&self) -> Option<Bandwidth> {
        self.fresh.then_some(self.fitness)
    }

    pub fn is_fresh(&self) -> bool {
        self.fresh
    }

    /// Fitness of an individual known to be fresh.
    pub(crate) fn score(&self) -> Bandwidth {
        debug_assert!(self.fresh);
        self.fitness
    }

    /// Exchanges two nodes' numbers, appending the swap to the transposition
    /// list when there is one. Invalidates the fitness.
    pub(crate) fn apply_swap(&mut self, a: usize, b: usize) {
        self.numbering.swap(a, b);
        if let Some(g) = &mut self.transpositions {
            g.push_swap(a, b);
        }
        self.fresh = false;
    }

    /// Replaces the numbering, re-encoding the change into the transposition
    /// list when there is one. Invalidates the fitness.
    pub(crate) fn replace_numbering(&mut self, numbering: Numbering) {
        if let Some(g) = &mut self.transpositions {
            g.extend_towards(&self.numbering, &numbering);
        }
        self.numbering = numbering;
        self.fresh = false;
    }

    pub(crate) fn set_fitness(&mut self, fitness: Bandwidth) {
        self.fitness = fitness;
        self.fresh = true;
    }
}

/// Counts fitness evaluations, whether full or incremental.
#[derive(Debug, Default)]
pub struct Evaluator {
    count: AtomicU64,
}

impl Evaluator {
    pub fn count(&self) -> u64 {
        self.count.load(Ordering::Relaxed)
    }

    /// Full evaluation from scratch.
    pub fn evaluate(&self, mesh: &MeshGraph, individual: &mut Individual) {
        self.count.fetch_add(1, Ordering::Relaxed);
        individual.set_fitness(bandwidth(mesh, &individual.numbering));
    }

    /// Evaluation from a parent fitness and the summed swap deltas that
    /// produced this individual from it.
    pub fn evaluate_incremental(&self, individual: &mut Individual, parent: Bandwidth, delta: i64) {
        self.count.fetch_add(1, Ordering::Relaxed);
        individual.set_fitness(parent.offset(delta));
    }
}
