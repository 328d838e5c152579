use rand::Rng;
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::bandwidth::{bandwidth, bandwidth_delta, Bandwidth};
use crate::engine::config::{EvolutionConfig, Scheme};
use crate::engine::individual::{Evaluator, Individual};
use crate::engine::selection::LinearRanking;
use crate::engine::trace::{RunTrace, Snapshot};
use crate::error::{Error, Result};
use crate::gibbs::gibbs_number;
use crate::mesh::MeshGraph;
use crate::numbering::Numbering;
use crate::operators::crossover::{
    breadth_first_crossover, difference_crossover, edge_crossover, transposition_crossover,
};
use crate::operators::init::{perturb_baseline, point_init, random_init};
use crate::operators::mutation::{
    choose_mutation, draw_neighbor_transposition, mutate_inversion, mutate_neighbor_permutation,
    mutate_origin,
};
use crate::operators::{Crossover, Initializer, MutationKind, TranspositionGenome};
use crate::rng::RandomStream;

/// Stream label for initialization; generations use their own index.
const INIT_LABEL: u64 = u64::MAX;

/// Runs one configuration on one mesh.
///
/// Every offspring slot `k` of generation `g` draws from the stream
/// `split_path([g, k])` of the master seed, so results do not depend on the
/// number of worker threads.
pub struct Engine<'a> {
    mesh: &'a MeshGraph,
    config: &'a EvolutionConfig,
    master: RandomStream,
    baseline: Numbering,
    baseline_fitness: Bandwidth,
    evaluator: Evaluator,
    pool: Option<ThreadPool>,
}

impl<'a> Engine<'a> {
    /// Validates inputs and computes the breadth-first baseline. No fitness
    /// evaluation happens here.
    pub fn new(mesh: &'a MeshGraph, config: &'a EvolutionConfig) -> Result<Self> {
        config.validate()?;
        if mesh.node_count() < 2 {
            return Err(Error::Config("evolution needs at least 2 nodes".into()));
        }
        let baseline = gibbs_number(mesh)?;
        let baseline_fitness = bandwidth(mesh, &baseline);
        Ok(Engine {
            mesh,
            config,
            master: RandomStream::new(config.seed),
            baseline,
            baseline_fitness,
            evaluator: Evaluator::default(),
            pool: None,
        })
    }

    /// Evaluates offspring on up to `threads` workers.
    pub fn with_threads(mut self, threads: usize) -> Result<Self> {
        self.pool = if threads > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            Some(pool)
        } else {
            None
        };
        Ok(self)
    }

    pub fn baseline(&self) -> (&Numbering, Bandwidth) {
        (&self.baseline, self.baseline_fitness)
    }

    /// Fitness evaluations performed so far.
    pub fn evaluations(&self) -> u64 {
        self.evaluator.count()
    }

    fn map_slots<T, F>(&self, count: usize, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(usize) -> Result<T> + Sync + Send,
    {
        match &self.pool {
            Some(pool) => pool.install(|| (0..count).into_par_iter().map(&f).collect()),
            None => (0..count).map(f).collect(),
        }
    }

    fn uses_transpositions(&self) -> bool {
        self.config.crossover == Crossover::Transposition
    }

    /// Builds and evaluates the initial population.
    pub fn initial_population(&self) -> Result<Vec<Individual>> {
        let size = self.config.initial_population_size();
        let init_stream = self.master.split(INIT_LABEL);
        let shared_reference = match self.config.init {
            Initializer::Gibbs => self.baseline.clone(),
            _ => Numbering::identity(self.mesh.node_count()),
        };
        self.map_slots(size, |i| {
            let mut rng = init_stream.split(i as u64);
            let mut ind = match self.config.init {
                Initializer::Gibbs => {
                    let (numbering, swaps) = perturb_baseline(
                        &self.baseline,
                        &mut rng,
                        self.config.gibbs_init_max_swaps,
                        i,
                    );
                    if self.uses_transpositions() {
                        let genome =
                            TranspositionGenome::with_swaps(shared_reference.clone(), swaps)?;
                        Individual::from_transpositions(genome)
                    } else {
                        Individual::new(numbering)
                    }
                }
                Initializer::Random | Initializer::Point => {
                    let numbering = if self.config.init == Initializer::Random {
                        random_init(self.mesh.node_count(), &mut rng)
                    } else {
                        point_init(self.mesh, &mut rng)?
                    };
                    if self.uses_transpositions() {
                        Individual::from_transpositions(TranspositionGenome::encode(
                            shared_reference.clone(),
                            &numbering,
                        ))
                    } else {
                        Individual::new(numbering)
                    }
                }
            };
            self.evaluator.evaluate(self.mesh, &mut ind);
            Ok(ind)
        })
    }

    fn crossover(
        &self,
        parent: &Individual,
        mate: &Individual,
        rng: &mut RandomStream,
    ) -> Result<Individual> {
        let (a, b) = (parent.numbering(), mate.numbering());
        Ok(match self.config.crossover {
            Crossover::None => parent.clone(),
            Crossover::Transposition => {
                let (ga, gb) = parent
                    .transpositions()
                    .zip(mate.transpositions())
                    .ok_or(Error::ReferenceMismatch)?;
                Individual::from_transpositions(transposition_crossover(ga, gb, rng)?)
            }
            Crossover::Edge => Individual::new(edge_crossover(a, b, rng)),
            Crossover::BreadthFirst => {
                Individual::new(breadth_first_crossover(self.mesh, a, b, rng)?)
            }
            Crossover::Difference => Individual::new(difference_crossover(self.mesh, a, b, rng)),
        })
    }

    /// Mutation with probability `pm`, then evaluation.
    ///
    /// While the child still carries a valid fitness (a clone, or a clone
    /// changed only by transpositions so far) its score is tracked by swap
    /// deltas; anything else triggers a full evaluation.
    fn mutate_and_evaluate(&self, mut child: Individual, rng: &mut RandomStream) -> Individual {
        let parent_fitness = child.fitness();
        let mut delta = 0i64;
        let mut track = self.config.incremental && parent_fitness.is_some();
        if rng.random::<f64>() < self.config.pm {
            let n = self.mesh.node_count();
            let mut swap = |child: &mut Individual, a: usize, b: usize, track: bool| {
                if track {
                    delta += bandwidth_delta(self.mesh, child.numbering(), (a, b))
                        .expect("distinct nodes");
                }
                child.apply_swap(a, b);
            };
            match choose_mutation(&self.config.mutation_weights, rng) {
                MutationKind::RandomTransposition => {
                    for _ in 0..self.config.mutation_strength {
                        let a = rng.random_range(0..n);
                        let mut b = rng.random_range(0..n - 1);
                        if b >= a {
                            b += 1;
                        }
                        swap(&mut child, a, b, track);
                    }
                }
                MutationKind::NeighborTransposition => {
                    let (a, b) = draw_neighbor_transposition(self.mesh, rng);
                    swap(&mut child, a, b, track);
                }
                kind => {
                    track = false;
                    let mut numbering = child.numbering().clone();
                    match kind {
                        MutationKind::NeighborPermutation => {
                            mutate_neighbor_permutation(self.mesh, &mut numbering, rng);
                        }
                        MutationKind::Inversion => {
                            mutate_inversion(&mut numbering, rng);
                        }
                        MutationKind::Origin => {
                            mutate_origin(self.mesh, &mut numbering, rng);
                        }
                        _ => unreachable!(),
                    }
                    child.replace_numbering(numbering);
                }
            }
        }
        match parent_fitness {
            Some(parent) if track => self
                .evaluator
                .evaluate_incremental(&mut child, parent, delta),
            _ => self.evaluator.evaluate(self.mesh, &mut child),
        }
        child
    }

    /// One GA generation producing at most `budget` offspring.
    ///
    /// Each slot picks a parent by linear ranking, with probability `pc`
    /// crosses it with a second ranked pick (possibly itself), then mutates
    /// with probability `pm`. The best old individual replaces the worst
    /// offspring if no offspring matches it. A budget-truncated generation
    /// is topped up with the best old individuals.
    pub fn ga_generation(
        &self,
        population: &[Individual],
        generation: u64,
        budget: u64,
    ) -> Result<Vec<Individual>> {
        let ranking = LinearRanking::new(population)?;
        let size = self.config.population_size;
        let count = (size as u64).min(budget) as usize;
        let mut offspring = self.map_slots(count, |slot| {
            let mut rng = self.master.split_path(&[generation, slot as u64]);
            let parent = &population[ranking.select(&mut rng)];
            let child = if self.config.crossover != Crossover::None
                && rng.random::<f64>() < self.config.pc
            {
                let mate = &population[ranking.select(&mut rng)];
                self.crossover(parent, mate, &mut rng)?
            } else {
                parent.clone()
            };
            Ok(self.mutate_and_evaluate(child, &mut rng))
        })?;

        let best_old = &population[ranking.ranked()[0]];
        if count < size {
            offspring.extend(
                ranking.ranked()[..size - count]
                    .iter()
                    .map(|&i| population[i].clone()),
            );
        } else if offspring.iter().all(|c| c.score() > best_old.score()) {
            let worst = offspring
                .iter()
                .enumerate()
                .max_by_key(|(i, c)| (c.score(), *i))
                .map(|(i, _)| i)
                .expect("non-empty offspring");
            offspring[worst] = best_old.clone();
        }
        Ok(offspring)
    }

    /// One (μ+λ) generation producing at most `budget` offspring.
    ///
    /// Each offspring comes from a uniformly chosen parent, crossed with a
    /// second uniform parent with probability `pc` when a crossover is
    /// configured, and mutated with probability `pm`. Survivors are the best
    /// μ of parents and offspring; ties favor parents, then slot order.
    pub fn es_generation(
        &self,
        parents: &[Individual],
        generation: u64,
        budget: u64,
    ) -> Result<Vec<Individual>> {
        if let Some(i) = parents.iter().position(|p| !p.is_fresh()) {
            return Err(Error::StaleFitness(i));
        }
        let count = (self.config.lambda as u64).min(budget) as usize;
        let offspring = self.map_slots(count, |slot| {
            let mut rng = self.master.split_path(&[generation, slot as u64]);
            let parent = &parents[rng.random_range(0..parents.len())];
            let child = if self.config.crossover != Crossover::None
                && rng.random::<f64>() < self.config.pc
            {
                let mate = &parents[rng.random_range(0..parents.len())];
                self.crossover(parent, mate, &mut rng)?
            } else {
                parent.clone()
            };
            Ok(self.mutate_and_evaluate(child, &mut rng))
        })?;
        let mut pool: Vec<Individual> = parents.to_vec();
        pool.extend(offspring);
        pool.sort_by_key(Individual::score);
        pool.truncate(self.config.mu);
        Ok(pool)
    }

    fn snapshot(&self, population: &[Individual], best: Bandwidth) -> Snapshot {
        let total: u64 = population.iter().map(|i| i.score().0).sum();
        Snapshot {
            evaluations: self.evaluations(),
            best,
            mean: total as f64 / population.len() as f64,
        }
    }

    /// Runs generations until the evaluation budget is spent.
    pub fn run(&self) -> Result<RunTrace> {
        let max = self.config.max_evaluations;
        let every = self.config.snapshot_every;
        let mut population = self.initial_population()?;
        let mut best = population
            .iter()
            .min_by_key(|i| i.score())
            .expect("non-empty population")
            .clone();
        let mut snapshots = vec![self.snapshot(&population, best.score())];

        let mut generation = 0u64;
        while self.evaluations() < max {
            let before = self.evaluations();
            let budget = max - before;
            population = match self.config.scheme {
                Scheme::Ga => self.ga_generation(&population, generation, budget)?,
                Scheme::Es => self.es_generation(&population, generation, budget)?,
            };
            generation += 1;
            if let Some(top) = population.iter().min_by_key(|i| i.score()) {
                if top.score() < best.score() {
                    best = top.clone();
                }
            }
            let used = self.evaluations();
            if used / every > before / every || used == max {
                snapshots.push(self.snapshot(&population, best.score()));
            }
        }

        Ok(RunTrace {
            config: self.config.clone(),
            snapshots,
            final_best: best,
            gibbs_baseline: self.baseline_fitness,
            evaluations_used: self.evaluations(),
        })
    }
}

/// Single-threaded run.
pub fn evolve(mesh: &MeshGraph, config: &EvolutionConfig) -> Result<RunTrace> {
    Engine::new(mesh, config)?.run()
}

/// Run with offspring evaluated on up to `threads` workers. The trace is
/// identical to [`evolve`]'s.
pub fn evolve_with_threads(
    mesh: &MeshGraph,
    config: &EvolutionConfig,
    threads: usize,
) -> Result<RunTrace> {
    Engine::new(mesh, config)?.with_threads(threads)?.run()
}
