//! Selection, replacement and the evolution loop.

pub mod config;
pub mod individual;
pub mod run;
pub mod selection;
pub mod trace;

pub use config::{parse_key_values, EvolutionConfig, Scheme};
pub use individual::{Evaluator, Individual};
pub use run::{evolve, evolve_with_threads, Engine};
pub use selection::{linear_ranking_select, LinearRanking};
pub use trace::{improvement_pct, RunTrace, Snapshot};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bandwidth::bandwidth;
    use crate::generate::{generate_mesh, MeshSpec};
    use crate::mesh::MeshGraph;
    use crate::numbering::Numbering;
    use crate::operators::{Crossover, Initializer, MutationWeights};

    fn path(n: usize) -> MeshGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        MeshGraph::from_edges(n, &edges).unwrap()
    }

    fn grid(r: usize, c: usize) -> MeshGraph {
        generate_mesh(&MeshSpec::grid(r, c)).unwrap()
    }

    fn ga(pc: f64, pm: f64, crossover: Crossover) -> EvolutionConfig {
        EvolutionConfig {
            pc,
            pm,
            crossover,
            init: Initializer::Random,
            max_evaluations: 2_000,
            snapshot_every: 50,
            seed: 3,
            ..EvolutionConfig::ga(20)
        }
    }

    fn best_per_generation(mesh: &MeshGraph, config: &EvolutionConfig, gens: u64) -> Vec<u64> {
        let engine = Engine::new(mesh, config).unwrap();
        let mut pop = engine.initial_population().unwrap();
        let mut bests = vec![pop.iter().map(|i| i.fitness().unwrap().0).min().unwrap()];
        for g in 0..gens {
            pop = match config.scheme {
                Scheme::Ga => engine.ga_generation(&pop, g, u64::MAX).unwrap(),
                Scheme::Es => engine.es_generation(&pop, g, u64::MAX).unwrap(),
            };
            bests.push(pop.iter().map(|i| i.fitness().unwrap().0).min().unwrap());
        }
        bests
    }

    #[test]
    fn ga_without_variation_copies_parents() {
        let mesh = grid(5, 5);
        let config = ga(0.0, 0.0, Crossover::None);
        let engine = Engine::new(&mesh, &config).unwrap();
        let pop = engine.initial_population().unwrap();
        let next = engine.ga_generation(&pop, 0, u64::MAX).unwrap();
        assert_eq!(next.len(), pop.len());
        for child in &next {
            assert!(pop.iter().any(|p| p.numbering() == child.numbering()));
        }
        let best = |p: &[Individual]| p.iter().map(|i| i.fitness().unwrap()).min().unwrap();
        assert_eq!(best(&next), best(&pop));
    }

    #[test]
    fn ga_elitism_is_monotone() {
        let mesh = grid(5, 5);
        for crossover in [
            Crossover::None,
            Crossover::Transposition,
            Crossover::Edge,
            Crossover::BreadthFirst,
            Crossover::Difference,
        ] {
            let config = ga(0.6, 1.0, crossover);
            let bests = best_per_generation(&mesh, &config, 30);
            assert!(
                bests.windows(2).all(|w| w[1] <= w[0]),
                "{crossover}: {bests:?}"
            );
        }
    }

    #[test]
    fn es_plus_selection_is_monotone() {
        let mesh = grid(6, 6);
        let config = EvolutionConfig {
            init: Initializer::Random,
            ..EvolutionConfig::es(1, 7)
        };
        let bests = best_per_generation(&mesh, &config, 200);
        assert!(bests.windows(2).all(|w| w[1] <= w[0]));
        assert!(bests.last() < bests.first());
    }

    #[test]
    fn es_keeps_parents_when_offspring_are_worse() {
        let mesh = path(12);
        let config = EvolutionConfig::es(7, 50);
        let engine = Engine::new(&mesh, &config).unwrap();
        let eval = Evaluator::default();
        let parents: Vec<Individual> = (0..7)
            .map(|_| {
                let mut ind = Individual::new(Numbering::identity(12));
                eval.evaluate(&mesh, &mut ind);
                ind
            })
            .collect();
        let next = engine.es_generation(&parents, 0, u64::MAX).unwrap();
        assert_eq!(next, parents);
    }

    #[test]
    fn es_on_optimal_path_stays_optimal() {
        let mesh = path(20);
        let config = EvolutionConfig {
            max_evaluations: 5_000,
            ..EvolutionConfig::es(1, 7)
        };
        let trace = evolve(&mesh, &config).unwrap();
        assert_eq!(trace.best().0, 19);
        assert_eq!(trace.gibbs_baseline.0, 19);
        assert_eq!(trace.improvement_pct(), 0.0);
    }

    #[test]
    fn evaluation_accounting() {
        let mesh = grid(6, 6);
        for config in [
            ga(0.6, 0.2, Crossover::BreadthFirst),
            EvolutionConfig {
                max_evaluations: 1_003,
                ..EvolutionConfig::es(7, 50)
            },
        ] {
            let engine = Engine::new(&mesh, &config).unwrap();
            assert_eq!(engine.evaluations(), 0);
            let trace = engine.run().unwrap();
            assert_eq!(engine.evaluations(), trace.evaluations_used);
            assert_eq!(trace.evaluations_used, config.max_evaluations);
            assert_eq!(
                trace.snapshots.last().unwrap().evaluations,
                config.max_evaluations
            );
        }
    }

    #[test]
    fn budget_equal_to_population_gives_one_snapshot() {
        let mesh = grid(5, 5);
        let config = EvolutionConfig {
            max_evaluations: 50,
            ..EvolutionConfig::ga(50)
        };
        let trace = evolve(&mesh, &config).unwrap();
        assert_eq!(trace.snapshots.len(), 1);
        assert_eq!(trace.snapshots[0].evaluations, 50);
    }

    #[test]
    fn gibbs_init_never_loses_to_baseline() {
        let mesh = grid(8, 8);
        for config in [
            EvolutionConfig::es(1, 7),
            EvolutionConfig::es(7, 50),
            EvolutionConfig {
                pc: 0.6,
                pm: 0.2,
                crossover: Crossover::Difference,
                ..EvolutionConfig::ga(20)
            },
        ] {
            let config = EvolutionConfig {
                max_evaluations: 1_500,
                ..config
            };
            let trace = evolve(&mesh, &config).unwrap();
            assert!(trace.best() <= trace.gibbs_baseline);
            assert!(trace.improvement_pct() >= 0.0);
            assert!(trace.is_monotone());
        }
    }

    #[test]
    fn deterministic_and_thread_independent() {
        let mesh = grid(7, 7);
        let config = EvolutionConfig {
            pc: 0.5,
            crossover: Crossover::BreadthFirst,
            mutation_weights: MutationWeights::new(1.0, 1.0, 1.0, 1.0, 1.0).unwrap(),
            max_evaluations: 3_000,
            seed: 11,
            ..EvolutionConfig::es(7, 50)
        };
        let a = evolve(&mesh, &config).unwrap();
        let b = evolve(&mesh, &config).unwrap();
        let c = evolve_with_threads(&mesh, &config, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.to_csv(), c.to_csv());
    }

    #[test]
    fn incremental_matches_full_evaluation() {
        let mesh = grid(7, 7);
        let mut config = EvolutionConfig {
            mutation_weights: MutationWeights::new(0.5, 0.5, 0.0, 0.0, 0.0).unwrap(),
            mutation_strength: 3,
            init: Initializer::Random,
            max_evaluations: 4_000,
            ..EvolutionConfig::es(1, 7)
        };
        let fast = evolve(&mesh, &config).unwrap();
        config.incremental = false;
        let slow = evolve(&mesh, &config).unwrap();
        assert_eq!(fast.snapshots, slow.snapshots);
        assert_eq!(bandwidth(&mesh, fast.final_best.numbering()), fast.best());
    }

    #[test]
    fn transposition_genomes_decode_to_phenotype() {
        let mesh = grid(5, 5);
        for init in [Initializer::Gibbs, Initializer::Random, Initializer::Point] {
            let config = EvolutionConfig {
                init,
                mutation_weights: MutationWeights::new(1.0, 1.0, 1.0, 1.0, 1.0).unwrap(),
                ..ga(0.7, 0.5, Crossover::Transposition)
            };
            let trace = evolve(&mesh, &config).unwrap();
            let genome = trace
                .final_best
                .transpositions()
                .expect("transposition genome");
            assert_eq!(&genome.decode(), trace.final_best.numbering());
            assert_eq!(bandwidth(&mesh, trace.final_best.numbering()), trace.best());
        }
    }

    #[test]
    fn ga_breadth_first_golden_trace() {
        let mesh = grid(10, 10);
        let config = EvolutionConfig {
            pc: 0.6,
            pm: 0.2,
            crossover: Crossover::BreadthFirst,
            max_evaluations: 5_000,
            snapshot_every: 500,
            seed: 2024,
            init: Initializer::Random,
            ..EvolutionConfig::ga(50)
        };
        let trace = evolve(&mesh, &config).unwrap();
        assert!(trace.is_monotone());
        assert_eq!(trace.snapshots.len(), GOLDEN_BESTS.len());
        let bests: Vec<u64> = trace.snapshots.iter().map(|s| s.best.0).collect();
        assert_eq!(bests, GOLDEN_BESTS);
    }

    const GOLDEN_BESTS: &[u64] = &[
        3341, 1185, 1185, 1182, 1182, 1182, 1143, 1143, 1143, 1104, 1102,
    ];

    #[test]
    fn disconnected_mesh_is_rejected() {
        let mesh = MeshGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(evolve(&mesh, &EvolutionConfig::es(1, 7)).is_err());
    }
}
