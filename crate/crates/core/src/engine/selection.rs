use rand::Rng;

use crate::engine::individual::Individual;
use crate::error::{Error, Result};
use crate::rng::RandomStream;

/// Linear ranking over a fixed population: the individual of rank `r`
/// (0 = lowest bandwidth) is drawn with probability proportional to
/// `size - r`. Equal fitness keeps population order.
#[derive(Debug, Clone)]
pub struct LinearRanking {
    by_rank: Vec<usize>,
    total_weight: u64,
}

impl LinearRanking {
    pub fn new(population: &[Individual]) -> Result<Self> {
        let mut by_rank = Vec::with_capacity(population.len());
        for (i, ind) in population.iter().enumerate() {
            if !ind.is_fresh() {
                return Err(Error::StaleFitness(i));
            }
            by_rank.push(i);
        }
        if by_rank.is_empty() {
            return Err(Error::Config(
                "cannot select from an empty population".into(),
            ));
        }
        by_rank.sort_by_key(|&i| population[i].score());
        let size = by_rank.len() as u64;
        Ok(LinearRanking {
            by_rank,
            total_weight: size * (size + 1) / 2,
        })
    }

    /// Population indices from best to worst.
    pub fn ranked(&self) -> &[usize] {
        &self.by_rank
    }

    pub fn select(&self, rng: &mut RandomStream) -> usize {
        let size = self.by_rank.len() as u64;
        let mut ticket = rng.random_range(0..self.total_weight);
        for (rank, &index) in self.by_rank.iter().enumerate() {
            let weight = size - rank as u64;
            if ticket < weight {
                return index;
            }
            ticket -= weight;
        }
        unreachable!("ticket below total weight")
    }
}

/// One linear-ranking draw from `population`.
pub fn linear_ranking_select(population: &[Individual], rng: &mut RandomStream) -> Result<usize> {
    Ok(LinearRanking::new(population)?.select(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::individual::Evaluator;
    use crate::generate::{generate_mesh, MeshSpec};
    use crate::numbering::Numbering;
    use crate::operators::random_init;

    fn population(size: usize, seed: u64) -> Vec<Individual> {
        let mesh = generate_mesh(&MeshSpec::grid(4, 4)).unwrap();
        let eval = Evaluator::default();
        let mut rng = RandomStream::new(seed);
        (0..size)
            .map(|_| {
                let mut ind = Individual::new(random_init(16, &mut rng));
                eval.evaluate(&mesh, &mut ind);
                ind
            })
            .collect()
    }

    fn within_three_sigma(count: usize, trials: usize, p: f64) -> bool {
        let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
        (count as f64 - trials as f64 * p).abs() <= 3.0 * sigma
    }

    #[test]
    fn single_individual() {
        let pop = population(1, 1);
        let mut rng = RandomStream::new(0);
        for _ in 0..100 {
            assert_eq!(linear_ranking_select(&pop, &mut rng).unwrap(), 0);
        }
    }

    #[test]
    fn frequencies_follow_rank() {
        for size in [2usize, 3] {
            let pop = population(size, 40 + size as u64);
            let ranking = LinearRanking::new(&pop).unwrap();
            let mut rng = RandomStream::new(size as u64);
            let trials = 10_000;
            let mut counts = vec![0usize; size];
            for _ in 0..trials {
                counts[ranking.select(&mut rng)] += 1;
            }
            let total = (size * (size + 1) / 2) as f64;
            for (rank, &index) in ranking.ranked().iter().enumerate() {
                let p = (size - rank) as f64 / total;
                assert!(within_three_sigma(counts[index], trials, p), "{counts:?}");
            }
        }
    }

    #[test]
    fn stale_is_rejected() {
        let mut pop = population(3, 5);
        pop.push(Individual::new(Numbering::identity(16)));
        assert!(matches!(
            linear_ranking_select(&pop, &mut RandomStream::new(0)),
            Err(Error::StaleFitness(3))
        ));
    }
}
