//! Genome representations and variation operators.

pub mod crossover;
pub mod genome;
pub mod init;
pub mod mutation;

pub use crossover::{
    breadth_first_crossover, breadth_first_crossover_from, difference_crossover, edge_crossover,
    transposition_crossover, transposition_crossover_at, Crossover,
};
pub use genome::TranspositionGenome;
pub use init::{gibbs_init, perturb_baseline, point_init, random_init, Initializer};
pub use mutation::{
    choose_mutation, mutate_inversion, mutate_neighbor_permutation, mutate_neighbor_transposition,
    mutate_origin, mutate_random_transposition, MutationKind, MutationWeights,
};
