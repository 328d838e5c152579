use bandmin::engine::EvolutionConfig;
use bandmin::{
    bandwidth, bandwidth_delta, evolve, gibbs_number, node_contribution, MeshFormat, MeshGraph,
    Numbering,
};

const EXAMPLE_MESH: &str = "(2 3 4)(1 3 5)(1 2 4 5 6)(1 3 6 7)(2 3 6 8)(3 4 5 7 8)(4 6 8)(5 6 7)";

fn mesh() -> MeshGraph {
    MeshGraph::parse(EXAMPLE_MESH, MeshFormat::Inline).unwrap()
}

#[test]
fn worked_example_terms() {
    let mesh = mesh();
    let id = Numbering::identity(8);
    let terms: Vec<u64> = (0..8).map(|i| node_contribution(&mesh, &id, i)).collect();
    assert_eq!(terms, [3, 3, 3, 3, 3, 2, 1, 0]);
    assert_eq!(bandwidth(&mesh, &id).value(), 18);
}

#[test]
fn inline_text_round_trips() {
    let mesh = mesh();
    assert_eq!(mesh.write(MeshFormat::Inline).trim(), EXAMPLE_MESH);
}

#[test]
fn swaps_of_extreme_nodes() {
    let mesh = mesh();
    let id = Numbering::identity(8);
    assert_eq!(bandwidth_delta(&mesh, &id, (0, 7)).unwrap(), 5);
    assert_eq!(bandwidth_delta(&mesh, &id, (6, 7)).unwrap(), 0);
    let mut swapped = id.clone();
    swapped.swap(0, 7);
    assert_eq!(bandwidth(&mesh, &swapped).value(), 23);
}

#[test]
fn evolution_reaches_the_optimum() {
    let mesh = mesh();
    let config = EvolutionConfig {
        max_evaluations: 2_000,
        ..EvolutionConfig::es(1, 7)
    };
    let trace = evolve(&mesh, &config).unwrap();
    assert_eq!(
        trace.gibbs_baseline,
        bandwidth(&mesh, &gibbs_number(&mesh).unwrap())
    );
    assert_eq!(trace.best().value(), 18);
    assert!(trace.is_monotone());
}
