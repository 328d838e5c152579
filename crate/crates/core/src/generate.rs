//! Synthetic test meshes.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::mesh::MeshGraph;
use crate::rng::RandomStream;

/// Recipe for a generated mesh. Generation is a pure function of the spec.
#[derive(Debug, Clone, PartialEq)]
pub enum MeshSpec {
    /// `rows × cols` lattice, each cell split into two triangles by the
    /// diagonal from `(a, b)` to `(a + 1, b + 1)`. Node `(a, b)` has index
    /// `a * cols + b`.
    TriangulatedGrid { rows: usize, cols: usize },
    /// Erdős–Rényi edges at `edge_probability`, unioned with a random
    /// spanning tree so the result is always connected.
    RandomConnected {
        node_count: usize,
        edge_probability: f64,
        seed: u64,
    },
}

impl MeshSpec {
    pub fn grid(rows: usize, cols: usize) -> Self {
        MeshSpec::TriangulatedGrid { rows, cols }
    }

    pub fn random(node_count: usize, edge_probability: f64, seed: u64) -> Self {
        MeshSpec::RandomConnected {
            node_count,
            edge_probability,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            MeshSpec::TriangulatedGrid { rows, cols } => {
                if rows < 2 || cols < 2 {
                    return Err(Error::Spec(format!(
                        "grid needs at least 2 rows and 2 columns, got {rows}x{cols}"
                    )));
                }
            }
            MeshSpec::RandomConnected {
                node_count,
                edge_probability,
                ..
            } => {
                if node_count < 2 {
                    return Err(Error::Spec(format!(
                        "random mesh needs at least 2 nodes, got {node_count}"
                    )));
                }
                if !(edge_probability > 0.0 && edge_probability <= 1.0) {
                    return Err(Error::Spec(format!(
                        "edge probability must lie in (0, 1], got {edge_probability}"
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn generate_mesh(spec: &MeshSpec) -> Result<MeshGraph> {
    spec.validate()?;
    match *spec {
        MeshSpec::TriangulatedGrid { rows, cols } => {
            let id = |a: usize, b: usize| a * cols + b;
            let mut edges = Vec::with_capacity(3 * rows * cols);
            for a in 0..rows {
                for b in 0..cols {
                    if b + 1 < cols {
                        edges.push((id(a, b), id(a, b + 1)));
                    }
                    if a + 1 < rows {
                        edges.push((id(a, b), id(a + 1, b)));
                        if b + 1 < cols {
                            edges.push((id(a, b), id(a + 1, b + 1)));
                        }
                    }
                }
            }
            MeshGraph::from_edges(rows * cols, &edges)
        }
        MeshSpec::RandomConnected {
            node_count,
            edge_probability,
            seed,
        } => {
            let mut rng = RandomStream::new(seed);
            let mut edges = Vec::new();
            for a in 0..node_count {
                for b in a + 1..node_count {
                    if rng.random::<f64>() < edge_probability {
                        edges.push((a, b));
                    }
                }
            }
            let mut order: Vec<usize> = (0..node_count).collect();
            order.shuffle(&mut rng);
            for i in 1..node_count {
                let j = rng.random_range(0..i);
                edges.push((order[i], order[j]));
            }
            MeshGraph::from_edges(node_count, &edges)
        }
    }
}
