//! The fitness function.
//!
//! For every node, take the largest positive gap between its number and the
//! numbers of its neighbors, then sum over all nodes. This is the total
//! upper-triangle row width of the sparse matrix whose pattern is the mesh.
//!
//! The per-node term is a *maximum*: it measures the furthest non-zero from
//! the diagonal. There is no "min" mode.

use std::fmt;
use std::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::mesh::MeshGraph;
use crate::numbering::Numbering;

/// Total bandwidth. Lower is better.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Bandwidth(pub u64);

impl Bandwidth {
    pub fn value(self) -> u64 {
        self.0
    }

    /// Applies a signed delta, as returned by [`bandwidth_delta`].
    pub fn offset(self, delta: i64) -> Bandwidth {
        Bandwidth(
            self.0
                .checked_add_signed(delta)
                .expect("bandwidth underflow"),
        )
    }
}

impl fmt::Display for Bandwidth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Add for Bandwidth {
    type Output = Bandwidth;
    fn add(self, rhs: Bandwidth) -> Bandwidth {
        Bandwidth(self.0 + rhs.0)
    }
}

impl Sub for Bandwidth {
    type Output = i64;
    fn sub(self, rhs: Bandwidth) -> i64 {
        self.0 as i64 - rhs.0 as i64
    }
}

impl std::iter::Sum for Bandwidth {
    fn sum<I: Iterator<Item = Bandwidth>>(iter: I) -> Bandwidth {
        Bandwidth(iter.map(|b| b.0).sum())
    }
}

#[inline]
fn contribution_with(mesh: &MeshGraph, node: usize, number: impl Fn(usize) -> usize) -> u64 {
    let own = number(node);
    mesh.neighbors(node)
        .iter()
        .map(|&m| number(m).saturating_sub(own))
        .max()
        .unwrap_or(0) as u64
}

/// Distance from `node`'s number to its highest-numbered neighbor, or 0 if
/// every neighbor is numbered lower.
pub fn node_contribution(mesh: &MeshGraph, numbering: &Numbering, node: usize) -> u64 {
    contribution_with(mesh, node, |v| numbering.number_of(v))
}

pub fn bandwidth(mesh: &MeshGraph, numbering: &Numbering) -> Bandwidth {
    debug_assert_eq!(mesh.node_count(), numbering.len());
    Bandwidth(
        (0..mesh.node_count())
            .map(|node| node_contribution(mesh, numbering, node))
            .sum(),
    )
}

/// [`bandwidth`] after checking that the numbering matches the mesh.
pub fn checked_bandwidth(mesh: &MeshGraph, numbering: &Numbering) -> Result<Bandwidth> {
    if mesh.node_count() != numbering.len() {
        return Err(Error::SizeMismatch {
            mesh: mesh.node_count(),
            numbering: numbering.len(),
        });
    }
    Ok(bandwidth(mesh, numbering))
}

/// Change in bandwidth caused by exchanging the numbers of `a` and `b`.
///
/// Only the two swapped nodes and their neighbors can change contribution,
/// so this costs O(deg(a) + deg(b)) contribution evaluations instead of a
/// full pass. `bandwidth(before) + delta == bandwidth(after)` exactly.
pub fn bandwidth_delta(
    mesh: &MeshGraph,
    numbering: &Numbering,
    (a, b): (usize, usize),
) -> Result<i64> {
    if a == b {
        return Err(Error::DegenerateSwap(a));
    }
    let mut affected: Vec<usize> = Vec::with_capacity(2 + mesh.degree(a) + mesh.degree(b));
    affected.push(a);
    affected.push(b);
    affected.extend_from_slice(mesh.neighbors(a));
    affected.extend_from_slice(mesh.neighbors(b));
    affected.sort_unstable();
    affected.dedup();

    let (na, nb) = (numbering.number_of(a), numbering.number_of(b));
    let after = |v: usize| {
        if v == a {
            nb
        } else if v == b {
            na
        } else {
            numbering.number_of(v)
        }
    };
    let mut delta = 0i64;
    for &v in &affected {
        delta += contribution_with(mesh, v, after) as i64;
        delta -= node_contribution(mesh, numbering, v) as i64;
    }
    Ok(delta)
}
