use crate::error::{Error, Result};
use crate::numbering::Numbering;

/// A reference numbering plus an ordered list of node swaps.
///
/// Any swap list decodes to a valid numbering, and many lists decode to the
/// same one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranspositionGenome {
    reference: Numbering,
    swaps: Vec<(usize, usize)>,
}

impl TranspositionGenome {
    pub fn new(reference: Numbering) -> Self {
        TranspositionGenome {
            reference,
            swaps: Vec::new(),
        }
    }

    pub fn with_swaps(reference: Numbering, swaps: Vec<(usize, usize)>) -> Result<Self> {
        let n = reference.len();
        for &(a, b) in &swaps {
            if a == b {
                return Err(Error::DegenerateSwap(a));
            }
            if a >= n || b >= n {
                return Err(Error::Range {
                    node: a.min(b),
                    neighbor: a.max(b),
                    node_count: n,
                });
            }
        }
        Ok(TranspositionGenome { reference, swaps })
    }

    /// Expresses `target` relative to `reference` with at most N - 1 swaps.
    pub fn encode(reference: Numbering, target: &Numbering) -> Self {
        let swaps = swaps_between(&reference, target);
        TranspositionGenome { reference, swaps }
    }

    pub fn reference(&self) -> &Numbering {
        &self.reference
    }

    pub fn swaps(&self) -> &[(usize, usize)] {
        &self.swaps
    }

    pub fn push_swap(&mut self, a: usize, b: usize) {
        debug_assert_ne!(a, b);
        self.swaps.push((a, b));
    }

    /// Appends the swaps that turn `from` (this genome's current decoding)
    /// into `to`.
    pub fn extend_towards(&mut self, from: &Numbering, to: &Numbering) {
        self.swaps.extend(swaps_between(from, to));
    }

    /// Applies the swaps left to right to the reference.
    pub fn decode(&self) -> Numbering {
        let mut numbering = self.reference.clone();
        for &(a, b) in &self.swaps {
            numbering.swap(a, b);
        }
        numbering
    }

    pub fn same_reference(&self, other: &TranspositionGenome) -> bool {
        self.reference == other.reference
    }
}

/// Node swaps that transform `from` into `to`, cycle by cycle.
pub fn swaps_between(from: &Numbering, to: &Numbering) -> Vec<(usize, usize)> {
    let mut current = from.clone();
    let mut holder = current.node_order();
    let mut swaps = Vec::new();
    for v in 0..current.len() {
        while current.number_of(v) != to.number_of(v) {
            let u = holder[to.number_of(v)];
            let (xv, xu) = (current.number_of(v), current.number_of(u));
            current.swap(v, u);
            holder[xv] = u;
            holder[xu] = v;
            swaps.push((v, u));
        }
    }
    swaps
}
