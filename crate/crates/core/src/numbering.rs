use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A bijection from nodes to numbers.
///
/// Both nodes and numbers are 0-based here; the numbering file format
/// (one line per node, line k holding the number of node k) is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Numbering {
    number_of: Vec<usize>,
}

impl Numbering {
    pub fn identity(n: usize) -> Self {
        Numbering {
            number_of: (0..n).collect(),
        }
    }

    /// Validates that `number_of` is a permutation of `0..len`.
    pub fn from_numbers(number_of: Vec<usize>) -> Result<Self> {
        let n = number_of.len();
        let mut seen = vec![false; n];
        for (node, &x) in number_of.iter().enumerate() {
            if x >= n {
                return Err(Error::Bijection(format!(
                    "node {} has number {}, outside [1, {n}]",
                    node + 1,
                    x + 1
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::Bijection(format!(
                    "number {} is assigned more than once",
                    x + 1
                )));
            }
        }
        Ok(Numbering { number_of })
    }

    /// Numbering whose node order (number 0 first) is `order`.
    pub fn from_order(order: &[usize]) -> Result<Self> {
        let n = order.len();
        let mut number_of = vec![usize::MAX; n];
        for (number, &node) in order.iter().enumerate() {
            if node >= n || number_of[node] != usize::MAX {
                return Err(Error::Bijection(format!(
                    "node order is not a permutation (bad entry {})",
                    node + 1
                )));
            }
            number_of[node] = number;
        }
        Ok(Numbering { number_of })
    }

    pub(crate) fn from_numbers_unchecked(number_of: Vec<usize>) -> Self {
        debug_assert!(Numbering::from_numbers(number_of.clone()).is_ok());
        Numbering { number_of }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.number_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.number_of.is_empty()
    }

    #[inline]
    pub fn number_of(&self, node: usize) -> usize {
        self.number_of[node]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.number_of
    }

    /// Exchanges the numbers of two nodes.
    #[inline]
    pub fn swap(&mut self, a: usize, b: usize) {
        self.number_of.swap(a, b);
    }

    /// Nodes listed by increasing number (the inverse permutation).
    pub fn node_order(&self) -> Vec<usize> {
        let mut order = vec![0; self.len()];
        for (node, &x) in self.number_of.iter().enumerate() {
            order[x] = node;
        }
        order
    }

    /// Maps every number `k` to `N - 1 - k`.
    pub fn reversed(&self) -> Numbering {
        let n = self.len();
        Numbering {
            number_of: self.number_of.iter().map(|&x| n - 1 - x).collect(),
        }
    }

    pub fn is_bijection(&self) -> bool {
        Numbering::from_numbers(self.number_of.clone()).is_ok()
    }

    /// Parses the numbering file format: one 1-based number per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut numbers = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let tok = line.trim();
            if tok.is_empty() {
                continue;
            }
            let value: usize = tok.parse().map_err(|_| Error::Parse {
                line: line_no + 1,
                offset: line.len() - line.trim_start().len(),
                message: format!("expected a positive integer, found `{tok}`"),
            })?;
            if value == 0 {
                return Err(Error::Bijection(format!(
                    "line {} holds 0; numbers are 1-based",
                    line_no + 1
                )));
            }
            numbers.push(value - 1);
        }
        Numbering::from_numbers(numbers)
    }

    pub fn write(&self) -> String {
        let mut out = String::with_capacity(self.len() * 6);
        for &x in &self.number_of {
            let _ = writeln!(out, "{}", x + 1);
        }
        out
    }
}
