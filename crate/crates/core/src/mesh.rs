//! The mesh adjacency graph and its two text formats.
//!
//! Only the "neighbor of" relation matters for numbering, so a mesh is an
//! undirected simple graph stored in compressed adjacency form. Nodes are
//! 0-based in the API and 1-based in files.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Text encoding of a mesh.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MeshFormat {
    /// Header line `N`, then N lines of ascending 1-based neighbor indices.
    #[default]
    Canonical,
    /// Parenthesized groups, one per node: `(2 3 4)(1 3 5)...`.
    Inline,
}

impl FromStr for MeshFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "canonical" => Ok(MeshFormat::Canonical),
            "inline" => Ok(MeshFormat::Inline),
            other => Err(Error::Config(format!("unknown mesh format `{other}`"))),
        }
    }
}

impl MeshFormat {
    /// Guesses the format from the first non-blank character.
    pub fn detect(text: &str) -> MeshFormat {
        match text.trim_start().chars().next() {
            Some('(') => MeshFormat::Inline,
            _ => MeshFormat::Canonical,
        }
    }
}

/// Immutable undirected adjacency structure.
///
/// Invariants: symmetric, no self-loops, no duplicate neighbors, every
/// neighbor list sorted ascending, no isolated nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeshGraph {
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    connected: bool,
}

impl MeshGraph {
    /// Builds a mesh from per-node neighbor lists (0-based), validating
    /// every invariant. Lists may be given in any order.
    pub fn from_adjacency(mut adjacency: Vec<Vec<usize>>) -> Result<Self> {
        let n = adjacency.len();
        if n == 0 {
            return Err(Error::EmptyMesh);
        }
        for (node, list) in adjacency.iter_mut().enumerate() {
            for &neighbor in list.iter() {
                if neighbor >= n {
                    return Err(Error::Range {
                        node,
                        neighbor,
                        node_count: n,
                    });
                }
                if neighbor == node {
                    return Err(Error::SelfLoop { node });
                }
            }
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateNeighbor {
                    node,
                    neighbor: w[0],
                });
            }
            if list.is_empty() {
                return Err(Error::IsolatedNode { node });
            }
        }
        for (node, list) in adjacency.iter().enumerate() {
            for &neighbor in list {
                if adjacency[neighbor].binary_search(&node).is_err() {
                    return Err(Error::Asymmetry { node, neighbor });
                }
            }
        }

        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut neighbors = Vec::with_capacity(adjacency.iter().map(Vec::len).sum());
        for list in &adjacency {
            neighbors.extend_from_slice(list);
            offsets.push(neighbors.len());
        }
        let mut mesh = MeshGraph {
            offsets,
            neighbors,
            connected: false,
        };
        mesh.connected = mesh.sweep_reaches_all();
        Ok(mesh)
    }

    /// Builds a mesh from an undirected edge list (0-based). Duplicate edges
    /// in either orientation are merged.
    pub fn from_edges(node_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); node_count];
        for &(a, b) in edges {
            if a >= node_count || b >= node_count {
                let (node, neighbor) = if a >= node_count { (b, a) } else { (a, b) };
                return Err(Error::Range {
                    node,
                    neighbor,
                    node_count,
                });
            }
            if a == b {
                return Err(Error::SelfLoop { node: a });
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Self::from_adjacency(adjacency)
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Sorted neighbors of `node`.
    #[inline]
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.neighbors[self.offsets[node]..self.offsets[node + 1]]
    }

    #[inline]
    pub fn degree(&self, node: usize) -> usize {
        self.offsets[node + 1] - self.offsets[node]
    }

    pub fn are_neighbors(&self, a: usize, b: usize) -> bool {
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// True iff one breadth-first sweep from node 0 reaches every node.
    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// Iterates each undirected edge once, as `(low, high)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |a| {
            self.neighbors(a)
                .iter()
                .copied()
                .filter(move |&b| b > a)
                .map(move |b| (a, b))
        })
    }

    fn sweep_reaches_all(&self) -> bool {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(node) = queue.pop_front() {
            for &next in self.neighbors(node) {
                if !seen[next] {
                    seen[next] = true;
                    reached += 1;
                    queue.push_back(next);
                }
            }
        }
        reached == n
    }

    /// Parses a mesh in the given format.
    pub fn parse(text: &str, format: MeshFormat) -> Result<Self> {
        let adjacency = match format {
            MeshFormat::Canonical => parse_canonical(text)?,
            MeshFormat::Inline => parse_inline(text)?,
        };
        Self::from_adjacency(adjacency)
    }

    /// Serializes the mesh. `parse(write(m, f), f) == m` for both formats.
    pub fn write(&self, format: MeshFormat) -> String {
        let mut out = String::new();
        match format {
            MeshFormat::Canonical => {
                let _ = writeln!(out, "{}", self.node_count());
                for node in 0..self.node_count() {
                    let line: Vec<String> = self
                        .neighbors(node)
                        .iter()
                        .map(|&m| (m + 1).to_string())
                        .collect();
                    let _ = writeln!(out, "{}", line.join(" "));
                }
            }
            MeshFormat::Inline => {
                for node in 0..self.node_count() {
                    let group: Vec<String> = self
                        .neighbors(node)
                        .iter()
                        .map(|&m| (m + 1).to_string())
                        .collect();
                    let _ = write!(out, "({})", group.join(" "));
                }
                out.push('\n');
            }
        }
        out
    }
}

fn parse_index(token: &str, line: usize, offset: usize) -> Result<usize> {
    let value: usize = token.parse().map_err(|_| Error::Parse {
        line,
        offset,
        message: format!("expected a positive integer, found `{token}`"),
    })?;
    if value == 0 {
        return Err(Error::Parse {
            line,
            offset,
            message: "node indices are 1-based".into(),
        });
    }
    Ok(value)
}

/// Splits a line into whitespace-separated tokens with their byte offsets.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_ascii_whitespace()
        .map(move |tok| (tok.as_ptr() as usize - line.as_ptr() as usize, tok))
}

fn range_check(node: usize, value: usize, n: usize) -> Result<usize> {
    if value > n {
        Err(Error::Range {
            node,
            neighbor: value - 1,
            node_count: n,
        })
    } else {
        Ok(value - 1)
    }
}

fn parse_canonical(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut lines = text.lines().enumerate();
    let (header_no, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or(Error::EmptyMesh)?;
    let mut head = tokens(header);
    let (offset, tok) = head.next().ok_or(Error::EmptyMesh)?;
    let n = parse_index(tok, header_no + 1, offset)?;
    if let Some((offset, tok)) = head.next() {
        return Err(Error::Parse {
            line: header_no + 1,
            offset,
            message: format!("unexpected token `{tok}` after node count"),
        });
    }

    let mut adjacency = Vec::with_capacity(n);
    for (line_no, line) in lines {
        if adjacency.len() == n {
            if line.trim().is_empty() {
                continue;
            }
            return Err(Error::Parse {
                line: line_no + 1,
                offset: 0,
                message: format!("more than {n} adjacency lines"),
            });
        }
        let node = adjacency.len();
        let list = tokens(line)
            .map(|(offset, tok)| {
                parse_index(tok, line_no + 1, offset).and_then(|v| range_check(node, v, n))
            })
            .collect::<Result<Vec<_>>>()?;
        adjacency.push(list);
    }
    if adjacency.len() != n {
        return Err(Error::Parse {
            line: text.lines().count(),
            offset: 0,
            message: format!("expected {n} adjacency lines, found {}", adjacency.len()),
        });
    }
    Ok(adjacency)
}

fn parse_inline(text: &str) -> Result<Vec<Vec<usize>>> {
    // Groups may span lines; positions are reported per line.
    let mut raw: Vec<Vec<(usize, usize, usize)>> = Vec::new();
    let mut current: Option<Vec<(usize, usize, usize)>> = None;
    for (line_no, line) in text.lines().enumerate() {
        let bytes = line.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            match c {
                b'(' => {
                    if current.is_some() {
                        return Err(Error::Parse {
                            line: line_no + 1,
                            offset: i,
                            message: "nested `(`".into(),
                        });
                    }
                    current = Some(Vec::new());
                    i += 1;
                }
                b')' => {
                    let group = current.take().ok_or_else(|| Error::Parse {
                        line: line_no + 1,
                        offset: i,
                        message: "unmatched `)`".into(),
                    })?;
                    raw.push(group);
                    i += 1;
                }
                c if c.is_ascii_whitespace() => i += 1,
                _ => {
                    let start = i;
                    while i < bytes.len()
                        && !bytes[i].is_ascii_whitespace()
                        && bytes[i] != b'('
                        && bytes[i] != b')'
                    {
                        i += 1;
                    }
                    let tok = &line[start..i];
                    let group = current.as_mut().ok_or_else(|| Error::Parse {
                        line: line_no + 1,
                        offset: start,
                        message: format!("token `{tok}` outside a group"),
                    })?;
                    let value = parse_index(tok, line_no + 1, start)?;
                    group.push((value, line_no + 1, start));
                }
            }
        }
    }
    if current.is_some() {
        return Err(Error::Parse {
            line: text.lines().count(),
            offset: 0,
            message: "unterminated group".into(),
        });
    }
    if raw.is_empty() {
        return Err(Error::EmptyMesh);
    }
    let n = raw.len();
    raw.into_iter()
        .enumerate()
        .map(|(node, group)| {
            group
                .into_iter()
                .map(|(value, _, _)| range_check(node, value, n))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const EXAMPLE_MESH: &str =
        "(2 3 4)(1 3 5)(1 2 4 5 6)(1 3 6 7)(2 3 6 8)(3 4 5 7 8)(4 6 8)(5 6 7)";

    #[test]
    fn parses_inline_example() {
        let mesh = MeshGraph::parse(EXAMPLE_MESH, MeshFormat::Inline).unwrap();
        assert_eq!(mesh.node_count(), 8);
        assert_eq!(mesh.neighbors(2), &[0, 1, 3, 4, 5]);
        assert_eq!(mesh.edge_count(), 15);
        assert!(mesh.is_connected());
    }

    #[test]
    fn writes_inline_example() {
        let mesh = MeshGraph::parse(EXAMPLE_MESH, MeshFormat::Inline).unwrap();
        assert_eq!(mesh.write(MeshFormat::Inline).trim(), EXAMPLE_MESH);
    }

    #[test]
    fn canonical_path_two() {
        let mesh = MeshGraph::parse("2\n2\n1\n", MeshFormat::Canonical).unwrap();
        assert_eq!(mesh.node_count(), 2);
        assert_eq!(mesh.write(MeshFormat::Canonical), "2\n2\n1\n");
    }

    #[test]
    fn unsorted_input_is_sorted() {
        let mesh = MeshGraph::parse("3\n3 2\n1\n1\n", MeshFormat::Canonical).unwrap();
        assert_eq!(mesh.neighbors(0), &[1, 2]);
    }

    #[test]
    fn asymmetry_is_named() {
        let err = MeshGraph::parse("(2)(1 3)(2 4)", MeshFormat::Inline).unwrap_err();
        // node 3 lists 4, which does not exist in a 3-node mesh
        assert!(matches!(
            err,
            Error::Range {
                node: 2,
                neighbor: 3,
                ..
            }
        ));

        let err = MeshGraph::parse("(2)(1 3)(2 1)", MeshFormat::Inline).unwrap_err();
        assert_eq!(
            err,
            Error::Asymmetry {
                node: 2,
                neighbor: 0
            }
        );
        assert!(err.to_string().contains("node 3 lists 1"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            MeshGraph::parse("2\n1\n1\n", MeshFormat::Canonical),
            Err(Error::SelfLoop { node: 0 })
        ));
        assert!(matches!(
            MeshGraph::parse("2\n2 x\n1\n", MeshFormat::Canonical),
            Err(Error::Parse {
                line: 2,
                offset: 2,
                ..
            })
        ));
        assert!(matches!(
            MeshGraph::parse("3\n2\n1\n\n", MeshFormat::Canonical),
            Err(Error::IsolatedNode { node: 2 })
        ));
        assert!(matches!(
            MeshGraph::parse("2\n2 2\n1\n", MeshFormat::Canonical),
            Err(Error::DuplicateNeighbor {
                node: 0,
                neighbor: 1
            })
        ));
        assert!(matches!(
            MeshGraph::parse("(2)(1", MeshFormat::Inline),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            MeshGraph::parse("3\n2\n1\n", MeshFormat::Canonical),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            MeshGraph::parse("", MeshFormat::Canonical),
            Err(Error::EmptyMesh)
        ));
    }

    #[test]
    fn two_disjoint_edges_are_disconnected() {
        let mesh = MeshGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!mesh.is_connected());
    }

    #[test]
    fn inline_is_whitespace_insensitive() {
        let mesh = MeshGraph::parse(" ( 2 )\n(1 3)\t(2) ", MeshFormat::Inline).unwrap();
        assert_eq!(mesh.node_count(), 3);
        assert_eq!(MeshFormat::detect(" ( 2 )"), MeshFormat::Inline);
        assert_eq!(MeshFormat::detect("3\n"), MeshFormat::Canonical);
    }
}
