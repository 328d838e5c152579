use std::path::PathBuf;

use bandmin::{generate_mesh, MeshFormat, MeshGraph, MeshSpec};

use crate::error::{CliError, Result};
use crate::io::read_text;

/// Where a mesh comes from: a file or a generator spec.
#[derive(Debug, Clone, PartialEq)]
pub enum MeshSource {
    File {
        path: PathBuf,
        format: Option<MeshFormat>,
    },
    Generated(MeshSpec),
}

impl MeshSource {
    pub fn load(&self) -> Result<MeshGraph> {
        match self {
            MeshSource::File { path, format } => {
                let text = read_text(path)?;
                let format = format.unwrap_or_else(|| MeshFormat::detect(&text));
                Ok(MeshGraph::parse(&text, format)?)
            }
            MeshSource::Generated(spec) => Ok(generate_mesh(spec)?),
        }
    }
}

/// Parses `RxC` (also accepts `R×C` and `R,C`).
pub fn parse_grid(text: &str) -> Result<MeshSpec> {
    let bad = || CliError::Usage(format!("expected grid as RxC, found `{text}`"));
    let (r, c) = text.split_once(['x', 'X', '×', ',']).ok_or_else(bad)?;
    let rows = r.trim().parse().map_err(|_| bad())?;
    let cols = c.trim().parse().map_err(|_| bad())?;
    Ok(MeshSpec::grid(rows, cols))
}

/// Parses the three values `N P S` of a random-connected spec.
pub fn parse_random(values: &[impl AsRef<str>]) -> Result<MeshSpec> {
    let joined = values
        .iter()
        .map(AsRef::as_ref)
        .collect::<Vec<_>>()
        .join(" ");
    let bad = || CliError::Usage(format!("expected random spec as `N P S`, found `{joined}`"));
    let [n, p, s] = values else {
        return Err(bad());
    };
    Ok(MeshSpec::random(
        n.as_ref().parse().map_err(|_| bad())?,
        p.as_ref().parse().map_err(|_| bad())?,
        s.as_ref().parse().map_err(|_| bad())?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_syntax() {
        assert_eq!(parse_grid("39x39").unwrap(), MeshSpec::grid(39, 39));
        assert_eq!(parse_grid("3,4").unwrap(), MeshSpec::grid(3, 4));
        assert!(parse_grid("39").is_err());
        assert!(parse_grid("ax3").is_err());
    }

    #[test]
    fn random_syntax() {
        assert_eq!(
            parse_random(&["10", "0.2", "7"]).unwrap(),
            MeshSpec::random(10, 0.2, 7)
        );
        assert!(parse_random(&["10", "0.2"]).is_err());
    }
}
