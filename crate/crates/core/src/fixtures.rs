//! Stored numberings: the `Q5` and `Q6` tables and the labelings of the
//! two worked example graphs.
//!
//! Each fixture is a JSON file under `fixtures/` listed in `SHA256SUMS`.
//! Loading re-checks the checksum, decodes the graph, checks that the table
//! cells (when present) agree with the label list, and re-evaluates the
//! strength against the stored expectation. The printed row and column
//! maxima of a table are informational: they are recomputed and any
//! difference is reported, not treated as an error.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::graph::Graph;
use crate::labeling::{strength_of, LowerBoundKind, Numbering, StrengthCertificate};
use crate::{io, Error, Result};

pub const FIXTURE_NAMES: [&str; 4] = ["Q5", "Q6", "example21", "example22"];

const SUMS: &str = include_str!("../fixtures/SHA256SUMS");

fn embedded(name: &str) -> Option<&'static str> {
    Some(match name {
        "Q5" => include_str!("../fixtures/Q5.json"),
        "Q6" => include_str!("../fixtures/Q6.json"),
        "example21" => include_str!("../fixtures/example21.json"),
        "example22" => include_str!("../fixtures/example22.json"),
        _ => return None,
    })
}

/// A labeling table of `Q_{a+b} ≅ Q_a × Q_b`.
///
/// Row `r` and column `c` are bit strings; the vertex in cell `(r, c)` is
/// the bitvector `c ++ r`, whose bit `k` is character `k` of that string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub cells: Vec<Vec<usize>>,
    /// Largest edge label among edges inside each row, as printed.
    pub row_max: Vec<usize>,
    /// Same for columns.
    pub col_max: Vec<usize>,
}

impl Table {
    fn vertex(&self, r: usize, c: usize) -> Result<usize> {
        let s = format!("{}{}", self.cols[c], self.rows[r]);
        s.chars().enumerate().try_fold(0usize, |acc, (k, ch)| match ch {
            '0' => Ok(acc),
            '1' => Ok(acc | 1 << k),
            _ => Err(Error::Parameter(format!("bad bit string {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureDoc {
    pub name: String,
    pub graph6: String,
    pub labels: Vec<usize>,
    pub expected_strength: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub graph: Graph,
    pub numbering: Numbering,
    pub expected_strength: usize,
    pub table: Option<Table>,
}

/// A printed row or column maximum that disagrees with the cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarginalDivergence {
    pub axis: String,
    pub index: usize,
    pub key: String,
    pub printed: usize,
    pub computed: usize,
}

fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data).iter().map(|b| format!("{b:02x}")).collect()
}

fn expected_sum(sums: &str, file: &str) -> Option<String> {
    sums.lines().find_map(|l| {
        let mut it = l.split_whitespace();
        let (hash, f) = (it.next()?, it.next()?);
        (f.trim_start_matches('*') == file).then(|| hash.to_string())
    })
}

fn fixture_err(name: &str, message: impl Into<String>) -> Error {
    Error::Fixture {
        name: name.into(),
        message: message.into(),
    }
}

/// Parses and validates fixture JSON against a checksum list.
pub fn parse_fixture(name: &str, json: &str, sums: &str) -> Result<Fixture> {
    let file = format!("{name}.json");
    let want = expected_sum(sums, &file)
        .ok_or_else(|| fixture_err(name, format!("{file} is not listed in SHA256SUMS")))?;
    let got = sha256_hex(json.as_bytes());
    if want != got {
        return Err(fixture_err(name, format!("checksum mismatch: expected {want}, got {got}")));
    }
    let doc: FixtureDoc = serde_json::from_str(json)?;
    if doc.name != name {
        return Err(fixture_err(name, format!("file declares name {:?}", doc.name)));
    }
    let graph = io::parse_graph6(doc.graph6.as_bytes())?;
    let numbering = Numbering::new(doc.labels)?;
    if numbering.order() != graph.order() {
        return Err(fixture_err(name, "label count differs from vertex count"));
    }
    if let Some(t) = &doc.table {
        for (r, row) in t.cells.iter().enumerate() {
            for (c, &cell) in row.iter().enumerate() {
                let v = t.vertex(r, c)?;
                if numbering.label(v) != cell {
                    return Err(fixture_err(
                        name,
                        format!("cell ({r}, {c}) reads {cell}, label list has {}", numbering.label(v)),
                    ));
                }
            }
        }
    }
    let s = strength_of(&graph, &numbering)?;
    if s != doc.expected_strength {
        return Err(fixture_err(
            name,
            format!("strength evaluates to {s}, expected {}", doc.expected_strength),
        ));
    }
    Ok(Fixture {
        name: doc.name,
        graph,
        numbering,
        expected_strength: doc.expected_strength,
        table: doc.table,
    })
}

/// Loads one of [`FIXTURE_NAMES`] from the copies compiled into the crate.
pub fn load_fixture(name: &str) -> Result<Fixture> {
    let json = embedded(name).ok_or_else(|| Error::UnknownFixture(name.into()))?;
    parse_fixture(name, json, SUMS)
}

/// Loads a fixture from a directory holding `<name>.json` and `SHA256SUMS`.
pub fn load_fixture_from_dir(dir: &Path, name: &str) -> Result<Fixture> {
    if !FIXTURE_NAMES.contains(&name) {
        return Err(Error::UnknownFixture(name.into()));
    }
    let read = |f: &str| {
        std::fs::read_to_string(dir.join(f)).map_err(|e| Error::Io(format!("{}: {e}", dir.join(f).display())))
    };
    parse_fixture(name, &read(&format!("{name}.json"))?, &read("SHA256SUMS")?)
}

/// Writes the compiled-in fixtures and checksum list into `dir`.
pub fn export_fixtures(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(e.to_string()))?;
    for name in FIXTURE_NAMES {
        std::fs::write(dir.join(format!("{name}.json")), embedded(name).unwrap())
            .map_err(|e| Error::Io(e.to_string()))?;
    }
    std::fs::write(dir.join("SHA256SUMS"), SUMS).map_err(|e| Error::Io(e.to_string()))
}

impl Fixture {
    /// Recomputes every row and column maximum and lists those that differ
    /// from the printed margins.
    pub fn marginal_divergences(&self) -> Result<Vec<MarginalDivergence>> {
        let Some(t) = &self.table else {
            return Ok(vec![]);
        };
        let f = &self.numbering;
        let max_within = |cells: &[usize]| {
            cells
                .iter()
                .enumerate()
                .flat_map(|(i, &u)| cells[i + 1..].iter().map(move |&v| (u, v)))
                .filter(|&(u, v)| self.graph.has_edge(u, v))
                .map(|(u, v)| f.label(u) + f.label(v))
                .max()
                .unwrap_or(0)
        };
        let mut out = Vec::new();
        for (r, key) in t.rows.iter().enumerate() {
            let cells = (0..t.cols.len()).map(|c| t.vertex(r, c)).collect::<Result<Vec<_>>>()?;
            let computed = max_within(&cells);
            if computed != t.row_max[r] {
                out.push(MarginalDivergence {
                    axis: "row".into(),
                    index: r,
                    key: key.clone(),
                    printed: t.row_max[r],
                    computed,
                });
            }
        }
        for (c, key) in t.cols.iter().enumerate() {
            let cells = (0..t.rows.len()).map(|r| t.vertex(r, c)).collect::<Result<Vec<_>>>()?;
            let computed = max_within(&cells);
            if computed != t.col_max[c] {
                out.push(MarginalDivergence {
                    axis: "col".into(),
                    index: c,
                    key: key.clone(),
                    printed: t.col_max[c],
                    computed,
                });
            }
        }
        Ok(out)
    }

    pub fn certificate(&self, bound: LowerBoundKind) -> Result<StrengthCertificate> {
        StrengthCertificate::build(&self.graph, self.numbering.clone(), bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family;

    #[test]
    fn all_fixtures_load() {
        for name in FIXTURE_NAMES {
            let fx = load_fixture(name).unwrap();
            assert_eq!(fx.numbering.strength(&fx.graph).unwrap(), fx.expected_strength);
        }
    }

    #[test]
    fn fixture_graphs() {
        assert_eq!(load_fixture("Q5").unwrap().graph, family::hypercube(5));
        assert_eq!(load_fixture("Q6").unwrap().graph, family::hypercube(6));
        assert_eq!(load_fixture("example21").unwrap().graph, family::example21());
        assert_eq!(load_fixture("example22").unwrap().graph, family::example22());
    }

    #[test]
    fn q5_margins_match_q6_margins_differ() {
        assert!(load_fixture("Q5").unwrap().marginal_divergences().unwrap().is_empty());
        let d = load_fixture("Q6").unwrap().marginal_divergences().unwrap();
        let summary: Vec<_> = d.iter().map(|m| (m.axis.as_str(), m.index, m.printed, m.computed)).collect();
        assert_eq!(summary, vec![("row", 2, 75, 77), ("row", 6, 75, 72), ("col", 3, 73, 74)]);
    }

    #[test]
    fn unknown_and_tampered() {
        assert!(matches!(load_fixture("Q7"), Err(Error::UnknownFixture(_))));
        let json = embedded("Q5").unwrap().replacen("40", "41", 1);
        assert!(matches!(parse_fixture("Q5", &json, SUMS), Err(Error::Fixture { .. })));
    }
}
