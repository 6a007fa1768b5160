use std::path::PathBuf;

use clap::Args;
use graph_strength::family::{self, FamilySpec};
use graph_strength::fixtures::{self, Fixture};
use graph_strength::{io, Error, Graph, Result};
use serde::Serialize;

/// Where the graph comes from. Exactly one source must be given.
#[derive(Debug, Clone, Args, Serialize)]
#[group(required = true, multiple = false)]
pub struct GraphInput {
    /// Family spec, e.g. `hypercube:4` or `two-regular:4,6,5,5,7`.
    #[arg(long)]
    pub family: Option<String>,
    /// A graph6 string.
    #[arg(long)]
    pub graph6: Option<String>,
    /// Edge-list file (`p q` header, then one `u v` per line).
    #[arg(long, value_name = "FILE")]
    pub edges: Option<PathBuf>,
    /// Graph file; `.g6`/`.graph6` is graph6, anything else an edge list.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// A stored fixture: Q5, Q6, example21 or example22.
    #[arg(long)]
    pub fixture: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SeedArg {
    /// Seed for random families that do not carry their own.
    #[arg(long, default_value_t = family::DEFAULT_SEED)]
    pub seed: u64,
}

pub struct Loaded {
    pub graph: Graph,
    pub descriptor: String,
    pub fixture: Option<Fixture>,
}

impl GraphInput {
    pub fn load(&self, seed: u64) -> Result<Loaded> {
        let plain = |graph: Graph, descriptor: String| Loaded {
            graph,
            descriptor,
            fixture: None,
        };
        if let Some(spec) = &self.family {
            let spec = FamilySpec::parse(spec)?.with_default_seed(seed);
            let g = family::generate(&spec)?;
            return Ok(plain(g, format!("family {spec}")));
        }
        if let Some(s) = &self.graph6 {
            return Ok(plain(io::parse_graph6(s.trim().as_bytes())?, format!("graph6 {}", s.trim())));
        }
        if let Some(path) = &self.edges {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            return Ok(plain(io::parse_edge_list(&text)?, format!("edges {}", path.display())));
        }
        if let Some(path) = &self.input {
            return Ok(plain(io::read_graph_file(path)?, format!("file {}", path.display())));
        }
        if let Some(name) = &self.fixture {
            let fx = fixtures::load_fixture(name)?;
            return Ok(Loaded {
                graph: fx.graph.clone(),
                descriptor: format!("fixture {name}"),
                fixture: Some(fx),
            });
        }
        Err(Error::Parameter("no graph input given".into()))
    }
}
