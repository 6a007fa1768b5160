//! Named graph families and the one-line spec grammar used by the CLI.
//!
//! ```text
//! spec  := term ('+' term)*
//! term  := name [':' args]
//! args  := value (',' value)*
//! ```
//!
//! `+` is disjoint union, operands numbered left to right. Vertex orders are
//! fixed per family:
//!
//! | family | vertices |
//! |---|---|
//! | `path:n` | `0-1-…-(n-1)` |
//! | `cycle:n` | `0-1-…-(n-1)-0` |
//! | `complete:n` | `0..n` |
//! | `complete-bipartite:m,n` | side of size `m` is `0..m`, the other `m..m+n` |
//! | `hypercube:n` | bitvectors, bit `i` is coordinate `i+1`; adjacent iff one bit differs |
//! | `star:k` | center `0`, leaves `1..=k` |
//! | `wheel:n` | rim cycle `0..n`, hub `n` |
//! | `fan:n` | rim path `0..n`, hub `n` |
//! | `bouquet:l1,…` | shared vertex `0`, then each cycle's remaining vertices in turn |
//! | `two-regular:l1,…` | even cycles ascending, then odd cycles ascending, each consecutive |
//! | `petersen` | outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i ~ i+5` |
//! | `empty:n` | `n` isolated vertices |
//! | `gnp:n,prob[,seed]` | Erdős–Rényi sample from a ChaCha8 stream |
//! | `example21`, `example22` | the two worked examples of minimum-degree sequences |

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::TwoRegularSpec;
use crate::graph::{disjoint_union, Graph, Vertex};
use crate::{Error, Result};

/// Seed used by `gnp` when neither the spec nor the caller provides one.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Hypercube(usize),
    Star(usize),
    Wheel(usize),
    Fan(usize),
    Bouquet(Vec<usize>),
    TwoRegular(Vec<usize>),
    Petersen,
    Empty(usize),
    Gnp { n: usize, prob: f64, seed: Option<u64> },
    Example21,
    Example22,
    Union(Vec<FamilySpec>),
}

impl FamilySpec {
    pub fn parse(text: &str) -> Result<Self> {
        Parser { src: text, pos: 0 }.spec()
    }

    /// Fills in the seed of every random term that does not carry one.
    pub fn with_default_seed(self, seed: u64) -> Self {
        match self {
            FamilySpec::Gnp { n, prob, seed: None } => FamilySpec::Gnp {
                n,
                prob,
                seed: Some(seed),
            },
            FamilySpec::Union(parts) => {
                FamilySpec::Union(parts.into_iter().map(|p| p.with_default_seed(seed)).collect())
            }
            other => other,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::CompleteBipartite(m, n) => write!(f, "complete-bipartite:{m},{n}"),
            FamilySpec::Hypercube(n) => write!(f, "hypercube:{n}"),
            FamilySpec::Star(k) => write!(f, "star:{k}"),
            FamilySpec::Wheel(n) => write!(f, "wheel:{n}"),
            FamilySpec::Fan(n) => write!(f, "fan:{n}"),
            FamilySpec::Bouquet(ls) => write!(f, "bouquet:{}", list(ls)),
            FamilySpec::TwoRegular(ls) => write!(f, "two-regular:{}", list(ls)),
            FamilySpec::Petersen => write!(f, "petersen"),
            FamilySpec::Empty(n) => write!(f, "empty:{n}"),
            FamilySpec::Gnp { n, prob, seed } => match seed {
                Some(s) => write!(f, "gnp:{n},{prob},{s}"),
                None => write!(f, "gnp:{n},{prob}"),
            },
            FamilySpec::Example21 => write!(f, "example21"),
            FamilySpec::Example22 => write!(f, "example22"),
            FamilySpec::Union(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "+")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::FamilySpec {
            position: self.pos,
            message: msg.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn spec(&mut self) -> Result<FamilySpec> {
        let mut parts = vec![self.term()?];
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('+') => {
                    self.pos += 1;
                    parts.push(self.term()?);
                }
                Some(c) => return Err(self.err(format!("unexpected character {c:?}"))),
            }
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            FamilySpec::Union(parts)
        })
    }

    fn term(&mut self) -> Result<FamilySpec> {
        self.skip_ws();
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '-')
        {
            self.pos += 1;
        }
        let name = &self.src[start..self.pos];
        if name.is_empty() {
            return Err(self.err("expected a family name"));
        }
        let args = if self.peek() == Some(':') {
            self.pos += 1;
            self.args()?
        } else {
            Vec::new()
        };
        let name_pos = start;
        let fail = |msg: String| Error::FamilySpec {
            position: name_pos,
            message: msg,
        };
        let ints = |args: &[Arg], want: Option<usize>| -> Result<Vec<usize>> {
            if let Some(w) = want {
                if args.len() != w {
                    return Err(fail(format!("{name} takes {w} argument(s), got {}", args.len())));
                }
            }
            args.iter()
                .map(|a| match a.value {
                    ArgValue::Int(v) => Ok(v),
                    ArgValue::Float(_) => Err(Error::FamilySpec {
                        position: a.pos,
                        message: "expected an integer".into(),
                    }),
                })
                .collect()
        };
        let at_least = |v: usize, min: usize, what: &str| -> Result<usize> {
            if v < min {
                Err(fail(format!("{what} must be at least {min}, got {v}")))
            } else {
                Ok(v)
            }
        };
        let spec = match name {
            "path" => FamilySpec::Path(at_least(ints(&args, Some(1))?[0], 1, "path order")?),
            "cycle" => FamilySpec::Cycle(at_least(ints(&args, Some(1))?[0], 3, "cycle length")?),
            "complete" => {
                FamilySpec::Complete(at_least(ints(&args, Some(1))?[0], 1, "complete order")?)
            }
            "complete-bipartite" => {
                let v = ints(&args, Some(2))?;
                FamilySpec::CompleteBipartite(
                    at_least(v[0], 1, "part size")?,
                    at_least(v[1], 1, "part size")?,
                )
            }
            "hypercube" => {
                let n = at_least(ints(&args, Some(1))?[0], 1, "hypercube dimension")?;
                if n > 20 {
                    return Err(fail(format!("hypercube dimension {n} exceeds 20")));
                }
                FamilySpec::Hypercube(n)
            }
            "star" => FamilySpec::Star(at_least(ints(&args, Some(1))?[0], 1, "star size")?),
            "wheel" => FamilySpec::Wheel(at_least(ints(&args, Some(1))?[0], 3, "wheel rim")?),
            "fan" => FamilySpec::Fan(at_least(ints(&args, Some(1))?[0], 2, "fan rim")?),
            "bouquet" | "two-regular" => {
                let v = ints(&args, None)?;
                if v.is_empty() {
                    return Err(fail(format!("{name} needs at least one cycle length")));
                }
                for &l in &v {
                    at_least(l, 3, "cycle length")?;
                }
                if name == "bouquet" {
                    FamilySpec::Bouquet(v)
                } else {
                    FamilySpec::TwoRegular(v)
                }
            }
            "petersen" | "example21" | "example22" => {
                if !args.is_empty() {
                    return Err(fail(format!("{name} takes no arguments")));
                }
                match name {
                    "petersen" => FamilySpec::Petersen,
                    "example21" => FamilySpec::Example21,
                    _ => FamilySpec::Example22,
                }
            }
            "empty" => FamilySpec::Empty(at_least(ints(&args, Some(1))?[0], 1, "order")?),
            "gnp" => {
                if args.len() != 2 && args.len() != 3 {
                    return Err(fail("gnp takes n,prob[,seed]".into()));
                }
                let n = ints(&args[..1], None)?[0];
                let prob = match args[1].value {
                    ArgValue::Float(x) => x,
                    ArgValue::Int(x) => x as f64,
                };
                if !(0.0..=1.0).contains(&prob) {
                    return Err(Error::FamilySpec {
                        position: args[1].pos,
                        message: format!("probability {prob} outside [0,1]"),
                    });
                }
                let seed = match args.get(2) {
                    Some(_) => Some(ints(&args[2..], None)?[0] as u64),
                    None => None,
                };
                FamilySpec::Gnp {
                    n: at_least(n, 1, "order")?,
                    prob,
                    seed,
                }
            }
            other => return Err(fail(format!("unknown family {other:?}"))),
        };
        Ok(spec)
    }

    fn args(&mut self) -> Result<Vec<Arg>> {
        let mut out = vec![self.arg()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            out.push(self.arg()?);
        }
        Ok(out)
    }

    fn arg(&mut self) -> Result<Arg> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
            self.pos += 1;
        }
        let tok = &self.src[start..self.pos];
        let value = if tok.contains('.') {
            tok.parse::<f64>().map(ArgValue::Float).ok()
        } else {
            tok.parse::<usize>().map(ArgValue::Int).ok()
        };
        match value {
            Some(value) => Ok(Arg { value, pos: start }),
            None => {
                self.pos = start;
                Err(self.err("expected a number"))
            }
        }
    }
}

struct Arg {
    value: ArgValue,
    pos: usize,
}

enum ArgValue {
    Int(usize),
    Float(f64),
}

/// Builds the graph named by `spec`.
pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    Ok(match spec {
        FamilySpec::Path(n) => path(*n),
        FamilySpec::Cycle(n) => cycle(*n)?,
        FamilySpec::Complete(n) => complete(*n),
        FamilySpec::CompleteBipartite(m, n) => complete_bipartite(*m, *n),
        FamilySpec::Hypercube(n) => hypercube(*n),
        FamilySpec::Star(k) => complete_bipartite(1, *k),
        FamilySpec::Wheel(n) => wheel(*n)?,
        FamilySpec::Fan(n) => fan(*n)?,
        FamilySpec::Bouquet(ls) => bouquet(ls)?,
        FamilySpec::TwoRegular(ls) => TwoRegularSpec::from_cycle_lengths(ls)?.graph(),
        FamilySpec::Petersen => petersen(),
        FamilySpec::Empty(n) => Graph::empty(*n),
        FamilySpec::Gnp { n, prob, seed } => gnp(*n, *prob, seed.unwrap_or(DEFAULT_SEED)),
        FamilySpec::Example21 => example21(),
        FamilySpec::Example22 => example22(),
        FamilySpec::Union(parts) => {
            let gs = parts.iter().map(generate).collect::<Result<Vec<_>>>()?;
            disjoint_union(&gs.iter().collect::<Vec<_>>())
        }
    })
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Parameter(format!("cycle length must be at least 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn complete_bipartite(m: usize, n: usize) -> Graph {
    let edges: Vec<_> = (0..m).flat_map(|u| (m..m + n).map(move |v| (u, v))).collect();
    Graph::from_edges(m + n, &edges).unwrap()
}

/// The star `K_{1,k}` with the center at vertex 0.
pub fn star(k: usize) -> Graph {
    complete_bipartite(1, k)
}

/// `Q_n` on the `2^n` bitvectors; `u ~ v` iff `u ^ v` is a single bit.
pub fn hypercube(n: usize) -> Graph {
    let p = 1usize << n;
    let edges: Vec<_> = (0..p)
        .flat_map(|v| (0..n).map(move |i| (v, v ^ (1 << i))).filter(|&(u, w)| u < w))
        .collect();
    Graph::from_edges(p, &edges).unwrap()
}

pub fn wheel(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Parameter(format!("wheel rim must be at least 3, got {n}")));
    }
    let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend((0..n).map(|i| (i, n)));
    Graph::from_edges(n + 1, &edges)
}

pub fn fan(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::Parameter(format!("fan rim must be at least 2, got {n}")));
    }
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.extend((0..n).map(|i| (i, n)));
    Graph::from_edges(n + 1, &edges)
}

/// One-point union of cycles of the given lengths.
pub fn bouquet(lengths: &[usize]) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut next = 1;
    for &l in lengths {
        if l < 3 {
            return Err(Error::Parameter(format!("cycle length must be at least 3, got {l}")));
        }
        let mut prev = 0;
        for _ in 1..l {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 0));
    }
    Graph::from_edges(next, &edges)
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    Graph::from_edges(10, &edges).unwrap()
}

pub fn gnp(n: usize, prob: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(prob) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Twelve vertices, minimum degree 2. Two of its minimum-degree sequences
/// are worked through in the guide: rooted at vertex 9 the prefix sums go
/// `0, -1, …` and the condition fails; rooted at vertex 0 (the one the search
/// finds first) they go `0, 1, 1` and certify strength 14.
pub fn example21() -> Graph {
    let edges: [(Vertex, Vertex); 15] = [
        (0, 1),
        (0, 2),
        (1, 3),
        (2, 3),
        (1, 4),
        (2, 7),
        (4, 5),
        (4, 6),
        (5, 7),
        (6, 7),
        (5, 8),
        (6, 11),
        (8, 9),
        (9, 10),
        (10, 11),
    ];
    Graph::from_edges(12, &edges).unwrap()
}

/// Fifteen vertices, minimum degree 2, strength 17, and no minimum-degree
/// sequence meets the prefix-sum condition; a sequence that deletes a
/// degree-3 vertex at its second step does.
///
/// Vertices `0..4` have degree 2 and hang off the pair `{4, 5}`; `6` is the
/// remaining degree-2 vertex, joined to `7` and `8`; `9..15` form an
/// octahedron with antipodal pairs `(9,12)`, `(10,13)`, `(11,14)`.
pub fn example22() -> Graph {
    let mut edges = Vec::new();
    for leaf in 0..4 {
        edges.push((leaf, 4));
        edges.push((leaf, 5));
    }
    edges.extend([(6, 7), (6, 8), (7, 9), (7, 10), (8, 11), (8, 14), (4, 12), (5, 13)]);
    for a in 9..15 {
        for b in a + 1..15 {
            if b - a != 3 {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(15, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(s: &str) -> Graph {
        generate(&FamilySpec::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn family_shapes() {
        let c4 = gen("cycle:4");
        assert_eq!((c4.order(), c4.size(), c4.min_degree(), c4.max_degree()), (4, 4, 2, 2));
        let q4 = gen("hypercube:4");
        assert_eq!((q4.order(), q4.size(), q4.min_degree(), q4.max_degree()), (16, 32, 4, 4));
        let w5 = gen("wheel:5");
        assert_eq!((w5.order(), w5.size(), w5.min_degree()), (6, 10, 3));
        assert_eq!(gen("complete-bipartite:4,5").min_degree(), 4);
        assert_eq!(gen("cycle:5").min_degree(), 2);
        assert_eq!(gen("petersen").degrees(), vec![3; 10]);
        let b = gen("bouquet:3,4,5");
        assert_eq!((b.order(), b.size(), b.degree(0)), (10, 12, 6));
        let f = gen("fan:4");
        assert_eq!((f.order(), f.size(), f.min_degree()), (5, 7, 2));
    }

    #[test]
    fn union_spec_sizes() {
        let g = gen("cycle:4+cycle:6+cycle:5+cycle:5+cycle:7");
        assert_eq!(g.order(), 27);
        let g = gen("hypercube:4 + complete-bipartite:4,5");
        assert_eq!((g.order(), g.min_degree()), (25, 4));
    }

    #[test]
    fn example_graph_degrees() {
        let g = example21();
        assert_eq!((g.order(), g.min_degree()), (12, 2));
        let g = example22();
        assert_eq!((g.order(), g.min_degree()), (15, 2));
        let deg2: Vec<_> = (0..15).filter(|&v| g.degree(v) == 2).collect();
        assert_eq!(deg2, vec![0, 1, 2, 3, 6]);
        assert!(g.is_connected());
    }

    #[test]
    fn parse_errors_carry_positions() {
        match FamilySpec::parse("cycle:2") {
            Err(Error::FamilySpec { position, .. }) => assert_eq!(position, 0),
            other => panic!("{other:?}"),
        }
        match FamilySpec::parse("cycle:4+wheel:x") {
            Err(Error::FamilySpec { position, .. }) => assert_eq!(position, 14),
            other => panic!("{other:?}"),
        }
        assert!(FamilySpec::parse("").is_err());
        assert!(FamilySpec::parse("frob:3").is_err());
        assert!(FamilySpec::parse("complete-bipartite:4").is_err());
        assert!(FamilySpec::parse("gnp:5,1.5").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["hypercube:5", "two-regular:4,6,5,5,7", "complete-bipartite:4,5", "cycle:3+star:2"] {
            assert_eq!(FamilySpec::parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn gnp_is_seeded() {
        assert_eq!(gen("gnp:9,0.5,7"), gen("gnp:9,0.5,7"));
        assert_ne!(gen("gnp:12,0.5,7"), gen("gnp:12,0.5,8"));
    }
}
