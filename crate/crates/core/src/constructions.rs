//! Explicit strength labelings: disjoint unions of cycles, the bipartite
//! doubling `G ↦ G × K2`, and hypercubes.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex, VertexSet};
use crate::labeling::{strength_of, LowerBoundKind, Numbering, StrengthCertificate};
use crate::{Error, Result};

/// A 2-regular graph `Σ C_{2m_i} + Σ C_{2n_j+1}`, stored as the half
/// lengths `m_i ≥ 2` and `n_j ≥ 1`, each list sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoRegularSpec {
    pub even: Vec<usize>,
    pub odd: Vec<usize>,
}

impl TwoRegularSpec {
    pub fn new(mut even: Vec<usize>, mut odd: Vec<usize>) -> Result<Self> {
        if even.is_empty() && odd.is_empty() {
            return Err(Error::Parameter("at least one cycle is required".into()));
        }
        if let Some(&m) = even.iter().find(|&&m| m < 2) {
            return Err(Error::Parameter(format!("even half length must be at least 2, got {m}")));
        }
        if let Some(&n) = odd.iter().find(|&&n| n < 1) {
            return Err(Error::Parameter(format!("odd half length must be at least 1, got {n}")));
        }
        even.sort_unstable();
        odd.sort_unstable();
        Ok(TwoRegularSpec { even, odd })
    }

    /// From cycle lengths in any order, each at least 3.
    pub fn from_cycle_lengths(lengths: &[usize]) -> Result<Self> {
        if let Some(&l) = lengths.iter().find(|&&l| l < 3) {
            return Err(Error::Parameter(format!("cycle length must be at least 3, got {l}")));
        }
        let even = lengths.iter().filter(|&&l| l % 2 == 0).map(|l| l / 2).collect();
        let odd = lengths.iter().filter(|&&l| l % 2 == 1).map(|l| l / 2).collect();
        Self::new(even, odd)
    }

    /// Reads the cycle lengths off a 2-regular graph.
    pub fn recognize(g: &Graph) -> Result<Self> {
        if g.order() == 0 || g.degrees().iter().any(|&d| d != 2) {
            return Err(Error::Precondition("graph is not 2-regular".into()));
        }
        let lengths: Vec<usize> = g.components().iter().map(Vec::len).collect();
        Self::from_cycle_lengths(&lengths)
    }

    /// Cycle lengths in graph order: even cycles, then odd, each ascending.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.even
            .iter()
            .map(|m| 2 * m)
            .chain(self.odd.iter().map(|n| 2 * n + 1))
            .collect()
    }

    pub fn order(&self) -> usize {
        self.cycle_lengths().iter().sum()
    }

    pub fn odd_count(&self) -> usize {
        self.odd.len()
    }

    /// `max(p + 2, p + 1 + k)` with `k` odd cycles.
    pub fn strength(&self) -> usize {
        let p = self.order();
        (p + 2).max(p + 1 + self.odd_count())
    }

    /// The cycles laid out consecutively: a cycle of length `l` starting at
    /// `o` uses `o..o+l` with edges `o+i ~ o+i+1` and `o+l−1 ~ o`.
    pub fn graph(&self) -> Graph {
        let mut edges = Vec::new();
        let mut o = 0;
        for l in self.cycle_lengths() {
            edges.extend((0..l).map(|i| (o + i, o + (i + 1) % l)));
            o += l;
        }
        Graph::from_edges(o, &edges).expect("disjoint cycles are simple")
    }

    /// Label sequence for each cycle, read around the cycle.
    ///
    /// Even cycle `i` with `L` low labels already used reads
    /// `L+1, p−L, L+2, p−L−1, …, L+m_i, p−L−m_i+1`. Odd cycle `j` starts
    /// after the even cycles, with `lo = M + Σ_{l<j}(n_l+1)` and
    /// `hi = p − M − Σ_{l<j} n_l`, and reads
    /// `lo+1, hi, lo+2, hi−1, …, hi−n_j+1, lo+n_j+1`.
    pub fn label_blocks(&self) -> Vec<Vec<usize>> {
        let p = self.order();
        let mut blocks = Vec::new();
        let mut used = 0;
        for &m in &self.even {
            let mut b = Vec::with_capacity(2 * m);
            for k in 0..m {
                b.push(used + k + 1);
                b.push(p - used - k);
            }
            used += m;
            blocks.push(b);
        }
        let (mut lo, mut hi) = (used, p - used);
        for &n in &self.odd {
            let mut b = Vec::with_capacity(2 * n + 1);
            for k in 0..n {
                b.push(lo + k + 1);
                b.push(hi - k);
            }
            b.push(lo + n + 1);
            lo += n + 1;
            hi -= n;
            blocks.push(b);
        }
        blocks
    }
}

/// Bound that certifies the 2-regular construction: the independence bound
/// when there is an odd cycle and the graph is small enough for exact `α`,
/// otherwise `p + δ`.
fn two_regular_bound(spec: &TwoRegularSpec) -> LowerBoundKind {
    if spec.odd_count() >= 1 && spec.order() <= crate::bounds::ALPHA_CAP {
        LowerBoundKind::Independence
    } else {
        LowerBoundKind::MinDegree
    }
}

/// Certificate for the construction on [`TwoRegularSpec::graph`].
pub fn label_two_regular(spec: &TwoRegularSpec) -> Result<StrengthCertificate> {
    let g = spec.graph();
    let labels: Vec<usize> = spec.label_blocks().concat();
    let f = Numbering::new(labels)?;
    StrengthCertificate::build(&g, f, two_regular_bound(spec))
}

/// The same construction on an arbitrary 2-regular graph: each cycle is
/// read from its smallest vertex towards its smaller neighbor, and cycles
/// are matched to label blocks by length.
pub fn label_two_regular_graph(g: &Graph) -> Result<StrengthCertificate> {
    let spec = TwoRegularSpec::recognize(g)?;
    let mut comps: Vec<Vec<Vertex>> = g
        .components()
        .into_iter()
        .map(|c| {
            let mut walk = vec![c[0]];
            let mut prev = c[0];
            let mut cur = g.neighbors(c[0])[0];
            while cur != c[0] {
                walk.push(cur);
                let next = g.neighbors(cur).iter().copied().find(|&w| w != prev).unwrap();
                prev = cur;
                cur = next;
            }
            walk
        })
        .collect();
    // Even cycles first, then odd, each by length; ties keep vertex order.
    comps.sort_by_key(|w| (w.len() % 2, w.len()));
    let mut labels = vec![0; g.order()];
    for (walk, block) in comps.iter().zip(spec.label_blocks()) {
        for (&v, l) in walk.iter().zip(block) {
            labels[v] = l;
        }
    }
    StrengthCertificate::build(g, Numbering::new(labels)?, two_regular_bound(&spec))
}

/// A numbering of a balanced bipartite graph whose part `X` carries the
/// labels `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteNumbering {
    numbering: Numbering,
    part_x: VertexSet,
}

impl BipartiteNumbering {
    pub fn new(g: &Graph, numbering: Numbering, part_x: VertexSet) -> Result<Self> {
        let p = g.order();
        if numbering.order() != p || part_x.universe() != p {
            return Err(Error::Mismatch("numbering or part does not match the graph".into()));
        }
        if !p.is_multiple_of(2) || part_x.len() != p / 2 {
            return Err(Error::Precondition(format!(
                "parts must have equal size; |X| = {} of {p}",
                part_x.len()
            )));
        }
        if let Some((u, v)) = g.edges().find(|&(u, v)| part_x.contains(u) == part_x.contains(v)) {
            return Err(Error::Precondition(format!(
                "edge {u}-{v} lies inside one part"
            )));
        }
        let m = p / 2;
        if let Some(v) = part_x.iter().find(|&v| numbering.label(v) > m) {
            return Err(Error::Precondition(format!(
                "vertex {v} of X has label {} > {m}",
                numbering.label(v)
            )));
        }
        Ok(BipartiteNumbering { numbering, part_x })
    }

    /// Uses the even-parity class of a hypercube-style bit labeling, i.e. the
    /// side of vertex 0 in the graph's 2-coloring.
    pub fn with_side_of_zero(g: &Graph, numbering: Numbering) -> Result<Self> {
        let side = g
            .bipartition()
            .ok_or_else(|| Error::Precondition("graph is not bipartite".into()))?;
        let x = VertexSet::from_vertices(g.order(), (0..g.order()).filter(|&v| !side[v]));
        Self::new(g, numbering, x)
    }

    pub fn numbering(&self) -> &Numbering {
        &self.numbering
    }

    pub fn part_x(&self) -> &VertexSet {
        &self.part_x
    }

    /// `m = |X| = |Y|`.
    pub fn half(&self) -> usize {
        self.part_x.universe() / 2
    }
}

/// Doubles a part-ordered numbering of `G` to one of `G × K2` (vertex
/// `(v, c)` is `v + c·p`) with strength `5m + 1`:
///
/// | vertex | label |
/// |---|---|
/// | `(x, 0)` | `f(x)` |
/// | `(y, 1)` | `3m + 1 − f(y)` |
/// | `(x, 1)` | `3m + 1 − f(x)` |
/// | `(y, 0)` | `2m + f(y)` |
///
/// The new part `X̃ = {(x, 0)} ∪ {(y, 1)}` carries `1..=2m`, so the output
/// can be doubled again.
pub fn double_bipartite(g: &Graph, bn: &BipartiteNumbering) -> Result<(Graph, BipartiteNumbering)> {
    // Re-validate: the caller may pass a different graph than the one used
    // to build `bn`.
    let bn = BipartiteNumbering::new(g, bn.numbering.clone(), bn.part_x.clone())?;
    let p = g.order();
    let m = p / 2;
    let f = &bn.numbering;
    let mut labels = vec![0; 2 * p];
    let mut x_tilde = VertexSet::empty(2 * p);
    for v in 0..p {
        if bn.part_x.contains(v) {
            labels[v] = f.label(v);
            labels[v + p] = 3 * m + 1 - f.label(v);
            x_tilde.insert(v);
        } else {
            labels[v + p] = 3 * m + 1 - f.label(v);
            labels[v] = 2 * m + f.label(v);
            x_tilde.insert(v + p);
        }
    }
    let product = g.cartesian_product_k2();
    let out = BipartiteNumbering::new(&product, Numbering::new(labels)?, x_tilde)?;
    Ok((product, out))
}

/// Per-edge audit of one doubling step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublingAudit {
    pub m: usize,
    /// Edges `(x,0)-(x,1)`; each sums to `3m + 1`.
    pub x_rungs: usize,
    /// Edges `(y,0)-(y,1)`; each sums to `5m + 1`.
    pub y_rungs: usize,
    /// Edges inside a copy; each has its `X̃` end in `1..=2m`, its other
    /// end in `2m+1..=4m`, and sum at most `5m`.
    pub copy_edges: usize,
    pub strength: usize,
}

/// Checks every edge of a doubled numbering against the block structure.
pub fn audit_doubling(
    g: &Graph,
    bn: &BipartiteNumbering,
    product: &Graph,
    doubled: &BipartiteNumbering,
) -> Result<DoublingAudit> {
    let p = g.order();
    let m = p / 2;
    let big_f = &doubled.numbering;
    let fail = |msg: String| Err(Error::Mismatch(msg));
    let mut audit = DoublingAudit {
        m,
        x_rungs: 0,
        y_rungs: 0,
        copy_edges: 0,
        strength: strength_of(product, big_f)?,
    };
    for (a, b) in product.edges() {
        let sum = big_f.label(a) + big_f.label(b);
        if b == a + p {
            let expect = if bn.part_x.contains(a) { 3 * m + 1 } else { 5 * m + 1 };
            if sum != expect {
                return fail(format!("rung {a}-{b} sums to {sum}, expected {expect}"));
            }
            if bn.part_x.contains(a) {
                audit.x_rungs += 1;
            } else {
                audit.y_rungs += 1;
            }
        } else {
            let (xe, ye) = if doubled.part_x.contains(a) { (a, b) } else { (b, a) };
            let (lx, ly) = (big_f.label(xe), big_f.label(ye));
            if !(1..=2 * m).contains(&lx) || !(2 * m + 1..=4 * m).contains(&ly) || sum > 5 * m {
                return fail(format!(
                    "copy edge {a}-{b} has labels {lx}, {ly} outside the blocks for m = {m}"
                ));
            }
            audit.copy_edges += 1;
        }
    }
    if audit.strength != 5 * m + 1 {
        return fail(format!("doubled strength {} is not 5m + 1", audit.strength));
    }
    Ok(audit)
}

/// `K2` labeled `1, 2` with `X = {0}`: the start of the hypercube chain.
pub fn k2_seed() -> (Graph, BipartiteNumbering) {
    let g = crate::family::complete(2);
    let bn = BipartiteNumbering::new(
        &g,
        Numbering::identity(2),
        VertexSet::from_vertices(2, [0]),
    )
    .unwrap();
    (g, bn)
}

/// Doubles `times` times, returning each intermediate graph and numbering
/// (the input first).
pub fn doubling_chain(
    g: Graph,
    bn: BipartiteNumbering,
    times: usize,
) -> Result<Vec<(Graph, BipartiteNumbering)>> {
    let mut chain = vec![(g, bn)];
    for _ in 0..times {
        let (g, bn) = chain.last().unwrap();
        let next = double_bipartite(g, bn)?;
        chain.push(next);
    }
    Ok(chain)
}

/// Largest hypercube dimension for which a witness numbering is built.
pub const MAX_CERTIFIED_DIMENSION: u32 = 16;

/// A hypercube certificate and where its witness came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypercubeCertificate {
    pub n: u32,
    pub certificate: StrengthCertificate,
    pub source: String,
}

/// Best certified strength for `Q_n`.
///
/// `n ≤ 4`: doubling from `K2`, matched by the closed-form lower bound.
/// `n = 5, 6`: the stored table numberings (exact 40, and the bracket
/// `[76, 79]`). `n ≥ 7`: the `Q6` table doubled when it has the part
/// property, otherwise doubling from `K2`; both reach `2^n + 2^{n−2} + 1`.
pub fn hypercube_certificate(n: u32) -> Result<HypercubeCertificate> {
    crate::bounds::hypercube_lower_bound(n)?;
    if n > MAX_CERTIFIED_DIMENSION {
        return Err(Error::Parameter(format!(
            "witness numberings are built up to Q{MAX_CERTIFIED_DIMENSION}, got Q{n}"
        )));
    }
    let q = crate::family::hypercube(n as usize);
    let (witness, source) = match n {
        2..=4 => {
            let (g, bn) = k2_seed();
            let (_, last) = doubling_chain(g, bn, n as usize - 1)?.pop().unwrap();
            (last.numbering, format!("doubling K2 {} times", n - 1))
        }
        5 | 6 => {
            let fx = crate::fixtures::load_fixture(&format!("Q{n}"))?;
            (fx.numbering, format!("Q{n} table"))
        }
        _ => {
            let q6 = crate::fixtures::load_fixture("Q6")?;
            match BipartiteNumbering::with_side_of_zero(&q6.graph, q6.numbering) {
                Ok(bn) => {
                    let (_, last) = doubling_chain(q6.graph, bn, n as usize - 6)?.pop().unwrap();
                    (last.numbering, format!("Q6 table doubled {} times", n - 6))
                }
                Err(_) => {
                    let (g, bn) = k2_seed();
                    let (_, last) = doubling_chain(g, bn, n as usize - 1)?.pop().unwrap();
                    (last.numbering, format!("doubling K2 {} times", n - 1))
                }
            }
        }
    };
    let certificate = StrengthCertificate::build(&q, witness, LowerBoundKind::Hypercube)?;
    Ok(HypercubeCertificate {
        n,
        certificate,
        source,
    })
}
