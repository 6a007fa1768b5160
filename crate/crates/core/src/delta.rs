//! Deletion sequences and the labelings they certify.
//!
//! Starting from `G_1 = G`, each step removes the isolated vertices of the
//! current graph (`m_i` of them), then one chosen vertex `u_i` of degree
//! `d_i` together with its neighbors. The chain stops once what is left is
//! `mK1` or `mK1 + K_r`. With `y_i = m_i + 1 − d_i` and
//! `z_i = y_2 + … + y_i`, a sequence whose prefix sums `z_i` are all
//! nonnegative yields a numbering of strength `p + d_1`
//! ([`label_from_sequence`]). When every `u_i` has minimum degree in its
//! graph (a *δ-sequence*) and `d_1 = δ(G)`, that matches the lower bound
//! `p + δ`, so the strength is exact.
//!
//! The terminal graph contributes a final term too: `d_s = 0` for `mK1`
//! and `d_s = r − 1` for `mK1 + K_r`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{disjoint_union, Graph, Vertex, VertexSet};
use crate::labeling::{strength_of, LowerBoundKind, Numbering, StrengthCertificate};
use crate::{Error, Result};

/// Default cap on search-node expansions.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Which vertices a step may choose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Only vertices of minimum degree in the current graph.
    MinDegree,
    /// Any vertex after the first step; the first choice still has degree
    /// `δ(G)` so that the result certifies `p + δ`.
    AnyDegree,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::MinDegree => "min-degree",
            Mode::AnyDegree => "any-degree",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min-degree" | "delta" => Ok(Mode::MinDegree),
            "any-degree" | "any" => Ok(Mode::AnyDegree),
            _ => Err(Error::Parameter(format!("unknown sequence mode {s:?}"))),
        }
    }
}

/// One non-terminal step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaStep {
    /// Isolated vertices removed at this step.
    pub m: usize,
    /// Degree of `chosen` once the isolated vertices are gone.
    pub d: usize,
    /// Minimum degree of the current graph after isolated removal.
    pub delta: usize,
    pub chosen: Vertex,
    pub neighbors: Vec<Vertex>,
    pub isolated: Vec<Vertex>,
    /// `m + 1 − d`.
    pub y: i64,
    /// Prefix sum from step 2; absent on step 1.
    pub z: Option<i64>,
}

/// The final graph `mK1` (empty `clique`) or `mK1 + K_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Terminal {
    pub m: usize,
    pub isolated: Vec<Vertex>,
    pub clique: Vec<Vertex>,
    /// `0` for `mK1`, `r − 1` for `mK1 + K_r`.
    pub d: usize,
    pub y: i64,
    /// Absent when the whole graph is terminal (a single clique).
    pub z: Option<i64>,
}

/// A complete deletion sequence of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaSequence {
    pub p: usize,
    pub steps: Vec<DeltaStep>,
    pub terminal: Terminal,
}

fn split_isolated(g: &Graph, alive: &VertexSet) -> (Vec<Vertex>, VertexSet) {
    let mut core = alive.clone();
    let mut iso = Vec::new();
    for v in alive.iter() {
        if g.row(v).intersection_len(alive) == 0 {
            iso.push(v);
            core.remove(v);
        }
    }
    (iso, core)
}

fn core_degree(g: &Graph, core: &VertexSet, v: Vertex) -> usize {
    g.row(v).intersection_len(core)
}

fn is_clique(g: &Graph, core: &VertexSet) -> bool {
    let r = core.len();
    core.iter().all(|v| core_degree(g, core, v) == r - 1)
}

impl DeltaSequence {
    /// Rebuilds the sequence of `g` determined by the chosen vertices,
    /// recomputing every count. Fails if a choice is not available, if the
    /// chain ends early, or if it does not end at a terminal graph.
    pub fn replay(g: &Graph, choices: &[Vertex]) -> Result<Self> {
        let p = g.order();
        if p == 0 || !g.isolated_vertices().is_empty() {
            return Err(Error::Precondition(
                "sequences need a nonempty graph without isolated vertices".into(),
            ));
        }
        let mut alive = VertexSet::full(p);
        let mut steps = Vec::with_capacity(choices.len());
        let mut z = 0i64;
        for (i, &u) in choices.iter().enumerate() {
            let (iso, core) = split_isolated(g, &alive);
            if core.is_empty() || is_clique(g, &core) {
                return Err(Error::Mismatch(format!(
                    "graph is already terminal before choice {} (vertex {u})",
                    i + 1
                )));
            }
            if !core.contains(u) {
                return Err(Error::Mismatch(format!(
                    "choice {} (vertex {u}) is not in the current graph",
                    i + 1
                )));
            }
            let d = core_degree(g, &core, u);
            let delta = core.iter().map(|v| core_degree(g, &core, v)).min().unwrap();
            let mut nbhd = g.row(u).clone();
            nbhd.intersect_with(&core);
            let y = iso.len() as i64 + 1 - d as i64;
            let zi = (i > 0).then(|| {
                z += y;
                z
            });
            steps.push(DeltaStep {
                m: iso.len(),
                d,
                delta,
                chosen: u,
                neighbors: nbhd.to_vec(),
                isolated: iso,
                y,
                z: zi,
            });
            alive = core;
            alive.difference_with(&nbhd);
            alive.remove(u);
            if alive.is_empty() {
                return Err(Error::Mismatch(format!(
                    "choice {} (vertex {u}) removes every remaining vertex",
                    i + 1
                )));
            }
        }
        let (iso, core) = split_isolated(g, &alive);
        if !(core.is_empty() || is_clique(g, &core)) {
            return Err(Error::Mismatch(format!(
                "after {} choices the remaining graph is not mK1 or mK1 + K_r",
                choices.len()
            )));
        }
        let d = core.len().saturating_sub(1);
        let y = iso.len() as i64 + 1 - d as i64;
        let tz = (!steps.is_empty()).then_some(z + y);
        Ok(DeltaSequence {
            p,
            steps,
            terminal: Terminal {
                m: iso.len(),
                isolated: iso,
                clique: core.to_vec(),
                d,
                y,
                z: tz,
            },
        })
    }

    pub fn choices(&self) -> Vec<Vertex> {
        self.steps.iter().map(|s| s.chosen).collect()
    }

    /// Number of graphs in the chain, terminal included.
    pub fn len(&self) -> usize {
        self.steps.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `d_1`: the degree of the first choice, or `r − 1` when the graph is
    /// itself a clique.
    pub fn d1(&self) -> usize {
        self.steps.first().map_or(self.terminal.d, |s| s.d)
    }

    /// `z_2, …, z_s` in order.
    pub fn prefix_sums(&self) -> Vec<i64> {
        self.steps
            .iter()
            .filter_map(|s| s.z)
            .chain(self.terminal.z)
            .collect()
    }

    /// `Z = min z_i`, or `None` for a one-graph chain.
    pub fn min_z(&self) -> Option<i64> {
        self.prefix_sums().into_iter().min()
    }

    /// `z_s`, the last prefix sum.
    pub fn last_z(&self) -> Option<i64> {
        self.terminal.z
    }

    /// All prefix sums nonnegative.
    pub fn satisfied(&self) -> bool {
        self.prefix_sums().iter().all(|&z| z >= 0)
    }

    /// Every choice had minimum degree in its graph.
    pub fn is_delta_sequence(&self) -> bool {
        self.steps.iter().all(|s| s.d == s.delta)
    }

    /// Text form: one arrow per deletion.
    pub fn render_chain(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            let idx = i + 1;
            if i == 0 {
                out.push_str(&format!("G{idx} [u={} d={}]", s.chosen, s.d));
            } else {
                out.push_str(&format!(
                    " -> G{idx} [m={} u={} d={} y={} z={}]",
                    s.m,
                    s.chosen,
                    s.d,
                    s.y,
                    s.z.unwrap()
                ));
            }
        }
        let t = &self.terminal;
        let mut parts = Vec::new();
        match t.m {
            0 => {}
            1 => parts.push("K1".to_string()),
            m => parts.push(format!("{m}K1")),
        }
        if !t.clique.is_empty() {
            parts.push(format!("K{}", t.clique.len()));
        }
        let shape = parts.join("+");
        if self.steps.is_empty() {
            out.push_str(&format!("G1 = {shape}"));
        } else {
            out.push_str(&format!(
                " -> G{} = {shape} [y={} z={}]",
                self.len(),
                t.y,
                t.z.unwrap()
            ));
        }
        out
    }
}

/// Result of [`find_delta_sequence`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { sequence: DeltaSequence, nodes: u64 },
    /// The whole choice tree was explored without success.
    Exhausted { nodes: u64 },
    /// The budget ran out; nothing is proven.
    BudgetHit { nodes: u64 },
}

impl SearchOutcome {
    pub fn found(self) -> Option<DeltaSequence> {
        match self {
            SearchOutcome::Found { sequence, .. } => Some(sequence),
            _ => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match *self {
            SearchOutcome::Found { nodes, .. }
            | SearchOutcome::Exhausted { nodes }
            | SearchOutcome::BudgetHit { nodes } => nodes,
        }
    }
}

fn check_searchable(g: &Graph) -> Result<()> {
    if g.order() == 0 || !g.isolated_vertices().is_empty() {
        return Err(Error::Precondition(
            "graph must be nonempty without isolated vertices; strip them first".into(),
        ));
    }
    if g.is_complete() {
        return Err(Error::Precondition(format!(
            "K{} has p < δ + 2; its strength is 2p − 1",
            g.order()
        )));
    }
    Ok(())
}

/// Eligible choices in a non-terminal core, sorted by (degree, id).
fn candidates(g: &Graph, core: &VertexSet, mode: Mode) -> Vec<(usize, Vertex)> {
    let mut c: Vec<(usize, Vertex)> = core.iter().map(|v| (core_degree(g, core, v), v)).collect();
    c.sort_unstable();
    if mode == Mode::MinDegree {
        let min = c[0].0;
        c.retain(|&(d, _)| d == min);
    }
    c
}

fn root_candidates(g: &Graph) -> Vec<Vertex> {
    let delta = g.min_degree();
    (0..g.order()).filter(|&v| g.degree(v) == delta).collect()
}

fn after_choice(g: &Graph, core: &VertexSet, u: Vertex) -> VertexSet {
    let mut next = core.clone();
    next.difference_with(g.row(u));
    next.remove(u);
    next
}

struct Searcher<'a> {
    g: &'a Graph,
    mode: Mode,
    budget: u64,
    nodes: u64,
    hit: bool,
    /// Largest incoming prefix sum known to fail from a state.
    failed: HashMap<VertexSet, i64>,
    path: Vec<Vertex>,
}

impl Searcher<'_> {
    fn dfs(&mut self, alive: VertexSet, z_prev: i64) -> bool {
        if self.nodes >= self.budget {
            self.hit = true;
            return false;
        }
        self.nodes += 1;
        if self.failed.get(&alive).is_some_and(|&zf| z_prev <= zf) {
            return false;
        }
        let (iso, core) = split_isolated(self.g, &alive);
        let m = iso.len() as i64;
        if core.is_empty() || is_clique(self.g, &core) {
            let d = core.len().saturating_sub(1) as i64;
            return z_prev + m + 1 - d >= 0;
        }
        for (d, u) in candidates(self.g, &core, self.mode) {
            let z = z_prev + m + 1 - d as i64;
            if z < 0 {
                // Candidates are sorted by degree.
                break;
            }
            let next = after_choice(self.g, &core, u);
            if next.is_empty() {
                continue;
            }
            self.path.push(u);
            if self.dfs(next, z) {
                return true;
            }
            self.path.pop();
            if self.hit {
                return false;
            }
        }
        let e = self.failed.entry(alive).or_insert(z_prev);
        *e = (*e).max(z_prev);
        false
    }
}

/// Depth-first search for a sequence with all prefix sums nonnegative and
/// `d_1 = δ(G)`. Choices are tried by ascending (degree, vertex id), so the
/// result is deterministic.
///
/// The graph must have no isolated vertices and must not be complete.
pub fn find_delta_sequence(g: &Graph, mode: Mode, budget: u64) -> Result<SearchOutcome> {
    check_searchable(g)?;
    let mut s = Searcher {
        g,
        mode,
        budget,
        nodes: 0,
        hit: false,
        failed: HashMap::new(),
        path: Vec::new(),
    };
    let full = VertexSet::full(g.order());
    for u in root_candidates(g) {
        s.path.clear();
        s.path.push(u);
        if s.dfs(after_choice(g, &full, u), 0) {
            let sequence = DeltaSequence::replay(g, &s.path)?;
            debug_assert!(sequence.satisfied());
            return Ok(SearchOutcome::Found {
                sequence,
                nodes: s.nodes,
            });
        }
        if s.hit {
            return Ok(SearchOutcome::BudgetHit { nodes: s.nodes });
        }
    }
    Ok(SearchOutcome::Exhausted { nodes: s.nodes })
}

const NEG_INF: i64 = i64::MIN / 4;

struct BestZ<'a> {
    g: &'a Graph,
    mode: Mode,
    budget: u64,
    memo: HashMap<VertexSet, (i64, Option<Vertex>)>,
}

impl BestZ<'_> {
    /// Best achievable minimum prefix sum from `alive`, counting from zero.
    fn best(&mut self, alive: &VertexSet) -> Result<i64> {
        if let Some(&(v, _)) = self.memo.get(alive) {
            return Ok(v);
        }
        if self.memo.len() as u64 >= self.budget {
            return Err(Error::BudgetExhausted(format!(
                "sequence optimization stopped after {} states",
                self.budget
            )));
        }
        let (iso, core) = split_isolated(self.g, alive);
        let m = iso.len() as i64;
        let result = if core.is_empty() || is_clique(self.g, &core) {
            let d = core.len().saturating_sub(1) as i64;
            (m + 1 - d, None)
        } else {
            let mut best = (NEG_INF, None);
            for (d, u) in candidates(self.g, &core, self.mode) {
                let y = m + 1 - d as i64;
                if y <= best.0 {
                    break;
                }
                let next = after_choice(self.g, &core, u);
                if next.is_empty() {
                    continue;
                }
                let v = y.min(y + self.best(&next)?);
                if v > best.0 {
                    best = (v, Some(u));
                }
            }
            best
        };
        self.memo.insert(alive.clone(), result);
        Ok(result.0)
    }
}

/// The sequence with `d_1 = δ(G)` whose smallest prefix sum `Z` is as large
/// as possible, with that `Z`. Exact dynamic programming over the residual
/// vertex sets; `budget` caps the number of distinct sets visited.
pub fn best_z_sequence(g: &Graph, mode: Mode, budget: u64) -> Result<(i64, DeltaSequence)> {
    check_searchable(g)?;
    let mut dp = BestZ {
        g,
        mode,
        budget,
        memo: HashMap::new(),
    };
    let full = VertexSet::full(g.order());
    let mut best: Option<(i64, Vertex)> = None;
    for u in root_candidates(g) {
        let v = dp.best(&after_choice(g, &full, u))?;
        if best.is_none_or(|(b, _)| v > b) {
            best = Some((v, u));
        }
    }
    let (z, root) = best.expect("a non-complete graph has a root choice");
    let mut choices = vec![root];
    let mut alive = after_choice(g, &full, root);
    while let Some(&(_, Some(u))) = dp.memo.get(&alive) {
        choices.push(u);
        let (_, core) = split_isolated(g, &alive);
        alive = after_choice(g, &core, u);
    }
    let seq = DeltaSequence::replay(g, &choices)?;
    debug_assert_eq!(seq.min_z(), Some(z));
    Ok((z, seq))
}

/// Builds the numbering from a sequence with nonnegative prefix sums.
///
/// `u_1` gets `p` and its neighbors `1..=d_1`. Each later step hands its
/// isolated vertices and then `u_i` the next labels going down from the top,
/// and the neighbors of `u_i` the next labels going up from the bottom. The
/// terminal isolated vertices continue the top block and the terminal
/// clique takes what remains. Within a block, smaller vertex ids get smaller
/// labels. The result has strength exactly `p + d_1`.
pub fn label_from_sequence(g: &Graph, seq: &DeltaSequence) -> Result<Numbering> {
    let replayed = DeltaSequence::replay(g, &seq.choices())?;
    if &replayed != seq {
        return Err(Error::Mismatch("sequence was not produced from this graph".into()));
    }
    if !seq.satisfied() {
        return Err(Error::Precondition(format!(
            "prefix sums {:?} are not all nonnegative",
            seq.prefix_sums()
        )));
    }
    let p = g.order();
    let mut labels = vec![0usize; p];
    let mut high = 0; // labels used from the top
    let mut low = 0; // labels used from the bottom
    for s in &seq.steps {
        for (k, &v) in s.isolated.iter().enumerate() {
            labels[v] = p - high - s.m + 1 + k;
        }
        labels[s.chosen] = p - high - s.m;
        high += s.m + 1;
        for (k, &v) in s.neighbors.iter().enumerate() {
            labels[v] = low + 1 + k;
        }
        low += s.d;
    }
    let t = &seq.terminal;
    for (k, &v) in t.isolated.iter().enumerate() {
        labels[v] = p - high - t.m + 1 + k;
    }
    for (k, &v) in t.clique.iter().enumerate() {
        labels[v] = low + 1 + k;
    }
    let f = Numbering::new(labels)?;
    let s = strength_of(g, &f)?;
    if s != p + seq.d1() {
        return Err(Error::Mismatch(format!(
            "labeling has strength {s}, expected p + d_1 = {}",
            p + seq.d1()
        )));
    }
    Ok(f)
}

/// Pendant vertices adjacent to a vertex of degree at least 2.
pub fn pendant_set(t: &Graph) -> Vec<Vertex> {
    (0..t.order())
        .filter(|&v| t.degree(v) == 1 && t.degree(t.neighbors(v)[0]) >= 2)
        .collect()
}

/// A δ-sequence of a forest: repeatedly delete the smallest-id pendant
/// vertex whose neighbor has degree at least 2, together with that
/// neighbor. When only `K2` components remain, the smallest vertex is used.
pub fn forest_delta_sequence(t: &Graph) -> Result<DeltaSequence> {
    if !t.is_forest() {
        return Err(Error::Precondition("graph has a cycle".into()));
    }
    if t.order() < 3 {
        return Err(Error::Precondition("forest must have at least 3 vertices".into()));
    }
    check_searchable(t)?;
    let mut alive = VertexSet::full(t.order());
    let mut choices = Vec::new();
    loop {
        let (_, core) = split_isolated(t, &alive);
        if core.is_empty() || is_clique(t, &core) {
            break;
        }
        let deg = |v: Vertex| core_degree(t, &core, v);
        let pendant = core
            .iter()
            .find(|&v| deg(v) == 1 && t.row(v).iter().any(|w| core.contains(w) && deg(w) >= 2));
        let u = pendant.unwrap_or_else(|| core.iter().next().unwrap());
        choices.push(u);
        alive = after_choice(t, &core, u);
    }
    let seq = DeltaSequence::replay(t, &choices)?;
    if !seq.satisfied() {
        return Err(Error::Mismatch(format!(
            "forest sequence has prefix sums {:?}",
            seq.prefix_sums()
        )));
    }
    Ok(seq)
}

/// `Z` as used for splicing: the minimum prefix sum, capped at 0, with an
/// empty chain counting as 0.
pub fn effective_z(seq: &DeltaSequence) -> i64 {
    seq.min_z().unwrap_or(0).min(0)
}

/// Splices a sequence of `H` after a sequence of `T` on the disjoint union
/// `H + T` (vertices of `H` first). Requires `z_s(T) ≥ d_H − Z`; the result
/// has nonnegative prefix sums and `d_1 = d_T`, so the union has strength
/// at most `|V(H)| + |V(T)| + d_T`.
pub fn compose_h_plus_t(
    h: &Graph,
    h_seq: &DeltaSequence,
    t: &Graph,
    t_seq: &DeltaSequence,
) -> Result<(Graph, DeltaSequence)> {
    if &DeltaSequence::replay(h, &h_seq.choices())? != h_seq {
        return Err(Error::Mismatch("H sequence does not belong to H".into()));
    }
    if &DeltaSequence::replay(t, &t_seq.choices())? != t_seq {
        return Err(Error::Mismatch("T sequence does not belong to T".into()));
    }
    if !t_seq.satisfied() {
        return Err(Error::Precondition("T sequence has a negative prefix sum".into()));
    }
    let z_t = t_seq
        .last_z()
        .ok_or_else(|| Error::Precondition("T must not be a single clique".into()))?;
    let need = h_seq.d1() as i64 - effective_z(h_seq);
    if z_t < need {
        return Err(Error::Precondition(format!(
            "z_s(T) = {z_t} is below d_H − Z = {need} (deficit {})",
            need - z_t
        )));
    }
    let offset = h.order();
    let g = disjoint_union(&[h, t]);
    let mut choices: Vec<Vertex> = t_seq.choices().iter().map(|&v| v + offset).collect();
    if let Some(&v) = t_seq.terminal.clique.first() {
        choices.push(v + offset);
    }
    choices.extend(h_seq.choices());
    let seq = DeltaSequence::replay(&g, &choices)?;
    debug_assert!(seq.satisfied());
    Ok((g, seq))
}

/// Output of [`embed_minimal`].
#[derive(Debug, Clone)]
pub struct Embedding {
    /// `H` itself, or `H + K_{m,n}` with the bipartite part appended.
    pub graph: Graph,
    pub sequence: DeltaSequence,
    pub certificate: StrengthCertificate,
    /// `(m, n)` of the attached complete bipartite graph, if any.
    pub attached: Option<(usize, usize)>,
    /// Best `Z` over sequences of `H` with `d_1 = δ(H)`, when it was needed.
    pub z: Option<i64>,
}

/// Either certifies `str(H) = |V(H)| + δ(H)` directly, or attaches
/// `K_{m,n}` with `m = δ(H)` and `n = max(δ(H) − Z, δ(H))` so that the
/// union reaches its `p + δ` bound with the same `δ`.
pub fn embed_minimal(h: &Graph, budget: u64) -> Result<Embedding> {
    if h.order() == 0 || !h.isolated_vertices().is_empty() {
        return Err(Error::Precondition("graph must have minimum degree at least 1".into()));
    }
    let exact = |g: &Graph, seq: DeltaSequence, attached, z| -> Result<Embedding> {
        let f = label_from_sequence(g, &seq)?;
        let certificate = StrengthCertificate::build(g, f, LowerBoundKind::MinDegree)?;
        debug_assert!(certificate.is_exact());
        Ok(Embedding {
            graph: g.clone(),
            sequence: seq,
            certificate,
            attached,
            z,
        })
    };
    if h.is_complete() {
        return exact(h, DeltaSequence::replay(h, &[])?, None, None);
    }
    for mode in [Mode::MinDegree, Mode::AnyDegree] {
        if let SearchOutcome::Found { sequence, .. } = find_delta_sequence(h, mode, budget)? {
            return exact(h, sequence, None, None);
        }
    }
    let (z, h_seq) = best_z_sequence(h, Mode::AnyDegree, budget)?;
    if z >= 0 {
        return exact(h, h_seq, None, Some(z));
    }
    let delta = h.min_degree();
    let (m, n) = (delta, (delta as i64 - z).max(delta as i64) as usize);
    let t = crate::family::complete_bipartite(m, n);
    // Choosing a vertex on the n side leaves (n − 1)K1, so z_2 = n.
    let t_seq = DeltaSequence::replay(&t, &[m])?;
    let (g, seq) = compose_h_plus_t(h, &h_seq, &t, &t_seq)?;
    exact(&g, seq, Some((m, n)), Some(z))
}
