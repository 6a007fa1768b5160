//! Lower and upper bounds on the strength.
//!
//! Lower bounds: `p + δ`, `p + κ′`, `Δ + 2`, `2p − 2α + 1` and `p + ξ`, where
//! `ξ = max(x_i − i + 1)` and `x_i` is the smallest `|N(S) \ S|` over vertex
//! sets of size `i`. Hypercubes get their own closed forms. Upper bounds:
//! `2p − 1` and whatever a construction achieves.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};
use crate::{Error, Result};

/// Default vertex cap for the exact independence number.
pub const ALPHA_CAP: usize = 40;

/// A largest independent set, or a greedy one when `exact` is false.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentSet {
    pub size: usize,
    pub members: Vec<Vertex>,
    pub exact: bool,
}

struct Mis {
    adj: Vec<u64>,
    nonadj: Vec<u64>,
    best: Vec<Vertex>,
}

impl Mis {
    /// Greedy partition of `p` into cliques of `G`; an independent set meets
    /// each at most once. Returns vertices with the running clique count.
    fn clique_cover(&self, mut p: u64) -> Vec<(Vertex, usize)> {
        let mut out = Vec::with_capacity(p.count_ones() as usize);
        let mut k = 0;
        while p != 0 {
            k += 1;
            let mut q = p;
            while q != 0 {
                let v = q.trailing_zeros() as usize;
                p &= !(1 << v);
                q &= !(1 << v);
                q &= self.adj[v];
                out.push((v, k));
            }
        }
        out
    }

    fn expand(&mut self, cur: &mut Vec<Vertex>, mut p: u64) {
        let order = self.clique_cover(p);
        for &(v, bound) in order.iter().rev() {
            if cur.len() + bound <= self.best.len() {
                return;
            }
            cur.push(v);
            let np = p & self.nonadj[v];
            if np == 0 {
                if cur.len() > self.best.len() {
                    self.best = cur.clone();
                }
            } else {
                self.expand(cur, np);
            }
            cur.pop();
            p &= !(1 << v);
        }
    }
}

/// Exact independence number by branch and bound with a clique-cover bound.
/// Refuses graphs with more than `cap` vertices (`cap` at most 64).
pub fn independence_number_capped(g: &Graph, cap: usize) -> Result<IndependentSet> {
    let p = g.order();
    if p > cap.min(64) {
        return Err(Error::CapExceeded {
            what: "exact independence number",
            cap: cap.min(64),
            got: p,
        });
    }
    if p == 0 {
        return Ok(IndependentSet {
            size: 0,
            members: vec![],
            exact: true,
        });
    }
    let full = if p == 64 { u64::MAX } else { (1u64 << p) - 1 };
    let adj: Vec<u64> = (0..p)
        .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w))
        .collect();
    let nonadj = (0..p).map(|v| full & !adj[v] & !(1 << v)).collect();
    let mut mis = Mis {
        adj,
        nonadj,
        best: greedy_independent_set(g).members,
    };
    mis.expand(&mut Vec::new(), full);
    let mut members = mis.best;
    members.sort_unstable();
    Ok(IndependentSet {
        size: members.len(),
        members,
        exact: true,
    })
}

pub fn independence_number(g: &Graph) -> Result<IndependentSet> {
    independence_number_capped(g, ALPHA_CAP)
}

/// Minimum-degree greedy independent set. Its size is only a lower bound
/// on `α`, so it must never feed [`independence_lower_bound_str`].
pub fn greedy_independent_set(g: &Graph) -> IndependentSet {
    let p = g.order();
    let mut alive = vec![true; p];
    let mut deg = g.degrees();
    let mut members = Vec::new();
    while let Some(v) = (0..p).filter(|&v| alive[v]).min_by_key(|&v| (deg[v], v)) {
        members.push(v);
        let mut gone = vec![v];
        gone.extend(g.neighbors(v).iter().copied().filter(|&w| alive[w]));
        for &x in &gone {
            alive[x] = false;
        }
        for &x in &gone {
            for &w in g.neighbors(x) {
                if alive[w] {
                    deg[w] -= 1;
                }
            }
        }
    }
    members.sort_unstable();
    IndependentSet {
        size: members.len(),
        members,
        exact: false,
    }
}

/// `2p − 2α + 1`, from the exact independence number.
pub fn independence_lower_bound_str(g: &Graph) -> Result<usize> {
    let a = independence_number(g)?;
    Ok((2 * g.order() + 1).saturating_sub(2 * a.size))
}

/// Minimum exterior size for one subset size, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiEntry {
    pub x: usize,
    pub witness: Vec<Vertex>,
}

/// The exterior profile `i ↦ x_i` for `i` up to some cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiProfile {
    pub x: BTreeMap<usize, XiEntry>,
    /// `max(x_i − i + 1)` over the computed sizes.
    pub xi: Option<i64>,
    /// Every size in `1..p` was computed.
    pub complete: bool,
    /// First size whose enumeration ran out of budget.
    pub stopped_at: Option<usize>,
}

impl XiProfile {
    /// `p + ξ`, the bound this profile supports.
    pub fn bound(&self, p: usize) -> Option<usize> {
        self.xi.map(|xi| (p as i64 + xi).max(0) as usize)
    }
}

/// Vertex cap for the neighborhood profile (sets are 128-bit masks).
pub const XI_CAP: usize = 128;

/// Default node budget for each subset size.
pub const XI_BUDGET: u64 = 20_000_000;

/// One independent unit of enumeration: sets containing the orbit
/// representative `rep` whose next-smallest other member is `second`.
#[derive(Clone, Copy)]
struct Task {
    rep: usize,
    second: Option<usize>,
}

struct XiSearch<'a> {
    closed: &'a [u128],
    p: usize,
    i: usize,
    nodes: u64,
    budget: u64,
    best: usize,
    witness: u128,
    hit: bool,
}

impl XiSearch<'_> {
    fn dfs(&mut self, start: usize, depth: usize, skip: usize, s: u128, u: u128) {
        if depth == self.i {
            let ext = u.count_ones() as usize - self.i;
            if ext < self.best {
                self.best = ext;
                self.witness = s;
            }
            return;
        }
        for v in start..self.p {
            if v == skip {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.hit = true;
                return;
            }
            let nu = u | self.closed[v];
            if (nu.count_ones() as usize).saturating_sub(self.i) >= self.best {
                continue;
            }
            self.dfs(v + 1, depth + 1, skip, s | 1 << v, nu);
            if self.hit {
                return;
            }
        }
    }

    fn run(&mut self, t: Task) {
        let s = 1u128 << t.rep;
        let u = self.closed[t.rep];
        match t.second {
            None => self.dfs(self.p, 1, t.rep, s, u),
            Some(w) => {
                let nu = u | self.closed[w];
                if (nu.count_ones() as usize).saturating_sub(self.i) < self.best {
                    self.dfs(w + 1, 2, t.rep, s | 1 << w, nu);
                }
            }
        }
    }
}

fn mask_to_vec(m: u128) -> Vec<Vertex> {
    (0..128).filter(|&v| m >> v & 1 == 1).collect()
}

/// Computes `x_1, …, x_{i_max}` by enumerating vertex sets that contain an
/// automorphism-orbit representative, pruning a partial set once its closed
/// neighborhood is already too large. `budget` caps search nodes per size;
/// when it runs out the profile stops there, and `ξ` is taken over the
/// sizes finished so far, which is still a valid lower bound.
pub fn xi_profile(g: &Graph, i_max: usize, budget: u64) -> Result<XiProfile> {
    xi_profile_jobs(g, i_max, budget, 1)
}

/// [`xi_profile`] with the enumeration for each size split across `jobs`
/// threads. With `jobs > 1` each unit of work gets an equal share of the
/// budget, so the point where an over-budget profile stops can differ from
/// the sequential run; completed values and witnesses are the same.
pub fn xi_profile_jobs(g: &Graph, i_max: usize, budget: u64, jobs: usize) -> Result<XiProfile> {
    let p = g.order();
    if p > XI_CAP {
        return Err(Error::CapExceeded {
            what: "neighborhood profile",
            cap: XI_CAP,
            got: p,
        });
    }
    let closed: Vec<u128> = (0..p)
        .map(|v| g.neighbors(v).iter().fold(1u128 << v, |m, &w| m | 1 << w))
        .collect();
    let reps: Vec<usize> = crate::canon::vertex_orbits(g).iter().map(|o| o[0]).collect();
    let top = i_max.min(p.saturating_sub(1));
    let mut x = BTreeMap::new();
    let mut stopped_at = None;
    let pool = if jobs > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?,
        )
    } else {
        None
    };
    for i in 1..=top {
        let tasks: Vec<Task> = reps
            .iter()
            .flat_map(|&rep| {
                if i == 1 {
                    vec![Task { rep, second: None }]
                } else {
                    (0..p)
                        .filter(|&w| w != rep && p - w >= i - 1)
                        .map(|w| Task {
                            rep,
                            second: Some(w),
                        })
                        .collect()
                }
            })
            .collect();
        let search = |budget: u64| XiSearch {
            closed: &closed,
            p,
            i,
            nodes: 0,
            budget,
            best: p - i + 1,
            witness: 0,
            hit: false,
        };
        let result = match &pool {
            None => {
                let mut s = search(budget);
                for &t in &tasks {
                    s.run(t);
                    if s.hit {
                        break;
                    }
                }
                (!s.hit).then_some((s.best, s.witness))
            }
            Some(pool) => {
                let share = (budget / tasks.len() as u64).max(1);
                let parts: Vec<Option<(usize, u128)>> = pool.install(|| {
                    tasks
                        .par_iter()
                        .map(|&t| {
                            let mut s = search(share);
                            s.run(t);
                            (!s.hit).then_some((s.best, s.witness))
                        })
                        .collect()
                });
                let mut best: Option<(usize, u128)> = None;
                let mut ok = true;
                for part in parts {
                    match part {
                        None => ok = false,
                        Some((b, w)) if w != 0 && best.is_none_or(|(bb, _)| b < bb) => {
                            best = Some((b, w))
                        }
                        _ => {}
                    }
                }
                if ok {
                    best
                } else {
                    None
                }
            }
        };
        match result {
            Some((b, w)) if w != 0 => {
                x.insert(
                    i,
                    XiEntry {
                        x: b,
                        witness: mask_to_vec(w),
                    },
                );
            }
            Some(_) => unreachable!("some set of each size has exterior at most p - i"),
            None => {
                stopped_at = Some(i);
                break;
            }
        }
    }
    let xi = x.iter().map(|(&i, e)| e.x as i64 - i as i64 + 1).max();
    Ok(XiProfile {
        complete: stopped_at.is_none() && top + 1 >= p,
        x,
        xi,
        stopped_at,
    })
}

/// Edge connectivity `κ′` from unit-capacity maximum flows between vertex 0
/// and every other vertex. Disconnected graphs and `K1` give 0.
pub fn edge_connectivity(g: &Graph) -> usize {
    let p = g.order();
    if p <= 1 || !g.is_connected() {
        return 0;
    }
    let cap = g.min_degree();
    (1..p).map(|t| max_flow_unit(g, 0, t, cap)).min().unwrap()
}

/// Maximum number of edge-disjoint `s`-`t` paths, stopping at `limit`.
fn max_flow_unit(g: &Graph, s: Vertex, t: Vertex, limit: usize) -> usize {
    let p = g.order();
    // flow[v][k] is the flow on the arc from v to its k-th neighbor.
    let mut flow: Vec<Vec<i8>> = (0..p).map(|v| vec![0; g.degree(v)]).collect();
    let index_of = |v: Vertex, w: Vertex| g.neighbors(v).binary_search(&w).unwrap();
    let mut total = 0;
    while total < limit {
        let mut prev: Vec<Option<Vertex>> = vec![None; p];
        prev[s] = Some(s);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            if v == t {
                break;
            }
            for (k, &w) in g.neighbors(v).iter().enumerate() {
                if prev[w].is_none() && flow[v][k] < 1 {
                    prev[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        if prev[t].is_none() {
            break;
        }
        let mut w = t;
        while w != s {
            let v = prev[w].unwrap();
            flow[v][index_of(v, w)] += 1;
            flow[w][index_of(w, v)] -= 1;
            w = v;
        }
        total += 1;
    }
    total
}

fn check_dimension(n: u32) -> Result<()> {
    if !(2..=62).contains(&n) {
        return Err(Error::Parameter(format!(
            "hypercube dimension must be in 2..=62, got {n}"
        )));
    }
    Ok(())
}

/// Closed-form lower bound on the strength of `Q_n`.
///
/// | n | bound |
/// |---|---|
/// | 2, 3, 4 | 6, 11, 21 |
/// | 5..=9 | `2^n + 4n − 12` |
/// | `2m ≥ 10` | `2^{2m} + m² + 4` |
/// | `2m − 1 ≥ 11` | `2^{2m−1} + m² − m + 4` |
pub fn hypercube_lower_bound(n: u32) -> Result<u64> {
    check_dimension(n)?;
    let two_n = 1u64 << n;
    Ok(match n {
        2 => 6,
        3 => 11,
        4 => 21,
        5..=9 => two_n + 4 * n as u64 - 12,
        _ if n.is_multiple_of(2) => {
            let m = n as u64 / 2;
            two_n + m * m + 4
        }
        _ => {
            let m = (n as u64).div_ceil(2);
            two_n + m * m - m + 4
        }
    })
}

/// `2^n + 2^{n−2} + 1`, reached by repeated doubling from `Q_2`.
pub fn hypercube_upper_bound(n: u32) -> Result<u64> {
    check_dimension(n)?;
    Ok((1u64 << n) + (1u64 << (n - 2)) + 1)
}

/// If `g` is a hypercube `Q_n` (`n ≥ 1`), returns `n` and a coordinate
/// bitvector for every vertex, with vertex 0 at the origin.
pub fn recognize_hypercube(g: &Graph) -> Option<(u32, Vec<u64>)> {
    let p = g.order();
    if p < 2 || !p.is_power_of_two() || p > 1 << 62 {
        return None;
    }
    let n = p.trailing_zeros();
    if g.degrees().iter().any(|&d| d != n as usize) || g.bipartition().is_none() {
        return None;
    }
    let mut dist = vec![usize::MAX; p];
    let mut coord = vec![0u64; p];
    dist[0] = 0;
    for (k, &w) in g.neighbors(0).iter().enumerate() {
        dist[w] = 1;
        coord[w] = 1 << k;
    }
    let mut queue: VecDeque<Vertex> = g.neighbors(0).iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                coord[w] |= coord[v];
            }
        }
    }
    let mut seen = vec![false; p];
    for v in 0..p {
        let c = coord[v] as usize;
        if dist[v] == usize::MAX || c >= p || seen[c] || c.count_ones() as usize != dist[v] {
            return None;
        }
        seen[c] = true;
    }
    if g.edges().all(|(u, v)| (coord[u] ^ coord[v]).count_ones() == 1) {
        Some((n, coord))
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
}

/// One bound: its value, or the reason it is absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub name: String,
    pub kind: BoundKind,
    pub value: Option<usize>,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub absent: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vertex>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub p: usize,
    pub q: usize,
    pub entries: Vec<BoundEntry>,
    pub best_lower: usize,
    pub best_upper: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_profile: Option<XiProfile>,
}

impl BoundsReport {
    pub fn is_exact(&self) -> bool {
        self.best_lower == self.best_upper
    }

    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn lower_values(&self) -> impl Iterator<Item = (&str, usize)> {
        self.values(BoundKind::Lower)
    }

    pub fn upper_values(&self) -> impl Iterator<Item = (&str, usize)> {
        self.values(BoundKind::Upper)
    }

    fn values(&self, kind: BoundKind) -> impl Iterator<Item = (&str, usize)> {
        self.entries
            .iter()
            .filter(move |e| e.kind == kind)
            .filter_map(|e| Some((e.name.as_str(), e.value?)))
    }

    /// Plain-text table.
    pub fn render(&self) -> String {
        let mut out = format!("p = {}, q = {}\n", self.p, self.q);
        out.push_str(&format!("{:<22} {:<6} {:>8}  {}\n", "bound", "kind", "value", "method"));
        for e in &self.entries {
            let kind = match e.kind {
                BoundKind::Lower => "lower",
                BoundKind::Upper => "upper",
            };
            let value = e.value.map_or("-".to_string(), |v| v.to_string());
            let note = match &e.absent {
                Some(r) => format!("{} (absent: {r})", e.method),
                None => e.method.clone(),
            };
            out.push_str(&format!("{:<22} {kind:<6} {value:>8}  {note}\n", e.name));
        }
        out.push_str(&format!(
            "best: {} <= str <= {}{}\n",
            self.best_lower,
            self.best_upper,
            if self.is_exact() { " (exact)" } else { "" }
        ));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsOptions {
    /// Largest subset size for the neighborhood profile; `None` means all
    /// sizes when `p ≤ 20` and 4 otherwise.
    pub xi_i_max: Option<usize>,
    pub xi_budget: u64,
    pub alpha_cap: usize,
    /// Node budget for the sequence search that contributes an upper bound;
    /// 0 disables it.
    pub sequence_budget: u64,
    pub jobs: usize,
}

impl Default for BoundsOptions {
    fn default() -> Self {
        BoundsOptions {
            xi_i_max: None,
            xi_budget: XI_BUDGET,
            alpha_cap: ALPHA_CAP,
            sequence_budget: 100_000,
            jobs: 1,
        }
    }
}

impl BoundsOptions {
    pub fn i_max_for(&self, p: usize) -> usize {
        self.xi_i_max
            .unwrap_or(if p <= 20 { p.saturating_sub(1) } else { 4 })
    }
}

fn lower(name: &str, value: usize, method: &str) -> BoundEntry {
    BoundEntry {
        name: name.into(),
        kind: BoundKind::Lower,
        value: Some(value),
        method: method.into(),
        absent: None,
        witness: None,
    }
}

fn upper(name: &str, value: usize, method: &str) -> BoundEntry {
    BoundEntry {
        kind: BoundKind::Upper,
        ..lower(name, value, method)
    }
}

fn absent(name: &str, kind: BoundKind, method: &str, reason: String) -> BoundEntry {
    BoundEntry {
        name: name.into(),
        kind,
        value: None,
        method: method.into(),
        absent: Some(reason),
        witness: None,
    }
}

/// Every applicable bound for a graph without isolated vertices.
pub fn bounds_report(g: &Graph, opts: &BoundsOptions) -> Result<BoundsReport> {
    let p = g.order();
    if p == 0 || g.min_degree() == 0 {
        return Err(Error::Precondition(
            "bounds need minimum degree at least 1; strip isolated vertices first".into(),
        ));
    }
    let mut entries = vec![
        lower("p+delta", p + g.min_degree(), "minimum degree"),
        lower("max-degree+2", g.max_degree() + 2, "maximum degree"),
    ];
    if g.is_connected() {
        entries.push(lower(
            "p+edge-connectivity",
            p + edge_connectivity(g),
            "unit-capacity max flow",
        ));
    } else {
        entries.push(absent(
            "p+edge-connectivity",
            BoundKind::Lower,
            "unit-capacity max flow",
            "graph is disconnected".into(),
        ));
    }
    match independence_number_capped(g, opts.alpha_cap) {
        Ok(a) => entries.push(BoundEntry {
            witness: Some(a.members),
            ..lower(
                "2p-2alpha+1",
                2 * p + 1 - 2 * a.size,
                &format!("exact independence number {}", a.size),
            )
        }),
        Err(e) => entries.push(absent(
            "2p-2alpha+1",
            BoundKind::Lower,
            "exact independence number",
            e.to_string(),
        )),
    }
    let i_max = opts.i_max_for(p);
    let mut profile = None;
    match xi_profile_jobs(g, i_max, opts.xi_budget, opts.jobs) {
        Ok(prof) => {
            let method = format!(
                "exterior profile over sizes 1..={}{}",
                prof.x.keys().last().copied().unwrap_or(0),
                if prof.complete { " (complete)" } else { "" }
            );
            match prof.bound(p) {
                Some(b) => entries.push(lower("p+xi", b, &method)),
                None => entries.push(absent(
                    "p+xi",
                    BoundKind::Lower,
                    &method,
                    "no subset size finished within budget".into(),
                )),
            }
            profile = Some(prof);
        }
        Err(e) => entries.push(absent("p+xi", BoundKind::Lower, "exterior profile", e.to_string())),
    }
    let cube = recognize_hypercube(g).filter(|&(n, _)| n >= 2);
    if let Some((n, _)) = cube {
        entries.push(lower(
            "hypercube",
            hypercube_lower_bound(n)? as usize,
            &format!("closed form for Q{n}"),
        ));
    }

    entries.push(upper("2p-1", 2 * p - 1, "trivial"));
    if let Some((n, _)) = cube {
        entries.push(upper(
            "hypercube-doubling",
            hypercube_upper_bound(n)? as usize,
            &format!("repeated doubling from Q2 to Q{n}"),
        ));
        if let Ok(c) = crate::constructions::hypercube_certificate(n) {
            entries.push(upper(
                "hypercube-construction",
                c.certificate.claimed,
                &c.source,
            ));
        }
    }
    if let Ok(spec) = crate::constructions::TwoRegularSpec::recognize(g) {
        entries.push(upper(
            "two-regular",
            spec.strength(),
            &format!(
                "two-regular construction, {} odd cycle{}",
                spec.odd_count(),
                if spec.odd_count() == 1 { "" } else { "s" }
            ),
        ));
    }
    if g.is_forest() && p >= 3 {
        entries.push(upper("forest", p + 1, "forest deletion sequence"));
    }
    if opts.sequence_budget > 0 && !g.is_complete() {
        for mode in [crate::delta::Mode::MinDegree, crate::delta::Mode::AnyDegree] {
            let out = crate::delta::find_delta_sequence(g, mode, opts.sequence_budget)?;
            if let Some(seq) = out.found() {
                entries.push(upper(
                    "sequence",
                    p + seq.d1(),
                    &format!("{mode} deletion sequence"),
                ));
                break;
            }
        }
    }
    let best_lower = entries
        .iter()
        .filter(|e| e.kind == BoundKind::Lower)
        .filter_map(|e| e.value)
        .max()
        .unwrap();
    let best_upper = entries
        .iter()
        .filter(|e| e.kind == BoundKind::Upper)
        .filter_map(|e| e.value)
        .min()
        .unwrap();
    Ok(BoundsReport {
        p,
        q: g.size(),
        entries,
        best_lower,
        best_upper,
        xi_profile: profile,
    })
}
