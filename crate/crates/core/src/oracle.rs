//! Exact strength by branch and bound, for small graphs.
//!
//! The decision version asks for a numbering with every edge sum at most
//! `t`. Labels are handed out from `p` downwards; a vertex may take label
//! `ℓ` only if each labeled neighbor has label at most `t − ℓ`, so every
//! vertex carries a cap that shrinks as its neighbors are labeled. A Hall
//! count over the caps prunes branches whose remaining labels cannot all be
//! placed, and once `2ℓ − 1 ≤ t` the remaining labels no longer constrain
//! each other, so the Hall count decides the rest outright.
//!
//! Symmetry: the first label is tried on one vertex per automorphism orbit,
//! and among unlabeled twins (equal open or closed neighborhoods) only the
//! smallest is tried.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};
use crate::labeling::{extend_over_isolated, strength_of, Numbering};
use crate::{Error, Result};

/// Largest order (after removing isolated vertices) the oracle accepts.
pub const ORACLE_CAP: usize = 14;

/// Default node budget for a whole [`exact_strength`] run.
pub const ORACLE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Numbering),
    Infeasible,
    BudgetHit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleStatus {
    Exact,
    /// Search stopped early; the value lies in `[lower, upper]`.
    BudgetHitBracket,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    /// The strength when exact, otherwise the upper end of the bracket.
    pub str_value: usize,
    pub lower: usize,
    pub upper: usize,
    pub witness: Numbering,
    pub nodes_explored: u64,
    pub status: OracleStatus,
}

impl OracleResult {
    pub fn is_exact(&self) -> bool {
        self.status == OracleStatus::Exact
    }
}

#[derive(Debug, Clone)]
pub struct OracleOptions {
    pub budget: u64,
    pub time_limit: Option<Duration>,
    pub cap: usize,
    /// First threshold tried; thresholds below it are assumed infeasible.
    /// The default, 3, assumes nothing.
    pub start: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            budget: ORACLE_BUDGET,
            time_limit: None,
            cap: ORACLE_CAP,
            start: 3,
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    t: usize,
    label: Vec<usize>,
    cap: Vec<usize>,
    /// Smallest member of each vertex's twin class.
    twin_rep: Vec<Vertex>,
    /// Vertices allowed to take the first label.
    roots: Vec<Vertex>,
    nodes: u64,
    budget: u64,
    deadline: Option<Instant>,
    hit: bool,
}

enum Step {
    Done,
    Fail,
}

impl Search<'_> {
    fn over_budget(&mut self) -> bool {
        if self.nodes >= self.budget {
            self.hit = true;
        } else if self.nodes.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.hit = true;
                }
            }
        }
        self.hit
    }

    /// Hall check: labels `1..=l` go to the unlabeled vertices, label `j`
    /// only to a vertex with cap at least `j`.
    fn hall_ok(&self, l: usize) -> bool {
        let mut count = vec![0usize; l + 2];
        for v in 0..self.label.len() {
            if self.label[v] == 0 {
                count[self.cap[v].min(l)] += 1;
            }
        }
        // at_least = #{unlabeled v : cap[v] ≥ j}
        let mut at_least = 0;
        for j in (1..=l).rev() {
            at_least += count[j];
            if at_least < l - j + 1 {
                return false;
            }
        }
        true
    }

    fn assign_rest_greedily(&mut self, l: usize) {
        let mut rest: Vec<Vertex> = (0..self.label.len()).filter(|&v| self.label[v] == 0).collect();
        rest.sort_by_key(|&v| (std::cmp::Reverse(self.cap[v]), v));
        for (k, v) in rest.into_iter().enumerate() {
            self.label[v] = l - k;
        }
    }

    fn go(&mut self, l: usize) -> Step {
        if l == 0 {
            return Step::Done;
        }
        if !self.hall_ok(l) {
            return Step::Fail;
        }
        if 2 * l <= self.t + 1 {
            self.assign_rest_greedily(l);
            return Step::Done;
        }
        let p = self.label.len();
        let mut cands: Vec<(usize, Vertex)> = Vec::new();
        let pool: Vec<Vertex> = if l == p { self.roots.clone() } else { (0..p).collect() };
        for v in pool {
            if self.label[v] != 0 || self.cap[v] < l {
                continue;
            }
            let r = self.twin_rep[v];
            if r != v && self.label[r] == 0 {
                continue;
            }
            let free = self.g.neighbors(v).iter().filter(|&&w| self.label[w] == 0).count();
            cands.push((free, v));
        }
        cands.sort_unstable();
        for (_, v) in cands {
            self.nodes += 1;
            if self.over_budget() {
                return Step::Fail;
            }
            self.label[v] = l;
            let saved: Vec<(Vertex, usize)> = self
                .g
                .neighbors(v)
                .iter()
                .filter(|&&w| self.label[w] == 0)
                .map(|&w| (w, self.cap[w]))
                .collect();
            let limit = self.t.saturating_sub(l);
            for &(w, c) in &saved {
                self.cap[w] = c.min(limit);
            }
            if let Step::Done = self.go(l - 1) {
                return Step::Done;
            }
            for (w, c) in saved {
                self.cap[w] = c;
            }
            self.label[v] = 0;
            if self.hit {
                return Step::Fail;
            }
        }
        Step::Fail
    }
}

fn twin_representatives(g: &Graph) -> Vec<Vertex> {
    let p = g.order();
    let mut rep: Vec<Vertex> = (0..p).collect();
    for v in 0..p {
        for u in 0..v {
            if rep[u] != u {
                continue;
            }
            let open = g.row(u) == g.row(v);
            let closed = g.closed_neighborhood(u) == g.closed_neighborhood(v);
            if open || closed {
                rep[v] = u;
                break;
            }
        }
    }
    rep
}

fn check_size(g: &Graph, cap: usize) -> Result<()> {
    if g.order() > cap {
        return Err(Error::CapExceeded {
            what: "exact oracle",
            cap,
            got: g.order(),
        });
    }
    Ok(())
}

fn feasible_inner(
    g: &Graph,
    t: usize,
    roots: &[Vertex],
    twins: &[Vertex],
    budget: u64,
    deadline: Option<Instant>,
) -> (Feasibility, u64) {
    let p = g.order();
    if g.size() == 0 || t + 1 >= 2 * p {
        return (Feasibility::Feasible(Numbering::identity(p)), 0);
    }
    if t < 3 {
        return (Feasibility::Infeasible, 0);
    }
    let mut s = Search {
        g,
        t,
        label: vec![0; p],
        cap: vec![p; p],
        twin_rep: twins.to_vec(),
        roots: roots.to_vec(),
        nodes: 0,
        budget,
        deadline,
        hit: false,
    };
    let res = match s.go(p) {
        Step::Done => {
            let f = Numbering::new(s.label).expect("search assigns a bijection");
            debug_assert!(strength_of(g, &f).unwrap() <= t);
            Feasibility::Feasible(f)
        }
        Step::Fail if s.hit => Feasibility::BudgetHit,
        Step::Fail => Feasibility::Infeasible,
    };
    (res, s.nodes)
}

/// Is there a numbering of `g` with strength at most `t`?
pub fn feasible_at(g: &Graph, t: usize, budget: u64) -> Result<Feasibility> {
    check_size(g, ORACLE_CAP)?;
    let roots: Vec<Vertex> = crate::canon::vertex_orbits(g).iter().map(|o| o[0]).collect();
    Ok(feasible_inner(g, t, &roots, &twin_representatives(g), budget, None).0)
}

/// High labels to low-degree vertices; used as the upper end of a bracket.
fn heuristic_numbering(g: &Graph) -> Numbering {
    let p = g.order();
    let mut order: Vec<Vertex> = (0..p).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut labels = vec![0; p];
    for (k, v) in order.into_iter().enumerate() {
        labels[v] = p - k;
    }
    Numbering::new(labels).unwrap()
}

/// The strength of `g` by trying thresholds upward from `opts.start`.
///
/// Isolated vertices are set aside and receive the top labels afterwards,
/// which leaves the strength unchanged.
pub fn exact_strength(g: &Graph, opts: &OracleOptions) -> Result<OracleResult> {
    let (core, map) = g.strip_isolated();
    if core.size() == 0 {
        return Err(Error::UndefinedStrength);
    }
    check_size(&core, opts.cap)?;
    let p = core.order();
    let deadline = opts.time_limit.map(|d| Instant::now() + d);
    let roots: Vec<Vertex> = crate::canon::vertex_orbits(&core).iter().map(|o| o[0]).collect();
    let twins = twin_representatives(&core);
    let lift = |f: &Numbering| -> Numbering {
        let ext = extend_over_isolated(f, g.order() - p);
        // `ext` numbers the core first, then the isolated vertices in order.
        let mut labels = vec![0; g.order()];
        let isolated = g.isolated_vertices();
        for (new, &old) in map.iter().chain(isolated.iter()).enumerate() {
            labels[old] = ext.label(new);
        }
        Numbering::new(labels).unwrap()
    };
    let mut nodes = 0u64;
    let top = 2 * p - 1;
    for t in opts.start.max(3)..=top {
        let (res, n) = feasible_inner(
            &core,
            t,
            &roots,
            &twins,
            opts.budget.saturating_sub(nodes),
            deadline,
        );
        nodes += n;
        match res {
            Feasibility::Feasible(f) => {
                let witness = lift(&f);
                let s = strength_of(g, &witness)?;
                return Ok(OracleResult {
                    str_value: s,
                    lower: s,
                    upper: s,
                    witness,
                    nodes_explored: nodes,
                    status: OracleStatus::Exact,
                });
            }
            Feasibility::Infeasible => {}
            Feasibility::BudgetHit => {
                let h = heuristic_numbering(&core);
                let witness = lift(&h);
                let upper = strength_of(g, &witness)?;
                return Ok(OracleResult {
                    str_value: upper,
                    lower: t,
                    upper,
                    witness,
                    nodes_explored: nodes,
                    status: OracleStatus::BudgetHitBracket,
                });
            }
        }
    }
    unreachable!("threshold 2p - 1 is always feasible")
}

/// [`exact_strength`] with default options.
pub fn strength(g: &Graph) -> Result<usize> {
    let r = exact_strength(g, &OracleOptions::default())?;
    if !r.is_exact() {
        return Err(Error::BudgetExhausted(format!(
            "strength lies in [{}, {}]",
            r.lower, r.upper
        )));
    }
    Ok(r.str_value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family;

    #[test]
    fn small_values() {
        assert_eq!(strength(&family::complete(2)).unwrap(), 3);
        assert_eq!(strength(&family::complete_bipartite(2, 3)).unwrap(), 7);
        assert_eq!(strength(&family::cycle(7).unwrap()).unwrap(), 9);
        assert_eq!(strength(&family::complete(6)).unwrap(), 11);
        assert_eq!(strength(&family::path(6)).unwrap(), 7);
    }

    #[test]
    fn c4_thresholds() {
        let c4 = family::cycle(4).unwrap();
        assert!(matches!(feasible_at(&c4, 6, 1000).unwrap(), Feasibility::Feasible(_)));
        assert_eq!(feasible_at(&c4, 5, 1000).unwrap(), Feasibility::Infeasible);
    }

    #[test]
    fn isolated_vertices_are_ignored() {
        let g = family::cycle(5).unwrap().disjoint_union_with(&Graph::empty(2));
        let r = exact_strength(&g, &OracleOptions::default()).unwrap();
        assert_eq!(r.str_value, 7);
        assert_eq!(r.witness.order(), 7);
        assert_eq!(strength_of(&g, &r.witness).unwrap(), 7);
        assert!(matches!(exact_strength(&Graph::empty(3), &OracleOptions::default()), Err(Error::UndefinedStrength)));
    }

    #[test]
    fn cap_and_budget() {
        assert!(matches!(
            exact_strength(&family::path(15), &OracleOptions::default()),
            Err(Error::CapExceeded { .. })
        ));
        let opts = OracleOptions {
            budget: 5,
            ..OracleOptions::default()
        };
        let r = exact_strength(&family::petersen(), &opts).unwrap();
        assert_eq!(r.status, OracleStatus::BudgetHitBracket);
        assert!(r.lower <= r.upper);
    }
}
