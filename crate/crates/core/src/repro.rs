//! Reproduction harness: recomputes every reference value the library
//! covers and compares it with the expected number.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundsOptions};
use crate::constructions::{self, TwoRegularSpec};
use crate::delta::{self, DeltaSequence, Mode, SearchOutcome, DEFAULT_BUDGET};
use crate::family;
use crate::fixtures::{self, Fixture};
use crate::graph::Graph;
use crate::labeling::{self, strength_of, verify_certificate, LowerBoundKind, Verdict};
use crate::oracle::{self, Feasibility};
use crate::Result;

#[derive(Debug, Clone, Default)]
pub struct ReproOptions {
    /// Keep only items whose id or tags contain this string.
    pub filter: Option<String>,
    /// Read fixtures from this directory instead of the built-in copies.
    pub fixture_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproItem {
    pub id: String,
    pub tags: Vec<String>,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproReport {
    pub items: Vec<ReproItem>,
    pub passed: usize,
    pub failed: usize,
}

impl ReproReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for it in &self.items {
            out.push_str(&format!(
                "{} {:<34} expected {:<22} got {}\n",
                if it.pass { "PASS" } else { "FAIL" },
                it.id,
                it.expected,
                it.computed
            ));
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}

type Check = Box<dyn Fn(&Ctx) -> Result<String>>;

struct Ctx {
    fixture_dir: Option<PathBuf>,
}

impl Ctx {
    fn fixture(&self, name: &str) -> Result<Fixture> {
        match &self.fixture_dir {
            Some(d) => fixtures::load_fixture_from_dir(d, name),
            None => fixtures::load_fixture(name),
        }
    }
}

fn mixed_cycles() -> TwoRegularSpec {
    TwoRegularSpec::from_cycle_lengths(&[4, 6, 5, 5, 7]).unwrap()
}

fn found(g: &Graph, mode: Mode) -> Result<Option<DeltaSequence>> {
    Ok(delta::find_delta_sequence(g, mode, DEFAULT_BUDGET)?.found())
}

fn q4_reference_sequence() -> Result<DeltaSequence> {
    DeltaSequence::replay(&family::hypercube(4), &[0, 3, 5, 6])
}

fn items() -> Vec<(&'static str, &'static str, &'static str, Check)> {
    vec![
        (
            "union-order",
            "graph",
            "27",
            Box::new(|_| Ok(mixed_cycles().graph().order().to_string())),
        ),
        (
            "two-regular-strength",
            "two-regular",
            "31",
            Box::new(|_| Ok(constructions::label_two_regular(&mixed_cycles())?.claimed.to_string())),
        ),
        (
            "two-regular-blocks",
            "two-regular",
            "[1,27,2,26] [3,25,4,24,5,23] [6,22,7,21,8] [9,20,10,19,11] [12,18,13,17,14,16,15]",
            Box::new(|_| {
                Ok(mixed_cycles()
                    .label_blocks()
                    .iter()
                    .map(|b| format!("{b:?}").replace(' ', ""))
                    .collect::<Vec<_>>()
                    .join(" "))
            }),
        ),
        (
            "two-regular-verdict",
            "two-regular certificate",
            "exact 31",
            Box::new(|_| {
                let spec = mixed_cycles();
                let c = constructions::label_two_regular(&spec)?;
                Ok(verdict_text(&verify_certificate(&spec.graph(), &c)))
            }),
        ),
        (
            "two-regular-alpha",
            "two-regular bounds",
            "alpha 12, bound 31",
            Box::new(|_| {
                let g = mixed_cycles().graph();
                let a = bounds::independence_number(&g)?.size;
                Ok(format!("alpha {a}, bound {}", bounds::independence_lower_bound_str(&g)?))
            }),
        ),
        (
            "odd-cycles-independence",
            "two-regular bounds",
            "21 > 19",
            Box::new(|_| {
                let g = TwoRegularSpec::from_cycle_lengths(&[5, 5, 7])?.graph();
                let r = bounds::bounds_report(&g, &BoundsOptions::default())?;
                let ind = r.entry("2p-2alpha+1").and_then(|e| e.value).unwrap_or(0);
                let pd = r.entry("p+delta").and_then(|e| e.value).unwrap_or(0);
                Ok(format!("{ind} > {pd}"))
            }),
        ),
        (
            "example21-sequence",
            "sequence example21",
            "(d=2) (m=1,d=2) (m=1,d=1) (m=0,K2)",
            Box::new(|_| {
                let g = family::example21();
                let Some(s) = found(&g, Mode::MinDegree)? else {
                    return Ok("no sequence".into());
                };
                let mut parts = vec![format!("(d={})", s.steps[0].d)];
                parts.extend(s.steps[1..].iter().map(|st| format!("(m={},d={})", st.m, st.d)));
                parts.push(format!("(m={},K{})", s.terminal.m, s.terminal.clique.len()));
                Ok(parts.join(" "))
            }),
        ),
        (
            "example21-strength",
            "sequence example21",
            "14",
            Box::new(|_| {
                let g = family::example21();
                let s = found(&g, Mode::MinDegree)?.ok_or(crate::Error::Mismatch("no sequence".into()))?;
                Ok(strength_of(&g, &delta::label_from_sequence(&g, &s)?)?.to_string())
            }),
        ),
        (
            "example21-fixture",
            "fixture example21",
            "14",
            Box::new(|c| {
                let fx = c.fixture("example21")?;
                Ok(strength_of(&fx.graph, &fx.numbering)?.to_string())
            }),
        ),
        (
            "example21-isolated",
            "fixture example21",
            "14 on 14 vertices",
            Box::new(|c| {
                let fx = c.fixture("example21")?;
                let g = fx.graph.disjoint_union_with(&Graph::empty(2));
                let f = labeling::extend_over_isolated(&fx.numbering, 2);
                Ok(format!("{} on {} vertices", strength_of(&g, &f)?, g.order()))
            }),
        ),
        (
            "example22-min-degree",
            "sequence example22",
            "exhausted",
            Box::new(|_| {
                Ok(match delta::find_delta_sequence(&family::example22(), Mode::MinDegree, DEFAULT_BUDGET)? {
                    SearchOutcome::Found { .. } => "found".into(),
                    SearchOutcome::Exhausted { .. } => "exhausted".into(),
                    SearchOutcome::BudgetHit { .. } => "budget hit".into(),
                })
            }),
        ),
        (
            "example22-any-degree",
            "sequence example22",
            "d1=2 z=[1, 0, 0]",
            Box::new(|_| {
                let Some(s) = found(&family::example22(), Mode::AnyDegree)? else {
                    return Ok("no sequence".into());
                };
                Ok(format!("d1={} z={:?}", s.d1(), s.prefix_sums()))
            }),
        ),
        (
            "example22-strength",
            "sequence example22",
            "17",
            Box::new(|_| {
                let g = family::example22();
                let s = found(&g, Mode::AnyDegree)?.ok_or(crate::Error::Mismatch("no sequence".into()))?;
                Ok(strength_of(&g, &delta::label_from_sequence(&g, &s)?)?.to_string())
            }),
        ),
        (
            "example22-fixture",
            "fixture example22",
            "17",
            Box::new(|c| {
                let fx = c.fixture("example22")?;
                Ok(strength_of(&fx.graph, &fx.numbering)?.to_string())
            }),
        ),
        (
            "example22-embed",
            "sequence embed example22",
            "itself, exact 17",
            Box::new(|_| {
                let e = delta::embed_minimal(&family::example22(), DEFAULT_BUDGET)?;
                let what = if e.attached.is_none() { "itself" } else { "extended" };
                Ok(format!("{what}, {}", cert_text(&e.graph, &e.certificate)))
            }),
        ),
        (
            "star-forest-sequence",
            "forest",
            "z2 = 6",
            Box::new(|_| {
                let s = delta::forest_delta_sequence(&family::complete_bipartite(1, 6))?;
                Ok(format!("z2 = {}", s.prefix_sums()[0]))
            }),
        ),
        (
            "q4-reference-sequence",
            "hypercube sequence",
            "z=[-1, -1, 0, 4] Z=-1",
            Box::new(|_| {
                let s = q4_reference_sequence()?;
                Ok(format!("z={:?} Z={}", s.prefix_sums(), s.min_z().unwrap()))
            }),
        ),
        (
            "q4-plus-k45",
            "hypercube sequence compose",
            "29",
            Box::new(|_| {
                let h = family::hypercube(4);
                let t = family::complete_bipartite(4, 5);
                let t_seq = DeltaSequence::replay(&t, &[4])?;
                let (g, s) = delta::compose_h_plus_t(&h, &q4_reference_sequence()?, &t, &t_seq)?;
                Ok(strength_of(&g, &delta::label_from_sequence(&g, &s)?)?.to_string())
            }),
        ),
        (
            "q4-embed",
            "hypercube sequence embed",
            "K4,5 attached, exact 29",
            Box::new(|_| {
                let e = delta::embed_minimal(&family::hypercube(4), DEFAULT_BUDGET)?;
                let (m, n) = e.attached.unwrap_or((0, 0));
                Ok(format!("K{m},{n} attached, {}", cert_text(&e.graph, &e.certificate)))
            }),
        ),
        (
            "odd-cycles-plus-k24",
            "two-regular sequence compose",
            "Z=-2, 25",
            Box::new(|_| {
                // Three odd cycles on 17 vertices plus K_{2,4}: 17 + 3 + 5.
                let h = TwoRegularSpec::from_cycle_lengths(&[5, 5, 7])?.graph();
                let (z, h_seq) = delta::best_z_sequence(&h, Mode::AnyDegree, DEFAULT_BUDGET)?;
                let t = family::complete_bipartite(2, 4);
                let t_seq = DeltaSequence::replay(&t, &[2])?;
                let (g, s) = delta::compose_h_plus_t(&h, &h_seq, &t, &t_seq)?;
                let f = delta::label_from_sequence(&g, &s)?;
                Ok(format!("Z={z}, {}", strength_of(&g, &f)?))
            }),
        ),
        (
            "q4-profile",
            "hypercube bounds",
            "x=[4, 6, 7, 7] bound 21",
            Box::new(|_| {
                let prof = bounds::xi_profile(&family::hypercube(4), 4, bounds::XI_BUDGET)?;
                let xs: Vec<usize> = prof.x.values().map(|e| e.x).collect();
                Ok(format!("x={xs:?} bound {}", prof.bound(16).unwrap_or(0)))
            }),
        ),
        (
            "q4-bounds",
            "hypercube bounds",
            "21..21",
            Box::new(|_| {
                let r = bounds::bounds_report(&family::hypercube(4), &BoundsOptions::default())?;
                Ok(format!("{}..{}", r.best_lower, r.best_upper))
            }),
        ),
        (
            "hypercube-lower-forms",
            "hypercube bounds",
            "6 11 21 40 76 1053 2082",
            Box::new(|_| {
                let v: Vec<String> = [2, 3, 4, 5, 6, 10, 11]
                    .iter()
                    .map(|&n| bounds::hypercube_lower_bound(n).map(|x| x.to_string()))
                    .collect::<Result<_>>()?;
                Ok(v.join(" "))
            }),
        ),
        (
            "hypercube-upper-forms",
            "hypercube bounds",
            "6 41 81",
            Box::new(|_| {
                let v: Vec<String> = [2, 5, 6]
                    .iter()
                    .map(|&n| bounds::hypercube_upper_bound(n).map(|x| x.to_string()))
                    .collect::<Result<_>>()?;
                Ok(v.join(" "))
            }),
        ),
        (
            "hypercube-doubling",
            "hypercube constructions",
            "6 11 21",
            Box::new(|_| {
                let (g, bn) = constructions::k2_seed();
                let chain = constructions::doubling_chain(g, bn, 3)?;
                let v: Vec<String> = chain[1..]
                    .iter()
                    .map(|(g, bn)| strength_of(g, bn.numbering()).map(|s| s.to_string()))
                    .collect::<Result<_>>()?;
                Ok(v.join(" "))
            }),
        ),
        (
            "q5-table",
            "hypercube fixture",
            "exact 40",
            Box::new(|c| {
                let fx = c.fixture("Q5")?;
                Ok(cert_text(&fx.graph, &fx.certificate(LowerBoundKind::Hypercube)?))
            }),
        ),
        (
            "q6-table",
            "hypercube fixture",
            "bracket [76, 79]",
            Box::new(|c| {
                let fx = c.fixture("Q6")?;
                Ok(cert_text(&fx.graph, &fx.certificate(LowerBoundKind::Hypercube)?))
            }),
        ),
        (
            "q3-threshold",
            "hypercube oracle",
            "10 infeasible, 11 feasible",
            Box::new(|_| {
                let q3 = family::hypercube(3);
                let at = |t| -> Result<&'static str> {
                    Ok(match oracle::feasible_at(&q3, t, oracle::ORACLE_BUDGET)? {
                        Feasibility::Feasible(_) => "feasible",
                        Feasibility::Infeasible => "infeasible",
                        Feasibility::BudgetHit => "budget hit",
                    })
                };
                Ok(format!("10 {}, 11 {}", at(10)?, at(11)?))
            }),
        ),
        (
            "k23-oracle",
            "oracle",
            "7",
            Box::new(|_| Ok(oracle::strength(&family::complete_bipartite(2, 3))?.to_string())),
        ),
    ]
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Exact { strength } => format!("exact {strength}"),
        Verdict::Bracket { lower, upper } => format!("bracket [{lower}, {upper}]"),
        Verdict::Invalid { reason } => format!("invalid: {reason}"),
    }
}

fn cert_text(g: &Graph, c: &labeling::StrengthCertificate) -> String {
    verdict_text(&verify_certificate(g, c))
}

/// Runs the selected items. Errors inside an item count as failures.
pub fn run_repro(opts: &ReproOptions) -> ReproReport {
    let ctx = Ctx {
        fixture_dir: opts.fixture_dir.clone(),
    };
    let mut out = Vec::new();
    for (id, tags, expected, check) in items() {
        if let Some(f) = &opts.filter {
            if !id.contains(f.as_str()) && !tags.split(' ').any(|t| t.contains(f.as_str())) {
                continue;
            }
        }
        let computed = match check(&ctx) {
            Ok(s) => s,
            Err(e) => format!("error: {e}"),
        };
        out.push(ReproItem {
            id: id.into(),
            tags: tags.split(' ').map(String::from).collect(),
            expected: expected.into(),
            pass: computed == expected,
            computed,
        });
    }
    let passed = out.iter().filter(|i| i.pass).count();
    ReproReport {
        failed: out.len() - passed,
        passed,
        items: out,
    }
}
