//! Numberings, their strength, and strength certificates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundsOptions};
use crate::graph::{Graph, Vertex};
use crate::{Error, Result};

/// A bijection from the vertices `0..p` onto the labels `1..=p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "NumberingDoc", into = "NumberingDoc")]
pub struct Numbering {
    labels: Vec<usize>,
}

/// JSON form: `{"p": int, "labels": [label of vertex 0, …]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NumberingDoc {
    pub p: usize,
    pub labels: Vec<usize>,
}

impl TryFrom<NumberingDoc> for Numbering {
    type Error = Error;

    fn try_from(doc: NumberingDoc) -> Result<Self> {
        if doc.p != doc.labels.len() {
            return Err(Error::NotBijective(format!(
                "p = {} but {} labels given",
                doc.p,
                doc.labels.len()
            )));
        }
        Numbering::new(doc.labels)
    }
}

impl From<Numbering> for NumberingDoc {
    fn from(f: Numbering) -> Self {
        NumberingDoc {
            p: f.labels.len(),
            labels: f.labels,
        }
    }
}

impl Numbering {
    /// `labels[v]` is the label of vertex `v`.
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        let p = labels.len();
        let mut seen = vec![false; p + 1];
        for (v, &l) in labels.iter().enumerate() {
            if l == 0 || l > p {
                return Err(Error::NotBijective(format!(
                    "vertex {v} has label {l} outside [1, {p}]"
                )));
            }
            if std::mem::replace(&mut seen[l], true) {
                return Err(Error::NotBijective(format!("label {l} used twice")));
            }
        }
        Ok(Numbering { labels })
    }

    pub fn identity(p: usize) -> Self {
        Numbering {
            labels: (1..=p).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, v: Vertex) -> usize {
        self.labels[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Inverse map: `vertex_of()[l - 1]` carries label `l`.
    pub fn vertex_of(&self) -> Vec<Vertex> {
        let mut inv = vec![0; self.labels.len()];
        for (v, &l) in self.labels.iter().enumerate() {
            inv[l - 1] = v;
        }
        inv
    }

    /// `max f(u) + f(v)` over the edges of `g`.
    pub fn strength(&self, g: &Graph) -> Result<usize> {
        strength_of(g, self)
    }
}

/// Strength of a numbering: the largest induced edge label.
pub fn strength_of(g: &Graph, f: &Numbering) -> Result<usize> {
    if f.order() != g.order() {
        return Err(Error::Mismatch(format!(
            "numbering covers {} vertices, graph has {}",
            f.order(),
            g.order()
        )));
    }
    g.edges()
        .map(|(u, v)| f.label(u) + f.label(v))
        .max()
        .ok_or(Error::UndefinedStrength)
}

/// Extends `f` on `G` to `G + mK1`, the new isolated vertices `p..p+m`
/// taking labels `p+1..=p+m`. The strength does not change.
pub fn extend_over_isolated(f: &Numbering, m: usize) -> Numbering {
    let p = f.order();
    let mut labels = f.labels.clone();
    labels.extend(p + 1..=p + m);
    Numbering { labels }
}

/// Lower bounds a certificate may name. Each can be recomputed from the
/// graph alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "name")]
pub enum LowerBoundKind {
    /// `p + δ`.
    MinDegree,
    /// `p + κ′` (edge connectivity).
    EdgeConnectivity,
    /// `Δ + 2`.
    MaxDegree,
    /// `2p − 2α + 1`.
    Independence,
    /// `p + ξ`, with `ξ` taken over subset sizes up to `i_max`.
    Neighborhood { i_max: usize },
    /// Closed-form bound for hypercubes.
    Hypercube,
}

impl fmt::Display for LowerBoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerBoundKind::MinDegree => write!(f, "p+delta"),
            LowerBoundKind::EdgeConnectivity => write!(f, "p+edge-connectivity"),
            LowerBoundKind::MaxDegree => write!(f, "max-degree+2"),
            LowerBoundKind::Independence => write!(f, "2p-2alpha+1"),
            LowerBoundKind::Neighborhood { i_max } => write!(f, "p+xi(i<={i_max})"),
            LowerBoundKind::Hypercube => write!(f, "hypercube"),
        }
    }
}

impl LowerBoundKind {
    /// Recomputes the bound on `g`.
    pub fn evaluate(&self, g: &Graph) -> Result<usize> {
        let p = g.order();
        match *self {
            LowerBoundKind::MinDegree => Ok(p + g.min_degree()),
            LowerBoundKind::EdgeConnectivity => Ok(p + bounds::edge_connectivity(g)),
            LowerBoundKind::MaxDegree => Ok(g.max_degree() + 2),
            LowerBoundKind::Independence => {
                // Certificates may name this bound up to the hard cap.
                let a = bounds::independence_number_capped(g, 64)?;
                Ok((2 * p + 1).saturating_sub(2 * a.size))
            }
            LowerBoundKind::Neighborhood { i_max } => {
                let opts = BoundsOptions::default();
                let prof = bounds::xi_profile(g, i_max, opts.xi_budget)?;
                let xi = prof.xi.ok_or_else(|| {
                    Error::Precondition("neighborhood profile is empty".into())
                })?;
                Ok((p as i64 + xi).max(0) as usize)
            }
            LowerBoundKind::Hypercube => {
                let (n, _) = bounds::recognize_hypercube(g)
                    .ok_or_else(|| Error::Precondition("graph is not a hypercube".into()))?;
                Ok(bounds::hypercube_lower_bound(n)? as usize)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    #[serde(flatten)]
    pub kind: LowerBoundKind,
    pub value: usize,
}

/// A strength claim with its witness numbering and a named lower bound.
///
/// The claim is exact when the lower bound meets it; otherwise it is a
/// bracket `[lower, claimed]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrengthCertificate {
    pub claimed: usize,
    pub witness: Numbering,
    pub lower_bound: LowerBound,
}

impl StrengthCertificate {
    /// Evaluates `witness` on `g` and attaches the named bound, recomputed.
    pub fn build(g: &Graph, witness: Numbering, bound: LowerBoundKind) -> Result<Self> {
        let claimed = strength_of(g, &witness)?;
        let value = bound.evaluate(g)?;
        Ok(StrengthCertificate {
            claimed,
            witness,
            lower_bound: LowerBound { kind: bound, value },
        })
    }

    pub fn is_exact(&self) -> bool {
        self.lower_bound.value == self.claimed
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum Verdict {
    Exact { strength: usize },
    Bracket { lower: usize, upper: usize },
    Invalid { reason: String },
}

impl Verdict {
    pub fn is_exact(&self) -> bool {
        matches!(self, Verdict::Exact { .. })
    }

    pub fn is_invalid(&self) -> bool {
        matches!(self, Verdict::Invalid { .. })
    }
}

/// Re-checks a certificate against `g` from scratch.
pub fn verify_certificate(g: &Graph, c: &StrengthCertificate) -> Verdict {
    let invalid = |reason: String| Verdict::Invalid { reason };
    // The witness may have been built without going through `Numbering::new`.
    if let Err(e) = Numbering::new(c.witness.labels.clone()) {
        return invalid(e.to_string());
    }
    let actual = match strength_of(g, &c.witness) {
        Ok(s) => s,
        Err(e) => return invalid(e.to_string()),
    };
    if actual != c.claimed {
        return invalid(format!(
            "witness has strength {actual}, certificate claims {}",
            c.claimed
        ));
    }
    let lower = match c.lower_bound.kind.evaluate(g) {
        Ok(l) => l,
        Err(e) => return invalid(format!("cannot recompute {}: {e}", c.lower_bound.kind)),
    };
    if lower != c.lower_bound.value {
        return invalid(format!(
            "{} recomputes to {lower}, certificate states {}",
            c.lower_bound.kind, c.lower_bound.value
        ));
    }
    if lower > actual {
        return invalid(format!(
            "{} = {lower} exceeds the witness strength {actual}",
            c.lower_bound.kind
        ));
    }
    if lower == actual {
        Verdict::Exact { strength: actual }
    } else {
        Verdict::Bracket {
            lower,
            upper: actual,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family;

    #[test]
    fn triangle_forced() {
        let c3 = family::complete(3);
        assert_eq!(strength_of(&c3, &Numbering::identity(3)).unwrap(), 5);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Numbering::new(vec![1, 1, 3]).is_err());
        assert!(Numbering::new(vec![0, 1]).is_err());
        assert!(Numbering::new(vec![1, 4, 2]).is_err());
        let doc = r#"{"p": 3, "labels": [1, 2]}"#;
        assert!(serde_json::from_str::<Numbering>(doc).is_err());
        let doc = r#"{"p": 3, "labels": [3, 1, 2]}"#;
        assert_eq!(serde_json::from_str::<Numbering>(doc).unwrap().label(0), 3);
    }

    #[test]
    fn no_edges_is_an_error() {
        let g = Graph::empty(3);
        assert!(matches!(
            strength_of(&g, &Numbering::identity(3)),
            Err(Error::UndefinedStrength)
        ));
    }

    #[test]
    fn isolated_extension_keeps_strength() {
        let k2 = family::complete(2);
        let f = extend_over_isolated(&Numbering::identity(2), 3);
        let g = crate::graph::disjoint_union(&[&k2, &Graph::empty(3)]);
        assert_eq!(f.order(), 5);
        assert_eq!(strength_of(&g, &f).unwrap(), 3);

        let c3 = family::complete(3);
        let g = c3.disjoint_union_with(&Graph::empty(1));
        let f = extend_over_isolated(&Numbering::identity(3), 1);
        assert_eq!(strength_of(&g, &f).unwrap(), 5);
    }

    #[test]
    fn certificate_verdicts() {
        let k2 = family::complete(2);
        let c = StrengthCertificate::build(&k2, Numbering::identity(2), LowerBoundKind::MinDegree)
            .unwrap();
        assert_eq!(verify_certificate(&k2, &c), Verdict::Exact { strength: 3 });

        // C4 labeled 1,2,3,4 around the cycle has strength 7, not 10.
        let c4 = family::cycle(4).unwrap();
        let bad = StrengthCertificate {
            claimed: 10,
            witness: Numbering::identity(4),
            lower_bound: LowerBound {
                kind: LowerBoundKind::MinDegree,
                value: 6,
            },
        };
        assert!(verify_certificate(&c4, &bad).is_invalid());
        let honest = StrengthCertificate { claimed: 7, ..bad };
        assert_eq!(
            verify_certificate(&c4, &honest),
            Verdict::Bracket { lower: 6, upper: 7 }
        );
        let wrong_bound = StrengthCertificate {
            lower_bound: LowerBound {
                kind: LowerBoundKind::MinDegree,
                value: 5,
            },
            ..honest
        };
        assert!(verify_certificate(&c4, &wrong_bound).is_invalid());
    }

    #[test]
    fn certificate_json_shape() {
        let k2 = family::complete(2);
        let c = StrengthCertificate::build(&k2, Numbering::identity(2), LowerBoundKind::MinDegree)
            .unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["lower_bound"]["name"], "min-degree");
        assert_eq!(v["witness"]["labels"], serde_json::json!([1, 2]));
        let back: StrengthCertificate = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
    }
}
