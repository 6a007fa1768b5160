mod common;

use graph_strength::oracle::{self, Feasibility, OracleOptions, OracleStatus};
use graph_strength::{family, Graph};

/// Strengths of the catalog graphs from a plain permutation enumeration.
fn brute_force_values() -> Vec<usize> {
    include_str!("data/connected_3_to_7.str")
        .lines()
        .map(|l| l.parse().unwrap())
        .collect()
}

#[test]
fn catalog_matches_permutation_enumeration() {
    let graphs = common::connected_catalog();
    let want = brute_force_values();
    assert_eq!(graphs.len(), want.len());
    for (i, (g, &w)) in graphs.iter().zip(&want).enumerate() {
        assert_eq!(oracle::strength(g).unwrap(), w, "catalog #{i}");
    }
}

#[test]
fn petersen_regression() {
    let r = oracle::exact_strength(&family::petersen(), &OracleOptions::default()).unwrap();
    assert_eq!(r.status, OracleStatus::Exact);
    assert_eq!(r.str_value, 14);
    assert_eq!(r.witness.strength(&family::petersen()).unwrap(), 14);
}

#[test]
fn relabeling_does_not_change_the_value() {
    let mut rng = common::rng(11);
    for _ in 0..40 {
        let g = common::random_graph(&mut rng, 9);
        let mut perm: Vec<usize> = (0..g.order()).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        let h = common::permuted(&g, &perm);
        assert_eq!(oracle::strength(&g).unwrap(), oracle::strength(&h).unwrap());
    }
}

#[test]
fn threshold_is_monotone() {
    let g: Graph = family::wheel(6).unwrap();
    let s = oracle::strength(&g).unwrap();
    for t in 3..s {
        assert_eq!(oracle::feasible_at(&g, t, oracle::ORACLE_BUDGET).unwrap(), Feasibility::Infeasible);
    }
    for t in s..s + 3 {
        assert!(matches!(oracle::feasible_at(&g, t, oracle::ORACLE_BUDGET).unwrap(), Feasibility::Feasible(_)));
    }
}

#[test]
fn budget_hit_gives_a_bracket() {
    let g = common::paley17();
    let opts = OracleOptions {
        budget: 10,
        cap: 17,
        ..OracleOptions::default()
    };
    let r = oracle::exact_strength(&g, &opts).unwrap();
    assert_eq!(r.status, OracleStatus::BudgetHitBracket);
    assert!(r.lower <= r.upper);
    assert_eq!(r.witness.strength(&g).unwrap(), r.upper);
}
