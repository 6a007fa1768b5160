#![allow(dead_code)]

use graph_strength::graph::Graph;
use graph_strength::io;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All 994 connected graphs on 3 to 7 vertices, one per isomorphism class.
pub fn connected_catalog() -> Vec<Graph> {
    io::parse_graph6_lines(include_str!("../data/connected_3_to_7.g6")).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `G(n, prob)` with isolated vertices removed, redrawn until at least
/// three vertices remain.
pub fn random_graph(rng: &mut ChaCha8Rng, max_p: usize) -> Graph {
    loop {
        let n = rng.gen_range(3..=max_p);
        let prob = rng.gen_range(0.2..0.8);
        let g = graph_strength::family::gnp(n, prob, rng.gen());
        let (g, _) = g.strip_isolated();
        if g.order() >= 3 {
            return g;
        }
    }
}

/// A random forest on `p` vertices without isolated vertices: a Prüfer
/// tree with a few edges removed, keeping every component at two or more
/// vertices.
pub fn random_forest(rng: &mut ChaCha8Rng, p: usize) -> Graph {
    assert!(p >= 3);
    let prufer: Vec<usize> = (0..p - 2).map(|_| rng.gen_range(0..p)).collect();
    let mut degree = vec![1usize; p];
    for &v in &prufer {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(p - 1);
    for &v in &prufer {
        let leaf = (0..p).find(|&u| degree[u] == 1).unwrap();
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..p).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges.shuffle(rng);
    let cuts = rng.gen_range(0..=p / 4);
    let mut kept = edges.clone();
    for e in edges.iter().take(cuts) {
        let trial: Vec<_> = kept.iter().copied().filter(|x| x != e).collect();
        let g = Graph::from_edges(p, &trial).unwrap();
        if g.isolated_vertices().is_empty() {
            kept = trial;
        }
    }
    Graph::from_edges(p, &kept).unwrap()
}

/// Paley graph on 17 vertices: `u ~ v` iff `u − v` is a nonzero square.
pub fn paley17() -> Graph {
    let squares: Vec<usize> = (1..17).map(|x| x * x % 17).collect();
    let edges: Vec<_> = (0..17)
        .flat_map(|u| (u + 1..17).map(move |v| (u, v)))
        .filter(|&(u, v)| squares.contains(&((v - u) % 17)))
        .collect();
    Graph::from_edges(17, &edges).unwrap()
}

/// Relabels `g` by `perm` (old vertex `v` becomes `perm[v]`).
pub fn permuted(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<_> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edges(g.order(), &edges).unwrap()
}

/// Every multiset of cycle lengths (each at least 3) with total at most `max_p`.
pub fn cycle_multisets(max_p: usize) -> Vec<Vec<usize>> {
    fn go(min: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for l in min..=left {
            cur.push(l);
            go(l, left - l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(3, max_p, &mut Vec::new(), &mut out);
    out
}
