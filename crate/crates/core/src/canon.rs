//! Equitable refinement, automorphism orbits and isomorphism testing for
//! small graphs.
//!
//! Orbits are found by looking for an automorphism `u ↦ v` for each pair of
//! vertices that refinement cannot tell apart, with an
//! individualize-and-refine search. Every automorphism found merges orbits
//! along all of its cycles, so most pairs are settled without a search.

use crate::graph::{Graph, Vertex};

/// Ordered partition of `0..p` into cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    cells: Vec<Vec<Vertex>>,
}

impl Partition {
    pub fn unit(p: usize) -> Self {
        Partition {
            cells: if p == 0 { vec![] } else { vec![(0..p).collect()] },
        }
    }

    /// Initial partition from a vertex coloring: cells ordered by color.
    pub fn from_colors(colors: &[usize]) -> Self {
        let mut keys: Vec<usize> = colors.to_vec();
        keys.sort_unstable();
        keys.dedup();
        let cells = keys
            .iter()
            .map(|&c| (0..colors.len()).filter(|&v| colors[v] == c).collect())
            .collect();
        Partition { cells }
    }

    pub fn cells(&self) -> &[Vec<Vertex>] {
        &self.cells
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    fn individualize(&mut self, v: Vertex) {
        let i = self.cells.iter().position(|c| c.contains(&v)).expect("vertex in partition");
        let rest: Vec<Vertex> = self.cells[i].iter().copied().filter(|&w| w != v).collect();
        if rest.is_empty() {
            return;
        }
        self.cells[i] = vec![v];
        self.cells.insert(i + 1, rest);
    }
}

/// Refines `part` to the coarsest equitable partition below it. Returns a
/// trace of the splits, which is identical for isomorphic inputs.
pub fn refine(g: &Graph, part: &mut Partition) -> Vec<usize> {
    let p = g.order();
    let mut trace = Vec::new();
    let mut cell_of = vec![0usize; p];
    'outer: loop {
        for (i, c) in part.cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        for w in 0..part.cells.len() {
            for x in 0..part.cells.len() {
                if part.cells[x].len() == 1 {
                    continue;
                }
                let count = |v: Vertex| g.neighbors(v).iter().filter(|&&u| cell_of[u] == w).count();
                let first = count(part.cells[x][0]);
                if part.cells[x].iter().all(|&v| count(v) == first) {
                    continue;
                }
                let mut keyed: Vec<(usize, Vertex)> =
                    part.cells[x].iter().map(|&v| (count(v), v)).collect();
                keyed.sort_unstable();
                let mut groups: Vec<Vec<Vertex>> = Vec::new();
                let mut last = usize::MAX;
                trace.extend([usize::MAX, w, x]);
                for (k, v) in keyed {
                    if k != last {
                        groups.push(Vec::new());
                        trace.push(k);
                        last = k;
                    }
                    groups.last_mut().unwrap().push(v);
                }
                for gr in &groups {
                    trace.push(gr.len());
                }
                part.cells.splice(x..=x, groups);
                continue 'outer;
            }
        }
        return trace;
    }
}

/// Finds a bijection `σ` with `σ(part_a cell i) = part_b cell i` that maps
/// edges of `a` onto edges of `b`. Both partitions must already be refined.
fn search_map(
    a: &Graph,
    pa: &Partition,
    b: &Graph,
    pb: &Partition,
    nodes: &mut usize,
    cap: usize,
) -> Option<Vec<Vertex>> {
    *nodes += 1;
    if *nodes > cap {
        return None;
    }
    if pa.cells.len() != pb.cells.len()
        || pa.cells.iter().zip(&pb.cells).any(|(x, y)| x.len() != y.len())
    {
        return None;
    }
    let Some(i) = pa.cells.iter().position(|c| c.len() > 1) else {
        let mut sigma = vec![0; a.order()];
        for (x, y) in pa.cells.iter().zip(&pb.cells) {
            sigma[x[0]] = y[0];
        }
        let ok = a.edges().all(|(u, v)| b.has_edge(sigma[u], sigma[v]));
        return ok.then_some(sigma);
    };
    let u = pa.cells[i][0];
    let mut na = pa.clone();
    na.individualize(u);
    let ta = refine(a, &mut na);
    for &v in &pb.cells[i] {
        let mut nb = pb.clone();
        nb.individualize(v);
        if refine(b, &mut nb) != ta {
            continue;
        }
        if let Some(s) = search_map(a, &na, b, &nb, nodes, cap) {
            return Some(s);
        }
        if *nodes > cap {
            return None;
        }
    }
    None
}

/// Search-node cap per orbit query. Hitting it only makes the reported
/// orbits finer than the true ones.
const SEARCH_CAP: usize = 20_000;

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.0[rx.max(ry)] = rx.min(ry);
        }
    }
}

/// Automorphism orbits of the vertices, each sorted, ordered by smallest
/// member.
///
/// The result may be finer than the true orbit partition if the internal
/// search cap is reached on a pathological graph; it is never coarser.
pub fn vertex_orbits(g: &Graph) -> Vec<Vec<Vertex>> {
    let p = g.order();
    let mut root = Partition::unit(p);
    refine(g, &mut root);
    let mut uf = UnionFind((0..p).collect());
    for cell in root.cells() {
        let u = cell[0];
        for &v in &cell[1..] {
            if uf.find(u) == uf.find(v) {
                continue;
            }
            let mut pa = root.clone();
            pa.individualize(u);
            let ta = refine(g, &mut pa);
            let mut pb = root.clone();
            pb.individualize(v);
            if refine(g, &mut pb) != ta {
                continue;
            }
            let mut nodes = 0;
            if let Some(sigma) = search_map(g, &pa, g, &pb, &mut nodes, SEARCH_CAP) {
                for (x, &y) in sigma.iter().enumerate() {
                    uf.union(x, y);
                }
            }
        }
    }
    let mut orbits: Vec<Vec<Vertex>> = vec![Vec::new(); p];
    for v in 0..p {
        let r = uf.find(v);
        orbits[r].push(v);
    }
    orbits.retain(|o| !o.is_empty());
    orbits
}

/// An isomorphism `a → b` as a vertex map, if one exists.
///
/// Returns `None` both for non-isomorphic inputs and when the search cap is
/// reached; intended for the small graphs used in tests and recognition.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<Vertex>> {
    if a.order() != b.order() || a.size() != b.size() {
        return None;
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return None;
    }
    let mut pa = Partition::unit(a.order());
    let mut pb = Partition::unit(b.order());
    if refine(a, &mut pa) != refine(b, &mut pb) {
        return None;
    }
    let mut nodes = 0;
    search_map(a, &pa, b, &pb, &mut nodes, SEARCH_CAP * 10)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    find_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family;

    #[test]
    fn transitive_families_have_one_orbit() {
        for g in [
            family::cycle(7).unwrap(),
            family::petersen(),
            family::hypercube(4),
            family::complete(5),
        ] {
            assert_eq!(vertex_orbits(&g).len(), 1, "{g:?}");
        }
    }

    #[test]
    fn path_orbits() {
        let orbits = vertex_orbits(&family::path(5));
        assert_eq!(orbits, vec![vec![0, 4], vec![1, 3], vec![2]]);
    }

    #[test]
    fn bipartite_sides() {
        let orbits = vertex_orbits(&family::complete_bipartite(2, 3));
        assert_eq!(orbits, vec![vec![0, 1], vec![2, 3, 4]]);
    }

    #[test]
    fn regular_but_not_transitive() {
        // Two triangles joined by a perfect matching (prism) is transitive,
        // C6 plus a long diagonal is not.
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
            .unwrap();
        let orbits = vertex_orbits(&g);
        assert_eq!(orbits, vec![vec![0, 3], vec![1, 2, 4, 5]]);
    }

    #[test]
    fn isomorphism_checks() {
        let q3 = family::hypercube(3);
        let prod = family::hypercube(2).cartesian_product_k2();
        let sigma = find_isomorphism(&prod, &q3).unwrap();
        for (u, v) in prod.edges() {
            assert!(q3.has_edge(sigma[u], sigma[v]));
        }
        // Same degree sequence, not isomorphic.
        let c6 = family::cycle(6).unwrap();
        let two_c3 = crate::graph::disjoint_union(&[&family::complete(3), &family::complete(3)]);
        assert!(!is_isomorphic(&c6, &two_c3));
    }
}
