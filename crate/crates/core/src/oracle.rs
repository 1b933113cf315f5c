//! Independent exact solvers used to cross-check the formula-based results:
//! maximum clique via pivot-free coloring-bounded branch and bound, chromatic
//! number via branch and bound over k-colorings. Deterministic throughout.

use thiserror::Error;

use crate::graph::{BitGraph, Bitset, CliqueWitness};

pub const MAX_CLIQUE_VERTICES: usize = 300;
pub const MAX_CHROMATIC_VERTICES: usize = 120;
/// Node-expansion budget; exceeding it aborts with a diagnostic.
pub const SEARCH_BUDGET: u64 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, cap is {cap}")]
    TooManyVertices { n: usize, cap: usize },
    #[error("search budget of {budget} node expansions exhausted")]
    BudgetExhausted { budget: u64 },
}

struct CliqueSearch<'a> {
    g: &'a BitGraph,
    order: Vec<usize>,
    rank: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
}

impl CliqueSearch<'_> {
    /// Greedy-colors the candidates in static vertex order; any clique inside
    /// `p` is at most as large as the number of classes used.
    fn color_bound(&self, p: &Bitset) -> Vec<(usize, usize)> {
        let mut classes: Vec<Bitset> = Vec::new();
        let mut colored: Vec<(usize, usize)> = Vec::new();
        for &v in &self.order {
            if !p.contains(v) {
                continue;
            }
            let c = classes
                .iter()
                .position(|cl| cl.intersection(self.g.neighbors(v)).is_empty())
                .unwrap_or_else(|| {
                    classes.push(Bitset::new(self.g.vertex_count()));
                    classes.len() - 1
                });
            classes[c].insert(v);
            colored.push((v, c + 1));
        }
        colored.sort_by_key(|&(v, c)| (c, self.rank[v]));
        colored
    }

    fn expand(&mut self, r: &mut Vec<usize>, p: &Bitset) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > SEARCH_BUDGET {
            return Err(OracleError::BudgetExhausted { budget: SEARCH_BUDGET });
        }
        if p.is_empty() {
            if r.len() > self.best.len() {
                self.best = r.clone();
            }
            return Ok(());
        }
        let colored = self.color_bound(p);
        let mut p = p.clone();
        for &(v, c) in colored.iter().rev() {
            if r.len() + c <= self.best.len() {
                return Ok(());
            }
            r.push(v);
            self.expand(r, &p.intersection(self.g.neighbors(v)))?;
            r.pop();
            p.remove(v);
        }
        Ok(())
    }
}

/// Exact maximum clique; vertices of the witness ascend.
pub fn max_clique_exact(g: &BitGraph) -> Result<CliqueWitness, OracleError> {
    let n = g.vertex_count();
    if n > MAX_CLIQUE_VERTICES {
        return Err(OracleError::TooManyVertices { n, cap: MAX_CLIQUE_VERTICES });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut rank = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut search = CliqueSearch { g, order, rank, best: Vec::new(), nodes: 0 };
    let mut all = Bitset::new(n);
    for v in 0..n {
        all.insert(v);
    }
    search.expand(&mut Vec::new(), &all)?;
    let mut vertices = search.best;
    vertices.sort_unstable();
    Ok(CliqueWitness { size: vertices.len(), vertices })
}

/// Smallest non-conflicting color, or `limit` if all of 0..limit conflict.
fn first_free_color(g: &BitGraph, assignment: &[Option<usize>], v: usize, limit: usize) -> usize {
    let mut used = vec![false; limit];
    for u in g.neighbors(v).iter() {
        if let Some(c) = assignment[u] {
            if c < limit {
                used[c] = true;
            }
        }
    }
    used.iter().position(|&b| !b).unwrap_or(limit)
}

/// DSATUR greedy coloring; returns (color count, assignment).
fn dsatur_greedy(g: &BitGraph) -> (usize, Vec<usize>) {
    let n = g.vertex_count();
    let mut assignment: Vec<Option<usize>> = vec![None; n];
    let mut used_total = 0usize;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| assignment[v].is_none())
            .max_by_key(|&v| {
                let mut sat: Vec<usize> =
                    g.neighbors(v).iter().filter_map(|u| assignment[u]).collect();
                sat.sort_unstable();
                sat.dedup();
                (sat.len(), g.degree(v), std::cmp::Reverse(v))
            })
            .expect("uncolored vertex exists");
        let c = first_free_color(g, &assignment, v, used_total + 1);
        assignment[v] = Some(c);
        used_total = used_total.max(c + 1);
    }
    (used_total, assignment.into_iter().map(|c| c.unwrap()).collect())
}

struct ColorSearch<'a> {
    g: &'a BitGraph,
    k: usize,
    assignment: Vec<Option<usize>>,
    nodes: u64,
}

impl ColorSearch<'_> {
    fn solve(&mut self, uncolored: usize, max_used: usize) -> Result<bool, OracleError> {
        self.nodes += 1;
        if self.nodes > SEARCH_BUDGET {
            return Err(OracleError::BudgetExhausted { budget: SEARCH_BUDGET });
        }
        if uncolored == 0 {
            return Ok(true);
        }
        let n = self.g.vertex_count();
        // DSATUR branching: most saturated first, then degree, then index.
        let v = (0..n)
            .filter(|&v| self.assignment[v].is_none())
            .max_by_key(|&v| {
                let mut sat: Vec<usize> =
                    self.g.neighbors(v).iter().filter_map(|u| self.assignment[u]).collect();
                sat.sort_unstable();
                sat.dedup();
                (sat.len(), self.g.degree(v), std::cmp::Reverse(v))
            })
            .expect("uncolored vertex exists");
        let mut forbidden = vec![false; self.k];
        for u in self.g.neighbors(v).iter() {
            if let Some(c) = self.assignment[u] {
                forbidden[c] = true;
            }
        }
        // Allowing at most one brand-new color breaks color-permutation symmetry.
        let ceiling = self.k.min(max_used + 1);
        for c in 0..ceiling {
            if forbidden[c] {
                continue;
            }
            self.assignment[v] = Some(c);
            if self.solve(uncolored - 1, max_used.max(c + 1))? {
                return Ok(true);
            }
            self.assignment[v] = None;
        }
        Ok(false)
    }
}

fn k_coloring(g: &BitGraph, k: usize, clique: &[usize]) -> Result<Option<Vec<usize>>, OracleError> {
    let n = g.vertex_count();
    let mut search = ColorSearch { g, k, assignment: vec![None; n], nodes: 0 };
    // Pre-coloring one maximum clique is a sound symmetry break.
    for (c, &v) in clique.iter().enumerate() {
        search.assignment[v] = Some(c);
    }
    if search.solve(n - clique.len(), clique.len())? {
        Ok(Some(search.assignment.into_iter().map(|c| c.unwrap()).collect()))
    } else {
        Ok(None)
    }
}

/// Exact chromatic number with a certifying assignment (colors 0..chi).
pub fn chromatic_assignment(g: &BitGraph) -> Result<(usize, Vec<usize>), OracleError> {
    let n = g.vertex_count();
    if n > MAX_CHROMATIC_VERTICES {
        return Err(OracleError::TooManyVertices { n, cap: MAX_CHROMATIC_VERTICES });
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let clique = max_clique_exact(g)?;
    let (ub, greedy) = dsatur_greedy(g);
    let mut best = (ub, greedy);
    for k in clique.size..ub {
        if let Some(assignment) = k_coloring(g, k, &clique.vertices)? {
            best = (k, assignment);
            break;
        }
    }
    Ok(best)
}

pub fn chromatic_number_exact(g: &BitGraph) -> Result<usize, OracleError> {
    chromatic_assignment(g).map(|(k, _)| k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_max_clique(g: &BitGraph) -> usize {
        let n = g.vertex_count();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if vs.len() <= best {
                continue;
            }
            let ok = vs
                .iter()
                .enumerate()
                .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)));
            if ok {
                best = vs.len();
            }
        }
        best
    }

    fn brute_colorable(g: &BitGraph, k: usize, assignment: &mut Vec<usize>, v: usize) -> bool {
        let n = g.vertex_count();
        if v == n {
            return true;
        }
        for c in 0..k {
            if (0..v).all(|u| !g.has_edge(u, v) || assignment[u] != c) {
                assignment[v] = c;
                if brute_colorable(g, k, assignment, v + 1) {
                    return true;
                }
            }
        }
        false
    }

    fn brute_chromatic(g: &BitGraph) -> usize {
        let n = g.vertex_count();
        if n == 0 {
            return 0;
        }
        (1..=n)
            .find(|&k| brute_colorable(g, k, &mut vec![0; n], 0))
            .expect("n colors always suffice")
    }

    fn check_proper(g: &BitGraph, assignment: &[usize]) {
        for (u, v) in g.edges() {
            assert_ne!(assignment[u], assignment[v], "edge ({u},{v}) monochromatic");
        }
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> BitGraph {
        let mut g = BitGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    #[test]
    fn fixed_graphs() {
        let c5 = BitGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(max_clique_exact(&c5).unwrap().size, 2);
        assert_eq!(chromatic_number_exact(&c5).unwrap(), 3);

        let mut k5 = BitGraph::new(5);
        for u in 0..5 {
            for v in u + 1..5 {
                k5.add_edge(u, v);
            }
        }
        let w = max_clique_exact(&k5).unwrap();
        assert_eq!(w.size, 5);
        assert_eq!(w.vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(chromatic_number_exact(&k5).unwrap(), 5);

        let empty = BitGraph::new(4);
        assert_eq!(max_clique_exact(&empty).unwrap().size, 1);
        assert_eq!(chromatic_number_exact(&empty).unwrap(), 1);

        let nothing = BitGraph::new(0);
        assert_eq!(max_clique_exact(&nothing).unwrap().size, 0);
        assert_eq!(chromatic_number_exact(&nothing).unwrap(), 0);

        let petersen = BitGraph::from_edges(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            ],
        )
        .unwrap();
        assert_eq!(max_clique_exact(&petersen).unwrap().size, 2);
        assert_eq!(chromatic_number_exact(&petersen).unwrap(), 3);
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..80 {
            let n = 1 + (trial % 8);
            let p = [0.2, 0.5, 0.8][trial % 3];
            let g = random_graph(&mut rng, n, p);
            assert_eq!(
                max_clique_exact(&g).unwrap().size,
                brute_max_clique(&g),
                "clique mismatch on trial {trial}"
            );
            let (chi, assignment) = chromatic_assignment(&g).unwrap();
            assert_eq!(chi, brute_chromatic(&g), "chromatic mismatch on trial {trial}");
            check_proper(&g, &assignment);
            let used: std::collections::HashSet<usize> = assignment.iter().copied().collect();
            assert!(used.len() <= chi);
        }
    }

    #[test]
    fn clique_witness_is_a_clique() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let g = random_graph(&mut rng, 10, 0.5);
            let w = max_clique_exact(&g).unwrap();
            for (i, &u) in w.vertices.iter().enumerate() {
                for &v in &w.vertices[i + 1..] {
                    assert!(g.has_edge(u, v));
                }
            }
        }
    }

    #[test]
    fn vertex_caps_enforced() {
        let big = BitGraph::new(301);
        assert_eq!(
            max_clique_exact(&big),
            Err(OracleError::TooManyVertices { n: 301, cap: 300 })
        );
        let mid = BitGraph::new(121);
        assert_eq!(
            chromatic_number_exact(&mid),
            Err(OracleError::TooManyVertices { n: 121, cap: 120 })
        );
    }

    #[test]
    fn omega_never_exceeds_chi_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..40 {
            let g = random_graph(&mut rng, 12, 0.4);
            let w = max_clique_exact(&g).unwrap().size;
            let chi = chromatic_number_exact(&g).unwrap();
            assert!(w <= chi);
        }
    }
}
