//! Power graphs: the directed reachability preorder (h is a power of g), the
//! undirected comparability graph it induces, clique invariants via psi, and
//! deterministic DOT/JSON export.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{psi, FactoredInt};
use crate::group::FiniteGroup;
use std::collections::HashMap;

/// Fixed-capacity bitset over vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitset {
    len: usize,
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersect_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn intersection(&self, other: &Bitset) -> Bitset {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn is_subset(&self, other: &Bitset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Ascending indices.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range for {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("invalid graph input: {0}")]
    BadInput(String),
}

/// Undirected simple graph on 0..n as bit rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitGraph {
    n: usize,
    rows: Vec<Bitset>,
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        BitGraph { n, rows: vec![Bitset::new(n); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = BitGraph::new(n);
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { v });
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Accepts {"vertices": N, "edges": [[u,v],...]}; unknown fields rejected.
    pub fn from_json(json: &str) -> Result<Self, GraphError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct RawGraph {
            vertices: usize,
            edges: Vec<(usize, usize)>,
        }
        let raw: RawGraph =
            serde_json::from_str(json).map_err(|e| GraphError::BadInput(e.to_string()))?;
        Self::from_edges(raw.vertices, &raw.edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    /// Edges (u, v) with u < v, lexicographically ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.rows[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count()).sum::<usize>() / 2
    }

    pub fn complement(&self) -> BitGraph {
        let mut g = BitGraph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PreorderViolation {
    #[error("relation is not reflexive at {v}")]
    NotReflexive { v: usize },
    #[error("relation is not transitive: {a} -> {b} -> {c} but not {a} -> {c}")]
    NotTransitive { a: usize, b: usize, c: usize },
}

/// An explicit maximum clique, vertices ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueWitness {
    pub vertices: Vec<usize>,
    pub size: usize,
}

/// The power graph of a finite group: reaches[g] is the element set of <g>;
/// the undirected graph joins distinct comparable elements.
#[derive(Debug, Clone)]
pub struct PowerGraph {
    group_name: String,
    labels: Vec<String>,
    orders: Vec<u64>,
    identity: usize,
    reaches: Vec<Bitset>,
    undirected: BitGraph,
}

pub fn build_power_graph(g: &FiniteGroup) -> PowerGraph {
    let n = g.order();
    let mut reaches = vec![Bitset::new(n); n];
    for x in 0..n {
        for y in g.cyclic_subgroup(x) {
            reaches[x].insert(y);
        }
    }
    let mut undirected = BitGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if reaches[u].contains(v) || reaches[v].contains(u) {
                undirected.add_edge(u, v);
            }
        }
    }
    PowerGraph {
        group_name: g.name().to_string(),
        labels: g.labels().to_vec(),
        orders: g.element_orders().to_vec(),
        identity: g.identity(),
        reaches,
        undirected,
    }
}

impl PowerGraph {
    /// Raw relation constructor (tests, hand-built relations). Orders are taken
    /// as reach-set sizes, which coincides with element order for genuine
    /// power-graph relations.
    pub fn from_relation(n: usize, arcs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut reaches = vec![Bitset::new(n); n];
        for &(u, v) in arcs {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            reaches[u].insert(v);
        }
        let mut undirected = BitGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if reaches[u].contains(v) || reaches[v].contains(u) {
                    undirected.add_edge(u, v);
                }
            }
        }
        let orders = reaches.iter().map(|r| r.count() as u64).collect();
        Ok(PowerGraph {
            group_name: format!("relation({n} vertices)"),
            labels: (0..n).map(|i| i.to_string()).collect(),
            orders,
            identity: 0,
            reaches,
            undirected,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.undirected.vertex_count()
    }

    pub fn group_name(&self) -> &str {
        &self.group_name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn reaches(&self, g: usize, h: usize) -> bool {
        self.reaches[g].contains(h)
    }

    pub fn reach_row(&self, g: usize) -> &Bitset {
        &self.reaches[g]
    }

    pub fn undirected(&self) -> &BitGraph {
        &self.undirected
    }

    /// Reflexivity and transitivity of the reachability relation.
    pub fn verify_preorder(&self) -> Result<(), PreorderViolation> {
        let n = self.vertex_count();
        for v in 0..n {
            if !self.reaches[v].contains(v) {
                return Err(PreorderViolation::NotReflexive { v });
            }
        }
        for a in 0..n {
            for b in self.reaches[a].iter() {
                if !self.reaches[b].is_subset(&self.reaches[a]) {
                    let c = self
                        .reaches[b]
                        .iter()
                        .find(|&c| !self.reaches[a].contains(c))
                        .expect("subset check failed, so a counterexample exists");
                    return Err(PreorderViolation::NotTransitive { a, b, c });
                }
            }
        }
        Ok(())
    }

    /// Clique number: max over elements of psi(order), with the lowest-index
    /// element attaining it.
    pub fn omega(&self) -> (u64, usize) {
        let mut memo: HashMap<u64, u64> = HashMap::new();
        let mut best = 0u64;
        let mut witness = 0usize;
        for (v, &o) in self.orders.iter().enumerate() {
            let value = *memo.entry(o).or_insert_with(|| {
                psi(&FactoredInt::new(o).expect("element orders are positive"))
            });
            if value > best {
                best = value;
                witness = v;
            }
        }
        (best, witness)
    }

    /// Explicit maximum clique realizing omega: generators of a descending
    /// chain of subgroups of <g>, following the psi recursion (smallest prime
    /// on ties).
    pub fn max_clique_via_psi_witness(&self) -> CliqueWitness {
        let (size, g) = self.omega();
        let mut levels = Vec::new();
        let mut d = self.orders[g];
        levels.push(d);
        while d > 1 {
            let f = FactoredInt::new(d).expect("positive");
            let mut best: Option<(u64, u64)> = None;
            for p in f.primes() {
                let sub = psi(&FactoredInt::new(d / p).expect("positive"));
                let better = match best {
                    None => true,
                    Some((bv, bp)) => sub > bv || (sub == bv && p < bp),
                };
                if better {
                    best = Some((sub, p));
                }
            }
            let (_, p) = best.expect("d > 1 has a prime factor");
            d /= p;
            levels.push(d);
        }
        let vertices: Vec<usize> = self.reaches[g]
            .iter()
            .filter(|&v| levels.contains(&self.orders[v]))
            .collect();
        debug_assert_eq!(vertices.len() as u64, size);
        CliqueWitness { size: vertices.len(), vertices }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

#[derive(Serialize)]
struct GraphJson<'a> {
    group: &'a str,
    vertex_count: usize,
    identity: usize,
    labels: &'a [String],
    orders: &'a [u64],
    directed_edges: Vec<[usize; 2]>,
    undirected_edges: Vec<[usize; 2]>,
}

/// Deterministic serialization; identical graphs yield identical bytes.
pub fn export(p: &PowerGraph, format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => {
            let mut out = String::from("graph powergraph {\n");
            for v in 0..p.vertex_count() {
                out.push_str(&format!(
                    "  {} [label=\"{}\"];\n",
                    v,
                    p.labels[v].replace('"', "\\\"")
                ));
            }
            for (u, v) in p.undirected.edges() {
                out.push_str(&format!("  {u} -- {v};\n"));
            }
            out.push_str("}\n");
            out
        }
        ExportFormat::Json => {
            let mut directed = Vec::new();
            for g in 0..p.vertex_count() {
                for h in p.reaches[g].iter() {
                    if g != h {
                        directed.push([g, h]);
                    }
                }
            }
            let doc = GraphJson {
                group: &p.group_name,
                vertex_count: p.vertex_count(),
                identity: p.identity,
                labels: &p.labels,
                orders: &p.orders,
                directed_edges: directed,
                undirected_edges: p.undirected.edges().iter().map(|&(u, v)| [u, v]).collect(),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn pg(g: &FiniteGroup) -> PowerGraph {
        build_power_graph(g)
    }

    #[test]
    fn bitset_ops() {
        let mut b = Bitset::new(130);
        b.insert(0);
        b.insert(64);
        b.insert(129);
        assert_eq!(b.count(), 3);
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert!(b.contains(64));
        b.remove(64);
        assert!(!b.contains(64));
        let mut c = Bitset::new(130);
        c.insert(0);
        assert!(c.is_subset(&b));
        assert!(!b.is_subset(&c));
        assert_eq!(b.intersection(&c).iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn cyclic_6_adjacency() {
        let p = pg(&FiniteGroup::cyclic(6).unwrap());
        // only the (order-2, order-3) pairs are incomparable
        assert_eq!(p.undirected().edge_count(), 13);
        assert!(!p.undirected().has_edge(2, 3));
        assert!(!p.undirected().has_edge(3, 4));
        assert!(p.undirected().has_edge(2, 4));
        for v in 1..6 {
            assert!(p.undirected().has_edge(0, v));
        }
    }

    #[test]
    fn symmetric_3_adjacency_shape() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let p = pg(&g);
        assert_eq!(p.vertex_count(), 6);
        assert_eq!(p.undirected().edge_count(), 6);
        let e = g.identity();
        assert_eq!(p.undirected().degree(e), 5);
        for v in 0..6 {
            if v == e {
                continue;
            }
            match g.element_order(v) {
                2 => assert_eq!(p.undirected().degree(v), 1),
                3 => assert_eq!(p.undirected().degree(v), 2),
                o => panic!("unexpected order {o}"),
            }
        }
        // directed arcs excluding loops: 3 involutions -> e, and 2+2 within the order-3 subgroup
        let json = export(&p, ExportFormat::Json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["directed_edges"].as_array().unwrap().len(), 7);
        assert_eq!(v["undirected_edges"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn identity_is_universal() {
        for g in [
            FiniteGroup::cyclic(12).unwrap(),
            FiniteGroup::dihedral(7).unwrap(),
            FiniteGroup::quaternion8().unwrap(),
            FiniteGroup::symmetric(4).unwrap(),
        ] {
            let p = pg(&g);
            let e = g.identity();
            assert_eq!(p.undirected().degree(e), g.order() - 1, "{}", g.name());
        }
    }

    #[test]
    fn preorder_holds_on_built_graphs() {
        for g in [
            FiniteGroup::cyclic(24).unwrap(),
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::dihedral(9).unwrap(),
            FiniteGroup::quaternion8().unwrap(),
        ] {
            assert_eq!(pg(&g).verify_preorder(), Ok(()), "{}", g.name());
        }
    }

    #[test]
    fn preorder_violations_detected() {
        let p = PowerGraph::from_relation(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]).unwrap();
        assert_eq!(
            p.verify_preorder(),
            Err(PreorderViolation::NotTransitive { a: 0, b: 1, c: 2 })
        );
        let q = PowerGraph::from_relation(2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(q.verify_preorder(), Err(PreorderViolation::NotReflexive { v: 1 }));
    }

    #[test]
    fn omega_values() {
        assert_eq!(pg(&FiniteGroup::cyclic(12).unwrap()).omega(), (9, 1));
        assert_eq!(pg(&FiniteGroup::cyclic(1).unwrap()).omega(), (1, 0));
        let (w, v) = pg(&FiniteGroup::symmetric(5).unwrap()).omega();
        assert_eq!(w, 5);
        let g = FiniteGroup::symmetric(5).unwrap();
        assert!(matches!(g.element_order(v), 5 | 6));
    }

    #[test]
    fn omega_witness_is_lowest_index() {
        let g = FiniteGroup::symmetric(5).unwrap();
        let p = pg(&g);
        let (best, w) = p.omega();
        for v in 0..w {
            let o = g.element_order(v);
            assert!(psi(&FactoredInt::new(o).unwrap()) < best);
        }
    }

    #[test]
    fn witness_clique_is_a_clique_of_size_omega() {
        for g in [
            FiniteGroup::cyclic(12).unwrap(),
            FiniteGroup::cyclic(60).unwrap(),
            FiniteGroup::symmetric(5).unwrap(),
            FiniteGroup::quaternion8().unwrap(),
            FiniteGroup::dihedral(12).unwrap(),
        ] {
            let p = pg(&g);
            let (omega, _) = p.omega();
            let w = p.max_clique_via_psi_witness();
            assert_eq!(w.size as u64, omega, "{}", g.name());
            assert_eq!(w.vertices.len(), w.size);
            for (i, &u) in w.vertices.iter().enumerate() {
                for &v in &w.vertices[i + 1..] {
                    assert!(p.undirected().has_edge(u, v), "{}: {u} !~ {v}", g.name());
                }
            }
        }
    }

    #[test]
    fn dot_export_cyclic_3() {
        let p = pg(&FiniteGroup::cyclic(3).unwrap());
        let dot = export(&p, ExportFormat::Dot);
        let expected = "graph powergraph {\n  0 [label=\"0\"];\n  1 [label=\"1\"];\n  2 [label=\"2\"];\n  0 -- 1;\n  0 -- 2;\n  1 -- 2;\n}\n";
        assert_eq!(dot, expected);
    }

    #[test]
    fn json_export_cyclic_3() {
        let p = pg(&FiniteGroup::cyclic(3).unwrap());
        let json = export(&p, ExportFormat::Json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["vertex_count"], 3);
        assert_eq!(v["undirected_edges"].as_array().unwrap().len(), 3);
        assert_eq!(v["orders"], serde_json::json!([1, 3, 3]));
        assert_eq!(export(&p, ExportFormat::Json), json);
    }

    #[test]
    fn raw_graph_json_parsing() {
        let g = BitGraph::from_json(r#"{"vertices":5,"edges":[[0,1],[1,2],[2,3],[3,4],[4,0]]}"#)
            .unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 5);
        assert!(BitGraph::from_json(r#"{"vertices":2,"edges":[[0,5]]}"#).is_err());
        assert!(BitGraph::from_json(r#"{"vertices":2,"edges":[[0,0]]}"#).is_err());
        assert!(BitGraph::from_json(r#"{"vertices":2,"edges":[],"oops":1}"#).is_err());
    }

    #[test]
    fn complement_roundtrip() {
        let g = BitGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let c = g.complement();
        assert_eq!(c.edge_count(), 4);
        assert_eq!(c.complement(), g);
    }
}
