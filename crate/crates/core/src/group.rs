//! Finite groups materialized as Cayley tables over element indices, plus the
//! JSON group-spec ingestion format and named constructors.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use thiserror::Error;

use crate::arith::{self, ArithError};

/// Orders above this are rejected: the full table would stop being desk-scale.
pub const MAX_TABLE_ORDER: usize = 1024;
/// Hard abort for runaway closure enumeration in from_permutation_generators.
pub const MAX_CLOSURE: usize = 100_000;
/// Orders up to this get exhaustive associativity checks; larger ones are sampled.
pub const EXHAUSTIVE_ASSOC_ORDER: usize = 256;
const ASSOC_SAMPLES: usize = 100_000;
const ASSOC_SAMPLE_SEED: u64 = 0x5DEECE66D;
pub const MAX_SYMMETRIC_DEGREE: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("table is not square: row {row} has length {len}, expected {expected}")]
    NonSquareTable { row: usize, len: usize, expected: usize },
    #[error("table entry out of range at ({row}, {col}): {value} >= {order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("identity index {identity} out of range for order {order}")]
    IdentityOutOfRange { identity: usize, order: usize },
    #[error("identity axiom fails at element {witness}")]
    IdentityViolation { witness: usize },
    #[error("element {witness} has no two-sided inverse")]
    MissingInverse { witness: usize },
    #[error("associativity fails at triple ({a}, {b}, {c})")]
    AssociativityViolation { a: usize, b: usize, c: usize },
    #[error("group order {order} exceeds table cap {cap}")]
    SizeCapExceeded { order: usize, cap: usize },
    #[error("closure enumeration exceeded {cap} elements")]
    ClosureCapExceeded { cap: usize },
    #[error("symmetric degree {degree} exceeds cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("generator {index} is not a permutation of 0..{degree}")]
    InvalidGenerator { index: usize, degree: usize },
    #[error("invalid group spec: {0}")]
    BadSpec(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A finite group on element indices 0..order with a fully materialized
/// multiplication table. Element orders and inverses are precomputed.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    identity: usize,
    table: Vec<usize>,
    labels: Vec<String>,
    element_orders: Vec<u64>,
    name: String,
    associativity_sampled: bool,
}

impl FiniteGroup {
    /// Validates the table as a group: shape, range, identity, inverses,
    /// associativity (exhaustive up to order 256, sampled above with a flag).
    pub fn from_cayley_table(identity: usize, rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let labels = (0..rows.len()).map(|i| format!("g{i}")).collect();
        let name = format!("cayley(order {})", rows.len());
        Self::from_table_named(identity, rows, labels, name)
    }

    fn from_table_named(
        identity: usize,
        rows: &[Vec<usize>],
        labels: Vec<String>,
        name: String,
    ) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupError::ZeroOrder);
        }
        if order > MAX_TABLE_ORDER {
            return Err(GroupError::SizeCapExceeded { order, cap: MAX_TABLE_ORDER });
        }
        let mut table = Vec::with_capacity(order * order);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != order {
                return Err(GroupError::NonSquareTable { row, len: r.len(), expected: order });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::EntryOutOfRange { row, col, value, order });
                }
                table.push(value);
            }
        }
        if identity >= order {
            return Err(GroupError::IdentityOutOfRange { identity, order });
        }
        let at = |a: usize, b: usize| table[a * order + b];
        for x in 0..order {
            if at(identity, x) != x || at(x, identity) != x {
                return Err(GroupError::IdentityViolation { witness: x });
            }
        }
        for x in 0..order {
            if !(0..order).any(|y| at(x, y) == identity && at(y, x) == identity) {
                return Err(GroupError::MissingInverse { witness: x });
            }
        }
        let mut associativity_sampled = false;
        if order <= EXHAUSTIVE_ASSOC_ORDER {
            for a in 0..order {
                for b in 0..order {
                    let ab = at(a, b);
                    for c in 0..order {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(GroupError::AssociativityViolation { a, b, c });
                        }
                    }
                }
            }
        } else {
            associativity_sampled = true;
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOC_SAMPLE_SEED);
            for _ in 0..ASSOC_SAMPLES {
                let a = rng.gen_range(0..order);
                let b = rng.gen_range(0..order);
                let c = rng.gen_range(0..order);
                if at(at(a, b), c) != at(a, at(b, c)) {
                    return Err(GroupError::AssociativityViolation { a, b, c });
                }
            }
        }
        let mut g = FiniteGroup {
            order,
            identity,
            table,
            labels,
            element_orders: Vec::new(),
            name,
            associativity_sampled,
        };
        g.element_orders = (0..order).map(|x| g.compute_order(x)).collect();
        Ok(g)
    }

    fn compute_order(&self, x: usize) -> u64 {
        let mut acc = x;
        let mut k = 1u64;
        while acc != self.identity {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// True when associativity was only spot-checked (order > 256).
    pub fn associativity_sampled(&self) -> bool {
        self.associativity_sampled
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn element_order(&self, x: usize) -> u64 {
        self.element_orders[x]
    }

    pub fn element_orders(&self) -> &[u64] {
        &self.element_orders
    }

    /// Elements of <x> in ascending index order.
    pub fn cyclic_subgroup(&self, x: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut acc = self.identity;
        loop {
            out.push(acc);
            acc = self.mul(acc, x);
            if acc == self.identity {
                break;
            }
        }
        out.sort_unstable();
        out
    }

    /// Powers x^0, x^1, ..., x^{o(x)-1} in exponent order.
    pub fn power_sequence(&self, x: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut acc = self.identity;
        loop {
            out.push(acc);
            acc = self.mul(acc, x);
            if acc == self.identity {
                break;
            }
        }
        out
    }

    /// lcm of all element orders; divides the group order.
    pub fn exponent(&self) -> u64 {
        let mut e = 1u64;
        for &o in &self.element_orders {
            e = arith::lcm(e, o).expect("exponent divides group order <= 1024");
        }
        e
    }

    /// True iff some element order equals the exponent.
    pub fn is_full_exponent(&self) -> bool {
        let e = self.exponent();
        self.element_orders.iter().any(|&o| o == e)
    }

    /// order -> element count, ascending by order.
    pub fn order_histogram(&self) -> Vec<(u64, usize)> {
        let mut m: HashMap<u64, usize> = HashMap::new();
        for &o in &self.element_orders {
            *m.entry(o).or_default() += 1;
        }
        let mut out: Vec<(u64, usize)> = m.into_iter().collect();
        out.sort_unstable();
        out
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        if n > MAX_TABLE_ORDER {
            return Err(GroupError::SizeCapExceeded { order: n, cap: MAX_TABLE_ORDER });
        }
        let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_table_named(0, &rows, labels, format!("cyclic({n})"))
    }

    /// Symmetries of the n-gon, order 2n. Indices 0..n are rotations r^i,
    /// n..2n are reflections s r^i.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        if 2 * n > MAX_TABLE_ORDER {
            return Err(GroupError::SizeCapExceeded { order: 2 * n, cap: MAX_TABLE_ORDER });
        }
        let rot = |i: usize| i % n;
        let refl = |i: usize| n + i % n;
        let mut rows = vec![vec![0usize; 2 * n]; 2 * n];
        for a in 0..n {
            for b in 0..n {
                rows[rot(a)][rot(b)] = rot(a + b);
                rows[rot(a)][refl(b)] = refl(n + b - a);
                rows[refl(a)][rot(b)] = refl(a + b);
                rows[refl(a)][refl(b)] = rot(n + b - a);
            }
        }
        let mut labels = Vec::with_capacity(2 * n);
        for i in 0..n {
            labels.push(match i {
                0 => "e".to_string(),
                1 => "r".to_string(),
                _ => format!("r{i}"),
            });
        }
        for i in 0..n {
            labels.push(match i {
                0 => "s".to_string(),
                1 => "sr".to_string(),
                _ => format!("sr{i}"),
            });
        }
        Self::from_table_named(0, &rows, labels, format!("dihedral({n})"))
    }

    /// All n! permutations in lexicographic one-line order; index 0 is the identity.
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        if n > MAX_SYMMETRIC_DEGREE {
            return Err(GroupError::DegreeCapExceeded { degree: n, cap: MAX_SYMMETRIC_DEGREE });
        }
        let order: usize = (1..=n.max(1)).product();
        if order > MAX_TABLE_ORDER {
            return Err(GroupError::SizeCapExceeded { order, cap: MAX_TABLE_ORDER });
        }
        let mut perms = Vec::with_capacity(order);
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            perms.push(cur.clone());
            if !next_permutation(&mut cur) {
                break;
            }
        }
        let index: HashMap<Vec<usize>, usize> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut rows = vec![vec![0usize; order]; order];
        for a in 0..order {
            for b in 0..order {
                let prod = compose(&perms[a], &perms[b]);
                rows[a][b] = index[&prod];
            }
        }
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        Self::from_table_named(0, &rows, labels, format!("symmetric({n})"))
    }

    /// The quaternion group {±1, ±i, ±j, ±k}.
    pub fn quaternion8() -> Result<Self, GroupError> {
        // index = 2*axis + sign with axes 1, i, j, k
        let units = |a: usize, b: usize| -> (usize, usize) {
            match (a, b) {
                (0, x) => (0, x),
                (x, 0) => (0, x),
                (x, y) if x == y => (1, 0),
                (1, 2) => (0, 3),
                (2, 3) => (0, 1),
                (3, 1) => (0, 2),
                (2, 1) => (1, 3),
                (3, 2) => (1, 1),
                (1, 3) => (1, 2),
                _ => unreachable!(),
            }
        };
        let mut rows = vec![vec![0usize; 8]; 8];
        for a in 0..8 {
            for b in 0..8 {
                let (sa, xa) = (a % 2, a / 2);
                let (sb, xb) = (b % 2, b / 2);
                let (sp, xp) = units(xa, xb);
                rows[a][b] = 2 * xp + (sa ^ sb ^ sp);
            }
        }
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Self::from_table_named(0, &rows, labels, "quaternion8".to_string())
    }

    /// Componentwise product on index pairs a*|B| + b.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self, GroupError> {
        let order = a.order * b.order;
        if order > MAX_TABLE_ORDER {
            return Err(GroupError::SizeCapExceeded { order, cap: MAX_TABLE_ORDER });
        }
        let idx = |x: usize, y: usize| x * b.order + y;
        let mut rows = vec![vec![0usize; order]; order];
        for xa in 0..a.order {
            for ya in 0..b.order {
                for xb in 0..a.order {
                    for yb in 0..b.order {
                        rows[idx(xa, ya)][idx(xb, yb)] = idx(a.mul(xa, xb), b.mul(ya, yb));
                    }
                }
            }
        }
        let mut labels = Vec::with_capacity(order);
        for xa in 0..a.order {
            for ya in 0..b.order {
                labels.push(format!("({},{})", a.labels[xa], b.labels[ya]));
            }
        }
        let name = format!("product({},{})", a.name, b.name);
        Self::from_table_named(idx(a.identity, b.identity), &rows, labels, name)
    }

    /// BFS closure of the generators under right multiplication; the identity
    /// gets index 0, later elements are indexed in discovery order.
    pub fn from_permutation_generators(generators: &[Vec<usize>]) -> Result<Self, GroupError> {
        if generators.is_empty() {
            return Err(GroupError::BadSpec("at least one generator required".to_string()));
        }
        let degree = generators[0].len();
        if degree == 0 {
            return Err(GroupError::BadSpec("generators must act on at least one point".to_string()));
        }
        for (index, g) in generators.iter().enumerate() {
            let mut seen = vec![false; degree];
            let ok = g.len() == degree
                && g.iter().all(|&v| {
                    if v >= degree || seen[v] {
                        false
                    } else {
                        seen[v] = true;
                        true
                    }
                });
            if !ok {
                return Err(GroupError::InvalidGenerator { index, degree });
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut head = 0;
        while head < elements.len() {
            let cur = elements[head].clone();
            head += 1;
            for g in generators {
                let next = compose(&cur, g);
                if !index.contains_key(&next) {
                    if elements.len() >= MAX_CLOSURE {
                        return Err(GroupError::ClosureCapExceeded { cap: MAX_CLOSURE });
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
        }
        let order = elements.len();
        if order > MAX_TABLE_ORDER {
            return Err(GroupError::SizeCapExceeded { order, cap: MAX_TABLE_ORDER });
        }
        let mut rows = vec![vec![0usize; order]; order];
        for a in 0..order {
            for b in 0..order {
                rows[a][b] = index[&compose(&elements[a], &elements[b])];
            }
        }
        let labels = elements.iter().map(|p| cycle_notation(p)).collect();
        let name = format!("perm(degree {degree}, {} generators)", generators.len());
        Self::from_table_named(0, &rows, labels, name)
    }
}

/// (a . b)(x) = a(b(x)).
fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        loop {
            seen[x] = true;
            if x != start {
                out.push(' ');
            }
            out.push_str(&x.to_string());
            x = p[x];
            if x == start {
                break;
            }
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CayleySpec {
    #[allow(dead_code)]
    kind: String,
    identity: usize,
    table: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PermSpec {
    #[allow(dead_code)]
    kind: String,
    degree: usize,
    generators: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NamedSpec {
    #[allow(dead_code)]
    kind: String,
    name: String,
    params: Vec<serde_json::Value>,
}

/// Parses the JSON group-spec format. Unknown fields and kinds are rejected.
pub fn group_from_spec_json(json: &str) -> Result<FiniteGroup, GroupError> {
    let value: serde_json::Value =
        serde_json::from_str(json).map_err(|e| GroupError::BadSpec(e.to_string()))?;
    let kind = value
        .get("kind")
        .and_then(|k| k.as_str())
        .ok_or_else(|| GroupError::BadSpec("missing string field 'kind'".to_string()))?
        .to_string();
    match kind.as_str() {
        "cayley" => {
            let spec: CayleySpec =
                serde_json::from_value(value).map_err(|e| GroupError::BadSpec(e.to_string()))?;
            FiniteGroup::from_cayley_table(spec.identity, &spec.table)
        }
        "perm" => {
            let spec: PermSpec =
                serde_json::from_value(value).map_err(|e| GroupError::BadSpec(e.to_string()))?;
            for (i, g) in spec.generators.iter().enumerate() {
                if g.len() != spec.degree {
                    return Err(GroupError::InvalidGenerator { index: i, degree: spec.degree });
                }
            }
            FiniteGroup::from_permutation_generators(&spec.generators)
        }
        "named" => {
            let spec: NamedSpec =
                serde_json::from_value(value).map_err(|e| GroupError::BadSpec(e.to_string()))?;
            let mut tokens = vec![spec.name];
            for p in spec.params {
                tokens.push(match p {
                    serde_json::Value::String(s) => s,
                    serde_json::Value::Number(n) => n.to_string(),
                    other => {
                        return Err(GroupError::BadSpec(format!(
                            "named param must be a string or integer, got {other}"
                        )))
                    }
                });
            }
            group_from_named_tokens(&tokens)
        }
        other => Err(GroupError::BadSpec(format!("unknown kind '{other}'"))),
    }
}

/// Prefix-notation named groups: `cyclic N`, `dihedral N`, `symmetric N`,
/// `quaternion8`, `product <group> <group>` (recursive).
pub fn group_from_named_tokens(tokens: &[String]) -> Result<FiniteGroup, GroupError> {
    let (group, rest) = parse_named(tokens)?;
    if !rest.is_empty() {
        return Err(GroupError::BadSpec(format!("trailing tokens: {}", rest.join(" "))));
    }
    Ok(group)
}

fn parse_named<'a>(tokens: &'a [String]) -> Result<(FiniteGroup, &'a [String]), GroupError> {
    let (head, rest) = tokens
        .split_first()
        .ok_or_else(|| GroupError::BadSpec("expected a group name".to_string()))?;
    let take_usize = |rest: &'a [String]| -> Result<(usize, &'a [String]), GroupError> {
        let (t, r) = rest
            .split_first()
            .ok_or_else(|| GroupError::BadSpec(format!("{head} needs a numeric parameter")))?;
        let n = t
            .parse::<usize>()
            .map_err(|_| GroupError::BadSpec(format!("bad numeric parameter '{t}'")))?;
        Ok((n, r))
    };
    match head.as_str() {
        "cyclic" => {
            let (n, rest) = take_usize(rest)?;
            Ok((FiniteGroup::cyclic(n)?, rest))
        }
        "dihedral" => {
            let (n, rest) = take_usize(rest)?;
            Ok((FiniteGroup::dihedral(n)?, rest))
        }
        "symmetric" => {
            let (n, rest) = take_usize(rest)?;
            Ok((FiniteGroup::symmetric(n)?, rest))
        }
        "quaternion8" => Ok((FiniteGroup::quaternion8()?, rest)),
        "product" => {
            let (a, rest) = parse_named(rest)?;
            let (b, rest) = parse_named(rest)?;
            Ok((FiniteGroup::direct_product(&a, &b)?, rest))
        }
        other => Err(GroupError::BadSpec(format!("unknown group name '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        let g = FiniteGroup::cyclic(12).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.element_order(5), 12);
        assert_eq!(g.element_order(8), 3);
        assert_eq!(g.cyclic_subgroup(8), vec![0, 4, 8]);
        assert_eq!(g.exponent(), 12);
        assert!(g.is_full_exponent());
        let trivial = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(trivial.order(), 1);
        assert_eq!(trivial.exponent(), 1);
        assert!(trivial.is_full_exponent());
        assert!(matches!(FiniteGroup::cyclic(0), Err(GroupError::ZeroOrder)));
    }

    #[test]
    fn symmetric_3_structure() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.exponent(), 6);
        assert!(!g.is_full_exponent());
        assert_eq!(g.order_histogram(), vec![(1, 1), (2, 3), (3, 2)]);
        assert_eq!(g.label(0), "e");
    }

    #[test]
    fn symmetric_5_exponent_60_not_full() {
        let g = FiniteGroup::symmetric(5).unwrap();
        assert_eq!(g.order(), 120);
        assert_eq!(g.exponent(), 60);
        assert!(!g.is_full_exponent());
        assert_eq!(g.element_orders().iter().max(), Some(&6));
    }

    #[test]
    fn symmetric_caps() {
        assert!(matches!(
            FiniteGroup::symmetric(7),
            Err(GroupError::SizeCapExceeded { order: 5040, cap: 1024 })
        ));
        assert!(matches!(
            FiniteGroup::symmetric(9),
            Err(GroupError::DegreeCapExceeded { degree: 9, cap: 8 })
        ));
    }

    #[test]
    fn permutation_closure_s5() {
        let g = FiniteGroup::from_permutation_generators(&[
            vec![1, 0, 2, 3, 4],
            vec![1, 2, 3, 4, 0],
        ])
        .unwrap();
        assert_eq!(g.order(), 120);
        assert_eq!(g.exponent(), 60);
        assert!(!g.is_full_exponent());
    }

    #[test]
    fn permutation_closure_a4() {
        let g = FiniteGroup::from_permutation_generators(&[
            vec![1, 2, 0, 3],
            vec![0, 2, 3, 1],
        ])
        .unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.order_histogram(), vec![(1, 1), (2, 3), (3, 8)]);
    }

    #[test]
    fn permutation_closure_size_cap() {
        // S8 closes at 40320 elements, beyond the table cap.
        let r = FiniteGroup::from_permutation_generators(&[
            vec![1, 0, 2, 3, 4, 5, 6, 7],
            vec![1, 2, 3, 4, 5, 6, 7, 0],
        ]);
        assert!(matches!(r, Err(GroupError::SizeCapExceeded { order: 40320, cap: 1024 })));
    }

    #[test]
    fn quaternion8_structure() {
        let g = FiniteGroup::quaternion8().unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.exponent(), 4);
        assert!(g.is_full_exponent());
        assert_eq!(g.order_histogram(), vec![(1, 1), (2, 1), (4, 6)]);
        // i * j = k, j * i = -k
        assert_eq!(g.mul(2, 4), 6);
        assert_eq!(g.mul(4, 2), 7);
    }

    #[test]
    fn dihedral_structure() {
        let d6 = FiniteGroup::dihedral(6).unwrap();
        assert_eq!(d6.order(), 12);
        assert_eq!(d6.exponent(), 6);
        assert!(d6.is_full_exponent());
        let d5 = FiniteGroup::dihedral(5).unwrap();
        assert_eq!(d5.exponent(), 10);
        assert!(!d5.is_full_exponent());
        // every reflection is an involution
        for i in 5..10 {
            assert_eq!(d5.element_order(i), 2);
        }
    }

    #[test]
    fn direct_product_structure() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        let g = FiniteGroup::direct_product(&c6, &c6).unwrap();
        assert_eq!(g.order(), 36);
        assert_eq!(g.exponent(), 6);
        assert!(g.is_full_exponent());
        let c12 = FiniteGroup::cyclic(12).unwrap();
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let h = FiniteGroup::direct_product(&c12, &c2).unwrap();
        assert_eq!(h.order(), 24);
        assert_eq!(h.exponent(), 12);
        assert!(h.is_full_exponent());
    }

    #[test]
    fn cayley_validation_witnesses() {
        // Klein four-group round-trips.
        let klein = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ];
        let g = FiniteGroup::from_cayley_table(0, &klein).unwrap();
        assert_eq!(g.exponent(), 2);

        assert!(matches!(
            FiniteGroup::from_cayley_table(0, &[vec![0, 1]]),
            Err(GroupError::NonSquareTable { .. })
        ));
        assert!(matches!(
            FiniteGroup::from_cayley_table(0, &[vec![0, 1], vec![1, 2]]),
            Err(GroupError::EntryOutOfRange { row: 1, col: 1, value: 2, .. })
        ));
        // identity holds, 1 and 2 are self-inverse, but (2,2,1) breaks associativity
        let bad_assoc = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]];
        assert!(matches!(
            FiniteGroup::from_cayley_table(0, &bad_assoc),
            Err(GroupError::AssociativityViolation { .. })
        ));
        let no_inverse = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            FiniteGroup::from_cayley_table(0, &no_inverse),
            Err(GroupError::MissingInverse { witness: 1 })
        ));
        let bad_identity = vec![vec![0, 0], vec![1, 1]];
        assert!(matches!(
            FiniteGroup::from_cayley_table(0, &bad_identity),
            Err(GroupError::IdentityViolation { .. })
        ));
    }

    #[test]
    fn spec_json_cayley() {
        let json = r#"{"kind":"cayley","identity":0,"table":[[0,1],[1,0]]}"#;
        let g = group_from_spec_json(json).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn spec_json_perm() {
        let json = r#"{"kind":"perm","degree":5,"generators":[[1,0,2,3,4],[1,2,3,4,0]]}"#;
        let g = group_from_spec_json(json).unwrap();
        assert_eq!(g.order(), 120);
        let bad = r#"{"kind":"perm","degree":4,"generators":[[1,0,2,3,4]]}"#;
        assert!(matches!(
            group_from_spec_json(bad),
            Err(GroupError::InvalidGenerator { index: 0, degree: 4 })
        ));
    }

    #[test]
    fn spec_json_named_and_rejections() {
        let json = r#"{"kind":"named","name":"product","params":["cyclic",6,"cyclic",6]}"#;
        let g = group_from_spec_json(json).unwrap();
        assert_eq!(g.order(), 36);
        assert!(group_from_spec_json(r#"{"kind":"named","name":"monster","params":[]}"#).is_err());
        assert!(group_from_spec_json(r#"{"kind":"cayley","identity":0,"table":[[0]],"extra":1}"#)
            .is_err());
        assert!(group_from_spec_json(r#"{"identity":0}"#).is_err());
        assert!(group_from_spec_json("not json").is_err());
    }

    #[test]
    fn named_tokens_trailing_rejected() {
        let tokens: Vec<String> = ["cyclic", "6", "7"].iter().map(|s| s.to_string()).collect();
        assert!(group_from_named_tokens(&tokens).is_err());
        let tokens: Vec<String> =
            ["product", "cyclic", "2", "product", "cyclic", "2", "cyclic", "2"]
                .iter()
                .map(|s| s.to_string())
                .collect();
        let g = group_from_named_tokens(&tokens).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.exponent(), 2);
    }

    #[test]
    fn cycle_notation_labels() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let labels: Vec<&str> = (0..6).map(|i| g.label(i)).collect();
        assert!(labels.contains(&"e"));
        assert!(labels.contains(&"(0 1)"));
        assert!(labels.contains(&"(0 1 2)"));
    }

    #[test]
    fn big_group_sets_sampled_flag() {
        let g = FiniteGroup::cyclic(300).unwrap();
        assert!(g.associativity_sampled());
        let small = FiniteGroup::cyclic(200).unwrap();
        assert!(!small.associativity_sampled());
    }
}
