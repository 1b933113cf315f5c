//! Stable colorings of power graphs. A coloring of Z/n is *stable* when its
//! restriction to the subgroup of order d uses exactly psi(d) colors for every
//! d | n. The undirected power graph is the comparability graph of the
//! divisibility preorder, so the weighted-height coloring — generators of the
//! order-d subgroup take the color block [psi(d) - phi(d), psi(d)) — is proper,
//! stable, and extends along prime steps m -> mp with exactly psi(mp) - psi(m)
//! fresh colors. Arbitrary groups are colored one cyclic subgroup at a time.

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::arith::{euler_phi, factorize, gcd, psi, ArithError, FactoredInt};
use crate::graph::{build_power_graph, PowerGraph};
use crate::group::FiniteGroup;
use crate::oracle::{self, OracleError};

/// Largest cyclic modulus accepted by the coloring routines.
pub const MAX_COLOR_MODULUS: u64 = 1 << 20;
/// Node budget for the local backtracking used on non-cyclic intersections.
const LOCAL_SEARCH_BUDGET: u64 = 10_000_000;

/// Exponent vector of a divisor, aligned with the ascending prime list of the
/// ambient modulus.
pub type DivisorVector = Vec<u32>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("modulus {modulus} exceeds the coloring cap {cap}")]
    ModulusTooLarge { modulus: u64, cap: u64 },
    #[error("vector has {got} entries, modulus has {expected} prime factors")]
    VectorLength { got: usize, expected: usize },
    #[error("vector {vector:?} exceeds the exponent vector of the modulus")]
    VectorOutOfRange { vector: DivisorVector },
    #[error("vector {vector:?} is not on the wall of prime index {prime_index}")]
    NotOnWall { vector: DivisorVector, prime_index: usize },
    #[error("the full vector has no wall target")]
    FullVector,
    #[error("prime index {prime_index} out of range for {modulus}")]
    PrimeIndexOutOfRange { prime_index: usize, modulus: u64 },
    #[error("coloring of Z/{modulus} is not a relabeling of the block coloring (residue {residue})")]
    IncompatibleColoring { modulus: u64, residue: u64 },
    #[error("{m} does not divide {n}")]
    NotADivisor { m: u64, n: u64 },
    #[error("constructed palette has {palette} colors but the clique bound is {omega}")]
    TheoremViolation { omega: u64, palette: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Exponent vector of d relative to the prime list of n; d must divide n.
pub fn divisor_vector(n: &FactoredInt, d: u64) -> DivisorVector {
    let mut rest = d;
    let v = n
        .factors()
        .iter()
        .map(|&(p, _)| {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            e
        })
        .collect();
    assert_eq!(rest, 1, "{d} does not divide {}", n.value());
    v
}

pub fn vector_divisor(n: &FactoredInt, v: &DivisorVector) -> u64 {
    n.factors()
        .iter()
        .zip(v)
        .map(|(&(p, _), &e)| p.pow(e))
        .product()
}

/// Componentwise comparability: a <= b or b <= a.
pub fn vectors_comparable(a: &DivisorVector, b: &DivisorVector) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y) || a.iter().zip(b).all(|(x, y)| x >= y)
}

/// Companion vector a wall divisor can borrow colors from: decrement the
/// maximal coordinate `prime_index`, increment the first non-maximal
/// coordinate. The result is incomparable with its wall vector and lies
/// inside the index-p subgroup.
pub fn wall_target(
    n: &FactoredInt,
    prime_index: usize,
    v: &DivisorVector,
) -> Result<DivisorVector, ColoringError> {
    let k: Vec<u32> = n.factors().iter().map(|&(_, e)| e).collect();
    if prime_index >= k.len() {
        return Err(ColoringError::PrimeIndexOutOfRange { prime_index, modulus: n.value() });
    }
    if v.len() != k.len() {
        return Err(ColoringError::VectorLength { got: v.len(), expected: k.len() });
    }
    if v.iter().zip(&k).any(|(a, b)| a > b) {
        return Err(ColoringError::VectorOutOfRange { vector: v.clone() });
    }
    if v[prime_index] != k[prime_index] {
        return Err(ColoringError::NotOnWall { vector: v.clone(), prime_index });
    }
    let t = match v.iter().zip(&k).position(|(a, b)| a != b) {
        Some(t) => t,
        None => return Err(ColoringError::FullVector),
    };
    let mut out = v.clone();
    out[prime_index] -= 1;
    out[t] += 1;
    Ok(out)
}

/// A proper coloring of the power graph of Z/modulus whose restriction to
/// every subgroup is stable. Color ids are dense: 0..palette.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicColoring {
    modulus: u64,
    colors: Vec<usize>,
    palette: usize,
}

impl CyclicColoring {
    pub fn trivial() -> Self {
        CyclicColoring { modulus: 1, colors: vec![0], palette: 1 }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn palette_size(&self) -> usize {
        self.palette
    }

    pub fn color(&self, residue: u64) -> usize {
        self.colors[(residue % self.modulus) as usize]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    fn order_of(&self, x: u64) -> u64 {
        self.modulus / gcd(self.modulus, x)
    }

    /// Residues x != y are adjacent in the power graph iff one element order
    /// divides the other.
    pub fn verify_proper(&self) -> Result<(), (u64, u64)> {
        let orders: Vec<u64> = (0..self.modulus).map(|x| self.order_of(x)).collect();
        for x in 0..self.modulus {
            for y in x + 1..self.modulus {
                let (ox, oy) = (orders[x as usize], orders[y as usize]);
                if (ox % oy == 0 || oy % ox == 0)
                    && self.colors[x as usize] == self.colors[y as usize]
                {
                    return Err((x, y));
                }
            }
        }
        Ok(())
    }

    /// Checks the defining property: the subgroup of order d carries exactly
    /// psi(d) distinct colors, for every d | modulus.
    pub fn verify_stable(&self) -> Result<(), u64> {
        let nf = factorize(self.modulus).expect("modulus is positive");
        for d in crate::arith::divisors(&nf) {
            let step = self.modulus / d;
            let distinct: HashSet<usize> =
                (0..d).map(|j| self.colors[(j * step) as usize]).collect();
            let expected = psi(&factorize(d).expect("divisor is positive"));
            if distinct.len() as u64 != expected {
                return Err(d);
            }
        }
        Ok(())
    }
}

fn require_prime(p: u64) -> Result<(), ColoringError> {
    match factorize(p) {
        Ok(f) if f.factors() == [(p, 1)] => Ok(()),
        _ => Err(ColoringError::NotPrime { p }),
    }
}

/// Start of the color block reserved for generators of the order-d subgroup.
/// Blocks of comparable divisors are disjoint because psi(d') >= psi(d) +
/// phi(d') whenever d properly divides d'; incomparable divisors may share.
fn block_start(d: u64) -> u64 {
    let df = factorize(d).expect("order is positive");
    psi(&df) - euler_phi(&df)
}

/// The block coloring of Z/n: residue x of order d takes block_start(d) plus
/// its rank among the generators of the order-d subgroup (ascending residue).
/// Uses exactly psi(n) colors and restricts to the block coloring of Z/m on
/// the embedded copy of every subgroup.
fn block_coloring(n: u64) -> Result<CyclicColoring, ColoringError> {
    if n == 0 || n > MAX_COLOR_MODULUS {
        return Err(ColoringError::ModulusTooLarge { modulus: n, cap: MAX_COLOR_MODULUS });
    }
    let nf = factorize(n)?;
    let mut rank: HashMap<u64, usize> = HashMap::new();
    let mut colors = vec![0usize; n as usize];
    let mut starts: HashMap<u64, u64> = HashMap::new();
    for x in 0..n {
        let d = n / gcd(n, x);
        let start = *starts.entry(d).or_insert_with(|| block_start(d));
        let r = rank.entry(d).or_insert(0);
        colors[x as usize] = (start + *r as u64) as usize;
        *r += 1;
    }
    Ok(CyclicColoring { modulus: n, colors, palette: psi(&nf) as usize })
}

/// Matches a coloring of Z/m against the block coloring: returns the color
/// bijection rho with rho(block(k)) = prev(k), or an error if prev is not a
/// relabeling of the block coloring.
fn relabeling_of_blocks(prev: &CyclicColoring) -> Result<Vec<usize>, ColoringError> {
    let base = block_coloring(prev.modulus)?;
    if prev.palette != base.palette {
        return Err(ColoringError::IncompatibleColoring { modulus: prev.modulus, residue: 0 });
    }
    let mut rho: Vec<Option<usize>> = vec![None; base.palette];
    for k in 0..prev.colors.len() {
        let slot = &mut rho[base.colors[k]];
        match *slot {
            None => *slot = Some(prev.colors[k]),
            Some(c) if c == prev.colors[k] => {}
            Some(_) => {
                return Err(ColoringError::IncompatibleColoring {
                    modulus: prev.modulus,
                    residue: k as u64,
                })
            }
        }
    }
    // The block coloring is dense, so rho is total; dense palettes of equal
    // size make it a bijection.
    Ok(rho.into_iter().map(|c| c.expect("block coloring uses every id")).collect())
}

/// Extends a stable coloring of Z/m to Z/n (m | n): block colors relabeled so
/// the embedded copy k -> k(n/m) keeps its colors; ids >= psi(m) are the
/// psi(n) - psi(m) fresh colors.
pub fn extend_stable(prev: &CyclicColoring, n: u64) -> Result<CyclicColoring, ColoringError> {
    let m = prev.modulus;
    if m == 0 || n == 0 || n % m != 0 {
        return Err(ColoringError::NotADivisor { m, n });
    }
    let rho = relabeling_of_blocks(prev)?;
    let base = block_coloring(n)?;
    let colors: Vec<usize> = base
        .colors
        .iter()
        .map(|&c| if c < rho.len() { rho[c] } else { c })
        .collect();
    let out = CyclicColoring { modulus: n, colors, palette: base.palette };
    let fresh = out.palette - prev.palette;
    debug_assert_eq!(
        fresh as u64,
        psi(&factorize(n)?) - psi(&factorize(m)?),
        "fresh colors must match psi({n}) - psi({m})"
    );
    for k in 0..m {
        debug_assert_eq!(out.color(k * (n / m)), prev.color(k), "restriction must agree");
    }
    Ok(out)
}

/// Single prime step m -> mp of the extension.
pub fn extend_prime_step(prev: &CyclicColoring, p: u64) -> Result<CyclicColoring, ColoringError> {
    require_prime(p)?;
    let n = prev
        .modulus
        .checked_mul(p)
        .ok_or(ColoringError::ModulusTooLarge { modulus: u64::MAX, cap: MAX_COLOR_MODULUS })?;
    extend_stable(prev, n)
}

/// Prime multipliers taking m to n, smallest first; the induced subgroup
/// chain peels the largest prime factor of the remaining quotient at every
/// downward step. The extension result is chain-independent.
pub fn prime_chain(m: u64, n: u64) -> Result<Vec<u64>, ColoringError> {
    if m == 0 || n % m != 0 {
        return Err(ColoringError::NotADivisor { m, n });
    }
    let q = factorize(n / m)?;
    let mut chain = Vec::new();
    for &(p, e) in q.factors() {
        chain.extend(std::iter::repeat(p).take(e as usize));
    }
    Ok(chain)
}

/// Stable coloring of Z/n with exactly psi(n) colors.
pub fn stable_color_cyclic(n: u64) -> Result<CyclicColoring, ColoringError> {
    block_coloring(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FallbackResolution {
    BacktrackingSucceeded,
    FullGraphOracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FallbackEvent {
    pub step: usize,
    pub subgroup_generator: usize,
    pub intersection_size: usize,
    pub resolution: FallbackResolution,
}

#[derive(Debug, Clone, Serialize)]
pub struct Coloring {
    pub group: String,
    pub palette_size: usize,
    pub assignment: Vec<usize>,
    /// Construction log, one line per subgroup attached.
    pub steps: Vec<String>,
    /// Birth step of each color id, indexed by color.
    pub color_provenance: Vec<String>,
    pub fallbacks: Vec<FallbackEvent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("subgroup generated by element {element} of order {order} carries {actual} colors, expected {expected}")]
pub struct WeakStabilityViolation {
    pub element: usize,
    pub order: u64,
    pub expected: u64,
    pub actual: usize,
}

/// Every cyclic subgroup of g must carry exactly psi of its order in colors.
pub fn verify_weak_stability(
    g: &FiniteGroup,
    assignment: &[usize],
) -> Result<(), WeakStabilityViolation> {
    assert_eq!(assignment.len(), g.order());
    for x in 0..g.order() {
        let sub = g.cyclic_subgroup(x);
        let distinct: HashSet<usize> = sub.iter().map(|&y| assignment[y]).collect();
        let order = g.element_order(x);
        let expected = psi(&factorize(order).expect("order is positive"));
        if distinct.len() as u64 != expected {
            return Err(WeakStabilityViolation {
                element: x,
                order,
                expected,
                actual: distinct.len(),
            });
        }
    }
    Ok(())
}

/// Proper-coloring check against the undirected power graph.
pub fn verify_proper_on_graph(p: &PowerGraph, assignment: &[usize]) -> Result<(), (usize, usize)> {
    for (u, v) in p.undirected().edges() {
        if assignment[u] == assignment[v] {
            return Err((u, v));
        }
    }
    Ok(())
}

struct GroupColorer<'a> {
    g: &'a FiniteGroup,
    p: PowerGraph,
    mu: usize,
    assignment: Vec<Option<usize>>,
    steps: Vec<String>,
    fallbacks: Vec<FallbackEvent>,
    color_provenance: Vec<String>,
}

impl GroupColorer<'_> {
    /// Block color of an element: block_start of its order plus its rank
    /// among the generators of its cyclic subgroup, in element-index order.
    /// Comparability of elements implies comparability of orders, so this is
    /// proper across the whole group, not just inside one subgroup.
    fn block_color(&self, x: usize) -> usize {
        let d = self.g.element_order(x);
        let sub = self.g.cyclic_subgroup(x);
        let rank = sub
            .iter()
            .filter(|&&y| self.g.element_order(y) == d && y < x)
            .count();
        (block_start(d) + rank as u64) as usize
    }

    /// Attaches <h> by block colors. Requires every already-colored element
    /// of <h> to sit on its block color; returns false (leaving the state
    /// unchanged) when that alignment fails and a search is needed instead.
    fn attach_by_blocks(&mut self, h: usize, intersection_order: u64) -> bool {
        let hs = self.g.power_sequence(h);
        for &x in &hs {
            if let Some(c) = self.assignment[x] {
                if c != self.block_color(x) {
                    return false;
                }
            }
        }
        for &x in &hs {
            if self.assignment[x].is_none() {
                self.assignment[x] = Some(self.block_color(x));
            }
        }
        let n = self.g.element_order(h);
        let fresh = psi(&factorize(n).expect("positive order"))
            - psi(&factorize(intersection_order).expect("positive order"));
        self.steps.push(format!(
            "attach <{h}> (order {n}): cyclic intersection of order {intersection_order}, {fresh} colors beyond it"
        ));
        true
    }

    /// Non-cyclic (or misaligned) intersection: exhaustively recolor the new
    /// vertices over the full palette, requiring properness against
    /// everything colored so far and stability of every cyclic subgroup
    /// inside <h>.
    fn attach_by_search(&mut self, h: usize, intersection_size: usize) -> Result<(), ColoringError> {
        let hs = self.g.power_sequence(h);
        let mut new_vs: Vec<usize> =
            hs.iter().copied().filter(|&x| self.assignment[x].is_none()).collect();
        new_vs.sort_unstable();
        let mut nodes = 0u64;
        let solved = self.search(&hs, &new_vs, 0, &mut nodes);
        let step = self.steps.len();
        if solved {
            self.fallbacks.push(FallbackEvent {
                step,
                subgroup_generator: h,
                intersection_size,
                resolution: FallbackResolution::BacktrackingSucceeded,
            });
            self.steps.push(format!(
                "attach <{h}> (order {}): non-cyclic intersection of size {intersection_size}, backtracking recolored {} vertices",
                hs.len(),
                new_vs.len()
            ));
            return Ok(());
        }
        // Last resort: certify the whole graph with the exact oracle.
        let (chi, raw) = oracle::chromatic_assignment(self.p.undirected())?;
        let mut remap: HashMap<usize, usize> = HashMap::new();
        for v in 0..raw.len() {
            let next = remap.len();
            let c = *remap.entry(raw[v]).or_insert(next);
            self.assignment[v] = Some(c);
        }
        self.fallbacks.push(FallbackEvent {
            step,
            subgroup_generator: h,
            intersection_size,
            resolution: FallbackResolution::FullGraphOracle,
        });
        self.steps.push(format!(
            "attach <{h}>: local search failed, whole graph recolored by the exact oracle with {chi} colors"
        ));
        self.color_provenance = (0..chi).map(|_| "full-graph oracle".to_string()).collect();
        Ok(())
    }

    fn search(&mut self, hs: &[usize], new_vs: &[usize], idx: usize, nodes: &mut u64) -> bool {
        *nodes += 1;
        if *nodes > LOCAL_SEARCH_BUDGET {
            return false;
        }
        if idx == new_vs.len() {
            return self.subgroup_weakly_stable(hs);
        }
        let v = new_vs[idx];
        for c in 0..self.mu {
            let clash = self
                .p
                .undirected()
                .neighbors(v)
                .iter()
                .any(|u| self.assignment[u] == Some(c));
            if clash {
                continue;
            }
            self.assignment[v] = Some(c);
            if self.search(hs, new_vs, idx + 1, nodes) {
                return true;
            }
            self.assignment[v] = None;
        }
        false
    }

    fn subgroup_weakly_stable(&self, hs: &[usize]) -> bool {
        hs.iter().all(|&x| {
            let sub = self.g.cyclic_subgroup(x);
            let distinct: HashSet<usize> =
                sub.iter().map(|&y| self.assignment[y].expect("subgroup colored")).collect();
            let expected = psi(&factorize(self.g.element_order(x)).expect("positive order"));
            distinct.len() as u64 == expected
        })
    }
}

/// Proper coloring of the power graph of g using exactly omega colors,
/// built by seeding a psi-maximal cyclic subgroup with a stable coloring and
/// attaching the remaining cyclic subgroups in order of decreasing size.
pub fn color_group(g: &FiniteGroup) -> Result<Coloring, ColoringError> {
    let p = build_power_graph(g);
    let (mu, g0) = p.omega();
    let mu = mu as usize;
    let mut colorer = GroupColorer {
        g,
        p,
        mu,
        assignment: vec![None; g.order()],
        steps: Vec::new(),
        fallbacks: Vec::new(),
        color_provenance: Vec::new(),
    };

    // Seed: the subgroup realizing the clique number, colored by blocks.
    // Its block colors cover 0..mu densely, so later attachments only reuse
    // these ids.
    let base_order = g.element_order(g0);
    for &x in &g.power_sequence(g0) {
        colorer.assignment[x] = Some(colorer.block_color(x));
    }
    colorer.steps.push(format!(
        "seed <{g0}> (order {base_order}) with a stable coloring of {mu} colors"
    ));
    // Color id c is born when the subgroup chain first reaches psi > c.
    colorer.color_provenance.push("base chain start (trivial subgroup)".to_string());
    let mut reached = 1u64;
    let mut psi_reached = 1u64;
    for prime in prime_chain(1, base_order)? {
        let next = reached * prime;
        let psi_next = psi(&factorize(next)?);
        for _ in psi_reached..psi_next {
            colorer
                .color_provenance
                .push(format!("base chain step {reached} -> {next}"));
        }
        reached = next;
        psi_reached = psi_next;
    }

    loop {
        // Next attachment: uncolored element of maximal order, lowest index.
        let h = match (0..g.order())
            .filter(|&x| colorer.assignment[x].is_none())
            .max_by_key(|&x| (g.element_order(x), std::cmp::Reverse(x)))
        {
            Some(h) => h,
            None => break,
        };
        let hs = g.power_sequence(h);
        let colored: Vec<usize> =
            hs.iter().copied().filter(|&x| colorer.assignment[x].is_some()).collect();
        // The colored part of <h> is closed under powers; it is cyclic iff
        // its largest element order matches its size.
        let hprime_order = colored
            .iter()
            .map(|&x| g.element_order(x))
            .max()
            .expect("identity is always colored");
        let cyclic = hprime_order == colored.len() as u64;
        if !(cyclic && colorer.attach_by_blocks(h, hprime_order)) {
            colorer.attach_by_search(h, colored.len())?;
        }
    }

    let assignment: Vec<usize> =
        colorer.assignment.into_iter().map(|c| c.expect("all vertices colored")).collect();
    let palette: HashSet<usize> = assignment.iter().copied().collect();
    let palette_size = palette.len();
    let coloring = Coloring {
        group: g.name().to_string(),
        palette_size,
        assignment,
        steps: colorer.steps,
        color_provenance: colorer.color_provenance,
        fallbacks: colorer.fallbacks,
    };
    debug_assert_eq!(verify_proper_on_graph(&colorer.p, &coloring.assignment), Ok(()));
    Ok(coloring)
}

/// Chromatic number of the power graph. The construction realizes the clique
/// bound, so any palette/omega disagreement is reported as an error rather
/// than returned.
pub fn chi(g: &FiniteGroup) -> Result<usize, ColoringError> {
    let coloring = color_group(g)?;
    let p = build_power_graph(g);
    let (omega, _) = p.omega();
    if coloring.palette_size as u64 != omega {
        return Err(ColoringError::TheoremViolation { omega, palette: coloring.palette_size });
    }
    if verify_proper_on_graph(&p, &coloring.assignment).is_err() {
        return Err(ColoringError::TheoremViolation { omega, palette: coloring.palette_size });
    }
    Ok(coloring.palette_size)
}
