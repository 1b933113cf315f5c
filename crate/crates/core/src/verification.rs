//! The reproduction suite: nine machine checks covering the headline claims
//! (chromatic = clique number on the corpus, the S5 gap between psi of the
//! exponent and the actual clique number, formula agreement, extension
//! budgets, Berge certification) against the independent exact oracles.
//! Each check folds its wall-clock budget into the verdict.

use std::time::Instant;

use serde::Serialize;

use crate::arith::{ashrafi_value, factorize, psi, psi_closed_form};
use crate::coloring::{color_group, extend_prime_step, stable_color_cyclic, verify_weak_stability};
use crate::graph::{build_power_graph, BitGraph};
use crate::group::FiniteGroup;
use crate::oracle::{chromatic_number_exact, max_clique_exact};
use crate::perfectness::certify_berge;

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    pub details: String,
    pub elapsed_ms: u128,
}

fn report(name: &str, started: Instant, budget_ms: u128, result: Result<String, String>) -> CheckReport {
    let elapsed_ms = started.elapsed().as_millis();
    let (mut pass, mut details) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if pass && elapsed_ms > budget_ms {
        pass = false;
        details = format!("{details}; exceeded the {budget_ms} ms budget");
    }
    CheckReport { name: name.to_string(), pass, details, elapsed_ms }
}

/// The benchmark corpus: all cyclic groups to order 48, all dihedral groups
/// to order 48, the named small groups, and three direct products.
pub fn corpus() -> Vec<FiniteGroup> {
    let mut groups = Vec::new();
    for n in 1..=48 {
        groups.push(FiniteGroup::cyclic(n).expect("cyclic group"));
    }
    for n in 1..=24 {
        groups.push(FiniteGroup::dihedral(n).expect("dihedral group"));
    }
    groups.push(FiniteGroup::symmetric(3).expect("S3"));
    groups.push(FiniteGroup::symmetric(4).expect("S4"));
    // A4 as the closure of two 3-cycles.
    let a4 = FiniteGroup::from_permutation_generators(&[vec![1, 2, 0, 3], vec![0, 2, 3, 1]])
        .expect("A4");
    assert_eq!(a4.order(), 12);
    groups.push(a4);
    groups.push(FiniteGroup::quaternion8().expect("Q8"));
    let c6 = FiniteGroup::cyclic(6).expect("C6");
    groups.push(FiniteGroup::direct_product(&c6, &c6).expect("C6 x C6"));
    let c2 = FiniteGroup::cyclic(2).expect("C2");
    let c2c2 = FiniteGroup::direct_product(&c2, &c2).expect("C2 x C2");
    groups.push(FiniteGroup::direct_product(&c2c2, &c2).expect("C2 x C2 x C2"));
    let c12 = FiniteGroup::cyclic(12).expect("C12");
    groups.push(FiniteGroup::direct_product(&c12, &c2).expect("C12 x C2"));
    groups
}

/// Criterion 1: the symmetric-group counterexample. The exponent of S5 is 60
/// and psi(60) = 37, yet the clique and chromatic numbers are both 5.
pub fn check_s5_counterexample() -> CheckReport {
    let started = Instant::now();
    let result = (|| {
        let s5 = FiniteGroup::symmetric(5).map_err(|e| e.to_string())?;
        let exponent = s5.exponent();
        if exponent != 60 {
            return Err(format!("exponent of S5 is {exponent}, expected 60"));
        }
        let psi60 = psi(&factorize(60).map_err(|e| e.to_string())?);
        if psi60 != 37 {
            return Err(format!("psi(60) = {psi60}, expected 37"));
        }
        let p = build_power_graph(&s5);
        let (omega, witness) = p.omega();
        if omega != 5 {
            return Err(format!("omega(S5) = {omega}, expected 5"));
        }
        let clique = max_clique_exact(p.undirected()).map_err(|e| e.to_string())?;
        if clique.size != 5 {
            return Err(format!("oracle clique on S5 = {}, expected 5", clique.size));
        }
        let chi_oracle = chromatic_number_exact(p.undirected()).map_err(|e| e.to_string())?;
        if chi_oracle != 5 {
            return Err(format!("oracle chromatic on S5 = {chi_oracle}, expected 5"));
        }
        let coloring = color_group(&s5).map_err(|e| e.to_string())?;
        if coloring.palette_size != 5 {
            return Err(format!("constructed palette on S5 = {}, expected 5", coloring.palette_size));
        }
        Ok(format!(
            "exponent 60, psi(60) = 37, omega = chi = 5 (witness element {witness}), both oracles agree on the 120-vertex graph"
        ))
    })();
    report("S5 counterexample: psi(exponent) = 37 but omega = chi = 5", started, 10_000, result)
}

/// Criterion 2: constructed palette = clique number = both oracles, on every
/// corpus group.
pub fn check_corpus_equality() -> CheckReport {
    let started = Instant::now();
    let result = (|| {
        let groups = corpus();
        for g in &groups {
            let p = build_power_graph(g);
            let (omega, _) = p.omega();
            let coloring = color_group(g).map_err(|e| format!("{}: {e}", g.name()))?;
            let clique = max_clique_exact(p.undirected()).map_err(|e| format!("{}: {e}", g.name()))?;
            let chromatic =
                chromatic_number_exact(p.undirected()).map_err(|e| format!("{}: {e}", g.name()))?;
            if coloring.palette_size as u64 != omega
                || clique.size as u64 != omega
                || chromatic as u64 != omega
            {
                return Err(format!(
                    "{}: palette {} / omega {omega} / oracle clique {} / oracle chromatic {chromatic} disagree",
                    g.name(),
                    coloring.palette_size,
                    clique.size
                ));
            }
        }
        Ok(format!("palette = omega = oracle clique = oracle chromatic on all {} corpus groups", groups.len()))
    })();
    report("corpus equality: chromatic number equals clique number", started, 300_000, result)
}

/// Criterion 3: the recurrence, the closed form, and the full-exponent
/// formula are the same function.
pub fn check_formula_consistency() -> CheckReport {
    let started = Instant::now();
    let result = (|| {
        for n in 1..=100_000u64 {
            let f = factorize(n).map_err(|e| e.to_string())?;
            let a = psi(&f);
            let b = psi_closed_form(&f);
            if a != b {
                return Err(format!("psi({n}) = {a} but closed form gives {b}"));
            }
        }
        for n in 2..=10_000u64 {
            let f = factorize(n).map_err(|e| e.to_string())?;
            let a = ashrafi_value(&f).map_err(|e| e.to_string())?;
            if a != psi(&f) {
                return Err(format!("ashrafi_value({n}) = {a} but psi gives {}", psi(&f)));
            }
        }
        Ok("psi = closed form for n <= 100000; full-exponent formula = psi for 2 <= n <= 10000".to_string())
    })();
    report("formula consistency: recurrence, closed form, exponent formula", started, 30_000, result)
}

/// Criterion 4: on full-exponent corpus groups, omega = chi = the formula
/// value at the exponent. Exponent 1 sits outside the formula's domain.
pub fn check_full_exponent_groups() -> CheckReport {
    let started = Instant::now();
    let result = (|| {
        let mut checked = 0usize;
        let mut skipped = 0usize;
        for g in corpus() {
            if !g.is_full_exponent() {
                continue;
            }
            let exponent = g.exponent();
            if exponent < 2 {
                skipped += 1;
                continue;
            }
            let formula = ashrafi_value(&factorize(exponent).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let p = build_power_graph(&g);
            let (omega, _) = p.omega();
            let chi = crate::coloring::chi(&g).map_err(|e| format!("{}: {e}", g.name()))?;
            if omega != formula || chi as u64 != formula {
                return Err(format!(
                    "{}: omega {omega} / chi {chi} / formula {formula} disagree at exponent {exponent}",
                    g.name()
                ));
            }
            checked += 1;
        }
        Ok(format!(
            "omega = chi = formula(exponent) on {checked} full-exponent groups ({skipped} trivial-exponent group outside the formula domain)"
        ))
    })();
    report("full-exponent groups: omega = chi = formula(exponent)", started, 300_000, result)
}

/// Criterion 5: every prime extension step spends exactly the psi difference
/// in fresh colors and keeps the subgroup's assignment.
pub fn check_extension_budget() -> CheckReport {
    let started = Instant::now();
    let result = (|| {
        let mut steps = 0usize;
        for n in 2..=1000u64 {
            let nf = factorize(n).map_err(|e| e.to_string())?;
            let psi_n = psi(&nf);
            for &(p, _) in nf.factors() {
                let m = n / p;
                let prev = stable_color_cyclic(m).map_err(|e| e.to_string())?;
                let next = extend_prime_step(&prev, p).map_err(|e| e.to_string())?;
                let fresh = next.palette_size() - prev.palette_size();
                let budget = psi_n - psi(&factorize(m).map_err(|e| e.to_string())?);
                if fresh as u64 != budget {
                    return Err(format!("step {m} -> {n}: {fresh} fresh colors, budget {budget}"));
                }
                for k in 0..m {
                    if next.color(k * p) != prev.color(k) {
                        return Err(format!("step {m} -> {n}: color of residue {k} changed"));
                    }
                }
                steps += 1;
            }
        }
        Ok(format!("exact fresh budget and preserved restriction across {steps} prime steps, n <= 1000"))
    })();
    report("extension budget: fresh colors = psi(n) - psi(n/p)", started, 120_000, result)
}

/// Criterion 6: color_group output is weakly stable on every corpus group.
pub fn check_weak_stability() -> CheckReport {
    let started = Instant::now();
    let result = (|| {
        let groups = corpus();
        for g in &groups {
            let coloring = color_group(g).map_err(|e| format!("{}: {e}", g.name()))?;
            verify_weak_stability(g, &coloring.assignment)
                .map_err(|e| format!("{}: {e}", g.name()))?;
        }
        Ok(format!("every cyclic subgroup carries exactly psi(order) colors, all {} corpus groups", groups.len()))
    })();
    report("weak stability of constructed colorings", started, 300_000, result)
}

/// Criterion 7: no odd hole or antihole in any corpus power graph, searched
/// exhaustively up to 24 vertices and to cycle length 11 beyond that.
pub fn check_berge_certification() -> CheckReport {
    let started = Instant::now();
    let result = (|| {
        let groups = corpus();
        let mut exhaustive = 0usize;
        let mut bounded = 0usize;
        for g in &groups {
            let p = build_power_graph(g);
            let rep = certify_berge(p.undirected(), None).map_err(|e| format!("{}: {e}", g.name()))?;
            if !rep.certified {
                return Err(format!("{}: witness found {:?}", g.name(), rep.witness));
            }
            if rep.exhaustive {
                exhaustive += 1;
            } else {
                bounded += 1;
            }
        }
        Ok(format!(
            "all {} corpus power graphs certified ({exhaustive} exhaustively, {bounded} to cycle length 11)",
            groups.len()
        ))
    })();
    report("Berge certification of corpus power graphs", started, 600_000, result)
}

fn brute_max_clique(g: &BitGraph) -> usize {
    let n = g.vertex_count();
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if vs.len() <= best {
            continue;
        }
        let clique = vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)));
        if clique {
            best = vs.len();
        }
    }
    best
}

fn brute_chromatic(g: &BitGraph) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    fn feasible(g: &BitGraph, k: usize, colors: &mut Vec<usize>, v: usize) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        for c in 0..k {
            if g.neighbors(v).iter().any(|u| u < v && colors[u] == c) {
                continue;
            }
            colors[v] = c;
            if feasible(g, k, colors, v + 1) {
                return true;
            }
        }
        false
    }
    (1..=n)
        .find(|&k| feasible(g, k, &mut vec![usize::MAX; n], 0))
        .expect("n colors always suffice")
}

/// Criterion 8: both oracles agree with exhaustive enumeration on 200 seeded
/// random graphs of at most 9 vertices.
pub fn check_oracle_soundness() -> CheckReport {
    use rand::{Rng, SeedableRng};
    let started = Instant::now();
    let result = (|| {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_cafe);
        for case in 0..200 {
            let n = rng.gen_range(1..=9usize);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = BitGraph::from_edges(n, &edges).map_err(|e| e.to_string())?;
            let clique = max_clique_exact(&g).map_err(|e| e.to_string())?;
            let brute_omega = brute_max_clique(&g);
            if clique.size != brute_omega {
                return Err(format!("case {case}: clique oracle {} vs enumeration {brute_omega}", clique.size));
            }
            let chromatic = chromatic_number_exact(&g).map_err(|e| e.to_string())?;
            let brute_chi = brute_chromatic(&g);
            if chromatic != brute_chi {
                return Err(format!("case {case}: chromatic oracle {chromatic} vs enumeration {brute_chi}"));
            }
        }
        Ok("both oracles match exhaustive enumeration on 200 random graphs".to_string())
    })();
    report("oracle soundness against exhaustive enumeration", started, 300_000, result)
}

/// Criterion 9: the fallback log is complete and activating groups still
/// color optimally.
pub fn check_fallback_accounting() -> CheckReport {
    let started = Instant::now();
    let result = (|| {
        let groups = corpus();
        let mut activations: Vec<String> = Vec::new();
        for g in &groups {
            let coloring = color_group(g).map_err(|e| format!("{}: {e}", g.name()))?;
            if coloring.fallbacks.is_empty() {
                continue;
            }
            let p = build_power_graph(g);
            let (omega, _) = p.omega();
            if coloring.palette_size as u64 != omega {
                return Err(format!(
                    "{}: fallback produced palette {} but omega is {omega}",
                    g.name(),
                    coloring.palette_size
                ));
            }
            activations.push(format!(
                "{} ({} events, resolutions {:?})",
                g.name(),
                coloring.fallbacks.len(),
                coloring
                    .fallbacks
                    .iter()
                    .map(|f| f.resolution)
                    .collect::<Vec<_>>()
            ));
        }
        if activations.is_empty() {
            Ok("no corpus group needed the fallback".to_string())
        } else {
            Ok(format!("fallback activations stayed optimal: {}", activations.join("; ")))
        }
    })();
    report("fallback accounting on the corpus", started, 300_000, result)
}

/// Runs the whole suite in criterion order.
pub fn run_all() -> Vec<CheckReport> {
    vec![
        check_s5_counterexample(),
        check_corpus_equality(),
        check_formula_consistency(),
        check_full_exponent_groups(),
        check_extension_budget(),
        check_weak_stability(),
        check_berge_certification(),
        check_oracle_soundness(),
        check_fallback_accounting(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_composition() {
        let groups = corpus();
        assert_eq!(groups.len(), 48 + 24 + 7);
        let orders: Vec<usize> = groups.iter().map(|g| g.order()).collect();
        assert!(orders.iter().all(|&o| o <= 48));
        // The named tail: S3, S4, A4, Q8, C6xC6, C2^3, C12xC2.
        assert_eq!(&orders[72..], &[6, 24, 12, 8, 36, 8, 24]);
    }

    #[test]
    fn full_exponent_flags_on_corpus() {
        // Dihedral groups are full exponent only for even rotation order
        // (and the degenerate n = 1); symmetric and alternating ones never
        // are beyond S2.
        let d5 = FiniteGroup::dihedral(5).unwrap();
        assert!(!d5.is_full_exponent());
        let d6 = FiniteGroup::dihedral(6).unwrap();
        assert!(d6.is_full_exponent());
        let s4 = FiniteGroup::symmetric(4).unwrap();
        assert!(!s4.is_full_exponent());
    }

    #[test]
    fn brute_helpers_on_known_graphs() {
        let c5 = BitGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(brute_max_clique(&c5), 2);
        assert_eq!(brute_chromatic(&c5), 3);
        let k4 = BitGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(brute_max_clique(&k4), 4);
        assert_eq!(brute_chromatic(&k4), 4);
    }
}
