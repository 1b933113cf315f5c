//! Exact arithmetic over factored integers: Euler's totient, the maximum
//! clique size `psi` of the power graph of a cyclic group, its closed form,
//! and the equivalent published chromatic-number formula.

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("argument must be positive")]
    ZeroInput,
    #[error("argument must be at least 2")]
    BelowTwo,
    #[error("u64 overflow")]
    Overflow,
}

/// A positive integer together with its prime factorization, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInt {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInt {
    pub fn new(n: u64) -> Result<Self, ArithError> {
        factorize(n)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// Ascending `(prime, exponent)` pairs; empty exactly for n = 1.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

/// Trial division; adequate for the sizes this crate works at.
pub fn factorize(n: u64) -> Result<FactoredInt, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroInput);
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d <= rest / d {
        if rest % d == 0 {
            let mut a = 0u32;
            while rest % d == 0 {
                rest /= d;
                a += 1;
            }
            factors.push((d, a));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(FactoredInt { value: n, factors })
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> Result<u64, ArithError> {
    if a == 0 || b == 0 {
        return Err(ArithError::ZeroInput);
    }
    (a / gcd(a, b)).checked_mul(b).ok_or(ArithError::Overflow)
}

fn pow_u64(p: u64, a: u32) -> u64 {
    // Reconstructed from a valid factorization, so p^a <= value <= u64::MAX.
    p.pow(a)
}

fn phi_prime_power(p: u64, a: u32) -> u64 {
    pow_u64(p, a - 1) * (p - 1)
}

pub fn euler_phi(n: &FactoredInt) -> u64 {
    n.factors.iter().map(|&(p, a)| phi_prime_power(p, a)).product()
}

/// Maximum clique size of the power graph of the cyclic group of order n.
/// Recurrence: psi(1) = 1, psi(n) = phi(n) + max over primes p | n of psi(n/p).
/// psi(n) <= n, so every intermediate fits in u64.
pub fn psi(n: &FactoredInt) -> u64 {
    let mut memo = HashMap::new();
    psi_rec(&mut n.factors.clone(), n.value, &mut memo)
}

fn psi_rec(factors: &mut Vec<(u64, u32)>, value: u64, memo: &mut HashMap<u64, u64>) -> u64 {
    if value == 1 {
        return 1;
    }
    if let Some(&v) = memo.get(&value) {
        return v;
    }
    let phi: u64 = factors.iter().map(|&(p, a)| phi_prime_power(p, a)).product();
    let mut best = 0;
    for i in 0..factors.len() {
        let (p, a) = factors[i];
        let sub = if a == 1 {
            let mut f = factors.clone();
            f.remove(i);
            psi_rec(&mut f, value / p, memo)
        } else {
            factors[i].1 = a - 1;
            let v = psi_rec(factors, value / p, memo);
            factors[i].1 = a;
            v
        };
        best = best.max(sub);
    }
    let out = phi + best;
    memo.insert(value, out);
    out
}

/// Closed form: psi(n) = 1 + sum over r of (p_r^{a_r} - 1) * prod_{j>r} p_j^{a_j - 1}(p_j - 1),
/// primes ascending. Every term is bounded by n.
pub fn psi_closed_form(n: &FactoredInt) -> u64 {
    let f = &n.factors;
    let mut total = 1u64;
    for r in 0..f.len() {
        let (p, a) = f[r];
        let mut term = pow_u64(p, a) - 1;
        for &(q, b) in &f[r + 1..] {
            term *= phi_prime_power(q, b);
        }
        total += term;
    }
    total
}

/// Published clique/chromatic-number formula for a group of full exponent n:
/// p_r^{b_r} + sum_{j=0}^{r-2} (p_{r-j-1}^{b_{r-j-1}} - 1) * prod_{i=0}^{j} phi(p_{r-i}^{b_{r-i}}),
/// primes ascending. Agrees with psi(n); rejects n = 1.
pub fn ashrafi_value(n: &FactoredInt) -> Result<u64, ArithError> {
    let f = &n.factors;
    if f.is_empty() {
        return Err(ArithError::BelowTwo);
    }
    let r = f.len();
    let (p_top, a_top) = f[r - 1];
    let mut total = pow_u64(p_top, a_top);
    let mut phi_prod = 1u64;
    for j in 0..r.saturating_sub(1) {
        let (q, b) = f[r - 1 - j];
        phi_prod *= phi_prime_power(q, b);
        let (p, a) = f[r - 2 - j];
        total += (pow_u64(p, a) - 1) * phi_prod;
    }
    Ok(total)
}

/// Divisors of n in ascending order.
pub fn divisors(n: &FactoredInt) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, a) in &n.factors {
        let prev = out.clone();
        let mut pk = 1u64;
        for _ in 0..a {
            pk *= p;
            out.extend(prev.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}
