use serde::{Deserialize, Serialize};

use super::Permutation;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LandauMethod {
    /// Smallest degree admitting a cycle type with lcm above the threshold.
    #[default]
    MinimalDegree,
    /// One cycle per prime below sqrt(r), growing r until the product exceeds
    /// the threshold.
    PrimesBelowSqrt,
}

/// A permutation of order greater than `n`, returned with its degree.
pub fn landau_permutation(n: u64, method: LandauMethod) -> (Permutation, usize) {
    let lengths = match method {
        LandauMethod::MinimalDegree => minimal_cycle_lengths(n),
        LandauMethod::PrimesBelowSqrt => sqrt_prime_cycle_lengths(n),
    };
    let degree: usize = lengths.iter().sum();
    let mut cycles = Vec::new();
    let mut next = 0;
    for &len in &lengths {
        cycles.push((next..next + len).collect::<Vec<_>>());
        next += len;
    }
    let perm = Permutation::from_cycles(degree, &cycles).expect("disjoint cycles within degree");
    (perm, degree)
}

/// Landau's function g(r) for r in 0..=max_degree, saturating at u128::MAX.
pub fn landau_function(max_degree: usize) -> Vec<u128> {
    best_table(max_degree).into_iter().map(|(v, _)| v).collect()
}

/// `table[s] = (max lcm with cycle lengths summing to at most s, lengths)`.
/// Only prime powers of distinct primes need to be considered.
fn best_table(max_degree: usize) -> Vec<(u128, Vec<usize>)> {
    let mut table: Vec<(u128, Vec<usize>)> = vec![(1, Vec::new()); max_degree + 1];
    for p in primes_up_to(max_degree) {
        let previous = table.clone();
        let mut power = p;
        while power <= max_degree {
            for s in power..=max_degree {
                let (base, ref lens) = previous[s - power];
                let candidate = base.saturating_mul(power as u128);
                if candidate > table[s].0 {
                    let mut l = lens.clone();
                    l.push(power);
                    table[s] = (candidate, l);
                }
            }
            power *= p;
        }
    }
    table
}

fn minimal_cycle_lengths(n: u64) -> Vec<usize> {
    let mut max_degree = 8;
    loop {
        let table = best_table(max_degree);
        if let Some((_, lens)) = table.into_iter().find(|(v, _)| *v > u128::from(n)) {
            let mut lens = lens;
            lens.sort_unstable();
            return lens;
        }
        max_degree *= 2;
    }
}

fn sqrt_prime_cycle_lengths(n: u64) -> Vec<usize> {
    let mut r = 1usize;
    loop {
        let primes: Vec<usize> = primes_up_to(r).into_iter().filter(|&p| p * p < r).collect();
        let product = primes.iter().fold(1u128, |acc, &p| acc.saturating_mul(p as u128));
        if product > u128::from(n) {
            let mut lens = primes;
            // Pad with fixed points up to r.
            let used: usize = lens.iter().sum();
            lens.extend(std::iter::repeat(1).take(r - used));
            return lens;
        }
        r += 1;
    }
}

fn primes_up_to(n: usize) -> Vec<usize> {
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}
