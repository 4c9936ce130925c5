use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::zkk::zkk_s;
use crate::error::{Error, Result};
use crate::instances::GroupSubsetSumInstance;

pub(crate) fn add_into(acc: &mut [u32], e: &[u32], k: u32) {
    for (a, &x) in acc.iter_mut().zip(e) {
        *a = (*a + x) % k;
    }
}

/// Positions (into `seq`) of a nonempty subsequence summing to zero in
/// `Z_k^k`, found by a reachability sweep over the group.
pub fn zero_sum_subsequence(k: u32, seq: &[Vec<u32>]) -> Option<Vec<usize>> {
    let zero = vec![0u32; k as usize];
    // Reachable nonempty sums, each with one subsequence realizing it.
    let mut reach: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    for (j, e) in seq.iter().enumerate() {
        let mut fresh: Vec<(Vec<u32>, Vec<usize>)> = vec![(e.clone(), vec![j])];
        for (sum, idx) in &reach {
            let mut s = sum.clone();
            add_into(&mut s, e, k);
            let mut i = idx.clone();
            i.push(j);
            fresh.push((s, i));
        }
        for (s, i) in fresh {
            if s == zero {
                return Some(i);
            }
            reach.entry(s).or_insert(i);
        }
    }
    None
}

/// Drops zero-sum subsequences from the chosen `idx` until at most `limit`
/// elements remain. The sum is unchanged at every step.
pub(crate) fn shorten_to(k: u32, elements: &[Vec<u32>], idx: &[usize], limit: usize) -> Result<Vec<usize>> {
    let mut idx = idx.to_vec();
    while idx.len() > limit {
        let seq: Vec<Vec<u32>> = idx.iter().map(|&i| elements[i].clone()).collect();
        let drop = zero_sum_subsequence(k, &seq).ok_or_else(|| {
            Error::Construction(format!("{} elements of Z_{k}^{k} with no zero-sum subsequence", seq.len()))
        })?;
        idx = idx
            .iter()
            .enumerate()
            .filter(|(p, _)| !drop.contains(p))
            .map(|(_, &i)| i)
            .collect();
    }
    Ok(idx)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroSumReport {
    pub k: u32,
    pub s: usize,
    pub sequences_checked: u64,
    pub exhaustive: bool,
    /// A length-`s` sequence without a nonempty zero-sum subsequence.
    pub counterexample: Option<Vec<Vec<u32>>>,
}

/// Sequences of length `s` over `Z_k^k` all contain a nonempty zero-sum
/// subsequence: exhaustively when there are at most `2^20` of them,
/// otherwise on `samples` seeded random sequences.
pub fn zero_sum_check(k: u32, samples: u64, seed: u64) -> Result<ZeroSumReport> {
    let s = zkk_s(k);
    let order = u64::from(k)
        .checked_pow(k)
        .ok_or_else(|| Error::Unsupported(format!("Z_{k}^{k} is too large")))?;
    let element = |mut code: u64| -> Vec<u32> {
        (0..k)
            .map(|_| {
                let x = (code % u64::from(k)) as u32;
                code /= u64::from(k);
                x
            })
            .collect()
    };
    let total = order.checked_pow(s as u32).filter(|&t| t <= 1 << 20);
    let mut report = ZeroSumReport {
        k,
        s,
        sequences_checked: 0,
        exhaustive: total.is_some(),
        counterexample: None,
    };
    let check = |seq: Vec<Vec<u32>>, report: &mut ZeroSumReport| {
        report.sequences_checked += 1;
        if zero_sum_subsequence(k, &seq).is_none() {
            report.counterexample = Some(seq);
            return false;
        }
        true
    };
    match total {
        Some(total) => {
            for mut code in 0..total {
                let seq = (0..s)
                    .map(|_| {
                        let e = element(code % order);
                        code /= order;
                        e
                    })
                    .collect();
                if !check(seq, &mut report) {
                    break;
                }
            }
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let seq = (0..s).map(|_| element(rng.gen_range(0..order))).collect();
                if !check(seq, &mut report) {
                    break;
                }
            }
        }
    }
    Ok(report)
}

/// A shortest solution, by enumerating index sets in order of size.
pub fn min_solution(inst: &GroupSubsetSumInstance) -> Result<Option<Vec<usize>>> {
    let GroupSubsetSumInstance::ProductZkk { k, elements, target } = inst else {
        return Err(Error::Unsupported("shortest solutions are computed over Z_k^k only".into()));
    };
    let n = elements.len();
    if n > 20 {
        return Err(Error::Resource(format!("2^{n} index sets")));
    }
    let mut best: Option<u64> = None;
    for mask in 0u64..1 << n {
        if best.is_some_and(|b| b.count_ones() <= mask.count_ones()) {
            continue;
        }
        let mut sum = vec![0u32; *k as usize];
        for i in (0..n).filter(|&i| mask >> i & 1 == 1) {
            add_into(&mut sum, &elements[i], *k);
        }
        if &sum == target {
            best = Some(mask);
        }
    }
    Ok(best.map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect()))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MinimalReport {
    pub instances: u64,
    pub solvable: u64,
    pub longest_minimum: usize,
    /// Instances whose shortest solution has at least `s` elements.
    pub violations: Vec<GroupSubsetSumInstance>,
}

/// Every solvable instance has a solution shorter than `s`.
pub fn minimal_solution_bound_check<'a>(
    instances: impl IntoIterator<Item = &'a GroupSubsetSumInstance>,
) -> Result<MinimalReport> {
    let mut report = MinimalReport::default();
    for inst in instances {
        let GroupSubsetSumInstance::ProductZkk { k, .. } = inst else {
            return Err(Error::Unsupported("minimal solution check needs Z_k^k".into()));
        };
        report.instances += 1;
        if let Some(sol) = min_solution(inst)? {
            report.solvable += 1;
            report.longest_minimum = report.longest_minimum.max(sol.len());
            if sol.len() >= zkk_s(*k) {
                report.violations.push(inst.clone());
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_for_k2() {
        let r = zero_sum_check(2, 0, 0).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.sequences_checked, 256);
        assert!(r.counterexample.is_none());
    }

    #[test]
    fn three_nonzero_elements_can_avoid_zero() {
        // Davenport constant of Z_2^2 is 3; two distinct nonzero elements do not suffice.
        assert!(zero_sum_subsequence(2, &[vec![1, 0], vec![0, 1]]).is_none());
        assert!(zero_sum_subsequence(2, &[vec![1, 0], vec![0, 1], vec![1, 1]]).is_some());
    }

    #[test]
    fn trivial_group() {
        let r = zero_sum_check(1, 0, 0).unwrap();
        assert_eq!(r.s, 1);
        assert!(r.counterexample.is_none());
    }
}
