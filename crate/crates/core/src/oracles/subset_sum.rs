use num_bigint::BigUint;
use num_traits::Zero;

use super::bitset::BitSet;
use super::{gray_code, resource, small, Budget, Method, Solution, Verdict};
use crate::error::Result;
use crate::instances::SubsetSumInstance;

/// Bellman's table over `[0, t]`, or over `Z_q` when a modulus is present.
pub fn solve_subset_sum(inst: &SubsetSumInstance, budget: &Budget) -> Result<Verdict> {
    let n = inst.items.len() as u64;
    if inst.modulus.is_none() && inst.target.is_zero() {
        return Ok(Verdict::yes(Solution::Indices(vec![]), Method::Trivial, 0));
    }
    let width = match &inst.modulus {
        Some(q) => q.clone(),
        None => &inst.target + 1u32,
    };
    let cells_limit = budget.max_dp_cells / (n + 1);
    if let Some(width) = small(&width, cells_limit) {
        return Ok(match &inst.modulus {
            None => dp_plain(&inst.items, small(&inst.target, u64::MAX).expect("fits"), width),
            Some(_) => dp_modular(inst, width),
        });
    }
    if inst.items.len() <= budget.max_bruteforce_n {
        let found = subset_sum_bruteforce(&inst.items, &inst.target, inst.modulus.as_ref());
        return Ok(Verdict::from_option(found.map(Solution::Indices), Method::BruteForce, 1 << n));
    }
    Err(resource("subset sum instance"))
}

fn dp_plain(items: &[BigUint], t: usize, width: usize) -> Verdict {
    let mut layers = Vec::with_capacity(items.len() + 1);
    let mut first = BitSet::new(width);
    first.set(0);
    layers.push(first);
    for p in items {
        let mut next = layers.last().expect("nonempty").clone();
        if let Some(p) = small(p, t as u64) {
            let prev = layers.last().expect("nonempty");
            next.or_shifted(prev, p);
        }
        layers.push(next);
    }
    let states = (width * (items.len() + 1)) as u64;
    if !layers[items.len()].get(t) {
        return Verdict::no(Method::Dp, states);
    }
    let mut s = t;
    let mut chosen = Vec::new();
    for i in (0..items.len()).rev() {
        if !layers[i].get(s) {
            chosen.push(i);
            s -= small(&items[i], s as u64).expect("taken item fits");
        }
    }
    chosen.reverse();
    Verdict::yes(Solution::Indices(chosen), Method::Dp, states)
}

fn dp_modular(inst: &SubsetSumInstance, q: usize) -> Verdict {
    let qb = BigUint::from(q);
    let residues: Vec<usize> = inst
        .items
        .iter()
        .map(|p| small(&(p % &qb), q as u64).expect("residue below q"))
        .collect();
    let t = small(&(&inst.target % &qb), q as u64).expect("residue below q");
    let mut layers = Vec::with_capacity(residues.len() + 1);
    let mut first = BitSet::new(q);
    first.set(0);
    layers.push(first);
    for &p in &residues {
        let prev = layers.last().expect("nonempty");
        let mut next = prev.clone();
        next.or_rotated(prev, p);
        layers.push(next);
    }
    let states = (q * (residues.len() + 1)) as u64;
    if !layers[residues.len()].get(t) {
        return Verdict::no(Method::Dp, states);
    }
    let mut s = t;
    let mut chosen = Vec::new();
    for i in (0..residues.len()).rev() {
        if !layers[i].get(s) {
            chosen.push(i);
            s = (s + q - residues[i]) % q;
        }
    }
    chosen.reverse();
    Verdict::yes(Solution::Indices(chosen), Method::Dp, states)
}

/// Enumerates all 2^n subsets; sums are reduced mod `modulus` when given.
pub fn subset_sum_bruteforce(items: &[BigUint], target: &BigUint, modulus: Option<&BigUint>) -> Option<Vec<usize>> {
    let mut sum = BigUint::zero();
    let mut in_set = vec![false; items.len()];
    let mut found = None;
    gray_code(items.len(), |flip| {
        if let Some((i, entered)) = flip {
            in_set[i] = entered;
            if entered {
                sum += &items[i];
            } else {
                sum -= &items[i];
            }
        }
        let hit = match modulus {
            Some(q) => &sum % q == *target,
            None => sum == *target,
        };
        if hit {
            found = Some((0..items.len()).filter(|&i| in_set[i]).collect());
        }
        !hit
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::check_solution;

    fn solve(items: &[u64], t: u64) -> Verdict {
        solve_subset_sum(&SubsetSumInstance::from_u64(items, t), &Budget::default()).unwrap()
    }

    #[test]
    fn examples() {
        let v = solve(&[3, 5, 7], 12);
        assert_eq!(v.solution, Some(Solution::Indices(vec![1, 2])));
        assert!(solve(&[], 0).is_yes());
        let m = SubsetSumInstance::modular_from_u64(&[3, 5], 4, 6);
        assert!(!solve_subset_sum(&m, &Budget::default()).unwrap().is_yes());
    }

    #[test]
    fn fallback_to_brute_force_and_resource_error() {
        let tiny = Budget {
            max_dp_cells: 4,
            ..Budget::default()
        };
        let inst = SubsetSumInstance::from_u64(&[30, 12, 7], 37);
        let v = solve_subset_sum(&inst, &tiny).unwrap();
        assert_eq!(v.telemetry.method, Method::BruteForce);
        assert!(check_solution(&inst.clone().into(), v.solution.as_ref().unwrap()));
        let none = Budget {
            max_dp_cells: 4,
            max_bruteforce_n: 2,
            ..Budget::default()
        };
        assert!(solve_subset_sum(&inst, &none).is_err());
    }
}
