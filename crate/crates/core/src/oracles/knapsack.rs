use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{gray_code, resource, small, Budget, Method, Solution, Verdict};
use crate::error::Result;
use crate::instances::{big_sum, KnapsackInstance};

/// 0/1 knapsack table over capacities `[0, t]` maximizing weight.
pub fn solve_knapsack(inst: &KnapsackInstance, budget: &Budget) -> Result<Verdict> {
    if inst.demand.is_zero() {
        return Ok(Verdict::yes(Solution::Indices(vec![]), Method::Trivial, 0));
    }
    let n = inst.items.len() as u64;
    let weights_fit = big_sum(inst.items.iter().map(|it| &it.weight)).bits() < 127;
    if weights_fit {
        if let Some(t) = small(&inst.capacity, budget.max_dp_cells / (n + 1)) {
            return Ok(dp(inst, t));
        }
    }
    if inst.items.len() <= budget.max_bruteforce_n {
        let found = knapsack_bruteforce(inst);
        return Ok(Verdict::from_option(found.map(Solution::Indices), Method::BruteForce, 1 << n));
    }
    Err(resource("knapsack instance"))
}

fn dp(inst: &KnapsackInstance, t: usize) -> Verdict {
    let n = inst.items.len();
    let mut best = vec![0u128; t + 1];
    let mut take = vec![vec![false; t + 1]; n];
    for (i, it) in inst.items.iter().enumerate() {
        let Some(p) = small(&it.size, t as u64) else {
            continue;
        };
        let w = it.weight.to_u128().expect("checked to fit");
        for c in (p..=t).rev() {
            let cand = best[c - p] + w;
            if cand > best[c] {
                best[c] = cand;
                take[i][c] = true;
            }
        }
    }
    let states = ((t + 1) * (n + 1)) as u64;
    if BigUint::from(best[t]) < inst.demand {
        return Verdict::no(Method::Dp, states);
    }
    let mut c = t;
    let mut chosen = Vec::new();
    for i in (0..n).rev() {
        if take[i][c] {
            chosen.push(i);
            c -= small(&inst.items[i].size, c as u64).expect("taken item fits");
        }
    }
    chosen.reverse();
    Verdict::yes(Solution::Indices(chosen), Method::Dp, states)
}

pub fn knapsack_bruteforce(inst: &KnapsackInstance) -> Option<Vec<usize>> {
    let n = inst.items.len();
    let (mut size, mut weight) = (BigUint::zero(), BigUint::zero());
    let mut in_set = vec![false; n];
    let mut found = None;
    gray_code(n, |flip| {
        if let Some((i, entered)) = flip {
            in_set[i] = entered;
            let it = &inst.items[i];
            if entered {
                size += &it.size;
                weight += &it.weight;
            } else {
                size -= &it.size;
                weight -= &it.weight;
            }
        }
        let hit = size <= inst.capacity && weight >= inst.demand;
        if hit {
            found = Some((0..n).filter(|&i| in_set[i]).collect());
        }
        !hit
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let b = Budget::default();
        let v = solve_knapsack(&KnapsackInstance::from_u64(&[(2, 3)], 2, 3), &b).unwrap();
        assert_eq!(v.solution, Some(Solution::Indices(vec![0])));
        assert!(!solve_knapsack(&KnapsackInstance::from_u64(&[(2, 3)], 1, 1), &b).unwrap().is_yes());
        let v = solve_knapsack(&KnapsackInstance::from_u64(&[(5, 5), (1, 1)], 0, 0), &b).unwrap();
        assert_eq!(v.solution, Some(Solution::Indices(vec![])));
    }
}
