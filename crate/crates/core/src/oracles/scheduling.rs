use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{gray_code, resource, small, Budget, Method, Solution, Verdict};
use crate::error::Result;
use crate::instances::{big_max, big_sum, SchedulingInstance};

/// Total weight of the jobs that finish after their due date when processed
/// in `order`.
pub fn tardy_weight(inst: &SchedulingInstance, order: &[usize]) -> BigUint {
    let mut clock = BigUint::zero();
    let mut tardy = BigUint::zero();
    for &j in order {
        let job = &inst.jobs[j];
        clock += &job.processing;
        if clock > job.due {
            tardy += &job.weight;
        }
    }
    tardy
}

fn edd_order(inst: &SchedulingInstance) -> Vec<usize> {
    let mut order: Vec<usize> = (0..inst.jobs.len()).collect();
    order.sort_by(|&a, &b| inst.jobs[a].due.cmp(&inst.jobs[b].due).then(a.cmp(&b)));
    order
}

/// On-time jobs first in due-date order, then the rest.
fn schedule_from_on_time(inst: &SchedulingInstance, on_time: &[usize]) -> Solution {
    let mut in_set = vec![false; inst.jobs.len()];
    for &j in on_time {
        in_set[j] = true;
    }
    let edd = edd_order(inst);
    let mut order: Vec<usize> = edd.iter().copied().filter(|&j| in_set[j]).collect();
    order.extend(edd.iter().copied().filter(|&j| !in_set[j]));
    let mut on_time = on_time.to_vec();
    on_time.sort_unstable();
    Solution::Schedule { order, on_time }
}

/// Lawler and Moore: jobs in due-date order, table over finishing times up to
/// the largest due date, maximizing the on-time weight.
pub fn solve_scheduling(inst: &SchedulingInstance, budget: &Budget) -> Result<Verdict> {
    let n = inst.jobs.len() as u64;
    let total = big_sum(inst.jobs.iter().map(|j| &j.weight));
    if total <= inst.tardy_budget {
        let edd = edd_order(inst);
        return Ok(Verdict::yes(schedule_from_on_time(inst, &edd_on_time(inst, &edd)), Method::Trivial, 0));
    }
    let d_max = big_max(inst.jobs.iter().map(|j| &j.due));
    if total.bits() < 127 {
        if let Some(d) = small(&d_max, budget.max_dp_cells / (n + 1)) {
            return Ok(dp(inst, d, &total));
        }
    }
    if inst.jobs.len() <= budget.max_bruteforce_n {
        let found = scheduling_bruteforce_subsets(inst);
        return Ok(Verdict::from_option(found, Method::BruteForce, 1 << n));
    }
    Err(resource("scheduling instance"))
}

/// Jobs that meet their due date when `order` is followed.
fn edd_on_time(inst: &SchedulingInstance, order: &[usize]) -> Vec<usize> {
    let mut clock = BigUint::zero();
    let mut on_time = Vec::new();
    for &j in order {
        clock += &inst.jobs[j].processing;
        if clock <= inst.jobs[j].due {
            on_time.push(j);
        }
    }
    on_time
}

fn dp(inst: &SchedulingInstance, d_max: usize, total: &BigUint) -> Verdict {
    let edd = edd_order(inst);
    let n = edd.len();
    // best[c]: largest on-time weight whose on-time jobs finish exactly by time c
    let mut best: Vec<Option<u128>> = vec![None; d_max + 1];
    best[0] = Some(0);
    let mut take = vec![vec![false; d_max + 1]; n];
    for (pos, &j) in edd.iter().enumerate() {
        let job = &inst.jobs[j];
        let (Some(p), Some(d)) = (small(&job.processing, d_max as u64), small(&job.due, d_max as u64)) else {
            continue;
        };
        let w = job.weight.to_u128().expect("checked to fit");
        for c in (p..=d).rev() {
            if let Some(prev) = best[c - p] {
                if best[c].is_none_or(|b| prev + w > b) {
                    best[c] = Some(prev + w);
                    take[pos][c] = true;
                }
            }
        }
    }
    let states = ((d_max + 1) * (n + 1)) as u64;
    let (mut c, on_weight) = best
        .iter()
        .enumerate()
        .filter_map(|(c, b)| b.map(|b| (c, b)))
        .max_by_key(|&(c, b)| (b, std::cmp::Reverse(c)))
        .expect("time 0 is reachable");
    if total - BigUint::from(on_weight) > inst.tardy_budget {
        return Verdict::no(Method::Dp, states);
    }
    let mut on_time = Vec::new();
    for pos in (0..n).rev() {
        if take[pos][c] {
            let j = edd[pos];
            on_time.push(j);
            c -= small(&inst.jobs[j].processing, c as u64).expect("taken job fits");
        }
    }
    Verdict::yes(schedule_from_on_time(inst, &on_time), Method::Dp, states)
}

/// Every subset of jobs is tried as the on-time set, scheduled in due-date
/// order (the order in which a feasible on-time set can always be run).
pub fn scheduling_bruteforce_subsets(inst: &SchedulingInstance) -> Option<Solution> {
    if let Some(found) = feasible_sets_u128(inst) {
        return found;
    }
    let n = inst.jobs.len();
    let edd = edd_order(inst);
    let total = big_sum(inst.jobs.iter().map(|j| &j.weight));
    let mut in_set = vec![false; n];
    let mut found = None;
    gray_code(n, |flip| {
        if let Some((i, entered)) = flip {
            in_set[i] = entered;
        }
        let mut clock = BigUint::zero();
        let mut weight = BigUint::zero();
        for &j in edd.iter().filter(|&&j| in_set[j]) {
            clock += &inst.jobs[j].processing;
            if clock > inst.jobs[j].due {
                return true;
            }
            weight += &inst.jobs[j].weight;
        }
        if &total - weight <= inst.tardy_budget {
            let on_time: Vec<usize> = (0..n).filter(|&j| in_set[j]).collect();
            found = Some(schedule_from_on_time(inst, &on_time));
            return false;
        }
        true
    });
    found
}

/// Same enumeration in machine integers: a depth-first walk over the jobs in
/// due-date order that visits every on-time set meeting all its due dates.
/// `None` when some quantity does not fit.
fn feasible_sets_u128(inst: &SchedulingInstance) -> Option<Option<Solution>> {
    let edd = edd_order(inst);
    let conv = |x: &BigUint| x.to_u128().filter(|&v| v < u128::MAX >> 8);
    let jobs: Vec<(u128, u128, u128)> = edd
        .iter()
        .map(|&j| {
            let job = &inst.jobs[j];
            Some((conv(&job.processing)?, conv(&job.weight)?, conv(&job.due)?))
        })
        .collect::<Option<_>>()?;
    let total: u128 = jobs.iter().map(|j| j.1).sum();
    let need = total.saturating_sub(conv(&inst.tardy_budget).unwrap_or(u128::MAX >> 8));
    fn go(jobs: &[(u128, u128, u128)], at: usize, clock: u128, weight: u128, need: u128, chosen: &mut Vec<usize>) -> bool {
        if at == jobs.len() {
            return weight >= need;
        }
        let (p, w, d) = jobs[at];
        if clock + p <= d {
            chosen.push(at);
            if go(jobs, at + 1, clock + p, weight + w, need, chosen) {
                return true;
            }
            chosen.pop();
        }
        go(jobs, at + 1, clock, weight, need, chosen)
    }
    let mut chosen = Vec::new();
    if !go(&jobs, 0, 0, 0, need, &mut chosen) {
        return Some(None);
    }
    let on_time: Vec<usize> = chosen.iter().map(|&i| edd[i]).collect();
    Some(Some(schedule_from_on_time(inst, &on_time)))
}

/// All n! processing orders; only for very small `n`.
pub fn scheduling_bruteforce_permutations(inst: &SchedulingInstance) -> Option<Solution> {
    let n = inst.jobs.len();
    assert!(n <= 8, "permutation brute force is limited to 8 jobs");
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        if tardy_weight(inst, &order) <= inst.tardy_budget {
            let mut on_time = edd_on_time(inst, &order);
            on_time.sort_unstable();
            return Some(Solution::Schedule { order, on_time });
        }
        if !next_permutation(&mut order) {
            return None;
        }
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).expect("successor exists");
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let b = Budget::default();
        let one = |budget| SchedulingInstance::from_u64(&[(2, 5, 1)], budget);
        assert!(solve_scheduling(&one(5), &b).unwrap().is_yes());
        assert!(!solve_scheduling(&one(4), &b).unwrap().is_yes());
        let two = SchedulingInstance::from_u64(&[(1, 1, 1), (1, 1, 2)], 0);
        let v = solve_scheduling(&two, &b).unwrap();
        assert_eq!(
            v.solution,
            Some(Solution::Schedule {
                order: vec![0, 1],
                on_time: vec![0, 1]
            })
        );
    }

    #[test]
    fn dp_agrees_with_both_brute_forces() {
        let b = Budget::default();
        let mut seed = 7u64;
        let mut next = |m: u64| {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            1 + (seed >> 33) % m
        };
        for _ in 0..300 {
            let n = next(5) as usize;
            let jobs: Vec<(u64, u64, u64)> = (0..n).map(|_| (next(4), next(5), next(9))).collect();
            let inst = SchedulingInstance::from_u64(&jobs, next(8) - 1);
            let dp = solve_scheduling(&inst, &b).unwrap().is_yes();
            assert_eq!(dp, scheduling_bruteforce_subsets(&inst).is_some(), "{inst:?}");
            assert_eq!(dp, scheduling_bruteforce_permutations(&inst).is_some(), "{inst:?}");
        }
    }
}
