//! Exact decision procedures for every problem kind.
//!
//! Each solver tries a pseudo-polynomial or state-space DP first, falls back
//! to brute force when the DP table would exceed the [`Budget`], and reports
//! [`Error::Resource`] when neither fits.

mod bitset;
mod coloring;
mod counter;
mod group;
mod ilp;
mod knapsack;
mod sat;
mod scheduling;
mod subset_sum;
mod unbounded;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instances::{Answer, ProblemInstance};

pub use coloring::{coloring_bruteforce, solve_coloring, solve_coloring_by_decomposition};
pub use counter::{counter_machine_bruteforce, is_f_restricted_run, solve_counter_machine};
pub use group::{group_product, group_subset_sum_bruteforce, solve_group_ss};
pub use ilp::{ilp_bruteforce, solve_ilp, solve_ilp_standard};
pub(crate) use ilp::drop_column;
pub use knapsack::{knapsack_bruteforce, solve_knapsack};
pub use sat::{cnf_satisfied_by, solve_and_sat, solve_cnf};
pub use scheduling::{
    scheduling_bruteforce_permutations, scheduling_bruteforce_subsets, solve_scheduling, tardy_weight,
};
pub use subset_sum::{solve_subset_sum, subset_sum_bruteforce};
pub use unbounded::{solve_unbounded_ss, unbounded_bruteforce};

/// Explicit resource limits shared by all solvers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Cells of a pseudo-polynomial table (bits for reachability tables).
    pub max_dp_cells: u64,
    /// Explored states of a sparse state-space search.
    pub max_states: u64,
    /// Largest `n` for 2^n subset or assignment enumeration.
    pub max_bruteforce_n: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_dp_cells: 1 << 28,
            max_states: 1 << 22,
            max_bruteforce_n: 25,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Trivial,
    Dp,
    StateSearch,
    Backtracking,
    BruteForce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Telemetry {
    pub method: Method,
    /// Table cells, explored states or enumerated candidates.
    pub states: u64,
}

/// A certificate of a yes-answer in the shape natural to each kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum Solution {
    /// Increasing 0-based indices of chosen items, vectors or elements.
    Indices(Vec<usize>),
    /// A 0/1 vector `x`.
    Vector(Vec<u8>),
    /// Full processing order and the jobs that finish on time.
    Schedule { order: Vec<usize>, on_time: Vec<usize> },
    /// One of three colors per vertex.
    Coloring(Vec<u8>),
    /// Truth value per variable `1..=k`.
    Assignment(Vec<bool>),
    /// One assignment per formula.
    Assignments(Vec<Vec<bool>>),
    /// Multiplicity per item.
    Multiplicities(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub answer: Answer,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<Solution>,
    pub telemetry: Telemetry,
}

impl Verdict {
    pub fn yes(solution: Solution, method: Method, states: u64) -> Self {
        Self {
            answer: Answer::Yes,
            solution: Some(solution),
            telemetry: Telemetry { method, states },
        }
    }

    pub fn no(method: Method, states: u64) -> Self {
        Self {
            answer: Answer::No,
            solution: None,
            telemetry: Telemetry { method, states },
        }
    }

    pub(crate) fn from_option(found: Option<Solution>, method: Method, states: u64) -> Self {
        match found {
            Some(s) => Self::yes(s, method, states),
            None => Self::no(method, states),
        }
    }

    pub fn is_yes(&self) -> bool {
        self.answer.is_yes()
    }
}

/// Solves any instance with the oracle for its kind.
pub fn solve(instance: &ProblemInstance, budget: &Budget) -> Result<Verdict> {
    let problems = crate::instances::validate(instance);
    if !problems.is_empty() {
        return Err(Error::Invalid(problems));
    }
    match instance {
        ProblemInstance::SubsetSum(s) => solve_subset_sum(s, budget),
        ProblemInstance::Knapsack(k) => solve_knapsack(k, budget),
        ProblemInstance::Ilp(i) => solve_ilp(i, budget),
        ProblemInstance::GroupSubsetSum(g) => solve_group_ss(g, budget),
        ProblemInstance::CounterMachine(c) => solve_counter_machine(c, budget),
        ProblemInstance::Coloring(c) => solve_coloring(c, budget),
        ProblemInstance::Scheduling(s) => solve_scheduling(s, budget),
        ProblemInstance::Cnf(c) => solve_cnf(c, budget),
        ProblemInstance::AndSat(a) => solve_and_sat(a, budget),
        ProblemInstance::UnboundedSubsetSum(u) => solve_unbounded_ss(u, budget),
    }
}

/// Standalone re-check of a claimed solution: re-sums, re-multiplies,
/// re-schedules or re-colors without consulting any solver.
pub fn check_solution(instance: &ProblemInstance, solution: &Solution) -> bool {
    match (instance, solution) {
        (ProblemInstance::SubsetSum(s), Solution::Indices(idx)) => {
            let Some(sum) = indexed_sum(&s.items, idx) else {
                return false;
            };
            match &s.modulus {
                Some(q) => sum % q == s.target,
                None => sum == s.target,
            }
        }
        (ProblemInstance::Knapsack(k), Solution::Indices(idx)) => {
            if !strictly_increasing(idx, k.items.len()) {
                return false;
            }
            let size: BigUint = idx.iter().map(|&i| &k.items[i].size).sum();
            let weight: BigUint = idx.iter().map(|&i| &k.items[i].weight).sum();
            size <= k.capacity && weight >= k.demand
        }
        (ProblemInstance::Ilp(i), Solution::Vector(x)) => ilp::check(i, x),
        (ProblemInstance::GroupSubsetSum(g), Solution::Indices(idx)) => {
            strictly_increasing(idx, g.len()) && group::product_matches_target(g, idx)
        }
        (ProblemInstance::CounterMachine(c), Solution::Indices(idx)) => {
            strictly_increasing(idx, c.vectors.len()) && is_f_restricted_run(c, idx)
        }
        (ProblemInstance::Coloring(c), Solution::Coloring(colors)) => {
            colors.len() == c.n
                && colors.iter().all(|&x| x < 3)
                && c.edges.iter().all(|&(u, v)| colors[u] != colors[v])
        }
        (ProblemInstance::Scheduling(s), Solution::Schedule { order, .. }) => {
            let mut seen = vec![false; s.jobs.len()];
            if order.len() != s.jobs.len()
                || order.iter().any(|&j| j >= seen.len() || std::mem::replace(&mut seen[j], true))
            {
                return false;
            }
            tardy_weight(s, order) <= s.tardy_budget
        }
        (ProblemInstance::Cnf(c), Solution::Assignment(a)) => cnf_satisfied_by(c, a),
        (ProblemInstance::AndSat(a), Solution::Assignments(all)) => {
            all.len() == a.formulas.len() && a.formulas.iter().zip(all).all(|(f, x)| cnf_satisfied_by(f, x))
        }
        (ProblemInstance::UnboundedSubsetSum(u), Solution::Multiplicities(m)) => {
            m.len() == u.items.len() && u.items.iter().zip(m).map(|(p, &k)| p * k).sum::<BigUint>() == u.target
        }
        _ => false,
    }
}

pub(crate) fn strictly_increasing(idx: &[usize], len: usize) -> bool {
    idx.windows(2).all(|w| w[0] < w[1]) && idx.last().is_none_or(|&i| i < len)
}

fn indexed_sum(items: &[BigUint], idx: &[usize]) -> Option<BigUint> {
    if !strictly_increasing(idx, items.len()) {
        return None;
    }
    Some(idx.iter().fold(BigUint::zero(), |acc, &i| acc + &items[i]))
}

/// `x` as a `usize` if it is at most `limit`.
pub(crate) fn small(x: &BigUint, limit: u64) -> Option<usize> {
    u64::try_from(x).ok().filter(|&v| v <= limit).map(|v| v as usize)
}

pub(crate) fn resource(what: &str) -> Error {
    Error::Resource(format!("{what} exceeds both the DP and brute-force budgets"))
}

/// Iterates over all subsets of `0..n` in Gray-code order, reporting the
/// element that flipped and whether it entered. The empty set is reported
/// first with `None`.
pub(crate) fn gray_code(n: usize, mut visit: impl FnMut(Option<(usize, bool)>) -> bool) {
    if !visit(None) {
        return;
    }
    let mut mask: u64 = 0;
    for step in 1u64..(1u64 << n) {
        let bit = step.trailing_zeros() as usize;
        mask ^= 1 << bit;
        if !visit(Some((bit, mask >> bit & 1 == 1))) {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gray_code_visits_every_subset_once() {
        let mut mask = 0u64;
        let mut seen = std::collections::BTreeSet::new();
        gray_code(4, |flip| {
            if let Some((i, entered)) = flip {
                mask ^= 1 << i;
                assert_eq!(mask >> i & 1 == 1, entered);
            }
            seen.insert(mask);
            true
        });
        assert_eq!(seen.len(), 16);
    }
}
