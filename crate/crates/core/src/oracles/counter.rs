use std::collections::HashSet;

use super::{resource, Budget, Method, Solution, Verdict};
use crate::error::{Error, Result};
use crate::instances::{CounterMachineInstance, Flag};

/// Counter states as bit masks; a vector is an increment mask and a
/// decrement mask.
#[derive(Clone, Copy)]
struct Step {
    inc: u128,
    dec: u128,
}

impl Step {
    fn from_vector(v: &[i8]) -> Self {
        let mut s = Step { inc: 0, dec: 0 };
        for (j, &x) in v.iter().enumerate() {
            match x {
                1 => s.inc |= 1 << j,
                -1 => s.dec |= 1 << j,
                _ => {}
            }
        }
        s
    }

    /// The state after applying the vector, if it stays in {0,1}^ℓ.
    fn apply(self, state: u128) -> Option<u128> {
        (state & self.inc == 0 && state & self.dec == self.dec).then_some((state | self.inc) & !self.dec)
    }
}

/// Sparse DP over (position, counter state) from the zero state. Only states
/// that are actually reachable are stored, so the work is bounded by the
/// number of reachable states rather than 2^ℓ.
pub fn solve_counter_machine(inst: &CounterMachineInstance, budget: &Budget) -> Result<Verdict> {
    if inst.dimension > 128 {
        return Err(Error::Unsupported(format!(
            "counter machine dimension {} above 128",
            inst.dimension
        )));
    }
    let steps: Vec<Step> = inst.vectors.iter().map(|v| Step::from_vector(v)).collect();
    // layers[i] holds (state, parent index in layers[i-1], applied)
    let mut layers: Vec<Vec<(u128, usize, bool)>> = vec![vec![(0, 0, false)]];
    let mut explored = 1u64;
    for (i, step) in steps.iter().enumerate() {
        let prev = layers.last().expect("nonempty");
        let mut index: HashSet<u128> = HashSet::with_capacity(prev.len() * 2);
        let mut next = Vec::new();
        for (pi, &(s, _, _)) in prev.iter().enumerate() {
            if inst.flags[i] == Flag::Optional && index.insert(s) {
                next.push((s, pi, false));
            }
            if let Some(t) = step.apply(s) {
                if index.insert(t) {
                    next.push((t, pi, true));
                }
            }
        }
        explored += next.len() as u64;
        if explored > budget.max_states {
            return Err(resource("counter machine instance"));
        }
        if next.is_empty() {
            return Ok(Verdict::no(Method::StateSearch, explored));
        }
        layers.push(next);
    }
    let last = layers.last().expect("nonempty");
    let Some(mut at) = last.iter().position(|&(s, _, _)| s == 0) else {
        return Ok(Verdict::no(Method::StateSearch, explored));
    };
    let mut chosen = Vec::new();
    for i in (0..steps.len()).rev() {
        let (_, pi, applied) = layers[i + 1][at];
        if applied {
            chosen.push(i);
        }
        at = pi;
    }
    chosen.reverse();
    Ok(Verdict::yes(Solution::Indices(chosen), Method::StateSearch, explored))
}

/// Whether the chosen indices contain every Required index and the chosen
/// vectors form a 0/1-run.
pub fn is_f_restricted_run(inst: &CounterMachineInstance, idx: &[usize]) -> bool {
    let all_required = inst
        .flags
        .iter()
        .enumerate()
        .all(|(i, f)| *f == Flag::Optional || idx.contains(&i));
    all_required && crate::pathwidth::is_run(idx.iter().map(|&i| inst.vectors[i].as_slice()), inst.dimension)
}

/// Tries every subset of the optional indices.
pub fn counter_machine_bruteforce(inst: &CounterMachineInstance) -> Option<Vec<usize>> {
    let optional: Vec<usize> = (0..inst.flags.len()).filter(|&i| inst.flags[i] == Flag::Optional).collect();
    for mask in 0u64..(1u64 << optional.len()) {
        let idx: Vec<usize> = (0..inst.flags.len())
            .filter(|&i| match optional.iter().position(|&o| o == i) {
                Some(p) => mask >> p & 1 == 1,
                None => true,
            })
            .collect();
        if is_f_restricted_run(inst, &idx) {
            return Some(idx);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm(vectors: Vec<Vec<i8>>, flags: &str) -> CounterMachineInstance {
        CounterMachineInstance {
            dimension: vectors.first().map_or(1, Vec::len),
            vectors,
            flags: flags
                .chars()
                .map(|c| if c == 'R' { Flag::Required } else { Flag::Optional })
                .collect(),
        }
    }

    #[test]
    fn examples() {
        let b = Budget::default();
        assert!(solve_counter_machine(&cm(vec![vec![1], vec![-1]], "RR"), &b).unwrap().is_yes());
        assert!(!solve_counter_machine(&cm(vec![vec![1], vec![1]], "RR"), &b).unwrap().is_yes());
        let v = solve_counter_machine(&cm(vec![vec![1], vec![-1]], "OO"), &b).unwrap();
        assert!(v.is_yes());
        assert_eq!(counter_machine_bruteforce(&cm(vec![vec![1], vec![-1]], "OO")), Some(vec![]));
    }
}
