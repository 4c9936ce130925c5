use std::collections::HashMap;

use super::{gray_code, resource, Budget, Method, Solution, Verdict};
use crate::error::Result;
use crate::instances::{IlpInstance, IlpVariant};

/// Standard and monotone systems go through a reachable-partial-sum search;
/// 0-sum systems are decided by the `n` standard systems `A^{-i} y = -A^i`.
pub fn solve_ilp(inst: &IlpInstance, budget: &Budget) -> Result<Verdict> {
    match inst.variant {
        IlpVariant::Standard | IlpVariant::Monotone => solve_ilp_standard(&inst.columns, &inst.rhs, budget),
        IlpVariant::ZeroSum => solve_zero_sum(inst, budget),
    }
}

fn solve_zero_sum(inst: &IlpInstance, budget: &Budget) -> Result<Verdict> {
    let mut states = 0;
    for i in 0..inst.columns.len() {
        let (rest, rhs) = drop_column(&inst.columns, i);
        let v = solve_ilp_standard(&rest, &rhs, budget)?;
        states += v.telemetry.states;
        if let Some(Solution::Vector(y)) = v.solution {
            let mut x = y;
            x.insert(i, 1);
            return Ok(Verdict::yes(Solution::Vector(x), v.telemetry.method, states));
        }
    }
    Ok(Verdict::no(Method::StateSearch, states))
}

/// `(A^{-i}, -A^i)`.
pub(crate) fn drop_column(columns: &[Vec<i8>], i: usize) -> (Vec<Vec<i8>>, Vec<i64>) {
    let mut rest = columns.to_vec();
    let col = rest.remove(i);
    (rest, col.iter().map(|&a| -i64::from(a)).collect())
}

/// Decides `Ax = b`, `x in {0,1}^n`, by a layered search over partial sums,
/// pruning every state from which `b` is out of reach of the remaining columns.
pub fn solve_ilp_standard(columns: &[Vec<i8>], rhs: &[i64], budget: &Budget) -> Result<Verdict> {
    match search(columns, rhs, budget.max_states) {
        Some((found, states)) => Ok(Verdict::from_option(found.map(Solution::Vector), Method::StateSearch, states)),
        None if columns.len() <= budget.max_bruteforce_n => {
            let found = ilp_bruteforce(columns, rhs, false);
            Ok(Verdict::from_option(
                found.map(Solution::Vector),
                Method::BruteForce,
                1 << columns.len(),
            ))
        }
        None => Err(resource("ILP instance")),
    }
}

type Layer = (Vec<Vec<i64>>, Vec<(usize, bool)>);

fn search(columns: &[Vec<i8>], rhs: &[i64], max_states: u64) -> Option<(Option<Vec<u8>>, u64)> {
    let n = columns.len();
    let m = rhs.len();
    // suffix[i][j] = (sum of -1 entries, sum of +1 entries) of row j over columns i..n
    let mut suffix = vec![vec![(0i64, 0i64); m]; n + 1];
    for i in (0..n).rev() {
        for j in 0..m {
            let (lo, hi) = suffix[i + 1][j];
            let a = i64::from(columns[i][j]);
            suffix[i][j] = (lo + a.min(0), hi + a.max(0));
        }
    }
    let feasible = |s: &[i64], i: usize| {
        (0..m).all(|j| {
            let need = rhs[j] - s[j];
            suffix[i][j].0 <= need && need <= suffix[i][j].1
        })
    };
    let start = vec![0i64; m];
    if !feasible(&start, 0) {
        return Some((None, 1));
    }
    let mut layers: Vec<Layer> = vec![(vec![start], vec![(0, false)])];
    let mut states = 1u64;
    for i in 0..n {
        let (prev_states, _) = layers.last().expect("nonempty");
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut next: Layer = (Vec::new(), Vec::new());
        for (pi, s) in prev_states.iter().enumerate() {
            for take in [false, true] {
                let t: Vec<i64> = if take {
                    s.iter().zip(&columns[i]).map(|(x, &a)| x + i64::from(a)).collect()
                } else {
                    s.clone()
                };
                if !feasible(&t, i + 1) || index.contains_key(&t) {
                    continue;
                }
                index.insert(t.clone(), next.0.len());
                next.0.push(t);
                next.1.push((pi, take));
            }
        }
        states += next.0.len() as u64;
        if states > max_states {
            return None;
        }
        if next.0.is_empty() {
            return Some((None, states));
        }
        layers.push(next);
    }
    // Only states equal to rhs survive the final pruning.
    let mut x = vec![0u8; n];
    let mut at = 0;
    for i in (0..n).rev() {
        let (pi, take) = layers[i + 1].1[at];
        x[i] = u8::from(take);
        at = pi;
    }
    Some((Some(x), states))
}

/// Enumerates all x in {0,1}^n; with `nonzero`, skips x = 0.
pub fn ilp_bruteforce(columns: &[Vec<i8>], rhs: &[i64], nonzero: bool) -> Option<Vec<u8>> {
    let n = columns.len();
    let mut sum = vec![0i64; rhs.len()];
    let mut x = vec![0u8; n];
    let mut found = None;
    gray_code(n, |flip| {
        if let Some((i, entered)) = flip {
            x[i] = u8::from(entered);
            let sign = if entered { 1 } else { -1 };
            for (s, &a) in sum.iter_mut().zip(&columns[i]) {
                *s += sign * i64::from(a);
            }
        }
        let hit = sum == rhs && !(nonzero && x.iter().all(|&b| b == 0));
        if hit {
            found = Some(x.clone());
        }
        !hit
    });
    found
}

pub(crate) fn check(inst: &IlpInstance, x: &[u8]) -> bool {
    if x.len() != inst.columns.len() || x.iter().any(|&b| b > 1) {
        return false;
    }
    if inst.variant == IlpVariant::ZeroSum && x.iter().all(|&b| b == 0) {
        return false;
    }
    (0..inst.rows()).all(|j| {
        let s: i64 = inst.columns.iter().zip(x).map(|(c, &b)| i64::from(c[j]) * i64::from(b)).sum();
        s == inst.rhs[j]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(variant: IlpVariant, columns: Vec<Vec<i8>>, rhs: Vec<i64>) -> IlpInstance {
        IlpInstance { variant, columns, rhs }
    }

    #[test]
    fn examples() {
        let b = Budget::default();
        let v = solve_ilp(&inst(IlpVariant::Monotone, vec![vec![1, 0], vec![1, 1]], vec![1, 1]), &b).unwrap();
        assert_eq!(v.solution, Some(Solution::Vector(vec![0, 1])));
        let v = solve_ilp(&inst(IlpVariant::ZeroSum, vec![vec![1, -1]], vec![0, 0]), &b).unwrap();
        assert!(!v.is_yes());
        let v = solve_ilp(&inst(IlpVariant::ZeroSum, vec![vec![1], vec![-1]], vec![0]), &b).unwrap();
        assert_eq!(v.solution, Some(Solution::Vector(vec![1, 1])));
    }

    #[test]
    fn empty_system() {
        let b = Budget::default();
        assert!(solve_ilp(&inst(IlpVariant::Standard, vec![], vec![0]), &b).unwrap().is_yes());
        assert!(!solve_ilp(&inst(IlpVariant::Standard, vec![], vec![1]), &b).unwrap().is_yes());
    }
}
