use num_traits::Zero;

use super::{resource, small, Budget, Method, Solution, Verdict};
use crate::error::Result;
use crate::instances::UnboundedSubsetSumInstance;

/// Coin-change table over `[0, t]` remembering the last item used.
pub fn solve_unbounded_ss(inst: &UnboundedSubsetSumInstance, budget: &Budget) -> Result<Verdict> {
    let n = inst.items.len();
    if inst.target.is_zero() {
        return Ok(Verdict::yes(Solution::Multiplicities(vec![0; n]), Method::Trivial, 0));
    }
    let Some(t) = small(&inst.target, budget.max_dp_cells) else {
        return Err(resource("unbounded subset sum instance"));
    };
    let sizes: Vec<Option<usize>> = inst.items.iter().map(|p| small(p, t as u64).filter(|&p| p > 0)).collect();
    let mut last: Vec<Option<usize>> = vec![None; t + 1];
    let mut reach = vec![false; t + 1];
    reach[0] = true;
    for c in 1..=t {
        for (i, p) in sizes.iter().enumerate() {
            if let Some(p) = *p {
                if p <= c && reach[c - p] {
                    reach[c] = true;
                    last[c] = Some(i);
                    break;
                }
            }
        }
    }
    let states = ((t + 1) * n) as u64;
    if !reach[t] {
        return Ok(Verdict::no(Method::Dp, states));
    }
    let mut mult = vec![0u64; n];
    let mut c = t;
    while c > 0 {
        let i = last[c].expect("reachable");
        mult[i] += 1;
        c -= sizes[i].expect("used item fits");
    }
    Ok(Verdict::yes(
        Solution::Multiplicities(mult),
        Method::Dp,
        states,
    ))
}

/// Every multiplicity vector with `Σ m_i p_i ≤ t`.
pub fn unbounded_bruteforce(items: &[u64], target: u64) -> Option<Vec<u64>> {
    fn go(items: &[u64], rest: u64, mult: &mut Vec<u64>) -> bool {
        let Some((&p, tail)) = items.split_first() else {
            return rest == 0;
        };
        let most = if p == 0 { 0 } else { rest / p };
        for m in 0..=most {
            mult.push(m);
            if go(tail, rest - m * p, mult) {
                return true;
            }
            mult.pop();
        }
        false
    }
    let mut mult = Vec::new();
    go(items, target, &mut mult).then_some(mult)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let b = Budget::default();
        let v = solve_unbounded_ss(&UnboundedSubsetSumInstance::from_u64(&[4, 5], 23), &b).unwrap();
        assert!(v.is_yes());
        assert!(!solve_unbounded_ss(&UnboundedSubsetSumInstance::from_u64(&[2], 7), &b).unwrap().is_yes());
        assert!(solve_unbounded_ss(&UnboundedSubsetSumInstance::from_u64(&[9], 0), &b).unwrap().is_yes());
        for t in 0..40 {
            let dp = solve_unbounded_ss(&UnboundedSubsetSumInstance::from_u64(&[6, 10, 15], t), &b).unwrap();
            assert_eq!(dp.is_yes(), unbounded_bruteforce(&[6, 10, 15], t).is_some());
        }
    }
}
