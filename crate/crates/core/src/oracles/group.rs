use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigUint;

use super::{resource, solve_subset_sum, Budget, Method, Solution, Verdict};
use crate::error::Result;
use crate::groups::Permutation;
use crate::instances::{GroupSubsetSumInstance, SubsetSumInstance};

/// Ordered subsequence products: every product is formed left to right in
/// index order, so non-commutative groups are handled faithfully. The empty
/// subsequence yields the identity.
pub fn solve_group_ss(inst: &GroupSubsetSumInstance, budget: &Budget) -> Result<Verdict> {
    match inst {
        GroupSubsetSumInstance::Cyclic {
            modulus,
            elements,
            target,
        } => solve_subset_sum(
            &SubsetSumInstance {
                items: elements.clone(),
                target: target.clone(),
                modulus: Some(modulus.clone()),
            },
            budget,
        ),
        GroupSubsetSumInstance::ProductZkk { k, elements, target } => {
            let op = |a: &Vec<u32>, b: &Vec<u32>| a.iter().zip(b).map(|(x, y)| (x + y) % k).collect::<Vec<u32>>();
            let identity = vec![0u32; *k as usize];
            generic(&identity, elements, target, op, budget)
        }
        GroupSubsetSumInstance::Symmetric {
            degree,
            elements,
            target,
        } => {
            let op = |a: &Permutation, b: &Permutation| a.compose_unchecked(b);
            generic(&Permutation::identity(*degree), elements, target, op, budget)
        }
    }
}

fn generic<T: Clone + Eq + Hash>(
    identity: &T,
    elements: &[T],
    target: &T,
    op: impl Fn(&T, &T) -> T,
    budget: &Budget,
) -> Result<Verdict> {
    if let Some((found, states)) = reachable_products(identity, elements, target, &op, budget.max_states) {
        return Ok(Verdict::from_option(found.map(Solution::Indices), Method::StateSearch, states));
    }
    if elements.len() <= budget.max_bruteforce_n {
        let found = bruteforce(identity, elements, target, &op);
        return Ok(Verdict::from_option(
            found.map(Solution::Indices),
            Method::BruteForce,
            1 << elements.len(),
        ));
    }
    Err(resource("group subset sum instance"))
}

/// Breadth of reachable products after each prefix, with a first-reach map
/// for reconstruction. `None` if the state budget runs out.
fn reachable_products<T: Clone + Eq + Hash>(
    identity: &T,
    elements: &[T],
    target: &T,
    op: &impl Fn(&T, &T) -> T,
    max_states: u64,
) -> Option<(Option<Vec<usize>>, u64)> {
    // element -> (index of the last factor, product before it)
    let mut reached: HashMap<T, Option<(usize, T)>> = HashMap::new();
    reached.insert(identity.clone(), None);
    let mut order: Vec<T> = vec![identity.clone()];
    if identity != target {
        for (i, g) in elements.iter().enumerate() {
            let current = order.len();
            for s in 0..current {
                let p = op(&order[s], g);
                if !reached.contains_key(&p) {
                    reached.insert(p.clone(), Some((i, order[s].clone())));
                    order.push(p);
                }
            }
            if order.len() as u64 > max_states {
                return None;
            }
            if reached.contains_key(target) {
                break;
            }
        }
    }
    let states = order.len() as u64;
    if !reached.contains_key(target) {
        return Some((None, states));
    }
    let mut chosen = Vec::new();
    let mut at = target.clone();
    while let Some(Some((i, prev))) = reached.get(&at) {
        chosen.push(*i);
        at = prev.clone();
    }
    chosen.reverse();
    Some((Some(chosen), states))
}

fn bruteforce<T: Clone + Eq>(identity: &T, elements: &[T], target: &T, op: &impl Fn(&T, &T) -> T) -> Option<Vec<usize>> {
    let n = elements.len();
    for mask in 0u64..(1u64 << n) {
        let mut acc = identity.clone();
        for (i, g) in elements.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc = op(&acc, g);
            }
        }
        if &acc == target {
            return Some((0..n).filter(|&i| mask >> i & 1 == 1).collect());
        }
    }
    None
}

/// Exhaustive search over all subsequences, independent of the layered search.
pub fn group_subset_sum_bruteforce(inst: &GroupSubsetSumInstance) -> Option<Vec<usize>> {
    match inst {
        GroupSubsetSumInstance::Cyclic {
            modulus,
            elements,
            target,
        } => bruteforce(
            &BigUint::from(0u32),
            elements,
            target,
            &|a: &BigUint, b: &BigUint| (a + b) % modulus,
        ),
        GroupSubsetSumInstance::ProductZkk { k, elements, target } => bruteforce(
            &vec![0u32; *k as usize],
            elements,
            target,
            &|a: &Vec<u32>, b: &Vec<u32>| a.iter().zip(b).map(|(x, y)| (x + y) % k).collect(),
        ),
        GroupSubsetSumInstance::Symmetric {
            degree,
            elements,
            target,
        } => bruteforce(
            &Permutation::identity(*degree),
            elements,
            target,
            &|a: &Permutation, b: &Permutation| a.compose_unchecked(b),
        ),
    }
}

/// Product of the chosen elements in index order, rendered for comparison.
pub fn group_product(inst: &GroupSubsetSumInstance, idx: &[usize]) -> serde_json::Value {
    match inst {
        GroupSubsetSumInstance::Cyclic { modulus, elements, .. } => {
            let s: BigUint = idx.iter().map(|&i| &elements[i]).sum::<BigUint>() % modulus;
            serde_json::Value::String(s.to_string())
        }
        GroupSubsetSumInstance::ProductZkk { k, elements, .. } => {
            let mut acc = vec![0u32; *k as usize];
            for &i in idx {
                for (a, x) in acc.iter_mut().zip(&elements[i]) {
                    *a = (*a + x) % k;
                }
            }
            serde_json::to_value(acc).expect("vector serializes")
        }
        GroupSubsetSumInstance::Symmetric { degree, elements, .. } => {
            let acc = idx
                .iter()
                .fold(Permutation::identity(*degree), |acc, &i| acc.compose_unchecked(&elements[i]));
            serde_json::to_value(acc).expect("permutation serializes")
        }
    }
}

pub(crate) fn product_matches_target(inst: &GroupSubsetSumInstance, idx: &[usize]) -> bool {
    let target = match inst {
        GroupSubsetSumInstance::Cyclic { target, .. } => serde_json::Value::String(target.to_string()),
        GroupSubsetSumInstance::ProductZkk { target, .. } => serde_json::to_value(target).expect("serializes"),
        GroupSubsetSumInstance::Symmetric { target, .. } => serde_json::to_value(target).expect("serializes"),
    };
    group_product(inst, idx) == target
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        let b = Budget::default();
        let z10 = GroupSubsetSumInstance::Cyclic {
            modulus: 10u32.into(),
            elements: vec![3u32.into(), 5u32.into()],
            target: 8u32.into(),
        };
        assert!(solve_group_ss(&z10, &b).unwrap().is_yes());
        let s3 = GroupSubsetSumInstance::Symmetric {
            degree: 3,
            elements: vec![perm(&[1, 0, 2])],
            target: Permutation::identity(3),
        };
        assert_eq!(solve_group_ss(&s3, &b).unwrap().solution, Some(Solution::Indices(vec![])));
    }

    #[test]
    fn order_of_factors_matters() {
        let b = Budget::default();
        let a = perm(&[1, 0, 2]);
        let c = perm(&[0, 2, 1]);
        let ac = a.compose(&c).unwrap();
        let ca = c.compose(&a).unwrap();
        assert_ne!(ac, ca);
        let inst = GroupSubsetSumInstance::Symmetric {
            degree: 3,
            elements: vec![a.clone(), c.clone()],
            target: ac,
        };
        assert_eq!(solve_group_ss(&inst, &b).unwrap().solution, Some(Solution::Indices(vec![0, 1])));
        let reversed = GroupSubsetSumInstance::Symmetric {
            degree: 3,
            elements: vec![a, c],
            target: ca,
        };
        assert!(!solve_group_ss(&reversed, &b).unwrap().is_yes());
    }
}
