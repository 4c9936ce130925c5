//! Reference values recomputed here by plain enumeration, independent of the
//! library oracles, then frozen as literals.

use certkit::certificates::zkk_s;
use certkit::families::{all_graphs, knapsack_grid, subset_sum_grid};
use certkit::groups::landau_function;
use certkit::{solve, Budget, ProblemInstance};
use num_traits::ToPrimitive;

fn u(x: &num_bigint::BigUint) -> u64 {
    x.to_u64().unwrap()
}

fn subsets_hit(items: &[u64], t: u64) -> bool {
    (0u32..1 << items.len()).any(|m| (0..items.len()).filter(|i| m >> i & 1 == 1).map(|i| items[i]).sum::<u64>() == t)
}

fn yes_count(family: &[ProblemInstance]) -> usize {
    family.iter().filter(|i| solve(i, &Budget::default()).unwrap().answer.is_yes()).count()
}

#[test]
fn subset_sum_grid_yes_count() {
    let grid = subset_sum_grid(4, 6, 20);
    let independent = grid
        .iter()
        .filter(|i| match i {
            ProblemInstance::SubsetSum(s) => subsets_hit(&s.items.iter().map(u).collect::<Vec<_>>(), u(&s.target)),
            _ => unreachable!(),
        })
        .count();
    println!("ss grid: {} instances, {independent} yes", grid.len());
    assert_eq!((grid.len(), independent), (FROZEN_SS.0, FROZEN_SS.1));
    assert_eq!(yes_count(&grid), independent);
}

#[test]
fn knapsack_grid_yes_count() {
    let grid = knapsack_grid(3, 4);
    let independent = grid
        .iter()
        .filter(|i| match i {
            ProblemInstance::Knapsack(k) => (0u32..1 << k.items.len()).any(|m| {
                let chosen = || k.items.iter().enumerate().filter(move |(i, _)| m >> i & 1 == 1).map(|(_, it)| it);
                chosen().map(|it| u(&it.size)).sum::<u64>() <= u(&k.capacity)
                    && chosen().map(|it| u(&it.weight)).sum::<u64>() >= u(&k.demand)
            }),
            _ => unreachable!(),
        })
        .count();
    println!("knapsack grid: {} instances, {independent} yes", grid.len());
    assert_eq!((grid.len(), independent), (FROZEN_KNAPSACK.0, FROZEN_KNAPSACK.1));
    assert_eq!(yes_count(&grid), independent);
}

fn three_colorable(n: usize, edges: &[(usize, usize)]) -> bool {
    (0..3u32.pow(n as u32)).any(|code| {
        let color = |v: usize| code / 3u32.pow(v as u32) % 3;
        edges.iter().all(|&(a, b)| color(a) != color(b))
    })
}

#[test]
fn three_colorable_labeled_graphs_on_five_vertices() {
    let graphs = all_graphs(5);
    let independent = graphs.iter().filter(|g| three_colorable(g.n, &g.edges)).count();
    println!("5-vertex graphs: {} total, {independent} 3-colorable", graphs.len());
    assert_eq!((graphs.len(), independent), FROZEN_COLORABLE);
    let family: Vec<ProblemInstance> = graphs.into_iter().map(Into::into).collect();
    assert_eq!(yes_count(&family), independent);
}

/// Largest lcm over all partitions of `n`.
fn landau_by_partitions(n: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    fn go(rest: u64, max_part: u64, acc: u64) -> u64 {
        let mut best = acc;
        for p in 1..=rest.min(max_part) {
            best = best.max(go(rest - p, p, acc / gcd(acc, p) * p));
        }
        best
    }
    go(n, n, 1)
}

#[test]
fn landau_values() {
    let independent: Vec<u64> = (1..=30).map(landau_by_partitions).collect();
    assert_eq!(independent[..20], FROZEN_LANDAU);
    let lib = landau_function(30);
    for n in 1..=30 {
        assert_eq!(lib[n] as u64, independent[n - 1], "g({n})");
    }
}

#[test]
fn zero_sum_length_constant() {
    let independent: Vec<u64> = (1u64..=4)
        .map(|k| if k == 1 { 1 } else { ((k * k) as f64 * (k as f64).log2()).ceil() as u64 })
        .collect();
    assert_eq!(independent, [1, 4, 15, 32]);
    for k in 1..=4u32 {
        assert_eq!(zkk_s(k) as u64, independent[k as usize - 1]);
    }
}

const FROZEN_SS: (usize, usize) = (6930, 2227);
const FROZEN_KNAPSACK: (usize, usize) = (24225, 15146);
// 1024 minus the 66 graphs containing a K4.
const FROZEN_COLORABLE: (usize, usize) = (1024, 958);
const FROZEN_LANDAU: [u64; 20] = [1, 2, 3, 4, 6, 6, 12, 15, 20, 30, 30, 60, 60, 84, 105, 140, 210, 210, 420, 420];
