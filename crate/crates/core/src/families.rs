//! Exhaustive grids and seeded random families of small instances.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::instances::{
    AndSatInstance, CnfInstance, ColoringInstance, CounterMachineInstance, Flag, IlpInstance, IlpVariant,
    KnapsackInstance, ProblemInstance, SubsetSumInstance, UnboundedSubsetSumInstance,
};

/// Nondecreasing sequences of length at most `max_len` over `values`.
pub fn multisets<T: Clone>(values: &[T], max_len: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(Vec<T>, usize)> = vec![(Vec::new(), 0)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (seq, from) in &frontier {
            for (i, v) in values.iter().enumerate().skip(*from) {
                let mut s = seq.clone();
                s.push(v.clone());
                out.push(s.clone());
                next.push((s, i));
            }
        }
        frontier = next;
    }
    out
}

/// All sequences of length at most `max_len` over `values`, order kept.
pub fn sequences<T: Clone>(values: &[T], max_len: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s: &Vec<T>| {
                values.iter().map(move |v| {
                    let mut s = s.clone();
                    s.push(v.clone());
                    s
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Item multisets from `[0, max_item]` with every target in `[0, max_target]`.
pub fn subset_sum_grid(max_n: usize, max_item: u64, max_target: u64) -> Vec<ProblemInstance> {
    let values: Vec<u64> = (0..=max_item).collect();
    let sets = multisets(&values, max_n);
    (0..=max_target)
        .flat_map(|t| sets.iter().map(move |s| SubsetSumInstance::from_u64(s, t).into()))
        .collect()
}

/// Every modulus `q` in `[1, max_q]`, item multisets below `q`, every target.
pub fn modular_grid(max_n: usize, max_q: u64) -> Vec<ProblemInstance> {
    let mut out = Vec::new();
    for q in 1..=max_q {
        let values: Vec<u64> = (0..q).collect();
        for s in multisets(&values, max_n) {
            for t in 0..q {
                out.push(SubsetSumInstance::modular_from_u64(&s, t, q).into());
            }
        }
    }
    out
}

/// Items with size and weight in `[1, max_value]`; capacity and demand in
/// `[0, max_value]`.
pub fn knapsack_grid(max_n: usize, max_value: u64) -> Vec<ProblemInstance> {
    let pairs: Vec<(u64, u64)> = (1..=max_value)
        .flat_map(|p| (1..=max_value).map(move |w| (p, w)))
        .collect();
    let sets = multisets(&pairs, max_n);
    let mut out = Vec::new();
    for c in 0..=max_value {
        for d in 0..=max_value {
            out.extend(sets.iter().map(|s| KnapsackInstance::from_u64(s, c, d).into()));
        }
    }
    out
}

fn vectors(m: usize, entries: &[i8]) -> Vec<Vec<i8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .iter()
            .flat_map(|v| {
                entries.iter().map(move |&x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Column multisets of the variant's alphabet with `1 <= m <= max_m` rows.
/// Right-hand sides range over `[-1, n + 1]` (monotone) or `[-n - 1, n + 1]`
/// (standard), one step past what `n` columns can reach; zero-sum instances
/// have `b = 0`.
pub fn ilp_grid(variant: IlpVariant, max_m: usize, max_n: usize) -> Vec<ProblemInstance> {
    let entries: &[i8] = match variant {
        IlpVariant::Monotone => &[0, 1],
        IlpVariant::Standard | IlpVariant::ZeroSum => &[-1, 0, 1],
    };
    let mut out = Vec::new();
    for m in 1..=max_m {
        for columns in multisets(&vectors(m, entries), max_n) {
            let n = columns.len() as i64;
            let range: Vec<i64> = match variant {
                IlpVariant::Monotone => (-1..=n + 1).collect(),
                IlpVariant::Standard => (-n - 1..=n + 1).collect(),
                IlpVariant::ZeroSum => vec![0],
            };
            for rhs in rhs_vectors(m, &range) {
                out.push(
                    IlpInstance {
                        variant,
                        columns: columns.clone(),
                        rhs,
                    }
                    .into(),
                );
            }
        }
    }
    out
}

fn rhs_vectors(m: usize, range: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .iter()
            .flat_map(|v| {
                range.iter().map(move |&x| {
                    let mut v: Vec<i64> = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn random_subset_sum(rng: &mut impl Rng, max_n: usize, max_value: u64) -> SubsetSumInstance {
    let n = rng.gen_range(0..=max_n);
    let items: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=max_value)).collect();
    // Half of the targets are sums of a random subset, so yes-instances are common.
    let t = if rng.gen_bool(0.5) {
        items.iter().filter(|_| rng.gen_bool(0.5)).sum::<u64>()
    } else {
        rng.gen_range(0..=max_value * n.max(1) as u64)
    };
    SubsetSumInstance::from_u64(&items, t)
}

pub fn random_unbounded(rng: &mut impl Rng, max_n: usize, max_target: u64) -> UnboundedSubsetSumInstance {
    let n = rng.gen_range(0..=max_n);
    let items: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=max_target.max(1))).collect();
    UnboundedSubsetSumInstance::from_u64(&items, rng.gen_range(0..=max_target))
}

/// Vertex-separation bags of the identity order: bag `i` holds `i` and every
/// earlier vertex with a neighbor at or after `i`.
pub fn canonical_path_decomposition(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut last = (0..n).collect::<Vec<_>>();
    for &(u, v) in edges {
        let (a, b) = (u.min(v), u.max(v));
        last[a] = last[a].max(b);
    }
    (0..n).map(|i| (0..=i).filter(|&u| last[u] >= i).collect()).collect()
}

pub fn graph(n: usize, edges: Vec<(usize, usize)>) -> ColoringInstance {
    let bags = canonical_path_decomposition(n, &edges);
    ColoringInstance { n, edges, bags }
}

/// Every labeled graph on `n` vertices.
pub fn all_graphs(n: usize) -> Vec<ColoringInstance> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            graph(n, edges)
        })
        .collect()
}

/// `k4`, `c5`, `p4`, `k<n>`, `c<n>` or `p<n>`.
pub fn named_graph(name: &str) -> Option<ColoringInstance> {
    let (shape, n) = name.split_at(1);
    let n: usize = n.parse().ok()?;
    let edges: Vec<(usize, usize)> = match shape {
        "k" => (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
        "p" => (1..n).map(|i| (i - 1, i)).collect(),
        "c" if n >= 3 => (1..n).map(|i| (i - 1, i)).chain([(0, n - 1)]).collect(),
        _ => return None,
    };
    if shape == "k" {
        // A single bag, the natural decomposition of a clique.
        return Some(ColoringInstance {
            n,
            edges,
            bags: vec![(0..n).collect()],
        });
    }
    Some(graph(n, edges))
}

/// Counter machines of dimension `dimension` with every vector sequence of
/// length at most `max_n` over `{-1,0,1}^dimension × {O,R}`.
pub fn counter_machines(dimension: usize, max_n: usize) -> Vec<CounterMachineInstance> {
    let kinds: Vec<(Vec<i8>, Flag)> = vectors(dimension, &[-1, 0, 1])
        .into_iter()
        .flat_map(|v| [(v.clone(), Flag::Optional), (v, Flag::Required)])
        .collect();
    sequences(&kinds, max_n)
        .into_iter()
        .map(|seq| CounterMachineInstance {
            dimension,
            vectors: seq.iter().map(|(v, _)| v.clone()).collect(),
            flags: seq.iter().map(|(_, f)| *f).collect(),
        })
        .collect()
}

pub fn random_counter_machine(rng: &mut impl Rng, dimension: usize, n: usize) -> CounterMachineInstance {
    let vectors = (0..n)
        .map(|_| (0..dimension).map(|_| rng.gen_range(-1i8..=1)).collect())
        .collect();
    let flags = (0..n)
        .map(|_| if rng.gen_bool(0.5) { Flag::Required } else { Flag::Optional })
        .collect();
    CounterMachineInstance {
        dimension,
        vectors,
        flags,
    }
}

/// Clauses of distinct literals over `k` variables with arity in `1..=max_arity`,
/// literals sorted by variable then sign.
pub fn clauses(k: usize, max_arity: usize) -> Vec<Vec<i32>> {
    let lits: Vec<i32> = (1..=k as i32).flat_map(|i| [i, -i]).collect();
    (1u32..1 << lits.len())
        .filter(|m| m.count_ones() as usize <= max_arity)
        .map(|m| (0..lits.len()).filter(|&i| m >> i & 1 == 1).map(|i| lits[i]).collect())
        .collect()
}

/// Every formula with at most `max_clauses` clauses from [`clauses`].
pub fn cnfs(k: usize, max_clauses: usize, max_arity: usize) -> Vec<CnfInstance> {
    sequences(&clauses(k, max_arity), max_clauses)
        .into_iter()
        .map(|cs| CnfInstance {
            num_vars: k,
            clauses: cs,
            arity_cap: (max_arity <= 3).then_some(3),
        })
        .collect()
}

pub fn random_3cnf(rng: &mut impl Rng, k: usize, max_clauses: usize) -> CnfInstance {
    let c = rng.gen_range(1..=max_clauses);
    let vars: Vec<i32> = (1..=k as i32).collect();
    let clauses = (0..c)
        .map(|_| {
            vars.choose_multiple(rng, 3.min(k))
                .map(|&v| if rng.gen_bool(0.5) { v } else { -v })
                .collect()
        })
        .collect();
    CnfInstance::three_cnf(k, clauses)
}

/// Every AND instance of at most `max_formulas` formulas from [`cnfs`].
pub fn and_sat_grid(k: usize, max_formulas: usize, max_clauses: usize) -> Vec<ProblemInstance> {
    sequences(&cnfs(k, max_clauses, 3), max_formulas)
        .into_iter()
        .map(|formulas| AndSatInstance { num_vars: k, formulas }.into())
        .collect()
}
