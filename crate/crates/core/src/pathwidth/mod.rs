//! 3-Coloring to 0-1 Counter Machine, and Counter Machine to permutation
//! group Subset Sum.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::bits::{bit_length_u64, FieldLayout, Witness};
use crate::error::{Error, Result};
use crate::groups::{GammaHatContext, LandauMethod, Permutation};
use crate::instances::{
    greedy_labels, make_nice, trivial_instance, Answer, Command, CounterMachineInstance, Flag,
    GroupSubsetSumInstance, ProblemInstance, ProblemKind,
};
use crate::oracles::Solution;
use crate::reduction::{source, Construction};

/// Every prefix sum lies in `{0,1}^ℓ` and the total is zero.
pub fn is_run<'a>(vectors: impl IntoIterator<Item = &'a [i8]>, dimension: usize) -> bool {
    let mut sum = vec![0i64; dimension];
    for v in vectors {
        if v.len() != dimension {
            return false;
        }
        for (s, &x) in sum.iter_mut().zip(v) {
            *s += i64::from(x);
            if !(0..=1).contains(s) {
                return false;
            }
        }
    }
    sum.iter().all(|&s| s == 0)
}

/// Ordered pairs of distinct colors, lexicographically.
pub const COLOR_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];

/// Counter indices for `k` labels: `x_c` at `3x + c`, `S` at `3k`, and
/// `Z_{c,d}` at `3k + 1 + rank(c,d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CounterLayout {
    pub labels: usize,
}

impl CounterLayout {
    pub fn new(labels: usize) -> Self {
        Self { labels }
    }

    pub fn dimension(&self) -> usize {
        3 * self.labels + 7
    }

    pub fn x(&self, label: usize, color: usize) -> usize {
        3 * label + color
    }

    pub fn s(&self) -> usize {
        3 * self.labels
    }

    pub fn z(&self, c: usize, d: usize) -> usize {
        let rank = COLOR_PAIRS
            .iter()
            .position(|&p| p == (c, d))
            .expect("distinct colors");
        3 * self.labels + 1 + rank
    }

    /// `+1` at the `up` counters and `-1` at the `down` counters.
    pub fn vector(&self, up: &[usize], down: &[usize]) -> Vec<i8> {
        let mut v = vec![0i8; self.dimension()];
        for &i in up {
            v[i] = 1;
        }
        for &i in down {
            v[i] = -1;
        }
        v
    }
}

/// Emits the counter machine blocks for every command of the nice form of
/// the supplied decomposition, with vertices named by greedy labels.
#[derive(Clone, Copy, Debug, Default)]
pub struct ColoringToCm;

impl Construction for ColoringToCm {
    const NAME: &'static str = "coloring-to-cm";
    const SOURCE: ProblemKind = ProblemKind::Coloring;
    const TARGET: ProblemKind = ProblemKind::CounterMachine;
    const TRANSFORMATION: bool = true;

    fn witness_len(&self, _: &ProblemInstance) -> Result<usize> {
        Ok(0)
    }

    fn transform(&self, inst: &ProblemInstance, _: &Witness) -> Result<ProblemInstance> {
        let g = source!(inst, Coloring);
        let width = g.width();
        let nice = make_nice(g.n, &g.edges, &g.bags)?;
        let labels = greedy_labels(g.n, &nice.commands, width)?;
        let lay = CounterLayout::new(width + 1);
        let s = lay.s();
        let mut vectors = Vec::new();
        let mut flags = Vec::new();
        let mut push = |v: Vec<i8>, f: Flag| {
            vectors.push(v);
            flags.push(f);
        };
        for cmd in &nice.commands {
            match *cmd {
                Command::Introduce(v) => {
                    for c in 0..3 {
                        push(lay.vector(&[lay.x(labels[v], c), s], &[]), Flag::Optional);
                    }
                    push(lay.vector(&[], &[s]), Flag::Required);
                }
                Command::Forget(v) => {
                    for c in 0..3 {
                        push(lay.vector(&[s], &[lay.x(labels[v], c)]), Flag::Optional);
                    }
                    push(lay.vector(&[], &[s]), Flag::Required);
                }
                Command::Edge(u, v) => {
                    let (x, y) = (labels[u], labels[v]);
                    for (c, d) in COLOR_PAIRS {
                        push(lay.vector(&[lay.z(c, d), s], &[lay.x(x, c), lay.x(y, d)]), Flag::Optional);
                    }
                    push(lay.vector(&[], &[s]), Flag::Required);
                    push(lay.vector(&[s], &[]), Flag::Required);
                    for (c, d) in COLOR_PAIRS {
                        push(lay.vector(&[lay.x(x, c), lay.x(y, d)], &[lay.z(c, d), s]), Flag::Optional);
                    }
                    push(lay.vector(&[s], &[]), Flag::Required);
                    push(lay.vector(&[], &[s]), Flag::Required);
                }
            }
        }
        let dimension = lay.dimension();
        if dimension != 3 * (width + 1) + 7 {
            return Err(Error::Internal(format!("dimension {dimension} for width {width}")));
        }
        Ok(CounterMachineInstance {
            dimension,
            vectors,
            flags,
        }
        .into())
    }

    fn synthesize(&self, _: &ProblemInstance, _: &Solution) -> Result<Witness> {
        Ok(Witness::empty())
    }

    fn bound(&self, inst: &ProblemInstance) -> Result<u64> {
        Ok(3 * (inst.parameter() + 1) + 7)
    }
}

/// Maps vector `i` to the block-diagonal permutation
/// `(Γ̂(v_i^1), …, Γ̂(v_i^ℓ), π or id)` and guesses, per coordinate, how many
/// chosen vectors touch it.
#[derive(Clone, Copy, Debug, Default)]
pub struct CmToPermSs {
    pub method: LandauMethod,
}

fn count_layout(c: &CounterMachineInstance) -> FieldLayout {
    let w = bit_length_u64(c.vectors.len() as u64) as usize;
    FieldLayout::new(vec![w; c.dimension])
}

impl Construction for CmToPermSs {
    const NAME: &'static str = "cm-to-permss";
    const SOURCE: ProblemKind = ProblemKind::CounterMachine;
    const TARGET: ProblemKind = ProblemKind::PermutationSubsetSum;
    const TRANSFORMATION: bool = false;

    fn witness_len(&self, inst: &ProblemInstance) -> Result<usize> {
        let c = source!(inst, CounterMachine);
        if c.vectors.is_empty() {
            return Ok(0);
        }
        Ok(count_layout(c).len())
    }

    fn transform(&self, inst: &ProblemInstance, w: &Witness) -> Result<ProblemInstance> {
        let c = source!(inst, CounterMachine);
        let n = c.vectors.len();
        if n == 0 {
            return Ok(trivial_instance(Self::TARGET, Answer::Yes));
        }
        let counts: Vec<u64> = count_layout(c)
            .decode(w)?
            .iter()
            .map(|v| v.to_u64().unwrap_or(u64::MAX))
            .collect();
        if counts.iter().any(|&x| x > n as u64) {
            return Ok(trivial_instance(Self::TARGET, Answer::No));
        }
        let ctx = GammaHatContext::new(n as u64, self.method)?;
        let identity = Permutation::identity(ctx.degree());
        let elements = c
            .vectors
            .iter()
            .zip(&c.flags)
            .map(|(v, f)| {
                let mut blocks = v
                    .iter()
                    .map(|&b| ctx.gamma_hat(b).cloned())
                    .collect::<Result<Vec<_>>>()?;
                blocks.push(match f {
                    Flag::Required => ctx.pi().clone(),
                    Flag::Optional => identity.clone(),
                });
                Ok(Permutation::block_diagonal(&blocks))
            })
            .collect::<Result<Vec<_>>>()?;
        let required = c.flags.iter().filter(|&&f| f == Flag::Required).count() as u64;
        let mut target_blocks: Vec<Permutation> = counts.iter().map(|&e| ctx.pi_power(e)).collect();
        target_blocks.push(ctx.pi_power(required));
        let target = Permutation::block_diagonal(&target_blocks);
        Ok(GroupSubsetSumInstance::Symmetric {
            degree: target.degree(),
            elements,
            target,
        }
        .into())
    }

    fn synthesize(&self, inst: &ProblemInstance, sol: &Solution) -> Result<Witness> {
        let c = source!(inst, CounterMachine);
        if c.vectors.is_empty() {
            return Ok(Witness::empty());
        }
        let Solution::Indices(idx) = sol else {
            return Err(Error::Internal(format!("expected an index set, got {sol:?}")));
        };
        let counts: Vec<BigUint> = (0..c.dimension)
            .map(|j| BigUint::from(idx.iter().filter(|&&i| c.vectors[i][j] != 0).count()))
            .collect();
        count_layout(c).encode(&counts)
    }

    fn bound(&self, inst: &ProblemInstance) -> Result<u64> {
        let c = source!(inst, CounterMachine);
        Ok(perm_degree_bound(c.dimension, c.vectors.len()))
    }
}

/// `(ℓ + 1) · 2 · ⌈log2(n + 2)⌉³`: the Landau construction needs a carrier
/// of degree `O(log³ n)` for order above `n`.
pub fn perm_degree_bound(dimension: usize, n: usize) -> u64 {
    let log = bit_length_u64(n as u64 + 1);
    (dimension as u64 + 1) * 2 * log.pow(3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::ColoringInstance;
    use crate::oracles::{solve_counter_machine, solve_group_ss, Budget};
    use crate::reduction::{Reduction, ReductionConfig};

    fn cfg() -> ReductionConfig {
        ReductionConfig::unguarded()
    }

    fn clique(n: usize) -> ProblemInstance {
        ColoringInstance {
            n,
            edges: (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
            bags: vec![(0..n).collect()],
        }
        .into()
    }

    fn cm(target: &ProblemInstance) -> CounterMachineInstance {
        match target {
            ProblemInstance::CounterMachine(c) => c.clone(),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn run_predicate() {
        let v = |xs: &[&[i8]]| xs.iter().map(|x| x.to_vec()).collect::<Vec<_>>();
        assert!(is_run(v(&[&[1], &[-1]]).iter().map(Vec::as_slice), 1));
        assert!(!is_run(v(&[&[1], &[1], &[-1], &[-1]]).iter().map(Vec::as_slice), 1));
        assert!(is_run(std::iter::empty(), 3));
    }

    #[test]
    fn coloring_examples() {
        let b = Budget::default();
        let single: ProblemInstance = ColoringInstance {
            n: 1,
            edges: vec![],
            bags: vec![vec![0]],
        }
        .into();
        let out = cm(&ColoringToCm.apply(&single, &Witness::empty(), &cfg()).unwrap().target);
        assert_eq!(out.dimension, 10);
        assert_eq!(out.vectors.len(), 8);
        assert!(solve_counter_machine(&out, &b).unwrap().is_yes());
        let k3 = cm(&ColoringToCm.apply(&clique(3), &Witness::empty(), &cfg()).unwrap().target);
        assert_eq!(k3.dimension, 16);
        assert!(solve_counter_machine(&k3, &b).unwrap().is_yes());
        let k4 = cm(&ColoringToCm.apply(&clique(4), &Witness::empty(), &cfg()).unwrap().target);
        assert_eq!(k4.dimension, 19);
        assert!(!solve_counter_machine(&k4, &b).unwrap().is_yes());
    }

    #[test]
    fn cm_to_perm_examples() {
        let b = Budget::default();
        let inst: ProblemInstance = CounterMachineInstance {
            dimension: 1,
            vectors: vec![vec![1], vec![-1]],
            flags: vec![Flag::Required, Flag::Required],
        }
        .into();
        let r = CmToPermSs::default();
        let len = Reduction::witness_len(&r, &inst, &cfg()).unwrap();
        assert_eq!(len, 2);
        let solve = |w: u64| {
            let t = r.apply(&inst, &Witness::from_u64(w, len), &cfg()).unwrap().target;
            let ProblemInstance::GroupSubsetSum(g) = t else { panic!() };
            solve_group_ss(&g, &b).unwrap().is_yes()
        };
        assert!(solve(2));
        assert!(!solve(1));
        assert!(!solve(0));
        assert!(!solve(3));
    }
}
