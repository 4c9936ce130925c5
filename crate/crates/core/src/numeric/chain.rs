use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{encode_base_w, graver_sequence};
use crate::bits::{bit_length, bit_length_u64, FieldLayout, Witness};
use crate::error::{Error, Result};
use crate::instances::{
    big_sum, trivial_instance, Answer, IlpInstance, IlpVariant, KnapsackInstance, KnapsackItem, ProblemInstance,
    ProblemKind, SubsetSumInstance,
};
use crate::oracles::{drop_column, Solution};
use crate::reduction::{source, Construction};

fn no(kind: ProblemKind) -> ProblemInstance {
    trivial_instance(kind, Answer::No)
}

fn yes(kind: ProblemKind) -> ProblemInstance {
    trivial_instance(kind, Answer::Yes)
}

fn bits(n: usize) -> u64 {
    bit_length_u64(n as u64)
}

fn indices(sol: &Solution) -> Result<&[usize]> {
    match sol {
        Solution::Indices(idx) => Ok(idx),
        other => Err(Error::Internal(format!("expected an index set, got {other:?}"))),
    }
}

fn vector(sol: &Solution) -> Result<&[u8]> {
    match sol {
        Solution::Vector(x) => Ok(x),
        other => Err(Error::Internal(format!("expected a 0/1 vector, got {other:?}"))),
    }
}

fn small_field(values: &[BigUint]) -> Vec<u64> {
    values.iter().map(|v| v.to_u64().unwrap_or(u64::MAX)).collect()
}

/// Items `(p_i, p_i)`, capacity and demand `t`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SsToKnapsack;

impl Construction for SsToKnapsack {
    const NAME: &'static str = "ss-to-knapsack";
    const SOURCE: ProblemKind = ProblemKind::SubsetSum;
    const TARGET: ProblemKind = ProblemKind::Knapsack;
    const TRANSFORMATION: bool = true;

    fn witness_len(&self, _: &ProblemInstance) -> Result<usize> {
        Ok(0)
    }

    fn transform(&self, inst: &ProblemInstance, _: &Witness) -> Result<ProblemInstance> {
        let s = source!(inst, SubsetSum);
        // Zero items change no sum; knapsack items must be positive.
        let items = s
            .items
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| KnapsackItem {
                size: p.clone(),
                weight: p.clone(),
            })
            .collect();
        Ok(KnapsackInstance {
            items,
            capacity: s.target.clone(),
            demand: s.target.clone(),
        }
        .into())
    }

    fn synthesize(&self, _: &ProblemInstance, _: &Solution) -> Result<Witness> {
        Ok(Witness::empty())
    }

    fn bound(&self, inst: &ProblemInstance) -> Result<u64> {
        Ok(2 * inst.parameter())
    }
}

/// What is left of a knapsack instance after normalization.
enum Normalized {
    Resolved(Answer),
    /// Usable items (original index, item) and `W = w·n + 1`.
    Open(Vec<(usize, KnapsackItem)>, BigUint),
}

fn normalize_knapsack(k: &KnapsackInstance) -> Normalized {
    if k.demand.is_zero() {
        return Normalized::Resolved(Answer::Yes);
    }
    let usable: Vec<(usize, KnapsackItem)> = k
        .items
        .iter()
        .enumerate()
        .filter(|(_, it)| it.size <= k.capacity)
        .map(|(i, it)| (i, it.clone()))
        .collect();
    if usable.iter().any(|(_, it)| it.weight >= k.demand) {
        return Normalized::Resolved(Answer::Yes);
    }
    // All usable items fit together: the best choice is all of them.
    if big_sum(usable.iter().map(|(_, it)| &it.size)) <= k.capacity {
        let total = big_sum(usable.iter().map(|(_, it)| &it.weight));
        return Normalized::Resolved(Answer::from_bool(total >= k.demand));
    }
    let base = &k.demand * usable.len() + 1u32;
    Normalized::Open(usable, base)
}

fn knapsack_layout(k: &KnapsackInstance, base: &BigUint) -> FieldLayout {
    FieldLayout::for_maxima([&k.capacity, &(base - 1u32)])
}

/// Guesses the size `t'` and weight `w'` of a solution, then asks for a
/// subset of the items `p_i·W + w_i` summing to `t'·W + w'`.
#[derive(Clone, Copy, Debug, Default)]
pub struct KnapsackToSs;

impl Construction for KnapsackToSs {
    const NAME: &'static str = "knapsack-to-ss";
    const SOURCE: ProblemKind = ProblemKind::Knapsack;
    const TARGET: ProblemKind = ProblemKind::SubsetSum;
    const TRANSFORMATION: bool = false;

    fn witness_len(&self, inst: &ProblemInstance) -> Result<usize> {
        let k = source!(inst, Knapsack);
        Ok(match normalize_knapsack(k) {
            Normalized::Resolved(_) => 0,
            Normalized::Open(_, base) => knapsack_layout(k, &base).len(),
        })
    }

    fn transform(&self, inst: &ProblemInstance, w: &Witness) -> Result<ProblemInstance> {
        let k = source!(inst, Knapsack);
        let (usable, base) = match normalize_knapsack(k) {
            Normalized::Resolved(a) => return Ok(trivial_instance(Self::TARGET, a)),
            Normalized::Open(u, b) => (u, b),
        };
        let fields = knapsack_layout(k, &base).decode(w)?;
        let (t2, w2) = (&fields[0], &fields[1]);
        if t2 > &k.capacity || w2 < &k.demand || w2 >= &base {
            return Ok(no(Self::TARGET));
        }
        let items = usable.iter().map(|(_, it)| &it.size * &base + &it.weight).collect();
        Ok(SubsetSumInstance::new(items, t2 * &base + w2).into())
    }

    fn synthesize(&self, inst: &ProblemInstance, sol: &Solution) -> Result<Witness> {
        let k = source!(inst, Knapsack);
        let Normalized::Open(_, base) = normalize_knapsack(k) else {
            return Ok(Witness::empty());
        };
        let idx = indices(sol)?;
        let size = big_sum(idx.iter().map(|&i| &k.items[i].size));
        let weight = big_sum(idx.iter().map(|&i| &k.items[i].weight));
        knapsack_layout(k, &base).encode(&[size, weight])
    }

    fn bound(&self, inst: &ProblemInstance) -> Result<u64> {
        let k = source!(inst, Knapsack);
        Ok(inst.parameter() + bits(k.items.len()) + 2)
    }
}

/// Items that can take part in a solution, i.e. below `2^k` with
/// `k = bits(t)`, with their original indices.
fn binary_columns(s: &SubsetSumInstance) -> (usize, Vec<(usize, Vec<i8>)>) {
    let k = bit_length(&s.target) as usize;
    let cols = s
        .items
        .iter()
        .enumerate()
        .filter(|(_, p)| bit_length(p) as usize <= k)
        .map(|(i, p)| (i, (0..k).map(|j| i8::from(p.bit(j as u64))).collect()))
        .collect();
    (k, cols)
}

/// Row `j` can sum to at most the number of columns with bit `j` set.
fn row_maxima(k: usize, cols: &[(usize, Vec<i8>)]) -> Vec<BigUint> {
    (0..k)
        .map(|j| BigUint::from(cols.iter().filter(|(_, c)| c[j] == 1).count()))
        .collect()
}

/// Guesses the column sums `b_j` of the binary expansions of the chosen
/// items and checks `Σ b_j 2^j = t`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SsToMonotone;

impl Construction for SsToMonotone {
    const NAME: &'static str = "ss-to-monotone";
    const SOURCE: ProblemKind = ProblemKind::SubsetSum;
    const TARGET: ProblemKind = ProblemKind::MonotoneIlp;
    const TRANSFORMATION: bool = false;

    fn witness_len(&self, inst: &ProblemInstance) -> Result<usize> {
        let s = source!(inst, SubsetSum);
        let (k, cols) = binary_columns(s);
        Ok(FieldLayout::for_maxima(&row_maxima(k, &cols)).len())
    }

    fn transform(&self, inst: &ProblemInstance, w: &Witness) -> Result<ProblemInstance> {
        let s = source!(inst, SubsetSum);
        let (k, cols) = binary_columns(s);
        let maxima = row_maxima(k, &cols);
        let b = FieldLayout::for_maxima(&maxima).decode(w)?;
        if b.iter().zip(&maxima).any(|(x, m)| x > m) {
            return Ok(no(Self::TARGET));
        }
        let checksum: BigUint = b.iter().enumerate().map(|(j, x)| x << j).sum();
        if checksum != s.target {
            return Ok(no(Self::TARGET));
        }
        Ok(IlpInstance {
            variant: IlpVariant::Monotone,
            columns: cols.into_iter().map(|(_, c)| c).collect(),
            rhs: small_field(&b).into_iter().map(|x| x as i64).collect(),
        }
        .into())
    }

    fn synthesize(&self, inst: &ProblemInstance, sol: &Solution) -> Result<Witness> {
        let s = source!(inst, SubsetSum);
        let (k, cols) = binary_columns(s);
        let idx = indices(sol)?;
        let b: Vec<BigUint> = (0..k)
            .map(|j| BigUint::from(idx.iter().filter(|&&i| s.items[i].bit(j as u64)).count()))
            .collect();
        FieldLayout::for_maxima(&row_maxima(k, &cols)).encode(&b)
    }

    fn bound(&self, inst: &ProblemInstance) -> Result<u64> {
        Ok(inst.parameter().max(1))
    }
}

/// Base-`(n+1)` encoding of every column and of the right-hand side.
#[derive(Clone, Copy, Debug, Default)]
pub struct MonotoneToSs;

impl Construction for MonotoneToSs {
    const NAME: &'static str = "monotone-to-ss";
    const SOURCE: ProblemKind = ProblemKind::MonotoneIlp;
    const TARGET: ProblemKind = ProblemKind::SubsetSum;
    const TRANSFORMATION: bool = true;

    fn witness_len(&self, _: &ProblemInstance) -> Result<usize> {
        Ok(0)
    }

    fn transform(&self, inst: &ProblemInstance, _: &Witness) -> Result<ProblemInstance> {
        let a = source!(inst, Ilp);
        let n = a.columns.len();
        if a.rhs.iter().any(|&b| b < 0 || b as u64 > n as u64) {
            return Ok(no(Self::TARGET));
        }
        let base = BigUint::from(n + 1);
        let digits = |v: &[i64]| v.iter().map(|&x| BigUint::from(x as u64)).collect::<Vec<_>>();
        let items = a
            .columns
            .iter()
            .map(|c| encode_base_w(&digits(&c.iter().map(|&x| i64::from(x)).collect::<Vec<_>>()), &base))
            .collect::<Result<Vec<_>>>()?;
        let target = encode_base_w(&digits(&a.rhs), &base)?;
        Ok(SubsetSumInstance::new(items, target).into())
    }

    fn synthesize(&self, _: &ProblemInstance, _: &Solution) -> Result<Witness> {
        Ok(Witness::empty())
    }

    fn bound(&self, inst: &ProblemInstance) -> Result<u64> {
        let a = source!(inst, Ilp);
        Ok(a.rows() as u64 * bits(a.columns.len()))
    }
}

/// Appends the Graver gadget: the rows of `A` are joined by `k'` rows
/// holding a zero-sum sequence with no proper zero-sum subsequence, and the
/// extra columns `(-b_i, v_i)` carry `b` split into `{0,1}` vectors.
#[derive(Clone, Copy, Debug, Default)]
pub struct MonotoneToZeroSum;

impl Construction for MonotoneToZeroSum {
    const NAME: &'static str = "monotone-to-zerosum";
    const SOURCE: ProblemKind = ProblemKind::MonotoneIlp;
    const TARGET: ProblemKind = ProblemKind::ZeroSumIlp;
    const TRANSFORMATION: bool = true;

    fn witness_len(&self, _: &ProblemInstance) -> Result<usize> {
        Ok(0)
    }

    fn transform(&self, inst: &ProblemInstance, _: &Witness) -> Result<ProblemInstance> {
        let a = source!(inst, Ilp);
        let m = a.rows();
        let columns: Vec<&Vec<i8>> = a.columns.iter().filter(|c| c.iter().any(|&x| x != 0)).collect();
        let n = columns.len();
        let b_max = a.rhs.iter().copied().max().unwrap_or(0);
        if a.rhs.iter().any(|&b| b < 0) || b_max > n as i64 {
            return Ok(no(Self::TARGET));
        }
        if n == 0 {
            // Only x = 0 remains, and b <= n forces b = 0.
            return Ok(yes(Self::TARGET));
        }
        let k = gadget_rows(n.max(b_max as usize));
        let graver = graver_sequence(k)?;
        let mut out: Vec<Vec<i8>> = columns
            .iter()
            .map(|c| c.iter().copied().chain(std::iter::repeat(0).take(k)).collect())
            .collect();
        for (i, v) in graver.vectors.iter().enumerate() {
            let part = a.rhs.iter().map(|&b| if (i as i64) < b { -1 } else { 0 });
            out.push(part.chain(v.iter().copied()).collect());
        }
        Ok(IlpInstance {
            variant: IlpVariant::ZeroSum,
            columns: out,
            rhs: vec![0; m + k],
        }
        .into())
    }

    fn synthesize(&self, _: &ProblemInstance, _: &Solution) -> Result<Witness> {
        Ok(Witness::empty())
    }

    fn bound(&self, inst: &ProblemInstance) -> Result<u64> {
        let a = source!(inst, Ilp);
        Ok(a.rows() as u64 + bits(a.columns.len()) + 1)
    }
}

/// `k' = ⌈log2 max(x, 2)⌉`, so that the gadget has `2^k' >= x` columns.
pub fn gadget_rows(x: usize) -> usize {
    let x = x.max(2);
    (usize::BITS - (x - 1).leading_zeros()) as usize
}

/// Guesses a column `i` set in a nonzero solution and asks for
/// `A^{-i} y = -A^i`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroSumToIlp;

impl Construction for ZeroSumToIlp {
    const NAME: &'static str = "zerosum-to-ilp";
    const SOURCE: ProblemKind = ProblemKind::ZeroSumIlp;
    const TARGET: ProblemKind = ProblemKind::Ilp;
    const TRANSFORMATION: bool = false;

    fn witness_len(&self, inst: &ProblemInstance) -> Result<usize> {
        let a = source!(inst, Ilp);
        Ok(bits(a.columns.len().saturating_sub(1)) as usize)
    }

    fn transform(&self, inst: &ProblemInstance, w: &Witness) -> Result<ProblemInstance> {
        let a = source!(inst, Ilp);
        let n = a.columns.len();
        let i = FieldLayout::new(vec![bits(n.saturating_sub(1)) as usize]).decode(w)?[0]
            .to_usize()
            .unwrap_or(usize::MAX);
        if i >= n {
            return Ok(no(Self::TARGET));
        }
        let (columns, rhs) = drop_column(&a.columns, i);
        Ok(IlpInstance {
            variant: IlpVariant::Standard,
            columns,
            rhs,
        }
        .into())
    }

    fn synthesize(&self, inst: &ProblemInstance, sol: &Solution) -> Result<Witness> {
        let a = source!(inst, Ilp);
        let x = vector(sol)?;
        let i = x
            .iter()
            .position(|&b| b == 1)
            .ok_or_else(|| Error::Internal("zero vector given as a nonzero solution".into()))?;
        Ok(Witness::from_u64(i as u64, bits(a.columns.len().saturating_sub(1)) as usize))
    }

    fn bound(&self, inst: &ProblemInstance) -> Result<u64> {
        Ok(inst.parameter())
    }
}

/// `(count of +1, count of -1)` per row.
fn sign_counts(a: &IlpInstance) -> Vec<(usize, usize)> {
    (0..a.rows())
        .map(|j| {
            let pos = a.columns.iter().filter(|c| c[j] == 1).count();
            let neg = a.columns.iter().filter(|c| c[j] == -1).count();
            (pos, neg)
        })
        .collect()
}

fn sign_layout(counts: &[(usize, usize)]) -> FieldLayout {
    let maxima: Vec<BigUint> = counts
        .iter()
        .map(|&(p, _)| BigUint::from(p))
        .chain(counts.iter().map(|&(_, n)| BigUint::from(n)))
        .collect();
    FieldLayout::for_maxima(&maxima)
}

/// Splits `A = A⁺ - A⁻`, guesses `b⁺ = A⁺x` and `b⁻ = A⁻x`, and stacks the
/// two nonnegative systems.
#[derive(Clone, Copy, Debug, Default)]
pub struct IlpToMonotone;

impl Construction for IlpToMonotone {
    const NAME: &'static str = "ilp-to-monotone";
    const SOURCE: ProblemKind = ProblemKind::Ilp;
    const TARGET: ProblemKind = ProblemKind::MonotoneIlp;
    const TRANSFORMATION: bool = false;

    fn witness_len(&self, inst: &ProblemInstance) -> Result<usize> {
        let a = source!(inst, Ilp);
        Ok(sign_layout(&sign_counts(a)).len())
    }

    fn transform(&self, inst: &ProblemInstance, w: &Witness) -> Result<ProblemInstance> {
        let a = source!(inst, Ilp);
        let m = a.rows();
        let counts = sign_counts(a);
        let fields = small_field(&sign_layout(&counts).decode(w)?);
        let (plus, minus) = fields.split_at(m);
        let in_range = counts
            .iter()
            .zip(plus.iter().zip(minus))
            .all(|(&(p, n), (&bp, &bn))| bp <= p as u64 && bn <= n as u64);
        if !in_range || (0..m).any(|j| plus[j] as i64 - minus[j] as i64 != a.rhs[j]) {
            return Ok(no(Self::TARGET));
        }
        let columns = a
            .columns
            .iter()
            .map(|c| {
                let pos = c.iter().map(|&x| i8::from(x == 1));
                let neg = c.iter().map(|&x| i8::from(x == -1));
                pos.chain(neg).collect()
            })
            .collect();
        let rhs = plus.iter().chain(minus).map(|&x| x as i64).collect();
        Ok(IlpInstance {
            variant: IlpVariant::Monotone,
            columns,
            rhs,
        }
        .into())
    }

    fn synthesize(&self, inst: &ProblemInstance, sol: &Solution) -> Result<Witness> {
        let a = source!(inst, Ilp);
        let x = vector(sol)?;
        let count = |j: usize, sign: i8| {
            BigUint::from(a.columns.iter().zip(x).filter(|(c, &b)| b == 1 && c[j] == sign).count())
        };
        let m = a.rows();
        let values: Vec<BigUint> = (0..m).map(|j| count(j, 1)).chain((0..m).map(|j| count(j, -1))).collect();
        sign_layout(&sign_counts(a)).encode(&values)
    }

    fn bound(&self, inst: &ProblemInstance) -> Result<u64> {
        Ok(2 * inst.parameter())
    }
}

/// Reads a plain Subset Sum instance modulo `q = n·t`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SsToZq;

impl Construction for SsToZq {
    const NAME: &'static str = "ss-to-zq";
    const SOURCE: ProblemKind = ProblemKind::SubsetSum;
    const TARGET: ProblemKind = ProblemKind::ModularSubsetSum;
    const TRANSFORMATION: bool = true;

    fn witness_len(&self, _: &ProblemInstance) -> Result<usize> {
        Ok(0)
    }

    fn transform(&self, inst: &ProblemInstance, _: &Witness) -> Result<ProblemInstance> {
        let s = source!(inst, SubsetSum);
        if s.target.is_zero() {
            return Ok(yes(Self::TARGET));
        }
        let items: Vec<BigUint> = s.items.iter().filter(|p| *p <= &s.target).cloned().collect();
        match items.len() {
            0 => return Ok(no(Self::TARGET)),
            1 => return Ok(trivial_instance(Self::TARGET, Answer::from_bool(items[0] == s.target))),
            _ => {}
        }
        // Sums stay at most n·t, so they are congruent to t modulo n·t only
        // when they equal t.
        let q = &s.target * items.len();
        Ok(SubsetSumInstance {
            items,
            target: s.target.clone(),
            modulus: Some(q),
        }
        .into())
    }

    fn synthesize(&self, _: &ProblemInstance, _: &Solution) -> Result<Witness> {
        Ok(Witness::empty())
    }

    fn bound(&self, inst: &ProblemInstance) -> Result<u64> {
        let s = source!(inst, SubsetSum);
        Ok(inst.parameter() + bits(s.items.len()))
    }
}

fn zq_layout(s: &SubsetSumInstance) -> Result<(BigUint, FieldLayout)> {
    let q = s
        .modulus
        .clone()
        .ok_or_else(|| Error::Internal("modular instance without modulus".into()))?;
    let top = &q * s.items.len();
    let layout = FieldLayout::for_maxima([&top]);
    Ok((q, layout))
}

/// Guesses the integer value `t' ≡ t (mod q)` of the chosen sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZqToSs;

impl Construction for ZqToSs {
    const NAME: &'static str = "zq-to-ss";
    const SOURCE: ProblemKind = ProblemKind::ModularSubsetSum;
    const TARGET: ProblemKind = ProblemKind::SubsetSum;
    const TRANSFORMATION: bool = false;

    fn witness_len(&self, inst: &ProblemInstance) -> Result<usize> {
        let s = source!(inst, SubsetSum);
        Ok(zq_layout(s)?.1.len())
    }

    fn transform(&self, inst: &ProblemInstance, w: &Witness) -> Result<ProblemInstance> {
        let s = source!(inst, SubsetSum);
        let (q, layout) = zq_layout(s)?;
        let t2 = layout.decode(w)?.remove(0);
        if t2 > &q * s.items.len() || &t2 % &q != s.target {
            return Ok(no(Self::TARGET));
        }
        Ok(SubsetSumInstance::new(s.items.clone(), t2).into())
    }

    fn synthesize(&self, inst: &ProblemInstance, sol: &Solution) -> Result<Witness> {
        let s = source!(inst, SubsetSum);
        let sum = big_sum(indices(sol)?.iter().map(|&i| &s.items[i]));
        zq_layout(s)?.1.encode(&[sum])
    }

    fn bound(&self, inst: &ProblemInstance) -> Result<u64> {
        let s = source!(inst, SubsetSum);
        Ok(inst.parameter() + bits(s.items.len()))
    }
}
