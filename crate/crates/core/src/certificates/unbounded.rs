use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{expect_kind, Scheme};
use crate::bits::{bit_length, bit_length_u64, FieldLayout, Witness};
use crate::error::{Error, Result};
use crate::instances::{ProblemInstance, ProblemKind, UnboundedSubsetSumInstance};
use crate::oracles::Solution;

/// Up to `⌊log2(t+1)⌋` pairs (value index, multiplicity - 1), where indices
/// point into the sorted distinct items in `[1, t]`. A length field comes
/// first; unused slots must be zero.
#[derive(Clone, Copy, Debug, Default)]
pub struct UnboundedScheme;

struct Shape {
    values: Vec<BigUint>,
    slots: usize,
    index_bits: usize,
    mult_bits: usize,
    count_bits: usize,
}

impl Shape {
    fn new(u: &UnboundedSubsetSumInstance) -> Self {
        let mut values: Vec<BigUint> = u
            .items
            .iter()
            .filter(|p| !p.is_zero() && *p <= &u.target)
            .cloned()
            .collect();
        values.sort();
        values.dedup();
        let slots = (bit_length(&(&u.target + 1u32)) - 1) as usize;
        let index_bits = bit_length_u64(values.len().saturating_sub(1) as u64) as usize;
        let mult_bits = if u.target.is_zero() {
            0
        } else {
            bit_length(&(&u.target - 1u32)) as usize
        };
        Self {
            values,
            slots,
            index_bits,
            mult_bits,
            count_bits: bit_length_u64(slots as u64) as usize,
        }
    }

    fn layout(&self) -> FieldLayout {
        let mut widths = vec![self.count_bits];
        for _ in 0..self.slots {
            widths.extend([self.index_bits, self.mult_bits]);
        }
        FieldLayout::new(widths)
    }

    fn encode(&self, pairs: &[(usize, BigUint)]) -> Result<Witness> {
        let mut fields = vec![BigUint::from(pairs.len())];
        for i in 0..self.slots {
            match pairs.get(i) {
                Some((idx, m)) => fields.extend([BigUint::from(*idx), m - 1u32]),
                None => fields.extend([BigUint::zero(), BigUint::zero()]),
            }
        }
        self.layout().encode(&fields)
    }
}

fn instance(inst: &ProblemInstance) -> Result<&UnboundedSubsetSumInstance> {
    match inst {
        ProblemInstance::UnboundedSubsetSum(u) => Ok(u),
        other => Err(Error::KindMismatch {
            expected: ProblemKind::UnboundedSubsetSum,
            found: other.kind(),
        }),
    }
}

/// Exchanges multiplicity between two disjoint value sets of equal sum until
/// at most `⌊log2(t+1)⌋` distinct values remain. Input and output map each
/// distinct value to its multiplicity.
pub fn minimize_support(target: &BigUint, mut mult: Vec<(BigUint, BigUint)>) -> Result<Vec<(BigUint, BigUint)>> {
    let slots = (bit_length(&(target + 1u32)) - 1) as usize;
    if slots >= 24 {
        return Err(Error::Resource(format!("support reduction over 2^{} subsets", slots + 1)));
    }
    mult.retain(|(_, m)| !m.is_zero());
    while mult.len() > slots {
        // 2^(slots+1) subsets of the first slots+1 values have sums in [0, t],
        // so two of them collide.
        let h = slots + 1;
        let mut seen: HashMap<BigUint, u32> = HashMap::new();
        let mut pair = None;
        for mask in 0u32..1 << h {
            let sum: BigUint = (0..h).filter(|&i| mask >> i & 1 == 1).map(|i| &mult[i].0).sum();
            if let Some(&other) = seen.get(&sum) {
                pair = Some((other & !mask, mask & !other));
                break;
            }
            seen.insert(sum, mask);
        }
        let (a, b) = pair.ok_or_else(|| Error::Internal("no colliding subset sums".into()))?;
        let members = |m: u32| (0..h).filter(move |&i| m >> i & 1 == 1);
        let (from, to) = {
            let ma = members(a).map(|i| &mult[i].1).min();
            let mb = members(b).map(|i| &mult[i].1).min();
            match (ma, mb) {
                (Some(x), Some(y)) if y < x => (b, a),
                _ => (a, b),
            }
        };
        let shift = members(from)
            .map(|i| mult[i].1.clone())
            .min()
            .ok_or_else(|| Error::Internal("empty exchange set".into()))?;
        for i in members(from) {
            mult[i].1 -= &shift;
        }
        for i in members(to) {
            mult[i].1 += &shift;
        }
        mult.retain(|(_, m)| !m.is_zero());
    }
    Ok(mult)
}

impl Scheme for UnboundedScheme {
    fn name(&self) -> &'static str {
        "unbounded"
    }

    fn kind(&self) -> ProblemKind {
        ProblemKind::UnboundedSubsetSum
    }

    fn cert_len(&self, inst: &ProblemInstance) -> Result<usize> {
        expect_kind(self, inst)?;
        Ok(Shape::new(instance(inst)?).layout().len())
    }

    fn verify(&self, inst: &ProblemInstance, cert: &Witness) -> Result<bool> {
        expect_kind(self, inst)?;
        let u = instance(inst)?;
        let shape = Shape::new(u);
        let Ok(fields) = shape.layout().decode(cert) else {
            return Ok(false);
        };
        let count = fields[0].to_usize().unwrap_or(usize::MAX);
        if count > shape.slots {
            return Ok(false);
        }
        let mut sum = BigUint::zero();
        let mut last: Option<usize> = None;
        for (slot, pair) in fields[1..].chunks(2).enumerate() {
            let idx = pair[0].to_usize().unwrap_or(usize::MAX);
            if slot >= count {
                if !pair[0].is_zero() || !pair[1].is_zero() {
                    return Ok(false);
                }
                continue;
            }
            if idx >= shape.values.len() || last.is_some_and(|l| l >= idx) {
                return Ok(false);
            }
            last = Some(idx);
            sum += &shape.values[idx] * (&pair[1] + 1u32);
        }
        Ok(sum == u.target)
    }

    fn synthesize(&self, inst: &ProblemInstance, sol: &Solution) -> Result<Witness> {
        expect_kind(self, inst)?;
        let u = instance(inst)?;
        let Solution::Multiplicities(m) = sol else {
            return Err(Error::Internal(format!("expected multiplicities, got {sol:?}")));
        };
        let mut by_value: HashMap<&BigUint, BigUint> = HashMap::new();
        for (p, &k) in u.items.iter().zip(m) {
            if k > 0 && !p.is_zero() {
                *by_value.entry(p).or_default() += k;
            }
        }
        let mut support: Vec<(BigUint, BigUint)> = by_value.into_iter().map(|(p, k)| (p.clone(), k)).collect();
        support.sort();
        let support = minimize_support(&u.target, support)?;
        let shape = Shape::new(u);
        let mut pairs = support
            .into_iter()
            .map(|(v, k)| {
                let idx = shape
                    .values
                    .binary_search(&v)
                    .map_err(|_| Error::Internal(format!("value {v} not usable")))?;
                Ok((idx, k))
            })
            .collect::<Result<Vec<_>>>()?;
        pairs.sort();
        shape.encode(&pairs)
    }

    /// `2L(L+1)` with `L = ⌈log2(t+1)⌉`: at most `L` slots of `2L` bits, plus
    /// the length field.
    fn budget_bound(&self, inst: &ProblemInstance) -> Result<u64> {
        expect_kind(self, inst)?;
        let l = bit_length(&instance(inst)?.target);
        Ok(2 * l * (l + 1))
    }

    fn canonical(&self, inst: &ProblemInstance) -> Result<Option<Vec<Witness>>> {
        expect_kind(self, inst)?;
        let u = instance(inst)?;
        let shape = Shape::new(u);
        let Some(t) = u.target.to_u64().filter(|&t| t <= 64) else {
            return Ok(None);
        };
        let d = shape.values.len();
        let mut out = Vec::new();
        for mask in 0u32..1 << d {
            let idx: Vec<usize> = (0..d).filter(|&i| mask >> i & 1 == 1).collect();
            if idx.len() > shape.slots {
                continue;
            }
            // Odometer over multiplicities in [1, t].
            let mut mult = vec![1u64; idx.len()];
            loop {
                let pairs: Vec<(usize, BigUint)> = idx.iter().zip(&mult).map(|(&i, &m)| (i, m.into())).collect();
                out.push(shape.encode(&pairs)?);
                let Some(pos) = mult.iter().position(|&m| m < t) else { break };
                mult[pos] += 1;
                for m in &mut mult[..pos] {
                    *m = 1;
                }
            }
        }
        Ok(Some(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(items: &[u64], t: u64) -> ProblemInstance {
        UnboundedSubsetSumInstance::from_u64(items, t).into()
    }

    #[test]
    fn examples() {
        let s = UnboundedScheme;
        let i = inst(&[4, 5], 23);
        let shape = Shape::new(instance(&i).unwrap());
        let cert = shape.encode(&[(0, 2u32.into()), (1, 3u32.into())]).unwrap();
        assert!(s.verify(&i, &cert).unwrap());
        let zero = inst(&[3], 0);
        assert_eq!(s.cert_len(&zero).unwrap(), 0);
        assert!(s.verify(&zero, &Witness::empty()).unwrap());
        let no = inst(&[2], 7);
        let len = s.cert_len(&no).unwrap();
        assert!((0u64..1 << len).all(|v| !s.verify(&no, &Witness::from_u64(v, len)).unwrap()));
    }

    #[test]
    fn support_shrinks_to_log() {
        let t = BigUint::from(25u32);
        let mult: Vec<(BigUint, BigUint)> = [(1u32, 2u32), (2, 2), (3, 2), (4, 2), (5, 1)]
            .iter()
            .map(|&(v, m)| (v.into(), m.into()))
            .collect();
        let out = minimize_support(&t, mult).unwrap();
        assert!(out.len() <= 4);
        let sum: BigUint = out.iter().map(|(v, m)| v * m).sum();
        assert_eq!(sum, t);
    }

    #[test]
    fn canonical_list_is_exactly_the_well_formed_strings() {
        let s = UnboundedScheme;
        let i = inst(&[3, 2], 5);
        let len = s.cert_len(&i).unwrap();
        let canon: std::collections::HashSet<Witness> = s.canonical(&i).unwrap().unwrap().into_iter().collect();
        for v in 0u64..1 << len {
            let w = Witness::from_u64(v, len);
            if s.verify(&i, &w).unwrap() {
                assert!(canon.contains(&w));
            }
        }
    }
}
