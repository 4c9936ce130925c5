use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::zerosum::{add_into, shorten_to};
use super::{expect_kind, Scheme};
use crate::bits::{bit_length_u64, FieldLayout, Witness};
use crate::error::{Error, Result};
use crate::instances::{ProblemInstance, ProblemKind};
use crate::oracles::Solution;

/// `⌈k² log2 k⌉`, clamped to 1 for the trivial group `Z_1`.
pub fn zkk_s(k: u32) -> usize {
    if k <= 1 {
        return 1;
    }
    let k = f64::from(k);
    (k * k * k.log2()).ceil() as usize
}

/// Fewer than `s` group elements, written by value (base-`k` code below
/// `k^k`) after a length field. The verifier matches them greedily as a
/// subsequence of the input and compares the sum with the target.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZkkScheme;

struct Shape {
    k: u32,
    slots: usize,
    element_bits: usize,
    count_bits: usize,
}

impl Shape {
    fn new(k: u32) -> Result<Self> {
        let order = u64::from(k)
            .checked_pow(k)
            .filter(|&o| o <= 1 << 40)
            .ok_or_else(|| Error::Unsupported(format!("Z_{k}^{k} is too large")))?;
        let slots = zkk_s(k) - 1;
        Ok(Self {
            k,
            slots,
            element_bits: bit_length_u64(order - 1) as usize,
            count_bits: bit_length_u64(slots as u64) as usize,
        })
    }

    fn layout(&self) -> FieldLayout {
        let mut widths = vec![self.count_bits];
        widths.extend(std::iter::repeat(self.element_bits).take(self.slots));
        FieldLayout::new(widths)
    }

    fn code(&self, e: &[u32]) -> u64 {
        e.iter().rev().fold(0, |acc, &x| acc * u64::from(self.k) + u64::from(x))
    }

    fn element(&self, mut code: u64) -> Option<Vec<u32>> {
        let k = u64::from(self.k);
        let e = (0..self.k)
            .map(|_| {
                let x = (code % k) as u32;
                code /= k;
                x
            })
            .collect();
        (code == 0).then_some(e)
    }
}

fn parts(inst: &ProblemInstance) -> Result<(u32, &[Vec<u32>], &[u32])> {
    match inst {
        ProblemInstance::GroupSubsetSum(crate::instances::GroupSubsetSumInstance::ProductZkk {
            k,
            elements,
            target,
        }) => Ok((*k, elements, target)),
        other => Err(Error::KindMismatch {
            expected: ProblemKind::ProductSubsetSum,
            found: other.kind(),
        }),
    }
}

impl Scheme for ZkkScheme {
    fn name(&self) -> &'static str {
        "zkk"
    }

    fn kind(&self) -> ProblemKind {
        ProblemKind::ProductSubsetSum
    }

    fn cert_len(&self, inst: &ProblemInstance) -> Result<usize> {
        expect_kind(self, inst)?;
        Ok(Shape::new(parts(inst)?.0)?.layout().len())
    }

    fn verify(&self, inst: &ProblemInstance, cert: &Witness) -> Result<bool> {
        expect_kind(self, inst)?;
        let (k, elements, target) = parts(inst)?;
        let shape = Shape::new(k)?;
        let Ok(fields) = shape.layout().decode(cert) else {
            return Ok(false);
        };
        let count = fields[0].to_usize().unwrap_or(usize::MAX);
        if count > shape.slots || fields[1 + count..].iter().any(|f| f != &BigUint::ZERO) {
            return Ok(false);
        }
        let mut sum = vec![0u32; k as usize];
        let mut pos = 0;
        for f in &fields[1..=count] {
            let Some(e) = f.to_u64().and_then(|c| shape.element(c)) else {
                return Ok(false);
            };
            let Some(at) = elements[pos..].iter().position(|x| *x == e) else {
                return Ok(false);
            };
            pos += at + 1;
            add_into(&mut sum, &e, k);
        }
        Ok(sum == target)
    }

    fn synthesize(&self, inst: &ProblemInstance, sol: &Solution) -> Result<Witness> {
        expect_kind(self, inst)?;
        let (k, elements, _) = parts(inst)?;
        let Solution::Indices(idx) = sol else {
            return Err(Error::Internal(format!("expected an index set, got {sol:?}")));
        };
        let shape = Shape::new(k)?;
        let idx = shorten_to(k, elements, idx, shape.slots)?;
        let mut fields = vec![BigUint::from(idx.len())];
        fields.extend(idx.iter().map(|&i| BigUint::from(shape.code(&elements[i]))));
        fields.resize(1 + shape.slots, BigUint::ZERO);
        shape.layout().encode(&fields)
    }

    /// `k³ ⌈log2 k⌉²` bits for the elements plus the length field.
    fn budget_bound(&self, inst: &ProblemInstance) -> Result<u64> {
        expect_kind(self, inst)?;
        let k = u64::from(parts(inst)?.0);
        let log = bit_length_u64(k.saturating_sub(1));
        let s = zkk_s(k as u32) as u64;
        Ok(k.pow(3) * log * log + bit_length_u64(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::GroupSubsetSumInstance;

    fn inst(k: u32, elements: Vec<Vec<u32>>, target: Vec<u32>) -> ProblemInstance {
        GroupSubsetSumInstance::ProductZkk { k, elements, target }.into()
    }

    #[test]
    fn s_values() {
        assert_eq!(zkk_s(1), 1);
        assert_eq!(zkk_s(2), 4);
        assert_eq!(zkk_s(3), 15);
        assert_eq!(zkk_s(4), 32);
    }

    #[test]
    fn examples() {
        let s = ZkkScheme;
        let i = inst(2, vec![vec![1, 0], vec![0, 1]], vec![1, 1]);
        let cert = s.synthesize(&i, &Solution::Indices(vec![0, 1])).unwrap();
        assert!(s.verify(&i, &cert).unwrap());
        let z = inst(2, vec![vec![1, 0]], vec![0, 0]);
        assert!(s.verify(&z, &Witness::zeros(s.cert_len(&z).unwrap())).unwrap());
        let no = inst(2, vec![vec![1, 0]], vec![0, 1]);
        let len = s.cert_len(&no).unwrap();
        assert_eq!(len, 8);
        assert!((0u64..1 << len).all(|v| !s.verify(&no, &Witness::from_u64(v, len)).unwrap()));
    }

    #[test]
    fn order_matters_for_the_subsequence_match() {
        let s = ZkkScheme;
        let i = inst(2, vec![vec![1, 0]], vec![1, 0]);
        let shape = Shape::new(2).unwrap();
        let twice = shape
            .layout()
            .encode(&[2u32.into(), 1u32.into(), 1u32.into(), 0u32.into()])
            .unwrap();
        assert!(!s.verify(&i, &twice).unwrap());
    }

    #[test]
    fn long_solutions_are_shortened() {
        let s = ZkkScheme;
        let ones = vec![vec![1, 0]; 5];
        let i = inst(2, ones, vec![1, 0]);
        let cert = s.synthesize(&i, &Solution::Indices(vec![0, 1, 2, 3, 4])).unwrap();
        assert!(s.verify(&i, &cert).unwrap());
    }
}
