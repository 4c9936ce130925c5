use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `Σ a_i · W^(i-1)`, digits listed least significant first.
pub fn encode_base_w(digits: &[BigUint], base: &BigUint) -> Result<BigUint> {
    let mut value = BigUint::zero();
    for d in digits.iter().rev() {
        if d >= base {
            return Err(Error::DigitOutOfRange {
                digit: d.clone(),
                base: base.clone(),
            });
        }
        value = value * base + d;
    }
    Ok(value)
}

/// The `n` least significant base-`W` digits of `value`; errors if `value`
/// needs more than `n` digits.
pub fn decode_base_w(value: &BigUint, base: &BigUint, n: usize) -> Result<Vec<BigUint>> {
    if base <= &BigUint::one() {
        return Err(Error::Precondition(format!("base {base} is below 2")));
    }
    let mut rest = value.clone();
    let mut digits = Vec::with_capacity(n);
    for _ in 0..n {
        digits.push(&rest % base);
        rest /= base;
    }
    if !rest.is_zero() {
        return Err(Error::DigitOutOfRange {
            digit: rest,
            base: base.clone(),
        });
    }
    Ok(digits)
}

/// Small-integer convenience over [`encode_base_w`].
pub fn encode_digits(digits: &[u64], base: u64) -> Result<BigUint> {
    let digits: Vec<BigUint> = digits.iter().map(|&d| d.into()).collect();
    encode_base_w(&digits, &base.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(encode_digits(&[1, 1], 3).unwrap(), BigUint::from(4u32));
        assert_eq!(encode_digits(&[0, 0, 0], 7).unwrap(), BigUint::zero());
        assert!(encode_digits(&[3], 3).is_err());
        let back = decode_base_w(&4u32.into(), &3u32.into(), 2).unwrap();
        assert_eq!(back, vec![BigUint::one(), BigUint::one()]);
        assert!(decode_base_w(&9u32.into(), &3u32.into(), 2).is_err());
    }
}
