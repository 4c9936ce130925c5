//! Bit strings, fixed-width field layouts and small bit-length helpers.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Number of bits needed to write `x` in binary, i.e. `ceil(log2(x + 1))`.
pub fn bit_length(x: &BigUint) -> u64 {
    x.bits()
}

pub fn bit_length_u64(x: u64) -> u64 {
    u64::from(u64::BITS - x.leading_zeros())
}

/// Field width for a value ranging over `[0, max]`.
pub fn width_for(max: &BigUint) -> usize {
    bit_length(max) as usize
}

/// A finite bit sequence, most significant bit first within every field.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Witness {
    bits: Vec<bool>,
}

impl Witness {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            bits: vec![false; len],
        }
    }

    /// The `len` low bits of `value`, big-endian. `len` may exceed 64, in which
    /// case the leading bits are zero.
    pub fn from_u64(value: u64, len: usize) -> Self {
        let bits = (0..len)
            .rev()
            .map(|i| i < 64 && (value >> i) & 1 == 1)
            .collect();
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn concat(&self, other: &Witness) -> Witness {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        Witness { bits }
    }

    pub fn split_at(&self, at: usize) -> (Witness, Witness) {
        let (a, b) = self.bits.split_at(at.min(self.bits.len()));
        (Witness::new(a.to_vec()), Witness::new(b.to_vec()))
    }

    /// Overwrites the contents with the `len` low bits of `value`; used by
    /// enumeration loops to avoid reallocating.
    pub fn set_from_u64(&mut self, value: u64) {
        let len = self.bits.len();
        for (pos, bit) in self.bits.iter_mut().enumerate() {
            let shift = len - 1 - pos;
            *bit = shift < 64 && (value >> shift) & 1 == 1;
        }
    }

    /// Hex form: bits packed into nibbles, first bit is the high bit of the
    /// first digit, the final digit is zero-padded on the right.
    pub fn to_hex(&self) -> String {
        self.bits
            .chunks(4)
            .map(|chunk| {
                let mut nibble = 0u32;
                for i in 0..4 {
                    nibble = (nibble << 1) | u32::from(chunk.get(i).copied().unwrap_or(false));
                }
                char::from_digit(nibble, 16).expect("nibble below 16")
            })
            .collect()
    }

    /// Parses [`Witness::to_hex`] output for a witness of exactly `len` bits.
    pub fn from_hex(hex: &str, len: usize) -> Result<Self> {
        let digits = len.div_ceil(4);
        if hex.len() != digits {
            return Err(Error::WitnessLength {
                expected: len,
                found: hex.len() * 4,
            });
        }
        let mut bits = Vec::with_capacity(digits * 4);
        for c in hex.chars() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| Error::MalformedWitness(format!("'{c}' is not a hex digit")))?;
            bits.extend((0..4).rev().map(|i| (nibble >> i) & 1 == 1));
        }
        if bits[len..].iter().any(|&b| b) {
            return Err(Error::MalformedWitness(
                "padding bits after the last witness bit must be zero".into(),
            ));
        }
        bits.truncate(len);
        Ok(Self { bits })
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Consecutive fixed-width unsigned fields.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldLayout {
    widths: Vec<usize>,
}

impl FieldLayout {
    pub fn new(widths: Vec<usize>) -> Self {
        Self { widths }
    }

    /// One field per maximum, each wide enough for `[0, max]`.
    pub fn for_maxima<'a>(maxima: impl IntoIterator<Item = &'a BigUint>) -> Self {
        Self::new(maxima.into_iter().map(width_for).collect())
    }

    pub fn widths(&self) -> &[usize] {
        &self.widths
    }

    pub fn len(&self) -> usize {
        self.widths.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn decode(&self, witness: &Witness) -> Result<Vec<BigUint>> {
        if witness.len() != self.len() {
            return Err(Error::WitnessLength {
                expected: self.len(),
                found: witness.len(),
            });
        }
        let mut out = Vec::with_capacity(self.widths.len());
        let mut pos = 0;
        for &w in &self.widths {
            let mut v = BigUint::zero();
            for &b in &witness.bits()[pos..pos + w] {
                v <<= 1u32;
                if b {
                    v += 1u32;
                }
            }
            out.push(v);
            pos += w;
        }
        Ok(out)
    }

    pub fn encode(&self, values: &[BigUint]) -> Result<Witness> {
        if values.len() != self.widths.len() {
            return Err(Error::Internal(format!(
                "{} values for {} fields",
                values.len(),
                self.widths.len()
            )));
        }
        let mut bits = Vec::with_capacity(self.len());
        for (v, &w) in values.iter().zip(&self.widths) {
            if bit_length(v) as usize > w {
                return Err(Error::Internal(format!("value {v} does not fit {w} bits")));
            }
            bits.extend((0..w).rev().map(|i| v.bit(i as u64)));
        }
        Ok(Witness::new(bits))
    }
}
