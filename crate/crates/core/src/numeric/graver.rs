use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How thoroughly "no proper nonempty subsequence sums to zero" was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Validation {
    /// Every subsequence.
    Exhaustive,
    /// Random subsequences plus the prefix-structure argument.
    Sampled { samples: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraverSequence {
    pub k: usize,
    pub vectors: Vec<Vec<i8>>,
    pub validation: Validation,
}

/// Subsets of a sequence this long or shorter are enumerated exhaustively.
pub const EXHAUSTIVE_LEN: usize = 16;
const SAMPLES: u64 = 1 << 16;

/// `2^k` vectors in `{-1,0,1}^k` summing to zero, no proper nonempty
/// subsequence of which sums to zero.
///
/// The vectors are the increments of a `k`-bit binary counter from 0 up to
/// `2^k - 1`, followed by the all `-1` vector that returns it to 0. Every
/// partial sum is the binary expansion of the number of steps taken so far.
pub fn graver_sequence(k: usize) -> Result<GraverSequence> {
    if k == 0 {
        return Err(Error::Precondition("graver sequence needs k >= 1".into()));
    }
    if k >= 31 {
        return Err(Error::Unsupported(format!("graver sequence of length 2^{k}")));
    }
    let vectors = binary_counter(k);
    match validate(k, &vectors) {
        Ok(validation) => Ok(GraverSequence {
            k,
            vectors,
            validation,
        }),
        Err(first) => fallback(k).ok_or_else(|| {
            Error::Construction(format!("binary counter sequence for k={k} failed validation: {first}"))
        }),
    }
}

fn binary_counter(k: usize) -> Vec<Vec<i8>> {
    let mut out = Vec::with_capacity(1 << k);
    for value in 0u64..(1 << k) - 1 {
        let next = value + 1;
        out.push(
            (0..k)
                .map(|j| match ((value >> j) & 1, (next >> j) & 1) {
                    (0, 1) => 1,
                    (1, 0) => -1,
                    _ => 0,
                })
                .collect(),
        );
    }
    out.push(vec![-1; k]);
    out
}

/// Checks the three properties, returning the validation level achieved.
pub fn validate(k: usize, vectors: &[Vec<i8>]) -> Result<Validation, String> {
    if vectors.len() != 1 << k {
        return Err(format!("length {} instead of 2^{k}", vectors.len()));
    }
    if vectors.iter().any(|v| v.len() != k || v.iter().any(|x| !(-1..=1).contains(x))) {
        return Err("entry out of {-1,0,1}^k".into());
    }
    let total = subset_sum(vectors, k, (0..vectors.len()).collect::<Vec<_>>().as_slice());
    if total.iter().any(|&s| s != 0) {
        return Err("total is not zero".into());
    }
    if vectors.len() <= EXHAUSTIVE_LEN {
        let n = vectors.len();
        let full = (1u64 << n) - 1;
        for mask in 1..full {
            let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if subset_sum(vectors, k, &idx).iter().all(|&s| s == 0) {
                return Err(format!("proper subsequence {idx:?} sums to zero"));
            }
        }
        return Ok(Validation::Exhaustive);
    }
    // Partial sums running over all of {0,1}^k exactly once is what makes
    // the binary counter work; check it, then sample.
    let mut seen = vec![false; 1 << k];
    let mut sum = vec![0i64; k];
    for v in &vectors[..vectors.len() - 1] {
        for (s, &x) in sum.iter_mut().zip(v) {
            *s += i64::from(x);
        }
        if sum.iter().any(|&s| !(0..=1).contains(&s)) {
            return Err("partial sum leaves {0,1}^k".into());
        }
        let code = sum.iter().enumerate().fold(0usize, |acc, (j, &s)| acc | (s as usize) << j);
        if std::mem::replace(&mut seen[code], true) {
            return Err("partial sums repeat".into());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
    let n = vectors.len();
    for _ in 0..SAMPLES {
        let size = rng.gen_range(1..n);
        let idx = sample(&mut rng, n, size).into_vec();
        if subset_sum(vectors, k, &idx).iter().all(|&s| s == 0) {
            return Err(format!("sampled proper subsequence of size {size} sums to zero"));
        }
    }
    Ok(Validation::Sampled { samples: SAMPLES })
}

fn subset_sum(vectors: &[Vec<i8>], k: usize, idx: &[usize]) -> Vec<i64> {
    let mut s = vec![0i64; k];
    for &i in idx {
        for (acc, &x) in s.iter_mut().zip(&vectors[i]) {
            *acc += i64::from(x);
        }
    }
    s
}

/// Exhaustive search over sequences of length `2^k` for tiny `k`.
fn fallback(k: usize) -> Option<GraverSequence> {
    if k > 2 {
        return None;
    }
    let n = 1usize << k;
    let alphabet: Vec<Vec<i8>> = (0..3usize.pow(k as u32))
        .map(|mut c| {
            (0..k)
                .map(|_| {
                    let x = (c % 3) as i8 - 1;
                    c /= 3;
                    x
                })
                .collect()
        })
        .collect();
    let mut choice = vec![0usize; n];
    loop {
        let vectors: Vec<Vec<i8>> = choice.iter().map(|&c| alphabet[c].clone()).collect();
        if let Ok(validation) = validate(k, &vectors) {
            return Some(GraverSequence {
                k,
                vectors,
                validation,
            });
        }
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            choice[i] += 1;
            if choice[i] < alphabet.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}
