//! The semidirect product U_q = Z_q^2 ⋊ Z_2 and its embedding into permutations.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{landau_permutation, LandauMethod, Permutation};
use crate::error::{Error, Result};

/// `((x, y), z)` with `x, y` mod `q` and `z` mod 2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UqElement {
    pub x: u64,
    pub y: u64,
    pub z: u8,
    pub q: u64,
}

impl UqElement {
    pub fn new(x: u64, y: u64, z: u8, q: u64) -> Result<Self> {
        if q == 0 || x >= q || y >= q || z > 1 {
            return Err(Error::Precondition(format!("(({x},{y}),{z}) is not an element of U_{q}")));
        }
        Ok(Self { x, y, z, q })
    }

    pub fn neutral(q: u64) -> Self {
        Self { x: 0, y: 0, z: 0, q }
    }

    /// Iterates over all `2 q^2` elements.
    pub fn all(q: u64) -> impl Iterator<Item = UqElement> {
        (0..q).flat_map(move |x| (0..q).flat_map(move |y| (0..2u8).map(move |z| UqElement { x, y, z, q })))
    }

    pub fn mul(&self, other: &UqElement) -> Result<UqElement> {
        if self.q != other.q {
            return Err(Error::ModulusMismatch(self.q, other.q));
        }
        let q = self.q;
        let (x2, y2) = if self.z == 0 { (other.x, other.y) } else { (other.y, other.x) };
        Ok(UqElement {
            x: (self.x + x2) % q,
            y: (self.y + y2) % q,
            z: self.z ^ other.z,
            q,
        })
    }
}

impl fmt::Debug for UqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({},{}),{})", self.x, self.y, self.z)
    }
}

pub fn uq_mul(a: &UqElement, b: &UqElement) -> Result<UqElement> {
    a.mul(b)
}

/// Γ(-1) = ((1,0),1), Γ(0) = ((0,0),0), Γ(1) = ((0,1),1).
pub fn gamma(b: i8, q: u64) -> Result<UqElement> {
    if q < 2 {
        return Err(Error::Precondition(format!("q = {q} must be at least 2")));
    }
    match b {
        -1 => Ok(UqElement { x: 1, y: 0, z: 1, q }),
        0 => Ok(UqElement::neutral(q)),
        1 => Ok(UqElement { x: 0, y: 1, z: 1, q }),
        _ => Err(Error::Precondition(format!("{b} is not in {{-1,0,1}}"))),
    }
}

/// Product of Γ over the sequence and whether it has the form ((0,n'),0).
pub fn run_check_uq(seq: &[i8], q: u64) -> Result<(UqElement, bool)> {
    if q <= seq.len() as u64 {
        return Err(Error::Precondition(format!("q = {q} must exceed the length {}", seq.len())));
    }
    let mut acc = UqElement::neutral(q);
    for &b in seq {
        acc = acc.mul(&gamma(b, q)?)?;
    }
    let is_run_form = acc.x == 0 && acc.z == 0;
    Ok((acc, is_run_form))
}

/// The generators π_0, π_1, π_z on `[r] x {0,1}` (point `(i, j)` is `i + j r`)
/// and the embedding χ of U_q they induce.
#[derive(Clone, Debug)]
pub struct ChiContext {
    q: u64,
    r: usize,
    pi0: Permutation,
    pi1: Permutation,
    piz: Permutation,
}

impl ChiContext {
    pub fn new(q: u64, carrier: &Permutation) -> Result<Self> {
        let order = carrier.order();
        if order != q {
            return Err(Error::Precondition(format!("carrier has order {order}, expected {q}")));
        }
        let r = carrier.degree();
        let layer = |active: usize| {
            let images = (0..2 * r)
                .map(|p| {
                    let (i, j) = (p % r, p / r);
                    if j == active {
                        carrier.apply(i) + j * r
                    } else {
                        p
                    }
                })
                .collect();
            Permutation::new(images).expect("layer action is a bijection")
        };
        let piz = Permutation::new((0..2 * r).map(|p| (p + r) % (2 * r)).collect()).expect("swap is a bijection");
        Ok(Self {
            q,
            r,
            pi0: layer(0),
            pi1: layer(1),
            piz,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Degree of the image group, `2r`.
    pub fn degree(&self) -> usize {
        2 * self.r
    }

    pub fn generators(&self) -> (&Permutation, &Permutation, &Permutation) {
        (&self.pi0, &self.pi1, &self.piz)
    }

    /// χ(((x,y),z)) = π_1^x ∘ π_0^y ∘ π_z^z, so that χ((0,1),0) = π_0,
    /// χ((1,0),0) = π_1 and χ((0,0),1) = π_z.
    pub fn chi(&self, e: &UqElement) -> Result<Permutation> {
        if e.q != self.q {
            return Err(Error::ModulusMismatch(e.q, self.q));
        }
        let mut p = self.pi1.pow(e.x).compose_unchecked(&self.pi0.pow(e.y));
        if e.z == 1 {
            p = p.compose_unchecked(&self.piz);
        }
        Ok(p)
    }
}

/// Everything needed to map {-1,0,1} sequences of length at most `n` into
/// permutations: Γ̂ = χ ∘ Γ and the distinguished π = χ((0,1),0).
#[derive(Clone, Debug)]
pub struct GammaHatContext {
    n: u64,
    chi: ChiContext,
    pi: Permutation,
    images: [Permutation; 3],
    powers: HashMap<Permutation, u64>,
}

impl GammaHatContext {
    pub fn new(n: u64, method: LandauMethod) -> Result<Self> {
        let (carrier, _) = landau_permutation(n.max(1), method);
        let q = carrier.order();
        let chi = ChiContext::new(q, &carrier)?;
        let images = [
            chi.chi(&gamma(-1, q)?)?,
            chi.chi(&gamma(0, q)?)?,
            chi.chi(&gamma(1, q)?)?,
        ];
        let pi = chi.chi(&UqElement::new(0, 1, 0, q)?)?;
        let mut powers = HashMap::new();
        let mut p = Permutation::identity(chi.degree());
        for e in 0..q {
            powers.insert(p.clone(), e);
            p = p.compose_unchecked(&pi);
        }
        Ok(Self {
            n,
            chi,
            pi,
            images,
            powers,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn chi(&self) -> &ChiContext {
        &self.chi
    }

    pub fn pi(&self) -> &Permutation {
        &self.pi
    }

    /// Degree of every Γ̂ image.
    pub fn degree(&self) -> usize {
        self.chi.degree()
    }

    pub fn gamma_hat(&self, b: i8) -> Result<&Permutation> {
        match b {
            -1..=1 => Ok(&self.images[(b + 1) as usize]),
            _ => Err(Error::Precondition(format!("{b} is not in {{-1,0,1}}"))),
        }
    }

    pub fn pi_power(&self, e: u64) -> Permutation {
        self.pi.pow(e)
    }

    /// `Some(e)` with `e < q` if `p = π^e`.
    pub fn power_exponent(&self, p: &Permutation) -> Option<u64> {
        self.powers.get(p).copied()
    }

    pub fn product(&self, seq: &[i8]) -> Result<Permutation> {
        let mut acc = Permutation::identity(self.degree());
        for &b in seq {
            acc = acc.compose_unchecked(self.gamma_hat(b)?);
        }
        Ok(acc)
    }

    /// Whether the Γ̂-product of `seq` equals π^{n'} for some n' in [0, n].
    pub fn run_check(&self, seq: &[i8]) -> Result<Option<u64>> {
        if seq.len() as u64 > self.n {
            return Err(Error::Precondition(format!("sequence longer than n = {}", self.n)));
        }
        let p = self.product(seq)?;
        Ok(self.power_exponent(&p).filter(|&e| e <= self.n))
    }
}
