//! Permutations, high-order permutations and the group U_q.

mod landau;
mod perm;
mod uq;

pub use landau::{landau_function, landau_permutation, LandauMethod};
pub use perm::Permutation;
pub use uq::{gamma, run_check_uq, uq_mul, ChiContext, GammaHatContext, UqElement};
