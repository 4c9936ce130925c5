//! The Subset Sum, Knapsack and 0-1 ILP equivalence chain.

mod base;
mod chain;
mod graver;

pub use base::{decode_base_w, encode_base_w, encode_digits};
pub use chain::{
    gadget_rows, IlpToMonotone, KnapsackToSs, MonotoneToSs, MonotoneToZeroSum, SsToKnapsack, SsToMonotone, SsToZq,
    ZeroSumToIlp, ZqToSs,
};
pub use graver::{graver_sequence, validate as validate_graver, GraverSequence, Validation, EXHAUSTIVE_LEN};
