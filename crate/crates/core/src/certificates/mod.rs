//! Polynomial certificate schemes, the zero-sum facts behind them, and the
//! harness that checks reductions against their nondeterministic contract.

mod harness;
mod unbounded;
mod zerosum;
mod zkk;

use crate::bits::Witness;
use crate::error::{Error, Result};
use crate::instances::{ProblemInstance, ProblemKind};
use crate::oracles::{check_solution, solve, Budget, Solution};

pub use harness::{
    certified_solve, nppt_contract_check, CertifiedOutcome, ContractChecker, ContractReport, Skipped,
    Violation, ViolationKind,
};
pub use unbounded::{minimize_support, UnboundedScheme};
pub use zerosum::{
    min_solution, minimal_solution_bound_check, zero_sum_check, zero_sum_subsequence, MinimalReport,
    ZeroSumReport,
};
pub use zkk::{zkk_s, ZkkScheme};

/// Raw bit strings up to this length are enumerated outright.
pub const MAX_RAW_CERT_BITS: usize = 20;

/// A verifier together with its certificate length and an honest prover.
pub trait Scheme: Send + Sync {
    fn name(&self) -> &'static str;
    fn kind(&self) -> ProblemKind;
    fn cert_len(&self, inst: &ProblemInstance) -> Result<usize>;
    /// Malformed certificates are rejected, never reported as errors.
    fn verify(&self, inst: &ProblemInstance, cert: &Witness) -> Result<bool>;
    fn synthesize(&self, inst: &ProblemInstance, sol: &Solution) -> Result<Witness>;
    /// Closed-form budget the certificate length must stay within.
    fn budget_bound(&self, inst: &ProblemInstance) -> Result<u64>;
    /// Every well-formed certificate, when listing them is cheaper than the
    /// raw `2^len` strings. Anything outside this list must be rejected.
    fn canonical(&self, _inst: &ProblemInstance) -> Result<Option<Vec<Witness>>> {
        Ok(None)
    }
}

fn expect_kind(scheme: &dyn Scheme, inst: &ProblemInstance) -> Result<()> {
    if inst.kind() == scheme.kind() {
        Ok(())
    } else {
        Err(Error::KindMismatch {
            expected: scheme.kind(),
            found: inst.kind(),
        })
    }
}

/// The chosen index set itself, one bit per item, vector or element.
#[derive(Clone, Copy, Debug)]
pub struct IndicatorScheme(pub ProblemKind);

impl IndicatorScheme {
    pub const KINDS: [ProblemKind; 7] = [
        ProblemKind::SubsetSum,
        ProblemKind::ModularSubsetSum,
        ProblemKind::Knapsack,
        ProblemKind::CyclicSubsetSum,
        ProblemKind::ProductSubsetSum,
        ProblemKind::PermutationSubsetSum,
        ProblemKind::CounterMachine,
    ];

    pub fn new(kind: ProblemKind) -> Result<Self> {
        if Self::KINDS.contains(&kind) {
            Ok(Self(kind))
        } else {
            Err(Error::Unsupported(format!("no index-set certificate for {}", kind.name())))
        }
    }
}

impl Scheme for IndicatorScheme {
    fn name(&self) -> &'static str {
        "indicator"
    }

    fn kind(&self) -> ProblemKind {
        self.0
    }

    fn cert_len(&self, inst: &ProblemInstance) -> Result<usize> {
        expect_kind(self, inst)?;
        Ok(inst.size())
    }

    fn verify(&self, inst: &ProblemInstance, cert: &Witness) -> Result<bool> {
        if cert.len() != self.cert_len(inst)? {
            return Ok(false);
        }
        let idx = (0..cert.len()).filter(|&i| cert.bits()[i]).collect();
        Ok(check_solution(inst, &Solution::Indices(idx)))
    }

    fn synthesize(&self, inst: &ProblemInstance, sol: &Solution) -> Result<Witness> {
        let n = self.cert_len(inst)?;
        let Solution::Indices(idx) = sol else {
            return Err(Error::Internal(format!("expected an index set, got {sol:?}")));
        };
        let mut bits = vec![false; n];
        for &i in idx {
            *bits
                .get_mut(i)
                .ok_or_else(|| Error::Internal(format!("index {i} out of range")))? = true;
        }
        Ok(Witness::new(bits))
    }

    fn budget_bound(&self, inst: &ProblemInstance) -> Result<u64> {
        Ok(self.cert_len(inst)? as u64)
    }
}

/// Looks a scheme up by its command-line name.
pub fn scheme_for(name: &str, kind: ProblemKind) -> Result<Box<dyn Scheme>> {
    match name {
        "unbounded" => Ok(Box::new(UnboundedScheme)),
        "zkk" => Ok(Box::new(ZkkScheme)),
        "indicator" => Ok(Box::new(IndicatorScheme::new(kind)?)),
        other => Err(Error::Unsupported(format!("unknown certificate scheme {other}"))),
    }
}

/// Outcome of checking one scheme on one instance.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SchemeCheck {
    pub scheme: String,
    pub answer: crate::instances::Answer,
    pub cert_len: usize,
    pub budget_bound: u64,
    /// The honest certificate, for yes-instances.
    pub certificate: Option<String>,
    pub certificates_checked: u64,
    pub problems: Vec<String>,
}

impl SchemeCheck {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Completeness on yes-instances, soundness over every certificate on
/// no-instances, and the length budget in both cases.
pub fn check_scheme(scheme: &dyn Scheme, inst: &ProblemInstance, budget: &Budget) -> Result<SchemeCheck> {
    let len = scheme.cert_len(inst)?;
    let bound = scheme.budget_bound(inst)?;
    let verdict = solve(inst, budget)?;
    let mut out = SchemeCheck {
        scheme: scheme.name().to_string(),
        answer: verdict.answer,
        cert_len: len,
        budget_bound: bound,
        certificate: None,
        certificates_checked: 0,
        problems: Vec::new(),
    };
    if len as u64 > bound {
        out.problems.push(format!("certificate length {len} exceeds budget {bound}"));
    }
    match verdict.solution {
        Some(sol) => {
            let cert = scheme.synthesize(inst, &sol)?;
            out.certificates_checked = 1;
            if !scheme.verify(inst, &cert)? {
                out.problems.push(format!("honest certificate {} rejected", cert.to_hex()));
            }
            out.certificate = Some(cert.to_hex());
        }
        None => {
            for cert in all_certificates(scheme, inst, len)? {
                out.certificates_checked += 1;
                if scheme.verify(inst, &cert)? {
                    out.problems.push(format!("no-instance accepts certificate {}", cert.to_hex()));
                }
            }
        }
    }
    Ok(out)
}

/// Raw strings when short enough, the canonical list otherwise.
pub(crate) fn all_certificates(
    scheme: &dyn Scheme,
    inst: &ProblemInstance,
    len: usize,
) -> Result<Box<dyn Iterator<Item = Witness>>> {
    if len <= MAX_RAW_CERT_BITS {
        return Ok(Box::new((0u64..1 << len).map(move |v| Witness::from_u64(v, len))));
    }
    match scheme.canonical(inst)? {
        Some(list) => Ok(Box::new(list.into_iter())),
        None => Err(Error::Resource(format!(
            "{len}-bit certificates and no canonical enumeration for {}",
            scheme.name()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::SubsetSumInstance;

    #[test]
    fn indicator_on_subset_sum() {
        let s = IndicatorScheme::new(ProblemKind::SubsetSum).unwrap();
        let yes: ProblemInstance = SubsetSumInstance::from_u64(&[3, 5, 7], 12).into();
        assert!(check_scheme(&s, &yes, &Budget::default()).unwrap().passed());
        let no: ProblemInstance = SubsetSumInstance::from_u64(&[3, 5, 7], 11).into();
        let r = check_scheme(&s, &no, &Budget::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.certificates_checked, 8);
        assert!(IndicatorScheme::new(ProblemKind::Coloring).is_err());
    }
}
