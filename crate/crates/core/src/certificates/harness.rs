use std::collections::HashMap;

use serde::Serialize;

use super::{all_certificates, Scheme};
use crate::bits::Witness;
use crate::error::{Error, Result};
use crate::instances::{Answer, ProblemInstance};
use crate::oracles::solve;
use crate::reduction::{Reduction, ReductionConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// A yes-instance whose synthesized witness leads to a no-instance.
    Completeness,
    /// A no-instance with some witness leading to a yes-instance.
    Soundness,
    /// The target parameter exceeds the declared bound.
    ParameterBound,
    /// The reduction itself failed.
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub instance: ProblemInstance,
    pub witness: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub instance: ProblemInstance,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ContractReport {
    pub reduction: String,
    pub instances: u64,
    pub yes: u64,
    pub no: u64,
    pub witnesses: u64,
    pub violations: Vec<Violation>,
    pub skipped: Vec<Skipped>,
}

impl ContractReport {
    /// No violations and nothing skipped.
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.skipped.is_empty()
    }

    pub fn merge(&mut self, other: ContractReport) {
        self.instances += other.instances;
        self.yes += other.yes;
        self.no += other.no;
        self.witnesses += other.witnesses;
        self.violations.extend(other.violations);
        self.skipped.extend(other.skipped);
    }
}

/// Checks one reduction instance by instance, caching target verdicts.
pub struct ContractChecker<'a> {
    reduction: &'a dyn Reduction,
    cfg: ReductionConfig,
    max_witness_bits: usize,
    cache: HashMap<ProblemInstance, bool>,
    report: ContractReport,
}

impl<'a> ContractChecker<'a> {
    pub fn new(reduction: &'a dyn Reduction, cfg: ReductionConfig, max_witness_bits: usize) -> Self {
        Self {
            reduction,
            cfg,
            max_witness_bits,
            cache: HashMap::new(),
            report: ContractReport {
                reduction: reduction.name(),
                ..Default::default()
            },
        }
    }

    fn target_yes(&mut self, target: ProblemInstance) -> Result<bool> {
        if let Some(&v) = self.cache.get(&target) {
            return Ok(v);
        }
        let v = solve(&target, &self.cfg.budget)?.is_yes();
        self.cache.insert(target, v);
        Ok(v)
    }

    fn violation(&mut self, kind: ViolationKind, inst: &ProblemInstance, w: Option<&Witness>, detail: String) {
        self.report.violations.push(Violation {
            kind,
            instance: inst.clone(),
            witness: w.map(Witness::to_hex),
            detail,
        });
    }

    fn skip(&mut self, inst: &ProblemInstance, reason: String) {
        self.report.skipped.push(Skipped {
            instance: inst.clone(),
            reason,
        });
    }

    /// Runs `w` through the reduction; `None` when a violation or skip was
    /// recorded instead.
    fn target_answer(&mut self, inst: &ProblemInstance, w: &Witness) -> Option<bool> {
        self.report.witnesses += 1;
        let target = match self.reduction.apply(inst, w, &self.cfg) {
            Ok(app) => app.target,
            Err(e @ Error::ParameterBound { .. }) => {
                self.violation(ViolationKind::ParameterBound, inst, Some(w), e.to_string());
                return None;
            }
            Err(e) => {
                self.violation(ViolationKind::Error, inst, Some(w), e.to_string());
                return None;
            }
        };
        match self.target_yes(target) {
            Ok(v) => Some(v),
            Err(e) => {
                self.skip(inst, format!("target oracle: {e}"));
                None
            }
        }
    }

    pub fn check(&mut self, inst: &ProblemInstance) {
        self.report.instances += 1;
        let verdict = match solve(inst, &self.cfg.budget) {
            Ok(v) => v,
            Err(e) => return self.skip(inst, format!("source oracle: {e}")),
        };
        match verdict.solution {
            Some(sol) => {
                self.report.yes += 1;
                let w = match self.reduction.synthesize(inst, &sol, &self.cfg) {
                    Ok(w) => w,
                    Err(e) => return self.violation(ViolationKind::Error, inst, None, e.to_string()),
                };
                if self.target_answer(inst, &w) == Some(false) {
                    self.violation(
                        ViolationKind::Completeness,
                        inst,
                        Some(&w),
                        "synthesized witness maps a yes-instance to a no-instance".into(),
                    );
                }
            }
            None => {
                self.report.no += 1;
                let len = match self.reduction.witness_len(inst, &self.cfg) {
                    Ok(l) => l,
                    Err(e) => return self.violation(ViolationKind::Error, inst, None, e.to_string()),
                };
                if len > self.max_witness_bits {
                    return self.skip(inst, format!("{len}-bit witnesses exceed the enumeration budget"));
                }
                let mut w = Witness::zeros(len);
                for v in 0u64..1 << len {
                    w.set_from_u64(v);
                    let skipped = self.report.skipped.len();
                    match self.target_answer(inst, &w) {
                        Some(true) => {
                            self.violation(
                                ViolationKind::Soundness,
                                inst,
                                Some(&w),
                                "witness maps a no-instance to a yes-instance".into(),
                            );
                            break;
                        }
                        None if self.report.skipped.len() > skipped => break,
                        _ => {}
                    }
                }
            }
        }
    }

    pub fn report(&self) -> &ContractReport {
        &self.report
    }

    pub fn into_report(self) -> ContractReport {
        self.report
    }
}

/// Checks both directions of the nondeterministic contract on every instance
/// of `family`: the synthesized witness keeps yes-instances yes, and no
/// witness at all turns a no-instance into a yes-instance.
pub fn nppt_contract_check(
    reduction: &dyn Reduction,
    family: impl IntoIterator<Item = ProblemInstance>,
    cfg: &ReductionConfig,
    max_witness_bits: usize,
) -> ContractReport {
    let mut checker = ContractChecker::new(reduction, cfg.clone(), max_witness_bits);
    for inst in family {
        checker.check(&inst);
    }
    checker.into_report()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifiedOutcome {
    pub answer: Answer,
    pub witness: Option<String>,
    pub certificate: Option<String>,
    pub guesses: u64,
}

/// Decides `inst` by guessing a reduction witness and then a certificate of
/// the target, accepting iff the scheme's verifier accepts some pair.
pub fn certified_solve(
    inst: &ProblemInstance,
    chain: &dyn Reduction,
    scheme: &dyn Scheme,
    cfg: &ReductionConfig,
    max_bits: usize,
) -> Result<CertifiedOutcome> {
    if chain.target_kind() != scheme.kind() {
        return Err(Error::KindMismatch {
            expected: scheme.kind(),
            found: chain.target_kind(),
        });
    }
    let len = chain.witness_len(inst, cfg)?;
    if len > max_bits {
        return Err(Error::Resource(format!("{len}-bit reduction witnesses")));
    }
    let mut guesses = 0;
    for v in 0u64..1 << len {
        let w = Witness::from_u64(v, len);
        let target = chain.apply(inst, &w, cfg)?.target;
        let cert_len = scheme.cert_len(&target)?;
        for cert in all_certificates(scheme, &target, cert_len)? {
            guesses += 1;
            if scheme.verify(&target, &cert)? {
                return Ok(CertifiedOutcome {
                    answer: Answer::Yes,
                    witness: Some(w.to_hex()),
                    certificate: Some(cert.to_hex()),
                    guesses,
                });
            }
        }
    }
    Ok(CertifiedOutcome {
        answer: Answer::No,
        witness: None,
        certificate: None,
        guesses,
    })
}
