//! The reduction interface, composition and the registry of named reductions.
//!
//! A reduction maps a source instance plus a witness of `witness_len` bits to
//! a target instance. Transformations consume no witness
//! (`witness_len == 0`). `transform` is total: every bit string of the
//! declared length yields some instance, decoded values outside their range
//! produce a trivial no-instance.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::Witness;
use crate::error::{Error, Result};
use crate::instances::{
    exceeds_exponential, trivial_instance, Answer, ProblemInstance, ProblemKind, TRIVIAL_PARAMETER,
};
use crate::oracles::{solve, Budget, Solution};

/// When a reduction may resolve its input outright instead of transforming it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GuardPolicy {
    /// Solve the source directly when `2^k <= n`: the oracle then runs in
    /// time polynomial in `n`, and a trivial instance of the right answer is
    /// emitted.
    #[default]
    LogTradeoff,
    /// Always run the construction.
    Off,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionConfig {
    pub guard: GuardPolicy,
    pub budget: Budget,
}

impl ReductionConfig {
    pub fn unguarded() -> Self {
        Self {
            guard: GuardPolicy::Off,
            ..Self::default()
        }
    }
}

/// Parameters around one application.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterReport {
    pub before: u64,
    pub after: u64,
    pub bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Application {
    pub target: ProblemInstance,
    pub params: ParameterReport,
}

pub trait Reduction: Send + Sync {
    fn name(&self) -> String;
    fn source_kind(&self) -> ProblemKind;
    fn target_kind(&self) -> ProblemKind;
    fn witness_len(&self, inst: &ProblemInstance, cfg: &ReductionConfig) -> Result<usize>;
    /// Expects a witness of exactly `witness_len` bits.
    fn transform(&self, inst: &ProblemInstance, w: &Witness, cfg: &ReductionConfig) -> Result<ProblemInstance>;
    /// The witness leading to a yes-instance, given a solution of the source.
    fn synthesize(&self, inst: &ProblemInstance, sol: &Solution, cfg: &ReductionConfig) -> Result<Witness>;
    /// Upper bound on the target parameter for this source instance and witness.
    fn parameter_bound(&self, inst: &ProblemInstance, w: &Witness, cfg: &ReductionConfig) -> Result<u64>;

    fn is_transformation(&self) -> bool {
        false
    }

    /// `transform` with the length and parameter checks.
    fn apply(&self, inst: &ProblemInstance, w: &Witness, cfg: &ReductionConfig) -> Result<Application> {
        check_kind(self.source_kind(), inst)?;
        let expected = self.witness_len(inst, cfg)?;
        if w.len() != expected {
            return Err(Error::WitnessLength {
                expected,
                found: w.len(),
            });
        }
        let target = self.transform(inst, w, cfg)?;
        let params = ParameterReport {
            before: inst.parameter(),
            after: target.parameter(),
            bound: self.parameter_bound(inst, w, cfg)?,
        };
        if params.after > params.bound {
            return Err(Error::ParameterBound {
                target: params.after,
                bound: params.bound,
            });
        }
        Ok(Application { target, params })
    }
}

/// The typed source instance inside a [`Construction`] method.
macro_rules! source {
    ($inst:expr, $variant:ident) => {
        match $inst {
            $crate::instances::ProblemInstance::$variant(x) => x,
            other => {
                return Err($crate::error::Error::KindMismatch {
                    expected: Self::SOURCE,
                    found: other.kind(),
                })
            }
        }
    };
}
pub(crate) use source;

pub(crate) fn check_kind(expected: ProblemKind, inst: &ProblemInstance) -> Result<()> {
    if inst.kind() == expected {
        Ok(())
    } else {
        Err(Error::KindMismatch {
            expected,
            found: inst.kind(),
        })
    }
}

/// A concrete construction; the guard is layered on top by the blanket
/// [`Reduction`] impl.
pub trait Construction: Send + Sync {
    const NAME: &'static str;
    const SOURCE: ProblemKind;
    const TARGET: ProblemKind;
    /// No witness at all.
    const TRANSFORMATION: bool;

    fn witness_len(&self, inst: &ProblemInstance) -> Result<usize>;
    fn transform(&self, inst: &ProblemInstance, w: &Witness) -> Result<ProblemInstance>;
    fn synthesize(&self, inst: &ProblemInstance, sol: &Solution) -> Result<Witness>;
    /// Bound on the target parameter, from the source instance alone.
    fn bound(&self, inst: &ProblemInstance) -> Result<u64>;

    /// Whether the trade-off guard resolves `inst` directly.
    fn guard_fires(&self, inst: &ProblemInstance) -> bool {
        exceeds_exponential(inst.parameter(), inst.size())
    }
}

fn guarded<C: Construction>(c: &C, inst: &ProblemInstance, cfg: &ReductionConfig) -> bool {
    cfg.guard == GuardPolicy::LogTradeoff && c.guard_fires(inst)
}

impl<C: Construction> Reduction for C {
    fn name(&self) -> String {
        C::NAME.to_string()
    }

    fn source_kind(&self) -> ProblemKind {
        C::SOURCE
    }

    fn target_kind(&self) -> ProblemKind {
        C::TARGET
    }

    fn is_transformation(&self) -> bool {
        C::TRANSFORMATION
    }

    fn witness_len(&self, inst: &ProblemInstance, cfg: &ReductionConfig) -> Result<usize> {
        check_kind(C::SOURCE, inst)?;
        if guarded(self, inst, cfg) {
            return Ok(0);
        }
        Construction::witness_len(self, inst)
    }

    fn transform(&self, inst: &ProblemInstance, w: &Witness, cfg: &ReductionConfig) -> Result<ProblemInstance> {
        check_kind(C::SOURCE, inst)?;
        if guarded(self, inst, cfg) {
            let answer = solve(inst, &cfg.budget)?.answer;
            return Ok(trivial_instance(C::TARGET, answer));
        }
        Construction::transform(self, inst, w)
    }

    fn synthesize(&self, inst: &ProblemInstance, sol: &Solution, cfg: &ReductionConfig) -> Result<Witness> {
        check_kind(C::SOURCE, inst)?;
        if guarded(self, inst, cfg) || C::TRANSFORMATION {
            return Ok(Witness::empty());
        }
        Construction::synthesize(self, inst, sol)
    }

    fn parameter_bound(&self, inst: &ProblemInstance, _w: &Witness, cfg: &ReductionConfig) -> Result<u64> {
        check_kind(C::SOURCE, inst)?;
        if guarded(self, inst, cfg) {
            return Ok(TRIVIAL_PARAMETER);
        }
        Ok(self.bound(inst)?.max(TRIVIAL_PARAMETER))
    }
}

/// Does nothing; the unit of composition.
#[derive(Clone, Copy, Debug)]
pub struct Identity(pub ProblemKind);

impl Reduction for Identity {
    fn name(&self) -> String {
        "identity".into()
    }

    fn source_kind(&self) -> ProblemKind {
        self.0
    }

    fn target_kind(&self) -> ProblemKind {
        self.0
    }

    fn is_transformation(&self) -> bool {
        true
    }

    fn witness_len(&self, inst: &ProblemInstance, _: &ReductionConfig) -> Result<usize> {
        check_kind(self.0, inst)?;
        Ok(0)
    }

    fn transform(&self, inst: &ProblemInstance, _: &Witness, _: &ReductionConfig) -> Result<ProblemInstance> {
        check_kind(self.0, inst)?;
        Ok(inst.clone())
    }

    fn synthesize(&self, _: &ProblemInstance, _: &Solution, _: &ReductionConfig) -> Result<Witness> {
        Ok(Witness::empty())
    }

    fn parameter_bound(&self, inst: &ProblemInstance, _: &Witness, _: &ReductionConfig) -> Result<u64> {
        Ok(inst.parameter())
    }
}

/// Largest first-stage witness for which [`Composed`] enumerates every
/// intermediate instance to size the second-stage field.
pub const MAX_COMPOSE_ENUMERATION_BITS: usize = 20;

/// `second ∘ first`. The witness is the first witness followed by a field as
/// wide as the longest second-stage witness over all first witnesses; the
/// actual second witness occupies its prefix and the remaining bits must be
/// zero.
#[derive(Clone)]
pub struct Composed {
    first: Arc<dyn Reduction>,
    second: Arc<dyn Reduction>,
}

impl Composed {
    pub fn new(first: Arc<dyn Reduction>, second: Arc<dyn Reduction>) -> Result<Self> {
        if first.target_kind() != second.source_kind() {
            return Err(Error::KindMismatch {
                expected: second.source_kind(),
                found: first.target_kind(),
            });
        }
        Ok(Self { first, second })
    }

    /// Width of the second-stage field.
    fn second_field(&self, inst: &ProblemInstance, cfg: &ReductionConfig) -> Result<usize> {
        if self.second.is_transformation() {
            return Ok(0);
        }
        let len1 = self.first.witness_len(inst, cfg)?;
        if len1 > MAX_COMPOSE_ENUMERATION_BITS {
            return Err(Error::Resource(format!(
                "composing over a {len1}-bit first witness"
            )));
        }
        let mut w1 = Witness::zeros(len1);
        let mut widest = 0;
        for value in 0..1u64 << len1 {
            w1.set_from_u64(value);
            let mid = self.first.transform(inst, &w1, cfg)?;
            widest = widest.max(self.second.witness_len(&mid, cfg)?);
        }
        Ok(widest)
    }
}

impl Reduction for Composed {
    fn name(&self) -> String {
        format!("{}+{}", self.first.name(), self.second.name())
    }

    fn source_kind(&self) -> ProblemKind {
        self.first.source_kind()
    }

    fn target_kind(&self) -> ProblemKind {
        self.second.target_kind()
    }

    fn is_transformation(&self) -> bool {
        self.first.is_transformation() && self.second.is_transformation()
    }

    fn witness_len(&self, inst: &ProblemInstance, cfg: &ReductionConfig) -> Result<usize> {
        Ok(self.first.witness_len(inst, cfg)? + self.second_field(inst, cfg)?)
    }

    fn transform(&self, inst: &ProblemInstance, w: &Witness, cfg: &ReductionConfig) -> Result<ProblemInstance> {
        let len1 = self.first.witness_len(inst, cfg)?;
        let (w1, rest) = w.split_at(len1);
        let mid = self.first.transform(inst, &w1, cfg)?;
        let len2 = self.second.witness_len(&mid, cfg)?;
        if rest.len() < len2 || rest.bits()[len2..].iter().any(|&b| b) {
            return Ok(trivial_instance(self.target_kind(), Answer::No));
        }
        let (w2, _) = rest.split_at(len2);
        self.second.transform(&mid, &w2, cfg)
    }

    fn synthesize(&self, inst: &ProblemInstance, sol: &Solution, cfg: &ReductionConfig) -> Result<Witness> {
        let w1 = self.first.synthesize(inst, sol, cfg)?;
        let mid = self.first.transform(inst, &w1, cfg)?;
        let field = self.second_field(inst, cfg)?;
        let w2 = if self.second.witness_len(&mid, cfg)? == 0 {
            Witness::empty()
        } else {
            let verdict = solve(&mid, &cfg.budget)?;
            let mid_sol = verdict
                .solution
                .ok_or_else(|| Error::Internal(format!("{} lost a yes-instance", self.first.name())))?;
            self.second.synthesize(&mid, &mid_sol, cfg)?
        };
        Ok(w1.concat(&w2).concat(&Witness::zeros(field - w2.len())))
    }

    fn parameter_bound(&self, inst: &ProblemInstance, w: &Witness, cfg: &ReductionConfig) -> Result<u64> {
        let len1 = self.first.witness_len(inst, cfg)?;
        let (w1, rest) = w.split_at(len1);
        let mid = self.first.transform(inst, &w1, cfg)?;
        let len2 = self.second.witness_len(&mid, cfg)?;
        let (w2, _) = rest.split_at(len2);
        Ok(self.second.parameter_bound(&mid, &w2, cfg)?.max(TRIVIAL_PARAMETER))
    }
}

/// A broken Subset Sum transformation (target shifted by one) used to show
/// the harness detects violations.
#[derive(Clone, Copy, Debug)]
pub struct ShiftedTarget;

impl Construction for ShiftedTarget {
    const NAME: &'static str = "corrupted-ss-shift";
    const SOURCE: ProblemKind = ProblemKind::SubsetSum;
    const TARGET: ProblemKind = ProblemKind::SubsetSum;
    const TRANSFORMATION: bool = true;

    fn witness_len(&self, _: &ProblemInstance) -> Result<usize> {
        Ok(0)
    }

    fn transform(&self, inst: &ProblemInstance, _: &Witness) -> Result<ProblemInstance> {
        let s = source!(inst, SubsetSum);
        let mut out = s.clone();
        out.target += 1u32;
        Ok(out.into())
    }

    fn synthesize(&self, _: &ProblemInstance, _: &Solution) -> Result<Witness> {
        Ok(Witness::empty())
    }

    fn bound(&self, inst: &ProblemInstance) -> Result<u64> {
        Ok(inst.parameter() + 1)
    }
}

/// All named reductions exposed on the command line.
pub fn registry() -> Vec<Arc<dyn Reduction>> {
    use crate::numeric::*;
    use crate::pathwidth::*;
    use crate::sat::*;
    vec![
        Arc::new(SsToKnapsack),
        Arc::new(KnapsackToSs),
        Arc::new(SsToMonotone),
        Arc::new(MonotoneToSs),
        Arc::new(MonotoneToZeroSum),
        Arc::new(ZeroSumToIlp),
        Arc::new(IlpToMonotone),
        Arc::new(SsToZq),
        Arc::new(ZqToSs),
        Arc::new(ColoringToCm),
        Arc::new(CmToPermSs::default()),
        Arc::new(TsatToSs),
        Arc::new(AndSatToScheduling),
        Arc::new(CnfToColoring),
        Arc::new(ShiftedTarget),
    ]
}

/// Looks a reduction up by name; `a+b` composes.
pub fn lookup(name: &str) -> Result<Arc<dyn Reduction>> {
    let mut parts = name.split('+');
    let first = parts.next().unwrap_or_default();
    let mut acc = single(first)?;
    for part in parts {
        acc = Arc::new(Composed::new(acc, single(part)?)?);
    }
    Ok(acc)
}

fn single(name: &str) -> Result<Arc<dyn Reduction>> {
    if let Some(kind) = name.strip_prefix("identity:") {
        let kind = ProblemKind::ALL
            .into_iter()
            .find(|k| serde_json::to_value(k).ok().and_then(|v| v.as_str().map(str::to_owned)).as_deref() == Some(kind))
            .ok_or_else(|| Error::Unsupported(format!("unknown problem kind {kind}")))?;
        return Ok(Arc::new(Identity(kind)));
    }
    registry()
        .into_iter()
        .find(|r| r.name() == name)
        .ok_or_else(|| Error::Unsupported(format!("unknown reduction {name}")))
}
