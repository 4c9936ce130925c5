//! Problem instances, their invariants and the canonical JSON format.
//!
//! Integers that may grow beyond 64 bits are stored as [`BigUint`] and
//! serialized as decimal strings. Small vectors (ILP columns, counter machine
//! vectors, group elements) are plain JSON integer arrays.

mod decomposition;

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::bits::bit_length;
use crate::groups::Permutation;

pub use decomposition::{
    greedy_labels, make_nice, validate_decomposition, Command, NiceDecomposition,
};

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubsetSumInstance {
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub items: Vec<BigUint>,
    #[serde_as(as = "DisplayFromStr")]
    pub target: BigUint,
    /// Present for the Group-Z_q variant, where sums are taken mod q.
    #[serde_as(as = "Option<DisplayFromStr>")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<BigUint>,
}

impl SubsetSumInstance {
    pub fn new(items: Vec<BigUint>, target: BigUint) -> Self {
        Self {
            items,
            target,
            modulus: None,
        }
    }

    pub fn from_u64(items: &[u64], target: u64) -> Self {
        Self::new(items.iter().map(|&p| p.into()).collect(), target.into())
    }

    pub fn modular_from_u64(items: &[u64], target: u64, modulus: u64) -> Self {
        Self {
            modulus: Some(modulus.into()),
            ..Self::from_u64(items, target)
        }
    }
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KnapsackItem {
    #[serde_as(as = "DisplayFromStr")]
    pub size: BigUint,
    #[serde_as(as = "DisplayFromStr")]
    pub weight: BigUint,
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KnapsackInstance {
    pub items: Vec<KnapsackItem>,
    #[serde_as(as = "DisplayFromStr")]
    pub capacity: BigUint,
    #[serde_as(as = "DisplayFromStr")]
    pub demand: BigUint,
}

impl KnapsackInstance {
    pub fn from_u64(items: &[(u64, u64)], capacity: u64, demand: u64) -> Self {
        Self {
            items: items
                .iter()
                .map(|&(p, w)| KnapsackItem {
                    size: p.into(),
                    weight: w.into(),
                })
                .collect(),
            capacity: capacity.into(),
            demand: demand.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IlpVariant {
    /// Ax = b over x in {0,1}^n.
    Standard,
    /// Ax = b with A in {0,1}^{m x n}.
    Monotone,
    /// Ax = 0 with x nonzero.
    ZeroSum,
}

/// A system `Ax = b` with `A` in `{-1,0,1}^{m x n}` stored column by column.
/// The row count `m` is `rhs.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IlpInstance {
    pub variant: IlpVariant,
    pub columns: Vec<Vec<i8>>,
    pub rhs: Vec<i64>,
}

impl IlpInstance {
    pub fn rows(&self) -> usize {
        self.rhs.len()
    }
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "group", rename_all = "snake_case")]
pub enum GroupSubsetSumInstance {
    Cyclic {
        #[serde_as(as = "DisplayFromStr")]
        modulus: BigUint,
        #[serde_as(as = "Vec<DisplayFromStr>")]
        elements: Vec<BigUint>,
        #[serde_as(as = "DisplayFromStr")]
        target: BigUint,
    },
    /// Z_k^k with componentwise addition.
    ProductZkk {
        k: u32,
        elements: Vec<Vec<u32>>,
        target: Vec<u32>,
    },
    Symmetric {
        degree: usize,
        elements: Vec<Permutation>,
        target: Permutation,
    },
}

impl GroupSubsetSumInstance {
    pub fn len(&self) -> usize {
        match self {
            Self::Cyclic { elements, .. } => elements.len(),
            Self::ProductZkk { elements, .. } => elements.len(),
            Self::Symmetric { elements, .. } => elements.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flag {
    #[serde(rename = "O")]
    Optional,
    #[serde(rename = "R")]
    Required,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CounterMachineInstance {
    pub dimension: usize,
    pub vectors: Vec<Vec<i8>>,
    pub flags: Vec<Flag>,
}

/// A graph on vertices `0..n` together with a path decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoringInstance {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub bags: Vec<Vec<usize>>,
}

impl ColoringInstance {
    /// Largest bag size minus one; zero for an empty decomposition.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Job {
    #[serde_as(as = "DisplayFromStr")]
    pub processing: BigUint,
    #[serde_as(as = "DisplayFromStr")]
    pub weight: BigUint,
    #[serde_as(as = "DisplayFromStr")]
    pub due: BigUint,
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchedulingInstance {
    pub jobs: Vec<Job>,
    #[serde_as(as = "DisplayFromStr")]
    pub tardy_budget: BigUint,
}

impl SchedulingInstance {
    pub fn from_u64(jobs: &[(u64, u64, u64)], tardy_budget: u64) -> Self {
        Self {
            jobs: jobs
                .iter()
                .map(|&(p, w, d)| Job {
                    processing: p.into(),
                    weight: w.into(),
                    due: d.into(),
                })
                .collect(),
            tardy_budget: tardy_budget.into(),
        }
    }
}

/// Clauses are lists of signed 1-based variable indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CnfInstance {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arity_cap: Option<usize>,
}

impl CnfInstance {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Self {
        Self {
            num_vars,
            clauses,
            arity_cap: None,
        }
    }

    pub fn three_cnf(num_vars: usize, clauses: Vec<Vec<i32>>) -> Self {
        Self {
            arity_cap: Some(3),
            ..Self::new(num_vars, clauses)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AndSatInstance {
    pub num_vars: usize,
    pub formulas: Vec<CnfInstance>,
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnboundedSubsetSumInstance {
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub items: Vec<BigUint>,
    #[serde_as(as = "DisplayFromStr")]
    pub target: BigUint,
}

impl UnboundedSubsetSumInstance {
    pub fn from_u64(items: &[u64], target: u64) -> Self {
        Self {
            items: items.iter().map(|&p| p.into()).collect(),
            target: target.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "snake_case")]
pub enum ProblemInstance {
    SubsetSum(SubsetSumInstance),
    Knapsack(KnapsackInstance),
    Ilp(IlpInstance),
    GroupSubsetSum(GroupSubsetSumInstance),
    CounterMachine(CounterMachineInstance),
    Coloring(ColoringInstance),
    Scheduling(SchedulingInstance),
    Cnf(CnfInstance),
    AndSat(AndSatInstance),
    UnboundedSubsetSum(UnboundedSubsetSumInstance),
}

/// Finer classification than the JSON tag: variants with different
/// semantics (modular Subset Sum, each ILP flavor, each group) are distinct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    SubsetSum,
    ModularSubsetSum,
    Knapsack,
    Ilp,
    MonotoneIlp,
    ZeroSumIlp,
    CyclicSubsetSum,
    ProductSubsetSum,
    PermutationSubsetSum,
    CounterMachine,
    Coloring,
    Scheduling,
    Cnf,
    AndSat,
    UnboundedSubsetSum,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 15] = [
        Self::SubsetSum,
        Self::ModularSubsetSum,
        Self::Knapsack,
        Self::Ilp,
        Self::MonotoneIlp,
        Self::ZeroSumIlp,
        Self::CyclicSubsetSum,
        Self::ProductSubsetSum,
        Self::PermutationSubsetSum,
        Self::CounterMachine,
        Self::Coloring,
        Self::Scheduling,
        Self::Cnf,
        Self::AndSat,
        Self::UnboundedSubsetSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::SubsetSum => "subset sum",
            Self::ModularSubsetSum => "modular subset sum",
            Self::Knapsack => "knapsack",
            Self::Ilp => "0-1 ILP",
            Self::MonotoneIlp => "monotone 0-1 ILP",
            Self::ZeroSumIlp => "0-sum 0-1 ILP",
            Self::CyclicSubsetSum => "Z_q group subset sum",
            Self::ProductSubsetSum => "Z_k^k group subset sum",
            Self::PermutationSubsetSum => "S_k group subset sum",
            Self::CounterMachine => "0-1 counter machine",
            Self::Coloring => "3-coloring",
            Self::Scheduling => "tardy-weight scheduling",
            Self::Cnf => "CNF-SAT",
            Self::AndSat => "AND-3SAT",
            Self::UnboundedSubsetSum => "unbounded subset sum",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Self::Yes
        } else {
            Self::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Self::Yes
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Yes => "yes",
            Self::No => "no",
        })
    }
}

impl ProblemInstance {
    pub fn kind(&self) -> ProblemKind {
        match self {
            Self::SubsetSum(s) if s.modulus.is_some() => ProblemKind::ModularSubsetSum,
            Self::SubsetSum(_) => ProblemKind::SubsetSum,
            Self::Knapsack(_) => ProblemKind::Knapsack,
            Self::Ilp(i) => match i.variant {
                IlpVariant::Standard => ProblemKind::Ilp,
                IlpVariant::Monotone => ProblemKind::MonotoneIlp,
                IlpVariant::ZeroSum => ProblemKind::ZeroSumIlp,
            },
            Self::GroupSubsetSum(g) => match g {
                GroupSubsetSumInstance::Cyclic { .. } => ProblemKind::CyclicSubsetSum,
                GroupSubsetSumInstance::ProductZkk { .. } => ProblemKind::ProductSubsetSum,
                GroupSubsetSumInstance::Symmetric { .. } => ProblemKind::PermutationSubsetSum,
            },
            Self::CounterMachine(_) => ProblemKind::CounterMachine,
            Self::Coloring(_) => ProblemKind::Coloring,
            Self::Scheduling(_) => ProblemKind::Scheduling,
            Self::Cnf(_) => ProblemKind::Cnf,
            Self::AndSat(_) => ProblemKind::AndSat,
            Self::UnboundedSubsetSum(_) => ProblemKind::UnboundedSubsetSum,
        }
    }

    /// The parameter `k` each problem is studied under.
    pub fn parameter(&self) -> u64 {
        match self {
            Self::SubsetSum(s) => match &s.modulus {
                Some(q) => bit_length(q),
                None => bit_length(&s.target),
            },
            Self::Knapsack(k) => bit_length(&k.capacity) + bit_length(&k.demand),
            Self::Ilp(i) => i.rows() as u64,
            Self::GroupSubsetSum(g) => match g {
                GroupSubsetSumInstance::Cyclic { modulus, .. } => bit_length(modulus),
                GroupSubsetSumInstance::ProductZkk { k, .. } => u64::from(*k),
                GroupSubsetSumInstance::Symmetric { degree, .. } => *degree as u64,
            },
            Self::CounterMachine(c) => c.dimension as u64,
            Self::Coloring(c) => c.width() as u64,
            Self::Scheduling(s) => {
                let d = s.jobs.iter().map(|j| bit_length(&j.due)).max().unwrap_or(0);
                let w = s.jobs.iter().map(|j| bit_length(&j.weight)).max().unwrap_or(0);
                d + w
            }
            Self::Cnf(c) => c.num_vars as u64,
            Self::AndSat(a) => a.num_vars as u64,
            Self::UnboundedSubsetSum(u) => bit_length(&u.target),
        }
    }

    /// Number of items, columns, vectors, vertices, jobs, clauses or formulas.
    pub fn size(&self) -> usize {
        match self {
            Self::SubsetSum(s) => s.items.len(),
            Self::Knapsack(k) => k.items.len(),
            Self::Ilp(i) => i.columns.len(),
            Self::GroupSubsetSum(g) => g.len(),
            Self::CounterMachine(c) => c.vectors.len(),
            Self::Coloring(c) => c.n,
            Self::Scheduling(s) => s.jobs.len(),
            Self::Cnf(c) => c.clauses.len(),
            Self::AndSat(a) => a.formulas.len(),
            Self::UnboundedSubsetSum(u) => u.items.len(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instances always serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

macro_rules! impl_from_instance {
    ($($ty:ty => $variant:ident),* $(,)?) => {$(
        impl From<$ty> for ProblemInstance {
            fn from(x: $ty) -> Self {
                ProblemInstance::$variant(x)
            }
        }
    )*};
}

impl_from_instance! {
    SubsetSumInstance => SubsetSum,
    KnapsackInstance => Knapsack,
    IlpInstance => Ilp,
    GroupSubsetSumInstance => GroupSubsetSum,
    CounterMachineInstance => CounterMachine,
    ColoringInstance => Coloring,
    SchedulingInstance => Scheduling,
    CnfInstance => Cnf,
    AndSatInstance => AndSat,
    UnboundedSubsetSumInstance => UnboundedSubsetSum,
}

/// Checks every type invariant; an empty list means the instance is valid.
pub fn validate(instance: &ProblemInstance) -> Vec<String> {
    let mut out = Vec::new();
    match instance {
        ProblemInstance::SubsetSum(s) => {
            if let Some(q) = &s.modulus {
                if q.is_zero() {
                    out.push("modulus must be positive".into());
                } else {
                    if s.items.iter().any(|p| p >= q) {
                        out.push("item not below modulus".into());
                    }
                    if &s.target >= q {
                        out.push("target not below modulus".into());
                    }
                }
            }
        }
        ProblemInstance::Knapsack(k) => {
            if k.items.iter().any(|it| it.size.is_zero() || it.weight.is_zero()) {
                out.push("knapsack item size and weight must be positive".into());
            }
        }
        ProblemInstance::Ilp(i) => validate_ilp(i, &mut out),
        ProblemInstance::GroupSubsetSum(g) => validate_group(g, &mut out),
        ProblemInstance::CounterMachine(c) => {
            if c.dimension == 0 {
                out.push("counter machine dimension must be at least 1".into());
            }
            if c.vectors.len() != c.flags.len() {
                out.push("vectors and flags differ in length".into());
            }
            if c.vectors.iter().any(|v| v.len() != c.dimension) {
                out.push("counter vector dimension differs from declared dimension".into());
            }
            if c.vectors.iter().flatten().any(|&x| !(-1..=1).contains(&x)) {
                out.push("counter vector entry out of {-1,0,1}".into());
            }
        }
        ProblemInstance::Coloring(c) => out.extend(validate_decomposition(c.n, &c.edges, &c.bags)),
        ProblemInstance::Scheduling(s) => {
            if s.jobs
                .iter()
                .any(|j| j.processing.is_zero() || j.weight.is_zero() || j.due.is_zero())
            {
                out.push("job fields must be positive".into());
            }
        }
        ProblemInstance::Cnf(c) => validate_cnf(c, &mut out),
        ProblemInstance::AndSat(a) => {
            for (i, f) in a.formulas.iter().enumerate() {
                if f.num_vars > a.num_vars {
                    out.push(format!("formula {i} uses more than {} variables", a.num_vars));
                }
                let mut inner = Vec::new();
                validate_cnf(f, &mut inner);
                out.extend(inner.into_iter().map(|v| format!("formula {i}: {v}")));
            }
        }
        ProblemInstance::UnboundedSubsetSum(u) => {
            if u.items.iter().any(Zero::is_zero) {
                out.push("unbounded subset sum items must be positive".into());
            }
        }
    }
    out
}

fn validate_ilp(i: &IlpInstance, out: &mut Vec<String>) {
    let m = i.rows();
    if i.columns.iter().any(|c| c.len() != m) {
        out.push("column length differs from rhs length".into());
    }
    if i.columns.iter().flatten().any(|&a| !(-1..=1).contains(&a)) {
        out.push("matrix entry out of {-1,0,1}".into());
    }
    match i.variant {
        IlpVariant::Monotone => {
            if i.columns.iter().flatten().any(|&a| a < 0) {
                out.push("monotone entry out of {0,1}".into());
            }
        }
        IlpVariant::ZeroSum => {
            if i.rhs.iter().any(|&b| b != 0) {
                out.push("zero-sum rhs must be the zero vector".into());
            }
        }
        IlpVariant::Standard => {}
    }
}

fn validate_group(g: &GroupSubsetSumInstance, out: &mut Vec<String>) {
    match g {
        GroupSubsetSumInstance::Cyclic {
            modulus,
            elements,
            target,
        } => {
            if modulus.is_zero() {
                out.push("modulus must be positive".into());
            } else if elements.iter().chain([target]).any(|e| e >= modulus) {
                out.push("residue not below modulus".into());
            }
        }
        GroupSubsetSumInstance::ProductZkk {
            k,
            elements,
            target,
        } => {
            if *k == 0 {
                out.push("k must be positive".into());
            }
            let k_us = *k as usize;
            if elements
                .iter()
                .chain([target])
                .any(|e| e.len() != k_us || e.iter().any(|&x| x >= *k))
            {
                out.push("element is not a vector in Z_k^k".into());
            }
        }
        GroupSubsetSumInstance::Symmetric {
            degree,
            elements,
            target,
        } => {
            if elements.iter().chain([target]).any(|p| p.degree() != *degree) {
                out.push("permutation degree differs from declared degree".into());
            }
        }
    }
}

fn validate_cnf(c: &CnfInstance, out: &mut Vec<String>) {
    for clause in &c.clauses {
        if clause.is_empty() {
            out.push("empty clause".into());
        }
        if clause
            .iter()
            .any(|&l| l == 0 || l.unsigned_abs() as usize > c.num_vars)
        {
            out.push(format!("literal outside variables 1..={}", c.num_vars));
        }
        if let Some(cap) = c.arity_cap {
            if clause.len() > cap {
                out.push(format!("clause arity {} exceeds cap {cap}", clause.len()));
            }
        }
    }
}

/// Constant-size instance with a forced answer.
pub fn trivial_instance(kind: ProblemKind, answer: Answer) -> ProblemInstance {
    let yes = answer.is_yes();
    match kind {
        ProblemKind::SubsetSum => SubsetSumInstance::from_u64(&[], u64::from(!yes)).into(),
        ProblemKind::ModularSubsetSum => {
            SubsetSumInstance::modular_from_u64(&[], u64::from(!yes), 2).into()
        }
        ProblemKind::Knapsack => KnapsackInstance::from_u64(&[], 0, u64::from(!yes)).into(),
        ProblemKind::Ilp | ProblemKind::MonotoneIlp => IlpInstance {
            variant: if kind == ProblemKind::Ilp {
                IlpVariant::Standard
            } else {
                IlpVariant::Monotone
            },
            columns: vec![],
            rhs: vec![i64::from(!yes)],
        }
        .into(),
        ProblemKind::ZeroSumIlp => IlpInstance {
            variant: IlpVariant::ZeroSum,
            columns: if yes { vec![vec![0]] } else { vec![] },
            rhs: vec![0],
        }
        .into(),
        ProblemKind::CyclicSubsetSum => GroupSubsetSumInstance::Cyclic {
            modulus: 2u32.into(),
            elements: vec![],
            target: u32::from(!yes).into(),
        }
        .into(),
        ProblemKind::ProductSubsetSum => GroupSubsetSumInstance::ProductZkk {
            k: 2,
            elements: vec![],
            target: vec![u32::from(!yes), 0],
        }
        .into(),
        ProblemKind::PermutationSubsetSum => GroupSubsetSumInstance::Symmetric {
            degree: 2,
            elements: vec![],
            target: if yes {
                Permutation::identity(2)
            } else {
                Permutation::new(vec![1, 0]).expect("transposition")
            },
        }
        .into(),
        ProblemKind::CounterMachine => CounterMachineInstance {
            dimension: 1,
            vectors: if yes { vec![] } else { vec![vec![1]] },
            flags: if yes { vec![] } else { vec![Flag::Required] },
        }
        .into(),
        ProblemKind::Coloring => {
            if yes {
                ColoringInstance {
                    n: 0,
                    edges: vec![],
                    bags: vec![],
                }
                .into()
            } else {
                ColoringInstance {
                    n: 4,
                    edges: vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
                    bags: vec![vec![0, 1, 2, 3]],
                }
                .into()
            }
        }
        ProblemKind::Scheduling => {
            if yes {
                SchedulingInstance::from_u64(&[], 0).into()
            } else {
                SchedulingInstance::from_u64(&[(2, 1, 1)], 0).into()
            }
        }
        ProblemKind::Cnf => {
            let clauses = if yes { vec![] } else { vec![vec![1], vec![-1]] };
            CnfInstance::new(1, clauses).into()
        }
        ProblemKind::AndSat => AndSatInstance {
            num_vars: 1,
            formulas: if yes {
                vec![]
            } else {
                vec![CnfInstance::three_cnf(1, vec![vec![1], vec![-1]])]
            },
        }
        .into(),
        ProblemKind::UnboundedSubsetSum => {
            UnboundedSubsetSumInstance::from_u64(&[], u64::from(!yes)).into()
        }
    }
}

/// Upper bound on the parameter of any trivial instance.
pub const TRIVIAL_PARAMETER: u64 = 3;

/// `n` such that the trade-off guard "2^p <= n" can be evaluated without overflow.
pub fn exceeds_exponential(p: u64, n: usize) -> bool {
    p < 63 && (1u64 << p) <= n as u64
}

/// Sum of a slice of big integers.
pub fn big_sum<'a>(xs: impl IntoIterator<Item = &'a BigUint>) -> BigUint {
    xs.into_iter().fold(BigUint::zero(), |acc, x| acc + x)
}

pub fn big_max<'a>(xs: impl IntoIterator<Item = &'a BigUint>) -> BigUint {
    xs.into_iter().max().cloned().unwrap_or_else(BigUint::zero)
}

/// Distinct unordered pairs, for graph bookkeeping.
pub(crate) fn edge_key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_matches_documented_schema() {
        let ss = ProblemInstance::from(SubsetSumInstance::from_u64(&[3, 5], 5));
        assert_eq!(
            ss.to_json(),
            r#"{"problem":"subset_sum","items":["3","5"],"target":"5"}"#
        );
        let ilp: ProblemInstance = ProblemInstance::from_json(
            r#"{"problem":"ilp","variant":"monotone","columns":[[1,0],[1,1]],"rhs":[1,1]}"#,
        )
        .unwrap();
        assert_eq!(ilp.kind(), ProblemKind::MonotoneIlp);
        let col = ProblemInstance::from_json(
            r#"{"problem":"coloring","n":3,"edges":[[0,1],[1,2],[0,2]],"bags":[[0,1,2]]}"#,
        )
        .unwrap();
        assert_eq!(col.parameter(), 2);
        let g = ProblemInstance::from(GroupSubsetSumInstance::Symmetric {
            degree: 3,
            elements: vec![Permutation::new(vec![1, 0, 2]).unwrap()],
            target: Permutation::identity(3),
        });
        let back = ProblemInstance::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        assert!(g.to_json().contains(r#""group":"symmetric""#));
    }

    #[test]
    fn validation_messages() {
        assert!(validate(&SubsetSumInstance::from_u64(&[3, 5], 5).into()).is_empty());
        let bad = IlpInstance {
            variant: IlpVariant::Monotone,
            columns: vec![vec![1, -1]],
            rhs: vec![0, 0],
        };
        assert_eq!(validate(&bad.into()), vec!["monotone entry out of {0,1}"]);
        let uncovered = ColoringInstance {
            n: 2,
            edges: vec![(0, 1)],
            bags: vec![vec![0], vec![1]],
        };
        assert_eq!(validate(&uncovered.into()), vec!["edge uncovered: (0, 1)"]);
    }

    #[test]
    fn trivial_instances_are_valid_and_small() {
        for kind in ProblemKind::ALL {
            for answer in [Answer::Yes, Answer::No] {
                let inst = trivial_instance(kind, answer);
                assert_eq!(inst.kind(), kind);
                assert!(validate(&inst).is_empty(), "{kind} {answer}");
                assert!(inst.parameter() <= TRIVIAL_PARAMETER);
            }
        }
    }
}
