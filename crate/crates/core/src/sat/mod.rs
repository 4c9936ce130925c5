//! Reductions out of satisfiability: 3SAT to Subset Sum by decimal digits,
//! AND-3SAT to weighted tardy job scheduling, and CNF-SAT to 3-Coloring with
//! a path decomposition.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::bits::{bit_length, Witness};
use crate::error::{Error, Result};
use crate::instances::{
    trivial_instance, validate_decomposition, AndSatInstance, Answer, CnfInstance, ColoringInstance, Job,
    ProblemInstance, ProblemKind, SchedulingInstance, SubsetSumInstance,
};
use crate::oracles::Solution;
use crate::reduction::{source, Construction};

/// Items and target of the decimal 3SAT encoding over `num_vars` variables.
///
/// Digit `i - 1` belongs to variable `i`, digit `num_vars + j` to clause `j`.
/// Items come as `x_1, ¬x_1, …, x_k, ¬x_k`, then the slacks `1` and `2` of
/// every clause. Column sums never exceed 6, so no carries occur.
pub fn tsat_digits(num_vars: usize, clauses: &[Vec<i32>]) -> Result<(Vec<BigUint>, BigUint)> {
    if let Some(c) = clauses.iter().find(|c| c.len() > 3) {
        return Err(Error::Precondition(format!("clause of arity {} in a 3-CNF", c.len())));
    }
    let ten = BigUint::from(10u32);
    let digit = |pos: usize| ten.pow(pos as u32);
    let mut items = Vec::with_capacity(2 * num_vars + 2 * clauses.len());
    for i in 1..=num_vars as i32 {
        for lit in [i, -i] {
            let mut item = digit(i as usize - 1);
            for (j, clause) in clauses.iter().enumerate() {
                if clause.contains(&lit) {
                    item += digit(num_vars + j);
                }
            }
            items.push(item);
        }
    }
    let mut target = BigUint::zero();
    for i in 0..num_vars {
        target += digit(i);
    }
    for j in 0..clauses.len() {
        let d = digit(num_vars + j);
        items.push(d.clone());
        items.push(&d * 2u32);
        target += d * 4u32;
    }
    Ok((items, target))
}

#[derive(Clone, Copy, Debug, Default)]
pub struct TsatToSs;

impl Construction for TsatToSs {
    const NAME: &'static str = "tsat-to-ss";
    const SOURCE: ProblemKind = ProblemKind::Cnf;
    const TARGET: ProblemKind = ProblemKind::SubsetSum;
    const TRANSFORMATION: bool = true;

    fn witness_len(&self, _: &ProblemInstance) -> Result<usize> {
        Ok(0)
    }

    fn transform(&self, inst: &ProblemInstance, _: &Witness) -> Result<ProblemInstance> {
        let f = source!(inst, Cnf);
        let (items, target) = tsat_digits(f.num_vars, &f.clauses)?;
        Ok(SubsetSumInstance::new(items, target).into())
    }

    fn synthesize(&self, _: &ProblemInstance, _: &Solution) -> Result<Witness> {
        Ok(Witness::empty())
    }

    fn bound(&self, inst: &ProblemInstance) -> Result<u64> {
        let f = source!(inst, Cnf);
        Ok(decimal_bits(f.num_vars + f.clauses.len()))
    }

    fn guard_fires(&self, _: &ProblemInstance) -> bool {
        false
    }
}

/// Bits of `10^digits`, which exceeds any target over that many digits.
fn decimal_bits(digits: usize) -> u64 {
    bit_length(&BigUint::from(10u32).pow(digits as u32))
}

/// One job per Subset Sum item of every formula. Formula `j` gets due date
/// `t_1 + … + t_j` and weight factor `n + 1 - j`.
#[derive(Clone, Copy, Debug, Default)]
pub struct AndSatToScheduling;

pub fn andsat_jobs(a: &AndSatInstance) -> Result<SchedulingInstance> {
    let n = a.formulas.len();
    let mut jobs = Vec::new();
    let mut due = BigUint::zero();
    let mut promised = BigUint::zero();
    for (j, f) in a.formulas.iter().enumerate() {
        let (items, target) = tsat_digits(a.num_vars, &f.clauses)?;
        let factor = BigUint::from(n - j);
        due += &target;
        promised += &target * &factor;
        for p in items {
            jobs.push(Job {
                weight: &p * &factor,
                processing: p,
                due: due.clone(),
            });
        }
    }
    let total: BigUint = jobs.iter().map(|j| &j.weight).sum();
    // On-time weight must reach the promised amount.
    let tardy_budget = if total >= promised { total - promised } else { BigUint::zero() };
    Ok(SchedulingInstance { jobs, tardy_budget })
}

impl Construction for AndSatToScheduling {
    const NAME: &'static str = "andsat-to-scheduling";
    const SOURCE: ProblemKind = ProblemKind::AndSat;
    const TARGET: ProblemKind = ProblemKind::Scheduling;
    const TRANSFORMATION: bool = true;

    fn witness_len(&self, _: &ProblemInstance) -> Result<usize> {
        Ok(0)
    }

    fn transform(&self, inst: &ProblemInstance, _: &Witness) -> Result<ProblemInstance> {
        let a = source!(inst, AndSat);
        Ok(andsat_jobs(a)?.into())
    }

    fn synthesize(&self, _: &ProblemInstance, _: &Solution) -> Result<Witness> {
        Ok(Witness::empty())
    }

    /// Due dates and weights are both below `n · 10^(k + c)`.
    fn bound(&self, inst: &ProblemInstance) -> Result<u64> {
        let a = source!(inst, AndSat);
        let c = a.formulas.iter().map(|f| f.clauses.len()).max().unwrap_or(0);
        let n = a.formulas.len().max(1);
        let cap = BigUint::from(10u32).pow((a.num_vars + c) as u32) * n;
        Ok(2 * bit_length(&cap))
    }
}

/// Vertex indices of the 3-Coloring instance built from a CNF formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SatGraphLayout {
    pub num_vars: usize,
}

impl SatGraphLayout {
    pub const BASE: usize = 0;
    pub const FALSE: usize = 1;

    /// Vertex of literal `lit`: `x_i^Y` for `i`, `x_i^N` for `-i`.
    pub fn literal(&self, lit: i32) -> usize {
        let i = lit.unsigned_abs() as usize - 1;
        2 + 2 * i + usize::from(lit < 0)
    }

    pub fn base_vertices(&self) -> usize {
        2 + 2 * self.num_vars
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CnfToColoring;

pub fn cnf_graph(f: &CnfInstance) -> Result<Option<ColoringInstance>> {
    if f.clauses.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let lay = SatGraphLayout { num_vars: f.num_vars };
    let (b, fv) = (SatGraphLayout::BASE, SatGraphLayout::FALSE);
    let mut n = lay.base_vertices();
    let mut edges = vec![(b, fv)];
    for i in 1..=f.num_vars as i32 {
        let (y, no) = (lay.literal(i), lay.literal(-i));
        edges.extend([(b, y), (b, no), (y, no)]);
    }
    let base: Vec<usize> = (0..n).collect();
    let mut bags = Vec::new();
    for clause in &f.clauses {
        let mut bag = base.clone();
        let mut out = lay.literal(clause[0]);
        for &lit in &clause[1..] {
            let v = lay.literal(lit);
            let (up, vp, g) = (n, n + 1, n + 2);
            n += 3;
            edges.extend([(out, up), (v, vp), (up, vp), (up, g), (vp, g), (b, g)]);
            bag.extend([up, vp, g]);
            out = g;
        }
        edges.push((out, fv));
        bags.push(bag);
    }
    if bags.is_empty() {
        bags.push(base);
    }
    let mut edges: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    edges.dedup();
    let g = ColoringInstance { n, edges, bags };
    let problems = validate_decomposition(g.n, &g.edges, &g.bags);
    if !problems.is_empty() {
        return Err(Error::Internal(format!("emitted decomposition invalid: {problems:?}")));
    }
    let limit = coloring_width_bound(f);
    if g.width() as u64 > limit {
        return Err(Error::Internal(format!("width {} above {limit}", g.width())));
    }
    Ok(Some(g))
}

/// `2k + 2` base vertices plus the largest gadget, minus one.
fn coloring_width_bound(f: &CnfInstance) -> u64 {
    let gadget = f.clauses.iter().map(|c| 3 * c.len().saturating_sub(1)).max().unwrap_or(0);
    (2 * f.num_vars + 2 + gadget) as u64 - 1
}

impl Construction for CnfToColoring {
    const NAME: &'static str = "cnf-to-coloring";
    const SOURCE: ProblemKind = ProblemKind::Cnf;
    const TARGET: ProblemKind = ProblemKind::Coloring;
    const TRANSFORMATION: bool = true;

    fn witness_len(&self, _: &ProblemInstance) -> Result<usize> {
        Ok(0)
    }

    fn transform(&self, inst: &ProblemInstance, _: &Witness) -> Result<ProblemInstance> {
        let f = source!(inst, Cnf);
        Ok(match cnf_graph(f)? {
            Some(g) => g.into(),
            None => trivial_instance(Self::TARGET, Answer::No),
        })
    }

    fn synthesize(&self, _: &ProblemInstance, _: &Solution) -> Result<Witness> {
        Ok(Witness::empty())
    }

    fn bound(&self, inst: &ProblemInstance) -> Result<u64> {
        let f = source!(inst, Cnf);
        Ok(coloring_width_bound(f))
    }

    fn guard_fires(&self, _: &ProblemInstance) -> bool {
        false
    }
}

/// Reads a truth assignment off a 3-coloring of [`cnf_graph`]: `x_i` is true
/// when `x_i^Y` avoids the colors of both special vertices.
pub fn assignment_from_coloring(num_vars: usize, colors: &[u8]) -> Vec<bool> {
    let lay = SatGraphLayout { num_vars };
    let f = colors[SatGraphLayout::FALSE];
    (1..=num_vars as i32).map(|i| colors[lay.literal(i)] != f).collect()
}
