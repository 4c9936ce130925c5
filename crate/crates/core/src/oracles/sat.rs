use super::{resource, Budget, Method, Solution, Verdict};
use crate::error::Result;
use crate::instances::{AndSatInstance, CnfInstance};

/// `assignment[i]` is the value of variable `i + 1`.
pub fn cnf_satisfied_by(inst: &CnfInstance, assignment: &[bool]) -> bool {
    assignment.len() == inst.num_vars
        && inst.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let v = lit.unsigned_abs() as usize;
                v >= 1 && v <= assignment.len() && assignment[v - 1] == (lit > 0)
            })
        })
}

fn bruteforce(inst: &CnfInstance) -> Option<Vec<bool>> {
    let k = inst.num_vars;
    (0u64..1 << k).find_map(|mask| {
        let a: Vec<bool> = (0..k).map(|i| mask >> i & 1 == 1).collect();
        cnf_satisfied_by(inst, &a).then_some(a)
    })
}

/// Assignment enumeration; an empty clause makes the formula unsatisfiable.
pub fn solve_cnf(inst: &CnfInstance, budget: &Budget) -> Result<Verdict> {
    if inst.num_vars > budget.max_bruteforce_n {
        return Err(resource("CNF instance"));
    }
    let found = bruteforce(inst);
    Ok(Verdict::from_option(found.map(Solution::Assignment), Method::BruteForce, 1 << inst.num_vars))
}

pub fn solve_and_sat(inst: &AndSatInstance, budget: &Budget) -> Result<Verdict> {
    let mut all = Vec::with_capacity(inst.formulas.len());
    let mut states = 0;
    for f in &inst.formulas {
        let v = solve_cnf(f, budget)?;
        states += v.telemetry.states;
        match v.solution {
            Some(Solution::Assignment(a)) => all.push(a),
            _ => return Ok(Verdict::no(Method::BruteForce, states)),
        }
    }
    Ok(Verdict::yes(Solution::Assignments(all), Method::BruteForce, states))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let b = Budget::default();
        assert!(solve_cnf(&CnfInstance::new(1, vec![vec![1, -1]]), &b).unwrap().is_yes());
        assert!(!solve_cnf(&CnfInstance::new(1, vec![vec![1], vec![-1]]), &b).unwrap().is_yes());
        assert!(!solve_cnf(&CnfInstance::new(1, vec![vec![]]), &b).unwrap().is_yes());
        let and = AndSatInstance {
            num_vars: 2,
            formulas: vec![
                CnfInstance::new(2, vec![vec![1, 2], vec![-1]]),
                CnfInstance::new(1, vec![vec![1]]),
            ],
        };
        assert!(solve_and_sat(&and, &b).unwrap().is_yes());
    }
}
