//! One PASS/FAIL line per acceptance criterion. Reductions are exercised
//! with the trade-off guard both on and off.

use std::process::ExitCode;
use std::time::Instant;

use certkit::certificates::{
    check_scheme, minimal_solution_bound_check, nppt_contract_check, zero_sum_check, ContractReport, Scheme,
    UnboundedScheme, ZkkScheme,
};
use certkit::families::*;
use certkit::groups::{landau_permutation, run_check_uq, ChiContext, GammaHatContext, LandauMethod, Permutation, UqElement};
use certkit::instances::{validate, GroupSubsetSumInstance, IlpVariant, ProblemInstance};
use certkit::numeric::{graver_sequence, Validation};
use certkit::oracles::scheduling_bruteforce_subsets;
use certkit::pathwidth::is_run;
use certkit::reduction::{lookup, ReductionConfig};
use certkit::{solve, Budget, Witness};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WITNESS_BITS: usize = 24;

fn configs() -> [ReductionConfig; 2] {
    [ReductionConfig::default(), ReductionConfig::unguarded()]
}

fn contract(name: &str, family: &[ProblemInstance], notes: &mut Vec<String>) -> bool {
    let r = lookup(name).expect("registered reduction");
    let mut ok = true;
    for cfg in configs() {
        let rep: ContractReport = nppt_contract_check(r.as_ref(), family.iter().cloned(), &cfg, WITNESS_BITS);
        notes.push(format!(
            "{name} [{:?}]: {} instances ({} yes, {} no), {} witnesses, {} violations, {} skipped",
            cfg.guard,
            rep.instances,
            rep.yes,
            rep.no,
            rep.witnesses,
            rep.violations.len(),
            rep.skipped.len()
        ));
        if let Some(v) = rep.violations.first() {
            notes.push(format!("  first violation: {v:?}"));
        }
        ok &= rep.passed();
    }
    ok
}

/// Source and target verdicts agree for a witness-free reduction.
fn equivalence(
    name: &str,
    family: &[ProblemInstance],
    target_oracle: impl Fn(&ProblemInstance) -> bool,
    notes: &mut Vec<String>,
) -> bool {
    let r = lookup(name).expect("registered reduction");
    let budget = Budget::default();
    let mut ok = true;
    for cfg in configs() {
        let mut mismatches = 0;
        for inst in family {
            let expected = solve(inst, &budget).expect("source oracle").is_yes();
            let target = match r.apply(inst, &Witness::empty(), &cfg) {
                Ok(app) => app.target,
                Err(e) => {
                    notes.push(format!("  {name} failed on {}: {e}", inst.to_json()));
                    mismatches += 1;
                    continue;
                }
            };
            if target_oracle(&target) != expected {
                if mismatches == 0 {
                    notes.push(format!("  first mismatch: {}", inst.to_json()));
                }
                mismatches += 1;
            }
        }
        notes.push(format!("{name} [{:?}]: {} instances, {mismatches} mismatches", cfg.guard, family.len()));
        ok &= mismatches == 0;
    }
    ok
}

fn numeric_chain(notes: &mut Vec<String>) -> bool {
    let ss = subset_sum_grid(5, 8, 40);
    let knapsack = knapsack_grid(3, 6);
    let monotone = ilp_grid(IlpVariant::Monotone, 2, 4);
    let zero_sum = ilp_grid(IlpVariant::ZeroSum, 2, 4);
    let standard = ilp_grid(IlpVariant::Standard, 2, 4);
    let modular = modular_grid(5, 8);
    let runs: [(&str, &[ProblemInstance]); 9] = [
        ("ss-to-knapsack", &ss),
        ("knapsack-to-ss", &knapsack),
        ("ss-to-monotone", &ss),
        ("monotone-to-ss", &monotone),
        ("monotone-to-zerosum", &monotone),
        ("zerosum-to-ilp", &zero_sum),
        ("ilp-to-monotone", &standard),
        ("ss-to-zq", &ss),
        ("zq-to-ss", &modular),
    ];
    let mut ok = true;
    for (name, family) in runs {
        ok &= contract(name, family, notes);
    }
    ok
}

fn round_trips(notes: &mut Vec<String>) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut ok = true;
    for name in ["ss-to-knapsack+knapsack-to-ss", "ss-to-monotone+monotone-to-ss", "ss-to-zq+zq-to-ss"] {
        let family: Vec<ProblemInstance> = (0..500).map(|_| random_subset_sum(&mut rng, 6, 30).into()).collect();
        ok &= contract(name, &family, notes);
    }
    ok
}

/// Independent of the library validator: partial sums in {0,1}^k, total
/// zero, and no proper nonempty subsequence summing to zero.
fn graver_properties(k: usize, vectors: &[Vec<i8>]) -> bool {
    let len = vectors.len();
    let mut partial = vec![0i32; k];
    for v in vectors {
        for (p, &x) in partial.iter_mut().zip(v) {
            *p += i32::from(x);
        }
        if partial.iter().any(|&p| !(0..=1).contains(&p)) {
            return false;
        }
    }
    if partial.iter().any(|&p| p != 0) {
        return false;
    }
    (1u64..(1 << len) - 1).all(|mask| {
        let mut sum = vec![0i32; k];
        for (i, v) in vectors.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (s, &x) in sum.iter_mut().zip(v) {
                    *s += i32::from(x);
                }
            }
        }
        sum.iter().any(|&s| s != 0)
    })
}

fn graver(notes: &mut Vec<String>) -> bool {
    (1..=4).all(|k| {
        let g = graver_sequence(k).expect("graver sequence");
        let ok = g.vectors.len() == 1 << k && g.validation == Validation::Exhaustive && graver_properties(k, &g.vectors);
        notes.push(format!("k = {k}: length {}, {:?}, ok = {ok}", g.vectors.len(), g.validation));
        ok
    })
}

fn scalar_run(seq: &[i8]) -> bool {
    let mut s = 0i32;
    for &b in seq {
        s += i32::from(b);
        if !(0..=1).contains(&s) {
            return false;
        }
    }
    s == 0
}

fn three_way(notes: &mut Vec<String>) -> bool {
    let mut checked = 0;
    let mut mismatches = 0;
    for n in 0..=8usize {
        let ctx = GammaHatContext::new(n as u64, LandauMethod::MinimalDegree).expect("context");
        let q = ctx.chi().q();
        for seq in sequences(&[-1i8, 0, 1], n).into_iter().filter(|s| s.len() == n) {
            checked += 1;
            let a = scalar_run(&seq);
            let library = is_run(seq.iter().map(std::slice::from_ref), 1);
            let (_, b) = run_check_uq(&seq, q).expect("uq product");
            let c = ctx.run_check(&seq).expect("gamma hat product").is_some();
            if !(a == library && a == b && a == c) {
                mismatches += 1;
            }
        }
    }
    notes.push(format!("{checked} sequences, {mismatches} disagreements"));
    mismatches == 0 && checked == (0..=8).map(|n| 3usize.pow(n)).sum::<usize>()
}

fn chi_homomorphism(notes: &mut Vec<String>) -> bool {
    let check = |ctx: &ChiContext, a: &UqElement, b: &UqElement| {
        let lhs = ctx.chi(&a.mul(b).expect("same q")).expect("chi");
        let rhs = ctx.chi(a).expect("chi").compose(&ctx.chi(b).expect("chi")).expect("degree");
        lhs == rhs
    };
    let three = ChiContext::new(3, &Permutation::from_cycles(3, &[vec![0, 1, 2]]).expect("3-cycle")).expect("carrier");
    let all: Vec<UqElement> = UqElement::all(3).collect();
    let mut pairs = 0;
    let mut bad = 0;
    for a in &all {
        for b in &all {
            pairs += 1;
            bad += usize::from(!check(&three, a, b));
        }
    }
    let seven = ChiContext::new(7, &Permutation::from_cycles(7, &[(0..7).collect()]).expect("7-cycle")).expect("carrier");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut random_bad = 0;
    for _ in 0..10_000 {
        let mut el = || UqElement::new(rng.gen_range(0..7), rng.gen_range(0..7), rng.gen_range(0..2), 7).expect("element");
        let (a, b) = (el(), el());
        random_bad += usize::from(!check(&seven, &a, &b));
    }
    notes.push(format!("U_3: {pairs} pairs, {bad} mismatches; q = 7: 10000 random pairs, {random_bad} mismatches"));
    pairs == 324 && bad == 0 && random_bad == 0
}

fn coloring_pipeline(notes: &mut Vec<String>) -> bool {
    let mut graphs: Vec<ProblemInstance> = (0..=5).flat_map(all_graphs).map(Into::into).collect();
    graphs.extend(["k3", "k4", "c5", "p4"].map(|n| named_graph(n).expect("named graph").into()));
    let budget = Budget::default();
    let mut ok = equivalence("coloring-to-cm", &graphs, |t| solve(t, &budget).expect("cm oracle").is_yes(), notes);
    let mut machines: Vec<ProblemInstance> = counter_machines(1, 5).into_iter().map(Into::into).collect();
    machines.extend(counter_machines(2, 4).into_iter().map(Into::into));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    machines.extend((0..2000).map(|_| random_counter_machine(&mut rng, 2, 5).into()));
    ok &= contract("cm-to-permss", &machines, notes);
    ok
}

fn scheduling(notes: &mut Vec<String>) -> bool {
    let family: Vec<ProblemInstance> = (0..=2).flat_map(|k| and_sat_grid(k, 2, 2)).collect();
    equivalence(
        "andsat-to-scheduling",
        &family,
        |t| match t {
            ProblemInstance::Scheduling(s) => scheduling_bruteforce_subsets(s).is_some(),
            other => panic!("unexpected target {other:?}"),
        },
        notes,
    )
}

fn cnf_coloring(notes: &mut Vec<String>) -> bool {
    let mut family: Vec<ProblemInstance> = (0..=2).flat_map(|k| cnfs(k, 2, 2)).map(Into::into).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    family.extend((0..50).map(|_| random_3cnf(&mut rng, 3, 6).into()));
    let budget = Budget::default();
    let r = lookup("cnf-to-coloring").expect("registered");
    let invalid = family
        .iter()
        .filter(|f| {
            let t = r.apply(f, &Witness::empty(), &ReductionConfig::unguarded()).expect("transform").target;
            !validate(&t).is_empty()
        })
        .count();
    notes.push(format!("{invalid} emitted decompositions failed validation"));
    equivalence("cnf-to-coloring", &family, |t| solve(t, &budget).expect("coloring oracle").is_yes(), notes)
        && invalid == 0
}

fn certificates(notes: &mut Vec<String>) -> bool {
    let budget = Budget::default();
    let mut ok = true;
    let run = |scheme: &dyn Scheme, family: Vec<ProblemInstance>, notes: &mut Vec<String>| {
        let (mut yes, mut certs, mut failed) = (0, 0u64, 0);
        for inst in &family {
            let r = check_scheme(scheme, inst, &budget).expect("scheme check");
            yes += usize::from(r.answer.is_yes());
            certs += r.certificates_checked;
            if !r.passed() {
                if failed == 0 {
                    notes.push(format!("  first failure on {}: {:?}", inst.to_json(), r.problems));
                }
                failed += 1;
            }
        }
        notes.push(format!(
            "{}: {} instances ({yes} yes), {certs} certificates checked, {failed} failures",
            scheme.name(),
            family.len()
        ));
        failed == 0
    };
    // Item values up to 10; n <= 3 and t <= 20 are exhausted.
    let values: Vec<u64> = (1..=10).collect();
    let unbounded: Vec<ProblemInstance> = multisets(&values, 3)
        .into_iter()
        .flat_map(|items| (0..=20).map(move |t| certkit::instances::UnboundedSubsetSumInstance::from_u64(&items, t).into()))
        .collect();
    ok &= run(&UnboundedScheme, unbounded, notes);
    let z2: Vec<Vec<u32>> = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
    let zkk: Vec<ProblemInstance> = sequences(&z2, 5)
        .into_iter()
        .flat_map(|elements| {
            z2.clone().into_iter().map(move |target| {
                GroupSubsetSumInstance::ProductZkk { k: 2, elements: elements.clone(), target }.into()
            })
        })
        .collect();
    ok &= run(&ZkkScheme, zkk, notes);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut element = |k: u32| (0..k).map(|_| rng.gen_range(0..k)).collect::<Vec<u32>>();
    let mut yes_k3 = Vec::new();
    for _ in 0..200 {
        let elements: Vec<Vec<u32>> = (0..18).map(|_| element(3)).collect();
        let target = element(3);
        yes_k3.push(GroupSubsetSumInstance::ProductZkk { k: 3, elements, target });
    }
    // At k = 3 certificates are 74 bits, so only the honest certificate is checked.
    let mut k3_ok = 0;
    let mut k3_yes = 0;
    for g in &yes_k3 {
        let inst: ProblemInstance = g.clone().into();
        if let Some(sol) = solve(&inst, &budget).expect("group oracle").solution {
            k3_yes += 1;
            let cert = ZkkScheme.synthesize(&inst, &sol).expect("certificate");
            let within = ZkkScheme.cert_len(&inst).expect("length") as u64 <= ZkkScheme.budget_bound(&inst).expect("bound");
            k3_ok += usize::from(ZkkScheme.verify(&inst, &cert).expect("verify") && within);
        }
    }
    notes.push(format!("zkk k = 3: {k3_ok} of {k3_yes} honest certificates accepted within budget"));
    ok && k3_ok == k3_yes
}

fn zero_sum(notes: &mut Vec<String>) -> bool {
    let r = zero_sum_check(2, 0, 0).expect("zero-sum check");
    let z2: Vec<Vec<u32>> = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
    let instances: Vec<GroupSubsetSumInstance> = sequences(&z2, 6)
        .into_iter()
        .flat_map(|elements| {
            z2.clone().into_iter().map(move |target| GroupSubsetSumInstance::ProductZkk {
                k: 2,
                elements: elements.clone(),
                target,
            })
        })
        .collect();
    let m = minimal_solution_bound_check(&instances).expect("minimal check");
    notes.push(format!(
        "k = 2, s = {}: {} sequences, exhaustive = {}, counterexample = {:?}; shortest solutions of {} solvable instances have length <= {}",
        r.s, r.sequences_checked, r.exhaustive, r.counterexample, m.solvable, m.longest_minimum
    ));
    r.exhaustive && r.sequences_checked == 256 && r.counterexample.is_none() && m.violations.is_empty()
}

fn landau(notes: &mut Vec<String>) -> bool {
    let mut worst_degree = 0;
    let ok = (1..=1000u64).all(|n| {
        let (p, degree) = landau_permutation(n, LandauMethod::MinimalDegree);
        worst_degree = worst_degree.max(degree);
        p.order() > n && degree <= 60 && p.degree() == degree
    });
    notes.push(format!("largest degree {worst_degree}"));
    ok
}

fn main() -> ExitCode {
    let criteria: [(&str, fn(&mut Vec<String>) -> bool); 11] = [
        ("numeric chain contract on the exhaustive grid", numeric_chain),
        ("composed round trips on random subset sum", round_trips),
        ("graver sequences k = 1..4", graver),
        ("run, U_q form and gamma-hat power agree for n <= 8", three_way),
        ("chi is a homomorphism", chi_homomorphism),
        ("3-coloring to counter machine to permutation subset sum", coloring_pipeline),
        ("AND-3SAT to scheduling", scheduling),
        ("CNF to 3-coloring", cnf_coloring),
        ("certificate schemes sound, complete and within budget", certificates),
        ("zero-sum premise over Z_2^2", zero_sum),
        ("Landau permutations for n = 1..1000", landau),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let id = (i + 1).to_string();
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let mut notes = Vec::new();
        let ok = run(&mut notes);
        failed += usize::from(!ok);
        println!("{} {id:>2}. {title} ({:.1?})", if ok { "PASS" } else { "FAIL" }, start.elapsed());
        for n in notes {
            println!("      {n}");
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
