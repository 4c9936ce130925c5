use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use certkit::certificates::{check_scheme, nppt_contract_check, scheme_for};
use certkit::families::{
    all_graphs, and_sat_grid, cnfs, counter_machines, ilp_grid, knapsack_grid, modular_grid, named_graph,
    random_3cnf, random_counter_machine, random_subset_sum, random_unbounded, subset_sum_grid,
};
use certkit::instances::{validate, AndSatInstance, GroupSubsetSumInstance, IlpVariant, KnapsackInstance};
use certkit::reduction::{lookup, GuardPolicy, ReductionConfig};
use certkit::{solve, Error, ProblemInstance, Witness};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Exact oracles, reductions and certificate checks for parameterized problems.
#[derive(Parser)]
#[command(name = "certkit", version)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance deterministically from a seed.
    Gen(GenArgs),
    /// Decide an instance with the exact oracle.
    Solve { file: PathBuf },
    /// Apply a reduction (`a+b` composes) with a given or synthesized witness.
    Reduce {
        name: String,
        file: PathBuf,
        #[arg(long, conflicts_with = "synthesize")]
        witness: Option<String>,
        #[arg(long)]
        synthesize: bool,
        #[arg(long, value_enum, default_value_t = Guard::On)]
        guard: Guard,
        /// Target instance path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Sidecar path; defaults to `<out>.sidecar.json`, or stderr.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Check a reduction's contract on an instance family.
    Verify {
        name: String,
        /// e.g. `ss-grid:5,8,40`, `knapsack-grid:3,6`, `random-ss:500,6,30,1`.
        #[arg(long)]
        family: String,
        #[arg(long, value_enum, default_value_t = Guard::On)]
        guard: Guard,
        #[arg(long, default_value_t = 20)]
        max_witness_bits: usize,
    },
    /// Check a certificate scheme (`unbounded`, `zkk`, `indicator`) on an instance.
    CertCheck { scheme: String, file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Guard {
    On,
    Off,
}

impl Guard {
    fn config(self) -> ReductionConfig {
        match self {
            Guard::On => ReductionConfig::default(),
            Guard::Off => ReductionConfig {
                guard: GuardPolicy::Off,
                ..Default::default()
            },
        }
    }
}

#[derive(clap::Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    /// Item, job or vertex count; random kinds draw up to this many.
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value_t = 20)]
    max: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Named graph (`k4`, `c5`, `p4`, ...) for `coloring`.
    #[arg(long)]
    graph: Option<String>,
    /// Named graph to push through coloring-to-cm, for `cm`.
    #[arg(long)]
    from_coloring: Option<String>,
    /// Variables for `cnf` and `and-sat`, `k` for `zkk`.
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    SubsetSum,
    Knapsack,
    Unbounded,
    Coloring,
    Cm,
    Cnf,
    AndSat,
    Zkk,
}

/// Exit codes.
const YES: u8 = 0;
const NO: u8 = 1;
const USAGE: u8 = 2;
const RESOURCE: u8 = 3;
const PARTIAL: u8 = 4;

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Resource(_) => RESOURCE,
            Error::Internal(_) | Error::Construction(_) | Error::ParameterBound { .. } => NO,
            _ => USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: USAGE,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(args) => gen(args, cli.json),
        Command::Solve { file } => solve_cmd(file, cli.json),
        Command::Reduce {
            name,
            file,
            witness,
            synthesize,
            guard,
            out,
            sidecar,
        } => reduce(name, file, witness.as_deref(), *synthesize, *guard, out.as_deref(), sidecar.as_deref()),
        Command::Verify {
            name,
            family,
            guard,
            max_witness_bits,
        } => verify(name, family, *guard, *max_witness_bits, cli.json),
        Command::CertCheck { scheme, file } => cert_check(scheme, file, cli.json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_instance(path: &Path) -> Result<(ProblemInstance, String), Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let inst = ProblemInstance::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let problems = validate(&inst);
    if !problems.is_empty() {
        return Err(usage(format!("{}: {}", path.display(), problems.join("; "))));
    }
    Ok((inst, text))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            say(text);
            Ok(())
        }
    }
}

/// Prints a line, ignoring a closed pipe (`certkit ... | head`).
fn say(text: &str) {
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn pretty(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn gen(args: &GenArgs, json: bool) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let inst: ProblemInstance = match args.kind {
        GenKind::SubsetSum => random_subset_sum(&mut rng, args.n, args.max).into(),
        GenKind::Knapsack => {
            let items: Vec<(u64, u64)> = (0..args.n)
                .map(|_| (rng.gen_range(1..=args.max.max(1)), rng.gen_range(1..=args.max.max(1))))
                .collect();
            let cap = rng.gen_range(0..=args.max * args.n as u64 / 2);
            let demand = rng.gen_range(0..=args.max * args.n as u64 / 2);
            KnapsackInstance::from_u64(&items, cap, demand).into()
        }
        GenKind::Unbounded => random_unbounded(&mut rng, args.n, args.max).into(),
        GenKind::Coloring => {
            let name = args.graph.as_deref().unwrap_or("k3");
            named_graph(name).ok_or_else(|| usage(format!("unknown graph {name}")))?.into()
        }
        GenKind::Cm => match &args.from_coloring {
            Some(name) => {
                let g: ProblemInstance = named_graph(name).ok_or_else(|| usage(format!("unknown graph {name}")))?.into();
                let cfg = Guard::Off.config();
                lookup("coloring-to-cm")?.apply(&g, &Witness::empty(), &cfg)?.target
            }
            None => random_counter_machine(&mut rng, args.k.max(1), args.n).into(),
        },
        GenKind::Cnf => random_3cnf(&mut rng, args.k.max(1), args.n.max(1)).into(),
        GenKind::AndSat => AndSatInstance {
            num_vars: args.k.max(1),
            formulas: (0..args.n).map(|_| random_3cnf(&mut rng, args.k.max(1), 3)).collect(),
        }
        .into(),
        GenKind::Zkk => {
            let k = u32::try_from(args.k.max(1)).map_err(|_| usage("k too large"))?;
            let mut element = || (0..k).map(|_| rng.gen_range(0..k)).collect::<Vec<u32>>();
            let elements = (0..args.n).map(|_| element()).collect();
            GroupSubsetSumInstance::ProductZkk {
                k,
                elements,
                target: element(),
            }
            .into()
        }
    };
    let text = if json { inst.to_json() } else { pretty(&inst) };
    emit(&text, args.out.as_deref())?;
    Ok(YES)
}

fn solve_cmd(file: &Path, json: bool) -> Outcome {
    let (inst, _) = read_instance(file)?;
    let verdict = solve(&inst, &Default::default())?;
    if json {
        say(&serde_json::to_string(&verdict).expect("serializable"));
    } else {
        say(&pretty(&verdict));
    }
    Ok(if verdict.is_yes() { YES } else { NO })
}

#[derive(Serialize)]
struct Sidecar {
    source_sha256: String,
    reduction: String,
    witness: String,
    witness_bits: usize,
    guard: GuardPolicy,
    parameter_before: u64,
    parameter_after: u64,
    parameter_bound: u64,
}

fn reduce(
    name: &str,
    file: &Path,
    witness: Option<&str>,
    synthesize: bool,
    guard: Guard,
    out: Option<&Path>,
    sidecar: Option<&Path>,
) -> Outcome {
    let (inst, text) = read_instance(file)?;
    let r = lookup(name)?;
    let cfg = guard.config();
    let len = r.witness_len(&inst, &cfg)?;
    let w = match (witness, synthesize) {
        (Some(hex), _) => Witness::from_hex(hex, len)?,
        (None, true) => {
            let verdict = solve(&inst, &cfg.budget)?;
            let Some(sol) = verdict.solution else {
                eprintln!("error: the source is a no-instance, no witness to synthesize");
                return Ok(NO);
            };
            r.synthesize(&inst, &sol, &cfg)?
        }
        (None, false) if len == 0 => Witness::empty(),
        (None, false) => return Err(usage(format!("{name} needs a {len}-bit --witness or --synthesize"))),
    };
    let app = r.apply(&inst, &w, &cfg)?;
    let meta = Sidecar {
        source_sha256: hex::encode(Sha256::digest(text.as_bytes())),
        reduction: r.name(),
        witness: w.to_hex(),
        witness_bits: w.len(),
        guard: cfg.guard,
        parameter_before: app.params.before,
        parameter_after: app.params.after,
        parameter_bound: app.params.bound,
    };
    emit(&pretty(&app.target), out)?;
    let sidecar_path = sidecar.map(Path::to_path_buf).or_else(|| {
        out.map(|o| {
            let mut s = o.as_os_str().to_owned();
            s.push(".sidecar.json");
            PathBuf::from(s)
        })
    });
    match sidecar_path {
        Some(p) => emit(&pretty(&meta), Some(&p))?,
        None => eprintln!("{}", serde_json::to_string(&meta).expect("serializable")),
    }
    Ok(YES)
}

fn numbers(args: &str, count: usize) -> Result<Vec<u64>, Failure> {
    let v: Vec<u64> = args
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| s.trim().parse().map_err(|_| usage(format!("bad number {s:?} in family"))))
        .collect::<Result<_, _>>()?;
    if v.len() != count {
        return Err(usage(format!("family expects {count} numbers, got {}", v.len())));
    }
    Ok(v)
}

/// Family specs: `ss-grid:n,max,tmax`, `zq-grid:n,qmax`, `knapsack-grid:n,v`,
/// `monotone-grid:m,n`, `zerosum-grid:m,n`, `ilp-grid:m,n`,
/// `random-ss:count,n,max,seed`, `graphs:n`, `cm:dim,n`, `cm-random:count,dim,n,seed`,
/// `andsat:k,formulas,clauses`, `cnf:k,clauses,arity`, `3cnf-random:count,k,clauses,seed`,
/// `file:<path>`.
fn family(spec: &str) -> Result<Vec<ProblemInstance>, Failure> {
    let (kind, args) = spec.split_once(':').unwrap_or((spec, ""));
    let us = |x: u64| x as usize;
    Ok(match kind {
        "ss-grid" => {
            let v = numbers(args, 3)?;
            subset_sum_grid(us(v[0]), v[1], v[2])
        }
        "zq-grid" => {
            let v = numbers(args, 2)?;
            modular_grid(us(v[0]), v[1])
        }
        "knapsack-grid" => {
            let v = numbers(args, 2)?;
            knapsack_grid(us(v[0]), v[1])
        }
        "monotone-grid" | "zerosum-grid" | "ilp-grid" => {
            let v = numbers(args, 2)?;
            let variant = match kind {
                "monotone-grid" => IlpVariant::Monotone,
                "zerosum-grid" => IlpVariant::ZeroSum,
                _ => IlpVariant::Standard,
            };
            ilp_grid(variant, us(v[0]), us(v[1]))
        }
        "random-ss" => {
            let v = numbers(args, 4)?;
            let mut rng = ChaCha8Rng::seed_from_u64(v[3]);
            (0..v[0]).map(|_| random_subset_sum(&mut rng, us(v[1]), v[2]).into()).collect()
        }
        "graphs" => {
            let v = numbers(args, 1)?;
            (0..=us(v[0])).flat_map(all_graphs).map(Into::into).collect()
        }
        "cm" => {
            let v = numbers(args, 2)?;
            counter_machines(us(v[0]).max(1), us(v[1])).into_iter().map(Into::into).collect()
        }
        "cm-random" => {
            let v = numbers(args, 4)?;
            let mut rng = ChaCha8Rng::seed_from_u64(v[3]);
            (0..v[0])
                .map(|_| random_counter_machine(&mut rng, us(v[1]).max(1), us(v[2])).into())
                .collect()
        }
        "andsat" => {
            let v = numbers(args, 3)?;
            and_sat_grid(us(v[0]), us(v[1]), us(v[2]))
        }
        "cnf" => {
            let v = numbers(args, 3)?;
            cnfs(us(v[0]), us(v[1]), us(v[2])).into_iter().map(Into::into).collect()
        }
        "3cnf-random" => {
            let v = numbers(args, 4)?;
            let mut rng = ChaCha8Rng::seed_from_u64(v[3]);
            (0..v[0])
                .map(|_| random_3cnf(&mut rng, us(v[1]).max(1), us(v[2]).max(1)).into())
                .collect()
        }
        "file" => vec![read_instance(Path::new(args))?.0],
        other => return Err(usage(format!("unknown family {other}"))),
    })
}

fn verify(name: &str, spec: &str, guard: Guard, max_bits: usize, json: bool) -> Outcome {
    let r = lookup(name)?;
    let fam = family(spec)?;
    let rep = nppt_contract_check(r.as_ref(), fam, &guard.config(), max_bits);
    if json {
        say(&serde_json::to_string(&rep).expect("serializable"));
    } else {
        say(&format!(
            "{}: {} instances ({} yes, {} no), {} witnesses, {} violations, {} skipped",
            rep.reduction,
            rep.instances,
            rep.yes,
            rep.no,
            rep.witnesses,
            rep.violations.len(),
            rep.skipped.len()
        ));
        for v in &rep.violations {
            say(&format!(
                "VIOLATION {:?} witness={} {} :: {}",
                v.kind,
                v.witness.as_deref().unwrap_or("-"),
                v.detail,
                v.instance.to_json()
            ));
        }
        for s in &rep.skipped {
            say(&format!("SKIPPED {} :: {}", s.reason, s.instance.to_json()));
        }
    }
    Ok(if !rep.violations.is_empty() {
        NO
    } else if !rep.skipped.is_empty() {
        PARTIAL
    } else {
        YES
    })
}

fn cert_check(scheme: &str, file: &Path, json: bool) -> Outcome {
    let (inst, _) = read_instance(file)?;
    let s = scheme_for(scheme, inst.kind())?;
    let report = check_scheme(s.as_ref(), &inst, &Default::default())?;
    if json {
        say(&serde_json::to_string(&report).expect("serializable"));
    } else {
        say(&pretty(&report));
    }
    Ok(if report.passed() { YES } else { NO })
}
