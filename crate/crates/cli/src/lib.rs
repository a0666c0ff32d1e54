//! Subcommands of the `house-alloc` binary. Each `cmd_*` returns the text it
//! would print, so the commands can be driven from tests.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use house_alloc::experiment::{generate, run_experiment, write_csv, GenConfig, GridPoint, ProfileKind};
use house_alloc::extremal::solve_extremal;
use house_alloc::ilp::{build_p1, build_p2, build_total_envy, export_lp, realize_allocation, solve_types, type_profile};
use house_alloc::solvers::{brute_force_with, envy_free_allocation, solve_fpt_subsets, solve_square, OracleLimits};
use house_alloc::special::{solve_house_degree_two_oha, solve_single_minded};
use house_alloc::welfare::pof_with;
use house_alloc::{envy_report, kernelize, solve, Instance, Kernelized, Method, Objective, SolveResult};

#[derive(Debug, Parser)]
#[command(name = "house-alloc", version, about = "Envy-minimizing house allocation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random instance with a fixed number of agent types.
    Gen(GenArgs),
    /// Solve an instance for one objective.
    Solve(SolveArgs),
    /// Decide whether an envy-free allocation exists.
    CheckEf { file: PathBuf },
    /// Apply the reduction rules and write the reduced instance and trace.
    Kernelize(KernelizeArgs),
    /// Price of fairness for all three objectives.
    Pof(PofArgs),
    /// Write the type-based integer model in LP format.
    ExportLp(ExportArgs),
    /// Run a grid of random trials and write one CSV row per trial and objective.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Binary,
    Strict,
}

#[derive(Debug, clap::Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long = "n-star")]
    pub n_star: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "binary")]
    pub kind: Kind,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveMethod {
    Auto,
    Oracle,
    Fpt,
    Ilp,
    Square,
    Extremal,
    SingleMinded,
    Degree2,
}

#[derive(Debug, clap::Args)]
pub struct SolveArgs {
    pub file: PathBuf,
    #[arg(long, default_value = "oha")]
    pub objective: Objective,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: SolveMethod,
    /// Print a JSON object instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, clap::Args)]
pub struct KernelizeArgs {
    pub file: PathBuf,
    /// Where to write the reduced instance (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct PofArgs {
    pub file: PathBuf,
    #[arg(long, default_value_t = 8)]
    pub max_agents: usize,
    #[arg(long, default_value_t = 10)]
    pub max_houses: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LpModel {
    P1,
    P2,
    Uha,
}

#[derive(Debug, clap::Args)]
pub struct ExportArgs {
    pub file: PathBuf,
    #[arg(long, value_enum, default_value = "p1")]
    pub model: LpModel,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct ExperimentArgs {
    /// Grid point as n:m:n_star; repeat for more points.
    #[arg(long = "config", value_parser = parse_point)]
    pub configs: Vec<GridPoint>,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// Run trials one after another instead of in parallel.
    #[arg(long)]
    pub serial: bool,
}

pub fn parse_point(s: &str) -> std::result::Result<GridPoint, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [n, m, k] = parts[..] else {
        return Err(format!("expected n:m:n_star, got `{s}`"));
    };
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok(GridPoint { n: num(n)?, m: num(m)?, n_star: num(k)? })
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Instance::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_or_return(out: Option<&Path>, text: String) -> Result<String> {
    match out {
        Some(p) => {
            fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
            Ok(format!("wrote {}\n", p.display()))
        }
        None => Ok(text),
    }
}

pub fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Gen(a) => cmd_gen(&a),
        Command::Solve(a) => cmd_solve(&a),
        Command::CheckEf { file } => cmd_check_ef(&file),
        Command::Kernelize(a) => cmd_kernelize(&a),
        Command::Pof(a) => cmd_pof(&a),
        Command::ExportLp(a) => cmd_export_lp(&a),
        Command::Experiment(a) => cmd_experiment(&a),
    }
}

pub fn cmd_gen(args: &GenArgs) -> Result<String> {
    let kind = match args.kind {
        Kind::Binary => ProfileKind::Binary,
        Kind::Strict => ProfileKind::Strict,
    };
    let inst = generate(&GenConfig {
        n: args.n,
        m: args.m,
        n_star: args.n_star,
        seed: args.seed,
        kind,
    })?;
    write_or_return(args.out.as_deref(), inst.to_json() + "\n")
}

fn solve_by(inst: &Instance, objective: Objective, method: SolveMethod) -> Result<SolveResult> {
    let oracle = || brute_force_with(inst, objective, OracleLimits::default());
    let res = match method {
        SolveMethod::Auto if inst.is_binary() => solve(inst, objective)?,
        SolveMethod::Auto if inst.n() == inst.m() => match solve_square(inst, objective) {
            Ok(r) => r,
            Err(_) => oracle()?,
        },
        SolveMethod::Auto | SolveMethod::Oracle => oracle()?,
        SolveMethod::Fpt => solve_fpt_subsets(inst, objective)?,
        SolveMethod::Square => solve_square(inst, objective)?,
        SolveMethod::Extremal => solve_extremal(inst, objective)?,
        SolveMethod::SingleMinded => solve_single_minded(inst, objective)?,
        SolveMethod::Degree2 => {
            if objective != Objective::NumEnvious {
                bail!("the degree-2 method only minimizes the number of envious agents");
            }
            solve_house_degree_two_oha(inst)?
        }
        SolveMethod::Ilp => {
            let profile = type_profile(inst)?;
            let (_, x) = solve_types(&profile, objective)?;
            SolveResult::evaluate(inst, realize_allocation(&profile, &x)?, objective, Method::Ilp)?
        }
    };
    Ok(res)
}

pub fn cmd_solve(args: &SolveArgs) -> Result<String> {
    let inst = read_instance(&args.file)?;
    let res = solve_by(&inst, args.objective, args.method)?;
    let report = envy_report(&inst, &res.allocation)?;
    if args.json {
        let v = serde_json::json!({
            "objective": args.objective.short_name(),
            "value": res.value,
            "method": res.method.tag(),
            "allocation": res.allocation.houses(),
            "kappa_num": report.num_envious,
            "kappa_max": report.max_envy,
            "kappa_total": report.total_envy,
            "welfare": report.welfare,
            "per_agent": report.per_agent,
        });
        return Ok(serde_json::to_string_pretty(&v)? + "\n");
    }
    let mut out = String::new();
    writeln!(out, "objective: {}", args.objective)?;
    writeln!(out, "value: {}", res.value)?;
    writeln!(out, "method: {}", res.method)?;
    writeln!(out, "allocation: {}", format_allocation(res.allocation.houses()))?;
    writeln!(out, "kappa_num: {}", report.num_envious)?;
    writeln!(out, "kappa_max: {}", report.max_envy)?;
    writeln!(out, "kappa_total: {}", report.total_envy)?;
    match report.welfare {
        Some(w) => writeln!(out, "welfare: {w}")?,
        None => writeln!(out, "welfare: n/a")?,
    }
    Ok(out)
}

fn format_allocation(houses: &[usize]) -> String {
    houses
        .iter()
        .enumerate()
        .map(|(a, h)| format!("{a}->{h}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn cmd_check_ef(file: &Path) -> Result<String> {
    let inst = read_instance(file)?;
    Ok(match envy_free_allocation(&inst)? {
        Some(a) => format!("envy-free: yes\nallocation: {}\n", format_allocation(a.houses())),
        None => "envy-free: no\n".to_string(),
    })
}

pub fn cmd_kernelize(args: &KernelizeArgs) -> Result<String> {
    let inst = read_instance(&args.file)?;
    let mut out = String::new();
    let trace = match kernelize(&inst)? {
        Kernelized::TrivialYes { allocation, trace } => {
            writeln!(out, "trivial yes-instance: enough dummy houses for every agent")?;
            writeln!(out, "allocation: {}", format_allocation(allocation.houses()))?;
            trace
        }
        Kernelized::Reduced { instance, trace } => {
            writeln!(out, "reduced: n = {}, m = {} (from n = {}, m = {})", instance.n(), instance.m(), inst.n(), inst.m())?;
            out.push_str(&write_or_return(args.out.as_deref(), instance.to_json() + "\n")?);
            trace
        }
    };
    if let Some(p) = &args.trace {
        fs::write(p, serde_json::to_string_pretty(&trace)? + "\n")
            .with_context(|| format!("writing {}", p.display()))?;
        writeln!(out, "wrote {}", p.display())?;
    }
    Ok(out)
}

pub fn cmd_pof(args: &PofArgs) -> Result<String> {
    let inst = read_instance(&args.file)?;
    let limits = OracleLimits {
        max_agents: args.max_agents,
        max_houses: args.max_houses,
    };
    let rep = pof_with(&inst, limits)?;
    let mut out = format!("max welfare: {}\n", rep.max_welfare);
    for e in &rep.entries {
        writeln!(
            out,
            "{}: optimum {}, best fair welfare {}, ratio {}",
            e.objective, e.optimum, e.best_fair_welfare, e.ratio
        )?;
    }
    Ok(out)
}

pub fn cmd_export_lp(args: &ExportArgs) -> Result<String> {
    let inst = read_instance(&args.file)?;
    let profile = type_profile(&inst)?;
    let model = match args.model {
        LpModel::P1 => build_p1(&profile),
        LpModel::P2 => build_p2(&profile),
        LpModel::Uha => build_total_envy(&profile),
    };
    write_or_return(args.out.as_deref(), export_lp(&model))
}

pub fn cmd_experiment(args: &ExperimentArgs) -> Result<String> {
    let rows = run_experiment(&args.configs, args.trials, args.seed, !args.serial)?;
    let file = fs::File::create(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    write_csv(std::io::BufWriter::new(file), &rows)?;
    Ok(format!("wrote {} rows to {}\n", rows.len(), args.out.display()))
}
