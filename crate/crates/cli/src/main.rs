use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use demandcover::branch::{self, SearchStats};
use demandcover::bribery::{brute_bribery, solve_bribery_general, solve_bribery_t1};
use demandcover::consent::BriberyInstance;
use demandcover::format::{
    parse_bribery, parse_bribes, parse_setcover, parse_solution, serialize_bribery,
    serialize_bribes, serialize_setcover, serialize_solution,
};
use demandcover::generate::{
    generate_bribery, generate_setcover, BriberyParams, PriceParams, SetCoverParams,
};
use demandcover::oracle::{brute_decision, candidate_count};
use demandcover::threshold::{solve_capacities_threshold, solve_demands_threshold};
use demandcover::transform::complement;
use demandcover::{Error, Mode, SetCoverInstance, Solution, Verdict};

const YES: u8 = 0;
const NO: u8 = 1;
const FAILURE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "demandcover",
    version,
    about = "Set cover with demands/capacities and consent-rule bribery"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a set-cover instance; exit 0 on YES, 1 on NO
    Solve {
        /// Instance file, or `-` for stdin
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Algorithm::Branch)]
        algorithm: Algorithm,
        /// Print search statistics (branch algorithm)
        #[arg(long)]
        stats: bool,
        /// Ignore k and search every cardinality the price budget allows
        #[arg(long)]
        any_k: bool,
    },
    /// Check a solution against an instance; exit 0 when valid
    Verify {
        instance: PathBuf,
        solution: PathBuf,
    },
    /// Print the complemented instance (demands <-> capacities)
    Transform { file: PathBuf },
    /// Generate a random set-cover instance
    Gen(GenArgs),
    /// Time solvers on generated instances and print CSV
    Bench {
        #[command(flatten)]
        gen: GenArgs,
        /// Comma-separated list of solvers
        #[arg(long, value_enum, value_delimiter = ',', default_value = "branch")]
        algorithms: Vec<Algorithm>,
        #[arg(long, default_value_t = 1)]
        repeat: u64,
    },
    /// Constructive agent bribery under the consent rule
    Bribery {
        #[command(subcommand)]
        command: BriberyCommand,
    },
}

#[derive(Subcommand)]
enum BriberyCommand {
    /// Solve a bribery instance; exit 0 on YES, 1 on NO
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = BriberyAlgorithm::Auto)]
        algorithm: BriberyAlgorithm,
    },
    /// Check a bribe set; exit 0 when it makes every target qualified
    Verify { instance: PathBuf, bribes: PathBuf },
    /// Generate a random bribery instance
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        targets: usize,
        #[arg(long, default_value_t = 0.5)]
        positive_rate: f64,
    },
}

#[derive(Args, Clone)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Demands)]
    mode: ModeArg,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long)]
    multiplicities: bool,
    /// Draw prices from `min-price..=max-price` with this budget
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    min_price: u64,
    #[arg(long, default_value_t = 5)]
    max_price: u64,
}

impl GenArgs {
    fn params(&self) -> SetCoverParams {
        let mut p = SetCoverParams::new(self.n, self.m, self.k, self.mode.into(), self.density);
        p.multiplicities = self.multiplicities;
        p.pricing = self.budget.map(|budget| PriceParams {
            min_price: self.min_price,
            max_price: self.max_price,
            budget,
        });
        p
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Branch,
    Threshold,
    Brute,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Branch => "branch",
            Algorithm::Threshold => "threshold",
            Algorithm::Brute => "brute",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BriberyAlgorithm {
    /// t1 when t = 1, general otherwise
    Auto,
    T1,
    General,
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Demands,
    Capacities,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Demands => Mode::Demands,
            ModeArg::Capacities => Mode::Capacities,
        }
    }
}

fn read_input(path: &Path) -> Result<String, String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn load<T>(path: &Path, parse: impl Fn(&str) -> demandcover::Result<T>) -> Result<T, String> {
    let text = read_input(path)?;
    parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

struct Answer {
    solution: Option<Solution>,
    stats: Option<SearchStats>,
    work: u128,
}

fn check_threshold(instance: &SetCoverInstance) -> Result<(), Error> {
    if instance.is_priced() || instance.multiplicities() {
        return Err(Error::Unsupported(
            "threshold algorithm handles plain instances only (no prices, no multiplicities)"
                .into(),
        ));
    }
    Ok(())
}

fn run_solver(instance: &SetCoverInstance, algorithm: Algorithm) -> Result<Answer, Error> {
    Ok(match algorithm {
        Algorithm::Branch => {
            let (solution, stats) = branch::solve(instance)?;
            Answer {
                solution,
                stats: Some(stats),
                work: stats.nodes_visited as u128,
            }
        }
        Algorithm::Threshold => {
            check_threshold(instance)?;
            let outcome = match instance.mode() {
                Mode::Capacities => Some(solve_capacities_threshold(instance)?),
                Mode::Demands => solve_demands_threshold(instance)?,
            };
            Answer {
                work: outcome.as_ref().map_or(0, |o| o.subsets_checked as u128),
                solution: outcome.and_then(|o| o.solution),
                stats: None,
            }
        }
        Algorithm::Brute => Answer {
            solution: brute_decision(instance)?,
            stats: None,
            work: candidate_count(instance),
        },
    })
}

fn cmd_solve(file: &Path, algorithm: Algorithm, stats: bool, any_k: bool) -> Result<u8, String> {
    let instance = load(file, parse_setcover)?;
    let answer = if any_k {
        if algorithm != Algorithm::Branch {
            return Err("--any-k runs with the branch algorithm only".into());
        }
        Answer {
            solution: branch::solve_priced_anyk(&instance).map_err(|e| e.to_string())?,
            stats: None,
            work: 0,
        }
    } else {
        run_solver(&instance, algorithm).map_err(|e| e.to_string())?
    };
    let mut out = String::new();
    let code = match &answer.solution {
        Some(s) => {
            out.push_str("YES\n");
            out.push_str(&serialize_solution(s));
            YES
        }
        None => {
            out.push_str("NO\n");
            NO
        }
    };
    if let (true, Some(st)) = (stats, answer.stats) {
        writeln!(
            out,
            "nodes={} branches={} depth={}",
            st.nodes_visited, st.branches_taken, st.max_depth
        )
        .unwrap();
    }
    print!("{out}");
    Ok(code)
}

fn cmd_verify(instance: &Path, solution: &Path) -> Result<u8, String> {
    let inst = load(instance, parse_setcover)?;
    let sol = load(solution, parse_solution)?;
    match inst.verify(&sol).map_err(|e| e.to_string())? {
        Verdict::Valid => {
            println!("VALID");
            Ok(YES)
        }
        Verdict::Invalid(v) => {
            println!("INVALID: {v}");
            Ok(NO)
        }
    }
}

fn cmd_transform(file: &Path) -> Result<u8, String> {
    let inst = load(file, parse_setcover)?;
    match complement(&inst) {
        Ok(out) => {
            print!("{}", serialize_setcover(&out));
            Ok(YES)
        }
        Err(e @ Error::TriviallyInfeasible { .. }) => {
            println!("NO");
            eprintln!("{e}");
            Ok(NO)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_gen(args: &GenArgs) -> Result<u8, String> {
    let inst = generate_setcover(args.seed, &args.params()).map_err(|e| e.to_string())?;
    print!("{}", serialize_setcover(&inst));
    Ok(YES)
}

fn cmd_bench(gen: &GenArgs, algorithms: &[Algorithm], repeat: u64) -> Result<u8, String> {
    let params = gen.params();
    if algorithms.contains(&Algorithm::Threshold)
        && (params.pricing.is_some() || params.multiplicities)
    {
        return Err("threshold algorithm handles plain instances only".into());
    }
    let mut out = String::from("seed,algorithm,n,m,k,s_max,o_max,answer,nodes,micros\n");
    for rep in 0..repeat {
        let seed = gen.seed.wrapping_add(rep);
        let inst = generate_setcover(seed, &params).map_err(|e| e.to_string())?;
        // fan-out parameters of the capacities form the search runs on
        let searched = match inst.mode() {
            Mode::Capacities => inst.clone(),
            Mode::Demands => complement(&inst).unwrap_or_else(|_| inst.clone()),
        };
        for &alg in algorithms {
            let start = Instant::now();
            let answer = run_solver(&inst, alg).map_err(|e| e.to_string())?;
            let micros = start.elapsed().as_micros();
            writeln!(
                out,
                "{seed},{},{},{},{},{},{},{},{},{micros}",
                alg.name(),
                inst.n(),
                inst.m(),
                inst.k(),
                searched.max_set_size(),
                searched.max_occurrence(),
                if answer.solution.is_some() {
                    "YES"
                } else {
                    "NO"
                },
                answer.work,
            )
            .unwrap();
        }
    }
    print!("{out}");
    Ok(YES)
}

fn solve_bribery(
    inst: &BriberyInstance,
    algorithm: BriberyAlgorithm,
) -> demandcover::Result<Option<demandcover::consent::BribeSet>> {
    match algorithm {
        BriberyAlgorithm::Auto if inst.t() == 1 => solve_bribery_t1(inst),
        BriberyAlgorithm::Auto | BriberyAlgorithm::General => solve_bribery_general(inst),
        BriberyAlgorithm::T1 => solve_bribery_t1(inst),
        BriberyAlgorithm::Brute => brute_bribery(inst),
    }
}

fn cmd_bribery(command: &BriberyCommand) -> Result<u8, String> {
    match command {
        BriberyCommand::Solve { file, algorithm } => {
            let inst = load(file, parse_bribery)?;
            match solve_bribery(&inst, *algorithm).map_err(|e| e.to_string())? {
                Some(b) => {
                    print!("YES\n{}", serialize_bribes(&b));
                    Ok(YES)
                }
                None => {
                    println!("NO");
                    Ok(NO)
                }
            }
        }
        BriberyCommand::Verify { instance, bribes } => {
            let inst = load(instance, parse_bribery)?;
            let b = load(bribes, parse_bribes)?;
            if b.len() > inst.ell() {
                println!("INVALID: {} bribes exceed budget {}", b.len(), inst.ell());
                return Ok(NO);
            }
            let after = inst.profile().apply_bribe(&b).map_err(|e| e.to_string())?;
            match inst
                .targets()
                .iter()
                .find(|&&a| !after.is_socially_qualified(a, inst.s(), inst.t()))
            {
                None => {
                    println!("VALID");
                    Ok(YES)
                }
                Some(a) => {
                    println!("INVALID: target {a} is not socially qualified");
                    Ok(NO)
                }
            }
        }
        BriberyCommand::Gen {
            seed,
            n,
            s,
            t,
            ell,
            targets,
            positive_rate,
        } => {
            let params = BriberyParams {
                n: *n,
                s: *s,
                t: *t,
                ell: *ell,
                target_count: *targets,
                positive_rate: *positive_rate,
            };
            let inst = generate_bribery(*seed, &params).map_err(|e| e.to_string())?;
            print!("{}", serialize_bribery(&inst));
            Ok(YES)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match &cli.command {
        Command::Solve {
            file,
            algorithm,
            stats,
            any_k,
        } => cmd_solve(file, *algorithm, *stats, *any_k),
        Command::Verify { instance, solution } => cmd_verify(instance, solution),
        Command::Transform { file } => cmd_transform(file),
        Command::Gen(args) => cmd_gen(args),
        Command::Bench {
            gen,
            algorithms,
            repeat,
        } => cmd_bench(gen, algorithms, *repeat),
        Command::Bribery { command } => cmd_bribery(command),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(FAILURE)
        }
    }
}
