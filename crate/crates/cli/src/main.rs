//! Command-line front end: solve words, run the naive baseline, generate
//! hard words, manipulate circuit files and benchmark both engines.
//!
//! Exit codes: 0 trivial/success, 1 non-trivial, 2 usage or format error,
//! 3 resource budget exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use baumslag::baumslag_solitar::{bs_normalize, BsOutcome};
use baumslag::word_problem::{
    commutator, hard_word, naive_solve_with_stats, solve_with_stats, NaiveOutcome, Verdict,
};
use baumslag::{Error, PowerCircuit, PowerSequence, DEFAULT_BIT_BUDGET};

const EXIT_TRIVIAL: u8 = 0;
const EXIT_NONTRIVIAL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "baumslag", version, about = "Word problem in the Baumslag group via power circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a word represents the identity.
    Solve(SolveArgs),
    /// Print the hard word w_k (or a commutator with it).
    HardWord(HardWordArgs),
    /// Collapse an {a,t} word to a^M t^σ in the Baumslag-Solitar group.
    BsNormalize(BsNormalizeArgs),
    /// Operations on power circuit files.
    Circuit(CircuitArgs),
    /// Benchmark the solvers on the hard-word commutator family.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Circuit,
    Naive,
}

#[derive(Args)]
struct SolveArgs {
    /// The word, or @FILE to read it from a file.
    word: String,
    #[arg(long, value_enum, default_value = "circuit")]
    engine: Engine,
    /// Work cap for the naive engine.
    #[arg(long, default_value_t = 1_000_000)]
    step_cap: u64,
    /// Bit budget for explicit exponents.
    #[arg(long, default_value_t = DEFAULT_BIT_BUDGET)]
    max_bits: u64,
}

#[derive(Args)]
struct HardWordArgs {
    /// Tower height k (word length grows like 2^k).
    k: u32,
    /// Emit the commutator [w_k, a] or [w_k, b] instead.
    #[arg(long, value_parser = ["a", "b"])]
    commutator_with: Option<String>,
}

#[derive(Args)]
struct BsNormalizeArgs {
    /// A word over a and t.
    word: String,
    #[arg(long, default_value_t = DEFAULT_BIT_BUDGET)]
    max_bits: u64,
    /// Where to write circuit files when exponents exceed the bit budget.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct CircuitArgs {
    #[command(subcommand)]
    command: CircuitCommand,
}

#[derive(Subcommand)]
enum CircuitCommand {
    /// Evaluate a circuit file to a decimal integer.
    Eval {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BIT_BUDGET)]
        max_bits: u64,
    },
    /// Reduce a circuit file to normal form (text to stdout).
    Reduce { file: PathBuf },
    /// Print the sign (-1, 0 or 1) of a circuit file's value.
    Sign { file: PathBuf },
    /// Render a circuit file as GraphViz DOT.
    Dot { file: PathBuf },
    /// Binary circuit operations; writes the result circuit to -o.
    Op {
        #[arg(value_parser = ["add", "sub", "mul2", "div2"])]
        op: String,
        file1: PathBuf,
        file2: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value = "wk-commutator", value_parser = ["wk-commutator"])]
    family: String,
    #[arg(long, default_value_t = 8)]
    k_max: u32,
    /// Comma-separated engine list.
    #[arg(long, default_value = "circuit,naive", value_delimiter = ',', value_enum)]
    engines: Vec<Engine>,
    /// CSV output path.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, default_value_t = 1_000_000)]
    step_cap: u64,
    #[arg(long, default_value_t = DEFAULT_BIT_BUDGET)]
    max_bits: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::HardWord(args) => cmd_hard_word(args),
        Command::BsNormalize(args) => cmd_bs_normalize(args),
        Command::Circuit(args) => cmd_circuit(args.command),
        Command::Bench(args) => cmd_bench(args),
    };
    match code {
        Ok(c) => ExitCode::from(c),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn read_word(spec: &str) -> Result<PowerSequence, String> {
    let text = match spec.strip_prefix('@') {
        Some(path) => {
            fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?
        }
        None => spec.to_string(),
    };
    PowerSequence::parse(&text).map_err(|e| e.to_string())
}

fn read_circuit(path: &Path) -> Result<PowerCircuit, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    PowerCircuit::from_text(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_solve(args: SolveArgs) -> Result<u8, String> {
    let word = read_word(&args.word)?;
    match args.engine {
        Engine::Circuit => {
            let (verdict, stats) = solve_with_stats(&word);
            match verdict {
                Verdict::Yes => {
                    println!("trivial (pinch eliminations: {})", stats.replacements);
                    Ok(EXIT_TRIVIAL)
                }
                Verdict::No => {
                    println!("non-trivial (pinch eliminations: {})", stats.replacements);
                    Ok(EXIT_NONTRIVIAL)
                }
            }
        }
        Engine::Naive => {
            let (outcome, stats) = naive_solve_with_stats(&word, args.step_cap, args.max_bits);
            match outcome {
                NaiveOutcome::Yes => {
                    println!("trivial (work: {})", stats.work);
                    Ok(EXIT_TRIVIAL)
                }
                NaiveOutcome::No => {
                    println!("non-trivial (work: {})", stats.work);
                    Ok(EXIT_NONTRIVIAL)
                }
                NaiveOutcome::ResourceExceeded(r) => {
                    println!("resource exceeded: {r:?} (work: {})", stats.work);
                    Ok(EXIT_RESOURCE)
                }
            }
        }
    }
}

fn cmd_hard_word(args: HardWordArgs) -> Result<u8, String> {
    if args.k > 16 {
        return Err(format!("k = {} gives a word of over 700k letters; pick k <= 16", args.k));
    }
    let w = hard_word(args.k);
    let w = match args.commutator_with.as_deref() {
        None => w,
        Some(g) => {
            let other = PowerSequence::parse(g).expect("validated letter");
            commutator(&w, &other)
        }
    };
    println!("{}", w.to_word_string(64).expect("exponents are ±1"));
    Ok(EXIT_TRIVIAL)
}

fn cmd_bs_normalize(args: BsNormalizeArgs) -> Result<u8, String> {
    let word = read_word(&args.word)?;
    if word
        .entries()
        .iter()
        .any(|(l, _)| *l == baumslag::Letter::B)
    {
        return Err("bs-normalize takes words over a and t only".into());
    }
    match bs_normalize(&word) {
        BsOutcome::Irreducible => {
            println!("irreducible");
            Ok(EXIT_TRIVIAL)
        }
        BsOutcome::Collapsed(nf) => {
            let a = nf.a_exp.eval(args.max_bits);
            let t = nf.t_exp.eval(args.max_bits);
            match (a, t) {
                (Ok(a), Ok(t)) => {
                    println!("a^{a} t^{t}");
                    Ok(EXIT_TRIVIAL)
                }
                _ => {
                    // Too large to print in decimal: hand out circuit files.
                    let a_path = args.out_dir.join("bs_normal_a_exp.pc");
                    let t_path = args.out_dir.join("bs_normal_t_exp.pc");
                    fs::write(&a_path, nf.a_exp.to_text())
                        .map_err(|e| format!("cannot write {}: {e}", a_path.display()))?;
                    fs::write(&t_path, nf.t_exp.to_text())
                        .map_err(|e| format!("cannot write {}: {e}", t_path.display()))?;
                    println!(
                        "exponents exceed {} bits; circuits written to {} and {}",
                        args.max_bits,
                        a_path.display(),
                        t_path.display()
                    );
                    Ok(EXIT_TRIVIAL)
                }
            }
        }
    }
}

fn cmd_circuit(cmd: CircuitCommand) -> Result<u8, String> {
    match cmd {
        CircuitCommand::Eval { file, max_bits } => {
            let c = read_circuit(&file)?;
            match c.eval(max_bits) {
                Ok(n) => {
                    println!("{n}");
                    Ok(EXIT_TRIVIAL)
                }
                Err(Error::BudgetExceeded { budget }) => {
                    eprintln!("value exceeds {budget} bits; try `circuit reduce` or raise --max-bits");
                    Ok(EXIT_RESOURCE)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        CircuitCommand::Reduce { file } => {
            let c = read_circuit(&file)?;
            let r = c.reduce().map_err(|e| e.to_string())?;
            print!("{}", r.circuit().to_text());
            Ok(EXIT_TRIVIAL)
        }
        CircuitCommand::Sign { file } => {
            let c = read_circuit(&file)?;
            let s = c.sign().map_err(|e| e.to_string())?;
            println!(
                "{}",
                match s {
                    std::cmp::Ordering::Less => -1,
                    std::cmp::Ordering::Equal => 0,
                    std::cmp::Ordering::Greater => 1,
                }
            );
            Ok(EXIT_TRIVIAL)
        }
        CircuitCommand::Dot { file } => {
            let c = read_circuit(&file)?;
            print!("{}", c.to_dot());
            Ok(EXIT_TRIVIAL)
        }
        CircuitCommand::Op {
            op,
            file1,
            file2,
            out,
        } => {
            let a = read_circuit(&file1)?;
            let b = read_circuit(&file2)?;
            let result = match op.as_str() {
                "add" => a.add(&b),
                "sub" => a.subtract(&b),
                "mul2" => a.mul_pow2(&b),
                "div2" => match a.div_pow2(&b) {
                    Ok(c) => c,
                    Err(Error::NotDivisible) => {
                        eprintln!("not divisible");
                        return Ok(EXIT_NONTRIVIAL);
                    }
                    Err(e) => return Err(e.to_string()),
                },
                _ => unreachable!("validated by clap"),
            };
            fs::write(&out, result.to_text())
                .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
            Ok(EXIT_TRIVIAL)
        }
    }
}

struct BenchRecord {
    family: &'static str,
    k: u32,
    length: usize,
    engine: &'static str,
    seconds: f64,
    peak_vertices: usize,
    verdict: &'static str,
}

fn cmd_bench(args: BenchArgs) -> Result<u8, String> {
    if args.k_max > 10 {
        return Err("k-max is capped at 10".into());
    }
    let a = PowerSequence::parse("a").expect("literal");
    let mut records: Vec<BenchRecord> = Vec::new();
    for k in 1..=args.k_max {
        let word = commutator(&hard_word(k), &a);
        let length = word.len();
        for &engine in &args.engines {
            match engine {
                Engine::Circuit => {
                    let start = Instant::now();
                    let (verdict, stats) = solve_with_stats(&word);
                    let seconds = start.elapsed().as_secs_f64();
                    records.push(BenchRecord {
                        family: "wk-commutator",
                        k,
                        length,
                        engine: "circuit",
                        seconds,
                        peak_vertices: stats.peak_vertices,
                        verdict: match verdict {
                            Verdict::Yes => "yes",
                            Verdict::No => "no",
                        },
                    });
                }
                Engine::Naive => {
                    let start = Instant::now();
                    let (outcome, stats) =
                        naive_solve_with_stats(&word, args.step_cap, args.max_bits);
                    let seconds = start.elapsed().as_secs_f64();
                    records.push(BenchRecord {
                        family: "wk-commutator",
                        k,
                        length,
                        engine: "naive",
                        seconds,
                        peak_vertices: stats.peak_syllables,
                        verdict: match outcome {
                            NaiveOutcome::Yes => "yes",
                            NaiveOutcome::No => "no",
                            NaiveOutcome::ResourceExceeded(_) => "resource-exceeded",
                        },
                    });
                }
            }
        }
    }

    let mut csv = String::from("family,k,length,engine,seconds,peak_vertices,verdict\n");
    for r in &records {
        csv.push_str(&format!(
            "{},{},{},{},{:.6},{},{}\n",
            r.family, r.k, r.length, r.engine, r.seconds, r.peak_vertices, r.verdict
        ));
    }
    print!("{csv}");
    if let Some(path) = &args.csv {
        fs::write(path, &csv).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }

    let points: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.engine == "circuit")
        .map(|r| ((r.length as f64).ln(), r.seconds.max(1e-9).ln()))
        .collect();
    if points.len() >= 2 {
        println!("circuit log-log slope: {:.3}", least_squares_slope(&points));
    }
    Ok(EXIT_TRIVIAL)
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
