use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stelim::bridges::BridgeScope;
use stelim::harness::{self, Metadata};
use stelim::ordering::{brute_force_optimal, DEFAULT_BRUTE_FORCE_CAP};
use stelim::sampler::{samples, FinalMode, SampleSpec};
use stelim::{run_heuristic, CanonicalString, Efa, Heuristic, Trim, Variant};

#[derive(Parser)]
#[command(
    name = "stelim",
    version,
    about = "Automaton to regular expression conversion by state elimination"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert one complete DFA given by its canonical string.
    Convert {
        #[command(flatten)]
        automaton: AutomatonArgs,
        /// One of s, random, random:<seed>, dm, cs, cd, hw, bf.
        #[arg(long, default_value = "dm")]
        heuristic: Heuristic,
        #[arg(long, value_enum, default_value_t = VariantArg::Seawn)]
        variant: VariantArg,
    },
    /// Write a file of uniformly random ICDFAs, one canonical string per line.
    Sample {
        #[command(flatten)]
        sample: SampleArgs,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an experiment over a sample and write a CSV table with a JSON sidecar.
    Bench {
        #[arg(value_enum)]
        experiment: Experiment,
        #[command(flatten)]
        sample: SampleArgs,
        #[arg(long)]
        out: PathBuf,
        /// Include the expression text for results of at most 100000 symbols.
        #[arg(long)]
        emit_regex: bool,
        /// Automaton on which bridge states are identified.
        #[arg(long, value_enum, default_value_t = ScopeArg::Normalized)]
        bridge_scope: ScopeArg,
    },
    /// Exhaustive searches used as test oracles.
    Oracle {
        #[command(subcommand)]
        oracle: Oracle,
    },
}

#[derive(Subcommand)]
enum Oracle {
    /// Best and worst elimination orders over all orders.
    Bf {
        #[command(flatten)]
        automaton: AutomatonArgs,
        #[arg(long, value_enum, default_value_t = VariantArg::Sea)]
        variant: VariantArg,
        /// Largest number of eliminable states to search.
        #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_CAP)]
        max_states: usize,
    },
}

#[derive(Args)]
struct AutomatonArgs {
    /// Transition digits, e.g. 12312312; space separated when states exceed 9.
    #[arg(long)]
    canonical: String,
    /// Comma-separated final states.
    #[arg(long, value_delimiter = ',')]
    finals: Vec<usize>,
    /// Alphabet size; inferred from the digits when absent.
    #[arg(long)]
    k: Option<usize>,
}

impl AutomatonArgs {
    fn parse(&self) -> stelim::Result<CanonicalString> {
        CanonicalString::from_digits(&self.canonical, self.k, self.finals.iter().copied())
    }
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 10_000)]
    count: usize,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FinalModeArg::UniformNonempty)]
    final_mode: FinalModeArg,
}

impl SampleArgs {
    fn spec(&self) -> stelim::Result<SampleSpec> {
        Ok(SampleSpec::new(self.n, self.k, self.count, self.seed)?
            .with_final_mode(self.final_mode.into()))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Sea,
    Seawn,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Sea => Variant::Normalized,
            VariantArg::Seawn => Variant::WithoutNormalization,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FinalModeArg {
    UniformNonempty,
    EachStateHalf,
}

impl From<FinalModeArg> for FinalMode {
    fn from(m: FinalModeArg) -> Self {
        match m {
            FinalModeArg::UniformNonempty => FinalMode::UniformNonempty,
            FinalModeArg::EachStateHalf => FinalMode::EachStateHalf,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Input,
    Normalized,
}

impl From<ScopeArg> for BridgeScope {
    fn from(s: ScopeArg) -> Self {
        match s {
            ScopeArg::Input => BridgeScope::Input,
            ScopeArg::Normalized => BridgeScope::Normalized,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Experiment {
    Bridge,
    Ratio,
    Compare,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> stelim::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Convert {
            automaton,
            heuristic,
            variant,
        } => {
            let dfa = automaton.parse()?;
            let result = run_heuristic(&dfa.to_nfa(), &heuristic, variant.into())?;
            writeln!(out, "size: {}", result.size)?;
            writeln!(out, "order: {}", join(&result.order))?;
            if result.fell_back {
                writeln!(out, "note: cycle cap reached, DM weights used")?;
            }
            if result.degenerate {
                writeln!(out, "note: empty language")?;
            }
            writeln!(out, "regex: {}", result.regex.to_text(dfa.alphabet()))?;
        }
        Command::Sample { sample, out: path } => {
            let spec = sample.spec()?;
            let drawn = samples(&spec)?;
            let mut sink: Box<dyn Write> = match path {
                Some(p) => Box::new(BufWriter::new(std::fs::File::create(p)?)),
                None => Box::new(&mut out),
            };
            writeln!(sink, "{}", spec.header())?;
            for s in &drawn {
                writeln!(sink, "{}", s.canonical)?;
            }
            sink.flush()?;
        }
        Command::Bench {
            experiment,
            sample,
            out: path,
            emit_regex,
            bridge_scope,
        } => {
            let spec = sample.spec()?;
            match experiment {
                Experiment::Bridge => {
                    let (rows, density) = harness::bridge_density_with(&spec, bridge_scope.into())?;
                    harness::write_table(&path, &rows, &Metadata::new("bridge", &spec), &density)?;
                    let pos = density.pos.map_or("N/A".to_string(), |p| format!("{p:.3}"));
                    writeln!(out, "tot={} num={} pos={pos}", density.tot, density.num)?;
                }
                Experiment::Ratio => {
                    let records = harness::run_configs(&spec, &harness::RATIO_CONFIGS, emit_regex)?;
                    let report = harness::ratio_report(&spec, &records);
                    harness::write_table(&path, &records, &Metadata::new("ratio", &spec), &report)?;
                    writeln!(
                        out,
                        "Swn/S={} DMwn/DM={}",
                        fmt_stat(report.swn_over_s),
                        fmt_stat(report.dmwn_over_dm)
                    )?;
                }
                Experiment::Compare => {
                    let configs = &harness::COMPARISON_CONFIGS;
                    let records = harness::run_configs(&spec, configs, emit_regex)?;
                    let summary = harness::summarize(&spec, configs, &records);
                    harness::write_table(
                        &path,
                        &records,
                        &Metadata::new("compare", &spec),
                        &summary,
                    )?;
                    for h in &summary.heuristics {
                        writeln!(out, "{} mean={} max={}", h.label, fmt_stat(h.mean), h.max)?;
                    }
                    writeln!(out, "B3 mean={}", fmt_stat(summary.best_mean))?;
                }
            }
        }
        Command::Oracle {
            oracle:
                Oracle::Bf {
                    automaton,
                    variant,
                    max_states,
                },
        } => {
            let dfa = automaton.parse()?;
            let (nfa, old_to_new) = match dfa.to_nfa().trim() {
                Trim::Trimmed { nfa, old_to_new } => (nfa, old_to_new),
                Trim::EmptyLanguage => {
                    writeln!(out, "note: empty language")?;
                    return Ok(());
                }
            };
            // states added by normalization never appear in an order
            let original = |order: &[usize]| -> Vec<usize> {
                order
                    .iter()
                    .map(|&q| old_to_new.iter().position(|&n| n == Some(q)).unwrap_or(q))
                    .collect()
            };
            let bf = brute_force_optimal(&Efa::from_nfa(&nfa), variant.into(), max_states)?;
            writeln!(out, "orders: {}", bf.evaluated)?;
            writeln!(
                out,
                "best: {} (order {})",
                bf.best_size,
                join(&original(&bf.best_order))
            )?;
            writeln!(
                out,
                "worst: {} (order {})",
                bf.worst_size,
                join(&original(&bf.worst_order))
            )?;
        }
    }
    Ok(())
}

fn join(states: &[usize]) -> String {
    states
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_stat(v: Option<f64>) -> String {
    v.map_or("N/A".to_string(), |v| format!("{v:.4}"))
}
