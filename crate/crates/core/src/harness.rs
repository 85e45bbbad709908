//! Experiments over samples of random ICDFAs.
//!
//! Samples are processed on the rayon pool and collected in sample order,
//! so every table is identical for a given [`SampleSpec`] whatever the
//! number of workers.

use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automata::{State, Trim};
use crate::bridges::{bridge_states_in, BridgeScope};
use crate::cycles::DEFAULT_CYCLE_CAP;
use crate::elimination::Variant;
use crate::error::Result;
use crate::ordering::LoopDegree;
use crate::pipeline::{run_heuristic, Heuristic};
use crate::sampler::{sample_icdfa, SampleSpec, RNG_ID};
use crate::scalar::{mean, ratio};
use crate::{Size, Stat};

/// Identifies the simplification rules behind every reported size.
pub const RULE_SET_VERSION: &str = "empty-epsilon-identities+flatten+union-dedup/1";

/// Regex text is only emitted up to this alphabetic size.
pub const MAX_EMITTED_SIZE: Size = 100_000;

/// A heuristic run under a variant, with the label used in tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub label: &'static str,
    pub heuristic: Heuristic,
    pub variant: Variant,
}

impl Config {
    pub const fn new(label: &'static str, heuristic: Heuristic, variant: Variant) -> Self {
        Config {
            label,
            heuristic,
            variant,
        }
    }
}

pub const RATIO_CONFIGS: [Config; 4] = [
    Config::new("S", Heuristic::Canonical, Variant::Normalized),
    Config::new("Swn", Heuristic::Canonical, Variant::WithoutNormalization),
    Config::new("DM", Heuristic::Dm, Variant::Normalized),
    Config::new("DMwn", Heuristic::Dm, Variant::WithoutNormalization),
];

pub const COMPARISON_CONFIGS: [Config; 3] = [
    Config::new("DMwn", Heuristic::Dm, Variant::WithoutNormalization),
    Config::new("CS", Heuristic::CycleStatic, Variant::WithoutNormalization),
    Config::new("CD", Heuristic::CycleDynamic, Variant::WithoutNormalization),
];

/// One conversion of one sample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub index: usize,
    pub canonical: String,
    pub heuristic: String,
    pub variant: Variant,
    pub size: Size,
    /// Space-separated elimination order in canonical numbering.
    pub order: String,
    pub fell_back: bool,
    pub degenerate: bool,
    pub regex: Option<String>,
}

/// Runs every config on samples `0..spec.count`, returning records grouped
/// by sample and in config order within a sample.
pub fn run_configs(
    spec: &SampleSpec,
    configs: &[Config],
    emit_regex: bool,
) -> Result<Vec<RunRecord>> {
    spec.validate()?;
    let per_sample: Vec<Vec<RunRecord>> = (0..spec.count)
        .into_par_iter()
        .map(|index| {
            let sample = sample_icdfa(spec, index)?;
            let dfa = sample.dfa();
            let canonical = sample.canonical.to_string();
            configs
                .iter()
                .map(|c| {
                    let heuristic = match c.heuristic {
                        Heuristic::Random(seed) => {
                            Heuristic::Random(seed ^ spec.seed ^ index as u64)
                        }
                        h => h,
                    };
                    let out = run_heuristic(&dfa, &heuristic, c.variant)?;
                    let regex = (emit_regex && out.size <= MAX_EMITTED_SIZE)
                        .then(|| out.regex.to_text(spec.k));
                    Ok(RunRecord {
                        index,
                        canonical: canonical.clone(),
                        heuristic: c.label.to_string(),
                        variant: c.variant,
                        size: out.size,
                        order: join(&out.order),
                        fell_back: out.fell_back,
                        degenerate: out.degenerate,
                        regex,
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(per_sample.into_iter().flatten().collect())
}

fn join(states: &[State]) -> String {
    states
        .iter()
        .map(State::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Mean and maximum size of one config over the non-degenerate samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeuristicStats {
    pub label: String,
    pub mean: Option<Stat>,
    pub max: Size,
    /// Samples on which a cycle heuristic fell back to DM.
    pub fell_back: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub n: usize,
    pub k: usize,
    pub count: usize,
    /// Samples whose language is empty; excluded from means and maxima.
    pub degenerate: usize,
    pub heuristics: Vec<HeuristicStats>,
    /// Mean over samples of the smallest size among the configs.
    pub best_mean: Option<Stat>,
}

impl SummaryRow {
    pub fn stats(&self, label: &str) -> Option<&HeuristicStats> {
        self.heuristics.iter().find(|h| h.label == label)
    }

    pub fn mean(&self, label: &str) -> Option<Stat> {
        self.stats(label)?.mean
    }
}

/// Aggregates records produced by [`run_configs`] with the same configs.
pub fn summarize(spec: &SampleSpec, configs: &[Config], records: &[RunRecord]) -> SummaryRow {
    let per_sample: Vec<&[RunRecord]> = records
        .chunks(configs.len())
        .filter(|rs| !rs[0].degenerate)
        .collect();
    let heuristics = configs
        .iter()
        .enumerate()
        .map(|(i, c)| HeuristicStats {
            label: c.label.to_string(),
            mean: mean(per_sample.iter().map(|rs| rs[i].size)),
            max: per_sample.iter().map(|rs| rs[i].size).max().unwrap_or(0),
            fell_back: per_sample.iter().filter(|rs| rs[i].fell_back).count(),
        })
        .collect();
    SummaryRow {
        n: spec.n,
        k: spec.k,
        count: spec.count,
        degenerate: records.len() / configs.len().max(1) - per_sample.len(),
        heuristics,
        best_mean: mean(
            per_sample
                .iter()
                .map(|rs| rs.iter().map(|r| r.size).min().unwrap_or(0)),
        ),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub summary: SummaryRow,
    pub swn_over_s: Option<Stat>,
    pub dmwn_over_dm: Option<Stat>,
}

/// Swn/S and DMwn/DM ratios of mean sizes.
pub fn ratio_experiment(spec: &SampleSpec) -> Result<(Vec<RunRecord>, RatioReport)> {
    let records = run_configs(spec, &RATIO_CONFIGS, false)?;
    let report = ratio_report(spec, &records);
    Ok((records, report))
}

/// Ratios from records produced with [`RATIO_CONFIGS`].
pub fn ratio_report(spec: &SampleSpec, records: &[RunRecord]) -> RatioReport {
    let summary = summarize(spec, &RATIO_CONFIGS, records);
    RatioReport {
        swn_over_s: ratio(summary.mean("Swn"), summary.mean("S")),
        dmwn_over_dm: ratio(summary.mean("DMwn"), summary.mean("DM")),
        summary,
    }
}

/// DMwn, CS and CD with their best-of-three.
pub fn heuristic_comparison(spec: &SampleSpec) -> Result<(Vec<RunRecord>, SummaryRow)> {
    let records = run_configs(spec, &COMPARISON_CONFIGS, false)?;
    let summary = summarize(spec, &COMPARISON_CONFIGS, &records);
    Ok((records, summary))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeRecord {
    pub index: usize,
    pub canonical: String,
    /// Bridge states in canonical numbering, space separated.
    pub bridges: String,
    pub count: usize,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BridgeDensity {
    pub n: usize,
    pub k: usize,
    pub count: usize,
    /// Total number of bridge states.
    pub tot: usize,
    /// Automata with at least one bridge state.
    pub num: usize,
    /// Mean canonical state number of the bridge states, `None` without any.
    pub pos: Option<Stat>,
    pub degenerate: usize,
    pub scope: String,
}

impl BridgeDensity {
    pub fn fraction_with_bridge(&self) -> Stat {
        self.num as Stat / self.count as Stat
    }

    pub fn bridges_per_automaton(&self) -> Stat {
        self.tot as Stat / self.count as Stat
    }
}

/// Bridge states of the trimmed samples, with the default [`BridgeScope`].
pub fn bridge_density_experiment(spec: &SampleSpec) -> Result<(Vec<BridgeRecord>, BridgeDensity)> {
    bridge_density_with(spec, BridgeScope::default())
}

pub fn bridge_density_with(
    spec: &SampleSpec,
    scope: BridgeScope,
) -> Result<(Vec<BridgeRecord>, BridgeDensity)> {
    spec.validate()?;
    let records: Vec<(BridgeRecord, Vec<State>)> = (0..spec.count)
        .into_par_iter()
        .map(|index| {
            let sample = sample_icdfa(spec, index)?;
            let (bridges, degenerate) = match sample.dfa().trim() {
                Trim::EmptyLanguage => (Vec::new(), true),
                Trim::Trimmed { nfa, old_to_new } => {
                    let mut new_to_old = vec![0; nfa.state_count()];
                    for (old, new) in old_to_new.iter().enumerate() {
                        if let Some(new) = new {
                            new_to_old[*new] = old;
                        }
                    }
                    let found = bridge_states_in(&nfa, scope).bridges;
                    (found.into_iter().map(|q| new_to_old[q]).collect(), false)
                }
            };
            Ok((
                BridgeRecord {
                    index,
                    canonical: sample.canonical.to_string(),
                    bridges: join(&bridges),
                    count: bridges.len(),
                    degenerate,
                },
                bridges,
            ))
        })
        .collect::<Result<_>>()?;
    let all: Vec<State> = records
        .iter()
        .flat_map(|(_, b)| b.iter().copied())
        .collect();
    let density = BridgeDensity {
        n: spec.n,
        k: spec.k,
        count: spec.count,
        tot: all.len(),
        num: records.iter().filter(|(r, _)| r.count > 0).count(),
        pos: mean(all.iter().copied()),
        degenerate: records.iter().filter(|(r, _)| r.degenerate).count(),
        scope: scope.as_str().to_string(),
    };
    Ok((records.into_iter().map(|(r, _)| r).collect(), density))
}

/// Run parameters written next to every table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub experiment: String,
    pub n: usize,
    pub k: usize,
    pub count: usize,
    pub seed: u64,
    pub rng: String,
    pub final_mode: String,
    pub rule_set: String,
    pub cycle_cap: u64,
    /// Whether DM weights count loops in degrees.
    pub dm_loops: String,
    pub version: String,
}

impl Metadata {
    pub fn new(experiment: &str, spec: &SampleSpec) -> Self {
        Metadata {
            experiment: experiment.to_string(),
            n: spec.n,
            k: spec.k,
            count: spec.count,
            seed: spec.seed,
            rng: RNG_ID.to_string(),
            final_mode: spec.final_mode.to_string(),
            rule_set: RULE_SET_VERSION.to_string(),
            cycle_cap: DEFAULT_CYCLE_CAP,
            dm_loops: LoopDegree::default().as_str().to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Writes rows as CSV with a header.
pub fn write_csv<T: Serialize, W: Write>(rows: &[T], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row).map_err(csv_error)?;
    }
    writer.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> crate::error::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => io.into(),
        other => std::io::Error::other(format!("{other:?}")).into(),
    }
}

/// `out.csv` gets `out.json` as its sidecar.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

/// Writes the CSV table and its JSON metadata sidecar, with `summary`
/// embedded in the sidecar.
pub fn write_table<T: Serialize, S: Serialize>(
    path: &Path,
    rows: &[T],
    metadata: &Metadata,
    summary: &S,
) -> Result<()> {
    write_csv(rows, std::fs::File::create(path)?)?;
    let sidecar = serde_json::json!({ "metadata": metadata, "summary": summary });
    let mut file = std::fs::File::create(sidecar_path(path))?;
    serde_json::to_writer_pretty(&mut file, &sidecar)?;
    writeln!(file)?;
    Ok(())
}
