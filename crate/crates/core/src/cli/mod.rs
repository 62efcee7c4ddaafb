//! The `cvsteer` command-line driver.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 parse or arity error, 3
//! numerical error, 4 monogamy violation.

pub mod config;
pub mod format;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::labels::{default_labels, format_partition, parse_partition, parse_party};
use crate::states::{apply_loss, square_cluster, LossChannel, DEFAULT_SQUEEZING};
use crate::steering::{
    audit_monogamy_labeled, audit_monogamy_unrestricted, critical_eta, enumerate_instances,
    enumerate_outside_specification, lossy_cluster, nullifier_variances, steering_value,
    vlf_inseparability, Crossing, MonogamyParties, MonogamyReport, RelationType, NULLIFIER_NAMES,
};
use crate::symplectic::{
    is_physical, symplectic_eigenvalues, CovarianceDocument, CovarianceMatrix, ModePartition,
    PHYSICALITY_TOLERANCE,
};
use crate::tomography::{
    measurement_plan, read_records, reconstruct, relative_frobenius_error, simulate_variances,
    write_records, ReconstructionSource, SimulationMode, DEFAULT_SEED,
};
use config::Config;
use format::{format_sig, round_json, DEFAULT_PRECISION};

/// Exit code when a monogamy relation is violated inside its specification.
pub const EXIT_VIOLATION: i32 = 4;

const CLUSTER_MODES: usize = 4;

#[derive(Debug, Parser)]
#[command(
    name = "cvsteer",
    version,
    about = "Gaussian steering on the lossy four-mode square cluster"
)]
pub struct Cli {
    /// Significant digits in printed numbers [default: 6].
    #[arg(long, global = true)]
    pub precision: Option<usize>,

    /// Settings file with `flag = value` lines; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the cluster covariance matrix and report its nullifiers.
    Prepare(PrepareArgs),
    /// Tabulate both steering directions for partitions over a loss grid.
    Sweep(SweepArgs),
    /// Find the transmission at which steering across a partition switches.
    Critical(CriticalArgs),
    /// Audit monogamy relations on a covariance matrix file.
    Audit(AuditArgs),
    /// Simulate the homodyne measurement plan and reconstruct the state.
    Tomo(TomoArgs),
}

#[derive(Debug, Args)]
pub struct PrepareArgs {
    /// Squeezing parameter [default: 0.345].
    #[arg(long = "r", allow_negative_numbers = true)]
    pub r: Option<f64>,
    /// Transmission of the lossy channel; omitted means no loss.
    #[arg(long)]
    pub eta: Option<f64>,
    /// Mode the loss acts on [default: A].
    #[arg(long)]
    pub lossy_mode: Option<String>,
    /// Covariance JSON destination; stdout if omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Squeezing parameter [default: 0.345].
    #[arg(long = "r", allow_negative_numbers = true)]
    pub r: Option<f64>,
    /// Smallest transmission [default: 0.01].
    #[arg(long)]
    pub eta_min: Option<f64>,
    /// Largest transmission [default: 1].
    #[arg(long)]
    pub eta_max: Option<f64>,
    /// Number of grid points [default: 100].
    #[arg(long)]
    pub eta_steps: Option<usize>,
    /// Mode the loss acts on [default: A].
    #[arg(long)]
    pub lossy_mode: Option<String>,
    /// Partition such as `BC->A`; repeatable. Defaults to every bipartition.
    #[arg(long = "partition")]
    pub partitions: Vec<String>,
    /// CSV destination; stdout if omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CriticalArgs {
    /// Partition such as `A->BC`.
    pub partition: String,
    /// Squeezing parameter [default: 0.345].
    #[arg(long = "r", allow_negative_numbers = true)]
    pub r: Option<f64>,
    /// Mode the loss acts on [default: A].
    #[arg(long)]
    pub lossy_mode: Option<String>,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    /// Covariance JSON file.
    pub cm_path: PathBuf,
    /// Relation types (`IVb`), explicit instances (`IVb:A|B|C`), or types
    /// evaluated outside their specification (`IVb+`). Defaults to all six
    /// types.
    #[arg(long, value_delimiter = ',')]
    pub relations: Vec<String>,
    /// JSON report destination; stdout if omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TomoArgs {
    /// Covariance JSON file of the true state.
    pub cm_path: Option<PathBuf>,
    /// Samples per measurement; exact variances if omitted.
    #[arg(long)]
    pub samples: Option<u64>,
    /// Sampling seed [default: 20170315].
    #[arg(long)]
    pub seed: Option<u64>,
    /// Reconstruct from this measurement CSV instead of simulating.
    #[arg(long)]
    pub records: Option<PathBuf>,
    /// Also write the measurement CSV here.
    #[arg(long)]
    pub measurements: Option<PathBuf>,
    /// Partitions whose steering is compared; repeatable [default: B->A].
    #[arg(long = "partition")]
    pub partitions: Vec<String>,
    /// JSON report destination; stdout if omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let precision = config
        .resolve(cli.precision, "precision")?
        .unwrap_or(DEFAULT_PRECISION);
    match cli.command {
        Command::Prepare(args) => cmd_prepare(&args, &config, precision),
        Command::Sweep(args) => cmd_sweep(&args, &config, precision),
        Command::Critical(args) => cmd_critical(&args, &config),
        Command::Audit(args) => cmd_audit(&args, &config, precision),
        Command::Tomo(args) => cmd_tomo(&args, &config, precision),
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn lossy_mode_index(label: Option<String>) -> Result<usize> {
    let label = label.unwrap_or_else(|| "A".to_string());
    match parse_party(&default_labels(CLUSTER_MODES), &label)?.as_slice() {
        [mode] => Ok(*mode),
        _ => Err(Error::Parse(format!(
            "lossy mode must be a single mode, got {label:?}"
        ))),
    }
}

fn cmd_prepare(args: &PrepareArgs, config: &Config, precision: usize) -> Result<i32> {
    let r = config.resolve(args.r, "r")?.unwrap_or(DEFAULT_SQUEEZING);
    let eta: Option<f64> = config.resolve(args.eta, "eta")?;
    let lossy_mode = lossy_mode_index(config.resolve(args.lossy_mode.clone(), "lossy-mode")?)?;
    let output: Option<PathBuf> = config.resolve(args.output.clone(), "output")?;

    let mut cm = square_cluster(r)?;
    if let Some(eta) = eta {
        cm = apply_loss(&cm, &LossChannel::new(lossy_mode, eta)?)?;
    }
    let doc = CovarianceDocument::with_default_labels(cm);
    let json = doc.to_json()?;

    let f = |x: f64| format_sig(x, precision);
    let mut summary = String::new();
    let nullifiers = nullifier_variances(&doc.cm)?;
    for ((name, v), db) in NULLIFIER_NAMES
        .iter()
        .zip(nullifiers.variances)
        .zip(nullifiers.db)
    {
        summary.push_str(&format!("nullifier {name}: {} ({} dB)\n", f(v), f(db)));
    }
    let insep = vlf_inseparability(&doc.cm)?;
    let combos: Vec<String> = insep.combos.iter().map(|&c| f(c)).collect();
    summary.push_str(&format!(
        "inseparability combos: {} (fully inseparable: {})\n",
        combos.join(" "),
        insep.fully_inseparable
    ));
    let spectrum = symplectic_eigenvalues(&doc.cm)?;
    let pure = spectrum
        .iter()
        .all(|v| (v - 1.0).abs() < PHYSICALITY_TOLERANCE);
    let nu: Vec<String> = spectrum.into_iter().map(f).collect();
    summary.push_str(&format!(
        "symplectic eigenvalues: {} (pure: {pure})\n",
        nu.join(" ")
    ));

    match &output {
        Some(path) => {
            doc.write(path)?;
            print!("{summary}");
        }
        None => {
            emit(None, &json)?;
            eprint!("{summary}");
        }
    }
    Ok(0)
}

/// Parameters of a loss sweep over the square cluster.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub r: f64,
    pub eta_grid: Vec<f64>,
    pub lossy_mode: usize,
    pub partitions: Vec<ModePartition>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub eta: f64,
    pub partition: String,
    pub g_forward: f64,
    pub g_reverse: f64,
}

/// `steps` evenly spaced points from `min` to `max` inclusive.
pub fn uniform_grid(min: f64, max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::Parse("eta grid needs at least one point".into()));
    }
    if !(min > 0.0 && max <= 1.0 && min <= max) {
        return Err(Error::Parse(format!(
            "eta grid [{min}, {max}] must lie in (0, 1] with min <= max"
        )));
    }
    if steps == 1 {
        return Ok(vec![max]);
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| (min * (last - k as f64) + max * k as f64) / last)
        .collect())
}

/// Every unordered bipartition into two disjoint nonempty parties, each
/// listed once with the smaller party (by size, then modes) steering.
pub fn default_partitions(n_modes: usize) -> Vec<ModePartition> {
    let mut subsets: Vec<Vec<usize>> = (1u32..(1 << n_modes))
        .map(|mask| (0..n_modes).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    let key = |s: &Vec<usize>| (s.len(), s.clone());
    let mut out = Vec::new();
    for x in &subsets {
        for y in &subsets {
            if key(x) < key(y) && x.iter().all(|m| !y.contains(m)) {
                out.push(ModePartition::new(x.clone(), y.clone()).expect("disjoint nonempty"));
            }
        }
    }
    out
}

impl SweepSpec {
    pub fn new(
        r: f64,
        eta_grid: Vec<f64>,
        lossy_mode: usize,
        partitions: Vec<ModePartition>,
    ) -> Result<Self> {
        if let Some(bad) = eta_grid.iter().find(|&&e| !(e > 0.0 && e <= 1.0)) {
            return Err(Error::Parse(format!(
                "eta grid value {bad} is outside (0, 1]"
            )));
        }
        if lossy_mode >= CLUSTER_MODES {
            return Err(Error::Parse(format!(
                "lossy mode {lossy_mode} out of range"
            )));
        }
        for p in &partitions {
            p.check_range(CLUSTER_MODES)?;
        }
        Ok(SweepSpec {
            r,
            eta_grid,
            lossy_mode,
            partitions,
        })
    }

    /// Rows ordered by grid point, then by partition in the given order.
    pub fn run(&self) -> Result<Vec<SweepRow>> {
        let labels = default_labels(CLUSTER_MODES);
        let states: Vec<CovarianceMatrix> = self
            .eta_grid
            .par_iter()
            .map(|&eta| lossy_cluster(self.r, self.lossy_mode, eta))
            .collect::<Result<_>>()?;
        let jobs: Vec<(usize, usize)> = (0..self.eta_grid.len())
            .flat_map(|e| (0..self.partitions.len()).map(move |p| (e, p)))
            .collect();
        jobs.par_iter()
            .map(|&(e, p)| {
                let part = &self.partitions[p];
                Ok(SweepRow {
                    eta: self.eta_grid[e],
                    partition: format_partition(&labels, part),
                    g_forward: steering_value(&states[e], part)?,
                    g_reverse: steering_value(&states[e], &part.reversed())?,
                })
            })
            .collect()
    }
}

pub fn sweep_csv(rows: &[SweepRow], precision: usize) -> Result<String> {
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(["eta", "partition", "G_forward", "G_reverse"])?;
    for row in rows {
        out.write_record([
            format_sig(row.eta, precision),
            row.partition.clone(),
            format_sig(row.g_forward, precision),
            format_sig(row.g_reverse, precision),
        ])?;
    }
    let bytes = out.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

fn cmd_sweep(args: &SweepArgs, config: &Config, precision: usize) -> Result<i32> {
    let r = config.resolve(args.r, "r")?.unwrap_or(DEFAULT_SQUEEZING);
    let eta_min = config.resolve(args.eta_min, "eta-min")?.unwrap_or(0.01);
    let eta_max = config.resolve(args.eta_max, "eta-max")?.unwrap_or(1.0);
    let eta_steps = config.resolve(args.eta_steps, "eta-steps")?.unwrap_or(100);
    let lossy_mode = lossy_mode_index(config.resolve(args.lossy_mode.clone(), "lossy-mode")?)?;
    let output: Option<PathBuf> = config.resolve(args.output.clone(), "output")?;
    let labels = default_labels(CLUSTER_MODES);
    let requested = config.resolve_list(&args.partitions, "partition");
    let partitions = if requested.is_empty() {
        default_partitions(CLUSTER_MODES)
    } else {
        requested
            .iter()
            .map(|p| parse_partition(&labels, p))
            .collect::<Result<_>>()?
    };

    let spec = SweepSpec::new(
        r,
        uniform_grid(eta_min, eta_max, eta_steps)?,
        lossy_mode,
        partitions,
    )?;
    emit(output.as_deref(), &sweep_csv(&spec.run()?, precision)?)?;
    Ok(0)
}

fn cmd_critical(args: &CriticalArgs, config: &Config) -> Result<i32> {
    let r = config.resolve(args.r, "r")?.unwrap_or(DEFAULT_SQUEEZING);
    let lossy_mode = lossy_mode_index(config.resolve(args.lossy_mode.clone(), "lossy-mode")?)?;
    let part = parse_partition(&default_labels(CLUSTER_MODES), &args.partition)?;
    match critical_eta(r, &part, lossy_mode)? {
        Crossing::Threshold(eta) => println!("{eta:.4}"),
        other => {
            println!("none");
            let why = if other == Crossing::AlwaysSteers {
                "steers at every transmission"
            } else {
                "never steers"
            };
            eprintln!("{}: {why}", args.partition);
        }
    }
    Ok(0)
}

/// One line of the audit output: a report, or an instance that could not
/// be evaluated.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum AuditEntry {
    Report(MonogamyReport),
    Rejected {
        relation_type: RelationType,
        instance: String,
        error: String,
    },
}

fn parse_parties(labels: &[String], text: &str) -> Result<[Vec<usize>; 3]> {
    let parts: Vec<&str> = text.split('|').collect();
    match parts.as_slice() {
        [a, b, c] => Ok([
            parse_party(labels, a)?,
            parse_party(labels, b)?,
            parse_party(labels, c)?,
        ]),
        _ => Err(Error::Parse(format!(
            "instance {text:?} must name three parties as A|B|C"
        ))),
    }
}

/// Audits each requested relation on `cm`. Malformed tokens are fatal;
/// instances the relation does not admit become [`AuditEntry::Rejected`].
pub fn run_audit(
    cm: &CovarianceMatrix,
    labels: &[String],
    tokens: &[String],
) -> Result<Vec<AuditEntry>> {
    let n = cm.n_modes();
    let mut entries = Vec::new();
    for token in tokens {
        let token = token.trim();
        if let Some((kind, instance)) = token.split_once(':') {
            let relation: RelationType = kind.parse()?;
            let [a, b, c] = parse_parties(labels, instance)?;
            let result = MonogamyParties::new(a, b, c)
                .and_then(|p| audit_monogamy_labeled(cm, relation, &p, labels));
            match result {
                Ok(report) => entries.push(AuditEntry::Report(report)),
                Err(e @ Error::Arity(_)) => entries.push(AuditEntry::Rejected {
                    relation_type: relation,
                    instance: instance.to_string(),
                    error: e.to_string(),
                }),
                Err(e) => return Err(e),
            }
        } else if let Some(kind) = token.strip_suffix('+') {
            let relation: RelationType = kind.parse()?;
            for p in enumerate_outside_specification(n, relation) {
                entries.push(AuditEntry::Report(audit_monogamy_unrestricted(
                    cm, relation, &p, labels,
                )?));
            }
        } else {
            let relation: RelationType = token.parse()?;
            for p in enumerate_instances(n, relation) {
                entries.push(AuditEntry::Report(audit_monogamy_labeled(
                    cm, relation, &p, labels,
                )?));
            }
        }
    }
    Ok(entries)
}

/// 4 if a relation fails inside its specification, else 2 if an instance
/// was rejected, else 0.
pub fn audit_exit_code(entries: &[AuditEntry]) -> i32 {
    let violated = entries
        .iter()
        .any(|e| matches!(e, AuditEntry::Report(r) if r.within_specification && !r.satisfied));
    let rejected = entries
        .iter()
        .any(|e| matches!(e, AuditEntry::Rejected { .. }));
    if violated {
        EXIT_VIOLATION
    } else if rejected {
        2
    } else {
        0
    }
}

fn cmd_audit(args: &AuditArgs, config: &Config, precision: usize) -> Result<i32> {
    let doc = CovarianceDocument::read(&args.cm_path)?;
    let mut tokens = config.resolve_list(&args.relations, "relations");
    if tokens.is_empty() {
        tokens = RelationType::ALL.iter().map(|t| t.to_string()).collect();
    }
    let output: Option<PathBuf> = config.resolve(args.output.clone(), "output")?;
    let entries = run_audit(&doc.cm, &doc.labels, &tokens)?;
    let json = round_json(serde_json::to_value(&entries)?, precision);
    emit(
        output.as_deref(),
        &(serde_json::to_string_pretty(&json)? + "\n"),
    )?;
    Ok(audit_exit_code(&entries))
}

#[derive(Debug, Clone, Serialize)]
pub struct SteeringComparison {
    pub partition: String,
    pub direct: Option<f64>,
    pub reconstructed: f64,
    pub relative_difference: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TomographyReport {
    pub source: ReconstructionSource,
    pub labels: Vec<String>,
    /// Row-major reconstructed covariance matrix.
    pub reconstructed: Vec<f64>,
    pub relative_frobenius_error: Option<f64>,
    pub physical: bool,
    pub min_symplectic_eigenvalue: f64,
    pub identity_discrepancy: Option<f64>,
    pub steering: Vec<SteeringComparison>,
}

fn cmd_tomo(args: &TomoArgs, config: &Config, precision: usize) -> Result<i32> {
    let samples: Option<u64> = config.resolve(args.samples, "samples")?;
    let seed = config.resolve(args.seed, "seed")?.unwrap_or(DEFAULT_SEED);
    let records_path: Option<PathBuf> = config.resolve(args.records.clone(), "records")?;
    let measurements_path: Option<PathBuf> =
        config.resolve(args.measurements.clone(), "measurements")?;
    let output: Option<PathBuf> = config.resolve(args.output.clone(), "output")?;

    let truth = args
        .cm_path
        .as_deref()
        .map(CovarianceDocument::read)
        .transpose()?;
    let labels = truth
        .as_ref()
        .map_or_else(|| default_labels(CLUSTER_MODES), |d| d.labels.clone());

    let (records, mut result) = match (&records_path, &truth) {
        (Some(path), _) => {
            let records = read_records(std::fs::File::open(path)?, &labels)?;
            let result = reconstruct(&records)?;
            (records, result)
        }
        (None, Some(doc)) => {
            let mode = match samples {
                Some(n) => SimulationMode::Sampled { n, seed },
                None => SimulationMode::Exact,
            };
            let records = simulate_variances(&doc.cm, &measurement_plan(doc.cm.n_modes())?, mode)?;
            let result = reconstruct(&records)?;
            (records, result)
        }
        (None, None) => {
            return Err(Error::Parse(
                "tomo needs a covariance file or --records".into(),
            ));
        }
    };
    if let (None, Some(n)) = (&records_path, samples) {
        result.source = ReconstructionSource::Sampled {
            seed: Some(seed),
            n,
        };
    }
    if let Some(path) = &measurements_path {
        write_records(std::fs::File::create(path)?, &records, &labels)?;
    }

    let mut requested = config.resolve_list(&args.partitions, "partition");
    if requested.is_empty() {
        requested.push("B->A".to_string());
    }
    let mut steering = Vec::new();
    for text in &requested {
        let part = parse_partition(&labels, text)?;
        let reconstructed = steering_value(&result.cm, &part)?;
        let direct = truth
            .as_ref()
            .map(|d| steering_value(&d.cm, &part))
            .transpose()?;
        steering.push(SteeringComparison {
            partition: format_partition(&labels, &part),
            direct,
            reconstructed,
            relative_difference: direct
                .filter(|&d| d > 0.0)
                .map(|d| (reconstructed - d).abs() / d),
        });
    }

    let physicality = is_physical(&result.cm)?;
    let report = TomographyReport {
        source: result.source,
        labels,
        reconstructed: result.cm.to_row_major(),
        relative_frobenius_error: truth
            .as_ref()
            .map(|d| relative_frobenius_error(&result.cm, &d.cm)),
        physical: physicality.physical,
        min_symplectic_eigenvalue: physicality.min_symplectic_eigenvalue,
        identity_discrepancy: result.identity_discrepancy,
        steering,
    };
    let json = round_json(serde_json::to_value(&report)?, precision);
    emit(
        output.as_deref(),
        &(serde_json::to_string_pretty(&json)? + "\n"),
    )?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twenty_five_bipartitions_of_four_modes() {
        let parts = default_partitions(4);
        assert_eq!(parts.len(), 25);
        let labels = default_labels(4);
        let names: Vec<String> = parts.iter().map(|p| format_partition(&labels, p)).collect();
        assert_eq!(names[0], "A->B");
        assert!(names.contains(&"A->BCD".to_string()));
        assert!(names.contains(&"AB->CD".to_string()));
        assert!(!names.contains(&"CD->AB".to_string()));
    }

    #[test]
    fn grid_endpoints() {
        let g = uniform_grid(0.01, 1.0, 100).unwrap();
        assert_eq!(g.len(), 100);
        assert_eq!(g[0], 0.01);
        assert_eq!(g[99], 1.0);
        assert!((g[49] - 0.5).abs() < 1e-15);
        assert!(uniform_grid(0.0, 1.0, 10).is_err());
        assert!(uniform_grid(0.5, 1.2, 10).is_err());
    }

    #[test]
    fn sweep_rows_keep_input_order() {
        let labels = default_labels(4);
        let parts = vec![
            parse_partition(&labels, "CD->A").unwrap(),
            parse_partition(&labels, "A->B").unwrap(),
        ];
        let spec = SweepSpec::new(DEFAULT_SQUEEZING, vec![0.5, 1.0], 0, parts).unwrap();
        let rows = spec.run().unwrap();
        let keys: Vec<(f64, &str)> = rows.iter().map(|r| (r.eta, r.partition.as_str())).collect();
        assert_eq!(
            keys,
            vec![(0.5, "CD->A"), (0.5, "A->B"), (1.0, "CD->A"), (1.0, "A->B")]
        );
        assert_eq!(rows[0].g_forward, 0.0);
    }

    #[test]
    fn sweep_rejects_grid_outside_unit_interval() {
        assert!(SweepSpec::new(0.3, vec![0.0], 0, vec![]).is_err());
        assert!(SweepSpec::new(0.3, vec![1.5], 0, vec![]).is_err());
    }

    #[test]
    fn audit_tokens() {
        let cm = lossy_cluster(DEFAULT_SQUEEZING, 0, 0.6).unwrap();
        let labels = default_labels(4);
        let all: Vec<String> = RelationType::ALL.iter().map(|t| t.to_string()).collect();
        let entries = run_audit(&cm, &labels, &all).unwrap();
        assert!(!entries.is_empty());
        assert_eq!(audit_exit_code(&entries), 0);

        let entries = run_audit(&cm, &labels, &["IVb:A|B|CD".to_string()]).unwrap();
        assert!(matches!(entries[0], AuditEntry::Rejected { .. }));
        assert_eq!(audit_exit_code(&entries), 2);

        let entries = run_audit(&cm, &labels, &["IVb+".to_string()]).unwrap();
        assert_eq!(entries.len(), 6);
        assert!(run_audit(&cm, &labels, &["V".to_string()]).is_err());
        assert!(run_audit(&cm, &labels, &["I:A|B".to_string()]).is_err());
    }
}
