//! Monte Carlo study drivers: estimate tables, power studies, coverage
//! studies.
//!
//! A study is described by a [`StudyConfig`] (deserialized from TOML) and
//! produces a [`StudyReport`] with one cell per (distribution, method) pair.
//! Replications own RNG streams keyed on (seed, distribution label,
//! replication index), so a report is a pure function of its config: cells
//! can be recomputed independently, in any order, on any number of threads.

pub mod true_values;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::Coefficient;
use crate::inference::{
    confidence_interval, test_linear_asymptotic, test_permutation, test_rank_asymptotic, CiMethod,
    TailMode,
};
use crate::rng::{derive_seed, label_hash, DOMAIN_STUDY};
use crate::sample::Sample;
use crate::samplers::{sample, DistributionSpec};

/// What a study measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StudyKind {
    /// Mean coefficient values per distribution (single sample or averaged).
    Estimate,
    /// Rejection rates of independence tests at the configured level.
    Power,
    /// Coverage and mean length of confidence intervals.
    Coverage,
}

impl StudyKind {
    pub fn name(&self) -> &'static str {
        match self {
            StudyKind::Estimate => "estimate",
            StudyKind::Power => "power",
            StudyKind::Coverage => "coverage",
        }
    }

    fn parse(name: &str) -> Result<Self> {
        match name {
            "estimate" => Ok(StudyKind::Estimate),
            "power" => Ok(StudyKind::Power),
            "coverage" => Ok(StudyKind::Coverage),
            other => Err(Error::InvalidConfig(format!(
                "unknown study kind '{other}'; valid: estimate, power, coverage"
            ))),
        }
    }
}

fn default_level() -> f64 {
    0.05
}

fn default_permutations() -> usize {
    1000
}

fn default_bootstrap() -> usize {
    500
}

/// Configuration of one study run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub kind: StudyKind,
    /// Distribution labels, e.g. `["bvn(0)", "nm1", "garch21"]`.
    pub distributions: Vec<String>,
    /// Sample size per replication.
    pub n: usize,
    /// Number of Monte Carlo replications.
    pub replications: usize,
    /// Test level / one minus the confidence level.
    #[serde(default = "default_level")]
    pub level: f64,
    /// Method ids; meaning depends on `kind` (coefficients for estimate
    /// studies, test ids for power studies, interval ids for coverage).
    pub methods: Vec<String>,
    pub seed: u64,
    /// Permutations per permutation test.
    #[serde(default = "default_permutations")]
    pub permutations: usize,
    /// Resamples per covariance bootstrap.
    #[serde(default = "default_bootstrap")]
    pub bootstrap: usize,
}

impl StudyConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: StudyConfig =
            toml::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.distributions.is_empty() {
            return Err(Error::InvalidConfig("no distributions listed".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::InvalidConfig("no methods listed".into()));
        }
        if self.replications < 1 {
            return Err(Error::InvalidConfig("replications must be >= 1".into()));
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "level must lie in (0, 1), got {}",
                self.level
            )));
        }
        if self.n < 3 {
            return Err(Error::InvalidConfig("n must be >= 3".into()));
        }
        for d in &self.distributions {
            DistributionSpec::parse(d)?;
        }
        for m in &self.methods {
            match self.kind {
                StudyKind::Estimate => {
                    Coefficient::parse(m)?;
                }
                StudyKind::Power => {
                    PowerMethod::parse(m)?;
                }
                StudyKind::Coverage => {
                    CiMethod::parse(m)?;
                }
            }
        }
        Ok(())
    }
}

/// One (distribution, method) result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyCell {
    pub distribution: String,
    pub method: String,
    /// Mean estimate, rejection rate, or coverage; `None` marks a cell whose
    /// population quantity does not exist (reported as "-" in tables).
    pub value: Option<f64>,
    /// Monte Carlo standard error of `value`.
    pub std_error: Option<f64>,
    /// Mean interval length (coverage studies only).
    pub mean_length: Option<f64>,
    pub replications: usize,
}

/// Study results plus the identifying metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StudyReport {
    pub kind: StudyKind,
    pub n: usize,
    pub seed: u64,
    pub level: f64,
    pub replications: usize,
    pub permutations: usize,
    pub bootstrap: usize,
    pub cells: Vec<StudyCell>,
    /// Wall-clock runtime; excluded from equality and the CSV round trip.
    #[serde(default)]
    pub elapsed_seconds: f64,
}

impl PartialEq for StudyReport {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.n == other.n
            && self.seed == other.seed
            && self.level == other.level
            && self.replications == other.replications
            && self.permutations == other.permutations
            && self.bootstrap == other.bootstrap
            && self.cells == other.cells
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x}"),
        None => String::new(),
    }
}

fn parse_opt(s: &str) -> Result<Option<f64>> {
    if s.is_empty() {
        return Ok(None);
    }
    s.parse::<f64>()
        .map(Some)
        .map_err(|e| Error::InvalidConfig(format!("bad number '{s}': {e}")))
}

pub const REPORT_CSV_HEADER: &str =
    "kind,n,seed,level,replications,permutations,bootstrap,distribution,method,value,std_error,mean_length,cell_replications";

/// One CSV line for a cell, including the report metadata columns.
pub fn cell_csv_line(report_meta: &StudyReport, cell: &StudyCell) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        report_meta.kind.name(),
        report_meta.n,
        report_meta.seed,
        report_meta.level,
        report_meta.replications,
        report_meta.permutations,
        report_meta.bootstrap,
        cell.distribution,
        cell.method,
        fmt_opt(cell.value),
        fmt_opt(cell.std_error),
        fmt_opt(cell.mean_length),
        cell.replications
    )
}

impl StudyReport {
    /// Full-precision CSV; numbers use the shortest representation that
    /// parses back to the identical f64, so the round trip is exact.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from(REPORT_CSV_HEADER);
        out.push('\n');
        for cell in &self.cells {
            out.push_str(&cell_csv_line(self, cell));
            out.push('\n');
        }
        out
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidConfig("empty report csv".into()))?;
        if header.trim() != REPORT_CSV_HEADER {
            return Err(Error::InvalidConfig(format!(
                "unexpected report header '{header}'"
            )));
        }
        let mut report: Option<StudyReport> = None;
        for (lineno, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 13 {
                return Err(Error::InvalidConfig(format!(
                    "report line {}: expected 13 fields, got {}",
                    lineno + 2,
                    f.len()
                )));
            }
            let parse_num = |s: &str| -> Result<f64> {
                s.parse()
                    .map_err(|e| Error::InvalidConfig(format!("line {}: {e}", lineno + 2)))
            };
            let parse_int = |s: &str| -> Result<usize> {
                s.parse()
                    .map_err(|e| Error::InvalidConfig(format!("line {}: {e}", lineno + 2)))
            };
            let meta = StudyReport {
                kind: StudyKind::parse(f[0])?,
                n: parse_int(f[1])?,
                seed: f[2]
                    .parse()
                    .map_err(|e| Error::InvalidConfig(format!("line {}: {e}", lineno + 2)))?,
                level: parse_num(f[3])?,
                replications: parse_int(f[4])?,
                permutations: parse_int(f[5])?,
                bootstrap: parse_int(f[6])?,
                cells: Vec::new(),
                elapsed_seconds: 0.0,
            };
            let report = report.get_or_insert(meta);
            report.cells.push(StudyCell {
                distribution: f[7].to_string(),
                method: f[8].to_string(),
                value: parse_opt(f[9])?,
                std_error: parse_opt(f[10])?,
                mean_length: parse_opt(f[11])?,
                replications: parse_int(f[12])?,
            });
        }
        report.ok_or_else(|| Error::InvalidConfig("report csv has no cells".into()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Receives progress callbacks and can veto cells (used for resuming).
pub trait StudyObserver {
    /// Return false to skip a (distribution, method) cell entirely.
    fn should_run(&self, distribution: &str, method: &str) -> bool {
        let _ = (distribution, method);
        true
    }

    fn cell_done(&mut self, cell: &StudyCell) {
        let _ = cell;
    }
}

/// Observer that runs everything and reports nothing.
pub struct NoopObserver;

impl StudyObserver for NoopObserver {}

/// RNG stream seed for one replication of one distribution.
fn replication_seed(cfg_seed: u64, dist_label: &str, rep: usize) -> u64 {
    derive_seed(cfg_seed, &[DOMAIN_STUDY, label_hash(dist_label), rep as u64])
}

/// Rate cell helper: mean of indicator values with binomial standard error.
fn rate_cell(hits: usize, total: usize) -> (f64, f64) {
    let p = hits as f64 / total as f64;
    (p, (p * (1.0 - p) / total as f64).sqrt())
}

/// Run the study described by `cfg`.
pub fn run_study(cfg: &StudyConfig, observer: &mut dyn StudyObserver) -> Result<StudyReport> {
    cfg.validate()?;
    match cfg.kind {
        StudyKind::Estimate => run_estimate_table(cfg, observer),
        StudyKind::Power => run_power_study(cfg, observer),
        StudyKind::Coverage => run_coverage_study(cfg, observer),
    }
}

impl StudyReport {
    /// Empty report carrying the config metadata (used by progress sinks).
    pub fn skeleton(cfg: &StudyConfig) -> StudyReport {
        StudyReport {
            kind: cfg.kind,
            n: cfg.n,
            seed: cfg.seed,
            level: cfg.level,
            replications: cfg.replications,
            permutations: cfg.permutations,
            bootstrap: cfg.bootstrap,
            cells: Vec::new(),
            elapsed_seconds: 0.0,
        }
    }
}

fn report_skeleton(cfg: &StudyConfig) -> StudyReport {
    StudyReport::skeleton(cfg)
}

/// Table-1 style study: mean coefficient values per distribution.
pub fn run_estimate_table(
    cfg: &StudyConfig,
    observer: &mut dyn StudyObserver,
) -> Result<StudyReport> {
    let start = Instant::now();
    let mut report = report_skeleton(cfg);
    for dist_label in &cfg.distributions {
        let spec = DistributionSpec::parse(dist_label)?;
        let label = spec.label();
        let undefined = spec.undefined_coefficients();
        for method in &cfg.methods {
            if !observer.should_run(&label, method) {
                continue;
            }
            let coef = Coefficient::parse(method)?;
            let cell = if undefined.contains(&coef) {
                StudyCell {
                    distribution: label.clone(),
                    method: coef.name().to_string(),
                    value: None,
                    std_error: None,
                    mean_length: None,
                    replications: cfg.replications,
                }
            } else {
                let values: Vec<f64> = (0..cfg.replications)
                    .into_par_iter()
                    .map(|rep| -> Result<f64> {
                        let rep_seed = replication_seed(cfg.seed, &label, rep);
                        let s = sample(&spec, cfg.n, rep_seed)?;
                        coef.eval(&s, rep_seed)
                    })
                    .collect::<Result<_>>()?;
                let m = values.len() as f64;
                let mean = values.iter().sum::<f64>() / m;
                let se = if values.len() > 1 {
                    let var =
                        values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (m - 1.0);
                    Some((var / m).sqrt())
                } else {
                    None
                };
                StudyCell {
                    distribution: label.clone(),
                    method: coef.name().to_string(),
                    value: Some(mean),
                    std_error: se,
                    mean_length: None,
                    replications: cfg.replications,
                }
            };
            observer.cell_done(&cell);
            report.cells.push(cell);
        }
    }
    report.elapsed_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

/// A test of independence as named in power-study configs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerMethod {
    PearsonPermutation,
    SpearmanPermutation,
    LinearPermutation,
    RankAsymptotic,
    RankPermutation,
    DcorPermutation,
    XiPermutation,
    LinearAsymptoticSym,
    LinearAsymptoticTau,
}

impl PowerMethod {
    pub const ALL: [PowerMethod; 9] = [
        PowerMethod::PearsonPermutation,
        PowerMethod::SpearmanPermutation,
        PowerMethod::LinearPermutation,
        PowerMethod::RankAsymptotic,
        PowerMethod::RankPermutation,
        PowerMethod::DcorPermutation,
        PowerMethod::XiPermutation,
        PowerMethod::LinearAsymptoticSym,
        PowerMethod::LinearAsymptoticTau,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PowerMethod::PearsonPermutation => "pearson",
            PowerMethod::SpearmanPermutation => "spearman",
            PowerMethod::LinearPermutation => "linear",
            PowerMethod::RankAsymptotic => "rank_asymptotic",
            PowerMethod::RankPermutation => "rank_permutation",
            PowerMethod::DcorPermutation => "dcor",
            PowerMethod::XiPermutation => "xi",
            PowerMethod::LinearAsymptoticSym => "linear_sym",
            PowerMethod::LinearAsymptoticTau => "linear_tau",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "pearson" => Ok(PowerMethod::PearsonPermutation),
            "spearman" => Ok(PowerMethod::SpearmanPermutation),
            "linear" | "linear_permutation" => Ok(PowerMethod::LinearPermutation),
            "rank_asymptotic" | "rank_a" => Ok(PowerMethod::RankAsymptotic),
            "rank_permutation" | "rank_p" => Ok(PowerMethod::RankPermutation),
            "dcor" => Ok(PowerMethod::DcorPermutation),
            "xi" => Ok(PowerMethod::XiPermutation),
            "linear_sym" => Ok(PowerMethod::LinearAsymptoticSym),
            "linear_tau" => Ok(PowerMethod::LinearAsymptoticTau),
            other => Err(Error::InvalidConfig(format!(
                "unknown test method '{other}'; valid: pearson, spearman, linear, \
                 rank_asymptotic, rank_permutation, dcor, xi, linear_sym, linear_tau"
            ))),
        }
    }

    /// p-value of this test on one sample.
    pub fn p_value(&self, s: &Sample, permutations: usize, seed: u64) -> Result<f64> {
        let perm = |coef: Coefficient| -> Result<f64> {
            Ok(test_permutation(s, coef, permutations, seed)?.p_value)
        };
        match self {
            PowerMethod::PearsonPermutation => perm(Coefficient::Pearson),
            PowerMethod::SpearmanPermutation => perm(Coefficient::Spearman),
            PowerMethod::LinearPermutation => perm(Coefficient::LancasterLinear),
            PowerMethod::RankPermutation => perm(Coefficient::LancasterRank),
            PowerMethod::DcorPermutation => perm(Coefficient::DistanceCorrelation),
            PowerMethod::XiPermutation => perm(Coefficient::Xi),
            PowerMethod::RankAsymptotic => Ok(test_rank_asymptotic(s)?.p_value),
            PowerMethod::LinearAsymptoticSym => {
                Ok(test_linear_asymptotic(s, TailMode::AssumeSymmetric)?.p_value)
            }
            PowerMethod::LinearAsymptoticTau => {
                Ok(test_linear_asymptotic(s, TailMode::EstimateTau)?.p_value)
            }
        }
    }
}

/// Table-2 style study: empirical rejection rates at level `cfg.level`.
pub fn run_power_study(
    cfg: &StudyConfig,
    observer: &mut dyn StudyObserver,
) -> Result<StudyReport> {
    let start = Instant::now();
    let mut report = report_skeleton(cfg);
    for dist_label in &cfg.distributions {
        let spec = DistributionSpec::parse(dist_label)?;
        let label = spec.label();
        for method_name in &cfg.methods {
            let method = PowerMethod::parse(method_name)?;
            if !observer.should_run(&label, method.name()) {
                continue;
            }
            let rejections: Vec<bool> = (0..cfg.replications)
                .into_par_iter()
                .map(|rep| -> Result<bool> {
                    let rep_seed = replication_seed(cfg.seed, &label, rep);
                    let s = sample(&spec, cfg.n, rep_seed)?;
                    let test_seed = derive_seed(rep_seed, &[label_hash(method.name())]);
                    Ok(method.p_value(&s, cfg.permutations, test_seed)? <= cfg.level)
                })
                .collect::<Result<_>>()?;
            let hits = rejections.iter().filter(|r| **r).count();
            let (rate, se) = rate_cell(hits, rejections.len());
            let cell = StudyCell {
                distribution: label.clone(),
                method: method.name().to_string(),
                value: Some(rate),
                std_error: Some(se),
                mean_length: None,
                replications: cfg.replications,
            };
            observer.cell_done(&cell);
            report.cells.push(cell);
        }
    }
    report.elapsed_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Table-3/4 style study: empirical coverage of the true coefficient value
/// and mean interval length.
pub fn run_coverage_study(
    cfg: &StudyConfig,
    observer: &mut dyn StudyObserver,
) -> Result<StudyReport> {
    let start = Instant::now();
    let mut report = report_skeleton(cfg);
    let level = 1.0 - cfg.level;
    for dist_label in &cfg.distributions {
        let spec = DistributionSpec::parse(dist_label)?;
        let label = spec.label();
        for method_name in &cfg.methods {
            let method = CiMethod::parse(method_name)?;
            if !observer.should_run(&label, method.name()) {
                continue;
            }
            let truth = true_values::true_value(&spec, method.estimator()).ok_or_else(|| {
                Error::MissingTrueValue {
                    distribution: label.clone(),
                    estimator: method.estimator().name().to_string(),
                }
            })?;
            let outcomes: Vec<(bool, f64)> = (0..cfg.replications)
                .into_par_iter()
                .map(|rep| -> Result<(bool, f64)> {
                    let rep_seed = replication_seed(cfg.seed, &label, rep);
                    let s = sample(&spec, cfg.n, rep_seed)?;
                    let ci_seed = derive_seed(rep_seed, &[label_hash(method.name())]);
                    let ci = confidence_interval(&s, method, level, cfg.bootstrap, ci_seed)?;
                    Ok((ci.contains(truth), ci.length()))
                })
                .collect::<Result<_>>()?;
            let hits = outcomes.iter().filter(|(c, _)| *c).count();
            let (rate, se) = rate_cell(hits, outcomes.len());
            let mean_length =
                outcomes.iter().map(|(_, l)| l).sum::<f64>() / outcomes.len() as f64;
            let cell = StudyCell {
                distribution: label.clone(),
                method: method.name().to_string(),
                value: Some(rate),
                std_error: Some(se),
                mean_length: Some(mean_length),
                replications: cfg.replications,
            };
            observer.cell_done(&cell);
            report.cells.push(cell);
        }
    }
    report.elapsed_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}
