//! Subcommand implementations.

use std::collections::HashSet;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use lancaster::estimators::{lancaster_linear, lancaster_rank, Coefficient};
use lancaster::experiments::{
    cell_csv_line, run_study, PowerMethod, StudyCell, StudyConfig, StudyObserver, StudyReport,
    REPORT_CSV_HEADER,
};
use lancaster::experiments::true_values::montecarlo_table;
use lancaster::inference::{confidence_interval, CiMethod};
use lancaster::samplers::{sample as draw_sample, DistributionSpec};
use lancaster::Sample;

use crate::csvio::{parse_columns, read_sample, write_sample};
use crate::{CiArgs, CliError, EstimateArgs, StudyArgs, TestArgs, TrueValuesArgs};

#[derive(Serialize)]
struct EstimateRow {
    coefficient: &'static str,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ties: Option<bool>,
}

fn estimate_rows(s: &Sample, coefficients: &[Coefficient], seed: u64) -> Result<Vec<EstimateRow>, CliError> {
    let mut rows = Vec::new();
    for coef in coefficients {
        let row = match coef {
            Coefficient::LancasterRank => {
                let est = lancaster_rank(s)?;
                EstimateRow {
                    coefficient: coef.name(),
                    value: est.value,
                    rho1: Some(est.rho1),
                    rho2: Some(est.rho2),
                    ties: Some(est.ties),
                }
            }
            Coefficient::LancasterLinear => {
                let est = lancaster_linear(s)?;
                EstimateRow {
                    coefficient: coef.name(),
                    value: est.value,
                    rho1: Some(est.rho1),
                    rho2: Some(est.rho2),
                    ties: Some(est.ties),
                }
            }
            other => EstimateRow {
                coefficient: other.name(),
                value: other.eval(s, seed)?,
                rho1: None,
                rho2: None,
                ties: None,
            },
        };
        rows.push(row);
    }
    Ok(rows)
}

pub fn estimate(args: &EstimateArgs) -> Result<(), CliError> {
    let sample = match (&args.input, &args.distribution) {
        (Some(path), None) => read_sample(path, &parse_columns(&args.columns)?)?,
        (None, Some(label)) => {
            let spec = DistributionSpec::parse(label)?;
            draw_sample(&spec, args.n, args.seed)?
        }
        (None, None) => {
            return Err(CliError::Usage(
                "provide an input CSV or --distribution <label>".into(),
            ))
        }
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    if let Some(path) = &args.dump_sample {
        write_sample(path, &sample)?;
    }

    let coefficients: Vec<Coefficient> = match &args.coefficients {
        None => Coefficient::ALL.to_vec(),
        Some(list) => list
            .split(',')
            .map(|c| Coefficient::parse(c.trim()).map_err(CliError::from))
            .collect::<Result<_, _>>()?,
    };
    let rows = estimate_rows(&sample, &coefficients, args.seed)?;

    match args.format.as_str() {
        "json" => println!("{}", serde_json::to_string_pretty(&rows).expect("serializable")),
        "csv" => {
            println!("coefficient,value,rho1,rho2,ties");
            for r in &rows {
                println!(
                    "{},{},{},{},{}",
                    r.coefficient,
                    r.value,
                    r.rho1.map(|v| v.to_string()).unwrap_or_default(),
                    r.rho2.map(|v| v.to_string()).unwrap_or_default(),
                    r.ties.map(|v| v.to_string()).unwrap_or_default()
                );
            }
        }
        _ => {
            println!("{:<18} {:>8} {:>8} {:>8} {:>6}", "coefficient", "value", "rho1", "rho2", "ties");
            for r in &rows {
                println!(
                    "{:<18} {:>8.3} {:>8} {:>8} {:>6}",
                    r.coefficient,
                    r.value,
                    r.rho1.map(|v| format!("{v:.3}")).unwrap_or_else(|| "-".into()),
                    r.rho2.map(|v| format!("{v:.3}")).unwrap_or_else(|| "-".into()),
                    r.ties
                        .map(|t| if t { "yes" } else { "no" }.to_string())
                        .unwrap_or_else(|| "-".into())
                );
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct TestOutput {
    statistic: f64,
    p_value: f64,
    method: String,
    n: usize,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_permutations: Option<usize>,
}

pub fn test(args: &TestArgs) -> Result<(), CliError> {
    let method = PowerMethod::parse(&args.method)?;
    let sample = read_sample(&args.input, &parse_columns(&args.columns)?)?;
    // Route through the same dispatcher the power studies use.
    let is_permutation = !matches!(
        method,
        PowerMethod::RankAsymptotic
            | PowerMethod::LinearAsymptoticSym
            | PowerMethod::LinearAsymptoticTau
    );
    let p_value = method.p_value(&sample, args.permutations, args.seed)?;
    let statistic = match method {
        PowerMethod::RankAsymptotic => (sample.len() as f64).sqrt() * lancaster_rank(&sample)?.value,
        PowerMethod::LinearAsymptoticSym | PowerMethod::LinearAsymptoticTau => {
            (sample.len() as f64).sqrt() * lancaster_linear(&sample)?.value
        }
        PowerMethod::PearsonPermutation => Coefficient::Pearson.eval(&sample, args.seed)?,
        PowerMethod::SpearmanPermutation => Coefficient::Spearman.eval(&sample, args.seed)?,
        PowerMethod::LinearPermutation => lancaster_linear(&sample)?.value,
        PowerMethod::RankPermutation => lancaster_rank(&sample)?.value,
        PowerMethod::DcorPermutation => Coefficient::DistanceCorrelation.eval(&sample, args.seed)?,
        PowerMethod::XiPermutation => Coefficient::Xi.eval(&sample, args.seed)?,
    };
    let out = TestOutput {
        statistic,
        p_value,
        method: method.name().to_string(),
        n: sample.len(),
        seed: args.seed,
        n_permutations: is_permutation.then_some(args.permutations),
    };
    println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    Ok(())
}

#[derive(Serialize)]
struct CiOutput {
    lower: f64,
    upper: f64,
    level: f64,
    method: String,
    estimate: f64,
    rho1: f64,
    rho2: f64,
    n: usize,
    seed: u64,
    bootstrap: usize,
    truncated_lower: bool,
    truncated_upper: bool,
}

pub fn ci(args: &CiArgs) -> Result<(), CliError> {
    let method = CiMethod::parse(&args.method)?;
    let sample = read_sample(&args.input, &parse_columns(&args.columns)?)?;
    let interval = confidence_interval(&sample, method, args.level, args.bootstrap, args.seed)?;
    let est = match method.estimator() {
        lancaster::inference::EstimatorKind::Rank => lancaster_rank(&sample)?,
        lancaster::inference::EstimatorKind::Linear => lancaster_linear(&sample)?,
    };
    let out = CiOutput {
        lower: interval.lower,
        upper: interval.upper,
        level: interval.level,
        method: method.name().to_string(),
        estimate: est.value,
        rho1: est.rho1,
        rho2: est.rho2,
        n: sample.len(),
        seed: args.seed,
        bootstrap: args.bootstrap,
        truncated_lower: interval.truncated_lower,
        truncated_upper: interval.truncated_upper,
    };
    println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    Ok(())
}

/// Streams finished cells to progress.csv and skips cells already there.
struct ProgressSink {
    file: fs::File,
    meta: StudyReport,
    done: HashSet<(String, String)>,
}

impl StudyObserver for ProgressSink {
    fn should_run(&self, distribution: &str, method: &str) -> bool {
        !self
            .done
            .contains(&(distribution.to_string(), method.to_string()))
    }

    fn cell_done(&mut self, cell: &StudyCell) {
        let _ = writeln!(self.file, "{}", cell_csv_line(&self.meta, cell));
        let _ = self.file.flush();
    }
}

fn load_progress(path: &Path, meta: &StudyReport) -> Vec<StudyCell> {
    let Ok(text) = fs::read_to_string(path) else {
        return Vec::new();
    };
    match StudyReport::from_csv_str(&text) {
        Ok(prev) => {
            let same_config = prev.kind == meta.kind
                && prev.n == meta.n
                && prev.seed == meta.seed
                && prev.level == meta.level
                && prev.replications == meta.replications
                && prev.permutations == meta.permutations
                && prev.bootstrap == meta.bootstrap;
            if same_config {
                prev.cells
            } else {
                eprintln!(
                    "warning: {} was produced by a different config; recomputing all cells",
                    path.display()
                );
                Vec::new()
            }
        }
        Err(e) => {
            eprintln!("warning: ignoring unreadable progress file: {e}");
            Vec::new()
        }
    }
}

pub fn study(args: &StudyArgs) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.config)
        .map_err(|e| CliError::Parse(format!("{}: {e}", args.config)))?;
    let mut cfg = StudyConfig::from_toml_str(&text).map_err(|e| CliError::Parse(e.to_string()))?;
    if args.full_scale {
        cfg.replications = 10_000;
        cfg.permutations = 1000;
    }
    cfg.validate()?;

    let out_dir = PathBuf::from(&args.output_dir);
    fs::create_dir_all(&out_dir)?;
    let progress_path = out_dir.join("progress.csv");
    let meta = StudyReport::skeleton(&cfg);

    let resumed = if args.resume {
        load_progress(&progress_path, &meta)
    } else {
        Vec::new()
    };
    let fresh_progress = resumed.is_empty();
    let mut file = fs::OpenOptions::new()
        .create(true)
        .append(!fresh_progress)
        .write(true)
        .truncate(fresh_progress)
        .open(&progress_path)?;
    if fresh_progress {
        writeln!(file, "{REPORT_CSV_HEADER}")?;
        for cell in &resumed {
            writeln!(file, "{}", cell_csv_line(&meta, cell))?;
        }
    }
    let mut sink = ProgressSink {
        file,
        meta: meta.clone(),
        done: resumed
            .iter()
            .map(|c| (c.distribution.clone(), c.method.clone()))
            .collect(),
    };

    let partial = run_study(&cfg, &mut sink)?;

    // Assemble the final report in config order, merging resumed cells.
    let mut report = partial.clone();
    report.cells = Vec::new();
    for dist in &cfg.distributions {
        let label = DistributionSpec::parse(dist)?.label();
        for method in &cfg.methods {
            let mname = canonical_method_name(cfg.kind, method)?;
            let found = partial
                .cells
                .iter()
                .chain(resumed.iter())
                .find(|c| c.distribution == label && c.method == mname);
            if let Some(cell) = found {
                report.cells.push(cell.clone());
            }
        }
    }

    fs::write(out_dir.join("report.csv"), report.to_csv_string())?;
    fs::write(out_dir.join("report.json"), report.to_json_string())?;
    println!(
        "wrote {} cells to {} (report.csv, report.json) in {:.1}s",
        report.cells.len(),
        out_dir.display(),
        report.elapsed_seconds
    );
    Ok(())
}

fn canonical_method_name(
    kind: lancaster::StudyKind,
    method: &str,
) -> Result<String, CliError> {
    use lancaster::StudyKind;
    Ok(match kind {
        StudyKind::Estimate => Coefficient::parse(method)?.name().to_string(),
        StudyKind::Power => PowerMethod::parse(method)?.name().to_string(),
        StudyKind::Coverage => CiMethod::parse(method)?.name().to_string(),
    })
}

pub fn true_values(args: &TrueValuesArgs) -> Result<(), CliError> {
    println!("label,estimator,value  (n = {}, seed = {})", args.n, args.seed);
    for (label, est, value) in montecarlo_table(args.n, args.seed)? {
        println!("{label},{},{value:.5}", est.name());
    }
    Ok(())
}
