use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qae_bench::{
    estimate_observable, fit_scaling, import_records, run_experiment, scaling_points, summarize,
    true_value, write_records, BenchError, CellSummary, ExperimentRecord, Format, Method,
    ObservableTerm, Plan, RunSettings, ScalingModel,
};
use qae_core::estimators::DEFAULT_K_CAP;
use qae_core::oracle::Weighting;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "qae-bench",
    version,
    about = "Sample-complexity experiments for amplitude estimators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Repeat one (a, ε) cell.
    Run {
        /// True amplitude in [0, 1].
        #[arg(long)]
        a: f64,
        /// Target half-width of the amplitude interval.
        #[arg(long)]
        epsilon: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep the target accuracy at fixed amplitude.
    SweepEpsilon {
        #[arg(long, default_value_t = 0.5)]
        a: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6])]
        epsilon: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep the amplitude at fixed target accuracy.
    SweepAmplitude {
        #[arg(long, value_delimiter = ',', default_values_t = default_amplitudes())]
        a: Vec<f64>,
        #[arg(long, default_value_t = 1e-4)]
        epsilon: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Estimate a weighted sum of term expectations 1 - 2a from a JSON list of {coeff, a}.
    Observable {
        #[arg(long)]
        terms: PathBuf,
        /// Per-term target accuracy.
        #[arg(long, default_value_t = 1e-3)]
        epsilon: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Fit a scaling law to a record CSV and print the fit as JSON.
    Fit {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ModelArg::Loglog)]
        model: ModelArg,
        /// Restrict to one method tag.
        #[arg(long)]
        method: Option<Method>,
        #[arg(long, value_enum, default_value_t = WeightingArg::K)]
        weighting: WeightingArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// classical, iqae-ch, iqae-cp, hybrid3, hybrid35, biqae-normal or biqae-beta.
    #[arg(long, default_value = "biqae-beta")]
    method: Method,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, default_value_t = 100)]
    reps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    n_incre: u64,
    /// Complexity convention for summaries: k counts Grover applications, K oracle calls.
    #[arg(long, value_enum, default_value_t = WeightingArg::K)]
    weighting: WeightingArg,
    /// Monte Carlo samples of the beta prior transform.
    #[arg(long, default_value_t = 1000)]
    prior_r: usize,
    /// Largest Grover depth a schedule may reach; runs needing more exit with code 2.
    #[arg(long, default_value_t = DEFAULT_K_CAP)]
    k_cap: u64,
    /// Keep stage traces (JSON output only).
    #[arg(long)]
    trace: bool,
    /// Output path; `.json` writes JSON, anything else CSV. Defaults to CSV on stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightingArg {
    #[value(name = "k")]
    Small,
    #[value(name = "K")]
    K,
}

impl From<WeightingArg> for Weighting {
    fn from(w: WeightingArg) -> Self {
        match w {
            WeightingArg::Small => Weighting::GroverCalls,
            WeightingArg::K => Weighting::OracleCalls,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Loglog,
    SqrtA,
}

fn default_amplitudes() -> Vec<f64> {
    (1..=19).map(|i| f64::from(i) * 0.05).collect()
}

impl Common {
    fn settings(&self) -> RunSettings {
        RunSettings {
            n_incre: self.n_incre,
            weighting: self.weighting.into(),
            prior_samples: self.prior_r,
            k_cap: self.k_cap,
            trace: self.trace,
            ..RunSettings::default()
        }
    }

    fn plan(&self, amplitudes: Vec<f64>, epsilons: Vec<f64>) -> Plan {
        Plan::new(self.method, amplitudes, epsilons, self.reps, self.seed)
            .with_alpha(self.alpha)
            .with_settings(self.settings())
    }
}

fn write_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), BenchError> {
    let text = serde_json::to_string_pretty(value).map_err(|source| BenchError::Json {
        path: out.map_or_else(|| PathBuf::from("<stdout>"), Path::to_owned),
        source,
    })?;
    match out {
        Some(path) => std::fs::write(path, text + "\n").map_err(|source| BenchError::Io {
            path: path.to_owned(),
            source,
        }),
        None => writeln!(io::stdout(), "{text}").map_err(|source| BenchError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn report(summaries: &[CellSummary], weighting: Weighting) {
    let mut err = io::stderr().lock();
    let _ = writeln!(
        err,
        "{:<13} {:>6} {:>9} {:>5} {:>12} {:>14} {:>8}",
        "method", "a", "epsilon", "runs", "median_err", "mean_calls", "coverage"
    );
    for s in summaries {
        let _ = writeln!(
            err,
            "{:<13} {:>6.3} {:>9.1e} {:>5} {:>12.3e} {:>14.1} {:>8.3}",
            s.method.tag(),
            s.a_true,
            s.epsilon,
            s.runs,
            s.median_abs_error,
            s.mean_complexity(weighting),
            s.coverage
        );
    }
}

/// Writes the records, prints a summary table and reports capped runs as a budget error.
fn finish_records(records: &[ExperimentRecord], common: &Common) -> Result<(), BenchError> {
    match &common.out {
        Some(path) => write_records(
            records,
            Format::from_path(path),
            File::create(path).map_err(|source| BenchError::Io {
                path: path.clone(),
                source,
            })?,
            path,
        )?,
        None => write_records(
            records,
            Format::Csv,
            io::stdout().lock(),
            Path::new("<stdout>"),
        )?,
    }
    report(&summarize(records)?, common.weighting.into());
    let failed = records.iter().filter(|r| r.failure.is_some()).count();
    if failed > 0 {
        return Err(BenchError::BudgetExceeded(format!(
            "{failed} of {} runs stopped at the depth cap",
            records.len()
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct ObservableReport {
    method: Method,
    epsilon_term: f64,
    alpha: f64,
    lo: f64,
    hi: f64,
    point: f64,
    true_value: f64,
    covered: bool,
    complexity: u64,
    terms: Vec<ExperimentRecord>,
}

#[derive(Serialize)]
struct FitReport {
    method: Option<Method>,
    model: ScalingModel,
    slope: f64,
    intercept: f64,
    r_squared: f64,
    points: Vec<(f64, f64)>,
}

fn run(cli: Cli) -> Result<(), BenchError> {
    match cli.command {
        Command::Run { a, epsilon, common } => finish_records(
            &run_experiment(&common.plan(vec![a], vec![epsilon]))?,
            &common,
        ),
        Command::SweepEpsilon { a, epsilon, common } => {
            finish_records(&run_experiment(&common.plan(vec![a], epsilon))?, &common)
        }
        Command::SweepAmplitude { a, epsilon, common } => {
            finish_records(&run_experiment(&common.plan(a, vec![epsilon]))?, &common)
        }
        Command::Observable {
            terms,
            epsilon,
            common,
        } => {
            let file = File::open(&terms).map_err(|source| BenchError::Io {
                path: terms.clone(),
                source,
            })?;
            let list: Vec<ObservableTerm> =
                serde_json::from_reader(BufReader::new(file)).map_err(|source| {
                    BenchError::Json {
                        path: terms.clone(),
                        source,
                    }
                })?;
            let est = estimate_observable(
                &list,
                epsilon,
                common.alpha,
                common.method,
                common.seed,
                &common.settings(),
            )?;
            let truth = true_value(&list);
            let report = ObservableReport {
                method: common.method,
                epsilon_term: epsilon,
                alpha: common.alpha,
                lo: est.lo,
                hi: est.hi,
                point: est.point,
                true_value: truth,
                covered: est.contains(truth),
                complexity: est.complexity(common.weighting.into()),
                terms: est.records,
            };
            write_json(&report, common.out.as_deref())
        }
        Command::Fit {
            input,
            model,
            method,
            weighting,
            out,
        } => {
            let records: Vec<ExperimentRecord> = import_records(&input, Format::from_path(&input))?
                .into_iter()
                .filter(|r| method.is_none_or(|m| r.method == m))
                .collect();
            let model = match model {
                ModelArg::Loglog => ScalingModel::LogLog,
                ModelArg::SqrtA => ScalingModel::SqrtA,
            };
            let points = scaling_points(&summarize(&records)?, model, weighting.into());
            let fit = fit_scaling(&points, model)?;
            let report = FitReport {
                method,
                model,
                slope: fit.slope,
                intercept: fit.intercept,
                r_squared: fit.r_squared,
                points,
            };
            write_json(&report, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    // usage errors exit with 1 so that 2 stays reserved for budget exhaustion
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_budget_exceeded() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
