//! Thin command-line front end over the `steerkit` library: evaluate
//! criteria at a state-family point, sweep a parameter into CSV, bisect a
//! criterion sign change, or run the verification suites.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use steerkit::criteria::{CriterionKind, MuPolicy, Verdict};
use steerkit::scan::{self, SweepSpec};
use steerkit::states::FamilyPoint;
use steerkit::Suite;

const DEFAULT_VERIFY_SEED: u64 = 7;

#[derive(Parser)]
#[command(
    name = "steerkit",
    version,
    about = "Spectral entanglement and EPR-steering tests for two-qubit states"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Family parameters accepted as individual flags; each family consumes
/// the subset it defines (werner: --v; pure: --theta; avn: --theta --nu1;
/// bell-diag: --v; color-noise: --theta --v; mems: --gamma; gen-werner:
/// --v --alpha; rank2: --theta --phi --alpha --beta --nu1).
#[derive(Args, Clone, Copy)]
struct ParamArgs {
    #[arg(long)]
    v: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    phi: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    nu1: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
}

impl ParamArgs {
    fn pairs(&self) -> Vec<(String, f64)> {
        [
            ("v", self.v),
            ("theta", self.theta),
            ("phi", self.phi),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("nu1", self.nu1),
            ("gamma", self.gamma),
        ]
        .into_iter()
        .filter_map(|(name, value)| value.map(|x| (name.to_string(), x)))
        .collect()
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate criteria at one family point and print a table.
    Eval {
        #[arg(long)]
        family: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Steering-functional parameter, in (0, 2].
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        /// Comma-separated subset of
        /// ppt,ppt_sym,csywo,peres,concurrence,geometric.
        #[arg(long, value_delimiter = ',')]
        criteria: Option<Vec<String>>,
        /// Admit mu = 0 exactly (figure-reproduction limit).
        #[arg(long)]
        figure_mode: bool,
    },
    /// Sweep one parameter over a uniform grid and emit CSV.
    Sweep {
        #[arg(long)]
        family: String,
        /// Name of the swept parameter.
        #[arg(long)]
        param: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        /// Fixed values for the remaining parameters, as name=value.
        #[arg(long = "fixed", value_parser = parse_fixed)]
        fixed: Vec<(String, f64)>,
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        criteria: Vec<String>,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        figure_mode: bool,
    },
    /// Bisect a criterion sign change; prints the root to stdout.
    Critical {
        #[arg(long)]
        family: String,
        #[arg(long)]
        param: String,
        /// Bracket endpoints as lo,hi; the criterion must change sign.
        #[arg(long, value_parser = parse_bracket)]
        bracket: (f64, f64),
        #[arg(long)]
        criterion: String,
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Fixed values for the remaining parameters, as name=value.
        #[arg(long = "fixed", value_parser = parse_fixed)]
        fixed: Vec<(String, f64)>,
        #[arg(long)]
        figure_mode: bool,
    },
    /// Run a verification suite; exit code 0 iff every assertion passes.
    Verify {
        /// One of constraints, separable, hierarchy, rank2, avn,
        /// identity, all.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Defaults to STEERKIT_SEED from the environment, then 7.
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn parse_fixed(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let value: f64 = value
        .parse()
        .map_err(|e| format!("bad value in `{s}`: {e}"))?;
    Ok((name.trim().to_string(), value))
}

fn parse_bracket(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| format!("expected lo,hi, got `{s}`"))?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("bad lo: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("bad hi: {e}"))?;
    Ok((lo, hi))
}

fn parse_criteria(names: &[String]) -> steerkit::Result<Vec<CriterionKind>> {
    names.iter().map(|n| CriterionKind::parse(n)).collect()
}

fn policy(figure_mode: bool) -> MuPolicy {
    if figure_mode {
        MuPolicy::Figure
    } else {
        MuPolicy::Strict
    }
}

fn verify_seed(cli_seed: Option<u64>) -> u64 {
    cli_seed
        .or_else(|| {
            std::env::var("STEERKIT_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(DEFAULT_VERIFY_SEED)
}

fn run() -> steerkit::Result<bool> {
    match Cli::parse().cmd {
        Cmd::Eval {
            family,
            params,
            mu,
            criteria,
            figure_mode,
        } => {
            let point = FamilyPoint::from_name(&family, &params.pairs())?;
            let kinds = match criteria {
                Some(names) => parse_criteria(&names)?,
                None => scan::default_criteria(&point),
            };
            let reports = scan::evaluate(&point, mu, &kinds, policy(figure_mode))?;
            println!("state: {}", point.describe());
            println!("{:<12} {:<8} {:>24}  verdict", "criterion", "mu", "value");
            for r in reports {
                let mu_col = r.mu.map_or("-".to_string(), |m| format!("{m}"));
                let verdict = match r.verdict {
                    Verdict::Detected => "detected",
                    Verdict::NotDetected => "not-detected",
                };
                println!(
                    "{:<12} {:<8} {:>24.15e}  {verdict}",
                    r.criterion.name(),
                    mu_col,
                    r.value
                );
            }
            Ok(true)
        }
        Cmd::Sweep {
            family,
            param,
            from,
            to,
            steps,
            fixed,
            mu,
            criteria,
            out,
            figure_mode,
        } => {
            let mut params = fixed;
            params.push((param.clone(), from));
            let template = FamilyPoint::from_name(&family, &params)?;
            let spec = SweepSpec {
                template,
                param,
                lo: from,
                hi: to,
                steps,
                mu,
                criteria: parse_criteria(&criteria)?,
                mu_policy: policy(figure_mode),
            };
            let csv = scan::sweep(&spec)?;
            match out {
                Some(path) => std::fs::write(&path, csv).map_err(|e| {
                    steerkit::Error::Unsupported(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{csv}"),
            }
            Ok(true)
        }
        Cmd::Critical {
            family,
            param,
            bracket,
            criterion,
            mu,
            tol,
            fixed,
            figure_mode,
        } => {
            let mut params = fixed;
            params.push((param.clone(), bracket.0));
            let template = FamilyPoint::from_name(&family, &params)?;
            let result = scan::bisect_critical(
                &template,
                &param,
                bracket,
                CriterionKind::parse(&criterion)?,
                mu,
                tol,
                policy(figure_mode),
            )?;
            println!("{:.15e}", result.root);
            eprintln!(
                "bracket [{:.15e}, {:.15e}], {} iterations, residual {:.6e}",
                result.bracket.0, result.bracket.1, result.iterations, result.residual
            );
            Ok(true)
        }
        Cmd::Verify {
            suite,
            samples,
            seed,
        } => {
            let reports = scan::verify(Suite::parse(&suite)?, samples, verify_seed(seed));
            print!("{}", scan::render_report(&reports));
            Ok(scan::all_passed(&reports))
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
