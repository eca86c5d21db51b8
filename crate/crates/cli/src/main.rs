use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nilherm_cli::{
    run_anomaly, run_checks, run_classify, wp_table, InstantonChoice, ProfileChoice, Report,
    RunConfig, CHECK_IDS,
};

/// Verification suites for torsion geometry on six-dimensional
/// nilmanifolds: torsion and curvature displays, Pontrjagin forms,
/// instanton and anomaly residuals, and the elliptic dilaton profiles.
#[derive(Parser)]
#[command(name = "nilherm", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Family for parameterized checks: h5, h3, h5real, fam1, fam2.
    #[arg(long)]
    family: Option<String>,
    /// Comma-separated key=value parameters (rationals as p/q), e.g.
    /// `t=1,s=1/2,l1=2`.
    #[arg(long)]
    params: Option<String>,
    /// Key-value configuration file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Tolerance for numeric checks (defaults are per check).
    #[arg(long)]
    tolerance: Option<f64>,
    /// Emit the report as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run named verification suites ("all" or a list of check ids).
    Verify {
        /// Check ids; defaults to all.
        checks: Vec<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Evaluate the anomaly-cancellation residual for an instanton choice
    /// against a dilaton profile.
    Anomaly {
        /// Gauge connection: a-lambda or a-ad.
        #[arg(long)]
        instanton: String,
        /// Dilaton profile: constant, quadratic, inverse-square, weierstrass.
        #[arg(long)]
        profile: String,
        /// The tension parameter as a rational p/q.
        #[arg(long, value_name = "Q")]
        alpha_prime: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Classify a family instance (anti-self-dual fibration / abelian
    /// complex structure).
    Classify {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Print a (z, wp, wp', residual) table as CSV.
    Wp {
        /// Positive cubic root parameter.
        #[arg(long, default_value_t = 1.0)]
        a_w: f64,
        /// Number of grid points.
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
    /// Verify the contraction of the fibred family onto its degenerate
    /// limit (structure equations, torsion, closure constant).
    Contract {
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn build_config(common: &CommonOpts) -> anyhow::Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &common.config {
        cfg.apply_file(path)?;
    }
    if let Some(params) = &common.params {
        cfg.apply_params(params)?;
    }
    if let Some(family) = &common.family {
        cfg.apply_pair("family", family)?;
    }
    if let Some(t) = common.tolerance {
        cfg.tolerance = Some(t);
    }
    Ok(cfg)
}

fn emit(report: &Report, json: bool) -> ExitCode {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if report.all_ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { checks, common } => {
            let cfg = match build_config(&common) {
                Ok(c) => c,
                Err(e) => return usage_error(&format!("{e:#}")),
            };
            let ids: Vec<String> = if checks.is_empty() || checks.iter().any(|c| c == "all") {
                CHECK_IDS.iter().map(|s| s.to_string()).collect()
            } else {
                checks
            };
            match run_checks(&ids, &cfg) {
                Ok(report) => emit(&report, common.json),
                Err(unknown) => usage_error(&format!(
                    "unknown check `{unknown}`; available: {}",
                    CHECK_IDS.join(", ")
                )),
            }
        }
        Command::Anomaly {
            instanton,
            profile,
            alpha_prime,
            common,
        } => {
            let mut cfg = match build_config(&common) {
                Ok(c) => c,
                Err(e) => return usage_error(&format!("{e:#}")),
            };
            if let Some(ap) = alpha_prime {
                if let Err(e) = cfg.apply_pair("ap", &ap) {
                    return usage_error(&format!("{e:#}"));
                }
            }
            let instanton = match InstantonChoice::parse(&instanton) {
                Ok(i) => i,
                Err(e) => return usage_error(&e),
            };
            let profile = match ProfileChoice::parse(&profile) {
                Ok(p) => p,
                Err(e) => return usage_error(&e),
            };
            match run_anomaly(instanton, profile, &cfg) {
                Ok(result) => emit(&Report::new(vec![result]), common.json),
                Err(e) => usage_error(&e),
            }
        }
        Command::Classify { common } => {
            let cfg = match build_config(&common) {
                Ok(c) => c,
                Err(e) => return usage_error(&format!("{e:#}")),
            };
            match run_classify(&cfg) {
                Ok(result) => emit(&Report::new(vec![result]), common.json),
                Err(e) => usage_error(&e),
            }
        }
        Command::Wp { a_w, grid } => match wp_table(a_w, grid) {
            Ok(rows) => {
                println!("z,wp,wp_prime,residual");
                for (z, p, dp, r) in rows {
                    println!("{z:.12},{p:.12},{dp:.12},{r:.3e}");
                }
                ExitCode::SUCCESS
            }
            Err(e) => usage_error(&e),
        },
        Command::Contract { common } => {
            let cfg = match build_config(&common) {
                Ok(c) => c,
                Err(e) => return usage_error(&format!("{e:#}")),
            };
            match run_checks(&["contraction".to_string()], &cfg) {
                Ok(report) => emit(&report, common.json),
                Err(e) => usage_error(&e),
            }
        }
    }
}
