//! One binary, many subcommands: every engine in the library behind a JSON
//! pipe. Standard output is always a single JSON document; diagnostics go to
//! standard error. Exit codes: 0 success, 2 invalid input or spec, 3 failed
//! identity/check or a confirmed formula discrepancy, 4 inconclusive
//! statistical check.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use levy_martingale::arbitration::arbitrate;
use levy_martingale::cumulant::{
    classify_measure, parse_config, validate_cumulants, ProcessConfig,
};
use levy_martingale::error::Error;
use levy_martingale::martingale::{cross_moment, MartingaleFamily};
use levy_martingale::moments::{
    check_additivity, check_convolution, check_differential, check_scaling,
    check_yablonski_representation, MomentTable,
};
use levy_martingale::orthogonal::{connection_coeffs, orthogonal_basis, orthogonality_witness};
use levy_martingale::rational::Rational;
use levy_martingale::reversed::{
    cumulant_closure, glowne_classify_with_drift, ode_series, reversed_feasibility, tangent_numbers,
};
use levy_martingale::simulate::{
    empirical_moment_check, harness_mc_check, martingale_mc_check, reversed_mc_check,
    simulate_paths, CheckConfig, Outcome,
};
use levy_martingale::Result;

const EXIT_OK: u8 = 0;
const EXIT_INVALID: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "levymart",
    about = "Exact polynomial martingales, moment identities and Monte Carlo checks for Lévy processes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArg {
    /// Path to the process config JSON: {"cumulants": ["p/q", ...]} or
    /// {"c1": "p/q", "sigma2": "p/q", "atoms": [{"y": "p/q", "w": "p/q"}]}.
    #[arg(long)]
    config: String,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the exact moment polynomials m_0..m_N.
    Moments {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Emit the martingale polynomials M_0..M_N.
    Martingale {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long, default_value_t = 8)]
        degree: usize,
    },
    /// Emit the cross moment E[M_n M_k](t) and its t-coefficients.
    Cross {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Orthogonal basis of the marginal at a rational time, with both
    /// connection triangles.
    Orthogonal {
        #[command(flatten)]
        config: ConfigArg,
        /// Orthogonalization time t0 as "p/q".
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Measure diagnostics plus the five-case classification.
    Classify {
        #[command(flatten)]
        config: ConfigArg,
    },
    /// Extend (c_2, c_3, c_4) to the cumulant sequence forced by the
    /// reversed-martingale condition; cross-checked against the ODE series.
    Closure {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// Tangent numbers T_1..T_count.
    Tangent {
        #[arg(long)]
        count: usize,
    },
    /// Can mu(t) M_k(X_t, t) be a reversed martingale?
    AnalyzeReversed {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        degree: usize,
    },
    /// Simulate paths and run one statistical check.
    Simulate {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long, default_value_t = 100_000)]
        paths: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Comma-separated observation times.
        #[arg(long, value_delimiter = ',', default_values_t = [1.0, 2.0, 4.0])]
        times: Vec<f64>,
        /// Which claim to test: moments | martingale | reversed | harness.
        #[arg(long)]
        check: String,
        /// Moment order or martingale degree.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        bins: usize,
        #[arg(long, default_value_t = 4.0)]
        z_threshold: f64,
    },
    /// Run the exact identity suites; --arbitrate also settles the printed
    /// formula conflicts (exit 3 when a printed form is confirmed wrong).
    CheckIdentities {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, default_value_t = false)]
        arbitrate: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((value, code)) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("serializable output")
            );
            ExitCode::from(code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::Internal(_) => EXIT_CHECK_FAILED,
                _ => EXIT_INVALID,
            };
            ExitCode::from(code)
        }
    }
}

fn load_config(path: &str, order: usize) -> Result<ProcessConfig> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read config {path}: {e}")))?;
    parse_config(&text, order)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn run(command: Command) -> Result<(Value, u8)> {
    match command {
        Command::Moments { config, order } => {
            let cfg = load_config(&config.config, order)?;
            let table = MomentTable::new(&cfg.spec, order)?;
            let records: Vec<Value> = (0..=order)
                .map(|n| Ok(json!({"n": n, "poly": to_value(table.m(n)?)})))
                .collect::<Result<_>>()?;
            Ok((Value::Array(records), EXIT_OK))
        }
        Command::Martingale { config, degree } => {
            let cfg = load_config(&config.config, degree)?;
            let family = MartingaleFamily::new(&cfg.spec, degree)?;
            let records: Vec<Value> = (0..=degree)
                .map(|n| Ok(json!({"n": n, "poly": to_value(family.poly(n)?)})))
                .collect::<Result<_>>()?;
            Ok((Value::Array(records), EXIT_OK))
        }
        Command::Cross { config, n, k } => {
            let cfg = load_config(&config.config, n + k)?;
            let cm = cross_moment(&cfg.spec, n, k)?;
            Ok((to_value(&cm), EXIT_OK))
        }
        Command::Orthogonal {
            config,
            t,
            max_degree,
        } => {
            let cfg = load_config(&config.config, 2 * max_degree)?;
            let t0 = Rational::parse(&t)?;
            let basis = orthogonal_basis(&cfg.spec, &t0, max_degree)?;
            let witness = orthogonality_witness(&cfg.spec, max_degree.min(cfg.spec.order() / 2))?;
            if basis.degeneracy.is_some() {
                return Ok((
                    json!({"basis": to_value(&basis), "witness": to_value(&witness)}),
                    EXIT_OK,
                ));
            }
            let cc = connection_coeffs(&cfg.spec, &t0, max_degree)?;
            let code = if cc.findings.is_empty() {
                EXIT_OK
            } else {
                eprintln!(
                    "displayed coefficient formulas disagreed: {:?}",
                    cc.findings
                );
                EXIT_CHECK_FAILED
            };
            Ok((
                json!({
                    "basis": to_value(&basis),
                    "connection": to_value(&cc),
                    "witness": to_value(&witness),
                }),
                code,
            ))
        }
        Command::Classify { config } => {
            let cfg = load_config(&config.config, 4)?;
            let spec = &cfg.spec;
            let diag = validate_cumulants(spec);
            let class = classify_measure(spec)?;
            let case = glowne_classify_with_drift(spec.c(1)?, spec.c(2)?, spec.c(3)?, spec.c(4)?)?;
            let mut out = json!({
                "case": case.case_id,
                "measure_class": to_value(&class),
                "glowne": to_value(&case),
                "diagnostics": to_value(&diag),
            });
            if let levy_martingale::cumulant::MeasureClass::PoissonGaussianMixture { atom } = &class
            {
                out["atom"] = to_value(atom);
            }
            Ok((out, EXIT_OK))
        }
        Command::Closure { config, order } => {
            let cfg = load_config(&config.config, 4)?;
            let spec = &cfg.spec;
            let closed = cumulant_closure(spec.c(2)?, spec.c(3)?, spec.c(4)?, order)?;
            let via_ode = ode_series(spec.c(2)?, spec.c(3)?, spec.c(4)?, order)?;
            if closed != via_ode {
                return Err(Error::Internal(
                    "closure recursion and ODE series disagree".into(),
                ));
            }
            Ok((
                json!({"cumulants": to_value(&closed.all()), "ode_agrees": true}),
                EXIT_OK,
            ))
        }
        Command::Tangent { count } => {
            let table = tangent_numbers(count)?;
            // Values through T_12 fit u64 exactly and are emitted as JSON
            // numbers; longer tables switch to decimal strings wholesale.
            let fits: Option<Vec<u64>> = table
                .values()
                .iter()
                .map(|v| u64::try_from(v.clone()).ok())
                .collect();
            let out = match fits {
                Some(nums) => to_value(&nums),
                None => to_value(&table.as_strings()),
            };
            Ok((out, EXIT_OK))
        }
        Command::AnalyzeReversed { config, degree } => {
            let cfg = load_config(&config.config, 2 * degree)?;
            let verdict = reversed_feasibility(&cfg.spec, degree)?;
            Ok((to_value(&verdict), EXIT_OK))
        }
        Command::Simulate {
            config,
            paths,
            seed,
            times,
            check,
            n,
            bins,
            z_threshold,
        } => {
            let cfg = load_config(&config.config, (2 * n).max(4))?;
            let Some(measure) = cfg.measure else {
                return Err(Error::RejectedSpec(
                    "the simulator needs the measure form of the config (c1/sigma2/atoms); a bare cumulant list names no sampling law".into(),
                ));
            };
            let check_cfg = CheckConfig {
                z_threshold,
                ..CheckConfig::default()
            };
            let ensemble = simulate_paths(&measure, &times, paths, seed)?;
            let report = match check.as_str() {
                "moments" => {
                    let t = *times.last().expect("nonempty times");
                    empirical_moment_check(&ensemble, &cfg.spec, n, t, &check_cfg)?
                }
                "martingale" => {
                    if times.len() < 2 {
                        return Err(Error::InvalidArgument(
                            "martingale check needs two times".into(),
                        ));
                    }
                    martingale_mc_check(
                        &ensemble, &cfg.spec, n, times[0], times[1], bins, &check_cfg,
                    )?
                }
                "reversed" => {
                    if times.len() < 2 {
                        return Err(Error::InvalidArgument(
                            "reversed check needs two times".into(),
                        ));
                    }
                    reversed_mc_check(&ensemble, times[0], times[1], bins, &check_cfg)?
                }
                "harness" => {
                    if times.len() < 3 {
                        return Err(Error::InvalidArgument(
                            "harness check needs three times".into(),
                        ));
                    }
                    harness_mc_check(&ensemble, times[0], times[1], times[2], bins, &check_cfg)?
                }
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown check {other:?}; use moments|martingale|reversed|harness"
                    )))
                }
            };
            let code = match report.outcome {
                Outcome::Pass => EXIT_OK,
                Outcome::Fail => EXIT_CHECK_FAILED,
                Outcome::Inconclusive => EXIT_INCONCLUSIVE,
            };
            Ok((to_value(&report), code))
        }
        Command::CheckIdentities {
            config,
            order,
            arbitrate: run_arbitration,
        } => {
            let cfg = load_config(&config.config, order)?;
            let spec = &cfg.spec;
            let table = MomentTable::new(spec, order)?;
            let family = MartingaleFamily::new(spec, order)?;

            let mut suites = vec![
                to_value(&check_convolution(&table)?),
                to_value(&check_differential(&table)?),
                to_value(&check_yablonski_representation(&table)?),
                to_value(&check_additivity(spec, spec, order)?),
                to_value(&check_scaling(spec, &Rational::from_int(2), order)?),
            ];
            // Martingale identity (conditional expectation back to time s)
            // and vanishing expectations, reported in the same shape.
            let mut mart_failures = Vec::new();
            for nn in 0..=order {
                let ce = family.conditional_expectation(family.poly(nn)?)?;
                let at_s = family
                    .poly(nn)?
                    .rename_var("t", "s")?
                    .lift(&["s", "t", "x"])?;
                if ce != at_s {
                    mart_failures.push(nn);
                }
                if nn >= 1 && !family.expectation_poly(nn)?.is_zero() {
                    mart_failures.push(nn);
                }
            }
            suites.push(json!({
                "name": "martingale-identity",
                "checked_through": order,
                "pass": mart_failures.is_empty(),
                "failures": mart_failures,
            }));

            let all_pass = suites
                .iter()
                .all(|s| s.get("pass").and_then(Value::as_bool).unwrap_or(false));
            let mut out = json!({"identities": suites, "pass": all_pass});
            let mut code = if all_pass { EXIT_OK } else { EXIT_CHECK_FAILED };
            if run_arbitration {
                let report = arbitrate()?;
                if report.any_printed_form_fails {
                    eprintln!(
                        "arbitration confirmed printed-formula discrepancies ({} findings)",
                        report
                            .findings
                            .iter()
                            .filter(|f| !f.printed_form_holds)
                            .count()
                    );
                    code = EXIT_CHECK_FAILED;
                }
                out["arbitrations"] = to_value(&report);
            }
            Ok((out, code))
        }
    }
}
