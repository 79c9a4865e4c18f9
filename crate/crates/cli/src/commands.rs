//! The four subcommands. Each returns the process exit code on success and a
//! library error otherwise; `main` maps errors to exit codes.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

use ballproj::extremal::verify_theorem1;
use ballproj::geometry::{ball_from_json, simplex_from_json, SimplexJson};
use ballproj::optimizer::{minimize_norm, OptimizeConfig};
use ballproj::sampling::random_simplex_in_ball;
use ballproj::{norm_ball, norm_oracle, theta, Ball, Error, Result};

use crate::output::{fmt_sig, round_sig, RunManifest};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

const SCHEMA: u32 = 1;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn emit<T: Serialize>(doc: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(doc).expect("report serialization is infallible")
    );
}

pub fn run_table(max_n: usize, extra: &[usize], format: Format) -> Result<i32> {
    if max_n < 1 {
        return Err(Error::OutOfDomain {
            name: "max-n",
            value: max_n as f64,
            min: 1.0,
            max: f64::INFINITY,
        });
    }
    if let Some(&bad) = extra.iter().find(|&&n| n < 1) {
        return Err(Error::OutOfDomain {
            name: "extra",
            value: bad as f64,
            min: 1.0,
            max: f64::INFINITY,
        });
    }

    let mut parameters = BTreeMap::new();
    parameters.insert("max_n".to_string(), max_n.to_string());
    if !extra.is_empty() {
        let joined: Vec<String> = extra.iter().map(|n| n.to_string()).collect();
        parameters.insert("extra".to_string(), joined.join(","));
    }
    parameters.insert(
        "format".to_string(),
        match format {
            Format::Csv => "csv".to_string(),
            Format::Json => "json".to_string(),
        },
    );
    let manifest = RunManifest::new("table", 0, parameters);

    let rows: Vec<_> = (1..=max_n)
        .chain(extra.iter().copied())
        .map(theta)
        .collect();

    match format {
        Format::Csv => {
            // stdout stays pure CSV; the manifest goes to stderr
            eprintln!(
                "{}",
                serde_json::to_string(&manifest).expect("manifest serializes")
            );
            println!("n,a_n,psi_a,psi_a1,k_n,theta");
            for r in &rows {
                println!(
                    "{},{},{},{},{},{}",
                    r.n,
                    r.a_n,
                    fmt_sig(r.psi_at_a),
                    fmt_sig(r.psi_at_a_plus_1),
                    r.k_n,
                    fmt_sig(r.theta)
                );
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                n: usize,
                a_n: usize,
                psi_a: f64,
                psi_a1: f64,
                k_n: usize,
                theta: f64,
            }
            #[derive(Serialize)]
            struct Doc {
                schema: u32,
                manifest: RunManifest,
                rows: Vec<Row>,
            }
            emit(&Doc {
                schema: SCHEMA,
                manifest,
                rows: rows
                    .iter()
                    .map(|r| Row {
                        n: r.n,
                        a_n: r.a_n,
                        psi_a: round_sig(r.psi_at_a),
                        psi_a1: round_sig(r.psi_at_a_plus_1),
                        k_n: r.k_n,
                        theta: round_sig(r.theta),
                    })
                    .collect(),
            });
        }
    }
    Ok(0)
}

pub fn run_norm(
    simplex_path: &Path,
    ball_path: &Path,
    oracle: Option<usize>,
    seed: u64,
) -> Result<i32> {
    let simplex = simplex_from_json(&read(simplex_path)?)?;
    let ball = ball_from_json(&read(ball_path)?)?;
    let report = norm_ball(&simplex, &ball)?;

    #[derive(Serialize)]
    struct OracleOut {
        samples: usize,
        value: f64,
        /// exact norm minus sampled lower bound; nonnegative up to roundoff
        gap: f64,
    }
    #[derive(Serialize)]
    struct Doc {
        schema: u32,
        manifest: RunManifest,
        n: usize,
        norm: f64,
        signs: Vec<i8>,
        argmax_point: Vec<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        oracle: Option<OracleOut>,
    }

    let oracle_out = match oracle {
        Some(samples) => {
            let value = norm_oracle(&simplex, &ball, samples, seed)?;
            Some(OracleOut {
                samples,
                value: round_sig(value),
                gap: round_sig(report.norm - value),
            })
        }
        None => None,
    };

    let mut parameters = BTreeMap::new();
    parameters.insert("simplex".to_string(), simplex_path.display().to_string());
    parameters.insert("ball".to_string(), ball_path.display().to_string());
    if let Some(samples) = oracle {
        parameters.insert("oracle".to_string(), samples.to_string());
    }

    emit(&Doc {
        schema: SCHEMA,
        manifest: RunManifest::new("norm", seed, parameters),
        n: simplex.dim(),
        norm: round_sig(report.norm),
        signs: report.argmax_signs,
        argmax_point: report.argmax_point.coords().to_vec(),
        oracle: oracle_out,
    });
    Ok(0)
}

pub fn run_verify_t1(n: usize, trials: u64, m: &str, seed: u64) -> Result<i32> {
    if n < 1 {
        return Err(Error::OutOfDomain {
            name: "n",
            value: n as f64,
            min: 1.0,
            max: f64::INFINITY,
        });
    }
    if trials < 1 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    let ms: Vec<usize> = if m == "all" {
        (1..=n).collect()
    } else {
        let v: usize = m.trim().parse().map_err(|_| {
            Error::InvalidInput(format!("--m must be an integer or 'all', got {m:?}"))
        })?;
        if v < 1 || v > n {
            return Err(Error::OutOfDomain {
                name: "m",
                value: v as f64,
                min: 1.0,
                max: n as f64,
            });
        }
        vec![v]
    };

    let ball = Ball::unit(n);

    #[derive(Serialize)]
    struct TrialRow {
        trial: u64,
        m: usize,
        min_norm: f64,
        witness: Vec<usize>,
        residual: f64,
    }
    #[derive(Serialize)]
    struct Summary {
        result: &'static str,
        failures: u64,
        max_min_norm: f64,
        max_residual: f64,
    }
    #[derive(Serialize)]
    struct Doc {
        schema: u32,
        manifest: RunManifest,
        n: usize,
        trials: u64,
        m: String,
        rows: Vec<TrialRow>,
        summary: Summary,
    }

    let mut rows = Vec::with_capacity(trials as usize * ms.len());
    let mut failures = 0u64;
    let mut max_min_norm = f64::NEG_INFINITY;
    let mut max_residual = 0.0f64;
    for trial in 0..trials {
        let simplex = random_simplex_in_ball(&ball, seed, trial);
        for &m in &ms {
            let report = verify_theorem1(&simplex, &ball, m)?;
            let (mean, vertex_mean) = report.mean_square;
            let residual = (mean - vertex_mean).abs() / vertex_mean.max(f64::MIN_POSITIVE);
            if report.min_norm > ball.radius() + 1e-9 || residual > 1e-9 {
                failures += 1;
            }
            max_min_norm = max_min_norm.max(report.min_norm);
            max_residual = max_residual.max(residual);
            rows.push(TrialRow {
                trial,
                m,
                min_norm: round_sig(report.min_norm),
                witness: report.witness,
                residual: round_sig(residual),
            });
        }
    }

    let result = if failures == 0 { "PASS" } else { "FAIL" };
    let mut parameters = BTreeMap::new();
    parameters.insert("n".to_string(), n.to_string());
    parameters.insert("trials".to_string(), trials.to_string());
    parameters.insert("m".to_string(), m.to_string());

    emit(&Doc {
        schema: SCHEMA,
        manifest: RunManifest::new("verify-t1", seed, parameters),
        n,
        trials,
        m: m.to_string(),
        rows,
        summary: Summary {
            result,
            failures,
            max_min_norm: round_sig(max_min_norm),
            max_residual: round_sig(max_residual),
        },
    });
    eprintln!("{result}");
    Ok(if failures == 0 { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
pub fn run_optimize(
    n: usize,
    starts: usize,
    iters: usize,
    step: f64,
    shrink: f64,
    seed: u64,
) -> Result<i32> {
    let config = OptimizeConfig {
        n,
        starts,
        iters,
        initial_step: step,
        shrink,
        seed,
    };
    let result = minimize_norm(&config)?;

    #[derive(Serialize)]
    struct Doc {
        schema: u32,
        manifest: RunManifest,
        n: usize,
        theta: f64,
        best_norm: f64,
        theta_gap: f64,
        inscribed_deviation: f64,
        distance_spread: f64,
        trace: Vec<f64>,
        best_simplex: SimplexJson,
    }

    let mut parameters = BTreeMap::new();
    parameters.insert("n".to_string(), n.to_string());
    parameters.insert("starts".to_string(), starts.to_string());
    parameters.insert("iters".to_string(), iters.to_string());
    parameters.insert("step".to_string(), fmt_sig(step));
    parameters.insert("shrink".to_string(), fmt_sig(shrink));

    emit(&Doc {
        schema: SCHEMA,
        manifest: RunManifest::new("optimize", seed, parameters),
        n,
        theta: round_sig(theta(n).theta),
        best_norm: round_sig(result.best_norm),
        theta_gap: round_sig(result.theta_gap),
        inscribed_deviation: round_sig(result.inscribed_deviation),
        distance_spread: round_sig(result.distance_spread),
        trace: result.trace.iter().map(|&v| round_sig(v)).collect(),
        best_simplex: SimplexJson::from_simplex(&result.best_simplex),
    });
    Ok(0)
}
