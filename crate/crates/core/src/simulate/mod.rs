//! Monte Carlo verification of the moment, martingale, reversed-martingale
//! and harness claims on sampled paths.
//!
//! Paths come from the compound decomposition of a discrete Kolmogorov
//! measure: X_t = c_1 t + sigma W_t + sum_i (y_i N_i(t) - (w_i / y_i) t)
//! with sigma^2 the mass at zero and each atom (y, w) driving a compensated
//! Poisson stream of rate w / y^2. Generation is embarrassingly parallel
//! over paths with per-path counter seeding, so an ensemble is a pure
//! function of (measure, times, path count, seed) whatever the thread count.
//!
//! The binned conditional checks all reduce to statistics with exact zero
//! mean under the theorem being tested, so no binning bias enters: each
//! report aggregates per-bin z-scores with sqrt(count) weights.

pub mod rng;

use rayon::prelude::*;
use serde::Serialize;

use crate::cumulant::{CumulantSpec, KolmogorovMeasure};
use crate::error::{Error, Result};
use crate::moments::MomentTable;
use crate::rational::{binomial_r, Rational};
use rng::PathRng;

/// Seeded sample of process values at fixed times.
#[derive(Clone, Debug)]
pub struct PathEnsemble {
    pub measure: KolmogorovMeasure,
    pub times: Vec<f64>,
    pub seed: u64,
    n_paths: usize,
    /// Row-major (path, time) values.
    values: Vec<f64>,
}

/// Draw `n_paths` independent paths at the given sorted positive times.
pub fn simulate_paths(
    measure: &KolmogorovMeasure,
    times: &[f64],
    n_paths: usize,
    seed: u64,
) -> Result<PathEnsemble> {
    if times.is_empty() {
        return Err(Error::InvalidArgument("no observation times".into()));
    }
    if times[0] <= 0.0 || times.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "times must be strictly increasing and positive".into(),
        ));
    }
    if n_paths == 0 {
        return Err(Error::InvalidArgument("need at least one path".into()));
    }
    let c1 = measure.c1.to_f64();
    let sigma = measure.sigma2.to_f64().sqrt();
    let atoms: Vec<(f64, f64, f64)> = measure
        .atoms
        .iter()
        .map(|a| {
            let y = a.y.to_f64();
            let w = a.w.to_f64();
            (y, w / (y * y), w / y) // (jump size, rate, compensator slope)
        })
        .collect();
    let n_times = times.len();
    let mut values = vec![0.0f64; n_paths * n_times];
    values
        .par_chunks_mut(n_times)
        .enumerate()
        .for_each(|(path, row)| {
            let mut rng = PathRng::for_path(seed, path as u64);
            let mut x = 0.0f64;
            let mut prev = 0.0f64;
            for (slot, &t) in row.iter_mut().zip(times) {
                let dt = t - prev;
                x += c1 * dt;
                if sigma > 0.0 {
                    x += sigma * dt.sqrt() * rng.normal();
                }
                for &(y, rate, comp) in &atoms {
                    x += y * rng.poisson(rate * dt) as f64 - comp * dt;
                }
                *slot = x;
                prev = t;
            }
        });
    Ok(PathEnsemble {
        measure: measure.clone(),
        times: times.to_vec(),
        seed,
        n_paths,
        values,
    })
}

impl PathEnsemble {
    pub fn n_paths(&self) -> usize {
        self.n_paths
    }

    pub fn value(&self, path: usize, time_idx: usize) -> f64 {
        self.values[path * self.times.len() + time_idx]
    }

    /// All path values at one observation time.
    pub fn column(&self, time_idx: usize) -> Vec<f64> {
        (0..self.n_paths).map(|p| self.value(p, time_idx)).collect()
    }

    /// Index of an exact observation time.
    pub fn time_index(&self, t: f64) -> Result<usize> {
        self.times
            .iter()
            .position(|&x| x == t)
            .ok_or_else(|| Error::InvalidArgument(format!("{t} is not an ensemble time")))
    }
}

/// Outcome of one statistical check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    /// Too few populated bins to say anything.
    Inconclusive,
}

/// One statistic with its sampling band.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub statistic: String,
    pub estimate: f64,
    pub standard_error: f64,
    pub z_score: f64,
    pub pass: bool,
    pub outcome: Outcome,
    pub sample_size: usize,
    pub notes: Vec<String>,
}

/// Thresholds shared by the checks.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub z_threshold: f64,
    /// Bins with fewer samples are skipped.
    pub min_bin_count: usize,
    /// Fewer populated bins than this makes a binned check inconclusive.
    pub min_bins: usize,
    /// Sample-kurtosis level above which a heavy-tail warning is attached.
    pub kurtosis_warn: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            z_threshold: 4.0,
            min_bin_count: 16,
            min_bins: 3,
            kurtosis_warn: 100.0,
        }
    }
}

fn mean_and_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0).max(1.0);
    (mean, var.sqrt())
}

fn sample_kurtosis(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let m2 = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let m4 = xs.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
    if m2 == 0.0 {
        0.0
    } else {
        m4 / (m2 * m2)
    }
}

/// Compare a sample mean against an exact prediction.
fn mean_against_prediction(
    statistic: String,
    samples: &[f64],
    prediction: f64,
    cfg: &CheckConfig,
    notes: Vec<String>,
) -> CheckReport {
    let (mean, sd) = mean_and_sd(samples);
    let se = sd / (samples.len() as f64).sqrt();
    let z = if se == 0.0 {
        if mean == prediction {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (mean - prediction) / se
    };
    let pass = z.abs() <= cfg.z_threshold;
    CheckReport {
        statistic,
        estimate: mean,
        standard_error: se,
        z_score: z,
        pass,
        outcome: if pass { Outcome::Pass } else { Outcome::Fail },
        sample_size: samples.len(),
        notes,
    }
}

/// Sample mean of X_t^n against the exact moment polynomial at t.
pub fn empirical_moment_check(
    ensemble: &PathEnsemble,
    spec: &CumulantSpec,
    n: usize,
    t: f64,
    cfg: &CheckConfig,
) -> Result<CheckReport> {
    let col = ensemble.column(ensemble.time_index(t)?);
    let table = MomentTable::new(spec, n)?;
    let prediction = table.m_at(n, &Rational::from_f64_exact(t)?)?.to_f64();
    let samples: Vec<f64> = col.iter().map(|&x| x.powi(n as i32)).collect();
    let mut notes = Vec::new();
    let kurt = sample_kurtosis(&samples);
    if kurt > cfg.kurtosis_warn {
        notes.push(format!(
            "heavy tail: sample kurtosis of X_t^{n} is {kurt:.1}; the z band may be unstable"
        ));
    }
    notes.push(format!("prediction m_{n}({t}) = {prediction}"));
    Ok(mean_against_prediction(
        format!("E X_{t}^{n}"),
        &samples,
        prediction,
        cfg,
        notes,
    ))
}

// ---- Binned conditional checks ----

/// Bin assignment for a conditioning sample: exact values for discrete
/// samples, equal-count chunks otherwise.
fn assign_bins(cond: &[f64], bins: usize) -> Vec<Vec<usize>> {
    let mut distinct = cond.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() <= bins.max(2) {
        // Discrete law: one bin per exact value.
        return distinct
            .iter()
            .map(|v| {
                cond.iter()
                    .enumerate()
                    .filter(|(_, c)| *c == v)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
    }
    let mut order: Vec<usize> = (0..cond.len()).collect();
    order.sort_by(|&a, &b| cond[a].total_cmp(&cond[b]));
    let chunk = cond.len().div_ceil(bins);
    order.chunks(chunk).map(|c| c.to_vec()).collect()
}

/// Aggregate per-bin z-scores of a zero-mean-under-H0 statistic into one
/// weighted z-score. Per-bin prediction comes from `predict(bin indices)`.
fn binned_check(
    statistic: String,
    bin_sets: &[Vec<usize>],
    values: &[f64],
    predict: impl Fn(&[usize]) -> f64,
    cfg: &CheckConfig,
) -> CheckReport {
    let mut weighted = 0.0f64;
    let mut total = 0usize;
    let mut populated = 0usize;
    let mut worst: (f64, usize) = (0.0, 0);
    for set in bin_sets {
        if set.len() < cfg.min_bin_count {
            continue;
        }
        let sample: Vec<f64> = set.iter().map(|&i| values[i]).collect();
        let (mean, sd) = mean_and_sd(&sample);
        let prediction = predict(set);
        let se = sd / (sample.len() as f64).sqrt();
        let z_b = if se == 0.0 {
            if mean == prediction {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (mean - prediction) / se
        };
        if z_b.abs() > worst.0.abs() {
            worst = (z_b, set.len());
        }
        weighted += (set.len() as f64).sqrt() * z_b;
        total += set.len();
        populated += 1;
    }
    if populated < cfg.min_bins {
        return CheckReport {
            statistic,
            estimate: f64::NAN,
            standard_error: f64::NAN,
            z_score: f64::NAN,
            pass: false,
            outcome: Outcome::Inconclusive,
            sample_size: total,
            notes: vec![format!(
                "only {populated} populated bins (need {}); enlarge the sample or coarsen the bins",
                cfg.min_bins
            )],
        };
    }
    let z = weighted / (total as f64).sqrt();
    let pass = z.abs() <= cfg.z_threshold;
    CheckReport {
        statistic,
        estimate: z,
        standard_error: 1.0,
        z_score: z,
        pass,
        outcome: if pass { Outcome::Pass } else { Outcome::Fail },
        sample_size: total,
        notes: vec![format!(
            "{populated} bins; worst per-bin z = {:.2} on {} samples",
            worst.0, worst.1
        )],
    }
}

/// Generic conditional-mean-zero check: `diff` must have zero conditional
/// mean given the binning variable under the hypothesis being tested.
pub fn conditional_mean_zero_check(
    statistic: String,
    cond: &[f64],
    diff: &[f64],
    bins: usize,
    cfg: &CheckConfig,
) -> CheckReport {
    let bin_sets = assign_bins(cond, bins);
    binned_check(statistic, &bin_sets, diff, |_| 0.0, cfg)
}

/// Coefficients of x^j in M_n(x, tau) at a fixed time, evaluated exactly and
/// then converted once to f64.
pub fn martingale_coeffs(table: &MomentTable, n: usize, tau: f64) -> Result<Vec<f64>> {
    let tau_exact = Rational::from_f64_exact(tau)?;
    let mut coeffs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let v = table
            .negative_time(n - j)?
            .eval_all(&[("t", tau_exact.clone())])?;
        coeffs.push((&binomial_r(n, j) * &v).to_f64());
    }
    Ok(coeffs)
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Martingale check: D = M_n(X_t, t) - M_n(X_s, s) has zero conditional
/// mean given X_s; binned on X_s.
pub fn martingale_mc_check(
    ensemble: &PathEnsemble,
    spec: &CumulantSpec,
    n: usize,
    s: f64,
    t: f64,
    bins: usize,
    cfg: &CheckConfig,
) -> Result<CheckReport> {
    if s >= t {
        return Err(Error::InvalidArgument("need s < t".into()));
    }
    let si = ensemble.time_index(s)?;
    let ti = ensemble.time_index(t)?;
    let table = MomentTable::new(spec, n)?;
    let at_s = martingale_coeffs(&table, n, s)?;
    let at_t = martingale_coeffs(&table, n, t)?;
    let xs = ensemble.column(si);
    let xt = ensemble.column(ti);
    let diff: Vec<f64> = xs
        .iter()
        .zip(&xt)
        .map(|(&a, &b)| horner(&at_t, b) - horner(&at_s, a))
        .collect();
    Ok(conditional_mean_zero_check(
        format!("martingale M_{n}: E(M_{n}(X_{t},{t}) | X_{s}) - M_{n}(X_{s},{s})"),
        &xs,
        &diff,
        bins,
        cfg,
    ))
}

/// Reversed-martingale check: R = M_1(X_s,s)/s - M_1(X_t,t)/t has zero
/// conditional mean given X_t; binned on X_t (the future value).
pub fn reversed_mc_check(
    ensemble: &PathEnsemble,
    s: f64,
    t: f64,
    bins: usize,
    cfg: &CheckConfig,
) -> Result<CheckReport> {
    if s > t {
        return Err(Error::InvalidArgument("need s <= t".into()));
    }
    let c1 = ensemble.measure.c1.to_f64();
    let xs = ensemble.column(ensemble.time_index(s)?);
    let xt = ensemble.column(ensemble.time_index(t)?);
    let diff: Vec<f64> = xs
        .iter()
        .zip(&xt)
        .map(|(&a, &b)| (a - c1 * s) / s - (b - c1 * t) / t)
        .collect();
    Ok(conditional_mean_zero_check(
        format!("reversed martingale: E(M_1(X_{s},{s})/{s} | X_{t}) - M_1(X_{t},{t})/{t}"),
        &xt,
        &diff,
        bins,
        cfg,
    ))
}

/// Harness check: H = M_1(X_t,t) - [(u-t) M_1(X_s,s) + (t-s) M_1(X_u,u)]/(u-s)
/// has zero conditional mean given (X_s, X_u); binned jointly.
pub fn harness_mc_check(
    ensemble: &PathEnsemble,
    s: f64,
    t: f64,
    u: f64,
    bins: usize,
    cfg: &CheckConfig,
) -> Result<CheckReport> {
    if !(s < t && t < u) {
        return Err(Error::InvalidArgument("need s < t < u".into()));
    }
    let c1 = ensemble.measure.c1.to_f64();
    let xs = ensemble.column(ensemble.time_index(s)?);
    let xt = ensemble.column(ensemble.time_index(t)?);
    let xu = ensemble.column(ensemble.time_index(u)?);
    let wl = (u - t) / (u - s);
    let wr = (t - s) / (u - s);
    let m1 = |x: f64, tau: f64| x - c1 * tau;
    let diff: Vec<f64> = (0..xs.len())
        .map(|i| m1(xt[i], t) - (wl * m1(xs[i], s) + wr * m1(xu[i], u)))
        .collect();
    // Joint binning: quantile-bin each axis, then combine.
    let per_axis = (bins as f64).sqrt().floor().max(2.0) as usize;
    let left = assign_bins(&xs, per_axis);
    let right = assign_bins(&xu, per_axis);
    let mut key = vec![0usize; xs.len()];
    for (b, set) in left.iter().enumerate() {
        for &i in set {
            key[i] = b;
        }
    }
    let stride = left.len().max(1);
    for (b, set) in right.iter().enumerate() {
        for &i in set {
            key[i] += b * stride;
        }
    }
    let mut joint: Vec<Vec<usize>> = vec![Vec::new(); stride * right.len().max(1)];
    for (i, &k) in key.iter().enumerate() {
        joint[k].push(i);
    }
    Ok(binned_check(
        format!("harness: E(M_1(X_{t},{t}) | X_{s}, X_{u}) - interpolation"),
        &joint,
        &diff,
        |_| 0.0,
        cfg,
    ))
}

/// Compare binned conditional means of `values` against an exact conditional
/// law `oracle(v)` where v is the (discrete) conditioning value. Bins are
/// exact values, so this is only meaningful for integer-supported laws.
pub fn binned_oracle_check(
    statistic: String,
    cond: &[f64],
    values: &[f64],
    oracle: impl Fn(f64) -> f64,
    cfg: &CheckConfig,
) -> CheckReport {
    let mut distinct = cond.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    let bin_sets: Vec<Vec<usize>> = distinct
        .iter()
        .map(|v| {
            cond.iter()
                .enumerate()
                .filter(|(_, c)| *c == v)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    binned_check(
        statistic,
        &bin_sets,
        values,
        |set| oracle(cond[set[0]]),
        cfg,
    )
}

/// Unbiased k-statistics of a sample (orders 1..=4).
fn k_statistics(xs: &[f64]) -> [f64; 4] {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let m2 = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let m3 = xs.iter().map(|x| (x - mean).powi(3)).sum::<f64>() / n;
    let m4 = xs.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
    let k2 = n / (n - 1.0) * m2;
    let k3 = n * n / ((n - 1.0) * (n - 2.0)) * m3;
    let k4 =
        n * n * ((n + 1.0) * m4 - 3.0 * (n - 1.0) * m2 * m2) / ((n - 1.0) * (n - 2.0) * (n - 3.0));
    [mean, k2, k3, k4]
}

/// Empirical cumulants of X_t (k-statistics through order 4) against the
/// exact values c_r t. Standard errors come from batch spread.
pub fn empirical_cumulant_checks(
    ensemble: &PathEnsemble,
    spec: &CumulantSpec,
    t: f64,
    batches: usize,
    cfg: &CheckConfig,
) -> Result<Vec<CheckReport>> {
    let col = ensemble.column(ensemble.time_index(t)?);
    let batches = batches.clamp(2, col.len() / 8);
    let chunk = col.len().div_ceil(batches);
    let per_batch: Vec<[f64; 4]> = col.chunks(chunk).map(k_statistics).collect();
    let mut out = Vec::with_capacity(4);
    for r in 0..4 {
        let series: Vec<f64> = per_batch.iter().map(|k| k[r]).collect();
        let (mean, sd) = mean_and_sd(&series);
        let se = sd / (series.len() as f64).sqrt();
        let prediction = (spec.c(r + 1)? * &Rational::from_f64_exact(t)?).to_f64();
        let z = if se == 0.0 {
            if mean == prediction {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (mean - prediction) / se
        };
        let pass = z.abs() <= cfg.z_threshold;
        out.push(CheckReport {
            statistic: format!("cumulant k_{} of X_{t}", r + 1),
            estimate: mean,
            standard_error: se,
            z_score: z,
            pass,
            outcome: if pass { Outcome::Pass } else { Outcome::Fail },
            sample_size: col.len(),
            notes: vec![format!(
                "prediction c_{} * t = {prediction}; {} batches",
                r + 1,
                series.len()
            )],
        });
    }
    Ok(out)
}
