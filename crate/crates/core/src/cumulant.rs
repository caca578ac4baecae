//! Process specification: cumulant sequences and Kolmogorov measures.
//!
//! A process is given either by its cumulants c_1..c_N (the coefficients of
//! f(x) = sum c_k x^k / k! in E exp(xX_t) = exp(t f(x))) or by a discrete
//! Kolmogorov measure: Gaussian mass `sigma2` at 0, finitely many weighted
//! atoms, and a drift c_1. The two are linked by c_i = integral of y^{i-2}
//! against the measure (i >= 2).
//!
//! Cumulant sequences that come from no measure are still accepted by the
//! constructors (the exact identities downstream are formal) but
//! `validate` flags them and the simulator refuses them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Finite cumulant sequence c_1..c_N. N is the hard truncation order:
/// operations needing higher cumulants fail loudly instead of assuming zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CumulantSpec {
    c: Vec<Rational>,
}

impl CumulantSpec {
    /// Build from c_1..c_N. Requires N >= 2 and c_2 >= 0.
    pub fn new(c: Vec<Rational>) -> Result<Self> {
        if c.len() < 2 {
            return Err(Error::InvalidArgument(
                "cumulant sequence needs at least c_1 and c_2".into(),
            ));
        }
        if c[1].is_negative() {
            return Err(Error::InvalidArgument(
                "variance rate c_2 must be nonnegative".into(),
            ));
        }
        Ok(CumulantSpec { c })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(c: &[i64]) -> Result<Self> {
        CumulantSpec::new(c.iter().map(|&n| Rational::from_int(n)).collect())
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.c.len()
    }

    /// c_i for 1 <= i <= N; anything else is a truncation error.
    pub fn c(&self, i: usize) -> Result<&Rational> {
        if i == 0 {
            return Err(Error::InvalidArgument("cumulants are 1-indexed".into()));
        }
        self.c.get(i - 1).ok_or_else(|| {
            Error::Truncation(format!(
                "c_{i} requested but the spec is truncated at order {}",
                self.c.len()
            ))
        })
    }

    /// All cumulants in order c_1..c_N.
    pub fn all(&self) -> &[Rational] {
        &self.c
    }

    /// Same sequence with the drift c_1 replaced.
    pub fn with_c1(&self, c1: Rational) -> CumulantSpec {
        let mut c = self.c.clone();
        c[0] = c1;
        CumulantSpec { c }
    }

    /// Entrywise sum of two sequences (the cumulants of an independent sum).
    /// Both specs must have the same order.
    pub fn sum(&self, other: &CumulantSpec) -> Result<CumulantSpec> {
        if self.order() != other.order() {
            return Err(Error::InvalidArgument(
                "cumulant sequences of different orders".into(),
            ));
        }
        CumulantSpec::new(self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect())
    }

    /// The sequence (c_1 a, c_2 a^2, ..., c_N a^N) of the scaled process aX.
    pub fn scaled(&self, a: &Rational) -> Result<CumulantSpec> {
        let mut c = Vec::with_capacity(self.c.len());
        let mut pw = Rational::one();
        for ci in &self.c {
            pw = &pw * a;
            c.push(ci * &pw);
        }
        CumulantSpec::new(c)
    }
}

/// Discrete Kolmogorov measure: mass `sigma2` at 0 plus weighted atoms, with
/// drift `c1`. Total mass sigma2 + sum of weights equals c_2.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KolmogorovMeasure {
    pub c1: Rational,
    pub sigma2: Rational,
    pub atoms: Vec<Atom>,
}

/// One atom of the measure: nonzero location `y`, positive weight `w`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub y: Rational,
    pub w: Rational,
}

impl KolmogorovMeasure {
    pub fn new(c1: Rational, sigma2: Rational, atoms: Vec<Atom>) -> Result<Self> {
        if sigma2.is_negative() {
            return Err(Error::InvalidArgument("sigma2 must be >= 0".into()));
        }
        for a in &atoms {
            if a.y.is_zero() {
                return Err(Error::InvalidArgument(
                    "atom locations must be nonzero (mass at 0 is sigma2)".into(),
                ));
            }
            if !a.w.is_positive() {
                return Err(Error::InvalidArgument("atom weights must be > 0".into()));
            }
        }
        for (i, a) in atoms.iter().enumerate() {
            for b in &atoms[i + 1..] {
                if a.y == b.y {
                    return Err(Error::InvalidArgument(format!(
                        "duplicate atom location {}",
                        a.y
                    )));
                }
            }
        }
        Ok(KolmogorovMeasure { c1, sigma2, atoms })
    }

    /// Total mass sigma2 + sum w_i (this is c_2 of the induced spec).
    pub fn total_mass(&self) -> Rational {
        let mut m = self.sigma2.clone();
        for a in &self.atoms {
            m += &a.w;
        }
        m
    }
}

/// Cumulants induced by a measure: c_1 = drift and, for 2 <= i <= order,
/// c_i = sigma2*[i=2] + sum_j w_j y_j^{i-2}.
pub fn cumulants_from_measure(m: &KolmogorovMeasure, order: usize) -> Result<CumulantSpec> {
    if order < 2 {
        return Err(Error::InvalidArgument(
            "cumulant order must be at least 2".into(),
        ));
    }
    let mut c = Vec::with_capacity(order);
    c.push(m.c1.clone());
    for i in 2..=order {
        let mut ci = if i == 2 {
            m.sigma2.clone()
        } else {
            Rational::zero()
        };
        for a in &m.atoms {
            ci += &(&a.w * &a.y.pow((i - 2) as i32).expect("nonnegative power"));
        }
        c.push(ci);
    }
    CumulantSpec::new(c)
}

/// Hankel verdict for the moment sequence of the would-be measure dK.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HankelVerdict {
    /// All leading principal minors strictly positive.
    PositiveDefinite,
    /// Positive semidefinite with a rank collapse that stays consistent with
    /// a finitely supported measure (the Poisson and Gaussian cases live here).
    Degenerate,
    /// Not the moment sequence of any measure.
    Invalid,
}

/// Findings of `validate`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Diagnostics {
    pub hankel_verdict: HankelVerdict,
    pub jensen_chain_ok: bool,
    /// c_4/c_2 - (c_3/c_2)^2, the variance of dK/c_2. Present when N >= 4
    /// and c_2 > 0.
    pub variance_gap: Option<Rational>,
    /// Partial sum of the Carleman series sum c_{2n}^{-1/2n}. A heuristic
    /// only: divergence is undecidable from finitely many terms.
    pub carleman_partial_sum: f64,
    pub notes: Vec<String>,
}

/// Validate a cumulant sequence against the necessary conditions for coming
/// from a Kolmogorov measure. All findings are data; nothing here errors.
pub fn validate_cumulants(spec: &CumulantSpec) -> Diagnostics {
    let n = spec.order();
    let mut notes = Vec::new();

    // Moments of dK: mu_j = c_{j+2}, j = 0..n-2.
    let mu: Vec<Rational> = (2..=n).map(|i| spec.c(i).unwrap().clone()).collect();

    let hankel_verdict = hankel_verdict(&mu, &mut notes);

    let jensen_chain_ok = jensen_chain(spec, &mut notes);

    let variance_gap = if n >= 4 && spec.c(2).unwrap().is_positive() {
        let c2 = spec.c(2).unwrap();
        let c3 = spec.c(3).unwrap();
        let c4 = spec.c(4).unwrap();
        let gap = &(c4 / c2) - &(&(c3 / c2) * &(c3 / c2));
        if gap.is_negative() && hankel_verdict != HankelVerdict::Invalid {
            notes.push("variance gap negative yet Hankel not invalid (bug)".into());
        }
        Some(gap)
    } else {
        if n < 4 {
            notes.push("variance-gap check skipped: needs c_4".into());
        }
        None
    };

    let carleman_partial_sum = carleman_partial(spec, &mut notes);

    Diagnostics {
        hankel_verdict,
        jensen_chain_ok,
        variance_gap,
        carleman_partial_sum,
        notes,
    }
}

/// Exact symmetric elimination on the Hankel matrix H[i][j] = mu_{i+j},
/// plus the rank-collapse consistency check across the whole sequence.
#[allow(clippy::needless_range_loop)] // simultaneous row/column indexing
fn hankel_verdict(mu: &[Rational], notes: &mut Vec<String>) -> HankelVerdict {
    if mu.is_empty() {
        notes.push("no dK moments available".into());
        return HankelVerdict::Degenerate;
    }
    // Largest k with every H entry mu_{i+j} (i, j < k) available: 2k-2 <= len-1.
    let k = mu.len().div_ceil(2);
    let mut h: Vec<Vec<Rational>> = (0..k)
        .map(|i| (0..k).map(|j| mu[i + j].clone()).collect())
        .collect();

    // Symmetric Gaussian elimination; pivots are the ratios of successive
    // leading principal minors, so their signs decide Sylvester's criterion.
    let mut rank = k;
    let mut collapsed = false;
    for p in 0..k {
        let pivot = h[p][p].clone();
        if pivot.is_positive() {
            if collapsed {
                notes.push(format!(
                    "Hankel rank recovers after collapse at step {p}: not a measure"
                ));
                return HankelVerdict::Invalid;
            }
            for i in (p + 1)..k {
                let factor = &h[i][p] / &pivot;
                for j in p..k {
                    let delta = &factor * &h[p][j];
                    let v = &h[i][j] - &delta;
                    h[i][j] = v;
                }
            }
        } else if pivot.is_zero() {
            if h[p].iter().skip(p + 1).any(|v| !v.is_zero()) {
                notes.push(format!("zero Hankel pivot with nonzero row at step {p}"));
                return HankelVerdict::Invalid;
            }
            if !collapsed {
                collapsed = true;
                rank = p;
            }
        } else {
            notes.push(format!("negative Hankel pivot at step {p}"));
            return HankelVerdict::Invalid;
        }
    }

    if !collapsed {
        return HankelVerdict::PositiveDefinite;
    }

    // Rank collapsed at `rank`: any measure behind the sequence has exactly
    // `rank` atoms, so the linear recurrence pinned by the first `rank`
    // columns must reproduce every later moment, including the odd tail.
    if rank == 0 {
        return if mu.iter().all(Rational::is_zero) {
            notes.push("dK = 0: deterministic drift process".into());
            HankelVerdict::Degenerate
        } else {
            notes.push("mu_0 = 0 with nonzero later moments".into());
            HankelVerdict::Invalid
        };
    }
    match recurrence_coeffs(mu, rank) {
        Some(a) => {
            for j in 0..(mu.len() - rank) {
                let mut pred = Rational::zero();
                for (i, ai) in a.iter().enumerate() {
                    pred += &(ai * &mu[i + j]);
                }
                if pred != mu[rank + j] {
                    notes.push(format!(
                        "moment mu_{} breaks the rank-{rank} recurrence",
                        rank + j
                    ));
                    return HankelVerdict::Invalid;
                }
            }
            HankelVerdict::Degenerate
        }
        None => {
            notes.push("rank-collapse recurrence not solvable (bug)".into());
            HankelVerdict::Invalid
        }
    }
}

/// Solve H_r a = (mu_r, ..., mu_{2r-1}) exactly (H_r is invertible because
/// the first r pivots were positive).
#[allow(clippy::needless_range_loop)]
fn recurrence_coeffs(mu: &[Rational], r: usize) -> Option<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = (0..r)
        .map(|i| {
            let mut row: Vec<Rational> = (0..r).map(|j| mu[i + j].clone()).collect();
            row.push(mu[r + i].clone());
            row
        })
        .collect();
    for p in 0..r {
        let pivot_row = (p..r).find(|&i| !m[i][p].is_zero())?;
        m.swap(p, pivot_row);
        let pivot = m[p][p].clone();
        for i in 0..r {
            if i == p || m[i][p].is_zero() {
                continue;
            }
            let factor = &m[i][p] / &pivot;
            for j in p..=r {
                let delta = &factor * &m[p][j];
                let v = &m[i][j] - &delta;
                m[i][j] = v;
            }
        }
    }
    Some((0..r).map(|i| &m[i][r] / &m[i][i]).collect())
}

/// (c_{2k+2}/c_2)^{1/2k} must be nondecreasing in k; compared exactly by
/// cross-raising both sides to the common power.
fn jensen_chain(spec: &CumulantSpec, notes: &mut Vec<String>) -> bool {
    let n = spec.order();
    let c2 = spec.c(2).unwrap();
    if c2.is_zero() {
        return true;
    }
    let mut ratios = Vec::new();
    let mut k = 1;
    while 2 * k + 2 <= n {
        let r = spec.c(2 * k + 2).unwrap() / c2;
        if r.is_negative() {
            notes.push(format!("even cumulant c_{} is negative", 2 * k + 2));
            return false;
        }
        ratios.push(r);
        k += 1;
    }
    for k in 1..ratios.len() {
        // rho_k^{1/2k} <= rho_{k+1}^{1/(2k+2)}  <=>  rho_k^{2k+2} <= rho_{k+1}^{2k}
        let lhs = ratios[k - 1].pow((2 * k + 2) as i32).unwrap();
        let rhs = ratios[k].pow((2 * k) as i32).unwrap();
        if lhs > rhs {
            notes.push(format!(
                "Jensen chain fails between orders {} and {}",
                2 * k + 2,
                2 * k + 4
            ));
            return false;
        }
    }
    true
}

fn carleman_partial(spec: &CumulantSpec, notes: &mut Vec<String>) -> f64 {
    notes.push("Carleman partial sum is a heuristic only: divergence is undecidable from finitely many terms".into());
    let n = spec.order();
    let mut sum = 0.0f64;
    let mut k = 1;
    while 2 * k <= n {
        let c = spec.c(2 * k).unwrap().to_f64();
        if c <= 0.0 {
            // A vanishing even cumulant makes the term infinite, so the
            // partial sum already diverges.
            return f64::INFINITY;
        }
        sum += c.powf(-1.0 / (2.0 * k as f64));
        k += 1;
    }
    sum
}

/// Measure classification per the variance-gap trichotomy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum MeasureClass {
    /// dK concentrated at 0: the process is a Wiener process (possibly with
    /// drift), or deterministic when c_2 = 0.
    Gaussian,
    /// dK concentrated at a single nonzero point: Poisson-Gaussian mixture.
    PoissonGaussianMixture { atom: Rational },
    /// Genuinely spread Kolmogorov measure.
    General,
}

/// Classify the measure behind a validated spec. Requires N >= 4; rejects
/// specs whose diagnostics come back invalid.
pub fn classify_measure(spec: &CumulantSpec) -> Result<MeasureClass> {
    if spec.order() < 4 {
        return Err(Error::Truncation(
            "classification needs cumulants through c_4".into(),
        ));
    }
    let diag = validate_cumulants(spec);
    if diag.hankel_verdict == HankelVerdict::Invalid {
        return Err(Error::RejectedSpec(format!(
            "cumulants are not the moments of any measure: {:?}",
            diag.notes
        )));
    }
    let c2 = spec.c(2).unwrap();
    if c2.is_zero() {
        return Ok(MeasureClass::Gaussian);
    }
    // A vanishing even cumulant c_{2k}, k >= 2, forces dK = c_2 delta_0.
    let mut k = 2;
    while 2 * k <= spec.order() {
        if spec.c(2 * k).unwrap().is_zero() {
            return Ok(MeasureClass::Gaussian);
        }
        k += 1;
    }
    let gap = diag
        .variance_gap
        .clone()
        .expect("N >= 4 and c_2 > 0 imply the gap is present");
    if gap.is_zero() {
        let atom = spec.c(3).unwrap() / c2;
        if atom.is_zero() {
            Ok(MeasureClass::Gaussian)
        } else {
            Ok(MeasureClass::PoissonGaussianMixture { atom })
        }
    } else {
        Ok(MeasureClass::General)
    }
}

// ---- CLI configuration schema ----

/// Raw JSON config: exactly one of `cumulants` or the measure fields.
#[derive(Deserialize)]
struct RawConfig {
    cumulants: Option<Vec<Rational>>,
    c1: Option<Rational>,
    sigma2: Option<Rational>,
    atoms: Option<Vec<Atom>>,
}

/// Parsed process configuration: the spec, plus the measure when the config
/// was given in measure form.
#[derive(Clone, Debug)]
pub struct ProcessConfig {
    pub spec: CumulantSpec,
    pub measure: Option<KolmogorovMeasure>,
}

/// Parse the JSON config. The `order` is used to expand a measure-form
/// config into a cumulant sequence.
pub fn parse_config(json: &str, order: usize) -> Result<ProcessConfig> {
    let raw: RawConfig =
        serde_json::from_str(json).map_err(|e| Error::Config(format!("bad config JSON: {e}")))?;
    let measure_form = raw.c1.is_some() || raw.sigma2.is_some() || raw.atoms.is_some();
    match (raw.cumulants, measure_form) {
        (Some(_), true) => Err(Error::Config(
            "config must contain either \"cumulants\" or the measure fields, not both".into(),
        )),
        (None, false) => Err(Error::Config(
            "config must contain \"cumulants\" or {c1, sigma2, atoms}".into(),
        )),
        (Some(c), false) => Ok(ProcessConfig {
            spec: CumulantSpec::new(c)?,
            measure: None,
        }),
        (None, true) => {
            let measure = KolmogorovMeasure::new(
                raw.c1.unwrap_or_else(Rational::zero),
                raw.sigma2.unwrap_or_else(Rational::zero),
                raw.atoms.unwrap_or_default(),
            )?;
            let spec = cumulants_from_measure(&measure, order.max(2))?;
            Ok(ProcessConfig {
                spec,
                measure: Some(measure),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn poisson_measure() -> KolmogorovMeasure {
        KolmogorovMeasure::new(
            Rational::one(),
            Rational::zero(),
            vec![Atom {
                y: Rational::one(),
                w: Rational::one(),
            }],
        )
        .unwrap()
    }

    #[test]
    fn gaussian_measure_cumulants() {
        let m = KolmogorovMeasure::new(Rational::zero(), Rational::one(), vec![]).unwrap();
        let spec = cumulants_from_measure(&m, 6).unwrap();
        assert_eq!(
            spec.all(),
            CumulantSpec::from_ints(&[0, 1, 0, 0, 0, 0]).unwrap().all()
        );
    }

    #[test]
    fn poisson_measure_cumulants() {
        let spec = cumulants_from_measure(&poisson_measure(), 5).unwrap();
        assert_eq!(spec, CumulantSpec::from_ints(&[1, 1, 1, 1, 1]).unwrap());
        assert!(cumulants_from_measure(&poisson_measure(), 1).is_err());
    }

    #[test]
    fn two_atom_cumulants_are_powers() {
        let m = KolmogorovMeasure::new(
            Rational::zero(),
            Rational::zero(),
            vec![Atom {
                y: Rational::from_int(2),
                w: Rational::one(),
            }],
        )
        .unwrap();
        let spec = cumulants_from_measure(&m, 5).unwrap();
        assert_eq!(spec, CumulantSpec::from_ints(&[0, 1, 2, 4, 8]).unwrap());
    }

    #[test]
    fn poisson_is_degenerate_with_zero_gap() {
        let spec = CumulantSpec::from_ints(&[1, 1, 1, 1, 1]).unwrap();
        let d = validate_cumulants(&spec);
        assert_eq!(d.hankel_verdict, HankelVerdict::Degenerate);
        assert_eq!(d.variance_gap, Some(Rational::zero()));
        assert!(d.jensen_chain_ok);
    }

    #[test]
    fn gaussian_is_degenerate() {
        let spec = CumulantSpec::from_ints(&[0, 1, 0, 0, 0, 0]).unwrap();
        let d = validate_cumulants(&spec);
        assert_eq!(d.hankel_verdict, HankelVerdict::Degenerate);
        assert_eq!(d.variance_gap, Some(Rational::zero()));
    }

    #[test]
    fn spread_spec_is_positive_definite() {
        let spec = CumulantSpec::from_ints(&[0, 1, 0, 2, 0, 16]).unwrap();
        let d = validate_cumulants(&spec);
        assert_eq!(d.hankel_verdict, HankelVerdict::PositiveDefinite);
        assert_eq!(d.variance_gap, Some(Rational::from_int(2)));
    }

    #[test]
    fn broken_tail_is_invalid() {
        // Looks like delta_1 up to mu_3, then jumps: no measure does that.
        let spec = CumulantSpec::from_ints(&[0, 1, 1, 1, 1, 3]).unwrap();
        let d = validate_cumulants(&spec);
        assert_eq!(d.hankel_verdict, HankelVerdict::Invalid);
    }

    #[test]
    fn negative_variance_gap_is_invalid() {
        let spec = CumulantSpec::from_ints(&[0, 1, 2, 1]).unwrap();
        let d = validate_cumulants(&spec);
        assert_eq!(d.hankel_verdict, HankelVerdict::Invalid);
        assert!(classify_measure(&spec).is_err());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_measure(&CumulantSpec::from_ints(&[0, 1, 0, 0]).unwrap()).unwrap(),
            MeasureClass::Gaussian
        );
        assert_eq!(
            classify_measure(&CumulantSpec::from_ints(&[1, 1, 1, 1]).unwrap()).unwrap(),
            MeasureClass::PoissonGaussianMixture {
                atom: Rational::one()
            }
        );
        assert_eq!(
            classify_measure(&CumulantSpec::from_ints(&[0, 1, 1, 2]).unwrap()).unwrap(),
            MeasureClass::General
        );
    }

    #[test]
    fn round_trip_never_invalid() {
        let measures = vec![
            poisson_measure(),
            KolmogorovMeasure::new(rat(1, 2), rat(3, 2), vec![]).unwrap(),
            KolmogorovMeasure::new(
                Rational::zero(),
                rat(1, 3),
                vec![
                    Atom {
                        y: rat(-2, 1),
                        w: rat(1, 2),
                    },
                    Atom {
                        y: rat(1, 3),
                        w: rat(2, 1),
                    },
                ],
            )
            .unwrap(),
        ];
        for m in measures {
            for order in [4, 7, 10] {
                let spec = cumulants_from_measure(&m, order).unwrap();
                let d = validate_cumulants(&spec);
                assert_ne!(
                    d.hankel_verdict,
                    HankelVerdict::Invalid,
                    "{m:?} order {order}"
                );
                // Prop dK iii exactly: c_4 c_2 - c_3^2 >= 0.
                let gap_num = &(spec.c(4).unwrap() * spec.c(2).unwrap())
                    - &(spec.c(3).unwrap() * spec.c(3).unwrap());
                assert!(!gap_num.is_negative());
            }
        }
    }

    #[test]
    fn single_atom_round_trip_classifies_as_mixture() {
        let m = KolmogorovMeasure::new(
            Rational::zero(),
            Rational::zero(),
            vec![Atom {
                y: rat(-3, 2),
                w: rat(2, 1),
            }],
        )
        .unwrap();
        let spec = cumulants_from_measure(&m, 6).unwrap();
        assert_eq!(
            classify_measure(&spec).unwrap(),
            MeasureClass::PoissonGaussianMixture { atom: rat(-3, 2) }
        );
    }

    #[test]
    fn config_forms_are_exclusive() {
        assert!(parse_config(r#"{"cumulants": ["1", "1"], "c1": "0"}"#, 4).is_err());
        assert!(parse_config(r#"{}"#, 4).is_err());
        let c = parse_config(r#"{"cumulants": ["1", "1", "1", "1"]}"#, 4).unwrap();
        assert_eq!(c.spec, CumulantSpec::from_ints(&[1, 1, 1, 1]).unwrap());
        assert!(c.measure.is_none());
        let m = parse_config(
            r#"{"c1": "1", "sigma2": "0", "atoms": [{"y": "1", "w": "1"}]}"#,
            5,
        )
        .unwrap();
        assert_eq!(m.spec, CumulantSpec::from_ints(&[1, 1, 1, 1, 1]).unwrap());
        assert!(m.measure.is_some());
    }
}
