//! Reversed-martingale analysis: feasibility of mu(t) M_k being a reversed
//! martingale, the mu-functions and five-case classification of the n = 2
//! linear-combination problem, the forced cumulant extension, and the
//! tangent numbers that appear in the symmetric case.
//!
//! The ground truth for the degree-2 analysis is a pair of mutually
//! verifying routes: the cumulant recursion
//! chi_{l+2} = chi_3 chi_{l+1} + (v/2) sum_k C(l,k) chi_{k+1} chi_{l+1-k}
//! and the power-series solution of psi'' - chi_3 psi' - v psi' psi = 0 with
//! psi(0) = 0, psi'(0) = 1. The printed closed-form displays are evaluated
//! against that ground truth and any mismatch is surfaced as data, never
//! patched over.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cumulant::CumulantSpec;
use crate::error::{Error, Result};
use crate::martingale::cross_moment;
use crate::poly::MultiPoly;
use crate::rational::{binomial, binomial_r, factorial_r, Rational};

// ---- Rational functions of t ----

/// Quotient of two polynomials in t, kept as an exact pair.
#[derive(Clone, Debug, Serialize)]
pub struct RationalFunction {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DegenerateSpec(
                "rational function with identically zero denominator".into(),
            ));
        }
        Ok(RationalFunction { num, den })
    }

    /// Constant as a function of t? Decided exactly by the Wronskian
    /// num' den - num den' being the zero polynomial.
    pub fn is_constant(&self) -> Result<bool> {
        let w =
            &(&self.num.derivative("t")? * &self.den) - &(&self.num * &self.den.derivative("t")?);
        Ok(w.is_zero())
    }

    /// The constant value, when `is_constant` holds.
    pub fn constant_value(&self) -> Result<Option<Rational>> {
        if !self.is_constant()? {
            return Ok(None);
        }
        // Any non-root of the denominator determines the constant.
        for t in 1..=(self.den.degree_in("t")? as i64 + 1) {
            let d = self.den.eval_all(&[("t", Rational::from_int(t))])?;
            if !d.is_zero() {
                let n = self.num.eval_all(&[("t", Rational::from_int(t))])?;
                return Ok(Some(&n / &d));
            }
        }
        Err(Error::Internal(
            "denominator vanished at every probe".into(),
        ))
    }

    pub fn eval(&self, t: &Rational) -> Result<Option<Rational>> {
        let d = self.den.eval_all(&[("t", t.clone())])?;
        if d.is_zero() {
            return Ok(None);
        }
        Ok(Some(&self.num.eval_all(&[("t", t.clone())])? / &d))
    }
}

// ---- Feasibility of mu(t) M_k as a reversed martingale ----

/// Verdict for a single martingale index k.
#[derive(Clone, Debug, Serialize)]
pub struct ReversedVerdict {
    pub k: usize,
    pub feasible: bool,
    /// mu(t) = 1 / E[M_k^2](t) when feasible.
    pub mu: Option<RationalFunction>,
    /// Cumulant indices that the reversed-martingale property forces to zero.
    pub forced_zero_cumulants: Vec<usize>,
    /// First forced index whose cumulant is nonzero, when infeasible.
    pub witness: Option<usize>,
}

/// Decide whether some deterministic mu(t) makes mu(t) M_k(X_t, t) a
/// reversed martingale.
///
/// mu is pinned to 1/E[M_k^2](t); for l < k the ratio E[M_k M_l]/E[M_k^2]
/// must be constant in t (checked exactly), which forces the cross moments
/// to vanish. For k >= 3 the forced band of zero cumulants cascades through
/// the moment conditions on dK to every c_i, i >= 3.
pub fn reversed_feasibility(spec: &CumulantSpec, k: usize) -> Result<ReversedVerdict> {
    if k < 2 {
        return Err(Error::InvalidArgument(
            "reversed-martingale analysis starts at k = 2 (M_1/t always works)".into(),
        ));
    }
    if 2 * k > spec.order() {
        return Err(Error::Truncation(format!(
            "feasibility at k = {k} needs E[M_k^2], i.e. cumulants through c_{}",
            2 * k
        )));
    }
    let ek2 = cross_moment(spec, k, k)?.poly;
    let mu = RationalFunction::new(MultiPoly::one(&["t"]), ek2.clone())?;

    let mut constant_for_all = true;
    for l in 1..k {
        let p = cross_moment(spec, k, l)?.poly;
        let ratio = RationalFunction::new(p, ek2.clone())?;
        if !ratio.is_constant()? {
            constant_for_all = false;
        }
    }

    let forced_zero_cumulants: Vec<usize> = if k == 2 {
        vec![3]
    } else {
        // Direct band max(3, k-1)..=2k-1, then the Prop-dK cascade: some even
        // index in the band vanishing collapses dK to a point mass at 0, so
        // every c_i, i >= 3, is forced.
        (3..=spec.order()).collect()
    };
    let witness = forced_zero_cumulants
        .iter()
        .copied()
        .find(|&i| !spec.c(i).expect("index within order").is_zero());
    let feasible = witness.is_none();
    if feasible && !constant_for_all {
        return Err(Error::Internal(
            "forced cumulants vanish but a cross-moment ratio is non-constant".into(),
        ));
    }
    if k == 2 && !feasible && constant_for_all {
        return Err(Error::Internal(
            "c_3 nonzero but E[M_2 M_1]/E[M_2^2] tested constant".into(),
        ));
    }
    Ok(ReversedVerdict {
        k,
        feasible,
        mu: if feasible { Some(mu) } else { None },
        forced_zero_cumulants,
        witness,
    })
}

// ---- The mu-functions of the degree-2 combination ----

/// The pair (mu_1, mu_2) solving the degree-2 reversed-martingale system for
/// a given constant beta.
#[derive(Clone, Debug, Serialize)]
pub struct MuPair {
    pub beta: Rational,
    pub mu1: RationalFunction,
    pub mu2: RationalFunction,
}

/// mu_2 = (c_2 - beta c_3) / (t (2 c_2^3 t + c_2 c_4 - c_3^2)) and
/// mu_1 = (beta (2 c_2^2 t + c_4) - c_3) / (same denominator).
pub fn mu_functions(
    c2: &Rational,
    c3: &Rational,
    c4: &Rational,
    beta: &Rational,
) -> Result<MuPair> {
    let t = MultiPoly::var(&["t"], "t")?;
    let two = Rational::from_int(2);
    let delta_const = &(c2 * c4) - &(c3 * c3);
    let delta = &t.scale(&(&two * &c2.pow(3)?)) + &MultiPoly::constant(&["t"], delta_const);
    let den = &t * &delta;
    if den.is_zero() {
        return Err(Error::DegenerateSpec(
            "2 c_2^3 t + c_2 c_4 - c_3^2 vanishes identically".into(),
        ));
    }
    let mu2_num = MultiPoly::constant(&["t"], &c2.clone() - &(beta * c3));
    let mu1_num =
        &t.scale(&(&(beta * &two) * &c2.pow(2)?)) + &MultiPoly::constant(&["t"], &(beta * c4) - c3);
    Ok(MuPair {
        beta: beta.clone(),
        mu1: RationalFunction::new(mu1_num, den.clone())?,
        mu2: RationalFunction::new(mu2_num, den)?,
    })
}

// ---- Five-case classification ----

/// One classified parameter point (c_1 rides along for closed-form
/// evaluation; the classification itself only reads c_2, c_3, c_4).
#[derive(Clone, Debug, Serialize)]
pub struct GlowneCase {
    pub case_id: u8,
    pub c1: Rational,
    pub c2: Rational,
    pub c3: Rational,
    pub c4: Rational,
    /// v = chi_4 - chi_3^2 (variance of dK/c_2 when the spec is a measure).
    pub v: Rational,
    /// alpha^2 = (2 chi_4 - 3 chi_3^2)/4; negative means the hyperbolic regime.
    pub alpha_squared: Rational,
    /// Exact alpha when sqrt(|alpha^2|) is rational.
    pub alpha_exact: Option<Rational>,
    /// Numeric alpha = sqrt(|alpha^2|).
    pub alpha: f64,
}

/// Classify (c_2, c_3, c_4) into the five printed cases. Exact equalities
/// are checked before inequalities so boundary specs cannot be misfiled:
/// case 2 is c_4 c_2 = c_3^2 (including c_3 = c_4 = 0), case 1 is c_3 = 0
/// with c_4 > 0, case 3 is 2 c_4 c_2 = c_3^2 != 0, then 2 c_4 c_2 > c_3^2
/// gives case 4 and < gives case 5.
pub fn glowne_classify(c2: &Rational, c3: &Rational, c4: &Rational) -> Result<GlowneCase> {
    glowne_classify_with_drift(&Rational::zero(), c2, c3, c4)
}

pub fn glowne_classify_with_drift(
    c1: &Rational,
    c2: &Rational,
    c3: &Rational,
    c4: &Rational,
) -> Result<GlowneCase> {
    if !c2.is_positive() {
        return Err(Error::InvalidArgument(
            "classification needs c_2 > 0".into(),
        ));
    }
    let chi3 = c3 / c2;
    let chi4 = c4 / c2;
    let v = &chi4 - &(&chi3 * &chi3);
    let alpha_squared = &(&(&chi4 * &Rational::from_int(2))
        - &(&(&chi3 * &chi3) * &Rational::from_int(3)))
        / &Rational::from_int(4);
    let c3sq = c3 * c3;
    let c4c2 = c4 * c2;
    let twice = &c4c2 * &Rational::from_int(2);
    let case_id = if c4c2 == c3sq {
        2
    } else if c3.is_zero() {
        if c4.is_positive() {
            1
        } else {
            5
        }
    } else if twice == c3sq {
        3
    } else if twice > c3sq {
        4
    } else {
        5
    };
    let alpha_exact = rational_sqrt(&alpha_squared.abs());
    let alpha = alpha_squared.abs().to_f64().sqrt();
    Ok(GlowneCase {
        case_id,
        c1: c1.clone(),
        c2: c2.clone(),
        c3: c3.clone(),
        c4: c4.clone(),
        v,
        alpha_squared,
        alpha_exact,
        alpha,
    })
}

/// sqrt of a nonnegative rational, when it is itself rational.
fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let sn = exact_bigint_sqrt(r.numer())?;
    let sd = exact_bigint_sqrt(r.denom())?;
    Some(Rational::from_big(sn, sd).expect("denominator positive"))
}

fn exact_bigint_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

// ---- Cumulant closure and its ODE oracle ----

/// Extend (c_2, c_3, c_4) to the full cumulant sequence forced by the
/// degree-2 reversed-martingale condition, via the chi recursion. The drift
/// c_1 of the returned spec is 0.
pub fn cumulant_closure(
    c2: &Rational,
    c3: &Rational,
    c4: &Rational,
    order: usize,
) -> Result<CumulantSpec> {
    if !c2.is_positive() {
        return Err(Error::InvalidArgument("closure needs c_2 > 0".into()));
    }
    if order < 4 {
        return Err(Error::InvalidArgument("closure needs order >= 4".into()));
    }
    // chi[i] = c_i / c_2 for i >= 2; chi[0], chi[1] unused.
    let mut chi = vec![Rational::zero(); order + 1];
    chi[2] = Rational::one();
    chi[3] = c3 / c2;
    chi[4] = c4 / c2;
    let v = &chi[4] - &(&chi[3] * &chi[3]);
    let half_v = &v / &Rational::from_int(2);
    for l in 3..=(order - 2) {
        let mut sum = Rational::zero();
        for k in 1..=(l - 1) {
            sum += &(&binomial_r(l, k) * &(&chi[k + 1] * &chi[l + 1 - k]));
        }
        chi[l + 2] = &(&chi[3] * &chi[l + 1]) + &(&half_v * &sum);
    }
    let mut c = Vec::with_capacity(order);
    c.push(Rational::zero());
    for chi_i in chi.iter().take(order + 1).skip(2) {
        c.push(c2 * chi_i);
    }
    CumulantSpec::new(c)
}

/// Solve psi'' - chi_3 psi' - v psi' psi = 0, psi(0) = 0, psi'(0) = 1 by a
/// raw power-series coefficient recursion and read the cumulants off
/// psi(r) = sum chi_{k+1} r^k / k!. This is the independent oracle for
/// `cumulant_closure`: a Cauchy-product recursion instead of a binomial one.
pub fn ode_series(
    c2: &Rational,
    c3: &Rational,
    c4: &Rational,
    order: usize,
) -> Result<CumulantSpec> {
    if !c2.is_positive() {
        return Err(Error::InvalidArgument("ODE series needs c_2 > 0".into()));
    }
    if order < 4 {
        return Err(Error::InvalidArgument("ODE series needs order >= 4".into()));
    }
    let chi3 = c3 / c2;
    let chi4 = c4 / c2;
    let v = &chi4 - &(&chi3 * &chi3);
    // psi = sum_{k>=1} a_k r^k, a_1 = 1.
    let n_coeffs = order; // need a_1..a_{order-1}
    let mut a = vec![Rational::zero(); n_coeffs.max(2)];
    a[1] = Rational::one();
    for m in 0..n_coeffs.saturating_sub(2) {
        // (m+2)(m+1) a_{m+2} = chi_3 (m+1) a_{m+1} + v sum_{j=1}^{m} j a_j a_{m+1-j}
        let mut conv = Rational::zero();
        for j in 1..=m {
            conv += &(&(&Rational::from_int(j as i64) * &a[j]) * &a[m + 1 - j]);
        }
        let numer = &(&chi3 * &(&Rational::from_int((m + 1) as i64) * &a[m + 1])) + &(&v * &conv);
        a[m + 2] = &numer / &Rational::from_int(((m + 2) * (m + 1)) as i64);
    }
    let mut c = Vec::with_capacity(order);
    c.push(Rational::zero());
    for i in 2..=order {
        // chi_i = (i-1)! a_{i-1}
        c.push(&(c2 * &factorial_r(i - 1)) * &a[i - 1]);
    }
    CumulantSpec::new(c)
}

// ---- Constancy of the degree-2 combination ----

/// One l-level of the reversed-martingale constancy condition.
#[derive(Clone, Debug, Serialize)]
pub struct ConstancyCheck {
    pub l: usize,
    pub constant: bool,
    /// The constant, when there is one (beta at l = 1, 1 at l = 2).
    pub value: Option<Rational>,
}

/// Check that mu_1(t) E[M_1 M_l](t) + mu_2(t) E[M_2 M_l](t) is constant in t
/// for l = 1..=l_max, exactly. For closure-generated specs this is the
/// reversed-martingale property of mu_1 M_1 + mu_2 M_2 restated at the
/// testable level.
pub fn combination_constancy(
    spec: &CumulantSpec,
    beta: &Rational,
    l_max: usize,
) -> Result<Vec<ConstancyCheck>> {
    if l_max + 2 > spec.order() {
        return Err(Error::Truncation(format!(
            "constancy through l = {l_max} needs cumulants through c_{}",
            l_max + 2
        )));
    }
    let pair = mu_functions(spec.c(2)?, spec.c(3)?, spec.c(4)?, beta)?;
    let mut out = Vec::with_capacity(l_max);
    for l in 1..=l_max {
        let p1 = cross_moment(spec, 1, l)?.poly;
        let p2 = cross_moment(spec, 2, l)?.poly;
        let num = &(&pair.mu1.num * &p1) + &(&pair.mu2.num * &p2);
        let f = RationalFunction::new(num, pair.mu1.den.clone())?;
        let constant = f.is_constant()?;
        let value = if constant { f.constant_value()? } else { None };
        out.push(ConstancyCheck { l, constant, value });
    }
    Ok(out)
}

// ---- Tangent numbers ----

/// Tangent numbers T_1..T_kmax (1, 2, 16, 272, ...), arbitrary precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentTable {
    t: Vec<BigInt>,
}

impl TangentTable {
    /// T_j for 1 <= j <= kmax.
    pub fn get(&self, j: usize) -> &BigInt {
        &self.t[j - 1]
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn values(&self) -> &[BigInt] {
        &self.t
    }

    pub fn as_strings(&self) -> Vec<String> {
        self.t.iter().map(|v| v.to_string()).collect()
    }
}

/// T_{k+1} = sum_{s=1}^{k} C(2k, 2s-1) T_s T_{k-s+1}, T_1 = 1.
pub fn tangent_numbers(kmax: usize) -> Result<TangentTable> {
    if kmax < 1 {
        return Err(Error::InvalidArgument("need kmax >= 1".into()));
    }
    let mut t: Vec<BigInt> = vec![BigInt::from(1)];
    for k in 1..kmax {
        let mut acc = BigInt::zero();
        for s in 1..=k {
            acc += binomial(2 * k, 2 * s - 1) * &t[s - 1] * &t[k - s];
        }
        t.push(acc);
    }
    Ok(TangentTable { t })
}

/// The same recursion with the constant binomial index C(2k, 2k-1) = 2k in
/// every summand, kept only so the two displays can be arbitrated.
pub fn tangent_numbers_constant_index(kmax: usize) -> Result<TangentTable> {
    if kmax < 1 {
        return Err(Error::InvalidArgument("need kmax >= 1".into()));
    }
    let mut t: Vec<BigInt> = vec![BigInt::from(1)];
    for k in 1..kmax {
        let mut acc = BigInt::zero();
        for s in 1..=k {
            acc += binomial(2 * k, 2 * k - 1) * &t[s - 1] * &t[k - s];
        }
        t.push(acc);
    }
    Ok(TangentTable { t })
}

/// Tangent numbers through the cumulant closure: run the chi recursion with
/// chi_3 = 0, chi_4 = 2 and read T_j = chi_{2j}. Independent route used to
/// arbitrate the recursion displays.
pub fn tangent_numbers_from_closure(kmax: usize) -> Result<TangentTable> {
    if kmax < 1 {
        return Err(Error::InvalidArgument("need kmax >= 1".into()));
    }
    let spec = cumulant_closure(
        &Rational::one(),
        &Rational::zero(),
        &Rational::from_int(2),
        (2 * kmax).max(4),
    )?;
    // Odd chi vanish; chi_{2j} are integers here.
    let mut t = Vec::with_capacity(kmax);
    for j in 1..=kmax {
        let c = spec.c(2 * j)?;
        if !c.is_integer() {
            return Err(Error::Internal(format!(
                "closure route produced a non-integer tangent number {c}"
            )));
        }
        t.push(c.numer().clone());
    }
    Ok(TangentTable { t })
}
