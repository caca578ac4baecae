//! Moment functions m_n(t) = E X_t^n as exact polynomials in t.
//!
//! The table is built from the algebraic recursion
//! m_{n+1}(t) = t * sum_j C(n,j) c_{j+1} m_{n-j}(t) and cross-checked at
//! construction against the differential system
//! m_n'(t) = sum_{j>=1} C(n,j) c_j m_{n-j}(t): two derivations that must
//! agree symbolically, giving the engine a built-in self-test. Degree of
//! m_n in t never exceeds n, so the table extends to negative time by
//! substitution.

use serde::Serialize;

use crate::cumulant::CumulantSpec;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::rational::{binomial_r, factorial_r, Rational};
use crate::series::PolySeries;

/// Exact moment polynomials m_0..m_N in the variable t.
#[derive(Clone, Debug)]
pub struct MomentTable {
    spec: CumulantSpec,
    m: Vec<MultiPoly>,
}

impl MomentTable {
    /// Build m_0..m_N. Requires N <= spec order; verifies the differential
    /// identity for every n as a construction-time self-test.
    pub fn new(spec: &CumulantSpec, n_max: usize) -> Result<Self> {
        if n_max > spec.order() {
            return Err(Error::Truncation(format!(
                "moment table to order {n_max} needs c_{n_max}, spec has order {}",
                spec.order()
            )));
        }
        let t = MultiPoly::var(&["t"], "t")?;
        let mut m = Vec::with_capacity(n_max + 1);
        m.push(MultiPoly::one(&["t"]));
        for n in 0..n_max {
            let mut sum = MultiPoly::zero(&["t"]);
            for j in 0..=n {
                let coef = &binomial_r(n, j) * spec.c(j + 1)?;
                sum = &sum + &m[n - j].scale(&coef);
            }
            m.push(&t * &sum);
        }
        let table = MomentTable {
            spec: spec.clone(),
            m,
        };
        for n in 1..=n_max {
            let residual = table.differential_residual(n)?;
            if !residual.is_zero() {
                return Err(Error::Internal(format!(
                    "moment recursion disagrees with the differential system at n = {n}: residual {residual}"
                )));
            }
        }
        Ok(table)
    }

    pub fn spec(&self) -> &CumulantSpec {
        &self.spec
    }

    /// Largest n in the table.
    pub fn order(&self) -> usize {
        self.m.len() - 1
    }

    /// m_n(t) as a polynomial in t.
    pub fn m(&self, n: usize) -> Result<&MultiPoly> {
        self.m.get(n).ok_or_else(|| {
            Error::Truncation(format!(
                "m_{n} requested but the table stops at order {}",
                self.m.len() - 1
            ))
        })
    }

    /// m_n evaluated at a rational time.
    pub fn m_at(&self, n: usize, t: &Rational) -> Result<Rational> {
        self.m(n)?.eval_all(&[("t", t.clone())])
    }

    /// m_n(-t): substitute t -> -t.
    pub fn negative_time(&self, n: usize) -> Result<MultiPoly> {
        let t = MultiPoly::var(&["t"], "t")?;
        self.m(n)?.substitute("t", &-&t)
    }

    /// d/dt m_n - sum_{j=1}^{n} C(n,j) c_j m_{n-j}; zero when the
    /// differential system holds.
    pub fn differential_residual(&self, n: usize) -> Result<MultiPoly> {
        let deriv = self.m(n)?.derivative("t")?;
        let mut sum = MultiPoly::zero(&["t"]);
        for j in 1..=n {
            let coef = &binomial_r(n, j) * self.spec.c(j)?;
            sum = &sum + &self.m(n - j)?.scale(&coef);
        }
        Ok(&deriv - &sum)
    }

    /// Central moments E(X_t - c_1 t)^n for n = 0..order. Computed two ways
    /// (binomial centering of the table, and the table of the drift-free
    /// spec) which must agree exactly.
    pub fn central_moments(&self) -> Result<Vec<MultiPoly>> {
        let n_max = self.order();
        let t = MultiPoly::var(&["t"], "t")?;
        let minus_drift = t.scale(&-self.spec.c(1)?.clone());
        let mut centered = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut sum = MultiPoly::zero(&["t"]);
            for i in 0..=n {
                let term = &self.m(n - i)?.scale(&binomial_r(n, i)) * &minus_drift.pow(i as u32);
                sum = &sum + &term;
            }
            centered.push(sum);
        }
        let driftless = MomentTable::new(&self.spec.with_c1(Rational::zero()), n_max)?;
        for (n, poly) in centered.iter().enumerate() {
            if poly != driftless.m(n)? {
                return Err(Error::Internal(format!(
                    "central moment routes disagree at n = {n}"
                )));
            }
        }
        Ok(centered)
    }
}

/// One failing index of an identity check, with the nonzero residual.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityFailure {
    pub n: usize,
    pub residual: MultiPoly,
}

/// Outcome of a batch identity check.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub checked_through: usize,
    pub pass: bool,
    pub failures: Vec<IdentityFailure>,
}

impl IdentityReport {
    fn from_failures(name: &str, checked_through: usize, failures: Vec<IdentityFailure>) -> Self {
        IdentityReport {
            name: name.into(),
            checked_through,
            pass: failures.is_empty(),
            failures,
        }
    }
}

/// Check the convolution identity m_n(s+t) = sum_j C(n,j) m_j(s) m_{n-j}(t)
/// as an exact bivariate identity, for every n in the table.
pub fn check_convolution(table: &MomentTable) -> Result<IdentityReport> {
    convolution_report(&table.m)
}

/// Same check on a raw list of would-be moment polynomials in t (m_0 first).
/// Exposed separately so a corrupted table can be fed in deliberately.
pub fn convolution_report(m: &[MultiPoly]) -> Result<IdentityReport> {
    let st = ["s", "t"];
    let s_poly = MultiPoly::var(&st, "s")?;
    let t_poly = MultiPoly::var(&st, "t")?;
    let s_plus_t = &s_poly + &t_poly;
    let in_s: Vec<MultiPoly> = m
        .iter()
        .map(|p| p.rename_var("t", "s")?.lift(&st))
        .collect::<Result<_>>()?;
    let in_t: Vec<MultiPoly> = m.iter().map(|p| p.lift(&st)).collect::<Result<_>>()?;
    let mut failures = Vec::new();
    for n in 0..m.len() {
        let lhs = in_t[n].substitute("t", &s_plus_t)?;
        let mut rhs = MultiPoly::zero(&st);
        for j in 0..=n {
            rhs = &rhs + &(&in_s[j] * &in_t[n - j]).scale(&binomial_r(n, j));
        }
        let residual = &lhs - &rhs;
        if !residual.is_zero() {
            failures.push(IdentityFailure { n, residual });
        }
    }
    Ok(IdentityReport::from_failures(
        "convolution",
        m.len().saturating_sub(1),
        failures,
    ))
}

/// The differential system as a batch report (residuals per n).
pub fn check_differential(table: &MomentTable) -> Result<IdentityReport> {
    let mut failures = Vec::new();
    for n in 1..=table.order() {
        let residual = table.differential_residual(n)?;
        if !residual.is_zero() {
            failures.push(IdentityFailure { n, residual });
        }
    }
    Ok(IdentityReport::from_failures(
        "differential-system",
        table.order(),
        failures,
    ))
}

/// f(u) = sum_k c_k u^k / k! as a truncated series in u whose coefficients
/// are polynomials over `vars`, each multiplied by `scale`.
fn scaled_f_series(
    spec: &CumulantSpec,
    order: usize,
    vars: &[&str],
    scale: &MultiPoly,
) -> Result<PolySeries> {
    let mut f = PolySeries::zero(vars, order);
    for k in 1..order {
        let ck = spec.c(k)?;
        let coef = scale.scale(&(ck / &factorial_r(k)));
        f.set_coeff(k, coef)?;
    }
    Ok(f)
}

/// Check assertion v of the moment toolbox:
/// sum_j C(n,j) m_{n-j}(-s) m_{j+i}(s) equals the n-th u-derivative at 0 of
/// exp(-s f(u)) * (d^i/du^i exp(s f(u))).
///
/// The left side comes from the moment table; the right side is computed by
/// genuine truncated-series exponentiation over polynomials in s, so the two
/// routes are independent.
pub fn check_identity_v(table: &MomentTable, n: usize, i: usize) -> Result<IdentityReport> {
    if n + i > table.order() {
        return Err(Error::Truncation(format!(
            "identity v at (n={n}, i={i}) needs moments to order {}",
            n + i
        )));
    }
    let svars = ["s"];
    let s = MultiPoly::var(&svars, "s")?;

    // Left side from the table.
    let table_in_s: Vec<MultiPoly> = (0..=table.order())
        .map(|j| table.m(j)?.rename_var("t", "s"))
        .collect::<Result<_>>()?;
    let neg_in_s: Vec<MultiPoly> = (0..=table.order())
        .map(|j| table.negative_time(j)?.rename_var("t", "s"))
        .collect::<Result<_>>()?;
    let mut lhs = MultiPoly::zero(&svars);
    for j in 0..=n {
        lhs = &lhs + &(&neg_in_s[n - j] * &table_in_s[j + i]).scale(&binomial_r(n, j));
    }

    // Right side by series arithmetic.
    let order = n + i + 2;
    let sf = scaled_f_series(table.spec(), order, &svars, &s)?;
    let exp_plus = sf.exp()?;
    let exp_minus = sf.scale(&-Rational::one()).exp()?;
    let mut derived = exp_plus;
    for _ in 0..i {
        derived = derived.derivative()?;
    }
    let product = exp_minus.mul(&derived);
    let rhs = product.coeff(n)?.scale(&factorial_r(n));

    let residual = &lhs - &rhs;
    let failures = if residual.is_zero() {
        vec![]
    } else {
        vec![IdentityFailure { n, residual }]
    };
    Ok(IdentityReport::from_failures("identity-v", n, failures))
}

/// Check m_n(t) = n! P_n(x_1, ..., x_n) where P_n comes from the generating
/// expansion exp(sum_k (-1)^{k-1} x_k z^k / k) = sum_n z^n P_n, evaluated at
/// x_k = (-1)^{k-1} c_k t / (k-1)!. The exponential is computed by series
/// arithmetic, independent of the table's recursion.
pub fn check_yablonski_representation(table: &MomentTable) -> Result<IdentityReport> {
    let tvars = ["t"];
    let t = MultiPoly::var(&tvars, "t")?;
    let n_max = table.order();
    let order = n_max + 1;
    let mut g = PolySeries::zero(&tvars, order);
    for k in 1..order {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let x_k = t.scale(&(table.spec().c(k)? * &Rational::from_int(sign) / &factorial_r(k - 1)));
        // contribution (-1)^{k-1} x_k / k
        let coef = x_k.scale(&(Rational::from_int(sign) / &Rational::from_int(k as i64)));
        g.set_coeff(k, coef)?;
    }
    let expanded = g.exp()?;
    let mut failures = Vec::new();
    for n in 0..=n_max {
        let rhs = expanded.coeff(n)?.scale(&factorial_r(n));
        let residual = &table.m(n)?.clone() - &rhs;
        if !residual.is_zero() {
            failures.push(IdentityFailure { n, residual });
        }
    }
    Ok(IdentityReport::from_failures(
        "yablonski-representation",
        n_max,
        failures,
    ))
}

/// Additivity over independent sums:
/// m_n(t; c+d) = sum_k C(n,k) m_k(t; c) m_{n-k}(t; d).
pub fn check_additivity(
    a: &CumulantSpec,
    b: &CumulantSpec,
    n_max: usize,
) -> Result<IdentityReport> {
    let ta = MomentTable::new(a, n_max)?;
    let tb = MomentTable::new(b, n_max)?;
    let tsum = MomentTable::new(&a.sum(b)?, n_max)?;
    let mut failures = Vec::new();
    for n in 0..=n_max {
        let mut rhs = MultiPoly::zero(&["t"]);
        for k in 0..=n {
            rhs = &rhs + &(ta.m(k)? * tb.m(n - k)?).scale(&binomial_r(n, k));
        }
        let residual = &tsum.m(n)?.clone() - &rhs;
        if !residual.is_zero() {
            failures.push(IdentityFailure { n, residual });
        }
    }
    Ok(IdentityReport::from_failures("additivity", n_max, failures))
}

/// Scaling: m_n(t; (c_1 a, c_2 a^2, ...)) = a^n m_n(t; c).
pub fn check_scaling(
    spec: &CumulantSpec,
    alpha: &Rational,
    n_max: usize,
) -> Result<IdentityReport> {
    let base = MomentTable::new(spec, n_max)?;
    let scaled = MomentTable::new(&spec.scaled(alpha)?, n_max)?;
    let mut failures = Vec::new();
    for n in 0..=n_max {
        let rhs = base.m(n)?.scale(&alpha.pow(n as i32)?);
        let residual = &scaled.m(n)?.clone() - &rhs;
        if !residual.is_zero() {
            failures.push(IdentityFailure { n, residual });
        }
    }
    Ok(IdentityReport::from_failures("scaling", n_max, failures))
}

/// Sensitivity of m_n(t) to the cumulant c_l: C(n,l) * t * m_{n-l}(t) for
/// l <= n, zero above. (The n*t coefficient sometimes quoted for this
/// derivative only agrees at l = 1; see `sensitivity_quoted_form`.)
pub fn cumulant_sensitivity(table: &MomentTable, n: usize, l: usize) -> Result<MultiPoly> {
    if n > table.order() {
        return Err(Error::Truncation(format!(
            "sensitivity of m_{n} needs the table to order {n}"
        )));
    }
    if l == 0 {
        return Err(Error::InvalidArgument("cumulants are 1-indexed".into()));
    }
    if l > n {
        return Ok(MultiPoly::zero(&["t"]));
    }
    let t = MultiPoly::var(&["t"], "t")?;
    Ok((&t * table.m(n - l)?).scale(&binomial_r(n, l)))
}

/// The same derivative by formal differentiation of the moment recursion
/// with respect to c_l; the independent oracle for `cumulant_sensitivity`.
pub fn sensitivity_by_recursion(table: &MomentTable, n: usize, l: usize) -> Result<MultiPoly> {
    if n > table.order() {
        return Err(Error::Truncation(format!(
            "sensitivity of m_{n} needs the table to order {n}"
        )));
    }
    if l == 0 {
        return Err(Error::InvalidArgument("cumulants are 1-indexed".into()));
    }
    let t = MultiPoly::var(&["t"], "t")?;
    let mut dm: Vec<MultiPoly> = vec![MultiPoly::zero(&["t"])];
    for k in 0..n {
        let mut sum = MultiPoly::zero(&["t"]);
        for j in 0..=k {
            let b = binomial_r(k, j);
            if j + 1 == l {
                sum = &sum + &table.m(k - j)?.scale(&b);
            }
            let ck = table.spec().c(j + 1)?;
            if !ck.is_zero() {
                sum = &sum + &dm[k - j].scale(&(&b * ck));
            }
        }
        dm.push(&t * &sum);
    }
    Ok(dm[n].clone())
}

/// The n*t*m_{n-l}(t) form as quoted, kept for arbitration purposes.
pub fn sensitivity_quoted_form(table: &MomentTable, n: usize, l: usize) -> Result<MultiPoly> {
    if l == 0 {
        return Err(Error::InvalidArgument("cumulants are 1-indexed".into()));
    }
    if l > n {
        return Ok(MultiPoly::zero(&["t"]));
    }
    let t = MultiPoly::var(&["t"], "t")?;
    Ok((&t * table.m(n - l)?).scale(&Rational::from_int(n as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poisson(order: usize) -> CumulantSpec {
        CumulantSpec::new(vec![Rational::one(); order]).unwrap()
    }

    fn gaussian(order: usize) -> CumulantSpec {
        let mut c = vec![Rational::zero(); order];
        c[1] = Rational::one();
        CumulantSpec::new(c).unwrap()
    }

    fn tpoly(coeffs: &[(i64, u32)]) -> MultiPoly {
        // sum of coef * t^pow
        let t = MultiPoly::var(&["t"], "t").unwrap();
        let mut p = MultiPoly::zero(&["t"]);
        for &(c, pw) in coeffs {
            p = &p + &t.pow(pw).scale(&Rational::from_int(c));
        }
        p
    }

    #[test]
    fn poisson_moments_are_touchard() {
        let table = MomentTable::new(&poisson(4), 4).unwrap();
        assert_eq!(table.m(1).unwrap(), &tpoly(&[(1, 1)]));
        assert_eq!(table.m(2).unwrap(), &tpoly(&[(1, 2), (1, 1)]));
        assert_eq!(table.m(3).unwrap(), &tpoly(&[(1, 3), (3, 2), (1, 1)]));
        assert_eq!(
            table.m(4).unwrap(),
            &tpoly(&[(1, 4), (6, 3), (7, 2), (1, 1)])
        );
    }

    #[test]
    fn gaussian_moments() {
        let table = MomentTable::new(&gaussian(4), 4).unwrap();
        assert_eq!(table.m(2).unwrap(), &tpoly(&[(1, 1)]));
        assert!(table.m(3).unwrap().is_zero());
        assert_eq!(table.m(4).unwrap(), &tpoly(&[(3, 2)]));
    }

    #[test]
    fn first_moment_is_drift() {
        let spec = CumulantSpec::new(vec![
            Rational::new(3, 2).unwrap(),
            Rational::one(),
            Rational::new(-1, 3).unwrap(),
        ])
        .unwrap();
        let table = MomentTable::new(&spec, 3).unwrap();
        assert_eq!(table.m(0).unwrap(), &MultiPoly::one(&["t"]));
        let t = MultiPoly::var(&["t"], "t").unwrap();
        assert_eq!(table.m(1).unwrap(), &t.scale(&Rational::new(3, 2).unwrap()));
        // m_2 = c_2 t + c_1^2 t^2
        let expect = &t + &t.pow(2).scale(&Rational::new(9, 4).unwrap());
        assert_eq!(table.m(2).unwrap(), &expect);
    }

    #[test]
    fn moments_vanish_at_time_zero() {
        let table = MomentTable::new(&poisson(6), 6).unwrap();
        for n in 1..=6 {
            assert!(table.m_at(n, &Rational::zero()).unwrap().is_zero());
        }
        assert!(table.m_at(0, &Rational::zero()).unwrap().is_one());
    }

    #[test]
    fn table_truncation_errors() {
        let spec = poisson(4);
        assert!(MomentTable::new(&spec, 5).is_err());
        let table = MomentTable::new(&spec, 4).unwrap();
        assert!(table.m(5).is_err());
    }

    #[test]
    fn negative_time_examples() {
        let table = MomentTable::new(&poisson(3), 3).unwrap();
        assert_eq!(table.negative_time(2).unwrap(), tpoly(&[(1, 2), (-1, 1)]));
        assert_eq!(
            table.negative_time(3).unwrap(),
            tpoly(&[(-1, 3), (3, 2), (-1, 1)])
        );
        assert_eq!(table.negative_time(0).unwrap(), MultiPoly::one(&["t"]));
    }

    #[test]
    fn central_moments_examples() {
        let table = MomentTable::new(&poisson(4), 4).unwrap();
        let hat = table.central_moments().unwrap();
        assert!(hat[1].is_zero());
        assert_eq!(hat[2], tpoly(&[(1, 1)]));
        assert_eq!(hat[3], tpoly(&[(1, 1)]));
        assert_eq!(hat[4], tpoly(&[(3, 2), (1, 1)]));

        let drifted = CumulantSpec::from_ints(&[5, 1, 0, 0]).unwrap();
        let hat = MomentTable::new(&drifted, 4)
            .unwrap()
            .central_moments()
            .unwrap();
        assert_eq!(hat[4], tpoly(&[(3, 2)]));
    }

    #[test]
    fn convolution_holds_and_detects_faults() {
        for spec in [poisson(8), gaussian(10)] {
            let table = MomentTable::new(&spec, spec.order()).unwrap();
            let report = check_convolution(&table).unwrap();
            assert!(report.pass, "{report:?}");
        }
        // Corrupt m_2 by +t^2: the identity fails at n = 2 itself.
        let table = MomentTable::new(&poisson(4), 4).unwrap();
        let mut m = table.m.clone();
        m[2] = &m[2] + &MultiPoly::var(&["t"], "t").unwrap().pow(2);
        let report = convolution_report(&m).unwrap();
        assert!(!report.pass);
        assert!(report.failures.iter().any(|f| f.n == 2));
        // Corrupting m_2 by +t is invisible at n = 2 (a linear-in-t shift is
        // additive over s+t) but must still be caught at n = 3.
        let mut m = table.m.clone();
        m[2] = &m[2] + &MultiPoly::var(&["t"], "t").unwrap();
        let report = convolution_report(&m).unwrap();
        assert!(!report.pass);
        assert!(report.failures.iter().all(|f| f.n != 2));
        assert!(report.failures.iter().any(|f| f.n == 3));
    }

    #[test]
    fn identity_v_examples() {
        let table = MomentTable::new(&poisson(6), 6).unwrap();
        // i = 0 reduces to E M_n = 0 in disguise; both sides must agree.
        assert!(check_identity_v(&table, 3, 0).unwrap().pass);
        assert!(check_identity_v(&table, 2, 1).unwrap().pass);
        let table = MomentTable::new(&gaussian(6), 6).unwrap();
        assert!(check_identity_v(&table, 3, 2).unwrap().pass);
        assert!(check_identity_v(&table, 6, 1).is_err());
    }

    #[test]
    fn yablonski_representation_matches_table() {
        for spec in [
            poisson(8),
            gaussian(8),
            CumulantSpec::from_ints(&[2, 3, -1, 5, 0, 7, -2, 1]).unwrap(),
        ] {
            let table = MomentTable::new(&spec, 8).unwrap();
            assert!(check_yablonski_representation(&table).unwrap().pass);
        }
    }

    #[test]
    fn additivity_poisson_plus_gaussian() {
        let report = check_additivity(&poisson(8), &gaussian(8), 8).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn scaling_examples() {
        let spec = poisson(6);
        assert!(check_scaling(&spec, &Rational::one(), 6).unwrap().pass);
        assert!(
            check_scaling(&spec, &Rational::from_int(2), 6)
                .unwrap()
                .pass
        );
        // alpha = 2, n = 3: scaled m_3 = 8 m_3.
        let scaled = MomentTable::new(&spec.scaled(&Rational::from_int(2)).unwrap(), 3).unwrap();
        let base = MomentTable::new(&spec, 3).unwrap();
        assert_eq!(
            scaled.m(3).unwrap(),
            &base.m(3).unwrap().scale(&Rational::from_int(8))
        );
    }

    #[test]
    fn sensitivity_matches_recursion_oracle() {
        let specs = [
            poisson(8),
            CumulantSpec::from_ints(&[1, 2, 3, -4, 5, -6, 7, 8]).unwrap(),
        ];
        for spec in specs {
            let table = MomentTable::new(&spec, 8).unwrap();
            for n in 1..=8 {
                for l in 1..=n {
                    let formula = cumulant_sensitivity(&table, n, l).unwrap();
                    let oracle = sensitivity_by_recursion(&table, n, l).unwrap();
                    assert_eq!(formula, oracle, "n={n} l={l}");
                }
            }
        }
    }

    #[test]
    fn sensitivity_edge_cases() {
        let table = MomentTable::new(&poisson(4), 4).unwrap();
        // l > n gives zero.
        assert!(cumulant_sensitivity(&table, 2, 3).unwrap().is_zero());
        // l = 1 agrees with the n*t form.
        for n in 1..=4 {
            assert_eq!(
                cumulant_sensitivity(&table, n, 1).unwrap(),
                sensitivity_quoted_form(&table, n, 1).unwrap()
            );
        }
        // Poisson, n = 3, l = 2: 3 t m_1 = 3 t^2.
        assert_eq!(
            cumulant_sensitivity(&table, 3, 2).unwrap(),
            tpoly(&[(3, 2)])
        );
        // The quoted n*t form departs from the oracle at (n, l) = (4, 2).
        let quoted = sensitivity_quoted_form(&table, 4, 2).unwrap();
        let oracle = sensitivity_by_recursion(&table, 4, 2).unwrap();
        assert_ne!(quoted, oracle);
    }

    #[test]
    fn semigroup_consistency_at_rational_times() {
        let spec = CumulantSpec::from_ints(&[1, 2, -1, 3, 0, 1]).unwrap();
        let table = MomentTable::new(&spec, 6).unwrap();
        let a = Rational::new(2, 3).unwrap();
        let b = Rational::new(-1, 4).unwrap();
        let ab = &a + &b;
        for n in 0..=6 {
            let lhs = table.m_at(n, &ab).unwrap();
            let mut rhs = Rational::zero();
            for j in 0..=n {
                rhs += &(&(&binomial_r(n, j) * &table.m_at(j, &a).unwrap())
                    * &table.m_at(n - j, &b).unwrap());
            }
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }
}
