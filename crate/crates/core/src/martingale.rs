//! The polynomial martingales M_n(x,t) and their algebra.
//!
//! M_n(x,t) = sum_j C(n,j) m_{n-j}(-t) x^j is monic of degree n in x and
//! M_n(X_t,t) is a martingale. This module builds the family, implements the
//! conditional-expectation operator that makes the martingale property a
//! decidable trivariate polynomial identity, expands the products M_1*M_n
//! and M_2*M_n back in the M-basis, and computes the cross moments
//! E[M_k M_n](t) two independent ways: the derivative formula for the t^j
//! coefficients, and brute monomial expectations through the moment table.

use serde::Serialize;

use crate::cumulant::CumulantSpec;
use crate::error::{Error, Result};
use crate::moments::MomentTable;
use crate::poly::MultiPoly;
use crate::rational::{binomial_r, factorial_r, Rational};
use crate::series::PolySeries;

const TX: [&str; 2] = ["t", "x"];
const STX: [&str; 3] = ["s", "t", "x"];

/// The martingale polynomials M_0..M_N for one spec, over variables (t, x).
#[derive(Clone, Debug)]
pub struct MartingaleFamily {
    table: MomentTable,
    m: Vec<MultiPoly>,
}

impl MartingaleFamily {
    /// Build M_0..M_n_max. The moment table is carried to the full spec
    /// order so monomial expectations of products up to that degree work.
    pub fn new(spec: &CumulantSpec, n_max: usize) -> Result<Self> {
        if n_max > spec.order() {
            return Err(Error::Truncation(format!(
                "family to M_{n_max} needs c_{n_max}, spec has order {}",
                spec.order()
            )));
        }
        let table = MomentTable::new(spec, spec.order())?;
        let x = MultiPoly::var(&TX, "x")?;
        let mut polys = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut p = MultiPoly::zero(&TX);
            for j in 0..=n {
                let neg = table.negative_time(n - j)?.lift(&TX)?;
                p = &p + &(&neg * &x.pow(j as u32)).scale(&binomial_r(n, j));
            }
            polys.push(p);
        }
        Ok(MartingaleFamily { table, m: polys })
    }

    pub fn spec(&self) -> &CumulantSpec {
        self.table.spec()
    }

    pub fn table(&self) -> &MomentTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.m.len() - 1
    }

    /// M_n(x, t).
    pub fn poly(&self, n: usize) -> Result<&MultiPoly> {
        self.m.get(n).ok_or_else(|| {
            Error::Truncation(format!(
                "M_{n} requested but the family stops at {}",
                self.m.len() - 1
            ))
        })
    }

    /// M_n via the exponential-martingale generating function: the
    /// coefficient of r^n/n! in exp(rx - t f(r)), computed by genuine series
    /// exponentiation. Cross-check route for `poly`.
    pub fn poly_by_generating_function(&self, n: usize) -> Result<MultiPoly> {
        let order = n + 1;
        let spec = self.spec();
        if n > spec.order() {
            return Err(Error::Truncation(format!(
                "generating-function route for M_{n} needs c_{n}"
            )));
        }
        let t = MultiPoly::var(&TX, "t")?;
        let x = MultiPoly::var(&TX, "x")?;
        let mut minus_tf = PolySeries::zero(&TX, order);
        for k in 1..order {
            minus_tf.set_coeff(k, t.scale(&(-spec.c(k)? / &factorial_r(k))))?;
        }
        let exp_tf = minus_tf.exp()?;
        let mut exp_rx = PolySeries::zero(&TX, order);
        for j in 0..order {
            exp_rx.set_coeff(j, x.pow(j as u32).scale(&factorial_r(j).recip()?))?;
        }
        Ok(exp_rx.mul(&exp_tf).coeff(n)?.scale(&factorial_r(n)))
    }

    /// E p(X_t, t) for a polynomial over (t, x): every monomial x^a t^b
    /// contributes coef * m_a(t) * t^b.
    pub fn expectation_of(&self, p: &MultiPoly) -> Result<MultiPoly> {
        let deg = p.degree_in("x")?;
        if deg as usize > self.table.order() {
            return Err(Error::Truncation(format!(
                "expectation of x-degree {deg} needs moments beyond the table"
            )));
        }
        let mut out = MultiPoly::zero(&["t"]);
        for (exps, coef) in p.terms() {
            // Variables are sorted (t, x): exps = [b, a].
            let (b, a) = (exps[0], exps[1]);
            let mut term = vec![0u32; 1];
            term[0] = b;
            let mut contrib = MultiPoly::zero(&["t"]);
            contrib.add_term(term, coef.clone());
            out = &out + &(&contrib * self.table.m(a as usize)?);
        }
        Ok(out)
    }

    /// E M_n(X_t, t) as a polynomial in t (zero for n >= 1).
    pub fn expectation_poly(&self, n: usize) -> Result<MultiPoly> {
        self.expectation_of(self.poly(n)?)
    }

    /// The conditional expectation E(p(X_t, t) | X_s = x) as an exact
    /// polynomial in (s, t, x), both times symbolic. Powers of X_t expand
    /// through the increment: E(X_t^j | X_s = x) =
    /// sum_m C(j,m) x^m m_{j-m}(t-s).
    pub fn conditional_expectation(&self, p: &MultiPoly) -> Result<MultiPoly> {
        let deg = p.degree_in("x")? as usize;
        if deg > self.table.order() {
            return Err(Error::Truncation(format!(
                "conditional expectation of x-degree {deg} exceeds the table order {}",
                self.table.order()
            )));
        }
        let s = MultiPoly::var(&STX, "s")?;
        let t = MultiPoly::var(&STX, "t")?;
        let x = MultiPoly::var(&STX, "x")?;
        let t_minus_s = &t - &s;
        // m_a(t-s) for every needed a.
        let mut inc = Vec::with_capacity(deg + 1);
        for a in 0..=deg {
            inc.push(self.table.m(a)?.lift(&STX)?.substitute("t", &t_minus_s)?);
        }
        let mut out = MultiPoly::zero(&STX);
        for (exps, coef) in p.terms() {
            let (b, a) = (exps[0], exps[1] as usize);
            let mut cond_power = MultiPoly::zero(&STX);
            for m in 0..=a {
                cond_power =
                    &cond_power + &(&x.pow(m as u32) * &inc[a - m]).scale(&binomial_r(a, m));
            }
            out = &out + &(&cond_power * &t.pow(b)).scale(coef);
        }
        Ok(out)
    }

    /// Expand a polynomial over (t, x) in the M-basis by monic triangular
    /// back-substitution: returns a_0..a_d with p = sum_j a_j(t) M_j(x,t).
    pub fn expand_in_m_basis(&self, p: &MultiPoly) -> Result<Vec<MultiPoly>> {
        let deg = p.degree_in("x")? as usize;
        if deg > self.order() {
            return Err(Error::Truncation(format!(
                "x-degree {deg} exceeds the family order {}",
                self.order()
            )));
        }
        let mut residual = p.clone();
        let mut coeffs = vec![MultiPoly::zero(&["t"]); deg + 1];
        for j in (0..=deg).rev() {
            let a_j = residual.coeff_of("x", j as u32)?;
            if a_j.is_zero() {
                continue;
            }
            residual = &residual - &(&a_j * self.poly(j)?);
            coeffs[j] = project_to_t(&a_j)?;
        }
        if !residual.is_zero() {
            return Err(Error::Internal(
                "M-basis back-substitution left a residual".into(),
            ));
        }
        Ok(coeffs)
    }
}

/// Drop the x variable from a polynomial over (t, x) in which x no longer
/// occurs.
fn project_to_t(p: &MultiPoly) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero(&["t"]);
    for (exps, coef) in p.terms() {
        if exps[1] != 0 {
            return Err(Error::Internal("x still occurs in a t-coefficient".into()));
        }
        out.add_term(vec![exps[0]], coef.clone());
    }
    Ok(out)
}

/// A verified expansion of M_i * M_n in the M-basis.
#[derive(Clone, Debug, Serialize)]
pub struct ProductExpansion {
    /// Which martingale multiplies M_n (1 or 2).
    pub multiplier: usize,
    pub n: usize,
    /// Coefficient (a polynomial in t) on M_j, for j = 0..len-1.
    pub on: Vec<MultiPoly>,
    /// E[M_multiplier M_n](t), the coefficient on M_0.
    pub expectation: MultiPoly,
}

/// Lemma-style expansion M_1 M_n = M_{n+1} + t sum_k C(n,k) c_{k+1} M_{n-k},
/// verified against direct multiplication plus back-substitution.
pub fn product_expand_m1(family: &MartingaleFamily, n: usize) -> Result<ProductExpansion> {
    if n + 1 > family.order() {
        return Err(Error::Truncation(format!(
            "expanding M_1 M_{n} needs the family through M_{}",
            n + 1
        )));
    }
    let spec = family.spec();
    let t = MultiPoly::var(&["t"], "t")?;
    let mut on = vec![MultiPoly::zero(&["t"]); n + 2];
    on[n + 1] = MultiPoly::one(&["t"]);
    for k in 1..=n {
        let coef = &binomial_r(n, k) * spec.c(k + 1)?;
        on[n - k] = &on[n - k] + &t.scale(&coef);
    }
    verify_expansion(family, 1, n, &on)?;
    Ok(ProductExpansion {
        multiplier: 1,
        n,
        expectation: on[0].clone(),
        on,
    })
}

/// Expansion of M_2 M_n with the doubled-binomial t-terms and the t^2 block,
/// verified against direct multiplication plus back-substitution.
pub fn product_expand_m2(family: &MartingaleFamily, n: usize) -> Result<ProductExpansion> {
    if n + 2 > family.order() {
        return Err(Error::Truncation(format!(
            "expanding M_2 M_{n} needs the family through M_{}",
            n + 2
        )));
    }
    let spec = family.spec();
    let t = MultiPoly::var(&["t"], "t")?;
    let t2 = t.pow(2);
    let mut on = vec![MultiPoly::zero(&["t"]); n + 3];
    on[n + 2] = MultiPoly::one(&["t"]);
    let two = Rational::from_int(2);
    on[n] = &on[n] + &t.scale(&(&(&two * &Rational::from_int(n as i64)) * spec.c(2)?));
    for k in 2..=(n + 1) {
        let coef = &(&binomial_r(n, k - 1) + &(&two * &binomial_r(n, k))) * spec.c(k + 1)?;
        on[n + 1 - k] = &on[n + 1 - k] + &t.scale(&coef);
    }
    for l in 2..=n {
        let mut inner = Rational::zero();
        for k in 1..=(l - 1) {
            inner += &(&binomial_r(l, k) * &(spec.c(k + 1)? * spec.c(l - k + 1)?));
        }
        let coef = &binomial_r(n, l) * &inner;
        on[n - l] = &on[n - l] + &t2.scale(&coef);
    }
    verify_expansion(family, 2, n, &on)?;
    Ok(ProductExpansion {
        multiplier: 2,
        n,
        expectation: on[0].clone(),
        on,
    })
}

fn verify_expansion(family: &MartingaleFamily, i: usize, n: usize, on: &[MultiPoly]) -> Result<()> {
    let direct = family.poly(i)? * family.poly(n)?;
    let expanded = family.expand_in_m_basis(&direct)?;
    for (j, formula) in on.iter().enumerate() {
        let actual = expanded
            .get(j)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(&["t"]));
        if formula != &actual {
            return Err(Error::Internal(format!(
                "M_{i} M_{n} expansion disagrees with back-substitution at M_{j}: formula {formula}, direct {actual}"
            )));
        }
    }
    Ok(())
}

/// E[M_k M_n](t) = sum_{j=1..min(n,k)} d_j t^j.
///
/// The t^j coefficient is read off the generating identity
/// E N_t(u) N_t(v) = exp(t (f(u+v) - f(u) - f(v))):
/// d_j = (n! k!/j!) [u^n v^k] g(u,v)^j with g = f(u+v) - f(u) - f(v).
/// The one-power-of-h display for d_j ((h^j)^{(n+k-j)}(0), h = f' - c_1)
/// holds only at the extremes j = 1 and j = min(n,k); see
/// `cross_moment_printed_form` and the arbitration report.
#[derive(Clone, Debug, Serialize)]
pub struct CrossMomentPoly {
    pub n: usize,
    pub k: usize,
    pub poly: MultiPoly,
    pub d: Vec<Rational>,
}

/// Drop monomials exceeding the (u, v) degree caps.
fn truncate_uv(p: &MultiPoly, n: u32, k: u32) -> MultiPoly {
    let mut out = MultiPoly::zero(&["u", "v"]);
    for (exps, coef) in p.terms() {
        if exps[0] <= n && exps[1] <= k {
            out.add_term(exps.to_vec(), coef.clone());
        }
    }
    out
}

/// Cross moment from the exponential generating identity. Requires
/// cumulants through c_{n+k}.
pub fn cross_moment(spec: &CumulantSpec, n: usize, k: usize) -> Result<CrossMomentPoly> {
    if n == 0 || k == 0 {
        // E M_0 M_j = E M_j: 1 for j = 0, else 0.
        let poly = if n == 0 && k == 0 {
            MultiPoly::one(&["t"])
        } else {
            MultiPoly::zero(&["t"])
        };
        return Ok(CrossMomentPoly {
            n,
            k,
            poly,
            d: vec![],
        });
    }
    if n + k > spec.order() {
        return Err(Error::Truncation(format!(
            "cross moment E[M_{n} M_{k}] needs cumulants through c_{}",
            n + k
        )));
    }
    // g(u, v) keeps only mixed monomials: (u+v)^m - u^m - v^m.
    let uv = ["u", "v"];
    let mut g = MultiPoly::zero(&uv);
    for m in 2..=(n + k) {
        let cm = spec.c(m)?;
        if cm.is_zero() {
            continue;
        }
        let scale = cm / &factorial_r(m);
        for i in 1..m {
            if i > n || m - i > k {
                continue;
            }
            g.add_term(vec![i as u32, (m - i) as u32], &binomial_r(m, i) * &scale);
        }
    }
    let t = MultiPoly::var(&["t"], "t")?;
    let target = [n as u32, k as u32];
    let nk_fact = &factorial_r(n) * &factorial_r(k);
    let mut poly = MultiPoly::zero(&["t"]);
    let mut d = Vec::new();
    let mut g_pow = MultiPoly::one(&uv);
    for j in 1..=n.min(k) {
        g_pow = truncate_uv(&(&g_pow * &g), n as u32, k as u32);
        let d_j = &(&nk_fact / &factorial_r(j)) * &g_pow.coefficient(&target);
        poly = &poly + &t.pow(j as u32).scale(&d_j);
        d.push(d_j);
    }
    Ok(CrossMomentPoly { n, k, poly, d })
}

/// The printed one-power form d_j = (h^j)^{(n+k-j)}(0), h = f' - c_1, kept
/// verbatim so it can be arbitrated against the generating identity.
pub fn cross_moment_printed_form(
    spec: &CumulantSpec,
    n: usize,
    k: usize,
) -> Result<CrossMomentPoly> {
    if n + k > spec.order() {
        return Err(Error::Truncation(format!(
            "cross moment E[M_{n} M_{k}] needs cumulants through c_{}",
            n + k
        )));
    }
    let order = n + k;
    let mut h = PolySeries::zero(&[], order);
    for i in 1..order {
        h.set_coeff(
            i,
            MultiPoly::constant(&[], spec.c(i + 1)? / &factorial_r(i)),
        )?;
    }
    let t = MultiPoly::var(&["t"], "t")?;
    let mut poly = MultiPoly::zero(&["t"]);
    let mut d = Vec::new();
    let mut h_pow = PolySeries::one(&[], order);
    for j in 1..=n.min(k) {
        h_pow = h_pow.mul(&h);
        let coeff = h_pow
            .coeff(n + k - j)?
            .as_constant()
            .expect("series over no variables");
        let d_j = &coeff * &factorial_r(n + k - j);
        poly = &poly + &t.pow(j as u32).scale(&d_j);
        d.push(d_j);
    }
    Ok(CrossMomentPoly { n, k, poly, d })
}

/// Cross moment by expanding M_n M_k in monomials and taking expectations
/// through the moment table; the independent oracle for `cross_moment`.
pub fn cross_moment_by_expectation(
    family: &MartingaleFamily,
    n: usize,
    k: usize,
) -> Result<MultiPoly> {
    let product = family.poly(n)? * family.poly(k)?;
    family.expectation_of(&product)
}
