//! Sparse multivariate polynomials over `Rational`.
//!
//! A `MultiPoly` is a map from exponent vectors to nonzero coefficients, over
//! a fixed, lexicographically sorted list of variable names. The
//! representation is canonical (no zero coefficient is ever stored, exponent
//! vectors always match the variable list), so structural equality decides
//! polynomial identity, which is what turns "this identity of the moment
//! functions holds" into a plain `assert_eq!`.
//!
//! Binary operations require identical variable lists; use [`MultiPoly::lift`]
//! to extend a polynomial to a larger variable set first.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Sparse multivariate polynomial in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    /// The zero polynomial over the given variables (sorted, deduplicated).
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly {
            vars: sorted_vars(vars),
            terms: BTreeMap::new(),
        }
    }

    /// A constant polynomial.
    pub fn constant(vars: &[&str], c: Rational) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    pub fn one(vars: &[&str]) -> Self {
        MultiPoly::constant(vars, Rational::one())
    }

    /// The polynomial `name` over `vars`. Errors if `name` is not in `vars`.
    pub fn var(vars: &[&str], name: &str) -> Result<Self> {
        let mut p = MultiPoly::zero(vars);
        let idx = p.var_index(name)?;
        let mut exps = vec![0; p.vars.len()];
        exps[idx] = 1;
        p.terms.insert(exps, Rational::one());
        Ok(p)
    }

    /// Variable list (always sorted).
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Iterate terms as (exponent vector, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a constant, if no variable actually occurs.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (exps, c) = self.terms.iter().next().unwrap();
                exps.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Highest power of `var` occurring in any term (0 for the zero polynomial).
    pub fn degree_in(&self, var: &str) -> Result<u32> {
        let idx = self.var_index(var)?;
        Ok(self.terms.keys().map(|e| e[idx]).max().unwrap_or(0))
    }

    /// Coefficient of the exact monomial with the given exponent vector.
    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of `var^power` as a polynomial in the remaining variables
    /// (same variable list; the extracted variable simply no longer occurs).
    pub fn coeff_of(&self, var: &str, power: u32) -> Result<MultiPoly> {
        let idx = self.var_index(var)?;
        let mut out = MultiPoly::zero_like(self);
        for (exps, c) in &self.terms {
            if exps[idx] == power {
                let mut e = exps.clone();
                e[idx] = 0;
                out.add_term(e, c.clone());
            }
        }
        Ok(out)
    }

    /// Add a single term, maintaining canonical form.
    pub fn add_term(&mut self, exps: Vec<u32>, coef: Rational) {
        assert_eq!(
            exps.len(),
            self.vars.len(),
            "exponent vector length mismatch"
        );
        if coef.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(c) => {
                *c += &coef;
                if c.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, coef);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero_like(self);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one_like(self);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative with respect to `var`.
    pub fn derivative(&self, var: &str) -> Result<MultiPoly> {
        let idx = self.var_index(var)?;
        let mut out = MultiPoly::zero_like(self);
        for (exps, c) in &self.terms {
            let e = exps[idx];
            if e == 0 {
                continue;
            }
            let mut d = exps.clone();
            d[idx] = e - 1;
            out.add_term(d, c * &Rational::from_int(e as i64));
        }
        Ok(out)
    }

    /// Partial evaluation. Bound variables must belong to the polynomial;
    /// they stay in the variable list but no longer occur in any term, so a
    /// total evaluation leaves a constant recoverable via [`as_constant`].
    ///
    /// [`as_constant`]: MultiPoly::as_constant
    pub fn eval(&self, bindings: &[(&str, Rational)]) -> Result<MultiPoly> {
        let mut idx_val: Vec<(usize, &Rational)> = Vec::with_capacity(bindings.len());
        for (name, v) in bindings {
            idx_val.push((self.var_index(name)?, v));
        }
        let mut out = MultiPoly::zero_like(self);
        for (exps, c) in &self.terms {
            let mut coef = c.clone();
            let mut e = exps.clone();
            for &(i, v) in &idx_val {
                if e[i] > 0 {
                    coef *= &v.pow(e[i] as i32).expect("nonnegative power");
                    e[i] = 0;
                }
            }
            out.add_term(e, coef);
        }
        Ok(out)
    }

    /// Total evaluation to a scalar; every variable must be bound.
    pub fn eval_all(&self, bindings: &[(&str, Rational)]) -> Result<Rational> {
        let evaluated = self.eval(bindings)?;
        evaluated
            .as_constant()
            .ok_or_else(|| Error::InvalidArgument("eval_all: not all variables were bound".into()))
    }

    /// Substitute `replacement` (over the same variable list) for `var`.
    pub fn substitute(&self, var: &str, replacement: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_vars(replacement)?;
        let idx = self.var_index(var)?;
        // Cache powers of the replacement up to the needed degree.
        let max_pow = self.terms.keys().map(|e| e[idx]).max().unwrap_or(0);
        let mut powers: Vec<MultiPoly> = Vec::with_capacity(max_pow as usize + 1);
        powers.push(MultiPoly::one_like(self));
        for k in 1..=max_pow {
            let next = &powers[(k - 1) as usize] * replacement;
            powers.push(next);
        }
        let mut out = MultiPoly::zero_like(self);
        for (exps, c) in &self.terms {
            let mut rest = exps.clone();
            let e = rest[idx];
            rest[idx] = 0;
            let mut base = MultiPoly::zero_like(self);
            base.add_term(rest, c.clone());
            out = &out + &(&base * &powers[e as usize]);
        }
        Ok(out)
    }

    /// Rename a variable. The result is over the sorted renamed list; the new
    /// name must not already occur.
    pub fn rename_var(&self, old: &str, new: &str) -> Result<MultiPoly> {
        let idx = self.var_index(old)?;
        if self.vars.iter().any(|v| v == new) {
            return Err(Error::InvalidArgument(format!(
                "rename target {new:?} already present"
            )));
        }
        let mut names: Vec<String> = self.vars.clone();
        names[idx] = new.to_string();
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        let vars: Vec<String> = order.iter().map(|&i| names[i].clone()).collect();
        let mut terms = BTreeMap::new();
        for (exps, c) in &self.terms {
            let e: Vec<u32> = order.iter().map(|&i| exps[i]).collect();
            terms.insert(e, c.clone());
        }
        Ok(MultiPoly { vars, terms })
    }

    /// Extend to a larger variable set. `vars` must contain every current
    /// variable.
    pub fn lift(&self, vars: &[&str]) -> Result<MultiPoly> {
        let target = sorted_vars(vars);
        let mut positions = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            match target.iter().position(|t| t == v) {
                Some(p) => positions.push(p),
                None => {
                    return Err(Error::InvalidArgument(format!(
                        "lift target does not contain variable {v:?}"
                    )))
                }
            }
        }
        let mut terms = BTreeMap::new();
        for (exps, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &p) in positions.iter().enumerate() {
                e[p] = exps[i];
            }
            terms.insert(e, c.clone());
        }
        Ok(MultiPoly {
            vars: target,
            terms,
        })
    }

    fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown variable {name:?}")))
    }

    fn check_same_vars(&self, other: &MultiPoly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::InvalidArgument(format!(
                "variable lists differ: {:?} vs {:?}",
                self.vars, other.vars
            )));
        }
        Ok(())
    }

    fn zero_like(p: &MultiPoly) -> MultiPoly {
        MultiPoly {
            vars: p.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    fn one_like(p: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero_like(p);
        out.terms.insert(vec![0; p.vars.len()], Rational::one());
        out
    }

    /// Checked addition (same variable lists required).
    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    /// Checked product (same variable lists required).
    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_vars(other)?;
        let mut out = MultiPoly::zero_like(self);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }
}

fn sorted_vars(vars: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    v.sort();
    v.dedup();
    v
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("variable lists differ in +")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(&-rhs).expect("variable lists differ in -")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("variable lists differ in *")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Sort with the last variable major (x before t), highest degree
        // first: martingale polynomials then lead with the monic x^n term.
        let mut entries: Vec<(&Vec<u32>, &Rational)> = self.terms.iter().collect();
        entries.sort_by(|a, b| {
            let ra = a.0.iter().rev();
            let rb = b.0.iter().rev();
            rb.cmp(ra)
        });
        let mut first = true;
        for (exps, c) in entries {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let is_const = exps.iter().all(|&e| e == 0);
            if !mag.is_one() || is_const {
                write!(f, "{mag}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut need_star = false;
            for (v, &e) in self.vars.iter().zip(exps) {
                if e == 0 {
                    continue;
                }
                if need_star {
                    write!(f, "*")?;
                }
                need_star = true;
                if e == 1 {
                    write!(f, "{v}")?;
                } else {
                    write!(f, "{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---- JSON form: variables once in a header, then exp/coef records ----

#[derive(Serialize, Deserialize)]
struct TermRecord {
    exp: Vec<u32>,
    coef: Rational,
}

#[derive(Serialize, Deserialize)]
struct PolyRecord {
    vars: Vec<String>,
    terms: Vec<TermRecord>,
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRecord {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRecord {
                    exp: e.clone(),
                    coef: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = PolyRecord::deserialize(d)?;
        let mut sorted = rec.vars.clone();
        sorted.sort();
        sorted.dedup();
        if sorted != rec.vars {
            return Err(serde::de::Error::custom(
                "variables must be sorted and distinct",
            ));
        }
        let mut p = MultiPoly {
            vars: rec.vars,
            terms: BTreeMap::new(),
        };
        for t in rec.terms {
            if t.exp.len() != p.vars.len() {
                return Err(serde::de::Error::custom("exponent vector length mismatch"));
            }
            p.add_term(t.exp, t.coef);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn xt() -> (MultiPoly, MultiPoly) {
        let vars = ["x", "t"];
        (
            MultiPoly::var(&vars, "x").unwrap(),
            MultiPoly::var(&vars, "t").unwrap(),
        )
    }

    #[test]
    fn product_of_conjugates() {
        let (x, t) = xt();
        let prod = &(&x - &t) * &(&x + &t);
        let expect = &(&x * &x) - &(&t * &t);
        assert_eq!(prod, expect);
    }

    #[test]
    fn multiply_by_one_is_identity() {
        let (x, t) = xt();
        let p = &(&x * &x) - &t.scale(&r(2));
        let one = MultiPoly::one(&["x", "t"]);
        assert_eq!(&p * &one, p);
    }

    #[test]
    fn square_of_difference() {
        let (x, t) = xt();
        let sq = (&x - &t).pow(2);
        let mut expect = &x * &x;
        expect = &expect - &(&x * &t).scale(&r(2));
        expect = &expect + &(&t * &t);
        assert_eq!(sq, expect);
    }

    #[test]
    fn mismatched_vars_rejected() {
        let a = MultiPoly::var(&["x"], "x").unwrap();
        let b = MultiPoly::var(&["y"], "y").unwrap();
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn derivative_examples() {
        let t = MultiPoly::var(&["t"], "t").unwrap();
        // t^3 + 3t^2 + t
        let p = &(&t.pow(3) + &t.pow(2).scale(&r(3))) + &t;
        let d = p.derivative("t").unwrap();
        let expect = &(&t.pow(2).scale(&r(3)) + &t.scale(&r(6))) + &MultiPoly::one(&["t"]);
        assert_eq!(d, expect);

        let c = MultiPoly::constant(&["x"], r(5));
        assert!(c.derivative("x").unwrap().is_zero());

        let (x, tt) = xt();
        let q = &(&x * &x) - &(&x * &tt).scale(&r(2));
        let dq = q.derivative("x").unwrap();
        let expect = &x.scale(&r(2)) - &tt.scale(&r(2));
        assert_eq!(dq, expect);
        assert!(q.derivative("z").is_err());
    }

    #[test]
    fn eval_partial_and_total() {
        let (x, t) = xt();
        let p = &(&x * &x) - &t; // x^2 - t
        let at_t1 = p.eval(&[("t", r(1))]).unwrap();
        let expect = &(&x * &x) - &MultiPoly::one(&["x", "t"]);
        assert_eq!(at_t1, expect);

        let v = p.eval_all(&[("x", r(2)), ("t", r(1))]).unwrap();
        assert_eq!(v, r(3));

        assert_eq!(p.eval(&[]).unwrap(), p);
        assert!(p.eval(&[("z", r(1))]).is_err());
        assert!(p.eval_all(&[("x", r(2))]).is_err());
    }

    #[test]
    fn substitute_negates_time() {
        let t = MultiPoly::var(&["t"], "t").unwrap();
        let p = &(&t * &t) + &t; // t^2 + t
        let sub = p.substitute("t", &-&t).unwrap();
        let expect = &(&t * &t) - &t;
        assert_eq!(sub, expect);
    }

    #[test]
    fn lift_and_rename() {
        let t = MultiPoly::var(&["t"], "t").unwrap();
        let lifted = t.lift(&["s", "t", "x"]).unwrap();
        assert_eq!(lifted.vars(), ["s", "t", "x"]);
        let renamed = t.rename_var("t", "s").unwrap();
        assert_eq!(renamed.vars(), ["s"]);
        assert!(lifted.rename_var("t", "x").is_err());
    }

    #[test]
    fn display_is_readable() {
        let (x, t) = xt();
        let p = &(&x * &x) - &(&x * &t).scale(&r(2));
        assert_eq!(p.to_string(), "x^2 - 2*t*x");
    }

    #[test]
    fn json_round_trip() {
        let (x, t) = xt();
        let p = &(&x * &x).scale(&Rational::new(3, 4).unwrap()) - &t;
        let js = serde_json::to_string(&p).unwrap();
        assert!(js.contains("\"vars\""));
        let back: MultiPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
    }
}
