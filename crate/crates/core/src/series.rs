//! Truncated formal power series with polynomial coefficients.
//!
//! `PolySeries` is a series in one distinguished formal variable whose
//! coefficients are `MultiPoly` values over some shared variable list (an
//! empty list makes the coefficients plain rationals). The truncation order
//! is tracked explicitly: coefficients `0..order` exist, and any access at or
//! beyond `order` is an error, never a silent zero.

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::rational::Rational;

/// Power series truncated to a fixed number of tracked coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySeries {
    coeffs: Vec<MultiPoly>,
}

impl PolySeries {
    /// The zero series with `order` tracked coefficients over `vars`.
    pub fn zero(vars: &[&str], order: usize) -> Self {
        assert!(order > 0, "series must track at least the constant term");
        PolySeries {
            coeffs: vec![MultiPoly::zero(vars); order],
        }
    }

    /// The constant series `1`.
    pub fn one(vars: &[&str], order: usize) -> Self {
        let mut s = PolySeries::zero(vars, order);
        s.coeffs[0] = MultiPoly::one(vars);
        s
    }

    /// Build from explicit coefficients (their count fixes the order).
    pub fn from_coeffs(coeffs: Vec<MultiPoly>) -> Self {
        assert!(!coeffs.is_empty());
        PolySeries { coeffs }
    }

    /// Number of tracked coefficients.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of the k-th power of the series variable.
    pub fn coeff(&self, k: usize) -> Result<&MultiPoly> {
        self.coeffs.get(k).ok_or_else(|| {
            Error::Truncation(format!(
                "series coefficient {k} requested, only {} tracked",
                self.coeffs.len()
            ))
        })
    }

    pub fn set_coeff(&mut self, k: usize, value: MultiPoly) -> Result<()> {
        match self.coeffs.get_mut(k) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(Error::Truncation(format!(
                "series coefficient {k} out of tracked range {}",
                self.coeffs.len()
            ))),
        }
    }

    /// Drop coefficients so only `order` remain.
    pub fn truncate(&self, order: usize) -> Result<PolySeries> {
        if order == 0 || order > self.coeffs.len() {
            return Err(Error::Truncation(format!(
                "cannot truncate series of order {} to {order}",
                self.coeffs.len()
            )));
        }
        Ok(PolySeries {
            coeffs: self.coeffs[..order].to_vec(),
        })
    }

    pub fn add(&self, other: &PolySeries) -> PolySeries {
        let order = self.order().min(other.order());
        let coeffs = (0..order)
            .map(|k| &self.coeffs[k] + &other.coeffs[k])
            .collect();
        PolySeries { coeffs }
    }

    pub fn sub(&self, other: &PolySeries) -> PolySeries {
        let order = self.order().min(other.order());
        let coeffs = (0..order)
            .map(|k| &self.coeffs[k] - &other.coeffs[k])
            .collect();
        PolySeries { coeffs }
    }

    pub fn scale(&self, c: &Rational) -> PolySeries {
        PolySeries {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &PolySeries) -> PolySeries {
        let order = self.order().min(other.order());
        let zero = MultiPoly::zero(
            &self.coeffs[0]
                .vars()
                .iter()
                .map(String::as_str)
                .collect::<Vec<_>>(),
        );
        let mut coeffs = vec![zero; order];
        for (i, a) in self.coeffs.iter().enumerate().take(order) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= order {
                    break;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        PolySeries { coeffs }
    }

    /// Derivative with respect to the series variable; one coefficient is lost.
    pub fn derivative(&self) -> Result<PolySeries> {
        if self.coeffs.len() < 2 {
            return Err(Error::Truncation(
                "cannot differentiate a series with a single tracked coefficient".into(),
            ));
        }
        let coeffs = (1..self.coeffs.len())
            .map(|k| self.coeffs[k].scale(&Rational::from_int(k as i64)))
            .collect();
        Ok(PolySeries { coeffs })
    }

    /// Series exponential. Requires a vanishing constant term.
    ///
    /// Uses the recurrence g_0 = 1, n*g_n = sum_{k=1}^{n} k*f_k*g_{n-k}
    /// obtained from g' = f'g.
    pub fn exp(&self) -> Result<PolySeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument(
                "series exp requires zero constant term".into(),
            ));
        }
        let order = self.order();
        let vars: Vec<&str> = self.coeffs[0].vars().iter().map(String::as_str).collect();
        let mut out = PolySeries::one(&vars, order);
        for n in 1..order {
            let mut acc = MultiPoly::zero(&vars);
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let term = &self.coeffs[k] * &out.coeffs[n - k];
                acc = &acc + &term.scale(&Rational::from_int(k as i64));
            }
            out.coeffs[n] = acc.scale(&Rational::new(1, n as i64).expect("n > 0"));
        }
        Ok(out)
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, n: u32) -> PolySeries {
        let vars: Vec<&str> = self.coeffs[0].vars().iter().map(String::as_str).collect();
        let mut acc = PolySeries::one(&vars, self.order());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    /// exp(r) truncated: coefficients 1/k!.
    #[test]
    fn exp_of_r() {
        let order = 8;
        let mut f = PolySeries::zero(&[], order);
        f.set_coeff(1, MultiPoly::one(&[])).unwrap();
        let g = f.exp().unwrap();
        let mut fact = 1i64;
        for k in 0..order {
            if k > 0 {
                fact *= k as i64;
            }
            assert_eq!(g.coeff(k).unwrap().as_constant().unwrap(), rat(1, fact));
        }
    }

    #[test]
    fn exp_is_multiplicative() {
        let order = 10;
        let mut f = PolySeries::zero(&[], order);
        f.set_coeff(1, MultiPoly::constant(&[], rat(2, 3))).unwrap();
        f.set_coeff(2, MultiPoly::constant(&[], rat(-1, 2)))
            .unwrap();
        let mut g = PolySeries::zero(&[], order);
        g.set_coeff(1, MultiPoly::constant(&[], rat(1, 5))).unwrap();
        g.set_coeff(3, MultiPoly::constant(&[], rat(4, 7))).unwrap();
        let lhs = f.add(&g).exp().unwrap();
        let rhs = f.exp().unwrap().mul(&g.exp().unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn access_beyond_order_is_error() {
        let s = PolySeries::one(&[], 4);
        assert!(s.coeff(3).is_ok());
        assert!(s.coeff(4).is_err());
        assert!(s.truncate(5).is_err());
    }

    #[test]
    fn product_truncates_to_min_order() {
        let a = PolySeries::one(&[], 5);
        let b = PolySeries::one(&[], 3);
        assert_eq!(a.mul(&b).order(), 3);
    }
}
