//! Monic orthogonal polynomials of the marginal law at a fixed time, and
//! their connection coefficients with the martingale family.
//!
//! Orthogonalization runs at a fixed rational t0 > 0 with the inner product
//! <p, q> = E[p(X_t0) q(X_t0)] read off the exact moment table. Classical
//! Gram-Schmidt is fine here: there is no rounding to destabilize. A marginal
//! with finite support makes some norm hit zero; construction stops there and
//! says so.

use serde::Serialize;

use crate::cumulant::CumulantSpec;
use crate::error::{Error, Result};
use crate::martingale::{cross_moment, CrossMomentPoly, MartingaleFamily};
use crate::moments::MomentTable;
use crate::poly::MultiPoly;
use crate::rational::Rational;

/// Monic orthogonal basis at time t0, with norms E[Q_n^2].
#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalBasis {
    pub t0: Rational,
    /// Monic polynomials in x, Q_0 = 1.
    pub q: Vec<MultiPoly>,
    /// norms[n] = E[Q_n(X_t0)^2] > 0 for every completed degree.
    pub norms: Vec<Rational>,
    /// Set when construction halted early: (first bad degree, reason).
    pub degeneracy: Option<(usize, String)>,
}

impl OrthogonalBasis {
    /// Highest completed degree.
    pub fn max_degree(&self) -> usize {
        self.q.len() - 1
    }
}

/// Moments of the marginal at t0, as a lookup for inner products.
struct MarginalMoments {
    mu: Vec<Rational>,
}

impl MarginalMoments {
    fn new(spec: &CumulantSpec, t0: &Rational, through: usize) -> Result<Self> {
        let table = MomentTable::new(spec, through)?;
        let mu = (0..=through)
            .map(|a| table.m_at(a, t0))
            .collect::<Result<Vec<_>>>()?;
        Ok(MarginalMoments { mu })
    }

    /// E[(p*q)(X_t0)] for polynomials in x.
    fn inner(&self, p: &MultiPoly, q: &MultiPoly) -> Rational {
        let product = p * q;
        let mut acc = Rational::zero();
        for (exps, coef) in product.terms() {
            acc += &(coef * &self.mu[exps[0] as usize]);
        }
        acc
    }
}

/// Exact Gram-Schmidt on 1, x, x^2, ... against the marginal law at t0.
///
/// Needs moments through order 2*nmax arising from the spec, so the spec
/// order must be at least 2*nmax. A zero norm stops construction with a
/// degeneracy report (finitely supported marginal); a negative norm stops it
/// with a not-a-measure report.
pub fn orthogonal_basis(
    spec: &CumulantSpec,
    t0: &Rational,
    nmax: usize,
) -> Result<OrthogonalBasis> {
    if !t0.is_positive() {
        return Err(Error::InvalidArgument(
            "orthogonalization time t0 must be positive".into(),
        ));
    }
    let moments = MarginalMoments::new(spec, t0, 2 * nmax)?;
    let x = MultiPoly::var(&["x"], "x")?;
    let mut q: Vec<MultiPoly> = vec![MultiPoly::one(&["x"])];
    let mut norms = vec![Rational::one()];
    let mut degeneracy = None;
    for n in 1..=nmax {
        let mut candidate = x.pow(n as u32);
        for j in 0..n {
            let coef = &moments.inner(&candidate, &q[j]) / &norms[j];
            candidate = &candidate - &q[j].scale(&coef);
        }
        let norm = moments.inner(&candidate, &candidate);
        if norm.is_zero() {
            degeneracy = Some((
                n,
                format!("marginal supported on {n} points: E Q_{n}^2 = 0"),
            ));
            break;
        }
        if norm.is_negative() {
            degeneracy = Some((
                n,
                format!("E Q_{n}^2 = {norm} < 0: moments do not come from a measure"),
            ));
            break;
        }
        q.push(candidate);
        norms.push(norm);
    }
    Ok(OrthogonalBasis {
        t0: t0.clone(),
        q,
        norms,
        degeneracy,
    })
}

/// Lower-triangular change-of-basis triangles between {M_n} and {Q_n} at t0:
/// M_n = sum_j b_hat[n][j] Q_j and Q_n = sum_j b[n][j] M_j.
#[derive(Clone, Debug, Serialize)]
pub struct ConnectionCoeffs {
    pub t0: Rational,
    pub b: Vec<Vec<Rational>>,
    pub b_hat: Vec<Vec<Rational>>,
    /// Mismatches against the displayed coefficient formulas, if any.
    pub findings: Vec<String>,
}

/// Project each M_n onto the Q-basis at t0 (exact inner products), invert
/// the unitriangular matrix for the reverse triangle, and check the
/// displayed coefficient formulas: unit diagonal and zero constant column,
/// b_hat[n][1] = c_{n+1}/c_2, and the rational expression for b_hat[n][2].
/// Formula mismatches are reported as findings, not hidden.
#[allow(clippy::needless_range_loop)] // triangular index bookkeeping
pub fn connection_coeffs(
    spec: &CumulantSpec,
    t0: &Rational,
    nmax: usize,
) -> Result<ConnectionCoeffs> {
    let basis = orthogonal_basis(spec, t0, nmax)?;
    if let Some((deg, why)) = &basis.degeneracy {
        return Err(Error::DegenerateSpec(format!(
            "orthogonal basis stops at degree {deg}: {why}"
        )));
    }
    let family = MartingaleFamily::new(spec, nmax)?;
    let moments = MarginalMoments::new(spec, t0, 2 * nmax)?;

    let mut b_hat = vec![vec![Rational::zero(); nmax + 1]; nmax + 1];
    for n in 0..=nmax {
        let m_n = martingale_at_t0(&family, n, t0)?;
        for j in 0..=n {
            b_hat[n][j] = &moments.inner(&m_n, &basis.q[j]) / &basis.norms[j];
        }
    }

    // Invert the unitriangular b_hat by forward substitution.
    let mut b = vec![vec![Rational::zero(); nmax + 1]; nmax + 1];
    for n in 0..=nmax {
        for j in (0..=n).rev() {
            if j == n {
                b[n][n] = Rational::one();
                continue;
            }
            let mut acc = Rational::zero();
            for k in (j + 1)..=n {
                acc += &(&b_hat[k][j] * &b[n][k]);
            }
            b[n][j] = -acc;
        }
    }

    let mut findings = Vec::new();
    for n in 1..=nmax {
        if !b_hat[n][n].is_one() || !b[n][n].is_one() {
            return Err(Error::Internal(format!(
                "connection triangles lost the unit diagonal at n = {n}"
            )));
        }
        if !b_hat[n][0].is_zero() || !b[n][0].is_zero() {
            return Err(Error::Internal(format!(
                "connection triangles have a nonzero constant column at n = {n}"
            )));
        }
    }
    let c2 = spec.c(2)?;
    for n in 2..=nmax {
        let expect = spec.c(n + 1)? / c2;
        if b_hat[n][1] != expect {
            findings.push(format!(
                "b_hat[{n}][1] = {} differs from c_{}/c_2 = {}",
                b_hat[n][1],
                n + 1,
                expect
            ));
        }
        if let Some(expect2) = b_hat_n2_formula(spec, t0, n)? {
            if b_hat[n][2] != expect2 {
                findings.push(format!(
                    "b_hat[{n}][2] = {} differs from the displayed formula {expect2}",
                    b_hat[n][2]
                ));
            }
        }
    }
    Ok(ConnectionCoeffs {
        t0: t0.clone(),
        b,
        b_hat,
        findings,
    })
}

/// M_n(x, t0) as a polynomial in x alone.
fn martingale_at_t0(family: &MartingaleFamily, n: usize, t0: &Rational) -> Result<MultiPoly> {
    let at_t0 = family.poly(n)?.eval(&[("t", t0.clone())])?;
    let mut out = MultiPoly::zero(&["x"]);
    for (exps, coef) in at_t0.terms() {
        debug_assert_eq!(exps[0], 0);
        out.add_term(vec![exps[1]], coef.clone());
    }
    Ok(out)
}

/// Displayed formula for b_hat[n][2]:
/// (t c_2 sum_{k=1}^{n-1} C(n,k) c_{k+1} c_{n+1-k} + c_{n+2} c_2 - c_3 c_{n+1})
///   / (2 t c_2^3 + c_2 c_4 - c_3^2).
/// Returns None when the required cumulants are missing.
fn b_hat_n2_formula(spec: &CumulantSpec, t0: &Rational, n: usize) -> Result<Option<Rational>> {
    if n + 2 > spec.order() || spec.order() < 4 {
        return Ok(None);
    }
    let c2 = spec.c(2)?;
    let c3 = spec.c(3)?;
    let c4 = spec.c(4)?;
    let mut sum = Rational::zero();
    for k in 1..n {
        sum += &(&crate::rational::binomial_r(n, k) * &(spec.c(k + 1)? * spec.c(n + 1 - k)?));
    }
    let numerator = &(&(t0 * c2) * &sum) + &(&(spec.c(n + 2)? * c2) - &(c3 * spec.c(n + 1)?));
    let denominator = &(&(t0 * &Rational::from_int(2)) * &c2.pow(3)?) + &(&(c2 * c4) - &(c3 * c3));
    if denominator.is_zero() {
        return Ok(None);
    }
    Ok(Some(&numerator / &denominator))
}

/// Outcome of the orthogonality scan over martingale pairs.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum OrthogonalityWitness {
    /// All cross moments E[M_n M_k], n != k <= nmax, vanish identically.
    Orthogonal,
    /// The lexicographically smallest pair with a nonzero cross moment.
    NonOrthogonal {
        n: usize,
        k: usize,
        cross: CrossMomentPoly,
    },
}

/// Scan pairs (n, k), n < k <= nmax, in lexicographic order and return the
/// first nonzero cross moment as a witness against orthogonality.
pub fn orthogonality_witness(spec: &CumulantSpec, nmax: usize) -> Result<OrthogonalityWitness> {
    for n in 1..=nmax {
        for k in (n + 1)..=nmax {
            if n + k > spec.order() {
                continue;
            }
            let cm = cross_moment(spec, n, k)?;
            if !cm.poly.is_zero() {
                return Ok(OrthogonalityWitness::NonOrthogonal { n, k, cross: cm });
            }
        }
    }
    Ok(OrthogonalityWitness::Orthogonal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn poisson(order: usize) -> CumulantSpec {
        CumulantSpec::new(vec![Rational::one(); order]).unwrap()
    }

    fn gaussian(order: usize) -> CumulantSpec {
        let mut c = vec![Rational::zero(); order];
        c[1] = Rational::one();
        CumulantSpec::new(c).unwrap()
    }

    fn xpoly(coeffs: &[(i64, u32)]) -> MultiPoly {
        let x = MultiPoly::var(&["x"], "x").unwrap();
        let mut p = MultiPoly::zero(&["x"]);
        for &(c, pw) in coeffs {
            p = &p + &x.pow(pw).scale(&Rational::from_int(c));
        }
        p
    }

    #[test]
    fn gaussian_basis_is_hermite() {
        let basis = orthogonal_basis(&gaussian(8), &Rational::one(), 4).unwrap();
        assert!(basis.degeneracy.is_none());
        assert_eq!(basis.q[0], MultiPoly::one(&["x"]));
        assert_eq!(basis.q[2], xpoly(&[(1, 2), (-1, 0)]));
        assert_eq!(basis.q[3], xpoly(&[(1, 3), (-3, 1)]));
    }

    #[test]
    fn poisson_basis_is_charlier() {
        let basis = orthogonal_basis(&poisson(8), &Rational::one(), 4).unwrap();
        assert_eq!(basis.q[1], xpoly(&[(1, 1), (-1, 0)]));
        assert_eq!(basis.q[2], xpoly(&[(1, 2), (-3, 1), (1, 0)]));
    }

    #[test]
    fn basis_is_orthogonal_and_favard_consistent() {
        let specs = [
            poisson(12),
            gaussian(12),
            CumulantSpec::from_ints(&[0, 2, 1, 3, 1, 5, 2, 8, 3, 13, 5, 21]).unwrap(),
        ];
        for spec in specs {
            for t0 in [rat(1, 2), rat(1, 1), rat(3, 1), rat(7, 2)] {
                let basis = orthogonal_basis(&spec, &t0, 5).unwrap();
                let moments = MarginalMoments::new(&spec, &t0, 10).unwrap();
                for i in 0..basis.q.len() {
                    for j in 0..i {
                        assert!(moments.inner(&basis.q[i], &basis.q[j]).is_zero());
                    }
                    assert!(basis.norms[i].is_positive());
                }
                // Three-term recurrence with positive b_n.
                let x = MultiPoly::var(&["x"], "x").unwrap();
                for n in 1..basis.q.len() - 1 {
                    let a_n = &moments.inner(&(&x * &basis.q[n]), &basis.q[n]) / &basis.norms[n];
                    let b_n = &basis.norms[n] / &basis.norms[n - 1];
                    assert!(b_n.is_positive());
                    let rhs = &(&(&x - &MultiPoly::constant(&["x"], a_n)) * &basis.q[n])
                        - &basis.q[n - 1].scale(&b_n);
                    assert_eq!(basis.q[n + 1], rhs, "n = {n}, t0 = {t0}");
                }
            }
        }
    }

    #[test]
    fn deterministic_marginal_truncates() {
        // c_2 = 0: X_t = c_1 t almost surely; Q_1 already has norm 0.
        let spec = CumulantSpec::from_ints(&[3, 0, 0, 0]).unwrap();
        let basis = orthogonal_basis(&spec, &Rational::one(), 2).unwrap();
        assert_eq!(basis.max_degree(), 0);
        let (deg, _) = basis.degeneracy.unwrap();
        assert_eq!(deg, 1);
    }

    #[test]
    fn t0_must_be_positive() {
        assert!(orthogonal_basis(&poisson(4), &Rational::zero(), 2).is_err());
        assert!(orthogonal_basis(&poisson(4), &rat(-1, 2), 2).is_err());
    }

    #[test]
    fn gaussian_connection_is_identity() {
        let cc = connection_coeffs(&gaussian(12), &Rational::one(), 5).unwrap();
        assert!(cc.findings.is_empty(), "{:?}", cc.findings);
        for n in 0..=5 {
            for j in 0..=5 {
                let expect = if n == j {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                assert_eq!(cc.b[n][j], expect);
                assert_eq!(cc.b_hat[n][j], expect);
            }
        }
    }

    #[test]
    fn q2_in_martingale_basis() {
        // Q_2 = M_2 - (c_3/c_2) M_1 for every spec.
        let spec = CumulantSpec::from_ints(&[1, 2, 3, 5, 4, 7, 6, 9]).unwrap();
        let cc = connection_coeffs(&spec, &rat(1, 2), 4).unwrap();
        assert_eq!(cc.b[2][1], -rat(3, 2));
        assert_eq!(cc.b_hat[2][1], rat(3, 2));
        assert!(cc.findings.is_empty(), "{:?}", cc.findings);
    }

    #[test]
    fn poisson_first_column_is_ones() {
        let cc = connection_coeffs(&poisson(12), &Rational::one(), 5).unwrap();
        for n in 2..=5 {
            assert!(cc.b_hat[n][1].is_one(), "n = {n}");
        }
        assert!(cc.findings.is_empty(), "{:?}", cc.findings);
    }

    #[test]
    fn triangles_are_mutual_inverses() {
        let spec = CumulantSpec::from_ints(&[0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]).unwrap();
        for t0 in [rat(1, 2), rat(3, 1)] {
            let cc = connection_coeffs(&spec, &t0, 5).unwrap();
            for n in 0..=5 {
                for j in 0..=5 {
                    let mut acc = Rational::zero();
                    for k in 0..=5 {
                        acc += &(&cc.b[n][k] * &cc.b_hat[k][j]);
                    }
                    let expect = if n == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    };
                    assert_eq!(acc, expect, "n={n} j={j} t0={t0}");
                }
            }
        }
    }

    #[test]
    fn witness_examples() {
        match orthogonality_witness(&poisson(8), 4).unwrap() {
            OrthogonalityWitness::NonOrthogonal { n, k, cross } => {
                assert_eq!((n, k), (1, 2));
                let t = MultiPoly::var(&["t"], "t").unwrap();
                assert_eq!(cross.poly, t);
            }
            other => panic!("expected a witness, got {other:?}"),
        }
        match orthogonality_witness(&gaussian(8), 4).unwrap() {
            OrthogonalityWitness::Orthogonal => {}
            other => panic!("expected orthogonal, got {other:?}"),
        }
        match orthogonality_witness(&CumulantSpec::from_ints(&[0, 1, 0, 2]).unwrap(), 3).unwrap() {
            OrthogonalityWitness::NonOrthogonal { n, k, cross } => {
                assert_eq!((n, k), (1, 3));
                let t = MultiPoly::var(&["t"], "t").unwrap();
                assert_eq!(cross.poly, t.scale(&Rational::from_int(2)));
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }
}
