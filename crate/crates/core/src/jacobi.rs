//! Jacobi polynomials with exact rational coefficients.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{ExponentVector, LaurentPoly};
use crate::rational::{binomial, factorial, pochhammer, Rational};

/// `P_n^{(alpha, beta)}(x)` as coefficients of `1, x, x^2, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiPoly {
    pub degree: usize,
    pub alpha: Rational,
    pub beta: Rational,
    pub coeffs: Vec<Rational>,
}

fn guard(alpha: &Rational, nn: usize) -> Result<()> {
    // (alpha+1)_k with k <= nn sits in a denominator.
    let a1 = alpha + Rational::one();
    if a1.is_integer() && !a1.is_positive() && (-a1.clone()) < Rational::from_integer(nn.into()) {
        return Err(Error::PochhammerPole(format!("(alpha+1)_k with alpha = {alpha}")));
    }
    Ok(())
}

fn leading(alpha: &Rational, nn: usize) -> Rational {
    pochhammer(&(alpha + Rational::one()), nn) / Rational::from_integer(factorial(nn))
}

/// Terminating series
/// `((alpha+1)_n / n!) 2F1(-n, n+alpha+beta+1; alpha+1; (1-x)/2)`.
pub fn jacobi(nn: usize, alpha: &Rational, beta: &Rational) -> Result<JacobiPoly> {
    guard(alpha, nn)?;
    let a1 = alpha + Rational::one();
    let b = Rational::from_integer(nn.into()) + alpha + beta + Rational::one();
    let minus_n = -Rational::from_integer(nn.into());
    let lead = leading(alpha, nn);
    let mut coeffs = vec![Rational::zero(); nn + 1];
    for k in 0..=nn {
        let hyper = pochhammer(&minus_n, k) * pochhammer(&b, k)
            / (pochhammer(&a1, k) * Rational::from_integer(factorial(k)));
        // ((1 - x)/2)^k = 2^{-k} sum_r C(k,r) (-x)^r
        let half_k = Rational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(2), k));
        for (r, slot) in coeffs.iter_mut().enumerate().take(k + 1) {
            let mut c = &hyper * &half_k * Rational::from_integer(binomial(k, r));
            if r % 2 == 1 {
                c = -c;
            }
            *slot += c;
        }
    }
    for c in &mut coeffs {
        *c *= &lead;
    }
    Ok(JacobiPoly {
        degree: nn,
        alpha: alpha.clone(),
        beta: beta.clone(),
        coeffs,
    })
}

impl JacobiPoly {
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `(X+Y)^n P_n((X-Y)/(X+Y))` expanded directly from the coefficients.
    pub fn homogenize(&self) -> LaurentPoly {
        let n = self.degree;
        let x = LaurentPoly::var(2, 1);
        let y = LaurentPoly::var(2, 2);
        let diff = &x - &y;
        let sum = &x + &y;
        let mut out = LaurentPoly::zero(2);
        for (r, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = &diff.pow(r as u32) * &sum.pow((n - r) as u32);
            out += &term.scale(c);
        }
        out
    }
}

/// `(X+Y)^n P_n((X-Y)/(X+Y)) = ((alpha+1)_n/n!) X^n 2F1(-n, -n-beta; alpha+1; -Y/X)`,
/// as a polynomial in the two formal variables `(X, Y)`.
pub fn homogenized_jacobi(nn: usize, alpha: &Rational, beta: &Rational) -> Result<LaurentPoly> {
    guard(alpha, nn)?;
    let a1 = alpha + Rational::one();
    let n_r = Rational::from_integer(nn.into());
    let minus_n = -n_r.clone();
    let minus_n_beta = -n_r - beta;
    let lead = leading(alpha, nn);
    let mut out = LaurentPoly::zero(2);
    for k in 0..=nn {
        let mut c = &lead * pochhammer(&minus_n, k) * pochhammer(&minus_n_beta, k)
            / (pochhammer(&a1, k) * Rational::from_integer(factorial(k)));
        if k % 2 == 1 {
            c = -c;
        }
        out.add_term(ExponentVector::new(vec![(nn - k) as i32, k as i32]), c);
    }
    Ok(out)
}

/// Substitutes polynomials for the formal variables of a bivariate
/// polynomial `h(X, Y)`.
pub fn substitute_xy(h: &LaurentPoly, x: &LaurentPoly, y: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero(x.nvars());
    let max = h.max_degree().unwrap_or(0).max(0) as u32;
    let xp: Vec<LaurentPoly> = (0..=max).map(|k| x.pow(k)).collect();
    let yp: Vec<LaurentPoly> = (0..=max).map(|k| y.pow(k)).collect();
    for (e, c) in h.terms() {
        let (a, b) = (e.get(1) as usize, e.get(2) as usize);
        out += &(&xp[a] * &yp[b]).scale(c);
    }
    out
}
