//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! A [`LaurentPoly`] is a finite map from signed exponent vectors to nonzero
//! [`Rational`] coefficients. Zero coefficients are never stored, so two
//! polynomials are equal exactly when their maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{to_pq, Rational};

/// Exponents `(a_1, ..., a_n)` of a monomial `s_1^{a_1} ... s_n^{a_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<i32>);

impl ExponentVector {
    pub fn new(exps: Vec<i32>) -> Self {
        ExponentVector(exps)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    /// Unit vector along the 1-based `axis`.
    pub fn unit(n: usize, axis: usize) -> Self {
        let mut e = vec![0; n];
        e[axis - 1] = 1;
        ExponentVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    /// Exponent of the 1-based `axis`.
    pub fn get(&self, axis: usize) -> i32 {
        self.0[axis - 1]
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&a| a as i64).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    fn shifted(mut self, axis: usize, by: i32) -> Self {
        self.0[axis - 1] += by;
        self
    }

    fn plus(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl From<Vec<i32>> for ExponentVector {
    fn from(v: Vec<i32>) -> Self {
        ExponentVector(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(ExponentVector::zeros(nvars), c)
    }

    pub fn monomial(exps: ExponentVector, coeff: Rational) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        LaurentPoly { nvars, terms }
    }

    /// The coordinate function `s_axis` (1-based).
    pub fn var(nvars: usize, axis: usize) -> Self {
        Self::monomial(ExponentVector::unit(nvars, axis), Rational::one())
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated exponents.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i32>, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch(nvars, e.len()));
            }
            p.add_term(ExponentVector(e), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (ExponentVector, Rational)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, exps: &ExponentVector) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c * s^exps` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, exps: ExponentVector, c: Rational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    fn check_axis(&self, axis: usize) -> Result<()> {
        if axis == 0 || axis > self.nvars {
            return Err(Error::AxisOutOfRange {
                axis,
                dim: self.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_assign_unchecked(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.plus(eb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Term-wise derivative along the 1-based `axis`.
    pub fn partial(&self, axis: usize) -> Result<Self> {
        self.check_axis(axis)?;
        Ok(self.partial_unchecked(axis))
    }

    pub(crate) fn partial_unchecked(&self, axis: usize) -> Self {
        // a -> a-1 is injective, so no two terms collide.
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let a = e.get(axis);
                (a != 0).then(|| (e.clone().shifted(axis, -1), c * Rational::from_integer(a.into())))
            })
            .collect();
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// `f(.., s_axis, ..) -> f(.., -s_axis, ..)`.
    pub fn reflect(&self, axis: usize) -> Result<Self> {
        self.check_axis(axis)?;
        Ok(self.reflect_unchecked(axis))
    }

    pub(crate) fn reflect_unchecked(&self, axis: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let c = if e.get(axis) % 2 != 0 { -c } else { c.clone() };
                (e.clone(), c)
            })
            .collect();
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Multiplication by `s_axis^power` (power may be negative).
    pub fn mul_var_pow(&self, axis: usize, power: i32) -> Result<Self> {
        self.check_axis(axis)?;
        Ok(self.mul_var_unchecked(axis, power))
    }

    pub(crate) fn mul_var_unchecked(&self, axis: usize, power: i32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone().shifted(axis, power), c.clone()))
            .collect();
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Sum of the terms of total degree `m`.
    pub fn homogeneous_component(&self, m: i64) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == m)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// All nonzero homogeneous components keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e.degree())
                .or_insert_with(|| Self::zero(self.nvars))
                .terms
                .insert(e.clone(), c.clone());
        }
        out
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(ExponentVector::is_nonnegative)
    }

    /// `Some(m)` if every term has total degree `m`. The zero polynomial is
    /// homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(ExponentVector::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, m: i64) -> bool {
        self.terms.keys().all(|e| e.degree() == m)
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(ExponentVector::degree).max()
    }

    /// Highest 1-based axis whose exponent is nonzero in some term.
    pub fn max_axis_used(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|e| {
                e.as_slice()
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a != 0)
                    .map(|(i, _)| i + 1)
            })
            .max()
            .unwrap_or(0)
    }

    /// Restriction to `s_axis = 0`. Terms with a negative power of `s_axis`
    /// make the restriction undefined.
    pub fn restrict_zero(&self, axis: usize) -> Result<Self> {
        self.check_axis(axis)?;
        if self.terms.keys().any(|e| e.get(axis) < 0) {
            return Err(Error::NotPolynomial);
        }
        Ok(LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.get(axis) == 0)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    /// Re-embeds into `nvars` variables by appending zero exponents.
    pub fn embed(&self, nvars: usize) -> Result<Self> {
        if nvars < self.nvars && self.max_axis_used() > nvars {
            return Err(Error::DimensionMismatch(self.nvars, nvars));
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut v = e.0.clone();
                v.resize(nvars, 0);
                (ExponentVector(v), c.clone())
            })
            .collect();
        Ok(LaurentPoly { nvars, terms })
    }

    /// Substitutes `s_axis -> value` for every variable appearing in `values`
    /// and returns the resulting scalar. All variables must be given.
    pub fn evaluate(&self, values: &[Rational]) -> Result<Rational> {
        if values.len() != self.nvars {
            return Err(Error::DimensionMismatch(self.nvars, values.len()));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &a) in values.iter().zip(e.as_slice()) {
                if a < 0 {
                    if v.is_zero() {
                        return Err(Error::NotPolynomial);
                    }
                    t *= num_traits::pow(v.recip(), (-a) as usize);
                } else {
                    t *= num_traits::pow(v.clone(), a as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// If `self = c * other` for a nonzero rational `c`, returns `c`.
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        if self.nvars != other.nvars || self.terms.len() != other.terms.len() {
            return None;
        }
        if self.is_zero() {
            return None;
        }
        let (e0, c0) = other.terms.iter().next()?;
        let ratio = self.terms.get(e0)? / c0;
        if ratio.is_zero() {
            return None;
        }
        (*self == other.scale(&ratio)).then_some(ratio)
    }

    /// Maximum absolute coefficient; zero for the zero polynomial.
    pub fn max_abs_coefficient(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial dimension mismatch");
        self.add_assign_unchecked(rhs);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial dimension mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;

    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Canonical text form: terms in lexicographic exponent order, coefficients
/// as `p/q`, e.g. `1/1*s1^2 + -3/2*s1*s2^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", to_pq(c))?;
            for (i, &a) in e.as_slice().iter().enumerate() {
                match a {
                    0 => {}
                    1 => write!(f, "*s{}", i + 1)?,
                    _ => write!(f, "*s{}^{}", i + 1, a)?,
                }
            }
        }
        Ok(())
    }
}

/// Exponent vectors of all monomials of total degree exactly `m` in `n`
/// variables, in lexicographic order.
pub fn monomials_of_degree(n: usize, m: usize) -> Vec<ExponentVector> {
    fn rec(n: usize, left: usize, cur: &mut Vec<i32>, out: &mut Vec<ExponentVector>) {
        if cur.len() + 1 == n {
            cur.push(left as i32);
            out.push(ExponentVector(cur.clone()));
            cur.pop();
            return;
        }
        for a in 0..=left {
            cur.push(a as i32);
            rec(n, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if m == 0 {
            out.push(ExponentVector(Vec::new()));
        }
        return out;
    }
    rec(n, m, &mut Vec::with_capacity(n), &mut out);
    out
}

/// All monomials with `0 <= |a| <= max_degree`, grouped by ascending degree.
pub fn monomials_up_to(n: usize, max_degree: usize) -> Vec<ExponentVector> {
    (0..=max_degree)
        .flat_map(|m| monomials_of_degree(n, m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn s(n: usize, i: usize) -> LaurentPoly {
        LaurentPoly::var(n, i)
    }

    #[test]
    fn additive_inverse_cancels() {
        let p = s(2, 1);
        assert!((&p + &(-&p)).is_zero());
    }

    #[test]
    fn sum_of_squares() {
        let p = s(2, 1).pow(2) + s(2, 2).pow(2);
        assert_eq!(p.len(), 2);
        assert_eq!(p.coefficient(&ExponentVector::new(vec![2, 0])), int(1));
    }

    #[test]
    fn exact_fractions() {
        let p = s(1, 1).scale(&rat(1, 2)) + s(1, 1).scale(&rat(1, 3));
        assert_eq!(p, s(1, 1).scale(&rat(5, 6)));
    }

    #[test]
    fn laurent_cancellation() {
        let inv = s(1, 1).mul_var_pow(1, -2).unwrap();
        assert_eq!(&s(1, 1) * &inv, LaurentPoly::one(1));
    }

    #[test]
    fn binomial_square() {
        let p = s(2, 1) + s(2, 2);
        let sq = p.pow(2);
        let expect = LaurentPoly::from_terms(
            2,
            vec![(vec![2, 0], int(1)), (vec![1, 1], int(2)), (vec![0, 2], int(1))],
        )
        .unwrap();
        assert_eq!(sq, expect);
        assert!((&LaurentPoly::zero(2) * &p).is_zero());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert_eq!(
            s(2, 1).try_add(&s(3, 1)),
            Err(Error::DimensionMismatch(2, 3))
        );
        assert!(s(2, 1).try_mul(&s(3, 1)).is_err());
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(s(1, 1).pow(3).partial(1).unwrap(), s(1, 1).pow(2).scale(&int(3)));
        assert!(s(2, 2).partial(1).unwrap().is_zero());
        let inv = LaurentPoly::monomial(ExponentVector::new(vec![-1]), int(1));
        let expect = LaurentPoly::monomial(ExponentVector::new(vec![-2]), int(-1));
        assert_eq!(inv.partial(1).unwrap(), expect);
        assert!(s(2, 1).partial(3).is_err());
    }

    #[test]
    fn reflections() {
        let p = &s(2, 1) * &s(2, 2);
        assert_eq!(p.reflect(1).unwrap(), -&p);
        let q = s(2, 1).pow(2);
        assert_eq!(q.reflect(1).unwrap(), q);
        assert!(s(2, 1).reflect(0).is_err());
    }

    #[test]
    fn homogeneous_parts() {
        let p = LaurentPoly::one(2) + s(2, 1) + &s(2, 1) * &s(2, 2);
        assert_eq!(p.homogeneous_component(2), &s(2, 1) * &s(2, 2));
        assert!(s(2, 1).pow(2).homogeneous_component(1).is_zero());
        let total = p
            .homogeneous_components()
            .into_values()
            .fold(LaurentPoly::zero(2), |a, b| a + b);
        assert_eq!(total, p);
    }

    #[test]
    fn polynomial_guard() {
        let p = LaurentPoly::monomial(ExponentVector::new(vec![-1, 2]), int(1));
        assert!(!p.is_polynomial());
        assert!(LaurentPoly::zero(2).is_polynomial());
        assert!((s(1, 1) + LaurentPoly::constant(1, int(3))).is_polynomial());
    }

    #[test]
    fn canonical_text() {
        let p = LaurentPoly::from_terms(
            2,
            vec![(vec![0, 1], rat(-3, 2)), (vec![2, 0], int(1)), (vec![0, 0], int(4))],
        )
        .unwrap();
        assert_eq!(p.to_string(), "4/1 + -3/2*s2 + 1/1*s1^2");
        assert_eq!(LaurentPoly::zero(3).to_string(), "0");
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_up_to(4, 6).len(), 210);
        assert_eq!(monomials_of_degree(1, 5), vec![ExponentVector::new(vec![5])]);
    }

    #[test]
    fn ratio_detection() {
        let p = s(2, 1) + s(2, 2).scale(&int(2));
        assert_eq!(p.scale(&rat(-3, 7)).ratio_to(&p), Some(rat(-3, 7)));
        assert_eq!((s(2, 1) + s(2, 2)).ratio_to(&p), None);
    }
}
