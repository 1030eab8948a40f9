//! Operator expressions over multiplication, inverse multiplication,
//! differentiation and reflection atoms, with exact application to
//! [`LaurentPoly`] values.
//!
//! Identities between operators are decided by [`equal_on_degree`], which
//! compares the images of every monomial up to a total degree bound.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{monomials_up_to, ExponentVector, LaurentPoly};
use crate::rational::{to_pq, Rational};

/// Axis indices are 1-based throughout.
#[derive(Clone, Debug, PartialEq)]
pub enum OperatorExpr {
    Identity,
    Scalar(Rational),
    /// Multiplication by `s_i`.
    MulVar(usize),
    /// Multiplication by `1/s_i`.
    InvVar(usize),
    Partial(usize),
    Reflect(usize),
    Sum(Vec<OperatorExpr>),
    /// Product of operators; the rightmost factor acts first.
    Compose(Vec<OperatorExpr>),
    Scale(Rational, Box<OperatorExpr>),
}

use OperatorExpr::*;

impl OperatorExpr {
    pub fn zero() -> Self {
        Sum(Vec::new())
    }

    pub fn scalar(q: Rational) -> Self {
        Scalar(q)
    }

    pub fn sum<I: IntoIterator<Item = OperatorExpr>>(items: I) -> Self {
        let mut flat = Vec::new();
        for item in items {
            match item {
                Sum(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            return flat.pop().unwrap();
        }
        Sum(flat)
    }

    /// Product in the given order: `product([a, b, c])` acts as `a(b(c(.)))`.
    pub fn product<I: IntoIterator<Item = OperatorExpr>>(items: I) -> Self {
        let mut flat = Vec::new();
        for item in items {
            match item {
                Compose(inner) => flat.extend(inner),
                Identity => {}
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Identity,
            1 => flat.pop().unwrap(),
            _ => Compose(flat),
        }
    }

    pub fn compose(self, right: OperatorExpr) -> Self {
        Self::product([self, right])
    }

    pub fn scaled(self, q: Rational) -> Self {
        if q.is_one() {
            return self;
        }
        match self {
            Scale(p, inner) => Scale(p * q, inner),
            Scalar(p) => Scalar(p * q),
            other => Scale(q, Box::new(other)),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        Self::product(std::iter::repeat_n(self.clone(), k))
    }

    /// Largest axis index referenced by any atom.
    pub fn max_axis(&self) -> usize {
        match self {
            Identity | Scalar(_) => 0,
            MulVar(i) | InvVar(i) | Partial(i) | Reflect(i) => *i,
            Sum(v) | Compose(v) => v.iter().map(Self::max_axis).max().unwrap_or(0),
            Scale(_, e) => e.max_axis(),
        }
    }

    fn has_zero_axis(&self) -> bool {
        match self {
            Identity | Scalar(_) => false,
            MulVar(i) | InvVar(i) | Partial(i) | Reflect(i) => *i == 0,
            Sum(v) | Compose(v) => v.iter().any(Self::has_zero_axis),
            Scale(_, e) => e.has_zero_axis(),
        }
    }

    /// Checks that every axis lies in `[1, n]`.
    pub fn validate(&self, n: usize) -> Result<()> {
        let max = self.max_axis();
        if max > n {
            return Err(Error::AxisOutOfRange { axis: max, dim: n });
        }
        if self.has_zero_axis() {
            return Err(Error::AxisOutOfRange { axis: 0, dim: n });
        }
        Ok(())
    }

    /// Exact image of `p`.
    pub fn apply(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        self.validate(p.nvars())?;
        Ok(self.apply_unchecked(p))
    }

    pub(crate) fn apply_unchecked(&self, p: &LaurentPoly) -> LaurentPoly {
        if p.is_zero() {
            return p.clone();
        }
        match self {
            Identity => p.clone(),
            Scalar(q) => p.scale(q),
            MulVar(i) => p.mul_var_unchecked(*i, 1),
            InvVar(i) => p.mul_var_unchecked(*i, -1),
            Partial(i) => p.partial_unchecked(*i),
            Reflect(i) => p.reflect_unchecked(*i),
            Sum(v) => {
                let mut acc = LaurentPoly::zero(p.nvars());
                for e in v {
                    acc += &e.apply_unchecked(p);
                }
                acc
            }
            Compose(v) => {
                let mut cur = p.clone();
                for e in v.iter().rev() {
                    cur = e.apply_unchecked(&cur);
                    if cur.is_zero() {
                        break;
                    }
                }
                cur
            }
            Scale(q, e) => e.apply_unchecked(p).scale(q),
        }
    }

    /// Prefix rendering with atoms `x_i`, `1/x_i`, `d_i`, `R_i`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identity => write!(f, "id"),
            Scalar(q) => write!(f, "{}", to_pq(q)),
            MulVar(i) => write!(f, "x_{i}"),
            InvVar(i) => write!(f, "1/x_{i}"),
            Partial(i) => write!(f, "d_{i}"),
            Reflect(i) => write!(f, "R_{i}"),
            Sum(v) if v.is_empty() => write!(f, "0"),
            Sum(v) | Compose(v) => {
                let head = if matches!(self, Sum(_)) { "+" } else { "*" };
                write!(f, "({head}")?;
                for e in v {
                    write!(f, " {e}")?;
                }
                write!(f, ")")
            }
            Scale(q, e) => write!(f, "(scale {} {e})", to_pq(q)),
        }
    }
}

impl Add for OperatorExpr {
    type Output = OperatorExpr;
    fn add(self, rhs: OperatorExpr) -> OperatorExpr {
        OperatorExpr::sum([self, rhs])
    }
}

impl Sub for OperatorExpr {
    type Output = OperatorExpr;
    fn sub(self, rhs: OperatorExpr) -> OperatorExpr {
        OperatorExpr::sum([self, -rhs])
    }
}

impl Neg for OperatorExpr {
    type Output = OperatorExpr;
    fn neg(self) -> OperatorExpr {
        self.scaled(-Rational::one())
    }
}

/// `a * b` is the composition "b first, then a".
impl Mul for OperatorExpr {
    type Output = OperatorExpr;
    fn mul(self, rhs: OperatorExpr) -> OperatorExpr {
        self.compose(rhs)
    }
}

impl Mul<OperatorExpr> for Rational {
    type Output = OperatorExpr;
    fn mul(self, rhs: OperatorExpr) -> OperatorExpr {
        rhs.scaled(self)
    }
}

/// `[a, b] = ab - ba`.
pub fn commutator(a: &OperatorExpr, b: &OperatorExpr) -> OperatorExpr {
    Sum(vec![
        Compose(vec![a.clone(), b.clone()]),
        Scale(-Rational::one(), Box::new(Compose(vec![b.clone(), a.clone()]))),
    ])
}

/// `{a, b} = ab + ba`.
pub fn anticommutator(a: &OperatorExpr, b: &OperatorExpr) -> OperatorExpr {
    Sum(vec![
        Compose(vec![a.clone(), b.clone()]),
        Compose(vec![b.clone(), a.clone()]),
    ])
}

/// Conjugation `z -> G^{-1} z G` with `G = prod |s_i|^{mu_i}`.
///
/// Only derivatives change: `d_i -> d_i + mu_i / s_i`. Multiplications,
/// reflections and scalars commute with `G`.
pub fn gauge_conjugate(op: &OperatorExpr, mu: &[Rational]) -> OperatorExpr {
    match op {
        Partial(i) => {
            let m = &mu[*i - 1];
            if m.is_zero() {
                Partial(*i)
            } else {
                Sum(vec![Partial(*i), Scale(m.clone(), Box::new(InvVar(*i)))])
            }
        }
        Identity | Scalar(_) | MulVar(_) | InvVar(_) | Reflect(_) => op.clone(),
        Sum(v) => Sum(v.iter().map(|e| gauge_conjugate(e, mu)).collect()),
        Compose(v) => Compose(v.iter().map(|e| gauge_conjugate(e, mu)).collect()),
        Scale(q, e) => Scale(q.clone(), Box::new(gauge_conjugate(e, mu))),
    }
}

/// Outcome of comparing two operators on a monomial sweep.
#[derive(Clone, Debug, PartialEq)]
pub enum EqualityWitness {
    Equal {
        monomials: usize,
    },
    Counterexample {
        monomial: ExponentVector,
        lhs_image: LaurentPoly,
        rhs_image: LaurentPoly,
    },
    /// Images agree (or not) but one of them left the polynomial ring.
    NonPolynomialImage {
        monomial: ExponentVector,
        image: LaurentPoly,
    },
}

impl EqualityWitness {
    pub fn is_equal(&self) -> bool {
        matches!(self, EqualityWitness::Equal { .. })
    }

    pub fn describe(&self) -> String {
        match self {
            EqualityWitness::Equal { monomials } => format!("equal on {monomials} monomials"),
            EqualityWitness::Counterexample {
                monomial,
                lhs_image,
                rhs_image,
            } => format!("at s^{monomial}: lhs = {lhs_image}; rhs = {rhs_image}"),
            EqualityWitness::NonPolynomialImage { monomial, image } => {
                format!("non-polynomial image at s^{monomial}: {image}")
            }
        }
    }
}

/// Compares `a` and `b` on every monomial `s^alpha` with `|alpha| <= max_degree`
/// in `n` variables. The reported counterexample is the first failing
/// monomial in sweep order, independent of scheduling.
pub fn equal_on_degree(
    a: &OperatorExpr,
    b: &OperatorExpr,
    n: usize,
    max_degree: usize,
    require_polynomial_images: bool,
) -> Result<EqualityWitness> {
    a.validate(n)?;
    b.validate(n)?;
    let monomials = monomials_up_to(n, max_degree);
    let failure = monomials.par_iter().find_map_first(|e| {
        let p = LaurentPoly::monomial(e.clone(), Rational::one());
        let lhs = a.apply_unchecked(&p);
        let rhs = b.apply_unchecked(&p);
        if require_polynomial_images {
            for img in [&lhs, &rhs] {
                if !img.is_polynomial() {
                    return Some(EqualityWitness::NonPolynomialImage {
                        monomial: e.clone(),
                        image: img.clone(),
                    });
                }
            }
        }
        (lhs != rhs).then(|| EqualityWitness::Counterexample {
            monomial: e.clone(),
            lhs_image: lhs,
            rhs_image: rhs,
        })
    });
    Ok(failure.unwrap_or(EqualityWitness::Equal {
        monomials: monomials.len(),
    }))
}

/// Shorthand for `equal_on_degree(op, 0, ..)`.
pub fn vanishes_on_degree(
    op: &OperatorExpr,
    n: usize,
    max_degree: usize,
) -> Result<EqualityWitness> {
    equal_on_degree(op, &OperatorExpr::zero(), n, max_degree, false)
}
