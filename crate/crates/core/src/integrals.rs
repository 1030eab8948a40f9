//! Integrals over the unit sphere with weight `prod |s_i|^{2 mu_i}`.
//!
//! Every monomial integral is a ratio of Gamma values, so inner products
//! of polynomials are finite sums of such ratios. Arguments are shifted
//! into `(0, 1]` with `Gamma(x+1) = x Gamma(x)`, after which two terms with
//! the same argument multisets differ only by a rational factor and
//! cancellation is an exact rational computation.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hiprec::{gamma, HiReal, Precision};
use crate::model::ModelParams;
use crate::poly::LaurentPoly;
use crate::rational::{int, to_pq, Rational};

/// Argument multisets of a Gamma ratio, each sorted and reduced to `(0, 1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaClass {
    pub num: Vec<Rational>,
    pub den: Vec<Rational>,
}

impl fmt::Display for GammaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Rational]| {
            v.iter()
                .map(|q| format!("G({})", to_pq(q)))
                .collect::<Vec<_>>()
                .join("*")
        };
        match (self.num.is_empty(), self.den.is_empty()) {
            (true, true) => write!(f, "1"),
            (false, true) => write!(f, "{}", list(&self.num)),
            (true, false) => write!(f, "1/({})", list(&self.den)),
            (false, false) => write!(f, "{}/({})", list(&self.num), list(&self.den)),
        }
    }
}

/// `coeff * prod Gamma(num) / prod Gamma(den)` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaExpr {
    pub coeff: Rational,
    pub class: GammaClass,
}

/// Moves `x` into `(0, 1]`, returning the reduced argument and the factor
/// with `Gamma(x) = factor * Gamma(reduced)`.
fn reduce_arg(x: &Rational) -> Result<(Rational, Rational)> {
    if x.is_integer() && *x <= Rational::zero() {
        return Err(Error::GammaPole(to_pq(x)));
    }
    let one = Rational::one();
    let mut y = x.clone();
    let mut factor = Rational::one();
    while y > one {
        y -= &one;
        factor *= &y;
    }
    while y <= Rational::zero() {
        factor /= &y;
        y += &one;
    }
    Ok((y, factor))
}

impl GammaExpr {
    pub fn zero() -> Self {
        GammaExpr::rational(Rational::zero())
    }

    pub fn one() -> Self {
        GammaExpr::rational(Rational::one())
    }

    pub fn rational(q: Rational) -> Self {
        GammaExpr {
            coeff: q,
            class: GammaClass::default(),
        }
    }

    /// Builds and canonicalizes `coeff * prod Gamma(num) / prod Gamma(den)`.
    pub fn new(coeff: Rational, num: &[Rational], den: &[Rational]) -> Result<Self> {
        if coeff.is_zero() {
            return Ok(GammaExpr::zero());
        }
        let mut c = coeff;
        let mut n = Vec::new();
        let mut d = Vec::new();
        for x in num {
            let (y, f) = reduce_arg(x)?;
            c *= f;
            if !y.is_one() {
                n.push(y);
            }
        }
        for x in den {
            let (y, f) = reduce_arg(x)?;
            c /= f;
            if !y.is_one() {
                d.push(y);
            }
        }
        n.sort();
        d.sort();
        // cancel common arguments (both lists sorted)
        let (mut i, mut j) = (0, 0);
        let mut keep_n = Vec::new();
        let mut keep_d = Vec::new();
        while i < n.len() && j < d.len() {
            match n[i].cmp(&d[j]) {
                std::cmp::Ordering::Less => {
                    keep_n.push(n[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    keep_d.push(d[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        keep_n.extend_from_slice(&n[i..]);
        keep_d.extend_from_slice(&d[j..]);
        Ok(GammaExpr {
            coeff: c,
            class: GammaClass {
                num: keep_n,
                den: keep_d,
            },
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn mul(&self, other: &GammaExpr) -> GammaExpr {
        let mut num = self.class.num.clone();
        num.extend(other.class.num.iter().cloned());
        let mut den = self.class.den.clone();
        den.extend(other.class.den.iter().cloned());
        // arguments are already reduced, so no pole can appear
        GammaExpr::new(&self.coeff * &other.coeff, &num, &den).expect("reduced arguments")
    }

    pub fn recip(&self) -> Result<GammaExpr> {
        if self.is_zero() {
            return Err(Error::Singular("reciprocal of zero".into()));
        }
        GammaExpr::new(self.coeff.recip(), &self.class.den, &self.class.num)
    }

    pub fn eval(&self, prec: Precision) -> Result<HiReal> {
        GammaCache::new(prec).eval(self)
    }
}

impl fmt::Display for GammaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.class == GammaClass::default() {
            write!(f, "{}", to_pq(&self.coeff))
        } else {
            write!(f, "{}*{}", to_pq(&self.coeff), self.class)
        }
    }
}

/// Sum of Gamma ratios grouped by canonical class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GammaSum {
    terms: BTreeMap<GammaClass, Rational>,
}

impl GammaSum {
    pub fn zero() -> Self {
        GammaSum::default()
    }

    pub fn from_expr(e: GammaExpr) -> Self {
        let mut s = GammaSum::zero();
        s.add_expr(e);
        s
    }

    pub fn add_expr(&mut self, e: GammaExpr) {
        if e.is_zero() {
            return;
        }
        match self.terms.entry(e.class) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += e.coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(e.coeff);
            }
        }
    }

    pub fn add(&mut self, other: &GammaSum) {
        for (k, v) in &other.terms {
            self.add_expr(GammaExpr {
                coeff: v.clone(),
                class: k.clone(),
            });
        }
    }

    pub fn scale(&self, e: &GammaExpr) -> GammaSum {
        let mut out = GammaSum::zero();
        for (k, v) in &self.terms {
            out.add_expr(
                GammaExpr {
                    coeff: v.clone(),
                    class: k.clone(),
                }
                .mul(e),
            );
        }
        out
    }

    /// Exact decision: a sum is zero iff every class coefficient cancels.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&GammaClass::default())
                .is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = GammaExpr> + '_ {
        self.terms.iter().map(|(k, v)| GammaExpr {
            coeff: v.clone(),
            class: k.clone(),
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, prec: Precision) -> Result<HiReal> {
        let mut cache = GammaCache::new(prec);
        let mut acc = HiReal::zero(prec.bits());
        for t in self.terms() {
            acc = acc.add(&cache.eval(&t)?);
        }
        Ok(acc)
    }
}

impl fmt::Display for GammaSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Memoized Gamma values at one precision.
pub struct GammaCache {
    prec: Precision,
    values: HashMap<Rational, HiReal>,
}

impl GammaCache {
    pub fn new(prec: Precision) -> Self {
        GammaCache {
            prec,
            values: HashMap::new(),
        }
    }

    pub fn gamma(&mut self, x: &Rational) -> Result<HiReal> {
        if let Some(v) = self.values.get(x) {
            return Ok(v.clone());
        }
        let v = gamma(x, self.prec)?;
        self.values.insert(x.clone(), v.clone());
        Ok(v)
    }

    pub fn eval(&mut self, e: &GammaExpr) -> Result<HiReal> {
        let bits = self.prec.bits();
        let mut acc = HiReal::from_rational(&e.coeff, bits);
        for x in &e.class.num {
            acc = acc.mul(&self.gamma(x)?);
        }
        for x in &e.class.den {
            acc = acc.div(&self.gamma(x)?);
        }
        Ok(acc)
    }
}

/// `int_{S^{n-1}} s^a prod |s_i|^{2 mu_i} dsigma`
/// `= 2 prod Gamma(a_i/2 + mu_i + 1/2) / Gamma(sum(a_i/2 + mu_i) + n/2)`,
/// and zero when some `a_i` is odd.
pub fn monomial_sphere_integral(a: &[i32], params: &ModelParams) -> Result<GammaExpr> {
    let n = params.n();
    if a.len() != n {
        return Err(Error::DimensionMismatch(n, a.len()));
    }
    if a.iter().any(|&e| e < 0) {
        return Err(Error::NotPolynomial);
    }
    if a.iter().any(|&e| e % 2 != 0) {
        return Ok(GammaExpr::zero());
    }
    let half = Rational::new(1.into(), 2.into());
    let b: Vec<Rational> = a
        .iter()
        .zip(params.mu())
        .map(|(&e, mu)| Rational::from_integer((e / 2).into()) + mu)
        .collect();
    let num: Vec<Rational> = b.iter().map(|bi| bi + &half).collect();
    let total = b.iter().fold(Rational::zero(), |s, x| s + x) + &half * int(n as i64);
    GammaExpr::new(int(2), &num, &[total])
}

/// Exact weighted inner product of two (gauged) polynomials.
pub fn inner_product(p: &LaurentPoly, q: &LaurentPoly, params: &ModelParams) -> Result<GammaSum> {
    let prod = p.try_mul(q)?;
    if !prod.is_polynomial() {
        return Err(Error::NotPolynomial);
    }
    let mut out = GammaSum::zero();
    for (e, c) in prod.terms() {
        let mut t = monomial_sphere_integral(e.as_slice(), params)?;
        if t.is_zero() {
            continue;
        }
        t.coeff *= c;
        out.add_expr(t);
    }
    Ok(out)
}

/// Squared norm `<p, p>`.
pub fn norm_squared(p: &LaurentPoly, params: &ModelParams) -> Result<GammaSum> {
    inner_product(p, p, params)
}

/// `G[i][j] = <rows[i], cols[j]>`, entries computed in parallel.
pub fn cross_gram(rows: &[LaurentPoly], cols: &[LaurentPoly], params: &ModelParams) -> Result<Vec<Vec<GammaSum>>> {
    rows.par_iter()
        .map(|p| cols.iter().map(|q| inner_product(p, q, params)).collect())
        .collect()
}

pub fn gram_matrix(basis: &[LaurentPoly], params: &ModelParams) -> Result<Vec<Vec<GammaSum>>> {
    cross_gram(basis, basis, params)
}

/// First nonzero off-diagonal entry, if any.
pub fn first_off_diagonal(gram: &[Vec<GammaSum>]) -> Option<(usize, usize, &GammaSum)> {
    gram.iter().enumerate().find_map(|(i, row)| {
        row.iter()
            .enumerate()
            .find(|(j, v)| *j != i && !v.is_zero())
            .map(|(j, v)| (i, j, v))
    })
}
