//! Fixed-point arbitrary precision reals and the Gamma function at
//! rational arguments.
//!
//! A [`HiReal`] is `mantissa / 2^bits`. Every value in one computation
//! shares the same `bits`; guard bits absorb the rounding of elementary
//! function evaluation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{pochhammer, Rational};

/// Working precision for Gamma evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub digits: u32,
}

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 50;

    pub fn digits(digits: u32) -> Self {
        Precision { digits: digits.max(10) }
    }

    /// Binary digits including guard bits.
    pub fn bits(self) -> u32 {
        (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::digits(Self::DEFAULT_DIGITS)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HiReal {
    mant: BigInt,
    bits: u32,
}

impl HiReal {
    pub fn zero(bits: u32) -> Self {
        HiReal {
            mant: BigInt::zero(),
            bits,
        }
    }

    pub fn from_rational(q: &Rational, bits: u32) -> Self {
        let num = q.numer() << bits;
        HiReal {
            mant: round_div(&num, q.denom()),
            bits,
        }
    }

    pub fn from_int(v: i64, bits: u32) -> Self {
        HiReal {
            mant: BigInt::from(v) << bits,
            bits,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn add(&self, o: &Self) -> Self {
        HiReal {
            mant: &self.mant + &o.mant,
            bits: self.bits,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        HiReal {
            mant: &self.mant - &o.mant,
            bits: self.bits,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        HiReal {
            mant: shift_round(&(&self.mant * &o.mant), self.bits),
            bits: self.bits,
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        HiReal {
            mant: round_div(&(&self.mant << self.bits), &o.mant),
            bits: self.bits,
        }
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        HiReal {
            mant: round_div(&(&self.mant * q.numer()), q.denom()),
            bits: self.bits,
        }
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "square root of a negative number");
        HiReal {
            mant: (&self.mant << self.bits).sqrt(),
            bits: self.bits,
        }
    }

    pub fn abs(&self) -> Self {
        HiReal {
            mant: self.mant.abs(),
            bits: self.bits,
        }
    }

    pub fn to_f64(&self) -> f64 {
        // Keep 64 significant bits before converting.
        let excess = (self.mant.bits() as i64 - 64).max(0) as u32;
        let m = (&self.mant >> excess).to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi(excess as i32 - self.bits as i32)
    }

    /// `|self - other| < 10^{-digits}`.
    pub fn close_to(&self, other: &Self, digits: u32) -> bool {
        let diff = self.sub(other).abs();
        let tol = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits as usize));
        diff.mant < HiReal::from_rational(&tol, self.bits).mant
    }

    /// Decimal rendering with `digits` digits after the point.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits as usize);
        let scaled = round_div(&(&self.mant * &scale), &(BigInt::one() << self.bits));
        let sign = if scaled.is_negative() { "-" } else { "" };
        let (int_part, frac) = scaled.abs().div_rem(&scale);
        format!("{sign}{int_part}.{:0>width$}", frac.to_string(), width = digits as usize)
    }

    pub fn pi(bits: u32) -> Self {
        // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
        let a = atan_inv(5, bits);
        let b = atan_inv(239, bits);
        HiReal {
            mant: a.mant * 16 - b.mant * 4,
            bits,
        }
    }

    pub fn ln2(bits: u32) -> Self {
        // 2 atanh(1/3)
        let t = atanh_inv(3, bits);
        HiReal {
            mant: t.mant * 2,
            bits,
        }
    }

    pub fn ln(&self) -> Self {
        assert!(self.mant.is_positive(), "logarithm of a non-positive number");
        let bits = self.bits;
        // self = 2^e * r with r in [1, 2)
        let e = self.mant.bits() as i64 - 1 - bits as i64;
        let r_mant = if e >= 0 {
            &self.mant >> (e as u32)
        } else {
            &self.mant << ((-e) as u32)
        };
        let r = HiReal { mant: r_mant, bits };
        let one = HiReal::from_int(1, bits);
        let t = r.sub(&one).div(&r.add(&one));
        let ln_r = atanh_series(&t).add(&atanh_series(&t));
        ln_r.add(&HiReal {
            mant: Self::ln2(bits).mant * e,
            bits,
        })
    }

    pub fn exp(&self) -> Self {
        let bits = self.bits;
        let ln2 = Self::ln2(bits);
        // self = k ln2 + r, |r| <= ln2/2
        let k = round_div(&self.mant, &ln2.mant);
        let r = HiReal {
            mant: &self.mant - &k * &ln2.mant,
            bits,
        };
        // exp(r) = exp(r / 2^s)^(2^s)
        let s = 12u32;
        let small = HiReal {
            mant: shift_round(&r.mant, s),
            bits,
        };
        let mut sum = HiReal::from_int(1, bits);
        let mut term = HiReal::from_int(1, bits);
        let mut j = 1i64;
        loop {
            term = term.mul(&small).mul_rational(&Rational::new(BigInt::one(), BigInt::from(j)));
            if term.mant.is_zero() {
                break;
            }
            sum = sum.add(&term);
            j += 1;
        }
        for _ in 0..s {
            sum = sum.mul(&sum);
        }
        let k = k.to_i64().expect("exponent fits in i64");
        let mant = if k >= 0 {
            sum.mant << (k as u32)
        } else {
            shift_round(&sum.mant, (-k) as u32)
        };
        HiReal { mant, bits }
    }
}

impl fmt::Display for HiReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.bits.saturating_sub(64)) as f64 / std::f64::consts::LOG2_10) as u32;
        write!(f, "{}", self.to_decimal(digits.max(1)))
    }
}

fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    // a/b = q + r/b with r/b in [0, 1)
    let (q, r) = a.div_mod_floor(b);
    if (r << 1u32).abs() >= b.abs() {
        q + 1
    } else {
        q
    }
}

fn shift_round(a: &BigInt, s: u32) -> BigInt {
    if s == 0 {
        return a.clone();
    }
    let half = BigInt::one() << (s - 1);
    (a + half) >> s
}

/// `atanh(t) = t + t^3/3 + t^5/5 + ...` for `|t| < 1`.
fn atanh_series(t: &HiReal) -> HiReal {
    let bits = t.bits;
    let t2 = t.mul(t);
    let mut power = t.clone();
    let mut sum = HiReal::zero(bits);
    let mut k = 1i64;
    while !power.mant.is_zero() {
        sum = sum.add(&power.mul_rational(&Rational::new(BigInt::one(), BigInt::from(k))));
        power = power.mul(&t2);
        k += 2;
    }
    sum
}

fn atanh_inv(x: i64, bits: u32) -> HiReal {
    atanh_series(&HiReal::from_rational(&Rational::new(BigInt::one(), BigInt::from(x)), bits))
}

fn atan_inv(x: i64, bits: u32) -> HiReal {
    let t = HiReal::from_rational(&Rational::new(BigInt::one(), BigInt::from(x)), bits);
    let t2 = t.mul(&t);
    let mut power = t;
    let mut sum = HiReal::zero(bits);
    let mut k = 1i64;
    let mut sign = 1;
    while !power.mant.is_zero() {
        let term = power.mul_rational(&Rational::new(BigInt::one(), BigInt::from(k)));
        sum = if sign > 0 { sum.add(&term) } else { sum.sub(&term) };
        power = power.mul(&t2);
        k += 2;
        sign = -sign;
    }
    sum
}

/// Bernoulli numbers `B_0..B_{count-1}` (with `B_1 = -1/2`).
fn bernoulli(count: usize) -> Vec<Rational> {
    let mut b = vec![Rational::zero(); count];
    // sum_{k=0}^{m} C(m+1, k) B_k = 0
    for m in 0..count {
        if m == 0 {
            b[0] = Rational::one();
            continue;
        }
        let mut acc = Rational::zero();
        let mut c = BigInt::one(); // C(m+1, 0)
        for (k, bk) in b.iter().enumerate().take(m) {
            acc += Rational::from_integer(c.clone()) * bk;
            c = c * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b[m] = -acc / Rational::from_integer(BigInt::from(m + 1));
    }
    b
}

fn bernoulli_table() -> &'static [Rational] {
    static TABLE: std::sync::OnceLock<Vec<Rational>> = std::sync::OnceLock::new();
    TABLE.get_or_init(|| bernoulli(2 * 120 + 2))
}

/// `ln Gamma(z)` for large `z` by Stirling's series.
fn ln_gamma_stirling(z: &Rational, bits: u32) -> HiReal {
    let zr = HiReal::from_rational(z, bits);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let two_pi = HiReal::pi(bits).add(&HiReal::pi(bits));
    let mut acc = HiReal::from_rational(&(z - &half), bits)
        .mul(&zr.ln())
        .sub(&zr)
        .add(&two_pi.ln().mul_rational(&half));
    let bern = bernoulli_table();
    let eps = BigInt::one() << 2u32;
    for k in 1..bern.len() / 2 {
        let b2k = &bern[2 * k];
        let denom = Rational::from_integer(BigInt::from(2 * k * (2 * k - 1)))
            * num_traits::pow(z.clone(), 2 * k - 1);
        let term = HiReal::from_rational(&(b2k / denom), bits);
        acc = acc.add(&term);
        if term.mant.abs() < eps {
            break;
        }
    }
    acc
}

/// `Gamma(x)` for rational `x` that is not a non-positive integer.
pub fn gamma(x: &Rational, prec: Precision) -> Result<HiReal> {
    if x.is_integer() && !x.is_positive() {
        return Err(Error::GammaPole(x.to_string()));
    }
    let bits = prec.bits();
    // Shift so Stirling converges past the working precision.
    let target = Rational::from_integer(BigInt::from((bits / 4 + 10) as i64));
    let mut shift = 0usize;
    let mut z = x.clone();
    while z < target {
        z += Rational::one();
        shift += 1;
    }
    let g = ln_gamma_stirling(&z, bits).exp();
    // Gamma(x) = Gamma(x + shift) / (x)_shift
    let poch = pochhammer(x, shift);
    Ok(g.mul_rational(&poch.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    const PI_60: &str = "3.141592653589793238462643383279502884197169399375105820974945";

    #[test]
    fn bernoulli_numbers() {
        let b = bernoulli(13);
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[3], int(0));
        assert_eq!(b[12], rat(-691, 2730));
    }

    #[test]
    fn pi_digits() {
        let p = HiReal::pi(Precision::digits(60).bits());
        assert_eq!(p.to_decimal(60), PI_60);
    }

    #[test]
    fn exp_and_ln_roundtrip() {
        let bits = Precision::default().bits();
        let x = HiReal::from_rational(&rat(7, 3), bits);
        assert!(x.exp().ln().close_to(&x, 50));
        let two = HiReal::from_int(2, bits);
        assert!(two.ln().close_to(&HiReal::ln2(bits), 50));
        assert!(HiReal::from_int(-5, bits).exp().to_f64() - (-5f64).exp() < 1e-15);
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let prec = Precision::default();
        let g = gamma(&rat(1, 2), prec).unwrap();
        let sp = HiReal::pi(prec.bits()).sqrt();
        assert!(g.close_to(&sp, 50), "{g} vs {sp}");
    }

    #[test]
    fn gamma_integers_are_factorials() {
        let prec = Precision::default();
        for (x, f) in [(1, 1), (2, 1), (5, 24), (11, 3628800)] {
            let g = gamma(&int(x), prec).unwrap();
            assert!(g.close_to(&HiReal::from_int(f, prec.bits()), 45), "Gamma({x}) = {g}");
        }
    }

    #[test]
    fn gamma_reflection_formula() {
        // Gamma(1/3) Gamma(2/3) = 2 pi / sqrt(3)
        let prec = Precision::default();
        let bits = prec.bits();
        let lhs = gamma(&rat(1, 3), prec).unwrap().mul(&gamma(&rat(2, 3), prec).unwrap());
        let rhs = HiReal::pi(bits)
            .mul_rational(&int(2))
            .div(&HiReal::from_int(3, bits).sqrt());
        assert!(lhs.close_to(&rhs, 50));
    }

    #[test]
    fn gamma_known_value() {
        // Gamma(1/4) to 40 digits
        let g = gamma(&rat(1, 4), Precision::default()).unwrap();
        assert!(g.to_decimal(45).starts_with("3.62560990822190831193068515586767200299"));
    }

    #[test]
    fn gamma_poles() {
        assert!(gamma(&int(0), Precision::default()).is_err());
        assert!(gamma(&int(-3), Precision::default()).is_err());
        let g = gamma(&rat(-1, 2), Precision::default()).unwrap();
        // Gamma(-1/2) = -2 sqrt(pi)
        let sp = HiReal::pi(g.bits()).sqrt().mul_rational(&int(-2));
        assert!(g.close_to(&sp, 50));
    }
}
