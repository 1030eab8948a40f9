//! Separated wavefunctions in closed form.
//!
//! Level `k` of the construction multiplies the degree-`j_{[k-2]}` function
//! of `s_1..s_{k-1}` by homogenized Jacobi polynomials in
//! `X = s_1^2 + ... + s_{k-1}^2` and `Y = s_k^2`, with `x_{[k-1]}` and
//! `R_{[k-1]}` acting on it according to the parity of `j_{k-1}`. Level 2
//! starts from the constant function.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ckfischer::{compositions, kernel_element, rank_of};
use crate::error::{Error, Result};
use crate::hiprec::{HiReal, Precision};
use crate::integrals::{norm_squared, GammaCache, GammaExpr, GammaSum};
use crate::jacobi::{homogenized_jacobi, substitute_xy};
use crate::model::{Model, ModelParams, Subset, Transcription};
use crate::operator::OperatorExpr;
use crate::poly::LaurentPoly;
use crate::rational::{factorial, int, pochhammer, rat, Rational};

/// `(m; j_1, ..., j_{n-1})` with `j_1 + ... + j_{n-1} = m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WavefunctionLabel {
    pub m: usize,
    pub j: Vec<usize>,
}

impl WavefunctionLabel {
    pub fn new(j: Vec<usize>) -> Result<Self> {
        if j.is_empty() {
            return Err(Error::InvalidParams("label needs at least one part".into()));
        }
        Ok(WavefunctionLabel { m: j.iter().sum(), j })
    }

    /// Number of variables the label belongs to.
    pub fn n(&self) -> usize {
        self.j.len() + 1
    }

    /// `j_{[r]} = j_1 + ... + j_r`.
    pub fn partial_sum(&self, r: usize) -> usize {
        self.j[..r].iter().sum()
    }

    /// All labels of total degree `m` in `n` variables, colex order.
    pub fn all(n: usize, m: usize) -> Vec<WavefunctionLabel> {
        compositions(m, n - 1)
            .into_iter()
            .map(|j| WavefunctionLabel { m, j })
            .collect()
    }
}

impl fmt::Display for WavefunctionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.j.iter().map(|v| v.to_string()).collect();
        write!(f, "({}; {})", self.m, parts.join(","))
    }
}

fn check_label(label: &WavefunctionLabel, n: usize) -> Result<()> {
    if label.n() != n {
        return Err(Error::InvalidParams(format!(
            "label {label} has {} parts, expected {}",
            label.j.len(),
            n - 1
        )));
    }
    Ok(())
}

fn ufact(k: usize) -> Rational {
    Rational::from_integer(factorial(k))
}

fn uint(k: usize) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

/// One level operator applied to `f`, a function of `s_1..s_{k-1}` of
/// degree `j_{[k-2]}` embedded in `n` variables.
fn level(
    k: usize,
    label: &WavefunctionLabel,
    f: &LaurentPoly,
    model: &Model,
    mode: Transcription,
) -> Result<LaurentPoly> {
    let n = model.n();
    let params = model.params();
    let jk = label.j[k - 2];
    let c = jk / 2;
    let d = uint(label.partial_sum(k - 2));
    let gk = params.gamma_at(k);
    let g_prev = params.gamma(Subset::full(k - 1));
    let one = Rational::one();

    let mut big_x = LaurentPoly::zero(n);
    for i in 1..k {
        let s = LaurentPoly::var(n, i);
        big_x += &(&s * &s);
    }
    let sk = LaurentPoly::var(n, k);
    let big_y = &sk * &sk;
    let jac = |deg: usize, a: &Rational, b: &Rational| -> Result<LaurentPoly> {
        Ok(substitute_xy(&homogenized_jacobi(deg, a, b)?, &big_x, &big_y))
    };

    let below = model.subset_realization(Subset::full(k - 1))?;
    let prefactor = ufact(c) / pochhammer(&gk, c);
    let out = if jk.is_multiple_of(2) {
        let mut out = &jac(c, &(&gk - &one), &(&d + &g_prev - &one))? * f;
        if c > 0 {
            let xr = below.x.apply(&below.r.apply(f)?)?;
            out += &(&(&sk * &jac(c - 1, &gk, &(&d + &g_prev))?) * &xr);
        }
        out
    } else {
        // the level-2 function is printed with gamma_2 already
        let alpha_second = match mode {
            Transcription::AsPrinted if k >= 3 => {
                if n < 4 {
                    return Err(Error::InvalidParams(
                        "the as-printed odd level operator refers to gamma_4, which needs n >= 4".into(),
                    ));
                }
                params.gamma_at(4)
            }
            _ => gk.clone(),
        };
        let first = &jac(c, &(&gk - &one), &(&d + &g_prev))? * &below.x.apply(f)?;
        let ratio = (&d + uint(c) + &g_prev) / (uint(c) + &gk);
        let second = &(&sk * &jac(c, &alpha_second, &(&d + &g_prev - &one))?) * &below.r.apply(f)?;
        first - second.scale(&ratio)
    };
    Ok(out.scale(&prefactor))
}

/// The closed-form `psi~` for `label`: level operators for `k = 2..n`
/// applied to the constant function.
pub fn closed_form_psi(label: &WavefunctionLabel, model: &Model, mode: Transcription) -> Result<LaurentPoly> {
    let n = model.n();
    check_label(label, n)?;
    let mut psi = LaurentPoly::one(n);
    for k in 2..=n {
        psi = level(k, label, &psi, model, mode)?;
    }
    Ok(psi)
}

/// Closed forms for every label of degree `m`, colex order.
pub fn closed_form_basis(
    m: usize,
    model: &Model,
    mode: Transcription,
) -> Result<(Vec<WavefunctionLabel>, Vec<LaurentPoly>)> {
    let labels = WavefunctionLabel::all(model.n(), m);
    let elements = labels
        .par_iter()
        .map(|l| closed_form_psi(l, model, mode))
        .collect::<Result<Vec<_>>>()?;
    Ok((labels, elements))
}

pub fn closed_form_rank(m: usize, model: &Model, mode: Transcription) -> Result<usize> {
    let (_, elements) = closed_form_basis(m, model, mode)?;
    rank_of(&elements, model.n(), m)
}

/// Outcome of comparing a closed form with the nested CK basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrossValidation {
    Exact,
    /// `closed = ratio * ck`.
    Proportional(Rational),
    Mismatch {
        closed: LaurentPoly,
        ck: LaurentPoly,
    },
}

impl CrossValidation {
    pub fn is_match(&self) -> bool {
        !matches!(self, CrossValidation::Mismatch { .. })
    }

    /// Ratio closed/CK, `1` for an exact match.
    pub fn ratio(&self) -> Option<Rational> {
        match self {
            CrossValidation::Exact => Some(Rational::one()),
            CrossValidation::Proportional(r) => Some(r.clone()),
            CrossValidation::Mismatch { .. } => None,
        }
    }
}

pub fn cross_validate(label: &WavefunctionLabel, model: &Model, mode: Transcription) -> Result<CrossValidation> {
    let closed = closed_form_psi(label, model, mode)?;
    let ck = kernel_element(&label.j, model)?;
    Ok(if closed == ck {
        CrossValidation::Exact
    } else if let Some(r) = closed.ratio_to(&ck) {
        CrossValidation::Proportional(r)
    } else {
        CrossValidation::Mismatch { closed, ck }
    })
}

/// `m + gamma_{[n]} - 1/2`, the sCasimir eigenvalue on `K_m`.
pub fn scasimir_eigenvalue(m: usize, params: &ModelParams) -> Rational {
    uint(m) + params.gamma(Subset::full(params.n())) - rat(1, 2)
}

/// The quoted Hamiltonian eigenvalue `(m + gamma)(m + gamma - 2)`.
pub fn hamiltonian_eigenvalue_quoted(m: usize, params: &ModelParams) -> Rational {
    let g = uint(m) + params.gamma(Subset::full(params.n()));
    &g * (&g - int(2))
}

/// `sigma^2 - sigma - (n-1)(n-3)/4` with `sigma` the sCasimir eigenvalue,
/// i.e. the eigenvalue of `H = S^2 - S - (n-1)(n-3)/4`. Equals the quoted
/// value plus `n(4-n)/4`.
pub fn hamiltonian_eigenvalue(m: usize, params: &ModelParams) -> Rational {
    let n = params.n() as i64;
    let sigma = scasimir_eigenvalue(m, params);
    &sigma * &sigma - &sigma - rat((n - 1) * (n - 3), 4)
}

/// Eigenvalue test of one wavefunction against a claimed eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenTest {
    pub claimed: Rational,
    /// `op psi - claimed psi`; zero when the claim holds.
    pub residual: LaurentPoly,
}

impl EigenTest {
    fn run(op: &OperatorExpr, psi: &LaurentPoly, claimed: Rational) -> Result<Self> {
        let residual = op.apply(psi)? - psi.scale(&claimed);
        Ok(EigenTest { claimed, residual })
    }

    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenCheck {
    pub scasimir: EigenTest,
    /// `(m + gamma)(m + gamma - 2)` as quoted.
    pub hamiltonian_quoted: EigenTest,
    /// The eigenvalue implied by the quadratic relation between `H` and `S`.
    pub hamiltonian: EigenTest,
}

pub fn eigen_check(label: &WavefunctionLabel, model: &Model, mode: Transcription) -> Result<EigenCheck> {
    let psi = closed_form_psi(label, model, mode)?;
    let params = model.params();
    let s = model.scasimir(Subset::full(model.n()))?;
    let h = model.hamiltonian();
    Ok(EigenCheck {
        scasimir: EigenTest::run(&s, &psi, scasimir_eigenvalue(label.m, params))?,
        hamiltonian_quoted: EigenTest::run(&h, &psi, hamiltonian_eigenvalue_quoted(label.m, params))?,
        hamiltonian: EigenTest::run(&h, &psi, hamiltonian_eigenvalue(label.m, params))?,
    })
}

/// Normalization constants for one label. Squares are exact Gamma ratios.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub nu1_sq: GammaExpr,
    /// `(k, eta_k^2)` for `k = 3..n`.
    pub eta_sq: Vec<(usize, GammaExpr)>,
    pub nu1: HiReal,
    pub eta: Vec<(usize, HiReal)>,
}

impl Normalization {
    /// `(nu_1^2 / 2) prod eta_k^2`, the factor multiplying `<psi, psi>`.
    pub fn total_sq(&self) -> GammaExpr {
        self.eta_sq
            .iter()
            .fold(self.nu1_sq.mul(&GammaExpr::rational(rat(1, 2))), |acc, (_, e)| acc.mul(e))
    }
}

/// `(g)_c^2 Gamma(c + p) / (c! Gamma(c + g) Gamma(c + q))`, times
/// `(c + g) / (c + q)` in the odd case.
fn level_norm_sq(c: usize, odd: bool, g: &Rational, p: &Rational, q: &Rational) -> Result<GammaExpr> {
    let poch = pochhammer(g, c);
    let cr = uint(c);
    let mut coeff = &poch * &poch / ufact(c);
    if odd {
        coeff *= (&cr + g) / (&cr + q);
    }
    GammaExpr::new(coeff, &[&cr + p], &[&cr + g, &cr + q])
}

pub fn normalization_constants(
    label: &WavefunctionLabel,
    params: &ModelParams,
    mode: Transcription,
    prec: Precision,
) -> Result<Normalization> {
    let n = params.n();
    check_label(label, n)?;
    let j1 = label.j[0];
    let (g1, g2) = (params.gamma_at(1), params.gamma_at(2));
    // nu_1: gamma_k -> gamma_2, j_{[k-2]} -> 0, gamma_{[k-1]} -> gamma_1
    let nu1_sq = level_norm_sq(j1 / 2, j1 % 2 == 1, &g2, &(&g1 + &g2), &g1)?;
    let mut eta_sq = Vec::new();
    for k in 3..=n {
        // Corrected: every index follows k. As printed: only (gamma_k)_c does.
        let level_of = match mode {
            Transcription::Corrected => k,
            Transcription::AsPrinted => n,
        };
        let jl = label.j[level_of - 2];
        let c = jl / 2;
        let d = uint(label.partial_sum(level_of - 2));
        let g_level = params.gamma_at(level_of);
        let p = &d + params.gamma(Subset::full(level_of));
        let q = &d + params.gamma(Subset::full(level_of - 1));
        let mut e = level_norm_sq(c, jl % 2 == 1, &g_level, &p, &q)?;
        if level_of != k {
            let fix = pochhammer(&params.gamma_at(k), c) / pochhammer(&g_level, c);
            e = e.mul(&GammaExpr::rational(&fix * &fix));
        }
        eta_sq.push((k, e));
    }
    let mut cache = GammaCache::new(prec);
    let nu1 = cache.eval(&nu1_sq)?.sqrt();
    let eta = eta_sq
        .iter()
        .map(|(k, e)| Ok((*k, cache.eval(e)?.sqrt())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Normalization {
        nu1_sq,
        eta_sq,
        nu1,
        eta,
    })
}

/// `<Psi, Psi>` for the normalized wavefunction.
#[derive(Clone, Debug)]
pub struct NormCheck {
    /// `<psi~, psi~>` in the weighted measure.
    pub raw: GammaSum,
    /// `raw * total_sq`; exactly `1` when the constants are right.
    pub normalized: GammaSum,
    pub value: HiReal,
}

impl NormCheck {
    pub fn is_exactly_one(&self) -> bool {
        self.normalized.is_one()
    }

    pub fn deviation(&self) -> f64 {
        (self.value.to_f64() - 1.0).abs()
    }
}

pub fn norm_check(
    label: &WavefunctionLabel,
    model: &Model,
    mode: Transcription,
    prec: Precision,
) -> Result<NormCheck> {
    let psi = closed_form_psi(label, model, mode)?;
    let constants = normalization_constants(label, model.params(), mode, prec)?;
    let raw = norm_squared(&psi, model.params())?;
    let normalized = raw.scale(&constants.total_sq());
    let value = normalized.eval(prec)?;
    Ok(NormCheck { raw, normalized, value })
}

/// The four ladder identities for `psi` in `K_m`, by parity of the
/// powers of `D_{[n]}` and `x_{[n]}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LadderIdentity {
    /// `D^{2a} x^{2b}`
    EvenEven,
    /// `D^{2a} x^{2b+1}`
    EvenOdd,
    /// `R D^{2a+1} x^{2b}`
    OddEven,
    /// `R D^{2a+1} x^{2b+1}`
    OddOdd,
}

impl LadderIdentity {
    pub const ALL: [LadderIdentity; 4] = [
        LadderIdentity::EvenEven,
        LadderIdentity::EvenOdd,
        LadderIdentity::OddEven,
        LadderIdentity::OddOdd,
    ];
}

impl fmt::Display for LadderIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LadderIdentity::EvenEven => "D^2a x^2b",
            LadderIdentity::EvenOdd => "D^2a x^2b+1",
            LadderIdentity::OddEven => "R D^2a+1 x^2b",
            LadderIdentity::OddOdd => "R D^2a+1 x^2b+1",
        })
    }
}

fn pow2(e: usize) -> Rational {
    Rational::from_integer(num_traits::pow(BigInt::from(2), e))
}

/// Both sides of a ladder identity applied to `psi` of degree `m`.
pub fn ladder_identity(
    which: LadderIdentity,
    alpha: usize,
    beta: usize,
    psi: &LaurentPoly,
    m: usize,
    model: &Model,
    mode: Transcription,
) -> Result<(LaurentPoly, LaurentPoly)> {
    let n = model.n();
    let real = model.subset_realization(Subset::full(n))?;
    let g = model.params().gamma(Subset::full(n));
    let (mr, br) = (uint(m), uint(beta));
    let one = Rational::one();
    let odd_d = matches!(which, LadderIdentity::OddEven | LadderIdentity::OddOdd);
    let x_pow = 2 * beta + usize::from(matches!(which, LadderIdentity::EvenOdd | LadderIdentity::OddOdd));
    let d_pow = 2 * alpha + usize::from(odd_d);

    let mut lhs = real.x.pow(x_pow).apply(psi)?;
    lhs = real.d.pow(d_pow).apply(&lhs)?;
    if odd_d {
        lhs = real.r.apply(&lhs)?;
    }

    // (coefficient, power of x on the right, trailing R)
    let tail = &one - &mr - &br - &g;
    let (coeff, rhs_pow, reflect) = match which {
        LadderIdentity::EvenEven => (
            pow2(2 * alpha) * pochhammer(&-&br, alpha) * pochhammer(&tail, alpha),
            2 * beta as i64 - 2 * alpha as i64,
            false,
        ),
        LadderIdentity::EvenOdd => (
            pow2(2 * alpha) * pochhammer(&-&br, alpha) * pochhammer(&(&tail - &one), alpha),
            2 * beta as i64 + 1 - 2 * alpha as i64,
            false,
        ),
        LadderIdentity::OddEven => {
            let power = match mode {
                Transcription::Corrected => 2 * alpha + 1,
                Transcription::AsPrinted => 2 * alpha,
            };
            (
                -pow2(power) * &br * pochhammer(&(&one - &br), alpha) * pochhammer(&tail, alpha),
                2 * beta as i64 - 2 * alpha as i64 - 1,
                true,
            )
        }
        LadderIdentity::OddOdd => (
            pow2(2 * alpha + 1) * pochhammer(&-&br, alpha) * (&mr + &br + &g) * pochhammer(&tail, alpha),
            2 * beta as i64 - 2 * alpha as i64,
            true,
        ),
    };
    let rhs = if coeff.is_zero() {
        LaurentPoly::zero(n)
    } else {
        if rhs_pow < 0 {
            return Err(Error::Verification(format!(
                "{which}: nonzero coefficient with negative power {rhs_pow} of x"
            )));
        }
        let base = if reflect { real.r.apply(psi)? } else { psi.clone() };
        real.x.pow(rhs_pow as usize).apply(&base)?.scale(&coeff)
    };
    Ok((lhs, rhs))
}

/// A pseudo-random element of `K_m`: integer combination of the CK basis.
pub fn sample_kernel_element(m: usize, model: &Model, rng: &mut impl rand::Rng) -> Result<LaurentPoly> {
    let labels = compositions(m, model.n() - 1);
    let mut out = LaurentPoly::zero(model.n());
    for l in &labels {
        let c = int(rng.gen_range(-5..=5));
        if c.is_zero() {
            continue;
        }
        out += &kernel_element(l, model)?.scale(&c);
    }
    if out.is_zero() {
        out = kernel_element(&labels[0], model)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn model(mu: &[Rational]) -> Model {
        Model::new(ModelParams::new(mu.to_vec()).unwrap())
    }

    fn label(j: &[usize]) -> WavefunctionLabel {
        WavefunctionLabel::new(j.to_vec()).unwrap()
    }

    #[test]
    fn n2_odd_degree_one() {
        let mu = [rat(1, 4), rat(1, 3)];
        let m = model(&mu);
        let psi = closed_form_psi(&label(&[1]), &m, Transcription::Corrected).unwrap();
        // s1 - (gamma1/gamma2) s2
        let g1 = rat(3, 4);
        let g2 = rat(5, 6);
        let expect = LaurentPoly::var(2, 1) - LaurentPoly::var(2, 2).scale(&(g1 / g2));
        assert_eq!(psi, expect);
        assert_eq!(
            cross_validate(&label(&[1]), &m, Transcription::Corrected).unwrap(),
            CrossValidation::Exact
        );
    }

    #[test]
    fn n2_even_degree_two() {
        let mu = [rat(1, 2), rat(1, 3)];
        let m = model(&mu);
        let psi = closed_form_psi(&label(&[2]), &m, Transcription::Corrected).unwrap();
        // s1^2 - (gamma1/gamma2) s2^2 + s1 s2 / gamma2, from the CK series by hand
        let (g1, g2) = (int(1), rat(5, 6));
        let s1 = LaurentPoly::var(2, 1);
        let s2 = LaurentPoly::var(2, 2);
        let expect = &s1 * &s1 - (&s2 * &s2).scale(&(&g1 / &g2)) + (&s1 * &s2).scale(&g2.recip());
        assert_eq!(psi, expect);
    }

    #[test]
    fn closed_forms_are_in_the_kernel() {
        let m = model(&[rat(1, 2), rat(1, 3), rat(1, 4)]);
        let d = m.subset_realization(Subset::full(3)).unwrap().d;
        for deg in 0..=4 {
            for l in WavefunctionLabel::all(3, deg) {
                let psi = closed_form_psi(&l, &m, Transcription::Corrected).unwrap();
                assert!(psi.is_homogeneous_of(deg as i64), "{l}");
                assert!(d.apply(&psi).unwrap().is_zero(), "{l}");
            }
        }
    }

    #[test]
    fn closed_forms_match_ck_basis() {
        let m = model(&[rat(1, 2), rat(1, 3), rat(1, 4)]);
        for deg in 0..=4 {
            for l in WavefunctionLabel::all(3, deg) {
                let cv = cross_validate(&l, &m, Transcription::Corrected).unwrap();
                assert_eq!(cv, CrossValidation::Exact, "{l}");
            }
        }
    }

    #[test]
    fn as_printed_odd_level_needs_gamma_4() {
        let m = model(&[rat(1, 2), rat(1, 3), rat(1, 4)]);
        assert!(closed_form_psi(&label(&[0, 1]), &m, Transcription::AsPrinted).is_err());
        // even levels do not touch it
        assert!(closed_form_psi(&label(&[1, 2]), &m, Transcription::AsPrinted).is_ok());
    }

    #[test]
    fn eigenvalues() {
        let m = model(&[rat(1, 2), rat(1, 2), rat(1, 2)]);
        let e = eigen_check(&label(&[0, 0]), &m, Transcription::Corrected).unwrap();
        assert_eq!(e.scasimir.claimed, rat(5, 2));
        assert!(e.scasimir.holds());
        assert_eq!(e.hamiltonian_quoted.claimed, int(3));
        assert!(!e.hamiltonian_quoted.holds());
        assert_eq!(e.hamiltonian.claimed, rat(15, 4));
        assert!(e.hamiltonian.holds());

        let m4 = model(&[rat(1, 4), rat(1, 3), rat(1, 2), rat(1, 5)]);
        let e4 = eigen_check(&label(&[1, 0, 2]), &m4, Transcription::Corrected).unwrap();
        assert!(e4.scasimir.holds() && e4.hamiltonian_quoted.holds() && e4.hamiltonian.holds());
    }

    #[test]
    fn circle_normalization() {
        let p = ModelParams::new(vec![int(0), int(0)]).unwrap();
        let c = normalization_constants(&label(&[0]), &p, Transcription::Corrected, Precision::default()).unwrap();
        // nu_1^2 / 2 = 1 / (2 pi)
        let prec = Precision::default();
        let expect = HiReal::from_int(1, prec.bits()).div(&HiReal::pi(prec.bits()).mul_rational(&int(2)));
        assert!(c.total_sq().eval(prec).unwrap().close_to(&expect, 45));
        let chk = norm_check(&label(&[0]), &model(&[int(0), int(0)]), Transcription::Corrected, prec).unwrap();
        assert!(chk.is_exactly_one());
    }

    #[test]
    fn odd_parity_branch_factor() {
        let p = ModelParams::new(vec![rat(1, 2), rat(1, 3)]).unwrap();
        let prec = Precision::default();
        let even = normalization_constants(&label(&[2]), &p, Transcription::Corrected, prec).unwrap();
        let odd = normalization_constants(&label(&[3]), &p, Transcription::Corrected, prec).unwrap();
        // same a = 1; the odd case carries (a + gamma_2)/(a + gamma_1)
        let ratio = odd.nu1_sq.mul(&even.nu1_sq.recip().unwrap());
        assert_eq!(ratio, GammaExpr::rational((int(1) + rat(5, 6)) / (int(1) + int(1))));
    }

    #[test]
    fn ladder_identities_hold_n3() {
        let m = model(&[rat(1, 2), rat(1, 3), rat(1, 4)]);
        for deg in 0..=2 {
            for l in WavefunctionLabel::all(3, deg) {
                let psi = kernel_element(&l.j, &m).unwrap();
                for which in LadderIdentity::ALL {
                    for a in 0..=2 {
                        for b in 0..=2 {
                            let (lhs, rhs) =
                                ladder_identity(which, a, b, &psi, deg, &m, Transcription::Corrected).unwrap();
                            assert_eq!(lhs, rhs, "{which} a={a} b={b} {l}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn printed_odd_even_identity_is_off_by_two() {
        let m = model(&[rat(1, 2), rat(1, 3), rat(1, 4)]);
        let psi = kernel_element(&[1, 0], &m).unwrap();
        let (lhs, rhs) = ladder_identity(LadderIdentity::OddEven, 0, 1, &psi, 1, &m, Transcription::AsPrinted).unwrap();
        assert_eq!(lhs, rhs.scale(&int(2)));
    }

    #[test]
    fn unit_norms_n3() {
        let m = model(&[rat(1, 2), rat(1, 3), rat(1, 4)]);
        let prec = Precision::default();
        for deg in 0..=3 {
            for l in WavefunctionLabel::all(3, deg) {
                let chk = norm_check(&l, &m, Transcription::Corrected, prec).unwrap();
                assert!(chk.deviation() < 1e-12, "{l}: {}", chk.value);
                assert!(chk.is_exactly_one(), "{l}: {}", chk.normalized);
            }
        }
    }

    #[test]
    fn unit_norms_n4() {
        let m = model(&[rat(1, 4), rat(1, 3), rat(1, 2), rat(1, 5)]);
        let prec = Precision::default();
        let mut printed_failures = 0;
        for deg in 0..=3 {
            for l in WavefunctionLabel::all(4, deg) {
                let chk = norm_check(&l, &m, Transcription::Corrected, prec).unwrap();
                assert!(chk.is_exactly_one(), "{l}: {}", chk.normalized);
                let printed = normalization_constants(&l, m.params(), Transcription::AsPrinted, prec).unwrap();
                let value = chk.raw.scale(&printed.total_sq());
                if !value.is_one() {
                    printed_failures += 1;
                }
            }
        }
        assert!(printed_failures > 0);
    }

    #[test]
    fn label_enumeration() {
        let ls = WavefunctionLabel::all(3, 2);
        assert_eq!(ls.len(), 3);
        assert!(ls.iter().all(|l| l.m == 2 && l.n() == 3));
        assert_eq!(ls[0].to_string(), "(2; 2,0)");
    }
}
