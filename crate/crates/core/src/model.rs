//! Builders for the operators of the model, in the gauged (Dunkl) picture.
//!
//! The one-axis realization is
//! `D_i = d_i + (mu_i / s_i)(1 - R_i)`, `x_i = s_i`, `E_i = s_i d_i + gamma_i`,
//! and subset realizations are glued together with reflection prefixes.

use std::fmt;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{commutator, gauge_conjugate, OperatorExpr};
use crate::rational::{int, rat, Rational};

use OperatorExpr::{Identity, InvVar, MulVar, Partial, Reflect, Scalar};

/// Dimension and coupling constants `mu_1..mu_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelParams {
    mu: Vec<Rational>,
}

impl ModelParams {
    pub fn new(mu: Vec<Rational>) -> Result<Self> {
        if mu.len() < 2 {
            return Err(Error::InvalidParams(format!(
                "dimension must be at least 2, got {}",
                mu.len()
            )));
        }
        if let Some((i, m)) = mu.iter().enumerate().find(|(_, m)| m.is_negative()) {
            return Err(Error::InvalidParams(format!("mu_{} = {m} is negative", i + 1)));
        }
        Ok(ModelParams { mu })
    }

    pub fn n(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self) -> &[Rational] {
        &self.mu
    }

    /// `mu_i`, 1-based.
    pub fn mu_at(&self, i: usize) -> &Rational {
        &self.mu[i - 1]
    }

    /// `gamma_A = sum_{i in A} (mu_i + 1/2)`.
    pub fn gamma(&self, a: Subset) -> Rational {
        a.elements()
            .map(|i| self.mu_at(i) + rat(1, 2))
            .fold(Rational::zero(), |x, y| x + y)
    }

    pub fn gamma_at(&self, i: usize) -> Rational {
        self.mu_at(i) + rat(1, 2)
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mu: Vec<String> = self.mu.iter().map(|m| format!("{}/{}", m.numer(), m.denom())).collect();
        write!(f, "{}", mu.join(","))
    }
}

/// A subset of `{1, ..., n}` stored as a bit mask (bit `i-1` is element `i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_elements<I: IntoIterator<Item = usize>>(items: I) -> Self {
        Subset(items.into_iter().fold(0, |acc, i| {
            assert!((1..=32).contains(&i), "subset element {i} out of range");
            acc | (1 << (i - 1))
        }))
    }

    pub fn full(n: usize) -> Self {
        Subset::from_elements(1..=n)
    }

    pub fn singleton(i: usize) -> Self {
        Subset::from_elements([i])
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=32).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn max(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    /// Elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> + Clone {
        (1..=32usize).filter(move |&i| self.contains(i))
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn intersection(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    pub fn difference(self, o: Subset) -> Subset {
        Subset(self.0 & !o.0)
    }

    pub fn symmetric_difference(self, o: Subset) -> Subset {
        Subset(self.0 ^ o.0)
    }

    /// Every subset of `[n]`, including the empty one, in bit-mask order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        (0u32..(1u32 << n)).map(Subset)
    }

    pub fn all_nonempty(n: usize) -> impl Iterator<Item = Subset> {
        (1u32..(1u32 << n)).map(Subset)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.elements().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Which reflections precede the `i`-th summand of `D_A` and `x_A`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReflectionPrefix {
    /// `R_1 ... R_{i-1}` over all axes below `i`.
    #[default]
    Full,
    /// Only the axes below `i` that belong to `A`.
    Restricted,
}

impl std::str::FromStr for ReflectionPrefix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(ReflectionPrefix::Full),
            "restricted" => Ok(ReflectionPrefix::Restricted),
            _ => Err(Error::Parse(format!("unknown reflection prefix {s:?}"))),
        }
    }
}

impl fmt::Display for ReflectionPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReflectionPrefix::Full => "full",
            ReflectionPrefix::Restricted => "restricted",
        })
    }
}

/// How to read the closed-form wavefunction and ladder formulas.
///
/// `AsPrinted` keeps the literal transcription, including the parameter
/// `gamma_4` in every odd-parity level operator, the bare `2^{2 alpha}` in
/// the odd-even ladder identity and the dimension-`n` indices in every
/// `eta_k`. `Corrected` generalizes these to level `k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Transcription {
    #[default]
    Corrected,
    AsPrinted,
}

impl fmt::Display for Transcription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Transcription::Corrected => "corrected",
            Transcription::AsPrinted => "as-printed",
        })
    }
}

/// The five osp(1|2) generators of a realization plus its reflection.
#[derive(Clone, Debug)]
pub struct Realization {
    pub d: OperatorExpr,
    pub x: OperatorExpr,
    pub e: OperatorExpr,
    pub r: OperatorExpr,
    pub abs_x_sq: OperatorExpr,
}

impl Realization {
    pub fn d_sq(&self) -> OperatorExpr {
        self.d.clone() * self.d.clone()
    }

    /// sCasimir `(1/2)([D, x] - 1)`.
    pub fn scasimir(&self) -> OperatorExpr {
        rat(1, 2) * (commutator(&self.d, &self.x) - Identity)
    }
}

#[derive(Clone, Debug)]
pub struct Model {
    params: ModelParams,
    prefix: ReflectionPrefix,
}

impl Model {
    pub fn new(params: ModelParams) -> Self {
        Model {
            params,
            prefix: ReflectionPrefix::Full,
        }
    }

    pub fn with_prefix(mut self, prefix: ReflectionPrefix) -> Self {
        self.prefix = prefix;
        self
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn prefix(&self) -> ReflectionPrefix {
        self.prefix
    }

    fn check_axis(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n() {
            return Err(Error::AxisOutOfRange {
                axis: i,
                dim: self.n(),
            });
        }
        Ok(())
    }

    fn check_subset(&self, a: Subset) -> Result<()> {
        if a.max() > self.n() {
            return Err(Error::AxisOutOfRange {
                axis: a.max(),
                dim: self.n(),
            });
        }
        Ok(())
    }

    /// Dunkl operator `d_i + (mu_i / s_i)(1 - R_i)`.
    pub fn tilde_d(&self, i: usize) -> Result<OperatorExpr> {
        self.check_axis(i)?;
        Ok(self.dunkl(i))
    }

    fn dunkl(&self, i: usize) -> OperatorExpr {
        let mu = self.params.mu_at(i);
        if mu.is_zero() {
            return Partial(i);
        }
        OperatorExpr::sum([
            Partial(i),
            mu.clone() * (InvVar(i) * (Identity - Reflect(i))),
        ])
    }

    fn euler(&self, i: usize) -> OperatorExpr {
        MulVar(i) * Partial(i) + Scalar(self.params.gamma_at(i))
    }

    fn reflection_product<I: IntoIterator<Item = usize>>(axes: I) -> OperatorExpr {
        OperatorExpr::product(axes.into_iter().map(Reflect))
    }

    fn prefix_for(&self, i: usize, a: Subset) -> OperatorExpr {
        match self.prefix {
            ReflectionPrefix::Full => Self::reflection_product(1..i),
            ReflectionPrefix::Restricted => {
                Self::reflection_product(a.elements().filter(|&j| j < i))
            }
        }
    }

    /// The unglued realization on axis `i`: `D_i`, `s_i`, `E_i`, `R_i`, `s_i^2`.
    pub fn single_axis_realization(&self, i: usize) -> Result<Realization> {
        self.check_axis(i)?;
        Ok(Realization {
            d: self.dunkl(i),
            x: MulVar(i),
            e: self.euler(i),
            r: Reflect(i),
            abs_x_sq: MulVar(i) * MulVar(i),
        })
    }

    pub fn subset_realization(&self, a: Subset) -> Result<Realization> {
        self.check_subset(a)?;
        if a.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok(Realization {
            d: OperatorExpr::sum(a.elements().map(|i| self.dunkl(i) * self.prefix_for(i, a))),
            x: OperatorExpr::sum(a.elements().map(|i| MulVar(i) * self.prefix_for(i, a))),
            e: OperatorExpr::sum(a.elements().map(|i| self.euler(i))),
            r: Self::reflection_product(a.elements()),
            abs_x_sq: OperatorExpr::sum(a.elements().map(|i| MulVar(i) * MulVar(i))),
        })
    }

    pub fn scasimir(&self, a: Subset) -> Result<OperatorExpr> {
        Ok(self.subset_realization(a)?.scasimir())
    }

    /// `Q_A`: `-1/2` for the empty set, `mu_i` for singletons and
    /// `S_A R_A` otherwise.
    pub fn casimir(&self, a: Subset) -> Result<OperatorExpr> {
        self.check_subset(a)?;
        match a.len() {
            0 => Ok(Scalar(rat(-1, 2))),
            1 => Ok(Scalar(self.params.mu_at(a.max()).clone())),
            _ => self.casimir_from_realization(a),
        }
    }

    /// `S_A R_A` built from the realization even for singletons.
    pub fn casimir_from_realization(&self, a: Subset) -> Result<OperatorExpr> {
        let real = self.subset_realization(a)?;
        Ok(real.scasimir() * real.r)
    }

    /// The conserved quantity `M_A`, written in the original picture with
    /// `-iJ_jk = -(s_j d_k - s_k d_j)` and then gauge conjugated.
    pub fn symmetry_m(&self, a: Subset) -> Result<OperatorExpr> {
        self.check_subset(a)?;
        match a.len() {
            0 => return Ok(Scalar(rat(-1, 2))),
            1 => return Ok(Scalar(self.params.mu_at(a.max()).clone())),
            _ => {}
        }
        Ok(gauge_conjugate(&self.symmetry_m_ungauged(a), self.params.mu()))
    }

    pub fn symmetry_m_ungauged(&self, a: Subset) -> OperatorExpr {
        let mut inner = vec![Scalar(rat(-1, 2))];
        for i in a.elements() {
            inner.push(Scalar(rat(1, 2)));
            inner.push(self.params.mu_at(i).clone() * Reflect(i));
        }
        let elems: Vec<usize> = a.elements().collect();
        for (x, &j) in elems.iter().enumerate() {
            for &k in &elems[x + 1..] {
                let minus_i_j = -(MulVar(j) * Partial(k) - MulVar(k) * Partial(j));
                let term = OperatorExpr::sum([
                    minus_i_j,
                    -(self.params.mu_at(j).clone() * (MulVar(k) * InvVar(j) * Reflect(j))),
                    self.params.mu_at(k).clone() * (MulVar(j) * InvVar(k) * Reflect(k)),
                ]);
                inner.push(term * Self::reflection_product(j..k));
            }
        }
        OperatorExpr::sum(inner) * Self::reflection_product(a.elements())
    }

    /// `S^2 - S - (n-1)(n-3)/4` for the total sCasimir `S`.
    pub fn hamiltonian(&self) -> OperatorExpr {
        let s = self
            .scasimir(Subset::full(self.n()))
            .expect("full subset is valid");
        let n = self.n() as i64;
        OperatorExpr::sum([
            s.clone() * s.clone(),
            -s,
            Scalar(rat(-(n - 1) * (n - 3), 4)),
        ])
    }

    /// Gauged kinetic part `sum_{i<j} J_ij^2` and gauged potential part
    /// `(sum s_l^2) sum_i (mu_i / s_i^2)(mu_i - R_i)`. Neither preserves
    /// polynomials on its own.
    pub fn hamiltonian_rhs_parts(&self) -> (OperatorExpr, OperatorExpr) {
        let n = self.n();
        let mut kinetic = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let l = MulVar(i) * Partial(j) - MulVar(j) * Partial(i);
                kinetic.push(-(l.clone() * l));
            }
        }
        let radius = OperatorExpr::sum((1..=n).map(|l| MulVar(l) * MulVar(l)));
        let potential = OperatorExpr::sum((1..=n).filter_map(|i| {
            let mu = self.params.mu_at(i);
            (!mu.is_zero()).then(|| {
                mu.clone() * (InvVar(i) * InvVar(i) * (Scalar(mu.clone()) - Reflect(i)))
            })
        }));
        let mu = self.params.mu();
        (
            gauge_conjugate(&OperatorExpr::sum(kinetic), mu),
            gauge_conjugate(&(radius * potential), mu),
        )
    }

    pub fn hamiltonian_rhs(&self) -> OperatorExpr {
        let (k, p) = self.hamiltonian_rhs_parts();
        k + p
    }

    /// Right-hand side of the anticommutator `{Q_A, Q_B}`.
    pub fn bi_rhs(&self, a: Subset, b: Subset) -> Result<OperatorExpr> {
        let cap = a.intersection(b);
        let cup = a.union(b);
        Ok(OperatorExpr::sum([
            self.casimir(a.symmetric_difference(b))?,
            int(2) * (self.casimir(cap)? * self.casimir(cup)?),
            int(2) * (self.casimir(a.difference(cap))? * self.casimir(b.difference(cap))?),
        ]))
    }
}

/// Named test vectors for `mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuVector {
    pub label: String,
    pub mu: Vec<Rational>,
}

/// `(1/2, 1/3, 1/4, 1/5, 1/6, ...)` truncated to `n`.
pub fn harmonic_mu(n: usize) -> Vec<Rational> {
    (0..n).map(|i| rat(1, i as i64 + 2)).collect()
}

/// Random non-negative rationals with denominators at most 12.
pub fn random_mu(n: usize, rng: &mut impl Rng) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            let den: i64 = rng.gen_range(1..=12);
            let num: i64 = rng.gen_range(0..=2 * den);
            rat(num, den)
        })
        .collect()
}

/// The standard sweep: the harmonic vector, three seeded random vectors and
/// the zero vector.
pub fn default_mu_vectors(n: usize, seed: u64) -> Vec<MuVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9));
    let mut out = vec![MuVector {
        label: "default".into(),
        mu: harmonic_mu(n),
    }];
    for r in 0..3 {
        out.push(MuVector {
            label: format!("random{r}"),
            mu: random_mu(n, &mut rng),
        });
    }
    out.push(MuVector {
        label: "zero".into(),
        mu: vec![Rational::zero(); n],
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{equal_on_degree, vanishes_on_degree};
    use crate::poly::{ExponentVector, LaurentPoly};
    use num_traits::One;

    fn model(mu: &[(i64, i64)]) -> Model {
        Model::new(ModelParams::new(mu.iter().map(|&(p, q)| rat(p, q)).collect()).unwrap())
    }

    fn mono(e: Vec<i32>) -> LaurentPoly {
        LaurentPoly::monomial(ExponentVector::new(e), Rational::one())
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(vec![int(1)]).is_err());
        assert!(ModelParams::new(vec![int(1), rat(-1, 2)]).is_err());
        let p = ModelParams::new(vec![rat(1, 2), rat(1, 3)]).unwrap();
        assert_eq!(p.gamma(Subset::full(2)), rat(11, 6));
        assert_eq!(p.gamma(Subset::EMPTY), int(0));
    }

    #[test]
    fn subset_algebra() {
        let a = Subset::from_elements([1, 2]);
        let b = Subset::from_elements([2, 3]);
        assert_eq!(a.symmetric_difference(b), Subset::from_elements([1, 3]));
        assert_eq!(a.intersection(b), Subset::singleton(2));
        assert_eq!(a.to_string(), "{1,2}");
        assert_eq!(Subset::all(3).count(), 8);
        assert_eq!(Subset::full(4).max(), 4);
    }

    #[test]
    fn dunkl_examples() {
        let m = model(&[(1, 4), (1, 3)]);
        let d1 = m.tilde_d(1).unwrap();
        assert!(d1.apply(&LaurentPoly::one(2)).unwrap().is_zero());
        // (1 - R) s_1 = 2 s_1
        assert_eq!(
            d1.apply(&mono(vec![1, 0])).unwrap(),
            LaurentPoly::constant(2, rat(3, 2))
        );
        assert_eq!(d1.apply(&mono(vec![2, 0])).unwrap(), mono(vec![1, 0]).scale(&int(2)));
        assert!(m.tilde_d(3).is_err());
    }

    #[test]
    fn subset_realization_examples() {
        let m = model(&[(1, 4), (1, 3), (1, 5)]);
        let r1 = m.subset_realization(Subset::singleton(1)).unwrap();
        assert_eq!(r1.d, m.tilde_d(1).unwrap());
        assert_eq!(r1.x, MulVar(1));
        let r2 = m.subset_realization(Subset::singleton(2)).unwrap();
        assert_eq!(r2.x.apply(&LaurentPoly::one(3)).unwrap(), mono(vec![0, 1, 0]));
        let r12 = m.subset_realization(Subset::from_elements([1, 2])).unwrap();
        let img = r12.x.apply(&mono(vec![1, 0, 0])).unwrap();
        assert_eq!(img, mono(vec![2, 0, 0]) - mono(vec![1, 1, 0]));
        assert!(matches!(
            m.subset_realization(Subset::EMPTY),
            Err(Error::EmptySubset)
        ));
    }

    #[test]
    fn single_axis_scasimir_is_plus_mu_r() {
        let m = model(&[(1, 4), (1, 3)]);
        let s1 = m.scasimir(Subset::singleton(1)).unwrap();
        let plus = m.params().mu_at(1).clone() * Reflect(1);
        assert!(equal_on_degree(&s1, &plus, 2, 6, true).unwrap().is_equal());
        let minus = -(m.params().mu_at(1).clone() * Reflect(1));
        assert!(!equal_on_degree(&s1, &minus, 2, 6, true).unwrap().is_equal());
        for i in 1..=2 {
            let q = m.casimir_from_realization(Subset::singleton(i)).unwrap();
            let c = m.casimir(Subset::singleton(i)).unwrap();
            assert!(equal_on_degree(&q, &c, 2, 6, true).unwrap().is_equal());
        }
    }

    #[test]
    fn casimir_conventions() {
        let m = model(&[(1, 4), (1, 3)]);
        assert_eq!(m.casimir(Subset::EMPTY).unwrap(), Scalar(rat(-1, 2)));
        assert_eq!(m.casimir(Subset::singleton(2)).unwrap(), Scalar(rat(1, 3)));
        assert_eq!(m.symmetry_m(Subset::singleton(1)).unwrap(), Scalar(rat(1, 4)));
    }

    #[test]
    fn symmetry_equals_casimir_in_two_dimensions() {
        let m = model(&[(1, 2), (1, 3)]);
        let a = Subset::full(2);
        let w = equal_on_degree(&m.symmetry_m(a).unwrap(), &m.casimir(a).unwrap(), 2, 8, true)
            .unwrap();
        assert!(w.is_equal(), "{}", w.describe());
    }

    #[test]
    fn symmetry_image_is_polynomial() {
        let m = model(&[(1, 2), (1, 3), (1, 4)]);
        let img = m
            .symmetry_m(Subset::from_elements([1, 3]))
            .unwrap()
            .apply(&mono(vec![0, 1, 0]))
            .unwrap();
        assert!(img.is_polynomial());
    }

    #[test]
    fn hamiltonian_constant() {
        // n = 2: -(1)(-1)/4 = 1/4 enters with sign; at mu = 0 H annihilates 1.
        let m = model(&[(0, 1), (0, 1)]);
        assert!(m.hamiltonian().apply(&LaurentPoly::one(2)).unwrap().is_zero());
        // S = 5/2 on constants when gamma = 3, so H = 25/4 - 5/2 = 15/4.
        let m3 = model(&[(1, 2), (1, 2), (1, 2)]);
        let img = m3.hamiltonian().apply(&LaurentPoly::one(3)).unwrap();
        assert_eq!(img, LaurentPoly::constant(3, rat(15, 4)));
    }

    #[test]
    fn hamiltonian_parts_are_not_separately_polynomial() {
        let m = model(&[(1, 4), (1, 4)]);
        let (kin, pot) = m.hamiltonian_rhs_parts();
        let one = LaurentPoly::one(2);
        assert!(!pot.apply(&one).unwrap().is_polynomial());
        assert!(!kin.apply(&one).unwrap().is_polynomial());
        assert!(m.hamiltonian_rhs().apply(&one).unwrap().is_polynomial());
    }

    #[test]
    fn hamiltonian_identity_small() {
        let m = model(&[(1, 1), (1, 2), (1, 3)]);
        let w = equal_on_degree(&m.hamiltonian_rhs(), &m.hamiltonian(), 3, 4, true).unwrap();
        assert!(w.is_equal(), "{}", w.describe());
    }

    #[test]
    fn bi_rhs_special_cases() {
        let m = model(&[(1, 2), (1, 3), (1, 4)]);
        let a = Subset::from_elements([1, 2]);
        let qa = m.casimir(a).unwrap();
        let same = m.bi_rhs(a, a).unwrap();
        let two_qa_sq = int(2) * (qa.clone() * qa);
        assert!(equal_on_degree(&same, &two_qa_sq, 3, 4, false).unwrap().is_equal());
        let (x, y) = (Subset::singleton(1), Subset::from_elements([2, 3]));
        let disjoint = m.bi_rhs(x, y).unwrap();
        let expect = int(2) * (m.casimir(x).unwrap() * m.casimir(y).unwrap());
        assert!(equal_on_degree(&disjoint, &expect, 3, 4, false).unwrap().is_equal());
    }

    #[test]
    fn reflections_commute_with_hamiltonian() {
        let m = model(&[(1, 2), (1, 3), (1, 4)]);
        let h = m.hamiltonian();
        for i in 1..=3 {
            assert!(vanishes_on_degree(&commutator(&h, &Reflect(i)), 3, 4)
                .unwrap()
                .is_equal());
        }
    }

    #[test]
    fn default_vectors_are_deterministic() {
        let a = default_mu_vectors(3, 7);
        let b = default_mu_vectors(3, 7);
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        assert!(a.iter().all(|v| v.mu.len() == 3 && v.mu.iter().all(|m| !m.is_negative())));
        assert_eq!(a[0].mu, vec![rat(1, 2), rat(1, 3), rat(1, 4)]);
    }
}
