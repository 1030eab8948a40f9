//! Verification suites.
//!
//! Each suite sweeps the configured `mu` vectors and emits one
//! [`CheckRecord`] per (check, parameter point). Records come out in a fixed
//! order: suites in dependency order, then catalog order within a suite,
//! then generation order. Only the `elapsed_us` field varies between runs.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ckfischer::{
    ck_extend, dim_homogeneous, dim_kernel, kernel_basis, kernel_nullspace, rank_of, FischerSolver,
};
use crate::error::{Error, Result};
use crate::hiprec::{HiReal, Precision};
use crate::integrals::{cross_gram, first_off_diagonal, gram_matrix};
use crate::model::{default_mu_vectors, Model, ModelParams, MuVector, ReflectionPrefix, Subset, Transcription};
use crate::operator::{anticommutator, commutator, equal_on_degree, gauge_conjugate, EqualityWitness, OperatorExpr};
use crate::poly::{monomials_of_degree, monomials_up_to, ExponentVector, LaurentPoly};
use crate::rational::{int, rat, to_pq, Rational};
use crate::wavefn::{
    closed_form_basis, cross_validate, eigen_check, ladder_identity, norm_check, sample_kernel_element,
    CrossValidation, LadderIdentity, WavefunctionLabel,
};

/// Suites in dependency order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    #[serde(rename = "selftest")]
    SelfTest,
    Osp,
    Scasimir,
    QaEqMa,
    Hamiltonian,
    BannaiIto,
    Ck,
    Fischer,
    Ladder,
    Wavefunctions,
    Eigen,
    Gram,
    Norms,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::SelfTest,
        Suite::Osp,
        Suite::Scasimir,
        Suite::QaEqMa,
        Suite::Hamiltonian,
        Suite::BannaiIto,
        Suite::Ck,
        Suite::Fischer,
        Suite::Ladder,
        Suite::Wavefunctions,
        Suite::Eigen,
        Suite::Gram,
        Suite::Norms,
    ];

    /// The suites a user can select; the self-test always runs first.
    pub fn selectable() -> &'static [Suite] {
        &Suite::ALL[1..]
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::SelfTest => "selftest",
            Suite::Osp => "osp",
            Suite::Scasimir => "scasimir",
            Suite::QaEqMa => "qa-eq-ma",
            Suite::Hamiltonian => "hamiltonian",
            Suite::BannaiIto => "bannai-ito",
            Suite::Ck => "ck",
            Suite::Fischer => "fischer",
            Suite::Ladder => "ladder",
            Suite::Wavefunctions => "wavefunctions",
            Suite::Eigen => "eigen",
            Suite::Gram => "gram",
            Suite::Norms => "norms",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        // `identities23` is the historical name of the ladder suite
        if s == "identities23" {
            return Ok(Suite::Ladder);
        }
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// One entry of the check catalog.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CheckInfo {
    pub id: &'static str,
    pub suite: Suite,
    /// The formula the check asserts.
    pub tag: &'static str,
}

const fn check(id: &'static str, suite: Suite, tag: &'static str) -> CheckInfo {
    CheckInfo { id, suite, tag }
}

pub const CATALOG: &[CheckInfo] = &[
    check("poly-ring-axioms", Suite::SelfTest, "(pq)r = p(qr), p(q+r) = pq+pr, pq = qp"),
    check("poly-reflect-involution", Suite::SelfTest, "R_i R_i = 1"),
    check("poly-partial-reflect", Suite::SelfTest, "d_i R_i = -R_i d_i"),
    check("op-gauge-homomorphism", Suite::SelfTest, "G^-1 ab G = (G^-1 a G)(G^-1 b G)"),
    check("osp-single-axis", Suite::Osp, "osp(1|2) relations of (D_i, x_i, E_i)"),
    check("osp-subset", Suite::Osp, "osp(1|2) relations of (D_A, x_A, E_A)"),
    check("axis-commute", Suite::Osp, "[z_i, w_j] = 0 for i != j, z, w in {D, x, E}"),
    check("casimir-singleton", Suite::Scasimir, "S_i R_i = mu_i"),
    check("scasimir-anticommute", Suite::Scasimir, "{S_A, D_A} = {S_A, x_A} = 0"),
    check("scasimir-commute", Suite::Scasimir, "[S_A, E_A] = [S_A, |x_A|^2] = [S_A, D_A^2] = 0"),
    check("casimir-central", Suite::Scasimir, "[Q_A, z] = 0 for z in {D_A, x_A, E_A}"),
    check("qa-eq-ma", Suite::QaEqMa, "Q_A = M_A"),
    check("ma-polynomial", Suite::QaEqMa, "gauged M_A maps polynomials to polynomials"),
    check(
        "hamiltonian-identity",
        Suite::Hamiltonian,
        "S^2 - S - (n-1)(n-3)/4 = sum J_ij^2 + |s|^2 sum_i (mu_i/s_i^2)(mu_i - R_i)",
    ),
    check("hamiltonian-reflection", Suite::Hamiltonian, "[H, R_i] = 0"),
    check("hamiltonian-casimir", Suite::Hamiltonian, "[H, Q_A] = 0"),
    check(
        "bi-relation",
        Suite::BannaiIto,
        "{Q_A, Q_B} = Q_(A^B) + 2 Q_(AnB) Q_(AuB) + 2 Q_(A-B) Q_(B-A)",
    ),
    check("bi-rank-one", Suite::BannaiIto, "{K_1, K_2} = K_3 + omega_3 and cyclic, n = 3"),
    check("bi-central", Suite::BannaiIto, "[omega_i, K_j] = 0, n = 3"),
    check("ck-kernel", Suite::Ck, "CK series: D_[k] CK[p] = 0"),
    check("ck-restriction", Suite::Ck, "CK[p] at s_k = 0 equals p"),
    check("kernel-dimension", Suite::Ck, "dim K_m = C(m+n-2, n-2)"),
    check("kernel-basis-rank", Suite::Ck, "nested CK basis is independent and spans ker D_[n] on P_m"),
    check("fischer-dimension", Suite::Fischer, "sum_j dim K_(m-j) = dim P_m"),
    check("fischer-reconstruct", Suite::Fischer, "p = sum_j x^j h_j"),
    check("fischer-components", Suite::Fischer, "h_j in K_(m-j)"),
    check("ladder-identity", Suite::Ladder, "D^a x^b psi_m = c x^(b-a) psi_m (with R_[n] for odd a)"),
    check("wavefn-kernel", Suite::Wavefunctions, "D_[n] psi = 0 for the Jacobi closed form"),
    check("wavefn-rank", Suite::Wavefunctions, "closed forms of degree m span K_m"),
    check("wavefn-cross-validate", Suite::Wavefunctions, "Jacobi closed form = nested CK basis element"),
    check("eigen-scasimir", Suite::Eigen, "S psi = (m + gamma - 1/2) psi"),
    check("eigen-hamiltonian", Suite::Eigen, "H psi = (m + gamma)(m + gamma - 2) psi"),
    check(
        "eigen-hamiltonian-derived",
        Suite::Eigen,
        "H psi = (sigma^2 - sigma - (n-1)(n-3)/4) psi, sigma = m + gamma - 1/2",
    ),
    check("gram-orthogonal", Suite::Gram, "<psi_j, psi_k> = 0 for j != k of equal degree"),
    check("gram-cross-degree", Suite::Gram, "<psi^(m), psi^(m')> = 0 for m != m'"),
    check("norm-unit", Suite::Norms, "<Psi, Psi> = 1 with the closed-form normalization"),
];

pub fn catalog() -> &'static [CheckInfo] {
    CATALOG
}

fn info(id: &str) -> (usize, &'static CheckInfo) {
    CATALOG
        .iter()
        .enumerate()
        .find(|(_, c)| c.id == id)
        .unwrap_or_else(|| panic!("check id {id:?} missing from the catalog"))
}

/// Sweep sizes beyond the operator degree bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub ck_max_m: usize,
    pub wave_max_m: usize,
    pub gram_max_m: usize,
    pub cross_max_m: usize,
    pub ladder_max_m: usize,
    pub ladder_max_power: usize,
    pub fischer_samples: usize,
    pub fischer_dim_max_m: usize,
    pub selftest_samples: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            ck_max_m: 6,
            wave_max_m: 5,
            gram_max_m: 4,
            cross_max_m: 3,
            ladder_max_m: 4,
            ladder_max_power: 3,
            fischer_samples: 25,
            fischer_dim_max_m: 8,
            selftest_samples: 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub n: usize,
    /// Explicit parameters; `None` runs the default sweep.
    pub mu: Option<Vec<Rational>>,
    pub max_degree: usize,
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub precision_digits: u32,
    pub reflection_prefix: ReflectionPrefix,
    pub transcription: Transcription,
    pub limits: Limits,
}

/// `8` for `n <= 3`, else `6`.
pub fn default_max_degree(n: usize) -> usize {
    if n <= 3 {
        8
    } else {
        6
    }
}

impl SuiteConfig {
    pub fn new(n: usize) -> Self {
        SuiteConfig {
            n,
            mu: None,
            max_degree: default_max_degree(n),
            suites: Suite::selectable().to_vec(),
            seed: 0,
            precision_digits: Precision::DEFAULT_DIGITS,
            reflection_prefix: ReflectionPrefix::Full,
            transcription: Transcription::Corrected,
            limits: Limits::default(),
        }
    }

    pub fn with_suites(mut self, suites: &[Suite]) -> Self {
        self.suites = suites.to_vec();
        self
    }

    pub fn with_mu(mut self, mu: Vec<Rational>) -> Self {
        self.mu = Some(mu);
        self
    }

    pub fn with_max_degree(mut self, d: usize) -> Self {
        self.max_degree = d;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParams(format!("n = {} but n >= 2 is required", self.n)));
        }
        if self.n > 8 {
            return Err(Error::InvalidParams(format!("n = {} exceeds the supported 8", self.n)));
        }
        if self.max_degree < 1 {
            return Err(Error::InvalidParams("max degree must be at least 1".into()));
        }
        if let Some(mu) = &self.mu {
            ModelParams::new(mu.clone())?;
            if mu.len() != self.n {
                return Err(Error::DimensionMismatch(self.n, mu.len()));
            }
        }
        Ok(())
    }

    pub fn mu_vectors(&self) -> Vec<MuVector> {
        match &self.mu {
            Some(mu) => vec![MuVector {
                label: "given".into(),
                mu: mu.clone(),
            }],
            None => default_mu_vectors(self.n, self.seed),
        }
    }

    pub fn precision(&self) -> Precision {
        Precision::digits(self.precision_digits)
    }

    /// Suites to run: the self-test plus the selection, in dependency order.
    pub fn plan(&self) -> Vec<Suite> {
        let mut s: Vec<Suite> = self.suites.clone();
        s.push(Suite::SelfTest);
        s.sort();
        s.dedup();
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub tag: String,
    pub suite: Suite,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub elapsed_us: u64,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    /// JSON with the timing field zeroed.
    pub fn to_json_untimed(&self) -> String {
        let mut r = self.clone();
        r.elapsed_us = 0;
        r.to_json()
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub records: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(CheckRecord::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed())
    }

    pub fn of_check<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a CheckRecord> + 'a {
        self.records.iter().filter(move |r| r.check == id)
    }

    pub fn json_lines(&self, timed: bool) -> Vec<String> {
        self.records
            .iter()
            .map(|r| if timed { r.to_json() } else { r.to_json_untimed() })
            .collect()
    }

    /// Per-check pass/fail counts followed by the overall verdict.
    pub fn summary(&self) -> Vec<String> {
        let mut counts: Vec<(&str, Suite, usize, usize)> = Vec::new();
        for r in &self.records {
            match counts.iter_mut().find(|c| c.0 == r.check) {
                Some(c) => {
                    if r.passed() {
                        c.2 += 1
                    } else {
                        c.3 += 1
                    }
                }
                None => counts.push((&r.check, r.suite, usize::from(r.passed()), usize::from(!r.passed()))),
            }
        }
        let mut out: Vec<String> = counts
            .iter()
            .map(|(id, suite, p, f)| {
                let verdict = if *f == 0 { "PASS" } else { "FAIL" };
                format!("{verdict} {suite}/{id}: {p} passed, {f} failed")
            })
            .collect();
        let failed = self.failures().count();
        out.push(format!(
            "{}: {} records, {} failed",
            if failed == 0 { "ALL PASS" } else { "FAILURES" },
            self.records.len(),
            failed
        ));
        out
    }
}

/// Outcome of one check before it becomes a record.
struct Outcome {
    pass: bool,
    counterexample: Option<String>,
    detail: Option<String>,
}

impl Outcome {
    fn pass() -> Self {
        Outcome {
            pass: true,
            counterexample: None,
            detail: None,
        }
    }

    fn fail(why: impl Into<String>) -> Self {
        Outcome {
            pass: false,
            counterexample: Some(clip(why.into())),
            detail: None,
        }
    }

    fn from_bool(ok: bool, why: impl FnOnce() -> String) -> Self {
        if ok {
            Outcome::pass()
        } else {
            Outcome::fail(why())
        }
    }

    fn from_witness(w: &EqualityWitness) -> Self {
        Outcome::from_bool(w.is_equal(), || w.describe())
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(clip(d.into()));
        self
    }

    /// Keeps the first failure of a group of sub-checks.
    fn and(self, next: impl FnOnce() -> Outcome) -> Outcome {
        if self.pass {
            next()
        } else {
            self
        }
    }
}

fn clip(s: String) -> String {
    const MAX: usize = 4000;
    if s.len() <= MAX {
        return s;
    }
    let mut cut = MAX;
    while !s.is_char_boundary(cut) {
        cut -= 1;
    }
    format!("{}...", &s[..cut])
}

type Params = BTreeMap<String, String>;

fn rec(id: &str, params: Params, out: Result<Outcome>, started: Instant) -> CheckRecord {
    let (_, ci) = info(id);
    let out = out.unwrap_or_else(|e| Outcome::fail(format!("error: {e}")));
    CheckRecord {
        check: id.to_string(),
        tag: ci.tag.to_string(),
        suite: ci.suite,
        params,
        status: if out.pass { Status::Pass } else { Status::Fail },
        counterexample: out.counterexample,
        detail: out.detail,
        elapsed_us: started.elapsed().as_micros() as u64,
    }
}

fn mu_string(mu: &[Rational]) -> String {
    mu.iter().map(to_pq).collect::<Vec<_>>().join(",")
}

/// Shared per-`mu` context.
struct Ctx<'a> {
    cfg: &'a SuiteConfig,
    model: Model,
    mu: &'a MuVector,
}

impl Ctx<'_> {
    fn n(&self) -> usize {
        self.cfg.n
    }

    fn d(&self) -> usize {
        self.cfg.max_degree
    }

    fn params(&self, extra: &[(&str, String)]) -> Params {
        let mut p = Params::new();
        p.insert("n".into(), self.n().to_string());
        p.insert("mu".into(), mu_string(&self.mu.mu));
        p.insert("mu_label".into(), self.mu.label.clone());
        for (k, v) in extra {
            p.insert((*k).to_string(), v.clone());
        }
        p
    }

    /// Seeded generator, distinct per suite and `mu` vector.
    fn rng(&self, salt: u64) -> ChaCha8Rng {
        let h = self
            .mu
            .label
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
        ChaCha8Rng::seed_from_u64(self.cfg.seed ^ h ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    fn op_eq(&self, a: &OperatorExpr, b: &OperatorExpr, poly: bool) -> Result<Outcome> {
        Ok(Outcome::from_witness(&equal_on_degree(a, b, self.n(), self.d(), poly)?))
    }

    fn vanishes(&self, a: &OperatorExpr) -> Result<Outcome> {
        self.op_eq(a, &OperatorExpr::zero(), true)
    }
}

fn timed(id: &str, params: Params, f: impl FnOnce() -> Result<Outcome>) -> CheckRecord {
    let t = Instant::now();
    rec(id, params, f(), t)
}

pub fn random_poly(n: usize, max_degree: usize, rng: &mut impl Rng) -> LaurentPoly {
    let mut p = LaurentPoly::zero(n);
    for e in monomials_up_to(n, max_degree) {
        if rng.gen_bool(0.4) {
            p.add_term(e, rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)));
        }
    }
    p
}

pub fn random_homogeneous(n: usize, m: usize, rng: &mut impl Rng) -> LaurentPoly {
    let monos = monomials_of_degree(n, m);
    loop {
        let mut p = LaurentPoly::zero(n);
        for e in &monos {
            if rng.gen_bool(0.6) {
                p.add_term(e.clone(), rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)));
            }
        }
        if !p.is_zero() {
            return p;
        }
    }
}

fn selftest(ctx: &Ctx) -> Vec<CheckRecord> {
    let n = ctx.n();
    let samples = ctx.cfg.limits.selftest_samples;
    let mut rng = ctx.rng(1);
    let triples: Vec<[LaurentPoly; 3]> = (0..samples)
        .map(|_| std::array::from_fn(|_| random_poly(n, 3, &mut rng)))
        .collect();
    let mut out = vec![timed("poly-ring-axioms", ctx.params(&[]), || {
        for (t, [p, q, r]) in triples.iter().enumerate() {
            let assoc = &(p * q) * r == p * &(q * r);
            let distrib = p * &(q + r) == &(p * q) + &(p * r);
            let comm = p * q == q * p;
            if !(assoc && distrib && comm) {
                return Ok(Outcome::fail(format!("sample {t}: p = {p}, q = {q}, r = {r}")));
            }
        }
        Ok(Outcome::pass())
    })];
    out.push(timed("poly-reflect-involution", ctx.params(&[]), || {
        for [p, _, _] in &triples {
            for i in 1..=n {
                if p.reflect(i)?.reflect(i)? != *p {
                    return Ok(Outcome::fail(format!("axis {i}, p = {p}")));
                }
            }
        }
        Ok(Outcome::pass())
    }));
    out.push(timed("poly-partial-reflect", ctx.params(&[]), || {
        for [p, _, _] in &triples {
            for i in 1..=n {
                if p.reflect(i)?.partial(i)? != -p.partial(i)?.reflect(i)? {
                    return Ok(Outcome::fail(format!("axis {i}, p = {p}")));
                }
            }
        }
        Ok(Outcome::pass())
    }));
    out.push(timed("op-gauge-homomorphism", ctx.params(&[("D", ctx.d().to_string())]), || {
        use OperatorExpr::{InvVar, MulVar, Partial, Reflect};
        let atoms = |i: usize| [Partial(i), MulVar(i), InvVar(i), Reflect(i)];
        let mu = ctx.model.params().mu();
        for i in 1..=n {
            for j in 1..=n {
                for a in atoms(i) {
                    for b in atoms(j) {
                        let lhs = gauge_conjugate(&(a.clone() * b.clone()), mu);
                        let rhs = gauge_conjugate(&a, mu) * gauge_conjugate(&b, mu);
                        let w = equal_on_degree(&lhs, &rhs, n, ctx.d().min(4), false)?;
                        if !w.is_equal() {
                            return Ok(Outcome::fail(format!("{a} * {b}: {}", w.describe())));
                        }
                    }
                }
            }
        }
        Ok(Outcome::pass())
    }));
    out
}

/// The ten osp(1|2) relations as `(name, lhs, rhs)`.
fn osp_relations(r: &crate::model::Realization) -> Vec<(&'static str, OperatorExpr, OperatorExpr)> {
    let d2 = r.d_sq();
    let two = int(2);
    vec![
        ("{x,x}=2|x|^2", anticommutator(&r.x, &r.x), two.clone() * r.abs_x_sq.clone()),
        ("{D,D}=2D^2", anticommutator(&r.d, &r.d), two.clone() * d2.clone()),
        ("{x,D}=2E", anticommutator(&r.x, &r.d), two.clone() * r.e.clone()),
        ("[D,E]=D", commutator(&r.d, &r.e), r.d.clone()),
        ("[D,|x|^2]=2x", commutator(&r.d, &r.abs_x_sq), two.clone() * r.x.clone()),
        ("[E,x]=x", commutator(&r.e, &r.x), r.x.clone()),
        ("[D^2,x]=2D", commutator(&d2, &r.x), two.clone() * r.d.clone()),
        ("[D^2,E]=2D^2", commutator(&d2, &r.e), two.clone() * d2.clone()),
        ("[D^2,|x|^2]=4E", commutator(&d2, &r.abs_x_sq), int(4) * r.e.clone()),
        ("[E,|x|^2]=2|x|^2", commutator(&r.e, &r.abs_x_sq), two * r.abs_x_sq.clone()),
    ]
}

fn osp(ctx: &Ctx) -> Vec<CheckRecord> {
    let n = ctx.n();
    let d = ctx.d().to_string();
    let mut out = Vec::new();
    for i in 1..=n {
        let real = ctx.model.single_axis_realization(i).expect("axis in range");
        for (name, lhs, rhs) in osp_relations(&real) {
            out.push(timed(
                "osp-single-axis",
                ctx.params(&[("axis", i.to_string()), ("relation", name.into()), ("D", d.clone())]),
                || ctx.op_eq(&lhs, &rhs, true),
            ));
        }
    }
    for a in Subset::all_nonempty(n) {
        let real = ctx.model.subset_realization(a).expect("subset in range");
        for (name, lhs, rhs) in osp_relations(&real) {
            out.push(timed(
                "osp-subset",
                ctx.params(&[("A", a.to_string()), ("relation", name.into()), ("D", d.clone())]),
                || ctx.op_eq(&lhs, &rhs, true),
            ));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(timed(
                "axis-commute",
                ctx.params(&[("axes", format!("{i},{j}")), ("D", d.clone())]),
                || {
                    let ri = ctx.model.single_axis_realization(i)?;
                    let rj = ctx.model.single_axis_realization(j)?;
                    let names = ["D", "x", "E"];
                    let zi = [&ri.d, &ri.x, &ri.e];
                    let zj = [&rj.d, &rj.x, &rj.e];
                    for (a, z) in zi.iter().enumerate() {
                        for (b, w) in zj.iter().enumerate() {
                            let o = ctx.vanishes(&commutator(z, w))?;
                            if !o.pass {
                                return Ok(Outcome::fail(format!(
                                    "[{}_{i}, {}_{j}]: {}",
                                    names[a],
                                    names[b],
                                    o.counterexample.unwrap_or_default()
                                )));
                            }
                        }
                    }
                    Ok(Outcome::pass())
                },
            ));
        }
    }
    out
}

fn scasimir(ctx: &Ctx) -> Vec<CheckRecord> {
    let n = ctx.n();
    let d = ctx.d().to_string();
    let mut out = Vec::new();
    for i in 1..=n {
        out.push(timed(
            "casimir-singleton",
            ctx.params(&[("axis", i.to_string()), ("D", d.clone())]),
            || {
                let q = ctx.model.casimir_from_realization(Subset::singleton(i))?;
                ctx.op_eq(&q, &OperatorExpr::scalar(ctx.model.params().mu_at(i).clone()), true)
            },
        ));
    }
    for a in Subset::all_nonempty(n) {
        let p = || ctx.params(&[("A", a.to_string()), ("D", d.clone())]);
        let real = ctx.model.subset_realization(a).expect("subset in range");
        let s = real.scasimir();
        out.push(timed("scasimir-anticommute", p(), || {
            ctx.vanishes(&anticommutator(&s, &real.d))
                .map(|o| o.and(|| ctx.vanishes(&anticommutator(&s, &real.x)).unwrap_or_else(err_outcome)))
        }));
        out.push(timed("scasimir-commute", p(), || {
            let mut o = Outcome::pass();
            for z in [&real.e, &real.abs_x_sq, &real.d_sq()] {
                o = o.and(|| ctx.vanishes(&commutator(&s, z)).unwrap_or_else(err_outcome));
            }
            Ok(o)
        }));
        out.push(timed("casimir-central", p(), || {
            let q = ctx.model.casimir_from_realization(a)?;
            let mut o = Outcome::pass();
            for z in [&real.d, &real.x, &real.e] {
                o = o.and(|| ctx.vanishes(&commutator(&q, z)).unwrap_or_else(err_outcome));
            }
            Ok(o)
        }));
    }
    out
}

fn err_outcome(e: Error) -> Outcome {
    Outcome::fail(format!("error: {e}"))
}

fn qa_eq_ma(ctx: &Ctx) -> Vec<CheckRecord> {
    let n = ctx.n();
    let d = ctx.d().to_string();
    let mut out = Vec::new();
    for a in Subset::all(n).filter(|a| a.len() >= 2) {
        let p = || ctx.params(&[("A", a.to_string()), ("D", d.clone())]);
        out.push(timed("qa-eq-ma", p(), || {
            ctx.op_eq(&ctx.model.casimir(a)?, &ctx.model.symmetry_m(a)?, false)
        }));
        out.push(timed("ma-polynomial", p(), || {
            let m = ctx.model.symmetry_m(a)?;
            for e in monomials_up_to(n, ctx.d()) {
                let img = m.apply(&LaurentPoly::monomial(e.clone(), Rational::one()))?;
                if !img.is_polynomial() {
                    return Ok(Outcome::fail(format!("at s^{e}: {img}")));
                }
            }
            Ok(Outcome::pass())
        }));
    }
    out
}

fn hamiltonian(ctx: &Ctx) -> Vec<CheckRecord> {
    let n = ctx.n();
    let d = ctx.d().to_string();
    let h = ctx.model.hamiltonian();
    let mut out = vec![timed("hamiltonian-identity", ctx.params(&[("D", d.clone())]), || {
        ctx.op_eq(&h, &ctx.model.hamiltonian_rhs(), true)
    })];
    for i in 1..=n {
        out.push(timed(
            "hamiltonian-reflection",
            ctx.params(&[("axis", i.to_string()), ("D", d.clone())]),
            || ctx.vanishes(&commutator(&h, &OperatorExpr::Reflect(i))),
        ));
    }
    for a in Subset::all(n).filter(|a| a.len() >= 2) {
        out.push(timed(
            "hamiltonian-casimir",
            ctx.params(&[("A", a.to_string()), ("D", d.clone())]),
            || ctx.vanishes(&commutator(&h, &ctx.model.casimir(a)?)),
        ));
    }
    out
}

fn bannai_ito(ctx: &Ctx) -> Vec<CheckRecord> {
    let n = ctx.n();
    let d = ctx.d().to_string();
    let pairs: Vec<(Subset, Subset)> = Subset::all_nonempty(n)
        .flat_map(|a| Subset::all_nonempty(n).map(move |b| (a, b)))
        .collect();
    let mut out: Vec<CheckRecord> = pairs
        .par_iter()
        .map(|&(a, b)| {
            timed(
                "bi-relation",
                ctx.params(&[("A", a.to_string()), ("B", b.to_string()), ("D", d.clone())]),
                || {
                    let lhs = anticommutator(&ctx.model.casimir(a)?, &ctx.model.casimir(b)?);
                    ctx.op_eq(&lhs, &ctx.model.bi_rhs(a, b)?, true)
                },
            )
        })
        .collect();
    if n == 3 {
        let q = |s: &[usize]| ctx.model.casimir(Subset::from_elements(s.iter().copied()));
        let two = || OperatorExpr::scalar(int(2));
        let build = || -> Result<_> {
            let k = [q(&[1, 2])?, q(&[2, 3])?, q(&[1, 3])?];
            let full = q(&[1, 2, 3])?;
            let omega = |x: usize, y: usize, z: usize| -> Result<OperatorExpr> {
                Ok(two() * q(&[x])? * full.clone() + two() * q(&[y])? * q(&[z])?)
            };
            let w = [omega(3, 1, 2)?, omega(1, 2, 3)?, omega(2, 1, 3)?];
            Ok((k, w))
        };
        out.push(timed("bi-rank-one", ctx.params(&[("D", d.clone())]), || {
            let (k, w) = build()?;
            // {K_1,K_2} = K_3 + w_3, {K_2,K_3} = K_1 + w_1, {K_3,K_1} = K_2 + w_2
            let mut o = Outcome::pass();
            for (x, y, z) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                o = o.and(|| {
                    ctx.op_eq(&anticommutator(&k[x], &k[y]), &(k[z].clone() + w[z].clone()), true)
                        .unwrap_or_else(err_outcome)
                });
            }
            Ok(o)
        }));
        out.push(timed("bi-central", ctx.params(&[("D", d.clone())]), || {
            let (k, w) = build()?;
            let mut o = Outcome::pass();
            for wi in &w {
                for kj in &k {
                    o = o.and(|| ctx.vanishes(&commutator(wi, kj)).unwrap_or_else(err_outcome));
                }
            }
            Ok(o)
        }));
    }
    out
}

/// Embeds a monomial of `s_1..s_{k-1}` into `n` variables.
fn lower_monomials(n: usize, k: usize, m: usize) -> Vec<LaurentPoly> {
    monomials_of_degree(k - 1, m)
        .into_iter()
        .map(|e| {
            let mut v = e.as_slice().to_vec();
            v.resize(n, 0);
            LaurentPoly::monomial(ExponentVector::new(v), Rational::one())
        })
        .collect()
}

fn ck(ctx: &Ctx) -> Vec<CheckRecord> {
    let n = ctx.n();
    let max_m = ctx.cfg.limits.ck_max_m;
    let mut out = Vec::new();
    let mut rng = ctx.rng(7);
    for k in 2..=n {
        let dk = ctx.model.subset_realization(Subset::full(k)).expect("k <= n").d;
        for m in 0..=max_m {
            let p = || ctx.params(&[("k", k.to_string()), ("m", m.to_string())]);
            let inputs = lower_monomials(n, k, m);
            let ext: Vec<Result<LaurentPoly>> = inputs.par_iter().map(|p| ck_extend(p, k, &ctx.model)).collect();
            out.push(timed("ck-kernel", p(), || {
                for (pin, e) in inputs.iter().zip(&ext) {
                    let e = e.as_ref().map_err(Clone::clone)?;
                    let img = dk.apply(e)?;
                    if !img.is_zero() || !e.is_homogeneous_of(m as i64) {
                        return Ok(Outcome::fail(format!("p = {pin}: D CK[p] = {img}")));
                    }
                }
                Ok(Outcome::pass())
            }));
            // basis inputs plus random combinations
            let mut samples = inputs.clone();
            for _ in 0..5 {
                let mut q = LaurentPoly::zero(n);
                for b in &inputs {
                    q += &b.scale(&rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)));
                }
                samples.push(q);
            }
            out.push(timed("ck-restriction", p(), || {
                for q in &samples {
                    let e = ck_extend(q, k, &ctx.model)?;
                    let back = e.restrict_zero(k)?;
                    if back != *q {
                        return Ok(Outcome::fail(format!("p = {q}: restriction {back}")));
                    }
                }
                Ok(Outcome::pass())
            }));
        }
    }
    for m in 0..=max_m {
        let p = || ctx.params(&[("m", m.to_string())]);
        let expected = dim_kernel(n, m);
        out.push(timed("kernel-dimension", p(), || {
            let null = kernel_nullspace(m, &ctx.model)?;
            Ok(Outcome::from_bool(null.len() == expected, || {
                format!("null space has dimension {}, expected {expected}", null.len())
            })
            .detail(format!("dim = {}", null.len())))
        }));
        out.push(timed("kernel-basis-rank", p(), || {
            let basis = kernel_basis(m, &ctx.model)?;
            let rank = rank_of(&basis.elements, n, m)?;
            let mut both = basis.elements.clone();
            both.extend(kernel_nullspace(m, &ctx.model)?);
            let joint = rank_of(&both, n, m)?;
            Ok(Outcome::from_bool(
                rank == expected && joint == expected && basis.len() == expected,
                || format!("{} elements, rank {rank}, joint rank with null space {joint}, expected {expected}", basis.len()),
            ))
        }));
    }
    out
}

fn fischer(ctx: &Ctx) -> Vec<CheckRecord> {
    let n = ctx.n();
    let lim = &ctx.cfg.limits;
    let mut out = vec![timed(
        "fischer-dimension",
        ctx.params(&[("max_m", lim.fischer_dim_max_m.to_string())]),
        || {
            for m in 0..=lim.fischer_dim_max_m {
                let sum: usize = (0..=m).map(|j| dim_kernel(n, m - j)).sum();
                if sum != dim_homogeneous(n, m) {
                    return Ok(Outcome::fail(format!("m = {m}: {sum} != {}", dim_homogeneous(n, m))));
                }
            }
            Ok(Outcome::pass())
        },
    )];
    let mut rng = ctx.rng(11);
    let dk = ctx.model.subset_realization(Subset::full(n)).expect("full subset").d;
    for m in 0..=lim.ck_max_m {
        let samples: Vec<LaurentPoly> = (0..lim.fischer_samples)
            .map(|_| random_homogeneous(n, m, &mut rng))
            .collect();
        let t = Instant::now();
        let decomposed = FischerSolver::new(m, &ctx.model).and_then(|s| {
            let comps = s.decompose_many(&samples)?;
            Ok((s, comps))
        });
        let p = || ctx.params(&[("m", m.to_string()), ("samples", samples.len().to_string())]);
        match decomposed {
            Err(e) => {
                out.push(rec("fischer-reconstruct", p(), Err(e.clone()), t));
                out.push(rec("fischer-components", p(), Err(e), t));
            }
            Ok((solver, comps)) => {
                out.push(rec(
                    "fischer-reconstruct",
                    p(),
                    (|| {
                        for (q, h) in samples.iter().zip(&comps) {
                            let back = solver.reassemble(h, &ctx.model)?;
                            if back != *q {
                                return Ok(Outcome::fail(format!("p = {q}: reassembled {back}")));
                            }
                        }
                        Ok(Outcome::pass())
                    })(),
                    t,
                ));
                out.push(timed("fischer-components", p(), || {
                    for (q, h) in samples.iter().zip(&comps) {
                        for (j, hj) in h.iter().enumerate() {
                            if hj.is_zero() {
                                continue;
                            }
                            if !hj.is_homogeneous_of((m - j) as i64) || !dk.apply(hj)?.is_zero() {
                                return Ok(Outcome::fail(format!("p = {q}: h_{j} = {hj} not in K_{}", m - j)));
                            }
                        }
                    }
                    Ok(Outcome::pass())
                }));
            }
        }
    }
    out
}

fn ladder(ctx: &Ctx) -> Vec<CheckRecord> {
    let lim = &ctx.cfg.limits;
    let mut rng = ctx.rng(13);
    let mut out = Vec::new();
    for m in 0..=lim.ladder_max_m {
        let psi = sample_kernel_element(m, &ctx.model, &mut rng);
        for which in LadderIdentity::ALL {
            out.push(timed(
                "ladder-identity",
                ctx.params(&[
                    ("m", m.to_string()),
                    ("identity", which.to_string()),
                    ("max_power", lim.ladder_max_power.to_string()),
                ]),
                || {
                    let psi = psi.as_ref().map_err(Clone::clone)?;
                    for a in 0..=lim.ladder_max_power {
                        for b in 0..=lim.ladder_max_power {
                            let (lhs, rhs) =
                                ladder_identity(which, a, b, psi, m, &ctx.model, ctx.cfg.transcription)?;
                            if lhs != rhs {
                                return Ok(Outcome::fail(format!("a = {a}, b = {b}: lhs = {lhs}; rhs = {rhs}")));
                            }
                        }
                    }
                    Ok(Outcome::pass())
                },
            ));
        }
    }
    out
}

fn wavefunctions(ctx: &Ctx) -> Vec<CheckRecord> {
    let n = ctx.n();
    let mode = ctx.cfg.transcription;
    let dk = ctx.model.subset_realization(Subset::full(n)).expect("full subset").d;
    let mut out = Vec::new();
    for m in 0..=ctx.cfg.limits.wave_max_m {
        let p = || ctx.params(&[("m", m.to_string()), ("transcription", mode.to_string())]);
        let t = Instant::now();
        let basis = closed_form_basis(m, &ctx.model, mode);
        let basis = match basis {
            Ok(b) => b,
            Err(e) => {
                for id in ["wavefn-kernel", "wavefn-rank", "wavefn-cross-validate"] {
                    out.push(rec(id, p(), Err(e.clone()), t));
                }
                continue;
            }
        };
        let (labels, elems) = &basis;
        out.push(rec(
            "wavefn-kernel",
            p(),
            (|| {
                for (l, psi) in labels.iter().zip(elems) {
                    let img = dk.apply(psi)?;
                    if !img.is_zero() || !psi.is_homogeneous_of(m as i64) {
                        return Ok(Outcome::fail(format!("{l}: D psi = {img}")));
                    }
                }
                Ok(Outcome::pass())
            })(),
            t,
        ));
        out.push(timed("wavefn-rank", p(), || {
            let rank = rank_of(elems, n, m)?;
            let expected = dim_kernel(n, m);
            Ok(Outcome::from_bool(rank == expected, || format!("rank {rank}, expected {expected}"))
                .detail(format!("rank = {rank}")))
        }));
        out.push(timed("wavefn-cross-validate", p(), || {
            let results: Vec<(WavefunctionLabel, CrossValidation)> = labels
                .par_iter()
                .map(|l| Ok((l.clone(), cross_validate(l, &ctx.model, mode)?)))
                .collect::<Result<_>>()?;
            let ratios: Vec<String> = results
                .iter()
                .map(|(l, cv)| match cv.ratio() {
                    Some(r) => format!("{l}={}", to_pq(&r)),
                    None => format!("{l}=mismatch"),
                })
                .collect();
            let bad = results.iter().find(|(_, cv)| !cv.is_match());
            let o = match bad {
                None => Outcome::pass(),
                Some((l, CrossValidation::Mismatch { closed, ck })) => {
                    Outcome::fail(format!("{l}: closed form {closed}; CK {ck}"))
                }
                Some(_) => unreachable!("only mismatches fail"),
            };
            Ok(o.detail(format!("ratios {}", ratios.join(" "))))
        }));
    }
    out
}

fn eigen(ctx: &Ctx) -> Vec<CheckRecord> {
    let n = ctx.n();
    let mode = ctx.cfg.transcription;
    let mut out = Vec::new();
    for m in 0..=ctx.cfg.limits.wave_max_m {
        let labels = WavefunctionLabel::all(n, m);
        let t = Instant::now();
        let checks: Result<Vec<_>> = labels
            .par_iter()
            .map(|l| eigen_check(l, &ctx.model, mode))
            .collect();
        let p = || ctx.params(&[("m", m.to_string())]);
        let checks = match checks {
            Ok(c) => c,
            Err(e) => {
                for id in ["eigen-scasimir", "eigen-hamiltonian", "eigen-hamiltonian-derived"] {
                    out.push(rec(id, p(), Err(e.clone()), t));
                }
                continue;
            }
        };
        type Pick = fn(&crate::wavefn::EigenCheck) -> &crate::wavefn::EigenTest;
        let picks: [(&str, Pick); 3] = [
            ("eigen-scasimir", |c| &c.scasimir),
            ("eigen-hamiltonian", |c| &c.hamiltonian_quoted),
            ("eigen-hamiltonian-derived", |c| &c.hamiltonian),
        ];
        for (id, pick) in picks {
            let claimed = pick(&checks[0]).claimed.clone();
            let o = match labels.iter().zip(&checks).find(|(_, c)| !pick(c).holds()) {
                None => Outcome::pass(),
                Some((l, c)) => Outcome::fail(format!(
                    "{l}: residual {} for claimed eigenvalue {}",
                    pick(c).residual,
                    to_pq(&pick(c).claimed)
                )),
            };
            out.push(rec(id, p(), Ok(o.detail(format!("eigenvalue = {}", to_pq(&claimed)))), t));
        }
    }
    out
}

fn gram(ctx: &Ctx) -> Vec<CheckRecord> {
    let lim = &ctx.cfg.limits;
    let mode = ctx.cfg.transcription;
    let params = ctx.model.params();
    let top = lim.gram_max_m.max(lim.cross_max_m);
    let mut bases: Vec<Result<(Vec<WavefunctionLabel>, Vec<LaurentPoly>)>> = Vec::new();
    for m in 0..=top {
        bases.push(closed_form_basis(m, &ctx.model, mode));
    }
    let mut out = Vec::new();
    for (m, basis) in bases.iter().enumerate().take(lim.gram_max_m + 1) {
        out.push(timed("gram-orthogonal", ctx.params(&[("m", m.to_string())]), || {
            let (labels, elems) = basis.as_ref().map_err(Clone::clone)?;
            let g = gram_matrix(elems, params)?;
            Ok(match first_off_diagonal(&g) {
                None => Outcome::pass(),
                Some((i, j, v)) => Outcome::fail(format!("<{}, {}> = {v}", labels[i], labels[j])),
            })
        }));
    }
    for m in 0..=lim.cross_max_m {
        for m2 in m + 1..=lim.cross_max_m {
            out.push(timed(
                "gram-cross-degree",
                ctx.params(&[("m", m.to_string()), ("m2", m2.to_string())]),
                || {
                    let (la, ea) = bases[m].as_ref().map_err(Clone::clone)?;
                    let (lb, eb) = bases[m2].as_ref().map_err(Clone::clone)?;
                    let g = cross_gram(ea, eb, params)?;
                    for (i, row) in g.iter().enumerate() {
                        for (j, v) in row.iter().enumerate() {
                            if !v.is_zero() {
                                return Ok(Outcome::fail(format!("<{}, {}> = {v}", la[i], lb[j])));
                            }
                        }
                    }
                    Ok(Outcome::pass())
                },
            ));
        }
    }
    out
}

/// Tolerance for numerically evaluated unit norms.
pub const NORM_TOLERANCE: f64 = 1e-12;

fn norms(ctx: &Ctx) -> Vec<CheckRecord> {
    let n = ctx.n();
    let mode = ctx.cfg.transcription;
    let prec = ctx.cfg.precision();
    let mut out = Vec::new();
    for m in 0..=ctx.cfg.limits.gram_max_m {
        for l in WavefunctionLabel::all(n, m) {
            out.push(timed(
                "norm-unit",
                ctx.params(&[
                    ("label", l.to_string()),
                    ("precision_digits", prec.digits.to_string()),
                ]),
                || {
                    let chk = norm_check(&l, &ctx.model, mode, prec)?;
                    let dev = deviation(&chk.value, prec);
                    let detail = format!(
                        "norm = {}; exact = {}; |norm - 1| = {dev:.3e}",
                        chk.value.to_decimal(20),
                        chk.is_exactly_one()
                    );
                    Ok(Outcome::from_bool(dev < NORM_TOLERANCE, || {
                        format!("norm = {}; exact form {}", chk.value.to_decimal(30), chk.normalized)
                    })
                    .detail(detail))
                },
            ));
        }
    }
    out
}

fn deviation(v: &HiReal, prec: Precision) -> f64 {
    v.sub(&HiReal::from_int(1, prec.bits())).abs().to_f64()
}

fn run_one(suite: Suite, ctx: &Ctx) -> Vec<CheckRecord> {
    match suite {
        Suite::SelfTest => selftest(ctx),
        Suite::Osp => osp(ctx),
        Suite::Scasimir => scasimir(ctx),
        Suite::QaEqMa => qa_eq_ma(ctx),
        Suite::Hamiltonian => hamiltonian(ctx),
        Suite::BannaiIto => bannai_ito(ctx),
        Suite::Ck => ck(ctx),
        Suite::Fischer => fischer(ctx),
        Suite::Ladder => ladder(ctx),
        Suite::Wavefunctions => wavefunctions(ctx),
        Suite::Eigen => eigen(ctx),
        Suite::Gram => gram(ctx),
        Suite::Norms => norms(ctx),
    }
}

/// Runs the configured suites over every `mu` vector.
pub fn run(cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let mus = cfg.mu_vectors();
    let models: Vec<(MuVector, Model)> = mus
        .into_iter()
        .map(|mv| {
            let params = ModelParams::new(mv.mu.clone())?;
            Ok((mv, Model::new(params).with_prefix(cfg.reflection_prefix)))
        })
        .collect::<Result<_>>()?;
    let mut records = Vec::new();
    for suite in cfg.plan() {
        let per_mu: Vec<Vec<CheckRecord>> = models
            .par_iter()
            .map(|(mv, model)| {
                let ctx = Ctx {
                    cfg,
                    model: model.clone(),
                    mu: mv,
                };
                run_one(suite, &ctx)
            })
            .collect();
        let mut batch: Vec<CheckRecord> = per_mu.into_iter().flatten().collect();
        // catalog order within the suite; stable, so generation order breaks ties
        batch.sort_by_key(|r| info(&r.check).0);
        records.extend(batch);
    }
    Ok(SuiteReport { records })
}
