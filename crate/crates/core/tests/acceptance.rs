//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::time::Instant;

use bisphere_core::model::default_mu_vectors;
use bisphere_core::rational::{parse_rational, rat, to_pq};
use bisphere_core::verify::{run, CheckRecord, Suite, SuiteConfig, SuiteReport, NORM_TOLERANCE};
use bisphere_core::Rational;
use num_bigint::BigInt;

/// Per-criterion wall clock budgets in seconds. Reported, not enforced.
const BUDGETS: [u64; 10] = [120, 60, 120, 180, 300, 120, 60, 300, 180, 120];

struct Verdict {
    ok: bool,
    notes: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict { ok: true, notes: Vec::new() }
    }

    fn require(&mut self, cond: bool, note: impl FnOnce() -> String) {
        if !cond {
            self.ok = false;
            self.notes.push(note());
        }
    }

    /// Every record of `report` must pass; failures are noted by check id.
    fn all_pass(&mut self, label: &str, report: &SuiteReport) {
        let mut failed: Vec<(&str, usize)> = Vec::new();
        for r in report.failures() {
            match failed.iter_mut().find(|f| f.0 == r.check) {
                Some(f) => f.1 += 1,
                None => failed.push((&r.check, 1)),
            }
        }
        if let Some(first) = report.failures().next() {
            self.ok = false;
            let list: Vec<String> = failed.iter().map(|(c, k)| format!("{c} x{k}")).collect();
            self.notes.push(format!("{label}: {}; first: {}", list.join(", "), brief(first)));
        }
    }

    /// The records of `check` in `report` must exist.
    fn nonempty(&mut self, label: &str, report: &SuiteReport, check: &str) -> usize {
        let k = report.of_check(check).count();
        self.require(k > 0, || format!("{label}: no {check} records"));
        k
    }
}

fn brief(r: &CheckRecord) -> String {
    let mut s = format!("{} {:?} {}", r.check, r.params, r.counterexample.clone().unwrap_or_default());
    s.truncate(300);
    s
}

fn cfg(n: usize, suites: &[Suite]) -> SuiteConfig {
    SuiteConfig::new(n).with_suites(suites)
}

fn exec(c: &SuiteConfig) -> SuiteReport {
    run(c).expect("valid configuration")
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn detail_value(r: &CheckRecord, key: &str) -> Option<String> {
    let d = r.detail.as_ref()?;
    let at = d.find(key)? + key.len();
    Some(d[at..].split([';', ' ']).next().unwrap_or("").to_string())
}

fn mu_of(r: &CheckRecord) -> Vec<Rational> {
    r.params["mu"].split(',').map(|x| parse_rational(x).unwrap()).collect()
}

fn c1_osp() -> Verdict {
    let mut v = Verdict::new();
    for n in 2..=4 {
        let rep = exec(&cfg(n, &[Suite::Osp]));
        v.all_pass(&format!("n={n}"), &rep);
        let mus = default_mu_vectors(n, 0).len();
        v.require(mus == 5, || format!("n={n}: {mus} mu vectors"));
        // ten relations per axis and per nonempty subset, for each mu vector
        let subsets = (1usize << n) - 1;
        let single = v.nonempty("osp", &rep, "osp-single-axis");
        let sub = v.nonempty("osp", &rep, "osp-subset");
        v.require(single == 10 * n * mus && sub == 10 * subsets * mus, || {
            format!("n={n}: {single} single-axis and {sub} subset records")
        });
    }
    v
}

fn c2_scasimir() -> Verdict {
    let mut v = Verdict::new();
    for n in 2..=4 {
        let rep = exec(&cfg(n, &[Suite::Scasimir]));
        v.all_pass(&format!("n={n}"), &rep);
        for id in ["scasimir-anticommute", "scasimir-commute", "casimir-central", "casimir-singleton"] {
            v.nonempty(&format!("n={n}"), &rep, id);
        }
    }
    v
}

fn c3_qa_eq_ma() -> Verdict {
    let mut v = Verdict::new();
    for n in 2..=4 {
        let rep = exec(&cfg(n, &[Suite::QaEqMa]).with_max_degree(8));
        v.all_pass(&format!("n={n}"), &rep);
        let k = v.nonempty(&format!("n={n}"), &rep, "qa-eq-ma");
        let expected = ((1usize << n) - 1 - n) * 5;
        v.require(k == expected, || format!("n={n}: {k} qa-eq-ma records, expected {expected}"));
        v.nonempty(&format!("n={n}"), &rep, "ma-polynomial");
    }
    v
}

fn c4_hamiltonian() -> Verdict {
    let mut v = Verdict::new();
    for n in 2..=4 {
        let rep = exec(&cfg(n, &[Suite::Hamiltonian]).with_max_degree(6));
        v.all_pass(&format!("n={n}"), &rep);
        for id in ["hamiltonian-identity", "hamiltonian-reflection", "hamiltonian-casimir"] {
            v.nonempty(&format!("n={n}"), &rep, id);
        }
    }
    v
}

fn c5_bannai_ito() -> Verdict {
    let mut v = Verdict::new();
    for n in 3..=4 {
        let rep = exec(&cfg(n, &[Suite::BannaiIto]).with_max_degree(6));
        v.all_pass(&format!("n={n}"), &rep);
        let pairs = ((1usize << n) - 1).pow(2) * 5;
        let k = v.nonempty(&format!("n={n}"), &rep, "bi-relation");
        v.require(k == pairs, || format!("n={n}: {k} pair records, expected {pairs}"));
        if n == 3 {
            v.nonempty("n=3", &rep, "bi-rank-one");
            v.nonempty("n=3", &rep, "bi-central");
        }
    }
    v
}

fn c6_ck_fischer() -> Verdict {
    let mut v = Verdict::new();
    for n in 2..=4 {
        let mut c = cfg(n, &[Suite::Ck, Suite::Fischer]);
        c.limits.ck_max_m = 6;
        c.limits.fischer_samples = 25;
        let rep = exec(&c);
        v.all_pass(&format!("n={n}"), &rep);
        for id in ["ck-kernel", "ck-restriction", "fischer-reconstruct", "fischer-components"] {
            v.nonempty(&format!("n={n}"), &rep, id);
        }
        for r in rep.of_check("kernel-dimension") {
            let m: usize = r.params["m"].parse().unwrap();
            let got = detail_value(r, "dim = ").unwrap_or_default();
            let want = binomial(m + n - 2, n - 2).to_string();
            v.require(got == want, || format!("n={n} m={m}: dim {got}, binomial {want}"));
        }
    }
    v
}

fn c7_ladder() -> Verdict {
    let mut v = Verdict::new();
    let mut c = cfg(3, &[Suite::Ladder]);
    c.limits.ladder_max_m = 4;
    c.limits.ladder_max_power = 3;
    let rep = exec(&c);
    v.all_pass("n=3", &rep);
    let k = v.nonempty("n=3", &rep, "ladder-identity");
    v.require(k == 4 * 5 * 5, || format!("{k} ladder records"));
    v
}

fn c8_wavefunctions() -> Verdict {
    let mut v = Verdict::new();
    for n in 2..=4 {
        let mut c = cfg(n, &[Suite::Wavefunctions, Suite::Eigen]);
        c.limits.wave_max_m = 5;
        let rep = exec(&c);
        v.all_pass(&format!("n={n}"), &rep);
        for r in rep.of_check("wavefn-cross-validate") {
            let ratios = r.detail.as_deref().unwrap_or("");
            v.require(!ratios.contains("mismatch") && ratios.starts_with("ratios"), || {
                format!("n={n}: cross validation {ratios}")
            });
        }
        // claimed eigenvalues against an independent evaluation of gamma
        for (id, f) in [
            ("eigen-scasimir", scasimir_value as fn(usize, &[Rational]) -> Rational),
            ("eigen-hamiltonian", hamiltonian_quoted_value),
        ] {
            for r in rep.of_check(id) {
                let m: usize = r.params["m"].parse().unwrap();
                let want = to_pq(&f(m, &mu_of(r)));
                let got = detail_value(r, "eigenvalue = ").unwrap_or_default();
                v.require(got == want, || format!("{id} n={n} m={m}: reports {got}, oracle {want}"));
            }
        }
    }
    v
}

fn gamma(mu: &[Rational]) -> Rational {
    mu.iter().fold(rat(0, 1), |acc, m| acc + m + rat(1, 2))
}

fn scasimir_value(m: usize, mu: &[Rational]) -> Rational {
    rat(m as i64, 1) + gamma(mu) - rat(1, 2)
}

fn hamiltonian_quoted_value(m: usize, mu: &[Rational]) -> Rational {
    let g = rat(m as i64, 1) + gamma(mu);
    &g * (&g - rat(2, 1))
}

fn c9_gram() -> Verdict {
    let mut v = Verdict::new();
    let mut c = cfg(3, &[Suite::Gram, Suite::Norms]);
    c.limits.gram_max_m = 4;
    c.limits.cross_max_m = 3;
    c.precision_digits = 50;
    let rep = exec(&c);
    v.all_pass("n=3", &rep);
    let cross = v.nonempty("n=3", &rep, "gram-cross-degree");
    v.require(cross == 6 * 5, || format!("{cross} cross-degree records"));
    let mut worst = 0f64;
    for r in rep.of_check("norm-unit") {
        let dev: f64 = r
            .detail
            .as_deref()
            .and_then(|d| d.rsplit("= ").next())
            .and_then(|x| x.parse().ok())
            .unwrap_or(f64::INFINITY);
        worst = worst.max(dev);
    }
    v.require(worst < NORM_TOLERANCE, || format!("worst |norm - 1| = {worst:e}"));
    v.notes.push(format!("worst |norm - 1| = {worst:.1e}, tolerance {NORM_TOLERANCE:e}"));
    v
}

fn c10_determinism() -> Verdict {
    let mut v = Verdict::new();
    let mut c = cfg(3, &[Suite::Ck, Suite::Fischer, Suite::Ladder, Suite::Norms]).with_max_degree(4);
    c.seed = 20261019;
    c.limits.ck_max_m = 4;
    c.limits.fischer_samples = 10;
    c.limits.gram_max_m = 3;
    let a = exec(&c).json_lines(false);
    let b = exec(&c).json_lines(false);
    v.require(!a.is_empty() && a == b, || {
        let at = a.iter().zip(&b).position(|(x, y)| x != y);
        format!("reports differ at record {at:?} ({} vs {} lines)", a.len(), b.len())
    });
    let mut other = c.clone();
    other.seed += 1;
    let d = exec(&other).json_lines(false);
    v.require(d != a, || "a different seed gives the same report".into());
    v
}

fn main() {
    type Criterion = (&'static str, fn() -> Verdict);
    let criteria: [Criterion; 10] = [
        ("osp relations, n = 2..4", c1_osp),
        ("sCasimir and Casimir (anti)commutation", c2_scasimir),
        ("Q_A = M_A up to degree 8", c3_qa_eq_ma),
        ("Hamiltonian identity and symmetries", c4_hamiltonian),
        ("Bannai-Ito relations, n = 3, 4", c5_bannai_ito),
        ("CK extension and Fischer decomposition", c6_ck_fischer),
        ("ladder identities, n = 3", c7_ladder),
        ("wavefunctions, eigenvalues, cross validation", c8_wavefunctions),
        ("orthogonality and unit norms", c9_gram),
        ("determinism", c10_determinism),
    ];
    let filter: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if filter.is_some_and(|k| k != i + 1) {
            continue;
        }
        let t = Instant::now();
        let v = f();
        let secs = t.elapsed().as_secs_f64();
        let tag = if v.ok { "PASS" } else { "FAIL" };
        println!(
            "{tag} criterion {}: {name} ({secs:.1}s, budget {}s)",
            i + 1,
            BUDGETS[i]
        );
        for note in &v.notes {
            println!("    {note}");
        }
        failed += usize::from(!v.ok);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
