//! Cauchy-Kovalevskaia extension, the kernel spaces `K_m` of the total
//! Dunkl operator, and the Fischer decomposition
//! `P_m = sum_j x^j K_{m-j}`.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg;
use crate::model::{Model, Subset};
use crate::poly::{monomials_of_degree, ExponentVector, LaurentPoly};
use crate::rational::{binomial, factorial, pochhammer, Rational};

/// All compositions of `m` into `parts` non-negative parts, in
/// colexicographic order (compared from the last part).
pub fn compositions(m: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in 0..=left {
            cur.push(a);
            rec(left - a, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if m == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(m, parts, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// `dim P_m(R^n) = C(m+n-1, n-1)`.
pub fn dim_homogeneous(n: usize, m: usize) -> usize {
    usize::try_from(binomial(m + n - 1, n - 1)).expect("dimension fits in usize")
}

/// `dim K_m(R^n) = C(m+n-2, n-2)`.
pub fn dim_kernel(n: usize, m: usize) -> usize {
    usize::try_from(binomial(m + n - 2, n - 2)).expect("dimension fits in usize")
}

/// Extends `p`, homogeneous in `s_1..s_{k-1}`, to a null solution of
/// `D_{[k]}` that restricts to `p` at `s_k = 0`.
///
/// The series in powers of `s_k` is finite because `D_{[k-1]}` lowers the
/// degree by one; at most `m + 1` terms survive.
pub fn ck_extend(p: &LaurentPoly, k: usize, model: &Model) -> Result<LaurentPoly> {
    let n = model.n();
    if k < 2 || k > n {
        return Err(Error::AxisOutOfRange { axis: k, dim: n });
    }
    if p.nvars() != n {
        return Err(Error::DimensionMismatch(n, p.nvars()));
    }
    if p.is_zero() {
        return Ok(p.clone());
    }
    if !p.is_polynomial() {
        return Err(Error::NotPolynomial);
    }
    let m = p.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if p.max_axis_used() >= k {
        return Err(Error::InvalidParams(format!(
            "CK input must only involve s_1..s_{}",
            k - 1
        )));
    }
    let lower = model.subset_realization(Subset::full(k - 1))?;
    let gamma_k = model.params().gamma_at(k);

    // iterates[r] = D_{[k-1]}^r p
    let mut iterates = vec![p.clone()];
    while let Some(last) = iterates.last() {
        let next = lower.d.apply_unchecked(last);
        if next.is_zero() {
            break;
        }
        iterates.push(next);
    }
    debug_assert!(iterates.len() as i64 <= m + 1);

    let quarter = Rational::new(1.into(), 4.into());
    let mut out = LaurentPoly::zero(n);
    for (r, t) in iterates.iter().enumerate() {
        let i = r / 2;
        let pow4 = num_traits::pow(quarter.clone(), i);
        let denom_fact = Rational::from_integer(factorial(i));
        let term = if r % 2 == 0 {
            // (-1)^i s_k^{2i} / (i! (gamma_k)_i 4^i) D^{2i} p
            let mut c = pow4 / (denom_fact * pochhammer(&gamma_k, i));
            if i % 2 == 1 {
                c = -c;
            }
            t.scale(&c)
        } else {
            // (-1)^{i+1} s_k^{2i+1} / (i! (gamma_k)_{i+1} 2^{2i+1}) R D^{2i+1} p
            let mut c = pow4 / (denom_fact * pochhammer(&gamma_k, i + 1) * Rational::from_integer(2.into()));
            if i % 2 == 0 {
                c = -c;
            }
            lower.r.apply_unchecked(t).scale(&c)
        };
        out += &term.mul_var_unchecked(k, r as i32);
    }

    let total = model.subset_realization(Subset::full(k))?;
    let residual = total.d.apply_unchecked(&out);
    if !residual.is_zero() {
        return Err(Error::Verification(format!(
            "CK extension left residual {residual}"
        )));
    }
    Ok(out)
}

/// Basis of `K_m(R^n)` from nested CK extensions and powers of `x_{[k]}`.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    pub n: usize,
    pub m: usize,
    pub labels: Vec<Vec<usize>>,
    pub elements: Vec<LaurentPoly>,
}

impl KernelBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, label: &[usize]) -> Option<&LaurentPoly> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| &self.elements[i])
    }
}

/// `CK_n[x_{[n-1]}^{j_{n-1}} CK_{n-1}[ ... x_{[2]}^{j_2} CK_2[s_1^{j_1}]]]`.
pub fn kernel_element(label: &[usize], model: &Model) -> Result<LaurentPoly> {
    let n = model.n();
    if label.len() + 1 != n {
        return Err(Error::InvalidParams(format!(
            "label has {} parts, expected {}",
            label.len(),
            n - 1
        )));
    }
    let mut exps = vec![0; n];
    exps[0] = label[0] as i32;
    let mut psi = ck_extend(&LaurentPoly::monomial(ExponentVector::new(exps), Rational::one()), 2, model)?;
    for k in 3..=n {
        let x = model.subset_realization(Subset::full(k - 1))?.x;
        psi = x.pow(label[k - 2]).apply_unchecked(&psi);
        psi = ck_extend(&psi, k, model)?;
    }
    Ok(psi)
}

pub fn kernel_basis(m: usize, model: &Model) -> Result<KernelBasis> {
    let n = model.n();
    let labels = compositions(m, n - 1);
    let elements = labels
        .par_iter()
        .map(|l| kernel_element(l, model))
        .collect::<Result<Vec<_>>>()?;
    Ok(KernelBasis {
        n,
        m,
        labels,
        elements,
    })
}

/// Coefficient matrix with one column per polynomial, rows indexed by the
/// degree-`m` monomials.
pub fn coefficient_columns(polys: &[LaurentPoly], n: usize, m: usize) -> Vec<Vec<Rational>> {
    monomials_of_degree(n, m)
        .iter()
        .map(|e| polys.iter().map(|p| p.coefficient(e)).collect())
        .collect()
}

pub fn rank_of(polys: &[LaurentPoly], n: usize, m: usize) -> Result<usize> {
    if polys.is_empty() {
        return Ok(0);
    }
    linalg::rank(&coefficient_columns(polys, n, m))
}

/// Independent route to `K_m`: the null space of `D_{[n]}` acting from
/// `P_m` to `P_{m-1}`, computed by elimination.
pub fn kernel_nullspace(m: usize, model: &Model) -> Result<Vec<LaurentPoly>> {
    let n = model.n();
    let d = model.subset_realization(Subset::full(n))?.d;
    let domain = monomials_of_degree(n, m);
    if m == 0 {
        return Ok(vec![LaurentPoly::one(n)]);
    }
    let images: Vec<LaurentPoly> = domain
        .iter()
        .map(|e| d.apply_unchecked(&LaurentPoly::monomial(e.clone(), Rational::one())))
        .collect();
    let matrix = coefficient_columns(&images, n, m - 1);
    let null = linalg::nullspace(&matrix)?;
    Ok(null
        .into_iter()
        .map(|v| {
            let mut p = LaurentPoly::zero(n);
            for (e, c) in domain.iter().zip(v) {
                p.add_term(e.clone(), c);
            }
            p
        })
        .collect())
}

/// Precomputed Fischer system for one degree.
#[derive(Clone, Debug)]
pub struct FischerSolver {
    n: usize,
    m: usize,
    /// `(j, basis of K_{m-j})` in column order.
    blocks: Vec<(usize, Vec<LaurentPoly>)>,
    matrix: Vec<Vec<Rational>>,
}

impl FischerSolver {
    pub fn new(m: usize, model: &Model) -> Result<Self> {
        let n = model.n();
        let x = model.subset_realization(Subset::full(n))?.x;
        let mut blocks = Vec::new();
        let mut columns = Vec::new();
        for j in 0..=m {
            let basis = kernel_basis(m - j, model)?.elements;
            let xj = x.pow(j);
            for psi in &basis {
                columns.push(xj.apply_unchecked(psi));
            }
            blocks.push((j, basis));
        }
        if columns.len() != dim_homogeneous(n, m) {
            return Err(Error::Singular(format!(
                "{} Fischer columns for a space of dimension {}",
                columns.len(),
                dim_homogeneous(n, m)
            )));
        }
        Ok(FischerSolver {
            n,
            m,
            blocks,
            matrix: coefficient_columns(&columns, n, m),
        })
    }

    /// Components `h_0..h_m` with `h_j` in `K_{m-j}` and `p = sum_j x^j h_j`.
    pub fn decompose(&self, p: &LaurentPoly) -> Result<Vec<LaurentPoly>> {
        self.decompose_many(std::slice::from_ref(p))
            .map(|mut v| v.pop().expect("one input"))
    }

    pub fn decompose_many(&self, ps: &[LaurentPoly]) -> Result<Vec<Vec<LaurentPoly>>> {
        for p in ps {
            if p.nvars() != self.n {
                return Err(Error::DimensionMismatch(self.n, p.nvars()));
            }
            if !p.is_polynomial() {
                return Err(Error::NotPolynomial);
            }
            if !p.is_homogeneous_of(self.m as i64) {
                return Err(Error::NotHomogeneous);
            }
        }
        let rhs = coefficient_columns(ps, self.n, self.m);
        let sol = linalg::solve(&self.matrix, &rhs)?;
        let mut out = Vec::with_capacity(ps.len());
        #[allow(clippy::needless_range_loop)]
        for col in 0..ps.len() {
            let mut comps = Vec::with_capacity(self.m + 1);
            let mut row = 0;
            for (_, basis) in &self.blocks {
                let mut h = LaurentPoly::zero(self.n);
                for psi in basis {
                    let c = &sol[row][col];
                    if !c.is_zero() {
                        h += &psi.scale(c);
                    }
                    row += 1;
                }
                comps.push(h);
            }
            out.push(comps);
        }
        Ok(out)
    }

    /// `sum_j x^j h_j`.
    pub fn reassemble(&self, comps: &[LaurentPoly], model: &Model) -> Result<LaurentPoly> {
        let x = model.subset_realization(Subset::full(self.n))?.x;
        let mut acc = LaurentPoly::zero(self.n);
        for (j, h) in comps.iter().enumerate() {
            acc += &x.pow(j).apply_unchecked(h);
        }
        Ok(acc)
    }
}

pub fn fischer_decompose(p: &LaurentPoly, model: &Model) -> Result<Vec<LaurentPoly>> {
    if p.is_zero() {
        return Ok(vec![LaurentPoly::zero(model.n())]);
    }
    let m = p.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if m < 0 {
        return Err(Error::NotPolynomial);
    }
    FischerSolver::new(m as usize, model)?.decompose(p)
}
