//! Exact linear algebra by fraction-free (Bareiss) elimination.
//!
//! Rational rows are cleared to integers, eliminated without fractions, and
//! only the final back substitution works in the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Upper echelon form; `pivots[r]` is the pivot column of row `r`.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect()
}

/// Bareiss elimination, pivoting only in the first `pivot_cols` columns so
/// that augmented right-hand sides ride along.
pub fn fraction_free_echelon(mut a: Vec<Vec<BigInt>>, pivot_cols: usize) -> Result<Echelon> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols.min(ncols) {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..ncols {
                let num = &pivot * &row[j] - &factor * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                if !rem.is_zero() {
                    return Err(Error::Singular("inexact Bareiss division".into()));
                }
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    // Rows below the last pivot were updated by the last step only, which is
    // fine: they are zero in every pivot column.
    Ok(Echelon { rows: a, pivots })
}

pub fn echelon(a: &[Vec<Rational>]) -> Result<Echelon> {
    let ncols = a.first().map_or(0, Vec::len);
    fraction_free_echelon(a.iter().map(|r| integer_row(r)).collect(), ncols)
}

pub fn rank(a: &[Vec<Rational>]) -> Result<usize> {
    Ok(echelon(a)?.rank())
}

/// Solves `A X = B` for a full-column-rank `A` (`m x n`, `m >= n`) and
/// `B` with `k` columns. Returns `X` as `n` rows of `k` entries. Extra
/// equations must be consistent.
pub fn solve(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let m = a.len();
    if b.len() != m {
        return Err(Error::DimensionMismatch(m, b.len()));
    }
    let n = a.first().map_or(0, Vec::len);
    let k = b.first().map_or(0, Vec::len);
    let aug: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| {
            let mut row = ra.clone();
            row.extend(rb.iter().cloned());
            integer_row(&row)
        })
        .collect();
    let ech = fraction_free_echelon(aug, n)?;
    if ech.rank() < n {
        return Err(Error::Singular(format!("rank {} < {n} unknowns", ech.rank())));
    }
    for row in &ech.rows[n..] {
        if row[n..].iter().any(|v| !v.is_zero()) {
            return Err(Error::Singular("inconsistent system".into()));
        }
    }
    // With full column rank the pivots sit on the diagonal.
    let mut x = vec![vec![Rational::zero(); k]; n];
    for r in (0..n).rev() {
        let row = &ech.rows[r];
        let pivot = Rational::from_integer(row[r].clone());
        for col in 0..k {
            let mut acc = Rational::from_integer(row[n + col].clone());
            for j in r + 1..n {
                if !row[j].is_zero() {
                    acc -= Rational::from_integer(row[j].clone()) * &x[j][col];
                }
            }
            x[r][col] = acc / &pivot;
        }
    }
    Ok(x)
}

/// A basis of `{v : A v = 0}`, one vector per free column.
pub fn nullspace(a: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = a.first().map_or(0, Vec::len);
    let ech = echelon(a)?;
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; n];
        for (r, &c) in ech.pivots.iter().enumerate() {
            v[c] = Some(r);
        }
        v
    };
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| pivot_set[c].is_none()) {
        let mut x = vec![Rational::zero(); n];
        x[free] = Rational::one();
        for (r, &c) in ech.pivots.iter().enumerate().rev() {
            let row = &ech.rows[r];
            let mut acc = Rational::zero();
            for j in c + 1..n {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc -= Rational::from_integer(row[j].clone()) * &x[j];
                }
            }
            x[c] = acc / Rational::from_integer(row[c].clone());
        }
        basis.push(x);
    }
    Ok(basis)
}
