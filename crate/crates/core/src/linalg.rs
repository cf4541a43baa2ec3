//! Small dense exact linear algebra over `Q`. Matrices are row-major `Vec<Vec<Rational>>`.

#![allow(clippy::needless_range_loop)]

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::exact::Rational;

pub(crate) type Matrix = Vec<Vec<Rational>>;

pub(crate) fn from_int_rows(rows: &[Vec<i64>]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect()
}

/// Row echelon form in place; returns (rank, determinant sign/scale factor product of pivots).
fn eliminate(m: &mut Matrix) -> (usize, Rational) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut det = Rational::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            det = Rational::zero();
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            det = -det;
        }
        let pivot = m[rank][c].clone();
        det *= &pivot;
        for r in rank + 1..rows {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &pivot;
            for k in c..cols {
                let delta = &f * &m[rank][k];
                m[r][k] -= &delta;
            }
        }
        rank += 1;
    }
    (rank, det)
}

pub(crate) fn det(m: &Matrix) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut a = m.clone();
    let (rank, d) = eliminate(&mut a);
    if rank < n {
        Rational::zero()
    } else {
        d
    }
}

pub(crate) fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    eliminate(&mut a).0
}

/// Solves the square system `m x = b`; `None` when singular.
pub(crate) fn solve(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        let pivot = a[c][c].clone();
        for k in c..=n {
            a[c][k] = &a[c][k] / &pivot;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in c..=n {
                    let delta = &f * &a[c][k];
                    a[r][k] -= &delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub(crate) fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Rational> = (0..n).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect();
        cols.push(solve(m, &e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

pub(crate) fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Scales a nonzero rational vector to the primitive integer vector on the same ray.
pub(crate) fn primitive_direction(v: &[Rational]) -> Vec<i64> {
    let lcm = v.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| (x / &g).to_i64().expect("edge direction exceeds i64"))
        .collect()
}

pub(crate) fn gcd_i64(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |acc, &x| acc.gcd(&x)).abs()
}

/// Integral matrix from a rational one, if every entry is an integer.
pub(crate) fn to_integer(m: &Matrix) -> Option<Vec<Vec<i64>>> {
    m.iter().map(|r| r.iter().map(|x| x.to_i64()).collect()).collect()
}
