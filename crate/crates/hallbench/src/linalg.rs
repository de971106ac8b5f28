//! Dense exact linear algebra over Q(√q).

use crate::error::{Error, Result};
use crate::scalars::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

/// Determinant by Gaussian elimination.
pub fn det(m: &Matrix, q: u64) -> Scalar {
    let n = m.len();
    let mut a = m.clone();
    let mut acc = Scalar::one(q);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Scalar::zero(q);
        };
        if p != c {
            a.swap(p, c);
            acc = -acc;
        }
        let piv = a[c][c].clone();
        acc *= &piv;
        let inv = piv.inv().expect("nonzero pivot");
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= &t;
            }
        }
    }
    acc
}

/// Rank by row reduction.
pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, r);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for k in c..cols {
                let t = &f * &a[r][k];
                a[i][k] -= &t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Solves m·x = b for square invertible m.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Vec<Scalar>> {
    let n = m.len();
    let mut a: Matrix = m.iter().zip(b).map(|(row, x)| {
        let mut r = row.clone();
        r.push(x.clone());
        r
    }).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(Error::DivisionByZero)?;
        a.swap(p, c);
        let inv = a[c][c].inv()?;
        for k in c..=n {
            a[c][k] = &a[c][k] * &inv;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in c..=n {
                let t = &f * &a[c][k];
                a[r][k] -= &t;
            }
        }
    }
    Ok(a.into_iter().map(|mut r| r.pop().expect("augmented column")).collect())
}

/// Leading principal minors det(m[..k][..k]) for k = 1..=n.
pub fn leading_minors(m: &Matrix, q: u64) -> Vec<Scalar> {
    (1..=m.len()).map(|k| det(&m[..k].iter().map(|r| r[..k].to_vec()).collect(), q)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::int(n, 2)
    }

    #[test]
    fn small_determinants() {
        let m = vec![vec![s(2), s(1)], vec![s(1), s(3)]];
        assert_eq!(det(&m, 2), s(5));
        let sing = vec![vec![s(1), s(2)], vec![s(2), s(4)]];
        assert!(det(&sing, 2).is_zero());
        assert_eq!(rank(&sing), 1);
        let x = solve(&m, &[s(3), s(4)]).unwrap();
        assert_eq!(x, vec![s(1), s(1)]);
        assert_eq!(leading_minors(&m, 2), vec![s(2), s(5)]);
    }

    #[test]
    fn determinant_with_surd() {
        let v = Scalar::v(2);
        let m = vec![vec![v.clone(), s(1)], vec![s(1), v]];
        assert_eq!(det(&m, 2), s(1));
    }
}
