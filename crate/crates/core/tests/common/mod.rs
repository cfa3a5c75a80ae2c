//! Independent reference implementations for tests: Laplace expansion and
//! brute-force minor enumeration. Deliberately naive.
#![allow(dead_code)]

use ssr_core::{Mat, Scalar, SignPattern};

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(rows: &[Vec<Scalar>]) -> Scalar {
    let n = rows.len();
    if n == 0 {
        return Scalar::one();
    }
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut total = Scalar::zero();
    for j in 0..n {
        if rows[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<Scalar>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &rows[0][j] * &cofactor_det(&sub);
        if j % 2 == 0 {
            total += &term;
        } else {
            total -= &term;
        }
    }
    total
}

pub fn det_of(a: &Mat) -> Scalar {
    cofactor_det(&a.to_rows())
}

/// Strictly increasing k-subsets of 1..=n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every `k × k` minor of `a`, by cofactor expansion.
pub fn all_minors(a: &Mat, k: usize) -> Vec<Scalar> {
    let rows = a.to_rows();
    let mut out = Vec::new();
    for r in subsets(a.rows(), k) {
        for c in subsets(a.cols(), k) {
            let sub: Vec<Vec<Scalar>> = r
                .iter()
                .map(|&i| c.iter().map(|&j| rows[i - 1][j - 1].clone()).collect())
                .collect();
            out.push(cofactor_det(&sub));
        }
    }
    out
}

/// The SSR_p pattern of `a` by brute force, or `None`.
pub fn oracle_pattern(a: &Mat, p: usize) -> Option<SignPattern> {
    let mut signs = Vec::new();
    for k in 1..=p {
        let minors = all_minors(a, k);
        let s = minors[0].signum();
        if s == 0 || minors.iter().any(|m| m.signum() != s) {
            return None;
        }
        signs.push(s);
    }
    Some(SignPattern::from_i8s(&signs).unwrap())
}

pub fn pattern(s: &str) -> SignPattern {
    s.parse().unwrap()
}

/// Every sign pattern of length `len`.
pub fn patterns(len: usize) -> Vec<SignPattern> {
    SignPattern::all(len)
}
