//! Exact SSR / SSR_p verification.
//!
//! [`verify_contiguous`] uses the contiguous-minor criterion: a matrix is
//! SSR_p(ε) iff every contiguous k×k minor has sign ε_k for k ≤ p.
//! [`verify_full`] enumerates every minor and is the reference oracle.
//!
//! Both report the first offending minor in a fixed order: by size, then
//! row index set, then column index set (lexicographic). The parallel
//! search uses an order-preserving `find_first`, so the witness does not
//! depend on scheduling.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SsrError};
use crate::matrix::{Mat, Sign, SignPattern};
use crate::numeric::{det_exact, Scalar};

/// Above this many minors the precondition checks fall back to the
/// contiguous criterion.
pub const ORACLE_MINOR_BUDGET: u128 = 20_000;

/// Largest `min(m, n)` the precondition checks will hand to the oracle.
pub const ORACLE_MAX_DIM: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accepted,
    Rejected,
}

/// A minor whose sign violates the required pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// 1-based row indices.
    pub rows: Vec<usize>,
    /// 1-based column indices.
    pub cols: Vec<usize>,
    pub value: Scalar,
    /// The sign this minor should have had. Absent when the very first
    /// minor of its size is zero and no pattern was prescribed.
    pub required: Option<Sign>,
}

impl Witness {
    pub fn size(&self) -> usize {
        self.rows.len()
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "rows {{{}}} cols {{{}}} minor {}",
            join(&self.rows),
            join(&self.cols),
            self.value
        )?;
        if let Some(s) = self.required {
            write!(f, " (required sign {s})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SsrReport {
    pub verdict: Verdict,
    pub order_checked: usize,
    pub inferred_pattern: Option<SignPattern>,
    pub witness: Option<Witness>,
}

impl SsrReport {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }

    fn accept(p: usize, pattern: SignPattern) -> SsrReport {
        SsrReport {
            verdict: Verdict::Accepted,
            order_checked: p,
            inferred_pattern: Some(pattern),
            witness: None,
        }
    }

    fn reject(p: usize, witness: Witness) -> SsrReport {
        SsrReport {
            verdict: Verdict::Rejected,
            order_checked: p,
            inferred_pattern: None,
            witness: Some(witness),
        }
    }
}

fn check_args(a: &Mat, p: usize, expected: Option<&SignPattern>) -> Result<()> {
    let max = a.min_dim();
    if p == 0 || p > max {
        return Err(SsrError::OrderOutOfRange { p, max });
    }
    if let Some(e) = expected {
        if e.len() != p {
            return Err(SsrError::PatternLength {
                expected: p,
                found: e.len(),
            });
        }
    }
    Ok(())
}

/// Checks contiguous minors of every size `k ≤ p`, which decides SSR_p.
pub fn verify_contiguous(a: &Mat, p: usize, expected: Option<&SignPattern>) -> Result<SsrReport> {
    check_args(a, p, expected)?;
    Ok(run(p, expected, |k| {
        let starts: Vec<(usize, usize)> = (0..=a.rows() - k)
            .flat_map(|r| (0..=a.cols() - k).map(move |c| (r, c)))
            .collect();
        SizeSearch {
            count: starts.len(),
            eval: Box::new(move |i| {
                let (r, c) = starts[i];
                let value = a.contiguous_minor0(r, c, k);
                (value, (r + 1..=r + k).collect(), (c + 1..=c + k).collect())
            }),
        }
    }))
}

/// Brute-force oracle: checks every `k×k` minor for `k ≤ p`.
pub fn verify_full(a: &Mat, p: usize) -> Result<SsrReport> {
    verify_full_expecting(a, p, None)
}

/// [`verify_full`] against a prescribed pattern.
pub fn verify_full_expecting(
    a: &Mat,
    p: usize,
    expected: Option<&SignPattern>,
) -> Result<SsrReport> {
    check_args(a, p, expected)?;
    Ok(run(p, expected, |k| {
        let row_sets = combinations(a.rows(), k);
        let col_sets = combinations(a.cols(), k);
        let ncols = col_sets.len();
        SizeSearch {
            count: row_sets.len() * ncols,
            eval: Box::new(move |i| {
                let rows = &row_sets[i / ncols];
                let cols = &col_sets[i % ncols];
                let value = det_exact(&a.sub0(rows.iter().copied(), cols.iter().copied()));
                (
                    value,
                    rows.iter().map(|r| r + 1).collect(),
                    cols.iter().map(|c| c + 1).collect(),
                )
            }),
        }
    }))
}

/// The full sign pattern of an SSR matrix, or the first offending minor.
///
/// # Panics
/// On the 0×0 matrix, which has no minors.
pub fn infer_sign_pattern(a: &Mat) -> std::result::Result<SignPattern, Witness> {
    let report = verify_full(a, a.min_dim()).expect("nonempty matrix");
    match report.inferred_pattern {
        Some(p) => Ok(p),
        None => Err(report.witness.expect("rejected reports carry a witness")),
    }
}

type MinorEval<'a> = Box<dyn Fn(usize) -> (Scalar, Vec<usize>, Vec<usize>) + Sync + 'a>;

struct SizeSearch<'a> {
    count: usize,
    eval: MinorEval<'a>,
}

fn run<'a>(
    p: usize,
    expected: Option<&SignPattern>,
    search_for_size: impl Fn(usize) -> SizeSearch<'a>,
) -> SsrReport {
    let mut pattern = Vec::with_capacity(p);
    for k in 1..=p {
        let search = search_for_size(k);
        let required = match expected.and_then(|e| e.get(k)) {
            Some(s) => s,
            None => {
                let (value, rows, cols) = (search.eval)(0);
                match Sign::of(&value) {
                    Some(s) => s,
                    None => {
                        return SsrReport::reject(
                            p,
                            Witness {
                                rows,
                                cols,
                                value,
                                required: None,
                            },
                        );
                    }
                }
            }
        };
        let bad = (0..search.count)
            .into_par_iter()
            .map(|i| (search.eval)(i))
            .find_first(|(value, _, _)| Sign::of(value) != Some(required));
        if let Some((value, rows, cols)) = bad {
            return SsrReport::reject(
                p,
                Witness {
                    rows,
                    cols,
                    value,
                    required: Some(required),
                },
            );
        }
        pattern.push(required);
    }
    SsrReport::accept(p, SignPattern::new(pattern).expect("p >= 1"))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of minors of size `≤ p` in an `m × n` matrix.
pub fn minor_count(m: usize, n: usize, p: usize) -> u128 {
    (1..=p).map(|k| binomial(m, k) * binomial(n, k)).sum()
}

/// How an input precondition was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMethod {
    /// Full minor enumeration.
    Oracle,
    /// Contiguous minors only (exact, but not cross-checked by the
    /// oracle).
    Contiguous,
}

/// Verifies `a` is SSR_p, preferring the oracle when it is cheap enough.
pub(crate) fn require_ssr(a: &Mat, p: usize) -> Result<(SignPattern, CheckMethod)> {
    let use_oracle =
        a.min_dim() <= ORACLE_MAX_DIM && minor_count(a.rows(), a.cols(), p) <= ORACLE_MINOR_BUDGET;
    let (report, method) = if use_oracle {
        (verify_full(a, p)?, CheckMethod::Oracle)
    } else {
        (verify_contiguous(a, p, None)?, CheckMethod::Contiguous)
    };
    match report.inferred_pattern {
        Some(pattern) => Ok((pattern, method)),
        None => Err(SsrError::NotSsr(
            report.witness.expect("rejected reports carry a witness"),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn remark() -> Mat {
        Mat::from_i64(&[&[10, 1, 3, 6], &[1, 1, 2, 1], &[1, 2, 3, 1]])
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
        for n in 0..8 {
            for k in 0..=n {
                assert_eq!(combinations(n, k).len() as u128, binomial(n, k));
            }
        }
    }

    #[test]
    fn contiguous_examples() {
        let r = verify_contiguous(&Mat::from_i64(&[&[2, 1], &[1, 1]]), 2, None).unwrap();
        assert!(r.accepted());
        assert_eq!(r.inferred_pattern.unwrap().to_string(), "++");

        let r = verify_contiguous(&remark(), 3, None).unwrap();
        assert_eq!(r.verdict, Verdict::Rejected);
        let w = r.witness.unwrap();
        assert!(w.value.signum() != w.required.map_or(0, Sign::to_i8));

        let ones = Mat::filled(1, 5, Scalar::one());
        let r = verify_contiguous(&ones, 1, None).unwrap();
        assert_eq!(r.inferred_pattern.unwrap().to_string(), "+");
    }

    #[test]
    fn remark_witness_is_first_in_order() {
        // 1×1 and 2×2 contiguous minors of the remark matrix:
        // rows 1-2 cols 1-2 gives 10 - 1 = 9 > 0, rows 1-2 cols 2-3 gives 2 - 3 = -1.
        let r = verify_contiguous(&remark(), 3, None).unwrap();
        let w = r.witness.unwrap();
        assert_eq!((w.rows.clone(), w.cols.clone()), (vec![1, 2], vec![2, 3]));
        assert_eq!(w.value, -1);
        assert_eq!(w.required, Some(Sign::Plus));
    }

    #[test]
    fn full_examples() {
        let r = verify_full(&Mat::from_i64(&[&[1, 1], &[2, 1]]), 2).unwrap();
        assert_eq!(r.inferred_pattern.unwrap().to_string(), "+-");

        let z = Mat::from_i64(&[&[1, 2], &[0, 3]]);
        let r = verify_full(&z, 1).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(
            (w.rows, w.cols, w.value.clone()),
            (vec![2], vec![1], Scalar::zero())
        );
    }

    #[test]
    fn infer_examples() {
        let p = infer_sign_pattern(&Mat::from_i64(&[&[-1, -1], &[-2, -1]])).unwrap();
        assert_eq!(p.to_string(), "--");
        let p = infer_sign_pattern(&Mat::from_i64(&[&[-2, -1], &[-1, -1]])).unwrap();
        assert_eq!(p.to_string(), "-+");
        let w = infer_sign_pattern(&Mat::identity(2)).unwrap_err();
        assert!(w.value.is_zero());
        assert_eq!(w.size(), 1);
    }

    #[test]
    fn argument_errors() {
        let a = Mat::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(
            verify_full(&a, 0),
            Err(SsrError::OrderOutOfRange { p: 0, max: 2 })
        );
        assert_eq!(
            verify_full(&a, 3),
            Err(SsrError::OrderOutOfRange { p: 3, max: 2 })
        );
        let e: SignPattern = "+".parse().unwrap();
        assert_eq!(
            verify_contiguous(&a, 2, Some(&e)),
            Err(SsrError::PatternLength {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn expected_pattern_mismatch_rejects() {
        let a = Mat::from_i64(&[&[2, 1], &[1, 1]]);
        let e: SignPattern = "+-".parse().unwrap();
        let r = verify_contiguous(&a, 2, Some(&e)).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.required, Some(Sign::Minus));
        assert_eq!(w.value, 1);
    }
}
