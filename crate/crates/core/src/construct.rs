//! Border extension and full construction of SSR and SSR_p matrices.
//!
//! The basic move is [`add_col_left`]: a new first column
//! `c = Σ (-1)^(i-1) y_i c^i` whose positive coefficients are fixed from the
//! last one down, each above the finite set of lower bounds imposed by the
//! contiguous minors that contain `c`. When the matrix has more rows than
//! columns, the new column lies in the column span and every new largest
//! minor vanishes; [`perturb_first_column`] then nudges the top `m - n`
//! entries of `c` so those minors take a chosen sign. All other sides are
//! reduced to the left side by transposition and column reversal.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SsrError};
use crate::matrix::{exchange_sign, Mat, Sign, SignPattern};
use crate::numeric::{det_exact, Scalar};
use crate::verify::{require_ssr, verify_contiguous, CheckMethod, ORACLE_MAX_DIM};

/// Which operation produced a set of coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnKind {
    /// A column added at a border.
    Border,
    /// A column inserted between two existing columns.
    Interior,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct YChoice {
    pub kind: ColumnKind,
    /// `y_1, …, y_r` in index order.
    pub y: Vec<Scalar>,
}

/// One perturbation of an entry of a freshly added column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaChoice {
    /// 1-based row of the perturbed entry.
    pub row: usize,
    pub delta: Scalar,
    pub lambda: Scalar,
    #[serde(rename = "Lambda")]
    pub big_lambda: Scalar,
}

impl DeltaChoice {
    /// `0 < |δ| < λ/Λ`.
    pub fn within_band(&self) -> bool {
        !self.delta.is_zero() && self.delta.abs() < &self.lambda / &self.big_lambda
    }
}

/// The sign given to minors of a size that did not exist before.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternExtension {
    pub size: usize,
    pub sign: Sign,
}

/// Everything chosen while building a matrix, in the order it was chosen.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub y_choices: Vec<YChoice>,
    pub delta_choices: Vec<DeltaChoice>,
    pub pattern_extensions: Vec<PatternExtension>,
    /// How each input precondition was checked.
    pub precondition_checks: Vec<CheckMethod>,
    /// Whether the output was re-verified before being returned. Outputs
    /// with `min(m, n)` above the desk-scale bound are not.
    pub output_verified: bool,
}

impl ConstructionTrace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every `y > 0` and every `δ` strictly inside its band.
    pub fn is_valid(&self) -> bool {
        self.y_choices
            .iter()
            .flat_map(|c| &c.y)
            .all(Scalar::is_positive)
            && self.delta_choices.iter().all(DeltaChoice::within_band)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Top,
    Bottom,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Left, Side::Right, Side::Top, Side::Bottom];

    /// Whether adding a line on this side of an `m × n` matrix creates
    /// minors of size `min(m, n) + 1`.
    pub fn grows_min_dim(self, m: usize, n: usize) -> bool {
        match self {
            Side::Left | Side::Right => m > n,
            Side::Top | Side::Bottom => n > m,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::Top => "top",
            Side::Bottom => "bottom",
        })
    }
}

impl FromStr for Side {
    type Err = SsrError;
    fn from_str(s: &str) -> Result<Side> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            "top" => Ok(Side::Top),
            "bottom" => Ok(Side::Bottom),
            _ => Err(SsrError::Parse(format!("unknown side `{s}`"))),
        }
    }
}

/// Coefficients `x_i` (`i ≠ k`, increasing `i`) with `c^k = Σ x_i c^i`, by
/// Cramer's rule.
///
/// For an SSR `(n-1) × n` input the signs alternate:
/// `sign(x_i) = (-1)^i` for odd `k` and `(-1)^(i-1)` for even `k`. The
/// function itself only needs the remaining columns to be independent.
pub fn column_relation(a: &Mat, k: usize) -> Result<Vec<Scalar>> {
    let n = a.cols();
    if a.rows() + 1 != n {
        return Err(SsrError::Dimension(format!(
            "column relation needs an (n-1) x n matrix, got {}x{}",
            a.rows(),
            n
        )));
    }
    if k == 0 || k > n {
        return Err(SsrError::IndexOutOfRange { index: k, bound: n });
    }
    let others: Vec<usize> = (0..n).filter(|&c| c != k - 1).collect();
    let base = a.sub0(0..a.rows(), others.iter().copied());
    let denom = det_exact(&base);
    if denom.is_zero() {
        return Err(SsrError::Singular(format!(
            "columns other than {k} are dependent"
        )));
    }
    let target = a.col0(k - 1);
    Ok((0..others.len())
        .map(|pos| {
            let mut m = base.clone();
            for (r, v) in target.iter().enumerate() {
                m.set(r, pos, v.clone());
            }
            det_exact(&m) / &denom
        })
        .collect())
}

/// `y_1, …, y_r` for a new left column built from the first `r` columns.
///
/// `y_r = 1`; then for `k = r-1, …, 1`, `y_k` is the smallest positive
/// multiple of 1/2 above `max(0, max_I bound_I)`, where for each contiguous
/// row set
/// `I` of size `k`
/// `bound_I = -Σ_{i>k} (-1)^(i+k) y_i det[c^1|…|c^(k-1)|c^i][I] / det[c^1|…|c^k][I]`.
fn left_coefficients(a: &Mat, r: usize) -> Vec<Scalar> {
    let mut y = vec![Scalar::zero(); r];
    y[r - 1] = Scalar::one();
    for k in (1..r).rev() {
        let mut best = Scalar::zero();
        // v = Σ_{i>k} (-1)^(i+k) y_i c^i; by linearity the numerator is one determinant.
        let coeffs: Vec<Scalar> = (k + 1..=r)
            .map(|i| {
                if (i + k) % 2 == 0 {
                    y[i - 1].clone()
                } else {
                    -&y[i - 1]
                }
            })
            .collect();
        let v = a.combine_columns0((k..r).zip(coeffs.iter()));
        for t in 0..=a.rows() - k {
            let denom = a.contiguous_minor0(t, 0, k);
            let mut num_mat = a.sub0(t..t + k, 0..k);
            for rr in 0..k {
                num_mat.set(rr, k - 1, v[t + rr].clone());
            }
            let bound = -det_exact(&num_mat) / &denom;
            if bound > best {
                best = bound;
            }
        }
        y[k - 1] = best.next_half_above();
    }
    y
}

/// Adds `Σ (-1)^(i-1) y_i c^i` (first `r` columns) as a new first column.
fn prepend_combination(a: &Mat, r: usize, trace: &mut ConstructionTrace) -> Mat {
    let y = left_coefficients(a, r);
    let signed: Vec<Scalar> = y
        .iter()
        .enumerate()
        .map(|(i, yi)| if i % 2 == 0 { yi.clone() } else { -yi })
        .collect();
    let c = a.combine_columns0(signed.iter().enumerate());
    trace.y_choices.push(YChoice {
        kind: ColumnKind::Border,
        y,
    });
    a.insert_column0(0, &c)
}

/// Adds a column at the left border of an SSR matrix.
///
/// For `m ≤ n` the result is SSR with the same pattern. For `m > n` it is
/// SSR_n and all of its `(n+1) × (n+1)` minors are exactly zero.
pub fn add_col_left(a: &Mat) -> Result<Mat> {
    add_col_left_with_trace(a, &mut ConstructionTrace::new())
}

pub fn add_col_left_with_trace(a: &Mat, trace: &mut ConstructionTrace) -> Result<Mat> {
    let (_, method) = require_ssr(a, a.min_dim())?;
    trace.precondition_checks.push(method);
    Ok(prepend_combination(a, a.min_dim(), trace))
}

/// Perturbs the first `m - n` entries of the first column of
/// `ahat = [c | A]` (`A` an `m × n` SSR matrix, `m > n`, `c` in the column
/// span of `A`) so that the result is SSR with one more size.
///
/// `new_sign = Plus` gives the new size the sign `ε_n`, `Minus` gives `-ε_n`.
pub fn perturb_first_column(ahat: &Mat, new_sign: Sign) -> Result<Mat> {
    perturb_first_column_with_trace(ahat, new_sign, &mut ConstructionTrace::new())
}

pub fn perturb_first_column_with_trace(
    ahat: &Mat,
    new_sign: Sign,
    trace: &mut ConstructionTrace,
) -> Result<Mat> {
    let (m, cols) = ahat.shape();
    if cols < 2 || m < cols {
        return Err(SsrError::Dimension(format!(
            "perturbation needs an m x (n+1) matrix with m > n, got {m}x{cols}"
        )));
    }
    let n = cols - 1;
    let a = ahat.sub0(0..m, 1..cols);
    let (pattern, method) = require_ssr(&a, n)?;
    trace.precondition_checks.push(method);
    if !in_column_span(&a, &ahat.col0(0)) {
        return Err(SsrError::Contract(
            "first column is not in the span of the others".into(),
        ));
    }
    let eps_n = pattern.last();
    let out = perturb_unchecked(ahat.clone(), new_sign * eps_n, eps_n, trace)?;
    trace.pattern_extensions.push(PatternExtension {
        size: n + 1,
        sign: new_sign * eps_n,
    });
    Ok(out)
}

/// Exact membership test for `c ∈ span(A)` when `A` (m × n, m ≥ n) has a
/// nonsingular leading `n × n` block.
fn in_column_span(a: &Mat, c: &[Scalar]) -> bool {
    let n = a.cols();
    let top = a.sub0(0..n, 0..n);
    let d = det_exact(&top);
    if d.is_zero() {
        return false;
    }
    let x: Vec<Scalar> = (0..n)
        .map(|j| {
            let mut t = top.clone();
            for (r, v) in c.iter().take(n).enumerate() {
                t.set(r, j, v.clone());
            }
            det_exact(&t) / &d
        })
        .collect();
    a.combine_columns0(x.iter().enumerate()) == c
}

/// Core perturbation loop. `target` is the absolute sign wanted for the
/// `(n+1)`-minors and `eps_n` the sign of the `n`-minors of `A`.
fn perturb_unchecked(
    mut ahat: Mat,
    target: Sign,
    eps_n: Sign,
    trace: &mut ConstructionTrace,
) -> Result<Mat> {
    let (m, cols) = ahat.shape();
    let n = cols - 1;
    let delta_sign = target * eps_n;
    for s in 0..m - n {
        // A_s = [e^s | A]
        let mut unit = ahat.clone();
        for r in 0..m {
            unit.set(
                r,
                0,
                if r == s {
                    Scalar::one()
                } else {
                    Scalar::zero()
                },
            );
        }
        let mut current: Vec<Scalar> = Vec::new();
        let mut cofactors: Vec<Scalar> = Vec::new();
        for size in 1..=(n + 1).min(m) {
            let lo = (s + 1).saturating_sub(size);
            let hi = s.min(m - size);
            for t in lo..=hi {
                let d = ahat.contiguous_minor0(t, 0, size);
                if !d.is_zero() {
                    current.push(d.abs());
                }
                let u = unit.contiguous_minor0(t, 0, size);
                if !u.is_zero() {
                    cofactors.push(u.abs());
                }
            }
        }
        let (lambda, big_lambda) = band(&current, &cofactors)?;
        // A power of two in (0, λ/(2Λ)] keeps entries short.
        let mut delta = (&lambda / &(&big_lambda * &Scalar::from(2))).pow2_floor();
        if delta_sign == Sign::Minus {
            delta = -delta;
        }
        let entry = ahat.at(s, 0) + &delta;
        ahat.set(s, 0, entry);
        trace.delta_choices.push(DeltaChoice {
            row: s + 1,
            delta,
            lambda,
            big_lambda,
        });
    }
    Ok(ahat)
}

/// `(λ, Λ)`: the extreme moduli over both minor families, falling back to
/// the current-matrix family alone if the cofactor family is empty.
fn band(current: &[Scalar], cofactors: &[Scalar]) -> Result<(Scalar, Scalar)> {
    let pool: Vec<&Scalar> = if cofactors.is_empty() {
        current.iter().collect()
    } else {
        current.iter().chain(cofactors).collect()
    };
    let lo = pool
        .iter()
        .min()
        .ok_or_else(|| SsrError::Contract("no nonzero minors to bound the perturbation".into()))?;
    let hi = pool.iter().max().expect("nonempty");
    Ok(((*lo).clone(), (*hi).clone()))
}

/// Adds a left column, perturbing it when a new minor size appears.
/// `target` is the absolute sign for that size.
fn extend_left(a: &Mat, target: Option<Sign>, trace: &mut ConstructionTrace) -> Result<Mat> {
    let (m, n) = a.shape();
    let ahat = prepend_combination(a, a.min_dim(), trace);
    if m <= n {
        return Ok(ahat);
    }
    let target = target.ok_or(SsrError::NewSignRequired)?;
    let eps_n = Sign::of(&a.contiguous_minor0(0, 0, n))
        .ok_or_else(|| SsrError::Contract("zero leading minor in SSR input".into()))?;
    perturb_unchecked(ahat, target, eps_n, trace)
}

/// Border extension without precondition checks. `target` is the absolute
/// sign for the new size, required exactly when one appears.
pub(crate) fn extend_unchecked(
    a: &Mat,
    side: Side,
    target: Option<Sign>,
    trace: &mut ConstructionTrace,
) -> Result<Mat> {
    let (m, n) = a.shape();
    let new_size = a.min_dim() + 1;
    let grows = side.grows_min_dim(m, n);
    let target = if grows {
        Some(target.ok_or(SsrError::NewSignRequired)?)
    } else {
        None
    };
    // Reversing columns maps ε_k to (-1)^⌊k/2⌋ ε_k.
    let reversed_target = target.map(|s| s * exchange_sign(new_size));
    let out = match side {
        Side::Left => extend_left(a, target, trace)?,
        Side::Right => extend_left(&a.reverse_columns(), reversed_target, trace)?.reverse_columns(),
        Side::Top => extend_left(&a.transpose(), target, trace)?.transpose(),
        Side::Bottom => extend_left(&a.transpose().reverse_columns(), reversed_target, trace)?
            .reverse_columns()
            .transpose(),
    };
    if let Some(sign) = target {
        trace.pattern_extensions.push(PatternExtension {
            size: new_size,
            sign,
        });
    }
    Ok(out)
}

/// Adds a line on `side` of an SSR matrix, keeping it SSR.
///
/// `new_size_sign` must be given exactly when the extension creates minors
/// of size `min(m, n) + 1`; their sign is then `ε_last` for `Plus` and
/// `-ε_last` for `Minus`.
pub fn extend_border(a: &Mat, side: Side, new_size_sign: Option<Sign>) -> Result<Mat> {
    extend_border_with_trace(a, side, new_size_sign, &mut ConstructionTrace::new())
}

pub fn extend_border_with_trace(
    a: &Mat,
    side: Side,
    new_size_sign: Option<Sign>,
    trace: &mut ConstructionTrace,
) -> Result<Mat> {
    check_new_sign(side.grows_min_dim(a.rows(), a.cols()), new_size_sign)?;
    let (pattern, method) = require_ssr(a, a.min_dim())?;
    trace.precondition_checks.push(method);
    let target = new_size_sign.map(|s| s * pattern.last());
    extend_unchecked(a, side, target, trace)
}

pub(crate) fn check_new_sign(grows: bool, sign: Option<Sign>) -> Result<()> {
    match (grows, sign) {
        (true, None) => Err(SsrError::NewSignRequired),
        (false, Some(_)) => Err(SsrError::NewSignNotAllowed),
        _ => Ok(()),
    }
}

fn seed(e1: Sign, e2: Sign) -> Mat {
    match (e1, e2) {
        (Sign::Plus, Sign::Plus) => Mat::from_i64(&[&[2, 1], &[1, 1]]),
        (Sign::Plus, Sign::Minus) => Mat::from_i64(&[&[1, 1], &[2, 1]]),
        (Sign::Minus, Sign::Plus) => Mat::from_i64(&[&[-2, -1], &[-1, -1]]),
        (Sign::Minus, Sign::Minus) => Mat::from_i64(&[&[-1, -1], &[-2, -1]]),
    }
}

/// The 2×2 starting matrix for a pattern beginning `(e1, e2)`.
pub fn seed_matrix(e1: Sign, e2: Sign) -> Mat {
    seed(e1, e2)
}

/// Builds an `m × n` SSR matrix with sign pattern `pattern`
/// (`len(pattern) = min(m, n)`).
pub fn ssr_construction(
    m: usize,
    n: usize,
    pattern: &SignPattern,
) -> Result<(Mat, ConstructionTrace)> {
    if m == 0 || n == 0 {
        return Err(SsrError::Dimension(
            "matrix dimensions must be positive".into(),
        ));
    }
    let d = m.min(n);
    if pattern.len() != d {
        return Err(SsrError::PatternLength {
            expected: d,
            found: pattern.len(),
        });
    }
    let mut trace = ConstructionTrace::new();
    let eps = |k: usize| pattern.get(k).expect("k within pattern");

    let a = if d == 1 {
        Mat::filled(m, n, eps(1).to_scalar())
    } else {
        let mut a = seed(eps(1), eps(2));
        // Alternate left extension and transposition until d × d; every
        // second step lands on a square and fixes the next sign.
        for _ in 0..2 * d - 4 {
            let target = (a.rows() > a.cols()).then(|| eps(a.cols() + 1));
            a = extend_left(&a, target, &mut trace)?;
            if let Some(sign) = target {
                trace.pattern_extensions.push(PatternExtension {
                    size: a.cols(),
                    sign,
                });
            }
            a = a.transpose();
        }
        debug_assert_eq!(a.shape(), (d, d));
        for _ in 0..m.abs_diff(n) {
            a = prepend_combination(&a, d, &mut trace);
        }
        if d == m {
            a
        } else {
            a.transpose()
        }
    };
    finish(a, d, pattern, trace)
}

fn finish(
    a: Mat,
    p: usize,
    pattern: &SignPattern,
    mut trace: ConstructionTrace,
) -> Result<(Mat, ConstructionTrace)> {
    if a.min_dim() <= ORACLE_MAX_DIM {
        let report = verify_contiguous(&a, p, Some(pattern))?;
        if !report.accepted() {
            return Err(SsrError::Contract(format!(
                "constructed matrix failed verification at {}",
                report.witness.expect("witness")
            )));
        }
        trace.output_verified = true;
    }
    Ok((a, trace))
}

/// Builds an `m × n` SSR_p matrix with pattern `pattern` (`len = p`,
/// `p < min(m, n)`).
pub fn ssr_p_construction(
    m: usize,
    n: usize,
    p: usize,
    pattern: &SignPattern,
) -> Result<(Mat, ConstructionTrace)> {
    if pattern.len() != p {
        return Err(SsrError::PatternLength {
            expected: p,
            found: pattern.len(),
        });
    }
    if p == 0 || p >= m.min(n) {
        return Err(SsrError::OrderOutOfRange {
            p,
            max: m.min(n).saturating_sub(1),
        });
    }
    let (mut a, mut trace) = ssr_construction(p, p, pattern)?;
    trace.output_verified = false;
    for _ in 0..m - p {
        a = prepend_combination(&a, p, &mut trace);
    }
    a = a.transpose();
    for _ in 0..n - p {
        a = prepend_combination(&a, p, &mut trace);
    }
    finish(a, p, pattern, trace)
}

/// SSR_p border extension without precondition checks.
pub(crate) fn extend_p_unchecked(
    a: &Mat,
    p: usize,
    side: Side,
    trace: &mut ConstructionTrace,
) -> Mat {
    match side {
        Side::Left => prepend_combination(a, p, trace),
        Side::Right => prepend_combination(&a.reverse_columns(), p, trace).reverse_columns(),
        Side::Top => prepend_combination(&a.transpose(), p, trace).transpose(),
        Side::Bottom => prepend_combination(&a.transpose().reverse_columns(), p, trace)
            .reverse_columns()
            .transpose(),
    }
}

/// Adds a line on `side` of an SSR_p matrix, keeping it SSR_p with the same
/// pattern. Only the `p` lines nearest the new one are used to build it.
pub fn extend_border_ssr_p(a: &Mat, p: usize, side: Side) -> Result<Mat> {
    extend_border_ssr_p_with_trace(a, p, side, &mut ConstructionTrace::new())
}

pub fn extend_border_ssr_p_with_trace(
    a: &Mat,
    p: usize,
    side: Side,
    trace: &mut ConstructionTrace,
) -> Result<Mat> {
    let (_, method) = require_ssr(a, p)?;
    trace.precondition_checks.push(method);
    Ok(extend_p_unchecked(a, p, side, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_full;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    fn pat(s: &str) -> SignPattern {
        s.parse().unwrap()
    }

    fn remark() -> Mat {
        Mat::from_i64(&[&[10, 1, 3, 6], &[1, 1, 2, 1], &[1, 2, 3, 1]])
    }

    #[test]
    fn column_relation_remark() {
        let a = remark();
        let expect = [
            ["1", "-1", "2"],
            ["1", "1", "-2"],
            ["-1", "1", "2"],
            ["1/2", "-1/2", "1/2"],
        ];
        for (k, e) in (1..=4).zip(expect) {
            let x = column_relation(&a, k).unwrap();
            assert_eq!(x, e.iter().map(|s| q(s)).collect::<Vec<_>>(), "k = {k}");
        }
    }

    #[test]
    fn column_relation_errors() {
        assert!(matches!(
            column_relation(&Mat::identity(2), 1),
            Err(SsrError::Dimension(_))
        ));
        let a = Mat::from_i64(&[&[1, 1, 2]]);
        assert!(column_relation(&a, 4).is_err());
        let dependent = Mat::from_i64(&[&[1, 2, 4], &[1, 2, 5]]);
        assert!(matches!(
            column_relation(&dependent, 3),
            Err(SsrError::Singular(_))
        ));
    }

    #[test]
    fn add_col_left_one_by_one() {
        let mut trace = ConstructionTrace::new();
        let out = add_col_left_with_trace(&Mat::from_i64(&[&[1]]), &mut trace).unwrap();
        assert_eq!(out, Mat::from_i64(&[&[1, 1]]));
        assert_eq!(trace.y_choices[0].y, vec![Scalar::one()]);
    }

    #[test]
    fn add_col_left_two_by_two() {
        let out = add_col_left(&Mat::from_i64(&[&[2, 1], &[1, 1]])).unwrap();
        assert_eq!(out.shape(), (2, 3));
        let r = verify_full(&out, 2).unwrap();
        assert_eq!(r.inferred_pattern.unwrap(), pat("++"));
    }

    #[test]
    fn add_col_left_tall_has_zero_top_minors() {
        let (a, _) = ssr_construction(3, 2, &pat("++")).unwrap();
        let out = add_col_left(&a).unwrap();
        assert_eq!(out.shape(), (3, 3));
        assert!(det_exact(&out).is_zero());
        assert!(verify_full(&out, 2).unwrap().accepted());
    }

    #[test]
    fn add_col_left_rejects_non_ssr() {
        assert!(matches!(add_col_left(&remark()), Err(SsrError::NotSsr(_))));
    }

    #[test]
    fn perturbation_square_case_positive_delta() {
        // ε_1 = ε_2 = +; asking for ε_3 = ε_2 takes δ > 0.
        let (a, _) = ssr_construction(3, 2, &pat("++")).unwrap();
        let ahat = add_col_left(&a).unwrap();
        let mut trace = ConstructionTrace::new();
        let out = perturb_first_column_with_trace(&ahat, Sign::Plus, &mut trace).unwrap();
        assert_eq!(trace.delta_choices.len(), 1);
        assert!(trace.delta_choices[0].delta.is_positive());
        assert!(trace.is_valid());
        let cofactor = det_exact(&ahat.sub0(1..3, 1..3));
        assert_eq!(det_exact(&out), &trace.delta_choices[0].delta * &cofactor);
        assert_eq!(
            verify_full(&out, 3).unwrap().inferred_pattern.unwrap(),
            pat("+++")
        );
    }

    #[test]
    fn perturbation_tall_case() {
        let (a, _) = ssr_construction(4, 2, &pat("+-")).unwrap();
        let ahat = add_col_left(&a).unwrap();
        let mut trace = ConstructionTrace::new();
        let out = perturb_first_column_with_trace(&ahat, Sign::Minus, &mut trace).unwrap();
        assert_eq!(trace.delta_choices.len(), 2);
        assert!(trace.delta_choices.iter().all(|d| d.delta.is_negative()));
        assert!(trace.is_valid());
        assert_eq!(
            verify_full(&out, 3).unwrap().inferred_pattern.unwrap(),
            pat("+-+")
        );
    }

    #[test]
    fn perturbation_rejects_column_outside_span() {
        let (a, _) = ssr_construction(3, 2, &pat("++")).unwrap();
        let bogus = a.insert_column0(0, &[q("100"), q("1"), q("7")]);
        assert!(matches!(
            perturb_first_column(&bogus, Sign::Plus),
            Err(SsrError::Contract(_))
        ));
        assert!(matches!(
            perturb_first_column(&a.transpose(), Sign::Plus),
            Err(SsrError::Dimension(_))
        ));
    }

    #[test]
    fn seeds_follow_the_table() {
        assert_eq!(
            ssr_construction(2, 2, &pat("++")).unwrap().0,
            Mat::from_i64(&[&[2, 1], &[1, 1]])
        );
        assert_eq!(
            ssr_construction(2, 2, &pat("+-")).unwrap().0,
            Mat::from_i64(&[&[1, 1], &[2, 1]])
        );
        assert_eq!(
            ssr_construction(2, 2, &pat("-+")).unwrap().0,
            Mat::from_i64(&[&[-2, -1], &[-1, -1]])
        );
        assert_eq!(
            ssr_construction(2, 2, &pat("--")).unwrap().0,
            Mat::from_i64(&[&[-1, -1], &[-2, -1]])
        );
    }

    #[test]
    fn construction_degenerate_and_errors() {
        assert_eq!(
            ssr_construction(1, 3, &pat("+")).unwrap().0,
            Mat::from_i64(&[&[1, 1, 1]])
        );
        assert_eq!(
            ssr_construction(3, 1, &pat("-")).unwrap().0,
            Mat::from_i64(&[&[-1], &[-1], &[-1]])
        );
        let err = ssr_construction(3, 4, &pat("++")).unwrap_err();
        assert_eq!(
            err.to_string(),
            "The length of the sign pattern is not correct!"
        );
        assert!(ssr_construction(0, 4, &pat("+")).is_err());
    }

    #[test]
    fn construction_four_by_five() {
        let (a, trace) = ssr_construction(4, 5, &pat("+-+-")).unwrap();
        assert_eq!(a.shape(), (4, 5));
        assert_eq!(
            verify_full(&a, 4).unwrap().inferred_pattern.unwrap(),
            pat("+-+-")
        );
        assert!(trace.is_valid());
        assert!(trace.output_verified);
        let sizes: Vec<usize> = trace.pattern_extensions.iter().map(|e| e.size).collect();
        assert_eq!(sizes, vec![3, 4]);
    }

    #[test]
    fn ssr_p_examples() {
        let (a, _) = ssr_p_construction(4, 4, 2, &pat("++")).unwrap();
        assert_eq!(
            verify_full(&a, 2).unwrap().inferred_pattern.unwrap(),
            pat("++")
        );
        let (a, _) = ssr_p_construction(5, 4, 1, &pat("-")).unwrap();
        assert!(a.iter().all(Scalar::is_negative));
        let (a, _) = ssr_p_construction(4, 5, 3, &pat("+--")).unwrap();
        assert_eq!(
            verify_full(&a, 3).unwrap().inferred_pattern.unwrap(),
            pat("+--")
        );
        assert!(matches!(
            ssr_p_construction(3, 3, 3, &pat("+++")),
            Err(SsrError::OrderOutOfRange { .. })
        ));
        assert!(matches!(
            ssr_p_construction(4, 4, 2, &pat("+")),
            Err(SsrError::PatternLength { .. })
        ));
    }

    #[test]
    fn extend_border_examples() {
        let (a, _) = ssr_construction(2, 3, &pat("++")).unwrap();
        let out = extend_border(&a, Side::Left, None).unwrap();
        assert_eq!(out.shape(), (2, 4));
        assert_eq!(
            verify_full(&out, 2).unwrap().inferred_pattern.unwrap(),
            pat("++")
        );

        let b = Mat::from_i64(&[&[1, 1], &[2, 1]]);
        let out = extend_border(&b, Side::Bottom, None).unwrap();
        assert_eq!(out.shape(), (3, 2));
        assert_eq!(out.delete_row(3).unwrap(), b);
        assert_eq!(
            verify_full(&out, 2).unwrap().inferred_pattern.unwrap(),
            pat("+-")
        );

        let c = Mat::from_i64(&[&[2, 1], &[1, 1]]);
        let out = extend_border(&c, Side::Right, None).unwrap();
        assert_eq!(out.delete_column(3).unwrap(), c);
        assert!(verify_full(&out, 2).unwrap().accepted());
    }

    #[test]
    fn extend_border_sign_argument_contract() {
        let c = Mat::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(
            extend_border(&c, Side::Top, Some(Sign::Plus)),
            Err(SsrError::NewSignNotAllowed)
        );
        let (t, _) = ssr_construction(3, 2, &pat("++")).unwrap();
        assert_eq!(
            extend_border(&t, Side::Left, None),
            Err(SsrError::NewSignRequired)
        );
    }

    #[test]
    fn extend_border_new_size_relative_sign() {
        let (t, _) = ssr_construction(3, 2, &pat("+-")).unwrap();
        for side in [Side::Left, Side::Right] {
            for (rel, want) in [(Sign::Plus, "+--"), (Sign::Minus, "+-+")] {
                let out = extend_border(&t, side, Some(rel)).unwrap();
                assert_eq!(
                    verify_full(&out, 3).unwrap().inferred_pattern.unwrap(),
                    pat(want),
                    "{side}"
                );
            }
        }
    }

    #[test]
    fn extend_border_ssr_p_examples() {
        let (a, _) = ssr_p_construction(4, 4, 2, &pat("+-")).unwrap();
        let out = extend_border_ssr_p(&a, 2, Side::Top).unwrap();
        assert_eq!(out.shape(), (5, 4));
        assert_eq!(
            verify_full(&out, 2).unwrap().inferred_pattern.unwrap(),
            pat("+-")
        );

        let (a, _) = ssr_p_construction(3, 5, 2, &pat("--")).unwrap();
        let out = extend_border_ssr_p(&a, 2, Side::Right).unwrap();
        assert_eq!(out.shape(), (3, 6));
        assert_eq!(
            verify_full(&out, 2).unwrap().inferred_pattern.unwrap(),
            pat("--")
        );

        let (a, _) = ssr_construction(2, 3, &pat("+-")).unwrap();
        assert_eq!(
            extend_border_ssr_p(&a, 2, Side::Left).unwrap(),
            extend_border(&a, Side::Left, None).unwrap()
        );
    }
}
