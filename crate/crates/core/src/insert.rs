//! Inserting a line strictly inside an SSR or SSR_p matrix.
//!
//! The new column sits in a gap with `h` columns on each side and has the
//! form `c = Σ_{i=1}^{q} (-1)^(i-1) y_i (c^(h-i+1) + c^(h+i))`, pairing the
//! columns symmetrically around the gap. A contiguous minor through `c` with
//! `l` columns left of it and `r` right of it only sees the pairs with
//! `i > min(l, r)`, and is linear in `y_(min(l,r)+1)` with a coefficient of
//! known sign. So the `y` are fixed from `y_q = 1` downwards, as for border
//! columns.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::construct::{
    check_new_sign, extend_p_unchecked, extend_unchecked, ColumnKind, ConstructionTrace, Side,
    YChoice,
};
use crate::error::{Result, SsrError};
use crate::matrix::{ContiguousSet, Mat, Sign, SignPattern};
use crate::numeric::{det_exact, Scalar};
use crate::verify::require_ssr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Row,
    Col,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Row => "row",
            Axis::Col => "col",
        })
    }
}

impl FromStr for Axis {
    type Err = SsrError;
    fn from_str(s: &str) -> Result<Axis> {
        match s {
            "row" => Ok(Axis::Row),
            "col" | "column" => Ok(Axis::Col),
            _ => Err(SsrError::Parse(format!("unknown axis `{s}`"))),
        }
    }
}

/// How a window sits around the inserted column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WindowCase {
    /// Fewer columns on the left (`l < r`).
    I,
    /// Fewer columns on the right (`r < l`).
    II,
    /// Balanced (`l = r`).
    III,
}

/// A contiguous window through the inserted column: `l` columns to its
/// left, `r` to its right, and a contiguous row set of size `l + r + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InsertionContext {
    pub l: usize,
    pub r: usize,
    pub rows: ContiguousSet,
}

impl InsertionContext {
    pub fn size(&self) -> usize {
        self.l + self.r + 1
    }

    /// `min(l, r)`: the number of coefficient pairs that drop out.
    pub fn m_val(&self) -> usize {
        self.l.min(self.r)
    }

    pub fn case(&self) -> WindowCase {
        match self.l.cmp(&self.r) {
            std::cmp::Ordering::Less => WindowCase::I,
            std::cmp::Ordering::Greater => WindowCase::II,
            std::cmp::Ordering::Equal => WindowCase::III,
        }
    }
}

/// All windows through a column inserted into a gap with `h` columns on each
/// side, over `rows` rows, of size at most `max_size`.
pub fn insertion_windows(h: usize, rows: usize, max_size: usize) -> Vec<InsertionContext> {
    let mut out = Vec::new();
    for l in 0..=h {
        for r in 0..=h {
            let d = l + r + 1;
            if d > max_size || d > rows {
                continue;
            }
            for start in 1..=rows - d + 1 {
                out.push(InsertionContext {
                    l,
                    r,
                    rows: ContiguousSet { start, len: d },
                });
            }
        }
    }
    out
}

/// The window's matrix with `v` in place of the inserted column.
fn window_with(block: &Mat, h: usize, w: &InsertionContext, v: &[Scalar]) -> Mat {
    let t = w.rows.start - 1;
    let d = w.size();
    Mat::from_fn(d, d, |i, j| {
        if j < w.l {
            block.at(t + i, h - w.l + j).clone()
        } else if j == w.l {
            v[t + i].clone()
        } else {
            block.at(t + i, h + j - w.l - 1).clone()
        }
    })
}

/// `y_1, …, y_q` for a column inserted in the middle of `block`
/// (`h` columns on each side), for windows up to `max_size`.
fn middle_coefficients(
    block: &Mat,
    h: usize,
    q: usize,
    max_size: usize,
    pattern: &SignPattern,
) -> Result<Vec<Scalar>> {
    let windows = insertion_windows(h, block.rows(), max_size);
    if windows.iter().any(|w| w.m_val() >= q) {
        return Err(SsrError::Contract("window sees no coefficient pair".into()));
    }
    let mut y = vec![Scalar::zero(); q];
    for j in (1..=q).rev() {
        let flip = |x: Scalar| if (j - 1) % 2 == 0 { x } else { -x };
        let higher: Vec<Scalar> = if j < q {
            pair_combination(block, h, &y, j + 1)
        } else {
            Vec::new()
        };
        let mut best = Scalar::zero();
        for w in windows.iter().filter(|w| w.m_val() == j - 1) {
            let eps = pattern.get(w.size()).expect("window within pattern");
            let mut a = Scalar::zero();
            let mut outer = Vec::new();
            if w.l == j - 1 {
                outer.push(h - j);
            }
            if w.r == j - 1 {
                outer.push(h + j - 1);
            }
            for col in outer {
                let term = flip(det_exact(&window_with(block, h, w, &block.col0(col))));
                if Sign::of(&term) != Some(eps) {
                    return Err(SsrError::Contract(format!(
                        "coefficient of y_{j} has the wrong sign on rows {:?}",
                        w.rows.indices()
                    )));
                }
                a += &term;
            }
            if j < q {
                let b = det_exact(&window_with(block, h, w, &higher));
                let bound = -b / &a;
                if bound > best {
                    best = bound;
                }
            }
        }
        y[j - 1] = if j == q {
            Scalar::one()
        } else {
            best.next_half_above()
        };
    }
    Ok(y)
}

/// `Σ_{i ≥ from} (-1)^(i-1) y_i (c^(h-i+1) + c^(h+i))` over the set `y`.
fn pair_combination(block: &Mat, h: usize, y: &[Scalar], from: usize) -> Vec<Scalar> {
    let mut terms: Vec<(usize, Scalar)> = Vec::new();
    for i in from..=y.len() {
        let s = if (i - 1) % 2 == 0 {
            y[i - 1].clone()
        } else {
            -&y[i - 1]
        };
        terms.push((h - i, s.clone()));
        terms.push((h + i - 1, s));
    }
    block.combine_columns0(terms.iter().map(|(c, s)| (*c, s)))
}

/// Inserts a column between columns `n` and `n+1` of a `2n × 2n` SSR
/// matrix. The result is `2n × (2n+1)` and SSR with the same pattern.
pub fn insert_middle_even_square(a: &Mat) -> Result<Mat> {
    insert_middle_even_square_with_trace(a, &mut ConstructionTrace::new())
}

pub fn insert_middle_even_square_with_trace(a: &Mat, trace: &mut ConstructionTrace) -> Result<Mat> {
    if !a.is_square() || !a.rows().is_multiple_of(2) || a.rows() == 0 {
        return Err(SsrError::Dimension(format!(
            "middle insertion needs an even square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let (pattern, method) = require_ssr(a, a.rows())?;
    trace.precondition_checks.push(method);
    insert_middle_unchecked(a, &pattern, trace)
}

fn insert_middle_unchecked(
    a: &Mat,
    pattern: &SignPattern,
    trace: &mut ConstructionTrace,
) -> Result<Mat> {
    let h = a.rows() / 2;
    let y = middle_coefficients(a, h, h, a.rows(), pattern)?;
    let c = pair_combination(a, h, &y, 1);
    trace.y_choices.push(YChoice {
        kind: ColumnKind::Interior,
        y,
    });
    Ok(a.insert_column0(h, &c))
}

/// Inserts a line into an SSR matrix after line `k` (`1 ≤ k < length`)
/// of the given axis.
///
/// `new_size_sign` follows the rules of
/// [`extend_border`](crate::construct::extend_border): it is required
/// exactly when the result has a larger `min(m, n)`.
pub fn insert_line(a: &Mat, axis: Axis, k: usize, new_size_sign: Option<Sign>) -> Result<Mat> {
    insert_line_with_trace(a, axis, k, new_size_sign, &mut ConstructionTrace::new())
}

pub fn insert_line_with_trace(
    a: &Mat,
    axis: Axis,
    k: usize,
    new_size_sign: Option<Sign>,
    trace: &mut ConstructionTrace,
) -> Result<Mat> {
    match axis {
        Axis::Col => insert_col(a, k, new_size_sign, trace),
        Axis::Row => Ok(insert_col(&a.transpose(), k, new_size_sign, trace)?.transpose()),
    }
}

fn insert_col(
    a: &Mat,
    k: usize,
    new_size_sign: Option<Sign>,
    trace: &mut ConstructionTrace,
) -> Result<Mat> {
    let (m, n) = a.shape();
    if n < 2 || k == 0 || k >= n {
        return Err(SsrError::PositionOutOfRange {
            at: k,
            max: n.saturating_sub(1),
        });
    }
    check_new_sign(m > n, new_size_sign)?;
    let d = a.min_dim();
    let (mut pattern, method) = require_ssr(a, d)?;
    trace.precondition_checks.push(method);
    let user = new_size_sign.map(|s| s * pattern.last());

    // Embed in a 2N × 2N matrix with the gap in the middle.
    let big = k.max(n - k).max(m.div_ceil(2));
    let extra_rows = 2 * big - m;
    let top = extra_rows.div_ceil(2);
    let steps = std::iter::repeat_n(Side::Left, big - k)
        .chain(std::iter::repeat_n(Side::Right, big - (n - k)))
        .chain(std::iter::repeat_n(Side::Top, top))
        .chain(std::iter::repeat_n(Side::Bottom, extra_rows - top));
    let mut padded = a.clone();
    for side in steps {
        let target = if side.grows_min_dim(padded.rows(), padded.cols()) {
            let size = padded.min_dim() + 1;
            // Sizes beyond the final result are discarded by trimming.
            let sign = match user {
                Some(s) if size == d + 1 => s,
                _ => pattern.last(),
            };
            pattern.push(sign);
            Some(sign)
        } else {
            None
        };
        padded = extend_unchecked(&padded, side, target, trace)?;
    }
    debug_assert_eq!(padded.shape(), (2 * big, 2 * big));

    let y = middle_coefficients(&padded, big, big, 2 * big, &pattern)?;
    let c = pair_combination(&padded, big, &y, 1);
    trace.y_choices.push(YChoice {
        kind: ColumnKind::Interior,
        y,
    });
    Ok(a.insert_column0(k, &c[top..top + m]))
}

/// Inserts a line into an SSR_p matrix (`p < min(m, n)`) after line `k`,
/// keeping it SSR_p with the same pattern. Only the `p - 1` lines on each
/// side of the gap are used.
pub fn insert_line_ssr_p(a: &Mat, p: usize, axis: Axis, k: usize) -> Result<Mat> {
    insert_line_ssr_p_with_trace(a, p, axis, k, &mut ConstructionTrace::new())
}

pub fn insert_line_ssr_p_with_trace(
    a: &Mat,
    p: usize,
    axis: Axis,
    k: usize,
    trace: &mut ConstructionTrace,
) -> Result<Mat> {
    match axis {
        Axis::Col => insert_col_p(a, p, k, trace),
        Axis::Row => Ok(insert_col_p(&a.transpose(), p, k, trace)?.transpose()),
    }
}

fn insert_col_p(a: &Mat, p: usize, k: usize, trace: &mut ConstructionTrace) -> Result<Mat> {
    let (m, n) = a.shape();
    if p == 0 || p >= m.min(n) {
        return Err(SsrError::OrderOutOfRange {
            p,
            max: m.min(n).saturating_sub(1),
        });
    }
    if k == 0 || k >= n {
        return Err(SsrError::PositionOutOfRange { at: k, max: n - 1 });
    }
    let (pattern, method) = require_ssr(a, p)?;
    trace.precondition_checks.push(method);

    // For p = 1 the two neighbours of the gap are used.
    let h = (p - 1).max(1);
    let q = p.div_ceil(2);
    let left = k.min(h);
    let right = (n - k).min(h);
    let mut block = a.sub0(0..m, k - left..k + right);
    for _ in left..h {
        block = extend_p_unchecked(&block, p, Side::Left, trace);
    }
    for _ in right..h {
        block = extend_p_unchecked(&block, p, Side::Right, trace);
    }
    if p % 2 == 1
        && insertion_windows(h, m, p)
            .iter()
            .any(|w| w.m_val() == q - 1 && w.case() != WindowCase::III)
    {
        return Err(SsrError::Contract(
            "odd order admits an unbalanced outermost window".into(),
        ));
    }
    let y = middle_coefficients(&block, h, q, p, &pattern)?;
    let c = pair_combination(&block, h, &y, 1);
    trace.y_choices.push(YChoice {
        kind: ColumnKind::Interior,
        y,
    });
    Ok(a.insert_column0(k, &c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{ssr_construction, ssr_p_construction};
    use crate::verify::verify_full;

    fn pat(s: &str) -> SignPattern {
        s.parse().unwrap()
    }

    #[test]
    fn window_cases_partition() {
        for h in 1..=4 {
            let ws = insertion_windows(h, 2 * h, 2 * h);
            for w in &ws {
                let cases = [w.l < w.r, w.r < w.l, w.l == w.r];
                assert_eq!(cases.iter().filter(|&&c| c).count(), 1);
                assert!(w.m_val() < h);
            }
            // every (l, r) with l, r ≤ h and l + r < 2h shows up
            for l in 0..=h {
                for r in 0..=h {
                    let present = ws.iter().any(|w| w.l == l && w.r == r);
                    assert_eq!(present, l + r < 2 * h, "h={h} l={l} r={r}");
                }
            }
        }
    }

    #[test]
    fn middle_two_by_two() {
        let a = Mat::from_i64(&[&[2, 1], &[1, 1]]);
        let mut trace = ConstructionTrace::new();
        let out = insert_middle_even_square_with_trace(&a, &mut trace).unwrap();
        assert_eq!(out, Mat::from_i64(&[&[2, 3, 1], &[1, 2, 1]]));
        assert_eq!(trace.y_choices[0].y, vec![Scalar::one()]);
        assert_eq!(
            verify_full(&out, 2).unwrap().inferred_pattern.unwrap(),
            pat("++")
        );
    }

    #[test]
    fn middle_four_by_four() {
        for s in ["++++", "+-+-", "--++", "-+--"] {
            let (a, _) = ssr_construction(4, 4, &pat(s)).unwrap();
            let out = insert_middle_even_square(&a).unwrap();
            assert_eq!(out.shape(), (4, 5));
            assert_eq!(out.delete_column(3).unwrap(), a);
            assert_eq!(
                verify_full(&out, 4).unwrap().inferred_pattern.unwrap(),
                pat(s)
            );
        }
    }

    #[test]
    fn middle_rejects_bad_shapes() {
        assert!(matches!(
            insert_middle_even_square(&Mat::identity(3)),
            Err(SsrError::Dimension(_))
        ));
        let (a, _) = ssr_construction(2, 3, &pat("++")).unwrap();
        assert!(matches!(
            insert_middle_even_square(&a),
            Err(SsrError::Dimension(_))
        ));
    }

    #[test]
    fn insert_line_examples() {
        let (a, _) = ssr_construction(3, 4, &pat("+-+")).unwrap();
        for k in 1..4 {
            let out = insert_line(&a, Axis::Col, k, None).unwrap();
            assert_eq!(out.delete_column(k + 1).unwrap(), a);
            assert_eq!(
                verify_full(&out, 3).unwrap().inferred_pattern.unwrap(),
                pat("+-+")
            );
        }
        for k in 1..3 {
            let out = insert_line(&a, Axis::Row, k, Some(Sign::Minus)).unwrap();
            assert_eq!(out.delete_row(k + 1).unwrap(), a);
            assert_eq!(
                verify_full(&out, 4).unwrap().inferred_pattern.unwrap(),
                pat("+-+-")
            );
        }
    }

    #[test]
    fn insert_line_contract() {
        let (a, _) = ssr_construction(3, 3, &pat("+++")).unwrap();
        assert!(matches!(
            insert_line(&a, Axis::Col, 3, None),
            Err(SsrError::PositionOutOfRange { .. })
        ));
        assert!(matches!(
            insert_line(&a, Axis::Col, 0, None),
            Err(SsrError::PositionOutOfRange { .. })
        ));
        assert_eq!(
            insert_line(&a, Axis::Col, 1, Some(Sign::Plus)),
            Err(SsrError::NewSignNotAllowed)
        );
        let (t, _) = ssr_construction(4, 3, &pat("+++")).unwrap();
        assert_eq!(
            insert_line(&t, Axis::Col, 1, None),
            Err(SsrError::NewSignRequired)
        );
    }

    #[test]
    fn insert_line_ssr_p_examples() {
        for (p, s) in [(1, "-"), (2, "+-"), (3, "++-")] {
            let (a, _) = ssr_p_construction(5, 5, p, &pat(s)).unwrap();
            for k in 1..5 {
                for axis in [Axis::Col, Axis::Row] {
                    let out = insert_line_ssr_p(&a, p, axis, k).unwrap();
                    let back = match axis {
                        Axis::Col => out.delete_column(k + 1).unwrap(),
                        Axis::Row => out.delete_row(k + 1).unwrap(),
                    };
                    assert_eq!(back, a);
                    let r = verify_full(&out, p).unwrap();
                    assert_eq!(r.inferred_pattern.unwrap(), pat(s), "p={p} k={k} {axis}");
                }
            }
        }
    }

    #[test]
    fn insert_line_ssr_p_order_range() {
        let (a, _) = ssr_p_construction(4, 4, 2, &pat("++")).unwrap();
        assert!(matches!(
            insert_line_ssr_p(&a, 4, Axis::Col, 1),
            Err(SsrError::OrderOutOfRange { .. })
        ));
    }
}
