//! Dense rational matrices, sign patterns and index sets.
//!
//! Index arguments in the public API are 1-based: row `1` is the top row,
//! column `1` the leftmost column, and index sets such as `{1, 2, 3}` are
//! passed as `&[1, 2, 3]`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SsrError};
use crate::numeric::{det_exact, Scalar};

/// Dense `rows × cols` matrix of exact rationals, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    /// The 0×0 matrix.
    pub fn empty() -> Mat {
        Mat {
            rows: 0,
            cols: 0,
            data: Vec::new(),
        }
    }

    pub fn filled(rows: usize, cols: usize, value: Scalar) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat::filled(rows, cols, Scalar::zero())
    }

    pub fn identity(n: usize) -> Mat {
        Mat::from_fn(n, n, |r, c| {
            if r == c {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    /// Builds a matrix from a 0-based generator.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Mat> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(SsrError::Dimension("ragged rows".into()));
        }
        if m > 0 && n == 0 {
            return Err(SsrError::Dimension("rows must be nonempty".into()));
        }
        Ok(Mat {
            rows: m,
            cols: n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for integer literals. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Mat {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from(x)).collect())
                .collect(),
        )
        .expect("rectangular integer matrix")
    }

    pub fn from_columns(cols: &[Vec<Scalar>]) -> Result<Mat> {
        let n = cols.len();
        let m = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != m) {
            return Err(SsrError::Dimension("columns of unequal length".into()));
        }
        Ok(Mat::from_fn(m, n, |r, c| cols[c][r].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn min_dim(&self) -> usize {
        self.rows.min(self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at 1-based position `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> Result<&Scalar> {
        check_index(i, self.rows)?;
        check_index(j, self.cols)?;
        Ok(self.at(i - 1, j - 1))
    }

    pub(crate) fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub(crate) fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    /// Column `j` (1-based) as a vector.
    pub fn column(&self, j: usize) -> Result<Vec<Scalar>> {
        check_index(j, self.cols)?;
        Ok(self.col0(j - 1))
    }

    pub(crate) fn col0(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        self.data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(<[Scalar]>::to_vec)
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Scalar> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    /// `A · P_n`: column `j` of the result is column `n + 1 - j` of `self`.
    pub fn reverse_columns(&self) -> Mat {
        let n = self.cols;
        Mat::from_fn(self.rows, n, |r, c| self.at(r, n - 1 - c).clone())
    }

    /// `A_{I×J}` for 1-based, strictly increasing, nonempty `I` and `J`.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Mat> {
        check_index_set(rows, self.rows)?;
        check_index_set(cols, self.cols)?;
        Ok(self.sub0(rows.iter().map(|i| i - 1), cols.iter().map(|j| j - 1)))
    }

    /// Unchecked submatrix on 0-based index iterators.
    pub(crate) fn sub0(
        &self,
        rows: impl IntoIterator<Item = usize>,
        cols: impl IntoIterator<Item = usize> + Clone,
    ) -> Mat {
        let mut data = Vec::new();
        let mut nrows = 0;
        let mut ncols = 0;
        for r in rows {
            nrows += 1;
            ncols = 0;
            for c in cols.clone() {
                ncols += 1;
                data.push(self.at(r, c).clone());
            }
        }
        if nrows == 0 {
            ncols = 0;
        }
        Mat {
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    /// Determinant of `A_{I×J}` for 1-based index sets of equal size.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Scalar> {
        if rows.len() != cols.len() {
            return Err(SsrError::Dimension(format!(
                "minor needs |I| = |J|, got {} and {}",
                rows.len(),
                cols.len()
            )));
        }
        Ok(det_exact(&self.submatrix(rows, cols)?))
    }

    /// Determinant of the contiguous block with 0-based top-left corner
    /// `(r0, c0)` and size `k`.
    pub(crate) fn contiguous_minor0(&self, r0: usize, c0: usize, k: usize) -> Scalar {
        det_exact(&self.sub0(r0..r0 + k, c0..c0 + k))
    }

    /// New matrix with `col` inserted so that it becomes column `pos0 + 1`.
    pub(crate) fn insert_column0(&self, pos0: usize, col: &[Scalar]) -> Mat {
        debug_assert_eq!(col.len(), self.rows);
        Mat::from_fn(self.rows, self.cols + 1, |r, c| match c.cmp(&pos0) {
            std::cmp::Ordering::Less => self.at(r, c).clone(),
            std::cmp::Ordering::Equal => col[r].clone(),
            std::cmp::Ordering::Greater => self.at(r, c - 1).clone(),
        })
    }

    /// Removes column `j` (1-based).
    pub fn delete_column(&self, j: usize) -> Result<Mat> {
        check_index(j, self.cols)?;
        Ok(self.sub0(0..self.rows, (0..self.cols).filter(move |&c| c != j - 1)))
    }

    /// Removes row `i` (1-based).
    pub fn delete_row(&self, i: usize) -> Result<Mat> {
        Ok(self.transpose().delete_column(i)?.transpose())
    }

    /// Exact matrix product.
    pub fn matmul(&self, rhs: &Mat) -> Result<Mat> {
        if self.cols != rhs.rows {
            return Err(SsrError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Mat::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols).map(|k| self.at(r, k) * rhs.at(k, c)).sum()
        }))
    }

    /// `Σ coeffs[i] · column(i)` over 0-based column indices.
    pub(crate) fn combine_columns0<'a>(
        &self,
        terms: impl IntoIterator<Item = (usize, &'a Scalar)>,
    ) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.rows];
        for (c, coeff) in terms {
            if coeff.is_zero() {
                continue;
            }
            for (r, slot) in out.iter_mut().enumerate() {
                *slot += &(self.at(r, c) * coeff);
            }
        }
        out
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl Mul for &Mat {
    type Output = Mat;

    /// # Panics
    /// On incompatible shapes.
    fn mul(self, rhs: &Mat) -> Mat {
        self.matmul(rhs).expect("compatible shapes")
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}{:?}", self.rows, self.cols, self.to_rows())
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "[{}]", line.join(", "))?;
        }
        Ok(())
    }
}

fn check_index(i: usize, bound: usize) -> Result<()> {
    if i == 0 || i > bound {
        Err(SsrError::IndexOutOfRange { index: i, bound })
    } else {
        Ok(())
    }
}

fn check_index_set(set: &[usize], bound: usize) -> Result<()> {
    if set.is_empty() || set.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SsrError::BadIndexSet);
    }
    set.iter().try_for_each(|&i| check_index(i, bound))
}

/// The `n × n` exchange (anti-identity) matrix `P_n`.
pub fn exchange_matrix(n: usize) -> Mat {
    Mat::from_fn(n, n, |r, c| {
        if r + c + 1 == n {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// A nonzero sign, `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "+")]
    Plus,
}

impl Sign {
    /// The sign of a nonzero scalar; `None` for zero.
    pub fn of(x: &Scalar) -> Option<Sign> {
        match x.signum() {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn from_i8(s: i8) -> Option<Sign> {
        match s {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `(-1)^k`.
    pub fn parity(k: usize) -> Sign {
        if k.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_scalar(self) -> Scalar {
        Scalar::from(i64::from(self.to_i8()))
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            // ASCII hyphen and U+2212 MINUS SIGN
            '-' | '\u{2212}' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// `ε = (ε_1, …, ε_p)`: the common sign of the k×k minors for each k.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SignPattern(Vec<Sign>);

impl SignPattern {
    pub fn new(signs: Vec<Sign>) -> Result<SignPattern> {
        if signs.is_empty() {
            return Err(SsrError::PatternLength {
                expected: 1,
                found: 0,
            });
        }
        Ok(SignPattern(signs))
    }

    /// From a slice of `±1`; any other value is rejected.
    pub fn from_i8s(signs: &[i8]) -> Result<SignPattern> {
        signs
            .iter()
            .map(|&s| Sign::from_i8(s).ok_or_else(|| SsrError::InvalidSign(s.to_string())))
            .collect::<Result<Vec<_>>>()
            .and_then(SignPattern::new)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `ε_k` for 1-based `k`.
    pub fn get(&self, k: usize) -> Option<Sign> {
        k.checked_sub(1).and_then(|i| self.0.get(i)).copied()
    }

    pub fn last(&self) -> Sign {
        *self.0.last().expect("patterns are nonempty")
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn prefix(&self, len: usize) -> SignPattern {
        SignPattern(self.0[..len.min(self.0.len())].to_vec())
    }

    pub fn push(&mut self, s: Sign) {
        self.0.push(s);
    }

    /// All `2^len` patterns, in lexicographic order with `+` first.
    pub fn all(len: usize) -> Vec<SignPattern> {
        (0..1usize << len)
            .map(|bits| {
                SignPattern(
                    (0..len)
                        .map(|i| {
                            if bits >> (len - 1 - i) & 1 == 0 {
                                Sign::Plus
                            } else {
                                Sign::Minus
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{s}"))
    }
}

impl FromStr for SignPattern {
    type Err = SsrError;

    fn from_str(s: &str) -> Result<SignPattern> {
        s.chars()
            .map(|c| Sign::from_char(c).ok_or_else(|| SsrError::InvalidSign(c.to_string())))
            .collect::<Result<Vec<_>>>()
            .and_then(SignPattern::new)
    }
}

impl TryFrom<String> for SignPattern {
    type Error = SsrError;
    fn try_from(s: String) -> Result<SignPattern> {
        s.parse()
    }
}

impl From<SignPattern> for String {
    fn from(p: SignPattern) -> String {
        p.to_string()
    }
}

/// `ε'_i = (-1)^⌊i/2⌋ ε_i`: the pattern of `A · P_n` when `A` has pattern `ε`.
pub fn transform_sign_pattern(pattern: &SignPattern) -> SignPattern {
    SignPattern(
        pattern
            .0
            .iter()
            .enumerate()
            .map(|(i, &s)| exchange_sign(i + 1) * s)
            .collect(),
    )
}

/// `(-1)^⌊k/2⌋`, the sign of `det P_k`.
pub fn exchange_sign(k: usize) -> Sign {
    Sign::parity(k / 2)
}

/// The index set `{start, …, start + len - 1}` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ContiguousSet {
    pub start: usize,
    pub len: usize,
}

impl ContiguousSet {
    pub fn end(&self) -> usize {
        self.start + self.len - 1
    }

    pub fn indices(&self) -> Vec<usize> {
        (self.start..=self.end()).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        (self.start..=self.end()).contains(&i)
    }
}

/// All `n - k + 1` contiguous subsets of `[n]` of size `k`, by start.
pub fn contiguous_sets(n: usize, k: usize) -> Vec<ContiguousSet> {
    if k == 0 || k > n {
        return Vec::new();
    }
    (1..=n - k + 1)
        .map(|start| ContiguousSet { start, len: k })
        .collect()
}
