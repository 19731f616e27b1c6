use std::fmt;
use std::ops::Mul;

use super::Rational;
use crate::error::{Error, Result};

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty {rows}x{cols} matrix")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Matrix::new(n_rows, n_cols, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor for integer matrices. Panics on ragged input.
    pub fn from_integers<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| Rational::from(x)).collect())
            .collect();
        Matrix::from_rows(rows).expect("well-formed integer matrix")
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Zero-based access.
    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// The block of the first `k` rows and first `l` columns.
    pub fn upper_left_submatrix(&self, k: usize, l: usize) -> Result<Matrix> {
        if k == 0 || l == 0 || k > self.rows || l > self.cols {
            return Err(Error::Dimension(format!(
                "{k}x{l} block of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let entries = (0..k)
            .flat_map(|i| self.row(i)[..l].iter().cloned())
            .collect();
        Matrix::new(k, l, entries)
    }

    pub fn rank(&self) -> usize {
        *self.prefix_column_ranks().last().unwrap()
    }

    /// `result[l - 1]` is the rank of the first `l` columns.
    ///
    /// Gaussian elimination scanning columns left to right: row operations
    /// preserve linear relations among columns, so the rank of a column
    /// prefix is the number of pivots found inside it.
    pub fn prefix_column_ranks(&self) -> Vec<usize> {
        let mut rows: Vec<Vec<Rational>> =
            (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        let mut out = Vec::with_capacity(self.cols);
        for col in 0..self.cols {
            if let Some(pivot) = (rank..self.rows).find(|&r| !rows[r][col].is_zero()) {
                rows.swap(rank, pivot);
                let (head, tail) = rows.split_at_mut(rank + 1);
                let pivot_row = &head[rank];
                for row in tail.iter_mut() {
                    if row[col].is_zero() {
                        continue;
                    }
                    let factor = &row[col] / &pivot_row[col];
                    for c in col..self.cols {
                        if !pivot_row[c].is_zero() {
                            let delta = &factor * &pivot_row[c];
                            row[c] -= delta;
                        }
                    }
                }
                rank += 1;
            }
            out.push(rank);
        }
        out
    }

    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut rows: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
                return Ok(Rational::zero());
            };
            if pivot != col {
                rows.swap(col, pivot);
                det = -det;
            }
            let (head, tail) = rows.split_at_mut(col + 1);
            let pivot_row = &head[col];
            det *= &pivot_row[col];
            for row in tail.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let factor = &row[col] / &pivot_row[col];
                for c in col..n {
                    if !pivot_row[c].is_zero() {
                        let delta = &factor * &pivot_row[c];
                        row[c] -= delta;
                    }
                }
            }
        }
        Ok(det)
    }

    /// Parses the text form: a line holding `n`, then `n` rows of `n`
    /// whitespace-separated rationals. Blank lines are ignored.
    pub fn parse_square(text: &str) -> Result<Matrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.trim().is_empty());
        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            column: 1,
            message: "missing dimension header".into(),
        })?;
        let header_tokens = tokens(header);
        let n = match header_tokens.as_slice() {
            [(col, tok)] => tok.parse::<usize>().ok().filter(|&n| n > 0).ok_or(Error::Parse {
                line: header_line,
                column: *col,
                message: format!("expected a positive dimension, found {tok:?}"),
            })?,
            _ => {
                return Err(Error::Parse {
                    line: header_line,
                    column: 1,
                    message: "header must be a single positive integer".into(),
                })
            }
        };
        let mut entries = Vec::with_capacity(n * n);
        let mut last_line = header_line;
        for row in 0..n {
            let (line_no, line) = lines.next().ok_or(Error::Parse {
                line: last_line + 1,
                column: 1,
                message: format!("expected {n} rows, found {row}"),
            })?;
            last_line = line_no;
            let row_tokens = tokens(line);
            if row_tokens.len() != n {
                let column = row_tokens.get(n).map_or(line.chars().count() + 1, |t| t.0);
                return Err(Error::Parse {
                    line: line_no,
                    column,
                    message: format!("expected {n} entries, found {}", row_tokens.len()),
                });
            }
            for (column, tok) in row_tokens {
                let value = tok.parse::<Rational>().map_err(|_| Error::Parse {
                    line: line_no,
                    column,
                    message: format!("invalid rational {tok:?}"),
                })?;
                entries.push(value);
            }
        }
        if let Some((line, text)) = lines.next() {
            return Err(Error::Parse {
                line,
                column: text.chars().take_while(|c| c.is_whitespace()).count() + 1,
                message: format!("trailing content after {n} rows"),
            });
        }
        Matrix::new(n, n, entries)
    }

    /// Inverse of `parse_square`'s row layout (without the header line).
    pub fn to_text(&self) -> String {
        let cells: Vec<String> = self.entries.iter().map(Rational::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = cells[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(|c| format!("{c:>width$}"))
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Whitespace-separated tokens with their 1-based character column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    let mut col_of_start = 0;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => {
                start = Some(byte);
                col_of_start = col + 1;
            }
            (true, Some(s)) => {
                out.push((col_of_start, &line[s..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((col_of_start, &line[s..]));
    }
    out
}

impl Mul for &Matrix {
    type Output = Matrix;

    /// Panics on incompatible shapes; use [`Matrix::checked_mul`] otherwise.
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("compatible shapes")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        f.write_str(&self.to_text())
    }
}

/// Square matrix with `Aᵗ = -A`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ASMatrix(Matrix);

impl ASMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(format!(
                "anti-symmetric matrix must be square, got {}x{}",
                m.rows, m.cols
            )));
        }
        for i in 0..m.rows {
            for j in i..m.cols {
                if *m.get(i, j) != -m.get(j, i) {
                    return Err(Error::NotAntiSymmetric {
                        row: i + 1,
                        col: j + 1,
                    });
                }
            }
        }
        Ok(ASMatrix(m))
    }

    pub fn zeros(n: usize) -> Self {
        ASMatrix(Matrix::zeros(n, n))
    }

    pub fn n(&self) -> usize {
        self.0.rows
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    /// `Bᵗ A B` for a square `B` of matching size.
    pub fn congruence(&self, b: &Matrix) -> Result<ASMatrix> {
        let out = b.transpose().checked_mul(&self.0)?.checked_mul(b)?;
        Ok(ASMatrix(out))
    }

    /// Exact Pfaffian by skew-symmetric elimination; zero for odd `n`.
    ///
    /// Each step pivots the leading 2x2 block `[[0, a], [-a, 0]]` into place
    /// (a simultaneous row/column swap flips the sign) and replaces the
    /// trailing block by its skew Schur complement, so that
    /// `Pf(A) = ±a · Pf(S)`.
    pub fn pfaffian(&self) -> Rational {
        let n = self.n();
        if n % 2 == 1 {
            return Rational::zero();
        }
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.0.row(i).to_vec()).collect();
        let mut pf = Rational::one();
        for k in (0..n).step_by(2) {
            let Some(p) = (k + 1..n).find(|&j| !a[k][j].is_zero()) else {
                return Rational::zero();
            };
            if p != k + 1 {
                a.swap(k + 1, p);
                for row in a.iter_mut() {
                    row.swap(k + 1, p);
                }
                pf = -pf;
            }
            let pivot = a[k][k + 1].clone();
            pf *= &pivot;
            for i in k + 2..n {
                for j in i + 1..n {
                    let cross = &a[k + 1][i] * &a[k][j] - &a[k][i] * &a[k + 1][j];
                    if cross.is_zero() {
                        continue;
                    }
                    let updated = &a[i][j] + &(&cross / &pivot);
                    a[j][i] = -&updated;
                    a[i][j] = updated;
                }
            }
        }
        pf
    }
}

impl TryFrom<Matrix> for ASMatrix {
    type Error = Error;
    fn try_from(m: Matrix) -> Result<Self> {
        ASMatrix::new(m)
    }
}

impl AsRef<Matrix> for ASMatrix {
    fn as_ref(&self) -> &Matrix {
        &self.0
    }
}
