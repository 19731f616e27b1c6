//! Rank-control matrices: `r[k][l]` is the rank of the upper-left `k x l`
//! block. They are complete invariants of Borel congruence orbits.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RankControlJson", into = "RankControlJson")]
pub struct RankControlMatrix {
    n: usize,
    r: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RankControlJson {
    n: usize,
    r: Vec<Vec<usize>>,
}

impl TryFrom<RankControlJson> for RankControlMatrix {
    type Error = Error;
    fn try_from(value: RankControlJson) -> Result<Self> {
        if value.r.len() != value.n {
            return Err(Error::InvalidRankControl(format!(
                "declared n = {} but {} rows",
                value.n,
                value.r.len()
            )));
        }
        RankControlMatrix::from_rows(value.r)
    }
}

impl From<RankControlMatrix> for RankControlJson {
    fn from(value: RankControlMatrix) -> Self {
        RankControlJson {
            n: value.n,
            r: value.r,
        }
    }
}

impl RankControlMatrix {
    /// Validates bounds and unit-step monotonicity (with an implicit zero
    /// row and column before the first).
    pub fn from_rows(r: Vec<Vec<usize>>) -> Result<Self> {
        let n = r.len();
        if n == 0 || r.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidRankControl("must be a nonempty square array".into()));
        }
        let at = |k: usize, l: usize| if k == 0 || l == 0 { 0 } else { r[k - 1][l - 1] };
        for k in 1..=n {
            for l in 1..=n {
                let v = at(k, l);
                if v > k.min(l) {
                    return Err(Error::InvalidRankControl(format!(
                        "r[{k}][{l}] = {v} exceeds min({k},{l})"
                    )));
                }
                for prev in [at(k - 1, l), at(k, l - 1)] {
                    if v < prev || v - prev > 1 {
                        return Err(Error::InvalidRankControl(format!(
                            "r[{k}][{l}] = {v} breaks unit-step monotonicity"
                        )));
                    }
                }
            }
        }
        Ok(RankControlMatrix { n, r })
    }

    pub fn zeros(n: usize) -> Self {
        RankControlMatrix {
            n,
            r: vec![vec![0; n]; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.r
    }

    /// 1-based read with `r[0][*] = r[*][0] = 0`.
    pub fn get(&self, k: usize, l: usize) -> usize {
        if k == 0 || l == 0 {
            0
        } else {
            self.r[k - 1][l - 1]
        }
    }

    /// Entrywise `self <= other`.
    pub fn leq(&self, other: &RankControlMatrix) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::Dimension(format!(
                "comparing rank-control matrices of sizes {} and {}",
                self.n, other.n
            )));
        }
        Ok(self
            .r
            .iter()
            .flatten()
            .zip(other.r.iter().flatten())
            .all(|(a, b)| a <= b))
    }

    /// Number of strictly-upper positions `i < j` with `r[i][j] = r[i-1][j-1]`,
    /// reading a phantom zero row above the first.
    pub fn count_a(&self) -> usize {
        let mut count = 0;
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                if self.get(i, j) == self.get(i - 1, j - 1) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.r {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses `n` lines of `n` integers.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| Error::Parse {
                        line: line_no + 1,
                        column: line.find(tok).map_or(1, |b| line[..b].chars().count() + 1),
                        message: format!("expected a non-negative integer, found {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        RankControlMatrix::from_rows(rows)
    }
}

impl fmt::Display for RankControlMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for RankControlMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RankControlMatrix{:?}", self.r)
    }
}

/// Rank-control matrix of a square matrix.
///
/// One elimination per row prefix: the ranks of all `k x l` blocks for a
/// fixed `k` are the pivot counts of the column-ordered elimination of the
/// first `k` rows.
pub fn rank_control(m: &Matrix) -> Result<RankControlMatrix> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "rank-control matrix of a {}x{} matrix",
            m.n_rows(),
            m.n_cols()
        )));
    }
    let n = m.n_rows();
    let r = (1..=n)
        .map(|k| m.upper_left_submatrix(k, n).map(|block| block.prefix_column_ranks()))
        .collect::<Result<Vec<_>>>()?;
    Ok(RankControlMatrix { n, r })
}
