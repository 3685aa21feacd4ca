use serde::Serialize;

use super::Rational;
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(RationalMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    /// Builds a matrix from explicit rows; all rows must share one length.
    /// `cols` is needed to describe the zero-row case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let n_rows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(RationalMatrix {
            rows: n_rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `y^T A`, the row combination with weights `y`.
    pub fn left_mul_vec(&self, y: &[Rational]) -> Result<Vec<Rational>> {
        if y.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: y.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.cols];
        for (r, w) in y.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(r)) {
                *o += w * a;
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SolveStatus {
    Unique,
    Underdetermined,
    Inconsistent,
}

/// Outcome of an exact solve of `A x = b`.
///
/// For inconsistent systems `certificate` holds a row combination `y` with
/// `y^T A = 0` and `y^T b != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSolution {
    pub status: SolveStatus,
    pub particular: Option<Vec<Rational>>,
    pub nullspace_basis: Vec<Vec<Rational>>,
    pub pivot_columns: Vec<usize>,
    pub certificate: Option<Vec<Rational>>,
}

impl LinearSolution {
    pub fn is_consistent(&self) -> bool {
        self.status != SolveStatus::Inconsistent
    }

    pub fn rank(&self) -> usize {
        self.pivot_columns.len()
    }
}

/// Solves `A x = b` exactly by Gauss-Jordan elimination.
///
/// Pivots are chosen as the first nonzero entry at or below the current row,
/// so the result is fully deterministic. Free variables of the particular
/// solution are set to zero; one nullspace vector is returned per free column.
pub fn solve_exact(a: &RationalMatrix, b: &[Rational]) -> Result<LinearSolution> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: b.len(),
        });
    }

    // Augmented layout per row: [A | b | I_m]; the identity block records the
    // row operations so an inconsistent row yields its own certificate.
    let width = n + 1 + m;
    let mut work: Vec<Vec<Rational>> = (0..m)
        .map(|r| {
            let mut row = Vec::with_capacity(width);
            row.extend_from_slice(a.row(r));
            row.push(b[r].clone());
            row.extend((0..m).map(|c| {
                if c == r {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == m {
            break;
        }
        let Some(found) = (pivot_row..m).find(|&r| !work[r][col].is_zero()) else {
            continue;
        };
        work.swap(pivot_row, found);
        let inv = work[pivot_row][col].recip()?;
        for x in work[pivot_row].iter_mut() {
            *x *= &inv;
        }
        let pivot = work[pivot_row].clone();
        for (r, row) in work.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }

    if let Some(bad) = work[pivot_row..].iter().find(|row| !row[n].is_zero()) {
        return Ok(LinearSolution {
            status: SolveStatus::Inconsistent,
            particular: None,
            nullspace_basis: Vec::new(),
            pivot_columns: pivots,
            certificate: Some(bad[n + 1..].to_vec()),
        });
    }

    let mut particular = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = work[r][n].clone();
    }

    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let nullspace_basis = free
        .iter()
        .map(|&f| {
            let mut z = vec![Rational::zero(); n];
            z[f] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                z[c] = -&work[r][f];
            }
            z
        })
        .collect::<Vec<_>>();

    Ok(LinearSolution {
        status: if free.is_empty() {
            SolveStatus::Unique
        } else {
            SolveStatus::Underdetermined
        },
        particular: Some(particular),
        nullspace_basis,
        pivot_columns: pivots,
        certificate: None,
    })
}
