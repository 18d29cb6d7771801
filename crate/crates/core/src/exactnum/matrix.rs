//! Small dense matrices over a cyclotomic field.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CycNum, NumError};

/// Row-major dense matrix. All entries share one conductor.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CycNum>,
}

impl Matrix {
    pub fn zeros(m: u32, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![CycNum::zero(m); rows * cols],
        }
    }

    pub fn identity(m: u32, n: usize) -> Matrix {
        let mut a = Matrix::zeros(m, n, n);
        for i in 0..n {
            a.data[i * n + i] = CycNum::one(m);
        }
        a
    }

    pub fn diagonal(entries: &[CycNum]) -> Matrix {
        let n = entries.len();
        let m = entries[0].conductor();
        let mut a = Matrix::zeros(m, n, n);
        for (i, e) in entries.iter().enumerate() {
            a.data[i * n + i] = e.clone();
        }
        a
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Result<Matrix, NumError> {
        let r = rows.len();
        if r == 0 {
            return Err(NumError::Dimension("empty matrix".into()));
        }
        let c = rows[0].len();
        if c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(NumError::Dimension("ragged matrix rows".into()));
        }
        let m = rows[0][0].conductor();
        for e in rows.iter().flatten() {
            if e.conductor() != m {
                return Err(NumError::ConductorMismatch {
                    left: m,
                    right: e.conductor(),
                });
            }
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.data[0].conductor()
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<CycNum>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, NumError> {
        if self.cols != other.rows {
            return Err(NumError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let m = self.conductor();
        if other.conductor() != m {
            return Err(NumError::ConductorMismatch {
                left: m,
                right: other.conductor(),
            });
        }
        let mut out = Matrix::zeros(m, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, NumError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(NumError::Dimension("shape mismatch in subtraction".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<_, _>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &CycNum) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.conductor(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let mut t = self.transpose();
        for e in t.data.iter_mut() {
            *e = e.conjugate();
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn is_unitary(&self) -> bool {
        self.is_square() && self.adjoint().mul(self).map(|p| p.is_identity()).unwrap_or(false)
    }

    /// Reduced row echelon form and the list of pivot columns.
    fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let inv = a.get(r, c).inverse().expect("nonzero pivot");
            for j in 0..a.cols {
                let v = a.get(r, j) * &inv;
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i != r && !a.get(i, c).is_zero() {
                    let f = a.get(i, c).clone();
                    for j in 0..a.cols {
                        let v = a.get(i, j) - &(&f * a.get(r, j));
                        a.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> Result<CycNum, NumError> {
        if !self.is_square() {
            return Err(NumError::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = CycNum::one(self.conductor());
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                return Ok(CycNum::zero(self.conductor()));
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inverse()?;
            for i in c + 1..n {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c) * &inv;
                for j in c..n {
                    let v = a.get(i, j) - &(&f * a.get(c, j));
                    a.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix, NumError> {
        if !self.is_square() {
            return Err(NumError::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let m = self.conductor();
        let mut aug = Matrix::zeros(m, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, CycNum::one(m));
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(NumError::DivisionByZero);
        }
        let mut out = Matrix::zeros(m, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[CycNum]) -> Vec<CycNum> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = CycNum::zero(self.conductor());
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// True when every row has exactly one nonzero entry (a monomial matrix).
    pub fn is_monomial(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| self.row(i).iter().filter(|e| !e.is_zero()).count() == 1)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
