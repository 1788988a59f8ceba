use std::fmt;

use crate::error::{Error, Result};

/// Row-major matrix of degrees in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DegreeMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("matrix must be non-empty, got {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        for (k, &v) in data.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidDegree {
                    location: format!("row {}, column {}", k / cols + 1, k % cols + 1),
                    value: v,
                });
            }
        }
        let data = data.into_iter().map(|v| v + 0.0).collect();
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != m) {
            return Err(Error::Dimension(format!(
                "row {} has {} entries, expected {m}",
                bad + 1,
                rows[bad].len()
            )));
        }
        Self::new(n, m, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self { rows: n, cols: n, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Max-min product: `(A ∘ B)[i][j] = max_k min(A[i][k], B[k][j])`.
    pub fn compose(&self, other: &DegreeMatrix) -> Result<DegreeMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = DegreeMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let v = (0..self.cols)
                    .map(|k| self.get(i, k).min(other.get(k, j)))
                    .fold(0.0, f64::max);
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    /// Row vector times matrix under max-min.
    pub fn compose_row(row: &[f64], m: &DegreeMatrix) -> Vec<f64> {
        (0..m.cols)
            .map(|j| row.iter().enumerate().map(|(k, &r)| r.min(m.get(k, j))).fold(0.0, f64::max))
            .collect()
    }

    /// Entry-wise max.
    pub fn join(&self, other: &DegreeMatrix) -> Result<DegreeMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension("join of differently shaped matrices".into()));
        }
        Ok(DegreeMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.max(*b)).collect(),
        })
    }

    /// Entry-wise min with a scalar.
    pub fn cap(&self, level: f64) -> DegreeMatrix {
        DegreeMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.min(level)).collect(),
        }
    }
}

pub fn maxmin_compose(a: &DegreeMatrix, b: &DegreeMatrix) -> Result<DegreeMatrix> {
    a.compose(b)
}

impl fmt::Display for DegreeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v:.6}")).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
