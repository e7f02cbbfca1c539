//! Dense square tables of rationals, used for finite windows of
//! Riordan arrays, sumrays and Toeplitz lifts.

use std::fmt;

use num::Zero;

use crate::series::{rat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: Vec<Vec<Rat>>,
}

impl Matrix {
    pub fn zeros(m: usize) -> Matrix {
        Matrix { rows: vec![vec![Rat::zero(); m]; m] }
    }

    pub fn identity(m: usize) -> Matrix {
        Matrix::from_fn(m, |i, j| if i == j { rat(1) } else { Rat::zero() })
    }

    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Matrix {
        Matrix { rows: (0..m).map(|i| (0..m).map(|j| f(i, j)).collect()).collect() }
    }

    /// Lower-triangular table from ragged integer rows; row `i` lists
    /// columns `0..=i` (shorter rows are zero-padded).
    pub fn lower_from_ints(rows: &[&[i64]]) -> Matrix {
        let m = rows.len();
        Matrix::from_fn(m, |i, j| rows[i].get(j).map_or_else(Rat::zero, |&x| rat(x)))
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.rows[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.rows[i]
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r[i + 1..].iter().all(Zero::is_zero))
    }

    /// Top-left `m x m` window.
    pub fn window(&self, m: usize) -> Matrix {
        let m = m.min(self.size());
        Matrix::from_fn(m, |i, j| self.rows[i][j].clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let m = self.size().min(other.size());
        Matrix::from_fn(m, |i, j| {
            let mut s = Rat::zero();
            for k in 0..m {
                let a = &self.rows[i][k];
                let b = &other.rows[k][j];
                if !a.is_zero() && !b.is_zero() {
                    s += a * b;
                }
            }
            s
        })
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let m = self.size().min(other.size());
        Matrix::from_fn(m, |i, j| &self.rows[i][j] + &other.rows[i][j])
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let m = self.size().min(other.size());
        Matrix::from_fn(m, |i, j| &self.rows[i][j] - &other.rows[i][j])
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.size(), |i, j| -&self.rows[i][j])
    }

    /// Matrix-vector product with a column vector (missing entries are zero).
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// First cell where the two tables differ.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        let m = self.size().min(other.size());
        (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).find(|&(i, j)| self.rows[i][j] != other.rows[i][j])
    }

    /// CSV with one line per row and columns `0..=i` on row `i`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (i, r) in self.rows.iter().enumerate() {
            let cells: Vec<String> = r[..=i].iter().map(|x| x.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Parses the lower-triangular text layout produced by `Display`:
    /// whitespace or comma separated rationals, row `i` holding columns
    /// `0..=i`. Blank lines are skipped.
    pub fn parse_text(text: &str) -> Result<Matrix, String> {
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for line in text.lines() {
            let cells: Vec<&str> =
                line.split(|c: char| c.is_whitespace() || c == ',').filter(|c| !c.is_empty()).collect();
            if cells.is_empty() {
                continue;
            }
            let row = cells
                .iter()
                .map(|c| c.parse::<Rat>().map_err(|e| format!("bad entry `{c}`: {e}")))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() > rows.len() + 1 {
                return Err(format!(
                    "row {} has {} entries, expected at most {}",
                    rows.len(),
                    row.len(),
                    rows.len() + 1
                ));
            }
            rows.push(row);
        }
        let m = rows.len();
        Ok(Matrix::from_fn(m, |i, j| rows[i].get(j).cloned().unwrap_or_else(Rat::zero)))
    }
}

impl fmt::Display for Matrix {
    /// Lower-triangular layout with right-aligned columns.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.size();
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r[..=i].iter().map(|x| x.to_string()).collect())
            .collect();
        let widths: Vec<usize> =
            (0..m).map(|j| cells[j..].iter().map(|r| r[j].len()).max().unwrap_or(1)).collect();
        for r in &cells {
            let line: Vec<String> =
                r.iter().enumerate().map(|(j, c)| format!("{c:>w$}", w = widths[j])).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_render() {
        let a = Matrix::lower_from_ints(&[&[1], &[1, 1], &[0, 1, 1], &[0, 0, 1, 1]]);
        let sq = a.mul(&a);
        assert_eq!(sq, Matrix::lower_from_ints(&[&[1], &[2, 1], &[1, 2, 1], &[0, 1, 2, 1]]));
        let text = sq.to_string();
        assert_eq!(text, "1\n2 1\n1 2 1\n0 1 2 1\n");
        assert_eq!(Matrix::parse_text(&text).unwrap(), sq);
        assert!(sq.is_lower_triangular());
        assert_eq!(sq.to_csv().lines().nth(1), Some("2,1"));
    }

    #[test]
    fn parse_rejects_long_rows() {
        assert!(Matrix::parse_text("1 2\n").is_err());
        assert!(Matrix::parse_text("1\nx 1\n").is_err());
    }
}
