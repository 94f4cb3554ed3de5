use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use super::rational::Rational;
use crate::error::Error;

/// Dense rectangular matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = RatMatrix::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Build from row vectors; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(RatMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
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

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn mul(&self, rhs: &RatMatrix) -> Result<RatMatrix, Error> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, Error> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn add(&self, rhs: &RatMatrix) -> Result<RatMatrix, Error> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &RatMatrix) -> Result<RatMatrix, Error> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &RatMatrix) -> Result<RatMatrix, Error> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    pub fn rank(&self) -> usize {
        rref(self).pivots.len()
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let reduced = rref(&aug);
        if reduced.pivots.len() < n || reduced.pivots[n - 1] >= n {
            return None;
        }
        let mut inv = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = reduced.matrix[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    fn zip_with(
        &self,
        rhs: &RatMatrix,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<RatMatrix, Error> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination to reduced row-echelon form.
///
/// The first nonzero entry of a column is taken as pivot; exact arithmetic
/// makes pivot size irrelevant.
pub fn rref(m: &RatMatrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        if p != row {
            for j in 0..a.cols {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(row, j)].clone();
                a[(row, j)] = tmp;
            }
        }
        let inv = a[(row, col)].recip().expect("nonzero pivot");
        for j in col..a.cols {
            a[(row, j)] = &a[(row, j)] * &inv;
        }
        for r in 0..a.rows {
            if r == row || a[(r, col)].is_zero() {
                continue;
            }
            let factor = a[(r, col)].clone();
            for j in col..a.cols {
                let delta = &factor * &a[(row, j)];
                a[(r, j)] -= delta;
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref { matrix: a, pivots }
}

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LinearSolution {
    /// No solution exists.
    Inconsistent,
    Unique(Vec<Rational>),
    /// `particular + span(null_basis)`, free variables of `particular` set to zero.
    Family {
        particular: Vec<Rational>,
        null_basis: Vec<Vec<Rational>>,
    },
}

/// Solve `A x = b` exactly.
pub fn linear_solve(a: &RatMatrix, b: &[Rational]) -> Result<LinearSolution, Error> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let n = a.cols();
    let mut aug = RatMatrix::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let Rref { matrix, pivots } = rref(&aug);
    if pivots.last() == Some(&n) {
        return Ok(LinearSolution::Inconsistent);
    }
    let mut particular = vec![Rational::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        particular[p] = matrix[(r, n)].clone();
    }
    let null_basis = null_basis_from_rref(&matrix, &pivots, n);
    if null_basis.is_empty() {
        Ok(LinearSolution::Unique(particular))
    } else {
        Ok(LinearSolution::Family {
            particular,
            null_basis,
        })
    }
}

/// Basis of `{x : A x = 0}`.
pub fn null_space(a: &RatMatrix) -> Vec<Vec<Rational>> {
    let Rref { matrix, pivots } = rref(a);
    null_basis_from_rref(&matrix, &pivots, a.cols())
}

fn null_basis_from_rref(matrix: &RatMatrix, pivots: &[usize], n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .filter(|j| !pivots.contains(j))
        .map(|free| {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&matrix[(r, free)];
            }
            v
        })
        .collect()
}

/// Reduced row-echelon basis of the span of `vectors`.
///
/// Two families span the same space iff their reduced bases are equal.
pub fn row_space_basis(vectors: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>, Error> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let m = RatMatrix::from_rows(vectors.to_vec())?;
    let Rref { matrix, pivots } = rref(&m);
    Ok((0..pivots.len()).map(|r| matrix.row(r).to_vec()).collect())
}

/// Whether `v` lies in the span of an already reduced basis.
pub fn in_row_space(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    match RatMatrix::from_rows(rows) {
        Ok(m) => m.rank() == basis.len(),
        Err(_) => false,
    }
}
