//! Dense matrices over a generic scalar, with exact rank routines.

use std::fmt::Display;
use std::ops::{AddAssign, Mul};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Num, One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::SizeMismatch {
                left: cols,
                right: bad.len(),
            });
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Rows of decimal strings, the wire form of exact matrices.
    pub fn to_string_rows(&self) -> Vec<Vec<String>>
    where
        T: Display,
    {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect()
    }
}

impl<T: Clone + Zero + FromStr> Matrix<T> {
    pub fn from_string_rows(rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        s.parse::<T>()
                            .map_err(|_| Error::Parse(format!("bad matrix entry {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(parsed)
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + AddAssign,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = &self[(i, t)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(t, j)];
                }
            }
        }
        Ok(out)
    }
}

/// Rank over the fraction field of an integral domain, by fraction-free
/// (Bareiss) elimination. Every division is exact, so intermediate entries
/// stay in `T`.
pub fn rank_fraction_free<T>(m: &Matrix<T>) -> usize
where
    T: Integer + Clone,
{
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.data.clone();
    let mut prev = T::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
        }
        let pivot = a[rank * cols + c].clone();
        for i in rank + 1..rows {
            let lead = a[i * cols + c].clone();
            for j in c + 1..cols {
                let v = a[i * cols + j].clone() * pivot.clone()
                    - lead.clone() * a[rank * cols + j].clone();
                debug_assert!(v.is_multiple_of(&prev));
                a[i * cols + j] = v / prev.clone();
            }
            a[i * cols + c] = T::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Rank over a field by ordinary Gaussian elimination. Exact for exact
/// fields such as `BigRational`.
pub fn rank_over_field<T>(m: &Matrix<T>) -> usize
where
    T: Num + Clone,
{
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.data.clone();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        for j in 0..cols {
            a.swap(p * cols + j, rank * cols + j);
        }
        let pivot = a[rank * cols + c].clone();
        for i in rank + 1..rows {
            let factor = a[i * cols + c].clone() / pivot.clone();
            if factor.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = a[i * cols + j].clone() - factor.clone() * a[rank * cols + j].clone();
                a[i * cols + j] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// `base^exp` for any scalar with a multiplicative identity.
pub(crate) fn power<T: Clone + One>(base: &T, exp: usize) -> T {
    num_traits::pow(base.clone(), exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn big(rows: Vec<Vec<i64>>) -> Matrix<BigInt> {
        Matrix::from_rows(rows)
            .unwrap()
            .map(|&v| BigInt::from(v))
    }

    /// Cofactor expansion, used only as an oracle.
    fn det_cofactor(m: &[Vec<i64>]) -> i64 {
        if m.len() == 1 {
            return m[0][0];
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det_cofactor(&minor)
            })
            .sum()
    }

    #[test]
    fn rank_examples() {
        let g = vec![vec![4, 2, 2], vec![2, 4, 2], vec![2, 2, 4]];
        assert_eq!(det_cofactor(&g), 32);
        assert_eq!(rank_fraction_free(&big(g)), 3);
        assert_eq!(rank_fraction_free(&big(vec![vec![1; 3]; 3])), 1);
        assert_eq!(rank_fraction_free(&Matrix::<BigInt>::zeros(3, 4)), 0);
        assert_eq!(rank_fraction_free(&Matrix::<BigInt>::zeros(0, 0)), 0);
    }

    #[test]
    fn rank_with_zero_columns_and_swaps() {
        let m = vec![
            vec![0, 0, 1, 2],
            vec![0, 0, 2, 4],
            vec![0, 3, 0, 1],
            vec![0, 6, 1, 4],
        ];
        assert_eq!(rank_fraction_free(&big(m.clone())), 2);
        let r = Matrix::from_rows(m).unwrap().map(|&v| BigRational::from_integer(v.into()));
        assert_eq!(rank_over_field(&r), 2);
        let small = Matrix::from_rows(vec![vec![2i64, 4], vec![1, 2]]).unwrap();
        assert_eq!(rank_fraction_free(&small), 1);
    }

    #[test]
    fn multiply_and_transpose() {
        let a = big(vec![vec![1, 2], vec![3, 4]]);
        let b = big(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), big(vec![vec![2, 1], vec![4, 3]]));
        assert_eq!(a.transpose(), big(vec![vec![1, 3], vec![2, 4]]));
        assert!(a.mul(&big(vec![vec![1, 2, 3]])).is_err());
    }

    #[test]
    fn string_rows_round_trip() {
        let a = big(vec![vec![123456789012345, -2], vec![0, 7]]);
        let back = Matrix::<BigInt>::from_string_rows(&a.to_string_rows()).unwrap();
        assert_eq!(a, back);
        assert!(Matrix::<BigInt>::from_string_rows(&[vec!["x".into()]]).is_err());
    }
}
