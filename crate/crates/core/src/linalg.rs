//! Dense matrices over the base field with exact rank computation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::{BaseField, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: BaseField,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: BaseField) -> Self {
        Matrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(n: usize, field: BaseField) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, field: BaseField) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, field, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let i = r * self.cols + c;
        self.data[i] = &self.data[i] + v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Matrix product, skipping zero entries of the left factor.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { data: self.data.iter().map(|v| c * v).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(), ..self.clone() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&-self.field.one()))
    }

    /// Exact rank: fraction-free Bareiss elimination over Q, plain elimination over F_p.
    pub fn rank(&self) -> usize {
        match self.field {
            BaseField::Rational => self.rank_bareiss(),
            BaseField::Prime { p } => self.rank_mod(p as u64),
        }
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    fn rank_bareiss(&self) -> usize {
        // clear denominators row by row; rank is unchanged
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row.iter().fold(BigInt::one(), |acc, v| {
                    acc.lcm(v.as_rational().expect("rational matrix").denom())
                });
                row.iter()
                    .map(|v| {
                        let q = v.as_rational().expect("rational matrix");
                        q.numer() * (&lcm / q.denom())
                    })
                    .collect()
            })
            .filter(|row: &Vec<BigInt>| row.iter().any(|v| !v.is_zero()))
            .collect();
        let (rows, cols) = (a.len(), self.cols);
        let mut prev = BigInt::one();
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(rank, p);
            let (top, rest) = a.split_at_mut(rank + 1);
            let pivot_row = &top[rank];
            let pivot = pivot_row[c].clone();
            for row in rest.iter_mut() {
                let factor = row[c].clone();
                for j in c + 1..cols {
                    let v = &pivot * &row[j] - &factor * &pivot_row[j];
                    row[j] = if v.is_zero() { v } else { v / &prev };
                }
                row[c] = BigInt::zero();
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }

    fn rank_mod(&self, p: u64) -> usize {
        let mut a: Vec<Vec<u64>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(|v| v.residue().expect("prime field matrix") as u64).collect())
            .collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
            a.swap(rank, piv);
            let inv = inv_mod(a[rank][c], p);
            for j in c..cols {
                a[rank][j] = a[rank][j] * inv % p;
            }
            let (top, rest) = a.split_at_mut(rank + 1);
            let pr = &top[rank];
            for row in rest.iter_mut() {
                let f = row[c];
                if f == 0 {
                    continue;
                }
                for j in c..cols {
                    row[j] = (row[j] + p - f * pr[j] % p) % p;
                }
            }
            rank += 1;
        }
        rank
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut result, mut base, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}
