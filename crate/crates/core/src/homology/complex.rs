use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::BaseField;
use crate::linalg::Matrix;

/// A truncated cochain complex `C^0 -> C^1 -> ... -> C^N` of finite-dimensional
/// vector spaces, stored as the matrices of `d^n: C^n -> C^{n+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CochainComplex {
    field: BaseField,
    dims: Vec<usize>,
    differentials: Vec<Matrix>,
}

impl CochainComplex {
    pub fn new(field: BaseField, dims: Vec<usize>, differentials: Vec<Matrix>) -> Result<Self> {
        if dims.is_empty() || differentials.len() + 1 != dims.len() {
            return Err(Error::Invalid(format!(
                "{} differentials for {} cochain spaces",
                differentials.len(),
                dims.len()
            )));
        }
        for (n, d) in differentials.iter().enumerate() {
            if d.rows() != dims[n + 1] || d.cols() != dims[n] {
                return Err(Error::Invalid(format!(
                    "d^{n} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[n + 1],
                    dims[n]
                )));
            }
        }
        Ok(CochainComplex { field, dims, differentials })
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    /// Dimensions of `C^0, ..., C^N`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }

    /// First `n` with `d^{n+1} d^n != 0`, if any.
    pub fn first_nonzero_square(&self) -> Option<usize> {
        self.differentials
            .windows(2)
            .position(|w| !w[1].mul(&w[0]).is_zero())
    }

    pub fn check_square_zero(&self) -> Result<()> {
        match self.first_nonzero_square() {
            None => Ok(()),
            Some(n) => Err(Error::Invalid(format!("d^{} d^{n} is nonzero", n + 1))),
        }
    }

    /// Ranks of all differentials, computed independently per degree.
    pub fn ranks(&self) -> Vec<usize> {
        self.differentials.par_iter().map(Matrix::rank).collect()
    }

    /// `dim H^n` for `n = 0..N-1`; the top space has no outgoing map recorded,
    /// so its cohomology is not reported.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..self.differentials.len())
            .map(|n| {
                let incoming = if n == 0 { 0 } else { ranks[n - 1] };
                self.dims[n] - ranks[n] - incoming
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_mismatch_is_rejected() {
        let f = BaseField::Rational;
        assert!(CochainComplex::new(f, vec![1, 2], vec![Matrix::zeros(1, 2, f)]).is_err());
        assert!(CochainComplex::new(f, vec![1, 2], vec![]).is_err());
    }

    #[test]
    fn interval_is_acyclic() {
        let f = BaseField::Rational;
        let d0 = Matrix::from_rows(vec![vec![f.one()]], f);
        let d1 = Matrix::zeros(0, 1, f);
        let c = CochainComplex::new(f, vec![1, 1, 0], vec![d0, d1]).unwrap();
        c.check_square_zero().unwrap();
        assert_eq!(c.cohomology_dims(), vec![0, 0]);
    }
}
