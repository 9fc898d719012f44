use std::fmt;

use serde::Serialize;

use crate::comm::{CommPresentation, KrullDim};
use crate::error::{Error, Result};
use crate::field::{BaseField, Scalar};
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial};

/// A finite-dimensional unital algebra: `e_i e_j = Σ_k m^k_{ij} e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FinDimAlgebra {
    dim: usize,
    field: BaseField,
    m: Vec<Scalar>,
    unit: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AlgebraViolation {
    Associativity { i: usize, j: usize, k: usize },
    LeftUnit { i: usize },
    RightUnit { i: usize },
}

impl fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraViolation::Associativity { i, j, k } => write!(f, "(e{i} e{j}) e{k} != e{i} (e{j} e{k})"),
            AlgebraViolation::LeftUnit { i } => write!(f, "1 * e{i} != e{i}"),
            AlgebraViolation::RightUnit { i } => write!(f, "e{i} * 1 != e{i}"),
        }
    }
}

impl FinDimAlgebra {
    /// Builds and validates the algebra from nonzero constants `(i, j, k, m^k_{ij})`.
    pub fn new(dim: usize, field: BaseField, constants: &[(usize, usize, usize, Scalar)], unit: Vec<Scalar>) -> Result<Self> {
        let a = Self::unchecked(dim, field, constants, unit)?;
        match a.first_violation() {
            None => Ok(a),
            Some(v) => Err(Error::Invalid(format!("not a unital associative algebra: {v}"))),
        }
    }

    /// Builds without the associativity and unit checks; see [`Self::first_violation`].
    pub fn unchecked(dim: usize, field: BaseField, constants: &[(usize, usize, usize, Scalar)], unit: Vec<Scalar>) -> Result<Self> {
        if unit.len() != dim {
            return Err(Error::Input(format!("unit vector has {} coordinates, expected {dim}", unit.len())));
        }
        let mut m = vec![field.zero(); dim * dim * dim];
        for (i, j, k, v) in constants {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::Input(format!("structure constant index ({i}, {j}, {k}) out of range")));
            }
            let slot = &mut m[(i * dim + j) * dim + k];
            *slot = &*slot + v;
        }
        Ok(FinDimAlgebra { dim, field, m, unit })
    }

    /// The base field as a one-dimensional algebra.
    pub fn ground(field: BaseField) -> Self {
        Self::new(1, field, &[(0, 0, 0, field.one())], vec![field.one()]).expect("valid")
    }

    /// `k^r` with orthogonal idempotents `e_i`.
    pub fn product_of_fields(r: usize, field: BaseField) -> Self {
        let c: Vec<_> = (0..r).map(|i| (i, i, i, field.one())).collect();
        Self::new(r, field, &c, vec![field.one(); r]).expect("valid")
    }

    /// `k[x]/(x^n)` on the basis `1, x, ..., x^{n-1}`.
    pub fn truncated_polynomial(n: usize, field: BaseField) -> Self {
        let mut c = Vec::new();
        for i in 0..n {
            for j in 0..n - i {
                c.push((i, j, i + j, field.one()));
            }
        }
        let mut unit = vec![field.zero(); n];
        unit[0] = field.one();
        Self::new(n, field, &c, unit).expect("valid")
    }

    /// `M_n(k)` on matrix units `E_{ab}`, index `a·n + b`.
    pub fn matrix_algebra(n: usize, field: BaseField) -> Self {
        let mut c = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for e in 0..n {
                    c.push((a * n + b, b * n + e, a * n + e, field.one()));
                }
            }
        }
        let mut unit = vec![field.zero(); n * n];
        for a in 0..n {
            unit[a * n + a] = field.one();
        }
        Self::new(n * n, field, &c, unit).expect("valid")
    }

    /// `k[x]/I` as a vector space on its standard monomials, when that is finite.
    pub fn from_comm_presentation(a: &CommPresentation) -> Result<Self> {
        match a.krull_dimension() {
            KrullDim::Dim(0) => {}
            KrullDim::ZeroRing => return Ok(Self::zero(a.field())),
            KrullDim::Dim(_) => return Err(Error::Input("algebra is not finite-dimensional".into())),
        }
        let ring = a.ring();
        let basis = standard_monomials(&a.ideal().leading_monomials(), ring.nvars());
        let dim = basis.len();
        let field = a.field();
        let coords = |p: &Polynomial| -> Vec<Scalar> {
            let mut v = vec![field.zero(); dim];
            for (mono, c) in p.terms() {
                let k = basis.iter().position(|b| b == mono).expect("normal forms live on standard monomials");
                v[k] = c.clone();
            }
            v
        };
        let mut c = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let prod = Polynomial::term(ring, basis[i].mul(&basis[j]), field.one());
                for (k, v) in coords(&a.normal_form(&prod)?).into_iter().enumerate() {
                    if !v.is_zero() {
                        c.push((i, j, k, v));
                    }
                }
            }
        }
        let unit = coords(&a.normal_form(&Polynomial::one(ring))?);
        Self::new(dim, field, &c, unit)
    }

    /// The zero algebra (where `1 = 0`).
    pub fn zero(field: BaseField) -> Self {
        FinDimAlgebra { dim: 0, field, m: Vec::new(), unit: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.m[(i * self.dim + j) * self.dim + k]
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn nonzero_constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let d = self.dim;
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = self.constant(i, j, k);
                    if !v.is_zero() {
                        out.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim;
        let mut out = vec![self.field.zero(); d];
        for i in 0..d {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if v[j].is_zero() {
                    continue;
                }
                let uv = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o = &*o + &(&uv * c);
                    }
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| self.constant(i, j, k) == self.constant(j, i, k))))
    }

    pub fn first_violation(&self) -> Option<AlgebraViolation> {
        let d = self.dim;
        for i in 0..d {
            let ei = self.basis_vector(i);
            if self.mul(&self.unit, &ei) != ei {
                return Some(AlgebraViolation::LeftUnit { i });
            }
            if self.mul(&ei, &self.unit) != ei {
                return Some(AlgebraViolation::RightUnit { i });
            }
        }
        for i in 0..d {
            for j in 0..d {
                let eij = self.mul(&self.basis_vector(i), &self.basis_vector(j));
                for k in 0..d {
                    let ek = self.basis_vector(k);
                    let left = self.mul(&eij, &ek);
                    let right = self.mul(&self.basis_vector(i), &self.mul(&self.basis_vector(j), &ek));
                    if left != right {
                        return Some(AlgebraViolation::Associativity { i, j, k });
                    }
                }
            }
        }
        None
    }

    /// Matrix of `x ↦ e_i x`.
    pub fn left_multiplication(&self, i: usize) -> Matrix {
        let d = self.dim;
        let mut m = Matrix::zeros(d, d, self.field);
        for j in 0..d {
            for k in 0..d {
                m.set(k, j, self.constant(i, j, k).clone());
            }
        }
        m
    }

    /// Matrix of `x ↦ x e_i`.
    pub fn right_multiplication(&self, i: usize) -> Matrix {
        let d = self.dim;
        let mut m = Matrix::zeros(d, d, self.field);
        for j in 0..d {
            for k in 0..d {
                m.set(k, j, self.constant(j, i, k).clone());
            }
        }
        m
    }

    /// Dimension of the center, from the linear system `z e_j = e_j z`.
    pub fn center_dim(&self) -> usize {
        let d = self.dim;
        let mut sys = Matrix::zeros(d * d, d, self.field);
        for j in 0..d {
            for k in 0..d {
                for i in 0..d {
                    sys.set(j * d + k, i, self.constant(i, j, k) - self.constant(j, i, k));
                }
            }
        }
        sys.nullity()
    }
}

/// Monomials outside the monomial ideal spanned by `leads`, for a zero-dimensional ideal.
pub(crate) fn standard_monomials(leads: &[&Monomial], n: usize) -> Vec<Monomial> {
    let divisible = |m: &Monomial| leads.iter().any(|l| l.divides(m));
    let mut out = Vec::new();
    let mut frontier = vec![Monomial::one(n)];
    while let Some(m) = frontier.pop() {
        if divisible(&m) || out.contains(&m) {
            continue;
        }
        for i in 0..n {
            frontier.push(m.mul(&Monomial::var(n, i)));
        }
        out.push(m);
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.exps().cmp(a.exps())));
    out
}

/// An `A`-bimodule by left and right action matrices of the basis of `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bimodule {
    dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(a: &FinDimAlgebra, dim: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Self> {
        if left.len() != a.dim() || right.len() != a.dim() {
            return Err(Error::Input(format!("bimodule needs {} left and right action matrices", a.dim())));
        }
        if left.iter().chain(&right).any(|m| m.rows() != dim || m.cols() != dim || m.field() != a.field()) {
            return Err(Error::Input(format!("action matrices must be {dim}x{dim} over the base field")));
        }
        let b = Bimodule { dim, left, right };
        if let Some(why) = b.first_violation(a) {
            return Err(Error::Invalid(format!("not a bimodule: {why}")));
        }
        Ok(b)
    }

    /// `A` acting on itself by multiplication on both sides.
    pub fn regular(a: &FinDimAlgebra) -> Self {
        let d = a.dim();
        Bimodule {
            dim: d,
            left: (0..d).map(|i| a.left_multiplication(i)).collect(),
            right: (0..d).map(|i| a.right_multiplication(i)).collect(),
        }
    }

    /// `Hom_k(A, k)` with `(a·φ)(x) = φ(x a)` and `(φ·b)(x) = φ(b x)`.
    pub fn dual(a: &FinDimAlgebra) -> Self {
        let d = a.dim();
        Bimodule {
            dim: d,
            left: (0..d).map(|i| a.right_multiplication(i).transpose()).collect(),
            right: (0..d).map(|i| a.left_multiplication(i).transpose()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left(&self) -> &[Matrix] {
        &self.left
    }

    pub fn right(&self) -> &[Matrix] {
        &self.right
    }

    fn action_of(&self, mats: &[Matrix], v: &[Scalar], field: BaseField) -> Matrix {
        let mut out = Matrix::zeros(self.dim, self.dim, field);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&mats[i].scale(c));
            }
        }
        out
    }

    pub fn first_violation(&self, a: &FinDimAlgebra) -> Option<String> {
        let d = a.dim();
        let f = a.field();
        let id = Matrix::identity(self.dim, f);
        if self.action_of(&self.left, a.unit(), f) != id || self.action_of(&self.right, a.unit(), f) != id {
            return Some("the unit does not act as the identity".into());
        }
        for i in 0..d {
            for j in 0..d {
                let prod = a.mul(&a.basis_vector(i), &a.basis_vector(j));
                if self.action_of(&self.left, &prod, f) != self.left[i].mul(&self.left[j]) {
                    return Some(format!("left action is not multiplicative at ({i}, {j})"));
                }
                if self.action_of(&self.right, &prod, f) != self.right[j].mul(&self.right[i]) {
                    return Some(format!("right action is not multiplicative at ({i}, {j})"));
                }
                if self.left[i].mul(&self.right[j]) != self.right[j].mul(&self.left[i]) {
                    return Some(format!("left and right actions do not commute at ({i}, {j})"));
                }
            }
        }
        None
    }
}
