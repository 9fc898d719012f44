//! Finitely presented commutative algebras `k[x_1..x_n]/I`.

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::BaseField;
use crate::groebner::Ideal;
use crate::poly::{parse_poly, MonomialOrder, PolyRing, Polynomial};

/// Krull dimension, with the zero ring kept apart from every integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KrullDim {
    ZeroRing,
    Dim(usize),
}

impl KrullDim {
    pub fn at_least(self, n: usize) -> bool {
        matches!(self, KrullDim::Dim(d) if d >= n)
    }

    /// The integer reported on the wire: `-1` marks the zero ring.
    pub fn as_marker(self) -> i64 {
        match self {
            KrullDim::ZeroRing => -1,
            KrullDim::Dim(d) => d as i64,
        }
    }
}

impl fmt::Display for KrullDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KrullDim::ZeroRing => write!(f, "zero ring"),
            KrullDim::Dim(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for KrullDim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.as_marker())
    }
}

/// `k[vars]/I` with the Gröbner basis of `I` cached at construction.
#[derive(Clone, Debug)]
pub struct CommPresentation {
    ideal: Ideal,
}

impl CommPresentation {
    pub fn new(ring: &Arc<PolyRing>, relations: Vec<Polynomial>) -> Result<Self> {
        Ok(CommPresentation { ideal: Ideal::new(ring, relations)? })
    }

    /// Parses relation strings over fresh variables with the grevlex order.
    pub fn parse(vars: &[&str], relations: &[&str], field: BaseField) -> Result<Self> {
        let ring = PolyRing::new(vars.iter().map(|v| v.to_string()).collect(), MonomialOrder::Grevlex, field)?;
        let rels = relations.iter().map(|r| parse_poly(r, &ring)).collect::<Result<Vec<_>>>()?;
        Self::new(&ring, rels)
    }

    pub fn from_ideal(ideal: Ideal) -> Self {
        CommPresentation { ideal }
    }

    /// The polynomial ring on `vars` with no relations.
    pub fn free(vars: &[&str], field: BaseField) -> Result<Self> {
        Self::parse(vars, &[], field)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.ideal.ring()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn relations(&self) -> &[Polynomial] {
        self.ideal.generators()
    }

    pub fn vars(&self) -> &[String] {
        self.ring().vars()
    }

    pub fn field(&self) -> BaseField {
        self.ring().field()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.ideal.is_unit()
    }

    pub fn parse_element(&self, src: &str) -> Result<Polynomial> {
        parse_poly(src, self.ring())
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.ideal.normal_form(p)
    }

    /// Same presentation, Gröbner basis recomputed under `order`.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Self> {
        Ok(CommPresentation { ideal: self.ideal.with_order(order)? })
    }

    /// Adds relations to the presentation.
    pub fn quotient(&self, extra: &[Polynomial]) -> Result<Self> {
        Ok(CommPresentation { ideal: self.ideal.extend(extra)? })
    }

    /// Krull dimension: the size of a largest set of variables that carries no
    /// leading monomial of the basis.
    pub fn krull_dimension(&self) -> KrullDim {
        krull_dimension(&self.ideal)
    }

    /// The Rabinowitsch model `A[t]/(t·f - 1)` of the localization at `f`.
    pub fn localization_model(&self, f: &Polynomial) -> Result<Localization> {
        if self.normal_form(f)?.is_zero() {
            return Err(Error::Input(format!("localizing at zero: {f} vanishes in the algebra")));
        }
        let t_name = self.ring().fresh_name("t");
        let mut vars = self.vars().to_vec();
        vars.push(t_name);
        let n = self.vars().len();
        let ring = PolyRing::new(vars, self.ring().order(), self.field())?;
        let embed: Vec<usize> = (0..n).collect();
        let t = Polynomial::var(&ring, n);
        let f_up = f.remap(&embed, &ring);
        let mut rels: Vec<Polynomial> = self.relations().iter().map(|r| r.remap(&embed, &ring)).collect();
        rels.push(t.mul(&f_up).sub(&Polynomial::one(&ring)));
        Ok(Localization {
            presentation: CommPresentation::new(&ring, rels)?,
            inverse_var: n,
            element: f_up,
        })
    }
}

/// The output of [`CommPresentation::localization_model`].
#[derive(Clone, Debug)]
pub struct Localization {
    pub presentation: CommPresentation,
    /// Index of the adjoined inverse `t`.
    pub inverse_var: usize,
    /// The localized element, moved into the model's ring.
    pub element: Polynomial,
}

impl Localization {
    /// Whether `t·f ≡ 1` in the model.
    pub fn inverse_holds(&self) -> Result<bool> {
        let ring = self.presentation.ring();
        let prod = Polynomial::var(ring, self.inverse_var).mul(&self.element);
        Ok(self.presentation.normal_form(&prod.sub(&Polynomial::one(ring)))?.is_zero())
    }
}

pub fn krull_dimension(ideal: &Ideal) -> KrullDim {
    if ideal.is_unit() {
        return KrullDim::ZeroRing;
    }
    let n = ideal.ring().nvars();
    let supports: Vec<u64> = ideal
        .leading_monomials()
        .iter()
        .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    // a set S is independent iff no leading monomial is supported inside S
    let independent = |s: u64| supports.iter().all(|&m| m & !s != 0);
    let mut best = 0;
    let mut stack: Vec<(usize, u64, usize)> = vec![(0, 0, 0)];
    while let Some((next, set, size)) = stack.pop() {
        best = best.max(size);
        if size + (n - next) <= best {
            continue;
        }
        for v in (next..n).rev() {
            let s = set | (1 << v);
            if independent(s) {
                stack.push((v + 1, s, size + 1));
            }
        }
    }
    KrullDim::Dim(best)
}
