use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};
use crate::field::{BaseField, Scalar};

/// A polynomial ring `k[x_0, ..., x_{n-1}]` together with the active monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    order: MonomialOrder,
    field: BaseField,
}

impl PolyRing {
    pub fn new(vars: Vec<String>, order: MonomialOrder, field: BaseField) -> Result<Arc<Self>> {
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::Input(format!("invalid variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Input(format!("duplicate variable name {v:?}")));
            }
        }
        Ok(Arc::new(PolyRing { vars, order, field }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<PolyRing> {
        Arc::new(PolyRing { order, ..self.clone() })
    }

    /// A variable name not yet used in the ring, derived from `stem`.
    pub fn fresh_name(&self, stem: &str) -> String {
        fresh_name(&self.vars, stem)
    }
}

pub(crate) fn fresh_name(taken: &[String], stem: &str) -> String {
    if !taken.iter().any(|v| v == stem) {
        return stem.to_string();
    }
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|c| !taken.iter().any(|v| v == c))
        .expect("infinitely many candidates")
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A sparse polynomial with exact coefficients.
///
/// Terms are stored in increasing monomial order (leading term last) and never
/// carry a zero coefficient.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Scalar)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.vars == other.ring.vars && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Scalar) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn from_i64(ring: &Arc<PolyRing>, v: i64) -> Self {
        Self::constant(ring, ring.field.from_i64(v))
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i), ring.field.one())
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: Scalar) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order;
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Terms already sorted in decreasing order with distinct monomials and nonzero coefficients.
    pub(crate) fn from_desc_terms(ring: &Arc<PolyRing>, mut terms: Vec<(Monomial, Scalar)>) -> Self {
        terms.reverse();
        Polynomial { ring: ring.clone(), terms }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Scalar)> {
        self.terms.pop()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> BaseField {
        self.ring.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant coefficient when the polynomial is a nonzero constant.
    pub fn as_nonzero_constant(&self) -> Option<&Scalar> {
        match self.terms.as_slice() {
            [(m, c)] if m.is_one() => Some(c),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.last()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.last().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.last().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.iter().find(|(n, _)| n == m).map(|t| &t.1)
    }

    /// Variables occurring in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for i in m.support() {
                used[i] = true;
            }
        }
        used.iter().enumerate().filter(|(_, u)| **u).map(|(i, _)| i).collect()
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(
            self.ring.vars == other.ring.vars && self.ring.field == other.ring.field,
            "polynomials from different rings"
        );
    }

    /// `self + c * m * other`, the workhorse of reduction.
    pub fn add_scaled(&self, c: &Scalar, m: &Monomial, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(n, d)| (n.mul(m), c * d)).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Less => out.push(a.next().unwrap().clone()),
                Ordering::Greater => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (m1, c1) = a.next().unwrap();
                    let (_, c2) = b.next().unwrap();
                    let s = c1 + &c2;
                    if !s.is_zero() {
                        out.push((m1.clone(), s));
                    }
                }
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.add_scaled(&self.field().one(), &Monomial::one(self.ring.nvars()), other)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add_scaled(&-self.field().one(), &Monomial::one(self.ring.nvars()), other)
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-self.field().one())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), c * d)).collect(),
        }
    }

    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        // multiplication by a monomial preserves the order of terms
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, d)| (n.mul(m), c * d)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.add_scaled(c, m, big);
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Scales to leading coefficient one; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(c) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let f = self.field();
        Polynomial::from_terms(
            &self.ring,
            self.terms.iter().filter(|(m, _)| m.exps()[i] > 0).map(|(m, c)| {
                let mut e = m.exps().to_vec();
                let k = e[i];
                e[i] -= 1;
                (Monomial::new(e), c * &f.from_i64(k as i64))
            }),
        )
    }

    /// Substitutes a polynomial (in `target`) for every variable.
    pub fn substitute(&self, images: &[Polynomial], target: &Arc<PolyRing>) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, e) in m.exps().iter().enumerate() {
                if *e > 0 {
                    t = t.mul(&images[i].pow(*e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Moves the polynomial into another ring; `map[i]` is the new index of variable `i`.
    pub fn remap(&self, map: &[usize], target: &Arc<PolyRing>) -> Polynomial {
        Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| (m.remap(map, target.nvars()), c.clone())),
        )
    }

    /// Same variables, different monomial order.
    pub fn with_ring(&self, target: &Arc<PolyRing>) -> Polynomial {
        assert_eq!(self.ring.vars, target.vars, "ring change must keep the variables");
        let mut terms = self.terms.clone();
        let order = target.order;
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Polynomial { ring: target.clone(), terms }
    }

    /// Exact division by `d`; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = d.leading_term()?;
        let inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading_term() {
            let q = lm.quotient_of(m)?;
            let coef = c * &inv;
            rem = rem.add_scaled(&-&coef, &q, d);
            quot.push((q, coef));
        }
        Some(Polynomial::from_terms(&self.ring, quot))
    }

    pub fn display_with(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| if *e == 1 { vars[i].clone() } else { format!("{}^{}", vars[i], e) })
                .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&self.ring.vars))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grevlex,
            BaseField::Rational,
        )
        .unwrap()
    }

    #[test]
    fn arithmetic_and_display() {
        let r = ring(&["x", "y"]);
        let p = parse_poly("(x + y)^2 - 2*x*y", &r).unwrap();
        assert_eq!(p.to_string(), "x^2 + y^2");
        let q = parse_poly("x - y", &r).unwrap();
        assert_eq!(p.mul(&q).sub(&p.mul(&q)), Polynomial::zero(&r));
        assert_eq!(parse_poly("-x/2 + 3", &r).unwrap().to_string(), "-1/2*x + 3");
    }

    #[test]
    fn derivative_and_division() {
        let r = ring(&["x", "y"]);
        let p = parse_poly("x^3*y - 2*x + 5", &r).unwrap();
        assert_eq!(p.derivative(0).to_string(), "3*x^2*y - 2");
        let a = parse_poly("x*y - x", &r).unwrap();
        let b = parse_poly("y - 1", &r).unwrap();
        assert_eq!(a.exact_div(&b).unwrap().to_string(), "x");
        assert!(b.exact_div(&a).is_none());
    }

    #[test]
    fn substitution() {
        let r = ring(&["x", "y"]);
        let p = parse_poly("x^2 + y", &r).unwrap();
        let one = Polynomial::one(&r);
        let y = Polynomial::var(&r, 1);
        assert_eq!(p.substitute(&[one, y.clone()], &r), parse_poly("1 + y", &r).unwrap());
    }
}
