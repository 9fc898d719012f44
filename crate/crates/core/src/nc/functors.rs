//! Unitization, abelianization and standardization of presentations.
//!
//! The base ring is always a field here, so restriction to the center of the
//! base is the identity and standardization is abelianization after
//! unitization.

use std::sync::Arc;

use super::poly::{NcPolynomial, Word};
use super::presentation::NcPresentation;
use crate::comm::CommPresentation;
use crate::error::{Error, Result};
use crate::poly::{fresh_name, Monomial, MonomialOrder, PolyRing, Polynomial};

/// Adjoins a unit.
///
/// A nonunital presentation simply gains the empty word as its unit. A unital
/// presentation `A` becomes the product model `A × k`: a fresh idempotent `e`
/// stands for `(1_A, 0)`, is a two-sided identity on the old generators, and
/// replaces the constants of the old relations, while the empty word is the new
/// unit `(1_A, 1)`.
pub fn unitize(a: &NcPresentation) -> NcPresentation {
    let field = a.field();
    if !a.is_unital() {
        return NcPresentation::new(a.generators().to_vec(), a.relations().to_vec(), true, field)
            .expect("same data, weaker constraint");
    }
    let n = a.generators().len() as u32;
    let mut names = a.generators().to_vec();
    names.push(fresh_name(&names, "e"));
    let e = NcPolynomial::letter(field, n);
    let mut rels = vec![e.mul(&e).sub(&e)];
    for i in 0..n {
        let x = NcPolynomial::letter(field, i);
        rels.push(e.mul(&x).sub(&x));
        rels.push(x.mul(&e).sub(&x));
    }
    for r in a.relations() {
        rels.push(constants_to_idempotent(r, n));
    }
    NcPresentation::new(names, rels, true, field)
        .expect("well-formed product model")
        .with_product_unit(n as usize)
}

fn constants_to_idempotent(r: &NcPolynomial, e: u32) -> NcPolynomial {
    NcPolynomial::from_terms(
        r.field(),
        r.terms().map(|(w, c)| (if w.is_empty() { Word::letter(e) } else { w.clone() }, c.clone())),
    )
}

fn commutative_ring(names: &[String], a: &NcPresentation) -> Result<Arc<PolyRing>> {
    PolyRing::new(names.to_vec(), MonomialOrder::Grevlex, a.field())
}

/// The commutative image of a word combination.
pub fn commutative_image(p: &NcPolynomial, ring: &Arc<PolyRing>) -> Polynomial {
    let n = ring.nvars();
    Polynomial::from_terms(
        ring,
        p.terms().map(|(w, c)| {
            let mut exps = vec![0u32; n];
            for &l in &w.0 {
                exps[l as usize] += 1;
            }
            (Monomial::new(exps), c.clone())
        }),
    )
}

/// Quotient of a unital presentation by its commutators.
pub fn abelianize(a: &NcPresentation) -> Result<CommPresentation> {
    if !a.is_unital() {
        return Err(Error::Input("abelianization expects a unital presentation; unitize first".into()));
    }
    let ring = commutative_ring(a.generators(), a)?;
    let rels = a.relations().iter().map(|r| commutative_image(r, &ring)).collect();
    CommPresentation::new(&ring, rels)
}

/// The standardization `A^ς` together with the product-model idempotent, if any.
#[derive(Clone, Debug)]
pub struct Standardization {
    pub presentation: CommPresentation,
    /// Variable index of the idempotent `e` when `A` was unital.
    pub idempotent: Option<usize>,
}

/// One factor of a split standardization.
#[derive(Clone, Debug)]
pub struct Factor {
    /// `"abelianization"` for the `e = 1` part, `"unit"` for the `e = 0` part,
    /// `"whole"` when there was nothing to split.
    pub label: &'static str,
    pub presentation: CommPresentation,
}

impl Standardization {
    /// Splits the product model `A^{ab} × k` along its central idempotent.
    pub fn factors(&self) -> Result<Vec<Factor>> {
        let Some(e) = self.idempotent else {
            return Ok(vec![Factor { label: "whole", presentation: self.presentation.clone() }]);
        };
        let p = &self.presentation;
        let names: Vec<String> = p.vars().iter().enumerate().filter(|(i, _)| *i != e).map(|(_, v)| v.clone()).collect();
        let ring = PolyRing::new(names, p.ring().order(), p.field())?;
        let specialize = |value: i64| -> Result<CommPresentation> {
            let mut images = Vec::with_capacity(p.vars().len());
            let mut k = 0;
            for i in 0..p.vars().len() {
                if i == e {
                    images.push(Polynomial::from_i64(&ring, value));
                } else {
                    images.push(Polynomial::var(&ring, k));
                    k += 1;
                }
            }
            let rels = p.relations().iter().map(|r| r.substitute(&images, &ring)).collect();
            CommPresentation::new(&ring, rels)
        };
        Ok(vec![
            Factor { label: "abelianization", presentation: specialize(1)? },
            Factor { label: "unit", presentation: specialize(0)? },
        ])
    }

    /// Image in `A^ς` of an element of `A`: letters commute, and in the
    /// product model constants of `A` become multiples of the idempotent.
    pub fn element(&self, p: &NcPolynomial) -> Polynomial {
        let ring = self.presentation.ring();
        let p = match self.idempotent {
            Some(e) => constants_to_idempotent(p, e as u32),
            None => p.clone(),
        };
        commutative_image(&p, ring)
    }
}

/// A commutative presentation read as a unital noncommutative one: relations
/// are written with sorted words and every pair of generators gets a commutator.
pub fn commutative_as_nc(c: &CommPresentation) -> Result<NcPresentation> {
    let field = c.field();
    let n = c.vars().len();
    let mut rels: Vec<NcPolynomial> = c
        .relations()
        .iter()
        .map(|r| {
            NcPolynomial::from_terms(
                field,
                r.terms().iter().map(|(m, k)| {
                    let w: Vec<u32> = m.exps().iter().enumerate().flat_map(|(i, &e)| std::iter::repeat(i as u32).take(e as usize)).collect();
                    (Word(w), k.clone())
                }),
            )
        })
        .collect();
    for j in 0..n as u32 {
        for i in 0..j {
            rels.push(NcPolynomial::word(field, &[j, i]).sub(&NcPolynomial::word(field, &[i, j])));
        }
    }
    NcPresentation::new(c.vars().to_vec(), rels, true, field)
}

/// `A^ς = (A_1)^{ab}`.
pub fn standardize(a: &NcPresentation) -> Result<Standardization> {
    let unital = unitize(a);
    let idempotent = unital.product_unit();
    Ok(Standardization { presentation: abelianize(&unital)?, idempotent })
}

/// The standardization written down in one step, without the intermediate
/// noncommutative unitization.
pub fn standardize_direct(a: &NcPresentation) -> Result<Standardization> {
    if !a.is_unital() {
        let ring = commutative_ring(a.generators(), a)?;
        let rels = a.relations().iter().map(|r| commutative_image(r, &ring)).collect();
        return Ok(Standardization { presentation: CommPresentation::new(&ring, rels)?, idempotent: None });
    }
    let n = a.generators().len();
    let mut names = a.generators().to_vec();
    names.push(fresh_name(&names, "e"));
    let ring = commutative_ring(&names, a)?;
    let e = Polynomial::var(&ring, n);
    let mut rels = vec![e.mul(&e).sub(&e)];
    for i in 0..n {
        rels.push(e.mul(&Polynomial::var(&ring, i)).sub(&Polynomial::var(&ring, i)));
    }
    for r in a.relations() {
        rels.push(commutative_image(&constants_to_idempotent(r, n as u32), &ring));
    }
    Ok(Standardization { presentation: CommPresentation::new(&ring, rels)?, idempotent: Some(n) })
}
