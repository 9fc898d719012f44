use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{BaseField, Scalar};
use crate::poly::{parse_in, ExprContext};

/// A word in the generators, compared degree-first and then lexicographically
/// by generator index. The empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(i: u32) -> Word {
        Word(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// First position at which `pattern` occurs as a contiguous subword.
    pub fn find(&self, pattern: &Word) -> Option<usize> {
        if pattern.len() > self.len() {
            return None;
        }
        (0..=self.len() - pattern.len()).find(|&i| self.0[i..i + pattern.len()] == pattern.0[..])
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of the free associative algebra `k<x_0, ..., x_{n-1}>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcPolynomial {
    field: BaseField,
    terms: BTreeMap<Word, Scalar>,
}

impl NcPolynomial {
    pub fn zero(field: BaseField) -> Self {
        NcPolynomial { field, terms: BTreeMap::new() }
    }

    pub fn term(field: BaseField, w: Word, c: Scalar) -> Self {
        let mut p = Self::zero(field);
        if !c.is_zero() {
            p.terms.insert(w, c);
        }
        p
    }

    pub fn constant(field: BaseField, c: Scalar) -> Self {
        Self::term(field, Word::empty(), c)
    }

    pub fn one(field: BaseField) -> Self {
        Self::constant(field, field.one())
    }

    pub fn letter(field: BaseField, i: u32) -> Self {
        Self::term(field, Word::letter(i), field.one())
    }

    pub fn word(field: BaseField, w: &[u32]) -> Self {
        Self::term(field, Word(w.to_vec()), field.one())
    }

    pub fn from_terms(field: BaseField, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = Self::zero(field);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing deglex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<usize> {
        self.leading_term().map(|(w, _)| w.len())
    }

    pub fn constant_term(&self) -> Option<&Scalar> {
        self.terms.get(&Word::empty())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut lens = self.terms.keys().map(Word::len);
        match lens.next() {
            None => true,
            Some(d) => lens.all(|e| e == d),
        }
    }

    pub fn max_letter(&self) -> Option<u32> {
        self.terms.keys().flat_map(|w| w.0.iter().copied()).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-self.field.one())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.field, self.terms.iter().map(|(w, d)| (w.clone(), c * d)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.field);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(a.concat(b), c * d);
            }
        }
        out
    }

    /// `self + c · left · other · right`.
    pub fn add_sandwich(&self, c: &Scalar, left: &Word, other: &Self, right: &Word) -> Self {
        let mut out = self.clone();
        for (w, d) in &other.terms {
            out.add_term(left.concat(w).concat(right), c * d);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.field), |acc, _| acc.mul(self))
    }

    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Evaluates the polynomial at `images[i]` for generator `i`, inside an
    /// arbitrary algebra given by `one`, `add`, `mul` and scalar embedding.
    pub fn evaluate<T: Clone>(
        &self,
        images: &[T],
        unit: &T,
        zero: &T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
        scale: impl Fn(&Scalar, &T) -> T,
    ) -> T {
        let mut acc = zero.clone();
        for (w, c) in &self.terms {
            let mut t = match w.0.first() {
                Some(&l) => images[l as usize].clone(),
                None => unit.clone(),
            };
            for &l in w.0.iter().skip(1) {
                t = mul(&t, &images[l as usize]);
            }
            acc = add(&acc, &scale(c, &t));
        }
        acc
    }

    /// Substitutes free-algebra elements for the generators.
    pub fn substitute(&self, images: &[NcPolynomial], field: BaseField) -> NcPolynomial {
        self.evaluate(
            images,
            &NcPolynomial::one(field),
            &NcPolynomial::zero(field),
            |a, b| a.add(b),
            |a, b| a.mul(b),
            |c, t| t.scale(c),
        )
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if w.is_empty() {
                out.push_str(&abs.to_string());
                continue;
            }
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            let letters: Vec<&str> = w.0.iter().map(|&l| names[l as usize].as_str()).collect();
            out.push_str(&letters.join("*"));
        }
        out
    }
}

struct NcContext<'a> {
    names: &'a [String],
    field: BaseField,
}

impl ExprContext for NcContext<'_> {
    type Elem = NcPolynomial;

    fn field(&self) -> BaseField {
        self.field
    }
    fn constant(&self, c: Scalar) -> NcPolynomial {
        NcPolynomial::constant(self.field, c)
    }
    fn variable(&self, name: &str) -> Result<NcPolynomial> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| NcPolynomial::letter(self.field, i as u32))
            .ok_or_else(|| Error::Input(format!("unknown generator {name:?}")))
    }
    fn add(&self, a: &NcPolynomial, b: &NcPolynomial) -> NcPolynomial {
        a.add(b)
    }
    fn mul(&self, a: &NcPolynomial, b: &NcPolynomial) -> NcPolynomial {
        a.mul(b)
    }
    fn as_constant(&self, a: &NcPolynomial) -> Option<Scalar> {
        match a.len() {
            0 => Some(self.field.zero()),
            1 => a.constant_term().cloned(),
            _ => None,
        }
    }
}

/// Parses a noncommutative expression; products are written with `*`.
pub fn parse_nc(src: &str, names: &[String], field: BaseField) -> Result<NcPolynomial> {
    parse_in(src, &NcContext { names, field })
}
