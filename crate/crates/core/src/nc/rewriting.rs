//! Degree-bounded completion of two-sided rewriting systems in the free algebra.
//!
//! Noncommutative Gröbner bases need not be finite, so completion only
//! resolves overlaps whose ambiguity word has length at most the bound and
//! reports whether anything was left unresolved.

use super::poly::{NcPolynomial, Word};
use crate::error::{Error, Result};
use crate::field::BaseField;

const MAX_RULES: usize = 5_000;
const MAX_ROUNDS: usize = 1_000;

/// Monic rules `lead(r) -> lead(r) - r`, interreduced, under deglex.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    field: BaseField,
    rules: Vec<NcPolynomial>,
    bound: usize,
    skipped_overlaps: bool,
    homogeneous: bool,
}

fn lead(r: &NcPolynomial) -> &Word {
    r.leading_term().expect("nonzero rule").0
}

/// Fully reduces `p` by `rules`, taking the first rule (then the leftmost
/// occurrence) that matches the current leading word.
fn reduce_by(p: &NcPolynomial, rules: &[&NcPolynomial]) -> NcPolynomial {
    let field = p.field();
    let mut cur = p.clone();
    let mut rem = NcPolynomial::zero(field);
    while let Some((w, c)) = cur.leading_term().map(|(w, c)| (w.clone(), c.clone())) {
        let hit = rules.iter().find_map(|r| w.find(lead(r)).map(|pos| (*r, pos)));
        match hit {
            Some((r, pos)) => {
                let left = Word(w.0[..pos].to_vec());
                let right = Word(w.0[pos + lead(r).len()..].to_vec());
                cur = cur.add_sandwich(&-&c, &left, r, &right);
            }
            None => {
                let t = NcPolynomial::term(field, w, c);
                rem = rem.add(&t);
                cur = cur.sub(&t);
            }
        }
    }
    rem
}

fn interreduce(rules: Vec<NcPolynomial>) -> Vec<NcPolynomial> {
    let mut rules: Vec<NcPolynomial> = rules.into_iter().filter(|r| !r.is_zero()).map(|r| r.monic()).collect();
    loop {
        rules.sort_by(|a, b| lead(a).cmp(lead(b)));
        rules.dedup();
        let mut changed = false;
        for i in 0..rules.len() {
            let others: Vec<&NcPolynomial> =
                rules.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, r)| r).collect();
            let r = reduce_by(&rules[i], &others).monic();
            if r != rules[i] {
                rules[i] = r;
                changed = true;
                break;
            }
        }
        rules.retain(|r| !r.is_zero());
        if !changed {
            return rules;
        }
    }
}

impl RewriteSystem {
    /// Completes `relations` up to ambiguity length `bound`.
    pub fn complete(relations: &[NcPolynomial], field: BaseField, bound: usize) -> Result<RewriteSystem> {
        let homogeneous = relations.iter().all(NcPolynomial::is_homogeneous);
        let mut rules = interreduce(relations.to_vec());
        for _round in 0..MAX_ROUNDS {
            let mut skipped = false;
            let mut fresh = Vec::new();
            for a in &rules {
                for b in &rules {
                    let (la, lb) = (lead(a), lead(b));
                    for k in 1..la.len().min(lb.len()) {
                        if la.0[la.len() - k..] != lb.0[..k] {
                            continue;
                        }
                        if la.len() + lb.len() - k > bound {
                            skipped = true;
                            continue;
                        }
                        let u = Word(la.0[..la.len() - k].to_vec());
                        let w = Word(lb.0[k..].to_vec());
                        let s = a
                            .mul(&NcPolynomial::term(field, w, field.one()))
                            .sub(&NcPolynomial::term(field, u, field.one()).mul(b));
                        let refs: Vec<&NcPolynomial> = rules.iter().chain(fresh.iter()).collect();
                        let h = reduce_by(&s, &refs);
                        if !h.is_zero() {
                            fresh.push(h.monic());
                        }
                    }
                }
            }
            if fresh.is_empty() {
                return Ok(RewriteSystem { field, rules, bound, skipped_overlaps: skipped, homogeneous });
            }
            rules.extend(fresh);
            rules = interreduce(rules);
            if rules.len() > MAX_RULES {
                return Err(Error::Resource { budget: "nc_rules", limit: MAX_RULES as u64 });
            }
        }
        Err(Error::Resource { budget: "nc_rounds", limit: MAX_ROUNDS as u64 })
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn rules(&self) -> &[NcPolynomial] {
        &self.rules
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// No overlap exceeded the bound: the system is confluent outright.
    pub fn is_complete(&self) -> bool {
        !self.skipped_overlaps
    }

    /// Normal forms of elements of degree at most the bound are unique: either
    /// nothing was skipped, or the relations are homogeneous so that skipped
    /// overlaps only affect higher degrees.
    pub fn confluent_up_to_bound(&self) -> bool {
        !self.skipped_overlaps || self.homogeneous
    }

    pub fn reduce(&self, p: &NcPolynomial) -> NcPolynomial {
        let refs: Vec<&NcPolynomial> = self.rules.iter().collect();
        reduce_by(p, &refs)
    }
}

/// Remainder of a bounded reduction plus whether it is certified unique.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundedNormalForm {
    pub remainder: NcPolynomial,
    pub confluent: bool,
}

/// Normal form of `p` in `A` modulo the relations completed up to degree `bound`.
pub fn nc_normal_form_bounded(
    p: &NcPolynomial,
    a: &super::NcPresentation,
    bound: usize,
) -> Result<BoundedNormalForm> {
    if p.degree().unwrap_or(0) > bound {
        return Err(Error::Input(format!("element of degree {:?} exceeds bound {bound}", p.degree())));
    }
    let sys = RewriteSystem::complete(a.relations(), a.field(), bound)?;
    Ok(BoundedNormalForm { remainder: sys.reduce(p), confluent: sys.confluent_up_to_bound() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nc::NcPresentation;

    const Q: BaseField = BaseField::Rational;

    #[test]
    fn commutator_orients_towards_sorted_words() {
        let a = NcPresentation::parse(&["x", "y"], &["x*y - y*x"], true, Q).unwrap();
        let p = a.parse_element("y*x").unwrap();
        let nf = nc_normal_form_bounded(&p, &a, 4).unwrap();
        assert_eq!(a.display(&nf.remainder), "x*y");
        assert!(nf.confluent);
        let q = a.parse_element("x*y").unwrap();
        assert_eq!(nc_normal_form_bounded(&q, &a, 4).unwrap().remainder, q);
    }

    #[test]
    fn free_algebra_is_already_normal() {
        let a = NcPresentation::free(&["x"], true, Q).unwrap();
        let p = a.parse_element("x^3").unwrap();
        let nf = nc_normal_form_bounded(&p, &a, 3).unwrap();
        assert_eq!(nf.remainder, p);
        assert!(nf.confluent);
    }

    #[test]
    fn ideal_consequences_reduce_to_zero() {
        let a = NcPresentation::parse(&["x", "y"], &["x*x - y*x"], false, Q).unwrap();
        let sys = RewriteSystem::complete(a.relations(), Q, 6).unwrap();
        assert!(sys.confluent_up_to_bound());
        // x*r - r*x for the single relation r
        let p = a.parse_element("y*x*x - x*y*x").unwrap();
        assert!(sys.reduce(&p).is_zero());
    }

    #[test]
    fn completion_adds_overlap_consequences() {
        // x*y -> x and y*x -> y overlap on x*y*x, forcing x*x = x
        let a = NcPresentation::parse(&["x", "y"], &["x*y - x", "y*x - y"], false, Q).unwrap();
        let sys = RewriteSystem::complete(a.relations(), Q, 4).unwrap();
        assert!(sys.rules().len() > 2);
        assert!(sys.reduce(&a.parse_element("x*x - x").unwrap()).is_zero());
        assert!(sys.reduce(&a.parse_element("y*y - y").unwrap()).is_zero());
    }

    #[test]
    fn degree_precondition() {
        let a = NcPresentation::free(&["x"], true, Q).unwrap();
        assert!(nc_normal_form_bounded(&a.parse_element("x^5").unwrap(), &a, 4).is_err());
    }

    #[test]
    fn unit_relation_kills_everything() {
        let a = NcPresentation::parse(&["x"], &["1"], true, Q).unwrap();
        let sys = RewriteSystem::complete(a.relations(), Q, 3).unwrap();
        assert!(sys.reduce(&a.parse_element("x^2 + 3").unwrap()).is_zero());
    }
}
