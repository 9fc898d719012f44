//! Buchberger's algorithm with cofactor tracking, and the ideal queries built on it.

use std::sync::atomic::{AtomicU32, AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

/// Limits for a single Gröbner basis computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Largest total degree of an S-pair lcm.
    pub max_degree: u32,
    /// Largest number of S-pairs processed.
    pub max_pairs: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_degree: 40, max_pairs: 1_000_000 }
    }
}

static CURRENT_DEGREE: AtomicU32 = AtomicU32::new(40);
static CURRENT_PAIRS: AtomicU64 = AtomicU64::new(1_000_000);
static PAIRS_USED: AtomicU64 = AtomicU64::new(0);
static DEGREE_USED: AtomicU32 = AtomicU32::new(0);

/// Budget consumption since the last [`Budget::reset_usage`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BudgetUsage {
    pub pairs_processed: u64,
    pub max_pair_degree: u32,
}

impl Budget {
    /// The process-wide budget used by [`Ideal::new`].
    pub fn current() -> Budget {
        Budget {
            max_degree: CURRENT_DEGREE.load(AtomicOrdering::Relaxed),
            max_pairs: CURRENT_PAIRS.load(AtomicOrdering::Relaxed),
        }
    }

    pub fn set_current(self) {
        CURRENT_DEGREE.store(self.max_degree, AtomicOrdering::Relaxed);
        CURRENT_PAIRS.store(self.max_pairs, AtomicOrdering::Relaxed);
    }

    /// Defaults overridden by `ESSALG_BUDGET_DEGREE` / `ESSALG_BUDGET_PAIRS`.
    pub fn from_env() -> Result<Budget> {
        let mut b = Budget::default();
        if let Ok(v) = std::env::var("ESSALG_BUDGET_DEGREE") {
            b.max_degree = v
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("ESSALG_BUDGET_DEGREE={v:?} is not an integer")))?;
        }
        if let Ok(v) = std::env::var("ESSALG_BUDGET_PAIRS") {
            b.max_pairs = v
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("ESSALG_BUDGET_PAIRS={v:?} is not an integer")))?;
        }
        Ok(b)
    }

    pub fn usage() -> BudgetUsage {
        BudgetUsage {
            pairs_processed: PAIRS_USED.load(AtomicOrdering::Relaxed),
            max_pair_degree: DEGREE_USED.load(AtomicOrdering::Relaxed),
        }
    }

    pub fn reset_usage() {
        PAIRS_USED.store(0, AtomicOrdering::Relaxed);
        DEGREE_USED.store(0, AtomicOrdering::Relaxed);
    }
}

/// A polynomial with its expression over the input generators.
#[derive(Clone)]
struct Tracked {
    poly: Polynomial,
    cof: Vec<Polynomial>,
}

impl Tracked {
    fn scale(&self, c: &crate::field::Scalar) -> Tracked {
        Tracked { poly: self.poly.scale(c), cof: self.cof.iter().map(|p| p.scale(c)).collect() }
    }

    fn monic(self) -> Tracked {
        match self.poly.leading_coefficient() {
            Some(c) if !c.is_one() => self.scale(&c.inv().expect("nonzero")),
            _ => self,
        }
    }
}

/// Quotient terms collected during a reduction, one list per divisor.
type Quotients = Vec<Vec<(Monomial, crate::field::Scalar)>>;

/// Fully reduces `p` by `divisors` (all monic). The first divisor whose leading
/// monomial divides the current term is used.
fn reduce(p: &Polynomial, divisors: &[&Polynomial]) -> (Quotients, Polynomial) {
    let ring = p.ring().clone();
    let mut quots: Quotients = vec![Vec::new(); divisors.len()];
    let mut rem = Vec::new();
    let mut cur = p.clone();
    while let Some((m, c)) = cur.leading_term().cloned() {
        let hit = divisors
            .iter()
            .enumerate()
            .find_map(|(j, g)| g.leading_monomial().and_then(|lm| lm.quotient_of(&m)).map(|q| (j, q)));
        match hit {
            Some((j, q)) => {
                let lc = divisors[j].leading_coefficient().expect("nonzero divisor");
                let coef = &c * &lc.inv().expect("nonzero");
                cur = cur.add_scaled(&-&coef, &q, divisors[j]);
                quots[j].push((q, coef));
            }
            None => {
                rem.push(cur.pop_leading().expect("nonzero"));
            }
        }
    }
    (quots, Polynomial::from_desc_terms(&ring, rem))
}

/// Reduces a tracked polynomial and updates its cofactors.
fn reduce_tracked(t: &Tracked, divisors: &[&Tracked]) -> Tracked {
    let polys: Vec<&Polynomial> = divisors.iter().map(|d| &d.poly).collect();
    let (quots, rem) = reduce(&t.poly, &polys);
    let mut cof = t.cof.clone();
    for (q, d) in quots.iter().zip(divisors) {
        if q.is_empty() {
            continue;
        }
        let q = Polynomial::from_terms(t.poly.ring(), q.iter().cloned());
        for (c, dc) in cof.iter_mut().zip(&d.cof) {
            if !dc.is_zero() {
                *c = c.sub(&q.mul(dc));
            }
        }
    }
    Tracked { poly: rem, cof }
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn lm(t: &Tracked) -> &Monomial {
    t.poly.leading_monomial().expect("nonzero basis element")
}

/// Gebauer–Möller style update of the pair set and the active basis after adding `h`.
fn update(elems: &[Tracked], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lm_h = lm(&elems[h]).clone();
    let candidates = active.clone();
    let lcm_with = |g: usize| lm_h.lcm(lm(&elems[g]));
    let mut kept: Vec<usize> = Vec::new();
    for (idx, &g1) in candidates.iter().enumerate() {
        let l1 = lcm_with(g1);
        let coprime = lm_h.coprime(lm(&elems[g1]));
        let dominated = candidates[idx + 1..].iter().chain(kept.iter()).any(|&g2| lcm_with(g2).divides(&l1));
        if coprime || !dominated {
            kept.push(g1);
        }
    }
    pairs.retain(|p| {
        !(lm_h.divides(&p.lcm) && lcm_with(p.i) != p.lcm && lcm_with(p.j) != p.lcm)
    });
    for g in kept {
        if !lm_h.coprime(lm(&elems[g])) {
            pairs.push(Pair { i: g, j: h, lcm: lcm_with(g) });
        }
    }
    active.retain(|&g| !lm_h.divides(lm(&elems[g])));
    active.push(h);
}

fn unit_vector(ring: &Arc<PolyRing>, n: usize, i: usize) -> Vec<Polynomial> {
    (0..n).map(|k| if k == i { Polynomial::one(ring) } else { Polynomial::zero(ring) }).collect()
}

/// Computes a reduced Gröbner basis with cofactors over `gens`.
fn buchberger(ring: &Arc<PolyRing>, gens: &[Polynomial], budget: Budget) -> Result<Vec<Tracked>> {
    let order = ring.order();
    let m = gens.len();
    let mut elems: Vec<Tracked> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let finish_unit = |t: Tracked| -> Vec<Tracked> { vec![t.monic()] };

    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let t = Tracked { poly: g.clone(), cof: unit_vector(ring, m, i) }.monic();
        if t.poly.is_constant() {
            return Ok(finish_unit(t));
        }
        elems.push(t);
        update(&elems, &mut active, &mut pairs, elems.len() - 1);
    }

    let mut processed = 0u64;
    while !pairs.is_empty() {
        // normal selection strategy, ties by generator index
        let (best, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| order.cmp(&a.lcm, &b.lcm).then((a.i, a.j).cmp(&(b.i, b.j))))
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        processed += 1;
        PAIRS_USED.fetch_add(1, AtomicOrdering::Relaxed);
        DEGREE_USED.fetch_max(pair.lcm.degree(), AtomicOrdering::Relaxed);
        if processed > budget.max_pairs {
            return Err(Error::Resource { budget: "pairs", limit: budget.max_pairs });
        }
        if pair.lcm.degree() > budget.max_degree {
            return Err(Error::Resource { budget: "degree", limit: budget.max_degree as u64 });
        }
        let (a, b) = (&elems[pair.i], &elems[pair.j]);
        let qa = lm(a).quotient_of(&pair.lcm).expect("lcm");
        let qb = lm(b).quotient_of(&pair.lcm).expect("lcm");
        let one = ring.field().one();
        let s = Tracked {
            poly: a.poly.mul_term(&one, &qa).sub(&b.poly.mul_term(&one, &qb)),
            cof: a
                .cof
                .iter()
                .zip(&b.cof)
                .map(|(ca, cb)| ca.mul_term(&one, &qa).sub(&cb.mul_term(&one, &qb)))
                .collect(),
        };
        let divisors: Vec<&Tracked> = active.iter().map(|&k| &elems[k]).collect();
        let h = reduce_tracked(&s, &divisors);
        if h.poly.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.poly.is_constant() {
            return Ok(finish_unit(h));
        }
        elems.push(h);
        update(&elems, &mut active, &mut pairs, elems.len() - 1);
    }

    // minimal basis: drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<usize> = Vec::new();
    for &g in &active {
        let dup = active.iter().any(|&o| {
            o != g && lm(&elems[o]).divides(lm(&elems[g])) && (lm(&elems[o]) != lm(&elems[g]) || o < g)
        });
        if !dup {
            minimal.push(g);
        }
    }
    let mut basis: Vec<Tracked> = minimal.into_iter().map(|k| elems[k].clone()).collect();
    basis.sort_by(|a, b| order.cmp(lm(a), lm(b)));

    // inter-reduction; leading monomials are untouched
    for k in 0..basis.len() {
        let others: Vec<&Tracked> = basis.iter().enumerate().filter(|(o, _)| *o != k).map(|(_, t)| t).collect();
        let reduced = reduce_tracked(&basis[k], &others).monic();
        basis[k] = reduced;
    }
    Ok(basis)
}

/// An ideal of a polynomial ring with its cached reduced Gröbner basis.
///
/// `basis[j] = Σ_i cofactors[j][i] · generators[i]` holds exactly.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    basis: Vec<Polynomial>,
    cofactors: Vec<Vec<Polynomial>>,
}

impl PartialEq for Ideal {
    /// Equality of ideals: identical reduced bases in the same ring and order.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.basis == other.basis
    }
}

impl Ideal {
    /// Builds the ideal and computes its Gröbner basis under the current budget.
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<Polynomial>) -> Result<Ideal> {
        Self::with_budget(ring, generators, Budget::current())
    }

    pub fn with_budget(ring: &Arc<PolyRing>, generators: Vec<Polynomial>, budget: Budget) -> Result<Ideal> {
        let generators = generators
            .into_iter()
            .map(|g| {
                if g.ring().vars() != ring.vars() || g.field() != ring.field() {
                    Err(Error::Input(format!("generator {g} does not live in the ring")))
                } else {
                    Ok(g.with_ring(ring))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let tracked = buchberger(ring, &generators, budget)?;
        let (basis, cofactors) = tracked.into_iter().map(|t| (t.poly, t.cof)).unzip();
        Ok(Ideal { ring: ring.clone(), generators, basis, cofactors })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Ideal { ring: ring.clone(), generators: Vec::new(), basis: Vec::new(), cofactors: Vec::new() }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Reduced Gröbner basis, sorted by increasing leading monomial.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn cofactors(&self) -> &[Vec<Polynomial>] {
        &self.cofactors
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.basis.as_slice(), [b] if b.is_constant())
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.basis.iter().filter_map(|b| b.leading_monomial()).collect()
    }

    fn localize_poly(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.ring().vars() != self.ring.vars() || p.field() != self.ring.field() {
            return Err(Error::Input(format!(
                "polynomial over {:?} used with an ideal over {:?}",
                p.ring().vars(),
                self.ring.vars()
            )));
        }
        Ok(p.with_ring(&self.ring))
    }

    /// The unique remainder of `p` modulo the basis.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        let p = self.localize_poly(p)?;
        let divs: Vec<&Polynomial> = self.basis.iter().collect();
        Ok(reduce(&p, &divs).1)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Coefficients `c` with `p = Σ c_i · generators[i]`, or `None` if `p ∉ I`.
    pub fn membership_witness(&self, p: &Polynomial) -> Result<Option<Vec<Polynomial>>> {
        let p = self.localize_poly(p)?;
        let divs: Vec<&Polynomial> = self.basis.iter().collect();
        let (quots, rem) = reduce(&p, &divs);
        if !rem.is_zero() {
            return Ok(None);
        }
        let mut coeffs = vec![Polynomial::zero(&self.ring); self.generators.len()];
        for (q, cof) in quots.iter().zip(&self.cofactors) {
            if q.is_empty() {
                continue;
            }
            let q = Polynomial::from_terms(&self.ring, q.iter().cloned());
            for (c, g) in coeffs.iter_mut().zip(cof) {
                *c = c.add(&q.mul(g));
            }
        }
        let check = combine(&coeffs, &self.generators, &self.ring);
        if check.sub(&p).is_zero() {
            Ok(Some(coeffs))
        } else {
            Err(Error::Invalid("membership witness failed exact replay".into()))
        }
    }

    /// Checks the recorded cofactor identities by expansion.
    pub fn verify_cofactors(&self) -> bool {
        self.basis
            .iter()
            .zip(&self.cofactors)
            .all(|(b, cof)| combine(cof, &self.generators, &self.ring).sub(b).is_zero())
    }

    /// The same ideal under another monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Ideal> {
        let ring = self.ring.with_order(order);
        Ideal::new(&ring, self.generators.iter().map(|g| g.with_ring(&ring)).collect())
    }

    /// `I + (extra)`, with the original generators first.
    pub fn extend(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// `I ∩ k[keep]`, returned as an ideal of the polynomial ring on the kept variables.
    pub fn eliminate(&self, keep: &[usize]) -> Result<Ideal> {
        let n = self.ring.nvars();
        if keep.iter().any(|&k| k >= n) {
            return Err(Error::Input("variable index out of range".into()));
        }
        let drop: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        let mut perm = vec![0; n];
        let mut names = Vec::with_capacity(n);
        for (slot, &i) in drop.iter().chain(keep.iter()).enumerate() {
            perm[i] = slot;
            names.push(self.ring.vars()[i].clone());
        }
        let elim_ring = PolyRing::new(names, MonomialOrder::BlockElimination(drop.len()), self.ring.field())?;
        let moved: Vec<Polynomial> = self.basis.iter().map(|b| b.remap(&perm, &elim_ring)).collect();
        let big = Ideal::new(&elim_ring, moved)?;
        let sub_ring = PolyRing::new(
            keep.iter().map(|&i| self.ring.vars()[i].clone()).collect(),
            self.ring.order(),
            self.ring.field(),
        )?;
        let k = drop.len();
        let back: Vec<usize> = (0..n).map(|slot| slot.saturating_sub(k)).collect();
        let gens: Vec<Polynomial> = big
            .basis
            .iter()
            .filter(|b| b.support_vars().iter().all(|&v| v >= k))
            .map(|b| b.remap(&back, &sub_ring))
            .collect();
        Ideal::new(&sub_ring, gens)
    }

    /// The colon ideal `(I : f) = { g : g·f ∈ I }`, via `I ∩ (f)` computed with a tag variable.
    pub fn colon(&self, f: &Polynomial) -> Result<Ideal> {
        let f = self.localize_poly(f)?;
        if f.is_zero() {
            return Err(Error::Input("colon by the zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let n = self.ring.nvars();
        let mut names = vec![self.ring.fresh_name("_tag")];
        names.extend(self.ring.vars().iter().cloned());
        let tagged = PolyRing::new(names, MonomialOrder::BlockElimination(1), self.ring.field())?;
        let shift: Vec<usize> = (1..=n).collect();
        let t = Polynomial::var(&tagged, 0);
        let one_minus_t = Polynomial::one(&tagged).sub(&t);
        let mut gens: Vec<Polynomial> = self.basis.iter().map(|b| t.mul(&b.remap(&shift, &tagged))).collect();
        gens.push(one_minus_t.mul(&f.remap(&shift, &tagged)));
        let big = Ideal::new(&tagged, gens)?;
        let back: Vec<usize> = (0..=n).map(|i| i.saturating_sub(1)).collect();
        let quotients = big
            .basis
            .iter()
            .filter(|b| b.support_vars().first() != Some(&0))
            .map(|b| {
                let g = b.remap(&back, &self.ring);
                g.exact_div(&f)
                    .ok_or_else(|| Error::Invalid(format!("intersection element {g} not divisible by {f}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, quotients)
    }
}

/// `Σ c_i g_i`.
pub fn combine(coeffs: &[Polynomial], gens: &[Polynomial], ring: &Arc<PolyRing>) -> Polynomial {
    coeffs
        .iter()
        .zip(gens)
        .fold(Polynomial::zero(ring), |acc, (c, g)| acc.add(&c.with_ring(ring).mul(&g.with_ring(ring))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::BaseField;
    use crate::poly::parse_poly;

    fn ring(vars: &[&str], order: MonomialOrder) -> Arc<PolyRing> {
        PolyRing::new(vars.iter().map(|s| s.to_string()).collect(), order, BaseField::Rational).unwrap()
    }

    fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_poly(g, r).unwrap()).collect()).unwrap()
    }

    fn basis_strings(i: &Ideal) -> Vec<String> {
        i.basis().iter().map(|b| b.to_string()).collect()
    }

    #[test]
    fn coordinate_ideal_is_already_reduced() {
        let r = ring(&["x", "y"], MonomialOrder::Lex);
        let i = ideal(&r, &["x", "y"]);
        assert_eq!(basis_strings(&i), vec!["y", "x"]);
        assert!(i.verify_cofactors());
    }

    #[test]
    fn redundant_generator_collapses() {
        let r = ring(&["x"], MonomialOrder::Lex);
        let i = ideal(&r, &["x^2 - 1", "x - 1"]);
        assert_eq!(basis_strings(&i), vec!["x - 1"]);
        assert!(i.verify_cofactors());
        // the basis element is the second generator itself
        assert_eq!(i.cofactors()[0][0].to_string(), "0");
        assert_eq!(i.cofactors()[0][1].to_string(), "1");
        // x^2 - 1 = (x + 1)(x - 1)
        let w = i.membership_witness(&parse_poly("x^2 - 1", &r).unwrap()).unwrap().unwrap();
        assert_eq!(combine(&w, i.generators(), &r), parse_poly("x^2-1", &r).unwrap());
    }

    #[test]
    fn unit_ideal_from_s_polynomial() {
        let r = ring(&["x", "y"], MonomialOrder::Lex);
        let i = ideal(&r, &["x*y - 1", "x^2"]);
        assert!(i.is_unit());
        assert_eq!(basis_strings(&i), vec!["1"]);
        assert!(i.verify_cofactors());
    }

    #[test]
    fn normal_forms() {
        let r = ring(&["x", "y"], MonomialOrder::Grevlex);
        assert!(ideal(&r, &["x"]).normal_form(&parse_poly("x^2", &r).unwrap()).unwrap().is_zero());
        let nf = ideal(&r, &["x - 1"]).normal_form(&parse_poly("x^2 + y", &r).unwrap()).unwrap();
        assert_eq!(nf, parse_poly("1 + y", &r).unwrap());
        let nf = ideal(&r, &["x", "y"]).normal_form(&Polynomial::one(&r)).unwrap();
        assert_eq!(nf.to_string(), "1");
    }

    #[test]
    fn normal_form_rejects_foreign_polynomials() {
        let r = ring(&["x", "y"], MonomialOrder::Grevlex);
        let s = ring(&["u"], MonomialOrder::Grevlex);
        assert!(matches!(
            ideal(&r, &["x"]).normal_form(&Polynomial::var(&s, 0)),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn partition_of_unity_witness() {
        let r = ring(&["x"], MonomialOrder::Lex);
        let i = ideal(&r, &["x", "x - 1"]);
        let w = i.membership_witness(&Polynomial::one(&r)).unwrap().unwrap();
        let w: Vec<String> = w.iter().map(|c| c.to_string()).collect();
        assert_eq!(w, vec!["1", "-1"]);
        assert!(ideal(&r, &["x", "x^2"]).membership_witness(&Polynomial::one(&r)).unwrap().is_none());
        let w = ideal(&r, &["x"]).membership_witness(&Polynomial::var(&r, 0)).unwrap().unwrap();
        assert_eq!(w[0].to_string(), "1");
    }

    #[test]
    fn colon_ideals() {
        let r = ring(&["x", "y"], MonomialOrder::Grevlex);
        let x = parse_poly("x", &r).unwrap();
        assert_eq!(ideal(&r, &["x*y"]).colon(&x).unwrap(), ideal(&r, &["y"]));
        assert!(Ideal::zero(&r).colon(&x).unwrap().is_zero());
        assert_eq!(ideal(&r, &["x^2"]).colon(&x).unwrap(), ideal(&r, &["x"]));
        assert!(ideal(&r, &["x"]).colon(&Polynomial::zero(&r)).is_err());
    }

    #[test]
    fn elimination() {
        let r = ring(&["x", "y"], MonomialOrder::Grevlex);
        assert!(ideal(&r, &["x - y"]).eliminate(&[1]).unwrap().is_zero());
        assert_eq!(basis_strings(&ideal(&r, &["x", "y"]).eliminate(&[1]).unwrap()), vec!["y"]);
        assert!(ideal(&r, &["x*y - 1"]).eliminate(&[1]).unwrap().is_zero());
        // twisted cubic: the implicit equation in (x, z)
        let r3 = ring(&["t", "x", "y", "z"], MonomialOrder::Grevlex);
        let e = ideal(&r3, &["x - t", "y - t^2", "z - t^3"]).eliminate(&[1, 3]).unwrap();
        assert_eq!(basis_strings(&e), vec!["x^3 - z"]);
    }

    #[test]
    fn degree_budget_is_enforced() {
        let r = ring(&["x", "y", "z"], MonomialOrder::Lex);
        let gens = vec![
            parse_poly("x^3 - y*z", &r).unwrap(),
            parse_poly("y^3 - x*z", &r).unwrap(),
            parse_poly("z^3 - x*y", &r).unwrap(),
        ];
        let err = Ideal::with_budget(&r, gens, Budget { max_degree: 4, max_pairs: 1000 }).unwrap_err();
        assert!(matches!(err, Error::Resource { budget: "degree", .. }));
    }

    #[test]
    fn pair_budget_is_enforced() {
        let r = ring(&["x", "y"], MonomialOrder::Lex);
        let gens = vec![parse_poly("x^2 - y", &r).unwrap(), parse_poly("x*y - 1", &r).unwrap()];
        let err = Ideal::with_budget(&r, gens, Budget { max_degree: 40, max_pairs: 0 }).unwrap_err();
        assert!(matches!(err, Error::Resource { budget: "pairs", .. }));
    }

    #[test]
    fn cyclic_three_over_prime_field() {
        let f = BaseField::prime(32003).unwrap();
        let r = PolyRing::new(vec!["a".into(), "b".into(), "c".into()], MonomialOrder::Grevlex, f).unwrap();
        let i = ideal(&r, &["a + b + c", "a*b + b*c + c*a", "a*b*c - 1"]);
        assert!(i.verify_cofactors());
        assert!(!i.is_unit());
        // the reduced basis is independent of the generator order
        let j = ideal(&r, &["a*b*c - 1", "a + b + c", "a*b + b*c + c*a"]);
        assert_eq!(i, j);
    }
}
