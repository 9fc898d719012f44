//! Lie algebras given by structure constants, their enveloping algebras and
//! Chevalley–Eilenberg cohomology.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::field::{BaseField, Scalar};
use crate::homology::CochainComplex;
use crate::linalg::Matrix;
use crate::nc::{NcPolynomial, NcPresentation, RewriteSystem, Word};
use crate::poly::is_identifier;
use crate::verdict::{Verdict, VerdictTag};

/// `[x_i, x_j] = Σ_k c^k_{ij} x_k`, stored densely.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    names: Vec<String>,
    field: BaseField,
    c: Vec<Scalar>,
}

/// First failure of the Lie axioms found by [`validate_lie`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum LieViolation {
    /// `c^k_{ij} != -c^k_{ji}` (including `c^k_{ii} != 0`).
    Antisymmetry { i: usize, j: usize, k: usize },
    /// The Jacobi sum for `(i, j, l)` has a nonzero `k` coordinate.
    Jacobi { i: usize, j: usize, l: usize, k: usize },
}

impl fmt::Display for LieViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieViolation::Antisymmetry { i, j, k } => {
                write!(f, "antisymmetry fails at ({i}, {j}) in coordinate {k}")
            }
            LieViolation::Jacobi { i, j, l, k } => {
                write!(f, "Jacobi identity fails at ({i}, {j}, {l}) in coordinate {k}")
            }
        }
    }
}

impl LieAlgebra {
    /// Builds the algebra from nonzero constants `(i, j, k, c^k_{ij})`, taken
    /// literally: antisymmetric partners must be listed too.
    pub fn new(names: Vec<String>, field: BaseField, constants: &[(usize, usize, usize, Scalar)]) -> Result<Self> {
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::Input(format!("invalid basis name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::Input(format!("duplicate basis name {n:?}")));
            }
        }
        let d = names.len();
        let mut c = vec![field.zero(); d * d * d];
        for (i, j, k, v) in constants {
            if *i >= d || *j >= d || *k >= d {
                return Err(Error::Input(format!("structure constant index ({i}, {j}, {k}) out of range")));
            }
            if v.field() != field {
                return Err(Error::Input("structure constant over the wrong field".into()));
            }
            let slot = &mut c[(i * d + j) * d + k];
            *slot = &*slot + v;
        }
        Ok(LieAlgebra { names, field, c })
    }

    /// The abelian algebra on `x1, ..., xd`.
    pub fn abelian(d: usize, field: BaseField) -> Self {
        let names = (1..=d).map(|i| format!("x{i}")).collect();
        Self::new(names, field, &[]).expect("valid names")
    }

    /// `sl_2` on the ordered basis `f < h < e` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
    pub fn sl2(field: BaseField) -> Self {
        let (f, h, e) = (0, 1, 2);
        let v = |x: i64| field.from_i64(x);
        let constants = [
            (h, e, e, v(2)),
            (e, h, e, v(-2)),
            (h, f, f, v(-2)),
            (f, h, f, v(2)),
            (e, f, h, v(1)),
            (f, e, h, v(-1)),
        ];
        Self::new(vec!["f".into(), "h".into(), "e".into()], field, &constants).expect("valid data")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let d = self.dim();
        &self.c[(i * d + j) * d + k]
    }

    /// Nonzero constants as `(i, j, k, value)` in index order.
    pub fn nonzero_constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let d = self.dim();
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

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
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

    fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }
}

/// Checks antisymmetry and the Jacobi identity exactly, reporting the first failure.
pub fn validate_lie(g: &LieAlgebra) -> std::result::Result<(), LieViolation> {
    let d = g.dim();
    for i in 0..d {
        for j in i..d {
            for k in 0..d {
                if !(g.constant(i, j, k) + g.constant(j, i, k)).is_zero() {
                    return Err(LieViolation::Antisymmetry { i, j, k });
                }
            }
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            for l in j + 1..d {
                let (xi, xj, xl) = (g.basis_vector(i), g.basis_vector(j), g.basis_vector(l));
                let a = g.bracket(&g.bracket(&xi, &xj), &xl);
                let b = g.bracket(&g.bracket(&xj, &xl), &xi);
                let c = g.bracket(&g.bracket(&xl, &xi), &xj);
                for k in 0..d {
                    if !(&(&a[k] + &b[k]) + &c[k]).is_zero() {
                        return Err(LieViolation::Jacobi { i, j, l, k });
                    }
                }
            }
        }
    }
    Ok(())
}

fn require_lie(g: &LieAlgebra) -> Result<()> {
    validate_lie(g).map_err(|v| Error::Invalid(format!("not a Lie algebra: {v}")))
}

/// A finite-dimensional left module given by action matrices `ρ(x_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieModule {
    dim: usize,
    action: Vec<Matrix>,
}

impl LieModule {
    pub fn new(g: &LieAlgebra, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != g.dim() {
            return Err(Error::Input(format!("{} action matrices for a {}-dimensional algebra", action.len(), g.dim())));
        }
        for (i, m) in action.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim || m.field() != g.field() {
                return Err(Error::Input(format!("action matrix {i} is not {dim}x{dim} over the base field")));
            }
        }
        Ok(LieModule { dim, action })
    }

    /// The one-dimensional trivial module.
    pub fn trivial(g: &LieAlgebra) -> Self {
        LieModule { dim: 1, action: vec![Matrix::zeros(1, 1, g.field()); g.dim()] }
    }

    /// `ρ(x_i) = ad(x_i)`.
    pub fn adjoint(g: &LieAlgebra) -> Self {
        let d = g.dim();
        let action = (0..d)
            .map(|i| {
                let mut m = Matrix::zeros(d, d, g.field());
                for j in 0..d {
                    for k in 0..d {
                        m.set(k, j, g.constant(i, j, k).clone());
                    }
                }
                m
            })
            .collect();
        LieModule { dim: d, action }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// First pair `(i, j)` with `ρ([x_i, x_j]) != [ρ(x_i), ρ(x_j)]`.
    pub fn first_violation(&self, g: &LieAlgebra) -> Option<(usize, usize)> {
        let d = g.dim();
        for i in 0..d {
            for j in i + 1..d {
                let mut lhs = Matrix::zeros(self.dim, self.dim, g.field());
                for k in 0..d {
                    let c = g.constant(i, j, k);
                    if !c.is_zero() {
                        lhs = lhs.add(&self.action[k].scale(c));
                    }
                }
                let rhs = self.action[i].mul(&self.action[j]).sub(&self.action[j].mul(&self.action[i]));
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// `U(g)`: generators the basis, relations `x_j x_i - x_i x_j - [x_j, x_i]` for `j > i`.
///
/// The relations are re-completed up to degree 3 to confirm that straightening
/// is consistent.
pub fn universal_envelope(g: &LieAlgebra) -> Result<NcPresentation> {
    require_lie(g)?;
    let field = g.field();
    let d = g.dim();
    let mut rels = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let mut r = NcPolynomial::word(field, &[j as u32, i as u32]).sub(&NcPolynomial::word(field, &[i as u32, j as u32]));
            for k in 0..d {
                let c = g.constant(j, i, k);
                if !c.is_zero() {
                    r = r.sub(&NcPolynomial::letter(field, k as u32).scale(c));
                }
            }
            rels.push(r);
        }
    }
    let sys = RewriteSystem::complete(&rels, field, 3)?;
    if sys.rules().len() != rels.len() || !sys.is_complete() {
        return Err(Error::Invalid("envelope relations have unresolved overlaps".into()));
    }
    NcPresentation::new(g.names().to_vec(), rels, true, field)
}

/// Exponent vector of a straightened monomial `x_1^{a_1} ... x_d^{a_d}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PbwMonomial {
    pub exponents: Vec<u32>,
}

impl PbwMonomial {
    fn from_sorted_word(w: &Word, d: usize) -> Self {
        let mut exponents = vec![0; d];
        for &l in &w.0 {
            exponents[l as usize] += 1;
        }
        PbwMonomial { exponents }
    }

    pub fn word(&self) -> Word {
        Word(
            self.exponents
                .iter()
                .enumerate()
                .flat_map(|(i, &e)| std::iter::repeat_n(i as u32, e as usize))
                .collect(),
        )
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Straightened combination, terms in increasing order of their sorted words.
#[derive(Clone, Debug, PartialEq)]
pub struct PbwElement {
    pub terms: Vec<(PbwMonomial, Scalar)>,
}

impl PbwElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_nc(&self, field: BaseField) -> NcPolynomial {
        NcPolynomial::from_terms(field, self.terms.iter().map(|(m, c)| (m.word(), c.clone())))
    }
}

/// Rewrites every descent `x_a x_b` (`a > b`) as `x_b x_a + [x_a, x_b]` until
/// all words are sorted. The largest word is always rewritten first and every
/// rewrite produces strictly smaller words, so this terminates.
pub fn pbw_normal_form(p: &NcPolynomial, g: &LieAlgebra) -> Result<PbwElement> {
    let d = g.dim();
    if p.max_letter().is_some_and(|l| l as usize >= d) {
        return Err(Error::Input("element uses letters outside the Lie algebra basis".into()));
    }
    if p.field() != g.field() {
        return Err(Error::Input("element over the wrong field".into()));
    }
    let field = g.field();
    let mut pending: BTreeMap<Word, Scalar> = p.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    let mut done = NcPolynomial::zero(field);
    let push = |pending: &mut BTreeMap<Word, Scalar>, w: Word, c: Scalar| {
        if c.is_zero() {
            return;
        }
        let s = match pending.remove(&w) {
            Some(v) => &v + &c,
            None => c,
        };
        if !s.is_zero() {
            pending.insert(w, s);
        }
    };
    while let Some((w, c)) = pending.pop_last() {
        let Some(pos) = w.0.windows(2).position(|p| p[0] > p[1]) else {
            done = done.add(&NcPolynomial::term(field, w, c));
            continue;
        };
        let (a, b) = (w.0[pos] as usize, w.0[pos + 1] as usize);
        let mut swapped = w.0.clone();
        swapped.swap(pos, pos + 1);
        push(&mut pending, Word(swapped), c.clone());
        for k in 0..d {
            let ck = g.constant(a, b, k);
            if ck.is_zero() {
                continue;
            }
            let mut shorter = w.0[..pos].to_vec();
            shorter.push(k as u32);
            shorter.extend_from_slice(&w.0[pos + 2..]);
            push(&mut pending, Word(shorter), &c * ck);
        }
    }
    Ok(PbwElement { terms: done.terms().map(|(w, c)| (PbwMonomial::from_sorted_word(w, d), c.clone())).collect() })
}

fn subsets(d: usize, n: usize) -> Vec<u64> {
    fn go(start: usize, d: usize, left: usize, acc: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..d {
            if d - i < left {
                break;
            }
            go(i + 1, d, left - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if n <= d {
        go(0, d, n, 0, &mut out);
    }
    out
}

fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

fn sign(odd: bool, v: &Scalar) -> Scalar {
    if odd {
        -v
    } else {
        v.clone()
    }
}

/// `C^n = Hom(Λ^n g, M)` for `n = 0..=n_max + 1` with the Chevalley–Eilenberg differential
///
/// `(dω)(x_0..x_n) = Σ_i (-1)^i x_i·ω(..x̂_i..) + Σ_{i<j} (-1)^{i+j} ω([x_i,x_j], ..x̂_i..x̂_j..)`.
///
/// Basis of `C^n`: pairs (increasing index set `S`, module basis vector `a`),
/// ordered by `S` first.
pub fn chevalley_eilenberg_complex(g: &LieAlgebra, m: &LieModule, n_max: usize) -> Result<CochainComplex> {
    require_lie(g)?;
    if let Some((i, j)) = m.first_violation(g) {
        return Err(Error::Invalid(format!("not a module: the action fails on the bracket of ({i}, {j})")));
    }
    let d = g.dim();
    if d > 63 {
        return Err(Error::Unsupported("Lie algebras of dimension above 63".into()));
    }
    let field = g.field();
    let md = m.dim();
    let sets: Vec<Vec<u64>> = (0..=n_max + 1).map(|n| subsets(d, n)).collect();
    let index: Vec<HashMap<u64, usize>> =
        sets.iter().map(|s| s.iter().enumerate().map(|(i, &mask)| (mask, i)).collect()).collect();
    let dims: Vec<usize> = sets.iter().map(|s| s.len() * md).collect();
    let mut diffs = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut mat = Matrix::zeros(dims[n + 1], dims[n], field);
        for (ti, &tmask) in sets[n + 1].iter().enumerate() {
            let t = members(tmask);
            for (i, &ti_elt) in t.iter().enumerate() {
                let s = index[n][&(tmask & !(1 << ti_elt))];
                let rho = &m.action()[ti_elt];
                for a in 0..md {
                    for b in 0..md {
                        let v = rho.get(b, a);
                        if !v.is_zero() {
                            mat.add_to(ti * md + b, s * md + a, &sign(i % 2 == 1, v));
                        }
                    }
                }
            }
            for i in 0..t.len() {
                for j in i + 1..t.len() {
                    let rest = tmask & !(1 << t[i]) & !(1 << t[j]);
                    for k in 0..d {
                        let c = g.constant(t[i], t[j], k);
                        if c.is_zero() || rest >> k & 1 == 1 {
                            continue;
                        }
                        let s = index[n][&(rest | 1 << k)];
                        let before_k = (rest & ((1u64 << k) - 1)).count_ones() as usize;
                        let v = sign((i + j + before_k) % 2 == 1, c);
                        for a in 0..md {
                            mat.add_to(ti * md + a, s * md + a, &v);
                        }
                    }
                }
            }
        }
        diffs.push(mat);
    }
    let complex = CochainComplex::new(field, dims, diffs)?;
    complex.check_square_zero()?;
    Ok(complex)
}

/// `dim H^n(g, M)` for `n = 0..=n_max`.
pub fn chevalley_eilenberg_dims(g: &LieAlgebra, m: &LieModule, n_max: usize) -> Result<Vec<usize>> {
    Ok(chevalley_eilenberg_complex(g, m, n_max)?.cohomology_dims())
}

/// Searches for `HL^n(g, k) != 0` with `2 <= n <= n_max`; such a class means
/// `U(g)` is not quasi-free. Absence of one proves nothing.
pub fn lie_quasifree_verdict(g: &LieAlgebra, n_max: usize) -> Result<Verdict> {
    let dims = chevalley_eilenberg_dims(g, &LieModule::trivial(g), n_max)?;
    let hit = dims.iter().enumerate().skip(2).find(|(_, &v)| v > 0);
    Ok(match hit {
        Some((n, &dim)) => Verdict::new(
            VerdictTag::NotQuasiFree,
            json!({ "degree": n, "dimension": dim, "coefficients": "trivial", "cohomology_dims": dims }),
        )
        .because(format!("HL^{n}(g, k) has dimension {dim}"))
        .because("Lie algebra cohomology with trivial coefficients is Hochschild cohomology of U(g) with coefficients in k")
        .because("nonzero Hochschild cohomology in degree >= 2 rules out quasi-freeness"),
        None => Verdict::new(VerdictTag::Inconclusive, json!({ "checked_up_to": n_max, "cohomology_dims": dims }))
            .because(format!("HL^n(g, k) = 0 for 2 <= n <= {n_max}")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nc::nc_normal_form_bounded;

    const Q: BaseField = BaseField::Rational;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn examples_validate() {
        assert_eq!(validate_lie(&LieAlgebra::abelian(2, Q)), Ok(()));
        assert_eq!(validate_lie(&LieAlgebra::sl2(Q)), Ok(()));
        let one = Q.one();
        let bad = LieAlgebra::new(vec!["a".into(), "b".into()], Q, &[(0, 1, 0, one.clone()), (1, 0, 0, one)]).unwrap();
        assert_eq!(validate_lie(&bad), Err(LieViolation::Antisymmetry { i: 0, j: 1, k: 0 }));
    }

    #[test]
    fn jacobi_failure_is_located() {
        // antisymmetric but [[a,b],c] + ... != 0
        let v = |x| Q.from_i64(x);
        let g = LieAlgebra::new(
            vec!["a".into(), "b".into(), "c".into()],
            Q,
            &[(0, 1, 0, v(1)), (1, 0, 0, v(-1)), (1, 2, 1, v(1)), (2, 1, 1, v(-1))],
        )
        .unwrap();
        assert!(matches!(validate_lie(&g), Err(LieViolation::Jacobi { i: 0, j: 1, l: 2, .. })));
        assert!(universal_envelope(&g).is_err());
    }

    #[test]
    fn envelope_relations() {
        let g = LieAlgebra::sl2(Q);
        let u = universal_envelope(&g).unwrap();
        let mut rels: Vec<String> = u.relations().iter().map(|r| u.display(r)).collect();
        rels.sort();
        assert_eq!(rels, vec!["e*f - f*e - h", "e*h - h*e + 2*e", "h*f - f*h + 2*f"]);
        let ab = universal_envelope(&LieAlgebra::abelian(2, Q)).unwrap();
        assert_eq!(ab.relations().len(), 1);
        assert_eq!(ab.display(&ab.relations()[0]), "x2*x1 - x1*x2");
        let line = universal_envelope(&LieAlgebra::abelian(1, Q)).unwrap();
        assert!(line.relations().is_empty() && line.is_unital());
    }

    #[test]
    fn straightening() {
        let g = LieAlgebra::sl2(Q);
        let u = universal_envelope(&g).unwrap();
        let ef = pbw_normal_form(&u.parse_element("e*f").unwrap(), &g).unwrap();
        assert_eq!(u.display(&ef.to_nc(Q)), "f*e + h");
        let ab = LieAlgebra::abelian(2, Q);
        let uab = universal_envelope(&ab).unwrap();
        let xy = uab.parse_element("x1*x2").unwrap();
        assert_eq!(pbw_normal_form(&xy, &ab).unwrap().to_nc(Q), xy);
    }

    #[test]
    fn straightening_matches_rewriting_up_to_degree_three() {
        let g = LieAlgebra::sl2(Q);
        let u = universal_envelope(&g).unwrap();
        let mut words = vec![vec![]];
        for len in 1..=3 {
            let prev: Vec<Vec<u32>> = words.iter().filter(|w: &&Vec<u32>| w.len() == len - 1).cloned().collect();
            for w in prev {
                for l in 0..3 {
                    let mut v = w.clone();
                    v.push(l);
                    words.push(v);
                }
            }
        }
        for w in words {
            let p = NcPolynomial::word(Q, &w);
            let pbw = pbw_normal_form(&p, &g).unwrap();
            let nf = nc_normal_form_bounded(&p, &u, 3).unwrap();
            assert!(nf.confluent);
            assert_eq!(pbw.to_nc(Q), nf.remainder, "word {w:?}");
            assert_eq!(pbw_normal_form(&pbw.to_nc(Q), &g).unwrap(), pbw);
        }
        let hef = pbw_normal_form(&u.parse_element("h*e*f").unwrap(), &g).unwrap();
        assert_eq!(u.display(&hef.to_nc(Q)), "f*h*e + h*h - 2*f*e");
    }

    #[test]
    fn sl2_cohomology() {
        let g = LieAlgebra::sl2(Q);
        assert_eq!(chevalley_eilenberg_dims(&g, &LieModule::trivial(&g), 3).unwrap(), vec![1, 0, 0, 1]);
        // semisimple with a nontrivial simple module: everything vanishes
        assert_eq!(chevalley_eilenberg_dims(&g, &LieModule::adjoint(&g), 3).unwrap(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn abelian_cohomology_is_exterior() {
        for d in 0..=4 {
            let g = LieAlgebra::abelian(d, Q);
            let dims = chevalley_eilenberg_dims(&g, &LieModule::trivial(&g), d).unwrap();
            assert_eq!(dims, (0..=d).map(|n| binomial(d, n)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn euler_characteristic_vanishes() {
        for g in [LieAlgebra::sl2(Q), LieAlgebra::abelian(3, Q), heisenberg()] {
            let d = g.dim();
            let dims = chevalley_eilenberg_dims(&g, &LieModule::trivial(&g), d).unwrap();
            let chi: i64 = dims.iter().enumerate().map(|(n, &v)| if n % 2 == 0 { v as i64 } else { -(v as i64) }).sum();
            assert_eq!(chi, 0);
        }
    }

    fn heisenberg() -> LieAlgebra {
        let v = |x| Q.from_i64(x);
        LieAlgebra::new(vec!["p".into(), "q".into(), "z".into()], Q, &[(0, 1, 2, v(1)), (1, 0, 2, v(-1))]).unwrap()
    }

    #[test]
    fn heisenberg_cohomology() {
        let g = heisenberg();
        assert_eq!(chevalley_eilenberg_dims(&g, &LieModule::trivial(&g), 3).unwrap(), vec![1, 2, 2, 1]);
    }

    /// Exterior-algebra model: `dξ^k = -Σ_{i<j} c^k_{ij} ξ^i ξ^j`, extended as a
    /// graded derivation. Must reproduce the trivial-coefficient matrices exactly.
    fn exterior_derivative(g: &LieAlgebra, n: usize) -> Matrix {
        let d = g.dim();
        let src = subsets(d, n);
        let dst = subsets(d, n + 1);
        let mut m = Matrix::zeros(dst.len(), src.len(), Q);
        for (col, &s) in src.iter().enumerate() {
            let s = members(s);
            for p in 0..s.len() {
                for i in 0..d {
                    for j in i + 1..d {
                        let c = g.constant(i, j, s[p]);
                        if c.is_zero() {
                            continue;
                        }
                        let mut seq: Vec<usize> = s[..p].to_vec();
                        seq.extend([i, j]);
                        seq.extend_from_slice(&s[p + 1..]);
                        let mut sorted = seq.clone();
                        sorted.sort();
                        sorted.dedup();
                        if sorted.len() != seq.len() {
                            continue;
                        }
                        let mut inversions = 0;
                        for a in 0..seq.len() {
                            for b in a + 1..seq.len() {
                                if seq[a] > seq[b] {
                                    inversions += 1;
                                }
                            }
                        }
                        let mask = sorted.iter().fold(0u64, |acc, &x| acc | 1 << x);
                        let row = dst.iter().position(|&t| t == mask).unwrap();
                        m.add_to(row, col, &sign((p + inversions + 1) % 2 == 1, c));
                    }
                }
            }
        }
        m
    }

    #[test]
    fn differentials_match_exterior_model() {
        for g in [LieAlgebra::sl2(Q), heisenberg(), LieAlgebra::abelian(3, Q)] {
            let c = chevalley_eilenberg_complex(&g, &LieModule::trivial(&g), g.dim()).unwrap();
            for n in 0..g.dim() {
                assert_eq!(c.differentials()[n], exterior_derivative(&g, n), "degree {n}");
            }
        }
    }

    #[test]
    fn invalid_module_rejected() {
        let g = LieAlgebra::sl2(Q);
        let mut action = LieModule::adjoint(&g).action().to_vec();
        action[0] = Matrix::identity(3, Q);
        let m = LieModule::new(&g, 3, action).unwrap();
        assert!(chevalley_eilenberg_dims(&g, &m, 2).is_err());
    }

    #[test]
    fn verdicts() {
        let v = lie_quasifree_verdict(&LieAlgebra::sl2(Q), 5).unwrap();
        assert_eq!(v.tag, VerdictTag::NotQuasiFree);
        assert_eq!(v.witness["degree"], 3);
        let v = lie_quasifree_verdict(&LieAlgebra::abelian(2, Q), 5).unwrap();
        assert_eq!(v.witness["degree"], 2);
        let v = lie_quasifree_verdict(&LieAlgebra::abelian(1, Q), 5).unwrap();
        assert_eq!(v.tag, VerdictTag::Inconclusive);
    }

    #[test]
    fn characteristic_three() {
        // [h,e] = 2e = -e in F_3; sl_2 is still a Lie algebra
        let g = LieAlgebra::sl2(BaseField::prime(3).unwrap());
        assert_eq!(validate_lie(&g), Ok(()));
        let dims = chevalley_eilenberg_dims(&g, &LieModule::trivial(&g), 3).unwrap();
        assert_eq!(dims[0], 1);
        assert_eq!(dims[3], 1);
    }
}
