//! Kähler differentials, the Jacobian criteria, and essential smoothness of
//! associative algebras through their standardization.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::comm::{CommPresentation, KrullDim};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::nc::{standardize, NcPresentation};
use crate::poly::Polynomial;
use crate::verdict::{Verdict, VerdictTag};

/// `Ω_{A|k} = coker(Jᵀ)` for `A = k[x_1..x_n]/(f_1..f_m)`.
#[derive(Clone, Debug)]
pub struct KahlerPresentation {
    pub presentation: CommPresentation,
    /// `jacobian[j][i] = ∂f_j/∂x_i`, reduced modulo the relations.
    pub jacobian: Vec<Vec<Polynomial>>,
}

impl Serialize for KahlerPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json!({ "vars": self.presentation.vars(), "jacobian": self.jacobian }).serialize(s)
    }
}

fn require_nonzero(a: &CommPresentation) -> Result<()> {
    if a.is_zero_ring() {
        Err(Error::Input("the zero ring has no Jacobian data".into()))
    } else {
        Ok(())
    }
}

pub fn kahler_presentation(a: &CommPresentation) -> Result<KahlerPresentation> {
    require_nonzero(a)?;
    let n = a.vars().len();
    let jacobian = a
        .relations()
        .iter()
        .map(|f| (0..n).map(|i| a.normal_form(&f.derivative(i))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(KahlerPresentation { presentation: a.clone(), jacobian })
}

fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Laplace expansion along the first row.
fn determinant(m: &[Vec<Polynomial>], rows: &[usize], cols: &[usize], one: &Polynomial) -> Polynomial {
    if rows.is_empty() {
        return one.clone();
    }
    let mut acc = one.sub(one);
    for (p, &c) in cols.iter().enumerate() {
        let entry = &m[rows[0]][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry.mul(&determinant(m, &rows[1..], &rest, one));
        acc = if p % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

impl KahlerPresentation {
    /// All nonzero `c×c` minors of the Jacobian, reduced, in a fixed order.
    pub fn minors(&self, c: usize) -> Result<Vec<Polynomial>> {
        let one = Polynomial::one(self.presentation.ring());
        let rows = index_subsets(self.jacobian.len(), c);
        let cols = index_subsets(self.presentation.vars().len(), c);
        let found: Vec<Result<Vec<Polynomial>>> = rows
            .par_iter()
            .map(|r| {
                let mut out = Vec::new();
                for cc in &cols {
                    let det = self.presentation.normal_form(&determinant(&self.jacobian, r, cc, &one))?;
                    if !det.is_zero() {
                        out.push(det);
                    }
                }
                Ok(out)
            })
            .collect();
        let mut all = Vec::new();
        for f in found {
            all.extend(f?);
        }
        Ok(all)
    }

    /// `I + (c×c minors)`.
    pub fn fitting_ideal(&self, c: usize) -> Result<Ideal> {
        let mut gens = self.presentation.relations().to_vec();
        gens.extend(self.minors(c)?);
        Ideal::new(self.presentation.ring(), gens)
    }
}

#[derive(Clone, Debug)]
pub enum JacobianVerdict {
    /// `certificate` writes 1 over the relations followed by the minors.
    Smooth { dimension: usize, certificate: Vec<Polynomial> },
    /// `witness` is the proper ideal `I + (minors)`.
    NotSmooth { dimension: usize, codimension: usize, witness: Ideal },
}

impl JacobianVerdict {
    pub fn is_smooth(&self) -> bool {
        matches!(self, JacobianVerdict::Smooth { .. })
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            JacobianVerdict::Smooth { dimension, certificate } => {
                json!({ "smooth": true, "dimension": dimension, "unit_certificate": certificate })
            }
            JacobianVerdict::NotSmooth { dimension, codimension, witness } => json!({
                "smooth": false,
                "dimension": dimension,
                "codimension": codimension,
                "singular_locus_ideal": witness.basis(),
            }),
        }
    }
}

/// Jacobian criterion with `c = n - dim A`: smooth iff `I + (c×c minors)` is the unit ideal.
/// Equidimensionality is assumed.
pub fn jacobian_smooth(a: &CommPresentation) -> Result<JacobianVerdict> {
    let k = kahler_presentation(a)?;
    let KrullDim::Dim(d) = a.krull_dimension() else { unreachable!("checked nonzero") };
    let c = a.vars().len() - d;
    let ideal = k.fitting_ideal(c)?;
    if ideal.is_unit() {
        let certificate = ideal
            .membership_witness(&Polynomial::one(a.ring()))?
            .ok_or_else(|| Error::Invalid("unit ideal without a unit certificate".into()))?;
        Ok(JacobianVerdict::Smooth { dimension: d, certificate })
    } else {
        Ok(JacobianVerdict::NotSmooth { dimension: d, codimension: c, witness: ideal })
    }
}

/// `Ω = 0`: the `n×n` minors together with `I` generate the unit ideal.
pub fn unramified_check(a: &CommPresentation) -> Result<bool> {
    let k = kahler_presentation(a)?;
    Ok(k.fitting_ideal(a.vars().len())?.is_unit())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EssentialMode {
    Smooth,
    Unramified,
    Etale,
}

impl FromStr for EssentialMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smooth" => Ok(EssentialMode::Smooth),
            "unramified" => Ok(EssentialMode::Unramified),
            "etale" => Ok(EssentialMode::Etale),
            other => Err(Error::Input(format!("unknown mode {other:?}; expected smooth, unramified or etale"))),
        }
    }
}

impl fmt::Display for EssentialMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EssentialMode::Smooth => "smooth",
            EssentialMode::Unramified => "unramified",
            EssentialMode::Etale => "etale",
        })
    }
}

/// Per-factor result of [`essential_check`].
#[derive(Clone, Debug, Serialize)]
pub struct FactorReport {
    pub label: &'static str,
    pub collapsed: bool,
    pub krull_dimension: KrullDim,
    pub smooth: Option<bool>,
    pub unramified: Option<bool>,
}

impl FactorReport {
    fn passes(&self, mode: EssentialMode) -> bool {
        if self.collapsed {
            return true;
        }
        match mode {
            EssentialMode::Smooth => self.smooth == Some(true),
            EssentialMode::Unramified => self.unramified == Some(true),
            EssentialMode::Etale => self.smooth == Some(true) && self.unramified == Some(true),
        }
    }
}

/// Tests the standardization `A^ς` factor by factor.
pub fn essential_check(a: &NcPresentation, mode: EssentialMode) -> Result<Verdict> {
    let s = standardize(a)?;
    let mut reports = Vec::new();
    for factor in s.factors()? {
        let p = &factor.presentation;
        let collapsed = p.is_zero_ring();
        let (smooth, unramified) = if collapsed {
            (None, None)
        } else {
            let sm = matches!(mode, EssentialMode::Smooth | EssentialMode::Etale)
                .then(|| jacobian_smooth(p).map(|v| v.is_smooth()))
                .transpose()?;
            let un = matches!(mode, EssentialMode::Unramified | EssentialMode::Etale)
                .then(|| unramified_check(p))
                .transpose()?;
            (sm, un)
        };
        reports.push(FactorReport { label: factor.label, collapsed, krull_dimension: p.krull_dimension(), smooth, unramified });
    }
    let pass = reports.iter().all(|r| r.passes(mode));
    let tag = match (mode, pass) {
        (EssentialMode::Smooth, true) => VerdictTag::Smooth,
        (EssentialMode::Smooth, false) => VerdictTag::NotSmooth,
        (EssentialMode::Unramified, true) => VerdictTag::Unramified,
        (EssentialMode::Unramified, false) => VerdictTag::Ramified,
        (EssentialMode::Etale, true) => VerdictTag::Etale,
        (EssentialMode::Etale, false) => VerdictTag::NotEtale,
    };
    let std_json = json!({
        "vars": s.presentation.vars(),
        "relations": s.presentation.relations(),
        "idempotent": s.idempotent.map(|e| s.presentation.vars()[e].clone()),
    });
    let mut v = Verdict::new(tag, json!({ "mode": mode, "standardization": std_json, "factors": reports }))
        .because("standardized: unitization followed by abelianization");
    if s.idempotent.is_some() {
        v = v.because("product model split on its central idempotent into the abelianization and unit factors");
    }
    v = v.because(match mode {
        EssentialMode::Smooth => "Jacobian criterion on every nonzero factor",
        EssentialMode::Unramified => "Kähler differentials vanish on every nonzero factor",
        EssentialMode::Etale => "Jacobian criterion and vanishing differentials on every nonzero factor",
    });
    for r in &reports {
        if r.collapsed {
            v = v.warn(format!("collapsed standardization: the {} factor is the zero ring, so it passes vacuously", r.label));
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::BaseField;

    const Q: BaseField = BaseField::Rational;

    fn q(vars: &[&str], rels: &[&str]) -> CommPresentation {
        CommPresentation::parse(vars, rels, Q).unwrap()
    }

    #[test]
    fn kahler_matrices() {
        assert!(kahler_presentation(&q(&["x"], &[])).unwrap().jacobian.is_empty());
        let parabola = kahler_presentation(&q(&["x", "y"], &["y - x^2"])).unwrap();
        let row: Vec<String> = parabola.jacobian[0].iter().map(|p| p.to_string()).collect();
        assert_eq!(row, vec!["-2*x", "1"]);
        let dual = kahler_presentation(&q(&["x"], &["x^2"])).unwrap();
        assert_eq!(dual.jacobian[0][0].to_string(), "2*x");
        assert!(kahler_presentation(&q(&["x"], &["1"])).is_err());
    }

    #[test]
    fn jacobian_examples() {
        assert!(!jacobian_smooth(&q(&["x", "y"], &["y^2 - x^3"])).unwrap().is_smooth());
        match jacobian_smooth(&q(&["x1", "x2", "x3"], &["x1^2 + x2^2 + x3^2 - 1"])).unwrap() {
            JacobianVerdict::Smooth { dimension, .. } => assert_eq!(dimension, 2),
            other => panic!("{other:?}"),
        }
        for n in 1..=4 {
            let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            match jacobian_smooth(&q(&refs, &[])).unwrap() {
                JacobianVerdict::Smooth { dimension, .. } => assert_eq!(dimension, n),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn smooth_certificate_replays() {
        let a = q(&["x", "y"], &["x^2 + y^2 - 1"]);
        let k = kahler_presentation(&a).unwrap();
        let JacobianVerdict::Smooth { certificate, .. } = jacobian_smooth(&a).unwrap() else { panic!() };
        let mut gens = a.relations().to_vec();
        gens.extend(k.minors(1).unwrap());
        let sum = crate::groebner::combine(&certificate, &gens, a.ring());
        assert!(sum.sub(&Polynomial::one(a.ring())).is_zero());
    }

    #[test]
    fn unramified_examples() {
        assert!(unramified_check(&q(&["x"], &["x^2 - 1"])).unwrap());
        assert!(!unramified_check(&q(&["x"], &[])).unwrap());
        assert!(!unramified_check(&q(&["x"], &["x^2"])).unwrap());
        // x^2 + 1 = (x + 1)^2 in characteristic 2
        let f2 = CommPresentation::parse(&["x"], &["x^2 + 1"], BaseField::prime(2).unwrap()).unwrap();
        assert!(!unramified_check(&f2).unwrap());
    }

    #[test]
    fn essential_examples() {
        let free_nonunital = NcPresentation::free(&["x", "y"], false, Q).unwrap();
        assert_eq!(essential_check(&free_nonunital, EssentialMode::Smooth).unwrap().tag, VerdictTag::Smooth);
        let free_unital = NcPresentation::free(&["x", "y"], true, Q).unwrap();
        assert_eq!(essential_check(&free_unital, EssentialMode::Smooth).unwrap().tag, VerdictTag::Smooth);
        let weyl = NcPresentation::parse(&["x", "y"], &["x*y - y*x - 1"], true, Q).unwrap();
        let v = essential_check(&weyl, EssentialMode::Smooth).unwrap();
        assert_eq!(v.tag, VerdictTag::Smooth);
        assert!(v.warnings.iter().any(|w| w.contains("collapsed")));
    }

    #[test]
    fn etale_implies_the_other_modes() {
        for (gens, rels, unital) in [
            (vec!["x"], vec!["x^2 - 1"], true),
            (vec!["x"], vec!["x^2"], true),
            (vec!["x"], vec![], false),
            (vec![], vec![], true),
        ] {
            let a = NcPresentation::parse(&gens, &rels, unital, Q).unwrap();
            let et = essential_check(&a, EssentialMode::Etale).unwrap().tag == VerdictTag::Etale;
            let sm = essential_check(&a, EssentialMode::Smooth).unwrap().tag == VerdictTag::Smooth;
            let un = essential_check(&a, EssentialMode::Unramified).unwrap().tag == VerdictTag::Unramified;
            assert_eq!(et, sm && un);
        }
    }
}
