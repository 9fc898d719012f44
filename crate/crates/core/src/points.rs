//! Brute-force enumeration of `Hom(A, B)` for small algebras `B` over `F_p`.

use std::ops::{Add, Mul};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{BaseField, Scalar};
use crate::homology::FinDimAlgebra;
use crate::nc::{abelianize, commutative_as_nc, unitize, NcPolynomial, NcPresentation};

/// Largest number of candidate tuples scanned by one enumeration.
pub const MAX_TUPLES: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct PointFlags {
    /// Maps must send `1_A` to `1_B`.
    pub unital_maps_only: bool,
    /// Images must pairwise commute.
    pub commutative_category: bool,
}

impl PointFlags {
    pub const UNITAL: PointFlags = PointFlags { unital_maps_only: true, commutative_category: false };
    pub const NONUNITAL: PointFlags = PointFlags { unital_maps_only: false, commutative_category: false };
}

/// One homomorphism: generator images as coordinate vectors of residues, and
/// for a unital source, the image of its unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub images: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit_image: Option<Vec<u32>>,
}

#[derive(Clone, Debug)]
pub struct PointSet {
    pub source: NcPresentation,
    pub target: FinDimAlgebra,
    pub flags: PointFlags,
    pub points: Vec<Point>,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    /// Re-evaluates every relation of the source on every stored point with
    /// exact field arithmetic.
    pub fn verify(&self) -> bool {
        let b = &self.target;
        let field = b.field();
        let to_vec = |v: &[u32]| -> Vec<Scalar> { v.iter().map(|&r| field.from_i64(r as i64)).collect() };
        let zero = vec![field.zero(); b.dim()];
        self.points.iter().all(|p| {
            let images: Vec<Vec<Scalar>> = p.images.iter().map(|v| to_vec(v)).collect();
            let unit = p.unit_image.as_ref().map(|u| to_vec(u)).unwrap_or_else(|| zero.clone());
            if self.flags.unital_maps_only && self.source.is_unital() && unit != b.unit() {
                return false;
            }
            self.source.relations().iter().all(|r| {
                let v = r.evaluate(
                    &images,
                    &unit,
                    &zero,
                    |x, y| x.iter().zip(y).map(|(a, c)| a.add(c)).collect(),
                    |x, y| b.mul(x, y),
                    |c, x| x.iter().map(|a| a.mul(c)).collect(),
                );
                v.iter().all(Scalar::is_zero)
            })
        })
    }
}

/// `B` with its structure constants as residues mod `p`.
struct Table {
    p: u32,
    dim: usize,
    constants: Vec<(usize, usize, usize, u32)>,
}

impl Table {
    fn new(b: &FinDimAlgebra, p: u32) -> Self {
        let constants = b
            .nonzero_constants()
            .into_iter()
            .map(|(i, j, k, c)| (i, j, k, c.residue().expect("prime field")))
            .collect();
        Table { p, dim: b.dim(), constants }
    }

    fn mul(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut out = vec![0u64; self.dim];
        for &(i, j, k, c) in &self.constants {
            if u[i] != 0 && v[j] != 0 {
                out[k] = (out[k] + u[i] as u64 * v[j] as u64 % p * c as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    fn commute(&self, u: &[u32], v: &[u32]) -> bool {
        self.mul(u, v) == self.mul(v, u)
    }

    fn eval(&self, r: &[(Vec<u32>, u32)], images: &[Vec<u32>], unit: &[u32]) -> bool {
        let p = self.p as u64;
        let mut acc = vec![0u64; self.dim];
        for (w, c) in r {
            let mut t = match w.first() {
                Some(&l) => images[l as usize].clone(),
                None => unit.to_vec(),
            };
            for &l in w.iter().skip(1) {
                t = self.mul(&t, &images[l as usize]);
            }
            for (a, x) in acc.iter_mut().zip(t) {
                *a = (*a + *c as u64 * x as u64) % p;
            }
        }
        acc.iter().all(|&x| x == 0)
    }
}

fn residue_relations(a: &NcPresentation) -> Vec<Vec<(Vec<u32>, u32)>> {
    a.relations()
        .iter()
        .map(|r: &NcPolynomial| r.terms().map(|(w, c)| (w.0.clone(), c.residue().expect("prime field"))).collect())
        .collect()
}

/// All homomorphisms `A -> B`, in lexicographic order of the coordinate
/// vectors (generator images first, then the unit image when it varies).
///
/// For a unital `A` without `unital_maps_only`, the image `ε` of `1_A` ranges
/// over idempotents of `B` acting as a two-sided unit on the other images.
pub fn enumerate_homs(a: &NcPresentation, b: &FinDimAlgebra, flags: PointFlags) -> Result<PointSet> {
    let BaseField::Prime { p } = b.field() else {
        return Err(Error::Unsupported("points are enumerated over prime fields only".into()));
    };
    if a.field() != b.field() {
        return Err(Error::Input(format!("source over {:?}, target over {:?}", a.field(), b.field())));
    }
    let dim = b.dim();
    let n = a.generators().len();
    let fixed_unit = a.is_unital() && flags.unital_maps_only;
    let free_unit = a.is_unital() && !flags.unital_maps_only;
    let slots = n + usize::from(free_unit);
    let coords = (slots * dim) as u32;
    let total = (p as u64)
        .checked_pow(coords)
        .filter(|&t| t <= MAX_TUPLES)
        .ok_or(Error::Resource { budget: "points", limit: MAX_TUPLES })?;
    let table = Table::new(b, p);
    let rels = residue_relations(a);
    let unit_b: Vec<u32> = b.unit().iter().map(|c| c.residue().expect("prime field")).collect();
    let decode = |mut idx: u64| -> Vec<Vec<u32>> {
        let mut digits = vec![0u32; coords as usize];
        for d in digits.iter_mut().rev() {
            *d = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        if dim == 0 {
            return vec![Vec::new(); slots];
        }
        digits.chunks(dim).map(<[u32]>::to_vec).collect()
    };
    let test = |idx: u64| -> Option<Point> {
        let mut images = decode(idx);
        let unit: Vec<u32> = if free_unit {
            let eps = images.pop().expect("unit slot");
            if table.mul(&eps, &eps) != eps {
                return None;
            }
            if images.iter().any(|x| table.mul(&eps, x) != *x || table.mul(x, &eps) != *x) {
                return None;
            }
            eps
        } else if fixed_unit {
            unit_b.clone()
        } else {
            vec![0; dim]
        };
        if flags.commutative_category {
            for j in 0..images.len() {
                for i in 0..j {
                    if !table.commute(&images[i], &images[j]) {
                        return None;
                    }
                }
            }
            if free_unit && images.iter().any(|x| !table.commute(x, &unit)) {
                return None;
            }
        }
        if !rels.iter().all(|r| table.eval(r, &images, &unit)) {
            return None;
        }
        Some(Point { images, unit_image: a.is_unital().then_some(unit) })
    };
    let points: Vec<Point> = (0..total as usize).into_par_iter().filter_map(|i| test(i as u64)).collect();
    Ok(PointSet { source: a.clone(), target: b.clone(), flags, points })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SetRelation {
    Equal,
    StrictSubset,
    StrictSuperset,
    Incomparable,
}

impl SetRelation {
    pub fn of(left: &PointSet, right: &PointSet) -> SetRelation {
        let l_in_r = left.points.iter().all(|p| right.contains(p));
        let r_in_l = right.points.iter().all(|p| left.contains(p));
        match (l_in_r, r_in_l) {
            (true, true) => SetRelation::Equal,
            (true, false) => SetRelation::StrictSubset,
            (false, true) => SetRelation::StrictSuperset,
            (false, false) => SetRelation::Incomparable,
        }
    }
}

/// Factorization through the abelianization for a commutative target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianCheck {
    pub source_count: usize,
    pub abelianization_count: usize,
    /// Restriction along `A -> A^{ab}` is a bijection on unital points.
    pub bijective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointComparison {
    pub target: usize,
    pub target_dim: usize,
    pub left_count: usize,
    pub right_count: usize,
    pub relation: SetRelation,
    /// Points in the left set that are missing on the right, up to a few.
    pub left_only: Vec<Point>,
    pub right_only: Vec<Point>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abelianization: Option<AbelianCheck>,
}

/// How many differing points a comparison reports.
const SHOWN_DIFFERENCES: usize = 4;

/// Enumerates `A` into each target under two flag settings and relates the sets.
pub fn compare_point_sets(
    a: &NcPresentation,
    family: &[FinDimAlgebra],
    left: PointFlags,
    right: PointFlags,
) -> Result<Vec<PointComparison>> {
    family
        .iter()
        .enumerate()
        .map(|(idx, b)| {
            let l = enumerate_homs(a, b, left)?;
            let r = enumerate_homs(a, b, right)?;
            let abelianization = if b.is_commutative() { Some(abelian_check(a, b)?) } else { None };
            let diff = |x: &PointSet, y: &PointSet| -> Vec<Point> {
                x.points.iter().filter(|p| !y.contains(p)).take(SHOWN_DIFFERENCES).cloned().collect()
            };
            Ok(PointComparison {
                target: idx,
                target_dim: b.dim(),
                left_count: l.len(),
                right_count: r.len(),
                relation: SetRelation::of(&l, &r),
                left_only: diff(&l, &r),
                right_only: diff(&r, &l),
                abelianization,
            })
        })
        .collect()
}

/// Compares unital points of `A` with those of `(A_1)^{ab}` presented with commutators.
pub fn abelian_check(a: &NcPresentation, b: &FinDimAlgebra) -> Result<AbelianCheck> {
    let src = enumerate_homs(a, b, PointFlags::UNITAL)?;
    let ab = commutative_as_nc(&abelianize(&unitize_plain(a))?)?;
    let via = enumerate_homs(&ab, b, PointFlags::UNITAL)?;
    let images = |s: &PointSet| -> Vec<Vec<Vec<u32>>> { s.points.iter().map(|p| p.images.clone()).collect() };
    Ok(AbelianCheck {
        source_count: src.len(),
        abelianization_count: via.len(),
        bijective: images(&src) == images(&via),
    })
}

/// A unital presentation of the same generators and relations; a nonunital
/// `A` gains a unit, and `Hom_unital(A_1, B) = Hom(A, B)`.
fn unitize_plain(a: &NcPresentation) -> NcPresentation {
    if a.is_unital() {
        a.clone()
    } else {
        unitize(a)
    }
}
