use std::sync::Arc;

use proptest::prelude::*;

use essalg::comm::CommPresentation;
use essalg::dimension::{degeneracy_verdict, is_regular_element, is_regular_sequence, SequenceCheck};
use essalg::essential::{cover_check, replay_partition, CoverCandidate};
use essalg::groebner::{combine, Ideal};
use essalg::homology::{hochschild_dims, hochschild_dims_normalized, Bimodule, FinDimAlgebra};
use essalg::lie::{chevalley_eilenberg_complex, chevalley_eilenberg_dims, pbw_normal_form, LieAlgebra, LieModule};
use essalg::nc::{
    abelianize, commutative_as_nc, standardize, standardize_direct, unitize, AlgebraMorphism, NcPolynomial,
    NcPresentation, VerificationStatus, Word,
};
use essalg::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};
use essalg::smoothness::{essential_check, jacobian_smooth, EssentialMode};
use essalg::verdict::VerdictTag;
use essalg::BaseField;

const Q: BaseField = BaseField::Rational;

type Terms = Vec<(Vec<u32>, i64)>;

fn terms(nvars: usize, max_terms: usize, max_deg: u32) -> impl Strategy<Value = Terms> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, nvars), prop_oneof![-3i64..=-1, 1i64..=3]),
        1..=max_terms,
    )
    .prop_map(move |ts| {
        ts.into_iter()
            .map(|(mut e, c)| {
                // keep total degree bounded
                while e.iter().sum::<u32>() > max_deg {
                    let i = e.iter().position(|&x| x > 0).unwrap();
                    e[i] -= 1;
                }
                (e, c)
            })
            .collect()
    })
}

fn ring(n: usize, order: MonomialOrder) -> Arc<PolyRing> {
    let names = ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect();
    PolyRing::new(names, order, Q).unwrap()
}

fn poly(r: &Arc<PolyRing>, t: &Terms) -> Polynomial {
    Polynomial::from_terms(r, t.iter().map(|(e, c)| (Monomial::new(e.clone()), Q.from_i64(*c))))
}

fn ideal_case() -> impl Strategy<Value = (usize, Vec<Terms>, Terms)> {
    (1usize..=3).prop_flat_map(|n| (Just(n), prop::collection::vec(terms(n, 3, 3), 1..=3), terms(n, 4, 4)))
}

// colon ideals eliminate an extra variable, so keep degrees low
fn small_ideal_case() -> impl Strategy<Value = (usize, Vec<Terms>, Terms)> {
    (1usize..=3).prop_flat_map(|n| (Just(n), prop::collection::vec(terms(n, 3, 2), 1..=3), terms(n, 3, 2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn normal_forms_are_idempotent((n, gens, p) in ideal_case()) {
        let r = ring(n, MonomialOrder::Grevlex);
        let i = Ideal::new(&r, gens.iter().map(|g| poly(&r, g)).collect()).unwrap();
        let nf = i.normal_form(&poly(&r, &p)).unwrap();
        prop_assert_eq!(i.normal_form(&nf).unwrap(), nf);
    }

    #[test]
    fn membership_iff_witness((n, gens, p) in ideal_case()) {
        let r = ring(n, MonomialOrder::Grevlex);
        let i = Ideal::new(&r, gens.iter().map(|g| poly(&r, g)).collect()).unwrap();
        for q in [poly(&r, &p), combine(&[poly(&r, &p)], &i.generators()[..1], &r)] {
            let member = i.normal_form(&q).unwrap().is_zero();
            let w = i.membership_witness(&q).unwrap();
            prop_assert_eq!(member, w.is_some());
            if let Some(w) = w {
                prop_assert!(combine(&w, i.generators(), &r).sub(&q).is_zero());
            }
        }
    }

    #[test]
    fn krull_dimension_ignores_order_and_permutation((n, gens, _p) in ideal_case(), rot in 0usize..3) {
        let r = ring(n, MonomialOrder::Grevlex);
        let gs: Vec<Polynomial> = gens.iter().map(|g| poly(&r, g)).collect();
        let a = CommPresentation::new(&r, gs.clone()).unwrap();
        let d = a.krull_dimension();
        prop_assert_eq!(a.with_order(MonomialOrder::Lex).unwrap().krull_dimension(), d);
        let map: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
        let mut names = vec![String::new(); n];
        for (i, &j) in map.iter().enumerate() {
            names[j] = r.vars()[i].clone();
        }
        let pr = PolyRing::new(names, MonomialOrder::Grevlex, Q).unwrap();
        let b = CommPresentation::new(&pr, gs.iter().map(|g| g.remap(&map, &pr)).collect()).unwrap();
        prop_assert_eq!(b.krull_dimension(), d);
    }

    #[test]
    fn colon_contains_ideal_and_detects_regularity((n, gens, p) in small_ideal_case()) {
        let r = ring(n, MonomialOrder::Grevlex);
        let gs: Vec<Polynomial> = gens.iter().map(|g| poly(&r, g)).collect();
        let a = CommPresentation::new(&r, gs).unwrap();
        let f = poly(&r, &p);
        prop_assume!(!a.is_zero_ring() && !a.normal_form(&f).unwrap().is_zero());
        let colon = a.ideal().colon(&f).unwrap();
        for g in a.ideal().basis() {
            prop_assert!(colon.contains(g).unwrap());
        }
        let equal = colon == *a.ideal();
        prop_assert_eq!(is_regular_element(&a, &f).unwrap().regular, equal);
    }

    #[test]
    fn buchberger_is_deterministic((n, gens, _p) in ideal_case()) {
        let r = ring(n, MonomialOrder::Grevlex);
        let gs: Vec<Polynomial> = gens.iter().map(|g| poly(&r, g)).collect();
        let a = Ideal::new(&r, gs.clone()).unwrap();
        let b = Ideal::new(&r, gs).unwrap();
        prop_assert_eq!(format!("{:?}", a.basis()), format!("{:?}", b.basis()));
    }
}

fn nc_case() -> impl Strategy<Value = (u32, Vec<Vec<(Vec<u32>, i64)>>, bool)> {
    (1u32..=2).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(
                prop::collection::vec((prop::collection::vec(0..n, 0..=3), prop_oneof![-2i64..=-1, 1i64..=2]), 1..=3),
                0..=2,
            ),
            any::<bool>(),
        )
    })
}

fn nc_presentation(n: u32, rels: &[Vec<(Vec<u32>, i64)>], unital: bool) -> NcPresentation {
    let names = ["a", "b"][..n as usize].iter().map(|s| s.to_string()).collect();
    let rels = rels
        .iter()
        .map(|r| {
            NcPolynomial::from_terms(
                Q,
                r.iter().filter(|(w, _)| unital || !w.is_empty()).map(|(w, c)| (Word(w.clone()), Q.from_i64(*c))),
            )
        })
        .filter(|r| !r.is_zero())
        .collect();
    NcPresentation::new(names, rels, unital, Q).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn standardization_is_functorial((n, rels, unital) in nc_case()) {
        let a = nc_presentation(n, &rels, unital);
        let two_step = standardize(&a).unwrap();
        let direct = standardize_direct(&a).unwrap();
        prop_assert_eq!(two_step.presentation.ideal(), direct.presentation.ideal());
        prop_assert_eq!(two_step.idempotent, direct.idempotent);
    }

    #[test]
    fn product_unit_is_a_central_idempotent((n, rels, _u) in nc_case()) {
        let a = nc_presentation(n, &rels, true);
        let u = unitize(&a);
        let e = u.product_unit().unwrap() as u32;
        let s = standardize(&a).unwrap().presentation;
        let ev = Polynomial::var(s.ring(), e as usize);
        prop_assert!(s.normal_form(&ev.mul(&ev).sub(&ev)).unwrap().is_zero());
        for i in 0..n {
            let x = Polynomial::var(s.ring(), i as usize);
            prop_assert!(s.normal_form(&ev.mul(&x).sub(&x)).unwrap().is_zero());
        }
        prop_assert!(u.relations().contains(&NcPolynomial::word(Q, &[e, e]).sub(&NcPolynomial::letter(Q, e))));
    }

    #[test]
    fn identity_morphisms_verify((n, rels, unital) in nc_case()) {
        let a = nc_presentation(n, &rels, unital);
        let status = AlgebraMorphism::identity(&a).verify(4).unwrap();
        prop_assert_ne!(status, VerificationStatus::Unverified);
    }

    #[test]
    fn abelianization_of_commutative_input_is_trivial((n, gens, _p) in ideal_case()) {
        let r = ring(n, MonomialOrder::Grevlex);
        let c = CommPresentation::new(&r, gens.iter().map(|g| poly(&r, g)).collect()).unwrap();
        let back = abelianize(&commutative_as_nc(&c).unwrap()).unwrap();
        prop_assert_eq!(back.ideal(), c.ideal());
    }
}

/// `gl(2)` with the basis rescaled by `scales`: `[a, b] = ab - ba` in `M_2`.
fn scaled_gl2(scales: &[i64]) -> LieAlgebra {
    let m = FinDimAlgebra::matrix_algebra(2, Q);
    let mut constants = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                let c = m.constant(i, j, k) - m.constant(j, i, k);
                if !c.is_zero() {
                    // e'_i = s_i e_i gives c'^k_{ij} = s_i s_j / s_k c^k_{ij}
                    let f = Q.from_i64(scales[i] * scales[j]) * Q.from_i64(scales[k]).inv().unwrap();
                    constants.push((i, j, k, &c * &f));
                }
            }
        }
    }
    LieAlgebra::new(["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect(), Q, &constants).unwrap()
}

fn euler(dims: &[usize]) -> i64 {
    dims.iter().enumerate().map(|(n, &d)| if n % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn ce_cohomology_is_basis_independent(scales in prop::collection::vec(prop_oneof![-3i64..=-1, 1i64..=3], 4)) {
        let g = scaled_gl2(&scales);
        prop_assert!(essalg::lie::validate_lie(&g).is_ok());
        for m in [LieModule::trivial(&g), LieModule::adjoint(&g)] {
            let c = chevalley_eilenberg_complex(&g, &m, 4).unwrap();
            prop_assert!(c.check_square_zero().is_ok());
        }
        let dims = chevalley_eilenberg_dims(&g, &LieModule::trivial(&g), 4).unwrap();
        // gl(2) = sl(2) + center: (1,1,0,1,1)
        prop_assert_eq!(&dims, &vec![1, 1, 0, 1, 1]);
        prop_assert_eq!(euler(&dims), 0);
    }

    #[test]
    fn pbw_is_idempotent(word in prop::collection::vec(0u32..3, 0..=4)) {
        let g = LieAlgebra::sl2(Q);
        let once = pbw_normal_form(&NcPolynomial::word(Q, &word), &g).unwrap().to_nc(Q);
        let twice = pbw_normal_form(&once, &g).unwrap().to_nc(Q);
        prop_assert_eq!(once, twice);
    }
}

#[test]
fn euler_characteristic_vanishes() {
    for d in 1..=4 {
        let g = LieAlgebra::abelian(d, Q);
        assert_eq!(euler(&chevalley_eilenberg_dims(&g, &LieModule::trivial(&g), d).unwrap()), 0);
    }
    let g = LieAlgebra::sl2(Q);
    assert_eq!(euler(&chevalley_eilenberg_dims(&g, &LieModule::trivial(&g), 3).unwrap()), 0);
}

#[test]
fn hochschild_zero_is_the_center() {
    for a in [
        FinDimAlgebra::matrix_algebra(2, Q),
        FinDimAlgebra::truncated_polynomial(3, Q),
        FinDimAlgebra::product_of_fields(3, Q),
    ] {
        let hh = hochschild_dims(&a, &Bimodule::regular(&a), 1).unwrap();
        assert_eq!(hh[0], a.center_dim());
    }
}

#[test]
fn separable_algebras_have_no_higher_cohomology() {
    for (a, n_max) in [
        (FinDimAlgebra::product_of_fields(4, Q), 3),
        (FinDimAlgebra::matrix_algebra(2, Q), 2),
        (FinDimAlgebra::product_of_fields(2, Q), 3),
    ] {
        let m = Bimodule::regular(&a);
        let full = hochschild_dims(&a, &m, n_max).unwrap();
        assert!(full[1..].iter().all(|&d| d == 0), "{full:?}");
        assert_eq!(full, hochschild_dims_normalized(&a, &m, n_max).unwrap());
    }
}

#[test]
fn coordinate_sequences_are_regular() {
    for n in 1..=4 {
        let r = ring(n, MonomialOrder::Grevlex);
        let a = CommPresentation::new(&r, Vec::new()).unwrap();
        for k in 1..=n {
            let seq: Vec<Polynomial> = (0..k).map(|i| Polynomial::var(&r, i)).collect();
            assert!(matches!(is_regular_sequence(&a, &seq).unwrap(), SequenceCheck::Certified(_)));
        }
        let j = jacobian_smooth(&a).unwrap();
        assert!(matches!(j, essalg::smoothness::JacobianVerdict::Smooth { dimension, .. } if dimension == n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn scaled_sequences_stay_certified(c1 in prop_oneof![-5i64..=-1, 1i64..=5], c2 in prop_oneof![-5i64..=-1, 1i64..=5]) {
        let a = CommPresentation::parse(&["x", "y", "z"], &["x*z - y^2"], Q).unwrap();
        let seq = [a.parse_element("x").unwrap(), a.parse_element("z").unwrap()];
        prop_assert!(matches!(is_regular_sequence(&a, &seq).unwrap(), SequenceCheck::Certified(_)));
        let scaled = [seq[0].scale(&Q.from_i64(c1)), seq[1].scale(&Q.from_i64(c2))];
        match is_regular_sequence(&a, &scaled).unwrap() {
            SequenceCheck::Certified(cert) => prop_assert!(cert.replay().unwrap()),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn localized_affine_space_is_not_quasi_free(t in terms(4, 3, 2)) {
        let r = ring(4, MonomialOrder::Grevlex);
        let q = Polynomial::one(&r).add(&poly(&r, &t).mul(&Polynomial::var(&r, 0)));
        let a = CommPresentation::new(&r, Vec::new()).unwrap();
        let loc = a.localization_model(&q).unwrap().presentation;
        prop_assert_eq!(degeneracy_verdict(&loc, None).unwrap().tag, VerdictTag::NotQuasiFree);
    }

    #[test]
    fn etale_implies_smooth_and_unramified((n, gens, _p) in ideal_case()) {
        let r = ring(n, MonomialOrder::Grevlex);
        let c = CommPresentation::new(&r, gens.iter().map(|g| poly(&r, g)).collect()).unwrap();
        prop_assume!(!c.is_zero_ring());
        let a = commutative_as_nc(&c).unwrap();
        let tag = |m| essential_check(&a, m).unwrap().tag;
        if tag(EssentialMode::Etale) == VerdictTag::Etale {
            prop_assert_eq!(tag(EssentialMode::Smooth), VerdictTag::Smooth);
            prop_assert_eq!(tag(EssentialMode::Unramified), VerdictTag::Unramified);
        }
    }

    #[test]
    fn scaled_covers_stay_verified(s1 in prop_oneof![-4i64..=-1, 1i64..=4], s2 in prop_oneof![-4i64..=-1, 1i64..=4]) {
        let line = CommPresentation::parse(&["x"], &[], Q).unwrap();
        let f = [line.parse_element("x").unwrap(), line.parse_element("x - 1").unwrap()];
        let y = [line.parse_element("1").unwrap(), line.parse_element("-1").unwrap()];
        prop_assert!(replay_partition(&line, &f, &y).unwrap());
        let (a, b) = (Q.from_i64(s1), Q.from_i64(s2));
        let fs = [f[0].scale(&a), f[1].scale(&b)];
        let ys = [y[0].scale(&a.inv().unwrap()), y[1].scale(&b.inv().unwrap())];
        prop_assert!(replay_partition(&line, &fs, &ys).unwrap());
        let v = cover_check(&CoverCandidate::new(line.clone(), fs.to_vec())).unwrap();
        prop_assert_eq!(v.tag, VerdictTag::Verified);
    }
}
