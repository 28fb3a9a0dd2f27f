//! Hand-computed values checked against the library.

use std::f64::consts::{FRAC_PI_2, PI};

use mplus_core::ainfty::{verify_gapped, ClassIndex, FiltrationMonoid};
use mplus_core::census::{
    census, chart_coords, cyclic_orientation, reference_marks, solve_disc, t_pqr, Maslov4Class,
    Orientation, RESIDUAL_TOL,
};
use mplus_core::chain::{ce_symmetrize, one_minus_t, symmetrize_n, t_rotate};
use mplus_core::hochschild::{connes_representative, cyclic_cycle_check, d_hoch};
use mplus_core::pairing::{m_plus, m_plus_chain};
use mplus_core::{
    koszul_sign, AInfinityStructure, ChainElement, CliffordModel, Energy, FieldValue,
    GradedElement, Letter, NovikovScalar, Sign, TensorWord, TorusPoint,
};

fn cap() -> Energy {
    Energy::from_int(2)
}

fn t(c: FieldValue, e: i64) -> NovikovScalar {
    NovikovScalar::monomial(c, Energy::from_int(e), &cap())
}

fn q(n: i64, d: i64) -> FieldValue {
    FieldValue::from_ratio(n, d)
}

fn model() -> CliffordModel {
    CliffordModel::build().unwrap()
}

fn word(m: &CliffordModel, names: &[&str]) -> Vec<Letter> {
    names.iter().map(|n| m.letter(n)).collect()
}

fn m2(m: &CliffordModel, a: &str, b: &str) -> GradedElement {
    let c = m.structure.cap();
    m.structure
        .apply_m(
            2,
            &[
                GradedElement::basis(m.letter(a), c),
                GradedElement::basis(m.letter(b), c),
            ],
        )
        .unwrap()
}

#[test]
fn scalar_examples() {
    let one = NovikovScalar::one(&cap());
    assert_eq!(&one * &one, one);
    let cap1 = Energy::from_int(1);
    let a = NovikovScalar::monomial(q(3, 2), Energy::from_int(1), &cap1);
    let b = NovikovScalar::monomial(FieldValue::one(), Energy::from_int(1), &cap1);
    assert!((&a * &b).is_zero());
    let x = FieldValue::from_parts((1, 1), (1, 1));
    let y = FieldValue::from_parts((1, 1), (-1, 1));
    assert_eq!(x * y, FieldValue::from_int(-1));
}

#[test]
fn koszul_examples() {
    let s = koszul_sign(&["a", "b", "c"], &["c", "a", "b"], |_| 0).unwrap();
    assert_eq!(s, Sign::Plus);
    let s = koszul_sign(&["m", "n"], &["n", "m"], |_| 1).unwrap();
    assert_eq!(s, Sign::Minus);
    // m m x1 x2 x3 -> m x2 x3 m x1: the second m crosses only even letters.
    let before = ["m", "M", "x1", "x2", "x3"];
    let after = ["m", "x2", "x3", "M", "x1"];
    let deg = |l: &&str| if l.starts_with(['m', 'M']) { 1 } else { 0 };
    assert_eq!(koszul_sign(&before, &after, deg).unwrap(), Sign::Plus);
    let after = ["M", "x2", "x3", "m", "x1"];
    assert_eq!(koszul_sign(&before, &after, deg).unwrap(), Sign::Minus);
}

#[test]
fn rotation_examples() {
    let m = model();
    let b = m.basis();
    let one = NovikovScalar::one(&cap());
    let w = TensorWord::new(word(&m, &["f_1", "f_12"]), one.clone()).unwrap();
    let r = t_rotate(b, &w);
    assert_eq!(r.letters, word(&m, &["f_12", "f_1"]));
    assert_eq!(r.coeff, one);
    let w = TensorWord::new(word(&m, &["f_12", "e"]), one.clone()).unwrap();
    let r = t_rotate(b, &w);
    assert_eq!(r.letters, word(&m, &["e", "f_12"]));
    assert_eq!(r.coeff, -one.clone());
    let w = TensorWord::new(word(&m, &["f_1", "f_2", "f_1", "f_2"]), one).unwrap();
    let mut r = w.clone();
    for _ in 0..4 {
        r = t_rotate(b, &r);
    }
    assert_eq!(r, w);
}

#[test]
fn symmetrization_examples() {
    let m = model();
    let b = m.basis();
    let c = cap();
    let n = symmetrize_n(
        b,
        &ChainElement::basis_word(word(&m, &["f_1", "f_1", "f_12"]), &c),
    );
    let mut expect = ChainElement::zero(&c);
    for w in [
        ["f_1", "f_1", "f_12"],
        ["f_12", "f_1", "f_1"],
        ["f_1", "f_12", "f_1"],
    ] {
        expect.add(&ChainElement::basis_word(word(&m, &w), &c));
    }
    assert_eq!(n, expect);
    assert!(one_minus_t(b, &ChainElement::basis_word(word(&m, &["f_2"]), &c)).is_zero());
    assert_eq!(
        symmetrize_n(b, &expect),
        expect.scaled_field(&FieldValue::from_int(3))
    );

    let ce = ce_symmetrize(b, &word(&m, &["f_1", "f_2"]), &c, 4).unwrap();
    let mut expect = ChainElement::basis_word(word(&m, &["f_1", "f_2"]), &c);
    expect.add(&ChainElement::basis_word(word(&m, &["f_2", "f_1"]), &c));
    assert_eq!(ce, expect);
    let ce = ce_symmetrize(b, &word(&m, &["e", "f_12"]), &c, 4).unwrap();
    let expect = ChainElement::basis_word(word(&m, &["e", "f_12"]), &c)
        .minus(&ChainElement::basis_word(word(&m, &["f_12", "e"]), &c));
    assert_eq!(ce, expect);
}

#[test]
fn product_table() {
    let m = model();
    let (f1, f2, f12, e) = (
        m.letter("f_1"),
        m.letter("f_2"),
        m.letter("f_12"),
        m.letter("e"),
    );
    assert_eq!(m2(&m, "f_1", "f_1").coeff(e), t(q(3, 2), 1));
    assert_eq!(m2(&m, "f_2", "f_2").coeff(e), t(q(1, 2), 1));
    assert_eq!(m2(&m, "e", "f_1").coeff(f1), t(FieldValue::one(), 0));
    // m_2(e,x) = (−1)^{deg x} m_2(x,e)
    assert_eq!(m2(&m, "f_1", "e").coeff(f1), t(FieldValue::from_int(-1), 0));
    assert_eq!(m2(&m, "e", "f_12").coeff(f12), t(FieldValue::one(), 0));
    assert_eq!(m2(&m, "f_1", "f_2").coeff(f12), t(FieldValue::one(), 0));
    assert_eq!(
        m2(&m, "f_2", "f_1").coeff(f12),
        t(FieldValue::from_int(-1), 0)
    );
    assert_eq!(m2(&m, "f_12", "f_1").coeff(f2), t(q(-3, 2), 1));
    assert_eq!(m2(&m, "f_1", "f_12").coeff(f2), t(q(-3, 2), 1));
    assert_eq!(m2(&m, "f_12", "f_2").coeff(f1), t(q(1, 2), 1));
    let c = m.structure.cap();
    for l in m.basis().letters() {
        let out = m
            .structure
            .apply_m(1, &[GradedElement::basis(l, c)])
            .unwrap();
        assert!(out.is_zero());
    }
    // e-basis: e_i e_j + e_j e_i = H_ij T with H = [[2,1],[1,2]]
    let h = m.e_model().unwrap();
    let hb = h.structure.basis();
    let eu = hb.letter("e").unwrap();
    let prod = |a: &str, b: &str| {
        h.structure
            .apply_m(
                2,
                &[
                    GradedElement::basis(hb.letter(a).unwrap(), c),
                    GradedElement::basis(hb.letter(b).unwrap(), c),
                ],
            )
            .unwrap()
            .coeff(eu)
    };
    assert_eq!(prod("e_1", "e_1"), t(FieldValue::one(), 1));
    assert_eq!(prod("e_2", "e_2"), t(FieldValue::one(), 1));
    assert_eq!(prod("e_1", "e_2"), t(q(1, 2), 1));
    assert_eq!(prod("e_2", "e_1"), t(q(1, 2), 1));
}

#[test]
fn m3_constants() {
    let m = model();
    let c = m.structure.cap();
    let apply = |names: &[&str]| {
        let inputs: Vec<GradedElement> = names
            .iter()
            .map(|n| GradedElement::basis(m.letter(n), c))
            .collect();
        m.structure.apply_m(3, &inputs).unwrap()
    };
    // (1/6)((−√2)^3 + 2 (1/√2)^3) = (1/6)(−2√2 + √2/2) = −√2/4
    let expected = FieldValue::from_parts((0, 1), (-1, 4));
    assert_eq!(
        apply(&["f_1", "f_1", "f_1"]).coeff(m.letter("e")),
        t(expected, 1)
    );
    assert!(apply(&["e", "f_1", "f_2"]).is_zero());
    let expected = FieldValue::from_parts((0, 1), (-1, 12));
    assert_eq!(
        apply(&["f_12", "f_2", "f_2"]).coeff(m.letter("f_2")),
        t(expected, 1)
    );
}

#[test]
fn pairing_examples() {
    let m = model();
    let p = &m.pairing;
    let l = |n: &str| m.letter(n);
    assert_eq!(p.entry(l("f_1"), l("f_2")), FieldValue::one());
    assert_eq!(p.entry(l("f_2"), l("f_1")), FieldValue::from_int(-1));
    assert_eq!(p.entry(l("e"), l("f_12")), FieldValue::one());
    assert_eq!(p.entry(l("f_12"), l("e")), FieldValue::one());
    assert!(p.entry(l("f_1"), l("f_1")).is_zero());
    let h = m.e_model().unwrap();
    let hb = h.structure.basis();
    assert_eq!(
        h.pairing
            .entry(hb.letter("e_1").unwrap(), hb.letter("e_2").unwrap()),
        FieldValue::from_int(-1)
    );
}

#[test]
fn hat_d_examples() {
    let m = model();
    let s = m.reduced();
    let one = NovikovScalar::one(&cap());
    let single = TensorWord::new(word(&m, &["f_1"]), one.clone()).unwrap();
    assert!(s.hat_d(&single).unwrap().is_zero());
    let w = TensorWord::new(word(&m, &["f_2", "f_1"]), one.clone()).unwrap();
    let d = s.hat_d(&w).unwrap();
    let expect = ChainElement::basis_word(word(&m, &["f_12"]), &cap())
        .scaled_field(&FieldValue::from_int(-1));
    assert_eq!(d, expect);
    assert!(s.hat_d_chain(&m.build_alpha()).unwrap().is_zero());

    let zero = AInfinityStructure::new(m.basis().clone(), None, cap(), 4);
    assert!(zero.verify_ainfty(4).passed);
}

#[test]
fn perturbed_model_fails_at_expected_word() {
    let m = model();
    let mut s = m.reduced();
    let word12 = word(&m, &["f_12", "f_1"]);
    s.set(&m.energy_one(), &word12, Default::default()).unwrap();
    let r = s.verify_ainfty(3);
    assert!(!r.passed);
    let rel = s.relation(&word(&m, &["f_2", "f_1", "f_1"])).unwrap();
    assert!(!rel.is_zero());
}

#[test]
fn gapped_examples() {
    let good = FiltrationMonoid::new([ClassIndex::zero(), ClassIndex::new(Energy::from_int(1), 2)]);
    assert!(verify_gapped(&good, &cap(), 4096).passed);
    let bad = FiltrationMonoid::new([ClassIndex::zero(), ClassIndex::new(Energy::zero(), 2)]);
    assert!(!verify_gapped(&bad, &cap(), 4096).passed);
    let accumulating =
        FiltrationMonoid::new((1..=5000).map(|n| ClassIndex::new(Energy::from_ratio(1, n), 2)));
    assert!(!verify_gapped(&accumulating, &cap(), 4096).passed);
}

#[test]
fn m_plus_examples() {
    let m = model();
    let s = m.reduced();
    let one = NovikovScalar::one(&cap());
    let w = TensorWord::new(word(&m, &["f_1", "f_1", "f_12"]), one.clone()).unwrap();
    assert_eq!(m_plus(&s, &m.pairing, &w).unwrap(), t(q(3, 2), 1));
    let rotated = t_rotate(m.basis(), &w);
    assert_eq!(m_plus(&s, &m.pairing, &rotated).unwrap(), t(q(3, 2), 1));
    for l in m.basis().letters() {
        let w = TensorWord::new(vec![l], one.clone()).unwrap();
        assert!(m_plus(&s, &m.pairing, &w).unwrap().is_zero());
    }
}

#[test]
fn alpha_value_and_groups() {
    let m = model();
    let alpha = m.build_alpha();
    let groups = m.alpha_groups();
    assert_eq!(groups.iter().map(|g| g.len()).sum::<usize>(), 9);
    let s = m.reduced();
    let vals: Vec<NovikovScalar> = groups
        .iter()
        .map(|g| m_plus_chain(&s, &m.pairing, g).unwrap())
        .collect();
    assert_eq!(vals[0], t(q(9, 2), 1));
    assert_eq!(vals[1], t(q(9, 2), 1));
    assert_eq!(vals[2], t(FieldValue::from_int(9), 1));
    assert_eq!(
        m_plus_chain(&s, &m.pairing, &alpha).unwrap(),
        t(FieldValue::from_int(18), 1)
    );
    let third = alpha.scaled_field(&q(1, 3));
    assert_eq!(
        m_plus_chain(&s, &m.pairing, &third).unwrap(),
        t(FieldValue::from_int(6), 1)
    );
    assert!(one_minus_t(m.basis(), &alpha).is_zero());
}

#[test]
fn hochschild_examples() {
    let m = model();
    let s = m.reduced();
    let one = NovikovScalar::one(&cap());
    let w = TensorWord::new(word(&m, &["f_1"]), one.clone()).unwrap();
    assert!(d_hoch(&s, &w).unwrap().is_zero());
    let w = TensorWord::new(word(&m, &["f_1", "f_1"]), one.clone()).unwrap();
    let expect = ChainElement::from_word(
        TensorWord::new(word(&m, &["e"]), t(FieldValue::from_int(3), 1)).unwrap(),
    );
    assert_eq!(d_hoch(&s, &w).unwrap(), expect);

    assert!(cyclic_cycle_check(&s, &m.build_alpha()).passed);
    let n2 = symmetrize_n(
        m.basis(),
        &ChainElement::basis_word(word(&m, &["f_1", "f_1"]), &cap()),
    );
    assert!(!cyclic_cycle_check(&s, &n2).passed);

    let n3 = symmetrize_n(
        m.basis(),
        &ChainElement::basis_word(word(&m, &["f_1", "f_1", "f_12"]), &cap()),
    );
    let rep = connes_representative(m.basis(), &n3);
    assert_eq!(
        rep,
        ChainElement::basis_word(word(&m, &["f_1", "f_1", "f_12"]), &cap())
            .scaled_field(&FieldValue::from_int(3))
    );
}

#[test]
fn orientation_examples() {
    assert_eq!(cyclic_orientation(0.0, FRAC_PI_2, PI), Orientation::Ccw);
    assert_eq!(cyclic_orientation(0.0, -FRAC_PI_2, -PI), Orientation::Cw);
    assert_eq!(cyclic_orientation(0.0, 0.0, PI), Orientation::Degenerate);
}

#[test]
fn disc_examples() {
    let marks = reference_marks(Orientation::Ccw);
    let angles = marks.map(|z| z.arg());
    let d = solve_disc(&[angles]).unwrap().expect("disc");
    assert!(d.factors[0].center().norm() < 1e-12);
    assert!(d.factors[0].c.abs() < 1e-12);
    assert!(solve_disc(&[[0.0, 1.0, 2.0], [0.0, -1.0, -2.0]])
        .unwrap()
        .is_none());
    let d = solve_disc(&[[0.3, 1.9, 4.0], [5.0, 0.2, 2.0]])
        .unwrap()
        .expect("disc");
    assert!(d.residual < RESIDUAL_TOL);
}

#[test]
fn chart_examples() {
    for class in Maslov4Class::ALL {
        let (x, y) = chart_coords(&TorusPoint::origin(), class);
        assert!(x.abs() < 1e-12 && y.abs() < 1e-12);
    }
    let (x, y) = chart_coords(&TorusPoint::new(FRAC_PI_2, PI), Maslov4Class::B02);
    assert!((x - 3.0 * FRAC_PI_2).abs() < 1e-12);
    assert!((y - FRAC_PI_2).abs() < 1e-12);
}

#[test]
fn census_examples() {
    let p = TorusPoint::new(0.1, 0.2);
    assert!(t_pqr(&p, &p, &p).is_err());
    let r = census(&p, &TorusPoint::new(2.0, 1.1), &TorusPoint::new(4.3, 5.0)).unwrap();
    assert!(r.total == 0 || r.total == 2);
    assert!(r.cyclic_count <= 1);
}
