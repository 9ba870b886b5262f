mod common;

use common::*;
use num_traits::Zero;
use proptest::prelude::*;
use spinorlab::matrix::Matrix;
use spinorlab::scalar::{self, int, Gauss};
use spinorlab::spin_rep::{
    build_j, build_rep, clif_to_tensor, dual_matrix, hermitian, pair, sigma_to_dual, tensor_to_clif, vector_pair,
    StructureKind, VectorRelation,
};
use spinorlab::witt::{
    build_witt, complex_structure, diagonal, killing_grade, p_minus, p_plus, tangent, IdealSpinor, KillingSign,
};
use spinorlab::{Blade, CliffordElement, Error, Sampler, Vector};

fn i_times(k: i64) -> Gauss {
    Gauss::new(Zero::zero(), scalar::rational(k, 1))
}

#[test]
fn spinor_dimensions() {
    for n in 1..=8 {
        let rep = build_rep(n).unwrap();
        assert_eq!(rep.d(), 1 << (n / 2));
        assert_eq!(rep.is_odd(), n % 2 == 1);
    }
    assert!(build_rep(0).is_err());
}

#[test]
fn two_dimensional_gammas() {
    let rep = build_rep(2).unwrap();
    let (a, b) = (rep.gamma(0), rep.gamma(1));
    let minus = Matrix::scalar(2, &int(-1));
    assert_eq!(&a * &a, minus);
    assert_eq!(&b * &b, minus);
    assert!((&(&a * &b) + &(&b * &a)).is_zero());
    // the complex volume i·e_1e_2 is an involution with trace zero
    let w = &(&a * &b).scale(&scalar::imag_unit());
    assert!((w * w).is_identity());
    assert!(w.trace().is_zero());
}

#[test]
fn complex_volume_acts_as_identity_in_odd_dimensions() {
    for n in [1, 3, 5, 7] {
        let rep = build_rep(n).unwrap();
        assert!(rep.delta(&rep.complex_volume()).unwrap().is_identity());
    }
}

#[test]
fn real_structure_kinds() {
    for n in 1..=8 {
        let rep = build_rep(n).unwrap();
        let j = build_j(&rep).unwrap();
        let expected = match n % 8 {
            2..=4 => StructureKind::Quaternionic,
            _ => StructureKind::Real,
        };
        if n % 8 != 1 && n % 8 != 5 {
            assert_eq!(j.kind(), expected, "n = {n}");
        }
        // ȷ² = ±Id
        let d = rep.d();
        let mut s = Sampler::new(n as u64);
        let x = s.spinor(d);
        let twice = j.apply(&j.apply(&x));
        let sign = if j.kind() == StructureKind::Real { int(1) } else { int(-1) };
        assert_eq!(twice, x.iter().map(|c| c * &sign).collect::<Vec<_>>());
        let rel = if n % 4 == 1 { VectorRelation::Anticommutes } else { VectorRelation::Commutes };
        assert_eq!(j.vector_relation(), rel, "n = {n}");
    }
}

#[test]
fn tensor_model_is_bijective_on_blades() {
    for n in 1..=4 {
        let rep = build_rep(n).unwrap();
        let j = build_j(&rep).unwrap();
        for m in 0..1u32 << n {
            let e = CliffordElement::from_blade(n, Blade(m), int(1));
            let t = clif_to_tensor(&rep, &j, &e).unwrap();
            assert_eq!(tensor_to_clif(&rep, &j, &t).unwrap(), e);
        }
    }
}

#[test]
fn witt_vectors_for_the_plane() {
    let wf = build_witt(1, None).unwrap();
    let half = scalar::half();
    let ihalf = Gauss::new(Zero::zero(), scalar::rational(1, 2));
    let z = CliffordElement::from_terms(2, [(Blade(0b01), half.clone()), (Blade(0b10), -ihalf.clone())]);
    let zbar = CliffordElement::from_terms(2, [(Blade(0b01), half), (Blade(0b10), ihalf)]);
    assert_eq!(wf.z(0), &z);
    assert_eq!(wf.zbar(0), &zbar);
    assert_eq!(wf.omega_bar(), &zbar);
}

#[test]
fn basis_spinors_have_the_stated_norm() {
    for n in 1..=6 {
        let wf = build_witt(n, None).unwrap();
        let rep = build_rep(n).unwrap();
        let j = build_j(&rep).unwrap();
        let norm = int(1 << n.div_ceil(2));
        for m in 0..1u32 << n {
            let b = IdealSpinor::basis(n, m);
            assert_eq!(wf.hermitian(&b, &b), norm);
            let t = wf.iso8(&rep, &j, &b).unwrap();
            assert_eq!(scalar::from_rational(t.norm_sqr()), norm, "n = {n}, mask = {m:b}");
        }
    }
}

#[test]
fn kahler_form_is_diagonal_on_the_ideal() {
    for n in 1..=6 {
        let wf = build_witt(n, None).unwrap();
        let k = wf.kahler_action().unwrap();
        for m in 0..1usize << n {
            let p = m.count_ones() as i64;
            for r in 0..1usize << n {
                let expected = if r == m { i_times(2 * p - n as i64) } else { Gauss::zero() };
                assert_eq!(k[(r, m)], expected);
            }
        }
    }
}

#[test]
fn killing_operators_on_the_middle_grades() {
    for n in [1usize, 3, 5] {
        let wf = build_witt(n, None).unwrap();
        for sign in [KillingSign::PlusMinus, KillingSign::MinusPlus] {
            let p = killing_grade(n, sign).unwrap();
            let expected_p = if sign == KillingSign::PlusMinus { n.div_ceil(2) } else { (n - 1) / 2 };
            assert_eq!(p, expected_p);
            for m in (0..1u32 << n).filter(|m| m.count_ones() as usize == p) {
                let b = IdealSpinor::basis(n, m);
                let half = scalar::from_rational(scalar::rational(n as i64 + 1, 2));
                assert_eq!(wf.killing_contraction(&b, sign).unwrap(), b.scale(&half));
                assert_eq!(wf.killing_sum(&b, sign).unwrap(), b.scale(&-half));
                assert_eq!(wf.killing_reference(&b, sign).unwrap(), b.scale(&scalar::from_rational(scalar::rational(n as i64 + 1, 2))));
            }
        }
    }
    assert!(matches!(killing_grade(4, KillingSign::PlusMinus), Err(Error::EvenDimensionKilling(4))));
}

/// `Σ_j z_j·z̄_j` acts on `z_I·ω̄` as `-|I|`: each `z̄_j` with `j ∈ I` moves
/// past the others and `z̄_j z_j ω̄ = -ω̄`.
#[test]
fn killing_sum_by_counting() {
    for n in 1..=5 {
        let wf = build_witt(n, None).unwrap();
        for m in 0..1u32 << n {
            let b = IdealSpinor::basis(n, m);
            let mut total = IdealSpinor::zero(n);
            for j in 0..n {
                total = total.add(&wf.left_mult(wf.z(j), &wf.left_mult(wf.zbar(j), &b).unwrap()).unwrap());
            }
            assert_eq!(total, b.scale(&int(-(m.count_ones() as i64))));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn delta_is_multiplicative(n in 1usize..=5, a in clifford(5, 4), b in clifford(5, 4)) {
        let rep = build_rep(n).unwrap();
        let restrict = |x: &CliffordElement| CliffordElement::from_terms(n, x.terms().filter(|(m, _)| m.0 < 1 << n).map(|(m, c)| (m, c.clone())));
        let (a, b) = (restrict(&a), restrict(&b));
        prop_assert_eq!(rep.delta(&(&a * &b)).unwrap(), &rep.delta(&a).unwrap() * &rep.delta(&b).unwrap());
        if n % 2 == 1 {
            prop_assert_eq!(rep.delta_second(&(&a * &b)).unwrap(), &rep.delta_second(&a).unwrap() * &rep.delta_second(&b).unwrap());
        } else {
            prop_assert!(rep.delta_second(&a).is_err());
        }
    }

    #[test]
    fn vectors_act_skew_adjointly(n in 1usize..=6, seed in any::<u64>()) {
        let rep = build_rep(n).unwrap();
        let mut s = Sampler::new(seed);
        let v = s.real_vector(n);
        let (x, y) = (s.spinor(rep.d()), s.spinor(rep.d()));
        let dv = rep.delta_vector(&v).unwrap();
        prop_assert_eq!(hermitian(&dv.mul_vec(&x), &y), -hermitian(&x, &dv.mul_vec(&y)));
        let du = rep.delta_spin(&s.spin_element(n, 2).unwrap()).unwrap();
        prop_assert!((&du.adjoint() * &du).is_identity());
    }

    #[test]
    fn real_structure_commutes_with_spin(n in 2usize..=7, seed in any::<u64>()) {
        let rep = build_rep(n).unwrap();
        let j = build_j(&rep).unwrap();
        let mut s = Sampler::new(seed);
        let u = s.spin_element(n, 2).unwrap();
        let du = rep.delta_spin(&u).unwrap();
        let x = s.spinor(rep.d());
        prop_assert_eq!(j.apply(&du.mul_vec(&x)), du.mul_vec(&j.apply(&x)));
        let v = s.real_vector(n);
        let dv = rep.delta_vector(&v).unwrap();
        let sign = if j.vector_relation() == VectorRelation::Commutes { int(1) } else { int(-1) };
        let expected: Vec<Gauss> = dv.mul_vec(&j.apply(&x)).iter().map(|c| c * &sign).collect();
        prop_assert_eq!(j.apply(&dv.mul_vec(&x)), expected);
        prop_assert_eq!(j.apply_inverse(&j.apply(&x)), x);
    }

    #[test]
    fn dual_spinors_pair_through_the_real_structure(n in 1usize..=6, seed in any::<u64>()) {
        let rep = build_rep(n).unwrap();
        let j = build_j(&rep).unwrap();
        let mut s = Sampler::new(seed);
        let (x, y) = (s.spinor(rep.d()), s.spinor(rep.d()));
        prop_assert_eq!(pair(&sigma_to_dual(&j, &x), &y), hermitian(&y, &j.apply(&x)));
        prop_assert_eq!(dual_matrix(&j).mul_vec(&x), sigma_to_dual(&j, &x));
    }

    #[test]
    fn tensor_model_left_action(n in 1usize..=6, seed in any::<u64>()) {
        let rep = build_rep(n).unwrap();
        let j = build_j(&rep).unwrap();
        let mut s = Sampler::new(seed);
        let phi = s.clifford_element(n, 4);
        let v = s.real_vector(n);
        let (first, second) = vector_pair(&rep, &v).unwrap();
        let t = clif_to_tensor(&rep, &j, &phi).unwrap();
        prop_assert_eq!(clif_to_tensor(&rep, &j, &(&v.to_clifford() * &phi)).unwrap(), t.left(&first, &second));
        prop_assert_eq!(tensor_to_clif(&rep, &j, &t).unwrap(), phi);
    }

    #[test]
    fn witt_projectors(z in proptest::collection::vec(small_gauss(), 6), w in proptest::collection::vec(small_gauss(), 6)) {
        let (z, w) = (Vector::new(z), Vector::new(w));
        let i = scalar::imag_unit();
        prop_assert!(p_minus(&p_plus(&z)).coords().iter().all(|c| c.is_zero()));
        prop_assert_eq!(p_plus(&complex_structure(&z)), p_plus(&z).scale(&i));
        prop_assert_eq!(p_minus(&complex_structure(&z)), p_minus(&z).scale(&-i));
        prop_assert_eq!(p_plus(&z).can(&w), z.can(&p_minus(&w)));
        prop_assert_eq!(p_plus(&z).add(&p_minus(&z)), z);
    }

    #[test]
    fn ideal_is_a_left_ideal(n in 1usize..=4, seed in any::<u64>()) {
        let wf = build_witt(n, None).unwrap();
        let mut s = Sampler::new(seed);
        let psi = s.clifford_element(2 * n, 3);
        let x = IdealSpinor::new(n, s.spinor(1 << n));
        let y = wf.left_mult(&psi, &x).unwrap();
        prop_assert_eq!(&y, &wf.left_mult_blade(&psi, &x).unwrap());
        prop_assert_eq!(wf.project(&(&psi * &wf.to_clifford(&x))).unwrap(), y);
    }

    #[test]
    fn isomorphisms_round_trip(n in 1usize..=5, seed in any::<u64>()) {
        let wf = build_witt(n, None).unwrap();
        let rep = build_rep(n).unwrap();
        let j = build_j(&rep).unwrap();
        let mut s = Sampler::new(seed);
        let x = IdealSpinor::new(n, s.spinor(1 << n));
        prop_assert_eq!(&wf.iso9_inverse(&wf.iso9(&x).unwrap()).unwrap(), &x);
        prop_assert_eq!(&wf.iso8_inverse(&rep, &j, &wf.iso8(&rep, &j, &x).unwrap()).unwrap(), &x);
        let phi = wf.iso6_inverse(&x).unwrap();
        prop_assert_eq!(wf.iso6(&phi).unwrap(), x);
    }

    #[test]
    fn tangent_vectors_act_on_forms_like_clifford(n in 1usize..=5, seed in any::<u64>()) {
        let wf = build_witt(n, None).unwrap();
        let mut s = Sampler::new(seed);
        let x = IdealSpinor::new(n, s.spinor(1 << n));
        let v = s.real_vector(n);
        let form = wf.iso9(&x).unwrap();
        let expected = &spinorlab::clifford::wedge(&v.to_exterior(), &form).unwrap()
            - &spinorlab::clifford::contract(&v, &form).unwrap();
        prop_assert_eq!(wf.iso9(&wf.left_mult(&tangent(&v).to_clifford(), &x).unwrap()).unwrap(), expected);
    }

    #[test]
    fn diagonal_spin_preserves_the_hermitian_product(n in 2usize..=4, seed in any::<u64>()) {
        let wf = build_witt(n, None).unwrap();
        let mut s = Sampler::new(seed);
        let u = diagonal(&s.spin_element(n, 2).unwrap()).unwrap();
        let (x, y) = (IdealSpinor::new(n, s.spinor(1 << n)), IdealSpinor::new(n, s.spinor(1 << n)));
        let ux = wf.left_mult(&u.to_clifford(), &x).unwrap();
        let uy = wf.left_mult(&u.to_clifford(), &y).unwrap();
        prop_assert_eq!(wf.hermitian(&ux, &uy), wf.hermitian(&x, &y));
        prop_assert!(!wf.hermitian(&x, &x).re.is_zero() || x.is_zero());
        prop_assert!(wf.hermitian(&x, &x).re >= Zero::zero());
    }
}
