use num_bigint::BigUint;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use spinorlab::flat::{
    circle_operators, dirac_witten, euler_operator, exterior_clifford_matrix, fundamental_dirac, killing_residual,
    killing_solution_dim, mode_vector, rayleigh_minmax, twisted_dirac, verify_square_identity, CircleSpinStructure,
    MeanCurvatureData, Model, SpinStructure, SpinorField,
};
use spinorlab::linalg::{CMatrix, CVector};
use spinorlab::scalar;
use spinorlab::sphere::{
    binomial, closed_form_eigenvalue, closed_form_spectrum, killing_space_dims, sharpness_check, theorem_bound,
    AlphaBranch, BoundInput,
};
use spinorlab::witt::{build_witt, IdealSpinor};
use spinorlab::{Error, Sampler};
use std::f64::consts::PI;

/// Cyclic Jacobi on the real form `[[A, -B], [B, A]]` of `A + iB`; every
/// eigenvalue appears twice there.
fn jacobi_hermitian(h: &CMatrix) -> Vec<f64> {
    let d = h.nrows();
    let n = 2 * d;
    let mut a = vec![vec![0.0; n]; n];
    for r in 0..d {
        for c in 0..d {
            let z = h[(r, c)];
            a[r][c] = z.re;
            a[r + d][c + d] = z.re;
            a[r][c + d] = -z.im;
            a[r + d][c] = z.im;
        }
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| x.total_cmp(y));
    ev.into_iter().step_by(2).collect()
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * y.abs().max(1.0))
}

#[test]
fn jacobi_oracle_on_a_known_matrix() {
    // [[2, i], [-i, 2]] has eigenvalues 1 and 3
    let h = CMatrix::from_row_slice(2, 2, &[
        Complex64::new(2.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, -1.0),
        Complex64::new(2.0, 0.0),
    ]);
    assert!(close(&jacobi_hermitian(&h), &[1.0, 3.0], 1e-12));
}

#[test]
fn fundamental_circle_spectra() {
    let op = fundamental_dirac(SpinStructure::Nontrivial, 2).unwrap();
    assert!(close(&op.real_spectrum(1e-9).unwrap(), &[-1.5, -0.5, 0.5, 1.5], 1e-12));
    let op = fundamental_dirac(SpinStructure::Trivial, 2).unwrap();
    assert!(close(&op.real_spectrum(1e-9).unwrap(), &[-2.0, -1.0, 0.0, 1.0, 2.0], 1e-12));
}

#[test]
fn torus_blocks_against_jacobi() {
    for n in 1..=3 {
        let op = twisted_dirac(Model::Torus(n), 1).unwrap();
        for (i, block) in op.blocks.iter().enumerate() {
            let k: f64 = block.mode.iter().map(|m| (*m as f64 / 2.0).powi(2)).sum::<f64>().sqrt();
            let d = op.fiber_dim();
            let mut expected: Vec<f64> = (0..d).map(|r| if r < d / 2 { -2.0 * PI * k } else { 2.0 * PI * k }).collect();
            expected.sort_by(|a, b| a.total_cmp(b));
            let got = jacobi_hermitian(&op.block_c64(i));
            assert!(close(&got, &expected, 1e-10), "n = {n}, mode {:?}: {got:?}", block.mode);
        }
    }
}

#[test]
fn torus_spectrum_in_two_dimensions() {
    let report = twisted_dirac(Model::Torus(2), 1).unwrap().spectrum_report(1e-9).unwrap();
    let zero = report.eigenvalues.iter().find(|l| l.value.abs() < 1e-9).unwrap();
    assert_eq!(zero.multiplicity, 4);
    let unit = report.eigenvalues.iter().find(|l| (l.value - 2.0 * PI).abs() < 1e-9).unwrap();
    // four unit modes, two positive eigenvalues on each 4-dimensional fibre
    assert_eq!(unit.multiplicity, 8);
}

#[test]
fn exterior_generators_anticommute() {
    for n in 1..=4 {
        for j in 0..n {
            let a = exterior_clifford_matrix(n, j).unwrap();
            assert!((&(&a * &a) + &spinorlab::matrix::Matrix::identity(1 << n)).is_zero());
            for k in j + 1..n {
                let b = exterior_clifford_matrix(n, k).unwrap();
                assert!((&(&a * &b) + &(&b * &a)).is_zero());
            }
        }
    }
}

#[test]
fn twisted_dirac_is_the_euler_operator_on_the_torus() {
    for n in 1..=3 {
        let d = twisted_dirac(Model::Torus(n), 2).unwrap();
        let e = euler_operator(Model::Torus(n), 2).unwrap();
        for (a, b) in d.blocks.iter().zip(&e.blocks) {
            assert_eq!(a.symbol, b.symbol);
        }
    }
}

#[test]
fn circle_induced_operator_doubles_the_antiperiodic_dirac() {
    for t in [SpinStructure::Trivial, SpinStructure::Nontrivial] {
        let ops = circle_operators(t, 4).unwrap();
        let induced = ops.induced_twisted_dirac.real_spectrum(1e-9).unwrap();
        let oracle: Vec<f64> = {
            let mut v: Vec<f64> = (-8..=8).filter(|m: &i64| m % 2 != 0).flat_map(|m| [m as f64 / 2.0; 2]).collect();
            v.sort_by(|a, b| a.total_cmp(b));
            v
        };
        assert!(close(&induced, &oracle, 1e-12));
        assert_eq!(ops.euler.kernel_dim(1e-9), 2);
        assert_eq!(CircleSpinStructure::new(t).normal(), t.flip());
    }
}

#[test]
fn square_identity_shifts() {
    let r = verify_square_identity(Model::Circle(CircleSpinStructure::new(SpinStructure::Trivial)), 3).unwrap();
    assert!(r.exact);
    assert_eq!(r.shift, "1/4");
    for n in 1..=3 {
        let r = verify_square_identity(Model::Torus(n), 2).unwrap();
        assert!(r.exact && r.max_residual < 1e-12);
        assert_eq!(r.shift, "0");
    }
    let op = dirac_witten(Model::Circle(CircleSpinStructure::new(SpinStructure::Trivial)), 2, &MeanCurvatureData::circle()).unwrap();
    assert!(!op.hermitian);
    assert!(dirac_witten(Model::Torus(2), 1, &MeanCurvatureData::torus(3)).is_err());
}

#[test]
fn invalid_models_are_rejected() {
    assert!(twisted_dirac(Model::Torus(0), 1).is_err());
    assert!(twisted_dirac(Model::Torus(5), 1).is_err());
    assert!(euler_operator(Model::Torus(2), 0).is_err());
}

#[test]
fn constant_pairs_solve_the_parallel_equations() {
    let n = 2;
    let wf = build_witt(n, None).unwrap();
    let mut s = Sampler::new(3);
    let mut psi = SpinorField::new();
    let mut phi = SpinorField::new();
    psi.insert(vec![0, 0], IdealSpinor::new(n, s.spinor(4)));
    phi.insert(vec![0, 0], IdealSpinor::new(n, s.spinor(4)));
    let (a, b) = killing_residual(&wf, &psi, &phi, Complex64::new(0.0, 0.0)).unwrap();
    assert!(a.iter().chain(&b).all(|z| z.norm() < 1e-14));
    // a nonconstant mode is not parallel
    psi.insert(vec![2, 0], IdealSpinor::basis(n, 0));
    let (a, _) = killing_residual(&wf, &psi, &phi, Complex64::new(0.0, 0.0)).unwrap();
    assert!(a.iter().any(|z| z.norm() > 1.0));
    assert_eq!(killing_solution_dim(n, 1, Complex64::new(0.0, 0.0), 1e-9).unwrap(), 8);
}

#[test]
fn minmax_of_lowest_modes_is_exact() {
    let op = twisted_dirac(Model::Torus(1), 2).unwrap().squared().unwrap();
    let zero = op.blocks.iter().position(|b| b.mode == vec![0]).unwrap();
    let trial: Vec<CVector> = (0..2).map(|c| mode_vector(&op, zero, c)).collect();
    assert!(rayleigh_minmax(&op, &trial).unwrap().abs() < 1e-12);
    let one = op.blocks.iter().position(|b| b.mode == vec![2]).unwrap();
    let mut wider = trial.clone();
    wider.push(mode_vector(&op, one, 0));
    assert!((rayleigh_minmax(&op, &wider).unwrap() - 4.0 * PI * PI).abs() < 1e-9);
    let dup = vec![trial[0].clone(), trial[0].clone()];
    assert!(matches!(rayleigh_minmax(&op, &dup), Err(Error::DegenerateTrialSpan { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rayleigh_bound_dominates_the_nth_eigenvalue(seed in any::<u64>(), count in 1usize..8) {
        let op = twisted_dirac(Model::Torus(2), 1).unwrap().squared().unwrap();
        let mut all = Vec::new();
        for i in 0..op.blocks.len() {
            all.extend(jacobi_hermitian(&op.block_c64(i)));
        }
        all.sort_by(|a, b| a.total_cmp(b));
        let mut s = Sampler::new(seed);
        let trial: Vec<CVector> = (0..count)
            .map(|_| CVector::from_fn(op.dim(), |_, _| scalar::to_c64(&s.gauss())))
            .collect();
        if let Ok(bound) = rayleigh_minmax(&op, &trial) {
            prop_assert!(bound >= all[count - 1] - 1e-8);
        }
    }

    #[test]
    fn closed_form_matches_the_product_formula(n in 2u64..30, k in 0u64..20, p_off in 0u64..30) {
        let p = 1 + p_off % (n - 1);
        prop_assert_eq!(closed_form_eigenvalue(n, p, k), BigUint::from((p + k) * (n - p + 1 + k)));
    }

    #[test]
    fn pascal_rule(n in 1u64..60, k in 1u64..60) {
        prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
    }

    #[test]
    fn bound_is_the_stated_quadratic(n in 1u64..20, a in -5i64..=5, h in 0i64..=5) {
        let n = 2 * (n / 2) + 1;
        let alpha2 = BigRational::from_integer(a.into());
        let hq = BigRational::from_integer(h.into());
        let input = if a < 0 {
            BoundInput { n, alpha2: alpha2.clone(), h_mean_sq: None, h_sup_sq: Some(hq.clone()), big_n: 1 }
        } else {
            BoundInput { n, alpha2: alpha2.clone(), h_mean_sq: Some(hq.clone()), h_sup_sq: None, big_n: 1 }
        };
        let r = theorem_bound(&input).unwrap();
        let expected = (BigRational::from_integer(((n + 1) * (n + 1)).into()) * alpha2 + BigRational::from_integer((n * n).into()) * hq)
            / BigRational::from_integer(4.into());
        prop_assert_eq!(&r.bound_value, &expected);
        prop_assert_eq!(r.vacuous, expected < BigRational::zero());
    }
}

#[test]
fn sphere_closed_forms_in_dimension_three() {
    let lines = closed_form_spectrum(3, 2, 3).unwrap();
    let values: Vec<BigUint> = lines.iter().map(|l| l.eigenvalue.clone()).collect();
    assert_eq!(values, [4u32, 9, 16, 25].map(BigUint::from).to_vec());
    assert_eq!(lines[0].multiplicity, Some(BigUint::from(6u32)));
    assert!(closed_form_spectrum(3, 0, 3).is_err());
    assert!(closed_form_spectrum(3, 3, 3).is_err());
}

#[test]
fn bound_examples() {
    let q = |a: i64, b: i64| scalar::rational(a, b);
    let r = theorem_bound(&BoundInput { n: 3, alpha2: BigRational::one(), h_mean_sq: Some(BigRational::zero()), h_sup_sq: None, big_n: 6 }).unwrap();
    assert_eq!(r.bound, "4");
    assert_eq!(r.branch, AlphaBranch::Real);
    assert_eq!(r.half_n, 3);
    let r = theorem_bound(&BoundInput { n: 3, alpha2: -BigRational::one(), h_mean_sq: None, h_sup_sq: Some(BigRational::one()), big_n: 1 }).unwrap();
    assert_eq!(r.bound_value, q(-7, 4));
    assert!(r.vacuous);
    assert_eq!(r.extended_index, 2);
    let both = BoundInput { n: 2, alpha2: BigRational::zero(), h_mean_sq: Some(BigRational::zero()), h_sup_sq: Some(BigRational::zero()), big_n: 4 };
    assert!(matches!(theorem_bound(&both), Err(Error::InvalidParameter(_))));
    let even = BoundInput { n: 2, alpha2: BigRational::one(), h_mean_sq: Some(BigRational::zero()), h_sup_sq: None, big_n: 4 };
    assert!(matches!(theorem_bound(&even), Err(Error::InvalidAlpha(_))));
}

#[test]
fn sharpness_for_odd_dimensions() {
    for n in (3..=21).step_by(2) {
        let r = sharpness_check(n).unwrap();
        assert!(r.holds, "n = {n}");
        assert_eq!(r.margin, "0");
        let d = killing_space_dims(n).unwrap();
        assert_eq!(d.killing, binomial(n + 1, n.div_ceil(2)));
    }
    assert!(sharpness_check(4).is_err());
    assert!(sharpness_check(1).is_err());
    assert!(killing_space_dims(6).is_err());
}
