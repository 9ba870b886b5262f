//! Suites for the Witt-basis model `Σ_{2n} = ⊕ L^p`: frame independence,
//! the isomorphisms to `Cl_n`, `Σ_n ⊗ Σ_n` and `ΛR^n ⊗ C`, the Kähler form,
//! the Hermitian normalisation and the Killing contraction.

use num_traits::{One, Zero};
use serde_json::json;
use spinorlab::clifford::{self, exterior_power};
use spinorlab::matrix::Matrix;
use spinorlab::scalar::{self, Gauss};
use spinorlab::spin_rep::{build_j, build_rep, RealStructure, SpinorRep};
use spinorlab::witt::{
    self, build_witt, complex_structure, diagonal, killing_grade, p_minus, p_plus, split_product, IdealSpinor,
    KillingSign, WittFrame, MAX_WITT_N,
};
use spinorlab::{Blade, CliffordElement, Error, ExteriorElement, Sampler, SpinElement, Vector};

use crate::algebra::{check_range, clifford_action_on_forms, random_spin, twisted_action_on_forms};
use crate::encode::{self, holds, Compare};
use crate::{Checker, Outcome, SuiteConfig, SuiteResult};

fn random_ideal(s: &mut Sampler, n: usize, terms: usize) -> IdealSpinor {
    let mut coords = vec![Gauss::zero(); 1 << n];
    for _ in 0..terms {
        let k = s.index(1 << n);
        coords[k] = s.gauss();
    }
    IdealSpinor::new(n, coords)
}

/// `u·s`, one vector factor at a time.
fn act(wf: &WittFrame, u: &SpinElement, s: &IdealSpinor) -> spinorlab::Result<IdealSpinor> {
    let mut out = s.clone();
    for v in u.factors().iter().rev() {
        out = wf.left_mult(&v.to_clifford(), &out)?;
    }
    Ok(out)
}

fn setup(n: usize) -> spinorlab::Result<(WittFrame, SpinorRep, RealStructure)> {
    let wf = build_witt(n, None)?;
    let rep = build_rep(n)?;
    let j = build_j(&rep)?;
    Ok((wf, rep, j))
}

fn i_times(k: i64) -> Gauss {
    Gauss::new(Zero::zero(), scalar::rational(k, 1))
}

fn sign(p: usize) -> i64 {
    if p.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn frame_columns(r: &Matrix) -> Vec<Vector> {
    (0..r.cols()).map(|c| Vector::new(r.column(c))).collect()
}

/// Coordinate matrix of the canonical `z_I·ω̄` in the blade basis of `Cl_{2n}`.
fn ideal_span_rank(wf: &WittFrame) -> usize {
    let n = wf.n();
    let cols: Vec<Vec<Gauss>> = (0..1u32 << n).map(|m| wf.to_clifford(&IdealSpinor::basis(n, m)).to_dense()).collect();
    Matrix::from_columns(1 << (2 * n), &cols).rank()
}

pub fn witt_frame(config: &SuiteConfig) -> Result<SuiteResult, String> {
    check_range(config, MAX_WITT_N)?;
    let mut ck = Checker::new(config.tolerance);
    for n in config.range.iter() {
        let mut s = config.sampler("witt-frame", n);
        let wf0 = match build_witt(n, None) {
            Ok(w) => w,
            Err(e) => {
                ck.record("build", n, 0, Err(e), || json!(null));
                continue;
            }
        };
        let dim = 2 * n;
        if n == 1 {
            let expected = CliffordElement::from_terms(
                2,
                [(Blade(0b01), scalar::half()), (Blade(0b10), Gauss::new(Zero::zero(), scalar::rational(1, 2)))],
            );
            ck.record("n1-example", n, 0, Ok(wf0.zbar(0).compare(&expected)), || json!(null));
        }
        if n <= 5 {
            ck.record("ideal-dimension", n, 0, Ok(holds(ideal_span_rank(&wf0) == 1 << n)), || json!({ "n": n }));
        }
        let scale = scalar::int(1 << n.div_ceil(2));
        for t in 0..config.trials {
            let z = s.complex_vector(dim);
            let z2 = s.complex_vector(dim);
            let zero = Vector::zero(dim);
            let i = scalar::imag_unit();
            let ok = p_minus(&p_plus(&z)) == zero
                && p_plus(&p_minus(&z)) == zero
                && p_plus(&complex_structure(&z)) == p_plus(&z).scale(&i)
                && complex_structure(&p_plus(&z)) == p_plus(&z).scale(&i)
                && p_minus(&complex_structure(&z)) == p_minus(&z).scale(&-i.clone())
                && complex_structure(&p_minus(&z)) == p_minus(&z).scale(&-i.clone())
                && p_plus(&z).can(&z2) == z.can(&p_minus(&z2));
            ck.record("projector-identities", n, t, Ok(holds(ok)), || {
                json!({ "z": encode::vector(&z), "z2": encode::vector(&z2) })
            });

            let r = s.rotation(n);
            let frame = frame_columns(&r);
            let a = s.index(1 << n) as u32;
            let b = s.index(1 << n) as u32;
            let out = (|| {
                let wf = build_witt(n, Some(&frame))?;
                let mut o = wf.omega_bar().compare(wf0.omega_bar());
                let xa = wf0.project(&wf.frame_basis_element(a))?;
                let xb = wf0.project(&wf.frame_basis_element(b))?;
                let p = a.count_ones() as usize;
                o = o.and(holds(xa.grade_part(p) == xa));
                let expected = if a == b { scale.clone() } else { Gauss::zero() };
                o = o.and(wf0.hermitian(&xa, &xb).compare(&expected));
                o = o.and(wf.kahler_form_witt()?.compare(&wf0.kahler_form()));
                Ok(o)
            })();
            ck.record("frame-independence", n, t, out, || {
                json!({ "frame": frame.iter().map(encode::vector).collect::<Vec<_>>(), "masks": [a, b] })
            });

            let psi = s.clifford_element(dim, 2);
            let sp = random_ideal(&mut s, n, 2);
            let out = (|| Ok(wf0.left_mult(&psi, &sp)?.compare(&wf0.left_mult_blade(&psi, &sp)?)))();
            ck.record("left-ideal", n, t, out, || json!({ "psi": encode::clifford(&psi), "s": encode::ideal(&sp) }));
        }
    }
    Ok(ck.finish("witt-frame", config, true))
}

pub fn ideal_isomorphism(config: &SuiteConfig) -> Result<SuiteResult, String> {
    check_range(config, MAX_WITT_N)?;
    let mut ck = Checker::new(config.tolerance);
    for n in config.range.iter() {
        let mut s = config.sampler("eq6", n);
        let wf = match build_witt(n, None) {
            Ok(w) => w,
            Err(e) => {
                ck.record("build", n, 0, Err(e), || json!(null));
                continue;
            }
        };
        let mut basis = Outcome::exact(true, 0.0);
        for mask in 0..1u32 << n {
            let e = CliffordElement::from_blade(n, Blade(mask), Gauss::one());
            basis = match wf.iso6(&e) {
                Ok(x) => basis.and(x.compare(&IdealSpinor::basis(n, mask))),
                Err(_) => Outcome::exact(false, f64::INFINITY),
            };
        }
        ck.record("basis", n, 0, Ok(basis), || json!({ "n": n }));
        if n <= 2 {
            for mask in 0..1u32 << n {
                let phi = CliffordElement::from_blade(n, Blade(mask), Gauss::one());
                let p = Blade(mask).grade();
                for k in 0..n {
                    let x = Vector::basis(n, k);
                    let out = (|| {
                        let t = wf.iso6(&(&x.to_clifford() * &phi))?.compare(&wf.left_mult(&witt::tangent(&x).to_clifford(), &wf.iso6(&phi)?)?);
                        let lhs = wf.iso6(&(&phi * &x.to_clifford()).scale(&i_times(-sign(p + 1))))?;
                        let nrm = lhs.compare(&wf.left_mult(&witt::normal(&x).to_clifford(), &wf.iso6(&phi)?)?);
                        Ok(t.and(nrm))
                    })();
                    ck.record("basis-exhaustive", n, 0, out, || json!({ "blade": mask, "k": k }));
                }
            }
        }
        for t in 0..config.trials {
            let v = s.real_vector(n);
            let phi = s.clifford_element(n, 4);
            let out = (|| {
                let lhs = wf.iso6(&clifford::clifford_mul(&v.to_clifford(), &phi)?)?;
                Ok(lhs.compare(&wf.left_mult(&witt::tangent(&v).to_clifford(), &wf.iso6(&phi)?)?))
            })();
            ck.record("tangent-action", n, t, out, || {
                json!({ "v": encode::vector(&v), "phi": encode::clifford(&phi) })
            });

            // w = J(x) is normal and J(w) = -x
            let p = s.index(n + 1);
            let phi_p = s.homogeneous(n, p, 3);
            let x = s.real_vector(n);
            let out = (|| {
                let jw = x.scale(&scalar::int(-1));
                let lhs = clifford::clifford_mul(&phi_p, &jw.to_clifford())?.scale(&i_times(sign(p + 1)));
                let rhs = wf.left_mult(&witt::normal(&x).to_clifford(), &wf.iso6(&phi_p)?)?;
                Ok(wf.iso6(&lhs)?.compare(&rhs))
            })();
            ck.record("normal-action", n, t, out, || {
                json!({ "x": encode::vector(&x), "phi": encode::clifford(&phi_p), "grade": p })
            });

            let out = (|| {
                let image = wf.iso6(&phi_p)?;
                Ok(holds(image.grade_part(p) == image))
            })();
            ck.record("grades", n, t, out, || json!({ "phi": encode::clifford(&phi_p), "grade": p }));

            let u = random_spin(&mut s, n);
            let out = (|| {
                let lhs = wf.iso6(&u.ad(&phi)?)?;
                Ok(lhs.compare(&act(&wf, &diagonal(&u)?, &wf.iso6(&phi)?)?))
            })();
            ck.record("diagonal-equivariance", n, t, out, || {
                json!({ "u": encode::spin(&u), "phi": encode::clifford(&phi) })
            });

            let out = (|| Ok(wf.iso6_inverse(&wf.iso6(&phi)?)?.compare(&phi)))();
            ck.record("round-trip", n, t, out, || json!({ "phi": encode::clifford(&phi) }));
        }
    }
    Ok(ck.finish("eq6", config, true))
}

pub fn ideal_to_tensor(config: &SuiteConfig) -> Result<SuiteResult, String> {
    check_range(config, MAX_WITT_N)?;
    let mut ck = Checker::new(config.tolerance);
    for n in config.range.iter() {
        let mut s = config.sampler("eq8", n);
        let (wf, rep, j) = match setup(n) {
            Ok(x) => x,
            Err(e) => {
                ck.record("build", n, 0, Err(e), || json!(null));
                continue;
            }
        };
        if n <= 2 {
            let mut gram = Outcome::exact(true, 0.0);
            for a in 0..1u32 << n {
                for b in 0..1u32 << n {
                    let (sa, sb) = (IdealSpinor::basis(n, a), IdealSpinor::basis(n, b));
                    gram = match (wf.iso8(&rep, &j, &sa), wf.iso8(&rep, &j, &sb)) {
                        (Ok(ta), Ok(tb)) => gram.and(ta.dot(&tb).compare(&wf.hermitian(&sa, &sb))),
                        _ => Outcome::exact(false, f64::INFINITY),
                    };
                }
            }
            ck.record("unitary-basis", n, 0, Ok(gram), || json!({ "n": n }));
        }
        for t in 0..config.trials {
            let sp = random_ideal(&mut s, n, 4);
            let tp = random_ideal(&mut s, n, 4);
            let out = (|| {
                let (a, b) = (wf.iso8(&rep, &j, &sp)?, wf.iso8(&rep, &j, &tp)?);
                Ok(a.dot(&b).compare(&wf.hermitian(&sp, &tp)))
            })();
            ck.record("unitary", n, t, out, || json!({ "s": encode::ideal(&sp), "t": encode::ideal(&tp) }));

            let out = (|| Ok(wf.iso8_inverse(&rep, &j, &wf.iso8(&rep, &j, &sp)?)?.compare(&sp)))();
            ck.record("round-trip", n, t, out, || json!({ "s": encode::ideal(&sp) }));

            let v = s.real_vector(n);
            let out = (|| {
                let dv = rep.delta_vector(&v)?;
                let lhs = wf.iso8(&rep, &j, &wf.left_mult(&witt::tangent(&v).to_clifford(), &sp)?)?;
                Ok(lhs.compare(&wf.iso8(&rep, &j, &sp)?.left(&dv, &-&dv)))
            })();
            ck.record("tangent-action", n, t, out, || json!({ "v": encode::vector(&v), "s": encode::ideal(&sp) }));

            let p = s.index(n + 1);
            let sp_p = sp.grade_part(p);
            let x = s.real_vector(n);
            let out = (|| {
                let djw = rep.delta_vector(&x.scale(&scalar::int(-1)))?;
                let lhs = wf.iso8(&rep, &j, &wf.left_mult(&witt::normal(&x).to_clifford(), &sp_p)?)?;
                let rhs = wf.iso8(&rep, &j, &sp_p)?.right(&djw, &-&djw).scale(&i_times(sign(p)));
                Ok(lhs.compare(&rhs))
            })();
            ck.record("normal-action-sign", n, t, out, || {
                json!({ "x": encode::vector(&x), "s": encode::ideal(&sp_p), "grade": p })
            });

            let u = random_spin(&mut s, n);
            let u2 = random_spin(&mut s, n);
            let out = (|| {
                let (du, du2) = (rep.delta_spin(&u)?, rep.delta_spin(&u2)?);
                let lhs = wf.iso8(&rep, &j, &act(&wf, &split_product(&u, &u2)?, &sp)?)?;
                Ok(lhs.compare(&wf.iso8(&rep, &j, &sp)?.left(&du, &du).right(&du2, &du2)))
            })();
            ck.record("split-equivariance", n, t, out, || {
                json!({ "u": encode::spin(&u), "u_prime": encode::spin(&u2), "s": encode::ideal(&sp) })
            });
        }
    }
    Ok(ck.finish("eq8", config, true))
}

pub fn ideal_to_forms(config: &SuiteConfig) -> Result<SuiteResult, String> {
    check_range(config, MAX_WITT_N)?;
    let mut ck = Checker::new(config.tolerance);
    for n in config.range.iter() {
        let mut s = config.sampler("eq9", n);
        let wf = match build_witt(n, None) {
            Ok(w) => w,
            Err(e) => {
                ck.record("build", n, 0, Err(e), || json!(null));
                continue;
            }
        };
        let mut basis = Outcome::exact(true, 0.0);
        for mask in 0..1u32 << n {
            let e = ExteriorElement::from_blade(n, Blade(mask), Gauss::one());
            basis = match wf.iso9(&IdealSpinor::basis(n, mask)) {
                Ok(x) => basis.and(x.compare(&e)),
                Err(_) => Outcome::exact(false, f64::INFINITY),
            };
        }
        ck.record("basis", n, 0, Ok(basis), || json!({ "n": n }));
        let omega = wf.kahler_form();
        for t in 0..config.trials {
            let sp = random_ideal(&mut s, n, 4);
            let v = s.real_vector(n);
            let out = (|| {
                let lhs = wf.iso9(&wf.left_mult(&witt::tangent(&v).to_clifford(), &sp)?)?;
                Ok(lhs.compare(&clifford_action_on_forms(&v, &wf.iso9(&sp)?)?))
            })();
            ck.record("tangent-action", n, t, out, || json!({ "v": encode::vector(&v), "s": encode::ideal(&sp) }));

            let x = s.real_vector(n);
            let out = (|| {
                let lhs = wf.iso9(&wf.left_mult(&witt::normal(&x).to_clifford(), &sp)?)?;
                let phi = wf.iso9(&sp)?;
                // J(w) = -x for w = J(x)
                let jw = x.scale(&scalar::int(-1));
                let cor10 = twisted_action_on_forms(&jw, &phi)?.scale(&i_times(-1));
                Ok(lhs.compare(&cor10))
            })();
            ck.record("normal-action-jw-form", n, t, out, || {
                json!({ "x": encode::vector(&x), "s": encode::ideal(&sp) })
            });
            let out = (|| {
                let lhs = wf.iso9(&wf.left_mult(&witt::normal(&x).to_clifford(), &sp)?)?;
                // f = J restricted to TM, so f^{-1}(w) = x
                let cor8 = twisted_action_on_forms(&x, &wf.iso9(&sp)?)?.scale(&i_times(1));
                Ok(lhs.compare(&cor8))
            })();
            ck.record("normal-action-inverse-form", n, t, out, || {
                json!({ "x": encode::vector(&x), "s": encode::ideal(&sp) })
            });

            let u = random_spin(&mut s, n);
            let out = (|| {
                let lhs = wf.iso9(&act(&wf, &diagonal(&u)?, &sp)?)?;
                Ok(lhs.compare(&exterior_power(&u.ad_matrix(), &wf.iso9(&sp)?)?))
            })();
            ck.record("diagonal-equivariance", n, t, out, || json!({ "u": encode::spin(&u), "s": encode::ideal(&sp) }));

            let p = s.index(n + 1);
            let sp_p = sp.grade_part(p);
            let out = (|| {
                let form = wf.iso9(&sp_p)?;
                let graded = holds(form.grade_part(p) == form);
                let kahler = wf.iso9(&wf.left_mult(&omega, &sp_p)?)?;
                Ok(graded.and(kahler.compare(&form.scale(&i_times(2 * p as i64 - n as i64)))))
            })();
            ck.record("kahler-grades", n, t, out, || json!({ "s": encode::ideal(&sp_p), "grade": p }));
        }
    }
    Ok(ck.finish("eq9", config, true))
}

pub fn kahler_action(config: &SuiteConfig) -> Result<SuiteResult, String> {
    check_range(config, MAX_WITT_N)?;
    let mut ck = Checker::new(config.tolerance);
    for n in config.range.iter() {
        let mut s = config.sampler("kahler-action", n);
        let wf = match build_witt(n, None) {
            Ok(w) => w,
            Err(e) => {
                ck.record("build", n, 0, Err(e), || json!(null));
                continue;
            }
        };
        let expected = Matrix::from_fn(1 << n, 1 << n, |r, c| {
            if r == c {
                i_times(2 * (r as u32).count_ones() as i64 - n as i64)
            } else {
                Gauss::zero()
            }
        });
        let out = wf.kahler_action().map(|m| m.compare(&expected).and(holds(m.trace().is_zero())));
        ck.record("eigenvalues", n, 0, out, || json!({ "n": n }));
        let out = wf.kahler_form_witt().map(|w| w.compare(&wf.kahler_form()));
        ck.record("witt-expression", n, 0, out, || json!({ "n": n }));
        if n <= 3 {
            let omega = wf.kahler_form();
            let mut o = Outcome::exact(true, 0.0);
            for m in 0..1u32 << n {
                let b = IdealSpinor::basis(n, m);
                o = match (wf.left_mult(&omega, &b), wf.left_mult_blade(&omega, &b)) {
                    (Ok(x), Ok(y)) => o.and(x.compare(&y)),
                    _ => Outcome::exact(false, f64::INFINITY),
                };
            }
            ck.record("blade-level", n, 0, Ok(o), || json!({ "n": n }));
        }
        let omega = wf.kahler_form();
        for t in 0..config.trials {
            let sp = random_ideal(&mut s, n, 5);
            let out = (|| {
                let mut expected = IdealSpinor::zero(n);
                for p in 0..=n {
                    expected = expected.add(&sp.grade_part(p).scale(&i_times(2 * p as i64 - n as i64)));
                }
                Ok(wf.left_mult(&omega, &sp)?.compare(&expected))
            })();
            ck.record("random-spinors", n, t, out, || json!({ "s": encode::ideal(&sp) }));
        }
    }
    Ok(ck.finish("kahler-action", config, true))
}

pub fn hermitian_normalization(config: &SuiteConfig) -> Result<SuiteResult, String> {
    check_range(config, MAX_WITT_N)?;
    let mut ck = Checker::new(config.tolerance);
    for n in config.range.iter() {
        let mut s = config.sampler("hermitian-normalization", n);
        let (wf, rep, j) = match setup(n) {
            Ok(x) => x,
            Err(e) => {
                ck.record("build", n, 0, Err(e), || json!(null));
                continue;
            }
        };
        let scale = scalar::rational(1 << n.div_ceil(2), 1);
        let mut o = Outcome::exact(true, 0.0);
        for m in 0..1u32 << n {
            let b = IdealSpinor::basis(n, m);
            o = match wf.iso8(&rep, &j, &b) {
                Ok(t) => o.and(scalar::from_rational(t.norm_sqr()).compare(&scalar::from_rational(scale.clone()))),
                Err(_) => Outcome::exact(false, f64::INFINITY),
            };
            o = o.and(wf.hermitian(&b, &b).compare(&scalar::from_rational(scale.clone())));
        }
        ck.record("basis-norms", n, 0, Ok(o), || json!({ "n": n }));
        for t in 0..config.trials {
            let (a, b) = (s.index(1 << n) as u32, s.index(1 << n) as u32);
            let out = (|| {
                let (ta, tb) = (wf.iso8(&rep, &j, &IdealSpinor::basis(n, a))?, wf.iso8(&rep, &j, &IdealSpinor::basis(n, b))?);
                let expected = if a == b { scalar::from_rational(scale.clone()) } else { Gauss::zero() };
                Ok(ta.dot(&tb).compare(&expected))
            })();
            ck.record("orthogonality", n, t, out, || json!({ "masks": [a, b] }));

            let sp = random_ideal(&mut s, n, 4);
            let tp = random_ideal(&mut s, n, 4);
            let v = s.real_vector(2 * n);
            let out = (|| {
                let vc = v.to_clifford();
                let sum = wf.hermitian(&wf.left_mult(&vc, &sp)?, &tp) + wf.hermitian(&sp, &wf.left_mult(&vc, &tp)?);
                Ok(sum.compare(&Gauss::zero()))
            })();
            ck.record("skew-adjoint", n, t, out, || {
                json!({ "v": encode::vector(&v), "s": encode::ideal(&sp), "t": encode::ideal(&tp) })
            });

            let norm = wf.hermitian(&sp, &sp);
            let positive = sp.is_zero() || (norm.im.is_zero() && norm.re > Zero::zero());
            ck.record("positive", n, t, Ok(holds(positive)), || json!({ "s": encode::ideal(&sp) }));

            let u = random_spin(&mut s, 2 * n);
            let out = (|| {
                let lhs = wf.hermitian(&act(&wf, &u, &sp)?, &act(&wf, &u, &tp)?);
                Ok(lhs.compare(&wf.hermitian(&sp, &tp)))
            })();
            ck.record("spin-invariant", n, t, out, || {
                json!({ "u": encode::spin(&u), "s": encode::ideal(&sp), "t": encode::ideal(&tp) })
            });
        }
    }
    Ok(ck.finish("hermitian-normalization", config, true))
}

/// Matrix of `s ↦ f(s)` on the basis `z_I·ω̄`.
fn operator_matrix(
    n: usize,
    f: impl Fn(&IdealSpinor) -> spinorlab::Result<IdealSpinor>,
) -> spinorlab::Result<Matrix> {
    let cols: Vec<Vec<Gauss>> =
        (0..1u32 << n).map(|m| f(&IdealSpinor::basis(n, m)).map(|s| s.coords().to_vec())).collect::<Result<_, _>>()?;
    Ok(Matrix::from_columns(1 << n, &cols))
}

pub struct KillingMatrices {
    /// `Σ_j p_+(e_j)·p_-(e_j)` as printed.
    pub literal: Matrix,
    /// The contraction entering `D̂ψ = -αΣ p_+(e_j)·p_-(e_j)·φ`, i.e. `-literal`.
    pub contraction: Matrix,
    /// `-(i/2)Ω̃ + (n/2)Id` (resp. `+(i/2)Ω̃ + (n/2)Id`).
    pub reference: Matrix,
    /// `L^{(n+1)/2}` (resp. `L^{(n-1)/2}`).
    pub grade: usize,
}

pub fn killing_matrices(wf: &WittFrame, sign: KillingSign) -> spinorlab::Result<KillingMatrices> {
    let n = wf.n();
    Ok(KillingMatrices {
        literal: operator_matrix(n, |s| wf.killing_sum(s, sign))?,
        contraction: operator_matrix(n, |s| wf.killing_contraction(s, sign))?,
        reference: operator_matrix(n, |s| wf.killing_reference(s, sign))?,
        grade: killing_grade(n, sign)?,
    })
}

/// Restriction of `m` to `L^p`, checked to be `c·Id` there.
pub fn acts_as_scalar_on(m: &Matrix, n: usize, p: usize, c: &Gauss) -> bool {
    (0..1usize << n).filter(|i| i.count_ones() as usize == p).all(|i| {
        (0..1usize << n).all(|r| m[(r, i)] == if r == i { c.clone() } else { Gauss::zero() })
    })
}

pub fn killing(config: &SuiteConfig) -> Result<SuiteResult, String> {
    check_range(config, MAX_WITT_N)?;
    let mut ck = Checker::new(config.tolerance);
    for n in config.range.iter() {
        let mut s = config.sampler("killing", n);
        if n % 2 == 0 {
            let rejected = matches!(killing_grade(n, KillingSign::PlusMinus), Err(Error::EvenDimensionKilling(_)));
            ck.record("even-n-rejected", n, 0, Ok(holds(rejected)), || json!({ "n": n }));
            continue;
        }
        let wf = match build_witt(n, None) {
            Ok(w) => w,
            Err(e) => {
                ck.record("build", n, 0, Err(e), || json!(null));
                continue;
            }
        };
        let half = scalar::from_rational(scalar::rational(n as i64 + 1, 2));
        for sign in [KillingSign::PlusMinus, KillingSign::MinusPlus] {
            let tag = match sign {
                KillingSign::PlusMinus => "plus-minus",
                KillingSign::MinusPlus => "minus-plus",
            };
            match killing_matrices(&wf, sign) {
                Ok(k) => {
                    ck.record(&format!("{tag}-operator-identity"), n, 0, Ok(k.contraction.compare(&k.reference)), || {
                        json!({ "n": n })
                    });
                    ck.record(
                        &format!("{tag}-eigenvalue"),
                        n,
                        0,
                        Ok(holds(acts_as_scalar_on(&k.contraction, n, k.grade, &half))),
                        || json!({ "n": n, "grade": k.grade }),
                    );
                    ck.record(
                        &format!("{tag}-literal-sum-is-negated"),
                        n,
                        0,
                        Ok(k.literal.compare(&(-&k.contraction))),
                        || json!({ "n": n }),
                    );
                }
                Err(e) => {
                    ck.record(&format!("{tag}-operator-identity"), n, 0, Err(e), || json!({ "n": n }));
                }
            }
        }
        ck.note("the printed sum Σ p_+(e_j)·p_-(e_j) acts as -(n+1)/2 on L^{(n+1)/2}; the contraction in D̂ψ = -αΣ p_+(e_j)·p_-(e_j)·φ carries the minus sign and acts as +(n+1)/2");
        for t in 0..config.trials {
            let sp = random_ideal(&mut s, n, 4);
            let out = (|| {
                let mut o = Outcome::exact(true, 0.0);
                for sign in [KillingSign::PlusMinus, KillingSign::MinusPlus] {
                    o = o.and(wf.killing_contraction(&sp, sign)?.compare(&wf.killing_reference(&sp, sign)?));
                    let p = killing_grade(n, sign)?;
                    let part = sp.grade_part(p);
                    o = o.and(wf.killing_contraction(&part, sign)?.compare(&part.scale(&half)));
                }
                Ok(o)
            })();
            ck.record("random-spinors", n, t, out, || json!({ "s": encode::ideal(&sp) }));
        }
    }
    Ok(ck.finish("killing", config, true))
}

