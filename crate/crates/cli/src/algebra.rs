//! Suites for the Clifford algebra, the spinor module `Σ_n`, the real
//! structure `ȷ` and the isomorphism `Cl_n ≅ Σ_n ⊗ Σ_n`.

use num_traits::{One, Zero};
use serde_json::json;
use spinorlab::clifford::{self, exterior_power};
use spinorlab::matrix::Matrix;
use spinorlab::scalar::{self, Gauss};
use spinorlab::spin_rep::{
    self, build_j, build_rep, clif_to_tensor, dual_matrix, sigma_to_dual, tensor_to_clif, vector_pair,
    StructureKind,
};
use spinorlab::{Blade, CliffordElement, Sampler, SpinElement, Vector, MAX_DIM};

use crate::encode::{self, holds, Compare};
use crate::{Checker, Outcome, SuiteConfig, SuiteResult};

pub(crate) fn check_range(config: &SuiteConfig, max: usize) -> Result<(), String> {
    if config.range.end > max {
        return Err(format!("n = {} exceeds the largest supported dimension {max}", config.range.end));
    }
    Ok(())
}

fn minus_one() -> Gauss {
    scalar::int(-1)
}

fn sign(p: usize) -> Gauss {
    scalar::int(if p.is_multiple_of(2) { 1 } else { -1 })
}

/// A random element of `Spin_n` with two or four factors.
pub(crate) fn random_spin(s: &mut Sampler, n: usize) -> SpinElement {
    let k = if s.coin() { 2 } else { 4 };
    s.spin_element(n, k).expect("even factor count")
}

fn random_grade(s: &mut Sampler, n: usize) -> usize {
    s.index(n + 1)
}

/// `v∧x - v⌟x`.
pub(crate) fn clifford_action_on_forms(
    v: &Vector,
    x: &spinorlab::ExteriorElement,
) -> spinorlab::Result<spinorlab::ExteriorElement> {
    Ok(&clifford::wedge(&v.to_exterior(), x)? - &clifford::contract(v, x)?)
}

/// `v∧x + v⌟x`.
pub(crate) fn twisted_action_on_forms(
    v: &Vector,
    x: &spinorlab::ExteriorElement,
) -> spinorlab::Result<spinorlab::ExteriorElement> {
    Ok(&clifford::wedge(&v.to_exterior(), x)? + &clifford::contract(v, x)?)
}

pub fn spinor_module(config: &SuiteConfig) -> Result<SuiteResult, String> {
    check_range(config, MAX_DIM)?;
    let mut ck = Checker::new(config.tolerance);
    for n in config.range.iter() {
        let mut s = config.sampler("eq1", n);
        if n <= 2 {
            for mask in 0..1u32 << n {
                let phi = CliffordElement::from_blade(n, Blade(mask), Gauss::one());
                let p = Blade(mask).grade();
                for j in 0..n {
                    let v = Vector::basis(n, j);
                    let out = (|| {
                        let left = clifford::chevalley_to_exterior(&(&v.to_clifford() * &phi));
                        let expected = clifford_action_on_forms(&v, &clifford::chevalley_to_exterior(&phi))?;
                        let right = clifford::chevalley_to_exterior(&(&phi * &v.to_clifford()));
                        let expected_right =
                            twisted_action_on_forms(&v, &clifford::chevalley_to_exterior(&phi))?.scale(&sign(p));
                        Ok(left.compare(&expected).and(right.compare(&expected_right)))
                    })();
                    ck.record("basis-exhaustive", n, 0, out, || json!({ "blade": mask, "generator": j }));
                }
            }
            for j in 0..n {
                for k in 0..n {
                    let (a, b) = (CliffordElement::generator(n, j), CliffordElement::generator(n, k));
                    let anti = &(&a * &b) + &(&b * &a);
                    let expected = CliffordElement::scalar(n, scalar::int(if j == k { -2 } else { 0 }));
                    ck.record("defining-relation", n, 0, Ok(anti.compare(&expected)), || json!({ "j": j, "k": k }));
                }
            }
        }
        for t in 0..config.trials {
            let v = s.real_vector(n);
            let phi = s.clifford_element(n, 4);
            let out = (|| {
                let lhs = clifford::chevalley_to_exterior(&clifford::clifford_mul(&v.to_clifford(), &phi)?);
                Ok(lhs.compare(&clifford_action_on_forms(&v, &clifford::chevalley_to_exterior(&phi))?))
            })();
            ck.record("left-intertwining", n, t, out, || {
                json!({ "v": encode::vector(&v), "phi": encode::clifford(&phi) })
            });

            let p = random_grade(&mut s, n);
            let phi_p = s.homogeneous(n, p, 3);
            let out = (|| {
                let lhs = clifford::chevalley_to_exterior(&clifford::clifford_mul(&phi_p, &v.to_clifford())?);
                let rhs = twisted_action_on_forms(&v, &clifford::chevalley_to_exterior(&phi_p))?.scale(&sign(p));
                Ok(lhs.compare(&rhs))
            })();
            ck.record("right-multiplication", n, t, out, || {
                json!({ "v": encode::vector(&v), "phi": encode::clifford(&phi_p), "grade": p })
            });

            let unit = s.unit_vector(n);
            let square = &unit.to_clifford() * &unit.to_clifford();
            ck.record("unit-square", n, t, Ok(square.compare(&CliffordElement::scalar(n, minus_one()))), || {
                json!({ "v": encode::vector(&unit) })
            });
            if n >= 2 {
                let r = s.rotation(n);
                let (a, b) = (Vector::new(r.column(0)).to_clifford(), Vector::new(r.column(1)).to_clifford());
                let anti = &(&a * &b) + &(&b * &a);
                ck.record("orthogonal-anticommute", n, t, Ok(anti.compare(&CliffordElement::zero(n))), || {
                    json!({ "v": encode::clifford(&a), "w": encode::clifford(&b) })
                });
            }

            let (a, b, c) = (s.clifford_element(n, 3), s.clifford_element(n, 3), s.clifford_element(n, 3));
            let assoc = (&(&a * &b) * &c).compare(&(&a * &(&b * &c)));
            ck.record("associativity", n, t, Ok(assoc), || {
                json!({ "a": encode::clifford(&a), "b": encode::clifford(&b), "c": encode::clifford(&c) })
            });

            let u = random_spin(&mut s, n);
            let out = (|| {
                let ad = u.ad(&phi)?;
                let lhs = clifford::chevalley_to_exterior(&ad);
                let rhs = exterior_power(&u.ad_matrix(), &clifford::chevalley_to_exterior(&phi))?;
                let mut o = lhs.compare(&rhs);
                for q in 0..=n {
                    let part = u.ad(&phi.grade_part(q))?;
                    o = o.and(holds(part.is_zero() || part.homogeneous_grade() == Some(q)));
                }
                Ok(o)
            })();
            ck.record("spin-equivariance", n, t, out, || {
                json!({ "u": encode::spin(&u), "phi": encode::clifford(&phi) })
            });

            let r = u.ad_matrix();
            let orthogonal = (&r.transpose() * &r).is_identity() && r.det() == Gauss::one();
            let two_to_one = u.negate().ad_matrix() == r;
            let w = s.real_vector(n);
            let rw = Vector::new(r.mul_vec(w.coords()));
            let norm = rw.can(&rw) == w.can(&w);
            ck.record("adjoint-in-so", n, t, Ok(holds(orthogonal && two_to_one && norm)), || {
                json!({ "u": encode::spin(&u) })
            });

            if 2 * n <= MAX_DIM {
                let out = (|| {
                    let lhs = clifford::embed(&(&a * &b), 2 * n)?;
                    let rhs = &clifford::embed(&a, 2 * n)? * &clifford::embed(&b, 2 * n)?;
                    Ok(lhs.compare(&rhs))
                })();
                ck.record("embedding-multiplicative", n, t, out, || {
                    json!({ "a": encode::clifford(&a), "b": encode::clifford(&b) })
                });
            }
        }
    }
    Ok(ck.finish("eq1", config, true))
}

/// `ȷ² = +Id` for `n ≡ 0, 6, 7`, `-Id` for `n ≡ 2, 3, 4 (mod 8)`; no claim
/// otherwise.
pub fn expected_kind(n: usize) -> Option<StructureKind> {
    match n % 8 {
        0 | 6 | 7 => Some(StructureKind::Real),
        2..=4 => Some(StructureKind::Quaternionic),
        _ => None,
    }
}

/// Rank of `a ↦ δ_n(a)` (paired with the second summand for odd `n`).
fn delta_rank(rep: &spin_rep::SpinorRep) -> spinorlab::Result<usize> {
    let n = rep.n();
    let mut columns = Vec::with_capacity(1 << n);
    for mask in 0..1u32 << n {
        let e = CliffordElement::from_blade(n, Blade(mask), Gauss::one());
        let mut col: Vec<Gauss> = flatten(&rep.delta(&e)?);
        if rep.is_odd() {
            col.extend(flatten(&rep.delta_second(&e)?));
        }
        columns.push(col);
    }
    let rows = columns[0].len();
    Ok(Matrix::from_columns(rows, &columns).rank())
}

fn flatten(m: &Matrix) -> Vec<Gauss> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            out.push(m[(r, c)].clone());
        }
    }
    out
}

pub fn real_structure(config: &SuiteConfig) -> Result<SuiteResult, String> {
    check_range(config, MAX_DIM)?;
    let mut ck = Checker::new(config.tolerance);
    for n in config.range.iter() {
        let mut s = config.sampler("lemma1", n);
        let rep = match build_rep(n) {
            Ok(r) => r,
            Err(e) => {
                ck.record("build", n, 0, Err(e), || json!(null));
                continue;
            }
        };
        let d = rep.d();
        let id = Matrix::identity(d);
        let mut gammas_ok = true;
        for j in 0..n {
            let g = rep.gamma(j);
            gammas_ok &= (&g * &g.adjoint()).is_identity() && g.adjoint() == -&g;
            for k in 0..n {
                let anti = &(&g * &rep.gamma(k)) + &(&rep.gamma(k) * &g);
                gammas_ok &= anti == Matrix::scalar(d, &scalar::int(if j == k { -2 } else { 0 }));
            }
        }
        ck.record("gamma-relations", n, 0, Ok(holds(gammas_ok)), || json!({ "n": n }));
        if rep.is_odd() {
            let vol = rep.delta(&rep.complex_volume());
            ck.record("odd-volume-convention", n, 0, vol.map(|m| holds(m == id)), || json!({ "n": n }));
        }
        ck.record(
            "delta-surjective",
            n,
            0,
            delta_rank(&rep).map(|r| holds(r == if rep.is_odd() { 2 * d * d } else { d * d })),
            || json!({ "n": n }),
        );

        let j = match build_j(&rep) {
            Ok(j) => j,
            Err(e) => {
                ck.record("real-structure-exists", n, 0, Err(e), || json!({ "n": n }));
                continue;
            }
        };
        ck.record("real-structure-exists", n, 0, Ok(holds(true)), || json!(null));
        let c = j.matrix();
        let square = &c.clone() * &c.conj();
        let kind_ok = match expected_kind(n) {
            Some(k) => j.kind() == k,
            None => {
                ck.note(format!("n = {n}: ȷ² = {:?}, vectors {:?} with ȷ", j.kind(), j.vector_relation()));
                true
            }
        };
        let sq_ok = square.is_identity() || (-&square).is_identity();
        ck.record("kind-table", n, 0, Ok(holds(kind_ok && sq_ok && c.rank() == d)), || {
            json!({ "n": n, "kind": format!("{:?}", j.kind()) })
        });

        for t in 0..config.trials {
            let u = random_spin(&mut s, n);
            let sigma = s.spinor(d);
            let out = (|| {
                let du = rep.delta_spin(&u)?;
                let lhs = du.mul_vec(&j.apply(&sigma));
                let rhs = j.apply(&du.mul_vec(&sigma));
                Ok(lhs.compare(&rhs))
            })();
            ck.record("commutes-with-spin", n, t, out, || {
                json!({ "u": encode::spin(&u), "sigma": encode::spinor(&sigma) })
            });

            let z = s.gauss();
            let scaled: Vec<Gauss> = sigma.iter().map(|x| x * &z).collect();
            let expected: Vec<Gauss> = j.apply(&sigma).iter().map(|x| x * z.conj()).collect();
            let twice = j.apply(&j.apply(&sigma));
            let sgn = if j.kind() == StructureKind::Real { Gauss::one() } else { minus_one() };
            let sq: Vec<Gauss> = sigma.iter().map(|x| x * &sgn).collect();
            ck.record(
                "antilinear-involution",
                n,
                t,
                Ok(j.apply(&scaled).compare(&expected).and(twice.compare(&sq))),
                || json!({ "sigma": encode::spinor(&sigma), "z": encode::gauss(&z) }),
            );

            let tau = s.spinor(d);
            let v = s.real_vector(n);
            let out = (|| {
                let dv = rep.delta_vector(&v)?;
                let sum = spin_rep::hermitian(&dv.mul_vec(&sigma), &tau) + spin_rep::hermitian(&sigma, &dv.mul_vec(&tau));
                let du = rep.delta_spin(&u)?;
                let unitary = spin_rep::hermitian(&du.mul_vec(&sigma), &du.mul_vec(&tau))
                    .compare(&spin_rep::hermitian(&sigma, &tau));
                let norm = spin_rep::hermitian(&sigma, &sigma);
                let positive = sigma.iter().all(|x| x.is_zero()) || (norm.im.is_zero() && norm.re > Zero::zero());
                Ok(sum.compare(&Gauss::zero()).and(unitary).and(holds(positive)))
            })();
            ck.record("hermitian-product", n, t, out, || {
                json!({ "v": encode::vector(&v), "sigma": encode::spinor(&sigma), "tau": encode::spinor(&tau) })
            });

            let (a, b) = (s.clifford_element(n, 3), s.clifford_element(n, 3));
            let out = (|| {
                let mut o = rep.delta(&(&a * &b))?.compare(&(&rep.delta(&a)? * &rep.delta(&b)?));
                if rep.is_odd() {
                    o = o.and(rep.delta_second(&(&a * &b))?.compare(&(&rep.delta_second(&a)? * &rep.delta_second(&b)?)));
                }
                Ok(o)
            })();
            ck.record("delta-multiplicative", n, t, out, || {
                json!({ "a": encode::clifford(&a), "b": encode::clifford(&b) })
            });
        }
    }
    Ok(ck.finish("lemma1", config, true))
}

pub fn tensor_isomorphism(config: &SuiteConfig) -> Result<SuiteResult, String> {
    check_range(config, MAX_DIM)?;
    let mut ck = Checker::new(config.tolerance);
    for n in config.range.iter() {
        let mut s = config.sampler("eq4", n);
        let (rep, j) = match build_rep(n).and_then(|r| build_j(&r).map(|j| (r, j))) {
            Ok(x) => x,
            Err(e) => {
                ck.record("build", n, 0, Err(e), || json!(null));
                continue;
            }
        };
        let mut round_trip = Outcome::exact(true, 0.0);
        for mask in 0..1u32 << n {
            let e = CliffordElement::from_blade(n, Blade(mask), Gauss::one());
            match clif_to_tensor(&rep, &j, &e).and_then(|t| tensor_to_clif(&rep, &j, &t)) {
                Ok(back) => round_trip = round_trip.and(back.compare(&e)),
                Err(_) => round_trip = Outcome::exact(false, f64::INFINITY),
            }
        }
        ck.record("bijective", n, 0, Ok(round_trip), || json!({ "n": n }));
        if rep.is_odd() {
            let v = Vector::basis(n, 0);
            let out = (|| Ok(rep.delta_second(&v.to_clifford())?.compare(&(-&rep.delta_vector(&v)?))))();
            ck.record("odd-summands", n, 0, out, || json!({ "n": n }));
        }

        for t in 0..config.trials {
            let v = s.real_vector(n);
            let phi = s.clifford_element(n, 4);
            let out = (|| {
                let (first, second) = vector_pair(&rep, &v)?;
                let image = clif_to_tensor(&rep, &j, &phi)?;
                let left = clif_to_tensor(&rep, &j, &clifford::clifford_mul(&v.to_clifford(), &phi)?)?;
                Ok(left.compare(&image.left(&first, &second)))
            })();
            ck.record("left-action", n, t, out, || {
                json!({ "v": encode::vector(&v), "phi": encode::clifford(&phi) })
            });

            let out = (|| {
                let (first, second) = vector_pair(&rep, &v)?;
                let image = clif_to_tensor(&rep, &j, &phi)?;
                let right = clif_to_tensor(&rep, &j, &clifford::clifford_mul(&phi, &v.to_clifford())?)?;
                Ok(right.compare(&image.right(&first, &second).scale(&minus_one())))
            })();
            ck.record("right-action-sign", n, t, out, || {
                json!({ "v": encode::vector(&v), "phi": encode::clifford(&phi) })
            });

            let u = random_spin(&mut s, n);
            let out = (|| {
                let du = rep.delta_spin(&u)?;
                let image = clif_to_tensor(&rep, &j, &phi)?;
                let lhs = clif_to_tensor(&rep, &j, &u.ad(&phi)?)?;
                Ok(lhs.compare(&image.left(&du, &du).right(&du, &du)))
            })();
            ck.record("spin-equivariance", n, t, out, || {
                json!({ "u": encode::spin(&u), "phi": encode::clifford(&phi) })
            });

            let out = (|| {
                let image = clif_to_tensor(&rep, &j, &phi)?;
                Ok(tensor_to_clif(&rep, &j, &image)?.compare(&phi))
            })();
            ck.record("round-trip", n, t, out, || json!({ "phi": encode::clifford(&phi) }));
        }
    }
    Ok(ck.finish("eq4", config, true))
}

pub fn dual_pairing(config: &SuiteConfig) -> Result<SuiteResult, String> {
    check_range(config, MAX_DIM)?;
    let mut ck = Checker::new(config.tolerance);
    for n in config.range.iter() {
        let mut s = config.sampler("eq5", n);
        let (rep, j) = match build_rep(n).and_then(|r| build_j(&r).map(|j| (r, j))) {
            Ok(x) => x,
            Err(e) => {
                ck.record("build", n, 0, Err(e), || json!(null));
                continue;
            }
        };
        let d = rep.d();
        let mut basis_ok = true;
        for k in 0..d {
            let mut e = vec![Gauss::zero(); d];
            e[k] = Gauss::one();
            basis_ok &= sigma_to_dual(&j, &j.apply_inverse(&e)) == e;
        }
        ck.record("dual-basis", n, 0, Ok(holds(basis_ok)), || json!({ "n": n }));
        ck.record("full-rank", n, 0, Ok(holds(dual_matrix(&j).rank() == d)), || json!({ "n": n }));

        for t in 0..config.trials {
            let u = random_spin(&mut s, n);
            let sigma = s.spinor(d);
            let tau = s.spinor(d);
            let out = (|| {
                let lhs = sigma_to_dual(&j, &rep.delta_spin(&u)?.mul_vec(&sigma));
                let rhs = rep.delta_spin(&u.inverse())?.transpose().mul_vec(&sigma_to_dual(&j, &sigma));
                Ok(lhs.compare(&rhs))
            })();
            ck.record("equivariance", n, t, out, || {
                json!({ "u": encode::spin(&u), "sigma": encode::spinor(&sigma) })
            });

            let pairing = spin_rep::pair(&sigma_to_dual(&j, &sigma), &tau);
            let expected = spin_rep::hermitian(&tau, &j.apply(&sigma));
            let z = s.gauss();
            let scaled: Vec<Gauss> = sigma.iter().map(|x| x * &z).collect();
            let linear = sigma_to_dual(&j, &scaled)
                .compare(&sigma_to_dual(&j, &sigma).iter().map(|x| x * &z).collect::<Vec<_>>());
            ck.record("pairing", n, t, Ok(pairing.compare(&expected).and(linear)), || {
                json!({ "sigma": encode::spinor(&sigma), "tau": encode::spinor(&tau), "z": encode::gauss(&z) })
            });
        }
    }
    Ok(ck.finish("eq5", config, true))
}
