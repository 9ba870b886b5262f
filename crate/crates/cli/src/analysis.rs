//! Suites for the flat models, the min-max principle and the closed-form
//! sphere data behind the eigenvalue bound.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;
use spinorlab::flat::{
    circle_operators, dirac_witten, euler_operator, killing_solution_dim, mode_vector, rayleigh_minmax, twisted_dirac,
    verify_square_identity, CircleSpinStructure, MeanCurvatureData, Model, ModeOperator, SpinStructure, MAX_TORUS_N,
};
use spinorlab::linalg::{self, CMatrix, CVector};
use spinorlab::matrix::Matrix;
use spinorlab::scalar;
use spinorlab::sphere::{
    binomial, closed_form_eigenvalue, closed_form_spectrum, killing_space_dims, sharpness_check, theorem_bound,
    BoundInput,
};
use spinorlab::{Error, Sampler};

use crate::algebra::check_range;
use crate::encode::holds;
use crate::{Checker, Outcome, SuiteConfig, SuiteResult};

const STRUCTURES: [SpinStructure; 2] = [SpinStructure::Trivial, SpinStructure::Nontrivial];

fn structure_tag(s: SpinStructure) -> &'static str {
    match s {
        SpinStructure::Trivial => "trivial",
        SpinStructure::Nontrivial => "nontrivial",
    }
}

/// Largest difference between two sorted lists of equal length.
fn list_residual(a: &[f64], b: &[f64]) -> Outcome {
    if a.len() != b.len() {
        return Outcome::exact(false, f64::INFINITY);
    }
    Outcome::approx(a.iter().zip(b).map(|(x, y)| (x - y).abs() / y.abs().max(1.0)).fold(0.0, f64::max))
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.total_cmp(b));
    v
}

/// `|k|²` over the integer lattice `[-K, K]^n`, each with multiplicity `d`.
fn lattice_norms(n: usize, cutoff: i64, d: usize) -> Vec<f64> {
    let mut norms = vec![0i64];
    for _ in 0..n {
        norms = norms.into_iter().flat_map(|s| (-cutoff..=cutoff).map(move |k| s + k * k)).collect();
    }
    sorted(norms.into_iter().flat_map(|s| std::iter::repeat_n(s as f64, d)).collect())
}

/// The whole operator as one dense matrix.
fn dense(op: &ModeOperator) -> CMatrix {
    let d = op.fiber_dim();
    let mut m = CMatrix::zeros(op.dim(), op.dim());
    for i in 0..op.blocks.len() {
        m.view_mut((i * d, i * d), (d, d)).copy_from(&op.block_c64(i));
    }
    m
}

pub fn twisted_dirac_euler(config: &SuiteConfig) -> Result<SuiteResult, String> {
    check_range(config, MAX_TORUS_N)?;
    let cutoff = config.cutoff.unwrap_or(5);
    let mut ck = Checker::new(config.tolerance);
    for n in config.range.iter() {
        let mut s = config.sampler("corollary10", n);
        let model = Model::Torus(n);
        let ops = twisted_dirac(model, cutoff).and_then(|d| Ok((d, euler_operator(model, cutoff)?)));
        let (d, e) = match ops {
            Ok(x) => x,
            Err(err) => {
                ck.record("build", n, 0, Err(err), || json!({ "cutoff": cutoff }));
                continue;
            }
        };
        let fiber = 1usize << n;
        let same = d.blocks.len() == e.blocks.len()
            && d.blocks.iter().zip(&e.blocks).all(|(a, b)| a.mode == b.mode && a.symbol == b.symbol && a.constant == b.constant);
        ck.record("blocks-equal", n, 0, Ok(holds(same)), || json!({ "cutoff": cutoff }));

        let squares = d.blocks.iter().all(|b| {
            let k2: i64 = b.mode.iter().map(|m| m * m).sum::<i64>() / 4;
            &b.symbol * &b.symbol == Matrix::scalar(fiber, &scalar::int(k2))
        });
        ck.record("symbol-square", n, 0, Ok(holds(squares)), || json!({ "cutoff": cutoff }));

        let four_pi2 = 4.0 * std::f64::consts::PI * std::f64::consts::PI;
        let out = d.squared().and_then(|d2| d2.real_spectrum(config.tolerance)).map(|spec| {
            let oracle: Vec<f64> = lattice_norms(n, cutoff, fiber).into_iter().map(|x| four_pi2 * x).collect();
            list_residual(&spec, &oracle)
        });
        ck.record("squared-spectrum", n, 0, out, || json!({ "cutoff": cutoff }));

        ck.record("kernel", n, 0, Ok(holds(d.kernel_dim(1e-9) == fiber)), || json!({ "cutoff": cutoff }));

        let out = d.real_spectrum(config.tolerance).map(|spec| {
            let neg: Vec<f64> = sorted(spec.iter().map(|x| -x).collect());
            list_residual(&spec, &neg)
        });
        ck.record("symmetric-spectrum", n, 0, out, || json!({ "cutoff": cutoff }));

        for t in 0..config.trials {
            let v = random_cvector(&mut s, d.dim());
            let r = (d.apply(&v) - e.apply(&v)).iter().map(|z| z.norm()).fold(0.0, f64::max);
            ck.record("random-sections", n, t, Ok(Outcome::approx(r)), || json!({ "cutoff": cutoff, "trial": t }));
        }
    }
    Ok(ck.finish("corollary10", config, true))
}

fn random_cvector(s: &mut Sampler, len: usize) -> CVector {
    CVector::from_fn(len, |_, _| scalar::to_c64(&s.gauss()))
}

pub fn square_identity(config: &SuiteConfig) -> Result<SuiteResult, String> {
    check_range(config, MAX_TORUS_N)?;
    let cutoff = config.cutoff.unwrap_or(3);
    let mut ck = Checker::new(config.tolerance);
    for n in config.range.iter() {
        let out = verify_square_identity(Model::Torus(n), cutoff)
            .map(|r| Outcome::exact(r.exact && r.shift == "0", r.max_residual));
        ck.record("torus", n, 0, out, || json!({ "cutoff": cutoff }));
        if n == 1 {
            for t in STRUCTURES {
                let out = verify_square_identity(Model::Circle(CircleSpinStructure::new(t)), cutoff)
                    .map(|r| Outcome::exact(r.exact && r.shift == "1/4", r.max_residual));
                ck.record(&format!("circle-{}", structure_tag(t)), n, 0, out, || json!({ "cutoff": cutoff }));
            }
        }
        let mut s = config.sampler("eq12", n);
        let model = Model::Torus(n);
        let ops = (|| Ok((twisted_dirac(model, cutoff)?, dirac_witten(model, cutoff, &MeanCurvatureData::torus(n))?)))();
        let (d, dh): (ModeOperator, ModeOperator) = match ops {
            Ok(x) => x,
            Err(err) => {
                ck.record("build", n, 0, Err(err), || json!({ "cutoff": cutoff }));
                continue;
            }
        };
        for t in 0..config.trials {
            let v = random_cvector(&mut s, d.dim());
            let lhs = d.apply(&d.apply(&v));
            let rhs = dh.apply(&dh.apply(&v));
            let r = (lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max) / v.norm().max(1.0);
            ck.record("random-sections", n, t, Ok(Outcome::approx(r)), || json!({ "cutoff": cutoff, "trial": t }));
        }
    }
    Ok(ck.finish("eq12", config, false))
}

pub fn circle_counterexample(config: &SuiteConfig) -> Result<SuiteResult, String> {
    check_range(config, 1)?;
    let cutoff = config.cutoff.unwrap_or(20);
    let mut ck = Checker::new(config.tolerance);
    let n = 1;
    let half_integers: Vec<f64> = sorted((-2 * cutoff..=2 * cutoff).filter(|m| m % 2 != 0).map(|m| m as f64 / 2.0).collect());
    for t in STRUCTURES {
        let tag = structure_tag(t);
        let ops = match circle_operators(t, cutoff) {
            Ok(o) => o,
            Err(err) => {
                ck.record(&format!("{tag}-build"), n, 0, Err(err), || json!({ "cutoff": cutoff }));
                continue;
            }
        };
        let tol = config.tolerance;
        let out = (|| {
            let induced = ops.induced_twisted_dirac.real_spectrum(tol)?;
            let fundamental = ops.fundamental_dirac.real_spectrum(tol)?;
            let doubled = sorted(fundamental.iter().flat_map(|x| [*x, *x]).collect());
            let oracle = sorted(half_integers.iter().flat_map(|x| [*x, *x]).collect());
            let min_abs = induced.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
            Ok(list_residual(&induced, &doubled)
                .and(list_residual(&fundamental, &half_integers))
                .and(list_residual(&induced, &oracle))
                .and(Outcome::approx((min_abs - 0.5).abs())))
        })();
        ck.record(&format!("{tag}-induced-is-fundamental"), n, 0, out, || json!({ "cutoff": cutoff }));

        ck.record(&format!("{tag}-euler-kernel"), n, 0, Ok(holds(ops.euler.kernel_dim(1e-9) == 2)), || {
            json!({ "cutoff": cutoff })
        });

        let out = (|| {
            let spec = ops.induced_twisted_dirac.squared()?.real_spectrum(tol)?;
            let euler = ops.euler.squared()?.real_spectrum(tol)?;
            let zeros = euler.iter().filter(|x| x.abs() < 1e-9).count();
            Ok(Outcome::approx((spec[0] - 0.25).abs()).and(holds(zeros == 2)))
        })();
        ck.record(&format!("{tag}-spectral-gap"), n, 0, out, || json!({ "cutoff": cutoff }));

        let model = Model::Circle(CircleSpinStructure::new(t));
        let out = verify_square_identity(model, cutoff).map(|r| Outcome::exact(r.exact && r.shift == "1/4", r.max_residual));
        ck.record(&format!("{tag}-square-shift"), n, 0, out, || json!({ "cutoff": cutoff }));

        let out = dirac_witten(model, cutoff, &MeanCurvatureData::circle()).map(|op| holds(op.hermitian_defect() > 0.5));
        ck.record(&format!("{tag}-modified-not-selfadjoint"), n, 0, out, || json!({ "cutoff": cutoff }));
    }
    ck.note("D_M^{ΣN} on the circle is two copies of the Dirac operator of the antiperiodic structure, whatever the tangent structure; λ² ≥ 1/4 = n²|H|²/4 while the Euler operator has a two-dimensional kernel");
    Ok(ck.finish("remark-circle", config, false))
}

/// A trial span of `count` vectors mixing a few mode vectors of low blocks.
fn random_span(s: &mut Sampler, op: &ModeOperator, count: usize) -> Vec<CVector> {
    let mut order: Vec<usize> = (0..op.blocks.len()).collect();
    order.sort_by_key(|&i| op.blocks[i].mode.iter().map(|m| m * m).sum::<i64>());
    let low = order.len().min(count.max(4) * 2);
    (0..count)
        .map(|_| {
            let mut v = CVector::zeros(op.dim());
            for _ in 0..3 {
                let block = order[s.index(low)];
                let coord = s.index(op.fiber_dim());
                v += mode_vector(op, block, coord) * scalar::to_c64(&s.gauss());
            }
            v
        })
        .collect()
}

struct MinmaxModel {
    tag: String,
    squared: ModeOperator,
    eigenvalues: Vec<f64>,
    kernel: Vec<CVector>,
}

fn minmax_model(tag: String, model: Model, cutoff: i64) -> spinorlab::Result<MinmaxModel> {
    let squared = twisted_dirac(model, cutoff)?.squared()?;
    let eigenvalues = linalg::hermitian_eigenvalues(&dense(&squared));
    let zero = squared.blocks.iter().position(|b| b.mode.iter().all(|m| *m == 0));
    let kernel = zero.map_or_else(Vec::new, |b| (0..squared.fiber_dim()).map(|c| mode_vector(&squared, b, c)).collect());
    Ok(MinmaxModel { tag, squared, eigenvalues, kernel })
}

pub fn minmax(config: &SuiteConfig) -> Result<SuiteResult, String> {
    check_range(config, MAX_TORUS_N)?;
    let cutoff = config.cutoff.unwrap_or(2);
    let mut ck = Checker::new(config.tolerance.max(1e-8));
    for n in config.range.iter() {
        let mut s = config.sampler("minmax", n);
        let mut models = vec![(format!("torus-{n}"), Model::Torus(n))];
        if n == 1 {
            for t in STRUCTURES {
                models.push((format!("circle-{}", structure_tag(t)), Model::Circle(CircleSpinStructure::new(t))));
            }
        }
        for (tag, model) in models {
            let m = match minmax_model(tag.clone(), model, cutoff) {
                Ok(m) => m,
                Err(err) => {
                    ck.record(&format!("{tag}-build"), n, 0, Err(err), || json!({ "cutoff": cutoff }));
                    continue;
                }
            };
            let cap = m.eigenvalues.len().min(16);
            for t in 0..config.trials {
                let big_n = 1 + s.index(cap);
                let span = random_span(&mut s, &m.squared, big_n + 1);
                let out = (|| {
                    let bound = rayleigh_minmax(&m.squared, &span[..big_n])?;
                    let wider = rayleigh_minmax(&m.squared, &span)?;
                    let lambda = m.eigenvalues[big_n - 1];
                    Ok(Outcome::exact(wider >= bound - 1e-9, (lambda - bound).max(0.0)))
                })();
                let out = match out {
                    Err(Error::DegenerateTrialSpan { .. }) => Ok(holds(true)),
                    other => other,
                };
                ck.record(&format!("{}-bound-dominates", m.tag), n, t, out, || {
                    json!({ "cutoff": cutoff, "N": big_n, "trial": t })
                });
            }
            if !m.kernel.is_empty() {
                let out = rayleigh_minmax(&m.squared, &m.kernel).map(|b| Outcome::approx(b.abs()));
                ck.record(&format!("{}-kernel-span", m.tag), n, 0, out, || json!({ "cutoff": cutoff }));
            }
            let out = m.squared.real_spectrum(config.tolerance).map(|blockwise| list_residual(&blockwise, &m.eigenvalues));
            ck.record(&format!("{}-dense-matches-blockwise", m.tag), n, 0, out, || json!({ "cutoff": cutoff }));
        }
    }
    Ok(ck.finish("minmax", config, false))
}

pub fn sharpness(config: &SuiteConfig) -> Result<SuiteResult, String> {
    let mut ck = Checker::new(config.tolerance);
    for n in config.range.iter() {
        let nn = n as u64;
        if n % 2 == 0 || n < 3 {
            let rejected = sharpness_check(nn).is_err();
            ck.record("rejects-unsupported-n", n, 0, Ok(holds(rejected)), || json!({ "n": n }));
            continue;
        }
        let out = sharpness_check(nn).map(|r| {
            holds(r.eigenvalue_matches)
                .and(holds(r.binomial_identity))
                .and(holds(r.multiplicity_matches))
                .and(holds(r.holds && r.margin == "0"))
        });
        ck.record("sharp-bound", n, 0, out, || json!({ "n": n }));

        let p = nn.div_ceil(2);
        let out = closed_form_spectrum(nn, p, 8).map(|lines| {
            let increasing = lines.windows(2).all(|w| w[0].eigenvalue < w[1].eigenvalue);
            let oracle = lines.iter().all(|l| l.eigenvalue == BigUint::from((p + l.k) * (nn - p + 1 + l.k)));
            holds(increasing && oracle)
        });
        ck.record("closed-form-spectrum", n, 0, out, || json!({ "n": n, "p": p }));

        let out = killing_space_dims(nn).map(|d| {
            holds(d.plus == d.minus && d.killing == d.plus && d.killing == binomial(nn, p) + binomial(nn, p - 1))
        });
        ck.record("killing-dimensions", n, 0, out, || json!({ "n": n }));
    }
    Ok(ck.finish("sharpness", config, true))
}

fn q(a: i64, b: i64) -> BigRational {
    scalar::rational(a, b)
}

pub fn eigenvalue_bound(config: &SuiteConfig) -> Result<SuiteResult, String> {
    let mut ck = Checker::new(config.tolerance);
    let torus_cutoff = config.cutoff.unwrap_or(1);
    for n in config.range.iter() {
        let nn = n as u64;
        if n % 2 == 1 {
            let out = (|| {
                let dims = killing_space_dims(nn)?;
                let big_n = u64::try_from(&dims.killing).unwrap_or(u64::MAX);
                let r = theorem_bound(&BoundInput {
                    n: nn,
                    alpha2: BigRational::one(),
                    h_mean_sq: Some(BigRational::zero()),
                    h_sup_sq: None,
                    big_n,
                })?;
                let first = closed_form_eigenvalue(nn, nn.div_ceil(2), 0);
                let margin = BigRational::from_integer(first.into()) - &r.bound_value;
                Ok(holds(r.bound_value == q(((n + 1) * (n + 1)) as i64, 4) && margin.is_zero() && !r.vacuous))
            })();
            ck.record("sphere-real-alpha", n, 0, out, || json!({ "n": n }));

            let out = theorem_bound(&BoundInput {
                n: nn,
                alpha2: -BigRational::one(),
                h_mean_sq: None,
                h_sup_sq: Some(BigRational::one()),
                big_n: 1,
            })
            .map(|r| {
                let expected = q(-(((n + 1) * (n + 1)) as i64), 4) + q((n * n) as i64, 4);
                holds(r.bound_value == expected && r.vacuous && r.extended_value == Some(expected))
            });
            ck.record("imaginary-alpha-vacuous", n, 0, out, || json!({ "n": n }));
        } else {
            let out = theorem_bound(&BoundInput {
                n: nn,
                alpha2: BigRational::one(),
                h_mean_sq: Some(BigRational::zero()),
                h_sup_sq: None,
                big_n: 1,
            });
            ck.record("even-n-needs-zero-alpha", n, 0, Ok(holds(matches!(out, Err(Error::InvalidAlpha(_))))), || {
                json!({ "n": n })
            });
        }

        if n <= 3 {
            let fiber = 1usize << n;
            let out = (|| {
                let pairs = killing_solution_dim(n, torus_cutoff, Complex64::new(0.0, 0.0), 1e-9)?;
                let nonzero = killing_solution_dim(n, torus_cutoff, Complex64::new(1.0, 0.0), 1e-9)?;
                let big_n = fiber as u64;
                let r = theorem_bound(&BoundInput {
                    n: nn,
                    alpha2: BigRational::zero(),
                    h_mean_sq: Some(BigRational::zero()),
                    h_sup_sq: None,
                    big_n,
                })?;
                let spec = twisted_dirac(Model::Torus(n), torus_cutoff)?.squared()?.real_spectrum(config.tolerance)?;
                let lambda = spec[fiber - 1];
                let above = spec[fiber];
                Ok(holds(pairs == 2 * fiber && nonzero == 2 && r.bound_value.is_zero() && above > 1.0)
                    .and(Outcome::approx(lambda.abs())))
            })();
            ck.record("torus-parallel", n, 0, out, || json!({ "n": n, "cutoff": torus_cutoff }));
        }

        if n == 1 {
            let out = (|| {
                let r = theorem_bound(&BoundInput {
                    n: 1,
                    alpha2: BigRational::zero(),
                    h_mean_sq: Some(BigRational::one()),
                    h_sup_sq: None,
                    big_n: 2,
                })?;
                let mut o = Outcome::exact(true, 0.0);
                for t in STRUCTURES {
                    let spec = twisted_dirac(Model::Circle(CircleSpinStructure::new(t)), 3)?
                        .squared()?
                        .real_spectrum(config.tolerance)?;
                    let bound = scalar::rational_to_f64(&r.bound_value);
                    o = o.and(Outcome::approx((spec[1] - bound).abs()));
                }
                Ok(o.and(holds(r.bound_value == q(1, 4))))
            })();
            ck.record("circle-parallel", n, 0, out, || json!({ "n": 1 }));
        }
    }
    ck.note("for α ≠ 0 the tangential equations alone keep the constant pair ψ ∈ L^n, φ ∈ L^0; only the normal derivatives, invisible along M, rule it out on flat C^n");
    ck.note("with α = 0 the pairs (ψ, φ) of parallel spinors on the torus span 2·2^n dimensions, but ψ + φ only spans 2^n; the bound is applied with N = 2^n");
    Ok(ck.finish("theorem12", config, true))
}
