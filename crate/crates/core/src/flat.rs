//! Twisted Dirac, Euler and Dirac-Witten operators on the flat Lagrangian
//! models `S^1 ⊂ C` (unit circle) and `T^n = R^n/Z^n ⊂ C^n`, block-diagonal
//! over Fourier modes.
//!
//! Modes are stored as doubled frequencies so that antiperiodic spinors
//! (`m ∈ Z + 1/2`) stay integral. A block is `scale·symbol + constant`, with
//! `symbol` and `constant` exact; `scale` is `1` on the circle (arclength `t`,
//! `∂_t e^{imt} = im`) and `2π` on the torus.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::clifford::{self, Blade, ExteriorElement, Vector};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::matrix::Matrix;
use crate::scalar::{self, Gauss};
use crate::spin_rep::build_rep;
use crate::witt::{self, build_witt, IdealSpinor, KillingSign, WittFrame};

/// Largest torus dimension offered by the constructors.
pub const MAX_TORUS_N: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinStructure {
    Trivial,
    Nontrivial,
}

impl SpinStructure {
    /// Doubled frequency offset: periodic sections have integer modes,
    /// antiperiodic ones half-integer modes.
    fn doubled_shift(self) -> i64 {
        match self {
            SpinStructure::Trivial => 0,
            SpinStructure::Nontrivial => 1,
        }
    }

    fn from_shift(shift: i64) -> SpinStructure {
        if shift.rem_euclid(2) == 0 {
            SpinStructure::Trivial
        } else {
            SpinStructure::Nontrivial
        }
    }

    pub fn flip(self) -> SpinStructure {
        SpinStructure::from_shift(self.doubled_shift() + 1)
    }
}

/// A spin structure on `TS^1` and the structure it induces on the normal
/// bundle of `S^1 ⊂ C`, which is always the other one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CircleSpinStructure {
    pub tangent: SpinStructure,
}

impl CircleSpinStructure {
    pub fn new(tangent: SpinStructure) -> Self {
        CircleSpinStructure { tangent }
    }

    /// Going once around the circle the frame `(e_1, ν)` turns by `2π`, so
    /// the ambient (trivial) spin structure restricts to the nontrivial
    /// product on `ΣM ⊗ ΣN`; the normal structure is fixed by that.
    pub fn normal(&self) -> SpinStructure {
        self.tangent.flip()
    }

    /// Structure governing sections of `ΣM ⊗ ΣN`.
    pub fn product(&self) -> SpinStructure {
        SpinStructure::from_shift(self.tangent.doubled_shift() + self.normal().doubled_shift())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Circle,
    Torus,
}

/// Mean curvature as a constant normal vector `H = J(w)`, with `w` given in
/// the tangent frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeanCurvatureData {
    pub w: Vector,
}

impl MeanCurvatureData {
    /// Unit circle: `H` is the inward normal `J e_1`, `|H| = 1`.
    pub fn circle() -> Self {
        MeanCurvatureData { w: Vector::basis(1, 0) }
    }

    /// Flat torus: totally geodesic.
    pub fn torus(n: usize) -> Self {
        MeanCurvatureData { w: Vector::zero(n) }
    }

    pub fn norm_sqr(&self) -> Gauss {
        self.w.can(&self.w)
    }
}

#[derive(Clone, Debug)]
pub struct ModeBlock {
    /// Doubled frequencies, one per circle direction.
    pub mode: Vec<i64>,
    pub symbol: Matrix,
    pub constant: Matrix,
}

#[derive(Clone, Debug)]
pub struct ModeOperator {
    pub name: String,
    pub model: ModelKind,
    pub n: usize,
    pub cutoff: i64,
    pub structure: Option<SpinStructure>,
    pub scale: f64,
    pub hermitian: bool,
    pub blocks: Vec<ModeBlock>,
}

impl ModeOperator {
    pub fn fiber_dim(&self) -> usize {
        self.blocks.first().map_or(0, |b| b.symbol.rows())
    }

    pub fn dim(&self) -> usize {
        self.blocks.len() * self.fiber_dim()
    }

    pub fn block_c64(&self, i: usize) -> CMatrix {
        let b = &self.blocks[i];
        b.symbol.to_c64() * Complex64::new(self.scale, 0.0) + b.constant.to_c64()
    }

    /// Eigenvalues block by block, in mode order.
    pub fn block_eigenvalues(&self) -> Vec<Vec<Complex64>> {
        (0..self.blocks.len())
            .map(|i| {
                let m = self.block_c64(i);
                if self.hermitian {
                    linalg::hermitian_eigenvalues(&m).into_iter().map(|x| Complex64::new(x, 0.0)).collect()
                } else {
                    linalg::eigenvalues(&m)
                }
            })
            .collect()
    }

    /// All eigenvalues, which must be real within `tol`, in ascending order.
    pub fn real_spectrum(&self, tol: f64) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(self.dim());
        for z in self.block_eigenvalues().into_iter().flatten() {
            if z.im.abs() > tol {
                return Err(Error::InvalidParameter(format!("{} has a non-real eigenvalue {z}", self.name)));
            }
            out.push(z.re);
        }
        out.sort_by(|a, b| a.total_cmp(b));
        Ok(out)
    }

    pub fn kernel_dim(&self, tol: f64) -> usize {
        self.block_eigenvalues().into_iter().flatten().filter(|z| z.norm() <= tol).count()
    }

    /// Largest `‖B - B^†‖` over the blocks.
    pub fn hermitian_defect(&self) -> f64 {
        (0..self.blocks.len()).map(|i| linalg::hermitian_defect(&self.block_c64(i))).fold(0.0, f64::max)
    }

    /// The operator squared, blockwise. Exact when the blocks are pure
    /// symbols or the scale is 1.
    pub fn squared(&self) -> Result<ModeOperator> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        let unit = self.scale == 1.0;
        for b in &self.blocks {
            if !unit && !b.constant.is_zero() {
                return Err(Error::InvalidParameter("cannot square a mixed-scale block exactly".into()));
            }
            let full = if unit { &b.symbol + &b.constant } else { b.symbol.clone() };
            let d = full.rows();
            blocks.push(ModeBlock { mode: b.mode.clone(), symbol: &full * &full, constant: Matrix::zeros(d, d) });
        }
        Ok(ModeOperator {
            name: format!("({})^2", self.name),
            scale: self.scale * self.scale,
            hermitian: self.hermitian,
            blocks,
            ..self.clone()
        })
    }

    /// Block-diagonal action on a vector of length [`ModeOperator::dim`].
    pub fn apply(&self, v: &CVector) -> CVector {
        let d = self.fiber_dim();
        let mut out = CVector::zeros(v.len());
        for i in 0..self.blocks.len() {
            let block = self.block_c64(i);
            let seg = block * v.rows(i * d, d);
            out.rows_mut(i * d, d).copy_from(&seg);
        }
        out
    }

    pub fn spectrum_report(&self, tol: f64) -> Result<SpectrumReport> {
        let values = self.real_spectrum(tol)?;
        Ok(SpectrumReport {
            model: self.model,
            operator: self.name.clone(),
            n: self.n,
            cutoff: self.cutoff,
            structure: self.structure,
            tolerance: tol,
            eigenvalues: linalg::group_multiplicities(&values, tol)
                .into_iter()
                .map(|(value, multiplicity)| EigenLine { value, multiplicity })
                .collect(),
            residuals: BTreeMap::new(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenLine {
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub model: ModelKind,
    pub operator: String,
    pub n: usize,
    pub cutoff: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<SpinStructure>,
    pub tolerance: f64,
    pub eigenvalues: Vec<EigenLine>,
    pub residuals: BTreeMap<String, f64>,
}

/// The flat models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// Unit circle in `C`, with the spin structure chosen on its tangent bundle.
    Circle(CircleSpinStructure),
    /// `R^n/Z^n` in `C^n` with the trivial structures identified by `J`.
    Torus(usize),
}

impl Model {
    pub fn n(&self) -> usize {
        match self {
            Model::Circle(_) => 1,
            Model::Torus(n) => *n,
        }
    }

    fn kind(&self) -> ModelKind {
        match self {
            Model::Circle(_) => ModelKind::Circle,
            Model::Torus(_) => ModelKind::Torus,
        }
    }

    fn scale(&self) -> f64 {
        match self {
            Model::Circle(_) => 1.0,
            Model::Torus(_) => 2.0 * PI,
        }
    }

    fn validate(&self, cutoff: i64) -> Result<()> {
        if cutoff < 1 {
            return Err(Error::InvalidParameter(format!("cutoff must be at least 1, got {cutoff}")));
        }
        if let Model::Torus(n) = self {
            if *n == 0 || *n > MAX_TORUS_N {
                return Err(Error::DimensionOutOfRange { dim: *n, max: MAX_TORUS_N });
            }
        }
        Ok(())
    }

    /// Doubled frequencies `m` with `|m/2| <= cutoff` per direction, offset
    /// by the given doubled shift.
    fn modes(&self, cutoff: i64, shift: i64) -> Vec<Vec<i64>> {
        let line: Vec<i64> = (-2 * cutoff..=2 * cutoff).filter(|m| (m - shift).rem_euclid(2) == 0).collect();
        let mut modes = vec![Vec::new()];
        for _ in 0..self.n() {
            modes = modes
                .into_iter()
                .flat_map(|prefix| {
                    line.iter().map(move |&m| {
                        let mut p = prefix.clone();
                        p.push(m);
                        p
                    })
                })
                .collect();
        }
        modes
    }
}

/// `e_j∧ - e_j⌟` on `ΛR^n ⊗ C` in the blade basis.
pub fn exterior_clifford_matrix(n: usize, j: usize) -> Result<Matrix> {
    let v = Vector::basis(n, j);
    let cols: Vec<Vec<Gauss>> = (0..1u32 << n)
        .map(|m| {
            let x = ExteriorElement::from_blade(n, Blade(m), scalar::int(1));
            let y = &clifford::wedge(&v.to_exterior(), &x)? - &clifford::contract(&v, &x)?;
            Ok(y.to_dense())
        })
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(1 << n, &cols))
}

/// Matrix of `Σ_{2n} → ΛR^n ⊗ C`, the Chevalley map composed with the inverse of `iso6`.
fn iso9_matrix(wf: &WittFrame) -> Result<Matrix> {
    let n = wf.n();
    let cols: Vec<Vec<Gauss>> = (0..1u32 << n)
        .map(|m| wf.iso9(&IdealSpinor::basis(n, m)).map(|x| x.to_dense()))
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(1 << n, &cols))
}

/// Clifford action of an ambient vector on `Σ_{2n}`, transported to forms.
fn transported_action(wf: &WittFrame, p: &Matrix, p_inv: &Matrix, v: &Vector) -> Result<Matrix> {
    Ok(&(p * &wf.left_matrix(&v.to_clifford())?) * p_inv)
}

/// `i Σ_j k_j A_j` for doubled modes `k`.
fn mode_symbol(mode: &[i64], generators: &[Matrix]) -> Matrix {
    let d = generators[0].rows();
    let mut out = Matrix::zeros(d, d);
    for (k, a) in mode.iter().zip(generators) {
        if *k != 0 {
            out = &out + &a.scale(&Gauss::new(Zero::zero(), scalar::rational(*k, 2)));
        }
    }
    out
}

fn build(
    name: &str,
    model: Model,
    cutoff: i64,
    shift: i64,
    structure: Option<SpinStructure>,
    generators: &[Matrix],
    constant: Matrix,
    hermitian: bool,
) -> ModeOperator {
    let blocks = model
        .modes(cutoff, shift)
        .into_iter()
        .map(|mode| ModeBlock { symbol: mode_symbol(&mode, generators), constant: constant.clone(), mode })
        .collect();
    ModeOperator {
        name: name.into(),
        model: model.kind(),
        n: model.n(),
        cutoff,
        structure,
        scale: model.scale(),
        hermitian,
        blocks,
    }
}

/// `d + δ` on complex forms: `Σ_j (e_j∧ - e_j⌟)∇_{e_j}`. Forms are periodic.
pub fn euler_operator(model: Model, cutoff: i64) -> Result<ModeOperator> {
    model.validate(cutoff)?;
    let n = model.n();
    let gens: Vec<Matrix> = (0..n).map(|j| exterior_clifford_matrix(n, j)).collect::<Result<_>>()?;
    Ok(build("euler", model, cutoff, 0, None, &gens, Matrix::zeros(1 << n, 1 << n), true))
}

fn spinor_structure(model: Model) -> (i64, Option<SpinStructure>) {
    match model {
        Model::Circle(s) => (s.product().doubled_shift(), Some(s.tangent)),
        Model::Torus(_) => (0, None),
    }
}

/// `D_M^{ΣN} = Σ_j e_j ·_M ∇_{e_j}` on `Σ_{2n}|_M`, written on forms through
/// `Σ_{2n} ≅ ΛR^n ⊗ C` so that blocks compare directly with
/// [`euler_operator`].
pub fn twisted_dirac(model: Model, cutoff: i64) -> Result<ModeOperator> {
    model.validate(cutoff)?;
    let n = model.n();
    let wf = build_witt(n, None)?;
    let p = iso9_matrix(&wf)?;
    let p_inv = p.inverse()?;
    let gens: Vec<Matrix> = (0..n)
        .map(|j| transported_action(&wf, &p, &p_inv, &witt::tangent(&Vector::basis(n, j))))
        .collect::<Result<_>>()?;
    let (shift, structure) = spinor_structure(model);
    Ok(build("twisted-dirac", model, cutoff, shift, structure, &gens, Matrix::zeros(1 << n, 1 << n), true))
}

/// `D̂ = D_M^{ΣN} - (n/2) H·`.
pub fn dirac_witten(model: Model, cutoff: i64, h: &MeanCurvatureData) -> Result<ModeOperator> {
    let mut op = twisted_dirac(model, cutoff)?;
    let n = model.n();
    crate::error::check_dims(n, h.w.dim())?;
    let wf = build_witt(n, None)?;
    let p = iso9_matrix(&wf)?;
    let p_inv = p.inverse()?;
    let action = transported_action(&wf, &p, &p_inv, &witt::normal(&h.w))?;
    let constant = action.scale(&scalar::from_rational(scalar::rational(-(n as i64), 2)));
    for b in &mut op.blocks {
        b.constant = constant.clone();
    }
    op.name = "dirac-witten".into();
    op.hermitian = constant.is_zero();
    Ok(op)
}

/// The Dirac operator of `S^1` itself: one-dimensional fibre, `δ_1(e_1)∂_t`.
pub fn fundamental_dirac(structure: SpinStructure, cutoff: i64) -> Result<ModeOperator> {
    let model = Model::Circle(CircleSpinStructure::new(structure));
    model.validate(cutoff)?;
    let rep = build_rep(1)?;
    let gen = rep.gamma(0);
    Ok(build("fundamental-dirac", model, cutoff, structure.doubled_shift(), Some(structure), &[gen], Matrix::zeros(1, 1), true))
}

pub struct CircleOperators {
    pub induced_twisted_dirac: ModeOperator,
    pub fundamental_dirac: ModeOperator,
    pub euler: ModeOperator,
}

pub fn circle_operators(tangent: SpinStructure, cutoff: i64) -> Result<CircleOperators> {
    let model = Model::Circle(CircleSpinStructure::new(tangent));
    Ok(CircleOperators {
        induced_twisted_dirac: twisted_dirac(model, cutoff)?,
        fundamental_dirac: fundamental_dirac(SpinStructure::Nontrivial, cutoff)?,
        euler: euler_operator(model, cutoff)?,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareIdentityReport {
    /// `n²|H|²/4`.
    pub shift: String,
    /// Whether `D² - D̂² = (n²|H|²/4)·Id` holds exactly on every block.
    pub exact: bool,
    /// Largest entry of `D² - D̂² - (n²|H|²/4)·Id` in floating point.
    pub max_residual: f64,
    pub modes: usize,
}

/// Checks `(D_M^{ΣN})² = D̂² + (n²|H|²/4)` mode by mode (`∇^N H = 0` here).
pub fn verify_square_identity(model: Model, cutoff: i64) -> Result<SquareIdentityReport> {
    let n = model.n();
    let h = match model {
        Model::Circle(_) => MeanCurvatureData::circle(),
        Model::Torus(n) => MeanCurvatureData::torus(n),
    };
    let d = twisted_dirac(model, cutoff)?;
    let dh = dirac_witten(model, cutoff, &h)?;
    let shift: BigRational = scalar::rational((n * n) as i64, 4) * h.norm_sqr().re;
    let d_fib = 1 << n;
    let shift_id = Matrix::scalar(d_fib, &scalar::from_rational(shift.clone()));
    let mut exact = true;
    let mut max_residual: f64 = 0.0;
    for (i, (a, b)) in d.blocks.iter().zip(&dh.blocks).enumerate() {
        // D = sA, D̂ = sA + B: D² - D̂² = -s(AB + BA) - B²
        let anti = &(&a.symbol * &b.constant) + &(&b.constant * &a.symbol);
        let b2 = &b.constant * &b.constant;
        exact &= anti.is_zero() && (-&b2) == shift_id;
        let df = d.block_c64(i);
        let dhf = dh.block_c64(i);
        let residual = &df * &df - &dhf * &dhf - shift_id.to_c64();
        max_residual = max_residual.max(linalg::max_abs(&residual));
    }
    Ok(SquareIdentityReport {
        shift: scalar::rational_string(&shift),
        exact,
        max_residual,
        modes: d.blocks.len(),
    })
}

/// Largest Rayleigh quotient of a Hermitian operator over the span of
/// `trial`; by min-max it bounds `λ_N` from above, `N = trial.len()`.
pub fn rayleigh_minmax(op_squared: &ModeOperator, trial: &[CVector]) -> Result<f64> {
    if trial.is_empty() {
        return Err(Error::DegenerateTrialSpan { rank: 0, requested: 0 });
    }
    for v in trial {
        if v.len() != op_squared.dim() {
            return Err(Error::DimensionMismatch { left: op_squared.dim(), right: v.len() });
        }
    }
    let q = linalg::orthonormalize(trial, 1e-10)?;
    let images: Vec<CVector> = q.iter().map(|v| op_squared.apply(v)).collect();
    let k = q.len();
    let compressed = CMatrix::from_fn(k, k, |r, c| q[r].dotc(&images[c]));
    let hermitian = (&compressed + compressed.adjoint()) * Complex64::new(0.5, 0.0);
    Ok(*linalg::hermitian_eigenvalues(&hermitian).last().unwrap())
}

/// Unit vector supported on one fibre coordinate of one mode block.
pub fn mode_vector(op: &ModeOperator, block: usize, coord: usize) -> CVector {
    let mut v = DVector::zeros(op.dim());
    v[block * op.fiber_dim() + coord] = Complex64::new(1.0, 0.0);
    v
}

/// A spinor field on the torus as finitely many Fourier modes (doubled
/// frequencies) with ideal-spinor coefficients.
pub type SpinorField = BTreeMap<Vec<i64>, IdealSpinor>;

/// Both left-hand sides of the `α`-Kählerian Killing equations along the
/// tangent directions `e_j` of the torus, per mode and direction:
/// `∇̃_{e_j}ψ + α p_-(e_j)·φ` and `∇̃_{e_j}φ + α p_+(e_j)·ψ`.
pub fn killing_residual(
    wf: &WittFrame,
    psi: &SpinorField,
    phi: &SpinorField,
    alpha: Complex64,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let n = wf.n();
    let mut modes: Vec<&Vec<i64>> = psi.keys().chain(phi.keys()).collect();
    modes.sort();
    modes.dedup();
    let zero = IdealSpinor::zero(n);
    let mut res_psi = Vec::new();
    let mut res_phi = Vec::new();
    for mode in modes {
        if mode.len() != n {
            return Err(Error::DimensionMismatch { left: n, right: mode.len() });
        }
        let p = psi.get(mode).unwrap_or(&zero);
        let f = phi.get(mode).unwrap_or(&zero);
        for j in 0..n {
            let deriv = Complex64::new(0.0, PI * mode[j] as f64);
            let pm = wf.left_mult(wf.zbar(j), f)?;
            let pp = wf.left_mult(wf.z(j), p)?;
            for m in 0..1usize << n {
                res_psi.push(deriv * scalar::to_c64(&p.coords()[m]) + alpha * scalar::to_c64(&pm.coords()[m]));
                res_phi.push(deriv * scalar::to_c64(&f.coords()[m]) + alpha * scalar::to_c64(&pp.coords()[m]));
            }
        }
    }
    Ok((res_psi, res_phi))
}

/// Dimension of the space of pairs `(ψ, φ)` within the cutoff solving the
/// Killing equations along `M`, counted mode by mode.
pub fn killing_solution_dim(n: usize, cutoff: i64, alpha: Complex64, tol: f64) -> Result<usize> {
    let model = Model::Torus(n);
    model.validate(cutoff)?;
    let wf = build_witt(n, None)?;
    let d = 1usize << n;
    let pm: Vec<CMatrix> = (0..n).map(|j| wf.left_matrix(wf.zbar(j)).map(|m| m.to_c64())).collect::<Result<_>>()?;
    let pp: Vec<CMatrix> = (0..n).map(|j| wf.left_matrix(wf.z(j)).map(|m| m.to_c64())).collect::<Result<_>>()?;
    let mut total = 0;
    for mode in model.modes(cutoff, 0) {
        let mut system = CMatrix::zeros(2 * n * d, 2 * d);
        for j in 0..n {
            let deriv = Complex64::new(0.0, PI * mode[j] as f64);
            let id = CMatrix::identity(d, d) * deriv;
            system.view_mut((2 * j * d, 0), (d, d)).copy_from(&id);
            system.view_mut((2 * j * d, d), (d, d)).copy_from(&(&pm[j] * alpha));
            system.view_mut(((2 * j + 1) * d, 0), (d, d)).copy_from(&(&pp[j] * alpha));
            system.view_mut(((2 * j + 1) * d, d), (d, d)).copy_from(&id);
        }
        let rank = system.svd(false, false).rank(tol);
        total += 2 * d - rank;
    }
    Ok(total)
}

/// `-Σ_j p_+(e_j)·p_-(e_j)` as a matrix on `Σ_{2n}` (the contraction behind
/// `D̂ψ`), for reports.
pub fn killing_matrix(wf: &WittFrame, sign: KillingSign) -> Result<Matrix> {
    let n = wf.n();
    let cols: Vec<Vec<Gauss>> = (0..1u32 << n)
        .map(|m| wf.killing_contraction(&IdealSpinor::basis(n, m), sign).map(|s| s.coords().to_vec()))
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(1 << n, &cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn induced_structure_is_always_antiperiodic() {
        for t in [SpinStructure::Trivial, SpinStructure::Nontrivial] {
            assert_eq!(CircleSpinStructure::new(t).product(), SpinStructure::Nontrivial);
            assert_eq!(CircleSpinStructure::new(t).normal(), t.flip());
        }
    }

    #[test]
    fn zero_mode_of_euler_is_zero() {
        let op = euler_operator(Model::Torus(2), 1).unwrap();
        let zero = op.blocks.iter().find(|b| b.mode.iter().all(|&m| m == 0)).unwrap();
        assert!(zero.symbol.is_zero());
        assert_eq!(op.kernel_dim(1e-9), 4);
    }

    #[test]
    fn circle_euler_block_by_hand() {
        // mode m: i m [[0, -1], [1, 0]] has eigenvalues ±m
        let op = euler_operator(Model::Circle(CircleSpinStructure::new(SpinStructure::Trivial)), 3).unwrap();
        for (i, b) in op.blocks.iter().enumerate() {
            let m = b.mode[0] as f64 / 2.0;
            let ev = linalg::hermitian_eigenvalues(&op.block_c64(i));
            assert!((ev[0] + m.abs()).abs() < 1e-12 && (ev[1] - m.abs()).abs() < 1e-12);
        }
    }

    #[test]
    fn torus_dirac_witten_equals_dirac() {
        let d = twisted_dirac(Model::Torus(2), 2).unwrap();
        let dh = dirac_witten(Model::Torus(2), 2, &MeanCurvatureData::torus(2)).unwrap();
        assert!(dh.hermitian);
        for (a, b) in d.blocks.iter().zip(&dh.blocks) {
            assert_eq!(a.symbol, b.symbol);
            assert!(b.constant.is_zero());
        }
    }

    #[test]
    fn bad_cutoff_is_rejected() {
        assert!(euler_operator(Model::Torus(2), 0).is_err());
        assert!(euler_operator(Model::Torus(9), 1).is_err());
    }
}
