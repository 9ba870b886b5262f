//! Matrix realisations `δ_n : Cl_n → End(Σ_n)`, the invariant Hermitian
//! product, the antilinear structure `ȷ` commuting with `Spin_n`, and the
//! isomorphism `Cl_n ≅ Σ_n ⊗ Σ_n` (doubled for odd `n`) built from them.

use std::collections::VecDeque;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::clifford::{Blade, CliffordElement, Vector, MAX_DIM};
use crate::error::{check_dims, Error, Result};
use crate::matrix::{Matrix, Monomial};
use crate::scalar::{self, Gauss};
use crate::spin::SpinElement;

fn pauli(k: usize) -> Monomial {
    match k {
        0 => Monomial::identity(2),
        1 => Monomial { perm: vec![1, 0], phase: vec![0, 0] },
        2 => Monomial { perm: vec![1, 0], phase: vec![1, 3] },
        _ => Monomial { perm: vec![0, 1], phase: vec![0, 2] },
    }
}

fn tensor(factors: &[Monomial]) -> Monomial {
    factors.iter().fold(Monomial::identity(1), |acc, f| acc.kron(f))
}

/// The spin module `Σ_n` of dimension `2^{[n/2]}` with gamma matrices
/// `δ_n(e_j)`.
#[derive(Clone, Debug)]
pub struct SpinorRep {
    n: usize,
    d: usize,
    gammas: Vec<Monomial>,
    negated: bool,
}

/// Builds `δ_n` from the Pauli tensor recursion. For odd `n` the gammas are
/// negated when needed so that the complex volume element acts as `+Id`.
pub fn build_rep(n: usize) -> Result<SpinorRep> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::DimensionOutOfRange { dim: n, max: MAX_DIM });
    }
    let m = n / 2;
    let mut hermitian = Vec::with_capacity(n);
    for k in 0..m {
        for p in [1, 2] {
            let mut factors = vec![pauli(3); k];
            factors.push(pauli(p));
            factors.extend(std::iter::repeat_n(pauli(0), m - k - 1));
            hermitian.push(tensor(&factors));
        }
    }
    if n % 2 == 1 {
        hermitian.push(tensor(&vec![pauli(3); m]));
    }
    let mut rep = SpinorRep {
        n,
        d: 1 << m,
        gammas: hermitian.iter().map(|g| g.rotate(1)).collect(),
        negated: false,
    };
    if n % 2 == 1 {
        match rep.volume_phase() {
            Some(0) => {}
            Some(2) => {
                rep.gammas = rep.gammas.iter().map(|g| g.rotate(2)).collect();
                rep.negated = true;
            }
            other => {
                return Err(Error::Construction(format!("complex volume element acts as i^{other:?}")))
            }
        }
        if rep.volume_phase() != Some(0) {
            return Err(Error::Construction("volume convention not met".into()));
        }
    }
    Ok(rep)
}

impl SpinorRep {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Spinor dimension `d = 2^{[n/2]}`.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_odd(&self) -> bool {
        self.n % 2 == 1
    }

    /// Whether the recursion had to be negated to meet the volume convention.
    pub fn negated(&self) -> bool {
        self.negated
    }

    pub fn gamma(&self, j: usize) -> Matrix {
        self.gammas[j].to_matrix()
    }

    pub fn gamma_monomial(&self, j: usize) -> &Monomial {
        &self.gammas[j]
    }

    /// `δ_n(e_I)` as a monomial matrix.
    pub fn blade_monomial(&self, blade: Blade) -> Monomial {
        blade
            .indices()
            .fold(Monomial::identity(self.d), |acc, j| acc.mul(&self.gammas[j]))
    }

    /// The complex volume element `i^{[(n+1)/2]} e_1·…·e_n`.
    pub fn complex_volume(&self) -> CliffordElement {
        let full = Blade(((1u64 << self.n) - 1) as u32);
        CliffordElement::from_blade(self.n, full, scalar::quarter_turn((self.n.div_ceil(2) % 4) as u8))
    }

    fn volume_phase(&self) -> Option<u8> {
        let full = Blade(((1u64 << self.n) - 1) as u32);
        self.blade_monomial(full).rotate((self.n.div_ceil(2) % 4) as u8).scalar_phase()
    }

    fn accumulate(&self, a: &CliffordElement, odd_sign: bool) -> Result<Matrix> {
        check_dims(self.n, a.dim())?;
        let mut out = Matrix::zeros(self.d, self.d);
        for (blade, coef) in a.terms() {
            let m = self.blade_monomial(blade);
            let coef = if odd_sign && blade.grade() % 2 == 1 { -coef.clone() } else { coef.clone() };
            for c in 0..self.d {
                out[(m.perm[c], c)] += &coef * scalar::quarter_turn(m.phase[c]);
            }
        }
        Ok(out)
    }

    /// `δ_n(a)`; for odd `n` this is the first summand.
    pub fn delta(&self, a: &CliffordElement) -> Result<Matrix> {
        self.accumulate(a, false)
    }

    /// Second summand of the odd-dimensional isomorphism: `v ↦ -δ_n(v)`.
    pub fn delta_second(&self, a: &CliffordElement) -> Result<Matrix> {
        if !self.is_odd() {
            return Err(Error::InvalidParameter(format!("n = {} is even: no second summand", self.n)));
        }
        self.accumulate(a, true)
    }

    pub fn delta_vector(&self, v: &Vector) -> Result<Matrix> {
        self.delta(&v.to_clifford())
    }

    pub fn delta_spin(&self, u: &SpinElement) -> Result<Matrix> {
        check_dims(self.n, u.dim())?;
        let mut out = Matrix::identity(self.d);
        for v in u.factors() {
            out = &out * &self.delta_vector(v)?;
        }
        Ok(out)
    }

    /// Inverts `δ_n` (paired with the second summand for odd `n`) through the
    /// trace form `tr(δ(e_I)^† δ(e_J))`.
    pub fn delta_inverse(&self, first: &Matrix, second: Option<&Matrix>) -> Result<CliffordElement> {
        if first.rows() != self.d || first.cols() != self.d {
            return Err(Error::DimensionMismatch { left: self.d, right: first.rows() });
        }
        let trace_against = |m: &Monomial, a: &Matrix| -> Gauss {
            (0..self.d).fold(Gauss::zero(), |acc, c| {
                acc + scalar::quarter_turn((4 - m.phase[c]) % 4) * &a[(m.perm[c], c)]
            })
        };
        let mut terms = Vec::new();
        for mask in 0..1u32 << self.n {
            let blade = Blade(mask);
            let m = self.blade_monomial(blade);
            let coef = if self.is_odd() {
                let second = second.ok_or_else(|| {
                    Error::InvalidParameter("odd n needs both summands".into())
                })?;
                let t2 = trace_against(&m, second);
                let t2 = if blade.grade() % 2 == 1 { -t2 } else { t2 };
                (trace_against(&m, first) + t2) / scalar::int(2 * self.d as i64)
            } else {
                trace_against(&m, first) / scalar::int(self.d as i64)
            };
            terms.push((blade, coef));
        }
        Ok(CliffordElement::from_terms(self.n, terms))
    }

    /// `⟨σ, σ'⟩ = Σ σ_a conj(σ'_a)`, complex-linear in the first slot.
    pub fn hermitian(&self, s: &[Gauss], t: &[Gauss]) -> Gauss {
        hermitian(s, t)
    }
}

pub fn hermitian(s: &[Gauss], t: &[Gauss]) -> Gauss {
    assert_eq!(s.len(), t.len());
    s.iter().zip(t).fold(Gauss::zero(), |acc, (a, b)| acc + a * b.conj())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    /// `ȷ² = +Id`
    Real,
    /// `ȷ² = -Id`
    Quaternionic,
}

/// How `ȷ` relates to the Clifford action of vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VectorRelation {
    Commutes,
    Anticommutes,
}

/// `ȷ(σ) = C·conj(σ)` with `C` unitary.
#[derive(Clone, Debug)]
pub struct RealStructure {
    c: Matrix,
    kind: StructureKind,
    vectors: VectorRelation,
    /// `conj(C^{-1})^T`, the right factor of the tensor isomorphism.
    tensor_factor: Matrix,
    tensor_factor_inv: Matrix,
}

impl RealStructure {
    pub fn matrix(&self) -> &Matrix {
        &self.c
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn vector_relation(&self) -> VectorRelation {
        self.vectors
    }

    pub fn apply(&self, s: &[Gauss]) -> Vec<Gauss> {
        let conj: Vec<Gauss> = s.iter().map(|x| x.conj()).collect();
        self.c.mul_vec(&conj)
    }

    /// `ȷ^{-1}(τ) = conj(C^{-1} τ)`.
    pub fn apply_inverse(&self, t: &[Gauss]) -> Vec<Gauss> {
        self.c.adjoint().mul_vec(t).iter().map(|x| x.conj()).collect()
    }
}

/// Nullspace of `X ↦ δ(g)X - X·conj(δ(g))` over the given monomial
/// generators. Every equation links two entries by a phase, so the solutions
/// are supported on orbits of index pairs with trivial holonomy.
fn intertwiner_orbits(d: usize, generators: &[Monomial]) -> Vec<Matrix> {
    let mut phase: Vec<Option<u8>> = vec![None; d * d];
    let mut solutions = Vec::new();
    for root in 0..d * d {
        if phase[root].is_some() {
            continue;
        }
        phase[root] = Some(0);
        let mut members = vec![root];
        let mut consistent = true;
        let mut queue = VecDeque::from([root]);
        while let Some(node) = queue.pop_front() {
            let (k, c) = (node / d, node % d);
            let p = phase[node].unwrap();
            for g in generators {
                let target = g.perm[k] * d + g.perm[c];
                let q = (p + g.phase[k] + g.phase[c]) % 4;
                match phase[target] {
                    Some(existing) => consistent &= existing == q,
                    None => {
                        phase[target] = Some(q);
                        members.push(target);
                        queue.push_back(target);
                    }
                }
            }
        }
        if consistent {
            let mut m = Matrix::zeros(d, d);
            for node in members {
                m[(node / d, node % d)] = scalar::quarter_turn(phase[node].unwrap());
            }
            solutions.push(m);
        }
    }
    solutions
}

/// Finds `ȷ` by solving the intertwining equations exactly. Vector generators
/// are tried first; when no antilinear map commutes with all vectors
/// (`n ≡ 1 mod 4`) the even generators `e_i·e_j` are used instead.
pub fn build_j(rep: &SpinorRep) -> Result<RealStructure> {
    let d = rep.d();
    let n = rep.n();
    let vectors: Vec<Monomial> = rep.gammas.clone();
    let mut bivectors = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            bivectors.push(rep.gammas[i].mul(&rep.gammas[j]));
        }
    }
    let mut solutions = intertwiner_orbits(d, &vectors);
    if solutions.is_empty() {
        solutions = intertwiner_orbits(d, &bivectors);
    }
    if solutions.len() != 1 {
        return Err(Error::NoRealStructure(n));
    }
    let mut c = solutions.pop().unwrap();

    let gram = &c.adjoint() * &c;
    let scale = gram[(0, 0)].clone();
    if gram != Matrix::scalar(d, &scale) || !scalar::is_real(&scale) {
        return Err(Error::Construction("intertwiner is not a multiple of a unitary".into()));
    }
    let root = scalar::rational_sqrt(&scale.re)
        .ok_or_else(|| Error::Construction("normalisation is not rational".into()))?;
    c = c.scale(&scalar::from_rational(BigRational::one() / root));

    for g in &bivectors {
        let g = g.to_matrix();
        if &g * &c != &c * &g.conj() {
            return Err(Error::Construction("ȷ does not commute with the even generators".into()));
        }
    }

    let square = &c * &c.conj();
    let kind = if square.is_identity() {
        StructureKind::Real
    } else if (-&square).is_identity() {
        StructureKind::Quaternionic
    } else {
        return Err(Error::Construction("ȷ² is not ±Id".into()));
    };

    let relation = |sign: i64| {
        rep.gammas.iter().all(|g| {
            let g = g.to_matrix();
            &g * &c == (&c * &g.conj()).scale(&scalar::int(sign))
        })
    };
    let vectors = if relation(1) {
        VectorRelation::Commutes
    } else if relation(-1) {
        VectorRelation::Anticommutes
    } else {
        return Err(Error::Construction("ȷ neither commutes nor anticommutes with vectors".into()));
    };

    let c_inv = c.adjoint();
    let tensor_factor = c_inv.conj().transpose();
    let tensor_factor_inv = tensor_factor.inverse()?;
    Ok(RealStructure { c, kind, vectors, tensor_factor, tensor_factor_inv })
}

/// The complex-linear map `σ ↦ ⟨·, ȷ(σ)⟩`, as coordinates of the covector.
pub fn sigma_to_dual(j: &RealStructure, s: &[Gauss]) -> Vec<Gauss> {
    j.c.conj().mul_vec(s)
}

/// Matrix of [`sigma_to_dual`].
pub fn dual_matrix(j: &RealStructure) -> Matrix {
    j.c.conj()
}

/// Evaluates a covector on a spinor.
pub fn pair(covector: &[Gauss], s: &[Gauss]) -> Gauss {
    covector.iter().zip(s).fold(Gauss::zero(), |acc, (f, x)| acc + f * x)
}

/// An element of `Σ_n ⊗ Σ_n` (or two of them for odd `n`), stored as `d×d`
/// coefficient matrices `T[a][b]` on `σ_a ⊗ σ_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TensorSpinor {
    Even(Matrix),
    Odd(Matrix, Matrix),
}

impl TensorSpinor {
    pub fn components(&self) -> Vec<&Matrix> {
        match self {
            TensorSpinor::Even(t) => vec![t],
            TensorSpinor::Odd(a, b) => vec![a, b],
        }
    }

    fn map(&self, mut f: impl FnMut(usize, &Matrix) -> Matrix) -> TensorSpinor {
        match self {
            TensorSpinor::Even(t) => TensorSpinor::Even(f(0, t)),
            TensorSpinor::Odd(a, b) => TensorSpinor::Odd(f(0, a), f(1, b)),
        }
    }

    /// `{A ⊗ Id}` on the first copy and `{±A ⊗ Id}` on the second, where the
    /// second factor is given explicitly.
    pub fn left(&self, first: &Matrix, second: &Matrix) -> TensorSpinor {
        self.map(|k, t| if k == 0 { first * t } else { second * t })
    }

    /// `{Id ⊗ B}`: `T ↦ T·B^T` on each copy.
    pub fn right(&self, first: &Matrix, second: &Matrix) -> TensorSpinor {
        self.map(|k, t| if k == 0 { t * &first.transpose() } else { t * &second.transpose() })
    }

    pub fn scale(&self, s: &Gauss) -> TensorSpinor {
        self.map(|_, t| t.scale(s))
    }

    pub fn sub(&self, other: &TensorSpinor) -> TensorSpinor {
        let others = other.components();
        self.map(|k, t| t - others[k])
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|t| t.is_zero())
    }

    pub fn max_abs(&self) -> f64 {
        self.components().iter().map(|t| t.max_abs()).fold(0.0, f64::max)
    }

    /// Tensor-product Hermitian product, linear in `self`.
    pub fn dot(&self, other: &TensorSpinor) -> Gauss {
        self.components()
            .iter()
            .zip(other.components())
            .fold(Gauss::zero(), |acc, (a, b)| acc + b.frobenius_dot(a))
    }

    pub fn norm_sqr(&self) -> BigRational {
        self.components().iter().fold(BigRational::zero(), |acc, t| acc + t.frobenius_sqr())
    }
}

/// `φ ↦ Σ_k δ_n(φ)σ_k ⊗ ȷ^{-1}(σ_k)` (and the same with the second summand
/// for odd `n`).
pub fn clif_to_tensor(rep: &SpinorRep, j: &RealStructure, a: &CliffordElement) -> Result<TensorSpinor> {
    let first = &rep.delta(a)? * &j.tensor_factor;
    Ok(if rep.is_odd() {
        TensorSpinor::Odd(first, &rep.delta_second(a)? * &j.tensor_factor)
    } else {
        TensorSpinor::Even(first)
    })
}

pub fn tensor_to_clif(rep: &SpinorRep, j: &RealStructure, t: &TensorSpinor) -> Result<CliffordElement> {
    match t {
        TensorSpinor::Even(m) if !rep.is_odd() => rep.delta_inverse(&(m * &j.tensor_factor_inv), None),
        TensorSpinor::Odd(a, b) if rep.is_odd() => rep.delta_inverse(
            &(a * &j.tensor_factor_inv),
            Some(&(b * &j.tensor_factor_inv)),
        ),
        _ => Err(Error::InvalidParameter("tensor spinor parity does not match n".into())),
    }
}

/// Matrices of `δ_n(v)` on the two copies: `(δ_n(v), -δ_n(v))` for odd `n`.
pub fn vector_pair(rep: &SpinorRep, v: &Vector) -> Result<(Matrix, Matrix)> {
    let m = rep.delta_vector(v)?;
    let neg = -&m;
    Ok((m, neg))
}
