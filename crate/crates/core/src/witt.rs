//! The Witt-basis model `Σ_{2n} = ⊕ L^p ⊂ Cl_{2n}` of the spinors of
//! `(R^{2n}, J)`, and the isomorphisms linking it to `Cl_n`, `Σ_n ⊗ Σ_n` and
//! `ΛR^n ⊗ C`.
//!
//! `R^{2n} = R^n ⊕ J R^n` with `J e_j = e_{n+j}`. An [`IdealSpinor`] holds
//! coordinates over the canonical basis `z_I·ω̄`; left multiplication acts on
//! them as fermionic creation (`z_k`) and annihilation (`z̄_k`) operators.

use num_traits::{One, Zero};

use crate::clifford::{self, Blade, CliffordElement, ExteriorElement, Vector};
use crate::error::{check_dims, Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{self, Gauss};
use crate::spin::SpinElement;
use crate::spin_rep::{self, RealStructure, SpinorRep, TensorSpinor};

/// Largest `n` for which `Cl_{2n}` fits the blade table.
pub const MAX_WITT_N: usize = clifford::MAX_DIM / 2;

/// Coordinates over the basis `z_I·ω̄`, indexed by the bitmask of `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpinor {
    n: usize,
    coords: Vec<Gauss>,
}

impl IdealSpinor {
    pub fn new(n: usize, coords: Vec<Gauss>) -> Self {
        assert_eq!(coords.len(), 1 << n);
        IdealSpinor { n, coords }
    }

    pub fn zero(n: usize) -> Self {
        IdealSpinor::new(n, vec![Gauss::zero(); 1 << n])
    }

    /// `z_I·ω̄`.
    pub fn basis(n: usize, mask: u32) -> Self {
        let mut s = IdealSpinor::zero(n);
        s.coords[mask as usize] = Gauss::one();
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[Gauss] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Component in `L^p`.
    pub fn grade_part(&self, p: usize) -> IdealSpinor {
        IdealSpinor::new(
            self.n,
            self.coords
                .iter()
                .enumerate()
                .map(|(m, c)| if m.count_ones() as usize == p { c.clone() } else { Gauss::zero() })
                .collect(),
        )
    }

    pub fn scale(&self, s: &Gauss) -> IdealSpinor {
        IdealSpinor::new(self.n, self.coords.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &IdealSpinor) -> IdealSpinor {
        assert_eq!(self.n, other.n);
        IdealSpinor::new(self.n, self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IdealSpinor) -> IdealSpinor {
        self.add(&other.scale(&scalar::int(-1)))
    }

    pub fn max_abs(&self) -> f64 {
        self.coords.iter().map(scalar::abs_f64).fold(0.0, f64::max)
    }
}

fn parity_below(mask: usize, k: usize) -> bool {
    (mask & ((1 << k) - 1)).count_ones() % 2 == 1
}

/// `z_k`: creation, `z_I ω̄ ↦ z_k z_I ω̄`.
fn create(k: usize, s: &[Gauss], out: &mut [Gauss], coef: &Gauss) {
    for (m, x) in s.iter().enumerate() {
        if x.is_zero() || m & (1 << k) != 0 {
            continue;
        }
        let v = x * coef;
        out[m | (1 << k)] += if parity_below(m, k) { -v } else { v };
    }
}

/// `-z̄_k`: annihilation.
fn annihilate(k: usize, s: &[Gauss], out: &mut [Gauss], coef: &Gauss) {
    for (m, x) in s.iter().enumerate() {
        if x.is_zero() || m & (1 << k) == 0 {
            continue;
        }
        let v = x * coef;
        out[m & !(1 << k)] += if parity_below(m, k) { -v } else { v };
    }
}

/// Left multiplication by one generator of `Cl_{2n}`:
/// `e_k = z_k + z̄_k` and `e_{n+k} = i(z_k - z̄_k)`.
fn apply_generator(n: usize, g: usize, s: &[Gauss]) -> Vec<Gauss> {
    let mut out = vec![Gauss::zero(); s.len()];
    if g < n {
        create(g, s, &mut out, &Gauss::one());
        annihilate(g, s, &mut out, &scalar::int(-1));
    } else {
        let i = scalar::imag_unit();
        create(g - n, s, &mut out, &i);
        annihilate(g - n, s, &mut out, &i);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KillingSign {
    /// `Σ_j p_+(e_j)·p_-(e_j)`, the contraction in the equation for `ψ`.
    PlusMinus,
    /// `Σ_j p_-(e_j)·p_+(e_j)`, the contraction in the equation for `φ`.
    MinusPlus,
}

/// A positively oriented orthonormal frame of `R^n` with its Witt basis
/// `z_j = p_+(f_j)`, `z̄_j = p_-(f_j)` and `ω̄ = z̄_1·…·z̄_n` in `Cl_{2n}`,
/// together with the canonical ideal data.
#[derive(Clone, Debug)]
pub struct WittFrame {
    n: usize,
    frame: Vec<Vector>,
    z: Vec<CliffordElement>,
    zbar: Vec<CliffordElement>,
    omega_bar: CliffordElement,
    canonical_basis: Vec<CliffordElement>,
    pivots: Vec<(Blade, Gauss)>,
    iso6_inv: Matrix,
}

/// Builds the Witt model for `n` and the given frame (canonical when `None`).
pub fn build_witt(n: usize, frame: Option<&[Vector]>) -> Result<WittFrame> {
    if n == 0 || n > MAX_WITT_N {
        return Err(Error::DimensionOutOfRange { dim: n, max: MAX_WITT_N });
    }
    let frame: Vec<Vector> = match frame {
        None => (0..n).map(|j| Vector::basis(n, j)).collect(),
        Some(f) => {
            validate_frame(n, f)?;
            f.to_vec()
        }
    };
    let canonical: Vec<Vector> = (0..n).map(|j| Vector::basis(n, j)).collect();
    let (cz, czbar) = witt_vectors(&canonical);
    let canonical_omega = product(2 * n, &czbar);

    // z_I ω̄ = z_{i_1}·(z_{i_2}·…·ω̄), built from the smallest index outwards
    let mut canonical_basis: Vec<CliffordElement> = Vec::with_capacity(1 << n);
    canonical_basis.push(canonical_omega.clone());
    for mask in 1usize..1 << n {
        let k = mask.trailing_zeros() as usize;
        let rest = &canonical_basis[mask & !(1 << k)];
        canonical_basis.push(&cz[k] * rest);
    }
    // the supports of distinct z_I ω̄ are disjoint: bits (j, n+j) are
    // {00, 11} for j ∈ I and {10, 01} otherwise
    let mut pivots = Vec::with_capacity(1 << n);
    for (mask, b) in canonical_basis.iter().enumerate() {
        let pivot = Blade(((!mask) & ((1 << n) - 1)) as u32);
        let c = b.coefficient(pivot);
        if c.is_zero() {
            return Err(Error::Construction(format!("no pivot for z_I ω̄, I = {mask:b}")));
        }
        pivots.push((pivot, c));
    }

    let (z, zbar) = witt_vectors(&frame);
    let omega_bar = product(2 * n, &zbar);
    let mut wf = WittFrame {
        n,
        frame,
        z,
        zbar,
        omega_bar,
        canonical_basis,
        pivots,
        iso6_inv: Matrix::identity(1 << n),
    };
    let columns: Vec<Vec<Gauss>> = (0..1u32 << n)
        .map(|m| wf.iso6(&CliffordElement::from_blade(n, Blade(m), Gauss::one())).map(|s| s.coords))
        .collect::<Result<_>>()?;
    wf.iso6_inv = Matrix::from_columns(1 << n, &columns).inverse()?;
    Ok(wf)
}

fn validate_frame(n: usize, frame: &[Vector]) -> Result<()> {
    if frame.len() != n {
        return Err(Error::NonOrthonormalFrame);
    }
    for (i, f) in frame.iter().enumerate() {
        check_dims(n, f.dim())?;
        if !f.is_real() {
            return Err(Error::NonOrthonormalFrame);
        }
        for (j, g) in frame.iter().enumerate() {
            let expected = if i == j { Gauss::one() } else { Gauss::zero() };
            if f.can(g) != expected {
                return Err(Error::NonOrthonormalFrame);
            }
        }
    }
    let m = Matrix::from_columns(n, &frame.iter().map(|f| f.coords().to_vec()).collect::<Vec<_>>());
    if m.det() != Gauss::one() {
        return Err(Error::NotPositivelyOriented);
    }
    Ok(())
}

fn product(dim: usize, factors: &[CliffordElement]) -> CliffordElement {
    factors.iter().fold(CliffordElement::one(dim), |acc, f| &acc * f)
}

/// `J(x, y) = (-y, x)` on `R^{2n} ⊗ C`.
pub fn complex_structure(v: &Vector) -> Vector {
    let n = v.dim() / 2;
    let c = v.coords();
    Vector::new((0..2 * n).map(|k| if k < n { -c[n + k].clone() } else { c[k - n].clone() }).collect())
}

/// `p_± = ½(Id ∓ iJ)`.
pub fn p_plus(v: &Vector) -> Vector {
    v.sub(&complex_structure(v).scale(&scalar::imag_unit())).scale(&scalar::half())
}

pub fn p_minus(v: &Vector) -> Vector {
    v.add(&complex_structure(v).scale(&scalar::imag_unit())).scale(&scalar::half())
}

/// `R^n ⊂ R^{2n}` as the first block.
pub fn tangent(v: &Vector) -> Vector {
    v.extend(2 * v.dim())
}

/// `J R^n ⊂ R^{2n}`.
pub fn normal(v: &Vector) -> Vector {
    complex_structure(&tangent(v))
}

fn witt_vectors(frame: &[Vector]) -> (Vec<CliffordElement>, Vec<CliffordElement>) {
    let z = frame.iter().map(|f| p_plus(&tangent(f)).to_clifford()).collect();
    let zbar = frame.iter().map(|f| p_minus(&tangent(f)).to_clifford()).collect();
    (z, zbar)
}

/// `J̃(v_1·…·v_{2k}) = J(v_1)·…·J(v_{2k})` in `Spin'_n ⊂ Cl_{2n}`.
pub fn jtilde(factors: &[Vector]) -> Result<SpinElement> {
    if factors.len() < 2 || factors.len() % 2 == 1 {
        return Err(Error::OddFactorCount(factors.len()));
    }
    SpinElement::new(factors.iter().map(normal).collect())
}

/// The diagonal immersion `u ↦ u·J̃(u)` into `Spin_{2n}`.
pub fn diagonal(u: &SpinElement) -> Result<SpinElement> {
    let mut factors: Vec<Vector> = u.factors().iter().map(tangent).collect();
    factors.extend(jtilde(u.factors())?.factors().iter().cloned());
    SpinElement::new(factors)
}

/// The product `u·u'` of `u ∈ Spin_n` and `u' = J̃(u'') ∈ Spin'_n`.
pub fn split_product(u: &SpinElement, u_prime: &SpinElement) -> Result<SpinElement> {
    let tangent_part = SpinElement::new(u.factors().iter().map(tangent).collect())?;
    tangent_part.compose(&jtilde(u_prime.factors())?)
}

impl WittFrame {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn frame(&self) -> &[Vector] {
        &self.frame
    }

    pub fn z(&self, j: usize) -> &CliffordElement {
        &self.z[j]
    }

    pub fn zbar(&self, j: usize) -> &CliffordElement {
        &self.zbar[j]
    }

    pub fn omega_bar(&self) -> &CliffordElement {
        &self.omega_bar
    }

    /// `z_I·ω̄` for this frame, as an element of `Cl_{2n}`.
    pub fn frame_basis_element(&self, mask: u32) -> CliffordElement {
        (0..self.n)
            .rev()
            .filter(|j| mask & (1 << j) != 0)
            .fold(self.omega_bar.clone(), |acc, j| &self.z[j] * &acc)
    }

    /// Embeds an ideal spinor into `Cl_{2n}`.
    pub fn to_clifford(&self, s: &IdealSpinor) -> CliffordElement {
        let mut out = CliffordElement::zero(2 * self.n);
        for (m, c) in s.coords.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &self.canonical_basis[m].scale(c);
            }
        }
        out
    }

    /// Recovers ideal coordinates from a `Cl_{2n}` element, failing with
    /// [`Error::NotInIdeal`] when it is not in `Σ_{2n}`.
    pub fn project(&self, x: &CliffordElement) -> Result<IdealSpinor> {
        check_dims(2 * self.n, x.dim())?;
        let coords = self.pivots.iter().map(|(b, c)| x.coefficient(*b) / c).collect();
        let s = IdealSpinor::new(self.n, coords);
        if &self.to_clifford(&s) != x {
            return Err(Error::NotInIdeal);
        }
        Ok(s)
    }

    /// `δ_{2n}(ψ)s`, through the creation/annihilation action of the generators.
    pub fn left_mult(&self, psi: &CliffordElement, s: &IdealSpinor) -> Result<IdealSpinor> {
        check_dims(2 * self.n, psi.dim())?;
        check_dims(self.n, s.n)?;
        let mut out = vec![Gauss::zero(); 1 << self.n];
        for (blade, coef) in psi.terms() {
            let mut v = s.coords.clone();
            let gens: Vec<usize> = blade.indices().collect();
            for &g in gens.iter().rev() {
                v = apply_generator(self.n, g, &v);
            }
            for (o, x) in out.iter_mut().zip(v) {
                if !x.is_zero() {
                    *o += x * coef;
                }
            }
        }
        Ok(IdealSpinor::new(self.n, out))
    }

    /// The same action computed by multiplying blade expansions in `Cl_{2n}`.
    pub fn left_mult_blade(&self, psi: &CliffordElement, s: &IdealSpinor) -> Result<IdealSpinor> {
        self.project(&clifford::clifford_mul(psi, &self.to_clifford(s))?)
    }

    /// Matrix of `δ_{2n}(ψ)` on the basis `z_I·ω̄`.
    pub fn left_matrix(&self, psi: &CliffordElement) -> Result<Matrix> {
        let cols: Vec<Vec<Gauss>> = (0..1u32 << self.n)
            .map(|m| self.left_mult(psi, &IdealSpinor::basis(self.n, m)).map(|s| s.coords))
            .collect::<Result<_>>()?;
        Ok(Matrix::from_columns(1 << self.n, &cols))
    }

    /// `Ω̃ = Σ_{a<b} can(J e_a, e_b) e_a·e_b`.
    pub fn kahler_form(&self) -> CliffordElement {
        let dim = 2 * self.n;
        let mut terms = Vec::new();
        for a in 0..dim {
            let ja = complex_structure(&Vector::basis(dim, a));
            for b in a + 1..dim {
                let c = ja.can(&Vector::basis(dim, b));
                terms.push((Blade::from_indices(&[a, b]), c));
            }
        }
        CliffordElement::from_terms(dim, terms)
    }

    /// `-2i Σ_j z_j ∧ z̄_j` in this frame, read back into `Cl_{2n}`.
    pub fn kahler_form_witt(&self) -> Result<CliffordElement> {
        let mut sum = ExteriorElement::zero(2 * self.n);
        for j in 0..self.n {
            let w = clifford::wedge(
                &clifford::chevalley_to_exterior(&self.z[j]),
                &clifford::chevalley_to_exterior(&self.zbar[j]),
            )?;
            sum = &sum + &w;
        }
        Ok(clifford::exterior_to_chevalley(&sum.scale(&Gauss::new(Zero::zero(), scalar::rational(-2, 1)))))
    }

    /// Matrix of `δ_{2n}(Ω̃)` on `Σ_{2n}`.
    pub fn kahler_action(&self) -> Result<Matrix> {
        self.left_matrix(&self.kahler_form())
    }

    /// `⟨s, s'⟩ = 2^{[(n+1)/2]} Σ_I s_I conj(s'_I)`.
    pub fn hermitian(&self, s: &IdealSpinor, t: &IdealSpinor) -> Gauss {
        spin_rep::hermitian(&s.coords, &t.coords) * scalar::int(1 << self.n.div_ceil(2))
    }

    /// `φ ↦ φ·ω̄` for `φ ∈ Cl_n ⊂ Cl_{2n}`.
    pub fn iso6(&self, phi: &CliffordElement) -> Result<IdealSpinor> {
        check_dims(self.n, phi.dim())?;
        self.left_mult(&clifford::embed(phi, 2 * self.n)?, &IdealSpinor::basis(self.n, 0))
    }

    pub fn iso6_inverse(&self, s: &IdealSpinor) -> Result<CliffordElement> {
        check_dims(self.n, s.n)?;
        Ok(CliffordElement::from_dense(self.n, &self.iso6_inv.mul_vec(&s.coords)))
    }

    pub fn iso9(&self, s: &IdealSpinor) -> Result<ExteriorElement> {
        Ok(clifford::chevalley_to_exterior(&self.iso6_inverse(s)?))
    }

    pub fn iso9_inverse(&self, x: &ExteriorElement) -> Result<IdealSpinor> {
        self.iso6(&clifford::exterior_to_chevalley(x))
    }

    pub fn iso8(&self, rep: &SpinorRep, j: &RealStructure, s: &IdealSpinor) -> Result<TensorSpinor> {
        check_dims(self.n, rep.n())?;
        spin_rep::clif_to_tensor(rep, j, &self.iso6_inverse(s)?)
    }

    pub fn iso8_inverse(&self, rep: &SpinorRep, j: &RealStructure, t: &TensorSpinor) -> Result<IdealSpinor> {
        self.iso6(&spin_rep::tensor_to_clif(rep, j, t)?)
    }

    /// The literal sum `Σ_j p_+(e_j)·p_-(e_j)·s` (or `p_-·p_+`) in this frame.
    pub fn killing_sum(&self, s: &IdealSpinor, sign: KillingSign) -> Result<IdealSpinor> {
        let mut out = IdealSpinor::zero(self.n);
        for j in 0..self.n {
            let (first, second) = match sign {
                KillingSign::PlusMinus => (&self.z[j], &self.zbar[j]),
                KillingSign::MinusPlus => (&self.zbar[j], &self.z[j]),
            };
            out = out.add(&self.left_mult(first, &self.left_mult(second, s)?)?);
        }
        Ok(out)
    }

    /// The contraction entering `D̂ψ = α·(…)φ`: `-Σ_j p_+(e_j)·p_-(e_j)·s`,
    /// resp. `-Σ_j p_-(e_j)·p_+(e_j)·s` for the second equation.
    pub fn killing_contraction(&self, s: &IdealSpinor, sign: KillingSign) -> Result<IdealSpinor> {
        Ok(self.killing_sum(s, sign)?.scale(&scalar::int(-1)))
    }

    /// `∓(i/2)Ω̃·s + (n/2)s`.
    pub fn killing_reference(&self, s: &IdealSpinor, sign: KillingSign) -> Result<IdealSpinor> {
        let half_i = Gauss::new(Zero::zero(), scalar::rational(1, 2));
        let factor = match sign {
            KillingSign::PlusMinus => -half_i,
            KillingSign::MinusPlus => half_i,
        };
        let omega = self.left_mult(&self.kahler_form(), s)?.scale(&factor);
        Ok(omega.add(&s.scale(&scalar::from_rational(scalar::rational(self.n as i64, 2)))))
    }
}

/// Grade `p` of the Kähler eigenspace on which the contraction acts as
/// `(n+1)/2`: `L^{(n+1)/2}` for `PlusMinus`, `L^{(n-1)/2}` for `MinusPlus`.
pub fn killing_grade(n: usize, sign: KillingSign) -> Result<usize> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenDimensionKilling(n));
    }
    Ok(match sign {
        KillingSign::PlusMinus => n.div_ceil(2),
        KillingSign::MinusPlus => (n - 1) / 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gauss, int};

    #[test]
    fn n1_omega_bar_is_zbar1() {
        let wf = build_witt(1, None).unwrap();
        let expected = CliffordElement::from_terms(2, [(Blade(0b01), scalar::half()), (Blade(0b10), Gauss::new(Zero::zero(), scalar::rational(1, 2)))]);
        assert_eq!(wf.omega_bar(), &expected);
    }

    #[test]
    fn isotropic_vector_kills_omega_bar() {
        let wf = build_witt(3, None).unwrap();
        let s = wf.left_mult(wf.zbar(0), &IdealSpinor::basis(3, 0)).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn e1_on_omega_bar_matches_blade_expansion() {
        let wf = build_witt(1, None).unwrap();
        let e1 = CliffordElement::generator(2, 0);
        let vacuum = IdealSpinor::basis(1, 0);
        let fast = wf.left_mult(&e1, &vacuum).unwrap();
        assert_eq!(fast, IdealSpinor::basis(1, 1));
        assert_eq!(wf.to_clifford(&fast), &e1 * wf.omega_bar());
    }

    #[test]
    fn kahler_eigenvalues() {
        let wf = build_witt(3, None).unwrap();
        let k = wf.kahler_action().unwrap();
        for m in 0..8usize {
            let p = m.count_ones() as i64;
            assert_eq!(k[(m, m)], gauss(0, 2 * p - 3));
        }
        assert!(k.trace().is_zero());
    }

    #[test]
    fn hermitian_normalisation() {
        assert_eq!(build_witt(1, None).unwrap().hermitian(&IdealSpinor::basis(1, 0), &IdealSpinor::basis(1, 0)), int(2));
        let wf = build_witt(3, None).unwrap();
        assert_eq!(wf.hermitian(&IdealSpinor::basis(3, 0), &IdealSpinor::basis(3, 0)), int(4));
        assert!(wf.hermitian(&IdealSpinor::basis(3, 1), &IdealSpinor::basis(3, 2)).is_zero());
    }

    #[test]
    fn iso6_on_blades_is_the_witt_monomial() {
        let wf = build_witt(3, None).unwrap();
        let e13 = CliffordElement::from_blade(3, Blade(0b101), Gauss::one());
        assert_eq!(wf.iso6(&e13).unwrap(), IdealSpinor::basis(3, 0b101));
        assert_eq!(wf.iso6(&CliffordElement::one(3)).unwrap(), IdealSpinor::basis(3, 0));
    }

    #[test]
    fn killing_grades() {
        assert_eq!(killing_grade(3, KillingSign::PlusMinus), Ok(2));
        assert_eq!(killing_grade(3, KillingSign::MinusPlus), Ok(1));
        assert_eq!(killing_grade(4, KillingSign::PlusMinus), Err(Error::EvenDimensionKilling(4)));
    }

    #[test]
    fn rejects_bad_frames() {
        let f = vec![Vector::basis(2, 0), Vector::basis(2, 0)];
        assert_eq!(build_witt(2, Some(&f)).unwrap_err(), Error::NonOrthonormalFrame);
        let f = vec![Vector::basis(2, 1), Vector::basis(2, 0)];
        assert_eq!(build_witt(2, Some(&f)).unwrap_err(), Error::NotPositivelyOriented);
    }
}
