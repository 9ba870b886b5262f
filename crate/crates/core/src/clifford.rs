//! The complex Clifford algebra of `(R^N, can)` with `v·w + w·v = -2 can(v, w)`,
//! its exterior algebra, and the canonical linear identification between the
//! two.
//!
//! Elements are sparse maps from [`Blade`] bitmasks to exact Gaussian
//! rational coefficients. Bit `j` of a mask stands for the generator
//! `e_{j+1}`; factors of a blade are always kept in increasing index order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{check_dims, Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{self, Gauss};

/// Largest supported number of generators (blade table of 4096 entries).
pub const MAX_DIM: usize = 12;

/// A basis monomial `e_{i_1}·…·e_{i_p}` with `i_1 < … < i_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Blade(pub u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn generator(j: usize) -> Blade {
        Blade(1 << j)
    }

    /// Blade spanned by the given (0-based, distinct) generator indices.
    pub fn from_indices(indices: &[usize]) -> Blade {
        Blade(indices.iter().fold(0, |m, &j| m | (1 << j)))
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, j: usize) -> bool {
        self.0 & (1 << j) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..32).filter(move |j| mask & (1 << j) != 0)
    }

    pub(crate) fn fits(self, dim: usize) -> bool {
        (self.0 as u64) < (1u64 << dim)
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        write!(f, "e")?;
        for (k, j) in self.indices().enumerate() {
            if k > 0 {
                write!(f, "_")?;
            }
            write!(f, "{}", j + 1)?;
        }
        Ok(())
    }
}

/// Parity of the number of transpositions needed to sort the concatenation of
/// the factor lists of `a` and `b`.
pub(crate) fn reorder_parity(a: u32, b: u32) -> bool {
    let mut a = a >> 1;
    let mut swaps = 0;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    swaps & 1 == 1
}

/// Clifford product of two basis blades; the flag is set when the result
/// carries a minus sign.
pub fn blade_product(a: Blade, b: Blade) -> (bool, Blade) {
    let squares = (a.0 & b.0).count_ones() & 1 == 1;
    (reorder_parity(a.0, b.0) ^ squares, Blade(a.0 ^ b.0))
}

/// Exterior product of two basis blades, `None` when they share a factor.
pub fn blade_wedge(a: Blade, b: Blade) -> Option<(bool, Blade)> {
    if a.0 & b.0 != 0 {
        None
    } else {
        Some((reorder_parity(a.0, b.0), Blade(a.0 | b.0)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Terms {
    dim: usize,
    map: BTreeMap<Blade, Gauss>,
}

impl Terms {
    fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Terms { dim, map: BTreeMap::new() }
    }

    fn accumulate(&mut self, blade: Blade, coef: Gauss) {
        debug_assert!(blade.fits(self.dim));
        if coef.is_zero() {
            return;
        }
        match self.map.get_mut(&blade) {
            Some(c) => {
                *c += coef;
                if c.is_zero() {
                    self.map.remove(&blade);
                }
            }
            None => {
                self.map.insert(blade, coef);
            }
        }
    }

    fn combine(&self, other: &Terms, subtract: bool) -> Terms {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = self.clone();
        for (b, c) in &other.map {
            out.accumulate(*b, if subtract { -c.clone() } else { c.clone() });
        }
        out
    }

    fn scale(&self, s: &Gauss) -> Terms {
        let mut out = Terms::zero(self.dim);
        if s.is_zero() {
            return out;
        }
        for (b, c) in &self.map {
            out.map.insert(*b, c * s);
        }
        out
    }

    fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .map
            .iter()
            .map(|(b, c)| {
                json!({
                    "mask": b.0,
                    "re": scalar::rational_string(&c.re),
                    "im": scalar::rational_string(&c.im),
                })
            })
            .collect();
        json!({ "dim": self.dim, "terms": terms })
    }

    fn from_json(value: &Value) -> Result<Terms> {
        let bad = |what: &str| Error::InvalidParameter(format!("malformed element JSON: {what}"));
        let dim = value["dim"].as_u64().ok_or_else(|| bad("dim"))? as usize;
        if dim > MAX_DIM {
            return Err(Error::DimensionOutOfRange { dim, max: MAX_DIM });
        }
        let mut out = Terms::zero(dim);
        for term in value["terms"].as_array().ok_or_else(|| bad("terms"))? {
            let mask = term["mask"].as_u64().ok_or_else(|| bad("mask"))? as u32;
            let blade = Blade(mask);
            if !blade.fits(dim) {
                return Err(bad("mask exceeds dim"));
            }
            let part = |key: &str| {
                term[key]
                    .as_str()
                    .and_then(scalar::parse_rational)
                    .ok_or_else(|| bad(key))
            };
            out.accumulate(blade, Gauss::new(part("re")?, part("im")?));
        }
        Ok(out)
    }

    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.map.is_empty() {
            return write!(f, "0");
        }
        for (k, (b, c)) in self.map.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(
                f,
                "({} + {}i){}",
                scalar::rational_string(&c.re),
                scalar::rational_string(&c.im),
                b
            )?;
        }
        Ok(())
    }
}

macro_rules! multivector_common {
    ($ty:ident) => {
        impl $ty {
            pub fn zero(dim: usize) -> Self {
                $ty { terms: Terms::zero(dim) }
            }

            pub fn scalar(dim: usize, c: Gauss) -> Self {
                Self::from_blade(dim, Blade::SCALAR, c)
            }

            pub fn one(dim: usize) -> Self {
                Self::scalar(dim, Gauss::one())
            }

            pub fn from_blade(dim: usize, blade: Blade, c: Gauss) -> Self {
                assert!(blade.fits(dim), "blade {blade} does not fit dimension {dim}");
                let mut terms = Terms::zero(dim);
                terms.accumulate(blade, c);
                $ty { terms }
            }

            /// The generator `e_{j+1}` (0-based index `j`).
            pub fn generator(dim: usize, j: usize) -> Self {
                Self::from_blade(dim, Blade::generator(j), Gauss::one())
            }

            pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Blade, Gauss)>) -> Self {
                let mut out = Terms::zero(dim);
                for (b, c) in terms {
                    assert!(b.fits(dim), "blade {b} does not fit dimension {dim}");
                    out.accumulate(b, c);
                }
                $ty { terms: out }
            }

            pub fn dim(&self) -> usize {
                self.terms.dim
            }

            pub fn terms(&self) -> impl Iterator<Item = (Blade, &Gauss)> + '_ {
                self.terms.map.iter().map(|(b, c)| (*b, c))
            }

            pub fn len(&self) -> usize {
                self.terms.map.len()
            }

            pub fn is_empty(&self) -> bool {
                self.terms.map.is_empty()
            }

            pub fn is_zero(&self) -> bool {
                self.terms.map.is_empty()
            }

            pub fn coefficient(&self, blade: Blade) -> Gauss {
                self.terms.map.get(&blade).cloned().unwrap_or_else(Gauss::zero)
            }

            pub fn scale(&self, s: &Gauss) -> Self {
                $ty { terms: self.terms.scale(s) }
            }

            /// Component of grade `p`.
            pub fn grade_part(&self, p: usize) -> Self {
                Self::from_terms(
                    self.dim(),
                    self.terms().filter(|(b, _)| b.grade() == p).map(|(b, c)| (b, c.clone())),
                )
            }

            /// `Some(p)` when every term has grade `p` (zero counts as grade 0).
            pub fn homogeneous_grade(&self) -> Option<usize> {
                let mut grades = self.terms().map(|(b, _)| b.grade());
                match grades.next() {
                    None => Some(0),
                    Some(p) => grades.all(|q| q == p).then_some(p),
                }
            }

            /// Largest coefficient modulus, as a float.
            pub fn max_abs(&self) -> f64 {
                self.terms().map(|(_, c)| scalar::abs_f64(c)).fold(0.0, f64::max)
            }

            /// Grade involution: `(-1)^p` on grade `p`.
            pub fn grade_involution(&self) -> Self {
                Self::from_terms(
                    self.dim(),
                    self.terms().map(|(b, c)| (b, if b.grade() % 2 == 1 { -c.clone() } else { c.clone() })),
                )
            }

            /// Coefficients in blade order `0..2^dim`, as a dense vector.
            pub fn to_dense(&self) -> Vec<Gauss> {
                let mut out = vec![Gauss::zero(); 1 << self.dim()];
                for (b, c) in self.terms() {
                    out[b.0 as usize] = c.clone();
                }
                out
            }

            pub fn from_dense(dim: usize, coefs: &[Gauss]) -> Self {
                assert_eq!(coefs.len(), 1 << dim);
                Self::from_terms(
                    dim,
                    coefs.iter().enumerate().map(|(m, c)| (Blade(m as u32), c.clone())),
                )
            }

            /// JSON form `{dim, terms: [{mask, re, im}]}` with rationals as strings.
            pub fn to_json(&self) -> Value {
                self.terms.to_json()
            }

            pub fn from_json(value: &Value) -> Result<Self> {
                Ok($ty { terms: Terms::from_json(value)? })
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.terms.fmt_terms(f)
            }
        }

        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                $ty { terms: self.terms.combine(&rhs.terms, false) }
            }
        }

        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                $ty { terms: self.terms.combine(&rhs.terms, true) }
            }
        }

        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                self.scale(&scalar::int(-1))
            }
        }

        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}

/// An element of the complex Clifford algebra with `dim` generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordElement {
    terms: Terms,
}

/// An element of `Λ R^dim ⊗ C`; only the wedge product is defined on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorElement {
    terms: Terms,
}

multivector_common!(CliffordElement);
multivector_common!(ExteriorElement);

impl CliffordElement {
    /// Reversion `e_{i_1}…e_{i_p} ↦ e_{i_p}…e_{i_1}`.
    pub fn reverse(&self) -> Self {
        Self::from_terms(
            self.dim(),
            self.terms().map(|(b, c)| {
                let p = b.grade();
                (b, if (p * p.saturating_sub(1) / 2) % 2 == 1 { -c.clone() } else { c.clone() })
            }),
        )
    }
}

/// Clifford product.
pub fn clifford_mul(a: &CliffordElement, b: &CliffordElement) -> Result<CliffordElement> {
    check_dims(a.dim(), b.dim())?;
    let mut out = Terms::zero(a.dim());
    for (ba, ca) in a.terms() {
        for (bb, cb) in b.terms() {
            let (negative, blade) = blade_product(ba, bb);
            let c = ca * cb;
            out.accumulate(blade, if negative { -c } else { c });
        }
    }
    Ok(CliffordElement { terms: out })
}

impl Mul for &CliffordElement {
    type Output = CliffordElement;

    /// Panics on dimension mismatch; use [`clifford_mul`] for a checked product.
    fn mul(self, rhs: &CliffordElement) -> CliffordElement {
        clifford_mul(self, rhs).expect("clifford product of elements with different dimensions")
    }
}

impl Mul for CliffordElement {
    type Output = CliffordElement;
    fn mul(self, rhs: CliffordElement) -> CliffordElement {
        &self * &rhs
    }
}

/// Exterior product.
pub fn wedge(a: &ExteriorElement, b: &ExteriorElement) -> Result<ExteriorElement> {
    check_dims(a.dim(), b.dim())?;
    let mut out = Terms::zero(a.dim());
    for (ba, ca) in a.terms() {
        for (bb, cb) in b.terms() {
            if let Some((negative, blade)) = blade_wedge(ba, bb) {
                let c = ca * cb;
                out.accumulate(blade, if negative { -c } else { c });
            }
        }
    }
    Ok(ExteriorElement { terms: out })
}

/// Interior product `v ⌟ a` with `v^♭ = can(v, ·)`, extended complex-bilinearly.
pub fn contract(v: &Vector, a: &ExteriorElement) -> Result<ExteriorElement> {
    check_dims(v.dim(), a.dim())?;
    let mut out = Terms::zero(a.dim());
    for (j, vj) in v.coords().iter().enumerate() {
        if vj.is_zero() {
            continue;
        }
        for (b, c) in a.terms() {
            if !b.contains(j) {
                continue;
            }
            // move e_j to the front past the factors with smaller index
            let before = (b.0 & ((1 << j) - 1)).count_ones();
            let c = c * vj;
            out.accumulate(Blade(b.0 & !(1 << j)), if before % 2 == 1 { -c } else { c });
        }
    }
    Ok(ExteriorElement { terms: out })
}

/// The canonical isomorphism `Cl_n → Λ R^n ⊗ C`. In an orthonormal basis an
/// ordered product of distinct generators is sent to the wedge of the same
/// vectors, so the map is the identity on blade coordinates.
pub fn chevalley_to_exterior(a: &CliffordElement) -> ExteriorElement {
    ExteriorElement { terms: a.terms.clone() }
}

pub fn exterior_to_chevalley(a: &ExteriorElement) -> CliffordElement {
    CliffordElement { terms: a.terms.clone() }
}

/// `u·x·u⁻¹`, with the inverse supplied explicitly and checked.
pub fn ad_action(
    u: &CliffordElement,
    u_inv: &CliffordElement,
    x: &CliffordElement,
) -> Result<CliffordElement> {
    check_dims(u.dim(), x.dim())?;
    check_dims(u.dim(), u_inv.dim())?;
    if clifford_mul(u, u_inv)? != CliffordElement::one(u.dim()) {
        return Err(Error::NotInvertible("u·u_inv != 1".into()));
    }
    clifford_mul(&clifford_mul(u, x)?, u_inv)
}

/// Canonical inclusion `Cl_n ⊂ Cl_dim` sending `e_j` to `e_j`.
pub fn embed(a: &CliffordElement, dim: usize) -> Result<CliffordElement> {
    if dim < a.dim() || dim > MAX_DIM {
        return Err(Error::DimensionOutOfRange { dim, max: MAX_DIM });
    }
    Ok(CliffordElement::from_terms(dim, a.terms().map(|(b, c)| (b, c.clone()))))
}

/// The map induced on `ΛR^n ⊗ C` by a linear map `r` of `R^n` (column `j`
/// holding `r(e_j)`): `e_{i_1}∧…∧e_{i_p} ↦ r(e_{i_1})∧…∧r(e_{i_p})`.
pub fn exterior_power(r: &Matrix, x: &ExteriorElement) -> Result<ExteriorElement> {
    let n = x.dim();
    if r.rows() != n || r.cols() != n {
        return Err(Error::DimensionMismatch { left: n, right: r.rows() });
    }
    let images: Vec<ExteriorElement> =
        (0..n).map(|j| Vector::new(r.column(j)).to_exterior()).collect();
    let mut out = ExteriorElement::zero(n);
    for (blade, c) in x.terms() {
        let mut w = ExteriorElement::scalar(n, c.clone());
        for j in blade.indices() {
            w = wedge(&w, &images[j])?;
        }
        out = &out + &w;
    }
    Ok(out)
}

pub(crate) fn check_vector_dim(dim: usize, v: &Vector) -> Result<()> {
    check_dims(dim, v.dim())
}

/// A vector of `R^dim ⊗ C` in the canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector {
    coords: Vec<Gauss>,
}

impl Vector {
    pub fn new(coords: Vec<Gauss>) -> Self {
        assert!(coords.len() <= MAX_DIM);
        Vector { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Vector::new(vec![Gauss::zero(); dim])
    }

    pub fn basis(dim: usize, j: usize) -> Self {
        let mut v = Vector::zero(dim);
        v.coords[j] = Gauss::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Gauss] {
        &self.coords
    }

    /// Complex-bilinear extension of the Euclidean product.
    pub fn can(&self, other: &Vector) -> Gauss {
        assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(Gauss::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn is_real(&self) -> bool {
        self.coords.iter().all(scalar::is_real)
    }

    pub fn is_real_unit(&self) -> bool {
        self.is_real() && self.can(self).is_one()
    }

    pub fn scale(&self, s: &Gauss) -> Vector {
        Vector::new(self.coords.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim());
        Vector::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        self.add(&other.scale(&scalar::int(-1)))
    }

    /// Pads with zeros, realising `R^n ⊂ R^dim` on the first coordinates.
    pub fn extend(&self, dim: usize) -> Vector {
        let mut coords = self.coords.clone();
        coords.resize(dim, Gauss::zero());
        Vector::new(coords)
    }

    pub fn to_clifford(&self) -> CliffordElement {
        CliffordElement::from_terms(
            self.dim(),
            self.coords.iter().enumerate().map(|(j, c)| (Blade::generator(j), c.clone())),
        )
    }

    pub fn to_exterior(&self) -> ExteriorElement {
        chevalley_to_exterior(&self.to_clifford())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gauss, int};

    fn e(dim: usize, j: usize) -> CliffordElement {
        CliffordElement::generator(dim, j)
    }

    #[test]
    fn generators_square_to_minus_one() {
        for j in 0..4 {
            assert_eq!(&e(4, j) * &e(4, j), CliffordElement::scalar(4, int(-1)));
        }
    }

    #[test]
    fn orthogonal_generators_anticommute() {
        let sum = &(&e(3, 0) * &e(3, 1)) + &(&e(3, 1) * &e(3, 0));
        assert!(sum.is_zero());
    }

    #[test]
    fn product_of_distinct_generators_is_the_blade() {
        let p = &(&e(3, 0) * &e(3, 1)) * &e(3, 2);
        assert_eq!(p, CliffordElement::from_blade(3, Blade(0b111), int(1)));
        let q = &e(3, 2) * &e(3, 0);
        assert_eq!(q, CliffordElement::from_blade(3, Blade(0b101), int(-1)));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert_eq!(
            clifford_mul(&e(2, 0), &e(3, 0)),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        );
        let x = ExteriorElement::generator(3, 0);
        assert!(wedge(&ExteriorElement::generator(2, 0), &x).is_err());
        assert!(contract(&Vector::basis(2, 0), &x).is_err());
    }

    #[test]
    fn wedge_examples() {
        let e1 = ExteriorElement::generator(3, 0);
        let e2 = ExteriorElement::generator(3, 1);
        assert!(wedge(&e1, &e1).unwrap().is_zero());
        assert_eq!(wedge(&e1, &e2).unwrap(), ExteriorElement::from_blade(3, Blade(0b11), int(1)));
        assert_eq!(wedge(&e2, &e1).unwrap(), ExteriorElement::from_blade(3, Blade(0b11), int(-1)));
    }

    #[test]
    fn contraction_examples() {
        let e1 = Vector::basis(3, 0);
        assert_eq!(contract(&e1, &ExteriorElement::generator(3, 0)).unwrap(), ExteriorElement::one(3));
        let e23 = ExteriorElement::from_blade(3, Blade(0b110), int(1));
        assert!(contract(&e1, &e23).unwrap().is_zero());
        // e_2 ⌟ (e_1 ∧ e_2) = -e_1
        let e12 = ExteriorElement::from_blade(3, Blade(0b011), int(1));
        assert_eq!(
            contract(&Vector::basis(3, 1), &e12).unwrap(),
            ExteriorElement::from_blade(3, Blade(0b001), int(-1))
        );
    }

    #[test]
    fn chevalley_on_small_elements() {
        assert_eq!(chevalley_to_exterior(&CliffordElement::one(2)), ExteriorElement::one(2));
        let e12 = &e(2, 0) * &e(2, 1);
        assert_eq!(
            chevalley_to_exterior(&e12),
            wedge(&ExteriorElement::generator(2, 0), &ExteriorElement::generator(2, 1)).unwrap()
        );
    }

    #[test]
    fn ad_by_e1e2_negates_e1() {
        let u = &e(2, 0) * &e(2, 1);
        let u_inv = u.reverse();
        assert_eq!(ad_action(&u, &u_inv, &e(2, 0)).unwrap(), -e(2, 0));
        assert_eq!(ad_action(&u, &u_inv, &CliffordElement::one(2)).unwrap(), CliffordElement::one(2));
        assert!(matches!(ad_action(&u, &u, &e(2, 0)), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn embed_keeps_generators() {
        let e12 = &e(2, 0) * &e(2, 1);
        let big = embed(&e12, 4).unwrap();
        assert_eq!(big, &e(4, 0) * &e(4, 1));
        assert_eq!(embed(&CliffordElement::one(2), 4).unwrap(), CliffordElement::one(4));
        assert!(embed(&e12, 1).is_err());
    }

    #[test]
    fn reverse_of_bivector_is_negation() {
        let e12 = &e(3, 0) * &e(3, 1);
        assert_eq!(e12.reverse(), -e12.clone());
        assert_eq!(&e12 * &e12.reverse(), CliffordElement::one(3));
    }

    #[test]
    fn json_round_trip() {
        let x = CliffordElement::from_terms(
            3,
            [(Blade(0b101), gauss(2, -1)), (Blade(0), Gauss::new(scalar::rational(1, 3), Zero::zero()))],
        );
        let back = CliffordElement::from_json(&x.to_json()).unwrap();
        assert_eq!(back, x);
        assert_eq!(x.to_json()["terms"][0]["re"], "1/3");
    }
}
