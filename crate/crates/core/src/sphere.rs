//! Closed-form Hodge spectrum on `S^n` and the eigenvalue bounds coming from
//! Kählerian Killing spinors, in exact integer and rational arithmetic.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// One line `(k+p)(n-p+k+1)` of the spectrum of the Hodge Laplacian on
/// closed `p`-forms of the round `S^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereSpectrumLine {
    pub n: u64,
    pub p: u64,
    pub k: u64,
    #[serde(serialize_with = "as_string")]
    pub eigenvalue: BigUint,
    /// Known only for `k = 0`, where it is `C(n+1, p)`.
    #[serde(serialize_with = "opt_as_string")]
    pub multiplicity: Option<BigUint>,
}

fn as_string<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn opt_as_string<S: serde::Serializer>(x: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

pub fn closed_form_eigenvalue(n: u64, p: u64, k: u64) -> BigUint {
    BigUint::from(k + p) * BigUint::from(n - p + k + 1)
}

pub fn closed_form_spectrum(n: u64, p: u64, kmax: u64) -> Result<Vec<SphereSpectrumLine>> {
    if n < 2 || p < 1 || p > n - 1 {
        return Err(Error::InvalidParameter(format!("need 1 <= p <= n-1, got n = {n}, p = {p}")));
    }
    Ok((0..=kmax)
        .map(|k| SphereSpectrumLine {
            n,
            p,
            k,
            eigenvalue: closed_form_eigenvalue(n, p, k),
            multiplicity: (k == 0).then(|| binomial(n + 1, p)),
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlphaBranch {
    /// `α² > 0`: averaged `|H|²`.
    Real,
    /// `α² < 0`: `‖H‖_∞²`.
    Imaginary,
    /// `α = 0`: parallel spinors, either statistic.
    Zero,
}

/// Scalars entering the bound. `alpha2` is `α²`, so its sign tells real
/// from purely imaginary `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundInput {
    pub n: u64,
    pub alpha2: BigRational,
    pub h_mean_sq: Option<BigRational>,
    pub h_sup_sq: Option<BigRational>,
    /// `N = dim K_α`.
    pub big_n: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: u64,
    pub branch: AlphaBranch,
    /// Upper bound for `λ_N²`.
    pub bound: String,
    pub big_n: u64,
    /// `[(N+1)/2]`, the count for closed forms in the minimal case.
    pub half_n: u64,
    /// Upper bound for `λ_{2N}²` with `‖H‖_∞²`, when that statistic is given.
    pub extended_bound: Option<String>,
    pub extended_index: u64,
    /// The bound is negative, so no twisted Dirac operator can satisfy the
    /// hypotheses with these numbers.
    pub vacuous: bool,
    #[serde(skip)]
    pub bound_value: BigRational,
    #[serde(skip)]
    pub extended_value: Option<BigRational>,
}

pub fn alpha_branch(alpha2: &BigRational) -> AlphaBranch {
    if alpha2.is_zero() {
        AlphaBranch::Zero
    } else if alpha2.is_positive() {
        AlphaBranch::Real
    } else {
        AlphaBranch::Imaginary
    }
}

/// `(n+1)²α²/4 + n²h/4`.
fn bound_value(n: u64, alpha2: &BigRational, h: &BigRational) -> BigRational {
    let n1 = BigRational::from_integer(((n + 1) * (n + 1)).into());
    let n2 = BigRational::from_integer((n * n).into());
    let four = BigRational::from_integer(4.into());
    (n1 * alpha2 + n2 * h) / four
}

pub fn theorem_bound(input: &BoundInput) -> Result<BoundReport> {
    if input.n < 1 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if input.big_n < 1 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    let branch = alpha_branch(&input.alpha2);
    if branch != AlphaBranch::Zero && input.n.is_multiple_of(2) {
        return Err(Error::InvalidAlpha(format!("α ≠ 0 needs odd n, got n = {}", input.n)));
    }
    for h in [&input.h_mean_sq, &input.h_sup_sq].into_iter().flatten() {
        if h.is_negative() {
            return Err(Error::InvalidParameter("H statistics are squared norms and cannot be negative".into()));
        }
    }
    let h = match (branch, &input.h_mean_sq, &input.h_sup_sq) {
        (AlphaBranch::Real, Some(h), None) | (AlphaBranch::Imaginary, None, Some(h)) => h,
        (AlphaBranch::Zero, Some(h), None) | (AlphaBranch::Zero, None, Some(h)) => h,
        (AlphaBranch::Real, _, _) => {
            return Err(Error::InvalidAlpha("real α takes exactly the mean-square statistic".into()))
        }
        (AlphaBranch::Imaginary, _, _) => {
            return Err(Error::InvalidAlpha("imaginary α takes exactly the sup-norm statistic".into()))
        }
        (AlphaBranch::Zero, _, _) => {
            return Err(Error::InvalidParameter("exactly one H statistic is required".into()))
        }
    };
    let value = bound_value(input.n, &input.alpha2, h);
    let extended_value = input.h_sup_sq.as_ref().map(|s| bound_value(input.n, &input.alpha2, s));
    Ok(BoundReport {
        n: input.n,
        branch,
        bound: scalar::rational_string(&value),
        big_n: input.big_n,
        half_n: input.big_n.div_ceil(2),
        extended_bound: extended_value.as_ref().map(scalar::rational_string),
        extended_index: 2 * input.big_n,
        vacuous: value.is_negative(),
        bound_value: value,
        extended_value,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KillingSpaceDims {
    pub n: u64,
    /// `dim K_1` on `CP^n`.
    #[serde(serialize_with = "as_string")]
    pub killing: BigUint,
    /// Projection onto the `-i`-eigenspace of the Kähler form.
    #[serde(serialize_with = "as_string")]
    pub minus: BigUint,
    /// Projection onto the `+i`-eigenspace.
    #[serde(serialize_with = "as_string")]
    pub plus: BigUint,
}

fn require_odd(n: u64) -> Result<()> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("n must be odd, got {n}")));
    }
    Ok(())
}

/// `N = 2C(n, (n+1)/2)` for `CP^n`, `n` odd; both projections are injective,
/// so they have dimension `N` as well.
pub fn killing_space_dims(n: u64) -> Result<KillingSpaceDims> {
    require_odd(n)?;
    let big_n = BigUint::from(2u8) * binomial(n, n.div_ceil(2));
    Ok(KillingSpaceDims { n, killing: big_n.clone(), minus: big_n.clone(), plus: big_n })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharpnessReport {
    pub n: u64,
    pub p: u64,
    #[serde(serialize_with = "as_string")]
    pub first_eigenvalue: BigUint,
    #[serde(serialize_with = "as_string")]
    pub target: BigUint,
    #[serde(serialize_with = "as_string")]
    pub multiplicity: BigUint,
    #[serde(serialize_with = "as_string")]
    pub killing_dim: BigUint,
    /// `C(n, (n-1)/2) + C(n, (n+1)/2)`.
    #[serde(serialize_with = "as_string")]
    pub pascal_sum: BigUint,
    pub bound: String,
    /// `first eigenvalue - bound`.
    pub margin: String,
    pub eigenvalue_matches: bool,
    pub binomial_identity: bool,
    pub multiplicity_matches: bool,
    pub holds: bool,
}

/// Sharpness of the bound for `S^n ⊂ CP^n`: the first eigenvalue on closed
/// `(n+1)/2`-forms is `(n+1)²/4`, with multiplicity `2C(n, (n+1)/2)`.
pub fn sharpness_check(n: u64) -> Result<SharpnessReport> {
    require_odd(n)?;
    if n < 3 {
        return Err(Error::InvalidParameter(format!("n must be at least 3, got {n}")));
    }
    let p = n.div_ceil(2);
    let line = closed_form_spectrum(n, p, 0)?.remove(0);
    let target = BigUint::from((n + 1) * (n + 1) / 4);
    let dims = killing_space_dims(n)?;
    let pascal_sum = binomial(n, (n - 1) / 2) + binomial(n, p);
    let multiplicity = line.multiplicity.clone().expect("k = 0 carries a multiplicity");
    let report = theorem_bound(&BoundInput {
        n,
        alpha2: BigRational::one(),
        h_mean_sq: Some(BigRational::zero()),
        h_sup_sq: None,
        big_n: u64::try_from(&dims.killing).unwrap_or(u64::MAX),
    })?;
    let margin = BigRational::from_integer(line.eigenvalue.clone().into()) - &report.bound_value;
    let eigenvalue_matches = line.eigenvalue == target && margin.is_zero();
    let binomial_identity = dims.killing == pascal_sum && pascal_sum == binomial(n + 1, p);
    let multiplicity_matches = multiplicity == dims.killing;
    Ok(SharpnessReport {
        n,
        p,
        first_eigenvalue: line.eigenvalue,
        target,
        multiplicity,
        killing_dim: dims.killing,
        pascal_sum,
        bound: report.bound,
        margin: scalar::rational_string(&margin),
        eigenvalue_matches,
        binomial_identity,
        multiplicity_matches,
        holds: eigenvalue_matches && binomial_identity && multiplicity_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        scalar::rational(a, b)
    }

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(4, 2), BigUint::from(6u8));
        assert_eq!(binomial(6, 3), BigUint::from(20u8));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
    }

    #[test]
    fn three_sphere_two_forms() {
        let lines = closed_form_spectrum(3, 2, 3).unwrap();
        let values: Vec<u64> = lines.iter().map(|l| u64::try_from(&l.eigenvalue).unwrap()).collect();
        assert_eq!(values, vec![4, 9, 16, 25]);
        assert_eq!(lines[0].multiplicity, Some(BigUint::from(6u8)));
        assert!(lines[1..].iter().all(|l| l.multiplicity.is_none()));
    }

    #[test]
    fn p_out_of_range() {
        assert!(closed_form_spectrum(3, 0, 1).is_err());
        assert!(closed_form_spectrum(3, 3, 1).is_err());
    }

    #[test]
    fn bound_branches() {
        let input = |alpha2, mean, sup| BoundInput { n: 3, alpha2, h_mean_sq: mean, h_sup_sq: sup, big_n: 6 };
        assert_eq!(theorem_bound(&input(q(1, 1), Some(q(0, 1)), None)).unwrap().bound, "4");
        let imag = theorem_bound(&input(q(-1, 1), None, Some(q(1, 1)))).unwrap();
        assert_eq!(imag.bound, "-7/4");
        assert!(imag.vacuous);
        assert_eq!(imag.extended_bound.as_deref(), Some("-7/4"));
        assert!(theorem_bound(&input(q(1, 1), None, Some(q(1, 1)))).is_err());
        assert!(theorem_bound(&input(q(-1, 1), Some(q(1, 1)), None)).is_err());
        assert!(theorem_bound(&input(q(0, 1), Some(q(0, 1)), Some(q(0, 1)))).is_err());
        assert!(theorem_bound(&input(q(0, 1), None, None)).is_err());
    }

    #[test]
    fn even_n_with_nonzero_alpha() {
        let input = BoundInput { n: 2, alpha2: q(1, 1), h_mean_sq: Some(q(0, 1)), h_sup_sq: None, big_n: 1 };
        assert!(matches!(theorem_bound(&input), Err(Error::InvalidAlpha(_))));
    }

    #[test]
    fn sharp_for_small_odd_n() {
        for n in [3, 5, 7] {
            assert!(sharpness_check(n).unwrap().holds);
        }
        assert!(sharpness_check(4).is_err());
        assert_eq!(killing_space_dims(5).unwrap().killing, BigUint::from(20u8));
    }
}
