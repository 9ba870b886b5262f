//! Exact Gaussian rationals, the coefficient field of every algebraic object
//! in the crate.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An element of `Q(i)`.
pub type Gauss = Complex<BigRational>;

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(re: i64) -> Gauss {
    Complex::new(rational(re, 1), BigRational::zero())
}

pub fn gauss(re: i64, im: i64) -> Gauss {
    Complex::new(rational(re, 1), rational(im, 1))
}

pub fn from_rational(re: BigRational) -> Gauss {
    Complex::new(re, BigRational::zero())
}

pub fn imag_unit() -> Gauss {
    Complex::new(BigRational::zero(), BigRational::one())
}

pub fn half() -> Gauss {
    from_rational(rational(1, 2))
}

/// `i^k` for a quarter-turn count `k`.
pub fn quarter_turn(k: u8) -> Gauss {
    match k % 4 {
        0 => int(1),
        1 => imag_unit(),
        2 => int(-1),
        _ => -imag_unit(),
    }
}

pub fn conj(z: &Gauss) -> Gauss {
    z.conj()
}

pub fn is_real(z: &Gauss) -> bool {
    z.im.is_zero()
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    match q.to_f64() {
        Some(x) => x,
        // ratio of huge integers: scale down before converting
        None => {
            let n = q.numer().to_f64().unwrap_or(f64::NAN);
            let d = q.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

pub fn to_c64(z: &Gauss) -> Complex64 {
    Complex64::new(rational_to_f64(&z.re), rational_to_f64(&z.im))
}

/// Modulus as a float, used to report residuals of exact comparisons.
pub fn abs_f64(z: &Gauss) -> f64 {
    to_c64(z).norm()
}

/// `|z|^2` exactly.
pub fn norm_sqr(z: &Gauss) -> BigRational {
    &z.re * &z.re + &z.im * &z.im
}

/// Exact square root of a non-negative rational, when it has one.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().magnitude().sqrt();
    let d = q.denom().magnitude().sqrt();
    if &(&n * &n) == q.numer().magnitude() && &(&d * &d) == q.denom().magnitude() {
        Some(BigRational::new(BigInt::from(n), BigInt::from(d)))
    } else {
        None
    }
}

/// Renders a rational the way the JSON reports store it: `"p"` or `"p/q"`.
pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-0.25"`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let mut n: BigInt = digits.parse().ok()?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Some(BigRational::new(n, d));
    }
    text.parse::<BigInt>().ok().map(BigRational::from_integer)
}
