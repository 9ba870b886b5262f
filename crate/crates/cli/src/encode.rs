//! JSON encodings of exact inputs for counterexample payloads, and exact
//! comparisons that also report the size of the difference.

use serde_json::{json, Value};
use spinorlab::matrix::Matrix;
use spinorlab::scalar::{self, Gauss};
use spinorlab::spin_rep::TensorSpinor;
use spinorlab::witt::IdealSpinor;
use spinorlab::{CliffordElement, ExteriorElement, SpinElement, Vector};

use crate::Outcome;

pub fn gauss(z: &Gauss) -> Value {
    json!({ "re": scalar::rational_string(&z.re), "im": scalar::rational_string(&z.im) })
}

pub fn vector(v: &Vector) -> Value {
    Value::Array(v.coords().iter().map(gauss).collect())
}

pub fn spinor(coords: &[Gauss]) -> Value {
    Value::Array(coords.iter().map(gauss).collect())
}

pub fn ideal(s: &IdealSpinor) -> Value {
    json!({ "n": s.n(), "coords": spinor(s.coords()) })
}

pub fn spin(u: &SpinElement) -> Value {
    json!({ "dim": u.dim(), "factors": u.factors().iter().map(vector).collect::<Vec<_>>() })
}

pub fn clifford(a: &CliffordElement) -> Value {
    a.to_json()
}

pub fn exterior(a: &ExteriorElement) -> Value {
    a.to_json()
}

/// Exact comparison reporting the largest coefficient of the difference.
pub trait Compare {
    fn compare(&self, other: &Self) -> Outcome;
}

impl Compare for CliffordElement {
    fn compare(&self, other: &Self) -> Outcome {
        Outcome::exact(self == other, (self - other).max_abs())
    }
}

impl Compare for ExteriorElement {
    fn compare(&self, other: &Self) -> Outcome {
        Outcome::exact(self == other, (self - other).max_abs())
    }
}

impl Compare for IdealSpinor {
    fn compare(&self, other: &Self) -> Outcome {
        Outcome::exact(self == other, self.sub(other).max_abs())
    }
}

impl Compare for Matrix {
    fn compare(&self, other: &Self) -> Outcome {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return Outcome::exact(false, f64::INFINITY);
        }
        Outcome::exact(self == other, (self - other).max_abs())
    }
}

impl Compare for TensorSpinor {
    fn compare(&self, other: &Self) -> Outcome {
        if self.components().len() != other.components().len() {
            return Outcome::exact(false, f64::INFINITY);
        }
        Outcome::exact(self == other, self.sub(other).max_abs())
    }
}

impl Compare for Vec<Gauss> {
    fn compare(&self, other: &Self) -> Outcome {
        if self.len() != other.len() {
            return Outcome::exact(false, f64::INFINITY);
        }
        let residual = self.iter().zip(other).map(|(a, b)| scalar::abs_f64(&(a - b))).fold(0.0, f64::max);
        Outcome::exact(self == other, residual)
    }
}

impl Compare for Gauss {
    fn compare(&self, other: &Self) -> Outcome {
        Outcome::exact(self == other, scalar::abs_f64(&(self - other)))
    }
}

/// `true` as an exact pass, `false` as an exact failure.
pub fn holds(ok: bool) -> Outcome {
    Outcome::exact(ok, 0.0)
}
