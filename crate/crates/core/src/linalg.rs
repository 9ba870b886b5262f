//! Floating-point eigenvalues and orthonormalisation for the spectral parts.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// `‖A - A^†‖_max`.
pub fn hermitian_defect(m: &CMatrix) -> f64 {
    (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut values: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|a, b| a.total_cmp(b));
    values
}

/// Eigenvalues of an arbitrary square matrix, sorted by real then imaginary part.
pub fn eigenvalues(m: &CMatrix) -> Vec<Complex64> {
    let mut values: Vec<Complex64> = match m.nrows() {
        0 => Vec::new(),
        1 => vec![m[(0, 0)]],
        2 => {
            let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
            let half_trace = (a + d) / 2.0;
            let disc = (half_trace * half_trace - (a * d - b * c)).sqrt();
            vec![half_trace - disc, half_trace + disc]
        }
        _ => m.clone().schur().eigenvalues().expect("complex Schur form is triangular").iter().copied().collect(),
    };
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    values
}

/// Modified Gram-Schmidt, run twice for stability. Fails when the vectors
/// span fewer than `vectors.len()` dimensions (relative tolerance `tol`).
pub fn orthonormalize(vectors: &[CVector], tol: f64) -> Result<Vec<CVector>> {
    let mut basis: Vec<CVector> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let scale = v.norm();
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let proj = q.dotc(&w);
                w -= q * proj;
            }
        }
        let norm = w.norm();
        if scale == 0.0 || norm <= tol * scale {
            return Err(Error::DegenerateTrialSpan { rank: basis.len(), requested: vectors.len() });
        }
        basis.push(w / Complex64::new(norm, 0.0));
    }
    Ok(basis)
}

/// Groups sorted values whose neighbours differ by at most `tol`.
pub fn group_multiplicities(sorted: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize, f64)> = Vec::new();
    for &x in sorted {
        match out.last_mut() {
            Some((_, count, last)) if (x - *last).abs() <= tol => {
                *count += 1;
                *last = x;
            }
            _ => out.push((x, 1, x)),
        }
    }
    out.into_iter()
        .map(|(first, count, last)| {
            let mid = (first + last) / 2.0;
            (if mid.abs() <= tol { 0.0 } else { mid }, count)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_y_has_eigenvalues_plus_minus_one() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
        let v = hermitian_eigenvalues(&m);
        assert!((v[0] + 1.0).abs() < 1e-12 && (v[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nilpotent_block_has_zero_eigenvalues() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]);
        assert!(eigenvalues(&m).iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn dependent_vectors_are_rejected() {
        let a = CVector::from_vec(vec![c(1., 0.), c(0., 1.)]);
        let b = &a * c(0., 2.);
        assert_eq!(
            orthonormalize(&[a, b], 1e-10).unwrap_err(),
            Error::DegenerateTrialSpan { rank: 1, requested: 2 }
        );
    }

    #[test]
    fn multiplicities_group_close_values() {
        assert_eq!(group_multiplicities(&[-1.0, 1e-14, -1e-14, 2.0, 2.0], 1e-9), vec![(-1.0, 1), (0.0, 2), (2.0, 2)]);
    }
}
