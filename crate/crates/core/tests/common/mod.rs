//! Strategies and independent reference implementations shared by the
//! integration tests.

#![allow(dead_code)]

use num_traits::Zero;
use proptest::prelude::*;
use spinorlab::scalar::{self, Gauss};
use spinorlab::{Blade, CliffordElement, ExteriorElement, Vector};

pub fn small_gauss() -> impl Strategy<Value = Gauss> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3)
        .prop_map(|(a, b, c, d)| Gauss::new(scalar::rational(a, b), scalar::rational(c, d)))
}

pub fn small_real() -> impl Strategy<Value = Gauss> {
    (-4i64..=4, 1i64..=3).prop_map(|(a, b)| scalar::from_rational(scalar::rational(a, b)))
}

pub fn real_vector(dim: usize) -> impl Strategy<Value = Vector> {
    proptest::collection::vec(small_real(), dim).prop_map(Vector::new)
}

pub fn terms(dim: usize, max_terms: usize) -> impl Strategy<Value = Vec<(u32, Gauss)>> {
    proptest::collection::vec((0u32..1 << dim, small_gauss()), 0..=max_terms)
}

pub fn clifford(dim: usize, max_terms: usize) -> impl Strategy<Value = CliffordElement> {
    terms(dim, max_terms).prop_map(move |t| CliffordElement::from_terms(dim, t.into_iter().map(|(m, c)| (Blade(m), c))))
}

pub fn exterior(dim: usize, max_terms: usize) -> impl Strategy<Value = ExteriorElement> {
    terms(dim, max_terms).prop_map(move |t| ExteriorElement::from_terms(dim, t.into_iter().map(|(m, c)| (Blade(m), c))))
}

fn indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|j| mask & (1 << j) != 0).collect()
}

/// Bubble-sorts a word in the generators, counting transpositions.
/// Returns `None` if a generator repeats and `collapse` is false.
fn normal_form(mut word: Vec<usize>, collapse: bool) -> Option<(bool, u32)> {
    let mut negative = false;
    for i in 0..word.len() {
        for j in 0..word.len() - 1 - i {
            if word[j] > word[j + 1] {
                word.swap(j, j + 1);
                negative = !negative;
            }
        }
    }
    let mut mask = 0u32;
    let mut k = 0;
    while k < word.len() {
        if k + 1 < word.len() && word[k] == word[k + 1] {
            if !collapse {
                return None;
            }
            // e_j·e_j = -1
            negative = !negative;
            k += 2;
        } else {
            mask |= 1 << word[k];
            k += 1;
        }
    }
    Some((negative, mask))
}

fn accumulate(
    dim: usize,
    a: impl Iterator<Item = (Blade, Gauss)> + Clone,
    b: impl Iterator<Item = (Blade, Gauss)> + Clone,
    collapse: bool,
) -> Vec<(Blade, Gauss)> {
    let mut out = vec![Gauss::zero(); 1 << dim];
    for (x, cx) in a {
        for (y, cy) in b.clone() {
            let mut word = indices(x.0);
            word.extend(indices(y.0));
            if let Some((neg, mask)) = normal_form(word, collapse) {
                let c = &cx * &cy;
                out[mask as usize] += if neg { -c } else { c };
            }
        }
    }
    out.into_iter().enumerate().map(|(m, c)| (Blade(m as u32), c)).collect()
}

/// Geometric product by rewriting words of generators.
pub fn reference_product(a: &CliffordElement, b: &CliffordElement) -> CliffordElement {
    let ta: Vec<(Blade, Gauss)> = a.terms().map(|(m, c)| (m, c.clone())).collect();
    let tb: Vec<(Blade, Gauss)> = b.terms().map(|(m, c)| (m, c.clone())).collect();
    CliffordElement::from_terms(a.dim(), accumulate(a.dim(), ta.into_iter(), tb.into_iter(), true))
}

/// Exterior product by rewriting words of generators.
pub fn reference_wedge(a: &ExteriorElement, b: &ExteriorElement) -> ExteriorElement {
    let ta: Vec<(Blade, Gauss)> = a.terms().map(|(m, c)| (m, c.clone())).collect();
    let tb: Vec<(Blade, Gauss)> = b.terms().map(|(m, c)| (m, c.clone())).collect();
    ExteriorElement::from_terms(a.dim(), accumulate(a.dim(), ta.into_iter(), tb.into_iter(), false))
}

/// `v⌟e_I` expanded generator by generator.
pub fn reference_contract(v: &Vector, a: &ExteriorElement) -> ExteriorElement {
    let mut out = Vec::new();
    for (blade, c) in a.terms() {
        for (pos, j) in indices(blade.0).into_iter().enumerate() {
            let coef = &v.coords()[j] * c;
            let coef = if pos % 2 == 1 { -coef } else { coef };
            out.push((Blade(blade.0 & !(1 << j)), coef));
        }
    }
    ExteriorElement::from_terms(a.dim(), out)
}
