//! `Spin_n` as even products of real unit vectors, and a seeded sampler of
//! exact random data (unit vectors, spin elements, rotations, multivectors).

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::{self, Blade, CliffordElement, Vector, MAX_DIM};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{self, Gauss};

/// `v_1·…·v_{2k}` kept as its factor list, so the inverse is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinElement {
    dim: usize,
    factors: Vec<Vector>,
}

impl SpinElement {
    pub fn new(factors: Vec<Vector>) -> Result<Self> {
        if factors.len() < 2 || factors.len() % 2 == 1 {
            return Err(Error::OddFactorCount(factors.len()));
        }
        let dim = factors[0].dim();
        for v in &factors {
            clifford::check_vector_dim(dim, v)?;
            if !v.is_real_unit() {
                return Err(Error::NotUnitVector);
            }
        }
        Ok(SpinElement { dim, factors })
    }

    pub fn identity(dim: usize) -> Self {
        let e1 = Vector::basis(dim, 0);
        // e_1·(-e_1) = 1
        SpinElement { dim, factors: vec![e1.clone(), e1.scale(&scalar::int(-1))] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn factors(&self) -> &[Vector] {
        &self.factors
    }

    pub fn to_clifford(&self) -> CliffordElement {
        self.factors
            .iter()
            .fold(CliffordElement::one(self.dim), |acc, v| &acc * &v.to_clifford())
    }

    /// `(v_1·…·v_{2k})^{-1} = (-v_{2k})·…·(-v_1)`.
    pub fn inverse(&self) -> SpinElement {
        let minus = scalar::int(-1);
        SpinElement {
            dim: self.dim,
            factors: self.factors.iter().rev().map(|v| v.scale(&minus)).collect(),
        }
    }

    pub fn negate(&self) -> SpinElement {
        let mut factors = self.factors.clone();
        factors[0] = factors[0].scale(&scalar::int(-1));
        SpinElement { dim: self.dim, factors }
    }

    /// Group product `self · other`.
    pub fn compose(&self, other: &SpinElement) -> Result<SpinElement> {
        crate::error::check_dims(self.dim, other.dim)?;
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(SpinElement { dim: self.dim, factors })
    }

    /// `u·x·u^{-1}`.
    pub fn ad(&self, x: &CliffordElement) -> Result<CliffordElement> {
        clifford::ad_action(&self.to_clifford(), &self.inverse().to_clifford(), x)
    }

    /// The rotation `Ad(u)`, column `j` holding the image of `e_j`.
    pub fn ad_matrix(&self) -> Matrix {
        let u = self.to_clifford();
        let u_inv = self.inverse().to_clifford();
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let image = &(&u * &CliffordElement::generator(self.dim, j)) * &u_inv;
            for i in 0..self.dim {
                m[(i, j)] = image.coefficient(Blade::generator(i));
            }
        }
        m
    }
}

/// Seeded source of small exact random data.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen()
    }

    /// A rational `a/b` with `|a| <= 3`, `1 <= b <= 3`.
    pub fn rational(&mut self) -> BigRational {
        scalar::rational(self.rng.gen_range(-3..=3), self.rng.gen_range(1..=3))
    }

    pub fn gauss(&mut self) -> Gauss {
        Gauss::new(self.rational(), self.rational())
    }

    pub fn real_vector(&mut self, n: usize) -> Vector {
        Vector::new((0..n).map(|_| scalar::from_rational(self.rational())).collect())
    }

    pub fn complex_vector(&mut self, n: usize) -> Vector {
        Vector::new((0..n).map(|_| self.gauss()).collect())
    }

    /// Exact point of `S^{n-1}` from inverse stereographic projection of a
    /// small rational point, then permuted and reflected at random.
    pub fn unit_vector(&mut self, n: usize) -> Vector {
        assert!((1..=MAX_DIM).contains(&n));
        let mut coords: Vec<BigRational> = if n == 1 {
            vec![BigRational::one()]
        } else {
            let t: Vec<BigRational> = (0..n - 1)
                .map(|_| scalar::rational(self.rng.gen_range(-2..=2), self.rng.gen_range(1..=2)))
                .collect();
            let t2 = t.iter().fold(BigRational::zero(), |a, x| a + x * x);
            let den = &t2 + BigRational::one();
            let mut c: Vec<BigRational> = t.iter().map(|x| x * scalar::rational(2, 1) / &den).collect();
            c.push((&t2 - BigRational::one()) / &den);
            c
        };
        coords.shuffle(&mut self.rng);
        for c in coords.iter_mut() {
            if self.rng.gen() {
                *c = -c.clone();
            }
        }
        Vector::new(coords.into_iter().map(scalar::from_rational).collect())
    }

    /// Product of `k` random unit vectors; `k` must be even and at least 2.
    pub fn spin_element(&mut self, n: usize, k: usize) -> Result<SpinElement> {
        if k < 2 || k % 2 == 1 {
            return Err(Error::OddFactorCount(k));
        }
        SpinElement::new((0..k).map(|_| self.unit_vector(n)).collect())
    }

    /// Random element of `Cl_n` with about `terms` nonzero blades.
    pub fn clifford_element(&mut self, n: usize, terms: usize) -> CliffordElement {
        let count = 1usize << n;
        CliffordElement::from_terms(
            n,
            (0..terms).map(|_| (Blade(self.rng.gen_range(0..count) as u32), self.gauss())),
        )
    }

    /// Random element of grade `p`.
    pub fn homogeneous(&mut self, n: usize, p: usize, terms: usize) -> CliffordElement {
        let blades: Vec<u32> = (0..1u32 << n).filter(|m| m.count_ones() as usize == p).collect();
        CliffordElement::from_terms(
            n,
            (0..terms).map(|_| (Blade(*blades.choose(&mut self.rng).unwrap()), self.gauss())),
        )
    }

    /// Random coordinate vector of length `d`.
    pub fn spinor(&mut self, d: usize) -> Vec<Gauss> {
        (0..d).map(|_| self.gauss()).collect()
    }

    /// Exact rotation `(I - A)(I + A)^{-1}` for a random rational skew `A`.
    pub fn rotation(&mut self, n: usize) -> Matrix {
        let mut a = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let x = scalar::from_rational(scalar::rational(self.rng.gen_range(-2..=2), self.rng.gen_range(1..=3)));
                a[(i, j)] = x.clone();
                a[(j, i)] = -x;
            }
        }
        let id = Matrix::identity(n);
        let inv = (&id + &a).inverse().expect("I + A is invertible for skew A");
        &(&id - &a) * &inv
    }
}
