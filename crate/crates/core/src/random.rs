//! Seeded generators for randomized forms, fields and cells.
//!
//! Used by the scenario runner and the test suites; every draw comes from a
//! caller-supplied RNG so runs are reproducible from a seed.

use rand::Rng;

use crate::chains::{BoxCell, Cell, Simplex};
use crate::exterior_algebra::multi_indices;
use crate::polyform::{PolyForm, PolyVectorField};
use crate::polynomial::Polynomial;
use crate::rational::{frac, Rational};

/// Small rational with numerator in `-4..=4` and denominator in `1..=3`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    frac(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

#[derive(Debug, Clone, Copy)]
pub struct FormSampler {
    /// Maximum total degree of sampled polynomials.
    pub max_degree: u32,
    /// Maximum number of terms per polynomial.
    pub max_terms: usize,
}

impl Default for FormSampler {
    fn default() -> Self {
        Self { max_degree: 3, max_terms: 3 }
    }
}

impl FormSampler {
    pub fn polynomial<R: Rng + ?Sized>(&self, rng: &mut R, n_vars: usize) -> Polynomial {
        let count = rng.gen_range(1..=self.max_terms.max(1));
        let terms = (0..count).map(|_| {
            let mut exps = vec![0u32; n_vars];
            if n_vars > 0 {
                let total = rng.gen_range(0..=self.max_degree);
                for _ in 0..total {
                    exps[rng.gen_range(0..n_vars)] += 1;
                }
            }
            (exps, small_rational(rng))
        });
        Polynomial::from_terms(n_vars, terms.collect::<Vec<_>>())
    }

    /// Random `p`-form on `R^n`; each component is present with probability 2/3.
    pub fn form<R: Rng + ?Sized>(&self, rng: &mut R, n: usize, p: usize) -> PolyForm {
        let mut comps = Vec::new();
        for idx in multi_indices(n, p) {
            if rng.gen_ratio(2, 3) {
                comps.push((idx, self.polynomial(rng, n)));
            }
        }
        PolyForm::from_components(n, p, comps).expect("sampled indices are canonical")
    }

    pub fn vector_field<R: Rng + ?Sized>(&self, rng: &mut R, n_vars: usize, len: usize) -> PolyVectorField {
        PolyVectorField::new((0..len).map(|_| self.polynomial(rng, n_vars)).collect()).expect("non-empty field")
    }
}

fn point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rational(rng)).collect()
}

/// Random `k`-simplex in `R^n` with small rational vertices.
pub fn simplex<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Simplex {
    Simplex::new((0..=k).map(|_| point(rng, n)).collect()).expect("consistent vertex dimensions")
}

/// Random parallelepiped `k`-cell in `R^n`.
pub fn box_cell<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> BoxCell {
    BoxCell::new(point(rng, n), (0..k).map(|_| point(rng, n)).collect()).expect("consistent edge dimensions")
}

/// Simplex or box, chosen uniformly.
pub fn cell<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Cell {
    if rng.gen_bool(0.5) {
        Cell::Simplex(simplex(rng, n, k))
    } else {
        Cell::Box(box_cell(rng, n, k))
    }
}
