//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{factorial, Rational};

/// Exponent vector, ordered graded-lexicographically: total degree first,
/// then lexicographic on the exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(n_vars: usize) -> Self {
        Self(vec![0; n_vars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `n_vars` variables `x1..xn`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    n_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(n_vars: usize) -> Self {
        Self { n_vars, terms: BTreeMap::new() }
    }

    pub fn constant(n_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(n_vars);
        p.add_term(Monomial::one(n_vars), c);
        p
    }

    pub fn one(n_vars: usize) -> Self {
        Self::constant(n_vars, Rational::one())
    }

    /// The coordinate function `x_axis` (1-based).
    pub fn var(n_vars: usize, axis: usize) -> Self {
        assert!(axis >= 1 && axis <= n_vars, "variable x{axis} out of range for {n_vars} variables");
        let mut e = vec![0; n_vars];
        e[axis - 1] = 1;
        Self::monomial(n_vars, e, Rational::one())
    }

    pub fn monomial(n_vars: usize, exponents: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exponents.len(), n_vars, "exponent length must equal variable count");
        let mut p = Self::zero(n_vars);
        p.add_term(Monomial(exponents), c);
        p
    }

    /// Sum of `(exponents, coefficient)` terms; exponent vectors must have length `n_vars`.
    pub fn from_terms<I>(n_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(n_vars);
        for (e, c) in terms {
            assert_eq!(e.len(), n_vars, "exponent length must equal variable count");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms.get(&Monomial(exponents.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n_vars);
        }
        Self {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.n_vars), |acc, _| &acc * self)
    }

    /// Partial derivative with respect to `x_axis` (1-based).
    pub fn partial(&self, axis: usize) -> Self {
        assert!(axis >= 1 && axis <= self.n_vars, "axis {axis} out of range");
        let i = axis - 1;
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.n_vars, "point dimension must equal variable count");
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    term *= num_traits::pow(x.clone(), e as usize);
                }
            }
            sum += term;
        }
        sum
    }

    /// Substitute `x_i = offset_i + Σ_j linear[i][j] u_j`, producing a polynomial
    /// in the `k` parameters `u_1..u_k`.
    pub fn compose_affine(&self, offset: &[Rational], linear: &[Vec<Rational>], k: usize) -> Self {
        assert_eq!(offset.len(), self.n_vars);
        assert_eq!(linear.len(), self.n_vars);
        let images: Vec<Polynomial> = offset
            .iter()
            .zip(linear)
            .map(|(o, row)| {
                assert_eq!(row.len(), k);
                let mut p = Polynomial::constant(k, o.clone());
                for (j, a) in row.iter().enumerate() {
                    p = &p + &Polynomial::var(k, j + 1).scale(a);
                }
                p
            })
            .collect();
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(k), p.clone()]).collect();
        let mut out = Polynomial::zero(k);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(k, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// Exact integral over the standard simplex `{u ≥ 0, Σu ≤ 1}` in `n_vars`
    /// dimensions: `∫ u^a = (Π a_i!) / (k + Σ a_i)!`.
    pub fn integrate_simplex(&self) -> Rational {
        let k = self.n_vars;
        self.terms
            .iter()
            .map(|(m, c)| {
                let num: BigInt = m.0.iter().map(|&a| factorial(a as usize)).product();
                let den = factorial(k + m.degree() as usize);
                c * Rational::new(num, den)
            })
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// Exact integral over the unit cube `[0,1]^n_vars`.
    pub fn integrate_cube(&self) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| {
                let den: BigInt = m.0.iter().map(|&a| BigInt::from(a + 1)).product();
                c / Rational::from_integer(den)
            })
            .fold(Rational::zero(), |acc, t| acc + t)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, rhs.n_vars, "polynomials over different variable counts");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, rhs.n_vars, "polynomials over different variable counts");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, rhs.n_vars, "polynomials over different variable counts");
        let mut out = Polynomial::zero(self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

/// Canonical rendering: descending graded-lexicographic order, e.g.
/// `3/2*x1^2*x3 - x2 + 1`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| if e == 1 { format!("x{}", j + 1) } else { format!("x{}^{}", j + 1, e) })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
