//! Independent oracles shared by the integration tests.
//!
//! Integrals here use closed Newton–Cotes rules with exact rational weights,
//! obtained by integrating the Lagrange basis. A rule on `m + 1` nodes is exact
//! for polynomials of degree `m` in each variable, so tensor-product rules give
//! exact cube integrals without touching the library's closed-form integrators.

#![allow(dead_code)]

use premetric::polynomial::Polynomial;
use premetric::rational::{frac, rat};
use premetric::Rational;

/// Nodes and weights of the closed Newton–Cotes rule on `[0, 1]` with `m + 1` nodes.
pub fn newton_cotes(m: usize) -> Vec<(Rational, Rational)> {
    let m = m.max(1);
    let nodes: Vec<Rational> = (0..=m).map(|i| frac(i as i64, m as i64)).collect();
    (0..=m)
        .map(|i| {
            // expand L_i(x) = Π_{j≠i} (x − x_j)/(x_i − x_j) as dense coefficients
            let mut coeffs = vec![rat(1)];
            let mut denom = rat(1);
            for (j, xj) in nodes.iter().enumerate() {
                if j == i {
                    continue;
                }
                let mut next = vec![rat(0); coeffs.len() + 1];
                for (k, c) in coeffs.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * xj;
                }
                coeffs = next;
                denom *= &nodes[i] - xj;
            }
            let integral: Rational = coeffs.iter().enumerate().map(|(k, c)| c / rat(k as i64 + 1)).sum();
            (nodes[i].clone(), integral / denom)
        })
        .collect()
}

/// Largest exponent of any single variable.
pub fn max_var_degree(p: &Polynomial) -> usize {
    p.terms().flat_map(|(m, _)| m.exponents().iter().copied()).max().unwrap_or(0) as usize
}

/// `∫_{[0,1]^k} f(x) dx` for `f` given as a closure, using a rule exact to per-variable degree `m`.
pub fn cube_quadrature(k: usize, m: usize, f: impl Fn(&[Rational]) -> Rational) -> Rational {
    let rule = newton_cotes(m);
    let mut total = rat(0);
    let mut idx = vec![0usize; k];
    loop {
        let point: Vec<Rational> = idx.iter().map(|&i| rule[i].0.clone()).collect();
        let weight: Rational = idx.iter().map(|&i| rule[i].1.clone()).product();
        total += weight * f(&point);
        let mut pos = 0;
        loop {
            if pos == k {
                return total;
            }
            idx[pos] += 1;
            if idx[pos] < rule.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// `∫_{[0,1]^n} p`.
pub fn cube_integral(p: &Polynomial) -> Rational {
    cube_quadrature(p.n_vars(), max_var_degree(p), |x| p.eval(x))
}

/// `∫` of `p` over the face `x_axis = value` of the unit cube, as a function of the other coordinates.
pub fn face_integral(p: &Polynomial, axis: usize, value: &Rational) -> Rational {
    let n = p.n_vars();
    cube_quadrature(n - 1, max_var_degree(p), |y| {
        let mut x = Vec::with_capacity(n);
        x.extend_from_slice(&y[..axis - 1]);
        x.push(value.clone());
        x.extend_from_slice(&y[axis - 1..]);
        p.eval(&x)
    })
}

/// `∫_{∂[0,1]^n} η` for an `(n−1)`-form given by its components `η_{K_a}`, where `K_a`
/// omits axis `a`: `Σ_a (−1)^{a−1} (∫ η_{K_a}|_{x_a=1} − ∫ η_{K_a}|_{x_a=0})`.
pub fn cube_boundary_integral(components: &[Polynomial]) -> Rational {
    let mut total = rat(0);
    for (i, c) in components.iter().enumerate() {
        let a = i + 1;
        let jump = face_integral(c, a, &rat(1)) - face_integral(c, a, &rat(0));
        if a % 2 == 1 {
            total += jump;
        } else {
            total -= jump;
        }
    }
    total
}

/// Binomial coefficient by Pascal's rule.
pub fn pascal(n: usize, r: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for k in 1..row.len() {
            next[k] = row[k - 1] + row[k];
        }
        row = next;
    }
    row.get(r).copied().unwrap_or(0)
}
