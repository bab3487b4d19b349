//! Differential forms with polynomial coefficients on a global chart of `R^n`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::error::{check_degree, check_dim, invalid, Result};
use crate::exterior_algebra::{evaluate, AltTensor, MultiIndex};
use crate::polynomial::Polynomial;
use crate::rational::Rational;

/// A differential `p`-form `Σ_I ω_I(x) dx^I` on `R^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyForm {
    n: usize,
    p: usize,
    coeffs: BTreeMap<MultiIndex, Polynomial>,
}

impl PolyForm {
    pub fn zero(n: usize, p: usize) -> Self {
        Self { n, p, coeffs: BTreeMap::new() }
    }

    /// Form from `(index, coefficient)` pairs. Indices must have length `p`
    /// and axes at most `n`; polynomials must be in `n` variables.
    pub fn from_components<I>(n: usize, p: usize, components: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Polynomial)>,
    {
        let mut form = Self::zero(n, p);
        for (idx, c) in components {
            check_degree(p, idx.degree())?;
            if idx.max_axis() > n {
                return Err(invalid(format!("index {idx} exceeds ambient dimension {n}")));
            }
            check_dim(n, c.n_vars())?;
            form.add_to(idx, c);
        }
        Ok(form)
    }

    /// The 0-form given by a function.
    pub fn function(f: Polynomial) -> Self {
        let n = f.n_vars();
        let mut form = Self::zero(n, 0);
        form.add_to(MultiIndex::empty(), f);
        form
    }

    /// `dx^{a1} ∧ ... ∧ dx^{ap}` for strictly increasing axes.
    pub fn basis(n: usize, axes: &[usize]) -> Result<Self> {
        let idx = MultiIndex::new(axes.to_vec())?;
        Self::from_components(n, axes.len(), [(idx, Polynomial::one(n))])
    }

    /// `f dx^{a1} ∧ ... ∧ dx^{ap}`.
    pub fn term(f: Polynomial, axes: &[usize]) -> Result<Self> {
        let n = f.n_vars();
        let idx = MultiIndex::new(axes.to_vec())?;
        Self::from_components(n, axes.len(), [(idx, f)])
    }

    /// `dx^1 ∧ ... ∧ dx^n`.
    pub fn volume(n: usize) -> Self {
        let axes: Vec<usize> = (1..=n).collect();
        Self::basis(n, &axes).expect("increasing axes")
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&MultiIndex, &Polynomial)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, idx: &MultiIndex) -> Polynomial {
        self.coeffs.get(idx).cloned().unwrap_or_else(|| Polynomial::zero(self.n))
    }

    /// Coefficient on increasing axes; panics on a non-canonical tuple.
    pub fn coefficient_on(&self, axes: &[usize]) -> Polynomial {
        self.coefficient(&MultiIndex::new(axes.to_vec()).expect("canonical index"))
    }

    pub(crate) fn add_to(&mut self, idx: MultiIndex, c: Polynomial) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(idx) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get() + &c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_to(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_coefficients(|p| p.scale(c))
    }

    /// Multiply every coefficient by a function.
    pub fn mul_function(&self, f: &Polynomial) -> Result<Self> {
        check_dim(self.n, f.n_vars())?;
        Ok(self.map_coefficients(|p| p * f))
    }

    fn map_coefficients(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        let mut out = Self::zero(self.n, self.p);
        for (k, v) in &self.coeffs {
            out.add_to(k.clone(), f(v));
        }
        out
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        check_dim(self.n, other.n)?;
        check_degree(self.p, other.p)
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (idx, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let basis: Vec<String> = idx.axes().iter().map(|a| format!("dx{a}")).collect();
            if basis.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{}", basis.join("^"))?;
            }
        }
        Ok(())
    }
}

/// Exterior derivative: `(dω)_K = Σ_{i∈K} (-1)^{#entries of K before i} ∂ω_{K∖i}/∂x^i`.
///
/// A top-degree form maps to the zero form of degree `n + 1`.
pub fn exterior_derivative(form: &PolyForm) -> PolyForm {
    let mut out = PolyForm::zero(form.n, form.p + 1);
    for (idx, c) in &form.coeffs {
        for axis in 1..=form.n {
            let Some((sign, k)) = idx.insert(axis) else {
                continue;
            };
            let partial = c.partial(axis);
            if partial.is_zero() {
                continue;
            }
            out.add_to(k, if sign < 0 { -&partial } else { partial });
        }
    }
    out
}

/// Pointwise exterior product.
pub fn wedge_form(a: &PolyForm, b: &PolyForm) -> Result<PolyForm> {
    check_dim(a.n, b.n)?;
    let mut out = PolyForm::zero(a.n, a.p + b.p);
    if a.p + b.p > a.n {
        return Ok(out);
    }
    for (ia, ca) in &a.coeffs {
        for (ib, cb) in &b.coeffs {
            if let Some((sign, k)) = ia.shuffle(ib) {
                let prod = ca * cb;
                out.add_to(k, if sign < 0 { -&prod } else { prod });
            }
        }
    }
    Ok(out)
}

/// The antisymmetric tensor `ω(x)` at a point.
pub fn eval_at(form: &PolyForm, point: &[Rational]) -> Result<AltTensor> {
    check_dim(form.n, point.len())?;
    AltTensor::from_components(
        form.n,
        form.p,
        form.coeffs.iter().map(|(k, c)| (k.clone(), c.eval(point))),
    )
}

/// `df(v)` at a point, paired with `d/dt f(point + t v)` at `t = 0` computed by
/// substitution along the line. The two values agree.
pub fn directional_derivative_check(
    f: &Polynomial,
    v: &[Rational],
    point: &[Rational],
) -> Result<(Rational, Rational)> {
    let n = f.n_vars();
    check_dim(n, v.len())?;
    check_dim(n, point.len())?;
    let df = exterior_derivative(&PolyForm::function(f.clone()));
    let via_form = evaluate(&eval_at(&df, point)?, &[v.to_vec()])?;
    let line: Vec<Vec<Rational>> = v.iter().map(|c| vec![c.clone()]).collect();
    let along = f.compose_affine(point, &line, 1);
    let via_line = along.coefficient(&[1]);
    Ok((via_form, via_line))
}

/// A vector field with polynomial components. Classical fields in `R^3` have
/// three components over three variables; spacetime fields carry three
/// spatial components over four variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVectorField {
    n_vars: usize,
    components: Vec<Polynomial>,
}

impl PolyVectorField {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let n_vars = components.first().map(Polynomial::n_vars).ok_or_else(|| invalid("empty vector field"))?;
        for c in &components {
            check_dim(n_vars, c.n_vars())?;
        }
        Ok(Self { n_vars, components })
    }

    pub fn zero(n_vars: usize, len: usize) -> Self {
        Self { n_vars, components: vec![Polynomial::zero(n_vars); len] }
    }

    /// Constant field.
    pub fn constant(n_vars: usize, values: &[Rational]) -> Self {
        Self { n_vars, components: values.iter().map(|c| Polynomial::constant(n_vars, c.clone())).collect() }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// Component `i`, 1-based.
    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i - 1]
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.len(), other.len())?;
        check_dim(self.n_vars, other.n_vars)?;
        Ok(Self {
            n_vars: self.n_vars,
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { n_vars: self.n_vars, components: self.components.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn dot(&self, other: &Self) -> Result<Polynomial> {
        check_dim(self.len(), other.len())?;
        check_dim(self.n_vars, other.n_vars)?;
        Ok(self
            .components
            .iter()
            .zip(&other.components)
            .fold(Polynomial::zero(self.n_vars), |acc, (a, b)| &acc + &(a * b)))
    }

    pub fn cross(&self, other: &Self) -> Result<Self> {
        self.require_three()?;
        other.require_three()?;
        check_dim(self.n_vars, other.n_vars)?;
        let (a, b) = (&self.components, &other.components);
        let comp = |i: usize, j: usize| &(&a[i] * &b[j]) - &(&a[j] * &b[i]);
        Ok(Self { n_vars: self.n_vars, components: vec![comp(1, 2), comp(2, 0), comp(0, 1)] })
    }

    /// Partial derivative of each component with respect to `x_axis`.
    pub fn partial(&self, axis: usize) -> Self {
        Self { n_vars: self.n_vars, components: self.components.iter().map(|p| p.partial(axis)).collect() }
    }

    fn require_three(&self) -> Result<()> {
        if self.len() != 3 {
            return Err(invalid(format!("expected a 3-component field, got {}", self.len())));
        }
        Ok(())
    }

    fn require_euclidean3(&self) -> Result<()> {
        self.require_three()?;
        check_dim(3, self.n_vars)
    }
}

/// Gradient over all variables.
pub fn grad(f: &Polynomial) -> PolyVectorField {
    PolyVectorField { n_vars: f.n_vars(), components: (1..=f.n_vars()).map(|i| f.partial(i)).collect() }
}

/// Curl of a three-component field taken in the given three coordinate axes.
pub fn curl_over(h: &PolyVectorField, axes: [usize; 3]) -> Result<PolyVectorField> {
    h.require_three()?;
    if axes.iter().any(|&a| a == 0 || a > h.n_vars) {
        return Err(invalid(format!("axes {axes:?} out of range for {} variables", h.n_vars)));
    }
    let c = &h.components;
    let d = |comp: usize, axis: usize| c[comp].partial(axes[axis]);
    Ok(PolyVectorField {
        n_vars: h.n_vars,
        components: vec![&d(2, 1) - &d(1, 2), &d(0, 2) - &d(2, 0), &d(1, 0) - &d(0, 1)],
    })
}

/// Divergence of a three-component field taken in the given three axes.
pub fn div_over(h: &PolyVectorField, axes: [usize; 3]) -> Result<Polynomial> {
    h.require_three()?;
    if axes.iter().any(|&a| a == 0 || a > h.n_vars) {
        return Err(invalid(format!("axes {axes:?} out of range for {} variables", h.n_vars)));
    }
    Ok(h.components
        .iter()
        .zip(axes)
        .fold(Polynomial::zero(h.n_vars), |acc, (c, a)| &acc + &c.partial(a)))
}

/// Curl in `R^3`.
pub fn curl(h: &PolyVectorField) -> Result<PolyVectorField> {
    h.require_euclidean3()?;
    curl_over(h, [1, 2, 3])
}

/// Divergence in `R^3`.
pub fn div(h: &PolyVectorField) -> Result<Polynomial> {
    h.require_euclidean3()?;
    div_over(h, [1, 2, 3])
}

/// `Σ h_i dx^i` in `R^3`.
pub fn vec_to_1form(h: &PolyVectorField) -> Result<PolyForm> {
    h.require_euclidean3()?;
    PolyForm::from_components(
        3,
        1,
        h.components.iter().enumerate().map(|(i, c)| (MultiIndex::from_sorted(vec![i + 1]), c.clone())),
    )
}

/// Flux form `h1 dx2∧dx3 − h2 dx1∧dx3 + h3 dx1∧dx2` in `R^3`.
pub fn vec_to_2form(h: &PolyVectorField) -> Result<PolyForm> {
    h.require_euclidean3()?;
    let c = &h.components;
    PolyForm::from_components(
        3,
        2,
        [
            (MultiIndex::from_sorted(vec![2, 3]), c[0].clone()),
            (MultiIndex::from_sorted(vec![1, 3]), -&c[1]),
            (MultiIndex::from_sorted(vec![1, 2]), c[2].clone()),
        ],
    )
}

/// `f dx1∧dx2∧dx3` in `R^3`.
pub fn scalar_to_3form(f: &Polynomial) -> Result<PolyForm> {
    check_dim(3, f.n_vars())?;
    PolyForm::from_components(3, 3, [(MultiIndex::from_sorted(vec![1, 2, 3]), f.clone())])
}

/// Read back the vector field from a flux 2-form in `R^3`.
pub fn flux_form_to_vec(form: &PolyForm) -> Result<PolyVectorField> {
    check_dim(3, form.n)?;
    check_degree(2, form.p)?;
    PolyVectorField::new(vec![
        form.coefficient_on(&[2, 3]),
        -&form.coefficient_on(&[1, 3]),
        form.coefficient_on(&[1, 2]),
    ])
}
