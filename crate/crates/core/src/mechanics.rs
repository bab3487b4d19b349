//! Geometric force and stress theory.
//!
//! A stress field maps generalized-velocity `p`-forms pointwise and linearly
//! to power-flux `(n−1)`-forms; a body force maps them to `n`-forms. The
//! traction on a boundary patch is not a separate object: it is the
//! restriction (integral) of `σ(w)` over that patch. The classical
//! three-dimensional bridge assumes orthonormal coordinates on `R^3`.

use std::collections::BTreeMap;

use crate::chains::{boundary, integrate, Cell, Chain, Simplex};
use crate::error::{check_degree, check_dim, invalid, Result};
use crate::exterior_algebra::{alt_dimension, multi_indices, MultiIndex};
use crate::polyform::{
    curl, exterior_derivative, grad, scalar_to_3form, vec_to_2form, PolyForm, PolyVectorField,
};
use crate::polynomial::Polynomial;
use crate::rational::{frac, Rational};

/// Pointwise linear map from `p`-form values to `(n−1)`-form values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StressField {
    n: usize,
    p: usize,
    table: BTreeMap<(MultiIndex, MultiIndex), Polynomial>,
}

impl StressField {
    pub fn zero(n: usize, p: usize) -> Result<Self> {
        if n == 0 || p > n {
            return Err(invalid(format!("no stress with input degree {p} in dimension {n}")));
        }
        Ok(Self { n, p, table: BTreeMap::new() })
    }

    /// Build from `(input index, output index, coefficient)` entries.
    pub fn from_entries<I>(n: usize, p: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, MultiIndex, Polynomial)>,
    {
        let mut s = Self::zero(n, p)?;
        for (input, output, c) in entries {
            s.add_entry(input, output, c)?;
        }
        Ok(s)
    }

    /// The stress that maps each basis `(n−1)`-form to itself (input degree `n−1`).
    pub fn identity(n: usize) -> Result<Self> {
        let entries = multi_indices(n, n.saturating_sub(1)).into_iter().map(|i| (i.clone(), i, Polynomial::one(n)));
        Self::from_entries(n, n.saturating_sub(1), entries.collect::<Vec<_>>())
    }

    pub(crate) fn add_entry(&mut self, input: MultiIndex, output: MultiIndex, c: Polynomial) -> Result<()> {
        check_degree(self.p, input.degree())?;
        check_degree(self.n - 1, output.degree())?;
        if input.max_axis() > self.n || output.max_axis() > self.n {
            return Err(invalid(format!("stress entry ({input}, {output}) exceeds dimension {}", self.n)));
        }
        check_dim(self.n, c.n_vars())?;
        let key = (input, output);
        let sum = match self.table.get(&key) {
            Some(prev) => prev + &c,
            None => c,
        };
        if sum.is_zero() {
            self.table.remove(&key);
        } else {
            self.table.insert(key, sum);
        }
        Ok(())
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn input_degree(&self) -> usize {
        self.p
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &Polynomial)> {
        self.table.iter()
    }

    /// Dimension of the space of stress values at a point: `dim(p) · dim(n−1)`.
    pub fn value_space_dimension(&self) -> u64 {
        general_stress_dimension(self.n, self.p)
    }
}

/// `dim(p) · dim(n−1) = n!/(p!(n−p)!) · n`.
pub fn general_stress_dimension(n: usize, p: usize) -> u64 {
    let dp = alt_dimension(n as i64, p as i64).unwrap_or(0);
    let dn1 = alt_dimension(n as i64, n as i64 - 1).unwrap_or(0);
    dp * dn1
}

/// Power-flux form `σ(w)`.
pub fn stress_apply(sigma: &StressField, w: &PolyForm) -> Result<PolyForm> {
    check_dim(sigma.n, w.ambient())?;
    check_degree(sigma.p, w.degree())?;
    let mut out = PolyForm::zero(sigma.n, sigma.n - 1);
    for ((input, output), c) in &sigma.table {
        let wi = w.coefficient(input);
        if wi.is_zero() {
            continue;
        }
        out.add_to(output.clone(), c * &wi);
    }
    Ok(out)
}

/// Pointwise linear map from `p`-form values to `n`-forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BodyForceField {
    n: usize,
    p: usize,
    table: BTreeMap<MultiIndex, Polynomial>,
}

impl BodyForceField {
    pub fn zero(n: usize, p: usize) -> Self {
        Self { n, p, table: BTreeMap::new() }
    }

    /// Entries `(input index, coefficient of dx^1∧...∧dx^n)`.
    pub fn from_entries<I>(n: usize, p: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Polynomial)>,
    {
        let mut b = Self::zero(n, p);
        for (input, c) in entries {
            check_degree(p, input.degree())?;
            if input.max_axis() > n {
                return Err(invalid(format!("body-force input {input} exceeds dimension {n}")));
            }
            check_dim(n, c.n_vars())?;
            let sum = match b.table.get(&input) {
                Some(prev) => prev + &c,
                None => c,
            };
            if sum.is_zero() {
                b.table.remove(&input);
            } else {
                b.table.insert(input, sum);
            }
        }
        Ok(b)
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn input_degree(&self) -> usize {
        self.p
    }

    pub fn entries(&self) -> impl Iterator<Item = (&MultiIndex, &Polynomial)> {
        self.table.iter()
    }

    /// The top-degree form `b(w)`.
    pub fn apply(&self, w: &PolyForm) -> Result<PolyForm> {
        check_dim(self.n, w.ambient())?;
        check_degree(self.p, w.degree())?;
        let density = self
            .table
            .iter()
            .fold(Polynomial::zero(self.n), |acc, (input, c)| &acc + &(c * &w.coefficient(input)));
        PolyForm::volume(self.n).mul_function(&density)
    }
}

/// Power of `σ(w)` on one boundary patch of dimension `n−1`.
pub fn traction_restrict(sigma: &StressField, w: &PolyForm, cell: &Simplex) -> Result<Rational> {
    if cell.dim() + 1 != sigma.n {
        return Err(invalid(format!(
            "traction patch must have dimension {}, got {}",
            sigma.n - 1,
            cell.dim()
        )));
    }
    check_dim(sigma.n, cell.ambient())?;
    Cell::Simplex(cell.clone()).integrate(&stress_apply(sigma, w)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerBalance {
    /// `∫_R b(w)`
    pub body: Rational,
    /// `∫_∂R σ(w)`
    pub traction: Rational,
    /// `∫_R d(σ(w))`, equal to `traction` by Stokes' theorem.
    pub traction_volume: Rational,
    /// `body + traction`
    pub total: Rational,
    pub stokes_ok: bool,
}

/// Total power of body force and stress on a region of `n`-cells.
pub fn total_power(sigma: &StressField, body: &BodyForceField, w: &PolyForm, region: &Chain) -> Result<PowerBalance> {
    check_dim(sigma.n, body.n)?;
    check_degree(sigma.p, body.p)?;
    check_degree(sigma.n, region.dim())?;
    let flux = stress_apply(sigma, w)?;
    let body_power = integrate(&body.apply(w)?, region)?;
    let traction = integrate(&flux, &boundary(region)?)?;
    let traction_volume = integrate(&exterior_derivative(&flux), region)?;
    let stokes_ok = traction == traction_volume;
    Ok(PowerBalance {
        total: &body_power + &traction,
        body: body_power,
        traction,
        traction_volume,
        stokes_ok,
    })
}

/// Levi-Civita symbol on 1-based indices with `ε_{12...k} = +1`.
pub fn levi_civita(indices: &[usize]) -> i8 {
    match MultiIndex::canonicalize(indices) {
        Some((sign, idx)) if idx.axes().iter().copied().eq(1..=indices.len()) => sign,
        _ => 0,
    }
}

/// Classical Cauchy stress on `R^3` as a 3×3 matrix of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauchyStress3D {
    rows: Vec<Vec<Polynomial>>,
}

impl CauchyStress3D {
    pub fn new(rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        check_dim(3, rows.len())?;
        for r in &rows {
            check_dim(3, r.len())?;
            for c in r {
                check_dim(3, c.n_vars())?;
            }
        }
        Ok(Self { rows })
    }

    /// The antisymmetric stress `σ_jk = ε_jkp H_p` represented by an axial vector.
    pub fn from_axial(h: &PolyVectorField) -> Result<Self> {
        check_dim(3, h.len())?;
        check_dim(3, h.n_vars())?;
        let rows = (1..=3)
            .map(|j| {
                (1..=3)
                    .map(|k| {
                        (1..=3).fold(Polynomial::zero(3), |acc, p| match levi_civita(&[j, k, p]) {
                            0 => acc,
                            1 => &acc + h.component(p),
                            _ => &acc - h.component(p),
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(Self { rows })
    }

    /// Entry `σ_jk`, 1-based.
    pub fn entry(&self, j: usize, k: usize) -> &Polynomial {
        &self.rows[j - 1][k - 1]
    }

    pub fn transpose(&self) -> Self {
        Self { rows: (0..3).map(|j| (0..3).map(|k| self.rows[k][j].clone()).collect()).collect() }
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..3).all(|j| (0..3).all(|k| (&self.rows[j][k] + &self.rows[k][j]).is_zero()))
    }

    /// `σ(w)_j = Σ_k σ_jk w_k`.
    pub fn apply(&self, w: &PolyVectorField) -> Result<PolyVectorField> {
        check_dim(3, w.len())?;
        check_dim(3, w.n_vars())?;
        PolyVectorField::new(
            self.rows
                .iter()
                .map(|row| row.iter().zip(w.components()).fold(Polynomial::zero(3), |acc, (s, c)| &acc + &(s * c)))
                .collect(),
        )
    }
}

/// Axial vector `H_p = ½ ε_pjk σ_jk`; only the antisymmetric part contributes.
pub fn axial_vector(sigma: &CauchyStress3D) -> PolyVectorField {
    let half = frac(1, 2);
    let comps = (1..=3)
        .map(|p| {
            let mut acc = Polynomial::zero(3);
            for j in 1..=3 {
                for k in 1..=3 {
                    match levi_civita(&[p, j, k]) {
                        0 => {}
                        1 => acc = &acc + sigma.entry(j, k),
                        _ => acc = &acc - sigma.entry(j, k),
                    }
                }
            }
            acc.scale(&half)
        })
        .collect();
    PolyVectorField::new(comps).expect("three components")
}

/// Power density `Σ_ij σ_ij ∂w_i/∂x_j`.
pub fn power_density(sigma: &CauchyStress3D, w: &PolyVectorField) -> Result<Polynomial> {
    check_dim(3, w.len())?;
    check_dim(3, w.n_vars())?;
    let mut acc = Polynomial::zero(3);
    for i in 1..=3 {
        let gradient = grad(w.component(i));
        for j in 1..=3 {
            acc = &acc + &(sigma.entry(i, j) * gradient.component(j));
        }
    }
    Ok(acc)
}

/// The three terms of `∫_∂R (H×w)·n dA = ∫_R (∇×H)·w dV − ∫_R H·(∇×w) dV`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnetostaticPower {
    pub boundary_term: Rational,
    pub curl_h_term: Rational,
    pub h_curl_w_term: Rational,
    pub identity_ok: bool,
}

pub fn power_decomposition_magnetostatics(
    h: &PolyVectorField,
    w: &PolyVectorField,
    region: &Chain,
) -> Result<MagnetostaticPower> {
    check_dim(3, region.ambient())?;
    check_degree(3, region.dim())?;
    let boundary_term = integrate(&vec_to_2form(&h.cross(w)?)?, &boundary(region)?)?;
    let curl_h_term = integrate(&scalar_to_3form(&curl(h)?.dot(w)?)?, region)?;
    let h_curl_w_term = integrate(&scalar_to_3form(&h.dot(&curl(w)?)?)?, region)?;
    let identity_ok = boundary_term == &curl_h_term - &h_curl_w_term;
    Ok(MagnetostaticPower { boundary_term, curl_h_term, h_curl_w_term, identity_ok })
}

/// Current and flux density induced by a stress potential `H` and vector potential `A`:
/// `J = ∇×H`, `B = ∇×A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnetostaticFields {
    pub current: PolyVectorField,
    pub flux_density: PolyVectorField,
}

impl MagnetostaticFields {
    pub fn from_potentials(h: &PolyVectorField, a: &PolyVectorField) -> Result<Self> {
        Ok(Self { current: curl(h)?, flux_density: curl(a)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::BoxCell;
    use crate::electrodynamics::stress_from_form;
    use crate::exterior_algebra::evaluate;
    use crate::polyform::{div, eval_at, wedge_form};
    use crate::random::{small_rational, FormSampler};
    use crate::rational::{determinant, rat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn c(n: usize, v: i64) -> Polynomial {
        Polynomial::constant(n, rat(v))
    }

    fn pt(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&v| rat(v)).collect()
    }

    #[test]
    fn stress_apply_examples() {
        let w = PolyForm::term(x(2, 2), &[1]).unwrap();
        assert!(stress_apply(&StressField::zero(2, 1).unwrap(), &w).unwrap().is_zero());
        let id = StressField::identity(2).unwrap();
        assert_eq!(stress_apply(&id, &w).unwrap(), w);

        let g = PolyForm::basis(4, &[3, 4]).unwrap();
        let alpha = PolyForm::term(x(4, 1), &[2]).unwrap();
        let sigma = stress_from_form(&g, 1).unwrap();
        assert_eq!(stress_apply(&sigma, &alpha).unwrap(), wedge_form(&g, &alpha).unwrap());
        assert!(stress_apply(&sigma, &PolyForm::basis(4, &[1, 2]).unwrap()).is_err());
    }

    #[test]
    fn traction_examples() {
        let id = StressField::identity(2).unwrap();
        let dx1 = PolyForm::basis(2, &[1]).unwrap();
        let up = Simplex::new(vec![pt(&[0, 0]), pt(&[0, 1])]).unwrap();
        let right = Simplex::new(vec![pt(&[0, 0]), pt(&[1, 0])]).unwrap();
        assert_eq!(traction_restrict(&id, &dx1, &up).unwrap(), rat(0));
        assert_eq!(traction_restrict(&id, &dx1, &right).unwrap(), rat(1));
        assert_eq!(traction_restrict(&id, &PolyForm::zero(2, 1), &right).unwrap(), rat(0));

        let g = PolyForm::basis(3, &[3]).unwrap();
        let sigma = stress_from_form(&g, 1).unwrap();
        let w = PolyForm::term(x(3, 1), &[2]).unwrap();
        let face = Simplex::new(vec![pt(&[0, 0, 0]), pt(&[1, 0, 0]), pt(&[0, 1, 0])]).unwrap();
        assert_eq!(traction_restrict(&sigma, &w, &face).unwrap(), rat(0));
        assert!(traction_restrict(&sigma, &w, &right).is_err());
    }

    #[test]
    fn total_power_examples() {
        let cube = Chain::unit_cube(3);
        let w = PolyForm::term(&x(3, 1) * &x(3, 3), &[2]).unwrap();
        let zero = total_power(&StressField::zero(3, 1).unwrap(), &BodyForceField::zero(3, 1), &w, &cube).unwrap();
        assert_eq!(zero.total, rat(0));

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sampler = FormSampler::default();
        let mut sigma = StressField::zero(3, 1).unwrap();
        for input in multi_indices(3, 1) {
            for output in multi_indices(3, 2) {
                sigma.add_entry(input.clone(), output, sampler.polynomial(&mut rng, 3)).unwrap();
            }
        }
        let body = BodyForceField::from_entries(3, 1, [(MultiIndex::new(vec![2]).unwrap(), x(3, 1))]).unwrap();
        let bal = total_power(&sigma, &body, &w, &cube).unwrap();
        assert!(bal.stokes_ok);
        assert_eq!(bal.total, &bal.body + &bal.traction);
        // ∫ x1 * x1 x3 over the cube
        assert_eq!(bal.body, frac(1, 6));
        assert_eq!(sigma.value_space_dimension(), 9);
    }

    #[test]
    fn axial_examples() {
        let z = || c(3, 0);
        let mut rows = vec![vec![z(), z(), z()], vec![z(), z(), c(3, 5)], vec![z(), c(3, -5), z()]];
        let s = CauchyStress3D::new(rows.clone()).unwrap();
        assert_eq!(axial_vector(&s), PolyVectorField::constant(3, &pt(&[5, 0, 0])));
        rows = vec![vec![z(), c(3, 1), z()], vec![c(3, -1), z(), z()], vec![z(), z(), z()]];
        let s = CauchyStress3D::new(rows).unwrap();
        assert_eq!(axial_vector(&s), PolyVectorField::constant(3, &pt(&[0, 0, 1])));
        let sym = CauchyStress3D::new(vec![
            vec![x(3, 1), c(3, 2), x(3, 3)],
            vec![c(3, 2), z(), x(3, 2)],
            vec![x(3, 3), x(3, 2), c(3, 7)],
        ])
        .unwrap();
        assert!(axial_vector(&sym).is_zero());
    }

    #[test]
    fn axial_round_trip_and_cross_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let sampler = FormSampler::default();
        for _ in 0..10 {
            let h = sampler.vector_field(&mut rng, 3, 3);
            let w = sampler.vector_field(&mut rng, 3, 3);
            let sigma = CauchyStress3D::from_axial(&h).unwrap();
            assert!(sigma.is_antisymmetric());
            assert_eq!(axial_vector(&sigma), h);
            assert_eq!(CauchyStress3D::from_axial(&axial_vector(&sigma)).unwrap(), sigma);
            // σᵀ(w) = −σ(w) = H×w
            let hw = h.cross(&w).unwrap();
            assert_eq!(sigma.transpose().apply(&w).unwrap(), hw);
            assert_eq!(sigma.apply(&w).unwrap().scale(&rat(-1)), hw);
        }
    }

    #[test]
    fn flux_form_matches_triple_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let hv: Vec<Rational> = (0..3).map(|_| small_rational(&mut rng)).collect();
            let wv: Vec<Rational> = (0..3).map(|_| small_rational(&mut rng)).collect();
            let v1: Vec<Rational> = (0..3).map(|_| small_rational(&mut rng)).collect();
            let v2: Vec<Rational> = (0..3).map(|_| small_rational(&mut rng)).collect();
            let h = PolyVectorField::constant(3, &hv);
            let w = PolyVectorField::constant(3, &wv);
            let hw = h.cross(&w).unwrap();
            let form = vec_to_2form(&hw).unwrap();
            let at = eval_at(&form, &pt(&[0, 0, 0])).unwrap();
            let lhs = evaluate(&at, &[v1.clone(), v2.clone()]).unwrap();
            let col: Vec<Rational> = hw.components().iter().map(|p| p.eval(&pt(&[0, 0, 0]))).collect();
            let rows: Vec<Vec<Rational>> = (0..3).map(|i| vec![col[i].clone(), v1[i].clone(), v2[i].clone()]).collect();
            assert_eq!(lhs, determinant(&rows));
        }
    }

    #[test]
    fn magnetostatic_examples() {
        let cube = Chain::unit_cube(3);
        let h = PolyVectorField::constant(3, &pt(&[1, -2, 3]));
        let w = PolyVectorField::constant(3, &pt(&[4, 0, 1]));
        let m = power_decomposition_magnetostatics(&h, &w, &cube).unwrap();
        assert_eq!((m.boundary_term.clone(), m.curl_h_term.clone(), m.h_curl_w_term.clone()), (rat(0), rat(0), rat(0)));
        assert!(m.identity_ok);

        let h = PolyVectorField::new(vec![c(3, 0), c(3, 0), x(3, 1)]).unwrap();
        let w = PolyVectorField::new(vec![c(3, 0), x(3, 1), c(3, 0)]).unwrap();
        let m = power_decomposition_magnetostatics(&h, &w, &cube).unwrap();
        // ∇×H = (0, −1, 0), (∇×H)·w = −x1 → −1/2; ∇×w = (0,0,1), H·(∇×w) = x1 → 1/2
        assert_eq!(m.curl_h_term, frac(-1, 2));
        assert_eq!(m.h_curl_w_term, frac(1, 2));
        assert_eq!(m.boundary_term, rat(-1));
        assert!(m.identity_ok);

        let tet = Chain::from_cell(BoxCell::new(pt(&[0, 0, 0]), vec![pt(&[1, 0, 0]), pt(&[0, 2, 0])]).unwrap());
        assert!(power_decomposition_magnetostatics(&h, &w, &tet).is_err());
    }

    #[test]
    fn spin_part_and_conservation() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let sampler = FormSampler::default();
        for _ in 0..10 {
            let h = sampler.vector_field(&mut rng, 3, 3);
            let sigma = CauchyStress3D::from_axial(&h).unwrap();
            let f = sampler.polynomial(&mut rng, 3);
            assert!(power_density(&sigma, &grad(&f)).unwrap().is_zero());
            let a = sampler.vector_field(&mut rng, 3, 3);
            let fields = MagnetostaticFields::from_potentials(&h, &a).unwrap();
            assert!(div(&fields.current).unwrap().is_zero());
            assert!(div(&fields.flux_density).unwrap().is_zero());
        }
    }

    #[test]
    fn levi_civita_convention() {
        assert_eq!(levi_civita(&[1, 2, 3]), 1);
        assert_eq!(levi_civita(&[2, 1, 3]), -1);
        assert_eq!(levi_civita(&[3, 1, 2]), 1);
        assert_eq!(levi_civita(&[1, 1, 3]), 0);
        assert_eq!(levi_civita(&[1, 2, 3, 4]), 1);
        assert_eq!(levi_civita(&[4, 1, 2, 3]), -1);
    }
}
