//! p-form electrodynamics as a special case of geometric stress theory, and
//! its classical reading in four-dimensional spacetime.
//!
//! With a potential `p`-form `α` and a stress of the form `σ(α) = g∧α` for an
//! `(n−p−1)`-form `g`, the field strength is `f = dα` and the current is
//! `J = dg`; both are closed because `d∘d = 0`.
//!
//! In four dimensions the chart is ordered `x1 = t, (x2, x3, x4) = space`
//! and the 2-forms pack classical fields as
//!
//! ```text
//! f12 = −E1   f13 = −E2   f14 = −E3   f34 = B1   f24 = −B2   f23 = B3
//! g12 = −H1   g13 = −H2   g14 = −H3   g34 = D1   g24 = −D2   g23 = D3
//! ```
//!
//! and the current 3-form is `J_jkl = Ĵ^i ε_ijkl` with `Ĵ = (ρ, J1, J2, J3)`
//! and `ε_1234 = +1`.

use crate::chains::{boundary, integrate, Chain};
use crate::error::{check_degree, check_dim, invalid, Result};
use crate::exterior_algebra::{alt_dimension, multi_indices, MultiIndex};
use crate::mechanics::{general_stress_dimension, levi_civita, StressField};
use crate::polyform::{
    curl_over, div_over, exterior_derivative, grad, wedge_form, PolyForm, PolyVectorField,
};
use crate::polynomial::Polynomial;
use crate::rational::{parity_sign, Rational};

/// Spatial axes of the four-dimensional chart.
pub const SPACE: [usize; 3] = [2, 3, 4];
/// The time axis.
pub const TIME: usize = 1;

/// `f = dα`.
pub fn faraday_from_potential(alpha: &PolyForm) -> PolyForm {
    exterior_derivative(alpha)
}

/// `J = dg`.
pub fn current_from_stress(g: &PolyForm) -> PolyForm {
    exterior_derivative(g)
}

/// The stress `σ(α) = g∧α` acting on `p`-forms, as an explicit table.
pub fn stress_from_form(g: &PolyForm, p: usize) -> Result<StressField> {
    let n = g.ambient();
    if p + 1 > n {
        return Err(invalid(format!("potential degree {p} leaves no room for a stress form in dimension {n}")));
    }
    check_degree(n - p - 1, g.degree())?;
    let mut sigma = StressField::zero(n, p)?;
    for input in multi_indices(n, p) {
        for (gi, c) in g.components() {
            if let Some((sign, out)) = gi.shuffle(&input) {
                sigma.add_entry(input.clone(), out, if sign < 0 { -c } else { c.clone() })?;
            }
        }
    }
    Ok(sigma)
}

/// Dimension counts for stresses acting on `p`-forms in dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StressDimensions {
    /// `dim(n−p−1)`: stresses of the form `g∧·`.
    pub restricted: u64,
    /// `dim(p) · n`: general linear maps into `(n−1)`-forms.
    pub general: u64,
}

pub fn stress_dimensions(n: usize, p: usize) -> Result<StressDimensions> {
    if p + 1 > n {
        return Err(invalid(format!("no stress form for p = {p} in dimension {n}")));
    }
    Ok(StressDimensions {
        restricted: alt_dimension(n as i64, (n - p - 1) as i64)?,
        general: general_stress_dimension(n, p),
    })
}

/// Potential, stress form and region for a p-form power balance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PFormScenario {
    pub alpha: PolyForm,
    pub g: PolyForm,
    pub region: Chain,
}

impl PFormScenario {
    pub fn new(alpha: PolyForm, g: PolyForm, region: Chain) -> Result<Self> {
        let n = alpha.ambient();
        check_dim(n, g.ambient())?;
        check_dim(n, region.ambient())?;
        check_degree(n, region.dim())?;
        if alpha.degree() + 1 > n {
            return Err(invalid(format!("potential degree {} too large for dimension {n}", alpha.degree())));
        }
        check_degree(n - alpha.degree() - 1, g.degree())?;
        Ok(Self { alpha, g, region })
    }

    pub fn dimension(&self) -> usize {
        self.alpha.ambient()
    }

    pub fn potential_degree(&self) -> usize {
        self.alpha.degree()
    }
}

/// `∫_∂R g∧α = ∫_R J∧α + (−1)^{n−p−1} ∫_R g∧f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PFormPower {
    pub boundary_term: Rational,
    pub j_term: Rational,
    pub gf_term: Rational,
    /// `∫_R d(g∧α)`
    pub volume_term: Rational,
    pub ok: bool,
}

pub fn power_pform(s: &PFormScenario) -> Result<PFormPower> {
    let n = s.dimension();
    let p = s.potential_degree();
    let flux = wedge_form(&s.g, &s.alpha)?;
    let boundary_term = integrate(&flux, &boundary(&s.region)?)?;
    let volume_term = integrate(&exterior_derivative(&flux), &s.region)?;
    let j_term = integrate(&wedge_form(&current_from_stress(&s.g), &s.alpha)?, &s.region)?;
    let gf_term = integrate(&wedge_form(&s.g, &faraday_from_potential(&s.alpha))?, &s.region)?;
    let ok = boundary_term == &j_term + &(parity_sign(n - p - 1) * &gf_term) && boundary_term == volume_term;
    Ok(PFormPower { boundary_term, j_term, gf_term, volume_term, ok })
}

/// Classical fields over the chart `(t, x, y, z) = (x1, x2, x3, x4)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classical4DFields {
    pub e: PolyVectorField,
    pub b: PolyVectorField,
    pub h: PolyVectorField,
    pub d: PolyVectorField,
    pub rho: Polynomial,
    pub j: PolyVectorField,
    pub phi: Polynomial,
    pub a: PolyVectorField,
}

impl Classical4DFields {
    pub fn zero() -> Self {
        let v = PolyVectorField::zero(4, 3);
        Self {
            e: v.clone(),
            b: v.clone(),
            h: v.clone(),
            d: v.clone(),
            rho: Polynomial::zero(4),
            j: v.clone(),
            phi: Polynomial::zero(4),
            a: v,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for v in [&self.e, &self.b, &self.h, &self.d, &self.j, &self.a] {
            check_dim(3, v.len())?;
            check_dim(4, v.n_vars())?;
        }
        check_dim(4, self.rho.n_vars())?;
        check_dim(4, self.phi.n_vars())
    }
}

fn check_spacetime_field(v: &PolyVectorField) -> Result<()> {
    check_dim(3, v.len())?;
    check_dim(4, v.n_vars())
}

/// Pack a (time-row, space-block) pair into a 2-form in the layout shared by
/// the Faraday and Maxwell matrices.
fn pack_two_form(time_row: &PolyVectorField, space: &PolyVectorField) -> Result<PolyForm> {
    check_spacetime_field(time_row)?;
    check_spacetime_field(space)?;
    let idx = |a: usize, b: usize| MultiIndex::new(vec![a, b]).expect("increasing");
    PolyForm::from_components(
        4,
        2,
        [
            (idx(1, 2), -time_row.component(1)),
            (idx(1, 3), -time_row.component(2)),
            (idx(1, 4), -time_row.component(3)),
            (idx(3, 4), space.component(1).clone()),
            (idx(2, 4), -space.component(2)),
            (idx(2, 3), space.component(3).clone()),
        ],
    )
}

fn unpack_two_form(f: &PolyForm) -> Result<(PolyVectorField, PolyVectorField)> {
    check_dim(4, f.ambient())?;
    check_degree(2, f.degree())?;
    let time_row = PolyVectorField::new(vec![
        -&f.coefficient_on(&[1, 2]),
        -&f.coefficient_on(&[1, 3]),
        -&f.coefficient_on(&[1, 4]),
    ])?;
    let space = PolyVectorField::new(vec![
        f.coefficient_on(&[3, 4]),
        -&f.coefficient_on(&[2, 4]),
        f.coefficient_on(&[2, 3]),
    ])?;
    Ok((time_row, space))
}

/// Faraday 2-form from `(E, B)`.
pub fn pack_faraday(e: &PolyVectorField, b: &PolyVectorField) -> Result<PolyForm> {
    pack_two_form(e, b)
}

/// `(E, B)` from a Faraday 2-form.
pub fn unpack_faraday(f: &PolyForm) -> Result<(PolyVectorField, PolyVectorField)> {
    unpack_two_form(f)
}

/// Maxwell 2-form from `(H, D)`.
pub fn pack_maxwell(h: &PolyVectorField, d: &PolyVectorField) -> Result<PolyForm> {
    pack_two_form(h, d)
}

/// `(H, D)` from a Maxwell 2-form.
pub fn unpack_maxwell(g: &PolyForm) -> Result<(PolyVectorField, PolyVectorField)> {
    unpack_two_form(g)
}

/// Current 3-form `J_jkl = Ĵ^i ε_ijkl` from `(ρ, J)`.
pub fn pack_current(rho: &Polynomial, j: &PolyVectorField) -> Result<PolyForm> {
    check_dim(4, rho.n_vars())?;
    check_spacetime_field(j)?;
    let hat = [rho, j.component(1), j.component(2), j.component(3)];
    let mut comps = Vec::new();
    for idx in multi_indices(4, 3) {
        let i = idx.complement(4).axes()[0];
        let mut axes = vec![i];
        axes.extend_from_slice(idx.axes());
        let c = match levi_civita(&axes) {
            1 => hat[i - 1].clone(),
            _ => -hat[i - 1],
        };
        comps.push((idx, c));
    }
    PolyForm::from_components(4, 3, comps)
}

/// `(ρ, J)` from a current 3-form, inverting the `ε` contraction.
pub fn unpack_current(form: &PolyForm) -> Result<(Polynomial, PolyVectorField)> {
    check_dim(4, form.ambient())?;
    check_degree(3, form.degree())?;
    let mut hat = Vec::with_capacity(4);
    for i in 1..=4 {
        let idx = MultiIndex::new(vec![i]).expect("single axis").complement(4);
        let mut axes = vec![i];
        axes.extend_from_slice(idx.axes());
        let c = form.coefficient(&idx);
        hat.push(if levi_civita(&axes) > 0 { c } else { -&c });
    }
    let rho = hat.remove(0);
    Ok((rho, PolyVectorField::new(hat)?))
}

/// One component of `df` or `dg − J`, labelled by the classical law it encodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub name: &'static str,
    /// Component of the 3-form this residual is read from.
    pub component: MultiIndex,
    /// Sign applied to that component so the residual reads in classical orientation.
    pub orientation: i8,
    pub polynomial: Polynomial,
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.polynomial.is_zero()
    }
}

/// Component residuals of `df = 0` and `dg = J`.
///
/// Under the packing conventions of this module the residuals are
///
/// | name | component | orientation | classical expression |
/// |---|---|---|---|
/// | `gauss_magnetic` | (2,3,4) of `df` | + | `∇·B` |
/// | `faraday_1` | (1,3,4) of `df` | + | `∂B1/∂t + (∇×E)_1` |
/// | `faraday_2` | (1,2,4) of `df` | − | `∂B2/∂t + (∇×E)_2` |
/// | `faraday_3` | (1,2,3) of `df` | + | `∂B3/∂t + (∇×E)_3` |
/// | `gauss_electric` | (2,3,4) of `dg − J` | + | `∇·D − ρ` |
/// | `ampere_1` | (1,3,4) of `dg − J` | + | `∂D1/∂t + (∇×H)_1 + J1` |
/// | `ampere_2` | (1,2,4) of `dg − J` | − | `∂D2/∂t + (∇×H)_2 + J2` |
/// | `ampere_3` | (1,2,3) of `dg − J` | + | `∂D3/∂t + (∇×H)_3 + J3` |
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxwellExpansion {
    pub df: PolyForm,
    pub dg_minus_j: PolyForm,
    pub residuals: Vec<Residual>,
}

impl MaxwellExpansion {
    pub fn residual(&self, name: &str) -> Option<&Residual> {
        self.residuals.iter().find(|r| r.name == name)
    }

    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(Residual::is_zero)
    }

    pub fn homogeneous_zero(&self) -> bool {
        self.df.is_zero()
    }
}

const LAW_COMPONENTS: [(usize, [usize; 3], i8); 4] =
    [(0, [2, 3, 4], 1), (1, [1, 3, 4], 1), (2, [1, 2, 4], -1), (3, [1, 2, 3], 1)];

pub fn maxwell_expand(f: &PolyForm, g: &PolyForm, current: &PolyForm) -> Result<MaxwellExpansion> {
    for form in [f, g, current] {
        check_dim(4, form.ambient())?;
    }
    check_degree(2, f.degree())?;
    check_degree(2, g.degree())?;
    check_degree(3, current.degree())?;
    let df = exterior_derivative(f);
    let dg_minus_j = exterior_derivative(g).sub(current)?;
    const HOMOGENEOUS: [&str; 4] = ["gauss_magnetic", "faraday_1", "faraday_2", "faraday_3"];
    const SOURCED: [&str; 4] = ["gauss_electric", "ampere_1", "ampere_2", "ampere_3"];
    let mut residuals = Vec::with_capacity(8);
    for (names, form) in [(HOMOGENEOUS, &df), (SOURCED, &dg_minus_j)] {
        for (slot, axes, orientation) in LAW_COMPONENTS {
            let component = MultiIndex::new(axes.to_vec()).expect("increasing");
            let c = form.coefficient(&component);
            let polynomial = if orientation < 0 { -&c } else { c };
            residuals.push(Residual { name: names[slot], component, orientation, polynomial });
        }
    }
    Ok(MaxwellExpansion { df, dg_minus_j, residuals })
}

/// Pack a field record and expand both halves of the Maxwell system.
pub fn expand_fields(fields: &Classical4DFields) -> Result<MaxwellExpansion> {
    fields.validate()?;
    maxwell_expand(
        &pack_faraday(&fields.e, &fields.b)?,
        &pack_maxwell(&fields.h, &fields.d)?,
        &pack_current(&fields.rho, &fields.j)?,
    )
}

/// The potential 1-form `φ dx1 + A1 dx2 + A2 dx3 + A3 dx4`.
pub fn potential_form(phi: &Polynomial, a: &PolyVectorField) -> Result<PolyForm> {
    check_dim(4, phi.n_vars())?;
    check_spacetime_field(a)?;
    let idx = |i: usize| MultiIndex::new(vec![i]).expect("single axis");
    PolyForm::from_components(
        4,
        1,
        [
            (idx(1), phi.clone()),
            (idx(2), a.component(1).clone()),
            (idx(3), a.component(2).clone()),
            (idx(4), a.component(3).clone()),
        ],
    )
}

/// Fields induced by a potential through `f = dα`, read back with the Faraday packing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialConsistency {
    pub alpha: PolyForm,
    pub faraday: PolyForm,
    pub e_induced: PolyVectorField,
    pub b_induced: PolyVectorField,
    pub curl_a: PolyVectorField,
    /// `B' = ∇×A`.
    pub b_matches_curl: bool,
    /// `E' = ∇φ − ∂A/∂t`, the relation the packing conventions induce.
    pub e_matches_grad_minus_dt: bool,
    /// `E' = −∇φ − ∂A/∂t`, the textbook relation, reported for comparison.
    pub e_matches_textbook: bool,
}

pub fn potential_consistency(fields: &Classical4DFields) -> Result<PotentialConsistency> {
    fields.validate()?;
    let alpha = potential_form(&fields.phi, &fields.a)?;
    let faraday = faraday_from_potential(&alpha);
    let (e_induced, b_induced) = unpack_faraday(&faraday)?;
    let curl_a = curl_over(&fields.a, SPACE)?;
    let grad_phi = spatial_gradient(&fields.phi);
    let dt_a = fields.a.partial(TIME);
    let minus_one = -Rational::from_integer(1.into());
    let induced = grad_phi.add(&dt_a.scale(&minus_one))?;
    let textbook = grad_phi.scale(&minus_one).add(&dt_a.scale(&minus_one))?;
    Ok(PotentialConsistency {
        b_matches_curl: b_induced == curl_a,
        e_matches_grad_minus_dt: e_induced == induced,
        e_matches_textbook: e_induced == textbook,
        alpha,
        faraday,
        e_induced,
        b_induced,
        curl_a,
    })
}

/// `(∂φ/∂x2, ∂φ/∂x3, ∂φ/∂x4)`.
pub fn spatial_gradient(phi: &Polynomial) -> PolyVectorField {
    let full = grad(phi);
    PolyVectorField::new(SPACE.iter().map(|&a| full.component(a).clone()).collect()).expect("three components")
}

/// Spatial divergence on the four-dimensional chart.
pub fn spatial_div(v: &PolyVectorField) -> Result<Polynomial> {
    div_over(v, SPACE)
}

/// Spatial curl on the four-dimensional chart.
pub fn spatial_curl(v: &PolyVectorField) -> Result<PolyVectorField> {
    curl_over(v, SPACE)
}

/// The p-form power balance for `n = 4, p = 1` with `g` built from `H` alone
/// and `α` from `A` alone, compared with `∫(∇×H)·A − ∫H·(∇×A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnetostaticCorrespondence {
    pub power: PFormPower,
    /// `∫_R (∇×H)·A`
    pub current_dot_potential: Rational,
    /// `∫_R H·(∇×A)`
    pub intensity_dot_flux: Rational,
    /// `J-term = ∫(∇×H)·A` and `gf-term = −∫H·B`.
    pub ok: bool,
}

pub fn magnetostatic_correspondence(
    h: &PolyVectorField,
    a: &PolyVectorField,
    region: &Chain,
) -> Result<MagnetostaticCorrespondence> {
    let zero = PolyVectorField::zero(4, 3);
    let g = pack_maxwell(h, &zero)?;
    let alpha = potential_form(&Polynomial::zero(4), a)?;
    let power = power_pform(&PFormScenario::new(alpha, g, region.clone())?)?;
    let vol = PolyForm::volume(4);
    let current_dot_potential = integrate(&vol.mul_function(&spatial_curl(h)?.dot(a)?)?, region)?;
    let intensity_dot_flux = integrate(&vol.mul_function(&h.dot(&spatial_curl(a)?)?)?, region)?;
    let ok = power.ok && power.j_term == current_dot_potential && power.gf_term == -intensity_dot_flux.clone();
    Ok(MagnetostaticCorrespondence { power, current_dot_potential, intensity_dot_flux, ok })
}
