//! Execution of parsed scenarios into reports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::payload::{
    ClassicalPayload, FormOpPayload, Magnetostatic4D, MechanicsPayload, PFormPayload, Payload, RandomSweep,
    StokesPayload,
};
use super::report::Check;
use crate::chains::{boundary, flux, integrate, stokes_check, Chain};
use crate::electrodynamics::{
    current_from_stress, expand_fields, faraday_from_potential, magnetostatic_correspondence, maxwell_expand,
    pack_current, pack_faraday, pack_maxwell, potential_consistency, potential_form, power_pform, spatial_curl,
    spatial_div, stress_dimensions, stress_from_form, unpack_current, unpack_faraday, unpack_maxwell,
    Classical4DFields, PFormScenario,
};
use crate::exterior_algebra::{alt_dimension, alternate, evaluate, multi_indices, wedge, AltTensor};
use crate::mechanics::{
    axial_vector, power_decomposition_magnetostatics, power_density, stress_apply, total_power, traction_restrict,
    CauchyStress3D, MagnetostaticFields,
};
use crate::polyform::{
    curl, div, eval_at, exterior_derivative, flux_form_to_vec, grad, scalar_to_3form, vec_to_1form, vec_to_2form,
    wedge_form, PolyForm, PolyVectorField,
};
use crate::polynomial::Polynomial;
use crate::random::{self as sample, small_rational, FormSampler};
use crate::rational::{format_rational, frac, parity_sign, Rational};
use crate::Result;

pub(crate) fn run_payload(payload: &Payload, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match payload {
        Payload::FormOp(p) => form_op(p, &mut rng),
        Payload::Stokes(p) => stokes(p, &mut rng),
        Payload::Mechanics(p) => mechanics(p, &mut rng),
        Payload::PFormEm(p) => pform_em(p, &mut rng),
        Payload::ClassicalEm(p) => classical_em(p, &mut rng),
    }
}

/// Run a fallible check body, recording module errors as a failed check.
fn guard(name: &str, body: impl FnOnce() -> Result<Check>) -> Check {
    body().unwrap_or_else(|e| Check::failed(name, e))
}

fn tensor_str(t: &AltTensor) -> String {
    let parts: Vec<String> = t.components().map(|(k, c)| format!("{}{k}", format_rational(c))).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn form_residuals(form: &PolyForm) -> Vec<(String, &Polynomial)> {
    form.components().map(|(k, c)| (k.to_string(), c)).collect()
}

/// Aggregate a sweep into one check; the first failing case is reported.
fn sweep(name: &str, cases: usize, mut case: impl FnMut(usize) -> Result<Option<String>>) -> Check {
    for i in 0..cases {
        match case(i) {
            Ok(None) => {}
            Ok(Some(why)) => return Check::new(name, false).with_detail(format!("case {i}: {why}")),
            Err(e) => return Check::failed(name, format!("case {i}: {e}")),
        }
    }
    Check::new(name, true).with_detail(format!("{cases} cases"))
}

fn sampler(max_degree: u32) -> FormSampler {
    FormSampler { max_degree, max_terms: 3 }
}

fn leibniz(omega: &PolyForm, eta: &PolyForm) -> Result<(PolyForm, PolyForm)> {
    let lhs = exterior_derivative(&wedge_form(omega, eta)?);
    let first = wedge_form(&exterior_derivative(omega), eta)?;
    let second = wedge_form(omega, &exterior_derivative(eta))?.scale(&parity_sign(omega.degree()));
    Ok((lhs, first.add(&second)?))
}

// ---------------------------------------------------------------- form-op

fn form_op(p: &FormOpPayload, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut checks = Vec::new();

    for d in &p.dimensions {
        let name = format!("dimension({},{})", d.n, d.r);
        checks.push(guard(&name, || {
            let formula = alt_dimension(d.n, d.r)?;
            let enumerated = multi_indices(d.n as usize, d.r as usize).len() as u64;
            let target = d.expect.unwrap_or(enumerated);
            Ok(Check::new(&name, formula == enumerated && formula == target)
                .with_sides(formula.to_string(), target.to_string())
                .with_detail(format!("enumerated {enumerated}")))
        }));
    }

    for (i, a) in p.alternate.iter().enumerate() {
        let alt = alternate(&a.tensor);
        let again = alternate(&alt.embed());
        checks.push(Check::new(format!("alternate[{i}].idempotent"), again == alt).with_sides(tensor_str(&again), tensor_str(&alt)));
        if let Some(e) = &a.expect {
            checks.push(Check::new(format!("alternate[{i}]"), &alt == e).with_sides(tensor_str(&alt), tensor_str(e)));
        }
    }

    for (i, e) in p.evaluate.iter().enumerate() {
        let name = format!("evaluate[{i}]");
        checks.push(guard(&name, || {
            let value = evaluate(&e.tensor, &e.vectors)?;
            let dense = e.tensor.embed().evaluate(&e.vectors)?;
            Ok(match &e.expect {
                Some(x) => {
                    let c = Check::equal(&name, &value, x);
                    let pass = c.pass && value == dense;
                    Check { pass, ..c }.with_detail(format!("dense evaluation {}", format_rational(&dense)))
                }
                None => Check::equal(&name, &value, &dense),
            })
        }));
    }

    for (i, w) in p.wedge.iter().enumerate() {
        let name = format!("wedge[{i}]");
        checks.push(guard(&format!("{name}.graded_commutative"), || {
            let ab = wedge(&w.a, &w.b)?;
            let ba = wedge(&w.b, &w.a)?.scale(&parity_sign(w.a.degree() * w.b.degree()));
            Ok(Check::new(format!("{name}.graded_commutative"), ab == ba).with_sides(tensor_str(&ab), tensor_str(&ba)))
        }));
        if let Some(e) = &w.expect {
            checks.push(guard(&name, || {
                let ab = wedge(&w.a, &w.b)?;
                Ok(Check::new(&name, &ab == e).with_sides(tensor_str(&ab), tensor_str(e)))
            }));
        }
    }

    for (i, f) in p.forms.iter().enumerate() {
        let name = format!("forms[{i}]");
        let d = exterior_derivative(&f.omega);
        checks.push(Check::zero_residuals(format!("{name}.d_squared"), form_residuals(&exterior_derivative(&d))));
        if let Some(e) = &f.expect_d {
            checks.push(Check::same(format!("{name}.d"), &d, e));
        }
        if let Some(eta) = &f.eta {
            checks.push(guard(&format!("{name}.leibniz"), || {
                let (lhs, rhs) = leibniz(&f.omega, eta)?;
                Ok(Check::same(format!("{name}.leibniz"), &lhs, &rhs))
            }));
            if let Some(e) = &f.expect_wedge {
                checks.push(guard(&format!("{name}.wedge"), || {
                    Ok(Check::same(format!("{name}.wedge"), &wedge_form(&f.omega, eta)?, e))
                }));
            }
            if let Some(x) = &f.point {
                checks.push(guard(&format!("{name}.eval_at"), || {
                    let lhs = eval_at(&wedge_form(&f.omega, eta)?, x)?;
                    let rhs = wedge(&eval_at(&f.omega, x)?, &eval_at(eta, x)?)?;
                    Ok(Check::new(format!("{name}.eval_at"), lhs == rhs).with_sides(tensor_str(&lhs), tensor_str(&rhs)))
                }));
            }
        } else if let Some(x) = &f.point {
            checks.push(guard(&format!("{name}.eval_at"), || {
                let at = eval_at(&f.omega, x)?;
                let direct = f.omega.components().all(|(k, c)| at.coefficient(k) == c.eval(x));
                Ok(Check::new(format!("{name}.eval_at"), direct).with_detail(tensor_str(&at)))
            }));
        }
    }

    for (i, d) in p.directional.iter().enumerate() {
        let name = format!("directional[{i}]");
        checks.push(guard(&name, || {
            let (via_form, via_line) = crate::polyform::directional_derivative_check(&d.f, &d.v, &d.point)?;
            let mut c = Check::equal(&name, &via_form, &via_line);
            if let Some(x) = &d.expect {
                c.pass &= &via_form == x;
                c = c.with_detail(format!("expected {}", format_rational(x)));
            }
            Ok(c)
        }));
    }

    for (i, b) in p.vector_bridge.iter().enumerate() {
        checks.extend(bridge(&format!("bridge[{i}]"), &b.field, b.scalar.as_ref()));
    }

    if let Some(r) = p.random {
        checks.extend(random_forms(&r, rng));
    }
    checks
}

fn bridge(name: &str, h: &PolyVectorField, f: Option<&Polynomial>) -> Vec<Check> {
    let mut out = vec![
        guard(&format!("{name}.curl"), || {
            Ok(Check::same(format!("{name}.curl"), &exterior_derivative(&vec_to_1form(h)?), &vec_to_2form(&curl(h)?)?))
        }),
        guard(&format!("{name}.div"), || {
            Ok(Check::same(format!("{name}.div"), &exterior_derivative(&vec_to_2form(h)?), &scalar_to_3form(&div(h)?)?))
        }),
        guard(&format!("{name}.div_curl"), || {
            let r = div(&curl(h)?)?;
            Ok(Check::zero_residuals(format!("{name}.div_curl"), [("div curl".to_string(), &r)]))
        }),
        guard(&format!("{name}.flux_round_trip"), || {
            let back = flux_form_to_vec(&vec_to_2form(h)?)?;
            Ok(Check::new(format!("{name}.flux_round_trip"), &back == h))
        }),
    ];
    if let Some(f) = f {
        out.push(guard(&format!("{name}.grad"), || {
            Ok(Check::same(
                format!("{name}.grad"),
                &exterior_derivative(&PolyForm::function(f.clone())),
                &vec_to_1form(&grad(f))?,
            ))
        }));
        out.push(guard(&format!("{name}.curl_grad"), || {
            let r = curl(&grad(f))?;
            Ok(Check::zero_residuals(
                format!("{name}.curl_grad"),
                r.components().iter().enumerate().map(|(i, c)| (format!("component {}", i + 1), c)),
            ))
        }));
    }
    out
}

fn random_dim(rng: &mut ChaCha8Rng, r: &RandomSweep) -> usize {
    rng.gen_range(r.min_n..=r.max_n)
}

fn random_forms(r: &RandomSweep, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let s = sampler(r.max_poly_degree);
    let d2 = sweep("random.d_squared", r.cases, |_| {
        let n = random_dim(rng, r);
        let p = rng.gen_range(0..=n);
        let dd = exterior_derivative(&exterior_derivative(&s.form(rng, n, p)));
        Ok((!dd.is_zero()).then(|| format!("d(dω) = {dd}")))
    });
    let lb = sweep("random.leibniz", r.cases, |_| {
        let n = random_dim(rng, r);
        let p = rng.gen_range(0..=n);
        let q = rng.gen_range(0..=n - p);
        let (omega, eta) = (s.form(rng, n, p), s.form(rng, n, q));
        let (lhs, rhs) = leibniz(&omega, &eta)?;
        Ok((lhs != rhs).then(|| format!("ω = {omega}, η = {eta}")))
    });
    let ev = sweep("random.eval_wedge", r.cases, |_| {
        let n = random_dim(rng, r);
        let p = rng.gen_range(0..=n);
        let q = rng.gen_range(0..=n - p);
        let (omega, eta) = (s.form(rng, n, p), s.form(rng, n, q));
        let x: Vec<Rational> = (0..n).map(|_| small_rational(rng)).collect();
        let lhs = eval_at(&wedge_form(&omega, &eta)?, &x)?;
        let rhs = wedge(&eval_at(&omega, &x)?, &eval_at(&eta, &x)?)?;
        Ok((lhs != rhs).then(|| format!("ω = {omega}, η = {eta}")))
    });
    vec![d2, lb, ev]
}

// ---------------------------------------------------------------- stokes

fn stokes(p: &StokesPayload, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut checks = Vec::new();
    for (i, c) in p.checks.iter().enumerate() {
        let name = format!("stokes[{i}]");
        checks.push(guard(&name, || {
            let s = stokes_check(&c.form, &c.chain)?;
            let mut check = Check::equal(&name, &s.lhs, &s.rhs);
            if let Some(x) = &c.expect {
                check.pass &= &s.lhs == x;
                check = check.with_detail(format!("expected {}", format_rational(x)));
            }
            Ok(check)
        }));
    }
    for (i, c) in p.integrals.iter().enumerate() {
        let name = format!("integral[{i}]");
        checks.push(guard(&name, || Ok(Check::equal(&name, &integrate(&c.form, &c.chain)?, &c.expect))));
    }
    for (i, c) in p.boundary.iter().enumerate() {
        let name = format!("boundary[{i}].squared");
        checks.push(guard(&name, || {
            let b = boundary(c)?;
            let bb = boundary(&b)?;
            Ok(Check::new(&name, bb.is_empty()).with_detail(format!(
                "∂ has {} cells, ∂∂ has {} cells",
                b.terms().len(),
                bb.terms().len()
            )))
        }));
    }
    for (i, f) in p.flux.iter().enumerate() {
        let name = format!("flux[{i}]");
        checks.push(guard(&name, || {
            let value = flux(&f.field, &f.surface)?;
            Ok(match &f.expect {
                Some(x) => Check::equal(&name, &value, x),
                None => Check::equal(&name, &value, &integrate(&vec_to_2form(&f.field)?, &f.surface)?),
            })
        }));
    }
    if let Some(r) = p.random {
        let s = sampler(r.max_poly_degree);
        checks.push(sweep("random.stokes", r.cases, |_| {
            let n = random_dim(rng, &r);
            let k = rng.gen_range(1..=n);
            let omega = s.form(rng, n, k - 1);
            let mut chain = Chain::empty(n, k);
            for _ in 0..rng.gen_range(1..=2) {
                chain.push(small_rational(rng), sample::cell(rng, n, k))?;
            }
            let st = stokes_check(&omega, &chain)?;
            Ok((!st.equal).then(|| {
                format!("lhs {} ≠ rhs {} for ω = {omega}", format_rational(&st.lhs), format_rational(&st.rhs))
            }))
        }));
        checks.push(sweep("random.boundary_squared", r.cases, |_| {
            let n = random_dim(rng, &r).max(2);
            let k = rng.gen_range(2..=n);
            let chain = Chain::from_cell(sample::cell(rng, n, k));
            let bb = boundary(&boundary(&chain)?)?;
            Ok((!bb.is_empty()).then(|| format!("∂∂ has {} cells", bb.terms().len())))
        }));
    }
    checks
}

// ---------------------------------------------------------------- mechanics

fn antisymmetric_part(sigma: &CauchyStress3D) -> Result<CauchyStress3D> {
    let half = frac(1, 2);
    CauchyStress3D::new(
        (1..=3)
            .map(|j| (1..=3).map(|k| (sigma.entry(j, k) - sigma.entry(k, j)).scale(&half)).collect())
            .collect(),
    )
}

fn symmetric_part(sigma: &CauchyStress3D) -> Result<CauchyStress3D> {
    let half = frac(1, 2);
    CauchyStress3D::new(
        (1..=3)
            .map(|j| (1..=3).map(|k| (sigma.entry(j, k) + sigma.entry(k, j)).scale(&half)).collect())
            .collect(),
    )
}

fn cauchy_checks(name: &str, sigma: &CauchyStress3D, f: Option<&Polynomial>) -> Vec<Check> {
    let mut out = vec![guard(&format!("{name}.axial_round_trip"), || {
        let h = axial_vector(sigma);
        let rebuilt = CauchyStress3D::from_axial(&h)?;
        Ok(Check::new(format!("{name}.axial_round_trip"), rebuilt == antisymmetric_part(sigma)?))
    })];
    if let Some(f) = f {
        let w = grad(f);
        out.push(guard(&format!("{name}.spin_part"), || {
            let anti = power_density(&antisymmetric_part(sigma)?, &w)?;
            Ok(Check::zero_residuals(format!("{name}.spin_part"), [("antisymmetric power density".to_string(), &anti)]))
        }));
        out.push(guard(&format!("{name}.symmetric_power"), || {
            let full = power_density(sigma, &w)?;
            let sym = power_density(&symmetric_part(sigma)?, &w)?;
            Ok(Check::same(format!("{name}.symmetric_power"), &full, &sym))
        }));
        out.push(guard(&format!("{name}.axial_action"), || {
            let anti = antisymmetric_part(sigma)?;
            let h = axial_vector(sigma);
            Ok(Check::new(format!("{name}.axial_action"), anti.apply(&w)? == w.cross(&h)?))
        }));
    }
    out
}

fn magnetostatic_checks(name: &str, h: &PolyVectorField, w: &PolyVectorField, region: &Chain) -> Vec<Check> {
    vec![
        guard(&format!("{name}.identity"), || {
            let m = power_decomposition_magnetostatics(h, w, region)?;
            let rhs = &m.curl_h_term - &m.h_curl_w_term;
            Ok(Check::equal(format!("{name}.identity"), &m.boundary_term, &rhs).with_detail(format!(
                "∫(∇×H)·w = {}, ∫H·(∇×w) = {}",
                format_rational(&m.curl_h_term),
                format_rational(&m.h_curl_w_term)
            )))
        }),
        guard(&format!("{name}.conservation"), || {
            let fields = MagnetostaticFields::from_potentials(h, w)?;
            let (dj, db) = (div(&fields.current)?, div(&fields.flux_density)?);
            Ok(Check::zero_residuals(
                format!("{name}.conservation"),
                [("div J".to_string(), &dj), ("div B".to_string(), &db)],
            ))
        }),
    ]
}

fn mechanics(p: &MechanicsPayload, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut checks = Vec::new();
    for (i, c) in p.power.iter().enumerate() {
        let name = format!("power[{i}]");
        checks.push(guard(&format!("{name}.stokes"), || {
            let b = total_power(&c.stress, &c.body_force, &c.velocity, &c.region)?;
            Ok(Check::equal(format!("{name}.stokes"), &b.traction, &b.traction_volume).with_detail(format!(
                "body {}, traction {}, total {}",
                format_rational(&b.body),
                format_rational(&b.traction),
                format_rational(&b.total)
            )))
        }));
        if let Some(x) = &c.expect_total {
            checks.push(guard(&format!("{name}.total"), || {
                let b = total_power(&c.stress, &c.body_force, &c.velocity, &c.region)?;
                Ok(Check::equal(format!("{name}.total"), &b.total, x))
            }));
        }
        for (j, t) in c.tractions.iter().enumerate() {
            let tname = format!("{name}.traction[{j}]");
            checks.push(guard(&tname, || {
                let value = traction_restrict(&c.stress, &c.velocity, &t.simplex)?;
                Ok(match &t.expect {
                    Some(x) => Check::equal(&tname, &value, x),
                    None => {
                        let chain = Chain::from_cell(t.simplex.clone());
                        let direct = integrate(&stress_apply(&c.stress, &c.velocity)?, &chain)?;
                        Check::equal(&tname, &value, &direct)
                    }
                })
            }));
        }
    }
    for (i, c) in p.cauchy.iter().enumerate() {
        checks.extend(cauchy_checks(&format!("cauchy[{i}]"), &c.sigma, c.gradient_of.as_ref()));
    }
    for (i, m) in p.magnetostatics.iter().enumerate() {
        checks.extend(magnetostatic_checks(&format!("magnetostatics[{i}]"), &m.h, &m.w, &m.region));
    }
    if let Some(r) = p.random {
        let s = sampler(r.max_poly_degree);
        let cube = Chain::unit_cube(3);
        checks.push(sweep("random.magnetostatics", r.cases, |_| {
            let (h, w) = (s.vector_field(rng, 3, 3), s.vector_field(rng, 3, 3));
            let m = power_decomposition_magnetostatics(&h, &w, &cube)?;
            let fields = MagnetostaticFields::from_potentials(&h, &w)?;
            let ok = m.identity_ok && div(&fields.current)?.is_zero() && div(&fields.flux_density)?.is_zero();
            Ok((!ok).then(|| format!("H = {:?}", h.components().iter().map(ToString::to_string).collect::<Vec<_>>())))
        }));
        checks.push(sweep("random.spin_part", r.cases, |_| {
            let sigma = CauchyStress3D::from_axial(&s.vector_field(rng, 3, 3))?;
            let f = s.polynomial(rng, 3);
            let density = power_density(&sigma, &grad(&f))?;
            Ok((!density.is_zero()).then(|| format!("density {density}")))
        }));
        checks.push(sweep("random.axial_round_trip", r.cases, |_| {
            let rows = (0..3).map(|_| (0..3).map(|_| s.polynomial(rng, 3)).collect()).collect();
            let sigma = CauchyStress3D::new(rows)?;
            let ok = CauchyStress3D::from_axial(&axial_vector(&sigma))? == antisymmetric_part(&sigma)?;
            Ok((!ok).then(|| "axial vector does not rebuild the antisymmetric part".to_string()))
        }));
    }
    checks
}

// ---------------------------------------------------------------- pform-em

struct PFormOutcome {
    df: PolyForm,
    dj: PolyForm,
    power: crate::electrodynamics::PFormPower,
    stress_matches_wedge: bool,
}

fn pform_case(alpha: &PolyForm, g: &PolyForm, region: &Chain) -> Result<PFormOutcome> {
    let scenario = PFormScenario::new(alpha.clone(), g.clone(), region.clone())?;
    let f = faraday_from_potential(alpha);
    let j = current_from_stress(g);
    let power = power_pform(&scenario)?;
    let sigma = stress_from_form(g, alpha.degree())?;
    let stress_matches_wedge = stress_apply(&sigma, alpha)? == wedge_form(g, alpha)?;
    Ok(PFormOutcome { df: exterior_derivative(&f), dj: exterior_derivative(&j), power, stress_matches_wedge })
}

fn pform_em(p: &PFormPayload, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut checks = vec![guard("stress_dimensions", || {
        let d = stress_dimensions(p.n, p.p)?;
        Ok(Check::new("stress_dimensions", d.restricted <= d.general)
            .with_sides(d.restricted.to_string(), d.general.to_string())
            .with_detail("stresses g∧· against all linear maps into (n−1)-forms"))
    })];
    let sign = parity_sign(p.n - p.p - 1);
    if let Some((alpha, g)) = &p.explicit {
        match pform_case(alpha, g, &p.region) {
            Ok(o) => {
                checks.push(Check::zero_residuals("df=0", form_residuals(&o.df)));
                checks.push(Check::zero_residuals("dJ=0", form_residuals(&o.dj)));
                let rhs = &o.power.j_term + &(&sign * &o.power.gf_term);
                let mut c = Check::equal("power-10", &o.power.boundary_term, &rhs).with_detail(format!(
                    "J term {}, g∧f term {}, ∫d(g∧α) {}",
                    format_rational(&o.power.j_term),
                    format_rational(&o.power.gf_term),
                    format_rational(&o.power.volume_term)
                ));
                c.pass &= o.power.ok;
                checks.push(c);
                checks.push(Check::new("stress_from_form", o.stress_matches_wedge));
            }
            Err(e) => checks.push(Check::failed("pform", e)),
        }
    }
    if let Some(r) = p.random {
        let s = sampler(r.max_poly_degree);
        let mut outcomes = Vec::with_capacity(r.cases);
        for _ in 0..r.cases {
            let alpha = s.form(rng, p.n, p.p);
            let g = s.form(rng, p.n, p.n - p.p - 1);
            outcomes.push(pform_case(&alpha, &g, &p.region));
        }
        let mut aggregate = |name: &str, ok: &dyn Fn(&PFormOutcome) -> bool| {
            let mut it = outcomes.iter();
            checks.push(sweep(name, r.cases, |_| match it.next().expect("one outcome per case") {
                Ok(o) => Ok((!ok(o)).then(|| "identity violated".to_string())),
                Err(e) => Err(e.clone()),
            }));
        };
        aggregate("random.df=0", &|o| o.df.is_zero());
        aggregate("random.dJ=0", &|o| o.dj.is_zero());
        aggregate("random.power-10", &|o| o.power.ok);
        aggregate("random.stress_from_form", &|o| o.stress_matches_wedge);
    }
    checks
}

// ---------------------------------------------------------------- classical-em

fn classical_em(p: &ClassicalPayload, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut checks = Vec::new();
    let fields = &p.fields;
    match expand_fields(fields) {
        Ok(exp) => {
            for r in &exp.residuals {
                let name = format!("residual.{}", r.name);
                let expect_nonzero = p.expect_nonzero.iter().any(|n| n == r.name);
                let c = if expect_nonzero {
                    Check::new(&name, !r.is_zero())
                        .with_residual(r.name, &r.polynomial)
                        .with_detail("constructed to violate this law")
                } else {
                    Check::zero_residuals(&name, [(r.name.to_string(), &r.polynomial)])
                };
                checks.push(c);
            }
        }
        Err(e) => checks.push(Check::failed("maxwell_expand", e)),
    }
    checks.extend(round_trips(fields));
    if !fields.phi.is_zero() || !fields.a.is_zero() {
        checks.push(guard("potential", || {
            let pc = potential_consistency(fields)?;
            let ok = pc.b_matches_curl && pc.e_matches_grad_minus_dt && exterior_derivative(&pc.faraday).is_zero();
            Ok(Check::new("potential", ok).with_detail(format!(
                "B = ∇×A: {}, E = ∇φ − ∂A/∂t: {}, E = −∇φ − ∂A/∂t: {}",
                pc.b_matches_curl, pc.e_matches_grad_minus_dt, pc.e_matches_textbook
            )))
        }));
    }
    if let Some(m) = &p.magnetostatic {
        checks.push(magnetostatic_4d(m));
    }
    if let Some(r) = p.random_potentials {
        let s = sampler(r.max_poly_degree);
        checks.push(sweep("random.homogeneous", r.cases, |_| {
            let phi = s.polynomial(rng, 4);
            let a = s.vector_field(rng, 4, 3);
            let f = faraday_from_potential(&potential_form(&phi, &a)?);
            let (e, b) = unpack_faraday(&f)?;
            let zero = PolyVectorField::zero(4, 3);
            let exp = maxwell_expand(&pack_faraday(&e, &b)?, &pack_maxwell(&zero, &zero)?, &PolyForm::zero(4, 3))?;
            Ok((!exp.homogeneous_zero()).then(|| "df ≠ 0 for f = dα".to_string()))
        }));
        checks.push(sweep("random.sourced", r.cases, |_| {
            let (h, d) = (s.vector_field(rng, 4, 3), s.vector_field(rng, 4, 3));
            let g = pack_maxwell(&h, &d)?;
            let (rho, j) = unpack_current(&current_from_stress(&g))?;
            let mut fields = Classical4DFields::zero();
            fields.h = h;
            fields.d = d;
            fields.rho = rho;
            fields.j = j;
            let exp = expand_fields(&fields)?;
            let continuity = &fields.rho.partial(1) + &spatial_div(&fields.j)?;
            Ok((!exp.all_zero() || !continuity.is_zero()).then(|| "J = dg fails the sourced laws".to_string()))
        }));
    }
    checks
}

fn round_trips(fields: &Classical4DFields) -> Vec<Check> {
    vec![
        guard("round_trip.faraday", || {
            let back = unpack_faraday(&pack_faraday(&fields.e, &fields.b)?)?;
            Ok(Check::new("round_trip.faraday", back == (fields.e.clone(), fields.b.clone())))
        }),
        guard("round_trip.maxwell", || {
            let back = unpack_maxwell(&pack_maxwell(&fields.h, &fields.d)?)?;
            Ok(Check::new("round_trip.maxwell", back == (fields.h.clone(), fields.d.clone())))
        }),
        guard("round_trip.current", || {
            let back = unpack_current(&pack_current(&fields.rho, &fields.j)?)?;
            Ok(Check::new("round_trip.current", back == (fields.rho.clone(), fields.j.clone())))
        }),
    ]
}

fn magnetostatic_4d(m: &Magnetostatic4D) -> Check {
    guard("magnetostatic", || {
        let c = magnetostatic_correspondence(&m.h, &m.a, &m.region)?;
        let curl_h = spatial_curl(&m.h)?;
        let static_fields = m.h.partial(1).is_zero() && m.a.partial(1).is_zero();
        let rhs = &c.current_dot_potential - &c.intensity_dot_flux;
        let lhs = &c.power.j_term + &c.power.gf_term;
        let mut check = Check::equal("magnetostatic", &lhs, &rhs).with_detail(format!(
            "∫J·A = {}, ∫H·B = {}, J = ∇×H has {} nonzero components",
            format_rational(&c.current_dot_potential),
            format_rational(&c.intensity_dot_flux),
            curl_h.components().iter().filter(|p| !p.is_zero()).count()
        ));
        check.pass &= c.ok;
        if !static_fields {
            check = check.with_detail("fields depend on x1; the correspondence assumes static fields");
        }
        Ok(check)
    })
}
