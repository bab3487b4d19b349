//! Kind-specific payloads: raw JSON records and their validated forms.

use serde::Deserialize;
use serde_json::Value;

use super::schema::{
    alt_tensor, body_force, cauchy, chain, chain_of_dim, dense_tensor, field_path, form, form_of_degree, from_value,
    item_path, point, polynomial, rational, stress, vector_field, ErrorCode, ParseResult, RawBodyEntry, RawChain,
    RawForm, RawPolynomial, RawRational, RawStress, RawTensor, ScenarioError,
};
use crate::chains::{Chain, Simplex};
use crate::electrodynamics::Classical4DFields;
use crate::exterior_algebra::{AltTensor, DenseTensor};
use crate::mechanics::{BodyForceField, CauchyStress3D, StressField};
use crate::polyform::{PolyForm, PolyVectorField};
use crate::polynomial::Polynomial;
use crate::rational::Rational;

/// Parameters of a seeded random sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomSweep {
    pub cases: usize,
    #[serde(default = "default_min_n")]
    pub min_n: usize,
    #[serde(default = "default_max_n")]
    pub max_n: usize,
    #[serde(default = "default_poly_degree")]
    pub max_poly_degree: u32,
}

fn default_min_n() -> usize {
    2
}
fn default_max_n() -> usize {
    4
}
fn default_poly_degree() -> u32 {
    3
}

fn check_sweep(s: &RandomSweep, lo: usize, hi: usize, path: &str) -> ParseResult<()> {
    if s.min_n < lo || s.max_n > hi || s.min_n > s.max_n {
        return Err(ScenarioError::new(
            ErrorCode::BadField,
            path,
            format!("dimension range {}..={} must lie within {lo}..={hi}", s.min_n, s.max_n),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------- form-op

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFormOp {
    #[serde(default)]
    dimensions: Vec<RawDimCase>,
    #[serde(default)]
    alternate: Vec<RawAlternate>,
    #[serde(default)]
    evaluate: Vec<RawEvaluate>,
    #[serde(default)]
    wedge: Vec<RawTensorWedge>,
    #[serde(default)]
    forms: Vec<RawFormCase>,
    #[serde(default)]
    directional: Vec<RawDirectional>,
    #[serde(default)]
    vector_bridge: Vec<RawBridge>,
    #[serde(default)]
    random: Option<RandomSweep>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDimCase {
    n: i64,
    r: i64,
    #[serde(default)]
    expect: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlternate {
    tensor: RawTensor,
    #[serde(default)]
    expect: Option<RawTensor>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEvaluate {
    tensor: RawTensor,
    vectors: Vec<Vec<RawRational>>,
    #[serde(default)]
    expect: Option<RawRational>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTensorWedge {
    a: RawTensor,
    b: RawTensor,
    #[serde(default)]
    expect: Option<RawTensor>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFormCase {
    omega: RawForm,
    #[serde(default)]
    eta: Option<RawForm>,
    #[serde(default)]
    expect_d: Option<RawForm>,
    #[serde(default)]
    expect_wedge: Option<RawForm>,
    #[serde(default)]
    point: Option<Vec<RawRational>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDirectional {
    f: RawPolynomial,
    v: Vec<RawRational>,
    point: Vec<RawRational>,
    #[serde(default)]
    expect: Option<RawRational>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBridge {
    field: Vec<RawPolynomial>,
    #[serde(default)]
    scalar: Option<RawPolynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimCase {
    pub n: i64,
    pub r: i64,
    pub expect: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternateCase {
    pub tensor: DenseTensor,
    pub expect: Option<AltTensor>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluateCase {
    pub tensor: AltTensor,
    pub vectors: Vec<Vec<Rational>>,
    pub expect: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorWedgeCase {
    pub a: AltTensor,
    pub b: AltTensor,
    pub expect: Option<AltTensor>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormCase {
    pub omega: PolyForm,
    pub eta: Option<PolyForm>,
    pub expect_d: Option<PolyForm>,
    pub expect_wedge: Option<PolyForm>,
    pub point: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionalCase {
    pub f: Polynomial,
    pub v: Vec<Rational>,
    pub point: Vec<Rational>,
    pub expect: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeCase {
    pub field: PolyVectorField,
    pub scalar: Option<Polynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormOpPayload {
    pub dimensions: Vec<DimCase>,
    pub alternate: Vec<AlternateCase>,
    pub evaluate: Vec<EvaluateCase>,
    pub wedge: Vec<TensorWedgeCase>,
    pub forms: Vec<FormCase>,
    pub directional: Vec<DirectionalCase>,
    pub vector_bridge: Vec<BridgeCase>,
    pub random: Option<RandomSweep>,
}

fn vectors(raw: &[Vec<RawRational>], n: usize, path: &str) -> ParseResult<Vec<Vec<Rational>>> {
    raw.iter().enumerate().map(|(i, v)| point(v, n, &item_path(path, i))).collect()
}

fn parse_form_op(value: &Value) -> ParseResult<FormOpPayload> {
    let raw: RawFormOp = from_value(value, "payload")?;
    let base = "payload";
    let dimensions = raw.dimensions.iter().map(|d| DimCase { n: d.n, r: d.r, expect: d.expect }).collect();

    let mut alternate = Vec::new();
    for (i, a) in raw.alternate.iter().enumerate() {
        let p = item_path(&field_path(base, "alternate"), i);
        let tensor = dense_tensor(&a.tensor, &field_path(&p, "tensor"))?;
        let expect = a.expect.as_ref().map(|e| alt_tensor(e, &field_path(&p, "expect"))).transpose()?;
        alternate.push(AlternateCase { tensor, expect });
    }

    let mut evaluate = Vec::new();
    for (i, e) in raw.evaluate.iter().enumerate() {
        let p = item_path(&field_path(base, "evaluate"), i);
        let tensor = alt_tensor(&e.tensor, &field_path(&p, "tensor"))?;
        let vp = field_path(&p, "vectors");
        if e.vectors.len() != tensor.degree() {
            return Err(ScenarioError::new(
                ErrorCode::DegreeMismatch,
                vp,
                format!("a {}-tensor takes {} vectors, found {}", tensor.degree(), tensor.degree(), e.vectors.len()),
            ));
        }
        let vs = vectors(&e.vectors, tensor.ambient(), &vp)?;
        let expect = e.expect.as_ref().map(|x| rational(x, &field_path(&p, "expect"))).transpose()?;
        evaluate.push(EvaluateCase { tensor, vectors: vs, expect });
    }

    let mut wedge = Vec::new();
    for (i, w) in raw.wedge.iter().enumerate() {
        let p = item_path(&field_path(base, "wedge"), i);
        let a = alt_tensor(&w.a, &field_path(&p, "a"))?;
        let b = alt_tensor(&w.b, &field_path(&p, "b"))?;
        if a.ambient() != b.ambient() {
            return Err(ScenarioError::new(ErrorCode::DimensionMismatch, field_path(&p, "b.n"), "factors differ in dimension"));
        }
        let expect = w.expect.as_ref().map(|e| alt_tensor(e, &field_path(&p, "expect"))).transpose()?;
        wedge.push(TensorWedgeCase { a, b, expect });
    }

    let mut forms = Vec::new();
    for (i, f) in raw.forms.iter().enumerate() {
        let p = item_path(&field_path(base, "forms"), i);
        let omega = form(&f.omega, &field_path(&p, "omega"))?;
        let n = omega.ambient();
        let eta = match &f.eta {
            Some(e) => {
                let ep = field_path(&p, "eta");
                if e.n != n {
                    return Err(ScenarioError::new(ErrorCode::DimensionMismatch, field_path(&ep, "n"), "eta differs in dimension"));
                }
                Some(form(e, &ep)?)
            }
            None => None,
        };
        let expect_d = match &f.expect_d {
            Some(_) if omega.degree() == n => {
                return Err(ScenarioError::new(
                    ErrorCode::DegreeMismatch,
                    field_path(&p, "expect_d"),
                    "d of a top-degree form has no components to compare",
                ))
            }
            Some(e) => Some(form_of_degree(e, n, omega.degree() + 1, &field_path(&p, "expect_d"))?),
            None => None,
        };
        let expect_wedge = match (&f.expect_wedge, &eta) {
            (Some(e), Some(eta)) => {
                Some(form_of_degree(e, n, omega.degree() + eta.degree(), &field_path(&p, "expect_wedge"))?)
            }
            (Some(_), None) => {
                return Err(ScenarioError::new(ErrorCode::BadField, field_path(&p, "expect_wedge"), "requires `eta`"))
            }
            (None, _) => None,
        };
        let pt = f.point.as_ref().map(|x| point(x, n, &field_path(&p, "point"))).transpose()?;
        forms.push(FormCase { omega, eta, expect_d, expect_wedge, point: pt });
    }

    let mut directional = Vec::new();
    for (i, d) in raw.directional.iter().enumerate() {
        let p = item_path(&field_path(base, "directional"), i);
        let n = d.v.len();
        let v = point(&d.v, n, &field_path(&p, "v"))?;
        let pt = point(&d.point, n, &field_path(&p, "point"))?;
        let f = polynomial(&d.f, n, &field_path(&p, "f"))?;
        let expect = d.expect.as_ref().map(|x| rational(x, &field_path(&p, "expect"))).transpose()?;
        directional.push(DirectionalCase { f, v, point: pt, expect });
    }

    let mut vector_bridge = Vec::new();
    for (i, b) in raw.vector_bridge.iter().enumerate() {
        let p = item_path(&field_path(base, "vector_bridge"), i);
        let field = vector_field(&b.field, 3, 3, &field_path(&p, "field"))?;
        let scalar = b.scalar.as_ref().map(|s| polynomial(s, 3, &field_path(&p, "scalar"))).transpose()?;
        vector_bridge.push(BridgeCase { field, scalar });
    }

    if let Some(r) = &raw.random {
        check_sweep(r, 1, 6, "payload.random")?;
    }

    Ok(FormOpPayload { dimensions, alternate, evaluate, wedge, forms, directional, vector_bridge, random: raw.random })
}

// ---------------------------------------------------------------- stokes

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStokes {
    #[serde(default)]
    checks: Vec<RawStokesCase>,
    #[serde(default)]
    integrals: Vec<RawIntegral>,
    #[serde(default)]
    boundary: Vec<RawChain>,
    #[serde(default)]
    flux: Vec<RawFlux>,
    #[serde(default)]
    random: Option<RandomSweep>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStokesCase {
    form: RawForm,
    #[serde(default)]
    chain: Option<RawChain>,
    #[serde(default)]
    expect: Option<RawRational>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIntegral {
    form: RawForm,
    #[serde(default)]
    chain: Option<RawChain>,
    expect: RawRational,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFlux {
    field: Vec<RawPolynomial>,
    surface: RawChain,
    #[serde(default)]
    expect: Option<RawRational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StokesCase {
    pub form: PolyForm,
    pub chain: Chain,
    pub expect: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralCase {
    pub form: PolyForm,
    pub chain: Chain,
    pub expect: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FluxCase {
    pub field: PolyVectorField,
    pub surface: Chain,
    pub expect: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StokesPayload {
    pub checks: Vec<StokesCase>,
    pub integrals: Vec<IntegralCase>,
    pub boundary: Vec<Chain>,
    pub flux: Vec<FluxCase>,
    pub random: Option<RandomSweep>,
}

/// Chain of the given shape, defaulting to the unit cube when the form is top-minus-one.
fn region_or_cube(raw: Option<&RawChain>, n: usize, k: usize, path: &str) -> ParseResult<Chain> {
    match raw {
        Some(c) => chain_of_dim(c, n, k, path),
        None if k == n => Ok(Chain::unit_cube(n)),
        None => Err(ScenarioError::new(
            ErrorCode::BadField,
            path,
            format!("a {k}-chain in dimension {n} must be given explicitly"),
        )),
    }
}

fn parse_stokes(value: &Value) -> ParseResult<StokesPayload> {
    let raw: RawStokes = from_value(value, "payload")?;
    let mut checks = Vec::new();
    for (i, c) in raw.checks.iter().enumerate() {
        let p = item_path("payload.checks", i);
        let omega = form(&c.form, &field_path(&p, "form"))?;
        if omega.degree() >= omega.ambient() {
            return Err(ScenarioError::new(
                ErrorCode::DegreeMismatch,
                field_path(&p, "form.degree"),
                "a Stokes form needs degree below the dimension",
            ));
        }
        let chain = region_or_cube(c.chain.as_ref(), omega.ambient(), omega.degree() + 1, &field_path(&p, "chain"))?;
        let expect = c.expect.as_ref().map(|x| rational(x, &field_path(&p, "expect"))).transpose()?;
        checks.push(StokesCase { form: omega, chain, expect });
    }
    let mut integrals = Vec::new();
    for (i, c) in raw.integrals.iter().enumerate() {
        let p = item_path("payload.integrals", i);
        let omega = form(&c.form, &field_path(&p, "form"))?;
        let chain = region_or_cube(c.chain.as_ref(), omega.ambient(), omega.degree(), &field_path(&p, "chain"))?;
        let expect = rational(&c.expect, &field_path(&p, "expect"))?;
        integrals.push(IntegralCase { form: omega, chain, expect });
    }
    let mut boundary = Vec::new();
    for (i, c) in raw.boundary.iter().enumerate() {
        let p = item_path("payload.boundary", i);
        let parsed = chain(c, &p)?;
        if parsed.dim() < 2 {
            return Err(ScenarioError::new(ErrorCode::DegreeMismatch, field_path(&p, "k"), "∂∂ needs cells of dimension ≥ 2"));
        }
        boundary.push(parsed);
    }
    let mut flux = Vec::new();
    for (i, f) in raw.flux.iter().enumerate() {
        let p = item_path("payload.flux", i);
        let field = vector_field(&f.field, 3, 3, &field_path(&p, "field"))?;
        let surface = chain_of_dim(&f.surface, 3, 2, &field_path(&p, "surface"))?;
        let expect = f.expect.as_ref().map(|x| rational(x, &field_path(&p, "expect"))).transpose()?;
        flux.push(FluxCase { field, surface, expect });
    }
    if let Some(r) = &raw.random {
        check_sweep(r, 1, 5, "payload.random")?;
    }
    Ok(StokesPayload { checks, integrals, boundary, flux, random: raw.random })
}

// ---------------------------------------------------------------- mechanics

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMechanics {
    #[serde(default)]
    power: Vec<RawPower>,
    #[serde(default)]
    cauchy: Vec<RawCauchy>,
    #[serde(default)]
    magnetostatics: Vec<RawMagnetostatics>,
    #[serde(default)]
    random: Option<RawMechanicsRandom>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPower {
    n: usize,
    p: usize,
    stress: RawStress,
    #[serde(default)]
    body_force: Vec<RawBodyEntry>,
    velocity: RawForm,
    #[serde(default)]
    region: Option<RawChain>,
    #[serde(default)]
    tractions: Vec<RawTraction>,
    #[serde(default)]
    expect_total: Option<RawRational>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTraction {
    simplex: Vec<Vec<RawRational>>,
    #[serde(default)]
    expect: Option<RawRational>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCauchy {
    rows: Vec<Vec<RawPolynomial>>,
    #[serde(default)]
    gradient_of: Option<RawPolynomial>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMagnetostatics {
    h: Vec<RawPolynomial>,
    w: Vec<RawPolynomial>,
    #[serde(default)]
    region: Option<RawChain>,
}

/// Seeded sweeps over the three-dimensional identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMechanicsRandom {
    pub cases: usize,
    #[serde(default = "default_poly_degree")]
    pub max_poly_degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Traction {
    pub simplex: Simplex,
    pub expect: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerCase {
    pub stress: StressField,
    pub body_force: BodyForceField,
    pub velocity: PolyForm,
    pub region: Chain,
    pub tractions: Vec<Traction>,
    pub expect_total: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauchyCase {
    pub sigma: CauchyStress3D,
    /// Potential `f` for the velocity `w = ∇f` in the spin-part check.
    pub gradient_of: Option<Polynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnetostaticsCase {
    pub h: PolyVectorField,
    pub w: PolyVectorField,
    pub region: Chain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MechanicsPayload {
    pub power: Vec<PowerCase>,
    pub cauchy: Vec<CauchyCase>,
    pub magnetostatics: Vec<MagnetostaticsCase>,
    pub random: Option<RawMechanicsRandom>,
}

fn parse_mechanics(value: &Value) -> ParseResult<MechanicsPayload> {
    let raw: RawMechanics = from_value(value, "payload")?;
    let mut power = Vec::new();
    for (i, c) in raw.power.iter().enumerate() {
        let p = item_path("payload.power", i);
        if c.n == 0 || c.p >= c.n {
            return Err(ScenarioError::new(
                ErrorCode::DegreeMismatch,
                field_path(&p, "p"),
                format!("velocity degree {} must be below dimension {}", c.p, c.n),
            ));
        }
        let sigma = stress(&c.stress, c.n, c.p, &field_path(&p, "stress"))?;
        let body = body_force(&c.body_force, c.n, c.p, &field_path(&p, "body_force"))?;
        let velocity = form_of_degree(&c.velocity, c.n, c.p, &field_path(&p, "velocity"))?;
        let region = region_or_cube(c.region.as_ref(), c.n, c.n, &field_path(&p, "region"))?;
        let mut tractions = Vec::new();
        for (j, t) in c.tractions.iter().enumerate() {
            let tp = item_path(&field_path(&p, "tractions"), j);
            let sp = field_path(&tp, "simplex");
            if t.simplex.len() != c.n {
                return Err(ScenarioError::new(
                    ErrorCode::DegreeMismatch,
                    &sp,
                    format!("a boundary patch needs {} vertices, found {}", c.n, t.simplex.len()),
                ));
            }
            let verts = vectors(&t.simplex, c.n, &sp)?;
            let simplex = Simplex::new(verts).map_err(|e| ScenarioError::new(ErrorCode::DimensionMismatch, &sp, e.to_string()))?;
            let expect = t.expect.as_ref().map(|x| rational(x, &field_path(&tp, "expect"))).transpose()?;
            tractions.push(Traction { simplex, expect });
        }
        let expect_total = c.expect_total.as_ref().map(|x| rational(x, &field_path(&p, "expect_total"))).transpose()?;
        power.push(PowerCase { stress: sigma, body_force: body, velocity, region, tractions, expect_total });
    }
    let mut cauchy_cases = Vec::new();
    for (i, c) in raw.cauchy.iter().enumerate() {
        let p = item_path("payload.cauchy", i);
        let sigma = cauchy(&c.rows, &field_path(&p, "rows"))?;
        let gradient_of = c.gradient_of.as_ref().map(|f| polynomial(f, 3, &field_path(&p, "gradient_of"))).transpose()?;
        cauchy_cases.push(CauchyCase { sigma, gradient_of });
    }
    let mut magnetostatics = Vec::new();
    for (i, m) in raw.magnetostatics.iter().enumerate() {
        let p = item_path("payload.magnetostatics", i);
        let h = vector_field(&m.h, 3, 3, &field_path(&p, "h"))?;
        let w = vector_field(&m.w, 3, 3, &field_path(&p, "w"))?;
        let region = region_or_cube(m.region.as_ref(), 3, 3, &field_path(&p, "region"))?;
        magnetostatics.push(MagnetostaticsCase { h, w, region });
    }
    Ok(MechanicsPayload { power, cauchy: cauchy_cases, magnetostatics, random: raw.random })
}

// ---------------------------------------------------------------- pform-em

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPForm {
    n: usize,
    p: usize,
    #[serde(default)]
    alpha: Option<RawForm>,
    #[serde(default)]
    g: Option<RawForm>,
    #[serde(default)]
    region: Option<RawChain>,
    #[serde(default)]
    random: Option<RawPFormRandom>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPFormRandom {
    pub cases: usize,
    #[serde(default = "default_pform_degree")]
    pub max_poly_degree: u32,
}

fn default_pform_degree() -> u32 {
    2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PFormPayload {
    pub n: usize,
    pub p: usize,
    /// Explicit potential and stress form; absent when only random cases are requested.
    pub explicit: Option<(PolyForm, PolyForm)>,
    pub region: Chain,
    pub random: Option<RawPFormRandom>,
}

fn parse_pform(value: &Value) -> ParseResult<PFormPayload> {
    let raw: RawPForm = from_value(value, "payload")?;
    let (n, p) = (raw.n, raw.p);
    if n == 0 || p + 1 > n {
        return Err(ScenarioError::new(
            ErrorCode::DegreeMismatch,
            "payload.p",
            format!("potential degree {p} needs p + 1 ≤ n = {n}"),
        ));
    }
    if n > 6 {
        return Err(ScenarioError::new(ErrorCode::BadField, "payload.n", "dimension above 6 is not supported by scenarios"));
    }
    let explicit = match (&raw.alpha, &raw.g) {
        (Some(a), Some(g)) => {
            Some((form_of_degree(a, n, p, "payload.alpha")?, form_of_degree(g, n, n - p - 1, "payload.g")?))
        }
        (None, None) => None,
        _ => return Err(ScenarioError::new(ErrorCode::BadField, "payload", "`alpha` and `g` must be given together")),
    };
    if explicit.is_none() && raw.random.is_none() {
        return Err(ScenarioError::new(ErrorCode::BadField, "payload", "needs `alpha` and `g`, or `random`"));
    }
    let region = region_or_cube(raw.region.as_ref(), n, n, "payload.region")?;
    Ok(PFormPayload { n, p, explicit, region, random: raw.random })
}

// ---------------------------------------------------------------- classical-em

/// Classical fields on the chart `(t, x, y, z) = (x1, x2, x3, x4)`; absent fields are zero.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFields {
    #[serde(default)]
    e: Option<Vec<RawPolynomial>>,
    #[serde(default)]
    b: Option<Vec<RawPolynomial>>,
    #[serde(default)]
    h: Option<Vec<RawPolynomial>>,
    #[serde(default)]
    d: Option<Vec<RawPolynomial>>,
    #[serde(default)]
    rho: Option<RawPolynomial>,
    #[serde(default)]
    j: Option<Vec<RawPolynomial>>,
    #[serde(default)]
    phi: Option<RawPolynomial>,
    #[serde(default)]
    a: Option<Vec<RawPolynomial>>,
}

pub fn fields(raw: &RawFields, path: &str) -> ParseResult<Classical4DFields> {
    let mut out = Classical4DFields::zero();
    let vf = |v: &Option<Vec<RawPolynomial>>, name: &str, slot: &mut PolyVectorField| -> ParseResult<()> {
        if let Some(v) = v {
            *slot = vector_field(v, 4, 3, &field_path(path, name))?;
        }
        Ok(())
    };
    vf(&raw.e, "e", &mut out.e)?;
    vf(&raw.b, "b", &mut out.b)?;
    vf(&raw.h, "h", &mut out.h)?;
    vf(&raw.d, "d", &mut out.d)?;
    vf(&raw.j, "j", &mut out.j)?;
    vf(&raw.a, "a", &mut out.a)?;
    if let Some(r) = &raw.rho {
        out.rho = polynomial(r, 4, &field_path(path, "rho"))?;
    }
    if let Some(r) = &raw.phi {
        out.phi = polynomial(r, 4, &field_path(path, "phi"))?;
    }
    Ok(out)
}

/// Parse a standalone fields document.
pub fn parse_fields(value: &Value) -> ParseResult<Classical4DFields> {
    let raw: RawFields = from_value(value, "")?;
    fields(&raw, "")
}

pub const RESIDUAL_NAMES: [&str; 8] = [
    "gauss_magnetic",
    "faraday_1",
    "faraday_2",
    "faraday_3",
    "gauss_electric",
    "ampere_1",
    "ampere_2",
    "ampere_3",
];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClassical {
    #[serde(default)]
    fields: RawFields,
    #[serde(default)]
    expect_nonzero: Vec<String>,
    #[serde(default)]
    random_potentials: Option<RawPFormRandom>,
    #[serde(default)]
    magnetostatic: Option<RawMagnetostatic4D>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMagnetostatic4D {
    h: Vec<RawPolynomial>,
    a: Vec<RawPolynomial>,
    #[serde(default)]
    region: Option<RawChain>,
}

/// Time-independent `H` and `A` compared against the p-form power balance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Magnetostatic4D {
    pub h: PolyVectorField,
    pub a: PolyVectorField,
    pub region: Chain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalPayload {
    pub fields: Classical4DFields,
    /// Residuals the scenario is built to violate; each must come out nonzero.
    pub expect_nonzero: Vec<String>,
    pub random_potentials: Option<RawPFormRandom>,
    pub magnetostatic: Option<Magnetostatic4D>,
}

fn parse_classical(value: &Value) -> ParseResult<ClassicalPayload> {
    let raw: RawClassical = from_value(value, "payload")?;
    let f = fields(&raw.fields, "payload.fields")?;
    for (i, name) in raw.expect_nonzero.iter().enumerate() {
        if !RESIDUAL_NAMES.contains(&name.as_str()) {
            return Err(ScenarioError::new(
                ErrorCode::BadField,
                item_path("payload.expect_nonzero", i),
                format!("unknown residual `{name}`"),
            ));
        }
    }
    let magnetostatic = match &raw.magnetostatic {
        Some(m) => Some(Magnetostatic4D {
            h: vector_field(&m.h, 4, 3, "payload.magnetostatic.h")?,
            a: vector_field(&m.a, 4, 3, "payload.magnetostatic.a")?,
            region: region_or_cube(m.region.as_ref(), 4, 4, "payload.magnetostatic.region")?,
        }),
        None => None,
    };
    Ok(ClassicalPayload {
        fields: f,
        expect_nonzero: raw.expect_nonzero,
        random_potentials: raw.random_potentials,
        magnetostatic,
    })
}

// ---------------------------------------------------------------- dispatch

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    FormOp,
    Stokes,
    Mechanics,
    PFormEm,
    ClassicalEm,
}

impl Kind {
    pub const ALL: [Kind; 5] = [Kind::FormOp, Kind::Stokes, Kind::Mechanics, Kind::PFormEm, Kind::ClassicalEm];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::FormOp => "form-op",
            Kind::Stokes => "stokes",
            Kind::Mechanics => "mechanics",
            Kind::PFormEm => "pform-em",
            Kind::ClassicalEm => "classical-em",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    FormOp(FormOpPayload),
    Stokes(StokesPayload),
    Mechanics(MechanicsPayload),
    PFormEm(PFormPayload),
    ClassicalEm(ClassicalPayload),
}

impl Payload {
    pub fn kind(&self) -> Kind {
        match self {
            Payload::FormOp(_) => Kind::FormOp,
            Payload::Stokes(_) => Kind::Stokes,
            Payload::Mechanics(_) => Kind::Mechanics,
            Payload::PFormEm(_) => Kind::PFormEm,
            Payload::ClassicalEm(_) => Kind::ClassicalEm,
        }
    }
}

pub fn parse_payload(kind: Kind, value: &Value) -> ParseResult<Payload> {
    Ok(match kind {
        Kind::FormOp => Payload::FormOp(parse_form_op(value)?),
        Kind::Stokes => Payload::Stokes(parse_stokes(value)?),
        Kind::Mechanics => Payload::Mechanics(parse_mechanics(value)?),
        Kind::PFormEm => Payload::PFormEm(parse_pform(value)?),
        Kind::ClassicalEm => Payload::ClassicalEm(parse_classical(value)?),
    })
}

/// Parse a standalone form document.
pub fn parse_form(value: &Value) -> ParseResult<PolyForm> {
    let raw: RawForm = from_value(value, "")?;
    form(&raw, "")
}

/// Parse a standalone chain document.
pub fn parse_chain(value: &Value) -> ParseResult<Chain> {
    let raw: RawChain = from_value(value, "")?;
    chain(&raw, "")
}
