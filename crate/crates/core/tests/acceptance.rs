//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p premetric --test acceptance`.

mod common;

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::{cube_boundary_integral, cube_integral};
use premetric::chains::{stokes_check, Cell, Chain};
use premetric::electrodynamics::{
    current_from_stress, expand_fields, faraday_from_potential, pack_current, pack_faraday, pack_maxwell,
    potential_form, power_pform, unpack_current, unpack_faraday, unpack_maxwell, Classical4DFields, PFormScenario,
};
use premetric::exterior_algebra::{alt_dimension, MultiIndex};
use premetric::mechanics::{power_decomposition_magnetostatics, power_density, CauchyStress3D};
use premetric::polyform::{curl, div, exterior_derivative, grad, wedge_form, PolyForm, PolyVectorField};
use premetric::polynomial::Polynomial;
use premetric::random::{self as sample, small_rational, FormSampler};
use premetric::rational::{parity_sign, rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, cases: usize, elapsed: Duration, limit: Option<Duration>) -> Outcome {
    let slow = limit.is_some_and(|l| elapsed > l);
    let mut detail = format!("{cases} cases in {:.2} s", elapsed.as_secs_f64());
    if let Some(l) = limit {
        detail.push_str(&format!(" (limit {} s)", l.as_secs()));
    }
    if let Some(first) = failures.first() {
        detail.push_str(&format!("; {} failures, first: {first}", failures.len()));
    }
    Outcome { pass: failures.is_empty() && !slow, detail }
}

fn top(form: &PolyForm) -> Polynomial {
    form.coefficient(&MultiIndex::new((1..=form.ambient()).collect()).unwrap())
}

/// Components `η_{K_a}` of an `(n−1)`-form, `K_a` omitting axis `a`.
fn facet_components(eta: &PolyForm) -> Vec<Polynomial> {
    let n = eta.ambient();
    (1..=n).map(|a| eta.coefficient(&MultiIndex::new((1..=n).filter(|&b| b != a).collect()).unwrap())).collect()
}

fn d_squared() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let sampler = FormSampler { max_degree: 3, max_terms: 4 };
    // every (n, p) with 2 ≤ n ≤ 5, 0 ≤ p ≤ n, cycled
    let shapes: Vec<(usize, usize)> = (2..=5).flat_map(|n| (0..=n).map(move |p| (n, p))).collect();
    let mut failures = Vec::new();
    for i in 0..100 {
        let (n, p) = shapes[i % shapes.len()];
        let omega = sampler.form(&mut rng, n, p);
        let dd = exterior_derivative(&exterior_derivative(&omega));
        if !dd.is_zero() {
            failures.push(format!("n={n} p={p}: d(dω) = {dd}"));
        }
    }
    outcome(failures, 100, start.elapsed(), Some(Duration::from_secs(10)))
}

fn leibniz() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let sampler = FormSampler::default();
    let mut failures = Vec::new();
    for _ in 0..50 {
        let n = rng.gen_range(2..=5);
        let r = rng.gen_range(0..n);
        let q = rng.gen_range(0..n - r);
        let (omega, phi) = (sampler.form(&mut rng, n, r), sampler.form(&mut rng, n, q));
        let lhs = exterior_derivative(&wedge_form(&omega, &phi).unwrap());
        let rhs = wedge_form(&exterior_derivative(&omega), &phi)
            .unwrap()
            .add(&wedge_form(&omega, &exterior_derivative(&phi)).unwrap().scale(&parity_sign(r)))
            .unwrap();
        if lhs != rhs {
            failures.push(format!("n={n} r={r} q={q}"));
        }
    }
    outcome(failures, 50, start.elapsed(), None)
}

fn stokes() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let sampler = FormSampler::default();
    let mut failures = Vec::new();
    let (mut simplices, mut boxes) = (0, 0);
    for i in 0..50 {
        let n = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=n);
        let omega = sampler.form(&mut rng, n, k - 1);
        let mut chain = Chain::empty(n, k);
        // alternate pure simplex, pure box and mixed chains
        for j in 0..(1 + i % 3) {
            let cell: Cell = match (i % 3, j) {
                (0, _) | (2, 0) => {
                    simplices += 1;
                    sample::simplex(&mut rng, n, k).into()
                }
                _ => {
                    boxes += 1;
                    sample::box_cell(&mut rng, n, k).into()
                }
            };
            chain.push(small_rational(&mut rng), cell).unwrap();
        }
        let s = stokes_check(&omega, &chain).unwrap();
        if !s.equal {
            failures.push(format!("n={n} k={k}: {} vs {}", s.lhs, s.rhs));
        }
    }
    let mut o = outcome(failures, 50, start.elapsed(), Some(Duration::from_secs(30)));
    o.detail.push_str(&format!(", {simplices} simplices and {boxes} boxes"));
    o
}

fn dimension() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 0..=8usize {
        for r in 0..=n {
            cases += 1;
            // count subsets of {1..n} of size r by bitmask
            let enumerated = (0u32..(1 << n)).filter(|m| m.count_ones() as usize == r).count() as u64;
            let formula = alt_dimension(n as i64, r as i64).unwrap();
            if formula != enumerated {
                failures.push(format!("dim({n},{r}) = {formula}, enumerated {enumerated}"));
            }
        }
        let special = [(0, 1), (n, 1)]
            .into_iter()
            .chain(if n >= 1 { vec![(1, n as u64), (n - 1, n as u64)] } else { vec![] });
        for (r, want) in special {
            if alt_dimension(n as i64, r as i64).unwrap() != want {
                failures.push(format!("special case dim({n},{r}) ≠ {want}"));
            }
        }
    }
    outcome(failures, cases, start.elapsed(), None)
}

fn magnetostatics() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sampler = FormSampler::default();
    let cube = Chain::unit_cube(3);
    let mut failures = Vec::new();
    for i in 0..20 {
        let (h, w, a) = (
            sampler.vector_field(&mut rng, 3, 3),
            sampler.vector_field(&mut rng, 3, 3),
            sampler.vector_field(&mut rng, 3, 3),
        );
        let m = power_decomposition_magnetostatics(&h, &w, &cube).unwrap();
        // independent boundary flux of H×w over the six faces, and volume terms by quadrature
        let hxw = h.cross(&w).unwrap();
        let c = hxw.components();
        let facets = [c[0].clone(), -&c[1], c[2].clone()];
        let boundary = cube_boundary_integral(&facets);
        let curl_h_w = cube_integral(&curl(&h).unwrap().dot(&w).unwrap());
        let h_curl_w = cube_integral(&h.dot(&curl(&w).unwrap()).unwrap());
        if !(m.identity_ok && m.boundary_term == boundary && boundary == &curl_h_w - &h_curl_w) {
            failures.push(format!("case {i}: boundary {} vs {}", m.boundary_term, boundary));
        }
        for (name, v) in [("H", &h), ("A", &a)] {
            let r = div(&curl(v).unwrap()).unwrap();
            if !r.is_zero() {
                failures.push(format!("case {i}: div curl {name} = {r}"));
            }
        }
    }
    outcome(failures, 20, start.elapsed(), None)
}

fn spin_part() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let sampler = FormSampler::default();
    let mut failures = Vec::new();
    for i in 0..20 {
        let (s12, s13, s23) =
            (sampler.polynomial(&mut rng, 3), sampler.polynomial(&mut rng, 3), sampler.polynomial(&mut rng, 3));
        let z = Polynomial::zero(3);
        let sigma = CauchyStress3D::new(vec![
            vec![z.clone(), s12.clone(), s13.clone()],
            vec![-&s12, z.clone(), s23.clone()],
            vec![-&s13, -&s23, z],
        ])
        .unwrap();
        let f = sampler.polynomial(&mut rng, 3);
        let density = power_density(&sigma, &grad(&f)).unwrap();
        // Σ σ_ij ∂_j ∂_i f by hand
        let mut by_hand = Polynomial::zero(3);
        for a in 1..=3 {
            for b in 1..=3 {
                by_hand = &by_hand + &(sigma.entry(a, b) * &f.partial(a).partial(b));
            }
        }
        if !density.is_zero() || !by_hand.is_zero() || !sigma.is_antisymmetric() {
            failures.push(format!("case {i}: density {density}"));
        }
    }
    outcome(failures, 20, start.elapsed(), None)
}

struct PFormSweep {
    power_failures: Vec<String>,
    conservation_failures: Vec<String>,
    cases: usize,
    elapsed: Duration,
}

fn pform_sweep() -> PFormSweep {
    let start = Instant::now();
    let sampler = FormSampler { max_degree: 2, max_terms: 3 };
    let mut power_failures = Vec::new();
    let mut conservation_failures = Vec::new();
    let mut cases = 0;
    for (n, p) in [(3, 1), (4, 1), (4, 2), (5, 2)] {
        for seed in 0..10u64 {
            cases += 1;
            let mut rng = ChaCha8Rng::seed_from_u64(1000 * n as u64 + 100 * p as u64 + seed);
            let alpha = sampler.form(&mut rng, n, p);
            let g = sampler.form(&mut rng, n, n - p - 1);
            let region = Chain::unit_cube(n);
            let result = power_pform(&PFormScenario::new(alpha.clone(), g.clone(), region).unwrap()).unwrap();

            let f = faraday_from_potential(&alpha);
            let j = current_from_stress(&g);
            let boundary = cube_boundary_integral(&facet_components(&wedge_form(&g, &alpha).unwrap()));
            let j_term = cube_integral(&top(&wedge_form(&j, &alpha).unwrap()));
            let gf_term = cube_integral(&top(&wedge_form(&g, &f).unwrap()));
            let sign = parity_sign(n - p - 1);
            let oracle_ok = boundary == &j_term + &(&sign * &gf_term);
            let agrees = result.boundary_term == boundary && result.j_term == j_term && result.gf_term == gf_term;
            if !(result.ok && oracle_ok && agrees) {
                power_failures.push(format!("(n,p)=({n},{p}) seed {seed}: {} vs {}", result.boundary_term, boundary));
            }
            let (df, dj) = (exterior_derivative(&f), exterior_derivative(&j));
            if !df.is_zero() || !dj.is_zero() {
                conservation_failures.push(format!("(n,p)=({n},{p}) seed {seed}"));
            }
        }
    }
    PFormSweep { power_failures, conservation_failures, cases, elapsed: start.elapsed() }
}

/// Classical residuals written out component by component on the chart `(t, x, y, z)`.
fn classical_residuals(fl: &Classical4DFields) -> Vec<(&'static str, Polynomial)> {
    let d = |p: &Polynomial, axis: usize| p.partial(axis);
    let c = |v: &PolyVectorField, i: usize| v.components()[i - 1].clone();
    let curl = |v: &PolyVectorField| {
        [
            &d(&c(v, 3), 3) - &d(&c(v, 2), 4),
            &d(&c(v, 1), 4) - &d(&c(v, 3), 2),
            &d(&c(v, 2), 2) - &d(&c(v, 1), 3),
        ]
    };
    let divergence = |v: &PolyVectorField| &(&d(&c(v, 1), 2) + &d(&c(v, 2), 3)) + &d(&c(v, 3), 4);
    let (ce, ch) = (curl(&fl.e), curl(&fl.h));
    vec![
        ("gauss_magnetic", divergence(&fl.b)),
        ("faraday_1", &d(&c(&fl.b, 1), 1) + &ce[0]),
        ("faraday_2", &d(&c(&fl.b, 2), 1) + &ce[1]),
        ("faraday_3", &d(&c(&fl.b, 3), 1) + &ce[2]),
        ("gauss_electric", &divergence(&fl.d) - &fl.rho),
        ("ampere_1", &(&d(&c(&fl.d, 1), 1) + &ch[0]) + &c(&fl.j, 1)),
        ("ampere_2", &(&d(&c(&fl.d, 2), 1) + &ch[1]) + &c(&fl.j, 2)),
        ("ampere_3", &(&d(&c(&fl.d, 3), 1) + &ch[2]) + &c(&fl.j, 3)),
    ]
}

fn classical_recovery() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let sampler = FormSampler { max_degree: 3, max_terms: 3 };
    let mut failures = Vec::new();
    let cases = 20;
    for i in 0..cases {
        // potentials: all four components of df vanish
        let phi = sampler.polynomial(&mut rng, 4);
        let a = sampler.vector_field(&mut rng, 4, 3);
        let f = faraday_from_potential(&potential_form(&phi, &a).unwrap());
        let (e, b) = unpack_faraday(&f).unwrap();
        let mut fl = Classical4DFields::zero();
        fl.e = e;
        fl.b = b;
        let exp = expand_fields(&fl).unwrap();
        if exp.residuals.iter().take(4).any(|r| !r.is_zero()) {
            failures.push(format!("case {i}: df ≠ 0 for f = dα"));
        }

        // arbitrary fields: residuals equal the classical expressions
        let mut fl = Classical4DFields::zero();
        fl.e = sampler.vector_field(&mut rng, 4, 3);
        fl.b = sampler.vector_field(&mut rng, 4, 3);
        fl.h = sampler.vector_field(&mut rng, 4, 3);
        fl.d = sampler.vector_field(&mut rng, 4, 3);
        fl.j = sampler.vector_field(&mut rng, 4, 3);
        fl.rho = sampler.polynomial(&mut rng, 4);
        let exp = expand_fields(&fl).unwrap();
        for (name, expected) in classical_residuals(&fl) {
            if exp.residual(name).unwrap().polynomial != expected {
                failures.push(format!("case {i}: {name} differs from its classical expression"));
            }
        }

        // packing round trips
        let faraday = pack_faraday(&fl.e, &fl.b).unwrap();
        let maxwell = pack_maxwell(&fl.h, &fl.d).unwrap();
        let current = pack_current(&fl.rho, &fl.j).unwrap();
        let trips = unpack_faraday(&faraday).unwrap() == (fl.e.clone(), fl.b.clone())
            && unpack_maxwell(&maxwell).unwrap() == (fl.h.clone(), fl.d.clone())
            && unpack_current(&current).unwrap() == (fl.rho.clone(), fl.j.clone())
            && pack_faraday(&unpack_faraday(&faraday).unwrap().0, &unpack_faraday(&faraday).unwrap().1).unwrap() == faraday;
        if !trips {
            failures.push(format!("case {i}: packing round trip"));
        }

        // consistent sources from J = dg satisfy the sourced laws; perturbing ρ breaks Gauss only
        let g = pack_maxwell(&fl.h, &fl.d).unwrap();
        let (rho, j) = unpack_current(&current_from_stress(&g)).unwrap();
        let mut consistent = Classical4DFields::zero();
        consistent.h = fl.h.clone();
        consistent.d = fl.d.clone();
        consistent.rho = rho;
        consistent.j = j;
        if !expand_fields(&consistent).unwrap().all_zero() {
            failures.push(format!("case {i}: J = dg fails the sourced laws"));
        }
        consistent.rho = &consistent.rho + &Polynomial::one(4);
        let exp = expand_fields(&consistent).unwrap();
        let nonzero: Vec<&str> = exp.residuals.iter().filter(|r| !r.is_zero()).map(|r| r.name).collect();
        if nonzero != ["gauss_electric"] {
            failures.push(format!("case {i}: perturbed ρ gives nonzero {nonzero:?}"));
        }
    }

    // D = (x2, 0, 0), ρ = 1 and its perturbation
    let mut gauss = Classical4DFields::zero();
    gauss.d = PolyVectorField::new(vec![Polynomial::var(4, 2), Polynomial::zero(4), Polynomial::zero(4)]).unwrap();
    gauss.rho = Polynomial::one(4);
    if !expand_fields(&gauss).unwrap().all_zero() {
        failures.push("D = (x2,0,0), ρ = 1 leaves a residual".into());
    }
    gauss.rho = Polynomial::constant(4, rat(2));
    let r = expand_fields(&gauss).unwrap().residual("gauss_electric").unwrap().polynomial.clone();
    if r != Polynomial::constant(4, rat(-1)) {
        failures.push(format!("perturbed Gauss residual is {r}, expected -1"));
    }
    outcome(failures, cases + 1, start.elapsed(), None)
}

fn cli_determinism() -> Outcome {
    let start = Instant::now();
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios");
    let files = std::fs::read_dir(&corpus)
        .map(|d| d.filter_map(|e| e.ok()).filter(|e| e.path().extension().is_some_and(|x| x == "json")).count())
        .unwrap_or(0);
    let run = || Command::new(env!("CARGO_BIN_EXE_premetric")).arg("verify").arg(&corpus).output();
    let mut failures = Vec::new();
    match (run(), run()) {
        (Ok(a), Ok(b)) => {
            if a.status.code() != Some(0) {
                failures.push(format!("exit code {:?}", a.status.code()));
            }
            if b.status.code() != Some(0) {
                failures.push(format!("second exit code {:?}", b.status.code()));
            }
            if a.stdout != b.stdout {
                failures.push("reports differ between runs".into());
            }
            let kinds: Vec<String> = serde_json::from_slice::<serde_json::Value>(&a.stdout)
                .ok()
                .and_then(|v| v["reports"].as_array().cloned())
                .unwrap_or_default()
                .iter()
                .filter_map(|r| r["kind"].as_str().map(String::from))
                .collect();
            for kind in ["form-op", "stokes", "mechanics", "pform-em", "classical-em"] {
                if !kinds.iter().any(|k| k == kind) {
                    failures.push(format!("no {kind} scenario"));
                }
            }
        }
        (Err(e), _) | (_, Err(e)) => failures.push(format!("could not run the CLI: {e}")),
    }
    if files < 12 {
        failures.push(format!("only {files} scenarios"));
    }
    let mut o = outcome(failures, files, start.elapsed(), None);
    o.detail = format!("{files} scenarios, two runs; {}", o.detail);
    o
}

fn main() -> ExitCode {
    let pform = pform_sweep();
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "d∘d = 0", d_squared()),
        (2, "graded Leibniz rule", leibniz()),
        (3, "Stokes on simplices and boxes", stokes()),
        (4, "dimension formula", dimension()),
        (5, "magnetostatics bridge", magnetostatics()),
        (6, "spin part", spin_part()),
        (
            7,
            "p-form power decomposition",
            outcome(pform.power_failures.clone(), pform.cases, pform.elapsed, None),
        ),
        (8, "df = 0 and dJ = 0", outcome(pform.conservation_failures.clone(), pform.cases, pform.elapsed, None)),
        (9, "classical recovery", classical_recovery()),
        (10, "CLI determinism", cli_determinism()),
    ];
    let mut all = true;
    for (id, name, o) in &results {
        all &= o.pass;
        println!("criterion {id:>2} {:<32} {}  {}", name, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let passed = results.iter().filter(|r| r.2.pass).count();
    println!("{passed}/{} criteria passed", results.len());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
