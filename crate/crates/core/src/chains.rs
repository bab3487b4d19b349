//! Oriented affine cells, chains, the boundary operator and exact integration.
//!
//! A cell is parametrised affinely over a reference domain: the standard
//! simplex `{u ≥ 0, Σu ≤ 1}` for a simplex `[v0, ..., vk]` (with edges
//! `v_j − v0`), or the unit cube for a box with origin and edge vectors.
//! The pullback of a `k`-form through that map is a polynomial top-form on
//! the reference domain and is integrated in closed form.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{check_degree, check_dim, invalid, Result};
use crate::exterior_algebra::minor;
use crate::polyform::{exterior_derivative, vec_to_2form, PolyForm, PolyVectorField};
use crate::polynomial::Polynomial;
use crate::rational::Rational;

/// Ordered vertices `[v0, ..., vk]`; the order is the orientation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    vertices: Vec<Vec<Rational>>,
}

impl Simplex {
    pub fn new(vertices: Vec<Vec<Rational>>) -> Result<Self> {
        let n = vertices.first().map(Vec::len).ok_or_else(|| invalid("simplex needs at least one vertex"))?;
        for v in &vertices {
            check_dim(n, v.len())?;
        }
        if vertices.len() > n + 1 {
            return Err(invalid(format!("{} vertices exceed ambient dimension {n}", vertices.len())));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn ambient(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    fn faces(&self) -> Vec<(i8, Cell)> {
        (0..self.vertices.len())
            .map(|i| {
                let mut vs = self.vertices.clone();
                vs.remove(i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                (sign, Cell::Simplex(Simplex { vertices: vs }))
            })
            .collect()
    }
}

/// Parallelepiped `{origin + Σ u_j edge_j : u ∈ [0,1]^k}`; the edge order is the orientation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoxCell {
    origin: Vec<Rational>,
    edges: Vec<Vec<Rational>>,
}

impl BoxCell {
    pub fn new(origin: Vec<Rational>, edges: Vec<Vec<Rational>>) -> Result<Self> {
        let n = origin.len();
        for e in &edges {
            check_dim(n, e.len())?;
        }
        if edges.len() > n {
            return Err(invalid(format!("{} edges exceed ambient dimension {n}", edges.len())));
        }
        Ok(Self { origin, edges })
    }

    /// `[0,1]^n` with the standard orientation.
    pub fn unit_cube(n: usize) -> Self {
        let edges = (0..n)
            .map(|j| (0..n).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Self { origin: vec![Rational::zero(); n], edges }
    }

    pub fn origin(&self) -> &[Rational] {
        &self.origin
    }

    pub fn edges(&self) -> &[Vec<Rational>] {
        &self.edges
    }

    pub fn ambient(&self) -> usize {
        self.origin.len()
    }

    pub fn dim(&self) -> usize {
        self.edges.len()
    }

    /// Cubical boundary: `Σ_j (-1)^j (far face_j − near face_j)`, `j` counted from 0.
    fn faces(&self) -> Vec<(i8, Cell)> {
        let mut out = Vec::with_capacity(2 * self.edges.len());
        for j in 0..self.edges.len() {
            let mut rest = self.edges.clone();
            let edge = rest.remove(j);
            let far: Vec<Rational> = self.origin.iter().zip(&edge).map(|(o, e)| o + e).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            out.push((sign, Cell::Box(BoxCell { origin: far, edges: rest.clone() })));
            out.push((-sign, Cell::Box(BoxCell { origin: self.origin.clone(), edges: rest })));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    Simplex(Simplex),
    Box(BoxCell),
}

impl Cell {
    pub fn ambient(&self) -> usize {
        match self {
            Cell::Simplex(s) => s.ambient(),
            Cell::Box(b) => b.ambient(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Cell::Simplex(s) => s.dim(),
            Cell::Box(b) => b.dim(),
        }
    }

    /// Base point and edge vectors of the affine parametrisation.
    pub fn frame(&self) -> (Vec<Rational>, Vec<Vec<Rational>>) {
        match self {
            Cell::Simplex(s) => {
                let v0 = s.vertices[0].clone();
                let edges = s.vertices[1..]
                    .iter()
                    .map(|v| v.iter().zip(&v0).map(|(a, b)| a - b).collect())
                    .collect();
                (v0, edges)
            }
            Cell::Box(b) => (b.origin.clone(), b.edges.clone()),
        }
    }

    fn faces(&self) -> Vec<(i8, Cell)> {
        match self {
            Cell::Simplex(s) => s.faces(),
            Cell::Box(b) => b.faces(),
        }
    }

    /// Pullback of a `k`-form to the reference domain, as the coefficient
    /// polynomial of `du1∧...∧duk`.
    pub fn pullback(&self, form: &PolyForm) -> Result<Polynomial> {
        check_dim(self.ambient(), form.ambient())?;
        check_degree(self.dim(), form.degree())?;
        let k = self.dim();
        let (origin, edges) = self.frame();
        let linear: Vec<Vec<Rational>> = (0..origin.len()).map(|i| edges.iter().map(|e| e[i].clone()).collect()).collect();
        let mut out = Polynomial::zero(k);
        for (idx, coeff) in form.components() {
            let jac = minor(&edges, idx);
            if jac.is_zero() {
                continue;
            }
            out = &out + &coeff.compose_affine(&origin, &linear, k).scale(&jac);
        }
        Ok(out)
    }

    /// Exact integral of a `k`-form over this oriented cell.
    pub fn integrate(&self, form: &PolyForm) -> Result<Rational> {
        let pulled = self.pullback(form)?;
        Ok(match self {
            Cell::Simplex(_) => pulled.integrate_simplex(),
            Cell::Box(_) => pulled.integrate_cube(),
        })
    }
}

impl From<Simplex> for Cell {
    fn from(s: Simplex) -> Self {
        Cell::Simplex(s)
    }
}

impl From<BoxCell> for Cell {
    fn from(b: BoxCell) -> Self {
        Cell::Box(b)
    }
}

/// Formal rational combination of oriented `k`-cells in `R^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    n: usize,
    k: usize,
    terms: Vec<(Rational, Cell)>,
}

impl Chain {
    pub fn empty(n: usize, k: usize) -> Self {
        Self { n, k, terms: Vec::new() }
    }

    pub fn from_cell(cell: impl Into<Cell>) -> Self {
        let cell = cell.into();
        Self { n: cell.ambient(), k: cell.dim(), terms: vec![(Rational::one(), cell)] }
    }

    /// The unit hypercube `[0,1]^n` as a single positively oriented box.
    pub fn unit_cube(n: usize) -> Self {
        Self::from_cell(BoxCell::unit_cube(n))
    }

    pub fn push(&mut self, weight: Rational, cell: impl Into<Cell>) -> Result<()> {
        let cell = cell.into();
        check_dim(self.n, cell.ambient())?;
        if cell.dim() != self.k {
            return Err(invalid(format!("cell of dimension {} in a chain of {}-cells", cell.dim(), self.k)));
        }
        self.terms.push((weight, cell));
        Ok(())
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[(Rational, Cell)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { n: self.n, k: self.k, terms: self.terms.iter().map(|(w, cell)| (w * c, cell.clone())).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.n, other.n)?;
        check_degree(self.k, other.k)?;
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        Ok(out)
    }

    /// Merge identical cells and drop zero weights, keeping first-occurrence order.
    pub fn simplified(&self) -> Self {
        let mut slot: BTreeMap<&Cell, usize> = BTreeMap::new();
        let mut merged: Vec<(Rational, Cell)> = Vec::new();
        for (w, cell) in &self.terms {
            match slot.get(cell) {
                Some(&i) => merged[i].0 += w,
                None => {
                    slot.insert(cell, merged.len());
                    merged.push((w.clone(), cell.clone()));
                }
            }
        }
        merged.retain(|(w, _)| !w.is_zero());
        Self { n: self.n, k: self.k, terms: merged }
    }
}

/// Boundary of a chain of `k`-cells, `k ≥ 1`, with like cells collected.
pub fn boundary(chain: &Chain) -> Result<Chain> {
    if chain.k == 0 {
        return Err(invalid("boundary of a chain of 0-cells is undefined"));
    }
    let mut out = Chain::empty(chain.n, chain.k - 1);
    for (w, cell) in &chain.terms {
        for (sign, face) in cell.faces() {
            let fw = if sign < 0 { -w.clone() } else { w.clone() };
            out.terms.push((fw, face));
        }
    }
    Ok(out.simplified())
}

/// `Σ weight · ∫_cell ω`, exact.
pub fn integrate(form: &PolyForm, chain: &Chain) -> Result<Rational> {
    check_dim(chain.n, form.ambient())?;
    check_degree(chain.k, form.degree())?;
    let mut total = Rational::zero();
    for (w, cell) in &chain.terms {
        if w.is_zero() {
            continue;
        }
        total += w * cell.integrate(form)?;
    }
    Ok(total)
}

/// Both sides of `∫_{∂c} ω = ∫_c dω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StokesCheck {
    pub lhs: Rational,
    pub rhs: Rational,
    pub equal: bool,
}

pub fn stokes_check(form: &PolyForm, chain: &Chain) -> Result<StokesCheck> {
    check_degree(chain.k, form.degree() + 1)?;
    let lhs = integrate(form, &boundary(chain)?)?;
    let rhs = integrate(&exterior_derivative(form), chain)?;
    let equal = lhs == rhs;
    Ok(StokesCheck { lhs, rhs, equal })
}

/// Flux of a vector field in `R^3` through a chain of 2-cells, via its flux form.
pub fn flux(h: &PolyVectorField, surface: &Chain) -> Result<Rational> {
    check_dim(3, surface.n)?;
    integrate(&vec_to_2form(h)?, surface)
}
