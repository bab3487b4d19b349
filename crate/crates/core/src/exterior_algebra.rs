//! Pointwise antisymmetric tensor algebra.
//!
//! An antisymmetric `r`-tensor on `R^n` is stored by its components on
//! strictly increasing multi-indices; every other component follows by
//! sorting the indices and applying the sign of the sorting permutation.
//! Axes are numbered from 1.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{check_degree, check_dim, invalid, Result};
use crate::rational::{determinant, factorial, Rational};

/// Strictly increasing tuple of axis indices, all at least 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    /// Validates that the axes are at least 1 and strictly increasing.
    pub fn new(axes: Vec<usize>) -> Result<Self> {
        if axes.contains(&0) {
            return Err(invalid(format!("axis 0 in {axes:?}; axes start at 1")));
        }
        if axes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid(format!("multi-index {axes:?} is not strictly increasing")));
        }
        Ok(Self(axes))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub(crate) fn from_sorted(axes: Vec<usize>) -> Self {
        debug_assert!(axes.windows(2).all(|w| w[0] < w[1]));
        Self(axes)
    }

    /// Sort an arbitrary index tuple. Returns the permutation sign and the
    /// canonical index, or `None` when an axis repeats.
    pub fn canonicalize(axes: &[usize]) -> Option<(i8, MultiIndex)> {
        let mut v = axes.to_vec();
        let mut sign = 1i8;
        // insertion sort, counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) || v.contains(&0) {
            return None;
        }
        Some((sign, MultiIndex(v)))
    }

    pub fn axes(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn max_axis(&self) -> usize {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn contains(&self, axis: usize) -> bool {
        self.0.binary_search(&axis).is_ok()
    }

    /// Sign of the shuffle that sorts the concatenation `self ++ other`, or
    /// `None` if the two share an axis.
    pub fn shuffle(&self, other: &MultiIndex) -> Option<(i8, MultiIndex)> {
        let mut inversions = 0usize;
        let mut merged = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    merged.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    // other[j] jumps over the remaining entries of self
                    inversions += self.0.len() - i;
                    merged.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        merged.extend_from_slice(&self.0[i..]);
        merged.extend_from_slice(&other.0[j..]);
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, MultiIndex(merged)))
    }

    /// Index with `axis` inserted, together with `(-1)^(entries preceding axis)`.
    pub fn insert(&self, axis: usize) -> Option<(i8, MultiIndex)> {
        match self.0.binary_search(&axis) {
            Ok(_) => None,
            Err(pos) => {
                let mut v = self.0.clone();
                v.insert(pos, axis);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                Some((sign, MultiIndex(v)))
            }
        }
    }

    /// Complementary axes in `1..=n`.
    pub fn complement(&self, n: usize) -> MultiIndex {
        MultiIndex((1..=n).filter(|a| !self.contains(*a)).collect())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// All strictly increasing `r`-tuples drawn from `1..=n`, in lexicographic order.
pub fn multi_indices(n: usize, r: usize) -> Vec<MultiIndex> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
        if left == 0 {
            out.push(MultiIndex(cur.clone()));
            return;
        }
        for a in start..=n {
            if n - a + 1 < left {
                break;
            }
            cur.push(a);
            rec(a + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= n {
        rec(1, n, r, &mut Vec::with_capacity(r), &mut out);
    }
    out
}

/// Number of independent components of an antisymmetric `r`-tensor on `R^n`.
pub fn alt_dimension(n: i64, r: i64) -> Result<u64> {
    if n < 0 || r < 0 {
        return Err(invalid(format!("alt_dimension({n}, {r}): arguments must be non-negative")));
    }
    if r > n {
        return Ok(0);
    }
    let (n, r) = (n as u64, r.min(n - r) as u64);
    // multiplicative binomial keeps every intermediate value integral
    Ok((0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1)))
}

/// Antisymmetric `r`-tensor on `R^n` with exact components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltTensor {
    n: usize,
    r: usize,
    coeffs: BTreeMap<MultiIndex, Rational>,
}

impl AltTensor {
    pub fn zero(n: usize, r: usize) -> Self {
        Self { n, r, coeffs: BTreeMap::new() }
    }

    /// Tensor with components on the given canonical indices. Repeated
    /// indices accumulate.
    pub fn from_components<I>(n: usize, r: usize, components: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut t = Self::zero(n, r);
        for (idx, c) in components {
            check_degree(r, idx.degree())?;
            if idx.max_axis() > n {
                return Err(invalid(format!("index {idx} exceeds ambient dimension {n}")));
            }
            t.add_to(idx, c);
        }
        Ok(t)
    }

    /// Basis covector-wedge `dx^{a1} ∧ ... ∧ dx^{ar}` for increasing axes.
    pub fn basis(n: usize, axes: &[usize]) -> Result<Self> {
        let idx = MultiIndex::new(axes.to_vec())?;
        Self::from_components(n, axes.len(), [(idx, Rational::one())])
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        let mut t = Self::zero(n, 0);
        t.add_to(MultiIndex::empty(), c);
        t
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, idx: &MultiIndex) -> Rational {
        self.coeffs.get(idx).cloned().unwrap_or_else(Rational::zero)
    }

    /// Component on an arbitrary (possibly unsorted) index tuple.
    pub fn component(&self, axes: &[usize]) -> Rational {
        match MultiIndex::canonicalize(axes) {
            Some((sign, idx)) => {
                let c = self.coefficient(&idx);
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
            None => Rational::zero(),
        }
    }

    pub(crate) fn add_to(&mut self, idx: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(idx) {
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
            return Self::zero(self.n, self.r);
        }
        Self {
            n: self.n,
            r: self.r,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.n, other.n)?;
        check_degree(self.r, other.r)?;
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_to(k.clone(), v.clone());
        }
        Ok(out)
    }

    /// Expand to all permuted index tuples with permutation signs.
    pub fn embed(&self) -> DenseTensor {
        let mut dense = DenseTensor::zero(self.n, self.r);
        for (idx, c) in &self.coeffs {
            for (sign, perm) in signed_permutations(idx.axes()) {
                let v = if sign < 0 { -c.clone() } else { c.clone() };
                dense.entries.insert(perm, v);
            }
        }
        dense
    }
}

/// General (not necessarily antisymmetric) `r`-tensor on `R^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseTensor {
    n: usize,
    r: usize,
    entries: BTreeMap<Vec<usize>, Rational>,
}

impl DenseTensor {
    pub fn zero(n: usize, r: usize) -> Self {
        Self { n, r, entries: BTreeMap::new() }
    }

    pub fn from_entries<I>(n: usize, r: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Rational)>,
    {
        let mut t = Self::zero(n, r);
        for (key, v) in entries {
            check_degree(r, key.len())?;
            if key.iter().any(|&a| a == 0 || a > n) {
                return Err(invalid(format!("tensor key {key:?} out of range 1..={n}")));
            }
            if !v.is_zero() {
                *t.entries.entry(key).or_insert_with(Rational::zero) += v;
            }
        }
        t.entries.retain(|_, v| !v.is_zero());
        Ok(t)
    }

    /// Tensor product of two antisymmetric tensors, as a general tensor.
    pub fn tensor_product(a: &AltTensor, b: &AltTensor) -> Result<Self> {
        check_dim(a.n, b.n)?;
        let (ea, eb) = (a.embed(), b.embed());
        let mut out = Self::zero(a.n, a.r + b.r);
        for (ka, va) in &ea.entries {
            for (kb, vb) in &eb.entries {
                let mut key = ka.clone();
                key.extend_from_slice(kb);
                out.entries.insert(key, va * vb);
            }
        }
        Ok(out)
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.entries.iter()
    }

    pub fn entry(&self, key: &[usize]) -> Rational {
        self.entries.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Multilinear evaluation on `r` vectors.
    pub fn evaluate(&self, vectors: &[Vec<Rational>]) -> Result<Rational> {
        check_vectors(self.n, self.r, vectors)?;
        let mut sum = Rational::zero();
        for (key, v) in &self.entries {
            let mut term = v.clone();
            for (slot, &axis) in key.iter().enumerate() {
                term *= &vectors[slot][axis - 1];
            }
            sum += term;
        }
        Ok(sum)
    }
}

/// The alternation projection: signed average over index permutations.
pub fn alternate(t: &DenseTensor) -> AltTensor {
    let mut out = AltTensor::zero(t.n, t.r);
    let norm = Rational::from_integer(factorial(t.r));
    for (key, v) in &t.entries {
        if let Some((sign, idx)) = MultiIndex::canonicalize(key) {
            let c = v / &norm;
            out.add_to(idx, if sign < 0 { -c } else { c });
        }
    }
    out
}

/// Exterior product, normalised so that `dx^1 ∧ dx^2` evaluates to 1 on `(e1, e2)`.
///
/// Degrees summing past `n` give the zero tensor of that degree.
pub fn wedge(a: &AltTensor, b: &AltTensor) -> Result<AltTensor> {
    check_dim(a.n, b.n)?;
    let mut out = AltTensor::zero(a.n, a.r + b.r);
    if a.r + b.r > a.n {
        return Ok(out);
    }
    for (ia, va) in &a.coeffs {
        for (ib, vb) in &b.coeffs {
            if let Some((sign, k)) = ia.shuffle(ib) {
                let c = va * vb;
                out.add_to(k, if sign < 0 { -c } else { c });
            }
        }
    }
    Ok(out)
}

/// Value of `t` on `r` vectors: sum of components times the minors of the
/// vector matrix on the component's rows.
pub fn evaluate(t: &AltTensor, vectors: &[Vec<Rational>]) -> Result<Rational> {
    check_vectors(t.n, t.r, vectors)?;
    let mut sum = Rational::zero();
    for (idx, c) in &t.coeffs {
        sum += c * minor(vectors, idx);
    }
    Ok(sum)
}

/// Determinant of the `r×r` block of the `n×r` matrix with the given vectors
/// as columns, restricted to the rows in `idx`.
pub(crate) fn minor(vectors: &[Vec<Rational>], idx: &MultiIndex) -> Rational {
    let rows: Vec<Vec<Rational>> = idx
        .axes()
        .iter()
        .map(|&axis| vectors.iter().map(|v| v[axis - 1].clone()).collect())
        .collect();
    determinant(&rows)
}

fn check_vectors(n: usize, r: usize, vectors: &[Vec<Rational>]) -> Result<()> {
    if vectors.len() != r {
        return Err(invalid(format!("expected {r} vectors, got {}", vectors.len())));
    }
    for v in vectors {
        check_dim(n, v.len())?;
    }
    Ok(())
}

/// Every permutation of `axes`, with its sign.
pub(crate) fn signed_permutations(axes: &[usize]) -> Vec<(i8, Vec<usize>)> {
    // Heap's algorithm; each swap flips the sign
    let mut out = Vec::new();
    let mut a = axes.to_vec();
    let k = a.len();
    let mut c = vec![0usize; k];
    let mut sign = 1i8;
    out.push((sign, a.clone()));
    let mut i = 1;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            sign = -sign;
            out.push((sign, a.clone()));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `(r+p)! / (r! p!)`, the factor relating the wedge to the alternated tensor product.
pub fn wedge_normalization(r: usize, p: usize) -> Rational {
    Rational::new(factorial(r + p), factorial(r) * factorial(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};
    use proptest::prelude::*;

    fn idx(a: &[usize]) -> MultiIndex {
        MultiIndex::new(a.to_vec()).unwrap()
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(alt_dimension(4, 0).unwrap(), 1);
        assert_eq!(alt_dimension(4, 1).unwrap(), 4);
        assert_eq!(alt_dimension(5, 3).unwrap(), 10);
        assert_eq!(alt_dimension(3, 4).unwrap(), 0);
        assert!(alt_dimension(-1, 0).is_err());
        assert!(alt_dimension(2, -3).is_err());
    }

    #[test]
    fn multi_index_validation() {
        assert!(MultiIndex::new(vec![2, 1]).is_err());
        assert!(MultiIndex::new(vec![1, 1]).is_err());
        assert!(MultiIndex::new(vec![0, 1]).is_err());
        assert_eq!(MultiIndex::canonicalize(&[3, 1, 2]), Some((1, idx(&[1, 2, 3]))));
        assert_eq!(MultiIndex::canonicalize(&[2, 1]), Some((-1, idx(&[1, 2]))));
        assert_eq!(MultiIndex::canonicalize(&[2, 2]), None);
    }

    #[test]
    fn enumeration_is_increasing_and_counted() {
        for n in 0..=8 {
            for r in 0..=n {
                let all = multi_indices(n, r);
                assert_eq!(all.len() as u64, alt_dimension(n as i64, r as i64).unwrap());
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn alternation_examples() {
        let t = DenseTensor::from_entries(2, 2, [(vec![1, 1], rat(1))]).unwrap();
        assert!(alternate(&t).is_zero());

        let t = DenseTensor::from_entries(2, 2, [(vec![1, 2], rat(1))]).unwrap();
        let alt = alternate(&t);
        assert_eq!(alt, AltTensor::from_components(2, 2, [(idx(&[1, 2]), frac(1, 2))]).unwrap());

        let w = AltTensor::from_components(3, 2, [(idx(&[1, 3]), rat(5))]).unwrap();
        assert_eq!(alternate(&w.embed()), w);
    }

    #[test]
    fn wedge_examples() {
        let dx1 = AltTensor::basis(3, &[1]).unwrap();
        let dx2 = AltTensor::basis(3, &[2]).unwrap();
        let w = wedge(&dx1, &dx2).unwrap();
        let e1 = vec![rat(1), rat(0), rat(0)];
        let e2 = vec![rat(0), rat(1), rat(0)];
        assert_eq!(evaluate(&w, &[e1, e2]).unwrap(), rat(1));
        assert_eq!(wedge(&dx2, &dx1).unwrap(), w.scale(&rat(-1)));
        assert!(wedge(&w, &AltTensor::zero(3, 1)).unwrap().is_zero());
        assert!(wedge(&dx1, &AltTensor::zero(4, 1)).is_err());
        // degree overflow gives the zero tensor of that degree
        let top = wedge(&w, &w).unwrap();
        assert!(top.is_zero());
        assert_eq!(top.degree(), 4);
    }

    #[test]
    fn evaluation_examples() {
        let w = AltTensor::basis(3, &[1, 2]).unwrap();
        let v1 = vec![rat(2), rat(3), rat(7)];
        let v2 = vec![rat(5), rat(-1), rat(4)];
        assert_eq!(evaluate(&w, &[v1.clone(), v2.clone()]).unwrap(), rat(-2 - 3 * 5));
        assert_eq!(evaluate(&w, &[v1.clone(), v1.clone()]).unwrap(), rat(0));
        assert_eq!(evaluate(&AltTensor::scalar(3, frac(2, 3)), &[]).unwrap(), frac(2, 3));
        assert!(evaluate(&w, std::slice::from_ref(&v1)).is_err());
        assert!(evaluate(&w, &[v1, vec![rat(1)]]).is_err());
    }

    #[test]
    fn heap_permutations_have_correct_signs() {
        let perms = signed_permutations(&[1, 2, 3, 4]);
        assert_eq!(perms.len(), 24);
        for (sign, p) in perms {
            assert_eq!(MultiIndex::canonicalize(&p).unwrap().0, sign);
        }
    }

    fn arb_tensor(n: usize, r: usize) -> impl Strategy<Value = AltTensor> {
        let keys = multi_indices(n, r);
        proptest::collection::vec((-4i64..=4, 1i64..=3), keys.len()).prop_map(move |cs| {
            AltTensor::from_components(
                n,
                r,
                keys.iter().cloned().zip(cs.into_iter().map(|(a, b)| frac(a, b))),
            )
            .unwrap()
        })
    }

    fn arb_pair() -> impl Strategy<Value = (AltTensor, AltTensor, AltTensor)> {
        (1usize..=6)
            .prop_flat_map(|n| (Just(n), 0..=n, 0..=n, 0..=n))
            .prop_flat_map(|(n, r, p, q)| (arb_tensor(n, r), arb_tensor(n, p), arb_tensor(n, q)))
    }

    proptest! {
        #[test]
        fn graded_commutativity((a, b, _c) in arb_pair()) {
            let sign = if (a.degree() * b.degree()) % 2 == 0 { rat(1) } else { rat(-1) };
            prop_assert_eq!(wedge(&a, &b).unwrap(), wedge(&b, &a).unwrap().scale(&sign));
        }

        #[test]
        fn associativity((a, b, c) in arb_pair()) {
            let left = wedge(&wedge(&a, &b).unwrap(), &c).unwrap();
            let right = wedge(&a, &wedge(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn alternation_is_idempotent(
            entries in proptest::collection::vec((proptest::collection::vec(1usize..=4, 3), -5i64..=5), 0..12)
        ) {
            let t = DenseTensor::from_entries(4, 3, entries.into_iter().map(|(k, v)| (k, rat(v)))).unwrap();
            let once = alternate(&t);
            prop_assert_eq!(alternate(&once.embed()), once);
        }
    }
}
