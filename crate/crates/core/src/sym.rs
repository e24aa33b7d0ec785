//! The symmetric algebra `S(V)`: sparse commutative polynomials with exact
//! rational coefficients, graded pieces, and the algebra maps induced by
//! linear maps and derivations of `V`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{CosetSetup, LieAlgebra};
use crate::linalg::{format_rational, inverse, Matrix, Rational};

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographically with the first variable largest.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self(e)
    }

    /// Monomial with the given letters (indices may repeat).
    pub fn from_letters(nvars: usize, letters: &[usize]) -> Self {
        let mut e = vec![0; nvars];
        for &l in letters {
            e[l] += 1;
        }
        Self(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    /// Letters in increasing index order, each repeated by its exponent.
    pub fn letters(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect()
    }

    pub fn first_var(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub(crate) fn bumped(&self, i: usize, by: i64) -> Self {
        let mut e = self.0.clone();
        e[i] = (e[i] as i64 + by) as u32;
        Self(e)
    }

    /// Restriction to the first `k` variables.
    pub fn truncated(&self, k: usize) -> Self {
        Self(self.0[..k].to_vec())
    }

    /// Extension by zeros to `nvars` variables.
    pub fn padded(&self, nvars: usize) -> Self {
        let mut e = self.0.clone();
        e.resize(nvars, 0);
        Self(e)
    }

    /// `X1^2*X2` style, with exponents of one written out when `explicit`.
    pub(crate) fn render(&self, names: &[String], explicit_ones: bool) -> String {
        let mut out = String::new();
        for (name, &e) in names.iter().zip(&self.0).filter(|(_, &e)| e > 0) {
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(name);
            if e > 1 || explicit_ones {
                let _ = write!(out, "^{e}");
            }
        }
        out
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

pub(crate) type Terms = BTreeMap<Monomial, Rational>;

pub(crate) fn add_term(terms: &mut Terms, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub(crate) fn add_scaled(terms: &mut Terms, other: &Terms, f: &Rational) {
    if f.is_zero() {
        return;
    }
    for (m, c) in other {
        add_term(terms, m.clone(), c * f);
    }
}

/// Terms rendered highest monomial first, `1/2*H^2 + H` style.
pub(crate) fn render_terms(terms: &Terms, names: &[String], explicit: bool) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (m, c) in terms.iter().rev() {
        let neg = *c < Rational::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let body = m.render(names, explicit);
        if body.is_empty() {
            out.push_str(&format_rational(&abs));
        } else {
            if explicit || !abs.is_one() {
                out.push_str(&format_rational(&abs));
                out.push('*');
            }
            out.push_str(&body);
        }
    }
    out
}

/// Element of a symmetric algebra in `nvars` variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymPoly {
    nvars: usize,
    terms: Terms,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: Terms::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        add_term(&mut p.terms, Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(m.nvars());
        add_term(&mut p.terms, m, c);
        p
    }

    /// Degree-one polynomial `Σ v_i X_i`.
    pub fn linear(v: &[Rational]) -> Self {
        let n = v.len();
        let mut p = Self::zero(n);
        for (i, c) in v.iter().enumerate() {
            add_term(&mut p.terms, Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial has wrong number of variables");
            add_term(&mut p.terms, m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        add_scaled(&mut out.terms, &self.terms, c);
        out
    }

    fn check_parent(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::ParentMismatch(self.nvars, other.nvars))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_parent(other)?;
        let mut out = self.clone();
        add_scaled(&mut out.terms, &other.terms, &Rational::one());
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_parent(other)?;
        let mut out = self.clone();
        add_scaled(&mut out.terms, &other.terms, &-Rational::one());
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_parent(other)?;
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                add_term(&mut out.terms, ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    /// The algebra homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[SymPoly]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: images.len() });
        }
        let target = images.first().map_or(0, SymPoly::nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::ParentMismatch(target, bad.nvars));
        }
        let mut out = Self::zero(target);
        // powers of each image, built lazily
        let mut powers: Vec<Vec<SymPoly>> = images.iter().map(|p| vec![Self::one(target), p.clone()]).collect();
        for (m, c) in &self.terms {
            let mut prod = Self::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                prod = &prod * &powers[i][e as usize];
            }
            add_scaled(&mut out.terms, &prod.terms, &Rational::one());
        }
        Ok(out)
    }

    /// The derivation sending variable `i` to `images[i]`.
    pub fn derive(&self, images: &[SymPoly]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: images.len() });
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 || images[i].is_zero() {
                    continue;
                }
                let rest = Self::monomial(m.bumped(i, -1), c * Rational::from_integer(e.into()));
                let t = rest.try_mul(&images[i])?;
                add_scaled(&mut out.terms, &t.terms, &Rational::one());
            }
        }
        Ok(out)
    }

    /// Embedding of `S(V')` into `S(V)` for `V'` spanned by the first
    /// variables of `V`.
    pub fn embed(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        Self { nvars, terms: self.terms.iter().map(|(m, c)| (m.padded(nvars), c.clone())).collect() }
    }

    /// Sets every variable from index `k` on to zero and drops them.
    pub fn restrict(&self, k: usize) -> Self {
        Self {
            nvars: k,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exps()[k..].iter().all(|&e| e == 0))
                .map(|(m, c)| (m.truncated(k), c.clone()))
                .collect(),
        }
    }

    /// Coefficient vector over the given monomial list.
    pub fn coordinates(&self, basis: &[Monomial]) -> Vec<Rational> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }

    pub fn render(&self, names: &[String]) -> String {
        render_terms(&self.terms, names, false)
    }
}

impl Add for &SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        self.try_add(rhs).expect("parent mismatch")
    }
}

impl Sub for &SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: &SymPoly) -> SymPoly {
        self.try_sub(rhs).expect("parent mismatch")
    }
}

impl Mul for &SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: &SymPoly) -> SymPoly {
        self.try_mul(rhs).expect("parent mismatch")
    }
}

impl Neg for &SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        self.scale(&-Rational::one())
    }
}

/// Extension of `σ: g → m` to an algebra homomorphism `S(g) → S(m)`.
/// `p` is in `g`-coordinates (the algebra's own basis).
pub fn sigma_hom(setup: &CosetSetup, p: &SymPoly) -> Result<SymPoly> {
    let n = setup.n();
    if p.nvars() != n {
        return Err(Error::ParentMismatch(n, p.nvars()));
    }
    let images: Vec<SymPoly> = (0..n)
        .map(|i| {
            let s = crate::lie::sigma(setup, &crate::lie::one_hot(n, i)).expect("dimension checked");
            SymPoly::linear(&s)
        })
        .collect();
    p.substitute(&images)
}

/// `σ` on polynomials already in adapted coordinates: the `h`-variables
/// are sent to zero.
pub fn sigma_adapted(setup: &CosetSetup, p: &SymPoly) -> SymPoly {
    p.restrict(setup.r())
}

/// Derivation of `S(g)` extending `Y ↦ [x, Y]`.
pub fn ad_derivation(alg: &LieAlgebra, x: &[Rational], p: &SymPoly) -> Result<SymPoly> {
    let n = alg.dim();
    if p.nvars() != n {
        return Err(Error::ParentMismatch(n, p.nvars()));
    }
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: x.len() });
    }
    let images: Vec<SymPoly> =
        (0..n).map(|i| SymPoly::linear(&alg.bracket_unchecked(x, &crate::lie::one_hot(n, i)))).collect();
    p.derive(&images)
}

/// Automorphism of `S(g)` extending the invertible linear map `a` (acting on
/// coordinate columns).
pub fn ad_group(alg: &LieAlgebra, a: &Matrix, p: &SymPoly) -> Result<SymPoly> {
    let n = alg.dim();
    if a.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: a.len() });
    }
    if inverse(a).is_none() {
        return Err(Error::SingularMatrix);
    }
    linear_substitution(a, p)
}

/// Substitutes `X_i ↦ Σ_k a[k][i] X_k`.
pub fn linear_substitution(a: &Matrix, p: &SymPoly) -> Result<SymPoly> {
    let n = p.nvars();
    let images: Vec<SymPoly> =
        (0..n).map(|i| SymPoly::linear(&a.iter().map(|row| row[i].clone()).collect::<Vec<_>>())).collect();
    p.substitute(&images)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeMode {
    Homogeneous,
    UpTo,
}

/// Monomials of degree `d` (or `≤ d`). Within a degree the order is
/// descending lexicographic; `UpTo` lists degrees in increasing order.
pub fn monomial_basis(nvars: usize, d: usize, mode: DegreeMode) -> Vec<Monomial> {
    match mode {
        DegreeMode::Homogeneous => {
            let mut out = Vec::new();
            let mut cur = vec![0u32; nvars];
            fill(&mut out, &mut cur, 0, d as u32);
            out
        }
        DegreeMode::UpTo => (0..=d).flat_map(|k| monomial_basis(nvars, k, DegreeMode::Homogeneous)).collect(),
    }
}

fn fill(out: &mut Vec<Monomial>, cur: &mut Vec<u32>, i: usize, left: u32) {
    if cur.is_empty() {
        if left == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    if i == cur.len() - 1 {
        cur[i] = left;
        out.push(Monomial(cur.clone()));
        cur[i] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[i] = e;
        fill(out, cur, i + 1, left - e);
    }
    cur[i] = 0;
}
