//! The universal enveloping algebra `U(g)` in a PBW basis.
//!
//! Elements are combinations of ordered monomials `X_1^{e_1}···X_n^{e_n}` in
//! the basis order of the underlying [`LieAlgebra`]. For a coset setup that
//! algebra is the adapted one, so `m`-letters come first and `h`-letters last.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, Rational};
use crate::sym::{add_scaled, add_term, render_terms, Monomial, SymPoly, Terms};

/// Default cap on the degree accepted by the permutation-sum symmetrization.
pub const SYMMETRIZE_DEGREE_CAP: usize = 6;

/// Element of `U(g)` in PBW normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PbwElement {
    nvars: usize,
    terms: Terms,
}

impl PbwElement {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: Terms::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::scalar(nvars, Rational::one())
    }

    pub fn scalar(nvars: usize, c: Rational) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut t = Terms::new();
        let nvars = m.nvars();
        add_term(&mut t, m, c);
        Self { nvars, terms: t }
    }

    /// Degree-one element `Σ x_i X_i`.
    pub fn from_vector(x: &[Rational]) -> Self {
        let n = x.len();
        let mut t = Terms::new();
        for (i, c) in x.iter().enumerate() {
            add_term(&mut t, Monomial::var(n, i), c.clone());
        }
        Self { nvars: n, terms: t }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut t = Terms::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial has wrong number of variables");
            add_term(&mut t, m, c);
        }
        Self { nvars, terms: t }
    }

    pub(crate) fn from_raw(nvars: usize, terms: Terms) -> Self {
        Self { nvars, terms }
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

    /// Filtration degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut t = Terms::new();
        add_scaled(&mut t, &self.terms, c);
        Self { nvars: self.nvars, terms: t }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &-Rational::one())
    }

    pub fn add_scaled(&self, other: &Self, f: &Rational) -> Self {
        assert_eq!(self.nvars, other.nvars, "parent mismatch");
        let mut out = self.clone();
        add_scaled(&mut out.terms, &other.terms, f);
        out
    }

    /// The homogeneous top-degree part read as a commutative polynomial
    /// (the principal symbol).
    pub fn symbol(&self) -> SymPoly {
        match self.degree() {
            None => SymPoly::zero(self.nvars),
            Some(d) => SymPoly::from_terms(
                self.nvars,
                self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())),
            ),
        }
    }

    /// `c*X^e*Y^f` style with explicit coefficients and exponents.
    pub fn render(&self, names: &[String]) -> String {
        render_terms(&self.terms, names, true)
    }
}

/// Rewriting order used by the reference normalizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteStrategy {
    LeftmostPair,
    RightmostPair,
}

type Cache<K> = Mutex<HashMap<K, Arc<Terms>>>;

/// Multiplication engine for `U(g)` with memoized products. The caches are
/// write-once: every writer computes the same value for a key.
pub struct Enveloping {
    alg: LieAlgebra,
    gen_cache: Cache<(usize, Monomial)>,
    sym_cache: Cache<Monomial>,
}

impl fmt::Debug for Enveloping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Enveloping").field("alg", &self.alg).finish_non_exhaustive()
    }
}

impl Enveloping {
    pub fn new(alg: LieAlgebra) -> Self {
        Self { alg, gen_cache: Mutex::default(), sym_cache: Mutex::default() }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    fn cached<K: std::hash::Hash + Eq + Clone>(cache: &Cache<K>, key: &K) -> Option<Arc<Terms>> {
        cache.lock().expect("cache poisoned").get(key).cloned()
    }

    fn store<K: std::hash::Hash + Eq>(cache: &Cache<K>, key: K, value: Terms) -> Arc<Terms> {
        let value = Arc::new(value);
        cache.lock().expect("cache poisoned").entry(key).or_insert(value).clone()
    }

    /// `X_k · X^mono` in normal form.
    ///
    /// With `j` the first letter of `mono`, `X_k X_j R = X_j (X_k R) + [X_k, X_j] R`
    /// whenever `k > j`; the recursion terminates on degree and inversions.
    fn gen_times_monomial(&self, k: usize, mono: &Monomial) -> Arc<Terms> {
        let key = (k, mono.clone());
        if let Some(t) = Self::cached(&self.gen_cache, &key) {
            return t;
        }
        let mut out = Terms::new();
        match mono.first_var() {
            Some(j) if k > j => {
                let rest = mono.bumped(j, -1);
                let inner = self.gen_times_monomial(k, &rest);
                for (m, c) in inner.iter() {
                    add_scaled(&mut out, &self.gen_times_monomial(j, m), c);
                }
                for (l, c) in self.alg.basis_bracket(k, j) {
                    add_scaled(&mut out, &self.gen_times_monomial(*l, &rest), c);
                }
            }
            _ => {
                out.insert(mono.bumped(k, 1), Rational::one());
            }
        }
        Self::store(&self.gen_cache, key, out)
    }

    fn gen_times(&self, k: usize, u: &Terms) -> Terms {
        let mut out = Terms::new();
        for (m, c) in u {
            add_scaled(&mut out, &self.gen_times_monomial(k, m), c);
        }
        out
    }

    /// Normal form of `coef · X_{w_1} ··· X_{w_k}`.
    pub fn normalize_word(&self, coef: &Rational, word: &[usize]) -> Result<PbwElement> {
        let n = self.dim();
        if let Some(&bad) = word.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: bad, dim: n });
        }
        let mut cur = Terms::new();
        add_term(&mut cur, Monomial::one(n), coef.clone());
        for &k in word.iter().rev() {
            cur = self.gen_times(k, &cur);
        }
        Ok(PbwElement::from_raw(n, cur))
    }

    /// Reference normalizer: rewrites adjacent out-of-order pairs
    /// `X_b X_a → X_a X_b + [X_b, X_a]` until every word is ordered.
    pub fn pbw_normalize(&self, words: &[(Rational, Vec<usize>)], strategy: RewriteStrategy) -> Result<PbwElement> {
        let n = self.dim();
        let mut pending: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        let push = |pending: &mut BTreeMap<Vec<usize>, Rational>, w: Vec<usize>, c: Rational| {
            if c.is_zero() {
                return;
            }
            let e = pending.entry(w).or_insert_with(Rational::zero);
            *e += c;
        };
        for (c, w) in words {
            if let Some(&bad) = w.iter().find(|&&i| i >= n) {
                return Err(Error::IndexOutOfRange { index: bad, dim: n });
            }
            push(&mut pending, w.clone(), c.clone());
        }
        let mut done = Terms::new();
        // longest words first so that lower-order remainders accumulate
        // before they are processed
        while let Some(w) = pending.keys().max_by_key(|w| w.len()).cloned() {
            let c = pending.remove(&w).expect("key present");
            if c.is_zero() {
                continue;
            }
            let mut inversions = (0..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i + 1]);
            let pos = match strategy {
                RewriteStrategy::LeftmostPair => inversions.next(),
                RewriteStrategy::RightmostPair => inversions.next_back(),
            };
            match pos {
                None => add_term(&mut done, Monomial::from_letters(n, &w), c),
                Some(i) => {
                    let (b, a) = (w[i], w[i + 1]);
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    push(&mut pending, swapped, c.clone());
                    for (l, k) in self.alg.basis_bracket(b, a) {
                        let mut shorter = Vec::with_capacity(w.len() - 1);
                        shorter.extend_from_slice(&w[..i]);
                        shorter.push(*l);
                        shorter.extend_from_slice(&w[i + 2..]);
                        push(&mut pending, shorter, &c * k);
                    }
                }
            }
        }
        Ok(PbwElement::from_raw(n, done))
    }

    pub fn mul(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        assert_eq!(a.nvars, self.dim(), "parent mismatch");
        assert_eq!(b.nvars, self.dim(), "parent mismatch");
        let mut out = Terms::new();
        for (m, c) in &a.terms {
            let mut cur = b.terms.clone();
            for k in m.letters().into_iter().rev() {
                cur = self.gen_times(k, &cur);
            }
            add_scaled(&mut out, &cur, c);
        }
        PbwElement::from_raw(self.dim(), out)
    }

    pub fn try_mul(&self, a: &PbwElement, b: &PbwElement) -> Result<PbwElement> {
        for x in [a, b] {
            if x.nvars != self.dim() {
                return Err(Error::ParentMismatch(self.dim(), x.nvars));
            }
        }
        Ok(self.mul(a, b))
    }

    pub fn commutator(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    /// `λ(X^e)` via `λ(X^e) = (1/|e|) Σ_k e_k X_k λ(X^{e-δ_k})`, which is the
    /// permutation average grouped by first letter.
    fn symmetrize_monomial(&self, m: &Monomial) -> Arc<Terms> {
        if let Some(t) = Self::cached(&self.sym_cache, m) {
            return t;
        }
        let d = m.degree();
        let mut out = Terms::new();
        if d == 0 {
            out.insert(m.clone(), Rational::one());
        } else {
            let inv_d = Rational::new(BigInt::one(), BigInt::from(d));
            for (k, &e) in m.exps().iter().enumerate().filter(|(_, &e)| e > 0) {
                let lower = self.symmetrize_monomial(&m.bumped(k, -1));
                let f = &inv_d * Rational::from_integer(BigInt::from(e));
                add_scaled(&mut out, &self.gen_times(k, &lower), &f);
            }
        }
        Self::store(&self.sym_cache, m.clone(), out)
    }

    /// The symmetrization map `λ: S(g) → U(g)`.
    pub fn symmetrize(&self, p: &SymPoly) -> PbwElement {
        assert_eq!(p.nvars(), self.dim(), "parent mismatch");
        let mut out = Terms::new();
        for (m, c) in p.terms() {
            add_scaled(&mut out, &self.symmetrize_monomial(m), c);
        }
        PbwElement::from_raw(self.dim(), out)
    }

    /// `λ` evaluated literally as the average over all orderings of each
    /// monomial's letters, normalized by the rewriting normalizer.
    pub fn symmetrize_by_permutations(&self, p: &SymPoly, cap: usize) -> Result<PbwElement> {
        let n = self.dim();
        if p.nvars() != n {
            return Err(Error::ParentMismatch(n, p.nvars()));
        }
        let mut out = PbwElement::zero(n);
        for (m, c) in p.terms() {
            if m.degree() > cap {
                return Err(Error::DegreeCap { degree: m.degree(), cap });
            }
            let perms = multiset_permutations(m.letters());
            let weight = c / Rational::from_integer(BigInt::from(perms.len()));
            let words: Vec<(Rational, Vec<usize>)> = perms.into_iter().map(|w| (weight.clone(), w)).collect();
            out = out.add(&self.pbw_normalize(&words, RewriteStrategy::LeftmostPair)?);
        }
        Ok(out)
    }

    /// Inverse of `λ` by triangular descent on the filtration degree.
    pub fn lambda_coords(&self, u: &PbwElement) -> SymPoly {
        let mut rest = u.clone();
        let mut out = SymPoly::zero(self.dim());
        while !rest.is_zero() {
            let top = rest.symbol();
            rest = rest.sub(&self.symmetrize(&top));
            out = &out + &top;
        }
        out
    }

    /// `ad(x)u = xu - ux`.
    pub fn ad(&self, x: &[Rational], u: &PbwElement) -> PbwElement {
        self.commutator(&PbwElement::from_vector(x), u)
    }

    /// Extension of the Lie algebra automorphism `a` (in this basis) to `U(g)`.
    pub fn apply_automorphism(&self, a: &Matrix, u: &PbwElement) -> PbwElement {
        let n = self.dim();
        let images: Vec<PbwElement> =
            (0..n).map(|i| PbwElement::from_vector(&a.iter().map(|row| row[i].clone()).collect::<Vec<_>>())).collect();
        let mut out = PbwElement::zero(n);
        for (m, c) in &u.terms {
            let mut prod = PbwElement::scalar(n, c.clone());
            for k in m.letters() {
                prod = self.mul(&prod, &images[k]);
            }
            out = out.add(&prod);
        }
        out
    }
}

/// Distinct orderings of a sorted multiset, in lexicographic order.
pub fn multiset_permutations(mut letters: Vec<usize>) -> Vec<Vec<usize>> {
    letters.sort_unstable();
    let mut out = vec![letters.clone()];
    loop {
        // next permutation
        let Some(i) = (1..letters.len()).rev().find(|&i| letters[i - 1] < letters[i]) else {
            return out;
        };
        let j = (i..letters.len()).rev().find(|&j| letters[j] > letters[i - 1]).expect("exists");
        letters.swap(i - 1, j);
        letters[i..].reverse();
        out.push(letters.clone());
    }
}
