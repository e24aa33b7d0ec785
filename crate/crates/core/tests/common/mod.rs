#![allow(dead_code)]

use invdiff::format::{load_named, LoadedSetup};
use invdiff::linalg::ratio;
use invdiff::presets::NAMES;
use invdiff::{monomial_basis, DegreeMode, Monomial, PbwElement, Rational, SymPoly};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn preset(name: &str) -> LoadedSetup {
    load_named(name).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn all_presets() -> Vec<LoadedSetup> {
    NAMES.iter().map(|n| preset(n)).collect()
}

/// Small nonzero rational, occasionally with a denominator.
pub fn coeff(rng: &mut TestRng) -> Rational {
    let p = loop {
        let p: i64 = rng.gen_range(-4..=4);
        if p != 0 {
            break p;
        }
    };
    let q = if rng.gen_bool(0.25) { rng.gen_range(2..=3) } else { 1 };
    ratio(p, q)
}

pub fn vector(rng: &mut TestRng, n: usize) -> Vec<Rational> {
    loop {
        let v: Vec<Rational> =
            (0..n).map(|_| if rng.gen_bool(0.3) { Rational::from_integer(0.into()) } else { coeff(rng) }).collect();
        if v.iter().any(|x| *x != Rational::from_integer(0.into())) {
            return v;
        }
    }
}

fn pick_monomials(rng: &mut TestRng, basis: &[Monomial], terms: usize) -> Vec<(Monomial, Rational)> {
    basis.choose_multiple(rng, terms.min(basis.len())).map(|m| (m.clone(), coeff(rng))).collect()
}

pub fn sym_poly(rng: &mut TestRng, nvars: usize, max_degree: usize, terms: usize) -> SymPoly {
    let basis = monomial_basis(nvars, max_degree, DegreeMode::UpTo);
    SymPoly::from_terms(nvars, pick_monomials(rng, &basis, terms))
}

pub fn homogeneous(rng: &mut TestRng, nvars: usize, degree: usize, terms: usize) -> SymPoly {
    let basis = monomial_basis(nvars, degree, DegreeMode::Homogeneous);
    SymPoly::from_terms(nvars, pick_monomials(rng, &basis, terms))
}

pub fn pbw(rng: &mut TestRng, nvars: usize, max_degree: usize, terms: usize) -> PbwElement {
    let basis = monomial_basis(nvars, max_degree, DegreeMode::UpTo);
    PbwElement::from_terms(nvars, pick_monomials(rng, &basis, terms))
}

/// Random nonzero combination of up to `k` elements of `basis`.
pub fn combo<T: Clone>(rng: &mut TestRng, basis: &[T], k: usize, zero: T, add: impl Fn(&T, &T, &Rational) -> T) -> T {
    assert!(!basis.is_empty());
    let count = rng.gen_range(1..=k.min(basis.len()));
    basis.choose_multiple(rng, count).fold(zero, |acc, b| add(&acc, b, &coeff(rng)))
}

pub fn pbw_combo(rng: &mut TestRng, basis: &[PbwElement], k: usize) -> PbwElement {
    let n = basis[0].nvars();
    combo(rng, basis, k, PbwElement::zero(n), |a, b, c| a.add_scaled(b, c))
}

pub fn sym_combo(rng: &mut TestRng, basis: &[SymPoly], k: usize) -> SymPoly {
    let n = basis[0].nvars();
    combo(rng, basis, k, SymPoly::zero(n), |a, b, c| a + &b.scale(c))
}
