//! Computations modulo the left ideal `U(g)h^χ` generated by
//! `{Y + χ(Y) : Y ∈ h}`: canonical reduction, the subalgebra `D_mod` of
//! elements whose `H`-conjugates stay congruent, the invariants `I_mod(m)`,
//! and the decomposition, commutativity and generation checks built on them.
//!
//! `H`-invariance is tested infinitesimally on the `h`-basis together with
//! the setup's component representatives, i.e. with connected-`H` semantics
//! extended by the supplied automorphisms.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{one_hot, CosetSetup};
use crate::linalg::{echelon_basis, nullspace, EchelonSpace, Rational, SparseVec};
use crate::pbw::PbwElement;
use crate::sym::{ad_derivation, linear_substitution, monomial_basis, sigma_adapted, DegreeMode, Monomial, SymPoly};

/// Printed with every report that depends on `H`-invariance.
pub const SEMANTICS_NOTE: &str = "connected-H semantics: invariance checked on the h-basis \
     (infinitesimally) plus the listed component representatives";

/// Class in `D_mod / U(g)h^χ`, represented by its canonical `m`-only element.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientClass {
    setup_id: u64,
    rep: PbwElement,
}

impl QuotientClass {
    pub fn rep(&self) -> &PbwElement {
        &self.rep
    }
}

/// Homogeneous basis of `I_mod(m)` in one degree, over the `m`-variables.
#[derive(Debug, Clone, PartialEq)]
pub struct ImodBasis {
    pub degree: usize,
    pub polys: Vec<SymPoly>,
}

impl ImodBasis {
    pub fn dim(&self) -> usize {
        self.polys.len()
    }
}

/// `Y_k + χ(Y_k)` for the `k`-th basis vector of `h`.
pub fn ideal_generator(setup: &CosetSetup, k: usize) -> PbwElement {
    let n = setup.n();
    PbwElement::from_vector(&one_hot(n, setup.r() + k)).add(&PbwElement::scalar(n, setup.chi_of_h_basis(k).clone()))
}

/// Canonical representative modulo `U(g)h^χ`. Trailing `h`-letters of each
/// PBW monomial are stripped using `u·Y ≡ -χ(Y)·u`.
pub fn project_mod_ideal(setup: &CosetSetup, u: &PbwElement) -> PbwElement {
    let r = setup.r();
    let n = setup.n();
    let factors: Vec<Rational> = (0..n - r).map(|k| -setup.chi_of_h_basis(k).clone()).collect();
    let mut out = BTreeMap::new();
    for (m, c) in u.terms() {
        let mut f = c.clone();
        for (k, &e) in m.exps()[r..].iter().enumerate() {
            if e > 0 {
                f *= num_traits::pow(factors[k].clone(), e as usize);
            }
        }
        if f.is_zero() {
            continue;
        }
        let mut exps = m.exps().to_vec();
        exps[r..].iter_mut().for_each(|e| *e = 0);
        crate::sym::add_term(&mut out, Monomial::new(exps), f);
    }
    PbwElement::from_raw(n, out)
}

pub fn in_ideal(setup: &CosetSetup, u: &PbwElement) -> bool {
    project_mod_ideal(setup, u).is_zero()
}

/// The elements whose membership in the ideal defines `D_mod`: `ad(Y)u` for
/// each `h`-basis vector and `A·u - u` for each component representative.
fn dmod_conditions(setup: &CosetSetup, u: &PbwElement) -> Vec<(String, PbwElement)> {
    let env = setup.env();
    let n = setup.n();
    let r = setup.r();
    let names = setup.adapted_names();
    let mut out: Vec<(String, PbwElement)> =
        (r..n).map(|i| (format!("ad({})", names[i]), env.ad(&one_hot(n, i), u))).collect();
    for (i, a) in setup.adapted_reps().iter().enumerate() {
        out.push((format!("rep#{i}"), env.apply_automorphism(a, u).sub(u)));
    }
    out
}

/// Conditions that `u` fails, empty iff `u ∈ D_mod`.
pub fn dmod_failures(setup: &CosetSetup, u: &PbwElement) -> Vec<String> {
    dmod_conditions(setup, u).into_iter().filter(|(_, w)| !in_ideal(setup, w)).map(|(label, _)| label).collect()
}

pub fn in_dmod(setup: &CosetSetup, u: &PbwElement) -> bool {
    dmod_failures(setup, u).is_empty()
}

/// Kernel of a linear map given by the images of basis vectors; each image
/// is a list of components keyed by monomials.
fn kernel(images: &[Vec<BTreeMap<Monomial, Rational>>]) -> Vec<Vec<Rational>> {
    let ncols = images.len();
    let mut row_of: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (col, comps) in images.iter().enumerate() {
        for (ci, comp) in comps.iter().enumerate() {
            for (m, c) in comp {
                let idx = *row_of.entry((ci, m.clone())).or_insert_with(|| {
                    rows.push(vec![Rational::zero(); ncols]);
                    rows.len() - 1
                });
                rows[idx][col] += c;
            }
        }
    }
    nullspace(&rows, ncols)
}

fn combine(basis: &[Monomial], nvars: usize, coeffs: &[Rational]) -> SymPoly {
    SymPoly::from_terms(nvars, basis.iter().cloned().zip(coeffs.iter().cloned()))
}

fn canonical_polys(basis: &[Monomial], nvars: usize, vectors: Vec<Vec<Rational>>) -> Vec<SymPoly> {
    echelon_basis(&vectors).iter().map(|v| combine(basis, nvars, v)).collect()
}

/// Homogeneous degree-`d` part of `I_mod(m)`: polynomials `P ∈ S^d(m)` with
/// `σ(ad(Y)P) = 0` for each `h`-basis `Y` and `σ(A·P) = P` for each
/// component representative `A`. The basis is in reduced echelon form with
/// respect to descending monomials.
pub fn imod_basis(setup: &CosetSetup, d: usize) -> ImodBasis {
    invariants_with(setup, d, true)
}

/// Plain `Ad(H)`-invariants in `S(m)`, without projecting by `σ`. In the
/// reductive case with `m` invariant these coincide with [`imod_basis`].
pub fn plain_invariants(setup: &CosetSetup, d: usize) -> ImodBasis {
    invariants_with(setup, d, false)
}

fn invariants_with(setup: &CosetSetup, d: usize, project: bool) -> ImodBasis {
    let n = setup.n();
    let r = setup.r();
    let alg = setup.adapted();
    let basis = monomial_basis(r, d, DegreeMode::Homogeneous);
    let finish = |p: SymPoly| if project { sigma_adapted(setup, &p).embed(n) } else { p };
    let images: Vec<Vec<BTreeMap<Monomial, Rational>>> = basis
        .iter()
        .map(|mono| {
            let p = SymPoly::monomial(mono.padded(n), Rational::one());
            let mut comps: Vec<BTreeMap<Monomial, Rational>> = (r..n)
                .map(|i| {
                    let dp = ad_derivation(alg, &one_hot(n, i), &p).expect("dimensions agree");
                    finish(dp).terms().clone()
                })
                .collect();
            for a in setup.adapted_reps() {
                let ap = linear_substitution(a, &p).expect("dimensions agree");
                comps.push((&finish(ap) - &p).terms().clone());
            }
            comps
        })
        .collect();
    ImodBasis { degree: d, polys: canonical_polys(&basis, r, kernel(&images)) }
}

/// `λ` of an element of `S(m)` (given over the `m`-variables).
pub fn symmetrize_m(setup: &CosetSetup, p: &SymPoly) -> PbwElement {
    setup.env().symmetrize(&p.embed(setup.n()))
}

fn conditions_terms(setup: &CosetSetup, u: &PbwElement) -> Vec<BTreeMap<Monomial, Rational>> {
    dmod_conditions(setup, u).into_iter().map(|(_, w)| project_mod_ideal(setup, &w).terms().clone()).collect()
}

/// Basis of `D_mod ∩ U_d(g)`, the elements of filtration degree `≤ d`.
pub fn dmod_filtered_basis(setup: &CosetSetup, d: usize) -> Vec<PbwElement> {
    let n = setup.n();
    let basis = monomial_basis(n, d, DegreeMode::UpTo);
    let images: Vec<_> =
        basis.iter().map(|m| conditions_terms(setup, &PbwElement::monomial(m.clone(), Rational::one()))).collect();
    kernel(&images).iter().map(|v| PbwElement::from_terms(n, basis.iter().cloned().zip(v.iter().cloned()))).collect()
}

/// Basis of `{P ∈ S_d(m) : λ(P) ∈ D_mod}`, over the `m`-variables.
pub fn lambda_sm_dmod_basis(setup: &CosetSetup, d: usize) -> Vec<SymPoly> {
    let r = setup.r();
    let basis = monomial_basis(r, d, DegreeMode::UpTo);
    let images: Vec<_> = basis
        .iter()
        .map(|m| {
            let u = symmetrize_m(setup, &SymPoly::monomial(m.clone(), Rational::one()));
            conditions_terms(setup, &u)
        })
        .collect();
    canonical_polys(&basis, r, kernel(&images))
}

/// Assigns consecutive coordinates to monomials as they are encountered.
#[derive(Default)]
struct Indexer {
    index: HashMap<Monomial, usize>,
}

impl Indexer {
    fn sparse(&mut self, terms: &BTreeMap<Monomial, Rational>) -> SparseVec {
        terms
            .iter()
            .map(|(m, c)| {
                let next = self.index.len();
                (*self.index.entry(m.clone()).or_insert(next), c.clone())
            })
            .collect()
    }
}

fn span_rank<'a>(
    idx: &mut Indexer,
    items: impl IntoIterator<Item = &'a BTreeMap<Monomial, Rational>>,
) -> (usize, EchelonSpace) {
    let mut space = EchelonSpace::new();
    for t in items {
        space.insert(idx.sparse(t));
    }
    (space.rank(), space)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimensions behind `λ(S_d(g)) = λ(S_{d-1}(g))h^χ ⊕ λ(S_d(m))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirectSumReport {
    pub degree: usize,
    /// rank of `λ(S_d(g))`; must be `C(n+d, d)`
    pub total: usize,
    pub ideal_rank: usize,
    /// rank of `λ(S_d(m))`; must be `C(r+d, d)`
    pub m_rank: usize,
    pub combined_rank: usize,
    pub expected_total: usize,
    pub expected_m: usize,
    pub pass: bool,
}

pub fn verify_direct_sum(setup: &CosetSetup, d: usize) -> DirectSumReport {
    let env = setup.env();
    let n = setup.n();
    let r = setup.r();
    let mono = |m: &Monomial| env.symmetrize(&SymPoly::monomial(m.clone(), Rational::one()));

    let all: Vec<PbwElement> = monomial_basis(n, d, DegreeMode::UpTo).iter().map(mono).collect();
    let ideal: Vec<PbwElement> = if d == 0 {
        Vec::new()
    } else {
        let lower: Vec<PbwElement> = monomial_basis(n, d - 1, DegreeMode::UpTo).iter().map(mono).collect();
        (0..n - r)
            .flat_map(|k| {
                let g = ideal_generator(setup, k);
                lower.iter().map(move |u| env.mul(u, &g)).collect::<Vec<_>>()
            })
            .collect()
    };
    let m_part: Vec<PbwElement> = monomial_basis(r, d, DegreeMode::UpTo).iter().map(|m| mono(&m.padded(n))).collect();

    let mut idx = Indexer::default();
    let (total, _) = span_rank(&mut idx, all.iter().map(PbwElement::terms));
    let (ideal_rank, mut combined) = span_rank(&mut idx, ideal.iter().map(PbwElement::terms));
    let (m_rank, _) = span_rank(&mut idx, m_part.iter().map(PbwElement::terms));
    for u in &m_part {
        combined.insert(idx.sparse(u.terms()));
    }
    let combined_rank = combined.rank();
    let expected_total = binomial(n + d, d);
    let expected_m = binomial(r + d, d);
    DirectSumReport {
        degree: d,
        total,
        ideal_rank,
        m_rank,
        combined_rank,
        expected_total,
        expected_m,
        pass: total == expected_total
            && m_rank == expected_m
            && combined_rank == total
            && ideal_rank + m_rank == combined_rank,
    }
}

pub fn quotient_class(setup: &CosetSetup, u: &PbwElement) -> Result<QuotientClass> {
    let failures = dmod_failures(setup, u);
    if !failures.is_empty() {
        return Err(Error::NotInDmod(failures.join(", ")));
    }
    Ok(QuotientClass { setup_id: setup.id(), rep: project_mod_ideal(setup, u) })
}

pub fn quotient_mul(setup: &CosetSetup, a: &QuotientClass, b: &QuotientClass) -> Result<QuotientClass> {
    if a.setup_id != setup.id() || b.setup_id != setup.id() {
        return Err(Error::SetupMismatch);
    }
    Ok(QuotientClass { setup_id: setup.id(), rep: project_mod_ideal(setup, &setup.env().mul(&a.rep, &b.rep)) })
}

/// `λ(P) ∈ D_mod` for every `I_mod` basis element of degree `≤ max_degree`;
/// returns the first offender `(degree, index)` if any.
pub fn lambda_imod_offender(setup: &CosetSetup, max_degree: usize) -> Option<(usize, usize)> {
    (0..=max_degree).find_map(|d| {
        imod_basis(setup, d).polys.iter().position(|p| !in_dmod(setup, &symmetrize_m(setup, p))).map(|i| (d, i))
    })
}

pub fn check_lambda_imod_in_dmod(setup: &CosetSetup, max_degree: usize) -> bool {
    lambda_imod_offender(setup, max_degree).is_none()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Self::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EqualityRow {
    pub degree: usize,
    /// dimension of `λ(I_mod)` up to this degree
    pub imod_dim: usize,
    /// dimension of `λ(S_d(m)) ∩ D_mod`
    pub dmod_dim: usize,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EqualityReport {
    pub verdict: Verdict,
    pub rows: Vec<EqualityRow>,
}

/// Compares `span λ(I_mod)_{≤d}` with `λ(S_d(m)) ∩ D_mod` in every degree
/// `d ≤ max_degree`. Not applicable unless `λ(I_mod) ⊂ D_mod` holds.
pub fn check_lambda_imod_equality(setup: &CosetSetup, max_degree: usize) -> EqualityReport {
    if !check_lambda_imod_in_dmod(setup, max_degree) {
        return EqualityReport { verdict: Verdict::NotApplicable, rows: Vec::new() };
    }
    let r = setup.r();
    let mut rows = Vec::new();
    let mut imod: Vec<SymPoly> = Vec::new();
    for d in 0..=max_degree {
        imod.extend(imod_basis(setup, d).polys);
        let basis = monomial_basis(r, d, DegreeMode::UpTo);
        let left: Vec<Vec<Rational>> = imod.iter().map(|p| p.coordinates(&basis)).collect();
        let right: Vec<Vec<Rational>> = lambda_sm_dmod_basis(setup, d).iter().map(|p| p.coordinates(&basis)).collect();
        let both: Vec<Vec<Rational>> = left.iter().chain(&right).cloned().collect();
        let (lr, rr, br) = (crate::linalg::rank(&left), crate::linalg::rank(&right), crate::linalg::rank(&both));
        rows.push(EqualityRow { degree: d, imod_dim: lr, dmod_dim: rr, equal: lr == rr && rr == br });
    }
    EqualityReport { verdict: Verdict::from_bool(rows.iter().all(|r| r.equal)), rows }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommutativityReport {
    pub verdict: Verdict,
    pub pairs_checked: usize,
    /// first failing pair as rendered polynomials with the reduced commutator
    pub counterexample: Option<(String, String, String)>,
}

/// All commutators of `λ`-images of `I_mod` basis elements with total
/// degree `≤ max_degree` lie in the ideal.
pub fn check_commutativity(setup: &CosetSetup, max_degree: usize) -> CommutativityReport {
    if !check_lambda_imod_in_dmod(setup, max_degree) {
        return CommutativityReport { verdict: Verdict::NotApplicable, pairs_checked: 0, counterexample: None };
    }
    let env = setup.env();
    let elems: Vec<(usize, SymPoly, PbwElement)> = (1..=max_degree)
        .flat_map(|d| imod_basis(setup, d).polys.into_iter().map(move |p| (d, p)))
        .map(|(d, p)| {
            let u = symmetrize_m(setup, &p);
            (d, p, u)
        })
        .collect();
    let mut pairs = 0;
    for (i, (da, pa, a)) in elems.iter().enumerate() {
        for (db, pb, b) in &elems[i + 1..] {
            if da + db > max_degree {
                continue;
            }
            pairs += 1;
            let red = project_mod_ideal(setup, &env.commutator(a, b));
            if !red.is_zero() {
                let names = setup.m_names();
                return CommutativityReport {
                    verdict: Verdict::Fail,
                    pairs_checked: pairs,
                    counterexample: Some((pa.render(names), pb.render(names), red.render(setup.adapted_names()))),
                };
            }
        }
    }
    CommutativityReport { verdict: Verdict::Pass, pairs_checked: pairs, counterexample: None }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerationRow {
    pub degree: usize,
    /// rank of the classes of `λ(I_mod)` up to this degree
    pub target_rank: usize,
    /// rank of the products of generator classes up to this degree
    pub generated_rank: usize,
    pub combined_rank: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerationReport {
    pub verdict: Verdict,
    pub rows: Vec<GenerationRow>,
}

/// Whether the classes of `λ(Q_i)` generate the classes of `λ(I_mod)` up to
/// `max_degree`, comparing spans of canonical representatives degree by
/// degree. Generators are polynomials over the `m`-variables.
pub fn check_generation(setup: &CosetSetup, generators: &[SymPoly], max_degree: usize) -> Result<GenerationReport> {
    let r = setup.r();
    let mut gens: Vec<(usize, QuotientClass)> = Vec::new();
    for (index, g) in generators.iter().enumerate() {
        if g.nvars() != r {
            return Err(Error::ParentMismatch(r, g.nvars()));
        }
        let cls = quotient_class(setup, &symmetrize_m(setup, g)).map_err(|e| match e {
            Error::NotInDmod(reason) => Error::GeneratorNotInDmod { index, reason },
            other => other,
        })?;
        match g.degree() {
            Some(d) if d > 0 => gens.push((d, cls)),
            _ => {}
        }
    }

    // every ordered product of generator classes, grouped by total degree
    let unit = QuotientClass { setup_id: setup.id(), rep: PbwElement::one(setup.n()) };
    let mut by_degree: Vec<Vec<QuotientClass>> = vec![Vec::new(); max_degree + 1];
    by_degree[0].push(unit);
    for d in 1..=max_degree {
        let mut layer = Vec::new();
        for (gd, g) in &gens {
            if *gd > d {
                continue;
            }
            for prev in &by_degree[d - gd] {
                layer.push(quotient_mul(setup, prev, g)?);
            }
        }
        by_degree[d] = layer;
    }

    let mut idx = Indexer::default();
    let mut target = EchelonSpace::new();
    let mut generated = EchelonSpace::new();
    let mut combined = EchelonSpace::new();
    let mut rows = Vec::new();
    for (d, layer) in by_degree.iter().enumerate() {
        for p in imod_basis(setup, d).polys {
            let v = idx.sparse(project_mod_ideal(setup, &symmetrize_m(setup, &p)).terms());
            target.insert(v.clone());
            combined.insert(v);
        }
        for cls in layer {
            let v = idx.sparse(cls.rep.terms());
            generated.insert(v.clone());
            combined.insert(v);
        }
        let (t, g, c) = (target.rank(), generated.rank(), combined.rank());
        rows.push(GenerationRow {
            degree: d,
            target_rank: t,
            generated_rank: g,
            combined_rank: c,
            ok: t == g && g == c,
        });
    }
    Ok(GenerationReport { verdict: Verdict::from_bool(rows.iter().all(|r| r.ok)), rows })
}

/// Generation of `I_mod` by the single quadratic `Σ ε_i X_i²` over the
/// `m`-basis.
pub fn laplace_generation_check(setup: &CosetSetup, signature: &[i64], max_degree: usize) -> Result<GenerationReport> {
    let r = setup.r();
    if signature.len() != r {
        return Err(Error::SignatureLength { expected: r, found: signature.len() });
    }
    let q = laplacian_symbol(r, signature);
    check_generation(setup, &[q], max_degree)
}

/// `Σ ε_i X_i²` over `r` variables.
pub fn laplacian_symbol(r: usize, signature: &[i64]) -> SymPoly {
    signature.iter().enumerate().fold(SymPoly::zero(r), |acc, (i, &e)| {
        &acc + &SymPoly::var(r, i).pow(2).scale(&Rational::from_integer(e.into()))
    })
}
