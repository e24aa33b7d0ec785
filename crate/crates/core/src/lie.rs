//! Lie algebras by structure constants, subspaces, characters and the
//! coset setup `g = m ⊕ h` with its adapted basis.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    self, format_rational, inverse, is_zero_vec, mat_mul, mat_vec, solve_affine, unit_vec, zero_vec, AffineSolution,
    EchelonSpace, Matrix, Rational,
};
use crate::pbw::Enveloping;

/// Finite-dimensional Lie algebra over the rationals, presented by the
/// brackets of its basis vectors. Only pairs `i < j` are stored.
#[derive(Clone, PartialEq)]
pub struct LieAlgebra {
    names: Vec<String>,
    constants: BTreeMap<(usize, usize), Vec<Rational>>,
    // table[i][j]: sparse coordinates of [X_i, X_j], antisymmetry filled in
    table: Vec<Vec<Vec<(usize, Rational)>>>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra").field("names", &self.names).field("brackets", &self.constants.len()).finish()
    }
}

impl LieAlgebra {
    /// Builds the algebra from `((i, j), [X_i, X_j])` entries. Pairs with
    /// `i > j` are stored negated; zero vectors are dropped. The Jacobi
    /// identity is not enforced here, see [`check_structure`].
    pub fn new<I>(names: Vec<String>, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), Vec<Rational>)>,
    {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidAlgebra("empty basis".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::InvalidAlgebra(format!("duplicate basis name `{a}`")));
            }
        }
        let mut constants = BTreeMap::new();
        for ((i, j), v) in brackets {
            for idx in [i, j] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, dim: n });
                }
            }
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
            if i == j {
                if is_zero_vec(&v) {
                    continue;
                }
                return Err(Error::InvalidAlgebra(format!("[{0}, {0}] must vanish", names[i])));
            }
            let (key, v) = if i < j { ((i, j), v) } else { ((j, i), v.into_iter().map(|x| -x).collect()) };
            if constants.contains_key(&key) {
                return Err(Error::InvalidAlgebra(format!("bracket [{}, {}] given twice", names[key.0], names[key.1])));
            }
            if !is_zero_vec(&v) {
                constants.insert(key, v);
            }
        }
        let mut table = vec![vec![Vec::new(); n]; n];
        for (&(i, j), v) in &constants {
            let sparse: Vec<(usize, Rational)> =
                v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k, x.clone())).collect();
            table[j][i] = sparse.iter().map(|(k, x)| (*k, -x.clone())).collect();
            table[i][j] = sparse;
        }
        Ok(Self { names, constants, table })
    }

    pub fn abelian(names: Vec<String>) -> Result<Self> {
        Self::new(names, std::iter::empty())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Stored constants `(i, j) -> [X_i, X_j]` with `i < j`.
    pub fn constants(&self) -> &BTreeMap<(usize, usize), Vec<Rational>> {
        &self.constants
    }

    /// Sparse `[X_i, X_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i][j]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (k, c) in &self.table[i][j] {
                    out[*k] += xi * yj * c;
                }
            }
        }
        out
    }

    /// Matrix of `ad(x)` acting on coordinate columns.
    pub fn ad_matrix(&self, x: &[Rational]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| self.bracket_unchecked(x, &unit_vec(n, j))).collect();
        linalg::transpose(&cols, n)
    }

    /// Structure constants of the same algebra in the basis given by the
    /// columns of `change` (with `change_inv` its inverse), named `names`.
    pub(crate) fn rebase(&self, change: &Matrix, change_inv: &Matrix, names: Vec<String>) -> Result<Self> {
        let n = self.dim();
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| change.iter().map(|row| row[j].clone()).collect()).collect();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let b = self.bracket_unchecked(&cols[i], &cols[j]);
                brackets.push(((i, j), mat_vec(change_inv, &b)));
            }
        }
        Self::new(names, brackets)
    }

    /// Whether `a` preserves brackets on basis pairs.
    pub fn is_automorphism(&self, a: &Matrix) -> bool {
        let n = self.dim();
        if a.len() != n || a.iter().any(|r| r.len() != n) || inverse(a).is_none() {
            return false;
        }
        let col = |j: usize| -> Vec<Rational> { a.iter().map(|r| r[j].clone()).collect() };
        for i in 0..n {
            for j in i + 1..n {
                let lhs = mat_vec(a, &self.bracket_unchecked(&unit_vec(n, i), &unit_vec(n, j)));
                let rhs = self.bracket_unchecked(&col(i), &col(j));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    pub fn render_vector(&self, v: &[Rational]) -> String {
        render_combination(&self.names, v)
    }
}

pub(crate) fn render_combination(names: &[String], v: &[Rational]) -> String {
    let mut out = String::new();
    for (name, c) in names.iter().zip(v).filter(|(_, c)| !c.is_zero()) {
        let neg = *c < Rational::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&format_rational(&abs));
            out.push('*');
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A failed Jacobi triple with its residual vector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub names: (String, String, String),
    pub residual: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureReport {
    pub violations: Vec<JacobiViolation>,
}

impl StructureReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the Jacobi identity on every basis triple `i < j < k`.
pub fn check_structure(alg: &LieAlgebra) -> StructureReport {
    let n = alg.dim();
    let e = |i| unit_vec(n, i);
    let br = |x: &[Rational], y: &[Rational]| alg.bracket_unchecked(x, y);
    let mut violations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let t1 = br(&br(&e(i), &e(j)), &e(k));
                let t2 = br(&br(&e(j), &e(k)), &e(i));
                let t3 = br(&br(&e(k), &e(i)), &e(j));
                let residual: Vec<Rational> = t1.iter().zip(&t2).zip(&t3).map(|((a, b), c)| a + b + c).collect();
                if !is_zero_vec(&residual) {
                    violations.push(JacobiViolation {
                        triple: (i, j, k),
                        names: (alg.names[i].clone(), alg.names[j].clone(), alg.names[k].clone()),
                        residual: residual.iter().map(format_rational).collect(),
                    });
                }
            }
        }
    }
    StructureReport { violations }
}

/// Linearly independent vectors spanning a subspace of `g`, optionally named.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    dim: usize,
    vectors: Vec<Vec<Rational>>,
    names: Vec<Option<String>>,
}

impl Subspace {
    pub fn new(dim: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        let names = vec![None; vectors.len()];
        Self::with_names(dim, vectors, names, "subspace")
    }

    pub fn with_names(
        dim: usize,
        vectors: Vec<Vec<Rational>>,
        names: Vec<Option<String>>,
        label: &str,
    ) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
        }
        if names.len() != vectors.len() {
            return Err(Error::DimensionMismatch { expected: vectors.len(), found: names.len() });
        }
        if linalg::rank(&vectors) != vectors.len() {
            return Err(Error::DependentVectors(label.to_string()));
        }
        Ok(Self { dim, vectors, names })
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate(dim: usize, indices: &[usize]) -> Result<Self> {
        if let Some(&i) = indices.iter().find(|&&i| i >= dim) {
            return Err(Error::IndexOutOfRange { index: i, dim });
        }
        Self::new(dim, indices.iter().map(|&i| unit_vec(dim, i)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, vectors: Vec::new(), names: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn names(&self) -> &[Option<String>] {
        &self.names
    }

    /// Coordinates of `v` in this basis, if `v` lies in the span.
    pub fn coordinates_of(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let k = self.len();
        let a: Vec<Vec<Rational>> =
            (0..self.dim).map(|i| self.vectors.iter().map(|b| b[i].clone()).collect()).collect();
        match solve_affine(&a, v, k) {
            AffineSolution::Feasible { particular, .. } => Some(particular),
            AffineSolution::Infeasible { .. } => None,
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates_of(v).is_some()
    }
}

/// Whether `[s, s] ⊆ s`, tested on basis pairs.
pub fn is_subalgebra(alg: &LieAlgebra, s: &Subspace) -> bool {
    subalgebra_defect(alg, s).is_none()
}

fn subalgebra_defect(alg: &LieAlgebra, s: &Subspace) -> Option<(usize, usize)> {
    let v = s.vectors();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if !s.contains(&alg.bracket_unchecked(&v[i], &v[j])) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Differential of a character of `H`: one value per basis vector of `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterDiff {
    pub values: Vec<Rational>,
}

impl CharacterDiff {
    pub fn new(values: Vec<Rational>) -> Self {
        Self { values }
    }

    pub fn trivial(dim_h: usize) -> Self {
        Self { values: zero_vec(dim_h) }
    }

    pub fn is_trivial(&self) -> bool {
        is_zero_vec(&self.values)
    }

    fn eval(&self, h_coords: &[Rational]) -> Rational {
        h_coords.iter().zip(&self.values).map(|(a, b)| a * b).sum()
    }
}

fn character_defect(alg: &LieAlgebra, h: &Subspace, chi: &CharacterDiff) -> Option<(usize, usize, Rational)> {
    let v = h.vectors();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let c = h.coordinates_of(&alg.bracket_unchecked(&v[i], &v[j])).expect("h is a subalgebra");
            let val = chi.eval(&c);
            if !val.is_zero() {
                return Some((i, j, val));
            }
        }
    }
    None
}

static NEXT_SETUP_ID: AtomicU64 = AtomicU64::new(1);

/// A validated coset setup: Lie algebra `g`, subalgebra `h`, complement `m`,
/// character differential on `h`, and automorphisms representing the
/// non-identity components of `H`.
///
/// The adapted basis lists the `m`-basis first and the `h`-basis last. All
/// elements of `S(g)` and `U(g)` handled through a setup are expressed in
/// adapted coordinates; `S(m)` is the polynomial ring in the first `r`
/// adapted variables.
#[derive(Debug)]
pub struct CosetSetup {
    id: u64,
    algebra: LieAlgebra,
    h: Subspace,
    m: Subspace,
    chi: CharacterDiff,
    component_reps: Vec<Matrix>,
    m_auto: bool,
    change: Matrix,
    change_inv: Matrix,
    adapted_reps: Vec<Matrix>,
    env: Enveloping,
}

impl CosetSetup {
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// The same algebra with structure constants in the adapted basis.
    pub fn adapted(&self) -> &LieAlgebra {
        self.env.algebra()
    }

    pub fn env(&self) -> &Enveloping {
        &self.env
    }

    pub fn h(&self) -> &Subspace {
        &self.h
    }

    pub fn m(&self) -> &Subspace {
        &self.m
    }

    pub fn chi(&self) -> &CharacterDiff {
        &self.chi
    }

    pub fn component_reps(&self) -> &[Matrix] {
        &self.component_reps
    }

    /// Component representatives in adapted coordinates.
    pub fn adapted_reps(&self) -> &[Matrix] {
        &self.adapted_reps
    }

    /// Whether `m` was chosen automatically.
    pub fn m_auto(&self) -> bool {
        self.m_auto
    }

    pub fn n(&self) -> usize {
        self.algebra.dim()
    }

    /// `dim m`.
    pub fn r(&self) -> usize {
        self.m.len()
    }

    /// Columns are the adapted basis vectors in `g`-coordinates.
    pub fn change_of_basis(&self) -> &Matrix {
        &self.change
    }

    pub fn change_of_basis_inv(&self) -> &Matrix {
        &self.change_inv
    }

    pub fn adapted_names(&self) -> &[String] {
        self.adapted().names()
    }

    pub fn m_names(&self) -> &[String] {
        &self.adapted_names()[..self.r()]
    }

    pub fn to_adapted(&self, x: &[Rational]) -> Vec<Rational> {
        mat_vec(&self.change_inv, x)
    }

    pub fn from_adapted(&self, x: &[Rational]) -> Vec<Rational> {
        mat_vec(&self.change, x)
    }

    /// Matrix of a `g`-linear map in adapted coordinates.
    pub fn matrix_to_adapted(&self, a: &Matrix) -> Matrix {
        mat_mul(&self.change_inv, &mat_mul(a, &self.change))
    }

    /// `χ` on the `k`-th basis vector of `h`.
    pub fn chi_of_h_basis(&self, k: usize) -> &Rational {
        &self.chi.values[k]
    }
}

/// Complement of `h` by greedy column pivoting over the standard basis.
pub fn auto_complement(dim: usize, h: &Subspace) -> Vec<usize> {
    let mut space = EchelonSpace::new();
    for v in h.vectors() {
        space.insert(linalg::to_sparse(v));
    }
    (0..dim).filter(|&i| space.insert(linalg::to_sparse(&unit_vec(dim, i)))).collect()
}

/// Validates and assembles a [`CosetSetup`]. If `m` is absent a complement
/// is picked by column pivoting.
pub fn make_setup(
    alg: LieAlgebra,
    h: Subspace,
    m: Option<Subspace>,
    chi: CharacterDiff,
    component_reps: Vec<Matrix>,
) -> Result<CosetSetup> {
    let n = alg.dim();
    if h.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: h.ambient_dim() });
    }
    if let Some((i, j)) = subalgebra_defect(&alg, &h) {
        return Err(Error::NotSubalgebra(alg.render_vector(&h.vectors()[i]), alg.render_vector(&h.vectors()[j])));
    }
    if chi.values.len() != h.len() {
        return Err(Error::DimensionMismatch { expected: h.len(), found: chi.values.len() });
    }
    if let Some((i, j, val)) = character_defect(&alg, &h, &chi) {
        return Err(Error::InvalidCharacter(
            alg.render_vector(&h.vectors()[i]),
            alg.render_vector(&h.vectors()[j]),
            format_rational(&val),
        ));
    }
    let m_auto = m.is_none();
    let m = match m {
        Some(m) => {
            if m.ambient_dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.ambient_dim() });
            }
            if m.len() + h.len() != n {
                return Err(Error::NotComplementary(format!("dim m + dim h = {} + {} != {}", m.len(), h.len(), n)));
            }
            m
        }
        None => {
            let idx = auto_complement(n, &h);
            let names = idx.iter().map(|&i| Some(alg.names()[i].clone())).collect();
            Subspace::with_names(n, idx.iter().map(|&i| unit_vec(n, i)).collect(), names, "m")?
        }
    };
    let basis: Vec<Vec<Rational>> = m.vectors().iter().chain(h.vectors()).cloned().collect();
    let change = linalg::transpose(&basis, n);
    let change_inv =
        inverse(&change).ok_or_else(|| Error::NotComplementary("m and h intersect nontrivially".into()))?;

    for (index, a) in component_reps.iter().enumerate() {
        validate_rep(&alg, &h, &chi, a).map_err(|reason| Error::BadComponentRep { index, reason })?;
    }

    let names = adapted_names(&alg, &m, &h);
    let adapted = alg.rebase(&change, &change_inv, names)?;
    let adapted_reps = component_reps.iter().map(|a| mat_mul(&change_inv, &mat_mul(a, &change))).collect();
    Ok(CosetSetup {
        id: NEXT_SETUP_ID.fetch_add(1, Ordering::Relaxed),
        algebra: alg,
        h,
        m,
        chi,
        component_reps,
        m_auto,
        change,
        change_inv,
        adapted_reps,
        env: Enveloping::new(adapted),
    })
}

fn validate_rep(alg: &LieAlgebra, h: &Subspace, chi: &CharacterDiff, a: &Matrix) -> std::result::Result<(), String> {
    let n = alg.dim();
    if a.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(format!("expected a {n}x{n} matrix"));
    }
    if inverse(a).is_none() {
        return Err("matrix is singular".into());
    }
    if !alg.is_automorphism(a) {
        return Err("does not preserve brackets".into());
    }
    for (k, y) in h.vectors().iter().enumerate() {
        let image = mat_vec(a, y);
        let Some(coords) = h.coordinates_of(&image) else {
            return Err(format!("maps {} out of h", alg.render_vector(y)));
        };
        if chi.eval(&coords) != chi.values[k] {
            return Err(format!("does not fix chi on {}", alg.render_vector(y)));
        }
    }
    Ok(())
}

fn adapted_names(alg: &LieAlgebra, m: &Subspace, h: &Subspace) -> Vec<String> {
    let n = alg.dim();
    let mut out: Vec<String> = Vec::with_capacity(n);
    let groups = [(m, "m"), (h, "h")];
    for (space, prefix) in groups {
        for (k, (v, name)) in space.vectors().iter().zip(space.names()).enumerate() {
            let unit = (0..n).find(|&i| *v == unit_vec(n, i)).map(|i| alg.names()[i].clone());
            let mut candidate = name.clone().or(unit).unwrap_or_else(|| format!("{prefix}{}", k + 1));
            while out.contains(&candidate) {
                candidate.push('\'');
            }
            out.push(candidate);
        }
    }
    out
}

/// The projection `σ: g → m` along `h`, returned in `m`-coordinates.
pub fn sigma(setup: &CosetSetup, x: &[Rational]) -> Result<Vec<Rational>> {
    if x.len() != setup.n() {
        return Err(Error::DimensionMismatch { expected: setup.n(), found: x.len() });
    }
    let mut c = setup.to_adapted(x);
    c.truncate(setup.r());
    Ok(c)
}

/// `χ([X, Y]) = 0` on all pairs of `h`-basis vectors.
pub fn check_character(setup: &CosetSetup) -> bool {
    character_defect(&setup.algebra, &setup.h, &setup.chi).is_none()
}

/// One equation of the invariant-complement system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquationLabel {
    /// `ad(Y)` for an `h`-basis vector, or a component representative.
    pub operator: String,
    /// Complement basis vector the section is evaluated on.
    pub on: String,
    /// Coordinate (basis name of `g`) of the vector equation.
    pub coordinate: String,
}

/// Proof of infeasibility: a weighted sum of the equations whose coefficient
/// part vanishes but whose constant part is nonzero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub combination: Vec<(EquationLabel, String)>,
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ComplementOutcome {
    /// An `ad(h)`-stable (and representative-stable) complement.
    Invariant(Subspace),
    Infeasible(Certificate),
}

/// Searches for an `ad(h)`-invariant complement to the subalgebra `h`.
///
/// A complement is the image of a section `s: g/h → g`. Writing
/// `s(c̄_j) = c_j + Σ_k α_jk y_k` over a fixed complement basis `c` and the
/// `h`-basis `y`, invariance `L∘s = s∘L̄` for `L = ad(y_t)` and for each
/// representative is affine-linear in `α`.
pub fn invariant_complement(alg: &LieAlgebra, h: &Subspace, reps: &[Matrix]) -> ComplementOutcome {
    let n = alg.dim();
    let p = h.len();
    let cidx = auto_complement(n, h);
    let r = cidx.len();
    let c: Vec<Vec<Rational>> = cidx.iter().map(|&i| unit_vec(n, i)).collect();
    let y = h.vectors();
    let basis: Vec<Vec<Rational>> = c.iter().chain(y).cloned().collect();
    let binv = inverse(&linalg::transpose(&basis, n)).expect("complement is complementary");
    let quotient = |v: &[Rational]| -> Vec<Rational> {
        let mut q = mat_vec(&binv, v);
        q.truncate(r);
        q
    };

    let mut operators: Vec<(String, Matrix)> =
        y.iter().map(|v| (format!("ad({})", alg.render_vector(v)), alg.ad_matrix(v))).collect();
    operators.extend(reps.iter().enumerate().map(|(i, a)| (format!("rep#{i}"), a.clone())));

    let nunk = r * p;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    let mut labels = Vec::new();
    for (opname, l) in &operators {
        let ly: Vec<Vec<Rational>> = y.iter().map(|v| mat_vec(l, v)).collect();
        for j in 0..r {
            let lc = mat_vec(l, &c[j]);
            let beta = quotient(&lc);
            let mut constant = lc.clone();
            for (b, cl) in beta.iter().zip(&c) {
                for (x, e) in constant.iter_mut().zip(cl) {
                    *x -= b * e;
                }
            }
            // coefficient of α_{l,k} in coordinate i
            let mut block = vec![zero_vec(nunk); n];
            for k in 0..p {
                for i in 0..n {
                    block[i][j * p + k] += &ly[k][i];
                }
                for (lidx, b) in beta.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                    for i in 0..n {
                        block[i][lidx * p + k] -= b * &y[k][i];
                    }
                }
            }
            for i in 0..n {
                rows.push(std::mem::take(&mut block[i]));
                rhs.push(-constant[i].clone());
                labels.push(EquationLabel {
                    operator: opname.clone(),
                    on: alg.names()[cidx[j]].clone(),
                    coordinate: alg.names()[i].clone(),
                });
            }
        }
    }

    match solve_affine(&rows, &rhs, nunk) {
        AffineSolution::Feasible { particular, .. } => {
            let vectors: Vec<Vec<Rational>> = (0..r)
                .map(|j| {
                    let mut v = c[j].clone();
                    for k in 0..p {
                        let a = &particular[j * p + k];
                        for (x, e) in v.iter_mut().zip(&y[k]) {
                            *x += a * e;
                        }
                    }
                    v
                })
                .collect();
            let names = (0..r).map(|_| None).collect();
            ComplementOutcome::Invariant(
                Subspace::with_names(n, vectors, names, "complement").expect("section is injective"),
            )
        }
        AffineSolution::Infeasible { multipliers, residual } => ComplementOutcome::Infeasible(Certificate {
            combination: labels
                .into_iter()
                .zip(&multipliers)
                .filter(|(_, w)| !w.is_zero())
                .map(|(l, w)| (l, format_rational(w)))
                .collect(),
            // the equations are written as A α = -constant
            residual: format_rational(&residual),
        }),
    }
}

/// Checks that `W` is an invariant complement: `g = h ⊕ W` and
/// `[Y, w] ∈ W` for every `h`-basis `Y` and basis vector `w`.
pub fn is_invariant_complement(alg: &LieAlgebra, h: &Subspace, w: &Subspace) -> bool {
    let n = alg.dim();
    let all: Vec<Vec<Rational>> = h.vectors().iter().chain(w.vectors()).cloned().collect();
    if all.len() != n || linalg::rank(&all) != n {
        return false;
    }
    h.vectors().iter().all(|y| w.vectors().iter().all(|v| w.contains(&alg.bracket_unchecked(y, v))))
}

pub(crate) fn one_hot(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::linalg::rat;

    pub fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    pub fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    /// sl2 with basis (H, E, F).
    pub fn sl2() -> LieAlgebra {
        LieAlgebra::new(
            names(&["H", "E", "F"]),
            vec![((0, 1), v(&[0, 2, 0])), ((0, 2), v(&[0, 0, -2])), ((1, 2), v(&[1, 0, 0]))],
        )
        .unwrap()
    }

    /// so3 with [X,Y]=Z, [Y,Z]=X, [Z,X]=Y.
    pub fn so3() -> LieAlgebra {
        LieAlgebra::new(
            names(&["X", "Y", "Z"]),
            vec![((0, 1), v(&[0, 0, 1])), ((1, 2), v(&[1, 0, 0])), ((2, 0), v(&[0, 1, 0]))],
        )
        .unwrap()
    }

    pub fn heisenberg() -> LieAlgebra {
        LieAlgebra::new(names(&["X", "Y", "Z"]), vec![((0, 1), v(&[0, 0, 1]))]).unwrap()
    }

    pub fn named(n: usize, vecs: Vec<Vec<Rational>>, ns: &[&str]) -> Subspace {
        Subspace::with_names(n, vecs, ns.iter().map(|s| Some(s.to_string())).collect(), "test").unwrap()
    }

    /// sl2 horocycle: h = span{E}, m = span{H, K = E - F}.
    pub fn sl2_horocycle_with_chi(c: Rational) -> CosetSetup {
        make_setup(
            sl2(),
            named(3, vec![v(&[0, 1, 0])], &["E"]),
            Some(named(3, vec![v(&[1, 0, 0]), v(&[0, 1, -1])], &["H", "K"])),
            CharacterDiff::new(vec![c]),
            vec![identity_matrix(3)],
        )
        .unwrap()
    }

    pub fn sl2_horocycle() -> CosetSetup {
        sl2_horocycle_with_chi(rat(0))
    }

    pub fn so3_sphere() -> CosetSetup {
        make_setup(
            so3(),
            named(3, vec![v(&[0, 0, 1])], &["Z"]),
            Some(named(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])], &["X", "Y"])),
            CharacterDiff::trivial(1),
            vec![],
        )
        .unwrap()
    }

    pub fn heisenberg_setup() -> CosetSetup {
        make_setup(
            heisenberg(),
            named(3, vec![v(&[1, 0, 0])], &["X"]),
            Some(named(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])], &["Y", "Z"])),
            CharacterDiff::trivial(1),
            vec![],
        )
        .unwrap()
    }

    pub fn sl2_hyperbolic() -> CosetSetup {
        make_setup(
            sl2(),
            named(3, vec![v(&[0, 1, -1])], &["K"]),
            Some(named(3, vec![v(&[1, 0, 0]), v(&[0, 1, 1])], &["H", "P"])),
            CharacterDiff::trivial(1),
            vec![],
        )
        .unwrap()
    }

    pub fn identity_matrix(n: usize) -> Matrix {
        crate::linalg::identity(n)
    }
}
