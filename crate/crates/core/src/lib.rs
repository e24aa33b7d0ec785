//! Exact computation of invariant differential operators on homogeneous
//! spaces `G/H`, including nonreductive ones.
//!
//! The algebra of left-invariant operators on `G` is modelled by the
//! universal enveloping algebra `U(g)` in a PBW basis adapted to a
//! decomposition `g = m ⊕ h`. On top of that the crate computes the
//! symmetrization map `λ: S(g) → U(g)`, reduction modulo the left ideal
//! generated by `{Y + χ(Y) : Y ∈ h}`, the subalgebra `D_mod` of operators
//! preserving that ideal, and the polynomial invariants `I_mod(m)` whose
//! symmetrizations parameterize the invariant operators on `G/H`.
//!
//! All arithmetic is over exact rationals.

pub mod cli;
pub mod coset;
pub mod error;
pub mod expr;
pub mod format;
pub mod lie;
pub mod linalg;
pub mod pbw;
pub mod presets;
pub mod sym;

pub use coset::{
    check_commutativity, check_generation, check_lambda_imod_equality, check_lambda_imod_in_dmod, imod_basis, in_dmod,
    in_ideal, laplace_generation_check, project_mod_ideal, quotient_class, quotient_mul, verify_direct_sum, ImodBasis,
    QuotientClass, Verdict,
};
pub use error::{Error, Result};
pub use lie::{
    check_character, check_structure, invariant_complement, is_subalgebra, make_setup, sigma, CharacterDiff,
    ComplementOutcome, CosetSetup, LieAlgebra, Subspace,
};
pub use linalg::Rational;
pub use pbw::{Enveloping, PbwElement, RewriteStrategy};
pub use sym::{ad_derivation, ad_group, monomial_basis, sigma_hom, DegreeMode, Monomial, SymPoly};
