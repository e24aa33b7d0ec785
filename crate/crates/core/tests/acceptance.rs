//! Acceptance criteria 1 to 10. Each test prints one line
//! `criterion N: PASS|FAIL ...` (run with `--nocapture` to see them).
//! All comparisons are exact rational equality; the only tolerances are the
//! wall-clock limits below.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use invdiff::coset::{dmod_filtered_basis, ideal_generator, lambda_sm_dmod_basis, symmetrize_m, Verdict};
use invdiff::expr::{eval_enveloping, parse_expr, Vocabulary};
use invdiff::lie::is_invariant_complement;
use invdiff::linalg::{rank, ratio};
use invdiff::{
    ad_derivation, check_commutativity, check_lambda_imod_equality, check_lambda_imod_in_dmod, cli, imod_basis,
    in_dmod, in_ideal, invariant_complement, laplace_generation_check, project_mod_ideal, verify_direct_sum,
    ComplementOutcome, Enveloping, Monomial, PbwElement, SymPoly,
};
use rand::Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion(n: u32, title: &str, limit_secs: u64, f: impl FnOnce() -> Check) {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f));
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit_secs);
    let (ok, detail) = match result {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(_) => (false, "panicked".to_string()),
    };
    let timely = elapsed <= limit;
    let pass = ok && timely;
    println!(
        "criterion {n}: {} {title} ({:.3}s, limit {limit_secs}s) {detail}{}",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        if timely { "" } else { " [over time limit]" },
    );
    assert!(pass, "criterion {n} failed: {detail}");
}

#[test]
fn criterion_01_horocycle_invariants_are_powers_of_h() {
    criterion(1, "sl2r_horocycle invariants --degree d = {H^d}, d = 0..4", 1, || {
        let l = preset("sl2r_horocycle");
        for d in 0..=4usize {
            let b = imod_basis(&l.setup, d);
            let h = SymPoly::var(2, 0).pow(d as u32);
            ensure(b.polys == vec![h], format!("degree {d}: {:?}", b.polys))?;

            let out = cli::run(["invdiff", "--setup", "sl2r_horocycle", "invariants", "--degree", &d.to_string()]);
            let expected = match d {
                0 => "1".to_string(),
                1 => "H".to_string(),
                _ => format!("H^{d}"),
            };
            ensure(out.code == 0, format!("exit code {}", out.code))?;
            ensure(
                out.stdout.contains(&format!("dimension: 1\nbasis:\n  - {expected}\n")),
                format!("CLI output for degree {d}:\n{}", out.stdout),
            )?;
        }
        Ok("dimension 1 at each degree".into())
    });
}

#[test]
fn criterion_02_reductivity() {
    criterion(2, "reductive: infeasible on horocycle/GN/sl3, complement on sphere/hyperbolic", 25, || {
        let mut seen = Vec::new();
        for (name, expect) in [
            ("sl2r_horocycle", false),
            ("sl2r_GN", false),
            ("sl3r_horocycle", false),
            ("so3_sphere", true),
            ("sl2r_hyperbolic", true),
        ] {
            let start = Instant::now();
            let l = preset(name);
            let s = &l.setup;
            let outcome = invariant_complement(s.algebra(), s.h(), s.component_reps());
            match (&outcome, expect) {
                (ComplementOutcome::Invariant(w), true) => {
                    ensure(is_invariant_complement(s.algebra(), s.h(), w), format!("{name}: complement not invariant"))?
                }
                (ComplementOutcome::Infeasible(c), false) => {
                    ensure(!c.combination.is_empty(), format!("{name}: empty certificate"))?
                }
                _ => return Err(format!("{name}: unexpected outcome {outcome:?}")),
            }
            let code = cli::run(["invdiff", "--setup", name, "reductive"]).code;
            ensure(code == if expect { 0 } else { 1 }, format!("{name}: exit code {code}"))?;
            ensure(start.elapsed() < Duration::from_secs(5), format!("{name}: over 5s"))?;
            seen.push(name);
        }
        Ok(format!("{} presets, each under 5s", seen.len()))
    });
}

#[test]
fn criterion_03_horocycle_commutativity() {
    criterion(3, "sl2r_horocycle: lambda(I_mod) in D_mod (<=4), equality (<=3), commutativity (<=4)", 10, || {
        let l = preset("sl2r_horocycle");
        ensure(check_lambda_imod_in_dmod(&l.setup, 4), "lambda(I_mod) not in D_mod")?;
        let eq = check_lambda_imod_equality(&l.setup, 3);
        ensure(eq.verdict == Verdict::Pass, format!("equality: {eq:?}"))?;
        let c = check_commutativity(&l.setup, 4);
        ensure(c.verdict == Verdict::Pass, format!("commutativity: {c:?}"))?;
        Ok(format!("{} commutator pairs", c.pairs_checked))
    });
}

#[test]
fn criterion_04_complex_gn() {
    criterion(4, "sl2c_real_GN: dim I_mod = 2, 3 in degrees 1, 2; commutativity (<=2)", 60, || {
        let l = preset("sl2c_real_GN");
        let s = &l.setup;
        let names = s.m_names();
        let allowed: Vec<usize> = ["H", "Hi"]
            .iter()
            .map(|n| names.iter().position(|x| x == n).ok_or(format!("{n} not in m")))
            .collect::<Result<_, _>>()?;
        for (d, dim) in [(1, 2), (2, 3)] {
            let b = imod_basis(s, d);
            ensure(b.dim() == dim, format!("degree {d}: dimension {}", b.dim()))?;
            // all of S^d(span{H, Hi})
            for p in &b.polys {
                let only_a =
                    p.terms().keys().all(|m| m.exps().iter().enumerate().all(|(i, &e)| e == 0 || allowed.contains(&i)));
                ensure(only_a, format!("degree {d}: {} leaves S(span{{H, Hi}})", p.render(names)))?;
            }
        }
        let c = check_commutativity(s, 2);
        ensure(c.verdict == Verdict::Pass, format!("commutativity: {c:?}"))?;
        Ok("I_mod = S(span{H, Hi}) through degree 2".into())
    });
}

#[test]
fn criterion_05_casimir_reduction() {
    criterion(5, "Casimir 1/2*H^2 + E*F + F*E reduces to 1/2*H^2 + H on sl2r_horocycle", 1, || {
        // Hand reduction: E*F = F*E + H and, with F = E - K, F*E = E^2 - K*E.
        // Modulo the ideal (chi = 0) every word ending in E vanishes, so the
        // Casimir is congruent to 1/2*H^2 + H.
        let l = preset("sl2r_horocycle");
        let s = &l.setup;
        let vocab = Vocabulary::from_setup(s).map_err(|e| e.to_string())?;
        let cas = eval_enveloping(&parse_expr("1/2*H^2 + E*F + F*E", &vocab).unwrap(), s, &vocab).unwrap();
        // adapted order (H, K, E)
        let expected = PbwElement::from_terms(
            3,
            [(Monomial::new(vec![2, 0, 0]), ratio(1, 2)), (Monomial::new(vec![1, 0, 0]), ratio(1, 1))],
        );
        let got = project_mod_ideal(s, &cas);
        ensure(got == expected, format!("got {}", got.render(s.adapted_names())))?;
        Ok(format!("= {}", got.render(s.adapted_names())))
    });
}

#[test]
fn criterion_06_symmetrization_laws() {
    criterion(6, "lambda round trip, ad-equivariance, lambda(Y^m) = Y^m on sl2, so3, heisenberg", 30, || {
        let mut rng = rng(6);
        let mut checked = 0;
        for name in ["sl2r_horocycle", "so3_sphere", "heisenberg"] {
            let alg = preset(name).setup.algebra().clone();
            let n = alg.dim();
            let env = Enveloping::new(alg.clone());
            for _ in 0..200 {
                let p = sym_poly(&mut rng, n, 5, 4);
                let u = env.symmetrize(&p);
                ensure(env.lambda_coords(&u) == p, format!("{name}: round trip fails on {}", p.render(alg.names())))?;
                for i in 0..n {
                    let x = invdiff::linalg::unit_vec(n, i);
                    let lhs = env.symmetrize(&ad_derivation(&alg, &x, &p).unwrap());
                    ensure(lhs == env.ad(&x, &u), format!("{name}: equivariance fails for basis {i}"))?;
                }
                checked += 1;
            }
            for _ in 0..20 {
                let y = vector(&mut rng, n);
                let m = rng.gen_range(0..=4u32);
                let lam = env.symmetrize(&SymPoly::linear(&y).pow(m));
                let yu = PbwElement::from_vector(&y);
                let word = (0..m).fold(PbwElement::one(n), |acc, _| env.mul(&acc, &yu));
                ensure(lam == word, format!("{name}: lambda(Y^{m}) differs from Y^{m}"))?;
            }
        }
        Ok(format!("{checked} polynomials, 60 powers"))
    });
}

#[test]
fn criterion_07_direct_sum_dimensions() {
    criterion(7, "direct sum dimensions, m = 0..3, all presets", 60, || {
        let mut rows = 0;
        for l in all_presets() {
            for m in 0..=3 {
                let r = verify_direct_sum(&l.setup, m);
                ensure(
                    r.pass && r.total == r.ideal_rank + r.expected_m && r.total == r.expected_total,
                    format!("{} m={m}: {r:?}", l.name),
                )?;
                rows += 1;
            }
        }
        Ok(format!("{rows} (preset, degree) pairs"))
    });
}

#[test]
fn criterion_08_dmod_algebra_laws() {
    criterion(8, "D_mod closed, ideal two-sided in D_mod, quotient products well defined", 60, || {
        let mut rng = rng(8);
        let mut pairs = 0;
        let mut dims = Vec::new();
        for l in all_presets() {
            let s = &l.setup;
            let n = s.n();
            let basis: Vec<PbwElement> = dmod_filtered_basis(s, 3);
            dims.push(format!("{}={}", l.name, basis.len()));
            let gens: Vec<PbwElement> = (0..n - s.r()).map(|k| ideal_generator(s, k)).collect();
            for _ in 0..100 {
                let u = pbw_combo(&mut rng, &basis, 3);
                let v = pbw_combo(&mut rng, &basis, 3);
                ensure(in_dmod(s, &u) && in_dmod(s, &v), format!("{}: sample not in D_mod", l.name))?;
                let uv = s.env().mul(&u, &v);
                ensure(in_dmod(s, &uv), format!("{}: product leaves D_mod", l.name))?;
                if !gens.is_empty() {
                    let g = &gens[rng.gen_range(0..gens.len())];
                    let w = s.env().mul(&pbw(&mut rng, n, 2, 3), g);
                    ensure(in_ideal(s, &s.env().mul(&u, &w)), format!("{}: u*w not in ideal", l.name))?;
                    ensure(in_ideal(s, &s.env().mul(&w, &u)), format!("{}: w*u not in ideal", l.name))?;
                }
                let reduced = s.env().mul(&project_mod_ideal(s, &u), &project_mod_ideal(s, &v));
                ensure(
                    project_mod_ideal(s, &uv) == project_mod_ideal(s, &reduced),
                    format!("{}: quotient product depends on representatives", l.name),
                )?;
                pairs += 1;
            }
        }
        Ok(format!("{pairs} pairs; dim D_mod in U_3: {}", dims.join(" ")))
    });
}

#[test]
fn criterion_09_laplace_generation() {
    criterion(9, "Laplace generation: so3_sphere (<=4), sl2r_hyperbolic (<=2)", 10, || {
        for (name, d) in [("so3_sphere", 4), ("sl2r_hyperbolic", 2)] {
            let g = laplace_generation_check(&preset(name).setup, &[1, 1], d).map_err(|e| e.to_string())?;
            ensure(g.verdict == Verdict::Pass, format!("{name}: {g:?}"))?;
        }
        Ok("eps = (1, 1)".into())
    });
}

#[test]
fn criterion_10_coset_property_suites() {
    criterion(10, "ideal reduction laws, degree drop, leading-term law, reductive specialization", 60, || {
        let mut rng = rng(10);
        let mut instances = 0;
        for l in all_presets() {
            let s = &l.setup;
            let (n, r) = (s.n(), s.r());
            let env = s.env();
            let gens: Vec<PbwElement> = (0..n - r).map(|k| ideal_generator(s, k)).collect();
            let leading: Vec<Vec<SymPoly>> = (0..=3).map(|d| lambda_sm_dmod_basis(s, d)).collect();
            let imod: Vec<Vec<SymPoly>> = (0..=3).map(|d| imod_basis(s, d).polys).collect();
            for _ in 0..100 {
                let u = pbw(&mut rng, n, 3, 4);
                let v = pbw(&mut rng, n, 3, 4);
                for g in &gens {
                    ensure(in_ideal(s, &env.mul(&u, g)), format!("{}: absorption fails", l.name))?;
                }
                let pu = project_mod_ideal(s, &u);
                ensure(project_mod_ideal(s, &pu) == pu, format!("{}: projection not idempotent", l.name))?;
                let c = coeff(&mut rng);
                ensure(
                    project_mod_ideal(s, &u.add_scaled(&v, &c)) == pu.add_scaled(&project_mod_ideal(s, &v), &c),
                    format!("{}: projection not linear", l.name),
                )?;
                let m_only = PbwElement::from_terms(n, pu.terms().iter().map(|(m, c)| (m.clone(), c.clone())));
                ensure(project_mod_ideal(s, &m_only) == m_only, format!("{}: not identity on m-only", l.name))?;
                let p = sym_poly(&mut rng, r, 3, 3);
                if !p.is_zero() {
                    ensure(!in_ideal(s, &symmetrize_m(s, &p)), format!("{}: lambda(S(m)) meets the ideal", l.name))?;
                }

                // degree drop of lambda(sigma Q - Q) modulo the ideal
                let d = rng.gen_range(1..=3);
                let q = homogeneous(&mut rng, n, d, 3);
                let sq = invdiff::sym::sigma_adapted(s, &q).embed(n);
                let red = project_mod_ideal(s, &env.symmetrize(&(&sq - &q)));
                ensure(red.degree().is_none_or(|e| e < d), format!("{}: no degree drop in degree {d}", l.name))?;

                // leading term of P with lambda(P) in D_mod is invariant
                let d = rng.gen_range(1..=3);
                let p = sym_combo(&mut rng, &leading[d], 3);
                ensure(in_dmod(s, &symmetrize_m(s, &p)), format!("{}: sample not in D_mod", l.name))?;
                if let Some(top) = p.degree() {
                    let lead = p.homogeneous_part(top);
                    let basis = invdiff::monomial_basis(r, top, invdiff::DegreeMode::Homogeneous);
                    let span: Vec<_> = imod[top].iter().map(|b| b.coordinates(&basis)).collect();
                    let mut with = span.clone();
                    with.push(lead.coordinates(&basis));
                    ensure(rank(&with) == rank(&span), format!("{}: leading term not invariant", l.name))?;
                }
                instances += 1;
            }
        }
        let so = preset("so3_sphere");
        for d in 0..=4 {
            ensure(
                imod_basis(&so.setup, d) == invdiff::coset::plain_invariants(&so.setup, d),
                format!("so3_sphere: sigma matters in degree {d}"),
            )?;
        }
        Ok(format!("{instances} instances"))
    });
}
