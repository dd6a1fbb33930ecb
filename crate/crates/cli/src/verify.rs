//! The self-verification suite behind the `verify` command.

use ga_cox_core::derivation::{apply_derivation, is_invariant};
use ga_cox_core::discovery::{candidate_levels, evaluate_relation};
use ga_cox_core::graded::{derivation_kernel_basis, invariant_basis};
use ga_cox_core::{
    boundary_invariants, fixed_components, laurent_rewrite, BlowupModel, ConfigSpec,
    Error as CoreError, Field, Limits, PicClass,
};

use crate::commands::{discover_generators, discover_relations, par_map};
use crate::report::{CheckOut, Status, VerifyReport};

fn check(name: &str, status: Status, detail: impl Into<String>) -> CheckOut {
    CheckOut {
        name: name.into(),
        status,
        detail: detail.into(),
    }
}

/// `Pass` when `failures` is empty, otherwise `Fail` naming the first few.
fn tally(name: &str, total: usize, what: &str, failures: Vec<String>) -> CheckOut {
    if failures.is_empty() {
        return check(name, Status::Pass, format!("{total} {what}"));
    }
    let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
    check(
        name,
        Status::Fail,
        format!(
            "{} of {total} {what} failed: {}",
            failures.len(),
            shown.join("; ")
        ),
    )
}

/// Runs every check up to `max_weight`. `spec` is the configuration of
/// `model`; the cross-oracle check is run on its rational version.
pub fn verify(
    model: &BlowupModel,
    spec: &ConfigSpec,
    max_weight: i64,
    limits: &Limits,
) -> Result<VerifyReport, CoreError> {
    let mut checks = Vec::new();

    // substitution invariants versus the derivation kernel over the rationals
    let rational = ConfigSpec {
        kind: spec.kind.clone(),
        field: Field::Rational,
    }
    .build()?;
    let classes: Vec<PicClass> = candidate_levels(&rational, max_weight, true, limits)?
        .into_iter()
        .flat_map(|(_, v)| v)
        .collect();
    let agree = par_map(&classes, |d| {
        let a = invariant_basis(&rational, d)?;
        let b = derivation_kernel_basis(&rational, d)?;
        Ok((a == b)
            .then_some(())
            .ok_or_else(|| rational.format_class(d)))
    })?;
    checks.push(tally(
        "substitution_vs_derivation_kernel",
        classes.len(),
        "classes",
        agree.into_iter().filter_map(Result::err).collect(),
    ));

    // boundary invariants
    let boundary = if model.is_m0n() {
        let all = boundary_invariants(model)?;
        let failures = par_map(&all, |b| {
            let inv = invariant_basis(model, &b.class)?;
            let ok = is_invariant(model, &b.polynomial)?
                && apply_derivation(model, 0, &b.polynomial)?.is_zero()
                && inv.dim() == 1
                && inv.piece.len() == b.polynomial.len();
            Ok((!ok).then(|| model.format_poly(&b.polynomial)))
        })?;
        checks.push(tally(
            "boundary_invariance",
            all.len(),
            "boundary invariants",
            failures.into_iter().flatten().collect(),
        ));
        all
    } else {
        checks.push(check(
            "boundary_invariance",
            Status::Skip,
            "not an m0n model",
        ));
        Vec::new()
    };

    let gens = discover_generators(model, max_weight, limits)?;
    let failures = par_map(&gens, |g| {
        let ok = is_invariant(model, &g.polynomial)?
            && model.homogeneous_class(&g.polynomial).as_ref() == Some(&g.class);
        Ok((!ok).then(|| format!("g{}", g.index + 1)))
    })?;
    checks.push(tally(
        "generators_invariant",
        gens.len(),
        "generators",
        failures.into_iter().flatten().collect(),
    ));

    if model.is_m0n() {
        let in_range: Vec<_> = boundary
            .iter()
            .filter(|b| model.class_weight(&b.class) <= max_weight)
            .collect();
        let missing: Vec<String> = in_range
            .iter()
            .filter(|b| !gens.iter().any(|g| g.polynomial == b.polynomial))
            .map(|b| model.format_poly(&b.polynomial))
            .collect();
        checks.push(tally(
            "boundary_among_generators",
            in_range.len(),
            "boundary invariants within the bound",
            missing,
        ));
        let failures = par_map(&gens, |g| {
            let cert = laurent_rewrite(model, &g.polynomial)?;
            Ok((!cert.roundtrip).then(|| format!("g{}", g.index + 1)))
        })?;
        checks.push(tally(
            "laurent_roundtrip",
            gens.len(),
            "generators",
            failures.into_iter().flatten().collect(),
        ));
    } else {
        checks.push(check(
            "boundary_among_generators",
            Status::Skip,
            "not an m0n model",
        ));
        checks.push(check("laurent_roundtrip", Status::Skip, "not an m0n model"));
    }

    let rels = discover_relations(model, &gens, max_weight, limits)?;
    let failures = par_map(&rels, |r| {
        let ok = evaluate_relation(model, &gens, &r.terms)?.is_zero();
        Ok((!ok).then(|| format!("r{}", r.index + 1)))
    })?;
    checks.push(tally(
        "relations_vanish",
        rels.len(),
        "relations",
        failures.into_iter().flatten().collect(),
    ));

    if model.t() > 0 {
        let comps = fixed_components(model)?;
        let covers = |t: &[usize]| {
            (0..model.m()).all(|j| {
                model.derivations().iter().all(|row| row[j].is_zero())
                    || t.iter().any(|&e| model.incidence()[e].contains(&j))
            })
        };
        let bad: Vec<String> = comps
            .iter()
            .filter(|c| {
                !covers(&c.divisors)
                    || (0..c.divisors.len()).any(|skip| {
                        let rest: Vec<usize> = c
                            .divisors
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != skip)
                            .map(|(_, &e)| e)
                            .collect();
                        covers(&rest)
                    })
            })
            .map(|c| format!("{:?}", c.divisors))
            .collect();
        checks.push(tally(
            "fixed_components_minimal",
            comps.len(),
            "components",
            bad,
        ));
    } else {
        checks.push(check(
            "fixed_components_minimal",
            Status::Skip,
            "no additive action",
        ));
    }

    let passed = checks.iter().all(|c| c.status != Status::Fail);
    Ok(VerifyReport {
        max_weight,
        passed,
        checks,
    })
}
