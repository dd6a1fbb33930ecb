//! Command implementations over the core library.

use ga_cox_core::boundary::{boundary_class, BoundaryKind};
use ga_cox_core::discovery::{ClassStep, RelationStep};
use ga_cox_core::graded::invariants_of_piece;
use ga_cox_core::{
    boundary_invariants, enumerate_piece_capped, fixed_components, BlowupModel, Error as CoreError,
    GeneratorDiscovery, GeneratorRecord, Limits, RelationDiscovery, RelationRecord,
};
use rayon::prelude::*;

use crate::report::{
    BoundaryOut, BoundaryReport, ClassOut, DimReport, FixedReport, GeneratorOut, GeneratorsReport,
    ModelReport, PolyOut, RelationOut, RelationsReport, Report,
};

/// Default generator bound: the largest boundary weight for `M_{0,n}`,
/// one more than the largest variable weight otherwise.
pub fn default_max_weight(model: &BlowupModel) -> i64 {
    if model.is_m0n() {
        let mut w = 1;
        for i in 0..model.m() {
            for j in i + 1..model.m() {
                w = w.max(model.class_weight(&boundary_class(model, i, j)));
            }
        }
        w
    } else {
        (0..model.nvars())
            .map(|i| model.var_weight(i) as i64)
            .max()
            .unwrap_or(0)
            + 1
    }
}

/// Runs `f` over `items` in parallel and returns the results in input
/// order, or the first error in input order.
pub fn par_map<T: Sync, U: Send>(
    items: &[T],
    f: impl Fn(&T) -> Result<U, CoreError> + Sync + Send,
) -> Result<Vec<U>, CoreError> {
    let results: Vec<Result<U, CoreError>> = items.par_iter().map(f).collect();
    results.into_iter().collect()
}

pub fn discover_generators(
    model: &BlowupModel,
    max_weight: i64,
    limits: &Limits,
) -> Result<Vec<GeneratorRecord>, CoreError> {
    if max_weight < 1 {
        return Err(CoreError::Precondition(format!(
            "max weight must be at least 1, got {max_weight}"
        )));
    }
    let mut search = GeneratorDiscovery::new(model, *limits);
    for (_, classes) in search.levels(max_weight)? {
        let steps: Vec<ClassStep> = par_map(&classes, |d| search.analyze(d))?;
        for step in steps {
            search.commit(step);
        }
    }
    Ok(search.into_records())
}

pub fn discover_relations(
    model: &BlowupModel,
    generators: &[GeneratorRecord],
    max_weight: i64,
    limits: &Limits,
) -> Result<Vec<RelationRecord>, CoreError> {
    let mut search = RelationDiscovery::new(model, generators, *limits);
    for (_, classes) in search.levels(max_weight)? {
        let steps: Vec<RelationStep> = par_map(&classes, |d| search.analyze(d))?;
        for step in steps {
            search.commit(step);
        }
    }
    Ok(search.into_records())
}

pub fn model_report(model: &BlowupModel) -> Report {
    Report::Model(ModelReport::new(model))
}

pub fn dim_report(
    model: &BlowupModel,
    class: &str,
    basis: bool,
    effective: bool,
    limits: &Limits,
) -> Result<Report, CoreError> {
    let d = model.parse_class(class)?;
    let inv = invariants_of_piece(model, enumerate_piece_capped(model, &d, limits.max_piece)?)?;
    let report = DimReport {
        class: ClassOut::new(model, &d),
        weight: model.class_weight(&d),
        piece_dim: inv.piece.len(),
        invariant_dim: inv.dim(),
        effective: inv.dim() > 0,
        basis: basis.then(|| inv.basis.iter().map(|f| PolyOut::new(model, f)).collect()),
    };
    Ok(if effective {
        Report::Effective(report)
    } else {
        Report::Dim(report)
    })
}

pub fn generators_report(
    model: &BlowupModel,
    max_weight: i64,
    limits: &Limits,
) -> Result<Report, CoreError> {
    let gens = discover_generators(model, max_weight, limits)?;
    Ok(Report::Generators(GeneratorsReport {
        max_weight,
        count: gens.len(),
        generators: gens.iter().map(|g| GeneratorOut::new(model, g)).collect(),
    }))
}

pub fn relations_report(
    model: &BlowupModel,
    generator_weight: i64,
    max_weight: i64,
    limits: &Limits,
) -> Result<Report, CoreError> {
    let gens = discover_generators(model, generator_weight, limits)?;
    let rels = discover_relations(model, &gens, max_weight, limits)?;
    Ok(Report::Relations(RelationsReport {
        max_weight,
        generator_weight,
        generators: gens.iter().map(|g| GeneratorOut::new(model, g)).collect(),
        count: rels.len(),
        relations: rels.iter().map(|r| RelationOut::new(model, r)).collect(),
    }))
}

pub fn boundary_report(model: &BlowupModel) -> Result<Report, CoreError> {
    let elements: Vec<BoundaryOut> = boundary_invariants(model)?
        .iter()
        .map(|b| BoundaryOut {
            label: match b.kind {
                BoundaryKind::Exceptional(e) => model.var_name(model.m() + e),
                BoundaryKind::Binomial(i, j) => format!("B{{{},{}}}", i + 1, j + 1),
            },
            class: ClassOut::new(model, &b.class),
            weight: model.class_weight(&b.class),
            polynomial: PolyOut::new(model, &b.polynomial),
        })
        .collect();
    Ok(Report::Boundary(BoundaryReport {
        count: elements.len(),
        elements,
    }))
}

pub fn fixed_report(model: &BlowupModel) -> Result<Report, CoreError> {
    let components: Vec<Vec<String>> = fixed_components(model)?
        .iter()
        .map(|c| {
            c.divisors
                .iter()
                .map(|&e| format!("E{}", model.exceptional_label(e)))
                .collect()
        })
        .collect();
    Ok(Report::FixedComponents(FixedReport {
        count: components.len(),
        components,
    }))
}
