//! Serializable command results and their TSV rendering.

use std::fmt::Write as _;

use ga_cox_core::model::ModelKind;
use ga_cox_core::{BlowupModel, GeneratorRecord, PicClass, Polynomial, RelationRecord, Scalar};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermOut {
    pub coefficient: String,
    /// `(variable, exponent)` pairs in catalog order.
    pub monomial: Vec<(String, u32)>,
}

/// A polynomial as display text plus its terms, leading term first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyOut {
    pub text: String,
    pub terms: Vec<TermOut>,
}

impl PolyOut {
    pub fn new(model: &BlowupModel, f: &Polynomial) -> PolyOut {
        PolyOut {
            text: model.format_poly(f),
            terms: f
                .terms()
                .rev()
                .map(|(m, c)| TermOut {
                    coefficient: c.to_string(),
                    monomial: m.iter().map(|(i, e)| (model.var_name(i), e)).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassOut {
    pub text: String,
    /// `(d_H, d_1, ..., d_E)`.
    pub vector: Vec<i64>,
}

impl ClassOut {
    pub fn new(model: &BlowupModel, d: &PicClass) -> ClassOut {
        ClassOut {
            text: model.format_class(d),
            vector: d.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableOut {
    pub name: String,
    pub class: ClassOut,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelReport {
    pub kind: String,
    pub field: String,
    pub y_variables: usize,
    pub exceptional_divisors: usize,
    pub variables: usize,
    pub t: usize,
    pub pic_rank: usize,
    pub shift_class: ClassOut,
    /// Rows of the derivation coefficient matrix.
    pub derivations: Vec<Vec<String>>,
    pub catalog: Vec<VariableOut>,
}

impl ModelReport {
    pub fn new(model: &BlowupModel) -> ModelReport {
        let kind = match model.kind() {
            ModelKind::M0n { n } => format!("m0n(n={n})"),
            ModelKind::Linear { r, .. } => format!("linear(r={r})"),
        };
        ModelReport {
            kind,
            field: model.field().to_string(),
            y_variables: model.m(),
            exceptional_divisors: model.num_exceptional(),
            variables: model.nvars(),
            t: model.t(),
            pic_rank: model.pic_rank(),
            shift_class: ClassOut::new(model, &model.shift_class()),
            derivations: model
                .derivations()
                .iter()
                .map(|row| row.iter().map(Scalar::to_string).collect())
                .collect(),
            catalog: (0..model.nvars())
                .map(|i| VariableOut {
                    name: model.var_name(i),
                    class: ClassOut::new(
                        model,
                        &model.degree_of_monomial(&ga_cox_core::Monomial::var(i)),
                    ),
                    weight: model.var_weight(i),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimReport {
    pub class: ClassOut,
    pub weight: i64,
    pub piece_dim: usize,
    pub invariant_dim: usize,
    pub effective: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<PolyOut>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorOut {
    /// 1-based; relations refer to generators as `g<index>`.
    pub index: usize,
    pub class: ClassOut,
    pub weight: i64,
    pub polynomial: PolyOut,
}

impl GeneratorOut {
    pub fn new(model: &BlowupModel, g: &GeneratorRecord) -> GeneratorOut {
        GeneratorOut {
            index: g.index + 1,
            class: ClassOut::new(model, &g.class),
            weight: g.weight,
            polynomial: PolyOut::new(model, &g.polynomial),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsReport {
    pub max_weight: i64,
    pub count: usize,
    pub generators: Vec<GeneratorOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTermOut {
    pub coefficient: String,
    /// 1-based generator indices with multiplicity.
    pub product: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationOut {
    pub index: usize,
    pub class: ClassOut,
    pub weight: i64,
    pub text: String,
    pub terms: Vec<RelationTermOut>,
}

/// `2*g1*g5^2 - g3*g4`, terms in the stored order.
pub fn format_relation(terms: &[(Vec<usize>, Scalar)]) -> String {
    let mut out = String::new();
    for (k, (key, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mut factors = Vec::new();
        if !abs.is_one() {
            factors.push(abs.to_string());
        }
        let mut i = 0;
        while i < key.len() {
            let run = key[i..].iter().take_while(|&&g| g == key[i]).count();
            factors.push(if run > 1 {
                format!("g{}^{run}", key[i] + 1)
            } else {
                format!("g{}", key[i] + 1)
            });
            i += run;
        }
        out.push_str(&factors.join("*"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl RelationOut {
    pub fn new(model: &BlowupModel, r: &RelationRecord) -> RelationOut {
        RelationOut {
            index: r.index + 1,
            class: ClassOut::new(model, &r.class),
            weight: r.weight,
            text: format_relation(&r.terms),
            terms: r
                .terms
                .iter()
                .map(|(key, c)| RelationTermOut {
                    coefficient: c.to_string(),
                    product: key.iter().map(|g| g + 1).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationsReport {
    pub max_weight: i64,
    pub generator_weight: i64,
    pub generators: Vec<GeneratorOut>,
    pub count: usize,
    pub relations: Vec<RelationOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryOut {
    pub label: String,
    pub class: ClassOut,
    pub weight: i64,
    pub polynomial: PolyOut,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryReport {
    pub count: usize,
    pub elements: Vec<BoundaryOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedReport {
    pub count: usize,
    /// Each component as the labels of its exceptional divisors.
    pub components: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOut {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub max_weight: i64,
    pub passed: bool,
    pub checks: Vec<CheckOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Model(ModelReport),
    Dim(DimReport),
    Effective(DimReport),
    Generators(GeneratorsReport),
    Relations(RelationsReport),
    Boundary(BoundaryReport),
    FixedComponents(FixedReport),
    Verify(VerifyReport),
}

fn join_vec(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_tsv(&self) -> String {
        let mut o = String::new();
        match self {
            Report::Model(r) => {
                let _ = writeln!(o, "kind\t{}", r.kind);
                let _ = writeln!(o, "field\t{}", r.field);
                let _ = writeln!(o, "y_variables\t{}", r.y_variables);
                let _ = writeln!(o, "exceptional_divisors\t{}", r.exceptional_divisors);
                let _ = writeln!(o, "variables\t{}", r.variables);
                let _ = writeln!(o, "t\t{}", r.t);
                let _ = writeln!(o, "pic_rank\t{}", r.pic_rank);
                let _ = writeln!(o, "shift_class\t{}", r.shift_class.text);
                for (k, row) in r.derivations.iter().enumerate() {
                    let _ = writeln!(o, "derivation_{}\t{}", k + 1, row.join(","));
                }
                let _ = writeln!(o, "variable\tweight\tclass\tclass_vector");
                for v in &r.catalog {
                    let _ = writeln!(
                        o,
                        "{}\t{}\t{}\t{}",
                        v.name,
                        v.weight,
                        v.class.text,
                        join_vec(&v.class.vector)
                    );
                }
            }
            Report::Dim(r) | Report::Effective(r) => {
                let _ = writeln!(o, "class\t{}", r.class.text);
                let _ = writeln!(o, "class_vector\t{}", join_vec(&r.class.vector));
                let _ = writeln!(o, "weight\t{}", r.weight);
                let _ = writeln!(o, "piece_dim\t{}", r.piece_dim);
                let _ = writeln!(o, "invariant_dim\t{}", r.invariant_dim);
                let _ = writeln!(o, "effective\t{}", r.effective);
                if let Some(basis) = &r.basis {
                    for (k, f) in basis.iter().enumerate() {
                        let _ = writeln!(o, "basis_{}\t{}", k + 1, f.text);
                    }
                }
            }
            Report::Generators(r) => {
                let _ = writeln!(o, "max_weight\t{}", r.max_weight);
                let _ = writeln!(o, "count\t{}", r.count);
                generator_table(&mut o, &r.generators);
            }
            Report::Relations(r) => {
                let _ = writeln!(o, "max_weight\t{}", r.max_weight);
                let _ = writeln!(o, "generator_weight\t{}", r.generator_weight);
                let _ = writeln!(o, "generators\t{}", r.generators.len());
                generator_table(&mut o, &r.generators);
                let _ = writeln!(o, "count\t{}", r.count);
                let _ = writeln!(o, "relation\tweight\tclass\trelation");
                for rel in &r.relations {
                    let _ = writeln!(
                        o,
                        "r{}\t{}\t{}\t{}",
                        rel.index, rel.weight, rel.class.text, rel.text
                    );
                }
            }
            Report::Boundary(r) => {
                let _ = writeln!(o, "count\t{}", r.count);
                let _ = writeln!(o, "label\tweight\tclass\tpolynomial");
                for b in &r.elements {
                    let _ = writeln!(
                        o,
                        "{}\t{}\t{}\t{}",
                        b.label, b.weight, b.class.text, b.polynomial.text
                    );
                }
            }
            Report::FixedComponents(r) => {
                let _ = writeln!(o, "count\t{}", r.count);
                let _ = writeln!(o, "component\tsize\tdivisors");
                for (k, c) in r.components.iter().enumerate() {
                    let _ = writeln!(o, "{}\t{}\t{}", k + 1, c.len(), c.join(" "));
                }
            }
            Report::Verify(r) => {
                let _ = writeln!(o, "max_weight\t{}", r.max_weight);
                let _ = writeln!(o, "check\tstatus\tdetail");
                for c in &r.checks {
                    let status = match c.status {
                        Status::Pass => "pass",
                        Status::Fail => "fail",
                        Status::Skip => "skip",
                    };
                    let _ = writeln!(o, "{}\t{status}\t{}", c.name, c.detail);
                }
                let _ = writeln!(o, "result\t{}", if r.passed { "pass" } else { "fail" });
            }
        }
        o
    }
}

fn generator_table(o: &mut String, gens: &[GeneratorOut]) {
    let _ = writeln!(o, "generator\tweight\tclass\tpolynomial");
    for g in gens {
        let _ = writeln!(
            o,
            "g{}\t{}\t{}\t{}",
            g.index, g.weight, g.class.text, g.polynomial.text
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ga_cox_core::Field;

    #[test]
    fn relation_text() {
        let q = |v| Scalar::from_i64(Field::Rational, v);
        let terms = vec![(vec![0, 4, 4], q(2)), (vec![2, 3], q(-1)), (vec![1], q(1))];
        assert_eq!(format_relation(&terms), "2*g1*g5^2 - g3*g4 + g2");
        assert_eq!(format_relation(&[]), "0");
    }
}
