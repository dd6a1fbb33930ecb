//! The toric model: variable catalog, incidence of exceptional divisors,
//! Picard grading, derivation coefficients and the positive weight.
//!
//! Variables are indexed `y_1..y_m` (indices `0..m`) followed by the
//! exceptional variables `x_1..x_E` (indices `m..m+E`). Exceptional divisor
//! `e` has incidence set `S_e` of y-indices; `z_j` is the product of the
//! `x_e` with `j` in `S_e`, and the action sends `y_j` to
//! `y_j + (sum_k lambda_k V[k][j]) z_j` while fixing every `x_e`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;
use core::ops::Range;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::matrix::{kernel_basis, ExactMatrix};
use crate::monomial::Monomial;
use crate::polynomial::Polynomial;
use crate::scalar::{Field, Scalar};

/// Input description of a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigKind {
    /// Kapranov model of the moduli space of `n` pointed rational curves.
    M0n { n: usize },
    /// Subspaces of `P^r`, each spanned by the listed points (`r + 1`
    /// homogeneous coordinates each).
    Linear {
        r: usize,
        subspaces: Vec<Vec<Vec<BigRational>>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigSpec {
    pub kind: ConfigKind,
    pub field: Field,
}

impl ConfigSpec {
    pub fn m0n(n: usize, field: Field) -> ConfigSpec {
        ConfigSpec {
            kind: ConfigKind::M0n { n },
            field,
        }
    }

    /// Convenience constructor from integer coordinates.
    pub fn linear_from_ints(r: usize, subspaces: &[&[&[i64]]], field: Field) -> ConfigSpec {
        ConfigSpec {
            kind: ConfigKind::Linear {
                r,
                subspaces: subspaces
                    .iter()
                    .map(|pts| {
                        pts.iter()
                            .map(|p| {
                                p.iter()
                                    .map(|&v| BigRational::from_integer(v.into()))
                                    .collect()
                            })
                            .collect()
                    })
                    .collect(),
            },
            field,
        }
    }

    pub fn build(&self) -> Result<BlowupModel> {
        match &self.kind {
            ConfigKind::M0n { n } => build_m0n(*n, self.field),
            ConfigKind::Linear { .. } => build_linear(self),
        }
    }
}

/// A catalog variable, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Y(usize),
    X(usize),
}

/// A Picard class `h H + sum_e e[e] E_e`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PicClass {
    pub h: i64,
    pub e: Vec<i64>,
}

impl PicClass {
    pub fn zero(num_exceptional: usize) -> PicClass {
        PicClass {
            h: 0,
            e: alloc::vec![0; num_exceptional],
        }
    }

    pub fn hyperplane(num_exceptional: usize) -> PicClass {
        PicClass {
            h: 1,
            ..PicClass::zero(num_exceptional)
        }
    }

    pub fn exceptional(num_exceptional: usize, e: usize) -> PicClass {
        let mut c = PicClass::zero(num_exceptional);
        c.e[e] = 1;
        c
    }

    pub fn is_zero(&self) -> bool {
        self.h == 0 && self.e.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &PicClass) -> PicClass {
        PicClass {
            h: self.h + other.h,
            e: self.e.iter().zip(&other.e).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &PicClass) -> PicClass {
        PicClass {
            h: self.h - other.h,
            e: self.e.iter().zip(&other.e).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> PicClass {
        PicClass {
            h: self.h * k,
            e: self.e.iter().map(|v| v * k).collect(),
        }
    }

    /// `(h, e_1, ..., e_E)`.
    pub fn to_vec(&self) -> Vec<i64> {
        let mut v = Vec::with_capacity(self.e.len() + 1);
        v.push(self.h);
        v.extend_from_slice(&self.e);
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelKind {
    M0n {
        n: usize,
    },
    Linear {
        r: usize,
        /// Column ranges of the point matrix, one per subspace.
        blocks: Vec<Range<usize>>,
        /// The `(r + 1) x m` point matrix over the model field.
        points: Vec<Vec<Scalar>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupModel {
    kind: ModelKind,
    field: Field,
    m: usize,
    incidence: Vec<Vec<usize>>,
    /// e -> y-indices not in S_e
    complement: Vec<Vec<usize>>,
    /// j -> exceptional indices e with j not in S_e
    missing: Vec<Vec<usize>>,
    derivations: Vec<Vec<Scalar>>,
    z: Vec<Monomial>,
    subset_index: BTreeMap<Vec<usize>, usize>,
}

/// All `I` in `{0..m}` with `1 <= |I| <= max_size`, ordered by size then
/// lexicographically.
fn subsets_by_size(m: usize, max_size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 1..=max_size {
        let mut comb: Vec<usize> = (0..k).collect();
        loop {
            out.push(comb.clone());
            let mut i = k;
            while i > 0 && comb[i - 1] == m - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            comb[i - 1] += 1;
            for j in i..k {
                comb[j] = comb[j - 1] + 1;
            }
        }
    }
    out
}

/// Kapranov model of `M_{0,n}`: `y_1..y_{n-1}` and `x_I` for
/// `1 <= |I| <= n-4`, one additive action with all-ones coefficients.
pub fn build_m0n(n: usize, field: Field) -> Result<BlowupModel> {
    if n < 5 {
        return Err(Error::InvalidConfig(format!(
            "m0n requires n >= 5 (got n = {n}); for n <= 4 the space is toric, \
             use a linear configuration with at most r + 1 points instead"
        )));
    }
    let m = n - 1;
    let incidence = subsets_by_size(m, n - 4);
    let derivations = alloc::vec![alloc::vec![Scalar::one(field); m]];
    Ok(BlowupModel::assemble(
        ModelKind::M0n { n },
        field,
        m,
        incidence,
        derivations,
    ))
}

/// Model for subspaces of `P^r` spanned by the given points. The additive
/// group is the kernel of the point matrix; when there are at most `r + 1`
/// points the model is already toric and carries no action.
pub fn build_linear(spec: &ConfigSpec) -> Result<BlowupModel> {
    let ConfigKind::Linear { r, subspaces } = &spec.kind else {
        return Err(Error::WrongKind { expected: "linear" });
    };
    let (r, field) = (*r, spec.field);
    if r == 0 {
        return Err(Error::InvalidConfig(
            "ambient dimension r must be at least 1".into(),
        ));
    }
    if subspaces.is_empty() {
        return Err(Error::InvalidConfig(
            "at least one subspace is required".into(),
        ));
    }
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    let mut blocks = Vec::new();
    for (i, pts) in subspaces.iter().enumerate() {
        if pts.is_empty() {
            return Err(Error::InvalidSubspace {
                index: i,
                message: "no points given".into(),
            });
        }
        let start = columns.len();
        for (k, p) in pts.iter().enumerate() {
            if p.len() != r + 1 {
                return Err(Error::InvalidSubspace {
                    index: i,
                    message: format!(
                        "point {} has {} coordinates, expected r + 1 = {}",
                        k + 1,
                        p.len(),
                        r + 1
                    ),
                });
            }
            let col = p
                .iter()
                .map(|v| Scalar::from_rational(field, v))
                .collect::<Result<Vec<_>>>()
                .map_err(|err| Error::InvalidSubspace {
                    index: i,
                    message: format!("point {}: {err}", k + 1),
                })?;
            if col.iter().all(Scalar::is_zero) {
                return Err(Error::InvalidSubspace {
                    index: i,
                    message: format!("point {} has all coordinates zero over {field}", k + 1),
                });
            }
            columns.push(col);
        }
        let block = start..columns.len();
        // the spanning points must be independent, otherwise L'_i meets the
        // projection center
        let block_rank = ExactMatrix::from_rows(field, r + 1, &columns[block.clone()])?.rank();
        if block_rank < block.len() {
            return Err(Error::InvalidSubspace {
                index: i,
                message: format!("its {} spanning points are linearly dependent", block.len()),
            });
        }
        blocks.push(block);
    }
    let m = columns.len();
    let points: Vec<Vec<Scalar>> = (0..=r)
        .map(|row| columns.iter().map(|c| c[row].clone()).collect())
        .collect();
    let a = ExactMatrix::from_rows(field, m, &points)?;
    if a.rank() < m.min(r + 1) {
        return Err(Error::InvalidConfig(format!(
            "the {m} points span a projective subspace of dimension {} < {}",
            a.rank() as i64 - 1,
            m.min(r + 1) - 1
        )));
    }
    let derivations = if m <= r + 1 {
        Vec::new()
    } else {
        kernel_basis(&a)
    };
    let incidence = blocks.iter().map(|b| b.clone().collect()).collect();
    Ok(BlowupModel::assemble(
        ModelKind::Linear { r, blocks, points },
        field,
        m,
        incidence,
        derivations,
    ))
}

impl BlowupModel {
    fn assemble(
        kind: ModelKind,
        field: Field,
        m: usize,
        incidence: Vec<Vec<usize>>,
        derivations: Vec<Vec<Scalar>>,
    ) -> BlowupModel {
        let big_e = incidence.len();
        let complement: Vec<Vec<usize>> = incidence
            .iter()
            .map(|s| (0..m).filter(|j| !s.contains(j)).collect())
            .collect();
        let missing: Vec<Vec<usize>> = (0..m)
            .map(|j| (0..big_e).filter(|&e| !incidence[e].contains(&j)).collect())
            .collect();
        let z = (0..m)
            .map(|j| {
                Monomial::from_pairs(
                    (0..big_e)
                        .filter(|&e| incidence[e].contains(&j))
                        .map(|e| (m + e, 1)),
                )
            })
            .collect();
        let subset_index = incidence
            .iter()
            .enumerate()
            .map(|(e, s)| (s.clone(), e))
            .collect();
        BlowupModel {
            kind,
            field,
            m,
            incidence,
            complement,
            missing,
            derivations,
            z,
            subset_index,
        }
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn is_m0n(&self) -> bool {
        matches!(self.kind, ModelKind::M0n { .. })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Number of y-variables.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of exceptional divisors `E`.
    pub fn num_exceptional(&self) -> usize {
        self.incidence.len()
    }

    /// Number of additive parameters `t`.
    pub fn t(&self) -> usize {
        self.derivations.len()
    }

    pub fn nvars(&self) -> usize {
        self.m + self.incidence.len()
    }

    pub fn pic_rank(&self) -> usize {
        1 + self.incidence.len()
    }

    /// Incidence sets `S_e`, 0-based y-indices.
    pub fn incidence(&self) -> &[Vec<usize>] {
        &self.incidence
    }

    /// y-indices outside `S_e`.
    pub fn complement(&self, e: usize) -> &[usize] {
        &self.complement[e]
    }

    /// Exceptional indices `e` with `j` outside `S_e`.
    pub fn missing(&self, j: usize) -> &[usize] {
        &self.missing[j]
    }

    /// Derivation coefficient rows, `t x m`.
    pub fn derivations(&self) -> &[Vec<Scalar>] {
        &self.derivations
    }

    /// `z_j` as a monomial in the catalog.
    pub fn z(&self, j: usize) -> &Monomial {
        &self.z[j]
    }

    pub fn var_index(&self, v: Var) -> Result<usize> {
        match v {
            Var::Y(j) if j < self.m => Ok(j),
            Var::X(e) if e < self.incidence.len() => Ok(self.m + e),
            _ => Err(Error::UnknownVariable(format!("{v:?}"))),
        }
    }

    pub fn var_of(&self, index: usize) -> Var {
        if index < self.m {
            Var::Y(index)
        } else {
            Var::X(index - self.m)
        }
    }

    pub fn is_y(&self, index: usize) -> bool {
        index < self.m
    }

    pub fn y(&self, j: usize) -> Polynomial {
        Polynomial::var(self.field, self.nvars(), j)
    }

    pub fn x(&self, e: usize) -> Polynomial {
        Polynomial::var(self.field, self.nvars(), self.m + e)
    }

    /// Exceptional index of the m0n subset `I` (0-based elements, any order).
    pub fn subset_index(&self, subset: &[usize]) -> Option<usize> {
        let mut key = subset.to_vec();
        key.sort_unstable();
        self.subset_index.get(&key).copied()
    }

    /// Divisor label: `{1,2}` for m0n, `3` for linear (1-based).
    pub fn exceptional_label(&self, e: usize) -> String {
        match self.kind {
            ModelKind::M0n { .. } => {
                let inner: Vec<String> = self.incidence[e]
                    .iter()
                    .map(|j| (j + 1).to_string())
                    .collect();
                format!("{{{}}}", inner.join(","))
            }
            ModelKind::Linear { .. } => (e + 1).to_string(),
        }
    }

    pub fn var_name(&self, index: usize) -> String {
        match self.var_of(index) {
            Var::Y(j) => format!("y{}", j + 1),
            Var::X(e) => format!("x{}", self.exceptional_label(e)),
        }
    }

    pub fn format_poly(&self, f: &Polynomial) -> String {
        let nv = self.nvars();
        f.format_with(&|i| {
            if i < nv {
                self.var_name(i)
            } else {
                format!("l{}", i - nv + 1)
            }
        })
    }

    pub fn degree_of_variable(&self, v: Var) -> Result<PicClass> {
        self.var_index(v)?;
        let big_e = self.num_exceptional();
        Ok(match v {
            Var::X(e) => PicClass::exceptional(big_e, e),
            Var::Y(j) => {
                let mut c = PicClass::hyperplane(big_e);
                for &e in &self.missing[j] {
                    c.e[e] = -1;
                }
                c
            }
        })
    }

    pub fn degree_of_monomial(&self, mono: &Monomial) -> PicClass {
        let mut c = PicClass::zero(self.num_exceptional());
        for (i, k) in mono.iter() {
            let k = k as i64;
            match self.var_of(i) {
                Var::X(e) => c.e[e] += k,
                Var::Y(j) => {
                    c.h += k;
                    for &e in &self.missing[j] {
                        c.e[e] -= k;
                    }
                }
            }
        }
        c
    }

    /// Common class of all terms, or `None` for zero or inhomogeneous input.
    pub fn homogeneous_class(&self, f: &Polynomial) -> Option<PicClass> {
        let mut it = f.terms().map(|(m, _)| self.degree_of_monomial(m));
        let first = it.next()?;
        it.all(|c| c == first).then_some(first)
    }

    /// `sum_e E_e - H`, the degree of every derivation.
    pub fn shift_class(&self) -> PicClass {
        PicClass {
            h: -1,
            e: alloc::vec![1; self.num_exceptional()],
        }
    }

    pub fn y_weight(&self, j: usize) -> u64 {
        (self.num_exceptional() + 1 - self.missing[j].len()) as u64
    }

    pub fn var_weight(&self, index: usize) -> u64 {
        match self.var_of(index) {
            Var::Y(j) => self.y_weight(j),
            Var::X(_) => 1,
        }
    }

    pub fn monomial_weight(&self, mono: &Monomial) -> u64 {
        mono.iter()
            .map(|(i, k)| self.var_weight(i) * k as u64)
            .sum()
    }

    /// The weight as a linear form on classes: `(E + 1) h + sum_e d_e`.
    pub fn class_weight(&self, d: &PicClass) -> i64 {
        (self.num_exceptional() as i64 + 1) * d.h + d.e.iter().sum::<i64>()
    }

    /// Renders `d` in the class-expression grammar accepted by
    /// [`BlowupModel::parse_class`].
    pub fn format_class(&self, d: &PicClass) -> String {
        let mut out = String::new();
        let push = |coef: i64, sym: &str, out: &mut String| {
            if coef == 0 {
                return;
            }
            if out.is_empty() {
                if coef < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if coef < 0 { " - " } else { " + " });
            }
            if coef.abs() != 1 {
                let _ = write!(out, "{}", coef.abs());
            }
            out.push_str(sym);
        };
        push(d.h, "H", &mut out);
        for (e, &c) in d.e.iter().enumerate() {
            push(c, &format!("E{}", self.exceptional_label(e)), &mut out);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parses a signed sum of terms `[k]H`, `[k]E{i,j,..}` (m0n) or `[k]E<i>`
    /// (linear). Indices are 1-based; whitespace is ignored. A lone `0`
    /// denotes the zero class.
    pub fn parse_class(&self, text: &str) -> Result<PicClass> {
        ClassParser {
            model: self,
            chars: text
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
            len: text.len(),
        }
        .parse()
    }
}

struct ClassParser<'a> {
    model: &'a BlowupModel,
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl ClassParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(i, _)| i)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::ClassSyntax {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn number(&mut self) -> Option<u64> {
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            v = v.checked_mul(10)?.checked_add(d as u64)?;
            self.pos += 1;
        }
        (self.pos > start).then_some(v)
    }

    fn parse(mut self) -> Result<PicClass> {
        let big_e = self.model.num_exceptional();
        let mut class = PicClass::zero(big_e);
        if self.chars.iter().map(|&(_, c)| c).eq("0".chars()) {
            return Ok(class);
        }
        if self.chars.is_empty() {
            return self.err("empty class expression");
        }
        let mut first = true;
        while self.pos < self.chars.len() {
            let sign: i64 = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => return self.err("expected '+' or '-'"),
            };
            first = false;
            let coef = match self.number() {
                Some(v) => match i64::try_from(v) {
                    Ok(v) => v,
                    Err(_) => return self.err("coefficient too large"),
                },
                None if self.peek().is_some_and(|c| c.is_ascii_digit()) => {
                    return self.err("coefficient too large")
                }
                None => 1,
            };
            let coef = sign * coef;
            match self.peek() {
                Some('H') => {
                    self.pos += 1;
                    class.h += coef;
                }
                Some('E') => {
                    self.pos += 1;
                    let e = self.exceptional()?;
                    class.e[e] += coef;
                }
                _ => return self.err("expected 'H' or 'E'"),
            }
        }
        Ok(class)
    }

    fn exceptional(&mut self) -> Result<usize> {
        match &self.model.kind {
            ModelKind::M0n { n } => {
                if self.peek() != Some('{') {
                    return self.err("expected '{' after 'E'");
                }
                self.pos += 1;
                let mut subset = Vec::new();
                loop {
                    let at = self.offset();
                    let Some(i) = self.number() else {
                        return self.err("expected an index");
                    };
                    if i == 0 || i as usize > n - 1 {
                        return Err(Error::ClassSyntax {
                            position: at,
                            message: format!("index {i} outside 1..={}", n - 1),
                        });
                    }
                    let i = i as usize - 1;
                    if subset.contains(&i) {
                        return self.err("repeated index in subset");
                    }
                    subset.push(i);
                    match self.peek() {
                        Some(',') => self.pos += 1,
                        Some('}') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return self.err("expected ',' or '}'"),
                    }
                }
                subset.sort_unstable();
                self.model.subset_index(&subset).ok_or_else(|| {
                    let label: Vec<String> = subset.iter().map(|j| (j + 1).to_string()).collect();
                    Error::UnknownDivisor(format!(
                        "E{{{}}} (exceptional subsets have size 1..={})",
                        label.join(","),
                        n - 4
                    ))
                })
            }
            ModelKind::Linear { .. } => {
                let Some(i) = self.number() else {
                    return self.err("expected an index after 'E'");
                };
                let big_e = self.model.num_exceptional();
                if i == 0 || i as usize > big_e {
                    return Err(Error::UnknownDivisor(format!(
                        "E{i} (model has E1..E{big_e})"
                    )));
                }
                Ok(i as usize - 1)
            }
        }
    }
}
