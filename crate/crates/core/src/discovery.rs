//! Bounded search for generators and relations of the invariant ring.
//!
//! Classes are visited by increasing weight, then by decreasing class
//! vector. Only two shapes of class can contribute anything new: the
//! exceptional classes `E_e`, and classes with `d_H >= 1` and every `d_e <= 0`.
//! If `d_e >= 1` then every monomial of class `d` is divisible by `x_e`, so
//! both invariants and formal relations of class `d` come from class `d - E_e`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graded::{enumerate_piece_capped, invariants_of_piece};
use crate::matrix::{kernel_basis, ExactMatrix, SpanReducer};
use crate::model::{BlowupModel, PicClass};
use crate::polynomial::Polynomial;
use crate::scalar::Scalar;

/// Explicit resource caps. `None` means unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Limits {
    /// Largest admissible number of monomials in one graded piece.
    pub max_piece: Option<usize>,
    /// Largest admissible number of candidate classes.
    pub max_classes: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorRecord {
    /// 0-based discovery ordinal.
    pub index: usize,
    pub class: PicClass,
    pub weight: i64,
    pub polynomial: Polynomial,
}

/// A formal linear combination of generator products that evaluates to zero.
/// Each product is the sorted multiset of its generator indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationRecord {
    pub index: usize,
    pub class: PicClass,
    pub weight: i64,
    pub terms: Vec<(Vec<usize>, Scalar)>,
}

/// Visiting order: weight ascending, then class vector descending.
fn visit_order(model: &BlowupModel, a: &PicClass, b: &PicClass) -> core::cmp::Ordering {
    model
        .class_weight(a)
        .cmp(&model.class_weight(b))
        .then_with(|| b.cmp(a))
}

/// Classes that can carry new generators (`with_exceptional`) or new
/// relations, up to `max_weight`, grouped by weight in visiting order.
pub fn candidate_levels(
    model: &BlowupModel,
    max_weight: i64,
    with_exceptional: bool,
    limits: &Limits,
) -> Result<Vec<(i64, Vec<PicClass>)>> {
    let big_e = model.num_exceptional();
    let mut found = BTreeSet::new();
    let push = |found: &mut BTreeSet<PicClass>, d: PicClass| -> Result<()> {
        found.insert(d);
        match limits.max_classes {
            Some(cap) if found.len() > cap => Err(Error::ResourceLimit(format!(
                "more than {cap} candidate classes up to weight {max_weight}"
            ))),
            _ => Ok(()),
        }
    };
    if with_exceptional && max_weight >= 1 {
        for e in 0..big_e {
            push(&mut found, PicClass::exceptional(big_e, e))?;
        }
    }
    let min_wy = (0..model.m())
        .map(|j| model.y_weight(j) as i64)
        .min()
        .unwrap_or(1)
        .max(1);
    let mut h = 1i64;
    while h * min_wy <= max_weight {
        let mut avecs = Vec::new();
        compositions(
            model.m(),
            h as u32,
            &mut alloc::vec![0; model.m()],
            0,
            &mut avecs,
        );
        for a in avecs {
            let c: Vec<i64> = (0..big_e)
                .map(|e| model.complement(e).iter().map(|&j| a[j] as i64).sum())
                .collect();
            let wmin = (big_e as i64 + 1) * h - c.iter().sum::<i64>();
            if wmin > max_weight {
                continue;
            }
            let mut u = alloc::vec![0i64; big_e];
            let mut classes = Vec::new();
            slack_vectors(&c, 0, max_weight - wmin, &mut u, &mut |u| {
                classes.push(PicClass {
                    h,
                    e: u.iter().zip(&c).map(|(ui, ci)| ui - ci).collect(),
                });
            });
            for d in classes {
                push(&mut found, d)?;
            }
        }
        h += 1;
    }
    Ok(group_levels(model, found))
}

fn group_levels(model: &BlowupModel, found: BTreeSet<PicClass>) -> Vec<(i64, Vec<PicClass>)> {
    let mut all: Vec<PicClass> = found.into_iter().collect();
    all.sort_by(|a, b| visit_order(model, a, b));
    let mut levels: Vec<(i64, Vec<PicClass>)> = Vec::new();
    for d in all {
        let w = model.class_weight(&d);
        match levels.last_mut() {
            Some((lw, v)) if *lw == w => v.push(d),
            _ => levels.push((w, alloc::vec![d])),
        }
    }
    levels
}

/// Classes that can carry new relations among `generators`: sums of a
/// nonempty multiset of generators with positive `H` coefficient and some
/// exceptional classes, with every `d_e <= 0`, up to `max_weight`.
pub fn relation_levels(
    model: &BlowupModel,
    generators: &[GeneratorRecord],
    max_weight: i64,
    limits: &Limits,
) -> Result<Vec<(i64, Vec<PicClass>)>> {
    let others: Vec<&GeneratorRecord> = generators.iter().filter(|g| g.class.h > 0).collect();
    let mut found = BTreeSet::new();
    let mut bases = BTreeSet::new();
    collect_bases(
        &others,
        0,
        PicClass::zero(model.num_exceptional()),
        0,
        max_weight,
        &mut bases,
    );
    for base in bases {
        if base.e.iter().any(|&v| v > 0) {
            continue;
        }
        let room: Vec<i64> = base.e.iter().map(|v| -v).collect();
        let slack = max_weight - model.class_weight(&base);
        let mut u = alloc::vec![0i64; room.len()];
        let mut overflow = false;
        slack_vectors(&room, 0, slack, &mut u, &mut |u| {
            if overflow {
                return;
            }
            found.insert(PicClass {
                h: base.h,
                e: base.e.iter().zip(u).map(|(b, x)| b + x).collect(),
            });
            overflow = limits.max_classes.is_some_and(|cap| found.len() > cap);
        });
        if overflow {
            return Err(Error::ResourceLimit(format!(
                "more than {} relation classes up to weight {max_weight}",
                limits.max_classes.unwrap_or_default()
            )));
        }
    }
    Ok(group_levels(model, found))
}

/// Class sums of nonempty multisets of `gens` (nondecreasing index from
/// `from`) with total weight at most `max_weight`.
fn collect_bases(
    gens: &[&GeneratorRecord],
    from: usize,
    acc: PicClass,
    weight: i64,
    max_weight: i64,
    out: &mut BTreeSet<PicClass>,
) {
    for (i, g) in gens.iter().enumerate().skip(from) {
        if weight + g.weight > max_weight {
            continue;
        }
        let next = acc.add(&g.class);
        collect_bases(gens, i, next.clone(), weight + g.weight, max_weight, out);
        out.insert(next);
    }
}

/// All `a` in `N^m` with `sum a = total`.
fn compositions(m: usize, total: u32, cur: &mut Vec<u32>, j: usize, out: &mut Vec<Vec<u32>>) {
    if j + 1 == m {
        cur[j] = total;
        out.push(cur.clone());
        cur[j] = 0;
        return;
    }
    for k in (0..=total).rev() {
        cur[j] = k;
        compositions(m, total - k, cur, j + 1, out);
    }
    cur[j] = 0;
}

/// All `u` with `0 <= u_e <= c_e` and `sum u <= slack`.
fn slack_vectors(c: &[i64], e: usize, slack: i64, u: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
    if e == c.len() {
        f(u);
        return;
    }
    for k in 0..=c[e].min(slack) {
        u[e] = k;
        slack_vectors(c, e + 1, slack - k, u, f);
    }
    u[e] = 0;
}

/// Lookup of generators by shape, for enumerating formal products.
struct ProductIndex<'a> {
    generators: &'a [GeneratorRecord],
    /// e -> index of the generator `x_e`, if recorded
    exceptional: BTreeMap<usize, usize>,
    /// generators with positive `H` coefficient
    others: Vec<usize>,
}

impl<'a> ProductIndex<'a> {
    fn new(model: &BlowupModel, generators: &'a [GeneratorRecord]) -> ProductIndex<'a> {
        let big_e = model.num_exceptional();
        let mut exceptional = BTreeMap::new();
        let mut others = Vec::new();
        for g in generators {
            if g.class.h > 0 {
                others.push(g.index);
                continue;
            }
            if let Some(e) = (0..big_e).find(|&e| g.class == PicClass::exceptional(big_e, e)) {
                exceptional.entry(e).or_insert(g.index);
            }
        }
        ProductIndex {
            generators,
            exceptional,
            others,
        }
    }

    /// Sorted multisets of generator indices whose classes sum to `d`,
    /// restricted to generators below `max_weight`.
    fn products(&self, d: &PicClass, max_weight: i64) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if d.h < 0 {
            return out;
        }
        let others: Vec<usize> = self
            .others
            .iter()
            .copied()
            .filter(|&i| self.generators[i].weight < max_weight)
            .collect();
        let mut chosen = Vec::new();
        self.rec(&others, 0, d.clone(), &mut chosen, &mut out);
        for key in out.iter_mut() {
            key.sort_unstable();
        }
        out.sort();
        out
    }

    fn rec(
        &self,
        others: &[usize],
        from: usize,
        rest: PicClass,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if rest.h == 0 {
            if rest.e.iter().all(|&v| v >= 0) {
                let mut key = chosen.clone();
                for (e, &k) in rest.e.iter().enumerate() {
                    if k == 0 {
                        continue;
                    }
                    let Some(&xi) = self.exceptional.get(&e) else {
                        return;
                    };
                    key.extend(core::iter::repeat_n(xi, k as usize));
                }
                if !key.is_empty() {
                    out.push(key);
                }
            }
            return;
        }
        for (pos, &g) in others.iter().enumerate().skip(from) {
            let cls = &self.generators[g].class;
            if cls.h > rest.h {
                continue;
            }
            chosen.push(g);
            self.rec(others, pos, rest.sub(cls), chosen, out);
            chosen.pop();
        }
    }

    fn evaluate(&self, model: &BlowupModel, key: &[usize]) -> Result<Polynomial> {
        let mut p = Polynomial::one(model.field(), model.nvars());
        for &i in key {
            p = p.mul(&self.generators[i].polynomial)?;
        }
        Ok(p)
    }
}

/// The outcome of examining one class for new generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassStep {
    pub class: PicClass,
    pub weight: i64,
    pub piece_dim: usize,
    pub invariant_dim: usize,
    /// Dimension of the span of products of earlier generators.
    pub product_dim: usize,
    pub new_generators: Vec<Polynomial>,
}

/// Stepwise generator search. Classes of one weight level are independent:
/// [`GeneratorDiscovery::analyze`] may run on them in any order or in
/// parallel, as long as the steps are committed in visiting order.
#[derive(Debug)]
pub struct GeneratorDiscovery<'a> {
    model: &'a BlowupModel,
    limits: Limits,
    records: Vec<GeneratorRecord>,
}

impl<'a> GeneratorDiscovery<'a> {
    pub fn new(model: &'a BlowupModel, limits: Limits) -> GeneratorDiscovery<'a> {
        GeneratorDiscovery {
            model,
            limits,
            records: Vec::new(),
        }
    }

    pub fn levels(&self, max_weight: i64) -> Result<Vec<(i64, Vec<PicClass>)>> {
        candidate_levels(self.model, max_weight, true, &self.limits)
    }

    pub fn records(&self) -> &[GeneratorRecord] {
        &self.records
    }

    pub fn into_records(self) -> Vec<GeneratorRecord> {
        self.records
    }

    /// Invariants of `d` not spanned by products of committed generators.
    pub fn analyze(&self, d: &PicClass) -> Result<ClassStep> {
        let model = self.model;
        let weight = model.class_weight(d);
        let piece = enumerate_piece_capped(model, d, self.limits.max_piece)?;
        let piece_dim = piece.len();
        let inv = invariants_of_piece(model, piece)?;
        let mut span = SpanReducer::new(model.field(), piece_dim);
        if inv.dim() > 0 {
            let index = ProductIndex::new(model, &self.records);
            for key in index.products(d, weight) {
                let p = index.evaluate(model, &key)?;
                let coords = inv
                    .piece
                    .coordinates(model, &p)
                    .expect("products of class d lie in the piece of d");
                span.insert(&coords);
            }
        }
        let product_dim = span.dim();
        let mut new_generators = Vec::new();
        for (v, f) in inv.vectors.iter().zip(&inv.basis) {
            if span.insert(v) {
                new_generators.push(f.clone());
            }
        }
        Ok(ClassStep {
            class: d.clone(),
            weight,
            piece_dim,
            invariant_dim: inv.dim(),
            product_dim,
            new_generators,
        })
    }

    pub fn commit(&mut self, step: ClassStep) {
        for polynomial in step.new_generators {
            self.records.push(GeneratorRecord {
                index: self.records.len(),
                class: step.class.clone(),
                weight: step.weight,
                polynomial,
            });
        }
    }
}

/// Generators of the invariant ring up to `max_weight`, sequentially.
pub fn discover_generators(
    model: &BlowupModel,
    max_weight: i64,
    limits: &Limits,
) -> Result<Vec<GeneratorRecord>> {
    if max_weight < 1 {
        return Err(Error::Precondition(format!(
            "max weight must be at least 1, got {max_weight}"
        )));
    }
    let mut search = GeneratorDiscovery::new(model, *limits);
    for (_, classes) in search.levels(max_weight)? {
        let steps = classes
            .iter()
            .map(|d| search.analyze(d))
            .collect::<Result<Vec<_>>>()?;
        for step in steps {
            search.commit(step);
        }
    }
    Ok(search.into_records())
}

/// The outcome of examining one class for new relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationStep {
    pub class: PicClass,
    pub weight: i64,
    /// Number of formal products of this class.
    pub products: usize,
    /// Dimension of the kernel of the evaluation map.
    pub kernel_dim: usize,
    pub new_relations: Vec<Vec<(Vec<usize>, Scalar)>>,
}

/// Stepwise relation search over a fixed generator list, with the same
/// level discipline as [`GeneratorDiscovery`].
#[derive(Debug)]
pub struct RelationDiscovery<'a> {
    model: &'a BlowupModel,
    generators: &'a [GeneratorRecord],
    limits: Limits,
    records: Vec<RelationRecord>,
}

impl<'a> RelationDiscovery<'a> {
    pub fn new(
        model: &'a BlowupModel,
        generators: &'a [GeneratorRecord],
        limits: Limits,
    ) -> RelationDiscovery<'a> {
        RelationDiscovery {
            model,
            generators,
            limits,
            records: Vec::new(),
        }
    }

    pub fn levels(&self, max_weight: i64) -> Result<Vec<(i64, Vec<PicClass>)>> {
        relation_levels(self.model, self.generators, max_weight, &self.limits)
    }

    pub fn records(&self) -> &[RelationRecord] {
        &self.records
    }

    pub fn into_records(self) -> Vec<RelationRecord> {
        self.records
    }

    /// Kernel of the evaluation map on formal products of class `d`, reduced
    /// modulo multiples of committed relations.
    pub fn analyze(&self, d: &PicClass) -> Result<RelationStep> {
        let model = self.model;
        let field = model.field();
        let weight = model.class_weight(d);
        let index = ProductIndex::new(model, self.generators);
        let keys = index.products(d, weight + 1);
        if keys.len() < 2 {
            return Ok(RelationStep {
                class: d.clone(),
                weight,
                products: keys.len(),
                kernel_dim: 0,
                new_relations: Vec::new(),
            });
        }
        let piece = enumerate_piece_capped(model, d, self.limits.max_piece)?;
        let mut mat = ExactMatrix::new(field, piece.len(), keys.len());
        for (col, key) in keys.iter().enumerate() {
            let p = index.evaluate(model, key)?;
            for (mono, c) in p.terms() {
                let row = piece
                    .position(mono)
                    .expect("products of class d lie in the piece of d");
                mat.set(row, col, c.clone())?;
            }
        }
        let kernel = kernel_basis(&mat);
        let position: BTreeMap<&[usize], usize> = keys
            .iter()
            .enumerate()
            .map(|(i, k)| (k.as_slice(), i))
            .collect();
        let mut span = SpanReducer::new(field, keys.len());
        if !kernel.is_empty() {
            for rel in &self.records {
                for cofactor in index.products(&d.sub(&rel.class), weight + 1) {
                    let mut v = alloc::vec![Scalar::zero(field); keys.len()];
                    for (key, c) in &rel.terms {
                        let mut merged = key.clone();
                        merged.extend_from_slice(&cofactor);
                        merged.sort_unstable();
                        v[position[merged.as_slice()]] = c.clone();
                    }
                    span.insert(&v);
                }
            }
        }
        let mut new_relations = Vec::new();
        for v in &kernel {
            if span.insert(v) {
                new_relations.push(
                    keys.iter()
                        .zip(v)
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (k.clone(), c.clone()))
                        .collect(),
                );
            }
        }
        Ok(RelationStep {
            class: d.clone(),
            weight,
            products: keys.len(),
            kernel_dim: kernel.len(),
            new_relations,
        })
    }

    pub fn commit(&mut self, step: RelationStep) {
        for terms in step.new_relations {
            self.records.push(RelationRecord {
                index: self.records.len(),
                class: step.class.clone(),
                weight: step.weight,
                terms,
            });
        }
    }
}

/// Relations among `generators` up to `max_weight`. The generators should
/// come from a search to at least the same bound.
pub fn discover_relations(
    model: &BlowupModel,
    generators: &[GeneratorRecord],
    max_weight: i64,
    limits: &Limits,
) -> Result<Vec<RelationRecord>> {
    let mut search = RelationDiscovery::new(model, generators, *limits);
    for (_, classes) in search.levels(max_weight)? {
        let steps = classes
            .iter()
            .map(|d| search.analyze(d))
            .collect::<Result<Vec<_>>>()?;
        for step in steps {
            search.commit(step);
        }
    }
    Ok(search.into_records())
}

/// Evaluates a formal combination of generator products.
pub fn evaluate_relation(
    model: &BlowupModel,
    generators: &[GeneratorRecord],
    terms: &[(Vec<usize>, Scalar)],
) -> Result<Polynomial> {
    let index = ProductIndex::new(model, generators);
    let mut acc = Polynomial::zero(model.field(), model.nvars());
    for (key, c) in terms {
        if let Some(&bad) = key.iter().find(|&&i| i >= generators.len()) {
            return Err(Error::Precondition(format!(
                "no generator with index {bad}"
            )));
        }
        acc = acc.add(&index.evaluate(model, key)?.scale(c))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    extern crate std;
    use super::*;
    use crate::derivation::is_invariant;
    use crate::graded::enumerate_piece;
    use crate::model::{build_linear, build_m0n, ConfigSpec, Var};
    use crate::scalar::Field;

    fn m0n(n: usize) -> BlowupModel {
        build_m0n(n, Field::Rational).unwrap()
    }

    /// Candidate classes from an exhaustive scan of all monomials by weight.
    fn scanned_classes(model: &BlowupModel, max_weight: u64) -> BTreeSet<PicClass> {
        fn rec(
            model: &BlowupModel,
            i: usize,
            left: u64,
            cur: &mut Vec<(usize, u32)>,
            out: &mut BTreeSet<PicClass>,
        ) {
            if i == model.nvars() {
                let d = model.degree_of_monomial(&crate::monomial::Monomial::from_pairs(
                    cur.iter().copied(),
                ));
                if d.h >= 1 && d.e.iter().all(|&v| v <= 0) {
                    out.insert(d);
                }
                return;
            }
            let wi = model.var_weight(i);
            let mut k = 0u32;
            while wi * k as u64 <= left {
                if k > 0 {
                    cur.push((i, k));
                }
                rec(model, i + 1, left - wi * k as u64, cur, out);
                if k > 0 {
                    cur.pop();
                }
                k += 1;
            }
        }
        let mut out = BTreeSet::new();
        rec(model, 0, max_weight, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn candidate_classes_match_scan() {
        let m = m0n(5);
        for w in 1..=8i64 {
            let levels = candidate_levels(&m, w, false, &Limits::default()).unwrap();
            let got: BTreeSet<PicClass> = levels.into_iter().flat_map(|(_, v)| v).collect();
            assert_eq!(got, scanned_classes(&m, w as u64), "weight {w}");
        }
    }

    #[test]
    fn relation_classes_are_candidates() {
        let m = m0n(5);
        let gens = discover_generators(&m, 8, &Limits::default()).unwrap();
        let rel: BTreeSet<PicClass> = relation_levels(&m, &gens, 8, &Limits::default())
            .unwrap()
            .into_iter()
            .flat_map(|(_, v)| v)
            .collect();
        let all = scanned_classes(&m, 8);
        assert!(rel.is_subset(&all));
        // every scanned class outside the list has fewer than two products
        let index = ProductIndex::new(&m, &gens);
        for d in all.difference(&rel) {
            assert!(index.products(d, m.class_weight(d) + 1).len() < 2, "{d:?}");
        }
    }

    #[test]
    fn class_cap_is_a_distinct_error() {
        let m = m0n(6);
        let err = candidate_levels(
            &m,
            10,
            true,
            &Limits {
                max_piece: None,
                max_classes: Some(100),
            },
        )
        .unwrap_err();
        assert!(err.is_resource_limit());
    }

    #[test]
    fn m0n5_generators() {
        let m = m0n(5);
        let gens = discover_generators(&m, 3, &Limits::default()).unwrap();
        assert_eq!(gens.len(), 10);
        for (e, g) in gens.iter().take(4).enumerate() {
            assert_eq!(g.polynomial, m.x(e));
            assert_eq!(g.weight, 1);
        }
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (g, &(i, j)) in gens[4..].iter().zip(&pairs) {
            // y_i x_j - y_j x_i with singleton subsets
            let xi = m.var_index(Var::X(m.subset_index(&[i]).unwrap())).unwrap();
            let xj = m.var_index(Var::X(m.subset_index(&[j]).unwrap())).unwrap();
            let expected = m
                .y(i)
                .mul(&Polynomial::var(m.field(), m.nvars(), xj))
                .unwrap()
                .sub(
                    &m.y(j)
                        .mul(&Polynomial::var(m.field(), m.nvars(), xi))
                        .unwrap(),
                )
                .unwrap();
            assert_eq!(g.polynomial, expected);
            assert_eq!(g.weight, 3);
        }
        // nothing new up to weight 8
        assert_eq!(
            discover_generators(&m, 8, &Limits::default()).unwrap(),
            gens
        );
    }

    #[test]
    fn m0n5_relations() {
        let m = m0n(5);
        let gens = discover_generators(&m, 6, &Limits::default()).unwrap();
        assert!(discover_relations(&m, &gens, 3, &Limits::default())
            .unwrap()
            .is_empty());
        let rels = discover_relations(&m, &gens, 6, &Limits::default()).unwrap();
        assert_eq!(rels.len(), 5);
        assert_eq!(rels.iter().filter(|r| r.weight == 4).count(), 4);
        for r in &rels {
            assert_eq!(r.terms.len(), 3);
            assert!(r.terms.iter().all(|(k, _)| k.len() == 2));
            assert!(evaluate_relation(&m, &gens, &r.terms).unwrap().is_zero());
        }
        // weights 7 and 8 only contain consequences
        let more = discover_relations(
            &m,
            &discover_generators(&m, 8, &Limits::default()).unwrap(),
            8,
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(more, rels);
    }

    #[test]
    fn n6_contains_boundary() {
        let m = m0n(6);
        let gens = discover_generators(&m, 10, &Limits::default()).unwrap();
        for e in 0..15 {
            assert!(gens.iter().any(|g| g.polynomial == m.x(e)));
        }
        let binomials = gens
            .iter()
            .filter(|g| g.polynomial.len() == 2 && g.weight == 10)
            .count();
        assert_eq!(binomials, 10);
        for g in &gens {
            assert!(is_invariant(&m, &g.polynomial).unwrap());
            assert_eq!(m.homogeneous_class(&g.polynomial), Some(g.class.clone()));
        }
    }

    #[test]
    fn toric_generators_are_variables() {
        let m = build_linear(&ConfigSpec::linear_from_ints(
            3,
            &[
                &[&[1, 0, 0, 0], &[0, 1, 0, 0]],
                &[&[0, 0, 1, 0]],
                &[&[0, 0, 0, 1]],
            ],
            Field::Rational,
        ))
        .unwrap();
        assert_eq!(m.t(), 0);
        let max_w = (0..m.nvars())
            .map(|i| m.var_weight(i) as i64)
            .max()
            .unwrap()
            + 1;
        let gens = discover_generators(&m, max_w, &Limits::default()).unwrap();
        let mut got: Vec<Polynomial> = gens.iter().map(|g| g.polynomial.clone()).collect();
        let mut vars: Vec<Polynomial> = (0..m.nvars())
            .map(|i| Polynomial::var(m.field(), m.nvars(), i))
            .collect();
        got.sort_by(|a, b| {
            a.leading_term()
                .map(|t| t.0)
                .cmp(&b.leading_term().map(|t| t.0))
        });
        vars.sort_by(|a, b| {
            a.leading_term()
                .map(|t| t.0)
                .cmp(&b.leading_term().map(|t| t.0))
        });
        assert_eq!(got, vars);
        assert!(discover_relations(&m, &gens, 2 * max_w, &Limits::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn four_points_match_m0n5_counts() {
        let lin = build_linear(&ConfigSpec::linear_from_ints(
            2,
            &[&[&[1, 0, 0]], &[&[0, 1, 0]], &[&[0, 0, 1]], &[&[1, 1, 1]]],
            Field::Rational,
        ))
        .unwrap();
        let a = discover_generators(&lin, 6, &Limits::default()).unwrap();
        let b = discover_generators(&m0n(5), 6, &Limits::default()).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.class, y.class);
            assert_eq!(x.polynomial.len(), y.polynomial.len());
        }
        assert_eq!(
            discover_relations(&lin, &a, 6, &Limits::default())
                .unwrap()
                .len(),
            discover_relations(&m0n(5), &b, 6, &Limits::default())
                .unwrap()
                .len()
        );
    }

    #[test]
    fn piece_cap_propagates() {
        let m = m0n(5);
        let limits = Limits {
            max_piece: Some(1),
            max_classes: None,
        };
        assert!(discover_generators(&m, 5, &limits)
            .unwrap_err()
            .is_resource_limit());
        assert!(enumerate_piece(&m, &PicClass::hyperplane(4)).unwrap().len() > 1);
    }

    #[test]
    fn rejects_nonpositive_bound() {
        assert!(matches!(
            discover_generators(&m0n(5), 0, &Limits::default()),
            Err(Error::Precondition(_))
        ));
    }
}
