//! Sparse multivariate polynomials with exact coefficients.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::scalar::{binomial, field_name, primitive_integer_vector, Field, Scalar};

/// Binary ring operations accepted by [`Polynomial::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// A polynomial in `nvars` variables over `field`. Terms are kept in a map
/// ordered by the graded-lexicographic monomial order; zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(field: Field, nvars: usize) -> Polynomial {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Polynomial {
        Polynomial::from_monomial(Monomial::one(), c, nvars)
    }

    pub fn one(field: Field, nvars: usize) -> Polynomial {
        Polynomial::constant(Scalar::one(field), nvars)
    }

    pub fn var(field: Field, nvars: usize, index: usize) -> Polynomial {
        assert!(index < nvars, "variable {index} outside catalog of {nvars}");
        Polynomial::from_monomial(Monomial::var(index), Scalar::one(field), nvars)
    }

    pub fn from_monomial(m: Monomial, c: Scalar, nvars: usize) -> Polynomial {
        let mut p = Polynomial::zero(c.field(), nvars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(
        field: Field,
        nvars: usize,
        terms: I,
    ) -> Polynomial {
        let mut p = Polynomial::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    /// Largest monomial and its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert!(m.max_var().is_none_or(|v| v < self.nvars));
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn compatible(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                field_name(self.field),
                field_name(other.field),
            ));
        }
        if self.nvars != other.nvars {
            return Err(Error::CatalogMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        match op {
            ArithOp::Add => self.add(other),
            ArithOp::Sub => self.sub(other),
            ArithOp::Mul => self.mul(other),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Polynomial {
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Polynomial {
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.field, self.nvars);
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// `(a + b)^k` expanded with binomial coefficients, where `a` and `b` are
    /// single terms. Stays linear in `k` even over prime fields with `k >= p`.
    pub fn binomial_power(a: (&Monomial, &Scalar), b: &Polynomial, k: u32) -> Polynomial {
        let field = b.field;
        let mut out = Polynomial::zero(field, b.nvars);
        let mut b_pow = Polynomial::one(field, b.nvars);
        for c in 0..=k {
            let coef = binomial(field, k as u64, c as u64);
            if !coef.is_zero() {
                let head = a.0.pow(k - c);
                let head_c = &a.1.pow((k - c) as u64) * &coef;
                for (m, s) in &b_pow.terms {
                    out.add_term(m.mul(&head), &head_c * s);
                }
            }
            if c < k {
                b_pow = b_pow.mul(b).expect("same ring");
            }
        }
        out
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let (_, rest) = m.split_var(var);
            let m2 = rest.mul(&Monomial::var_pow(var, e - 1));
            out.add_term(m2, c * &Scalar::from_i64(self.field, e as i64));
        }
        out
    }

    /// Coefficient reduction from the rationals into `F_p`.
    pub fn reduce_mod(&self, p: u64) -> Result<Polynomial> {
        let field = Field::prime(p)?;
        let mut out = Polynomial::zero(field, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.reduce_mod(p)?);
        }
        Ok(out)
    }

    /// Re-embeds into a catalog with `nvars` variables, mapping indices.
    pub fn reindex(&self, nvars: usize, map: impl Fn(usize) -> usize) -> Polynomial {
        let mut out = Polynomial::zero(self.field, nvars);
        for (m, c) in &self.terms {
            out.add_term(m.reindex(&map), c.clone());
        }
        out
    }

    /// Groups terms by the part of the monomial in variables selected by
    /// `pick`: returns `pick-part -> coefficient polynomial in the rest`.
    pub fn collect_by(&self, pick: impl Fn(usize) -> bool) -> BTreeMap<Monomial, Polynomial> {
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = m.restrict(&pick);
            let rest = m.restrict(|i| !pick(i));
            out.entry(key)
                .or_insert_with(|| Polynomial::zero(self.field, self.nvars))
                .add_term(rest, c.clone());
        }
        out
    }

    /// Canonical scalar multiple: primitive integer coefficients with a
    /// positive leading coefficient over the rationals, monic over `F_p`.
    pub fn normalized(&self) -> Polynomial {
        let Some((_, lead)) = self.leading_term() else {
            return self.clone();
        };
        match self.field {
            Field::Prime(_) => self.scale(&lead.inv().expect("nonzero")),
            Field::Rational => {
                let coeffs: Vec<BigRational> = self
                    .terms
                    .values()
                    .map(|c| c.as_rational().expect("rational").clone())
                    .collect();
                let mut ints = primitive_integer_vector(&coeffs);
                if lead.is_negative() {
                    for x in ints.iter_mut() {
                        *x = -&*x;
                    }
                }
                Polynomial {
                    field: self.field,
                    nvars: self.nvars,
                    terms: self
                        .terms
                        .keys()
                        .cloned()
                        .zip(ints.iter().map(|i| Scalar::from_bigint(Field::Rational, i)))
                        .collect(),
                }
            }
        }
    }

    /// Renders with the given variable names, leading term first, e.g.
    /// `y1*x{2} - y2*x{1}`.
    pub fn format_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(alloc::format!("{abs}"));
            }
            for (v, e) in m.iter() {
                let mut s = name(v);
                if e > 1 {
                    let _ = write!(s, "^{e}");
                }
                factors.push(s);
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    extern crate std;
    use super::*;
    use alloc::format;
    use proptest::prelude::*;

    fn q(v: i64) -> Scalar {
        Scalar::from_i64(Field::Rational, v)
    }

    fn var(i: usize) -> Polynomial {
        Polynomial::var(Field::Rational, 8, i)
    }

    fn name(i: usize) -> String {
        format!("v{i}")
    }

    #[test]
    fn cancellation_and_absorption() {
        let f = var(0).add(&var(4)).unwrap();
        let g = f.add(&var(4).neg()).unwrap();
        assert_eq!(g, var(0));
        let zero = Polynomial::zero(Field::Rational, 8);
        assert!(f.mul(&zero).unwrap().is_zero());
    }

    #[test]
    fn four_term_product_matches_termwise_expansion() {
        // (y1 x2 - y2 x1)(y3 x4 - y4 x3) with y_i = v(i-1), x_i = v(3+i)
        let (y1, y2, y3, y4) = (var(0), var(1), var(2), var(3));
        let (x1, x2, x3, x4) = (var(4), var(5), var(6), var(7));
        let a = y1.mul(&x2).unwrap().sub(&y2.mul(&x1).unwrap()).unwrap();
        let b = y3.mul(&x4).unwrap().sub(&y4.mul(&x3).unwrap()).unwrap();
        let prod = a.mul(&b).unwrap();
        // independent expansion: each pair of terms, sign = product of signs
        let left = [(1i64, [0usize, 5]), (-1, [1, 4])];
        let right = [(1i64, [2usize, 7]), (-1, [3, 6])];
        let mut expected = std::collections::BTreeMap::new();
        for (s, l) in left {
            for (t, r) in right {
                let mut exps = [0u32; 8];
                for i in l.iter().chain(r.iter()) {
                    exps[*i] += 1;
                }
                expected.insert(exps, s * t);
            }
        }
        assert_eq!(prod.len(), 4);
        for (exps, c) in expected {
            assert_eq!(prod.coefficient(&Monomial::from_dense(&exps)), q(c));
        }
    }

    #[test]
    fn field_and_catalog_mismatch_are_errors() {
        let a = var(0);
        let b = Polynomial::var(Field::Prime(5), 8, 0);
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch(..))));
        let c = Polynomial::var(Field::Rational, 9, 0);
        assert!(matches!(a.mul(&c), Err(Error::CatalogMismatch(8, 9))));
    }

    #[test]
    fn formatting() {
        let f = var(0)
            .mul(&var(5))
            .unwrap()
            .sub(&var(1).scale(&q(3)))
            .unwrap();
        assert_eq!(f.format_with(&name), "v0*v5 - 3*v1");
        let g = Polynomial::constant(q(-2), 8).add(&var(3).pow(2)).unwrap();
        assert_eq!(g.format_with(&name), "v3^2 - 2");
        assert_eq!(Polynomial::zero(Field::Rational, 8).format_with(&name), "0");
    }

    #[test]
    fn binomial_power_matches_repeated_multiplication() {
        let a = Monomial::var(0);
        let b = var(1)
            .mul(&var(2))
            .unwrap()
            .scale(&q(3))
            .add(&var(3))
            .unwrap();
        let lhs = Polynomial::binomial_power((&a, &q(2)), &b, 4);
        let rhs = var(0).scale(&q(2)).add(&b).unwrap().pow(4);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn normalization_is_idempotent() {
        let f = var(0)
            .scale(&Scalar::Rational(BigRational::new((-4).into(), 6.into())))
            .add(&var(1).scale(&q(2)))
            .unwrap();
        let n = f.normalized();
        assert_eq!(n.format_with(&name), "v0 - 3*v1");
        assert_eq!(n.normalized(), n);
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(
            (proptest::collection::vec(0u32..3, 4), -5i64..6, 1i64..4),
            0..6,
        )
        .prop_map(|terms| {
            Polynomial::from_terms(
                Field::Rational,
                4,
                terms.into_iter().map(|(e, n, d)| {
                    (
                        Monomial::from_dense(&e),
                        Scalar::Rational(BigRational::new(n.into(), d.into())),
                    )
                }),
            )
        })
    }

    proptest! {
        #[test]
        fn reduction_commutes_with_ring_ops(f in arb_poly(), g in arb_poly()) {
            for p in [101u64, 32003] {
                let (fp, gp) = (f.reduce_mod(p).unwrap(), g.reduce_mod(p).unwrap());
                prop_assert_eq!(f.add(&g).unwrap().reduce_mod(p).unwrap(), fp.add(&gp).unwrap());
                prop_assert_eq!(f.sub(&g).unwrap().reduce_mod(p).unwrap(), fp.sub(&gp).unwrap());
                prop_assert_eq!(f.mul(&g).unwrap().reduce_mod(p).unwrap(), fp.mul(&gp).unwrap());
            }
        }

        #[test]
        fn leibniz_for_partials(f in arb_poly(), g in arb_poly(), v in 0usize..4) {
            let lhs = f.mul(&g).unwrap().derivative(v);
            let rhs = f.derivative(v).mul(&g).unwrap().add(&f.mul(&g.derivative(v)).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn stored_coefficients_are_nonzero(f in arb_poly(), g in arb_poly()) {
            let h = f.mul(&g).unwrap().sub(&f).unwrap();
            prop_assert!(h.terms().all(|(_, c)| !c.is_zero()));
        }
    }
}
