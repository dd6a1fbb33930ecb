//! Graded pieces of the toric Cox ring and their invariant subspaces.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::derivation::{apply_derivation, substitution_defect};
use crate::error::{Error, Result};
use crate::matrix::{kernel_basis, ExactMatrix};
use crate::model::{BlowupModel, PicClass};
use crate::monomial::Monomial;
use crate::polynomial::Polynomial;
use crate::scalar::Scalar;

/// All monomials of one Picard class, largest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub class: PicClass,
    pub monomials: Vec<Monomial>,
    pub weight: i64,
}

impl GradedPiece {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// The polynomial `sum_i coords[i] * monomials[i]`.
    pub fn combine(&self, model: &BlowupModel, coords: &[Scalar]) -> Polynomial {
        Polynomial::from_terms(
            model.field(),
            model.nvars(),
            self.monomials.iter().cloned().zip(coords.iter().cloned()),
        )
    }

    /// Coordinates of `f` in the monomial basis, or `None` if `f` has a term
    /// outside the piece.
    pub fn coordinates(&self, model: &BlowupModel, f: &Polynomial) -> Option<Vec<Scalar>> {
        let mut out = alloc::vec![Scalar::zero(model.field()); self.len()];
        for (mono, c) in f.terms() {
            let i = self.position(mono)?;
            out[i] = c.clone();
        }
        Some(out)
    }

    pub fn position(&self, mono: &Monomial) -> Option<usize> {
        // descending order
        self.monomials.binary_search_by(|m| mono.cmp(m)).ok()
    }
}

fn check_class(model: &BlowupModel, d: &PicClass) -> Result<()> {
    if d.e.len() != model.num_exceptional() {
        return Err(Error::DimensionMismatch {
            expected: model.num_exceptional(),
            found: d.e.len(),
        });
    }
    Ok(())
}

/// Every monomial of class `d`, via the bijection with vectors `a` summing to
/// `d_H` for which `b_e = d_e + sum_{j not in S_e} a_j` is nonnegative.
pub fn enumerate_piece(model: &BlowupModel, d: &PicClass) -> Result<GradedPiece> {
    enumerate_piece_capped(model, d, None)
}

/// [`enumerate_piece`] failing with [`Error::ResourceLimit`] once more than
/// `cap` monomials are found.
pub fn enumerate_piece_capped(
    model: &BlowupModel,
    d: &PicClass,
    cap: Option<usize>,
) -> Result<GradedPiece> {
    check_class(model, d)?;
    let mut monomials = Vec::new();
    if d.h >= 0 {
        let mut a = alloc::vec![0u32; model.m()];
        walk(model, d, 0, d.h as u32, &mut a, &mut monomials, cap)?;
    }
    monomials.sort_unstable_by(|x, y| y.cmp(x));
    Ok(GradedPiece {
        class: d.clone(),
        monomials,
        weight: model.class_weight(d),
    })
}

fn walk(
    model: &BlowupModel,
    d: &PicClass,
    j: usize,
    left: u32,
    a: &mut [u32],
    out: &mut Vec<Monomial>,
    cap: Option<usize>,
) -> Result<()> {
    if j + 1 == a.len() || left == 0 {
        a[j] = left;
        let result = leaf(model, d, a);
        a[j] = 0;
        if let Some(mono) = result {
            if cap.is_some_and(|c| out.len() >= c) {
                return Err(Error::ResourceLimit(format!(
                    "class {} has more than {} monomials",
                    model.format_class(d),
                    cap.unwrap_or_default()
                )));
            }
            out.push(mono);
        }
        return Ok(());
    }
    for k in (0..=left).rev() {
        a[j] = k;
        walk(model, d, j + 1, left - k, a, out, cap)?;
    }
    a[j] = 0;
    Ok(())
}

fn leaf(model: &BlowupModel, d: &PicClass, a: &[u32]) -> Option<Monomial> {
    let m = model.m();
    let mut pairs: Vec<(usize, u32)> = a
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(j, &k)| (j, k))
        .collect();
    for (e, &de) in d.e.iter().enumerate() {
        let b = de
            + model
                .complement(e)
                .iter()
                .map(|&j| a[j] as i64)
                .sum::<i64>();
        if b < 0 {
            return None;
        }
        if b > 0 {
            pairs.push((m + e, b as u32));
        }
    }
    Some(Monomial::from_pairs(pairs))
}

/// Canonical basis of the invariants of one class. `vectors[i]` holds the
/// coordinates of `basis[i]` in `piece.monomials`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantBasis {
    pub class: PicClass,
    pub piece: GradedPiece,
    pub vectors: Vec<Vec<Scalar>>,
    pub basis: Vec<Polynomial>,
}

impl InvariantBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Kernel of the linear map whose column `i` is the polynomial `images[i]`.
fn kernel_of_images(
    model: &BlowupModel,
    piece: GradedPiece,
    images: Vec<Vec<(Monomial, Scalar)>>,
) -> InvariantBasis {
    let mut rows: BTreeMap<Monomial, Vec<(usize, Scalar)>> = BTreeMap::new();
    for (col, image) in images.into_iter().enumerate() {
        for (mono, c) in image {
            rows.entry(mono).or_default().push((col, c));
        }
    }
    let mut mat = ExactMatrix::new(model.field(), 0, piece.len());
    for row in rows.into_values() {
        mat.push_sparse_row(row).expect("columns in range");
    }
    let vectors = kernel_basis(&mat);
    let basis = vectors.iter().map(|v| piece.combine(model, v)).collect();
    InvariantBasis {
        class: piece.class.clone(),
        piece,
        vectors,
        basis,
    }
}

/// Invariants of class `d` from the substitution conditions: the
/// coefficient of every monomial in the parameters must vanish.
pub fn invariant_basis(model: &BlowupModel, d: &PicClass) -> Result<InvariantBasis> {
    invariants_of_piece(model, enumerate_piece(model, d)?)
}

/// [`invariant_basis`] for an already enumerated piece.
pub fn invariants_of_piece(model: &BlowupModel, piece: GradedPiece) -> Result<InvariantBasis> {
    let mut images = Vec::with_capacity(piece.len());
    for mono in &piece.monomials {
        let f = Polynomial::from_monomial(mono.clone(), Scalar::one(model.field()), model.nvars());
        let defect = substitution_defect(model, &f)?;
        images.push(
            defect
                .terms()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        );
    }
    Ok(kernel_of_images(model, piece, images))
}

/// Common kernel of the derivations on the piece. Equals
/// [`invariant_basis`] over the rationals; over `F_p` it can be larger.
pub fn derivation_kernel_basis(model: &BlowupModel, d: &PicClass) -> Result<InvariantBasis> {
    let piece = enumerate_piece(model, d)?;
    let nv = model.nvars();
    let mut images = Vec::with_capacity(piece.len());
    for mono in &piece.monomials {
        let f = Polynomial::from_monomial(mono.clone(), Scalar::one(model.field()), nv);
        let mut image = Vec::new();
        for k in 0..model.t() {
            // tag derivation k by an extra variable so rows stay separate
            let tag = Monomial::var(nv + k);
            for (m, c) in apply_derivation(model, k, &f)?.terms() {
                image.push((m.mul(&tag), c.clone()));
            }
        }
        images.push(image);
    }
    Ok(kernel_of_images(model, piece, images))
}

/// Whether `d` carries a nonzero invariant, with the invariant dimension.
pub fn is_effective(model: &BlowupModel, d: &PicClass) -> Result<(bool, usize)> {
    let dim = invariant_basis(model, d)?.dim();
    Ok((dim > 0, dim))
}

#[cfg(test)]
mod tests {
    extern crate std;
    use super::*;
    use crate::derivation::is_invariant;
    use crate::model::{build_linear, build_m0n, ConfigSpec};
    use crate::scalar::Field;
    use proptest::prelude::*;

    fn m0n(n: usize) -> BlowupModel {
        build_m0n(n, Field::Rational).unwrap()
    }

    fn four_points(field: Field) -> BlowupModel {
        build_linear(&ConfigSpec::linear_from_ints(
            2,
            &[&[&[1, 0, 0]], &[&[0, 1, 0]], &[&[0, 0, 1]], &[&[1, 1, 1]]],
            field,
        ))
        .unwrap()
    }

    fn boundary_class(model: &BlowupModel, i: usize, j: usize) -> PicClass {
        let mut d = PicClass::hyperplane(model.num_exceptional());
        for (e, s) in model.incidence().iter().enumerate() {
            if !s.contains(&i) && !s.contains(&j) {
                d.e[e] = -1;
            }
        }
        d
    }

    /// Every monomial of the given weight, by exhaustive recursion.
    fn monomials_of_weight(model: &BlowupModel, w: u64) -> Vec<Monomial> {
        fn rec(
            model: &BlowupModel,
            i: usize,
            left: u64,
            cur: &mut Vec<(usize, u32)>,
            out: &mut Vec<Monomial>,
        ) {
            if i == model.nvars() {
                if left == 0 {
                    out.push(Monomial::from_pairs(cur.iter().copied()));
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
        let mut out = Vec::new();
        rec(model, 0, w, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn piece_examples() {
        let m = m0n(5);
        let p = enumerate_piece(&m, &PicClass::exceptional(4, 2)).unwrap();
        assert_eq!(p.monomials, alloc::vec![Monomial::var(6)]);
        let h = enumerate_piece(&m, &PicClass::hyperplane(4)).unwrap();
        assert_eq!(h.len(), 4);
        assert_eq!(h.weight, 5);
        for (j, mono) in h.monomials.iter().enumerate() {
            assert_eq!(mono.exponent(j), 1);
        }
        assert!(enumerate_piece(&m, &PicClass::hyperplane(4).scale(-1))
            .unwrap()
            .is_empty());
        let zero = enumerate_piece(&m, &PicClass::zero(4)).unwrap();
        assert_eq!(zero.monomials, alloc::vec![Monomial::one()]);
        assert!(matches!(
            enumerate_piece(&m, &PicClass::zero(3)),
            Err(Error::DimensionMismatch {
                expected: 4,
                found: 3
            })
        ));
    }

    #[test]
    fn piece_cap_is_a_distinct_error() {
        let m = m0n(6);
        let d = PicClass::hyperplane(15).scale(2);
        let full = enumerate_piece(&m, &d).unwrap().len();
        assert!(enumerate_piece_capped(&m, &d, Some(full)).is_ok());
        let err = enumerate_piece_capped(&m, &d, Some(full - 1)).unwrap_err();
        assert!(err.is_resource_limit());
    }

    #[test]
    fn completeness_against_weight_scan() {
        let m = m0n(5);
        for w in 0..=7u64 {
            let mut by_class: BTreeMap<PicClass, Vec<Monomial>> = BTreeMap::new();
            for mono in monomials_of_weight(&m, w) {
                by_class
                    .entry(m.degree_of_monomial(&mono))
                    .or_default()
                    .push(mono);
            }
            for (d, mut monos) in by_class {
                assert_eq!(m.class_weight(&d), w as i64);
                monos.sort_unstable_by(|x, y| y.cmp(x));
                assert_eq!(
                    enumerate_piece(&m, &d).unwrap().monomials,
                    monos,
                    "class {d:?}"
                );
            }
        }
    }

    #[test]
    fn hyperplane_invariants() {
        for n in [5, 6, 7] {
            let m = m0n(n);
            let inv = invariant_basis(&m, &PicClass::hyperplane(m.num_exceptional())).unwrap();
            assert_eq!(inv.dim(), n - 2);
            // first basis element is m_1 - m_2
            let v = &inv.vectors[0];
            assert!(v[0].is_one());
            assert_eq!(v[1], Scalar::from_i64(m.field(), -1));
            for f in &inv.basis {
                assert!(is_invariant(&m, f).unwrap());
            }
        }
    }

    #[test]
    fn boundary_classes() {
        for n in [5, 6] {
            let m = m0n(n);
            for i in 0..m.m() {
                for j in i + 1..m.m() {
                    let d = boundary_class(&m, i, j);
                    let inv = invariant_basis(&m, &d).unwrap();
                    assert_eq!(inv.piece.len(), 2);
                    assert_eq!(inv.dim(), 1);
                    let f = &inv.basis[0];
                    let (lead, c) = f.leading_term().unwrap();
                    assert!(c.is_one());
                    assert_eq!(lead.exponent(i), 1);
                }
            }
        }
    }

    #[test]
    fn zero_class_and_negative() {
        let m = m0n(6);
        assert_eq!(is_effective(&m, &PicClass::zero(15)).unwrap(), (true, 1));
        assert_eq!(
            is_effective(&m, &PicClass::hyperplane(15).scale(-1)).unwrap(),
            (false, 0)
        );
        let e12 = m.parse_class("E{1,2}").unwrap();
        assert_eq!(is_effective(&m, &e12).unwrap(), (true, 1));
    }

    #[test]
    fn derivation_kernel_agrees_over_rationals() {
        let m = m0n(5);
        for text in [
            "H",
            "2H - E{1} - E{2}",
            "H - E{3}",
            "2H",
            "3H - E{1} - E{2} - E{3} - E{4}",
        ] {
            let d = m.parse_class(text).unwrap();
            assert_eq!(
                invariant_basis(&m, &d).unwrap(),
                derivation_kernel_basis(&m, &d).unwrap(),
                "{text}"
            );
        }
    }

    #[test]
    fn p_th_power_class_differs_in_characteristic_p() {
        // class 5H on P^2 with four points: y1^5 lies in the derivation kernel
        // over F_5 but is not invariant
        let m = four_points(Field::Prime(5));
        let d = PicClass::hyperplane(4).scale(5);
        let sub = invariant_basis(&m, &d).unwrap();
        let der = derivation_kernel_basis(&m, &d).unwrap();
        assert!(der.dim() > sub.dim());
        let q = four_points(Field::Rational);
        assert_eq!(invariant_basis(&q, &d).unwrap().dim(), sub.dim());
    }

    /// Independent count: invariance of `sum c_i m_i` tested by evaluating
    /// `f(y + lambda V z, x) - f(y, x)` at pseudo-random integer points.
    fn evaluation_oracle_dim(model: &BlowupModel, piece: &GradedPiece) -> usize {
        let field = model.field();
        let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            Scalar::from_i64(field, ((state >> 33) % 7) as i64 - 3)
        };
        let eval = |mono: &Monomial, vals: &[Scalar]| {
            mono.iter().fold(Scalar::one(field), |acc, (i, k)| {
                &acc * &vals[i].pow(k as u64)
            })
        };
        let mut rows = Vec::new();
        for _ in 0..4 * piece.len() + 8 {
            let point: Vec<Scalar> = (0..model.nvars()).map(|_| next()).collect();
            let lambdas: Vec<Scalar> = (0..model.t()).map(|_| next()).collect();
            let mut moved = point.clone();
            for j in 0..model.m() {
                let zj = eval(model.z(j), &point);
                for (k, row) in model.derivations().iter().enumerate() {
                    moved[j] = &moved[j] + &(&(&lambdas[k] * &row[j]) * &zj);
                }
            }
            rows.push(
                piece
                    .monomials
                    .iter()
                    .map(|mono| &eval(mono, &moved) - &eval(mono, &point))
                    .collect::<Vec<_>>(),
            );
        }
        piece.len()
            - ExactMatrix::from_rows(field, piece.len(), &rows)
                .unwrap()
                .rank()
    }

    #[test]
    fn del_pezzo_anticanonical() {
        let m = four_points(Field::Rational);
        let d = m.parse_class("3H - E1 - E2 - E3 - E4").unwrap();
        let inv = invariant_basis(&m, &d).unwrap();
        assert_eq!(inv.piece.len(), 16);
        assert_eq!(evaluation_oracle_dim(&m, &inv.piece), 6);
        assert_eq!(inv.dim(), 6);
        assert_eq!(is_effective(&m, &d).unwrap(), (true, 6));
    }

    #[test]
    fn evaluation_oracle_agrees_on_m0n5() {
        let m = m0n(5);
        for w in 1..=7u64 {
            let classes: alloc::collections::BTreeSet<PicClass> = monomials_of_weight(&m, w)
                .iter()
                .map(|mono| m.degree_of_monomial(mono))
                .collect();
            for d in classes {
                let inv = invariant_basis(&m, &d).unwrap();
                assert_eq!(
                    inv.dim(),
                    evaluation_oracle_dim(&m, &inv.piece),
                    "class {d:?}"
                );
            }
        }
    }

    #[test]
    fn characteristic_consistency() {
        for n in [5, 6] {
            let q = m0n(n);
            let fps: Vec<BlowupModel> = [101, 32003]
                .iter()
                .map(|&p| build_m0n(n, Field::Prime(p)).unwrap())
                .collect();
            let mut classes = alloc::vec![PicClass::hyperplane(q.num_exceptional())];
            for i in 0..q.m() {
                for j in i + 1..q.m() {
                    classes.push(boundary_class(&q, i, j));
                }
            }
            for d in &classes {
                let dq = invariant_basis(&q, d).unwrap().dim();
                for fp in &fps {
                    assert_eq!(invariant_basis(fp, d).unwrap().dim(), dq);
                }
            }
        }
    }

    fn permute_class(model: &BlowupModel, d: &PicClass, perm: &[usize]) -> PicClass {
        let mut out = PicClass::zero(model.num_exceptional());
        out.h = d.h;
        for (e, s) in model.incidence().iter().enumerate() {
            let mut image: Vec<usize> = s.iter().map(|&j| perm[j]).collect();
            image.sort_unstable();
            out.e[model.subset_index(&image).unwrap()] = d.e[e];
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn enumerated_monomials_have_the_class(h in 0i64..3, e in proptest::collection::vec(-2i64..2, 4)) {
            let m = m0n(5);
            let d = PicClass { h, e };
            for mono in enumerate_piece(&m, &d).unwrap().monomials {
                prop_assert_eq!(m.degree_of_monomial(&mono), d.clone());
                prop_assert_eq!(m.monomial_weight(&mono) as i64, m.class_weight(&d));
            }
        }

        #[test]
        fn invariant_bases_are_invariant(h in 0i64..3, e in proptest::collection::vec(-2i64..1, 4)) {
            let m = m0n(5);
            let inv = invariant_basis(&m, &PicClass { h, e }).unwrap();
            for f in &inv.basis {
                prop_assert!(is_invariant(&m, f).unwrap());
            }
        }

        #[test]
        fn permutation_invariance(h in 0i64..3, e in proptest::collection::vec(-1i64..1, 4),
                                  perm in Just(alloc::vec![0usize, 1, 2, 3]).prop_shuffle()) {
            let m = m0n(5);
            let d = PicClass { h, e };
            let pd = permute_class(&m, &d, &perm);
            prop_assert_eq!(invariant_basis(&m, &d).unwrap().dim(), invariant_basis(&m, &pd).unwrap().dim());
        }
    }
}
