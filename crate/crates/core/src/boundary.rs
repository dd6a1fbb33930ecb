//! Boundary invariants of the `M_{0,n}` model and the denominator-clearing
//! rewrite of invariants in terms of differences `y_j/z_j - y_r/z_r`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::derivation::is_invariant;
use crate::error::{Error, Result};
use crate::model::{BlowupModel, PicClass};
use crate::monomial::Monomial;
use crate::polynomial::Polynomial;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BoundaryKind {
    /// The variable `x_e`.
    Exceptional(usize),
    /// The binomial for the pair `i < j` of y-indices.
    Binomial(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryInvariant {
    pub kind: BoundaryKind,
    pub class: PicClass,
    pub polynomial: Polynomial,
}

fn require_m0n(model: &BlowupModel) -> Result<()> {
    if model.is_m0n() {
        Ok(())
    } else {
        Err(Error::WrongKind { expected: "m0n" })
    }
}

/// `prod x_e` over the exceptional indices selected by `pick(S_e)`.
fn x_product(model: &BlowupModel, pick: impl Fn(&[usize]) -> bool) -> Monomial {
    Monomial::from_pairs(
        model
            .incidence()
            .iter()
            .enumerate()
            .filter(|(_, s)| pick(s))
            .map(|(e, _)| (model.m() + e, 1)),
    )
}

/// `y_i prod_{I ∋ j, I ∌ i} x_I - y_j prod_{I ∋ i, I ∌ j} x_I`.
pub fn boundary_binomial(model: &BlowupModel, i: usize, j: usize) -> Result<Polynomial> {
    require_m0n(model)?;
    if i >= model.m() || j >= model.m() || i == j {
        return Err(Error::Precondition(format!(
            "invalid index pair ({}, {})",
            i + 1,
            j + 1
        )));
    }
    let one = Scalar::one(model.field());
    let a = Monomial::var(i).mul(&x_product(model, |s| s.contains(&j) && !s.contains(&i)));
    let b = Monomial::var(j).mul(&x_product(model, |s| s.contains(&i) && !s.contains(&j)));
    Ok(Polynomial::from_terms(
        model.field(),
        model.nvars(),
        [(a, one.clone()), (b, -&one)],
    ))
}

/// `H - sum of E_I over I disjoint from {i, j}`.
pub fn boundary_class(model: &BlowupModel, i: usize, j: usize) -> PicClass {
    let mut d = PicClass::hyperplane(model.num_exceptional());
    for (e, s) in model.incidence().iter().enumerate() {
        if !s.contains(&i) && !s.contains(&j) {
            d.e[e] = -1;
        }
    }
    d
}

/// Every `x_I` with class `E_I`, then each pair binomial with its class.
pub fn boundary_invariants(model: &BlowupModel) -> Result<Vec<BoundaryInvariant>> {
    require_m0n(model)?;
    let big_e = model.num_exceptional();
    let mut out: Vec<BoundaryInvariant> = (0..big_e)
        .map(|e| BoundaryInvariant {
            kind: BoundaryKind::Exceptional(e),
            class: PicClass::exceptional(big_e, e),
            polynomial: model.x(e),
        })
        .collect();
    for i in 0..model.m() {
        for j in i + 1..model.m() {
            out.push(BoundaryInvariant {
                kind: BoundaryKind::Binomial(i, j),
                class: boundary_class(model, i, j),
                polynomial: boundary_binomial(model, i, j)?,
            });
        }
    }
    Ok(out)
}

/// Result of [`laurent_rewrite`].
///
/// With `r` the normalization index and `w_j = y_j/z_j - y_r/z_r`, the input
/// equals `rewrite(w, x)`, where `rewrite` stores `w_j` in the slot of `y_j`.
/// Writing `q_j = z_j z_r / g_jr` (`g_jr` the x-monomial common to `z_j` and
/// `z_r`), each `q_j w_j` is the boundary binomial for `(j, r)`, so
/// `multiplier * f` is a polynomial in those binomials and the x-variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteCertificate {
    /// 0-based y-index set to zero.
    pub normalization: usize,
    pub rewrite: Polynomial,
    /// `prod_j q_j^{A_j}`, `A_j` the degree of `rewrite` in `w_j`.
    pub multiplier: Monomial,
    /// Whether `multiplier * f` equals the expansion in boundary binomials.
    pub roundtrip: bool,
}

/// Expresses an invariant through the differences `y_j/z_j - y_r/z_r`, with
/// `r` the last y-index, and verifies the identity after clearing
/// denominators.
pub fn laurent_rewrite(model: &BlowupModel, f: &Polynomial) -> Result<RewriteCertificate> {
    require_m0n(model)?;
    if !f.is_zero() && model.homogeneous_class(f).is_none() {
        return Err(Error::Precondition("polynomial is not homogeneous".into()));
    }
    if !is_invariant(model, f)? {
        return Err(Error::Precondition("polynomial is not invariant".into()));
    }
    let m = model.m();
    let r = m - 1;
    let nv = model.nvars();

    // y_j -> z_j w_j, y_r -> 0
    let mut rewrite = Polynomial::zero(model.field(), nv);
    for (mono, c) in f.terms() {
        if mono.exponent(r) > 0 {
            continue;
        }
        let mut image = mono.clone();
        for (j, k) in mono.iter().filter(|&(i, _)| i < m) {
            image = image.mul(&model.z(j).pow(k));
        }
        rewrite.add_term(image, c.clone());
    }

    let mut top = alloc::vec![0u32; r];
    for (mono, _) in rewrite.terms() {
        for (j, t) in top.iter_mut().enumerate() {
            *t = (*t).max(mono.exponent(j));
        }
    }
    let q: Vec<Monomial> = (0..r)
        .map(|j| {
            let g = x_product(model, |s| s.contains(&j) && s.contains(&r));
            model
                .z(j)
                .mul(model.z(r))
                .div(&g)
                .expect("g_jr divides z_j z_r")
        })
        .collect();
    let multiplier = (0..r).fold(Monomial::one(), |acc, j| acc.mul(&q[j].pow(top[j])));

    let mut deltas: BTreeMap<(usize, u32), Polynomial> = BTreeMap::new();
    let mut rhs = Polynomial::zero(model.field(), nv);
    for (mono, c) in rewrite.terms() {
        let mut term = Polynomial::from_monomial(mono.restrict(|i| i >= m), c.clone(), nv);
        for j in 0..r {
            let k = mono.exponent(j);
            if k > 0 {
                let power = match deltas.get(&(j, k)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = boundary_binomial(model, j, r)?.pow(k);
                        deltas.insert((j, k), p.clone());
                        p
                    }
                };
                term = term.mul(&power)?;
            }
            term = term.mul_monomial(&q[j].pow(top[j] - k));
        }
        rhs = rhs.add(&term)?;
    }
    let roundtrip = f.mul_monomial(&multiplier) == rhs;
    Ok(RewriteCertificate {
        normalization: r,
        rewrite,
        multiplier,
        roundtrip,
    })
}
