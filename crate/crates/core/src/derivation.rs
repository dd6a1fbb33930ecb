//! The additive group action on the toric model and its derivations.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::BlowupModel;
use crate::monomial::Monomial;
use crate::polynomial::Polynomial;
use crate::scalar::{field_name, Scalar};

fn check_catalog(model: &BlowupModel, f: &Polynomial) -> Result<()> {
    if f.field() != model.field() {
        return Err(Error::FieldMismatch(
            field_name(model.field()),
            field_name(f.field()),
        ));
    }
    if f.nvars() != model.nvars() {
        return Err(Error::CatalogMismatch(model.nvars(), f.nvars()));
    }
    Ok(())
}

/// `D_k(f) = sum_j V[k][j] z_j df/dy_j` for the 0-based derivation index `k`.
pub fn apply_derivation(model: &BlowupModel, k: usize, f: &Polynomial) -> Result<Polynomial> {
    if k >= model.t() {
        return Err(Error::DerivationIndex {
            index: k,
            count: model.t(),
        });
    }
    check_catalog(model, f)?;
    let row = &model.derivations()[k];
    let mut out = Polynomial::zero(model.field(), model.nvars());
    for (mono, c) in f.terms() {
        for (j, e) in mono.iter() {
            if !model.is_y(j) || row[j].is_zero() {
                continue;
            }
            let (_, rest) = mono.split_var(j);
            let term = rest.mul(&Monomial::var_pow(j, e - 1)).mul(model.z(j));
            let coef = &(c * &row[j]) * &Scalar::from_i64(model.field(), e as i64);
            out.add_term(term, coef);
        }
    }
    Ok(out)
}

/// Index of the formal parameter `lambda_k` in the extended catalog.
pub fn lambda_index(model: &BlowupModel, k: usize) -> usize {
    model.nvars() + k
}

/// Number of variables of the catalog extended by `lambda_1..lambda_t`.
pub fn extended_nvars(model: &BlowupModel) -> usize {
    model.nvars() + model.t()
}

/// Lifts `f` into the catalog extended by the group parameters.
pub fn extend(model: &BlowupModel, f: &Polynomial) -> Polynomial {
    f.reindex(extended_nvars(model), |i| i)
}

/// The shift applied to `y_j`: `(sum_k lambda_k V[k][j]) z_j`, extended ring.
fn shift(model: &BlowupModel, j: usize) -> Polynomial {
    let nv = extended_nvars(model);
    let mut p = Polynomial::zero(model.field(), nv);
    for (k, row) in model.derivations().iter().enumerate() {
        p.add_term(
            Monomial::var(lambda_index(model, k)).mul(model.z(j)),
            row[j].clone(),
        );
    }
    p
}

/// Expands `f(y_j + (sum_k lambda_k V[k][j]) z_j, x)` exactly, with the
/// `lambda_k` adjoined as commuting variables after the catalog.
pub fn group_substitute(model: &BlowupModel, f: &Polynomial) -> Result<Polynomial> {
    check_catalog(model, f)?;
    let field = model.field();
    let nv = extended_nvars(model);
    let one = Scalar::one(field);
    let shifts: Vec<Polynomial> = (0..model.m()).map(|j| shift(model, j)).collect();
    let mut powers: BTreeMap<(usize, u32), Polynomial> = BTreeMap::new();
    let mut out = Polynomial::zero(field, nv);
    for (mono, c) in f.terms() {
        let mut term = Polynomial::from_monomial(mono.restrict(|i| !model.is_y(i)), c.clone(), nv);
        for (j, e) in mono.iter().filter(|&(i, _)| model.is_y(i)) {
            let factor = powers.entry((j, e)).or_insert_with(|| {
                Polynomial::binomial_power((&Monomial::var(j), &one), &shifts[j], e)
            });
            term = term.mul(factor)?;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

/// `group_substitute(f) - f`: the part of positive degree in the parameters.
/// Its vanishing is the invariance condition.
pub fn substitution_defect(model: &BlowupModel, f: &Polynomial) -> Result<Polynomial> {
    group_substitute(model, f)?.sub(&extend(model, f))
}

/// Invariance under the full group action, valid in every characteristic.
pub fn is_invariant(model: &BlowupModel, f: &Polynomial) -> Result<bool> {
    Ok(substitution_defect(model, f)?.is_zero())
}

/// Kernel of all derivations. Agrees with [`is_invariant`] over the
/// rationals; over `F_p` it also accepts non-invariants such as `y^p`.
pub fn is_derivation_kernel(model: &BlowupModel, f: &Polynomial) -> Result<bool> {
    for k in 0..model.t() {
        if !apply_derivation(model, k, f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An irreducible component `{x_e = 0 : e in T}` of the fixed locus.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FixedComponent {
    /// Sorted exceptional indices.
    pub divisors: Vec<usize>,
}

/// y-indices moved by the action: those `j` with some `V[k][j] != 0`.
pub fn moved_indices(model: &BlowupModel) -> Vec<usize> {
    (0..model.m())
        .filter(|&j| model.derivations().iter().any(|row| !row[j].is_zero()))
        .collect()
}

/// Components of the fixed locus: the minimal sets `T` of exceptional
/// divisors whose incidence sets cover every moved y-index, ordered by size
/// then lexicographically.
pub fn fixed_components(model: &BlowupModel) -> Result<Vec<FixedComponent>> {
    if model.t() == 0 {
        return Err(Error::NoAction);
    }
    let universe = moved_indices(model);
    let m = model.m();
    let mut in_universe = alloc::vec![false; m];
    for &j in &universe {
        in_universe[j] = true;
    }
    let sets: Vec<Vec<usize>> = model
        .incidence()
        .iter()
        .map(|s| s.iter().copied().filter(|&j| in_universe[j]).collect())
        .collect();
    let mut covering: Vec<Vec<usize>> = alloc::vec![Vec::new(); m];
    for (e, s) in sets.iter().enumerate() {
        for &j in s {
            covering[j].push(e);
        }
    }
    let mut found = BTreeSet::new();
    let mut search = CoverSearch {
        sets: &sets,
        covering: &covering,
        universe: &universe,
        count: alloc::vec![0; m],
        chosen: Vec::new(),
        found: &mut found,
    };
    search.run();
    let mut out: Vec<FixedComponent> = found
        .into_iter()
        .map(|divisors| FixedComponent { divisors })
        .collect();
    out.sort_by(|a, b| {
        a.divisors
            .len()
            .cmp(&b.divisors.len())
            .then_with(|| a.divisors.cmp(&b.divisors))
    });
    Ok(out)
}

struct CoverSearch<'a> {
    sets: &'a [Vec<usize>],
    covering: &'a [Vec<usize>],
    universe: &'a [usize],
    /// how many chosen sets cover each y-index
    count: Vec<usize>,
    chosen: Vec<usize>,
    found: &'a mut BTreeSet<Vec<usize>>,
}

impl CoverSearch<'_> {
    /// Every chosen set still covers some index no other chosen set covers.
    fn all_private(&self) -> bool {
        self.chosen
            .iter()
            .all(|&e| self.sets[e].iter().any(|&j| self.count[j] == 1))
    }

    fn run(&mut self) {
        let Some(&j) = self.universe.iter().find(|&&j| self.count[j] == 0) else {
            let mut t = self.chosen.clone();
            t.sort_unstable();
            self.found.insert(t);
            return;
        };
        let (covering, sets) = (self.covering, self.sets);
        for &e in &covering[j] {
            if self.chosen.contains(&e) {
                continue;
            }
            for &i in &sets[e] {
                self.count[i] += 1;
            }
            self.chosen.push(e);
            if self.all_private() {
                self.run();
            }
            self.chosen.pop();
            for &i in &sets[e] {
                self.count[i] -= 1;
            }
        }
    }
}
