//! Exact linear algebra: fraction-free elimination over the rationals,
//! ordinary Gauss-Jordan over prime fields.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{field_name, primitive_integer_vector, Field, Scalar};

/// A sparse `rows x cols` matrix over one field. No zeros are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<BTreeMap<usize, Scalar>>,
}

impl ExactMatrix {
    pub fn new(field: Field, rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix {
            field,
            rows,
            cols,
            entries: alloc::vec![BTreeMap::new(); rows],
        }
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Result<ExactMatrix> {
        let mut m = ExactMatrix::new(field, 0, cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            m.push_sparse_row(r.iter().cloned().enumerate())?;
        }
        Ok(m)
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Result<ExactMatrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_i64(field, v)).collect())
            .collect();
        ExactMatrix::from_rows(field, cols, &rows)
    }

    /// Appends a row given as `(column, value)` pairs.
    pub fn push_sparse_row<I: IntoIterator<Item = (usize, Scalar)>>(
        &mut self,
        row: I,
    ) -> Result<()> {
        let mut map = BTreeMap::new();
        for (c, v) in row {
            self.check_entry(c, &v)?;
            if !v.is_zero() {
                map.insert(c, v);
            }
        }
        self.entries.push(map);
        self.rows += 1;
        Ok(())
    }

    pub fn set(&mut self, row: usize, col: usize, v: Scalar) -> Result<()> {
        if row >= self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: row + 1,
            });
        }
        self.check_entry(col, &v)?;
        if v.is_zero() {
            self.entries[row].remove(&col);
        } else {
            self.entries[row].insert(col, v);
        }
        Ok(())
    }

    fn check_entry(&self, col: usize, v: &Scalar) -> Result<()> {
        if col >= self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: col + 1,
            });
        }
        if v.field() != self.field {
            return Err(Error::FieldMismatch(
                field_name(self.field),
                field_name(v.field()),
            ));
        }
        Ok(())
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.entries[row]
            .get(&col)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries[r].iter().map(|(c, v)| (*c, v))
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Scalar::zero(self.field), |acc, (c, x)| &acc + &(x * &v[*c]))
            })
            .collect())
    }

    pub fn rank(&self) -> usize {
        echelon(self).pivots.len()
    }
}

/// Row echelon form: `rows[i]` has its first nonzero entry at `pivots[i]`.
struct Echelon {
    pivots: Vec<usize>,
    rows: Vec<Vec<Scalar>>,
}

fn echelon(m: &ExactMatrix) -> Echelon {
    match m.field {
        Field::Rational => bareiss_echelon(m),
        Field::Prime(_) => gauss_echelon(m),
    }
}

/// Fraction-free elimination. Each row is first scaled to primitive integers
/// (row scaling preserves the row space); subsequent updates divide exactly
/// by the previous pivot, so every entry stays a minor of the integer matrix.
fn bareiss_echelon(m: &ExactMatrix) -> Echelon {
    let cols = m.cols;
    let mut a: Vec<Vec<BigInt>> = Vec::new();
    for row in &m.entries {
        if row.is_empty() {
            continue;
        }
        let mut dense = alloc::vec![BigRational::zero(); cols];
        for (c, v) in row {
            dense[*c] = v.as_rational().expect("rational matrix").clone();
        }
        a.push(primitive_integer_vector(&dense));
    }
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let factor = core::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut v = &pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                if !v.is_zero() {
                    v /= &prev;
                }
                row[j] = v;
            }
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    let rows = a
        .into_iter()
        .map(|row| {
            row.iter()
                .map(|x| Scalar::from_bigint(Field::Rational, x))
                .collect()
        })
        .collect();
    Echelon { pivots, rows }
}

fn gauss_echelon(m: &ExactMatrix) -> Echelon {
    let cols = m.cols;
    let field = m.field;
    let mut a: Vec<Vec<Scalar>> = m
        .entries
        .iter()
        .filter(|r| !r.is_empty())
        .map(|row| {
            let mut dense = alloc::vec![Scalar::zero(field); cols];
            for (c, v) in row {
                dense[*c] = v.clone();
            }
            dense
        })
        .collect();
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for v in &mut a[r][c..cols] {
            *v = &*v * &inv;
        }
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &(&factor * &pivot_row[j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { pivots, rows: a }
}

/// Scales a nonzero vector canonically: primitive integers with a positive
/// first nonzero entry over the rationals, first nonzero entry 1 over `F_p`.
pub fn canonical_vector(v: &[Scalar]) -> Vec<Scalar> {
    let Some(lead) = v.iter().find(|x| !x.is_zero()) else {
        return v.to_vec();
    };
    match lead.field() {
        Field::Prime(_) => {
            let inv = lead.inv().expect("nonzero");
            v.iter().map(|x| x * &inv).collect()
        }
        Field::Rational => {
            let rats: Vec<BigRational> = v
                .iter()
                .map(|x| x.as_rational().expect("rational").clone())
                .collect();
            let mut ints = primitive_integer_vector(&rats);
            if lead.is_negative() {
                for x in ints.iter_mut() {
                    *x = -&*x;
                }
            }
            ints.iter()
                .map(|x| Scalar::from_bigint(Field::Rational, x))
                .collect()
        }
    }
}

/// Canonical basis of the right kernel: one vector per non-pivot column `f`,
/// the unique kernel element with entry 1 at `f` and 0 at the other free
/// columns, then scaled by [`canonical_vector`]. The result depends only on
/// the kernel as a subspace and the column order.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    let field = m.field;
    let ech = echelon(m);
    let mut is_pivot = alloc::vec![false; m.cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut x = alloc::vec![Scalar::zero(field); m.cols];
        x[free] = Scalar::one(field);
        for (i, &p) in ech.pivots.iter().enumerate().rev() {
            let row = &ech.rows[i];
            let mut acc = Scalar::zero(field);
            for j in p + 1..m.cols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc = &acc + &(&row[j] * &x[j]);
                }
            }
            if !acc.is_zero() {
                x[p] = -&(&acc * &row[p].inv().expect("pivot"));
            }
        }
        basis.push(canonical_vector(&x));
    }
    basis
}

/// Rank of a list of vectors of equal length over one field.
pub fn row_space_dim(field: Field, vectors: &[Vec<Scalar>]) -> Result<usize> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    let cols = first.len();
    for v in vectors {
        if let Some(bad) = v.iter().find(|x| x.field() != field) {
            return Err(Error::FieldMismatch(
                field_name(field),
                field_name(bad.field()),
            ));
        }
    }
    Ok(ExactMatrix::from_rows(field, cols, vectors)?.rank())
}

/// Incremental span membership. Keeps a fully reduced echelon basis with
/// unit pivots, so membership tests and insertions are deterministic.
#[derive(Debug, Clone)]
pub struct SpanReducer {
    field: Field,
    len: usize,
    basis: BTreeMap<usize, Vec<Scalar>>,
}

impl SpanReducer {
    pub fn new(field: Field, len: usize) -> SpanReducer {
        SpanReducer {
            field,
            len,
            basis: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.len, "vector length");
        let mut w = v.to_vec();
        for (&p, row) in &self.basis {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for j in p..self.len {
                if !row[j].is_zero() {
                    w[j] = &w[j] - &(&f * &row[j]);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v` to the span; returns false if it was already contained.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero");
        let w: Vec<Scalar> = w.iter().map(|x| x * &inv).collect();
        for row in self.basis.values_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for j in p..self.len {
                if !w[j].is_zero() {
                    row[j] = &row[j] - &(&f * &w[j]);
                }
            }
        }
        self.basis.insert(p, w);
        true
    }
}

/// Sign-insensitive check that a vector is nonzero with a positive or unit lead.
pub fn has_canonical_lead(v: &[Scalar]) -> bool {
    match v.iter().find(|x| !x.is_zero()) {
        None => false,
        Some(Scalar::Rational(r)) => r.is_positive(),
        Some(s) => s.is_one(),
    }
}
