//! Sparse monomials under the graded-lexicographic order.

use alloc::vec::Vec;
use core::cmp::Ordering;

/// A monomial stored as sorted `(variable, exponent)` pairs with no zero
/// exponents.
///
/// Ordering: total degree first, then lexicographic on the exponent vector
/// with variable 0 most significant (a larger exponent on an earlier variable
/// makes the monomial larger).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(u32, u32)>,
    degree: u64,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(index: usize) -> Monomial {
        Monomial::var_pow(index, 1)
    }

    pub fn var_pow(index: usize, exp: u32) -> Monomial {
        if exp == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: alloc::vec![(index as u32, exp)],
            degree: exp as u64,
        }
    }

    /// Builds from arbitrary pairs; repeated variables accumulate, zeros drop.
    pub fn from_pairs<I: IntoIterator<Item = (usize, u32)>>(pairs: I) -> Monomial {
        let mut v: Vec<(u32, u32)> = pairs
            .into_iter()
            .filter(|&(_, e)| e > 0)
            .map(|(i, e)| (i as u32, e))
            .collect();
        v.sort_unstable();
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(v.len());
        for (i, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 += e,
                _ => out.push((i, e)),
            }
        }
        let degree = out.iter().map(|&(_, e)| e as u64).sum();
        Monomial { exps: out, degree }
    }

    /// Dense exponent vector of length `nvars`.
    pub fn from_dense(exps: &[u32]) -> Monomial {
        Monomial::from_pairs(exps.iter().enumerate().map(|(i, &e)| (i, e)))
    }

    pub fn to_dense(&self, nvars: usize) -> Vec<u32> {
        let mut v = alloc::vec![0; nvars];
        for &(i, e) in &self.exps {
            v[i as usize] = e;
        }
        v
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        match self.exps.binary_search_by_key(&(var as u32), |&(i, _)| i) {
            Ok(pos) => self.exps[pos].1,
            Err(_) => 0,
        }
    }

    /// Nonzero `(variable, exponent)` pairs in increasing variable order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().map(|&(i, e)| (i as usize, e))
    }

    /// Largest variable index with a nonzero exponent, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.exps.last().map(|&(i, _)| i as usize)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(i, e)), Some(&&(j, f))) => match i.cmp(&j) {
                    Ordering::Less => {
                        out.push((i, e));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((j, f));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((i, e + f));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&p), None) => {
                    out.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    out.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial {
            exps: out,
            degree: self.degree + other.degree,
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|&(i, e)| (i, e * k)).collect(),
            degree: self.degree * k as u64,
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut pairs = Vec::with_capacity(self.exps.len());
        let mut j = 0;
        for &(i, e) in &self.exps {
            let mut d = 0;
            if j < other.exps.len() && other.exps[j].0 == i {
                d = other.exps[j].1;
                j += 1;
            } else if j < other.exps.len() && other.exps[j].0 < i {
                return None;
            }
            if d > e {
                return None;
            }
            if e > d {
                pairs.push((i, e - d));
            }
        }
        if j < other.exps.len() {
            return None;
        }
        let degree = pairs.iter().map(|&(_, e)| e as u64).sum();
        Some(Monomial {
            exps: pairs,
            degree,
        })
    }

    /// Removes variable `var`, returning its exponent and the remainder.
    pub fn split_var(&self, var: usize) -> (u32, Monomial) {
        let e = self.exponent(var);
        if e == 0 {
            return (0, self.clone());
        }
        let exps: Vec<(u32, u32)> = self
            .exps
            .iter()
            .copied()
            .filter(|&(i, _)| i as usize != var)
            .collect();
        (
            e,
            Monomial {
                exps,
                degree: self.degree - e as u64,
            },
        )
    }

    /// Keeps only variables for which `keep` is true.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Monomial {
        Monomial::from_pairs(self.iter().filter(|&(i, _)| keep(i)))
    }

    /// Applies an index map to every variable.
    pub fn reindex(&self, map: impl Fn(usize) -> usize) -> Monomial {
        Monomial::from_pairs(self.iter().map(|(i, e)| (map(i), e)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (&(i, e), &(j, f)) in self.exps.iter().zip(other.exps.iter()) {
                if i != j {
                    // the monomial carrying the earlier variable is larger
                    return if i < j {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    };
                }
                if e != f {
                    return e.cmp(&f);
                }
            }
            self.exps.len().cmp(&other.exps.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense_cmp(a: &[u32], b: &[u32]) -> Ordering {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        da.cmp(&db).then_with(|| a.cmp(b))
    }

    #[test]
    fn degree_and_zero_exponents() {
        let m = Monomial::from_pairs([(3, 2), (1, 0), (3, 1), (0, 4)]);
        assert_eq!(m.degree(), 7);
        assert_eq!(m.iter().collect::<Vec<_>>(), alloc::vec![(0, 4), (3, 3)]);
        assert_eq!(m.exponent(1), 0);
    }

    #[test]
    fn division() {
        let a = Monomial::from_dense(&[2, 1, 0, 3]);
        let b = Monomial::from_dense(&[1, 0, 0, 3]);
        assert_eq!(a.div(&b), Some(Monomial::from_dense(&[1, 1, 0, 0])));
        assert_eq!(b.div(&a), None);
        assert_eq!(a.div(&Monomial::var(2)), None);
    }

    proptest! {
        #[test]
        fn order_matches_dense_deglex(a in proptest::collection::vec(0u32..3, 5), b in proptest::collection::vec(0u32..3, 5)) {
            let ma = Monomial::from_dense(&a);
            let mb = Monomial::from_dense(&b);
            prop_assert_eq!(ma.cmp(&mb), dense_cmp(&a, &b));
            prop_assert_eq!(ma.mul(&mb).to_dense(5), a.iter().zip(&b).map(|(x, y)| x + y).collect::<Vec<_>>());
        }
    }
}
