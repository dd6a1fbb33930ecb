//! Exact coefficients: rationals or residues modulo a prime.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient field descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Validated prime field.
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime_u64(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::InvalidField(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact field element. Rationals are kept in lowest terms with a positive
/// denominator; prime-field residues lie in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { residue: u64, modulus: u64 },
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        Scalar::from_i64(field, 0)
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_i64(field, 1)
    }

    pub fn from_i64(field: Field, v: i64) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Prime {
                residue: (v as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(field: Field, v: &BigInt) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => Scalar::Prime {
                residue: bigint_mod(v, p),
                modulus: p,
            },
        }
    }

    /// Maps a rational into `field`; fails when the denominator vanishes mod p.
    pub fn from_rational(field: Field, v: &BigRational) -> Result<Scalar> {
        match field {
            Field::Rational => Ok(Scalar::Rational(v.clone())),
            Field::Prime(p) => {
                let den = bigint_mod(v.denom(), p);
                if den == 0 {
                    return Err(Error::InvalidField(format!(
                        "denominator of {v} is divisible by {p}"
                    )));
                }
                let num = bigint_mod(v.numer(), p);
                Ok(Scalar::Prime {
                    residue: mulmod(num, powmod(den, p - 2, p), p),
                    modulus: p,
                })
            }
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { residue, .. } => *residue == 1,
        }
    }

    /// True when the canonical printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Prime { .. } => false,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Prime { .. } => None,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Prime { residue, modulus } => Scalar::Prime {
                residue: powmod(*residue, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.field());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Reduction of a rational scalar modulo `p`.
    pub fn reduce_mod(&self, p: u64) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => Scalar::from_rational(Field::Prime(p), r),
            Scalar::Prime { .. } => Err(Error::FieldMismatch(
                self.field().to_string(),
                "Q".to_string(),
            )),
        }
    }

    fn check(&self, other: &Scalar) {
        if self.field() != other.field() {
            panic!(
                "mixed-field scalar arithmetic: {} vs {}",
                self.field(),
                other.field()
            );
        }
    }
}

/// `C(n, k)` as an element of `field`. Prime fields use Lucas' theorem so the
/// result is correct for `n >= p`.
pub fn binomial(field: Field, n: u64, k: u64) -> Scalar {
    if k > n {
        return Scalar::zero(field);
    }
    match field {
        Field::Rational => {
            let k = k.min(n - k);
            let mut acc = BigInt::one();
            for i in 0..k {
                acc *= BigInt::from(n - i);
                acc /= BigInt::from(i + 1);
            }
            Scalar::from_bigint(field, &acc)
        }
        Field::Prime(p) => {
            let (mut n, mut k) = (n, k);
            let mut acc = 1u64 % p;
            while n > 0 || k > 0 {
                let (ni, ki) = (n % p, k % p);
                if ki > ni {
                    return Scalar::zero(field);
                }
                acc = mulmod(acc, small_binomial_mod(ni, ki, p), p);
                n /= p;
                k /= p;
            }
            Scalar::Prime {
                residue: acc,
                modulus: p,
            }
        }
    }
}

fn small_binomial_mod(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let mut num = 1u64 % p;
    let mut den = 1u64 % p;
    for i in 0..k {
        num = mulmod(num, (n - i) % p, p);
        den = mulmod(den, (i + 1) % p, p);
    }
    mulmod(num, powmod(den, p - 2, p), p)
}

/// Parses `"a"` or `"a/b"` into a rational in lowest terms.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::InvalidConfig(format!("not a rational number: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::InvalidConfig(format!(
            "zero denominator in {text:?}"
        )));
    }
    Ok(BigRational::new(num, den))
}

/// Primitive integer representative of a rational vector: entries scaled by
/// the lcm of denominators and divided by the gcd of numerators.
pub fn primitive_integer_vector(v: &[BigRational]) -> alloc::vec::Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: alloc::vec::Vec<BigInt> =
        v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in ints.iter_mut() {
            *x /= &g;
        }
    }
    ints
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { residue, .. } => write!(f, "{residue}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Prime {
                    residue: a,
                    modulus,
                },
                Scalar::Prime { residue: b, .. },
            ) => {
                let s = *a as u128 + *b as u128;
                Scalar::Prime {
                    residue: (s % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Prime {
                    residue: a,
                    modulus,
                },
                Scalar::Prime { residue: b, .. },
            ) => Scalar::Prime {
                residue: mulmod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { residue, modulus } => Scalar::Prime {
                residue: if *residue == 0 { 0 } else { modulus - residue },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Sign of a rational scalar (`Plus` for prime-field elements that are nonzero).
pub fn sign(s: &Scalar) -> Sign {
    match s {
        Scalar::Rational(r) => r.numer().sign(),
        Scalar::Prime { residue, .. } => {
            if *residue == 0 {
                Sign::NoSign
            } else {
                Sign::Plus
            }
        }
    }
}

pub(crate) fn field_name(field: Field) -> String {
    field.to_string()
}
