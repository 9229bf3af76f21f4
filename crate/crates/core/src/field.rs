//! Exact scalar fields.
//!
//! Two backends share one [`Scalar`] type: arbitrary-precision rationals and
//! residues modulo an odd prime. Characteristic 2 is rejected at construction
//! because the diagonal points of a complete quadrangle are collinear there.
//! Every operation is exact; there is no tolerance anywhere.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is excluded (Fano's axiom fails)")]
    CharacteristicTwo,
    #[error("unrecognised field {0:?} (expected \"rational\" or \"prime:P\")")]
    UnknownField(String),
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
    #[error("residue {value} is not a least nonnegative residue mod {modulus}")]
    ResidueOutOfRange { value: String, modulus: u64 },
}

/// An odd prime modulus. Construction checks primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(OddPrime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Deterministic Miller-Rabin; the base set is exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        ((a as u128 + m as u128) - b as u128) as u64
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// The field a computation lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(OddPrime),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        OddPrime::new(p).map(FieldSpec::PrimeField)
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(p.get()),
        }
    }

    pub fn is_rational(self) -> bool {
        matches!(self, FieldSpec::Rationals)
    }

    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        self.bigint(&BigInt::from(n))
    }

    pub fn bigint(self, n: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::PrimeField(p) => {
                let m = BigInt::from(p.get());
                let r = n.mod_floor(&m);
                Scalar::Residue(Residue { value: r.to_u64().expect("residue below a u64 modulus"), modulus: p })
            }
        }
    }

    /// `num / den` in this field. Panics if `den` vanishes in the field.
    pub fn ratio(self, num: i64, den: i64) -> Scalar {
        &self.int(num) / &self.int(den)
    }

    /// All elements of a prime field in increasing residue order; `None` over the rationals.
    pub fn elements(self) -> Option<impl Iterator<Item = Scalar>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => {
                Some((0..p.get()).map(move |value| Scalar::Residue(Residue { value, modulus: p })))
            }
        }
    }

    /// Parses the exact string form used in scene documents: `a` or `a/b`
    /// over the rationals, a least nonnegative residue over a prime field.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar, FieldError> {
        let bad = || FieldError::BadScalar(s.to_string());
        match self {
            FieldSpec::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (s, None),
                };
                let num: BigInt = parse_int(num).ok_or_else(bad)?;
                let den: BigInt = match den {
                    Some(d) => parse_int(d).ok_or_else(bad)?,
                    None => BigInt::one(),
                };
                if !den.is_positive() {
                    return Err(bad());
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            FieldSpec::PrimeField(p) => {
                if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                match s.parse::<u64>() {
                    Ok(value) if value < p.get() => Ok(Scalar::Residue(Residue { value, modulus: p })),
                    _ => Err(FieldError::ResidueOutOfRange { value: s.to_string(), modulus: p.get() }),
                }
            }
        }
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("rational"),
            FieldSpec::PrimeField(p) => write!(f, "prime:{}", p.get()),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "rational" {
            return Ok(FieldSpec::Rationals);
        }
        match s.strip_prefix("prime:").map(str::parse::<u64>) {
            Some(Ok(p)) => FieldSpec::prime(p),
            _ => Err(FieldError::UnknownField(s.to_string())),
        }
    }
}

/// A residue class stored as its least nonnegative representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: OddPrime,
}

impl Residue {
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus.get()
    }
}

/// An exact field element. Rationals are kept in lowest terms with a
/// positive denominator, so structural equality is field equality.
///
/// Mixing elements of different fields in one operation is a programming
/// error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue(Residue),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue(r) => FieldSpec::PrimeField(r.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue(r) => r.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue(r) => r.value == 1,
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.field().one()
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue(r) => {
                let p = r.modulus.get();
                Scalar::Residue(Residue { value: pow_mod(r.value, p - 2, p), modulus: r.modulus })
            }
        })
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue(_) => None,
        }
    }

    /// Lossy conversion for drawing only. `None` for residues.
    pub fn to_f64(&self) -> Option<f64> {
        self.as_rational().and_then(|q| q.to_f64())
    }

    /// Sign of a rational (`-1`, `0`, `1`); `None` for residues.
    pub fn signum(&self) -> Option<i8> {
        self.as_rational().map(|q| {
            if q.is_zero() {
                0
            } else if q.is_positive() {
                1
            } else {
                -1
            }
        })
    }

    fn combine(
        &self,
        rhs: &Scalar,
        rat: impl FnOnce(&BigRational, &BigRational) -> BigRational,
        res: impl FnOnce(u64, u64, u64) -> u64,
    ) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(rat(a, b)),
            (Scalar::Residue(a), Scalar::Residue(b)) if a.modulus == b.modulus => {
                Scalar::Residue(Residue { value: res(a.value, b.value, a.modulus.get()), modulus: a.modulus })
            }
            _ => panic!("field mismatch: {} vs {}", self.field(), rhs.field()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue(r) => write!(f, "{}", r.value),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.combine(rhs, |a, b| a + b, add_mod)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.combine(rhs, |a, b| a - b, sub_mod)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.combine(rhs, |a, b| a * b, mul_mod)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero, like integer division.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue(r) => {
                Scalar::Residue(Residue { value: sub_mod(0, r.value, r.modulus.get()), modulus: r.modulus })
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);
