//! Exact coefficient fields: the rationals and prime fields `F_p`.
//!
//! Linear algebra and algebra code is generic over [`Field`], a field
//! *descriptor* that owns any runtime parameters (the modulus `p`) and
//! performs arithmetic on plain element values. [`Scalar`] is the
//! self-describing runtime value used at the file and CLI boundary.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted for a prime field; `acc + a * b` on residues fits in a `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Which field a structure lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        PrimeField::new(p).map(|f| f.spec())
    }

    pub fn characteristic(&self) -> u64 {
        field_characteristic(*self)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }
}

/// 0 for the rationals, `p` for `F_p`.
pub fn field_characteristic(f: FieldSpec) -> u64 {
    match f {
        FieldSpec::Rationals => 0,
        FieldSpec::Prime(p) => p,
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `p`, `Fp`, `F_p` and `GF(p)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("F_"))
            .or_else(|| t.strip_prefix('F'))
            .unwrap_or(t);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::usage(format!("unrecognised field `{s}` (expected Q or a prime)")))?;
        FieldSpec::prime(p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field descriptor. Elements are plain values; all arithmetic goes
/// through the descriptor so that runtime parameters stay out of the
/// element representation.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;

    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;

    /// The `index`-th element in the canonical enumeration order
    /// (0, 1, ..., q-1 for prime fields). Only meaningful for finite fields.
    fn element(&self, index: u64) -> Self::Elem;

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let t = self.mul(a, b);
        *acc = self.add(acc, &t);
    }

    fn characteristic(&self) -> u64 {
        field_characteristic(self.spec())
    }

    fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let bi = self
            .inv(b)
            .ok_or_else(|| Error::domain("division by zero"))?;
        Ok(self.mul(a, &bi))
    }
}

/// The field of rational numbers, elements are reduced `BigRational`s.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        parse_rational(s)
    }
    fn render(&self, a: &BigRational) -> String {
        render_rational(a)
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn element(&self, index: u64) -> BigRational {
        // Not a finite field; callers gate on `order()`. Map to the integers
        // so that the method is at least total.
        self.from_i64(index as i64)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::parse(format!("invalid rational `{s}`"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::domain(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(n, d))
}

fn render_rational(a: &BigRational) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// The prime field `F_p`; elements are residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::usage(format!("prime {p} exceeds the supported maximum {MAX_PRIME}")));
        }
        if !is_prime(p) {
            return Err(Error::usage(format!("{p} is not a prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn reduce_i128(&self, n: i128) -> u64 {
        n.rem_euclid(self.p as i128) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1 % self.p
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        if self.p == 2 {
            a & b
        } else {
            a * b % self.p
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let g = (*a as i64).extended_gcd(&(self.p as i64));
        Some(self.reduce_i128(g.x as i128))
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i128(n as i128)
    }
    fn parse(&self, s: &str) -> Result<u64> {
        // Accept any integer or fraction and reduce it; canonical output is the residue.
        let r = parse_rational(s)?;
        let p = BigInt::from(self.p);
        let n = r.numer().mod_floor(&p).to_u64().expect("residue fits");
        let d = r.denom().mod_floor(&p).to_u64().expect("residue fits");
        let d_inv = self
            .inv(&d)
            .ok_or_else(|| Error::domain(format!("denominator of `{s}` vanishes mod {}", self.p)))?;
        Ok(self.mul(&n, &d_inv))
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    #[inline]
    fn element(&self, index: u64) -> u64 {
        index % self.p
    }
    #[inline]
    fn mul_add_assign(&self, acc: &mut u64, a: &u64, b: &u64) {
        if self.p == 2 {
            *acc ^= a & b;
        } else {
            *acc = (*acc + a * b) % self.p;
        }
    }
}

/// Arithmetic operation selector for [`scalar_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A self-describing exact scalar, tagged with its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, p: u64 },
}

impl Scalar {
    pub fn parse(field: FieldSpec, s: &str) -> Result<Scalar> {
        match field {
            FieldSpec::Rationals => Ok(Scalar::Rational(parse_rational(s)?)),
            FieldSpec::Prime(p) => {
                let f = PrimeField::new(p)?;
                Ok(Scalar::Prime { value: f.parse(s)?, p })
            }
        }
    }

    pub fn rational(n: i64, d: i64) -> Result<Scalar> {
        if d == 0 {
            return Err(Error::domain("zero denominator"));
        }
        Ok(Scalar::Rational(BigRational::new(n.into(), d.into())))
    }

    pub fn modp(value: i64, p: u64) -> Result<Scalar> {
        let f = PrimeField::new(p)?;
        Ok(Scalar::Prime { value: f.from_i64(value), p })
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Prime { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => f.write_str(&render_rational(r)),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Exact field arithmetic on tagged scalars.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => {
            let r = match op {
                ArithOp::Add => x + y,
                ArithOp::Sub => x - y,
                ArithOp::Mul => x * y,
                ArithOp::Div => {
                    if y.is_zero() {
                        return Err(Error::domain("division by zero"));
                    }
                    x / y
                }
            };
            Ok(Scalar::Rational(r))
        }
        (Scalar::Prime { value: x, p }, Scalar::Prime { value: y, p: q }) if p == q => {
            let f = PrimeField { p: *p };
            let value = match op {
                ArithOp::Add => f.add(x, y),
                ArithOp::Sub => f.sub(x, y),
                ArithOp::Mul => f.mul(x, y),
                ArithOp::Div => f.div(x, y)?,
            };
            Ok(Scalar::Prime { value, p: *p })
        }
        _ => Err(Error::usage(format!(
            "mixed fields: {} and {}",
            a.field(),
            b.field()
        ))),
    }
}
