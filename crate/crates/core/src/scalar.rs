//! Exact scalars: rationals and elements `r + s·√d` of a real quadratic field.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::primes;

pub type Rational = BigRational;

/// The number field a [`FieldElement`] lives in: either `Q` or `Q(√d)`
/// for a square-free `d >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FieldContext {
    radicand: Option<u64>,
}

fn is_square_free(d: u64) -> bool {
    let mut m = d;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

impl FieldContext {
    pub const RATIONAL: FieldContext = FieldContext { radicand: None };

    pub fn quadratic(d: u64) -> Result<Self> {
        if d < 2 || !is_square_free(d) {
            return Err(Error::InvalidRadicand(d));
        }
        Ok(FieldContext { radicand: Some(d) })
    }

    /// `0` selects the rational-only context, anything else must be a valid radicand.
    pub fn from_radicand(d: u64) -> Result<Self> {
        if d == 0 {
            Ok(Self::RATIONAL)
        } else {
            Self::quadratic(d)
        }
    }

    pub fn radicand(&self) -> Option<u64> {
        self.radicand
    }

    pub fn is_rational_only(&self) -> bool {
        self.radicand.is_none()
    }

    /// Smallest context containing both. Rational-only coerces into any quadratic field.
    pub fn join(self, other: FieldContext) -> Result<FieldContext> {
        match (self.radicand, other.radicand) {
            (Some(a), Some(b)) if a != b => Err(Error::FieldMismatch(a, b)),
            (Some(_), _) => Ok(self),
            _ => Ok(other),
        }
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.radicand {
            None => write!(f, "Q"),
            Some(d) => write!(f, "Q(sqrt({d}))"),
        }
    }
}

/// An exact real number `r + s·√d`.
///
/// The representation is canonical: `r` and `s` are reduced rationals and
/// `s` is zero in the rational-only context. Two elements compare equal iff
/// they denote the same real number; a rational element equals the same
/// rational embedded in any quadratic field.
#[derive(Debug, Clone)]
pub struct FieldElement {
    ctx: FieldContext,
    r: Rational,
    s: Rational,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.s == other.s && (self.s.is_zero() || self.ctx == other.ctx)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.r.hash(state);
        self.s.hash(state);
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl FieldElement {
    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rational(r: Rational) -> Self {
        FieldElement {
            ctx: FieldContext::RATIONAL,
            r,
            s: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(int(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::rational(Rational::from_integer(n))
    }

    /// `r + s·√d` in the given context. A nonzero `s` needs a quadratic context.
    pub fn new(ctx: FieldContext, r: Rational, s: Rational) -> Result<Self> {
        if ctx.is_rational_only() && !s.is_zero() {
            return Err(Error::InvalidRadicand(0));
        }
        Ok(FieldElement { ctx, r, s })
    }

    /// `s·√d`.
    pub fn surd(s: Rational, d: u64) -> Result<Self> {
        Self::new(FieldContext::quadratic(d)?, Rational::zero(), s)
    }

    pub fn context(&self) -> FieldContext {
        self.ctx
    }

    pub fn rational_part(&self) -> &Rational {
        &self.r
    }

    pub fn surd_part(&self) -> &Rational {
        &self.s
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.r.is_one() && self.s.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.s.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.r)
    }

    /// Re-home the element in a larger context.
    pub fn in_context(&self, ctx: FieldContext) -> Result<Self> {
        let joined = self.ctx.join(ctx)?;
        Ok(FieldElement {
            ctx: joined,
            r: self.r.clone(),
            s: self.s.clone(),
        })
    }

    fn d(&self) -> Rational {
        self.ctx
            .radicand
            .map(|d| Rational::from_integer(BigInt::from(d)))
            .unwrap_or_else(Rational::zero)
    }

    pub fn conjugate(&self) -> Self {
        FieldElement {
            ctx: self.ctx,
            r: self.r.clone(),
            s: -self.s.clone(),
        }
    }

    /// Field norm `r² − d·s²`.
    pub fn norm(&self) -> Rational {
        &self.r * &self.r - self.d() * &self.s * &self.s
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let ctx = self.ctx.join(other.ctx)?;
        Ok(FieldElement {
            ctx,
            r: &self.r + &other.r,
            s: add_sparse(&self.s, &other.s),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let ctx = self.ctx.join(other.ctx)?;
        let s = if other.s.is_zero() {
            self.s.clone()
        } else {
            &self.s - &other.s
        };
        Ok(FieldElement {
            ctx,
            r: &self.r - &other.r,
            s,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let ctx = self.ctx.join(other.ctx)?;
        // most entries in practice are rational; skip the zero surd terms
        let (r, s) = match (self.s.is_zero(), other.s.is_zero()) {
            (true, true) => (&self.r * &other.r, Rational::zero()),
            (true, false) => (&self.r * &other.r, &self.r * &other.s),
            (false, true) => (&self.r * &other.r, &self.s * &other.r),
            (false, false) => {
                let d = Rational::from_integer(BigInt::from(ctx.radicand.expect("quadratic")));
                (
                    &self.r * &other.r + d * &self.s * &other.s,
                    &self.r * &other.s + &self.s * &other.r,
                )
            }
        };
        Ok(FieldElement { ctx, r, s })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        let inv = other.inverse()?;
        self.try_mul(&inv)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.s.is_zero() {
            return Ok(FieldElement {
                ctx: self.ctx,
                r: self.r.recip(),
                s: Rational::zero(),
            });
        }
        // nonzero because d is not a rational square
        let n = self.norm();
        Ok(FieldElement {
            ctx: self.ctx,
            r: &self.r / &n,
            s: -&self.s / &n,
        })
    }

    pub fn scale(&self, k: &Rational) -> Self {
        FieldElement {
            ctx: self.ctx,
            r: &self.r * k,
            s: &self.s * k,
        }
    }

    /// Sign of the real value, decided exactly.
    pub fn signum(&self) -> i8 {
        fn sgn(q: &Rational) -> i8 {
            match q.numer().sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            }
        }
        let (sr, ss) = (sgn(&self.r), sgn(&self.s));
        if ss == 0 {
            return sr;
        }
        if sr == 0 || sr == ss {
            return ss;
        }
        let r2 = &self.r * &self.r;
        let s2d = &self.s * &self.s * self.d();
        if r2 > s2d {
            sr
        } else {
            ss
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    /// The nonnegative square root, if it lies in the same field.
    pub fn sqrt(&self) -> Option<Self> {
        if self.signum() < 0 {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.s.is_zero() {
            if let Some(q) = rational_sqrt(&self.r) {
                return Some(FieldElement {
                    ctx: self.ctx,
                    r: q,
                    s: Rational::zero(),
                });
            }
            // r = d·y²  =>  sqrt(r) = y·√d
            let d = self.d();
            if d.is_zero() {
                return None;
            }
            let y = rational_sqrt(&(&self.r / &d))?;
            return Some(FieldElement {
                ctx: self.ctx,
                r: Rational::zero(),
                s: y,
            });
        }
        // (x + y√d)² = r + s√d  =>  x² + d·y² = r, 2xy = s.
        // x² solves X² − rX + d·s²/4 = 0.
        let disc = self.norm();
        let root = rational_sqrt(&disc)?;
        let two = int(2);
        for x2 in [(&self.r + &root) / &two, (&self.r - &root) / &two] {
            if !x2.is_positive() {
                continue;
            }
            if let Some(x) = rational_sqrt(&x2) {
                let y = &self.s / (&two * &x);
                let cand = FieldElement {
                    ctx: self.ctx,
                    r: x,
                    s: y,
                };
                let cand = if cand.signum() < 0 { -cand } else { cand };
                return Some(cand);
            }
        }
        None
    }
}

fn add_sparse(a: &Rational, b: &Rational) -> Rational {
    if b.is_zero() {
        a.clone()
    } else if a.is_zero() {
        b.clone()
    } else {
        a + b
    }
}

/// Exact square root of a nonnegative rational, if it is a rational square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Primes dividing the reduced denominator.
pub fn prime_support(q: &Rational) -> BTreeSet<BigUint> {
    primes::prime_factors(q.denom().magnitude())
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            /// Panics if the operands live in different quadratic fields
            /// (or on division by zero); use the `try_` form to handle those.
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            ctx: self.ctx,
            r: -self.r,
            s: -self.s,
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -self.clone()
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        FieldElement::rational(r)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let diff = self.try_sub(other).ok()?;
        Some(diff.signum().cmp(&0))
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational(f, &self.r)?;
        if let (Some(d), false) = (self.ctx.radicand, self.s.is_zero()) {
            f.write_str(if self.s.is_negative() { "-" } else { "+" })?;
            write_rational(f, &self.s.abs())?;
            write!(f, "*sqrt({d})")?;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            Ok(())
        } else {
            Err(Error::parse("", self.pos, format!("expected `{lit}`")))
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse("", self.pos, "expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let negative = self.eat(b'-');
        let numer: BigInt = self.digits()?.parse().expect("digits");
        let denom: BigInt = if self.eat(b'/') {
            let at = self.pos;
            let d: BigInt = self.digits()?.parse().expect("digits");
            if d.is_zero() {
                return Err(Error::parse("", at, "zero denominator"));
            }
            d
        } else {
            BigInt::one()
        };
        let q = Rational::new(numer, denom);
        Ok(if negative { -q } else { q })
    }
}

impl FieldElement {
    /// Parse `RATIONAL [ ('+'|'-') RATIONAL '*' 'sqrt(' POSDIGITS ')' ]`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cur = Cursor {
            src: text.as_bytes(),
            pos: 0,
        };
        let r = cur.rational()?;
        let mut value = FieldElement::rational(r);
        if let Some(op @ (b'+' | b'-')) = cur.peek() {
            cur.pos += 1;
            let mut s = cur.rational()?;
            if op == b'-' {
                s = -s;
            }
            cur.expect("*sqrt(")?;
            let at = cur.pos;
            let d: u64 = cur
                .digits()?
                .parse()
                .map_err(|_| Error::parse("", at, "radicand out of range"))?;
            let ctx = FieldContext::quadratic(d)
                .map_err(|_| Error::parse("", at, format!("radicand {d} is not square-free >= 2")))?;
            cur.expect(")")?;
            value = FieldElement::new(ctx, value.r, s)?;
        }
        if cur.pos != text.len() {
            return Err(Error::parse("", cur.pos, "trailing characters"));
        }
        Ok(value)
    }

    /// Parse and coerce into `ctx`.
    pub fn parse_in(text: &str, ctx: FieldContext) -> Result<Self> {
        let v = Self::parse(text)?;
        v.in_context(ctx)
            .map_err(|_| Error::parse("", 0, format!("value {text} does not belong to {ctx}")))
    }
}

impl FromStr for FieldElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FieldElement::parse(s)
    }
}
