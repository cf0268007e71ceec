//! Exact arithmetic in a real quadratic field `ℚ(√d)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The number `a + b√d` with `d > 1` square-free and `a, b` rational.
///
/// Rationals are stored with `b = 0` and combine freely with any field.
#[derive(Clone)]
pub struct QuadraticNumber {
    d: i64,
    a: BigRational,
    b: BigRational,
}

impl PartialEq for QuadraticNumber {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.d == o.d)
    }
}

impl Eq for QuadraticNumber {}

impl std::hash::Hash for QuadraticNumber {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.a.hash(h);
        self.b.hash(h);
        if !self.b.is_zero() {
            self.d.hash(h);
        }
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Square-free part and square factor: `n = f² · d`.
pub fn squarefree_part(n: i64) -> (i64, i64) {
    assert!(n > 0);
    let mut d = n;
    let mut f = 1;
    let mut p = 2;
    while p * p <= d {
        while d % (p * p) == 0 {
            d /= p * p;
            f *= p;
        }
        p += 1;
    }
    (d, f)
}

impl QuadraticNumber {
    /// `a + b√d`; `d` must be square-free and greater than 1.
    pub fn new(a: BigRational, b: BigRational, d: i64) -> Self {
        assert!(d > 1 && squarefree_part(d).0 == d, "d must be square-free and > 1");
        QuadraticNumber { d, a, b }
    }

    /// A rational number.
    pub fn rational(a: BigRational) -> Self {
        QuadraticNumber {
            d: 0,
            a,
            b: BigRational::zero(),
        }
    }

    /// An integer.
    pub fn int(n: i64) -> Self {
        Self::rational(rat(n))
    }

    /// `p/q + (r/s)√d` from machine integers.
    pub fn from_parts(p: i64, q: i64, r: i64, s: i64, d: i64) -> Self {
        let a = BigRational::new(BigInt::from(p), BigInt::from(q));
        let b = BigRational::new(BigInt::from(r), BigInt::from(s));
        if b.is_zero() {
            Self::rational(a)
        } else {
            Self::new(a, b, d)
        }
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn golden() -> Self {
        Self::from_parts(1, 2, 1, 2, 5)
    }

    /// Rational part.
    pub fn a(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient of `√d`.
    pub fn b(&self) -> &BigRational {
        &self.b
    }

    /// The radicand, 0 for numbers created as rationals.
    pub fn d(&self) -> i64 {
        self.d
    }

    /// Whether the number is rational.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn field(&self, other: &Self) -> i64 {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, true) => self.d.max(other.d),
            (true, false) => other.d,
            (false, true) => self.d,
            (false, false) => {
                assert_eq!(self.d, other.d, "numbers from different quadratic fields");
                self.d
            }
        }
    }

    /// Galois conjugate `a − b√d`.
    pub fn conjugate(&self) -> Self {
        QuadraticNumber {
            d: self.d,
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// Field norm `a² − d b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * rat(self.d)
    }

    /// Trace `2a`.
    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    /// Whether the number is an algebraic integer (integral trace and norm).
    pub fn is_algebraic_integer(&self) -> bool {
        if self.b.is_zero() {
            self.a.is_integer()
        } else {
            self.trace().is_integer() && self.norm().is_integer()
        }
    }

    /// Exact sign: −1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * rat(self.d);
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    /// Absolute value.
    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Whether the number is zero.
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Multiplicative inverse.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::HypothesisViolated("division by zero".into()));
        }
        let n = self.norm();
        Ok(QuadraticNumber {
            d: self.d,
            a: &self.a / &n,
            b: -&self.b / &n,
        })
    }

    /// Integer power.
    pub fn pow(&self, e: u32) -> Self {
        let mut r = QuadraticNumber::int(1);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Floating point approximation.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d.max(0) as f64).sqrt()
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        let mut n = BigInt::from(self.to_f64().floor() as i64);
        loop {
            let lo = QuadraticNumber::rational(BigRational::from_integer(n.clone()));
            if lo > *self {
                n -= 1;
                continue;
            }
            let hi = QuadraticNumber::rational(BigRational::from_integer(&n + 1));
            if hi <= *self {
                n += 1;
                continue;
            }
            return n;
        }
    }

    /// Parses `a`, `a+b*sqrt(d)`, `a-b*sqrt(d)`, `b*sqrt(d)`, `sqrt(d)`,
    /// with `a`, `b` integers or fractions `p/q`, or the name `phi`.
    pub fn parse(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "phi" {
            return Ok(Self::golden());
        }
        let bad = || Error::parse(0, format!("cannot read quadratic number {s:?}"));
        let parse_rat = |t: &str| -> Result<BigRational> {
            let t = if t.is_empty() || t == "+" { "1" } else if t == "-" { "-1" } else { t };
            let (p, q) = match t.split_once('/') {
                Some((p, q)) => (p, q),
                None => (t, "1"),
            };
            let p: BigInt = p.trim_start_matches('+').parse().map_err(|_| bad())?;
            let q: BigInt = q.parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        };
        let Some(pos) = s.find("sqrt(") else {
            return Ok(Self::rational(parse_rat(&s)?));
        };
        let close = s[pos..].find(')').ok_or_else(bad)? + pos;
        let d: i64 = s[pos + 5..close].parse().map_err(|_| bad())?;
        if close + 1 != s.len() || d <= 1 {
            return Err(bad());
        }
        let (d, f) = squarefree_part(d);
        if d == 1 {
            return Err(bad());
        }
        let head = &s[..pos];
        let head = head.strip_suffix('*').unwrap_or(head);
        // Split the head into rational part and coefficient at the last sign
        // that is not part of a leading sign.
        let split = head
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .next_back();
        let (a, b) = match split {
            Some(i) => (parse_rat(&head[..i])?, parse_rat(&head[i..])?),
            None => (BigRational::zero(), parse_rat(head)?),
        };
        Ok(Self::new(a, b * rat(f), d))
    }
}

fn sign(r: &BigRational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Debug for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.a, -self.b.clone(), self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, o: &QuadraticNumber) -> QuadraticNumber {
        QuadraticNumber {
            d: self.field(o),
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl<'a> Sub<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, o: &QuadraticNumber) -> QuadraticNumber {
        QuadraticNumber {
            d: self.field(o),
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl<'a> Mul<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, o: &QuadraticNumber) -> QuadraticNumber {
        let d = self.field(o);
        QuadraticNumber {
            d,
            a: &self.a * &o.a + &self.b * &o.b * rat(d),
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl<'a> Div<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &QuadraticNumber) -> QuadraticNumber {
        self * &o.inverse().expect("division by zero")
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber {
            d: self.d,
            a: -self.a,
            b: -self.b,
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $m(self, o: QuadraticNumber) -> QuadraticNumber {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl From<i64> for QuadraticNumber {
    fn from(n: i64) -> Self {
        QuadraticNumber::int(n)
    }
}

impl QuadraticNumber {
    /// One.
    pub fn one() -> Self {
        QuadraticNumber::rational(BigRational::one())
    }
}
