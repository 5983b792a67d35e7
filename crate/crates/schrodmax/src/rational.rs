//! Exact rational arithmetic for the exponent calculators.
//!
//! Values are reduced fractions over `i128`. Every operation checks for
//! overflow: the arithmetic operators panic with a message rather than
//! wrap, and `checked_*` variants return errors for callers that want to
//! handle it. Comparison never overflows; when cross-multiplication would,
//! it falls back to a continued-fraction walk.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

pub const ZERO: Rational = Rational { num: 0, den: 1 };
pub const ONE: Rational = Rational { num: 1, den: 1 };

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid("rational denominator must be nonzero"));
        }
        if num == i128::MIN || den == i128::MIN {
            return Err(Error::invalid("rational magnitude out of range"));
        }
        let g = gcd(num, den);
        let sign = if den < 0 { -1 } else { 1 };
        if g == 0 {
            return Ok(ZERO);
        }
        Ok(Rational { num: sign * num / g, den: sign * den / g })
    }

    pub fn from_int(k: i64) -> Self {
        Rational { num: k as i128, den: 1 }
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        let g = gcd(self.den, rhs.den);
        let lhs_scale = rhs.den / g;
        let rhs_scale = self.den / g;
        let num = self
            .num
            .checked_mul(lhs_scale)
            .and_then(|a| rhs.num.checked_mul(rhs_scale).and_then(|b| a.checked_add(b)))
            .ok_or_else(|| Error::invalid("rational addition overflowed"))?;
        let den = self
            .den
            .checked_mul(lhs_scale)
            .ok_or_else(|| Error::invalid("rational addition overflowed"))?;
        Rational::new(num, den)
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        self.checked_add(Rational { num: -rhs.num, den: rhs.den })
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        // cross-reduce first so intermediates stay small
        let g1 = gcd(self.num, rhs.den);
        let g2 = gcd(rhs.num, self.den);
        let num = (self.num / g1)
            .checked_mul(rhs.num / g2)
            .ok_or_else(|| Error::invalid("rational multiplication overflowed"))?;
        let den = (self.den / g2)
            .checked_mul(rhs.den / g1)
            .ok_or_else(|| Error::invalid("rational multiplication overflowed"))?;
        Rational::new(num, den)
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        if rhs.num == 0 {
            return Err(Error::invalid("rational division by zero"));
        }
        self.checked_mul(Rational::new(rhs.den, rhs.num)?)
    }

    pub fn recip(self) -> Result<Self> {
        ONE.checked_div(self)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Decimal rendering with `digits` places, rounded half away from zero
    /// in exact integer arithmetic.
    pub fn decimal(&self, digits: u32) -> String {
        let mut scale: i128 = 1;
        for _ in 0..digits {
            scale = scale.checked_mul(10).expect("decimal scale overflowed");
        }
        let scaled = self
            .num
            .checked_mul(scale)
            .expect("decimal rendering overflowed");
        let mut q = scaled / self.den;
        let r = scaled % self.den;
        if 2 * r.abs() >= self.den {
            q += if self.num < 0 { -1 } else { 1 };
        }
        let sign = if q < 0 { "-" } else { "" };
        let q = q.abs();
        let int_part = q / scale;
        let frac_part = q % scale;
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part:0width$}", width = digits as usize)
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Through `pad` so width and alignment flags apply to the whole value.
        if self.den == 1 {
            f.pad(&self.num.to_string())
        } else {
            f.pad(&format!("{}/{}", self.num, self.den))
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |part: &str| -> Result<i128> {
            part.trim()
                .parse::<i128>()
                .map_err(|_| Error::invalid(format!("cannot parse rational component {part:?}")))
        };
        match s.split_once('/') {
            Some((num, den)) => Rational::new(parse(num)?, parse(den)?),
            None => Ok(Rational { num: parse(s)?, den: 1 }),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (
            self.num.checked_mul(other.den),
            other.num.checked_mul(self.den),
        ) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => cmp_continued_fraction(self.num, self.den, other.num, other.den),
        }
    }
}

/// Compare a/b with c/d (b, d > 0) without multiplying: walk the shared
/// continued-fraction expansion until the integer parts disagree.
fn cmp_continued_fraction(mut an: i128, mut ad: i128, mut bn: i128, mut bd: i128) -> Ordering {
    loop {
        let qa = an.div_euclid(ad);
        let qb = bn.div_euclid(bd);
        if qa != qb {
            return qa.cmp(&qb);
        }
        let ra = an - qa * ad;
        let rb = bn - qb * bd;
        match (ra == 0, rb == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        // fractional parts ra/ad and rb/bd compare oppositely to their
        // reciprocals
        (an, ad, bn, bd) = (bd, rb, ad, ra);
    }
}

macro_rules! op_impl {
    ($trait:ident, $method:ident, $checked:ident, $what:literal) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!(concat!("rational ", $what, ": {}"), e))
            }
        }
    };
}

op_impl!(Add, add, checked_add, "addition failed");
op_impl!(Sub, sub, checked_sub, "subtraction failed");
op_impl!(Mul, mul, checked_mul, "multiplication failed");
op_impl!(Div, div, checked_div, "division failed");

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational { num: -self.num, den: self.den }
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
