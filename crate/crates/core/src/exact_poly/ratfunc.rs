use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{IntPoly, PolyError};

/// Reduced rational function `num / den` with `gcd(num, den) = 1` and
/// `den(0) = 1`. Every value of this type is in canonical form, so structural
/// equality is equality of rational functions.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RatFunc {
    /// Canonicalize `num / den`.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let c = den.constant_term();
        if c.is_zero() {
            return Err(PolyError::PoleAtZero);
        }
        if c.is_negative() {
            num = -num;
            den = -den;
        }
        if !den.constant_term().is_one() {
            return Err(PolyError::NonUnitDenominator(den.constant_term().to_string()));
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_i64s(num: &[i64], den: &[i64]) -> Result<Self, PolyError> {
        RatFunc::new(IntPoly::from_i64s(num), IntPoly::from_i64s(den))
    }

    pub fn zero() -> Self {
        RatFunc {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(IntPoly::one())
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFunc {
            num: p,
            den: IntPoly::one(),
        }
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some(p)` if the denominator is 1.
    pub fn as_poly(&self) -> Option<&IntPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn recip(&self) -> Result<RatFunc, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroRatFunc);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn add(&self, rhs: &RatFunc) -> Result<RatFunc, PolyError> {
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn sub(&self, rhs: &RatFunc) -> Result<RatFunc, PolyError> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &RatFunc) -> Result<RatFunc, PolyError> {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<RatFunc, PolyError> {
        if rhs.is_zero() {
            return Err(PolyError::ZeroRatFunc);
        }
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn mul_poly(&self, p: &IntPoly) -> Result<RatFunc, PolyError> {
        RatFunc::new(&self.num * p, self.den.clone())
    }

    pub fn div_poly(&self, p: &IntPoly) -> Result<RatFunc, PolyError> {
        RatFunc::new(self.num.clone(), &self.den * p)
    }

    pub fn apply(&self, op: RatOp, rhs: &RatFunc) -> Result<RatFunc, PolyError> {
        match op {
            RatOp::Add => self.add(rhs),
            RatOp::Sub => self.sub(rhs),
            RatOp::Mul => self.mul(rhs),
            RatOp::Div => self.div(rhs),
        }
    }

    /// Numerator degree minus denominator degree (`None` for zero).
    pub fn degree_difference(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap_or(0) as i64)
    }
}

/// `lhs op rhs` in canonical form.
pub fn ratfunc_arith(lhs: &RatFunc, rhs: &RatFunc, op: RatOp) -> Result<RatFunc, PolyError> {
    lhs.apply(op, rhs)
}

/// The substitution `t -> 1/t`, cleared of denominators by
/// `t^max(deg num, deg den)` and canonicalized.
pub fn reverse_variable(r: &RatFunc) -> Result<RatFunc, PolyError> {
    if r.is_zero() {
        return Ok(RatFunc::zero());
    }
    let d = r
        .num
        .degree()
        .unwrap_or(0)
        .max(r.den.degree().unwrap_or(0));
    RatFunc::new(r.num.reversed(d), r.den.reversed(d))
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[derive(Deserialize)]
struct RawRatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawRatFunc::deserialize(d)?;
        RatFunc::new(raw.num, raw.den).map_err(serde::de::Error::custom)
    }
}

impl From<BigInt> for RatFunc {
    fn from(c: BigInt) -> Self {
        RatFunc::from_poly(IntPoly::constant(c))
    }
}
