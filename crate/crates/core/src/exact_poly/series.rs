use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{int_list, IntPoly, PolyError, RatFunc};

/// Power series truncated after `t^order`; always holds `order + 1`
/// coefficients. Binary operations truncate to the smaller order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<BigInt>,
}

impl Series {
    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn new(mut coeffs: Vec<BigInt>, order: usize) -> Self {
        coeffs.resize(order + 1, BigInt::zero());
        Series { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64], order: usize) -> Self {
        Series::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Series::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Series::new(vec![BigInt::one()], order)
    }

    pub fn from_poly(p: &IntPoly, order: usize) -> Self {
        Series::new(p.coeffs().iter().take(order + 1).cloned().collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Series {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Series::new(self.coeffs[..=order].to_vec(), order)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first negative coefficient, if any.
    pub fn first_negative(&self) -> Option<usize> {
        self.coeffs.iter().position(Signed::is_negative)
    }

    pub fn add(&self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        Series::new((0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(), n)
    }

    pub fn sub(&self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        Series::new((0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(), n)
    }

    pub fn neg(&self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Series { coeffs: out }
    }

    /// Multiplicative inverse; the constant term must be `1` or `-1`.
    pub fn inverse(&self) -> Result<Series, PolyError> {
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(PolyError::NotInvertible(c0.to_string()));
        }
        let n = self.order();
        let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
        out.push(c0.clone());
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            // c0 is its own inverse
            out.push(-(acc * c0));
        }
        Ok(Series { coeffs: out })
    }

    /// Interpret the coefficients as a polynomial (dropping nothing).
    pub fn to_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }
}

/// Maclaurin coefficients of `r` through `t^order`, by the linear recurrence
/// of its denominator.
pub fn expand(r: &RatFunc, order: usize) -> Series {
    let den = r.den().coeffs();
    debug_assert!(den[0].is_one());
    let mut out: Vec<BigInt> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut s = r.num().coeff(k);
        for j in 1..den.len().min(k + 1) {
            if !den[j].is_zero() {
                s -= &den[j] * &out[k - j];
            }
        }
        out.push(s);
    }
    Series { coeffs: out }
}

impl RatFunc {
    pub fn expand(&self, order: usize) -> Series {
        expand(self, order)
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(t^{})", self.to_poly(), self.order() + 1)
    }
}

impl Serialize for Series {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        int_list::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let coeffs = int_list::deserialize(d)?;
        if coeffs.is_empty() {
            return Err(serde::de::Error::custom("a series needs at least one coefficient"));
        }
        let n = coeffs.len() - 1;
        Ok(Series::new(coeffs, n))
    }
}
