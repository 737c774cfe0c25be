use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::int_list::OneBig;
use super::{PolyError, Series};

/// Exponents `e_k` (`1 <= k <= order`) of the product
/// `prod_k (1 - t^k)^(-e_k)`, truncated after `t^order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductForm {
    exponents: Vec<BigInt>,
}

impl ProductForm {
    pub fn new(order: usize) -> Self {
        ProductForm {
            exponents: vec![BigInt::zero(); order],
        }
    }

    pub fn from_map(order: usize, map: &BTreeMap<usize, BigInt>) -> Self {
        let mut p = ProductForm::new(order);
        for (&k, e) in map {
            if (1..=order).contains(&k) {
                p.exponents[k - 1] = e.clone();
            }
        }
        p
    }

    pub fn from_i64s(exponents: &[i64]) -> Self {
        ProductForm {
            exponents: exponents.iter().map(|&e| BigInt::from(e)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.exponents.len()
    }

    /// `e_k`; zero outside `1..=order`.
    pub fn exponent(&self, k: usize) -> BigInt {
        if k == 0 {
            return BigInt::zero();
        }
        self.exponents.get(k - 1).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, k: usize, e: BigInt) {
        self.exponents[k - 1] = e;
    }

    /// `(k, e_k)` for `k = 1..=order`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.exponents.iter().enumerate().map(|(i, e)| (i + 1, e))
    }

    pub fn to_map(&self) -> BTreeMap<usize, BigInt> {
        self.iter().map(|(k, e)| (k, e.clone())).collect()
    }
}

impl Serialize for ProductForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.order()))?;
        for (k, e) in self.iter() {
            m.serialize_entry(&k.to_string(), &super::int_list::Single(e))?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for ProductForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: BTreeMap<usize, OneBig> = BTreeMap::deserialize(d)?;
        let order = raw.keys().copied().max().unwrap_or(0);
        if raw.contains_key(&0) {
            return Err(serde::de::Error::custom("product exponents start at k = 1"));
        }
        let map = raw.into_iter().map(|(k, v)| (k, v.0)).collect();
        Ok(ProductForm::from_map(order, &map))
    }
}

/// Möbius function.
pub(crate) fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// The unique exponents with `prod_{k<=N} (1 - t^k)^(-e_k) = f mod t^(N+1)`.
///
/// With `b_n = n [t^n] log f`, Newton's identity `n f_n = sum_{k=1}^{n} b_k f_{n-k}`
/// determines `b` over the integers, and `n e_n = sum_{d|n} mu(n/d) b_d`.
pub fn product_decompose(f: &Series) -> Result<ProductForm, PolyError> {
    let c = f.coeffs();
    if !c[0].is_one() {
        return Err(PolyError::ConstantTermNotOne(c[0].to_string()));
    }
    let n_max = f.order();
    let mut b: Vec<BigInt> = vec![BigInt::zero(); n_max + 1];
    for n in 1..=n_max {
        let mut acc = BigInt::from(n) * &c[n];
        for k in 1..n {
            if !c[n - k].is_zero() {
                acc -= &b[k] * &c[n - k];
            }
        }
        b[n] = acc;
    }
    let mut out = ProductForm::new(n_max);
    for n in 1..=n_max {
        let mut acc = BigInt::zero();
        for d in 1..=n {
            if n % d == 0 {
                match mobius(n / d) {
                    0 => {}
                    1 => acc += &b[d],
                    _ => acc -= &b[d],
                }
            }
        }
        let (q, r) = acc.div_rem(&BigInt::from(n));
        if !r.is_zero() {
            return Err(PolyError::NonIntegralExponent(n));
        }
        out.exponents[n - 1] = q;
    }
    Ok(out)
}

/// Expand `prod_k (1 - t^k)^(-e_k)` through `t^order`.
pub fn product_compose(p: &ProductForm) -> Series {
    compose_to(p, p.order())
}

/// Like [`product_compose`] with an explicit truncation order.
pub fn compose_to(p: &ProductForm, order: usize) -> Series {
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); order + 1];
    acc[0] = BigInt::one();
    for (k, e) in p.iter() {
        if e.is_zero() || k > order {
            continue;
        }
        // binomial series of (1 - x)^(-e), x = t^k
        let terms = order / k;
        let mut binom = Vec::with_capacity(terms + 1);
        binom.push(BigInt::one());
        for j in 1..=terms {
            let next = &binom[j - 1] * (e + BigInt::from(j - 1));
            binom.push(next / BigInt::from(j));
        }
        for i in (0..=order).rev() {
            let mut s = acc[i].clone();
            for (j, c) in binom.iter().enumerate().skip(1) {
                let Some(src) = i.checked_sub(j * k) else { break };
                if !acc[src].is_zero() {
                    s += c * &acc[src];
                }
            }
            acc[i] = s;
        }
    }
    Series::new(acc, order)
}
