//! Homotopy ranks of Kac-Moody groups from flag-manifold Poincaré series,
//! by the Chow-ring route and by the numerator/`Q` route.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cartan::{
    classify, coxeter_of, is_symmetrizable, overall_class, CartanMatrix, CoxeterMatrix, TypeClass,
};
use crate::exact_poly::{
    bracket, product_decompose, IntPoly, PolyError, ProductForm, RatFunc, Series,
};
use crate::weyl_series::{finite_subsets, poincare_flag, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("input violates the rank formula hypotheses: {0}")]
    Hypotheses(String),
    #[error("rank n = {0} is too small (need n >= 2)")]
    RankTooSmall(usize),
    #[error("M * den(P) / num(P) is not a polynomial")]
    QNotPolynomial,
}

/// `C(t) = P(t) (1 - t)^n / (1 - t^2)^eps`.
pub fn chow_hilbert(p: &RatFunc, n: usize, epsilon: bool) -> Result<RatFunc, PolyError> {
    let lower = IntPoly::one_minus_power(1).pow(n as u32);
    let mut c = p.mul_poly(&lower)?;
    if epsilon {
        c = c.div_poly(&IntPoly::one_minus_power(2))?;
    }
    Ok(c)
}

/// Exponents `i_{2k}` with `C = prod_k (1 - t^k)^{-i_{2k}}`. Errors when
/// `i_2 != 0` or some exponent is negative.
pub fn even_ranks_from_chow(c: &RatFunc, order: usize) -> Result<BTreeMap<usize, BigInt>, RankError> {
    let e = product_decompose(&c.expand(order))?;
    if !e.exponent(1).is_zero() {
        return Err(RankError::Hypotheses(format!("i_2 = {} is nonzero", e.exponent(1))));
    }
    if let Some((k, v)) = e.iter().find(|(_, v)| v.is_negative()) {
        return Err(RankError::Hypotheses(format!("i_{} = {v} is negative", 2 * k)));
    }
    Ok(e.to_map())
}

/// `prod [t_i]` and `Q` with `P = prod [t_i] / Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QFactorization {
    /// Descending.
    pub brackets: Vec<usize>,
    /// What is left of the lcm after peeling brackets; `1` when fully peeled.
    pub remainder: IntPoly,
    pub q: IntPoly,
}

/// Lcm of the Poincaré polynomials of all finite-type subsets.
pub fn finite_lcm(x: &CoxeterMatrix) -> Result<IntPoly, RankError> {
    let mut seen = std::collections::BTreeSet::new();
    let mut m = IntPoly::one();
    for (_, degrees) in finite_subsets(x)? {
        if seen.insert(degrees.clone()) {
            let p = degrees
                .iter()
                .fold(IntPoly::one(), |acc, &d| &acc * &bracket(d).expect("positive degree"));
            m = m.lcm(&p)?;
        }
    }
    Ok(m)
}

/// Greedy peel of `[d]` factors for `d` descending.
pub fn peel_brackets(m: &IntPoly) -> (Vec<usize>, IntPoly) {
    let mut rest = m.clone();
    let mut out = Vec::new();
    let mut d = rest.degree().unwrap_or(0) + 1;
    while d >= 2 {
        let b = bracket(d).expect("d >= 2");
        match rest.div_exact(&b) {
            Some(q) => {
                rest = q;
                out.push(d);
                d = d.min(rest.degree().unwrap_or(0) + 1);
            }
            None => d -= 1,
        }
    }
    (out, rest)
}

pub fn q_factorization(p: &RatFunc, x: &CoxeterMatrix) -> Result<QFactorization, RankError> {
    let m = finite_lcm(x)?;
    let (brackets, remainder) = peel_brackets(&m);
    let q = (&m * p.den()).div_exact(p.num()).ok_or(RankError::QNotPolynomial)?;
    Ok(QFactorization { brackets, remainder, q })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub class: String,
    pub epsilon: u8,
    pub p: RatFunc,
    pub numerator_brackets: Vec<usize>,
    pub bracket_remainder: IntPoly,
    pub q: IntPoly,
    /// Exponents of `1/Q`.
    pub j: ProductForm,
    /// `k -> i_{2k}` from the Chow-ring route.
    #[serde(with = "crate::exact_poly::int_map")]
    pub i_even: BTreeMap<usize, BigInt>,
    /// `k -> i_{2k}` from the `Q` route.
    #[serde(with = "crate::exact_poly::int_map")]
    pub i_even_from_q: BTreeMap<usize, BigInt>,
    /// `k -> i_{2k-1}`.
    #[serde(with = "crate::exact_poly::int_map")]
    pub i_odd: BTreeMap<usize, BigInt>,
    pub route_consistent: bool,
    /// Empty iff the input is indecomposable, indefinite, and every derived
    /// quantity is in range.
    pub warnings: Vec<String>,
}

impl RankReport {
    pub fn within_hypotheses(&self) -> bool {
        self.warnings.is_empty()
    }

    /// `i_d` for any degree `d >= 1`.
    pub fn homotopy_rank(&self, d: usize) -> BigInt {
        let map = if d % 2 == 0 { &self.i_even } else { &self.i_odd };
        map.get(&d.div_ceil(2)).cloned().unwrap_or_default()
    }

    pub fn l(&self, k: usize) -> usize {
        self.numerator_brackets.iter().filter(|&&t| t == k).count()
    }
}

pub fn ranks(c: &CartanMatrix, order: usize) -> Result<RankReport, RankError> {
    let n = c.rank();
    let x = coxeter_of(c);
    let eps = is_symmetrizable(c);
    let parts = classify(c);
    let class = overall_class(&parts);
    let mut warnings = Vec::new();
    if parts.len() > 1 {
        warnings.push(format!("decomposable ({} components)", parts.len()));
    }
    if class != TypeClass::Indefinite || parts.len() > 1 {
        warnings.push(format!("type is {}, not indecomposable indefinite", class.label()));
    }

    let p = poincare_flag(&x)?;
    let chow = chow_hilbert(&p, n, eps)?;
    let chow_series = chow.expand(order);
    if let Some(d) = chow_series.first_negative() {
        warnings.push(format!("Chow series has a negative coefficient in degree {d}"));
    }
    let route_a = product_decompose(&chow_series)?;

    let fact = q_factorization(&p, &x)?;
    if !fact.remainder.is_one() {
        warnings.push(format!("lcm is not a product of brackets (remainder {})", fact.remainder));
    }
    let j = product_decompose(&Series::from_poly(&fact.q, order).inverse()?)?;
    let l = |k: usize| BigInt::from(fact.brackets.iter().filter(|&&t| t == k).count());
    let r = fact.brackets.len() as i64;
    let mut route_b = BTreeMap::new();
    for k in 1..=order {
        let mut v = j.exponent(k) - l(k);
        if k == 1 {
            v -= BigInt::from(n as i64 - r);
        }
        if k == 2 && eps {
            v += 1;
        }
        route_b.insert(k, v);
    }
    let i_even = route_a.to_map();
    let route_consistent = (1..=order).all(|k| route_a.exponent(k) == route_b[&k]);
    if !route_consistent {
        warnings.push("the two rank routes disagree".into());
    }
    if let Some(v) = i_even.get(&1).filter(|v| !v.is_zero()) {
        warnings.push(format!("i_2 = {v} is nonzero"));
    }
    if let Some((k, v)) = i_even.iter().find(|(_, v)| v.is_negative()) {
        warnings.push(format!("i_{} = {v} is negative", 2 * k));
    }
    let i_odd = (1..=order)
        .map(|k| (k, BigInt::from(u8::from(k == 2 && eps))))
        .collect();
    Ok(RankReport {
        rank: n,
        class: class.label().into(),
        epsilon: eps.into(),
        p,
        numerator_brackets: fact.brackets,
        bracket_remainder: fact.remainder,
        q: fact.q,
        j,
        i_even,
        i_even_from_q: route_b,
        i_odd,
        route_consistent,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeCoxeter {
    /// `(1 + t) / (1 - (n - 1) t)`.
    pub h: RatFunc,
    /// `k -> a_k` for `2 <= k <= order`.
    #[serde(with = "crate::exact_poly::int_map")]
    pub a: BTreeMap<usize, BigInt>,
}

/// `a_k = (n-1) C(k+n-3, k-1) - C(k+n-2, k)`.
pub fn free_coxeter_a(n: usize, k: usize) -> BigInt {
    let big = |v: usize| BigInt::from(v);
    big(n - 1) * binomial(big(k + n - 3), big(k - 1)) - binomial(big(k + n - 2), big(k))
}

/// Closed forms for the rank-`n` Coxeter group with every `m_ij` infinite.
/// Checks `1 / (1 - sum a_k t^k) = (1 - t)^{n-1} / (1 - (n-1) t)`.
pub fn free_coxeter(n: usize, order: usize) -> Result<FreeCoxeter, RankError> {
    if n < 2 {
        return Err(RankError::RankTooSmall(n));
    }
    let h = RatFunc::new(
        IntPoly::from_i64s(&[1, 1]),
        IntPoly::from_i64s(&[1, 1 - n as i64]),
    )?;
    let a: BTreeMap<usize, BigInt> = (2..=order).map(|k| (k, free_coxeter_a(n, k))).collect();
    let mut lhs = vec![BigInt::zero(); order + 1];
    lhs[0] = 1.into();
    for (&k, v) in &a {
        lhs[k] = -v;
    }
    let lhs = Series::new(lhs, order).inverse()?;
    let rhs = RatFunc::new(
        IntPoly::one_minus_power(1).pow(n as u32 - 1),
        IntPoly::from_i64s(&[1, 1 - n as i64]),
    )?
    .expand(order);
    assert_eq!(lhs, rhs, "closed-form identity fails for n = {n}");
    Ok(FreeCoxeter { h, a })
}

/// `a_k > 0` for `2 <= k <= order`.
pub fn free_coxeter_positive(n: usize, order: usize) -> Result<bool, RankError> {
    if n < 2 {
        return Err(RankError::RankTooSmall(n));
    }
    Ok((2..=order).all(|k| free_coxeter_a(n, k).is_positive()))
}
