//! Poincaré series of Weyl groups and their flag manifolds, by the finite
//! parabolic alternating sum, with a breadth-first oracle over the integer
//! reflection representation.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cartan::{finite_degrees, finite_components, CartanError, CartanMatrix, CoxeterMatrix};
use crate::exact_poly::{bracket, reverse_variable, IntPoly, PolyError, RatFunc, Series};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("the Weyl group is finite; the residual identity needs an infinite group")]
    FiniteGroup,
    #[error("Coxeter rank {0} exceeds the supported 63")]
    RankTooLarge(usize),
}

/// `counts[l]` is the number of elements of length `l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthCounts {
    pub counts: Vec<u64>,
}

impl GrowthCounts {
    pub fn max_length(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BfsError {
    #[error("state budget {budget} exceeded while building length {}; counts through length {} are complete", .partial.counts.len(), .partial.max_length())]
    BudgetExceeded { budget: usize, partial: GrowthCounts },
}

/// `prod_i [d_i]` over the degrees of every component.
pub fn poincare_finite(x: &CoxeterMatrix) -> Result<IntPoly, SeriesError> {
    let degrees = finite_degrees(x)?;
    Ok(degrees_poly(&degrees))
}

fn degrees_poly(degrees: &[usize]) -> IntPoly {
    degrees
        .iter()
        .fold(IntPoly::one(), |acc, &d| &acc * &bracket(d).expect("degrees are positive"))
}

/// Every finite-type subset (as a bitmask) with its sorted degree multiset.
/// Finite subsets are closed under taking subsets, so the search only
/// extends finite sets.
pub fn finite_subsets(x: &CoxeterMatrix) -> Result<Vec<(u64, Vec<usize>)>, SeriesError> {
    let n = x.rank();
    if n > 63 {
        return Err(SeriesError::RankTooLarge(n));
    }
    let mut out = vec![(0u64, Vec::new())];
    let mut frontier = vec![0u64];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &mask in &frontier {
            let top = 64 - mask.leading_zeros() as usize;
            for v in top..n {
                let m = mask | 1 << v;
                if let Ok(d) = finite_degrees(&x.restrict_mask(m)) {
                    out.push((m, d));
                    next.push(m);
                }
            }
        }
        frontier = next;
    }
    Ok(out)
}

/// `R(t) = sum over finite I of (-1)^|I| / P_I(t)`.
pub fn alternating_sum(x: &CoxeterMatrix) -> Result<RatFunc, SeriesError> {
    let mut weights: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    for (mask, degrees) in finite_subsets(x)? {
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        *weights.entry(degrees).or_default() += sign;
    }
    weights.retain(|_, w| *w != 0);
    let polys: Vec<(IntPoly, i64)> = weights.iter().map(|(d, &w)| (degrees_poly(d), w)).collect();
    let lcm = polys
        .iter()
        .try_fold(IntPoly::one(), |acc, (p, _)| acc.lcm(p))?;
    let mut num = IntPoly::zero();
    for (p, w) in &polys {
        let cofactor = lcm.div_exact(p).expect("lcm is a multiple");
        num = &num + &cofactor.scale(&BigInt::from(*w));
    }
    Ok(RatFunc::new(num, lcm)?)
}

/// Poincaré series `sum_w t^l(w)` of the flag manifold, as a reduced
/// rational function. Infinite components use `1/P(1/t) = R(t)`.
pub fn poincare_flag(x: &CoxeterMatrix) -> Result<RatFunc, SeriesError> {
    let mut acc = RatFunc::one();
    for comp in x.components() {
        let sub = x.restrict(&comp);
        let p = match poincare_finite(&sub) {
            Ok(p) => RatFunc::from_poly(p),
            Err(SeriesError::Cartan(CartanError::NotFinite)) => flag_infinite(&sub)?,
            Err(e) => return Err(e),
        };
        acc = acc.mul(&p)?;
    }
    Ok(acc)
}

fn flag_infinite(x: &CoxeterMatrix) -> Result<RatFunc, SeriesError> {
    let r = alternating_sum(x)?;
    assert!(!r.is_zero(), "alternating sum vanished for an infinite group");
    Ok(reverse_variable(&r)?.recip()?)
}

/// Memo of flag series keyed by relabeling-invariant Coxeter data.
#[derive(Debug, Default)]
pub struct FlagMemo {
    table: HashMap<Vec<u8>, RatFunc>,
}

impl FlagMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, x: &CoxeterMatrix) -> Result<RatFunc, SeriesError> {
        let key = x.canonical_key();
        if let Some(r) = self.table.get(&key) {
            return Ok(r.clone());
        }
        let r = poincare_flag(x)?;
        self.table.insert(key, r.clone());
        Ok(r)
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// `sum over all I of (-1)^|I| P/P_I`, expanded through `order`. Vanishes
/// identically for an infinite group.
pub fn steinberg_residual(x: &CoxeterMatrix, order: usize) -> Result<Series, SeriesError> {
    let mut memo = FlagMemo::new();
    steinberg_residual_with(x, order, &mut memo)
}

pub fn steinberg_residual_with(
    x: &CoxeterMatrix,
    order: usize,
    memo: &mut FlagMemo,
) -> Result<Series, SeriesError> {
    let n = x.rank();
    if n > 63 {
        return Err(SeriesError::RankTooLarge(n));
    }
    if finite_components(x).is_some() {
        return Err(SeriesError::FiniteGroup);
    }
    let p = memo.get(x)?;
    let mut total = Series::zero(order);
    for mask in 0..(1u64 << n) {
        let pi = memo.get(&x.restrict_mask(mask))?;
        let term = p.div(&pi)?.expand(order);
        total = if mask.count_ones() % 2 == 0 {
            total.add(&term)
        } else {
            total.sub(&term)
        };
    }
    Ok(total)
}

/// Matrix entry type for the oracle: `i64` with overflow detection, then
/// `BigInt` as the fallback.
trait Entry: Clone + Eq + Hash + Send + Sync {
    fn from_i64(v: i64) -> Self;
    /// `self - c * rhs`, or `None` on overflow.
    fn sub_mul(&self, c: i64, rhs: &Self) -> Option<Self>;
}

impl Entry for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }

    fn sub_mul(&self, c: i64, rhs: &Self) -> Option<Self> {
        self.checked_sub(c.checked_mul(*rhs)?)
    }
}

impl Entry for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn sub_mul(&self, c: i64, rhs: &Self) -> Option<Self> {
        Some(self - rhs * c)
    }
}

struct Overflow;

/// Count Weyl group elements by length through `max_length`, by BFS on the
/// Cayley graph. Elements are integer matrices on the simple-root basis,
/// with `s_i(alpha_j) = alpha_j - a_ij alpha_i`.
pub fn bfs_growth(c: &CartanMatrix, max_length: usize, budget: usize) -> Result<GrowthCounts, BfsError> {
    match bfs_impl::<i64>(c, max_length, budget) {
        Ok(r) => r,
        Err(Overflow) => match bfs_impl::<BigInt>(c, max_length, budget) {
            Ok(r) => r,
            Err(Overflow) => unreachable!("big integers do not overflow"),
        },
    }
}

pub const DEFAULT_BUDGET: usize = 5_000_000;

fn bfs_impl<T: Entry>(
    c: &CartanMatrix,
    max_length: usize,
    budget: usize,
) -> Result<Result<GrowthCounts, BfsError>, Overflow> {
    let n = c.rank();
    let identity: Vec<T> = (0..n * n)
        .map(|k| T::from_i64(i64::from(k / n == k % n)))
        .collect();
    let mut counts = vec![1u64];
    let mut prev: HashSet<Vec<T>> = HashSet::new();
    let mut cur: HashSet<Vec<T>> = HashSet::from([identity]);
    for _ in 0..max_length {
        let items: Vec<&Vec<T>> = cur.iter().collect();
        let images: Vec<Vec<Vec<T>>> = items
            .par_iter()
            .map(|w| (0..n).map(|i| reflect(c, i, w)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or(Overflow)?;
        let mut next: HashSet<Vec<T>> = HashSet::new();
        for v in images.into_iter().flatten() {
            // lengths change by exactly one, so a neighbor is either in the
            // previous layer or new
            if !prev.contains(&v) {
                next.insert(v);
            }
        }
        if prev.len() + cur.len() + next.len() > budget {
            return Ok(Err(BfsError::BudgetExceeded {
                budget,
                partial: GrowthCounts { counts },
            }));
        }
        counts.push(next.len() as u64);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(Ok(GrowthCounts { counts }))
}

/// `s_i * w`: only row `i` changes, `w'_ik = w_ik - sum_j a_ij w_jk`.
fn reflect<T: Entry>(c: &CartanMatrix, i: usize, w: &[T]) -> Option<Vec<T>> {
    let n = c.rank();
    let mut out = w.to_vec();
    for k in 0..n {
        let mut v = w[i * n + k].clone();
        for j in 0..n {
            let a = c.entry(i, j);
            if a != 0 {
                v = v.sub_mul(a, &w[j * n + k])?;
            }
        }
        out[i * n + k] = v;
    }
    Some(out)
}

/// Coefficients of a series as `u64` where possible (for comparison with
/// growth counts).
pub fn series_counts(s: &Series) -> Option<Vec<u64>> {
    s.coeffs().iter().map(ToPrimitive::to_u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{canonical_cartan, validate, EdgeOrder, Family, FiniteType};

    fn edge2(o: EdgeOrder) -> CoxeterMatrix {
        CoxeterMatrix::from_edges(2, &[(0, 1, o)]).unwrap()
    }

    fn triangle(a: EdgeOrder, b: EdgeOrder, c: EdgeOrder) -> CoxeterMatrix {
        CoxeterMatrix::from_edges(3, &[(0, 1, a), (0, 2, b), (1, 2, c)]).unwrap()
    }

    #[test]
    fn finite_polynomials() {
        let a3 = FiniteType { family: Family::A, rank: 3 }.diagram();
        let p = poincare_finite(&a3).unwrap();
        assert_eq!(p.eval(&1.into()), 24.into());
        let b3 = FiniteType { family: Family::B, rank: 3 }.diagram();
        assert_eq!(poincare_finite(&b3).unwrap().eval(&1.into()), 48.into());
        assert_eq!(poincare_finite(&CoxeterMatrix::new(0)).unwrap(), IntPoly::one());
    }

    #[test]
    fn infinite_dihedral() {
        let p = poincare_flag(&edge2(EdgeOrder::Infinite)).unwrap();
        assert_eq!(p, RatFunc::from_i64s(&[1, 1], &[1, -1]).unwrap());
    }

    #[test]
    fn tri113_graph() {
        use EdgeOrder::*;
        // m_12 = 6, m_13 = 3, m_23 = 3
        let p = poincare_flag(&triangle(Six, Three, Three)).unwrap();
        let num = &bracket(2).unwrap() * &bracket(6).unwrap();
        let den = IntPoly::from_i64s(&[1, -1, -1, 1, -1, -1, 1]);
        assert_eq!(p, RatFunc::new(num, den).unwrap());
    }

    #[test]
    fn all_infinite_triangle() {
        use EdgeOrder::*;
        let p = poincare_flag(&triangle(Infinite, Infinite, Infinite)).unwrap();
        assert_eq!(p, RatFunc::from_i64s(&[1, 1], &[1, -2]).unwrap());
    }

    #[test]
    fn finite_flag_is_polynomial() {
        let b3 = FiniteType { family: Family::B, rank: 3 }.diagram();
        let p = poincare_flag(&b3).unwrap();
        assert_eq!(p.as_poly(), Some(&poincare_finite(&b3).unwrap()));
    }

    #[test]
    fn residual_vanishes() {
        use EdgeOrder::*;
        let r = steinberg_residual(&edge2(Infinite), 10).unwrap();
        assert!(r.is_zero());
        let r = steinberg_residual(&triangle(Six, Three, Three), 20).unwrap();
        assert!(r.is_zero());
        assert_eq!(
            steinberg_residual(&edge2(Three), 5),
            Err(SeriesError::FiniteGroup)
        );
    }

    #[test]
    fn bfs_small() {
        let a2 = validate(&[vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(bfs_growth(&a2, 3, DEFAULT_BUDGET).unwrap().counts, vec![1, 2, 2, 1]);
        assert_eq!(bfs_growth(&a2, 5, DEFAULT_BUDGET).unwrap().counts, vec![1, 2, 2, 1, 0, 0]);
        let free = validate(&[vec![2, -2, -2], vec![-2, 2, -2], vec![-2, -2, 2]]).unwrap();
        assert_eq!(bfs_growth(&free, 3, DEFAULT_BUDGET).unwrap().counts, vec![1, 3, 6, 12]);
        let b = CoxeterMatrix::from_edges(
            3,
            &[(0, 1, EdgeOrder::Infinite), (1, 2, EdgeOrder::Infinite)],
        )
        .unwrap();
        assert_eq!(
            bfs_growth(&canonical_cartan(&b), 3, DEFAULT_BUDGET).unwrap().counts,
            vec![1, 3, 5, 8]
        );
    }

    #[test]
    fn bfs_budget() {
        let free = validate(&[vec![2, -2, -2], vec![-2, 2, -2], vec![-2, -2, 2]]).unwrap();
        let err = bfs_growth(&free, 20, 100).unwrap_err();
        let BfsError::BudgetExceeded { partial, .. } = err;
        assert_eq!(&partial.counts[..4], &[1, 3, 6, 12]);
    }

    #[test]
    fn bfs_switches_to_big_integers() {
        // entries of the hyperbolic rank-2 representation outgrow i64 long
        // before length 60
        let h = validate(&[vec![2, -10], vec![-10, 2]]).unwrap();
        let g = bfs_growth(&h, 60, DEFAULT_BUDGET).unwrap();
        assert!(g.counts[1..].iter().all(|&c| c == 2));
    }
}
