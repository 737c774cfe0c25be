//! Hilbert-series calculus for connected graded algebras and graded Lie
//! algebras given by generators and strongly free relations.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_poly::{product_decompose, IntPoly, PolyError, ProductForm, Series};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("Hilbert series must have constant term 1, found {0}")]
    ConstantTerm(String),
    #[error("generator degrees must be positive")]
    ZeroGenerator,
    #[error("relation degree {0} is below 2")]
    LowRelation(usize),
    #[error("Q has a positive coefficient in degree {0}, which would be a relation of degree < 2")]
    PositiveLinearTerm(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Hilbert series of a connected graded algebra, truncated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct HilbertSeries(Series);

impl HilbertSeries {
    pub fn new(s: Series) -> Result<Self, GradedError> {
        if !s.coeff(0).is_one() {
            return Err(GradedError::ConstantTerm(s.coeff(0).to_string()));
        }
        Ok(HilbertSeries(s))
    }

    /// The trivial algebra `K`.
    pub fn unit(order: usize) -> Self {
        HilbertSeries(Series::one(order))
    }

    pub fn series(&self) -> &Series {
        &self.0
    }

    pub fn into_series(self) -> Series {
        self.0
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        self.0.coeffs()
    }

    /// Lowest degree with a negative coefficient.
    pub fn first_negative(&self) -> Option<usize> {
        self.0.first_negative()
    }

    pub fn truncate(&self, order: usize) -> Self {
        HilbertSeries(self.0.truncate(order))
    }

    fn inverse(&self) -> Series {
        self.0.inverse().expect("constant term is 1")
    }

    fn from_inverse(inv: &Series) -> Self {
        HilbertSeries(inv.inverse().expect("constant term is 1"))
    }
}

/// Generator and relation degrees, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedPresentation {
    gens: Vec<usize>,
    rels: Vec<usize>,
}

impl GradedPresentation {
    pub fn new(mut gens: Vec<usize>, mut rels: Vec<usize>) -> Result<Self, GradedError> {
        if gens.contains(&0) {
            return Err(GradedError::ZeroGenerator);
        }
        if let Some(&e) = rels.iter().find(|&&e| e < 2) {
            return Err(GradedError::LowRelation(e));
        }
        gens.sort_unstable();
        rels.sort_unstable();
        Ok(GradedPresentation { gens, rels })
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn rels(&self) -> &[usize] {
        &self.rels
    }

    /// `1 - sum t^{d_i} + sum t^{e_j}`.
    pub fn denominator(&self) -> IntPoly {
        let top = self.gens.iter().chain(&self.rels).max().copied().unwrap_or(0);
        let mut c = vec![BigInt::zero(); top + 1];
        c[0] = BigInt::one();
        for &d in &self.gens {
            c[d] -= 1;
        }
        for &e in &self.rels {
            c[e] += 1;
        }
        IntPoly::new(c)
    }
}

impl fmt::Display for GradedPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens {:?} | rels {:?}", self.gens, self.rels)
    }
}

/// `1/H = 1/H1 + 1/H2 - 1`.
pub fn free_product(h1: &HilbertSeries, h2: &HilbertSeries) -> HilbertSeries {
    let inv = h1.inverse().add(&h2.inverse()).sub(&Series::one(h1.order().min(h2.order())));
    HilbertSeries::from_inverse(&inv)
}

/// `1 / (1 - sum t^{d_i})`.
pub fn tensor_algebra(degrees: &[usize], order: usize) -> Result<HilbertSeries, GradedError> {
    if degrees.contains(&0) {
        return Err(GradedError::ZeroGenerator);
    }
    let mut c = vec![BigInt::zero(); order + 1];
    c[0] = BigInt::one();
    for &d in degrees.iter().filter(|&&d| d <= order) {
        c[d] -= 1;
    }
    Ok(HilbertSeries::from_inverse(&Series::new(c, order)))
}

/// `1 / (1/H + sum t^{e_j})`. A negative coefficient in the result shows
/// no strongly free set of these degrees exists; it is reported through
/// [`HilbertSeries::first_negative`], not rejected.
pub fn strongly_free_quotient(h: &HilbertSeries, rel_degrees: &[usize]) -> HilbertSeries {
    let mut inv = h.inverse();
    let order = inv.order();
    let mut bump = vec![BigInt::zero(); order + 1];
    for &e in rel_degrees.iter().filter(|&&e| e <= order) {
        bump[e] += 1;
    }
    inv = inv.add(&Series::new(bump, order));
    HilbertSeries::from_inverse(&inv)
}

pub fn presented_hilbert(p: &GradedPresentation, order: usize) -> HilbertSeries {
    let t = tensor_algebra(&p.gens, order).expect("validated degrees");
    strongly_free_quotient(&t, &p.rels)
}

/// Graded dimensions of the Lie algebra, from PBW.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LieDims {
    pub j: ProductForm,
    /// Lowest `k` with `j_k < 0`; such a presentation is not realizable with
    /// strongly free relations.
    pub first_negative: Option<usize>,
}

pub fn lie_dims(p: &GradedPresentation, order: usize) -> LieDims {
    let h = presented_hilbert(p, order);
    let j = product_decompose(h.series()).expect("constant term is 1");
    let first_negative = j.iter().find(|(_, v)| v.is_negative()).map(|(k, _)| k);
    LieDims { j, first_negative }
}

/// Read `Q = 1 - sum a_i t^{d_i} + sum b_j t^{e_j}` degree by degree:
/// a negative coefficient `-a` gives `a` generators, a positive `b` gives
/// `b` relations.
pub fn parse_q(q: &IntPoly) -> Result<GradedPresentation, GradedError> {
    if !q.constant_term().is_one() {
        return Err(GradedError::ConstantTerm(q.constant_term().to_string()));
    }
    let mut gens = Vec::new();
    let mut rels = Vec::new();
    for (d, c) in q.coeffs().iter().enumerate().skip(1) {
        let count: usize = c.abs().try_into().expect("coefficient fits in usize");
        let bucket = if c.is_negative() {
            &mut gens
        } else {
            if d == 1 && count > 0 {
                return Err(GradedError::PositiveLinearTerm(d));
            }
            &mut rels
        };
        bucket.extend(std::iter::repeat(d).take(count));
    }
    GradedPresentation::new(gens, rels)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PositivityVerdict {
    NecessaryConditionsHold,
    Fails,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    pub verdict: PositivityVerdict,
    pub presentation: GradedPresentation,
    pub series: HilbertSeries,
    pub lie: LieDims,
}

/// Necessary conditions for `Q` to be strongly positive: `1/Q` and the PBW
/// exponents of `1/Q` are nonnegative through `order`.
pub fn strongly_positive_check(q: &IntPoly, order: usize) -> Result<PositivityReport, GradedError> {
    let presentation = parse_q(q)?;
    let series = HilbertSeries::new(Series::from_poly(q, order).inverse()?)?;
    let j = product_decompose(series.series())?;
    let first_negative = j.iter().find(|(_, v)| v.is_negative()).map(|(k, _)| k);
    let lie = LieDims { j, first_negative };
    let verdict = if series.first_negative().is_none() && lie.first_negative.is_none() {
        PositivityVerdict::NecessaryConditionsHold
    } else {
        PositivityVerdict::Fails
    };
    Ok(PositivityReport { verdict, presentation, series, lie })
}
