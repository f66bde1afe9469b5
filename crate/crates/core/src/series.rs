//! Truncated univariate power series over the rationals and tuples of them,
//! one per curve branch.
//!
//! A [`BranchSeries`] stores only nonzero coefficients. Its [`Precision`]
//! records how far the coefficients are known: `Exact` means every absent
//! coefficient is a genuine zero, `Bounded(p)` means nothing is known at
//! exponents `>= p`. Reading an unknown coefficient is an error.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always kept as a reduced fraction with positive
/// denominator by `num_rational`.
pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Precision {
    Exact,
    Bounded(u32),
}

impl Precision {
    pub fn min(self, other: Precision) -> Precision {
        match (self, other) {
            (Precision::Exact, p) | (p, Precision::Exact) => p,
            (Precision::Bounded(a), Precision::Bounded(b)) => Precision::Bounded(a.min(b)),
        }
    }

    /// True when the coefficient at `exponent` is known.
    pub fn knows(self, exponent: u32) -> bool {
        match self {
            Precision::Exact => true,
            Precision::Bounded(p) => exponent < p,
        }
    }

    /// True when every coefficient below `limit` is known.
    pub fn covers(self, limit: u32) -> bool {
        match self {
            Precision::Exact => true,
            Precision::Bounded(p) => limit <= p,
        }
    }

    fn shifted(self, by: Valuation) -> Precision {
        match (self, by) {
            (Precision::Exact, _) => Precision::Exact,
            (_, Valuation::Infinity) => Precision::Exact,
            (Precision::Bounded(p), Valuation::Finite(v)) => Precision::Bounded(p + v),
        }
    }
}

/// Order of a branch series: a natural number or infinity for the zero series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(u32),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// Valuation vector of a multi-element, one entry per branch.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValuationVector(pub Vec<Valuation>);

impl ValuationVector {
    pub fn entries(&self) -> &[Valuation] {
        &self.0
    }

    /// `Some(alpha)` when every entry is finite.
    pub fn to_finite(&self) -> Option<Vec<u32>> {
        self.0.iter().map(|v| v.finite()).collect()
    }

    /// Componentwise comparison; `None` when incomparable.
    pub fn partial_cmp_componentwise(&self, other: &ValuationVector) -> Option<Ordering> {
        let mut result = Ordering::Equal;
        for (a, b) in self.0.iter().zip(&other.0) {
            match (result, a.cmp(b)) {
                (_, Ordering::Equal) => {}
                (Ordering::Equal, o) => result = o,
                (r, o) if r == o => {}
                _ => return None,
            }
        }
        Some(result)
    }
}

impl fmt::Display for ValuationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A truncated power series in one variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BranchSeries {
    coeffs: BTreeMap<u32, Scalar>,
    prec: Precision,
}

impl BranchSeries {
    pub fn zero() -> Self {
        BranchSeries { coeffs: BTreeMap::new(), prec: Precision::Exact }
    }

    /// `O(t^prec)`: nothing known.
    pub fn unknown(prec: u32) -> Self {
        BranchSeries { coeffs: BTreeMap::new(), prec: Precision::Bounded(prec) }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(exponent: u32) -> Self {
        Self::term(scalar(1), exponent)
    }

    pub fn term(coeff: Scalar, exponent: u32) -> Self {
        Self::from_terms([(exponent, coeff)], Precision::Exact)
    }

    /// Builds a series from `(exponent, coefficient)` pairs. Repeated
    /// exponents are summed; zero coefficients and exponents beyond the
    /// precision are dropped.
    pub fn from_terms<I>(terms: I, prec: Precision) -> Self
    where
        I: IntoIterator<Item = (u32, Scalar)>,
    {
        let mut coeffs: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (e, c) in terms {
            if !prec.knows(e) {
                continue;
            }
            *coeffs.entry(e).or_insert_with(Scalar::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        BranchSeries { coeffs, prec }
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == Precision::Exact
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.is_exact()
    }

    pub fn coeff(&self, exponent: u32) -> Option<Scalar> {
        if !self.prec.knows(exponent) {
            return None;
        }
        Some(self.coeffs.get(&exponent).cloned().unwrap_or_else(Scalar::zero))
    }

    /// Exact order, or `None` when all known coefficients vanish but the
    /// series is only known up to a finite precision.
    pub fn order(&self) -> Option<Valuation> {
        match self.coeffs.keys().next() {
            Some(&e) => Some(Valuation::Finite(e)),
            None if self.is_exact() => Some(Valuation::Infinity),
            None => None,
        }
    }

    /// Largest exponent `v` such that the series certainly lies in `t^v K[[t]]`.
    fn order_lower_bound(&self) -> Valuation {
        match (self.coeffs.keys().next(), self.prec) {
            (Some(&e), _) => Valuation::Finite(e),
            (None, Precision::Exact) => Valuation::Infinity,
            (None, Precision::Bounded(p)) => Valuation::Finite(p),
        }
    }

    pub fn add(&self, other: &BranchSeries) -> BranchSeries {
        let prec = self.prec.min(other.prec);
        Self::from_terms(
            self.coeffs.iter().chain(&other.coeffs).map(|(e, c)| (*e, c.clone())),
            prec,
        )
    }

    pub fn neg(&self) -> BranchSeries {
        BranchSeries {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &BranchSeries) -> BranchSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> BranchSeries {
        if c.is_zero() {
            return BranchSeries { coeffs: BTreeMap::new(), prec: self.prec };
        }
        BranchSeries {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
            prec: self.prec,
        }
    }

    /// Cauchy product. The result is known below
    /// `min(prec_a + ord_b, prec_b + ord_a)`.
    pub fn mul(&self, other: &BranchSeries) -> BranchSeries {
        let prec = self
            .prec
            .shifted(other.order_lower_bound())
            .min(other.prec.shifted(self.order_lower_bound()));
        let mut terms = Vec::with_capacity(self.coeffs.len() * other.coeffs.len());
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                terms.push((ea + eb, ca * cb));
            }
        }
        Self::from_terms(terms, prec)
    }

    /// Drops every coefficient at exponent `>= limit`.
    pub fn truncate(&self, limit: u32) -> BranchSeries {
        let prec = self.prec.min(Precision::Bounded(limit));
        BranchSeries {
            coeffs: self.coeffs.range(..limit).map(|(e, c)| (*e, c.clone())).collect(),
            prec,
        }
    }

    /// The series `f(lambda * t)`.
    pub fn rescale_variable(&self, lambda: &Scalar) -> BranchSeries {
        BranchSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (*e, c * num_traits::pow(lambda.clone(), *e as usize)))
                .collect(),
            prec: self.prec,
        }
    }
}

impl fmt::Display for BranchSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.coeffs {
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (e, true) => write!(f, "t^{e}")?,
                (e, false) => write!(f, "{mag}*t^{e}")?,
            }
        }
        match self.prec {
            Precision::Exact if first => write!(f, "0"),
            Precision::Exact => Ok(()),
            Precision::Bounded(p) if first => write!(f, "O(t^{p})"),
            Precision::Bounded(p) => write!(f, " + O(t^{p})"),
        }
    }
}

/// An element of the product ring `K[[t_1]] x ... x K[[t_s]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiElement {
    branches: Vec<BranchSeries>,
}

impl MultiElement {
    pub fn new(branches: Vec<BranchSeries>) -> Self {
        MultiElement { branches }
    }

    pub fn zero(s: usize) -> Self {
        MultiElement { branches: vec![BranchSeries::zero(); s] }
    }

    pub fn one(s: usize) -> Self {
        MultiElement { branches: vec![BranchSeries::one(); s] }
    }

    /// `t^alpha`, with `None` entries giving the zero series in that branch.
    pub fn monomial(alpha: &[Option<u32>]) -> Self {
        MultiElement {
            branches: alpha
                .iter()
                .map(|a| a.map_or_else(BranchSeries::zero, BranchSeries::monomial))
                .collect(),
        }
    }

    /// The monomial `t_i^e` placed in a single branch, zero elsewhere.
    pub fn unit_monomial(s: usize, branch: usize, exponent: u32) -> Self {
        let mut branches = vec![BranchSeries::zero(); s];
        branches[branch] = BranchSeries::monomial(exponent);
        MultiElement { branches }
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    pub fn branches(&self) -> &[BranchSeries] {
        &self.branches
    }

    pub fn branch(&self, i: usize) -> &BranchSeries {
        &self.branches[i]
    }

    fn check_same_shape(&self, other: &MultiElement) -> Result<()> {
        if self.branches.len() != other.branches.len() {
            return Err(Error::BranchCountMismatch {
                left: self.branches.len(),
                right: other.branches.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiElement) -> Result<MultiElement> {
        self.check_same_shape(other)?;
        Ok(MultiElement {
            branches: self.branches.iter().zip(&other.branches).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &MultiElement) -> Result<MultiElement> {
        self.check_same_shape(other)?;
        Ok(MultiElement {
            branches: self.branches.iter().zip(&other.branches).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn mul(&self, other: &MultiElement) -> Result<MultiElement> {
        self.check_same_shape(other)?;
        Ok(MultiElement {
            branches: self.branches.iter().zip(&other.branches).map(|(a, b)| a.mul(b)).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> MultiElement {
        MultiElement { branches: self.branches.iter().map(|b| b.scale(c)).collect() }
    }

    pub fn pow(&self, k: u32) -> MultiElement {
        let mut acc = MultiElement::one(self.branches.len());
        for _ in 0..k {
            acc = acc.mul(self).expect("same branch count");
        }
        acc
    }

    pub fn valuation(&self) -> Result<ValuationVector> {
        self.branches
            .iter()
            .enumerate()
            .map(|(i, b)| b.order().ok_or(Error::UnknownOrder { branch: i }))
            .collect::<Result<Vec<_>>>()
            .map(ValuationVector)
    }

    /// Truncates branch `i` below `limits[i]`.
    pub fn truncate(&self, limits: &[u32]) -> Result<MultiElement> {
        if limits.len() != self.branches.len() {
            return Err(Error::BranchCountMismatch {
                left: self.branches.len(),
                right: limits.len(),
            });
        }
        Ok(MultiElement {
            branches: self.branches.iter().zip(limits).map(|(b, &n)| b.truncate(n)).collect(),
        })
    }

    /// Restriction to a subset of branches, in the given order.
    pub fn restrict(&self, branches: &[usize]) -> MultiElement {
        MultiElement { branches: branches.iter().map(|&i| self.branches[i].clone()).collect() }
    }

    pub fn is_exact(&self) -> bool {
        self.branches.iter().all(BranchSeries::is_exact)
    }
}

impl fmt::Display for MultiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, b) in self.branches.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}
