//! Exact models of algebroid curves and of the rings between a curve and its
//! normalization.
//!
//! Every ring `B` with `A <= B <= Abar` contains the conductor ideal
//! `t^gamma * Abar`. It is stored as a reduced echelon basis of its classes
//! modulo `t^gamma`, so `B = span(basis) + t^gamma * Abar` exactly. Fractional
//! ideals inside `Abar` are stored the same way with their own tail exponent.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{multiplicative_closure, nullspace, unit_vector, FlatCoordinates, SubspaceBasis};
use crate::semigroup::ValueSemigroup;
use crate::series::{scalar, MultiElement, Scalar, Valuation};

/// Largest provisional box tried before giving up on conductor discovery.
pub const MAX_PROVISIONAL_BOX: u32 = 128;
const DEFAULT_PROVISIONAL_BOX: u32 = 8;

/// A reduced one-dimensional ring between a curve and its normalization.
#[derive(Debug, Clone)]
pub struct AlgebroidCurve {
    generators: Vec<MultiElement>,
    gamma: Vec<u32>,
    basis: SubspaceBasis,
    semigroup: ValueSemigroup,
}

/// A fractional ideal `I` inside `Abar` with `t^tail * Abar <= I`.
#[derive(Debug, Clone)]
pub struct FractionalIdealRep {
    tail: Vec<u32>,
    basis: SubspaceBasis,
}

impl FractionalIdealRep {
    pub fn new(basis: SubspaceBasis) -> Self {
        FractionalIdealRep { tail: basis.box_().to_vec(), basis }
    }

    pub fn tail(&self) -> &[u32] {
        &self.tail
    }

    pub fn basis(&self) -> &SubspaceBasis {
        &self.basis
    }

    pub fn contains(&self, a: &MultiElement) -> Result<bool> {
        self.basis.member(&a.truncate(&self.tail)?)
    }

    /// Classes of `I` at a larger box.
    pub fn span_at(&self, box_: &[u32]) -> SubspaceBasis {
        extend(&self.basis, box_)
    }
}

/// `span(basis) + t^{basis.box} * Abar`, truncated at a box at least as large.
fn extend(basis: &SubspaceBasis, box_: &[u32]) -> SubspaceBasis {
    let target = FlatCoordinates::new(box_);
    let mut out = SubspaceBasis::from_vectors(box_, basis.rows().iter().map(|r| basis.transfer(r, &target)));
    for (i, (&lo, &hi)) in basis.box_().iter().zip(box_).enumerate() {
        for e in lo..hi {
            out.insert(unit_vector(target.len(), target.index(i, e).expect("inside box")));
        }
    }
    out
}

/// Lowest `c_i` such that every `t_i^e`, `c_i <= e < box_i`, lies in the span.
fn monomial_floor(span: &SubspaceBasis) -> Vec<u32> {
    let coords = span.coords();
    coords
        .box_()
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let mut c = b;
            while c > 0 {
                let k = coords.index(i, c - 1).expect("inside box");
                if !span.contains_vector(&unit_vector(coords.len(), k)) {
                    break;
                }
                c -= 1;
            }
            c
        })
        .collect()
}

impl AlgebroidCurve {
    /// Builds the ring from classes modulo its conductor. The basis box must
    /// be the conductor exponent and the span must contain 1.
    pub fn from_conductor_basis(basis: SubspaceBasis, generators: Vec<MultiElement>) -> Result<Self> {
        let gamma = basis.box_().to_vec();
        let one = basis.coords().vectorize(&MultiElement::one(gamma.len()).truncate(&gamma)?)?;
        if !basis.contains_vector(&one) {
            return Err(Error::Inconsistent("ring basis does not contain 1".into()));
        }
        let floor = monomial_floor(&basis);
        if floor != gamma {
            return Err(Error::Inconsistent(format!("basis box {gamma:?} is not the conductor {floor:?}")));
        }
        let semigroup = ValueSemigroup::of_conductor_basis(&basis);
        Ok(AlgebroidCurve { generators, gamma, basis, semigroup })
    }

    /// Normalizes a span given at any box `>= gamma` that already contains
    /// `t^{box} * Abar` implicitly: finds the true conductor and re-truncates.
    fn from_span(span: SubspaceBasis, generators: Vec<MultiElement>) -> Result<Self> {
        let gamma = monomial_floor(&span);
        Self::from_conductor_basis(span.project(&gamma), generators)
    }

    /// The normalization `K[[t_1]] x ... x K[[t_s]]`.
    pub fn normalization(s: usize) -> Self {
        let basis = SubspaceBasis::zero(&vec![0; s]);
        let semigroup = ValueSemigroup::of_conductor_basis(&basis);
        AlgebroidCurve { generators: Vec::new(), gamma: vec![0; s], basis, semigroup }
    }

    /// The curve `K[[g_1, ..., g_r]] <= Abar` for maximal-ideal generators
    /// `g_k` of a reduced local curve with `s` branches.
    pub fn from_parametrization(generators: Vec<MultiElement>, s: usize) -> Result<Self> {
        Self::from_parametrization_with_box(generators, s, None)
    }

    /// As [`from_parametrization`](Self::from_parametrization), starting
    /// conductor discovery at the given provisional box per branch.
    pub fn from_parametrization_with_box(
        generators: Vec<MultiElement>,
        s: usize,
        initial_box: Option<u32>,
    ) -> Result<Self> {
        validate_parametrization(&generators, s)?;
        let mut provisional = vec![initial_box.unwrap_or(DEFAULT_PROVISIONAL_BOX).max(2); s];
        loop {
            if let Some(curve) = Self::try_certify(&generators, &provisional)? {
                return Ok(curve);
            }
            if provisional.iter().all(|&p| p >= MAX_PROVISIONAL_BOX) {
                return Err(Error::BoxTooSmall { box_: provisional });
            }
            provisional = provisional.iter().map(|&p| (2 * p).min(MAX_PROVISIONAL_BOX)).collect();
        }
    }

    /// Computes the truncated ring at the provisional box and accepts the
    /// monomial floor `c` as conductor when some `y` in the maximal ideal with
    /// all branches nonzero satisfies `c + nu(y) <= box`. Then
    /// `t^c Abar <= A + t^box Abar <= A + y t^c Abar`, and completeness gives
    /// `t^c Abar <= A`; minimality holds because `t_i^{c_i - 1}` is missing.
    fn try_certify(generators: &[MultiElement], provisional: &[u32]) -> Result<Option<Self>> {
        let span = multiplicative_closure(generators, provisional)?;
        let floor = monomial_floor(&span);
        if floor.iter().zip(provisional).any(|(c, p)| c >= p) {
            return Ok(None);
        }
        let Some(nu) = nonzerodivisor_valuation(generators, provisional)? else {
            return Ok(None);
        };
        if floor.iter().zip(&nu).zip(provisional).any(|((c, v), p)| c + v > *p) {
            return Ok(None);
        }
        Self::from_conductor_basis(span.project(&floor), generators.to_vec()).map(Some)
    }

    pub fn branch_count(&self) -> usize {
        self.gamma.len()
    }

    /// Parametrization generators; empty for rings produced by the chain.
    pub fn generators(&self) -> &[MultiElement] {
        &self.generators
    }

    pub fn gamma(&self) -> &[u32] {
        &self.gamma
    }

    pub fn tau(&self) -> Vec<i64> {
        self.semigroup.tau()
    }

    /// Classes modulo `t^gamma`.
    pub fn basis(&self) -> &SubspaceBasis {
        &self.basis
    }

    pub fn semigroup(&self) -> &ValueSemigroup {
        &self.semigroup
    }

    pub fn is_normal(&self) -> bool {
        self.gamma.iter().all(|&g| g == 0)
    }

    /// `dim_K(Abar / B)`.
    pub fn delta_invariant(&self) -> usize {
        self.gamma.iter().map(|&g| g as usize).sum::<usize>() - self.basis.dim()
    }

    /// The ring truncated at a box `>= gamma`.
    pub fn span_at(&self, box_: &[u32]) -> SubspaceBasis {
        extend(&self.basis, box_)
    }

    pub fn contains(&self, a: &MultiElement) -> Result<bool> {
        self.basis.member(&a.truncate(&self.gamma)?)
    }

    /// Representatives of the basis classes, exact elements of the ring.
    pub fn basis_elements(&self) -> Vec<MultiElement> {
        self.basis
            .elements()
            .into_iter()
            .map(|e| MultiElement::new(e.branches().iter().map(exact_copy).collect()))
            .collect()
    }

    /// The conductor ideal `t^gamma * Abar`.
    pub fn conductor_ideal(&self) -> FractionalIdealRep {
        FractionalIdealRep::new(SubspaceBasis::zero(&self.gamma))
    }

    /// Jacobson radical: elements whose every branch has positive order.
    /// Each maximal ideal of `B` is the contraction of some branch maximal
    /// ideal of `Abar`, so the radical is their common intersection.
    pub fn jacobson_radical(&self) -> FractionalIdealRep {
        let tail: Vec<u32> = self.gamma.iter().map(|g| g + 1).collect();
        FractionalIdealRep::new(positive_order_part(&self.span_at(&tail)))
    }

    /// Per-branch minimal order over the radical.
    pub fn multiplicity(&self) -> Vec<u32> {
        let box_: Vec<u32> = self.gamma.iter().map(|&g| g.max(1)).collect();
        let m = positive_order_part(&self.span_at(&box_));
        let coords = m.coords().clone();
        (0..self.branch_count())
            .map(|i| {
                (1..box_[i])
                    .find(|&e| {
                        let k = coords.index(i, e).expect("inside box");
                        m.rows().iter().any(|r| !r[k].is_zero())
                    })
                    .unwrap_or(box_[i])
            })
            .collect()
    }

    /// `dim_K(m / m^2)` for the radical `m`; the embedding dimension when the
    /// ring is local.
    pub fn embedding_dimension(&self) -> usize {
        let e = self.multiplicity();
        let box_: Vec<u32> = self.gamma.iter().zip(&e).map(|(&g, &m)| g.max(1) + m).collect();
        let m = positive_order_part(&self.span_at(&box_));
        let coords = m.coords().clone();
        let mut square = SubspaceBasis::zero(&box_);
        for (k, u) in m.rows().iter().enumerate() {
            for v in &m.rows()[k..] {
                square.insert(coords.multiply(u, v));
            }
        }
        m.dim() - square.dim()
    }

    /// `End_B(I) = {q in Abar : q I <= I}` for a `B`-submodule `I` of `Abar`.
    ///
    /// Candidates are taken modulo `t^gamma`, since the conductor times `I`
    /// stays in `I`; the condition `q b in I` for each basis class `b` of `I`
    /// is a linear system in the candidate coefficients.
    pub fn endomorphism_ring(&self, ideal: &FractionalIdealRep) -> Result<AlgebroidCurve> {
        self.check_module(ideal)?;
        let icoords = ideal.basis().coords();
        let qcoords = FlatCoordinates::new(&self.gamma);
        let residuals: Vec<Vec<Scalar>> = (0..qcoords.len())
            .map(|k| {
                let (i, e) = qcoords.position(k);
                ideal
                    .basis()
                    .rows()
                    .iter()
                    .flat_map(|b| ideal.basis().reduce(shift_branch(icoords, b, i, e)))
                    .collect()
            })
            .collect();
        let span = SubspaceBasis::from_vectors(&self.gamma, nullspace(&residuals));
        AlgebroidCurve::from_span(span, Vec::new())
    }

    /// Checks `B * I <= I`, including the conductor monomials below the tail.
    fn check_module(&self, ideal: &FractionalIdealRep) -> Result<()> {
        if ideal.tail().len() != self.branch_count() {
            return Err(Error::BranchCountMismatch { left: self.branch_count(), right: ideal.tail().len() });
        }
        let coords = ideal.basis().coords().clone();
        let mut multipliers: Vec<Vec<Scalar>> =
            self.basis.rows().iter().map(|r| self.basis.transfer(r, &coords)).collect();
        for (i, (&g, &t)) in self.gamma.iter().zip(ideal.tail()).enumerate() {
            for e in g..t {
                multipliers.push(unit_vector(coords.len(), coords.index(i, e).expect("inside box")));
            }
        }
        for u in &multipliers {
            for b in ideal.basis().rows() {
                if !ideal.basis().contains_vector(&coords.multiply(u, b)) {
                    return Err(Error::NotAnIdeal);
                }
            }
        }
        Ok(())
    }

    /// `End_B(rad B)`.
    pub fn endomorphism_of_radical(&self) -> Result<AlgebroidCurve> {
        self.endomorphism_ring(&self.jacobson_radical())
    }

    /// Equality of nested rings, decided on the truncated bases and
    /// cross-checked against equality of value semigroups.
    pub fn ring_equals(&self, other: &AlgebroidCurve) -> Result<bool> {
        let by_basis = self.gamma == other.gamma && self.basis.subspace_eq(&other.basis)?;
        let by_semigroup = self.semigroup == other.semigroup;
        if by_basis != by_semigroup {
            return Err(Error::Inconsistent(format!(
                "basis equality {by_basis} disagrees with semigroup equality {by_semigroup}"
            )));
        }
        Ok(by_basis)
    }

    /// Whether `self <= other`.
    pub fn is_subring_of(&self, other: &AlgebroidCurve) -> Result<bool> {
        if self.branch_count() != other.branch_count() {
            return Err(Error::BranchCountMismatch { left: self.branch_count(), right: other.branch_count() });
        }
        if self.gamma.iter().zip(&other.gamma).any(|(s, o)| s < o) {
            return Ok(false);
        }
        let big = other.span_at(&self.gamma);
        self.basis.is_subspace_of(&big)
    }

    /// `dim_K(self / smaller)` for `smaller <= self`.
    pub fn dim_quotient(&self, smaller: &AlgebroidCurve) -> Result<usize> {
        if !smaller.is_subring_of(self)? {
            return Err(Error::NotNested);
        }
        Ok(self.span_at(&smaller.gamma).dim() - smaller.basis.dim())
    }

    /// Splits the ring along its idempotents. Returns the branch blocks and
    /// the factor rings, ordered by first branch.
    pub fn idempotent_split(&self) -> Result<Vec<(Vec<usize>, AlgebroidCurve)>> {
        let s = self.branch_count();
        let coords = self.basis.coords().clone();
        let mut idempotents: Vec<u64> = Vec::new();
        for mask in 1u64..(1u64 << s) - 1 {
            let mut v = vec![Scalar::zero(); coords.len()];
            for i in (0..s).filter(|i| mask >> i & 1 == 1) {
                if let Some(k) = coords.index(i, 0) {
                    v[k] = Scalar::one();
                }
            }
            if self.basis.contains_vector(&v) {
                idempotents.push(mask);
            }
        }
        let signature = |i: usize| idempotents.iter().map(|m| m >> i & 1).collect::<Vec<_>>();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for i in 0..s {
            match blocks.iter_mut().find(|b| signature(b[0]) == signature(i)) {
                Some(b) => b.push(i),
                None => blocks.push(vec![i]),
            }
        }
        if blocks.len() == 1 {
            return Ok(vec![(blocks.remove(0), self.clone())]);
        }
        blocks
            .into_iter()
            .map(|block| {
                let factor = self.restrict_to_branches(&block)?;
                Ok((block, factor))
            })
            .collect()
    }

    /// Image of the ring in the product of the chosen branch rings.
    pub fn restrict_to_branches(&self, branches: &[usize]) -> Result<AlgebroidCurve> {
        let generators = self.generators.iter().map(|g| g.restrict(branches)).collect();
        AlgebroidCurve::from_span(self.basis.restrict_branches(branches), generators)
    }

    pub fn is_local(&self) -> Result<bool> {
        Ok(self.idempotent_split()?.len() == 1)
    }

    /// Same ring with branches listed in a new order.
    pub fn permute_branches(&self, order: &[usize]) -> Result<AlgebroidCurve> {
        let generators = self.generators.iter().map(|g| g.restrict(order)).collect();
        AlgebroidCurve::from_conductor_basis(self.basis.restrict_branches(order), generators)
    }
}

/// `t_i^shift * v` restricted to branch `i`, truncated to the box.
fn shift_branch(coords: &FlatCoordinates, v: &[Scalar], branch: usize, shift: u32) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); coords.len()];
    for (k, c) in v.iter().enumerate() {
        let (i, e) = coords.position(k);
        if i != branch || c.is_zero() {
            continue;
        }
        if let Some(dst) = coords.index(i, e + shift) {
            out[dst] = c.clone();
        }
    }
    out
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn exact_copy(b: &crate::series::BranchSeries) -> crate::series::BranchSeries {
    crate::series::BranchSeries::from_terms(b.terms().map(|(e, c)| (e, c.clone())), crate::series::Precision::Exact)
}

/// Elements of the span whose constant terms vanish on every branch.
fn positive_order_part(span: &SubspaceBasis) -> SubspaceBasis {
    let coords = span.coords();
    let constants: Vec<usize> = (0..coords.box_().len()).filter_map(|i| coords.index(i, 0)).collect();
    SubspaceBasis::from_vectors(coords.box_(), span.vanishing_on(&constants))
}

fn validate_parametrization(generators: &[MultiElement], s: usize) -> Result<()> {
    if s == 0 {
        return Err(Error::NoBranches);
    }
    for g in generators {
        if g.branch_count() != s {
            return Err(Error::BranchCountMismatch { left: s, right: g.branch_count() });
        }
    }
    for (k, g) in generators.iter().enumerate() {
        for (i, b) in g.branches().iter().enumerate() {
            if b.coeff(0).is_some_and(|c| !c.is_zero()) {
                return Err(Error::NonLocal { generator: k, branch: i });
            }
        }
    }
    for i in 0..s {
        let exponents: Vec<u32> = generators.iter().flat_map(|g| g.branch(i).terms().map(|(e, _)| e)).collect();
        if exponents.is_empty() {
            return Err(Error::DegenerateBranch { branch: i });
        }
        let factor = exponents.iter().fold(0, |acc, &e| gcd(acc, e));
        if factor > 1 {
            return Err(Error::NonPrimitiveBranch { branch: i, factor });
        }
    }
    for i in 0..s {
        for j in i + 1..s {
            if generators.iter().all(|g| g.branch(i) == g.branch(j)) {
                return Err(Error::NotReduced { first: i, second: j });
            }
        }
    }
    Ok(())
}

/// Valuation of a generic linear combination of the generators, if one with
/// every branch nonzero below the box is found.
fn nonzerodivisor_valuation(generators: &[MultiElement], box_: &[u32]) -> Result<Option<Vec<u32>>> {
    let s = box_.len();
    for base in [1i64, 2, 3, 5, 7, 11, 13, 17] {
        let mut y = MultiElement::zero(s);
        for (k, g) in generators.iter().enumerate() {
            y = y.add(&g.scale(&num_traits::pow(scalar(base), k)))?;
        }
        let y = y.truncate(box_)?;
        let nu: Option<Vec<u32>> =
            y.branches().iter().map(|b| b.order().and_then(Valuation::finite)).collect();
        if nu.is_some() {
            return Ok(nu);
        }
    }
    Ok(None)
}
