//! The normalization chain `A_{i+1} = End_{A_i}(rad A_i)` and its length.

use crate::ade::{fingerprint, recognize_local, Fingerprint, SingularityType};
use crate::error::{Error, Result};
use crate::ring::AlgebroidCurve;
use crate::semigroup::is_symmetric;

/// A connected factor of a chain ring.
#[derive(Debug, Clone)]
pub struct FactorInfo {
    pub branches: Vec<usize>,
    pub fingerprint: Fingerprint,
    pub recognized: SingularityType,
}

#[derive(Debug, Clone)]
pub struct ChainStep {
    pub index: usize,
    pub ring: AlgebroidCurve,
    /// `dim_K(A_i / A_{i-1})`; zero for the first ring.
    pub dim_over_previous: usize,
    pub delta: usize,
    /// Symmetry of the value semigroup on every connected factor.
    pub gorenstein: bool,
    /// Outcome of the normality criterion `B normal <=> B = End(rad B)`.
    pub gr_criterion: bool,
    pub factors: Vec<FactorInfo>,
    pub recognized: SingularityType,
}

#[derive(Debug, Clone)]
pub struct ChainReport {
    /// `A_0, ..., A_n`; the last ring is the normalization.
    pub steps: Vec<ChainStep>,
    pub n: usize,
}

impl ChainReport {
    pub fn last(&self) -> &ChainStep {
        self.steps.last().expect("chain has at least one ring")
    }
}

fn describe(index: usize, ring: AlgebroidCurve, previous: Option<&AlgebroidCurve>, gr: bool) -> Result<ChainStep> {
    let dim_over_previous = match previous {
        Some(p) => ring.dim_quotient(p)?,
        None => 0,
    };
    let mut factors = Vec::new();
    for (branches, factor) in ring.idempotent_split()? {
        factors.push(FactorInfo {
            branches,
            fingerprint: fingerprint(&factor)?,
            recognized: recognize_local(&factor)?,
        });
    }
    let recognized = if factors.len() == 1 {
        factors[0].recognized.clone()
    } else {
        SingularityType::Product(factors.iter().map(|f| f.recognized.clone()).collect())
    };
    Ok(ChainStep {
        index,
        delta: ring.delta_invariant(),
        gorenstein: factors.iter().all(|f| f.fingerprint.gorenstein),
        gr_criterion: gr,
        dim_over_previous,
        factors,
        recognized,
        ring,
    })
}

/// The rings `A_0 < A_1 < ... < A_n = A_{n+1}`.
///
/// Each strict step adds at least one dimension inside `Abar`, so more than
/// `delta(A) + 1` iterations means something is broken.
pub fn chain_rings(a: &AlgebroidCurve) -> Result<Vec<AlgebroidCurve>> {
    let cap = a.delta_invariant() + 1;
    let mut rings = vec![a.clone()];
    loop {
        let current = rings.last().expect("nonempty");
        let next = current.endomorphism_of_radical()?;
        if !current.is_subring_of(&next)? {
            return Err(Error::Inconsistent("ring is not contained in End(rad)".into()));
        }
        if current.ring_equals(&next)? {
            if !current.is_normal() {
                return Err(Error::Inconsistent("chain stopped at a non-normal ring".into()));
            }
            return Ok(rings);
        }
        if rings.len() > cap {
            return Err(Error::NonTermination { cap });
        }
        rings.push(next);
    }
}

/// Full chain with per-step invariants and recognized types.
pub fn gr_chain(a: &AlgebroidCurve) -> Result<ChainReport> {
    let rings = chain_rings(a)?;
    let n = rings.len() - 1;
    let mut steps = Vec::with_capacity(rings.len());
    for (i, ring) in rings.iter().enumerate() {
        let gr = verify_gr_criterion(ring)?;
        steps.push(describe(i, ring.clone(), i.checked_sub(1).map(|p| &rings[p]), gr)?);
    }
    Ok(ChainReport { steps, n })
}

/// Number of strict steps of the chain; 0 for a normal ring.
pub fn n_of(a: &AlgebroidCurve) -> Result<usize> {
    Ok(chain_rings(a)?.len() - 1)
}

/// Chain length of a curve with the given local models at its singular
/// points: the maximum over the models.
pub fn global_n(locals: &[AlgebroidCurve]) -> Result<usize> {
    locals.iter().map(n_of).try_fold(0, |acc, n| Ok(acc.max(n?)))
}

/// `B` normal (conductor zero) if and only if `B = End_B(rad B)`.
pub fn verify_gr_criterion(b: &AlgebroidCurve) -> Result<bool> {
    let end = b.endomorphism_of_radical()?;
    Ok(b.is_normal() == b.ring_equals(&end)?)
}

/// Whether the semigroup symmetry holds, for use on connected rings.
pub fn is_gorenstein(b: &AlgebroidCurve) -> bool {
    is_symmetric(b.semigroup())
}
