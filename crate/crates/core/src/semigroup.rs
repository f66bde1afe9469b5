//! Value semigroups, conductor vectors, Delta-sets and the Gorenstein
//! symmetry test.
//!
//! A semigroup is stored by its conductor `gamma` together with the finite
//! set of members in the box `[0, gamma]` (inclusive). Membership of any
//! `alpha` in `N^s` only depends on `min(alpha, gamma)`, because a component
//! at or above `gamma_i` can be adjusted freely inside the conductor.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{FlatCoordinates, SubspaceBasis};
use crate::series::Scalar;

/// Every `alpha` in the box, in lexicographic order.
pub fn box_points(box_: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
    let total: usize = box_.iter().map(|&b| b as usize).product();
    (0..total).map(move |mut k| {
        let mut alpha = vec![0u32; box_.len()];
        for i in (0..box_.len()).rev() {
            let b = box_[i] as usize;
            alpha[i] = (k % b) as u32;
            k /= b;
        }
        alpha
    })
}

/// Valuation vectors attained by elements of the subspace, restricted to
/// the box. A vector `alpha` is attained when the subspace
/// `V_alpha = {a : nu(a) >= alpha}` is not covered by the subspaces
/// `V_{alpha + e_i}`. Over an infinite field that happens exactly when
/// every coordinate functional `a -> coeff(a_i, alpha_i)` is nonzero on
/// `V_alpha`.
pub fn attainable_valuations(space: &SubspaceBasis) -> BTreeSet<Vec<u32>> {
    let coords = space.coords();
    let box_ = coords.box_().to_vec();
    let mut out = BTreeSet::new();
    for alpha in box_points(&box_) {
        let zero_coords = low_order_coords(coords, &alpha);
        let w = space.vanishing_on(&zero_coords);
        if w.is_empty() {
            continue;
        }
        let attained = alpha.iter().enumerate().all(|(i, &a)| {
            let k = coords.index(i, a).expect("alpha inside box");
            w.iter().any(|v| !v[k].is_zero())
        });
        if attained {
            out.insert(alpha);
        }
    }
    out
}

fn low_order_coords(coords: &FlatCoordinates, alpha: &[u32]) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, &a) in alpha.iter().enumerate() {
        for e in 0..a {
            out.push(coords.index(i, e).expect("inside box"));
        }
    }
    out
}

/// The componentwise least `gamma` with `gamma + N^s` inside the attained
/// set, as far as the box can tell. Requires `gamma + 1 <= box`.
pub fn conductor_vector(attainable: &BTreeSet<Vec<u32>>, box_: &[u32]) -> Result<Vec<u32>> {
    let too_small = || Error::BoxTooSmall { box_: box_.to_vec() };
    if box_.contains(&0) {
        return Err(too_small());
    }
    // upper[alpha]: every beta with alpha <= beta < box is attained.
    let points: Vec<Vec<u32>> = box_points(box_).collect();
    let mut upper: BTreeSet<Vec<u32>> = BTreeSet::new();
    for alpha in points.iter().rev() {
        if !attainable.contains(alpha) {
            continue;
        }
        let closed = (0..alpha.len()).all(|i| {
            if alpha[i] + 1 >= box_[i] {
                return true;
            }
            let mut next = alpha.clone();
            next[i] += 1;
            upper.contains(&next)
        });
        if closed {
            upper.insert(alpha.clone());
        }
    }
    if upper.is_empty() {
        return Err(too_small());
    }
    let gamma: Vec<u32> =
        (0..box_.len()).map(|i| upper.iter().map(|a| a[i]).min().expect("nonempty")).collect();
    if !upper.contains(&gamma) || gamma.iter().zip(box_).any(|(g, b)| g + 1 > *b) {
        return Err(too_small());
    }
    Ok(gamma)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValueSemigroup {
    gamma: Vec<u32>,
    members: BTreeSet<Vec<u32>>,
}

impl ValueSemigroup {
    /// `members` must lie in `[0, gamma]` componentwise.
    pub fn new(gamma: Vec<u32>, members: BTreeSet<Vec<u32>>) -> Self {
        debug_assert!(members.iter().all(|a| a.iter().zip(&gamma).all(|(x, g)| x <= g)));
        ValueSemigroup { gamma, members }
    }

    /// Semigroup of the ring `span(basis) + t^gamma * Abar`, where the basis
    /// is given at box `gamma`.
    pub fn of_conductor_basis(basis: &SubspaceBasis) -> Self {
        let gamma = basis.box_().to_vec();
        let extended: Vec<u32> = gamma.iter().map(|g| g + 1).collect();
        let target = FlatCoordinates::new(&extended);
        let mut span = SubspaceBasis::from_vectors(&extended, basis.rows().iter().map(|r| basis.transfer(r, &target)));
        for (i, &g) in gamma.iter().enumerate() {
            let mut v = vec![Scalar::zero(); target.len()];
            v[target.index(i, g).expect("inside box")] = num_traits::One::one();
            span.insert(v);
        }
        ValueSemigroup { gamma, members: attainable_valuations(&span) }
    }

    pub fn branch_count(&self) -> usize {
        self.gamma.len()
    }

    pub fn gamma(&self) -> &[u32] {
        &self.gamma
    }

    pub fn tau(&self) -> Vec<i64> {
        self.gamma.iter().map(|&g| g as i64 - 1).collect()
    }

    /// Members with every component at most `gamma`.
    pub fn members(&self) -> &BTreeSet<Vec<u32>> {
        &self.members
    }

    pub fn contains(&self, alpha: &[i64]) -> bool {
        if alpha.iter().any(|&a| a < 0) {
            return false;
        }
        let clamped: Vec<u32> = alpha.iter().zip(&self.gamma).map(|(&a, &g)| (a as u32).min(g)).collect();
        self.members.contains(&clamped)
    }

    pub fn contains_nat(&self, alpha: &[u32]) -> bool {
        let clamped: Vec<u32> = alpha.iter().zip(&self.gamma).map(|(&a, &g)| a.min(g)).collect();
        self.members.contains(&clamped)
    }

    /// Members strictly below `gamma` in every component.
    pub fn below_conductor(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.members.iter().filter(|a| a.iter().zip(&self.gamma).all(|(x, g)| x < g))
    }
}

impl fmt::Display for ValueSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_vec = |v: &[u32]| {
            if v.len() == 1 {
                v[0].to_string()
            } else {
                format!("({})", v.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            }
        };
        write!(f, "gamma={} members<=gamma: {{", fmt_vec(&self.gamma))?;
        for (k, m) in self.members.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_vec(m))?;
        }
        write!(f, "}}")
    }
}

/// The probe set `Delta(base)`: vectors of `N^s` agreeing with `base` in one
/// coordinate and strictly larger in all others.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaSet {
    pub base: Vec<i64>,
}

impl DeltaSet {
    pub fn new(base: Vec<i64>) -> Self {
        DeltaSet { base }
    }

    pub fn contains(&self, beta: &[i64]) -> bool {
        if beta.iter().any(|&b| b < 0) || beta.len() != self.base.len() {
            return false;
        }
        (0..self.base.len()).any(|i| {
            beta[i] == self.base[i] && (0..self.base.len()).all(|j| j == i || beta[j] > self.base[j])
        })
    }
}

/// Whether `Delta(alpha)` meets the semigroup. Components above the
/// conductor collapse onto it, so only a finite grid is scanned.
pub fn delta_intersects(alpha: &[i64], semigroup: &ValueSemigroup) -> bool {
    let gamma = semigroup.gamma();
    let s = alpha.len();
    for i in 0..s {
        if alpha[i] < 0 {
            continue;
        }
        let ranges: Vec<Vec<i64>> = (0..s)
            .map(|k| {
                let g = gamma[k] as i64;
                if k == i {
                    vec![alpha[i].min(g)]
                } else {
                    let lo = (alpha[k] + 1).max(0);
                    if lo >= g {
                        vec![g]
                    } else {
                        (lo..=g).collect()
                    }
                }
            })
            .collect();
        let mut beta = vec![0i64; s];
        if scan(&ranges, 0, &mut beta, semigroup) {
            return true;
        }
    }
    false
}

fn scan(ranges: &[Vec<i64>], k: usize, beta: &mut Vec<i64>, semigroup: &ValueSemigroup) -> bool {
    if k == ranges.len() {
        return semigroup.contains(beta);
    }
    for &v in &ranges[k] {
        beta[k] = v;
        if scan(ranges, k + 1, beta, semigroup) {
            return true;
        }
    }
    false
}

/// Symmetry test `alpha in G <=> Delta(tau - alpha) misses G`.
///
/// Only `alpha` in `[-1, gamma + 1]^s` are checked. A negative component makes
/// both sides false, and a component above `gamma_i` leaves both sides
/// unchanged when lowered to `gamma_i`.
pub fn is_symmetric(semigroup: &ValueSemigroup) -> bool {
    symmetry_violations(semigroup, 1).is_empty()
}

/// Points of `[-margin, gamma + margin]^s` where the symmetry condition fails.
pub fn symmetry_violations(semigroup: &ValueSemigroup, margin: i64) -> Vec<Vec<i64>> {
    let tau = semigroup.tau();
    let widths: Vec<u32> = semigroup.gamma().iter().map(|&g| (g as i64 + 2 * margin + 1) as u32).collect();
    box_points(&widths)
        .map(|p| p.iter().map(|&x| x as i64 - margin).collect::<Vec<i64>>())
        .filter(|alpha| {
            let probe: Vec<i64> = tau.iter().zip(alpha).map(|(t, a)| t - a).collect();
            semigroup.contains(alpha) == delta_intersects(&probe, semigroup)
        })
        .collect()
}
