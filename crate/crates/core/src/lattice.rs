//! Exact subspaces of the finite coordinate space of truncated multi-elements.
//!
//! A box `b = (b_1, ..., b_s)` selects the coefficients of `t_i^e` with
//! `e < b_i`. Coordinates are ordered by exponent first and branch second,
//! so that pivots of a reduced echelon basis sit at the lowest-order terms.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{BranchSeries, MultiElement, Precision, Scalar};

/// Index map between `(branch, exponent)` positions and flat coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatCoordinates {
    box_: Vec<u32>,
    positions: Vec<(usize, u32)>,
    index: Vec<Vec<usize>>,
}

impl FlatCoordinates {
    pub fn new(box_: &[u32]) -> Self {
        let max = box_.iter().copied().max().unwrap_or(0);
        let mut positions = Vec::new();
        let mut index: Vec<Vec<usize>> = box_.iter().map(|&b| Vec::with_capacity(b as usize)).collect();
        for e in 0..max {
            for (i, &b) in box_.iter().enumerate() {
                if e < b {
                    index[i].push(positions.len());
                    positions.push((i, e));
                }
            }
        }
        FlatCoordinates { box_: box_.to_vec(), positions, index }
    }

    pub fn box_(&self) -> &[u32] {
        &self.box_
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn index(&self, branch: usize, exponent: u32) -> Option<usize> {
        self.index.get(branch)?.get(exponent as usize).copied()
    }

    pub fn position(&self, k: usize) -> (usize, u32) {
        self.positions[k]
    }

    /// Coefficient vector of `a` inside the box.
    pub fn vectorize(&self, a: &MultiElement) -> Result<Vec<Scalar>> {
        if a.branch_count() != self.box_.len() {
            return Err(Error::BranchCountMismatch { left: a.branch_count(), right: self.box_.len() });
        }
        let mut v = vec![Scalar::zero(); self.len()];
        for (i, series) in a.branches().iter().enumerate() {
            let limit = self.box_[i];
            if !series.precision().covers(limit) {
                let exponent = match series.precision() {
                    Precision::Bounded(p) => p,
                    Precision::Exact => unreachable!(),
                };
                return Err(Error::UnknownCoefficient { branch: i, exponent });
            }
            for (e, c) in series.terms() {
                if e >= limit {
                    break;
                }
                v[self.index[i][e as usize]] = c.clone();
            }
        }
        Ok(v)
    }

    /// The truncated multi-element with coefficient vector `v`.
    pub fn element(&self, v: &[Scalar]) -> MultiElement {
        let mut terms: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); self.box_.len()];
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let (i, e) = self.positions[k];
                terms[i].push((e, c.clone()));
            }
        }
        MultiElement::new(
            terms
                .into_iter()
                .zip(&self.box_)
                .map(|(t, &b)| BranchSeries::from_terms(t, Precision::Bounded(b)))
                .collect(),
        )
    }

    /// Product of two truncated coefficient vectors, truncated to the box.
    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.len()];
        for (ka, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let (i, ea) = self.positions[ka];
            for (eb, &kb) in self.index[i].iter().enumerate() {
                let e = ea + eb as u32;
                if e >= self.box_[i] {
                    break;
                }
                let cb = &b[kb];
                if !cb.is_zero() {
                    out[self.index[i][e as usize]] += ca * cb;
                }
            }
        }
        out
    }
}

/// A subspace in reduced row-echelon form.
#[derive(Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    coords: FlatCoordinates,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubspaceBasis")
            .field("box", &self.coords.box_)
            .field("dim", &self.rows.len())
            .field("rows", &self.elements().iter().map(|e| e.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl SubspaceBasis {
    pub fn zero(box_: &[u32]) -> Self {
        SubspaceBasis { coords: FlatCoordinates::new(box_), rows: Vec::new(), pivots: Vec::new() }
    }

    /// The whole coordinate space of the box.
    pub fn full(box_: &[u32]) -> Self {
        let coords = FlatCoordinates::new(box_);
        let n = coords.len();
        let rows = (0..n).map(|k| unit_vector(n, k)).collect();
        SubspaceBasis { coords, rows, pivots: (0..n).collect() }
    }

    pub fn from_vectors<I>(box_: &[u32], vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut s = Self::zero(box_);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn echelonize(vectors: &[MultiElement], box_: &[u32]) -> Result<Self> {
        let mut s = Self::zero(box_);
        for v in vectors {
            let coords = s.coords.vectorize(v)?;
            s.insert(coords);
        }
        Ok(s)
    }

    pub fn coords(&self) -> &FlatCoordinates {
        &self.coords
    }

    pub fn box_(&self) -> &[u32] {
        self.coords.box_()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn elements(&self) -> Vec<MultiElement> {
        self.rows.iter().map(|r| self.coords.element(r)).collect()
    }

    /// Residual of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(Zero::is_zero)
    }

    pub fn member(&self, a: &MultiElement) -> Result<bool> {
        Ok(self.contains_vector(&self.coords.vectorize(a)?))
    }

    /// Adds `v` to the span. Returns `true` when the dimension grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    fn check_box(&self, other: &SubspaceBasis) -> Result<()> {
        if self.box_() != other.box_() {
            return Err(Error::BoxMismatch { left: self.box_().to_vec(), right: other.box_().to_vec() });
        }
        Ok(())
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_box(other)?;
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        Ok(s)
    }

    /// Intersection from the kernel of the stacked system `[rows_1 | -rows_2]`.
    pub fn intersect(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_box(other)?;
        let stacked: Vec<Vec<Scalar>> = self.rows.iter().chain(&other.rows).cloned().collect();
        let mut out = SubspaceBasis::zero(self.box_());
        for c in nullspace(&stacked) {
            out.insert(combine(&self.rows, &c[..self.rows.len()], self.coords.len()));
        }
        Ok(out)
    }

    pub fn subspace_eq(&self, other: &SubspaceBasis) -> Result<bool> {
        self.check_box(other)?;
        Ok(self.dim() == other.dim() && self.is_subspace_of(other)? && other.is_subspace_of(self)?)
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> Result<bool> {
        self.check_box(other)?;
        Ok(self.rows.iter().all(|r| other.contains_vector(r)))
    }

    /// Basis of `{v in self : v[k] = 0 for every k in zero_coords}`.
    pub fn vanishing_on(&self, zero_coords: &[usize]) -> Vec<Vec<Scalar>> {
        if zero_coords.is_empty() {
            return self.rows.clone();
        }
        let restricted: Vec<Vec<Scalar>> =
            self.rows.iter().map(|r| zero_coords.iter().map(|&k| r[k].clone()).collect()).collect();
        nullspace(&restricted)
            .into_iter()
            .map(|c| combine(&self.rows, &c, self.coords.len()))
            .collect()
    }

    /// Image under truncation to a smaller box.
    pub fn project(&self, box_: &[u32]) -> SubspaceBasis {
        let target = FlatCoordinates::new(box_);
        let mut out = SubspaceBasis { coords: target, rows: Vec::new(), pivots: Vec::new() };
        for r in &self.rows {
            let v = self.transfer(r, &out.coords);
            out.insert(v);
        }
        out
    }

    /// Image under the projection onto a subset of branches.
    pub fn restrict_branches(&self, branches: &[usize]) -> SubspaceBasis {
        let box_: Vec<u32> = branches.iter().map(|&i| self.box_()[i]).collect();
        let target = FlatCoordinates::new(&box_);
        let mut out = SubspaceBasis { coords: target, rows: Vec::new(), pivots: Vec::new() };
        for r in &self.rows {
            let mut v = vec![Scalar::zero(); out.coords.len()];
            for (new_i, &old_i) in branches.iter().enumerate() {
                for e in 0..box_[new_i] {
                    let src = self.coords.index(old_i, e).expect("inside box");
                    let dst = out.coords.index(new_i, e).expect("inside box");
                    v[dst] = r[src].clone();
                }
            }
            out.insert(v);
        }
        out
    }

    /// Copies the coefficients of `v` into another box, dropping or
    /// zero-filling positions as needed.
    pub fn transfer(&self, v: &[Scalar], target: &FlatCoordinates) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); target.len()];
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (i, e) = self.coords.position(k);
            if let Some(dst) = target.index(i, e) {
                out[dst] = c.clone();
            }
        }
        out
    }
}

/// Smallest subspace of the box containing 1 and closed under
/// multiplication by each generator (followed by truncation).
pub fn multiplicative_closure(generators: &[MultiElement], box_: &[u32]) -> Result<SubspaceBasis> {
    let coords = FlatCoordinates::new(box_);
    let gens = generators.iter().map(|g| coords.vectorize(g)).collect::<Result<Vec<_>>>()?;
    let mut span = SubspaceBasis { coords: coords.clone(), rows: Vec::new(), pivots: Vec::new() };
    let one = coords.vectorize(&MultiElement::one(box_.len()).truncate(box_)?)?;
    let mut frontier = Vec::new();
    if span.insert(one.clone()) {
        frontier.push(one);
    }
    while let Some(v) = frontier.pop() {
        for g in &gens {
            let p = coords.multiply(&v, g);
            if span.insert(p.clone()) {
                frontier.push(p);
            }
        }
    }
    Ok(span)
}

pub(crate) fn unit_vector(n: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[k] = Scalar::one();
    v
}

fn combine(rows: &[Vec<Scalar>], coeffs: &[Scalar], n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (row, c) in rows.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (x, r) in out.iter_mut().zip(row) {
            if !r.is_zero() {
                *x += c * r;
            }
        }
    }
    out
}

/// All coefficient vectors `c` with `sum_j c_j * vectors[j] = 0`, as a basis.
pub fn nullspace(vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let m = vectors.len();
    if m == 0 {
        return Vec::new();
    }
    let n = vectors[0].len();
    // Columns are the input vectors; eliminate on the transposed system.
    let mut a: Vec<Vec<Scalar>> = (0..n).map(|r| vectors.iter().map(|v| v[r].clone()).collect()).collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..m {
        let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[row].clone();
        for (r, target) in a.iter_mut().enumerate() {
            if r == row || target[col].is_zero() {
                continue;
            }
            let factor = target[col].clone();
            for (x, s) in target.iter_mut().zip(&pivot_row) {
                if !s.is_zero() {
                    *x -= &factor * s;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..m).filter(|c| !pivot_cols.contains(c)) {
        let mut c = vec![Scalar::zero(); m];
        c[free] = Scalar::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            c[pc] = -a[r][free].clone();
        }
        basis.push(c);
    }
    basis
}
