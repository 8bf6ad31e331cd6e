//! The integer span of the pairwise differences of a configuration.
//!
//! Coordinates in Q(√d) are embedded as rational vectors
//! `(rational parts, coefficients of √d)`, which is injective and
//! Q-linear, then scaled by a common denominator so the span becomes an
//! integer lattice. The basis is kept in row Hermite normal form: echelon
//! rows with positive pivots and entries above each pivot reduced into
//! `[0, pivot)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};
use crate::scalar::{QuadScalar, Rational};

use super::DifferenceSet;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DifferenceLattice {
    dim: usize,
    radicand: u64,
    scale: BigInt,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl DifferenceLattice {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Common denominator cleared from every delta.
    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// Hermite basis rows, in embedded coordinates multiplied by `scale`.
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Embedded coordinates, or `None` when `v` lives in a field the
    /// lattice does not (and therefore cannot be a member).
    fn embed(&self, v: &Point) -> Result<Option<Vec<Rational>>> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        Ok(embed_coords(v.coords(), self.radicand))
    }

    /// Exact membership of `v` in the lattice.
    pub fn contains(&self, v: &Point) -> Result<bool> {
        let Some(embedded) = self.embed(v)? else {
            return Ok(false);
        };
        let scale = Rational::from_integer(self.scale.clone());
        let mut target = Vec::with_capacity(embedded.len());
        for x in embedded {
            let scaled = x * &scale;
            if !scaled.is_integer() {
                return Ok(false);
            }
            target.push(scaled.to_integer());
        }
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let (q, r) = target[p].div_rem(&row[p]);
            if !r.is_zero() {
                return Ok(false);
            }
            if !q.is_zero() {
                for (t, b) in target.iter_mut().zip(row) {
                    *t -= &q * b;
                }
            }
        }
        Ok(target.iter().all(Zero::is_zero))
    }

    /// Canonical representative of `v` modulo the lattice, in scaled
    /// embedded coordinates: `u ≡ v` iff their residues are equal.
    pub fn residue(&self, v: &Point) -> Result<Vec<Rational>> {
        let embedded = self.embed(v)?.ok_or_else(|| {
            Error::MixedRadicand(self.radicand, v.radicand())
        })?;
        let scale = Rational::from_integer(self.scale.clone());
        let mut r: Vec<Rational> = embedded.into_iter().map(|x| x * &scale).collect();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let pivot = Rational::from_integer(row[p].clone());
            let q = (&r[p] / &pivot).floor();
            if !q.is_zero() {
                for (x, b) in r.iter_mut().zip(row) {
                    *x -= &q * Rational::from_integer(b.clone());
                }
            }
        }
        Ok(r)
    }
}

fn embed_coords(coords: &[QuadScalar], radicand: u64) -> Option<Vec<Rational>> {
    let mut out: Vec<Rational> = coords.iter().map(|c| c.rational_part().clone()).collect();
    let irrational = coords.iter().any(|c| !c.is_rational());
    if radicand == 1 {
        return (!irrational).then_some(out);
    }
    for c in coords {
        if !c.is_rational() && c.radicand() != radicand {
            return None;
        }
        out.push(c.irrational_coef().clone());
    }
    Some(out)
}

/// Row Hermite normal form of the integer span of `rows`; returns the
/// nonzero basis rows and their pivot columns.
pub fn hermite_form(rows: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let width = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == m.len() {
            break;
        }
        // Euclid down the column until a single nonzero entry remains at row r
        loop {
            let best = (r..m.len())
                .filter(|&i| !m[i][col].is_zero())
                .min_by(|&i, &j| m[i][col].abs().cmp(&m[j][col].abs()));
            let Some(best) = best else { break };
            m.swap(r, best);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].div_floor(&m[r][col]);
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                if !m[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[r][col].is_zero() {
            continue;
        }
        if m[r][col].is_negative() {
            for x in m[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = m[i][col].div_floor(&m[r][col]);
            if !q.is_zero() {
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Hermite-form basis of the integer span of every pairwise difference of `set`.
pub fn difference_lattice(set: &PointSet) -> Result<DifferenceLattice> {
    let deltas = DifferenceSet::new(set)?;
    let dim = set.dim();
    let radicand = set.radicand();
    let embedded: Vec<Vec<Rational>> = deltas
        .deltas()
        .iter()
        .map(|d| embed_coords(d.coords(), radicand).expect("deltas share the set's field"))
        .collect();
    let scale = embedded
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scale_r = Rational::from_integer(scale.clone());
    let rows: Vec<Vec<BigInt>> = embedded
        .iter()
        .map(|row| row.iter().map(|x| (x * &scale_r).to_integer()).collect())
        .collect();
    let (basis, pivots) = hermite_form(&rows);
    Ok(DifferenceLattice {
        dim,
        radicand,
        scale,
        basis,
        pivots,
    })
}

/// Whether `v` lies in the integer span of the differences behind `lattice`.
pub fn lattice_member(lattice: &DifferenceLattice, v: &Point) -> Result<bool> {
    lattice.contains(v)
}
