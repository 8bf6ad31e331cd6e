//! Difference sets, the difference lattice, and families of disjoint
//! monochromatic copies.

pub mod family;
pub mod hermite;

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};

pub use family::{
    build_family, verify_family, CopyFamily, FamilyBudget, FamilyMode, Member, SharedShift,
    VerificationReport, Violation,
};
pub use hermite::{difference_lattice, hermite_form, lattice_member, DifferenceLattice};

/// Nonzero differences `s - s'` between points of a set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DifferenceSet {
    dim: usize,
    deltas: Vec<Point>,
}

impl DifferenceSet {
    /// Every ordered pair of distinct points, the origin included.
    pub fn new(set: &PointSet) -> Result<Self> {
        Self::from_points(set.dim(), set.points())
    }

    /// Only the pairs among the nonzero points `y_1, …, y_{n-1}`. Kept for
    /// comparison; it omits the differences against the origin.
    pub fn literal(set: &PointSet) -> Result<Self> {
        Self::from_points(set.dim(), set.generators())
    }

    fn from_points(dim: usize, points: &[Point]) -> Result<Self> {
        let mut deltas: Vec<Point> = Vec::new();
        for p in points {
            for q in points {
                let d = p.try_sub(q)?;
                if !d.is_origin() && !deltas.contains(&d) {
                    deltas.push(d);
                }
            }
        }
        Ok(DifferenceSet { dim, deltas })
    }

    pub fn deltas(&self) -> &[Point] {
        &self.deltas
    }

    /// Whether `v = m·δ` for an integer `m` and some delta `δ` (or `v = 0`).
    pub fn contains(&self, v: &Point) -> Result<bool> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        if v.is_origin() {
            return Ok(true);
        }
        Ok(self.deltas.iter().any(|d| integer_multiple(v, d)))
    }
}

fn integer_multiple(v: &Point, delta: &Point) -> bool {
    let Some(i) = delta.coords().iter().position(|c| !c.is_zero()) else {
        return false;
    };
    let Ok(m) = v.coords()[i].try_div(&delta.coords()[i]) else {
        return false;
    };
    if !m.is_integer() {
        return false;
    }
    matches!(delta.try_scale(&m), Ok(scaled) if scaled == *v)
}

/// Membership in the set 𝒴 of integer multiples of pairwise differences.
#[allow(non_snake_case)]
pub fn in_Y(set: &PointSet, v: &Point) -> Result<bool> {
    DifferenceSet::new(set)?.contains(v)
}

/// `p ∼ q` iff `p - q ∈ 𝒴`. Reflexive and symmetric, not transitive.
pub fn related(set: &PointSet, p: &Point, q: &Point) -> Result<bool> {
    in_Y(set, &p.try_sub(q)?)
}
