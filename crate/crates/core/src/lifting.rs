//! Lifting a configuration to a simplex.
//!
//! For `S = {0, y₁, …, y_{n-1}} ⊂ E^k`, the matrix `A` with columns `yⱼ`
//! defines `T(v) = A·v`, sending the simplex `U = {0, u₁, …, u_{n-1}}` of
//! E^{n-1} onto `S`. A coloring χ of E^k pulls back to the coset
//! `e + (rZ)^{n-1}` as `z ↦ χ(T(r·z + e))`, and a monochromatic copy
//! `r·a·U + d + e` there maps to the monochromatic copy
//! `r·a·S + T(d + e)` of `S`.

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::geometry::{affine_dimension, apply_homothety, Homothety, Point, PointSet};
use crate::linalg;
use crate::scalar::{QuadScalar, Rational};

/// `k × (n-1)` matrix whose columns are the nonzero points of `S`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EmbeddingMatrix {
    rows: Vec<Vec<QuadScalar>>,
}

impl EmbeddingMatrix {
    /// Ambient dimension `k`.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Simplex dimension `n - 1`.
    pub fn arity(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<QuadScalar>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<QuadScalar> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    /// `T(v) = A·v`, exactly.
    pub fn apply(&self, v: &[QuadScalar]) -> Result<Point> {
        if v.len() != self.arity() {
            return Err(Error::DimensionMismatch {
                expected: self.arity(),
                found: v.len(),
            });
        }
        let coords = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .try_fold(QuadScalar::zero(), |acc, (a, x)| acc.try_add(&a.try_mul(x)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Point::new(coords)
    }

    /// Some `v` with `T(v) = p`; exists for every `p` because `A` has full rank.
    pub fn preimage(&self, p: &Point) -> Result<Vec<QuadScalar>> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: p.dim(),
            });
        }
        linalg::solve(&self.rows, p.coords())?
            .ok_or_else(|| Error::invalid("target outside the image of T"))
    }
}

pub fn build_matrix(set: &PointSet) -> Result<EmbeddingMatrix> {
    let dim = set.dim();
    let rank = affine_dimension(set)?;
    if rank < dim {
        return Err(Error::DegenerateConfiguration { rank, dim });
    }
    let rows = (0..dim)
        .map(|i| set.generators().iter().map(|y| y.coords()[i].clone()).collect())
        .collect();
    Ok(EmbeddingMatrix { rows })
}

/// `T(v) = A·v`.
pub fn apply_t(matrix: &EmbeddingMatrix, v: &[QuadScalar]) -> Result<Point> {
    matrix.apply(v)
}

/// The simplex `{0, u₁, …, u_m}` as integer vectors.
pub fn simplex(arity: usize) -> Vec<Vec<i64>> {
    std::iter::once(vec![0; arity])
        .chain((0..arity).map(|j| {
            let mut u = vec![0; arity];
            u[j] = 1;
            u
        }))
        .collect()
}

/// The coset `e + (rZ)^{n-1}` with `e = r·t` and `t ∈ [0,1)^{n-1}` rational.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CosetIndex {
    pitch: QuadScalar,
    #[serde(with = "rational_vec")]
    fractions: Vec<Rational>,
}

mod rational_vec {
    use super::Rational;
    use crate::scalar::rational_serde;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(rational_serde::encode).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<(String, String)>::deserialize(d)?
            .iter()
            .map(|p| rational_serde::decode(p).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl CosetIndex {
    pub fn new(pitch: QuadScalar, fractions: Vec<Rational>) -> Result<Self> {
        if !pitch.is_positive() {
            return Err(Error::invalid(format!("coset pitch {pitch} must be positive")));
        }
        let zero = Rational::from_integer(0.into());
        let one = Rational::from_integer(1.into());
        if let Some(t) = fractions.iter().find(|t| **t < zero || **t >= one) {
            return Err(Error::invalid(format!("coset offset fraction {t} outside [0, 1)")));
        }
        Ok(CosetIndex { pitch, fractions })
    }

    /// The zero coset of `(rZ)^m`.
    pub fn origin(pitch: QuadScalar, arity: usize) -> Result<Self> {
        Self::new(pitch, vec![Rational::from_integer(0.into()); arity])
    }

    pub fn pitch(&self) -> &QuadScalar {
        &self.pitch
    }

    /// `e / r`, each entry in `[0, 1)`.
    pub fn fractions(&self) -> &[Rational] {
        &self.fractions
    }

    pub fn offset(&self) -> Vec<QuadScalar> {
        self.fractions.iter().map(|t| self.pitch.scale(t)).collect()
    }

    /// `r·z + e`.
    pub fn lattice_point(&self, z: &[i64]) -> Vec<QuadScalar> {
        z.iter()
            .zip(&self.fractions)
            .map(|(&zi, t)| self.pitch.scale(&(Rational::from_integer(zi.into()) + t)))
            .collect()
    }
}

/// `z ↦ χ(T(r·z + e))` on integer vectors `z`.
pub struct Pullback<'a> {
    coloring: &'a Coloring,
    matrix: &'a EmbeddingMatrix,
    coset: &'a CosetIndex,
}

impl Pullback<'_> {
    pub fn point(&self, z: &[i64]) -> Result<Point> {
        self.matrix.apply(&self.coset.lattice_point(z))
    }

    pub fn color(&self, z: &[i64]) -> Result<u32> {
        self.coloring.color(&self.point(z)?)
    }
}

pub fn pullback_color<'a>(
    coloring: &'a Coloring,
    matrix: &'a EmbeddingMatrix,
    coset: &'a CosetIndex,
) -> Result<Pullback<'a>> {
    if coset.fractions.len() != matrix.arity() {
        return Err(Error::DimensionMismatch {
            expected: matrix.arity(),
            found: coset.fractions.len(),
        });
    }
    Ok(Pullback {
        coloring,
        matrix,
        coset,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CosetBudget {
    pub a_max: u64,
    /// Bound on `‖d / r‖∞`.
    pub d_max: u64,
}

/// A monochromatic copy `r·a·U + d + e` inside one coset.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CosetWitness {
    pub a: u64,
    /// `d / r`, an integer vector.
    pub steps: Vec<i64>,
    pub coset: CosetIndex,
    pub color: u32,
}

impl CosetWitness {
    /// `d = r·steps`.
    pub fn d(&self) -> Vec<QuadScalar> {
        self.steps
            .iter()
            .map(|&s| self.coset.pitch.scale(&Rational::from_integer(s.into())))
            .collect()
    }

    /// Lattice coordinates `z` of the simplex copy in its coset.
    pub fn lattice_copy(&self) -> Vec<Vec<i64>> {
        simplex(self.steps.len())
            .into_iter()
            .map(|u| u.iter().zip(&self.steps).map(|(ui, s)| s + self.a as i64 * ui).collect())
            .collect()
    }
}

/// Integer vectors of length `arity` with `‖z‖∞ = radius`, in lexicographic order.
pub fn shell(arity: usize, radius: u64) -> impl Iterator<Item = Vec<i64>> {
    let r = radius as i64;
    let side = 2 * radius + 1;
    let total = (side as usize).checked_pow(arity as u32).unwrap_or(usize::MAX);
    (0..total).filter_map(move |mut code| {
        let mut z = vec![0i64; arity];
        for j in (0..arity).rev() {
            z[j] = (code % side as usize) as i64 - r;
            code /= side as usize;
        }
        z.iter().any(|c| c.abs() == r).then_some(z)
    })
}

/// Vectors `d / r` in search order: by ∞-norm shell, then lexicographically.
pub fn steps_in_order(arity: usize, d_max: u64) -> impl Iterator<Item = Vec<i64>> {
    (0..=d_max).flat_map(move |radius| shell(arity, radius))
}

/// Whether `r·a·U + r·steps + e` is monochromatic, and in which color.
pub fn simplex_color(pullback: &Pullback<'_>, a: u64, steps: &[i64]) -> Result<Option<u32>> {
    let base = pullback.color(steps)?;
    for j in 0..steps.len() {
        let mut z = steps.to_vec();
        z[j] += a as i64;
        if pullback.color(&z)? != base {
            return Ok(None);
        }
    }
    Ok(Some(base))
}

/// First `(a, d)` in `(a, shell, lexicographic)` order whose simplex copy in
/// the coset is monochromatic.
pub fn coset_search(
    coloring: &Coloring,
    matrix: &EmbeddingMatrix,
    coset: &CosetIndex,
    budget: CosetBudget,
) -> Result<CosetWitness> {
    if budget.a_max == 0 {
        return Err(Error::invalid("a_max must be at least 1"));
    }
    let pullback = pullback_color(coloring, matrix, coset)?;
    for a in 1..=budget.a_max {
        for steps in steps_in_order(matrix.arity(), budget.d_max) {
            if let Some(color) = simplex_color(&pullback, a, &steps)? {
                return Ok(CosetWitness {
                    a,
                    steps,
                    coset: coset.clone(),
                    color,
                });
            }
        }
    }
    Err(Error::BudgetExhausted(format!(
        "no monochromatic simplex with a <= {} and |d/r| <= {} in coset e/r = {:?}",
        budget.a_max, budget.d_max, coset.fractions
    )))
}

/// A homothetic copy of `S` together with the map that produced it.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct RealizedCopy {
    pub homothety: Homothety,
    pub points: Vec<Point>,
}

/// `T(r·a·U + d + e) = r·a·S + T(d + e)`.
pub fn realize_copy(
    matrix: &EmbeddingMatrix,
    witness: &CosetWitness,
    set: &PointSet,
) -> Result<RealizedCopy> {
    let pitch = &witness.coset.pitch;
    let scale = pitch.try_mul(&QuadScalar::from_int(witness.a as i64))?;
    let shift: Vec<QuadScalar> = witness
        .d()
        .iter()
        .zip(witness.coset.offset())
        .map(|(d, e)| d.try_add(&e))
        .collect::<Result<_>>()?;
    let homothety = Homothety::new(scale.clone(), matrix.apply(&shift)?)?;
    let points = apply_homothety(&homothety, set)?;
    let lifted = simplex_image(matrix, &scale, &shift)?;
    assert_eq!(points, lifted, "T(raU + d + e) must equal raS + T(d + e)");
    Ok(RealizedCopy { homothety, points })
}

/// `T(scale·U + shift)`, listed in the order `T(shift), T(scale·u₁ + shift), …`.
pub fn simplex_image(
    matrix: &EmbeddingMatrix,
    scale: &QuadScalar,
    shift: &[QuadScalar],
) -> Result<Vec<Point>> {
    simplex(matrix.arity())
        .iter()
        .map(|u| {
            let v = u
                .iter()
                .zip(shift)
                .map(|(&ui, s)| scale.try_mul(&QuadScalar::from_int(ui))?.try_add(s))
                .collect::<Result<Vec<_>>>()?;
            matrix.apply(&v)
        })
        .collect()
}
