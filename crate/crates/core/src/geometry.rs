//! Points, finite configurations and homotheties with exact coordinates.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{merge_radicands, QuadScalar};

/// A point of E^k. All coordinates live in one quadratic field.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Point {
    coords: Vec<QuadScalar>,
}

impl Point {
    pub fn new(coords: Vec<QuadScalar>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid("a point needs at least one coordinate"));
        }
        coords
            .iter()
            .try_fold(1, |d, c| merge_radicands(d, c.radicand()))?;
        Ok(Point { coords })
    }

    pub fn origin(dim: usize) -> Self {
        Point {
            coords: vec![QuadScalar::zero(); dim.max(1)],
        }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| QuadScalar::from_int(c)).collect())
            .expect("integer coordinates")
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[QuadScalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<QuadScalar> {
        self.coords
    }

    /// Radicand of the field the coordinates live in (1 when rational).
    pub fn radicand(&self) -> u64 {
        self.coords
            .iter()
            .map(QuadScalar::radicand)
            .find(|&d| d != 1)
            .unwrap_or(1)
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(QuadScalar::is_zero)
    }

    fn check_dim(&self, other: &Point) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Point) -> Result<Point> {
        self.check_dim(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_>>()?;
        Ok(Point { coords })
    }

    pub fn try_sub(&self, other: &Point) -> Result<Point> {
        self.check_dim(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.try_sub(b))
            .collect::<Result<_>>()?;
        Ok(Point { coords })
    }

    pub fn try_scale(&self, k: &QuadScalar) -> Result<Point> {
        let coords = self
            .coords
            .iter()
            .map(|c| k.try_mul(c))
            .collect::<Result<_>>()?;
        Ok(Point { coords })
    }

    pub fn neg(&self) -> Point {
        Point {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Integer coordinates, if every coordinate is an integer.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coords.iter().map(QuadScalar::as_integer).collect()
    }

    pub fn to_i64s(&self) -> Result<Vec<i64>> {
        self.to_integers()
            .and_then(|v| v.iter().map(ToPrimitive::to_i64).collect())
            .ok_or_else(|| Error::NonIntegerPoint(self.to_string()))
    }

    pub fn to_f64s(&self) -> Vec<f64> {
        self.coords.iter().map(QuadScalar::to_f64).collect()
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<QuadScalar>::deserialize(d)?;
        Point::new(coords).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite configuration in canonical form: distinct points, the
/// lexicographically smallest one moved to the origin and listed first,
/// the rest in input order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The nonzero points `y_1, …, y_{n-1}`.
    pub fn generators(&self) -> &[Point] {
        &self.points[1..]
    }

    pub fn radicand(&self) -> u64 {
        self.points
            .iter()
            .map(Point::radicand)
            .find(|&d| d != 1)
            .unwrap_or(1)
    }

    pub fn is_rational(&self) -> bool {
        self.radicand() == 1
    }

    pub fn integer_points(&self) -> Result<Vec<Vec<i64>>> {
        self.points.iter().map(Point::to_i64s).collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        make_pointset(parse_points(text)?)
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            points: Vec<Point>,
        }
        let raw = Raw::deserialize(d)?;
        let set = make_pointset(raw.points.clone()).map_err(serde::de::Error::custom)?;
        if set.points != raw.points {
            return Err(serde::de::Error::custom("point set is not canonical"));
        }
        Ok(set)
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonicalizes a raw configuration: drops duplicates, translates so the
/// lexicographically smallest point sits at the origin, and lists it first.
pub fn make_pointset(raw: Vec<Point>) -> Result<PointSet> {
    let Some(first) = raw.first() else {
        return Err(Error::EmptySet);
    };
    let dim = first.dim();
    let mut distinct: Vec<Point> = Vec::with_capacity(raw.len());
    for p in raw {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        if !distinct.contains(&p) {
            distinct.push(p);
        }
    }
    distinct
        .iter()
        .try_fold(1, |d, p| merge_radicands(d, p.radicand()))?;
    let min_at = distinct
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(i, _)| i)
        .expect("nonempty");
    let base = distinct.remove(min_at);
    let mut points = vec![Point::origin(dim)];
    for p in &distinct {
        points.push(p.try_sub(&base)?);
    }
    Ok(PointSet { points })
}

/// Parses `x,y; x,y; …` where each coordinate is an exact literal such as
/// `3`, `-1/2` or `1/2+3/4√5`. Parentheses and braces are ignored.
pub fn parse_points(text: &str) -> Result<Vec<Point>> {
    let cleaned: String = text
        .chars()
        .filter(|c| !matches!(c, '(' | ')' | '{' | '}' | '[' | ']'))
        .collect();
    cleaned
        .split([';', '\n'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|entry| {
            let coords = entry
                .split(',')
                .map(|c| c.trim().parse::<QuadScalar>())
                .collect::<Result<Vec<_>>>()?;
            Point::new(coords)
        })
        .collect()
}

/// Dimension of the affine span of `set`.
pub fn affine_dimension(set: &PointSet) -> Result<usize> {
    let rows: Vec<Vec<QuadScalar>> = set
        .generators()
        .iter()
        .map(|p| p.coords().to_vec())
        .collect();
    linalg::rank(&rows)
}

/// `x ↦ translate + scale·x` with a positive scale.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Homothety {
    pub scale: QuadScalar,
    pub translate: Point,
}

impl Homothety {
    pub fn new(scale: QuadScalar, translate: Point) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::ZeroScale);
        }
        if scale.is_negative() {
            return Err(Error::NegativeScale);
        }
        Ok(Homothety { scale, translate })
    }

    pub fn identity(dim: usize) -> Self {
        Homothety {
            scale: QuadScalar::one(),
            translate: Point::origin(dim),
        }
    }

    pub fn apply_point(&self, p: &Point) -> Result<Point> {
        p.try_scale(&self.scale)?.try_add(&self.translate)
    }
}

/// Image of `set` under `h`, listed in the order of `set`.
pub fn apply_homothety(h: &Homothety, set: &PointSet) -> Result<Vec<Point>> {
    if h.scale.is_zero() {
        return Err(Error::ZeroScale);
    }
    if h.scale.is_negative() {
        return Err(Error::NegativeScale);
    }
    set.points().iter().map(|p| h.apply_point(p)).collect()
}
