//! Colorings of E^k: total, pure maps from exact points to `0..colors`.

pub mod expr;
pub mod spec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::lattice::GridColoring;

pub use expr::{parse_expr, Expr};
pub use spec::{parse_coloring_spec, ColoringSpec};

#[derive(Clone, Debug, PartialEq)]
pub enum ColoringKind {
    Constant(u32),
    /// A finite tile repeated over all of space, looked up by the floors of
    /// the coordinates.
    PeriodicTile(GridColoring),
    /// `(Σ wᵢ·⌊xᵢ⌋ + offset) mod colors`.
    LinearFloorMod { weights: Vec<BigInt>, offset: BigInt },
    Expression { source: String, expr: Expr },
    /// A loaded image grid, extended periodically like a tile.
    GridImage(GridColoring),
    /// Keyed hash of integer coordinates; undefined off the lattice.
    SeededRandom { seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Coloring {
    kind: ColoringKind,
    colors: u32,
}

impl Coloring {
    pub fn new(kind: ColoringKind, colors: u32) -> Result<Self> {
        if colors == 0 {
            return Err(Error::NoColors);
        }
        match &kind {
            ColoringKind::Constant(c) if *c >= colors => {
                return Err(Error::ColorOutOfRange {
                    color: *c as u64,
                    colors,
                })
            }
            ColoringKind::PeriodicTile(g) | ColoringKind::GridImage(g) if g.colors() > colors => {
                return Err(Error::ColorOutOfRange {
                    color: g.colors() as u64 - 1,
                    colors,
                })
            }
            ColoringKind::LinearFloorMod { weights, .. } if weights.is_empty() => {
                return Err(Error::invalid("linear coloring needs at least one weight"))
            }
            _ => {}
        }
        Ok(Coloring { kind, colors })
    }

    pub fn constant(color: u32, colors: u32) -> Result<Self> {
        Self::new(ColoringKind::Constant(color), colors)
    }

    /// `(⌊x₁⌋ + … + ⌊x_dim⌋) mod 2`.
    pub fn checkerboard(dim: usize) -> Self {
        Self::linear(vec![1; dim.max(1)], 0, 2).expect("valid")
    }

    pub fn linear(weights: Vec<i64>, offset: i64, colors: u32) -> Result<Self> {
        Self::new(
            ColoringKind::LinearFloorMod {
                weights: weights.into_iter().map(BigInt::from).collect(),
                offset: offset.into(),
            },
            colors,
        )
    }

    pub fn seeded_random(seed: u64, colors: u32) -> Result<Self> {
        Self::new(ColoringKind::SeededRandom { seed }, colors)
    }

    pub fn tile(tile: GridColoring) -> Result<Self> {
        let colors = tile.colors();
        Self::new(ColoringKind::PeriodicTile(tile), colors)
    }

    pub fn image(grid: GridColoring) -> Result<Self> {
        let colors = grid.colors();
        Self::new(ColoringKind::GridImage(grid), colors)
    }

    /// Parses an expression. The color count is taken from `colors`, else
    /// from a top-level `mod <literal>`, else from a constant value.
    pub fn expression(text: &str, colors: Option<u32>) -> Result<Self> {
        let parsed = parse_expr(text)?;
        let inferred = match &parsed {
            Expr::Mod(_, m) => match m.as_ref() {
                Expr::Int(n) => n.to_u32().filter(|&k| k > 0),
                _ => None,
            },
            Expr::Int(v) => v.to_u32().and_then(|v| v.checked_add(1)),
            _ => None,
        };
        let expr = parsed.simplify()?;
        let inferred = inferred.or(match &expr {
            Expr::Int(v) => v.to_u32().and_then(|v| v.checked_add(1)),
            _ => None,
        });
        let colors = colors.or(inferred).ok_or_else(|| {
            Error::invalid(format!(
                "cannot infer a color count for `{text}`; give one explicitly"
            ))
        })?;
        Self::new(
            ColoringKind::Expression {
                source: text.to_string(),
                expr,
            },
            colors,
        )
    }

    pub fn kind(&self) -> &ColoringKind {
        &self.kind
    }

    pub fn colors(&self) -> u32 {
        self.colors
    }

    /// Color of `point`, evaluated exactly.
    pub fn color(&self, point: &Point) -> Result<u32> {
        let coords = point.coords();
        match &self.kind {
            ColoringKind::Constant(c) => Ok(*c),
            ColoringKind::PeriodicTile(g) | ColoringKind::GridImage(g) => {
                check_dim(g.dim(), coords.len())?;
                let cell = floors_i64(point)?;
                Ok(g.color_wrapped(&cell))
            }
            ColoringKind::LinearFloorMod { weights, offset } => {
                check_dim(weights.len(), coords.len())?;
                let total = weights
                    .iter()
                    .zip(coords)
                    .fold(offset.clone(), |acc, (w, c)| acc + w * c.floor());
                Ok(self.reduce(&total))
            }
            ColoringKind::Expression { expr, .. } => {
                let v = expr.eval(coords)?;
                let n = v.as_integer().ok_or_else(|| Error::NonIntegerColor(v.to_string()))?;
                Ok(self.reduce(&n))
            }
            ColoringKind::SeededRandom { seed } => {
                let ints = point.to_integers().ok_or_else(|| Error::InexactEvaluation {
                    point: point.to_string(),
                    reason: "random colorings are defined on integer points only".into(),
                })?;
                Ok((keyed_hash(*seed, &ints) % self.colors as u64) as u32)
            }
        }
    }

    pub fn color_of_ints(&self, coords: &[i64]) -> Result<u32> {
        self.color(&Point::from_ints(coords))
    }

    /// Samples the coloring on the integer points of a box.
    pub fn sample_grid(&self, sides: Vec<usize>) -> Result<GridColoring> {
        GridColoring::from_fn(sides, self.colors, |p| self.color_of_ints(p))
    }

    fn reduce(&self, n: &BigInt) -> u32 {
        n.mod_floor(&BigInt::from(self.colors))
            .to_u32()
            .expect("residue below color count")
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn floors_i64(point: &Point) -> Result<Vec<i64>> {
    point
        .coords()
        .iter()
        .map(|c| {
            c.floor().to_i64().ok_or_else(|| Error::InexactEvaluation {
                point: point.to_string(),
                reason: "coordinate out of range".into(),
            })
        })
        .collect()
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stable across platforms and releases.
fn keyed_hash(seed: u64, coords: &[BigInt]) -> u64 {
    let mut h = mix(seed ^ coords.len() as u64);
    for c in coords {
        let bytes = if c.is_zero() { vec![0] } else { c.to_signed_bytes_le() };
        h = mix(h ^ bytes.len() as u64);
        for chunk in bytes.chunks(8) {
            let mut word = [0u8; 8];
            word[..chunk.len()].copy_from_slice(chunk);
            h = mix(h ^ u64::from_le_bytes(word));
        }
    }
    h
}
