//! Monochromatic homothetic copies in finite colored grids.
//!
//! A grid is the box `{0..sides[0]} × … × {0..sides[n-1]}` with cells in
//! row-major order (first coordinate most significant). Copies `a + b·S`
//! must lie fully inside the box and use a scale `b ≥ 1`; witnesses are
//! minimal in the order (b, then a lexicographically).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::PointSet;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawGrid")]
pub struct GridColoring {
    sides: Vec<usize>,
    colors: u32,
    cells: Vec<u32>,
}

#[derive(Deserialize)]
struct RawGrid {
    sides: Vec<usize>,
    colors: u32,
    cells: Vec<u32>,
}

impl TryFrom<RawGrid> for GridColoring {
    type Error = Error;

    fn try_from(raw: RawGrid) -> Result<Self> {
        GridColoring::new(raw.sides, raw.colors, raw.cells)
    }
}

impl GridColoring {
    pub fn new(sides: Vec<usize>, colors: u32, cells: Vec<u32>) -> Result<Self> {
        if sides.is_empty() {
            return Err(Error::invalid("grid needs at least one dimension"));
        }
        if colors == 0 {
            return Err(Error::NoColors);
        }
        let volume = volume(&sides)?;
        if cells.len() != volume {
            return Err(Error::invalid(format!(
                "grid of shape {sides:?} needs {volume} cells, got {}",
                cells.len()
            )));
        }
        if let Some(&bad) = cells.iter().find(|&&c| c >= colors) {
            return Err(Error::ColorOutOfRange {
                color: bad as u64,
                colors,
            });
        }
        Ok(GridColoring {
            sides,
            colors,
            cells,
        })
    }

    /// A cube of the given side and dimension.
    pub fn cube(dim: usize, side: usize, colors: u32, cells: Vec<u32>) -> Result<Self> {
        Self::new(vec![side; dim], colors, cells)
    }

    /// Builds a grid by evaluating `f` at every cell.
    pub fn from_fn(
        sides: Vec<usize>,
        colors: u32,
        mut f: impl FnMut(&[i64]) -> Result<u32>,
    ) -> Result<Self> {
        let volume = volume(&sides)?;
        let mut cells = Vec::with_capacity(volume);
        let mut coord = vec![0i64; sides.len()];
        for _ in 0..volume {
            cells.push(f(&coord)?);
            advance(&mut coord, &sides);
        }
        Self::new(sides, colors, cells)
    }

    pub fn dim(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[usize] {
        &self.sides
    }

    /// Common side length when the grid is a cube.
    pub fn side(&self) -> Option<usize> {
        let s = self.sides[0];
        self.sides.iter().all(|&x| x == s).then_some(s)
    }

    pub fn colors(&self) -> u32 {
        self.colors
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn contains(&self, coord: &[i64]) -> bool {
        coord.len() == self.sides.len()
            && coord
                .iter()
                .zip(&self.sides)
                .all(|(&c, &s)| c >= 0 && (c as usize) < s)
    }

    pub fn index(&self, coord: &[i64]) -> Option<usize> {
        if !self.contains(coord) {
            return None;
        }
        Some(
            coord
                .iter()
                .zip(&self.sides)
                .fold(0usize, |acc, (&c, &s)| acc * s + c as usize),
        )
    }

    pub fn color_at(&self, coord: &[i64]) -> Option<u32> {
        self.index(coord).map(|i| self.cells[i])
    }

    /// Color of the cell containing `coord` after reducing each coordinate
    /// modulo the side length, so the grid tiles all of Z^n.
    pub fn color_wrapped(&self, coord: &[i64]) -> u32 {
        let idx = coord
            .iter()
            .zip(&self.sides)
            .fold(0usize, |acc, (&c, &s)| {
                acc * s + c.rem_euclid(s as i64) as usize
            });
        self.cells[idx]
    }
}

fn volume(sides: &[usize]) -> Result<usize> {
    sides
        .iter()
        .try_fold(1usize, |acc, &s| acc.checked_mul(s))
        .ok_or_else(|| Error::invalid("grid too large"))
}

/// Row-major odometer step over `[0, sides)`.
fn advance(coord: &mut [i64], sides: &[usize]) {
    for i in (0..coord.len()).rev() {
        coord[i] += 1;
        if (coord[i] as usize) < sides[i] {
            return;
        }
        coord[i] = 0;
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct LatticeWitness {
    pub translate: Vec<i64>,
    pub scale: u64,
    pub color: u32,
    pub points: Vec<Vec<i64>>,
}

impl LatticeWitness {
    /// Recomputes the witness from scratch against `grid` and `set`.
    pub fn recheck(&self, grid: &GridColoring, set: &PointSet) -> Result<bool> {
        let offsets = set.integer_points()?;
        if self.scale == 0 || offsets.len() != self.points.len() {
            return Ok(false);
        }
        let b = self.scale as i64;
        for (offset, point) in offsets.iter().zip(&self.points) {
            let expected: Vec<i64> = offset
                .iter()
                .zip(&self.translate)
                .map(|(s, a)| a + b * s)
                .collect();
            if &expected != point || grid.color_at(point) != Some(self.color) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn integer_offsets(grid_dim: usize, set: &PointSet) -> Result<Vec<Vec<i64>>> {
    if set.dim() != grid_dim {
        return Err(Error::DimensionMismatch {
            expected: grid_dim,
            found: set.dim(),
        });
    }
    set.integer_points()
}

/// Per-coordinate range of translates `a` for which `a + b·S` fits.
fn translate_box(offsets: &[Vec<i64>], sides: &[usize], b: i64) -> Option<Vec<(i64, i64)>> {
    (0..sides.len())
        .map(|j| {
            let lo = offsets.iter().map(|o| o[j]).min().unwrap_or(0);
            let hi = offsets.iter().map(|o| o[j]).max().unwrap_or(0);
            let from = -b * lo;
            let to = sides[j] as i64 - 1 - b * hi;
            (from <= to).then_some((from, to))
        })
        .collect()
}

fn monochromatic_at(
    grid: &GridColoring,
    offsets: &[Vec<i64>],
    translate: &[i64],
    b: i64,
) -> Option<LatticeWitness> {
    let mut color = None;
    let mut points = Vec::with_capacity(offsets.len());
    for o in offsets {
        let p: Vec<i64> = o.iter().zip(translate).map(|(s, a)| a + b * s).collect();
        let c = grid.color_at(&p)?;
        if *color.get_or_insert(c) != c {
            return None;
        }
        points.push(p);
    }
    Some(LatticeWitness {
        translate: translate.to_vec(),
        scale: b as u64,
        color: color?,
        points,
    })
}

/// Smallest monochromatic copy `a + b·S` with `1 ≤ b ≤ max_scale`, ordered by
/// `b` then `a`. Independent of the worker count.
pub fn find_copy(
    grid: &GridColoring,
    set: &PointSet,
    max_scale: u64,
) -> Result<Option<LatticeWitness>> {
    let offsets = integer_offsets(grid.dim(), set)?;
    if max_scale == 0 {
        return Err(Error::invalid("maximum scale must be at least 1"));
    }
    for b in 1..=max_scale.min(i64::MAX as u64) as i64 {
        // spans only grow with b, so once nothing fits nothing ever will
        let Some(ranges) = translate_box(&offsets, grid.sides(), b) else {
            break;
        };
        let (first_lo, first_hi) = ranges[0];
        let rest = &ranges[1..];
        let hit = (first_lo..=first_hi).into_par_iter().find_map_first(|a0| {
            let mut a: Vec<i64> = std::iter::once(a0).chain(rest.iter().map(|r| r.0)).collect();
            loop {
                if let Some(w) = monochromatic_at(grid, &offsets, &a, b) {
                    return Some(w);
                }
                // odometer over the remaining coordinates
                let mut j = a.len();
                loop {
                    if j == 1 {
                        return None;
                    }
                    j -= 1;
                    if a[j] < rest[j - 1].1 {
                        a[j] += 1;
                        break;
                    }
                    a[j] = rest[j - 1].0;
                }
            }
        });
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

/// True iff no monochromatic copy of `set` fits in `grid`, by plain
/// enumeration of every scale and every translate in the box.
pub fn certify_avoiding(grid: &GridColoring, set: &PointSet) -> Result<bool> {
    let offsets = integer_offsets(grid.dim(), set)?;
    let max_side = *grid.sides().iter().max().expect("nonempty") as i64;
    for b in 1..=max_side.max(1) {
        let mut a = vec![0i64; grid.dim()];
        for _ in 0..grid.cells().len() {
            let mut first = None;
            let mut mono = true;
            for o in &offsets {
                let p: Vec<i64> = o.iter().zip(&a).map(|(s, t)| t + b * s).collect();
                match grid.color_at(&p) {
                    None => {
                        mono = false;
                        break;
                    }
                    Some(c) => {
                        if *first.get_or_insert(c) != c {
                            mono = false;
                            break;
                        }
                    }
                }
            }
            if mono {
                return Ok(false);
            }
            advance(&mut a, grid.sides());
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ThresholdStatus {
    /// Every coloring of this side contains a copy; the side below does not.
    Resolved { side: usize },
    /// An avoiding coloring exists at this side.
    Unresolved { bound: usize },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub status: ThresholdStatus,
    /// Avoiding coloring of side `N - 1` (resolved) or of the bound
    /// (unresolved); absent when the threshold is 1.
    pub certificate: Option<GridColoring>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ThresholdOptions {
    /// Only explore colorings whose colors appear in first-use order.
    pub canonical_colors: bool,
}

/// Least side `N ≤ max_side` such that every `colors`-coloring of the
/// `N`-cube contains a monochromatic copy of `set`.
pub fn gallai_number(
    set: &PointSet,
    colors: u32,
    max_side: usize,
    options: ThresholdOptions,
) -> Result<ThresholdResult> {
    if colors == 0 {
        return Err(Error::NoColors);
    }
    if colors > u8::MAX as u32 {
        return Err(Error::invalid("at most 255 colors are supported"));
    }
    if max_side == 0 {
        return Err(Error::invalid("maximum side must be at least 1"));
    }
    let offsets = set.integer_points()?;
    let dim = set.dim();
    let mut previous: Option<GridColoring> = None;
    for side in 1..=max_side {
        let search = CubeSearch::new(&offsets, dim, side, colors as u8, options)?;
        match search.first_avoiding() {
            None => {
                return Ok(ThresholdResult {
                    status: ThresholdStatus::Resolved { side },
                    certificate: previous,
                })
            }
            Some(cells) => {
                let cells = cells.into_iter().map(u32::from).collect();
                previous = Some(GridColoring::cube(dim, side, colors, cells)?);
            }
        }
    }
    Ok(ThresholdResult {
        status: ThresholdStatus::Unresolved { bound: max_side },
        certificate: previous,
    })
}

/// Depth-first search for the lexicographically first avoiding coloring of
/// one cube. Each copy is checked once, at the cell that is last in
/// row-major order.
struct CubeSearch {
    cell_count: usize,
    colors: u8,
    canonical: bool,
    /// For each cell, the other cells of every copy ending at it.
    closing: Vec<Vec<Vec<u32>>>,
}

impl CubeSearch {
    fn new(
        offsets: &[Vec<i64>],
        dim: usize,
        side: usize,
        colors: u8,
        options: ThresholdOptions,
    ) -> Result<Self> {
        let sides = vec![side; dim];
        let cell_count = volume(&sides)?;
        let index = |p: &[i64]| p.iter().fold(0usize, |acc, &c| acc * side + c as usize);
        let mut closing = vec![Vec::new(); cell_count];
        for b in 1..=side.max(1) as i64 {
            let Some(ranges) = translate_box(offsets, &sides, b) else {
                break;
            };
            let box_sides: Vec<usize> = ranges.iter().map(|(lo, hi)| (hi - lo + 1) as usize).collect();
            let mut step = vec![0i64; dim];
            for _ in 0..volume(&box_sides)? {
                let mut cells: Vec<u32> = offsets
                    .iter()
                    .map(|o| {
                        let p: Vec<i64> = (0..dim).map(|j| ranges[j].0 + step[j] + b * o[j]).collect();
                        index(&p) as u32
                    })
                    .collect();
                cells.sort_unstable();
                let last = cells.pop().expect("nonempty set") as usize;
                closing[last].push(cells);
                advance(&mut step, &box_sides);
            }
        }
        Ok(CubeSearch {
            cell_count,
            colors,
            canonical: options.canonical_colors,
            closing,
        })
    }

    /// Colors allowed at `pos` given the colors already placed.
    fn choices(&self, pos: usize, used: u8) -> u8 {
        if pos == 0 {
            1
        } else if self.canonical {
            (used + 1).min(self.colors)
        } else {
            self.colors
        }
    }

    fn closes_copy(&self, cells: &[u8], pos: usize, color: u8) -> bool {
        self.closing[pos]
            .iter()
            .any(|others| others.iter().all(|&o| cells[o as usize] == color))
    }

    fn extend(&self, cells: &mut Vec<u8>, used: u8) -> bool {
        let pos = cells.len();
        if pos == self.cell_count {
            return true;
        }
        for color in 0..self.choices(pos, used) {
            if self.closes_copy(cells, pos, color) {
                continue;
            }
            cells.push(color);
            if self.extend(cells, used.max(color + 1)) {
                return true;
            }
            cells.pop();
        }
        false
    }

    /// All valid prefixes of length `depth`, in lexicographic order.
    fn prefixes(&self, depth: usize) -> Vec<Vec<u8>> {
        let mut layer = vec![Vec::new()];
        for pos in 0..depth.min(self.cell_count) {
            let mut next = Vec::new();
            for prefix in &layer {
                let used = prefix.iter().map(|&c| c + 1).max().unwrap_or(0);
                for color in 0..self.choices(pos, used) {
                    if !self.closes_copy(prefix, pos, color) {
                        let mut p = prefix.clone();
                        p.push(color);
                        next.push(p);
                    }
                }
            }
            layer = next;
        }
        layer
    }

    fn first_avoiding(&self) -> Option<Vec<u8>> {
        let workers = rayon::current_num_threads();
        if workers <= 1 {
            let mut cells = Vec::with_capacity(self.cell_count);
            return self.extend(&mut cells, 0).then_some(cells);
        }
        // split into enough subtrees to keep every worker busy; the first
        // subtree in prefix order that succeeds holds the lexicographic minimum
        let target = workers * 16;
        let mut depth = 0;
        let mut prefixes = self.prefixes(0);
        while prefixes.len() < target && depth < self.cell_count {
            depth += 1;
            prefixes = self.prefixes(depth);
            if prefixes.is_empty() {
                return None;
            }
        }
        prefixes.into_par_iter().find_map_first(|mut cells| {
            let used = cells.iter().map(|&c| c + 1).max().unwrap_or(0);
            cells.reserve(self.cell_count);
            self.extend(&mut cells, used).then_some(cells)
        })
    }
}
