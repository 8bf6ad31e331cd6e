//! Plain-text portable graymap (P2) and pixmap (P3) input.
//!
//! Pixel `(column, row)` becomes the lattice point `(x, y) = (column, row)`,
//! with row 0 at the top of the file. Distinct pixel values become color
//! indices in order of first appearance.

use std::path::Path;

use crate::error::{Error, Result};
use crate::lattice::GridColoring;

pub const DEFAULT_COLOR_LIMIT: usize = 255;

pub fn load_grid_image(path: impl AsRef<Path>) -> Result<GridColoring> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_pnm(&text, DEFAULT_COLOR_LIMIT)
}

pub fn parse_pnm(text: &str, color_limit: usize) -> Result<GridColoring> {
    let mut tokens = text
        .lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace);
    let magic = tokens
        .next()
        .ok_or_else(|| Error::MalformedImage("empty file".into()))?;
    let channels = match magic {
        "P2" => 1,
        "P3" => 3,
        other => {
            return Err(Error::MalformedImage(format!(
                "unsupported magic `{other}`, expected P2 or P3"
            )))
        }
    };
    let mut header = |what: &str| -> Result<usize> {
        let t = tokens
            .next()
            .ok_or_else(|| Error::MalformedImage(format!("missing {what}")))?;
        t.parse()
            .map_err(|_| Error::MalformedImage(format!("bad {what} `{t}`")))
    };
    let width = header("width")?;
    let height = header("height")?;
    let maxval = header("maximum value")?;
    if width == 0 || height == 0 {
        return Err(Error::MalformedImage("zero-sized image".into()));
    }
    let mut pixels: Vec<Vec<usize>> = Vec::with_capacity(width * height);
    for i in 0..width * height {
        let mut px = Vec::with_capacity(channels);
        for _ in 0..channels {
            let t = tokens.next().ok_or_else(|| {
                Error::MalformedImage(format!(
                    "truncated: expected {} pixels, got {i}",
                    width * height
                ))
            })?;
            let v: usize = t
                .parse()
                .map_err(|_| Error::MalformedImage(format!("bad sample `{t}`")))?;
            if v > maxval {
                return Err(Error::MalformedImage(format!(
                    "sample {v} exceeds maximum {maxval}"
                )));
            }
            px.push(v);
        }
        pixels.push(px);
    }
    if let Some(extra) = tokens.next() {
        return Err(Error::MalformedImage(format!("trailing data `{extra}`")));
    }

    let mut palette: Vec<&Vec<usize>> = Vec::new();
    let mut indices = Vec::with_capacity(pixels.len());
    for px in &pixels {
        let idx = match palette.iter().position(|p| *p == px) {
            Some(i) => i,
            None => {
                palette.push(px);
                palette.len() - 1
            }
        };
        indices.push(idx as u32);
    }
    if palette.len() > color_limit {
        return Err(Error::TooManyColors {
            found: palette.len(),
            limit: color_limit,
        });
    }
    // file order is row by row; grid order has x most significant
    let cells_at = |x: usize, y: usize| indices[y * width + x];
    let mut cells = Vec::with_capacity(indices.len());
    for x in 0..width {
        for y in 0..height {
            cells.push(cells_at(x, y));
        }
    }
    GridColoring::new(vec![width, height], palette.len() as u32, cells)
}
