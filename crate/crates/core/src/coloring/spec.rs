//! Textual coloring specifications.
//!
//! | form                         | meaning                                   |
//! |------------------------------|-------------------------------------------|
//! | `expr:<text>` or bare text   | expression, e.g. `(floor(x)+floor(y)) mod 2` |
//! | `constant:<c>`               | every point gets color `c`                |
//! | `checkerboard[:<dim>]`       | `(Σ⌊xᵢ⌋) mod 2`, default dimension 2      |
//! | `linear:<w1,w2,…>;<m>[;<o>]` | `(Σ wᵢ⌊xᵢ⌋ + o) mod m`                    |
//! | `tile:<path>`                | periodic tile file                        |
//! | `image:<path>`               | P2/P3 image, extended periodically        |
//! | `random[:<seed>]`            | seeded hash coloring of lattice points    |

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Coloring;
use crate::error::{Error, Result};
use crate::lattice::GridColoring;
use crate::pnm;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ColoringSpec {
    pub text: String,
    pub colors: Option<u32>,
}

impl ColoringSpec {
    pub fn new(text: impl Into<String>, colors: Option<u32>) -> Self {
        ColoringSpec {
            text: text.into(),
            colors,
        }
    }

    pub fn build(&self) -> Result<Coloring> {
        let text = self.text.trim();
        let (head, rest) = match text.split_once(':') {
            Some((h, r)) => (h.trim(), Some(r.trim())),
            None => (text, None),
        };
        let built = match (head, rest) {
            ("expr", Some(body)) => Coloring::expression(body, self.colors)?,
            ("constant" | "const", Some(c)) => {
                let c: u32 = c
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad constant color `{c}`")))?;
                Coloring::constant(c, self.colors.unwrap_or(c + 1))?
            }
            ("checkerboard", dim) => {
                let dim = match dim {
                    Some(d) => d
                        .parse()
                        .map_err(|_| Error::invalid(format!("bad dimension `{d}`")))?,
                    None => 2,
                };
                Coloring::checkerboard(dim)
            }
            ("linear", Some(body)) => parse_linear(body)?,
            ("tile", Some(path)) => Coloring::tile(load_tile(path, self.colors)?)?,
            ("image", Some(path)) => Coloring::image(pnm::load_grid_image(path)?)?,
            ("random", seed) => {
                let seed = match seed {
                    Some(s) => s
                        .parse()
                        .map_err(|_| Error::invalid(format!("bad seed `{s}`")))?,
                    None => 0,
                };
                Coloring::seeded_random(seed, self.colors.unwrap_or(2))?
            }
            _ => Coloring::expression(text, self.colors)?,
        };
        match self.colors {
            Some(c) if c != built.colors() => Coloring::new(built.kind().clone(), c),
            _ => Ok(built),
        }
    }
}

/// Parses a specification string with no explicit color count.
pub fn parse_coloring_spec(text: &str) -> Result<Coloring> {
    ColoringSpec::new(text, None).build()
}

fn parse_linear(body: &str) -> Result<Coloring> {
    let parts: Vec<&str> = body.split(';').map(str::trim).collect();
    let bad = || Error::invalid(format!("bad linear coloring `{body}`, expected w1,w2,…;m[;offset]"));
    if !(2..=3).contains(&parts.len()) {
        return Err(bad());
    }
    let weights = parts[0]
        .split(',')
        .map(|w| w.trim().parse::<i64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    let modulus: u32 = parts[1].parse().map_err(|_| bad())?;
    let offset: i64 = match parts.get(2) {
        Some(o) => o.parse().map_err(|_| bad())?,
        None => 0,
    };
    Coloring::linear(weights, offset, modulus)
}

/// Tile files hold rows of whitespace-separated color indices; `#` starts a
/// comment. Row `r`, column `c` colors the unit cell with `⌊x⌋ ≡ c`,
/// `⌊y⌋ ≡ r`; a single row gives a one-dimensional tile.
pub fn load_tile(path: impl AsRef<Path>, colors: Option<u32>) -> Result<GridColoring> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_tile(&text, colors)
}

pub fn parse_tile(text: &str, colors: Option<u32>) -> Result<GridColoring> {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>().map_err(|_| Error::Syntax {
                    line: n + 1,
                    col: 1,
                    message: format!("bad tile entry `{t}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Syntax {
                    line: n + 1,
                    col: 1,
                    message: format!("row has {} entries, expected {}", row.len(), first.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::invalid("tile is empty"));
    }
    let max = rows.iter().flatten().copied().max().unwrap_or(0);
    let colors = colors.unwrap_or(max + 1);
    if rows.len() == 1 {
        let row = rows.pop().expect("one row");
        return GridColoring::new(vec![row.len()], colors, row);
    }
    let (width, height) = (rows[0].len(), rows.len());
    let mut cells = Vec::with_capacity(width * height);
    for x in 0..width {
        for row in &rows {
            cells.push(row[x]);
        }
    }
    GridColoring::new(vec![width, height], colors, cells)
}
