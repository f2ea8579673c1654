//! Dot matrices, x-markers, diagrams `D(w)` and extended diagrams `D+(w)`
//! for types A, B, C; SE-corner detection; rendering.
//!
//! Rows are listed top to bottom in increasing index order.  A cell is
//! *struck* when it lies weakly south or east of a dot; the extended diagram
//! is the unstruck cells, and the diagram drops those carrying an `x`.  Type
//! B boards put an `x` in row `-w(i)` of every column weakly right of the dot
//! in column `i`; type C uses strictly right, and its row ladder skips 0.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::perm_core::{SignedPermutation, WindowPermutation};
use crate::{Error, Result};

pub type Cell = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoardKind {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Json,
    Svg,
}

impl std::str::FromStr for RenderFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii" => Ok(RenderFormat::Ascii),
            "json" => Ok(RenderFormat::Json),
            "svg" => Ok(RenderFormat::Svg),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// A dot-and-marker board over `rows x cols`, with the struck set already
/// computed.  Immutable once built.
#[derive(Debug, Clone)]
pub struct Board {
    kind: BoardKind,
    rows: Vec<i64>,
    cols: Vec<i64>,
    dots: Vec<Cell>,
    crossed: BTreeSet<Cell>,
    struck: BTreeSet<Cell>,
}

/// Board of an ordinary permutation: square array over its window, dots at
/// `(v(i), i)`, no crosses.
pub fn board_a(v: &WindowPermutation) -> Board {
    let rows: Vec<i64> = (v.lo()..=v.hi()).collect();
    let cols = rows.clone();
    let dots: Vec<Cell> = cols.iter().map(|&i| (v.value(i), i)).collect();
    Board::assemble(BoardKind::A, rows, cols, dots, BTreeSet::new())
}

/// Type B board of a signed permutation: `(2n+1) x n`, rows `-n..=n`, columns
/// `-n..=-1`, dots at `(w(i), i)` for negative `i`, crosses at `(a, b)` with
/// `a = -w(i)` for some `i <= b`.
pub fn board_b(w: &SignedPermutation) -> Board {
    let n = w.n() as i64;
    let rows: Vec<i64> = (-n..=n).collect();
    let cols: Vec<i64> = (-n..=-1).collect();
    let dots: Vec<Cell> = cols.iter().map(|&i| (w.value(i), i)).collect();
    let mut crossed = BTreeSet::new();
    for &i in cols.iter() {
        for &b in cols.iter().filter(|&&b| b >= i) {
            crossed.insert((-w.value(i), b));
        }
    }
    Board::assemble(BoardKind::B, rows, cols, dots, crossed)
}

/// Type C board: `2n x n` with the 0 row omitted, crosses strictly to the
/// right of each dot's column.
pub fn board_c(w: &SignedPermutation) -> Board {
    let n = w.n() as i64;
    let rows: Vec<i64> = (-n..=n).filter(|&a| a != 0).collect();
    let cols: Vec<i64> = (-n..=-1).collect();
    let dots: Vec<Cell> = cols.iter().map(|&i| (w.value(i), i)).collect();
    let mut crossed = BTreeSet::new();
    for &i in cols.iter() {
        for &b in cols.iter().filter(|&&b| b > i) {
            crossed.insert((-w.value(i), b));
        }
    }
    Board::assemble(BoardKind::C, rows, cols, dots, crossed)
}

impl Board {
    fn assemble(
        kind: BoardKind,
        rows: Vec<i64>,
        cols: Vec<i64>,
        dots: Vec<Cell>,
        crossed: BTreeSet<Cell>,
    ) -> Board {
        let mut struck = BTreeSet::new();
        for &(r, c) in &dots {
            for &a in rows.iter().filter(|&&a| a >= r) {
                struck.insert((a, c));
            }
            for &b in cols.iter().filter(|&&b| b >= c) {
                struck.insert((r, b));
            }
        }
        Board { kind, rows, cols, dots, crossed, struck }
    }

    pub fn kind(&self) -> BoardKind {
        self.kind
    }

    pub fn rows(&self) -> &[i64] {
        &self.rows
    }

    pub fn cols(&self) -> &[i64] {
        &self.cols
    }

    pub fn dots(&self) -> &[Cell] {
        &self.dots
    }

    pub fn is_crossed(&self, cell: Cell) -> bool {
        self.crossed.contains(&cell)
    }

    pub fn is_struck(&self, cell: Cell) -> bool {
        self.struck.contains(&cell)
    }

    /// Unstruck, uncrossed boxes; `|D(w)| = l(w)`.
    pub fn diagram(&self) -> BTreeSet<Cell> {
        self.cells()
            .filter(|c| !self.struck.contains(c) && !self.crossed.contains(c))
            .collect()
    }

    /// All unstruck boxes, crossed or not.
    pub fn extended_diagram(&self) -> BTreeSet<Cell> {
        self.cells().filter(|c| !self.struck.contains(c)).collect()
    }

    fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.rows
            .iter()
            .flat_map(move |&a| self.cols.iter().map(move |&b| (a, b)))
    }

    /// Next row below `a`; skips 0 for type C boards.
    pub fn row_succ(&self, a: i64) -> i64 {
        if self.kind == BoardKind::C && a == -1 {
            1
        } else {
            a + 1
        }
    }

    /// Previous row above `a`; skips 0 for type C boards.
    pub fn row_pred(&self, a: i64) -> i64 {
        if self.kind == BoardKind::C && a == 1 {
            -1
        } else {
            a - 1
        }
    }

    /// SE corners of the extended diagram (types B/C) or diagram (type A):
    /// boxes whose south and east neighbors are absent, where out-of-board
    /// counts as absent.
    pub fn se_corners(&self) -> Vec<Cell> {
        let boxes = match self.kind {
            BoardKind::A => self.diagram(),
            BoardKind::B | BoardKind::C => self.extended_diagram(),
        };
        boxes
            .iter()
            .filter(|&&(a, b)| {
                !boxes.contains(&(self.row_succ(a), b)) && !boxes.contains(&(a, b + 1))
            })
            .copied()
            .collect()
    }

    pub fn render(&self, format: RenderFormat) -> Result<String> {
        match format {
            RenderFormat::Ascii => Ok(self.render_ascii()),
            RenderFormat::Json => Ok(self.render_json()),
            RenderFormat::Svg => Ok(self.render_svg()),
        }
    }

    /// Legend: `o` dot, `x` crossed cell (even if struck), `#` box of D,
    /// `+` box of D+ \ D, `.` struck plain cell.
    fn render_ascii(&self) -> String {
        let diagram = self.diagram();
        let extended = self.extended_diagram();
        let dotset: BTreeSet<Cell> = self.dots.iter().copied().collect();
        let mut out = String::new();
        for &a in &self.rows {
            let cells: Vec<String> = self
                .cols
                .iter()
                .map(|&b| {
                    let cell = (a, b);
                    let ch = if dotset.contains(&cell) {
                        'o'
                    } else if self.crossed.contains(&cell) {
                        'x'
                    } else if diagram.contains(&cell) {
                        '#'
                    } else if extended.contains(&cell) {
                        '+'
                    } else {
                        '.'
                    };
                    ch.to_string()
                })
                .collect();
            out.push_str(&format!("{:>3} | {}\n", a, cells.join(" ")));
        }
        out
    }

    fn render_json(&self) -> String {
        let to_pairs = |set: &BTreeSet<Cell>| -> Vec<[i64; 2]> {
            set.iter().map(|&(a, b)| [a, b]).collect()
        };
        let mut dots = self.dots.clone();
        dots.sort();
        let json = BoardJson {
            kind: self.kind,
            n: *self.rows.last().unwrap_or(&0),
            dots: dots.into_iter().map(|(a, b)| [a, b]).collect(),
            crossed: to_pairs(&self.crossed),
            diagram: to_pairs(&self.diagram()),
            extended: to_pairs(&self.extended_diagram()),
            corners: self.se_corners().into_iter().map(|(a, b)| [a, b]).collect(),
        };
        serde_json::to_string_pretty(&json).expect("board serializes")
    }

    fn render_svg(&self) -> String {
        let cell = 24i64;
        let width = self.cols.len() as i64 * cell;
        let height = self.rows.len() as i64 * cell;
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
             viewBox=\"0 0 {width} {height}\">\n"
        );
        let diagram = self.diagram();
        for (ri, &a) in self.rows.iter().enumerate() {
            for (ci, &b) in self.cols.iter().enumerate() {
                let (x, y) = (ci as i64 * cell, ri as i64 * cell);
                let fill = if self.struck.contains(&(a, b)) {
                    "#cccccc"
                } else if diagram.contains(&(a, b)) {
                    "#ffffff"
                } else {
                    "#f3f3f3"
                };
                out.push_str(&format!(
                    "  <rect x=\"{x}\" y=\"{y}\" width=\"{cell}\" height=\"{cell}\" \
                     fill=\"{fill}\" stroke=\"black\"/>\n"
                ));
                if self.crossed.contains(&(a, b)) {
                    out.push_str(&format!(
                        "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" \
                         font-size=\"12\">x</text>\n",
                        x + cell / 2,
                        y + cell / 2 + 4
                    ));
                }
            }
        }
        for &(r, c) in &self.dots {
            let ri = self.rows.iter().position(|&a| a == r).unwrap() as i64;
            let ci = self.cols.iter().position(|&b| b == c).unwrap() as i64;
            out.push_str(&format!(
                "  <circle cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"black\"/>\n",
                ci * cell + cell / 2,
                ri * cell + cell / 2
            ));
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Serialized form of a board; arrays are sorted `(row, col)` pairs.
#[derive(Debug, Serialize, Deserialize)]
pub struct BoardJson {
    pub kind: BoardKind,
    pub n: i64,
    pub dots: Vec<[i64; 2]>,
    pub crossed: Vec<[i64; 2]>,
    pub diagram: Vec<[i64; 2]>,
    pub extended: Vec<[i64; 2]>,
    pub corners: Vec<[i64; 2]>,
}
