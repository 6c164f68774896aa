//! Quarter-region grid and neighborhood traversal.
//!
//! Cells are half a label wide and half a label tall, so a candidate of one
//! feature can only strictly intersect a candidate of another feature whose
//! cell is at most four rows and four columns away.

pub mod config;
pub mod table;

pub use config::{ConfigCode, Zone};
pub use table::{atomic_predicates, NeighborhoodTestTable, Predicates, Test, TestTree};

use crate::model::{LabelDims, Partner};

const NO_CELL: u32 = u32::MAX;

/// Dense cell offsets are kept while the grid has at most this many cells
/// per point; sparser grids find cells by binary search instead.
const DENSE_CELLS_PER_POINT: usize = 8;

/// Screen-space grid with the features of each cell stored contiguously.
///
/// Items are processing positions sorted by cell id, and by position within
/// a cell, so traversal order is deterministic.
#[derive(Debug, Clone)]
pub struct Trellis {
    pub cell_w: f64,
    pub cell_h: f64,
    pub n_cols: u32,
    pub n_rows: u32,
    view_w: f64,
    view_h: f64,
    /// Conflict dims the cells were derived from.
    pub dims: LabelDims,
    /// Offsets into `items` per cell; empty when the grid is sparse.
    starts: Vec<u32>,
    items: Vec<u32>,
    /// Cell id of each entry of `items`.
    item_cells: Vec<u32>,
    cell_of: Vec<u32>,
}

impl Trellis {
    /// An empty grid over a `view_w` x `view_h` window for labels of `dims`
    /// (already reduced by any overlap allowance).
    pub fn new(view_w: f64, view_h: f64, dims: LabelDims) -> Trellis {
        let cell_w = dims.width / 2.0;
        let cell_h = dims.height / 2.0;
        let n_cols = ((view_w / cell_w).ceil() as u32).max(1);
        let n_rows = ((view_h / cell_h).ceil() as u32).max(1);
        Trellis {
            cell_w,
            cell_h,
            n_cols,
            n_rows,
            view_w,
            view_h,
            dims,
            starts: Vec::new(),
            items: Vec::new(),
            item_cells: Vec::new(),
            cell_of: Vec::new(),
        }
    }

    pub fn cell_count(&self) -> usize {
        self.n_cols as usize * self.n_rows as usize
    }

    /// `(floor(x / cell_w), floor(y / cell_h))`, or `None` off screen.
    pub fn coords(&self, x: f64, y: f64) -> Option<(u32, u32)> {
        if !(x >= 0.0 && x < self.view_w && y >= 0.0 && y < self.view_h) {
            return None;
        }
        let col = ((x / self.cell_w).floor() as u32).min(self.n_cols - 1);
        let row = ((y / self.cell_h).floor() as u32).min(self.n_rows - 1);
        Some((col, row))
    }

    /// Bins every point into its cell. Off-screen points are left out.
    ///
    /// Uses a counting sort over the cells when the grid is dense enough,
    /// and a sort of the occupied entries otherwise.
    pub fn populate(&mut self, points: &[(f64, f64)]) {
        let cells = self.cell_count();
        self.cell_of.clear();
        self.cell_of.reserve(points.len());
        for &(x, y) in points {
            let cell = match self.coords(x, y) {
                Some((c, r)) => r * self.n_cols + c,
                None => NO_CELL,
            };
            self.cell_of.push(cell);
        }

        if cells <= DENSE_CELLS_PER_POINT * points.len().max(1) {
            let mut counts = vec![0u32; cells + 1];
            for &cell in &self.cell_of {
                if cell != NO_CELL {
                    counts[cell as usize + 1] += 1;
                }
            }
            for i in 1..=cells {
                counts[i] += counts[i - 1];
            }
            let total = counts[cells] as usize;
            self.starts = counts.clone();
            let mut fill = counts;
            self.items = vec![0; total];
            self.item_cells = vec![0; total];
            for (pos, &cell) in self.cell_of.iter().enumerate() {
                if cell != NO_CELL {
                    let slot = &mut fill[cell as usize];
                    self.items[*slot as usize] = pos as u32;
                    self.item_cells[*slot as usize] = cell;
                    *slot += 1;
                }
            }
        } else {
            let mut entries: Vec<(u32, u32)> = self
                .cell_of
                .iter()
                .enumerate()
                .filter(|&(_, &cell)| cell != NO_CELL)
                .map(|(pos, &cell)| (cell, pos as u32))
                .collect();
            entries.sort_unstable();
            self.starts = Vec::new();
            self.item_cells = entries.iter().map(|e| e.0).collect();
            self.items = entries.iter().map(|e| e.1).collect();
        }
    }

    /// Index range of `items` covering cell ids `lo..=hi`.
    fn span(&self, lo: u32, hi: u32) -> std::ops::Range<usize> {
        if self.starts.is_empty() {
            let a = self.item_cells.partition_point(|&c| c < lo);
            let b = a + self.item_cells[a..].partition_point(|&c| c <= hi);
            a..b
        } else {
            self.starts[lo as usize] as usize..self.starts[hi as usize + 1] as usize
        }
    }

    pub fn cell(&self, col: u32, row: u32) -> &[u32] {
        let i = row * self.n_cols + col;
        &self.items[self.span(i, i)]
    }

    /// Items of cells `c0..=c1` in one row.
    pub fn row_cells(&self, row: u32, c0: u32, c1: u32) -> &[u32] {
        let base = row * self.n_cols;
        &self.items[self.span(base + c0, base + c1)]
    }

    /// Cell of a populated point, by position.
    pub fn cell_of(&self, pos: u32) -> Option<(u32, u32)> {
        match self.cell_of.get(pos as usize) {
            Some(&c) if c != NO_CELL => Some((c % self.n_cols, c / self.n_cols)),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Visits every neighbor of feature `a` within the 9x9 window clipped to
    /// the grid, classifies the pair with the test table and reports each
    /// conflicting candidate pair as `(a_candidate, partner)`.
    ///
    /// With `skip_higher_priority`, neighbors at earlier positions are
    /// ignored. Returns the number of comparisons evaluated.
    pub fn test_neighborhood<F>(
        &self,
        a: u32,
        points: &[(f64, f64)],
        table: &NeighborhoodTestTable,
        skip_higher_priority: bool,
        mut sink: F,
    ) -> u64
    where
        F: FnMut(u8, Partner),
    {
        let Some((col, row)) = self.cell_of(a) else { return 0 };
        let pa = points[a as usize];
        let mut evaluated = 0;
        let r = table::RADIUS;
        let (col, row) = (col as i32, row as i32);
        let (c0, c1) = ((col - r).max(0), (col + r).min(self.n_cols as i32 - 1));
        for drow in -r..=r {
            let nr = row + drow;
            if nr < 0 || nr >= self.n_rows as i32 {
                continue;
            }
            // The window's cells in one row are consecutive ids.
            let base = nr as u32 * self.n_cols;
            for k in self.span(base + c0 as u32, base + c1 as u32) {
                let b = self.items[k];
                if b == a || (skip_higher_priority && b < a) {
                    continue;
                }
                let dcol = (self.item_cells[k] - base) as i32 - col;
                let radial_distance = dcol.abs().max(drow.abs()) as u8;
                let code = table.classify(dcol, drow, pa, points[b as usize], self.dims, &mut evaluated);
                for &(i, j) in table.pairs(code) {
                    sink(i, Partner { feature: b, candidate: j, radial_distance });
                }
            }
        }
        evaluated
    }

    /// Like [`Trellis::test_neighborhood`], but visits neighbors in ascending
    /// position order, so each candidate's partners arrive sorted by
    /// `(feature, candidate)`. `scratch` is reused between calls.
    pub fn test_neighborhood_ordered<F>(
        &self,
        a: u32,
        points: &[(f64, f64)],
        table: &NeighborhoodTestTable,
        skip_higher_priority: bool,
        scratch: &mut Vec<u64>,
        mut sink: F,
    ) -> u64
    where
        F: FnMut(u8, Partner),
    {
        let Some((col, row)) = self.cell_of(a) else { return 0 };
        let pa = points[a as usize];
        let r = table::RADIUS;
        let (col, row) = (col as i32, row as i32);
        let (c0, c1) = ((col - r).max(0) as u32, (col + r).min(self.n_cols as i32 - 1) as u32);
        let (r0, r1) = ((row - r).max(0) as u32, (row + r).min(self.n_rows as i32 - 1) as u32);
        scratch.clear();
        for nr in r0..=r1 {
            let base = nr * self.n_cols;
            for k in self.span(base + c0, base + c1) {
                let b = self.items[k];
                if b != a && !(skip_higher_priority && b < a) {
                    scratch.push((b as u64) << 32 | k as u64);
                }
            }
        }
        scratch.sort_unstable();
        let mut evaluated = 0;
        for &key in scratch.iter() {
            let (b, k) = ((key >> 32) as u32, key as u32 as usize);
            let cell = self.item_cells[k];
            let dcol = (cell % self.n_cols) as i32 - col;
            let drow = (cell / self.n_cols) as i32 - row;
            let radial_distance = dcol.abs().max(drow.abs()) as u8;
            let code = table.classify(dcol, drow, pa, points[b as usize], self.dims, &mut evaluated);
            for &(i, j) in table.pairs(code) {
                sink(i, Partner { feature: b, candidate: j, radial_distance });
            }
        }
        evaluated
    }
}
