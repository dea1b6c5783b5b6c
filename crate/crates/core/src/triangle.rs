//! Triangle container, indexing conventions and the bilinear closed form.
//!
//! Entries are addressed by diagonal coordinates `(r, k)`: `r` selects the
//! major diagonal and `k` the position along it. Rows are stored left to
//! right, and the entry at row `n`, position `j` is `T(r, k)` with `r = j`
//! and `k = n - j`. The left edge is therefore the `r = 0` major diagonal and
//! the right edge is the `k = 0` minor diagonal.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("a triangle needs at least one row")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("index (r={r}, k={k}) is outside a triangle with {rows} rows")]
    OutOfRange { r: usize, k: usize, rows: usize },
}

/// A finite number triangle of arbitrary-precision integers.
///
/// Row `n` holds exactly `n + 1` entries and there is always at least one row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriangleGrid {
    rows: Vec<Vec<BigInt>>,
}

impl TriangleGrid {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, GridError> {
        if rows.is_empty() {
            return Err(GridError::Empty);
        }
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(GridError::RaggedRow {
                    row: n,
                    expected: n + 1,
                    found: row.len(),
                });
            }
        }
        Ok(Self { rows })
    }

    /// Builds a grid by evaluating `entry(r, k)` for every cell.
    ///
    /// # Panics
    ///
    /// Panics if `n_rows` is zero.
    pub fn from_fn<F>(n_rows: usize, mut entry: F) -> Self
    where
        F: FnMut(usize, usize) -> BigInt,
    {
        assert!(n_rows >= 1, "a triangle needs at least one row");
        let rows = (0..n_rows)
            .map(|n| (0..=n).map(|r| entry(r, n - r)).collect())
            .collect();
        Self { rows }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> Option<&[BigInt]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.rows
    }

    pub fn apex(&self) -> &BigInt {
        &self.rows[0][0]
    }

    pub fn contains(&self, r: usize, k: usize) -> bool {
        r.checked_add(k).is_some_and(|n| n < self.rows.len())
    }

    pub fn get(&self, r: usize, k: usize) -> Option<&BigInt> {
        let n = r.checked_add(k)?;
        self.rows.get(n).map(|row| &row[r])
    }

    /// Reads `T(r, k)`, which lives in row `r + k` at left position `r`.
    pub fn entry_at(&self, r: usize, k: usize) -> Result<&BigInt, GridError> {
        self.get(r, k).ok_or(GridError::OutOfRange {
            r,
            k,
            rows: self.rows.len(),
        })
    }

    /// Entries of major diagonal `r` that are present in the grid.
    pub fn major_diagonal(&self, r: usize) -> impl Iterator<Item = &BigInt> + '_ {
        let len = self.rows.len().saturating_sub(r);
        (0..len).map(move |k| &self.rows[r + k][r])
    }

    /// Entries of minor diagonal `k` that are present in the grid.
    pub fn minor_diagonal(&self, k: usize) -> impl Iterator<Item = &BigInt> + '_ {
        let len = self.rows.len().saturating_sub(k);
        (0..len).map(move |r| &self.rows[r + k][r])
    }

    /// Iterates `(r, k, value)` in row-major order: increasing row, then
    /// increasing `r` within the row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.rows.iter().enumerate().flat_map(|(n, row)| {
            row.iter().enumerate().map(move |(r, value)| (r, n - r, value))
        })
    }
}

impl fmt::Display for TriangleGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, row) in self.rows.iter().enumerate() {
            if n > 0 {
                f.write_str("\n")?;
            }
            for (j, value) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{value}")?;
            }
        }
        Ok(())
    }
}

/// The four integers defining a Generalized Rascal Triangle
/// `T(r, k) = c + k·d1 + r·d2 + r·k·d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GrtParams {
    /// Apex entry `T(0, 0)`.
    pub c: BigInt,
    /// Change of the common difference from one diagonal to the next.
    pub d: BigInt,
    /// Common difference along the outside major diagonal (`r = 0`).
    pub d1: BigInt,
    /// Common difference along the outside minor diagonal (`k = 0`).
    pub d2: BigInt,
}

impl GrtParams {
    pub fn new(
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
        d1: impl Into<BigInt>,
        d2: impl Into<BigInt>,
    ) -> Self {
        Self {
            c: c.into(),
            d: d.into(),
            d1: d1.into(),
            d2: d2.into(),
        }
    }

    /// The Rascal Triangle, `1 + r·k`.
    pub fn rascal() -> Self {
        Self::new(1, 1, 0, 0)
    }

    pub fn entry(&self, r: usize, k: usize) -> BigInt {
        closed_form_entry(self, r, k)
    }

    /// Parameters of the mirror image, which swaps the roles of `r` and `k`.
    pub fn mirrored(&self) -> Self {
        Self {
            c: self.c.clone(),
            d: self.d.clone(),
            d1: self.d2.clone(),
            d2: self.d1.clone(),
        }
    }
}

impl fmt::Display for GrtParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(c={}, d={}, d1={}, d2={})",
            self.c, self.d, self.d1, self.d2
        )
    }
}

pub fn closed_form_entry(params: &GrtParams, r: usize, k: usize) -> BigInt {
    let r = BigInt::from(r);
    let k = BigInt::from(k);
    // c + k·d1 + r·(d2 + k·d)
    &params.c + &k * &params.d1 + &r * (&params.d2 + &k * &params.d)
}

fn arithmetic(first: BigInt, step: BigInt, count: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(count);
    let mut term = first;
    for _ in 0..count {
        let next = &term + &step;
        out.push(term);
        term = next;
    }
    out
}

/// First `count` terms of major diagonal `r`: `(c + r·d2) + k·(d1 + r·d)`.
pub fn major_diagonal(params: &GrtParams, r: usize, count: usize) -> Vec<BigInt> {
    let r = BigInt::from(r);
    arithmetic(
        &params.c + &r * &params.d2,
        &params.d1 + &r * &params.d,
        count,
    )
}

/// First `count` terms of minor diagonal `k`: `(c + k·d1) + r·(d2 + k·d)`.
pub fn minor_diagonal(params: &GrtParams, k: usize, count: usize) -> Vec<BigInt> {
    let k = BigInt::from(k);
    arithmetic(
        &params.c + &k * &params.d1,
        &params.d2 + &k * &params.d,
        count,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("a diamond needs at least 2 cells per side, got {0}")]
pub struct DiamondSideError(pub usize);

/// A square block of cells `{(top_r + i, top_k + j) : 0 <= i, j < side}`.
///
/// `side` counts cells per side, so the boundary holds `4·(side - 1)` cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Diamond {
    top_r: usize,
    top_k: usize,
    side: usize,
}

impl Diamond {
    pub fn new(top_r: usize, top_k: usize, side: usize) -> Result<Self, DiamondSideError> {
        if side < 2 {
            return Err(DiamondSideError(side));
        }
        Ok(Self { top_r, top_k, side })
    }

    /// The 2-diamond whose bottom (South) cell is `(r, k)`; needs `r, k >= 1`.
    pub fn with_south(r: usize, k: usize) -> Option<Self> {
        Some(Self {
            top_r: r.checked_sub(1)?,
            top_k: k.checked_sub(1)?,
            side: 2,
        })
    }

    pub fn top_r(&self) -> usize {
        self.top_r
    }

    pub fn top_k(&self) -> usize {
        self.top_k
    }

    pub fn side(&self) -> usize {
        self.side
    }

    /// The cell opposite the top.
    pub fn bottom(&self) -> (usize, usize) {
        (self.top_r + self.side - 1, self.top_k + self.side - 1)
    }

    /// Center cell, present only for an odd side.
    pub fn center(&self) -> Option<(usize, usize)> {
        (self.side % 2 == 1).then(|| {
            let half = self.side / 2;
            (self.top_r + half, self.top_k + half)
        })
    }

    pub fn fits_in(&self, n_rows: usize) -> bool {
        let (r, k) = self.bottom();
        r + k < n_rows
    }

    pub fn boundary_len(&self) -> usize {
        4 * (self.side - 1)
    }

    /// Boundary cells, each listed once: down minor diagonal `top_k`, along
    /// major diagonal `top_r + side - 1`, back up minor diagonal
    /// `top_k + side - 1`, then back along major diagonal `top_r`.
    pub fn boundary(&self) -> impl Iterator<Item = (usize, usize)> {
        let (r0, k0) = (self.top_r, self.top_k);
        let span = self.side - 1;
        let down = (0..span).map(move |i| (r0 + i, k0));
        let across = (0..span).map(move |i| (r0 + span, k0 + i));
        let up = (0..span).map(move |i| (r0 + span - i, k0 + span));
        let back = (0..span).map(move |i| (r0, k0 + span - i));
        down.chain(across).chain(up).chain(back)
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> {
        let (r0, k0, side) = (self.top_r, self.top_k, self.side);
        (0..side).flat_map(move |i| (0..side).map(move |j| (r0 + i, k0 + j)))
    }
}

impl fmt::Display for Diamond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}-diamond at top (r={}, k={})",
            self.side, self.top_r, self.top_k
        )
    }
}

/// Whether every entry of `grid` is nonzero.
pub fn all_nonzero(grid: &TriangleGrid) -> bool {
    grid.cells().all(|(_, _, v)| !v.is_zero())
}
