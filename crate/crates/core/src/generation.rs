//! Three ways to build a triangle: the closed form, the Rascal-like addition
//! recurrence and the Rascal-like multiplication recurrence.
//!
//! Both recurrences fill the interior from a [`Boundary`]. Using the diamond
//! naming North = `T(r-1, k-1)`, West = `T(r-1, k)`, East = `T(r, k-1)` and
//! South = `T(r, k)`:
//!
//! * addition: `South = East + West + d - North`
//! * multiplication: `South = (East·West + D) / North`
//!
//! For a GRT the two constants are tied by `D = c·d - d1·d2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::triangle::{closed_form_entry, GrtParams, TriangleGrid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundaryError {
    #[error("boundary edges must be non-empty")]
    Empty,
    #[error("edge lengths differ: major {major}, minor {minor}")]
    LengthMismatch { major: usize, minor: usize },
    #[error("edges disagree on the apex: major starts with {major}, minor with {minor}")]
    ApexMismatch { major: BigInt, minor: BigInt },
}

/// Outside diagonals of a triangle with `len()` rows.
///
/// `major_edge[k] = T(0, k)` runs down the left side and
/// `minor_edge[r] = T(r, 0)` runs down the right side. Both start at the apex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundary {
    major_edge: Vec<BigInt>,
    minor_edge: Vec<BigInt>,
}

impl Boundary {
    pub fn new(major_edge: Vec<BigInt>, minor_edge: Vec<BigInt>) -> Result<Self, BoundaryError> {
        if major_edge.is_empty() || minor_edge.is_empty() {
            return Err(BoundaryError::Empty);
        }
        if major_edge.len() != minor_edge.len() {
            return Err(BoundaryError::LengthMismatch {
                major: major_edge.len(),
                minor: minor_edge.len(),
            });
        }
        if major_edge[0] != minor_edge[0] {
            return Err(BoundaryError::ApexMismatch {
                major: major_edge[0].clone(),
                minor: minor_edge[0].clone(),
            });
        }
        Ok(Self {
            major_edge,
            minor_edge,
        })
    }

    /// The edges of an existing grid.
    pub fn of_grid(grid: &TriangleGrid) -> Self {
        Self {
            major_edge: grid.major_diagonal(0).cloned().collect(),
            minor_edge: grid.minor_diagonal(0).cloned().collect(),
        }
    }

    pub fn apex(&self) -> &BigInt {
        &self.major_edge[0]
    }

    pub fn major_edge(&self) -> &[BigInt] {
        &self.major_edge
    }

    pub fn minor_edge(&self) -> &[BigInt] {
        &self.minor_edge
    }

    /// Number of rows a triangle built from this boundary has.
    pub fn len(&self) -> usize {
        self.major_edge.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerationError {
    #[error("multiplication rule divides by zero: North of (r={r}, k={k}) is 0")]
    ZeroNorth { r: usize, k: usize },
    #[error(
        "multiplication rule is not integral at (r={r}, k={k}): {numerator} is not divisible by {divisor}"
    )]
    InexactDivision {
        r: usize,
        k: usize,
        numerator: BigInt,
        divisor: BigInt,
    },
}

impl GenerationError {
    pub fn position(&self) -> (usize, usize) {
        match *self {
            Self::ZeroNorth { r, k } | Self::InexactDivision { r, k, .. } => (r, k),
        }
    }
}

/// # Panics
///
/// Panics if `n_rows` is zero.
pub fn generate_closed_form(params: &GrtParams, n_rows: usize) -> TriangleGrid {
    TriangleGrid::from_fn(n_rows, |r, k| closed_form_entry(params, r, k))
}

/// # Panics
///
/// Panics if `n_rows` is zero.
pub fn boundary_from_params(params: &GrtParams, n_rows: usize) -> Boundary {
    assert!(n_rows >= 1, "a triangle needs at least one row");
    Boundary {
        major_edge: crate::triangle::major_diagonal(params, 0, n_rows),
        minor_edge: crate::triangle::minor_diagonal(params, 0, n_rows),
    }
}

/// `D = c·d - d1·d2`.
pub fn mult_constant(params: &GrtParams) -> BigInt {
    &params.c * &params.d - &params.d1 * &params.d2
}

/// Fills the interior row by row. `interior(north, west, east, r, k)` yields
/// the South entry.
fn fill<F>(boundary: &Boundary, mut interior: F) -> Result<TriangleGrid, GenerationError>
where
    F: FnMut(&BigInt, &BigInt, &BigInt, usize, usize) -> Result<BigInt, GenerationError>,
{
    let n_rows = boundary.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n_rows);
    for n in 0..n_rows {
        let mut row = Vec::with_capacity(n + 1);
        row.push(boundary.major_edge[n].clone());
        for r in 1..n {
            let k = n - r;
            let prev = &rows[n - 1];
            let north = &rows[n - 2][r - 1];
            let west = &prev[r - 1];
            let east = &prev[r];
            row.push(interior(north, west, east, r, k)?);
        }
        if n > 0 {
            row.push(boundary.minor_edge[n].clone());
        }
        rows.push(row);
    }
    Ok(TriangleGrid::from_rows(rows).expect("recurrence produces a well-shaped triangle"))
}

/// Addition rule `South = East + West + d - North`. Total for all inputs.
pub fn generate_by_addition(boundary: &Boundary, d: &BigInt) -> TriangleGrid {
    fill(boundary, |north, west, east, _, _| Ok(east + west + d - north))
        .expect("the addition rule cannot fail")
}

/// Multiplication rule `South = (East·West + D) / North`, requiring every
/// division to be exact.
pub fn generate_by_multiplication(
    boundary: &Boundary,
    mult: &BigInt,
) -> Result<TriangleGrid, GenerationError> {
    fill(boundary, |north, west, east, r, k| {
        if north.is_zero() {
            return Err(GenerationError::ZeroNorth { r, k });
        }
        let numerator = east * west + mult;
        let (quotient, remainder) = numerator.div_rem(north);
        if !remainder.is_zero() {
            return Err(GenerationError::InexactDivision {
                r,
                k,
                numerator,
                divisor: north.clone(),
            });
        }
        Ok(quotient)
    })
}
