//! Classification of arbitrary triangles.
//!
//! A triangle is inspected three ways: whether its diagonals are arithmetic,
//! whether the bilinear closed form fits every entry, and whether a single
//! additive or multiplicative constant drives every interior diamond. Every
//! negative answer carries a concrete counterexample. Scans run in row-major
//! order (increasing row, then increasing `r`) so counterexamples are
//! deterministic.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::generation::mult_constant;
use crate::triangle::{closed_form_entry, Diamond, GrtParams, TriangleGrid};

/// Rows needed before a triangle has an interior diamond and a unique fit.
pub const MIN_ROWS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagonalKind {
    /// Fixed `r`, indexed by `k`.
    Major,
    /// Fixed `k`, indexed by `r`.
    Minor,
}

impl fmt::Display for DiagonalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Major => "major",
            Self::Minor => "minor",
        })
    }
}

/// The first term along a diagonal that breaks the progression set by its
/// first two terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub position: usize,
    pub expected: BigInt,
    pub actual: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalReport {
    pub kind: DiagonalKind,
    pub index: usize,
    pub len: usize,
    pub first_term: BigInt,
    pub common_difference: Option<BigInt>,
    pub first_violation: Option<Violation>,
    /// Set when the diagonal has at most two entries, which makes it
    /// arithmetic vacuously. A single entry reports a difference of 0.
    pub under_determined: bool,
}

impl DiagonalReport {
    pub fn is_arithmetic(&self) -> bool {
        self.common_difference.is_some()
    }

    fn analyze<'a>(kind: DiagonalKind, index: usize, entries: impl Iterator<Item = &'a BigInt>) -> Self {
        let entries: Vec<&BigInt> = entries.collect();
        let first_term = entries[0].clone();
        let step = match entries.get(1) {
            Some(second) => *second - &first_term,
            None => BigInt::default(),
        };
        let mut report = Self {
            kind,
            index,
            len: entries.len(),
            first_term,
            common_difference: None,
            first_violation: None,
            under_determined: entries.len() <= 2,
        };
        let mut expected = report.first_term.clone();
        for (position, actual) in entries.iter().enumerate() {
            if *actual != &expected {
                report.first_violation = Some(Violation {
                    position,
                    expected,
                    actual: (*actual).clone(),
                });
                return report;
            }
            expected += &step;
        }
        report.common_difference = Some(step);
        report
    }
}

/// One report per major diagonal `r = 0..N`, followed by one per minor
/// diagonal `k = 0..N`, each covering the entries present in the grid.
pub fn diagonal_reports(grid: &TriangleGrid) -> Vec<DiagonalReport> {
    let n = grid.n_rows();
    let majors = (0..n).map(|r| DiagonalReport::analyze(DiagonalKind::Major, r, grid.major_diagonal(r)));
    let minors = (0..n).map(|k| DiagonalReport::analyze(DiagonalKind::Minor, k, grid.minor_diagonal(k)));
    majors.chain(minors).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("{rows} rows cannot determine GRT parameters; at least {MIN_ROWS} are needed")]
    UnderDetermined { rows: usize },
    #[error("not a GRT: T({r},{k}) is {actual} but the fitted closed form gives {expected}")]
    NotGrt {
        r: usize,
        k: usize,
        expected: BigInt,
        actual: BigInt,
    },
}

/// Reads `(c, d, d1, d2)` off the top three rows and checks every entry
/// against the closed form.
pub fn fit_grt(grid: &TriangleGrid) -> Result<GrtParams, FitError> {
    if grid.n_rows() < MIN_ROWS {
        return Err(FitError::UnderDetermined { rows: grid.n_rows() });
    }
    let at = |r, k| grid.get(r, k).expect("within the first three rows");
    let c = at(0, 0).clone();
    let d1 = at(0, 1) - &c;
    let d2 = at(1, 0) - &c;
    let d = at(1, 1) - at(0, 1) - at(1, 0) + &c;
    let params = GrtParams { c, d, d1, d2 };
    for (r, k, actual) in grid.cells() {
        let expected = closed_form_entry(&params, r, k);
        if *actual != expected {
            return Err(FitError::NotGrt {
                r,
                k,
                expected,
                actual: actual.clone(),
            });
        }
    }
    Ok(params)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("a triangle with {rows} rows has no interior diamond; at least {MIN_ROWS} rows are needed")]
pub struct TooSmall {
    pub rows: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Addition,
    Multiplication,
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Addition => "addition",
            Self::Multiplication => "multiplication",
        })
    }
}

/// A 2-diamond and the rule constant its four entries imply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub diamond: Diamond,
    pub implied: BigInt,
}

impl Witness {
    /// The South cell of the diamond.
    pub fn south(&self) -> (usize, usize) {
        self.diamond.bottom()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleOutcome {
    /// Every interior diamond implies the same constant.
    Constant(BigInt),
    /// The first diamond scanned and the first one disagreeing with it.
    Conflict(Box<[Witness; 2]>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleReport {
    pub rule: RuleKind,
    pub outcome: RuleOutcome,
}

impl RuleReport {
    pub fn constant(&self) -> Option<&BigInt> {
        match &self.outcome {
            RuleOutcome::Constant(c) => Some(c),
            RuleOutcome::Conflict(_) => None,
        }
    }

    pub fn witnesses(&self) -> Option<&[Witness; 2]> {
        match &self.outcome {
            RuleOutcome::Constant(_) => None,
            RuleOutcome::Conflict(w) => Some(w),
        }
    }
}

fn detect_rule<F>(grid: &TriangleGrid, rule: RuleKind, implied: F) -> Result<RuleReport, TooSmall>
where
    F: Fn(&BigInt, &BigInt, &BigInt, &BigInt) -> BigInt,
{
    if grid.n_rows() < MIN_ROWS {
        return Err(TooSmall { rows: grid.n_rows() });
    }
    let rows = grid.rows();
    let mut first: Option<Witness> = None;
    for n in 2..rows.len() {
        for r in 1..n {
            let k = n - r;
            let north = &rows[n - 2][r - 1];
            let west = &rows[n - 1][r - 1];
            let east = &rows[n - 1][r];
            let south = &rows[n][r];
            let witness = Witness {
                diamond: Diamond::with_south(r, k).expect("interior cell"),
                implied: implied(north, west, east, south),
            };
            match &first {
                None => first = Some(witness),
                Some(head) if head.implied != witness.implied => {
                    return Ok(RuleReport {
                        rule,
                        outcome: RuleOutcome::Conflict(Box::new([head.clone(), witness])),
                    });
                }
                Some(_) => {}
            }
        }
    }
    let constant = first.expect("at least one interior cell").implied;
    Ok(RuleReport {
        rule,
        outcome: RuleOutcome::Constant(constant),
    })
}

/// Implied additive constant per diamond: `South - East - West + North`.
pub fn detect_addition_rule(grid: &TriangleGrid) -> Result<RuleReport, TooSmall> {
    detect_rule(grid, RuleKind::Addition, |n, w, e, s| s - e - w + n)
}

/// Implied multiplicative constant per diamond: `South·North - East·West`.
/// No division happens, so zero entries are fine.
pub fn detect_multiplication_rule(grid: &TriangleGrid) -> Result<RuleReport, TooSmall> {
    detect_rule(grid, RuleKind::Multiplication, |n, w, e, s| s * n - e * w)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Grt(GrtParams),
    AdditionOnly(BigInt),
    MultiplicationOnly(BigInt),
    Neither,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Grt(_) => "grt",
            Self::AdditionOnly(_) => "addition-only",
            Self::MultiplicationOnly(_) => "multiplication-only",
            Self::Neither => "neither",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub diagonal_reports: Vec<DiagonalReport>,
    pub addition: RuleReport,
    pub multiplication: RuleReport,
    /// Why the closed-form fit failed, when it did.
    pub fit_failure: Option<FitError>,
}

impl Classification {
    pub fn params(&self) -> Option<&GrtParams> {
        match &self.verdict {
            Verdict::Grt(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_grt(&self) -> bool {
        matches!(self.verdict, Verdict::Grt(_))
    }
}

pub fn classify(grid: &TriangleGrid) -> Result<Classification, TooSmall> {
    let addition = detect_addition_rule(grid)?;
    let multiplication = detect_multiplication_rule(grid)?;
    let diagonal_reports = diagonal_reports(grid);
    let fit = fit_grt(grid);

    let verdict = match (&fit, addition.constant(), multiplication.constant()) {
        (Ok(params), add, mult) => {
            assert_eq!(add, Some(&params.d), "GRT with inconsistent additive constant");
            assert_eq!(
                mult,
                Some(&mult_constant(params)),
                "GRT with inconsistent multiplicative constant"
            );
            Verdict::Grt(params.clone())
        }
        (Err(_), Some(d), None) => Verdict::AdditionOnly(d.clone()),
        (Err(_), None, Some(m)) => Verdict::MultiplicationOnly(m.clone()),
        (Err(_), _, _) => Verdict::Neither,
    };
    Ok(Classification {
        verdict,
        diagonal_reports,
        addition,
        multiplication,
        fit_failure: fit.err(),
    })
}
