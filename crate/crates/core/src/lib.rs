//! Generalized Rascal Triangles.
//!
//! A Generalized Rascal Triangle (GRT) is the number triangle
//! `T(r, k) = c + k·d1 + r·d2 + r·k·d`, where `r` indexes the major diagonals
//! and `k` the position along one. The Rascal Triangle itself is
//! `T(1, 1, 0, 0) = 1 + r·k`.
//!
//! The crate builds GRTs from the closed form or from the two local rules
//! (an additive and a multiplicative diamond recurrence), classifies
//! arbitrary triangles against those rules, and verifies the identities GRTs
//! satisfy. All arithmetic is exact.
//!
//! ```
//! use grt_core::{generate_closed_form, classify, GrtParams, Verdict};
//!
//! let rascal = generate_closed_form(&GrtParams::rascal(), 5);
//! assert_eq!(rascal.row(4).unwrap().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
//!            ["1", "4", "5", "4", "1"]);
//! assert_eq!(classify(&rascal).unwrap().verdict, Verdict::Grt(GrtParams::rascal()));
//! ```

pub mod analysis;
pub mod cli;
pub mod format;
pub mod generation;
pub mod identities;
pub mod report;
pub mod triangle;

pub use analysis::{
    classify, detect_addition_rule, detect_multiplication_rule, diagonal_reports, fit_grt,
    Classification, DiagonalKind, DiagonalReport, FitError, RuleKind, RuleOutcome, RuleReport,
    TooSmall, Verdict, Violation, Witness,
};
pub use generation::{
    boundary_from_params, generate_by_addition, generate_by_multiplication, generate_closed_form,
    mult_constant, Boundary, BoundaryError, GenerationError,
};
pub use identities::{
    ashley_check, ashley_mod_check, column_diff_check, embed_in_rascal, even_diamond_check,
    multiple_of_rascal, odd_diamond_check, row_sum_formula, t_meg_check, AshleyVariant, Entries,
    IdentityCheck, IdentityError, IdentityName,
};
pub use triangle::{
    closed_form_entry, major_diagonal, minor_diagonal, Diamond, GridError, GrtParams, TriangleGrid,
};

pub use num_bigint::BigInt;
