//! Identities that every Generalized Rascal Triangle satisfies.
//!
//! Each check evaluates both sides of an identity exactly and reports the
//! outcome as an [`IdentityCheck`]. Checks read entries through the
//! [`Entries`] trait, so they run against the closed form, a stored grid, or
//! a deliberately corrupted source in tests. Diamond averages are compared as
//! exact rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::triangle::{closed_form_entry, Diamond, GrtParams, TriangleGrid};

/// Read access to `T(r, k)`.
pub trait Entries {
    fn entry(&self, r: usize, k: usize) -> BigInt;
}

impl Entries for GrtParams {
    fn entry(&self, r: usize, k: usize) -> BigInt {
        closed_form_entry(self, r, k)
    }
}

/// # Panics
///
/// Reading outside the grid panics; size the grid to cover every cell a
/// check touches.
impl Entries for TriangleGrid {
    fn entry(&self, r: usize, k: usize) -> BigInt {
        self.entry_at(r, k)
            .unwrap_or_else(|e| panic!("identity check read outside the grid: {e}"))
            .clone()
    }
}

impl<T: Entries + ?Sized> Entries for &T {
    fn entry(&self, r: usize, k: usize) -> BigInt {
        (**self).entry(r, k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityName {
    RowSum,
    OddDiamond,
    EvenDiamond,
    Ashley,
    AshleyMod1,
    AshleyMod2,
    AshleyMod3,
    ColumnDifference,
    TMeg,
    Embedding,
    Multiple,
}

impl IdentityName {
    pub const ALL: [IdentityName; 11] = [
        Self::RowSum,
        Self::OddDiamond,
        Self::EvenDiamond,
        Self::Ashley,
        Self::AshleyMod1,
        Self::AshleyMod2,
        Self::AshleyMod3,
        Self::ColumnDifference,
        Self::TMeg,
        Self::Embedding,
        Self::Multiple,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::RowSum => "rowsums",
            Self::OddDiamond => "odd-diamond",
            Self::EvenDiamond => "even-diamond",
            Self::Ashley => "ashley",
            Self::AshleyMod1 => "ashley-mod1",
            Self::AshleyMod2 => "ashley-mod2",
            Self::AshleyMod3 => "ashley-mod3",
            Self::ColumnDifference => "column-diff",
            Self::TMeg => "tmeg",
            Self::Embedding => "embed",
            Self::Multiple => "multiple",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|n| n.as_str() == name)
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where an identity failed and what the two sides evaluated to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    /// Index tuple of the failing instance, e.g. `(r, k)` or
    /// `(top_r, top_k, n)`.
    pub location: Vec<usize>,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: IdentityName,
    /// Number of instances evaluated.
    pub instances: usize,
    pub first_failure: Option<Failure>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }

    fn compare(name: IdentityName, location: Vec<usize>, lhs: BigRational, rhs: BigRational) -> Self {
        let first_failure = (lhs != rhs).then_some(Failure { location, lhs, rhs });
        Self {
            name,
            instances: 1,
            first_failure,
        }
    }

    fn compare_ints(name: IdentityName, location: Vec<usize>, lhs: BigInt, rhs: BigInt) -> Self {
        Self::compare(name, location, BigRational::from(lhs), BigRational::from(rhs))
    }

    /// Folds many single-instance checks into one, keeping the first failure.
    pub fn combine(name: IdentityName, checks: impl IntoIterator<Item = IdentityCheck>) -> Self {
        let mut out = Self {
            name,
            instances: 0,
            first_failure: None,
        };
        for check in checks {
            out.instances += check.instances;
            if out.first_failure.is_none() {
                out.first_failure = check.first_failure;
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("{name} needs {requirement}; got {got}")]
    IndexPrecondition {
        name: IdentityName,
        requirement: &'static str,
        got: String,
    },
    #[error("the T-Meg rule only applies when d1 = d2 = 0 (got d1={d1}, d2={d2})")]
    TMegNotApplicable { d1: BigInt, d2: BigInt },
}

fn require(
    ok: bool,
    name: IdentityName,
    requirement: &'static str,
    got: impl FnOnce() -> String,
) -> Result<(), IdentityError> {
    if ok {
        Ok(())
    } else {
        Err(IdentityError::IndexPrecondition {
            name,
            requirement,
            got: got(),
        })
    }
}

/// Closed-form row sum
/// `s_n = (d/6)n³ + ((d1+d2)/2)n² + (c + (d1+d2)/2 - d/6)n + c`.
///
/// # Panics
///
/// Panics if the rational evaluation is not an integer, which would mean the
/// formula itself is wrong.
pub fn row_sum_formula(params: &GrtParams, n: usize) -> BigInt {
    // Six times the closed form, kept in integers and divided once.
    let n = BigInt::from(n);
    let d12 = &params.d1 + &params.d2;
    let c6 = &params.c * 6;
    let linear: BigInt = &c6 + &d12 * 3 - &params.d;
    let scaled: BigInt = ((&params.d * &n + &d12 * 3) * &n + linear) * &n + c6;
    let (sum, rem) = scaled.div_rem(&BigInt::from(6));
    assert!(rem.is_zero(), "row-sum formula produced a non-integer: {scaled}/6");
    sum
}

/// The sum of row `n`, read entry by entry.
pub fn row_sum_direct(source: &impl Entries, n: usize) -> BigInt {
    (0..=n).map(|r| source.entry(r, n - r)).sum()
}

pub fn row_sum_check(params: &GrtParams, n: usize) -> IdentityCheck {
    IdentityCheck::compare_ints(
        IdentityName::RowSum,
        vec![n],
        row_sum_direct(params, n),
        row_sum_formula(params, n),
    )
}

fn mean_of(source: &impl Entries, cells: impl Iterator<Item = (usize, usize)>) -> BigRational {
    let mut sum = BigInt::zero();
    let mut count = 0u64;
    for (r, k) in cells {
        sum += source.entry(r, k);
        count += 1;
    }
    BigRational::new(sum, BigInt::from(count))
}

/// The boundary of the side-`(2n+1)` diamond with top `(top_r, top_k)`
/// averages to its center entry. The boundary holds `8n` cells.
pub fn odd_diamond_check(
    params: &GrtParams,
    top_r: usize,
    top_k: usize,
    half: usize,
) -> Result<IdentityCheck, IdentityError> {
    odd_diamond_check_in(params, top_r, top_k, half)
}

pub fn odd_diamond_check_in(
    source: &impl Entries,
    top_r: usize,
    top_k: usize,
    half: usize,
) -> Result<IdentityCheck, IdentityError> {
    let name = IdentityName::OddDiamond;
    require(half >= 1, name, "n >= 1", || format!("n = {half}"))?;
    let diamond = Diamond::new(top_r, top_k, 2 * half + 1).expect("side is at least 3");
    let (cr, ck) = diamond.center().expect("odd side has a center");
    Ok(IdentityCheck::compare(
        name,
        vec![top_r, top_k, half],
        mean_of(source, diamond.boundary()),
        BigRational::from(source.entry(cr, ck)),
    ))
}

/// The boundary of the side-`2n` diamond `D_n` averages to the mean of the
/// four cells of the inner 2-diamond `D_1` with top `(r, k)`. `D_n` has top
/// `(r - (n-1), k - (n-1))` and `8n - 4` boundary cells.
pub fn even_diamond_check(
    params: &GrtParams,
    r: usize,
    k: usize,
    n: usize,
) -> Result<IdentityCheck, IdentityError> {
    even_diamond_check_in(params, r, k, n)
}

pub fn even_diamond_check_in(
    source: &impl Entries,
    r: usize,
    k: usize,
    n: usize,
) -> Result<IdentityCheck, IdentityError> {
    let name = IdentityName::EvenDiamond;
    require(n >= 1, name, "n >= 1", || format!("n = {n}"))?;
    require(r + 1 >= n && k + 1 >= n, name, "r >= n-1 and k >= n-1", || {
        format!("(r, k, n) = ({r}, {k}, {n})")
    })?;
    let outer = Diamond::new(r + 1 - n, k + 1 - n, 2 * n).expect("side is at least 2");
    let inner = Diamond::new(r, k, 2).expect("side is 2");
    Ok(IdentityCheck::compare(
        name,
        vec![r, k, n],
        mean_of(source, outer.boundary()),
        mean_of(source, inner.cells()),
    ))
}

/// `T(r,k) = T(r-1,k) + T(r,k-1) - T(r-2,k-1) + ((2-k)d - d2)` for
/// `r >= 2, k >= 1`.
pub fn ashley_check(params: &GrtParams, r: usize, k: usize) -> Result<IdentityCheck, IdentityError> {
    ashley_check_in(params, &params.d, &params.d2, r, k)
}

pub fn ashley_check_in(
    source: &impl Entries,
    d: &BigInt,
    d2: &BigInt,
    r: usize,
    k: usize,
) -> Result<IdentityCheck, IdentityError> {
    let name = IdentityName::Ashley;
    require(r >= 2 && k >= 1, name, "r >= 2 and k >= 1", || format!("(r, k) = ({r}, {k})"))?;
    let diagonal_factor = (BigInt::from(2) - BigInt::from(k)) * d - d2;
    let rhs = source.entry(r - 1, k) + source.entry(r, k - 1) - source.entry(r - 2, k - 1) + diagonal_factor;
    Ok(IdentityCheck::compare_ints(name, vec![r, k], source.entry(r, k), rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AshleyVariant {
    /// `T(r-1,k) + T(r,k-1) - T(r-2,k-1) - T(r-2,k-2) + T(r-3,k-2)`, `r >= 3, k >= 2`.
    One,
    /// `T(r,k-1) + T(r-1,k-1) - T(r-2,k-2) - T(r-2,k-3) + T(r-3,k-3)`, `r, k >= 3`.
    Two,
    /// `T(r-1,k) + T(r-1,k-1) - T(r-2,k-2) - T(r-3,k-2) + T(r-3,k-3)`, `r, k >= 3`.
    Three,
}

impl AshleyVariant {
    pub const ALL: [AshleyVariant; 3] = [Self::One, Self::Two, Self::Three];

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Self::One),
            2 => Some(Self::Two),
            3 => Some(Self::Three),
            _ => None,
        }
    }

    pub fn identity(&self) -> IdentityName {
        match self {
            Self::One => IdentityName::AshleyMod1,
            Self::Two => IdentityName::AshleyMod2,
            Self::Three => IdentityName::AshleyMod3,
        }
    }

    pub fn min_indices(&self) -> (usize, usize) {
        match self {
            Self::One => (3, 2),
            Self::Two | Self::Three => (3, 3),
        }
    }

    /// Cell offsets `(dr, dk)` subtracted from `(r, k)`, paired with signs.
    fn terms(&self) -> [(usize, usize, bool); 5] {
        match self {
            Self::One => [(1, 0, true), (0, 1, true), (2, 1, false), (2, 2, false), (3, 2, true)],
            Self::Two => [(0, 1, true), (1, 1, true), (2, 2, false), (2, 3, false), (3, 3, true)],
            Self::Three => [(1, 0, true), (1, 1, true), (2, 2, false), (3, 2, false), (3, 3, true)],
        }
    }
}

pub fn ashley_mod_check(
    params: &GrtParams,
    variant: AshleyVariant,
    r: usize,
    k: usize,
) -> Result<IdentityCheck, IdentityError> {
    ashley_mod_check_in(params, variant, r, k)
}

pub fn ashley_mod_check_in(
    source: &impl Entries,
    variant: AshleyVariant,
    r: usize,
    k: usize,
) -> Result<IdentityCheck, IdentityError> {
    let (min_r, min_k) = variant.min_indices();
    let requirement = match variant {
        AshleyVariant::One => "r >= 3 and k >= 2",
        _ => "r >= 3 and k >= 3",
    };
    require(r >= min_r && k >= min_k, variant.identity(), requirement, || {
        format!("(r, k) = ({r}, {k})")
    })?;
    let rhs = variant
        .terms()
        .iter()
        .fold(BigInt::zero(), |acc, &(dr, dk, plus)| {
            let v = source.entry(r - dr, k - dk);
            if plus {
                acc + v
            } else {
                acc - v
            }
        });
    Ok(IdentityCheck::compare_ints(variant.identity(), vec![r, k], source.entry(r, k), rhs))
}

/// `T(r,k) - T(r-1,k+1) = T(r-1,k-1) - T(r-2,k)`, both sides equal to
/// `d2 - d1 + (k-r+1)d`.
pub fn column_diff_check(params: &GrtParams, r: usize, k: usize) -> Result<IdentityCheck, IdentityError> {
    column_diff_check_in(params, params, r, k)
}

pub fn column_diff_check_in(
    source: &impl Entries,
    params: &GrtParams,
    r: usize,
    k: usize,
) -> Result<IdentityCheck, IdentityError> {
    let name = IdentityName::ColumnDifference;
    require(r >= 2 && k >= 1, name, "r >= 2 and k >= 1", || format!("(r, k) = ({r}, {k})"))?;
    let upper = source.entry(r, k) - source.entry(r - 1, k + 1);
    let lower = source.entry(r - 1, k - 1) - source.entry(r - 2, k);
    if upper != lower {
        return Ok(IdentityCheck::compare_ints(name, vec![r, k], upper, lower));
    }
    Ok(IdentityCheck::compare_ints(name, vec![r, k], upper, column_difference(params, r, k)))
}

/// `d2 - d1 + (k - r + 1)d`.
pub fn column_difference(params: &GrtParams, r: usize, k: usize) -> BigInt {
    let shift = BigInt::from(k) - BigInt::from(r) + 1;
    &params.d2 - &params.d1 + shift * &params.d
}

/// `T(r,k) = T(r-1,k-1) + T(0,r+k-2) + T(1,r+k-3) + 2(d-c)` for
/// `r >= 1, k >= 2`, valid only when `d1 = d2 = 0`.
pub fn t_meg_check(params: &GrtParams, r: usize, k: usize) -> Result<IdentityCheck, IdentityError> {
    t_meg_check_in(params, params, r, k)
}

pub fn t_meg_check_in(
    source: &impl Entries,
    params: &GrtParams,
    r: usize,
    k: usize,
) -> Result<IdentityCheck, IdentityError> {
    if !params.d1.is_zero() || !params.d2.is_zero() {
        return Err(IdentityError::TMegNotApplicable {
            d1: params.d1.clone(),
            d2: params.d2.clone(),
        });
    }
    let name = IdentityName::TMeg;
    require(r >= 1 && k >= 2, name, "r >= 1 and k >= 2", || format!("(r, k) = ({r}, {k})"))?;
    let rhs = source.entry(r - 1, k - 1)
        + source.entry(0, r + k - 2)
        + source.entry(1, r + k - 3)
        + BigInt::from(2) * (&params.d - &params.c);
    Ok(IdentityCheck::compare_ints(name, vec![r, k], source.entry(r, k), rhs))
}

/// Rows and columns compared when confirming an embedding or a multiple.
pub const WINDOW: usize = 10;

/// Offset `(r0, k0)` such that `T(r, k) = R(r0 + r, k0 + k) = 1 + (r0+r)(k0+k)`.
///
/// Exists iff `d = 1`, `c - d1·d2 = 1` and both `d1` and `d2` are
/// non-negative; the offset is then `(d1, d2)`. The match is confirmed on a
/// [`WINDOW`]-sized block before returning.
pub fn embed_in_rascal(params: &GrtParams) -> Option<(usize, usize)> {
    if !params.d.is_one() || &params.c - &params.d1 * &params.d2 != BigInt::one() {
        return None;
    }
    let r0 = params.d1.to_usize()?;
    let k0 = params.d2.to_usize()?;
    let window_ok = (0..WINDOW).all(|r| {
        (0..WINDOW).all(|k| closed_form_entry(params, r, k) == BigInt::from(1 + (r0 + r) * (k0 + k)))
    });
    window_ok.then_some((r0, k0))
}

/// Scalar `m` with `T = m·R`, which exists iff `d = c` and `d1 = d2 = 0`.
pub fn multiple_of_rascal(params: &GrtParams) -> Option<BigInt> {
    if params.d != params.c || !params.d1.is_zero() || !params.d2.is_zero() {
        return None;
    }
    let m = params.c.clone();
    let window_ok = (0..WINDOW)
        .all(|r| (0..WINDOW).all(|k| closed_form_entry(params, r, k) == &m * BigInt::from(1 + r * k)));
    window_ok.then_some(m)
}

/// Runs one identity over every valid index tuple with components at most
/// `depth`.
///
/// Row sums cover `n <= depth`. Diamonds cover tops `(r, k)` with
/// `r, k <= depth` and `1 <= n <= depth` (even diamonds additionally need
/// `n <= min(r, k) + 1`). Ashley-type and column checks cover `r, k <= depth`
/// above their minimum indices. Embedding and multiple checks are
/// informational and always hold; use [`embed_in_rascal`] and
/// [`multiple_of_rascal`] for their values.
pub fn sweep(params: &GrtParams, name: IdentityName, depth: usize) -> Result<IdentityCheck, IdentityError> {
    let grid2 = |min_r: usize, min_k: usize| {
        (min_r..=depth).flat_map(move |r| (min_k..=depth).map(move |k| (r, k)))
    };
    let ok = |r: Result<IdentityCheck, IdentityError>| r.expect("sweep only visits valid indices");
    let check = match name {
        IdentityName::RowSum => {
            IdentityCheck::combine(name, (0..=depth).map(|n| row_sum_check(params, n)))
        }
        IdentityName::OddDiamond => IdentityCheck::combine(
            name,
            grid2(0, 0).flat_map(|(r, k)| {
                (1..=depth.max(1)).map(move |n| ok(odd_diamond_check(params, r, k, n)))
            }),
        ),
        IdentityName::EvenDiamond => IdentityCheck::combine(
            name,
            grid2(0, 0).flat_map(|(r, k)| {
                (1..=(r.min(k) + 1).min(depth.max(1))).map(move |n| ok(even_diamond_check(params, r, k, n)))
            }),
        ),
        IdentityName::Ashley => {
            IdentityCheck::combine(name, grid2(2, 1).map(|(r, k)| ok(ashley_check(params, r, k))))
        }
        IdentityName::AshleyMod1 | IdentityName::AshleyMod2 | IdentityName::AshleyMod3 => {
            let variant = match name {
                IdentityName::AshleyMod1 => AshleyVariant::One,
                IdentityName::AshleyMod2 => AshleyVariant::Two,
                _ => AshleyVariant::Three,
            };
            let (min_r, min_k) = variant.min_indices();
            IdentityCheck::combine(
                name,
                grid2(min_r, min_k).map(|(r, k)| ok(ashley_mod_check(params, variant, r, k))),
            )
        }
        IdentityName::ColumnDifference => {
            IdentityCheck::combine(name, grid2(2, 1).map(|(r, k)| ok(column_diff_check(params, r, k))))
        }
        IdentityName::TMeg => {
            let mut checks = Vec::new();
            for (r, k) in grid2(1, 2) {
                checks.push(t_meg_check(params, r, k)?);
            }
            IdentityCheck::combine(name, checks)
        }
        IdentityName::Embedding | IdentityName::Multiple => IdentityCheck {
            name,
            instances: 1,
            first_failure: None,
        },
    };
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generation::generate_closed_form;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Closed-form source with one cell bumped by +1.
    struct Mutated {
        base: GrtParams,
        at: (usize, usize),
    }

    impl Entries for Mutated {
        fn entry(&self, r: usize, k: usize) -> BigInt {
            let v = self.base.entry(r, k);
            if (r, k) == self.at {
                v + 1
            } else {
                v
            }
        }
    }

    #[test]
    fn row_sum_examples() {
        assert_eq!(row_sum_formula(&GrtParams::rascal(), 4), big(15));
        assert_eq!(row_sum_formula(&GrtParams::new(-8, 3, 1, 2), 0), big(-8));
        assert_eq!(row_sum_formula(&GrtParams::new(1, 5, 2, 3), 2), big(23));
    }

    #[test]
    fn odd_diamond_rascal_instance() {
        let rascal = GrtParams::rascal();
        let diamond = Diamond::new(6, 6, 3).unwrap();
        let values: Vec<BigInt> = diamond.boundary().map(|(r, k)| rascal.entry(r, k)).collect();
        let sum: BigInt = values.iter().sum();
        assert_eq!(sum, big(400));
        assert_eq!(rascal.entry(7, 7), big(50));
        assert!(odd_diamond_check(&rascal, 6, 6, 1).unwrap().holds());
        assert!(odd_diamond_check(&GrtParams::new(5, 0, 0, 0), 3, 9, 4).unwrap().holds());
        assert!(odd_diamond_check(&GrtParams::new(1, 5, 2, 3), 0, 0, 2).unwrap().holds());
        assert!(odd_diamond_check(&rascal, 0, 0, 0).is_err());
    }

    #[test]
    fn even_diamond_examples() {
        let rascal = GrtParams::rascal();
        assert!(even_diamond_check(&rascal, 0, 0, 1).unwrap().holds());
        assert!(even_diamond_check(&rascal, 2, 3, 2).unwrap().holds());
        assert!(even_diamond_check(&GrtParams::new(2, 2, 3, 1), 3, 3, 3).unwrap().holds());
        assert!(even_diamond_check(&rascal, 1, 5, 3).is_err());
    }

    #[test]
    fn even_diamond_needs_the_inner_bottom_cell() {
        // Replacing T(r+1,k+1) by T(r+n,k+n) in the four-cell mean breaks the
        // identity once n > 1.
        let p = GrtParams::rascal();
        let (r, k, n) = (2, 3, 2);
        let outer = Diamond::new(r + 1 - n, k + 1 - n, 2 * n).unwrap();
        let lhs = mean_of(&p, outer.boundary());
        let literal = mean_of(&p, [(r, k), (r + 1, k), (r + n, k + n), (r, k + 1)].into_iter());
        assert_ne!(lhs, literal);
    }

    #[test]
    fn ashley_examples() {
        // 82 + 76 - 50 - 9 = 99 sits in T(2,4,3,1) at (r, k) = (5, 4).
        let p = GrtParams::new(2, 4, 3, 1);
        assert_eq!(
            [p.entry(4, 4), p.entry(5, 3), p.entry(3, 3), p.entry(5, 4)],
            [big(82), big(76), big(50), big(99)]
        );
        assert_eq!((BigInt::from(2) - 4) * &p.d - &p.d2, big(-9));
        assert!(ashley_check(&p, 5, 4).unwrap().holds());
        assert!(ashley_check(&GrtParams::new(6, 0, 0, 0), 3, 1).unwrap().holds());
        assert!(ashley_check(&GrtParams::new(1, 5, 2, 3), 3, 2).unwrap().holds());
        assert!(ashley_check(&p, 1, 4).is_err());
    }

    #[test]
    fn ashley_mod_instances() {
        let p = GrtParams::new(2, 4, 3, 1);
        let (r, k) = (5, 4);
        let e = |dr: usize, dk: usize| p.entry(r - dr, k - dk);
        assert_eq!([e(1, 0), e(0, 1), e(2, 1), e(2, 2), e(3, 2)], [82, 76, 50, 35, 26].map(big));
        assert_eq!([e(0, 1), e(1, 1), e(2, 2), e(2, 3), e(3, 3)], [76, 63, 35, 20, 15].map(big));
        assert_eq!([e(1, 0), e(1, 1), e(2, 2), e(3, 2), e(3, 3)], [82, 63, 35, 26, 15].map(big));
        for v in AshleyVariant::ALL {
            assert!(ashley_mod_check(&p, v, r, k).unwrap().holds());
        }
        assert!(ashley_mod_check(&p, AshleyVariant::One, 3, 2).is_ok());
        assert!(ashley_mod_check(&p, AshleyVariant::Two, 3, 2).is_err());
        assert_eq!(AshleyVariant::from_number(4), None);
    }

    #[test]
    fn column_difference_examples() {
        // 82-76 = 50-44 = 26-20 = 10-4 = 6 in T(2,4,3,1), read right to left.
        let p = GrtParams::new(2, 4, 3, 1);
        let chain = [((4, 4), (5, 3)), ((3, 3), (4, 2)), ((2, 2), (3, 1)), ((1, 1), (2, 0))];
        let pairs: Vec<(BigInt, BigInt)> =
            chain.iter().map(|&((a, b), (c, d))| (p.entry(a, b), p.entry(c, d))).collect();
        assert_eq!(pairs, [(82, 76), (50, 44), (26, 20), (10, 4)].map(|(a, b)| (big(a), big(b))));
        assert!(pairs.iter().all(|(a, b)| a - b == big(6)));
        assert_eq!(column_difference(&p, 5, 3), big(-6));
        assert!(column_diff_check(&p, 5, 3).unwrap().holds());

        assert_eq!(column_difference(&GrtParams::rascal(), 2, 2), big(1));
        assert!(column_diff_check(&GrtParams::rascal(), 2, 2).unwrap().holds());
        let symmetric = GrtParams::new(4, 0, 7, 7);
        for r in 2..6 {
            for k in 1..6 {
                assert_eq!(column_difference(&symmetric, r, k), big(0));
                assert!(column_diff_check(&symmetric, r, k).unwrap().holds());
            }
        }
    }

    #[test]
    fn t_meg_examples() {
        let p = GrtParams::new(3, 1, 0, 0);
        assert_eq!(
            [p.entry(3, 3), p.entry(2, 2), p.entry(0, 4), p.entry(1, 3)],
            [12, 7, 3, 6].map(big)
        );
        assert!(t_meg_check(&p, 3, 3).unwrap().holds());
        for c in -3..=3 {
            assert!(t_meg_check(&GrtParams::new(c, c, 0, 0), 2, 5).unwrap().holds());
        }
        assert!(t_meg_check(&GrtParams::new(0, 0, 0, 0), 1, 2).unwrap().holds());
        assert!(matches!(
            t_meg_check(&GrtParams::new(1, 1, 1, 0), 3, 3),
            Err(IdentityError::TMegNotApplicable { .. })
        ));
        assert!(t_meg_check(&p, 1, 1).is_err());
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(embed_in_rascal(&GrtParams::rascal()), Some((0, 0)));
        assert_eq!(embed_in_rascal(&GrtParams::new(7, 1, 2, 3)), Some((2, 3)));
        assert_eq!(embed_in_rascal(&GrtParams::new(2, 1, 2, 3)), None);
        // c - d1·d2 = 1 but the offset would be negative.
        assert_eq!(embed_in_rascal(&GrtParams::new(7, 1, -2, -3)), None);
        assert_eq!(embed_in_rascal(&GrtParams::new(7, 2, 2, 3)), None);
    }

    #[test]
    fn multiple_examples() {
        assert_eq!(multiple_of_rascal(&GrtParams::new(5, 5, 0, 0)), Some(big(5)));
        assert_eq!(multiple_of_rascal(&GrtParams::rascal()), Some(big(1)));
        let p = GrtParams::new(2, 3, 0, 0);
        assert_eq!(multiple_of_rascal(&p), None);
        assert_eq!(p.entry(1, 1), big(5));
        assert_ne!(p.entry(1, 1), big(2) * GrtParams::rascal().entry(1, 1));
    }

    #[test]
    fn checks_read_stored_grids() {
        let p = GrtParams::new(2, 4, 3, 1);
        let grid = generate_closed_form(&p, 14);
        assert!(ashley_check_in(&grid, &p.d, &p.d2, 5, 4).unwrap().holds());
        assert!(odd_diamond_check_in(&grid, 1, 2, 2).unwrap().holds());
        assert_eq!(row_sum_direct(&grid, 6), row_sum_formula(&p, 6));
    }

    #[test]
    fn mutation_breaks_every_referenced_cell() {
        let p = GrtParams::new(2, -1, 3, 1);
        let (r, k) = (5, 4);
        let ashley_cells = [(r, k), (r - 1, k), (r, k - 1), (r - 2, k - 1)];
        for at in ashley_cells {
            let m = Mutated { base: p.clone(), at };
            assert!(!ashley_check_in(&m, &p.d, &p.d2, r, k).unwrap().holds(), "{at:?}");
        }
        for v in AshleyVariant::ALL {
            let cells = std::iter::once((r, k)).chain(v.terms().into_iter().map(|(dr, dk, _)| (r - dr, k - dk)));
            for at in cells {
                let m = Mutated { base: p.clone(), at };
                assert!(!ashley_mod_check_in(&m, v, r, k).unwrap().holds(), "{v:?} {at:?}");
            }
        }
        for at in [(r, k), (r - 1, k + 1), (r - 1, k - 1), (r - 2, k)] {
            let m = Mutated { base: p.clone(), at };
            assert!(!column_diff_check_in(&m, &p, r, k).unwrap().holds(), "{at:?}");
        }
    }

    #[test]
    fn sweeps_hold_and_count_instances() {
        let p = GrtParams::new(1, 5, 2, 3);
        for name in IdentityName::ALL {
            if name == IdentityName::TMeg {
                assert!(sweep(&p, name, 6).is_err());
                continue;
            }
            let check = sweep(&p, name, 6).unwrap();
            assert!(check.holds(), "{name}");
            assert!(check.instances > 0, "{name}");
        }
        assert_eq!(sweep(&p, IdentityName::RowSum, 10).unwrap().instances, 11);
        assert!(sweep(&GrtParams::new(3, 1, 0, 0), IdentityName::TMeg, 6).unwrap().holds());
        assert_eq!(IdentityName::parse("ashley-mod2"), Some(IdentityName::AshleyMod2));
        assert_eq!(IdentityName::parse("nope"), None);
    }

    #[test]
    fn combine_keeps_first_failure() {
        let p = GrtParams::new(2, -1, 3, 1);
        let bad = Mutated { base: p.clone(), at: (4, 4) };
        let checks = (2..=6).map(|r| ashley_check_in(&bad, &p.d, &p.d2, r, 4).unwrap());
        let combined = IdentityCheck::combine(IdentityName::Ashley, checks);
        assert_eq!(combined.instances, 5);
        assert_eq!(combined.first_failure.unwrap().location, vec![4, 4]);
    }

    fn params() -> impl Strategy<Value = GrtParams> {
        (-30i64..=30, -30i64..=30, -30i64..=30, -30i64..=30)
            .prop_map(|(c, d, d1, d2)| GrtParams::new(c, d, d1, d2))
    }

    proptest! {
        #[test]
        fn row_sum_matches_direct(p in params(), n in 0usize..60) {
            prop_assert_eq!(row_sum_formula(&p, n), row_sum_direct(&p, n));
        }

        #[test]
        fn diamonds_hold(p in params(), r in 0usize..12, k in 0usize..12, n in 1usize..5) {
            prop_assert!(odd_diamond_check(&p, r, k, n).unwrap().holds());
            if n <= r.min(k) + 1 {
                prop_assert!(even_diamond_check(&p, r, k, n).unwrap().holds());
            }
        }

        #[test]
        fn column_difference_is_constant_along_anti_columns(p in params(), r in 2usize..12, k in 1usize..12, shift in 0usize..5) {
            // Moving (r, k) to (r + s, k + s) keeps k - r, hence the difference.
            let here = column_difference(&p, r, k);
            prop_assert_eq!(p.entry(r, k) - p.entry(r - 1, k + 1), here.clone());
            prop_assert_eq!(p.entry(r + shift, k + shift) - p.entry(r + shift - 1, k + shift + 1), here);
        }

        #[test]
        fn embedding_window(d1 in 0i64..20, d2 in 0i64..20, r in 0usize..11, k in 0usize..11) {
            let p = GrtParams::new(1 + d1 * d2, 1, d1, d2);
            let (r0, k0) = embed_in_rascal(&p).unwrap();
            prop_assert_eq!(p.entry(r, k), BigInt::from(1 + (r0 + r) * (k0 + k)));
        }
    }
}
