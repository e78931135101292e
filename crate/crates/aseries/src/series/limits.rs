//! Limit scanners: the shifted endpoint sums rescaled toward powers of
//! `pi`, and the large-shift limits of the series at a fixed interior
//! point.
//!
//! Scaling the `x = 1` sum of family `p` at shift `n` by
//! `s_p(n) / C(n, n/2)` — with `C(n, n/2)` the generalized central
//! binomial (continued through odd `n`, where it carries `1/pi`) and
//! `s_p(n)` equal to `2^(n+1)` for the first two families, `2^(n+4)` for
//! the third and `3 * 2^(n+4)` for the fourth — produces a sequence
//! converging to `pi^p`. The first family is exact: every scaled term
//! equals `pi` on the nose. The second family's deviation from `pi^2` has
//! a closed form as a partial central-binomial sum, reported here as an
//! exact constant; the higher families converge without a comparably
//! simple error form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{lhs_series, SeriesError};
use crate::closedform::corollary::{head1, head2};
use crate::closedform::{corollary_exact, XCase};
use crate::exactnum::{gen_binom_half, rat, BigRat, ExactConst};
use crate::hp::{HpReal, PrecisionCtx};

/// One row of the `pi`-power scan.
#[derive(Debug, Clone)]
pub struct PiLimitRow {
    /// Shift.
    pub n: u64,
    /// The rescaled endpoint sum, exactly.
    pub scaled: ExactConst,
    /// Numeric rendering of `scaled`.
    pub scaled_value: HpReal,
    /// `|scaled_value - pi^p|` (numeric, exact rational of the rounded
    /// operands).
    pub abs_error: BigRat,
    /// Exact `scaled - pi^p` where a closed form exists (first and
    /// second families).
    pub exact_error: Option<ExactConst>,
}

/// Exact deviation `scaled(n) - pi^p`, when available: identically zero
/// for `p = 1`; a partial central-binomial sum minus its limit for
/// `p = 2`; `None` for `p = 3, 4`.
///
/// # Errors
/// [`SeriesError::Power`] unless `p` is in `1..=4`.
pub fn limit_pi_exact_error(p: u32, n: u64) -> Result<Option<ExactConst>, SeriesError> {
    match p {
        1 => Ok(Some(ExactConst::zero())),
        2 => {
            let err = if n.is_multiple_of(2) {
                // head1 increases to pi^2/2.
                ExactConst::from_rat(&head1(n / 2)).add(&ExactConst::from_term(2, 1, &rat(-1, 2)))
            } else {
                // head2 increases to pi/2.
                ExactConst::from_term(1, 1, &(head2(n / 2) * rat(2, 1)))
                    .add(&ExactConst::from_term(2, 1, &rat(-1, 1)))
            };
            Ok(Some(err))
        }
        3 | 4 => Ok(None),
        _ => Err(SeriesError::Power),
    }
}

/// Scan the rescaled endpoint sums of family `p` for shifts
/// `0..=n_max`. Endpoint values come from the exact closed forms, never
/// from endpoint summation.
///
/// # Errors
/// [`SeriesError::Power`] unless `p` is in `1..=4`.
pub fn limit_scan_pi(
    p: u32,
    n_max: u64,
    ctx: &PrecisionCtx,
) -> Result<Vec<PiLimitRow>, SeriesError> {
    super::check_power(p)?;
    let pi_p = crate::hp::pi(ctx).pow_floor(p);
    let mut rows = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let endpoint = corollary_exact(p, n, XCase::One).expect("power already validated");
        let inv_binom = gen_binom_half(n)
            .inverse_single_term()
            .expect("generalized binomial is a single basis term");
        let shift = n as usize;
        let s_p = match p {
            1 | 2 => BigRat::from_integer(BigInt::from(1) << (shift + 1)),
            3 => BigRat::from_integer(BigInt::from(1) << (shift + 4)),
            _ => BigRat::from_integer(BigInt::from(3) << (shift + 4)),
        };
        let scaled = endpoint
            .mul(&inv_binom)
            .expect("rescaled endpoint stays inside the constant basis")
            .scale(&s_p);
        let scaled_value = scaled.to_hp(ctx);
        let abs_error = (scaled_value.to_exact_rat() - pi_p.to_exact_rat()).abs();
        rows.push(PiLimitRow {
            n,
            scaled,
            scaled_value,
            abs_error,
            exact_error: limit_pi_exact_error(p, n)?,
        });
    }
    Ok(rows)
}

/// Which large-shift limit to scan at a fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerLimit {
    /// `(2n+1) * family1(2n, x) -> 1 / sqrt(1 - x^2)`.
    RecipSqrt,
    /// `(2n+1) * family2(2n, x) / (2x) -> asin(x) / sqrt(1 - x^2)`.
    AsinOverSqrt,
}

/// One row of a fixed-point limit scan.
#[derive(Debug, Clone)]
pub struct InnerRow {
    /// Shift parameter (the series is evaluated at shift `2n`).
    pub n: u64,
    /// The rescaled partial-family value.
    pub scaled: HpReal,
    /// The limit it approaches.
    pub target: HpReal,
    /// `|scaled - target|` (exact rational of the rounded operands).
    pub abs_error: BigRat,
}

/// Scan `(2n+1)`-rescaled family values at fixed `x` for `n` in
/// `0..=n_max`, against the limit the scaling isolates. The error decays
/// like `1/n`, so `|x|` is capped at `19/20` to keep the constant tame.
///
/// # Errors
/// [`SeriesError::Domain`] when `|x| > 19/20`;
/// [`SeriesError::ZeroDenominator`] for [`InnerLimit::AsinOverSqrt`] at
/// `x = 0` (the rescaling divides by `x`).
pub fn limit_scan_inner(
    which: InnerLimit,
    x: &BigRat,
    n_max: u64,
    ctx: &PrecisionCtx,
) -> Result<Vec<InnerRow>, SeriesError> {
    if x.abs() > rat(19, 20) {
        return Err(SeriesError::Domain);
    }
    if which == InnerLimit::AsinOverSqrt && x.is_zero() {
        return Err(SeriesError::ZeroDenominator);
    }
    let bits = ctx.bits();
    let root = HpReal::from_rat_floor(&(BigRat::one() - x * x), bits).sqrt_floor();
    let x_hp = HpReal::from_rat_floor(x, bits);
    let target = match which {
        InnerLimit::RecipSqrt => HpReal::from_int(1, bits).div_floor(&root),
        InnerLimit::AsinOverSqrt => crate::hp::asin(&x_hp, ctx).div_floor(&root),
    };
    let p = match which {
        InnerLimit::RecipSqrt => 1,
        InnerLimit::AsinOverSqrt => 2,
    };
    let mut rows = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let report = lhs_series(p, 2 * n, x, ctx)?;
        let count = i64::try_from(2 * n + 1).expect("limit_scan_inner: shift too large");
        let scaled = match which {
            InnerLimit::RecipSqrt => report.value.mul_int(count),
            InnerLimit::AsinOverSqrt => report.value.mul_int(count).div_floor(&x_hp.mul_int(2)),
        };
        let abs_error = (scaled.to_exact_rat() - target.to_exact_rat()).abs();
        rows.push(InnerRow {
            n,
            scaled,
            target: target.clone(),
            abs_error,
        });
    }
    Ok(rows)
}
