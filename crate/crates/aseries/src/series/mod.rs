//! Arbitrary-precision evaluation of the four series families, their
//! closed forms, the generalized hypergeometric evaluator, and the limit
//! and partial-sum scanners.
//!
//! # The families
//!
//! With `C(2k,k)` the central binomial coefficients, `G(k) = sum_(j<k)
//! 1/(2j+1)^2` and `H(k) = sum_(0<j<k) 1/(2j)^2`, the family with arcsine
//! power `p` and shift `n` is
//!
//! ```text
//! p=1:  sum_(k>=0)  C(2k,k) x^(2k)     / (4^k (2k+n+1))
//! p=2:  sum_(k>=1)  (2x)^(2k)          / (C(2k,k) k (2k+n))
//! p=3:  sum_(k>=0)  C(2k,k) G(k) x^(2k+1) / (4^k (2k+1+n))
//! p=4:  sum_(k>=1)  4^k H(k) x^(2k)    / (C(2k,k) k (2k+n))
//! ```
//!
//! Families 1, 2, 4 are even functions of `x`; family 3 is odd.
//!
//! # Certified mode (`|x| < 1`)
//!
//! Coefficients are bounded by explicit rational majorants derived from
//! the two-sided central-binomial estimate `7/(8 sqrt(pi k)) <= C(2k,k)/4^k
//! <= 1/sqrt(pi k)`, so the tail after `K` terms is at most
//! `env(K+1) * x^(2K+2) / (1 - x^2)` — an exact rational. `K` is chosen
//! before summation so this bound is below `10^-digits`, then the partial
//! sum is accumulated in fixed-point with directed rounding; the report
//! carries the exact tail bound and a rounding-slack accessor.
//!
//! # Estimate mode (`|x| = 1`)
//!
//! At the endpoint the tail decays only like `k^(-1/2)`–`k^(-3/2)`, so the
//! evaluator sums a fixed 20000 terms and brackets the remainder between
//! two-sided integral estimates. The result is flagged `certified: false`;
//! exact endpoint statements are the closed-form module's job.

mod hyp;
mod limits;
mod tails;
mod transform;

pub use hyp::{check_hyp_811, check_hyp_88, pfq, HypCheck};
pub use limits::{
    limit_pi_exact_error, limit_scan_inner, limit_scan_pi, InnerLimit, InnerRow, PiLimitRow,
};
pub use tails::{partial_tail_identity_check, TailCheck, TailIdentity};
pub use transform::{general_transform_check, TransformCheck};

use std::f64::consts::{FRAC_PI_2, LN_10, PI};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::closedform::TheoremRhs;
use crate::exactnum::BigRat;
use crate::hp::{HpReal, PrecisionCtx};

/// Errors shared by the series-evaluation entry points.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    /// Arcsine power outside `1..=4`.
    #[error("p must be in 1..=4")]
    Power,
    /// Argument outside the function's domain.
    #[error("x out of domain")]
    Domain,
    /// A prefactor `x^-m` was requested at `x = 0`.
    #[error("division by zero at x = 0")]
    ZeroDenominator,
    /// The hypergeometric series cannot converge for these parameters.
    #[error("series diverges for these parameters")]
    Divergent,
    /// A lower hypergeometric parameter is a nonpositive integer.
    #[error("lower parameter is a nonpositive integer")]
    Pole,
    /// The identity's proof does not cover this argument; the check is
    /// refused rather than reported as a failure.
    #[error("identity unchecked for this x")]
    Unchecked,
}

/// Outcome of one series evaluation.
#[derive(Debug, Clone)]
pub struct EvalReport {
    /// The accumulated value.
    pub value: HpReal,
    /// Bound on `|true sum - partial sum|`: exact and certified when
    /// `certified` is set, a two-sided-bracket half-width otherwise.
    pub tail_bound: BigRat,
    /// Terms actually accumulated.
    pub terms_used: u64,
    /// Decimal digits the evaluation targeted.
    pub digits: u32,
    /// Whether `tail_bound` is a proven majorant (`|x| < 1`) rather than
    /// an endpoint estimate.
    pub certified: bool,
}

impl EvalReport {
    /// Bound on the directed-rounding error committed by the summation:
    /// at most a few ulps per term, so `4 (terms + 2) / 2^bits`. Add this
    /// to `tail_bound` when comparing against an exact reference.
    pub fn rounding_slack(&self) -> BigRat {
        let ops = BigInt::from(4 * (self.terms_used + 2));
        BigRat::new(ops, BigInt::one() << self.value.bits() as usize)
    }
}

/// Floor integer square root (exact).
pub(crate) fn isqrt_u64(m: u64) -> u64 {
    if m == 0 {
        return 0;
    }
    let mut r = (m as f64).sqrt() as u64;
    while r.checked_mul(r).map(|s| s > m).unwrap_or(true) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).map(|s| s <= m).unwrap_or(false) {
        r += 1;
    }
    r
}

/// Smallest `K` (at least 4) with `env(K+1) * x_sq^(K+1) / (1 - x_sq)
/// < eps`, together with that exact tail bound. `env` must be a
/// non-increasing coefficient majorant; `0 < x_sq < 1`.
pub(crate) fn geometric_truncation<F: Fn(u64) -> BigRat>(
    env: F,
    x_sq: &BigRat,
    eps: &BigRat,
    digits: u32,
) -> (u64, BigRat) {
    // f64 seed for the exact check; correctness rests on the loop below.
    let xs = x_sq.to_f64().unwrap_or(0.5).clamp(1e-300, 1.0 - 1e-15);
    let seed = ((f64::from(digits) * LN_10 + 30.0) / -xs.ln()).ceil();
    let mut k = if seed.is_finite() && seed > 0.0 {
        seed as u64
    } else {
        4
    }
    .max(4);
    let one = BigRat::one();
    loop {
        let e = i32::try_from(k + 1).expect("geometric_truncation: index overflow");
        let tail = env(k + 1) * x_sq.pow(e) / (&one - x_sq);
        if tail < *eps {
            return (k, tail);
        }
        k += k / 8 + 8;
    }
}

/// Non-increasing rational majorant for the `k`-th coefficient of family
/// `p` (the factor multiplying `x^(2k)`), valid for every `k >= 1`. Uses
/// `sqrt(pi k) >= isqrt(3k)` on the small side and
/// `(8/7) sqrt(pi) < 72/35` on the large side.
fn coeff_envelope(p: u32, n: u64, k: u64) -> BigRat {
    let den_shift = |extra: u64| BigInt::from(2 * k) + BigInt::from(n) + extra;
    match p {
        1 => BigRat::new(BigInt::one(), BigInt::from(isqrt_u64(3 * k)) * den_shift(1)),
        2 => BigRat::new(
            BigInt::from(72),
            BigInt::from(35) * BigInt::from(isqrt_u64(k)) * den_shift(0),
        ),
        3 => BigRat::new(
            BigInt::from(5),
            BigInt::from(4) * BigInt::from(isqrt_u64(3 * k)) * den_shift(1),
        ),
        4 => BigRat::new(
            BigInt::from(36),
            BigInt::from(35) * BigInt::from(isqrt_u64(k)) * den_shift(0),
        ),
        _ => unreachable!("coeff_envelope: p checked by callers"),
    }
}

/// Ascending partial sum of family `p` through index `big_k`, in
/// fixed-point with floor-directed steps. `x_sq_hp` is `x^2`; the p=3
/// result still needs the outer factor `x`.
fn sum_partial(p: u32, n: u64, x_sq_hp: &HpReal, big_k: u64, bits: u32) -> HpReal {
    let nn = i64::try_from(n).expect("series: shift too large");
    let recip_sq = |m: u64| {
        let sq = BigInt::from(m) * BigInt::from(m);
        HpReal::from_rat_floor(&BigRat::new(BigInt::one(), sq), bits)
    };
    match p {
        1 => {
            let mut c = HpReal::from_int(1, bits);
            let mut sigma = c.div_int_floor(nn + 1);
            for k in 1..=big_k {
                let ki = k as i64;
                c = c
                    .mul_floor(x_sq_hp)
                    .mul_int(2 * ki - 1)
                    .div_int_floor(2 * ki);
                sigma = sigma.add(&c.div_int_floor(2 * ki + nn + 1));
            }
            sigma
        }
        2 => {
            debug_assert!(big_k >= 1);
            let mut c = x_sq_hp.mul_int(2);
            let mut sigma = c.div_int_floor(2 + nn);
            for k in 2..=big_k {
                let ki = k as i64;
                c = c
                    .mul_floor(x_sq_hp)
                    .mul_int(2 * ki)
                    .div_int_floor(2 * ki - 1);
                sigma = sigma.add(&c.div_int_floor(ki).div_int_floor(2 * ki + nn));
            }
            sigma
        }
        3 => {
            let mut c = HpReal::from_int(1, bits);
            let mut g = HpReal::zero(bits);
            let mut sigma = HpReal::zero(bits); // k = 0 term carries G(0) = 0
            for k in 1..=big_k {
                let ki = k as i64;
                c = c
                    .mul_floor(x_sq_hp)
                    .mul_int(2 * ki - 1)
                    .div_int_floor(2 * ki);
                g = g.add(&recip_sq(2 * k - 1));
                sigma = sigma.add(&c.mul_floor(&g).div_int_floor(2 * ki + nn + 1));
            }
            sigma
        }
        4 => {
            debug_assert!(big_k >= 1);
            let mut c = x_sq_hp.mul_int(2);
            let mut h = HpReal::zero(bits);
            let mut sigma = HpReal::zero(bits); // k = 1 term carries H(1) = 0
            for k in 2..=big_k {
                let ki = k as i64;
                c = c
                    .mul_floor(x_sq_hp)
                    .mul_int(2 * ki)
                    .div_int_floor(2 * ki - 1);
                h = h.add(&recip_sq(2 * k - 2));
                sigma = sigma.add(&h.mul_floor(&c).div_int_floor(ki).div_int_floor(2 * ki + nn));
            }
            sigma
        }
        _ => unreachable!("sum_partial: p checked by callers"),
    }
}

/// Number of terms the loop in [`sum_partial`] touches.
fn terms_for(p: u32, big_k: u64) -> u64 {
    match p {
        1 | 3 => big_k + 1,
        _ => big_k,
    }
}

/// Fixed truncation index for endpoint estimates.
const ESTIMATE_TERMS: u64 = 20_000;

/// Integral bound `int_K^inf dt / (sqrt(pi t) (2t + c))`, bracketing the
/// endpoint tails of the p = 1, 3 families.
fn endpoint_j(k: f64, c: f64) -> f64 {
    (2.0 / (PI * c)).sqrt() * (FRAC_PI_2 - (2.0 * k / c).sqrt().atan())
}

/// Integral bound `int_K^inf sqrt(pi / t) dt / (2t + n)` for the
/// p = 2, 4 endpoint tails.
fn endpoint_i2(k: f64, n: f64) -> f64 {
    if n == 0.0 {
        PI.sqrt() / k.sqrt()
    } else {
        PI.sqrt() * (2.0 / n).sqrt() * (FRAC_PI_2 - (2.0 * k / n).sqrt().atan())
    }
}

/// Two-sided bracket `[lo, hi]` for the infinite tail beyond index `k`
/// of family `p` at `|x| = 1` (coefficient space; equals value space in
/// magnitude since `|x| = 1`).
fn endpoint_tail_bracket(p: u32, n: u64, k: u64) -> (f64, f64) {
    let kf = k as f64;
    let nf = n as f64;
    match p {
        1 => {
            let c = nf + 1.0;
            (0.875 * endpoint_j(kf + 1.0, c), endpoint_j(kf, c))
        }
        2 => (endpoint_i2(kf + 1.0, nf), 8.0 / 7.0 * endpoint_i2(kf, nf)),
        3 => {
            let c = nf + 1.0;
            let g_next: f64 = (0..=k).map(|j| ((2 * j + 1) as f64).powi(-2)).sum();
            (
                0.875 * g_next * endpoint_j(kf + 1.0, c),
                PI * PI / 8.0 * endpoint_j(kf, c),
            )
        }
        4 => {
            let h_next: f64 = (1..=k).map(|j| ((2 * j) as f64).powi(-2)).sum();
            (
                h_next * endpoint_i2(kf + 1.0, nf),
                PI * PI / 24.0 * 8.0 / 7.0 * endpoint_i2(kf, nf),
            )
        }
        _ => unreachable!("endpoint_tail_bracket: p checked by callers"),
    }
}

fn check_power(p: u32) -> Result<(), SeriesError> {
    if (1..=4).contains(&p) {
        Ok(())
    } else {
        Err(SeriesError::Power)
    }
}

/// Shared engine behind [`lhs_series`] and [`lhs_series_at_sqrt`]:
/// `x_sq` is exact, `x_lin` is a fixed-point rendering of `x` (only the
/// odd family reads it).
fn eval_family(
    p: u32,
    n: u64,
    x_sq: &BigRat,
    x_lin: &HpReal,
    ctx: &PrecisionCtx,
) -> Result<EvalReport, SeriesError> {
    let bits = ctx.bits();
    let digits = ctx.digits();
    if x_sq.is_zero() {
        let value = if p == 1 {
            HpReal::from_rat_floor(&BigRat::new(BigInt::one(), BigInt::from(n) + 1), bits)
        } else {
            HpReal::zero(bits)
        };
        return Ok(EvalReport {
            value,
            tail_bound: BigRat::zero(),
            terms_used: terms_for(p, 0),
            digits,
            certified: true,
        });
    }
    if x_sq.is_one() {
        // Endpoint estimate: fixed partial sum plus a bracketed remainder.
        let one_hp = HpReal::from_int(1, bits);
        let sigma = sum_partial(p, n, &one_hp, ESTIMATE_TERMS, bits);
        let (lo, hi) = endpoint_tail_bracket(p, n, ESTIMATE_TERMS);
        let mid = BigRat::from_float(0.5 * (lo + hi)).expect("endpoint bracket is finite");
        let mut value = sigma.add(&HpReal::from_rat_floor(&mid, bits));
        if p == 3 {
            value = value.mul_floor(x_lin); // x = +-1 exactly
        }
        let half_width = 0.5 * (hi - lo) * 1.01 + hi * 1e-12;
        return Ok(EvalReport {
            value,
            tail_bound: BigRat::from_float(half_width).expect("endpoint bracket is finite"),
            terms_used: terms_for(p, ESTIMATE_TERMS),
            digits,
            certified: false,
        });
    }
    let eps = ctx.epsilon();
    let (big_k, tail_bound) = geometric_truncation(|k| coeff_envelope(p, n, k), x_sq, &eps, digits);
    let x_sq_hp = HpReal::from_rat_floor(x_sq, bits);
    let mut value = sum_partial(p, n, &x_sq_hp, big_k, bits);
    if p == 3 {
        value = value.mul_floor(x_lin);
    }
    Ok(EvalReport {
        value,
        tail_bound,
        terms_used: terms_for(p, big_k),
        digits,
        certified: true,
    })
}

/// Evaluate family `p` with shift `n` at the rational point `x`.
///
/// `|x| < 1` gives a certified report; `|x| = 1` an uncertified endpoint
/// estimate; `|x| > 1` is rejected.
///
/// # Errors
/// [`SeriesError::Power`] unless `p` is in `1..=4`;
/// [`SeriesError::Domain`] when `|x| > 1`.
pub fn lhs_series(
    p: u32,
    n: u64,
    x: &BigRat,
    ctx: &PrecisionCtx,
) -> Result<EvalReport, SeriesError> {
    check_power(p)?;
    let x_sq = x * x;
    if x_sq > BigRat::one() {
        return Err(SeriesError::Domain);
    }
    let x_lin = HpReal::from_rat_floor(x, ctx.bits());
    eval_family(p, n, &x_sq, &x_lin, ctx)
}

/// Evaluate family `p` with shift `n` at `x = +sqrt(x_sq)` for rational
/// `0 <= x_sq <= 1` — the entry point for surd arguments like
/// `sqrt(2)/2` (`x_sq = 1/2`), where `x` itself is irrational but `x^2`
/// drives every even power exactly.
///
/// # Errors
/// [`SeriesError::Power`] unless `p` is in `1..=4`;
/// [`SeriesError::Domain`] unless `0 <= x_sq <= 1`.
pub fn lhs_series_at_sqrt(
    p: u32,
    n: u64,
    x_sq: &BigRat,
    ctx: &PrecisionCtx,
) -> Result<EvalReport, SeriesError> {
    check_power(p)?;
    if x_sq.is_negative() || *x_sq > BigRat::one() {
        return Err(SeriesError::Domain);
    }
    let x_lin = HpReal::from_rat_floor(x_sq, ctx.bits()).sqrt_floor();
    eval_family(p, n, x_sq, &x_lin, ctx)
}

/// Numerically evaluate a theorem closed form at rational `x`:
/// `scale * x^x_exp * expr(x)` with fixed-point `asin`, square root and
/// polynomial arithmetic. Accurate to a few ulps relative to the
/// intermediate magnitudes (not directed).
///
/// # Errors
/// [`SeriesError::Domain`] when `|x| > 1`;
/// [`SeriesError::ZeroDenominator`] at `x = 0` when the prefactor
/// exponent is negative.
pub fn rhs_numeric(
    rhs: &TheoremRhs,
    x: &BigRat,
    ctx: &PrecisionCtx,
) -> Result<HpReal, SeriesError> {
    let bits = ctx.bits();
    if x * x > BigRat::one() {
        return Err(SeriesError::Domain);
    }
    let scale_hp = HpReal::from_rat_floor(&rhs.scale, bits);
    if x.is_zero() {
        if rhs.x_exp < 0 {
            return Err(SeriesError::ZeroDenominator);
        }
        let e = rhs.expr.eval_hp(&HpReal::zero(bits), ctx);
        return Ok(e.mul_floor(&scale_hp));
    }
    let x_hp = HpReal::from_rat_floor(x, bits);
    let mut e = rhs.expr.eval_hp(&x_hp, ctx);
    if rhs.x_exp != 0 {
        let a = u32::try_from(-rhs.x_exp).expect("rhs_numeric: exponent out of range");
        e = e.div_floor(&x_hp.pow_floor(a));
    }
    Ok(e.mul_floor(&scale_hp))
}
