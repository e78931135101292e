//! Finite-head / infinite-tail identities: the shifted families with
//! their first terms stripped equal tails of the four classical
//! central-binomial series for `arcsin` and `arcsin^2`.
//!
//! Writing `c_j = (4x^2)^j / C(2j,j)` and `d_j = C(2j,j) x^(2j) / 4^j`,
//! the four tail series are
//!
//! ```text
//! T_A(m) = 2x sum_(j>=m) c_j / (2j+1)      (full sum: 2 asin(x) / sqrt(1-x^2))
//! T_B(m) =    sum_(j>=m) d_j               (full sum: 1 / sqrt(1-x^2))
//! T_C(m) =    sum_(j>=m) c_j / j^2         (full sum from 1: 2 asin^2(x))
//! T_D(m) = (x/2) sum_(j>=m) d_j / (2j+1)   (full sum: asin(x) / 2)
//! ```
//!
//! and the checked identities are, for `|x| < 1`,
//!
//! ```text
//! [A]  x^(2n+1) S1(2n, x)                    = C(2n,n)/2^(2n+1) sqrt(1-x^2) T_A(n)
//! [B]  2n C(2n,n) (x/2)^(2n) S1(2n-1, x)     = sqrt(1-x^2) T_B(n)            (n >= 1)
//! [C]  4^n x^(2n) S2(2n, x)                  = C(2n,n) (sqrt(1-x^2) asin(x) T_A(n) - T_C(n+1)/2)
//! [D]  (2n+1) C(2n,n)/2^(2n+1) x^(2n+1) S2(2n+1, x)
//!                                            = sqrt(1-x^2) asin(x) T_B(n+1) - 2 T_D(n+1)
//! ```
//!
//! with `S1`, `S2` the first two families of [`crate::series`]. At `n = 0`
//! identity [A] collapses to `asin(x) = asin(x)` and [C] to
//! `asin^2 = 2 asin^2 - asin^2`, which anchor the wiring. Each tail is
//! truncated under the same certified geometric majorants as the main
//! series, with per-component budget `10^-digits / 8`.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{geometric_truncation, isqrt_u64, lhs_series, SeriesError};
use crate::exactnum::{central_binom, rat, BigRat};
use crate::hp::{self, HpReal, PrecisionCtx};

/// Which head/tail identity to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailIdentity {
    /// Identity [A]: first family, even shift, against `T_A`.
    Tail312,
    /// Identity [B]: first family, odd shift, against `T_B`.
    Tail313,
    /// Identity [C]: second family, even shift, against `T_A` and `T_C`.
    Tail420,
    /// Identity [D]: second family, odd shift, against `T_B` and `T_D`.
    Tail421,
}

/// Both sides of one tail identity.
#[derive(Debug, Clone)]
pub struct TailCheck {
    /// Head side (scaled shifted family).
    pub lhs: HpReal,
    /// Tail side.
    pub rhs: HpReal,
    /// Exact `|lhs - rhs|` of the rounded values.
    pub abs_error: BigRat,
    /// Terms accumulated across the family and every tail component.
    pub terms_used: u64,
    /// Whether every truncation carried a certified bound.
    pub certified: bool,
}

fn ji(j: u64) -> i64 {
    i64::try_from(j).expect("tails: index out of range")
}

/// Exact `c_m = (4 x_sq)^m / C(2m,m)`.
fn c_init(m: u64, x_sq: &BigRat) -> BigRat {
    let e = i32::try_from(m).expect("tails: start index out of range");
    BigRat::new(BigInt::one() << (2 * m as usize), central_binom(m)) * x_sq.pow(e)
}

/// Exact `d_m = C(2m,m) x_sq^m / 4^m`.
fn d_init(m: u64, x_sq: &BigRat) -> BigRat {
    let e = i32::try_from(m).expect("tails: start index out of range");
    BigRat::new(central_binom(m), BigInt::one() << (2 * m as usize)) * x_sq.pow(e)
}

/// Per-component truncation budget.
fn component_eps(ctx: &PrecisionCtx) -> BigRat {
    ctx.epsilon() * rat(1, 8)
}

/// `T_A(m)` and its term count.
fn tail_a(m: u64, x_hp: &HpReal, x_sq: &BigRat, ctx: &PrecisionCtx) -> (HpReal, u64) {
    let bits = ctx.bits();
    let env = |j: u64| {
        BigRat::new(
            BigInt::from(36),
            BigInt::from(35) * BigInt::from(isqrt_u64(j)),
        )
    };
    let (end, _) = geometric_truncation(env, x_sq, &component_eps(ctx), ctx.digits());
    let end = end.max(m);
    let x_sq_hp = HpReal::from_rat_floor(x_sq, bits);
    let mut c = HpReal::from_rat_floor(&c_init(m, x_sq), bits);
    let mut sigma = HpReal::zero(bits);
    for j in m..=end {
        sigma = sigma.add(&c.div_int_floor(2 * ji(j) + 1));
        c = c
            .mul_floor(&x_sq_hp)
            .mul_int(2 * ji(j + 1))
            .div_int_floor(2 * ji(j) + 1);
    }
    (sigma.mul_floor(x_hp).mul_int(2), end - m + 1)
}

/// `T_B(m)` and its term count.
fn tail_b(m: u64, x_sq: &BigRat, ctx: &PrecisionCtx) -> (HpReal, u64) {
    let bits = ctx.bits();
    let env = |j: u64| BigRat::new(BigInt::one(), BigInt::from(isqrt_u64(3 * j)));
    let (end, _) = geometric_truncation(env, x_sq, &component_eps(ctx), ctx.digits());
    let end = end.max(m);
    let x_sq_hp = HpReal::from_rat_floor(x_sq, bits);
    let mut d = HpReal::from_rat_floor(&d_init(m, x_sq), bits);
    let mut sigma = HpReal::zero(bits);
    for j in m..=end {
        sigma = sigma.add(&d);
        d = d
            .mul_floor(&x_sq_hp)
            .mul_int(2 * ji(j) + 1)
            .div_int_floor(2 * ji(j) + 2);
    }
    (sigma, end - m + 1)
}

/// `T_C(m)` (requires `m >= 1`) and its term count.
fn tail_c(m: u64, x_sq: &BigRat, ctx: &PrecisionCtx) -> (HpReal, u64) {
    debug_assert!(m >= 1);
    let bits = ctx.bits();
    let env = |j: u64| {
        BigRat::new(
            BigInt::from(72),
            BigInt::from(35) * BigInt::from(j) * BigInt::from(isqrt_u64(j)),
        )
    };
    let (end, _) = geometric_truncation(env, x_sq, &component_eps(ctx), ctx.digits());
    let end = end.max(m);
    let x_sq_hp = HpReal::from_rat_floor(x_sq, bits);
    let mut c = HpReal::from_rat_floor(&c_init(m, x_sq), bits);
    let mut sigma = HpReal::zero(bits);
    for j in m..=end {
        sigma = sigma.add(&c.div_int_floor(ji(j)).div_int_floor(ji(j)));
        c = c
            .mul_floor(&x_sq_hp)
            .mul_int(2 * ji(j + 1))
            .div_int_floor(2 * ji(j) + 1);
    }
    (sigma, end - m + 1)
}

/// `T_D(m)` and its term count.
fn tail_d(m: u64, x_hp: &HpReal, x_sq: &BigRat, ctx: &PrecisionCtx) -> (HpReal, u64) {
    let bits = ctx.bits();
    let env = |j: u64| {
        BigRat::new(
            BigInt::one(),
            BigInt::from(isqrt_u64(3 * j)) * BigInt::from(2 * j + 1),
        )
    };
    let (end, _) = geometric_truncation(env, x_sq, &component_eps(ctx), ctx.digits());
    let end = end.max(m);
    let x_sq_hp = HpReal::from_rat_floor(x_sq, bits);
    let mut d = HpReal::from_rat_floor(&d_init(m, x_sq), bits);
    let mut sigma = HpReal::zero(bits);
    for j in m..=end {
        sigma = sigma.add(&d.div_int_floor(2 * ji(j) + 1));
        d = d
            .mul_floor(&x_sq_hp)
            .mul_int(2 * ji(j) + 1)
            .div_int_floor(2 * ji(j) + 2);
    }
    (sigma.mul_floor(x_hp).div_int_floor(2), end - m + 1)
}

/// Check one head/tail identity at rational `x`.
///
/// # Errors
/// [`SeriesError::Domain`] unless `|x| < 1`, or for
/// [`TailIdentity::Tail313`] at `n = 0` (that identity starts at
/// `n = 1`).
pub fn partial_tail_identity_check(
    which: TailIdentity,
    n: u64,
    x: &BigRat,
    ctx: &PrecisionCtx,
) -> Result<TailCheck, SeriesError> {
    if x.abs() >= BigRat::one() {
        return Err(SeriesError::Domain);
    }
    if which == TailIdentity::Tail313 && n == 0 {
        return Err(SeriesError::Domain);
    }
    let bits = ctx.bits();
    let x_sq = x * x;
    let ne = i32::try_from(n).expect("tails: shift out of range");
    let x_hp = HpReal::from_rat_floor(x, bits);
    let root = HpReal::from_rat_floor(&(BigRat::one() - &x_sq), bits).sqrt_floor();
    let (lhs, rhs, terms, certified) = match which {
        TailIdentity::Tail312 => {
            let s = lhs_series(1, 2 * n, x, ctx)?;
            let pref = x * x_sq.pow(ne);
            let lhs = HpReal::from_rat_floor(&pref, bits).mul_floor(&s.value);
            let (ta, ta_terms) = tail_a(n, &x_hp, &x_sq, ctx);
            let scale = BigRat::new(central_binom(n), BigInt::one() << (2 * n as usize + 1));
            let rhs = HpReal::from_rat_floor(&scale, bits)
                .mul_floor(&root)
                .mul_floor(&ta);
            (lhs, rhs, s.terms_used + ta_terms, s.certified)
        }
        TailIdentity::Tail313 => {
            let s = lhs_series(1, 2 * n - 1, x, ctx)?;
            let pref = BigRat::new(
                BigInt::from(2 * n) * central_binom(n),
                BigInt::one() << (2 * n as usize),
            ) * x_sq.pow(ne);
            let lhs = HpReal::from_rat_floor(&pref, bits).mul_floor(&s.value);
            let (tb, tb_terms) = tail_b(n, &x_sq, ctx);
            let rhs = root.mul_floor(&tb);
            (lhs, rhs, s.terms_used + tb_terms, s.certified)
        }
        TailIdentity::Tail420 => {
            let s = lhs_series(2, 2 * n, x, ctx)?;
            let pref = BigRat::from_integer(BigInt::one() << (2 * n as usize)) * x_sq.pow(ne);
            let lhs = HpReal::from_rat_floor(&pref, bits).mul_floor(&s.value);
            let asin_x = hp::asin(&x_hp, ctx);
            let (ta, ta_terms) = tail_a(n, &x_hp, &x_sq, ctx);
            let (tc, tc_terms) = tail_c(n + 1, &x_sq, ctx);
            let inner = root
                .mul_floor(&asin_x)
                .mul_floor(&ta)
                .sub(&tc.div_int_floor(2));
            let cb = HpReal::from_rat_floor(&BigRat::from_integer(central_binom(n)), bits);
            let rhs = cb.mul_floor(&inner);
            (lhs, rhs, s.terms_used + ta_terms + tc_terms, s.certified)
        }
        TailIdentity::Tail421 => {
            let s = lhs_series(2, 2 * n + 1, x, ctx)?;
            let pref = BigRat::new(
                BigInt::from(2 * n + 1) * central_binom(n),
                BigInt::one() << (2 * n as usize + 1),
            ) * x
                * x_sq.pow(ne);
            let lhs = HpReal::from_rat_floor(&pref, bits).mul_floor(&s.value);
            let asin_x = hp::asin(&x_hp, ctx);
            let (tb, tb_terms) = tail_b(n + 1, &x_sq, ctx);
            let (td, td_terms) = tail_d(n + 1, &x_hp, &x_sq, ctx);
            let rhs = root.mul_floor(&asin_x).mul_floor(&tb).sub(&td.mul_int(2));
            (lhs, rhs, s.terms_used + tb_terms + td_terms, s.certified)
        }
    };
    let abs_error = (lhs.to_exact_rat() - rhs.to_exact_rat()).abs();
    Ok(TailCheck {
        lhs,
        rhs,
        abs_error,
        terms_used: terms,
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    const ALL: [TailIdentity; 4] = [
        TailIdentity::Tail312,
        TailIdentity::Tail313,
        TailIdentity::Tail420,
        TailIdentity::Tail421,
    ];

    #[test]
    fn rejects_out_of_range_arguments() {
        let ctx = PrecisionCtx::new(20);
        for which in ALL {
            assert_eq!(
                partial_tail_identity_check(which, 1, &rat(1, 1), &ctx).unwrap_err(),
                SeriesError::Domain,
                "{which:?}"
            );
        }
        assert_eq!(
            partial_tail_identity_check(TailIdentity::Tail313, 0, &rat(1, 2), &ctx).unwrap_err(),
            SeriesError::Domain
        );
    }

    #[test]
    fn zero_shift_collapses_to_the_arcsine_identity() {
        let ctx = PrecisionCtx::new(40);
        let c = partial_tail_identity_check(TailIdentity::Tail312, 0, &rat(1, 2), &ctx).unwrap();
        // Both sides are asin(1/2) = pi/6.
        let target = hp::pi(&ctx).div_int_floor(6);
        let diff = (c.lhs.to_exact_rat() - target.to_exact_rat()).abs();
        assert!(diff < rat(1, 10).pow(36));
        assert!(c.abs_error < rat(1, 10).pow(36));
    }

    #[test]
    fn both_sides_vanish_at_the_origin() {
        let ctx = PrecisionCtx::new(30);
        let c = partial_tail_identity_check(TailIdentity::Tail420, 0, &rat(0, 1), &ctx).unwrap();
        assert!(c.lhs.is_zero());
        assert!(c.rhs.is_zero());
        assert!(c.abs_error.is_zero());
    }

    #[test]
    fn identities_hold_across_shifts_and_signs() {
        let ctx = PrecisionCtx::new(40);
        let tol = rat(1, 10).pow(35);
        for which in ALL {
            let n_lo = u64::from(which == TailIdentity::Tail313);
            for n in n_lo..=n_lo + 3 {
                for x in [rat(1, 2), rat(-1, 2), rat(2, 5), rat(9, 10)] {
                    let c = partial_tail_identity_check(which, n, &x, &ctx).unwrap();
                    assert!(c.certified);
                    assert!(
                        c.abs_error < tol,
                        "{which:?} n = {n} x = {x}: error off by {}",
                        (&c.abs_error / &tol)
                    );
                }
            }
        }
    }
}
