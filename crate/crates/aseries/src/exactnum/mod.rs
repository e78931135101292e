//! Exact integer and rational kernels used throughout the crate.
//!
//! Everything here is exact: central binomial coefficients, general
//! binomials, the harmonic-like partial sums over odd and even squares,
//! Pochhammer symbols, and certified rational enclosures of the ratio
//! `C(2k,k)/4^k`. The submodule [`exact_const`] adds [`ExactConst`], a
//! normal form for the constants `sum c * pi^a * sqrt(d)` in which every
//! closed-form special value in this crate lives.

pub mod exact_const;

pub use exact_const::{exact_add, exact_eq, exact_mul, ExactConst, ExactConstError};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::hp::{pi_bounds, HpReal, PrecisionCtx};

/// Arbitrary-precision rational, the coefficient domain for the whole crate.
pub type BigRat = num_rational::BigRational;

/// Small-integer rational constructor (`rat(a, b) = a/b`).
///
/// # Panics
/// If `b == 0`.
pub fn rat(a: i64, b: i64) -> BigRat {
    BigRat::new(BigInt::from(a), BigInt::from(b))
}

/// Central binomial coefficient `C(2k, k)`, via the exact recurrence
/// `C(2k,k) = C(2k-2,k-1) * 2(2k-1)/k`.
pub fn central_binom(k: u64) -> BigInt {
    let mut c = BigInt::one();
    for i in 1..=k {
        c = c * 2u32 * BigInt::from(2 * i - 1) / BigInt::from(i);
    }
    c
}

/// Binomial coefficient `C(n, k)` (zero for `k > n`), by the stepwise-exact
/// product `prod_i (n-k+i)/i`.
pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 1..=k {
        c = c * BigInt::from(n - k + i) / BigInt::from(i);
    }
    c
}

/// The generalized half-integer central binomial `C(n, n/2)`:
/// for even `n` the ordinary binomial, for odd `n` the analytic
/// continuation `2^(2n) / (n * C(n-1, (n-1)/2) * pi)`.
///
/// Examples: `n = 2 -> 2`, `n = 1 -> 4/pi`, `n = 3 -> 32/(3 pi)`.
pub fn gen_binom_half(n: u64) -> ExactConst {
    if n.is_multiple_of(2) {
        ExactConst::from_rat(&BigRat::from_integer(binom(n, n / 2)))
    } else {
        let den = BigInt::from(n) * binom(n - 1, (n - 1) / 2);
        let coeff = BigRat::new(BigInt::one() << (2 * n as usize), den);
        ExactConst::from_term(-1, 1, &coeff)
    }
}

/// Partial sum of reciprocal odd squares: `sum_(j=0)^(k-1) 1/(2j+1)^2`
/// (zero for `k = 0`; increases to `pi^2/8`).
pub fn harmonic_odd_squares(k: u64) -> BigRat {
    let mut s = BigRat::zero();
    for j in 0..k {
        let d = BigInt::from(2 * j + 1);
        s += BigRat::new(BigInt::one(), &d * &d);
    }
    s
}

/// Partial sum of reciprocal even squares: `sum_(j=1)^(k-1) 1/(2j)^2`
/// (zero for `k = 1`; increases to `pi^2/24`).
///
/// # Panics
/// If `k == 0` (the sum first appears with index 1).
pub fn harmonic_even_squares(k: u64) -> BigRat {
    assert!(k >= 1, "harmonic_even_squares(): k must be >= 1");
    let mut s = BigRat::zero();
    for j in 1..k {
        let d = BigInt::from(2 * j);
        s += BigRat::new(BigInt::one(), &d * &d);
    }
    s
}

/// Pochhammer symbol (rising factorial) `(a)_k = a (a+1) ... (a+k-1)`,
/// with `(a)_0 = 1`.
pub fn pochhammer(a: &BigRat, k: u64) -> BigRat {
    let mut p = BigRat::one();
    let mut f = a.clone();
    for _ in 0..k {
        p *= &f;
        f += BigRat::one();
    }
    p
}

/// Certified rational enclosure `(lo, hi)` of the ratio `C(2k,k)/4^k`,
/// from the two-sided bound `(7/8)/sqrt(pi k) < C(2k,k)/4^k < 1/sqrt(pi k)`
/// evaluated with directed rounding (so the bracket is rigorous, at the
/// cost of a few ulps of extra width).
///
/// # Panics
/// If `k == 0` (the bound needs `k >= 1`).
pub fn binom_ratio_bounds(k: u64, ctx: &PrecisionCtx) -> (BigRat, BigRat) {
    assert!(k >= 1, "binom_ratio_bounds(): k must be >= 1");
    let (pi_lo, pi_hi) = pi_bounds(ctx);
    let k_int = i64::try_from(k).expect("binom_ratio_bounds(): k too large");
    // lo = (7/8) / sqrt(pi k), rounded down at every step.
    let seven_eighths = HpReal::from_rat_floor(&rat(7, 8), ctx.bits());
    let lo = seven_eighths.div_floor(&pi_hi.mul_int(k_int).sqrt_ceil());
    // hi = 1 / sqrt(pi k), rounded up at every step.
    let one = HpReal::from_int(1, ctx.bits());
    let hi = one.div_ceil(&pi_lo.mul_int(k_int).sqrt_floor());
    (lo.to_exact_rat(), hi.to_exact_rat())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn central_binomials() {
        // C(0,0)=1, C(2,1)=2, C(4,2)=6, C(6,3)=20, C(8,4)=70, C(10,5)=252
        let expect = [1i64, 2, 6, 20, 70, 252];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(central_binom(k as u64), BigInt::from(*e));
        }
        assert_eq!(central_binom(10), BigInt::from(184_756));
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(7, 0), BigInt::from(1));
        assert_eq!(binom(7, 7), BigInt::from(1));
        assert_eq!(binom(3, 5), BigInt::from(0));
        assert_eq!(binom(40, 20), central_binom(20));
    }

    #[test]
    fn generalized_half_binomials() {
        assert_eq!(gen_binom_half(0).to_string(), "1");
        assert_eq!(gen_binom_half(1).to_string(), "4*pi^-1");
        assert_eq!(gen_binom_half(2).to_string(), "2");
        assert_eq!(gen_binom_half(3).to_string(), "32/3*pi^-1");
        assert_eq!(gen_binom_half(4).to_string(), "6");
        // n=5: 2^10 / (5 C(4,2)) = 1024/30 = 512/15
        assert_eq!(gen_binom_half(5).to_string(), "512/15*pi^-1");
    }

    #[test]
    fn odd_square_harmonics() {
        assert_eq!(harmonic_odd_squares(0), rat(0, 1));
        assert_eq!(harmonic_odd_squares(1), rat(1, 1));
        assert_eq!(harmonic_odd_squares(2), rat(10, 9)); // 1 + 1/9
        assert_eq!(harmonic_odd_squares(3), rat(259, 225)); // + 1/25
    }

    #[test]
    fn even_square_harmonics() {
        assert_eq!(harmonic_even_squares(1), rat(0, 1));
        assert_eq!(harmonic_even_squares(2), rat(1, 4));
        assert_eq!(harmonic_even_squares(3), rat(5, 16)); // 1/4 + 1/16
        assert_eq!(harmonic_even_squares(4), rat(49, 144)); // + 1/36
    }

    #[test]
    #[should_panic(expected = "k must be >= 1")]
    fn even_square_harmonics_reject_zero() {
        harmonic_even_squares(0);
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4)); // (1/2)(3/2)
        assert_eq!(pochhammer(&rat(7, 3), 0), rat(1, 1));
        assert_eq!(pochhammer(&rat(3, 1), 3), rat(60, 1)); // 3*4*5
        assert_eq!(pochhammer(&rat(-2, 1), 4), rat(0, 1)); // hits zero
    }

    #[test]
    fn binom_ratio_bounds_bracket_everywhere() {
        // The enclosure must bracket the true ratio C(2k,k)/4^k for every
        // k up to 10^4. The ratio is tracked exactly as (C(2k,k), 2^(2k)).
        let ctx = PrecisionCtx::new(15);
        let mut c = BigInt::one();
        for k in 1..=10_000u64 {
            c = c * 2u32 * BigInt::from(2 * k - 1) / BigInt::from(k);
            let (lo, hi) = binom_ratio_bounds(k, &ctx);
            // lo <= C/4^k  <=>  lo_num * 4^k <= C * lo_den
            let shift = (2 * k) as usize;
            assert!(
                lo.numer().clone() << shift <= &c * lo.denom(),
                "lower bound fails at k = {k}"
            );
            assert!(
                hi.numer().clone() << shift >= &c * hi.denom(),
                "upper bound fails at k = {k}"
            );
        }
    }

    #[test]
    fn binom_ratio_bounds_are_tight() {
        // At k = 100 the bracket width is the (1/8)/sqrt(pi k) slack of the
        // two-sided bound, plus at most a few ulps of directed rounding.
        let ctx = PrecisionCtx::new(50);
        let (lo, hi) = binom_ratio_bounds(100, &ctx);
        let gap = &hi - &lo;
        let (pi_lo, _) = pi_bounds(&ctx);
        let ideal_hi = HpReal::from_rat_floor(&rat(1, 8), ctx.bits())
            .div_ceil(&pi_lo.mul_int(100).sqrt_floor());
        let slack = BigRat::new(BigInt::from(4), BigInt::one() << ctx.bits());
        assert!(gap <= ideal_hi.to_exact_rat() + slack, "gap = {gap}");
        // And the width matches the construction: with the two-sided
        // constants 7/8 and 1, the gap is exactly an eighth of the upper
        // value up to rounding.
        let ratio = gap.to_f64().unwrap() / hi.to_f64().unwrap();
        assert!((ratio - 0.125).abs() < 1e-9, "ratio = {ratio}");
    }
}
