//! Fixed-point big-integer arithmetic with directed rounding.
//!
//! A value is stored as `mant * 2^(-bits)` with `mant: BigInt`. All
//! operations either are exact (add, sub, negate, multiply by a machine
//! integer) or come in floor/ceil variants so callers can build certified
//! enclosures. The module also provides:
//!
//! - `pi` / `pi_bounds`: pi by binary splitting of the central-binomial
//!   series `pi = 3 * sum_k C(2k,k) / (16^k (2k+1))`, with a two-ulp
//!   enclosure,
//! - `asin` on `[-1, 1]` via the Maclaurin series after range reduction,
//! - exact conversion to/from rationals and a scientific-notation decimal
//!   renderer with round-half-away-from-zero semantics.
//!
//! Precision is chosen through [`PrecisionCtx`], which translates a decimal
//! digit request into a bit count plus guard bits. Intermediate rounding is
//! one ulp per operation, so results drift by at most a few ulps per
//! arithmetic step — far below the guard allowance.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::exactnum::BigRat;

/// Extra binary digits appended beyond the requested decimal precision so
/// that accumulated per-operation rounding never shows up in the reported
/// digits (34 bits is roughly 10 decimal guard digits).
const GUARD_BITS: u32 = 34;

/// Working precision: requested decimal digits plus derived bit count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionCtx {
    digits: u32,
    bits: u32,
}

impl PrecisionCtx {
    /// Precision for about `digits` correct decimal digits.
    ///
    /// # Panics
    /// If `digits < 10` (lower requests would be swamped by guard noise).
    pub fn new(digits: u32) -> Self {
        assert!(digits >= 10, "PrecisionCtx::new(): digits must be >= 10");
        // 3322/1000 slightly exceeds log2(10), so 'bits' always covers the
        // requested decimal length.
        let bits = digits * 3322 / 1000 + 1 + GUARD_BITS;
        PrecisionCtx { digits, bits }
    }

    /// Requested decimal digits.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Fixed-point fractional bits used for values under this context.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// `10^(-digits)` as an exact rational: the target accuracy.
    pub fn epsilon(&self) -> BigRat {
        BigRat::new(BigInt::from(1), BigInt::from(10).pow(self.digits))
    }
}

/// A fixed-point real: `mant * 2^(-bits)`.
///
/// Values only combine with values of the same `bits`; mixing precisions is
/// a programming error and panics.
#[derive(Debug, Clone)]
pub struct HpReal {
    mant: BigInt,
    bits: u32,
}

impl HpReal {
    /// Zero at the given precision.
    pub fn zero(bits: u32) -> Self {
        HpReal {
            mant: BigInt::zero(),
            bits,
        }
    }

    /// Exact embedding of a machine integer.
    pub fn from_int(n: i64, bits: u32) -> Self {
        HpReal {
            mant: BigInt::from(n) << bits,
            bits,
        }
    }

    /// Exact embedding of a big integer.
    pub fn from_bigint(n: &BigInt, bits: u32) -> Self {
        HpReal {
            mant: n.clone() << bits,
            bits,
        }
    }

    /// Largest representable value `<= r`.
    pub fn from_rat_floor(r: &BigRat, bits: u32) -> Self {
        let num = r.numer().clone() << bits;
        HpReal {
            mant: num.div_floor(r.denom()),
            bits,
        }
    }

    /// Smallest representable value `>= r`.
    pub fn from_rat_ceil(r: &BigRat, bits: u32) -> Self {
        let num = r.numer().clone() << bits;
        HpReal {
            mant: num.div_ceil(r.denom()),
            bits,
        }
    }

    /// One unit in the last place at this precision.
    pub fn ulp(bits: u32) -> Self {
        HpReal {
            mant: BigInt::from(1),
            bits,
        }
    }

    /// Fractional bit count.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Raw mantissa (value is `mant * 2^(-bits)`).
    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    fn check_bits(&self, other: &HpReal, op: &str) {
        assert!(
            self.bits == other.bits,
            "HpReal::{op}(): operands have different precisions ({} vs {})",
            self.bits,
            other.bits
        );
    }

    /// Exact sum.
    pub fn add(&self, other: &HpReal) -> HpReal {
        self.check_bits(other, "add");
        HpReal {
            mant: &self.mant + &other.mant,
            bits: self.bits,
        }
    }

    /// Exact difference.
    pub fn sub(&self, other: &HpReal) -> HpReal {
        self.check_bits(other, "sub");
        HpReal {
            mant: &self.mant - &other.mant,
            bits: self.bits,
        }
    }

    /// Exact negation.
    pub fn neg(&self) -> HpReal {
        HpReal {
            mant: -&self.mant,
            bits: self.bits,
        }
    }

    /// Exact absolute value.
    pub fn abs(&self) -> HpReal {
        HpReal {
            mant: self.mant.abs(),
            bits: self.bits,
        }
    }

    /// Product rounded toward minus infinity (error < 1 ulp).
    pub fn mul_floor(&self, other: &HpReal) -> HpReal {
        self.check_bits(other, "mul_floor");
        // BigInt >> is an arithmetic shift, i.e. floor division by 2^bits
        // (pinned by a unit test below).
        HpReal {
            mant: (&self.mant * &other.mant) >> self.bits,
            bits: self.bits,
        }
    }

    /// Product rounded toward plus infinity.
    pub fn mul_ceil(&self, other: &HpReal) -> HpReal {
        self.check_bits(other, "mul_ceil");
        HpReal {
            mant: -((-(&self.mant * &other.mant)) >> self.bits),
            bits: self.bits,
        }
    }

    /// Exact product with a machine integer.
    pub fn mul_int(&self, m: i64) -> HpReal {
        HpReal {
            mant: &self.mant * m,
            bits: self.bits,
        }
    }

    /// Quotient by a positive machine integer, rounded toward minus infinity.
    pub fn div_int_floor(&self, m: i64) -> HpReal {
        assert!(m > 0, "HpReal::div_int_floor(): divisor must be positive");
        HpReal {
            mant: self.mant.div_floor(&BigInt::from(m)),
            bits: self.bits,
        }
    }

    /// Quotient rounded toward minus infinity.
    ///
    /// # Panics
    /// If `other` is zero.
    pub fn div_floor(&self, other: &HpReal) -> HpReal {
        self.check_bits(other, "div_floor");
        assert!(!other.is_zero(), "HpReal::div_floor(): division by zero");
        let num = self.mant.clone() << self.bits;
        HpReal {
            mant: num.div_floor(&other.mant),
            bits: self.bits,
        }
    }

    /// Quotient rounded toward plus infinity.
    pub fn div_ceil(&self, other: &HpReal) -> HpReal {
        self.check_bits(other, "div_ceil");
        assert!(!other.is_zero(), "HpReal::div_ceil(): division by zero");
        let num = self.mant.clone() << self.bits;
        HpReal {
            mant: num.div_ceil(&other.mant),
            bits: self.bits,
        }
    }

    /// Nonnegative integer power with floor rounding at each step.
    ///
    /// Intended for nonnegative bases (enclosure direction is only
    /// meaningful there).
    pub fn pow_floor(&self, e: u32) -> HpReal {
        let mut acc = HpReal::from_int(1, self.bits);
        for _ in 0..e {
            acc = acc.mul_floor(self);
        }
        acc
    }

    /// Square root rounded toward minus infinity.
    ///
    /// # Panics
    /// If `self` is negative.
    pub fn sqrt_floor(&self) -> HpReal {
        assert!(
            !self.is_negative(),
            "HpReal::sqrt_floor(): negative operand"
        );
        HpReal {
            mant: (self.mant.clone() << self.bits).sqrt(),
            bits: self.bits,
        }
    }

    /// Square root rounded toward plus infinity.
    pub fn sqrt_ceil(&self) -> HpReal {
        assert!(!self.is_negative(), "HpReal::sqrt_ceil(): negative operand");
        let shifted = self.mant.clone() << self.bits;
        let root = shifted.sqrt();
        let mant = if &root * &root == shifted {
            root
        } else {
            root + 1
        };
        HpReal {
            mant,
            bits: self.bits,
        }
    }

    /// Total order on values of equal precision.
    pub fn cmp_val(&self, other: &HpReal) -> std::cmp::Ordering {
        self.check_bits(other, "cmp_val");
        self.mant.cmp(&other.mant)
    }

    pub fn lt(&self, other: &HpReal) -> bool {
        self.cmp_val(other) == std::cmp::Ordering::Less
    }

    pub fn le(&self, other: &HpReal) -> bool {
        self.cmp_val(other) != std::cmp::Ordering::Greater
    }

    pub fn eq_val(&self, other: &HpReal) -> bool {
        self.cmp_val(other) == std::cmp::Ordering::Equal
    }

    /// Exact value as a rational.
    pub fn to_exact_rat(&self) -> BigRat {
        BigRat::new(self.mant.clone(), BigInt::from(1) << self.bits)
    }

    /// Nearest double (for diagnostics and coarse consumers).
    pub fn to_f64(&self) -> f64 {
        self.to_exact_rat().to_f64().unwrap_or(f64::NAN)
    }

    /// Scientific-notation decimal string with exactly `sig` significant
    /// digits, rounding half away from zero: `"d.dd...e<exp>"`, `"0e0"` for
    /// zero, a leading `-` for negatives, no `+` on positive exponents.
    pub fn to_decimal_sci(&self, sig: u32) -> String {
        assert!(sig >= 1, "HpReal::to_decimal_sci(): sig must be >= 1");
        if self.mant.is_zero() {
            return "0e0".to_string();
        }
        let neg = self.mant.is_negative();
        let m = self.mant.abs();
        // Decimal exponent e with 10^e <= m/2^bits < 10^(e+1); start from a
        // bit-length estimate, then correct exactly.
        let bitlen = m.bits() as i64;
        let mut e =
            ((bitlen - 1 - self.bits as i64) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        while Self::cmp_pow10(&m, self.bits, e) == std::cmp::Ordering::Less {
            e -= 1;
        }
        while Self::cmp_pow10(&m, self.bits, e + 1) != std::cmp::Ordering::Less {
            e += 1;
        }
        // Round m / 2^bits * 10^(sig-1-e) to an integer, half away from zero.
        let t = sig as i64 - 1 - e;
        let (num, den) = if t >= 0 {
            (
                &m * BigInt::from(10).pow(t as u32),
                BigInt::from(1) << self.bits,
            )
        } else {
            (
                m.clone(),
                (BigInt::from(1) << self.bits) * BigInt::from(10).pow((-t) as u32),
            )
        };
        let mut d = (BigInt::from(2) * num + &den).div_floor(&(BigInt::from(2) * den));
        let mut e_out = e;
        if d == BigInt::from(10).pow(sig) {
            d /= 10;
            e_out += 1;
        }
        let digits = d.to_string();
        debug_assert_eq!(digits.len(), sig as usize);
        let body = if sig == 1 {
            format!("{digits}e{e_out}")
        } else {
            format!("{}.{}e{}", &digits[..1], &digits[1..], e_out)
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }

    /// Ordering of `m / 2^bits` versus `10^e` (`m > 0`).
    fn cmp_pow10(m: &BigInt, bits: u32, e: i64) -> std::cmp::Ordering {
        if e >= 0 {
            m.cmp(&(BigInt::from(10).pow(e as u32) << bits))
        } else {
            (m * BigInt::from(10).pow((-e) as u32)).cmp(&(BigInt::from(1) << bits))
        }
    }
}

/// Binary-splitting product state for the `pi` series: over `k` in `a..=b`,
/// with per-term ratio `s_k / s_(k-1) = (2k-1)^2 / (8k(2k+1))`, computes
/// `(P, Q, T)` with `sum_(k=a)^(b) prod_(j=a)^(k) p_j/q_j = T/Q` and
/// `P = prod p_j`.
fn pi_split(a: u64, b: u64) -> (BigInt, BigInt, BigInt) {
    if a == b {
        let p = BigInt::from(2 * a - 1) * BigInt::from(2 * a - 1);
        let q = BigInt::from(8 * a) * BigInt::from(2 * a + 1);
        (p.clone(), q, p)
    } else {
        let mid = (a + b) / 2;
        let (pl, ql, tl) = pi_split(a, mid);
        let (pr, qr, tr) = pi_split(mid + 1, b);
        (&pl * pr, &ql * &qr, tl * qr + pl * tr)
    }
}

/// `pi` rounded toward minus infinity; the error is below two ulps
/// (see [`pi_bounds`] for the certified enclosure).
pub fn pi(ctx: &PrecisionCtx) -> HpReal {
    pi_bounds(ctx).0
}

/// Certified enclosure `lo <= pi <= hi` with `hi - lo` equal to two ulps.
///
/// Uses `pi = 3 * sum_k C(2k,k) / (16^k (2k+1))`: each term is below
/// `4^(-k)`, so truncating after `bits/2 + 8` terms leaves a tail under
/// `2^(-bits-16)`, and the floor-rounded partial sum is within two ulps of
/// `pi` from below.
pub fn pi_bounds(ctx: &PrecisionCtx) -> (HpReal, HpReal) {
    let bits = ctx.bits;
    let n_terms = (bits as u64) / 2 + 8;
    let (_, q, t) = pi_split(1, n_terms);
    // partial = 3 * (1 + T/Q) = 3(Q + T)/Q
    let num = (BigInt::from(3) * (&q + &t)) << bits;
    let lo = HpReal {
        mant: num.div_floor(&q),
        bits,
    };
    let hi = HpReal {
        mant: &lo.mant + 2,
        bits,
    };
    (lo, hi)
}

/// Maclaurin `asin` for `|x| <= 1/2`: `sum_k C(2k,k)/4^k x^(2k+1)/(2k+1)`.
/// Terms fall at least geometrically with ratio `1/4`, so the loop ends
/// once the running power underflows the fixed-point grid.
fn asin_small(x: &HpReal) -> HpReal {
    let x2 = x.mul_floor(x);
    let mut u = x.clone();
    let mut s = x.clone();
    let mut k: i64 = 1;
    loop {
        u = u.mul_floor(&x2).mul_int(2 * k - 1).div_int_floor(2 * k);
        if u.is_zero() {
            return s;
        }
        s = s.add(&u.div_int_floor(2 * k + 1));
        k += 1;
    }
}

/// `asin(x)` for `|x| <= 1`, accurate to a few hundred ulps: every Maclaurin
/// term costs a fraction of an ulp in directed rounding, and roughly
/// `bits / 2` terms contribute before underflow, all of it far below the
/// 34-bit guard margin added by [`PrecisionCtx`].
///
/// `|x| <= 1/2` sums the Maclaurin series directly; larger arguments use
/// `asin(x) = pi/2 - 2 asin(sqrt((1-x)/2))`, whose inner argument is again
/// at most `1/2`. Odd symmetry is exact: `asin(-x)` is the negation of
/// `asin(x)` bit for bit.
///
/// # Panics
/// If `|x| > 1` or the operand precision differs from `ctx`.
pub fn asin(x: &HpReal, ctx: &PrecisionCtx) -> HpReal {
    assert!(
        x.bits == ctx.bits(),
        "asin(): operand precision does not match ctx"
    );
    let one = BigInt::from(1) << x.bits;
    assert!(x.mant.abs() <= one, "asin(): |x| must be <= 1");
    if x.is_negative() {
        return asin(&x.neg(), ctx).neg();
    }
    let half = BigInt::from(1) << (x.bits - 1);
    if x.mant <= half {
        return asin_small(x);
    }
    let pi_lo = pi(ctx);
    if x.mant == one {
        return HpReal {
            mant: pi_lo.mant >> 1,
            bits: x.bits,
        };
    }
    // y = sqrt((1 - x)/2) <= 1/2; both steps round down, keeping y exact to
    // one ulp below the true value.
    let y2 = HpReal {
        mant: (&one - &x.mant) >> 1,
        bits: x.bits,
    };
    let y = y2.sqrt_floor();
    let half_pi = HpReal {
        mant: pi_lo.mant >> 1,
        bits: x.bits,
    };
    half_pi.sub(&asin_small(&y).mul_int(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use num_traits::One;
    use proptest::prelude::*;

    /// Rational brackets `p_lo <= pi <= p_hi` from 100 truncated digits, so
    /// the window (1e-99) is far tighter than any enclosure under test.
    fn pi_reference() -> (BigRat, BigRat) {
        let digits = "3141592653589793238462643383279502884197169399375105820974944592307816406286208998628034825342117067";
        let lo = BigRat::new(digits.parse::<BigInt>().unwrap(), BigInt::from(10).pow(99));
        let hi = &lo + BigRat::new(BigInt::one(), BigInt::from(10).pow(99));
        (lo, hi)
    }

    #[test]
    fn shift_right_on_negative_is_floor_division() {
        // The fixed-point rounding logic relies on BigInt's arithmetic
        // shift: -5 >> 1 must be -3 (floor), not -2 (truncation).
        assert_eq!(BigInt::from(-5) >> 1, BigInt::from(-3));
    }

    #[test]
    fn precision_ctx_covers_requested_digits() {
        let ctx = PrecisionCtx::new(50);
        assert!(ctx.bits() as f64 >= 50.0 * 10f64.log2() + GUARD_BITS as f64);
        assert_eq!(ctx.digits(), 50);
        assert_eq!(ctx.epsilon(), rat(1, 10).pow(50));
    }

    #[test]
    #[should_panic(expected = "digits must be >= 10")]
    fn precision_ctx_rejects_tiny_requests() {
        PrecisionCtx::new(5);
    }

    #[test]
    fn pi_to_fifty_digits() {
        let ctx = PrecisionCtx::new(50);
        assert_eq!(
            pi(&ctx).to_decimal_sci(50),
            "3.1415926535897932384626433832795028841971693993751e0"
        );
    }

    #[test]
    fn pi_enclosure_brackets_reference() {
        for digits in [10, 25, 50, 75] {
            let ctx = PrecisionCtx::new(digits);
            let (lo, hi) = pi_bounds(&ctx);
            let (p_lo, p_hi) = pi_reference();
            assert!(lo.to_exact_rat() <= p_hi, "digits={digits}: lo > pi");
            assert!(p_lo <= hi.to_exact_rat(), "digits={digits}: hi < pi");
            assert_eq!(hi.sub(&lo).mant, BigInt::from(2));
        }
    }

    #[test]
    fn asin_at_special_points() {
        let ctx = PrecisionCtx::new(50);
        let bits = ctx.bits();
        // Directed rounding drifts a fraction of an ulp per Maclaurin term
        // (~bits/2 terms), and the multiplied comparisons below amplify that
        // several-fold; 4096 ulps still sits 22 bits under the guard margin.
        let tol = BigRat::new(BigInt::from(4096), BigInt::one() << bits);
        let pi_rat = pi(&ctx).to_exact_rat();

        // asin(1/2) = pi/6
        let a = asin(&HpReal::from_rat_floor(&rat(1, 2), bits), &ctx);
        let err = (a.to_exact_rat() * BigRat::from_integer(6.into()) - &pi_rat).abs();
        assert!(err < tol, "asin(1/2): err = {err}");

        // asin(1) = pi/2
        let a = asin(&HpReal::from_int(1, bits), &ctx);
        let err = (a.to_exact_rat() * BigRat::from_integer(2.into()) - &pi_rat).abs();
        assert!(err < tol, "asin(1): err = {err}");

        // asin(sqrt(2)/2) = pi/4 (argument > 1/2 exercises range reduction)
        let s = HpReal::from_rat_floor(&rat(1, 2), bits).sqrt_floor();
        let a = asin(&s, &ctx);
        let err = (a.to_exact_rat() * BigRat::from_integer(4.into()) - &pi_rat).abs();
        assert!(err < tol, "asin(sqrt2/2): err = {err}");

        // asin(sqrt(3)/2) = pi/3
        let s = HpReal::from_rat_floor(&rat(3, 4), bits).sqrt_floor();
        let a = asin(&s, &ctx);
        let err = (a.to_exact_rat() * BigRat::from_integer(3.into()) - &pi_rat).abs();
        assert!(err < tol, "asin(sqrt3/2): err = {err}");
    }

    #[test]
    fn asin_is_exactly_odd() {
        let ctx = PrecisionCtx::new(30);
        let x = HpReal::from_rat_floor(&rat(7, 9), ctx.bits());
        assert!(asin(&x.neg(), &ctx).eq_val(&asin(&x, &ctx).neg()));
    }

    #[test]
    #[should_panic(expected = "|x| must be <= 1")]
    fn asin_rejects_out_of_range() {
        let ctx = PrecisionCtx::new(12);
        asin(&HpReal::from_int(2, ctx.bits()), &ctx);
    }

    #[test]
    fn scientific_rendering() {
        let bits = PrecisionCtx::new(30).bits();
        assert_eq!(HpReal::from_int(1, bits).to_decimal_sci(5), "1.0000e0");
        assert_eq!(
            HpReal::from_rat_floor(&rat(1, 8), bits).to_decimal_sci(3),
            "1.25e-1"
        );
        // Half-away rounding: 2.5 -> 3, -2.5 -> -3.
        assert_eq!(
            HpReal::from_rat_floor(&rat(5, 2), bits).to_decimal_sci(1),
            "3e0"
        );
        assert_eq!(
            HpReal::from_rat_floor(&rat(-5, 2), bits).to_decimal_sci(1),
            "-3e0"
        );
        assert_eq!(HpReal::zero(bits).to_decimal_sci(7), "0e0");
        assert_eq!(
            HpReal::from_rat_floor(&rat(1, 3), bits).to_decimal_sci(10),
            "3.333333333e-1"
        );
        // Carry into a new leading digit: 0.9999... at 3 digits is 1.00e0.
        assert_eq!(
            HpReal::from_rat_floor(&rat(9999, 10000), bits).to_decimal_sci(3),
            "1.00e0"
        );
        assert_eq!(HpReal::from_int(12345, bits).to_decimal_sci(3), "1.23e4");
    }

    #[test]
    fn directed_square_roots_bracket() {
        let bits = PrecisionCtx::new(40).bits();
        for r in [rat(2, 1), rat(3, 1), rat(1, 2), rat(3, 4), rat(7, 5)] {
            let x = HpReal::from_rat_floor(&r, bits);
            let lo = x.sqrt_floor().to_exact_rat();
            let hi = x.sqrt_ceil().to_exact_rat();
            assert!(&lo * &lo <= x.to_exact_rat());
            assert!(&hi * &hi >= x.to_exact_rat());
            assert!(&hi - &lo <= BigRat::new(BigInt::one(), BigInt::one() << bits));
        }
    }

    proptest! {
        #[test]
        fn rational_embedding_is_directed(num in -10_000i64..10_000, den in 1i64..10_000) {
            let r = rat(num, den);
            let bits = PrecisionCtx::new(20).bits();
            let lo = HpReal::from_rat_floor(&r, bits);
            let hi = HpReal::from_rat_ceil(&r, bits);
            prop_assert!(lo.to_exact_rat() <= r);
            prop_assert!(r <= hi.to_exact_rat());
            let gap = hi.sub(&lo);
            prop_assert!(gap.mant() <= &BigInt::one());
        }

        #[test]
        fn products_and_quotients_are_directed(
            an in -1000i64..1000, ad in 1i64..1000,
            bn in 1i64..1000, bd in 1i64..1000,
        ) {
            let bits = PrecisionCtx::new(20).bits();
            let a = HpReal::from_rat_floor(&rat(an, ad), bits);
            let b = HpReal::from_rat_floor(&rat(bn, bd), bits);
            let exact_mul = a.to_exact_rat() * b.to_exact_rat();
            prop_assert!(a.mul_floor(&b).to_exact_rat() <= exact_mul);
            prop_assert!(a.mul_ceil(&b).to_exact_rat() >= exact_mul);
            let exact_div = a.to_exact_rat() / b.to_exact_rat();
            prop_assert!(a.div_floor(&b).to_exact_rat() <= exact_div);
            prop_assert!(a.div_ceil(&b).to_exact_rat() >= exact_div);
        }
    }
}
