//! Exact special values of the series families at the four algebraic
//! points, and the head-sum consistency check for the second family.
//!
//! At `x = 1, 1/2, sqrt(2)/2, sqrt(3)/2` both `asin(x)` and `sqrt(1-x^2)`
//! lie in the constants ring of [`crate::exactnum::ExactConst`]
//! (`pi`-multiples and the radicals `sqrt(2)`, `sqrt(3)`), so the theorem
//! closed form evaluates exactly: [`corollary_exact`] returns the precise
//! series value as an `ExactConst`. Examples:
//!
//! - first family, `n = 0`, `x = 1/2`: `pi/3`,
//! - second family, `n = 0`, `x = 1/2`: `pi^2/36`,
//! - third family, `n = 0`, `x = 1`: `pi^3/48`.
//!
//! [`corollary_45_consistency`] cross-checks the second family at `x = 1`
//! against the independent head-sum identities: with
//! `head1(m) = sum_(j=1)^m 4^j/(C(2j,j) j^2)` and
//! `head2(m) = sum_(j=0)^m C(2j,j)/((2j+1) 4^j)`,
//!
//! ```text
//! (2 * 4^n / C(2n,n)) * S(2n)   = pi^2/2 + head1(n)
//! ((2n+1) C(2n,n) / 4^n) * S(2n+1) = 2 head2(n)
//! ```
//!
//! where `S(m)` is the second-family value at shift `m`, `x = 1`. The left
//! sides come from the kit route, the right sides from pure rational
//! arithmetic plus `pi^2`, so agreement exercises every layer.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use super::{rhs_theorem, KitError};
use crate::exactnum::{central_binom, rat, BigRat, ExactConst, ExactConstError};
use crate::polyops::RatPoly;

/// Errors from exact corollary evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorollaryError {
    /// Arcsine power outside `1..=4`.
    #[error("p must be in 1..=4")]
    Power,
    /// The value left the `pi^a sqrt(d)` basis (cannot happen for the
    /// supported families; kept for honest plumbing).
    #[error("basis overflow")]
    Basis,
}

impl From<KitError> for CorollaryError {
    fn from(_: KitError) -> Self {
        CorollaryError::Power
    }
}

impl From<ExactConstError> for CorollaryError {
    fn from(_: ExactConstError) -> Self {
        CorollaryError::Basis
    }
}

/// The four algebraic evaluation points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum XCase {
    /// `x = 1`: `asin = pi/2`, `sqrt(1-x^2) = 0`.
    One,
    /// `x = 1/2`: `asin = pi/6`, `sqrt(1-x^2) = sqrt(3)/2`.
    Half,
    /// `x = sqrt(2)/2`: `asin = pi/4`, `sqrt(1-x^2) = sqrt(2)/2`.
    HalfSqrt2,
    /// `x = sqrt(3)/2`: `asin = pi/3`, `sqrt(1-x^2) = 1/2`.
    HalfSqrt3,
}

impl XCase {
    /// `x^2`, always rational.
    pub fn x_squared(&self) -> BigRat {
        match self {
            XCase::One => rat(1, 1),
            XCase::Half => rat(1, 4),
            XCase::HalfSqrt2 => rat(1, 2),
            XCase::HalfSqrt3 => rat(3, 4),
        }
    }

    /// `x` itself as an exact constant.
    pub fn x_value(&self) -> ExactConst {
        match self {
            XCase::One => ExactConst::one(),
            XCase::Half => ExactConst::from_rat(&rat(1, 2)),
            XCase::HalfSqrt2 => ExactConst::from_term(0, 2, &rat(1, 2)),
            XCase::HalfSqrt3 => ExactConst::from_term(0, 3, &rat(1, 2)),
        }
    }

    /// `asin(x)` as an exact pi-multiple.
    pub fn asin_value(&self) -> ExactConst {
        let frac = match self {
            XCase::One => rat(1, 2),
            XCase::Half => rat(1, 6),
            XCase::HalfSqrt2 => rat(1, 4),
            XCase::HalfSqrt3 => rat(1, 3),
        };
        ExactConst::from_term(1, 1, &frac)
    }

    /// `sqrt(1 - x^2)` as an exact constant.
    pub fn sqrt_one_minus_x_squared(&self) -> ExactConst {
        match self {
            XCase::One => ExactConst::zero(),
            XCase::Half => ExactConst::from_term(0, 3, &rat(1, 2)),
            XCase::HalfSqrt2 => ExactConst::from_term(0, 2, &rat(1, 2)),
            XCase::HalfSqrt3 => ExactConst::from_rat(&rat(1, 2)),
        }
    }
}

/// `x^e` at the case point, for any sign of `e` (splits into a rational
/// power of `x^2` and at most one factor of `x`).
fn xcase_int_pow(xc: XCase, e: i64) -> Result<ExactConst, CorollaryError> {
    let q = xc.x_squared();
    let half = i32::try_from(e.div_euclid(2)).map_err(|_| CorollaryError::Basis)?;
    let even_part = ExactConst::from_rat(&q.pow(half));
    if e.rem_euclid(2) == 1 {
        Ok(even_part.mul(&xc.x_value())?)
    } else {
        Ok(even_part)
    }
}

/// Exact polynomial evaluation at the case point, by even/odd split:
/// `P(x) = A(x^2) + x B(x^2)` with `A`, `B` rational at rational `x^2`.
fn eval_poly_at(xc: XCase, poly: &RatPoly) -> Result<ExactConst, CorollaryError> {
    let q = xc.x_squared();
    let mut even = BigRat::from_integer(0.into());
    let mut odd = BigRat::from_integer(0.into());
    for (i, c) in poly.coeffs().iter().enumerate().rev() {
        if i % 2 == 0 {
            even = even * &q + c;
        } else {
            odd = odd * &q + c;
        }
    }
    let result = ExactConst::from_rat(&even).add(&xc.x_value().mul(&ExactConst::from_rat(&odd))?);
    Ok(result)
}

/// Small nonnegative power of an exact constant.
fn pow_const(c: &ExactConst, e: u8) -> Result<ExactConst, CorollaryError> {
    let mut acc = ExactConst::one();
    for _ in 0..e {
        acc = acc.mul(c)?;
    }
    Ok(acc)
}

/// Exact value of the series family `(p, n)` at the algebraic point.
///
/// Evaluates the theorem closed form with `asin`, `sqrt(1-x^2)` and all
/// polynomial coefficients in the `pi^a sqrt(d)` constants ring.
///
/// # Errors
/// [`CorollaryError::Power`] unless `p` is in `1..=4`.
pub fn corollary_exact(p: u32, n: u64, xc: XCase) -> Result<ExactConst, CorollaryError> {
    let rhs = rhs_theorem(p, n)?;
    let asin_c = xc.asin_value();
    let sqrt_c = xc.sqrt_one_minus_x_squared();
    let mut acc = ExactConst::zero();
    for ((j, e), poly) in rhs.expr.terms() {
        let mut t = eval_poly_at(xc, poly)?;
        t = t.mul(&pow_const(&asin_c, *j)?)?;
        if *e == 1 {
            t = t.mul(&sqrt_c)?;
        }
        acc = acc.add(&t);
    }
    let prefactor = xcase_int_pow(xc, rhs.x_exp)?;
    Ok(acc.mul(&prefactor)?.scale(&rhs.scale))
}

/// `head1(m) = sum_(j=1)^m 4^j / (C(2j,j) j^2)` (increases to `pi^2/2`).
pub(crate) fn head1(m: u64) -> BigRat {
    let mut s = BigRat::from_integer(0.into());
    for j in 1..=m {
        let den = central_binom(j) * BigInt::from(j * j);
        s += BigRat::new(BigInt::one() << (2 * j as usize), den);
    }
    s
}

/// `head2(m) = sum_(j=0)^m C(2j,j) / ((2j+1) 4^j)` (increases to `pi/2`).
pub(crate) fn head2(m: u64) -> BigRat {
    let mut s = BigRat::from_integer(0.into());
    for j in 0..=m {
        let num = central_binom(j);
        let den = BigInt::from(2 * j + 1) << (2 * j as usize);
        s += BigRat::new(num, den);
    }
    s
}

/// Consistency of the second family at `x = 1` with the head-sum
/// identities (see the module docs): both the even-shift and odd-shift
/// forms must agree exactly for the given `n`.
pub fn corollary_45_consistency(n: u64) -> bool {
    let c2n = central_binom(n);
    // Even shift 2n: (2 * 4^n / C(2n,n)) * S(2n) = pi^2/2 + head1(n)
    let even = match corollary_exact(2, 2 * n, XCase::One) {
        Ok(v) => v,
        Err(_) => return false,
    };
    let even_scale = BigRat::new(BigInt::from(2) << (2 * n as usize), c2n.clone());
    let even_lhs = even.scale(&even_scale);
    let even_rhs = ExactConst::from_term(2, 1, &rat(1, 2)).add(&ExactConst::from_rat(&head1(n)));
    if even_lhs != even_rhs {
        return false;
    }
    // Odd shift 2n+1: ((2n+1) C(2n,n) / 4^n) * S(2n+1) = 2 head2(n)
    let odd = match corollary_exact(2, 2 * n + 1, XCase::One) {
        Ok(v) => v,
        Err(_) => return false,
    };
    let odd_scale = BigRat::new(
        BigInt::from(2 * n + 1) * c2n,
        BigInt::one() << (2 * n as usize),
    );
    let odd_lhs = odd.scale(&odd_scale);
    let odd_rhs = ExactConst::from_rat(&(head2(n) * rat(2, 1)));
    odd_lhs == odd_rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::gen_binom_half;
    use crate::hp::PrecisionCtx;

    #[test]
    fn first_family_special_values() {
        // n = 0: asin(x)/x -> pi/2 at 1, pi/3 at 1/2
        assert_eq!(
            corollary_exact(1, 0, XCase::One).unwrap().to_string(),
            "1/2*pi"
        );
        assert_eq!(
            corollary_exact(1, 0, XCase::Half).unwrap().to_string(),
            "1/3*pi"
        );
        // n = 1: (1 - sqrt(1-x^2))/x^2 -> 1 at x=1, 4 - 2 sqrt(3) at 1/2
        assert_eq!(corollary_exact(1, 1, XCase::One).unwrap().to_string(), "1");
        assert_eq!(
            corollary_exact(1, 1, XCase::Half).unwrap().to_string(),
            "4 - 2*sqrt(3)"
        );
        // sqrt cases: n = 0 gives asin(x)/x
        assert_eq!(
            corollary_exact(1, 0, XCase::HalfSqrt2).unwrap().to_string(),
            "1/4*pi*sqrt(2)"
        );
        assert_eq!(
            corollary_exact(1, 0, XCase::HalfSqrt3).unwrap().to_string(),
            "2/9*pi*sqrt(3)"
        );
    }

    #[test]
    fn first_family_even_shift_table_at_half() {
        // The even-shift values at x = 1/2 grow a pi/3 head plus radicals.
        let expect = [
            (0u64, "1/3*pi"),
            (2, "2/3*pi - sqrt(3)"),
            (4, "2*pi - 7/2*sqrt(3)"),
            (6, "20/3*pi - 12*sqrt(3)"),
            (8, "70/3*pi - 169/4*sqrt(3)"),
            (10, "84*pi - 1523/10*sqrt(3)"),
        ];
        for (n, s) in expect {
            assert_eq!(
                corollary_exact(1, n, XCase::Half).unwrap().to_string(),
                s,
                "n = {n}"
            );
        }
    }

    #[test]
    fn second_family_table_at_half() {
        let expect = [
            (0u64, "1/36*pi^2"),
            (2, "1/18*pi^2 - 1/6*pi*sqrt(3) + 1/2"),
            (4, "1/6*pi^2 - 7/12*pi*sqrt(3) + 13/8"),
            (6, "5/9*pi^2 - 2*pi*sqrt(3) + 197/36"),
        ];
        for (n, s) in expect {
            assert_eq!(
                corollary_exact(2, n, XCase::Half).unwrap().to_string(),
                s,
                "n = {n}"
            );
        }
    }

    #[test]
    fn unit_argument_values_for_higher_powers() {
        // p = 2, n = 1: the value collapses to the integer 2.
        assert_eq!(corollary_exact(2, 1, XCase::One).unwrap().to_string(), "2");
        // p = 3, n = 0: pi^3/48; p = 4, n = 0: pi^4/192.
        assert_eq!(
            corollary_exact(3, 0, XCase::One).unwrap().to_string(),
            "1/48*pi^3"
        );
        assert_eq!(
            corollary_exact(4, 0, XCase::One).unwrap().to_string(),
            "1/192*pi^4"
        );
        // p = 3, n = 1: (pi - 2)/2 — no pi^3 survives for odd shifts.
        assert_eq!(
            corollary_exact(3, 1, XCase::One).unwrap().to_string(),
            "1/2*pi - 1"
        );
    }

    #[test]
    fn unit_argument_first_family_matches_half_binomials() {
        // First family at x = 1: value = gen_binom_half(n) * pi / 2^(n+1),
        // for even and odd n alike (odd n cancels the pi).
        for n in 0..=12u64 {
            let lhs = corollary_exact(1, n, XCase::One).unwrap();
            let scale = BigRat::new(BigInt::one(), BigInt::one() << (n as usize + 1));
            let rhs = gen_binom_half(n)
                .mul(&ExactConst::pi())
                .unwrap()
                .scale(&scale);
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn invalid_power_is_rejected() {
        assert_eq!(
            corollary_exact(0, 1, XCase::One),
            Err(CorollaryError::Power)
        );
        assert_eq!(
            corollary_exact(9, 1, XCase::Half),
            Err(CorollaryError::Power)
        );
    }

    #[test]
    fn head_sum_consistency_small_cases() {
        for n in 0..=6 {
            assert!(corollary_45_consistency(n), "n = {n}");
        }
    }

    #[test]
    fn symbolic_values_match_numerics() {
        // Spot-check an exact value against direct numeric evaluation of
        // the closed form at high precision.
        let ctx = PrecisionCtx::new(40);
        let sym = corollary_exact(2, 2, XCase::Half).unwrap().to_hp(&ctx);
        // Reference: pi^2/18 - pi sqrt(3)/6 + 1/2 = 0.14141167349896655352709...
        let s = sym.to_decimal_sci(20);
        assert_eq!(s, "1.4141167349896655353e-1");
    }
}
