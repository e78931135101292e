//! The generic shift transform that seeds every family: for a power
//! series `f(x) = sum a_k x^k` with no constant term,
//!
//! ```text
//! sum_k (k a_k / (k+n)) x^(k+n) = x^n f(x) - n * integral_0^x t^(n-1) f(t) dt
//! ```
//!
//! (integrate by parts once). With `f = arcsin` the left side is exactly
//! `x^(n+1)` times the first family at shift `n`, so the check pits the
//! certified series evaluator against the adaptive quadrature oracle —
//! two entirely independent code paths. Accuracy is quadrature-limited
//! (about `1e-12` relative), far below the series side's certified
//! precision.

use super::{lhs_series, SeriesError};
use crate::exactnum::BigRat;
use crate::hp::{HpReal, PrecisionCtx};
use crate::quadrature::integrate_moment;

/// Outcome of one transform check, at quadrature (double) precision.
#[derive(Debug, Clone, Copy)]
pub struct TransformCheck {
    /// The series side `x^(n+1) * family1(n, x)`.
    pub series_side: f64,
    /// The integrated side `x^n asin(x) - n * integral`.
    pub integral_side: f64,
    /// `|series_side - integral_side|`.
    pub abs_error: f64,
    /// Integrand evaluations spent by the quadrature (0 when `n = 0`,
    /// where the transform is an algebraic identity).
    pub evaluations: u64,
}

/// Check the shift transform for `f = arcsin` at shift `n` and
/// `x` in `(0, 1)`.
///
/// # Errors
/// [`SeriesError::Domain`] unless `0 < x < 1`.
pub fn general_transform_check(
    n: u64,
    x: f64,
    ctx: &PrecisionCtx,
) -> Result<TransformCheck, SeriesError> {
    if !(x > 0.0 && x < 1.0) {
        return Err(SeriesError::Domain);
    }
    let x_rat = BigRat::from_float(x).expect("x is finite");
    let report = lhs_series(1, n, &x_rat, ctx)?;
    let e = i32::try_from(n + 1).expect("transform: shift out of range");
    let pref = HpReal::from_rat_floor(&x_rat.pow(e), ctx.bits());
    let series_side = report.value.mul_floor(&pref).to_f64();
    let (integral_side, evaluations) = if n == 0 {
        (x.asin(), 0)
    } else {
        let nu = u32::try_from(n - 1).expect("transform: shift out of range");
        let q = integrate_moment(1, nu, x).expect("arguments pre-validated");
        (x.powi(e - 1) * x.asin() - n as f64 * q.value, q.evaluations)
    };
    Ok(TransformCheck {
        series_side,
        integral_side,
        abs_error: (series_side - integral_side).abs(),
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_arguments_outside_the_open_interval() {
        let ctx = PrecisionCtx::new(25);
        for x in [0.0, 1.0, -0.3, 1.5] {
            assert_eq!(
                general_transform_check(2, x, &ctx).unwrap_err(),
                SeriesError::Domain
            );
        }
    }

    #[test]
    fn zero_shift_is_the_arcsine_itself() {
        let ctx = PrecisionCtx::new(30);
        let c = general_transform_check(0, 0.6, &ctx).unwrap();
        assert_eq!(c.evaluations, 0);
        assert!(c.abs_error < 1e-13, "error {}", c.abs_error);
    }

    #[test]
    fn series_and_quadrature_sides_agree() {
        let ctx = PrecisionCtx::new(30);
        for n in [1u64, 2, 4, 8] {
            for x in [0.3, 0.5, 0.8] {
                let c = general_transform_check(n, x, &ctx).unwrap();
                assert!(c.evaluations > 0);
                assert!(
                    c.abs_error < 1e-10,
                    "n = {n}, x = {x}: error {}",
                    c.abs_error
                );
            }
        }
    }
}
