//! Independent double-precision oracle for the arcsine moment integrals
//! `∫_0^x t^nu asin(t)^p dt`.
//!
//! The integrand's derivative blows up at `t = 1`, so integrating in `t`
//! directly would need special handling near the right endpoint. The
//! substitution `t = sin(theta)` turns the integral into
//!
//! ```text
//! ∫_0^asin(x)  theta^p  sin(theta)^nu  cos(theta)  d(theta)
//! ```
//!
//! which is smooth on the whole closed interval (including `x = 1`, where
//! the upper limit is `pi/2`), so one plain adaptive Simpson scheme covers
//! every case uniformly.
//!
//! This module deliberately works in `f64` only: its job is to provide an
//! *independent* check of the closed-form kits at the `1e-10` level, not
//! to reproduce the multi-precision series values (the series module
//! cross-checks those against the exact closed forms directly).

use thiserror::Error;

/// Errors from the moment integrator.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    /// Arcsine power outside `1..=4`.
    #[error("p must be in 1..=4")]
    Power,
    /// Upper limit outside `(0, 1]`.
    #[error("x out of domain")]
    Domain,
}

/// Result of one adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    /// The integral estimate (Richardson-extrapolated Simpson).
    pub value: f64,
    /// Accumulated embedded-rule discrepancy of the accepted panels;
    /// an a-posteriori error estimate, kept below `1e-12 * max(1, |value|)`.
    pub error_estimate: f64,
    /// Number of integrand evaluations performed.
    pub evaluations: u64,
}

/// Maximum bisection depth. The integrand is entire, so in practice the
/// recursion bottoms out around depth 10–15; the cap only guards against
/// pathological floating-point stalling.
const MAX_DEPTH: u32 = 50;

/// Relative tolerance target for the whole integral.
const REL_TOL: f64 = 1e-12;

/// One Simpson estimate over `[a, b]` given the three node values.
fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

struct Integrator<F: Fn(f64) -> f64> {
    f: F,
    evaluations: u64,
    error_estimate: f64,
}

impl<F: Fn(f64) -> f64> Integrator<F> {
    fn eval(&mut self, t: f64) -> f64 {
        self.evaluations += 1;
        (self.f)(t)
    }

    /// Adaptive Simpson on `[a, b]`: compare the whole-panel estimate
    /// `s` against the two-half refinement; accept when the discrepancy
    /// is within this panel's share of the tolerance, else recurse.
    #[allow(clippy::too_many_arguments)]
    fn refine(
        &mut self,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        s: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = self.eval(lm);
        let frm = self.eval(rm);
        let s_left = simpson(a, m, fa, flm, fm);
        let s_right = simpson(m, b, fm, frm, fb);
        let s2 = s_left + s_right;
        let disc = s2 - s;
        if disc.abs() <= 15.0 * tol || depth >= MAX_DEPTH {
            self.error_estimate += disc.abs() / 15.0;
            // Richardson extrapolation: S2 has error ~ disc/15.
            s2 + disc / 15.0
        } else {
            let half = 0.5 * tol;
            self.refine(a, m, fa, flm, fm, s_left, half, depth + 1)
                + self.refine(m, b, fm, frm, fb, s_right, half, depth + 1)
        }
    }
}

/// `∫_0^x t^nu asin(t)^p dt` for `p` in `1..=4`, `nu >= 0`, `0 < x <= 1`.
///
/// Computed as the smooth integral of `theta^p sin^nu(theta) cos(theta)`
/// over `[0, asin x]` with adaptive Simpson refinement until the
/// accumulated panel discrepancy is below `1e-12 * max(1, |value|)`.
///
/// # Errors
/// [`QuadError::Power`] unless `1 <= p <= 4`; [`QuadError::Domain`]
/// unless `0 < x <= 1`.
pub fn integrate_moment(p: u32, nu: u32, x: f64) -> Result<QuadResult, QuadError> {
    if !(1..=4).contains(&p) {
        return Err(QuadError::Power);
    }
    if !(x > 0.0 && x <= 1.0) {
        return Err(QuadError::Domain);
    }
    let upper = x.asin();
    let integrand =
        move |theta: f64| theta.powi(p as i32) * theta.sin().powi(nu as i32) * theta.cos();
    let mut quad = Integrator {
        f: integrand,
        evaluations: 0,
        error_estimate: 0.0,
    };
    let fa = quad.eval(0.0);
    let fm = quad.eval(0.5 * upper);
    let fb = quad.eval(upper);
    let s = simpson(0.0, upper, fa, fm, fb);
    // Scale the absolute tolerance by a first whole-interval estimate so
    // the relative target holds for large and small values alike.
    let tol = REL_TOL * s.abs().max(1.0);
    let value = quad.refine(0.0, upper, fa, fm, fb, s, tol, 0);
    Ok(QuadResult {
        value,
        error_estimate: quad.error_estimate,
        evaluations: quad.evaluations,
    })
}
