//! Closed forms for the moment integrals `I(x) = integral of
//! `theta^p sin^nu(theta) cos(theta)` from `0` to `asin(x)`.
//!
//! For each power `p` in `1..=4` and exponent `nu >= 0` the antiderivative
//! is a finite combination of `asin^j(x)` and `sqrt(1-x^2)` with polynomial
//! coefficients — a "kit" of up to five polynomials `(f, g, h, u, w)`
//! multiplying the basis
//!
//! ```text
//! (nu+1) I = f asin^p + g asin^(p-1) sqrt + h asin^(p-2)
//!           + u asin^(p-3) sqrt + w        (powers clamped at zero)
//! ```
//!
//! Differentiating term by term shows the kit is characterized by first
//! order relations driven by the operator `D q = x q + (x^2 - 1) q'` from
//! [`crate::polyops`]:
//!
//! - `f' = (nu+1) x^nu` with `D g = p f`,
//! - `h' = -(p-1) g` (for `p >= 2`),
//! - `D u = (p-2) h` (for `p >= 3`),
//! - `w' = -u` for `p = 4`, while for `p = 3` the scalar `w` absorbs the
//!   boundary condition `I(0) = 0`.
//!
//! [`build_kit`] constructs the kit by inverting `D` twice and fixing
//! integration constants from `I(0) = 0`. The scalar constants this
//! produces (the degree-zero `h` for `p = 1` and `w` for `p = 3`) have
//! independent closed forms in terms of central binomials and the
//! odd-square harmonic numbers; `build_kit` re-derives them from the
//! boundary condition and cross-checks against those closed forms on every
//! call, treating a mismatch as a build failure (panic).

pub mod corollary;
pub mod expr;

pub use corollary::{corollary_45_consistency, corollary_exact, CorollaryError, XCase};
pub use expr::{rhs_theorem, ClosedFormExpr, TheoremRhs};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::{central_binom, harmonic_odd_squares, rat, BigRat};
use crate::polyops::{apply_d, invert_d, RatPoly};

/// Errors from kit construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KitError {
    /// Kits exist for arcsine powers 1 through 4 only.
    #[error("p must be in 1..=4")]
    Power,
}

/// The five polynomial weights of one moment antiderivative; see the
/// module docs for the basis they multiply. Slots that do not occur for a
/// given `p` are the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kit {
    pub p: u32,
    pub nu: u32,
    pub f: RatPoly,
    pub g: RatPoly,
    pub h: RatPoly,
    pub u: RatPoly,
    pub w: RatPoly,
}

/// Expected scalar `h` for `p = 1`: zero for odd `nu`, and
/// `-4^l / ((2l+1) C(2l,l))` for `nu = 2l`.
fn scalar_h1(nu: u32) -> BigRat {
    if nu % 2 == 1 {
        return BigRat::zero();
    }
    let l = (nu / 2) as u64;
    -BigRat::new(
        BigInt::one() << (2 * l as usize),
        BigInt::from(2 * l + 1) * central_binom(l),
    )
}

/// Expected scalar `w` for `p = 3`: zero for odd `nu`, and
/// `6 * 4^l G(l+1) / ((2l+1) C(2l,l))` for `nu = 2l`, with `G` the
/// odd-square harmonic sum.
fn scalar_w3(nu: u32) -> BigRat {
    if nu % 2 == 1 {
        return BigRat::zero();
    }
    let l = (nu / 2) as u64;
    let num = BigRat::new(
        BigInt::from(6) << (2 * l as usize),
        BigInt::from(2 * l + 1) * central_binom(l),
    );
    num * harmonic_odd_squares(l + 1)
}

/// Construct the kit for `theta^p sin^nu(theta) cos(theta)`.
///
/// # Errors
/// [`KitError::Power`] unless `p` is in `1..=4`.
///
/// # Panics
/// If the derived boundary constants disagree with their closed-form
/// tables (which would mean the construction itself is broken).
pub fn build_kit(p: u32, nu: u32) -> Result<Kit, KitError> {
    if !(1..=4).contains(&p) {
        return Err(KitError::Power);
    }
    let target = RatPoly::x_pow(nu as usize + 1);
    // f' = (nu+1) x^nu together with D g1 = f pins f = x^(nu+1) - lam1.
    let (g1, lam1) = invert_d(&target);
    let f = &target - &RatPoly::constant(lam1);
    let g = g1.scale(&rat(p as i64, 1));
    let (h, u, w) = match p {
        1 => {
            // Boundary I(0) = 0 forces the constant h = -g(0).
            let h0 = -g.eval_rat(&BigRat::zero());
            assert_eq!(
                h0,
                scalar_h1(nu),
                "build_kit(): derived constant disagrees with the scalar table (p=1, nu={nu})"
            );
            (RatPoly::constant(h0), RatPoly::zero(), RatPoly::zero())
        }
        2 => {
            // h' = -g with h(0) = 0.
            let h = g.scale(&rat(-1, 1)).antiderivative();
            (h, RatPoly::zero(), RatPoly::zero())
        }
        3 => {
            // h' = -2g, then D u = h fixes h's constant term, and the
            // scalar w = -u(0) restores I(0) = 0.
            let h_raw = g.scale(&rat(-2, 1)).antiderivative();
            let (u, lam0) = invert_d(&h_raw);
            let h = &h_raw - &RatPoly::constant(lam0);
            let w0 = -u.eval_rat(&BigRat::zero());
            assert_eq!(
                w0,
                scalar_w3(nu),
                "build_kit(): derived constant disagrees with the scalar table (p=3, nu={nu})"
            );
            (h, u, RatPoly::constant(w0))
        }
        4 => {
            // h' = -3g, D u = 2h, w' = -u with w(0) = 0.
            let h_raw = g.scale(&rat(-3, 1)).antiderivative();
            let (u, lam0) = invert_d(&h_raw.scale(&rat(2, 1)));
            let h = &h_raw - &RatPoly::constant(lam0 / rat(2, 1));
            let w = u.scale(&rat(-1, 1)).antiderivative();
            (h, u, w)
        }
        _ => unreachable!(),
    };
    Ok(Kit {
        p,
        nu,
        f,
        g,
        h,
        u,
        w,
    })
}

/// Assemble the kit into the explicit antiderivative expression
/// (each weight divided by `nu + 1`, placed on its `asin`/`sqrt` slot).
pub fn kit_to_integral_expr(kit: &Kit) -> ClosedFormExpr {
    let s = BigRat::new(BigInt::one(), BigInt::from(kit.nu + 1));
    let p = kit.p as u8;
    let mut e = ClosedFormExpr::new();
    e.add_term((p, 0), &kit.f.scale(&s));
    e.add_term((p - 1, 1), &kit.g.scale(&s));
    e.add_term((p.saturating_sub(2), 0), &kit.h.scale(&s));
    if kit.p >= 3 {
        e.add_term((p - 3, 1), &kit.u.scale(&s));
        e.add_term((0, 0), &kit.w.scale(&s));
    }
    e
}

/// Verify the defining first-order relations and the boundary condition of
/// the kit for `(p, nu)`. Returns `false` if any relation fails or the kit
/// cannot be built.
pub fn verify_kit_derivative(p: u32, nu: u32) -> bool {
    let kit = match build_kit(p, nu) {
        Ok(k) => k,
        Err(_) => return false,
    };
    let pr = p as i64;
    // f' = (nu+1) x^nu
    if kit.f.derivative() != RatPoly::x_pow(nu as usize).scale(&rat(nu as i64 + 1, 1)) {
        return false;
    }
    // D g = p f
    if apply_d(&kit.g) != kit.f.scale(&rat(pr, 1)) {
        return false;
    }
    match p {
        1 => {
            // h is the boundary constant; u, w unused.
            if kit.h != RatPoly::constant(-kit.g.eval_rat(&BigRat::zero())) {
                return false;
            }
            if !kit.u.is_zero() || !kit.w.is_zero() {
                return false;
            }
        }
        2 => {
            if kit.h.derivative() != kit.g.scale(&rat(-1, 1)) {
                return false;
            }
            if !kit.u.is_zero() || !kit.w.is_zero() {
                return false;
            }
        }
        3 => {
            if kit.h.derivative() != kit.g.scale(&rat(-2, 1)) {
                return false;
            }
            if apply_d(&kit.u) != kit.h {
                return false;
            }
            if kit.w.degree() > Some(0)
                || kit.w != RatPoly::constant(-kit.u.eval_rat(&BigRat::zero()))
            {
                return false;
            }
        }
        4 => {
            if kit.h.derivative() != kit.g.scale(&rat(-3, 1)) {
                return false;
            }
            if apply_d(&kit.u) != kit.h.scale(&rat(2, 1)) {
                return false;
            }
            if kit.w.derivative() != kit.u.scale(&rat(-1, 1)) {
                return false;
            }
            if !kit.w.eval_rat(&BigRat::zero()).is_zero() {
                return false;
            }
        }
        _ => return false,
    }
    // Boundary: the assembled expression vanishes at x = 0 (asin = 0,
    // sqrt = 1), i.e. the slots with no asin factor cancel there.
    let expr = kit_to_integral_expr(&kit);
    let at_zero: BigRat = expr
        .terms()
        .filter(|((j, _), _)| *j == 0)
        .map(|(_, poly)| poly.eval_rat(&BigRat::zero()))
        .sum();
    at_zero.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[(i64, i64)]) -> RatPoly {
        RatPoly::new(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn first_power_kits() {
        // integral of theta cos: f = x, g = 1, h = -1
        let k = build_kit(1, 0).unwrap();
        assert_eq!(k.f, RatPoly::x_pow(1));
        assert_eq!(k.g, RatPoly::constant(rat(1, 1)));
        assert_eq!(k.h, RatPoly::constant(rat(-1, 1)));
        assert!(k.u.is_zero() && k.w.is_zero());
        // integral of theta sin cos: 2I = (x^2 - 1/2) asin + (x/2) sqrt
        let k = build_kit(1, 1).unwrap();
        assert_eq!(k.f, poly(&[(-1, 2), (0, 1), (1, 1)]));
        assert_eq!(k.g, poly(&[(0, 1), (1, 2)]));
        assert!(k.h.is_zero());
    }

    #[test]
    fn higher_power_kits() {
        // p = 2, nu = 0: x asin^2 + 2 sqrt asin - 2x
        let k = build_kit(2, 0).unwrap();
        assert_eq!(k.f, RatPoly::x_pow(1));
        assert_eq!(k.g, RatPoly::constant(rat(2, 1)));
        assert_eq!(k.h, poly(&[(0, 1), (-2, 1)]));
        // p = 3, nu = 0: x asin^3 + 3 sqrt asin^2 - 6x asin - 6 sqrt + 6
        let k = build_kit(3, 0).unwrap();
        assert_eq!(k.g, RatPoly::constant(rat(3, 1)));
        assert_eq!(k.h, poly(&[(0, 1), (-6, 1)]));
        assert_eq!(k.u, RatPoly::constant(rat(-6, 1)));
        assert_eq!(k.w, RatPoly::constant(rat(6, 1)));
        // p = 4, nu = 0: x asin^4 + 4 sqrt asin^3 - 12x asin^2 - 24 sqrt asin + 24x
        let k = build_kit(4, 0).unwrap();
        assert_eq!(k.h, poly(&[(0, 1), (-12, 1)]));
        assert_eq!(k.u, RatPoly::constant(rat(-24, 1)));
        assert_eq!(k.w, poly(&[(0, 1), (24, 1)]));
    }

    #[test]
    fn kit_rejects_unsupported_powers() {
        assert_eq!(build_kit(0, 3), Err(KitError::Power));
        assert_eq!(build_kit(5, 0), Err(KitError::Power));
        assert_eq!(format!("{}", KitError::Power), "p must be in 1..=4");
    }

    #[test]
    fn derivative_relations_hold_on_a_grid() {
        for p in 1..=4 {
            for nu in 0..=12 {
                assert!(
                    verify_kit_derivative(p, nu),
                    "kit relations fail at p={p}, nu={nu}"
                );
            }
        }
        assert!(!verify_kit_derivative(0, 2));
        assert!(!verify_kit_derivative(7, 1));
    }

    #[test]
    fn scalar_tables_match_first_cases() {
        // h for p=1: nu=0 -> -1, nu=2 -> -2/3, nu=4 -> -8/15; odd nu -> 0
        assert_eq!(scalar_h1(0), rat(-1, 1));
        assert_eq!(scalar_h1(2), rat(-2, 3));
        assert_eq!(scalar_h1(4), rat(-8, 15));
        assert_eq!(scalar_h1(3), rat(0, 1));
        // w for p=3: nu=0 -> 6, nu=2 -> 40/9 (6*4*(10/9)/(3*2))
        assert_eq!(scalar_w3(0), rat(6, 1));
        assert_eq!(scalar_w3(2), rat(40, 9));
        assert_eq!(scalar_w3(1), rat(0, 1));
    }
}
