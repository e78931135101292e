//! Assembled closed-form expressions over the `asin^j sqrt^e` basis, and
//! the theorem right-hand sides built from them.
//!
//! A [`ClosedFormExpr`] maps slots `(j, e)` — arcsine power `j` in `0..=4`
//! and square-root flag `e` in `{0, 1}` — to polynomial coefficients:
//!
//! ```text
//! E(x) = sum over slots of  poly(x) * asin^j(x) * sqrt(1-x^2)^e
//! ```
//!
//! [`rhs_theorem`] packages the closed form of one series family: for the
//! family with arcsine power `p` and shift `n`, the series value equals
//!
//! ```text
//! scale * x^x_exp * [ asin^p(x) * x^n - n * I(x) ]
//! ```
//!
//! where `I` is an antiderivative expression from
//! [`kit_to_integral_expr`](super::kit_to_integral_expr) at exponent
//! `n - 1`, `scale = 1/kappa_p` with `kappa = 1, 1, 6, 12`, and
//! `x_exp = -(n+1)` for `p = 1` (the family of even powers over odd
//! denominators) or `-n` otherwise. The subtraction cancels the top
//! arcsine slot for `n >= 1`, which is what makes the special values at
//! `x = 1` land in the `pi^a sqrt(d)` basis even for odd `n`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{build_kit, kit_to_integral_expr, KitError};
use crate::exactnum::{rat, BigRat};
use crate::hp::{asin, HpReal, PrecisionCtx};
use crate::polyops::RatPoly;

/// A finite sum of `poly(x) * asin^j(x) * sqrt(1-x^2)^e` terms, keyed by
/// the slot `(j, e)`. Zero polynomials are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClosedFormExpr {
    terms: BTreeMap<(u8, u8), RatPoly>,
}

impl ClosedFormExpr {
    pub fn new() -> Self {
        ClosedFormExpr::default()
    }

    /// Add `poly` on the slot, merging with any existing coefficient and
    /// dropping the slot if the sum vanishes.
    pub fn add_term(&mut self, slot: (u8, u8), poly: &RatPoly) {
        if poly.is_zero() {
            return;
        }
        match self.terms.entry(slot) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(poly.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + poly;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Iterate the nonzero terms as `((asin_pow, sqrt_flag), poly)`.
    pub fn terms(&self) -> impl Iterator<Item = (&(u8, u8), &RatPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Scale every polynomial by `r`.
    pub fn scale(&self, r: &BigRat) -> ClosedFormExpr {
        let mut out = ClosedFormExpr::new();
        if r.is_zero() {
            return out;
        }
        for (slot, poly) in &self.terms {
            out.add_term(*slot, &poly.scale(r));
        }
        out
    }

    /// Termwise sum of two expressions.
    pub fn add(&self, other: &ClosedFormExpr) -> ClosedFormExpr {
        let mut out = self.clone();
        for (slot, poly) in &other.terms {
            out.add_term(*slot, poly);
        }
        out
    }

    /// Numeric evaluation at `|x| <= 1` (accurate to a few ulps; not
    /// directed).
    pub fn eval_hp(&self, x: &HpReal, ctx: &PrecisionCtx) -> HpReal {
        let bits = ctx.bits();
        let asin_x = asin(x, ctx);
        let one = HpReal::from_int(1, bits);
        let sqrt_x = one.sub(&x.mul_floor(x)).sqrt_floor();
        // asin powers 0..=4
        let mut asin_pows = Vec::with_capacity(5);
        asin_pows.push(HpReal::from_int(1, bits));
        for j in 1..=4usize {
            asin_pows.push(asin_pows[j - 1].mul_floor(&asin_x));
        }
        let mut acc = HpReal::zero(bits);
        for ((j, e), poly) in &self.terms {
            let mut t = poly.eval_hp(x).mul_floor(&asin_pows[*j as usize]);
            if *e == 1 {
                t = t.mul_floor(&sqrt_x);
            }
            acc = acc.add(&t);
        }
        acc
    }
}

/// Closed form of one series family at shift `n`: the series value is
/// `scale * x^x_exp * expr(x)` away from `x = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremRhs {
    /// Arcsine power of the family (1..=4).
    pub p: u32,
    /// Shift parameter of the family.
    pub n: u64,
    /// Overall rational prefactor (`1/kappa_p`).
    pub scale: BigRat,
    /// Exponent of the `x` prefactor (always `<= 0`).
    pub x_exp: i64,
    /// The bracketed `asin`/`sqrt` expression.
    pub expr: ClosedFormExpr,
}

/// Build the closed form for the family with arcsine power `p` and shift
/// `n`; see the module docs for the shape.
///
/// # Errors
/// [`KitError::Power`] unless `p` is in `1..=4`.
pub fn rhs_theorem(p: u32, n: u64) -> Result<TheoremRhs, KitError> {
    if !(1..=4).contains(&p) {
        return Err(KitError::Power);
    }
    let kappa = [1i64, 1, 6, 12][(p - 1) as usize];
    let delta = u64::from(p == 1);
    let x_exp = -i64::try_from(n + delta).expect("rhs_theorem(): n too large");
    let mut expr = ClosedFormExpr::new();
    expr.add_term((p as u8, 0), &RatPoly::x_pow(n as usize));
    if n >= 1 {
        let nu = u32::try_from(n - 1).expect("rhs_theorem(): n too large");
        let integral = kit_to_integral_expr(&build_kit(p, nu)?);
        expr = expr.add(&integral.scale(&rat(-(n as i64), 1)));
    }
    Ok(TheoremRhs {
        p,
        n,
        scale: rat(1, kappa),
        x_exp,
        expr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use num_traits::Signed;

    fn poly(coeffs: &[(i64, i64)]) -> RatPoly {
        RatPoly::new(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    fn slots(rhs: &TheoremRhs) -> Vec<((u8, u8), RatPoly)> {
        rhs.expr.terms().map(|(s, p)| (*s, p.clone())).collect()
    }

    #[test]
    fn shift_zero_forms_are_pure_arcsine_powers() {
        for p in 1..=4u32 {
            let rhs = rhs_theorem(p, 0).unwrap();
            assert_eq!(rhs.scale, rat(1, [1, 1, 6, 12][(p - 1) as usize]));
            assert_eq!(rhs.x_exp, if p == 1 { -1 } else { 0 });
            assert_eq!(
                slots(&rhs),
                vec![((p as u8, 0), RatPoly::constant(BigRat::one()))]
            );
        }
    }

    #[test]
    fn first_family_small_shifts() {
        // n = 1: (1 - sqrt(1-x^2)) / x^2
        let rhs = rhs_theorem(1, 1).unwrap();
        assert_eq!(rhs.x_exp, -2);
        assert_eq!(
            slots(&rhs),
            vec![
                ((0, 0), RatPoly::constant(rat(1, 1))),
                ((0, 1), RatPoly::constant(rat(-1, 1))),
            ]
        );
        // n = 2: (asin/2 - (x/2) sqrt) / x^3
        let rhs = rhs_theorem(1, 2).unwrap();
        assert_eq!(rhs.x_exp, -3);
        assert_eq!(
            slots(&rhs),
            vec![
                ((0, 1), poly(&[(0, 1), (-1, 2)])),
                ((1, 0), RatPoly::constant(rat(1, 2))),
            ]
        );
    }

    #[test]
    fn second_family_cancels_top_slot() {
        // p = 2, n = 2: (asin^2/2 - x asin sqrt + x^2/2) / x^2; the x^2
        // asin^2 pieces from the two halves cancel, leaving the constant.
        let rhs = rhs_theorem(2, 2).unwrap();
        assert_eq!(rhs.x_exp, -2);
        assert_eq!(
            slots(&rhs),
            vec![
                ((0, 0), poly(&[(0, 1), (0, 1), (1, 2)])),
                ((1, 1), poly(&[(0, 1), (-1, 1)])),
                ((2, 0), RatPoly::constant(rat(1, 2))),
            ]
        );
    }

    #[test]
    fn third_family_drops_top_arcsine_for_positive_shift() {
        // p = 3, n = 1: the x asin^3 terms cancel; nothing of slot (3, 0)
        // remains, so the x = 1 value involves no pi^3.
        let rhs = rhs_theorem(3, 1).unwrap();
        assert!(rhs.expr.terms().all(|((j, _), _)| *j < 3));
    }

    #[test]
    fn numeric_evaluation_tracks_the_polynomials() {
        // Evaluate the n = 1 first-family bracket at x = 3/5 where
        // sqrt(1 - x^2) = 4/5: expr = 1 - 4/5 = 1/5.
        let ctx = PrecisionCtx::new(30);
        let rhs = rhs_theorem(1, 1).unwrap();
        let x = HpReal::from_rat_floor(&rat(3, 5), ctx.bits());
        let v = rhs.expr.eval_hp(&x, &ctx);
        let err = (v.to_exact_rat() - rat(1, 5)).abs();
        assert!(err < rat(1, 1_000_000_000), "err = {err}");
    }

    #[test]
    fn merging_drops_cancelled_slots() {
        let mut e = ClosedFormExpr::new();
        e.add_term((1, 0), &RatPoly::x_pow(2));
        e.add_term((1, 0), &RatPoly::x_pow(2).scale(&rat(-1, 1)));
        assert!(e.is_zero());
        e.add_term((2, 1), &RatPoly::zero());
        assert!(e.is_zero());
    }
}
