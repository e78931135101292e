//! Exact symbolic constants of the form `sum c * pi^a * sqrt(d)`.
//!
//! [`ExactConst`] is a normal form over the basis `pi^a * sqrt(d)` with
//! `a` in `-1..=4` and `d` in `{1, 2, 3}`: a sorted map from `(a, d)` to a
//! nonzero rational coefficient. Every special value produced by the
//! closed forms in this crate (values at `x = 1, 1/2, sqrt(2)/2,
//! sqrt(3)/2`) lives in this space, so addition and comparison are exact.
//! Multiplication is partial: products whose pi-power leaves `-1..=4`, or
//! that would need `sqrt(6)`, report a basis overflow instead of silently
//! approximating.
//!
//! A deterministic renderer prints values like `20/3*pi - 12*sqrt(3)`:
//! terms in descending pi-power (then ascending radicand), coefficients as
//! plain rationals, unit coefficients elided before symbolic factors.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::BigRat;
use crate::hp::{pi, HpReal, PrecisionCtx};

/// Smallest and largest representable pi-powers.
const PI_POW_MIN: i8 = -1;
const PI_POW_MAX: i8 = 4;

/// Failure modes of the partial operations on [`ExactConst`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactConstError {
    /// The result leaves the representable basis (pi-power outside
    /// `-1..=4`, or a product of distinct radicals like `sqrt(2)*sqrt(3)`).
    #[error("basis overflow")]
    BasisOverflow,
    /// Inversion is only defined for single-term values.
    #[error("inverse requires a single-term value")]
    NotSingleTerm,
}

/// An exact constant `sum over (a, d) of coeff * pi^a * sqrt(d)`.
///
/// Invariant: no stored coefficient is zero, so structural equality is
/// value equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExactConst {
    terms: BTreeMap<(i8, u8), BigRat>,
}

impl ExactConst {
    /// The zero constant.
    pub fn zero() -> Self {
        ExactConst::default()
    }

    /// The constant one.
    pub fn one() -> Self {
        Self::from_rat(&BigRat::one())
    }

    /// The constant pi.
    pub fn pi() -> Self {
        Self::from_term(1, 1, &BigRat::one())
    }

    /// A plain rational constant.
    pub fn from_rat(r: &BigRat) -> Self {
        Self::from_term(0, 1, r)
    }

    /// A single term `coeff * pi^pi_pow * sqrt(radicand)`.
    ///
    /// # Panics
    /// If `pi_pow` is outside `-1..=4` or `radicand` outside `{1, 2, 3}`
    /// (constructing out-of-basis values is a programming error).
    pub fn from_term(pi_pow: i8, radicand: u8, coeff: &BigRat) -> Self {
        assert!(
            (PI_POW_MIN..=PI_POW_MAX).contains(&pi_pow),
            "ExactConst::from_term(): pi power out of basis"
        );
        assert!(
            (1..=3).contains(&radicand),
            "ExactConst::from_term(): radicand out of basis"
        );
        let mut c = ExactConst::default();
        if !coeff.is_zero() {
            c.terms.insert((pi_pow, radicand), coeff.clone());
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate the nonzero terms as `((pi_pow, radicand), coeff)`.
    pub fn terms(&self) -> impl Iterator<Item = (&(i8, u8), &BigRat)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, key: (i8, u8), coeff: BigRat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Exact sum.
    pub fn add(&self, other: &ExactConst) -> ExactConst {
        let mut out = self.clone();
        for (key, c) in &other.terms {
            out.insert_add(*key, c.clone());
        }
        out
    }

    /// Exact difference.
    pub fn sub(&self, other: &ExactConst) -> ExactConst {
        self.add(&other.neg())
    }

    /// Exact negation.
    pub fn neg(&self) -> ExactConst {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    /// Exact scaling by a rational.
    pub fn scale(&self, r: &BigRat) -> ExactConst {
        if r.is_zero() {
            return ExactConst::zero();
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= r;
        }
        out
    }

    /// Exact product; fails with a basis overflow if any pairwise product
    /// leaves the representable space.
    pub fn mul(&self, other: &ExactConst) -> Result<ExactConst, ExactConstError> {
        let mut out = ExactConst::zero();
        for ((a1, d1), c1) in &self.terms {
            for ((a2, d2), c2) in &other.terms {
                let a = a1.checked_add(*a2).ok_or(ExactConstError::BasisOverflow)?;
                if !(PI_POW_MIN..=PI_POW_MAX).contains(&a) {
                    return Err(ExactConstError::BasisOverflow);
                }
                let mut coeff = c1 * c2;
                let d = if d1 == d2 {
                    // sqrt(d)^2 = d folds into the coefficient.
                    coeff *= BigRat::from_integer((*d1).into());
                    1
                } else if *d1 == 1 {
                    *d2
                } else if *d2 == 1 {
                    *d1
                } else {
                    // sqrt(2)*sqrt(3) = sqrt(6) is outside the basis.
                    return Err(ExactConstError::BasisOverflow);
                };
                out.insert_add((a, d), coeff);
            }
        }
        Ok(out)
    }

    /// Exact reciprocal of a single-term value:
    /// `1/(c pi^a sqrt(d)) = (1/(c d)) pi^(-a) sqrt(d)`.
    pub fn inverse_single_term(&self) -> Result<ExactConst, ExactConstError> {
        if self.terms.len() != 1 {
            return Err(ExactConstError::NotSingleTerm);
        }
        let ((a, d), c) = self.terms.iter().next().expect("nonempty");
        let neg_a = -a;
        if !(PI_POW_MIN..=PI_POW_MAX).contains(&neg_a) {
            return Err(ExactConstError::BasisOverflow);
        }
        let coeff = BigRat::one() / (c * BigRat::from_integer((*d).into()));
        Ok(ExactConst::from_term(neg_a, *d, &coeff))
    }

    /// Numeric value at the context precision (accurate to a few ulps;
    /// not directed).
    pub fn to_hp(&self, ctx: &PrecisionCtx) -> HpReal {
        let bits = ctx.bits();
        let pi_val = pi(ctx);
        let one = HpReal::from_int(1, bits);
        let mut acc = HpReal::zero(bits);
        for ((a, d), c) in &self.terms {
            let mut t = HpReal::from_rat_floor(c, bits);
            if *a > 0 {
                t = t.mul_floor(&pi_val.pow_floor(*a as u32));
            } else if *a < 0 {
                t = t.mul_floor(&one.div_floor(&pi_val.pow_floor((-a) as u32)));
            }
            if *d > 1 {
                t = t.mul_floor(&HpReal::from_int(*d as i64, bits).sqrt_floor());
            }
            acc = acc.add(&t);
        }
        acc
    }
}

impl fmt::Display for ExactConst {
    /// Renders terms in descending pi-power then ascending radicand, e.g.
    /// `1/18*pi^2 - 1/6*pi*sqrt(3) + 1/2`; the zero value prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&(i8, u8)> = self.terms.keys().collect();
        keys.sort_by_key(|(a, d)| (std::cmp::Reverse(*a), *d));
        for (i, key) in keys.iter().enumerate() {
            let (a, d) = **key;
            let c = &self.terms[*key];
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || (a == 0 && d == 1) {
                factors.push(mag.to_string());
            }
            match a {
                0 => {}
                1 => factors.push("pi".to_string()),
                _ => factors.push(format!("pi^{a}")),
            }
            if d > 1 {
                factors.push(format!("sqrt({d})"));
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Exact sum of two constants (free-function form of [`ExactConst::add`]).
pub fn exact_add(a: &ExactConst, b: &ExactConst) -> ExactConst {
    a.add(b)
}

/// Exact product (free-function form of [`ExactConst::mul`]).
pub fn exact_mul(a: &ExactConst, b: &ExactConst) -> Result<ExactConst, ExactConstError> {
    a.mul(b)
}

/// Exact equality (free-function form of `==`).
pub fn exact_eq(a: &ExactConst, b: &ExactConst) -> bool {
    a == b
}
