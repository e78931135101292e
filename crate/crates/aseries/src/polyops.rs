//! Dense rational polynomials and the first-order operator behind every
//! closed form in this crate.
//!
//! The operator is `D q = x q + (x^2 - 1) q'`. Applied to a polynomial of
//! degree `m - 1` it yields degree `m`, and [`invert_d`] runs the map
//! backwards: given `p` it finds the unique `(q, lambda)` with
//! `D q + lambda = p`, via a triangular back-substitution from the top
//! coefficient. The scalar defect `lambda` is where the central binomial
//! coefficients enter: `invert_d` of `x^(2l+2)` leaves
//! `lambda = C(2l+2, l+1)/4^(l+1)`, and odd powers invert exactly
//! (`lambda = 0`).
//!
//! [`check_log_particular`] probes the analytic boundary of the inversion:
//! on `x > 1` the function `ln(x + sqrt(x^2-1))/sqrt(x^2-1)` satisfies
//! `D F = 1` exactly, which is checked numerically with a central
//! difference.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::BigRat;
use crate::hp::HpReal;

/// Errors from the numeric boundary check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// The evaluation point must satisfy `x > 1 + step`.
    #[error("x must be > 1")]
    Domain,
    /// The finite-difference step must be positive.
    #[error("step must be positive")]
    Step,
}

/// Dense polynomial with rational coefficients, low degree first.
///
/// Invariant: no trailing zero coefficients (the zero polynomial stores an
/// empty vector), so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRat>,
}

impl RatPoly {
    /// Build from coefficients (constant term first); trailing zeros are
    /// trimmed.
    pub fn new(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly::default()
    }

    pub fn constant(c: BigRat) -> Self {
        RatPoly::new(vec![c])
    }

    /// The monomial `c * x^deg`.
    pub fn monomial(c: BigRat, deg: usize) -> Self {
        let mut coeffs = vec![BigRat::zero(); deg + 1];
        coeffs[deg] = c;
        RatPoly::new(coeffs)
    }

    /// The monomial `x^deg`.
    pub fn x_pow(deg: usize) -> Self {
        Self::monomial(BigRat::one(), deg)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    /// All coefficients, constant term first.
    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    /// Multiply by the scalar `r`.
    pub fn scale(&self, r: &BigRat) -> RatPoly {
        if r.is_zero() {
            return RatPoly::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn mul_xpow(&self, k: usize) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![BigRat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        RatPoly { coeffs }
    }

    /// Formal derivative.
    pub fn derivative(&self) -> RatPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRat::from_integer(BigInt::from(i)))
            .collect();
        RatPoly::new(coeffs)
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![BigRat::zero()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c / BigRat::from_integer(BigInt::from(i + 1))),
        );
        RatPoly { coeffs }
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval_rat(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Fixed-point evaluation by Horner's rule (floor rounding per step;
    /// accurate to a few ulps for |x| <= 1).
    pub fn eval_hp(&self, x: &HpReal) -> HpReal {
        let mut acc = HpReal::zero(x.bits());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_floor(x).add(&HpReal::from_rat_floor(c, x.bits()));
        }
        acc
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        RatPoly::new(coeffs)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        RatPoly::new(coeffs)
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![BigRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPoly::new(coeffs)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        self.scale(&-BigRat::one())
    }
}

impl Add for RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: RatPoly) -> RatPoly {
        &self + &rhs
    }
}

impl Sub for RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: RatPoly) -> RatPoly {
        &self - &rhs
    }
}

impl Mul for RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: RatPoly) -> RatPoly {
        &self * &rhs
    }
}

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

/// The forward operator `D p = x p + (x^2 - 1) p'`.
pub fn apply_d(p: &RatPoly) -> RatPoly {
    let dp = p.derivative();
    &(&p.mul_xpow(1) + &dp.mul_xpow(2)) - &dp
}

/// Invert the operator up to a scalar: the unique `(q, lambda)` with
/// `D q + lambda = p`.
///
/// Writing `q = sum b_j x^j`, the coefficient of `x^i` in `D q` is
/// `i b_(i-1) - (i+1) b_(i+1)`, which solves top-down as
/// `b_(i-1) = (p_i + (i+1) b_(i+1)) / i` for `i = deg(p) .. 1`, leaving
/// `lambda = p_0 + b_1`. For `p` of degree `m >= 1`, `q` has degree
/// `m - 1`; constants invert to `q = 0`, `lambda = p`.
pub fn invert_d(p: &RatPoly) -> (RatPoly, BigRat) {
    let m = match p.degree() {
        None => return (RatPoly::zero(), BigRat::zero()),
        Some(0) => return (RatPoly::zero(), p.coeff(0)),
        Some(m) => m,
    };
    let mut b = vec![BigRat::zero(); m + 2];
    for i in (1..=m).rev() {
        let num = p.coeff(i) + BigRat::from_integer(BigInt::from(i + 1)) * &b[i + 1];
        b[i - 1] = num / BigRat::from_integer(BigInt::from(i));
    }
    let lambda = p.coeff(0) + &b[1];
    b.truncate(m);
    (RatPoly::new(b), lambda)
}

/// Residual of the operator identity `D F = 1` for the log-type particular
/// solution `F(t) = ln(t + sqrt(t^2 - 1)) / sqrt(t^2 - 1)` on `t > 1`,
/// with `F'` approximated by a central difference of the given step.
///
/// Returns `|x F(x) + (x^2 - 1) F'(x) - 1|`, which is `O(step^2)` for
/// valid inputs (e.g. below `1e-8` at `(2, 1e-5)` and below `1e-6` at
/// `(1.5, 1e-4)`).
// The negated comparisons reject NaN arguments along with out-of-range ones.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn check_log_particular(x: f64, step: f64) -> Result<f64, PolyError> {
    if !(step > 0.0) {
        return Err(PolyError::Step);
    }
    if !(x > 1.0 + step) {
        return Err(PolyError::Domain);
    }
    let f = |t: f64| (t + (t * t - 1.0).sqrt()).ln() / (t * t - 1.0).sqrt();
    let fp = (f(x + step) - f(x - step)) / (2.0 * step);
    Ok((x * f(x) + (x * x - 1.0) * fp - 1.0).abs())
}
