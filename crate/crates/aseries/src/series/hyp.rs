//! Generalized hypergeometric evaluation and the two equivalence checks
//! that restate the first two closed-form families as pFq relations.
//!
//! `pFq(a1..aP; b1..bQ; z) = sum_k (a1)_k ... (aP)_k / ((b1)_k ... (bQ)_k
//! k!) z^k`. Terms are carried as exact rationals; only the running sum
//! is rounded. Truncation is certified by a sup bound on the term ratio:
//! pairing each upper parameter with a lower one gives factors
//! `(k+A)/(k-B)` that decrease in `k`, and the single unpaired upper of a
//! `(Q+1)Fq` is dominated by `max((k+A)/(k+1), 1)`; once that product
//! drops below `rho* = (1+|z|)/2 < 1` the tail is geometric with that
//! ratio.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{EvalReport, SeriesError};
use crate::exactnum::{rat, BigRat};
use crate::hp::{HpReal, PrecisionCtx};

/// Both sides of a hypergeometric identity check.
#[derive(Debug, Clone)]
pub struct HypCheck {
    /// Left-hand side.
    pub lhs: HpReal,
    /// Right-hand side.
    pub rhs: HpReal,
    /// Exact `|lhs - rhs|` of the rounded values.
    pub abs_error: BigRat,
    /// Total terms across every series evaluated.
    pub terms_used: u64,
    /// Whether every truncation carried a certified bound.
    pub certified: bool,
}

/// True when `r` is an integer `<= 0`.
fn is_nonpositive_int(r: &BigRat) -> bool {
    r.is_integer() && !r.is_positive()
}

/// Exact term update `t <- t * prod(a_i + k) / prod(b_j + k) / (k + 1) * z`.
fn next_term(t: &BigRat, upper: &[BigRat], lower: &[BigRat], z: &BigRat, k: u64) -> BigRat {
    let kq = BigRat::from_integer(BigInt::from(k));
    let mut t = t * z;
    for a in upper {
        t *= a + &kq;
    }
    for b in lower {
        t /= b + &kq;
    }
    t / (&kq + BigRat::one())
}

/// Sup over `m >= k` of the term-ratio magnitude, valid once
/// `k > |b_j|` for every lower parameter.
fn ratio_sup(upper: &[BigRat], lower: &[BigRat], z_abs: &BigRat, k: u64) -> BigRat {
    let kq = BigRat::from_integer(BigInt::from(k));
    let paired = upper.len().min(lower.len());
    let mut rho = z_abs.clone();
    for (a, b) in upper.iter().zip(lower.iter()) {
        rho *= (&kq + a.abs()) / (&kq - b.abs());
    }
    for b in &lower[paired..] {
        rho /= &kq - b.abs();
    }
    if upper.len() == lower.len() + 1 {
        let f = (&kq + upper[upper.len() - 1].abs()) / (&kq + BigRat::one());
        if f > BigRat::one() {
            rho *= f;
        }
    } else {
        rho /= &kq + BigRat::one();
    }
    rho
}

/// Iteration cap; the certified stop rule fires far earlier for every
/// admissible argument.
const MAX_TERMS: u64 = 2_000_000;

/// Evaluate `pFq(upper; lower; z)` at `ctx` precision.
///
/// Terminating series (an upper parameter a nonpositive integer) are
/// summed exactly for any `z`; otherwise `|z| < 1` is required and the
/// tail beyond the reported terms is bounded by a certified geometric
/// majorant below `10^-digits`.
///
/// # Errors
/// [`SeriesError::Pole`] when a lower parameter is a nonpositive
/// integer; [`SeriesError::Divergent`] when `upper.len() > lower.len() + 1`,
/// or at `|z| >= 1` with `upper.len() == lower.len() + 1`;
/// [`SeriesError::Domain`] at `|z| >= 1` otherwise.
pub fn pfq(
    upper: &[BigRat],
    lower: &[BigRat],
    z: &BigRat,
    ctx: &PrecisionCtx,
) -> Result<EvalReport, SeriesError> {
    let bits = ctx.bits();
    let digits = ctx.digits();
    if lower.iter().any(is_nonpositive_int) {
        return Err(SeriesError::Pole);
    }
    let exact_report = |value: BigRat, terms: u64| EvalReport {
        value: HpReal::from_rat_floor(&value, bits),
        tail_bound: BigRat::zero(),
        terms_used: terms,
        digits,
        certified: true,
    };
    if z.is_zero() {
        return Ok(exact_report(BigRat::one(), 1));
    }
    if let Some(stop) = upper
        .iter()
        .filter(|a| is_nonpositive_int(a))
        .map(|a| (-a).to_integer().to_u64().expect("pfq: degree too large"))
        .min()
    {
        // Polynomial case: sum the finitely many terms exactly.
        let mut t = BigRat::one();
        let mut acc = BigRat::one();
        for k in 0..stop {
            t = next_term(&t, upper, lower, z, k);
            acc += &t;
        }
        return Ok(exact_report(acc, stop + 1));
    }
    if upper.len() > lower.len() + 1 {
        return Err(SeriesError::Divergent);
    }
    if z.abs() >= BigRat::one() {
        return Err(if upper.len() == lower.len() + 1 {
            SeriesError::Divergent
        } else {
            SeriesError::Domain
        });
    }
    let eps = ctx.epsilon();
    let z_abs = z.abs();
    let rho_star = (BigRat::one() + &z_abs) / rat(2, 1);
    let geom = BigRat::one() - &rho_star;
    let k_min = lower
        .iter()
        .map(|b| b.abs().floor().to_integer().to_u64().unwrap_or(u64::MAX) + 1)
        .max()
        .unwrap_or(1);
    let mut t = BigRat::one();
    let mut acc = HpReal::from_int(1, bits);
    for k in 0..MAX_TERMS {
        let t_next = next_term(&t, upper, lower, z, k);
        if k + 1 >= k_min && ratio_sup(upper, lower, &z_abs, k + 1) <= rho_star {
            let tail_bound = t_next.abs() / &geom;
            if tail_bound < eps {
                return Ok(EvalReport {
                    value: acc,
                    tail_bound,
                    terms_used: k + 1,
                    digits,
                    certified: true,
                });
            }
        }
        acc = acc.add(&HpReal::from_rat_floor(&t_next, bits));
        t = t_next;
    }
    panic!("pfq: certified stop rule failed to fire within {MAX_TERMS} terms");
}

/// Check the hypergeometric restatement of the first family's even
/// closed form: `2F1(1/2, n+1/2; n+3/2; x^2)` against
/// `sqrt(1-x^2) * 2F1(1, n+1; n+3/2; x^2)`.
///
/// # Errors
/// [`SeriesError::Domain`] unless `|x| < 1`; pFq errors propagate.
pub fn check_hyp_88(n: u64, x: &BigRat, ctx: &PrecisionCtx) -> Result<HypCheck, SeriesError> {
    if x.abs() >= BigRat::one() {
        return Err(SeriesError::Domain);
    }
    let bits = ctx.bits();
    let x_sq = x * x;
    let nq = BigRat::from_integer(BigInt::from(n));
    let lhs = pfq(
        &[rat(1, 2), &nq + rat(1, 2)],
        &[&nq + rat(3, 2)],
        &x_sq,
        ctx,
    )?;
    let rhs_f = pfq(
        &[rat(1, 1), &nq + rat(1, 1)],
        &[&nq + rat(3, 2)],
        &x_sq,
        ctx,
    )?;
    let root = HpReal::from_rat_floor(&(BigRat::one() - &x_sq), bits).sqrt_floor();
    let rhs = root.mul_floor(&rhs_f.value);
    let abs_error = (lhs.value.to_exact_rat() - rhs.to_exact_rat()).abs();
    Ok(HypCheck {
        lhs: lhs.value,
        rhs,
        abs_error,
        terms_used: lhs.terms_used + rhs_f.terms_used,
        certified: lhs.certified && rhs_f.certified,
    })
}

/// Check the hypergeometric restatement of the second family's closed
/// form:
/// `(2n-1) 3F2(1,1,n; 3/2,n+1; x) + 3F2(1,n,n; n+1/2,n+1; x)` against
/// `2n * 2F1(1/2,1; 3/2; x/(x-1)) * 2F1(1,n; n+1/2; x)`.
///
/// The Euler-transformed argument `x/(x-1)` lies in `(-1, 0)` only for
/// `x < 1/2`, so arguments in `[1/2, 1)` are refused as unchecked rather
/// than continued analytically.
///
/// # Errors
/// [`SeriesError::Domain`] when `n = 0` or `x` is outside `(0, 1)`;
/// [`SeriesError::Unchecked`] for `x` in `[1/2, 1)`.
pub fn check_hyp_811(n: u64, x: &BigRat, ctx: &PrecisionCtx) -> Result<HypCheck, SeriesError> {
    if n == 0 || !x.is_positive() || *x >= BigRat::one() {
        return Err(SeriesError::Domain);
    }
    if *x >= rat(1, 2) {
        return Err(SeriesError::Unchecked);
    }
    let nq = BigRat::from_integer(BigInt::from(n));
    let ni = i64::try_from(n).expect("check_hyp_811: n too large");
    let one = BigRat::one();
    let f1 = pfq(
        &[one.clone(), one.clone(), nq.clone()],
        &[rat(3, 2), &nq + &one],
        x,
        ctx,
    )?;
    let f2 = pfq(
        &[one.clone(), nq.clone(), nq.clone()],
        &[&nq + rat(1, 2), &nq + &one],
        x,
        ctx,
    )?;
    let lhs = f1.value.mul_int(2 * ni - 1).add(&f2.value);
    let euler_z = x / (x - &one);
    let g1 = pfq(&[rat(1, 2), one.clone()], &[rat(3, 2)], &euler_z, ctx)?;
    let g2 = pfq(&[one.clone(), nq.clone()], &[&nq + rat(1, 2)], x, ctx)?;
    let rhs = g1.value.mul_floor(&g2.value).mul_int(2 * ni);
    let abs_error = (lhs.to_exact_rat() - rhs.to_exact_rat()).abs();
    Ok(HypCheck {
        lhs,
        rhs,
        abs_error,
        terms_used: f1.terms_used + f2.terms_used + g1.terms_used + g2.terms_used,
        certified: f1.certified && f2.certified && g1.certified && g2.certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::pochhammer;
    use crate::hp;
    use crate::series::lhs_series;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn binomial_special_value() {
        // 2F1(a, b; b; z) = (1-z)^(-a): at a = 1/2, z = 1/4 the value is
        // 2/sqrt(3) = 1.154700538379251529018297561003914911...
        let ctx = PrecisionCtx::new(40);
        let r = pfq(&[rat(1, 2), rat(7, 3)], &[rat(7, 3)], &rat(1, 4), &ctx).unwrap();
        assert!(r.certified);
        assert!(r.tail_bound < ctx.epsilon());
        assert_eq!(
            r.value.to_decimal_sci(30),
            "1.15470053837925152901829756100e0"
        );
    }

    #[test]
    fn terminating_series_is_a_polynomial() {
        let ctx = PrecisionCtx::new(25);
        // 1F0(-2;; z) = (1-z)^2 even outside the unit disk.
        let r = pfq(&[rat(-2, 1)], &[], &rat(5, 2), &ctx).unwrap();
        assert!(r.certified);
        assert!(r.tail_bound.is_zero());
        assert_eq!(r.terms_used, 3);
        let err = (r.value.to_exact_rat() - rat(9, 4)).abs();
        assert!(err <= HpReal::ulp(ctx.bits()).to_exact_rat());
        // Cross-check a 2F1 cut off by an upper parameter against a
        // direct Pochhammer sum.
        let mut expected = BigRat::zero();
        for k in 0..=3u64 {
            let num = pochhammer(&rat(-3, 1), k) * pochhammer(&rat(1, 2), k);
            let den = pochhammer(&rat(2, 1), k) * pochhammer(&rat(1, 1), k);
            expected += num / den * rat(2, 3).pow(k as i32);
        }
        let r = pfq(&[rat(-3, 1), rat(1, 2)], &[rat(2, 1)], &rat(2, 3), &ctx).unwrap();
        let err = (r.value.to_exact_rat() - expected).abs();
        assert!(err <= HpReal::ulp(ctx.bits()).to_exact_rat());
    }

    #[test]
    fn zero_argument_is_exactly_one() {
        let ctx = PrecisionCtx::new(15);
        let r = pfq(&[rat(1, 3), rat(4, 5)], &[rat(9, 7)], &rat(0, 1), &ctx).unwrap();
        assert!(r.tail_bound.is_zero());
        assert_eq!(r.value.to_exact_rat(), rat(1, 1));
    }

    #[test]
    fn rejects_poles_and_divergence() {
        let ctx = PrecisionCtx::new(20);
        assert_eq!(
            pfq(&[rat(1, 2)], &[rat(-2, 1)], &rat(1, 3), &ctx).unwrap_err(),
            SeriesError::Pole
        );
        assert_eq!(
            pfq(
                &[rat(1, 1), rat(1, 1), rat(1, 1)],
                &[rat(2, 1)],
                &rat(1, 10),
                &ctx
            )
            .unwrap_err(),
            SeriesError::Divergent
        );
        assert_eq!(
            pfq(&[rat(1, 2), rat(1, 1)], &[rat(3, 2)], &rat(1, 1), &ctx).unwrap_err(),
            SeriesError::Divergent
        );
        assert_eq!(
            pfq(&[rat(1, 2)], &[rat(3, 2), rat(2, 1)], &rat(3, 2), &ctx).unwrap_err(),
            SeriesError::Domain
        );
    }

    #[test]
    fn gauss_series_recovers_arcsine() {
        // 2F1(1/2, 1/2; 3/2; x^2) = asin(x)/x at x = 3/10.
        let ctx = PrecisionCtx::new(45);
        let r = pfq(&[rat(1, 2), rat(1, 2)], &[rat(3, 2)], &rat(9, 100), &ctx).unwrap();
        let x_hp = HpReal::from_rat_floor(&rat(3, 10), ctx.bits());
        let target = hp::asin(&x_hp, &ctx).div_floor(&x_hp);
        let tol = &r.tail_bound
            + r.rounding_slack()
            + HpReal::ulp(ctx.bits()).to_exact_rat() * rat(256, 1);
        assert!((r.value.to_exact_rat() - target.to_exact_rat()).abs() <= tol);
    }

    #[test]
    fn normalized_gauss_series_matches_first_family() {
        // (2n+1)^-1 2F1(1/2, n+1/2; n+3/2; x^2) equals the first family
        // with shift 2n; n = 2, x = 3/10.
        let ctx = PrecisionCtx::new(45);
        let f = pfq(&[rat(1, 2), rat(5, 2)], &[rat(7, 2)], &rat(9, 100), &ctx).unwrap();
        let scaled = f.value.div_int_floor(5);
        let s = lhs_series(1, 4, &rat(3, 10), &ctx).unwrap();
        let tol = &f.tail_bound
            + f.rounding_slack()
            + &s.tail_bound
            + s.rounding_slack()
            + HpReal::ulp(ctx.bits()).to_exact_rat() * rat(64, 1);
        assert!((scaled.to_exact_rat() - s.value.to_exact_rat()).abs() <= tol);
    }

    #[test]
    fn random_instances_are_stable_across_precision() {
        let mut rng = StdRng::seed_from_u64(0x8f_1dea);
        let lo_ctx = PrecisionCtx::new(22);
        let hi_ctx = PrecisionCtx::new(44);
        for _ in 0..40 {
            let param = |rng: &mut StdRng| rat(rng.gen_range(1..=9i64), rng.gen_range(1..=4i64));
            let two_f1 = rng.gen_bool(0.5);
            let (upper, lower) = if two_f1 {
                (
                    vec![param(&mut rng), param(&mut rng)],
                    vec![param(&mut rng)],
                )
            } else {
                (
                    vec![param(&mut rng), param(&mut rng), param(&mut rng)],
                    vec![param(&mut rng), param(&mut rng)],
                )
            };
            let z = rat(rng.gen_range(-90..=90i64), 100);
            let lo = pfq(&upper, &lower, &z, &lo_ctx).unwrap();
            let hi = pfq(&upper, &lower, &z, &hi_ctx).unwrap();
            let tol = &lo.tail_bound + lo.rounding_slack() + &hi.tail_bound + hi.rounding_slack();
            let diff = (lo.value.to_exact_rat() - hi.value.to_exact_rat()).abs();
            assert!(diff <= tol, "upper {upper:?} lower {lower:?} z {z}");
        }
    }

    #[test]
    fn first_family_restatement_holds() {
        let ctx = PrecisionCtx::new(50);
        let tol = rat(1, 10).pow(45);
        for n in 0..=6u64 {
            for x in [rat(1, 10), rat(1, 2), rat(7, 10)] {
                let c = check_hyp_88(n, &x, &ctx).unwrap();
                assert!(c.certified);
                assert!(c.abs_error < tol, "n = {n}, x = {x}");
            }
        }
        // At x = 0 every series is its leading term and the match is exact.
        let c = check_hyp_88(3, &rat(0, 1), &ctx).unwrap();
        assert!(c.abs_error.is_zero());
        assert_eq!(
            check_hyp_88(0, &rat(1, 1), &ctx).unwrap_err(),
            SeriesError::Domain
        );
    }

    #[test]
    fn second_family_restatement_holds() {
        let ctx = PrecisionCtx::new(50);
        let tol = rat(1, 10).pow(45);
        for n in [1u64, 2, 4] {
            for x in [rat(1, 10), rat(2, 5)] {
                let c = check_hyp_811(n, &x, &ctx).unwrap();
                assert!(c.certified);
                assert!(c.abs_error < tol, "n = {n}, x = {x}");
            }
        }
        assert_eq!(
            check_hyp_811(0, &rat(1, 4), &ctx).unwrap_err(),
            SeriesError::Domain
        );
        assert_eq!(
            check_hyp_811(2, &rat(-1, 10), &ctx).unwrap_err(),
            SeriesError::Domain
        );
        assert_eq!(
            check_hyp_811(2, &rat(1, 2), &ctx).unwrap_err(),
            SeriesError::Unchecked
        );
        assert_eq!(
            check_hyp_811(2, &rat(3, 4), &ctx).unwrap_err(),
            SeriesError::Unchecked
        );
    }
}
