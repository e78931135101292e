//! Exact and certified-precision evaluation of central-binomial series
//! built on powers of the arcsine function.
//!
//! The crate revolves around four one-parameter families of series whose
//! coefficients involve the central binomial coefficient `C(2k,k)` together
//! with the harmonic-like sums over odd or even squares. Each family has,
//! for every integer shift `n >= 0`, a closed form made of `arcsin x`,
//! `sqrt(1-x^2)` and polynomials with rational coefficients. The modules
//! divide the work as follows:
//!
//! - [`hp`] — fixed-point big-integer arithmetic with directed rounding,
//!   certified `pi` enclosures via binary splitting, and `arcsin` on `[-1,1]`.
//! - [`exactnum`] — integer/rational combinatorial kernels and [`ExactConst`],
//!   a normal form for numbers `sum c * pi^a * sqrt(d)` that renders and
//!   compares exactly.
//! - [`polyops`] — dense rational polynomials plus the first-order operator
//!   `D q = x q + (x^2 - 1) q'` and its triangular inversion, the engine
//!   behind every closed form here.
//! - [`closedform`] — the integration kits (polynomial weight functions for
//!   the antiderivatives of `theta^p sin^nu(theta) cos(theta)`), assembled
//!   closed-form expressions, and exact evaluation at the four special
//!   points `x = 1, 1/2, sqrt(2)/2, sqrt(3)/2`.
//! - [`quadrature`] — an adaptive-Simpson reference integrator for the same
//!   moments, used as an independent cross-check of the kits.
//! - [`series`] — certified summation of the four families (plus generalized
//!   hypergeometric `pFq`), limit scans that squeeze out `pi^p`, partial-sum
//!   tail identities, and hypergeometric reformulation checks.
//!
//! Every numeric result that claims certainty carries an explicit error
//! budget: series report a rigorous tail bound, `pi` and square roots are
//! bracketed with directed rounding, and symbolic values are exact.

pub mod closedform;
pub mod exactnum;
pub mod hp;
pub mod polyops;
pub mod quadrature;
pub mod series;

pub use closedform::{
    build_kit, corollary_45_consistency, corollary_exact, kit_to_integral_expr, rhs_theorem,
    verify_kit_derivative, ClosedFormExpr, CorollaryError, Kit, KitError, TheoremRhs, XCase,
};
pub use exactnum::{
    binom, binom_ratio_bounds, central_binom, exact_add, exact_eq, exact_mul, gen_binom_half,
    harmonic_even_squares, harmonic_odd_squares, pochhammer, rat, BigRat, ExactConst,
    ExactConstError,
};
pub use hp::{asin, pi, pi_bounds, HpReal, PrecisionCtx};
pub use polyops::{apply_d, check_log_particular, invert_d, PolyError, RatPoly};
pub use quadrature::{integrate_moment, QuadError, QuadResult};
pub use series::{
    check_hyp_811, check_hyp_88, general_transform_check, lhs_series, lhs_series_at_sqrt,
    limit_pi_exact_error, limit_scan_inner, limit_scan_pi, partial_tail_identity_check, pfq,
    rhs_numeric, EvalReport, HypCheck, InnerLimit, InnerRow, PiLimitRow, SeriesError, TailCheck,
    TailIdentity, TransformCheck,
};
