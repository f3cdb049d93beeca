//! Determinant-derived secular functions with proven sign information and
//! bracketed first-zero location.
//!
//! Every complex-pair regime, in every dimension and for both problems,
//! reduces to one universal transcendental function: with `gap = l1^2 - l2^2`
//! (the difference of squared separations) and `s = sqrt(gap R^2 + theta^2)`,
//!
//! `psi(theta) = (1/R^2) ((1 + e^{2s}) cos theta - 2 e^{s}) theta s
//!              - (gap/2) (e^{2s} - 1) sin theta`.
//!
//! Problem I fixes `gap = 2(m^2+n^2)` (or `2(1+k^2)`, `k = n+(d-2)/2`, in
//! dimension d); Problem II parameterizes `gap` through `mu(theta)`. The
//! exponential `e^{2s}` reaches `e^{2 sqrt(gap) R}` (10^4 and beyond in the
//! acceptance grids), so all evaluations divide through by it; this keeps
//! magnitudes O(1) and preserves zeros exactly.
//!
//! `psi(pi) < 0 < psi(2 pi)` always; `psi < 0` on `(0, pi]` once
//! `R >= 5/sqrt(gap)`, which brackets the first zero in `(pi, 2 pi)`.
//! Root finding is bracketed bisection throughout (the theorems prove sign
//! changes, not convexity), to relative tolerance 1e-13 in `theta`.
//!
//! The Problem II `n = 0` sub-cases (`m > 1`) get bespoke determinants: the
//! complex-quartet window `mu in (0, 4(m^2-1))` with branch equalities
//! `alpha sin(beta R) = -+ beta sinh(alpha R)`, the two-imaginary-pairs
//! window `(4(m^2-1), m^4)` (for `m > sqrt 2`), and the complex-pair tail
//! `mu > m^4` parameterized by `mu` directly.

use crate::characteristic::{roots_problem2_d2, RootRegime};
use crate::error::{Error, Result};
use crate::scalar::{cst, Real};

/// Relative bisection tolerance in `theta` (double-precision limit with margin).
pub const BISECT_REL_TOL: f64 = 1e-13;

/// Which determinant family a secular evaluation belongs to.
///
/// The real-distinct and repeated families are proven zero-free (their
/// determinants are sign-definite; see [`det_case1`], [`det_case2`] and
/// [`p2_n0_boundary_determinant`]) and exist here for the property suite;
/// eigenvalues live in the remaining families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SecularKind {
    /// Problem I complex pair: the universal `psi` bracket.
    P1Complex,
    /// Problem I four real roots (zero-free).
    P1Real,
    /// Problem I repeated root at the shift (zero-free).
    P1Repeated,
    /// Problem II complex pair, `theta`-parameterized `psi`.
    P2Complex,
    /// Problem II `n = 0` quartet window (branch equalities).
    P2N0Quartet,
    /// Problem II `n = 0` two-imaginary-pairs window.
    P2N0ImaginaryPairs,
    /// Problem II `n = 0` boundary `mu = 4(m^2-1)` (zero-free, three
    /// sub-cases by `m` against `sqrt 2`).
    P2N0Repeated,
    /// The exact `d = 4`, `n = 0` case `f(theta) = 2(1-cos) - theta sin`.
    D4N0,
}

/// Secular family serving a Problem II parameter point in `d = 2`.
pub fn classify_problem2_d2<F: Real>(m: F, n: i32, mu: F) -> Result<SecularKind> {
    use crate::characteristic::RootRegime::*;
    Ok(match roots_problem2_d2(m, n, mu)?.regime {
        ComplexPair => SecularKind::P2Complex,
        ComplexQuartet => SecularKind::P2N0Quartet,
        ImaginaryPairs => SecularKind::P2N0ImaginaryPairs,
        Repeated | RepeatedImagPair | Quadruple | RepeatedReal | RepeatedImaginary => {
            SecularKind::P2N0Repeated
        }
        RealDistinct => SecularKind::P1Real,
    })
}

/// Conformal class above which the `(pi, 2 pi)` bracket is proven:
/// `5 / sqrt(gap)`.
pub fn proven_bracket_bound<F: Real>(gap: F) -> F {
    cst::<F>(5.0) / gap.sqrt()
}

/// Stabilized universal secular function (divided by `e^{2s}`).
pub fn psi_gap<F: Real>(theta: F, gap: F, big_r: F) -> F {
    let s = (gap * big_r * big_r + theta * theta).sqrt();
    let em = (-s).exp();
    let em2 = em * em;
    (F::one() / (big_r * big_r)) * ((em2 + F::one()) * theta.cos() - cst::<F>(2.0) * em) * theta * s
        - cst::<F>(0.5) * gap * (F::one() - em2) * theta.sin()
}

/// Problem I secular function `psi` for mode `(m, n)` in `d = 2`, stabilized.
pub fn psi_problem1<F: Real>(theta: F, m: F, n: i32, big_r: F) -> F {
    let n2 = cst::<F>(f64::from(n) * f64::from(n));
    psi_gap(theta, cst::<F>(2.0) * (m * m + n2), big_r)
}

/// Unstabilized `psi`; overflows for large `gap R`. Kept for the
/// stabilization cross-check.
pub fn psi_problem1_naive<F: Real>(theta: F, m: F, n: i32, big_r: F) -> F {
    let n2 = cst::<F>(f64::from(n) * f64::from(n));
    let gap = cst::<F>(2.0) * (m * m + n2);
    let c2 = m * m + n2;
    let b2 = F::one() / (big_r * big_r);
    let s = (gap * big_r * big_r + theta * theta).sqrt();
    let e = s.exp();
    b2 * ((F::one() + e * e) * theta.cos() - cst::<F>(2.0) * e) * theta * s
        - c2 * (e * e - F::one()) * theta.sin()
}

/// Bracketed bisection on `[lo, hi]` with `f(lo) < 0 < f(hi)`.
pub(crate) fn bisect<F: Real>(f: impl Fn(F) -> F, mut lo: F, mut hi: F) -> F {
    let tol = cst::<F>(BISECT_REL_TOL);
    for _ in 0..200 {
        if hi - lo <= tol * hi.abs() {
            break;
        }
        let mid = cst::<F>(0.5) * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < F::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    cst::<F>(0.5) * (lo + hi)
}

/// Scan `[lo, hi]` with `n` samples, bisecting every sign change.
pub(crate) fn scan_zeros<F: Real>(f: impl Fn(F) -> F, lo: F, hi: F, n: usize) -> Vec<F> {
    let mut zeros = Vec::new();
    let step = (hi - lo) / cst::<F>(n as f64);
    let mut x0 = lo;
    let mut f0 = f(x0);
    for i in 1..=n {
        let x1 = lo + step * cst::<F>(i as f64);
        let f1 = f(x1);
        if f0 == F::zero() {
            zeros.push(x0);
        } else if f0 * f1 < F::zero() {
            let z = if f0 < F::zero() {
                bisect(&f, x0, x1)
            } else {
                bisect(|x| -f(x), x0, x1)
            };
            zeros.push(z);
        }
        x0 = x1;
        f0 = f1;
    }
    if f0 == F::zero() {
        zeros.push(x0);
    }
    zeros
}

/// Location of a secular first zero, with the proven-bracket flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstZero<F> {
    pub theta: F,
    pub proven: bool,
}

fn first_zero_gap<F: Real>(gap: F, big_r: F, force: bool) -> Result<FirstZero<F>> {
    let pi = F::PI();
    let proven = big_r >= proven_bracket_bound(gap);
    if !proven && !force {
        return Err(Error::BelowProvenBracket {
            r: big_r.to_f64().unwrap_or(f64::NAN),
            required: proven_bracket_bound(gap).to_f64().unwrap_or(f64::NAN),
        });
    }
    let f = |t: F| psi_gap(t, gap, big_r);
    if !proven {
        // below the proven bracket: scan (0, 2 pi] for the first sign change
        let zs = scan_zeros(f, cst::<F>(1e-9), cst::<F>(2.0) * pi, 4000);
        return zs
            .first()
            .map(|&theta| FirstZero {
                theta,
                proven: false,
            })
            .ok_or(Error::NoBracket {
                lo: 0.0,
                hi: 2.0 * std::f64::consts::PI,
            });
    }
    debug_assert!(f(pi) < F::zero() && f(cst::<F>(2.0) * pi) > F::zero());
    Ok(FirstZero {
        theta: bisect(f, pi, cst::<F>(2.0) * pi),
        proven: true,
    })
}

/// First strictly positive zero of `psi` for Problem I, `d = 2`.
///
/// Proven to lie in `(pi, 2 pi)` when `R >= 5/sqrt(2m^2+2n^2)`; below that
/// bound the call fails unless `force`, in which case `(0, 2 pi]` is scanned
/// and the result flagged unproven.
pub fn first_zero_problem1<F: Real>(m: F, n: i32, big_r: F, force: bool) -> Result<FirstZero<F>> {
    let n2 = cst::<F>(f64::from(n) * f64::from(n));
    first_zero_gap(cst::<F>(2.0) * (m * m + n2), big_r, force)
}

/// Same bracket machinery for the general-dimension Problem I
/// (`gap = 2(1 + k^2)`, `k = n + (d-2)/2`).
pub fn first_zero_problem1_gen<F: Real>(
    d: u32,
    n: u32,
    big_r: F,
    force: bool,
) -> Result<FirstZero<F>> {
    let k = cst::<F>(f64::from(n) + (f64::from(d) - 2.0) / 2.0);
    first_zero_gap(cst::<F>(2.0) * (F::one() + k * k), big_r, force)
}

/// All zeros of `psi` in `(0, 2 k_max pi]`, found by adaptive scanning
/// (one zero per sign-alternating `(k pi, (k+1) pi)` interval is proven, but
/// not assumed for `k >= 2`).
pub fn zeros_problem1<F: Real>(m: F, n: i32, big_r: F, k_max: u32) -> Result<Vec<F>> {
    if k_max == 0 {
        return Ok(Vec::new());
    }
    let n2 = cst::<F>(f64::from(n) * f64::from(n));
    let gap = cst::<F>(2.0) * (m * m + n2);
    if big_r < proven_bracket_bound(gap) {
        return Err(Error::BelowProvenBracket {
            r: big_r.to_f64().unwrap_or(f64::NAN),
            required: proven_bracket_bound(gap).to_f64().unwrap_or(f64::NAN),
        });
    }
    let hi = cst::<F>(2.0 * f64::from(k_max)) * F::PI();
    // zeros cluster within ~1/R of the multiples of pi at large conformal
    // class, so the scan density scales with R
    let per_interval = 400.max((12.0 * big_r.to_f64().unwrap_or(0.0)) as usize);
    let samples = per_interval * (2 * k_max as usize);
    Ok(scan_zeros(
        |t| psi_gap(t, gap, big_r),
        cst::<F>(1e-9),
        hi,
        samples,
    ))
}

/// Eigenvalue recovery `lambda = ((m^2+n^2) + theta^2/R^2)^2 - 4 m^2 n^2`.
pub fn lambda_from_theta_d2<F: Real>(theta: F, m: F, n: i32, big_r: F) -> F {
    let n2 = cst::<F>(f64::from(n) * f64::from(n));
    let t = m * m + n2 + theta * theta / (big_r * big_r);
    t * t - cst::<F>(4.0) * m * m * n2
}

/// Eigenvalue recovery in dimension d:
/// `lambda = ((k-1)^2 + theta^2/R^2)((k+1)^2 + theta^2/R^2)`, `k = n+(d-2)/2`.
pub fn lambda_from_theta_gen<F: Real>(theta: F, d: u32, n: u32, big_r: F) -> F {
    let k = cst::<F>(f64::from(n) + (f64::from(d) - 2.0) / 2.0);
    let t2 = theta * theta / (big_r * big_r);
    let a = k - F::one();
    let b = k + F::one();
    (a * a + t2) * (b * b + t2)
}

/// Real-distinct-regime determinant factor
/// `f(x) = (l1+l2)^2 (x^{2 l1} + x^{2 l2}) - (l1-l2)^2 (x^{2(l1+l2)} + 1)
///         - 8 l1 l2 x^{l1+l2}`,
/// negative for all `x > 1` (no eigenvalues in that regime). Evaluated
/// stabilized (divided by `x^{2(l1+l2)}`).
pub fn det_case1<F: Real>(x: F, l1: F, l2: F) -> Result<F> {
    if !(l1 > l2 && l2 > F::zero()) {
        return Err(Error::InvalidParameter("require l1 > l2 > 0".into()));
    }
    if x < F::one() {
        return Err(Error::InvalidParameter("require x >= 1".into()));
    }
    let lx = x.ln();
    let sp = l1 + l2;
    let sm = l1 - l2;
    let e = |p: F| (p * lx).exp(); // p <= 0 here
    Ok(sp * sp * (e(-cst::<F>(2.0) * l2) + e(-cst::<F>(2.0) * l1))
        - sm * sm * (F::one() + e(-cst::<F>(2.0) * sp))
        - cst::<F>(8.0) * l1 * l2 * e(-sp))
}

/// Repeated-regime determinant factor
/// `f(x) = 2((1+x)^alpha - 1) - alpha ((1+x)^alpha + 1) log(1+x)`,
/// negative for all `x > 0`, `alpha >= sqrt 2`. Stabilized by `(1+x)^alpha`.
pub fn det_case2<F: Real>(x: F, alpha: F) -> Result<F> {
    if alpha < cst::<F>(2.0).sqrt() {
        return Err(Error::InvalidParameter("require alpha >= sqrt 2".into()));
    }
    if x < F::zero() {
        return Err(Error::InvalidParameter("require x >= 0".into()));
    }
    let lg = x.ln_1p();
    let em = (-alpha * lg).exp(); // (1+x)^{-alpha}
    Ok(cst::<F>(2.0) * (F::one() - em) - alpha * (F::one() + em) * lg)
}

/// `mu(theta)` inversion for Problem II, `d = 2`:
/// with `T = 2(theta^2/R^2 + m^2 + n^2)`,
/// `mu = (T^2 - 16 m^2 n^2) / (2 (T - 2 m^2 + 2))`.
pub fn mu_from_theta_d2<F: Real>(theta: F, m: F, n: i32, big_r: F) -> F {
    let n2 = cst::<F>(f64::from(n) * f64::from(n));
    let t = cst::<F>(2.0) * (theta * theta / (big_r * big_r) + m * m + n2);
    (t * t - cst::<F>(16.0) * m * m * n2)
        / (cst::<F>(2.0) * (t - cst::<F>(2.0) * m * m + cst::<F>(2.0)))
}

/// `mu(theta)` inversion for Problem II in dimension d:
/// with `L = n(n+d-2)`, `G = (d-2)^2/4 + 1 + L`, `U = 2 theta^2/R^2 + 2G`,
/// `mu = (U^2 - 4(d-2)^2 - 16 L) / (2 (U - 2(d-2)))`.
pub fn mu_from_theta_gen<F: Real>(theta: F, d: u32, n: u32, big_r: F) -> F {
    let df = cst::<F>(f64::from(d));
    let l = cst::<F>(f64::from(n) * f64::from(n + d - 2));
    let dm2 = df - cst::<F>(2.0);
    let g = dm2 * dm2 / cst::<F>(4.0) + F::one() + l;
    let u = cst::<F>(2.0) * theta * theta / (big_r * big_r) + cst::<F>(2.0) * g;
    (u * u - cst::<F>(4.0) * dm2 * dm2 - cst::<F>(16.0) * l)
        / (cst::<F>(2.0) * (u - cst::<F>(2.0) * dm2))
}

fn secular_p2_at<F: Real>(theta: F, gap: F, inv_ok: F, big_r: F) -> Result<F> {
    if gap <= F::zero() {
        return Err(Error::RegimeExit(format!(
            "gap = {gap} <= 0 at theta = {theta}"
        )));
    }
    if inv_ok < F::zero() {
        return Err(Error::RegimeExit(format!(
            "inner surd negative at theta = {theta}"
        )));
    }
    Ok(psi_gap(theta, gap, big_r))
}

/// Problem II secular function in `theta` (`d = 2`): `psi` evaluated with
/// `gap = 2(m^2+n^2) - mu(theta)`. Errors flag a regime exit (caller shrinks
/// the bracket or hands off to the `n = 0` machinery).
pub fn secular_problem2_d2<F: Real>(theta: F, m: F, n: i32, big_r: F) -> Result<F> {
    let n2 = cst::<F>(f64::from(n) * f64::from(n));
    let mu = mu_from_theta_d2(theta, m, n, big_r);
    let t = cst::<F>(2.0) * (theta * theta / (big_r * big_r) + m * m + n2);
    secular_p2_at(theta, cst::<F>(2.0) * (m * m + n2) - mu, t - mu, big_r)
}

/// Problem II secular function in `theta`, dimension `d >= 3`.
pub fn secular_problem2_gen<F: Real>(theta: F, d: u32, n: u32, big_r: F) -> Result<F> {
    let df = cst::<F>(f64::from(d));
    let l = cst::<F>(f64::from(n) * f64::from(n + d - 2));
    let dm2 = df - cst::<F>(2.0);
    let g = dm2 * dm2 / cst::<F>(4.0) + F::one() + l;
    let mu = mu_from_theta_gen(theta, d, n, big_r);
    let u = cst::<F>(2.0) * theta * theta / (big_r * big_r) + cst::<F>(2.0) * g;
    secular_p2_at(theta, cst::<F>(2.0) * g - mu, u - mu, big_r)
}

fn first_zero_p2<F: Real>(
    f: impl Fn(F) -> Result<F>,
    gap_at: impl Fn(F) -> F,
    big_r: F,
    force: bool,
) -> Result<FirstZero<F>> {
    let pi = F::PI();
    let two_pi = cst::<F>(2.0) * pi;
    // regime must hold across the bracket; gap is decreasing in theta
    let gap_hi = gap_at(two_pi);
    if gap_hi <= F::zero() {
        return Err(Error::RegimeExit(
            "mu(2 pi) leaves the complex-pair regime".into(),
        ));
    }
    let proven = big_r >= proven_bracket_bound(gap_hi);
    if !proven && !force {
        return Err(Error::BelowProvenBracket {
            r: big_r.to_f64().unwrap_or(f64::NAN),
            required: proven_bracket_bound(gap_hi).to_f64().unwrap_or(f64::NAN),
        });
    }
    let g = |t: F| f(t).unwrap_or(F::nan());
    if !proven {
        let zs = scan_zeros(g, cst::<F>(1e-9), two_pi, 4000);
        return zs
            .first()
            .map(|&theta| FirstZero {
                theta,
                proven: false,
            })
            .ok_or(Error::NoBracket {
                lo: 0.0,
                hi: 2.0 * std::f64::consts::PI,
            });
    }
    let theta = bisect(g, pi, two_pi);
    // proven flag re-checked at the zero itself (gap depends on theta)
    let proven = big_r >= proven_bracket_bound(gap_at(theta));
    Ok(FirstZero { theta, proven })
}

/// First zero of the Problem II secular function, `d = 2`; returns
/// `(zero, mu)`.
pub fn first_zero_problem2_d2<F: Real>(
    m: F,
    n: i32,
    big_r: F,
    force: bool,
) -> Result<(FirstZero<F>, F)> {
    let n2 = cst::<F>(f64::from(n) * f64::from(n));
    let fz = first_zero_p2(
        |t| secular_problem2_d2(t, m, n, big_r),
        |t| cst::<F>(2.0) * (m * m + n2) - mu_from_theta_d2(t, m, n, big_r),
        big_r,
        force,
    )?;
    let mu = mu_from_theta_d2(fz.theta, m, n, big_r);
    Ok((fz, mu))
}

/// First zero of the Problem II secular function in dimension `d >= 3`;
/// `(d, n) = (4, 0)` is the exact case and rejected here.
pub fn first_zero_problem2_gen<F: Real>(
    d: u32,
    n: u32,
    big_r: F,
    force: bool,
) -> Result<(FirstZero<F>, F)> {
    if d == 4 && n == 0 {
        return Err(Error::InvalidParameter(
            "d = 4, n = 0 is the exact case".into(),
        ));
    }
    let df = cst::<F>(f64::from(d));
    let l = cst::<F>(f64::from(n) * f64::from(n + d - 2));
    let dm2 = df - cst::<F>(2.0);
    let g = dm2 * dm2 / cst::<F>(4.0) + F::one() + l;
    let fz = first_zero_p2(
        |t| secular_problem2_gen(t, d, n, big_r),
        |t| cst::<F>(2.0) * g - mu_from_theta_gen(t, d, n, big_r),
        big_r,
        force,
    )?;
    let mu = mu_from_theta_gen(fz.theta, d, n, big_r);
    Ok((fz, mu))
}

// ---------------------------------------------------------------------------
// Problem II, d = 2, n = 0, m > 1: the determinant lives in three regimes.
// ---------------------------------------------------------------------------

/// Which determinant branch produced an `n = 0` eigenvalue candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum N0Branch {
    /// Quartet window, equality `alpha sin(beta R) = beta sinh(alpha R)`.
    FirstEquality,
    /// Quartet window, equality `alpha sin(beta R) = -beta sinh(alpha R)`.
    SecondEquality,
    /// Two-imaginary-pairs window `(4(m^2-1), m^4)`, `m > sqrt 2`.
    ImaginaryPairs,
    /// Complex-pair tail `mu > m^4`.
    ComplexPair,
}

/// First `n = 0` eigenvalue with its regime of origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct N0Solution<F> {
    pub mu: F,
    pub branch: N0Branch,
}

fn quartet_alpha_beta<F: Real>(m: F, mu: F) -> (F, F) {
    let m4 = m * m * m * m;
    let s = (m4 - mu).max(F::zero()).sqrt();
    let half = cst::<F>(0.5);
    let alpha = half
        * (cst::<F>(2.0) * s + cst::<F>(2.0) * m * m - mu)
            .max(F::zero())
            .sqrt();
    let beta = half
        * (cst::<F>(2.0) * s - cst::<F>(2.0) * m * m + mu)
            .max(F::zero())
            .sqrt();
    (alpha, beta)
}

/// Residual of one `n = 0` determinant branch at `mu` (stabilized).
///
/// Quartet branches: `2 alpha e^{-alpha R} sin(beta R) -+ beta (1 - e^{-2 alpha R})`
/// (the determinant factors as their product up to nonvanishing terms).
/// `ImaginaryPairs`: `(l1+l2)^2 cos((l2-l1)R) - (l2-l1)^2 cos((l1+l2)R) - 4 l1 l2`.
/// `ComplexPair`: the universal `psi`-type function in `mu`.
pub fn p2_n0_branch_residual<F: Real>(m: F, big_r: F, mu: F, branch: N0Branch) -> Result<F> {
    let window_top = cst::<F>(4.0) * (m * m - F::one());
    let m4 = m * m * m * m;
    match branch {
        N0Branch::FirstEquality | N0Branch::SecondEquality => {
            if mu <= F::zero() || mu >= window_top {
                return Err(Error::RegimeExit("mu outside quartet window".into()));
            }
            let (alpha, beta) = quartet_alpha_beta(m, mu);
            let e = (-alpha * big_r).exp();
            let osc = cst::<F>(2.0) * alpha * e * (beta * big_r).sin();
            let hyp = beta * (F::one() - e * e);
            Ok(match branch {
                N0Branch::FirstEquality => osc - hyp,
                _ => osc + hyp,
            })
        }
        N0Branch::ImaginaryPairs => {
            let rq = roots_problem2_d2(m, 0, mu)?;
            if rq.regime != RootRegime::ImaginaryPairs {
                return Err(Error::RegimeExit(format!(
                    "mu = {mu} not in the imaginary-pairs window"
                )));
            }
            let (l1, l2) = (rq.l1, rq.l2);
            let sp = l1 + l2;
            let sm = l2 - l1;
            Ok(sp * sp * (sm * big_r).cos()
                - sm * sm * (sp * big_r).cos()
                - cst::<F>(4.0) * l1 * l2)
        }
        N0Branch::ComplexPair => {
            if mu <= m4 {
                return Err(Error::RegimeExit("mu below complex-pair threshold".into()));
            }
            let rq = roots_problem2_d2(m, 0, mu)?;
            let (l1, l2) = (rq.l1, rq.l2);
            let e = (-l1 * big_r).exp();
            Ok(cst::<F>(2.0)
                * ((F::one() + e * e) * (l2 * big_r).cos() - cst::<F>(2.0) * e)
                * l1
                * l2
                - (l1 * l1 - l2 * l2) * (F::one() - e * e) * (l2 * big_r).sin())
        }
    }
}

/// Boundary determinant at `mu = 4(m^2-1)`, divided by the positive factor
/// `(ab)^2` and stabilized; strictly negative for every annulus:
/// `m = sqrt 2` (quadruple root) gives `-R^4`; double real pairs
/// (`m < sqrt 2`) give `4 q^2 R^2 e^{-2qR} - (1 - e^{-2qR})^2` with
/// `q = sqrt(2 - m^2)`; double imaginary pairs (`m > sqrt 2`) give
/// `-4 (q^2 R^2 - sin^2(qR))`, `q = sqrt(m^2 - 2)`.
pub fn p2_n0_boundary_determinant<F: Real>(m: F, a: F, b: F) -> F {
    let r = (b / a).ln();
    let two = cst::<F>(2.0);
    let diff = m * m - two;
    // m = sqrt 2 is not representable exactly; treat the guard band as the
    // quadruple-root sub-case
    if diff.abs() < cst::<F>(1e-9) {
        return -(r * r * r * r);
    }
    let q = diff.abs().sqrt();
    if diff < F::zero() {
        // det/(ab)^2 = 4 q^2 R^2 - 4 sinh^2(qR), scaled by e^{-2qR}
        let em = (-two * q * r).exp();
        cst::<F>(4.0) * q * q * r * r * em - (F::one() - em) * (F::one() - em)
    } else {
        let s = (q * r).sin();
        -cst::<F>(4.0) * (q * q * r * r - s * s)
    }
}

/// First eigenvalue of the Problem II `n = 0` mode for `m > 1`, scanning the
/// quartet window, the imaginary-pairs window, and the complex-pair tail.
pub fn first_eigen_p2_d2_n0<F: Real>(m: F, big_r: F) -> Result<N0Solution<F>> {
    if m <= F::one() {
        return Err(Error::InvalidParameter(
            "n = 0 handler requires m > 1 (use the theta path for m = 1)".into(),
        ));
    }
    let window_top = cst::<F>(4.0) * (m * m - F::one());
    let m4 = m * m * m * m;
    let mut best: Option<N0Solution<F>> = None;
    let consider = |mu: F, branch: N0Branch, best: &mut Option<N0Solution<F>>| {
        if best.is_none_or(|b| mu < b.mu) {
            *best = Some(N0Solution { mu, branch });
        }
    };

    // quartet window
    let samples = 4000.max((big_r.to_f64().unwrap_or(10.0) * 200.0) as usize);
    for branch in [N0Branch::FirstEquality, N0Branch::SecondEquality] {
        let f = |mu: F| p2_n0_branch_residual(m, big_r, mu, branch).unwrap_or(F::nan());
        let lo = window_top * cst::<F>(1e-9);
        let hi = window_top * (F::one() - cst::<F>(1e-12));
        if let Some(&z) = scan_zeros(f, lo, hi, samples).first() {
            consider(z, branch, &mut best);
        }
    }

    // imaginary-pairs window, parameterized by s = sqrt(mu - 4(m^2-1)) to
    // resolve the square-root oscillation rate at the left edge
    if m * m > cst::<F>(2.0) {
        let s_max = (m4 - window_top).sqrt();
        let f = |s: F| {
            p2_n0_branch_residual(m, big_r, window_top + s * s, N0Branch::ImaginaryPairs)
                .unwrap_or(F::nan())
        };
        let zs = scan_zeros(
            f,
            s_max * cst::<F>(1e-9),
            s_max * (F::one() - cst::<F>(1e-12)),
            samples,
        );
        if let Some(&z) = zs.first() {
            consider(window_top + z * z, N0Branch::ImaginaryPairs, &mut best);
        }
    }

    // complex-pair tail: only needed if nothing was found below it
    if best.is_none() {
        let f =
            |mu: F| p2_n0_branch_residual(m, big_r, mu, N0Branch::ComplexPair).unwrap_or(F::nan());
        let mut span = cst::<F>(60.0).max(cst::<F>(1000.0) / (big_r * big_r));
        for _ in 0..8 {
            let lo = m4 * (F::one() + cst::<F>(1e-9));
            let zs = scan_zeros(f, lo, m4 + span, samples);
            if let Some(&z) = zs.first() {
                consider(z, N0Branch::ComplexPair, &mut best);
                break;
            }
            span *= cst::<F>(4.0);
        }
    }

    best.ok_or(Error::NoBracket {
        lo: 0.0,
        hi: f64::INFINITY,
    })
}

/// `d = 4`, `n = 0` Problem II secular function
/// `f(theta) = 2(1 - cos theta) - theta sin theta`; positive on `(0, 2 pi)`
/// with first nontrivial zero exactly `2 pi`.
pub fn secular_d4_n0<F: Real>(theta: F) -> F {
    cst::<F>(2.0) * (F::one() - theta.cos()) - theta * theta.sin()
}

/// First nontrivial zero of [`secular_d4_n0`]: exactly `2 pi` (analytic).
pub fn first_zero_d4_n0<F: Real>() -> F {
    cst::<F>(2.0) * F::PI()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn psi_endpoint_signs_and_formulas() {
        for (m, n, r) in [(1.0, 0, 10.0), (1.0, 1, 100.0), (3.0, 4, 30.0)] {
            let gap = 2.0 * (m * m + f64::from(n * n));
            let a2 = gap * r * r;
            // psi(pi) = -b^2 (e^s + 1)^2 pi s (stabilized: -(1/R^2)(1+e^{-s})^2 pi s)
            let s = (a2 + PI * PI).sqrt();
            let want = -(1.0 / (r * r)) * (1.0 + (-s).exp()).powi(2) * PI * s;
            let got = psi_problem1(PI, m, n, r);
            assert!((got - want).abs() <= 1e-12 * want.abs());
            // psi(2 pi) = + (1/R^2) (1 - e^{-s})^2 2 pi s
            let s2 = (a2 + 4.0 * PI * PI).sqrt();
            let want2 = (1.0 / (r * r)) * (1.0 - (-s2).exp()).powi(2) * 2.0 * PI * s2;
            let got2 = psi_problem1(2.0 * PI, m, n, r);
            assert!((got2 - want2).abs() <= 1e-12 * want2.abs());
        }
    }

    #[test]
    fn stabilized_matches_naive_where_finite() {
        // naive psi stays finite only for small gap*R
        let (m, n, r) = (1.0, 0, 2.0);
        for i in 1..60 {
            let t = 0.1 * f64::from(i);
            let naive = psi_problem1_naive(t, m, n, r);
            let s = (2.0 * r * r + t * t).sqrt();
            let scaled = naive * (-2.0 * s).exp();
            let stab = psi_problem1(t, m, n, r);
            assert!(
                (scaled - stab).abs() <= 1e-14 * stab.abs().max(1e-300) + 1e-300,
                "mismatch at theta={t}: {scaled} vs {stab}"
            );
        }
    }

    #[test]
    fn psi_negative_on_zero_pi_above_bound() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let m: f64 = rng.gen_range(1.0..5.0);
            let n: i32 = rng.gen_range(0..5);
            let gap = 2.0 * (m * m + f64::from(n * n));
            let rmin = 5.0 / gap.sqrt();
            let r = rmin * rng.gen_range(1.0..20.0);
            for i in 1..=1000 {
                let t = PI * f64::from(i) / 1000.0;
                assert!(
                    psi_problem1(t, m, n, r) < 0.0,
                    "psi >= 0 at theta={t}, m={m}, n={n}, R={r}"
                );
            }
        }
    }

    #[test]
    fn first_zero_frozen_values() {
        // frozen from 40-digit bisection
        let fz = first_zero_problem1(1.0f64, 0, 10.0, false).unwrap();
        assert!(fz.proven);
        assert!((fz.theta - 3.628808193531705).abs() < 1e-11);
        let fz = first_zero_problem1(1.0f64, 1, 100.0, false).unwrap();
        assert!((fz.theta - 3.173319190324992).abs() < 1e-11);
        let lam = lambda_from_theta_d2(fz.theta, 1.0, 1, 100.0);
        assert!((lam - 4.028_995_913_347_26e-3).abs() < 1e-13);
    }

    #[test]
    fn first_zero_bisection_quality() {
        for (m, n, r) in [(1.0, 0, 10.0), (2.0, 3, 25.0), (1.0, 1, 200.0)] {
            let fz = first_zero_problem1(m, n, r, false).unwrap();
            assert!(fz.theta > PI && fz.theta < 2.0 * PI);
            let scale = psi_problem1(PI, m, n, r)
                .abs()
                .max(psi_problem1(2.0 * PI, m, n, r).abs());
            assert!(psi_problem1(fz.theta, m, n, r).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn below_bracket_requires_force() {
        // m=1, n=0: bound 5/sqrt 2 = 3.53; R=2 below it
        assert!(matches!(
            first_zero_problem1(1.0, 0, 2.0, false),
            Err(crate::error::Error::BelowProvenBracket { .. })
        ));
        let fz = first_zero_problem1(1.0, 0, 2.0, true).unwrap();
        assert!(!fz.proven && fz.theta > 0.0);
    }

    #[test]
    fn spectrum_scan() {
        let (m, n, r) = (1.0f64, 0, 10.0);
        let zs = zeros_problem1(m, n, r, 3).unwrap();
        assert!(zs.len() >= 3);
        let fz = first_zero_problem1(m, n, r, false).unwrap();
        assert!((zs[0] - fz.theta).abs() < 1e-10);
        // sign alternation: each (k pi, (k+1) pi) with proven alternation holds >= 1 zero
        for k in 1..=5 {
            let lo = f64::from(k) * PI;
            let hi = f64::from(k + 1) * PI;
            assert!(
                zs.iter().any(|&z| z > lo && z < hi),
                "no zero in ({lo}, {hi})"
            );
        }
        // recovered eigenvalues strictly increasing
        let lams: Vec<f64> = zs
            .iter()
            .map(|&t| lambda_from_theta_d2(t, m, n, r))
            .collect();
        for w in lams.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn det_case1_examples() {
        // x -> 1+ limit is 0; interior values negative
        let v = det_case1(1.0f64 + 1e-12, 2.0, 1.0).unwrap();
        assert!(v.abs() < 1e-9);
        assert!(det_case1(2.0f64, 2.0, 1.0).unwrap() < 0.0);
        assert!(det_case1(10.0f64, 3.0, 0.5).unwrap() < 0.0);
    }

    #[test]
    fn det_case2_examples() {
        assert_eq!(det_case2(0.0, 2.0).unwrap(), 0.0);
        let v = det_case2(1.0, 2.0).unwrap();
        // 2(2^2-1) - 2(2^2+1) log 2 = 6 - 10 log 2, scaled by (1+x)^{-alpha} = 1/4
        assert!((v - (6.0 - 10.0 * 2f64.ln()) / 4.0).abs() < 1e-12);
        assert!(v < 0.0);
        assert!(det_case2(std::f64::consts::E - 1.0, 2f64.sqrt()).unwrap() < 0.0);
    }

    proptest! {
        #[test]
        fn det_case1_negative(x in 1.000001f64..50.0, l2 in 0.01f64..4.0, dl in 0.01f64..4.0) {
            let l1 = l2 + dl;
            prop_assert!(det_case1(x, l1, l2).unwrap() < 0.0);
        }

        #[test]
        fn det_case2_negative(x in 1e-6f64..50.0, alpha in std::f64::consts::SQRT_2..8.0) {
            prop_assert!(det_case2(x, alpha).unwrap() < 0.0);
        }
    }

    #[test]
    fn problem2_d2_first_zero() {
        // m=1, n=1, R=50: value frozen from the prototype chain (FD-validated)
        let (fz, mu) = first_zero_problem2_d2(1.0, 1, 50.0, false).unwrap();
        assert!(fz.theta > PI && fz.theta < 2.0 * PI && fz.proven);
        assert!((mu - 8.212870566068e-3).abs() < 1e-9 * mu);
        // inversion round-trip against the root formulas
        let rq = roots_problem2_d2(1.0, 1, mu).unwrap();
        assert_eq!(rq.regime, RootRegime::ComplexPair);
        assert!((rq.l2 - fz.theta / 50.0).abs() < 1e-10);
    }

    #[test]
    fn problem2_gen_first_zero_matches_mu_map() {
        let (fz, mu) = first_zero_problem2_gen::<f64>(5, 1, 60.0, false).unwrap();
        let rq = crate::characteristic::roots_problem2_gen::<f64>(5, 1, mu).unwrap();
        assert!((rq.l2 - fz.theta / 60.0).abs() < 1e-10);
    }

    #[test]
    fn n0_first_eigen_frozen() {
        // frozen values validated against the finite-difference oracle and an
        // independent Euler-Lagrange discretization during design
        let cases = [
            (2.0, 50.0, 12.010234149115, N0Branch::ImaginaryPairs),
            (2.0, 20.0, 12.065395731356, N0Branch::ImaginaryPairs),
            (3.0, 30.0, 32.037647442135, N0Branch::ImaginaryPairs),
            (1.5, 5.0, 5.409003386503, N0Branch::ComplexPair),
            (1.3, 10.0, 2.957077710878, N0Branch::ComplexPair),
            (1.05, 30.0, 1.227966190692, N0Branch::ComplexPair),
        ];
        for (m, r, want, branch) in cases {
            let sol = first_eigen_p2_d2_n0::<f64>(m, r).unwrap();
            assert!(
                ((sol.mu - want) / want).abs() < 1e-9,
                "m={m} R={r}: {} vs {want}",
                sol.mu
            );
            assert_eq!(sol.branch, branch, "m={m} R={r}");
        }
    }

    #[test]
    fn problem2_secular_endpoint_signs() {
        for (m, n, r) in [(1.0, 1, 50.0), (2.0, 2, 30.0), (1.5, 3, 12.0)] {
            assert!(secular_problem2_d2(PI, m, n, r).unwrap() < 0.0);
            assert!(secular_problem2_d2(2.0 * PI, m, n, r).unwrap() > 0.0);
        }
        assert!(secular_problem2_gen(PI, 5, 1, 40.0).unwrap() < 0.0);
        assert!(secular_problem2_gen(2.0 * PI, 5, 1, 40.0).unwrap() > 0.0);
    }

    #[test]
    fn n0_alternative_lower_bounds_hold() {
        // both displayed branch bounds stay below the computed first
        // eigenvalue in their stated conformal-class ranges
        for (m, r) in [(2.0f64, 20.0f64), (1.5, 40.0), (3.0, 30.0)] {
            let mu = first_eigen_p2_d2_n0(m, r).unwrap().mu;
            let x2 = PI * PI / (r * r);
            let m2 = m * m;
            if r >= 2.0 * PI / (m2 - 1.0) {
                let alt1 = (8.0 * m2 + 8.0 * x2) * x2
                    / ((m2 - 1.0) + 2.0 * x2 + ((m2 - 1.0).powi(2) - 4.0 * x2).sqrt());
                assert!(mu > alt1, "alternative I: {mu} vs {alt1}");
            }
            if r >= PI / (m2 - 1.0) {
                let alt2 = (4.0 * m2 - 3.0 + 2.0 * (2.0 * m2 + 1.0) * x2 + x2 * x2)
                    / (2.0 * m2 - 1.0 + x2 + 2.0 * ((m2 - 1.0).powi(2) - x2).sqrt());
                assert!(mu > alt2, "alternative II: {mu} vs {alt2}");
            }
        }
    }

    #[test]
    fn n0_boundary_determinant_negative() {
        let s2 = 2f64.sqrt();
        // m = sqrt 2: det/(ab)^2 = -log^4(b/a)
        let v = p2_n0_boundary_determinant(s2, 1.0, 10.0);
        assert!((v + 10f64.ln().powi(4)).abs() < 1e-9 * v.abs());
        for (m, r) in [(2.0, 5.0), (3.0, 2.0), (1.2, 8.0), (1.4, 20.0), (1.2, 0.3)] {
            assert!(p2_n0_boundary_determinant(m, 1.0, f64::exp(r)) < 0.0);
        }
    }

    #[test]
    fn d4_n0_secular() {
        assert!((secular_d4_n0(2.0 * PI)).abs() < 1e-12);
        assert!((secular_d4_n0(PI) - 4.0).abs() < 1e-14);
        for i in 1..1000 {
            let t = 2.0 * PI * f64::from(i) / 1000.0;
            assert!(secular_d4_n0(t) > 0.0, "f({t}) <= 0");
        }
        assert_eq!(first_zero_d4_n0::<f64>(), 2.0 * PI);
    }

    #[test]
    fn solver_chain_works_in_f32() {
        let fz = first_zero_problem1(1.0f32, 0, 10.0, false).unwrap();
        assert!((f64::from(fz.theta) - 3.628808193531705).abs() < 1e-3);
        let lam = lambda_from_theta_d2(fz.theta, 1.0f32, 0, 10.0);
        assert!((f64::from(lam) - 1.2807052560324264).abs() < 1e-3);
    }

    #[test]
    fn spectrum_scan_large_conformal_class() {
        // zeros approach the multiples of pi; the scan must still separate
        // the near-coalescing pairs around each 2k pi
        let (m, n, r) = (1.0f64, 1, 200.0);
        let zs = zeros_problem1(m, n, r, 3).unwrap();
        for k in 1..=5 {
            let lo = f64::from(k) * PI;
            let hi = f64::from(k + 1) * PI;
            assert!(
                zs.iter().any(|&z| z > lo && z < hi),
                "no zero in ({lo}, {hi}) at R={r}"
            );
        }
        let lams: Vec<f64> = zs
            .iter()
            .map(|&t| lambda_from_theta_d2(t, m, n, r))
            .collect();
        for w in lams.windows(2) {
            assert!(w[0] < w[1]);
        }
        // first zero consistent with the dedicated bracket
        let fz = first_zero_problem1(m, n, r, false).unwrap();
        assert!((zs[0] - fz.theta).abs() < 1e-9);
    }

    #[test]
    fn secular_kind_classification() {
        assert_eq!(
            classify_problem2_d2(2.0, 0, 6.0).unwrap(),
            SecularKind::P2N0Quartet
        );
        assert_eq!(
            classify_problem2_d2(2.0, 0, 14.0).unwrap(),
            SecularKind::P2N0ImaginaryPairs
        );
        assert_eq!(
            classify_problem2_d2(1.0, 0, 3.0).unwrap(),
            SecularKind::P2Complex
        );
        assert_eq!(
            classify_problem2_d2(2.0, 0, 12.0).unwrap(),
            SecularKind::P2N0Repeated
        );
    }

    #[test]
    fn theta_decreasing_toward_pi() {
        let mut prev = f64::INFINITY;
        for r in [20.0, 50.0, 100.0, 200.0] {
            let fz = first_zero_problem1(1.0, 1, r, false).unwrap();
            assert!(fz.theta < prev);
            prev = fz.theta;
        }
    }
}
