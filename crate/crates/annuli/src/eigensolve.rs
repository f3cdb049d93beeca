//! Eigenvalue assembly: secular zeros to eigenvalues, proven bounds, mode
//! minimization, and the headline closed forms.

use crate::characteristic::RootRegime;
use crate::error::{Error, Result};
use crate::geometry::{is_assumption1, AnnulusGeometry, ProblemKind};
use crate::scalar::{cst, Real};
use crate::secular::{
    first_eigen_p2_d2_n0, first_zero_d4_n0, first_zero_problem1, first_zero_problem1_gen,
    first_zero_problem2_d2, first_zero_problem2_gen, lambda_from_theta_d2, lambda_from_theta_gen,
    N0Branch,
};

/// A solved per-mode eigenvalue together with how it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult<F> {
    /// `lambda` (Problem I) or `mu` (Problem II).
    pub value: F,
    /// Secular-zero location, when the value came from a `theta` bracket
    /// (`2 pi` for the exact `d = 4` case; absent for the `n = 0` window
    /// determinants).
    pub theta_star: Option<F>,
    pub regime: RootRegime,
    pub lower_bound: F,
    pub upper_bound: F,
    /// True when the `(pi, 2 pi)` bracket hypothesis held, in which case
    /// `lower_bound < value < upper_bound` is asserted.
    pub bracket_proven: bool,
    /// Mode index `n` (`|n|` in d = 2 by symmetry).
    pub mode: i32,
    pub problem: ProblemKind,
    pub geometry: AnnulusGeometry<F>,
}

impl<F: Real> EigenResult<F> {
    fn checked(self) -> Result<Self> {
        if self.value <= F::zero() {
            return Err(Error::RegimeExit(format!(
                "nonpositive eigenvalue {} (numerical inconsistency)",
                self.value
            )));
        }
        if self.bracket_proven && !(self.lower_bound < self.value && self.value < self.upper_bound)
        {
            return Err(Error::RegimeExit(format!(
                "sandwich violated: {} not in ({}, {})",
                self.value, self.lower_bound, self.upper_bound
            )));
        }
        Ok(self)
    }
}

/// Proven bounds for `lambda_{m,n}` in d = 2:
/// `((m-n)^2 + pi^2/R^2)((m+n)^2 + pi^2/R^2)` up to the `4 pi^2` analogue.
pub fn lambda_bounds_d2<F: Real>(m: F, n: i32, big_r: F) -> (F, F) {
    let nf = cst::<F>(f64::from(n));
    let f = |x2: F| {
        let a = m - nf;
        let b = m + nf;
        (a * a + x2) * (b * b + x2)
    };
    let x2 = F::PI() * F::PI() / (big_r * big_r);
    (f(x2), f(cst::<F>(4.0) * x2))
}

/// Proven bounds for `lambda_n` in dimension d:
/// `((n+(d-4)/2)^2 + pi^2/R^2)((n+d/2)^2 + pi^2/R^2)` up to `4 pi^2`.
pub fn lambda_bounds_gen<F: Real>(d: u32, n: u32, big_r: F) -> (F, F) {
    let k = cst::<F>(f64::from(n) + (f64::from(d) - 2.0) / 2.0);
    let f = |x2: F| {
        let a = k - F::one();
        let b = k + F::one();
        (a * a + x2) * (b * b + x2)
    };
    let x2 = F::PI() * F::PI() / (big_r * big_r);
    (f(x2), f(cst::<F>(4.0) * x2))
}

/// Proven bounds for `mu_{m,n}` in d = 2:
/// lower `(2(m+n)^2 + X^2)(2(m-n)^2 + X^2)/(4(n^2+1) + 2X^2)`,
/// upper `((m+n)^2 + 2X^2)((m-n)^2 + 2X^2)/(n^2+1 + 2X^2)`, `X = pi/R`.
pub fn mu_bounds_d2<F: Real>(m: F, n: i32, big_r: F) -> (F, F) {
    let nf = cst::<F>(f64::from(n));
    let n2 = nf * nf;
    let x2 = F::PI() * F::PI() / (big_r * big_r);
    let two = cst::<F>(2.0);
    let sp = (m + nf) * (m + nf);
    let sm = (m - nf) * (m - nf);
    let lower = (two * sp + x2) * (two * sm + x2) / (cst::<F>(4.0) * (n2 + F::one()) + two * x2);
    let upper = (sp + two * x2) * (sm + two * x2) / (n2 + F::one() + two * x2);
    (lower, upper)
}

/// Proven bounds for `mu_n` in dimension d (from the displayed estimates):
/// lower `((d(d-4)+4L)^2 + ((d-2)^2+4+4L) 8X^2 + 16X^4)/(4(d-4)^2+16L+16X^2)`,
/// upper the `64 X^2 / 256 X^4 / 64 X^2` analogue, `L = n(n+d-2)`, `X = pi/R`.
pub fn mu_bounds_gen<F: Real>(d: u32, n: u32, big_r: F) -> (F, F) {
    let df = cst::<F>(f64::from(d));
    let l = cst::<F>(f64::from(n) * f64::from(n + d - 2));
    let x2 = F::PI() * F::PI() / (big_r * big_r);
    let four = cst::<F>(4.0);
    let a = df * (df - four) + four * l;
    let b = (df - cst::<F>(2.0)) * (df - cst::<F>(2.0)) + four + four * l;
    let den0 = four * (df - four) * (df - four) + cst::<F>(16.0) * l;
    let lower =
        (a * a + b * cst::<F>(8.0) * x2 + cst::<F>(16.0) * x2 * x2) / (den0 + cst::<F>(16.0) * x2);
    let upper = (a * a + b * cst::<F>(64.0) * x2 + cst::<F>(256.0) * x2 * x2)
        / (den0 + cst::<F>(64.0) * x2);
    (lower, upper)
}

/// Smallest eigenvalue of the projected Problem I equation in d = 2,
/// mode `(m, n)`.
pub fn lambda_mn<F: Real>(
    m: F,
    n: i32,
    g: &AnnulusGeometry<F>,
    force: bool,
) -> Result<EigenResult<F>> {
    if m < F::one() {
        return Err(Error::InvalidParameter(format!("require m >= 1, got {m}")));
    }
    let big_r = g.conformal_class();
    let fz = first_zero_problem1(m, n, big_r, force)?;
    let value = lambda_from_theta_d2(fz.theta, m, n, big_r);
    let (lower, upper) = lambda_bounds_d2(m, n, big_r);
    EigenResult {
        value,
        theta_star: Some(fz.theta),
        regime: RootRegime::ComplexPair,
        lower_bound: lower,
        upper_bound: upper,
        bracket_proven: fz.proven,
        mode: n,
        problem: ProblemKind::WeightedL2,
        geometry: *g,
    }
    .checked()
}

/// Smallest eigenvalue of the dimension-d bilaplacian mode `n`
/// (`d = 2` reduces exactly to [`lambda_mn`] with `m = 1`).
pub fn lambda_n_dimd<F: Real>(
    d: u32,
    n: u32,
    g: &AnnulusGeometry<F>,
    force: bool,
) -> Result<EigenResult<F>> {
    let big_r = g.conformal_class();
    let fz = first_zero_problem1_gen(d, n, big_r, force)?;
    let value = lambda_from_theta_gen(fz.theta, d, n, big_r);
    let (lower, upper) = lambda_bounds_gen(d, n, big_r);
    EigenResult {
        value,
        theta_star: Some(fz.theta),
        regime: RootRegime::ComplexPair,
        lower_bound: lower,
        upper_bound: upper,
        bracket_proven: fz.proven,
        mode: n as i32,
        problem: ProblemKind::WeightedL2,
        geometry: *g,
    }
    .checked()
}

/// Minimum of [`lambda_mn`] over modes, with rigorous truncation: `n_max`
/// grows until the proven lower bound at `n_max` exceeds the running
/// minimum (the bound is increasing in `|n|` past the minimizer).
pub fn lambda_min_d2<F: Real>(
    m: F,
    g: &AnnulusGeometry<F>,
    force: bool,
) -> Result<(EigenResult<F>, Vec<EigenResult<F>>)> {
    let big_r = g.conformal_class();
    let mut all = Vec::new();
    let mut best: Option<EigenResult<F>> = None;
    let mut n = 0i32;
    loop {
        let res = lambda_mn(m, n, g, force)?;
        if best.as_ref().is_none_or(|b| res.value < b.value) {
            best = Some(res.clone());
        }
        all.push(res);
        n += 1;
        let (lower_next, _) = lambda_bounds_d2(m, n, big_r);
        let past_min = cst::<F>(f64::from(n)) > m;
        if past_min && lower_next > best.as_ref().unwrap().value {
            break;
        }
        if n > 1000 {
            return Err(Error::NoConvergence(1000));
        }
    }
    Ok((best.unwrap(), all))
}

/// Minimum of [`lambda_n_dimd`] over spherical modes.
pub fn lambda_min_dimd<F: Real>(
    d: u32,
    g: &AnnulusGeometry<F>,
    force: bool,
) -> Result<(EigenResult<F>, Vec<EigenResult<F>>)> {
    let big_r = g.conformal_class();
    let mut all = Vec::new();
    let mut best: Option<EigenResult<F>> = None;
    let mut n = 0u32;
    loop {
        let res = lambda_n_dimd(d, n, g, force)?;
        if best.as_ref().is_none_or(|b| res.value < b.value) {
            best = Some(res.clone());
        }
        all.push(res);
        n += 1;
        let (lower_next, _) = lambda_bounds_gen(d, n, big_r);
        if lower_next > best.as_ref().unwrap().value {
            break;
        }
        if n > 1000 {
            return Err(Error::NoConvergence(1000));
        }
    }
    Ok((best.unwrap(), all))
}

/// Exact first eigenvalue of the radial `d = 4` Problem II mode:
/// `mu_0 = 4 + 4 pi^2 / log^2(b/a)`.
pub fn mu0_dim4_exact<F: Real>(g: &AnnulusGeometry<F>) -> F {
    let big_r = g.conformal_class();
    cst::<F>(4.0) + cst::<F>(4.0) * F::PI() * F::PI() / (big_r * big_r)
}

/// Smallest eigenvalue of the projected Problem II equation in d = 2.
///
/// `n = 0` with `m > 1` is served by the dedicated window determinants;
/// Assumption-II modes (`m >= sqrt 2`, small `|n| != 0`) are not localized
/// by the secular theory and return [`Error::NotLocalized`] carrying the
/// proven lower bound `m^4 / (2(1+2m^2))`.
pub fn mu_mn<F: Real>(m: F, n: i32, g: &AnnulusGeometry<F>, force: bool) -> Result<EigenResult<F>> {
    if m < F::one() {
        return Err(Error::InvalidParameter(format!("require m >= 1, got {m}")));
    }
    let big_r = g.conformal_class();
    if n == 0 && m > F::one() {
        let sol = first_eigen_p2_d2_n0(m, big_r)?;
        let regime = match sol.branch {
            N0Branch::FirstEquality | N0Branch::SecondEquality => RootRegime::ComplexQuartet,
            N0Branch::ImaginaryPairs => RootRegime::ImaginaryPairs,
            N0Branch::ComplexPair => RootRegime::ComplexPair,
        };
        return EigenResult {
            value: sol.mu,
            theta_star: None,
            regime,
            lower_bound: F::zero(),
            upper_bound: F::infinity(),
            bracket_proven: false,
            mode: 0,
            problem: ProblemKind::WeightedGradient,
            geometry: *g,
        }
        .checked();
    }
    if !is_assumption1(m, n) {
        let m2 = m * m;
        let lb = m2 * m2 / (cst::<F>(2.0) * (F::one() + cst::<F>(2.0) * m2));
        return Err(Error::NotLocalized {
            lower_bound: lb.to_f64().unwrap_or(f64::NAN),
        });
    }
    let (fz, mu) = first_zero_problem2_d2(m, n, big_r, force)?;
    let (lower, upper) = mu_bounds_d2(m, n, big_r);
    let proven = fz.proven && big_r >= crate::geometry::threshold_problem2_assumption1(m, n)?;
    EigenResult {
        value: mu,
        theta_star: Some(fz.theta),
        regime: RootRegime::ComplexPair,
        lower_bound: lower,
        upper_bound: upper,
        bracket_proven: proven,
        mode: n,
        problem: ProblemKind::WeightedGradient,
        geometry: *g,
    }
    .checked()
}

/// Smallest eigenvalue of the dimension-d Problem II mode `n`
/// (exact closed form for `(d, n) = (4, 0)`).
pub fn mu_n_dimd<F: Real>(
    d: u32,
    n: u32,
    g: &AnnulusGeometry<F>,
    force: bool,
) -> Result<EigenResult<F>> {
    let big_r = g.conformal_class();
    if d == 4 && n == 0 {
        let value = mu0_dim4_exact(g);
        return EigenResult {
            value,
            theta_star: Some(first_zero_d4_n0()),
            regime: RootRegime::ImaginaryPairs,
            lower_bound: value,
            upper_bound: value,
            bracket_proven: false, // exact, not bracketed
            mode: 0,
            problem: ProblemKind::WeightedGradient,
            geometry: *g,
        }
        .checked();
    }
    let (fz, mu) = first_zero_problem2_gen(d, n, big_r, force)?;
    let (lower, upper) = mu_bounds_gen(d, n, big_r);
    EigenResult {
        value: mu,
        theta_star: Some(fz.theta),
        regime: RootRegime::ComplexPair,
        lower_bound: lower,
        upper_bound: upper,
        bracket_proven: fz.proven,
        mode: n as i32,
        problem: ProblemKind::WeightedGradient,
        geometry: *g,
    }
    .checked()
}

/// Mode-minimization report for Problem II in d = 2.
///
/// For `m >= 2` the theory cannot order the `n = 0` and `n = m` candidates,
/// so both are returned and `declared_min` is `None`; for `m = 1` the
/// minimum is declared.
#[derive(Debug, Clone)]
pub struct MuMinD2<F> {
    pub candidates: Vec<EigenResult<F>>,
    /// Index into `candidates` of the declared minimum, when the theory
    /// declares one.
    pub declared_min: Option<usize>,
    /// Modes skipped as Assumption II, with their proven lower bounds.
    pub skipped: Vec<(i32, F)>,
}

/// Problem II minimum over modes in d = 2; see [`MuMinD2`].
pub fn mu_min_d2<F: Real>(m: F, g: &AnnulusGeometry<F>, force: bool) -> Result<MuMinD2<F>> {
    let big_r = g.conformal_class();
    let mut candidates = Vec::new();
    let mut skipped = Vec::new();
    let mut running_min = F::infinity();
    let mut n = 0i32;
    loop {
        match mu_mn(m, n, g, force) {
            Ok(res) => {
                running_min = running_min.min(res.value);
                candidates.push(res);
            }
            Err(Error::NotLocalized { lower_bound }) => {
                skipped.push((n, cst::<F>(lower_bound)));
            }
            Err(e) => return Err(e),
        }
        n += 1;
        let nf = cst::<F>(f64::from(n));
        let (lower_next, _) = mu_bounds_d2(m, n, big_r);
        if nf > m && lower_next > running_min {
            break;
        }
        if n > 1000 {
            return Err(Error::NoConvergence(1000));
        }
    }
    let declared = if m == F::one() {
        candidates
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.value.partial_cmp(&b.1.value).unwrap())
            .map(|(i, _)| i)
    } else {
        None // m >= 2: n = 0 vs n = m cannot be ordered by the theory
    };
    Ok(MuMinD2 {
        candidates,
        declared_min: declared,
        skipped,
    })
}

/// Problem II minimum over spherical modes in dimension d.
pub fn mu_min_dimd<F: Real>(
    d: u32,
    g: &AnnulusGeometry<F>,
    force: bool,
) -> Result<(EigenResult<F>, Vec<EigenResult<F>>)> {
    let big_r = g.conformal_class();
    let mut all = Vec::new();
    let mut best: Option<EigenResult<F>> = None;
    let mut n = 0u32;
    loop {
        let res = mu_n_dimd(d, n, g, force)?;
        if best.as_ref().is_none_or(|b| res.value < b.value) {
            best = Some(res.clone());
        }
        all.push(res);
        n += 1;
        let (lower_next, _) = mu_bounds_gen(d, n, big_r);
        if n >= 2 && lower_next > best.as_ref().unwrap().value {
            break;
        }
        if n > 1000 {
            return Err(Error::NoConvergence(1000));
        }
    }
    Ok((best.unwrap(), all))
}

/// Minimal-mode analysis for Problem I in d = 2: the
/// continuous minimizer of `f(t) = ((m-t)^2 + a^2)((m+t)^2 + a^2)`,
/// `a = pi/R`, the integer comparison values, and the named threshold
/// inequalities.
#[derive(Debug, Clone, PartialEq)]
pub struct P1ModeAnalysis<F> {
    pub alpha: F,
    /// `sqrt(m^2 - alpha^2)` when `alpha < m`, else 0.
    pub continuous_minimizer: F,
    pub f_floor: F,
    pub f_ceil: F,
    pub integer_argmin: i32,
    /// `alpha^2 <= 2m - 1` (continuous minimizer floors to `m - 1`).
    pub floor_is_m_minus_one: bool,
    /// `alpha^2 <= (2m-1)/2` (then `f(m) <= f(m-1)`, argmin is `m`).
    pub argmin_is_m: bool,
}

pub fn minimal_mode_analysis_p1_d2<F: Real>(m: F, big_r: F) -> P1ModeAnalysis<F> {
    let alpha = F::PI() / big_r;
    let a2 = alpha * alpha;
    let f = |t: F| {
        let u = m - t;
        let v = m + t;
        (u * u + a2) * (v * v + a2)
    };
    let tstar = if alpha < m {
        (m * m - a2).sqrt()
    } else {
        F::zero()
    };
    let floor = tstar.floor();
    let (f_floor, f_ceil) = (f(floor), f(floor + F::one()));
    // integer argmin over all n >= 0 (f decreasing then increasing)
    let integer_argmin = if f_floor <= f_ceil {
        floor.to_f64().unwrap_or(0.0) as i32
    } else {
        floor.to_f64().unwrap_or(0.0) as i32 + 1
    };
    let two_m_minus_1 = cst::<F>(2.0) * m - F::one();
    P1ModeAnalysis {
        alpha,
        continuous_minimizer: tstar,
        f_floor,
        f_ceil,
        integer_argmin,
        floor_is_m_minus_one: a2 <= two_m_minus_1,
        argmin_is_m: a2 <= two_m_minus_1 / cst::<F>(2.0),
    }
}

/// Bound certificate for the dimension-d radial minimal mode:
/// true when the proven upper bound of `lambda_0` lies strictly below the
/// proven lower bound of `lambda_1` (for `d = 4` this flips exactly at
/// `R = pi sqrt(5/3)`).
pub fn radial_certificate_dimd<F: Real>(d: u32, big_r: F) -> bool {
    let (_, upper0) = lambda_bounds_gen::<F>(d, 0, big_r);
    let (lower1, _) = lambda_bounds_gen::<F>(d, 1, big_r);
    upper0 < lower1
}

/// Claimed minimal spherical mode for Problem II in dimension d:
/// `n = 1` for `d = 3` (once `4 pi^2/R^2 <= 7`) and `d = 4`; `n = 0` for
/// `d >= 5`.
pub fn mu_min_mode_dimd<F: Real>(d: u32, big_r: F) -> u32 {
    match d {
        3 => {
            let alpha = cst::<F>(4.0) * F::PI() * F::PI() / (big_r * big_r);
            if alpha <= cst::<F>(7.0) {
                1
            } else {
                0
            }
        }
        4 => 1,
        _ => 0,
    }
}
