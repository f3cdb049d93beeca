//! Mode projection of the fourth-order operators and log-variable
//! linearization.
//!
//! Projecting on a circular harmonic `e^{in theta}` (or a spherical harmonic
//! `Y_n`) and substituting `r = e^t` turns each weighted eigenvalue equation
//! into a constant-coefficient quartic ODE in `t`. Only the `t`-variable form
//! is ever materialized.
//!
//! The eigenvalue enters linearly: for Problem I it sits on the right-hand
//! side (`... = lambda Y`, the constant offset is stored in `c0`); for
//! Problem II the parameter `mu` is embedded in the coefficients and the
//! equation is homogeneous.

use crate::scalar::{cst, Real};

/// How the spectral parameter enters the projected ODE.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhsKind {
    /// `Y'''' + c3 Y''' + c2 Y'' + c1 Y' + c0 Y = lambda Y`.
    EigenWeightL2,
    /// `mu` already folded into the coefficients; equation is `= 0`.
    EigenWeightGradient,
}

/// Constant-coefficient quartic `Y'''' + c3 Y''' + c2 Y'' + c1 Y' + c0 Y`
/// (leading coefficient 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectedOde<F> {
    pub c3: F,
    pub c2: F,
    pub c1: F,
    pub c0: F,
    pub rhs: RhsKind,
}

impl<F: Real> ProjectedOde<F> {
    /// Characteristic polynomial `P(x) = x^4 + c3 x^3 + c2 x^2 + c1 x + c0 - lambda`
    /// evaluated at a complex point `x = re + i*im`; returns `(Re P, Im P)`.
    ///
    /// `lambda` must be zero for `EigenWeightGradient` odes.
    pub fn char_poly_complex(&self, re: F, im: F, lambda: F) -> (F, F) {
        // Horner in complex arithmetic over (re, im)
        let mut pr = F::one();
        let mut pi = F::zero();
        for c in [self.c3, self.c2, self.c1, self.c0 - lambda] {
            let nr = pr * re - pi * im + c;
            let ni = pr * im + pi * re;
            pr = nr;
            pi = ni;
        }
        (pr, pi)
    }
}

fn lift(n: i32) -> f64 {
    f64::from(n)
}

/// Problem I, `d = 2`, mode `n`:
/// `Y'''' - 4Y''' - 2(m^2+n^2-3)Y'' + 4(m^2+n^2-1)Y' + ((m^2-n^2-1)^2 - 4n^2)Y = lambda Y`.
pub fn project_problem1_d2<F: Real>(m: F, n: i32) -> ProjectedOde<F> {
    let n2 = cst::<F>(lift(n) * lift(n));
    let s = m * m + n2;
    let off = {
        let t = m * m - n2 - F::one();
        t * t - cst::<F>(4.0) * n2
    };
    ProjectedOde {
        c3: cst(-4.0),
        c2: cst::<F>(-2.0) * (s - cst::<F>(3.0)),
        c1: cst::<F>(4.0) * (s - F::one()),
        c0: off,
        rhs: RhsKind::EigenWeightL2,
    }
}

/// Bilaplacian in dimension `d >= 3`, spherical mode `n >= 0`:
/// `Y'''' + 2(d-4)Y''' + ((d-1)(d-9)+11-2L)Y'' - 2((d-1)(d-5)+3+(d-4)L)Y'
///  + (L^2 + 2(d-4)L)Y = lambda Y`, with `L = n(n+d-2)`.
pub fn project_bilaplacian_d<F: Real>(d: u32, n: u32) -> ProjectedOde<F> {
    let df = cst::<F>(f64::from(d));
    let l = cst::<F>(f64::from(n) * f64::from(n + d - 2));
    let one = F::one();
    let c3 = cst::<F>(2.0) * (df - cst::<F>(4.0));
    let c2 = (df - one) * (df - cst::<F>(9.0)) + cst::<F>(11.0) - cst::<F>(2.0) * l;
    let c1 = cst::<F>(-2.0)
        * ((df - one) * (df - cst::<F>(5.0)) + cst::<F>(3.0) + (df - cst::<F>(4.0)) * l);
    let c0 = l * l + cst::<F>(2.0) * (df - cst::<F>(4.0)) * l;
    ProjectedOde {
        c3,
        c2,
        c1,
        c0,
        rhs: RhsKind::EigenWeightL2,
    }
}

/// Problem II, `d = 2`, mode `n`, parameter `mu`:
/// `Y'''' - 4Y''' - (2(m^2+n^2-3) - mu)Y'' + (4(m^2+n^2-1) - 2 mu)Y'
///  + ((m^2-n^2-1)^2 - (4+mu)n^2)Y = 0`.
///
/// The `Y'` coefficient carries `-2 mu`: the substituted right-hand side is
/// `-mu (Y'' - 2Y' - n^2 Y)`, which is also what the biquadratic reduction
/// `Q(y) = y^4 - (2(m^2+n^2)-mu) y^2 + (m^2-n^2)^2 - mu(n^2+1)` requires.
pub fn project_problem2_d2<F: Real>(m: F, n: i32, mu: F) -> ProjectedOde<F> {
    let base = project_problem1_d2(m, n);
    let n2 = cst::<F>(lift(n) * lift(n));
    ProjectedOde {
        c3: base.c3,
        c2: base.c2 + mu,
        c1: base.c1 - cst::<F>(2.0) * mu,
        c0: base.c0 - mu * n2,
        rhs: RhsKind::EigenWeightGradient,
    }
}

/// Problem II in dimension `d >= 3`, mode `n >= 0`, parameter `mu`:
/// `Y'''' + 2(d-4)Y''' + (d^2-10d+20-2L+mu)Y'' - (d-4)(2(d-2)+2L-mu)Y'
///  + (L^2 + (2(d-4)-mu)L)Y = 0`.
pub fn project_problem2_d<F: Real>(d: u32, n: u32, mu: F) -> ProjectedOde<F> {
    let base = project_bilaplacian_d(d, n);
    let df = cst::<F>(f64::from(d));
    let l = cst::<F>(f64::from(n) * f64::from(n + d - 2));
    ProjectedOde {
        c3: base.c3,
        c2: base.c2 + mu,
        c1: base.c1 + (df - cst::<F>(4.0)) * mu,
        c0: base.c0 - mu * l,
        rhs: RhsKind::EigenWeightGradient,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characteristic::{roots_problem1_d2, roots_problem1_gen, roots_problem2_d2};
    use proptest::prelude::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn problem1_d2_examples() {
        let o = project_problem1_d2(1.0, 0);
        assert_eq!((o.c3, o.c2, o.c1, o.c0), (-4.0, 4.0, 0.0, 0.0));
        let o = project_problem1_d2(2.0, 2);
        assert_eq!((o.c3, o.c2, o.c1, o.c0), (-4.0, -10.0, 28.0, -15.0));
        let o = project_problem1_d2(1.0, 1);
        assert_eq!((o.c3, o.c2, o.c1, o.c0), (-4.0, 2.0, 4.0, -3.0));
    }

    #[test]
    fn bilaplacian_examples() {
        let o = project_bilaplacian_d::<f64>(4, 0);
        assert_eq!((o.c3, o.c2, o.c1, o.c0), (0.0, -4.0, 0.0, 0.0));
        let o = project_bilaplacian_d::<f64>(4, 1);
        assert_eq!((o.c3, o.c2, o.c1, o.c0), (0.0, -10.0, 0.0, 9.0));
        let o = project_bilaplacian_d::<f64>(3, 0);
        assert_eq!((o.c3, o.c2, o.c1), (-2.0, -1.0, 2.0));
        assert_eq!(o.c0, 0.0);
    }

    #[test]
    fn problem2_reduces_at_mu_zero() {
        let a = project_problem2_d2(1.7, 2, 0.0);
        let b = project_problem1_d2(1.7, 2);
        assert_eq!((a.c3, a.c2, a.c1, a.c0), (b.c3, b.c2, b.c1, b.c0));
        let a = project_problem2_d::<f64>(5, 3, 0.0);
        let b = project_bilaplacian_d::<f64>(5, 3);
        assert_eq!((a.c3, a.c2, a.c1, a.c0), (b.c3, b.c2, b.c1, b.c0));
    }

    #[test]
    fn problem2_d4_n0_is_biharmonic_form() {
        // d=4, n=0: Y'''' + (mu - 4) Y'' = 0
        let o = project_problem2_d::<f64>(4, 0, 2.5);
        assert_eq!((o.c3, o.c2, o.c1, o.c0), (0.0, -4.0 + 2.5, 0.0, 0.0));
    }

    #[test]
    fn problem2_d2_mu_terms() {
        // mu enters as + mu (Y'' - 2Y' - n^2 Y)
        let base = project_problem1_d2(2.0f64, 1);
        let o = project_problem2_d2(2.0f64, 1, 1.0);
        assert!((o.c2 - (base.c2 + 1.0)).abs() < TOL);
        assert!((o.c1 - (base.c1 - 2.0)).abs() < TOL);
        assert!((o.c0 - (base.c0 - 1.0)).abs() < TOL);
    }

    #[test]
    fn d2_coefficients_even_in_n() {
        for n in 1..6 {
            let a = project_problem1_d2(1.5, n);
            let b = project_problem1_d2(1.5, -n);
            assert_eq!((a.c3, a.c2, a.c1, a.c0), (b.c3, b.c2, b.c1, b.c0));
        }
    }

    proptest! {
        // Substitution consistency: every characteristic root annihilates
        // exp(rt) in the projected ODE.
        #[test]
        fn p1_d2_roots_satisfy_ode(m in 1.0f64..6.0, n in -6i32..=6, lam in 0.0f64..400.0) {
            let ode = project_problem1_d2(m, n);
            let rq = roots_problem1_d2(m, n, lam).unwrap();
            for (re, im) in rq.roots() {
                let (pr, pi_) = ode.char_poly_complex(re, im, lam);
                let tol = 1e-10 * (1.0 + lam.abs());
                prop_assert!(pr.hypot(pi_) <= tol, "residual {} at root ({re},{im})", pr.hypot(pi_));
            }
        }

        #[test]
        fn p1_gen_roots_satisfy_ode(d in 3u32..8, n in 0u32..6, lam in 0.0f64..400.0) {
            let ode = project_bilaplacian_d::<f64>(d, n);
            let rq = roots_problem1_gen::<f64>(d, n, lam).unwrap();
            for (re, im) in rq.roots() {
                let (pr, pi_) = ode.char_poly_complex(re, im, lam);
                let tol = 1e-10 * (1.0 + lam.abs());
                prop_assert!(pr.hypot(pi_) <= tol, "residual {} at root ({re},{im})", pr.hypot(pi_));
            }
        }

        #[test]
        fn p2_d2_roots_satisfy_ode(m in 1.0f64..4.0, n in 1i32..5, mu in 0.0f64..30.0) {
            let ode = project_problem2_d2(m, n, mu);
            if let Ok(rq) = roots_problem2_d2(m, n, mu) {
                for (re, im) in rq.roots() {
                    let (pr, pi_) = ode.char_poly_complex(re, im, 0.0);
                    let tol = 1e-9 * (1.0 + mu.abs());
                    prop_assert!(pr.hypot(pi_) <= tol, "residual {} at root ({re},{im})", pr.hypot(pi_));
                }
            }
        }
    }
}
