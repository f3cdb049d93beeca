//! Annulus geometry and the conformal-class thresholds of the eigenvalue
//! theorems.
//!
//! The annulus `B_b \ B_a(0)` in dimension `d` is described by `(a, b, d)`;
//! its conformal class `R = log(b/a)` is the only modulus the theory sees,
//! so it is always derived, never stored.

use crate::error::{Error, Result};
use crate::scalar::{cst, Real};

/// The two weighted minimisation problems.
///
/// `WeightedL2` normalises `int u^2/|x|^4` (eigenvalue written `lambda`),
/// `WeightedGradient` normalises `int |grad u|^2/|x|^2` (eigenvalue `mu`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    WeightedL2,
    WeightedGradient,
}

impl std::fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProblemKind::WeightedL2 => write!(f, "I"),
            ProblemKind::WeightedGradient => write!(f, "II"),
        }
    }
}

/// Annulus `a < |x| < b` in ambient dimension `d >= 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusGeometry<F> {
    a: F,
    b: F,
    d: u32,
}

impl<F: Real> AnnulusGeometry<F> {
    pub fn new(a: F, b: F, d: u32) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a <= F::zero() || b <= a || d < 2 {
            return Err(Error::InvalidGeometry {
                a: a.to_f64().unwrap_or(f64::NAN),
                b: b.to_f64().unwrap_or(f64::NAN),
                d,
            });
        }
        Ok(Self { a, b, d })
    }

    /// Geometry with inner radius 1 and the requested conformal class.
    pub fn from_conformal_class(r: F, d: u32) -> Result<Self> {
        if !r.is_finite() || r <= F::zero() {
            return Err(Error::InvalidParameter(format!(
                "conformal class must be positive, got {r}"
            )));
        }
        Self::new(F::one(), r.exp(), d)
    }

    pub fn inner(&self) -> F {
        self.a
    }

    pub fn outer(&self) -> F {
        self.b
    }

    pub fn dim(&self) -> u32 {
        self.d
    }

    /// `R = log(b/a)`.
    pub fn conformal_class(&self) -> F {
        (self.b / self.a).ln()
    }
}

/// Sandwich-bound threshold for Problem I: `pi*sqrt(2)/sqrt(2m-1)`.
///
/// At or above this conformal class the infimum over modes of the proven
/// lower bounds equals `(4m^2 + pi^2/R^2) pi^2/R^2`.
pub fn threshold_problem1<F: Real>(m: F) -> Result<F> {
    if m < F::one() {
        return Err(Error::InvalidParameter(format!("require m >= 1, got {m}")));
    }
    let two = cst::<F>(2.0);
    Ok(F::PI() * two.sqrt() / (two * m - F::one()).sqrt())
}

/// Mode-uniqueness radius for Problem I with integer `m`:
/// `sqrt(pi/2) * (1/(2m-1)) * sqrt(12m^2+4m-1 + sqrt((12m^2+4m-1)^2 + 60(2m-1)^2))`.
pub fn threshold_problem1_unique<F: Real>(m: u32) -> Result<F> {
    if m < 1 {
        return Err(Error::InvalidParameter("require integer m >= 1".into()));
    }
    let m = cst::<F>(f64::from(m));
    let two = cst::<F>(2.0);
    let a = cst::<F>(12.0) * m * m + cst::<F>(4.0) * m - F::one();
    let w = two * m - F::one();
    let inner = (a * a + cst::<F>(60.0) * w * w).sqrt();
    Ok((F::PI() / two).sqrt() / w * (a + inner).sqrt())
}

/// Radial-minimiser hypothesis for the `d = 4` bilaplacian:
/// `15 sqrt(4 + 3 pi (pi+1)) / 2`.
pub fn threshold_dim4<F: Real>() -> F {
    let pi = F::PI();
    cst::<F>(15.0) * (cst::<F>(4.0) + cst::<F>(3.0) * pi * (pi + F::one())).sqrt() / cst::<F>(2.0)
}

/// All-mode hypothesis for the general-dimension bilaplacian theorems:
/// `15 sqrt(2 + (3 pi / 2)(pi + 1))`.
pub fn threshold_dimd_all_modes<F: Real>() -> F {
    let pi = F::PI();
    cst::<F>(15.0) * (cst::<F>(2.0) + cst::<F>(1.5) * pi * (pi + F::one())).sqrt()
}

/// Assumption-II boundary for Problem II in `n^2`:
/// `m^2 (m^2 - 2) / (2m^2 + 1 + sqrt(5 m^4 + 2 m^2 + 1))`.
///
/// Negative for `m < sqrt(2)`, in which case every mode is Assumption I.
pub fn assumption2_boundary<F: Real>(m: F) -> F {
    let m2 = m * m;
    let disc = (cst::<F>(5.0) * m2 * m2 + cst::<F>(2.0) * m2 + F::one()).sqrt();
    m2 * (m2 - cst::<F>(2.0)) / (cst::<F>(2.0) * m2 + F::one() + disc)
}

/// True when `(m, n)` falls under Assumption I of the Problem-II ODE theorem.
pub fn is_assumption1<F: Real>(m: F, n: i32) -> bool {
    let n2 = cst::<F>(f64::from(n) * f64::from(n));
    n2 > assumption2_boundary(m)
}

/// Assumption-I conformal-class threshold for Problem II, mode `n`:
///
/// `pi * sqrt((25(n^2+1) + sqrt(525 (n^2+1)^2 + 16 pi^2 (50+pi^2) P))
///            / (2 (50+pi^2) P))`
/// with `P = n^4 + 2(2m^2+1) n^2 - m^2(m^2-2)`. Returns 0 when Assumption II
/// applies (no constraint).
pub fn threshold_problem2_assumption1<F: Real>(m: F, n: i32) -> Result<F> {
    if m < F::one() {
        return Err(Error::InvalidParameter(format!("require m >= 1, got {m}")));
    }
    if !is_assumption1(m, n) {
        return Ok(F::zero());
    }
    let pi = F::PI();
    let n2 = cst::<F>(f64::from(n) * f64::from(n));
    let m2 = m * m;
    let p =
        n2 * n2 + cst::<F>(2.0) * (cst::<F>(2.0) * m2 + F::one()) * n2 - m2 * (m2 - cst::<F>(2.0));
    if p <= F::zero() {
        return Err(Error::InvalidParameter(
            "assumption-I radical undefined (denominator <= 0)".into(),
        ));
    }
    let k = n2 + F::one();
    let num = cst::<F>(25.0) * k
        + (cst::<F>(525.0) * k * k + cst::<F>(16.0) * pi * pi * (cst::<F>(50.0) + pi * pi) * p)
            .sqrt();
    let den = cst::<F>(2.0) * (cst::<F>(50.0) + pi * pi) * p;
    Ok(pi * (num / den).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn geo(a: f64, b: f64) -> AnnulusGeometry<f64> {
        AnnulusGeometry::new(a, b, 2).unwrap()
    }

    #[test]
    fn conformal_class_values() {
        assert!((geo(1.0, std::f64::consts::E).conformal_class() - 1.0).abs() < TOL);
        // b/a = e^{pi sqrt 2} = 85.019695...
        let r = std::f64::consts::PI * 2f64.sqrt();
        let g = geo(1.0, r.exp());
        assert!((g.conformal_class() - 4.442882938158366).abs() < TOL);
        assert!((g.outer() / g.inner() - 85.01969522320722).abs() < 1e-10);
        assert!((geo(0.01, 1.0).conformal_class() - 100f64.ln()).abs() < TOL);
    }

    #[test]
    fn geometry_rejects_degenerate() {
        assert!(AnnulusGeometry::<f64>::new(0.0, 1.0, 2).is_err());
        assert!(AnnulusGeometry::<f64>::new(2.0, 1.0, 2).is_err());
        assert!(AnnulusGeometry::<f64>::new(1.0, f64::INFINITY, 2).is_err());
        assert!(AnnulusGeometry::<f64>::new(1.0, 2.0, 1).is_err());
    }

    #[test]
    fn threshold_problem1_values() {
        assert!((threshold_problem1(1.0f64).unwrap() - 4.442882938158366).abs() < TOL);
        assert!((threshold_problem1(2.5f64).unwrap() - 2.221441469079183).abs() < TOL);
        assert!((threshold_problem1(5.0f64).unwrap() - 1.480_960_979_386_122).abs() < TOL);
        assert!(threshold_problem1(0.5f64).is_err());
    }

    #[test]
    fn threshold_problem1_monotone_decreasing() {
        let mut prev = f64::INFINITY;
        for k in 1..=50 {
            let v = threshold_problem1(f64::from(k)).unwrap();
            assert!(v > 0.0 && v < prev);
            prev = v;
        }
    }

    #[test]
    fn threshold_unique_values() {
        // frozen from 40-digit evaluation of the displayed radical
        assert!((threshold_problem1_unique::<f64>(1).unwrap() - 7.076725159339432).abs() < TOL);
        assert!((threshold_problem1_unique::<f64>(2).unwrap() - 4.474400141671402).abs() < TOL);
        assert!((threshold_problem1_unique::<f64>(3).unwrap() - 3.916633086061337).abs() < TOL);
        let mut prev = f64::INFINITY;
        for m in 1..=50 {
            let v = threshold_problem1_unique::<f64>(m).unwrap();
            assert!(v < prev, "not decreasing at m={m}");
            prev = v;
        }
    }

    #[test]
    fn threshold_dim4_value() {
        let v = threshold_dim4::<f64>();
        assert!((v - 49.19999494895408).abs() < TOL);
        // strictly above the radial-switch constant pi sqrt(5/3)
        assert!(v > std::f64::consts::PI * (5f64 / 3.0).sqrt());
    }

    #[test]
    fn threshold_p2_assumption1_values() {
        let t11 = threshold_problem2_assumption1(1.0f64, 1).unwrap();
        assert!((t11 - 1.8405931148254463).abs() < TOL);
        let t13 = threshold_problem2_assumption1(1.0f64, 3).unwrap();
        assert!((t13 - 0.9233882358357564).abs() < TOL);
        assert!(t13 < t11, "decreasing in |n|");
        // m=2, n=0 is assumption II: no constraint
        assert_eq!(threshold_problem2_assumption1(2.0f64, 0).unwrap(), 0.0);
        // vanishes as |n| grows
        let t = threshold_problem2_assumption1(1.0f64, 60).unwrap();
        assert!(t > 0.0 && t < 0.06);
    }

    #[test]
    fn works_in_f32() {
        let g = AnnulusGeometry::<f32>::new(1.0, 10.0, 2).unwrap();
        assert!((g.conformal_class() - 10f32.ln()).abs() < 1e-6);
        assert!((threshold_problem1(1.0f32).unwrap() - 4.442883).abs() < 1e-5);
    }
}
