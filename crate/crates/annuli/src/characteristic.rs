//! Closed-form characteristic roots and root-regime classification.
//!
//! Every projected quartic here is a shifted biquadratic: its roots are
//! `shift +- s1` and `shift +- s2` where the separations `s1, s2` are square
//! roots of explicit radicals (real or imaginary, never fully complex except
//! in the `n = 0` quartet window of Problem II). Roots are always computed
//! from these closed forms, never from a generic quartic solver, so regime
//! boundaries are classified by exact algebraic comparisons.

use crate::error::{Error, Result};
use crate::scalar::{cst, Real};

/// Structure of the four characteristic roots.
///
/// `RealDistinct`, `Repeated` and `ComplexPair` are the generic regimes; the
/// remaining tags are the degenerate sub-cases of Problem II at `n = 0`
/// (and regime-boundary ties), consumed by the secular module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootRegime {
    /// `shift +- l1`, `shift +- l2`, with `l1 > l2 > 0`.
    RealDistinct,
    /// `l2 = 0`: `shift +- l1` and a double root at `shift`.
    Repeated,
    /// `l2 = 0` with an imaginary pair: `shift +- i l1` and `shift` double.
    RepeatedImagPair,
    /// `shift +- l1` real and `shift +- i l2`.
    ComplexPair,
    /// `shift +- l1 +- i l2` (all four sign combinations).
    ComplexQuartet,
    /// `shift +- i l1` and `shift +- i l2` with `0 <= l1 < l2`.
    ImaginaryPairs,
    /// `shift +- l1`, each double (`l2 = l1`).
    RepeatedReal,
    /// `shift +- i l1`, each double.
    RepeatedImaginary,
    /// `shift` with multiplicity four.
    Quadruple,
}

/// The root quadruple `shift +- s1, shift +- s2` of a projected quartic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootQuadruple<F> {
    pub shift: F,
    pub l1: F,
    pub l2: F,
    pub regime: RootRegime,
}

impl<F: Real> RootQuadruple<F> {
    /// The four roots as `(re, im)` pairs.
    pub fn roots(&self) -> [(F, F); 4] {
        let z = F::zero();
        let s = self.shift;
        match self.regime {
            RootRegime::RealDistinct | RootRegime::Repeated => [
                (s + self.l1, z),
                (s - self.l1, z),
                (s + self.l2, z),
                (s - self.l2, z),
            ],
            RootRegime::RepeatedImagPair => [(s, self.l1), (s, -self.l1), (s, z), (s, z)],
            RootRegime::ComplexPair => [
                (s + self.l1, z),
                (s - self.l1, z),
                (s, self.l2),
                (s, -self.l2),
            ],
            RootRegime::ComplexQuartet => [
                (s + self.l1, self.l2),
                (s + self.l1, -self.l2),
                (s - self.l1, self.l2),
                (s - self.l1, -self.l2),
            ],
            RootRegime::ImaginaryPairs => {
                [(s, self.l1), (s, -self.l1), (s, self.l2), (s, -self.l2)]
            }
            RootRegime::RepeatedReal => [
                (s + self.l1, z),
                (s - self.l1, z),
                (s + self.l1, z),
                (s - self.l1, z),
            ],
            RootRegime::RepeatedImaginary => {
                [(s, self.l1), (s, -self.l1), (s, self.l1), (s, -self.l1)]
            }
            RootRegime::Quadruple => [(s, z); 4],
        }
    }
}

fn nsq<F: Real>(n: i32) -> F {
    cst::<F>(f64::from(n) * f64::from(n))
}

/// Problem I, `d = 2`: biquadratic in `(x - 1)^2` with inner surd
/// `sqrt(lambda + 4 m^2 n^2)`; complex pair iff `lambda > (m^2 - n^2)^2`.
pub fn roots_problem1_d2<F: Real>(m: F, n: i32, lambda: F) -> Result<RootQuadruple<F>> {
    if lambda < F::zero() {
        return Err(Error::InvalidParameter(format!(
            "require lambda >= 0, got {lambda}"
        )));
    }
    let n2 = nsq::<F>(n);
    let c = m * m + n2;
    let inner = (lambda + cst::<F>(4.0) * m * m * n2).sqrt();
    let thr = {
        let t = m * m - n2;
        t * t
    };
    let shift = F::one();
    let l1 = (c + inner).sqrt();
    let l2 = (c - inner).abs().sqrt();
    let regime = if lambda == thr {
        RootRegime::Repeated
    } else if lambda > thr {
        RootRegime::ComplexPair
    } else if inner == F::zero() {
        // only reachable at m*n = 0, lambda = 0: the two surds coincide
        RootRegime::RepeatedReal
    } else {
        RootRegime::RealDistinct
    };
    let l2 = if regime == RootRegime::Repeated {
        F::zero()
    } else {
        l2
    };
    Ok(RootQuadruple {
        shift,
        l1,
        l2,
        regime,
    })
}

/// Bilaplacian Problem I in dimension `d >= 2`, mode `n >= 0`.
///
/// Separations `sqrt(k^2 + 1 +- sqrt(4k^2 + lambda))` about `-(d-4)/2`,
/// with `k = n + (d-2)/2`; complex pair iff
/// `lambda > (2n+d)^2 (2n+d-4)^2 / 16`. For `d = 2` this reduces to
/// [`roots_problem1_d2`] with `m = 1`.
pub fn roots_problem1_gen<F: Real>(d: u32, n: u32, lambda: F) -> Result<RootQuadruple<F>> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("require d >= 2, got {d}")));
    }
    if lambda < F::zero() {
        return Err(Error::InvalidParameter(format!(
            "require lambda >= 0, got {lambda}"
        )));
    }
    let two_k = cst::<F>(f64::from(2 * n + d - 2)); // 2n + d - 2 = 2k
    let k2 = two_k * two_k / cst::<F>(4.0);
    let shift = -(cst::<F>(f64::from(d)) - cst::<F>(4.0)) / cst::<F>(2.0);
    let inner = (two_k * two_k + lambda).sqrt();
    let c = k2 + F::one();
    let thr = {
        let t = k2 - F::one();
        t * t // = (2n+d)^2 (2n+d-4)^2 / 16
    };
    let l1 = (c + inner).sqrt();
    let l2 = (c - inner).abs().sqrt();
    let regime = if lambda == thr {
        RootRegime::Repeated
    } else if lambda > thr {
        RootRegime::ComplexPair
    } else if inner == F::zero() {
        RootRegime::RepeatedReal
    } else {
        RootRegime::RealDistinct
    };
    let l2 = if regime == RootRegime::Repeated {
        F::zero()
    } else {
        l2
    };
    Ok(RootQuadruple {
        shift,
        l1,
        l2,
        regime,
    })
}

/// Problem II, `d = 2`: separations from
/// `l^2 = (2(m^2+n^2) - mu +- sqrt(S)) / 2`, `S = mu^2 - 4(m^2-1) mu + 16 m^2 n^2`.
///
/// Complex pair iff `mu > (m^2-n^2)^2/(1+n^2)`. Negative `S` (the `n = 0`
/// window `0 < mu < 4(m^2-1)`, and its analogue for small `|n|`) yields the
/// complex quartet `1 +- alpha +- i beta`; between that window and the
/// complex-pair threshold the separations may both turn imaginary
/// (`ImaginaryPairs`). All cases are classified here; the secular module
/// picks the matching determinant.
pub fn roots_problem2_d2<F: Real>(m: F, n: i32, mu: F) -> Result<RootQuadruple<F>> {
    if mu < F::zero() {
        return Err(Error::InvalidParameter(format!(
            "require mu >= 0, got {mu}"
        )));
    }
    let n2 = nsq::<F>(n);
    let four = cst::<F>(4.0);
    let t0 = cst::<F>(2.0) * (m * m + n2) - mu;
    let s = mu * mu - four * (m * m - F::one()) * mu + cst::<F>(16.0) * m * m * n2;
    let thr = {
        let t = m * m - n2;
        t * t / (F::one() + n2)
    };
    let shift = F::one();
    let half = cst::<F>(0.5);

    if mu == thr {
        // l2 = 0 boundary; the remaining pair is real or imaginary by sign of t0
        return Ok(if t0 > F::zero() {
            RootQuadruple {
                shift,
                l1: t0.sqrt(),
                l2: F::zero(),
                regime: RootRegime::Repeated,
            }
        } else if t0 == F::zero() {
            RootQuadruple {
                shift,
                l1: F::zero(),
                l2: F::zero(),
                regime: RootRegime::Quadruple,
            }
        } else {
            RootQuadruple {
                shift,
                l1: (-t0).sqrt(),
                l2: F::zero(),
                regime: RootRegime::RepeatedImagPair,
            }
        });
    }

    if s < F::zero() {
        // l^2 complex-conjugate pair: roots 1 +- alpha +- i beta
        let w_abs = (thr - mu).sqrt() * (F::one() + n2).sqrt(); // |l^2| = sqrt((m^2-n^2)^2 - (n^2+1) mu)
        let alpha = ((w_abs + half * t0) * half).max(F::zero()).sqrt();
        let beta = ((w_abs - half * t0) * half).max(F::zero()).sqrt();
        return Ok(RootQuadruple {
            shift,
            l1: alpha,
            l2: beta,
            regime: if alpha == F::zero() {
                RootRegime::RepeatedImaginary
            } else if beta == F::zero() {
                RootRegime::RepeatedReal
            } else {
                RootRegime::ComplexQuartet
            },
        });
    }

    let inner = s.sqrt();
    let l1sq = half * (t0 + inner);
    let l2sq = half * (t0 - inner);
    Ok(if mu > thr {
        RootQuadruple {
            shift,
            l1: l1sq.max(F::zero()).sqrt(),
            l2: (-l2sq).max(F::zero()).sqrt(),
            regime: RootRegime::ComplexPair,
        }
    } else if t0 > F::zero() {
        if inner == F::zero() {
            RootQuadruple {
                shift,
                l1: l1sq.sqrt(),
                l2: l2sq.sqrt(),
                regime: RootRegime::RepeatedReal,
            }
        } else {
            RootQuadruple {
                shift,
                l1: l1sq.sqrt(),
                l2: l2sq.max(F::zero()).sqrt(),
                regime: RootRegime::RealDistinct,
            }
        }
    } else {
        // both separations imaginary; store smaller first
        RootQuadruple {
            shift,
            l1: (-l1sq).max(F::zero()).sqrt(),
            l2: (-l2sq).max(F::zero()).sqrt(),
            regime: if inner == F::zero() {
                RootRegime::RepeatedImaginary
            } else {
                RootRegime::ImaginaryPairs
            },
        }
    })
}

/// Problem II in dimension `d >= 3`: inner surd
/// `sqrt((mu - 2(d-2))^2 + 16 L)` (always real), separations about `-(d-4)/2`.
///
/// Complex pair iff `mu > (d(d-4) + 4L)^2 / (4((d-4)^2 + 4L))`,
/// `L = n(n+d-2)`. The pair `(d, n) = (4, 0)` is the exact case and is
/// rejected here.
pub fn roots_problem2_gen<F: Real>(d: u32, n: u32, mu: F) -> Result<RootQuadruple<F>> {
    if d < 3 {
        return Err(Error::InvalidParameter(format!("require d >= 3, got {d}")));
    }
    if d == 4 && n == 0 {
        return Err(Error::InvalidParameter(
            "d = 4, n = 0 is the exact case (mu0 = 4 + 4 pi^2/R^2); no root formula here".into(),
        ));
    }
    if mu < F::zero() {
        return Err(Error::InvalidParameter(format!(
            "require mu >= 0, got {mu}"
        )));
    }
    let df = cst::<F>(f64::from(d));
    let l = cst::<F>(f64::from(n) * f64::from(n + d - 2));
    let four = cst::<F>(4.0);
    let half = cst::<F>(0.5);
    let dm2 = df - cst::<F>(2.0);
    let dm4 = df - four;
    let g = dm2 * dm2 / four + F::one() + l;
    let shift = -dm4 / cst::<F>(2.0);
    let t0 = cst::<F>(2.0) * g - mu;
    let inner = {
        let t = mu - cst::<F>(2.0) * dm2;
        (t * t + cst::<F>(16.0) * l).sqrt()
    };
    let thr = {
        let num = df * dm4 + four * l;
        num * num / (four * (dm4 * dm4 + four * l))
    };
    let l1sq = half * (t0 + inner);
    let l2sq = half * (t0 - inner);
    Ok(if mu == thr {
        if t0 > F::zero() {
            RootQuadruple {
                shift,
                l1: t0.sqrt(),
                l2: F::zero(),
                regime: RootRegime::Repeated,
            }
        } else if t0 == F::zero() {
            RootQuadruple {
                shift,
                l1: F::zero(),
                l2: F::zero(),
                regime: RootRegime::Quadruple,
            }
        } else {
            RootQuadruple {
                shift,
                l1: (-t0).sqrt(),
                l2: F::zero(),
                regime: RootRegime::RepeatedImagPair,
            }
        }
    } else if mu > thr {
        RootQuadruple {
            shift,
            l1: l1sq.max(F::zero()).sqrt(),
            l2: (-l2sq).max(F::zero()).sqrt(),
            regime: RootRegime::ComplexPair,
        }
    } else if t0 > F::zero() {
        RootQuadruple {
            shift,
            l1: l1sq.sqrt(),
            l2: l2sq.max(F::zero()).sqrt(),
            regime: RootRegime::RealDistinct,
        }
    } else {
        RootQuadruple {
            shift,
            l1: (-l1sq).max(F::zero()).sqrt(),
            l2: (-l2sq).max(F::zero()).sqrt(),
            regime: RootRegime::ImaginaryPairs,
        }
    })
}
