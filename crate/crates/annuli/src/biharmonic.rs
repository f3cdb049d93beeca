//! Biharmonic functions on planar annuli via Laurent data, and the
//! closed-form weighted integrals behind the interpolation estimate.
//!
//! A biharmonic `psi` on an annulus splits as harmonic + `|z|^2` harmonic:
//!
//! `psi(z) = alpha log|z| + Re(sum a_n z^n) + |z|^2 (beta log|z| + Re(sum b_n z^n))`.
//!
//! Grouping by angular frequency `k` gives real radial profiles
//! `R_0(r)` and `C_k(r) cos k theta + S_k(r) sin k theta`, each a short
//! combination of `r^p log^j r` terms (`j <= 1`); every quadratic integral
//! is then a sum of elementary primitives `int r^p log^j r dr` (`j <= 2`),
//! evaluated analytically term by term. This exact reduction keeps the
//! conjugate-frequency cross terms (`a_n` against `a_{-n}` and so on) that a
//! per-coefficient bookkeeping would drop, so the closed forms agree with
//! adaptive quadrature of the defining integrals to rounding error.

use crate::error::{Error, Result};
use crate::geometry::AnnulusGeometry;
use crate::scalar::{cst, Real};
use num_complex::Complex;

/// Guard band around resonant weight exponents (`p + 1 = 0`).
const RESONANCE_GUARD: f64 = 1e-9;

/// Which relative weight multiplies an integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightSide {
    /// `(|x|/b)^sigma`.
    Outer,
    /// `(a/|x|)^sigma`.
    Inner,
}

/// Biharmonic function on an annulus, stored as truncated Laurent data.
#[derive(Debug, Clone, PartialEq)]
pub struct BiharmonicFun<F> {
    pub alpha: F,
    pub beta: F,
    n_max: usize,
    a_coeffs: Vec<Complex<F>>,
    b_coeffs: Vec<Complex<F>>,
}

impl<F: Real> BiharmonicFun<F> {
    pub fn new(n_max: usize) -> Self {
        let len = 2 * n_max + 1;
        Self {
            alpha: F::zero(),
            beta: F::zero(),
            n_max,
            a_coeffs: vec![Complex::new(F::zero(), F::zero()); len],
            b_coeffs: vec![Complex::new(F::zero(), F::zero()); len],
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    fn idx(&self, n: i32) -> Option<usize> {
        let shifted = n + self.n_max as i32;
        (shifted >= 0 && shifted < self.a_coeffs.len() as i32).then_some(shifted as usize)
    }

    pub fn a(&self, n: i32) -> Complex<F> {
        self.idx(n)
            .map_or(Complex::new(F::zero(), F::zero()), |i| self.a_coeffs[i])
    }

    pub fn b(&self, n: i32) -> Complex<F> {
        self.idx(n)
            .map_or(Complex::new(F::zero(), F::zero()), |i| self.b_coeffs[i])
    }

    pub fn set_a(&mut self, n: i32, v: Complex<F>) -> Result<()> {
        let i = self.idx(n).ok_or_else(|| {
            Error::InvalidParameter(format!("coefficient index {n} beyond truncation"))
        })?;
        self.a_coeffs[i] = v;
        Ok(())
    }

    pub fn set_b(&mut self, n: i32, v: Complex<F>) -> Result<()> {
        let i = self.idx(n).ok_or_else(|| {
            Error::InvalidParameter(format!("coefficient index {n} beyond truncation"))
        })?;
        self.b_coeffs[i] = v;
        Ok(())
    }

    /// Data of `psi(. / s)` on the rescaled annulus `(sa, sb)`; every report
    /// in this module is invariant under `(a, b, psi) -> (sa, sb, psi(./s))`.
    pub fn rescale(&self, s: F) -> Self {
        let mut out = Self::new(self.n_max);
        out.alpha = self.alpha;
        out.beta = self.beta / (s * s);
        let ls = s.ln();
        for n in -(self.n_max as i32)..=(self.n_max as i32) {
            let pw = (-cst::<F>(f64::from(n)) * ls).exp();
            out.set_a(n, self.a(n) * Complex::new(pw, F::zero()))
                .unwrap();
            let pw_b = (-(cst::<F>(f64::from(n)) + cst::<F>(2.0)) * ls).exp();
            out.set_b(n, self.b(n) * Complex::new(pw_b, F::zero()))
                .unwrap();
        }
        // log |z/s| shifts the constant harmonic parts
        let da = -self.alpha * ls;
        let db = -self.beta * ls / (s * s);
        let a0 = out.a(0) + Complex::new(da, F::zero());
        let b0 = out.b(0) + Complex::new(db, F::zero());
        out.set_a(0, a0).unwrap();
        out.set_b(0, b0).unwrap();
        out
    }

    /// Pointwise value at `(r, theta)`.
    pub fn eval(&self, r: F, theta: F) -> F {
        let lr = r.ln();
        let mut v = self.alpha * lr + r * r * self.beta * lr;
        for n in -(self.n_max as i32)..=(self.n_max as i32) {
            let nf = cst::<F>(f64::from(n));
            let rn = (nf * lr).exp();
            let (c, s) = ((nf * theta).cos(), (nf * theta).sin());
            let a = self.a(n);
            let b = self.b(n);
            v += rn * (a.re * c - a.im * s) + r * r * rn * (b.re * c - b.im * s);
        }
        v
    }

    /// Pointwise Laplacian `4 beta (log r + 1) + 4 Re(sum (n+1) b_n z^n)`.
    pub fn laplacian(&self, r: F, theta: F) -> F {
        let lr = r.ln();
        let mut v = cst::<F>(4.0) * self.beta * (lr + F::one());
        for n in -(self.n_max as i32)..=(self.n_max as i32) {
            let nf = cst::<F>(f64::from(n));
            let rn = (nf * lr).exp();
            let (c, s) = ((nf * theta).cos(), (nf * theta).sin());
            let b = self.b(n);
            v += cst::<F>(4.0) * (nf + F::one()) * rn * (b.re * c - b.im * s);
        }
        v
    }

    /// Pointwise `|grad psi|^2 = (d_r psi)^2 + (d_theta psi)^2 / r^2`.
    pub fn grad_sq(&self, r: F, theta: F) -> F {
        let lr = r.ln();
        let mut dr = self.alpha / r + self.beta * (cst::<F>(2.0) * r * lr + r);
        let mut dt = F::zero();
        for n in -(self.n_max as i32)..=(self.n_max as i32) {
            let nf = cst::<F>(f64::from(n));
            let rn = (nf * lr).exp();
            let (c, s) = ((nf * theta).cos(), (nf * theta).sin());
            let a = self.a(n);
            let b = self.b(n);
            let ang_a = a.re * c - a.im * s;
            let ang_b = b.re * c - b.im * s;
            let dang_a = -a.re * s - a.im * c; // d/d theta of (re cos - im sin) / n
            let dang_b = -b.re * s - b.im * c;
            dr += nf * rn / r * ang_a + (nf + cst::<F>(2.0)) * r * rn * ang_b;
            dt += nf * rn * dang_a + nf * r * r * rn * dang_b;
        }
        dr * dr + dt * dt / (r * r)
    }

    /// Pointwise `4 |d_z^2 psi|^2 = |W|^2 / r^4` with
    /// `W = -alpha + beta r^2 + sum n(n-1) a_n z^n + r^2 sum n(n+1) b_n z^n`.
    pub fn four_dz2_sq(&self, r: F, theta: F) -> F {
        let lr = r.ln();
        let mut w = Complex::new(-self.alpha + self.beta * r * r, F::zero());
        for n in -(self.n_max as i32)..=(self.n_max as i32) {
            let nf = cst::<F>(f64::from(n));
            let rn = (nf * lr).exp();
            let zn =
                Complex::new((nf * theta).cos(), (nf * theta).sin()) * Complex::new(rn, F::zero());
            w += self.a(n) * zn * Complex::new(nf * (nf - F::one()), F::zero());
            w += self.b(n) * zn * Complex::new(nf * (nf + F::one()) * r * r, F::zero());
        }
        w.norm_sqr() / (r * r * r * r)
    }
}

// ---------------------------------------------------------------------------
// log-polynomial machinery: finite sums  sum c r^p log^j r  (j <= 2)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
struct Term<F> {
    c: F,
    p: F,
    j: usize,
}

#[derive(Debug, Clone)]
struct LogPoly<F> {
    terms: Vec<Term<F>>,
}

impl<F: Real> LogPoly<F> {
    fn new() -> Self {
        Self { terms: Vec::new() }
    }

    fn push(&mut self, c: F, p: F, j: usize) {
        if c != F::zero() {
            self.terms.push(Term { c, p, j });
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for t in &self.terms {
            for u in &other.terms {
                out.push(t.c * u.c, t.p + u.p, t.j + u.j);
            }
        }
        out
    }

    /// d/dr.
    fn derivative(&self) -> Self {
        let mut out = Self::new();
        for t in &self.terms {
            out.push(t.c * t.p, t.p - F::one(), t.j);
            if t.j > 0 {
                out.push(t.c * cst::<F>(t.j as f64), t.p - F::one(), t.j - 1);
            }
        }
        out
    }

    /// Multiply by `r^s`.
    fn shift(&self, s: F) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    c: t.c,
                    p: t.p + s,
                    j: t.j,
                })
                .collect(),
        }
    }

    fn scale(&self, s: F) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    c: t.c * s,
                    p: t.p,
                    j: t.j,
                })
                .collect(),
        }
    }
}

/// Exact `int_a^b r^p log^j r dr`.
fn primitive<F: Real>(a: F, b: F, p: F, j: usize) -> Result<F> {
    let q = p + F::one();
    if q == F::zero() {
        let (la, lb) = (a.ln(), b.ln());
        return Ok(match j {
            0 => lb - la,
            1 => (lb * lb - la * la) / cst::<F>(2.0),
            _ => (lb * lb * lb - la * la * la) / cst::<F>(3.0),
        });
    }
    if q.abs() < cst::<F>(RESONANCE_GUARD) {
        return Err(Error::ResonantExponent(q.to_f64().unwrap_or(f64::NAN)));
    }
    let (la, lb) = (a.ln(), b.ln());
    let (ea, eb) = ((q * la).exp(), (q * lb).exp());
    let i0 = (eb - ea) / q;
    if j == 0 {
        return Ok(i0);
    }
    let i1 = (eb * lb - ea * la) / q - i0 / q;
    if j == 1 {
        return Ok(i1);
    }
    Ok((eb * lb * lb - ea * la * la) / q - cst::<F>(2.0) * i1 / q)
}

fn integrate<F: Real>(lp: &LogPoly<F>, a: F, b: F) -> Result<F> {
    let mut acc = F::zero();
    for t in &lp.terms {
        acc += t.c * primitive(a, b, t.p, t.j)?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// frequency-grouped radial profiles
// ---------------------------------------------------------------------------

struct Profiles<F> {
    r0: LogPoly<F>,
    /// `(C_k, S_k)` for k = 1..=n_max (`|z|^2` shifts radial powers, not
    /// angular frequencies, so the `b` part stays within the truncation).
    cs: Vec<(LogPoly<F>, LogPoly<F>)>,
}

fn profiles<F: Real>(f: &BiharmonicFun<F>) -> Profiles<F> {
    let nm = f.n_max() as i32;
    let mut r0 = LogPoly::new();
    r0.push(f.alpha, F::zero(), 1);
    r0.push(f.a(0).re, F::zero(), 0);
    r0.push(f.beta, cst(2.0), 1);
    r0.push(f.b(0).re, cst(2.0), 0);
    let mut cs = Vec::new();
    for k in 1..=nm {
        let kf = cst::<F>(f64::from(k));
        let mut c = LogPoly::new();
        let mut s = LogPoly::new();
        let (ap, am) = (f.a(k), f.a(-k));
        let (bp, bm) = (f.b(k), f.b(-k));
        c.push(ap.re, kf, 0);
        c.push(am.re, -kf, 0);
        c.push(bp.re, kf + cst(2.0), 0);
        c.push(bm.re, -kf + cst(2.0), 0);
        s.push(-ap.im, kf, 0);
        s.push(am.im, -kf, 0);
        s.push(-bp.im, kf + cst(2.0), 0);
        s.push(bm.im, -kf + cst(2.0), 0);
        cs.push((c, s));
    }
    Profiles { r0, cs }
}

fn lap_profiles<F: Real>(f: &BiharmonicFun<F>) -> Profiles<F> {
    let nm = f.n_max() as i32;
    let four = cst::<F>(4.0);
    let mut r0 = LogPoly::new();
    r0.push(four * f.beta, F::zero(), 1);
    r0.push(four * (f.beta + f.b(0).re), F::zero(), 0);
    let mut cs = Vec::new();
    for k in 1..=nm {
        let kf = cst::<F>(f64::from(k));
        let mut c = LogPoly::new();
        let mut s = LogPoly::new();
        let (bp, bm) = (f.b(k), f.b(-k));
        c.push(four * (kf + F::one()) * bp.re, kf, 0);
        c.push(four * (F::one() - kf) * bm.re, -kf, 0);
        s.push(-four * (kf + F::one()) * bp.im, kf, 0);
        s.push(four * (F::one() - kf) * bm.im, -kf, 0);
        cs.push((c, s));
    }
    Profiles { r0, cs }
}

/// The six closed-form integrals of [`weighted_norms`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedNorms<F> {
    /// `int |grad psi|^2 / |x|^2 * w^{2 gamma} dx`.
    pub grad_weighted: F,
    /// `int psi^2 / |x|^4 * w^{4 gamma} dx`.
    pub sq_weighted: F,
    /// `int (Delta psi)^2 dx`.
    pub laplacian_sq: F,
    /// `int 4 |d_z^2 psi|^2 dx`.
    pub four_dz2_sq: F,
    /// `int |grad^2 psi|^2 dx = (1/2) int 4|d_z^2|^2 + (1/8) int (Delta)^2`.
    pub hessian_sq: F,
    /// `2 int |d_z d_zbar psi|^2 dx = (1/8) int (Delta psi)^2 dx`.
    pub mixed_sq: F,
}

fn weight_shift<F: Real>(g: &AnnulusGeometry<F>, side: WeightSide, sigma: F) -> (F, F) {
    // (r/b)^sigma = b^{-sigma} r^{sigma}; (a/r)^sigma = a^{sigma} r^{-sigma}
    match side {
        WeightSide::Outer => (sigma, (-sigma * g.outer().ln()).exp()),
        WeightSide::Inner => (-sigma, (sigma * g.inner().ln()).exp()),
    }
}

fn angular_sum<F: Real>(
    pr: &Profiles<F>,
    map: impl Fn(&LogPoly<F>, i32) -> LogPoly<F>,
    a: F,
    b: F,
) -> Result<F> {
    let two_pi = cst::<F>(2.0) * F::PI();
    let pi = F::PI();
    let mut acc = two_pi * integrate(&map(&pr.r0, 0), a, b)?;
    for (k, (c, s)) in pr.cs.iter().enumerate() {
        let kk = k as i32 + 1;
        acc += pi * (integrate(&map(c, kk), a, b)? + integrate(&map(s, kk), a, b)?);
    }
    Ok(acc)
}

/// Per-frequency blocks of `int psi^2/|x|^4 w^{4 gamma} dx` (each the
/// integral of a squared quantity, hence nonnegative).
pub fn psi_sq_frequency_blocks<F: Real>(
    f: &BiharmonicFun<F>,
    g: &AnnulusGeometry<F>,
    gamma: F,
    side: WeightSide,
) -> Result<Vec<F>> {
    let (shift, scale) = weight_shift(g, side, cst::<F>(4.0) * gamma);
    let pr = profiles(f);
    let (a, b) = (g.inner(), g.outer());
    let measure = shift - cst::<F>(3.0); // /r^4 * w * r dr
    let two_pi = cst::<F>(2.0) * F::PI();
    let pi = F::PI();
    let mut blocks = vec![two_pi * scale * integrate(&pr.r0.mul(&pr.r0).shift(measure), a, b)?];
    for (c, s) in &pr.cs {
        let v =
            integrate(&c.mul(c).shift(measure), a, b)? + integrate(&s.mul(s).shift(measure), a, b)?;
        blocks.push(pi * scale * v);
    }
    Ok(blocks)
}

/// The six closed-form integrals: weighted gradient (`w^{2 gamma}`),
/// weighted square (`w^{4 gamma}`), and the three unweighted second-order
/// energies. `gamma` within `1e-9` of a resonant exponent is rejected.
pub fn weighted_norms<F: Real>(
    f: &BiharmonicFun<F>,
    g: &AnnulusGeometry<F>,
    gamma: F,
    side: WeightSide,
) -> Result<WeightedNorms<F>> {
    let (a, b) = (g.inner(), g.outer());
    let pr = profiles(f);

    // int psi^2 / r^4 w^{4 gamma}
    let (shift4, scale4) = weight_shift(g, side, cst::<F>(4.0) * gamma);
    let sq_weighted =
        scale4 * angular_sum(&pr, |lp, _| lp.mul(lp).shift(shift4 - cst::<F>(3.0)), a, b)?;

    // int |grad psi|^2 / r^2 w^{2 gamma}:
    // (C')^2 + (S')^2 + k^2/r^2 (C^2 + S^2), measure w r^{-1} dr
    let (shift2, scale2) = weight_shift(g, side, cst::<F>(2.0) * gamma);
    let grad_weighted = scale2
        * angular_sum(
            &pr,
            |lp, k| {
                let d = lp.derivative();
                let mut total = d.mul(&d);
                if k != 0 {
                    let k2 = cst::<F>(f64::from(k) * f64::from(k));
                    for t in lp.mul(lp).scale(k2).shift(cst(-2.0)).terms {
                        total.terms.push(t);
                    }
                }
                total.shift(shift2 - F::one())
            },
            a,
            b,
        )?;

    // int (Delta psi)^2 dx (measure r dr)
    let lp_lap = lap_profiles(f);
    let laplacian_sq = angular_sum(&lp_lap, |lp, _| lp.mul(lp).shift(F::one()), a, b)?;

    // int 4 |dz^2 psi|^2 = 2 pi int sum_j |w_j|^2 r^{-3} dr
    let nm = f.n_max() as i32;
    let mut four_dz2_sq = F::zero();
    for idx in -nm..=nm {
        let nf = cst::<F>(f64::from(idx));
        // complex terms (coef, power) of w_j
        let mut terms: Vec<(Complex<F>, F)> = Vec::new();
        let ca = f.a(idx) * Complex::new(nf * (nf - F::one()), F::zero());
        if ca.norm_sqr() != F::zero() {
            terms.push((ca, nf));
        }
        let cb = f.b(idx) * Complex::new(nf * (nf + F::one()), F::zero());
        if cb.norm_sqr() != F::zero() {
            terms.push((cb, nf + cst(2.0)));
        }
        if idx == 0 {
            if f.alpha != F::zero() {
                terms.push((Complex::new(-f.alpha, F::zero()), F::zero()));
            }
            if f.beta != F::zero() {
                terms.push((Complex::new(f.beta, F::zero()), cst(2.0)));
            }
        }
        let mut lp = LogPoly::new();
        for i in 0..terms.len() {
            let (ci, pi_) = terms[i];
            lp.push(ci.norm_sqr(), pi_ + pi_, 0);
            for &(cj, pj) in terms.iter().skip(i + 1) {
                let cross = cst::<F>(2.0) * (ci * cj.conj()).re;
                lp.push(cross, pi_ + pj, 0);
            }
        }
        four_dz2_sq += cst::<F>(2.0) * F::PI() * integrate(&lp.shift(cst(-3.0)), a, b)?;
    }

    let hessian_sq = cst::<F>(0.5) * four_dz2_sq + cst::<F>(0.125) * laplacian_sq;
    let mixed_sq = cst::<F>(0.125) * laplacian_sq;
    Ok(WeightedNorms {
        grad_weighted,
        sq_weighted,
        laplacian_sq,
        four_dz2_sq,
        hessian_sq,
        mixed_sq,
    })
}

/// Conformal-class hypothesis of the interpolation theorem: the five-term
/// max over `{2, log(4 beta)/(2 beta - 1), log(2/(2 - sqrt 3))/(4 beta),
/// log(1 + 8 beta (1-beta)/(2 beta - 1)^2)/(4(1-beta)),
/// log(8 beta (beta+1))/(4 beta)}`.
pub fn interpolation_hypothesis_bound<F: Real>(beta: F) -> F {
    let one = F::one();
    let two = cst::<F>(2.0);
    let four = cst::<F>(4.0);
    let t1 = two;
    let t2 = (four * beta).ln() / (two * beta - one);
    let t3 = (two / (two - cst::<F>(3.0).sqrt())).ln() / (four * beta);
    let w = two * beta - one;
    let t4 = (one + cst::<F>(8.0) * beta * (one - beta) / (w * w)).ln() / (four * (one - beta));
    let t5 = (cst::<F>(8.0) * beta * (beta + one)).ln() / (four * beta);
    t1.max(t2).max(t3).max(t4).max(t5)
}

/// Interpolation-inequality report for one biharmonic instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationReport<F> {
    /// `int |grad psi|^2/|x|^2 ((|x|/b)^{2 gamma} + (a/|x|)^{2 gamma})`.
    pub lhs: F,
    /// Right-hand side with `Gamma = 1`:
    /// `(1/(gamma(1-gamma))) (1/(1 - 2 (a/b)^{4 beta})) (weighted square + hessian)`.
    pub rhs: F,
    /// `lhs / rhs`: the smallest constant `Gamma` making the inequality hold.
    pub gamma_effective: F,
    /// Whether the conformal-class hypothesis held (computed regardless).
    pub hypothesis_ok: bool,
}

/// Evaluate both sides of the biharmonic interpolation inequality via the
/// closed forms, reporting the effective constant.
pub fn check_interpolation<F: Real>(
    f: &BiharmonicFun<F>,
    g: &AnnulusGeometry<F>,
    beta: F,
    gamma: F,
) -> Result<InterpolationReport<F>> {
    let big_r = g.conformal_class();
    let hypothesis_ok = big_r >= interpolation_hypothesis_bound(beta);
    let outer_g = weighted_norms(f, g, gamma, WeightSide::Outer)?;
    let inner_g = weighted_norms(f, g, gamma, WeightSide::Inner)?;
    let outer_b = weighted_norms(f, g, beta, WeightSide::Outer)?;
    let inner_b = weighted_norms(f, g, beta, WeightSide::Inner)?;
    let lhs = outer_g.grad_weighted + inner_g.grad_weighted;
    let ratio_ab = (g.inner() / g.outer()).powf(cst::<F>(4.0) * beta);
    let denom = F::one() - cst::<F>(2.0) * ratio_ab;
    if denom <= F::zero() {
        return Err(Error::HypothesisViolated(
            "1 - 2 (a/b)^{4 beta} <= 0".into(),
        ));
    }
    let bracket = outer_b.sq_weighted + inner_b.sq_weighted + outer_b.hessian_sq;
    let rhs = bracket / (gamma * (F::one() - gamma)) / denom;
    Ok(InterpolationReport {
        lhs,
        rhs,
        gamma_effective: lhs / rhs,
        hypothesis_ok,
    })
}
