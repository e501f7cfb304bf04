//! Almost-analytic extension of the Fourier transform of a strip-analytic test
//! function, its `dbar` bounds, and the Stokes pairing of a half-plane analytic
//! function with such an extension.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, precondition, Error, ErrorSlot, Result};
use crate::quad::{integrate_decaying, integrate_with_breaks, Domain, Envelope, QuadConfig};
use crate::spaces::TestFunction;
use crate::transforms::fourier_strip;
use crate::verdict::{ConditionVerdict, Status};
use crate::weights::{exp_gap_integral, inverse_derivative, inverse_derivative_prime, young_conjugate, Weight, WeightKind};
use crate::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);
/// Drop in `log |integrand|` below the peak at which the integration range is cut.
const CUT_LOG: f64 = 42.0;

fn ext_cfg() -> QuadConfig {
    QuadConfig::with_tol(1e-14, 1e-12)
}

/// `Psi(zeta) = int_{-H(|eta|)}^{H(|eta|)} phi(x + i kappa) e^{-i (x + i kappa) zeta} dx`
/// with `kappa = k` for `xi <= 0`, `-k` for `xi > 0`, and `H = (omega')^{-1}`;
/// on the real axis `Psi = phi^`.
#[derive(Clone)]
pub struct AlmostAnalyticExt {
    phi: TestFunction,
    omega: Weight,
    sigma: Weight,
    k: f64,
    /// `sup_{x, y = +-k} |phi(x + iy)| e^{omega(x)}`.
    norm_omega: f64,
    /// Same with `sigma`.
    norm_sigma: f64,
    /// `2 int_0^inf e^{omega - sigma}`.
    c_sigma: f64,
}

impl fmt::Debug for AlmostAnalyticExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlmostAnalyticExt")
            .field("phi", &self.phi.to_string())
            .field("omega", &self.omega.label())
            .field("sigma", &self.sigma.label())
            .field("k", &self.k)
            .finish()
    }
}

fn grows_at_least_linearly(w: &Weight) -> bool {
    match w.kind() {
        WeightKind::Linear | WeightKind::Exp | WeightKind::ExpLog { .. } | WeightKind::ExpOverLog { .. } => true,
        WeightKind::Power { s } => *s >= 1.0,
        WeightKind::Dilated { inner, .. } | WeightKind::Multiple { inner, .. } => grows_at_least_linearly(inner),
        _ => false,
    }
}

/// `sup_x |phi(x +- ik)| e^{w(x)}` by grid doubling and golden refinement.
fn line_norm(phi: &TestFunction, w: &Weight, k: f64) -> Result<f64> {
    let c = phi.center();
    let g = |x: f64| -> Result<f64> {
        let a = phi.log_modulus(Complex64::new(x, k))?.max(phi.log_modulus(Complex64::new(x, -k))?);
        Ok(a + w.eval(x))
    };
    let sample = |lo: f64, hi: f64| -> Result<(f64, f64)> {
        let n = 257;
        let xs: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
        let vals: Vec<f64> = xs.par_iter().map(|&x| g(x)).collect::<Result<_>>()?;
        Ok(xs.iter().zip(&vals).fold((c, f64::NEG_INFINITY), |acc, (&x, &v)| if v > acc.1 { (x, v) } else { acc }))
    };
    let mut r = 8.0;
    let (mut bx, mut best) = sample(c - r, c + r)?;
    let mut rises = 0;
    loop {
        let (l, lv) = sample(c - 2.0 * r, c - r)?;
        let (u, uv) = sample(c + r, c + 2.0 * r)?;
        r *= 2.0;
        let (ax, av) = if lv > uv { (l, lv) } else { (u, uv) };
        if av > best {
            bx = ax;
            best = av;
            rises += 1;
            if rises >= 3 || r > 1e6 {
                return Err(precondition(format!("{phi} has no finite norm for {} on Im z = +-{k}", w.label())));
            }
        } else {
            rises = 0;
            if av < best - 2.0 || r > 1e6 {
                break;
            }
        }
    }
    let f = |x: f64| g(x).unwrap_or(f64::NEG_INFINITY);
    let d = 2.0 * r / 256.0;
    let (mut lo, mut hi) = (bx - d, bx + d);
    let gr = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..80 {
        let p = hi - gr * (hi - lo);
        let q = lo + gr * (hi - lo);
        if f(p) >= f(q) {
            hi = q;
        } else {
            lo = p;
        }
    }
    Ok(best.max(f(0.5 * (lo + hi))).exp())
}

/// Builds the extension for `phi` on `|Im z| < h` with shift `0 < k < h`;
/// `omega` must be a smooth strictly concave `o(t)` weight, `sigma` defaults to `|t|`.
pub fn build_extension(phi: &TestFunction, omega: &Weight, k: f64) -> Result<AlmostAnalyticExt> {
    build_extension_with(phi, omega, &Weight::linear(), k)
}

pub fn build_extension_with(phi: &TestFunction, omega: &Weight, sigma: &Weight, k: f64) -> Result<AlmostAnalyticExt> {
    if !(k > 0.0) {
        return Err(invalid("contour shift k must be positive"));
    }
    if !(k < phi.half_width()) {
        return Err(precondition(format!("shift {k} is not below the strip half-width {}", phi.half_width())));
    }
    if !omega.tags().smooth_concave {
        return Err(precondition(format!("{} is not a smooth strictly concave catalog weight", omega.label())));
    }
    if omega.tags().little_o != Some(true) {
        return Err(precondition(format!("{} is not o(t)", omega.label())));
    }
    if !grows_at_least_linearly(sigma) {
        return Err(precondition(format!("int t e^(omega - sigma) dt is not certified finite for sigma = {}", sigma.label())));
    }
    inverse_derivative(omega, 1.0)?;
    let (norm_omega, norm_sigma) = if phi.is_zero() { (0.0, 0.0) } else { (line_norm(phi, omega, k)?, line_norm(phi, sigma, k)?) };
    let c_sigma = 2.0 * exp_gap_integral(omega, sigma, 0.5)?;
    Ok(AlmostAnalyticExt { phi: phi.clone(), omega: omega.clone(), sigma: sigma.clone(), k, norm_omega, norm_sigma, c_sigma })
}

impl AlmostAnalyticExt {
    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn phi(&self) -> &TestFunction {
        &self.phi
    }

    pub fn omega(&self) -> &Weight {
        &self.omega
    }

    pub fn norm_omega(&self) -> f64 {
        self.norm_omega
    }

    pub fn norm_sigma(&self) -> f64 {
        self.norm_sigma
    }

    /// `C = 2 int_0^inf e^{omega - sigma} dt`.
    pub fn constant(&self) -> f64 {
        self.c_sigma
    }

    /// `H(|eta|)`, infinite on the real axis.
    pub fn cutoff(&self, eta: f64) -> Result<f64> {
        if eta == 0.0 {
            return Ok(f64::INFINITY);
        }
        inverse_derivative(&self.omega, eta.abs())
    }

    fn kappa(&self, xi: f64) -> f64 {
        if xi <= 0.0 {
            self.k
        } else {
            -self.k
        }
    }

    fn integrand(&self, x: f64, kappa: f64, zeta: Complex64) -> Result<Complex64> {
        let z = Complex64::new(x, kappa);
        Ok(self.phi.eval(z)? * (-I * z * zeta).exp())
    }

    fn log_integrand(&self, x: f64, kappa: f64, zeta: Complex64) -> Result<f64> {
        Ok(self.phi.log_modulus(Complex64::new(x, kappa))? + x * zeta.im + kappa * zeta.re)
    }

    /// Radius beyond which the integrand is negligible, capped at `cap`.
    fn reach(&self, kappa: f64, zeta: Complex64, cap: f64) -> Result<(f64, f64)> {
        let c = self.phi.center();
        let peak_x = c + 2.0 * zeta.im;
        let peak = self.log_integrand(c, kappa, zeta)?.max(self.log_integrand(peak_x, kappa, zeta)?);
        let mut lo = 4.0f64;
        while lo < cap && self.log_integrand(c - lo, kappa, zeta)? > peak - CUT_LOG {
            lo *= 2.0;
        }
        let mut hi = 4.0f64;
        while hi < cap && self.log_integrand(c + hi, kappa, zeta)? > peak - CUT_LOG {
            hi *= 2.0;
        }
        Ok(((c - lo).max(-cap), (c + hi).min(cap)))
    }

    /// `Psi(zeta)`.
    pub fn eval(&self, zeta: Complex64) -> Result<Complex64> {
        if self.phi.is_zero() {
            return Ok(ZERO);
        }
        if zeta.im == 0.0 {
            return fourier_strip(&self.phi, self.k, zeta.re, &ext_cfg());
        }
        self.eval_branch(zeta, self.kappa(zeta.re))
    }

    /// Difference of the two branches at `i eta`: the truncated integrals along
    /// `Im z = k` and `Im z = -k` differ by the vertical sides at `x = +-H(|eta|)`.
    pub fn branch_jump(&self, eta: f64) -> Result<Complex64> {
        if eta == 0.0 || self.phi.is_zero() {
            return Ok(ZERO);
        }
        let z = Complex64::new(0.0, eta);
        Ok(self.eval_branch(z, self.k)? - self.eval_branch(z, -self.k)?)
    }

    fn eval_branch(&self, zeta: Complex64, kappa: f64) -> Result<Complex64> {
        let cap = self.cutoff(zeta.im)?;
        let (lo, hi) = self.reach(kappa, zeta, cap)?;
        let c = self.phi.center();
        let mut breaks = vec![c, c + 2.0 * zeta.im];
        let mut s = 2.0;
        while c + s < hi || c - s > lo {
            breaks.push(c + s);
            breaks.push(c - s);
            s *= 2.0;
        }
        breaks.retain(|b| *b > lo && *b < hi);
        breaks.sort_by(f64::total_cmp);
        let slot = ErrorSlot::new();
        let f = |x: f64| slot.take_or(self.integrand(x, kappa, zeta), ZERO);
        let v = integrate_with_breaks(&f, lo, hi, &breaks, &ext_cfg().for_frequency(zeta.re));
        slot.finish(v.map(|e| e.value))
    }

    /// `dbar Psi(zeta) = (i/2) d/d eta [H(|eta|)] (g(H) + g(-H))`, `g` the integrand;
    /// zero on the real axis.
    pub fn dbar(&self, zeta: Complex64) -> Result<Complex64> {
        if zeta.im == 0.0 || self.phi.is_zero() {
            return Ok(ZERO);
        }
        let eta = zeta.im;
        let h = self.cutoff(eta)?;
        let dh = eta.signum() * inverse_derivative_prime(&self.omega, eta.abs())?;
        let kappa = self.kappa(zeta.re);
        let ends = self.integrand(h, kappa, zeta)? + self.integrand(-h, kappa, zeta)?;
        let v = 0.5 * I * dh * ends;
        Ok(if v.is_finite() { v } else { ZERO })
    }

    /// `|(omega*)''(|eta|)| e^{-omega*(|eta|)} = |H'(|eta|)| e^{-omega*(|eta|)}`.
    fn dbar_profile(&self, eta: f64) -> Result<f64> {
        let s = eta.abs();
        Ok(inverse_derivative_prime(&self.omega, s)?.abs() * (-young_conjugate(&self.omega, s)?).exp())
    }

    /// Right-hand side of the `dbar` bound.
    pub fn dbar_bound(&self, zeta: Complex64) -> Result<f64> {
        if zeta.im == 0.0 {
            return Ok(0.0);
        }
        Ok(self.norm_omega * (-self.k * zeta.re.abs()).exp() * self.dbar_profile(zeta.im)?)
    }

    /// Right-hand side of the bound on `|Psi|`.
    pub fn value_bound(&self, zeta: Complex64) -> f64 {
        self.c_sigma * self.norm_sigma * (-self.k * zeta.re.abs()).exp()
    }
}

/// Grid for [`check_extension_bounds`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtensionGrid {
    pub xi_max: f64,
    pub n_xi: usize,
    pub eta_max: f64,
    pub n_eta: usize,
}

impl Default for ExtensionGrid {
    fn default() -> Self {
        ExtensionGrid { xi_max: 20.0, n_xi: 40, eta_max: 5.0, n_eta: 20 }
    }
}

/// Checks both extension bounds at every grid point `(xi, +-eta)`.
pub fn check_extension_bounds(e: &AlmostAnalyticExt, grid: &ExtensionGrid) -> Result<ConditionVerdict> {
    if grid.n_xi < 2 || grid.n_eta < 1 {
        return Err(invalid("extension grid needs at least 2 x 1 points"));
    }
    let mut points = Vec::new();
    for i in 0..grid.n_xi {
        let xi = -grid.xi_max + 2.0 * grid.xi_max * i as f64 / (grid.n_xi - 1) as f64;
        for j in 1..=grid.n_eta {
            let eta = grid.eta_max * j as f64 / grid.n_eta as f64;
            points.push(Complex64::new(xi, eta));
            points.push(Complex64::new(xi, -eta));
        }
    }
    let range = grid.xi_max.max(grid.eta_max);
    if e.phi.is_zero() {
        return Ok(ConditionVerdict::holds(range).with_note("zero function"));
    }
    let rows: Vec<(f64, f64)> = points
        .par_iter()
        .map(|&z| -> Result<(f64, f64)> {
            let r1 = ratio(e.dbar(z)?.norm(), e.dbar_bound(z)?);
            let r2 = ratio(e.eval(z)?.norm(), e.value_bound(z));
            Ok((r1, r2))
        })
        .collect::<Result<_>>()?;
    let (mut w1, mut w2) = ((0usize, 0.0f64), (0usize, 0.0f64));
    for (i, &(a, b)) in rows.iter().enumerate() {
        if a > w1.1 {
            w1 = (i, a);
        }
        if b > w2.1 {
            w2 = (i, b);
        }
    }
    let tol = 1.0 + 1e-9;
    let (status, at) = if w1.1 > tol {
        (Status::Fails, points[w1.0])
    } else if w2.1 > tol {
        (Status::Fails, points[w2.0])
    } else {
        (Status::NumericallySupported, points[w1.0])
    };
    Ok(ConditionVerdict::new(status, range)
        .with("max_dbar_ratio", w1.1)
        .with("max_value_ratio", w2.1)
        .with("xi", at.re)
        .with("eta", at.im)
        .with("norm_omega", e.norm_omega)
        .with("norm_sigma", e.norm_sigma)
        .with("constant", e.c_sigma))
}

fn ratio(lhs: f64, rhs: f64) -> f64 {
    if lhs <= 1e-300 {
        0.0
    } else if rhs <= 0.0 {
        f64::INFINITY
    } else {
        lhs / rhs
    }
}

/// Growth tag `|G(xi + i eta)| <= C e^{h |xi| + lambda omega*(eta/lambda)}`;
/// `lambda = 0` means bounded as `eta -> 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfPlaneGrowth {
    pub h: f64,
    pub lambda: f64,
}

/// Analytic function on `0 < Im zeta < r` with a growth tag.
#[derive(Clone)]
pub struct HalfPlaneFn {
    f: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
    pub label: String,
    pub r: f64,
    pub growth: HalfPlaneGrowth,
    zero: bool,
}

impl fmt::Debug for HalfPlaneFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HalfPlaneFn").field("label", &self.label).field("r", &self.r).field("growth", &self.growth).finish()
    }
}

impl HalfPlaneFn {
    pub fn new(f: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>, label: impl Into<String>, r: f64, growth: HalfPlaneGrowth) -> HalfPlaneFn {
        HalfPlaneFn { f, label: label.into(), r, growth, zero: false }
    }

    pub fn zero() -> HalfPlaneFn {
        HalfPlaneFn { f: Arc::new(|_| ZERO), label: "zero".into(), r: f64::INFINITY, growth: HalfPlaneGrowth { h: 0.0, lambda: 0.0 }, zero: true }
    }

    /// `c e^{i a zeta}`, bounded on the upper half-plane for `a >= 0`.
    pub fn exponential(c: Complex64, a: f64) -> Result<HalfPlaneFn> {
        if a < 0.0 {
            return Err(invalid("e^{i a zeta} grows in the upper half-plane for a < 0"));
        }
        Ok(HalfPlaneFn::new(Arc::new(move |z: Complex64| c * (I * a * z).exp()), format!("{c}*exp(i*{a}*zeta)"), f64::INFINITY, HalfPlaneGrowth { h: 0.0, lambda: 0.0 }))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.f)(z)
    }
}

/// Refuses pairings whose integrands are not absolutely convergent by the tags.
fn check_budget(g: &HalfPlaneFn, e: &AlmostAnalyticExt, l: f64) -> Result<()> {
    if !(l > 0.0 && l < g.r) {
        return Err(invalid(format!("L = {l} must lie in (0, {})", g.r)));
    }
    if !(g.growth.h < e.k) {
        return Err(Error::DecayBudget(format!("growth e^({}|xi|) is not beaten by the extension's e^(-{}|xi|)", g.growth.h, e.k)));
    }
    if g.growth.lambda > 0.0 {
        let lam = g.growth.lambda;
        let excess = |s: f64| -> Result<f64> { Ok(lam * young_conjugate(&e.omega, s / lam)? + e.dbar_profile(s)?.ln()) };
        let (near, nearer) = (excess(1e-2)?, excess(1e-3)?);
        if !(nearer < near && nearer < -20.0) {
            return Err(Error::DecayBudget(format!("lambda omega*(eta/lambda) growth of G is not absorbed by the dbar decay (log excess {nearer:.3} at eta = 1e-3)")));
        }
    }
    Ok(())
}

fn line_env(g: &HalfPlaneFn, e: &AlmostAnalyticExt) -> Envelope {
    Envelope::Exponential { rate: e.k - g.growth.h }
}

/// `int G(xi + i eta) psi(xi) d xi` via Stokes on `R x (0, L)`, split at `xi = 0`:
/// `int G(xi + i(eta + L)) Psi(xi + iL) d xi + 2i int int_0^L G(xi + i(eta + v)) dbar Psi(xi + iv) dv d xi`
/// `- i int_0^L G(i(eta + v)) J(v) dv`, with `J` the branch jump of `Psi` across `xi = 0`.
pub fn stokes_pair_at(g: &HalfPlaneFn, e: &AlmostAnalyticExt, l: f64, eta: f64, cfg: &QuadConfig) -> Result<Complex64> {
    if !(eta >= 0.0 && eta + l < g.r) {
        return Err(invalid(format!("need eta >= 0 and eta + L < {}", g.r)));
    }
    check_budget(g, e, l)?;
    if g.zero || e.phi.is_zero() {
        return Ok(ZERO);
    }
    let slot = ErrorSlot::new();
    let center = 0.0;
    let top = |xi: f64| g.eval(Complex64::new(xi, eta + l)) * slot.take_or(e.eval(Complex64::new(xi, l)), ZERO);
    let strips = 4;
    let area = (0..strips)
        .into_par_iter()
        .map(|j| -> Result<Complex64> {
            let (v0, v1) = (l * j as f64 / strips as f64, l * (j + 1) as f64 / strips as f64);
            let inner = |xi: f64| -> Complex64 {
                let h = |v: f64| {
                    if v <= 0.0 {
                        return ZERO;
                    }
                    g.eval(Complex64::new(xi, eta + v)) * slot.take_or(e.dbar(Complex64::new(xi, v)), ZERO)
                };
                slot.take_or(integrate_with_breaks(&h, v0, v1, &[], cfg).map(|r| r.value), ZERO)
            };
            Ok(integrate_decaying(&inner, Domain::Line { center }, line_env(g, e), &[0.0], cfg)?.value)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum::<Complex64>();
    let t = integrate_decaying(&top, Domain::Line { center }, line_env(g, e), &[0.0], cfg)?.value;
    let seam_f = |v: f64| g.eval(Complex64::new(0.0, eta + v)) * slot.take_or(e.branch_jump(v), ZERO);
    let seam = integrate_with_breaks(&seam_f, 0.0, l, &[], cfg)?.value;
    slot.finish(Ok(t + 2.0 * I * area - I * seam))
}

/// `lim_{eta -> 0+} int G(xi + i eta) psi(xi) d xi` through the Stokes identity.
pub fn stokes_boundary_pair(g: &HalfPlaneFn, e: &AlmostAnalyticExt, l: f64, cfg: &QuadConfig) -> Result<Complex64> {
    stokes_pair_at(g, e, l, 0.0, cfg)
}

/// `int G(xi + i eta) psi(xi) d xi` by direct quadrature, `psi = Psi` on the real axis.
pub fn direct_pair_at(g: &HalfPlaneFn, e: &AlmostAnalyticExt, eta: f64, cfg: &QuadConfig) -> Result<Complex64> {
    if !(eta > 0.0 && eta < g.r) {
        return Err(invalid(format!("eta must lie in (0, {})", g.r)));
    }
    if !(g.growth.h < e.k) {
        return Err(Error::DecayBudget(format!("growth e^({}|xi|) is not beaten by e^(-{}|xi|)", g.growth.h, e.k)));
    }
    if g.zero || e.phi.is_zero() {
        return Ok(ZERO);
    }
    let slot = ErrorSlot::new();
    let f = |xi: f64| g.eval(Complex64::new(xi, eta)) * slot.take_or(e.eval(Complex64::new(xi, 0.0)), ZERO);
    let v = integrate_decaying(&f, Domain::Line { center: 0.0 }, line_env(g, e), &[0.0], cfg);
    slot.finish(v.map(|r| r.value))
}
