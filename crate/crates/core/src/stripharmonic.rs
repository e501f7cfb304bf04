//! Poisson kernel of a horizontal strip, the zero-free analytic minorant
//! `F = exp(U + iV)` built from it, and the three-lines bound.

use std::cell::RefCell;
use std::f64::consts::{E, PI};
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::quad::{integrate, integrate_decaying, Domain, Envelope, QuadConfig};
use crate::weights::{laplace_integral, Weight};
use crate::Complex64;

/// Horizontal strips.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Strip {
    /// `|Im z| < h`.
    Symmetric { h: f64 },
    /// `0 < Im z < h`.
    Upper { h: f64 },
    /// `b < |Im z| < r`.
    Annular { b: f64, r: f64 },
}

impl Strip {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Strip::Symmetric { h } | Strip::Upper { h } if h > 0.0 && h.is_finite() => Ok(()),
            Strip::Annular { b, r } if b > 0.0 && b < r && r.is_finite() => Ok(()),
            _ => Err(invalid(format!("invalid strip {self:?}"))),
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let y = z.im;
        match *self {
            Strip::Symmetric { h } => y.abs() < h,
            Strip::Upper { h } => y > 0.0 && y < h,
            Strip::Annular { b, r } => y.abs() > b && y.abs() < r,
        }
    }
}

const COSH1_M1: f64 = 0.543_080_634_815_243_7;

/// `P(u, v) = sin v / (cosh u - cos v)`, written to avoid overflow and cancellation.
fn kernel(u: f64, v: f64) -> f64 {
    let a = u.abs();
    let e = (-a).exp();
    let s = (0.5 * v).sin();
    let q = (-a).exp_m1().powi(2) + 4.0 * e * s * s;
    2.0 * v.sin() * e / q
}

/// `(dP/du, dP/dv)` at `(u, v)`.
fn kernel_gradient(u: f64, v: f64) -> (f64, f64) {
    let a = u.abs();
    let e = (-a).exp();
    let s = (0.5 * v).sin();
    let q = (-a).exp_m1().powi(2) + 4.0 * e * s * s;
    let q2 = q * q;
    let du = -2.0 * u.signum() * v.sin() * e * (-(-2.0 * a).exp_m1()) / q2;
    let dv = (2.0 * v.cos() * (e + e * e * e) - 4.0 * e * e) / q2;
    (du, dv)
}

/// `coth((u + iv) / 2)`, whose imaginary part is `-P(u, v)`.
fn coth_half(u: f64, v: f64) -> Complex64 {
    let a = u.abs();
    let e = (-a).exp();
    let s = (0.5 * v).sin();
    let q = (-a).exp_m1().powi(2) + 4.0 * e * s * s;
    Complex64::new(u.signum() * -(-2.0 * a).exp_m1(), -2.0 * e * v.sin()) / q
}

/// `P_h(x, y) = P(pi x / h, pi y / h)`, harmonic for `0 < y < 2h`.
pub fn poisson_kernel(x: f64, y: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(invalid("strip half-width must be positive"));
    }
    if !(y > 0.0 && y < 2.0 * h) {
        return Err(invalid(format!("y = {y} lies outside (0, 2h) = (0, {})", 2.0 * h)));
    }
    Ok(kernel(PI * x / h, PI * y / h))
}

/// Default quadrature settings for kernel integrals.
pub fn kernel_quad_config() -> QuadConfig {
    QuadConfig::with_tol(1e-12, 1e-11)
}

/// `P_h{f; x, y} = (1/2h) int P_h(t - x, y) f(t) dt` for `f` growing at most
/// like `exp(growth_rate |t|)`; `breaks` are kinks of `f`.
pub fn poisson_transform<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    growth_rate: f64,
    breaks: &[f64],
    x: f64,
    y: f64,
    h: f64,
    cfg: &QuadConfig,
) -> Result<f64> {
    if !(h > 0.0) || !(y > 0.0 && y < h) {
        return Err(invalid(format!("need 0 < y < h, got y = {y}, h = {h}")));
    }
    let decay = PI / h;
    if !(growth_rate < decay) {
        return Err(Error::EnvelopeMissing(format!("growth rate {growth_rate} is not below pi/h = {decay}: (eps)_(pi/h) not certified")));
    }
    let a = PI / h;
    let v = a * y;
    let rate = 0.5 * (decay - growth_rate);
    let cfg = QuadConfig { initial_radius: cfg.initial_radius.max(16.0 / rate), ..cfg.clone() };
    let mut br: Vec<f64> = breaks.iter().map(|b| b - x).collect();
    br.push(0.0);
    br.sort_by(f64::total_cmp);
    br.dedup();
    let g = |s: f64| kernel(a * s, v) * f(x + s);
    let e = integrate_decaying(&g, Domain::Line { center: 0.0 }, Envelope::Exponential { rate }, &br, &cfg)?;
    Ok(e.value / (2.0 * h))
}

fn require_rate(w: &Weight, mu: f64) -> Result<f64> {
    match w.epsilon_rate() {
        Some(r) if r < mu => Ok(r),
        Some(r) => Err(Error::Precondition(format!("{w} has critical (eps) rate {r}, not below {mu}"))),
        None => Err(Error::Precondition(format!("{w}: (eps)_{mu} is not certified"))),
    }
}

/// Poisson transform of a weight, extended evenly to the line.
pub fn poisson_transform_weight(w: &Weight, x: f64, y: f64, h: f64, cfg: &QuadConfig) -> Result<f64> {
    let rate = require_rate(w, PI / h)?;
    let lo = x - 256.0 * h;
    let hi = x + 256.0 * h;
    let breaks = w.even_breakpoints(lo, hi);
    poisson_transform(&|t: f64| w.eval(t), rate, &breaks, x, y, h, cfg)
}

/// `e / (2h (cosh 1 - 1)) int_0^inf e^{-pi t / (2h)} omega(t) dt`, the additive
/// constant in the upper bound `P_h{omega} <= (omega(2x) + omega(2h/pi))(1 - y/h) + C`.
pub fn poisson_upper_constant(w: &Weight, h: f64) -> Result<f64> {
    if w.is_zero() {
        return Ok(0.0);
    }
    let mu = PI / (2.0 * h);
    let rate = require_rate(w, mu)?;
    Ok(E / (2.0 * h * COSH1_M1) * laplace_integral(w, mu, rate)?)
}

/// Constant of the subadditive variant `P_h{omega} <= (omega(x) + omega(h/pi))(1 - y/h) + C`.
pub fn poisson_subadditive_constant(w: &Weight, h: f64) -> Result<f64> {
    if w.is_zero() {
        return Ok(0.0);
    }
    let mu = PI / h;
    let rate = require_rate(w, mu)?;
    Ok(E / (h * COSH1_M1) * laplace_integral(w, mu, rate)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinorantMode {
    /// `e^{omega(lambda x)} <= |F| <= C e^{4 omega(2 lambda x)}`.
    Dilate,
    /// `e^{lambda omega(x)} <= |F| <= C e^{4 lambda omega(x)}` for subadditive `omega`.
    Subadditive,
}

impl std::str::FromStr for MinorantMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dilate" => Ok(MinorantMode::Dilate),
            "subadditive" | "subadd" => Ok(MinorantMode::Subadditive),
            other => Err(crate::spec::parse_err(format!("unknown minorant mode `{other}`"))),
        }
    }
}

/// Axis order of the path used to integrate the harmonic conjugate from the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathOrder {
    HorizontalFirst,
    VerticalFirst,
}

/// Zero-free analytic `F = exp(U + iV)` on `|Im z| < h` with
/// `U(x, y) = 4 P_{4h}{g; x, y + h}`, where `g` is `omega(lambda .)` or `lambda omega`.
#[derive(Debug, Clone)]
pub struct AnalyticMinorant {
    weight: Weight,
    source: Weight,
    lambda: f64,
    h: f64,
    mode: MinorantMode,
    log_c: f64,
    decay: f64,
    cfg: QuadConfig,
    u_origin: OnceLock<f64>,
}

/// Builds the minorant; the dilate mode needs `(eps)_{pi/(8 h lambda)}`, the
/// subadditive mode needs a subadditive weight.
pub fn build_minorant(w: &Weight, lambda: f64, h: f64, mode: MinorantMode) -> Result<AnalyticMinorant> {
    if !(lambda > 0.0 && lambda.is_finite() && h > 0.0 && h.is_finite()) {
        return Err(invalid("lambda and h must be positive"));
    }
    let (source, log_c) = match mode {
        MinorantMode::Dilate => {
            if !w.is_zero() {
                require_rate(w, PI / (8.0 * h * lambda))?;
            }
            let g = w.dilate(lambda)?;
            let c = poisson_upper_constant(&g, 4.0 * h)?;
            let log_c = 4.0 * (g.eval(8.0 * h / PI) + c);
            (g, log_c)
        }
        MinorantMode::Subadditive => {
            if w.tags().subadditive != Some(true) && !w.is_zero() {
                return Err(Error::Precondition(format!("{w} is not certified subadditive")));
            }
            let g = w.scale(lambda)?;
            let c = poisson_subadditive_constant(&g, 4.0 * h)?;
            let log_c = 4.0 * (g.eval(4.0 * h / PI) + c);
            (g, log_c)
        }
    };
    let rate = source.epsilon_rate().unwrap_or(0.0);
    let decay = 0.5 * (PI / (4.0 * h) - rate);
    Ok(AnalyticMinorant { weight: w.clone(), source, lambda, h, mode, log_c, decay, cfg: kernel_quad_config(), u_origin: OnceLock::new() })
}

impl AnalyticMinorant {
    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn mode(&self) -> MinorantMode {
        self.mode
    }

    /// `log C` in the upper bound.
    pub fn log_bound_constant(&self) -> f64 {
        self.log_c
    }

    pub fn bound_constant(&self) -> f64 {
        self.log_c.exp()
    }

    /// Replaces the quadrature settings used for `U`, its gradient and `V`.
    pub fn with_quad_config(mut self, cfg: QuadConfig) -> Self {
        self.cfg = cfg;
        self.u_origin = OnceLock::new();
        self
    }

    /// Certified lower bound for `log |F(x + iy)|`.
    pub fn lower_log_bound(&self, x: f64) -> f64 {
        match self.mode {
            MinorantMode::Dilate => self.weight.eval(self.lambda * x),
            MinorantMode::Subadditive => self.lambda * self.weight.eval(x),
        }
    }

    /// Certified upper bound for `log |F(x + iy)|`.
    pub fn upper_log_bound(&self, x: f64) -> f64 {
        match self.mode {
            MinorantMode::Dilate => self.log_c + 4.0 * self.weight.eval(2.0 * self.lambda * x),
            MinorantMode::Subadditive => self.log_c + 4.0 * self.lambda * self.weight.eval(x),
        }
    }

    fn check_point(&self, x: f64, y: f64) -> Result<()> {
        if !x.is_finite() || !(y.abs() < self.h) {
            return Err(invalid(format!("point {x}+{y}i lies outside the strip |Im z| < {}", self.h)));
        }
        Ok(())
    }

    fn kernel_integral(&self, x: f64, y: f64, k: impl Fn(f64, f64) -> f64) -> Result<f64> {
        let a = PI / (4.0 * self.h);
        let v = a * (y + self.h);
        let window = 512.0 * self.h;
        let mut br: Vec<f64> = self.source.even_breakpoints(x - window, x + window).into_iter().map(|b| b - x).collect();
        br.push(0.0);
        br.push(-x);
        br.sort_by(f64::total_cmp);
        br.dedup();
        let cfg = QuadConfig { initial_radius: 16.0 / self.decay, ..self.cfg.clone() };
        let g = |s: f64| k(a * s, v) * self.source.eval(x + s);
        let e = integrate_decaying(&g, Domain::Line { center: 0.0 }, Envelope::Exponential { rate: self.decay }, &br, &cfg)?;
        Ok(e.value / (2.0 * self.h))
    }

    /// `G(z) - G(0)` for the analytic logarithm `G = U + iV`, from the kernel
    /// `i coth(a (z - t + ih) / 2)` whose real part is the Poisson kernel.
    fn log_increment(&self, z: Complex64) -> Result<Complex64> {
        let (x, y) = (z.re, z.im);
        let a = PI / (4.0 * self.h);
        let (v1, v0) = (a * (y + self.h), a * self.h);
        let window = 512.0 * self.h;
        let mut br: Vec<f64> = self.source.even_breakpoints(x - window, x + window).into_iter().map(|b| b - x).collect();
        br.push(0.0);
        br.push(-x);
        br.sort_by(f64::total_cmp);
        br.dedup();
        let cfg = QuadConfig { initial_radius: 16.0 / self.decay, ..self.cfg.clone() };
        let g = |s: f64| (coth_half(-a * s, v1) - coth_half(-a * (x + s), v0)) * self.source.eval(x + s);
        let e = integrate_decaying(&g, Domain::Line { center: 0.0 }, Envelope::Exponential { rate: self.decay }, &br, &cfg)?;
        Ok(Complex64::new(0.0, 1.0) * e.value / (2.0 * self.h))
    }

    /// `U(x, y) = log |F(x + iy)|`.
    pub fn u(&self, x: f64, y: f64) -> Result<f64> {
        self.check_point(x, y)?;
        if self.source.is_zero() {
            return Ok(0.0);
        }
        self.kernel_integral(x, y, kernel)
    }

    /// `(dU/dx, dU/dy)` by differentiating the kernel under the integral.
    pub fn grad_u(&self, x: f64, y: f64) -> Result<(f64, f64)> {
        self.check_point(x, y)?;
        if self.source.is_zero() {
            return Ok((0.0, 0.0));
        }
        let a = PI / (4.0 * self.h);
        let ux = self.kernel_integral(x, y, |u, v| -a * kernel_gradient(u, v).0)?;
        let uy = self.kernel_integral(x, y, |u, v| a * kernel_gradient(u, v).1)?;
        Ok((ux, uy))
    }

    /// `|F(z)| = e^{U}`.
    pub fn modulus(&self, z: Complex64) -> Result<f64> {
        Ok(self.u(z.re, z.im)?.exp())
    }

    /// Harmonic conjugate `V(z)` with `V(0) = 0`.
    pub fn conjugate(&self, z: Complex64) -> Result<f64> {
        self.check_point(z.re, z.im)?;
        if self.source.is_zero() || (z.re == 0.0 && z.im == 0.0) {
            return Ok(0.0);
        }
        Ok(self.log_increment(z)?.im)
    }

    /// `V(z)` integrated from the origin along an axis-parallel path, using
    /// `dV/dx = -dU/dy` and `dV/dy = dU/dx`.
    pub fn conjugate_along(&self, z: Complex64, order: PathOrder) -> Result<f64> {
        self.check_point(z.re, z.im)?;
        if self.source.is_zero() || (z.re == 0.0 && z.im == 0.0) {
            return Ok(0.0);
        }
        let failure: RefCell<Option<Error>> = RefCell::new(None);
        let record = |r: Result<(f64, f64)>| match r {
            Ok(g) => g,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                (0.0, 0.0)
            }
        };
        let cfg = QuadConfig::with_tol(1e-11, 1e-9);
        let (x, y) = (z.re, z.im);
        let horizontal = |at_y: f64| -> Result<f64> {
            if x == 0.0 {
                return Ok(0.0);
            }
            let f = |s: f64| -record(self.grad_u(s, at_y)).1;
            Ok(integrate(&f, 0.0, x, &cfg)?.value)
        };
        let vertical = |at_x: f64| -> Result<f64> {
            if y == 0.0 {
                return Ok(0.0);
            }
            let f = |s: f64| record(self.grad_u(at_x, s)).0;
            Ok(integrate(&f, 0.0, y, &cfg)?.value)
        };
        let v = match order {
            PathOrder::HorizontalFirst => horizontal(0.0)? + vertical(x)?,
            PathOrder::VerticalFirst => vertical(0.0)? + horizontal(y)?,
        };
        match failure.into_inner() {
            Some(e) => Err(e),
            None => Ok(v),
        }
    }

    /// `log F(z) = U + iV`.
    pub fn log_eval(&self, z: Complex64) -> Result<Complex64> {
        self.check_point(z.re, z.im)?;
        if self.source.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let u0 = match self.u_origin.get() {
            Some(u0) => *u0,
            None => {
                let u0 = self.u(0.0, 0.0)?;
                let _ = self.u_origin.set(u0);
                u0
            }
        };
        if z.re == 0.0 && z.im == 0.0 {
            return Ok(Complex64::new(u0, 0.0));
        }
        Ok(self.log_increment(z)? + u0)
    }

    /// `F(z) = exp(U + iV)`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.log_eval(z)?.exp())
    }

    /// `1 / F(z)`.
    pub fn eval_reciprocal(&self, z: Complex64) -> Result<Complex64> {
        Ok((-self.log_eval(z)?).exp())
    }

    /// Cauchy–Riemann residual `|U_x - V_y| + |U_y + V_x|`, with `V`
    /// differentiated by central differences of step `delta`.
    pub fn cr_residual(&self, z: Complex64, delta: f64) -> Result<f64> {
        let (ux, uy) = self.grad_u(z.re, z.im)?;
        let v = |dz: Complex64| self.conjugate(z + dz);
        let vx = (v(Complex64::new(delta, 0.0))? - v(Complex64::new(-delta, 0.0))?) / (2.0 * delta);
        let vy = (v(Complex64::new(0.0, delta))? - v(Complex64::new(0.0, -delta))?) / (2.0 * delta);
        Ok((ux - vy).abs() + (uy + vx).abs())
    }
}

/// Result of sampling the certified sandwich of a minorant.
#[derive(Debug, Clone, Serialize)]
pub struct SandwichReport {
    pub points: usize,
    /// Largest `lower - U` seen (non-positive when the lower bound holds).
    pub worst_lower_gap: f64,
    /// Largest `U - upper` seen (non-positive when the upper bound holds).
    pub worst_upper_gap: f64,
    pub holds: bool,
}

/// Checks `lower(x) <= U(x, y) <= upper(x)` on the product grid `xs x ys`.
pub fn verify_sandwich(f: &AnalyticMinorant, xs: &[f64], ys: &[f64]) -> Result<SandwichReport> {
    use rayon::prelude::*;
    let pts: Vec<(f64, f64)> = xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).collect();
    let gaps: Vec<(f64, f64)> = pts
        .par_iter()
        .map(|&(x, y)| {
            let u = f.u(x, y)?;
            Ok((f.lower_log_bound(x) - u, u - f.upper_log_bound(x)))
        })
        .collect::<Result<_>>()?;
    let worst_lower_gap = gaps.iter().map(|g| g.0).fold(f64::NEG_INFINITY, f64::max);
    let worst_upper_gap = gaps.iter().map(|g| g.1).fold(f64::NEG_INFINITY, f64::max);
    let slack = |v: f64| v <= 1e-9;
    Ok(SandwichReport { points: pts.len(), worst_lower_gap, worst_upper_gap, holds: slack(worst_lower_gap) && slack(worst_upper_gap) })
}

/// `M^{y/h} C^{1 - y/h} exp(-(omega(x)/2)(1 - y/h))` for `0 <= y <= h`.
pub fn three_lines_bound(m: f64, c: f64, w: &Weight, h: f64, z: Complex64) -> Result<f64> {
    if !(m > 0.0 && c > 0.0 && h > 0.0) {
        return Err(invalid("M, C and h must be positive"));
    }
    if !(z.im >= 0.0 && z.im <= h) || !z.re.is_finite() {
        return Err(invalid(format!("{z} lies outside the closed half-strip 0 <= Im z <= {h}")));
    }
    if !w.is_zero() {
        require_rate(w, PI / h)?;
    }
    let t = z.im / h;
    Ok((t * m.ln() + (1.0 - t) * c.ln() - 0.5 * w.eval(z.re) * (1.0 - t)).exp())
}

/// Largest ratio `|phi(z)| / bound(z)` over the given points of the closed half-strip.
pub fn three_lines_check<F: Fn(Complex64) -> Complex64>(phi: F, m: f64, c: f64, w: &Weight, h: f64, points: &[Complex64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &z in points {
        let b = three_lines_bound(m, c, w, h, z)?;
        worst = worst.max(phi(z).norm() / b);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn kernel_examples() {
        assert_abs_diff_eq!(poisson_kernel(0.0, PI / 2.0, PI).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(poisson_kernel(1.0, PI / 2.0, PI).unwrap(), 1.0 / 1f64.cosh(), epsilon = 1e-14);
        assert_eq!(poisson_kernel(-3.0, PI / 2.0, PI).unwrap(), poisson_kernel(3.0, PI / 2.0, PI).unwrap());
        assert!(poisson_kernel(0.0, 0.0, 1.0).is_err());
        assert!(poisson_kernel(0.0, 2.0, 1.0).is_err());
        assert!(kernel(800.0, 1.0) >= 0.0);
    }

    #[test]
    fn kernel_matches_direct_formula() {
        for &(u, v) in &[(0.3f64, 0.4f64), (-2.0, 1.5), (5.0, 3.0), (0.01, 0.02), (-7.0, 5.5)] {
            let direct = v.sin() / (u.cosh() - v.cos());
            assert_abs_diff_eq!(kernel(u, v), direct, epsilon = 1e-12 * direct.abs().max(1.0));
            let (du, dv) = kernel_gradient(u, v);
            let d = u.cosh() - v.cos();
            let (du0, dv0) = (-v.sin() * u.sinh() / (d * d), (v.cos() * u.cosh() - 1.0) / (d * d));
            assert_abs_diff_eq!(du, du0, epsilon = 1e-9 * du0.abs().max(1.0));
            assert_abs_diff_eq!(dv, dv0, epsilon = 1e-9 * dv0.abs().max(1.0));
        }
    }

    #[test]
    fn transform_examples() {
        let cfg = kernel_quad_config();
        let one = poisson_transform(&|_t: f64| 1.0, 0.0, &[], 3.0, 0.5, 1.0, &cfg).unwrap();
        assert_abs_diff_eq!(one, 0.5, epsilon = 1e-9);
        let zero = poisson_transform(&|_t: f64| 0.0, 0.0, &[], 3.0, 0.5, 1.0, &cfg).unwrap();
        assert_eq!(zero, 0.0);
        let lin = poisson_transform_weight(&Weight::linear(), 10.0, PI / 2.0, PI, &cfg).unwrap();
        assert_abs_diff_eq!(lin, 5.0, epsilon = 1e-2);
        let too_fast = poisson_transform(&|t: f64| t.abs().exp(), 2.0, &[], 0.0, 0.5, PI, &cfg);
        assert!(matches!(too_fast, Err(Error::EnvelopeMissing(_))));
    }

    #[test]
    fn zero_weight_minorant_is_one() {
        let f = build_minorant(&Weight::zero(), 1.0, 1.0, MinorantMode::Dilate).unwrap();
        assert_eq!(f.modulus(Complex64::new(3.0, 0.5)).unwrap(), 1.0);
        assert_eq!(f.conjugate(Complex64::new(3.0, 0.5)).unwrap(), 0.0);
        assert_eq!(f.bound_constant(), 1.0);
    }

    #[test]
    fn linear_subadditive_minorant() {
        let f = build_minorant(&Weight::linear(), 1.0, PI, MinorantMode::Subadditive).unwrap();
        let m0 = f.modulus(Complex64::new(0.0, 0.0)).unwrap();
        assert!(m0 >= 1.0 && m0 <= f.bound_constant());
        let m5 = f.modulus(Complex64::new(5.0, 0.0)).unwrap();
        assert!(m5 >= 5f64.exp() && m5 <= f.bound_constant() * 20f64.exp());
        assert!(f.modulus(Complex64::new(10.0, 0.0)).unwrap() >= 10f64.exp());
        assert!(f.modulus(Complex64::new(0.0, PI)).is_err());
    }

    #[test]
    fn conjugate_is_path_independent() {
        let f = build_minorant(&Weight::linear(), 1.0, PI, MinorantMode::Subadditive).unwrap();
        let z = Complex64::new(1.0, 0.5);
        let a = f.conjugate_along(z, PathOrder::HorizontalFirst).unwrap();
        let b = f.conjugate_along(z, PathOrder::VerticalFirst).unwrap();
        assert_abs_diff_eq!(a, b, epsilon = 1e-5);
        assert_abs_diff_eq!(f.conjugate(z).unwrap(), a, epsilon = 1e-7);
        let du = f.u(z.re, z.im).unwrap() - f.u(0.0, 0.0).unwrap();
        assert_abs_diff_eq!(f.log_increment(z).unwrap().re, du, epsilon = 1e-9);
        assert_eq!(f.conjugate(Complex64::new(0.0, 0.0)).unwrap(), 0.0);
        assert!(f.cr_residual(Complex64::new(0.7, -0.4), 1e-3).unwrap() < 1e-4);
    }

    #[test]
    fn three_lines_examples() {
        let w = Weight::power(2.0).unwrap();
        let e = std::f64::consts::E;
        let b = three_lines_bound(e, 1.0, &w, 1.0, Complex64::new(0.0, 0.5)).unwrap();
        assert_abs_diff_eq!(b, 0.5f64.exp(), epsilon = 1e-14);
        assert_abs_diff_eq!(three_lines_bound(e, 2.0, &w, 1.0, Complex64::new(0.0, 0.0)).unwrap(), 2.0, epsilon = 1e-14);
        let top = three_lines_bound(e, 2.0, &w, 1.0, Complex64::new(7.0, 1.0)).unwrap();
        assert_abs_diff_eq!(top, e, epsilon = 1e-14);
        assert!(three_lines_bound(e, 1.0, &w, 1.0, Complex64::new(0.0, 1.5)).is_err());
        assert!(three_lines_bound(e, 1.0, &Weight::exp(), 4.0, Complex64::new(0.0, 0.5)).is_err());
    }
}
