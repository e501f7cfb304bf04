//! Adaptive Gauss–Legendre quadrature on intervals, decaying integrals on
//! lines and rays, and counterclockwise rectangle contours.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// Values that can be integrated: reals and complex numbers.
pub trait Scalar:
    Copy
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<f64, Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn zero() -> Self;
    fn modulus(self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of bisections applied to a single initial panel.
    pub max_depth: u32,
    /// Budget on the total number of panels.
    pub max_panels: usize,
    /// First truncation radius for infinite domains.
    pub initial_radius: f64,
    /// How many times the truncation radius may double.
    pub max_doublings: u32,
    /// Gauss–Legendre order per panel.
    pub order: usize,
    /// Optional cap on the initial panel width (oscillatory integrands).
    pub max_panel: Option<f64>,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-11,
            rel_tol: 1e-11,
            max_depth: 48,
            max_panels: 4000,
            initial_radius: 8.0,
            max_doublings: 40,
            order: 15,
            max_panel: None,
        }
    }
}

impl QuadConfig {
    pub fn with_tol(abs_tol: f64, rel_tol: f64) -> Self {
        QuadConfig { abs_tol, rel_tol, ..Default::default() }
    }

    /// Caps panel width at `pi/|xi|` so each panel sees at most half a period.
    pub fn for_frequency(&self, xi: f64) -> Self {
        let mut c = self.clone();
        if xi != 0.0 {
            let cap = std::f64::consts::PI / xi.abs();
            c.max_panel = Some(c.max_panel.map_or(cap, |m| m.min(cap)));
        }
        c
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(invalid("quadrature tolerances must be positive"));
        }
        if self.order < 4 {
            return Err(invalid("Gauss-Legendre order must be at least 4"));
        }
        Ok(())
    }

    fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value)
    }
}

/// An integral value and its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: f64,
}

impl<T: Scalar> Estimate<T> {
    fn zero() -> Self {
        Estimate { value: T::zero(), error: 0.0 }
    }

    fn add(self, other: Estimate<T>) -> Self {
        Estimate { value: self.value + other.value, error: self.error + other.error }
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    fn new(n: usize) -> Rule {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Rule { nodes, weights }
    }

    /// Applies the rule on `[a, b]`.
    pub fn apply<T: Scalar, F: Fn(f64) -> T + ?Sized>(&self, f: &F, a: f64, b: f64) -> T {
        let c = 0.5 * (a + b);
        let r = 0.5 * (b - a);
        let mut acc = T::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(c + r * x) * (*w);
        }
        acc * r
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Cached Gauss–Legendre rule of order `n`; safe for concurrent use.
pub fn gauss_legendre(n: usize) -> Arc<Rule> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Rule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(r) = cache.read().unwrap().get(&n) {
        return r.clone();
    }
    let rule = Arc::new(Rule::new(n));
    cache.write().unwrap().entry(n).or_insert(rule).clone()
}

struct Panel<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
    depth: u32,
}

impl<T> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T> Eq for Panel<T> {}
impl<T> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn make_panel<T: Scalar, F: Fn(f64) -> T + ?Sized>(
    f: &F,
    rule: &Rule,
    a: f64,
    b: f64,
    depth: u32,
) -> Panel<T> {
    let m = 0.5 * (a + b);
    let coarse = rule.apply(f, a, b);
    let fine = rule.apply(f, a, m) + rule.apply(f, m, b);
    let mut error = (coarse - fine).modulus();
    if !error.is_finite() {
        error = f64::INFINITY;
    }
    Panel { a, b, value: fine, error, depth }
}

/// Pairwise sum in the given order.
pub(crate) fn pairwise_sum<T: Scalar>(xs: &[T]) -> T {
    match xs.len() {
        0 => T::zero(),
        1 => xs[0],
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

/// Globally adaptive integral of `f` over `[a, b]`, split at `breaks`.
pub fn integrate_with_breaks<T: Scalar, F: Fn(f64) -> T + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    breaks: &[f64],
    cfg: &QuadConfig,
) -> Result<Estimate<T>> {
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(invalid("integration limits must be finite"));
    }
    if a == b {
        return Ok(Estimate::zero());
    }
    if a > b {
        let e = integrate_with_breaks(f, b, a, breaks, cfg)?;
        return Ok(Estimate { value: -e.value, error: e.error });
    }
    let mut cuts: Vec<f64> = vec![a];
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|x| *x > a && *x < b).collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    cuts.extend(inner);
    cuts.push(b);
    let rule = gauss_legendre(cfg.order);
    let mut heap = BinaryHeap::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let pieces = match cfg.max_panel {
            Some(cap) if cap > 0.0 => ((hi - lo) / cap).ceil().clamp(1.0, 1e6) as usize,
            _ => 1,
        };
        for k in 0..pieces {
            let pa = lo + (hi - lo) * k as f64 / pieces as f64;
            let pb = if k + 1 == pieces { hi } else { lo + (hi - lo) * (k + 1) as f64 / pieces as f64 };
            heap.push(make_panel(f, &rule, pa, pb, 0));
        }
    }
    let mut finished: Vec<Panel<T>> = Vec::new();
    loop {
        let (value, error) = totals(heap.iter().chain(finished.iter()));
        if error <= cfg.tolerance(value.modulus()) {
            break;
        }
        let Some(worst) = heap.pop() else {
            return Err(non_convergence(value, error));
        };
        let width = worst.b - worst.a;
        let tiny = width <= 1e-13 * (1.0 + worst.a.abs().max(worst.b.abs()));
        if worst.depth >= cfg.max_depth || tiny || heap.len() + finished.len() >= cfg.max_panels {
            if heap.len() + finished.len() >= cfg.max_panels || !worst.error.is_finite() {
                heap.push(worst);
                let (value, error) = totals(heap.iter().chain(finished.iter()));
                return Err(non_convergence(value, error));
            }
            finished.push(worst);
            continue;
        }
        let m = 0.5 * (worst.a + worst.b);
        heap.push(make_panel(f, &rule, worst.a, m, worst.depth + 1));
        heap.push(make_panel(f, &rule, m, worst.b, worst.depth + 1));
    }
    let mut all: Vec<Panel<T>> = heap.into_vec();
    all.extend(finished);
    all.sort_by(|p, q| p.a.total_cmp(&q.a));
    let values: Vec<T> = all.iter().map(|p| p.value).collect();
    let error: f64 = all.iter().map(|p| p.error).sum();
    let roundoff = 50.0 * f64::EPSILON * all.iter().map(|p| p.value.modulus()).sum::<f64>();
    Ok(Estimate { value: pairwise_sum(&values), error: error.max(roundoff) })
}

fn totals<'a, T: Scalar>(panels: impl Iterator<Item = &'a Panel<T>>) -> (T, f64) {
    let mut v = T::zero();
    let mut e = 0.0;
    for p in panels {
        v = v + p.value;
        e += p.error;
    }
    (v, e)
}

fn non_convergence<T: Scalar>(value: T, error: f64) -> Error {
    Error::NonConvergence(format!(
        "adaptive quadrature exhausted its panel budget (|value| = {:.6e}, error estimate = {:.3e})",
        value.modulus(),
        error
    ))
}

/// Adaptive integral of `f` over the finite interval `[a, b]`.
pub fn integrate<T: Scalar, F: Fn(f64) -> T + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<Estimate<T>> {
    integrate_with_breaks(f, a, b, &[], cfg)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    /// The whole real line; truncation is symmetric about `center`.
    Line { center: f64 },
    /// `[start, +inf)` when `forward`, else `(-inf, start]`.
    Ray { start: f64, forward: bool },
}

/// Certified eventual decay of the integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Envelope {
    /// `|f(t)|` decays at least like `exp(-rate |t|)`.
    Exponential { rate: f64 },
    /// `|f(t)|` decays at least like `exp(-a t^2)`.
    Gaussian { a: f64 },
}

impl Envelope {
    fn validate(&self) -> Result<()> {
        match *self {
            Envelope::Exponential { rate } if rate > 0.0 && rate.is_finite() => Ok(()),
            Envelope::Gaussian { a } if a > 0.0 && a.is_finite() => Ok(()),
            _ => Err(Error::EnvelopeMissing("decay rate must be positive and finite".into())),
        }
    }

    /// Bound on the integral beyond distance `r`, given `|f| <= m` there.
    fn tail(&self, m: f64, r: f64) -> f64 {
        match *self {
            Envelope::Exponential { rate } => m / rate,
            Envelope::Gaussian { a } => (m / (2.0 * a * r)).min(m * 0.5 * (std::f64::consts::PI / a).sqrt()),
        }
    }

    fn probe_step(&self, r: f64) -> f64 {
        match *self {
            Envelope::Exponential { rate } => (0.25 / rate).min(r / 8.0),
            Envelope::Gaussian { a } => (0.25 / (a * r.max(1.0))).min(r / 8.0),
        }
    }
}

/// Integral of `f` over a line or ray, truncating by radius doubling.
///
/// The radius starts at `cfg.initial_radius` and doubles until the envelope
/// tail bound, scaled by the sampled size of `|f|` at the edge, drops below
/// `0.1` times the working tolerance.
pub fn integrate_decaying<T: Scalar, F: Fn(f64) -> T + ?Sized>(
    f: &F,
    domain: Domain,
    envelope: Envelope,
    breaks: &[f64],
    cfg: &QuadConfig,
) -> Result<Estimate<T>> {
    envelope.validate()?;
    let edge_max = |x: f64, dir: f64, r: f64| -> f64 {
        let step = envelope.probe_step(r);
        (0..5).map(|j| f(x - dir * step * j as f64).modulus()).fold(0.0, f64::max)
    };
    let mut r = cfg.initial_radius.max(1e-3);
    match domain {
        Domain::Line { center } => {
            let mut acc = integrate_with_breaks(f, center - r, center + r, breaks, cfg)?;
            for _ in 0..=cfg.max_doublings {
                let tail = envelope.tail(edge_max(center + r, 1.0, r), r)
                    + envelope.tail(edge_max(center - r, -1.0, r), r);
                if tail.is_finite() && tail < 0.1 * cfg.tolerance(acc.value.modulus()) {
                    acc.error += tail;
                    return Ok(acc);
                }
                let left = integrate_with_breaks(f, center - 2.0 * r, center - r, breaks, cfg)?;
                let right = integrate_with_breaks(f, center + r, center + 2.0 * r, breaks, cfg)?;
                acc = left.add(acc).add(right);
                r *= 2.0;
            }
            Err(Error::NonConvergence(format!("truncation radius {r:.3e} reached without tail control")))
        }
        Domain::Ray { start, forward } => {
            let dir = if forward { 1.0 } else { -1.0 };
            let span = |p: f64, q: f64| -> Result<Estimate<T>> {
                let (lo, hi) = if forward { (start + p, start + q) } else { (start - q, start - p) };
                integrate_with_breaks(f, lo, hi, breaks, cfg)
            };
            let mut acc = span(0.0, r)?;
            for _ in 0..=cfg.max_doublings {
                let tail = envelope.tail(edge_max(start + dir * r, dir, r), r);
                if tail.is_finite() && tail < 0.1 * cfg.tolerance(acc.value.modulus()) {
                    acc.error += tail;
                    return Ok(acc);
                }
                acc = acc.add(span(r, 2.0 * r)?);
                r *= 2.0;
            }
            Err(Error::NonConvergence(format!("truncation radius {r:.3e} reached without tail control")))
        }
    }
}

/// Integral of `f` over the whole line for integrands with only algebraic
/// decay (at least `|t|^{-1-eps}`), via `t = center + scale tan(theta)`.
pub fn integrate_line_algebraic<T: Scalar, F: Fn(f64) -> T + ?Sized>(
    f: &F,
    center: f64,
    scale: f64,
    cfg: &QuadConfig,
) -> Result<Estimate<T>> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(invalid("scale must be positive"));
    }
    let edge = std::f64::consts::FRAC_PI_2 - 1e-12;
    let g = |theta: f64| {
        let c = theta.cos();
        f(center + scale * theta.tan()) * (scale / (c * c))
    };
    integrate_with_breaks(&g, -edge, edge, &[0.0], cfg)
}

/// Axis-parallel rectangle `[left, right] x [bottom, top]` with optional
/// break points for the horizontal (`x_breaks`) and vertical (`y_breaks`) edges.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Rect {
    pub left: f64,
    pub right: f64,
    pub bottom: f64,
    pub top: f64,
    pub x_breaks: Vec<f64>,
    pub y_breaks: Vec<f64>,
}

impl Rect {
    pub fn new(left: f64, right: f64, bottom: f64, top: f64) -> Rect {
        Rect { left, right, bottom, top, ..Default::default() }
    }
}

/// Counterclockwise integral of `f` around `rect`: bottom edge left to right,
/// right edge upward, top edge right to left, left edge downward.
pub fn contour_integral_rect<F>(f: &F, rect: &Rect, cfg: &QuadConfig) -> Result<Estimate<Complex64>>
where
    F: Fn(Complex64) -> Complex64 + Sync + ?Sized,
{
    if !(rect.left < rect.right && rect.bottom < rect.top) {
        return Err(invalid("degenerate rectangle"));
    }
    let i = Complex64::new(0.0, 1.0);
    let edge = |which: usize| -> Result<Estimate<Complex64>> {
        let r = match which {
            0 => integrate_with_breaks(
                &|x: f64| f(Complex64::new(x, rect.bottom)),
                rect.left,
                rect.right,
                &rect.x_breaks,
                cfg,
            ),
            1 => integrate_with_breaks(
                &|y: f64| f(Complex64::new(rect.right, y)) * i,
                rect.bottom,
                rect.top,
                &rect.y_breaks,
                cfg,
            ),
            2 => integrate_with_breaks(
                &|x: f64| f(Complex64::new(x, rect.top)),
                rect.right,
                rect.left,
                &rect.x_breaks,
                cfg,
            ),
            _ => integrate_with_breaks(
                &|y: f64| f(Complex64::new(rect.left, y)) * i,
                rect.top,
                rect.bottom,
                &rect.y_breaks,
                cfg,
            ),
        };
        r.map_err(|e| match e {
            Error::NonConvergence(msg) => {
                Error::NonConvergence(format!("contour edge {which} (possible singularity on the edge): {msg}"))
            }
            other => other,
        })
    };
    let ((e0, e1), (e2, e3)) = rayon::join(|| rayon::join(|| edge(0), || edge(1)), || rayon::join(|| edge(2), || edge(3)));
    let (e0, e1, e2, e3) = (e0?, e1?, e2?, e3?);
    Ok(Estimate {
        value: (e0.value + e1.value) + (e2.value + e3.value),
        error: e0.error + e1.error + e2.error + e3.error,
    })
}
