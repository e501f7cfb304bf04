//! Fourier transforms along shifted lines, `K_1` norms, Laplace transforms of
//! supported functionals and Paley-Wiener type growth checks.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, precondition, Error, ErrorSlot, Result};
use crate::quad::{contour_integral_rect, integrate_decaying, Domain, Envelope, QuadConfig, Rect};
use crate::reps::{check_intervals, AnalyticRep, ContourSpec, DensityProfile, Functional};
use crate::spaces::{Flavor, TestFunction};
use crate::verdict::{log_spaced, ConditionVerdict};
use crate::weights::{young_conjugate, Weight};
use crate::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn transform_cfg() -> QuadConfig {
    QuadConfig::with_tol(1e-13, 1e-12)
}

/// `phi^(xi) = int phi(x) e^{-i x xi} dx`, integrated along `Im z = k` for
/// `xi <= 0` and `Im z = -k` for `xi > 0` so the integrand carries `e^{-k|xi|}`.
pub fn fourier_strip(phi: &TestFunction, k: f64, xi: f64, cfg: &QuadConfig) -> Result<Complex64> {
    if !(k > 0.0) {
        return Err(invalid("contour shift k must be positive"));
    }
    if !(k < phi.half_width()) {
        return Err(precondition(format!("shift {k} is not below the strip half-width {}", phi.half_width())));
    }
    if phi.is_zero() {
        return Ok(ZERO);
    }
    let y = if xi <= 0.0 { k } else { -k };
    let slot = ErrorSlot::new();
    let f = |x: f64| {
        let z = Complex64::new(x, y);
        slot.take_or(phi.eval(z), ZERO) * (-I * z * xi).exp()
    };
    let v = integrate_decaying(&f, Domain::Line { center: phi.center() }, phi.envelope(), &[], &cfg.for_frequency(xi));
    slot.finish(v.map(|e| e.value))
}

/// Certified decay of a spectral function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralDecay {
    /// `|psi(xi)| <= C e^{-rate |xi|}`.
    Exponential { rate: f64 },
    /// `|psi(xi)| <= C e^{-a xi^2}`.
    Gaussian { a: f64 },
}

impl SpectralDecay {
    fn envelope(self) -> Envelope {
        match self {
            SpectralDecay::Exponential { rate } => Envelope::Exponential { rate },
            SpectralDecay::Gaussian { a } => Envelope::Gaussian { a },
        }
    }
}

pub type SpectralFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A function of one real variable with an optional decay tag.
#[derive(Clone)]
pub struct Spectrum {
    f: SpectralFn,
    decay: Option<SpectralDecay>,
    breaks: Vec<f64>,
    zero: bool,
    label: String,
}

impl fmt::Debug for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Spectrum").field("label", &self.label).field("decay", &self.decay).finish()
    }
}

impl Spectrum {
    pub fn new(f: SpectralFn, decay: Option<SpectralDecay>, label: impl Into<String>) -> Spectrum {
        Spectrum { f, decay, breaks: Vec::new(), zero: false, label: label.into() }
    }

    pub fn zero() -> Spectrum {
        Spectrum { f: Arc::new(|_| ZERO), decay: Some(SpectralDecay::Gaussian { a: 1.0 }), breaks: Vec::new(), zero: true, label: "zero".into() }
    }

    /// Points where the function may fail to be smooth.
    pub fn with_breaks(mut self, breaks: Vec<f64>) -> Spectrum {
        self.breaks = breaks;
        self
    }

    /// Closed-form transform of `e^{-a (x - shift)^2}`:
    /// `sqrt(pi/a) e^{-xi^2/(4a)} e^{-i shift xi}`.
    pub fn gaussian_transform(a: f64, shift: f64) -> Result<Spectrum> {
        if !(a > 0.0) {
            return Err(invalid("gaussian needs a > 0"));
        }
        let c = (PI / a).sqrt();
        let f = move |xi: f64| c * (-xi * xi / (4.0 * a)).exp() * Complex64::from_polar(1.0, -shift * xi);
        Ok(Spectrum::new(Arc::new(f), Some(SpectralDecay::Gaussian { a: 0.125 / a }), format!("fourier[gaussian:a={a},shift={shift}]")))
    }

    /// `phi^` by shifted-line quadrature at height `k`, tagged with `e^{-k|xi|}` decay.
    pub fn of_test_function(phi: &TestFunction, k: f64) -> Result<Spectrum> {
        if !(k > 0.0 && k < phi.half_width()) {
            return Err(precondition(format!("shift {k} must lie in (0, {})", phi.half_width())));
        }
        if phi.is_zero() {
            return Ok(Spectrum::zero());
        }
        let p = phi.clone();
        let label = format!("fourier[{phi}]");
        let f = move |xi: f64| fourier_strip(&p, k, xi, &transform_cfg()).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        Ok(Spectrum::new(Arc::new(f), Some(SpectralDecay::Exponential { rate: k }), label))
    }

    pub fn eval(&self, xi: f64) -> Complex64 {
        (self.f)(xi)
    }

    pub fn decay(&self) -> Option<SpectralDecay> {
        self.decay
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// `(1/2 pi) int psi(xi) e^{i x xi} d xi`.
pub fn inverse_fourier_line(psi: &Spectrum, x: f64, cfg: &QuadConfig) -> Result<Complex64> {
    let decay = psi.decay.ok_or_else(|| Error::EnvelopeMissing(format!("{} carries no decay tag", psi.label)))?;
    if psi.zero {
        return Ok(ZERO);
    }
    let f = |xi: f64| psi.eval(xi) * Complex64::from_polar(1.0, x * xi);
    let v = integrate_decaying(&f, Domain::Line { center: 0.0 }, decay.envelope(), &psi.breaks, &cfg.for_frequency(x))?;
    if !v.value.is_finite() {
        return Err(Error::NonConvergence(format!("{} could not be evaluated on the integration path", psi.label)));
    }
    Ok(v.value / (2.0 * PI))
}

/// `rho_omega`, `rho^h` and their maximum; `+inf` marks a divergent supremum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct K1Norms {
    pub rho_omega: f64,
    pub rho_h: f64,
    pub rho_combined: f64,
}

const SUP_POINTS: usize = 161;

/// Supremum of `g` over the real line: grid sweeps on `[-X, X]` with `X`
/// doubling while the supremum still moves outward, then golden refinement.
/// Returns `(argmax, log sup)`; `+inf` when the sweep keeps rising.
fn line_sup(g: &(dyn Fn(f64) -> Result<f64> + Sync), x0: f64, x_cap: f64) -> Result<(f64, f64)> {
    let sweep = |lo: f64, hi: f64| -> Result<(f64, f64)> {
        let xs: Vec<f64> = (0..SUP_POINTS).map(|i| lo + (hi - lo) * i as f64 / (SUP_POINTS - 1) as f64).collect();
        let vals: Vec<f64> = xs.par_iter().map(|&x| g(x)).collect::<Result<_>>()?;
        Ok(xs.iter().zip(&vals).fold((0.0, f64::NEG_INFINITY), |acc, (&x, &v)| if v > acc.1 { (x, v) } else { acc }))
    };
    let mut x_max = x0;
    let (mut bx, mut best) = sweep(-x_max, x_max)?;
    let mut rises = 0;
    while x_max < x_cap {
        let next = 2.0 * x_max;
        let (l, lv) = sweep(-next, -x_max)?;
        let (r, rv) = sweep(x_max, next)?;
        let (ax, av) = if lv > rv { (l, lv) } else { (r, rv) };
        x_max = next;
        if av > best {
            rises += 1;
            bx = ax;
            best = av;
            if rises >= 3 {
                return Ok((bx, f64::INFINITY));
            }
        } else if av < best - 2.0 {
            break;
        } else {
            rises = 0;
        }
    }
    let dx = x_max / (SUP_POINTS - 1) as f64 * 2.0;
    let f = |x: f64| g(x).unwrap_or(f64::NEG_INFINITY);
    let (mut lo, mut hi) = (bx - dx, bx + dx);
    let r = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..80 {
        let c = hi - r * (hi - lo);
        let d = lo + r * (hi - lo);
        if f(c) >= f(d) {
            hi = d;
        } else {
            lo = c;
        }
    }
    let m = 0.5 * (lo + hi);
    let v = f(m);
    Ok(if v > best { (m, v) } else { (bx, best) })
}

/// `rho_omega(psi) = sup |F^{-1} psi(x)| e^{omega(lambda x)}` and
/// `rho^h(psi) = sup |psi(xi)| e^{h |xi|}`.
pub fn k1_norms(psi: &Spectrum, w: &Weight, h: f64, lambda: f64, cfg: &QuadConfig) -> Result<K1Norms> {
    if !(h >= 0.0 && lambda > 0.0) {
        return Err(invalid("need h >= 0 and lambda > 0"));
    }
    let decay = psi.decay.ok_or_else(|| Error::EnvelopeMissing(format!("{} carries no decay tag", psi.label)))?;
    if psi.zero {
        return Ok(K1Norms { rho_omega: 0.0, rho_h: 0.0, rho_combined: 0.0 });
    }
    if let SpectralDecay::Exponential { rate } = decay {
        if rate <= h {
            return Err(precondition(format!("decay rate {rate} does not dominate h = {h}")));
        }
    }
    let spectral = |xi: f64| -> Result<f64> { Ok(psi.eval(xi).norm().ln() + h * xi.abs()) };
    let (_, log_h) = line_sup(&spectral, 4.0, 1e4)?;
    let physical = |x: f64| -> Result<f64> {
        let v = inverse_fourier_line(psi, x, cfg)?.norm().ln() + w.eval(lambda * x);
        Ok(if v.is_nan() { f64::INFINITY } else { v })
    };
    let (_, log_w) = line_sup(&physical, 4.0, 1e3)?;
    let (rho_omega, rho_h) = (log_w.exp(), log_h.exp());
    Ok(K1Norms { rho_omega, rho_h, rho_combined: rho_omega.max(rho_h) })
}

/// Which side(s) of the support interval are unbounded.
fn support_extent(intervals: &[(f64, f64)]) -> (bool, bool) {
    let left = intervals.iter().any(|(lo, _)| *lo == f64::NEG_INFINITY);
    let right = intervals.iter().any(|(_, hi)| *hi == f64::INFINITY);
    (left, right)
}

/// Real abscissa beyond which the functional's data are negligible.
fn effective_reach(f: &Functional, right: bool) -> f64 {
    let pick = |x: f64, y: f64| if right { x.max(y) } else { x.min(y) };
    let start = if right { f64::NEG_INFINITY } else { f64::INFINITY };
    let mut reach = f.atoms.iter().map(|a| a.location.re).fold(start, pick);
    for d in &f.densities {
        let cut = match d.profile {
            DensityProfile::GaussDecay => 7.0,
            DensityProfile::ExpDecay { mu } => 52.0 / mu,
        };
        let end = if right { d.hi.min(cut) } else { d.lo.max(-cut) };
        reach = pick(reach, end);
    }
    if reach.is_finite() {
        reach
    } else {
        0.0
    }
}

/// `L{f; zeta} = -(1/2 pi) int_{Gamma^b(J)} F(z) e^{i z zeta} dz` with `b = contour.k`
/// and `J` the union of `contour.intervals`, which must contain the support.
pub fn laplace_transform(rep: &AnalyticRep, zeta: Complex64, contour: &ContourSpec) -> Result<Complex64> {
    let f = rep.functional().ok_or_else(|| precondition("the Laplace transform needs a representation with support metadata"))?;
    let b = contour.k;
    if !(b > rep.inner() && b < rep.outer()) {
        return Err(precondition(format!("contour height {b} must lie in ({}, {})", rep.inner(), rep.outer())));
    }
    if contour.intervals.is_empty() {
        return Err(invalid("the Laplace contour needs at least one support interval"));
    }
    check_intervals(f, &contour.intervals)?;
    for a in &f.atoms {
        if !contour.intervals.iter().any(|(lo, hi)| *lo < a.location.re && a.location.re < *hi) {
            return Err(precondition(format!("atom at {} lies outside the declared support intervals", a.location)));
        }
    }
    for d in &f.densities {
        if !contour.intervals.iter().any(|(lo, hi)| *lo <= d.lo && d.hi <= *hi) {
            return Err(precondition("a density's support is not covered by the declared intervals"));
        }
    }
    let (left, right) = support_extent(&contour.intervals);
    match (left, right) {
        (true, true) => return Err(precondition("support unbounded on both sides has no admissible Laplace region")),
        (false, true) if !(zeta.im > 0.0) => return Err(precondition(format!("{zeta} must lie in the upper half-plane for support bounded on the left"))),
        (true, false) if !(zeta.im < 0.0) => return Err(precondition(format!("{zeta} must lie in the lower half-plane for support bounded on the right"))),
        _ => {}
    }
    if f.is_zero() {
        return Ok(ZERO);
    }
    let hi_reach = effective_reach(f, true) + 1.0;
    let lo_reach = effective_reach(f, false) - 1.0;
    let cfg = transform_cfg().for_frequency(zeta.re);
    let slot = ErrorSlot::new();
    let g = |z: Complex64| slot.take_or(rep.eval(z), ZERO) * (I * z * zeta).exp();
    let mut total = ZERO;
    for &(lo, hi) in &contour.intervals {
        let lo = if lo.is_finite() { lo } else { lo_reach.min(hi - 1.0) };
        let hi = if hi.is_finite() { hi } else { hi_reach.max(lo + 1.0) };
        let mut rect = Rect::new(lo, hi, -b, b);
        rect.x_breaks = f.atoms.iter().map(|a| a.location.re).filter(|x| *x > lo && *x < hi).collect();
        total -= contour_integral_rect(&g, &rect, &cfg)?.value;
    }
    slot.finish(Ok(total / (2.0 * PI)))
}

/// `(1/2 pi) sum c (i zeta)^n e^{i a zeta}` for purely atomic functionals.
pub fn laplace_atomic(f: &Functional, zeta: Complex64) -> Result<Complex64> {
    if !f.densities.is_empty() {
        return Err(invalid("closed-form Laplace transform needs an atomic functional"));
    }
    Ok(f.atoms.iter().map(|a| a.coefficient * (I * zeta).powu(a.order) * (I * a.location * zeta).exp()).sum::<Complex64>() / (2.0 * PI))
}

/// `lim_{eta -> 0+} L{f; xi + i eta}`, by halving `eta` until the value settles.
pub fn laplace_boundary_value(rep: &AnalyticRep, xi: f64, contour: &ContourSpec) -> Result<Complex64> {
    let mut eta = 1e-2;
    let mut prev = laplace_transform(rep, Complex64::new(xi, eta), contour)?;
    for _ in 0..30 {
        eta *= 0.25;
        let next = laplace_transform(rep, Complex64::new(xi, eta), contour)?;
        let settled = (next - prev).norm() <= 1e-12 * (1.0 + next.norm());
        prev = next;
        if settled {
            break;
        }
    }
    Ok(prev)
}

/// `(1/2 pi) <f, e^{i x xi}>`: the function whose Fourier transform is `f`.
pub fn inverse_fourier_functional(f: &Functional, xi: f64, cfg: &QuadConfig) -> Result<Complex64> {
    let mut acc = ZERO;
    for a in &f.atoms {
        acc += a.coefficient * (I * xi).powu(a.order) * (I * a.location * xi).exp();
    }
    let mut total = acc / (2.0 * PI);
    for d in &f.densities {
        let (profile, lo, hi) = (d.profile, d.lo, d.hi);
        let g = move |x: f64| if x >= lo && x <= hi { Complex64::new(profile.eval(x), 0.0) } else { ZERO };
        let decay = match profile {
            DensityProfile::GaussDecay => SpectralDecay::Gaussian { a: 0.5 },
            DensityProfile::ExpDecay { mu } => SpectralDecay::Exponential { rate: 0.5 * mu },
        };
        let breaks = [lo, hi, 0.0].into_iter().filter(|x| x.is_finite()).collect();
        let psi = Spectrum::new(Arc::new(g), Some(decay), "density").with_breaks(breaks);
        total += d.coefficient * inverse_fourier_line(&psi, xi, cfg)?;
    }
    Ok(total)
}

/// Region where a Paley-Wiener bound is imposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LaplaceRegion {
    Entire,
    UpperHalfPlane,
    /// `eta > lambda`.
    AboveLambda,
    LowerHalfPlane,
    /// `eta < -lambda`.
    BelowLambda,
}

impl std::str::FromStr for LaplaceRegion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "entire" => LaplaceRegion::Entire,
            "upper" => LaplaceRegion::UpperHalfPlane,
            "above_lambda" => LaplaceRegion::AboveLambda,
            "lower" => LaplaceRegion::LowerHalfPlane,
            "below_lambda" => LaplaceRegion::BelowLambda,
            other => return Err(crate::spec::parse_err(format!("unknown region `{other}`"))),
        })
    }
}

/// Constants of the bound `|G| <= C e^{(a+eps)|eta| + (h+eps)|xi| + lambda omega*(|eta|/lambda)}`.
#[derive(Debug, Clone)]
pub struct LaplaceBoundSpec {
    pub a: f64,
    pub h: f64,
    /// Scale of the conjugate term; `0` drops it.
    pub lambda: f64,
    pub weight: Option<Weight>,
    pub region: LaplaceRegion,
    pub flavor: Flavor,
}

impl LaplaceBoundSpec {
    pub fn new(a: f64, h: f64, region: LaplaceRegion) -> LaplaceBoundSpec {
        LaplaceBoundSpec { a, h, lambda: 0.0, weight: None, region, flavor: Flavor::Beurling }
    }

    pub fn with_conjugate(mut self, w: Weight, lambda: f64) -> LaplaceBoundSpec {
        self.weight = Some(w);
        self.lambda = lambda;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.a >= 0.0 && self.h >= 0.0 && self.lambda >= 0.0) {
            return Err(invalid("a, h and lambda must be non-negative"));
        }
        let shifted = matches!(self.region, LaplaceRegion::AboveLambda | LaplaceRegion::BelowLambda);
        if shifted && self.flavor == Flavor::Roumieu {
            return Err(precondition("Roumieu bounds are imposed on the full half-plane, not above lambda"));
        }
        if shifted && !(self.lambda > 0.0) {
            return Err(precondition("the shifted half-plane needs lambda > 0"));
        }
        if shifted && self.weight.is_some() {
            return Err(precondition("the shifted half-plane bound carries no conjugate term"));
        }
        if self.region == LaplaceRegion::Entire && self.weight.is_some() {
            return Err(precondition("entire bounds carry no conjugate term"));
        }
        if self.weight.is_some() && !(self.lambda > 0.0) {
            return Err(precondition("the conjugate term needs lambda > 0"));
        }
        Ok(())
    }

    fn contains(&self, eta: f64) -> bool {
        match self.region {
            LaplaceRegion::Entire => true,
            LaplaceRegion::UpperHalfPlane => eta > 0.0,
            LaplaceRegion::AboveLambda => eta > self.lambda,
            LaplaceRegion::LowerHalfPlane => eta < 0.0,
            LaplaceRegion::BelowLambda => eta < -self.lambda,
        }
    }

    /// Log of the bound at `eps`.
    fn log_bound(&self, xi: f64, eta: f64, eps: f64) -> Result<f64> {
        let mut v = (self.a + eps) * eta.abs() + (self.h + eps) * xi.abs();
        if let Some(w) = &self.weight {
            v += self.lambda * young_conjugate(w, eta.abs() / self.lambda)?;
        }
        Ok(v)
    }
}

/// One exponential term `coef (i zeta)^order e^{i shift zeta}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpTerm {
    pub coef: Complex64,
    pub order: u32,
    pub shift: f64,
}

/// Function of `zeta` under a Paley-Wiener test.
#[derive(Clone)]
pub enum LaplaceCandidate {
    /// Finite exponential sum; growth is known in closed form.
    Exponentials(Vec<ExpTerm>),
    Function { f: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>, label: String },
    /// Samples `(zeta, G(zeta))`.
    Samples(Vec<(Complex64, Complex64)>),
}

impl LaplaceCandidate {
    pub fn zero() -> LaplaceCandidate {
        LaplaceCandidate::Exponentials(Vec::new())
    }

    /// `coef e^{i shift zeta}`.
    pub fn exponential(coef: Complex64, shift: f64) -> LaplaceCandidate {
        LaplaceCandidate::Exponentials(vec![ExpTerm { coef, order: 0, shift }])
    }

    /// `L{f; .}` in closed form for an atomic functional.
    pub fn of_atomic(f: &Functional) -> Result<LaplaceCandidate> {
        if !f.densities.is_empty() {
            return Err(invalid("closed-form Laplace transform needs an atomic functional"));
        }
        Ok(LaplaceCandidate::Exponentials(
            f.atoms
                .iter()
                .filter(|a| a.location.im == 0.0)
                .map(|a| ExpTerm { coef: a.coefficient / (2.0 * PI), order: a.order, shift: a.location.re })
                .collect(),
        ))
    }

    /// `log |G(zeta)|`, computed without overflow for exponential sums.
    pub fn log_modulus(&self, zeta: Complex64) -> Option<f64> {
        match self {
            LaplaceCandidate::Exponentials(terms) => {
                let logs: Vec<Complex64> =
                    terms.iter().filter(|t| t.coef != ZERO).map(|t| t.coef.ln() + if t.order == 0 { ZERO } else { (I * zeta).ln() * t.order as f64 } + I * t.shift * zeta).collect();
                let m = logs.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max);
                if m == f64::NEG_INFINITY {
                    return Some(m);
                }
                Some(logs.iter().map(|l| (l - m).exp()).sum::<Complex64>().norm().ln() + m)
            }
            _ => self.eval(zeta).map(|v| v.norm().ln()),
        }
    }

    pub fn eval(&self, zeta: Complex64) -> Option<Complex64> {
        match self {
            LaplaceCandidate::Exponentials(terms) => Some(terms.iter().map(|t| t.coef * (I * zeta).powu(t.order) * (I * t.shift * zeta).exp()).sum()),
            LaplaceCandidate::Function { f, .. } => Some(f(zeta)),
            LaplaceCandidate::Samples(_) => None,
        }
    }
}

/// Sampling grid for Paley-Wiener checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PwGrid {
    pub xi_max: f64,
    pub n_xi: usize,
    pub eta_min: f64,
    pub eta_max: f64,
    pub n_eta: usize,
    pub epsilon: f64,
}

impl Default for PwGrid {
    fn default() -> Self {
        PwGrid { xi_max: 50.0, n_xi: 101, eta_min: 1e-3, eta_max: 1e3, n_eta: 61, epsilon: 0.1 }
    }
}

/// Excess `log |G| - log bound` above which an outer sample counts as a witness.
const PW_WITNESS_EXCESS: f64 = 5.0;

/// Checks the growth bound for `G` over the spec's region.
///
/// Exponential sums are decided from their shifts; a violated closed form still
/// needs a sampled witness. Other candidates are judged from nested grid shells.
pub fn paley_wiener_check(g: &LaplaceCandidate, spec: &LaplaceBoundSpec, grid: &PwGrid) -> Result<ConditionVerdict> {
    spec.validate()?;
    let eps = grid.epsilon;
    if !(eps > 0.0) {
        return Err(invalid("epsilon must be positive"));
    }
    let points: Vec<(Complex64, Option<Complex64>)> = match g {
        LaplaceCandidate::Samples(s) => {
            let inside: Vec<_> = s.iter().filter(|(z, _)| spec.contains(z.im)).map(|&(z, v)| (z, Some(v))).collect();
            if inside.is_empty() && !s.is_empty() {
                return Err(precondition("no sample lies in the region of the bound"));
            }
            inside
        }
        _ => pw_grid(spec, grid).into_iter().map(|z| (z, None)).collect(),
    };
    let excess = |z: Complex64, v: Option<Complex64>| -> Result<f64> {
        let lg = match v {
            Some(v) => v.norm().ln(),
            None => g.log_modulus(z).unwrap(),
        };
        Ok(if lg.is_nan() { f64::INFINITY } else { lg - spec.log_bound(z.re, z.im, eps)? })
    };
    let values: Vec<f64> = points.par_iter().map(|&(z, v)| excess(z, v)).collect::<Result<_>>()?;
    let radius = |z: Complex64| z.re.abs().max(z.im.abs());
    let r_max = points.iter().map(|(z, _)| radius(*z)).fold(0.0, f64::max);
    let (mut arg, mut top) = (Complex64::new(0.0, 0.0), f64::NEG_INFINITY);
    let mut inner = f64::NEG_INFINITY;
    for ((z, _), &v) in points.iter().zip(&values) {
        if v > top {
            top = v;
            arg = *z;
        }
        if radius(*z) <= 0.1 * r_max {
            inner = inner.max(v);
        }
    }
    let witness_found = top > inner + PW_WITNESS_EXCESS && radius(arg) > 0.1 * r_max;
    let verdict = |status| {
        ConditionVerdict::new(status, r_max).with("xi", arg.re).with("eta", arg.im).with("log_excess", top).with("epsilon", eps)
    };
    if let LaplaceCandidate::Exponentials(terms) = g {
        let violating: Vec<&ExpTerm> = terms.iter().filter(|t| t.coef != ZERO && !term_within(t, spec)).collect();
        if violating.is_empty() {
            let mut v = ConditionVerdict::holds(r_max).with("epsilon", eps);
            if terms.iter().all(|t| t.coef == ZERO) {
                v = v.with_note("zero function");
            }
            return Ok(v);
        }
        if witness_found {
            return Ok(verdict(crate::verdict::Status::Fails).with_note(format!("exponential shift {} exceeds the support offset", violating[0].shift)));
        }
        return Ok(verdict(crate::verdict::Status::NumericallySupported).with_note("closed form violates the bound but the grid shows no witness"));
    }
    if witness_found {
        Ok(verdict(crate::verdict::Status::Fails))
    } else {
        Ok(verdict(crate::verdict::Status::NumericallySupported))
    }
}

/// `|e^{i c zeta}| = e^{-c eta}` is dominated on the region iff the shift stays within `a`.
fn term_within(t: &ExpTerm, spec: &LaplaceBoundSpec) -> bool {
    match spec.region {
        LaplaceRegion::Entire => t.shift.abs() <= spec.a,
        LaplaceRegion::UpperHalfPlane | LaplaceRegion::AboveLambda => -t.shift <= spec.a,
        LaplaceRegion::LowerHalfPlane | LaplaceRegion::BelowLambda => t.shift <= spec.a,
    }
}

fn pw_grid(spec: &LaplaceBoundSpec, grid: &PwGrid) -> Vec<Complex64> {
    let xs: Vec<f64> = (0..grid.n_xi).map(|i| -grid.xi_max + 2.0 * grid.xi_max * i as f64 / (grid.n_xi.max(2) - 1) as f64).collect();
    let floor = match spec.region {
        LaplaceRegion::AboveLambda | LaplaceRegion::BelowLambda => spec.lambda * (1.0 + 1e-9),
        _ => 0.0,
    };
    let etas_pos: Vec<f64> = log_spaced(grid.eta_min.max(floor), grid.eta_max.max(floor * 2.0), grid.n_eta, false);
    let etas: Vec<f64> = match spec.region {
        LaplaceRegion::Entire => etas_pos.iter().flat_map(|&e| [e, -e]).chain(std::iter::once(0.0)).collect(),
        LaplaceRegion::UpperHalfPlane | LaplaceRegion::AboveLambda => etas_pos,
        LaplaceRegion::LowerHalfPlane | LaplaceRegion::BelowLambda => etas_pos.iter().map(|e| -e).collect(),
    };
    xs.iter().flat_map(|&x| etas.iter().map(move |&e| Complex64::new(x, e))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::cauchy_represent;
    use crate::verdict::Status;
    use approx::assert_abs_diff_eq;

    fn gauss(shift: f64) -> TestFunction {
        TestFunction::gaussian(1.0, Complex64::new(shift, 0.0)).unwrap()
    }

    #[test]
    fn fourier_examples() {
        let cfg = transform_cfg();
        let sp = PI.sqrt();
        assert_abs_diff_eq!(fourier_strip(&gauss(0.0), 0.5, 0.0, &cfg).unwrap().re, sp, epsilon = 1e-10);
        let v = fourier_strip(&gauss(0.0), 0.5, 2.0, &cfg).unwrap();
        assert_abs_diff_eq!(v.re, sp * (-1.0f64).exp(), epsilon = 1e-10);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-10);
        assert_eq!(fourier_strip(&TestFunction::Zero, 0.5, 1.0, &cfg).unwrap(), ZERO);
        for xi in [-3.0, -0.5, 0.7, 4.0] {
            let a = fourier_strip(&gauss(0.3), 0.4, xi, &cfg).unwrap();
            let b = fourier_strip(&gauss(0.3), 1.3, xi, &cfg).unwrap();
            assert!((a - b).norm() < 1e-9);
        }
    }

    #[test]
    fn inverse_examples() {
        let cfg = transform_cfg();
        let psi = Spectrum::gaussian_transform(1.0, 0.0).unwrap();
        assert_abs_diff_eq!(inverse_fourier_line(&psi, 0.0, &cfg).unwrap().re, 1.0, epsilon = 1e-10);
        assert_eq!(inverse_fourier_line(&Spectrum::zero(), 3.0, &cfg).unwrap(), ZERO);
        let shifted = Spectrum::of_test_function(&gauss(1.0), 0.5).unwrap();
        assert_abs_diff_eq!(inverse_fourier_line(&shifted, 1.0, &cfg).unwrap().re, 1.0, epsilon = 1e-8);
        let untagged = Spectrum::new(Arc::new(|_| ZERO), None, "bare");
        assert!(matches!(inverse_fourier_line(&untagged, 0.0, &cfg), Err(Error::EnvelopeMissing(_))));
    }

    #[test]
    fn k1_examples() {
        let cfg = transform_cfg();
        let psi = Spectrum::gaussian_transform(1.0, 0.0).unwrap();
        let n = k1_norms(&psi, &Weight::linear(), 1.0, 1.0, &cfg).unwrap();
        assert_abs_diff_eq!(n.rho_h, PI.sqrt() * 1f64.exp(), epsilon = 1e-7);
        assert_abs_diff_eq!(n.rho_omega, 0.25f64.exp(), epsilon = 1e-7);
        assert_eq!(n.rho_combined, n.rho_omega.max(n.rho_h));
        let z = k1_norms(&Spectrum::zero(), &Weight::linear(), 1.0, 1.0, &cfg).unwrap();
        assert_eq!((z.rho_omega, z.rho_h, z.rho_combined), (0.0, 0.0, 0.0));
    }

    #[test]
    fn laplace_examples() {
        let spec = ContourSpec { intervals: vec![(-1.0, 2.0)], ..ContourSpec::new(0.5) };
        let d0 = cauchy_represent(&Functional::delta(0.0), None, 0.25, 2.0).unwrap();
        for zeta in [Complex64::new(0.0, 0.0), Complex64::new(1.5, -0.7), Complex64::new(-3.0, 2.0)] {
            let v = laplace_transform(&d0, zeta, &spec).unwrap();
            assert!((v - 1.0 / (2.0 * PI)).norm() < 1e-10, "{zeta}: {v}");
        }
        let d1 = cauchy_represent(&Functional::delta(1.0), None, 0.25, 2.0).unwrap();
        let v = laplace_transform(&d1, I, &spec).unwrap();
        assert_abs_diff_eq!(v.re, (-1.0f64).exp() / (2.0 * PI), epsilon = 1e-10);
        let zero = cauchy_represent(&Functional::zero(), None, 0.25, 2.0).unwrap();
        assert_eq!(laplace_transform(&zero, I, &spec).unwrap(), ZERO);
        let half = ContourSpec { intervals: vec![(-0.5, f64::INFINITY)], ..ContourSpec::new(0.5) };
        assert!(laplace_transform(&d0, Complex64::new(1.0, -1.0), &half).is_err());
        let f: Functional = "atoms:[(0.5,1,2), (1.5,2,-1)]".parse().unwrap();
        let rep = cauchy_represent(&f, None, 0.25, 2.0).unwrap();
        let zeta = Complex64::new(0.8, 0.3);
        assert!((laplace_transform(&rep, zeta, &half).unwrap() - laplace_atomic(&f, zeta).unwrap()).norm() < 1e-9);
    }

    #[test]
    fn laplace_boundary_matches_inverse_fourier() {
        let f: Functional = "atoms:[(0,0,1), (1.5,1,0.5)]".parse().unwrap();
        let rep = cauchy_represent(&f, None, 0.25, 2.0).unwrap();
        let half = ContourSpec { intervals: vec![(-0.5, f64::INFINITY)], ..ContourSpec::new(0.5) };
        for xi in [-2.0, 0.0, 1.3] {
            let bv = laplace_boundary_value(&rep, xi, &half).unwrap();
            let g = inverse_fourier_functional(&f, xi, &transform_cfg()).unwrap();
            assert!((bv - g).norm() < 1e-8, "{xi}: {bv} vs {g}");
        }
    }

    #[test]
    fn paley_wiener_examples() {
        let spec = LaplaceBoundSpec::new(0.0, 1.0, LaplaceRegion::UpperHalfPlane);
        let grid = PwGrid::default();
        let ok = paley_wiener_check(&LaplaceCandidate::exponential(Complex64::new(1.0 / (2.0 * PI), 0.0), 1.0), &spec, &grid).unwrap();
        assert_eq!(ok.status, Status::Holds);
        let bad = paley_wiener_check(&LaplaceCandidate::exponential(Complex64::new(1.0 / (2.0 * PI), 0.0), -2.0), &spec, &grid).unwrap();
        assert_eq!(bad.status, Status::Fails);
        assert!(bad.get("eta").unwrap() > 10.0);
        assert_eq!(paley_wiener_check(&LaplaceCandidate::zero(), &spec, &grid).unwrap().status, Status::Holds);
        let f = LaplaceCandidate::Function { f: Arc::new(|z: Complex64| (I * z).exp()), label: "e^{iz}".into() };
        assert_eq!(paley_wiener_check(&f, &spec, &grid).unwrap().status, Status::NumericallySupported);
        let g = LaplaceCandidate::Function { f: Arc::new(|z: Complex64| (-2.0 * I * z).exp()), label: "e^{-2iz}".into() };
        assert_eq!(paley_wiener_check(&g, &spec, &grid).unwrap().status, Status::Fails);
        let roumieu = LaplaceBoundSpec { flavor: Flavor::Roumieu, lambda: 1.0, ..LaplaceBoundSpec::new(0.0, 1.0, LaplaceRegion::AboveLambda) };
        assert!(paley_wiener_check(&LaplaceCandidate::zero(), &roumieu, &grid).is_err());
    }

    #[test]
    fn paley_wiener_with_conjugate() {
        let spec = LaplaceBoundSpec::new(0.0, 1.0, LaplaceRegion::UpperHalfPlane).with_conjugate(Weight::twosqrt(), 1.0);
        let g = LaplaceCandidate::exponential(Complex64::new(1.0, 0.0), 0.5);
        assert_eq!(paley_wiener_check(&g, &spec, &PwGrid::default()).unwrap().status, Status::Holds);
    }
}
