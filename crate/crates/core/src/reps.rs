//! Computable functionals (point evaluations of derivatives plus decaying
//! densities), their Cauchy-transform representations, and pairings of
//! representations with test functions along strip contours.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::quad::{contour_integral_rect, integrate_decaying, integrate_line_algebraic, integrate_with_breaks, Domain, Envelope, QuadConfig, Rect};
use crate::spaces::TestFunction;
use crate::spec::{parse_complex, parse_err, split_head, split_top};
use crate::stripharmonic::AnalyticMinorant;
use crate::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// `coefficient * phi^{(order)}(location)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Atom {
    pub location: Complex64,
    pub order: u32,
    pub coefficient: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityProfile {
    /// `e^{-x^2}`.
    GaussDecay,
    /// `e^{-mu |x|}`.
    ExpDecay { mu: f64 },
}

impl DensityProfile {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            DensityProfile::GaussDecay => (-x * x).exp(),
            DensityProfile::ExpDecay { mu } => (-mu * x.abs()).exp(),
        }
    }

    fn envelope(&self) -> Envelope {
        match *self {
            DensityProfile::GaussDecay => Envelope::Gaussian { a: 0.5 },
            DensityProfile::ExpDecay { mu } => Envelope::Exponential { rate: 0.5 * mu },
        }
    }
}

/// `coefficient * int_lo^hi profile(x) phi(x) dx`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Density {
    pub profile: DensityProfile,
    pub coefficient: Complex64,
    pub lo: f64,
    pub hi: f64,
}

/// A finite sum of atoms and densities.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Functional {
    pub atoms: Vec<Atom>,
    pub densities: Vec<Density>,
}

fn integrate_range<F: Fn(f64) -> Complex64 + ?Sized>(f: &F, lo: f64, hi: f64, env: Envelope, breaks: &[f64], cfg: &QuadConfig) -> Result<Complex64> {
    if lo >= hi {
        return Ok(ZERO);
    }
    let v = match (lo.is_finite(), hi.is_finite()) {
        (true, true) => integrate_with_breaks(f, lo, hi, breaks, cfg)?,
        (false, false) => integrate_decaying(f, Domain::Line { center: 0.0 }, env, breaks, cfg)?,
        (true, false) => integrate_decaying(f, Domain::Ray { start: lo, forward: true }, env, breaks, cfg)?,
        (false, true) => integrate_decaying(f, Domain::Ray { start: hi, forward: false }, env, breaks, cfg)?,
    };
    Ok(v.value)
}

fn pair_cfg() -> QuadConfig {
    QuadConfig::with_tol(1e-13, 1e-12)
}

impl Functional {
    pub fn zero() -> Functional {
        Functional::default()
    }

    /// Point evaluation at a real point.
    pub fn delta(at: f64) -> Functional {
        Functional::atom(Complex64::new(at, 0.0), 0, Complex64::new(1.0, 0.0))
    }

    pub fn atom(location: Complex64, order: u32, coefficient: Complex64) -> Functional {
        Functional { atoms: vec![Atom { location, order, coefficient }], densities: Vec::new() }
    }

    pub fn density(profile: DensityProfile) -> Functional {
        let d = Density { profile, coefficient: Complex64::new(1.0, 0.0), lo: f64::NEG_INFINITY, hi: f64::INFINITY };
        Functional { atoms: Vec::new(), densities: vec![d] }
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.iter().all(|a| a.coefficient == ZERO) && self.densities.iter().all(|d| d.coefficient == ZERO || d.lo >= d.hi)
    }

    pub fn plus(mut self, other: Functional) -> Functional {
        self.atoms.extend(other.atoms);
        self.densities.extend(other.densities);
        self
    }

    pub fn scale(mut self, c: Complex64) -> Functional {
        for a in &mut self.atoms {
            a.coefficient *= c;
        }
        for d in &mut self.densities {
            d.coefficient *= c;
        }
        self
    }

    /// Largest `|Im|` among atom locations.
    pub fn max_abs_im(&self) -> f64 {
        self.atoms.iter().map(|a| a.location.im.abs()).fold(0.0, f64::max)
    }

    /// `<f, phi>` evaluated directly.
    pub fn apply(&self, phi: &TestFunction) -> Result<Complex64> {
        let mut acc = ZERO;
        for a in &self.atoms {
            acc += a.coefficient * phi.derivative(a.location, a.order)?;
        }
        let cfg = pair_cfg();
        for d in &self.densities {
            let failure = std::cell::RefCell::new(None);
            let f = |x: f64| match phi.eval(Complex64::new(x, 0.0)) {
                Ok(v) => v * d.profile.eval(x),
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    ZERO
                }
            };
            let v = integrate_range(&f, d.lo, d.hi, d.profile.envelope(), &[0.0], &cfg)?;
            if let Some(e) = failure.into_inner() {
                return Err(e);
            }
            acc += d.coefficient * v;
        }
        Ok(acc)
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() && self.densities.is_empty() {
            return write!(f, "zero");
        }
        let mut parts = Vec::new();
        if !self.atoms.is_empty() {
            let list: Vec<String> = self.atoms.iter().map(|a| format!("({},{},{})", a.location, a.order, a.coefficient)).collect();
            parts.push(format!("atoms:[{}]", list.join(",")));
        }
        for d in &self.densities {
            let name = match d.profile {
                DensityProfile::GaussDecay => "gauss_decay".to_string(),
                DensityProfile::ExpDecay { mu } => format!("exp_decay({mu})"),
            };
            parts.push(format!("density:{name}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for Functional {
    type Err = Error;

    /// `zero`, `atoms:[(loc, order, coef), ...]`, `density:gauss_decay`,
    /// `density:exp_decay(mu)`, or `sum:<spec>;<spec>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = split_head(s);
        match name {
            "zero" => Ok(Functional::zero()),
            "atoms" => {
                let inner = rest
                    .strip_prefix('[')
                    .and_then(|r| r.strip_suffix(']'))
                    .ok_or_else(|| parse_err("atoms must be written as [(loc,order,coef), ...]"))?;
                let mut atoms = Vec::new();
                for item in split_top(inner, ',').into_iter().map(str::trim).filter(|t| !t.is_empty()) {
                    let body = item
                        .strip_prefix('(')
                        .and_then(|r| r.strip_suffix(')'))
                        .ok_or_else(|| parse_err(format!("atom `{item}` must be (loc,order,coef)")))?;
                    let fields: Vec<&str> = body.split(',').map(str::trim).collect();
                    if fields.len() != 3 {
                        return Err(parse_err(format!("atom `{item}` needs three fields")));
                    }
                    let order: u32 = fields[1].parse().map_err(|_| parse_err(format!("bad order `{}`", fields[1])))?;
                    atoms.push(Atom { location: parse_complex(fields[0])?, order, coefficient: parse_complex(fields[2])? });
                }
                Ok(Functional { atoms, densities: Vec::new() })
            }
            "density" => {
                let profile = if rest == "gauss_decay" {
                    DensityProfile::GaussDecay
                } else if let Some(mu) = rest.strip_prefix("exp_decay(").and_then(|r| r.strip_suffix(')')) {
                    let mu: f64 = mu.trim().parse().map_err(|_| parse_err(format!("bad decay rate `{mu}`")))?;
                    if !(mu > 0.0) {
                        return Err(invalid("exp_decay needs mu > 0"));
                    }
                    DensityProfile::ExpDecay { mu }
                } else {
                    return Err(parse_err(format!("unknown density `{rest}`")));
                };
                Ok(Functional::density(profile))
            }
            "sum" => {
                let mut out = Functional::zero();
                for part in split_top(rest, ';') {
                    out = out.plus(part.parse()?);
                }
                Ok(out)
            }
            other => Err(parse_err(format!("unknown functional `{other}`"))),
        }
    }
}

/// Splits `f = f_plus - f_minus`: atoms with real part at least `a` go to
/// `f_plus`, the rest (negated) to `f_minus`; densities are cut at `(a + b) / 2`.
pub fn split_point_masses(f: &Functional, a: f64, b: f64) -> Result<(Functional, Functional)> {
    if !(a <= b) {
        return Err(invalid("split needs a <= b"));
    }
    let mut plus = Functional::zero();
    let mut minus = Functional::zero();
    for atom in &f.atoms {
        if atom.location.re >= a {
            plus.atoms.push(atom.clone());
        } else {
            minus.atoms.push(Atom { coefficient: -atom.coefficient, ..atom.clone() });
        }
    }
    let cut = 0.5 * (a + b);
    for d in &f.densities {
        if d.hi > cut {
            plus.densities.push(Density { lo: d.lo.max(cut), ..d.clone() });
        }
        if d.lo < cut {
            minus.densities.push(Density { hi: d.hi.min(cut), coefficient: -d.coefficient, ..d.clone() });
        }
    }
    Ok((plus, minus))
}

/// An analytic function on `b < |Im z| < r`.
pub type AnalyticFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

#[derive(Clone)]
enum RepSource {
    /// Cauchy transform; `q[j][k]` holds `(1/P)^{(k)}` at atom `j`.
    Cauchy { f: Functional, q: Vec<Vec<Complex64>> },
    Function { f: AnalyticFn, label: String, entire: bool },
}

/// Analytic representation `F` on the two-sided strip `b < |Im z| < r`.
#[derive(Clone)]
pub struct AnalyticRep {
    source: RepSource,
    b: f64,
    r: f64,
    multiplier: Option<Arc<AnalyticMinorant>>,
}

impl fmt::Debug for AnalyticRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticRep").field("label", &self.label()).field("b", &self.b).field("r", &self.r).finish()
    }
}

impl AnalyticRep {
    /// A closed-form analytic function on the given two-sided strip.
    pub fn from_fn(f: AnalyticFn, label: impl Into<String>, b: f64, r: f64, entire: bool) -> Result<AnalyticRep> {
        if !(b >= 0.0 && b < r) {
            return Err(invalid("need 0 <= b < R"));
        }
        Ok(AnalyticRep { source: RepSource::Function { f, label: label.into(), entire }, b, r, multiplier: None })
    }

    /// The constant function `c`, entire.
    pub fn constant(c: Complex64) -> AnalyticRep {
        AnalyticRep::from_fn(Arc::new(move |_| c), format!("const({c})"), 0.0, f64::INFINITY, true).unwrap()
    }

    /// `exp(-a z^2)`, entire.
    pub fn entire_gaussian(a: f64) -> AnalyticRep {
        AnalyticRep::from_fn(Arc::new(move |z: Complex64| (-a * z * z).exp()), format!("gaussian({a})"), 0.0, f64::INFINITY, true).unwrap()
    }

    pub fn label(&self) -> String {
        match &self.source {
            RepSource::Cauchy { f, .. } => match &self.multiplier {
                Some(p) => format!("cauchy[{f}] with multiplier {}", p.weight()),
                None => format!("cauchy[{f}]"),
            },
            RepSource::Function { label, .. } => label.clone(),
        }
    }

    pub fn inner(&self) -> f64 {
        self.b
    }

    pub fn outer(&self) -> f64 {
        self.r
    }

    /// Entire functions extend across the real axis.
    pub fn is_entire(&self) -> bool {
        matches!(self.source, RepSource::Function { entire: true, .. })
    }

    pub fn functional(&self) -> Option<&Functional> {
        match &self.source {
            RepSource::Cauchy { f, .. } => Some(f),
            RepSource::Function { .. } => None,
        }
    }

    pub fn multiplier(&self) -> Option<&AnalyticMinorant> {
        self.multiplier.as_deref()
    }

    /// Upper bound for `log |F(x + iy)|` up to an additive constant.
    fn growth_log(&self, x: f64) -> f64 {
        self.multiplier.as_ref().map_or(0.0, |p| p.upper_log_bound(x))
    }

    /// `F(z)`; fails at the singularities of a Cauchy transform or outside `|Im z| < r`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if !(z.im.abs() < self.r) {
            return Err(invalid(format!("{z} lies outside |Im z| < {}", self.r)));
        }
        match &self.source {
            RepSource::Function { f, .. } => Ok(f(z)),
            RepSource::Cauchy { f, q } => {
                let mut acc = ZERO;
                for (atom, qa) in f.atoms.iter().zip(q) {
                    let d = atom.location - z;
                    if d.norm() == 0.0 {
                        return Err(invalid(format!("{z} is a singular point of the representation")));
                    }
                    let n = atom.order;
                    let mut binom = 1.0;
                    let mut sum = ZERO;
                    for k in 0..=n {
                        let m = n - k;
                        let fact: f64 = (1..=m).map(|j| j as f64).product();
                        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                        sum += qa[k as usize] * (binom * sign * fact) * d.powi(-(m as i32) - 1);
                        binom = binom * (n - k) as f64 / (k + 1) as f64;
                    }
                    acc += atom.coefficient * sum;
                }
                if !f.densities.is_empty() {
                    if z.im == 0.0 {
                        return Err(invalid("density representations are singular on the real axis"));
                    }
                    let cfg = pair_cfg();
                    for d in &f.densities {
                        let failure = std::cell::RefCell::new(None);
                        let g = |x: f64| {
                            let qx = match &self.multiplier {
                                Some(p) => match p.eval_reciprocal(Complex64::new(x, 0.0)) {
                                    Ok(v) => v,
                                    Err(e) => {
                                        failure.borrow_mut().get_or_insert(e);
                                        ZERO
                                    }
                                },
                                None => Complex64::new(1.0, 0.0),
                            };
                            qx * d.profile.eval(x) / (Complex64::new(x, 0.0) - z)
                        };
                        let v = integrate_range(&g, d.lo, d.hi, d.profile.envelope(), &[0.0, z.re], &cfg)?;
                        if let Some(e) = failure.into_inner() {
                            return Err(e);
                        }
                        acc += d.coefficient * v;
                    }
                }
                let p = match &self.multiplier {
                    Some(m) => m.eval(z)?,
                    None => Complex64::new(1.0, 0.0),
                };
                Ok(p * acc / (2.0 * PI * I))
            }
        }
    }
}

/// `F(z) = (P(z) / 2 pi i) <f(zeta), 1 / ((zeta - z) P(zeta))>` on `b < |Im z| < r`.
pub fn cauchy_represent(f: &Functional, p: Option<&AnalyticMinorant>, b: f64, r: f64) -> Result<AnalyticRep> {
    if !(b > 0.0 && b < r) {
        return Err(invalid("need 0 < b < R"));
    }
    if let Some(a) = f.atoms.iter().find(|a| !(a.location.im.abs() < b)) {
        return Err(Error::Precondition(format!("atom at {} lies outside the inner strip |Im z| < {b}", a.location)));
    }
    if let Some(m) = p {
        if r > m.h() {
            return Err(Error::Precondition(format!("multiplier is analytic only on |Im z| < {}, below R = {r}", m.h())));
        }
    }
    let q = match p {
        None => f.atoms.iter().map(|a| std::iter::once(Complex64::new(1.0, 0.0)).chain((0..a.order).map(|_| ZERO)).collect()).collect(),
        Some(m) => {
            let recip = TestFunction::Reciprocal(Arc::new(m.clone()));
            f.atoms
                .iter()
                .map(|a| (0..=a.order).map(|k| recip.derivative(a.location, k)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(AnalyticRep { source: RepSource::Cauchy { f: f.clone(), q }, b, r, multiplier: p.map(|m| Arc::new(m.clone())) })
}

/// Contour data: half-height `k`, optional fixed truncation `|Re z - c| <= X`,
/// and real intervals for support-localized pairings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContourSpec {
    pub k: f64,
    pub truncation: Option<f64>,
    pub intervals: Vec<(f64, f64)>,
}

impl ContourSpec {
    pub fn new(k: f64) -> ContourSpec {
        ContourSpec { k, truncation: None, intervals: Vec::new() }
    }
}

fn atom_breaks(rep: &AnalyticRep) -> Vec<f64> {
    let mut b: Vec<f64> = rep.functional().map(|f| f.atoms.iter().map(|a| a.location.re).collect()).unwrap_or_default();
    b.sort_by(f64::total_cmp);
    b.dedup();
    b
}

/// Refuses pairings where `|F phi|` does not decay along the contour lines.
fn check_decay_budget(rep: &AnalyticRep, phi: &TestFunction, k: f64) -> Result<()> {
    if let (Some(p), TestFunction::Reciprocal(m)) = (rep.multiplier(), phi) {
        if p.weight().label() == m.weight().label() && m.lambda() <= p.lambda() {
            return Err(Error::DecayBudget(format!(
                "test function decays like exp(-omega({} x)) but the representation may grow like exp(omega({} x))",
                m.lambda(),
                p.lambda()
            )));
        }
    }
    let c = phi.center();
    let budget = |x: f64| -> Result<f64> {
        let a = phi.log_modulus(Complex64::new(c + x, k))?.max(phi.log_modulus(Complex64::new(c - x, -k))?);
        Ok(a + rep.growth_log(x.abs() + c.abs()))
    };
    let (near, far) = (budget(16.0)?, budget(64.0)?);
    if !(far < near && far < -20.0) && !phi.is_zero() {
        return Err(Error::DecayBudget(format!("|F phi| does not decay along Im z = +-{k}: log bound {near:.3} at 16, {far:.3} at 64")));
    }
    Ok(())
}

/// `<bv(F), phi> = -int_{Gamma_k} F(z) phi(z) dz`, with `Gamma_k` the counterclockwise
/// boundary of `|Im z| < k`.
pub fn boundary_pair(rep: &AnalyticRep, phi: &TestFunction, c: &ContourSpec) -> Result<Complex64> {
    let k = c.k;
    if !(k > rep.b && k < rep.r) {
        return Err(Error::Precondition(format!("contour height {k} must lie in ({}, {})", rep.b, rep.r)));
    }
    if !(k < phi.half_width()) {
        return Err(Error::Precondition(format!("contour height {k} exceeds the test function's strip {}", phi.half_width())));
    }
    if phi.is_zero() {
        return Ok(ZERO);
    }
    check_decay_budget(rep, phi, k)?;
    let cfg = pair_cfg();
    let integrand = |z: Complex64| -> Result<Complex64> { Ok(rep.eval(z)? * phi.eval(z)?) };
    let failure = std::sync::Mutex::new(None);
    let safe = |z: Complex64| match integrand(z) {
        Ok(v) => v,
        Err(e) => {
            failure.lock().unwrap().get_or_insert(e);
            ZERO
        }
    };
    let center = phi.center();
    let value = match c.truncation {
        Some(x) => {
            let mut rect = Rect::new(center - x, center + x, -k, k);
            rect.x_breaks = atom_breaks(rep);
            -contour_integral_rect(&safe, &rect, &cfg)?.value
        }
        None => {
            let breaks = atom_breaks(rep);
            let line = |y: f64| integrate_decaying(&|x: f64| safe(Complex64::new(x, y)), Domain::Line { center }, phi.envelope(), &breaks, &cfg);
            let (top, bottom) = rayon::join(|| line(k), || line(-k));
            top?.value - bottom?.value
        }
    };
    match failure.into_inner().unwrap() {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

/// Radius beyond which `|phi|` is negligible on `|Im z| <= k`.
fn truncation_radius(phi: &TestFunction, k: f64) -> Result<f64> {
    let c = phi.center();
    let peak = phi.log_modulus(Complex64::new(c, 0.0))?.max(0.0);
    let mut r = 4.0;
    while r < 1e6 {
        let worst = [k, -k, 0.0]
            .iter()
            .map(|&y| Ok(phi.log_modulus(Complex64::new(c + r, y))?.max(phi.log_modulus(Complex64::new(c - r, y))?)))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max);
        if worst < peak - 40.0 {
            return Ok(r);
        }
        r *= 2.0;
    }
    Err(Error::NonConvergence("test function does not decay enough to truncate the support contour".into()))
}

/// Rejects interval endpoints that meet an atom or cut through a density.
pub(crate) fn check_intervals(f: &Functional, intervals: &[(f64, f64)]) -> Result<()> {
    for &(lo, hi) in intervals {
        for e in [lo, hi].into_iter().filter(|e| e.is_finite()) {
            if f.atoms.iter().any(|a| (a.location.re - e).abs() <= 1e-12 * (1.0 + e.abs())) {
                return Err(invalid(format!("interval endpoint {e} coincides with an atom's real part")));
            }
            if f.densities.iter().any(|d| d.lo < e && e < d.hi) {
                return Err(invalid(format!("interval endpoint {e} lies inside a density's support")));
            }
        }
    }
    Ok(())
}

/// `-sum_J int_{Gamma^b(J)} F phi dz` over the rectangles `J x [-b, b]`.
pub fn support_pair(rep: &AnalyticRep, phi: &TestFunction, intervals: &[(f64, f64)], b: f64) -> Result<Complex64> {
    if !(b < phi.half_width() && b < rep.r) {
        return Err(Error::Precondition(format!("rectangle height {b} leaves the domain")));
    }
    if let Some(f) = rep.functional() {
        if !(f.max_abs_im() < b) {
            return Err(Error::Precondition(format!("an atom lies outside |Im z| < {b}")));
        }
        check_intervals(f, intervals)?;
    }
    if phi.is_zero() {
        return Ok(ZERO);
    }
    let needs_radius = intervals.iter().any(|(lo, hi)| !lo.is_finite() || !hi.is_finite());
    let radius = if needs_radius { truncation_radius(phi, b)? } else { 0.0 };
    let c = phi.center();
    let cfg = pair_cfg();
    let failure = std::sync::Mutex::new(None);
    let safe = |z: Complex64| match rep.eval(z).and_then(|f| Ok(f * phi.eval(z)?)) {
        Ok(v) => v,
        Err(e) => {
            failure.lock().unwrap().get_or_insert(e);
            ZERO
        }
    };
    let mut total = ZERO;
    for &(lo, hi) in intervals {
        if !(lo < hi) {
            return Err(invalid(format!("empty interval ({lo}, {hi})")));
        }
        let lo = if lo.is_finite() { lo } else { c - radius };
        let hi = if hi.is_finite() { hi } else { c + radius };
        if lo >= hi {
            continue;
        }
        let mut rect = Rect::new(lo, hi, -b, b);
        rect.x_breaks = atom_breaks(rep).into_iter().filter(|x| *x > lo && *x < hi).collect();
        total -= contour_integral_rect(&safe, &rect, &cfg)?.value;
    }
    match failure.into_inner().unwrap() {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// `|F(z) - (P(z)/2 pi i) int_{Gamma_L} F(zeta) / ((zeta - z) P(zeta)) dzeta|`.
pub fn edge_continuation_check(rep: &AnalyticRep, p: Option<&AnalyticMinorant>, l: f64, z: Complex64, cfg: &QuadConfig) -> Result<f64> {
    if !(l < rep.r) {
        return Err(Error::Precondition(format!("contour height {l} must stay below R = {}", rep.r)));
    }
    if !(z.im.abs() < l) {
        return Err(invalid(format!("{z} must lie strictly inside |Im z| < {l}")));
    }
    if let Some(m) = p {
        if !(l < m.h()) {
            return Err(Error::Precondition(format!("multiplier is analytic only on |Im z| < {}", m.h())));
        }
    }
    let fz = rep.eval(z)?;
    let failure = std::sync::Mutex::new(None);
    let g = |zeta: Complex64| -> Complex64 {
        let r = (|| -> Result<Complex64> {
            let q = match p {
                Some(m) => m.eval_reciprocal(zeta)?,
                None => Complex64::new(1.0, 0.0),
            };
            Ok(rep.eval(zeta)? * q / (zeta - z))
        })();
        match r {
            Ok(v) if v.is_finite() => v,
            Ok(_) => ZERO,
            Err(e) => {
                failure.lock().unwrap().get_or_insert(e);
                ZERO
            }
        }
    };
    let scale = l.max(1.0);
    let line = |y: f64| integrate_line_algebraic(&|x: f64| g(Complex64::new(x, y)), z.re, scale, cfg);
    let (bottom, top) = rayon::join(|| line(-l), || line(l));
    let contour = bottom?.value - top?.value;
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    let pz = match p {
        Some(m) => m.eval(z)?,
        None => Complex64::new(1.0, 0.0),
    };
    let rhs = pz * contour / (2.0 * PI * I);
    Ok((fz - rhs).norm())
}
