//! Test functions analytic on strips, weighted sup-norms, and membership
//! reports for the Beurling and Roumieu spaces.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::quad::Envelope;
use crate::spec::{parse_complex, parse_err, split_head, split_top};
use crate::stripharmonic::{build_minorant, AnalyticMinorant, MinorantMode};
use crate::verdict::{GridConfig, Status};
use crate::weights::{dominate_all_dilates, Weight};
use crate::Complex64;

/// How the weight is scaled in `e^{omega_lambda}`.
pub type ScalingMode = MinorantMode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    /// Projective: every `(h, lambda)`.
    Beurling,
    /// Inductive: some `(h, lambda)`.
    Roumieu,
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "beurling" => Ok(Flavor::Beurling),
            "roumieu" => Ok(Flavor::Roumieu),
            other => Err(parse_err(format!("unknown flavor `{other}`"))),
        }
    }
}

/// Analytic test functions on a strip `|Im z| < half_width`.
#[derive(Debug, Clone)]
pub enum TestFunction {
    Zero,
    /// `exp(-a (z - shift)^2)`.
    Gaussian { a: f64, shift: Complex64 },
    /// `1 / F` for an analytic minorant `F`.
    Reciprocal(Arc<AnalyticMinorant>),
    Product(Box<TestFunction>, Box<TestFunction>),
    /// `c phi(z)`.
    Scaled { c: Complex64, inner: Box<TestFunction> },
    /// `phi(lambda z)`.
    Dilated { lambda: f64, inner: Box<TestFunction> },
}

impl TestFunction {
    pub fn gaussian(a: f64, shift: Complex64) -> Result<TestFunction> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(invalid("gaussian needs a > 0"));
        }
        Ok(TestFunction::Gaussian { a, shift })
    }

    pub fn scaled(self, c: Complex64) -> TestFunction {
        TestFunction::Scaled { c, inner: Box::new(self) }
    }

    pub fn dilated(self, lambda: f64) -> Result<TestFunction> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(invalid("dilation must be positive"));
        }
        Ok(TestFunction::Dilated { lambda, inner: Box::new(self) })
    }

    pub fn times(self, other: TestFunction) -> TestFunction {
        TestFunction::Product(Box::new(self), Box::new(other))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            TestFunction::Zero => true,
            TestFunction::Product(a, b) => a.is_zero() || b.is_zero(),
            TestFunction::Scaled { c, inner } => *c == Complex64::new(0.0, 0.0) || inner.is_zero(),
            TestFunction::Dilated { inner, .. } => inner.is_zero(),
            _ => false,
        }
    }

    /// True for the constant produced from the zero weight.
    pub fn is_degenerate(&self) -> bool {
        match self {
            TestFunction::Reciprocal(f) => f.weight().is_degenerate() || f.weight().is_zero(),
            _ => false,
        }
    }

    /// Half-width of the strip of analyticity; infinite for entire functions.
    pub fn half_width(&self) -> f64 {
        match self {
            TestFunction::Zero | TestFunction::Gaussian { .. } => f64::INFINITY,
            TestFunction::Reciprocal(f) => f.h(),
            TestFunction::Product(a, b) => a.half_width().min(b.half_width()),
            TestFunction::Scaled { inner, .. } => inner.half_width(),
            TestFunction::Dilated { lambda, inner } => inner.half_width() / lambda,
        }
    }

    fn check(&self, z: Complex64) -> Result<()> {
        if !(z.im.abs() < self.half_width()) || !z.re.is_finite() {
            return Err(invalid(format!("{z} lies outside the strip |Im z| < {}", self.half_width())));
        }
        Ok(())
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.check(z)?;
        Ok(match self {
            TestFunction::Zero => Complex64::new(0.0, 0.0),
            TestFunction::Gaussian { a, shift } => {
                let u = z - shift;
                (-*a * u * u).exp()
            }
            TestFunction::Reciprocal(f) => f.eval_reciprocal(z)?,
            TestFunction::Product(a, b) => a.eval(z)? * b.eval(z)?,
            TestFunction::Scaled { c, inner } => c * inner.eval(z)?,
            TestFunction::Dilated { lambda, inner } => inner.eval(z * *lambda)?,
        })
    }

    /// `log |phi(z)|`, `-inf` for the zero function.
    pub fn log_modulus(&self, z: Complex64) -> Result<f64> {
        self.check(z)?;
        Ok(match self {
            TestFunction::Zero => f64::NEG_INFINITY,
            TestFunction::Gaussian { a, shift } => {
                let u = z - shift;
                -a * (u * u).re
            }
            TestFunction::Reciprocal(f) => -f.u(z.re, z.im)?,
            TestFunction::Product(a, b) => a.log_modulus(z)? + b.log_modulus(z)?,
            TestFunction::Scaled { c, inner } => c.norm().ln() + inner.log_modulus(z)?,
            TestFunction::Dilated { lambda, inner } => inner.log_modulus(z * *lambda)?,
        })
    }

    /// `phi^{(n)}(z)`: closed form for Gaussians, Cauchy integral on a circle otherwise.
    pub fn derivative(&self, z: Complex64, n: u32) -> Result<Complex64> {
        if n == 0 {
            return self.eval(z);
        }
        self.check(z)?;
        match self {
            TestFunction::Zero => Ok(Complex64::new(0.0, 0.0)),
            TestFunction::Gaussian { a, shift } => {
                // d^n/dz^n exp(-a u^2) = (-sqrt a)^n H_n(sqrt a u) exp(-a u^2).
                let r = a.sqrt();
                let u = z - shift;
                let x = u * r;
                let (mut h0, mut h1) = (Complex64::new(1.0, 0.0), x * 2.0);
                for k in 1..n {
                    let h2 = x * h1 * 2.0 - h0 * (2.0 * k as f64);
                    h0 = h1;
                    h1 = h2;
                }
                Ok(h1 * (-r).powi(n as i32) * (-*a * u * u).exp())
            }
            TestFunction::Product(a, b) => {
                let mut acc = Complex64::new(0.0, 0.0);
                let mut binom = 1.0;
                for k in 0..=n {
                    acc += a.derivative(z, k)? * b.derivative(z, n - k)? * binom;
                    binom = binom * (n - k) as f64 / (k + 1) as f64;
                }
                Ok(acc)
            }
            TestFunction::Scaled { c, inner } => Ok(c * inner.derivative(z, n)?),
            TestFunction::Dilated { lambda, inner } => Ok(inner.derivative(z * *lambda, n)? * lambda.powi(n as i32)),
            TestFunction::Reciprocal(_) => self.cauchy_derivative(z, n),
        }
    }

    fn cauchy_derivative(&self, z: Complex64, n: u32) -> Result<Complex64> {
        let room = self.half_width() - z.im.abs();
        let r = (0.5 * room).min(0.5);
        let m = 64;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..m {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
            let e = Complex64::from_polar(1.0, theta);
            acc += self.eval(z + e * r)? * e.powi(-(n as i32));
        }
        let fact: f64 = (1..=n).map(|k| k as f64).product();
        Ok(acc * (fact / (m as f64 * r.powi(n as i32))))
    }

    /// Decay of `|phi|` along horizontal lines, for truncating line integrals.
    pub fn envelope(&self) -> Envelope {
        match self {
            TestFunction::Zero => Envelope::Gaussian { a: 1.0 },
            TestFunction::Gaussian { a, .. } => Envelope::Gaussian { a: 0.5 * a },
            TestFunction::Reciprocal(f) => {
                let x = 32.0;
                Envelope::Exponential { rate: (f.lower_log_bound(x) / x).clamp(1e-3, 1.0) }
            }
            TestFunction::Product(a, b) => match (a.envelope(), b.envelope()) {
                (Envelope::Gaussian { a: p }, Envelope::Gaussian { a: q }) => Envelope::Gaussian { a: p + q },
                (g @ Envelope::Gaussian { .. }, _) | (_, g @ Envelope::Gaussian { .. }) => g,
                (Envelope::Exponential { rate: p }, Envelope::Exponential { rate: q }) => Envelope::Exponential { rate: p + q },
            },
            TestFunction::Scaled { inner, .. } => inner.envelope(),
            TestFunction::Dilated { lambda, inner } => match inner.envelope() {
                Envelope::Gaussian { a } => Envelope::Gaussian { a: a * lambda * lambda },
                Envelope::Exponential { rate } => Envelope::Exponential { rate: rate * lambda },
            },
        }
    }

    /// Rough center of mass along the real axis, used to place truncation windows.
    pub fn center(&self) -> f64 {
        match self {
            TestFunction::Gaussian { shift, .. } => shift.re,
            TestFunction::Product(a, b) => 0.5 * (a.center() + b.center()),
            TestFunction::Scaled { inner, .. } => inner.center(),
            TestFunction::Dilated { lambda, inner } => inner.center() / lambda,
            _ => 0.0,
        }
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::Zero => write!(f, "zero"),
            TestFunction::Gaussian { a, shift } => write!(f, "gaussian:a={a},shift={}{:+}i", shift.re, shift.im),
            TestFunction::Reciprocal(m) => write!(f, "recip(h={},lambda={}):{}", m.h(), m.lambda(), m.weight()),
            TestFunction::Product(a, b) => write!(f, "product:{a};{b}"),
            TestFunction::Scaled { c, inner } => write!(f, "scale({c}):{inner}"),
            TestFunction::Dilated { lambda, inner } => write!(f, "dilate({lambda}):{inner}"),
        }
    }
}

fn key_values(s: &str) -> Result<Vec<(String, String)>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| parse_err(format!("expected key=value, got `{kv}`")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn number(v: &str, what: &str) -> Result<f64> {
    v.parse().map_err(|_| parse_err(format!("bad number `{v}` for {what}")))
}

impl FromStr for TestFunction {
    type Err = Error;

    /// `zero`, `gaussian:a=<f>[,shift=<re>+<im>i]`, `recip[(h=..,lambda=..,mode=..)]:<weight-spec>`,
    /// `product:<spec>;<spec>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = split_head(s);
        let (name, args) = match head.split_once('(') {
            Some((n, a)) => (n, a.strip_suffix(')').ok_or_else(|| parse_err(format!("unclosed `(` in `{head}`")))?),
            None => (head, ""),
        };
        match name {
            "zero" => Ok(TestFunction::Zero),
            "gaussian" => {
                let mut a = None;
                let mut shift = Complex64::new(0.0, 0.0);
                for (k, v) in key_values(rest)? {
                    match k.as_str() {
                        "a" => a = Some(number(&v, "a")?),
                        "shift" => shift = parse_complex(&v)?,
                        other => return Err(parse_err(format!("unknown gaussian parameter `{other}`"))),
                    }
                }
                TestFunction::gaussian(a.ok_or_else(|| parse_err("gaussian needs a=<f>"))?, shift)
            }
            "recip" => {
                let w: Weight = rest.parse()?;
                let (mut h, mut lambda, mut mode) = (1.0, 1.0, None);
                for (k, v) in key_values(args)? {
                    match k.as_str() {
                        "h" => h = number(&v, "h")?,
                        "lambda" => lambda = number(&v, "lambda")?,
                        "mode" => mode = Some(v.parse::<MinorantMode>()?),
                        other => return Err(parse_err(format!("unknown recip parameter `{other}`"))),
                    }
                }
                match mode {
                    Some(m) => Ok(TestFunction::Reciprocal(Arc::new(build_minorant(&w, lambda, h, m)?))),
                    None => make_test_function(&w, h),
                }
            }
            "product" => {
                let parts = split_top(rest, ';');
                if parts.len() != 2 {
                    return Err(parse_err("product needs exactly two factors separated by `;`"));
                }
                Ok(parts[0].parse::<TestFunction>()?.times(parts[1].parse()?))
            }
            other => Err(parse_err(format!("unknown test function `{other}`"))),
        }
    }
}

/// Weight, strip and scale of a normed space `A^{h, lambda}_omega`.
#[derive(Debug, Clone)]
pub struct SpaceParams {
    pub weight: Weight,
    pub h: f64,
    pub lambda: f64,
    pub flavor: Flavor,
    pub scaling: ScalingMode,
}

impl SpaceParams {
    pub fn new(weight: Weight, h: f64, lambda: f64) -> SpaceParams {
        SpaceParams { weight, h, lambda, flavor: Flavor::Beurling, scaling: ScalingMode::Dilate }
    }

    /// `omega(lambda x)` or `lambda omega(x)`.
    pub fn scaled_weight(&self, x: f64) -> f64 {
        match self.scaling {
            ScalingMode::Dilate => self.weight.eval(self.lambda * x),
            ScalingMode::Subadditive => self.lambda * self.weight.eval(x),
        }
    }

    fn eval_limit(&self) -> f64 {
        match self.scaling {
            ScalingMode::Dilate => self.weight.eval_limit() / self.lambda,
            ScalingMode::Subadditive => self.weight.eval_limit(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NormReport {
    /// Grid supremum of `|phi(z)| e^{omega_lambda(x)}`, or `+inf` when divergent.
    pub value: f64,
    pub log_value: f64,
    pub argmax: (f64, f64),
    /// The supremum sits on the edge of the closed sub-strip used for sampling.
    pub boundary_limited: bool,
    pub divergent: bool,
    /// Final truncation `|x| <= truncation`.
    pub truncation: f64,
}

const NX: usize = 201;
const NY: usize = 21;
const DIVERGENCE_LOG: f64 = 27.631_021_115_928_547; // ln 1e12

fn golden_max(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = hi - g * (hi - lo);
    let mut d = lo + g * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - g * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + g * (hi - lo);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Grid supremum of `|phi(z)| e^{omega_lambda(x)}` over `|y| <= h(1 - 1e-6)`,
/// with truncation doubling in `x` and a local refinement around the argmax.
pub fn strip_norm(phi: &TestFunction, p: &SpaceParams, _cfg: &GridConfig) -> Result<NormReport> {
    if !(p.h > 0.0 && p.lambda > 0.0) {
        return Err(invalid("h and lambda must be positive"));
    }
    if phi.half_width() < p.h {
        return Err(Error::Precondition(format!("{phi} is analytic only on |Im z| < {}, not on the requested strip of half-width {}", phi.half_width(), p.h)));
    }
    if phi.is_zero() {
        return Ok(NormReport { value: 0.0, log_value: f64::NEG_INFINITY, argmax: (0.0, 0.0), boundary_limited: false, divergent: false, truncation: 0.0 });
    }
    let hy = p.h * (1.0 - 1e-6);
    let ys: Vec<f64> = (0..NY).map(|j| -hy + 2.0 * hy * j as f64 / (NY - 1) as f64).collect();
    let objective = |x: f64, y: f64| -> Result<f64> {
        let v = phi.log_modulus(Complex64::new(x, y))? + p.scaled_weight(x);
        Ok(if v.is_nan() { f64::INFINITY } else { v })
    };
    let sweep = |xs: Vec<f64>| -> Result<(f64, f64, f64)> {
        let pts: Vec<(f64, f64)> = xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).collect();
        let vals: Vec<f64> = pts.par_iter().map(|&(x, y)| objective(x, y)).collect::<Result<_>>()?;
        let (i, v) = vals.iter().enumerate().fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        Ok((pts[i].0, pts[i].1, v))
    };
    let limit = p.eval_limit();
    let center = phi.center();
    let mut x_max = (8.0f64).max(4.0 * p.h).min(limit);
    let xs0: Vec<f64> = (0..NX).map(|i| center - x_max + 2.0 * x_max * i as f64 / (NX - 1) as f64).collect();
    let (mut bx, mut by, mut best) = sweep(xs0)?;
    let mut rises = 0;
    let mut divergent = false;
    loop {
        if best == f64::INFINITY {
            divergent = true;
            break;
        }
        let next = (2.0 * x_max).min(limit);
        if next <= x_max || next > 1e7 {
            break;
        }
        let half = (NX - 1) / 2;
        let mut xs = Vec::with_capacity(2 * half);
        for i in 1..=half {
            let x = x_max + (next - x_max) * i as f64 / half as f64;
            xs.push(center + x);
            xs.push(center - x);
        }
        let (ax, ay, av) = sweep(xs)?;
        x_max = next;
        if av > best {
            let gained = av - best;
            bx = ax;
            by = ay;
            best = av;
            rises += 1;
            if rises >= 2 && best > DIVERGENCE_LOG {
                divergent = true;
                break;
            }
            if gained < 1e-12 * best.abs() {
                break;
            }
        } else {
            rises = 0;
            if av < best - 1.0 {
                break;
            }
        }
    }
    if divergent {
        return Ok(NormReport { value: f64::INFINITY, log_value: f64::INFINITY, argmax: (bx, by), boundary_limited: false, divergent: true, truncation: x_max });
    }
    // Local refinement: alternate golden-section searches in x and y.
    let dx = 2.0 * x_max / (NX - 1) as f64;
    let dy = 2.0 * hy / (NY - 1) as f64;
    let f = |x: f64, y: f64| objective(x, y).unwrap_or(f64::NEG_INFINITY);
    for _ in 0..3 {
        let (nx, vx) = golden_max(&|x| f(x, by), bx - dx, bx + dx, 60);
        if vx > best {
            bx = nx;
            best = vx;
        }
        let (ny, vy) = golden_max(&|y| f(bx, y), (by - dy).max(-hy), (by + dy).min(hy), 60);
        if vy > best {
            by = ny;
            best = vy;
        }
        for y in [-hy, hy] {
            let v = f(bx, y);
            if v > best {
                best = v;
                by = y;
            }
        }
    }
    let boundary_limited = (by.abs() - hy).abs() <= 1e-9 * hy.max(1.0) || (hy - by.abs()) < dy * 1e-3;
    Ok(NormReport { value: best.exp(), log_value: best, argmax: (bx, by), boundary_limited, divergent: false, truncation: x_max })
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeEntry {
    pub h: f64,
    pub lambda: f64,
    pub norm: f64,
    pub finite: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MembershipReport {
    pub flavor: Flavor,
    pub scaling: ScalingMode,
    pub member: bool,
    pub status: Status,
    /// A lattice point deciding the verdict: a divergence for Beurling
    /// non-members, a finite norm for Roumieu members.
    pub witness: Option<(f64, f64)>,
    pub entries: Vec<LatticeEntry>,
}

/// Lattice of `(h, lambda)` values used by [`membership_report`].
pub const LATTICE: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];

/// Norm verdicts over the `(h, lambda)` lattice and the flavor-level conclusion.
pub fn membership_report(phi: &TestFunction, w: &Weight, flavor: Flavor, scaling: ScalingMode, cfg: &GridConfig) -> Result<MembershipReport> {
    let mut entries = Vec::new();
    for &h in &LATTICE {
        for &lambda in &LATTICE {
            let p = SpaceParams { weight: w.clone(), h, lambda, flavor, scaling };
            let e = match strip_norm(phi, &p, cfg) {
                Ok(r) => LatticeEntry { h, lambda, norm: r.value, finite: !r.divergent, note: None },
                Err(Error::Precondition(msg)) => LatticeEntry { h, lambda, norm: f64::INFINITY, finite: false, note: Some(msg) },
                Err(e) => return Err(e),
            };
            entries.push(e);
        }
    }
    // Prefer witnesses near (1, 1) so reports are easy to read.
    let nearest = |pred: &dyn Fn(&LatticeEntry) -> bool| -> Option<(f64, f64)> {
        entries
            .iter()
            .filter(|e| pred(e))
            .min_by(|a, b| {
                let d = |e: &LatticeEntry| e.h.ln().abs() + e.lambda.ln().abs();
                d(a).total_cmp(&d(b))
            })
            .map(|e| (e.h, e.lambda))
    };
    let (member, witness) = match flavor {
        Flavor::Beurling => {
            let bad = nearest(&|e| !e.finite);
            (bad.is_none(), bad)
        }
        Flavor::Roumieu => {
            let good = nearest(&|e| e.finite);
            (good.is_some(), good)
        }
    };
    let status = if member { Status::NumericallySupported } else { Status::Fails };
    Ok(MembershipReport { flavor, scaling, member, status, witness, entries })
}

/// `1 / F` with `F` the minorant of a weight dominating every dilate of `w_dom`.
pub fn make_test_function(w_dom: &Weight, h: f64) -> Result<TestFunction> {
    make_test_function_with(w_dom, h, &GridConfig::default())
}

/// [`make_test_function`] with explicit grid settings for the dominating weight.
pub fn make_test_function_with(w_dom: &Weight, h: f64, cfg: &GridConfig) -> Result<TestFunction> {
    let sigma = dominate_all_dilates(w_dom, cfg)?;
    let f = build_minorant(&sigma, 1.0, h, MinorantMode::Dilate)?;
    Ok(TestFunction::Reciprocal(Arc::new(f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params(w: &str, h: f64, lambda: f64) -> SpaceParams {
        SpaceParams::new(w.parse().unwrap(), h, lambda)
    }

    #[test]
    fn norm_examples() {
        let g = TestFunction::gaussian(1.0, Complex64::new(0.0, 0.0)).unwrap();
        let cfg = GridConfig::default();
        let r = strip_norm(&g, &params("linear", 1.0, 1.0), &cfg).unwrap();
        assert_abs_diff_eq!(r.value, 1.25f64.exp(), epsilon = 1e-4);
        assert!(r.boundary_limited);
        assert_abs_diff_eq!(r.argmax.0.abs(), 0.5, epsilon = 1e-4);
        let q = strip_norm(&g, &params("power:s=2", 1.0, 1.0), &cfg).unwrap();
        assert_abs_diff_eq!(q.value, std::f64::consts::E, epsilon = 1e-4);
        assert_eq!(strip_norm(&TestFunction::Zero, &params("exp", 1.0, 1.0), &cfg).unwrap().value, 0.0);
        let d = strip_norm(&g, &params("exp", 1.0, 1.0), &cfg).unwrap();
        assert!(d.divergent && d.value.is_infinite());
    }

    #[test]
    fn membership_examples() {
        let g = TestFunction::gaussian(1.0, Complex64::new(0.0, 0.0)).unwrap();
        let cfg = GridConfig::default();
        let lin = membership_report(&g, &Weight::linear(), Flavor::Beurling, ScalingMode::Dilate, &cfg).unwrap();
        assert!(lin.member);
        let ex = membership_report(&g, &Weight::exp(), Flavor::Beurling, ScalingMode::Dilate, &cfg).unwrap();
        assert!(!ex.member);
        assert_eq!(ex.witness, Some((1.0, 1.0)));
        let z = membership_report(&TestFunction::Zero, &Weight::exp(), Flavor::Beurling, ScalingMode::Dilate, &cfg).unwrap();
        assert!(z.member);
    }

    #[test]
    fn gaussian_derivatives_match_cauchy_integral() {
        let g = TestFunction::gaussian(0.7, Complex64::new(1.0, 0.3)).unwrap();
        let z = Complex64::new(0.4, -0.2);
        for n in 0..4 {
            let exact = g.derivative(z, n).unwrap();
            let circle = g.cauchy_derivative(z, n).unwrap();
            assert!((exact - circle).norm() < 1e-10, "n = {n}");
        }
        let d1 = "gaussian:a=1,shift=1+0i".parse::<TestFunction>().unwrap().derivative(Complex64::new(0.0, 0.0), 1).unwrap();
        assert_abs_diff_eq!(d1.re, 2.0 / std::f64::consts::E, epsilon = 1e-14);
    }

    #[test]
    fn parse_round_trip() {
        let p: TestFunction = "product:gaussian:a=1;gaussian:a=2,shift=1-1i".parse().unwrap();
        let z = Complex64::new(0.3, 0.1);
        let direct = (-(z * z)).exp() * (-(z - Complex64::new(1.0, -1.0)).powi(2) * 2.0).exp();
        assert!((p.eval(z).unwrap() - direct).norm() < 1e-14);
        assert!("gaussian:a=-1".parse::<TestFunction>().is_err());
        assert!("wavelet:a=1".parse::<TestFunction>().is_err());
        let r: TestFunction = "recip(h=1,lambda=1,mode=subadditive):linear".parse().unwrap();
        assert_eq!(r.half_width(), 1.0);
    }

    #[test]
    fn make_test_function_examples() {
        assert!(make_test_function(&Weight::exp(), 1.0).is_err());
        let z = make_test_function(&Weight::zero(), 1.0).unwrap();
        assert!(z.is_degenerate());
        assert_abs_diff_eq!(z.eval(Complex64::new(2.0, 0.5)).unwrap().re, 1.0, epsilon = 1e-15);
    }
}
