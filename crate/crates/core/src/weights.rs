//! Weight functions: a catalog with symbolic asymptotic facts, growth
//! conditions, order relations, three constructions of new weights, and the
//! Young conjugate.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::quad::{integrate, integrate_decaying, integrate_with_breaks, Domain, Envelope, QuadConfig};
use crate::sequences::{WeightSequence, MAX_INDEX};
use crate::spec::{ensure_empty, parse_err, parse_params, split_head, take};
use crate::verdict::{bounded_above, log_spaced, ConditionVerdict, GridConfig, Relation, RelationSet, Status};

/// Facts known symbolically for a weight. `None` means unknown.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct AsymptoticTags {
    /// `(eps)_mu` holds exactly for `mu > epsilon_rate`; infinite when it never holds.
    pub epsilon_rate: Option<f64>,
    pub subadditive: Option<bool>,
    /// Condition (NA): `omega(t) = o(t)`.
    pub little_o: Option<bool>,
    pub delta: Option<bool>,
    pub gamma: Option<bool>,
    pub gamma0: Option<bool>,
    pub zeta: Option<bool>,
    /// Smooth, strictly concave, with `omega'` a bijection onto `(0, inf)`.
    pub smooth_concave: bool,
}

impl AsymptoticTags {
    fn all(rate: f64, subadditive: bool, little_o: bool, delta: bool, growth: bool) -> Self {
        AsymptoticTags {
            epsilon_rate: Some(rate),
            subadditive: Some(subadditive),
            little_o: Some(little_o),
            delta: Some(delta),
            gamma: Some(growth),
            gamma0: Some(growth),
            zeta: Some(growth),
            smooth_concave: false,
        }
    }

    fn zero() -> Self {
        AsymptoticTags { gamma0: Some(false), zeta: Some(false), gamma: Some(false), ..Self::all(0.0, true, true, true, false) }
    }

    /// Human-readable list of the positive facts.
    pub fn names(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut push = |flag: Option<bool>, name: &str| {
            if flag == Some(true) {
                out.push(name.to_string());
            }
        };
        push(self.subadditive, "subadditive");
        push(self.little_o, "o(t)");
        push(self.delta, "(delta)");
        push(self.gamma, "(gamma)");
        push(self.gamma0, "(gamma)_0");
        push(self.zeta, "(zeta)");
        match self.epsilon_rate {
            Some(0.0) => out.push("(eps)_0".to_string()),
            Some(r) if r.is_finite() => out.push(format!("(eps)_mu for mu > {r}")),
            _ => {}
        }
        if self.smooth_concave {
            out.push("smooth concave".to_string());
        }
        out
    }

    fn dilated(&self, lambda: f64) -> Self {
        AsymptoticTags {
            epsilon_rate: self.epsilon_rate.map(|r| r * lambda),
            smooth_concave: self.smooth_concave,
            ..self.clone()
        }
    }
}

/// How a constructed weight was obtained from its base weight.
#[derive(Debug)]
pub enum Construction {
    /// `sigma(t) = int_0^{t+1} omega`.
    Majorized { base: Weight },
    /// `sigma = omega + n log t` on `[t_n, t_{n+1})`.
    Zeta { base: Weight, thresholds: Vec<f64>, valid_up_to: f64 },
    /// `sigma(t) = n omega(n t)` on `[t_n/n, t_{n+1}/(n+1))`; `breaks[n-1] = t_n / n`.
    DominateAll { base: Weight, breaks: Vec<f64>, degenerate: bool, valid_up_to: f64 },
}

#[derive(Debug, Clone)]
pub enum WeightKind {
    Zero,
    Power { s: f64 },
    ExpLog { s: f64, r: f64 },
    ExpOverLog { s: f64 },
    Exp,
    Linear,
    Log1p,
    TwoSqrt,
    Assoc(Arc<WeightSequence>),
    Piecewise(Arc<Construction>),
    /// `omega(lambda t)`.
    Dilated { inner: Arc<Weight>, lambda: f64 },
    /// `lambda omega(t)`.
    Multiple { inner: Arc<Weight>, lambda: f64 },
}

/// A non-decreasing weight `omega: [0, inf) -> [0, inf)`, evaluated evenly on the line.
#[derive(Debug, Clone)]
pub struct Weight {
    kind: WeightKind,
    tags: AsymptoticTags,
    label: String,
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

impl Weight {
    pub fn zero() -> Weight {
        Weight { kind: WeightKind::Zero, tags: AsymptoticTags::zero(), label: "zero".into() }
    }

    pub fn power(s: f64) -> Result<Weight> {
        positive("power exponent", s)?;
        let mut tags = AsymptoticTags::all(0.0, s <= 1.0, s < 1.0, true, true);
        tags.smooth_concave = s < 1.0;
        Ok(Weight { kind: WeightKind::Power { s }, tags, label: format!("power:s={s}") })
    }

    /// `exp(t^s log^r(1+t))` with `0 < s < 1`, `r > 0`.
    pub fn explog(s: f64, r: f64) -> Result<Weight> {
        if !(s > 0.0 && s < 1.0 && r > 0.0 && r.is_finite()) {
            return Err(invalid("explog needs 0 < s < 1 and r > 0"));
        }
        let tags = AsymptoticTags::all(0.0, false, false, true, true);
        Ok(Weight { kind: WeightKind::ExpLog { s, r }, tags, label: format!("explog:s={s},r={r}") })
    }

    /// `exp(t / log^s(e+t))` with `s > 0`.
    pub fn exp_over_log(s: f64) -> Result<Weight> {
        positive("expoverlog exponent", s)?;
        let tags = AsymptoticTags::all(0.0, false, false, true, true);
        Ok(Weight { kind: WeightKind::ExpOverLog { s }, tags, label: format!("expoverlog:s={s}") })
    }

    pub fn exp() -> Weight {
        Weight { kind: WeightKind::Exp, tags: AsymptoticTags::all(1.0, false, false, true, true), label: "exp".into() }
    }

    pub fn linear() -> Weight {
        Weight { kind: WeightKind::Linear, tags: AsymptoticTags::all(0.0, true, false, true, true), label: "linear".into() }
    }

    pub fn log1p() -> Weight {
        let tags = AsymptoticTags {
            gamma0: Some(false),
            zeta: Some(false),
            delta: Some(false),
            ..AsymptoticTags::all(0.0, true, true, false, true)
        };
        Weight { kind: WeightKind::Log1p, tags, label: "log1p".into() }
    }

    /// `2 sqrt(t)`.
    pub fn twosqrt() -> Weight {
        let mut tags = AsymptoticTags::all(0.0, true, true, true, true);
        tags.smooth_concave = true;
        Weight { kind: WeightKind::TwoSqrt, tags, label: "twosqrt".into() }
    }

    /// Associated function of a weight sequence.
    pub fn assoc(seq: WeightSequence) -> Weight {
        let rate = seq.m5_rate();
        let m2 = seq.generator().map(|g| g.satisfies_m2());
        let tags = AsymptoticTags {
            epsilon_rate: rate,
            subadditive: None,
            little_o: None,
            delta: m2,
            gamma: Some(true),
            gamma0: Some(true),
            zeta: Some(true),
            smooth_concave: false,
        };
        let label = format!("assoc:{}", seq.label());
        Weight { kind: WeightKind::Assoc(Arc::new(seq)), tags, label }
    }

    /// `t -> self(lambda t)`.
    pub fn dilate(&self, lambda: f64) -> Result<Weight> {
        positive("dilation", lambda)?;
        if lambda == 1.0 {
            return Ok(self.clone());
        }
        if matches!(self.kind, WeightKind::Zero) {
            return Ok(self.clone());
        }
        Ok(Weight {
            tags: self.tags.dilated(lambda),
            label: format!("dilate({lambda})[{}]", self.label),
            kind: WeightKind::Dilated { inner: Arc::new(self.clone()), lambda },
        })
    }

    /// `t -> lambda self(t)`.
    pub fn scale(&self, lambda: f64) -> Result<Weight> {
        positive("factor", lambda)?;
        if lambda == 1.0 || matches!(self.kind, WeightKind::Zero) {
            return Ok(self.clone());
        }
        Ok(Weight {
            tags: self.tags.clone(),
            label: format!("scale({lambda})[{}]", self.label),
            kind: WeightKind::Multiple { inner: Arc::new(self.clone()), lambda },
        })
    }

    pub fn kind(&self) -> &WeightKind {
        &self.kind
    }

    pub fn tags(&self) -> &AsymptoticTags {
        &self.tags
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_zero(&self) -> bool {
        match &self.kind {
            WeightKind::Zero => true,
            WeightKind::Piecewise(c) => match c.as_ref() {
                Construction::Majorized { base } | Construction::Zeta { base, .. } | Construction::DominateAll { base, .. } => {
                    base.is_zero()
                }
            },
            WeightKind::Dilated { inner, .. } | WeightKind::Multiple { inner, .. } => inner.is_zero(),
            _ => false,
        }
    }

    /// True for the degenerate output of [`dominate_all_dilates`] on the zero weight.
    pub fn is_degenerate(&self) -> bool {
        matches!(&self.kind, WeightKind::Piecewise(c) if matches!(c.as_ref(), Construction::DominateAll { degenerate: true, .. }))
    }

    /// Critical `(eps)_mu` rate, if known.
    pub fn epsilon_rate(&self) -> Option<f64> {
        self.tags.epsilon_rate
    }

    /// Largest argument the weight can be evaluated at (finite only for
    /// associated functions of sequences with bounded index range).
    pub fn eval_limit(&self) -> f64 {
        match &self.kind {
            WeightKind::Assoc(seq) => {
                let top = if seq.generator().is_some() { MAX_INDEX } else { seq.prefix_len() as u64 };
                seq.quotient(top).unwrap_or(f64::INFINITY) * (1.0 - 1e-12)
            }
            WeightKind::Dilated { inner, lambda } => inner.eval_limit() / lambda,
            WeightKind::Multiple { inner, .. } => inner.eval_limit(),
            WeightKind::Piecewise(c) => match c.as_ref() {
                Construction::Majorized { base } => base.eval_limit() - 1.0,
                Construction::Zeta { base, .. } => base.eval_limit(),
                Construction::DominateAll { base, breaks, .. } => {
                    let n = breaks.len().max(1) as f64;
                    base.eval_limit() / n
                }
            },
            _ => f64::INFINITY,
        }
    }

    /// `omega(|t|)`; `+inf` where the value overflows or is out of range.
    pub fn eval(&self, t: f64) -> f64 {
        self.try_eval(t).unwrap_or(f64::INFINITY)
    }

    /// `omega(|t|)`, reporting out-of-range arguments as errors.
    pub fn try_eval(&self, t: f64) -> Result<f64> {
        if !t.is_finite() {
            return Err(invalid("weight argument must be finite"));
        }
        let t = t.abs();
        Ok(match &self.kind {
            WeightKind::Zero => 0.0,
            WeightKind::Power { s } => t.powf(*s),
            WeightKind::ExpLog { s, r } => (t.powf(*s) * t.ln_1p().powf(*r)).exp(),
            WeightKind::ExpOverLog { s } => (t / (std::f64::consts::E + t).ln().powf(*s)).exp(),
            WeightKind::Exp => t.exp(),
            WeightKind::Linear => t,
            WeightKind::Log1p => t.ln_1p(),
            WeightKind::TwoSqrt => 2.0 * t.sqrt(),
            WeightKind::Assoc(seq) => seq.associated_function(t)?,
            WeightKind::Dilated { inner, lambda } => inner.try_eval(lambda * t)?,
            WeightKind::Multiple { inner, lambda } => lambda * inner.try_eval(t)?,
            WeightKind::Piecewise(c) => c.eval(t)?,
        })
    }

    /// `omega'(t)` for `t > 0`, when available in closed form.
    pub fn derivative(&self, t: f64) -> Option<f64> {
        let t = t.abs();
        Some(match &self.kind {
            WeightKind::Zero => 0.0,
            WeightKind::Power { s } => s * t.powf(s - 1.0),
            WeightKind::ExpLog { s, r } => {
                let l = t.ln_1p();
                let g = t.powf(*s) * l.powf(*r);
                let dg = s * t.powf(s - 1.0) * l.powf(*r) + r * t.powf(*s) * l.powf(r - 1.0) / (1.0 + t);
                g.exp() * dg
            }
            WeightKind::ExpOverLog { s } => {
                let l = (std::f64::consts::E + t).ln();
                let g = t / l.powf(*s);
                let dg = 1.0 / l.powf(*s) - s * t / ((std::f64::consts::E + t) * l.powf(s + 1.0));
                g.exp() * dg
            }
            WeightKind::Exp => t.exp(),
            WeightKind::Linear => 1.0,
            WeightKind::Log1p => 1.0 / (1.0 + t),
            WeightKind::TwoSqrt => 1.0 / t.sqrt(),
            WeightKind::Assoc(seq) => seq.counting_function(t).ok()? as f64 / t,
            WeightKind::Dilated { inner, lambda } => lambda * inner.derivative(lambda * t)?,
            WeightKind::Multiple { inner, lambda } => lambda * inner.derivative(t)?,
            WeightKind::Piecewise(_) => return None,
        })
    }

    /// `omega''(t)` for smooth concave entries.
    pub fn second_derivative(&self, t: f64) -> Option<f64> {
        let t = t.abs();
        match &self.kind {
            WeightKind::Power { s } => Some(s * (s - 1.0) * t.powf(s - 2.0)),
            WeightKind::TwoSqrt => Some(-0.5 * t.powf(-1.5)),
            WeightKind::Dilated { inner, lambda } => Some(lambda * lambda * inner.second_derivative(lambda * t)?),
            WeightKind::Multiple { inner, lambda } => Some(lambda * inner.second_derivative(t)?),
            _ => None,
        }
    }

    /// Points in `(lo, hi)` where the weight or its derivative may jump.
    pub fn breakpoints(&self, lo: f64, hi: f64) -> Vec<f64> {
        let inside = |x: &f64| *x > lo && *x < hi;
        match &self.kind {
            WeightKind::Piecewise(c) => match c.as_ref() {
                Construction::Zeta { thresholds, .. } => thresholds.iter().copied().filter(inside).collect(),
                Construction::DominateAll { breaks, .. } => breaks.iter().copied().filter(inside).collect(),
                Construction::Majorized { .. } => Vec::new(),
            },
            WeightKind::Assoc(seq) => {
                let mut out = Vec::new();
                for p in 1..=2000u64 {
                    match seq.quotient(p) {
                        Ok(q) if q < hi => {
                            if q > lo {
                                out.push(q)
                            }
                        }
                        _ => break,
                    }
                }
                out
            }
            WeightKind::Dilated { inner, lambda } => inner.breakpoints(lo * lambda, hi * lambda).into_iter().map(|x| x / lambda).collect(),
            WeightKind::Multiple { inner, .. } => inner.breakpoints(lo, hi),
            _ => Vec::new(),
        }
    }

    /// Breakpoints of the even extension within `(lo, hi)`, including 0.
    pub fn even_breakpoints(&self, lo: f64, hi: f64) -> Vec<f64> {
        let r = lo.abs().max(hi.abs());
        let mut out: Vec<f64> = self.breakpoints(0.0, r).into_iter().flat_map(|b| [b, -b]).collect();
        out.push(0.0);
        out.retain(|x| *x > lo && *x < hi);
        out.sort_by(f64::total_cmp);
        out
    }
}

impl Construction {
    fn eval(&self, t: f64) -> Result<f64> {
        match self {
            Construction::Majorized { base } => {
                if base.is_zero() {
                    return Ok(0.0);
                }
                let cfg = QuadConfig::with_tol(1e-14, 1e-12);
                let upper = t + 1.0;
                let breaks = base.breakpoints(0.0, upper);
                Ok(integrate_with_breaks(&|x: f64| base.eval(x), 0.0, upper, &breaks, &cfg)?.value)
            }
            Construction::Zeta { base, thresholds, .. } => {
                let n = thresholds.partition_point(|x| *x <= t);
                let rho = if n == 0 { 0.0 } else { n as f64 * t.ln() };
                Ok(base.try_eval(t)? + rho)
            }
            Construction::DominateAll { base, breaks, .. } => {
                let n = breaks.partition_point(|x| *x <= t).max(1) as f64;
                Ok(n * base.try_eval(n * t)?)
            }
        }
    }
}

/// Growth conditions on weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Condition {
    Gamma0,
    Delta,
    Epsilon(f64),
    Epsilon0,
    EpsilonInf,
    Alpha,
    Gamma,
    NA,
    Zeta,
}

impl FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        Ok(match t.as_str() {
            "gamma0" | "gamma_0" => Condition::Gamma0,
            "delta" => Condition::Delta,
            "epsilon0" | "epsilon_0" => Condition::Epsilon0,
            "epsilon_inf" | "epsiloninf" => Condition::EpsilonInf,
            "alpha" => Condition::Alpha,
            "gamma" => Condition::Gamma,
            "na" => Condition::NA,
            "zeta" => Condition::Zeta,
            _ => {
                let inner = t
                    .strip_prefix("epsilon(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| t.strip_prefix("epsilon:mu="));
                match inner {
                    Some(v) => Condition::Epsilon(v.trim().parse().map_err(|_| parse_err(format!("bad mu in `{s}`")))?),
                    None => return Err(Error::UnknownCondition(s.to_string())),
                }
            }
        })
    }
}

/// `int_0^T omega(t) e^{-mu t} dt`.
fn partial_laplace(w: &Weight, mu: f64, upto: f64) -> Result<f64> {
    let cfg = QuadConfig::with_tol(1e-12, 1e-10);
    let breaks = w.breakpoints(0.0, upto);
    Ok(integrate_with_breaks(&|t: f64| w.eval(t) * (-mu * t).exp(), 0.0, upto, &breaks, &cfg)?.value)
}

/// `int_0^inf omega(t) e^{-mu t} dt` given a certified decay rate `mu - rate > 0`.
pub fn laplace_integral(w: &Weight, mu: f64, rate: f64) -> Result<f64> {
    if !(mu > rate) {
        return Err(Error::EnvelopeMissing(format!("mu = {mu} does not exceed the growth rate {rate}")));
    }
    let cfg = QuadConfig { initial_radius: 8.0 / (mu - rate), ..QuadConfig::with_tol(1e-13, 1e-12) };
    let limit = w.eval_limit();
    let f = |t: f64| if t > limit { 0.0 } else { w.eval(t) * (-mu * t).exp() };
    let breaks = w.breakpoints(0.0, 1e4 / (mu - rate));
    let e = integrate_decaying(&f, Domain::Ray { start: 0.0, forward: true }, Envelope::Exponential { rate: 0.5 * (mu - rate) }, &breaks, &cfg)?;
    Ok(e.value)
}

fn epsilon_failure(w: &Weight, mu: f64, cfg: &GridConfig) -> Result<ConditionVerdict> {
    let t1 = (40.0 / mu).min(0.25 * cfg.t_max.min(w.eval_limit()));
    let a = partial_laplace(w, mu, t1)?;
    let b = partial_laplace(w, mu, 2.0 * t1)?;
    Ok(ConditionVerdict::fails(2.0 * t1).with("mu", mu).with("T", t1).with("partial_integral_T", a).with("partial_integral_2T", b))
}

/// Numeric `(eps)_mu` evidence when no rate is known.
fn epsilon_numeric(w: &Weight, mu: f64, cfg: &GridConfig) -> Result<ConditionVerdict> {
    let top = cfg.t_max.min(w.eval_limit());
    let mut t = 16.0 / mu;
    let mut prev = partial_laplace(w, mu, t.min(top))?;
    let mut incs = Vec::new();
    while 2.0 * t <= top {
        let next = partial_laplace(w, mu, 2.0 * t)?;
        incs.push(next - prev);
        prev = next;
        t *= 2.0;
    }
    let converging = incs.len() >= 2 && incs[incs.len() - 1] <= 1e-10 * prev.abs().max(1e-300) + 0.5 * incs[incs.len() - 2].abs();
    if converging || incs.last().is_some_and(|d| d.abs() <= 1e-12 * prev.abs()) {
        Ok(ConditionVerdict::supported(t).with("mu", mu).with("integral", prev))
    } else {
        Ok(ConditionVerdict::fails(t)
            .with("mu", mu)
            .with("T", t)
            .with("partial_integral_T", prev)
            .with("last_increment", incs.last().copied().unwrap_or(f64::NAN)))
    }
}

/// Checks a growth condition. `Holds` only comes from the weight's tags.
pub fn check_condition(w: &Weight, cond: Condition, cfg: &GridConfig) -> Result<ConditionVerdict> {
    let top = cfg.t_max.min(w.eval_limit());
    let grid = cfg.log_grid(top);
    let tags = w.tags();
    match cond {
        Condition::Epsilon(mu) => {
            if !(mu > 0.0) {
                return Err(invalid("(eps)_mu needs mu > 0"));
            }
            match tags.epsilon_rate {
                Some(rate) if mu > rate => {
                    let v = ConditionVerdict::holds(top).with("mu", mu);
                    match laplace_integral(w, mu, rate) {
                        Ok(i) => Ok(v.with("integral", i)),
                        Err(e) => Ok(v.with_note(format!("truncated integral unavailable: {e}"))),
                    }
                }
                Some(_) => epsilon_failure(w, mu, cfg),
                None => epsilon_numeric(w, mu, cfg),
            }
        }
        Condition::Epsilon0 => match tags.epsilon_rate {
            Some(0.0) => Ok(ConditionVerdict::holds(top)),
            Some(r) => Ok(epsilon_failure(w, if r.is_finite() { r } else { 1.0 }, cfg)?.with("critical_mu", r)),
            None => epsilon_numeric(w, 1e-2, cfg),
        },
        Condition::EpsilonInf => match tags.epsilon_rate {
            Some(r) if r.is_finite() => {
                let mu = r + 1.0;
                let v = ConditionVerdict::holds(top).with("mu", mu);
                Ok(match laplace_integral(w, mu, r) {
                    Ok(i) => v.with("integral", i),
                    Err(e) => v.with_note(format!("truncated integral unavailable: {e}")),
                })
            }
            Some(_) => epsilon_failure(w, 1.0, cfg),
            None => epsilon_numeric(w, 10.0, cfg),
        },
        Condition::Delta => Ok(check_delta(w, cfg)),
        Condition::Alpha => Ok(check_alpha(w, top)),
        Condition::Gamma => Ok(ratio_condition(w, tags.gamma, &grid, top, |t, v| (t >= 1.0).then(|| v / t.ln_1p()), RatioTrend::StaysPositive)),
        Condition::Gamma0 => Ok(ratio_condition(w, tags.gamma0, &grid, top, |t, v| (t >= 2.0).then(|| v / t.ln()), RatioTrend::Diverges)),
        Condition::NA => Ok(ratio_condition(w, tags.little_o, &grid, top, |t, v| (t >= 1.0).then(|| v / t), RatioTrend::Vanishes)),
        Condition::Zeta => Ok(check_zeta(w, tags.zeta, &grid, top)),
    }
}

fn check_delta(w: &Weight, cfg: &GridConfig) -> ConditionVerdict {
    let tag = w.tags().delta;
    let mut last = None;
    for k in 1..=10 {
        let h = 2f64.powi(k);
        let top = cfg.t_max.min(w.eval_limit() / h);
        let grid = cfg.log_grid(top);
        let gaps: Vec<(f64, f64)> = grid.iter().map(|&t| (t, 2.0 * w.eval(t) - w.eval(h * t))).filter(|(_, g)| !g.is_nan()).collect();
        let max_on = |limit: f64| gaps.iter().filter(|(t, _)| *t <= limit).map(|(_, g)| *g).fold(f64::NEG_INFINITY, f64::max);
        let full = max_on(top);
        let half = max_on(0.5 * top);
        if full.is_finite() && full <= half + 1e-9 * (1.0 + half.abs()) && tag != Some(false) {
            let status = if tag == Some(true) { Status::Holds } else { Status::NumericallySupported };
            return ConditionVerdict::new(status, top).with("A", full.max(0.0).exp()).with("H", h);
        }
        last = Some((h, top, full, half));
    }
    let (h, top, full, half) = last.unwrap();
    if tag == Some(true) {
        return ConditionVerdict::holds(top).with_note("no grid witness (A, H) found; verdict from tags");
    }
    ConditionVerdict::fails(top).with("H", h).with("log_gap_full_range", full).with("log_gap_half_range", half)
}

fn check_alpha(w: &Weight, top: f64) -> ConditionVerdict {
    if w.tags().subadditive == Some(true) {
        return ConditionVerdict::holds(top);
    }
    let mut pts = vec![1.0, 2.0, 3.0, 5.0, 10.0, 20.0, 50.0, 100.0, 0.5, 0.25, 0.1];
    let mut x = 200.0;
    while x <= top / 2.0 {
        pts.push(x);
        x *= 2.0;
    }
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i..] {
            if a + b > top {
                continue;
            }
            let lhs = w.eval(a + b);
            let rhs = w.eval(a) + w.eval(b);
            if lhs > rhs + 1e-12 * (1.0 + rhs.abs()) {
                return ConditionVerdict::fails(top).with("t1", a).with("t2", b).with("omega_sum", lhs).with("sum_omega", rhs);
            }
        }
    }
    ConditionVerdict::supported(top)
}

#[derive(Clone, Copy)]
enum RatioTrend {
    StaysPositive,
    Diverges,
    Vanishes,
}

fn ratio_condition(
    w: &Weight,
    tag: Option<bool>,
    grid: &[f64],
    top: f64,
    ratio: impl Fn(f64, f64) -> Option<f64>,
    trend: RatioTrend,
) -> ConditionVerdict {
    let pairs: Vec<(f64, f64)> = grid.iter().filter_map(|&t| ratio(t, w.eval(t) - w.eval(0.0)).map(|r| (t, r))).collect();
    let (t_end, r_end) = pairs.last().copied().unwrap_or((top, f64::NAN));
    let (t_mid, r_mid) = pairs.get(pairs.len() / 2).copied().unwrap_or((top, f64::NAN));
    let numeric_ok = match trend {
        RatioTrend::StaysPositive => r_end > 0.0 && r_end >= 0.5 * r_mid,
        RatioTrend::Diverges => r_end > r_mid * 1.05 && r_end > 1.0,
        RatioTrend::Vanishes => r_end < 0.95 * r_mid || r_end == 0.0,
    };
    let base = |s: Status| ConditionVerdict::new(s, top).with("t_mid", t_mid).with("ratio_mid", r_mid).with("t_end", t_end).with("ratio_end", r_end);
    match (tag, numeric_ok) {
        (Some(true), _) => ConditionVerdict::holds(top),
        (Some(false), _) | (None, false) => base(Status::Fails),
        (None, true) => base(Status::NumericallySupported),
    }
}

fn check_zeta(w: &Weight, tag: Option<bool>, grid: &[f64], top: f64) -> ConditionVerdict {
    let diffs: Vec<(f64, f64)> = grid.iter().filter(|t| **t * 2.0 <= top && **t >= 1.0).map(|&t| (t, w.eval(2.0 * t) - w.eval(t))).collect();
    let (t_end, d_end) = diffs.last().copied().unwrap_or((top, f64::NAN));
    let (t_mid, d_mid) = diffs.get(diffs.len() / 2).copied().unwrap_or((top, f64::NAN));
    let base = |s: Status| {
        ConditionVerdict::new(s, top).with("lambda", 2.0).with("t_mid", t_mid).with("difference_mid", d_mid).with("t_end", t_end).with("difference_end", d_end)
    };
    match tag {
        Some(true) => ConditionVerdict::holds(top),
        Some(false) => base(Status::Fails),
        None if d_end > d_mid + 1.0 => base(Status::NumericallySupported),
        None => base(Status::Fails),
    }
}

/// Relations `w R s`; `w subset s` means `s(t) <= w(lambda t) + C` for some `lambda`.
pub fn compare_weights(w: &Weight, s: &Weight, cfg: &GridConfig) -> RelationSet {
    if w.label == s.label {
        let mut set = RelationSet { symbolic: true, ..Default::default() };
        set.relations.insert(Relation::Subset);
        set.relations.insert(Relation::Equivalent);
        set.relations.insert(Relation::StarEquivalent);
        if w.is_zero() {
            set.relations.insert(Relation::Prec);
        }
        return set;
    }
    let mut set = compare_weights_on_grid(w, s, cfg);
    if matches!(w.kind, WeightKind::Exp) {
        if let Some(rate) = s.epsilon_rate() {
            // e^t prec s iff s has (eps)_0; e^t subset s iff s has (eps)_inf.
            set.relations.remove(&Relation::Prec);
            set.relations.remove(&Relation::Subset);
            if rate == 0.0 {
                set.relations.insert(Relation::Prec);
            }
            if rate.is_finite() {
                set.relations.insert(Relation::Subset);
            } else {
                set.relations.remove(&Relation::Equivalent);
            }
        }
    }
    set
}

/// Grid-only version of [`compare_weights`], ignoring symbolic facts.
pub fn compare_weights_on_grid(w: &Weight, s: &Weight, cfg: &GridConfig) -> RelationSet {
    let lam_max = cfg.lambdas.iter().cloned().fold(1.0, f64::max);
    let top = cfg.t_max.min(s.eval_limit()).min(w.eval_limit()).min(w.eval_limit() / lam_max);
    let top = if top < 10.0 { cfg.t_max.min(s.eval_limit()).min(w.eval_limit()) } else { top };
    let grid: Vec<f64> = log_spaced(cfg.t_min.min(top / 10.0), top, cfg.points, false);
    let ws: Vec<f64> = grid.iter().map(|&t| s.eval(t)).collect();
    let ww: Vec<f64> = grid.iter().map(|&t| w.eval(t)).collect();
    let within = |a: &Weight, b_vals: &[f64], lam: f64| -> bool {
        let diff: Vec<f64> = grid
            .iter()
            .zip(b_vals)
            .map(|(&t, &bv)| {
                let av = if lam * t > a.eval_limit() { f64::INFINITY } else { a.eval(lam * t) };
                if av == f64::INFINITY && bv == f64::INFINITY {
                    f64::NAN
                } else {
                    bv - av
                }
            })
            .collect();
        bounded_above(&diff)
    };
    let w_sub_s = cfg.lambdas.iter().any(|&l| within(w, &ws, l));
    let s_sub_w = cfg.lambdas.iter().any(|&l| within(s, &ww, l));
    let w_prec_s = cfg.lambdas.iter().all(|&l| within(w, &ws, l));
    let ratio = |a: &[f64], b: &[f64]| -> bool {
        let r: Vec<f64> = grid
            .iter()
            .zip(a.iter().zip(b))
            .filter(|(t, _)| **t >= 1.0)
            .map(|(_, (x, y))| if *y == 0.0 { if *x == 0.0 { 0.0 } else { f64::INFINITY } } else { x / y })
            .collect();
        bounded_above(&r)
    };
    let mut set = RelationSet::default();
    if w_sub_s {
        set.relations.insert(Relation::Subset);
    }
    if w_prec_s {
        set.relations.insert(Relation::Prec);
    }
    if w_sub_s && s_sub_w {
        set.relations.insert(Relation::Equivalent);
    }
    if ratio(&ww, &ws) && ratio(&ws, &ww) {
        set.relations.insert(Relation::StarEquivalent);
    }
    set
}

fn quad_cfg() -> QuadConfig {
    QuadConfig::with_tol(1e-13, 1e-12)
}

/// `sigma(t) = int_0^{t+1} omega(x) dx`: a convex majorant with (delta).
pub fn majorize_with_delta(w: &Weight) -> Weight {
    let tags = if w.is_zero() {
        AsymptoticTags::zero()
    } else {
        AsymptoticTags {
            epsilon_rate: w.tags.epsilon_rate,
            subadditive: None,
            little_o: Some(false),
            delta: Some(true),
            gamma: Some(true),
            gamma0: Some(true),
            zeta: Some(true),
            smooth_concave: false,
        }
    };
    Weight {
        label: format!("majorize[{}]", w.label),
        kind: WeightKind::Piecewise(Arc::new(Construction::Majorized { base: w.clone() })),
        tags,
    }
}

/// Smallest `T >= 1` with `omega(s) >= n log s` for all sampled `s >= T`.
fn zeta_threshold(w: &Weight, n: f64, grid: &[f64], vals: &[f64]) -> Option<f64> {
    let last_bad = (0..grid.len()).rev().find(|&i| vals[i] < n * grid[i].ln())?;
    if last_bad + 1 >= grid.len() {
        return None;
    }
    let (mut lo, mut hi) = (grid[last_bad], grid[last_bad + 1]);
    while hi - lo > 1e-7 * hi {
        let mid = 0.5 * (lo + hi);
        if w.eval(mid) < n * mid.ln() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(hi)
}

/// `sigma = omega + rho`, `rho(t) = n log t` on `[t_n, t_{n+1})`, so that
/// `sigma` has (zeta) and `sigma <= 2 omega`.
pub fn add_zeta(w: &Weight, cfg: &GridConfig) -> Result<Weight> {
    match w.tags.gamma0 {
        Some(true) => {}
        _ => {
            return Err(Error::Precondition(format!("thresholds do not exist: {} is not certified (gamma)_0", w.label)));
        }
    }
    let t_max = cfg.t_max.min(w.eval_limit());
    let scan_top = (t_max * 1e3).min(w.eval_limit());
    let grid = log_spaced(1.0, scan_top, 6000, false);
    let vals: Vec<f64> = grid.iter().map(|&t| w.eval(t)).collect();
    let mut thresholds: Vec<f64> = Vec::new();
    let mut n = 1.0;
    loop {
        let t = match vals.iter().zip(&grid).all(|(v, t)| *v >= n * t.ln()) {
            true => 1.0,
            false => match zeta_threshold(w, n, &grid, &vals) {
                Some(t) => t,
                None => break,
            },
        };
        let t = match thresholds.last() {
            Some(&prev) if t <= prev => prev * (1.0 + 1e-9),
            _ => t,
        };
        if t > 4.0 * t_max {
            break;
        }
        thresholds.push(t);
        n += 1.0;
    }
    let mut tags = w.tags.clone();
    tags.zeta = Some(true);
    tags.gamma = Some(true);
    tags.delta = None;
    tags.subadditive = None;
    tags.smooth_concave = false;
    Ok(Weight {
        label: format!("zeta[{}]", w.label),
        kind: WeightKind::Piecewise(Arc::new(Construction::Zeta { base: w.clone(), thresholds, valid_up_to: 4.0 * t_max })),
        tags,
    })
}

/// Thresholds of an [`add_zeta`] output.
pub fn zeta_thresholds(w: &Weight) -> Option<&[f64]> {
    match &w.kind {
        WeightKind::Piecewise(c) => match c.as_ref() {
            Construction::Zeta { thresholds, .. } => Some(thresholds),
            _ => None,
        },
        _ => None,
    }
}

/// Breakpoints `t_n / n` of a [`dominate_all_dilates`] output.
pub fn dominating_breaks(w: &Weight) -> Option<&[f64]> {
    match &w.kind {
        WeightKind::Piecewise(c) => match c.as_ref() {
            Construction::DominateAll { breaks, .. } => Some(breaks),
            _ => None,
        },
        _ => None,
    }
}

fn tail_integral(w: &Weight, from: f64, n: f64) -> Result<f64> {
    let rate = 1.0 / (n * n);
    let cfg = QuadConfig { initial_radius: 16.0 / rate, ..QuadConfig::with_tol(1e-14, 1e-9) };
    let f = |t: f64| w.eval(t) * (-rate * t).exp();
    Ok(integrate_decaying(&f, Domain::Ray { start: from, forward: true }, Envelope::Exponential { rate: 0.5 * rate }, &[], &cfg)?.value)
}

/// Smallest `T >= lower` with `int_T^inf omega e^{-t/n^2} <= 2^{-n}`.
fn dominate_threshold(w: &Weight, n: f64, lower: f64) -> Result<f64> {
    let target = 0.5f64.powf(n);
    if tail_integral(w, lower, n)? <= target {
        return Ok(lower);
    }
    let mut lo = lower;
    let mut hi = lower.max(1.0) * 2.0;
    while tail_integral(w, hi, n)? > target {
        lo = hi;
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::NonConvergence("tail threshold search exceeded range".into()));
        }
    }
    while hi - lo > 1e-6 * hi {
        let mid = 0.5 * (lo + hi);
        if tail_integral(w, mid, n)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// A weight `sigma` with (eps)_0 and `omega(lambda t) = o(sigma(t))` for every `lambda`,
/// given `omega` with (eps)_0.
pub fn dominate_all_dilates(w: &Weight, cfg: &GridConfig) -> Result<Weight> {
    if w.tags.epsilon_rate != Some(0.0) {
        return Err(Error::Precondition(format!("{} is not certified (eps)_0", w.label)));
    }
    if w.is_zero() {
        return Ok(Weight {
            label: format!("dominate[{}]", w.label),
            kind: WeightKind::Piecewise(Arc::new(Construction::DominateAll {
                base: w.clone(),
                breaks: vec![0.0],
                degenerate: true,
                valid_up_to: f64::INFINITY,
            })),
            tags: AsymptoticTags::zero(),
        });
    }
    let limit = cfg.t_max.min(w.eval_limit());
    let mut t_prev = 0.0;
    let mut breaks = vec![0.0];
    let mut n = 2.0;
    loop {
        let lower = n * (t_prev / (n - 1.0) + 1.0);
        let t_n = dominate_threshold(w, n, lower)?;
        let b = t_n / n;
        breaks.push(b);
        t_prev = t_n;
        if b > limit {
            break;
        }
        n += 1.0;
    }
    let tags = AsymptoticTags {
        epsilon_rate: Some(0.0),
        subadditive: None,
        little_o: None,
        delta: None,
        gamma: w.tags.gamma,
        gamma0: w.tags.gamma0,
        zeta: w.tags.zeta,
        smooth_concave: false,
    };
    Ok(Weight {
        label: format!("dominate[{}]", w.label),
        kind: WeightKind::Piecewise(Arc::new(Construction::DominateAll { base: w.clone(), breaks, degenerate: false, valid_up_to: limit })),
        tags,
    })
}

/// `omega*(s) = sup_{t >= 0} (omega(t) - t s)`.
pub fn young_conjugate(w: &Weight, s: f64) -> Result<f64> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(invalid("conjugate needs s > 0"));
    }
    match &w.kind {
        WeightKind::Zero => Ok(0.0),
        WeightKind::Power { s: p } if *p < 1.0 => {
            let t = (p / s).powf(1.0 / (1.0 - p));
            Ok(t.powf(*p) - s * t)
        }
        WeightKind::Power { s: p } if *p == 1.0 => linear_conjugate(s),
        WeightKind::Power { .. } | WeightKind::Exp | WeightKind::ExpLog { .. } | WeightKind::ExpOverLog { .. } => {
            Err(Error::ConjugateDiverges(s))
        }
        WeightKind::TwoSqrt => Ok(1.0 / s),
        WeightKind::Linear => linear_conjugate(s),
        WeightKind::Log1p => Ok(if s < 1.0 { s - 1.0 - s.ln() } else { 0.0 }),
        WeightKind::Dilated { inner, lambda } => young_conjugate(inner, s / lambda),
        WeightKind::Multiple { inner, lambda } => Ok(lambda * young_conjugate(inner, s / lambda)?),
        _ => young_conjugate_numeric(w, s),
    }
}

fn linear_conjugate(s: f64) -> Result<f64> {
    if s >= 1.0 {
        Ok(0.0)
    } else {
        Err(Error::ConjugateDiverges(s))
    }
}

/// Grid supremum over `t in {0} U [1e-8, 1e8]` refined by ternary search.
pub fn young_conjugate_numeric(w: &Weight, s: f64) -> Result<f64> {
    let top = 1e8f64.min(w.eval_limit());
    let grid = log_spaced(1e-8, top, 4000, true);
    let obj = |t: f64| w.eval(t) - s * t;
    let vals: Vec<f64> = grid.iter().map(|&t| obj(t)).collect();
    let (i, best) = vals.iter().enumerate().fold((0, f64::NEG_INFINITY), |acc, (i, v)| if *v > acc.1 { (i, *v) } else { acc });
    if !best.is_finite() || (i + 1 == grid.len() && w.tags.little_o != Some(true)) {
        return Err(Error::ConjugateDiverges(s));
    }
    let (mut lo, mut hi) = (grid[i.saturating_sub(1)], grid[(i + 1).min(grid.len() - 1)]);
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if obj(m1) < obj(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    Ok(best.max(obj(0.5 * (lo + hi))))
}

/// `H = (omega')^{-1}` for smooth strictly concave entries.
pub fn inverse_derivative(w: &Weight, s: f64) -> Result<f64> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(invalid("inverse derivative needs s > 0"));
    }
    match &w.kind {
        WeightKind::Power { s: p } if *p < 1.0 => Ok((p / s).powf(1.0 / (1.0 - p))),
        WeightKind::TwoSqrt => Ok(1.0 / (s * s)),
        WeightKind::Dilated { inner, lambda } => Ok(inverse_derivative(inner, s / lambda)? / lambda),
        WeightKind::Multiple { inner, lambda } => inverse_derivative(inner, s / lambda),
        _ => Err(Error::Precondition(format!("{} is not a smooth strictly concave catalog weight", w.label))),
    }
}

/// `H'(s)`; note `(omega*)'' = -H'`.
pub fn inverse_derivative_prime(w: &Weight, s: f64) -> Result<f64> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(invalid("inverse derivative needs s > 0"));
    }
    match &w.kind {
        WeightKind::Power { s: p } if *p < 1.0 => Ok(-(p / s).powf(1.0 / (1.0 - p)) / ((1.0 - p) * s)),
        WeightKind::TwoSqrt => Ok(-2.0 / (s * s * s)),
        WeightKind::Dilated { inner, lambda } => Ok(inverse_derivative_prime(inner, s / lambda)? / (lambda * lambda)),
        WeightKind::Multiple { inner, lambda } => Ok(inverse_derivative_prime(inner, s / lambda)? / lambda),
        _ => Err(Error::Precondition(format!("{} is not a smooth strictly concave catalog weight", w.label))),
    }
}

/// `int_0^inf e^{omega(t) - sigma(t)} dt`, the constant in the almost-analytic bounds.
pub fn exp_gap_integral(omega: &Weight, sigma: &Weight, rate: f64) -> Result<f64> {
    let cfg = QuadConfig { initial_radius: 8.0 / rate, ..quad_cfg() };
    let f = |t: f64| (omega.eval(t) - sigma.eval(t)).exp();
    Ok(integrate_decaying(&f, Domain::Ray { start: 0.0, forward: true }, Envelope::Exponential { rate }, &[], &cfg)?.value)
}

/// `int_0^T omega(t) dt` helper exposed for checks.
pub fn integral_up_to(w: &Weight, upper: f64) -> Result<f64> {
    Ok(integrate(&|t: f64| w.eval(t), 0.0, upper, &quad_cfg())?.value)
}

impl FromStr for Weight {
    type Err = Error;

    /// `name(:key=value(,key=value)*)?`, or `assoc:<sequence-spec>`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = split_head(s);
        if name == "assoc" {
            return Ok(Weight::assoc(rest.parse()?));
        }
        let mut p = parse_params(rest)?;
        let w = match name {
            "zero" => Weight::zero(),
            "power" => Weight::power(take(&mut p, "s", "power")?)?,
            "explog" => {
                let a = take(&mut p, "s", "explog")?;
                Weight::explog(a, take(&mut p, "r", "explog")?)?
            }
            "expoverlog" => Weight::exp_over_log(take(&mut p, "s", "expoverlog")?)?,
            "exp" => Weight::exp(),
            "linear" => Weight::linear(),
            "log1p" => Weight::log1p(),
            "twosqrt" => Weight::twosqrt(),
            other => return Err(parse_err(format!("unknown weight `{other}`"))),
        };
        ensure_empty(&p, name)?;
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(w("linear").eval(0.0), 0.0);
        assert_abs_diff_eq!(w("power:s=0.5").eval(4.0), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w("exp").eval(1.0), std::f64::consts::E, epsilon = 1e-15);
        assert_eq!(w("linear").eval(-3.0), 3.0);
        assert!("power:s=-1".parse::<Weight>().is_err());
        assert!("explog:s=1.5,r=1".parse::<Weight>().is_err());
        assert!("power:q=1".parse::<Weight>().is_err());
    }

    #[test]
    fn condition_examples() {
        let g = GridConfig::default();
        let a = check_condition(&w("power:s=2"), Condition::Alpha, &g).unwrap();
        assert_eq!(a.status, Status::Fails);
        assert_eq!((a.get("t1"), a.get("t2")), (Some(1.0), Some(1.0)));
        let d = check_condition(&w("linear"), Condition::Delta, &g).unwrap();
        assert_eq!(d.status, Status::Holds);
        assert_eq!((d.get("A"), d.get("H")), (Some(1.0), Some(2.0)));
        let e = check_condition(&w("exp"), Condition::Epsilon(2.0), &g).unwrap();
        assert_eq!(e.status, Status::Holds);
        assert_abs_diff_eq!(e.get("integral").unwrap(), 1.0, epsilon = 1e-8);
        let e0 = check_condition(&w("exp"), Condition::Epsilon0, &g).unwrap();
        assert_eq!(e0.status, Status::Fails);
        assert!(e0.get("partial_integral_2T").unwrap() > e0.get("partial_integral_T").unwrap());
        assert!(check_condition(&w("exp"), Condition::Epsilon(0.0), &g).is_err());
        assert_eq!(check_condition(&w("log1p"), Condition::Gamma0, &g).unwrap().status, Status::Fails);
        assert_eq!(check_condition(&w("linear"), Condition::NA, &g).unwrap().status, Status::Fails);
        assert_eq!(check_condition(&w("log1p"), Condition::Delta, &g).unwrap().status, Status::Fails);
        let ed = check_condition(&w("exp"), Condition::Delta, &g).unwrap();
        assert_abs_diff_eq!(ed.get("A").unwrap(), std::f64::consts::E, epsilon = 1e-9);
    }

    #[test]
    fn relation_examples() {
        let g = GridConfig::default();
        let r = compare_weights(&w("power:s=2"), &w("linear"), &g);
        assert_eq!(r.names(), vec!["subset", "prec"]);
        assert!(compare_weights(&w("linear"), &w("power:s=2"), &g).is_none());
        let same = compare_weights(&w("linear"), &w("linear"), &g);
        assert_eq!(same.names(), vec!["subset", "equivalent", "star_equivalent"]);
        let grid_same = compare_weights_on_grid(&w("linear"), &w("linear"), &g);
        assert_eq!(grid_same.names(), vec!["subset", "equivalent", "star_equivalent"]);
        let e = compare_weights(&w("exp"), &w("power:s=0.5"), &g);
        assert!(e.contains(Relation::Prec) && e.contains(Relation::Subset));
    }

    #[test]
    fn majorize_examples() {
        assert_eq!(majorize_with_delta(&Weight::zero()).eval(7.0), 0.0);
        let s = majorize_with_delta(&w("power:s=0.5"));
        assert_abs_diff_eq!(s.eval(0.0), 2.0 / 3.0, epsilon = 1e-9);
        for k in 0..=100 {
            let t = k as f64;
            assert!(s.eval(t) >= t.sqrt());
        }
        let d = check_condition(&s, Condition::Delta, &GridConfig { t_max: 1e4, ..Default::default() }).unwrap();
        assert_eq!(d.status, Status::Holds);
    }

    #[test]
    fn zeta_examples() {
        let base = w("power:s=0.5");
        let cfg = GridConfig { t_max: 1e5, ..Default::default() };
        let z = add_zeta(&base, &cfg).unwrap();
        let th = zeta_thresholds(&z).unwrap();
        assert!(th.len() > 5);
        assert!(th.windows(2).all(|p| p[0] < p[1]));
        for t in log_spaced(1e-3, 1e5, 500, true) {
            assert!(z.eval(t) <= 2.0 * base.eval(t) + 1e-12);
        }
        let mut prev = f64::NEG_INFINITY;
        for (n, &t) in th.iter().enumerate().filter(|(_, t)| **t <= 1e5) {
            let d = z.eval(2.0 * t) - z.eval(t);
            assert!(d >= (n + 1) as f64 * 2f64.ln() - 1e-9);
            assert!(d >= prev);
            prev = d;
        }
        assert!(add_zeta(&w("log1p"), &cfg).is_err());
    }

    #[test]
    fn dominate_examples() {
        let cfg = GridConfig { t_max: 1e5, ..Default::default() };
        let s = dominate_all_dilates(&w("power:s=0.5"), &cfg).unwrap();
        let r: Vec<f64> = [1e3, 1e4, 1e5].iter().map(|&t| s.eval(t) / (10.0 * t).sqrt()).collect();
        assert!(r[0] < r[1] && r[1] < r[2]);
        assert!(dominate_all_dilates(&w("exp"), &cfg).is_err());
        let z = dominate_all_dilates(&Weight::zero(), &cfg).unwrap();
        assert!(z.is_degenerate());
        assert_eq!(z.eval(123.0), 0.0);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(young_conjugate(&Weight::zero(), 1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(young_conjugate(&w("twosqrt"), 1.0).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(young_conjugate(&w("power:s=0.5"), 0.5).unwrap(), 0.5, epsilon = 1e-12);
        assert!(matches!(young_conjugate(&w("linear"), 0.5), Err(Error::ConjugateDiverges(_))));
        assert_abs_diff_eq!(young_conjugate_numeric(&w("twosqrt"), 1.0).unwrap(), 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(young_conjugate_numeric(&w("log1p"), 0.25).unwrap(), young_conjugate(&w("log1p"), 0.25).unwrap(), epsilon = 1e-8);
        assert_abs_diff_eq!(inverse_derivative(&w("twosqrt"), 1.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(inverse_derivative(&w("twosqrt"), 2.0).unwrap(), 0.25, epsilon = 1e-15);
        assert!(inverse_derivative(&w("linear"), 1.0).is_err());
    }

    #[test]
    fn scaled_weights() {
        let tw = w("twosqrt");
        let d = tw.dilate(4.0).unwrap();
        let m = tw.scale(3.0).unwrap();
        assert_abs_diff_eq!(d.eval(1.0), 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.eval(4.0), 12.0, epsilon = 1e-15);
        for s in [0.3, 1.0, 2.5] {
            assert_abs_diff_eq!(young_conjugate(&d, s).unwrap(), young_conjugate_numeric(&d, s).unwrap(), epsilon = 1e-7);
            assert_abs_diff_eq!(young_conjugate(&m, s).unwrap(), young_conjugate_numeric(&m, s).unwrap(), epsilon = 1e-7);
            let h = inverse_derivative(&m, s).unwrap();
            assert_abs_diff_eq!(m.derivative(h).unwrap(), s, epsilon = 1e-12);
        }
        assert_eq!(w("exp").dilate(2.0).unwrap().epsilon_rate(), Some(2.0));
    }

    #[test]
    fn assoc_weight_tags_follow_sequence() {
        let a = w("assoc:factorial:s=1");
        assert_eq!(a.epsilon_rate(), Some(0.0));
        assert_abs_diff_eq!(a.eval(3.0), 4.5f64.ln(), epsilon = 1e-12);
        let b = w("assoc:loglog:s=1,r=1");
        assert_eq!(b.epsilon_rate(), Some(1.0));
        assert!(b.eval_limit() > 30.0 && b.eval_limit() < 45.0);
    }
}
