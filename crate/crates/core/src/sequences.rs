//! Log-convex weight sequences: quotients, associated and counting functions,
//! the (M.2) and (M.5) conditions, and the non-triviality classifier.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{invalid, Error, Result};
use crate::quad::gauss_legendre;
use crate::spec::{ensure_empty, parse_err, parse_params, split_head, take};
use crate::verdict::{bounded_above, log_spaced, ConditionVerdict, Relation, RelationSet, Status};

/// Number of terms cached for generator-backed sequences.
pub const DEFAULT_PREFIX: usize = 512;

/// Largest index the counting function will search.
pub const MAX_INDEX: u64 = 1 << 53;

/// Closed-form tail rules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Generator {
    /// `M_p = p!^s`.
    FactorialPower { s: f64 },
    /// `M_p = log(p+e)^(s (p+e)^r)`.
    LogLogPower { s: f64, r: f64 },
}

impl Generator {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Generator::FactorialPower { s } if s > 0.0 && s.is_finite() => Ok(()),
            Generator::FactorialPower { .. } => Err(invalid("factorial power needs s > 0")),
            Generator::LogLogPower { s, r } if s > 0.0 && r >= 1.0 && s.is_finite() && r.is_finite() => Ok(()),
            Generator::LogLogPower { .. } => Err(invalid("loglog sequence needs s > 0 and r >= 1")),
        }
    }

    /// `log M_p`.
    pub fn log_value(&self, p: u64) -> f64 {
        match *self {
            Generator::FactorialPower { s } => s * ln_gamma(p as f64 + 1.0),
            Generator::LogLogPower { s, r } => loglog_exponent(s, r, p as f64 + std::f64::consts::E),
        }
    }

    /// `log m_p = log M_p - log M_{p-1}` for `p >= 1`.
    pub fn log_quotient(&self, p: u64) -> f64 {
        match *self {
            Generator::FactorialPower { s } => s * (p as f64).ln(),
            Generator::LogLogPower { s, r } => {
                let x = p as f64 + std::f64::consts::E;
                if x < 64.0 {
                    loglog_exponent(s, r, x) - loglog_exponent(s, r, x - 1.0)
                } else {
                    // Integrate the derivative over [x-1, x] to avoid cancellation. The
                    // unit offset is kept separate since x - 1 may round for large p.
                    let base = (p - 1) as f64 + std::f64::consts::E;
                    let rule = gauss_legendre(12);
                    rule.apply(&|v: f64| loglog_exponent_derivative(s, r, base + v), 0.0, 1.0)
                }
            }
        }
    }

    /// Critical rate for (M.5): `sum exp(-mu m_p) < inf` iff `mu > rate`.
    pub fn m5_rate(&self) -> f64 {
        match *self {
            Generator::FactorialPower { .. } => 0.0,
            Generator::LogLogPower { s, r } => {
                if r > 1.0 || s > 1.0 {
                    0.0
                } else if s == 1.0 {
                    1.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    /// Whether (M.2) holds for the generated sequence.
    pub fn satisfies_m2(&self) -> bool {
        match *self {
            Generator::FactorialPower { .. } => true,
            Generator::LogLogPower { r, .. } => r == 1.0,
        }
    }

    /// Whether `p log log p - p log h - log M_p` stays bounded as `p -> inf`.
    pub fn tail_bounded(&self, h: f64) -> bool {
        match *self {
            Generator::FactorialPower { .. } => true,
            Generator::LogLogPower { s, r } => {
                if r > 1.0 || s > 1.0 {
                    true
                } else if s == 1.0 {
                    h >= 1.0
                } else {
                    false
                }
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::FactorialPower { s } => write!(f, "factorial:s={s}"),
            Generator::LogLogPower { s, r } => write!(f, "loglog:s={s},r={r}"),
        }
    }
}

fn loglog_exponent(s: f64, r: f64, x: f64) -> f64 {
    s * x.powf(r) * x.ln().ln()
}

fn loglog_exponent_derivative(s: f64, r: f64, u: f64) -> f64 {
    let l = u.ln();
    s * u.powf(r - 1.0) * (r * l.ln() + 1.0 / l)
}

/// A positive log-convex sequence stored through its logarithms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightSequence {
    log_values: Vec<f64>,
    generator: Option<Generator>,
    /// Whether the prefix was supplied explicitly (tail rule, if any, applies past it).
    explicit: bool,
    label: String,
}

impl WeightSequence {
    pub fn factorial_power(s: f64) -> Result<Self> {
        Self::from_generator(Generator::FactorialPower { s }, DEFAULT_PREFIX)
    }

    pub fn loglog_power(s: f64, r: f64) -> Result<Self> {
        Self::from_generator(Generator::LogLogPower { s, r }, DEFAULT_PREFIX)
    }

    pub fn from_generator(g: Generator, prefix: usize) -> Result<Self> {
        g.validate()?;
        if prefix < 8 {
            return Err(invalid("prefix must hold at least 8 terms"));
        }
        let log_values = (0..=prefix as u64).map(|p| g.log_value(p)).collect();
        Ok(WeightSequence { log_values, generator: Some(g), explicit: false, label: g.to_string() })
    }

    /// Sequence from explicit values `M_0..M_N`, continued by `tail` quotients.
    pub fn explicit(values: &[f64], tail: Option<Generator>) -> Result<Self> {
        if values.len() < 2 {
            return Err(invalid("explicit sequence needs at least two terms"));
        }
        if let Some(g) = tail {
            g.validate()?;
        }
        if values.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(invalid("sequence terms must be positive and finite"));
        }
        let log_values: Vec<f64> = values.iter().map(|v| v.ln()).collect();
        let label = match tail {
            Some(g) => format!("explicit[{}];tail={g}", values.len()),
            None => format!("explicit[{}]", values.len()),
        };
        let seq = WeightSequence { log_values, generator: tail, explicit: true, label };
        if let Some(p) = seq.first_convexity_violation() {
            return Err(invalid(format!("sequence is not log-convex at p = {p}")));
        }
        Ok(seq)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generator(&self) -> Option<Generator> {
        self.generator
    }

    /// Index of the last stored term.
    pub fn prefix_len(&self) -> usize {
        self.log_values.len() - 1
    }

    fn n(&self) -> u64 {
        self.prefix_len() as u64
    }

    /// `log M_p`, using the tail rule past the prefix.
    pub fn log_value(&self, p: u64) -> Result<f64> {
        if p <= self.n() {
            return Ok(self.log_values[p as usize]);
        }
        match self.generator {
            Some(g) if self.explicit => Ok(self.log_values[self.prefix_len()] + g.log_value(p) - g.log_value(self.n())),
            Some(g) => Ok(g.log_value(p)),
            None => Err(invalid(format!("index {p} beyond the stored prefix and no tail rule"))),
        }
    }

    /// `log m_p` for `p >= 1`.
    pub fn log_quotient(&self, p: u64) -> Result<f64> {
        if p == 0 {
            return Err(invalid("quotients start at p = 1"));
        }
        match self.generator {
            Some(g) if !self.explicit || p > self.n() => Ok(g.log_quotient(p)),
            _ if p <= self.n() => Ok(self.log_values[p as usize] - self.log_values[p as usize - 1]),
            _ => Err(invalid(format!("index {p} beyond the stored prefix and no tail rule"))),
        }
    }

    /// Quotient `m_p`.
    pub fn quotient(&self, p: u64) -> Result<f64> {
        self.log_quotient(p).map(f64::exp)
    }

    fn first_convexity_violation(&self) -> Option<u64> {
        let mut prev = f64::NEG_INFINITY;
        let last = if self.generator.is_some() { self.n() + 1 } else { self.n() };
        for p in 1..=last {
            let q = self.log_quotient(p).ok()?;
            if q < prev - 1e-12 * (1.0 + prev.abs()) {
                return Some(p);
            }
            prev = q;
        }
        None
    }

    /// Number of quotients `m_p <= t` (and `< t` when `strict`).
    fn count(&self, t: f64, strict: bool) -> Result<u64> {
        if t < 0.0 || t.is_nan() {
            return Err(invalid("counting function needs t >= 0"));
        }
        if t == 0.0 {
            return Ok(0);
        }
        let lt = t.ln();
        let below = |p: u64| -> Result<bool> {
            let q = self.log_quotient(p)?;
            Ok(if strict { q < lt } else { q <= lt })
        };
        if !below(1)? {
            return Ok(0);
        }
        let hi_limit = if self.generator.is_some() { MAX_INDEX } else { self.n() };
        if below(hi_limit)? {
            return Err(Error::InvalidParameter(format!(
                "t = {t} lies beyond the range of {} (all quotients up to index {hi_limit} are <= t)",
                self.label
            )));
        }
        let (mut lo, mut hi) = (1u64, hi_limit);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if below(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    }

    /// `m(t) = #{p >= 1 : m_p <= t}`.
    pub fn counting_function(&self, t: f64) -> Result<u64> {
        self.count(t, false)
    }

    /// Smallest index attaining the supremum in the associated function.
    pub fn associated_argmax(&self, t: f64) -> Result<u64> {
        self.count(t, true)
    }

    /// `M(t) = sup_p log(t^p M_0 / M_p)`, located at `p = m(t)`.
    pub fn associated_function(&self, t: f64) -> Result<f64> {
        if t < 0.0 || t.is_nan() {
            return Err(invalid("associated function needs t >= 0"));
        }
        if t == 0.0 {
            return Ok(0.0);
        }
        let p = self.associated_argmax(t)?;
        // The p = 0 term contributes exactly 0, so rounding below it is clipped.
        Ok((p as f64 * t.ln() - (self.log_value(p)? - self.log_values[0])).max(0.0))
    }

    /// `M(t) = int_0^t m(u)/u du`, summed over the quotient breakpoints.
    pub fn associated_via_counting(&self, t: f64) -> Result<f64> {
        if t < 0.0 || t.is_nan() {
            return Err(invalid("associated function needs t >= 0"));
        }
        if t == 0.0 {
            return Ok(0.0);
        }
        let n = self.counting_function(t)?;
        if n > 100_000_000 {
            return Err(invalid(format!("{n} breakpoints below t = {t}; too many to sum")));
        }
        let lt = t.ln();
        let mut sum = 0.0;
        let mut comp = 0.0;
        for p in 1..=n {
            let y = (lt - self.log_quotient(p)?) - comp;
            let s = sum + y;
            comp = (s - sum) - y;
            sum = s;
        }
        Ok(sum)
    }

    /// Critical (M.5) rate from the tail rule, if any.
    pub fn m5_rate(&self) -> Option<f64> {
        self.generator.map(|g| g.m5_rate())
    }

    pub fn check_condition(&self, cond: SeqCondition) -> Result<ConditionVerdict> {
        let n = self.n() as f64;
        match cond {
            SeqCondition::LogConvex => match self.first_convexity_violation() {
                Some(p) => Ok(ConditionVerdict::fails(n).with("p", p as f64)),
                None if self.generator.is_some() => Ok(ConditionVerdict::holds(n)),
                None => Ok(ConditionVerdict::supported(n)),
            },
            SeqCondition::M2 => Ok(self.check_m2()),
            SeqCondition::M5(mu) => {
                if !(mu > 0.0) {
                    return Err(invalid("(M.5) needs mu > 0"));
                }
                self.check_m5(mu)
            }
            SeqCondition::M5Zero => match self.m5_rate() {
                Some(0.0) => Ok(ConditionVerdict::holds(n)),
                Some(rate) => {
                    let mu = if rate.is_finite() { rate } else { 1.0 };
                    Ok(self.m5_divergence_witness(mu)?.with("critical_mu", rate))
                }
                None => self.check_m5(1e-3).map(|v| v.with("mu", 1e-3)),
            },
            SeqCondition::M5Inf => match self.m5_rate() {
                Some(rate) if rate.is_finite() => {
                    let mu = rate + 1.0;
                    Ok(ConditionVerdict::holds(n).with("mu", mu).with("partial_sum", self.m5_partial_sum(mu, self.n())?))
                }
                Some(_) => self.m5_divergence_witness(1.0),
                None => self.check_m5(1e3).map(|v| v.with("mu", 1e3)),
            },
        }
    }

    fn m5_partial_sum(&self, mu: f64, upto: u64) -> Result<f64> {
        let mut s = 0.0;
        for p in 1..=upto {
            s += (-mu * self.quotient(p)?).exp();
        }
        Ok(s)
    }

    fn m5_divergence_witness(&self, mu: f64) -> Result<ConditionVerdict> {
        let n = self.n();
        Ok(ConditionVerdict::fails(n as f64)
            .with("mu", mu)
            .with("partial_sum_half", self.m5_partial_sum(mu, n / 2)?)
            .with("partial_sum", self.m5_partial_sum(mu, n)?))
    }

    fn check_m5(&self, mu: f64) -> Result<ConditionVerdict> {
        let n = self.n();
        match self.m5_rate() {
            Some(rate) if mu > rate => {
                Ok(ConditionVerdict::holds(n as f64).with("mu", mu).with("partial_sum", self.m5_partial_sum(mu, n)?))
            }
            Some(_) => self.m5_divergence_witness(mu),
            None => {
                let half = self.m5_partial_sum(mu, n / 2)?;
                let full = self.m5_partial_sum(mu, n)?;
                let last = (-mu * self.quotient(n)?).exp();
                if last <= 1e-12 * full.max(1e-300) || full == 0.0 {
                    Ok(ConditionVerdict::supported(n as f64).with("mu", mu).with("partial_sum", full))
                } else {
                    Ok(ConditionVerdict::fails(n as f64)
                        .with("mu", mu)
                        .with("partial_sum_half", half)
                        .with("partial_sum", full)
                        .with_note("terms have not decayed within the prefix"))
                }
            }
        }
    }

    /// Largest `log M_{p+q} - log M_p - log M_q - (p+q) log H` over `p + q <= limit`.
    fn m2_gap(&self, h: f64, limit: usize) -> (f64, usize, usize) {
        let lv = &self.log_values;
        let lh = h.ln();
        let mut best = (f64::NEG_INFINITY, 0, 0);
        for p in 0..=limit {
            for q in p..=(limit - p) {
                let g = lv[p + q] - lv[p] - lv[q] + lv[0] - (p + q) as f64 * lh;
                if g > best.0 {
                    best = (g, p, q);
                }
            }
        }
        best
    }

    fn check_m2(&self) -> ConditionVerdict {
        let n = self.prefix_len();
        let tagged = self.generator.map(|g| g.satisfies_m2());
        let mut last = None;
        for k in 1..=10 {
            let h = 2f64.powi(k);
            let (full, p, q) = self.m2_gap(h, n);
            let (half, _, _) = self.m2_gap(h, n / 2);
            if full <= half + 1e-9 * (1.0 + half.abs()) {
                let a = full.max(0.0).exp();
                let status = match tagged {
                    Some(true) => Status::Holds,
                    _ => Status::NumericallySupported,
                };
                if tagged != Some(false) {
                    return ConditionVerdict::new(status, n as f64).with("A", a).with("H", h);
                }
            }
            last = Some((h, full, half, p, q));
        }
        let (h, full, half, p, q) = last.unwrap();
        ConditionVerdict::fails(n as f64)
            .with("H", h)
            .with("log_gap_full", full)
            .with("log_gap_half", half)
            .with("p", p as f64)
            .with("q", q as f64)
    }

    /// Classifies `sup_{p >= 2} (log p)^p / (h^p M_p)` over a grid of `h`.
    pub fn nontriviality_classify(&self) -> Result<Classification> {
        let hs = log_spaced(1e-3, 1e3, 24, false);
        let upto: u64 = if self.generator.is_some() { 10_000 } else { self.n() };
        let mut per_h = Vec::with_capacity(hs.len());
        let mut lms = Vec::with_capacity(upto as usize);
        for p in 2..=upto {
            lms.push((p, self.log_value(p)?));
        }
        for &h in &hs {
            let values: Vec<f64> = lms
                .iter()
                .map(|&(p, lm)| {
                    let pf = p as f64;
                    pf * pf.ln().ln() - pf * h.ln() - lm
                })
                .collect();
            let prefix_max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let bounded = match self.generator {
                Some(g) => g.tail_bounded(h),
                None => {
                    let sampled: Vec<f64> = geometric_indices(2, upto).iter().map(|&p| values[(p - 2) as usize]).collect();
                    bounded_above(&sampled)
                }
            };
            per_h.push(HEvidence { h, bounded, prefix_max });
        }
        let all = per_h.iter().all(|e| e.bounded);
        let any = per_h.iter().any(|e| e.bounded);
        let label = if all {
            Nontriviality::BeurlingAndRoumieu
        } else if any {
            Nontriviality::RoumieuOnly
        } else {
            Nontriviality::Trivial
        };
        Ok(Classification { label, symbolic: self.generator.is_some(), max_index: upto, per_h })
    }
}

fn geometric_indices(lo: u64, hi: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut x = lo as f64;
    while (x as u64) <= hi {
        let p = x as u64;
        if out.last() != Some(&p) {
            out.push(p);
        }
        x *= 1.05;
    }
    if out.last() != Some(&hi) {
        out.push(hi);
    }
    out
}

/// Relations between two sequences: `M subset N` iff `M_p <= C h^p N_p` for some `h`.
pub fn compare_sequences(m: &WeightSequence, n: &WeightSequence) -> Result<RelationSet> {
    if m.prefix_len() < 16 || n.prefix_len() < 16 {
        return Err(invalid("comparison needs at least 16 prefix terms"));
    }
    if let (Some(Generator::FactorialPower { s: a }), Some(Generator::FactorialPower { s: b }), false, false) =
        (m.generator, n.generator, m.explicit, n.explicit)
    {
        let mut set = RelationSet { symbolic: true, ..Default::default() };
        if a <= b {
            set.relations.insert(Relation::Subset);
        }
        if a < b {
            set.relations.insert(Relation::Prec);
        }
        if a == b {
            set.relations.insert(Relation::Equivalent);
        }
        return Ok(set);
    }
    let upto = if m.generator.is_some() && n.generator.is_some() { 4096 } else { m.n().min(n.n()) };
    let idx = geometric_indices(1, upto);
    let diff = |a: &WeightSequence, b: &WeightSequence| -> Result<Vec<(f64, f64)>> {
        idx.iter().map(|&p| Ok((p as f64, a.log_value(p)? - b.log_value(p)?))).collect()
    };
    let hs: Vec<f64> = (-8..=8).map(|k| 2f64.powi(k)).collect();
    let sub = |d: &[(f64, f64)], h: f64| bounded_above(&d.iter().map(|(p, v)| v - p * h.ln()).collect::<Vec<_>>());
    let dmn = diff(m, n)?;
    let dnm = diff(n, m)?;
    let mut set = RelationSet::default();
    let m_in_n = hs.iter().any(|&h| sub(&dmn, h));
    let n_in_m = hs.iter().any(|&h| sub(&dnm, h));
    if m_in_n {
        set.relations.insert(Relation::Subset);
    }
    if hs.iter().all(|&h| sub(&dmn, h)) {
        set.relations.insert(Relation::Prec);
    }
    if m_in_n && n_in_m {
        set.relations.insert(Relation::Equivalent);
    }
    Ok(set)
}

/// Conditions on weight sequences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeqCondition {
    LogConvex,
    M2,
    M5(f64),
    M5Zero,
    M5Inf,
}

impl FromStr for SeqCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "logconvex" => Ok(SeqCondition::LogConvex),
            "m2" => Ok(SeqCondition::M2),
            "m5_0" | "m50" => Ok(SeqCondition::M5Zero),
            "m5_inf" | "m5inf" => Ok(SeqCondition::M5Inf),
            _ => {
                let inner = t
                    .strip_prefix("m5(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| t.strip_prefix("m5:mu="));
                match inner {
                    Some(v) => v.parse().map(SeqCondition::M5).map_err(|_| parse_err(format!("bad mu in `{s}`"))),
                    None => Err(Error::UnknownCondition(s.to_string())),
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Nontriviality {
    BeurlingAndRoumieu,
    RoumieuOnly,
    Trivial,
}

impl fmt::Display for Nontriviality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Boundedness evidence for a single `h`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HEvidence {
    pub h: f64,
    pub bounded: bool,
    /// Maximum of `p log log p - p log h - log M_p` over the swept indices.
    pub prefix_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub label: Nontriviality,
    /// Tail behaviour came from the generator rather than from sampling.
    pub symbolic: bool,
    pub max_index: u64,
    pub per_h: Vec<HEvidence>,
}

fn parse_generator(s: &str) -> Result<Generator> {
    let (name, rest) = split_head(s);
    let mut params = parse_params(rest)?;
    let g = match name {
        "factorial" => Generator::FactorialPower { s: take(&mut params, "s", "factorial")? },
        "loglog" => {
            let s = take(&mut params, "s", "loglog")?;
            let r = take(&mut params, "r", "loglog")?;
            Generator::LogLogPower { s, r }
        }
        other => return Err(parse_err(format!("unknown sequence `{other}`"))),
    };
    ensure_empty(&params, name)?;
    Ok(g)
}

impl FromStr for WeightSequence {
    type Err = Error;

    /// `factorial:s=..`, `loglog:s=..,r=..` or `explicit:[v0,v1,...][;tail=<rule>]`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = split_head(s);
        if name != "explicit" {
            let g = parse_generator(s)?;
            return WeightSequence::from_generator(g, DEFAULT_PREFIX);
        }
        let (list, tail) = match rest.split_once(';') {
            Some((l, t)) => {
                let rule = t
                    .trim()
                    .strip_prefix("tail=")
                    .ok_or_else(|| parse_err("expected `tail=<rule>` after `;`"))?;
                (l.trim(), Some(parse_generator(rule)?))
            }
            None => (rest, None),
        };
        let body = list
            .strip_prefix('[')
            .and_then(|l| l.strip_suffix(']'))
            .ok_or_else(|| parse_err("explicit values must be written as [v0,v1,...]"))?;
        let values = body
            .split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|_| parse_err(format!("bad value `{}`", v.trim()))))
            .collect::<Result<Vec<_>>>()?;
        WeightSequence::explicit(&values, tail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn brute_force(seq: &WeightSequence, t: f64, upto: u64) -> f64 {
        (0..=upto).map(|p| p as f64 * t.ln() - seq.log_value(p).unwrap()).fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn factorial_associated_values() {
        let f = WeightSequence::factorial_power(1.0).unwrap();
        assert_eq!(f.associated_function(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(f.associated_function(2.0).unwrap(), 2f64.ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(f.associated_function(3.0).unwrap(), 4.5f64.ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(f.associated_function(2.0).unwrap(), brute_force(&f, 2.0, 500), epsilon = 1e-12);
        assert_abs_diff_eq!(f.associated_function(3.0).unwrap(), brute_force(&f, 3.0, 500), epsilon = 1e-12);
        assert_abs_diff_eq!(f.associated_via_counting(3.0).unwrap(), 2f64.ln() + 2.0 * 1.5f64.ln(), epsilon = 1e-12);
        assert_eq!(f.associated_via_counting(1.0).unwrap(), 0.0);
        assert_eq!(f.associated_argmax(3.0).unwrap(), 2);
    }

    #[test]
    fn counting_examples() {
        let f = WeightSequence::factorial_power(1.0).unwrap();
        let f2 = WeightSequence::factorial_power(2.0).unwrap();
        assert_eq!(f.counting_function(0.5).unwrap(), 0);
        assert_eq!(f.counting_function(3.5).unwrap(), 3);
        assert_eq!(f2.counting_function(2.5).unwrap(), 1);
        assert_abs_diff_eq!(f2.associated_via_counting(4.0).unwrap(), 4f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn loglog_quotient_formulas_agree() {
        let g = Generator::LogLogPower { s: 1.0, r: 1.0 };
        for p in [61u64, 62, 100, 1000] {
            let direct = g.log_value(p) - g.log_value(p - 1);
            assert_abs_diff_eq!(g.log_quotient(p), direct, epsilon = 1e-9);
        }
    }

    #[test]
    fn explicit_without_tail_has_limited_range() {
        let s: WeightSequence = "explicit:[1,1,2,6,24,120,720,5040,40320]".parse().unwrap();
        assert_abs_diff_eq!(s.associated_function(3.0).unwrap(), 4.5f64.ln(), epsilon = 1e-12);
        assert!(s.associated_function(100.0).is_err());
        assert!("explicit:[1,2,1]".parse::<WeightSequence>().is_err());
    }

    #[test]
    fn explicit_with_tail_matches_generator() {
        let vals: Vec<f64> = (0..10).map(statrs::function::factorial::factorial).collect();
        let e = WeightSequence::explicit(&vals, Some(Generator::FactorialPower { s: 1.0 })).unwrap();
        let f = WeightSequence::factorial_power(1.0).unwrap();
        for t in [0.5, 3.0, 9.5, 40.0, 1000.0] {
            assert_abs_diff_eq!(e.associated_function(t).unwrap(), f.associated_function(t).unwrap(), epsilon = 1e-9);
        }
    }

    #[test]
    fn conditions() {
        let f = WeightSequence::factorial_power(1.0).unwrap();
        let m2 = f.check_condition(SeqCondition::M2).unwrap();
        assert_eq!(m2.status, Status::Holds);
        assert_eq!(m2.get("A"), Some(1.0));
        assert_eq!(m2.get("H"), Some(2.0));
        let half = WeightSequence::factorial_power(0.5).unwrap();
        assert_eq!(half.check_condition(SeqCondition::LogConvex).unwrap().status, Status::Holds);
        let ll = WeightSequence::loglog_power(1.0, 1.0).unwrap();
        assert_eq!(ll.check_condition(SeqCondition::M5Zero).unwrap().status, Status::Fails);
        assert_eq!(ll.check_condition(SeqCondition::M5Inf).unwrap().status, Status::Holds);
        assert_eq!(ll.check_condition(SeqCondition::M5(2.0)).unwrap().status, Status::Holds);
        assert!(f.check_condition(SeqCondition::M5(0.0)).is_err());
    }

    #[test]
    fn loglog_square_exponent_violates_m2() {
        let ll = WeightSequence::loglog_power(1.0, 2.0).unwrap();
        assert_eq!(ll.check_condition(SeqCondition::M2).unwrap().status, Status::Fails);
    }

    #[test]
    fn classifier_examples() {
        let cases = [
            ("factorial:s=1", Nontriviality::BeurlingAndRoumieu),
            ("loglog:s=1,r=1", Nontriviality::RoumieuOnly),
            ("loglog:s=0.5,r=1", Nontriviality::Trivial),
        ];
        for (spec, want) in cases {
            let s: WeightSequence = spec.parse().unwrap();
            assert_eq!(s.nontriviality_classify().unwrap().label, want, "{spec}");
        }
    }

    #[test]
    fn classifier_without_generator_samples() {
        let logs: Vec<f64> = (0..200u64).map(statrs::function::factorial::ln_factorial).collect();
        let seq = WeightSequence { log_values: logs, generator: None, explicit: true, label: "p!".into() };
        let c = seq.nontriviality_classify().unwrap();
        assert!(!c.symbolic);
        assert_eq!(c.label, Nontriviality::BeurlingAndRoumieu);
    }

    #[test]
    fn sequence_relations() {
        let f1 = WeightSequence::factorial_power(1.0).unwrap();
        let f2 = WeightSequence::factorial_power(2.0).unwrap();
        let r = compare_sequences(&f1, &f2).unwrap();
        assert!(r.contains(Relation::Subset) && r.contains(Relation::Prec) && !r.contains(Relation::Equivalent));
        assert!(compare_sequences(&f2, &f1).unwrap().is_none());
        let same = compare_sequences(&f1, &f1).unwrap();
        assert!(same.contains(Relation::Subset) && same.contains(Relation::Equivalent));
        let ll = WeightSequence::loglog_power(1.0, 1.0).unwrap();
        let r = compare_sequences(&ll, &f1).unwrap();
        assert!(r.contains(Relation::Prec));
    }

    #[test]
    fn parse_conditions() {
        assert_eq!("M5(2)".parse::<SeqCondition>().unwrap(), SeqCondition::M5(2.0));
        assert_eq!("m5_0".parse::<SeqCondition>().unwrap(), SeqCondition::M5Zero);
        assert!(matches!("m7".parse::<SeqCondition>(), Err(Error::UnknownCondition(_))));
    }
}
