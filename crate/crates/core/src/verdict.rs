use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// Grade of a condition check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    /// Follows from symbolically known facts about the object.
    Holds,
    /// A concrete numeric witness violates the condition.
    Fails,
    /// No violation on the tested range, but no proof either.
    NumericallySupported,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Holds => "Holds",
            Status::Fails => "Fails",
            Status::NumericallySupported => "NumericallySupported",
        };
        f.write_str(s)
    }
}

/// Outcome of a condition check together with the constants that witness it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionVerdict {
    pub status: Status,
    pub witness: BTreeMap<String, f64>,
    /// Largest abscissa (or index) that was sampled.
    pub evidence_range: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ConditionVerdict {
    pub fn new(status: Status, evidence_range: f64) -> Self {
        ConditionVerdict { status, witness: BTreeMap::new(), evidence_range, note: None }
    }

    pub fn holds(evidence_range: f64) -> Self {
        Self::new(Status::Holds, evidence_range)
    }

    pub fn supported(evidence_range: f64) -> Self {
        Self::new(Status::NumericallySupported, evidence_range)
    }

    pub fn fails(evidence_range: f64) -> Self {
        Self::new(Status::Fails, evidence_range)
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.witness.insert(key.to_string(), value);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.witness.get(key).copied()
    }

    /// True for `Holds` and `NumericallySupported`.
    pub fn is_positive(&self) -> bool {
        self.status != Status::Fails
    }
}

/// Sampling ranges for grid-based evidence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridConfig {
    /// Upper end of the sampled half-line.
    pub t_max: f64,
    /// Number of log-spaced sample points.
    pub points: usize,
    /// Smallest positive sample point.
    pub t_min: f64,
    /// Dilation factors probed by relation checks.
    pub lambdas: Vec<f64>,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            t_max: 1e6,
            points: 1000,
            t_min: 1e-3,
            lambdas: (-8..=8).map(|k| 2f64.powi(k)).collect(),
        }
    }
}

impl GridConfig {
    /// Log-spaced grid on `[t_min, min(t_max, limit)]`, preceded by 0.
    pub fn log_grid(&self, limit: f64) -> Vec<f64> {
        let hi = self.t_max.min(limit);
        log_spaced(self.t_min.min(hi), hi, self.points.max(2), true)
    }
}

/// `n` log-spaced points from `lo` to `hi`, optionally preceded by 0.
pub fn log_spaced(lo: f64, hi: f64, n: usize, with_zero: bool) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    if with_zero {
        out.push(0.0);
    }
    if n == 1 || hi <= lo {
        out.push(hi);
        return out;
    }
    let (a, b) = (lo.ln(), hi.ln());
    for i in 0..n {
        out.push((a + (b - a) * i as f64 / (n - 1) as f64).exp());
    }
    *out.last_mut().unwrap() = hi;
    out
}

/// Heuristic: does a sampled sequence (on a geometric grid) stay bounded above?
///
/// Non-finite `+inf` entries mean unbounded, `-inf` entries are ignored.
/// The tail counts as bounded when its last increments are non-positive or
/// shrink geometrically with mean ratio below 0.98 (so `log t` and `log log t`
/// count as unbounded, `-1/t` as bounded).
pub fn bounded_above(values: &[f64]) -> bool {
    if values.contains(&f64::INFINITY) {
        return false;
    }
    let v: Vec<f64> = values.iter().copied().filter(|x| x.is_finite()).collect();
    if v.len() < 12 {
        return true;
    }
    let n = v.len();
    let scale = 1.0 + v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let d: Vec<f64> = (n - 9..n).map(|i| v[i] - v[i - 1]).collect();
    let tiny = 1e-12 * scale;
    if d.iter().all(|x| *x <= tiny) {
        return true;
    }
    if d.iter().all(|x| *x > 0.0) {
        let mean_log_ratio = (d[d.len() - 1] / d[0]).ln() / (d.len() - 1) as f64;
        return mean_log_ratio < 0.98f64.ln();
    }
    // Mixed signs: compare the tail maximum against the earlier maximum.
    let head = v[..n - 9].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let tail_last = v[n - 1];
    tail_last <= head + tiny || d[d.len() - 1] <= tiny
}

/// Order relations between weights or weight sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Subset,
    Prec,
    Equivalent,
    StarEquivalent,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Subset => "subset",
            Relation::Prec => "prec",
            Relation::Equivalent => "equivalent",
            Relation::StarEquivalent => "star_equivalent",
        })
    }
}

/// The relations found between two objects; empty means "none".
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct RelationSet {
    pub relations: std::collections::BTreeSet<Relation>,
    /// True when every membership decision came from symbolic facts.
    pub symbolic: bool,
}

impl RelationSet {
    pub fn contains(&self, r: Relation) -> bool {
        self.relations.contains(&r)
    }

    pub fn is_none(&self) -> bool {
        self.relations.is_empty()
    }

    /// Relation names, or `["none"]`.
    pub fn names(&self) -> Vec<String> {
        if self.relations.is_empty() {
            vec!["none".to_string()]
        } else {
            self.relations.iter().map(|r| r.to_string()).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_grid_ends() {
        let g = log_spaced(1e-3, 1e3, 7, true);
        assert_eq!(g[0], 0.0);
        assert!((g[1] - 1e-3).abs() < 1e-15);
        assert_eq!(*g.last().unwrap(), 1e3);
        assert!((g[4] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn boundedness_heuristic() {
        let grid = log_spaced(1.0, 1e6, 200, false);
        let log: Vec<f64> = grid.iter().map(|t| t.ln()).collect();
        let inv: Vec<f64> = grid.iter().map(|t| -1.0 / t).collect();
        let hump: Vec<f64> = grid.iter().map(|t| t - 1e-4 * t * t).collect();
        let lin: Vec<f64> = grid.to_vec();
        assert!(!bounded_above(&log));
        assert!(bounded_above(&inv));
        assert!(bounded_above(&hump));
        assert!(!bounded_above(&lin));
    }
}
