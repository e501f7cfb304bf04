//! Defaults for tolerances and grids, overridable by a flat `key = value` file.

use std::path::Path;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use striphyp::almostanalytic::ExtensionGrid;
use striphyp::transforms::PwGrid;
use striphyp::{GridConfig, QuadConfig};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Sampled half-line `[t_min, t_max]` with `points` log-spaced samples.
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
    pub sandwich_nx: usize,
    pub sandwich_ny: usize,
    pub cr_points: usize,
    pub pw_xi_max: f64,
    pub pw_n_xi: usize,
    pub pw_eta_min: f64,
    pub pw_eta_max: f64,
    pub pw_n_eta: usize,
    pub pw_epsilon: f64,
    pub ext_xi_max: f64,
    pub ext_n_xi: usize,
    pub ext_eta_max: f64,
    pub ext_n_eta: usize,
}

impl Default for Config {
    fn default() -> Self {
        let g = GridConfig::default();
        let pw = PwGrid::default();
        let ext = ExtensionGrid::default();
        Config {
            abs_tol: 1e-8,
            rel_tol: 1e-6,
            t_min: g.t_min,
            t_max: g.t_max,
            points: g.points,
            sandwich_nx: 50,
            sandwich_ny: 20,
            cr_points: 100,
            pw_xi_max: pw.xi_max,
            pw_n_xi: pw.n_xi,
            pw_eta_min: pw.eta_min,
            pw_eta_max: pw.eta_max,
            pw_n_eta: pw.n_eta,
            pw_epsilon: pw.epsilon,
            ext_xi_max: ext.xi_max,
            ext_n_xi: ext.n_xi,
            ext_eta_max: ext.eta_max,
            ext_n_eta: ext.n_eta,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> anyhow::Result<Config> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Config::parse(&text).with_context(|| format!("in config {}", path.display()))
    }

    pub fn parse(text: &str) -> anyhow::Result<Config> {
        let cfg: Config = toml::from_str(text)?;
        if !(cfg.abs_tol > 0.0 && cfg.rel_tol > 0.0) {
            bail!("tolerances must be positive");
        }
        if !(cfg.t_min > 0.0 && cfg.t_max > cfg.t_min && cfg.points >= 2) {
            bail!("need 0 < t_min < t_max and points >= 2");
        }
        if cfg.sandwich_nx < 2 || cfg.sandwich_ny < 1 {
            bail!("sandwich grid needs at least 2 x 1 points");
        }
        Ok(cfg)
    }

    pub fn quad(&self) -> QuadConfig {
        QuadConfig::with_tol(self.abs_tol, self.rel_tol)
    }

    pub fn grid(&self) -> GridConfig {
        GridConfig { t_min: self.t_min, t_max: self.t_max, points: self.points, ..GridConfig::default() }
    }

    pub fn pw_grid(&self) -> PwGrid {
        PwGrid {
            xi_max: self.pw_xi_max,
            n_xi: self.pw_n_xi,
            eta_min: self.pw_eta_min,
            eta_max: self.pw_eta_max,
            n_eta: self.pw_n_eta,
            epsilon: self.pw_epsilon,
        }
    }

    pub fn extension_grid(&self) -> ExtensionGrid {
        ExtensionGrid { xi_max: self.ext_xi_max, n_xi: self.ext_n_xi, eta_max: self.ext_eta_max, n_eta: self.ext_n_eta }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_overrides() {
        let c = Config::parse("abs_tol = 1e-10\n# comment\npoints = 200\n").unwrap();
        assert_eq!(c.abs_tol, 1e-10);
        assert_eq!(c.points, 200);
        assert_eq!(c.rel_tol, 1e-6);
        assert!(Config::parse("unknown = 1").is_err());
        assert!(Config::parse("abs_tol = -1").is_err());
    }
}
