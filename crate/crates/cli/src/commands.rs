use std::path::Path;

use anyhow::{bail, Context};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use striphyp::almostanalytic::check_extension_bounds;
use striphyp::reps::{boundary_pair, cauchy_represent};
use striphyp::spaces::strip_norm;
use striphyp::stripharmonic::verify_sandwich;
use striphyp::transforms::{fourier_strip, laplace_atomic, laplace_transform, paley_wiener_check};
use striphyp::{
    build_extension, build_minorant, check_condition, AnalyticMinorant, Complex64, Condition, ContourSpec, Flavor, Functional, LaplaceBoundSpec,
    LaplaceCandidate, LaplaceRegion, MinorantMode, SeqCondition, SpaceParams, TestFunction, Weight, WeightSequence,
};

use crate::config::Config;
use crate::report::{complex, to_value, Output, Plot};
use crate::{Command, Multiplier};

pub fn execute(cmd: &Command, cfg: &Config, seed: u64) -> anyhow::Result<Output> {
    match cmd {
        Command::CheckWeight { weight, cond } => check_weight(weight, cond, cfg),
        Command::CheckSeq { seq, cond } => check_seq(seq, cond),
        Command::Classify { seq } => classify(seq),
        Command::Assoc { seq, t } => assoc(seq, t),
        Command::Minorant { weight, lambda, h, mode, x, y, verify } => minorant(weight, *lambda, *h, mode, x, *y, *verify, cfg, seed),
        Command::Norm { testfn, weight, h, lambda } => norm(testfn, weight, *h, *lambda, cfg),
        Command::Represent { functional, mult, b, r, z } => represent(functional, mult, *b, *r, z),
        Command::Pair { functional, testfn, k, b, r, truncation, mult } => pair(functional, testfn, *k, *b, *r, *truncation, mult),
        Command::Fourier { testfn, xi, k } => fourier(testfn, xi, *k, cfg),
        Command::Laplace { functional, zeta, b, interval } => laplace(functional, zeta, *b, interval.as_deref()),
        Command::Pwcheck { series, a, h, lambda, weight, region, flavor } => pwcheck(series, *a, *h, *lambda, weight.as_deref(), region, flavor, cfg),
        Command::Extend { testfn, weight, k, xi, eta, verify } => extend(testfn, weight, *k, xi, *eta, *verify, cfg),
    }
}

fn grid_provenance(cfg: &Config) -> Value {
    json!({ "t_min": cfg.t_min, "t_max": cfg.t_max, "points": cfg.points })
}

fn quad_provenance(cfg: &Config) -> Value {
    json!({ "abs_tol": cfg.abs_tol, "rel_tol": cfg.rel_tol })
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn check_weight(weight: &str, cond: &str, cfg: &Config) -> anyhow::Result<Output> {
    let w: Weight = weight.parse()?;
    let c: Condition = cond.parse()?;
    let v = check_condition(&w, c, &cfg.grid())?;
    let mut result = to_value(&v);
    result["tags"] = to_value(w.tags());
    Ok(Output::single(json!({ "weight": w.to_string(), "cond": cond }), json!({ "grid": grid_provenance(cfg) }), result))
}

fn check_seq(seq: &str, cond: &str) -> anyhow::Result<Output> {
    let m: WeightSequence = seq.parse()?;
    let c: SeqCondition = cond.parse()?;
    let v = m.check_condition(c)?;
    Ok(Output::single(json!({ "seq": m.label(), "cond": cond }), json!({ "prefix_len": m.prefix_len() }), to_value(&v)))
}

fn classify(seq: &str) -> anyhow::Result<Output> {
    let m: WeightSequence = seq.parse()?;
    let c = m.nontriviality_classify()?;
    let result = json!({ "status": c.label.to_string(), "symbolic": c.symbolic, "max_index": c.max_index, "per_h": to_value(&c.per_h) });
    Ok(Output::single(json!({ "seq": m.label() }), json!({ "h_grid": c.per_h.len(), "max_index": c.max_index }), result))
}

fn assoc(seq: &str, ts: &[f64]) -> anyhow::Result<Output> {
    let m: WeightSequence = seq.parse()?;
    let mut plot = Plot::new(&["x", "value"]);
    let mut results = Vec::new();
    for &t in ts {
        let v = m.associated_function(t)?;
        results.push(json!({ "t": t, "value": v, "argmax": m.associated_argmax(t)? }));
        plot.push(vec![t, v]);
    }
    Ok(Output { inputs: json!({ "seq": m.label(), "t": ts }), provenance: json!({ "prefix_len": m.prefix_len() }), results, plot: Some(plot) })
}

fn build_multiplier(m: &Multiplier, outer: f64) -> anyhow::Result<Option<AnalyticMinorant>> {
    let Some(spec) = &m.weight else { return Ok(None) };
    let w: Weight = spec.parse()?;
    let mode: MinorantMode = m.mode.parse()?;
    let h = m.h.unwrap_or(2.0 * outer);
    Ok(Some(build_minorant(&w, m.lambda, h, mode)?))
}

#[allow(clippy::too_many_arguments)]
fn minorant(weight: &str, lambda: f64, h: f64, mode: &str, xs: &[f64], y: f64, verify: bool, cfg: &Config, seed: u64) -> anyhow::Result<Output> {
    let w: Weight = weight.parse()?;
    let mode: MinorantMode = mode.parse()?;
    let f = build_minorant(&w, lambda, h, mode)?;
    let xs = if xs.is_empty() { linspace(-5.0 * h, 5.0 * h, 21) } else { xs.to_vec() };
    let mut plot = Plot::new(&["x", "value", "bound_lo", "bound_hi"]);
    let mut results = vec![json!({ "log_bound_constant": f.log_bound_constant(), "mode": to_value(&mode) })];
    for &x in &xs {
        let u = f.u(x, y)?;
        let (lo, hi) = (f.lower_log_bound(x), f.upper_log_bound(x));
        results.push(json!({ "x": x, "y": y, "log_modulus": u, "bound_lo": lo, "bound_hi": hi }));
        plot.push(vec![x, u, lo, hi]);
    }
    let mut provenance = json!({ "kernel_quad": to_value(&striphyp::stripharmonic::kernel_quad_config()) });
    if verify {
        let gx = linspace(-12.0 * h, 12.0 * h, cfg.sandwich_nx);
        let gy: Vec<f64> = (1..=cfg.sandwich_ny).map(|j| h * (2.0 * j as f64 / (cfg.sandwich_ny + 1) as f64 - 1.0)).collect();
        let sandwich = verify_sandwich(&f, &gx, &gy)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cr_max: f64 = 0.0;
        for _ in 0..cfg.cr_points {
            let z = Complex64::new(rng.gen_range(-8.0 * h..8.0 * h), rng.gen_range(-0.9 * h..0.9 * h));
            cr_max = cr_max.max(f.cr_residual(z, 1e-4 * h)?);
        }
        results.push(json!({ "verify": { "sandwich": to_value(&sandwich), "cr_max": cr_max, "cr_tolerance": 1e-4, "holds": sandwich.holds && cr_max < 1e-4 } }));
        provenance["verify_grid"] = json!({ "nx": cfg.sandwich_nx, "ny": cfg.sandwich_ny, "x_range": 12.0 * h, "cr_points": cfg.cr_points, "seed": seed });
    }
    Ok(Output { inputs: json!({ "weight": w.to_string(), "lambda": lambda, "h": h, "y": y }), provenance, results, plot: Some(plot) })
}

fn norm(testfn: &str, weight: &str, h: f64, lambda: f64, cfg: &Config) -> anyhow::Result<Output> {
    let phi: TestFunction = testfn.parse()?;
    let w: Weight = weight.parse()?;
    let r = strip_norm(&phi, &SpaceParams::new(w.clone(), h, lambda), &cfg.grid())?;
    let inputs = json!({ "testfn": phi.to_string(), "weight": w.to_string(), "h": h, "lambda": lambda });
    let provenance = json!({ "sub_strip": h * (1.0 - 1e-6), "truncation": r.truncation });
    Ok(Output::single(inputs, provenance, to_value(&r)))
}

fn represent(functional: &str, mult: &Multiplier, b: f64, r: f64, zs: &[Complex64]) -> anyhow::Result<Output> {
    let f: Functional = functional.parse()?;
    let p = build_multiplier(mult, r)?;
    let rep = cauchy_represent(&f, p.as_ref(), b, r)?;
    let values = zs.iter().map(|&z| Ok(json!({ "z": complex(z), "value": complex(rep.eval(z)?) }))).collect::<anyhow::Result<Vec<_>>>()?;
    let result = json!({
        "label": rep.label(),
        "inner": rep.inner(),
        "outer": rep.outer(),
        "entire": rep.is_entire(),
        "multiplier": p.as_ref().map(|m| m.weight().to_string()),
        "values": values,
    });
    Ok(Output::single(json!({ "functional": f.to_string(), "b": b, "R": r, "mult": mult.weight }), json!({}), result))
}

fn pair(functional: &str, testfn: &str, k: f64, b: Option<f64>, r: Option<f64>, truncation: Option<f64>, mult: &Multiplier) -> anyhow::Result<Output> {
    let f: Functional = functional.parse()?;
    let phi: TestFunction = testfn.parse()?;
    let b = b.unwrap_or(0.5 * (f.max_abs_im() + k));
    let r = r.unwrap_or(2.0 * k + 1.0);
    let p = build_multiplier(mult, r)?;
    let rep = cauchy_represent(&f, p.as_ref(), b, r)?;
    let contour = ContourSpec { k, truncation, intervals: Vec::new() };
    let value = boundary_pair(&rep, &phi, &contour)?;
    let direct = f.apply(&phi).ok();
    let result = json!({
        "value": complex(value),
        "direct": direct.map(complex),
        "abs_diff": direct.map(|d| (d - value).norm()),
    });
    let inputs = json!({ "functional": f.to_string(), "testfn": phi.to_string(), "k": k, "b": b, "R": r, "mult": mult.weight });
    Ok(Output::single(inputs, json!({ "contour": to_value(&contour) }), result))
}

fn fourier(testfn: &str, xis: &[f64], k: f64, cfg: &Config) -> anyhow::Result<Output> {
    let phi: TestFunction = testfn.parse()?;
    let q = cfg.quad();
    let mut plot = Plot::new(&["x", "re", "im"]);
    let mut results = Vec::new();
    for &xi in xis {
        let v = fourier_strip(&phi, k, xi, &q)?;
        results.push(json!({ "xi": xi, "value": complex(v) }));
        plot.push(vec![xi, v.re, v.im]);
    }
    Ok(Output { inputs: json!({ "testfn": phi.to_string(), "xi": xis, "k": k }), provenance: json!({ "quad": quad_provenance(cfg) }), results, plot: Some(plot) })
}

fn parse_interval(s: &str) -> anyhow::Result<(f64, f64)> {
    let (lo, hi) = s.split_once(':').context("interval must look like `lo:hi`")?;
    let num = |v: &str| -> anyhow::Result<f64> { v.trim().parse::<f64>().with_context(|| format!("bad interval end `{v}`")) };
    let (lo, hi) = (num(lo)?, num(hi)?);
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        bail!("interval needs lo < hi");
    }
    Ok((lo, hi))
}

fn default_interval(f: &Functional) -> (f64, f64) {
    let ends = f.atoms.iter().map(|a| (a.location.re, a.location.re)).chain(f.densities.iter().map(|d| (d.lo, d.hi)));
    let (lo, hi) = ends.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), (a, b)| (l.min(a), h.max(b)));
    if lo > hi {
        (-1.0, 1.0)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

fn laplace(functional: &str, zetas: &[Complex64], b: f64, interval: Option<&str>) -> anyhow::Result<Output> {
    let f: Functional = functional.parse()?;
    let j = match interval {
        Some(s) => parse_interval(s)?,
        None => default_interval(&f),
    };
    let inner = 0.5 * (f.max_abs_im() + b);
    let rep = cauchy_represent(&f, None, inner, 2.0 * b + 1.0)?;
    let contour = ContourSpec { k: b, truncation: None, intervals: vec![j] };
    let atomic = f.densities.is_empty();
    let mut plot = Plot::new(&["x", "y", "re", "im"]);
    let mut results = Vec::new();
    for &zeta in zetas {
        let v = laplace_transform(&rep, zeta, &contour)?;
        let closed = if atomic { Some(laplace_atomic(&f, zeta)?) } else { None };
        results.push(json!({ "zeta": complex(zeta), "value": complex(v), "closed_form": closed.map(complex) }));
        plot.push(vec![zeta.re, zeta.im, v.re, v.im]);
    }
    let inputs = json!({ "functional": f.to_string(), "zeta": zetas.iter().map(|z| complex(*z)).collect::<Vec<_>>(), "b": b, "interval": [j.0, j.1] });
    Ok(Output { inputs, provenance: json!({ "contour": to_value(&contour), "inner": inner }), results, plot: Some(plot) })
}

/// Reads `xi,eta,re,im` rows; a non-numeric first row is taken as a header.
pub fn read_series(path: &Path) -> anyhow::Result<Vec<(Complex64, Complex64)>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).comment(Some(b'#')).from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        if rec.len() != 4 {
            bail!("line {}: expected 4 columns xi,eta,re,im, found {}", i + 1, rec.len());
        }
        let nums: Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match nums {
            Ok(v) => out.push((Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3]))),
            Err(_) if i == 0 => continue,
            Err(e) => bail!("line {}: {e}", i + 1),
        }
    }
    if out.is_empty() {
        bail!("{} holds no samples", path.display());
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn pwcheck(series: &Path, a: f64, h: f64, lambda: Option<f64>, weight: Option<&str>, region: &str, flavor: &str, cfg: &Config) -> anyhow::Result<Output> {
    let samples = read_series(series)?;
    let region: LaplaceRegion = region.parse()?;
    let flavor: Flavor = flavor.parse()?;
    let mut spec = LaplaceBoundSpec::new(a, h, region);
    spec.flavor = flavor;
    if let Some(w) = weight {
        spec = spec.with_conjugate(w.parse()?, lambda.unwrap_or(1.0));
    } else if lambda.is_some() {
        bail!("--lambda needs --weight");
    }
    let n = samples.len();
    let v = paley_wiener_check(&LaplaceCandidate::Samples(samples), &spec, &cfg.pw_grid())?;
    let inputs = json!({ "series": series.display().to_string(), "a": a, "h": h, "lambda": lambda, "weight": weight, "region": region_name(region), "flavor": flavor_name(flavor) });
    Ok(Output::single(inputs, json!({ "samples": n, "epsilon": cfg.pw_epsilon }), to_value(&v)))
}

fn region_name(r: LaplaceRegion) -> String {
    to_value(&r).as_str().map(str::to_owned).unwrap_or_else(|| format!("{r:?}"))
}

fn flavor_name(f: Flavor) -> String {
    to_value(&f).as_str().map(str::to_owned).unwrap_or_else(|| format!("{f:?}"))
}

fn extend(testfn: &str, weight: &str, k: f64, xis: &[f64], eta: f64, verify: bool, cfg: &Config) -> anyhow::Result<Output> {
    let phi: TestFunction = testfn.parse()?;
    let w: Weight = weight.parse()?;
    let e = build_extension(&phi, &w, k)?;
    let xis = if xis.is_empty() { linspace(-10.0, 10.0, 41) } else { xis.to_vec() };
    let mut plot = Plot::new(&["x", "value", "bound_hi"]);
    let mut results = vec![json!({ "norm_omega": e.norm_omega(), "norm_sigma": e.norm_sigma(), "constant": e.constant() })];
    for &xi in &xis {
        let z = Complex64::new(xi, eta);
        let v = e.eval(z)?;
        let d = e.dbar(z)?;
        let vb = e.value_bound(z);
        results.push(json!({ "zeta": complex(z), "value": complex(v), "dbar": complex(d), "dbar_bound": e.dbar_bound(z)?, "value_bound": vb }));
        plot.push(vec![xi, v.norm(), vb]);
    }
    let mut provenance = json!({ "cutoff_at_eta": if eta != 0.0 { Some(e.cutoff(eta)?) } else { None } });
    if verify {
        results.push(json!({ "verify": to_value(&check_extension_bounds(&e, &cfg.extension_grid())?) }));
        provenance["verify_grid"] = to_value(&cfg.extension_grid());
    }
    Ok(Output { inputs: json!({ "testfn": phi.to_string(), "weight": w.to_string(), "k": k, "eta": eta }), provenance, results, plot: Some(plot) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intervals() {
        assert_eq!(parse_interval("-1:inf").unwrap(), (-1.0, f64::INFINITY));
        assert!(parse_interval("2:1").is_err());
        assert!(parse_interval("nan:1").is_err());
        assert!(parse_interval("1").is_err());
        let f: Functional = "atoms:[(1+0i,0,1),(-2+0.1i,1,1)]".parse().unwrap();
        assert_eq!(default_interval(&f), (-3.0, 2.0));
    }
}
