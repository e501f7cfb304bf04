//! Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use striphyp::almostanalytic::{build_extension, check_extension_bounds, direct_pair_at, stokes_boundary_pair, stokes_pair_at, ExtensionGrid, HalfPlaneFn};
use striphyp::quad::integrate;
use striphyp::reps::{boundary_pair, cauchy_represent, edge_continuation_check, Atom};
use striphyp::stripharmonic::{poisson_kernel, poisson_transform_weight, poisson_upper_constant, three_lines_check, verify_sandwich};
use striphyp::transforms::{inverse_fourier_functional, inverse_fourier_line, laplace_atomic, laplace_boundary_value, laplace_transform, Spectrum};
use striphyp::verdict::Status;
use striphyp::weights::{compare_weights_on_grid, inverse_derivative, young_conjugate, young_conjugate_numeric};
use striphyp::{
    build_minorant, check_condition, AnalyticRep, Complex64, Condition, ContourSpec, Functional, GridConfig, MinorantMode, Nontriviality, QuadConfig,
    Relation, SeqCondition, TestFunction, Weight, WeightSequence,
};

type Outcome = Result<(bool, String), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// `int_0^X P(x, y) dx = pi - y` for the kernel of the strip of width pi.
fn poisson_identity() -> Outcome {
    let cfg = QuadConfig::with_tol(1e-14, 1e-13);
    let x_max = 60.0;
    let mut worst: f64 = 0.0;
    for y in [0.3, PI / 2.0, 2.8] {
        let v = integrate(&|x: f64| poisson_kernel(x, y, PI).unwrap(), 0.0, x_max, &cfg).map_err(err)?.value;
        worst = worst.max((v - (PI - y)).abs());
    }
    Ok((worst < 1e-6, format!("max |int - (pi - y)| = {worst:.2e} (X = {x_max})")))
}

/// Lower and upper Poisson bounds for a weight on a 50 x 20 grid of the half-strip.
fn poisson_sandwich() -> Outcome {
    let cfg = QuadConfig::with_tol(1e-12, 1e-11);
    let mut lines = Vec::new();
    let mut ok = true;
    for w in [Weight::power(0.5).map_err(err)?, Weight::linear()] {
        for h in [1.0, PI] {
            let cst = poisson_upper_constant(&w, h).map_err(err)?;
            let xs = linspace(-10.0 * h, 10.0 * h, 50);
            let ys: Vec<f64> = (1..=20).map(|j| h * j as f64 / 21.0).collect();
            let (mut lo_gap, mut hi_gap) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
            for &x in &xs {
                for &y in &ys {
                    let p = poisson_transform_weight(&w, x, y, h, &cfg).map_err(err)?;
                    let t = 1.0 - y / h;
                    lo_gap = lo_gap.max(0.5 * w.eval(x) * t - p);
                    hi_gap = hi_gap.max(p - ((w.eval(2.0 * x) + w.eval(2.0 * h / PI)) * t + cst));
                }
            }
            let pass = lo_gap <= 1e-10 && hi_gap <= 1e-10;
            ok &= pass;
            lines.push(format!("{} h={h:.3}: lower gap {lo_gap:.2e}, upper gap {hi_gap:.2e}", w.label()));
        }
    }
    Ok((ok, lines.join("; ")))
}

/// Certified sandwich of the analytic minorant and Cauchy-Riemann residuals.
fn minorant_sandwich() -> Outcome {
    let cases = [
        (Weight::power(0.5).map_err(err)?, 1.0, 1.0, MinorantMode::Dilate),
        (Weight::linear(), 1.0, PI, MinorantMode::Subadditive),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut ok = true;
    let mut lines = Vec::new();
    for (w, lambda, h, mode) in cases {
        let f = build_minorant(&w, lambda, h, mode).map_err(err)?;
        let xs = linspace(-12.0 * h, 12.0 * h, 50);
        let ys = linspace(-h * (1.0 - 1e-3), h * (1.0 - 1e-3), 20);
        let rep = verify_sandwich(&f, &xs, &ys).map_err(err)?;
        let mut cr: f64 = 0.0;
        for _ in 0..100 {
            let z = c(rng.gen_range(-8.0 * h..8.0 * h), rng.gen_range(-0.9 * h..0.9 * h));
            cr = cr.max(f.cr_residual(z, 1e-4 * h).map_err(err)?);
        }
        let pass = rep.holds && rep.points == 1000 && cr < 1e-4;
        ok &= pass;
        lines.push(format!("{} h={h:.3} {mode:?}: lower gap {:.2e}, upper gap {:.2e}, CR {cr:.1e}", w.label(), rep.worst_lower_gap, rep.worst_upper_gap));
    }
    Ok((ok, lines.join("; ")))
}

/// Non-triviality labels for the sequence catalog.
fn nontriviality_labels() -> Outcome {
    let cases = [
        ("factorial:s=0.5", Nontriviality::BeurlingAndRoumieu),
        ("factorial:s=1", Nontriviality::BeurlingAndRoumieu),
        ("factorial:s=2", Nontriviality::BeurlingAndRoumieu),
        ("loglog:s=1,r=2", Nontriviality::BeurlingAndRoumieu),
        ("loglog:s=1,r=1", Nontriviality::RoumieuOnly),
        ("loglog:s=0.5,r=1", Nontriviality::Trivial),
    ];
    let mut ok = true;
    let mut lines = Vec::new();
    for (spec, want) in cases {
        let seq: WeightSequence = spec.parse().map_err(err)?;
        let got = seq.nontriviality_classify().map_err(err)?.label;
        ok &= got == want;
        lines.push(format!("{spec} -> {got}"));
    }
    Ok((ok, lines.join(", ")))
}

/// (M.5), (eps) on the associated function and `e^t` relations must agree per sequence.
fn growth_coherence() -> Outcome {
    let grid = GridConfig::default();
    let expected = [("factorial:s=1", true, true), ("loglog:s=1,r=2", true, true), ("loglog:s=1,r=1", false, true)];
    let mut ok = true;
    let mut checks = 0;
    let mut lines = Vec::new();
    for (spec, want0, want_inf) in expected {
        let seq: WeightSequence = spec.parse().map_err(err)?;
        let m5_0 = seq.check_condition(SeqCondition::M5Zero).map_err(err)?.status != Status::Fails;
        let m5_inf = seq.check_condition(SeqCondition::M5Inf).map_err(err)?.status != Status::Fails;
        let w = Weight::assoc(seq);
        let e0 = check_condition(&w, Condition::Epsilon0, &grid).map_err(err)?.status != Status::Fails;
        let einf = check_condition(&w, Condition::EpsilonInf, &grid).map_err(err)?.status != Status::Fails;
        let rel = compare_weights_on_grid(&Weight::exp(), &w, &grid);
        let (p0, pinf) = (rel.contains(Relation::Prec), rel.contains(Relation::Subset));
        let triples = [(m5_0, m5_inf), (e0, einf), (p0, pinf)];
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            checks += 1;
            ok &= triples[i] == triples[j];
        }
        ok &= (m5_0, m5_inf) == (want0, want_inf);
        lines.push(format!("{spec}: M5 {m5_0}/{m5_inf}, eps {e0}/{einf}, e^t {p0}/{pinf}"));
    }
    Ok((ok && checks == 9, format!("{checks} cross-checks; {}", lines.join("; "))))
}

/// `M` from the supremum formula agrees with the counting-function integral.
fn associated_oracle() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut lines = Vec::new();
    for spec in ["factorial:s=1", "factorial:s=2", "loglog:s=1,r=2"] {
        let seq: WeightSequence = spec.parse().map_err(err)?;
        let top = Weight::assoc(seq.clone()).eval_limit().min(1e6);
        let pts = striphyp::verdict::log_spaced(0.5, top, 1000, false);
        let mut local: f64 = 0.0;
        for t in pts {
            let a = seq.associated_function(t).map_err(err)?;
            let b = seq.associated_via_counting(t).map_err(err)?;
            local = local.max((a - b).abs() / a.abs().max(1.0));
        }
        worst = worst.max(local);
        lines.push(format!("{spec} {local:.1e}"));
    }
    let f = WeightSequence::factorial_power(1.0).map_err(err)?;
    let spot = (f.associated_function(2.0).map_err(err)? - 2f64.ln()).abs().max((f.associated_function(3.0).map_err(err)? - 4.5f64.ln()).abs());
    Ok((worst < 1e-9 && spot < 1e-9, format!("max relative gap {worst:.1e} ({}); spot error {spot:.1e}", lines.join(", "))))
}

fn catalog_test_functions() -> Result<Vec<TestFunction>, String> {
    [
        "gaussian:a=1",
        "gaussian:a=0.5,shift=1+0i",
        "gaussian:a=2,shift=-0.5+0.3i",
        "product:gaussian:a=1,shift=0.5+0i;gaussian:a=0.25,shift=-1+0i",
        "recip(h=1,lambda=1,mode=subadditive):linear",
    ]
    .iter()
    .map(|s| s.parse().map_err(err))
    .collect()
}

/// `bv(cauchy_represent(f)) = f` on random atomic functionals.
fn boundary_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let phis = catalog_test_functions()?;
    let (mut worst, mut spread): (f64, f64) = (0.0, 0.0);
    for _ in 0..20 {
        let n = rng.gen_range(1..=3);
        let atoms = (0..n)
            .map(|_| Atom {
                location: c(rng.gen_range(-3.0..3.0), rng.gen_range(-0.2..0.2)),
                order: rng.gen_range(0..=2),
                coefficient: c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            })
            .collect();
        let f = Functional { atoms, densities: Vec::new() };
        let rep = cauchy_represent(&f, None, 0.25, 2.0).map_err(err)?;
        for phi in &phis {
            let direct = f.apply(phi).map_err(err)?;
            let a = boundary_pair(&rep, phi, &ContourSpec::new(0.5)).map_err(err)?;
            let b = boundary_pair(&rep, phi, &ContourSpec::new(0.8)).map_err(err)?;
            worst = worst.max((a - direct).norm());
            spread = spread.max((a - b).norm());
        }
    }
    Ok((worst < 1e-5 && spread < 1e-7, format!("max |bv - <f,phi>| = {worst:.1e}, contour-height spread {spread:.1e} (100 pairs)")))
}

/// Residual of the edge-of-the-wedge continuation formula.
fn edge_residual() -> Outcome {
    let cfg = QuadConfig::with_tol(1e-13, 1e-11);
    let z = c(0.3, 1.5);
    let mut entire: f64 = 0.0;
    for a in [1.0, 0.5, 2.0] {
        let f = AnalyticRep::entire_gaussian(a);
        entire = entire.max(edge_continuation_check(&f, None, 1.9, z, &cfg).map_err(err)?);
    }
    let rep = cauchy_represent(&Functional::delta(0.0), None, 0.25, 2.5).map_err(err)?;
    let r = edge_continuation_check(&rep, None, 2.0, z, &cfg).map_err(err)?;
    let pole = 1.0 / (2.0 * PI * z.norm());
    let rel = (r - pole).abs() / pole;
    Ok((entire < 1e-6 && rel < 0.01, format!("entire residual {entire:.1e}; Cauchy residual {r:.6} vs pole {pole:.6} ({:.2e} relative)", rel)))
}

/// Fourier round trip, Laplace of point masses, Laplace boundary values.
fn fourier_laplace() -> Outcome {
    let cfg = QuadConfig::with_tol(1e-13, 1e-12);
    let mut round: f64 = 0.0;
    for (a, shift) in [(1.0, 0.0), (0.5, 1.0), (2.0, -0.7)] {
        let phi = TestFunction::gaussian(a, c(shift, 0.0)).map_err(err)?;
        let psi = Spectrum::of_test_function(&phi, 0.5).map_err(err)?;
        for x in [-2.0, -0.3, 0.0, 0.8, 2.5] {
            let back = inverse_fourier_line(&psi, x, &cfg).map_err(err)?;
            round = round.max((back - phi.eval(c(x, 0.0)).map_err(err)?).norm());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut lap: f64 = 0.0;
    for _ in 0..20 {
        let a: f64 = rng.gen_range(-2.0..2.0);
        let zeta = c(rng.gen_range(-4.0..4.0), rng.gen_range(-2.0..2.0));
        let rep = cauchy_represent(&Functional::delta(a), None, 0.25, 2.0).map_err(err)?;
        let spec = ContourSpec { intervals: vec![(a - 0.5, a + 0.5)], ..ContourSpec::new(0.5) };
        let v = laplace_transform(&rep, zeta, &spec).map_err(err)?;
        lap = lap.max((v - (c(0.0, 1.0) * a * zeta).exp() / (2.0 * PI)).norm());
    }
    let f: Functional = "atoms:[(0,0,1), (1.5,1,0.5), (3,2,-0.25)]".parse().map_err(err)?;
    let rep = cauchy_represent(&f, None, 0.25, 2.0).map_err(err)?;
    let half = ContourSpec { intervals: vec![(-1.0, f64::INFINITY)], ..ContourSpec::new(0.5) };
    let mut bv: f64 = 0.0;
    for xi in [-3.0, -1.0, 0.0, 0.5, 2.0] {
        let l = laplace_boundary_value(&rep, xi, &half).map_err(err)?;
        bv = bv.max((l - inverse_fourier_functional(&f, xi, &cfg).map_err(err)?).norm());
    }
    let closed = (laplace_atomic(&f, c(0.7, 0.4)).map_err(err)? - laplace_transform(&rep, c(0.7, 0.4), &half).map_err(err)?).norm();
    let pass = round < 1e-6 && lap < 1e-8 && bv < 1e-5 && closed < 1e-8;
    Ok((pass, format!("round trip {round:.1e}; Laplace of point masses {lap:.1e}; boundary value {bv:.1e}")))
}

/// Almost-analytic extension: real-axis agreement, both bounds, Stokes pairing.
fn almost_analytic() -> Outcome {
    let phi = TestFunction::gaussian(1.0, c(0.0, 0.0)).map_err(err)?;
    let ext = build_extension(&phi, &Weight::twosqrt(), 0.5).map_err(err)?;
    let mut real: f64 = 0.0;
    for xi in linspace(-20.0, 20.0, 161) {
        let want = PI.sqrt() * (-xi * xi / 4.0).exp();
        real = real.max((ext.eval(c(xi, 0.0)).map_err(err)? - want).norm());
    }
    let bounds = check_extension_bounds(&ext, &ExtensionGrid::default()).map_err(err)?;
    let cfg = QuadConfig::with_tol(1e-11, 1e-10);
    // psi(xi) = e^{-xi^2} is the transform of e^{-x^2/4} / (2 sqrt(pi)).
    let src = TestFunction::gaussian(0.25, c(0.0, 0.0)).map_err(err)?.scaled(c(0.5 / PI.sqrt(), 0.0));
    let e2 = build_extension(&src, &Weight::twosqrt(), 1.0).map_err(err)?;
    let g = HalfPlaneFn::exponential(c(1.0, 0.0), 1.0).map_err(err)?;
    let eta = 1e-3;
    let two = stokes_pair_at(&g, &e2, 1.0, eta, &cfg).map_err(err)?;
    let direct = direct_pair_at(&g, &e2, eta, &cfg).map_err(err)?;
    let limit = stokes_boundary_pair(&g, &e2, 1.0, &cfg).map_err(err)?;
    let exact = PI.sqrt() * (-0.25f64).exp();
    let (d1, d2) = ((two - direct).norm(), (limit - exact).norm());
    let pass = real < 1e-6 && bounds.status != Status::Fails && d1 < 1e-4 && d2 < 1e-5;
    Ok((
        pass,
        format!(
            "real axis {real:.1e}; bounds {} (max ratios {:.3}, {:.3}); Stokes vs direct at eta=1e-3 {d1:.1e}; limit vs closed form {d2:.1e}",
            bounds.status,
            bounds.get("max_dbar_ratio").unwrap_or(f64::NAN),
            bounds.get("max_value_ratio").unwrap_or(f64::NAN)
        ),
    ))
}

/// Three-lines inequality for `e^{-z^2}` with `omega = x^2`, `h = 1`, `M = e`, `C = 1`.
fn three_lines() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let pts: Vec<Complex64> = (0..1000).map(|_| c(rng.gen_range(-6.0..6.0), rng.gen_range(0.0..=1.0))).collect();
    let w = Weight::power(2.0).map_err(err)?;
    let worst = three_lines_check(|z| (-z * z).exp(), 1f64.exp(), 1.0, &w, 1.0, &pts).map_err(err)?;
    Ok((worst <= 1.0 + 1e-12, format!("max |phi| / bound = {worst:.6} over 1000 points")))
}

/// Fenchel inequality and the conjugate identities through `H = (omega')^{-1}`.
fn young_identities() -> Outcome {
    let mut fenchel: f64 = f64::NEG_INFINITY;
    let (mut deriv, mut ident): (f64, f64) = (0.0, 0.0);
    for w in [Weight::twosqrt(), Weight::power(0.5).map_err(err)?] {
        let ts = striphyp::verdict::log_spaced(1e-3, 1e3, 100, false);
        let ss = striphyp::verdict::log_spaced(1e-2, 1e2, 100, false);
        for &s in &ss {
            let conj = young_conjugate(&w, s).map_err(err)?;
            for &t in &ts {
                fenchel = fenchel.max(w.eval(t) - t * s - conj);
            }
        }
        for s in [0.05, 0.2, 0.7, 1.0, 3.0, 10.0] {
            let hs = inverse_derivative(&w, s).map_err(err)?;
            let d = 1e-5 * s;
            let num = (young_conjugate_numeric(&w, s + d).map_err(err)? - young_conjugate_numeric(&w, s - d).map_err(err)?) / (2.0 * d);
            deriv = deriv.max((num + hs).abs() / hs.max(1.0));
            ident = ident.max((young_conjugate_numeric(&w, s).map_err(err)? - (w.eval(hs) - s * hs)).abs());
        }
    }
    let pass = fenchel <= 1e-12 && deriv < 1e-6 && ident < 1e-6;
    Ok((pass, format!("max omega(t) - ts - omega*(s) = {fenchel:.1e}; (omega*)' + H {deriv:.1e}; omega* - (omega(H) - sH) {ident:.1e}")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("Poisson kernel integral identity", poisson_identity),
        ("Poisson transform sandwich", poisson_sandwich),
        ("analytic minorant sandwich and Cauchy-Riemann", minorant_sandwich),
        ("non-triviality classifier", nontriviality_labels),
        ("growth-condition coherence", growth_coherence),
        ("associated-function oracle", associated_oracle),
        ("boundary-value round trip", boundary_round_trip),
        ("edge-of-the-wedge residual", edge_residual),
        ("Fourier/Laplace consistency", fourier_laplace),
        ("almost-analytic extension", almost_analytic),
        ("three-lines inequality", three_lines),
        ("Young-conjugate identities", young_identities),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        let tag = if pass { "PASS" } else { "FAIL" };
        println!("{tag} [{:>2}] {name} ({:.1}s): {detail}", i + 1, start.elapsed().as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
