use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde_json::{json, Value};

use pellarcs_core::geometry::{
    boundary_curve, classify, survey_extremals, trace_arc, trace_real_preimage, IntersectionKind, Window,
};
use pellarcs_core::param::{circle_side, endpoint_raw, inverse, CircleSide, Endpoint};
use pellarcs_core::pell::{build_config, recover_pell, TnTupleConfig};
use pellarcs_core::EllipticContext;

use crate::args::{Command, CountArgs, InvertArgs, MapArgs, PlotArgs, SampledArgs, TupleArgs, DEFAULT_SAMPLES};
use crate::output::{csv_text, sig17, Failure, Outcome, Payload};
use crate::svg;

/// Largest Pell residual reported as certified.
const PELL_RESIDUAL_MAX: f64 = 1e-8;
const ROUND_TRIP_MAX: f64 = 1e-8;

pub fn run(command: &Command, tol: f64) -> Result<Outcome, Failure> {
    match command {
        Command::Map(a) => map(a, tol),
        Command::Invert(a) => invert(a, tol),
        Command::Tuple(a) => tuple(a, tol),
        Command::Pell(a) => pell(a, tol),
        Command::Trace(a) => trace(a, tol),
        Command::Extremals(a) => extremals(a, tol),
        Command::Boundary(a) => boundary(a),
        Command::Paramcurves(a) => paramcurves(a, tol),
        Command::Plot(a) => plot(a, tol),
    }
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn json_outcome(inputs: Value, results: Value, certified: bool, warnings: Vec<String>) -> Outcome {
    Outcome {
        payload: Payload::Json { inputs, results },
        certified,
        warnings,
    }
}

fn kind_name(kind: IntersectionKind) -> &'static str {
    match kind {
        IntersectionKind::Crossing => "crossing",
        IntersectionKind::Tangent => "tangent",
        IntersectionKind::Disjoint => "disjoint",
    }
}

fn side_name(side: CircleSide) -> &'static str {
    match side {
        CircleSide::Inside => "inside",
        CircleSide::On => "on",
        CircleSide::Outside => "outside",
    }
}

fn config(t: &TupleArgs, tol: f64) -> Result<(TnTupleConfig, Vec<String>), Failure> {
    let cfg = build_config(t.n, t.m, t.k, tol)?;
    let warnings = cfg.notes().iter().map(|n| n.to_string()).collect();
    Ok((cfg, warnings))
}

fn tuple_inputs(t: &TupleArgs) -> Value {
    json!({"n": t.n, "m": t.m, "k": t.k})
}

fn map(a: &MapArgs, tol: f64) -> Result<Outcome, Failure> {
    if !(a.lambda > 0.0 && a.lambda < 1.0) {
        return Err(Failure::Input("lambda must lie in (0, 1)".into()));
    }
    let ctx = EllipticContext::new(a.k, tol)?;
    let (alpha, beta) = endpoint_raw(&ctx, a.lambda)?;
    let mut warnings = Vec::new();
    let mut results = json!({"alpha": alpha, "beta": beta});
    if a.lambda < 0.5 {
        results["circle_side"] = json!(side_name(circle_side(Endpoint::new(alpha, beta)?)));
    } else if a.lambda == 0.5 {
        warnings.push("lambda = 1/2: the endpoint lies on the imaginary axis".into());
    } else {
        warnings.push("lambda > 1/2: endpoint mirrored in the imaginary axis".into());
    }
    Ok(json_outcome(json!({"k": a.k, "lambda": a.lambda}), results, true, warnings))
}

fn invert(a: &InvertArgs, tol: f64) -> Result<Outcome, Failure> {
    if !(a.alpha.is_finite() && a.beta.is_finite()) || a.alpha == 0.0 || a.beta == 0.0 {
        return Err(Failure::Input("the endpoint must lie off both axes".into()));
    }
    let (flip_re, flip_im) = (a.alpha < 0.0, a.beta < 0.0);
    let mut warnings = Vec::new();
    if flip_re {
        warnings.push("alpha < 0: reflected in the imaginary axis, lambda -> 1 - lambda".into());
    }
    if flip_im {
        warnings.push("beta < 0: reflected in the real axis, the input is a4 = conj(a3)".into());
    }
    let p = inverse(Endpoint::new(a.alpha.abs(), a.beta.abs())?)?;
    let lambda_raw = if flip_re { 1.0 - p.lambda() } else { p.lambda() };
    let ctx = EllipticContext::new(p.k(), tol)?;
    let (alpha, beta) = endpoint_raw(&ctx, lambda_raw)?;
    let beta = if flip_im { -beta } else { beta };
    let error = (alpha - a.alpha).abs().max((beta - a.beta).abs());
    let results = json!({
        "k": p.k(),
        "lambda": p.lambda(),
        "lambda_raw": lambda_raw,
        "reduction": {"reflected_real": flip_re, "reflected_imag": flip_im},
        "round_trip_error": error,
    });
    Ok(json_outcome(
        json!({"alpha": a.alpha, "beta": a.beta}),
        results,
        error < ROUND_TRIP_MAX,
        warnings,
    ))
}

fn tuple(a: &TupleArgs, tol: f64) -> Result<Outcome, Failure> {
    let (cfg, warnings) = config(a, tol)?;
    let class = classify(&cfg);
    let tr = trace_arc(&cfg, DEFAULT_SAMPLES)?;
    let r = survey_extremals(&cfg, &tr)?;
    let results = json!({
        "lambda": cfg.lambda(),
        "a3": pair(cfg.a3()),
        "a4": pair(cfg.a4()),
        "c": cfg.c(),
        "z_star": cfg.z_star(),
        "z_star_alt": cfg.z_star_alt(),
        "kind": kind_name(class.kind),
        "alpha_rule_holds": class.alpha_rule_holds,
        "counts": {
            "interval": r.interval_count,
            "arc": r.arc_count,
            "total": r.total,
            "expected_total": r.expected_total,
        },
    });
    Ok(json_outcome(
        tuple_inputs(a),
        results,
        r.certified && class.alpha_rule_holds,
        warnings,
    ))
}

fn pell(a: &TupleArgs, tol: f64) -> Result<Outcome, Failure> {
    let (cfg, warnings) = config(a, tol)?;
    let p = recover_pell(&cfg)?;
    let roots = |rs: &[Complex64]| rs.iter().copied().map(pair).collect::<Vec<_>>();
    let results = json!({
        "t_chebyshev": p.t_coeffs,
        "u_chebyshev": p.u_coeffs,
        "t_monomial": p.t_monomial(),
        "u_monomial": p.u_monomial(),
        "t_roots": roots(&p.t_roots),
        "u_roots": roots(&p.u_roots),
        "h_roots": roots(&p.h_roots),
        "leading": p.leading,
        "residual": p.residual,
        "threshold": p.threshold,
        "derivative_sign": p.derivative_sign,
        "derivative_residual": p.derivative_residual,
        "cert_points": p.cert_points,
    });
    Ok(json_outcome(tuple_inputs(a), results, p.residual < PELL_RESIDUAL_MAX, warnings))
}

fn extremals(a: &SampledArgs, tol: f64) -> Result<Outcome, Failure> {
    let (cfg, warnings) = config(&a.tuple, tol)?;
    let tr = trace_arc(&cfg, a.samples)?;
    let r = survey_extremals(&cfg, &tr)?;
    let results = json!({
        "on_interval": r.on_interval,
        "interval_values": r.interval_values,
        "on_arc": r.on_arc.iter().copied().map(pair).collect::<Vec<_>>(),
        "arc_values": r.arc_values,
        "interval_count": r.interval_count,
        "arc_count": r.arc_count,
        "total": r.total,
        "expected_total": r.expected_total,
        "max_defect": r.max_defect,
    });
    let mut inputs = tuple_inputs(&a.tuple);
    inputs["samples"] = json!(a.samples);
    Ok(json_outcome(inputs, results, r.certified, warnings))
}

/// `arg(T + sqrt(T^2 - 1)) / n`, the phase of a point of the real preimage.
fn preimage_phase(cfg: &TnTupleConfig, z: Complex64) -> Result<f64, Failure> {
    let t = cfg.tn_eval(z)?;
    Ok((t + (t * t - 1.0).sqrt()).arg() / cfg.n() as f64)
}

fn trace(a: &PlotArgs, tol: f64) -> Result<Outcome, Failure> {
    let (cfg, warnings) = config(&a.tuple, tol)?;
    let tr = trace_arc(&cfg, a.samples)?;
    let lines = trace_real_preimage(&cfg, Window::around(&cfg), a.resolution)?;
    let mut rows = Vec::new();
    for (z, phi) in tr.z_points.iter().zip(tr.phases.iter()) {
        rows.push(vec!["arc".into(), sig17(z.re), sig17(z.im), sig17(*phi)]);
    }
    for (j, line) in lines.iter().enumerate() {
        for &z in line {
            let phi = preimage_phase(&cfg, z)?;
            rows.push(vec![format!("preimage-{j}"), sig17(z.re), sig17(z.im), sig17(phi)]);
        }
    }
    let text = csv_text(&["branch", "re_z", "im_z", "phase"], &rows)?;
    Ok(Outcome {
        payload: Payload::Text(text),
        certified: true,
        warnings,
    })
}

/// Rotation numbers `0.05 + i * 0.4 / samples`, `i = 0..samples`.
pub fn boundary_grid(samples: usize) -> Vec<f64> {
    (0..samples).map(|i| 0.05 + 0.4 * i as f64 / samples as f64).collect()
}

fn boundary(a: &CountArgs) -> Result<Outcome, Failure> {
    if a.samples == 0 {
        return Err(Failure::Input("samples must be positive".into()));
    }
    let curve = boundary_curve(&boundary_grid(a.samples));
    let rows: Vec<Vec<String>> = curve
        .samples
        .iter()
        .map(|s| vec![sig17(s.lambda), sig17(s.k_star), sig17(s.alpha), sig17(s.beta)])
        .collect();
    let warnings: Vec<String> = curve
        .skipped
        .iter()
        .map(|(lambda, e)| format!("lambda = {lambda}: {e}"))
        .collect();
    Ok(Outcome {
        payload: Payload::Text(csv_text(&["lambda", "k_star", "alpha", "beta"], &rows)?),
        certified: curve.skipped.is_empty(),
        warnings,
    })
}

fn paramcurves(a: &CountArgs, tol: f64) -> Result<Outcome, Failure> {
    if a.samples < 2 {
        return Err(Failure::Input("samples must be at least 2".into()));
    }
    let s = a.samples as f64;
    let mut rows = Vec::new();
    let mut push = |family: &str, fixed: f64, free: f64, ab: (f64, f64)| {
        rows.push(vec![family.to_string(), sig17(fixed), sig17(free), sig17(ab.0), sig17(ab.1)]);
    };
    for i in 1..=9 {
        let lambda = 0.05 * i as f64;
        for j in 0..a.samples {
            let k = (j as f64 + 0.5) / s;
            let ctx = EllipticContext::new(k, tol)?;
            push("lambda", lambda, k, endpoint_raw(&ctx, lambda)?);
        }
    }
    for &k in &[0.1, 0.3, 0.5, FRAC_1_SQRT_2, 0.9, 0.99] {
        let ctx = EllipticContext::new(k, tol)?;
        for j in 0..a.samples {
            let lambda = 0.5 * (j as f64 + 0.5) / s;
            push("k", k, lambda, endpoint_raw(&ctx, lambda)?);
        }
    }
    let text = csv_text(&["family", "fixed_value", "k_or_lambda", "alpha", "beta"], &rows)?;
    Ok(Outcome {
        payload: Payload::Text(text),
        certified: true,
        warnings: Vec::new(),
    })
}

fn plot(a: &PlotArgs, tol: f64) -> Result<Outcome, Failure> {
    let (cfg, warnings) = config(&a.tuple, tol)?;
    let window = Window::around(&cfg);
    let tr = trace_arc(&cfg, a.samples)?;
    let report = survey_extremals(&cfg, &tr)?;
    let lines = trace_real_preimage(&cfg, window, a.resolution)?;
    let text = svg::render(window, &tr.z_points, &lines, &report);
    Ok(Outcome {
        payload: Payload::Text(text),
        certified: report.certified,
        warnings,
    })
}
