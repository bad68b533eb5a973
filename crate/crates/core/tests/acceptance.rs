//! Acceptance gate: one line per criterion, non-zero exit if any fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pellarcs_core::cheb;
use pellarcs_core::geometry::{survey_extremals, trace_arc};
use pellarcs_core::param::{forward, inverse, nearest_tuple, ParamPoint};
use pellarcs_core::pell::{build_config, k_star, recover_pell, z_star_forms, TnTupleConfig};
use pellarcs_core::{EllipticContext, Error};

type Outcome = Result<String, String>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn grid_configs() -> Vec<(u32, u32, f64)> {
    let mut out = Vec::new();
    for n in 3..=12u32 {
        for m in 1..n.div_ceil(2) {
            for &k in &[0.3, 0.7, 0.99] {
                out.push((n, m, k));
            }
        }
    }
    out
}

fn cfg(n: u32, m: u32, k: f64) -> Result<TnTupleConfig, String> {
    build_config(n, m, k, 1e-12).map_err(|e| format!("({n}, {m}, {k}): {e}"))
}

fn pell_identity() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (n, m, k) in grid_configs() {
        let pair = recover_pell(&cfg(n, m, k)?).map_err(|e| format!("({n}, {m}, {k}): {e}"))?;
        if pair.cert_points != 512 {
            return Err(format!("({n}, {m}, {k}): {} certification points", pair.cert_points));
        }
        if !(pair.residual < 1e-8) {
            return Err(format!("({n}, {m}, {k}): residual {:e}", pair.residual));
        }
        worst = worst.max(pair.residual);
        count += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 10.0 {
        return Err(format!("took {secs:.2} s"));
    }
    Ok(format!("{count} configs, max residual {worst:.2e}, {secs:.2} s"))
}

fn boundary_modulus() -> Outcome {
    let start = Instant::now();
    let k = k_star(0.25, 1e-12).map_err(|e| e.to_string())?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    if (k - 0.942_809).abs() > 1e-4 {
        return Err(format!("k* = {k}"));
    }
    if ms >= 50.0 {
        return Err(format!("bisection took {ms:.1} ms"));
    }
    Ok(format!("k*(1/4) = {k:.12}, {ms:.2} ms"))
}

fn extremal_counts() -> Outcome {
    let survey = |k: f64| {
        let cf = cfg(8, 2, k)?;
        let tr = trace_arc(&cf, 256).map_err(|e| e.to_string())?;
        survey_extremals(&cf, &tr).map_err(|e| e.to_string())
    };
    let disjoint = survey(0.99)?;
    if (disjoint.interval_count, disjoint.arc_count) != (5, 5) {
        return Err(format!("k = 0.99: counts ({}, {})", disjoint.interval_count, disjoint.arc_count));
    }
    // the tangent modulus 0.942809... to full precision
    let k_tan = k_star(0.25, 1e-12).map_err(|e| e.to_string())?;
    let tangent = survey(k_tan)?;
    if tangent.total != 9 {
        return Err(format!("k = {k_tan}: total {}", tangent.total));
    }
    let crossing = survey(0.7)?;
    if crossing.interval_count < 5 {
        return Err(format!("k = 0.7: interval count {}", crossing.interval_count));
    }
    Ok(format!(
        "(5, 5) at 0.99, total {} at k* = {k_tan:.9}, interval {} at 0.7",
        tangent.total, crossing.interval_count
    ))
}

fn circle_dichotomy() -> Outcome {
    let mut checked = 0;
    for i in 0..50 {
        let k = (i as f64 + 0.5) / 50.0;
        for j in 0..20 {
            let lambda = 0.5 * (j as f64 + 0.5) / 20.0;
            let e = forward(ParamPoint::new(k, lambda).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let r = e.alpha() * e.alpha() + e.beta() * e.beta() - 1.0;
            if r.signum() != (k - FRAC_1_SQRT_2).signum() || r == 0.0 {
                return Err(format!("k = {k}, lambda = {lambda}: {r:e}"));
            }
            checked += 1;
        }
    }
    let mut worst: f64 = 0.0;
    for j in 0..20 {
        let lambda = 0.5 * (j as f64 + 0.5) / 20.0;
        let e = forward(ParamPoint::new(FRAC_1_SQRT_2, lambda).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        worst = worst.max((e.alpha() * e.alpha() + e.beta() * e.beta() - 1.0).abs());
    }
    if worst >= 1e-9 {
        return Err(format!("on-circle defect {worst:e}"));
    }
    Ok(format!("{checked} grid points, on-circle defect {worst:.1e}"))
}

fn round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut to_param: f64 = 0.0;
    let mut to_endpoint: f64 = 0.0;
    for _ in 0..500 {
        let p = ParamPoint::new(rng.gen_range(0.05..0.95), rng.gen_range(0.02..0.48)).map_err(|e| e.to_string())?;
        let back = inverse(forward(p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        to_param = to_param.max((back.k() - p.k()).abs().max((back.lambda() - p.lambda()).abs()));

        let q = ParamPoint::new(rng.gen_range(0.05..0.95), rng.gen_range(0.02..0.48)).map_err(|e| e.to_string())?;
        let e = forward(q).map_err(|e| e.to_string())?;
        let again = forward(inverse(e).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        to_endpoint = to_endpoint.max((again.alpha() - e.alpha()).abs().max((again.beta() - e.beta()).abs()));
    }
    if to_param >= 1e-8 || to_endpoint >= 1e-8 {
        return Err(format!("errors {to_param:e}, {to_endpoint:e}"));
    }
    Ok(format!("max errors {to_param:.1e} (parameters), {to_endpoint:.1e} (endpoints)"))
}

fn crossing_point() -> Outcome {
    let lambdas = [0.1, 0.2, 0.25, 0.3, 0.4];
    let mut worst_gap: f64 = 0.0;
    for &lambda in &lambdas {
        let mut prev = f64::NEG_INFINITY;
        for i in 0..100 {
            let k = 0.01 + 0.98 * i as f64 / 99.0;
            let ctx = EllipticContext::new(k, 1e-12).map_err(|e| e.to_string())?;
            let (z2, z1) = z_star_forms(&ctx, lambda).map_err(|e| e.to_string())?;
            let gap = (z2 - z1).abs();
            if gap >= 1e-10 {
                return Err(format!("k = {k}, lambda = {lambda}: formulas differ by {gap:e}"));
            }
            worst_gap = worst_gap.max(gap);
            if z2 <= prev {
                return Err(format!("not increasing at k = {k}, lambda = {lambda}"));
            }
            prev = z2;
        }
        let ctx = EllipticContext::new(1e-6, 1e-12).map_err(|e| e.to_string())?;
        let small = z_star_forms(&ctx, lambda).map_err(|e| e.to_string())?.0;
        if (small - (lambda * PI).cos()).abs() > 1e-5 {
            return Err(format!("small modulus limit at lambda = {lambda}: {small}"));
        }
    }
    let k = 1.0 - 1e-8;
    let ctx = EllipticContext::new(k, 1e-12).map_err(|e| e.to_string())?;
    let ratio = |lambda: f64| -> Result<f64, String> {
        let z = z_star_forms(&ctx, lambda).map_err(|e| e.to_string())?.0;
        Ok(z / ((0.5 - lambda) * (4.0 / ctx.k_prime()).powf(2.0 * lambda)) - 1.0)
    };
    // the k -> 1 asymptotic is not uniform in lambda; it is checked away from the ends
    let mut worst_ratio: f64 = 0.0;
    for &lambda in &[0.2, 0.25, 0.3, 0.4] {
        let dev = ratio(lambda)?.abs();
        if dev > 0.02 {
            return Err(format!("asymptotic ratio off by {:.2}% at lambda = {lambda}", 100.0 * dev));
        }
        worst_ratio = worst_ratio.max(dev);
    }
    let edge = ratio(0.1)?.abs();
    Ok(format!(
        "formula gap {worst_gap:.1e}, monotone on 5 x 100, asymptotic deviation {:.3}% (lambda = 0.1: {:.2}%)",
        100.0 * worst_ratio,
        100.0 * edge
    ))
}

fn density_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut samples = 0;
    let mut degenerate = 0;
    let mut tightest: f64 = 0.0;
    while samples < 200 {
        let p = ParamPoint::new(rng.gen_range(0.05..0.95), rng.gen_range(0.02..0.48)).map_err(|e| e.to_string())?;
        let n = rng.gen_range(2..=64u32);
        let e = forward(p).map_err(|e| e.to_string())?;
        match nearest_tuple(e, n) {
            Ok(d) => {
                if d.distance > d.bound {
                    return Err(format!("k = {}, lambda = {}, n = {n}: {} > {}", p.k(), p.lambda(), d.distance, d.bound));
                }
                tightest = tightest.max(d.distance / d.bound);
                samples += 1;
            }
            Err(Error::Degenerate { .. }) => degenerate += 1,
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(format!("200 samples, 0 violations, max distance/bound {tightest:.3} ({degenerate} degenerate draws skipped)"))
}

fn zeta_inequality() -> Outcome {
    let moduli = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.99];
    for &k in &moduli {
        let ctx = EllipticContext::new(k, 1e-12).map_err(|e| e.to_string())?;
        let kp2 = ctx.k_prime() * ctx.k_prime();
        let big_k = ctx.quarter_period();
        for j in 0..200 {
            let u = if j == 199 { big_k } else { big_k * j as f64 / 199.0 };
            let (sn, cn, dn) = ctx.jacobi_real(u).map_err(|e| e.to_string())?;
            let z = ctx.zn(u).map_err(|e| e.to_string())?;
            let base = k * k / (1.0 + kp2) * sn * cn / dn;
            let (lo, hi) = (kp2 * base, base);
            let edge = j == 0 || j == 199;
            if edge {
                if (z - lo).abs() > 1e-12 || (hi - z).abs() > 1e-12 {
                    return Err(format!("k = {k}, u = {u}: no equality at the end point"));
                }
            } else if !(z - lo > 1e-12 && hi - z > 1e-12) {
                return Err(format!("k = {k}, u = {u}: {lo} <= {z} <= {hi} not strict"));
            }
        }
    }
    Ok("200 x 9 grid, strict inside, equality at 0 and K".into())
}

fn special_values() -> Outcome {
    let cf = cfg(8, 2, 0.7)?;
    let ctx = cf.context();
    let (bk, bkp) = (ctx.quarter_period(), ctx.quarter_period_prime());
    let phase = |t: f64| c(0.0, t).exp();
    let checks: [(&str, Result<Complex64, Error>, Complex64); 7] = [
        ("Omega(0)", cf.omega(c(0.0, 0.0)), c(-1.0, 0.0)),
        ("Omega(iK')", cf.omega(c(0.0, bkp)), phase(4.0 * PI / 8.0)),
        ("Omega(K/2 + iK'/2)", cf.omega(c(0.5 * bk, 0.5 * bkp)), phase(2.0 * PI / 8.0)),
        ("Omega(K/2 - iK'/2)", cf.omega(c(0.5 * bk, -0.5 * bkp)), phase(-2.0 * PI / 8.0)),
        ("z(0)", cf.z_of_u(c(0.0, 0.0)), c(-1.0, 0.0)),
        ("z(iK')", cf.z_of_u(c(0.0, bkp)), c(1.0, 0.0)),
        ("z(K/2 - iK'/2)", cf.z_of_u(c(0.5 * bk, -0.5 * bkp)), cf.a3()),
    ];
    let mut worst: f64 = 0.0;
    for (name, got, want) in checks {
        let got = got.map_err(|e| format!("{name}: {e}"))?;
        let err = (got - want).norm();
        if err >= 1e-10 {
            return Err(format!("{name} = {got}, expected {want}"));
        }
        worst = worst.max(err);
    }
    Ok(format!("7 values, max error {worst:.1e}"))
}

fn derivative_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let h = 1e-6;
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (n, m, k) in grid_configs() {
        let cf = cfg(n, m, k)?;
        let pair = recover_pell(&cf).map_err(|e| e.to_string())?;
        let rhs = |z: Complex64| (z - cf.z_star()) * pair.u(z) * n as f64;
        let fd = |z: Complex64| -> Result<Complex64, String> {
            let plus = cf.tn_eval(z + h).map_err(|e| e.to_string())?;
            let minus = cf.tn_eval(z - h).map_err(|e| e.to_string())?;
            Ok((plus - minus) / (2.0 * h))
        };
        let mut sign = None;
        for _ in 0..50 {
            let z = c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.0..1.0));
            let (d, r) = (fd(z)?, rhs(z));
            let s = *sign.get_or_insert(if (d - r).norm() <= (d + r).norm() { 1.0 } else { -1.0 });
            let rel = (d - r * s).norm() / r.norm();
            if !(rel < 1e-5) {
                return Err(format!("({n}, {m}, {k}) at z = {z}: relative error {rel:e}"));
            }
            worst = worst.max(rel);
            count += 1;
        }
    }
    Ok(format!("{count} points, max relative error {worst:.1e}"))
}

fn half_turn() -> Outcome {
    let cf = cfg(6, 3, 0.6)?;
    let pair = recover_pell(&cf).map_err(|e| e.to_string())?;
    let kp2 = cf.context().k_prime().powi(2);
    // 2 k'^2 (z^2 - 1) + 1 = k'^2 T_2 + 1 - k'^2
    let g = [1.0 - kp2, 0.0, kp2];
    let g3 = cheb::mul(&cheb::mul(&g, &g), &g);
    let mut want: Vec<f64> = g3.iter().map(|v| 4.0 * v).collect();
    for (w, v) in want.iter_mut().zip(g.iter()) {
        *w -= 3.0 * v;
    }
    if pair.t_coeffs.len() != want.len() {
        return Err(format!("{} coefficients", pair.t_coeffs.len()));
    }
    let worst = pair
        .t_coeffs
        .iter()
        .zip(want.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if worst >= 1e-9 {
        return Err(format!("coefficient error {worst:e}"));
    }
    Ok(format!("max coefficient error {worst:.1e}"))
}

fn elliptic_core() -> Outcome {
    let mut legendre: f64 = 0.0;
    for &k in &[1e-6, 0.1, 0.3, FRAC_1_SQRT_2, 0.9, 0.99, 0.999_999] {
        let ctx = EllipticContext::new(k, 1e-12).map_err(|e| e.to_string())?;
        legendre = legendre.max(ctx.legendre_defect());
    }
    if legendre >= 1e-12 {
        return Err(format!("Legendre defect {legendre:e}"));
    }
    let ctx = EllipticContext::new(FRAC_1_SQRT_2, 1e-12).map_err(|e| e.to_string())?;
    let big_k = ctx.quarter_period();
    if (big_k - 1.854_074_677_3).abs() > 1e-9 {
        return Err(format!("K(1/sqrt 2) = {big_k}"));
    }
    let mut ident: f64 = 0.0;
    for &k in &[0.3, FRAC_1_SQRT_2, 0.95] {
        let ctx = EllipticContext::new(k, 1e-12).map_err(|e| e.to_string())?;
        let (bk, bkp) = (ctx.quarter_period(), ctx.quarter_period_prime());
        for i in 0..=20 {
            for j in 0..20 {
                let u = c(bk * i as f64 / 20.0, bkp * j as f64 / 20.0);
                let v = ctx.jacobi(u).map_err(|e| e.to_string())?;
                let one = c(1.0, 0.0);
                let a = (v.sn * v.sn + v.cn * v.cn - one).norm();
                let b = (v.dn * v.dn + v.sn * v.sn * (k * k) - one).norm();
                ident = ident.max(a).max(b);
            }
        }
    }
    if ident >= 1e-11 {
        return Err(format!("identity defect {ident:e}"));
    }
    Ok(format!("Legendre {legendre:.1e}, K(1/sqrt 2) = {big_k:.12}, identities {ident:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("pell identity on the n <= 12 grid", pell_identity),
        ("boundary modulus at lambda = 1/4", boundary_modulus),
        ("extremal point counts", extremal_counts),
        ("unit circle dichotomy", circle_dichotomy),
        ("endpoint map round trip", round_trip),
        ("crossing point formulas and limits", crossing_point),
        ("rational approximation bound", density_bound),
        ("zeta inequality", zeta_inequality),
        ("special values of Omega and z", special_values),
        ("derivative identity", derivative_identity),
        ("lambda = 1/2 closed form", half_turn),
        ("elliptic core", elliptic_core),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{ms:.0} ms]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{ms:.0} ms]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
