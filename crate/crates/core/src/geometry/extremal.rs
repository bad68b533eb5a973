//! Points of the inverse image where `T_n = +-1`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::arc::{solve_phase, ArcTrace};
use super::IntersectionKind;
use crate::error::{Error, Result};
use crate::pell::TnTupleConfig;
use crate::roots::bisect;

/// Extremal points closer than this are counted once.
pub const EXTREMAL_MERGE_RADIUS: f64 = 1e-7;
const INTERVAL_SAMPLES: usize = 1024;
const VALUE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalReport {
    /// Extremal points in `[-1, 1]`, increasing.
    pub on_interval: Vec<f64>,
    pub interval_values: Vec<f64>,
    /// Extremal points on the arc off the interval, in trace order.
    pub on_arc: Vec<Complex64>,
    pub arc_values: Vec<f64>,
    pub interval_count: usize,
    pub arc_count: usize,
    pub total: usize,
    /// `n + 1` when `T_n(z*) = +-1`, `n + 2` otherwise.
    pub expected_total: usize,
    /// `max |T_n(p)^2 - 1|` over the reported points.
    pub max_defect: f64,
    pub certified: bool,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn merge_reals(mut xs: Vec<f64>) -> Vec<f64> {
    xs.sort_by(|a, b| a.total_cmp(b));
    let mut out: Vec<f64> = Vec::with_capacity(xs.len());
    for x in xs {
        match out.last() {
            Some(&l) if (x - l).abs() <= EXTREMAL_MERGE_RADIUS => {}
            _ => out.push(x),
        }
    }
    out
}

/// Points of `[-1, 1]` where `n phi = offset (mod pi)`, from sign changes of
/// `sin(n phi - offset)` along a parametrization of the interval.
fn interval_level_points(cfg: &TnTupleConfig, offset: f64) -> Result<Vec<f64>> {
    let n = cfg.n() as f64;
    let mut pts = Vec::new();
    let (map, f): (&dyn Fn(f64) -> Result<f64>, &dyn Fn(f64) -> Result<f64>);
    let kp = cfg.context().k_prime();
    let bkp = cfg.context().quarter_period_prime();
    let rot = c(0.0, -offset).exp();
    let half_map = |x: f64| Ok(x);
    let half_f = |x: f64| {
        let g = 1.0 - 2.0 * kp * kp * (1.0 - x * x);
        Ok((0.5 * n * g.clamp(-1.0, 1.0).acos() - offset).sin())
    };
    // u = iy with y in [0, K'] covers [-1, 1] once
    let gen_map = |y: f64| Ok(cfg.z_of_u(c(0.0, y))?.re);
    let gen_f = |y: f64| Ok((cfg.omega(c(0.0, y))?.powi(cfg.n() as i32) * rot).im);
    let (lo, hi) = if cfg.is_half_turn() {
        map = &half_map;
        f = &half_f;
        (-1.0, 1.0)
    } else {
        map = &gen_map;
        f = &gen_f;
        (0.0, bkp)
    };
    let step = (hi - lo) / INTERVAL_SAMPLES as f64;
    let mut prev = f(lo)?;
    for j in 1..=INTERVAL_SAMPLES {
        let t = lo + step * j as f64;
        let cur = f(t)?;
        if cur == 0.0 {
            pts.push(map(t)?);
        } else if prev != 0.0 && prev.signum() != cur.signum() {
            let root = bisect(f, t - step, t, 1e-12)?;
            pts.push(map(root)?);
        }
        prev = cur;
    }
    Ok(pts)
}

/// Points of the arc where the traced phase crosses `(offset + nu pi) / n`.
fn arc_level_points(cfg: &TnTupleConfig, trace: &ArcTrace, offset: f64) -> Result<Vec<Complex64>> {
    let n = cfg.n() as f64;
    let mut pts = Vec::new();
    for j in 0..trace.phases.len().saturating_sub(1) {
        let (p0, p1) = (trace.phases[j], trace.phases[j + 1]);
        let (lo, hi) = if p0 <= p1 { (p0, p1) } else { (p1, p0) };
        let first = ((n * lo - offset) / PI).ceil() as i64;
        let last = ((n * hi - offset) / PI).floor() as i64;
        for nu in first..=last {
            let target = (offset + nu as f64 * PI) / n;
            let z = if cfg.is_half_turn() {
                // T = cos(n phi) with 2 phi = arccos(1 - 2k'^2 (1 + y^2))
                let kp = cfg.context().k_prime();
                let y2 = (1.0 - (2.0 * target).cos()) / (2.0 * kp * kp) - 1.0;
                let y = y2.max(0.0).sqrt();
                let sign = (trace.z_points[j].im + trace.z_points[j + 1].im).signum();
                c(0.0, sign * y)
            } else {
                let t = if hi > lo { (target - p0) / (p1 - p0) } else { 0.0 };
                let guess = trace.u_points[j] + (trace.u_points[j + 1] - trace.u_points[j]) * t;
                let u = solve_phase(cfg, guess, target).ok_or(Error::Convergence("level point on the arc"))?;
                cfg.z_of_u(u)?
            };
            pts.push(z);
        }
    }
    Ok(pts)
}

/// Arc points not already represented on the interval or earlier in the list.
fn merge_arc(on_interval: &[f64], candidates: Vec<Complex64>) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::new();
    for z in candidates {
        let near_interval =
            z.im.abs() <= EXTREMAL_MERGE_RADIUS && on_interval.iter().any(|&x| (z - x).norm() <= EXTREMAL_MERGE_RADIUS);
        let seen = out.iter().any(|&p| (p - z).norm() <= EXTREMAL_MERGE_RADIUS);
        if !near_interval && !seen {
            out.push(z);
        }
    }
    out
}

/// Zeros of `T_n` on the interval and on the arc, where `n phi = pi/2 (mod pi)`.
pub(crate) fn level_zeros(cfg: &TnTupleConfig, trace: &ArcTrace) -> Result<(Vec<f64>, Vec<Complex64>)> {
    let on_interval = merge_reals(interval_level_points(cfg, 0.5 * PI)?);
    let on_arc = merge_arc(&on_interval, arc_level_points(cfg, trace, 0.5 * PI)?);
    Ok((on_interval, on_arc))
}

/// Enumerates extremal points and records whether the counts are consistent;
/// never fails on a count mismatch.
pub fn survey_extremals(cfg: &TnTupleConfig, trace: &ArcTrace) -> Result<ExtremalReport> {
    let n = cfg.n() as usize;
    let m = cfg.m() as usize;
    let z_star = cfg.z_star();
    let t_star = cfg.tn_eval(c(z_star, 0.0))?;
    // a critical point inside (-1, 1) cannot carry the value +-1, so only the
    // endpoint case counts even when T(z*) rounds to +-1 nearby
    let star_is_extremal =
        (t_star * t_star - 1.0).norm() < VALUE_TOL && (z_star.abs() - 1.0).abs() <= EXTREMAL_MERGE_RADIUS;

    let mut raw = interval_level_points(cfg, 0.0)?;
    raw.push(-1.0);
    raw.push(1.0);
    if star_is_extremal {
        raw.push(z_star.clamp(-1.0, 1.0));
    }
    let on_interval = merge_reals(raw);

    let mut candidates = vec![cfg.a4()];
    candidates.extend(arc_level_points(cfg, trace, 0.0)?);
    candidates.push(cfg.a3());
    let on_arc = merge_arc(&on_interval, candidates);

    let value = |z: Complex64| cfg.tn_eval(z);
    let mut max_defect: f64 = 0.0;
    let mut interval_values = Vec::with_capacity(on_interval.len());
    for &x in &on_interval {
        let t = value(c(x, 0.0))?;
        max_defect = max_defect.max((t * t - 1.0).norm());
        interval_values.push(t.re.signum());
    }
    let mut arc_values = Vec::with_capacity(on_arc.len());
    for &z in &on_arc {
        let t = value(z)?;
        max_defect = max_defect.max((t * t - 1.0).norm());
        arc_values.push(t.re.signum());
    }

    let interval_count = on_interval.len();
    let arc_count = on_arc.len();
    let total = interval_count + arc_count;
    let expected_total = if star_is_extremal { n + 1 } else { n + 2 };
    let floor = n + 1 - 2 * m;
    let counts_ok = match trace.kind {
        IntersectionKind::Disjoint => interval_count == floor && arc_count == 2 * m + 1,
        _ => interval_count >= floor,
    };
    let certified = counts_ok && total == expected_total && max_defect < VALUE_TOL;
    Ok(ExtremalReport {
        on_interval,
        interval_values,
        on_arc,
        arc_values,
        interval_count,
        arc_count,
        total,
        expected_total,
        max_defect,
        certified,
    })
}

/// Enumerates extremal points and certifies the counts.
pub fn extremal_points(cfg: &TnTupleConfig, trace: &ArcTrace) -> Result<ExtremalReport> {
    let report = survey_extremals(cfg, trace)?;
    if !report.certified {
        return Err(Error::Certification {
            what: "extremal point count",
            measured: report.total as f64,
            threshold: report.expected_total as f64,
        });
    }
    Ok(report)
}
