//! Continuation of the arc `{ |Omega(u)| = 1 }` from `K/2 + iK'/2` to its mirror image.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::{classify, IntersectionKind};
use crate::error::{Error, Result};
use crate::pell::TnTupleConfig;
use crate::roots::bisect;

const NEWTON_TOL: f64 = 1e-14;
const MAX_SPLITS: u32 = 10;

/// Ordered samples of the arc in the `u`- and `z`-planes.
///
/// Starts at `a4 = z(K/2 + iK'/2)` and ends at `a3`. `phases[j]` is a continuous
/// branch of `arg Omega(u_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcTrace {
    pub u_points: Vec<Complex64>,
    pub z_points: Vec<Complex64>,
    pub phases: Vec<f64>,
    pub kind: IntersectionKind,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Solves `Omega(u) = exp(i phi)` by damped Newton from `guess`.
pub(crate) fn solve_phase(cfg: &TnTupleConfig, guess: Complex64, phi: f64) -> Option<Complex64> {
    let rot = c(0.0, -phi).exp();
    let mut u = guess;
    let (mut om, mut d) = cfg.omega_with_derivative(u).ok()?;
    let mut res = (om * rot - 1.0).norm();
    for _ in 0..50 {
        if res < NEWTON_TOL {
            return Some(u);
        }
        if d.norm() == 0.0 {
            return None;
        }
        let step = (om * rot - 1.0) / (d * rot);
        let mut damping = 1.0;
        let mut moved = false;
        for _ in 0..20 {
            let trial = u - step * damping;
            if let Ok((o, dd)) = cfg.omega_with_derivative(trial) {
                let r = (o * rot - 1.0).norm();
                if r < res {
                    u = trial;
                    om = o;
                    d = dd;
                    res = r;
                    moved = true;
                    break;
                }
            }
            damping *= 0.5;
        }
        if !moved {
            break;
        }
    }
    (res < 1e-11).then_some(u)
}

/// Lift of `arg Omega(u)` lying in `(reference - 2 pi, reference]`.
fn phase_below(cfg: &TnTupleConfig, u: Complex64, reference: f64) -> Result<f64> {
    let a = cfg.omega(u)?.arg();
    let turn = 2.0 * PI;
    let drop = (reference - a) - turn * ((reference - a) / turn).floor();
    Ok(reference - drop)
}

/// Point where the arc meets its symmetry line, with its phase.
fn arc_midpoint(cfg: &TnTupleConfig, kind: IntersectionKind, phi0: f64) -> Result<(Complex64, f64)> {
    let ctx = cfg.context();
    let (bk, bkp) = (ctx.quarter_period(), ctx.quarter_period_prime());
    match kind {
        IntersectionKind::Disjoint => {
            // real crossing between the pole lambda K and the saddle preimage of z*
            let lk = cfg.lambda() * bk;
            let u_star = cfg.u_of_z(c(cfg.z_star(), 0.0))?.re;
            let f = |x: f64| cfg.omega(c(x, 0.0)).map(|o| o.re - 1.0);
            let x = bisect(f, lk + 1e-9 * bk, u_star, 1e-15)?;
            Ok((c(x, 0.0), 0.0))
        }
        IntersectionKind::Tangent => Ok((c(bk, 0.0), 0.0)),
        IntersectionKind::Crossing => {
            let first = cfg.u_of_z(c(cfg.z_star(), 0.0))?;
            let second = c(bk, bkp) - first;
            let p1 = phase_below(cfg, first, phi0)?;
            let p2 = phase_below(cfg, second, phi0)?;
            if phi0 - p1 < PI {
                Ok((first, p1))
            } else {
                Ok((second, p2))
            }
        }
    }
}

/// Traces the arc with at least `npts` samples.
pub fn trace_arc(cfg: &TnTupleConfig, npts: usize) -> Result<ArcTrace> {
    if npts < 16 {
        return Err(Error::Domain("an arc trace needs at least 16 points"));
    }
    let kind = classify(cfg).kind;
    if cfg.is_half_turn() {
        return trace_segment(cfg, npts, kind);
    }
    let ctx = cfg.context();
    let (bk, bkp) = (ctx.quarter_period(), ctx.quarter_period_prime());
    let n = cfg.n() as f64;
    let phi0 = cfg.m() as f64 * PI / n;
    let u0 = c(0.5 * bk, 0.5 * bkp);
    let (u_mid, phi_mid) = arc_midpoint(cfg, kind, phi0)?;
    let saddle = kind != IntersectionKind::Disjoint;

    let half = npts.div_ceil(2);
    // path parameter s runs from 0 at u0 to 1 at the midpoint
    let phase_at = |s: f64| {
        let w = if saddle { (1.0 - s) * (1.0 - s) } else { 1.0 - s };
        phi_mid + (phi0 - phi_mid) * w
    };

    let mut us: Vec<Complex64> = Vec::with_capacity(half + 1);
    let mut phis: Vec<f64> = Vec::with_capacity(half + 1);
    us.push(u0);
    phis.push(phi0);
    let mut prev: Option<(Complex64, f64)> = None;
    for j in 1..half {
        let s = j as f64 / half as f64;
        let last = (us[j - 1], (j - 1) as f64 / half as f64);
        let u = continue_to(cfg, &phase_at, prev, last, s, 0).ok_or(Error::Continuation { last_good: j - 1 })?;
        prev = Some(last);
        us.push(u);
        phis.push(phase_at(s));
    }
    us.push(u_mid);
    phis.push(phi_mid);

    // second half by symmetry
    let (mirror_u, flip): (fn(Complex64, f64) -> Complex64, f64) = match kind {
        IntersectionKind::Crossing => (|u, axis| c(2.0 * axis - u.re, u.im), 1.0),
        _ => (|u, _| u.conj(), -1.0),
    };
    let axis = u_mid.re;
    for j in (0..half).rev() {
        us.push(mirror_u(us[j], axis));
        phis.push(flip * phis[j]);
    }

    let z_points = us.iter().map(|&u| cfg.z_of_u(u)).collect::<Result<Vec<_>>>()?;
    Ok(ArcTrace {
        u_points: us,
        z_points,
        phases: phis,
        kind,
    })
}

/// Corrector from the last accepted point `(u, s)` to parameter `target`,
/// halving the step when Newton fails or jumps branches.
fn continue_to<F: Fn(f64) -> f64>(
    cfg: &TnTupleConfig,
    phase_at: &F,
    prev: Option<(Complex64, f64)>,
    last: (Complex64, f64),
    target: f64,
    depth: u32,
) -> Option<Complex64> {
    let (u_last, s_last) = last;
    let guess = match prev {
        Some((u_prev, s_prev)) => u_last + (u_last - u_prev) * ((target - s_last) / (s_last - s_prev)),
        None => {
            let (om, d) = cfg.omega_with_derivative(u_last).ok()?;
            u_last + c(0.0, phase_at(target) - phase_at(s_last)) * om / d
        }
    };
    if let Some(u) = solve_phase(cfg, guess, phase_at(target)) {
        let hop = (u - u_last).norm();
        let predicted = (guess - u_last).norm();
        if (u - guess).norm() <= 0.5 * predicted.max(hop) + 1e-12 {
            return Some(u);
        }
    }
    if depth >= MAX_SPLITS {
        return None;
    }
    let s_mid = 0.5 * (s_last + target);
    let mid = continue_to(cfg, phase_at, prev, last, s_mid, depth + 1)?;
    continue_to(cfg, phase_at, Some(last), (mid, s_mid), target, depth + 1)
}

/// The `lambda = 1/2` arc is the segment `[a4, a3]` of the imaginary axis.
fn trace_segment(cfg: &TnTupleConfig, npts: usize, kind: IntersectionKind) -> Result<ArcTrace> {
    let ctx = cfg.context();
    let bkp = ctx.quarter_period_prime();
    let kp = ctx.k_prime();
    let top = cfg.a3().im;
    let half = npts.div_ceil(2);
    let count = 2 * half + 1;
    let mut u_points = Vec::with_capacity(count);
    let mut z_points = Vec::with_capacity(count);
    let mut phases = Vec::with_capacity(count);
    for j in 0..count {
        let y = top * (j as f64 / half as f64 - 1.0);
        let z = c(0.0, y);
        let g = 1.0 - 2.0 * kp * kp * (1.0 + y * y);
        // z = 0 is the image of the cn pole at 2u = iK'
        let u = if j == half { c(0.0, 0.5 * bkp) } else { cfg.u_of_z(z)? };
        u_points.push(u);
        z_points.push(z);
        phases.push(0.5 * g.clamp(-1.0, 1.0).acos());
    }
    Ok(ArcTrace {
        u_points,
        z_points,
        phases,
        kind,
    })
}
