//! The endpoint map `(k, lambda) -> alpha + i beta` and its inverse.
//!
//! `alpha = cn / dn^2` and `beta = k k' sn^2 / dn^2`, all evaluated at `2 lambda K`.
//! The map is a bijection from `(0, 1) x (0, 1/2)` onto the open first quadrant.

#[allow(unused_imports)]
use num_traits::Float;

use crate::elliptic::{incomplete_first_kind, EllipticContext};
use crate::error::{Error, Result};

/// Tolerance on `alpha^2 + beta^2 - 1` below which an endpoint counts as on the circle.
pub const CIRCLE_TOL: f64 = 1e-12;

/// A modulus together with a rotation number in the open interval `(0, 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPoint {
    k: f64,
    lambda: f64,
}

impl ParamPoint {
    pub fn new(k: f64, lambda: f64) -> Result<Self> {
        if !(k > 0.0 && k < 1.0) {
            return Err(Error::Domain("modulus must lie in (0, 1)"));
        }
        if !(lambda > 0.0 && lambda < 0.5) {
            return Err(Error::Domain("lambda must lie in (0, 1/2)"));
        }
        Ok(ParamPoint { k, lambda })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// Upper endpoint `a3 = alpha + i beta` of the arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Endpoint {
    alpha: f64,
    beta: f64,
}

impl Endpoint {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) || !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::Domain("endpoint must lie in the open first quadrant"));
        }
        Ok(Endpoint { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Position of an endpoint relative to the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircleSide {
    Inside,
    On,
    Outside,
}

/// Rational approximation of an endpoint by a tuple with `lambda = m / n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityResult {
    pub n: u32,
    pub m: u32,
    pub k: f64,
    pub lambda: f64,
    pub alpha_star: f64,
    pub beta_star: f64,
    pub distance: f64,
    pub bound: f64,
    pub a_const: f64,
}

/// `(alpha, beta)` for any `lambda`, without the quadrant restriction.
///
/// For `lambda` in `(1/2, 1)` this yields the endpoint mirrored in the imaginary axis.
pub fn endpoint_raw(ctx: &EllipticContext, lambda: f64) -> Result<(f64, f64)> {
    let (sn, cn, dn) = ctx.jacobi_real(2.0 * lambda * ctx.quarter_period())?;
    let dn2 = dn * dn;
    Ok((cn / dn2, ctx.k() * ctx.k_prime() * sn * sn / dn2))
}

pub fn forward_with(ctx: &EllipticContext, lambda: f64) -> Result<Endpoint> {
    ParamPoint::new(ctx.k(), lambda)?;
    let (alpha, beta) = endpoint_raw(ctx, lambda)?;
    Endpoint::new(alpha, beta)
}

pub fn forward(p: ParamPoint) -> Result<Endpoint> {
    let ctx = EllipticContext::with_default_tol(p.k)?;
    forward_with(&ctx, p.lambda)
}

/// Recovers `(k, lambda)` from an endpoint in closed form.
pub fn inverse(e: Endpoint) -> Result<ParamPoint> {
    let (a, b) = (e.alpha, e.beta);
    let (a2, b2) = (a * a, b * b);
    // y = 1 - dn^2 is the positive root of a^2 y^2 + (1 + b^2 - a^2) y - b^2 = 0
    let p = 1.0 + b2 - a2;
    let disc = p * p + 4.0 * a2 * b2;
    if !(disc >= 0.0) {
        return Err(Error::Domain("negative discriminant in the endpoint inversion"));
    }
    let y = 2.0 * b2 / (p + disc.sqrt()).max(f64::MIN_POSITIVE);
    let dn2 = 1.0 - y;
    // 1 - a^2 dn^4 written without cancellation
    let denom = (1.0 - a2) + a2 * y * (2.0 - y);
    let k2 = y / denom;
    if !(k2 > 0.0 && k2 < 1.0) {
        return Err(Error::Domain("endpoint maps outside the modulus range"));
    }
    let k = k2.sqrt();
    let cn = (a * dn2).clamp(-1.0, 1.0);
    let sn = (y.sqrt() / k).clamp(-1.0, 1.0);
    let ctx = EllipticContext::with_default_tol(k)?;
    let arg = incomplete_first_kind(sn, cn, k)?;
    let lambda = arg / (2.0 * ctx.quarter_period());
    ParamPoint::new(k, lambda)
}

pub fn circle_side(e: Endpoint) -> CircleSide {
    let r = e.alpha * e.alpha + e.beta * e.beta - 1.0;
    if r.abs() <= CIRCLE_TOL {
        CircleSide::On
    } else if r < 0.0 {
        CircleSide::Inside
    } else {
        CircleSide::Outside
    }
}

/// Lipschitz constant `2K/k'^3 + 4kK/k'^2` of the map in `lambda`.
pub fn density_constant(ctx: &EllipticContext) -> f64 {
    let (k, kp, big_k) = (ctx.k(), ctx.k_prime(), ctx.quarter_period());
    2.0 * big_k / (kp * kp * kp) + 4.0 * k * big_k / (kp * kp)
}

/// Nearest endpoint with rational rotation number of denominator `n`.
pub fn nearest_tuple(e: Endpoint, n: u32) -> Result<DensityResult> {
    if n < 2 {
        return Err(Error::Domain("denominator must be at least 2"));
    }
    let p = inverse(e)?;
    let ctx = EllipticContext::with_default_tol(p.k)?;
    let m = libm::rint(p.lambda * n as f64) as u32;
    if m == 0 || 2 * m == n {
        return Err(Error::Degenerate { m, n });
    }
    let star = forward_with(&ctx, m as f64 / n as f64)?;
    let a_const = density_constant(&ctx);
    let distance = libm::hypot(e.alpha - star.alpha, e.beta - star.beta);
    Ok(DensityResult {
        n,
        m,
        k: p.k,
        lambda: p.lambda,
        alpha_star: star.alpha,
        beta_star: star.beta,
        distance,
        bound: a_const / n as f64,
        a_const,
    })
}
