//! Problem instances `(n, m, k)` and the polynomial pair solving
//! `T_n^2 - h U_{n-2}^2 = 1`.
//!
//! With `lambda = m/n`, `T_n(z(u)) = (Omega^n(u) + Omega^-n(u)) / 2`, where
//!
//! ```text
//! Omega(u) = H(u - lK) Theta1(u - lK) / (H(u + lK) Theta1(u + lK))
//! z(u)     = (cn(2u) c - 1) / (cn(2u) - c),        c = cn(2 lambda K)
//! ```
//!
//! `z` is an even elliptic function of order two with periods `2K` and `K + iK'`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::cheb;
use crate::elliptic::{EllipticContext, MODULUS_MAX, MODULUS_MIN};
use crate::error::{Error, Result};
use crate::param;
use crate::roots::bisect;

const POLE_GUARD: f64 = 1e-10;
const Z_STAR_AGREEMENT: f64 = 1e-10;
/// Relative Pell residual accepted by [`recover_pell`].
pub const PELL_TOL: f64 = 1e-8;
/// Points of the interval and the arc used to certify a [`PellPair`].
pub const CERT_GRID: usize = 512;
/// Requested arc samples; the trace returns one more.
const CERT_POINTS: usize = 256;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Informational remarks attached to a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Note {
    /// `m` and `n` share the factor `gcd`; the tuple is still valid.
    SharedFactor { gcd: u32 },
    /// `m = n/2`; evaluated through `T_{n/2}(2k'^2 (z^2 - 1) + 1)`.
    HalfTurn,
}

impl fmt::Display for Note {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Note::SharedFactor { gcd } => write!(f, "gcd(m, n) = {gcd} > 1"),
            Note::HalfTurn => write!(f, "lambda = 1/2 uses the closed-form composition"),
        }
    }
}

/// One instance: degree `n`, rotation `lambda = m/n`, modulus `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TnTupleConfig {
    n: u32,
    m: u32,
    lambda: f64,
    ctx: EllipticContext,
    c: f64,
    a3: Complex64,
    z_star: f64,
    z_star_alt: f64,
    notes: Vec<Note>,
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Builds and cross-checks a configuration.
///
/// `m = n/2` is accepted for even `n` and routed to the closed-form path.
pub fn build_config(n: u32, m: u32, k: f64, tol: f64) -> Result<TnTupleConfig> {
    if n < 2 {
        return Err(Error::Domain("degree n must be at least 2"));
    }
    if m == 0 || 2 * m > n {
        return Err(Error::Domain("m must satisfy 0 < m <= n/2"));
    }
    let ctx = EllipticContext::new(k, tol)?;
    let lambda = m as f64 / n as f64;
    let mut notes = Vec::new();
    let g = gcd(m, n);
    if g > 1 && 2 * m != n {
        notes.push(Note::SharedFactor { gcd: g });
    }
    let (c, a3, z_star, z_star_alt) = if 2 * m == n {
        notes.push(Note::HalfTurn);
        (0.0, Complex64::new(0.0, k / ctx.k_prime()), 0.0, 0.0)
    } else {
        let (sn, cn, dn) = ctx.jacobi_real(2.0 * lambda * ctx.quarter_period())?;
        let e = param::forward_with(&ctx, lambda)?;
        let (zs, zs_alt) = z_star_forms_at(&ctx, lambda, sn, cn, dn)?;
        (cn, Complex64::new(e.alpha(), e.beta()), zs, zs_alt)
    };
    Ok(TnTupleConfig {
        n,
        m,
        lambda,
        ctx,
        c,
        a3,
        z_star,
        z_star_alt,
        notes,
    })
}

impl TnTupleConfig {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn k(&self) -> f64 {
        self.ctx.k()
    }

    pub fn context(&self) -> &EllipticContext {
        &self.ctx
    }

    /// `cn(2 lambda K)`, the value of `z` at the half-periods `+-iK'/2`.
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Upper arc endpoint `alpha + i beta`.
    pub fn a3(&self) -> Complex64 {
        self.a3
    }

    pub fn a4(&self) -> Complex64 {
        self.a3.conj()
    }

    /// Zero of `T_n'` outside the zeros of `U_{n-2}`.
    pub fn z_star(&self) -> f64 {
        self.z_star
    }

    /// `z*` from the second, independent formula.
    pub fn z_star_alt(&self) -> f64 {
        self.z_star_alt
    }

    pub fn notes(&self) -> &[Note] {
        &self.notes
    }

    /// True for `m = n/2`.
    pub fn is_half_turn(&self) -> bool {
        2 * self.m == self.n
    }

    /// Monic quartic `h(z) = (z^2 - 1)(z - a3)(z - a4)`.
    pub fn h(&self, z: Complex64) -> Complex64 {
        (z * z - 1.0) * (z - self.a3) * (z - self.a4())
    }

    /// Distance from `d` to the lattice spanned by `2K` and `K + iK'`.
    fn lattice_distance(&self, d: Complex64) -> f64 {
        let (bk, bkp) = (self.ctx.quarter_period(), self.ctx.quarter_period_prime());
        let b0 = (d.im / bkp).round();
        let mut best = f64::INFINITY;
        for b in [b0 - 1.0, b0, b0 + 1.0] {
            let r = d - c(bk, bkp) * b;
            let a = (r.re / (2.0 * bk)).round();
            for aa in [a - 1.0, a, a + 1.0] {
                best = best.min((r - 2.0 * bk * aa).norm());
            }
        }
        best
    }

    fn check_half_turn(&self) -> Result<()> {
        if self.is_half_turn() {
            Err(Error::Domain("the theta quotient is not used when lambda = 1/2"))
        } else {
            Ok(())
        }
    }

    /// `Omega(u)` together with its derivative.
    pub fn omega_with_derivative(&self, u: Complex64) -> Result<(Complex64, Complex64)> {
        self.check_half_turn()?;
        let lk = self.lambda * self.ctx.quarter_period();
        if self.lattice_distance(u + lk) < POLE_GUARD {
            return Err(Error::Pole("Omega has a pole at -lambda K"));
        }
        let minus = self.ctx.thetas(u - lk)?;
        let plus = self.ctx.thetas(u + lk)?;
        let num = minus.h * minus.theta1;
        let den = plus.h * plus.theta1;
        let om = num / den;
        // logarithmic derivative, written without dividing by a vanishing numerator
        let dnum = minus.dh * minus.theta1 + minus.h * minus.dtheta1;
        let dden = plus.dh * plus.theta1 + plus.h * plus.dtheta1;
        let d = (dnum * den - num * dden) / (den * den);
        if !(om.re.is_finite() && om.im.is_finite()) {
            return Err(Error::Pole("Omega overflowed near a pole"));
        }
        Ok((om, d))
    }

    pub fn omega(&self, u: Complex64) -> Result<Complex64> {
        Ok(self.omega_with_derivative(u)?.0)
    }

    /// The degree-two elliptic function `z(u)`.
    pub fn z_of_u(&self, u: Complex64) -> Result<Complex64> {
        let lk = self.lambda * self.ctx.quarter_period();
        if !self.is_half_turn()
            && (self.lattice_distance(u - lk) < POLE_GUARD || self.lattice_distance(u + lk) < POLE_GUARD)
        {
            return Err(Error::Pole("z(u) has poles at +-lambda K"));
        }
        let th = self.ctx.thetas(u * 2.0)?;
        let g = (self.ctx.k_prime() / self.ctx.k()).sqrt();
        let gh1 = th.h1 * g;
        let den = gh1 - th.theta * self.c;
        if den.norm() == 0.0 {
            return Err(Error::Pole("z(u) has poles at +-lambda K"));
        }
        Ok((gh1 * self.c - th.theta) / den)
    }

    /// Inverse of [`z_of_u`](Self::z_of_u) on `[0, K] x [-K'/2, K'/2]`.
    ///
    /// The strip is a fundamental domain of `z` modulo evenness. Points with
    /// `Im z < 0` come from `Im u > 0`; `[-1, 1]` is covered by the segments
    /// `[0, iK'/2]` and `[K, K + iK'/2]`.
    pub fn u_of_z(&self, z: Complex64) -> Result<Complex64> {
        let cc = c(self.c, 0.0);
        if (z - cc).norm() <= 1e-15 * (1.0 + self.c.abs()) {
            return Err(Error::Pole("z = cn(2 lambda K) is the image of the cn pole"));
        }
        let w = (z * self.c - 1.0) / (z - cc);
        Ok(self.ctx.invert_cn(w)? * 0.5)
    }

    /// `(Omega^n + Omega^-n) / 2` at a point of the `u`-plane.
    pub fn tn_at_u(&self, u: Complex64) -> Result<Complex64> {
        let om = self.omega(u)?;
        Ok(joukowski_power(om, self.n))
    }

    /// `T_n(z)`.
    pub fn tn_eval(&self, z: Complex64) -> Result<Complex64> {
        if self.is_half_turn() {
            let kp = self.ctx.k_prime();
            let g = (z * z - 1.0) * (2.0 * kp * kp) + 1.0;
            let mut basis = vec![0.0; (self.n / 2) as usize + 1];
            basis[(self.n / 2) as usize] = 1.0;
            return Ok(cheb::eval(&basis, g));
        }
        let u = self.u_of_z(z)?;
        self.tn_at_u(u)
    }
}

fn joukowski_power(om: Complex64, n: u32) -> Complex64 {
    let p = om.powi(n as i32);
    (p + p.inv()) * 0.5
}

fn z_star_forms_at(ctx: &EllipticContext, lambda: f64, sn: f64, cn: f64, dn: f64) -> Result<(f64, f64)> {
    let big_k = ctx.quarter_period();
    let first = 1.0 + (cn - 1.0 + 2.0 * sn * ctx.zn(lambda * big_k)?) / dn;
    let second = cn + sn * ctx.zn(2.0 * lambda * big_k)? / dn;
    if (first - second).abs() > Z_STAR_AGREEMENT * second.abs().max(1.0) {
        return Err(Error::CrossCheck {
            what: "z*",
            first: second,
            second: first,
        });
    }
    Ok((second, first))
}

/// Both closed forms of `z*`: `(cn + sn zn(2lK)/dn, 1 + (cn - 1 + 2 sn zn(lK))/dn)`,
/// with `sn, cn, dn` taken at `2 lambda K`.
pub fn z_star_forms(ctx: &EllipticContext, lambda: f64) -> Result<(f64, f64)> {
    if !(lambda > 0.0 && lambda < 0.5) {
        return Err(Error::Domain("lambda must lie in (0, 1/2)"));
    }
    let (sn, cn, dn) = ctx.jacobi_real(2.0 * lambda * ctx.quarter_period())?;
    z_star_forms_at(ctx, lambda, sn, cn, dn)
}

/// Critical point `z*` for modulus `k` and rotation `lambda`, cross-checked.
pub fn z_star(k: f64, lambda: f64) -> Result<f64> {
    let ctx = EllipticContext::with_default_tol(k)?;
    Ok(z_star_forms(&ctx, lambda)?.0)
}

/// The modulus at which `z* = 1`.
pub fn k_star(lambda: f64, tol: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 0.5) {
        return Err(Error::Domain("lambda must lie in (0, 1/2)"));
    }
    let lo = MODULUS_MIN;
    let hi = 1.0 - 1e-6;
    let f = |k: f64| z_star(k, lambda).map(|z| z - 1.0);
    let k = bisect(f, lo, hi, 1e-15)?;
    let miss = (z_star(k, lambda)? - 1.0).abs();
    if miss > tol.max(1e-13) {
        return Err(Error::Convergence("bisection for k* stalled above tolerance"));
    }
    debug_assert!(k < MODULUS_MAX);
    Ok(k)
}

/// Numerically recovered Pell pair.
///
/// Coefficients are in the Chebyshev basis of `[-1, 1]`. Far from that interval
/// the coefficient form cancels badly, so [`t`](Self::t) and [`u`](Self::u)
/// evaluate the factored form `lead * prod (z - root)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PellPair {
    pub t_coeffs: Vec<f64>,
    pub u_coeffs: Vec<f64>,
    pub t_roots: Vec<Complex64>,
    pub u_roots: Vec<Complex64>,
    /// Common leading coefficient of `T_n` and `U_{n-2}` in the monomial basis.
    pub leading: f64,
    /// Endpoints `-1, 1, a3, a4`.
    pub h_roots: [Complex64; 4],
    /// `max |T^2 - h U^2 - 1|` over the certification points.
    pub residual: f64,
    pub threshold: f64,
    /// Sign `s` in `T' = s n (z - z*) U`; `+1` for this construction.
    pub derivative_sign: i8,
    /// Relative coefficient mismatch of `T'` against `n (z - z*) U`.
    pub derivative_residual: f64,
    pub cert_points: usize,
}

fn product(lead: f64, roots: &[Complex64], z: Complex64) -> Complex64 {
    roots.iter().fold(c(lead, 0.0), |acc, &r| acc * (z - r))
}

/// Chebyshev coefficients of `lead * prod (z - r)` by interpolation at the extrema nodes.
fn chebyshev_from_roots(lead: f64, roots: &[Complex64]) -> Vec<f64> {
    let values: Vec<f64> = cheb::extrema_nodes(roots.len())
        .iter()
        .map(|&x| product(lead, roots, c(x, 0.0)).re)
        .collect();
    cheb::interpolate_extrema(&values)
}

impl PellPair {
    pub fn t(&self, z: Complex64) -> Complex64 {
        product(self.leading, &self.t_roots, z)
    }

    pub fn u(&self, z: Complex64) -> Complex64 {
        product(self.leading, &self.u_roots, z)
    }

    pub fn h(&self, z: Complex64) -> Complex64 {
        product(1.0, &self.h_roots, z)
    }

    /// `T^2 - h U^2 - 1` at one point.
    pub fn pell_defect(&self, z: Complex64) -> Complex64 {
        let t = self.t(z);
        let u = self.u(z);
        t * t - self.h(z) * u * u - 1.0
    }

    /// Monomial coefficients of `T_n`, lowest degree first.
    pub fn t_monomial(&self) -> Vec<f64> {
        cheb::to_monomial(&self.t_coeffs)
    }

    pub fn u_monomial(&self) -> Vec<f64> {
        cheb::to_monomial(&self.u_coeffs)
    }
}

/// Snaps roots within `eps` of the real axis onto it and checks conjugate pairing.
fn real_or_paired(mut roots: Vec<Complex64>, eps: f64) -> Option<Vec<Complex64>> {
    for r in roots.iter_mut() {
        if r.im.abs() <= eps {
            r.im = 0.0;
        }
    }
    let upper = roots.iter().filter(|r| r.im > 0.0).count();
    let lower = roots.iter().filter(|r| r.im < 0.0).count();
    (upper == lower).then_some(roots)
}

/// Recovers `T_n` and `U_{n-2}` and certifies the Pell identity.
///
/// The zeros of `T_n` are the points of the inverse image where `T_n = 0`; the
/// zeros of `U_{n-2}` are the extremal points other than the endpoints
/// `-1, 1, a3, a4`. The common leading coefficient is fixed by `T_n(1)`.
pub fn recover_pell(cfg: &TnTupleConfig) -> Result<PellPair> {
    let n = cfg.n as usize;
    let trace = crate::geometry::trace_arc(cfg, CERT_POINTS)?;

    let (zi, za) = crate::geometry::level_zeros(cfg, &trace)?;
    let t_roots: Vec<Complex64> = zi.iter().map(|&x| c(x, 0.0)).chain(za).collect();
    let t_roots = real_or_paired(t_roots, 1e-12).ok_or(Error::Certification {
        what: "conjugate pairing of the zeros of T",
        measured: 1.0,
        threshold: 0.0,
    })?;
    if t_roots.len() != n {
        return Err(Error::Certification {
            what: "number of zeros of T",
            measured: t_roots.len() as f64,
            threshold: n as f64,
        });
    }

    let report = crate::geometry::survey_extremals(cfg, &trace)?;
    let r = crate::geometry::EXTREMAL_MERGE_RADIUS;
    let mut u_roots: Vec<Complex64> = report
        .on_interval
        .iter()
        .filter(|x| (x.abs() - 1.0).abs() > r)
        .map(|&x| c(x, 0.0))
        .chain(
            report
                .on_arc
                .iter()
                .filter(|z| (*z - cfg.a3).norm() > r && (*z - cfg.a4()).norm() > r)
                .copied(),
        )
        .collect();
    if u_roots.len() + 3 == n && report.expected_total == n + 1 {
        // tangency: z* = +-1 is also a zero of U
        u_roots.push(c(cfg.z_star.clamp(-1.0, 1.0), 0.0));
    }
    let u_roots = real_or_paired(u_roots, 1e-12).ok_or(Error::Certification {
        what: "conjugate pairing of the zeros of U",
        measured: 1.0,
        threshold: 0.0,
    })?;
    if u_roots.len() + 2 != n {
        return Err(Error::Certification {
            what: "number of zeros of U",
            measured: u_roots.len() as f64,
            threshold: (n - 2) as f64,
        });
    }

    let t_one = cfg.tn_eval(c(1.0, 0.0))?.re;
    let leading = t_one / product(1.0, &t_roots, c(1.0, 0.0)).re;
    let t_coeffs = chebyshev_from_roots(leading, &t_roots);
    let u_coeffs = chebyshev_from_roots(leading, &u_roots);

    let dt = cheb::derivative(&t_coeffs);
    let rhs: Vec<f64> = cheb::mul(&[-cfg.z_star, 1.0], &u_coeffs).iter().map(|v| v * n as f64).collect();
    let scale = dt.iter().map(|v| v.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let derivative_residual = dt
        .iter()
        .zip(rhs.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
        / scale;

    let arc: Vec<Complex64> = trace.z_points.clone();
    let on_interval = CERT_GRID - arc.len();
    let mut points: Vec<Complex64> = (0..on_interval)
        .map(|j| c((PI * (2 * j + 1) as f64 / (2 * on_interval) as f64).cos(), 0.0))
        .collect();
    points.extend(arc);

    let mut pair = PellPair {
        t_coeffs,
        u_coeffs,
        t_roots,
        u_roots,
        leading,
        h_roots: [c(-1.0, 0.0), c(1.0, 0.0), cfg.a3, cfg.a4()],
        residual: 0.0,
        threshold: 0.0,
        derivative_sign: 1,
        derivative_residual,
        cert_points: points.len(),
    };
    let mut t_max: f64 = 0.0;
    for &z in &points {
        pair.residual = pair.residual.max(pair.pell_defect(z).norm());
        t_max = t_max.max(pair.t(z).norm());
    }
    pair.threshold = PELL_TOL * t_max.powi(2).max(1.0);
    if !(pair.residual <= pair.threshold) {
        return Err(Error::Certification {
            what: "Pell residual",
            measured: pair.residual,
            threshold: pair.threshold,
        });
    }
    if !(derivative_residual <= PELL_TOL) {
        return Err(Error::Certification {
            what: "derivative identity",
            measured: derivative_residual,
            threshold: PELL_TOL,
        });
    }
    if leading.abs() <= PELL_TOL {
        return Err(Error::Certification {
            what: "leading coefficient",
            measured: leading.abs(),
            threshold: PELL_TOL,
        });
    }
    Ok(pair)
}
