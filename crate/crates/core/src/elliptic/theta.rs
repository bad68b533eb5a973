//! Jacobi's theta functions `H`, `H1`, `Theta`, `Theta1` of argument `u`.
//!
//! With `v = pi u / (2K)` and nome `q` these are the classical
//! `theta_1(v)`, `theta_2(v)`, `theta_4(v)` and `theta_3(v)`. The argument is
//! first moved into the strip `|Im u| <= K'` with the quasi-periodicity
//! `theta(v + pi tau) = s q^-1 e^{-2iv} theta(v)`, then the q-series is summed
//! until the tail bound drops below the context tolerance.

use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::EllipticContext;
use crate::error::{Error, Result};

const MAX_TERMS: usize = 64;

/// Which of the four theta functions to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaKind {
    H,
    H1,
    Theta,
    Theta1,
}

/// All four theta functions at one argument, together with their
/// derivatives with respect to `u`.
#[derive(Debug, Clone, Copy)]
pub struct ThetaValues {
    pub h: Complex64,
    pub h1: Complex64,
    pub theta: Complex64,
    pub theta1: Complex64,
    pub dh: Complex64,
    pub dh1: Complex64,
    pub dtheta: Complex64,
    pub dtheta1: Complex64,
}

impl ThetaValues {
    pub fn get(&self, kind: ThetaKind) -> Complex64 {
        match kind {
            ThetaKind::H => self.h,
            ThetaKind::H1 => self.h1,
            ThetaKind::Theta => self.theta,
            ThetaKind::Theta1 => self.theta1,
        }
    }
}

impl EllipticContext {
    /// Evaluates one theta function.
    pub fn theta(&self, kind: ThetaKind, u: Complex64) -> Result<Complex64> {
        Ok(self.thetas(u)?.get(kind))
    }

    /// Evaluates all four theta functions and their `u`-derivatives.
    pub fn thetas(&self, u: Complex64) -> Result<ThetaValues> {
        if !(u.re.is_finite() && u.im.is_finite()) {
            return Err(Error::Domain("non-finite theta argument"));
        }
        let big_k = self.quarter_period();
        let big_kp = self.quarter_period_prime();
        let q = self.nome();
        // t = pi K'/K, so q = e^-t and pi tau = i t in the v variable
        let t = PI * big_kp / big_k;

        let shift = (u.im / (2.0 * big_kp)).round();
        let mut u0 = u - Complex64::new(0.0, 2.0 * big_kp * shift);
        let turns = (u0.re / (4.0 * big_k)).round();
        u0.re -= 4.0 * big_k * turns;
        if u0.im.abs() > big_kp * (1.0 + 1e-12) {
            return Err(Error::Domain("argument could not be reduced into the period strip"));
        }
        let scale = PI / (2.0 * big_k);
        let v = u0 * scale;

        let eps = (self.tol() * 1e-4).max(1e-19);
        let growth = (2.0 * v.im.abs()).exp();

        let mut s1 = Complex64::new(0.0, 0.0);
        let mut s2 = Complex64::new(0.0, 0.0);
        let mut s3 = Complex64::new(1.0, 0.0);
        let mut s4 = Complex64::new(1.0, 0.0);
        let mut d1 = Complex64::new(0.0, 0.0);
        let mut d2 = Complex64::new(0.0, 0.0);
        let mut d3 = Complex64::new(0.0, 0.0);
        let mut d4 = Complex64::new(0.0, 0.0);

        let mut converged = false;
        for n in 0..MAX_TERMS {
            let nf = n as f64;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            // half-integer terms: q^{(n+1/2)^2}, argument (2n+1) v
            let odd = 2.0 * nf + 1.0;
            let qh = q.powf((nf + 0.5) * (nf + 0.5));
            let (sin_o, cos_o) = ((v * odd).sin(), (v * odd).cos());
            s1 += sin_o * (2.0 * sign * qh);
            s2 += cos_o * (2.0 * qh);
            d1 += cos_o * (2.0 * sign * qh * odd);
            d2 -= sin_o * (2.0 * qh * odd);
            // integer terms: q^{n^2}, argument 2n v
            let qi = q.powf(nf * nf);
            if n > 0 {
                let even = 2.0 * nf;
                let (sin_e, cos_e) = ((v * even).sin(), (v * even).cos());
                s3 += cos_e * (2.0 * qi);
                s4 += cos_e * (2.0 * sign * qi);
                d3 -= sin_e * (2.0 * qi * even);
                d4 -= sin_e * (2.0 * sign * qi * even);
            }
            // bound on the next pair of terms relative to the leading ones
            let next = nf + 1.0;
            let tail = q.powf(next * next) * growth.powf(next) * (1.0 + 2.0 * next);
            if n > 0 && tail < eps {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Convergence("theta series did not settle"));
        }

        // undo the imaginary-period shift: theta(v0 + j pi tau) = s^j q^{-j^2} e^{-2ijv0} theta(v0)
        let j = shift;
        let mult = (Complex64::new(j * j * t, 0.0) - Complex64::new(0.0, 2.0 * j) * v).exp();
        // d/dv of the multiplier is -2ij times it
        let dmult = Complex64::new(0.0, -2.0 * j);
        let odd_sign = if (j as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let lift = |s: Complex64, d: Complex64, sgn: f64| {
            let val = mult * s * sgn;
            let der = mult * (d + dmult * s) * sgn * scale;
            (val, der)
        };
        let (h, dh) = lift(s1, d1, odd_sign);
        let (h1, dh1) = lift(s2, d2, 1.0);
        let (theta1, dtheta1) = lift(s3, d3, 1.0);
        let (theta, dtheta) = lift(s4, d4, odd_sign);
        let out = ThetaValues {
            h,
            h1,
            theta,
            theta1,
            dh,
            dh1,
            dtheta,
            dtheta1,
        };
        let finite = [h, h1, theta, theta1]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite {
            return Err(Error::Domain("theta value overflowed"));
        }
        Ok(out)
    }
}
