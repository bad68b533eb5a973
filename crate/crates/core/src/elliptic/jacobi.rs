use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::carlson::carlson_rf;
use super::EllipticContext;
use crate::error::{Error, Result};

const POLE_GUARD: f64 = 1e-10;
const NEWTON_MAX_ITER: usize = 60;

/// The three Jacobi elliptic functions at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jacobi {
    pub sn: Complex64,
    pub cn: Complex64,
    pub dn: Complex64,
}

impl EllipticContext {
    /// `sn`, `cn`, `dn` as theta quotients.
    pub fn jacobi(&self, u: Complex64) -> Result<Jacobi> {
        let big_k = self.quarter_period();
        let big_kp = self.quarter_period_prime();
        // zeros of Theta sit at iK' modulo (2K, 2iK')
        let mut r = u;
        r.re -= 2.0 * big_k * (r.re / (2.0 * big_k)).round();
        r.im -= 2.0 * big_kp * (r.im / (2.0 * big_kp)).round();
        let to_pole = (r - Complex64::new(0.0, big_kp))
            .norm()
            .min((r + Complex64::new(0.0, big_kp)).norm());
        if to_pole < POLE_GUARD {
            return Err(Error::Pole("sn, cn, dn have a pole at iK'"));
        }
        let th = self.thetas(u)?;
        let k = self.k();
        let kp = self.k_prime();
        let inv = Complex64::new(1.0, 0.0) / th.theta;
        Ok(Jacobi {
            sn: th.h * inv / k.sqrt(),
            cn: th.h1 * inv * (kp / k).sqrt(),
            dn: th.theta1 * inv * kp.sqrt(),
        })
    }

    /// Real-argument convenience wrapper returning `(sn, cn, dn)`.
    pub fn jacobi_real(&self, u: f64) -> Result<(f64, f64, f64)> {
        let j = self.jacobi(Complex64::new(u, 0.0))?;
        Ok((j.sn.re, j.cn.re, j.dn.re))
    }

    /// Jacobi's zeta function `zn(u) = Theta'(u) / Theta(u)` for real `u`.
    pub fn zn(&self, u: f64) -> Result<f64> {
        let th = self.thetas(Complex64::new(u, 0.0))?;
        Ok((th.dtheta / th.theta).re)
    }

    /// Solves `cn(s) = w`.
    ///
    /// The result lies in `[0, 2K] x [-K', K']`, a fundamental domain of `cn`
    /// modulo its evenness. For `w` in the closed fourth quadrant this is the
    /// rectangle `[0, K] x [0, K']`.
    pub fn invert_cn(&self, w: Complex64) -> Result<Complex64> {
        let big_k = self.quarter_period();
        if w.im == 0.0 {
            if w.re == 1.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            if w.re == -1.0 {
                return Ok(Complex64::new(2.0 * big_k, 0.0));
            }
            if w.re == 0.0 {
                return Ok(Complex64::new(big_k, 0.0));
            }
        }
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(Error::Domain("cn target must be finite"));
        }
        // fold into the closed first quadrant: cn(2K - s) = -cn(s), cn(conj s) = conj cn(s)
        if w.re < 0.0 {
            let s = self.invert_cn(-w)?;
            return Ok(self.reduce_cn_domain(Complex64::new(2.0 * big_k, 0.0) - s));
        }
        if w.im < 0.0 {
            return Ok(self.reduce_cn_domain(self.invert_cn(w.conj())?.conj()));
        }
        let accept = 1e-10 * w.norm().max(1.0);

        if let Some(seed) = self.cn_inverse_seed(w) {
            if let Ok(s) = self.cn_newton(seed, w) {
                if self.cn_residual(s, w) <= accept {
                    return Ok(self.reduce_cn_domain(s));
                }
            }
        }
        // fall back on a coarse search of the fundamental domain
        let seed = self.cn_grid_seed(w)?;
        let s = self.cn_newton(seed, w)?;
        if self.cn_residual(s, w) <= accept {
            Ok(self.reduce_cn_domain(s))
        } else {
            Err(Error::Convergence("cn inversion missed its target"))
        }
    }

    fn cn_residual(&self, s: Complex64, w: Complex64) -> f64 {
        match self.jacobi(s) {
            Ok(j) => (j.cn - w).norm(),
            Err(_) => f64::INFINITY,
        }
    }

    /// Inverse-integral seed `s = sqrt(1 - w^2) R_F(w^2, k'^2 + k^2 w^2, 1)`.
    fn cn_inverse_seed(&self, w: Complex64) -> Option<Complex64> {
        let k = self.k();
        let kp = self.k_prime();
        let one = Complex64::new(1.0, 0.0);
        let w2 = w * w;
        let rf = carlson_rf(w2, w2 * (k * k) + kp * kp, one).ok()?;
        let s = (one - w2).sqrt() * rf;
        (s.re.is_finite() && s.im.is_finite()).then(|| self.reduce_cn_domain(s))
    }

    fn cn_grid_seed(&self, w: Complex64) -> Result<Complex64> {
        let big_k = self.quarter_period();
        let big_kp = self.quarter_period_prime();
        let steps = 32;
        let mut best = (f64::INFINITY, Complex64::new(0.0, 0.0));
        for i in 0..=steps {
            for j in 0..=steps {
                let s = Complex64::new(
                    2.0 * big_k * i as f64 / steps as f64,
                    big_kp * (2.0 * j as f64 / steps as f64 - 1.0),
                );
                let r = self.cn_residual(s, w);
                if r < best.0 {
                    best = (r, s);
                }
            }
        }
        if best.0.is_finite() {
            Ok(best.1)
        } else {
            Err(Error::Convergence("no usable seed for cn inversion"))
        }
    }

    /// Damped Newton iteration for `cn(s) = w`.
    ///
    /// Targets outside the unit disk are matched through `1/cn(s) = 1/w`, which
    /// stays smooth near the pole at `iK'`.
    fn cn_newton(&self, seed: Complex64, w: Complex64) -> Result<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let reciprocal = w.norm() > 1.0;
        let target = if reciprocal { one / w } else { w };
        let value = |j: &Jacobi| if reciprocal { one / j.cn } else { j.cn };
        let mut s = seed;
        let mut j = self.jacobi(s)?;
        let mut res = (value(&j) - target).norm();
        for _ in 0..NEWTON_MAX_ITER {
            if res <= 1e-16 {
                return Ok(s);
            }
            let deriv = if reciprocal {
                j.sn * j.dn / (j.cn * j.cn)
            } else {
                -(j.sn * j.dn)
            };
            if deriv.norm() == 0.0 || !deriv.re.is_finite() {
                return Ok(s);
            }
            let step = (value(&j) - target) / deriv;
            let mut damping = 1.0;
            let mut accepted = false;
            for _ in 0..30 {
                let trial = s - step * damping;
                if let Ok(jt) = self.jacobi(trial) {
                    let rt = (value(&jt) - target).norm();
                    if rt < res {
                        s = trial;
                        j = jt;
                        res = rt;
                        accepted = true;
                        break;
                    }
                }
                damping *= 0.5;
            }
            if !accepted || (step * damping).norm() <= 1e-15 * (1.0 + s.norm()) {
                return Ok(s);
            }
        }
        Ok(s)
    }

    /// Maps `s` to its representative in `[0, 2K] x [-K', K']` under the
    /// periods `4K`, `2K + 2iK'` and the symmetry `s -> -s`.
    pub(crate) fn reduce_cn_domain(&self, s: Complex64) -> Complex64 {
        let big_k = self.quarter_period();
        let big_kp = self.quarter_period_prime();
        let b = (s.im / (2.0 * big_kp)).round();
        let mut r = s - Complex64::new(2.0 * big_k, 2.0 * big_kp) * b;
        r.re -= 4.0 * big_k * (r.re / (4.0 * big_k)).round();
        if r.re < 0.0 {
            r = -r;
        }
        let eps = 1e-13 * big_k;
        // edge identifications: Re = 0 and Re = 2K fold Im -> -Im,
        // Im = +-K' folds Re -> 2K - Re
        if (r.re.abs() < eps || (r.re - 2.0 * big_k).abs() < eps) && r.im < 0.0 {
            r.im = -r.im;
        }
        if (r.im.abs() - big_kp).abs() < 1e-13 * big_kp && r.re > big_k {
            r.re = 2.0 * big_k - r.re;
        }
        r
    }
}
