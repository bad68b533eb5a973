//! Carlson's symmetric integral `R_F(x, y, z)` by the duplication theorem.
//! Principal branch; complex arguments must stay off the negative real axis.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

const MAX_ITER: usize = 100;

pub fn carlson_rf(x: Complex64, y: Complex64, z: Complex64) -> Result<Complex64> {
    let (mut x, mut y, mut z) = (x, y, z);
    for _ in 0..MAX_ITER {
        let a = (x + y + z) / 3.0;
        let dev = (a - x).norm().max((a - y).norm()).max((a - z).norm());
        if dev <= 2.5e-3 * a.norm() {
            let xd = (a - x) / a;
            let yd = (a - y) / a;
            let zd = -(xd + yd);
            let e2 = xd * yd - zd * zd;
            let e3 = xd * yd * zd;
            let series = Complex64::new(1.0, 0.0) - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0
                - e2 * e3 * (3.0 / 44.0);
            let out = series / a.sqrt();
            return if out.re.is_finite() && out.im.is_finite() {
                Ok(out)
            } else {
                Err(Error::Convergence("R_F produced a non-finite value"))
            };
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sy * sz + sz * sx;
        x = (x + lam) * 0.25;
        y = (y + lam) * 0.25;
        z = (z + lam) * 0.25;
    }
    Err(Error::Convergence("R_F duplication did not settle"))
}

/// Incomplete integral of the first kind `F(phi, k)` given `sin phi` and
/// `cos phi` (so quadrant information is not lost).
pub fn incomplete_first_kind(sin_phi: f64, cos_phi: f64, k: f64) -> Result<f64> {
    let one = Complex64::new(1.0, 0.0);
    let c2 = Complex64::new(cos_phi * cos_phi, 0.0);
    let d2 = Complex64::new(1.0 - k * k * sin_phi * sin_phi, 0.0);
    Ok(sin_phi * carlson_rf(c2, d2, one)?.re)
}
