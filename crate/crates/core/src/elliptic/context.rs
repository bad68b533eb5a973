use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Smallest modulus accepted by [`EllipticContext::new`].
pub const MODULUS_MIN: f64 = 1e-6;
/// Largest modulus accepted by [`EllipticContext::new`].
///
/// The nome at this modulus is about 0.64, so the theta series still settle
/// in a dozen terms.
pub const MODULUS_MAX: f64 = 1.0 - 1e-9;
/// Default truncation tolerance for the theta series.
pub const DEFAULT_TOL: f64 = 1e-12;

const AGM_MAX_ITER: usize = 64;

/// Modulus-dependent constants shared by every elliptic evaluation.
///
/// Immutable once built; cheap to clone and safe to share between threads.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticContext {
    k: f64,
    k_prime: f64,
    quarter: f64,
    quarter_prime: f64,
    e: f64,
    e_prime: f64,
    nome: f64,
    tol: f64,
}

/// Complete integrals `(K, E)` for modulus `k` with complementary modulus `kp`,
/// by the arithmetic-geometric mean.
fn complete_integrals(k: f64, kp: f64, tol: f64) -> Result<(f64, f64)> {
    let mut a = 1.0;
    let mut b = kp;
    let mut c = k;
    let mut sum = 0.5 * c * c;
    let mut weight = 0.5;
    for _ in 0..AGM_MAX_ITER {
        let a_next = 0.5 * (a + b);
        let b_next = (a * b).sqrt();
        c = 0.5 * (a - b);
        weight *= 2.0;
        sum += weight * c * c;
        a = a_next;
        b = b_next;
        if c.abs() <= tol.min(1e-15) * a {
            let big_k = PI / (2.0 * a);
            return Ok((big_k, big_k * (1.0 - sum)));
        }
    }
    Err(Error::Convergence("arithmetic-geometric mean did not contract"))
}

impl EllipticContext {
    /// Builds the context for modulus `k` and series tolerance `tol`.
    pub fn new(k: f64, tol: f64) -> Result<Self> {
        if !(MODULUS_MIN..=MODULUS_MAX).contains(&k) {
            return Err(Error::Domain("modulus outside [1e-6, 1 - 1e-9]"));
        }
        if !(tol > 0.0 && tol <= 1e-6) {
            return Err(Error::Domain("tolerance must lie in (0, 1e-6]"));
        }
        // (1 - k)(1 + k) keeps k' accurate when k is close to one
        let k_prime = ((1.0 - k) * (1.0 + k)).sqrt();
        let (quarter, e) = complete_integrals(k, k_prime, tol)?;
        let (quarter_prime, e_prime) = complete_integrals(k_prime, k, tol)?;
        let nome = (-PI * quarter_prime / quarter).exp();
        let ctx = EllipticContext {
            k,
            k_prime,
            quarter,
            quarter_prime,
            e,
            e_prime,
            nome,
            tol,
        };
        if ctx.legendre_defect().abs() > 10.0 * tol.max(1e-14) {
            return Err(Error::Convergence("Legendre relation violated"));
        }
        Ok(ctx)
    }

    pub fn with_default_tol(k: f64) -> Result<Self> {
        Self::new(k, DEFAULT_TOL)
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn k_prime(&self) -> f64 {
        self.k_prime
    }

    /// Real quarter period `K`.
    pub fn quarter_period(&self) -> f64 {
        self.quarter
    }

    /// Imaginary quarter period `K' = K(k')`.
    pub fn quarter_period_prime(&self) -> f64 {
        self.quarter_prime
    }

    /// Complete integral of the second kind `E(k)`.
    pub fn complete_e(&self) -> f64 {
        self.e
    }

    /// `E' = E(k')`.
    pub fn complete_e_prime(&self) -> f64 {
        self.e_prime
    }

    /// Nome `q = exp(-pi K'/K)`.
    pub fn nome(&self) -> f64 {
        self.nome
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// `E K' + E' K - K K' - pi/2`, zero in exact arithmetic.
    pub fn legendre_defect(&self) -> f64 {
        self.e * self.quarter_prime + self.e_prime * self.quarter
            - self.quarter * self.quarter_prime
            - 0.5 * PI
    }
}
