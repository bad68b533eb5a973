//! Polynomials stored by their coefficients in the Chebyshev basis on `[-1, 1]`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// The `n + 1` extrema nodes `cos(j pi / n)`, `j = 0..=n`.
pub fn extrema_nodes(n: usize) -> Vec<f64> {
    if n == 0 {
        return vec![1.0];
    }
    // sin form keeps the nodes exactly antisymmetric
    (0..=n)
        .map(|j| (PI * (n as f64 - 2.0 * j as f64) / (2.0 * n as f64)).sin())
        .collect()
}

/// Interpolating coefficients from values at [`extrema_nodes`] (a type-I DCT).
pub fn interpolate_extrema(values: &[f64]) -> Vec<f64> {
    let n = values.len() - 1;
    if n == 0 {
        return values.to_vec();
    }
    let mut coeffs = vec![0.0; n + 1];
    for (k, c) in coeffs.iter_mut().enumerate() {
        let mut sum = 0.0;
        for (j, &v) in values.iter().enumerate() {
            let w = if j == 0 || j == n { 0.5 } else { 1.0 };
            sum += w * v * (PI * ((j * k) % (2 * n)) as f64 / n as f64).cos();
        }
        let scale = if k == 0 || k == n { 1.0 } else { 2.0 };
        *c = scale * sum / n as f64;
    }
    coeffs
}

/// Clenshaw evaluation at a complex point.
pub fn eval(coeffs: &[f64], z: Complex64) -> Complex64 {
    let zero = Complex64::new(0.0, 0.0);
    let Some((&c0, rest)) = coeffs.split_first() else {
        return zero;
    };
    let (mut b1, mut b2) = (zero, zero);
    for &c in rest.iter().rev() {
        let b0 = z * b1 * 2.0 - b2 + c;
        b2 = b1;
        b1 = b0;
    }
    z * b1 - b2 + c0
}

pub fn eval_real(coeffs: &[f64], x: f64) -> f64 {
    eval(coeffs, Complex64::new(x, 0.0)).re
}

/// Coefficients of the derivative.
pub fn derivative(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len();
    if n <= 1 {
        return vec![0.0];
    }
    let mut d = vec![0.0; n + 1];
    for j in (0..n - 1).rev() {
        d[j] = d[j + 2] + 2.0 * (j + 1) as f64 * coeffs[j + 1];
    }
    d[0] *= 0.5;
    d.truncate(n - 1);
    d
}

/// Product of two Chebyshev series, using `2 T_i T_j = T_{i+j} + T_{|i-j|}`.
pub fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            let p = 0.5 * x * y;
            out[i + j] += p;
            out[i.abs_diff(j)] += p;
        }
    }
    out
}

/// Converts to monomial coefficients, lowest degree first.
pub fn to_monomial(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len();
    let mut out = vec![0.0; n.max(1)];
    // running monomial expansions of T_{j-1} and T_j
    let mut prev = vec![0.0; n.max(1)];
    let mut cur = vec![0.0; n.max(1)];
    prev[0] = 1.0;
    if n > 1 {
        cur[1] = 1.0;
    }
    for (j, &c) in coeffs.iter().enumerate() {
        let basis = if j == 0 { &prev } else { &cur };
        for (o, &b) in out.iter_mut().zip(basis.iter()) {
            *o += c * b;
        }
        if j >= 1 && j + 1 < n {
            let mut next = vec![0.0; n];
            for i in 0..n - 1 {
                next[i + 1] += 2.0 * cur[i];
            }
            for i in 0..n {
                next[i] -= prev[i];
            }
            prev = core::mem::replace(&mut cur, next);
        }
    }
    out
}
