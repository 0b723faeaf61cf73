//! Gauss-Legendre quadrature with an order-doubling refinement ladder, and
//! trapezoid weights for user-supplied (possibly non-uniform) grids.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
///
/// Nodes are found by Newton iteration on P_n starting from the Chebyshev
/// initial guess; symmetric pairs are filled from one half.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "need at least a two-point rule");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess for the i-th root of P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for j in 2..=n {
        let jf = j as f64;
        let p_next = ((2.0 * jf - 1.0) * x * p - (jf - 1.0) * p_prev) / jf;
        p_prev = p;
        p = p_next;
    }
    let d = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, d)
}

/// Integral of a complex-valued integrand over [a, b] with a fixed order.
pub fn integrate_complex<F: FnMut(f64) -> Complex64>(
    a: f64,
    b: f64,
    order: usize,
    mut f: F,
) -> Complex64 {
    let (nodes, weights) = gauss_legendre(order);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in nodes.iter().zip(&weights) {
        acc += f(mid + half * x) * *w;
    }
    acc * half
}

/// Order-doubling ladder: integrates at 16, 32, ... points until two
/// successive orders agree within `tol`, then returns the finer result.
pub fn integrate_complex_adaptive<F: FnMut(f64) -> Complex64>(
    a: f64,
    b: f64,
    tol: f64,
    mut f: F,
) -> Result<Complex64> {
    let mut order = 16;
    let mut prev = integrate_complex(a, b, order, &mut f);
    let mut residual = f64::INFINITY;
    while order <= 1024 {
        order *= 2;
        let next = integrate_complex(a, b, order, &mut f);
        residual = (next - prev).norm();
        if residual < tol {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::QuadratureNotConverged { residual, order })
}

/// Trapezoid rule on a strictly ascending grid.
pub fn trapezoid_complex(k: &[f64], g: &[Complex64]) -> Result<Complex64> {
    check_grid(k)?;
    assert_eq!(k.len(), g.len());
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..k.len() - 1 {
        acc += (g[j] + g[j + 1]) * (0.5 * (k[j + 1] - k[j]));
    }
    Ok(acc)
}

/// Trapezoid weight of each grid point (half the span of its two cells).
pub fn trapezoid_weights(k: &[f64]) -> Result<Vec<f64>> {
    check_grid(k)?;
    let n = k.len();
    let mut w = vec![0.0; n];
    for j in 0..n - 1 {
        let h = 0.5 * (k[j + 1] - k[j]);
        w[j] += h;
        w[j + 1] += h;
    }
    Ok(w)
}

fn check_grid(k: &[f64]) -> Result<()> {
    if k.len() < 2 {
        return Err(Error::InvalidGrid(format!(
            "need at least 2 points (got {})",
            k.len()
        )));
    }
    for j in 0..k.len() - 1 {
        if !(k[j + 1] > k[j]) {
            return Err(Error::InvalidGrid(format!(
                "grid not strictly ascending at index {j} ({} -> {})",
                k[j],
                k[j + 1]
            )));
        }
    }
    Ok(())
}
