//! Adaptive Gauss–Legendre quadrature for vector-valued integrands.
//!
//! Each interval is estimated with 7- and 15-point Gauss–Legendre rules;
//! intervals whose rule difference (summed over components) exceeds the
//! width-proportional share of the absolute tolerance are bisected.

use std::sync::OnceLock;

/// Gauss–Legendre nodes and weights on [-1, 1], computed by Newton
/// iteration on the Legendre polynomial.
fn legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev-like initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n(x) and P'_n(x) via recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn rule7() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(7))
}

fn rule15() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(15))
}

fn apply_rule<F>(
    f: &mut F,
    a: f64,
    b: f64,
    rule: &(Vec<f64>, Vec<f64>),
    scratch: &mut [f64],
    acc: &mut [f64],
) where
    F: FnMut(f64, &mut [f64]),
{
    acc.fill(0.0);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    for (&x, &w) in rule.0.iter().zip(rule.1.iter()) {
        f(mid + half * x, scratch);
        for (s, &v) in acc.iter_mut().zip(scratch.iter()) {
            *s += w * v;
        }
    }
    for s in acc.iter_mut() {
        *s *= half;
    }
}

/// Integrate a vector-valued integrand over [a, b] to absolute tolerance
/// `abs_tol` on the sum of component errors.
pub fn integrate_adaptive_vec<F>(mut f: F, a: f64, b: f64, abs_tol: f64, dim: usize) -> Vec<f64>
where
    F: FnMut(f64, &mut [f64]),
{
    let mut total = vec![0.0; dim];
    if a == b || dim == 0 {
        return total;
    }
    let mut scratch = vec![0.0; dim];
    let mut coarse = vec![0.0; dim];
    let mut fine = vec![0.0; dim];
    let width = b - a;
    // (interval, depth)
    let mut stack = vec![(a, b, 0u32)];
    while let Some((lo, hi, depth)) = stack.pop() {
        apply_rule(&mut f, lo, hi, rule7(), &mut scratch, &mut coarse);
        apply_rule(&mut f, lo, hi, rule15(), &mut scratch, &mut fine);
        let err: f64 = coarse
            .iter()
            .zip(fine.iter())
            .map(|(c, f)| (c - f).abs())
            .sum();
        let local_tol = abs_tol * ((hi - lo) / width).max(1e-3);
        if err <= local_tol || depth >= 48 {
            for (t, &v) in total.iter_mut().zip(fine.iter()) {
                *t += v;
            }
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    total
}
