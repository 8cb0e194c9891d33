//! Numerical building blocks: quadrature, special functions, optimizers.

pub mod bessel;
pub mod lm;
pub mod optimize;
pub mod quadrature;

/// Table of ln(n!) for n = 0..=n_max.
pub fn ln_factorial_table(n_max: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(n_max + 1);
    table.push(0.0);
    for n in 1..=n_max {
        table.push(table[n - 1] + (n as f64).ln());
    }
    table
}

/// Fill `out[n]` with the Poisson pmf `P(n; lambda)` for n = 0..out.len().
///
/// Computed in log space so large means do not underflow term by term.
pub fn poisson_pmf_into(lambda: f64, ln_fact: &[f64], out: &mut [f64]) {
    debug_assert!(ln_fact.len() >= out.len());
    if lambda == 0.0 {
        out.fill(0.0);
        if !out.is_empty() {
            out[0] = 1.0;
        }
        return;
    }
    let ln_lambda = lambda.ln();
    for (n, slot) in out.iter_mut().enumerate() {
        *slot = (n as f64 * ln_lambda - lambda - ln_fact[n]).exp();
    }
}
