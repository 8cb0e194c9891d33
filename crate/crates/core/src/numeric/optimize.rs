//! Derivative-free optimizers: golden-section line search and
//! Nelder–Mead simplex, plus a finite-difference Hessian for
//! maximum-likelihood covariance estimates.

use nalgebra::DMatrix;

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Locate the maximum of a unimodal function on [a, b] by golden-section
/// search; returns (argmax, max).
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

#[derive(Debug, Clone)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimize `f` with the Nelder–Mead simplex method.
///
/// `scale` sets the initial simplex edge per coordinate. Converges when
/// the simplex function spread falls below `tol` (absolute).
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    scale: f64,
    max_iter: usize,
    tol: f64,
) -> NelderMeadResult {
    let n = x0.len();
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += scale;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        iterations += 1;
        // order by value
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        let best = order[0];
        let worst = order[n];
        let second_worst = order[n - 1];

        if (values[worst] - values[best]).abs() < tol {
            converged = true;
            break;
        }

        // centroid of all but worst
        let mut centroid = vec![0.0; n];
        for (idx, v) in simplex.iter().enumerate() {
            if idx == worst {
                continue;
            }
            for (c, &x) in centroid.iter_mut().zip(v.iter()) {
                *c += x / n as f64;
            }
        }

        let blend = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(simplex[worst].iter())
                .map(|(&c, &w)| c + t * (c - w))
                .collect()
        };

        let reflected = blend(alpha);
        let fr = f(&reflected);
        if fr < values[best] {
            let expanded = blend(gamma);
            let fe = f(&expanded);
            if fe < fr {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
        } else if fr < values[second_worst] {
            simplex[worst] = reflected;
            values[worst] = fr;
        } else {
            let contracted = blend(-rho);
            let fc = f(&contracted);
            if fc < values[worst] {
                simplex[worst] = contracted;
                values[worst] = fc;
            } else {
                // shrink toward best
                let best_point = simplex[best].clone();
                for idx in 0..=n {
                    if idx == best {
                        continue;
                    }
                    for (x, &b) in simplex[idx].iter_mut().zip(best_point.iter()) {
                        *x = b + sigma * (*x - b);
                    }
                    values[idx] = f(&simplex[idx]);
                }
            }
        }
    }

    let best_idx = (0..=n)
        .min_by(|&i, &j| values[i].total_cmp(&values[j]))
        .unwrap();
    NelderMeadResult {
        x: simplex[best_idx].clone(),
        fx: values[best_idx],
        iterations,
        converged,
    }
}

/// Central-difference Hessian of a scalar function.
pub fn numerical_hessian<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x: &[f64],
    step: f64,
) -> DMatrix<f64> {
    let n = x.len();
    let mut h = DMatrix::zeros(n, n);
    let f0 = f(x);
    let mut xp = x.to_vec();
    for i in 0..n {
        for j in i..n {
            let hi = step * x[i].abs().max(1.0);
            let hj = step * x[j].abs().max(1.0);
            let value = if i == j {
                xp.copy_from_slice(x);
                xp[i] = x[i] + hi;
                let fp = f(&xp);
                xp[i] = x[i] - hi;
                let fm = f(&xp);
                (fp - 2.0 * f0 + fm) / (hi * hi)
            } else {
                xp.copy_from_slice(x);
                xp[i] = x[i] + hi;
                xp[j] = x[j] + hj;
                let fpp = f(&xp);
                xp[j] = x[j] - hj;
                let fpm = f(&xp);
                xp[i] = x[i] - hi;
                xp[j] = x[j] + hj;
                let fmp = f(&xp);
                xp[j] = x[j] - hj;
                let fmm = f(&xp);
                (fpp - fpm - fmp + fmm) / (4.0 * hi * hj)
            };
            h[(i, j)] = value;
            h[(j, i)] = value;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_finds_parabola_peak() {
        let (x, fx) = golden_section_max(|x| 3.0 - (x - 1.7).powi(2), 0.0, 5.0, 1e-10);
        assert!((x - 1.7).abs() < 1e-8);
        assert!((fx - 3.0).abs() < 1e-12);
    }

    #[test]
    fn nelder_mead_minimizes_rosenbrock() {
        let rosen = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let r = nelder_mead(rosen, &[-1.2, 1.0], 0.5, 5000, 1e-14);
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-5, "x = {:?}", r.x);
        assert!((r.x[1] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn hessian_of_quadratic() {
        let f = |x: &[f64]| 2.0 * x[0] * x[0] + 3.0 * x[0] * x[1] + 5.0 * x[1] * x[1];
        let h = numerical_hessian(f, &[0.3, -0.2], 1e-4);
        assert!((h[(0, 0)] - 4.0).abs() < 1e-5);
        assert!((h[(0, 1)] - 3.0).abs() < 1e-5);
        assert!((h[(1, 1)] - 10.0).abs() < 1e-5);
    }
}
