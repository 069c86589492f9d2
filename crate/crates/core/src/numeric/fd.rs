//! Central finite-difference stencils.

/// Step for differentiating chart positions: `1e-4 * max(1, |x|)`.
pub fn jet_step(x: f64) -> f64 {
    1e-4 * x.abs().max(1.0)
}

/// Step for differentiating `K` and `H`: `1e-2 * max(1, |x|)`.
///
/// `K` and `H` carry a rounding jitter of a few ulps relative (the computed
/// `cos² + sin²` is not exactly one), so the noise in a central difference
/// is about `eps * |K| / h`. For steep profiles (`|K| ~ 1e4`) a `1e-4` step
/// leaves the Jacobian of a surface of revolution at `~2e-5` instead of zero.
pub fn jacobian_step(x: f64) -> f64 {
    1e-2 * x.abs().max(1.0)
}

pub fn central_first(fm: f64, fp: f64, h: f64) -> f64 {
    (fp - fm) / (2.0 * h)
}

pub fn central_second(fm: f64, f0: f64, fp: f64, h: f64) -> f64 {
    (fp - 2.0 * f0 + fm) / (h * h)
}

/// Mixed partial from the four diagonal neighbours.
pub fn central_mixed(fpp: f64, fpm: f64, fmp: f64, fmm: f64, hu: f64, hv: f64) -> f64 {
    (fpp - fpm - fmp + fmm) / (4.0 * hu * hv)
}

/// First and second derivative at node `i` of samples on a strictly
/// increasing, possibly non-uniform grid. Interior nodes use the three-point
/// central formulas; the end nodes use second-order one-sided stencils.
pub fn nonuniform_derivs(x: &[f64], y: &[f64], i: usize) -> (f64, f64) {
    let n = x.len();
    debug_assert!(n >= 4 && y.len() == n);
    if i == 0 {
        let d1 = lagrange3_first(&x[0..3], &y[0..3], 0);
        let d2 = lagrange4_second(&x[0..4], &y[0..4], 0);
        (d1, d2)
    } else if i == n - 1 {
        let d1 = lagrange3_first(&x[n - 3..], &y[n - 3..], 2);
        let d2 = lagrange4_second(&x[n - 4..], &y[n - 4..], 3);
        (d1, d2)
    } else {
        let (d1, d2) = (
            lagrange3_first(&x[i - 1..=i + 1], &y[i - 1..=i + 1], 1),
            lagrange3_second(&x[i - 1..=i + 1], &y[i - 1..=i + 1]),
        );
        (d1, d2)
    }
}

// Derivative of the quadratic interpolant through three points, at point k.
#[allow(clippy::needless_range_loop)]
fn lagrange3_first(x: &[f64], y: &[f64], k: usize) -> f64 {
    let t = x[k];
    let mut acc = 0.0;
    for j in 0..3 {
        let mut denom = 1.0;
        let mut num = 0.0;
        for m in 0..3 {
            if m != j {
                denom *= x[j] - x[m];
                let mut prod = 1.0;
                for l in 0..3 {
                    if l != j && l != m {
                        prod *= t - x[l];
                    }
                }
                num += prod;
            }
        }
        acc += y[j] * num / denom;
    }
    acc
}

fn lagrange3_second(x: &[f64], y: &[f64]) -> f64 {
    let mut acc = 0.0;
    for j in 0..3 {
        let mut denom = 1.0;
        for m in 0..3 {
            if m != j {
                denom *= x[j] - x[m];
            }
        }
        acc += 2.0 * y[j] / denom;
    }
    acc
}

// Second derivative of the cubic interpolant through four points, at point k.
// A three-point one-sided second difference is only first order, so the end
// nodes use four points to stay second order.
fn lagrange4_second(x: &[f64], y: &[f64], k: usize) -> f64 {
    let t = x[k];
    let mut acc = 0.0;
    for j in 0..4 {
        let others: Vec<f64> = (0..4).filter(|&m| m != j).map(|m| x[m]).collect();
        let denom: f64 = others.iter().map(|&xm| x[j] - xm).product();
        // d²/dt² of (t-a)(t-b)(t-c) = 2[(t-a)+(t-b)+(t-c)]
        let num = 2.0 * others.iter().map(|&xm| t - xm).sum::<f64>();
        acc += y[j] * num / denom;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_quadratics_nonuniform() {
        let x = [0.0, 0.1, 0.35, 0.4, 0.9, 1.0];
        let y: Vec<f64> = x.iter().map(|t| 3.0 * t * t - t + 2.0).collect();
        for i in 0..x.len() {
            let (d1, d2) = nonuniform_derivs(&x, &y, i);
            assert!((d1 - (6.0 * x[i] - 1.0)).abs() < 1e-11, "d1 at {i}");
            assert!((d2 - 6.0).abs() < 1e-9, "d2 at {i}");
        }
    }

    #[test]
    fn ends_are_second_order() {
        let err = |n: usize| {
            let x: Vec<f64> = (0..n).map(|k| 1.0 + k as f64 / (n - 1) as f64).collect();
            let y: Vec<f64> = x.iter().map(|t| t.sin()).collect();
            let (d1, d2) = nonuniform_derivs(&x, &y, 0);
            ((d1 - 1f64.cos()).abs(), (d2 + 1f64.sin()).abs())
        };
        let (a1, a2) = err(21);
        let (b1, b2) = err(41);
        assert!(a1 / b1 > 3.5 && a2 / b2 > 3.5, "{} {}", a1 / b1, a2 / b2);
    }

    #[test]
    fn central_stencils() {
        let h = 1e-3;
        let f = |x: f64| x.exp();
        assert!((central_first(f(-h), f(h), h) - 1.0).abs() < 1e-6);
        assert!((central_second(f(-h), f(0.0), f(h), h) - 1.0).abs() < 1e-6);
    }
}
