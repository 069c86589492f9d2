//! Classical fixed-step fourth-order Runge-Kutta for two-component systems.

/// One RK4 step of `y' = f(t, y)`.
pub fn rk4_step<F>(f: &F, t: f64, y: [f64; 2], h: f64) -> [f64; 2]
where
    F: Fn(f64, [f64; 2]) -> [f64; 2],
{
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, axpy(y, 0.5 * h, k1));
    let k3 = f(t + 0.5 * h, axpy(y, 0.5 * h, k2));
    let k4 = f(t + h, axpy(y, h, k3));
    [
        y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ]
}

fn axpy(y: [f64; 2], a: f64, k: [f64; 2]) -> [f64; 2] {
    [y[0] + a * k[0], y[1] + a * k[1]]
}

/// Uniform node positions `t0, t0 + h, ...` reaching `t_end` exactly; the last
/// step is shortened when `h` does not divide the span.
pub fn step_nodes(t0: f64, t_end: f64, h: f64) -> Vec<f64> {
    let span = t_end - t0;
    let full = (span / h).floor() as usize;
    let mut nodes: Vec<f64> = (0..=full).map(|k| t0 + k as f64 * h).collect();
    let last = *nodes.last().unwrap_or(&t0);
    if t_end - last > 1e-12 * h.max(span.abs()) {
        nodes.push(t_end);
    } else if let Some(l) = nodes.last_mut() {
        *l = t_end;
    }
    nodes
}
