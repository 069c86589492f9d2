//! Parametric surfaces in isotropic space and their curvature invariants.
//!
//! The first fundamental form is the metric induced by the top view,
//! `E = x_u² + y_u²`, `F = x_u x_v + y_u y_v`, `G = x_v² + y_v²`. The second
//! fundamental form is taken against the isotropic normal `(0, 0, 1)`: each
//! second partial is stripped of its component in the tangent plane (solved
//! in the top view) and the remaining `z` is kept. For a graph
//! `z = f(x, y)` this gives `L = f_xx`, `M = f_xy`, `N = f_yy`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::iso::{IsoMotion, ParabolicSphere, Point3};
use crate::numeric::fd;
use crate::profile::Interval;

/// Threshold on `|det ∂(x,y)/∂(u,v)|` below which a point is rejected.
pub const ADMISSIBILITY_EPS: f64 = 1e-10;

/// A point of the chart with its first and second partial derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub p: Point3,
    pub du: Point3,
    pub dv: Point3,
    pub duu: Point3,
    pub duv: Point3,
    pub dvv: Point3,
}

impl Jet {
    /// Signed Jacobian of the top-view map `(u, v) ↦ (x, y)`.
    pub fn top_view_det(&self) -> f64 {
        self.du.x * self.dv.y - self.du.y * self.dv.x
    }
}

/// A map `(u, v) ↦ (x, y, z)`, optionally with analytic derivatives.
pub trait Chart: Send + Sync {
    fn point(&self, u: f64, v: f64) -> Point3;

    fn jet(&self, _u: f64, _v: f64) -> Option<Jet> {
        None
    }
}

impl<F> Chart for F
where
    F: Fn(f64, f64) -> Point3 + Send + Sync,
{
    fn point(&self, u: f64, v: f64) -> Point3 {
        self(u, v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DerivativeMode {
    /// Use the chart's analytic jet, falling back to differences when it has none.
    #[default]
    Analytic,
    FiniteDifference,
}

/// Rectangular parameter domain. When `v_periodic` is set the chart is
/// defined for every `v` and only `u` is range-checked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub u: Interval,
    pub v: Interval,
    pub v_periodic: bool,
}

impl Domain {
    pub fn rect(u: Interval, v: Interval) -> Self {
        Domain { u, v, v_periodic: false }
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        self.u.contains(u) && (self.v_periodic || self.v.contains(v))
    }
}

#[derive(Clone)]
pub struct ParamSurface {
    chart: Arc<dyn Chart>,
    domain: Domain,
    mode: DerivativeMode,
}

impl std::fmt::Debug for ParamSurface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ParamSurface").field("domain", &self.domain).field("mode", &self.mode).finish_non_exhaustive()
    }
}

impl ParamSurface {
    pub fn new<C: Chart + 'static>(chart: C, domain: Domain) -> Self {
        Self::from_arc(Arc::new(chart), domain)
    }

    pub fn from_arc(chart: Arc<dyn Chart>, domain: Domain) -> Self {
        ParamSurface { chart, domain, mode: DerivativeMode::Analytic }
    }

    /// Graph chart `(u, v) ↦ (u, v, f(u, v))` differentiated numerically.
    pub fn graph<F>(f: F, domain: Domain) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(move |u: f64, v: f64| Point3::new(u, v, f(u, v)), domain).with_mode(DerivativeMode::FiniteDifference)
    }

    pub fn with_mode(mut self, mode: DerivativeMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn mode(&self) -> DerivativeMode {
        self.mode
    }

    pub fn point(&self, u: f64, v: f64) -> Point3 {
        self.chart.point(u, v)
    }

    /// The image of this surface under an isotropic motion.
    pub fn moved(&self, m: IsoMotion) -> ParamSurface {
        ParamSurface {
            chart: Arc::new(MovedChart { motion: m, inner: self.chart.clone() }),
            domain: self.domain,
            mode: self.mode,
        }
    }

    pub fn jet(&self, u: f64, v: f64) -> Jet {
        if self.mode == DerivativeMode::Analytic {
            if let Some(j) = self.chart.jet(u, v) {
                return j;
            }
        }
        fd_jet(self.chart.as_ref(), u, v)
    }

    pub fn fundamental_forms(&self, u: f64, v: f64) -> Result<FundamentalForms> {
        if !self.domain.contains(u, v) {
            return Err(Error::OutOfDomain { u, v });
        }
        FundamentalForms::from_jet(&self.jet(u, v), u, v)
    }

    pub fn curvatures(&self, u: f64, v: f64, conv: CurvatureConvention) -> Result<(f64, f64)> {
        curvatures(&self.fundamental_forms(u, v)?, conv)
    }

    /// Central-difference estimate of `det ∂(K, H)/∂(u, v)` with step `h`.
    /// Requires the `2h` neighbourhood of `(u, v)` to lie in the domain.
    pub fn weingarten_jacobian(&self, u: f64, v: f64, h: f64, conv: CurvatureConvention) -> Result<f64> {
        if !(h > 0.0) {
            return Err(Error::InvalidParameter(format!("stencil step {h} must be positive")));
        }
        for (du, dv) in [(2.0 * h, 0.0), (-2.0 * h, 0.0), (0.0, 2.0 * h), (0.0, -2.0 * h)] {
            if !self.domain.contains(u + du, v + dv) {
                return Err(Error::Stencil { at: format!("(u={u}, v={v}), h={h}") });
            }
        }
        let (kup, hup) = self.curvatures(u + h, v, conv)?;
        let (kum, hum) = self.curvatures(u - h, v, conv)?;
        let (kvp, hvp) = self.curvatures(u, v + h, conv)?;
        let (kvm, hvm) = self.curvatures(u, v - h, conv)?;
        let k_u = fd::central_first(kum, kup, h);
        let k_v = fd::central_first(kvm, kvp, h);
        let h_u = fd::central_first(hum, hup, h);
        let h_v = fd::central_first(hvm, hvp, h);
        Ok(k_u * h_v - k_v * h_u)
    }

    /// `K`, `H` and the Jacobian at the default stencil step.
    pub fn sample(&self, u: f64, v: f64, conv: CurvatureConvention) -> Result<CurvatureSample> {
        let (k, h) = self.curvatures(u, v, conv)?;
        let jac = self.weingarten_jacobian(u, v, fd::jacobian_step(u), conv)?;
        Ok(CurvatureSample { u, v, k, h, jac })
    }
}

pub fn fundamental_forms(s: &ParamSurface, u: f64, v: f64) -> Result<FundamentalForms> {
    s.fundamental_forms(u, v)
}

pub fn weingarten_jacobian(s: &ParamSurface, u: f64, v: f64, h: f64) -> Result<f64> {
    s.weingarten_jacobian(u, v, h, CurvatureConvention::default())
}

struct MovedChart {
    motion: IsoMotion,
    inner: Arc<dyn Chart>,
}

impl Chart for MovedChart {
    fn point(&self, u: f64, v: f64) -> Point3 {
        self.motion.apply(self.inner.point(u, v))
    }

    fn jet(&self, u: f64, v: f64) -> Option<Jet> {
        let j = self.inner.jet(u, v)?;
        let m = &self.motion;
        Some(Jet {
            p: m.apply(j.p),
            du: m.apply_vector(j.du),
            dv: m.apply_vector(j.dv),
            duu: m.apply_vector(j.duu),
            duv: m.apply_vector(j.duv),
            dvv: m.apply_vector(j.dvv),
        })
    }
}

/// Jet from a 9-point central stencil of chart positions.
fn fd_jet(c: &dyn Chart, u: f64, v: f64) -> Jet {
    let hu = fd::jet_step(u);
    let hv = fd::jet_step(v);
    let p = c.point(u, v);
    let pu = c.point(u + hu, v);
    let mu = c.point(u - hu, v);
    let pv = c.point(u, v + hv);
    let mv = c.point(u, v - hv);
    let pp = c.point(u + hu, v + hv);
    let pm = c.point(u + hu, v - hv);
    let mp = c.point(u - hu, v + hv);
    let mm = c.point(u - hu, v - hv);
    stencil_jet(p, [mu, pu], [mv, pv], [pp, pm, mp, mm], hu, hv)
}

fn stencil_jet(p: Point3, u_nb: [Point3; 2], v_nb: [Point3; 2], diag: [Point3; 4], hu: f64, hv: f64) -> Jet {
    let comp = |f: &dyn Fn(&Point3) -> f64| {
        (
            fd::central_first(f(&u_nb[0]), f(&u_nb[1]), hu),
            fd::central_first(f(&v_nb[0]), f(&v_nb[1]), hv),
            fd::central_second(f(&u_nb[0]), f(&p), f(&u_nb[1]), hu),
            fd::central_mixed(f(&diag[0]), f(&diag[1]), f(&diag[2]), f(&diag[3]), hu, hv),
            fd::central_second(f(&v_nb[0]), f(&p), f(&v_nb[1]), hv),
        )
    };
    let x = comp(&|q| q.x);
    let y = comp(&|q| q.y);
    let z = comp(&|q| q.z);
    Jet {
        p,
        du: Point3::new(x.0, y.0, z.0),
        dv: Point3::new(x.1, y.1, z.1),
        duu: Point3::new(x.2, y.2, z.2),
        duv: Point3::new(x.3, y.3, z.3),
        dvv: Point3::new(x.4, y.4, z.4),
    }
}

/// Coefficients of the first (`E`, `F`, `G`) and second (`L`, `M`, `N`)
/// fundamental forms at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
}

impl FundamentalForms {
    /// `(u, v)` only label the error.
    pub fn from_jet(j: &Jet, u: f64, v: f64) -> Result<Self> {
        let det = j.top_view_det();
        if !(det.abs() > ADMISSIBILITY_EPS) {
            return Err(Error::Admissibility { u, v, det });
        }
        let normal_part = |w: Point3| j.du.triple(j.dv, w) / det;
        Ok(FundamentalForms {
            e: j.du.x * j.du.x + j.du.y * j.du.y,
            f: j.du.x * j.dv.x + j.du.y * j.dv.y,
            g: j.dv.x * j.dv.x + j.dv.y * j.dv.y,
            l: normal_part(j.duu),
            m: normal_part(j.duv),
            n: normal_part(j.dvv),
        })
    }

    pub fn metric_det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }
}

/// Normalization of the isotropic mean curvature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CurvatureConvention {
    /// `H = (EN - 2FM + GL)/(EG - F²)`, so `H = g'/u + g''` on surfaces of revolution.
    #[default]
    Paper,
    /// Half of [`CurvatureConvention::Paper`].
    Half,
}

/// Relative curvature `K = (LN - M²)/(EG - F²)` and isotropic mean curvature `H`.
pub fn curvatures(ff: &FundamentalForms, conv: CurvatureConvention) -> Result<(f64, f64)> {
    let w = ff.metric_det();
    if !(w > 0.0) {
        return Err(Error::DegenerateMetric(w));
    }
    let k = (ff.l * ff.n - ff.m * ff.m) / w;
    let h = (ff.e * ff.n - 2.0 * ff.f * ff.m + ff.g * ff.l) / w;
    let h = match conv {
        CurvatureConvention::Paper => h,
        CurvatureConvention::Half => 0.5 * h,
    };
    Ok((k, h))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureSample {
    pub u: f64,
    pub v: f64,
    pub k: f64,
    pub h: f64,
    /// `det ∂(K, H)/∂(u, v)`.
    pub jac: f64,
}

/// Chart positions on a uniform `(u, v)` lattice, stored u-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointGrid {
    pub nu: usize,
    pub nv: usize,
    pub points: Vec<Point3>,
}

impl PointGrid {
    /// Samples `s` at `(u0 + i h_u, v0 + j h_v)`.
    pub fn sample(s: &ParamSurface, u0: f64, v0: f64, h_u: f64, h_v: f64, nu: usize, nv: usize) -> Self {
        let mut points = Vec::with_capacity(nu * nv);
        for i in 0..nu {
            for j in 0..nv {
                points.push(s.point(u0 + i as f64 * h_u, v0 + j as f64 * h_v));
            }
        }
        PointGrid { nu, nv, points }
    }

    pub fn at(&self, i: usize, j: usize) -> Point3 {
        self.points[i * self.nv + j]
    }
}

/// Fundamental forms at interior node `(i, j)` computed only from sampled
/// positions with second-order central differences.
pub fn fd_oracle_forms(grid: &PointGrid, i: usize, j: usize, h_u: f64, h_v: f64) -> Result<FundamentalForms> {
    if i == 0 || j == 0 || i + 1 >= grid.nu || j + 1 >= grid.nv {
        return Err(Error::Stencil { at: format!("grid node ({i}, {j}) of {}x{}", grid.nu, grid.nv) });
    }
    let jet = stencil_jet(
        grid.at(i, j),
        [grid.at(i - 1, j), grid.at(i + 1, j)],
        [grid.at(i, j - 1), grid.at(i, j + 1)],
        [grid.at(i + 1, j + 1), grid.at(i + 1, j - 1), grid.at(i - 1, j + 1), grid.at(i - 1, j - 1)],
        h_u,
        h_v,
    );
    FundamentalForms::from_jet(&jet, i as f64, j as f64)
}

struct SphereChart(ParabolicSphere);

impl Chart for SphereChart {
    fn point(&self, u: f64, v: f64) -> Point3 {
        Point3::new(u, v, self.0.height(u, v))
    }

    fn jet(&self, u: f64, v: f64) -> Option<Jet> {
        let (a, b, c, _) = self.0.coefficients();
        Some(Jet {
            p: self.point(u, v),
            du: Point3::new(1.0, 0.0, a * u + b),
            dv: Point3::new(0.0, 1.0, a * v + c),
            duu: Point3::new(0.0, 0.0, a),
            duv: Point3::ORIGIN,
            dvv: Point3::new(0.0, 0.0, a),
        })
    }
}

/// Graph chart of a parabolic i-sphere over the whole top-view plane.
pub fn parabolic_sphere_surface(s: &ParabolicSphere) -> ParamSurface {
    ParamSurface::new(SphereChart(*s), Domain::rect(Interval::REAL_LINE, Interval::REAL_LINE))
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Plane;
    impl Chart for Plane {
        fn point(&self, u: f64, v: f64) -> Point3 {
            Point3::new(u, v, 0.0)
        }

        fn jet(&self, u: f64, v: f64) -> Option<Jet> {
            let zero = Point3::ORIGIN;
            Some(Jet {
                p: self.point(u, v),
                du: Point3::new(1.0, 0.0, 0.0),
                dv: Point3::new(0.0, 1.0, 0.0),
                duu: zero,
                duv: zero,
                dvv: zero,
            })
        }
    }

    fn unit_square() -> Domain {
        Domain::rect(Interval::new(0.0, 1.0), Interval::new(0.0, 1.0))
    }

    #[test]
    fn plane_forms_and_curvature() {
        let s = ParamSurface::new(Plane, unit_square());
        let ff = s.fundamental_forms(0.5, 0.5).unwrap();
        assert_eq!((ff.e, ff.f, ff.g), (1.0, 0.0, 1.0));
        assert!(ff.l.abs() < 1e-12 && ff.m.abs() < 1e-12 && ff.n.abs() < 1e-12);
        let j = s.weingarten_jacobian(0.5, 0.5, 1e-3, CurvatureConvention::Paper).unwrap();
        assert_eq!(j, 0.0);
    }

    #[test]
    fn flat_forms_give_zero() {
        let ff = FundamentalForms { e: 1.0, f: 0.0, g: 1.0, l: 0.0, m: 0.0, n: 0.0 };
        assert_eq!(curvatures(&ff, CurvatureConvention::Paper).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn degenerate_metric_rejected() {
        let ff = FundamentalForms { e: 1.0, f: 1.0, g: 1.0, l: 1.0, m: 0.0, n: 1.0 };
        assert!(matches!(curvatures(&ff, CurvatureConvention::Paper), Err(Error::DegenerateMetric(_))));
    }

    #[test]
    fn half_convention() {
        let ff = FundamentalForms { e: 1.0, f: 0.0, g: 4.0, l: 1.0, m: 0.0, n: 4.0 };
        let (k, h) = curvatures(&ff, CurvatureConvention::Paper).unwrap();
        let (k2, h2) = curvatures(&ff, CurvatureConvention::Half).unwrap();
        assert_eq!((k, h), (1.0, 2.0));
        assert_eq!((k2, h2), (1.0, 1.0));
    }

    #[test]
    fn vertical_plane_is_not_admissible() {
        let s = ParamSurface::new(|u: f64, v: f64| Point3::new(u, 0.0, v), unit_square());
        assert!(matches!(s.fundamental_forms(0.5, 0.5), Err(Error::Admissibility { .. })));
    }

    #[test]
    fn sphere_chart() {
        let sphere = ParabolicSphere::new(0.5, 0.0, 0.0, 0.0).unwrap();
        let s = parabolic_sphere_surface(&sphere);
        assert_eq!(s.point(1.0, 0.0).z, 0.25);
        let shifted = parabolic_sphere_surface(&ParabolicSphere::new(1.0, 0.0, 0.0, 3.0).unwrap());
        assert_eq!(shifted.point(0.0, 0.0).z, 3.0);
        for (u, v) in [(0.0, 0.0), (1.0, -2.0), (0.3, 0.7)] {
            let (k, h) = s.curvatures(u, v, CurvatureConvention::Paper).unwrap();
            assert_eq!((k, h), (0.25, 1.0));
        }
    }

    #[test]
    fn stencil_must_fit_domain() {
        let s = ParamSurface::new(Plane, unit_square());
        assert!(matches!(
            s.weingarten_jacobian(0.001, 0.5, 1e-3, CurvatureConvention::Paper),
            Err(Error::Stencil { .. })
        ));
        assert!(matches!(s.fundamental_forms(2.0, 0.5), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn oracle_rejects_boundary_nodes() {
        let s = ParamSurface::new(Plane, unit_square());
        let grid = PointGrid::sample(&s, 0.0, 0.0, 0.1, 0.1, 5, 5);
        assert!(matches!(fd_oracle_forms(&grid, 0, 2, 0.1, 0.1), Err(Error::Stencil { .. })));
        assert!(matches!(fd_oracle_forms(&grid, 2, 4, 0.1, 0.1), Err(Error::Stencil { .. })));
        let ff = fd_oracle_forms(&grid, 2, 2, 0.1, 0.1).unwrap();
        assert!(ff.l.abs() < 1e-10 && ff.m.abs() < 1e-10 && ff.n.abs() < 1e-10);
    }
}
