//! Values checked against independent hand derivations.

use std::f64::consts::TAU;

use isoweingarten::lw::{self, CaseTag};
use isoweingarten::numeric::fd;
use isoweingarten::surface::{DerivativeMode, Jet, PointGrid};
use isoweingarten::*;

fn unit_square() -> Domain {
    Domain::rect(Interval::new(0.0, 2.0), Interval::new(0.0, 2.0))
}

/// `z = u^4 + v^3` with an exact jet: K = 72 u^2 v, H = 12 u^2 + 6 v.
struct QuarticCubic;

impl surface::Chart for QuarticCubic {
    fn point(&self, u: f64, v: f64) -> Point3 {
        Point3::new(u, v, u.powi(4) + v.powi(3))
    }

    fn jet(&self, u: f64, v: f64) -> Option<Jet> {
        Some(Jet {
            p: self.point(u, v),
            du: Point3::new(1.0, 0.0, 4.0 * u.powi(3)),
            dv: Point3::new(0.0, 1.0, 3.0 * v * v),
            duu: Point3::new(0.0, 0.0, 12.0 * u * u),
            duv: Point3::ORIGIN,
            dvv: Point3::new(0.0, 0.0, 6.0 * v),
        })
    }
}

#[test]
fn graph_curvatures_match_hand_values() {
    let exact = ParamSurface::new(QuarticCubic, unit_square());
    let (k, h) = exact.curvatures(1.0, 1.0, CurvatureConvention::Paper).unwrap();
    assert_eq!((k, h), (72.0, 18.0));
    let (_, half) = exact.curvatures(1.0, 1.0, CurvatureConvention::Half).unwrap();
    assert_eq!(half, 9.0);

    let fd_only = exact.clone().with_mode(DerivativeMode::FiniteDifference);
    let (kf, hf) = fd_only.curvatures(1.0, 1.0, CurvatureConvention::Paper).unwrap();
    assert!((kf - 72.0).abs() < 1e-5 * 72.0, "{kf}");
    assert!((hf - 18.0).abs() < 1e-5 * 18.0, "{hf}");
}

#[test]
fn separable_graph_has_vanishing_jacobian() {
    // K = 12 v and H = 2 + 6 v both depend on v alone
    let s = ParamSurface::graph(|u, v| u * u + v * v * v, unit_square());
    let j = s.weingarten_jacobian(1.0, 1.0, fd::jacobian_step(1.0), CurvatureConvention::Paper).unwrap();
    assert!(j.abs() < 1e-4, "{j}");
}

#[test]
fn non_weingarten_graph_jacobian() {
    // 864 u v - 1728 u^3 at (1, 1)
    let analytic = ParamSurface::new(QuarticCubic, unit_square());
    let j = analytic.weingarten_jacobian(1.0, 1.0, fd::jacobian_step(1.0), CurvatureConvention::Paper).unwrap();
    assert!((j + 864.0).abs() < 1e-2, "{j}");
    let graph = ParamSurface::graph(|u, v| u.powi(4) + v.powi(3), unit_square());
    let j = graph.weingarten_jacobian(1.0, 1.0, fd::jacobian_step(1.0), CurvatureConvention::Paper).unwrap();
    assert!((j + 864.0).abs() < 1e-2, "{j}");
}

#[test]
fn sampled_forms_converge_at_second_order() {
    let p = lw::profile_case_i(1.0, 1.0, Branch::Plus).unwrap();
    let s = make_rotational(&p, Orientation::Xz).unwrap().into_surface();
    let (u0, v0) = (1.3, 0.7);
    let exact = s.fundamental_forms(u0, v0).unwrap();
    let err = |h: f64| {
        let grid = PointGrid::sample(&s, u0 - h, v0 - h, h, h, 3, 3);
        let ff = fd_oracle_forms(&grid, 1, 1, h, h).unwrap();
        [ff.e - exact.e, ff.f - exact.f, ff.g - exact.g, ff.l - exact.l, ff.m - exact.m, ff.n - exact.n]
            .iter()
            .fold(0.0f64, |a, d| a.max(d.abs()))
    };
    let (e2, e1) = (err(2e-3), err(1e-3));
    assert!(e1 <= 1e-5, "{e1}");
    let ratio = e2 / e1;
    assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
}

#[test]
fn sampled_forms_refuse_boundary_nodes() {
    let s = ParamSurface::graph(|u, v| u * v, unit_square());
    let grid = PointGrid::sample(&s, 0.5, 0.5, 0.1, 0.1, 4, 4);
    assert!(matches!(fd_oracle_forms(&grid, 0, 1, 0.1, 0.1), Err(Error::Stencil { .. })));
    assert!(matches!(fd_oracle_forms(&grid, 1, 3, 0.1, 0.1), Err(Error::Stencil { .. })));
    assert!(fd_oracle_forms(&grid, 2, 2, 0.1, 0.1).is_ok());
}

#[test]
fn bounded_branch_matches_arcsine_form() {
    // m0 = 1, n0 = -2: g' = u + sqrt(1 - u^2),
    // g = u^2/2 + (u/2) sqrt(1 - u^2) + asin(u)/2 + const
    let p = lw::profile_case_iii(1.0, -2.0, 1.0, Branch::Plus).unwrap();
    let iv = p.interval();
    assert!(iv.hi < 1.0 && iv.hi > 1.0 - 1e-5);
    let closed = |u: f64| 0.5 * u * u + 0.5 * u * (1.0 - u * u).sqrt() + 0.5 * u.asin();
    let u_ref = 0.3;
    let offset = p.g(u_ref).unwrap() - closed(u_ref);
    for k in 1..100 {
        let u = iv.lo + iv.width() * k as f64 / 100.0;
        let d = p.eval(u).unwrap();
        assert!((d.f - closed(u) - offset).abs() < 1e-10, "u={u}");
        assert!((d.df - u - (1.0 - u * u).sqrt()).abs() < 1e-13);
    }
}

#[test]
fn hand_built_profiles() {
    // g' = 2u + 2 sqrt(1 + u^2): first family with m0 = 2, C = 4
    let p = lw::profile_case_i(2.0, 4.0, Branch::Plus).unwrap();
    let d = p.eval(1.0).unwrap();
    assert!((d.df - (2.0 + 2.0 * 2f64.sqrt())).abs() < 1e-14);
    assert!((d.ddf - (2.0 + 2f64.sqrt())).abs() < 1e-14);

    // paraboloid family: K = m0^2, H = 2 m0 everywhere
    let p = lw::profile_case_ii(0.5, 0.0).unwrap();
    for u in [0.1, 1.0, 3.0] {
        let (k, h) = rotational_curvatures(&p, u).unwrap();
        assert_eq!((k, h), (0.25, 1.0));
    }
}

#[test]
fn classification_table() {
    let tags = |m0, n0| classify(m0, n0).unwrap().tags;
    assert_eq!(tags(1.0, 0.0), vec![CaseTag::I]);
    assert_eq!(tags(0.5, -0.25), vec![CaseTag::II]);
    assert_eq!(tags(1.0, 3.0), vec![CaseTag::III]);
    assert_eq!(tags(1.0, -5.0), vec![CaseTag::IIIBounded]);
    assert!(matches!(classify(0.0, 1.0), Err(Error::OutOfScope(_))));
}

#[test]
fn parabolic_sphere_curvatures() {
    let s = ParabolicSphere::new(0.5, 1.0, -2.0, 3.0).unwrap();
    let surf = parabolic_sphere_surface(&s);
    for (u, v) in [(0.0, 0.0), (1.0, -2.0), (10.0, 3.5)] {
        let (k, h) = surf.curvatures(u, v, CurvatureConvention::Paper).unwrap();
        assert_eq!((k, h), (0.25, 1.0));
    }
    assert!(ParabolicSphere::new(0.0, 1.0, 1.0, 1.0).is_err());
}

#[test]
fn rotational_chart_agrees_with_profile_formulas() {
    let p = lw::profile_case_iii(-1.0, 3.0, 1.0, Branch::Minus).unwrap();
    for o in [Orientation::Xz, Orientation::Yz] {
        let s = make_rotational(&p, o).unwrap();
        for &u in &[0.4, 0.9, 1.7] {
            let (k0, h0) = rotational_curvatures(&p, u).unwrap();
            for k in 0..8 {
                let v = TAU * k as f64 / 8.0;
                let (k1, h1) = s.surface().curvatures(u, v, CurvatureConvention::Paper).unwrap();
                assert!((k1 - k0).abs() <= 1e-12 * k0.abs().max(1.0));
                assert!((h1 - h0).abs() <= 1e-12 * h0.abs().max(1.0));
            }
        }
    }
}
