//! Surfaces of revolution about the isotropic axis.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::iso::Point3;
use crate::profile::{Interval, Profile};
use crate::surface::{Chart, Domain, Jet, ParamSurface};

/// Plane holding the profile curve before it is rotated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    /// `(u cos v, u sin v, g(u))`
    #[default]
    Xz,
    /// `(-u sin v, u cos v, g(u))`
    Yz,
}

#[derive(Debug, Clone)]
pub struct RotationalSurface {
    profile: Profile,
    orientation: Orientation,
    surface: ParamSurface,
}

struct RotationalChart {
    profile: Profile,
    orientation: Orientation,
}

impl Chart for RotationalChart {
    fn point(&self, u: f64, v: f64) -> Point3 {
        let g = self.profile.eval_unchecked(u).f;
        let (s, c) = v.sin_cos();
        match self.orientation {
            Orientation::Xz => Point3::new(u * c, u * s, g),
            Orientation::Yz => Point3::new(-u * s, u * c, g),
        }
    }

    fn jet(&self, u: f64, v: f64) -> Option<Jet> {
        let d = self.profile.eval_unchecked(u);
        let (s, c) = v.sin_cos();
        Some(match self.orientation {
            Orientation::Xz => Jet {
                p: Point3::new(u * c, u * s, d.f),
                du: Point3::new(c, s, d.df),
                dv: Point3::new(-u * s, u * c, 0.0),
                duu: Point3::new(0.0, 0.0, d.ddf),
                duv: Point3::new(-s, c, 0.0),
                dvv: Point3::new(-u * c, -u * s, 0.0),
            },
            Orientation::Yz => Jet {
                p: Point3::new(-u * s, u * c, d.f),
                du: Point3::new(-s, c, d.df),
                dv: Point3::new(-u * c, -u * s, 0.0),
                duu: Point3::new(0.0, 0.0, d.ddf),
                duv: Point3::new(-c, -s, 0.0),
                dvv: Point3::new(u * s, -u * c, 0.0),
            },
        })
    }
}

/// Builds the surface of revolution of `profile`; `v` is unrestricted and
/// `u` ranges over the profile's interval.
pub fn make_rotational(profile: &Profile, orientation: Orientation) -> Result<RotationalSurface> {
    let iv = profile.interval();
    if iv.is_empty() || iv.lo >= iv.hi {
        return Err(Error::EmptyDomain(format!("profile interval {iv}")));
    }
    let domain = Domain { u: iv, v: Interval::new(0.0, TAU), v_periodic: true };
    let chart = RotationalChart { profile: profile.clone(), orientation };
    Ok(RotationalSurface { profile: profile.clone(), orientation, surface: ParamSurface::new(chart, domain) })
}

impl RotationalSurface {
    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn surface(&self) -> &ParamSurface {
        &self.surface
    }

    pub fn into_surface(self) -> ParamSurface {
        self.surface
    }
}

/// Closed-form `(K, H) = (g'g''/u, g'/u + g'')`.
pub fn rotational_curvatures(p: &Profile, u: f64) -> Result<(f64, f64)> {
    if !(u > 0.0) {
        return Err(Error::InvalidParameter(format!("u={u} must be positive")));
    }
    let d = p.eval(u)?;
    Ok((d.df * d.ddf / u, d.df / u + d.ddf))
}

/// Checks that the `xz`- and `yz`-rotations of `p` share the first
/// fundamental form `E = 1`, `F = 0`, `G = u²` at 100 sampled points.
pub fn isometry_check(p: &Profile) -> bool {
    let (Ok(a), Ok(b)) = (make_rotational(p, Orientation::Xz), make_rotational(p, Orientation::Yz)) else {
        return false;
    };
    let iv = p.interval();
    let hi = if iv.hi.is_finite() { iv.hi } else { iv.lo + 10.0 };
    let mut rng = ChaCha8Rng::seed_from_u64(0x1507);
    (0..100).all(|_| {
        let u = rng.gen_range(iv.lo..=hi);
        let v = rng.gen_range(0.0..TAU);
        let (Ok(fa), Ok(fb)) = (a.surface.fundamental_forms(u, v), b.surface.fundamental_forms(u, v)) else {
            return false;
        };
        let tol = 1e-12 * u.max(1.0).powi(2);
        let same = (fa.e - fb.e).abs() <= tol && (fa.f - fb.f).abs() <= tol && (fa.g - fb.g).abs() <= tol;
        same && (fa.e - 1.0).abs() <= tol && fa.f.abs() <= tol && (fa.g - u * u).abs() <= tol
    })
}
