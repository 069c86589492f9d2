//! The isotropic ambient space: points, the i-distance, the six-parameter
//! motion group and parabolic i-spheres.
//!
//! Coordinates are affine `(x, y, z)`; `z` is the isotropic direction, so the
//! metric only sees the top view `(x, y)`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::profile::Interval;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Determinant of the 3x3 matrix with rows `self`, `b`, `c`.
    pub fn triple(self, b: Point3, c: Point3) -> f64 {
        self.x * (b.y * c.z - b.z * c.y) - self.y * (b.x * c.z - b.z * c.x) + self.z * (b.x * c.y - b.y * c.x)
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, s: f64) -> Point3 {
        Point3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Point3 {
    type Output = Point3;
    fn neg(self) -> Point3 {
        Point3::new(-self.x, -self.y, -self.z)
    }
}

/// Isotropic distance: the Euclidean distance of the top views. Vanishes
/// along isotropic (z-parallel) lines.
pub fn i_distance(p: Point3, q: Point3) -> f64 {
    (q.x - p.x).hypot(q.y - p.y)
}

/// An isotropic congruence transformation
///
/// ```text
/// x' = c1 + x cos c2 - y sin c2
/// y' = c3 + x sin c2 + y cos c2
/// z' = c4 + c5 x + c6 y + z
/// ```
///
/// `c2` is an angle in radians and is never reduced modulo 2π.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IsoMotion {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub c5: f64,
    pub c6: f64,
}

impl IsoMotion {
    pub const IDENTITY: IsoMotion = IsoMotion { c1: 0.0, c2: 0.0, c3: 0.0, c4: 0.0, c5: 0.0, c6: 0.0 };

    pub fn new(c1: f64, c2: f64, c3: f64, c4: f64, c5: f64, c6: f64) -> Self {
        IsoMotion { c1, c2, c3, c4, c5, c6 }
    }

    pub fn rotation(angle: f64) -> Self {
        IsoMotion { c2: angle, ..Self::IDENTITY }
    }

    pub fn is_finite(&self) -> bool {
        [self.c1, self.c2, self.c3, self.c4, self.c5, self.c6].iter().all(|c| c.is_finite())
    }

    pub fn apply(&self, p: Point3) -> Point3 {
        let (s, c) = self.c2.sin_cos();
        Point3::new(
            self.c1 + p.x * c - p.y * s,
            self.c3 + p.x * s + p.y * c,
            self.c4 + self.c5 * p.x + self.c6 * p.y + p.z,
        )
    }

    /// Action of the linear part on a tangent vector (translations dropped).
    pub fn apply_vector(&self, d: Point3) -> Point3 {
        let (s, c) = self.c2.sin_cos();
        Point3::new(d.x * c - d.y * s, d.x * s + d.y * c, self.c5 * d.x + self.c6 * d.y + d.z)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &IsoMotion) -> IsoMotion {
        let (s1, c1) = self.c2.sin_cos();
        let (s2, c2) = other.c2.sin_cos();
        // z row: c4 + (c5, c6)·(t2 + R2 p) + c4' + (c5', c6')·p + z
        IsoMotion {
            c1: self.c1 + other.c1 * c1 - other.c3 * s1,
            c2: self.c2 + other.c2,
            c3: self.c3 + other.c1 * s1 + other.c3 * c1,
            c4: self.c4 + self.c5 * other.c1 + self.c6 * other.c3 + other.c4,
            c5: self.c5 * c2 + self.c6 * s2 + other.c5,
            c6: -self.c5 * s2 + self.c6 * c2 + other.c6,
        }
    }

    /// Closed-form inverse: `m.inverse().compose(&m)` acts as the identity.
    pub fn inverse(&self) -> IsoMotion {
        let (s, c) = self.c2.sin_cos();
        // top view: p = R^T (p' - t)
        let c1 = -(self.c1 * c + self.c3 * s);
        let c3 = -(-self.c1 * s + self.c3 * c);
        // z = z' - c4 - (c5, c6)·p
        let c5 = -(self.c5 * c - self.c6 * s);
        let c6 = -(self.c5 * s + self.c6 * c);
        let c4 = -self.c4 - (self.c5 * c1 + self.c6 * c3);
        IsoMotion { c1, c2: -self.c2, c3, c4, c5, c6 }
    }
}

pub fn apply_motion(m: &IsoMotion, p: Point3) -> Point3 {
    m.apply(p)
}

pub fn compose_motions(m1: &IsoMotion, m2: &IsoMotion) -> IsoMotion {
    m1.compose(m2)
}

/// Value and first two derivatives of a planar graph `z = f(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivs {
    pub f: f64,
    pub df: f64,
    pub ddf: f64,
}

/// A planar curve given as a graph `z = f(x)` over an interval.
pub trait PlanarGraph {
    fn derivs(&self, x: f64) -> Derivs;
    fn domain(&self) -> Interval;
}

/// Polynomial `Σ coeffs[k] x^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    pub coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Polynomial { coeffs }
    }
}

impl PlanarGraph for Polynomial {
    fn derivs(&self, x: f64) -> Derivs {
        // Horner for p, p', p'' together
        let (mut f, mut df, mut ddf) = (0.0, 0.0, 0.0);
        for &a in self.coeffs.iter().rev() {
            ddf = ddf * x + 2.0 * df;
            df = df * x + f;
            f = f * x + a;
        }
        Derivs { f, df, ddf }
    }

    fn domain(&self) -> Interval {
        Interval::REAL_LINE
    }
}

/// Isotropic curvature of a planar graph, which is simply `f''(x0)`.
pub fn icircle_curvature<G: PlanarGraph + ?Sized>(f: &G, x0: f64) -> Result<f64> {
    if !f.domain().contains(x0) {
        return Err(Error::InvalidParameter(format!("x0={x0} outside the curve's domain")));
    }
    Ok(f.derivs(x0).ddf)
}

/// i-sphere of parabolic type `z = (A/2)(x² + y²) + Bx + Cy + D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolicSphere {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl ParabolicSphere {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if a == 0.0 {
            return Err(Error::NotASphere);
        }
        if ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("sphere coefficients must be finite".into()));
        }
        Ok(ParabolicSphere { a, b, c, d })
    }

    pub fn coefficients(&self) -> (f64, f64, f64, f64) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn height(&self, x: f64, y: f64) -> f64 {
        0.5 * self.a * (x * x + y * y) + self.b * x + self.c * y + self.d
    }
}
