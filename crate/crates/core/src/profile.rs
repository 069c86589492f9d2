//! Planar generating curves `u ↦ g(u)` for surfaces of revolution.
//!
//! A [`Profile`] carries `g`, `g'` and `g''` on a validity interval with
//! `u > 0`, and guarantees `g' ≠ 0` there.

use std::fmt;
use std::io::Read;
use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::iso::{Derivs, PlanarGraph, Polynomial};
use crate::numeric::fd;

/// Closed interval `[lo, hi]`; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const REAL_LINE: Interval = Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY };

    pub const fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn is_empty(&self) -> bool {
        !(self.lo <= self.hi)
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Where the profile's values come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    Integrated,
    Sampled,
}

/// Value and derivatives of a profile at a parameter.
pub trait ProfileCurve: Send + Sync {
    fn eval(&self, u: f64) -> Derivs;
}

impl<F> ProfileCurve for F
where
    F: Fn(f64) -> Derivs + Send + Sync,
{
    fn eval(&self, u: f64) -> Derivs {
        self(u)
    }
}

impl ProfileCurve for Polynomial {
    fn eval(&self, u: f64) -> Derivs {
        self.derivs(u)
    }
}

/// Number of Chebyshev probes used to sign-check `g'` at construction.
pub const DEFAULT_PROBES: usize = 257;

#[derive(Clone)]
pub struct Profile {
    curve: Arc<dyn ProfileCurve>,
    interval: Interval,
    provenance: Provenance,
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Profile")
            .field("interval", &self.interval)
            .field("provenance", &self.provenance)
            .finish_non_exhaustive()
    }
}

impl Profile {
    /// Builds a profile on a bounded interval, rejecting it when `g'`
    /// vanishes or changes sign at any of the default Chebyshev probes.
    pub fn new<C>(curve: C, interval: Interval, provenance: Provenance) -> Result<Self>
    where
        C: ProfileCurve + 'static,
    {
        Self::with_probes(Arc::new(curve), interval, provenance, DEFAULT_PROBES)
    }

    pub fn from_fn<F>(f: F, interval: Interval) -> Result<Self>
    where
        F: Fn(f64) -> Derivs + Send + Sync + 'static,
    {
        Self::new(f, interval, Provenance::ClosedForm)
    }

    pub fn from_polynomial(p: Polynomial, interval: Interval) -> Result<Self> {
        Self::new(p, interval, Provenance::ClosedForm)
    }

    pub fn with_probes(
        curve: Arc<dyn ProfileCurve>,
        interval: Interval,
        provenance: Provenance,
        probes: usize,
    ) -> Result<Self> {
        check_interval(&interval)?;
        if !interval.is_bounded() {
            return Err(Error::InvalidProfile(format!("interval {interval} must be bounded")));
        }
        let n = probes.max(2);
        let mut sign = 0.0;
        for k in 0..n {
            let t = 0.5 * (1.0 - (std::f64::consts::PI * k as f64 / (n - 1) as f64).cos());
            let u = interval.lo + t * interval.width();
            let d = curve.eval(u);
            if !(d.f.is_finite() && d.df.is_finite() && d.ddf.is_finite()) {
                return Err(Error::InvalidProfile(format!("non-finite value at u={u}")));
            }
            if d.df == 0.0 || (sign != 0.0 && d.df.signum() != sign) {
                return Err(Error::InvalidProfile(format!("g' vanishes or changes sign near u={u}")));
            }
            sign = d.df.signum();
        }
        Ok(Profile { curve, interval, provenance })
    }

    /// For curves whose domain and `g' ≠ 0` are established analytically.
    pub(crate) fn trusted(curve: Arc<dyn ProfileCurve>, interval: Interval, provenance: Provenance) -> Result<Self> {
        check_interval(&interval)?;
        Ok(Profile { curve, interval, provenance })
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Value and derivatives at `u`; errors outside the validity interval.
    pub fn eval(&self, u: f64) -> Result<Derivs> {
        if !self.interval.contains(u) {
            return Err(Error::InvalidParameter(format!("u={u} outside profile interval {}", self.interval)));
        }
        Ok(self.curve.eval(u))
    }

    /// Evaluates without the interval check; callers own the precondition.
    pub fn eval_unchecked(&self, u: f64) -> Derivs {
        self.curve.eval(u)
    }

    pub fn g(&self, u: f64) -> Result<f64> {
        self.eval(u).map(|d| d.f)
    }

    /// The same curve on `self.interval ∩ [lo, hi]`.
    pub fn restrict(&self, lo: f64, hi: f64) -> Result<Profile> {
        let iv = self.interval.intersect(&Interval::new(lo, hi));
        if iv.is_empty() || iv.lo == iv.hi {
            return Err(Error::EmptyDomain(format!(
                "requested [{lo}, {hi}] does not meet profile interval {}",
                self.interval
            )));
        }
        Ok(Profile { curve: self.curve.clone(), interval: iv, provenance: self.provenance })
    }

    /// A profile from samples `(u_i, g_i)`. Derivatives at the nodes come
    /// from central differences (second-order one-sided at the ends); between
    /// nodes `g` and `g'` are cubic Hermite interpolants and `g''` is linear.
    pub fn sampled(u: Vec<f64>, g: Vec<f64>) -> Result<Profile> {
        if u.len() != g.len() {
            return Err(Error::Parse("u and g columns differ in length".into()));
        }
        if u.len() < MIN_SAMPLES {
            return Err(Error::Parse(format!("need at least {MIN_SAMPLES} samples, got {}", u.len())));
        }
        if u.iter().chain(g.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Parse("non-finite sample".into()));
        }
        if u.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Parse("u must be strictly increasing".into()));
        }
        if u[0] <= 0.0 {
            return Err(Error::Parse("u must be positive".into()));
        }
        let (dg, ddg): (Vec<f64>, Vec<f64>) = (0..u.len()).map(|i| fd::nonuniform_derivs(&u, &g, i)).unzip();
        let interval = Interval::new(u[0], u[u.len() - 1]);
        let curve = NodeCurve { u, g, dg, ddg };
        if curve.dg.contains(&0.0) || curve.dg.windows(2).any(|w| w[0].signum() != w[1].signum()) {
            return Err(Error::InvalidProfile("sampled g' vanishes or changes sign".into()));
        }
        Profile::with_probes(Arc::new(curve), interval, Provenance::Sampled, DEFAULT_PROBES)
    }

    /// Reads a CSV with header `u,g`.
    pub fn from_csv<R: Read>(reader: R) -> Result<Profile> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
        if headers.len() != 2 || &headers[0] != "u" || &headers[1] != "g" {
            return Err(Error::Parse(format!(
                "expected header `u,g`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut us = Vec::new();
        let mut gs = Vec::new();
        for row in rdr.deserialize::<SampleRow>() {
            let row = row.map_err(|e| Error::Parse(e.to_string()))?;
            us.push(row.u);
            gs.push(row.g);
        }
        Profile::sampled(us, gs)
    }
}

/// Minimum number of rows accepted from a sampled profile.
pub const MIN_SAMPLES: usize = 5;

#[derive(Deserialize)]
struct SampleRow {
    u: f64,
    g: f64,
}

fn check_interval(iv: &Interval) -> Result<()> {
    if iv.lo.is_nan() || iv.hi.is_nan() || iv.is_empty() || iv.lo == iv.hi {
        return Err(Error::EmptyDomain(format!("profile interval {iv}")));
    }
    if iv.lo <= 0.0 {
        return Err(Error::InvalidProfile(format!("profile interval {iv} must satisfy u > 0")));
    }
    Ok(())
}

/// Piecewise-Hermite curve through nodes carrying `g`, `g'` and `g''`.
pub(crate) struct NodeCurve {
    pub(crate) u: Vec<f64>,
    pub(crate) g: Vec<f64>,
    pub(crate) dg: Vec<f64>,
    pub(crate) ddg: Vec<f64>,
}

impl ProfileCurve for NodeCurve {
    fn eval(&self, x: f64) -> Derivs {
        let n = self.u.len();
        let k = match self.u.binary_search_by(|p| p.total_cmp(&x)) {
            Ok(i) => return Derivs { f: self.g[i], df: self.dg[i], ddf: self.ddg[i] },
            Err(0) => 0,
            Err(i) if i >= n => n - 2,
            Err(i) => i - 1,
        };
        let (u0, u1) = (self.u[k], self.u[k + 1]);
        let h = u1 - u0;
        let t = (x - u0) / h;
        let f = hermite(t, h, self.g[k], self.dg[k], self.g[k + 1], self.dg[k + 1]);
        let df = hermite(t, h, self.dg[k], self.ddg[k], self.dg[k + 1], self.ddg[k + 1]);
        let ddf = self.ddg[k] + t * (self.ddg[k + 1] - self.ddg[k]);
        Derivs { f, df, ddf }
    }
}

pub(crate) fn hermite(t: f64, h: f64, p0: f64, m0: f64, p1: f64, m1: f64) -> f64 {
    let t2 = t * t;
    let t3 = t2 * t;
    (2.0 * t3 - 3.0 * t2 + 1.0) * p0 + (t3 - 2.0 * t2 + t) * h * m0 + (-2.0 * t3 + 3.0 * t2) * p1 + (t3 - t2) * h * m1
}

impl PlanarGraph for Profile {
    fn derivs(&self, x: f64) -> Derivs {
        self.curve.eval(x)
    }

    fn domain(&self) -> Interval {
        self.interval
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(u: f64) -> Derivs {
        Derivs { f: 0.25 * u * u, df: 0.5 * u, ddf: 0.5 }
    }

    #[test]
    fn rejects_nonpositive_and_empty() {
        assert!(matches!(Profile::from_fn(quad, Interval::new(0.0, 1.0)), Err(Error::InvalidProfile(_))));
        assert!(matches!(Profile::from_fn(quad, Interval::new(2.0, 1.0)), Err(Error::EmptyDomain(_))));
        assert!(matches!(Profile::from_fn(quad, Interval::new(1.0, 1.0)), Err(Error::EmptyDomain(_))));
    }

    #[test]
    fn rejects_sign_change() {
        // g = (u-1)^2 has g'(1) = 0
        let p = Polynomial::new(vec![1.0, -2.0, 1.0]);
        assert!(matches!(Profile::from_polynomial(p, Interval::new(0.5, 2.0)), Err(Error::InvalidProfile(_))));
        let p = Polynomial::new(vec![0.0, 1.0, 0.0, 1.0]);
        assert!(Profile::from_polynomial(p, Interval::new(0.5, 2.0)).is_ok());
    }

    #[test]
    fn restrict_and_domain_errors() {
        let p = Profile::from_fn(quad, Interval::new(0.5, 3.0)).unwrap();
        let r = p.restrict(1.0, 10.0).unwrap();
        assert_eq!(r.interval(), Interval::new(1.0, 3.0));
        assert!(matches!(p.restrict(4.0, 5.0), Err(Error::EmptyDomain(_))));
        assert!(p.eval(0.1).is_err());
    }

    #[test]
    fn sampled_profile_hits_nodes_and_interpolates() {
        let us: Vec<f64> = (0..41).map(|k| 0.5 + 0.05 * k as f64).collect();
        let gs: Vec<f64> = us.iter().map(|u| u.powi(3)).collect();
        let p = Profile::sampled(us.clone(), gs).unwrap();
        assert_eq!(p.provenance(), Provenance::Sampled);
        let d = p.eval(us[10]).unwrap();
        assert_eq!(d.f, us[10].powi(3));
        assert!((d.df - 3.0 * us[10].powi(2)).abs() < 1e-2);
        assert!((d.ddf - 6.0 * us[10]).abs() < 1e-9);
        let mid = p.eval(1.234).unwrap();
        assert!((mid.f - 1.234f64.powi(3)).abs() < 1e-4);
    }

    #[test]
    fn csv_ingestion() {
        let text = "u,g\n1,1\n1.5,2.25\n2,4\n2.5,6.25\n3,9\n";
        let p = Profile::from_csv(text.as_bytes()).unwrap();
        assert_eq!(p.interval(), Interval::new(1.0, 3.0));
        assert!((p.eval(2.0).unwrap().df - 4.0).abs() < 1e-12);
        assert!((p.eval(1.0).unwrap().ddf - 2.0).abs() < 1e-12);

        let short = "u,g\n1,1\n2,4\n3,9\n4,16\n";
        assert!(matches!(Profile::from_csv(short.as_bytes()), Err(Error::Parse(_))));
        let bad_header = "x,y\n1,1\n2,4\n3,9\n4,16\n5,25\n";
        assert!(matches!(Profile::from_csv(bad_header.as_bytes()), Err(Error::Parse(_))));
        let unsorted = "u,g\n1,1\n3,9\n2,4\n4,16\n5,25\n";
        assert!(matches!(Profile::from_csv(unsorted.as_bytes()), Err(Error::Parse(_))));
    }
}
