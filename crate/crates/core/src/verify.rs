//! Seeded property suites backing the `verify` command.
//!
//! Each suite reports the largest deviation it saw for every check, along
//! with the parameter point where it happened.

use std::f64::consts::{PI, TAU};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::iso::{i_distance, IsoMotion, Point3, Polynomial};
use crate::lw::{self, Branch, LwCase, LwParams};
use crate::numeric::fd;
use crate::par::{self, Execution};
use crate::profile::{Interval, Profile};
use crate::rotational::{make_rotational, rotational_curvatures, Orientation};
use crate::surface::{CurvatureConvention, DerivativeMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Residual,
    Jacobian,
    Invariance,
    Integrator,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "residual" => Suite::Residual,
            "jacobian" => Suite::Jacobian,
            "invariance" => Suite::Invariance,
            "integrator" => Suite::Integrator,
            "all" => Suite::All,
            other => return Err(Error::InvalidParameter(format!("unknown suite `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub residual: f64,
    pub relation: f64,
    pub jacobian: f64,
    pub distance: f64,
    pub invariance: f64,
    pub integrator: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residual: 1e-8,
            relation: 1e-8,
            jacobian: 1e-6,
            distance: 1e-12,
            invariance: 1e-5,
            integrator: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: &'static str,
    pub max_dev: f64,
    pub tol: f64,
    /// Parameter point of the largest deviation, or of the first failure to evaluate.
    pub worst_at: String,
    pub error: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.max_dev <= self.tol
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {:<22} max_dev={:.3e} tol={:.1e} at {}", self.name, self.max_dev, self.tol, self.worst_at)?;
        if let Some(e) = &self.error {
            write!(f, " error: {e}")?;
        }
        Ok(())
    }
}

/// Running maximum that remembers where it occurred.
struct Worst {
    dev: f64,
    at: String,
    error: Option<String>,
}

impl Worst {
    fn new() -> Self {
        Worst { dev: 0.0, at: "-".into(), error: None }
    }

    fn see(&mut self, dev: f64, at: impl FnOnce() -> String) {
        if dev.is_nan() || dev > self.dev {
            self.dev = if dev.is_nan() { f64::INFINITY } else { dev };
            self.at = at();
        }
    }

    fn fail(&mut self, e: Error, at: String) {
        if self.error.is_none() {
            self.error = Some(e.to_string());
            self.at = at;
        }
    }

    fn merge(mut self, other: Worst) -> Worst {
        if other.error.is_some() && self.error.is_none() {
            return other;
        }
        if self.error.is_none() && other.dev > self.dev {
            self.dev = other.dev;
            self.at = other.at;
        }
        self
    }

    fn report(self, name: &'static str, tol: f64) -> CheckReport {
        CheckReport { name, max_dev: self.dev, tol, worst_at: self.at, error: self.error }
    }
}

pub const M0_SWEEP: [f64; 6] = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0];
pub const C_SWEEP: [f64; 6] = [-4.0, -1.0, -0.25, 0.25, 1.0, 4.0];

/// `n0` values used for the general branch at a given `m0`: one with
/// `n0 > 0`, one with `-m0² < n0 < 0`, and one with `m0² + n0 < 0`.
pub fn case_iii_n0(m0: f64) -> [f64; 3] {
    [3.0, -0.5 * m0 * m0, -m0 * m0 - 1.0]
}

/// Every `(m0, n0, C, branch)` of the sweep whose domain is nonempty, for the
/// first and third families.
pub fn case_sweep() -> Vec<LwParams> {
    let mut out = Vec::new();
    for &m0 in &M0_SWEEP {
        for &c in &C_SWEEP {
            for branch in [Branch::Plus, Branch::Minus] {
                for n0 in std::iter::once(0.0).chain(case_iii_n0(m0)) {
                    let p = LwParams { m0, n0, c, branch };
                    if LwCase::build(p).is_ok() {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Bounded window of a profile used by the sweeps: at most 3 units long.
pub fn sweep_window(p: &Profile) -> Interval {
    let iv = p.interval();
    Interval::new(iv.lo, iv.hi.min(iv.lo + 3.0))
}

pub type ProfileFactory = dyn Fn(LwParams) -> Result<Profile> + Sync;

fn default_factory(p: LwParams) -> Result<Profile> {
    LwCase::build(p).map(|c| c.profile)
}

pub fn run(suite: Suite, seed: u64, tol: &Tolerances) -> Vec<CheckReport> {
    match suite {
        Suite::Residual => residual_suite(&default_factory, tol),
        Suite::Jacobian => vec![jacobian_suite(seed, tol)],
        Suite::Invariance => invariance_suite(seed, tol),
        Suite::Integrator => vec![integrator_suite(tol)],
        Suite::All => {
            let mut v = residual_suite(&default_factory, tol);
            v.push(jacobian_suite(seed, tol));
            v.extend(invariance_suite(seed, tol));
            v.push(integrator_suite(tol));
            v
        }
    }
}

/// ODE residual and `K - m0 H - n0` over the case sweep, using profiles from `factory`.
pub fn residual_suite(factory: &ProfileFactory, tol: &Tolerances) -> Vec<CheckReport> {
    let params = case_sweep();
    let results = par::map_indexed(params.len(), Execution::default(), |idx| {
        let p = params[idx];
        let mut res = Worst::new();
        let mut rel = Worst::new();
        let label = |u: f64| format!("m0={} n0={} C={} {} u={u}", p.m0, p.n0, p.c, p.branch);
        match factory(p) {
            Ok(profile) => {
                for u in lw::linspace(sweep_window(&profile), 1000) {
                    match lw::ode_residual(&profile, p.m0, p.n0, u) {
                        Ok(r) => res.see(r.abs(), || label(u)),
                        Err(e) => res.fail(e, label(u)),
                    }
                    match rotational_curvatures(&profile, u) {
                        Ok((k, h)) => rel.see((k - p.m0 * h - p.n0).abs(), || label(u)),
                        Err(e) => rel.fail(e, label(u)),
                    }
                }
            }
            Err(e) => {
                res.fail(e.clone(), label(f64::NAN));
                rel.fail(e, label(f64::NAN));
            }
        }
        (res, rel)
    });
    let (res, rel) = results.into_iter().fold((Worst::new(), Worst::new()), |(a, b), (x, y)| (a.merge(x), b.merge(y)));

    // paraboloid family: exact in real arithmetic
    let mut par_res = Worst::new();
    for &m0 in &M0_SWEEP {
        match lw::profile_case_ii(m0, 0.0) {
            Ok(p) => {
                for u in lw::linspace(Interval::new(0.1, 3.0), 1000) {
                    if let Ok(r) = lw::ode_residual(&p, m0, -m0 * m0, u) {
                        par_res.see(r.abs(), || format!("m0={m0} u={u}"));
                    }
                }
            }
            Err(e) => par_res.fail(e, format!("m0={m0}")),
        }
    }
    vec![
        res.report("ode-residual", tol.residual),
        rel.report("lw-relation", tol.relation),
        par_res.report("paraboloid-residual", 1e-14),
    ]
}

/// Random polynomial of degree ≤ 5 with coefficients in [-2, 2] whose
/// derivative keeps one sign on [0.5, 2].
pub fn random_polynomial_profile(rng: &mut ChaCha8Rng) -> Profile {
    loop {
        let degree = rng.gen_range(2..=5);
        let coeffs: Vec<f64> = (0..=degree).map(|_| rng.gen_range(-2.0..=2.0)).collect();
        if let Ok(p) = Profile::from_polynomial(Polynomial::new(coeffs), Interval::new(0.5, 2.0)) {
            return p;
        }
    }
}

/// 20 random polynomial profiles, 100 interior points each.
pub fn jacobian_suite(seed: u64, tol: &Tolerances) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<(Profile, Vec<(f64, f64)>)> = (0..20)
        .map(|_| {
            let p = random_polynomial_profile(&mut rng);
            let pts = (0..100).map(|_| (rng.gen_range(0.55..1.95), rng.gen_range(0.0..TAU))).collect();
            (p, pts)
        })
        .collect();
    let worst = par::map_indexed(cases.len(), Execution::default(), |idx| {
        let (profile, pts) = &cases[idx];
        let mut w = Worst::new();
        let s = match make_rotational(profile, Orientation::Xz) {
            Ok(s) => s,
            Err(e) => {
                w.fail(e, format!("profile #{idx}"));
                return w;
            }
        };
        for &(u, v) in pts {
            match s.surface().weingarten_jacobian(u, v, fd::jacobian_step(u), CurvatureConvention::Paper) {
                Ok(j) => w.see(j.abs(), || format!("profile #{idx} u={u:.6} v={v:.6}")),
                Err(e) => w.fail(e, format!("profile #{idx} u={u} v={v}")),
            }
        }
        w
    })
    .into_iter()
    .fold(Worst::new(), Worst::merge);
    worst.report("weingarten-jacobian", tol.jacobian)
}

pub fn random_motion(rng: &mut ChaCha8Rng) -> IsoMotion {
    IsoMotion::new(
        rng.gen_range(-5.0..=5.0),
        rng.gen_range(-PI..=PI),
        rng.gen_range(-5.0..=5.0),
        rng.gen_range(-5.0..=5.0),
        rng.gen_range(-2.0..=2.0),
        rng.gen_range(-2.0..=2.0),
    )
}

/// i-distance preservation under 100 motions, and finite-difference `(K, H)`
/// on moved surfaces of revolution at 50 points.
pub fn invariance_suite(seed: u64, tol: &Tolerances) -> Vec<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut dist = Worst::new();
    for k in 0..100 {
        let m = random_motion(&mut rng);
        let mut pt = || Point3::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let (p, q) = (pt(), pt());
        let dev = (i_distance(m.apply(p), m.apply(q)) - i_distance(p, q)).abs();
        dist.see(dev, || format!("motion #{k}"));
    }

    let profiles: Vec<Profile> = [
        lw::profile_case_i(1.0, 1.0, Branch::Plus),
        lw::profile_case_ii(0.5, 0.0),
        lw::profile_case_iii(1.0, 3.0, -1.0, Branch::Plus),
        Profile::from_polynomial(Polynomial::new(vec![0.0, 1.0, 0.5, 0.2]), Interval::new(0.5, 2.0)),
    ]
    .into_iter()
    .filter_map(Result::ok)
    .collect();
    let mut curv = Worst::new();
    for k in 0..50 {
        let p = &profiles[k % profiles.len()];
        let win = sweep_window(p);
        let u = rng.gen_range(win.lo.max(0.6)..win.hi.min(2.0));
        let v = rng.gen_range(0.0..TAU);
        let m = random_motion(&mut rng);
        let at = || format!("sample #{k} u={u:.6} v={v:.6}");
        let expected = match rotational_curvatures(p, u) {
            Ok(x) => x,
            Err(e) => {
                curv.fail(e, at());
                continue;
            }
        };
        let moved = match make_rotational(p, Orientation::Xz) {
            Ok(s) => s.surface().moved(m).with_mode(DerivativeMode::FiniteDifference),
            Err(e) => {
                curv.fail(e, at());
                continue;
            }
        };
        match moved.curvatures(u, v, CurvatureConvention::Paper) {
            Ok((kk, hh)) => curv.see((kk - expected.0).abs().max((hh - expected.1).abs()), at),
            Err(e) => curv.fail(e, at()),
        }
    }
    vec![dist.report("i-distance-invariance", tol.distance), curv.report("curvature-invariance", tol.invariance)]
}

/// RK4 from closed-form initial data against the closed form itself.
pub fn integrator_suite(tol: &Tolerances) -> CheckReport {
    let params: Vec<LwParams> = case_sweep().into_iter().filter(|p| p.c.abs() == 1.0 && p.m0.abs() == 1.0).collect();
    par::map_indexed(params.len(), Execution::default(), |idx| {
        let p = params[idx];
        let mut w = Worst::new();
        let label = || format!("m0={} n0={} C={} {}", p.m0, p.n0, p.c, p.branch);
        match integration_error(p, 2.0, 1e-3) {
            Ok(e) => w.see(e, label),
            Err(e) => w.fail(e, label()),
        }
        w
    })
    .into_iter()
    .fold(Worst::new(), Worst::merge)
    .report("rk4-vs-closed-form", tol.integrator)
}

/// Start and end of the integration test interval for a closed-form
/// profile: away from the domain ends, at most `span` long.
pub fn integration_window(p: &Profile, span: f64) -> Interval {
    let iv = p.interval();
    let mut u0 = iv.lo.max(0.25) + 0.25;
    if iv.hi.is_finite() {
        u0 = u0.min(iv.lo + 0.1 * iv.width());
    }
    let end = if iv.hi.is_finite() { (u0 + span).min(u0 + 0.8 * (iv.hi - u0)) } else { u0 + span };
    Interval::new(u0, end)
}

/// Largest nodal `|g_rk4 - g_closed|` when integrating `p`'s profile.
pub fn integration_error(p: LwParams, span: f64, step: f64) -> Result<f64> {
    let profile = LwCase::build(p)?.profile;
    let win = integration_window(&profile, span);
    if !(win.lo < win.hi) {
        return Err(Error::EmptyDomain("integration window".into()));
    }
    let d0 = profile.eval(win.lo)?;
    let run = lw::integrate_profile(p.m0, p.n0, win.lo, d0.f, d0.df, win.hi, step)?;
    if let Some(h) = run.halted {
        return Err(Error::InvalidProfile(format!("integration halted: {h:?}")));
    }
    let mut worst: f64 = 0.0;
    for &(u, g, _) in &run.nodes {
        worst = worst.max((g - profile.eval(u)?.f).abs());
    }
    Ok(worst)
}
