//! Linear Weingarten surfaces of revolution, `K = m0 H + n0` with `m0 ≠ 0`.
//!
//! Substituting the rotational curvatures into the relation gives the
//! profile equation
//!
//! ```text
//! g''(g' - m0 u) - m0 g' = n0 u
//! ```
//!
//! whose solutions off the locus `g' = m0 u` are
//! `g' = m0 u ± sqrt(C + a u²)` with `a = m0² + n0`. On the locus itself the
//! only solutions are the paraboloids `g = (m0/2) u² + c3`, which require
//! `n0 = -m0²`.
//!
//! Three families come out of this:
//!
//! * [`CaseTag::I`], `n0 = 0`: `a = m0²`, so `H/K = 1/m0` is constant.
//! * [`CaseTag::II`], `n0 = -m0²`: paraboloids with constant `(K, H) = (m0², 2 m0)`.
//! * [`CaseTag::III`], any other `n0`: the general branch. When `a < 0` the
//!   real domain is bounded ([`CaseTag::IIIBounded`]) and `g` is evaluated
//!   by quadrature.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::iso::Derivs;
use crate::numeric::{ode, quad};
use crate::profile::{Interval, NodeCurve, Profile, Provenance};
use crate::rotational::rotational_curvatures;

/// Smallest `u` used when the natural domain reaches the axis.
pub const MIN_U: f64 = 1e-6;
/// Relative inset applied at domain ends where `sqrt(C + a u²)` or `g'` vanishes.
pub const DOMAIN_INSET: f64 = 1e-6;
/// Relative distance from `g' = m0 u` at which the integrator halts.
pub const SINGULAR_EPS: f64 = 1e-8;

/// Sign in front of the square root in `g'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        })
    }
}

impl std::str::FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Branch::Plus),
            "minus" | "-" => Ok(Branch::Minus),
            other => Err(Error::InvalidParameter(format!("branch must be plus or minus, got `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseTag {
    I,
    II,
    III,
    /// General branch with `m0² + n0 < 0`; only `C > 0` gives a (bounded) real domain.
    IIIBounded,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::I => "I",
            CaseTag::II => "II",
            CaseTag::III => "III",
            CaseTag::IIIBounded => "III-bounded",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub tags: Vec<CaseTag>,
    /// Human-readable domain notes, one per line.
    pub notes: Vec<String>,
}

fn is_paraboloid_pair(m0: f64, n0: f64) -> bool {
    (n0 + m0 * m0).abs() <= 1e-14 * m0 * m0
}

/// Which families can satisfy `K = m0 H + n0`.
pub fn classify(m0: f64, n0: f64) -> Result<Classification> {
    check_m0(m0)?;
    if !n0.is_finite() {
        return Err(Error::InvalidParameter(format!("n0={n0} must be finite")));
    }
    let a = m0 * m0 + n0;
    let (tags, notes) = if n0 == 0.0 {
        (
            vec![CaseTag::I],
            vec![
                "C > 0: u > 0".to_string(),
                format!("C < 0: u > sqrt(-C)/{}", m0.abs()),
                format!("H/K = {} wherever K != 0", 1.0 / m0),
            ],
        )
    } else if is_paraboloid_pair(m0, n0) {
        (vec![CaseTag::II], vec![format!("g = {}/2 u^2 + c3, (K, H) = ({}, {})", m0, m0 * m0, 2.0 * m0)])
    } else if a > 0.0 {
        (
            vec![CaseTag::III],
            vec![format!("a = m0^2 + n0 = {a}"), "C > 0: u > 0".to_string(), format!("C < 0: u > sqrt(-C/{a})")],
        )
    } else {
        (
            vec![CaseTag::IIIBounded],
            vec![
                format!("a = m0^2 + n0 = {a} < 0"),
                "C <= 0: no real branch".to_string(),
                format!("C > 0: bounded domain 0 < u < sqrt(C/{})", -a),
            ],
        )
    };
    Ok(Classification { tags, notes })
}

fn check_m0(m0: f64) -> Result<()> {
    if m0 == 0.0 {
        return Err(Error::OutOfScope("constant-K family".into()));
    }
    if !m0.is_finite() {
        return Err(Error::InvalidParameter(format!("m0={m0} must be finite")));
    }
    Ok(())
}

/// Parameters of the relation and of one solution branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LwParams {
    pub m0: f64,
    pub n0: f64,
    /// Integration constant `C` of `g' = m0 u ± sqrt(C + a u²)`; the additive
    /// constant `c3` for the paraboloid family.
    pub c: f64,
    pub branch: Branch,
}

/// A constructed solution together with the family it belongs to.
#[derive(Debug, Clone)]
pub struct LwCase {
    pub tag: CaseTag,
    pub params: LwParams,
    pub profile: Profile,
}

impl LwCase {
    pub fn build(params: LwParams) -> Result<LwCase> {
        let LwParams { m0, n0, c, branch } = params;
        check_m0(m0)?;
        let (tag, profile) = if n0 == 0.0 {
            (CaseTag::I, profile_case_i(m0, c, branch)?)
        } else if is_paraboloid_pair(m0, n0) {
            (CaseTag::II, profile_case_ii(m0, c)?)
        } else {
            let tag = if m0 * m0 + n0 > 0.0 { CaseTag::III } else { CaseTag::IIIBounded };
            (tag, profile_case_iii(m0, n0, c, branch)?)
        };
        Ok(LwCase { tag, params, profile })
    }

    /// Largest `|K - m0 H - n0|` over `n` evenly spaced points of `window`.
    pub fn max_relation_error(&self, window: Interval, n: usize) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for u in linspace(window, n) {
            let (k, h) = rotational_curvatures(&self.profile, u)?;
            worst = worst.max((k - self.params.m0 * h - self.params.n0).abs());
        }
        Ok(worst)
    }
}

pub(crate) fn linspace(iv: Interval, n: usize) -> impl Iterator<Item = f64> {
    let n = n.max(2);
    (0..n).map(move |k| if k == n - 1 { iv.hi } else { iv.lo + iv.width() * (k as f64 / (n - 1) as f64) })
}

#[derive(Debug, Clone, Copy)]
enum Antiderivative {
    /// `(C/(2r)) ln|r u + sqrt(C + a u²)|` with `r² = a`.
    Log { r: f64 },
    /// `∫_{anchor}^{u} sqrt(C + a t²) dt` by adaptive Simpson.
    Quadrature { anchor: f64 },
}

/// `g' = m0 u + σ sqrt(C + a u²)` and its antiderivative.
#[derive(Debug, Clone, Copy)]
struct RootBranch {
    m0: f64,
    a: f64,
    c: f64,
    sigma: f64,
    anti: Antiderivative,
}

impl RootBranch {
    fn root(&self, u: f64) -> f64 {
        (self.c + self.a * u * u).max(0.0).sqrt()
    }

    fn sqrt_integral(&self, u: f64) -> f64 {
        match self.anti {
            Antiderivative::Log { r } => {
                let s = self.root(u);
                // r u + s, rewritten as C/(s - r u) when r < 0 to avoid cancellation
                let arg = if r >= 0.0 { r * u + s } else { self.c / (s - r * u) };
                0.5 * u * s + self.c / (2.0 * r) * arg.abs().ln()
            }
            Antiderivative::Quadrature { anchor } => quad::integrate(|t| self.root(t), anchor, u),
        }
    }
}

impl crate::profile::ProfileCurve for RootBranch {
    fn eval(&self, u: f64) -> Derivs {
        let s = self.root(u);
        Derivs {
            f: 0.5 * self.m0 * u * u + self.sigma * self.sqrt_integral(u),
            df: self.m0 * u + self.sigma * s,
            ddf: self.m0 + self.sigma * self.a * u / s,
        }
    }
}

/// The open set `{u > 0 : C + a u² > 0, g'(u) ≠ 0}` reduced to its longest
/// component, then inset away from its open ends.
fn root_branch_domain(m0: f64, n0: f64, a: f64, c: f64, sigma: f64) -> Result<Interval> {
    let (mut lo, mut hi) = if a > 0.0 {
        if c >= 0.0 {
            (0.0, f64::INFINITY)
        } else {
            ((-c / a).sqrt(), f64::INFINITY)
        }
    } else if a < 0.0 && c > 0.0 {
        (0.0, (c / -a).sqrt())
    } else {
        return Err(Error::EmptyDomain(format!("C + ({a}) u^2 > 0 has no solution with u > 0 for C={c}")));
    };
    // g' = 0  <=>  σ sqrt(C + a u²) = -m0 u  =>  C + n0 u² = 0
    if n0 != 0.0 && -c / n0 > 0.0 && sigma * m0 < 0.0 {
        let z = (-c / n0).sqrt();
        if z > lo && z < hi {
            if hi == f64::INFINITY || hi - z >= z - lo {
                lo = z;
            } else {
                hi = z;
            }
        }
    }
    let lo = if lo == 0.0 { MIN_U } else { lo * (1.0 + DOMAIN_INSET) };
    let hi = hi * (1.0 - DOMAIN_INSET);
    if !(lo < hi) {
        return Err(Error::EmptyDomain(format!("no admissible u for a={a}, C={c}")));
    }
    Ok(Interval::new(lo, hi))
}

fn check_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name}={x} must be finite")))
    }
}

/// Solutions with `n0 = 0`:
/// `g = (m0/2) u² ± [(u/2) sqrt(C + m0² u²) + (C/(2 m0)) ln|m0 u + sqrt(C + m0² u²)|]`.
pub fn profile_case_i(m0: f64, c: f64, branch: Branch) -> Result<Profile> {
    check_m0(m0)?;
    check_finite("C", c)?;
    if c == 0.0 {
        return Err(Error::InvalidParameter("C = 0 reduces to the paraboloid or a linear branch".into()));
    }
    let a = m0 * m0;
    let sigma = branch.sign();
    let interval = root_branch_domain(m0, 0.0, a, c, sigma)?;
    let curve = RootBranch { m0, a, c, sigma, anti: Antiderivative::Log { r: m0 } };
    Profile::trusted(Arc::new(curve), interval, Provenance::ClosedForm)
}

/// Paraboloids `g = (m0/2) u² + c3`, which satisfy the relation with `n0 = -m0²`.
pub fn profile_case_ii(m0: f64, c3: f64) -> Result<Profile> {
    check_m0(m0)?;
    check_finite("c3", c3)?;
    let curve = move |u: f64| Derivs { f: 0.5 * m0 * u * u + c3, df: m0 * u, ddf: m0 };
    Profile::trusted(Arc::new(curve), Interval::new(MIN_U, f64::INFINITY), Provenance::ClosedForm)
}

/// General solutions with `n0 ≠ 0`, `n0 ≠ -m0²`. With `a = m0² + n0 > 0`,
/// `g = (m0/2) u² ± [(u/2) sqrt(C + a u²) + (C/(2 sqrt a)) ln|sqrt(a) u + sqrt(C + a u²)|]`;
/// with `a < 0`, `g` is the quadrature of `g'` from the left end of the domain.
pub fn profile_case_iii(m0: f64, n0: f64, c: f64, branch: Branch) -> Result<Profile> {
    check_m0(m0)?;
    check_finite("n0", n0)?;
    check_finite("C", c)?;
    if n0 == 0.0 {
        return Err(Error::InvalidParameter("n0 = 0 is the first family".into()));
    }
    let a = m0 * m0 + n0;
    if is_paraboloid_pair(m0, n0) {
        return Err(if c < 0.0 {
            Error::EmptyDomain("a = 0 with C < 0".into())
        } else {
            Error::InvalidParameter("n0 = -m0^2 is the paraboloid family".into())
        });
    }
    if c == 0.0 {
        return Err(Error::InvalidParameter("C must be nonzero".into()));
    }
    let sigma = branch.sign();
    let interval = root_branch_domain(m0, n0, a, c, sigma)?;
    let anti =
        if a > 0.0 { Antiderivative::Log { r: a.sqrt() } } else { Antiderivative::Quadrature { anchor: interval.lo } };
    let curve = RootBranch { m0, a, c, sigma, anti };
    Profile::trusted(Arc::new(curve), interval, Provenance::ClosedForm)
}

/// `g''(g' - m0 u) - m0 g' - n0 u`.
pub fn ode_residual(p: &Profile, m0: f64, n0: f64, u: f64) -> Result<f64> {
    let d = p.eval(u)?;
    Ok(d.ddf * (d.df - m0 * u) - m0 * d.df - n0 * u)
}

/// Case I profile with `H/K = ratio`, i.e. `m0 = 1/ratio`.
pub fn hk_ratio_profile(ratio: f64, c: f64, branch: Branch) -> Result<Profile> {
    if ratio == 0.0 || !ratio.is_finite() {
        return Err(Error::InvalidParameter(format!("ratio={ratio} must be finite and nonzero")));
    }
    profile_case_i(1.0 / ratio, c, branch)
}

/// Why an integration stopped before `u_end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Halt {
    /// `g'` came within [`SINGULAR_EPS`] of `m0 u`.
    Singular { u: f64 },
    /// `g'` changed sign, leaving the admissible profiles.
    SlopeVanished { u: f64 },
}

#[derive(Debug, Clone)]
pub struct IntegratedProfile {
    pub profile: Profile,
    /// Integration nodes `(u, g, g')`.
    pub nodes: Vec<(f64, f64, f64)>,
    pub halted: Option<Halt>,
}

fn near_locus(u: f64, dg: f64, m0: f64) -> bool {
    (dg - m0 * u).abs() <= SINGULAR_EPS * 1f64.max(dg.abs()).max((m0 * u).abs())
}

/// Fixed-step RK4 for `g'' = (m0 g' + n0 u)/(g' - m0 u)` from `(u0, g0, g0')`
/// to `u_end`. Stops early, keeping what it has, if the singular locus or a
/// zero of `g'` is reached.
pub fn integrate_profile(
    m0: f64,
    n0: f64,
    u0: f64,
    g0: f64,
    g0p: f64,
    u_end: f64,
    step: f64,
) -> Result<IntegratedProfile> {
    check_m0(m0)?;
    for (name, x) in [("n0", n0), ("u0", u0), ("g0", g0), ("g0'", g0p), ("u_end", u_end), ("step", step)] {
        check_finite(name, x)?;
    }
    if !(u0 > 0.0) {
        return Err(Error::InvalidParameter(format!("u0={u0} must be positive")));
    }
    if !(step > 0.0) || !(u_end > u0) {
        return Err(Error::InvalidParameter("need step > 0 and u_end > u0".into()));
    }
    if g0p == 0.0 {
        return Err(Error::InvalidParameter("g0' must be nonzero".into()));
    }
    if near_locus(u0, g0p, m0) {
        return Err(Error::SingularBranch { u: u0 });
    }
    let rhs = |u: f64, y: [f64; 2]| [y[1], (m0 * y[1] + n0 * u) / (y[1] - m0 * u)];
    let second = |u: f64, dg: f64| (m0 * dg + n0 * u) / (dg - m0 * u);

    let grid = ode::step_nodes(u0, u_end, step);
    let mut us = vec![u0];
    let mut gs = vec![g0];
    let mut dgs = vec![g0p];
    let mut ddgs = vec![second(u0, g0p)];
    let mut halted = None;
    let mut y = [g0, g0p];
    for w in grid.windows(2) {
        let next = ode::rk4_step(&rhs, w[0], y, w[1] - w[0]);
        let u = w[1];
        if !(next[0].is_finite() && next[1].is_finite()) || near_locus(u, next[1], m0) {
            if near_locus(u, next[1], m0) || near_locus(w[0], y[1], m0) || next[1].is_nan() {
                halted = Some(Halt::Singular { u: w[0] });
                break;
            }
            return Err(Error::NonFinite { u });
        }
        if next[1].signum() != g0p.signum() {
            halted = Some(Halt::SlopeVanished { u: w[0] });
            break;
        }
        y = next;
        us.push(u);
        gs.push(y[0]);
        dgs.push(y[1]);
        ddgs.push(second(u, y[1]));
    }
    if us.len() < 2 {
        return Err(match halted {
            Some(Halt::SlopeVanished { u }) => Error::InvalidProfile(format!("g' vanishes near u={u}")),
            _ => Error::SingularBranch { u: u0 },
        });
    }
    let nodes = us.iter().zip(&gs).zip(&dgs).map(|((&u, &g), &d)| (u, g, d)).collect();
    let interval = Interval::new(us[0], us[us.len() - 1]);
    let curve = NodeCurve { u: us, g: gs, dg: dgs, ddg: ddgs };
    let profile = Profile::trusted(Arc::new(curve), interval, Provenance::Integrated)?;
    Ok(IntegratedProfile { profile, nodes, halted })
}
