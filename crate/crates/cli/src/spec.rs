//! Surface specifications and numeric literals accepted on the command line.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::fs::File;
use std::path::PathBuf;
use std::str::FromStr;

use isoweingarten::lw::{self, LwCase, LwParams};
use isoweingarten::surface::{Domain, ParamSurface};
use isoweingarten::{make_rotational, parabolic_sphere_surface, Branch, CaseTag, Error, Interval, Orientation};
use isoweingarten::{ParabolicSphere, Profile};

/// A plain decimal, optionally followed by `pi` (`2pi`, `-0.5pi`, `pi`).
pub fn parse_number(s: &str) -> Result<f64, Error> {
    let t = s.trim();
    let bad = || Error::InvalidParameter(format!("`{s}` is not a number"));
    let x = if let Some(head) = t.strip_suffix("pi") {
        let k = match head {
            "" | "+" => 1.0,
            "-" => -1.0,
            h => h.parse::<f64>().map_err(|_| bad())?,
        };
        k * PI
    } else {
        t.parse::<f64>().map_err(|_| bad())?
    };
    if x.is_finite() {
        Ok(x)
    } else {
        Err(bad())
    }
}

/// `lo,hi` in the syntax of [`parse_number`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

impl FromStr for Range {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let (a, b) =
            s.split_once(',').ok_or_else(|| Error::InvalidParameter(format!("range `{s}` must look like lo,hi")))?;
        Ok(Range { lo: parse_number(a)?, hi: parse_number(b)? })
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.lo, self.hi)
    }
}

/// `NUxNV` grid size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Samples {
    pub nu: usize,
    pub nv: usize,
}

impl FromStr for Samples {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidParameter(format!("samples `{s}` must look like 65x129"));
        let (a, b) = s.split_once('x').ok_or_else(bad)?;
        Ok(Samples { nu: a.trim().parse().map_err(|_| bad())?, nv: b.trim().parse().map_err(|_| bad())? })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceSpec {
    CaseI { m0: f64, c: f64, branch: Branch },
    CaseII { m0: f64, c3: f64 },
    CaseIII { m0: f64, n0: f64, c: f64, branch: Branch },
    Paraboloid { a: f64, b: f64, c: f64, d: f64 },
    ProfileFile(PathBuf),
}

impl FromStr for SurfaceSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidParameter(format!("surface spec `{s}` must look like kind:params")))?;
        if kind == "profile-file" {
            return Ok(SurfaceSpec::ProfileFile(PathBuf::from(rest)));
        }
        let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
        let arity = |n: usize| {
            if parts.len() == n {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("`{kind}` takes {n} parameters, got {}", parts.len())))
            }
        };
        let num = |i: usize| parse_number(parts[i]);
        Ok(match kind {
            "case-i" => {
                arity(3)?;
                SurfaceSpec::CaseI { m0: num(0)?, c: num(1)?, branch: parts[2].parse()? }
            }
            "case-ii" => {
                arity(2)?;
                SurfaceSpec::CaseII { m0: num(0)?, c3: num(1)? }
            }
            "case-iii" => {
                arity(4)?;
                SurfaceSpec::CaseIII { m0: num(0)?, n0: num(1)?, c: num(2)?, branch: parts[3].parse()? }
            }
            "paraboloid" => {
                arity(4)?;
                SurfaceSpec::Paraboloid { a: num(0)?, b: num(1)?, c: num(2)?, d: num(3)? }
            }
            other => return Err(Error::InvalidParameter(format!("unknown surface kind `{other}`"))),
        })
    }
}

/// Which linear Weingarten relation a built surface satisfies.
#[derive(Debug, Clone, PartialEq)]
pub enum Relation {
    Exact {
        tag: CaseTag,
        m0: f64,
        n0: f64,
    },
    /// Least-squares fit for sampled profiles.
    Fitted {
        tag: Option<CaseTag>,
        m0: f64,
        n0: f64,
        max_dev: f64,
    },
}

pub struct Built {
    pub surface: ParamSurface,
    pub relation: Relation,
}

pub const DEFAULT_U: Range = Range { lo: 0.1, hi: 3.0 };

/// Builds the surface; `u` restricts the profile (or the graph's x range),
/// `v` is the angle range (or the graph's y range).
pub fn build(spec: &SurfaceSpec, u: Option<Range>, v: Option<Range>) -> Result<Built, Error> {
    let lw_case = |p: LwParams| -> Result<Built, Error> {
        let case = LwCase::build(p)?;
        let profile = restrict(&case.profile, u)?;
        let relation =
            Relation::Exact { tag: case.tag, m0: p.m0, n0: if case.tag == CaseTag::II { -p.m0 * p.m0 } else { p.n0 } };
        rotational(profile, v, relation)
    };
    match spec {
        &SurfaceSpec::CaseI { m0, c, branch } => lw_case(LwParams { m0, n0: 0.0, c, branch }),
        &SurfaceSpec::CaseII { m0, c3 } => lw_case(LwParams { m0, n0: -m0 * m0, c: c3, branch: Branch::Plus }),
        &SurfaceSpec::CaseIII { m0, n0, c, branch } => {
            if n0 == 0.0 {
                return Err(Error::InvalidParameter("case-iii needs n0 != 0".into()));
            }
            let case = LwCase::build(LwParams { m0, n0, c, branch })?;
            if case.tag == CaseTag::II {
                return Err(Error::InvalidParameter("case-iii needs n0 != -m0^2".into()));
            }
            lw_case(case.params)
        }
        &SurfaceSpec::Paraboloid { a, b, c, d } => {
            let sphere = ParabolicSphere::new(a, b, c, d)?;
            let u = u.unwrap_or(DEFAULT_U);
            let v = v.unwrap_or(Range { lo: 0.0, hi: TAU });
            let domain = Domain::rect(checked(u, "u-range")?, checked(v, "v-range")?);
            Ok(Built {
                surface: parabolic_sphere_surface(&sphere).with_domain(domain),
                relation: Relation::Exact { tag: CaseTag::II, m0: a, n0: -a * a },
            })
        }
        SurfaceSpec::ProfileFile(path) => {
            let file = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let profile = restrict(&Profile::from_csv(file)?, u)?;
            let relation = fit_relation(&profile)?;
            rotational(profile, v, relation)
        }
    }
}

fn checked(r: Range, what: &str) -> Result<Interval, Error> {
    if !(r.lo < r.hi) {
        return Err(Error::EmptyDomain(format!("{what} [{}, {}]", r.lo, r.hi)));
    }
    Ok(Interval::new(r.lo, r.hi))
}

fn restrict(p: &Profile, u: Option<Range>) -> Result<Profile, Error> {
    match u {
        Some(r) => {
            let iv = checked(r, "u-range")?;
            p.restrict(iv.lo, iv.hi)
        }
        None => Ok(p.clone()),
    }
}

fn rotational(profile: Profile, v: Option<Range>, relation: Relation) -> Result<Built, Error> {
    let rs = make_rotational(&profile, Orientation::Xz)?;
    let mut surface = rs.into_surface();
    if let Some(v) = v {
        let iv = checked(v, "v-range")?;
        let full_turn = (iv.width() - TAU).abs() <= 1e-15;
        let mut d = surface.domain();
        d.v = iv;
        d.v_periodic = full_turn;
        surface = surface.with_domain(d);
    }
    Ok(Built { surface, relation })
}

/// Least-squares `K ≈ m0 H + n0` over 257 points of a sampled profile.
fn fit_relation(p: &Profile) -> Result<Relation, Error> {
    let iv = p.interval();
    let pts: Vec<(f64, f64)> = (0..257)
        .map(|k| iv.lo + iv.width() * k as f64 / 256.0)
        .map(|u| isoweingarten::rotational_curvatures(p, u).map(|(k, h)| (h, k)))
        .collect::<Result<_, _>>()?;
    let n = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let (sxx, sxy) = pts.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + (x - mx) * (x - mx), b + (x - mx) * (y - my)));
    let m0 = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let n0 = my - m0 * mx;
    let max_dev = pts.iter().map(|&(x, y)| (y - m0 * x - n0).abs()).fold(0.0, f64::max);
    let tag = lw::classify(m0, n0).ok().and_then(|c| c.tags.first().copied());
    Ok(Relation::Fitted { tag, m0, n0, max_dev })
}
