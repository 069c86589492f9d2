//! Triangle meshes with per-vertex curvature, and their OBJ/CSV writers.

use std::io::Write;

use crate::error::{Error, Result};
use crate::iso::Point3;
use crate::par::{self, Execution};
use crate::surface::{CurvatureConvention, FundamentalForms, ParamSurface};

/// Per-vertex parameter values and curvature pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexAttr {
    pub u: f64,
    pub v: f64,
    pub k: f64,
    pub h: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub nu: usize,
    pub nv: usize,
    pub vertices: Vec<Point3>,
    pub attrs: Vec<VertexAttr>,
    /// Zero-based vertex indices.
    pub triangles: Vec<[usize; 3]>,
}

/// Tessellates `s` on a uniform `nu × nv` grid over its domain, u-major.
/// The `v` range is closed unless the domain is periodic, in which case the
/// right end is left out so the seam is not duplicated.
pub fn tessellate(s: &ParamSurface, nu: usize, nv: usize, conv: CurvatureConvention) -> Result<Mesh> {
    tessellate_with(s, nu, nv, conv, Execution::default())
}

pub fn tessellate_with(
    s: &ParamSurface,
    nu: usize,
    nv: usize,
    conv: CurvatureConvention,
    exec: Execution,
) -> Result<Mesh> {
    if nu < 2 || nv < 2 {
        return Err(Error::InvalidParameter(format!("grid {nu}x{nv} needs at least 2 samples per side")));
    }
    let d = s.domain();
    if !(d.u.is_bounded() && d.v.is_bounded()) || !(d.u.lo < d.u.hi) || !(d.v.lo < d.v.hi) {
        return Err(Error::EmptyDomain(format!("cannot tessellate u in {}, v in {}", d.u, d.v)));
    }
    let v_div = if d.v_periodic { nv } else { nv - 1 };
    let u_at = |i: usize| if i == nu - 1 { d.u.hi } else { d.u.lo + d.u.width() * (i as f64 / (nu - 1) as f64) };
    let v_at = |j: usize| {
        if !d.v_periodic && j == nv - 1 {
            d.v.hi
        } else {
            d.v.lo + d.v.width() * (j as f64 / v_div as f64)
        }
    };

    let rows = par::try_map_indexed(nu, exec, |i| {
        let u = u_at(i);
        (0..nv)
            .map(|j| {
                let v = v_at(j);
                let jet = s.jet(u, v);
                let ff = FundamentalForms::from_jet(&jet, u, v)?;
                let (k, h) = crate::surface::curvatures(&ff, conv).map_err(|_| Error::Admissibility {
                    u,
                    v,
                    det: jet.top_view_det(),
                })?;
                if !(jet.p.is_finite() && k.is_finite() && h.is_finite()) {
                    return Err(Error::NonFinite { u });
                }
                Ok((jet.p, VertexAttr { u, v, k, h }))
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut vertices = Vec::with_capacity(nu * nv);
    let mut attrs = Vec::with_capacity(nu * nv);
    for (p, a) in rows.into_iter().flatten() {
        vertices.push(p);
        attrs.push(a);
    }

    let mut triangles = Vec::with_capacity(2 * (nu - 1) * (nv - 1));
    for i in 0..nu - 1 {
        for j in 0..nv - 1 {
            let a = i * nv + j;
            let b = (i + 1) * nv + j;
            let c = (i + 1) * nv + j + 1;
            let e = i * nv + j + 1;
            for tri in [[a, b, c], [a, c, e]] {
                triangles.push(ccw_from_above(&vertices, tri));
            }
        }
    }
    Ok(Mesh { nu, nv, vertices, attrs, triangles })
}

fn ccw_from_above(vs: &[Point3], [a, b, c]: [usize; 3]) -> [usize; 3] {
    let (p, q, r) = (vs[a], vs[b], vs[c]);
    let area2 = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    if area2 < 0.0 {
        [a, c, b]
    } else {
        [a, b, c]
    }
}

/// Default number of decimals in written files.
pub const DEFAULT_PRECISION: usize = 9;

fn fmt_num(x: f64, precision: usize) -> Result<String> {
    if !x.is_finite() {
        return Err(Error::NonFinite { u: f64::NAN });
    }
    let s = format!("{x:.precision$}");
    // "-0.000" and "0.000" must not differ between otherwise identical runs
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        return Ok(s[1..].to_string());
    }
    Ok(s)
}

/// Wavefront OBJ with `v` records followed by 1-based `f` records.
pub fn write_obj<W: Write>(m: &Mesh, precision: usize, mut out: W) -> Result<()> {
    let mut buf = String::with_capacity(m.vertices.len() * 48);
    for p in &m.vertices {
        buf.push_str(&format!(
            "v {} {} {}\n",
            fmt_num(p.x, precision)?,
            fmt_num(p.y, precision)?,
            fmt_num(p.z, precision)?
        ));
    }
    for t in &m.triangles {
        buf.push_str(&format!("f {} {} {}\n", t[0] + 1, t[1] + 1, t[2] + 1));
    }
    out.write_all(buf.as_bytes())?;
    Ok(())
}

pub const CSV_HEADER: &str = "u,v,x,y,z,K,H";

/// One row per vertex, in storage order, under [`CSV_HEADER`].
pub fn write_curvature_csv<W: Write>(m: &Mesh, precision: usize, mut out: W) -> Result<()> {
    let mut buf = String::with_capacity(m.vertices.len() * 96);
    buf.push_str(CSV_HEADER);
    buf.push('\n');
    for (p, a) in m.vertices.iter().zip(&m.attrs) {
        let row =
            [a.u, a.v, p.x, p.y, p.z, a.k, a.h].iter().map(|&x| fmt_num(x, precision)).collect::<Result<Vec<_>>>()?;
        buf.push_str(&row.join(","));
        buf.push('\n');
    }
    out.write_all(buf.as_bytes())?;
    Ok(())
}

/// Parses the `v` records of an OBJ stream.
pub fn read_obj_vertices(text: &str) -> Result<Vec<Point3>> {
    text.lines()
        .filter(|l| l.starts_with("v "))
        .map(|l| {
            let xs: Vec<f64> = l[2..]
                .split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<_>>()?;
            match xs[..] {
                [x, y, z] => Ok(Point3::new(x, y, z)),
                _ => Err(Error::Parse(format!("bad vertex record `{l}`"))),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Interval;
    use crate::surface::Domain;

    fn plane(nu: usize, nv: usize) -> Mesh {
        let s = ParamSurface::new(
            |u: f64, v: f64| Point3::new(u, v, 0.0),
            Domain::rect(Interval::new(0.0, 1.0), Interval::new(0.0, 1.0)),
        );
        tessellate(&s, nu, nv, CurvatureConvention::Paper).unwrap()
    }

    #[test]
    fn counts() {
        let m = plane(2, 2);
        assert_eq!((m.vertices.len(), m.triangles.len()), (4, 2));
        let m = plane(10, 20);
        assert_eq!((m.vertices.len(), m.triangles.len()), (200, 342));
    }

    #[test]
    fn winding_is_ccw_from_above() {
        let m = plane(4, 5);
        for t in &m.triangles {
            let (p, q, r) = (m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]);
            let area2 = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
            assert!(area2 > 0.0);
        }
    }

    #[test]
    fn rejects_small_grids() {
        let s = ParamSurface::new(
            |u: f64, v: f64| Point3::new(u, v, 0.0),
            Domain::rect(Interval::new(0.0, 1.0), Interval::new(0.0, 1.0)),
        );
        assert!(tessellate(&s, 1, 5, CurvatureConvention::Paper).is_err());
    }

    #[test]
    fn obj_format() {
        let m = Mesh {
            nu: 1,
            nv: 1,
            vertices: vec![Point3::new(1.0, 2.0, 3.0)],
            attrs: vec![VertexAttr { u: 0.0, v: 0.0, k: 0.0, h: 0.0 }],
            triangles: vec![],
        };
        let mut out = Vec::new();
        write_obj(&m, 6, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "v 1.000000 2.000000 3.000000\n");
    }

    #[test]
    fn obj_round_trip_and_determinism() {
        let m = plane(3, 4);
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_obj(&m, 9, &mut a).unwrap();
        write_obj(&m, 9, &mut b).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(!text.contains('\r'));
        let back = read_obj_vertices(&text).unwrap();
        for (p, q) in m.vertices.iter().zip(&back) {
            assert!((p.x - q.x).abs() <= 5e-10 && (p.y - q.y).abs() <= 5e-10 && (p.z - q.z).abs() <= 5e-10);
        }
        assert!(text.lines().filter(|l| l.starts_with("f ")).all(|l| !l.contains(" 0")));
    }

    #[test]
    fn csv_layout() {
        let m = plane(3, 3);
        let mut out = Vec::new();
        write_curvature_csv(&m, 6, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "u,v,x,y,z,K,H");
        assert_eq!(lines.len(), m.vertices.len() + 1);
        assert_eq!(lines[1], "0.000000,0.000000,0.000000,0.000000,0.000000,0.000000,0.000000");
    }

    #[test]
    fn non_finite_values_are_refused() {
        let mut m = plane(2, 2);
        m.vertices[0].z = f64::NAN;
        assert!(write_obj(&m, 6, Vec::new()).is_err());
    }
}
