//! Files: bodies as `symkit-body-v1` JSON, trajectories as CSV, planar
//! snapshots as SVG and property reports as JSON.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::convergence::TrajectoryRow;
use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, DirectionGrid, RevolutionProfile, Subspace, SupportSample, VPolytope, Vector};
use crate::harness::{Case, PropertyReport, PropertyResult, Witness};
use crate::symmetrize::SymSpec;

pub const BODY_SCHEMA: &str = "symkit-body-v1";
pub const CSV_HEADER: &str = "step,V_n,V_1,ball_distance";

#[derive(Serialize, Deserialize)]
struct BodyFile {
    schema: String,
    dim: usize,
    #[serde(flatten)]
    payload: Payload,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum Payload {
    Vpolytope { vertices: Vec<Vec<f64>> },
    SupportSample { grid: GridFile, values: Vec<f64> },
    RevolutionProfile { axis: Vec<f64>, offset: Vec<f64>, stations: Vec<[f64; 2]> },
}

/// Grids are generated deterministically from their size.
#[derive(Serialize, Deserialize)]
struct GridFile {
    count: usize,
}

fn finite(xs: &[f64]) -> Result<()> {
    if xs.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidInput("non-finite coordinate".into()))
    }
}

fn vector(xs: &[f64], dim: usize) -> Result<Vector> {
    if xs.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: xs.len() });
    }
    finite(xs)?;
    Vector::from_slice(xs).ok_or_else(|| Error::InvalidInput(format!("vectors need 2 or 3 coordinates, got {}", xs.len())))
}

fn body_file(k: &ConvexBody) -> Result<BodyFile> {
    let payload = match k {
        ConvexBody::Polytope(p) => Payload::Vpolytope { vertices: p.vertices().iter().map(|v| v.coords().to_vec()).collect() },
        ConvexBody::Sample(s) => Payload::SupportSample { grid: GridFile { count: s.grid().len() }, values: s.values().to_vec() },
        ConvexBody::Revolution(r) => Payload::RevolutionProfile {
            axis: r.direction().coords().to_vec(),
            offset: r.offset().coords().to_vec(),
            stations: r.stations().iter().map(|&(t, x)| [t, x]).collect(),
        },
    };
    Ok(BodyFile { schema: BODY_SCHEMA.into(), dim: k.dim(), payload })
}

fn parse_file(f: BodyFile) -> Result<ConvexBody> {
    if f.schema != BODY_SCHEMA {
        return Err(Error::InvalidInput(format!("unknown schema '{}'", f.schema)));
    }
    if !(f.dim == 2 || f.dim == 3) {
        return Err(Error::Unsupported(format!("dimension {}", f.dim)));
    }
    Ok(match f.payload {
        Payload::Vpolytope { vertices } => {
            let pts = vertices.iter().map(|v| vector(v, f.dim)).collect::<Result<Vec<_>>>()?;
            VPolytope::hull(&pts)?.into()
        }
        Payload::SupportSample { grid, values } => {
            finite(&values)?;
            let g = DirectionGrid::shared(f.dim, grid.count)?;
            if g.len() != grid.count {
                return Err(Error::InvalidInput(format!("grid size {} is not a valid grid size", grid.count)));
            }
            SupportSample::new(g, values)?.into()
        }
        Payload::RevolutionProfile { axis, offset, stations } => {
            if f.dim != 3 {
                return Err(Error::Unsupported("bodies of revolution live in ℝ³".into()));
            }
            let a = vector(&axis, 3)?;
            let line = if (a.norm() - 1.0).abs() <= 1e-12 { Subspace::new(3, vec![a])? } else { Subspace::line(a)? };
            finite(&stations.concat())?;
            RevolutionProfile::with_offset(line, vector(&offset, 3)?, stations.iter().map(|s| (s[0], s[1])).collect())?.into()
        }
    })
}

/// Serializes a body; floats use the shortest decimal that reads back to
/// the same value.
pub fn body_to_json(k: &ConvexBody) -> Result<String> {
    serde_json::to_string_pretty(&body_file(k)?).map_err(|e| Error::InvalidInput(e.to_string()))
}

pub fn body_to_value(k: &ConvexBody) -> Result<Value> {
    serde_json::to_value(body_file(k)?).map_err(|e| Error::InvalidInput(e.to_string()))
}

pub fn body_from_json(text: &str) -> Result<ConvexBody> {
    parse_file(serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("body file: {e}")))?)
}

pub fn body_from_value(v: &Value) -> Result<ConvexBody> {
    parse_file(BodyFile::deserialize(v).map_err(|e| Error::InvalidInput(format!("body file: {e}")))?)
}

pub fn read_body(path: &Path) -> Result<ConvexBody> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    body_from_json(&text)
}

pub fn write_body(path: &Path, k: &ConvexBody) -> Result<()> {
    let mut text = body_to_json(k)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Trajectory rows under [`CSV_HEADER`].
pub fn trajectory_csv(rows: &[TrajectoryRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(out, "{},{},{},{}", r.step, r.v_n, r.v_1, r.ball_distance).expect("writing to a string");
    }
    out
}

/// Outline of a body in the drawing plane: planar bodies as they are,
/// bodies of revolution by their section through the axis.
fn outline(k: &ConvexBody) -> Result<Vec<(f64, f64)>> {
    match k {
        ConvexBody::Polytope(p) if p.dim() == 2 => Ok(p.vertices().iter().map(|v| (v.x(), v.y())).collect()),
        ConvexBody::Sample(s) if s.dim() == 2 => Ok(s.wulff_polytope()?.vertices().iter().map(|v| (v.x(), v.y())).collect()),
        ConvexBody::Revolution(r) => {
            let st = r.stations();
            let mut pts: Vec<(f64, f64)> = st.iter().map(|&(t, x)| (t, x)).collect();
            pts.extend(st.iter().rev().map(|&(t, x)| (t, -x)));
            Ok(pts)
        }
        _ => Err(Error::Unsupported(format!("SVG output of a {}-dimensional {}", k.dim(), k.kind()))),
    }
}

/// Static SVG 1.1 overlay of labelled snapshots, later ones drawn darker.
pub fn snapshots_svg(snapshots: &[(usize, ConvexBody)]) -> Result<String> {
    let outlines = snapshots.iter().map(|(s, k)| Ok((*s, outline(k)?))).collect::<Result<Vec<_>>>()?;
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (_, pts) in &outlines {
        for &(x, y) in pts {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
    }
    if outlines.iter().all(|(_, p)| p.is_empty()) {
        (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
    }
    let pad = 0.05 * (x1 - x0).max(y1 - y0).max(1e-9);
    let (w, h) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let stroke = 0.004 * w.max(h);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        (600.0 * h / w).round().max(1.0),
        x0 - pad,
        -(y1 + pad),
        w,
        h
    )
    .expect("writing to a string");
    let m = outlines.len().max(1);
    for (k, (step, pts)) in outlines.iter().enumerate() {
        let shade = 200 - (200 * (k + 1) / m) as u32;
        let points: Vec<String> = pts.iter().map(|(x, y)| format!("{x},{}", -y)).collect();
        writeln!(
            out,
            "  <polygon points=\"{}\" fill=\"none\" stroke=\"rgb({shade},{shade},{shade})\" stroke-width=\"{stroke}\"><title>step {step}</title></polygon>",
            points.join(" ")
        )
        .expect("writing to a string");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn subspace_value(h: &Subspace) -> Value {
    json!({
        "ambient": h.ambient_dim(),
        "basis": h.basis().iter().map(|b| b.coords().to_vec()).collect::<Vec<_>>(),
    })
}

pub fn subspace_from_value(v: &Value) -> Result<Subspace> {
    let bad = || Error::InvalidInput("subspace needs 'ambient' and 'basis'".into());
    let n = v.get("ambient").and_then(Value::as_u64).ok_or_else(bad)? as usize;
    let rows: Vec<Vec<f64>> = serde_json::from_value(v.get("basis").cloned().ok_or_else(bad)?).map_err(|_| bad())?;
    let basis = rows.iter().map(|r| vector(r, n)).collect::<Result<Vec<_>>>()?;
    Subspace::new(n, basis)
}

pub fn spec_value(spec: &SymSpec) -> Result<Value> {
    let p = &spec.params;
    Ok(json!({
        "op": spec.op.name(),
        "n": spec.n(),
        "i": spec.i(),
        "H": subspace_value(&spec.h),
        "params": {
            "p": p.p,
            "c": p.c,
            "slice_count": p.slice_count,
            "G": p.g.as_ref().map(subspace_value),
            "M_polygon": p.m_polygon.as_ref().map(|m| body_to_value(&m.clone().into())).transpose()?,
        },
    }))
}

pub fn case_value(case: &Case) -> Result<Value> {
    Ok(match case {
        Case::Nested { inner, outer } => json!({"kind": "nested", "inner": body_to_value(inner)?, "outer": body_to_value(outer)?}),
        Case::Functional { body, j } => json!({"kind": "functional", "body": body_to_value(body)?, "j": j}),
        Case::Single { body } => json!({"kind": "single", "body": body_to_value(body)?}),
        Case::Translated { body, shift } => {
            json!({"kind": "translated", "body": body_to_value(body)?, "shift": shift.coords().to_vec()})
        }
        Case::Projected { body, t } => json!({"kind": "projected", "body": body_to_value(body)?, "T": subspace_value(t)}),
    })
}

/// Reads back a case written by [`case_value`], so that a witness can be
/// re-run from a report.
pub fn case_from_value(v: &Value) -> Result<Case> {
    let field = |name: &str| v.get(name).ok_or_else(|| Error::InvalidInput(format!("case needs '{name}'")));
    let body = |name: &str| body_from_value(field(name)?);
    Ok(match v.get("kind").and_then(Value::as_str) {
        Some("nested") => Case::Nested { inner: body("inner")?, outer: body("outer")? },
        Some("functional") => Case::Functional {
            body: body("body")?,
            j: field("j")?.as_u64().ok_or_else(|| Error::InvalidInput("j must be a count".into()))? as usize,
        },
        Some("single") => Case::Single { body: body("body")? },
        Some("translated") => {
            let b = body("body")?;
            let s: Vec<f64> = serde_json::from_value(field("shift")?.clone()).map_err(|e| Error::InvalidInput(e.to_string()))?;
            let shift = vector(&s, b.dim())?;
            Case::Translated { body: b, shift }
        }
        Some("projected") => Case::Projected { body: body("body")?, t: subspace_from_value(field("T")?)? },
        other => return Err(Error::InvalidInput(format!("unknown case kind {other:?}"))),
    })
}

fn witness_value(w: &Witness) -> Result<Value> {
    Ok(json!({
        "trial": w.trial,
        "description": w.description,
        "margin": num(w.margin),
        "tolerance": num(w.tolerance),
        "case": case_value(&w.case)?,
    }))
}

fn result_value(r: &PropertyResult) -> Result<Value> {
    let functionals = r
        .functionals
        .iter()
        .map(|f| {
            Ok(json!({
                "j": f.j,
                "verdict": f.verdict,
                "worst_margin": num(f.worst_margin),
                "witness": f.witness.as_ref().map(witness_value).transpose()?,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "property": r.property,
        "number": r.property.number(),
        "expected": r.expected.map(|e| e.to_string()),
        "verdict": r.verdict,
        "matches": r.matches,
        "trials": r.trials,
        "worst_margin": num(r.worst_margin),
        "tolerance": num(r.tolerance),
        "strict": r.strict,
        "functionals": functionals,
        "witness": r.witness.as_ref().map(witness_value).transpose()?,
        "note": r.note,
    }))
}

/// A report row with its witnesses' bodies inlined.
pub fn report_value(report: &PropertyReport, seed: u64, trials: usize) -> Result<Value> {
    Ok(json!({
        "sym": spec_value(&report.spec)?,
        "seed": seed,
        "trials": trials,
        "row": report.row(),
        "matches": report.matches,
        "mismatches": report.mismatches(),
        "properties": report.results.iter().map(result_value).collect::<Result<Vec<_>>>()?,
    }))
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{hausdorff_distance, ToleranceConfig};

    fn roundtrip(k: &ConvexBody) -> ConvexBody {
        body_from_json(&body_to_json(k).unwrap()).unwrap()
    }

    #[test]
    fn polytopes_roundtrip_exactly() {
        let pts = [Vector::new3(0.1, 1.0 / 3.0, -2e-17), Vector::new3(1.0, 0.7, 0.2), Vector::new3(0.3, 1.0, -0.2), Vector::new3(0.2, 0.1, 1.3)];
        let k: ConvexBody = VPolytope::hull(&pts).unwrap().into();
        let back = roundtrip(&k);
        assert_eq!(back, k);
        assert_eq!(hausdorff_distance(&k, &back, &ToleranceConfig::default()).unwrap(), 0.0);
    }

    #[test]
    fn samples_and_profiles_roundtrip() {
        let g = DirectionGrid::shared(3, 512).unwrap();
        let s: ConvexBody = SupportSample::ball(g, &Vector::new3(0.1, 0.2, 0.3), 0.7).into();
        assert_eq!(roundtrip(&s), s);
        let axis = Subspace::line(Vector::new3(1.0, 2.0, 2.0)).unwrap();
        let r: ConvexBody = RevolutionProfile::with_offset(axis, Vector::new3(0.0, 1.0, -1.0), vec![(-1.0, 0.0), (0.2, 0.9), (1.5, 0.4)])
            .unwrap()
            .into();
        assert_eq!(roundtrip(&r), r);
    }

    #[test]
    fn file_format() {
        let k: ConvexBody = VPolytope::hull(&[Vector::new2(0.0, 0.0), Vector::new2(1.0, 0.0), Vector::new2(0.0, 1.0)]).unwrap().into();
        let v: Value = serde_json::from_str(&body_to_json(&k).unwrap()).unwrap();
        assert_eq!(v["schema"], "symkit-body-v1");
        assert_eq!(v["type"], "vpolytope");
        assert_eq!(v["dim"], 2);
        assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn malformed_files_are_rejected() {
        let cases = [
            r#"{"schema":"other","type":"vpolytope","dim":2,"vertices":[[0,0],[1,0],[0,1]]}"#,
            r#"{"schema":"symkit-body-v1","type":"vpolytope","dim":2,"vertices":[[0,0,0]]}"#,
            r#"{"schema":"symkit-body-v1","type":"vpolytope","dim":4,"vertices":[]}"#,
            r#"{"schema":"symkit-body-v1","type":"support_sample","dim":2,"grid":{"count":7},"values":[]}"#,
            r#"{"schema":"symkit-body-v1","type":"revolution_profile","dim":2,"axis":[1,0],"offset":[0,0],"stations":[[0,1]]}"#,
            r#"{"schema":"symkit-body-v1","type":"cone","dim":3}"#,
            "not json",
        ];
        for c in cases {
            assert!(body_from_json(c).is_err(), "{c}");
        }
    }

    #[test]
    fn csv_layout() {
        let rows = [TrajectoryRow { step: 0, v_n: 4.0, v_1: 4.0, ball_distance: 0.25 }];
        assert_eq!(trajectory_csv(&rows), "step,V_n,V_1,ball_distance\n0,4,4,0.25\n");
    }

    #[test]
    fn svg_of_polygons() {
        let sq: ConvexBody = VPolytope::hull(&[Vector::new2(-1.0, -1.0), Vector::new2(1.0, -1.0), Vector::new2(1.0, 1.0), Vector::new2(-1.0, 1.0)])
            .unwrap()
            .into();
        let svg = snapshots_svg(&[(0, sq.clone()), (5, sq)]).unwrap();
        assert!(svg.contains("version=\"1.1\""));
        assert_eq!(svg.matches("<polygon").count(), 2);
        let cube: ConvexBody = crate::analytic::make_box(&[1.0, 1.0, 1.0]).unwrap().into();
        assert!(matches!(snapshots_svg(&[(0, cube)]), Err(Error::Unsupported(_))));
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.txt");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn cases_roundtrip() {
        let k: ConvexBody = VPolytope::hull(&[Vector::new2(0.0, 0.0), Vector::new2(1.0, 0.0), Vector::new2(0.0, 1.0)]).unwrap().into();
        let cases = [
            Case::Single { body: k.clone() },
            Case::Translated { body: k.clone(), shift: Vector::new2(0.0, 0.5) },
            Case::Projected { body: k.clone(), t: Subspace::line_at_angle(0.2) },
            Case::Functional { body: k.clone(), j: 1 },
            Case::Nested { inner: k.clone(), outer: k },
        ];
        for c in cases {
            assert_eq!(case_from_value(&case_value(&c).unwrap()).unwrap(), c);
        }
    }
}
