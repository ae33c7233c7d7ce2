//! Text forms of subspaces, operator parameters and subspace sequences.

use symkit::convergence::{default_theta, SequenceKind};
use symkit::symmetrize::SymParams;
use symkit::{Error, Result, Subspace, VPolytope, Vector};

/// Rows separated by `;`, coordinates by `,`: `1,0,0;0,1,0`.
pub fn rows(text: &str) -> Result<Vec<Vector>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(';')
        .map(|row| {
            let xs = row
                .split(',')
                .map(|x| x.trim().parse::<f64>().map_err(|_| Error::InvalidInput(format!("bad number '{}'", x.trim()))))
                .collect::<Result<Vec<_>>>()?;
            if xs.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput(format!("non-finite coordinate in '{row}'")));
            }
            Vector::from_slice(&xs).ok_or_else(|| Error::InvalidInput(format!("'{row}' needs 2 or 3 coordinates")))
        })
        .collect()
}

/// `basis=<rows>`, spanned and orthonormalized in ℝⁿ. An empty basis is `{o}`.
pub fn subspace(text: &str, n: usize) -> Result<Subspace> {
    let body = text
        .trim()
        .strip_prefix("basis=")
        .ok_or_else(|| Error::InvalidInput(format!("subspace must read 'basis=...', got '{text}'")))?;
    span(body, n)
}

fn span(text: &str, n: usize) -> Result<Subspace> {
    let basis = rows(text)?;
    if let Some(v) = basis.iter().find(|v| v.dim() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: v.dim() });
    }
    if basis.is_empty() {
        return Ok(Subspace::origin(n));
    }
    Subspace::spanned_by(n, &basis)
}

/// Applies `key=value` pairs: `p`, `c`, `slice_count`, `m` (vertices of the
/// M-polygon as rows) and `g` (basis rows).
pub fn params(pairs: &[String], n: usize) -> Result<SymParams> {
    let mut out = SymParams::default();
    for pair in pairs {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("parameter must read key=value, got '{pair}'")))?;
        let num = || v.trim().parse::<f64>().map_err(|_| Error::InvalidInput(format!("bad value for {k}: '{v}'")));
        match k.trim() {
            "p" => out.p = Some(num()?),
            "c" => out.c = Some(num()?),
            "slice_count" => {
                out.slice_count =
                    Some(v.trim().parse().map_err(|_| Error::InvalidInput(format!("bad slice_count '{v}'")))?)
            }
            "m" => out.m_polygon = Some(VPolytope::hull(&rows(v)?)?),
            "g" => out.g = Some(span(v, n)?),
            other => return Err(Error::InvalidInput(format!("unknown parameter '{other}'"))),
        }
    }
    Ok(out)
}

/// `dense`, `rotation[:θ]`, `random[:seed]` or `fixed:<rows>|<rows>|…`.
pub fn sequence(text: &str, n: usize, default_seed: u64) -> Result<SequenceKind> {
    let (kind, arg) = match text.split_once(':') {
        Some((k, a)) => (k.trim(), Some(a.trim())),
        None => (text.trim(), None),
    };
    Ok(match (kind, arg) {
        ("dense", None) => SequenceKind::DenseEnumeration,
        ("rotation", None) => SequenceKind::IrrationalRotation(default_theta()),
        ("rotation", Some(a)) => SequenceKind::IrrationalRotation(
            a.parse().ok().filter(|t: &f64| t.is_finite()).ok_or_else(|| Error::InvalidInput(format!("bad angle '{a}'")))?,
        ),
        ("random", None) => SequenceKind::UniformRandom(default_seed),
        ("random", Some(a)) => {
            SequenceKind::UniformRandom(a.parse().map_err(|_| Error::InvalidInput(format!("bad seed '{a}'")))?)
        }
        ("fixed", Some(a)) => SequenceKind::FixedList(a.split('|').map(|s| span(s, n)).collect::<Result<_>>()?),
        _ => return Err(Error::InvalidInput(format!("unknown sequence '{text}'"))),
    })
}
