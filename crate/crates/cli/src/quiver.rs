//! Quiver files: `{"vertices": [...], "edges": [[a, b], ...], "orientation": [[src, dst], ...]}`.

use quivstrat::{Error, QuiverGraph, Result};
use serde::Deserialize;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverDoc {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
    #[serde(default)]
    orientation: Option<Vec<(String, String)>>,
}

/// Parse a quiver document; errors carry the line and column, or the offending edge.
pub fn parse_quiver_file(text: &str) -> Result<QuiverGraph> {
    let doc: QuiverDoc = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("quiver file: {e}")))?;
    let index = |label: &str, what: &str, k: usize| {
        doc.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::Parse(format!("{what} {k}: unknown vertex {label:?}")))
    };
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (k, (a, b)) in doc.edges.iter().enumerate() {
        edges.push((index(a, "edge", k)?, index(b, "edge", k)?));
    }
    let orientation = match &doc.orientation {
        None => None,
        Some(dirs) => {
            if dirs.len() != edges.len() {
                return Err(Error::Parse(format!("orientation has {} entries for {} edges", dirs.len(), edges.len())));
            }
            let mut out = Vec::with_capacity(dirs.len());
            for (k, ((s, t), &(a, b))) in dirs.iter().zip(&edges).enumerate() {
                let (s, t) = (index(s, "orientation", k)?, index(t, "orientation", k)?);
                if (s, t) == (a, b) {
                    out.push(true);
                } else if (t, s) == (a, b) {
                    out.push(false);
                } else {
                    return Err(Error::Parse(format!("orientation {k} does not match edge {k}")));
                }
            }
            Some(out)
        }
    };
    QuiverGraph::new(doc.vertices, edges, orientation)
}

/// `A<n>`, `affA<n>` or `jordan`.
pub fn builtin(name: &str) -> Result<QuiverGraph> {
    let bad = || Error::Parse(format!("unknown graph {name:?}; use A<n>, affA<n> or jordan"));
    if name == "jordan" {
        return Ok(QuiverGraph::jordan());
    }
    let (affine, digits) = match name.strip_prefix("affA") {
        Some(d) => (true, d),
        None => (false, name.strip_prefix('A').ok_or_else(bad)?),
    };
    let n: usize = digits.parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    Ok(if affine { QuiverGraph::affine_a(n) } else { QuiverGraph::finite_a(n) })
}
