//! Text formats for complexes and colorings.
//!
//! Facet lists start with a header line `dim <d> vertices <n>`; every other
//! non-blank line that does not begin with `#` is one facet given by its
//! whitespace-separated vertex labels. The writer emits facets in canonical
//! order with sorted vertices, so parsing and rewriting is byte-stable up to
//! comments and ordering.
//!
//! Colorings are `vertex<TAB>color` lines, optionally preceded by
//! `# key: value` header lines.

use std::fmt::Write as _;

use itertools::Itertools;

use crate::coloring::{Color, Coloring};
use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::error::{Error, Result};

pub fn write_facets(x: &SimplicialComplex) -> String {
    let dim = x.dim().map_or(-1, |d| d as i64);
    let mut out = format!("dim {dim} vertices {}\n", x.num_vertices());
    for f in x.facets() {
        writeln!(out, "{}", f.vertices().iter().join(" ")).unwrap();
    }
    out
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_facets(text: &str) -> Result<SimplicialComplex> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let (dim, nverts) = match tokens.as_slice() {
        ["dim", d, "vertices", n] => {
            let d: i64 = d.parse().map_err(|_| Error::parse(hline, format!("invalid dimension {d:?}")))?;
            let n: usize = n.parse().map_err(|_| Error::parse(hline, format!("invalid vertex count {n:?}")))?;
            (d, n)
        }
        _ => return Err(Error::parse(hline, "expected header `dim <d> vertices <n>`")),
    };

    let mut facets = Vec::new();
    let mut last_line = hline;
    for (ln, line) in lines {
        last_line = ln;
        let labels = line
            .split_whitespace()
            .map(|t| t.parse::<VertexId>().map_err(|e| Error::parse(ln, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let face = Face::new(labels).map_err(|e| Error::parse(ln, e.to_string()))?;
        facets.push(face);
    }
    if facets.is_empty() {
        return Err(Error::parse(hline, "no facets listed"));
    }
    let x = SimplicialComplex::from_faces(&facets);
    let got_dim = x.dim().map_or(-1, |d| d as i64);
    if got_dim != dim {
        return Err(Error::parse(last_line, format!("header declares dim {dim}, facets have dim {got_dim}")));
    }
    if x.num_vertices() != nverts {
        return Err(Error::parse(
            last_line,
            format!("header declares {nverts} vertices, facets use {}", x.num_vertices()),
        ));
    }
    Ok(x)
}

pub fn write_coloring(c: &Coloring, header: &[(&str, String)]) -> String {
    let mut out = String::new();
    for (k, v) in header {
        writeln!(out, "# {k}: {v}").unwrap();
    }
    for (v, col) in c.iter() {
        writeln!(out, "{v}\t{col}").unwrap();
    }
    out
}

/// Parses a coloring and its `# key: value` header entries.
pub fn parse_coloring(text: &str) -> Result<(Coloring, Vec<(String, String)>)> {
    let mut header = Vec::new();
    let mut c = Coloring::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(h) = line.strip_prefix('#') {
            if let Some((k, v)) = h.split_once(':') {
                header.push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        let (v, col) = line
            .split_once('\t')
            .or_else(|| line.split_once(char::is_whitespace))
            .ok_or_else(|| Error::parse(ln, "expected `vertex<TAB>color`"))?;
        let v: VertexId = v.trim().parse().map_err(|e: Error| Error::parse(ln, e.to_string()))?;
        let col: Color = col.trim().parse().map_err(|e: Error| Error::parse(ln, e.to_string()))?;
        if c.get(&v).is_some() {
            return Err(Error::parse(ln, format!("vertex {v} colored twice")));
        }
        c.insert(v, col);
    }
    Ok((c, header))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_telescope, P2_FACETS};

    const P2_FILE: &str = "\
# punctured projective plane
dim 2 vertices 6
1 2 6
1 3 6
2 4 6
3 5 6
2 3 4
2 3 5
1 3 4
1 4 5
1 2 5
";

    #[test]
    fn parses_p2() {
        let x = parse_facets(P2_FILE).unwrap();
        assert_eq!(x, SimplicialComplex::from_facets(P2_FACETS).unwrap());
    }

    #[test]
    fn round_trip_is_byte_stable() {
        let x = build_telescope(2, 3).unwrap().complex;
        let text = write_facets(&x);
        let y = parse_facets(&text).unwrap();
        assert_eq!(x, y);
        assert_eq!(write_facets(&y), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(parse_facets("dim 2 vertices 0\n"), Err(Error::parse(1, "no facets listed")));
        assert!(matches!(parse_facets("dim 2 vertices 3\n1 2 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_facets("dim 3 vertices 3\n1 2 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_facets("dim 2 vertices 4\n1 2 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_facets("vertices 4\n1 2 3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_facets("# only a comment\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn coloring_round_trip() {
        let c: Coloring = [(VertexId::Int(1), Color::base(2).with(5)), (VertexId::from("p0.3"), Color::base(7))]
            .into_iter()
            .collect();
        let text = write_coloring(&c, &[("seed", "7".into())]);
        assert_eq!(text, "# seed: 7\n1\t(2,5)\np0.3\t7\n");
        let (d, header) = parse_coloring(&text).unwrap();
        assert_eq!(d, c);
        assert_eq!(header, vec![("seed".to_string(), "7".to_string())]);
        assert!(matches!(parse_coloring("1\t2\n1\t3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_coloring("1\tx\n"), Err(Error::Parse { line: 1, .. })));
    }
}
