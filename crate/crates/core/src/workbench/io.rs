//! The line-based graph and coloring formats.
//!
//! ```text
//! # comment
//! p <n> <m>
//! r <v> <deg> <u1> ... <udeg>
//! ```
//!
//! One `r` line per vertex gives its counterclockwise rotation. Vertices
//! and colors are 1-based. Coloring files hold `<v> <c>` lines.

use std::fmt::Write as _;

use thiserror::Error;

use crate::colorer::Coloring;
use crate::error::GraphError;
use crate::planar::PlanarGraph;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn number(line: usize, (column, tok): (usize, &str)) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| syntax(line, column, format!("expected a nonnegative integer, found `{tok}`")))
}

fn vertex_id(line: usize, tok: (usize, &str), n: usize) -> Result<usize, ParseError> {
    let v = number(line, tok)?;
    if v == 0 || v > n {
        return Err(syntax(line, tok.0, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<(usize, &str)>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, tokens(l)))
        .filter(|(_, t)| !t.is_empty() && !t[0].1.starts_with('#'))
}

/// Parses and fully validates a graph file.
pub fn parse_graph(text: &str) -> Result<PlanarGraph, ParseError> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return Err(syntax(1, 1, "missing header `p <n> <m>`"));
    };
    if header[0].1 != "p" || header.len() != 3 {
        return Err(syntax(hl, header[0].0, "expected header `p <n> <m>`"));
    }
    let n = number(hl, header[1])?;
    let m = number(hl, header[2])?;
    let mut rotation: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut last = hl;
    for (ln, toks) in lines {
        last = ln;
        if toks[0].1 != "r" {
            return Err(syntax(ln, toks[0].0, format!("expected `r`, found `{}`", toks[0].1)));
        }
        if toks.len() < 3 {
            return Err(syntax(ln, toks[0].0, "expected `r <v> <deg> ...`"));
        }
        let v = vertex_id(ln, toks[1], n)?;
        let deg = number(ln, toks[2])?;
        if toks.len() != 3 + deg {
            return Err(syntax(
                ln,
                toks[2].0,
                format!("degree {deg} but {} neighbors listed", toks.len() - 3),
            ));
        }
        if rotation[v].is_some() {
            return Err(syntax(ln, toks[1].0, format!("vertex {} listed twice", v + 1)));
        }
        let nbrs = toks[3..]
            .iter()
            .map(|&t| vertex_id(ln, t, n))
            .collect::<Result<Vec<_>, _>>()?;
        rotation[v] = Some(nbrs);
    }
    if let Some(v) = rotation.iter().position(Option::is_none) {
        return Err(syntax(last, 1, format!("no rotation line for vertex {}", v + 1)));
    }
    let rotation: Vec<Vec<usize>> = rotation.into_iter().flatten().collect();
    let half: usize = rotation.iter().map(Vec::len).sum();
    if half != 2 * m {
        return Err(syntax(hl, header[2].0, format!("header says {m} edges, rotations give {}/2", half)));
    }
    if n == 0 {
        return Ok(PlanarGraph::empty());
    }
    Ok(PlanarGraph::from_rotation(rotation)?)
}

pub fn write_graph(g: &PlanarGraph) -> String {
    let mut s = format!("p {} {}\n", g.n(), g.m());
    for v in 0..g.n() {
        let _ = write!(s, "r {} {}", v + 1, g.degree(v));
        for &u in g.neighbors(v) {
            let _ = write!(s, " {}", u + 1);
        }
        s.push('\n');
    }
    s
}

/// Parses `<v> <c>` lines for a graph on `n` vertices. Vertices without a
/// line stay uncolored.
pub fn parse_coloring(text: &str, n: usize, budget: usize) -> Result<Coloring, ParseError> {
    let mut c = Coloring::new(n, budget);
    for (ln, toks) in content_lines(text) {
        if toks.len() != 2 {
            return Err(syntax(ln, toks[0].0, "expected `<v> <c>`"));
        }
        let v = vertex_id(ln, toks[0], n)?;
        let color = number(ln, toks[1])?;
        if c.get(v).is_some() {
            return Err(syntax(ln, toks[0].0, format!("vertex {} colored twice", v + 1)));
        }
        c.set(v, color);
    }
    Ok(c)
}

pub fn write_coloring(c: &Coloring) -> String {
    let mut s = String::new();
    for (v, col) in c.colors().iter().enumerate() {
        if let Some(col) = col {
            let _ = writeln!(s, "{} {}", v + 1, col);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::fixtures::*;
    use crate::planar::trace_faces;

    const K4: &str = "p 4 6\nr 1 3 2 3 4\nr 2 3 1 4 3\nr 3 3 1 2 4\nr 4 3 1 3 2\n";

    #[test]
    fn k4_file() {
        let g = parse_graph(K4).unwrap();
        assert_eq!((g.n(), g.m()), (4, 6));
        assert_eq!(trace_faces(&g).unwrap().len(), 4);
        assert_eq!(write_graph(&g), K4);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = format!("# tetrahedron\n\n{}# end\n", K4.replace("r 2", "  r 2"));
        assert_eq!(parse_graph(&text).unwrap(), parse_graph(K4).unwrap());
    }

    #[test]
    fn round_trip_on_fixtures() {
        for g in [octahedron(), icosahedron(), cube(), wheel(7), bowtie(), path(4), layered(&[1, 0, 2, 3])] {
            assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        }
    }

    #[test]
    fn asymmetric_rotation_is_rejected() {
        let text = "p 3 2\nr 1 2 2 3\nr 2 1 1\nr 3 0\n";
        let err = parse_graph(text).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 1, .. }));
        let text = "p 3 2\nr 1 2 2 3\nr 2 1 1\nr 3 1 2\n";
        assert!(matches!(
            parse_graph(text).unwrap_err(),
            ParseError::Graph(GraphError::Asymmetric { .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_graph("p 2 1\nr 1 1 2\nr 2 1 x\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax {
                line: 3,
                column: 7,
                message: "expected a nonnegative integer, found `x`".into()
            }
        );
        assert!(matches!(parse_graph("").unwrap_err(), ParseError::Syntax { line: 1, .. }));
        assert!(matches!(
            parse_graph("p 2 1\nr 1 2 2\n").unwrap_err(),
            ParseError::Syntax { line: 2, column: 5, .. }
        ));
        assert!(matches!(
            parse_graph("p 2 1\nr 3 1 1\n").unwrap_err(),
            ParseError::Syntax { line: 2, column: 3, .. }
        ));
    }

    #[test]
    fn bad_embeddings_are_rejected() {
        // K4 with one rotation reversed is not planar as embedded
        let text = "p 4 6\nr 1 3 2 4 3\nr 2 3 1 4 3\nr 3 3 1 2 4\nr 4 3 1 3 2\n";
        assert!(matches!(
            parse_graph(text).unwrap_err(),
            ParseError::Graph(GraphError::EmbeddingInvalid { .. })
        ));
        let text = "p 4 2\nr 1 1 2\nr 2 1 1\nr 3 1 4\nr 4 1 3\n";
        assert_eq!(parse_graph(text).unwrap_err(), ParseError::Graph(GraphError::NotConnected));
    }

    #[test]
    fn coloring_round_trip() {
        let c = Coloring::from_colors(vec![Some(3), None, Some(1)], 5);
        let text = write_coloring(&c);
        assert_eq!(text, "1 3\n3 1\n");
        assert_eq!(parse_coloring(&text, 3, 5).unwrap(), c);
        assert!(parse_coloring("1 2\n1 3\n", 3, 5).is_err());
        assert!(parse_coloring("4 2\n", 3, 5).is_err());
    }
}
