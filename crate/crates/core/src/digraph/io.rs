//! Plain-text edge lists and DOT export.
//!
//! ```text
//! bipartite 3 3        digraph 3
//! A0 B0                0 1
//! B0 A1                1 2
//! ...                  ...
//! ```

use std::fmt::Write as _;

use super::{BipartiteDigraph, GeneralDigraph, GraphError, Side, VertexRef};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyDigraph {
    Bipartite(BipartiteDigraph),
    General(GeneralDigraph),
}

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(line: usize, s: &str) -> Result<usize, GraphError> {
    s.parse()
        .map_err(|_| parse_err(line, format!("expected a nonnegative integer, got `{s}`")))
}

/// Non-blank lines with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn two_fields(line: usize, l: &str) -> Result<(&str, &str), GraphError> {
    let mut it = l.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some(x), Some(y), None) => Ok((x, y)),
        _ => Err(parse_err(line, format!("expected two fields, got `{l}`"))),
    }
}

/// Parses either format, dispatching on the header keyword.
pub fn parse_any(text: &str) -> Result<AnyDigraph, GraphError> {
    let mut it = lines(text);
    let (no, header) = it.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    match fields.as_slice() {
        ["bipartite", a, b] => {
            let (a, b) = (parse_usize(no, a)?, parse_usize(no, b)?);
            let mut edges = Vec::new();
            for (no, l) in it {
                let (u, v) = two_fields(no, l)?;
                let u: VertexRef = u.parse().map_err(|e: String| parse_err(no, e))?;
                let v: VertexRef = v.parse().map_err(|e: String| parse_err(no, e))?;
                edges.push((u, v));
            }
            BipartiteDigraph::from_edges(a, b, edges).map(AnyDigraph::Bipartite)
        }
        ["digraph", n] => {
            let n = parse_usize(no, n)?;
            let mut edges = Vec::new();
            for (no, l) in it {
                let (u, v) = two_fields(no, l)?;
                edges.push((parse_usize(no, u)?, parse_usize(no, v)?));
            }
            GeneralDigraph::from_edges(n, edges).map(AnyDigraph::General)
        }
        _ => Err(parse_err(
            no,
            format!("expected `bipartite <a> <b>` or `digraph <n>`, got `{header}`"),
        )),
    }
}

impl BipartiteDigraph {
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        match parse_any(text)? {
            AnyDigraph::Bipartite(g) => Ok(g),
            AnyDigraph::General(_) => Err(parse_err(1, "expected a bipartite edge list")),
        }
    }

    /// Header line then one `tail head` line per edge, LF-terminated.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("bipartite {} {}\n", self.a_size(), self.b_size());
        for (u, v) in self.edges() {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph G {\n");
        for side in [Side::A, Side::B] {
            let shape = if side == Side::A { "box" } else { "ellipse" };
            for v in self.side_vertices(side) {
                writeln!(s, "  {v} [shape={shape}];").unwrap();
            }
        }
        for (u, v) in self.edges() {
            writeln!(s, "  {u} -> {v};").unwrap();
        }
        s.push_str("}\n");
        s
    }
}

impl GeneralDigraph {
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        match parse_any(text)? {
            AnyDigraph::General(g) => Ok(g),
            AnyDigraph::Bipartite(_) => Err(parse_err(1, "expected a general edge list")),
        }
    }

    pub fn to_edge_list(&self) -> String {
        use super::Digraph;
        let mut s = format!("digraph {}\n", self.order());
        for (u, v) in self.edges() {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }

    pub fn to_dot(&self) -> String {
        use super::Digraph;
        let mut s = String::from("digraph G {\n");
        for v in 0..self.order() {
            writeln!(s, "  v{v};").unwrap();
        }
        for (u, v) in self.edges() {
            writeln!(s, "  v{u} -> v{v};").unwrap();
        }
        s.push_str("}\n");
        s
    }
}

impl AnyDigraph {
    pub fn to_edge_list(&self) -> String {
        match self {
            AnyDigraph::Bipartite(g) => g.to_edge_list(),
            AnyDigraph::General(g) => g.to_edge_list(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_bipartite() {
        let text = "bipartite 2 1\nA0 B0\nA1 B0\nB0 A1\n";
        let g = BipartiteDigraph::parse_edge_list(text).unwrap();
        assert_eq!(g.to_edge_list(), text);
    }

    #[test]
    fn round_trip_general() {
        let text = "digraph 3\n0 1\n1 2\n2 0\n";
        let g = GeneralDigraph::parse_edge_list(text).unwrap();
        assert_eq!(g.to_edge_list(), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_any("bipartite 1 1\nA0 B0\nA0 X1\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 3, .. }), "{err:?}");
        assert!(parse_any("graph 3\n").is_err());
        assert!(matches!(
            parse_any("bipartite 1 1\nA0 A0\n"),
            Err(GraphError::SameSideEdge { .. })
        ));
    }

    #[test]
    fn dot_shapes() {
        let g = BipartiteDigraph::parse_edge_list("bipartite 1 1\nA0 B0\n").unwrap();
        let dot = g.to_dot();
        assert!(dot.contains("A0 [shape=box]"));
        assert!(dot.contains("B0 [shape=ellipse]"));
        assert!(dot.contains("A0 -> B0"));
    }
}
