//! Line-oriented text format and DOT export for power circuits.
//!
//! ```text
//! powercircuit v1
//! v 0
//! v 1
//! e 1 0 +
//! m 1 +
//! ```
//!
//! Lines may appear in any order after the header; `#` starts a comment.
//! The parser rejects duplicate vertices/edges/marks, dangling ids and
//! directed cycles.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::circuit::{PowerCircuit, Sign, VertexId};
use crate::error::Error;

const HEADER: &str = "powercircuit v1";

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::CircuitParse {
        line,
        msg: msg.into(),
    }
}

impl PowerCircuit {
    /// Parses the text format. Vertex ids are preserved.
    pub fn from_text(text: &str) -> Result<PowerCircuit, Error> {
        let mut lines = text.lines().enumerate();
        let header = loop {
            match lines.next() {
                Some((no, l)) => {
                    let l = strip_comment(l);
                    if l.is_empty() {
                        continue;
                    }
                    break (no + 1, l);
                }
                None => return Err(parse_err(0, "missing header")),
            }
        };
        if header.1 != HEADER {
            return Err(parse_err(header.0, format!("expected `{HEADER}` header")));
        }

        let mut declared: BTreeMap<u32, VertexId> = BTreeMap::new();
        let mut edges: Vec<(usize, u32, u32, Sign)> = Vec::new();
        let mut marks: Vec<(usize, u32, Sign)> = Vec::new();
        for (no, raw) in lines {
            let no = no + 1;
            let l = strip_comment(raw);
            if l.is_empty() {
                continue;
            }
            let mut parts = l.split_whitespace();
            let kind = parts.next().unwrap();
            let fields: Vec<&str> = parts.collect();
            match kind {
                "v" => {
                    let [id] = fields[..] else {
                        return Err(parse_err(no, "vertex line needs one id"));
                    };
                    let id = parse_id(no, id)?;
                    if declared.contains_key(&id) {
                        return Err(parse_err(no, format!("duplicate vertex {id}")));
                    }
                    declared.insert(id, VertexId::new(id));
                }
                "e" => {
                    let [src, dst, sign] = fields[..] else {
                        return Err(parse_err(no, "edge line needs `e <src> <dst> <+|->`"));
                    };
                    edges.push((no, parse_id(no, src)?, parse_id(no, dst)?, parse_sign(no, sign)?));
                }
                "m" => {
                    let [id, sign] = fields[..] else {
                        return Err(parse_err(no, "mark line needs `m <id> <+|->`"));
                    };
                    marks.push((no, parse_id(no, id)?, parse_sign(no, sign)?));
                }
                other => return Err(parse_err(no, format!("unknown line kind `{other}`"))),
            }
        }

        let mut c = PowerCircuit::empty();
        let mut ids: BTreeMap<u32, VertexId> = BTreeMap::new();
        for &raw in declared.keys() {
            ids.insert(raw, c.add_vertex_with_id(raw));
        }
        let mut seen_edges = BTreeMap::new();
        for (no, s, t, sign) in edges {
            let (&src, &dst) = match (ids.get(&s), ids.get(&t)) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(parse_err(no, "edge references undeclared id".to_string())),
            };
            if seen_edges.insert((src, dst), sign).is_some() {
                return Err(parse_err(no, format!("duplicate edge {s} -> {t}")));
            }
            c.add_edge(src, dst, sign);
        }
        let mut seen_marks = BTreeMap::new();
        for (no, id, sign) in marks {
            let &v = ids
                .get(&id)
                .ok_or_else(|| parse_err(no, "mark references undeclared id"))?;
            if seen_marks.insert(v, sign).is_some() {
                return Err(parse_err(no, format!("duplicate mark on {id}")));
            }
            c.set_mark(v, Some(sign));
        }
        if c.topo_order().is_none() {
            return Err(parse_err(0, "circuit contains a directed cycle"));
        }
        Ok(c)
    }

    /// Renders the text format; `from_text` round-trips it.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(HEADER);
        s.push('\n');
        for v in self.vertices() {
            let _ = writeln!(s, "v {v}");
        }
        for (src, dst, sign) in self.edges() {
            let _ = writeln!(s, "e {src} {dst} {}", sign.as_char());
        }
        for (v, sign) in self.marks() {
            let _ = writeln!(s, "m {v} {}", sign.as_char());
        }
        s
    }

    /// GraphViz DOT rendering: marked vertices are filled (label carries the
    /// mark sign), edges are labelled `+`/`-`.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        s.push_str("digraph powercircuit {\n");
        s.push_str("  rankdir=LR;\n");
        s.push_str("  node [shape=circle];\n");
        for v in self.vertices() {
            match self.mark_of(v) {
                Some(sign) => {
                    let _ = writeln!(
                        s,
                        "  n{v} [label=\"{v} ({})\" style=filled fillcolor=black fontcolor=white];",
                        sign.as_char()
                    );
                }
                None => {
                    let _ = writeln!(s, "  n{v} [label=\"{v}\"];");
                }
            }
        }
        for (src, dst, sign) in self.edges() {
            let _ = writeln!(s, "  n{src} -> n{dst} [label=\"{}\"];", sign.as_char());
        }
        s.push_str("}\n");
        s
    }
}

fn strip_comment(l: &str) -> &str {
    match l.find('#') {
        Some(i) => l[..i].trim(),
        None => l.trim(),
    }
}

fn parse_id(line: usize, s: &str) -> Result<u32, Error> {
    s.parse::<u32>()
        .map_err(|_| parse_err(line, format!("invalid id `{s}`")))
}

fn parse_sign(line: usize, s: &str) -> Result<Sign, Error> {
    match s {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        _ => Err(parse_err(line, format!("invalid sign `{s}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn round_trip() {
        for v in [0i64, 1, -1, 35, -1000] {
            let c = PowerCircuit::constant(v);
            let parsed = PowerCircuit::from_text(&c.to_text()).unwrap();
            assert_eq!(parsed.eval(64).unwrap().to_i64().unwrap(), v);
            assert_eq!(parsed.vertex_count(), c.vertex_count());
            assert_eq!(parsed.edge_count(), c.edge_count());
        }
    }

    #[test]
    fn parses_fixture() {
        let text = "\
powercircuit v1
# the circuit for 2
v 0
v 1
v 2
e 1 0 +
e 2 1 +
m 2 +
";
        let c = PowerCircuit::from_text(text).unwrap();
        assert_eq!(c.eval(64).unwrap().to_i64().unwrap(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(PowerCircuit::from_text("").is_err());
        assert!(PowerCircuit::from_text("nonsense").is_err());
        // dangling edge id
        assert!(PowerCircuit::from_text("powercircuit v1\nv 0\ne 0 1 +").is_err());
        // duplicate edge
        assert!(
            PowerCircuit::from_text("powercircuit v1\nv 0\nv 1\ne 1 0 +\ne 1 0 -").is_err()
        );
        // duplicate vertex
        assert!(PowerCircuit::from_text("powercircuit v1\nv 0\nv 0").is_err());
        // duplicate mark
        assert!(PowerCircuit::from_text("powercircuit v1\nv 0\nm 0 +\nm 0 -").is_err());
        // cycle
        assert!(
            PowerCircuit::from_text("powercircuit v1\nv 0\nv 1\ne 0 1 +\ne 1 0 +").is_err()
        );
        // dangling mark
        assert!(PowerCircuit::from_text("powercircuit v1\nv 0\nm 3 +").is_err());
    }

    #[test]
    fn dot_renders_marks_filled() {
        let dot = PowerCircuit::constant(-1).to_dot();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("style=filled"));
        assert!(dot.contains("label=\"-\"") || dot.contains("(-)"));
    }
}
