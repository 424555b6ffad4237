//! Deterministic reports: an ordered tree of labeled values that renders
//! to fixed-layout text or to JSON carrying the same payload. Both
//! renderings are pure functions of the tree, so identical inputs yield
//! identical output bytes.

use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Str(String),
    Int(i64),
    UInt(u64),
    Bool(bool),
    /// Inline tuple of scalars, rendered as `(a, b, c)`.
    List(Vec<Node>),
    /// Block of tuples, one per line.
    Rows(Vec<Vec<Node>>),
    /// Nested section with ordered keys.
    Map(Vec<(String, Node)>),
}

impl Node {
    pub fn str(s: impl Into<String>) -> Node {
        Node::Str(s.into())
    }

    pub fn int(v: i64) -> Node {
        Node::Int(v)
    }

    pub fn uint(v: u64) -> Node {
        Node::UInt(v)
    }

    pub fn usize(v: usize) -> Node {
        Node::UInt(v as u64)
    }

    pub fn list_of_usize(vs: impl IntoIterator<Item = usize>) -> Node {
        Node::List(vs.into_iter().map(Node::usize).collect())
    }

    pub fn list_of_str(vs: impl IntoIterator<Item = String>) -> Node {
        Node::List(vs.into_iter().map(Node::Str).collect())
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub title: String,
    pub entries: Vec<(String, Node)>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report {
            title: title.into(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, key: impl Into<String>, node: Node) {
        self.entries.push((key.into(), node));
    }

    /// Fixed-layout text rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.title);
        for (key, node) in &self.entries {
            write_text(&mut out, key, node, 0);
        }
        out
    }

    /// JSON rendering of the same tree, object keys in report order.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push('{');
        write_json_str(&mut out, "title");
        out.push(':');
        write_json_str(&mut out, &self.title);
        for (key, node) in &self.entries {
            out.push(',');
            write_json_str(&mut out, key);
            out.push(':');
            write_json_node(&mut out, node);
        }
        out.push('}');
        out
    }
}

fn is_inline(node: &Node) -> bool {
    matches!(
        node,
        Node::Str(_) | Node::Int(_) | Node::UInt(_) | Node::Bool(_) | Node::List(_)
    )
}

fn inline_text(node: &Node) -> String {
    match node {
        Node::Str(s) => s.clone(),
        Node::Int(v) => v.to_string(),
        Node::UInt(v) => v.to_string(),
        Node::Bool(b) => if *b { "yes" } else { "no" }.to_string(),
        Node::List(items) => {
            let parts: Vec<String> = items.iter().map(inline_text).collect();
            format!("({})", parts.join(", "))
        }
        Node::Rows(_) | Node::Map(_) => unreachable!("not an inline node"),
    }
}

fn write_text(out: &mut String, key: &str, node: &Node, depth: usize) {
    let pad = "  ".repeat(depth);
    if is_inline(node) {
        let _ = writeln!(out, "{pad}{key}: {}", inline_text(node));
        return;
    }
    match node {
        Node::Rows(rows) => {
            let _ = writeln!(out, "{pad}{key}:");
            for row in rows {
                let parts: Vec<String> = row.iter().map(inline_text).collect();
                if parts.len() == 1 {
                    let _ = writeln!(out, "{pad}  {}", parts[0]);
                } else {
                    let _ = writeln!(out, "{pad}  ({})", parts.join(", "));
                }
            }
        }
        Node::Map(entries) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, n) in entries {
                write_text(out, k, n, depth + 1);
            }
        }
        _ => unreachable!(),
    }
}

fn write_json_str(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

fn write_json_node(out: &mut String, node: &Node) {
    match node {
        Node::Str(s) => write_json_str(out, s),
        Node::Int(v) => {
            let _ = write!(out, "{v}");
        }
        Node::UInt(v) => {
            let _ = write!(out, "{v}");
        }
        Node::Bool(b) => {
            let _ = write!(out, "{b}");
        }
        Node::List(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_json_node(out, item);
            }
            out.push(']');
        }
        Node::Rows(rows) => {
            out.push('[');
            for (i, row) in rows.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_json_node(out, &Node::List(row.clone()));
            }
            out.push(']');
        }
        Node::Map(entries) => {
            out.push('{');
            for (i, (k, n)) in entries.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_json_str(out, k);
                out.push(':');
                write_json_node(out, n);
            }
            out.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("sample");
        r.push("count", Node::usize(13));
        r.push("signed", Node::int(-4));
        r.push("flag", Node::Bool(true));
        r.push("vector", Node::list_of_usize([0, 1, 2]));
        r.push(
            "matrix",
            Node::Rows(vec![
                vec![Node::str("t^2"), Node::str("0")],
                vec![Node::str("1"), Node::str("-2*t")],
            ]),
        );
        r.push(
            "detail",
            Node::Map(vec![
                ("inner".to_string(), Node::usize(7)),
                ("name".to_string(), Node::str("q \"x\"")),
            ]),
        );
        r
    }

    #[test]
    fn text_layout_is_stable() {
        let text = sample().to_text();
        let expected = "sample\n\
                        count: 13\n\
                        signed: -4\n\
                        flag: yes\n\
                        vector: (0, 1, 2)\n\
                        matrix:\n\
                        \x20 (t^2, 0)\n\
                        \x20 (1, -2*t)\n\
                        detail:\n\
                        \x20 inner: 7\n\
                        \x20 name: q \"x\"\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn json_is_valid_and_carries_the_payload() {
        let json = sample().to_json();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["count"], 13);
        assert_eq!(value["signed"], -4);
        assert_eq!(value["flag"], true);
        assert_eq!(value["vector"][2], 2);
        assert_eq!(value["matrix"][1][1], "-2*t");
        assert_eq!(value["detail"]["inner"], 7);
        assert_eq!(value["detail"]["name"], "q \"x\"");
    }

    #[test]
    fn rendering_is_deterministic() {
        assert_eq!(sample().to_text(), sample().to_text());
        assert_eq!(sample().to_json(), sample().to_json());
    }
}
