//! Text format for presentations and element expressions.
//!
//! A presentation file is line oriented; `#` starts a comment and blank
//! lines are skipped:
//!
//! ```text
//! vertices: e f
//! arrow: a e f [1,0]
//! arrow: a* f e [1,1]
//! relation: a.a* + b.b*
//! ```
//!
//! The arrow weight is optional and defaults to `[1]`. Element expressions
//! are signed sums of terms `coeff*path` with rational `coeff` (omitted when
//! 1) and dot-separated paths; a bare vertex name denotes its lazy path.
//! Printing is canonical, so parse . print is the identity on printed
//! output.

use num::BigInt;

use crate::error::{Error, Result};
use crate::linalg::{self, Scalar};
use crate::presentation::{Degree, Presentation};
use crate::quiver::{Element, Path, Quiver};

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col_offset: usize,
    q: &'a Quiver,
}

impl<'a> Cursor<'a> {
    fn new(q: &'a Quiver, s: &str, line: usize, col_offset: usize) -> Self {
        Cursor {
            chars: s.chars().collect(),
            pos: 0,
            line,
            col_offset,
            q,
        }
    }

    fn col(&self) -> usize {
        self.col_offset + self.pos + 1
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        syntax(self.line, self.col(), msg)
    }

    fn parse_integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a digit"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| self.err(format!("invalid integer `{s}`")))
    }

    fn parse_rational(&mut self) -> Result<Scalar> {
        let num = self.parse_integer()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let den = self.parse_integer()?;
            if den == BigInt::from(0) {
                return Err(self.err("zero denominator"));
            }
            Ok(Scalar::new(num, den))
        } else {
            Ok(Scalar::from_integer(num))
        }
    }

    fn parse_name(&mut self) -> Result<String> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.pos += 1,
            _ => return Err(self.err("expected a name")),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some('*') | Some('!')) {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn parse_path(&mut self) -> Result<Path> {
        let col = self.col();
        let first = self.parse_name()?;
        if self.peek() != Some('.') {
            if let Some(v) = self.q.vertex_index(&first) {
                return Ok(Path::lazy(v));
            }
        }
        let mut path = match self.q.arrow_index(&first) {
            Some(a) => Path::of_arrow(self.q, a),
            None => {
                return Err(syntax(
                    self.line,
                    col,
                    format!("unknown arrow or vertex `{first}`"),
                ))
            }
        };
        while self.peek() == Some('.') {
            self.pos += 1;
            let col = self.col();
            let name = self.parse_name()?;
            let a = self
                .q
                .arrow_index(&name)
                .ok_or_else(|| syntax(self.line, col, format!("unknown arrow `{name}`")))?;
            path = path.compose(&Path::of_arrow(self.q, a)).ok_or_else(|| {
                syntax(
                    self.line,
                    col,
                    format!("arrow `{name}` is not composable at this point"),
                )
            })?;
        }
        Ok(path)
    }

    fn parse_element(&mut self) -> Result<Element> {
        let mut out = Element::zero();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.err("empty element expression"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    linalg::one()
                }
                Some('-') => {
                    self.pos += 1;
                    -linalg::one()
                }
                Some(_) if first => linalg::one(),
                Some(_) => return Err(self.err("expected `+` or `-` between terms")),
                None => break,
            };
            first = false;
            self.skip_ws();
            let coeff = if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                let r = self.parse_rational()?;
                if self.peek() != Some('*') {
                    return Err(self.err("expected `*` after a coefficient"));
                }
                self.pos += 1;
                r
            } else {
                linalg::one()
            };
            let path = self.parse_path()?;
            out.add_term(sign * coeff, path);
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
        }
        Ok(out)
    }
}

/// Parse an element expression over the given quiver.
pub fn parse_element(q: &Quiver, s: &str) -> Result<Element> {
    parse_element_at(q, s, 1, 0)
}

fn parse_element_at(q: &Quiver, s: &str, line: usize, col_offset: usize) -> Result<Element> {
    let mut cur = Cursor::new(q, s, line, col_offset);
    let e = cur.parse_element()?;
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(cur.err("trailing input after element expression"));
    }
    Ok(e)
}

fn parse_weight(s: &str, line: usize, col_offset: usize) -> Result<Degree> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| syntax(line, col_offset + 1, "weight must look like [1] or [1,0]"))?;
    inner
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| syntax(line, col_offset + 1, format!("invalid weight `{part}`")))
        })
        .collect()
}

/// Parse a full presentation file.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut vertices: Option<(usize, Vec<String>)> = None;
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut weights: Vec<Option<Degree>> = Vec::new();
    let mut relation_lines: Vec<(usize, usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = match raw.find('#') {
            Some(h) => &raw[..h],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| syntax(lineno, 1, "expected `key: ...`"))?;
        let col_offset = key.len() + 1;
        match key.trim() {
            "vertices" => {
                if vertices.is_some() {
                    return Err(syntax(lineno, 1, "duplicate `vertices` line"));
                }
                let names: Vec<String> =
                    rest.split_whitespace().map(|s| s.to_string()).collect();
                if names.is_empty() {
                    return Err(syntax(lineno, col_offset + 1, "no vertices given"));
                }
                vertices = Some((lineno, names));
            }
            "arrow" => {
                let mut parts = rest.split_whitespace();
                let name = parts
                    .next()
                    .ok_or_else(|| syntax(lineno, col_offset + 1, "missing arrow name"))?;
                let src = parts
                    .next()
                    .ok_or_else(|| syntax(lineno, col_offset + 1, "missing source vertex"))?;
                let tgt = parts
                    .next()
                    .ok_or_else(|| syntax(lineno, col_offset + 1, "missing target vertex"))?;
                let w = match parts.next() {
                    Some(ws) => {
                        if parts.next().is_some() {
                            return Err(syntax(lineno, col_offset + 1, "trailing input"));
                        }
                        Some(parse_weight(ws, lineno, col_offset)?)
                    }
                    None => None,
                };
                arrows.push((name.into(), src.into(), tgt.into()));
                weights.push(w);
            }
            "relation" => {
                relation_lines.push((lineno, col_offset, rest.to_string()));
            }
            other => {
                return Err(syntax(lineno, 1, format!("unknown key `{other}`")));
            }
        }
    }
    let (_vline, vnames) =
        vertices.ok_or_else(|| Error::InvalidPresentation("missing `vertices` line".into()))?;
    for (name, _, _) in &arrows {
        if vnames.iter().any(|v| v == name) {
            return Err(Error::DuplicateName(format!(
                "`{name}` used as both vertex and arrow"
            )));
        }
    }
    // The quiver sorts arrows by name; permute the weights the same way.
    let mut order: Vec<usize> = (0..arrows.len()).collect();
    order.sort_by(|&i, &j| arrows[i].0.cmp(&arrows[j].0));
    let rank = weights
        .iter()
        .flatten()
        .map(|w| w.len())
        .max()
        .unwrap_or(1);
    let sorted_weights: Vec<Degree> = order
        .iter()
        .map(|&i| weights[i].clone().unwrap_or_else(|| vec![1; rank]))
        .collect();
    let quiver = Quiver::new(vnames, arrows)?;
    let mut relations = Vec::with_capacity(relation_lines.len());
    for (lineno, col_offset, s) in relation_lines {
        relations.push(parse_element_at(&quiver, &s, lineno, col_offset)?);
    }
    Presentation::new(quiver, relations, sorted_weights)
}

/// Canonical printing; `parse_presentation` inverts it.
pub fn print_presentation(p: &Presentation) -> String {
    let q = p.quiver();
    let mut out = String::new();
    out.push_str("vertices:");
    for v in q.vertex_names() {
        out.push(' ');
        out.push_str(v);
    }
    out.push('\n');
    for (i, a) in q.arrows().iter().enumerate() {
        let w: Vec<String> = p.weights()[i].iter().map(|c| c.to_string()).collect();
        out.push_str(&format!(
            "arrow: {} {} {} [{}]\n",
            a.name,
            q.vertex_name(a.source),
            q.vertex_name(a.target),
            w.join(",")
        ));
    }
    for r in p.relations() {
        out.push_str(&format!("relation: {}\n", r.display(q)));
    }
    out
}
