//! Line-oriented quiver format.
//!
//! ```text
//! # truncated polynomial algebra K[x]/(x^3)
//! field: Q
//! vertex 1
//! arrow x: 1 -> 1
//! relation: x*x*x
//! ```
//!
//! A relation is a linear combination of terms `<coeff>? <arrow>(*<arrow>)*`
//! with integer or fractional coefficients. `a*b` is the path "b then a".

use std::fmt;
use std::sync::Arc;

use super::{Path, PathAlgebraElement, Quiver};
use crate::foundation::{Field, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Result of parsing a quiver file.
#[derive(Debug, Clone)]
pub struct ParsedQuiver {
    pub quiver: Arc<Quiver>,
    pub relations: Vec<PathAlgebraElement>,
    pub field: Field,
    /// Whether the file contained a `field:` line.
    pub field_declared: bool,
    pub warnings: Vec<String>,
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    _text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            line,
            _text: text,
        }
    }

    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: column + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn expect_char(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(self.pos, format!("expected `{c}`")))
        }
    }

    fn expect_str(&mut self, s: &str) -> Result<(), ParseError> {
        self.skip_ws();
        let start = self.pos;
        for c in s.chars() {
            if self.peek() != Some(c) {
                return Err(self.err(start, format!("expected `{s}`")));
            }
            self.pos += 1;
        }
        Ok(())
    }

    /// Reads a name made of letters, digits, `_` and `'`.
    fn name(&mut self, what: &str) -> Result<(String, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' || c == '\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.err(start, format!("expected {what}")));
        }
        Ok((self.chars[start..self.pos].iter().collect(), start))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err(self.pos, "unexpected trailing input"))
        }
    }
}

fn is_arrow_name(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
}

struct RawTerm {
    coeff: Rational,
    arrows: Vec<(String, usize)>,
}

fn parse_combination(cur: &mut Cursor) -> Result<Vec<RawTerm>, ParseError> {
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        cur.skip_ws();
        let mut negative = false;
        match cur.peek() {
            Some('+') if !first => cur.pos += 1,
            Some('-') => {
                negative = true;
                cur.pos += 1;
            }
            None if first => return Err(cur.err(cur.pos, "empty relation")),
            _ if !first => return Err(cur.err(cur.pos, "expected `+` or `-`")),
            _ => {}
        }
        cur.skip_ws();
        let mut coeff = Rational::one();
        if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            let start = cur.pos;
            let num = cur.digits();
            let mut text = num;
            cur.skip_ws();
            if cur.peek() == Some('/') {
                cur.pos += 1;
                cur.skip_ws();
                let den = cur.digits();
                if den.is_empty() {
                    return Err(cur.err(cur.pos, "expected denominator"));
                }
                text = format!("{text}/{den}");
            }
            coeff = Rational::parse(&text).ok_or_else(|| cur.err(start, "invalid coefficient"))?;
            cur.skip_ws();
            if cur.peek() == Some('*') {
                cur.pos += 1;
            }
        }
        if negative {
            coeff = coeff.neg();
        }
        let mut arrows = vec![cur.name("arrow name")?];
        loop {
            cur.skip_ws();
            if cur.peek() == Some('*') {
                cur.pos += 1;
                arrows.push(cur.name("arrow name")?);
            } else {
                break;
            }
        }
        terms.push(RawTerm { coeff, arrows });
        first = false;
        if cur.at_end() {
            return Ok(terms);
        }
    }
}

struct RawRelation {
    line: usize,
    terms: Vec<(Rational, Vec<usize>, String)>,
}

/// Parses the quiver format; `default_field` applies when no `field:` line is present.
pub fn parse_quiver_file(text: &str, default_field: Field) -> Result<ParsedQuiver, ParseError> {
    let mut quiver = Quiver::empty();
    let mut field: Option<Field> = None;
    let mut raw_relations: Vec<RawRelation> = Vec::new();
    let mut warnings = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = match raw_line.find('#') {
            Some(k) => &raw_line[..k],
            None => raw_line,
        };
        let mut cur = Cursor::new(content, line_no);
        if cur.at_end() {
            continue;
        }
        let (keyword, kw_col) = cur.name("keyword")?;
        match keyword.as_str() {
            "field" => {
                cur.expect_char(':')?;
                let (kind, col) = cur.name("field name")?;
                let f = match kind.as_str() {
                    "Q" => Field::Rational,
                    "Fp" => {
                        cur.skip_ws();
                        let start = cur.pos;
                        let digits = cur.digits();
                        let p: u64 = digits.parse().map_err(|_| cur.err(start, "expected a prime"))?;
                        Field::prime(p).map_err(|e| cur.err(start, e.to_string()))?
                    }
                    _ => return Err(cur.err(col, "field must be `Q` or `Fp <prime>`")),
                };
                if field.is_some() {
                    return Err(cur.err(kw_col, "field declared twice"));
                }
                field = Some(f);
            }
            "vertex" => {
                let (name, col) = cur.name("vertex name")?;
                quiver.add_vertex(&name).map_err(|e| cur.err(col, e.to_string()))?;
            }
            "arrow" => {
                let (name, col) = cur.name("arrow name")?;
                if !is_arrow_name(&name) {
                    return Err(cur.err(col, "arrow names must start with a letter or `_`"));
                }
                cur.expect_char(':')?;
                let (src, scol) = cur.name("source vertex")?;
                cur.expect_str("->")?;
                let (tgt, tcol) = cur.name("target vertex")?;
                let s = quiver.vertex_id(&src).map_err(|e| cur.err(scol, e.to_string()))?;
                let t = quiver.vertex_id(&tgt).map_err(|e| cur.err(tcol, e.to_string()))?;
                if quiver.arrow_id(&name).is_ok() {
                    return Err(cur.err(col, format!("duplicate arrow name `{name}`")));
                }
                quiver.push_arrow(&name, s, t);
            }
            "relation" => {
                cur.expect_char(':')?;
                let terms = parse_combination(&mut cur)?;
                let mut resolved = Vec::new();
                for term in terms {
                    let mut ids = Vec::new();
                    for (name, col) in &term.arrows {
                        ids.push(quiver.arrow_id(name).map_err(|e| cur.err(*col, e.to_string()))?);
                    }
                    let label: Vec<&str> = term.arrows.iter().map(|(n, _)| n.as_str()).collect();
                    if ids.len() < 2 {
                        return Err(cur.err(
                            term.arrows[0].1,
                            format!(
                                "relation term `{}` has length 1; relations must be combinations of paths of length at least 2",
                                label.join("*")
                            ),
                        ));
                    }
                    resolved.push((term.coeff, ids, label.join("*")));
                }
                raw_relations.push(RawRelation {
                    line: line_no,
                    terms: resolved,
                });
            }
            _ => {
                return Err(cur.err(
                    kw_col,
                    format!("unknown keyword `{keyword}` (expected field, vertex, arrow or relation)"),
                ))
            }
        }
        if keyword != "relation" {
            cur.finish()?;
        }
    }
    let field_declared = field.is_some();
    let field = field.unwrap_or(default_field);
    let quiver = Arc::new(quiver);
    let mut relations = Vec::new();
    for rel in raw_relations {
        let mut elem = PathAlgebraElement::zero(&quiver, field);
        for (coeff, ids, label) in &rel.terms {
            let c = Scalar::from_rational(field, coeff).map_err(|_| ParseError {
                line: rel.line,
                column: 1,
                message: format!("coefficient {coeff} is not defined over {field}"),
            })?;
            match Path::from_arrows(&quiver, ids) {
                Some(p) => elem.add_term(p, c),
                None => warnings.push(format!(
                    "line {}: `{label}` is not a path (non-composable product is zero)",
                    rel.line
                )),
            }
        }
        if elem.is_zero() {
            warnings.push(format!("line {}: relation is zero and was rejected", rel.line));
        } else {
            relations.push(elem);
        }
    }
    Ok(ParsedQuiver {
        quiver,
        relations,
        field,
        field_declared,
        warnings,
    })
}

/// Canonical text form; parsing it back yields the same presentation.
pub fn emit_quiver_file(pq: &ParsedQuiver) -> String {
    let q = &pq.quiver;
    let mut out = String::new();
    out.push_str(&format!("field: {}\n", pq.field));
    for v in q.vertices() {
        out.push_str(&format!("vertex {v}\n"));
    }
    for a in q.arrows() {
        out.push_str(&format!(
            "arrow {}: {} -> {}\n",
            a.name,
            q.vertex_name(a.source),
            q.vertex_name(a.target)
        ));
    }
    for r in &pq.relations {
        out.push_str(&format!("relation: {r}\n"));
    }
    out
}
