//! Text syntax for Cohn elements.
//!
//! Terms are separated by `+` or `-` and carry an optional integer or
//! fractional coefficient. Letters are separated by whitespace: `a` is a real
//! arrow, `a*` its ghost, `e_v` an idempotent and `1` the unit.

use super::cohn::{CohnAlgebra, Letter};
use super::word::CohnElement;
use super::DgError;
use crate::foundation::{Rational, Scalar};

enum Token {
    Plus,
    Minus,
    Word(String),
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let flush = |cur: &mut String, out: &mut Vec<Token>| {
        if !cur.is_empty() {
            out.push(Token::Word(std::mem::take(cur)));
        }
    };
    for ch in text.chars() {
        match ch {
            c if c.is_whitespace() => flush(&mut cur, &mut out),
            '+' | '-' if cur.is_empty() => out.push(if ch == '+' { Token::Plus } else { Token::Minus }),
            _ => cur.push(ch),
        }
    }
    flush(&mut cur, &mut out);
    out
}

fn is_coefficient(s: &str) -> bool {
    let mut parts = s.splitn(2, '/');
    let num = parts.next().unwrap_or("");
    let den = parts.next();
    !num.is_empty()
        && num.chars().all(|c| c.is_ascii_digit())
        && den.is_none_or(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()))
}

/// Parses an element of the Cohn algebra of `alg`'s quiver.
pub fn parse_element(alg: &CohnAlgebra, text: &str) -> Result<CohnElement, DgError> {
    let field = alg.field();
    let q = alg.quiver();
    let tokens = tokenize(text);
    if tokens.is_empty() {
        return Err(DgError::Parse("empty expression".into()));
    }
    let mut out = alg.zero();
    let mut i = 0;
    let mut first = true;
    while i < tokens.len() {
        let mut sign = Scalar::one(field);
        let mut saw_op = false;
        while let Some(t @ (Token::Plus | Token::Minus)) = tokens.get(i) {
            if matches!(t, Token::Minus) {
                sign = -sign;
            }
            saw_op = true;
            i += 1;
        }
        if !first && !saw_op {
            return Err(DgError::Parse("expected `+` or `-` between terms".into()));
        }
        first = false;
        let mut coeff = sign;
        let mut factors: Vec<CohnElement> = Vec::new();
        let mut any = false;
        while let Some(Token::Word(w)) = tokens.get(i) {
            // A coefficient only opens a term; later numbers are letters like `1`.
            if !any && is_coefficient(w) && w != "1" {
                let r = Rational::parse(w).ok_or_else(|| DgError::Parse(format!("bad coefficient `{w}`")))?;
                let c = Scalar::from_rational(field, &r).map_err(|e| DgError::Parse(e.to_string()))?;
                coeff = &coeff * &c;
            } else if w == "1" {
                factors.push(alg.one());
            } else if let Some(v) = w.strip_prefix("e_").filter(|v| q.vertex_id(v).is_ok()) {
                factors.push(alg.vertex(q.vertex_id(v).expect("checked")));
            } else if let Some(name) = w.strip_suffix('*') {
                let a = q
                    .arrow_id(name)
                    .map_err(|_| DgError::Parse(format!("unknown arrow `{name}`")))?;
                factors.push(alg.letter(Letter::Ghost(a)));
            } else {
                let a = q
                    .arrow_id(w)
                    .map_err(|_| DgError::Parse(format!("unknown arrow `{w}`")))?;
                factors.push(alg.letter(Letter::Real(a)));
            }
            any = true;
            i += 1;
        }
        if !any {
            return Err(DgError::Parse("dangling sign".into()));
        }
        out.add_scaled(&alg.product_of(&factors), &coeff);
    }
    Ok(out)
}
