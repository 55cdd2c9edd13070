//! Quivers, paths, path-algebra elements and the quiver text format.
//!
//! Paths are written right to left: the arrow list of a [`Path`] is stored in
//! written order `α_n ⋯ α_1`, so `α_1` (the last entry) is applied first and
//! the DSL literal `a*b` means "b then a".

mod dsl;
mod element;

pub use dsl::{emit_quiver_file, parse_quiver_file, ParseError, ParsedQuiver};
pub use element::PathAlgebraElement;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow name `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("elements belong to different quivers")]
    QuiverMismatch,
    #[error("elements belong to different fields")]
    FieldMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver with ordered vertices and arrows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "QuiverRepr", into = "QuiverRepr")]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct QuiverRepr {
    vertices: Vec<String>,
    arrows: Vec<ArrowRepr>,
}

#[derive(Serialize, Deserialize)]
struct ArrowRepr {
    name: String,
    source: String,
    target: String,
}

impl TryFrom<QuiverRepr> for Quiver {
    type Error = QuiverError;
    fn try_from(r: QuiverRepr) -> Result<Self, Self::Error> {
        let mut q = Quiver::empty();
        for v in r.vertices {
            q.add_vertex(&v)?;
        }
        for a in r.arrows {
            q.add_arrow(&a.name, &a.source, &a.target)?;
        }
        Ok(q)
    }
}

impl From<Quiver> for QuiverRepr {
    fn from(q: Quiver) -> Self {
        QuiverRepr {
            arrows: q
                .arrows
                .iter()
                .map(|a| ArrowRepr {
                    name: a.name.clone(),
                    source: q.vertices[a.source].clone(),
                    target: q.vertices[a.target].clone(),
                })
                .collect(),
            vertices: q.vertices,
        }
    }
}

impl Quiver {
    pub fn empty() -> Quiver {
        Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
            vertex_index: HashMap::new(),
            arrow_index: HashMap::new(),
        }
    }

    /// Builds a quiver from vertex names and `(name, source, target)` triples.
    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Quiver, QuiverError> {
        let mut q = Quiver::empty();
        for v in vertices {
            q.add_vertex(v)?;
        }
        for (name, s, t) in arrows {
            q.add_arrow(name, s, t)?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize, QuiverError> {
        if self.vertex_index.contains_key(name) {
            return Err(QuiverError::DuplicateVertex(name.to_string()));
        }
        let id = self.vertices.len();
        self.vertices.push(name.to_string());
        self.vertex_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<usize, QuiverError> {
        if self.arrow_index.contains_key(name) {
            return Err(QuiverError::DuplicateArrow(name.to_string()));
        }
        let s = self.vertex_id(source)?;
        let t = self.vertex_id(target)?;
        Ok(self.push_arrow(name, s, t))
    }

    pub(crate) fn push_arrow(&mut self, name: &str, source: usize, target: usize) -> usize {
        let id = self.arrows.len();
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        self.arrow_index.insert(name.to_string(), id);
        id
    }

    pub fn vertex_id(&self, name: &str) -> Result<usize, QuiverError> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownVertex(name.to_string()))
    }

    pub fn arrow_id(&self, name: &str) -> Result<usize, QuiverError> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownArrow(name.to_string()))
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Arrows with the given source, in file order.
    pub fn arrows_from(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].source == v).collect()
    }

    /// Arrows with the given target, in file order.
    pub fn arrows_to(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].target == v).collect()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|a| a.source != v)
    }

    /// All paths of length `k`, in increasing monomial order.
    pub fn paths_of_length(&self, k: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..self.vertices.len()).map(Path::trivial).collect();
        for _ in 0..k {
            let mut next = Vec::new();
            for p in &out {
                for (a, arrow) in self.arrows.iter().enumerate() {
                    if arrow.source == p.target {
                        next.push(Path::arrow_of(self, a).mul(p).expect("composable"));
                    }
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    pub fn path_display(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e_{}", self.vertices[p.source])
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// A path `α_n ⋯ α_1` (arrows in written order) or a trivial path `e_v`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow_of(q: &Quiver, a: usize) -> Path {
        let arrow = q.arrow(a);
        Path {
            source: arrow.source,
            target: arrow.target,
            arrows: vec![a],
        }
    }

    /// Path from arrows in written order; `None` if some junction does not compose.
    pub fn from_arrows(q: &Quiver, arrows: &[usize]) -> Option<Path> {
        let (first, last) = (arrows.first()?, arrows.last()?);
        for w in arrows.windows(2) {
            if q.arrow(w[0]).source != q.arrow(w[1]).target {
                return None;
            }
        }
        Some(Path {
            source: q.arrow(*last).source,
            target: q.arrow(*first).target,
            arrows: arrows.to_vec(),
        })
    }

    /// Builds a path whose composability the caller has already checked.
    pub(crate) fn from_parts(source: usize, target: usize, arrows: Vec<usize>) -> Path {
        Path { source, target, arrows }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Arrows in written order (last applied first).
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    /// Concatenation `self · other` (other first), or `None` when `s(self) ≠ t(other)`.
    pub fn mul(&self, other: &Path) -> Option<Path> {
        if self.source != other.target {
            return None;
        }
        let mut arrows = Vec::with_capacity(self.arrows.len() + other.arrows.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: other.source,
            target: self.target,
            arrows,
        })
    }

    /// Sub-path of written positions `start..end`; an empty range gives the
    /// trivial path at that junction.
    pub fn subpath(&self, q: &Quiver, start: usize, end: usize) -> Path {
        if start == end {
            let v = if start == 0 {
                self.target
            } else {
                q.arrow(self.arrows[start - 1]).source
            };
            return Path::trivial(v);
        }
        Path {
            source: q.arrow(self.arrows[end - 1]).source,
            target: q.arrow(self.arrows[start]).target,
            arrows: self.arrows[start..end].to_vec(),
        }
    }

    /// First written position where `pattern` occurs as a contiguous sub-word.
    pub fn find(&self, pattern: &Path) -> Option<usize> {
        if pattern.is_trivial() {
            return None;
        }
        let k = pattern.arrows.len();
        if k > self.arrows.len() {
            return None;
        }
        (0..=self.arrows.len() - k).find(|&i| self.arrows[i..i + k] == pattern.arrows[..])
    }
}

impl Ord for Path {
    /// Length first, then arrow indices lexicographically in written order,
    /// then endpoints (which only matter for trivial paths).
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "quiver({} vertices, {} arrows)",
            self.vertices.len(),
            self.arrows.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rose() -> Quiver {
        Quiver::new(&["1"], &[("x", "1", "1")]).unwrap()
    }

    #[test]
    fn path_mul_examples() {
        let q = rose();
        let e = Path::trivial(0);
        assert_eq!(e.mul(&e), Some(e.clone()));
        let x = Path::arrow_of(&q, 0);
        let xx = x.mul(&x).unwrap();
        assert_eq!(xx.len(), 2);
        let a2 = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let a = Path::arrow_of(&a2, 0);
        assert_eq!(a.mul(&a), None);
        assert_eq!(Path::trivial(1).mul(&a), Some(a.clone()));
        assert_eq!(a.mul(&Path::trivial(0)), Some(a.clone()));
    }

    #[test]
    fn written_order_is_composition_order() {
        let q = Quiver::new(&["1", "2", "3"], &[("a", "2", "3"), ("b", "1", "2")]).unwrap();
        let ab = Path::from_arrows(&q, &[0, 1]).unwrap();
        assert_eq!((ab.source(), ab.target()), (0, 2));
        assert!(Path::from_arrows(&q, &[1, 0]).is_none());
        assert_eq!(Path::arrow_of(&q, 0).mul(&Path::arrow_of(&q, 1)), Some(ab));
    }

    #[test]
    fn duplicate_and_unknown_names_rejected() {
        assert!(Quiver::new(&["1", "1"], &[]).is_err());
        assert!(Quiver::new(&["1"], &[("a", "1", "2")]).is_err());
        assert!(Quiver::new(&["1"], &[("a", "1", "1"), ("a", "1", "1")]).is_err());
    }

    #[test]
    fn path_enumeration_counts() {
        let q = Quiver::new(&["1"], &[("x", "1", "1"), ("y", "1", "1")]).unwrap();
        assert_eq!(q.paths_of_length(0).len(), 1);
        assert_eq!(q.paths_of_length(3).len(), 8);
        let a2 = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        assert_eq!(a2.paths_of_length(2).len(), 0);
    }

    #[test]
    fn quiver_json_round_trip() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap();
        let s = serde_json::to_string(&q).unwrap();
        let back: Quiver = serde_json::from_str(&s).unwrap();
        assert_eq!(q, back);
    }
}
