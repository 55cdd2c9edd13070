use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{Path, Quiver, QuiverError};
use crate::foundation::{Field, Scalar};

/// Finite linear combination of paths.
///
/// Terms are kept in a map ordered by the monomial order, so the last entry
/// is the leading term.
#[derive(Clone, Debug)]
pub struct PathAlgebraElement {
    quiver: Arc<Quiver>,
    field: Field,
    terms: BTreeMap<Path, Scalar>,
}

impl PartialEq for PathAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.terms == other.terms && self.same_quiver(other)
    }
}

impl Eq for PathAlgebraElement {}

impl PathAlgebraElement {
    pub fn zero(quiver: &Arc<Quiver>, field: Field) -> Self {
        PathAlgebraElement {
            quiver: quiver.clone(),
            field,
            terms: BTreeMap::new(),
        }
    }

    /// The unit `Σ e_i`.
    pub fn one(quiver: &Arc<Quiver>, field: Field) -> Self {
        let mut u = Self::zero(quiver, field);
        for v in 0..quiver.num_vertices() {
            u.add_term(Path::trivial(v), Scalar::one(field));
        }
        u
    }

    pub fn from_path(quiver: &Arc<Quiver>, field: Field, p: Path) -> Self {
        Self::from_terms(quiver, field, [(p, Scalar::one(field))])
    }

    pub fn from_terms<I: IntoIterator<Item = (Path, Scalar)>>(quiver: &Arc<Quiver>, field: Field, terms: I) -> Self {
        let mut u = Self::zero(quiver, field);
        for (p, c) in terms {
            u.add_term(p, c);
        }
        u
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Path, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Path) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn leading(&self) -> Option<(&Path, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, p: Path, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&p);
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    fn same_quiver(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.quiver, &other.quiver) || *self.quiver == *other.quiver
    }

    fn compatible(&self, other: &Self) -> Result<(), QuiverError> {
        if !self.same_quiver(other) {
            return Err(QuiverError::QuiverMismatch);
        }
        if self.field != other.field {
            return Err(QuiverError::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, QuiverError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, QuiverError> {
        self.add(&other.scale(&-Scalar::one(self.field)))
    }

    pub fn scale(&self, a: &Scalar) -> Self {
        let mut out = Self::zero(&self.quiver, self.field);
        if !a.is_zero() {
            for (p, c) in &self.terms {
                out.terms.insert(p.clone(), c * a);
            }
        }
        out
    }

    /// Bilinear extension of path concatenation; non-composable products vanish.
    pub fn mul(&self, other: &Self) -> Result<Self, QuiverError> {
        self.compatible(other)?;
        let mut out = Self::zero(&self.quiver, self.field);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(pq) = p.mul(q) {
                    out.add_term(pq, a * b);
                }
            }
        }
        Ok(out)
    }

    /// Components `e_j u e_i`, keyed by `(i, j)` = (source, target).
    pub fn uniform_components(&self) -> BTreeMap<(usize, usize), PathAlgebraElement> {
        let mut out: BTreeMap<(usize, usize), PathAlgebraElement> = BTreeMap::new();
        for (p, c) in &self.terms {
            out.entry((p.source(), p.target()))
                .or_insert_with(|| Self::zero(&self.quiver, self.field))
                .add_term(p.clone(), c.clone());
        }
        out
    }

    /// Minimum length among the terms.
    pub fn min_length(&self) -> Option<usize> {
        self.terms.keys().map(|p| p.len()).min()
    }
}

impl fmt::Display for PathAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, Scalar)> = self
            .terms
            .iter()
            .rev()
            .map(|(p, c)| (self.quiver.path_display(p), c.clone()))
            .collect();
        write!(f, "{}", crate::render::linear_combination(&terms))
    }
}
