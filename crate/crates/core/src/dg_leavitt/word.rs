use std::collections::BTreeMap;

use crate::foundation::{Field, Scalar};
use crate::quiver::Path;

/// The Cohn monomial `p* q`: ghost part `p*` followed by real part `q`.
///
/// Both paths end at the junction vertex `t(p) = t(q)`; trivial parts are
/// trivial paths at that vertex. The word runs from `s(q)` to `s(p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralizedWord {
    pub ghost: Path,
    pub real: Path,
}

impl GeneralizedWord {
    pub fn new(ghost: Path, real: Path) -> GeneralizedWord {
        debug_assert_eq!(ghost.target(), real.target());
        GeneralizedWord { ghost, real }
    }

    pub fn vertex(v: usize) -> GeneralizedWord {
        GeneralizedWord {
            ghost: Path::trivial(v),
            real: Path::trivial(v),
        }
    }

    /// `|p*q| = l(p) − l(q)`.
    pub fn degree(&self) -> i64 {
        self.ghost.len() as i64 - self.real.len() as i64
    }

    /// Number of real letters, the level of the word in the colimit filtration.
    pub fn level(&self) -> usize {
        self.real.len()
    }

    pub fn source(&self) -> usize {
        self.real.source()
    }

    pub fn target(&self) -> usize {
        self.ghost.source()
    }

    pub fn junction(&self) -> usize {
        self.real.target()
    }

    pub fn is_vertex(&self) -> bool {
        self.ghost.is_trivial() && self.real.is_trivial()
    }
}

/// Sparse linear combination of Cohn monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohnElement {
    field: Field,
    terms: BTreeMap<GeneralizedWord, Scalar>,
}

impl CohnElement {
    pub fn zero(field: Field) -> CohnElement {
        CohnElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_word(field: Field, w: GeneralizedWord) -> CohnElement {
        let mut u = CohnElement::zero(field);
        u.add_term(w, Scalar::one(field));
        u
    }

    pub fn from_terms<I: IntoIterator<Item = (GeneralizedWord, Scalar)>>(field: Field, terms: I) -> CohnElement {
        let mut u = CohnElement::zero(field);
        for (w, c) in terms {
            u.add_term(w, c);
        }
        u
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<GeneralizedWord, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<GeneralizedWord, Scalar> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &GeneralizedWord) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn add_term(&mut self, w: GeneralizedWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &CohnElement, a: &Scalar) {
        if a.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c * a);
        }
    }

    pub fn add(&self, other: &CohnElement) -> CohnElement {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one(self.field));
        out
    }

    pub fn sub(&self, other: &CohnElement) -> CohnElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one(self.field));
        out
    }

    pub fn scale(&self, a: &Scalar) -> CohnElement {
        let mut out = CohnElement::zero(self.field);
        out.add_scaled(self, a);
        out
    }

    pub fn neg(&self) -> CohnElement {
        self.scale(&-Scalar::one(self.field))
    }

    /// Common degree of all terms; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|w| w.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Whether all terms share a degree (zero counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn max_level(&self) -> usize {
        self.terms.keys().map(|w| w.level()).max().unwrap_or(0)
    }

    /// Part of the element made of words at the given level.
    pub fn level_part(&self, level: usize) -> CohnElement {
        CohnElement::from_terms(
            self.field,
            self.terms
                .iter()
                .filter(|(w, _)| w.level() == level)
                .map(|(w, c)| (w.clone(), c.clone())),
        )
    }
}
