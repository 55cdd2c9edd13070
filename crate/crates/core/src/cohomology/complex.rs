use std::collections::HashMap;
use std::sync::Arc;

use crate::dg_leavitt::{CohnAlgebra, CohnElement, GeneralizedWord, LeavittAlgebra};
use crate::fdalgebra::RadicalQuiverData;
use crate::foundation::{EchelonBasis, Field, Matrix, Scalar, SparseVector};

use super::CohomologyError;

/// A dg algebra spanned by monomials `p* q`, graded by degree and by the
/// arrow weight that `∂` preserves.
#[derive(Clone, Debug)]
pub struct WordComplex {
    cohn: CohnAlgebra,
    leavitt: Option<LeavittAlgebra>,
    weights: Vec<i64>,
}

impl WordComplex {
    /// `T_E(J*)`: ghost words of the full radical quiver.
    pub fn tensor(rq: &RadicalQuiverData) -> WordComplex {
        WordComplex {
            cohn: CohnAlgebra::new(Arc::new(rq.clone())),
            leavitt: None,
            weights: rq.weights(),
        }
    }

    /// `L(Q̃°)` in Leavitt normal form.
    pub fn leavitt(rq: &RadicalQuiverData) -> WordComplex {
        let lv = LeavittAlgebra::from_radical(rq);
        let full = rq.weights();
        let mut weights = vec![0; lv.quiver().num_arrows()];
        for (a, core) in lv.arrow_map().iter().enumerate() {
            if let Some(c) = core {
                weights[*c] = full[a];
            }
        }
        WordComplex {
            cohn: lv.cohn().clone(),
            leavitt: Some(lv),
            weights,
        }
    }

    pub fn cohn(&self) -> &CohnAlgebra {
        &self.cohn
    }

    pub fn leavitt_algebra(&self) -> Option<&LeavittAlgebra> {
        self.leavitt.as_ref()
    }

    pub fn field(&self) -> Field {
        self.cohn.field()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.iter().any(|&w| w != 0)
    }

    /// Ghost weight minus real weight.
    pub fn weight(&self, w: &GeneralizedWord) -> i64 {
        let g: i64 = w.ghost.arrows().iter().map(|&a| self.weights[a]).sum();
        let r: i64 = w.real.arrows().iter().map(|&a| self.weights[a]).sum();
        g - r
    }

    /// Monomials of degree `degree` with level at most `max_level`, ordered by
    /// level first so that prefixes are the truncations at lower levels.
    pub fn words(&self, degree: i64, max_level: usize) -> Vec<GeneralizedWord> {
        match &self.leavitt {
            None => {
                if degree < 0 {
                    return Vec::new();
                }
                self.cohn
                    .quiver()
                    .paths_of_length(degree as usize)
                    .into_iter()
                    .map(|g| GeneralizedWord::new(g.clone(), crate::quiver::Path::trivial(g.target())))
                    .collect()
            }
            Some(lv) => {
                let mut out = Vec::new();
                for p in 0..=max_level {
                    let mut ws: Vec<GeneralizedWord> = lv
                        .level_words(p, degree)
                        .into_iter()
                        .filter(|w| !lv.is_forbidden(w))
                        .collect();
                    ws.sort();
                    out.extend(ws);
                }
                out
            }
        }
    }

    pub fn differential(&self, u: &CohnElement) -> CohnElement {
        match &self.leavitt {
            None => self.cohn.differential(u),
            Some(lv) => lv.differential(u),
        }
    }

    pub fn mul(&self, u: &CohnElement, v: &CohnElement) -> CohnElement {
        match &self.leavitt {
            None => self.cohn.mul(u, v),
            Some(lv) => lv.mul(u, v),
        }
    }

    pub fn word_element(&self, w: &GeneralizedWord) -> CohnElement {
        CohnElement::from_word(self.field(), w.clone())
    }
}

/// An ordered monomial basis of one graded piece.
#[derive(Clone, Debug, Default)]
pub struct Block {
    pub words: Vec<GeneralizedWord>,
    index: HashMap<GeneralizedWord, usize>,
}

impl Block {
    pub fn new(words: Vec<GeneralizedWord>) -> Block {
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Block { words, index }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, w: &GeneralizedWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Coordinates of `u`; fails when a monomial lies outside the block.
    pub fn vectorize(&self, u: &CohnElement) -> Result<SparseVector, CohomologyError> {
        let mut pairs = Vec::with_capacity(u.len());
        for (w, c) in u.terms() {
            match self.index_of(w) {
                Some(i) => pairs.push((i, c.clone())),
                None => return Err(CohomologyError::OutsideTruncation(format!("{w:?}"))),
            }
        }
        Ok(SparseVector::from_pairs(pairs))
    }

    pub fn element(&self, field: Field, v: &SparseVector) -> CohnElement {
        CohnElement::from_terms(
            field,
            v.entries().iter().map(|(i, c)| (self.words[*i].clone(), c.clone())),
        )
    }
}

/// `∂` of every monomial of `from`, in the coordinates of `to`.
pub fn images(cx: &WordComplex, from: &Block, to: &Block) -> Result<Vec<SparseVector>, CohomologyError> {
    from.words
        .iter()
        .map(|w| to.vectorize(&cx.differential(&cx.word_element(w))))
        .collect()
}

/// A kernel basis in echelon shape: the `k`-th vector is `e_j − (earlier
/// columns)` for the `j` it is keyed by, so vectors keyed below a prefix span
/// the kernel restricted to that prefix.
pub fn echelon_kernel(images: &[SparseVector], target_dim: usize, field: Field) -> Vec<(usize, SparseVector)> {
    let mut eb = EchelonBasis::with_tracking(target_dim, field);
    let mut ids = Vec::new();
    let mut out = Vec::new();
    for (j, v) in images.iter().enumerate() {
        match eb.coordinates(v) {
            Some(c) => {
                let mut k = SparseVector::unit(j, field);
                for (id, a) in c.entries() {
                    k = k.axpy(&-a, &SparseVector::unit(ids[*id], field));
                }
                out.push((j, k));
            }
            None => {
                eb.insert(v.clone());
                ids.push(j);
            }
        }
    }
    out
}

pub fn rank_of<'a, I: IntoIterator<Item = &'a SparseVector>>(vs: I, dim: usize, field: Field) -> usize {
    let mut eb = EchelonBasis::new(dim, field);
    for v in vs {
        eb.insert(v.clone());
    }
    eb.rank()
}

/// The degree `d − 1 → d → d + 1` piece of a truncation, with both
/// differentials as matrices.
#[derive(Clone, Debug)]
pub struct GradedComplexSlice {
    pub degree: i64,
    pub level: usize,
    pub bases: [Vec<GeneralizedWord>; 3],
    pub d_in: Matrix,
    pub d_out: Matrix,
}

impl GradedComplexSlice {
    pub fn build(cx: &WordComplex, degree: i64, level: usize) -> Result<GradedComplexSlice, CohomologyError> {
        let blocks: Vec<Block> = (-1..=1).map(|k| Block::new(cx.words(degree + k, level))).collect();
        let field = cx.field();
        let d_in = images(cx, &blocks[0], &blocks[1])?;
        let d_out = images(cx, &blocks[1], &blocks[2])?;
        let [a, b, c]: [Block; 3] = blocks.try_into().expect("three blocks");
        Ok(GradedComplexSlice {
            degree,
            level,
            d_in: Matrix::from_sparse_columns(b.len(), field, &d_in),
            d_out: Matrix::from_sparse_columns(c.len(), field, &d_out),
            bases: [a.words, b.words, c.words],
        })
    }

    pub fn composite_is_zero(&self) -> bool {
        self.d_out.mul(&self.d_in).map(|m| m.is_zero()).unwrap_or(false)
    }

    pub fn cohomology_dim(&self) -> usize {
        self.bases[1].len() - self.d_out.rank() - self.d_in.rank()
    }
}

pub(crate) fn neg(v: &SparseVector) -> SparseVector {
    match v.entries().first() {
        None => v.clone(),
        Some((_, c)) => v.scale(&-&Scalar::one(c.field())),
    }
}
