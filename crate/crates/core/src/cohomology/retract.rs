use std::collections::BTreeMap;

use serde::Serialize;

use super::complex::{echelon_kernel, images, neg, Block, WordComplex};
use super::CohomologyError;
use crate::dg_leavitt::CohnElement;
use crate::foundation::{EchelonBasis, Matrix, SparseVector};

/// A cohomology class in the chosen basis of `H^degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HClass {
    pub degree: i64,
    #[serde(serialize_with = "serialize_coords")]
    pub coords: SparseVector,
}

fn serialize_coords<S: serde::Serializer>(v: &SparseVector, s: S) -> Result<S::Ok, S::Error> {
    let pairs: Vec<(usize, String)> = v.entries().iter().map(|(i, c)| (*i, c.to_string())).collect();
    pairs.serialize(s)
}

impl HClass {
    pub fn basis(degree: i64, k: usize, field: crate::foundation::Field) -> HClass {
        HClass {
            degree,
            coords: SparseVector::unit(k, field),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }
}

#[derive(Clone, Debug)]
struct Piece {
    block: Block,
    /// `∂` of each monomial, in the next degree's coordinates.
    images: Option<Vec<SparseVector>>,
    /// Boundaries `∂(e_j)` for the chosen complement words `j` of the
    /// previous degree, followed by the cohomology representatives.
    echelon: Option<EchelonBasis>,
    c_prev: Vec<usize>,
    reps: Vec<SparseVector>,
}

/// A deformation retract of the truncation `F_level` onto its cohomology in
/// degrees `lo..=hi`: `V^d = B^d ⊕ H^d ⊕ C^d` with `∂: C^d ≅ B^{d+1}`, `h = −∂⁻¹`
/// on `B`, and `h = 0` on `H ⊕ C`. Complements are chosen greedily in
/// monomial order, so low levels are preferred.
#[derive(Clone, Debug)]
pub struct Retract {
    cx: WordComplex,
    level: usize,
    lo: i64,
    hi: i64,
    pieces: BTreeMap<i64, Piece>,
}

impl Retract {
    pub fn build(cx: WordComplex, lo: i64, hi: i64, level: usize) -> Result<Retract, CohomologyError> {
        if lo > hi {
            return Err(CohomologyError::Invalid(format!("empty degree range {lo}..{hi}")));
        }
        let field = cx.field();
        let mut pieces: BTreeMap<i64, Piece> = (lo - 1..=hi + 1)
            .map(|d| {
                let piece = Piece {
                    block: Block::new(cx.words(d, level)),
                    images: None,
                    echelon: None,
                    c_prev: Vec::new(),
                    reps: Vec::new(),
                };
                (d, piece)
            })
            .collect();
        for d in lo - 1..=hi {
            let im = images(&cx, &pieces[&d].block, &pieces[&(d + 1)].block)?;
            pieces.get_mut(&d).expect("piece").images = Some(im);
        }
        for d in lo..=hi + 1 {
            let prev_images = pieces[&(d - 1)].images.clone().expect("images below");
            let dim = pieces[&d].block.len();
            let mut eb = EchelonBasis::with_tracking(dim, field);
            let mut c_prev = Vec::new();
            for (j, v) in prev_images.iter().enumerate() {
                if !eb.contains(v) {
                    eb.insert(v.clone());
                    c_prev.push(j);
                }
            }
            let mut reps = Vec::new();
            if d <= hi {
                let next_dim = pieces[&(d + 1)].block.len();
                let im = pieces[&d].images.as_ref().expect("images");
                for (_, k) in echelon_kernel(im, next_dim, field) {
                    if !eb.contains(&k) {
                        eb.insert(k.clone());
                        reps.push(k);
                    }
                }
            }
            let piece = pieces.get_mut(&d).expect("piece");
            piece.echelon = Some(eb);
            piece.c_prev = c_prev;
            piece.reps = reps;
        }
        Ok(Retract {
            cx,
            level,
            lo,
            hi,
            pieces,
        })
    }

    pub fn complex(&self) -> &WordComplex {
        &self.cx
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    fn piece(&self, d: i64) -> Result<&Piece, CohomologyError> {
        if d < self.lo - 1 || d > self.hi + 1 {
            return Err(CohomologyError::DegreeOutOfRange(d));
        }
        Ok(&self.pieces[&d])
    }

    pub fn h_dim(&self, d: i64) -> Result<usize, CohomologyError> {
        if !self.degrees().contains(&d) {
            return Err(CohomologyError::DegreeOutOfRange(d));
        }
        Ok(self.pieces[&d].reps.len())
    }

    pub fn basis(&self, d: i64) -> Result<&Block, CohomologyError> {
        Ok(&self.piece(d)?.block)
    }

    pub fn vector(&self, d: i64, u: &CohnElement) -> Result<SparseVector, CohomologyError> {
        self.piece(d)?.block.vectorize(u)
    }

    pub fn element(&self, d: i64, v: &SparseVector) -> Result<CohnElement, CohomologyError> {
        Ok(self.piece(d)?.block.element(self.cx.field(), v))
    }

    fn apply_d(&self, d: i64, x: &SparseVector) -> SparseVector {
        let im = self.pieces[&d].images.as_ref().expect("∂ available in this degree");
        let mut out = SparseVector::new();
        for (j, c) in x.entries() {
            out = out.axpy(c, &im[*j]);
        }
        out
    }

    /// Boundary coefficients (by complement word of degree `d − 1`) and
    /// cohomology coefficients of `x`.
    fn decompose(&self, d: i64, x: &SparseVector) -> Result<(SparseVector, SparseVector), CohomologyError> {
        let piece = self.piece(d)?;
        let eb = piece.echelon.as_ref().ok_or(CohomologyError::DegreeOutOfRange(d))?;
        let field = self.cx.field();
        let mut z = x.clone();
        if d <= self.hi {
            // Remove the C^d component, read off from ∂x ∈ B^{d+1}.
            let dx = self.apply_d(d, x);
            let up = &self.pieces[&(d + 1)];
            let coords = up
                .echelon
                .as_ref()
                .expect("echelon above")
                .coordinates(&dx)
                .ok_or_else(|| CohomologyError::Invalid("∂x is not a boundary".into()))?;
            for (id, c) in coords.entries() {
                z = z.axpy(&-c, &SparseVector::unit(piece_c(up, *id), field));
            }
        }
        let coords = eb
            .coordinates(&z)
            .ok_or_else(|| CohomologyError::Invalid(format!("degree {d}: element outside the retract")))?;
        let nb = piece.c_prev.len();
        let mut b = Vec::new();
        let mut h = Vec::new();
        for (id, c) in coords.entries() {
            if *id < nb {
                b.push((piece.c_prev[*id], c.clone()));
            } else {
                h.push((*id - nb, c.clone()));
            }
        }
        Ok((SparseVector::from_pairs(b), SparseVector::from_pairs(h)))
    }

    /// `p`: projection onto `H^d` along `B ⊕ C`.
    pub fn p(&self, d: i64, x: &SparseVector) -> Result<HClass, CohomologyError> {
        if !self.degrees().contains(&d) {
            return Err(CohomologyError::DegreeOutOfRange(d));
        }
        Ok(HClass {
            degree: d,
            coords: self.decompose(d, x)?.1,
        })
    }

    /// `i`: the chosen cocycle representative.
    pub fn i(&self, a: &HClass) -> Result<SparseVector, CohomologyError> {
        if !self.degrees().contains(&a.degree) {
            return Err(CohomologyError::DegreeOutOfRange(a.degree));
        }
        let reps = &self.pieces[&a.degree].reps;
        let mut out = SparseVector::new();
        for (k, c) in a.coords.entries() {
            out = out.axpy(c, &reps[*k]);
        }
        Ok(out)
    }

    /// `h: V^d → V^{d−1}`, with `i p − 1 = ∂h + h∂`.
    pub fn h(&self, d: i64, x: &SparseVector) -> Result<SparseVector, CohomologyError> {
        Ok(neg(&self.decompose(d, x)?.0))
    }

    pub fn p_element(&self, d: i64, u: &CohnElement) -> Result<HClass, CohomologyError> {
        self.p(d, &self.vector(d, u)?)
    }

    pub fn i_element(&self, a: &HClass) -> Result<CohnElement, CohomologyError> {
        self.element(a.degree, &self.i(a)?)
    }

    pub fn h_element(&self, d: i64, u: &CohnElement) -> Result<CohnElement, CohomologyError> {
        self.element(d - 1, &self.h(d, &self.vector(d, u)?)?)
    }

    pub fn p_matrix(&self, d: i64) -> Result<Matrix, CohomologyError> {
        let n = self.basis(d)?.len();
        let cols: Result<Vec<SparseVector>, _> = (0..n)
            .map(|j| self.p(d, &SparseVector::unit(j, self.cx.field())).map(|c| c.coords))
            .collect();
        Ok(Matrix::from_sparse_columns(self.h_dim(d)?, self.cx.field(), &cols?))
    }

    pub fn i_matrix(&self, d: i64) -> Result<Matrix, CohomologyError> {
        let rows = self.basis(d)?.len();
        Ok(Matrix::from_sparse_columns(
            rows,
            self.cx.field(),
            &self.pieces[&d].reps,
        ))
    }

    pub fn h_matrix(&self, d: i64) -> Result<Matrix, CohomologyError> {
        let n = self.basis(d)?.len();
        let cols: Result<Vec<SparseVector>, _> = (0..n)
            .map(|j| self.h(d, &SparseVector::unit(j, self.cx.field())))
            .collect();
        Ok(Matrix::from_sparse_columns(
            self.basis(d - 1)?.len(),
            self.cx.field(),
            &cols?,
        ))
    }

    /// Checks `p i = 1`, `i p − 1 = ∂h + h∂`, `h i = 0`, `p h = 0` and `h h = 0`
    /// exactly on every basis vector.
    pub fn verify(&self) -> Result<(), String> {
        let field = self.cx.field();
        let err = |e: CohomologyError| e.to_string();
        for d in self.degrees() {
            for k in 0..self.pieces[&d].reps.len() {
                let a = HClass::basis(d, k, field);
                let ia = self.i(&a).map_err(err)?;
                if self.p(d, &ia).map_err(err)? != a {
                    return Err(format!("degree {d}: p i ≠ 1 on class {k}"));
                }
                if !self.h(d, &ia).map_err(err)?.is_zero() {
                    return Err(format!("degree {d}: h i ≠ 0 on class {k}"));
                }
            }
            for j in 0..self.pieces[&d].block.len() {
                let x = SparseVector::unit(j, field);
                let ipx = self.i(&self.p(d, &x).map_err(err)?).map_err(err)?;
                let lhs = ipx.sub(&x);
                let hx = self.h(d, &x).map_err(err)?;
                let dhx = self.apply_d(d - 1, &hx);
                let hdx = self.h(d + 1, &self.apply_d(d, &x)).map_err(err)?;
                if lhs != dhx.add(&hdx) {
                    return Err(format!("degree {d}: i p − 1 ≠ ∂h + h∂ on monomial {j}"));
                }
                if d > self.lo {
                    if !self.p(d - 1, &hx).map_err(err)?.is_zero() {
                        return Err(format!("degree {d}: p h ≠ 0 on monomial {j}"));
                    }
                    if !self.h(d - 1, &hx).map_err(err)?.is_zero() {
                        return Err(format!("degree {d}: h h ≠ 0 on monomial {j}"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn render_class(&self, a: &HClass) -> String {
        match self.i_element(a) {
            Ok(u) => self.cx.cohn().render(&u),
            Err(e) => e.to_string(),
        }
    }
}

fn piece_c(piece: &Piece, id: usize) -> usize {
    piece.c_prev[id]
}
