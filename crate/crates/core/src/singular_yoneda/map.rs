use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Mutation, SignSite};
use crate::fdalgebra::RadicalQuiverData;
use crate::foundation::{Field, Matrix, Scalar, SparseVector};
use crate::quiver::{Path, Quiver};

/// Composable `Q̃`-arrow words of each length, indexing `J^{⊗k}`.
#[derive(Clone, Debug)]
pub struct TensorWordBasis {
    quiver: Arc<Quiver>,
    words: Vec<Vec<Path>>,
    index: Vec<BTreeMap<Path, usize>>,
}

impl TensorWordBasis {
    pub fn new(quiver: Arc<Quiver>) -> TensorWordBasis {
        TensorWordBasis {
            quiver,
            words: Vec::new(),
            index: Vec::new(),
        }
    }

    fn ensure(&mut self, k: usize) {
        while self.words.len() <= k {
            let ws = self.quiver.paths_of_length(self.words.len());
            self.index
                .push(ws.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect());
            self.words.push(ws);
        }
    }

    /// Words of length `k` in monomial order; length 0 gives the vertices.
    pub fn words(&mut self, k: usize) -> &[Path] {
        self.ensure(k);
        &self.words[k]
    }

    pub fn index_of(&mut self, p: &Path) -> Option<usize> {
        self.ensure(p.len());
        self.index[p.len()].get(p).copied()
    }
}

/// An `E`-linear map `J^{⊗src} → J^{⊗tgt}` stored column by column.
///
/// The source is `(sJ)^{⊗n} ⊗ Ω^a(E)` with `n + a = src`, `a = src_omega`;
/// the target is `Ω^tgt(E) = (sJ)^{⊗tgt}`. Entries only connect words with the
/// same target vertex, which is left `E`-linearity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YonedaMap {
    pub src: usize,
    pub src_omega: usize,
    pub tgt: usize,
    field: Field,
    cols: BTreeMap<Path, BTreeMap<Path, Scalar>>,
}

impl YonedaMap {
    pub fn zero(field: Field, src: usize, src_omega: usize, tgt: usize) -> YonedaMap {
        assert!(src_omega <= src);
        YonedaMap {
            src,
            src_omega,
            tgt,
            field,
            cols: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// The same matrix, read with a different split of the source.
    pub fn with_src_omega(mut self, src_omega: usize) -> YonedaMap {
        assert!(src_omega <= self.src);
        self.src_omega = src_omega;
        self
    }

    /// Filtration degree `n = src − src_omega`.
    pub fn filtration(&self) -> usize {
        self.src - self.src_omega
    }

    /// Cohomological degree `src − tgt`.
    pub fn degree(&self) -> i64 {
        self.src as i64 - self.tgt as i64
    }

    pub fn is_zero(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.cols.values().map(|c| c.len()).sum()
    }

    pub fn columns(&self) -> &BTreeMap<Path, BTreeMap<Path, Scalar>> {
        &self.cols
    }

    /// Value on a source word.
    pub fn column(&self, x: &Path) -> Option<&BTreeMap<Path, Scalar>> {
        self.cols.get(x)
    }

    pub fn entry(&self, target: &Path, source: &Path) -> Scalar {
        self.cols
            .get(source)
            .and_then(|c| c.get(target))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn add_entry(&mut self, target: Path, source: Path, c: Scalar) {
        debug_assert_eq!(target.len(), self.tgt);
        debug_assert_eq!(source.len(), self.src);
        assert_eq!(target.target(), source.target(), "entry violates E-linearity");
        if c.is_zero() {
            return;
        }
        let col = self.cols.entry(source.clone()).or_default();
        match col.get_mut(&target) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    col.remove(&target);
                }
            }
            None => {
                col.insert(target, c);
            }
        }
        if col.is_empty() {
            self.cols.remove(&source);
        }
    }

    fn same_shape(&self, other: &YonedaMap) -> bool {
        self.src == other.src && self.src_omega == other.src_omega && self.tgt == other.tgt
    }

    pub fn add_scaled(&mut self, other: &YonedaMap, a: &Scalar) {
        assert!(self.same_shape(other), "shape mismatch");
        for (x, col) in &other.cols {
            for (r, c) in col {
                self.add_entry(r.clone(), x.clone(), c * a);
            }
        }
    }

    pub fn add(&self, other: &YonedaMap) -> YonedaMap {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one(self.field));
        out
    }

    pub fn sub(&self, other: &YonedaMap) -> YonedaMap {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one(self.field));
        out
    }

    pub fn scale(&self, a: &Scalar) -> YonedaMap {
        let mut out = YonedaMap::zero(self.field, self.src, self.src_omega, self.tgt);
        out.add_scaled(self, a);
        out
    }

    /// Dense-index matrix in the tensor-word bases (rows: targets).
    pub fn to_matrix(&self, basis: &mut TensorWordBasis) -> Matrix {
        let rows = basis.words(self.tgt).len();
        let cols = basis.words(self.src).len();
        let mut trip = Vec::new();
        for (x, col) in &self.cols {
            let j = basis.index_of(x).expect("basis word");
            for (r, c) in col {
                trip.push((basis.index_of(r).expect("basis word"), j, c.clone()));
            }
        }
        Matrix::from_triplets(rows, cols, self.field, trip).expect("single field")
    }

    /// Entries as a vector indexed by `(target, source)` word pairs.
    pub fn flatten(&self, basis: &mut TensorWordBasis) -> SparseVector {
        let rows = basis.words(self.tgt).len();
        let mut pairs = Vec::new();
        for (x, col) in &self.cols {
            let j = basis.index_of(x).expect("basis word");
            for (r, c) in col {
                pairs.push((j * rows + basis.index_of(r).expect("basis word"), c.clone()));
            }
        }
        SparseVector::from_pairs(pairs)
    }
}

/// The Yoneda model of `Λ = E ⊕ J` built from `(Q̃, λ)` alone.
#[derive(Clone, Debug)]
pub struct YonedaContext {
    data: Arc<RadicalQuiverData>,
    mutation: Option<Mutation>,
    paths_from: Vec<Vec<Vec<Path>>>,
}

impl YonedaContext {
    pub fn new(data: Arc<RadicalQuiverData>) -> YonedaContext {
        YonedaContext::with_mutation(data, None)
    }

    /// A context with one deliberately corrupted sign, for mutation testing.
    pub fn with_mutation(data: Arc<RadicalQuiverData>, mutation: Option<Mutation>) -> YonedaContext {
        let nv = data.quiver().num_vertices();
        YonedaContext {
            data,
            mutation,
            paths_from: vec![Vec::new(); nv],
        }
    }

    pub fn data(&self) -> &Arc<RadicalQuiverData> {
        &self.data
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        self.data.quiver()
    }

    pub fn field(&self) -> Field {
        self.data.field()
    }

    pub fn mutation(&self) -> Option<Mutation> {
        self.mutation
    }

    /// `(−1)^e`, unless the mutation under test corrupts this site.
    pub(crate) fn sign(&self, site: SignSite, e: i64) -> Scalar {
        let s = Scalar::sign(self.field(), e);
        match self.mutation {
            Some(m) if m.site() == site => {
                if m.is_flip() {
                    -s
                } else {
                    Scalar::one(self.field())
                }
            }
            _ => s,
        }
    }

    /// Paths of length `k` with source `v`, i.e. words `y` with `y ++ x`
    /// composable whenever `t(x) = v`.
    pub fn paths_from(&mut self, v: usize, k: usize) -> Vec<Path> {
        let cache = &mut self.paths_from[v];
        while cache.len() <= k {
            let next = if cache.is_empty() {
                vec![Path::trivial(v)]
            } else {
                let q = self.data.quiver();
                let mut out = Vec::new();
                for p in cache.last().expect("nonempty") {
                    for a in q.arrows_from(p.target()) {
                        out.push(Path::arrow_of(q, a).mul(p).expect("composable"));
                    }
                }
                out.sort();
                out
            };
            cache.push(next);
        }
        cache[k].clone()
    }

    /// The identity of `Ω^p(E)`, filtration 0.
    pub fn identity(&self, p: usize) -> YonedaMap {
        let mut out = YonedaMap::zero(self.field(), p, p, p);
        for w in self.quiver().paths_of_length(p) {
            out.add_entry(w.clone(), w, Scalar::one(self.field()));
        }
        out
    }

    /// `θ_{Ω^p(E)}`: the identity on `(sJ)^{⊗(p+1)}` viewed in filtration 1.
    pub fn theta(&self, p: usize) -> YonedaMap {
        let mut out = YonedaMap::zero(self.field(), p + 1, p, p + 1);
        for w in self.quiver().paths_of_length(p + 1) {
            out.add_entry(w.clone(), w, Scalar::one(self.field()));
        }
        out
    }

    /// `(g ⊙ f)(z_{1,m} ⊗ rest) = (−1)^{m|f|} g(z_{1,m} ⊗ f(rest))`.
    pub fn compose(&mut self, g: &YonedaMap, f: &YonedaMap) -> YonedaMap {
        assert_eq!(g.src_omega, f.tgt, "composition along mismatched objects");
        let m = g.filtration();
        let sign = self.sign(SignSite::Compose, m as i64 * f.degree());
        let mut out = YonedaMap::zero(self.field(), m + f.src, f.src_omega, g.tgt);
        for (x, col) in &f.cols {
            for y in self.paths_from(x.target(), m) {
                let z = y.mul(x).expect("composable");
                for (r, c) in col {
                    let yr = y.mul(r).expect("E-linear");
                    if let Some(gcol) = g.cols.get(&yr) {
                        let cs = &sign * c;
                        for (t, d) in gcol {
                            out.add_entry(t.clone(), z.clone(), &cs * d);
                        }
                    }
                }
            }
        }
        out
    }

    /// `Ω^p(g) = (−1)^{p|g|} Id^{⊗p} ⊗ g`.
    pub fn omega(&mut self, g: &YonedaMap, p: usize) -> YonedaMap {
        let sign = Scalar::sign(self.field(), p as i64 * g.degree());
        let mut out = YonedaMap::zero(self.field(), g.src + p, g.src_omega + p, g.tgt + p);
        for (x, col) in &g.cols {
            for y in self.paths_from(x.target(), p) {
                let z = y.mul(x).expect("composable");
                for (r, c) in col {
                    out.add_entry(y.mul(r).expect("E-linear"), z.clone(), &sign * c);
                }
            }
        }
        out
    }

    /// The structure map of the colimit: `z_1 ⊗ rest ↦ (−1)^{|f|} z_1 ⊗ f(rest)`.
    pub fn theta_push(&mut self, f: &YonedaMap) -> YonedaMap {
        let sign = self.sign(SignSite::ThetaPush, f.degree());
        let mut out = YonedaMap::zero(self.field(), f.src + 1, f.src_omega, f.tgt + 1);
        for (x, col) in &f.cols {
            for y in self.paths_from(x.target(), 1) {
                let z = y.mul(x).expect("composable");
                for (r, c) in col {
                    out.add_entry(y.mul(r).expect("E-linear"), z.clone(), &sign * c);
                }
            }
        }
        out
    }

    pub fn theta_push_n(&mut self, f: &YonedaMap, k: usize) -> YonedaMap {
        let mut out = f.clone();
        for _ in 0..k {
            out = self.theta_push(&out);
        }
        out
    }

    /// `a ▶ (y_1 ⊗ ⋯ ⊗ y_t)` on `Ω^t(E)`, unfolding the rule
    /// `a ▶ (y_1 ⊗ x) = μ(a y_1) ⊗ x − a ⊗ (y_1 ▶ x)` down to `E`, where `J` acts by 0.
    pub fn left_action(&self, a: usize, y: &Path) -> Vec<(Path, Scalar)> {
        let q = self.quiver();
        let mut word = Vec::with_capacity(y.len() + 1);
        word.push(a);
        word.extend_from_slice(y.arrows());
        let mut out = Vec::new();
        for k in 0..y.len() {
            let sign = Scalar::sign(self.field(), k as i64);
            for (g, c) in self.data.mu(word[k], word[k + 1]) {
                let mut w = Vec::with_capacity(y.len());
                w.extend_from_slice(&word[..k]);
                w.push(*g);
                w.extend_from_slice(&word[k + 2..]);
                let p = Path::from_parts(y.source(), q.arrow(a).target, w);
                out.push((p, &sign * c));
            }
        }
        out
    }

    /// `δ_ex` on a map with source `E`: the left action of the first tensor
    /// factor plus the inner contractions by `μ`. The right action term vanishes
    /// because `J` acts on `E` by zero.
    pub fn delta_ex(&mut self, f: &YonedaMap) -> YonedaMap {
        assert_eq!(f.src_omega, 0, "δ_ex is implemented for maps out of E");
        let n = f.src;
        let fd = f.degree();
        let field = self.field();
        let mut out = YonedaMap::zero(field, n + 1, 0, f.tgt);
        let q = self.quiver().clone();
        for (x, col) in &f.cols {
            // (−1)^{|f|+1} a_1 ▶ f(a_{2,n+1})
            let s1 = Scalar::sign(field, fd + 1);
            for a in q.arrows_from(x.target()) {
                let z = Path::arrow_of(&q, a).mul(x).expect("composable");
                for (r, c) in col {
                    for (t, d) in self.left_action(a, r) {
                        out.add_entry(t, z.clone(), &(&s1 * c) * &d);
                    }
                }
            }
            // Σ_i (−1)^{|f|+i+1} f(⋯ ⊗ μ(a_i a_{i+1}) ⊗ ⋯): expand x_i into its preimages.
            for i in 0..n {
                let s2 = Scalar::sign(field, fd + i as i64 + 2);
                for (b, a, lam) in self.data.preimages(x.arrows()[i]) {
                    let mut w = Vec::with_capacity(n + 1);
                    w.extend_from_slice(&x.arrows()[..i]);
                    w.push(*b);
                    w.push(*a);
                    w.extend_from_slice(&x.arrows()[i + 1..]);
                    let z = Path::from_parts(x.source(), x.target(), w);
                    let k = &s2 * lam;
                    for (r, c) in col {
                        out.add_entry(r.clone(), z.clone(), &k * c);
                    }
                }
            }
        }
        out
    }
}
