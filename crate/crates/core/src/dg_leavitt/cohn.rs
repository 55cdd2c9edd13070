use std::sync::Arc;

use rand::Rng;

use super::word::{CohnElement, GeneralizedWord};
use crate::fdalgebra::RadicalQuiverData;
use crate::foundation::{Field, Scalar};
use crate::quiver::{Path, Quiver};

/// A generator of the Cohn algebra: an arrow or its ghost.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Real(usize),
    Ghost(usize),
}

impl Letter {
    pub fn degree(&self) -> i64 {
        match self {
            Letter::Real(_) => -1,
            Letter::Ghost(_) => 1,
        }
    }
}

/// The dg Cohn algebra `C(Q̃)` with differential induced by `μ`.
///
/// Elements are kept in the monomial basis `{p* q : t(p) = t(q)}`.
#[derive(Clone, Debug)]
pub struct CohnAlgebra {
    data: Arc<RadicalQuiverData>,
    out_arrows: Vec<Vec<usize>>,
}

/// Path from arrows in written order, or the trivial path at `v` when empty.
pub(crate) fn path_or_vertex(q: &Quiver, arrows: Vec<usize>, v: usize) -> Path {
    if arrows.is_empty() {
        Path::trivial(v)
    } else {
        let p = Path::from_arrows(q, &arrows).expect("composable by construction");
        debug_assert_eq!(p.target(), v);
        p
    }
}

fn concat(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v = Vec::with_capacity(a.len() + b.len());
    v.extend_from_slice(a);
    v.extend_from_slice(b);
    v
}

impl CohnAlgebra {
    pub fn new(data: Arc<RadicalQuiverData>) -> CohnAlgebra {
        let q = data.quiver();
        let out_arrows = (0..q.num_vertices()).map(|v| q.arrows_from(v)).collect();
        CohnAlgebra { data, out_arrows }
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

    /// Arrows with source `v`, in arrow order.
    pub fn arrows_from(&self, v: usize) -> &[usize] {
        &self.out_arrows[v]
    }

    pub fn zero(&self) -> CohnElement {
        CohnElement::zero(self.field())
    }

    /// `1 = Σ e_v`.
    pub fn one(&self) -> CohnElement {
        CohnElement::from_terms(
            self.field(),
            (0..self.quiver().num_vertices()).map(|v| (GeneralizedWord::vertex(v), Scalar::one(self.field()))),
        )
    }

    pub fn vertex(&self, v: usize) -> CohnElement {
        CohnElement::from_word(self.field(), GeneralizedWord::vertex(v))
    }

    pub fn letter_word(&self, letter: Letter) -> GeneralizedWord {
        let q = self.quiver();
        match letter {
            Letter::Real(a) => GeneralizedWord::new(Path::trivial(q.arrow(a).target), Path::arrow_of(q, a)),
            Letter::Ghost(a) => GeneralizedWord::new(Path::arrow_of(q, a), Path::trivial(q.arrow(a).target)),
        }
    }

    pub fn letter(&self, letter: Letter) -> CohnElement {
        CohnElement::from_word(self.field(), self.letter_word(letter))
    }

    /// Letters of `p* q` in written order: `p_n* ⋯ p_1* q_1 ⋯ q_k`.
    pub fn letters(&self, w: &GeneralizedWord) -> Vec<Letter> {
        w.ghost
            .arrows()
            .iter()
            .rev()
            .map(|&a| Letter::Ghost(a))
            .chain(w.real.arrows().iter().map(|&a| Letter::Real(a)))
            .collect()
    }

    /// Word `p* q` from ghost and real arrow lists in path (written) order.
    pub fn word(&self, ghost: Vec<usize>, real: Vec<usize>, junction: usize) -> GeneralizedWord {
        let q = self.quiver();
        GeneralizedWord::new(path_or_vertex(q, ghost, junction), path_or_vertex(q, real, junction))
    }

    /// Product of monomials, contracting the real part of `u` against the
    /// ghost part of `v` from the inside out.
    pub fn word_mul(&self, u: &GeneralizedWord, v: &GeneralizedWord) -> Option<GeneralizedWord> {
        if u.source() != v.target() {
            return None;
        }
        let q = u.real.arrows();
        let r = v.ghost.arrows();
        let (k, m) = (q.len(), r.len());
        if k <= m {
            if r[m - k..] != q[..] {
                return None;
            }
            Some(self.word(
                concat(&r[..m - k], u.ghost.arrows()),
                v.real.arrows().to_vec(),
                v.junction(),
            ))
        } else {
            if q[k - m..] != r[..] {
                return None;
            }
            Some(self.word(
                u.ghost.arrows().to_vec(),
                concat(&q[..k - m], v.real.arrows()),
                u.junction(),
            ))
        }
    }

    pub fn mul(&self, u: &CohnElement, v: &CohnElement) -> CohnElement {
        let mut out = self.zero();
        for (a, x) in u.terms() {
            for (b, y) in v.terms() {
                if let Some(w) = self.word_mul(a, b) {
                    out.add_term(w, x * y);
                }
            }
        }
        out
    }

    /// `c = Σ_α α* α`.
    pub fn casimir(&self) -> CohnElement {
        let q = self.quiver();
        CohnElement::from_terms(
            self.field(),
            (0..q.num_arrows()).map(|a| {
                (
                    GeneralizedWord::new(Path::arrow_of(q, a), Path::arrow_of(q, a)),
                    Scalar::one(self.field()),
                )
            }),
        )
    }

    /// `∂₊(α*) = Σ λ_{βα',α} (βα')*`, a sum of ghost words of length 2.
    pub fn d_plus(&self, alpha: usize) -> CohnElement {
        let junction = self.quiver().arrow(alpha).target;
        CohnElement::from_terms(
            self.field(),
            self.data
                .preimages(alpha)
                .iter()
                .map(|(b, a, c)| (self.word(vec![*b, *a], vec![], junction), c.clone())),
        )
    }

    /// `∂₋(α) = Σ_{s(β)=t(α)} β* μ(β ⊗ α)`.
    pub fn d_minus(&self, alpha: usize) -> CohnElement {
        let t = self.quiver().arrow(alpha).target;
        let mut out = self.zero();
        for &b in &self.out_arrows[t] {
            let j = self.quiver().arrow(b).target;
            for (g, c) in self.data.mu(b, alpha) {
                out.add_term(self.word(vec![b], vec![*g], j), c.clone());
            }
        }
        out
    }

    pub fn d_letter(&self, letter: Letter) -> CohnElement {
        match letter {
            Letter::Real(a) => self.d_minus(a),
            Letter::Ghost(a) => self.d_plus(a),
        }
    }

    /// `∂` of a monomial via the closed formula for each letter position.
    pub fn differential_word(&self, w: &GeneralizedWord, out: &mut CohnElement, scale: &Scalar) {
        let f = self.field();
        let p = w.ghost.arrows();
        let q = w.real.arrows();
        let n = p.len();
        let junction = w.junction();
        for j in 0..n {
            // Ghost letter p_j* sits after n − 1 − j ghost letters.
            let sign = Scalar::sign(f, (n - 1 - j) as i64);
            for (b, a, c) in self.data.preimages(p[j]) {
                let mut ghost = Vec::with_capacity(n + 1);
                ghost.extend_from_slice(&p[..j]);
                ghost.push(*b);
                ghost.push(*a);
                ghost.extend_from_slice(&p[j + 1..]);
                out.add_term(self.word(ghost, q.to_vec(), junction), &(&sign * c) * scale);
            }
        }
        for j in 0..q.len() {
            // Real letter q_j is preceded by n ghosts and j reals.
            let sign = Scalar::sign(f, n as i64 - j as i64);
            if j == 0 {
                let t = self.quiver().arrow(q[0]).target;
                for &b in &self.out_arrows[t] {
                    let new_junction = self.quiver().arrow(b).target;
                    for (g, c) in self.data.mu(b, q[0]) {
                        out.add_term(
                            self.word(concat(&[b], p), concat(&[*g], &q[1..]), new_junction),
                            &(&sign * c) * scale,
                        );
                    }
                }
            } else {
                for (g, c) in self.data.mu(q[j - 1], q[j]) {
                    let mut real = Vec::with_capacity(q.len() - 1);
                    real.extend_from_slice(&q[..j - 1]);
                    real.push(*g);
                    real.extend_from_slice(&q[j + 1..]);
                    out.add_term(self.word(p.to_vec(), real, junction), &(&sign * c) * scale);
                }
            }
        }
    }

    /// The differential, extended from generators by the graded Leibniz rule.
    pub fn differential(&self, u: &CohnElement) -> CohnElement {
        let mut out = self.zero();
        for (w, c) in u.terms() {
            self.differential_word(w, &mut out, c);
        }
        out
    }

    /// The differential computed by expanding each monomial into letters and
    /// multiplying out `Σ ± L_1 ⋯ ∂(L_t) ⋯ L_m` in the algebra.
    pub fn differential_by_leibniz(&self, u: &CohnElement) -> CohnElement {
        let mut out = self.zero();
        for (w, c) in u.terms() {
            let letters = self.letters(w);
            let mut prefix = self.vertex(w.target());
            let mut prefix_degree = 0i64;
            for (t, &l) in letters.iter().enumerate() {
                let mut term = self.mul(&prefix, &self.d_letter(l));
                for &r in &letters[t + 1..] {
                    term = self.mul(&term, &self.letter(r));
                }
                out.add_scaled(&term, &(&Scalar::sign(self.field(), prefix_degree) * c));
                prefix = self.mul(&prefix, &self.letter(l));
                prefix_degree += l.degree();
            }
        }
        out
    }

    /// `p* q ↦ Σ_{s(α) = t(q)} (α p)* (α q)`: inserts `c` between ghost and real parts.
    pub fn insert_casimir(&self, u: &CohnElement) -> CohnElement {
        let mut out = self.zero();
        for (w, c) in u.terms() {
            for &a in &self.out_arrows[w.junction()] {
                let j = self.quiver().arrow(a).target;
                out.add_term(
                    self.word(concat(&[a], w.ghost.arrows()), concat(&[a], w.real.arrows()), j),
                    c.clone(),
                );
            }
        }
        out
    }

    /// Element from a product of letters and vertices, multiplied out.
    pub fn product_of(&self, factors: &[CohnElement]) -> CohnElement {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn render_word(&self, w: &GeneralizedWord) -> String {
        let q = self.quiver();
        if w.is_vertex() {
            return if q.num_vertices() == 1 {
                "1".to_string()
            } else {
                format!("e_{}", q.vertex_name(w.junction()))
            };
        }
        self.letters(w)
            .iter()
            .map(|l| match l {
                Letter::Real(a) => q.arrow(*a).name.clone(),
                Letter::Ghost(a) => format!("{}*", q.arrow(*a).name),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Text form with ghosts marked by a trailing `*`, highest degree first.
    pub fn render(&self, u: &CohnElement) -> String {
        let mut terms: Vec<(&GeneralizedWord, &Scalar)> = u.terms().iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            b.degree()
                .cmp(&a.degree())
                .then_with(|| a.level().cmp(&b.level()))
                .then_with(|| a.cmp(b))
        });
        let rendered: Vec<(String, Scalar)> = terms
            .into_iter()
            .map(|(w, c)| (self.render_word(w), c.clone()))
            .collect();
        crate::render::linear_combination(&rendered)
    }

    /// Uniformly random path of length `len` ending at `v`, if one exists.
    pub fn random_path_to<R: Rng>(&self, rng: &mut R, v: usize, len: usize) -> Option<Path> {
        let q = self.quiver();
        let mut arrows = Vec::with_capacity(len);
        let mut cur = v;
        for _ in 0..len {
            let incoming = q.arrows_to(cur);
            if incoming.is_empty() {
                return None;
            }
            let a = incoming[rng.gen_range(0..incoming.len())];
            arrows.push(a);
            cur = q.arrow(a).source;
        }
        Some(path_or_vertex(q, arrows, v))
    }

    /// Random word with the given ghost and real lengths, if the quiver has one.
    pub fn random_word<R: Rng>(&self, rng: &mut R, ghost: usize, real: usize) -> Option<GeneralizedWord> {
        let n = self.quiver().num_vertices();
        if n == 0 {
            return None;
        }
        for _ in 0..8 {
            let v = rng.gen_range(0..n);
            if let (Some(p), Some(q)) = (self.random_path_to(rng, v, ghost), self.random_path_to(rng, v, real)) {
                return Some(GeneralizedWord::new(p, q));
            }
        }
        None
    }

    /// Random homogeneous element of degree `degree` with up to `terms` words,
    /// each with at most `max_len` letters on either side, and small integer
    /// coefficients.
    pub fn random_homogeneous<R: Rng>(&self, rng: &mut R, degree: i64, max_len: usize, terms: usize) -> CohnElement {
        let mut out = self.zero();
        for _ in 0..terms {
            let lo = (-degree).max(0) as usize;
            let hi = (max_len as i64 - degree.max(0)).max(lo as i64) as usize;
            let real = rng.gen_range(lo..=hi);
            let ghost = (real as i64 + degree) as usize;
            if let Some(w) = self.random_word(rng, ghost, real) {
                let c = rng.gen_range(-3i64..=3);
                out.add_term(w, Scalar::from_i64(self.field(), if c == 0 { 1 } else { c }));
            }
        }
        out
    }
}
