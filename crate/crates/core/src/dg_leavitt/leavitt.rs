use std::sync::Arc;

use super::cohn::CohnAlgebra;
use super::word::{CohnElement, GeneralizedWord};
use super::DgError;
use crate::fdalgebra::RadicalQuiverData;
use crate::foundation::{Field, Scalar};
use crate::quiver::Quiver;

/// Vertices surviving repeated sink removal, in vertex order.
pub fn sink_free_vertices(q: &Quiver) -> Vec<usize> {
    let n = q.num_vertices();
    let mut alive = vec![true; n];
    let mut out_degree: Vec<usize> = (0..n).map(|v| q.arrows_from(v).len()).collect();
    let mut queue: Vec<usize> = (0..n).filter(|&v| out_degree[v] == 0).collect();
    while let Some(v) = queue.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for a in q.arrows_to(v) {
            let s = q.arrow(a).source;
            if alive[s] && s != v {
                out_degree[s] -= 1;
                if out_degree[s] == 0 {
                    queue.push(s);
                }
            }
        }
    }
    (0..n).filter(|&v| alive[v]).collect()
}

/// `Q°`: the full subquiver left after removing sinks until none remain.
pub fn remove_sinks(q: &Quiver) -> Quiver {
    let keep = sink_free_vertices(q);
    let mut out = Quiver::empty();
    let mut vmap = vec![None; q.num_vertices()];
    for &v in &keep {
        vmap[v] = Some(out.add_vertex(q.vertex_name(v)).expect("distinct"));
    }
    for a in q.arrows() {
        if let (Some(s), Some(t)) = (vmap[a.source], vmap[a.target]) {
            out.push_arrow(&a.name, s, t);
        }
    }
    out
}

/// An element of `L(Q̃°)` given by a Cohn representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeavittElement {
    pub rep: CohnElement,
    pub normal: bool,
}

/// The dg Leavitt algebra `L(Q̃°) = C(Q̃°)/(1 − c)`.
#[derive(Clone, Debug)]
pub struct LeavittAlgebra {
    cohn: CohnAlgebra,
    arrow_map: Vec<Option<usize>>,
    vertex_map: Vec<Option<usize>>,
    distinguished: Vec<usize>,
}

impl LeavittAlgebra {
    /// Builds `L(Q̃°)` from the full radical quiver, removing sinks first.
    pub fn from_radical(rq: &RadicalQuiverData) -> LeavittAlgebra {
        let keep = sink_free_vertices(rq.quiver());
        let (data, arrow_map) = rq.restrict(&keep);
        let mut vertex_map = vec![None; rq.quiver().num_vertices()];
        for (i, &v) in keep.iter().enumerate() {
            vertex_map[v] = Some(i);
        }
        LeavittAlgebra::build(Arc::new(data), arrow_map, vertex_map)
    }

    /// Builds `L(Q)` for data whose quiver already has no sinks.
    pub fn on_sinkless(data: Arc<RadicalQuiverData>) -> Result<LeavittAlgebra, DgError> {
        let q = data.quiver();
        if let Some(v) = (0..q.num_vertices()).find(|&v| q.is_sink(v)) {
            return Err(DgError::SinkPresent(q.vertex_name(v).to_string()));
        }
        let arrow_map = (0..q.num_arrows()).map(Some).collect();
        let vertex_map = (0..q.num_vertices()).map(Some).collect();
        Ok(LeavittAlgebra::build(data, arrow_map, vertex_map))
    }

    fn build(
        data: Arc<RadicalQuiverData>,
        arrow_map: Vec<Option<usize>>,
        vertex_map: Vec<Option<usize>>,
    ) -> LeavittAlgebra {
        let cohn = CohnAlgebra::new(data);
        let distinguished = (0..cohn.quiver().num_vertices())
            .map(|v| cohn.arrows_from(v)[0])
            .collect();
        LeavittAlgebra {
            cohn,
            arrow_map,
            vertex_map,
            distinguished,
        }
    }

    /// The Cohn algebra of `Q̃°` in which representatives live.
    pub fn cohn(&self) -> &CohnAlgebra {
        &self.cohn
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        self.cohn.quiver()
    }

    pub fn field(&self) -> Field {
        self.cohn.field()
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.quiver().num_vertices() == 0
    }

    /// Arrow of `Q̃°` for each arrow of `Q̃`, if it survived.
    pub fn arrow_map(&self) -> &[Option<usize>] {
        &self.arrow_map
    }

    pub fn vertex_map(&self) -> &[Option<usize>] {
        &self.vertex_map
    }

    /// `γ_i`, the first arrow in file order with source `i`.
    pub fn distinguished(&self, v: usize) -> usize {
        self.distinguished[v]
    }

    /// Whether the word has the junction factor `γ* γ` for a distinguished `γ`.
    pub fn is_forbidden(&self, w: &GeneralizedWord) -> bool {
        match (w.ghost.arrows().first(), w.real.arrows().first()) {
            (Some(&p1), Some(&q1)) => p1 == q1 && self.distinguished[self.quiver().arrow(p1).source] == p1,
            _ => false,
        }
    }

    /// Rewrites every `γ_i* γ_i` at the junction to `e_i − Σ_{α≠γ_i} α* α`.
    pub fn normal_form(&self, u: &CohnElement) -> CohnElement {
        let mut out = self.cohn.zero();
        let mut stack: Vec<(GeneralizedWord, Scalar)> = u.terms().iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        while let Some((w, c)) = stack.pop() {
            if !self.is_forbidden(&w) {
                out.add_term(w, c);
                continue;
            }
            let gamma = w.ghost.arrows()[0];
            let i = self.quiver().arrow(gamma).source;
            let p = &w.ghost.arrows()[1..];
            let q = &w.real.arrows()[1..];
            stack.push((self.cohn.word(p.to_vec(), q.to_vec(), i), c.clone()));
            for &a in self.cohn.arrows_from(i) {
                if a == gamma {
                    continue;
                }
                let j = self.quiver().arrow(a).target;
                let mut ghost = vec![a];
                ghost.extend_from_slice(p);
                let mut real = vec![a];
                real.extend_from_slice(q);
                out.add_term(self.cohn.word(ghost, real, j), -c.clone());
            }
        }
        out
    }

    pub fn element(&self, u: &CohnElement) -> LeavittElement {
        LeavittElement {
            rep: self.normal_form(u),
            normal: true,
        }
    }

    pub fn eq(&self, u: &CohnElement, v: &CohnElement) -> bool {
        self.normal_form(&u.sub(v)).is_zero()
    }

    /// Image of `u` at level `level` under repeated Casimir insertion; words
    /// above `level` are left as they are.
    pub fn lift_to_level(&self, u: &CohnElement, level: usize) -> CohnElement {
        let mut out = self.cohn.zero();
        for (w, c) in u.terms() {
            let mut x = CohnElement::from_terms(self.field(), [(w.clone(), c.clone())]);
            for _ in w.level()..level {
                x = self.cohn.insert_casimir(&x);
            }
            out.add_scaled(&x, &Scalar::one(self.field()));
        }
        out
    }

    /// Equality in the colimit of the level maps: both sides are lifted to a
    /// common level, where the insertion maps are injective.
    pub fn colimit_eq(&self, u: &CohnElement, v: &CohnElement) -> bool {
        let d = u.sub(v);
        let level = d.max_level();
        self.lift_to_level(&d, level).is_zero()
    }

    /// Image of an element of `C(Q̃)` under the projection onto `C(Q̃°)`,
    /// which kills every word through a removed vertex.
    pub fn project(&self, u: &CohnElement) -> CohnElement {
        let mut out = self.cohn.zero();
        'terms: for (w, c) in u.terms() {
            let junction = match self.vertex_map[w.junction()] {
                Some(j) => j,
                None => continue,
            };
            let mut ghost = Vec::with_capacity(w.ghost.len());
            for &a in w.ghost.arrows() {
                match self.arrow_map[a] {
                    Some(b) => ghost.push(b),
                    None => continue 'terms,
                }
            }
            let mut real = Vec::with_capacity(w.real.len());
            for &a in w.real.arrows() {
                match self.arrow_map[a] {
                    Some(b) => real.push(b),
                    None => continue 'terms,
                }
            }
            out.add_term(self.cohn.word(ghost, real, junction), c.clone());
        }
        out
    }

    pub fn mul(&self, u: &CohnElement, v: &CohnElement) -> CohnElement {
        self.normal_form(&self.cohn.mul(u, v))
    }

    pub fn differential(&self, u: &CohnElement) -> CohnElement {
        self.normal_form(&self.cohn.differential(u))
    }

    /// Words `p* q` of `Q̃°` with `l(q) = level` and degree `degree`.
    pub fn level_words(&self, level: usize, degree: i64) -> Vec<GeneralizedWord> {
        let ghost_len = level as i64 + degree;
        if ghost_len < 0 {
            return Vec::new();
        }
        let q = self.quiver();
        let ghosts = q.paths_of_length(ghost_len as usize);
        let reals = q.paths_of_length(level);
        let mut out = Vec::new();
        for r in &reals {
            for g in &ghosts {
                if g.target() == r.target() {
                    out.push(GeneralizedWord::new(g.clone(), r.clone()));
                }
            }
        }
        out
    }
}
