use super::map::{YonedaContext, YonedaMap};
use super::SignSite;
use crate::dg_leavitt::{CohnElement, DgError, LeavittAlgebra};
use crate::foundation::Scalar;
use crate::quiver::Path;

/// A class `[f; p]` in the colimit `SY(E, E)`, with `f: J^{⊗n} → J^{⊗p}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SYElement {
    pub map: YonedaMap,
}

impl SYElement {
    pub fn new(map: YonedaMap) -> SYElement {
        assert_eq!(map.src_omega, 0, "SY(E, E) classes have source E");
        SYElement { map }
    }

    pub fn level(&self) -> usize {
        self.map.tgt
    }

    pub fn degree(&self) -> i64 {
        self.map.degree()
    }

    pub fn is_zero_rep(&self) -> bool {
        self.map.is_zero()
    }
}

/// Translation between words of `Q̃°` (where Leavitt elements live) and
/// tensor words of `Q̃` (where the Yoneda model lives).
#[derive(Clone, Debug)]
pub struct PsiBridge {
    to_full_arrow: Vec<usize>,
    to_full_vertex: Vec<usize>,
    to_core_arrow: Vec<Option<usize>>,
}

impl PsiBridge {
    pub fn new(lv: &LeavittAlgebra) -> PsiBridge {
        let mut to_full_arrow = vec![0; lv.quiver().num_arrows()];
        for (full, core) in lv.arrow_map().iter().enumerate() {
            if let Some(c) = core {
                to_full_arrow[*c] = full;
            }
        }
        let mut to_full_vertex = vec![0; lv.quiver().num_vertices()];
        for (full, core) in lv.vertex_map().iter().enumerate() {
            if let Some(c) = core {
                to_full_vertex[*c] = full;
            }
        }
        PsiBridge {
            to_full_arrow,
            to_full_vertex,
            to_core_arrow: lv.arrow_map().to_vec(),
        }
    }

    fn full_path(&self, ctx: &YonedaContext, p: &Path) -> Path {
        if p.is_trivial() {
            Path::trivial(self.to_full_vertex[p.target()])
        } else {
            let arrows: Vec<usize> = p.arrows().iter().map(|&a| self.to_full_arrow[a]).collect();
            Path::from_arrows(ctx.quiver(), &arrows).expect("subquiver path")
        }
    }

    fn core_arrows(&self, p: &Path) -> Option<Vec<usize>> {
        p.arrows().iter().map(|&a| self.to_core_arrow[a]).collect()
    }
}

impl YonedaContext {
    /// `φ(g*)`: `x ↦ (−1)^n [x = g] e_{t(g)}` for a ghost path `g` of length `n`.
    pub fn phi(&self, g: &Path) -> YonedaMap {
        let n = g.len();
        let mut out = YonedaMap::zero(self.field(), n, 0, 0);
        out.add_entry(Path::trivial(g.target()), g.clone(), self.sign(SignSite::Phi, n as i64));
        out
    }

    /// `ψ̃_p(g* ⊗ r)`: `x ↦ (−1)^{pn} φ(g*)(x) r = (−1)^{n(p+1)} [x = g] r`.
    pub fn psi_word(&self, g: &Path, r: &Path) -> YonedaMap {
        let (n, p) = (g.len(), r.len());
        let sign = &self.sign(SignSite::Phi, n as i64) * &self.sign(SignSite::Psi, (n * p) as i64);
        let mut out = YonedaMap::zero(self.field(), n, 0, p);
        out.add_entry(r.clone(), g.clone(), sign);
        out
    }

    /// `Ψ` on a Cohn representative over `Q̃°`, all of whose words have level `p`.
    pub fn psi_at_level(
        &mut self,
        bridge: &PsiBridge,
        u: &CohnElement,
        p: usize,
        degree: i64,
    ) -> Result<SYElement, DgError> {
        let n = p as i64 + degree;
        if n < 0 {
            return Err(DgError::Misaligned(p));
        }
        let mut out = YonedaMap::zero(self.field(), n as usize, 0, p);
        for (w, c) in u.terms() {
            if w.level() != p {
                return Err(DgError::Misaligned(p));
            }
            if w.degree() != degree {
                return Err(DgError::NotHomogeneous);
            }
            let m = self.psi_word(&bridge.full_path(self, &w.ghost), &bridge.full_path(self, &w.real));
            out.add_scaled(&m, c);
        }
        Ok(SYElement::new(out))
    }

    /// `Ψ` on any homogeneous representative: each level is mapped by `ψ̃_p`
    /// and pushed to the top level along the colimit structure maps.
    pub fn psi(&mut self, bridge: &PsiBridge, u: &CohnElement, degree: i64) -> Result<SYElement, DgError> {
        // A zero element of negative degree still needs a level with n ≥ 0.
        let top = u.max_level().max((-degree).max(0) as usize);
        let mut acc = None::<YonedaMap>;
        for p in 0..=top {
            let part = u.level_part(p);
            if part.is_zero() && p != top {
                continue;
            }
            let m = self.psi_at_level(bridge, &part, p, degree)?.map;
            let m = self.theta_push_n(&m, top - p);
            acc = Some(match acc {
                Some(a) => a.add(&m),
                None => m,
            });
        }
        Ok(SYElement::new(acc.expect("top level visited")))
    }

    /// Inverse of `Ψ`: reads each matrix entry back as a word and maps it to
    /// `L(Q̃°)`, where words through eroded vertices vanish.
    pub fn psi_inverse(&self, bridge: &PsiBridge, s: &SYElement, core: &LeavittAlgebra) -> CohnElement {
        let cohn = core.cohn();
        let mut out = cohn.zero();
        for (x, col) in s.map.columns() {
            for (r, c) in col {
                let sign = self.psi_word(x, r).entry(r, x);
                let coeff = c * &sign.inv().expect("sign is a unit");
                let (Some(g), Some(q)) = (bridge.core_arrows(x), bridge.core_arrows(r)) else {
                    continue;
                };
                let junction = match core.vertex_map()[x.target()] {
                    Some(j) => j,
                    None => continue,
                };
                let word = cohn.word(g, q, junction);
                out.add_term(word, coeff);
            }
        }
        out
    }

    /// `[g; q] ⊙_sg [f; p] = [Ω^p(g) ⊙ f; p + q]`.
    pub fn sy_compose(&mut self, b: &SYElement, a: &SYElement) -> SYElement {
        let og = self.omega(&b.map, a.level());
        SYElement::new(self.compose(&og, &a.map))
    }

    pub fn sy_delta(&mut self, a: &SYElement) -> SYElement {
        SYElement::new(self.delta_ex(&a.map))
    }

    pub fn sy_unit(&self) -> SYElement {
        SYElement::new(self.identity(0))
    }

    /// Representative of `a` at level `level ≥ a.level()`.
    pub fn at_level(&mut self, a: &SYElement, level: usize) -> SYElement {
        SYElement::new(self.theta_push_n(&a.map, level - a.level()))
    }

    /// Equality of classes: both sides are pushed to a common level and then
    /// once more per vertex, so that maps through eroding vertices die.
    pub fn class_eq(&mut self, a: &SYElement, b: &SYElement) -> bool {
        let level = a.level().max(b.level()) + self.quiver().num_vertices();
        let x = self.theta_push_n(&a.map, level - a.level());
        let y = self.theta_push_n(&b.map, level - b.level());
        if x.is_zero() && y.is_zero() {
            return true;
        }
        x.degree() == y.degree() && x == y
    }

    pub fn sy_add(&mut self, a: &SYElement, b: &SYElement) -> SYElement {
        let level = a.level().max(b.level());
        let x = self.theta_push_n(&a.map, level - a.level());
        let y = self.theta_push_n(&b.map, level - b.level());
        SYElement::new(x.add(&y))
    }

    pub fn sy_scale(&self, a: &SYElement, c: &Scalar) -> SYElement {
        SYElement::new(a.map.scale(c))
    }
}
