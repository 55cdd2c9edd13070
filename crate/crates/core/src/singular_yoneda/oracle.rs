//! The Ψ-equivalence harness: randomized laws comparing the symbolic dg
//! Leavitt engine with the matrix model of `SY(E, E)`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::map::{YonedaContext, YonedaMap};
use super::psi::{PsiBridge, SYElement};
use super::Mutation;
use crate::dg_leavitt::{CohnAlgebra, CohnElement, GeneralizedWord, LawOutcome, LeavittAlgebra};
use crate::fdalgebra::RadicalQuiverData;
use crate::foundation::Scalar;
use crate::quiver::Path;

#[derive(Clone, Debug, Serialize)]
pub struct OracleConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_filtration: usize,
    pub max_level: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            trials: 200,
            seed: 42,
            max_filtration: 4,
            max_level: 4,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub trials: usize,
    pub seed: u64,
    pub max_filtration: usize,
    pub max_level: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation: Option<String>,
    pub laws: Vec<LawOutcome>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }
}

struct Harness {
    ctx: YonedaContext,
    lv: LeavittAlgebra,
    bridge: PsiBridge,
    cfg: OracleConfig,
}

/// Homogeneous element made of up to `terms` random words of shape `(n, p)`.
fn random_shape<R: Rng>(c: &CohnAlgebra, rng: &mut R, n: usize, p: usize, terms: usize) -> CohnElement {
    let mut out = c.zero();
    for _ in 0..terms {
        if let Some(w) = c.random_word(rng, n, p) {
            let k = rng.gen_range(1i64..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            out.add_term(w, Scalar::from_i64(c.field(), k));
        }
    }
    out
}

fn single(c: &CohnAlgebra, w: &GeneralizedWord) -> CohnElement {
    CohnElement::from_word(c.field(), w.clone())
}

/// All words of `Q̃°` with the given shape.
fn words_of_shape(c: &CohnAlgebra, n: usize, p: usize) -> Vec<GeneralizedWord> {
    let q = c.quiver();
    let ghosts = q.paths_of_length(n);
    let reals = q.paths_of_length(p);
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

impl Harness {
    fn cohn(&self) -> &CohnAlgebra {
        self.lv.cohn()
    }

    fn psi(&mut self, u: &CohnElement, degree: i64) -> SYElement {
        self.ctx
            .psi(&self.bridge, u, degree)
            .expect("homogeneous by construction")
    }

    /// Raises `α` or `β` by Casimir insertion until `α`'s real length equals `β`'s ghost length.
    fn align(&self, a: &CohnElement, pa: usize, b: &CohnElement, pb: usize) -> (CohnElement, CohnElement, usize) {
        let c = self.cohn();
        let (mut a, mut b) = (a.clone(), b.clone());
        let p = pa.max(pb);
        for _ in pa..p {
            a = c.insert_casimir(&a);
        }
        for _ in pb..p {
            b = c.insert_casimir(&b);
        }
        (a, b, p)
    }

    /// `Ψ(α•β) = (−1)^{(n−p)(p−q)} Ψ(β) ⊙_sg Ψ(α)`.
    fn sign_rule(&mut self, a: &CohnElement, da: i64, b: &CohnElement, db: i64) -> Result<(), String> {
        let ab = self.cohn().mul(a, b);
        let lhs = self.psi(&ab, da + db);
        let pa = self.psi(a, da);
        let pb = self.psi(b, db);
        let rhs = self.ctx.sy_compose(&pb, &pa);
        let rhs = self.ctx.sy_scale(&rhs, &Scalar::sign(self.ctx.field(), da * db));
        if self.ctx.class_eq(&lhs, &rhs) {
            Ok(())
        } else {
            Err(format!(
                "α = {}, β = {}: Ψ(αβ) != (−1)^{{|α||β|}} Ψ(β) ⊙ Ψ(α)",
                self.cohn().render(a),
                self.cohn().render(b)
            ))
        }
    }

    fn chain_map(&mut self, u: &CohnElement, d: i64) -> Result<(), String> {
        let du = self.cohn().differential(u);
        let lhs = self.psi(&du, d + 1);
        let pu = self.psi(u, d);
        let rhs = self.ctx.sy_delta(&pu);
        if self.ctx.class_eq(&lhs, &rhs) {
            Ok(())
        } else {
            Err(format!("u = {}: Ψ(∂u) != δ_ex Ψ(u)", self.cohn().render(u)))
        }
    }

    fn level_naturality(&mut self, u: &CohnElement, d: i64) -> Result<(), String> {
        let lu = self.cohn().insert_casimir(u);
        let lhs = self.psi(&lu, d);
        let pu = self.psi(u, d);
        let rhs = SYElement::new(self.ctx.theta_push(&pu.map));
        if self.ctx.class_eq(&lhs, &rhs) {
            Ok(())
        } else {
            Err(format!("u = {}: Ψ(c-insertion) != θ-push Ψ(u)", self.cohn().render(u)))
        }
    }

    /// Minimal failing single-word pair for the sign rule, smallest total length first.
    fn shrink_sign_rule(&mut self, bound: usize) -> Option<String> {
        for total in 0..=bound {
            for n in 0..=total {
                for p in 0..=total - n {
                    let q = total - n - p;
                    let wa = words_of_shape(self.cohn(), n, p);
                    let wb = words_of_shape(self.cohn(), p, q);
                    for x in &wa {
                        for y in &wb {
                            let (a, b) = (single(self.cohn(), x), single(self.cohn(), y));
                            if let Err(e) = self.sign_rule(&a, x.degree(), &b, y.degree()) {
                                return Some(format!("minimal: {e}"));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    fn shrink_unary(
        &mut self,
        bound: usize,
        law: fn(&mut Harness, &CohnElement, i64) -> Result<(), String>,
    ) -> Option<String> {
        for total in 0..=bound {
            for n in 0..=total {
                for w in words_of_shape(self.cohn(), n, total - n) {
                    let u = single(self.cohn(), &w);
                    if let Err(e) = law(self, &u, w.degree()) {
                        return Some(format!("minimal: {e}"));
                    }
                }
            }
        }
        None
    }

    fn random_map<R: Rng>(&mut self, rng: &mut R, n: usize, p: usize) -> YonedaMap {
        let mut out = YonedaMap::zero(self.ctx.field(), n, 0, p);
        let q = self.ctx.quiver().clone();
        let sources = q.paths_of_length(n);
        if sources.is_empty() {
            return out;
        }
        for _ in 0..rng.gen_range(1..=4) {
            let x = &sources[rng.gen_range(0..sources.len())];
            let targets: Vec<Path> = q
                .paths_of_length(p)
                .into_iter()
                .filter(|r| r.target() == x.target())
                .collect();
            if targets.is_empty() {
                continue;
            }
            let r = targets[rng.gen_range(0..targets.len())].clone();
            out.add_entry(r, x.clone(), Scalar::from_i64(self.ctx.field(), rng.gen_range(1..=5)));
        }
        out
    }
}

fn run_law(
    name: &str,
    trials: usize,
    seed: u64,
    salt: u64,
    h: &mut Harness,
    f: &mut dyn FnMut(&mut Harness, &mut ChaCha8Rng) -> Result<(), String>,
) -> LawOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    for _ in 0..trials {
        if let Err(msg) = f(h, &mut rng) {
            return LawOutcome {
                law: name.to_string(),
                trials,
                passed: false,
                counterexample: Some(msg),
            };
        }
    }
    LawOutcome {
        law: name.to_string(),
        trials,
        passed: true,
        counterexample: None,
    }
}

/// Runs every oracle law on the radical quiver data `rq`.
pub fn run_oracle(rq: &RadicalQuiverData, cfg: &OracleConfig, mutation: Option<Mutation>) -> OracleReport {
    let data = Arc::new(rq.clone());
    let lv = LeavittAlgebra::from_radical(rq);
    let bridge = PsiBridge::new(&lv);
    let mut h = Harness {
        ctx: YonedaContext::with_mutation(data, mutation),
        lv,
        bridge,
        cfg: cfg.clone(),
    };
    let (trials, seed) = (cfg.trials, cfg.seed);
    let fmax = cfg.max_filtration;
    let pmax = cfg.max_level;
    let mut laws = Vec::new();

    // Shapes are kept so that aligned filtrations stay within the bound.
    let mut sign_rule = |h: &mut Harness, rng: &mut ChaCha8Rng| {
        let pa = rng.gen_range(0..=pmax.min(fmax));
        let n = rng.gen_range(0..=fmax);
        let pb = rng.gen_range(0..=fmax);
        let q = rng.gen_range(0..=pmax);
        let a = random_shape(h.cohn(), rng, n, pa, 2);
        let b = random_shape(h.cohn(), rng, pb, q, 2);
        let (a, b, _) = h.align(&a, pa, &b, pb);
        h.sign_rule(&a, n as i64 - pa as i64, &b, pb as i64 - q as i64)
    };
    let mut out = run_law("psi_sign_rule", trials, seed, 11, &mut h, &mut sign_rule);
    if !out.passed {
        if let Some(m) = h.shrink_sign_rule(4) {
            out.counterexample = Some(m);
        }
    }
    laws.push(out);

    let mut chain = |h: &mut Harness, rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(0..=fmax);
        let p = rng.gen_range(0..=pmax);
        let u = random_shape(h.cohn(), rng, n, p, 3);
        h.chain_map(&u, n as i64 - p as i64)
    };
    let mut out = run_law("psi_chain_map", trials, seed, 12, &mut h, &mut chain);
    if !out.passed {
        if let Some(m) = h.shrink_unary(4, Harness::chain_map) {
            out.counterexample = Some(m);
        }
    }
    laws.push(out);

    let mut natural = |h: &mut Harness, rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(0..=fmax);
        let p = rng.gen_range(0..=pmax);
        let u = random_shape(h.cohn(), rng, n, p, 3);
        h.level_naturality(&u, n as i64 - p as i64)
    };
    let mut out = run_law("psi_level_naturality", trials, seed, 13, &mut h, &mut natural);
    if !out.passed {
        if let Some(m) = h.shrink_unary(4, Harness::level_naturality) {
            out.counterexample = Some(m);
        }
    }
    laws.push(out);

    let mut roundtrip = |h: &mut Harness, rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(0..=fmax);
        let p = rng.gen_range(0..=pmax);
        let u = random_shape(h.cohn(), rng, n, p, 3);
        let d = n as i64 - p as i64;
        let s = h.psi(&u, d);
        let back = h.ctx.psi_inverse(&h.bridge, &s, &h.lv);
        if !h.lv.eq(&back, &u) {
            return Err(format!(
                "u = {}: Ψ⁻¹Ψ(u) = {}",
                h.cohn().render(&u),
                h.cohn().render(&back)
            ));
        }
        let level = rng.gen_range(0..=2.min(pmax));
        let filt = rng.gen_range(0..=fmax.min(2));
        let s = SYElement::new(h.random_map(rng, filt, level));
        let back = h.ctx.psi_inverse(&h.bridge, &s, &h.lv);
        let again = h.psi(&back, s.degree());
        if h.ctx.class_eq(&again, &s) {
            Ok(())
        } else {
            Err(format!("random map at level {level}, filtration {filt}: ΨΨ⁻¹ differs"))
        }
    };
    laws.push(run_law("psi_roundtrip", trials, seed, 14, &mut h, &mut roundtrip));

    let mut exponents = |h: &mut Harness, rng: &mut ChaCha8Rng| {
        // Single words α of shape (n, p) and β of shape (p, q) with αβ ≠ 0.
        let n = rng.gen_range(0..=fmax);
        let p = rng.gen_range(0..=pmax.min(fmax));
        let q = rng.gen_range(0..=pmax);
        let c = h.cohn().clone();
        let Some(wa) = c.random_word(rng, n, p) else {
            return Ok(());
        };
        // β's ghost part is α's real part, so the product is the single word g* q.
        let Some(real) = c.random_path_to(rng, wa.real.target(), q) else {
            return Ok(());
        };
        let wb = GeneralizedWord::new(wa.real.clone(), real);
        let a = single(&c, &wa);
        let b = single(&c, &wb);
        let u = h
            .ctx
            .psi_at_level(&h.bridge, &a, p, n as i64 - p as i64)
            .map_err(|e| e.to_string())?;
        let v = h
            .ctx
            .psi_at_level(&h.bridge, &b, q, p as i64 - q as i64)
            .map_err(|e| e.to_string())?;
        let comp = h.ctx.sy_compose(&v, &u);
        let ab = c.mul(&a, &b);
        let w = h
            .ctx
            .psi_at_level(&h.bridge, &ab, q, n as i64 - q as i64)
            .map_err(|e| e.to_string())?;
        let pushed = h.ctx.theta_push_n(&w.map, p);
        let (n, p, q) = (n as i64, p as i64, q as i64);
        let eps = p * (n - p) + (n + 1) * p + p * (p - q) + (p + 1) * q;
        let eps_prime = p * (n - q) + (n + 1) * q;
        let f = h.ctx.field();
        // Implemented signs differ from ε, ε′ by the same n + q, so their ratio is unchanged.
        let want = [Scalar::sign(f, eps + n + q), Scalar::sign(f, eps_prime + n + q)];
        // Both maps are ±(Id^{⊗p} ⊗ w): one entry per prefix, all with the same sign.
        let prefixes = h.ctx.paths_from(wa.ghost.target(), p as usize).len();
        for (k, m) in [&comp.map, &pushed].into_iter().enumerate() {
            let uniform = m.nnz() == prefixes && m.columns().values().flat_map(|c| c.values()).all(|s| *s == want[k]);
            if !uniform {
                let which = if k == 0 {
                    "Ω^p(Ψβ) ⊙ Ψα"
                } else {
                    "Id^{⊗p} ⊗ Ψ(αβ)"
                };
                return Err(format!(
                    "shape ({n},{p},{q}), α = {}, β = {}: {which} does not carry the sign {}",
                    c.render(&a),
                    c.render(&b),
                    want[k]
                ));
            }
        }
        Ok(())
    };
    laws.push(run_law(
        "step2_sign_exponents",
        trials,
        seed,
        15,
        &mut h,
        &mut exponents,
    ));

    let mut phi_square = |h: &mut Harness, rng: &mut ChaCha8Rng| {
        let q = h.ctx.quiver().clone();
        if q.num_arrows() == 0 {
            return Ok(());
        }
        let a = rng.gen_range(0..q.num_arrows());
        let f = h.ctx.field();
        // φ(∂₊ α*) with ∂₊ α* = Σ λ_{βα′,α} (βα′)*, read off λ directly.
        let mut lhs = YonedaMap::zero(f, 2, 0, 0);
        for (b, a2, c) in h.ctx.data().clone().preimages(a) {
            let g = Path::from_arrows(&q, &[*b, *a2]).expect("composable");
            lhs.add_scaled(&h.ctx.phi(&g), c);
        }
        let rhs = h.ctx.delta_ex(&h.ctx.phi(&Path::arrow_of(&q, a)));
        if lhs == rhs {
            Ok(())
        } else {
            Err(format!("φ∂₊ != δ_ex φ on {}*", q.arrow(a).name))
        }
    };
    laws.push(run_law(
        "phi_intertwines_differential",
        trials,
        seed,
        16,
        &mut h,
        &mut phi_square,
    ));

    let mut phi_mult = |h: &mut Harness, rng: &mut ChaCha8Rng| {
        let q = h.ctx.quiver().clone();
        let a = rng.gen_range(0..=fmax.min(3));
        let b = rng.gen_range(0..=fmax.min(3));
        let paths = q.paths_of_length(a + b);
        if paths.is_empty() {
            return Ok(());
        }
        let whole = &paths[rng.gen_range(0..paths.len())];
        // whole = g2 · g1 with l(g2) = b; as ghost words s = g1*, t = g2*, st = whole*.
        let g2 = whole.subpath(&q, 0, b);
        let g1 = whole.subpath(&q, b, a + b);
        let lhs = h.ctx.phi(whole);
        let rhs = h.ctx.compose(&h.ctx.phi(&g2), &h.ctx.phi(&g1));
        let rhs = rhs.scale(&Scalar::sign(h.ctx.field(), (a * b) as i64));
        if lhs == rhs {
            Ok(())
        } else {
            Err(format!(
                "φ(st) != (−1)^(|s||t|) φ(t) ⊙ φ(s) for {}",
                q.path_display(whole)
            ))
        }
    };
    laws.push(run_law("phi_multiplicative", trials, seed, 17, &mut h, &mut phi_mult));

    let mut dd = |h: &mut Harness, rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(0..=fmax.saturating_sub(2));
        let p = rng.gen_range(0..=pmax);
        let f = h.random_map(rng, n, p);
        let d1 = h.ctx.delta_ex(&f);
        let d2 = h.ctx.delta_ex(&d1);
        if d2.is_zero() {
            Ok(())
        } else {
            Err(format!("δδ ≠ 0 on a map J^⊗{n} → J^⊗{p}"))
        }
    };
    laws.push(run_law("delta_squared_zero", trials, seed, 18, &mut h, &mut dd));

    let mut push_laws = |h: &mut Harness, rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(0..=fmax.saturating_sub(1));
        let p = rng.gen_range(0..=pmax.saturating_sub(1));
        let f = h.random_map(rng, n, p);
        let pushed = h.ctx.theta_push(&f);
        let theta = h.ctx.theta(p);
        let via_theta = h.ctx.compose(&theta, &f);
        let of = h.ctx.omega(&f, 1);
        let theta0 = h.ctx.theta(0);
        let via_omega = h.ctx.compose(&of, &theta0);
        if pushed != via_theta || pushed != via_omega {
            return Err(format!("θ-push differs from θ ⊙ f or Ω(f) ⊙ θ on J^⊗{n} → J^⊗{p}"));
        }
        let a = h.ctx.delta_ex(&pushed);
        let df = h.ctx.delta_ex(&f);
        let b = h.ctx.theta_push(&df);
        if a != b {
            return Err(format!("δ θ-push ≠ θ-push δ on J^⊗{n} → J^⊗{p}"));
        }
        Ok(())
    };
    laws.push(run_law(
        "theta_push_naturality",
        trials,
        seed,
        19,
        &mut h,
        &mut push_laws,
    ));

    let mut compose_laws = |h: &mut Harness, rng: &mut ChaCha8Rng| {
        let pick = |h: &mut Harness, rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(0..=2.min(fmax));
            let p = rng.gen_range(0..=2.min(pmax));
            SYElement::new(h.random_map(rng, n, p))
        };
        let (a, b, c) = (pick(h, rng), pick(h, rng), pick(h, rng));
        let ba = h.ctx.sy_compose(&b, &a);
        let cb = h.ctx.sy_compose(&c, &b);
        let l = h.ctx.sy_compose(&c, &ba);
        let r = h.ctx.sy_compose(&cb, &a);
        if l.map != r.map {
            return Err("⊙_sg is not associative".into());
        }
        let unit = h.ctx.sy_unit();
        if h.ctx.sy_compose(&unit, &a).map != a.map || h.ctx.sy_compose(&a, &unit).map != a.map {
            return Err("[id; 0] is not a unit".into());
        }
        let pa = SYElement::new(h.ctx.theta_push(&a.map));
        let pb = SYElement::new(h.ctx.theta_push(&b.map));
        let x = h.ctx.sy_compose(&b, &pa);
        let y = h.ctx.sy_compose(&pb, &a);
        if !h.ctx.class_eq(&x, &ba) || !h.ctx.class_eq(&y, &ba) {
            return Err("⊙_sg depends on the representative".into());
        }
        // δ(b ⊙ a) = δb ⊙ a + (−1)^{|b|} b ⊙ δa
        let lhs = h.ctx.sy_delta(&ba);
        let db = h.ctx.sy_delta(&b);
        let da = h.ctx.sy_delta(&a);
        let t1 = h.ctx.sy_compose(&db, &a);
        let t2 = h.ctx.sy_compose(&b, &da);
        let rhs = t1.map.add(&t2.map.scale(&Scalar::sign(h.ctx.field(), b.degree())));
        if lhs.map != rhs {
            return Err("graded Leibniz fails for ⊙_sg".into());
        }
        Ok(())
    };
    laws.push(run_law(
        "sy_composition_laws",
        trials,
        seed,
        20,
        &mut h,
        &mut compose_laws,
    ));

    let _ = &h.cfg;
    laws.sort_by(|a, b| a.law.cmp(&b.law));
    OracleReport {
        trials,
        seed,
        max_filtration: fmax,
        max_level: pmax,
        mutation: mutation.map(|m| m.name().to_string()),
        laws,
    }
}
