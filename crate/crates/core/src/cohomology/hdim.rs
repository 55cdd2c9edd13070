use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::complex::{echelon_kernel, images, rank_of, Block, WordComplex};
use super::CohomologyError;
use crate::dg_leavitt::GeneralizedWord;
use crate::fdalgebra::RadicalQuiverData;
use crate::foundation::{EchelonBasis, SparseVector};
use crate::quiver::Path;
use crate::singular_yoneda::{YonedaContext, YonedaMap};

/// Monomials of one degree split by weight.
fn by_weight(cx: &WordComplex, words: Vec<GeneralizedWord>) -> HashMap<i64, Vec<GeneralizedWord>> {
    let mut out: HashMap<i64, Vec<GeneralizedWord>> = HashMap::new();
    for w in words {
        out.entry(cx.weight(&w)).or_default().push(w);
    }
    out
}

/// `dim H^d` of `T_E(J*)`; the degree `d` piece is finite, so this is exact.
pub fn tensor_algebra_hdim(rq: &RadicalQuiverData, d: i64) -> Result<usize, CohomologyError> {
    if d < 0 {
        return Err(CohomologyError::NegativeDegree(d));
    }
    let cx = WordComplex::tensor(rq);
    let mut prev = by_weight(&cx, cx.words(d - 1, 0));
    let mut next = by_weight(&cx, cx.words(d + 1, 0));
    let mut total = 0;
    for (w, words) in by_weight(&cx, cx.words(d, 0)) {
        let mid = Block::new(words);
        let before = Block::new(prev.remove(&w).unwrap_or_default());
        let after = Block::new(next.remove(&w).unwrap_or_default());
        let d_in = images(&cx, &before, &mid)?;
        let d_out = images(&cx, &mid, &after)?;
        total += mid.len() - rank_of(&d_in, mid.len(), cx.field()) - rank_of(&d_out, after.len(), cx.field());
    }
    Ok(total)
}

/// `dim H^d` of the level-`p` Yoneda complex `𝒴(E, Ω^p E)`, computed from
/// `δ_ex` matrices alone; `p = 0` gives `H^d(T_E(J*))` through `φ`.
pub fn yoneda_level_hdim(rq: &RadicalQuiverData, d: i64, p: usize) -> usize {
    let n = d + p as i64;
    if n < 0 {
        return 0;
    }
    let mut ctx = YonedaContext::new(Arc::new(rq.clone()));
    let q = ctx.quiver().clone();
    let reals = q.paths_of_length(p);
    let pairs = |k: i64| -> Vec<(Path, Path)> {
        if k < 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for x in q.paths_of_length(k as usize) {
            for r in &reals {
                if r.target() == x.target() {
                    out.push((r.clone(), x.clone()));
                }
            }
        }
        out
    };
    let field = ctx.field();
    let mut delta_images = |from: &[(Path, Path)], k: i64, to: &[(Path, Path)]| -> Vec<SparseVector> {
        let index: HashMap<&(Path, Path), usize> = to.iter().enumerate().map(|(i, e)| (e, i)).collect();
        from.iter()
            .map(|(r, x)| {
                let mut m = YonedaMap::zero(field, k as usize, 0, p);
                m.add_entry(r.clone(), x.clone(), crate::foundation::Scalar::one(field));
                let dm = ctx.delta_ex(&m);
                let mut v = Vec::new();
                for (src, col) in dm.columns() {
                    for (tgt, c) in col {
                        v.push((index[&(tgt.clone(), src.clone())], c.clone()));
                    }
                }
                SparseVector::from_pairs(v)
            })
            .collect()
    };
    let (prev, mid, next) = (pairs(n - 1), pairs(n), pairs(n + 1));
    let d_in = if n >= 1 {
        delta_images(&prev, n - 1, &mid)
    } else {
        Vec::new()
    };
    let d_out = delta_images(&mid, n, &next);
    mid.len() - rank_of(&d_in, mid.len(), field) - rank_of(&d_out, next.len(), field)
}

/// `H^d` across the truncations `F_p` of `L(Q̃°)` by level.
#[derive(Clone, Debug, Serialize)]
pub struct LeavittHdim {
    pub degree: i64,
    pub dimension: usize,
    pub stabilized: bool,
    /// First level of the run of isomorphisms witnessing stability.
    pub stable_from: Option<usize>,
    pub last_level: usize,
    /// `dim H^d(F_p)` for `p = 0, …, last_level`.
    pub levels: Vec<usize>,
    /// Whether `H^d(F_p) → H^d(F_{p+1})` is an isomorphism, for `p < last_level`.
    pub isomorphisms: Vec<bool>,
}

struct LevelData {
    dims: Vec<usize>,
    iso: Vec<bool>,
}

/// One pass at truncation `top` for one weight: dimensions at every level
/// `p ≤ top` and the maps induced by `F_p ⊂ F_{p+1}`.
fn level_pass(
    cx: &WordComplex,
    prev: Vec<GeneralizedWord>,
    mid: Vec<GeneralizedWord>,
    next: Vec<GeneralizedWord>,
    top: usize,
) -> Result<LevelData, CohomologyError> {
    let field = cx.field();
    let (prev, mid, next) = (Block::new(prev), Block::new(mid), Block::new(next));
    let d_in = images(cx, &prev, &mid)?;
    let d_out = images(cx, &mid, &next)?;
    let kernel = echelon_kernel(&d_out, next.len(), field);
    let mut boundaries = EchelonBasis::new(mid.len(), field);
    let mut b_next = 0;
    let mut dims = Vec::with_capacity(top + 1);
    let mut ranks = Vec::with_capacity(top + 1);
    let mut bases = Vec::with_capacity(top + 1);
    for p in 0..=top {
        while b_next < prev.len() && prev.words[b_next].level() <= p {
            boundaries.insert(d_in[b_next].clone());
            b_next += 1;
        }
        let z = kernel.iter().filter(|(j, _)| mid.words[*j].level() <= p).count();
        dims.push(z - boundaries.rank());
        ranks.push(z);
        bases.push(boundaries.clone());
    }
    let mut iso = Vec::with_capacity(top);
    for p in 0..top {
        let mut eb = bases[p + 1].clone();
        let before = eb.rank();
        for (_, k) in kernel.iter().take(ranks[p]) {
            eb.insert(k.clone());
        }
        let image_rank = eb.rank() - before;
        iso.push(image_rank == dims[p] && dims[p] == dims[p + 1]);
    }
    Ok(LevelData { dims, iso })
}

fn levels_at(cx: &WordComplex, d: i64, top: usize) -> Result<LevelData, CohomologyError> {
    let mut prev = by_weight(cx, cx.words(d - 1, top));
    let mut next = by_weight(cx, cx.words(d + 1, top));
    let mid = by_weight(cx, cx.words(d, top));
    let weights: BTreeSet<i64> = mid.keys().copied().collect();
    let mut mid = mid;
    let mut total = LevelData {
        dims: vec![0; top + 1],
        iso: vec![true; top],
    };
    for w in weights {
        let part = level_pass(
            cx,
            prev.remove(&w).unwrap_or_default(),
            mid.remove(&w).unwrap_or_default(),
            next.remove(&w).unwrap_or_default(),
            top,
        )?;
        for (t, x) in total.dims.iter_mut().zip(&part.dims) {
            *t += x;
        }
        for (t, x) in total.iso.iter_mut().zip(&part.iso) {
            *t &= x;
        }
    }
    Ok(total)
}

/// `dim H^d(L(Q̃°))` by truncation at increasing levels, stopping at the first
/// level where the last `window` connecting maps are isomorphisms.
pub fn leavitt_hdim(
    rq: &RadicalQuiverData,
    d: i64,
    max_level: usize,
    window: usize,
) -> Result<LeavittHdim, CohomologyError> {
    leavitt_hdim_in(&WordComplex::leavitt(rq), d, max_level, window)
}

pub fn leavitt_hdim_in(
    cx: &WordComplex,
    d: i64,
    max_level: usize,
    window: usize,
) -> Result<LeavittHdim, CohomologyError> {
    if window < 1 || max_level < window {
        return Err(CohomologyError::BadWindow { max_level, window });
    }
    // Below this level `F_p` has no monomials of degree d.
    let first = (-d).max(0) as usize;
    let mut top = (first + window).min(max_level);
    loop {
        let data = levels_at(cx, d, top)?;
        let run = data.iso[first.min(top)..].iter().rev().take_while(|&&b| b).count();
        let stabilized = run >= window;
        if stabilized || top == max_level {
            return Ok(LeavittHdim {
                degree: d,
                dimension: *data.dims.last().expect("levels"),
                stabilized,
                stable_from: stabilized.then(|| top - run),
                last_level: top,
                levels: data.dims,
                isomorphisms: data.iso,
            });
        }
        top += 1;
    }
}
