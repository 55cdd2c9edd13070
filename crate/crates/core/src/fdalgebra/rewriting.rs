use std::sync::Arc;

use super::FdError;
use crate::foundation::{Field, Scalar};
use crate::quiver::{Path, PathAlgebraElement, Quiver};

/// A rewrite rule `lead → tail` with `tail` strictly smaller than `lead`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lead: Path,
    pub tail: PathAlgebraElement,
}

/// Completed rewriting system for an admissible ideal, length-lexicographic
/// order with ties broken by file order of arrows.
#[derive(Clone, Debug)]
pub struct RewritingSystem {
    quiver: Arc<Quiver>,
    field: Field,
    rules: Vec<Rule>,
    nilpotency: usize,
    max_len: usize,
}

/// Multiplies `left · u · right` termwise; all terms of `u` must be parallel
/// to the junction so the products compose.
fn sandwich(left: &Path, u: &PathAlgebraElement, right: &Path) -> PathAlgebraElement {
    let mut out = PathAlgebraElement::zero(u.quiver(), u.field());
    for (p, c) in u.terms() {
        if let Some(lp) = left.mul(p) {
            if let Some(lpr) = lp.mul(right) {
                out.add_term(lpr, c.clone());
            }
        }
    }
    out
}

fn reduce_with(rules: &[Rule], f: &PathAlgebraElement, skip: Option<usize>) -> PathAlgebraElement {
    let q = f.quiver().clone();
    let field = f.field();
    let mut work = f.clone();
    let mut done = PathAlgebraElement::zero(&q, field);
    while let Some((lead, c)) = work.leading().map(|(p, c)| (p.clone(), c.clone())) {
        let hit = rules
            .iter()
            .enumerate()
            .filter(|(k, _)| Some(*k) != skip)
            .find_map(|(_, r)| lead.find(&r.lead).map(|pos| (r, pos)));
        work.add_term(lead.clone(), -&c);
        match hit {
            Some((rule, pos)) => {
                let left = lead.subpath(&q, 0, pos);
                let right = lead.subpath(&q, pos + rule.lead.len(), lead.len());
                let replacement = sandwich(&left, &rule.tail, &right).scale(&c);
                work = work.add(&replacement).expect("same quiver");
            }
            None => done.add_term(lead, c),
        }
    }
    done
}

/// Turns a nonzero polynomial into a monic rule.
fn to_rule(f: &PathAlgebraElement) -> Rule {
    let (lead, c) = f.leading().expect("nonzero");
    let lead = lead.clone();
    let inv = c.inv().expect("nonzero coefficient");
    let monic = f.scale(&inv);
    let mut tail = monic.scale(&-Scalar::one(f.field()));
    tail.add_term(lead.clone(), Scalar::one(f.field()));
    Rule { lead, tail }
}

fn rule_poly(r: &Rule) -> PathAlgebraElement {
    let mut p = r.tail.scale(&-Scalar::one(r.tail.field()));
    p.add_term(r.lead.clone(), Scalar::one(r.tail.field()));
    p
}

/// Replaces the rule set by the reduced basis generating the same ideal.
fn interreduce(mut rules: Vec<Rule>) -> Vec<Rule> {
    loop {
        rules.sort_by(|a, b| a.lead.cmp(&b.lead));
        let mut changed = false;
        let mut k = 0;
        while k < rules.len() {
            let reduced = reduce_with(&rules, &rule_poly(&rules[k]), Some(k));
            if reduced.is_zero() {
                rules.remove(k);
                changed = true;
                continue;
            }
            let r = to_rule(&reduced);
            if r != rules[k] {
                changed = true;
                rules[k] = r;
            }
            k += 1;
        }
        if !changed {
            return rules;
        }
    }
}

/// S-polynomials from proper overlaps `lead(g) = A·B`, `lead(h) = B·C`.
fn overlaps(q: &Quiver, g: &Rule, h: &Rule) -> Vec<(usize, PathAlgebraElement)> {
    let (lg, lh) = (g.lead.arrows(), h.lead.arrows());
    let mut out = Vec::new();
    for k in 1..lg.len().min(lh.len()) {
        if lg[lg.len() - k..] != lh[..k] {
            continue;
        }
        let a = g.lead.subpath(q, 0, lg.len() - k);
        let c = h.lead.subpath(q, k, lh.len());
        // g·C − A·h with leading words cancelled: −tail(g)·C + A·tail(h).
        let left = sandwich(&Path::trivial(g.lead.target()), &g.tail, &c);
        let right = sandwich(&a, &h.tail, &Path::trivial(h.lead.source()));
        out.push((lg.len() + lh.len() - k, right.sub(&left).expect("same quiver")));
    }
    out
}

impl RewritingSystem {
    /// Critical-pair completion of the ideal generated by `relations`.
    ///
    /// Fails when a rule or overlap exceeds the length bound, when irreducible
    /// words persist up to `max_len`, or when some word of the nilpotency
    /// length does not reduce to zero (the ideal is then not admissible).
    pub fn complete(
        quiver: &Arc<Quiver>,
        field: Field,
        relations: &[PathAlgebraElement],
        max_len: usize,
    ) -> Result<RewritingSystem, FdError> {
        let mut rules = Vec::new();
        for r in relations {
            if r.min_length().is_some_and(|l| l < 2) {
                return Err(FdError::ShortRelation(r.to_string()));
            }
            for comp in r.uniform_components().into_values() {
                rules.push(to_rule(&comp));
            }
        }
        let mut rules = interreduce(rules);
        loop {
            let mut new = Vec::new();
            for g in &rules {
                for h in &rules {
                    for (len, s) in overlaps(quiver, g, h) {
                        if len > 2 * max_len {
                            return Err(FdError::NotAdmissible(format!(
                                "overlap of length {len} exceeds the bound 2·{max_len}"
                            )));
                        }
                        let red = reduce_with(&rules, &s, None);
                        if !red.is_zero() {
                            new.push(red);
                        }
                    }
                }
            }
            if new.is_empty() {
                break;
            }
            for f in new {
                let red = reduce_with(&rules, &f, None);
                if !red.is_zero() {
                    let r = to_rule(&red);
                    if r.lead.len() > max_len {
                        return Err(FdError::NotAdmissible(format!(
                            "rewrite rule with leading word of length {} exceeds max_len {max_len}",
                            r.lead.len()
                        )));
                    }
                    rules.push(r);
                }
            }
            rules = interreduce(rules);
        }
        let mut rs = RewritingSystem {
            quiver: quiver.clone(),
            field,
            rules,
            nilpotency: 0,
            max_len,
        };
        let mut d = 0;
        loop {
            if rs.irreducible_words(d).is_empty() {
                break;
            }
            d += 1;
            if d > max_len {
                return Err(FdError::NotAdmissible(format!(
                    "irreducible words of length {max_len} remain"
                )));
            }
        }
        for w in quiver.paths_of_length(d) {
            let nf = rs.normal_form(&PathAlgebraElement::from_path(quiver, field, w.clone()));
            if !nf.is_zero() {
                return Err(FdError::NotAdmissible(format!(
                    "{} reduces to {nf}, not to zero",
                    quiver.path_display(&w)
                )));
            }
        }
        rs.nilpotency = d;
        Ok(rs)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Least length `d` with no irreducible words; every word of length `≥ d` reduces to 0.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn is_irreducible(&self, w: &Path) -> bool {
        self.rules.iter().all(|r| w.find(&r.lead).is_none())
    }

    /// Irreducible words of length `k`, in increasing order.
    pub fn irreducible_words(&self, k: usize) -> Vec<Path> {
        let mut layer: Vec<Path> = (0..self.quiver.num_vertices()).map(Path::trivial).collect();
        for _ in 0..k {
            let mut next = Vec::new();
            for p in &layer {
                for a in 0..self.quiver.num_arrows() {
                    if let Some(ap) = Path::arrow_of(&self.quiver, a).mul(p) {
                        if self.is_irreducible(&ap) {
                            next.push(ap);
                        }
                    }
                }
            }
            layer = next;
        }
        layer.sort();
        layer
    }

    pub fn normal_form(&self, f: &PathAlgebraElement) -> PathAlgebraElement {
        reduce_with(&self.rules, f, None)
    }

    /// Checks that every critical pair resolves and every rule is consistent.
    pub fn verify_confluence(&self) -> Result<(), String> {
        for g in &self.rules {
            for h in &self.rules {
                for (_, s) in overlaps(&self.quiver, g, h) {
                    let red = self.normal_form(&s);
                    if !red.is_zero() {
                        return Err(format!(
                            "overlap of {} and {} leaves {red}",
                            self.quiver.path_display(&g.lead),
                            self.quiver.path_display(&h.lead)
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Free function form of [`RewritingSystem::complete`].
pub fn complete(
    quiver: &Arc<Quiver>,
    field: Field,
    relations: &[PathAlgebraElement],
    max_len: usize,
) -> Result<RewritingSystem, FdError> {
    RewritingSystem::complete(quiver, field, relations, max_len)
}

/// Free function form of [`RewritingSystem::normal_form`].
pub fn normal_form(elem: &PathAlgebraElement, rs: &RewritingSystem) -> PathAlgebraElement {
    rs.normal_form(elem)
}
