use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::presentation::AlgebraPresentation;
use super::FdError;
use crate::foundation::{EchelonBasis, Field, Matrix, Rational, Scalar, SparseVector};
use crate::quiver::{Path, Quiver};

/// Compact name of a path: runs collapse to `a^k`, factors join with `.`.
pub fn compact_word_name(q: &Quiver, p: &Path) -> String {
    let mut parts: Vec<String> = Vec::new();
    let arrows = p.arrows();
    let mut i = 0;
    while i < arrows.len() {
        let mut j = i;
        while j < arrows.len() && arrows[j] == arrows[i] {
            j += 1;
        }
        let name = &q.arrow(arrows[i]).name;
        parts.push(if j - i == 1 {
            name.clone()
        } else {
            format!("{name}^{}", j - i)
        });
        i = j;
    }
    parts.join(".")
}

/// The radical quiver `Q̃` with structure constants of the product on `J`:
/// `μ(β ⊗ α) = Σ_γ λ_{βα,γ} γ` for composable `β α` (α applied first).
#[derive(Clone, Debug)]
pub struct RadicalQuiverData {
    quiver: Arc<Quiver>,
    field: Field,
    labels: Vec<String>,
    word_lengths: Option<Vec<usize>>,
    lambda: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
    by_gamma: Vec<Vec<(usize, usize, Scalar)>>,
}

/// One failure of `μ(μ(α₃⊗α₂)⊗α₁) = μ(α₃⊗μ(α₂⊗α₁))` on an arrow `α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssociativityViolation {
    pub path: [String; 3],
    pub arrow: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssociativityReport {
    pub paths_checked: usize,
    pub violations: Vec<AssociativityViolation>,
}

impl AssociativityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Serialize, Deserialize)]
struct ArrowJson {
    name: String,
    source: String,
    target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    length: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct LambdaJson {
    beta: String,
    alpha: String,
    gamma: String,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct RadicalJson {
    field: String,
    vertices: Vec<String>,
    arrows: Vec<ArrowJson>,
    lambda: Vec<LambdaJson>,
}

fn parse_field(text: &str) -> Result<Field, FdError> {
    let t = text.trim();
    if t == "Q" {
        return Ok(Field::Rational);
    }
    if let Some(p) = t.strip_prefix("Fp") {
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| FdError::InvalidData(format!("bad field `{text}`")))?;
        return Field::prime(p).map_err(|e| FdError::InvalidData(e.to_string()));
    }
    Err(FdError::InvalidData(format!("bad field `{text}`")))
}

impl RadicalQuiverData {
    /// Builds from explicit structure constants `(β, α, γ, λ)`.
    ///
    /// Rejects entries whose `β α` does not compose or whose `γ` is not
    /// parallel to `β α`.
    pub fn from_lambda(
        quiver: Arc<Quiver>,
        field: Field,
        labels: Vec<String>,
        word_lengths: Option<Vec<usize>>,
        entries: Vec<(usize, usize, usize, Scalar)>,
    ) -> Result<RadicalQuiverData, FdError> {
        let mut lambda: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>> = BTreeMap::new();
        for (b, a, g, c) in entries {
            let (ab, aa, ag) = (quiver.arrow(b), quiver.arrow(a), quiver.arrow(g));
            if ab.source != aa.target {
                return Err(FdError::InvalidData(format!(
                    "λ entry for {}·{}: arrows do not compose",
                    ab.name, aa.name
                )));
            }
            if ag.source != aa.source || ag.target != ab.target {
                return Err(FdError::InvalidData(format!(
                    "λ entry ({}·{}, {}): result arrow is not parallel",
                    ab.name, aa.name, ag.name
                )));
            }
            if c.field() != field {
                return Err(FdError::InvalidData("λ coefficient in wrong field".into()));
            }
            let slot = lambda.entry((b, a)).or_default();
            let v = slot.remove(&g).map_or(c.clone(), |old| old + c);
            if !v.is_zero() {
                slot.insert(g, v);
            }
        }
        let lambda: BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = lambda
            .into_iter()
            .filter(|(_, m)| !m.is_empty())
            .map(|(k, m)| (k, m.into_iter().collect()))
            .collect();
        let mut by_gamma = vec![Vec::new(); quiver.num_arrows()];
        for ((b, a), list) in &lambda {
            for (g, c) in list {
                by_gamma[*g].push((*b, *a, c.clone()));
            }
        }
        Ok(RadicalQuiverData {
            quiver,
            field,
            labels,
            word_lengths,
            lambda,
            by_gamma,
        })
    }

    /// Reads `Q̃` and `λ` off the multiplication table of `J`.
    pub fn from_presentation(ap: &AlgebraPresentation) -> RadicalQuiverData {
        let q = ap.quiver();
        let j = ap.j_basis();
        let mut qt = Quiver::empty();
        for v in q.vertices() {
            qt.add_vertex(v).expect("distinct vertices");
        }
        let mut arrow_of_basis: HashMap<usize, usize> = HashMap::new();
        let mut labels = Vec::new();
        let mut lengths = Vec::new();
        for &i in &j {
            let w = &ap.basis()[i];
            let id = qt.push_arrow(&compact_word_name(q, w), w.source(), w.target());
            arrow_of_basis.insert(i, id);
            labels.push(q.path_display(w));
            lengths.push(w.len());
        }
        let mut entries = Vec::new();
        for &bi in &j {
            for &ai in &j {
                if ap.basis()[bi].source() != ap.basis()[ai].target() {
                    continue;
                }
                for (g, c) in ap.table(bi, ai).entries() {
                    entries.push((arrow_of_basis[&bi], arrow_of_basis[&ai], arrow_of_basis[g], c.clone()));
                }
            }
        }
        RadicalQuiverData::from_lambda(Arc::new(qt), ap.field(), labels, Some(lengths), entries)
            .expect("table entries are parallel")
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Description of the `J`-basis element attached to each arrow.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn word_lengths(&self) -> Option<&[usize]> {
        self.word_lengths.as_deref()
    }

    /// `μ(β ⊗ α)` as `(γ, λ)` pairs.
    pub fn mu(&self, beta: usize, alpha: usize) -> &[(usize, Scalar)] {
        self.lambda.get(&(beta, alpha)).map_or(&[], |v| v.as_slice())
    }

    pub fn lambda_coeff(&self, beta: usize, alpha: usize, gamma: usize) -> Scalar {
        self.mu(beta, alpha)
            .iter()
            .find(|(g, _)| *g == gamma)
            .map_or_else(|| Scalar::zero(self.field), |(_, c)| c.clone())
    }

    /// All `(β, α, λ_{βα,γ})` with nonzero coefficient on `γ`.
    pub fn preimages(&self, gamma: usize) -> &[(usize, usize, Scalar)] {
        &self.by_gamma[gamma]
    }

    pub fn lambda_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        self.lambda
            .iter()
            .flat_map(|((b, a), l)| l.iter().map(move |(g, c)| (*b, *a, *g, c)))
    }

    pub fn mu_is_zero(&self) -> bool {
        self.lambda.is_empty()
    }

    /// Arrow weights making `μ` homogeneous: word lengths when `λ` respects
    /// them, all zero otherwise.
    pub fn weights(&self) -> Vec<i64> {
        if let Some(lengths) = &self.word_lengths {
            let ok = self
                .lambda_entries()
                .all(|(b, a, g, _)| lengths[g] == lengths[b] + lengths[a]);
            if ok {
                return lengths.iter().map(|&l| l as i64).collect();
            }
        }
        vec![0; self.quiver.num_arrows()]
    }

    /// Checks associativity of `μ` on every length-3 path and parallel arrow.
    pub fn check_mu_associativity(&self) -> AssociativityReport {
        let q = &self.quiver;
        let mut violations = Vec::new();
        let mut checked = 0;
        for p in q.paths_of_length(3) {
            checked += 1;
            let [a3, a2, a1] = [p.arrows()[0], p.arrows()[1], p.arrows()[2]];
            let mut left: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (g, c) in self.mu(a3, a2) {
                for (h, d) in self.mu(*g, a1) {
                    let e = left.entry(*h).or_insert_with(|| Scalar::zero(self.field));
                    *e += &(c * d);
                }
            }
            let mut right: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (g, c) in self.mu(a2, a1) {
                for (h, d) in self.mu(a3, *g) {
                    let e = right.entry(*h).or_insert_with(|| Scalar::zero(self.field));
                    *e += &(c * d);
                }
            }
            for a in 0..q.num_arrows() {
                let zero = Scalar::zero(self.field);
                let l = left.get(&a).unwrap_or(&zero);
                let r = right.get(&a).unwrap_or(&zero);
                if l != r {
                    violations.push(AssociativityViolation {
                        path: [
                            q.arrow(a3).name.clone(),
                            q.arrow(a2).name.clone(),
                            q.arrow(a1).name.clone(),
                        ],
                        arrow: q.arrow(a).name.clone(),
                        left: l.to_string(),
                        right: r.to_string(),
                    });
                }
            }
        }
        AssociativityReport {
            paths_checked: checked,
            violations,
        }
    }

    /// Restriction of `Q̃` and `λ` to the full subquiver on `keep` (sorted
    /// vertex ids). Returns the restricted data and the old-to-new arrow map.
    pub fn restrict(&self, keep: &[usize]) -> (RadicalQuiverData, Vec<Option<usize>>) {
        let mut vmap = vec![None; self.quiver.num_vertices()];
        let mut qt = Quiver::empty();
        for &v in keep {
            vmap[v] = Some(qt.add_vertex(self.quiver.vertex_name(v)).expect("distinct"));
        }
        let mut amap = vec![None; self.quiver.num_arrows()];
        let mut labels = Vec::new();
        let mut lengths = Vec::new();
        for (i, a) in self.quiver.arrows().iter().enumerate() {
            if let (Some(s), Some(t)) = (vmap[a.source], vmap[a.target]) {
                amap[i] = Some(qt.push_arrow(&a.name, s, t));
                labels.push(self.labels[i].clone());
                if let Some(l) = &self.word_lengths {
                    lengths.push(l[i]);
                }
            }
        }
        let entries = self
            .lambda_entries()
            .filter_map(|(b, a, g, c)| match (amap[b], amap[a], amap[g]) {
                (Some(b), Some(a), Some(g)) => Some((b, a, g, c.clone())),
                _ => None,
            })
            .collect();
        let data = RadicalQuiverData::from_lambda(
            Arc::new(qt),
            self.field,
            labels,
            self.word_lengths.as_ref().map(|_| lengths),
            entries,
        )
        .expect("restriction of valid data");
        (data, amap)
    }

    /// Arrows grouped by endpoints `(source, target)`, in arrow order.
    pub fn blocks(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut out: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, a) in self.quiver.arrows().iter().enumerate() {
            out.entry((a.source, a.target)).or_default().push(i);
        }
        out
    }

    /// New data for the basis `a'_k = Σ_l T_{kl} a_l` of each block, where
    /// `T` is given per `(source, target)` block (identity when absent).
    pub fn change_basis(&self, transforms: &BTreeMap<(usize, usize), Matrix>) -> Result<RadicalQuiverData, FdError> {
        let n = self.quiver.num_arrows();
        let field = self.field;
        // forward[old] = Σ_k coefficient of new arrow k; new arrow k = Σ T_{kl} old l.
        let mut new_in_old: Vec<SparseVector> = vec![SparseVector::new(); n];
        let mut old_in_new: Vec<SparseVector> = vec![SparseVector::new(); n];
        for (key, arrows) in self.blocks() {
            let m = arrows.len();
            let t = match transforms.get(&key) {
                Some(t) => t.clone(),
                None => Matrix::identity(m, field),
            };
            if t.rows() != m || t.cols() != m {
                return Err(FdError::InvalidData(format!(
                    "change of basis for block {key:?} must be {m}×{m}"
                )));
            }
            let mut eb = EchelonBasis::with_tracking(m, field);
            for k in 0..m {
                eb.insert(t.row(k).clone());
            }
            if eb.rank() != m {
                return Err(FdError::InvalidData(format!(
                    "change of basis for block {key:?} is singular"
                )));
            }
            for k in 0..m {
                new_in_old[arrows[k]] = t.row(k).map_indices(|l| arrows[l]);
                let coords = eb.coordinates(&SparseVector::unit(k, field)).expect("invertible");
                old_in_new[arrows[k]] = coords.map_indices(|l| arrows[l]);
            }
        }
        let mut entries = Vec::new();
        for b in 0..n {
            for a in 0..n {
                if self.quiver.arrow(b).source != self.quiver.arrow(a).target {
                    continue;
                }
                let mut acc = SparseVector::new();
                for (b0, tb) in new_in_old[b].entries() {
                    for (a0, ta) in new_in_old[a].entries() {
                        for (g0, c) in self.mu(*b0, *a0) {
                            acc = acc.axpy(&(&(tb * ta) * c), &old_in_new[*g0]);
                        }
                    }
                }
                for (g, c) in acc.entries() {
                    entries.push((b, a, *g, c.clone()));
                }
            }
        }
        let labels = (0..n)
            .map(|k| {
                let terms: Vec<(String, Scalar)> = new_in_old[k]
                    .entries()
                    .iter()
                    .map(|(l, c)| (format!("[{}]", self.labels[*l]), c.clone()))
                    .collect();
                crate::render::linear_combination(&terms)
            })
            .collect();
        RadicalQuiverData::from_lambda(self.quiver.clone(), field, labels, None, entries)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let q = &self.quiver;
        let repr = RadicalJson {
            field: field_name(self.field),
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .enumerate()
                .map(|(i, a)| ArrowJson {
                    name: a.name.clone(),
                    source: q.vertex_name(a.source).to_string(),
                    target: q.vertex_name(a.target).to_string(),
                    label: Some(self.labels[i].clone()),
                    length: self.word_lengths.as_ref().map(|l| l[i]),
                })
                .collect(),
            lambda: self
                .lambda_entries()
                .map(|(b, a, g, c)| LambdaJson {
                    beta: q.arrow(b).name.clone(),
                    alpha: q.arrow(a).name.clone(),
                    gamma: q.arrow(g).name.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        };
        serde_json::to_value(repr).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<RadicalQuiverData, FdError> {
        let repr: RadicalJson = serde_json::from_str(text).map_err(|e| FdError::InvalidData(e.to_string()))?;
        let field = parse_field(&repr.field)?;
        let mut q = Quiver::empty();
        for v in &repr.vertices {
            q.add_vertex(v).map_err(|e| FdError::InvalidData(e.to_string()))?;
        }
        let mut labels = Vec::new();
        let mut lengths = Vec::new();
        for a in &repr.arrows {
            q.add_arrow(&a.name, &a.source, &a.target)
                .map_err(|e| FdError::InvalidData(e.to_string()))?;
            labels.push(a.label.clone().unwrap_or_else(|| a.name.clone()));
            lengths.push(a.length);
        }
        let lengths: Option<Vec<usize>> = lengths.into_iter().collect();
        let mut entries = Vec::new();
        for l in &repr.lambda {
            let id = |n: &str| q.arrow_id(n).map_err(|e| FdError::InvalidData(e.to_string()));
            let r = Rational::parse(&l.coeff)
                .ok_or_else(|| FdError::InvalidData(format!("bad coefficient `{}`", l.coeff)))?;
            let c = Scalar::from_rational(field, &r).map_err(|e| FdError::InvalidData(e.to_string()))?;
            entries.push((id(&l.beta)?, id(&l.alpha)?, id(&l.gamma)?, c));
        }
        RadicalQuiverData::from_lambda(Arc::new(q), field, labels, lengths, entries)
    }
}

pub(crate) fn field_name(f: Field) -> String {
    f.to_string()
}

/// Free function form of [`RadicalQuiverData::from_presentation`].
pub fn radical_quiver(ap: &AlgebraPresentation) -> RadicalQuiverData {
    RadicalQuiverData::from_presentation(ap)
}

/// Free function form of [`RadicalQuiverData::check_mu_associativity`].
pub fn check_mu_associativity(rq: &RadicalQuiverData) -> AssociativityReport {
    rq.check_mu_associativity()
}
