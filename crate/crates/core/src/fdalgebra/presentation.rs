use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::rewriting::RewritingSystem;
use super::FdError;
use crate::foundation::{Field, Scalar, SparseVector};
use crate::quiver::{ParsedQuiver, Path, PathAlgebraElement, Quiver};

/// Computable model of `Λ = KQ/I`: monomial basis and multiplication table.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    quiver: Arc<Quiver>,
    field: Field,
    relations: Vec<PathAlgebraElement>,
    rewriting: RewritingSystem,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    table: Vec<Vec<SparseVector>>,
}

impl AlgebraPresentation {
    pub fn new(
        quiver: &Arc<Quiver>,
        field: Field,
        relations: &[PathAlgebraElement],
        max_len: usize,
    ) -> Result<AlgebraPresentation, FdError> {
        let rewriting = RewritingSystem::complete(quiver, field, relations, max_len)?;
        let mut basis = Vec::new();
        for k in 0..rewriting.nilpotency() {
            basis.extend(rewriting.irreducible_words(k));
        }
        let index: HashMap<Path, usize> = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut table = Vec::with_capacity(basis.len());
        for u in &basis {
            let mut row = Vec::with_capacity(basis.len());
            for v in &basis {
                let entry = match u.mul(v) {
                    None => SparseVector::new(),
                    Some(uv) => {
                        let nf = rewriting.normal_form(&PathAlgebraElement::from_path(quiver, field, uv));
                        SparseVector::from_pairs(nf.terms().iter().map(|(p, c)| (index[p], c.clone())))
                    }
                };
                row.push(entry);
            }
            table.push(row);
        }
        Ok(AlgebraPresentation {
            quiver: quiver.clone(),
            field,
            relations: relations.to_vec(),
            rewriting,
            basis,
            index,
            table,
        })
    }

    pub fn from_parsed(pq: &ParsedQuiver, max_len: usize) -> Result<AlgebraPresentation, FdError> {
        AlgebraPresentation::new(&pq.quiver, pq.field, &pq.relations, max_len)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rewriting(&self) -> &RewritingSystem {
        &self.rewriting
    }

    pub fn relations(&self) -> &[PathAlgebraElement] {
        &self.relations
    }

    /// Irreducible words: vertices first, then by length and arrow order.
    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Indices of the basis words of length at least one.
    pub fn j_basis(&self) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| !self.basis[i].is_trivial()).collect()
    }

    /// Product `basis[u] · basis[v]` in basis coordinates.
    pub fn table(&self, u: usize, v: usize) -> &SparseVector {
        &self.table[u][v]
    }

    /// Product of two vectors in basis coordinates.
    pub fn multiply(&self, x: &SparseVector, y: &SparseVector) -> SparseVector {
        let mut acc = SparseVector::new();
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                acc = acc.axpy(&(a * b), &self.table[*i][*j]);
            }
        }
        acc
    }

    /// The unit `Σ e_i` in basis coordinates.
    pub fn unit(&self) -> SparseVector {
        SparseVector::from_pairs(
            (0..self.quiver.num_vertices()).map(|v| (self.index[&Path::trivial(v)], Scalar::one(self.field))),
        )
    }

    pub fn to_vector(&self, u: &PathAlgebraElement) -> SparseVector {
        let nf = self.rewriting.normal_form(u);
        SparseVector::from_pairs(nf.terms().iter().map(|(p, c)| (self.index[p], c.clone())))
    }

    pub fn to_element(&self, x: &SparseVector) -> PathAlgebraElement {
        PathAlgebraElement::from_terms(
            &self.quiver,
            self.field,
            x.entries().iter().map(|(i, c)| (self.basis[*i].clone(), c.clone())),
        )
    }

    /// Smallest `k` with `J^k = 0`, computed from the table.
    pub fn radical_nilpotency_index(&self) -> usize {
        let j = self.j_basis();
        let mut power: Vec<SparseVector> = j.iter().map(|&i| SparseVector::unit(i, self.field)).collect();
        let mut k = 1;
        while power.iter().any(|v| !v.is_zero()) {
            let mut next = Vec::new();
            for x in &power {
                for &i in &j {
                    let y = self.multiply(x, &SparseVector::unit(i, self.field));
                    if !y.is_zero() {
                        next.push(y);
                    }
                }
            }
            power = next;
            k += 1;
        }
        k
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct RuleJson {
            lead: String,
            tail: String,
        }
        #[derive(Serialize)]
        struct ProductJson {
            left: String,
            right: String,
            product: String,
        }
        let q = &self.quiver;
        let mut products = Vec::new();
        for (i, u) in self.basis.iter().enumerate() {
            for (j, v) in self.basis.iter().enumerate() {
                if !self.table[i][j].is_zero() {
                    products.push(ProductJson {
                        left: q.path_display(u),
                        right: q.path_display(v),
                        product: self.to_element(&self.table[i][j]).to_string(),
                    });
                }
            }
        }
        serde_json::json!({
            "field": self.field.to_string(),
            "quiver": serde_json::to_value(q.as_ref()).expect("serializable"),
            "relations": self.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "rules": self.rewriting.rules().iter().map(|r| RuleJson {
                lead: q.path_display(&r.lead),
                tail: r.tail.to_string(),
            }).collect::<Vec<_>>(),
            "nilpotency": self.rewriting.nilpotency(),
            "basis": self.basis.iter().map(|p| q.path_display(p)).collect::<Vec<_>>(),
            "j_basis": self.j_basis().iter().map(|&i| q.path_display(&self.basis[i])).collect::<Vec<_>>(),
            "table": products,
        })
    }
}
