use std::collections::{BTreeMap, HashMap};

use super::scalar::{Field, Scalar};
use super::FoundationError;

/// Sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct SparseVector {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVector {
    pub fn new() -> Self {
        SparseVector { entries: Vec::new() }
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(pairs: I) -> Self {
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, v) in pairs {
            match map.get_mut(&i) {
                Some(slot) => *slot += &v,
                None => {
                    map.insert(i, v);
                }
            }
        }
        SparseVector {
            entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    /// Builds from pairs already sorted by strictly increasing index.
    pub fn from_sorted(entries: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVector {
            entries: entries.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn unit(i: usize, field: Field) -> Self {
        SparseVector {
            entries: vec![(i, Scalar::one(field))],
        }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVector {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize, field: Field) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(field); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<&(usize, Scalar)> {
        self.entries.first()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, a: &Scalar) -> SparseVector {
        if a.is_zero() {
            return SparseVector::new();
        }
        SparseVector {
            entries: self.entries.iter().map(|(i, v)| (*i, v * a)).collect(),
        }
    }

    /// `self + a * x`.
    pub fn axpy(&self, a: &Scalar, x: &SparseVector) -> SparseVector {
        if a.is_zero() || x.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + x.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < x.entries.len() {
            let take_left = j >= x.entries.len() || (i < self.entries.len() && self.entries[i].0 < x.entries[j].0);
            let take_right = i >= self.entries.len() || (j < x.entries.len() && x.entries[j].0 < self.entries[i].0);
            if take_left {
                out.push(self.entries[i].clone());
                i += 1;
            } else if take_right {
                out.push((x.entries[j].0, a * &x.entries[j].1));
                j += 1;
            } else {
                let v = &self.entries[i].1 + &(a * &x.entries[j].1);
                if !v.is_zero() {
                    out.push((self.entries[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVector { entries: out }
    }

    pub fn add(&self, x: &SparseVector) -> SparseVector {
        match x.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.axpy(&Scalar::one(v.field()), x),
        }
    }

    pub fn sub(&self, x: &SparseVector) -> SparseVector {
        match x.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.axpy(&-Scalar::one(v.field()), x),
        }
    }

    pub fn dot(&self, x: &SparseVector) -> Option<Scalar> {
        let mut acc: Option<Scalar> = None;
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < x.entries.len() {
            match self.entries[i].0.cmp(&x.entries[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let p = &self.entries[i].1 * &x.entries[j].1;
                    acc = Some(match acc {
                        None => p,
                        Some(a) => a + p,
                    });
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// Re-indexes entries through `f`, summing collisions.
    pub fn map_indices<F: Fn(usize) -> usize>(&self, f: F) -> SparseVector {
        SparseVector::from_pairs(self.entries.iter().map(|(i, v)| (f(*i), v.clone())))
    }
}

/// Sparse matrix over a single field, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<SparseVector>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, field: Field) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![SparseVector::new(); rows],
        }
    }

    pub fn identity(n: usize, field: Field) -> Matrix {
        let mut m = Matrix::zero(n, n, field);
        for i in 0..n {
            m.data[i] = SparseVector::unit(i, field);
        }
        m
    }

    /// Builds from `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, Scalar)>>(
        rows: usize,
        cols: usize,
        field: Field,
        triplets: I,
    ) -> Result<Matrix, FoundationError> {
        let mut per_row: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            if v.field() != field {
                return Err(FoundationError::MixedField(field, v.field()));
            }
            if r >= rows || c >= cols {
                return Err(FoundationError::DimensionMismatch {
                    expected: (rows, cols),
                    found: (r, c),
                });
            }
            per_row[r].push((c, v));
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            data: per_row.into_iter().map(SparseVector::from_pairs).collect(),
        })
    }

    /// Builds from dense rows; every row must have the same length.
    pub fn from_rows(field: Field, rows: &[Vec<Scalar>]) -> Result<Matrix, FoundationError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut triplets = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(FoundationError::DimensionMismatch {
                    expected: (rows.len(), cols),
                    found: (i, row.len()),
                });
            }
            for (j, v) in row.iter().enumerate() {
                triplets.push((i, j, v.clone()));
            }
        }
        Matrix::from_triplets(rows.len(), cols, field, triplets)
    }

    /// Convenience constructor from integer rows.
    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Matrix {
        let rows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_i64(field, x)).collect())
            .collect();
        Matrix::from_rows(field, &rows).expect("rectangular integer rows")
    }

    /// Builds from sparse rows whose indices are all below `cols`.
    pub fn from_sparse_rows(cols: usize, field: Field, data: Vec<SparseVector>) -> Matrix {
        debug_assert!(data.iter().all(|r| r.max_index().is_none_or(|m| m < cols)));
        Matrix {
            rows: data.len(),
            cols,
            field,
            data,
        }
    }

    /// Builds from sparse columns whose indices are all below `rows`.
    pub fn from_sparse_columns(rows: usize, field: Field, columns: &[SparseVector]) -> Matrix {
        let mut per_row: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.entries() {
                per_row[*r].push((c, v.clone()));
            }
        }
        Matrix {
            rows,
            cols: columns.len(),
            field,
            data: per_row.into_iter().map(SparseVector::from_sorted).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn row(&self, i: usize) -> &SparseVector {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[SparseVector] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r].get(c).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.entries().iter().map(move |(c, v)| (r, c.to_owned(), v)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut per_row: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row.entries() {
                per_row[*c].push((r, v.clone()));
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            data: per_row.into_iter().map(SparseVector::from_sorted).collect(),
        }
    }

    /// Columns as sparse vectors.
    pub fn columns(&self) -> Vec<SparseVector> {
        self.transpose().data
    }

    pub fn mul_vec(&self, x: &SparseVector) -> Result<SparseVector, FoundationError> {
        if x.max_index().is_some_and(|m| m >= self.cols) {
            return Err(FoundationError::DimensionMismatch {
                expected: (self.cols, 1),
                found: (x.max_index().unwrap() + 1, 1),
            });
        }
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            if let Some(v) = row.dot(x) {
                if !v.is_zero() {
                    out.push((r, v));
                }
            }
        }
        Ok(SparseVector::from_sorted(out))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, FoundationError> {
        if self.cols != other.rows {
            return Err(FoundationError::DimensionMismatch {
                expected: (self.cols, other.cols),
                found: (other.rows, other.cols),
            });
        }
        if self.field != other.field {
            return Err(FoundationError::MixedField(self.field, other.field));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = SparseVector::new();
                for (k, v) in row.entries() {
                    acc = acc.axpy(v, &other.data[*k]);
                }
                acc
            })
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            field: self.field,
            data,
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, FoundationError> {
        self.axpy(&Scalar::one(self.field), other)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, FoundationError> {
        self.axpy(&-Scalar::one(self.field), other)
    }

    /// `self + a * other`.
    pub fn axpy(&self, a: &Scalar, other: &Matrix) -> Result<Matrix, FoundationError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(FoundationError::DimensionMismatch {
                expected: (self.rows, self.cols),
                found: (other.rows, other.cols),
            });
        }
        if self.field != other.field {
            return Err(FoundationError::MixedField(self.field, other.field));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().zip(&other.data).map(|(x, y)| x.axpy(a, y)).collect(),
        })
    }

    pub fn scale(&self, a: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().map(|r| r.scale(a)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        let mut eb = EchelonBasis::new(self.cols, self.field);
        for row in &self.data {
            eb.insert(row.clone());
        }
        eb.rank()
    }

    /// Basis of the right kernel, one vector per free column of the reduced
    /// row echelon form.
    pub fn kernel_basis(&self) -> Vec<SparseVector> {
        let mut eb = EchelonBasis::new(self.cols, self.field);
        for row in &self.data {
            eb.insert(row.clone());
        }
        let rref = eb.reduced_rows();
        let pivot_cols: Vec<usize> = rref.iter().map(|r| r.leading().unwrap().0).collect();
        let is_pivot: HashMap<usize, usize> = pivot_cols.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        let mut out = Vec::new();
        for f in 0..self.cols {
            if is_pivot.contains_key(&f) {
                continue;
            }
            let mut pairs = vec![(f, Scalar::one(self.field))];
            for (k, row) in rref.iter().enumerate() {
                if let Some(v) = row.get(f) {
                    pairs.push((pivot_cols[k], -v));
                }
            }
            out.push(SparseVector::from_pairs(pairs));
        }
        out
    }

    /// Some `x` with `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &SparseVector) -> Result<Option<SparseVector>, FoundationError> {
        if b.max_index().is_some_and(|m| m >= self.rows) {
            return Err(FoundationError::DimensionMismatch {
                expected: (self.rows, 1),
                found: (b.max_index().unwrap() + 1, 1),
            });
        }
        let mut eb = EchelonBasis::with_tracking(self.rows, self.field);
        for col in self.columns() {
            eb.insert(col);
        }
        Ok(eb.coordinates(b))
    }
}

/// Incrementally maintained row echelon basis of a subspace of `K^dim`.
///
/// Each stored row has leading coefficient 1 at a distinct pivot column.
/// With tracking enabled, every stored row remembers how it is expressed in
/// terms of the vectors passed to [`EchelonBasis::insert`], which gives
/// coordinates of arbitrary vectors in the span.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    field: Field,
    rows: Vec<SparseVector>,
    pivot_row: HashMap<usize, usize>,
    tracking: Option<Vec<SparseVector>>,
    inserted: usize,
}

impl EchelonBasis {
    pub fn new(dim: usize, field: Field) -> Self {
        EchelonBasis {
            dim,
            field,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
            tracking: None,
            inserted: 0,
        }
    }

    pub fn with_tracking(dim: usize, field: Field) -> Self {
        EchelonBasis {
            tracking: Some(Vec::new()),
            ..EchelonBasis::new(dim, field)
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduces `v` against the stored rows; returns the remainder, which has
    /// no entry in any pivot column, and the coefficients used per row.
    fn reduce_with(&self, v: &SparseVector, record: bool) -> (SparseVector, Vec<(usize, Scalar)>) {
        let mut v = v.clone();
        let mut used = Vec::new();
        let mut i = 0;
        while i < v.entries.len() {
            let (c, a) = (v.entries[i].0, v.entries[i].1.clone());
            if let Some(&r) = self.pivot_row.get(&c) {
                v = v.axpy(&-&a, &self.rows[r]);
                if record {
                    used.push((r, a));
                }
            } else {
                i += 1;
            }
        }
        (v, used)
    }

    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        self.reduce_with(v, false).0
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns its new pivot column when `v` was independent.
    pub fn insert(&mut self, v: SparseVector) -> Option<usize> {
        let id = self.inserted;
        self.inserted += 1;
        let tracked = self.tracking.is_some();
        let (rem, used) = self.reduce_with(&v, tracked);
        let (lead_col, lead) = match rem.leading() {
            None => return None,
            Some((c, a)) => (*c, a.clone()),
        };
        let inv = lead.inv().expect("nonzero leading entry");
        let row = rem.scale(&inv);
        if let Some(track) = self.tracking.as_mut() {
            let mut combo = SparseVector::unit(id, self.field);
            for (r, a) in &used {
                combo = combo.axpy(&-a, &track[*r]);
            }
            track.push(combo.scale(&inv));
        }
        self.pivot_row.insert(lead_col, self.rows.len());
        self.rows.push(row);
        Some(lead_col)
    }

    /// Coordinates of `v` with respect to the inserted vectors (requires
    /// tracking); `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVector) -> Option<SparseVector> {
        let track = self.tracking.as_ref().expect("coordinates require tracking");
        let (rem, used) = self.reduce_with(v, true);
        if !rem.is_zero() {
            return None;
        }
        let mut out = SparseVector::new();
        for (r, a) in &used {
            out = out.axpy(a, &track[*r]);
        }
        Some(out)
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = self.pivot_row.keys().copied().collect();
        cols.sort_unstable();
        cols
    }

    /// Rows in reduced row echelon form, sorted by pivot column.
    pub fn reduced_rows(&self) -> Vec<SparseVector> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r].leading().unwrap().0));
        let mut done: HashMap<usize, SparseVector> = HashMap::new();
        for r in order {
            let row = &self.rows[r];
            let lead = row.leading().unwrap().0;
            let mut v = row.clone();
            let mut i = 1;
            while i < v.entries.len() {
                let (c, a) = (v.entries[i].0, v.entries[i].1.clone());
                if let Some(red) = done.get(&c) {
                    v = v.axpy(&-&a, red);
                } else {
                    i += 1;
                }
            }
            done.insert(lead, v);
        }
        let mut out: Vec<(usize, SparseVector)> = done.into_iter().collect();
        out.sort_by_key(|(c, _)| *c);
        out.into_iter().map(|(_, v)| v).collect()
    }
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &Matrix) -> Vec<SparseVector> {
    m.kernel_basis()
}

pub fn solve(m: &Matrix, b: &SparseVector) -> Result<Option<SparseVector>, FoundationError> {
    m.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::rational::Rational;
    use proptest::prelude::*;

    const Q: Field = Field::Rational;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::zero(0, 0, Q)), 0);
        assert_eq!(rank(&Matrix::identity(3, Q)), 3);
        assert_eq!(rank(&Matrix::from_i64_rows(Q, &[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::identity(2, Q)).is_empty());
        assert_eq!(kernel_basis(&Matrix::zero(2, 2, Q)).len(), 2);
        let f2 = Field::Prime(2);
        let k = kernel_basis(&Matrix::from_i64_rows(f2, &[&[1, 1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].to_dense(2, f2), vec![Scalar::one(f2), Scalar::one(f2)]);
    }

    #[test]
    fn solve_examples() {
        let b = SparseVector::from_dense(&[Scalar::from_i64(Q, 3), Scalar::from_i64(Q, -2)]);
        assert_eq!(solve(&Matrix::identity(2, Q), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(&Matrix::zero(2, 2, Q), &b).unwrap(), None);
        let x = solve(&Matrix::from_i64_rows(Q, &[&[2]]), &SparseVector::unit(0, Q))
            .unwrap()
            .unwrap();
        assert_eq!(x.get(0).unwrap(), &Scalar::Q(Rational::parse("1/2").unwrap()));
        assert!(solve(&Matrix::identity(1, Q), &SparseVector::unit(3, Q)).is_err());
    }

    #[test]
    fn mixed_field_construction_fails() {
        let r = Matrix::from_triplets(1, 1, Q, vec![(0, 0, Scalar::one(Field::Prime(5)))]);
        assert!(matches!(r, Err(FoundationError::MixedField(..))));
    }

    #[test]
    fn coordinates_track_insertions() {
        let mut eb = EchelonBasis::with_tracking(3, Q);
        let v1 = SparseVector::from_dense(&[Scalar::one(Q), Scalar::one(Q), Scalar::zero(Q)]);
        let v2 = SparseVector::from_dense(&[Scalar::zero(Q), Scalar::one(Q), Scalar::one(Q)]);
        eb.insert(v1.clone());
        eb.insert(v2.clone());
        let target = v1.scale(&Scalar::from_i64(Q, 2)).sub(&v2);
        let c = eb.coordinates(&target).unwrap();
        assert_eq!(c.get(0), Some(&Scalar::from_i64(Q, 2)));
        assert_eq!(c.get(1), Some(&Scalar::from_i64(Q, -1)));
        assert!(eb.coordinates(&SparseVector::unit(0, Q)).is_none());
    }

    fn arb_matrix(field: Field) -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(-2i64..3, r * c).prop_map(move |vals| {
                Matrix::from_triplets(
                    r,
                    c,
                    field,
                    vals.iter()
                        .enumerate()
                        .map(|(k, &x)| (k / c, k % c, Scalar::from_i64(field, x))),
                )
                .unwrap()
            })
        })
    }

    fn check_kernel(m: &Matrix) {
        let k = m.kernel_basis();
        assert_eq!(k.len() + m.rank(), m.cols());
        for v in &k {
            assert!(m.mul_vec(v).unwrap().is_zero());
        }
        let kernel_matrix = Matrix::from_sparse_rows(m.cols(), m.field(), k.clone());
        assert_eq!(kernel_matrix.rank(), k.len());
    }

    proptest! {
        #[test]
        fn kernel_is_exact_over_q(m in arb_matrix(Q)) {
            check_kernel(&m);
            prop_assert!(m.rank() <= m.rows().min(m.cols()));
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn kernel_is_exact_over_f3(m in arb_matrix(Field::Prime(3))) {
            check_kernel(&m);
        }

        #[test]
        fn solve_satisfies_system(m in arb_matrix(Q), seed in proptest::collection::vec(-3i64..4, 6)) {
            let x0 = SparseVector::from_pairs(
                (0..m.cols()).map(|i| (i, Scalar::from_i64(Q, seed[i]))),
            );
            let b = m.mul_vec(&x0).unwrap();
            let x = m.solve(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
        }
    }
}
