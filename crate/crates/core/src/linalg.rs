//! Sparse exact linear algebra over a [`Field`].
//!
//! Vectors are sorted `(index, value)` lists without zeros. Reduction always
//! eliminates the highest nonzero index, so a vector's pivot is its last
//! entry and columns are processed in the order given.

use std::collections::HashMap;

use crate::field::Field;

pub type SparseVec<E> = Vec<(usize, E)>;

/// `y + c·x`.
pub fn axpy<F: Field>(f: &F, y: &[(usize, F::Elem)], c: &F::Elem, x: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let take_y = j == x.len() || (i < y.len() && y[i].0 < x[j].0);
        let take_x = i == y.len() || (j < x.len() && x[j].0 < y[i].0);
        if take_y {
            out.push(y[i].clone());
            i += 1;
        } else if take_x {
            let v = f.mul(c, &x[j].1);
            if !f.is_zero(&v) {
                out.push((x[j].0, v));
            }
            j += 1;
        } else {
            let v = f.add(&y[i].1, &f.mul(c, &x[j].1));
            if !f.is_zero(&v) {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(f: &F, c: &F::Elem, x: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    if f.is_zero(c) {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, f.mul(c, v))).collect()
}

/// Build a sparse vector from unsorted entries, summing duplicates.
pub fn collect_sparse<F: Field>(
    f: &F,
    entries: impl IntoIterator<Item = (usize, F::Elem)>,
) -> SparseVec<F::Elem> {
    let mut acc: std::collections::BTreeMap<usize, F::Elem> = std::collections::BTreeMap::new();
    for (i, v) in entries {
        let slot = acc.entry(i).or_insert_with(|| f.zero());
        *slot = f.add(slot, &v);
    }
    acc.into_iter().filter(|(_, v)| !f.is_zero(v)).collect()
}

/// Sparse matrix-vector product; `columns[j]` is column `j`.
pub fn apply<F: Field>(f: &F, columns: &[SparseVec<F::Elem>], x: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    collect_sparse(
        f,
        x.iter()
            .flat_map(|(j, c)| columns[*j].iter().map(move |(i, v)| (*i, f.mul(c, v)))),
    )
}

/// Incremental column echelon form. With tracking on, each stored vector
/// remembers which combination of inserted tags produced it.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    by_pivot: HashMap<usize, usize>,
    rows: Vec<SparseVec<F::Elem>>,
    tags: Option<Vec<SparseVec<F::Elem>>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon {
            field,
            by_pivot: HashMap::new(),
            rows: Vec::new(),
            tags: None,
        }
    }

    pub fn tracked(field: F) -> Self {
        Echelon {
            tags: Some(Vec::new()),
            ..Echelon::new(field)
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce until the leading entry has no pivot; the tag follows along.
    fn reduce_tagged(
        &self,
        mut v: SparseVec<F::Elem>,
        mut tag: Option<SparseVec<F::Elem>>,
    ) -> (SparseVec<F::Elem>, Option<SparseVec<F::Elem>>) {
        let f = &self.field;
        while let Some((lead, c)) = v.last().cloned() {
            let Some(&k) = self.by_pivot.get(&lead) else {
                break;
            };
            let minus_c = f.neg(&c);
            v = axpy(f, &v, &minus_c, &self.rows[k]);
            if let (Some(t), Some(tags)) = (tag.as_mut(), self.tags.as_ref()) {
                *t = axpy(f, t, &minus_c, &tags[k]);
            }
        }
        (v, tag)
    }

    pub fn reduce(&self, v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.reduce_tagged(v, None).0
    }

    pub fn contains(&self, v: &[(usize, F::Elem)]) -> bool {
        self.reduce(v.to_vec()).is_empty()
    }

    fn push(&mut self, v: SparseVec<F::Elem>, tag: Option<SparseVec<F::Elem>>) {
        let f = &self.field;
        let (lead, c) = v.last().cloned().expect("nonzero vector");
        let inv = f.inv(&c);
        self.by_pivot.insert(lead, self.rows.len());
        self.rows.push(scale(f, &inv, &v));
        if let (Some(tags), Some(t)) = (self.tags.as_mut(), tag) {
            tags.push(scale(f, &inv, &t));
        }
    }

    /// Add `v`; returns whether it was independent of what is stored.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> bool {
        let (r, _) = self.reduce_tagged(v, None);
        if r.is_empty() {
            return false;
        }
        let tag = self.tags.as_ref().map(|_| Vec::new());
        self.push(r, tag);
        true
    }

    /// Add `v`; returns the pivot (highest index) it was stored under, or
    /// `None` if it reduced to zero.
    pub fn insert_pivot(&mut self, v: SparseVec<F::Elem>) -> Option<usize> {
        let (r, _) = self.reduce_tagged(v, None);
        let lead = r.last()?.0;
        let tag = self.tags.as_ref().map(|_| Vec::new());
        self.push(r, tag);
        Some(lead)
    }

    /// Add `v` labelled by `tag` (tracked mode). On dependence, returns the
    /// tag combination that reduces `v` to zero, i.e. a kernel vector.
    pub fn insert_tagged(
        &mut self,
        v: SparseVec<F::Elem>,
        tag: SparseVec<F::Elem>,
    ) -> Option<SparseVec<F::Elem>> {
        assert!(self.tags.is_some(), "insert_tagged needs a tracked echelon");
        let (r, t) = self.reduce_tagged(v, Some(tag));
        let t = t.expect("tracked");
        if r.is_empty() {
            return Some(t);
        }
        self.push(r, Some(t));
        None
    }

    /// Coordinates of `v` in terms of the tags, if `v` lies in the span.
    pub fn express(&self, v: SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        assert!(self.tags.is_some(), "express needs a tracked echelon");
        let (r, t) = self.reduce_tagged(v, Some(Vec::new()));
        if !r.is_empty() {
            return None;
        }
        let f = &self.field;
        Some(scale(f, &f.neg(&f.one()), &t.expect("tracked")))
    }
}

/// A fixed basis with coordinate lookup.
#[derive(Debug, Clone)]
pub struct Basis<F: Field> {
    vectors: Vec<SparseVec<F::Elem>>,
    echelon: Echelon<F>,
}

impl<F: Field> Basis<F> {
    /// Panics if the vectors are dependent.
    pub fn new(field: F, vectors: Vec<SparseVec<F::Elem>>) -> Self {
        let mut echelon = Echelon::tracked(field.clone());
        for (j, v) in vectors.iter().enumerate() {
            let dep = echelon.insert_tagged(v.clone(), vec![(j, field.one())]);
            assert!(dep.is_none(), "basis vector {j} is dependent");
        }
        Basis { vectors, echelon }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[SparseVec<F::Elem>] {
        &self.vectors
    }

    pub fn coordinates(&self, v: &[(usize, F::Elem)]) -> Option<SparseVec<F::Elem>> {
        self.echelon.express(v.to_vec())
    }

    pub fn contains(&self, v: &[(usize, F::Elem)]) -> bool {
        self.echelon.contains(v)
    }
}

pub fn matrix_rank<F: Field>(f: &F, columns: &[SparseVec<F::Elem>]) -> usize {
    let mut e = Echelon::new(f.clone());
    columns.iter().filter(|c| e.insert((*c).clone())).count()
}

/// Kernel of the matrix with the given columns, as vectors over column
/// indices.
pub fn kernel_basis<F: Field>(f: &F, columns: &[SparseVec<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    let mut e = Echelon::tracked(f.clone());
    columns
        .iter()
        .enumerate()
        .filter_map(|(j, c)| e.insert_tagged(c.clone(), vec![(j, f.one())]))
        .collect()
}

/// Indices of columns independent of all earlier columns; these columns
/// form a basis of the image.
pub fn image_basis<F: Field>(f: &F, columns: &[SparseVec<F::Elem>]) -> Vec<usize> {
    let mut e = Echelon::new(f.clone());
    (0..columns.len())
        .filter(|&j| e.insert(columns[j].clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn col(f: &Rationals, entries: &[(usize, i64)]) -> SparseVec<num_rational::BigRational> {
        collect_sparse(f, entries.iter().map(|&(i, v)| (i, f.from_i64(v))))
    }

    #[test]
    fn identity_and_zero() {
        let q = Rationals;
        let id: Vec<_> = (0..4).map(|i| col(&q, &[(i, 1)])).collect();
        assert_eq!(matrix_rank(&q, &id), 4);
        assert!(kernel_basis(&q, &id).is_empty());
        let zero = vec![Vec::new(); 3];
        assert_eq!(matrix_rank(&q, &zero), 0);
        assert_eq!(kernel_basis(&q, &zero).len(), 3);
        assert!(image_basis(&q, &zero).is_empty());
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let q = Rationals;
        let cols = vec![
            col(&q, &[(0, 1), (1, 2)]),
            col(&q, &[(0, 2), (1, 4)]),
            col(&q, &[(1, 1), (2, -1)]),
            col(&q, &[(0, 1), (1, 3), (2, -1)]),
        ];
        let ker = kernel_basis(&q, &cols);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            assert!(apply(&q, &cols, k).is_empty());
        }
        assert_eq!(image_basis(&q, &cols), vec![0, 2]);
    }

    #[test]
    fn basis_coordinates() {
        let q = Rationals;
        let b = Basis::new(q, vec![col(&q, &[(0, 1), (1, 1)]), col(&q, &[(1, 1), (2, 1)])]);
        let v = col(&q, &[(0, 2), (1, 5), (2, 3)]);
        let c = b.coordinates(&v).unwrap();
        assert_eq!(c, col(&q, &[(0, 2), (1, 3)]));
        assert!(b.coordinates(&col(&q, &[(0, 1)])).is_none());
    }

    #[test]
    fn characteristic_matters() {
        // [[1,1],[1,-1]] is singular only in characteristic 2.
        let q = Rationals;
        let cols = vec![col(&q, &[(0, 1), (1, 1)]), col(&q, &[(0, 1), (1, -1)])];
        assert_eq!(matrix_rank(&q, &cols), 2);
        let f2 = PrimeField::gf2();
        let cols2 = vec![vec![(0, 1), (1, 1)], vec![(0, 1), (1, 1)]];
        assert_eq!(matrix_rank(&f2, &cols2), 1);
    }
}
