//! Finite chain complexes over a field and ranks of induced maps.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{apply, kernel_basis, matrix_rank, Echelon, SparseVec};

/// Chain groups `C_0..=C_top` given by dimension, with `∂_q` stored as
/// columns in the coordinates of `C_{q-1}`.
#[derive(Debug, Clone)]
pub struct ChainComplex<F: Field> {
    field: F,
    dims: Vec<usize>,
    boundaries: Vec<Vec<SparseVec<F::Elem>>>,
    ranks: Vec<OnceLock<usize>>,
}

impl<F: Field> ChainComplex<F> {
    /// `boundaries[q]` must have `dims[q]` columns; `boundaries[0]` columns
    /// are ignored (and must be empty).
    pub fn new(field: F, dims: Vec<usize>, boundaries: Vec<Vec<SparseVec<F::Elem>>>) -> Result<Self> {
        if dims.len() != boundaries.len() {
            return Err(Error::BadParams("one boundary list per degree".into()));
        }
        for (q, cols) in boundaries.iter().enumerate() {
            if cols.len() != dims[q] {
                return Err(Error::BadParams(format!(
                    "degree {q}: {} boundary columns for dimension {}",
                    cols.len(),
                    dims[q]
                )));
            }
            let below = if q == 0 { 0 } else { dims[q - 1] };
            if cols.iter().flatten().any(|(i, _)| *i >= below) {
                return Err(Error::BadParams(format!("degree {q}: boundary index out of range")));
            }
        }
        let ranks = (0..dims.len()).map(|_| OnceLock::new()).collect();
        Ok(ChainComplex {
            field,
            dims,
            boundaries,
            ranks,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Number of stored degrees (`top + 1`).
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn dim(&self, q: usize) -> usize {
        self.dims.get(q).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundary(&self, q: usize) -> &[SparseVec<F::Elem>] {
        self.boundaries.get(q).map_or(&[], Vec::as_slice)
    }

    /// Rank of `∂_q`; zero for `q = 0` and beyond the top.
    pub fn boundary_rank(&self, q: usize) -> usize {
        if q == 0 || q >= self.dims.len() {
            return 0;
        }
        *self.ranks[q].get_or_init(|| matrix_rank(&self.field, &self.boundaries[q]))
    }

    /// `dim C_q − rank ∂_q − rank ∂_{q+1}`; in the top degree this is the
    /// Betti number of the truncated complex.
    pub fn betti(&self, q: usize) -> usize {
        self.dim(q) - self.boundary_rank(q) - self.boundary_rank(q + 1)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..self.dims.len()).map(|q| self.betti(q)).collect()
    }

    /// `∂_{q-1} ∘ ∂_q = 0` for every stored pair.
    pub fn is_chain_complex(&self) -> bool {
        (2..self.dims.len()).all(|q| {
            self.boundaries[q]
                .iter()
                .all(|c| apply(&self.field, &self.boundaries[q - 1], c).is_empty())
        })
    }

    /// Alternating sums of chain dimensions and of Betti numbers.
    pub fn euler_characteristics(&self) -> (i64, i64) {
        let alt = |v: &[usize]| {
            v.iter()
                .enumerate()
                .map(|(q, &d)| if q % 2 == 0 { d as i64 } else { -(d as i64) })
                .sum()
        };
        (alt(&self.dims), alt(&self.betti_numbers()))
    }

    /// A basis of `Z_q = ker ∂_q`.
    pub fn cycles(&self, q: usize) -> Vec<SparseVec<F::Elem>> {
        if q == 0 || q >= self.dims.len() {
            let one = self.field.one();
            return (0..self.dim(q)).map(|i| vec![(i, one.clone())]).collect();
        }
        kernel_basis(&self.field, &self.boundaries[q])
    }

    /// A spanning set of `B_q = im ∂_{q+1}`.
    pub fn boundary_span(&self, q: usize) -> &[SparseVec<F::Elem>] {
        self.boundary(q + 1)
    }
}

/// Rank of `H_q(f)` for a chain map `f: K → L` given on vectors:
/// `rank(B_L ∪ f(Z_K)) − rank(B_L)`.
pub fn induced_rank<F, M>(source: &ChainComplex<F>, target: &ChainComplex<F>, q: usize, map: M) -> Result<usize>
where
    F: Field,
    M: Fn(&SparseVec<F::Elem>) -> SparseVec<F::Elem>,
{
    if source.field() != target.field() {
        return Err(Error::FieldMismatch(source.field().name(), target.field().name()));
    }
    let mut e = Echelon::new(target.field().clone());
    for b in target.boundary_span(q) {
        e.insert(b.clone());
    }
    Ok(source
        .cycles(q)
        .iter()
        .filter(|z| e.insert(map(z)))
        .count())
}

/// Check `∂ f = f ∂` on every basis vector of degrees `1..len`, with `f_q`
/// given as column lists.
pub fn commutes<F: Field>(
    source: &ChainComplex<F>,
    target: &ChainComplex<F>,
    maps: &[Vec<SparseVec<F::Elem>>],
) -> bool {
    let f = source.field();
    (1..source.len().min(target.len()).min(maps.len())).all(|q| {
        (0..source.dim(q)).all(|j| {
            let lhs = apply(f, target.boundary(q), &maps[q][j]);
            let rhs = apply(f, &maps[q - 1], &source.boundary(q)[j]);
            lhs == rhs
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    /// Boundary of a triangle: three vertices, three edges.
    fn circle<F: Field>(f: F) -> ChainComplex<F> {
        let e = |a: usize, b: usize| vec![(a, f.from_i64(-1)), (b, f.one())];
        ChainComplex::new(f.clone(), vec![3, 3], vec![vec![vec![]; 3], vec![e(0, 1), e(1, 2), e(0, 2)]]).unwrap()
    }

    #[test]
    fn circle_homology() {
        let c = circle(Rationals);
        assert_eq!(c.betti_numbers(), vec![1, 1]);
        assert!(c.is_chain_complex());
        assert_eq!(c.euler_characteristics(), (0, 0));
        let c2 = circle(PrimeField::gf2());
        assert_eq!(c2.betti_numbers(), vec![1, 1]);
    }

    #[test]
    fn identity_induces_full_rank() {
        let c = circle(Rationals);
        for q in 0..2 {
            assert_eq!(induced_rank(&c, &c, q, |v| v.clone()).unwrap(), c.betti(q));
            assert_eq!(induced_rank(&c, &c, q, |_| vec![]).unwrap(), 0);
        }
    }

    #[test]
    fn shape_errors() {
        assert!(ChainComplex::new(Rationals, vec![1], vec![]).is_err());
        assert!(ChainComplex::new(Rationals, vec![1, 1], vec![vec![vec![]], vec![vec![(3, Rationals.one())]]]).is_err());
    }
}
