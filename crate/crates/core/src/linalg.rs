//! Exact dense linear algebra over ℚ: incremental echelon spans and ranks.

use num_traits::{One, Zero};

use crate::rational::Q;

/// A subspace of `ℚ^dim` kept in reduced row-echelon form.
#[derive(Clone, Debug)]
pub struct Span {
    dim: usize,
    /// Rows normalized so the pivot entry is 1, sorted by pivot.
    rows: Vec<(usize, Vec<Q>)>,
}

impl Span {
    pub fn new(dim: usize) -> Self {
        Span { dim, rows: Vec::new() }
    }

    pub fn from_vectors<'a>(dim: usize, vs: impl IntoIterator<Item = &'a Vec<Q>>) -> Self {
        let mut s = Span::new(dim);
        for v in vs {
            s.insert(v.clone());
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after eliminating against the pivots.
    pub fn reduce(&self, mut v: Vec<Q>) -> Vec<Q> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row).skip(*p) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v.to_vec()).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<Q>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Q::one() / &v[p];
        for x in v.iter_mut().skip(p) {
            *x *= &inv;
        }
        // keep the echelon form reduced
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v).skip(p) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }

    /// Whether some vector of the span has a nonzero entry in column `col`.
    pub fn reaches(&self, col: usize) -> bool {
        self.rows.iter().any(|(_, row)| !row[col].is_zero())
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }
}

/// Rank of the matrix whose rows are `rows`, each of length `cols`.
pub fn rank(cols: usize, rows: &[Vec<Q>]) -> usize {
    Span::from_vectors(cols, rows).rank()
}

/// Rank of the linear map sending basis vector `j` to `images[j]`.
pub fn rank_of_images(target_dim: usize, images: &[Vec<Q>]) -> usize {
    rank(target_dim, images)
}
