//! Exact linear algebra over ℚ: sparse matrices, rank, kernel bases, linear
//! solving and quotient spaces.
//!
//! Matrices are stored as a sparse map of nonzero entries and converted to a
//! dense form for elimination. Pivoting is deterministic (first nonzero entry
//! in row-major order), so kernels, sections and therefore every downstream
//! report are reproducible across runs.

use crate::error::{AlgError, Result};
use crate::rational::{one, zero, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Sparse matrix over ℚ. Absent entries are zero; stored entries are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i, one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = RatMatrix::new(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.entries.get(&(i, j)).cloned().unwrap_or_else(zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rat) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut m = RatMatrix::new(self.cols, self.rows);
        for (i, j, v) in self.entries() {
            m.set(j, i, v.clone());
        }
        m
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        let mut m = RatMatrix::new(self.rows, self.cols);
        for (i, j, v) in self.entries() {
            m.set(i, j, v * c);
        }
        m
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (i, j, v) in other.entries() {
            m.add_to(i, j, v);
        }
        m
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        self.add(&other.scale(&-one()))
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut m = RatMatrix::new(self.rows, other.cols);
        // sparse row-times-matrix accumulation
        for (i, k, v) in self.entries() {
            for j in 0..other.cols {
                let w = other.get(k, j);
                if !w.is_zero() {
                    m.add_to(i, j, &(v * &w));
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, x.len(), "vector length mismatch");
        let mut out = vec![zero(); self.rows];
        for (i, j, v) in self.entries() {
            out[i] += v * &x[j];
        }
        out
    }

    pub fn trace(&self) -> Rat {
        let mut t = zero();
        let n = self.rows.min(self.cols);
        for i in 0..n {
            t += self.get(i, i);
        }
        t
    }

    /// Exact rank over ℚ.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Reduced row echelon form with deterministic pivoting.
    ///
    /// Returns the dense reduced rows together with the pivot column of each
    /// nonzero row, in order.
    pub fn rref(&self) -> (Vec<Vec<Rat>>, Vec<usize>) {
        let mut a = self.to_dense();
        let rows = self.rows;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            // first row at or below r with a nonzero entry in column c
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].clone();
            for v in a[r].iter_mut() {
                *v = &*v / &inv;
            }
            for i in 0..rows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..cols {
                        let t = &a[r][j] * &f;
                        a[i][j] = &a[i][j] - &t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        a.truncate(r.max(0));
        (a, pivots)
    }

    /// Basis of the right kernel { x : M x = 0 }, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (rr, pivots) = self.rref();
        let piv_of_col: BTreeMap<usize, usize> =
            pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if piv_of_col.contains_key(&f) {
                continue;
            }
            let mut v = vec![zero(); self.cols];
            v[f] = one();
            for (&c, &r) in &piv_of_col {
                v[c] = -rr[r][f].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One exact solution of `M x = b`, or `None` when the system is
    /// inconsistent. The representative is the one with free variables zero.
    pub fn solve(&self, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if b.len() != self.rows {
            return Err(AlgError::DimensionMismatch(format!(
                "solve: matrix has {} rows, vector has {}",
                self.rows,
                b.len()
            )));
        }
        // eliminate on the augmented matrix
        let mut aug = RatMatrix::new(self.rows, self.cols + 1);
        for (i, j, v) in self.entries() {
            aug.set(i, j, v.clone());
        }
        for (i, v) in b.iter().enumerate() {
            aug.set(i, self.cols, v.clone());
        }
        let (rr, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None); // a row reduced to 0 = 1
        }
        let mut x = vec![zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = rr[r][self.cols].clone();
        }
        Ok(Some(x))
    }
}

/// A quotient of ℚ^n by the row span of a set of relation vectors.
///
/// `projection * section` is the identity on the quotient and the projection
/// annihilates every relation row; both properties are established
/// constructively from the reduced echelon form of the relations.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    pub ambient_dim: usize,
    pub relations: Vec<Vec<Rat>>,
    /// quotient dimension
    pub dim: usize,
    /// columns of the reduced relations that carry pivots
    pub pivot_cols: Vec<usize>,
    /// complementary (free) columns; these index the quotient basis
    pub free_cols: Vec<usize>,
    pub projection: RatMatrix,
    pub section: RatMatrix,
    rref_rows: Vec<Vec<Rat>>,
}

impl QuotientSpace {
    pub fn project(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.ambient_dim);
        self.projection.mul_vec(v)
    }

    pub fn section_vec(&self, c: &[Rat]) -> Vec<Rat> {
        assert_eq!(c.len(), self.dim);
        self.section.mul_vec(c)
    }

    pub fn rref_rows(&self) -> &[Vec<Rat>] {
        &self.rref_rows
    }
}

/// Build the quotient of ℚ^`ambient_dim` by the span of `relations`.
pub fn quotient(ambient_dim: usize, relations: &[Vec<Rat>]) -> QuotientSpace {
    for r in relations {
        assert_eq!(r.len(), ambient_dim, "relation row of wrong length");
    }
    let rel = RatMatrix::from_rows(relations.to_vec());
    let rel = if relations.is_empty() { RatMatrix::new(0, ambient_dim) } else { rel };
    let (rr, pivots) = rel.rref();
    let pivot_cols = pivots.clone();
    let free_cols: Vec<usize> =
        (0..ambient_dim).filter(|c| !pivot_cols.contains(c)).collect();
    let dim = free_cols.len();

    // Reduce v by the echelon rows so its pivot coordinates vanish, then read
    // off the free coordinates.
    let mut projection = RatMatrix::new(dim, ambient_dim);
    for (qi, &f) in free_cols.iter().enumerate() {
        projection.set(qi, f, one());
        for (r, &c) in pivot_cols.iter().enumerate() {
            let coeff = -rr[r][f].clone();
            if !coeff.is_zero() {
                // unit vector at pivot c reduces to minus the row's free part
                let _ = c;
            }
            projection.set(qi, c, coeff);
        }
    }
    // canonical representatives: free coordinates as given, pivots zero
    let mut section = RatMatrix::new(ambient_dim, dim);
    for (qi, &f) in free_cols.iter().enumerate() {
        section.set(f, qi, one());
    }

    QuotientSpace {
        ambient_dim,
        relations: relations.to_vec(),
        dim,
        pivot_cols,
        free_cols,
        projection,
        section,
        rref_rows: rr,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn m(rows: Vec<Vec<i64>>) -> RatMatrix {
        RatMatrix::from_rows(
            rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect(),
        )
    }

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(RatMatrix::identity(2).rank(), 2);
        assert_eq!(RatMatrix::new(3, 4).rank(), 0);
    }

    #[test]
    fn rank_dependent_rows() {
        // hand elimination: second row is twice the first
        assert_eq!(m(vec![vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_cases() {
        assert!(RatMatrix::identity(3).kernel_basis().is_empty());
        assert_eq!(RatMatrix::new(2, 2).kernel_basis().len(), 2);
        let k = m(vec![vec![1, 1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        // spans (1, -1): check M v = 0 directly
        let mm = m(vec![vec![1, 1]]);
        assert!(mm.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
        assert_eq!(k[0], vec![int(-1), int(1)]);
    }

    #[test]
    fn solve_cases() {
        let id = RatMatrix::identity(2);
        let b = vec![rat(1, 2), int(3)];
        assert_eq!(id.solve(&b).unwrap().unwrap(), b);

        let wide = m(vec![vec![1, 1]]);
        let x = wide.solve(&[int(3)]).unwrap().unwrap();
        assert_eq!(wide.mul_vec(&x), vec![int(3)]);

        let tall = m(vec![vec![1], vec![1]]);
        assert!(tall.solve(&[int(1), int(2)]).unwrap().is_none());

        assert!(tall.solve(&[int(1)]).is_err());
    }

    #[test]
    fn quotient_cases() {
        let q = quotient(3, &[]);
        assert_eq!(q.dim, 3);
        assert_eq!(q.projection, RatMatrix::identity(3));

        let q = quotient(3, &[vec![int(0), int(0), int(1)]]);
        assert_eq!(q.dim, 2);
        // projection kills the relation row
        assert!(q.project(&[int(0), int(0), int(1)]).iter().all(|x| x.is_zero()));
        // projection . section = id
        let ps = q.projection.mul(&q.section);
        assert_eq!(ps, RatMatrix::identity(2));
    }

    proptest! {
        // rank(M) + dim ker(M) = cols(M), and M x = 0 for kernel vectors.
        #[test]
        fn rank_nullity(rows in 1usize..5, cols in 1usize..5,
                        vals in proptest::collection::vec(-4i64..4, 25)) {
            let mat = RatMatrix::from_rows(
                (0..rows).map(|i| (0..cols).map(|j| int(vals[i * 5 + j])).collect()).collect());
            let k = mat.kernel_basis();
            prop_assert_eq!(mat.rank() + k.len(), cols);
            for v in &k {
                prop_assert!(mat.mul_vec(v).iter().all(|x| x.is_zero()));
            }
        }

        // if solve returns x, then M x = b exactly
        #[test]
        fn solve_residual(rows in 1usize..4, cols in 1usize..4,
                          vals in proptest::collection::vec(-3i64..3, 16),
                          bv in proptest::collection::vec(-3i64..3, 4)) {
            let mat = RatMatrix::from_rows(
                (0..rows).map(|i| (0..cols).map(|j| int(vals[i * 4 + j])).collect()).collect());
            let b: Vec<Rat> = (0..rows).map(|i| int(bv[i])).collect();
            if let Some(x) = mat.solve(&b).unwrap() {
                prop_assert_eq!(mat.mul_vec(&x), b);
            }
        }

        // quotient invariants on random relation sets
        #[test]
        fn quotient_invariants(dim in 1usize..5,
                               vals in proptest::collection::vec(-3i64..3, 15)) {
            let rels: Vec<Vec<Rat>> =
                (0..3).map(|i| (0..dim).map(|j| int(vals[i * 5 + j])).collect()).collect();
            let q = quotient(dim, &rels);
            let rel_rank = RatMatrix::from_rows(rels.clone()).rank();
            prop_assert_eq!(q.dim, dim - rel_rank);
            prop_assert_eq!(q.projection.mul(&q.section), RatMatrix::identity(q.dim));
            for r in &rels {
                prop_assert!(q.project(r).iter().all(|x| x.is_zero()));
            }
        }
    }
}
