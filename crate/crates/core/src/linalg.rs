//! Deterministic exact linear algebra over the rationals: echelon forms,
//! kernels, solves, quotients with sections. Every other module reduces its
//! constraint systems to calls into this one.

use std::collections::BTreeMap;

use num::Zero;

use crate::scalar::{s_one, s_zero, Scalar};

pub type Vector = Vec<Scalar>;

pub fn vec_zero(n: usize) -> Vector {
    vec![s_zero(); n]
}

pub fn vec_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], c: &Scalar) -> Vector {
    a.iter().map(|x| x * c).collect()
}

/// Sparse matrix with row-major storage; no zero entries are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BTreeMap<usize, Scalar>>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, s_one());
        }
        m
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(r, c) + v;
        self.set(r, c, cur);
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r].get(&c).cloned().unwrap_or_else(s_zero)
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, Scalar> {
        &self.data[r]
    }

    pub fn from_rows(cols: usize, rows: Vec<Vector>) -> Self {
        let mut m = Matrix::zero(rows.len(), cols);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, v) in r.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_cols(ambient: usize, cols: &[Vector]) -> Self {
        let mut m = Matrix::zero(ambient, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), ambient);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vector {
        assert_eq!(x.len(), self.cols);
        let mut out = vec_zero(self.rows);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = s_zero();
            for (&j, v) in row {
                if !x[j].is_zero() {
                    acc += v * &x[j];
                }
            }
            out[i] = acc;
        }
        out
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (&k, a) in row {
                for (&j, b) in &other.data[k] {
                    out.add_to(i, j, &(a * b));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (&j, v) in row {
                out.set(j, i, v.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let mut out = Matrix::zero(self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (&j, v) in row {
                out.set(i, j, v * c);
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (i, row) in other.data.iter().enumerate() {
            for (&j, v) in row {
                out.add_to(i, j, v);
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&-s_one()))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<BTreeMap<usize, Scalar>> = self.data.clone();
        rref_sparse(rows).len()
    }

    pub fn dense_rows(&self) -> Vec<Vector> {
        (0..self.rows)
            .map(|i| {
                let mut r = vec_zero(self.cols);
                for (&j, v) in &self.data[i] {
                    r[j] = v.clone();
                }
                r
            })
            .collect()
    }
}

/// Reduced row echelon form of sparse rows: pivots strictly increasing,
/// each pivot entry 1, pivot columns cleared everywhere else. Zero rows are
/// dropped. The result is canonical for the row span.
fn rref_sparse(rows: Vec<BTreeMap<usize, Scalar>>) -> Vec<BTreeMap<usize, Scalar>> {
    // (pivot column -> row) map keeps pivots sorted.
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
    for mut r in rows {
        // Reduce against existing pivot rows.
        loop {
            let Some((&lead, lv)) = r.iter().next() else {
                break;
            };
            match pivots.get(&lead) {
                Some(p) => {
                    let c = lv.clone();
                    r = row_axpy(&r, p, &-c);
                }
                None => break,
            }
        }
        // Clear remaining entries sitting in existing pivot columns past the
        // lead, so the inserted row is fully reduced.
        let tail: Vec<usize> = r.keys().cloned().collect();
        for k in tail {
            if let Some(p) = pivots.get(&k) {
                if let Some(c) = r.get(&k).cloned() {
                    r = row_axpy(&r, p, &-c);
                }
            }
        }
        if let Some((&lead, lv)) = r.iter().next() {
            let inv = s_one() / lv.clone();
            let norm: BTreeMap<usize, Scalar> = r.iter().map(|(&j, v)| (j, v * &inv)).collect();
            // Clear this column from previously inserted rows.
            let keys: Vec<usize> = pivots.keys().cloned().collect();
            for k in keys {
                let row = pivots.get(&k).unwrap();
                if let Some(c) = row.get(&lead).cloned() {
                    let updated = row_axpy(row, &norm, &-c);
                    pivots.insert(k, updated);
                }
            }
            pivots.insert(lead, norm);
        }
    }
    pivots.into_values().collect()
}

fn row_axpy(
    a: &BTreeMap<usize, Scalar>,
    b: &BTreeMap<usize, Scalar>,
    c: &Scalar,
) -> BTreeMap<usize, Scalar> {
    let mut out = a.clone();
    for (&j, v) in b {
        let nv = out.get(&j).cloned().unwrap_or_else(s_zero) + v * c;
        if nv.is_zero() {
            out.remove(&j);
        } else {
            out.insert(j, nv);
        }
    }
    out
}

fn sparse_to_dense(r: &BTreeMap<usize, Scalar>, n: usize) -> Vector {
    let mut v = vec_zero(n);
    for (&j, x) in r {
        v[j] = x.clone();
    }
    v
}

/// A linear subspace of Q^n, stored as a reduced-row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace::from_vectors(ambient_dim, Matrix::identity(ambient_dim).dense_rows())
    }

    /// Canonicalizes an arbitrary spanning set.
    pub fn from_vectors(ambient_dim: usize, vectors: Vec<Vector>) -> Self {
        let rows = vectors
            .into_iter()
            .map(|v| {
                assert_eq!(v.len(), ambient_dim);
                v.into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect();
        let basis = rref_sparse(rows)
            .into_iter()
            .map(|r| sparse_to_dense(&r, ambient_dim))
            .collect();
        Subspace { ambient_dim, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Pivot column of each basis vector.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).unwrap())
            .collect()
    }

    /// v reduced modulo the subspace: pivot coordinates eliminated.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.ambient_dim);
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(self.pivots().iter()) {
            if !out[p].is_zero() {
                let c = out[p].clone();
                for (j, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        out[j] = &out[j] - &(x * &c);
                    }
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vec_is_zero(&self.reduce(v))
    }

    /// Coordinates of v in the echelon basis, or None if v is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        let mut out = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for (row, &p) in self.basis.iter().zip(self.pivots().iter()) {
            let c = out[p].clone();
            coords.push(c.clone());
            if !c.is_zero() {
                for (j, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        out[j] = &out[j] - &(x * &c);
                    }
                }
            }
        }
        if vec_is_zero(&out) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut vs = self.basis.clone();
        vs.extend(other.basis.clone());
        Subspace::from_vectors(self.ambient_dim, vs)
    }
}

/// Null space of `m`, as a canonical subspace of Q^cols.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let echelon = rref_sparse(m.data.clone());
    let mut pivot_of_col: BTreeMap<usize, usize> = BTreeMap::new();
    for (r, row) in echelon.iter().enumerate() {
        let &p = row.keys().next().unwrap();
        pivot_of_col.insert(p, r);
    }
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if pivot_of_col.contains_key(&free) {
            continue;
        }
        let mut v = vec_zero(m.cols);
        v[free] = s_one();
        for (&p, &r) in &pivot_of_col {
            if let Some(c) = echelon[r].get(&free) {
                v[p] = -c.clone();
            }
        }
        basis.push(v);
    }
    Subspace::from_vectors(m.cols, basis)
}

/// Column span of `m` as a subspace of Q^rows.
pub fn image_basis(m: &Matrix) -> Subspace {
    Subspace::from_vectors(m.rows, m.transpose().dense_rows())
}

/// Some x with m·x = b, or None when the system is infeasible. The decision
/// is exact; the particular solution is the deterministic one with zero free
/// coordinates.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vector> {
    assert_eq!(b.len(), m.rows);
    // Eliminate on rows augmented with the target column at index `cols`.
    let aug_col = m.cols;
    let rows: Vec<BTreeMap<usize, Scalar>> = m
        .data
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            if !b[i].is_zero() {
                r.insert(aug_col, b[i].clone());
            }
            r
        })
        .collect();
    let echelon = rref_sparse(rows);
    let mut x = vec_zero(m.cols);
    for row in &echelon {
        let (&p, _) = row.iter().next().unwrap();
        if p == aug_col {
            return None; // row (0 ... 0 | 1): infeasible
        }
        x[p] = row.get(&aug_col).cloned().unwrap_or_else(s_zero);
    }
    Some(x)
}

/// Pivot-greedy complement of `sub` in Q^ambient, with the idempotent
/// projection onto the complement along `sub`.
pub fn quotient(ambient_dim: usize, sub: &Subspace) -> (Vec<Vector>, Matrix) {
    assert_eq!(sub.ambient_dim, ambient_dim);
    let pivots = sub.pivots();
    let mut complement = Vec::new();
    for j in 0..ambient_dim {
        if !pivots.contains(&j) {
            let mut e = vec_zero(ambient_dim);
            e[j] = s_one();
            complement.push(e);
        }
    }
    let mut project = Matrix::zero(ambient_dim, ambient_dim);
    for j in 0..ambient_dim {
        let mut e = vec_zero(ambient_dim);
        e[j] = s_one();
        let r = sub.reduce(&e);
        for (i, v) in r.into_iter().enumerate() {
            project.set(i, j, v);
        }
    }
    (complement, project)
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Subspace {
    assert_eq!(a.ambient_dim, b.ambient_dim);
    let n = a.ambient_dim;
    // Columns: basis of a, then negated basis of b; kernel rows give the
    // coefficient pairs of common vectors.
    let mut cols: Vec<Vector> = a.basis.clone();
    cols.extend(b.basis.iter().map(|v| vec_scale(v, &-s_one())));
    let m = Matrix::from_cols(n, &cols);
    let ker = kernel_basis(&m);
    let mut vectors = Vec::new();
    for coeffs in &ker.basis {
        let mut v = vec_zero(n);
        for (i, base) in a.basis.iter().enumerate() {
            if !coeffs[i].is_zero() {
                v = vec_add(&v, &vec_scale(base, &coeffs[i]));
            }
        }
        vectors.push(v);
    }
    Subspace::from_vectors(n, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::s_int;

    #[test]
    fn kernel_of_identity_is_zero() {
        let k = kernel_basis(&Matrix::identity(2));
        assert_eq!(k.dim(), 0);
    }

    #[test]
    fn kernel_with_decreasing_leads() {
        // Rows whose leading columns arrive out of order exercise the full
        // reduction of late rows against earlier pivots.
        let mut m = Matrix::zero(3, 4);
        m.set(0, 2, s_int(1));
        m.set(0, 3, s_int(1));
        m.set(1, 0, s_int(1));
        m.set(1, 2, s_int(1));
        m.set(2, 1, s_int(1));
        m.set(2, 2, s_int(2));
        m.set(2, 3, s_int(3));
        let k = kernel_basis(&m);
        assert_eq!(k.dim(), 1);
        for v in &k.basis {
            assert!(vec_is_zero(&m.mul_vec(v)));
        }
    }

    #[test]
    fn kernel_of_sum_row() {
        let m = Matrix::from_rows(2, vec![vec![s_int(1), s_int(1)]]);
        let k = kernel_basis(&m);
        assert_eq!(k.dim(), 1);
        // Canonical echelon form of span{(1,-1)}.
        assert_eq!(k.basis[0], vec![s_int(1), s_int(-1)]);
        assert!(vec_is_zero(&m.mul_vec(&k.basis[0])));
    }

    #[test]
    fn solve_identity_and_infeasible() {
        let b = vec![s_int(3), s_int(-5)];
        assert_eq!(solve(&Matrix::identity(2), &b).unwrap(), b);
        let z = Matrix::zero(2, 2);
        assert!(solve(&z, &b).is_none());
        assert!(solve(&z, &[s_int(0), s_int(0)]).is_some());
    }

    #[test]
    fn quotient_complement_and_projection() {
        let sub = Subspace::from_vectors(3, vec![vec![s_int(1), s_int(0), s_int(0)]]);
        let (comp, proj) = quotient(3, &sub);
        assert_eq!(comp.len(), 2);
        assert_eq!(proj.matmul(&proj), proj);
        assert!(vec_is_zero(&proj.mul_vec(&sub.basis[0])));
        // ambient = sub: empty complement
        let full = Subspace::full(2);
        let (comp2, proj2) = quotient(2, &full);
        assert!(comp2.is_empty());
        assert!(proj2.is_zero());
    }

    #[test]
    fn intersect_axes() {
        let e1 = Subspace::from_vectors(2, vec![vec![s_int(1), s_int(0)]]);
        let e2 = Subspace::from_vectors(2, vec![vec![s_int(0), s_int(1)]]);
        assert_eq!(intersect(&e1, &e2).dim(), 0);
        assert_eq!(intersect(&e1, &e1), e1);
    }

    #[test]
    fn rank_nullity() {
        let m = Matrix::from_rows(
            3,
            vec![
                vec![s_int(1), s_int(2), s_int(3)],
                vec![s_int(2), s_int(4), s_int(6)],
                vec![s_int(0), s_int(1), s_int(1)],
            ],
        );
        assert_eq!(m.rank() + kernel_basis(&m).dim(), m.cols);
    }

    #[test]
    fn subspace_coordinates_roundtrip() {
        let s = Subspace::from_vectors(
            3,
            vec![
                vec![s_int(1), s_int(1), s_int(0)],
                vec![s_int(0), s_int(2), s_int(2)],
            ],
        );
        let v = vec![s_int(3), s_int(5), s_int(2)];
        let c = s.coordinates(&v).unwrap();
        let mut back = vec_zero(3);
        for (ci, bv) in c.iter().zip(&s.basis) {
            back = vec_add(&back, &vec_scale(bv, ci));
        }
        assert_eq!(back, v);
        assert!(s.coordinates(&[s_int(1), s_int(0), s_int(0)]).is_none());
    }
}
