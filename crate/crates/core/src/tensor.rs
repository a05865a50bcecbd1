//! Sparse elements of H^{⊗n} over a fixed basis of H. Houses twists φ, ψ,
//! F, R-matrices and co-Hochschild cochains.

use std::collections::BTreeMap;

use num::Zero;

use crate::linalg::{vec_zero, Vector};
use crate::scalar::{s_one, s_zero, Scalar};

/// Element of H^{⊗degree} for an H of dimension `dim`. Degree 0 elements are
/// scalars (the single key is the empty index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    pub dim: usize,
    pub degree: usize,
    coords: BTreeMap<Vec<usize>, Scalar>,
}

impl TensorElement {
    pub fn zero(dim: usize, degree: usize) -> Self {
        TensorElement {
            dim,
            degree,
            coords: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, value: Scalar) -> Self {
        let mut t = TensorElement::zero(dim, 0);
        t.set(vec![], value);
        t
    }

    pub fn basis(dim: usize, index: Vec<usize>) -> Self {
        let mut t = TensorElement::zero(dim, index.len());
        t.set(index, s_one());
        t
    }

    pub fn set(&mut self, index: Vec<usize>, value: Scalar) {
        assert_eq!(index.len(), self.degree);
        assert!(index.iter().all(|&i| i < self.dim));
        if value.is_zero() {
            self.coords.remove(&index);
        } else {
            self.coords.insert(index, value);
        }
    }

    pub fn add_to(&mut self, index: &[usize], value: &Scalar) {
        if value.is_zero() {
            return;
        }
        let cur = self.get(index) + value;
        self.set(index.to_vec(), cur);
    }

    pub fn get(&self, index: &[usize]) -> Scalar {
        self.coords.get(index).cloned().unwrap_or_else(s_zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.coords.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.coords.len()
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree));
        let mut out = self.clone();
        for (idx, v) in other.iter() {
            out.add_to(idx, v);
        }
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        self.add(&other.scale(&-s_one()))
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        let mut out = TensorElement::zero(self.dim, self.degree);
        if c.is_zero() {
            return out;
        }
        for (idx, v) in self.iter() {
            out.set(idx.clone(), v * c);
        }
        out
    }

    /// Concatenation u ⊗ v in H^{⊗(m+n)}.
    pub fn tensor(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.dim, other.dim);
        let mut out = TensorElement::zero(self.dim, self.degree + other.degree);
        for (a, x) in self.iter() {
            for (b, y) in other.iter() {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                out.add_to(&idx, &(x * y));
            }
        }
        out
    }

    /// Applies a permutation of tensor slots: slot i of the result is slot
    /// perm[i] of the input.
    pub fn permute(&self, perm: &[usize]) -> TensorElement {
        assert_eq!(perm.len(), self.degree);
        let mut out = TensorElement::zero(self.dim, self.degree);
        for (idx, v) in self.iter() {
            let new_idx: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
            out.add_to(&new_idx, v);
        }
        out
    }

    /// Swaps the two slots of a degree-2 tensor (φ ↦ φ₂₁).
    pub fn flip(&self) -> TensorElement {
        assert_eq!(self.degree, 2);
        self.permute(&[1, 0])
    }

    /// Row-major flat index into the canonical basis of H^{⊗n}.
    pub fn flat_index(dim: usize, index: &[usize]) -> usize {
        index.iter().fold(0, |acc, &i| acc * dim + i)
    }

    pub fn unflatten(dim: usize, degree: usize, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; degree];
        for k in (0..degree).rev() {
            idx[k] = flat % dim;
            flat /= dim;
        }
        idx
    }

    pub fn to_vector(&self) -> Vector {
        let n = self.dim.pow(self.degree as u32);
        let mut v = vec_zero(n);
        for (idx, val) in self.iter() {
            v[Self::flat_index(self.dim, idx)] = val.clone();
        }
        v
    }

    pub fn from_vector(dim: usize, degree: usize, v: &[Scalar]) -> TensorElement {
        assert_eq!(v.len(), dim.pow(degree as u32));
        let mut t = TensorElement::zero(dim, degree);
        for (flat, val) in v.iter().enumerate() {
            if !val.is_zero() {
                t.set(Self::unflatten(dim, degree, flat), val.clone());
            }
        }
        t
    }
}

/// All permutations of 0..n in a deterministic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap_permute(&mut cur, n, &mut out);
    out
}

fn heap_permute(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap_permute(cur, k - 1, out);
        if k % 2 == 0 {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
}

pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut sign = 1;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}
