//! Finite-dimensional bialgebras given by structure constants, their axiom
//! verification and the distinguished subspaces (primitives, g-primitives,
//! centre, adjoint invariants) that the twisted-derivation theory consumes.

use num::Zero;

use crate::error::{CotwistError, Result};
use crate::linalg::{kernel_basis, solve, vec_zero, intersect, Matrix, Subspace, Vector};
use crate::scalar::{s_one, s_zero, Scalar};
use crate::tensor::TensorElement;

/// A bialgebra by structure constants:
/// e_i·e_j = Σ_k mult[i][j][k] e_k and Δ(e_i) = Σ_{j,k} comult[i][j][k] e_j⊗e_k.
#[derive(Debug, Clone)]
pub struct Bialgebra {
    pub dim: usize,
    pub basis_names: Vec<String>,
    mult: Vec<Vec<Vec<(usize, Scalar)>>>,
    pub unit: Vector,
    comult: Vec<Vec<((usize, usize), Scalar)>>,
    pub counit: Vector,
    pub antipode: Option<Matrix>,
}

/// One named axiom verdict, with a witness on failure.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn ok(name: &str) -> Self {
        Check {
            name: name.to_string(),
            pass: true,
            witness: None,
        }
    }
    pub fn fail(name: &str, witness: String) -> Self {
        Check {
            name: name.to_string(),
            pass: false,
            witness: Some(witness),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }
    pub fn record(&mut self, name: &str, pass: bool, witness: impl FnOnce() -> String) {
        if pass {
            self.push(Check::ok(name));
        } else {
            self.push(Check::fail(name, witness()));
        }
    }
}

impl Bialgebra {
    /// Builds a bialgebra from sparse structure-constant triples. Indices are
    /// validated; the axioms are checked separately by [`Bialgebra::verify`].
    pub fn from_parts(
        dim: usize,
        basis_names: Vec<String>,
        mult_triples: &[(usize, usize, usize, Scalar)],
        unit: Vector,
        comult_triples: &[(usize, usize, usize, Scalar)],
        counit: Vector,
        antipode: Option<Matrix>,
    ) -> Result<Self> {
        if basis_names.len() != dim || unit.len() != dim || counit.len() != dim {
            return Err(CotwistError::Format("vector length != dim".into()));
        }
        let mut mult = vec![vec![Vec::new(); dim]; dim];
        for (i, j, k, v) in mult_triples {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(CotwistError::Format(format!(
                    "mult index ({i},{j},{k}) out of range"
                )));
            }
            if !v.is_zero() {
                mult[*i][*j].push((*k, v.clone()));
            }
        }
        let mut comult = vec![Vec::new(); dim];
        for (i, j, k, v) in comult_triples {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(CotwistError::Format(format!(
                    "comult index ({i},{j},{k}) out of range"
                )));
            }
            if !v.is_zero() {
                comult[*i].push(((*j, *k), v.clone()));
            }
        }
        if let Some(s) = &antipode {
            if s.rows != dim || s.cols != dim {
                return Err(CotwistError::Format("antipode dimension mismatch".into()));
            }
        }
        Ok(Bialgebra {
            dim,
            basis_names,
            mult,
            unit,
            comult,
            counit,
            antipode,
        })
    }

    pub fn mult_triples(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, v) in &self.mult[i][j] {
                    out.push((i, j, *k, v.clone()));
                }
            }
        }
        out
    }

    pub fn comult_of_basis(&self, i: usize) -> &[((usize, usize), Scalar)] {
        &self.comult[i]
    }

    pub fn comult_triples(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for ((j, k), v) in &self.comult[i] {
                out.push((i, *j, *k, v.clone()));
            }
        }
        out
    }

    pub fn product_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.mult[i][j]
    }

    pub fn comult_basis(&self, i: usize) -> &[((usize, usize), Scalar)] {
        &self.comult[i]
    }

    /// Product of two coordinate vectors in H.
    pub fn mul_vecs(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let mut out = vec_zero(self.dim);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let c = x * y;
                for (k, v) in &self.mult[i][j] {
                    out[*k] = &out[*k] + &(v * &c);
                }
            }
        }
        out
    }

    pub fn counit_of(&self, x: &[Scalar]) -> Scalar {
        x.iter()
            .zip(&self.counit)
            .map(|(a, e)| a * e)
            .fold(s_zero(), |acc, t| acc + t)
    }

    /// Δ of a coordinate vector, as a degree-2 tensor.
    pub fn delta_vec(&self, x: &[Scalar]) -> TensorElement {
        let mut out = TensorElement::zero(self.dim, 2);
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for ((j, k), v) in &self.comult[i] {
                out.add_to(&[*j, *k], &(v * c));
            }
        }
        out
    }

    /// The unit of H^{⊗n}: 1⊗…⊗1.
    pub fn unit_tensor(&self, n: usize) -> TensorElement {
        let mut t = TensorElement::scalar(self.dim, s_one());
        let one = self.vector_as_tensor(&self.unit);
        for _ in 0..n {
            t = t.tensor(&one);
        }
        t
    }

    pub fn vector_as_tensor(&self, x: &[Scalar]) -> TensorElement {
        let mut t = TensorElement::zero(self.dim, 1);
        for (i, v) in x.iter().enumerate() {
            if !v.is_zero() {
                t.set(vec![i], v.clone());
            }
        }
        t
    }

    pub fn tensor_as_vector(&self, t: &TensorElement) -> Vector {
        assert_eq!(t.degree, 1);
        let mut v = vec_zero(self.dim);
        for (idx, c) in t.iter() {
            v[idx[0]] = c.clone();
        }
        v
    }

    /// Componentwise product in the n-fold tensor-product algebra H^{⊗n}.
    pub fn tensor_mult(&self, u: &TensorElement, v: &TensorElement) -> Result<TensorElement> {
        if u.degree != v.degree {
            return Err(CotwistError::DegreeMismatch(u.degree, v.degree));
        }
        let n = u.degree;
        let mut out = TensorElement::zero(self.dim, n);
        for (a, x) in u.iter() {
            for (b, y) in v.iter() {
                // Product of basis tensors slot by slot.
                let mut terms: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), x * y)];
                for s in 0..n {
                    let mut next = Vec::new();
                    for (idx, c) in &terms {
                        for (k, w) in &self.mult[a[s]][b[s]] {
                            let mut ni = idx.clone();
                            ni.push(*k);
                            next.push((ni, c * w));
                        }
                    }
                    terms = next;
                    if terms.is_empty() {
                        break;
                    }
                }
                for (idx, c) in terms {
                    out.add_to(&idx, &c);
                }
            }
        }
        Ok(out)
    }

    pub fn tensor_commutator(&self, u: &TensorElement, v: &TensorElement) -> Result<TensorElement> {
        Ok(self.tensor_mult(u, v)?.sub(&self.tensor_mult(v, u)?))
    }

    /// Applies Δ in slot `pos` (1-based), identity elsewhere: degree n → n+1.
    pub fn apply_delta_at(&self, u: &TensorElement, pos: usize) -> Result<TensorElement> {
        if pos == 0 || pos > u.degree {
            return Err(CotwistError::PositionOutOfRange {
                pos,
                max: u.degree,
            });
        }
        let s = pos - 1;
        let mut out = TensorElement::zero(self.dim, u.degree + 1);
        for (idx, c) in u.iter() {
            for ((j, k), v) in &self.comult[idx[s]] {
                let mut ni = Vec::with_capacity(u.degree + 1);
                ni.extend_from_slice(&idx[..s]);
                ni.push(*j);
                ni.push(*k);
                ni.extend_from_slice(&idx[s + 1..]);
                out.add_to(&ni, &(c * v));
            }
        }
        Ok(out)
    }

    /// Applies ε in slot `pos` (1-based): degree n → n−1.
    pub fn apply_counit_at(&self, u: &TensorElement, pos: usize) -> Result<TensorElement> {
        if pos == 0 || pos > u.degree {
            return Err(CotwistError::PositionOutOfRange {
                pos,
                max: u.degree,
            });
        }
        let s = pos - 1;
        let mut out = TensorElement::zero(self.dim, u.degree - 1);
        for (idx, c) in u.iter() {
            let e = &self.counit[idx[s]];
            if e.is_zero() {
                continue;
            }
            let mut ni = Vec::with_capacity(u.degree - 1);
            ni.extend_from_slice(&idx[..s]);
            ni.extend_from_slice(&idx[s + 1..]);
            out.add_to(&ni, &(c * e));
        }
        Ok(out)
    }

    /// Applies a linear endomorphism of H in slot `pos` (1-based).
    pub fn apply_endo_at(&self, u: &TensorElement, m: &Matrix, pos: usize) -> TensorElement {
        assert!(pos >= 1 && pos <= u.degree);
        let s = pos - 1;
        let mut out = TensorElement::zero(self.dim, u.degree);
        for (idx, c) in u.iter() {
            for (i, row) in (0..self.dim).map(|r| (r, m.get(r, idx[s]))) {
                if row.is_zero() {
                    continue;
                }
                let mut ni = idx.clone();
                ni[s] = i;
                out.add_to(&ni, &(c * &row));
            }
        }
        out
    }

    /// Σ_s (I⊗…⊗m⊗…⊗I)(u) over all slots: the derivation extension of m.
    pub fn apply_endo_derivation(&self, u: &TensorElement, m: &Matrix) -> TensorElement {
        let mut out = TensorElement::zero(self.dim, u.degree);
        for pos in 1..=u.degree {
            out = out.add(&self.apply_endo_at(u, m, pos));
        }
        out
    }

    /// Left-nested iterated coproduct Δ^{(n−1)}: H → H^{⊗n}. Δ^{(0)} = I.
    pub fn iterated_delta(&self, x: &[Scalar], n: usize) -> TensorElement {
        assert!(n >= 1);
        let mut t = self.vector_as_tensor(x);
        while t.degree < n {
            t = self.apply_delta_at(&t, 1).expect("slot 1 always valid");
        }
        t
    }

    pub fn is_group_like(&self, g: &[Scalar]) -> bool {
        let gt = self.vector_as_tensor(g);
        let d = self.delta_vec(g);
        d == gt.tensor(&gt) && self.counit_of(g) == s_one()
    }

    /// Full axiom verification; each axiom reports pass/fail with a witness
    /// basis tuple on failure.
    pub fn verify(&self) -> VerifyReport {
        let mut rep = VerifyReport::default();
        let n = self.dim;

        // associativity
        let mut assoc_witness = None;
        'assoc: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut ei = vec_zero(n);
                    ei[i] = s_one();
                    let mut ej = vec_zero(n);
                    ej[j] = s_one();
                    let mut ek = vec_zero(n);
                    ek[k] = s_one();
                    let lhs = self.mul_vecs(&self.mul_vecs(&ei, &ej), &ek);
                    let rhs = self.mul_vecs(&ei, &self.mul_vecs(&ej, &ek));
                    if lhs != rhs {
                        assoc_witness = Some((i, j, k));
                        break 'assoc;
                    }
                }
            }
        }
        rep.record("mult associative", assoc_witness.is_none(), || {
            let (i, j, k) = assoc_witness.unwrap();
            format!(
                "({},{},{})",
                self.basis_names[i], self.basis_names[j], self.basis_names[k]
            )
        });

        // unit axioms
        let mut unit_witness = None;
        for i in 0..n {
            let mut ei = vec_zero(n);
            ei[i] = s_one();
            if self.mul_vecs(&self.unit, &ei) != ei || self.mul_vecs(&ei, &self.unit) != ei {
                unit_witness = Some(i);
                break;
            }
        }
        rep.record("unit axioms", unit_witness.is_none(), || {
            self.basis_names[unit_witness.unwrap()].clone()
        });

        // coassociativity
        let mut coassoc_witness = None;
        for i in 0..n {
            let mut ei = vec_zero(n);
            ei[i] = s_one();
            let d = self.delta_vec(&ei);
            let l = self.apply_delta_at(&d, 1).unwrap();
            let r = self.apply_delta_at(&d, 2).unwrap();
            if l != r {
                coassoc_witness = Some(i);
                break;
            }
        }
        rep.record("comult coassociative", coassoc_witness.is_none(), || {
            self.basis_names[coassoc_witness.unwrap()].clone()
        });

        // counit axioms
        let mut counit_witness = None;
        for i in 0..n {
            let mut ei = vec_zero(n);
            ei[i] = s_one();
            let d = self.delta_vec(&ei);
            let l = self.apply_counit_at(&d, 1).unwrap();
            let r = self.apply_counit_at(&d, 2).unwrap();
            let eit = self.vector_as_tensor(&ei);
            if l != eit || r != eit {
                counit_witness = Some(i);
                break;
            }
        }
        rep.record("counit axioms", counit_witness.is_none(), || {
            self.basis_names[counit_witness.unwrap()].clone()
        });

        // Δ multiplicative and Δ(1) = 1⊗1
        let unit_ok = {
            let d1 = self.delta_vec(&self.unit);
            let ones = self.vector_as_tensor(&self.unit);
            d1 == ones.tensor(&ones)
        };
        let mut dmul_witness = None;
        'dmul: for i in 0..n {
            for j in 0..n {
                let mut ei = vec_zero(n);
                ei[i] = s_one();
                let mut ej = vec_zero(n);
                ej[j] = s_one();
                let lhs = self.delta_vec(&self.mul_vecs(&ei, &ej));
                let rhs = self
                    .tensor_mult(&self.delta_vec(&ei), &self.delta_vec(&ej))
                    .unwrap();
                if lhs != rhs {
                    dmul_witness = Some((i, j));
                    break 'dmul;
                }
            }
        }
        rep.record(
            "Δ algebra homomorphism",
            unit_ok && dmul_witness.is_none(),
            || match dmul_witness {
                Some((i, j)) => format!("({},{})", self.basis_names[i], self.basis_names[j]),
                None => "Δ(1) ≠ 1⊗1".to_string(),
            },
        );

        // ε multiplicative and ε(1) = 1
        let eps_unit_ok = self.counit_of(&self.unit) == s_one();
        let mut emul_witness = None;
        'emul: for i in 0..n {
            for j in 0..n {
                let mut ei = vec_zero(n);
                ei[i] = s_one();
                let mut ej = vec_zero(n);
                ej[j] = s_one();
                let lhs = self.counit_of(&self.mul_vecs(&ei, &ej));
                let rhs = &self.counit[i] * &self.counit[j];
                if lhs != rhs {
                    emul_witness = Some((i, j));
                    break 'emul;
                }
            }
        }
        rep.record(
            "ε multiplicative",
            eps_unit_ok && emul_witness.is_none(),
            || match emul_witness {
                Some((i, j)) => format!("({},{})", self.basis_names[i], self.basis_names[j]),
                None => "ε(1) ≠ 1".to_string(),
            },
        );

        // antipode identities, when present
        if let Some(s) = self.antipode.clone() {
            let mut anti_witness = None;
            for i in 0..n {
                let mut ei = vec_zero(n);
                ei[i] = s_one();
                let d = self.delta_vec(&ei);
                let left = self.contract_mult(&self.apply_endo_at(&d, &s, 1));
                let right = self.contract_mult(&self.apply_endo_at(&d, &s, 2));
                let target: Vector = self
                    .unit
                    .iter()
                    .map(|u| u * &self.counit[i])
                    .collect();
                if left != target || right != target {
                    anti_witness = Some(i);
                    break;
                }
            }
            rep.record("antipode identities", anti_witness.is_none(), || {
                self.basis_names[anti_witness.unwrap()].clone()
            });
        }

        rep
    }

    /// m: H⊗H → H applied to a degree-2 tensor.
    pub fn contract_mult(&self, t: &TensorElement) -> Vector {
        assert_eq!(t.degree, 2);
        let mut out = vec_zero(self.dim);
        for (idx, c) in t.iter() {
            for (k, v) in &self.mult[idx[0]][idx[1]] {
                out[*k] = &out[*k] + &(v * c);
            }
        }
        out
    }

    /// Solution space of Δ(x) = x⊗1 + 1⊗x.
    pub fn primitives(&self) -> Subspace {
        self.relative_primitives(&self.unit.clone())
    }

    /// Solution space of Δ(x) = 1⊗x + x⊗g for a verified group-like g.
    pub fn g_primitives(&self, g: &[Scalar]) -> Result<Subspace> {
        if !self.is_group_like(g) {
            let d = self.delta_vec(g);
            let gt = self.vector_as_tensor(g);
            let residual = d.sub(&gt.tensor(&gt));
            return Err(CotwistError::Precondition(format!(
                "element is not group-like; Δ(g) − g⊗g has {} nonzero coordinates, ε(g) = {}",
                residual.support_len(),
                crate::scalar::format_scalar(&self.counit_of(g))
            )));
        }
        Ok(self.relative_primitives(g))
    }

    // Solves Δ(x) = 1⊗x + x⊗g (g = 1 gives ordinary primitives; Δ(x) is
    // symmetric under the two unit conventions when g = 1).
    fn relative_primitives(&self, g: &[Scalar]) -> Subspace {
        let n = self.dim;
        let mut m = Matrix::zero(n * n, n);
        for i in 0..n {
            for ((j, k), v) in &self.comult[i] {
                m.add_to(j * n + k, i, v);
            }
            // minus 1⊗x: slot (u_j, x_k) with x = e_i ⇒ row (j, i)
            for (j, u) in self.unit.iter().enumerate() {
                if !u.is_zero() {
                    m.add_to(j * n + i, i, &-u.clone());
                }
            }
            // minus x⊗g
            for (k, gv) in g.iter().enumerate() {
                if !gv.is_zero() {
                    m.add_to(i * n + k, i, &-gv.clone());
                }
            }
        }
        kernel_basis(&m)
    }

    /// Solution space of [x, e_j] = 0 for every basis element.
    pub fn centre(&self) -> Subspace {
        let n = self.dim;
        let mut m = Matrix::zero(n * n, n);
        for i in 0..n {
            for j in 0..n {
                for (k, v) in &self.mult[i][j] {
                    m.add_to(j * n + k, i, v);
                }
                for (k, v) in &self.mult[j][i] {
                    m.add_to(j * n + k, i, &-v.clone());
                }
            }
        }
        kernel_basis(&m)
    }

    /// ker ε as a subspace of H.
    pub fn augmentation_ideal(&self) -> Subspace {
        let m = Matrix::from_rows(self.dim, vec![self.counit.clone()]);
        kernel_basis(&m)
    }

    /// Z(H) ∩ ker ε.
    pub fn centre_eps(&self) -> Subspace {
        intersect(&self.centre(), &self.augmentation_ideal())
    }

    /// The dual bialgebra: multiplication is the transpose of Δ and vice versa.
    pub fn dual_algebra(&self) -> Bialgebra {
        let mut mult_triples = Vec::new();
        for (i, j, k, v) in self.comult_triples() {
            // e^j · e^k = Σ_i c[i][j][k] e^i
            mult_triples.push((j, k, i, v));
        }
        let mut comult_triples = Vec::new();
        for (i, j, k, v) in self.mult_triples() {
            // Δ∨(e^k) = Σ m[i][j][k] e^i⊗e^j
            comult_triples.push((k, i, j, v));
        }
        let names = self
            .basis_names
            .iter()
            .map(|s| format!("{s}^"))
            .collect();
        let antipode = self.antipode.as_ref().map(|s| s.transpose());
        Bialgebra::from_parts(
            self.dim,
            names,
            &mult_triples,
            self.counit.clone(),
            &comult_triples,
            self.unit.clone(),
            antipode,
        )
        .expect("dual structure constants are well-formed")
    }

    /// Subspace of X ∈ H^{⊗n} with [X, Δ^{(n−1)}(e_i)] = 0 for all i.
    pub fn adjoint_invariants(&self, n: usize) -> Subspace {
        assert!(n >= 1);
        let ambient = self.dim.pow(n as u32);
        let mut rows: Vec<Vector> = Vec::new();
        for i in 0..self.dim {
            let mut ei = vec_zero(self.dim);
            ei[i] = s_one();
            let d = self.iterated_delta(&ei, n);
            // Column c of the map X ↦ [X, d]
            let mut m = Matrix::zero(ambient, ambient);
            for c in 0..ambient {
                let basis = TensorElement::basis(
                    self.dim,
                    TensorElement::unflatten(self.dim, n, c),
                );
                let comm = self.tensor_commutator(&basis, &d).unwrap();
                for (idx, v) in comm.iter() {
                    m.add_to(TensorElement::flat_index(self.dim, idx), c, v);
                }
            }
            rows.extend(m.dense_rows());
        }
        let stacked = Matrix::from_rows(ambient, rows);
        kernel_basis(&stacked)
    }

    /// Inverse of an element of H^{⊗n} (two-sided, certified by exact solve).
    pub fn tensor_inverse(&self, f: &TensorElement) -> Result<TensorElement> {
        let n = f.degree;
        let ambient = self.dim.pow(n as u32);
        // Matrix of left multiplication by f.
        let mut m = Matrix::zero(ambient, ambient);
        for c in 0..ambient {
            let basis = TensorElement::basis(self.dim, TensorElement::unflatten(self.dim, n, c));
            let prod = self.tensor_mult(f, &basis)?;
            for (idx, v) in prod.iter() {
                m.add_to(TensorElement::flat_index(self.dim, idx), c, v);
            }
        }
        let one = self.unit_tensor(n).to_vector();
        let g = solve(&m, &one)
            .ok_or_else(|| CotwistError::NotInvertible("no right inverse".into()))?;
        let g = TensorElement::from_vector(self.dim, n, &g);
        // certify the other side
        if self.tensor_mult(&g, f)? != self.unit_tensor(n) {
            return Err(CotwistError::NotInvertible("one-sided inverse only".into()));
        }
        Ok(g)
    }

    /// Inverse of a linear endomorphism of H.
    pub fn endo_inverse(&self, f: &Matrix) -> Result<Matrix> {
        let n = self.dim;
        let mut cols = Vec::new();
        for j in 0..n {
            let mut e = vec_zero(n);
            e[j] = s_one();
            let x = solve(f, &e)
                .ok_or_else(|| CotwistError::NotInvertible("singular endomorphism".into()))?;
            cols.push(x);
        }
        let inv = Matrix::from_cols(n, &cols);
        // Certify both sides.
        let id = Matrix::identity(n);
        if f.matmul(&inv) != id || inv.matmul(f) != id {
            return Err(CotwistError::NotInvertible("singular endomorphism".into()));
        }
        Ok(inv)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec_zero(self.dim);
        v[i] = s_one();
        v
    }
}

pub fn tensor_subspace_contains(sub: &Subspace, t: &TensorElement) -> bool {
    sub.contains(&t.to_vector())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::vec_is_zero;
    use crate::scalar::s_int;

    #[test]
    fn h4_passes_all_axioms() {
        let b = catalog::h4_sweedler();
        let rep = b.verify();
        assert!(rep.all_pass(), "{:?}", rep.checks);
    }

    #[test]
    fn group_z2_passes() {
        assert!(catalog::group_algebra_z(2).verify().all_pass());
        assert!(catalog::group_algebra_z(3).verify().all_pass());
        assert!(catalog::group_s3().verify().all_pass());
    }

    #[test]
    fn broken_counit_reports_witness() {
        let b = catalog::h4_sweedler();
        let mut counit = b.counit.clone();
        counit[1] = s_int(0); // ε(g) = 0
        let broken = Bialgebra::from_parts(
            b.dim,
            b.basis_names.clone(),
            &b.mult_triples(),
            b.unit.clone(),
            &b.comult_triples(),
            counit,
            None,
        )
        .unwrap();
        let rep = broken.verify();
        let eps = rep
            .checks
            .iter()
            .find(|c| c.name == "ε multiplicative")
            .unwrap();
        assert!(!eps.pass);
        assert_eq!(eps.witness.as_deref(), Some("(g,g)"));
    }

    #[test]
    fn h4_subspaces() {
        let b = catalog::h4_sweedler();
        assert_eq!(b.primitives().dim(), 0);
        let centre = b.centre();
        assert_eq!(centre.dim(), 1);
        assert!(centre.contains(&b.unit));
        assert_eq!(b.centre_eps().dim(), 0);
        // g-primitives: span{x, 1-g}
        let g = b.basis_vector(1);
        let gp = b.g_primitives(&g).unwrap();
        assert_eq!(gp.dim(), 2);
        assert!(gp.contains(&b.basis_vector(2)));
        let mut one_minus_g = b.basis_vector(0);
        one_minus_g[1] = s_int(-1);
        assert!(gp.contains(&one_minus_g));
    }

    #[test]
    fn z2_subspaces() {
        let b = catalog::group_algebra_z(2);
        assert_eq!(b.primitives().dim(), 0);
        assert_eq!(b.centre().dim(), 2); // commutative
        let g = b.basis_vector(1);
        let gp = b.g_primitives(&g).unwrap();
        assert_eq!(gp.dim(), 1);
        let mut one_minus_g = b.basis_vector(0);
        one_minus_g[1] = s_int(-1);
        assert!(gp.contains(&one_minus_g));
    }

    #[test]
    fn g_primitive_precondition() {
        let b = catalog::h4_sweedler();
        let x = b.basis_vector(2);
        assert!(b.g_primitives(&x).is_err());
        // g = 1 collapses to primitives
        let gp = b.g_primitives(&b.unit.clone()).unwrap();
        assert_eq!(gp, b.primitives());
    }

    #[test]
    fn dual_is_involution_and_valid() {
        let b = catalog::h4_sweedler();
        let d = b.dual_algebra();
        assert!(d.verify().all_pass());
        let dd = d.dual_algebra();
        assert_eq!(dd.mult_triples(), b.mult_triples());
        assert_eq!(dd.comult_triples(), b.comult_triples());

        // k[Z2]^∨ is the function algebra on two points: 2 orthogonal idempotents
        let z2d = catalog::group_algebra_z(2).dual_algebra();
        assert!(z2d.verify().all_pass());
        // e^0, e^1 idempotent basis up to change of basis: the algebra is
        // commutative and semisimple; check x² is diagonalizable concretely:
        // (e^0)² = e^0? mult of dual: e^j e^k = Σ_i c[i][j][k] e^i with
        // Δ(g^i) = g^i⊗g^i ⇒ e^j e^k = δ_{jk} e^j.
        let e0 = z2d.basis_vector(0);
        let e1 = z2d.basis_vector(1);
        assert_eq!(z2d.mul_vecs(&e0, &e0), e0);
        assert_eq!(z2d.mul_vecs(&e1, &e1), e1);
        assert!(vec_is_zero(&z2d.mul_vecs(&e0, &e1)));
    }

    #[test]
    fn adjoint_invariants_basic() {
        let b = catalog::h4_sweedler();
        // contains ψ = x⊗gx
        let psi = TensorElement::basis(4, vec![2, 3]);
        let inv2 = b.adjoint_invariants(2);
        assert!(tensor_subspace_contains(&inv2, &psi));
        // n = 1 is the centre
        assert_eq!(b.adjoint_invariants(1), b.centre());

        let z2 = catalog::group_algebra_z(2);
        assert_eq!(z2.adjoint_invariants(2).dim(), 4); // everything commutes
    }

    #[test]
    fn tensor_mult_examples() {
        let b = catalog::h4_sweedler();
        // (x⊗gx)·(x⊗gx) = 0
        let psi = TensorElement::basis(4, vec![2, 3]);
        assert!(b.tensor_mult(&psi, &psi).unwrap().is_zero());
        // u·(1⊗1) = u
        let u = b.delta_vec(&b.basis_vector(2));
        assert_eq!(b.tensor_mult(&u, &b.unit_tensor(2)).unwrap(), u);
        // Δ(g)·Δ(x) = g⊗gx + gx⊗1
        let dg = b.delta_vec(&b.basis_vector(1));
        let dx = b.delta_vec(&b.basis_vector(2));
        let prod = b.tensor_mult(&dg, &dx).unwrap();
        let mut expect = TensorElement::zero(4, 2);
        expect.set(vec![1, 3], s_int(1));
        expect.set(vec![3, 0], s_int(1));
        assert_eq!(prod, expect);
    }

    #[test]
    fn delta_at_examples() {
        let b = catalog::h4_sweedler();
        // Δ(x) = 1⊗x + x⊗g
        let x = b.vector_as_tensor(&b.basis_vector(2));
        let dx = b.apply_delta_at(&x, 1).unwrap();
        let mut expect = TensorElement::zero(4, 2);
        expect.set(vec![0, 2], s_int(1));
        expect.set(vec![2, 1], s_int(1));
        assert_eq!(dx, expect);
        // (I⊗Δ)(x⊗gx) = x⊗g⊗gx + x⊗gx⊗1
        let t = TensorElement::basis(4, vec![2, 3]);
        let dt = b.apply_delta_at(&t, 2).unwrap();
        let mut expect = TensorElement::zero(4, 3);
        expect.set(vec![2, 1, 3], s_int(1));
        expect.set(vec![2, 3, 0], s_int(1));
        assert_eq!(dt, expect);
        // out of range
        assert!(b.apply_delta_at(&t, 3).is_err());
    }

    #[test]
    fn primitives_inside_augmentation_ideal() {
        for b in catalog::all_bialgebras() {
            let prim = b.primitives();
            let aug = b.augmentation_ideal();
            for v in &prim.basis {
                assert!(aug.contains(v));
            }
        }
    }
}
