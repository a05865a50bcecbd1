//! The co-Hochschild complex C^n(H) = H^{⊗n} with the differential
//! ∂(X) = 1⊗X + Σ_{i=1}^n (−1)^i Δ_i(X) + (−1)^{n+1} X⊗1, its cohomology,
//! cup and circle products, the Gerstenhaber bracket, the comparison with the
//! Hochschild complex of the dual algebra, g-primitive cocycles, sub-Hopf
//! filtrations and the alternation homotopy.

use num::Zero;

use crate::bialgebra::{Bialgebra, Check};
use crate::error::{CotwistError, Result};
use crate::lie::cohomology_representatives;
use crate::linalg::{image_basis, kernel_basis, solve, vec_zero, Matrix, Subspace, Vector};
use crate::scalar::{factorial, s_one, s_zero, Scalar};
use crate::tensor::{permutation_sign, permutations, TensorElement};

/// ∂ applied to a single cochain. On C^0 the differential is zero:
/// 1⊗λ and λ⊗1 coincide, so the two boundary terms cancel.
pub fn differential_apply(b: &Bialgebra, x: &TensorElement) -> TensorElement {
    let n = x.degree;
    if n == 0 {
        return TensorElement::zero(b.dim, 1);
    }
    let one = b.vector_as_tensor(&b.unit);
    let mut out = one.tensor(x);
    for i in 1..=n {
        let term = b.apply_delta_at(x, i).expect("slot within degree");
        if i % 2 == 0 {
            out = out.add(&term);
        } else {
            out = out.sub(&term);
        }
    }
    let tail = x.tensor(&one);
    if (n + 1) % 2 == 0 {
        out.add(&tail)
    } else {
        out.sub(&tail)
    }
}

/// Matrix of ∂: H^{⊗n} → H^{⊗n+1} in the canonical tensor basis.
pub fn differential(b: &Bialgebra, n: usize) -> Matrix {
    let rows = b.dim.pow((n + 1) as u32);
    let cols = b.dim.pow(n as u32);
    let mut m = Matrix::zero(rows, cols);
    for col in 0..cols {
        let idx = TensorElement::unflatten(b.dim, n, col);
        let img = differential_apply(b, &TensorElement::basis(b.dim, idx));
        for (i, c) in img.iter() {
            m.set(TensorElement::flat_index(b.dim, i), col, c.clone());
        }
    }
    m
}

#[derive(Debug, Clone)]
pub struct CohomologyResult {
    pub degree: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    pub dim: usize,
    pub representatives: Vec<TensorElement>,
}

/// H^n(H) as a kernel/image quotient with echelon-complement representatives.
pub fn cohomology(b: &Bialgebra, n: usize) -> CohomologyResult {
    assert!(n >= 1);
    let cocycles = kernel_basis(&differential(b, n));
    let coboundaries = image_basis(&differential(b, n - 1));
    let reps = cohomology_representatives(&cocycles, &coboundaries);
    CohomologyResult {
        degree: n,
        cocycle_dim: cocycles.dim(),
        coboundary_dim: coboundaries.dim(),
        dim: reps.len(),
        representatives: reps
            .into_iter()
            .map(|v| TensorElement::from_vector(b.dim, n, &v))
            .collect(),
    }
}

/// Cup product X ∪ Y = X ⊗ Y.
pub fn cup(x: &TensorElement, y: &TensorElement) -> TensorElement {
    x.tensor(y)
}

/// X ∘_i Y = (I^{⊗i−1} ⊗ Δ^{(n−1)} ⊗ I^{⊗m−i})(X) · (1^{i−1} ⊗ Y ⊗ 1^{m−i}),
/// with i 1-based; for n = 0, Δ^{(−1)} = ε contracts the slot.
pub fn circle_i(
    b: &Bialgebra,
    x: &TensorElement,
    y: &TensorElement,
    i: usize,
) -> Result<TensorElement> {
    let m = x.degree;
    let n = y.degree;
    if i == 0 || i > m {
        return Err(CotwistError::PositionOutOfRange { pos: i, max: m });
    }
    if n == 0 {
        let contracted = b.apply_counit_at(x, i)?;
        return Ok(contracted.scale(&y.get(&[])));
    }
    // expand slot i into n slots via the left-nested iterated coproduct
    let mut expanded = x.clone();
    for _ in 0..n - 1 {
        expanded = b.apply_delta_at(&expanded, i)?;
    }
    let mut other = b.unit_tensor(i - 1).tensor(y);
    other = other.tensor(&b.unit_tensor(m - i));
    b.tensor_mult(&expanded, &other)
}

/// X ∘ Y = Σ_{i=1}^m (−1)^{(n−1)(i−1)} X ∘_i Y.
///
/// The sign uses shifted degrees. The flat exponent n·i breaks both the
/// homotopy identity for cup commutativity and the degree-(1,1) reduction of
/// the bracket to the commutator (e.g. in k[ℤ/2]); the shifted exponent
/// satisfies both exactly.
pub fn circle(b: &Bialgebra, x: &TensorElement, y: &TensorElement) -> TensorElement {
    let m = x.degree;
    let n = y.degree;
    let out_degree = m + n - 1; // m ≥ 1 whenever the sum is nonempty
    let mut out = TensorElement::zero(b.dim, if m == 0 { 0 } else { out_degree });
    for i in 1..=m {
        let term = circle_i(b, x, y, i).expect("i within 1..=m");
        if ((n + 1) * (i + 1)) % 2 == 0 {
            out = out.add(&term);
        } else {
            out = out.sub(&term);
        }
    }
    out
}

/// Gerstenhaber bracket [[X, Y]] = X∘Y − (−1)^{(m−1)(n−1)} Y∘X.
///
/// Shifted-degree grading, for the same reason as in `circle`: with it, the
/// bracket of 1-cochains is the algebra commutator and corresponds to the
/// Schouten bracket for enveloping algebras.
pub fn gerstenhaber(b: &Bialgebra, x: &TensorElement, y: &TensorElement) -> TensorElement {
    let m = x.degree;
    let n = y.degree;
    let xy = circle(b, x, y);
    let yx = circle(b, y, x);
    if ((m + 1) * (n + 1)) % 2 == 0 {
        xy.sub(&yx)
    } else {
        xy.add(&yx)
    }
}

#[derive(Debug, Clone)]
pub struct DualCompareReport {
    pub degree: usize,
    pub co_hochschild: Matrix,
    pub dual_hochschild: Matrix,
    pub equal: bool,
}

/// Builds the Hochschild differential of H^∨ with trivial coefficients k,
/// transported through H^{⊗n} ≅ Hom((H^∨)^{⊗n}, k), and compares it with the
/// co-Hochschild differential.
pub fn dual_hochschild_compare(b: &Bialgebra, n: usize) -> DualCompareReport {
    let d = b.dim;
    let rows = d.pow((n + 1) as u32);
    let cols = d.pow(n as u32);
    let mut m = Matrix::zero(rows, cols);
    // augmentation of H^∨ is evaluation at 1_H
    let aug: Vec<Scalar> = b.unit.clone();
    // ξ_i ξ_j = Σ_k <Δ(e_k), ξ_i⊗ξ_j> ξ_k
    let dual_mult = |i: usize, j: usize| -> Vec<(usize, Scalar)> {
        let mut out = Vec::new();
        for k in 0..d {
            let mut c = s_zero();
            for ((p, q), v) in b.comult_of_basis(k) {
                if *p == i && *q == j {
                    c = c + v;
                }
            }
            if !c.is_zero() {
                out.push((k, c));
            }
        }
        out
    };
    if n == 0 {
        // δλ(a) = ε(a)λ − λε(a) = 0 for the trivial bimodule
        return DualCompareReport {
            degree: 0,
            co_hochschild: differential(b, 0),
            dual_hochschild: Matrix::zero(rows, 1),
            equal: differential(b, 0) == Matrix::zero(rows, 1),
        };
    }
    // For a cochain T (column index), δT evaluated at (ξ_{j_1},…,ξ_{j_{n+1}})
    // gives the row coefficients.
    for row in 0..rows {
        let js = TensorElement::unflatten(d, n + 1, row);
        // ε(ξ_{j_1}) T(ξ_{j_2},…)
        let head = aug[js[0]].clone();
        if !head.is_zero() {
            let col = TensorElement::flat_index(d, &js[1..]);
            m.add_to(row, col, &head);
        }
        // Σ (−1)^i T(…, ξ_{j_i}·ξ_{j_{i+1}}, …)
        for i in 1..=n {
            let sign = if i % 2 == 0 { s_one() } else { -s_one() };
            for (k, c) in dual_mult(js[i - 1], js[i]) {
                let mut idx = Vec::with_capacity(n);
                idx.extend_from_slice(&js[..i - 1]);
                idx.push(k);
                idx.extend_from_slice(&js[i + 1..]);
                let col = TensorElement::flat_index(d, &idx);
                m.add_to(row, col, &(&c * &sign));
            }
        }
        // (−1)^{n+1} T(ξ_{j_1},…,ξ_{j_n}) ε(ξ_{j_{n+1}})
        let tail = aug[js[n]].clone();
        if !tail.is_zero() {
            let sign = if (n + 1) % 2 == 0 { s_one() } else { -s_one() };
            let col = TensorElement::flat_index(d, &js[..n]);
            m.add_to(row, col, &(&tail * &sign));
        }
    }
    let co = differential(b, n);
    let equal = co == m;
    DualCompareReport {
        degree: n,
        co_hochschild: co,
        dual_hochschild: m,
        equal,
    }
}

/// F = x₁ ⊗ g₁x₂ ⊗ g₁g₂x₃ ⊗ … ⊗ g₁…g_{m−1}x_m for group-likes gᵢ and
/// xᵢ ∈ Prim_{gᵢ}(H), together with the residual
/// ∂F − (−1)^m F⊗(g₁…g_m − 1), which is identically zero.
///
/// The telescoping expansion of ∂F carries the boundary-term sign (−1)^m
/// (visible already at m = 1, where ∂x = x⊗(1−g)); for even m it coincides
/// with F⊗(g₁…g_m − 1). When g₁…g_m = 1 the tail vanishes and F is a cocycle.
pub fn gprimitive_cocycle(
    b: &Bialgebra,
    gs: &[Vector],
    xs: &[Vector],
) -> Result<(TensorElement, TensorElement)> {
    if gs.len() != xs.len() || gs.is_empty() {
        return Err(CotwistError::Precondition(
            "need equally many group-likes and primitives, at least one".into(),
        ));
    }
    let m = gs.len();
    for (i, g) in gs.iter().enumerate() {
        if !b.is_group_like(g) {
            return Err(CotwistError::Precondition(format!(
                "entry {i} of gs is not group-like"
            )));
        }
    }
    for (i, (g, x)) in gs.iter().zip(xs.iter()).enumerate() {
        // Δ(x) = 1⊗x + x⊗g
        let want = b
            .vector_as_tensor(&b.unit)
            .tensor(&b.vector_as_tensor(x))
            .add(&b.vector_as_tensor(x).tensor(&b.vector_as_tensor(g)));
        if b.delta_vec(x) != want {
            return Err(CotwistError::Precondition(format!(
                "entry {i} of xs is not g-primitive for its group-like"
            )));
        }
    }
    let mut f = TensorElement::scalar(b.dim, s_one());
    let mut prefix = b.unit.clone();
    for (g, x) in gs.iter().zip(xs.iter()) {
        let slot = b.mul_vecs(&prefix, x);
        f = f.tensor(&b.vector_as_tensor(&slot));
        prefix = b.mul_vecs(&prefix, g);
    }
    // tail = (−1)^m F ⊗ (g₁…g_m − 1)
    let mut gm1 = prefix;
    for (i, u) in b.unit.iter().enumerate() {
        gm1[i] = &gm1[i] - u;
    }
    let mut tail = f.tensor(&b.vector_as_tensor(&gm1));
    if m % 2 == 1 {
        tail = tail.scale(&-s_one());
    }
    let residual = differential_apply(b, &f).sub(&tail);
    Ok((f, residual))
}

#[derive(Debug, Clone)]
pub struct FiltrationReport {
    pub level: usize,
    pub degree_bound: usize,
    pub checks: Vec<Check>,
    pub piece_dims: Vec<usize>,
}

impl FiltrationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// The filtration level C^i(H)_m = K^{⊗i} (i ≤ m), K^{⊗m}⊗H^{⊗(i−m)} (i > m)
/// for a sub-bialgebra K, with exact ∂-closedness checks degree by degree.
pub fn filtration_subcomplex(
    b: &Bialgebra,
    sub_basis: &[Vector],
    m: usize,
    degree_bound: usize,
) -> Result<FiltrationReport> {
    let k_span = Subspace::from_vectors(b.dim, sub_basis.to_vec());
    // sub-bialgebra: contains 1, closed under multiplication, Δ(K) ⊆ K⊗K
    if !k_span.contains(&b.unit) {
        return Err(CotwistError::Precondition("subspace does not contain 1".into()));
    }
    for u in &k_span.basis {
        for v in &k_span.basis {
            if !k_span.contains(&b.mul_vecs(u, v)) {
                return Err(CotwistError::Precondition(
                    "subspace not closed under multiplication".into(),
                ));
            }
        }
    }
    let kk = tensor_power_subspace(b.dim, &k_span, 2);
    for u in &k_span.basis {
        if !kk.contains(&b.delta_vec(u).to_vector()) {
            return Err(CotwistError::Precondition(
                "Δ does not map the subspace into its tensor square".into(),
            ));
        }
    }
    let piece = |i: usize| -> Subspace {
        if i <= m {
            tensor_power_subspace(b.dim, &k_span, i)
        } else {
            let head = tensor_power_subspace(b.dim, &k_span, m);
            let full = Subspace::full(b.dim.pow((i - m) as u32));
            tensor_product_subspace(&head, &full)
        }
    };
    let mut checks = Vec::new();
    let mut piece_dims = Vec::new();
    for i in 0..=degree_bound {
        let here = piece(i);
        piece_dims.push(here.dim());
        let above = piece(i + 1);
        let d = differential(b, i);
        let mut witness = None;
        for v in &here.basis {
            if !above.contains(&d.mul_vec(v)) {
                witness = Some(format!("degree {i}"));
                break;
            }
        }
        let name = format!("∂(C^{i}_{m}) ⊆ C^{}_{m}", i + 1);
        checks.push(match witness {
            None => Check::ok(&name),
            Some(w) => Check::fail(&name, w),
        });
    }
    Ok(FiltrationReport {
        level: m,
        degree_bound,
        checks,
        piece_dims,
    })
}

/// Subspace of H^{⊗n} spanned by n-fold tensor products of basis vectors of
/// `s` (ambient dim^n).
pub fn tensor_power_subspace(dim: usize, s: &Subspace, n: usize) -> Subspace {
    let mut acc = Subspace::full(1);
    for _ in 0..n {
        acc = tensor_product_with(dim, &acc, s);
    }
    acc
}

fn tensor_product_with(dim: usize, a: &Subspace, s: &Subspace) -> Subspace {
    let mut vs = Vec::new();
    for u in &a.basis {
        for v in &s.basis {
            vs.push(kron(u, v));
        }
    }
    let _ = dim;
    Subspace::from_vectors(a.ambient_dim * s.ambient_dim, vs)
}

pub fn tensor_product_subspace(a: &Subspace, b: &Subspace) -> Subspace {
    let mut vs = Vec::new();
    for u in &a.basis {
        for v in &b.basis {
            vs.push(kron(u, v));
        }
    }
    Subspace::from_vectors(a.ambient_dim * b.ambient_dim, vs)
}

fn kron(u: &[Scalar], v: &[Scalar]) -> Vector {
    let mut out = vec_zero(u.len() * v.len());
    for (i, x) in u.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in v.iter().enumerate() {
            if !y.is_zero() {
                out[i * v.len() + j] = x * y;
            }
        }
    }
    out
}

/// Alt_n = (1/n!) Σ_σ sgn(σ) σ on H^{⊗n} (slot permutations).
pub fn alternation(dim: usize, n: usize) -> Matrix {
    let size = dim.pow(n as u32);
    let mut m = Matrix::zero(size, size);
    let norm = s_one() / factorial(n);
    for perm in permutations(n) {
        let sgn = Scalar::from(num::BigInt::from(permutation_sign(&perm) as i64)) * &norm;
        for col in 0..size {
            let idx = TensorElement::unflatten(dim, n, col);
            let permuted: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
            m.add_to(TensorElement::flat_index(dim, &permuted), col, &sgn);
        }
    }
    m
}

/// Solves I − Alt = d_prev·A_n + A_{n+1}·d_n for the pair (A_n, A_{n+1}),
/// where d_prev: C^{n−1} → C^n and d_n: C^n → C^{n+1} are differential
/// matrices and Alt acts on C^n. Returns None when infeasible.
pub fn homotopy_witness(d_prev: &Matrix, d_n: &Matrix, alt: &Matrix) -> Option<(Matrix, Matrix)> {
    let a = d_prev.cols; // dim C^{n-1}
    let bdim = d_prev.rows; // dim C^n
    assert_eq!(d_n.cols, bdim);
    assert_eq!((alt.rows, alt.cols), (bdim, bdim));
    let c = d_n.rows; // dim C^{n+1}
    // unknowns: A_n (a×b) then A_{n+1} (b×c), row-major
    let unknowns = a * bdim + bdim * c;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for r in 0..bdim {
        for s in 0..bdim {
            let mut row = vec_zero(unknowns);
            // Σ_k d_prev[r,k]·A_n[k,s]
            for (&k, v) in d_prev.row(r) {
                row[k * bdim + s] = v.clone();
            }
            // Σ_l A_{n+1}[r,l]·d_n[l,s]
            for l in 0..c {
                let v = d_n.get(l, s);
                if !v.is_zero() {
                    row[a * bdim + r * c + l] = &row[a * bdim + r * c + l] + &v;
                }
            }
            let target = if r == s { s_one() } else { s_zero() } - alt.get(r, s);
            rows.push(row);
            rhs.push(target);
        }
    }
    let mut sys = Matrix::from_rows(unknowns, rows);
    // append rhs as extra column for solve()
    let x = {
        let _ = &mut sys;
        solve(&sys, &rhs)?
    };
    let mut a_n = Matrix::zero(a, bdim);
    for i in 0..a {
        for j in 0..bdim {
            a_n.set(i, j, x[i * bdim + j].clone());
        }
    }
    let mut a_n1 = Matrix::zero(bdim, c);
    for i in 0..bdim {
        for j in 0..c {
            a_n1.set(i, j, x[a * bdim + i * c + j].clone());
        }
    }
    Some((a_n, a_n1))
}

/// Alternation homotopy for the full complex of a finite-dimensional
/// bialgebra at degree n.
pub fn alternation_homotopy(b: &Bialgebra, n: usize) -> Option<(Matrix, Matrix)> {
    let d_prev = differential(b, n - 1);
    let d_n = differential(b, n);
    let alt = alternation(b.dim, n);
    homotopy_witness(&d_prev, &d_n, &alt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::lie::{SymCoalgebra, SymComplex};
    use crate::scalar::s_int;

    fn h4_elem(pairs: &[(usize, usize, i64)]) -> TensorElement {
        let mut t = TensorElement::zero(4, 2);
        for (i, j, c) in pairs {
            t.set(vec![*i, *j], s_int(*c));
        }
        t
    }

    #[test]
    fn differential_squares_to_zero() {
        for b in catalog::all_bialgebras() {
            let top = if b.dim > 4 { 2 } else { 3 };
            for n in 0..top {
                let d1 = differential(&b, n);
                let d2 = differential(&b, n + 1);
                assert!(d2.matmul(&d1).is_zero(), "∂∘∂ ≠ 0 at degree {n}");
            }
        }
    }

    #[test]
    fn primitives_are_one_cocycles() {
        let b = catalog::h4_sweedler();
        // ψ = x⊗gx is a 2-cocycle
        let psi = h4_elem(&[(2, 3, 1)]);
        assert!(differential_apply(&b, &psi).is_zero());
    }

    #[test]
    fn h4_cohomology_degree_two() {
        let b = catalog::h4_sweedler();
        let h2 = cohomology(&b, 2);
        assert_eq!(h2.dim, 1);
        // the representative is congruent to ψ modulo coboundaries
        let psi = h4_elem(&[(2, 3, 1)]).to_vector();
        let coboundaries = image_basis(&differential(&b, 1));
        let rep = h2.representatives[0].to_vector();
        let mut diff = vec_zero(16);
        for i in 0..16 {
            diff[i] = &psi[i] - &rep[i];
        }
        assert!(coboundaries.contains(&diff));
    }

    #[test]
    fn group_algebra_cohomology_trivial() {
        let z2 = catalog::group_algebra_z(2);
        for n in 1..=3 {
            assert_eq!(cohomology(&z2, n).dim, 0, "k[Z2] H^{n}");
        }
        let s3 = catalog::group_s3();
        for n in 1..=2 {
            assert_eq!(cohomology(&s3, n).dim, 0, "k[S3] H^{n}");
        }
    }

    #[test]
    fn h1_equals_primitives() {
        for b in catalog::all_bialgebras() {
            assert_eq!(cohomology(&b, 1).dim, b.primitives().dim());
        }
    }

    #[test]
    fn cup_examples_and_leibniz() {
        let b = catalog::h4_sweedler();
        let x = TensorElement::basis(4, vec![2]);
        let gx = TensorElement::basis(4, vec![3]);
        assert_eq!(cup(&x, &gx), h4_elem(&[(2, 3, 1)]));
        // Leibniz: ∂(X⊗Y) = ∂X⊗Y + (−1)^m X⊗∂Y on a basketful of cochains
        let samples1 = vec![
            TensorElement::basis(4, vec![1]),
            TensorElement::basis(4, vec![2]).add(&TensorElement::basis(4, vec![0]).scale(&s_int(3))),
        ];
        let samples2 = vec![
            h4_elem(&[(1, 2, 1), (3, 0, -2)]),
            h4_elem(&[(2, 3, 5)]),
        ];
        let check = |x: &TensorElement, y: &TensorElement| {
            let lhs = differential_apply(&b, &cup(x, y));
            let mut rhs = cup(&differential_apply(&b, x), y);
            let signed = cup(x, &differential_apply(&b, y));
            if x.degree % 2 == 0 {
                rhs = rhs.add(&signed);
            } else {
                rhs = rhs.sub(&signed);
            }
            assert_eq!(lhs, rhs);
        };
        for x in samples1.iter().chain(samples2.iter()) {
            for y in samples1.iter().chain(samples2.iter()) {
                check(x, y);
            }
        }
    }

    #[test]
    fn circle_i_examples() {
        let b = catalog::h4_sweedler();
        let x = TensorElement::basis(4, vec![2]);
        let g = TensorElement::basis(4, vec![1]);
        // x∘₁g = xg = −gx
        let out = circle_i(&b, &x, &g, 1).unwrap();
        assert_eq!(out, TensorElement::basis(4, vec![3]).scale(&s_int(-1)));
        // Y = unit 1-cochain: X∘_iY = X
        let one = b.vector_as_tensor(&b.unit);
        let big = h4_elem(&[(1, 2, 1), (3, 3, 4)]);
        for i in 1..=2 {
            assert_eq!(circle_i(&b, &big, &one, i).unwrap(), big);
        }
        // out-of-range slot
        assert!(circle_i(&b, &x, &g, 2).is_err());
    }

    #[test]
    fn pre_lie_two_case_identity() {
        // (X∘_iY)∘_jZ = (X∘_jZ)∘_{i+p−1}Y for j < i,
        //             = X∘_i(Y∘_{j−i+1}Z) for i ≤ j ≤ i+n−1,
        //             = (X∘_{j−n+1}Z)∘_iY for j ≥ i+n.
        let b = catalog::h4_sweedler();
        let xs = vec![
            h4_elem(&[(1, 2, 1), (0, 3, 2)]),
            h4_elem(&[(2, 3, 1)]),
            h4_elem(&[(1, 1, 3), (2, 0, -1)]),
        ];
        let ys1 = vec![
            TensorElement::basis(4, vec![1]),
            TensorElement::basis(4, vec![2]).add(&TensorElement::basis(4, vec![3]).scale(&s_int(2))),
        ];
        for x in &xs {
            let m = x.degree;
            for (y, n) in ys1.iter().map(|t| (t.clone(), 1)).chain(xs.iter().map(|t| (t.clone(), 2))) {
                for (z, p) in ys1.iter().map(|t| (t.clone(), 1)).chain(xs.iter().map(|t| (t.clone(), 2))) {
                    for i in 1..=m {
                        for j in 1..=(m + n - 1) {
                            let lhs =
                                circle_i(&b, &circle_i(&b, x, &y, i).unwrap(), &z, j).unwrap();
                            let rhs = if j < i {
                                circle_i(&b, &circle_i(&b, x, &z, j).unwrap(), &y, i + p - 1)
                                    .unwrap()
                            } else if j <= i + n - 1 {
                                circle_i(&b, x, &circle_i(&b, &y, &z, j - i + 1).unwrap(), i)
                                    .unwrap()
                            } else {
                                circle_i(&b, &circle_i(&b, x, &z, j - n + 1).unwrap(), &y, i)
                                    .unwrap()
                            };
                            assert_eq!(lhs, rhs, "degrees ({m},{n},{p}), i={i}, j={j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn homotopy_identity_for_cup_commutativity() {
        // Y∪X − (−1)^{nm}X∪Y = ∂(X)∘Y + (−1)^{n−1}X∘∂(Y) − (−1)^{n−1}∂(X∘Y)
        let b = catalog::h4_sweedler();
        let deg1 = vec![
            TensorElement::basis(4, vec![1]),
            TensorElement::basis(4, vec![2]).add(&TensorElement::basis(4, vec![0]).scale(&s_int(2))),
            TensorElement::basis(4, vec![3]).scale(&s_int(-3)),
        ];
        let deg2 = vec![
            h4_elem(&[(1, 2, 1), (0, 3, 2)]),
            h4_elem(&[(2, 3, 1)]),
            h4_elem(&[(3, 1, 1), (2, 2, 7)]),
        ];
        let all: Vec<TensorElement> = deg1.into_iter().chain(deg2).collect();
        for x in &all {
            for y in &all {
                let m = x.degree;
                let n = y.degree;
                let mut lhs = cup(y, x);
                let xy = cup(x, y);
                if (n * m) % 2 == 0 {
                    lhs = lhs.sub(&xy);
                } else {
                    lhs = lhs.add(&xy);
                }
                let mut rhs = circle(&b, &differential_apply(&b, x), y);
                let t2 = circle(&b, x, &differential_apply(&b, y));
                let t3 = differential_apply(&b, &circle(&b, x, y));
                if (n + 1) % 2 == 0 {
                    rhs = rhs.add(&t2).sub(&t3);
                } else {
                    rhs = rhs.sub(&t2).add(&t3);
                }
                assert_eq!(lhs, rhs, "degrees ({m},{n})");
            }
        }
    }

    #[test]
    fn bracket_of_one_cochains_is_commutator() {
        let b = catalog::h4_sweedler();
        for i in 0..4 {
            for j in 0..4 {
                let x = TensorElement::basis(4, vec![i]);
                let y = TensorElement::basis(4, vec![j]);
                let br = gerstenhaber(&b, &x, &y);
                let comm = b.tensor_commutator(&x, &y).unwrap();
                assert_eq!(br, comm);
            }
        }
    }

    #[test]
    fn dual_hochschild_matches() {
        for b in catalog::all_bialgebras() {
            let top = if b.dim > 4 { 1 } else { 2 };
            for n in 1..=top {
                assert!(dual_hochschild_compare(&b, n).equal, "degree {n}");
            }
        }
    }

    #[test]
    fn gprimitive_examples() {
        let b = catalog::h4_sweedler();
        let g = b.basis_vector(1);
        let x = b.basis_vector(2);
        // gs = [g, g]: g·g = 1, so F = x⊗gx is a cocycle
        let (f, residual) = gprimitive_cocycle(&b, &[g.clone(), g.clone()], &[x.clone(), x.clone()])
            .unwrap();
        assert_eq!(f, h4_elem(&[(2, 3, 1)]));
        assert!(residual.is_zero());
        assert!(differential_apply(&b, &f).is_zero());
        // m = 1: ∂F = −F⊗(g−1) = F⊗(1−g) ≠ 0, residual still zero
        let (f, residual) = gprimitive_cocycle(&b, &[g.clone()], &[x.clone()]).unwrap();
        assert!(residual.is_zero());
        assert!(!differential_apply(&b, &f).is_zero());
        // m = 1 with g = 1: genuinely primitive input required; H4 has none,
        // so check the precondition reporting instead
        let err = gprimitive_cocycle(&b, &[b.unit.clone()], &[x]).unwrap_err();
        assert!(matches!(err, CotwistError::Precondition(_)));
        // and a non-group-like g
        let err = gprimitive_cocycle(&b, &[b.basis_vector(2)], &[b.basis_vector(2)]).unwrap_err();
        assert!(matches!(err, CotwistError::Precondition(_)));
    }

    #[test]
    fn filtration_checks() {
        let b = catalog::h4_sweedler();
        // K = span{1, g} ≅ k[Z/2]
        let k = vec![b.basis_vector(0), b.basis_vector(1)];
        let rep = filtration_subcomplex(&b, &k, 1, 2).unwrap();
        assert!(rep.all_pass());
        assert_eq!(rep.piece_dims, vec![1, 2, 8]);
        // m = 0: the whole complex
        let rep = filtration_subcomplex(&b, &k, 0, 2).unwrap();
        assert!(rep.all_pass());
        assert_eq!(rep.piece_dims, vec![1, 4, 16]);
        // K = H: constant filtration
        let full: Vec<Vector> = (0..4).map(|i| b.basis_vector(i)).collect();
        let rep = filtration_subcomplex(&b, &full, 2, 2).unwrap();
        assert!(rep.all_pass());
        // not a subcoalgebra: span{1, x}
        let bad = vec![b.basis_vector(0), b.basis_vector(2)];
        assert!(filtration_subcomplex(&b, &bad, 1, 1).is_err());
    }

    #[test]
    fn alternation_examples() {
        let alt2 = alternation(4, 2);
        // Alt₂(x⊗y) = (x⊗y − y⊗x)/2
        let xy = h4_elem(&[(2, 3, 1)]).to_vector();
        let out = alt2.mul_vec(&xy);
        let mut expect = vec_zero(16);
        expect[TensorElement::flat_index(4, &[2, 3])] = s_frac_half();
        expect[TensorElement::flat_index(4, &[3, 2])] = -s_frac_half();
        assert_eq!(out, expect);
        // symmetric tensor dies
        let xx = h4_elem(&[(2, 2, 1)]).to_vector();
        assert!(alt2.mul_vec(&xx).iter().all(|c| c.is_zero()));
    }

    fn s_frac_half() -> Scalar {
        s_one() / s_int(2)
    }

    #[test]
    fn alternation_homotopy_on_graded_piece() {
        // S(ab₂), degree-2 graded piece at n = 2
        let ab2 = catalog::lie_ab2();
        let sym = SymCoalgebra::new(ab2, 2);
        let cx = SymComplex::new(&sym);
        let below = cx.piece(1, 2);
        let here = cx.piece(2, 2);
        let above = cx.piece(3, 2);
        let d_prev = cx.differential(&below, &here);
        let d_n = cx.differential(&here, &above);
        let alt = cx.alternation(&here);
        let witness = homotopy_witness(&d_prev, &d_n, &alt);
        assert!(witness.is_some());
        let (a_n, a_n1) = witness.unwrap();
        // re-verify the equation
        let lhs = d_prev.matmul(&a_n).add(&a_n1.matmul(&d_n));
        let mut expect = Matrix::identity(here.dim()).sub(&alt);
        assert_eq!(lhs.dense_rows(), expect.dense_rows());
        let _ = &mut expect;
    }

    #[test]
    fn alternation_homotopy_full_bialgebra() {
        // k[Z/2] at n = 1: Alt₁ = I, zero maps suffice
        let z2 = catalog::group_algebra_z(2);
        let w = alternation_homotopy(&z2, 1);
        assert!(w.is_some());
    }
}
