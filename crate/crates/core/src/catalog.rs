//! Built-in algebras: the Sweedler Hopf algebra, small group algebras and
//! the small Lie algebras used throughout the test suite and the CLI.

use crate::bialgebra::Bialgebra;
use crate::lie::LieAlgebra;
use crate::linalg::{vec_zero, Matrix};
use crate::scalar::{s_int, s_one, Scalar};

/// Sweedler's 4-dimensional Hopf algebra: basis {1, g, x, gx} with
/// g² = 1, x² = 0, gx + xg = 0, Δ(g) = g⊗g, Δ(x) = 1⊗x + x⊗g.
pub fn h4_sweedler() -> Bialgebra {
    let one = |v: i64| Scalar::from(num::BigInt::from(v));
    // indices: 0 = 1, 1 = g, 2 = x, 3 = gx
    let mult: Vec<(usize, usize, usize, Scalar)> = vec![
        (0, 0, 0, one(1)),
        (0, 1, 1, one(1)),
        (0, 2, 2, one(1)),
        (0, 3, 3, one(1)),
        (1, 0, 1, one(1)),
        (1, 1, 0, one(1)),
        (1, 2, 3, one(1)),
        (1, 3, 2, one(1)),
        (2, 0, 2, one(1)),
        (2, 1, 3, one(-1)),
        // x·x = 0, x·gx = 0
        (3, 0, 3, one(1)),
        (3, 1, 2, one(-1)),
        // gx·x = 0, gx·gx = 0
    ];
    let comult: Vec<(usize, usize, usize, Scalar)> = vec![
        (0, 0, 0, one(1)),
        (1, 1, 1, one(1)),
        (2, 0, 2, one(1)),
        (2, 2, 1, one(1)),
        (3, 1, 3, one(1)),
        (3, 3, 0, one(1)),
    ];
    let mut unit = vec_zero(4);
    unit[0] = s_one();
    let counit = vec![one(1), one(1), one(0), one(0)];
    // S(1) = 1, S(g) = g, S(x) = gx, S(gx) = -x
    let mut antipode = Matrix::zero(4, 4);
    antipode.set(0, 0, one(1));
    antipode.set(1, 1, one(1));
    antipode.set(3, 2, one(1));
    antipode.set(2, 3, one(-1));
    Bialgebra::from_parts(
        4,
        vec!["1".into(), "g".into(), "x".into(), "gx".into()],
        &mult,
        unit,
        &comult,
        counit,
        Some(antipode),
    )
    .expect("H4 structure constants are well-formed")
}

/// Group algebra of Z/n: basis g^0..g^{n-1}.
pub fn group_algebra_z(n: usize) -> Bialgebra {
    assert!(n >= 1);
    let mut mult = Vec::new();
    let mut comult = Vec::new();
    for i in 0..n {
        for j in 0..n {
            mult.push((i, j, (i + j) % n, s_one()));
        }
        comult.push((i, i, i, s_one()));
    }
    let mut unit = vec_zero(n);
    unit[0] = s_one();
    let counit = vec![s_one(); n];
    let names = (0..n)
        .map(|i| if i == 0 { "1".to_string() } else { format!("g^{i}") })
        .collect();
    // antipode: g^i ↦ g^{-i}
    let mut antipode = Matrix::zero(n, n);
    for i in 0..n {
        antipode.set((n - i) % n, i, s_one());
    }
    Bialgebra::from_parts(n, names, &mult, unit, &comult, counit, Some(antipode))
        .expect("group algebra structure constants are well-formed")
}

/// Group algebra of the symmetric group S3 (6 basis elements).
pub fn group_s3() -> Bialgebra {
    // Permutations of {0,1,2} in lexicographic one-line order.
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index_of = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
    let mut mult = Vec::new();
    let mut comult = Vec::new();
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            let comp = [p[q[0]], p[q[1]], p[q[2]]]; // (p∘q)(i) = p(q(i))
            mult.push((i, j, index_of(&comp), s_one()));
        }
        comult.push((i, i, i, s_one()));
    }
    let mut unit = vec_zero(6);
    unit[0] = s_one();
    let counit = vec![s_one(); 6];
    let names = perms
        .iter()
        .map(|p| format!("p{}{}{}", p[0], p[1], p[2]))
        .collect();
    // antipode: p ↦ p⁻¹
    let mut antipode = Matrix::zero(6, 6);
    for (i, p) in perms.iter().enumerate() {
        let mut inv = [0usize; 3];
        for k in 0..3 {
            inv[p[k]] = k;
        }
        antipode.set(index_of(&inv), i, s_one());
    }
    Bialgebra::from_parts(6, names, &mult, unit, &comult, counit, Some(antipode))
        .expect("S3 structure constants are well-formed")
}

/// 2-dimensional abelian Lie algebra.
pub fn lie_ab2() -> LieAlgebra {
    LieAlgebra::from_triples(2, vec!["x".into(), "y".into()], &[])
        .expect("abelian bracket is well-formed")
}

/// Heisenberg algebra h3: [x, y] = z.
pub fn lie_heis3() -> LieAlgebra {
    LieAlgebra::from_triples(
        3,
        vec!["x".into(), "y".into(), "z".into()],
        &[(0, 1, 2, s_int(1))],
    )
    .expect("Heisenberg bracket is well-formed")
}

/// sl2 with ordered basis e < h < f: [e,f] = h, [h,e] = 2e, [h,f] = -2f.
pub fn lie_sl2() -> LieAlgebra {
    LieAlgebra::from_triples(
        3,
        vec!["e".into(), "h".into(), "f".into()],
        &[
            (0, 1, 0, s_int(-2)),
            (0, 2, 1, s_int(1)),
            (1, 2, 2, s_int(-2)),
        ],
    )
    .expect("sl2 bracket is well-formed")
}

/// The 2-dimensional non-abelian Lie algebra: [x, y] = y.
pub fn lie_nonab2() -> LieAlgebra {
    LieAlgebra::from_triples(2, vec!["x".into(), "y".into()], &[(0, 1, 1, s_int(1))])
        .expect("nonabelian 2-dim bracket is well-formed")
}

pub const BIALGEBRA_NAMES: [&str; 4] = ["h4_sweedler", "group_Z2", "group_Z3", "group_S3"];
pub const LIE_NAMES: [&str; 4] = ["lie_ab2", "lie_heis3", "lie_sl2", "lie_nonab2"];

pub fn bialgebra_by_name(name: &str) -> Option<Bialgebra> {
    match name {
        "h4_sweedler" => Some(h4_sweedler()),
        "group_Z2" => Some(group_algebra_z(2)),
        "group_Z3" => Some(group_algebra_z(3)),
        "group_S3" => Some(group_s3()),
        _ => None,
    }
}

pub fn lie_by_name(name: &str) -> Option<LieAlgebra> {
    match name {
        "lie_ab2" => Some(lie_ab2()),
        "lie_heis3" => Some(lie_heis3()),
        "lie_sl2" => Some(lie_sl2()),
        "lie_nonab2" => Some(lie_nonab2()),
        _ => None,
    }
}

pub fn all_bialgebras() -> Vec<Bialgebra> {
    BIALGEBRA_NAMES
        .iter()
        .map(|n| bialgebra_by_name(n).unwrap())
        .collect()
}

pub fn all_lie_algebras() -> Vec<LieAlgebra> {
    LIE_NAMES.iter().map(|n| lie_by_name(n).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_catalog_entry_verifies() {
        for b in all_bialgebras() {
            assert!(b.verify().all_pass());
        }
        for g in all_lie_algebras() {
            assert!(g.verify().all_pass());
        }
    }

    #[test]
    fn s3_is_noncommutative_group() {
        let s3 = group_s3();
        let a = s3.basis_vector(1);
        let b = s3.basis_vector(2);
        assert_ne!(s3.mul_vecs(&a, &b), s3.mul_vecs(&b, &a));
    }
}
