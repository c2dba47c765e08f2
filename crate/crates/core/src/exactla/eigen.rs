//! Eigenspaces of finite-order operators and joint decompositions of commuting families.

use std::collections::BTreeMap;

use super::echelon::{kernel, Subspace};
use super::matrix::Matrix;
use super::sparse::{Accumulator, SparseVec};
use super::LinAlgError;
use crate::field::FieldElem;

/// kernel(M − λ I).
pub fn eigenspace(m: &Matrix, lam: &FieldElem) -> Subspace {
    assert!(m.is_square(), "eigenspace of a non-square matrix");
    kernel(&m.add_scaled(&-lam, &Matrix::identity(m.nrows())))
}

/// Character tuple (k₁, …, k_r) ↦ joint eigenspace with eigenvalues ζ^{k_i}.
pub type EigenDecomposition = BTreeMap<Vec<u32>, Subspace>;

/// Splits the ambient space into joint eigenspaces of commuting operators of order dividing `p`.
///
/// Every one of the p^r character tuples appears as a key, zero components included.
pub fn simultaneous_eigenspaces(
    ops: &[Matrix],
    p: u32,
    zeta: &FieldElem,
) -> Result<EigenDecomposition, LinAlgError> {
    let n = ops.first().map_or(0, Matrix::nrows);
    check_family(ops, p, zeta)?;

    // ζ^{-e} for e in 0..p.
    let zinv = zeta.inv().map_err(|_| LinAlgError::BadRoot(p))?;
    let powers: Vec<FieldElem> = (0..p).map(|e| zinv.pow(e)).collect();

    let mut pieces: Vec<(Vec<u32>, Subspace)> = vec![(Vec::new(), Subspace::full(n))];
    for (idx, op) in ops.iter().enumerate() {
        let mut next = Vec::with_capacity(pieces.len() * p as usize);
        for (key, piece) in pieces {
            let orbits: Vec<Vec<SparseVec>> = piece
                .basis()
                .iter()
                .map(|v| {
                    let mut w = Vec::with_capacity(p as usize);
                    w.push(v.clone());
                    for j in 1..p as usize {
                        let nxt = op.apply(&w[j - 1]);
                        w.push(nxt);
                    }
                    w
                })
                .collect();
            let mut total = 0;
            let mut acc = Accumulator::new(n);
            for k in 0..p {
                // Projection onto the ζ^k eigenspace, up to the factor 1/p.
                let projected: Vec<SparseVec> = orbits
                    .iter()
                    .map(|w| {
                        for (j, wj) in w.iter().enumerate() {
                            acc.add_scaled(&powers[(k as usize * j) % p as usize], wj);
                        }
                        acc.take()
                    })
                    .collect();
                let sub = Subspace::span(n, &projected);
                total += sub.dim();
                let mut child = key.clone();
                child.push(k);
                next.push((child, sub));
            }
            if total != piece.dim() {
                return Err(LinAlgError::NotDiagonalizable { index: idx });
            }
        }
        pieces = next;
    }
    Ok(pieces.into_iter().collect())
}

fn check_family(ops: &[Matrix], p: u32, zeta: &FieldElem) -> Result<(), LinAlgError> {
    if p < 2 || !zeta.pow(p).is_one() || (1..p).any(|e| zeta.pow(e).is_one()) {
        return Err(LinAlgError::BadRoot(p));
    }
    let n = ops.first().map_or(0, Matrix::nrows);
    for (i, m) in ops.iter().enumerate() {
        if !m.is_square() || m.nrows() != n {
            return Err(LinAlgError::Shape(format!("operator {i} is {}x{}", m.nrows(), m.ncols())));
        }
        if !m.pow(p).is_identity() {
            return Err(LinAlgError::WrongOrder { index: i, p });
        }
    }
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            if ops[i].mul(&ops[j]) != ops[j].mul(&ops[i]) {
                return Err(LinAlgError::NotCommuting(i, j));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::echelon::kernel_of_rows;
    use crate::field::Conductor;

    fn xi(k: i64) -> FieldElem {
        FieldElem::root_of_unity(Conductor::Five, k)
    }

    fn b1() -> Matrix {
        Matrix::diagonal((0..5).map(xi).collect())
    }

    fn c1() -> Matrix {
        let cols: Vec<SparseVec> = (0..5).map(|j| SparseVec::unit((j + 1) % 5)).collect();
        Matrix::from_columns(5, &cols)
    }

    #[test]
    fn eigenspace_examples() {
        assert_eq!(eigenspace(&b1(), &xi(1)), Subspace::coordinate(5, [1]));
        let ones = SparseVec::from_dense(&vec![FieldElem::one(); 5]);
        assert_eq!(eigenspace(&c1(), &FieldElem::one()), Subspace::span(5, [&ones]));
        let w = FieldElem::root_of_unity(Conductor::Three, 1);
        assert_eq!(eigenspace(&Matrix::identity(3), &w).dim(), 0);
    }

    #[test]
    fn single_diagonal_operator_splits_into_lines() {
        let d = simultaneous_eigenspaces(&[b1()], 5, &xi(1)).unwrap();
        assert_eq!(d.len(), 5);
        for (k, s) in &d {
            assert_eq!(s, &Subspace::coordinate(5, [k[0] as usize]));
        }
    }

    #[test]
    fn non_commuting_family_is_rejected() {
        let err = simultaneous_eigenspaces(&[b1(), c1()], 5, &xi(1)).unwrap_err();
        assert!(matches!(err, LinAlgError::NotCommuting(0, 1)));
    }

    #[test]
    fn wrong_order_is_rejected() {
        let m = Matrix::diagonal(vec![FieldElem::from_int(2), FieldElem::one()]);
        let err = simultaneous_eigenspaces(&[m], 5, &xi(1)).unwrap_err();
        assert!(matches!(err, LinAlgError::WrongOrder { index: 0, p: 5 }));
    }

    #[test]
    fn identity_family_has_one_component() {
        let w = FieldElem::root_of_unity(Conductor::Three, 1);
        let d = simultaneous_eigenspaces(&[Matrix::identity(4), Matrix::identity(4)], 3, &w).unwrap();
        assert_eq!(d.len(), 9);
        assert_eq!(d[&vec![0, 0]].dim(), 4);
        assert!(d.iter().filter(|(k, _)| **k != vec![0, 0]).all(|(_, s)| s.is_zero()));
    }

    #[test]
    fn joint_components_equal_eigenspace_intersections() {
        // The commutator scalars ξ and ξ⁻¹ cancel across the two factors.
        let binv = b1().pow(4);
        let a = b1().kron(&binv);
        let c = c1().kron(&c1());
        assert_eq!(a.mul(&c), c.mul(&a));
        let d = simultaneous_eigenspaces(&[a.clone(), c.clone()], 5, &xi(1)).unwrap();
        let mut total = 0;
        for (k, s) in &d {
            let shift = |m: &Matrix, e: u32| m.add_scaled(&-xi(e as i64), &Matrix::identity(25));
            let sa = shift(&a, k[0]);
            let sc = shift(&c, k[1]);
            let oracle = kernel_of_rows(25, sa.rows().iter().chain(sc.rows()));
            assert_eq!(s, &oracle);
            total += s.dim();
        }
        assert_eq!(total, 25);
    }
}
