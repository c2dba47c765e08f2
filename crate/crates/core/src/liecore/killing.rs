//! The Killing form and symmetric bilinear forms in coordinates.

use rayon::prelude::*;

use crate::exactla::{determinant, rank, Accumulator, Matrix, SparseVec, Subspace};
use crate::field::FieldElem;

use super::LieAlgebra;

/// A symmetric bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    gram: Matrix,
}

impl BilinearForm {
    pub fn new(gram: Matrix) -> Self {
        assert!(gram.is_square());
        BilinearForm { gram }
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn eval(&self, x: &SparseVec, y: &SparseVec) -> FieldElem {
        let mut acc = FieldElem::zero();
        for (i, a) in x.iter() {
            let d = self.gram.row(i).dot(y);
            if !d.is_zero() {
                acc += &(a * &d);
            }
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        self.gram.transpose() == self.gram
    }

    pub fn is_zero(&self) -> bool {
        self.gram.is_zero()
    }

    pub fn rank(&self) -> usize {
        rank(&self.gram)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank() == self.dim()
    }

    pub fn determinant(&self) -> FieldElem {
        determinant(&self.gram)
    }

    /// Gram matrix of the form between two subspaces (rows: `a`, columns: `b`).
    pub fn pairing(&self, a: &Subspace, b: &Subspace) -> Matrix {
        let gb: Vec<SparseVec> = b.basis().iter().map(|y| self.gram.apply(y)).collect();
        let rows = a
            .basis()
            .iter()
            .map(|x| SparseVec::from_dense(&gb.iter().map(|g| x.dot(g)).collect::<Vec<_>>()))
            .collect();
        Matrix::from_rows(b.dim(), rows)
    }

    /// The form restricted to a subspace, in the coordinates of its basis.
    pub fn restrict(&self, s: &Subspace) -> BilinearForm {
        BilinearForm::new(self.pairing(s, s))
    }
}

/// κ(x_i, x_j) = tr(ad x_i ∘ ad x_j) for all basis pairs.
pub fn killing(l: &LieAlgebra) -> BilinearForm {
    let n = l.dim();
    // lookup[a * n + b] lists (j, coefficient of x_b in [x_j, x_a]).
    let mut lookup: Vec<Vec<(usize, FieldElem)>> = vec![Vec::new(); n * n];
    for j in 0..n {
        for a in 0..n {
            for (b, c) in l.basis_bracket(j, a).iter() {
                lookup[a * n + b].push((j, c.clone()));
            }
        }
    }
    let rows: Vec<SparseVec> = (0..n)
        .into_par_iter()
        .map(|i| {
            // κ(x_i, x_j) = Σ_k Σ_l c^l_{ik} c^k_{jl}
            let mut acc = Accumulator::new(n);
            for k in 0..n {
                for (l_idx, v) in l.basis_bracket(i, k).iter() {
                    for (j, c) in &lookup[l_idx * n + k] {
                        acc.add_entry(*j, &(v * c));
                    }
                }
            }
            acc.take()
        })
        .collect();
    BilinearForm::new(Matrix::from_rows(n, rows))
}

/// Checks κ([x_i, x_j], x_k) = κ(x_i, [x_j, x_k]) on the given triples; returns the first failure.
pub fn invariance_witness(
    l: &LieAlgebra,
    form: &BilinearForm,
    triples: impl IntoIterator<Item = (usize, usize, usize)>,
) -> Option<(usize, usize, usize)> {
    triples.into_iter().find(|&(i, j, k)| {
        let left = form.eval(l.basis_bracket(i, j), &SparseVec::unit(k));
        let right = form.eval(&SparseVec::unit(i), l.basis_bracket(j, k));
        left != right
    })
}
