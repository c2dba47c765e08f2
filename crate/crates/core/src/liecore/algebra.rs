//! Lie algebras given by structure constants in a fixed basis.

use crate::exactla::{Accumulator, Matrix, SparseVec, Subspace};
use crate::field::{Conductor, FieldElem};

use super::LieError;

/// A Lie algebra over ℚ(ζ_m) given by its structure-constant table.
///
/// The table is stored for both orders of every basis pair so that lookups
/// never branch on index order; antisymmetry is enforced at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    conductor: Conductor,
    table: Vec<SparseVec>,
    labels: Vec<String>,
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra(dim {}, m = {})", self.dim, self.conductor)
    }
}

impl LieAlgebra {
    /// The abelian algebra of the given dimension.
    pub fn abelian(dim: usize, conductor: Conductor) -> Self {
        LieAlgebra {
            dim,
            conductor,
            table: vec![SparseVec::zero(); dim * dim],
            labels: (0..dim).map(|i| format!("x{i}")).collect(),
        }
    }

    /// Builds from brackets `[x_i, x_j] = v`; each unordered pair may appear once, in either order.
    pub fn from_brackets(
        dim: usize,
        conductor: Conductor,
        brackets: impl IntoIterator<Item = (usize, usize, SparseVec)>,
    ) -> Result<Self, LieError> {
        let mut l = LieAlgebra::abelian(dim, conductor);
        let mut seen = vec![false; dim * dim];
        for (i, j, v) in brackets {
            if i >= dim || j >= dim || v.max_index().is_some_and(|m| m >= dim) {
                return Err(LieError::Dimension(format!("bracket ({i},{j}) out of range for dim {dim}")));
            }
            if i == j {
                if v.is_zero() {
                    continue;
                }
                return Err(LieError::Malformed(format!("[x{i}, x{i}] must vanish")));
            }
            if seen[i * dim + j] {
                return Err(LieError::Malformed(format!("bracket ({i},{j}) given twice")));
            }
            seen[i * dim + j] = true;
            seen[j * dim + i] = true;
            l.table[j * dim + i] = v.neg();
            l.table[i * dim + j] = v;
        }
        l.conductor = l
            .table
            .iter()
            .map(SparseVec::conductor)
            .try_fold(conductor, |a, b| a.join(b))
            .map_err(|e| LieError::Malformed(e.to_string()))?;
        Ok(l)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> Conductor {
        self.conductor
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `[x_i, x_j]` in coordinates.
    #[inline]
    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    /// Nonzero brackets `[x_i, x_j]` with `i < j`, in lexicographic order.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, &SparseVec)> + '_ {
        let n = self.dim;
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, self.basis_bracket(i, j)))
            .filter(|(_, _, v)| !v.is_zero())
    }

    fn check_vec(&self, v: &SparseVec) -> Result<(), LieError> {
        match v.max_index() {
            Some(m) if m >= self.dim => {
                Err(LieError::Dimension(format!("index {m} out of range for dim {}", self.dim)))
            }
            _ => Ok(()),
        }
    }

    pub fn try_bracket(&self, x: &SparseVec, y: &SparseVec) -> Result<SparseVec, LieError> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        Ok(self.bracket(x, y))
    }

    /// Bilinear extension of the table. Panics on out-of-range indices.
    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.dim);
        self.bracket_into(&mut acc, &FieldElem::one(), x, y);
        acc.take()
    }

    /// Adds `s [x, y]` into `acc`.
    pub fn bracket_into(&self, acc: &mut Accumulator, s: &FieldElem, x: &SparseVec, y: &SparseVec) {
        for (i, a) in x.iter() {
            let sa = s * a;
            for (j, b) in y.iter() {
                let t = self.basis_bracket(i, j);
                if !t.is_zero() {
                    acc.add_scaled(&(&sa * b), t);
                }
            }
        }
    }

    /// `[x_i, y]`.
    pub fn bracket_basis_left(&self, i: usize, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.dim);
        for (j, b) in y.iter() {
            acc.add_scaled(b, self.basis_bracket(i, j));
        }
        acc.take()
    }

    /// The matrix of ad x: column k is `[x, x_k]`.
    pub fn ad(&self, x: &SparseVec) -> Matrix {
        let cols: Vec<SparseVec> = (0..self.dim).map(|k| self.bracket(x, &SparseVec::unit(k))).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        let cols: Vec<SparseVec> = (0..self.dim).map(|k| self.basis_bracket(i, k).clone()).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Whether the span of `s` is closed under the bracket.
    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        let b = s.basis();
        (0..b.len()).all(|i| (i + 1..b.len()).all(|j| s.contains(&self.bracket(&b[i], &b[j]))))
    }

    pub fn is_abelian_subspace(&self, s: &Subspace) -> bool {
        let b = s.basis();
        (0..b.len()).all(|i| (i + 1..b.len()).all(|j| self.bracket(&b[i], &b[j]).is_zero()))
    }

    /// Whether [x, y] lies in `s` for all x in L and y in `s`.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|y| (0..self.dim).all(|i| s.contains(&self.bracket_basis_left(i, y))))
    }

    /// The subalgebra on `s`, in the coordinates of its stored basis.
    pub fn subalgebra(&self, s: &Subspace) -> Result<LieAlgebra, LieError> {
        let b = s.basis();
        let mut brackets = Vec::new();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let v = self.bracket(&b[i], &b[j]);
                let c = s.coordinates(&v).ok_or(LieError::NotClosed { i, j })?;
                brackets.push((i, j, SparseVec::from_dense(&c)));
            }
        }
        LieAlgebra::from_brackets(b.len(), self.conductor, brackets)
    }

    /// Sum of the three cyclic Jacobi terms for basis elements i, j, k.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let mut acc = Accumulator::new(self.dim);
        self.jacobiator_into(&mut acc, i, j, k);
        acc.take()
    }

    pub fn jacobiator_into(&self, acc: &mut Accumulator, i: usize, j: usize, k: usize) {
        // [[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j]
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (l, s) in self.basis_bracket(a, b).iter() {
                acc.add_scaled(s, self.basis_bracket(l, c));
            }
        }
    }

    /// Returns a copy with one structure constant replaced (antisymmetry kept).
    pub fn with_bracket(&self, i: usize, j: usize, v: SparseVec) -> LieAlgebra {
        let mut l = self.clone();
        let n = self.dim;
        l.table[j * n + i] = v.neg();
        l.table[i * n + j] = v;
        l
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// sl₂ with basis (e, f, h).
    pub fn sl2() -> LieAlgebra {
        let int = |entries: &[(usize, i64)]| {
            SparseVec::from_entries(entries.iter().map(|&(i, c)| (i, FieldElem::from_int(c))).collect())
        };
        LieAlgebra::from_brackets(
            3,
            Conductor::One,
            [(0, 1, int(&[(2, 1)])), (2, 0, int(&[(0, 2)])), (2, 1, int(&[(1, -2)]))],
        )
        .unwrap()
        .with_labels(vec!["e".into(), "f".into(), "h".into()])
    }

    #[test]
    fn sl2_brackets() {
        let l = sl2();
        let e = SparseVec::unit(0);
        let f = SparseVec::unit(1);
        assert_eq!(l.bracket(&e, &f), SparseVec::unit(2));
        let x = SparseVec::from_dense(&[1, 2, 3].map(FieldElem::from_int));
        assert!(l.bracket(&x, &x).is_zero());
        assert_eq!(l.bracket(&f, &e), SparseVec::unit(2).neg());
        for (i, j, k) in [(0, 1, 2), (0, 0, 1), (1, 2, 2)] {
            assert!(l.jacobiator(i, j, k).is_zero());
        }
        assert!(l.try_bracket(&SparseVec::unit(5), &e).is_err());
    }

    #[test]
    fn rejects_malformed_tables() {
        let bad = LieAlgebra::from_brackets(2, Conductor::One, [(0, 0, SparseVec::unit(1))]);
        assert!(bad.is_err());
        let dup = LieAlgebra::from_brackets(
            2,
            Conductor::One,
            [(0, 1, SparseVec::unit(1)), (1, 0, SparseVec::unit(0))],
        );
        assert!(dup.is_err());
    }

    #[test]
    fn subalgebra_of_borel() {
        let l = sl2();
        let b = Subspace::coordinate(3, [0, 2]);
        assert!(l.is_subalgebra(&b));
        assert!(!l.is_ideal(&b));
        let sub = l.subalgebra(&b).unwrap();
        assert_eq!(sub.dim(), 2);
        assert_eq!(
            sub.bracket(&SparseVec::unit(1), &SparseVec::unit(0)),
            SparseVec::unit(0).scale(&FieldElem::from_int(2))
        );
        assert!(l.subalgebra(&Subspace::coordinate(3, [0, 1])).is_err());
    }
}
