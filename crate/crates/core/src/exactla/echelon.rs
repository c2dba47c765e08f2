//! Reduced row echelon forms, subspaces, kernels and linear solves.

use std::fmt;

use super::matrix::Matrix;
use super::sparse::{Accumulator, SparseVec};
use crate::field::FieldElem;

const NO_ROW: usize = usize::MAX;

/// A reduced row echelon basis grown one vector at a time.
///
/// Every row has leading coefficient 1 at its pivot and zeros at all other
/// pivots, so reducing a vector needs one pass over its pivot entries.
#[derive(Clone)]
pub struct EchelonBasis {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(ambient: usize) -> Self {
        EchelonBasis { ambient, rows: Vec::new(), pivot_row: vec![NO_ROW; ambient] }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col] != NO_ROW
    }

    /// The residue of `v` modulo the span; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(usize, &FieldElem)> = v.iter().filter(|(i, _)| self.pivot_row[*i] != NO_ROW).collect();
        if hits.is_empty() {
            return v.clone();
        }
        if hits.len() <= 4 {
            let mut r = v.clone();
            for (p, c) in hits {
                r = r.add_scaled(&-c, &self.rows[self.pivot_row[p]]);
            }
            return r;
        }
        let mut acc = Accumulator::new(self.ambient);
        acc.add_scaled(&FieldElem::one(), v);
        for (p, c) in hits {
            acc.add_scaled(&-c, &self.rows[self.pivot_row[p]]);
        }
        acc.take()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns its pivot column if the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let r = self.reduce(v);
        let (p, lead) = r.leading()?;
        let r = r.scale(&lead.inv().expect("nonzero leading coefficient"));
        for row in &mut self.rows {
            if let Some(c) = row.get(p) {
                let c = -c;
                *row = row.add_scaled(&c, &r);
            }
        }
        self.pivot_row[p] = self.rows.len();
        self.rows.push(r);
        Some(p)
    }

    pub fn into_subspace(self) -> Subspace {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.leading().map(|e| e.0));
        Subspace::from_sorted_rref(self.ambient, rows)
    }
}

/// A subspace stored as its unique reduced row echelon basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::coordinate(ambient, 0..ambient)
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate(ambient: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut pivots: Vec<usize> = idx.into_iter().collect();
        pivots.sort_unstable();
        pivots.dedup();
        let rows = pivots.iter().map(|&i| SparseVec::unit(i)).collect();
        Subspace { ambient, rows, pivots }
    }

    fn from_sorted_rref(ambient: usize, rows: Vec<SparseVec>) -> Self {
        let pivots = rows.iter().map(|r| r.leading().expect("nonzero row").0).collect();
        Subspace { ambient, rows, pivots }
    }

    pub fn span<'a>(ambient: usize, vs: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut e = EchelonBasis::new(ambient);
        for v in vs {
            e.insert(v);
        }
        e.into_subspace()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (k, &p) in self.pivots.iter().enumerate() {
            if let Some(c) = v.get(p) {
                r = r.add_scaled(&-c, &self.rows[k]);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<FieldElem>> {
        let coords: Vec<FieldElem> = self.pivots.iter().map(|&p| v.coeff(p)).collect();
        let mut acc = Accumulator::new(self.ambient);
        acc.add_scaled(&FieldElem::one(), v);
        for (c, row) in coords.iter().zip(&self.rows) {
            acc.add_scaled(&-c, row);
        }
        acc.take().is_zero().then_some(coords)
    }

    /// The vector Σ coords[k] · basis[k].
    pub fn combine(&self, coords: &[FieldElem]) -> SparseVec {
        let mut acc = Accumulator::new(self.ambient);
        for (c, row) in coords.iter().zip(&self.rows) {
            acc.add_scaled(c, row);
        }
        acc.take()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::span(self.ambient, self.rows.iter().chain(&other.rows))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.dim() > other.dim() {
            return other.intersect(self);
        }
        // x = Σ a_k self_k lies in `other` iff Σ a_k reduce_other(self_k) = 0.
        let residues: Vec<SparseVec> = self.rows.iter().map(|r| other.reduce(r)).collect();
        let coeffs = kernel(&Matrix::from_columns(self.ambient, &residues));
        let vs: Vec<SparseVec> =
            coeffs.basis().iter().map(|a| self.combine(&a.to_dense(self.dim()))).collect();
        Subspace::span(self.ambient, &vs)
    }

    /// Image under a linear map of matching domain.
    pub fn image(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.ncols(), self.ambient);
        let vs: Vec<SparseVec> = self.rows.iter().map(|r| m.apply(r)).collect();
        Subspace::span(m.nrows(), &vs)
    }

    /// Basis vectors as the columns of an ambient × dim matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.rows)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) ", self.dim(), self.ambient)?;
        f.debug_list().entries(&self.rows).finish()
    }
}

fn row_echelon(m: &Matrix) -> EchelonBasis {
    let mut e = EchelonBasis::new(m.ncols());
    for r in m.rows() {
        e.insert(r);
    }
    e
}

pub fn rank(m: &Matrix) -> usize {
    row_echelon(m).rank()
}

/// Null space {v : M v = 0}.
pub fn kernel(m: &Matrix) -> Subspace {
    kernel_of_rows(m.ncols(), m.rows())
}

/// Null space of the matrix with the given rows, without materializing it.
pub fn kernel_of_rows<'a>(cols: usize, rows: impl IntoIterator<Item = &'a SparseVec>) -> Subspace {
    let mut e = EchelonBasis::new(cols);
    for r in rows {
        e.insert(r);
    }
    kernel_from_echelon(&e)
}

pub fn kernel_from_echelon(e: &EchelonBasis) -> Subspace {
    let cols = e.ambient();
    let mut per_free: Vec<Vec<(usize, FieldElem)>> = vec![Vec::new(); cols];
    for row in e.rows() {
        let (p, _) = row.leading().expect("nonzero row");
        for (j, c) in row.iter() {
            if j != p {
                per_free[j].push((p, -c));
            }
        }
    }
    let mut vs = Vec::new();
    for (f, mut entries) in per_free.into_iter().enumerate() {
        if e.is_pivot(f) {
            continue;
        }
        entries.push((f, FieldElem::one()));
        vs.push(SparseVec::from_entries(entries));
    }
    Subspace::span(cols, &vs)
}

/// Exact determinant: the signed product of leading coefficients met during elimination.
pub fn determinant(m: &Matrix) -> FieldElem {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.nrows();
    let mut e = EchelonBasis::new(n);
    let mut det = FieldElem::one();
    let mut pivots = Vec::with_capacity(n);
    for r in m.rows() {
        let red = e.reduce(r);
        let Some((p, lead)) = red.leading() else { return FieldElem::zero() };
        det = &det * lead;
        pivots.push(p);
        e.insert(&red);
    }
    // Parity of the row-to-pivot permutation.
    let mut seen = vec![false; n];
    let mut odd = false;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let (mut k, mut len) = (start, 0);
        while !seen[k] {
            seen[k] = true;
            k = pivots[k];
            len += 1;
        }
        odd ^= len % 2 == 0;
    }
    if odd {
        -det
    } else {
        det
    }
}

/// Inverse of a square matrix, or `None` if it is singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    assert!(m.is_square(), "inverse of a non-square matrix");
    let n = m.nrows();
    let mut e = EchelonBasis::new(2 * n);
    for (i, r) in m.rows().iter().enumerate() {
        let mut entries = r.entries().to_vec();
        entries.push((n + i, FieldElem::one()));
        e.insert(&SparseVec::from_sorted_unchecked(entries));
    }
    let mut out = vec![SparseVec::zero(); n];
    for row in e.rows() {
        let (p, _) = row.leading()?;
        if p >= n {
            return None;
        }
        out[p] = SparseVec::from_sorted_unchecked(
            row.iter().filter(|(j, _)| *j >= n).map(|(j, c)| (j - n, c.clone())).collect(),
        );
    }
    (e.rank() == n && (0..n).all(|p| e.is_pivot(p))).then(|| Matrix::from_rows(n, out))
}

/// One solution of `A x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &Matrix, b: &SparseVec) -> Option<SparseVec> {
    let n = a.ncols();
    let mut e = EchelonBasis::new(n + 1);
    for (i, row) in a.rows().iter().enumerate() {
        let mut entries = row.entries().to_vec();
        if let Some(bi) = b.get(i) {
            entries.push((n, bi.clone()));
        }
        e.insert(&SparseVec::from_entries(entries));
    }
    if e.is_pivot(n) {
        return None;
    }
    let entries = e
        .rows()
        .iter()
        .filter_map(|row| {
            let (p, _) = row.leading()?;
            row.get(n).map(|c| (p, c.clone()))
        })
        .collect();
    Some(SparseVec::from_entries(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Conductor, Rational};
    use proptest::prelude::*;

    fn zeta5(k: i64) -> FieldElem {
        FieldElem::root_of_unity(Conductor::Five, k)
    }

    fn ints(v: &[i64]) -> SparseVec {
        SparseVec::from_dense(&v.iter().map(|&x| FieldElem::from_int(x)).collect::<Vec<_>>())
    }

    /// Rank by division-free elimination: rows are combined by cross-multiplication only.
    fn fraction_free_rank(rows: &[Vec<FieldElem>]) -> usize {
        let mut m: Vec<Vec<FieldElem>> = rows.to_vec();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..cols {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
            m.swap(rank, p);
            for i in 0..m.len() {
                if i == rank || m[i][col].is_zero() {
                    continue;
                }
                let (a, b) = (m[rank][col].clone(), m[i][col].clone());
                for j in 0..cols {
                    m[i][j] = &(&a * &m[i][j]) - &(&b * &m[rank][j]);
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&Matrix::identity(4)).dim(), 0);
        assert_eq!(kernel(&Matrix::zeros(3, 3)).dim(), 3);
        let m = Matrix::from_dense(&[vec![FieldElem::one(), zeta5(1)], vec![zeta5(4), FieldElem::one()]]);
        let k = kernel(&m);
        assert_eq!(k.dim(), 1);
        assert_eq!(fraction_free_rank(&m.to_dense()), 1);
        let expected = SparseVec::from_dense(&[zeta5(1), FieldElem::from_int(-1)]);
        assert!(m.apply(&expected).is_zero());
        assert!(k.contains(&expected));
        for v in k.basis() {
            assert!(m.apply(v).is_zero());
        }
    }

    fn leibniz(m: &[Vec<FieldElem>]) -> FieldElem {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.len();
        let mut total = FieldElem::zero();
        for p in perms(n) {
            let inversions =
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let term = (0..n).fold(FieldElem::one(), |acc, i| &acc * &m[i][p[i]]);
            total = if inversions % 2 == 0 { &total + &term } else { &total - &term };
        }
        total
    }

    #[test]
    fn determinant_examples() {
        let m = Matrix::from_int_rows(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert_eq!(determinant(&m), FieldElem::one());
        let m = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&m), FieldElem::from_int(-1));
        assert!(determinant(&Matrix::from_int_rows(&[&[1, 2], &[2, 4]])).is_zero());
    }

    #[test]
    fn inverse_examples() {
        let m = Matrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inverse(&Matrix::from_int_rows(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn solve_examples() {
        let b = ints(&[3, -1, 4]);
        assert_eq!(solve(&Matrix::identity(3), &b), Some(b));
        let w = FieldElem::root_of_unity(Conductor::Three, 1);
        let a = Matrix::from_dense(&[vec![FieldElem::one(), FieldElem::one()], vec![w.clone(), w.clone()]]);
        let rhs = SparseVec::from_dense(&[FieldElem::one(), w.clone()]);
        let x = solve(&a, &rhs).expect("consistent");
        assert_eq!(a.apply(&x), rhs);
        assert_eq!(&x.coeff(0) + &x.coeff(1), FieldElem::one());
        assert_eq!(solve(&a, &SparseVec::unit(0)), None);
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let a = Subspace::span(4, &[ints(&[1, 2, 0, 1]), ints(&[0, 1, 1, 0])]);
        let b = Subspace::span(4, &[ints(&[1, 3, 1, 1]), ints(&[2, 3, -1, 2])]);
        assert_eq!(a, b);
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::coordinate(4, [0, 1]);
        let b = Subspace::span(4, &[ints(&[1, 1, 0, 0]), ints(&[0, 0, 1, 0])]);
        let i = a.intersect(&b);
        assert_eq!(i, Subspace::span(4, &[ints(&[1, 1, 0, 0])]));
        assert_eq!(a.sum(&b).dim(), 3);
        let v = ints(&[2, 5, 0, 0]);
        let c = a.coordinates(&v).unwrap();
        assert_eq!(a.combine(&c), v);
        assert_eq!(a.coordinates(&ints(&[0, 0, 1, 0])), None);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<FieldElem>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(
                proptest::collection::vec(
                    (-2i64..3, -1i64..2).prop_map(|(a, b)| {
                        FieldElem::from_coeffs(
                            Conductor::Three,
                            &[Rational::from_int(a), Rational::from_int(b)],
                        )
                        .unwrap()
                    }),
                    c,
                ),
                r,
            )
        })
    }

    proptest! {
        #[test]
        fn kernel_and_rank_agree_with_oracle(rows in small_matrix()) {
            let m = Matrix::from_dense(&rows);
            let r = fraction_free_rank(&rows);
            prop_assert_eq!(rank(&m), r);
            let k = kernel(&m);
            prop_assert_eq!(k.dim(), m.ncols() - r);
            for v in k.basis() {
                prop_assert!(m.apply(v).is_zero());
            }
        }

        #[test]
        fn determinant_matches_leibniz(rows in small_matrix()) {
            let n = rows.len().min(rows[0].len());
            let sq: Vec<Vec<FieldElem>> = rows[..n].iter().map(|r| r[..n].to_vec()).collect();
            prop_assert_eq!(determinant(&Matrix::from_dense(&sq)), leibniz(&sq));
        }

        #[test]
        fn solve_residual_is_exact(rows in small_matrix(), seed in 0usize..100) {
            let m = Matrix::from_dense(&rows);
            let x = SparseVec::from_dense(
                &(0..m.ncols()).map(|j| FieldElem::from_int(((seed + 3 * j) % 5) as i64 - 2)).collect::<Vec<_>>(),
            );
            let b = m.apply(&x);
            let got = solve(&m, &b).expect("consistent by construction");
            prop_assert_eq!(m.apply(&got), b);
        }

        #[test]
        fn span_is_permutation_invariant(rows in small_matrix()) {
            let vs: Vec<SparseVec> = rows.iter().map(|r| SparseVec::from_dense(r)).collect();
            let n = rows[0].len();
            let fwd = Subspace::span(n, &vs);
            let back = Subspace::span(n, vs.iter().rev());
            prop_assert_eq!(fwd, back);
        }
    }
}
