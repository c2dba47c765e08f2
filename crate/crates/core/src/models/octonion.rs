//! Composition algebras by Cayley–Dickson doubling, and the Lie algebras of
//! derivations and of norm-skew operators on them.

use std::collections::BTreeMap;

use crate::exactla::{kernel_of_rows, Matrix, SparseVec, Subspace};
use crate::field::{Conductor, FieldElem, Rational};
use crate::liecore::{LieAlgebra, LieError};
use crate::verify::{Grading, GroupElem};

use super::ModelError;

/// A finite-dimensional algebra over ℚ given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    table: Vec<SparseVec>,
}

impl Algebra {
    pub fn new(dim: usize, table: Vec<SparseVec>) -> Algebra {
        assert_eq!(table.len(), dim * dim);
        Algebra { dim, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// e_i · e_j.
    pub fn basis_mul(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out = out.add_scaled(&(a * b), self.basis_mul(i, j));
            }
        }
        out
    }

    /// (xy)z − x(yz).
    pub fn associator(&self, x: &SparseVec, y: &SparseVec, z: &SparseVec) -> SparseVec {
        self.mul(&self.mul(x, y), z).sub(&self.mul(x, &self.mul(y, z)))
    }
}

fn conj(x: &[Rational]) -> Vec<Rational> {
    if x.len() == 1 {
        return x.to_vec();
    }
    let h = x.len() / 2;
    let mut out = conj(&x[..h]);
    out.extend(x[h..].iter().map(|c| -c));
    out
}

fn vadd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// (a, b)(c, d) = (ac + γ d̄ b, da + b c̄), with γ the last parameter.
fn cd_mul(x: &[Rational], y: &[Rational], params: &[Rational]) -> Vec<Rational> {
    if x.len() == 1 {
        return vec![&x[0] * &y[0]];
    }
    let h = x.len() / 2;
    let (gamma, sub) = params.split_last().expect("one parameter per doubling");
    let (a, b, c, d) = (&x[..h], &x[h..], &y[..h], &y[h..]);
    let db: Vec<Rational> = cd_mul(&conj(d), b, sub).iter().map(|t| gamma * t).collect();
    let mut out = vadd(&cd_mul(a, c, sub), &db);
    out.extend(vadd(&cd_mul(d, a, sub), &cd_mul(b, &conj(c), sub)));
    out
}

/// The algebra obtained from ℚ by doubling with each parameter in turn, and its norm on the basis.
///
/// Basis index bit k records the k-th doubling, so e_{2^k} is its generator.
pub fn cayley_dickson(params: &[i64]) -> (Algebra, Vec<Rational>) {
    let params: Vec<Rational> = params.iter().map(|&g| Rational::from_int(g)).collect();
    let n = 1usize << params.len();
    let unit =
        |i: usize| (0..n).map(|k| if k == i { Rational::ONE } else { Rational::ZERO }).collect::<Vec<_>>();
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let v: Vec<FieldElem> =
                cd_mul(&unit(i), &unit(j), &params).into_iter().map(FieldElem::from_rational).collect();
            table.push(SparseVec::from_dense(&v));
        }
    }
    // n(a, b) = n(a) − γ n(b).
    let norm = (0..n)
        .map(|i| {
            params
                .iter()
                .enumerate()
                .filter(|(k, _)| i & (1 << k) != 0)
                .fold(Rational::ONE, |acc, (_, g)| &acc * &(-g))
        })
        .collect();
    (Algebra::new(n, table), norm)
}

/// The split-free rational octonions with their ℤ₂³-grading.
#[derive(Clone, Debug)]
pub struct OctonionAlgebra {
    pub algebra: Algebra,
    /// n(e_i); the basis is orthogonal for the norm.
    pub norm: Vec<Rational>,
    /// Degree of e_i: its index bits.
    pub degrees: Vec<GroupElem>,
}

impl OctonionAlgebra {
    /// n(x) for a vector in basis coordinates.
    pub fn norm_of(&self, x: &SparseVec) -> FieldElem {
        x.iter().fold(FieldElem::zero(), |acc, (i, c)| &acc + &(c * c).scale(&self.norm[i]))
    }
}

pub fn octonion_algebra() -> OctonionAlgebra {
    let (algebra, norm) = cayley_dickson(&[-1, -1, -1]);
    let degrees = (0..8u32).map(|i| vec![i & 1, (i >> 1) & 1, (i >> 2) & 1]).collect();
    OctonionAlgebra { algebra, norm, degrees }
}

/// A Lie algebra of operators on an n-dimensional space.
///
/// Operators are flattened row-major (entry (r, c) at r·n + c). The span is
/// kept as parts with disjoint supports so that coordinates can be read off
/// part by part.
#[derive(Clone, Debug)]
pub struct OperatorAlgebra {
    pub n: usize,
    pub lie: LieAlgebra,
    pub ops: Vec<Matrix>,
    parts: Vec<(Subspace, Vec<bool>)>,
}

fn flatten(m: &Matrix) -> SparseVec {
    let n = m.ncols();
    let mut entries = Vec::new();
    for (r, row) in m.rows().iter().enumerate() {
        entries.extend(row.iter().map(|(c, v)| (r * n + c, v.clone())));
    }
    SparseVec::from_entries(entries)
}

fn unflatten(n: usize, v: &SparseVec) -> Matrix {
    let mut rows = vec![Vec::new(); n];
    for (k, c) in v.iter() {
        rows[k / n].push((k % n, c.clone()));
    }
    Matrix::from_rows(n, rows.into_iter().map(SparseVec::from_entries).collect())
}

impl OperatorAlgebra {
    /// The operator algebra spanned by the given parts, whose supports must be disjoint.
    pub fn from_parts(n: usize, parts: Vec<Subspace>) -> Result<OperatorAlgebra, ModelError> {
        let mut used = vec![false; n * n];
        let mut with_support = Vec::new();
        for s in parts {
            let mut support = vec![false; n * n];
            for v in s.basis() {
                for (k, _) in v.iter() {
                    support[k] = true;
                }
            }
            if support.iter().zip(&used).any(|(a, b)| *a && *b) {
                return Err(ModelError::Skeleton("operator parts overlap".into()));
            }
            for (u, s) in used.iter_mut().zip(&support) {
                *u |= *s;
            }
            with_support.push((s, support));
        }
        let flat: Vec<SparseVec> = with_support.iter().flat_map(|(s, _)| s.basis().iter().cloned()).collect();
        let ops: Vec<Matrix> = flat.iter().map(|v| unflatten(n, v)).collect();
        let mut this =
            OperatorAlgebra { n, lie: LieAlgebra::abelian(0, Conductor::One), ops, parts: with_support };
        let mut brackets = Vec::new();
        for i in 0..flat.len() {
            for j in i + 1..flat.len() {
                let c = this.ops[i].mul(&this.ops[j]).sub(&this.ops[j].mul(&this.ops[i]));
                let coords = this.coordinates(&c).ok_or(LieError::NotClosed { i, j })?;
                brackets.push((i, j, coords));
            }
        }
        this.lie = LieAlgebra::from_brackets(flat.len(), Conductor::One, brackets)?;
        Ok(this)
    }

    /// Coordinates of an operator in the basis `ops`, if it lies in the span.
    pub fn coordinates(&self, m: &Matrix) -> Option<SparseVec> {
        let v = flatten(m);
        let mut entries = Vec::new();
        let mut offset = 0;
        for (s, support) in &self.parts {
            let piece = v.filter(|k| support[k]);
            let c = s.coordinates(&piece)?;
            entries.extend(c.into_iter().enumerate().map(|(i, x)| (offset + i, x)));
            offset += s.dim();
        }
        if v.iter().any(|(k, _)| !self.parts.iter().any(|(_, sup)| sup[k])) {
            return None;
        }
        Some(SparseVec::from_entries(entries))
    }

    pub fn dim(&self) -> usize {
        self.ops.len()
    }

    /// The operator with the given coordinates.
    pub fn operator(&self, coords: &SparseVec) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for (i, c) in coords.iter() {
            m = m.add_scaled(c, &self.ops[i]);
        }
        m
    }
}

/// Rows of the linear system D(e_i e_j) = D(e_i) e_j + e_i D(e_j) in the flattened entries of D.
fn derivation_rows(a: &Algebra) -> Vec<SparseVec> {
    let n = a.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            // Coordinate t of the defect, as a combination of entries D[r][c].
            let mut by_t: Vec<Vec<(usize, FieldElem)>> = vec![Vec::new(); n];
            for (k, m) in a.basis_mul(i, j).iter() {
                for (t, row) in by_t.iter_mut().enumerate() {
                    row.push((t * n + k, m.clone()));
                }
            }
            for r in 0..n {
                for (t, m) in a.basis_mul(r, j).iter() {
                    by_t[t].push((r * n + i, -m));
                }
                for (t, m) in a.basis_mul(i, r).iter() {
                    by_t[t].push((r * n + j, -m));
                }
            }
            rows.extend(by_t.into_iter().map(SparseVec::from_entries).filter(|v| !v.is_zero()));
        }
    }
    rows
}

/// The Lie algebra of derivations of `a`.
pub fn derivation_algebra(a: &Algebra) -> OperatorAlgebra {
    let n = a.dim();
    let ker = kernel_of_rows(n * n, &derivation_rows(a));
    OperatorAlgebra::from_parts(n, vec![ker]).expect("derivations form a Lie algebra")
}

/// Operators d with n(d x, y) + n(x, d y) = 0 for the diagonal form with entries `norm`.
pub fn skew_algebra(norm: &[Rational]) -> Result<OperatorAlgebra, ModelError> {
    let n = norm.len();
    if norm.iter().any(Rational::is_zero) {
        return Err(ModelError::Skeleton("the norm is degenerate".into()));
    }
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            // q_j D[j][i] + q_i D[i][j] = 0.
            let row = if i == j {
                SparseVec::single(i * n + i, FieldElem::from_rational(norm[i].clone()))
            } else {
                SparseVec::from_entries(vec![
                    (j * n + i, FieldElem::from_rational(norm[j].clone())),
                    (i * n + j, FieldElem::from_rational(norm[i].clone())),
                ])
            };
            rows.push(row);
        }
    }
    OperatorAlgebra::from_parts(n, vec![kernel_of_rows(n * n, &rows)])
}

/// L_α = {d ∈ L : d maps degree β into degree α + β}, for a grading of the space by ℤ_p^r.
pub fn induced_grading_on_maps(
    l: &OperatorAlgebra,
    degrees: &[GroupElem],
    p: u32,
) -> Result<Grading, ModelError> {
    let n = l.n;
    let r = degrees.first().map_or(0, Vec::len);
    // Entry (row, col) shifts degree by deg(row) − deg(col).
    let shift = |k: usize| -> GroupElem {
        let (row, col) = (k / n, k % n);
        degrees[row].iter().zip(&degrees[col]).map(|(a, b)| (a + p - b) % p).collect()
    };
    let mut comps: BTreeMap<GroupElem, Vec<SparseVec>> = BTreeMap::new();
    for op in &l.ops {
        let flat = flatten(op);
        let mut pieces: BTreeMap<GroupElem, Vec<(usize, FieldElem)>> = BTreeMap::new();
        for (k, c) in flat.iter() {
            pieces.entry(shift(k)).or_default().push((k, c.clone()));
        }
        for (g, entries) in pieces {
            let piece = unflatten(n, &SparseVec::from_entries(entries));
            let coords = l.coordinates(&piece).ok_or_else(|| {
                ModelError::Skeleton(format!("homogeneous part of degree {g:?} leaves the algebra"))
            })?;
            comps.entry(g).or_default().push(coords);
        }
    }
    let dim = l.dim();
    Grading::new(p, r, dim, comps.into_iter().map(|(g, vs)| (g, Subspace::span(dim, vs.iter()))))
        .map_err(|e| ModelError::Skeleton(e.to_string()))
}

/// An operator algebra on the octonions in a basis of homogeneous elements.
#[derive(Clone, Debug)]
pub struct OctonionModel {
    pub name: String,
    pub octonions: OctonionAlgebra,
    pub ops: OperatorAlgebra,
    /// Degree in ℤ₂³ of each basis element.
    pub degrees: Vec<GroupElem>,
}

impl OctonionModel {
    fn homogeneous(
        name: &str,
        octonions: OctonionAlgebra,
        l: OperatorAlgebra,
    ) -> Result<OctonionModel, ModelError> {
        let grading = induced_grading_on_maps(&l, &octonions.degrees, 2)?;
        let mut parts = Vec::new();
        let mut degrees = Vec::new();
        for (g, s) in grading.components() {
            if s.is_zero() {
                continue;
            }
            let flat: Vec<SparseVec> = s.basis().iter().map(|c| flatten(&l.operator(c))).collect();
            parts.push(Subspace::span(l.n * l.n, flat.iter()));
            degrees.extend(std::iter::repeat(g.clone()).take(s.dim()));
        }
        let ops = OperatorAlgebra::from_parts(l.n, parts)?;
        let labels = degrees
            .iter()
            .scan((Vec::new(), 0), |(prev, k), g: &GroupElem| {
                if prev != g {
                    *prev = g.clone();
                    *k = 0;
                }
                *k += 1;
                Some(format!("d{}{}{}.{}", g[0], g[1], g[2], *k - 1))
            })
            .collect();
        let mut ops = ops;
        ops.lie = ops.lie.with_labels(labels);
        Ok(OctonionModel { name: name.into(), octonions, ops, degrees })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.ops.lie
    }
}

/// Derivations of the octonions, in a homogeneous basis.
pub fn build_g2() -> Result<OctonionModel, ModelError> {
    let o = octonion_algebra();
    let der = derivation_algebra(&o.algebra);
    OctonionModel::homogeneous("G2/Z2^3", o, der)
}

/// Norm-skew operators on the octonions, in a homogeneous basis.
pub fn build_d4() -> Result<OctonionModel, ModelError> {
    let o = octonion_algebra();
    let so = skew_algebra(&o.norm)?;
    OctonionModel::homogeneous("D4/Z2^3", o, so)
}
