//! Grading automorphisms: construction, certification of brackets, orders,
//! commutation and faithfulness, and the gradings they induce.

use rayon::prelude::*;

use crate::exactla::{
    determinant, eigenspace, inverse, simultaneous_eigenspaces, EchelonBasis, LinAlgError, Matrix, SparseVec,
    Subspace,
};
use crate::field::{Conductor, FieldElem};
use crate::liecore::LieAlgebra;
use crate::verify::{group_elements, Grading, GroupElem};

/// Largest power tried when reporting the actual order of a failing generator.
const ORDER_SEARCH_LIMIT: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutoError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("{name} does not preserve the bracket of basis pair ({i}, {j})")]
    NotAutomorphism { name: String, i: usize, j: usize },
    #[error("degree-1 action does not extend: {reason}")]
    Extension { reason: String, witness: Option<(usize, usize)> },
    #[error("group check failed: {}", .0.join("; "))]
    Group(Vec<String>),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// A linear map of the algebra with its claimed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub name: String,
    pub matrix: Matrix,
    pub order: u32,
}

/// First basis pair (i < j) with φ[x_i, x_j] ≠ [φ x_i, φ x_j].
pub fn bracket_violation(l: &LieAlgebra, m: &Matrix) -> Option<(usize, usize)> {
    let n = l.dim();
    let images = m.columns();
    (0..n).into_par_iter().find_map_first(|i| {
        (i + 1..n)
            .find(|&j| m.apply(l.basis_bracket(i, j)) != l.bracket(&images[i], &images[j]))
            .map(|j| (i, j))
    })
}

fn certify(l: &LieAlgebra, name: &str, m: Matrix, order: u32) -> Result<Automorphism, AutoError> {
    if m.nrows() != l.dim() || !m.is_square() {
        return Err(AutoError::Invalid(format!("{name} has shape {}x{}", m.nrows(), m.ncols())));
    }
    if let Some((i, j)) = bracket_violation(l, &m) {
        return Err(AutoError::NotAutomorphism { name: name.into(), i, j });
    }
    Ok(Automorphism { name: name.into(), matrix: m, order })
}

/// The primitive p-th root of unity ζ_p^k (−1 for p = 2).
pub fn root_of_unity(p: u32, k: i64) -> Result<FieldElem, AutoError> {
    let m = Conductor::for_prime(p).map_err(|e| AutoError::Invalid(e.to_string()))?;
    if p == 2 {
        return Ok(FieldElem::from_int(if k % 2 == 0 { 1 } else { -1 }));
    }
    Ok(FieldElem::root_of_unity(m, k))
}

/// The diagonal map ζ^{deg i} on basis vector i.
pub fn scalar_auto(
    l: &LieAlgebra,
    degrees: &[u32],
    p: u32,
    zeta: &FieldElem,
) -> Result<Automorphism, AutoError> {
    if degrees.len() != l.dim() {
        return Err(AutoError::Invalid("degree map has the wrong length".into()));
    }
    let m = Matrix::diagonal(degrees.iter().map(|&d| zeta.pow(d)).collect());
    let order = if zeta.is_one() { 1 } else { p };
    certify(l, "sigma1", m, order)
}

/// b = diag(ζ^{jt}) and the cyclic shift c: e_j ↦ e_{j+1}, both of determinant 1.
pub fn standard_bc(p: u32, t: u32) -> Result<(Matrix, Matrix), AutoError> {
    if p != 3 && p != 5 {
        return Err(AutoError::Invalid(format!("p = {p} is not 3 or 5")));
    }
    if t == 0 || t >= p {
        return Err(AutoError::Invalid(format!("twist {t} is not in 1..{p}")));
    }
    let n = p as usize;
    let b = Matrix::diagonal((0..p).map(|j| root_of_unity(p, (j * t) as i64)).collect::<Result<_, _>>()?);
    let mut c = Matrix::zeros(n, n);
    for j in 0..n {
        c.set((j + 1) % n, j, FieldElem::one());
    }
    assert!(determinant(&b).is_one() && determinant(&c).is_one(), "b and c lie in SL");
    Ok((b, c))
}

/// Indices of each degree, in increasing order.
fn blocks(degrees: &[u32], p: u32) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); p as usize];
    for (i, &d) in degrees.iter().enumerate() {
        out[d as usize].push(i);
    }
    out
}

fn embed_block(block: &Matrix, idx: &[usize], images: &mut [SparseVec]) {
    for (c, &gc) in idx.iter().enumerate() {
        images[gc] = block.column(c).remap(|r| idx[r]);
    }
}

/// Images of g_target, determined by φ[x, y] = [φx, φy] over x ∈ g_1, y ∈ g_{target−1}.
fn propagate(
    l: &LieAlgebra,
    blk: &[Vec<usize>],
    images: &[SparseVec],
    target: usize,
) -> Result<Vec<SparseVec>, AutoError> {
    let p = blk.len();
    let prev = (target + p - 1) % p;
    let idx = &blk[target];
    let local: std::collections::HashMap<usize, usize> =
        idx.iter().enumerate().map(|(k, &g)| (g, k)).collect();
    let mut span = EchelonBasis::new(idx.len());
    let mut sources = Vec::new();
    let mut targets = Vec::new();
    'outer: for &x in &blk[1] {
        for &y in &blk[prev] {
            let v = l.basis_bracket(x, y);
            if v.is_zero() {
                continue;
            }
            let lv = v.remap(|g| local[&g]);
            if span.insert(&lv).is_some() {
                sources.push(lv);
                targets.push(l.bracket(&images[x], &images[y]));
                if sources.len() == idx.len() {
                    break 'outer;
                }
            }
        }
    }
    if sources.len() < idx.len() {
        return Err(AutoError::Extension {
            reason: format!("degree 1 does not generate degree {target}"),
            witness: None,
        });
    }
    let v_inv = inverse(&Matrix::from_columns(idx.len(), &sources)).expect("independent sources");
    Ok((0..idx.len())
        .map(|k| {
            let mut out = SparseVec::zero();
            for (m, c) in v_inv.column(k).iter() {
                out = out.add_scaled(c, &targets[m]);
            }
            out
        })
        .collect())
}

fn extend_matrix(
    l: &LieAlgebra,
    degrees: &[u32],
    p: u32,
    action1: &Matrix,
    action0: &Matrix,
    check_degree_zero: bool,
) -> Result<Matrix, AutoError> {
    let n = l.dim();
    let blk = blocks(degrees, p);
    if action1.nrows() != blk[1].len() || action0.nrows() != blk[0].len() {
        return Err(AutoError::Invalid("block actions do not match the component dimensions".into()));
    }
    let mut images = vec![SparseVec::zero(); n];
    embed_block(action0, &blk[0], &mut images);
    embed_block(action1, &blk[1], &mut images);
    for d in 2..p as usize {
        let cols = propagate(l, &blk, &images, d)?;
        for (k, &g) in blk[d].iter().enumerate() {
            images[g] = cols[k].clone();
        }
    }
    if check_degree_zero {
        let cols = propagate(l, &blk, &images, 0)?;
        if let Some(k) = (0..blk[0].len()).find(|&k| cols[k] != images[blk[0][k]]) {
            return Err(AutoError::Extension {
                reason: format!(
                    "propagated action on degree 0 disagrees with the given one at x{}",
                    blk[0][k]
                ),
                witness: None,
            });
        }
    }
    Ok(Matrix::from_columns(n, &images))
}

/// The automorphism with prescribed actions on g_0 and g_1, extended through brackets and certified.
pub fn extend_from_degree1(
    l: &LieAlgebra,
    degrees: &[u32],
    p: u32,
    name: &str,
    action1: &Matrix,
    action0: &Matrix,
) -> Result<Automorphism, AutoError> {
    let m = extend_matrix(l, degrees, p, action1, action0, true)?;
    match bracket_violation(l, &m) {
        Some((i, j)) => Err(AutoError::Extension {
            reason: format!("{name} does not preserve [x{i}, x{j}]"),
            witness: Some((i, j)),
        }),
        None => Ok(Automorphism { name: name.into(), matrix: m, order: p }),
    }
}

/// The same propagation without any certification; used to exhibit failures downstream.
pub fn extend_from_degree1_unchecked(
    l: &LieAlgebra,
    degrees: &[u32],
    p: u32,
    name: &str,
    action1: &Matrix,
    action0: &Matrix,
) -> Result<Automorphism, AutoError> {
    let m = extend_matrix(l, degrees, p, action1, action0, false)?;
    Ok(Automorphism { name: name.into(), matrix: m, order: p })
}

/// Generators of an elementary abelian p-group acting on an algebra.
#[derive(Clone, Debug)]
pub struct GradingGroupSpec {
    pub p: u32,
    pub generators: Vec<Automorphism>,
}

impl GradingGroupSpec {
    pub fn r(&self) -> usize {
        self.generators.len()
    }
}

/// Outcome of each group condition, with the failures described.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupReport {
    /// (generator, actual order if found below the search limit) for generators not of order p.
    pub order_failures: Vec<(String, Option<u32>)>,
    pub non_commuting: Vec<(String, String)>,
    /// Exponents of a nontrivial product equal to the identity.
    pub dependency: Option<GroupElem>,
}

impl GroupReport {
    pub fn passed(&self) -> bool {
        self.order_failures.is_empty() && self.non_commuting.is_empty() && self.dependency.is_none()
    }

    pub fn messages(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, ord) in &self.order_failures {
            out.push(match ord {
                Some(k) => format!("order check: {name} has order {k}"),
                None => format!("order check: {name} has order above {ORDER_SEARCH_LIMIT}"),
            });
        }
        for (a, b) in &self.non_commuting {
            out.push(format!("{a} and {b} do not commute"));
        }
        if let Some(e) = &self.dependency {
            out.push(format!("the product with exponents {e:?} is the identity"));
        }
        out
    }
}

/// Smallest k ≥ 1 with M^k = I, up to the search limit.
pub fn matrix_order(m: &Matrix) -> Option<u32> {
    let mut acc = m.clone();
    for k in 1..=ORDER_SEARCH_LIMIT {
        if acc.is_identity() {
            return Some(k);
        }
        acc = acc.mul(m);
    }
    None
}

/// Checks orders, pairwise commutation and faithfulness of all p^r products.
pub fn check_group(spec: &GradingGroupSpec) -> Result<GroupReport, AutoError> {
    let p = spec.p;
    let gens = &spec.generators;
    let mut report = GroupReport::default();
    for g in gens {
        let exact = !g.matrix.is_identity() && g.matrix.pow(p).is_identity();
        if !exact {
            report.order_failures.push((g.name.clone(), matrix_order(&g.matrix)));
        }
    }
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            if gens[a].matrix.mul(&gens[b].matrix) != gens[b].matrix.mul(&gens[a].matrix) {
                report.non_commuting.push((gens[a].name.clone(), gens[b].name.clone()));
            }
        }
    }
    if report.order_failures.is_empty() && report.non_commuting.is_empty() {
        let powers: Vec<Vec<Matrix>> = gens
            .iter()
            .map(|g| {
                let mut v = vec![Matrix::identity(g.matrix.nrows())];
                for k in 1..p as usize {
                    let next = v[k - 1].mul(&g.matrix);
                    v.push(next);
                }
                v
            })
            .collect();
        report.dependency = group_elements(p, gens.len()).into_par_iter().skip(1).find_map_first(|e| {
            let prod = e.iter().enumerate().fold(None, |acc: Option<Matrix>, (i, &k)| {
                if k == 0 {
                    acc
                } else {
                    Some(acc.map_or_else(|| powers[i][k as usize].clone(), |m| m.mul(&powers[i][k as usize])))
                }
            });
            prod.is_some_and(|m| m.is_identity()).then_some(e)
        });
    }
    Ok(report)
}

/// Joint eigenspaces: the component at (k₁, …, k_r) has eigenvalue ζ^{k_i} for generator i.
pub fn grading_from_group(spec: &GradingGroupSpec) -> Result<Grading, AutoError> {
    let report = check_group(spec)?;
    if !report.passed() {
        return Err(AutoError::Group(report.messages()));
    }
    let ops: Vec<Matrix> = spec.generators.iter().map(|g| g.matrix.clone()).collect();
    let n = ops.first().map_or(0, Matrix::nrows);
    let zeta = root_of_unity(spec.p, 1)?;
    let decomposition = simultaneous_eigenspaces(&ops, spec.p, &zeta)?;
    Grading::new(spec.p, spec.r(), n, decomposition).map_err(|e| AutoError::Invalid(e.to_string()))
}

/// Intersection of the fixed spaces; bracket closure is checked.
pub fn fixed_subalgebra(l: &LieAlgebra, autos: &[Automorphism]) -> Result<Subspace, AutoError> {
    let mut s = Subspace::full(l.dim());
    for a in autos {
        s = s.intersect(&eigenspace(&a.matrix, &FieldElem::one()));
    }
    if !l.is_subalgebra(&s) {
        return Err(AutoError::Invalid("fixed points are not closed under the bracket".into()));
    }
    Ok(s)
}

/// The map induced on a subalgebra, in the coordinates of its stored basis.
pub fn restrict(a: &Automorphism, s: &Subspace) -> Result<Automorphism, AutoError> {
    let cols: Vec<SparseVec> = s
        .basis()
        .iter()
        .map(|v| {
            s.coordinates(&a.matrix.apply(v))
                .map(|c| SparseVec::from_dense(&c))
                .ok_or_else(|| AutoError::Invalid(format!("{} does not preserve the subalgebra", a.name)))
        })
        .collect::<Result<_, _>>()?;
    Ok(Automorphism { name: a.name.clone(), matrix: Matrix::from_columns(s.dim(), &cols), order: a.order })
}

/// Conjugation by the k-th grading character of an n-dimensional graded space, on an operator algebra.
pub fn character_auto(
    ops: &crate::models::OperatorAlgebra,
    degrees: &[GroupElem],
    k: usize,
) -> Result<Automorphism, AutoError> {
    let chi = Matrix::diagonal(
        degrees.iter().map(|g| FieldElem::from_int(if g[k] % 2 == 0 { 1 } else { -1 })).collect(),
    );
    let cols: Vec<SparseVec> = ops
        .ops
        .iter()
        .map(|d| {
            ops.coordinates(&chi.mul(d).mul(&chi))
                .ok_or_else(|| AutoError::Invalid("character does not normalize the operator algebra".into()))
        })
        .collect::<Result<_, _>>()?;
    certify(&ops.lie, &format!("chi{}", k + 1), Matrix::from_columns(ops.dim(), &cols), 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_bc_examples() {
        let (b, c) = standard_bc(5, 2).unwrap();
        let xi = |k| FieldElem::root_of_unity(Conductor::for_prime(5).unwrap(), k);
        let diag: Vec<FieldElem> = (0..5).map(|j| b.get(j, j)).collect();
        assert_eq!(diag, vec![xi(0), xi(2), xi(4), xi(1), xi(3)]);
        assert_eq!(c.get(1, 0), FieldElem::one());
        assert_eq!(c.get(0, 4), FieldElem::one());
        for (p, t) in [(5, 1), (5, 2), (3, 1), (3, 2)] {
            let (b, c) = standard_bc(p, t).unwrap();
            let z = root_of_unity(p, t as i64).unwrap();
            assert_eq!(b.mul(&c), c.mul(&b).scale(&z));
        }
        assert!(standard_bc(7, 1).is_err());
        assert!(standard_bc(5, 0).is_err());
    }

    #[test]
    fn dependent_generators_fail_faithfulness() {
        let (b, _) = standard_bc(5, 1).unwrap();
        let g = |name: &str, m: Matrix| Automorphism { name: name.into(), matrix: m, order: 5 };
        let spec = GradingGroupSpec { p: 5, generators: vec![g("s", b.clone()), g("s2", b.mul(&b))] };
        let report = check_group(&spec).unwrap();
        assert!(report.order_failures.is_empty() && report.non_commuting.is_empty());
        // s · (s²)² = s⁵ = 1 is the first dependency in lexicographic order.
        assert_eq!(report.dependency, Some(vec![1, 2]));
        let (b, c) = standard_bc(5, 1).unwrap();
        let spec = GradingGroupSpec { p: 5, generators: vec![g("b", b), g("c", c)] };
        assert_eq!(check_group(&spec).unwrap().non_commuting.len(), 1);
    }

    #[test]
    fn order_of_scaled_cycle() {
        let (_, c) = standard_bc(5, 1).unwrap();
        assert_eq!(matrix_order(&c), Some(5));
        assert_eq!(matrix_order(&c.scale(&FieldElem::from_int(-1))), Some(10));
        assert_eq!(matrix_order(&c.scale(&FieldElem::from_int(2))), None);
    }
}
