//! Centralizers, normalizers, Cartan subalgebras and root data.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::{kernel_of_rows, solve, Matrix, SparseVec, Subspace};
use crate::field::{FieldElem, Rational};

use super::{LieAlgebra, LieError};

/// Attempts at a generic element before giving up on a Cartan subalgebra.
const CARTAN_RETRIES: u64 = 24;

/// Rows of the linear map x ↦ R([s, x]) where R reduces modulo `modulo` (or is the identity).
fn constraint_rows(l: &LieAlgebra, s: &SparseVec, modulo: Option<&Subspace>) -> Vec<SparseVec> {
    let n = l.dim();
    let cols: Vec<SparseVec> = (0..n)
        .map(|k| {
            let v = l.bracket(s, &SparseVec::unit(k));
            match modulo {
                Some(m) => m.reduce(&v),
                None => v,
            }
        })
        .collect();
    Matrix::from_columns(n, &cols).rows().to_vec()
}

/// {x : [x, s] = 0 for all s in S}.
pub fn centralizer(l: &LieAlgebra, s: &Subspace) -> Subspace {
    let rows: Vec<SparseVec> = s.basis().iter().flat_map(|b| constraint_rows(l, b, None)).collect();
    kernel_of_rows(l.dim(), &rows)
}

/// {x : [x, s] ∈ S for all s in S}.
pub fn normalizer(l: &LieAlgebra, s: &Subspace) -> Subspace {
    let rows: Vec<SparseVec> = s.basis().iter().flat_map(|b| constraint_rows(l, b, Some(s))).collect();
    kernel_of_rows(l.dim(), &rows)
}

fn random_element(rng: &mut ChaCha8Rng, s: &Subspace) -> SparseVec {
    let coords: Vec<FieldElem> = (0..s.dim()).map(|_| FieldElem::from_int(rng.gen_range(1..=9))).collect();
    s.combine(&coords)
}

/// Whether `h` is abelian and self-normalizing.
pub fn is_cartan(l: &LieAlgebra, h: &Subspace) -> bool {
    if !l.is_abelian_subspace(h) {
        return false;
    }
    if h.is_zero() {
        return l.dim() == 0;
    }
    // For abelian H and any h0 ∈ H: H ⊆ N(H) ⊆ {x : [h0, x] ∈ H}, so a
    // right-hand side of dimension dim H already proves N(H) = H.
    let mut rng = ChaCha8Rng::seed_from_u64(0x006a_676b);
    for _ in 0..3 {
        let h0 = random_element(&mut rng, h);
        if kernel_of_rows(l.dim(), &constraint_rows(l, &h0, Some(h))).dim() == h.dim() {
            return true;
        }
    }
    &normalizer(l, h) == h
}

/// Basis indices whose adjoint action is diagonal in the basis.
pub fn diagonal_torus(l: &LieAlgebra) -> Vec<usize> {
    (0..l.dim())
        .filter(|&i| {
            (0..l.dim()).all(|k| {
                let v = l.basis_bracket(i, k);
                v.is_zero() || (v.nnz() == 1 && v.leading().is_some_and(|(j, _)| j == k))
            })
        })
        .collect()
}

/// Roots relative to a Cartan subalgebra spanned by basis vectors.
#[derive(Clone, Debug)]
pub struct RootData {
    /// Basis indices spanning the Cartan subalgebra.
    pub torus: Vec<usize>,
    /// (basis index of a root vector, its weight on the torus basis).
    pub roots: Vec<(usize, Vec<FieldElem>)>,
    /// Killing inner products (α_a, α_b), indexed like `roots`.
    inner: Vec<Vec<FieldElem>>,
}

impl RootData {
    /// Reads the roots off a diagonal torus; `None` unless every other basis vector is a root vector.
    pub fn from_diagonal_torus(l: &LieAlgebra, torus: &[usize]) -> Option<RootData> {
        let in_torus: Vec<bool> = (0..l.dim()).map(|i| torus.contains(&i)).collect();
        let roots: Vec<(usize, Vec<FieldElem>)> = (0..l.dim())
            .filter(|&k| !in_torus[k])
            .map(|k| (k, torus.iter().map(|&t| l.basis_bracket(t, k).coeff(k)).collect::<Vec<_>>()))
            .collect();
        if roots.iter().any(|(_, w)| w.iter().all(FieldElem::is_zero)) {
            return None;
        }
        // Killing form on the torus: κ(t_a, t_b) = Σ_α α(t_a) α(t_b).
        let r = torus.len();
        let gram_rows: Vec<Vec<FieldElem>> = (0..r)
            .map(|a| {
                (0..r)
                    .map(|b| roots.iter().fold(FieldElem::zero(), |acc, (_, w)| &acc + &(&w[a] * &w[b])))
                    .collect()
            })
            .collect();
        let gram = Matrix::from_dense(&gram_rows);
        // Dual vectors c_α with G c_α = α give (α, β) = α · c_β.
        let duals: Vec<SparseVec> =
            roots.iter().map(|(_, w)| solve(&gram, &SparseVec::from_dense(w))).collect::<Option<Vec<_>>>()?;
        let inner = roots
            .iter()
            .map(|(_, w)| {
                let wv = SparseVec::from_dense(w);
                duals.iter().map(|d| wv.dot(d)).collect()
            })
            .collect();
        Some(RootData { torus: torus.to_vec(), roots, inner })
    }

    pub fn rank(&self) -> usize {
        self.torus.len()
    }

    pub fn inner(&self, a: usize, b: usize) -> &FieldElem {
        &self.inner[a][b]
    }

    /// Index of the root −α for each root α.
    pub fn negatives(&self) -> Vec<Option<usize>> {
        let pos: HashMap<&[FieldElem], usize> =
            self.roots.iter().enumerate().map(|(a, (_, w))| (w.as_slice(), a)).collect();
        self.roots
            .iter()
            .map(|(_, w)| {
                let neg: Vec<FieldElem> = w.iter().map(|c| -c).collect();
                pos.get(neg.as_slice()).copied()
            })
            .collect()
    }

    /// Distinct squared lengths (α, α) with their multiplicities, shortest first.
    pub fn norm_classes(&self) -> Vec<(Rational, usize)> {
        let mut classes: Vec<(Rational, usize)> = Vec::new();
        for a in 0..self.roots.len() {
            let v = self.inner[a][a].as_rational().cloned().expect("root norms are rational");
            match classes.iter_mut().find(|(w, _)| *w == v) {
                Some((_, c)) => *c += 1,
                None => classes.push((v, 1)),
            }
        }
        classes.sort();
        classes
    }
}

/// A Cartan subalgebra, with its roots when it is split and spanned by basis vectors.
#[derive(Clone, Debug)]
pub struct CartanInfo {
    pub subspace: Subspace,
    pub roots: Option<RootData>,
}

/// Finds a Cartan subalgebra: the diagonal torus if it qualifies, else the centralizer of a random element.
pub fn find_cartan(l: &LieAlgebra, seed: u64) -> Result<CartanInfo, LieError> {
    let torus = diagonal_torus(l);
    if !torus.is_empty() {
        let h = Subspace::coordinate(l.dim(), torus.iter().copied());
        if is_cartan(l, &h) {
            let roots = RootData::from_diagonal_torus(l, &torus);
            return Ok(CartanInfo { subspace: h, roots });
        }
    }
    let full = Subspace::full(l.dim());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..CARTAN_RETRIES {
        let h0 = random_element(&mut rng, &full);
        let c = kernel_of_rows(l.dim(), &constraint_rows(l, &h0, None));
        if is_cartan(l, &c) {
            return Ok(CartanInfo { subspace: c, roots: None });
        }
    }
    Err(LieError::NoCartan(CARTAN_RETRIES))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::algebra::tests::sl2;

    #[test]
    fn sl2_centralizer_normalizer() {
        let l = sl2();
        let h = Subspace::coordinate(3, [2]);
        let e = Subspace::coordinate(3, [0]);
        assert_eq!(centralizer(&l, &h), h);
        assert_eq!(normalizer(&l, &e), Subspace::coordinate(3, [0, 2]));
        assert!(centralizer(&l, &e).is_subspace_of(&normalizer(&l, &e)));
        assert!(is_cartan(&l, &h));
        assert!(!is_cartan(&l, &e));
    }

    #[test]
    fn sl2_roots() {
        let l = sl2();
        assert_eq!(diagonal_torus(&l), vec![2]);
        let c = find_cartan(&l, 0).unwrap();
        let rd = c.roots.unwrap();
        assert_eq!(rd.rank(), 1);
        assert_eq!(rd.negatives(), vec![Some(1), Some(0)]);
        // (α, α) = 2²/8 with κ(h, h) = 8.
        assert_eq!(rd.norm_classes(), vec![(Rational::new(1, 2), 2)]);
    }
}
