//! Decomposition of a semisimple Lie algebra into simple ideals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::{inverse, kernel_of_rows, EchelonBasis, Matrix, SparseVec, Subspace};
use crate::field::FieldElem;

use super::cartan::{find_cartan, RootData};
use super::killing::killing;
use super::{LieAlgebra, LieError};

/// Largest dimension for which the centroid is computed directly.
const CENTROID_MAX_DIM: usize = 64;

/// Simple ideals of a semisimple algebra, in order of their smallest pivot.
pub fn simple_ideals(l: &LieAlgebra) -> Result<Vec<Subspace>, LieError> {
    if l.dim() == 0 {
        return Ok(Vec::new());
    }
    if !killing(l).is_nondegenerate() {
        return Err(LieError::DegenerateKilling);
    }
    let cartan = find_cartan(l, 0)?;
    match &cartan.roots {
        Some(rd) => ideals_from_roots(l, rd),
        None => match centroid_dimension(l, 0)? {
            Centroid::Dim(1) => Ok(vec![Subspace::full(l.dim())]),
            Centroid::ProperIdeal(_) | Centroid::Dim(_) => Err(LieError::CannotSplit),
        },
    }
}

/// Connected components of the graph on roots with edges where (α, β) ≠ 0.
fn ideals_from_roots(l: &LieAlgebra, rd: &RootData) -> Result<Vec<Subspace>, LieError> {
    let m = rd.roots.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for a in 0..m {
        for b in a + 1..m {
            if !rd.inner(a, b).is_zero() {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
    }
    let neg = rd.negatives();
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for a in 0..m {
        let r = find(&mut parent, a);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, g)) => g.push(a),
            None => groups.push((r, vec![a])),
        }
    }
    let n = l.dim();
    let mut ideals: Vec<Subspace> = groups
        .into_iter()
        .map(|(_, members)| {
            let mut e = EchelonBasis::new(n);
            for &a in &members {
                let xa = SparseVec::unit(rd.roots[a].0);
                e.insert(&xa);
                if let Some(b) = neg[a] {
                    e.insert(&l.bracket(&xa, &SparseVec::unit(rd.roots[b].0)));
                }
            }
            e.into_subspace()
        })
        .collect();
    ideals.sort_by_key(|s| s.pivots().first().copied());
    let total: usize = ideals.iter().map(Subspace::dim).sum();
    if total != n || !ideals.iter().all(|s| l.is_ideal(s)) {
        return Err(LieError::CannotSplit);
    }
    Ok(ideals)
}

/// Outcome of the centroid computation.
#[derive(Clone, Debug)]
pub enum Centroid {
    /// The module generated by a random element is a proper ideal.
    ProperIdeal(Subspace),
    /// Dimension of {T : T[x, y] = [x, T y]}.
    Dim(usize),
}

/// Dimension of the centroid of a perfect algebra; 1 exactly when it is absolutely simple.
///
/// A centroid element T is fixed by y = T x0 once the words in ad x_i applied
/// to x0 span L, so only the n coordinates of y are unknown.
pub fn centroid_dimension(l: &LieAlgebra, seed: u64) -> Result<Centroid, LieError> {
    let n = l.dim();
    if n > CENTROID_MAX_DIM {
        return Err(LieError::TooLarge(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x0 =
        SparseVec::from_dense(&(0..n).map(|_| FieldElem::from_int(rng.gen_range(1..=9))).collect::<Vec<_>>());
    let ads: Vec<Matrix> = (0..n).map(|i| l.ad_basis(i)).collect();

    // Spin x0: u_k = W_k x0 with W_k a product of ad x_i.
    let mut span = EchelonBasis::new(n);
    let mut us: Vec<SparseVec> = Vec::new();
    let mut words: Vec<Matrix> = Vec::new();
    span.insert(&x0);
    us.push(x0.clone());
    words.push(Matrix::identity(n));
    let mut next = 0;
    while next < us.len() && us.len() < n {
        for (i, ad) in ads.iter().enumerate() {
            let v = l.bracket_basis_left(i, &us[next]);
            if span.insert(&v).is_some() {
                us.push(v);
                words.push(ad.mul(&words[next]));
                if us.len() == n {
                    break;
                }
            }
        }
        next += 1;
    }
    if us.len() < n {
        return Ok(Centroid::ProperIdeal(span.into_subspace()));
    }
    let u_inv = inverse(&Matrix::from_columns(n, &us)).expect("spanning set is a basis");

    // T(ad x_i u_k) = ad x_i T(u_k), with ad x_i u_k = Σ_j r_j u_j.
    let mut constraints = EchelonBasis::new(n);
    'outer: for ad in &ads {
        for (k, wk) in words.iter().enumerate() {
            let r = u_inv.apply(&ad.apply(&us[k]));
            let mut lhs = ad.mul(wk).scale(&FieldElem::from_int(-1));
            for (j, c) in r.iter() {
                lhs = lhs.add_scaled(c, &words[j]);
            }
            for row in lhs.rows() {
                constraints.insert(row);
                // The identity is always central, so rank n − 1 is final.
                if constraints.rank() == n - 1 {
                    break 'outer;
                }
            }
        }
    }
    Ok(Centroid::Dim(kernel_of_rows(n, constraints.rows()).dim()))
}
