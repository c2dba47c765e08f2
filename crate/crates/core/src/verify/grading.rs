//! Group gradings of an algebra by ℤ_p^r.

use std::collections::BTreeMap;

use crate::exactla::{EchelonBasis, Subspace};

use super::VerifyError;

/// An element of ℤ_p^r as its r residues.
pub type GroupElem = Vec<u32>;

/// All elements of ℤ_p^r in lexicographic order.
pub fn group_elements(p: u32, r: usize) -> Vec<GroupElem> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|pre: GroupElem| (0..p).map(move |k| [pre.clone(), vec![k]].concat()))
            .collect();
    }
    out
}

pub fn add(p: u32, a: &[u32], b: &[u32]) -> GroupElem {
    a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
}

pub fn scale(p: u32, k: u32, a: &[u32]) -> GroupElem {
    a.iter().map(|x| (k * x) % p).collect()
}

pub fn neg(p: u32, a: &[u32]) -> GroupElem {
    a.iter().map(|x| (p - x) % p).collect()
}

pub fn is_zero(a: &[u32]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// A decomposition L = ⊕ L_α over α ∈ ℤ_p^r, with every group element present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    p: u32,
    r: usize,
    ambient: usize,
    components: BTreeMap<GroupElem, Subspace>,
}

impl Grading {
    /// Missing group elements get the zero subspace; the sum must be direct and fill the space.
    pub fn new(
        p: u32,
        r: usize,
        ambient: usize,
        comps: impl IntoIterator<Item = (GroupElem, Subspace)>,
    ) -> Result<Grading, VerifyError> {
        let mut components: BTreeMap<GroupElem, Subspace> =
            group_elements(p, r).into_iter().map(|g| (g, Subspace::zero(ambient))).collect();
        for (g, s) in comps {
            if g.len() != r || g.iter().any(|&k| k >= p) {
                return Err(VerifyError::Malformed(format!("{g:?} is not an element of Z{p}^{r}")));
            }
            if s.ambient() != ambient {
                return Err(VerifyError::Malformed(format!(
                    "component {g:?} lives in dimension {}",
                    s.ambient()
                )));
            }
            components.insert(g, s);
        }
        let total: usize = components.values().map(Subspace::dim).sum();
        let mut span = EchelonBasis::new(ambient);
        for s in components.values() {
            for v in s.basis() {
                span.insert(v);
            }
        }
        if total != ambient || span.rank() != ambient {
            return Err(VerifyError::NotDirect { total, rank: span.rank(), ambient });
        }
        Ok(Grading { p, r, ambient, components })
    }

    /// Everything in the zero component.
    pub fn trivial(p: u32, r: usize, ambient: usize) -> Grading {
        Grading::new(p, r, ambient, [(vec![0; r], Subspace::full(ambient))]).expect("full space is a grading")
    }

    /// The grading by a degree map on basis vectors.
    pub fn from_degrees(p: u32, r: usize, degrees: &[GroupElem]) -> Result<Grading, VerifyError> {
        let mut idx: BTreeMap<GroupElem, Vec<usize>> = BTreeMap::new();
        for (i, g) in degrees.iter().enumerate() {
            idx.entry(g.clone()).or_default().push(i);
        }
        let n = degrees.len();
        Grading::new(p, r, n, idx.into_iter().map(|(g, v)| (g, Subspace::coordinate(n, v))))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn component(&self, g: &[u32]) -> &Subspace {
        &self.components[g]
    }

    pub fn components(&self) -> impl Iterator<Item = (&GroupElem, &Subspace)> {
        self.components.iter()
    }

    /// Number of nonzero components of each dimension, over α ≠ 0.
    pub fn dim_table(&self) -> BTreeMap<usize, usize> {
        let mut t = BTreeMap::new();
        for (g, s) in &self.components {
            if !is_zero(g) && !s.is_zero() {
                *t.entry(s.dim()).or_insert(0) += 1;
            }
        }
        t
    }

    /// The same subspaces with labels moved by `relabel`, which must be a bijection.
    pub fn relabeled(
        &self,
        mut relabel: impl FnMut(&GroupElem) -> GroupElem,
    ) -> Result<Grading, VerifyError> {
        let comps: Vec<(GroupElem, Subspace)> =
            self.components.iter().map(|(g, s)| (relabel(g), s.clone())).collect();
        let mut seen: Vec<&GroupElem> = comps.iter().map(|c| &c.0).collect();
        seen.sort();
        seen.dedup();
        if seen.len() != comps.len() {
            return Err(VerifyError::Malformed("relabeling is not a bijection".into()));
        }
        Grading::new(self.p, self.r, self.ambient, comps)
    }

    /// The degree of each basis vector, when every component is spanned by basis vectors.
    pub fn basis_degrees(&self) -> Option<Vec<GroupElem>> {
        let mut out = vec![None; self.ambient];
        for (g, s) in &self.components {
            for (v, &pv) in s.basis().iter().zip(s.pivots()) {
                if v.nnz() != 1 {
                    return None;
                }
                out[pv] = Some(g.clone());
            }
        }
        out.into_iter().collect()
    }
}
