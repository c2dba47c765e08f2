//! Graded tensor skeletons: components built from exterior powers of small
//! spaces, with degree 0 the sum of the special linear algebras of the spaces.

use std::fmt;

use crate::exactla::{inverse, Matrix, SparseVec};
use crate::field::FieldElem;

use super::exterior::{binomial, compound, pairing, product, product_exists, subsets, SlBasis};
use super::ModelError;

/// One tensor factor of a graded component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    /// Λ^k of a base space.
    Ext { space: usize, k: usize },
    /// Symmetric square of a base space.
    Sym2 { space: usize },
}

/// Where an unknown bracket scalar sends g_i × g_j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SlotTarget {
    /// The component of degree i + j.
    Component,
    /// The sl summand of the given space inside degree 0.
    Sl(usize),
}

/// An unknown scalar multiplying the invariant map g_i × g_j → target (i ≤ j).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScalarSlot {
    pub i: u32,
    pub j: u32,
    pub target: SlotTarget,
}

impl fmt::Display for ScalarSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.target {
            SlotTarget::Component => write!(f, "({},{})", self.i, self.j),
            SlotTarget::Sl(s) => write!(f, "({},{})->sl{}", self.i, self.j, s + 1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TensorSkeleton {
    pub name: String,
    pub p: u32,
    pub spaces: Vec<(String, usize)>,
    /// Factors of g_d for d = 1, …, p − 1 (index d − 1).
    pub components: Vec<Vec<Factor>>,
    /// Slots fixed to 1, in priority order; missing slots are skipped.
    pub gauge: Vec<ScalarSlot>,
}

impl TensorSkeleton {
    fn factor_dim(&self, f: &Factor) -> usize {
        match *f {
            Factor::Ext { space, k } => binomial(self.spaces[space].1, k),
            Factor::Sym2 { space } => {
                let n = self.spaces[space].1;
                n * (n + 1) / 2
            }
        }
    }

    /// Dimensions of g_0, …, g_{p−1} computed from the formal expressions.
    pub fn component_dims(&self) -> Vec<usize> {
        let g0 = self.spaces.iter().map(|(_, n)| n * n - 1).sum();
        std::iter::once(g0)
            .chain(self.components.iter().map(|fs| fs.iter().map(|f| self.factor_dim(f)).product()))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.component_dims().iter().sum()
    }

    /// The formal expression of g_d, e.g. "V1 ⊗ Λ²V2".
    pub fn describe(&self, d: u32) -> String {
        if d == 0 {
            return self.spaces.iter().map(|(n, _)| format!("sl({n})")).collect::<Vec<_>>().join(" ⊕ ");
        }
        let sup = |k: usize| ["⁰", "¹", "²", "³", "⁴", "⁵"].get(k).copied().unwrap_or("?");
        self.components[d as usize - 1]
            .iter()
            .map(|f| match *f {
                Factor::Ext { space, k: 1 } => self.spaces[space].0.clone(),
                Factor::Ext { space, k } => format!("Λ{}{}", sup(k), self.spaces[space].0),
                Factor::Sym2 { space } => format!("S²{}", self.spaces[space].0),
            })
            .collect::<Vec<_>>()
            .join(" ⊗ ")
    }

    /// Exterior degrees of g_d, one per space in order, if it has that shape.
    fn powers(&self, d: u32) -> Result<Vec<usize>, ModelError> {
        let fs = &self.components[d as usize - 1];
        if fs.len() != self.spaces.len() {
            return Err(ModelError::Skeleton(format!("g{d} does not have one factor per space")));
        }
        fs.iter()
            .enumerate()
            .map(|(s, f)| match *f {
                Factor::Ext { space, k } if space == s => Ok(k),
                _ => Err(ModelError::Skeleton(format!("g{d} is not a product of exterior powers"))),
            })
            .collect()
    }
}

/// Coordinates of a skeleton: basis layout and the bracket pieces.
#[derive(Clone, Debug)]
pub struct Layout {
    pub p: u32,
    pub dims: Vec<usize>,
    pub offsets: Vec<usize>,
    sl: Vec<SlBasis>,
    sl_offsets: Vec<usize>,
    ns: Vec<usize>,
    powers: Vec<Vec<usize>>,
    monomials: Vec<Vec<Vec<u32>>>,
    /// Position of each mask within Λ^k of each space, per degree: [d][s][mask].
    mask_pos: Vec<Vec<Vec<usize>>>,
    pub slots: Vec<ScalarSlot>,
}

/// A basis element of the skeleton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Elem<'a> {
    Sl { space: usize, k: usize },
    Tensor { degree: u32, masks: &'a [u32] },
}

impl Layout {
    pub fn new(skel: &TensorSkeleton) -> Result<Layout, ModelError> {
        let p = skel.p;
        if skel.components.len() + 1 != p as usize {
            return Err(ModelError::Skeleton(format!("expected {} nonzero degrees", p - 1)));
        }
        let ns: Vec<usize> = skel.spaces.iter().map(|s| s.1).collect();
        let sl: Vec<SlBasis> = ns.iter().map(|&n| SlBasis::new(n)).collect();
        let mut sl_offsets = vec![0];
        for b in &sl {
            sl_offsets.push(sl_offsets.last().unwrap() + b.dim());
        }
        let mut powers = vec![vec![0; ns.len()]];
        let mut monomials = vec![Vec::new()];
        let mut mask_pos = vec![Vec::new()];
        for d in 1..p {
            let pw = skel.powers(d)?;
            // Mixed radix with the first space slowest.
            let mut basis: Vec<Vec<u32>> = vec![Vec::new()];
            let mut pos = Vec::new();
            for (s, &k) in pw.iter().enumerate() {
                let subs = subsets(ns[s], k);
                let mut table = vec![usize::MAX; 1 << ns[s]];
                for (i, &m) in subs.iter().enumerate() {
                    table[m as usize] = i;
                }
                pos.push(table);
                basis = basis
                    .into_iter()
                    .flat_map(|pre| {
                        subs.iter().map(move |&m| {
                            let mut v = pre.clone();
                            v.push(m);
                            v
                        })
                    })
                    .collect();
            }
            powers.push(pw);
            monomials.push(basis);
            mask_pos.push(pos);
        }
        let dims = skel.component_dims();
        let mut offsets = vec![0];
        for d in &dims {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut layout =
            Layout { p, dims, offsets, sl, sl_offsets, ns, powers, monomials, mask_pos, slots: Vec::new() };
        layout.slots = layout.derive_slots();
        Ok(layout)
    }

    pub fn total_dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn degree_of(&self, idx: usize) -> u32 {
        (self.offsets.partition_point(|&o| o <= idx) - 1) as u32
    }

    pub fn degrees(&self) -> Vec<u32> {
        (0..self.total_dim()).map(|i| self.degree_of(i)).collect()
    }

    fn elem(&self, idx: usize) -> Elem<'_> {
        let d = self.degree_of(idx);
        let local = idx - self.offsets[d as usize];
        if d == 0 {
            let space = self.sl_offsets.partition_point(|&o| o <= local) - 1;
            Elem::Sl { space, k: local - self.sl_offsets[space] }
        } else {
            Elem::Tensor { degree: d, masks: &self.monomials[d as usize][local] }
        }
    }

    fn tensor_index(&self, d: u32, masks: &[u32]) -> usize {
        let mut local = 0;
        for (s, &m) in masks.iter().enumerate() {
            let radix = binomial(self.ns[s], self.powers[d as usize][s]);
            local = local * radix + self.mask_pos[d as usize][s][m as usize];
        }
        self.offsets[d as usize] + local
    }

    fn sl_index(&self, space: usize, k: usize) -> usize {
        self.offsets[0] + self.sl_offsets[space] + k
    }

    pub fn labels(&self, skel: &TensorSkeleton) -> Vec<String> {
        (0..self.total_dim())
            .map(|idx| match self.elem(idx) {
                Elem::Sl { space, k } => format!("sl({}).{}", skel.spaces[space].0, self.sl[space].label(k)),
                Elem::Tensor { degree, masks } => {
                    let parts: Vec<String> = masks
                        .iter()
                        .map(|&m| (0..32).filter(|b| m & (1 << b) != 0).map(|b| b.to_string()).collect())
                        .collect();
                    format!("g{degree}:{}", parts.join("|"))
                }
            })
            .collect()
    }

    /// Slots with a nonzero antisymmetric invariant map.
    fn derive_slots(&self) -> Vec<ScalarSlot> {
        let p = self.p;
        let mut out = Vec::new();
        for i in 1..p {
            for j in i..p {
                let t = (i + j) % p;
                let (pi, pj) = (&self.powers[i as usize], &self.powers[j as usize]);
                let candidates: Vec<ScalarSlot> = if t != 0 {
                    let pt = &self.powers[t as usize];
                    let ok = (0..self.ns.len()).all(|s| product_exists(self.ns[s], pi[s], pj[s], pt[s]));
                    if ok {
                        vec![ScalarSlot { i, j, target: SlotTarget::Component }]
                    } else {
                        vec![]
                    }
                } else if (0..self.ns.len()).all(|s| pi[s] + pj[s] == self.ns[s]) {
                    (0..self.ns.len()).map(|s| ScalarSlot { i, j, target: SlotTarget::Sl(s) }).collect()
                } else {
                    vec![]
                };
                for slot in candidates {
                    if i != j || self.is_antisymmetric(slot) {
                        out.push(slot);
                    }
                }
            }
        }
        out
    }

    fn is_antisymmetric(&self, slot: ScalarSlot) -> bool {
        let d = slot.i;
        let n = self.dims[d as usize];
        let base = self.offsets[d as usize];
        let mut nonzero = false;
        for a in 0..n {
            for b in a..n {
                let xy = self.slot_map(slot, base + a, base + b);
                let yx = self.slot_map(slot, base + b, base + a);
                if xy != yx.neg() {
                    return false;
                }
                nonzero |= !xy.is_zero();
            }
        }
        nonzero
    }

    /// The invariant map of `slot` on basis elements x ∈ g_i, y ∈ g_j, in global coordinates.
    fn slot_map(&self, slot: ScalarSlot, x: usize, y: usize) -> SparseVec {
        let (Elem::Tensor { degree: dx, masks: mx }, Elem::Tensor { degree: dy, masks: my }) =
            (self.elem(x), self.elem(y))
        else {
            return SparseVec::zero();
        };
        debug_assert!(dx == slot.i && dy == slot.j || dx == slot.j && dy == slot.i);
        match slot.target {
            SlotTarget::Component => {
                let t = (dx + dy) % self.p;
                let pt = &self.powers[t as usize];
                let mut masks = Vec::with_capacity(mx.len());
                let mut sign = 1;
                for s in 0..mx.len() {
                    match product(self.ns[s], mx[s], my[s], pt[s]) {
                        Some((m, sg)) => {
                            masks.push(m);
                            sign *= sg;
                        }
                        None => return SparseVec::zero(),
                    }
                }
                SparseVec::single(self.tensor_index(t, &masks), FieldElem::from_int(sign))
            }
            SlotTarget::Sl(s) => {
                let mut scalar = 1;
                for t in 0..mx.len() {
                    if t != s {
                        scalar *= pairing(self.ns[t], mx[t], my[t]);
                    }
                }
                if scalar == 0 {
                    return SparseVec::zero();
                }
                let mu = self.sl[s].moment(mx[s], my[s]);
                let off = self.sl_index(s, 0);
                mu.remap(|k| k + off).scale(&FieldElem::from_int(scalar))
            }
        }
    }

    /// The fixed part of [x, y]: degree-0 brackets and the module action.
    fn action(&self, x: usize, y: usize) -> SparseVec {
        match (self.elem(x), self.elem(y)) {
            (Elem::Sl { space: s, k }, Elem::Sl { space: t, k: l }) => {
                if s != t {
                    return SparseVec::zero();
                }
                let off = self.sl_index(s, 0);
                self.sl[s].bracket(k, l).remap(|i| i + off)
            }
            (Elem::Sl { space, k }, Elem::Tensor { degree, masks }) => {
                let mut entries = Vec::new();
                for (m, c) in self.sl[space].act(k, masks[space]) {
                    let mut ms = masks.to_vec();
                    ms[space] = m;
                    entries.push((self.tensor_index(degree, &ms), FieldElem::from_int(c)));
                }
                SparseVec::from_entries(entries)
            }
            (Elem::Tensor { .. }, Elem::Sl { .. }) => self.action(y, x).neg(),
            _ => SparseVec::zero(),
        }
    }

    /// Symbolic [x, y]: pairs of (slot index or `None` for a fixed term, vector).
    pub fn symbolic_bracket(&self, x: usize, y: usize) -> Vec<(Option<usize>, SparseVec)> {
        if x == y {
            return Vec::new();
        }
        let (dx, dy) = (self.degree_of(x), self.degree_of(y));
        if dx == 0 || dy == 0 {
            let v = self.action(x, y);
            return if v.is_zero() { Vec::new() } else { vec![(None, v)] };
        }
        let (i, j) = (dx.min(dy), dx.max(dy));
        let mut out = Vec::new();
        for (idx, slot) in self.slots.iter().enumerate() {
            if slot.i == i && slot.j == j {
                let v = self.slot_map(*slot, x, y);
                if !v.is_zero() {
                    out.push((Some(idx), v));
                }
            }
        }
        out
    }

    /// The basis permutation exchanging two spaces of equal dimension and equal powers.
    pub fn space_swap(&self, s: usize, t: usize) -> Result<Vec<usize>, ModelError> {
        if self.ns[s] != self.ns[t] || self.powers.iter().any(|pw| pw[s] != pw[t]) {
            return Err(ModelError::Skeleton(format!(
                "spaces {} and {} are not interchangeable",
                s + 1,
                t + 1
            )));
        }
        Ok((0..self.total_dim())
            .map(|idx| match self.elem(idx) {
                Elem::Sl { space, k } => {
                    let other = if space == s {
                        t
                    } else if space == t {
                        s
                    } else {
                        space
                    };
                    self.sl_index(other, k)
                }
                Elem::Tensor { degree, masks } => {
                    let mut ms = masks.to_vec();
                    ms.swap(s, t);
                    self.tensor_index(degree, &ms)
                }
            })
            .collect())
    }

    /// ⊗_s ∧^{k_s} g_s on g_d (local coordinates), for one matrix per space.
    pub fn tensor_block(&self, d: u32, mats: &[Matrix]) -> Matrix {
        let pw = &self.powers[d as usize];
        let mut out = Matrix::identity(1);
        for (s, m) in mats.iter().enumerate() {
            out = out.kron(&compound(m, pw[s]));
        }
        out
    }

    /// ⊕_s Ad(g_s) on g_0 (local coordinates); every g_s must be invertible.
    pub fn sl_block(&self, mats: &[Matrix]) -> Matrix {
        let n0 = self.dims[0];
        let mut rows = vec![SparseVec::zero(); n0];
        for (s, m) in mats.iter().enumerate() {
            let inv = inverse(m).expect("invertible matrix");
            let block = self.sl[s].conjugation(m, &inv);
            let off = self.sl_offsets[s];
            for (r, row) in block.rows().iter().enumerate() {
                rows[off + r] = row.remap(|c| c + off);
            }
        }
        Matrix::from_rows(n0, rows)
    }

    /// The action of (g_s) on the whole model, in global coordinates.
    pub fn group_action(&self, mats: &[Matrix]) -> Matrix {
        let n = self.total_dim();
        let mut rows = vec![SparseVec::zero(); n];
        let blocks =
            std::iter::once(self.sl_block(mats)).chain((1..self.p).map(|d| self.tensor_block(d, mats)));
        for (d, block) in blocks.enumerate() {
            let off = self.offsets[d];
            for (r, row) in block.rows().iter().enumerate() {
                rows[off + r] = row.remap(|c| c + off);
            }
        }
        Matrix::from_rows(n, rows)
    }

    pub fn slot_index(&self, slot: &ScalarSlot) -> Option<usize> {
        self.slots.iter().position(|s| s == slot)
    }
}

/// An invariant bilinear map as its nonzero values on basis pairs (global coordinates).
#[derive(Clone, Debug)]
pub struct BilinearMap {
    pub slot: ScalarSlot,
    pub entries: Vec<(usize, usize, SparseVec)>,
}

/// The chosen equivariant map for a declared slot.
pub fn canonical_invariant_map(skel: &TensorSkeleton, slot: ScalarSlot) -> Result<BilinearMap, ModelError> {
    let layout = Layout::new(skel)?;
    if layout.slot_index(&slot).is_none() {
        return Err(ModelError::UndeclaredSlot(slot.to_string()));
    }
    let range = |d: u32| layout.offsets[d as usize]..layout.offsets[d as usize + 1];
    let mut entries = Vec::new();
    for x in range(slot.i) {
        for y in range(slot.j) {
            let v = layout.slot_map(slot, x, y);
            if !v.is_zero() {
                entries.push((x, y, v));
            }
        }
    }
    Ok(BilinearMap { slot, entries })
}

/// Action of the degree-0 basis element `h` on a vector, using the fixed brackets.
pub fn degree_zero_action(skel: &TensorSkeleton, h: usize, v: &SparseVec) -> Result<SparseVec, ModelError> {
    let layout = Layout::new(skel)?;
    if layout.degree_of(h) != 0 {
        return Err(ModelError::Skeleton(format!("basis element {h} is not of degree 0")));
    }
    let mut out = SparseVec::zero();
    for (k, c) in v.iter() {
        out = out.add_scaled(c, &layout.action(h, k));
    }
    Ok(out)
}
