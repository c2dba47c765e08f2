//! Sparse coordinate vectors over ℚ(ζ_m).

use std::fmt;

use crate::field::{Conductor, FieldElem};

/// Sorted `(index, coefficient)` pairs with no explicit zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, FieldElem)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, FieldElem::one())] }
    }

    pub fn single(i: usize, c: FieldElem) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            SparseVec { entries: vec![(i, c)] }
        }
    }

    /// Accepts entries in any order; duplicates are summed and zeros dropped.
    pub fn from_entries(mut entries: Vec<(usize, FieldElem)>) -> Self {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(usize, FieldElem)> = Vec::with_capacity(entries.len());
        for (i, c) in entries {
            match out.last_mut() {
                Some((j, d)) if *j == i => *d += &c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparseVec { entries: out }
    }

    /// Caller guarantees strictly increasing indices and nonzero values.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, FieldElem)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, c)| !c.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(v: &[FieldElem]) -> Self {
        let entries =
            v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect();
        SparseVec { entries }
    }

    pub fn to_dense(&self, n: usize) -> Vec<FieldElem> {
        let mut out = vec![FieldElem::zero(); n];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, FieldElem)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, FieldElem)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &FieldElem)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, i: usize) -> Option<&FieldElem> {
        self.entries.binary_search_by_key(&i, |e| e.0).ok().map(|k| &self.entries[k].1)
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.get(i).cloned().unwrap_or_default()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<(usize, &FieldElem)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    /// Smallest conductor holding every coefficient.
    pub fn conductor(&self) -> Conductor {
        self.entries
            .iter()
            .filter(|(_, c)| !c.is_rational())
            .map(|(_, c)| c.conductor())
            .max()
            .unwrap_or(Conductor::One)
    }

    pub fn scale(&self, s: &FieldElem) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        if s.is_one() {
            return self.clone();
        }
        SparseVec { entries: self.entries.iter().map(|(i, c)| (*i, c * s)).collect() }
    }

    pub fn neg(&self) -> Self {
        SparseVec { entries: self.entries.iter().map(|(i, c)| (*i, -c)).collect() }
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: &FieldElem, other: &SparseVec) -> Self {
        if s.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, s * y));
                        b.next();
                    } else {
                        let v = x + &(s * y);
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, s * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> Self {
        self.add_scaled(&FieldElem::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> Self {
        self.add_scaled(&FieldElem::from_int(-1), other)
    }

    pub fn dot(&self, other: &SparseVec) -> FieldElem {
        let mut acc = FieldElem::zero();
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            if i < j {
                a.next();
            } else if j < i {
                b.next();
            } else {
                acc += &(x * y);
                a.next();
                b.next();
            }
        }
        acc
    }

    /// Keeps only entries whose index satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(usize) -> bool) -> Self {
        SparseVec { entries: self.entries.iter().filter(|(i, _)| keep(*i)).cloned().collect() }
    }

    /// Re-indexes through `f`; the map must be injective on the support.
    pub fn remap(&self, mut f: impl FnMut(usize) -> usize) -> Self {
        Self::from_entries(self.entries.iter().map(|(i, c)| (f(*i), c.clone())).collect())
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(i, c)| (i, c))).finish()
    }
}

/// Dense scratch space for summing many sparse vectors of a fixed length.
pub struct Accumulator {
    dense: Vec<FieldElem>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl Accumulator {
    pub fn new(n: usize) -> Self {
        Accumulator { dense: vec![FieldElem::zero(); n], touched: Vec::new(), mark: vec![false; n] }
    }

    pub fn len(&self) -> usize {
        self.dense.len()
    }

    pub fn is_empty(&self) -> bool {
        self.touched.is_empty()
    }

    #[inline]
    pub fn add_entry(&mut self, i: usize, c: &FieldElem) {
        if !self.mark[i] {
            self.mark[i] = true;
            self.touched.push(i);
            self.dense[i] = c.clone();
        } else {
            self.dense[i] += c;
        }
    }

    pub fn add_scaled(&mut self, s: &FieldElem, v: &SparseVec) {
        if s.is_zero() {
            return;
        }
        if s.is_one() {
            for (i, c) in v.iter() {
                self.add_entry(i, c);
            }
        } else {
            for (i, c) in v.iter() {
                self.add_entry(i, &(s * c));
            }
        }
    }

    /// Returns the accumulated vector and resets to zero.
    pub fn take(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.mark[i] = false;
            let c = std::mem::take(&mut self.dense[i]);
            if !c.is_zero() {
                out.push((i, c));
            }
        }
        self.touched.clear();
        SparseVec::from_sorted_unchecked(out)
    }
}
