//! Exterior powers of a small coordinate space and the special linear algebra acting on them.
//!
//! A wedge monomial e_{i₁}∧…∧e_{i_k} with i₁ < … < i_k is stored as the bitmask
//! of its indices. Bases of Λ^k V are listed in lexicographic order of the index
//! sequences. The volume form is e₀∧…∧e_{n−1}.

use crate::exactla::{determinant, Matrix, SparseVec};
use crate::field::FieldElem;

/// Bitmasks of k-subsets of {0, …, n−1} in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<u32> {
    fn rec(start: usize, n: usize, k: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Sign of the shuffle that sorts the concatenation I·J, or 0 if they overlap.
pub fn wedge_sign(i: u32, j: u32) -> i64 {
    if i & j != 0 {
        return 0;
    }
    // Inversions: pairs (a ∈ I, b ∈ J) with a > b.
    let mut inv = 0u32;
    let mut jj = j;
    while jj != 0 {
        let b = jj.trailing_zeros();
        inv += (i >> (b + 1)).count_ones();
        jj &= jj - 1;
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn full(n: usize) -> u32 {
    (1u32 << n) - 1
}

/// The equivariant product Λ^a V × Λ^b V → Λ^c V on monomials.
///
/// For c = a + b it is the wedge product. For c = a + b − n both factors are
/// moved to Λ V* by contraction with the volume form, multiplied there, and
/// moved back. Returns the target monomial and sign, or `None` when zero.
pub fn product(n: usize, i: u32, j: u32, c: usize) -> Option<(u32, i64)> {
    let (a, b) = (i.count_ones() as usize, j.count_ones() as usize);
    if c == a + b {
        let s = wedge_sign(i, j);
        return (s != 0).then_some((i | j, s));
    }
    if c + n == a + b {
        let f = full(n);
        let (ic, jc) = (f & !i, f & !j);
        let s_dual = wedge_sign(ic, jc);
        if s_dual == 0 {
            return None;
        }
        let k = ic | jc;
        let kc = f & !k;
        let s = wedge_sign(i, ic) * wedge_sign(j, jc) * s_dual * wedge_sign(kc, k);
        return Some((kc, s));
    }
    None
}

/// Whether `product` has a nonzero map for these degrees.
pub fn product_exists(n: usize, a: usize, b: usize, c: usize) -> bool {
    c == a + b && c <= n || c + n == a + b
}

/// [x ∧ y] / vol for monomials of complementary degree.
pub fn pairing(n: usize, i: u32, j: u32) -> i64 {
    if i | j != full(n) {
        return 0;
    }
    wedge_sign(i, j)
}

/// The matrix unit E_ab acting as a derivation on a monomial.
pub fn gl_act(a: usize, b: usize, i: u32) -> Option<(u32, i64)> {
    if i & (1 << b) == 0 {
        return None;
    }
    if a == b {
        return Some((i, 1));
    }
    if i & (1 << a) != 0 {
        return None;
    }
    // Replace e_b by e_a in place, then move e_a to its sorted position.
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let between = (i >> (lo + 1)) & ((1u32 << (hi - lo - 1)) - 1);
    let s = if between.count_ones() % 2 == 0 { 1 } else { -1 };
    Some(((i & !(1 << b)) | (1 << a), s))
}

/// The k-th compound ∧^k M on the lexicographic monomial basis: entries are k×k minors.
pub fn compound(m: &Matrix, k: usize) -> Matrix {
    let n = m.nrows();
    let subs = subsets(n, k);
    let idx = |mask: u32| (0..n).filter(|&i| mask & (1 << i) != 0).collect::<Vec<_>>();
    let rows: Vec<Vec<FieldElem>> = subs
        .iter()
        .map(|&r| {
            let ri = idx(r);
            subs.iter()
                .map(|&c| {
                    let ci = idx(c);
                    let minor: Vec<Vec<FieldElem>> =
                        ri.iter().map(|&a| ci.iter().map(|&b| m.get(a, b)).collect()).collect();
                    if k == 0 {
                        FieldElem::one()
                    } else {
                        determinant(&Matrix::from_dense(&minor))
                    }
                })
                .collect()
        })
        .collect();
    Matrix::from_dense(&rows)
}

/// Basis of sl(n): E_ab (a ≠ b, row-major), then H_a = E_aa − E_{a+1,a+1}.
#[derive(Clone, Debug)]
pub struct SlBasis {
    n: usize,
    offdiag: Vec<(usize, usize)>,
}

impl SlBasis {
    pub fn new(n: usize) -> Self {
        let offdiag = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
        SlBasis { n, offdiag }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n * self.n - 1
    }

    fn offdiag_index(&self, a: usize, b: usize) -> usize {
        a * (self.n - 1) + if b > a { b - 1 } else { b }
    }

    pub fn label(&self, k: usize) -> String {
        match self.offdiag.get(k) {
            Some((a, b)) => format!("E{a}{b}"),
            None => format!("H{}", k - self.offdiag.len()),
        }
    }

    /// The basis element as a list of (a, b, coefficient) matrix units.
    pub fn units(&self, k: usize) -> Vec<(usize, usize, i64)> {
        match self.offdiag.get(k) {
            Some(&(a, b)) => vec![(a, b, 1)],
            None => {
                let a = k - self.offdiag.len();
                vec![(a, a, 1), (a + 1, a + 1, -1)]
            }
        }
    }

    /// The trace-free part of an n×n matrix, in basis coordinates.
    pub fn coords(&self, m: &[Vec<FieldElem>]) -> SparseVec {
        let n = self.n;
        let mut entries = Vec::new();
        for (k, &(a, b)) in self.offdiag.iter().enumerate() {
            if !m[a][b].is_zero() {
                entries.push((k, m[a][b].clone()));
            }
        }
        let trace = (0..n).fold(FieldElem::zero(), |acc, t| &acc + &m[t][t]);
        let mean = trace.scale(&crate::field::Rational::new(1, n as i64));
        // d = Σ c_a H_a with c_a = Σ_{t ≤ a} d_t.
        let mut c = FieldElem::zero();
        for a in 0..n - 1 {
            c = &c + &(&m[a][a] - &mean);
            if !c.is_zero() {
                entries.push((self.offdiag.len() + a, c.clone()));
            }
        }
        SparseVec::from_entries(entries)
    }

    pub fn matrix(&self, k: usize) -> Vec<Vec<FieldElem>> {
        let mut m = vec![vec![FieldElem::zero(); self.n]; self.n];
        for (a, b, c) in self.units(k) {
            m[a][b] = FieldElem::from_int(c);
        }
        m
    }

    /// [X_k, X_l] in basis coordinates.
    pub fn bracket(&self, k: usize, l: usize) -> SparseVec {
        let n = self.n;
        let mut m = vec![vec![FieldElem::zero(); n]; n];
        for (a, b, x) in self.units(k) {
            for (c, d, y) in self.units(l) {
                let xy = FieldElem::from_int(x * y);
                if b == c {
                    m[a][d] = &m[a][d] + &xy;
                }
                if d == a {
                    m[c][b] = &m[c][b] - &xy;
                }
            }
        }
        self.coords(&m)
    }

    /// Action of X_k on a monomial of Λ V, as (monomial, coefficient) pairs.
    pub fn act(&self, k: usize, i: u32) -> Vec<(u32, i64)> {
        let mut out: Vec<(u32, i64)> = Vec::new();
        for (a, b, c) in self.units(k) {
            if let Some((j, s)) = gl_act(a, b, i) {
                match out.iter_mut().find(|(m, _)| *m == j) {
                    Some((_, v)) => *v += c * s,
                    None => out.push((j, c * s)),
                }
            }
        }
        out.retain(|(_, v)| *v != 0);
        out
    }

    /// The moment map Λ^a × Λ^{n−a} → sl(n): the trace-free T with
    /// tr(T E_ab) = [(E_ab · x) ∧ y] / vol for all matrix units.
    pub fn moment(&self, x: u32, y: u32) -> SparseVec {
        let n = self.n;
        let mut t = vec![vec![FieldElem::zero(); n]; n];
        let mut any = false;
        for a in 0..n {
            for b in 0..n {
                if let Some((xi, s)) = gl_act(a, b, x) {
                    let p = pairing(n, xi, y);
                    if p != 0 {
                        t[b][a] = FieldElem::from_int(s * p);
                        any = true;
                    }
                }
            }
        }
        if !any {
            return SparseVec::zero();
        }
        self.coords(&t)
    }

    /// X ↦ g X g⁻¹ in basis coordinates.
    pub fn conjugation(&self, g: &Matrix, g_inv: &Matrix) -> Matrix {
        let cols: Vec<SparseVec> = (0..self.dim())
            .map(|k| {
                let x = Matrix::from_dense(&self.matrix(k));
                self.coords(&g.mul(&x).mul(g_inv).to_dense())
            })
            .collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    pub fn offdiag_position(&self, a: usize, b: usize) -> usize {
        self.offdiag_index(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compound_is_multiplicative() {
        let a = Matrix::from_int_rows(&[&[1, 2, 0, 1], &[0, 1, 3, 0], &[2, 0, 1, 1], &[1, 1, 0, 2]]);
        let b = Matrix::from_int_rows(&[&[0, 1, 1, 0], &[1, 0, 2, 1], &[3, 1, 0, 0], &[0, 2, 1, 1]]);
        for k in 0..=4 {
            assert_eq!(compound(&a.mul(&b), k), compound(&a, k).mul(&compound(&b, k)));
        }
        assert_eq!(compound(&a, 4).get(0, 0), determinant(&a));
        assert_eq!(compound(&a, 1), a);
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(4, 2), vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
        for n in 1..=5 {
            for k in 0..=n {
                assert_eq!(subsets(n, k).len(), binomial(n, k));
            }
        }
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(0b01, 0b10), 1);
        assert_eq!(wedge_sign(0b10, 0b01), -1);
        assert_eq!(wedge_sign(0b011, 0b100), 1);
        assert_eq!(wedge_sign(0b100, 0b011), 1);
        assert_eq!(wedge_sign(0b101, 0b010), -1);
        assert_eq!(wedge_sign(0b1, 0b1), 0);
    }

    /// Sign of the permutation sorting a list of distinct indices.
    fn sort_sign(v: &[usize]) -> i64 {
        let inv = (0..v.len())
            .flat_map(|i| (i + 1..v.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| v[i] > v[j])
            .count();
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn indices(m: u32) -> Vec<usize> {
        (0..32).filter(|&i| m & (1 << i) != 0).collect()
    }

    #[test]
    fn wedge_sign_matches_permutation_parity() {
        for i in subsets(5, 2) {
            for j in subsets(5, 3) {
                let expected = if i & j != 0 {
                    0
                } else {
                    let mut v = indices(i);
                    v.extend(indices(j));
                    sort_sign(&v)
                };
                assert_eq!(wedge_sign(i, j), expected);
            }
        }
    }

    #[test]
    fn gl_action_matches_substitution() {
        for i in subsets(5, 3) {
            for a in 0..5 {
                for b in 0..5 {
                    let got = gl_act(a, b, i);
                    let v = indices(i);
                    if !v.contains(&b) || (a != b && v.contains(&a)) {
                        assert_eq!(got, None);
                        continue;
                    }
                    let w: Vec<usize> = v.iter().map(|&t| if t == b { a } else { t }).collect();
                    let mask = w.iter().fold(0u32, |m, &t| m | (1 << t));
                    assert_eq!(got, Some((mask, sort_sign(&w))));
                }
            }
        }
    }

    #[test]
    fn sl_bracket_is_antisymmetric_and_jacobi() {
        let s = SlBasis::new(3);
        assert_eq!(s.dim(), 8);
        for k in 0..8 {
            for l in 0..8 {
                assert_eq!(s.bracket(k, l), s.bracket(l, k).neg());
            }
        }
        // [E01, E10] = E00 − E11 = H0.
        let e01 = s.offdiag_position(0, 1);
        let e10 = s.offdiag_position(1, 0);
        assert_eq!(s.bracket(e01, e10), SparseVec::unit(6));
    }

    #[test]
    fn products_are_equivariant_under_sl() {
        // X·(x∘y) = (X·x)∘y + x∘(X·y) for every basis X and monomials x, y.
        let n = 5;
        let s = SlBasis::new(n);
        for (a, b, c) in [(1, 2, 3), (2, 4, 1), (3, 3, 1), (4, 3, 2), (2, 2, 4)] {
            for x in subsets(n, a) {
                for y in subsets(n, b) {
                    for k in 0..s.dim() {
                        let mut lhs: Vec<(u32, i64)> = Vec::new();
                        if let Some((z, sg)) = product(n, x, y, c) {
                            for (w, v) in s.act(k, z) {
                                lhs.push((w, sg * v));
                            }
                        }
                        let mut rhs: Vec<(u32, i64)> = Vec::new();
                        for (x2, v) in s.act(k, x) {
                            if let Some((z, sg)) = product(n, x2, y, c) {
                                rhs.push((z, v * sg));
                            }
                        }
                        for (y2, v) in s.act(k, y) {
                            if let Some((z, sg)) = product(n, x, y2, c) {
                                rhs.push((z, v * sg));
                            }
                        }
                        let norm = |mut t: Vec<(u32, i64)>| {
                            t.sort();
                            let mut out: Vec<(u32, i64)> = Vec::new();
                            for (m, v) in t {
                                match out.last_mut() {
                                    Some((m2, v2)) if *m2 == m => *v2 += v,
                                    _ => out.push((m, v)),
                                }
                            }
                            out.retain(|e| e.1 != 0);
                            out
                        };
                        assert_eq!(norm(lhs), norm(rhs), "({a},{b},{c}) x={x:b} y={y:b} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn moment_map_is_equivariant() {
        // [X, μ(x, y)] = μ(X·x, y) + μ(x, X·y).
        let n = 5;
        let s = SlBasis::new(n);
        for x in subsets(n, 2) {
            for y in subsets(n, 3) {
                let mu = s.moment(x, y);
                for k in 0..s.dim() {
                    let mut lhs = SparseVec::zero();
                    for (l, c) in mu.iter() {
                        lhs = lhs.add_scaled(c, &s.bracket(k, l));
                    }
                    let mut rhs = SparseVec::zero();
                    for (x2, v) in s.act(k, x) {
                        rhs = rhs.add_scaled(&FieldElem::from_int(v), &s.moment(x2, y));
                    }
                    for (y2, v) in s.act(k, y) {
                        rhs = rhs.add_scaled(&FieldElem::from_int(v), &s.moment(x, y2));
                    }
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
