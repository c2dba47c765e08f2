//! Reduction modulo a prime with ζ_m sent to an m-th root of unity in F_q.
//!
//! The reduction is a ring homomorphism on elements whose denominators are prime
//! to q, so a nonzero determinant mod q proves a nonzero determinant over the
//! field. The converse does not hold; callers fall back to exact elimination.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::Matrix;
use crate::field::{Conductor, FieldElem, Rational};

/// 15 · 2²⁷ + 1, so F_q contains primitive cube and fifth roots of unity.
const Q: u64 = 2_013_265_921;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    b %= Q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % Q;
        }
        b = b * b % Q;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, Q - 2)
}

fn root(m: u32) -> u64 {
    if m == 1 {
        return 1;
    }
    // m is prime, so any w ≠ 1 with w^m = 1 is primitive.
    (2..).map(|g| pow_mod(g, (Q - 1) / m as u64)).find(|&w| w != 1).expect("q ≡ 1 mod m")
}

fn big_mod(n: &BigInt) -> u64 {
    let q = BigInt::from(Q);
    let r = ((n % &q) + &q) % &q;
    r.to_u64().expect("reduced below q")
}

fn rational_mod(r: &Rational) -> Option<u64> {
    let d = big_mod(&r.denom());
    (d != 0).then(|| big_mod(&r.numer()) * inv_mod(d) % Q)
}

/// Image of x in F_q, or None when a denominator vanishes mod q.
pub fn reduce_mod_q(x: &FieldElem) -> Option<u64> {
    let w = match x.conductor() {
        Conductor::One => 1,
        c => root(c.m()),
    };
    let mut acc = 0u64;
    let mut wk = 1u64;
    for c in x.coeffs() {
        acc = (acc + rational_mod(c)? * wk) % Q;
        wk = wk * w % Q;
    }
    Some(acc)
}

/// True only if the square matrix is certainly invertible over the field.
pub fn certainly_invertible(a: &Matrix) -> bool {
    let n = a.nrows();
    if a.ncols() != n {
        return false;
    }
    let mut dense = vec![vec![0u64; n]; n];
    for (i, row) in a.rows().iter().enumerate() {
        for (j, x) in row.iter() {
            match reduce_mod_q(x) {
                Some(v) => dense[i][j] = v,
                None => return false,
            }
        }
    }
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| dense[r][col] != 0) else {
            return false;
        };
        dense.swap(col, piv);
        let (top, rest) = dense.split_at_mut(col + 1);
        let pivot_row = &top[col];
        let inv = inv_mod(pivot_row[col]);
        for row in rest {
            let f = row[col] * inv % Q;
            if f == 0 {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (*x + (Q - f) * y % Q) % Q;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_of_unity_reduces_to_root() {
        for c in [Conductor::Three, Conductor::Five] {
            let z = reduce_mod_q(&FieldElem::root_of_unity(c, 1)).unwrap();
            assert_ne!(z, 1);
            assert_eq!(pow_mod(z, c.m() as u64), 1);
        }
    }

    #[test]
    fn reduction_is_multiplicative() {
        let a = FieldElem::root_of_unity(Conductor::Five, 2).try_add(&FieldElem::frac(3, 7)).unwrap();
        let b = FieldElem::root_of_unity(Conductor::Five, 3).try_add(&FieldElem::frac(-5, 2)).unwrap();
        let ab = a.try_mul(&b).unwrap();
        let lhs = reduce_mod_q(&ab).unwrap();
        assert_eq!(lhs, reduce_mod_q(&a).unwrap() * reduce_mod_q(&b).unwrap() % Q);
    }

    #[test]
    fn singular_matrix_is_not_certified() {
        let one = FieldElem::one();
        let m = Matrix::from_rows(
            2,
            vec![
                crate::exactla::SparseVec::from_entries(vec![(0, one.clone()), (1, one.clone())]),
                crate::exactla::SparseVec::from_entries(vec![(0, one.clone()), (1, one)]),
            ],
        );
        assert!(!certainly_invertible(&m));
        assert!(certainly_invertible(&Matrix::identity(3)));
    }

    proptest::proptest! {
        /// A certified matrix has full rank over the field.
        #[test]
        fn certificate_is_sound(n in 1usize..5, seed in proptest::collection::vec((-2i64..=2, 0i64..5), 16)) {
            let rows: Vec<Vec<FieldElem>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let (a, k) = seed[i * 4 + j];
                            FieldElem::root_of_unity(Conductor::Five, k).scale(&Rational::from_int(a))
                        })
                        .collect()
                })
                .collect();
            let m = Matrix::from_dense(&rows);
            if certainly_invertible(&m) {
                proptest::prop_assert_eq!(crate::exactla::rank(&m), n);
            }
        }
    }
}
