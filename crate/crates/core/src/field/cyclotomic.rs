//! Elements of ℚ(ζ_m) for m ∈ {1, 3, 5}.
//!
//! Coordinates are taken in the basis ζ^0, …, ζ^{φ(m)−1}. For prime m the
//! reduction uses ζ^{m−1} = −(1 + ζ + … + ζ^{m−2}).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use super::rational::Rational;
use super::FieldError;

/// Coefficient storage; only the first φ(m) entries are meaningful, the rest are zero.
const SLOTS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub enum Conductor {
    One,
    Three,
    Five,
}

impl Conductor {
    pub fn new(m: u32) -> Result<Self, FieldError> {
        match m {
            1 => Ok(Conductor::One),
            3 => Ok(Conductor::Three),
            5 => Ok(Conductor::Five),
            _ => Err(FieldError::UnsupportedConductor(m)),
        }
    }

    /// Smallest supported conductor containing the p-th roots of unity.
    pub fn for_prime(p: u32) -> Result<Self, FieldError> {
        match p {
            2 => Ok(Conductor::One),
            other => Conductor::new(other),
        }
    }

    pub fn m(self) -> u32 {
        match self {
            Conductor::One => 1,
            Conductor::Three => 3,
            Conductor::Five => 5,
        }
    }

    /// Euler φ(m): the number of stored coefficients.
    pub fn phi(self) -> usize {
        match self {
            Conductor::One => 1,
            Conductor::Three => 2,
            Conductor::Five => 4,
        }
    }

    /// The conductor of a field containing both, if one of them is ℚ.
    pub fn join(self, other: Conductor) -> Result<Conductor, FieldError> {
        match (self, other) {
            (a, b) if a == b => Ok(a),
            (Conductor::One, b) => Ok(b),
            (a, Conductor::One) => Ok(a),
            (a, b) => Err(FieldError::ConductorMismatch(a.m(), b.m())),
        }
    }
}

impl TryFrom<u32> for Conductor {
    type Error = FieldError;
    fn try_from(m: u32) -> Result<Self, FieldError> {
        Conductor::new(m)
    }
}

impl From<Conductor> for u32 {
    fn from(c: Conductor) -> u32 {
        c.m()
    }
}

impl fmt::Display for Conductor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m())
    }
}

/// An element of ℚ(ζ_m) in canonical reduced form.
///
/// Equality is by value: a rational number compares equal to the same number
/// tagged with a larger conductor.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "wire::Wire", into = "wire::Wire")]
pub struct FieldElem {
    m: Conductor,
    c: [Rational; SLOTS],
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}

impl Eq for FieldElem {}

impl std::hash::Hash for FieldElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

fn zero_slots() -> [Rational; SLOTS] {
    [Rational::ZERO, Rational::ZERO, Rational::ZERO, Rational::ZERO]
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem { m: Conductor::One, c: zero_slots() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::ONE)
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut c = zero_slots();
        c[0] = r;
        FieldElem { m: Conductor::One, c }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(num, den))
    }

    /// Builds an element from already-reduced coordinates (length φ(m)).
    pub fn from_coeffs(m: Conductor, coeffs: &[Rational]) -> Result<Self, FieldError> {
        if coeffs.len() != m.phi() {
            return Err(FieldError::BadLength { m: m.m(), expected: m.phi(), got: coeffs.len() });
        }
        let mut c = zero_slots();
        c[..coeffs.len()].clone_from_slice(coeffs);
        Ok(FieldElem { m, c })
    }

    /// ζ_m^k.
    pub fn root_of_unity(m: Conductor, k: i64) -> Self {
        let mm = m.m() as i64;
        let e = k.rem_euclid(mm) as usize;
        let mut raw = vec![Rational::ZERO; mm as usize];
        raw[e] = Rational::ONE;
        reduce(m, raw)
    }

    pub fn conductor(&self) -> Conductor {
        self.m
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c[..self.m.phi()]
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.is_rational()
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Rational::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.c[0])
    }

    /// Re-tags the element with a conductor whose field contains it.
    pub fn promote(&self, m: Conductor) -> Result<Self, FieldError> {
        if m == self.m {
            return Ok(self.clone());
        }
        if self.is_rational() {
            return Ok(FieldElem { m, c: self.c.clone() });
        }
        Err(FieldError::ConductorMismatch(self.m.m(), m.m()))
    }

    fn joined(&self, other: &Self) -> Result<Conductor, FieldError> {
        match self.m.join(other.m) {
            Ok(m) => Ok(m),
            Err(e) => {
                if self.is_rational() {
                    Ok(other.m)
                } else if other.is_rational() {
                    Ok(self.m)
                } else {
                    Err(e)
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        let m = self.joined(other)?;
        let mut c = zero_slots();
        for (k, slot) in c.iter_mut().enumerate().take(m.phi()) {
            *slot = &self.c[k] + &other.c[k];
        }
        Ok(FieldElem { m, c })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        let m = self.joined(other)?;
        if let Some(r) = self.as_rational() {
            return Ok(other.scale(r).with_conductor(m));
        }
        if let Some(r) = other.as_rational() {
            return Ok(self.scale(r).with_conductor(m));
        }
        let n = m.phi();
        let mm = m.m() as usize;
        let mut raw = vec![Rational::ZERO; mm];
        for i in 0..n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if other.c[j].is_zero() {
                    continue;
                }
                let k = (i + j) % mm;
                raw[k] = raw[k].add_mul(&self.c[i], &other.c[j]);
            }
        }
        Ok(reduce(m, raw))
    }

    fn with_conductor(mut self, m: Conductor) -> Self {
        self.m = m;
        self
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_one() {
            return self.clone();
        }
        let mut c = zero_slots();
        for (k, slot) in c.iter_mut().enumerate().take(self.m.phi()) {
            *slot = &self.c[k] * r;
        }
        FieldElem { m: self.m, c }
    }

    /// The Galois conjugate ζ ↦ ζ^k (k coprime to m).
    pub fn galois(&self, k: u32) -> Self {
        let mm = self.m.m() as usize;
        if mm == 1 {
            return self.clone();
        }
        let mut raw = vec![Rational::ZERO; mm];
        for j in 0..self.m.phi() {
            let t = (j * k as usize) % mm;
            raw[t] = &raw[t] + &self.c[j];
        }
        reduce(self.m, raw)
    }

    /// Multiplicative inverse via the product of the nontrivial Galois conjugates.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            let inv = r.recip().expect("nonzero");
            return Ok(FieldElem::from_rational(inv).with_conductor(self.m));
        }
        let mm = self.m.m();
        let mut adj = FieldElem::one().with_conductor(self.m);
        for k in 2..mm {
            adj = adj.try_mul(&self.galois(k))?;
        }
        let norm = self.try_mul(&adj)?;
        let n = norm.as_rational().expect("field norm is rational");
        Ok(adj.scale(&n.recip().expect("nonzero norm")))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = FieldElem::one().with_conductor(self.m);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

/// Canonical form of Σ raw[k] ζ^k, with raw indexed 0..m−1.
fn reduce(m: Conductor, raw: Vec<Rational>) -> FieldElem {
    let mut c = zero_slots();
    match m {
        Conductor::One => {
            c[0] = raw.into_iter().fold(Rational::ZERO, |a, b| &a + &b);
        }
        _ => {
            let top = raw[m.m() as usize - 1].clone();
            for k in 0..m.phi() {
                c[k] = &raw[k] - &top;
            }
        }
    }
    FieldElem { m, c }
}

/// Canonical reduced form of Σ raw[k] ζ_m^k.
pub fn cyc_make(m: u32, raw: &[Rational]) -> Result<FieldElem, FieldError> {
    let cond = Conductor::new(m)?;
    if raw.len() != m as usize {
        return Err(FieldError::BadLength { m, expected: m as usize, got: raw.len() });
    }
    Ok(reduce(cond, raw.to_vec()))
}

pub fn cyc_mul(a: &FieldElem, b: &FieldElem) -> Result<FieldElem, FieldError> {
    a.try_mul(b)
}

pub fn cyc_inv(a: &FieldElem) -> Result<FieldElem, FieldError> {
    a.inv()
}

impl Default for FieldElem {
    fn default() -> Self {
        FieldElem::zero()
    }
}

impl From<Rational> for FieldElem {
    fn from(r: Rational) -> Self {
        FieldElem::from_rational(r)
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        FieldElem::from_int(n)
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    #[inline]
    fn add(self, rhs: &'a FieldElem) -> FieldElem {
        self.try_add(rhs).expect("conductor mismatch")
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    #[inline]
    fn sub(self, rhs: &'a FieldElem) -> FieldElem {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    #[inline]
    fn mul(self, rhs: &'a FieldElem) -> FieldElem {
        self.try_mul(rhs).expect("conductor mismatch")
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        let mut c = zero_slots();
        for (k, slot) in c.iter_mut().enumerate().take(self.m.phi()) {
            *slot = -&self.c[k];
        }
        FieldElem { m: self.m, c }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: FieldElem) -> FieldElem {
        &self + &rhs
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: FieldElem) -> FieldElem {
        &self - &rhs
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: FieldElem) -> FieldElem {
        &self * &rhs
    }
}

impl AddAssign<&FieldElem> for FieldElem {
    fn add_assign(&mut self, rhs: &FieldElem) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&FieldElem> for FieldElem {
    fn sub_assign(&mut self, rhs: &FieldElem) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, r) in self.coeffs().iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{r}")?,
                1 => write!(f, "({r})z{}", self.m)?,
                _ => write!(f, "({r})z{}^{k}", self.m)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

mod wire {
    use num_bigint::BigInt;
    use serde::{Deserialize, Serialize};

    use super::{Conductor, FieldElem, FieldError, Rational};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    pub enum Int {
        Small(i64),
        Big(String),
    }

    impl Int {
        fn from_big(b: BigInt) -> Int {
            match i64::try_from(&b) {
                Ok(v) => Int::Small(v),
                Err(_) => Int::Big(b.to_string()),
            }
        }

        fn to_big(&self) -> Result<BigInt, FieldError> {
            match self {
                Int::Small(v) => Ok(BigInt::from(*v)),
                Int::Big(s) => s.parse().map_err(|_| FieldError::Parse(s.clone())),
            }
        }
    }

    #[derive(Serialize, Deserialize)]
    pub struct Wire {
        m: u32,
        c: Vec<[Int; 2]>,
    }

    impl From<FieldElem> for Wire {
        fn from(x: FieldElem) -> Wire {
            let c = x.coeffs().iter().map(|r| [Int::from_big(r.numer()), Int::from_big(r.denom())]).collect();
            Wire { m: x.conductor().m(), c }
        }
    }

    impl TryFrom<Wire> for FieldElem {
        type Error = FieldError;
        fn try_from(w: Wire) -> Result<FieldElem, FieldError> {
            let m = Conductor::new(w.m)?;
            let coeffs =
                w.c.iter()
                    .map(|[n, d]| {
                        Rational::from_bigints(n.to_big()?, d.to_big()?).ok_or(FieldError::DivisionByZero)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
            FieldElem::from_coeffs(m, &coeffs)
        }
    }
}
