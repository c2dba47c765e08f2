//! Identification of simple types from dimension, rank and root lengths.

use std::fmt;

use crate::field::Rational;

use super::cartan::find_cartan;
use super::ideals::simple_ideals;
use super::{LieAlgebra, LieError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimpleType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl SimpleType {
    pub fn dim(self) -> usize {
        match self {
            SimpleType::A(r) => r * (r + 2),
            SimpleType::B(r) | SimpleType::C(r) => r * (2 * r + 1),
            SimpleType::D(r) => r * (2 * r - 1),
            SimpleType::E6 => 78,
            SimpleType::E7 => 133,
            SimpleType::E8 => 248,
            SimpleType::F4 => 52,
            SimpleType::G2 => 14,
        }
    }

    pub fn rank(self) -> usize {
        match self {
            SimpleType::A(r) | SimpleType::B(r) | SimpleType::C(r) | SimpleType::D(r) => r,
            SimpleType::E6 => 6,
            SimpleType::E7 => 7,
            SimpleType::E8 => 8,
            SimpleType::F4 => 4,
            SimpleType::G2 => 2,
        }
    }

    pub fn simply_laced(self) -> bool {
        matches!(self, SimpleType::A(_) | SimpleType::D(_) | SimpleType::E6 | SimpleType::E7 | SimpleType::E8)
    }

    /// Number of short roots (0 when simply laced).
    fn short_roots(self) -> usize {
        match self {
            SimpleType::B(r) => 2 * r,
            SimpleType::C(r) => 2 * r * (r - 1),
            SimpleType::F4 => 24,
            SimpleType::G2 => 6,
            _ => 0,
        }
    }

    /// Every simple type of the given rank, without the low-rank coincidences.
    fn of_rank(r: usize) -> Vec<SimpleType> {
        let mut out = vec![SimpleType::A(r)];
        if r >= 2 {
            out.push(SimpleType::B(r));
        }
        if r >= 3 {
            out.push(SimpleType::C(r));
        }
        if r >= 4 {
            out.push(SimpleType::D(r));
        }
        out.extend(match r {
            2 => vec![SimpleType::G2],
            4 => vec![SimpleType::F4],
            6 => vec![SimpleType::E6],
            7 => vec![SimpleType::E7],
            8 => vec![SimpleType::E8],
            _ => vec![],
        });
        out
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::A(r) => write!(f, "A{r}"),
            SimpleType::B(r) => write!(f, "B{r}"),
            SimpleType::C(r) => write!(f, "C{r}"),
            SimpleType::D(r) => write!(f, "D{r}"),
            SimpleType::E6 => write!(f, "E6"),
            SimpleType::E7 => write!(f, "E7"),
            SimpleType::E8 => write!(f, "E8"),
            SimpleType::F4 => write!(f, "F4"),
            SimpleType::G2 => write!(f, "G2"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeLabel {
    Simple(SimpleType),
    NotSimple,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeLabel::Simple(t) => t.fmt(f),
            TypeLabel::NotSimple => write!(f, "not simple"),
        }
    }
}

/// The data behind a type identification.
#[derive(Clone, Debug)]
pub struct TypeReport {
    pub label: TypeLabel,
    pub dim: usize,
    pub rank: usize,
    pub ideal_dims: Vec<usize>,
    /// Root-length classes (squared Killing length, count) when the Cartan is split.
    pub norm_classes: Option<Vec<(Rational, usize)>>,
}

/// Identifies the simple type of `l` from (dim, rank) and, where needed, root lengths.
pub fn identify_type(l: &LieAlgebra) -> Result<TypeReport, LieError> {
    let ideals = simple_ideals(l)?;
    let ideal_dims: Vec<usize> = ideals.iter().map(|s| s.dim()).collect();
    let cartan = find_cartan(l, 0)?;
    let rank = cartan.subspace.dim();
    let norm_classes = cartan.roots.as_ref().map(|rd| rd.norm_classes());
    let mut report = TypeReport { label: TypeLabel::NotSimple, dim: l.dim(), rank, ideal_dims, norm_classes };
    if ideals.len() != 1 {
        return Ok(report);
    }
    let candidates: Vec<SimpleType> =
        SimpleType::of_rank(rank).into_iter().filter(|t| t.dim() == l.dim()).collect();
    let chosen = match candidates.as_slice() {
        [] => return Err(LieError::Unclassified { dim: l.dim(), rank }),
        [one] => *one,
        many => {
            let classes =
                report.norm_classes.as_ref().ok_or(LieError::Unclassified { dim: l.dim(), rank })?;
            let short = if classes.len() == 1 { 0 } else { classes[0].1 };
            let fits: Vec<SimpleType> = many
                .iter()
                .copied()
                .filter(|t| t.simply_laced() == (classes.len() == 1) && t.short_roots() == short)
                .collect();
            match fits.as_slice() {
                [one] => *one,
                _ => return Err(LieError::Unclassified { dim: l.dim(), rank }),
            }
        }
    };
    report.label = TypeLabel::Simple(chosen);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::algebra::tests::sl2;

    #[test]
    fn classifies_sl2() {
        let r = identify_type(&sl2()).unwrap();
        assert_eq!(r.label, TypeLabel::Simple(SimpleType::A(1)));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn dimension_table() {
        assert_eq!(SimpleType::G2.dim(), 14);
        assert_eq!(SimpleType::D(4).dim(), 28);
        assert_eq!(SimpleType::B(6).dim(), 78);
        assert_eq!(SimpleType::C(6).dim(), 78);
        let rank6: Vec<_> = SimpleType::of_rank(6).into_iter().filter(|t| t.dim() == 78).collect();
        assert_eq!(rank6, vec![SimpleType::B(6), SimpleType::C(6), SimpleType::E6]);
        assert!(SimpleType::of_rank(8).into_iter().filter(|t| t.dim() == 248).eq([SimpleType::E8]));
    }
}
