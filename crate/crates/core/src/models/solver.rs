//! Bracket scalars of a tensor skeleton, fixed by the Jacobi identity.
//!
//! Every bracket [x, y] of basis elements is a sum of terms λ_s · v with λ_s
//! an unknown slot scalar (or 1 for the fixed degree-0 terms), so each Jacobi
//! coordinate is a polynomial of degree at most two in the λ. After gauge
//! fixing, equations that become linear once the known values are substituted
//! are solved by elimination until every scalar is determined.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::exactla::{EchelonBasis, SparseVec};
use crate::field::{Conductor, FieldElem};
use crate::liecore::LieAlgebra;

use super::skeleton::{Layout, ScalarSlot, TensorSkeleton};
use super::ModelError;

/// Triples drawn per degree combination and round.
const TRIPLES_PER_COMBO: usize = 4;
const MAX_ROUNDS: usize = 12;
/// Triples checked after solving for algebras too large for a full sweep.
const CHECK_SAMPLE: usize = 20_000;
const FULL_CHECK_MAX_DIM: usize = 80;

/// A product of at most two slot scalars, as sorted slot indices.
type Mono = Vec<usize>;
/// A polynomial in the slot scalars.
type Poly = Vec<(Mono, FieldElem)>;

/// Solved scalars and the assembled algebra.
#[derive(Clone, Debug)]
pub struct Solution {
    pub values: Vec<(ScalarSlot, FieldElem)>,
    pub algebra: LieAlgebra,
    pub degrees: Vec<u32>,
}

struct Table {
    n: usize,
    entries: Vec<Vec<(Option<usize>, SparseVec)>>,
}

impl Table {
    fn new(layout: &Layout) -> Table {
        let n = layout.total_dim();
        let upper: Vec<Vec<(usize, Vec<(Option<usize>, SparseVec)>)>> = (0..n)
            .into_par_iter()
            .map(|x| {
                (x + 1..n)
                    .map(|y| (y, layout.symbolic_bracket(x, y)))
                    .filter(|(_, t)| !t.is_empty())
                    .collect()
            })
            .collect();
        let mut entries = vec![Vec::new(); n * n];
        for (x, row) in upper.into_iter().enumerate() {
            for (y, terms) in row {
                entries[y * n + x] = terms.iter().map(|(s, v)| (*s, v.neg())).collect();
                entries[x * n + y] = terms;
            }
        }
        Table { n, entries }
    }

    fn get(&self, x: usize, y: usize) -> &[(Option<usize>, SparseVec)] {
        &self.entries[x * self.n + y]
    }

    /// The Jacobi sum of a basis triple, coordinate by coordinate, as polynomials.
    fn jacobi_polys(&self, x: usize, y: usize, z: usize) -> Vec<Poly> {
        let mut by_mono: BTreeMap<Mono, Vec<(usize, FieldElem)>> = BTreeMap::new();
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            for (s1, v) in self.get(a, b) {
                for (l, coeff) in v.iter() {
                    for (s2, w) in self.get(l, c) {
                        let mut mono: Mono = s1.iter().chain(s2.iter()).copied().collect();
                        mono.sort_unstable();
                        let slot = by_mono.entry(mono).or_default();
                        for (k, cw) in w.iter() {
                            slot.push((k, coeff * cw));
                        }
                    }
                }
            }
        }
        let mut by_coord: BTreeMap<usize, Poly> = BTreeMap::new();
        for (mono, terms) in by_mono {
            let v = SparseVec::from_entries(terms);
            for (k, c) in v.iter() {
                by_coord.entry(k).or_default().push((mono.clone(), c.clone()));
            }
        }
        by_coord.into_values().collect()
    }

    fn assemble(&self, values: &[FieldElem]) -> Vec<(usize, usize, SparseVec)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in x + 1..self.n {
                let terms = self.get(x, y);
                if terms.is_empty() {
                    continue;
                }
                let mut v = SparseVec::zero();
                for (s, w) in terms {
                    let c = s.map_or_else(FieldElem::one, |s| values[s].clone());
                    v = v.add_scaled(&c, w);
                }
                if !v.is_zero() {
                    out.push((x, y, v));
                }
            }
        }
        out
    }
}

/// Result of substituting known values into an equation.
enum Reduced {
    Zero,
    /// Coefficients over the unknowns plus a constant term (index = slot count).
    Linear(SparseVec),
    Nonlinear,
}

fn reduce(poly: &Poly, known: &[Option<FieldElem>]) -> Reduced {
    let nslots = known.len();
    let mut coeffs: BTreeMap<Mono, FieldElem> = BTreeMap::new();
    for (mono, c) in poly {
        let mut c = c.clone();
        let mut rest = Vec::new();
        for &s in mono {
            match &known[s] {
                Some(v) => c = &c * v,
                None => rest.push(s),
            }
        }
        let e = coeffs.entry(rest).or_insert_with(FieldElem::zero);
        *e = &*e + &c;
    }
    coeffs.retain(|_, c| !c.is_zero());
    if coeffs.is_empty() {
        return Reduced::Zero;
    }
    if coeffs.keys().any(|m| m.len() > 1) {
        return Reduced::Nonlinear;
    }
    let entries = coeffs.into_iter().map(|(m, c)| (m.first().copied().unwrap_or(nslots), c)).collect();
    Reduced::Linear(SparseVec::from_entries(entries))
}

fn eval(poly: &Poly, values: &[FieldElem]) -> FieldElem {
    poly.iter().fold(FieldElem::zero(), |acc, (mono, c)| {
        &acc + &mono.iter().fold(c.clone(), |p, &s| &p * &values[s])
    })
}

fn no_solution(reason: impl Into<String>, witness: Option<[usize; 3]>) -> ModelError {
    ModelError::NoSolution { reason: reason.into(), witness }
}

/// Random basis triples, a few for each multiset of degrees.
fn draw_triples(layout: &Layout, rng: &mut ChaCha8Rng) -> Vec<[usize; 3]> {
    let p = layout.p as usize;
    let mut out = Vec::new();
    for a in 0..p {
        for b in a..p {
            for c in b..p {
                for _ in 0..TRIPLES_PER_COMBO {
                    let pick = |d: usize, rng: &mut ChaCha8Rng| {
                        layout.offsets[d] + rng.gen_range(0..layout.dims[d].max(1))
                    };
                    let t = [pick(a, rng), pick(b, rng), pick(c, rng)];
                    if t[0] != t[1] && t[1] != t[2] && t[0] != t[2] {
                        out.push(t);
                    }
                }
            }
        }
    }
    out
}

/// Solves for the slot scalars of `skel` and assembles the algebra.
pub fn solve_scalars(skel: &TensorSkeleton) -> Result<Solution, ModelError> {
    let layout = Layout::new(skel)?;
    let nslots = layout.slots.len();
    let table = Table::new(&layout);

    let mut known: Vec<Option<FieldElem>> = vec![None; nslots];
    for g in &skel.gauge {
        if let Some(s) = layout.slot_index(g) {
            known[s] = Some(FieldElem::one());
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x05ca_1a55);
    let mut equations: Vec<(Poly, [usize; 3])> = Vec::new();
    let mut rounds = 0;
    while known.iter().any(Option::is_none) || rounds == 0 {
        if rounds == MAX_ROUNDS {
            let missing: Vec<String> =
                (0..nslots).filter(|&s| known[s].is_none()).map(|s| layout.slots[s].to_string()).collect();
            return Err(no_solution(format!("scalars {} are not determined", missing.join(", ")), None));
        }
        rounds += 1;
        let triples = draw_triples(&layout, &mut rng);
        let fresh: Vec<(Poly, [usize; 3])> = triples
            .par_iter()
            .flat_map_iter(|t| table.jacobi_polys(t[0], t[1], t[2]).into_iter().map(move |p| (p, *t)))
            .collect();
        equations.extend(fresh);

        // Substitute, solve the linear part, repeat while values keep appearing.
        loop {
            let mut system = EchelonBasis::new(nslots + 1);
            for (poly, witness) in &equations {
                if let Reduced::Linear(row) = reduce(poly, &known) {
                    let single = row.nnz() == 1 && row.leading().is_some_and(|(i, _)| i < nslots);
                    if single {
                        let slot = layout.slots[row.leading().unwrap().0];
                        return Err(no_solution(
                            format!("Jacobi forces scalar {slot} to vanish"),
                            Some(*witness),
                        ));
                    }
                    if system.insert(&row) == Some(nslots) {
                        return Err(no_solution("Jacobi constraints are inconsistent", Some(*witness)));
                    }
                }
            }
            let mut progress = false;
            for row in system.rows() {
                let (u, _) = row.leading().expect("nonzero row");
                if known[u].is_none() && row.iter().all(|(i, _)| i == u || i == nslots) {
                    let v = -row.coeff(nslots);
                    if v.is_zero() {
                        return Err(no_solution(
                            format!("scalar {} is forced to vanish", layout.slots[u]),
                            None,
                        ));
                    }
                    known[u] = Some(v);
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }
    }
    let values: Vec<FieldElem> = known.into_iter().map(|v| v.expect("all determined")).collect();

    for (poly, witness) in &equations {
        if !eval(poly, &values).is_zero() {
            return Err(no_solution("harvested Jacobi equation fails", Some(*witness)));
        }
    }

    let algebra = LieAlgebra::from_brackets(layout.total_dim(), Conductor::One, table.assemble(&values))?
        .with_labels(layout.labels(skel));
    if let Some(t) = first_jacobi_failure(&algebra) {
        return Err(no_solution("assembled table violates Jacobi", Some(t)));
    }
    Ok(Solution {
        values: layout.slots.iter().copied().zip(values).collect(),
        algebra,
        degrees: layout.degrees(),
    })
}

/// All triples for small algebras, a seeded sample otherwise.
fn first_jacobi_failure(l: &LieAlgebra) -> Option<[usize; 3]> {
    let n = l.dim();
    if n <= FULL_CHECK_MAX_DIM {
        return (0..n).into_par_iter().find_map_first(|i| {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !l.jacobiator(i, j, k).is_zero() {
                        return Some([i, j, k]);
                    }
                }
            }
            None
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x1ac0b1);
    let triples: Vec<[usize; 3]> =
        (0..CHECK_SAMPLE).map(|_| [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)]).collect();
    triples.par_iter().find_map_first(|t| (!l.jacobiator(t[0], t[1], t[2]).is_zero()).then_some(*t))
}
