//! End-to-end runs: build a model, construct its grading automorphisms and
//! assemble the certificate for an algebra, its degrees and a grading.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::autos::{
    bracket_violation, character_auto, check_group, extend_from_degree1, extend_from_degree1_unchecked,
    fixed_subalgebra, grading_from_group, restrict, root_of_unity, scalar_auto, standard_bc, AutoError,
    Automorphism, GradingGroupSpec,
};
use crate::exactla::{Matrix, SparseVec, Subspace};
use crate::field::FieldElem;
use crate::liecore::{
    identify_type, invariance_witness, killing, simple_ideals, LieAlgebra, SimpleType, TypeLabel,
};
use crate::models::{
    build_d4, build_e6, build_e8, build_f4, build_g2, corrupted_e8_skeleton, e6_skeleton, e8_skeleton,
    solve_scalars, F4Model, Layout, ModelError, OctonionModel,
};
use crate::verify::{
    grading_compat, jacobi_sweep, jordan_certificate, Certificate, Check, Grading, GroupElem, JacobiMode,
};

/// Largest dimension swept in full by default.
pub const FULL_JACOBI_MAX_DIM: usize = 80;
pub const DEFAULT_JACOBI_SAMPLE: u64 = 1_000_000;
/// Basis triples on which invariance of the Killing form is checked.
pub const INVARIANCE_TRIPLES: usize = 2_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelId {
    E8Z5,
    E6Z3,
    F4Z3,
    G2Z2,
    D4Z2,
}

impl ModelId {
    pub const ALL: [ModelId; 5] = [ModelId::E8Z5, ModelId::E6Z3, ModelId::F4Z3, ModelId::G2Z2, ModelId::D4Z2];

    pub fn name(self) -> &'static str {
        match self {
            ModelId::E8Z5 => "e8-z5",
            ModelId::E6Z3 => "e6-z3",
            ModelId::F4Z3 => "f4-z3",
            ModelId::G2Z2 => "g2-z2",
            ModelId::D4Z2 => "d4-z2",
        }
    }

    pub fn p(self) -> u32 {
        match self {
            ModelId::E8Z5 => 5,
            ModelId::E6Z3 | ModelId::F4Z3 => 3,
            ModelId::G2Z2 | ModelId::D4Z2 => 2,
        }
    }

    /// Rank of the grading group.
    pub fn r(self) -> usize {
        3
    }

    pub fn simple_type(self) -> SimpleType {
        match self {
            ModelId::E8Z5 => SimpleType::E8,
            ModelId::E6Z3 => SimpleType::E6,
            ModelId::F4Z3 => SimpleType::F4,
            ModelId::G2Z2 => SimpleType::G2,
            ModelId::D4Z2 => SimpleType::D(4),
        }
    }

    /// Dimension of every nonzero homogeneous component of the Jordan grading.
    pub fn class_dim(self) -> usize {
        match self {
            ModelId::E8Z5 | ModelId::F4Z3 | ModelId::G2Z2 => 2,
            ModelId::E6Z3 => 3,
            ModelId::D4Z2 => 4,
        }
    }

    /// True for the octonion models, whose degree map is the full ℤ₂³ grading.
    pub fn is_octonion(self) -> bool {
        matches!(self, ModelId::G2Z2 | ModelId::D4Z2)
    }

    /// dim Fix(σ₁, …, σ_k) for k = 1, 2, 3.
    pub fn fixed_dims(self) -> [usize; 3] {
        match self {
            ModelId::E8Z5 => [48, 8, 0],
            ModelId::E6Z3 => [24, 6, 0],
            ModelId::F4Z3 => [16, 4, 0],
            ModelId::G2Z2 => [6, 2, 0],
            ModelId::D4Z2 => [12, 4, 0],
        }
    }

    /// Dimensions of the simple ideals of the degree-0 component for the cyclic models.
    pub fn zero_component_ideals(self) -> Option<Vec<usize>> {
        match self {
            ModelId::E8Z5 => Some(vec![24, 24]),
            ModelId::E6Z3 => Some(vec![8, 8, 8]),
            ModelId::F4Z3 => Some(vec![8, 8]),
            ModelId::G2Z2 | ModelId::D4Z2 => None,
        }
    }

    /// Dimensions of the cyclic degree components, for the tensor models.
    pub fn degree_dims(self) -> Option<Vec<usize>> {
        match self {
            ModelId::E8Z5 => Some(vec![48, 50, 50, 50, 50]),
            ModelId::E6Z3 => Some(vec![24, 27, 27]),
            ModelId::F4Z3 => Some(vec![16, 18, 18]),
            ModelId::G2Z2 | ModelId::D4Z2 => None,
        }
    }

    pub fn group_label(self) -> String {
        format!("Z{}^{}", self.p(), self.r())
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelId {
    type Err = PipelineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModelId::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| {
            PipelineError::Usage(format!(
                "unknown model '{s}' (expected one of e8-z5, e6-z3, f4-z3, g2-z2, d4-z2)"
            ))
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Auto(#[from] AutoError),
}

/// Degrees of the basis vectors: a residue mod p for the tensor models, a ℤ₂³ vector for the octonion models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degrees {
    Cyclic(Vec<u32>),
    Vector(Vec<GroupElem>),
}

impl Degrees {
    pub fn len(&self) -> usize {
        match self {
            Degrees::Cyclic(v) => v.len(),
            Degrees::Vector(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rank(&self) -> usize {
        match self {
            Degrees::Cyclic(_) => 1,
            Degrees::Vector(v) => v.first().map_or(0, Vec::len),
        }
    }

    pub fn as_elems(&self) -> Vec<GroupElem> {
        match self {
            Degrees::Cyclic(v) => v.iter().map(|&d| vec![d]).collect(),
            Degrees::Vector(v) => v.clone(),
        }
    }

    /// The grading these degrees define.
    pub fn grading(&self, p: u32) -> Result<Grading, crate::verify::VerifyError> {
        Grading::from_degrees(p, self.rank(), &self.as_elems())
    }

    /// Projection of a Jordan-grading label onto the degree group.
    fn project(&self, alpha: &[u32]) -> GroupElem {
        match self {
            Degrees::Cyclic(_) => vec![alpha[0]],
            Degrees::Vector(_) => alpha.to_vec(),
        }
    }
}

enum Source {
    Tensor(Layout),
    F4(Box<F4Model>, Layout),
    Octonion(Box<OctonionModel>),
}

/// A built model together with what its automorphisms need.
pub struct Model {
    pub id: ModelId,
    pub algebra: LieAlgebra,
    pub degrees: Degrees,
    source: Source,
}

impl fmt::Debug for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Model({}, {:?})", self.id, self.algebra)
    }
}

pub fn build(id: ModelId) -> Result<Model, PipelineError> {
    Ok(match id {
        ModelId::E8Z5 => {
            let m = build_e8()?;
            Model {
                id,
                algebra: m.algebra,
                degrees: Degrees::Cyclic(m.degrees),
                source: Source::Tensor(Layout::new(&e8_skeleton())?),
            }
        }
        ModelId::E6Z3 => {
            let m = build_e6()?;
            Model {
                id,
                algebra: m.algebra,
                degrees: Degrees::Cyclic(m.degrees),
                source: Source::Tensor(Layout::new(&e6_skeleton())?),
            }
        }
        ModelId::F4Z3 => {
            let f4 = build_f4()?;
            Model {
                id,
                algebra: f4.model.algebra.clone(),
                degrees: Degrees::Cyclic(f4.model.degrees.clone()),
                source: Source::F4(Box::new(f4), Layout::new(&e6_skeleton())?),
            }
        }
        ModelId::G2Z2 | ModelId::D4Z2 => {
            let m = if id == ModelId::G2Z2 { build_g2()? } else { build_d4()? };
            Model {
                id,
                algebra: m.algebra().clone(),
                degrees: Degrees::Vector(m.degrees.clone()),
                source: Source::Octonion(Box::new(m)),
            }
        }
    })
}

/// The negative control: solving the corrupted E8 skeleton.
pub fn build_corrupted_e8() -> Result<(), PipelineError> {
    solve_scalars(&corrupted_e8_skeleton())?;
    Ok(())
}

/// σ₂ and σ₃ from b and c on every space; with `skip_normalization` the first b is negated,
/// so σ₂ no longer has order p on g_1.
fn tensor_generators(
    l: &LieAlgebra,
    degrees: &[u32],
    layout: &Layout,
    p: u32,
    twists: &[u32],
    skip_normalization: bool,
) -> Result<Vec<Automorphism>, AutoError> {
    let zeta = root_of_unity(p, 1)?;
    let mut gens = vec![scalar_auto(l, degrees, p, &zeta)?];
    let pairs: Vec<(Matrix, Matrix)> = twists.iter().map(|&t| standard_bc(p, t)).collect::<Result<_, _>>()?;
    let bs: Vec<Matrix> = pairs.iter().map(|(b, _)| b.clone()).collect();
    let cs: Vec<Matrix> = pairs.iter().map(|(_, c)| c.clone()).collect();

    let mut b1 = bs.clone();
    if skip_normalization {
        b1[0] = b1[0].scale(&FieldElem::from_int(-1));
    }
    let action1 = layout.tensor_block(1, &b1);
    let action0 = layout.sl_block(&bs);
    gens.push(if skip_normalization {
        extend_from_degree1_unchecked(l, degrees, p, "sigma2", &action1, &action0)?
    } else {
        extend_from_degree1(l, degrees, p, "sigma2", &action1, &action0)?
    });
    gens.push(extend_from_degree1(
        l,
        degrees,
        p,
        "sigma3",
        &layout.tensor_block(1, &cs),
        &layout.sl_block(&cs),
    )?);
    Ok(gens)
}

fn permutation_matrix(perm: &[usize]) -> Matrix {
    let cols: Vec<SparseVec> = perm.iter().map(|&j| SparseVec::unit(j)).collect();
    Matrix::from_columns(perm.len(), &cols)
}

/// Twists of b on each space: ξ and ξ² for E8 (so that λ₁λ₂² = 1 holds), ω on all three spaces for E6.
fn twists(id: ModelId) -> Vec<u32> {
    match id {
        ModelId::E8Z5 => vec![1, 2],
        _ => vec![1, 1, 1],
    }
}

/// σ₁, σ₂, σ₃ (or the three characters for the octonion models).
pub fn generators(model: &Model, skip_normalization: bool) -> Result<Vec<Automorphism>, PipelineError> {
    let p = model.id.p();
    match (&model.source, &model.degrees) {
        (Source::Tensor(layout), Degrees::Cyclic(deg)) => {
            Ok(tensor_generators(&model.algebra, deg, layout, p, &twists(model.id), skip_normalization)?)
        }
        (Source::F4(f4, layout), Degrees::Cyclic(_)) => {
            let e6 = &f4.e6;
            let e6_gens = tensor_generators(
                &e6.algebra,
                &e6.degrees,
                layout,
                p,
                &twists(model.id),
                skip_normalization,
            )?;
            let tau = permutation_matrix(&f4.tau);
            let mut out = Vec::new();
            for g in &e6_gens {
                if g.matrix.mul(&tau) != tau.mul(&g.matrix) {
                    return Err(AutoError::Invalid(format!("{} does not commute with tau", g.name)).into());
                }
                let r = restrict(g, &f4.embedding)?;
                if !skip_normalization {
                    if let Some((i, j)) = bracket_violation(&model.algebra, &r.matrix) {
                        return Err(AutoError::NotAutomorphism { name: r.name, i, j }.into());
                    }
                }
                out.push(r);
            }
            Ok(out)
        }
        (Source::Octonion(m), _) => {
            if skip_normalization {
                return Err(PipelineError::Usage(format!("{} has no normalization step to skip", model.id)));
            }
            Ok((0..3).map(|k| character_auto(&m.ops, &m.octonions.degrees, k)).collect::<Result<_, _>>()?)
        }
        _ => unreachable!("tensor models carry cyclic degrees"),
    }
}

/// The grading group; `grading` is `None` when the group checks fail.
pub struct GradeOutcome {
    pub spec: GradingGroupSpec,
    pub messages: Vec<String>,
    pub grading: Option<Grading>,
}

pub fn grade(model: &Model, skip_normalization: bool) -> Result<GradeOutcome, PipelineError> {
    let spec = GradingGroupSpec { p: model.id.p(), generators: generators(model, skip_normalization)? };
    let report = check_group(&spec)?;
    if !report.passed() {
        return Ok(GradeOutcome { spec, messages: report.messages(), grading: None });
    }
    let grading = grading_from_group(&spec)?;
    Ok(GradeOutcome { spec, messages: Vec::new(), grading: Some(grading) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub jacobi: JacobiMode,
    pub seed: u64,
}

impl VerifyOptions {
    /// Full sweep for small algebras, a seeded 10⁶-triple sample otherwise.
    pub fn default_for(dim: usize, seed: u64) -> VerifyOptions {
        let jacobi = if dim <= FULL_JACOBI_MAX_DIM {
            JacobiMode::Full
        } else {
            JacobiMode::Sample { n: DEFAULT_JACOBI_SAMPLE, seed }
        };
        VerifyOptions { jacobi, seed }
    }
}

fn invariance_check(l: &LieAlgebra, seed: u64) -> Check {
    let n = l.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6b69_6c6c);
    let triples: Vec<(usize, usize, usize)> = (0..INVARIANCE_TRIPLES)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    let form = killing(l);
    let w = invariance_witness(l, &form, triples);
    Check::new("killing_invariant", w.map(|(i, j, k)| json!([i, j, k])), INVARIANCE_TRIPLES as u64)
}

fn expect_dims(name: &str, found: Vec<usize>, expected: &[usize]) -> Check {
    let w = (found != expected).then(|| json!({ "found": found, "expected": expected }));
    Check::new(name, w, 1)
}

/// Every G_α lies in the degree component it projects to.
fn refines_degrees(g: &Grading, degrees: &Degrees, p: u32) -> Check {
    let coarse = match degrees.grading(p) {
        Ok(c) => c,
        Err(e) => return Check::new("grading_refines_degrees", Some(json!({ "error": e.to_string() })), 0),
    };
    let w = g
        .components()
        .find(|(a, s)| !s.is_subspace_of(coarse.component(&degrees.project(a))))
        .map(|(a, _)| json!({ "alpha": a }));
    Check::new("grading_refines_degrees", w, g.components().count() as u64)
}

fn group_checks(l: &LieAlgebra, id: ModelId, autos: &[Automorphism], g: &Grading, cert: &mut Certificate) {
    let mut all_auto = true;
    for a in autos {
        let w = if a.matrix.nrows() != l.dim() || !a.matrix.is_square() {
            Some(json!({ "shape": [a.matrix.nrows(), a.matrix.ncols()] }))
        } else {
            bracket_violation(l, &a.matrix).map(|(i, j)| json!([i, j]))
        };
        all_auto &= w.is_none();
        let pairs = (l.dim() * l.dim().saturating_sub(1) / 2) as u64;
        cert.push(Check::new(&format!("automorphism_{}", a.name), w, pairs));
    }
    if !all_auto {
        for name in ["group_order", "group_commute", "group_faithful", "fixed_dims", "grading_from_autos"] {
            cert.push(Check {
                name: name.into(),
                pass: false,
                witness: json!({ "skipped": "not automorphisms" }),
                count: 0,
            });
        }
        return;
    }
    let spec = GradingGroupSpec { p: id.p(), generators: autos.to_vec() };
    let report = match check_group(&spec) {
        Ok(r) => r,
        Err(e) => {
            cert.push(Check::new("group_order", Some(json!({ "error": e.to_string() })), 0));
            return;
        }
    };
    let orders: Vec<_> =
        report.order_failures.iter().map(|(n, o)| json!({ "name": n, "order": o })).collect();
    cert.push(Check::new("group_order", (!orders.is_empty()).then(|| json!(orders)), autos.len() as u64));
    let nc: Vec<_> = report.non_commuting.iter().map(|(a, b)| json!([a, b])).collect();
    let npairs = (autos.len() * autos.len().saturating_sub(1) / 2) as u64;
    cert.push(Check::new("group_commute", (!nc.is_empty()).then(|| json!(nc)), npairs));
    let faithful_count = u64::from(id.p()).pow(autos.len() as u32) - 1;
    cert.push(Check::new(
        "group_faithful",
        report.dependency.as_ref().map(|e| json!({ "exponents": e })),
        faithful_count,
    ));

    let mut fixed = Vec::new();
    for k in 1..=autos.len() {
        match fixed_subalgebra(l, &autos[..k]) {
            Ok(s) => fixed.push(s.dim()),
            Err(e) => {
                cert.push(Check::new("fixed_dims", Some(json!({ "error": e.to_string() })), k as u64));
                return;
            }
        }
    }
    cert.dims.insert("fixed".into(), json!(fixed));
    cert.push(expect_dims("fixed_dims", fixed, &id.fixed_dims()[..autos.len().min(3)]));

    if !report.passed() {
        cert.push(Check::new("grading_from_autos", Some(json!({ "skipped": "group checks failed" })), 0));
        return;
    }
    let w = match grading_from_group(&spec) {
        Ok(h) => h
            .components()
            .find(|(a, s)| g.component(a) != *s)
            .map(|(a, s)| json!({ "alpha": a, "dim": s.dim(), "file_dim": g.component(a).dim() })),
        Err(e) => Some(json!({ "error": e.to_string() })),
    };
    cert.push(Check::new("grading_from_autos", w, g.components().count() as u64));
}

/// The full certificate for an algebra with its degree map, Jordan grading and grading automorphisms.
pub fn certify(
    id: ModelId,
    l: &LieAlgebra,
    degrees: &Degrees,
    g: &Grading,
    autos: &[Automorphism],
    opts: VerifyOptions,
) -> Certificate {
    let mut cert = Certificate { seed: opts.seed, ..Certificate::default() };
    let p = id.p();
    cert.dims.insert("model".into(), json!(id.name()));
    cert.push(expect_dims("dim", vec![l.dim()], &[id.simple_type().dim()]));
    if degrees.len() != l.dim() || g.ambient() != l.dim() || g.p() != p || g.r() != id.r() {
        cert.push(Check::new(
            "shapes",
            Some(json!({ "dim": l.dim(), "degrees": degrees.len(), "grading": [g.p(), g.r(), g.ambient()] })),
            1,
        ));
        return cert;
    }
    cert.push(jacobi_sweep(l, opts.jacobi));

    match degrees.grading(p) {
        Ok(dg) => {
            let mut c = grading_compat(l, &dg);
            c.name = "degree_compat".into();
            cert.push(c);
            if let Some(expected) = id.degree_dims() {
                let found: Vec<usize> = (0..p).map(|d| dg.component(&[d]).dim()).collect();
                cert.dims.insert("degrees".into(), json!(found));
                cert.push(expect_dims("degree_dims", found, &expected));
            }
            if let Some(expected) = id.zero_component_ideals() {
                let w = match l
                    .subalgebra(dg.component(&[0]))
                    .map_err(|e| e.to_string())
                    .and_then(|g0| simple_ideals(&g0).map_err(|e| e.to_string()))
                {
                    Ok(ideals) => {
                        let dims: Vec<usize> = ideals.iter().map(Subspace::dim).collect();
                        (dims != expected).then(|| json!({ "found": dims, "expected": expected }))
                    }
                    Err(e) => Some(json!({ "error": e })),
                };
                cert.push(Check::new("zero_component_ideals", w, 1));
            }
        }
        Err(e) => cert.push(Check::new("degree_compat", Some(json!({ "error": e.to_string() })), 0)),
    }

    let kappa = killing(l);
    let rank = kappa.rank();
    cert.push(Check::new("killing_nondegenerate", (rank != l.dim()).then(|| json!({ "rank": rank })), 1));
    cert.push(invariance_check(l, opts.seed));
    if rank == l.dim() {
        match identify_type(l) {
            Ok(t) => {
                cert.dims.insert("type".into(), json!(t.label.to_string()));
                cert.dims.insert("rank".into(), json!(t.rank));
                let expected = TypeLabel::Simple(id.simple_type());
                cert.push(Check::new(
                    "type",
                    (t.label != expected).then(|| json!({ "found": t.label.to_string(), "rank": t.rank })),
                    1,
                ));
                cert.push(expect_dims("simple_ideals", t.ideal_dims, &[l.dim()]));
            }
            Err(e) => cert.push(Check::new("type", Some(json!({ "error": e.to_string() })), 1)),
        }
    }

    cert.push(refines_degrees(g, degrees, p));
    group_checks(l, id, autos, g, &mut cert);
    cert.extend(jordan_certificate(l, g, id.class_dim()));
    cert
}
