use std::sync::OnceLock;

use jgk_core::autos::{root_of_unity, standard_bc, Automorphism};
use jgk_core::exactla::{Matrix, SparseVec};
use jgk_core::field::FieldElem;
use jgk_core::io;
use jgk_core::liecore::killing;
use jgk_core::models::{e6_skeleton, e8_skeleton, Layout};
use jgk_core::pipeline::{self, Degrees, Model, ModelId, VerifyOptions};
use jgk_core::verify::{Certificate, Grading};
use proptest::prelude::*;

struct Graded {
    model: Model,
    grading: Grading,
    autos: Vec<Automorphism>,
}

fn graded(id: ModelId) -> Graded {
    let model = pipeline::build(id).unwrap();
    let out = pipeline::grade(&model, false).unwrap();
    assert!(out.messages.is_empty(), "{:?}", out.messages);
    Graded { grading: out.grading.unwrap(), autos: out.spec.generators, model }
}

fn cached(id: ModelId) -> &'static Graded {
    static G2: OnceLock<Graded> = OnceLock::new();
    static E6: OnceLock<Graded> = OnceLock::new();
    static D4: OnceLock<Graded> = OnceLock::new();
    match id {
        ModelId::G2Z2 => G2.get_or_init(|| graded(id)),
        ModelId::E6Z3 => E6.get_or_init(|| graded(id)),
        ModelId::D4Z2 => D4.get_or_init(|| graded(id)),
        _ => unreachable!(),
    }
}

fn certify(g: &Graded, autos: &[Automorphism], grading: &Grading) -> Certificate {
    let l = &g.model.algebra;
    pipeline::certify(g.model.id, l, &g.model.degrees, grading, autos, VerifyOptions::default_for(l.dim(), 0))
}

fn failures(c: &Certificate) -> Vec<&str> {
    c.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
}

#[test]
fn small_models_certify() {
    for id in [ModelId::G2Z2, ModelId::D4Z2, ModelId::E6Z3, ModelId::F4Z3] {
        let g = graded(id);
        let c = certify(&g, &g.autos, &g.grading);
        assert!(c.passed(), "{id}: {:?}", failures(&c));
        assert_eq!(c.dims["fixed"], serde_json::json!(id.fixed_dims()));
    }
}

#[test]
fn octonion_gradings_stay_rational() {
    for id in [ModelId::G2Z2, ModelId::D4Z2] {
        let g = cached(id);
        assert_eq!(g.model.algebra.conductor().m(), 1);
        assert!(g.autos.iter().all(|a| a.matrix.conductor().m() == 1));
    }
}

/// The extension through brackets agrees with the tensor action of the same matrices.
fn extension_matches_group_action(id: ModelId) {
    let model = pipeline::build(id).unwrap();
    let autos = pipeline::generators(&model, false).unwrap();
    let (skel, twists): (_, &[u32]) = match id {
        ModelId::E8Z5 => (e8_skeleton(), &[1, 2]),
        _ => (e6_skeleton(), &[1, 1, 1]),
    };
    let layout = Layout::new(&skel).unwrap();
    let pairs: Vec<(Matrix, Matrix)> = twists.iter().map(|&t| standard_bc(id.p(), t).unwrap()).collect();
    let bs: Vec<Matrix> = pairs.iter().map(|(b, _)| b.clone()).collect();
    let cs: Vec<Matrix> = pairs.iter().map(|(_, c)| c.clone()).collect();
    assert_eq!(autos[1].matrix, layout.group_action(&bs), "{id} sigma2");
    assert_eq!(autos[2].matrix, layout.group_action(&cs), "{id} sigma3");
    // σ₁ is ζ^d on degree d.
    let zeta = root_of_unity(id.p(), 1).unwrap();
    let Degrees::Cyclic(deg) = &model.degrees else { panic!("cyclic degrees") };
    let diag = Matrix::diagonal(deg.iter().map(|&d| zeta.pow(d)).collect());
    assert_eq!(autos[0].matrix, diag);
}

#[test]
fn e6_extension_matches_group_action() {
    extension_matches_group_action(ModelId::E6Z3);
}

#[test]
fn e8_extension_matches_group_action() {
    extension_matches_group_action(ModelId::E8Z5);
}

#[test]
fn skip_normalization_breaks_the_order() {
    let model = pipeline::build(ModelId::E6Z3).unwrap();
    let out = pipeline::grade(&model, true).unwrap();
    assert!(out.grading.is_none());
    assert_eq!(out.messages, vec!["order check: sigma2 has order 6".to_string()]);
    assert!(pipeline::grade(&pipeline::build(ModelId::G2Z2).unwrap(), true).is_err());
}

#[test]
fn tampered_generator_is_caught() {
    let g = cached(ModelId::E6Z3);
    let mut autos = g.autos.clone();
    let m = &autos[1].matrix;
    let mut rows = m.rows().to_vec();
    rows.swap(30, 31);
    autos[1].matrix = Matrix::from_rows(m.ncols(), rows);
    let c = certify(g, &autos, &g.grading);
    let check = c.check("automorphism_sigma2").unwrap();
    assert!(!check.pass);
    assert!(check.witness.is_array());
    assert_eq!(c.check("group_order").unwrap().witness["skipped"], "not automorphisms");
}

#[test]
fn dependent_generators_are_not_faithful() {
    let g = cached(ModelId::G2Z2);
    let autos = vec![g.autos[0].clone(), g.autos[1].clone(), g.autos[0].clone()];
    let c = certify(g, &autos, &g.grading);
    assert!(!c.check("group_faithful").unwrap().pass);
    assert!(c.check("group_order").unwrap().pass);
}

#[test]
fn relabeled_grading_fails_compatibility() {
    let g = cached(ModelId::D4Z2);
    let (a, b) = (vec![1, 0, 0], vec![0, 1, 0]);
    let swapped = g
        .grading
        .relabeled(|x| {
            if *x == a {
                b.clone()
            } else if *x == b {
                a.clone()
            } else {
                x.clone()
            }
        })
        .unwrap();
    let c = certify(g, &g.autos, &swapped);
    let names = failures(&c);
    assert!(names.contains(&"grading_compat"), "{names:?}");
    assert_eq!(c.check("lines_cartan").unwrap().witness["skipped"], "grading not compatible");
    // The dimensions alone cannot tell.
    assert!(c.check("class_dims").unwrap().pass);
}

#[test]
fn files_round_trip() {
    let g = cached(ModelId::E6Z3);
    let l = io::algebra_from_json(&io::algebra_to_json(&g.model.algebra)).unwrap();
    assert_eq!(l, g.model.algebra);
    let (p, d) = io::degrees_from_json(&io::degrees_to_json(3, &g.model.degrees)).unwrap();
    assert_eq!((p, &d), (3, &g.model.degrees));
    assert_eq!(io::grading_from_json(&io::grading_to_json(&g.grading)).unwrap(), g.grading);
    let (p, autos) = io::automorphisms_from_json(&io::automorphisms_to_json(3, &g.autos)).unwrap();
    assert_eq!((p, autos), (3, g.autos.clone()));
}

fn vector_in(g: &Graded, alpha: &[u32], coeffs: &[i64]) -> SparseVec {
    let s = g.grading.component(alpha);
    s.combine(&coeffs.iter().take(s.dim()).map(|&c| FieldElem::from_int(c)).collect::<Vec<_>>())
}

fn elem(p: u32) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0..p, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// σ_k acts on G_α by ζ^{α_k}.
    #[test]
    fn generators_act_by_characters(alpha in elem(3), coeffs in proptest::collection::vec(-9i64..=9, 3)) {
        let g = cached(ModelId::E6Z3);
        let v = vector_in(g, &alpha, &coeffs);
        for (k, a) in g.autos.iter().enumerate() {
            let z = root_of_unity(3, i64::from(alpha[k])).unwrap();
            prop_assert_eq!(a.matrix.apply(&v), v.scale(&z));
        }
    }

    /// [G_α, G_β] ⊆ G_{α+β} on random elements.
    #[test]
    fn brackets_add_degrees(a in elem(2), b in elem(2), x in proptest::collection::vec(-9i64..=9, 4), y in proptest::collection::vec(-9i64..=9, 4)) {
        let g = cached(ModelId::D4Z2);
        let u = vector_in(g, &a, &x);
        let v = vector_in(g, &b, &y);
        let sum: Vec<u32> = a.iter().zip(&b).map(|(s, t)| (s + t) % 2).collect();
        prop_assert!(g.grading.component(&sum).contains(&g.model.algebra.bracket(&u, &v)));
    }

    /// κ([x, y], z) = κ(x, [y, z]) on random combinations of basis vectors.
    #[test]
    fn killing_form_is_invariant(x in proptest::collection::vec(-5i64..=5, 14), y in proptest::collection::vec(-5i64..=5, 14), z in proptest::collection::vec(-5i64..=5, 14)) {
        static FORM: OnceLock<jgk_core::liecore::BilinearForm> = OnceLock::new();
        let g = cached(ModelId::G2Z2);
        let l = &g.model.algebra;
        let form = FORM.get_or_init(|| killing(l));
        let vec = |c: &[i64]| SparseVec::from_entries(c.iter().enumerate().map(|(i, &v)| (i, FieldElem::from_int(v))).collect());
        let (x, y, z) = (vec(&x), vec(&y), vec(&z));
        prop_assert_eq!(form.eval(&l.bracket(&x, &y), &z), form.eval(&x, &l.bracket(&y, &z)));
    }
}
