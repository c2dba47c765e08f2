//! JSON files: structure constants, degree maps, gradings, automorphisms and certificates.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::autos::Automorphism;
use crate::exactla::{Matrix, SparseVec, Subspace};
use crate::field::{Conductor, FieldElem};
use crate::liecore::LieAlgebra;
use crate::pipeline::Degrees;
use crate::verify::{Grading, GroupElem};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },
    #[error("schema mismatch: {0}")]
    Schema(String),
}

fn schema(e: impl std::fmt::Display) -> IoError {
    IoError::Schema(e.to_string())
}

type Entries = Vec<(usize, FieldElem)>;

fn entries(v: &SparseVec) -> Entries {
    v.iter().map(|(k, c)| (k, c.clone())).collect()
}

fn vector(e: Entries, dim: usize, what: &str) -> Result<SparseVec, IoError> {
    if let Some((k, _)) = e.iter().find(|(k, _)| *k >= dim) {
        return Err(IoError::Schema(format!("{what}: index {k} out of range for dimension {dim}")));
    }
    let mut seen: Vec<usize> = e.iter().map(|(k, _)| *k).collect();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(IoError::Schema(format!("{what}: repeated index")));
    }
    Ok(SparseVec::from_entries(e))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketJson {
    i: usize,
    j: usize,
    v: Entries,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraJson {
    dim: usize,
    m: Conductor,
    brackets: Vec<BracketJson>,
    labels: Vec<String>,
}

/// Each bracket [x_i, x_j] with i < j that is nonzero, in (i, j) order.
pub fn algebra_to_json(l: &LieAlgebra) -> String {
    let brackets = l.nonzero_brackets().map(|(i, j, v)| BracketJson { i, j, v: entries(v) }).collect();
    let doc = AlgebraJson { dim: l.dim(), m: l.conductor(), brackets, labels: l.labels().to_vec() };
    serde_json::to_string(&doc).expect("serializable") + "\n"
}

pub fn algebra_from_json(s: &str) -> Result<LieAlgebra, IoError> {
    let doc: AlgebraJson = serde_json::from_str(s).map_err(schema)?;
    if doc.labels.len() != doc.dim {
        return Err(IoError::Schema(format!("{} labels for dimension {}", doc.labels.len(), doc.dim)));
    }
    let brackets = doc
        .brackets
        .into_iter()
        .map(|b| Ok((b.i, b.j, vector(b.v, doc.dim, &format!("bracket ({}, {})", b.i, b.j))?)))
        .collect::<Result<Vec<_>, IoError>>()?;
    let l = LieAlgebra::from_brackets(doc.dim, doc.m, brackets).map_err(schema)?;
    if l.conductor() != doc.m {
        return Err(IoError::Schema(format!(
            "entries need conductor {}, file declares {}",
            l.conductor(),
            doc.m.m()
        )));
    }
    Ok(l.with_labels(doc.labels))
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IndexJson {
    Cyclic(Vec<u32>),
    Vector(Vec<GroupElem>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DegreesJson {
    p: u32,
    index: IndexJson,
}

pub fn degrees_to_json(p: u32, d: &Degrees) -> String {
    let index = match d {
        Degrees::Cyclic(v) => IndexJson::Cyclic(v.clone()),
        Degrees::Vector(v) => IndexJson::Vector(v.clone()),
    };
    serde_json::to_string(&DegreesJson { p, index }).expect("serializable") + "\n"
}

pub fn degrees_from_json(s: &str) -> Result<(u32, Degrees), IoError> {
    let doc: DegreesJson = serde_json::from_str(s).map_err(schema)?;
    let d = match doc.index {
        IndexJson::Cyclic(v) => Degrees::Cyclic(v),
        IndexJson::Vector(v) => Degrees::Vector(v),
    };
    let bad = d.as_elems().iter().any(|g| g.len() != d.rank() || g.iter().any(|&k| k >= doc.p));
    if bad {
        return Err(IoError::Schema(format!("degrees are not elements of Z{}^{}", doc.p, d.rank())));
    }
    Ok((doc.p, d))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentJson {
    alpha: GroupElem,
    basis: Vec<Entries>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GradingJson {
    p: u32,
    r: usize,
    dim: usize,
    components: Vec<ComponentJson>,
}

/// Nonzero components only, each with its echelon basis.
pub fn grading_to_json(g: &Grading) -> String {
    let components = g
        .components()
        .filter(|(_, s)| !s.is_zero())
        .map(|(a, s)| ComponentJson { alpha: a.clone(), basis: s.basis().iter().map(entries).collect() })
        .collect();
    let doc = GradingJson { p: g.p(), r: g.r(), dim: g.ambient(), components };
    serde_json::to_string(&doc).expect("serializable") + "\n"
}

pub fn grading_from_json(s: &str) -> Result<Grading, IoError> {
    let doc: GradingJson = serde_json::from_str(s).map_err(schema)?;
    let comps = doc
        .components
        .into_iter()
        .map(|c| {
            let what = format!("component {:?}", c.alpha);
            let vs = c.basis.into_iter().map(|e| vector(e, doc.dim, &what)).collect::<Result<Vec<_>, _>>()?;
            let s = Subspace::span(doc.dim, vs.iter());
            if s.dim() != vs.len() {
                return Err(IoError::Schema(format!("{what}: basis is dependent")));
            }
            Ok((c.alpha, s))
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Grading::new(doc.p, doc.r, doc.dim, comps).map_err(schema)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AutoJson {
    name: String,
    order: u32,
    dim: usize,
    /// Sparse rows of the matrix.
    rows: Vec<Entries>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AutosJson {
    p: u32,
    generators: Vec<AutoJson>,
}

pub fn automorphisms_to_json(p: u32, autos: &[Automorphism]) -> String {
    let generators = autos
        .iter()
        .map(|a| AutoJson {
            name: a.name.clone(),
            order: a.order,
            dim: a.matrix.nrows(),
            rows: a.matrix.rows().iter().map(entries).collect(),
        })
        .collect();
    serde_json::to_string(&AutosJson { p, generators }).expect("serializable") + "\n"
}

pub fn automorphisms_from_json(s: &str) -> Result<(u32, Vec<Automorphism>), IoError> {
    let doc: AutosJson = serde_json::from_str(s).map_err(schema)?;
    let autos = doc
        .generators
        .into_iter()
        .map(|a| {
            if a.rows.len() != a.dim {
                return Err(IoError::Schema(format!(
                    "{}: {} rows for dimension {}",
                    a.name,
                    a.rows.len(),
                    a.dim
                )));
            }
            let rows =
                a.rows.into_iter().map(|e| vector(e, a.dim, &a.name)).collect::<Result<Vec<_>, _>>()?;
            Ok(Automorphism { name: a.name, matrix: Matrix::from_rows(a.dim, rows), order: a.order })
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok((doc.p, autos))
}

pub fn to_pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

pub fn from_json<T: DeserializeOwned>(s: &str) -> Result<T, IoError> {
    serde_json::from_str(s).map_err(schema)
}

pub fn read(path: &std::path::Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::File { path: path.display().to_string(), source })
}

pub fn write(path: &std::path::Path, contents: &str) -> Result<(), IoError> {
    std::fs::write(path, contents)
        .map_err(|source| IoError::File { path: path.display().to_string(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::sl2;

    #[test]
    fn algebra_roundtrip() {
        let l = sl2();
        let s = algebra_to_json(&l);
        assert_eq!(algebra_from_json(&s).unwrap(), l);
        assert_eq!(algebra_to_json(&algebra_from_json(&s).unwrap()), s);
    }

    #[test]
    fn schema_errors() {
        assert!(algebra_from_json("{}").is_err());
        assert!(algebra_from_json(
            r#"{"dim":2,"m":1,"brackets":[{"i":0,"j":1,"v":[[5,{"m":1,"c":[[1,1]]}]]}],"labels":["a","b"]}"#
        )
        .is_err());
        assert!(algebra_from_json(r#"{"dim":1,"m":7,"brackets":[],"labels":["a"]}"#).is_err());
        assert!(degrees_from_json(r#"{"p":3,"index":[0,3]}"#).is_err());
        assert!(grading_from_json(
            r#"{"p":2,"r":1,"dim":2,"components":[{"alpha":[0],"basis":[[[0,{"m":1,"c":[[1,1]]}]]]}]}"#
        )
        .is_err());
    }

    #[test]
    fn degrees_roundtrip() {
        let d = Degrees::Vector(vec![vec![0, 1, 1], vec![1, 0, 0]]);
        assert_eq!(degrees_from_json(&degrees_to_json(2, &d)).unwrap(), (2, d));
        let d = Degrees::Cyclic(vec![0, 2, 1]);
        assert_eq!(degrees_from_json(&degrees_to_json(3, &d)).unwrap(), (3, d));
    }

    #[test]
    fn grading_and_automorphism_roundtrip() {
        let g = Grading::from_degrees(3, 1, &[vec![1], vec![2], vec![0]]).unwrap();
        assert_eq!(grading_from_json(&grading_to_json(&g)).unwrap(), g);
        let m = Matrix::diagonal(vec![
            FieldElem::root_of_unity(Conductor::Three, 1),
            FieldElem::root_of_unity(Conductor::Three, 2),
            FieldElem::one(),
        ]);
        let a = Automorphism { name: "s".into(), matrix: m, order: 3 };
        let (p, back) = automorphisms_from_json(&automorphisms_to_json(3, std::slice::from_ref(&a))).unwrap();
        assert_eq!((p, back), (3, vec![a]));
    }
}
