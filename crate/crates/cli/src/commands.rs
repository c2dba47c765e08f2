use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::time::Instant;

use jgk_core::io::{self, IoError};
use jgk_core::pipeline::{self, ModelId, PipelineError, VerifyOptions};
use jgk_core::verify::{Certificate, JacobiMode};
use serde_json::{json, Value};

/// A failed command and its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Some check did not pass (exit 1).
    Check(String),
    /// Bad arguments, missing or malformed files (exit 2).
    Usage(String),
    /// The structure-constant solver found no solution (exit 3).
    Solver(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Solver(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Usage(m) | Failure::Solver(m) => m,
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Usage(m) => Failure::Usage(m),
            PipelineError::Model(_) => Failure::Solver(e.to_string()),
            PipelineError::Auto(_) => Failure::Check(e.to_string()),
        }
    }
}

pub struct Paths {
    dir: PathBuf,
    id: ModelId,
}

impl Paths {
    pub fn new(dir: &Path, id: ModelId) -> Paths {
        Paths { dir: dir.to_path_buf(), id }
    }

    pub fn file(&self, kind: &str) -> PathBuf {
        self.dir.join(format!("{}.{kind}.json", self.id))
    }

    fn read(&self, kind: &str, hint: &str) -> Result<String, Failure> {
        let path = self.file(kind);
        if !path.exists() {
            return Err(Failure::Usage(format!(
                "{} not found; run `jgk {hint} {}` first",
                path.display(),
                self.id
            )));
        }
        Ok(io::read(&path)?)
    }

    fn write(&self, kind: &str, contents: &str) -> Result<PathBuf, Failure> {
        std::fs::create_dir_all(&self.dir)
            .map_err(|e| Failure::Usage(format!("{}: {e}", self.dir.display())))?;
        let path = self.file(kind);
        io::write(&path, contents)?;
        Ok(path)
    }
}

fn schema(path: &Path, e: impl Display) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

pub fn build(out: &Path, id: ModelId, corrupted: bool) -> Result<(), Failure> {
    if corrupted {
        if id != ModelId::E8Z5 {
            return Err(Failure::Usage("--corrupted applies to e8-z5 only".into()));
        }
        pipeline::build_corrupted_e8()?;
        return Err(Failure::Check("the corrupted skeleton unexpectedly has a solution".into()));
    }
    let model = pipeline::build(id)?;
    let paths = Paths::new(out, id);
    let a = paths.write("algebra", &io::algebra_to_json(&model.algebra))?;
    let d = paths.write("degrees", &io::degrees_to_json(id.p(), &model.degrees))?;
    println!("{id}: dim {}", model.algebra.dim());
    println!("wrote {}", a.display());
    println!("wrote {}", d.display());
    Ok(())
}

pub fn grade(out: &Path, id: ModelId, skip_normalization: bool) -> Result<(), Failure> {
    let paths = Paths::new(out, id);
    let text = paths.read("algebra", "build")?;
    let on_disk = io::algebra_from_json(&text).map_err(|e| schema(&paths.file("algebra"), e))?;
    let model = pipeline::build(id)?;
    if on_disk != model.algebra {
        return Err(Failure::Usage(format!(
            "{} differs from the {id} model; rebuild it with `jgk build {id}`",
            paths.file("algebra").display()
        )));
    }
    let outcome = pipeline::grade(&model, skip_normalization)?;
    let Some(grading) = outcome.grading else {
        return Err(Failure::Check(outcome.messages.join("; ")));
    };
    let table = grading.dim_table();
    for (d, n) in &table {
        println!("{id}: {n} components of dim {d}");
    }
    let g = paths.write("grading", &io::grading_to_json(&grading))?;
    let a = paths.write("autos", &io::automorphisms_to_json(id.p(), &outcome.spec.generators))?;
    println!("wrote {}", g.display());
    println!("wrote {}", a.display());
    Ok(())
}

pub fn verify(
    out: &Path,
    id: ModelId,
    full_jacobi: bool,
    sample: Option<u64>,
    seed: u64,
    timing: bool,
) -> Result<(), Failure> {
    let start = Instant::now();
    let paths = Paths::new(out, id);
    let l = io::algebra_from_json(&paths.read("algebra", "build")?)
        .map_err(|e| schema(&paths.file("algebra"), e))?;
    let (p, degrees) = io::degrees_from_json(&paths.read("degrees", "build")?)
        .map_err(|e| schema(&paths.file("degrees"), e))?;
    let g = io::grading_from_json(&paths.read("grading", "grade")?)
        .map_err(|e| schema(&paths.file("grading"), e))?;
    let (ap, autos) = io::automorphisms_from_json(&paths.read("autos", "grade")?)
        .map_err(|e| schema(&paths.file("autos"), e))?;
    if p != id.p() || ap != id.p() {
        return Err(Failure::Usage(format!("{id} is graded mod {}, files declare {p} and {ap}", id.p())));
    }

    let mut opts = VerifyOptions::default_for(l.dim(), seed);
    if full_jacobi {
        opts.jacobi = JacobiMode::Full;
    } else if let Some(n) = sample {
        opts.jacobi = JacobiMode::Sample { n, seed };
    }
    let mut cert = pipeline::certify(id, &l, &degrees, &g, &autos, opts);
    if timing {
        cert.elapsed_ms = start.elapsed().as_millis() as u64;
    }
    print_certificate(&cert);
    let path = paths.write("cert", &io::to_pretty(&cert))?;
    println!("wrote {}", path.display());
    let failed: Vec<&str> = cert.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("{id}: failed {}", failed.join(", "))))
    }
}

fn print_certificate(cert: &Certificate) {
    for c in &cert.checks {
        if c.pass {
            println!("PASS {:<26} {}", c.name, c.count);
        } else {
            println!("FAIL {:<26} {}", c.name, c.witness);
        }
    }
}

pub fn export(out: &Path, id: ModelId, to: Option<PathBuf>) -> Result<(), Failure> {
    let paths = Paths::new(out, id);
    let mut bundle = serde_json::Map::new();
    bundle.insert("model".into(), json!(id.name()));
    for (kind, hint, required) in [
        ("algebra", "build", true),
        ("degrees", "build", true),
        ("grading", "grade", true),
        ("autos", "grade", true),
        ("cert", "verify", false),
    ] {
        if !required && !paths.file(kind).exists() {
            continue;
        }
        let v: Value = io::from_json(&paths.read(kind, hint)?).map_err(|e| schema(&paths.file(kind), e))?;
        bundle.insert(kind.into(), v);
    }
    let dest = to.unwrap_or_else(|| paths.file("bundle"));
    if let Some(parent) = dest.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Failure::Usage(format!("{}: {e}", parent.display())))?;
    }
    io::write(&dest, &(serde_json::to_string(&Value::Object(bundle)).expect("serializable") + "\n"))?;
    println!("wrote {}", dest.display());
    Ok(())
}
