//! The summary table, one row per built model in the order of the classification table.

use std::path::Path;

use jgk_core::io;
use jgk_core::pipeline::ModelId;
use jgk_core::verify::Certificate;

use crate::commands::{Failure, Paths};

/// Rows of the classification table; `None` marks the grading this tool does not construct.
const ROWS: [(&str, &str, Option<ModelId>); 6] = [
    ("G2", "Z2^3", Some(ModelId::G2Z2)),
    ("F4", "Z3^3", Some(ModelId::F4Z3)),
    ("E8", "Z5^3", Some(ModelId::E8Z5)),
    ("D4", "Z2^3", Some(ModelId::D4Z2)),
    ("E8", "Z2^5", None),
    ("E6", "Z3^3", Some(ModelId::E6Z3)),
];

const HEADER: [&str; 7] = ["algebra", "group", "dim g_a", "lines", "Cartan", "orthogonal", "status"];

fn yes_no(cert: &Certificate, names: &[&str]) -> String {
    let all = names.iter().all(|n| cert.check(n).is_some_and(|c| c.pass));
    if all { "yes" } else { "no" }.into()
}

fn row(out: &Path, algebra: &str, group: &str, id: ModelId) -> Result<Option<Vec<String>>, Failure> {
    let paths = Paths::new(out, id);
    if !paths.file("algebra").exists() {
        return Ok(None);
    }
    let mut cells = vec![algebra.to_string(), group.to_string()];
    let cert_path = paths.file("cert");
    if !cert_path.exists() {
        cells.extend(["-", "-", "-", "-", "not verified"].map(String::from));
        return Ok(Some(cells));
    }
    let cert: Certificate = io::from_json(&io::read(&cert_path)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", cert_path.display())))?;
    let classes = cert
        .dims
        .get("classes")
        .and_then(|v| v.as_object())
        .map(|m| m.iter().map(|(d, n)| format!("{d} (x{n})")).collect::<Vec<_>>().join(", "))
        .unwrap_or_else(|| "-".into());
    let lines = match (cert.dims.get("lines"), cert.dims.get("line_dim")) {
        (Some(n), Some(d)) => format!("{n} x dim {d}"),
        _ => "-".into(),
    };
    cells.push(classes);
    cells.push(lines);
    cells.push(yes_no(&cert, &["lines_cartan", "line_dims"]));
    cells.push(yes_no(&cert, &["killing_orthogonal", "lines_nondegenerate"]));
    cells.push(if cert.passed() { "pass" } else { "FAIL" }.into());
    Ok(Some(cells))
}

pub fn render(out: &Path) -> Result<String, Failure> {
    let mut rows: Vec<Vec<String>> = Vec::new();
    for (algebra, group, id) in ROWS {
        match id {
            Some(id) => rows.extend(row(out, algebra, group, id)?),
            None => {
                let mut cells = vec![algebra.to_string(), group.to_string(), "8".to_string()];
                cells.extend(["-", "-", "-", "out of scope"].map(String::from));
                rows.push(cells);
            }
        }
    }
    // The out-of-scope row only accompanies rows for built models.
    if rows.len() == 1 {
        rows.clear();
    }
    let widths: Vec<usize> = (0..HEADER.len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).chain([HEADER[c].len()]).max().unwrap_or(0))
        .collect();
    let fmt_row = |cells: &[&str]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = fmt_row(&HEADER);
    for r in &rows {
        s += &fmt_row(&r.iter().map(String::as_str).collect::<Vec<_>>());
    }
    Ok(s)
}

pub fn run(out: &Path) -> Result<(), Failure> {
    print!("{}", render(out)?);
    Ok(())
}
