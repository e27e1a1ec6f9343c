use std::fs;
use std::path::Path;

use symprice::io::{parse_any, to_json, to_text, Parsed};
use symprice::{Digraph, Error, Result};

/// Reads a graph in the text or JSON form. Duplicate arrows are merged and
/// reported in `warnings`.
pub fn parse_graph_file(path: &Path) -> Result<Parsed> {
    let src = fs::read_to_string(path)
        .map_err(|e| Error::Argument(format!("cannot read {}: {e}", path.display())))?;
    parse_any(&src)
}

/// Writes `g` as JSON if the path ends in `.json`, in the text form otherwise.
pub fn write_graph_file(g: &Digraph, path: &Path) -> Result<()> {
    let body = if is_json(path) { to_json(g) + "\n" } else { to_text(g) };
    write_file(path, &body)
}

pub fn write_file(path: &Path, body: &str) -> Result<()> {
    fs::write(path, body).map_err(|e| Error::Argument(format!("cannot write {}: {e}", path.display())))
}

pub fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

pub fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}
