use std::fs;
use std::path::Path;
use std::sync::Arc;

use ahtop_core::exact::{parse_probes, Probe};
use ahtop_core::graph::{standard_from_name, GraphFile, GraphMap, MapFile, PointedGraph, Vertex};
use ahtop_core::Error;

use crate::args::MapSource;
use crate::report::Failure;

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

/// Tags JSON errors with the file and the line/column reported by the parser.
fn located(path: &str, e: Error) -> Failure {
    match e {
        Error::Json(j) => Failure::Input(format!("{path}: line {}, column {}: {j}", j.line(), j.column())),
        other => Failure::Input(format!("{path}: {other}")),
    }
}

/// A file path, or failing that a standard name like `C5`.
pub fn graph(arg: &str) -> Result<Arc<PointedGraph>, Failure> {
    if Path::new(arg).is_file() {
        let text = read(arg)?;
        let file = GraphFile::parse(&text).map_err(|e| located(arg, e))?;
        return file.to_pointed().map(Arc::new).map_err(|e| located(arg, e));
    }
    standard_from_name(arg)
        .map(Arc::new)
        .map_err(|e| Failure::Input(format!("{arg:?} is neither a readable file nor a standard graph ({e})")))
}

/// The raw assignment named by a map argument. No graph-map check happens
/// here, so callers can report violations themselves.
pub fn assignment(arg: &str, dom: &PointedGraph, cod: &PointedGraph) -> Result<Vec<Vertex>, Failure> {
    let n = dom.vertex_count();
    if arg == "id" {
        if dom != cod {
            return Err(Failure::Input("`id` needs equal domain and codomain".into()));
        }
        return Ok((0..n).collect());
    }
    if let Some(k) = arg.strip_prefix("const") {
        let k: Vertex = k
            .parse()
            .map_err(|_| Failure::Input(format!("bad constant map {arg:?}")))?;
        if k >= cod.vertex_count() {
            return Err(Failure::Input(format!("{arg}: vertex {k} is not in the codomain")));
        }
        return Ok(vec![k; n]);
    }
    if !arg.is_empty() && arg.chars().all(|c| c.is_ascii_digit() || c == ',' || c == ' ') {
        let values: Result<Vec<Vertex>, _> = arg.split(',').map(|s| s.trim().parse()).collect();
        return values.map_err(|_| Failure::Input(format!("bad assignment list {arg:?}")));
    }
    let text = read(arg)?;
    let file = MapFile::parse(&text).map_err(|e| located(arg, e))?;
    let (fd, fc) = (file.domain.to_pointed(), file.codomain.to_pointed());
    let (fd, fc) = (fd.map_err(|e| located(arg, e))?, fc.map_err(|e| located(arg, e))?);
    if &fd != dom || &fc != cod {
        return Err(Failure::Input(format!("{arg}: map file graphs differ from --G/--H")));
    }
    Ok(file.assignment)
}

pub fn map(arg: &str, dom: &Arc<PointedGraph>, cod: &Arc<PointedGraph>, pointed: bool) -> Result<GraphMap, Failure> {
    let a = assignment(arg, dom, cod)?;
    GraphMap::new(dom.clone(), cod.clone(), a, pointed).map_err(|e| Failure::Input(format!("{arg}: {e}")))
}

/// A pointed map from `--map`, or from `--G`, `--H` (default `--G`) and `--f`.
pub fn pointed_map(src: &MapSource) -> Result<GraphMap, Failure> {
    if let Some(path) = &src.map {
        let text = read(path)?;
        let file = MapFile::parse(&text).map_err(|e| located(path, e))?;
        let f = file.to_map().map_err(|e| located(path, e))?;
        return f.as_pointed().map_err(|e| located(path, e));
    }
    let (Some(g), Some(f)) = (&src.g, &src.f) else {
        return Err(Failure::Input("give either --map or both --G and --f".into()));
    };
    let dom = graph(g)?;
    let cod = match &src.h {
        Some(h) => graph(h)?,
        None => dom.clone(),
    };
    map(f, &dom, &cod, true)
}

pub fn probes(arg: &str) -> Result<Vec<Probe>, Failure> {
    if arg == "default" || arg.split(',').all(|n| standard_from_name(n.trim()).is_ok()) {
        return parse_probes(arg).map_err(|e| Failure::Input(format!("--probes: {e}")));
    }
    arg.split(',')
        .map(|name| {
            let name = name.trim();
            Ok(Probe::new(name, (*graph(name)?).clone()))
        })
        .collect()
}

/// Accepts only the listed values for `--expect`, before any work starts.
pub fn expectation(value: &Option<String>, allowed: &[&str]) -> Result<(), Failure> {
    match value {
        Some(v) if !allowed.contains(&v.as_str()) => Err(Failure::Input(format!(
            "--expect {v:?}: expected one of {}",
            allowed.join(", ")
        ))),
        _ => Ok(()),
    }
}
