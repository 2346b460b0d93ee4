//! One function per subcommand.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use blowup_calculus::{
    blowdown, blowdown_sites, blowup_sites, blowup_symbolic, instantiate, max_size, monotone_check, reduce_to_minimal,
};
use classify::{classify_isolated, enumerate, is_toric_extendable, recognize_minimal, EnumerationConfig};
use dh_measure::{density, extremal_self_intersections};
use graph_core::rational::parse;
use graph_core::{graph_from_json, graph_to_json, is_isomorphic, validate_graph, DecoratedGraph, GraphDoc, ShiftMode};
use homology::intersection_matrix;
use serde_json::json;
use toric_geometry::{graph_to_polygon_default, polygon_to_graph, DelzantPolygon};

use crate::render::{density_svg, graph_dot, graph_svg, polygon_svg};
use crate::seeds::parse_seed;
use crate::{CliError, Command, Format, Io, Kind, Mode};

fn read_path(p: &Path) -> Result<String, CliError> {
    fs::read_to_string(p).map_err(|e| CliError::Io(format!("cannot read {}: {e}", p.display())))
}

fn write_path(p: &Path, text: &str) -> Result<(), CliError> {
    fs::write(p, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display())))
}

struct Streams<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Streams<'_> {
    fn read(&mut self, io: &Io) -> Result<String, CliError> {
        match &io.input {
            Some(p) => read_path(p),
            None => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s).map_err(|e| CliError::Io(format!("cannot read input: {e}")))?;
                Ok(s)
            }
        }
    }

    fn emit(&mut self, out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
        let text = if text.ends_with('\n') { text.to_string() } else { format!("{text}\n") };
        match out {
            Some(p) => write_path(p, &text),
            None => {
                self.stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io(format!("cannot write output: {e}")))
            }
        }
    }

    fn graph(&mut self, io: &Io) -> Result<DecoratedGraph, CliError> {
        Ok(graph_from_json(&self.read(io)?)?)
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn graph_value(g: &DecoratedGraph) -> serde_json::Value {
    serde_json::to_value(GraphDoc::from(g)).expect("graphs serialize")
}

pub(crate) fn dispatch(cmd: Command, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut s = Streams { stdin, stdout };
    match cmd {
        Command::Validate { io } => {
            let g = s.graph(&io)?;
            let report = validate_graph(&g);
            if !report.is_valid() {
                return Err(CliError::Domain(format!("invalid graph: {report}")));
            }
            let ex = extremal_self_intersections(&g)?;
            let text = pretty(&json!({
                "valid": true,
                "e_min": ex.e_min.to_string(),
                "e_max": ex.e_max.to_string(),
                "toric_extendable": is_toric_extendable(&g),
            }));
            s.emit(&io.out, &text)
        }
        Command::Iso { a, b, mode } => {
            let (g, h) = (graph_from_json(&read_path(&a)?)?, graph_from_json(&read_path(&b)?)?);
            let mode = match mode {
                Mode::Exact => ShiftMode::Exact,
                Mode::Shift => ShiftMode::UpToShift,
            };
            let same = is_isomorphic(&g, &h, mode)?;
            s.emit(&None, &format!("isomorphic: {same}"))
        }
        Command::Dh { io, svg } => {
            let rho = density(&s.graph(&io)?)?;
            if let Some(p) = svg {
                write_path(&p, &density_svg(&rho))?;
            }
            s.emit(&io.out, &rho.to_json())
        }
        Command::Polygon2graph { io } => {
            let p = DelzantPolygon::from_json(&s.read(&io)?)?;
            s.emit(&io.out, &graph_to_json(&polygon_to_graph(&p)))
        }
        Command::Graph2polygon { io } => {
            let p = graph_to_polygon_default(&s.graph(&io)?)?;
            s.emit(&io.out, &p.to_json())
        }
        Command::Blowup { io, vertex, lambda } => {
            let g = s.graph(&io)?;
            let Some(v) = vertex else {
                let mut rows = Vec::new();
                for site in blowup_sites(&g) {
                    let m = max_size(&g, &site)?;
                    rows.push(json!({ "site": site, "max_size": m }));
                }
                return s.emit(&io.out, &pretty(&serde_json::Value::Array(rows)));
            };
            let lambda = parse(&lambda.ok_or_else(|| CliError::Domain("--lambda is required with --vertex".into()))?)?;
            let site = blowup_sites(&g)
                .into_iter()
                .find(|x| x.vertex.as_str() == v)
                .ok_or_else(|| CliError::Domain(format!("no vertex {v}")))?;
            let sb = blowup_symbolic(&g, &site)?;
            if !monotone_check(&sb, &lambda) {
                let bound = match max_size(&g, &site)?.supremum {
                    Some(b) => format!(" (sizes must stay below {b})"),
                    None => String::new(),
                };
                return Err(CliError::Domain(format!("monotonicity violated: λ = {lambda}{bound}")));
            }
            s.emit(&io.out, &graph_to_json(&instantiate(&sb, &lambda)?))
        }
        Command::Blowdown { io, site } => {
            let g = s.graph(&io)?;
            let sites = blowdown_sites(&g);
            match site {
                None => {
                    let rows: Vec<_> =
                        sites.iter().enumerate().map(|(i, x)| json!({ "index": i, "site": x })).collect();
                    s.emit(&io.out, &pretty(&serde_json::Value::Array(rows)))
                }
                Some(i) => {
                    let x = sites.get(i).ok_or_else(|| CliError::Domain(format!("no blow-down site {i}")))?;
                    s.emit(&io.out, &graph_to_json(&blowdown(&g, x)?))
                }
            }
        }
        Command::Minimal { io } => {
            let r = reduce_to_minimal(&s.graph(&io)?)?;
            let family = recognize_minimal(&r.minimal).map(|f| f.to_string());
            let text = pretty(&json!({
                "family": family,
                "steps": r.steps,
                "minimal": graph_value(&r.minimal),
            }));
            s.emit(&io.out, &text)
        }
        Command::Enumerate { seeds, max_blowups, out } => {
            let seeds = seeds.iter().map(|x| parse_seed(x)).collect::<Result<Vec<_>, _>>()?;
            let classes = enumerate(&EnumerationConfig::new(seeds, max_blowups))?;
            let Some(dir) = out else {
                let rows: Vec<_> = classes
                    .iter()
                    .map(
                        |c| json!({ "seed": c.seed, "depth": c.depth, "hash": c.hash, "graph": graph_value(&c.graph) }),
                    )
                    .collect();
                return s.emit(&None, &pretty(&serde_json::Value::Array(rows)));
            };
            fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
            let mut index = Vec::new();
            for (i, c) in classes.iter().enumerate() {
                let name = format!("class-{i:05}.json");
                write_path(&dir.join(&name), &format!("{}\n", graph_to_json(&c.graph)))?;
                index.push(json!({ "file": name, "seed": c.seed, "depth": c.depth, "hash": c.hash }));
            }
            write_path(&dir.join("index.json"), &format!("{}\n", pretty(&serde_json::Value::Array(index))))?;
            s.emit(&None, &format!("{} classes written to {}", classes.len(), dir.display()))
        }
        Command::Classify { io } => {
            let p = classify_isolated(&s.graph(&io)?)?;
            s.emit(&io.out, &p.to_json())
        }
        Command::Homology { io } => {
            let d = intersection_matrix(&s.graph(&io)?)?;
            let names: Vec<String> = d.curves.iter().map(|c| c.to_string()).collect();
            let w = names.iter().map(String::len).max().unwrap_or(1).max(3);
            let mut text = format!("{:w$}", "");
            for n in &names {
                text.push_str(&format!(" {n:>w$}"));
            }
            text.push('\n');
            for (n, row) in names.iter().zip(&d.matrix) {
                text.push_str(&format!("{n:w$}"));
                for x in row {
                    text.push_str(&format!(" {x:>w$}"));
                }
                text.push('\n');
            }
            let basis: Vec<&str> = d.basis.iter().map(|&i| names[i].as_str()).collect();
            text.push_str(&format!("basis: {}\n", basis.join(" ")));
            s.emit(&io.out, &text)
        }
        Command::Render { io, kind, format } => {
            let input = s.read(&io)?;
            let doc = match (kind, format) {
                (Kind::Graph, Format::Svg) => graph_svg(&graph_from_json(&input)?),
                (Kind::Graph, Format::Dot) => graph_dot(&graph_from_json(&input)?),
                (Kind::Polygon, Format::Svg) => polygon_svg(&DelzantPolygon::from_json(&input)?),
                (Kind::Density, Format::Svg) => {
                    let doc: dh_measure::DensityDoc = serde_json::from_str(&input)?;
                    density_svg(&dh_measure::PiecewiseLinearDensity::try_from(&doc)?)
                }
                (_, Format::Dot) => return Err(CliError::Domain("dot output is only available for graphs".into())),
            };
            s.emit(&io.out, &doc)
        }
    }
}
