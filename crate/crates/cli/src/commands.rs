use std::collections::BTreeSet;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use daisy_hamming::daisy::{build_daisy, canonical_minimal_host, is_daisy, is_minimal_host};
use daisy_hamming::document::{labeled_to_dot, to_dot, DocumentGraph, GraphDocument, ScriptDocument};
use daisy_hamming::exec::Exec;
use daisy_hamming::expansion::{self, contract_generic, daisy_peripheral_expand_at, decompose_to_k1, validate_cover};
use daisy_hamming::graph::{is_isometric, Graph, LabeledGraph, Metric};
use daisy_hamming::medians::rooted_triangle_condition;
use daisy_hamming::relations::{delta_classes_rooted, EdgeClass};
use daisy_hamming::verify::{run_suite, SuiteConfig};
use daisy_hamming::{Shape, Vertex};

use crate::{emit, read_input, Format, Status};

fn load(path: &Path) -> Result<GraphDocument> {
    let text = read_input(path)?;
    GraphDocument::parse(&text).with_context(|| format!("{}", path.display()))
}

fn parse_vertex(s: &str) -> Result<Vertex> {
    s.trim().parse().with_context(|| format!("bad vertex `{s}`"))
}

fn list(vs: &[Vertex]) -> String {
    vs.iter().map(|v| format!("({v})")).collect::<Vec<_>>().join(" ")
}

/// Summaries go to stdout when the document goes to a file, else to stderr.
fn summary(out: Option<&Path>, line: &str) {
    if out.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

pub fn build(shape: &str, root: Option<&str>, generators: &[String], out: Option<&Path>) -> Result<Status> {
    let shape: Shape = shape.parse().with_context(|| format!("bad shape `{shape}`"))?;
    let root = match root {
        Some(r) => parse_vertex(r)?,
        None => shape.root(),
    };
    let generators = generators.iter().map(|g| parse_vertex(g)).collect::<Result<Vec<_>>>()?;
    let d = build_daisy(&shape, &root, &generators)?;
    let g = d.to_labeled(&shape)?;
    let notes = vec![format!("generated by {}", list(&d.generators))];
    emit(out, &GraphDocument::labeled(&g, &root, notes).to_text())?;
    summary(
        out,
        &format!(
            "{} vertices, {} edges; generators {}",
            g.order(),
            g.graph().size(),
            list(&d.generators)
        ),
    );
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct Finding {
    property: &'static str,
    holds: bool,
    /// Properties that only inform never fail the command.
    required: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

fn finding(property: &'static str, holds: bool, required: bool, witness: Option<String>) -> Finding {
    Finding {
        property,
        holds,
        required,
        witness,
    }
}

fn check_labeled(g: &LabeledGraph, root: &Vertex) -> Result<Vec<Finding>> {
    let shape = g.shape();
    let daisy = is_daisy(shape, g.vertices(), root)?;
    let iso = is_isometric(g);
    let mut found = vec![
        finding(
            "daisy",
            daisy.is_daisy,
            true,
            daisy
                .violation
                .map(|w| format!("I(({root}), ({})) misses ({})", w.vertex, w.missing)),
        ),
        finding(
            "isometric",
            iso.isometric,
            true,
            iso.witness.map(|w| {
                let sub = w.sub.map_or("unreachable".to_string(), |d| d.to_string());
                format!("({}) to ({}): host distance {}, inside {sub}", w.u, w.v, w.host)
            }),
        ),
    ];
    let minimal = is_minimal_host(g);
    let witness = if minimal {
        None
    } else {
        Some(format!("canonical host {}", canonical_minimal_host(g)?.graph.shape()))
    };
    found.push(finding("minimal host", minimal, false, witness));
    Ok(found)
}

fn check_generic(graph: &Graph, root: usize) -> Result<Vec<Finding>> {
    let connected = graph.is_connected();
    let mut found = vec![finding("connected", connected, true, None)];
    if connected {
        let v = rooted_triangle_condition(&Metric::new(graph.clone()), root)?;
        found.push(finding(
            "rooted triangle condition",
            v.is_none(),
            true,
            v.map(|t| format!("apex {}, pair {} {}", graph.name(t.apex), graph.name(t.v), graph.name(t.w))),
        ));
    }
    Ok(found)
}

pub fn check(input: &Path, format: Format) -> Result<Status> {
    let found = match load(input)?.graph()? {
        DocumentGraph::Labeled { graph, root } => check_labeled(&graph, &root)?,
        DocumentGraph::Generic { graph, root } => check_generic(&graph, root)?,
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&found)?),
        Format::Text => {
            for f in &found {
                let w = f.witness.as_deref().map(|w| format!(" ({w})")).unwrap_or_default();
                println!("{}: {}{w}", f.property, if f.holds { "yes" } else { "no" });
            }
        }
        Format::Dot => bail!("check reports are text or json"),
    }
    if found.iter().any(|f| f.required && !f.holds) {
        Ok(Status::ChecksFailed)
    } else {
        Ok(Status::Ok)
    }
}

#[derive(Serialize)]
struct ClassSummary {
    /// Coordinates along which the class's edges run (labeled documents).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    coordinates: Vec<usize>,
    edges: usize,
    anchor: Option<[String; 2]>,
}

fn summarize_classes(classes: &[EdgeClass], label: impl Fn(usize) -> String, coords: impl Fn(usize, usize) -> Vec<usize>) -> Vec<ClassSummary> {
    classes
        .iter()
        .map(|c| {
            let coordinates: BTreeSet<usize> = c.edges.iter().flat_map(|&(a, b)| coords(a, b)).collect();
            ClassSummary {
                coordinates: coordinates.into_iter().collect(),
                edges: c.edges.len(),
                anchor: c.anchor.map(|(a, b)| [label(a), label(b)]),
            }
        })
        .collect()
}

pub fn classes(input: &Path, format: Format) -> Result<Status> {
    let summaries = match load(input)?.graph()? {
        DocumentGraph::Labeled { graph, root } => {
            let classes = delta_classes_rooted(&graph.metric(), graph.require(&root)?)?;
            summarize_classes(
                &classes,
                |v| format!("({})", graph.vertex(v)),
                |a, b| {
                    let (x, y) = (graph.vertex(a), graph.vertex(b));
                    (1..=graph.shape().dim()).filter(|&j| x.coord(j) != y.coord(j)).collect()
                },
            )
        }
        DocumentGraph::Generic { graph, root } => {
            let classes = delta_classes_rooted(&Metric::new(graph.clone()), root)?;
            summarize_classes(&classes, |v| graph.name(v).to_string(), |_, _| Vec::new())
        }
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&summaries)?),
        Format::Text => {
            println!("{} classes", summaries.len());
            for (i, c) in summaries.iter().enumerate() {
                let coords = match c.coordinates.as_slice() {
                    [] => String::new(),
                    cs => format!(
                        "coordinate {}, ",
                        cs.iter().map(|j| j.to_string()).collect::<Vec<_>>().join("+")
                    ),
                };
                let anchor = c
                    .anchor
                    .as_ref()
                    .map_or("no root edge".to_string(), |[a, b]| format!("anchored at {a}-{b}"));
                println!("class {}: {coords}{} edges, {anchor}", i + 1, c.edges);
            }
        }
        Format::Dot => bail!("class listings are text or json"),
    }
    Ok(Status::Ok)
}

fn parse_cover<T: Clone>(spec: &str, all: &[T], item: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    if spec.trim() == "all" {
        return Ok(all.to_vec());
    }
    spec.split(';').filter(|s| !s.trim().is_empty()).map(item).collect()
}

pub fn expand(input: &Path, covers: &[String], coord: usize, out: Option<&Path>) -> Result<Status> {
    if covers.is_empty() {
        bail!("expand needs covering sets (--cover, in order W_0, W_1, …)");
    }
    let doc = load(input)?;
    let mut notes = doc.notes.clone();
    let text = match doc.graph()? {
        DocumentGraph::Labeled { .. } => {
            let g = doc.labeled_graph()?;
            let sets = covers
                .iter()
                .map(|c| parse_cover(c, g.vertices(), parse_vertex))
                .collect::<Result<Vec<_>>>()?;
            let e = daisy_peripheral_expand_at(&g, &sets, coord)?;
            notes.push(format!("expanded at coordinate {coord} along {} sets", sets.len()));
            summary(out, &format!("{} vertices in host {}", e.order(), e.shape()));
            GraphDocument::labeled(&e, &e.shape().root(), notes).to_text()
        }
        DocumentGraph::Generic { graph, root } => {
            let all: Vec<usize> = (0..graph.order()).collect();
            let sets = covers
                .iter()
                .map(|c| {
                    parse_cover(c, &all, |s| {
                        graph.index_of(s.trim()).with_context(|| format!("unknown vertex `{s}`"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let m = Metric::new(graph);
            let rec = expansion::expand(&m, &validate_cover(&m, &sets)?)?;
            let new_root = rec.copies(root)[0];
            notes.push(format!("expanded along {} sets", sets.len()));
            summary(out, &format!("{} vertices", rec.graph.order()));
            GraphDocument::generic(&rec.graph, new_root, notes).to_text()
        }
    };
    emit(out, &text)?;
    Ok(Status::Ok)
}

pub fn contract(input: &Path, coord: usize, out: Option<&Path>) -> Result<Status> {
    let doc = load(input)?;
    let mut notes = doc.notes.clone();
    let text = match doc.graph()? {
        DocumentGraph::Labeled { .. } => {
            let g = doc.labeled_graph()?;
            let c = expansion::contract(&g, coord)?;
            notes.push(format!("contracted coordinate {coord}"));
            for (l, x) in c.covers.iter().enumerate() {
                summary(out, &format!("X_{l}: {}", list(x)));
            }
            GraphDocument::labeled(&c.graph, &c.graph.shape().root(), notes).to_text()
        }
        DocumentGraph::Generic { graph, root } => {
            let classes = delta_classes_rooted(&Metric::new(graph.clone()), root)?;
            let Some(class) = coord.checked_sub(1).and_then(|i| classes.get(i)) else {
                bail!("class {coord} out of range 1..={}", classes.len());
            };
            let c = contract_generic(&graph, &class.edges)?;
            let new_root = c.blocks.iter().position(|b| b.contains(&root)).expect("blocks cover");
            notes.push(format!("contracted class {coord}"));
            summary(out, &format!("{} vertices", c.graph.order()));
            GraphDocument::generic(&c.graph, new_root, notes).to_text()
        }
    };
    emit(out, &text)?;
    Ok(Status::Ok)
}

pub fn decompose(input: &Path, out: Option<&Path>) -> Result<Status> {
    let doc = load(input)?;
    let g = doc.labeled_graph()?;
    let d = decompose_to_k1(&g)?;
    emit(out, &ScriptDocument::from_decomposition(&d, doc.notes.clone()).to_text())?;
    summary(out, &format!("{} steps", d.steps.len()));
    Ok(Status::Ok)
}

pub fn replay(script: &Path, out: Option<&Path>) -> Result<Status> {
    let text = crate::read_input(script)?;
    let script = ScriptDocument::parse(&text).with_context(|| format!("{}", script.display()))?;
    emit(out, &script.replay()?.to_text())?;
    Ok(Status::Ok)
}

pub fn verify(config: &SuiteConfig, format: Format, out: Option<&Path>, exec: Exec) -> Result<Status> {
    let report = run_suite(config, exec)?;
    let text = match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
        Format::Dot => bail!("verify reports are text or json"),
    };
    emit(out, &text)?;
    if out.is_some() {
        println!("{} checks, {} failed", report.reports.len(), report.failures());
    }
    Ok(if report.failures() == 0 { Status::Ok } else { Status::ChecksFailed })
}

pub fn export(input: &Path, format: Format, out: Option<&Path>) -> Result<Status> {
    let doc = load(input)?;
    let text = match (format, doc.graph()?) {
        (Format::Json, _) => doc.to_text(),
        (Format::Dot, DocumentGraph::Labeled { graph, root }) => {
            let classes = delta_classes_rooted(&graph.metric(), graph.require(&root)?)?;
            labeled_to_dot(&graph, &root, &classes)?
        }
        (Format::Dot, DocumentGraph::Generic { graph, root }) => {
            let classes = delta_classes_rooted(&Metric::new(graph.clone()), root)?;
            to_dot(&graph, graph.names(), root, &classes)
        }
        (Format::Text, _) => bail!("export formats are dot or json"),
    };
    emit(out, &text)?;
    Ok(Status::Ok)
}
