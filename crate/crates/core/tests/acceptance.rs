//! Acceptance criteria, each run at its stated scale and time limit.
//!
//! Every criterion prints one `PASS`/`FAIL` line. Criterion 4 contains a
//! claim that is false for the stated triple (see `c6_counterexample`); it
//! is reported red and the test pins down exactly how it fails.

use std::io::Write;
use std::time::{Duration, Instant};

use daisy_hamming::exec::Exec;
use daisy_hamming::graph::LabeledGraph;
use daisy_hamming::hamming::Shape;
use daisy_hamming::medians::all_distinct_coords;
use daisy_hamming::verify::{
    c6_facts, characterization_sides, check_expansion_theorems, check_hamming_intervals, check_pair_theorem,
    check_quasi_median_rule, check_round_trip, check_structure_lemmas, check_triangle_condition_hamming,
    shapes_up_to, CheckReport, RootedGraph, DEFAULT_SEED,
};

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Result<String, String>,
}

struct Outcome {
    id: u32,
    pass: bool,
    elapsed: Duration,
    message: String,
}

fn shapes(list: &[&str]) -> Vec<Shape> {
    list.iter().map(|s| s.parse().unwrap()).collect()
}

fn summarize(reports: &[CheckReport]) -> Result<String, String> {
    match reports.iter().find(|r| !r.passed() || r.verdict != daisy_hamming::verify::Verdict::Pass) {
        None if reports.len() <= 4 => Ok(reports
            .iter()
            .map(|r| format!("{}: {}", r.instance, r.detail))
            .collect::<Vec<_>>()
            .join("; ")),
        None => Ok(format!("{} instances", reports.len())),
        Some(r) => Err(format!(
            "{} on {}: {:?} {} {}",
            r.check,
            r.instance,
            r.verdict,
            r.detail,
            r.witness.clone().unwrap_or_default()
        )),
    }
}

fn intervals() -> Result<String, String> {
    summarize(&check_hamming_intervals(&shapes_up_to(64, true), Exec::default()))
}

fn quasi_medians() -> Result<String, String> {
    summarize(&check_quasi_median_rule(&shapes(&["3,3", "2,2,2"]), Exec::default()))
}

fn triangle_condition() -> Result<String, String> {
    let family: Vec<Shape> = shapes_up_to(64, true)
        .into_iter()
        .filter(|s| s.dim() <= 3 && s.factors().iter().all(|&k| k <= 4))
        .collect();
    summarize(&check_triangle_condition_hamming(&family, Exec::default()))
}

fn c6_counterexample() -> Result<String, String> {
    let f = c6_facts(Exec::default()).map_err(|e| e.to_string())?;
    let mut broken = Vec::new();
    if !(f.u_daisy_is_whole_graph && f.u_daisy_isometric) {
        broken.push("G_r({u}) is not all of C6 or not isometric".to_string());
    }
    if !f.size_x1_y1_r.is_some_and(|s| s >= 2) {
        broken.push(format!(
            "triple (x1, y1, r) has minimal pseudo-median size {:?}: x1 and y1 are antipodal, so (r, r, r) is a median",
            f.size_x1_y1_r
        ));
    }
    let Some(witness) = &f.first_non_isometric else {
        return Err("every daisy graph of C6 is isometric".into());
    };
    let detail = format!(
        "non-isometric daisy graph {{{}}}; G_r({{x1, y2}}) isometric: {}; (x1, y2, r) has size {:?}",
        witness.join(", "),
        f.x1_y2_daisy_isometric,
        f.size_x1_y2_r
    );
    if broken.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{}; {detail}", broken.join("; ")))
    }
}

fn characterization() -> Result<String, String> {
    let hosts = shapes_up_to(27, false);
    let mut daisy_free = 0;
    for shape in &hosts {
        let g = RootedGraph::hamming(shape).map_err(|e| e.to_string())?;
        let sides = characterization_sides(&g.metric, g.root, Exec::default()).map_err(|e| e.to_string())?;
        let left = sides.non_isometric.is_none();
        let right = sides.large_pair.is_none();
        // The coordinate rule gives the same right side without enumeration.
        let full = LabeledGraph::full(shape.clone(), 27).unwrap();
        let root = full.vertex(0);
        let rule = full.vertices().iter().all(|u| {
            full.vertices().iter().all(|v| all_distinct_coords(u, v, root) <= 1)
        });
        if right != rule {
            return Err(format!("host {shape}: enumeration says {right}, coordinate rule says {rule}"));
        }
        if left != right {
            return Err(format!("host {shape}: all daisy graphs isometric {left}, all pairs small {right}"));
        }
        daisy_free += left as usize;
    }
    Ok(format!("{} hosts, {daisy_free} with every daisy graph isometric", hosts.len()))
}

fn pair_theorem() -> Result<String, String> {
    summarize(&check_pair_theorem(&shapes(&["3,3", "4,2", "2,2,2"]), Exec::default()))
}

const STRUCTURE_SHAPES: [&str; 4] = ["2,2", "3,2", "3,3", "2,2,2"];

fn structure() -> Result<String, String> {
    summarize(&check_structure_lemmas(&shapes(&STRUCTURE_SHAPES), Exec::default()))
}

fn expansion() -> Result<String, String> {
    summarize(&check_expansion_theorems(&shapes_up_to(12, true), DEFAULT_SEED, 100, Exec::default()))
}

fn round_trip() -> Result<String, String> {
    summarize(&check_round_trip(&shapes(&STRUCTURE_SHAPES), Exec::default()))
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, name: "interval oracle equivalence", limit: Duration::from_secs(10), run: intervals },
    Criterion { id: 2, name: "quasi-median agreement", limit: Duration::from_secs(60), run: quasi_medians },
    Criterion { id: 3, name: "triangle condition on Hamming graphs", limit: Duration::from_secs(60), run: triangle_condition },
    Criterion { id: 4, name: "C6 counterexample", limit: Duration::from_secs(1), run: c6_counterexample },
    Criterion { id: 5, name: "characterization biconditional", limit: Duration::from_secs(300), run: characterization },
    Criterion { id: 6, name: "two-generator theorem", limit: Duration::from_secs(120), run: pair_theorem },
    Criterion { id: 7, name: "structure suite", limit: Duration::from_secs(120), run: structure },
    Criterion { id: 8, name: "expansion characterization", limit: Duration::from_secs(300), run: expansion },
    Criterion { id: 9, name: "round trip", limit: Duration::from_secs(60), run: round_trip },
];

/// Criteria whose stated claim does not hold; they stay red.
const KNOWN_RED: &[u32] = &[4];

#[test]
fn acceptance() {
    let mut outcomes = Vec::new();
    for c in CRITERIA {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let (pass, message) = match result {
            Ok(m) if elapsed <= c.limit => (true, m),
            Ok(m) => (false, format!("{m}; took longer than {:?}", c.limit)),
            Err(m) => (false, m),
        };
        // Written to the stderr handle directly so the line survives output capture.
        let _ = writeln!(
            std::io::stderr(),
            "criterion {}: {} ({}, {:.2?} of {:?}) {}",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.name,
            elapsed,
            c.limit,
            message
        );
        outcomes.push(Outcome { id: c.id, pass, elapsed, message });
    }
    let red: Vec<u32> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    assert_eq!(red, KNOWN_RED, "unexpected set of failing criteria");

    // Criterion 4 fails only on the (x1, y1, r) claim, and within its time limit.
    let four = outcomes.iter().find(|o| o.id == 4).unwrap();
    assert!(four.elapsed <= Duration::from_secs(1));
    assert!(four.message.starts_with("triple (x1, y1, r) has minimal pseudo-median size Some(0)"), "{}", four.message);
    let f = c6_facts(Exec::default()).unwrap();
    assert_eq!(f.size_x1_y2_r, Some(2));
    assert!(!f.x1_y2_daisy_isometric);
}
