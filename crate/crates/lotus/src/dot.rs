//! Graphviz output. Curved Enriques edges are dashed and straight ones
//! solid; each maximal aligned run of straight edges gets its own
//! `class="run-k"` so the runs can be styled or picked out afterwards.

use std::collections::BTreeMap;
use std::fmt::Write;

use lotus_core::{AstreId, DualGraph, EdgeKind, EnriquesDiagram};

fn quote(a: &AstreId) -> String {
    format!("\"{a}\"")
}

pub fn enriques_to_dot(d: &EnriquesDiagram) -> String {
    let mut run_of: BTreeMap<(&AstreId, &AstreId), usize> = BTreeMap::new();
    let runs = d.straight_runs();
    for (k, run) in runs.iter().enumerate() {
        for pair in run.windows(2) {
            run_of.insert((&pair[0], &pair[1]), k + 1);
        }
    }
    let mut out = String::from("digraph enriques {\n  rankdir=BT;\n  node [shape=point, xlabel=\"\\N\"];\n");
    for v in d.vertices() {
        writeln!(out, "  {};", quote(v)).unwrap();
    }
    for e in d.edges() {
        let mut attrs = vec![match e.kind {
            EdgeKind::Curved => "style=dashed".to_owned(),
            EdgeKind::Straight => "style=solid".to_owned(),
        }];
        if let Some(k) = run_of.get(&(&e.from, &e.to)) {
            attrs.push(format!("class=\"run-{k}\""));
        }
        if let Some(aligned) = e.aligned_with_incoming {
            attrs.push(format!("aligned={aligned}"));
        }
        writeln!(out, "  {} -> {} [{}];", quote(&e.from), quote(&e.to), attrs.join(", ")).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn dual_to_dot(g: &DualGraph) -> String {
    let mut out = String::from("graph dual {\n  node [shape=circle];\n");
    for (a, w) in g.weights() {
        writeln!(out, "  {} [label=\"E_{a}\\n{w}\"];", quote(a)).unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(out, "  {} -- {};", quote(a), quote(b)).unwrap();
    }
    out.push_str("}\n");
    out
}
