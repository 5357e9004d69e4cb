//! Graphviz rendering of the member forest.

use std::fmt::Write;

use aqci_core::SpecialDatum;

fn set_label(elements: &[usize]) -> String {
    let inner: Vec<String> = elements.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

/// Directed parent→child edges, nodes labeled with their elements and
/// weight, one rank per depth.
pub fn to_dot(d: &SpecialDatum) -> String {
    let mut out = String::new();
    out.push_str("digraph datum {\n  rankdir=TB;\n  node [shape=box];\n");
    for j in d.nodes() {
        let m = d.member(j);
        let _ = writeln!(out, "  m{} [label=\"{}\\nw={}\"];", j.0, set_label(m.elements()), m.weight());
    }
    for j in d.nodes() {
        for c in d.children(j) {
            let _ = writeln!(out, "  m{} -> m{};", j.0, c.0);
        }
    }
    let depth = d.nodes().map(|j| d.depth(j)).max().unwrap_or(0);
    for level in 0..=depth {
        let ids: Vec<String> = d.nodes().filter(|&j| d.depth(j) == level).map(|j| format!("m{}", j.0)).collect();
        let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
    }
    out.push_str("}\n");
    out
}
