use std::fmt::Write;

use super::Dfao;

/// Graphviz rendering. Nodes are labelled `q{id}/{output}`; parallel edges
/// are merged into one edge with a comma-separated digit label.
pub(super) fn export(a: &Dfao) -> String {
    let mut out = String::new();
    out.push_str("digraph dfao {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  start [shape=point];\n");
    for s in 0..a.len() {
        writeln!(
            out,
            "  q{s} [shape=circle, label=\"q{s}/{}\"];",
            a.output[s]
        )
        .unwrap();
    }
    writeln!(out, "  start -> q{};", a.start).unwrap();
    for s in 0..a.len() {
        // Targets in order of first digit reaching them.
        let mut edges: Vec<(usize, Vec<usize>)> = Vec::new();
        for (d, &t) in a.next[s].iter().enumerate() {
            match edges.iter_mut().find(|(target, _)| *target == t) {
                Some((_, digits)) => digits.push(d),
                None => edges.push((t, vec![d])),
            }
        }
        for (t, digits) in edges {
            let label = digits
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(",");
            writeln!(out, "  q{s} -> q{t} [label=\"{label}\"];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}
