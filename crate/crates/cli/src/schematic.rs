//! Graphviz rendering of a block's boundary.

use std::fmt::Write;

use conley_surf::IsolatingBlock;

/// Boundary circles as cycles: exit edges red, entrance edges blue, marked
/// edges thick, corners drawn as diamonds, spines dashed.
pub fn to_dot(b: &IsolatingBlock) -> String {
    let layout = b.layout();
    let mut out = String::new();
    let title = if b.name.is_empty() {
        "block"
    } else {
        b.name.as_str()
    };
    writeln!(out, "graph \"{}\" {{", title.replace('"', "'")).unwrap();
    writeln!(out, "  node [shape=circle, fontsize=10, width=0.3];").unwrap();
    for (i, circle) in layout.circles.iter().enumerate() {
        writeln!(out, "  subgraph cluster_{i} {{").unwrap();
        writeln!(out, "    label=\"boundary circle {i}\";").unwrap();
        for &v in circle.vertices() {
            let mut attrs = Vec::new();
            if layout.corners.contains(&v) {
                attrs.push("shape=diamond".to_string());
            }
            if b.n_minus.contains_vertex(v) {
                attrs.push("style=filled, fillcolor=salmon".to_string());
            } else if b.n_plus.contains_vertex(v) {
                attrs.push("style=filled, fillcolor=lightblue".to_string());
            }
            writeln!(out, "    v{v} [{}];", attrs.join(", ")).unwrap();
        }
        for e in circle.edges() {
            let exit = b.exit_edges.contains(&e);
            let marked = if exit {
                b.n_minus.contains_edge(e)
            } else {
                b.n_plus.contains_edge(e)
            };
            let color = if exit { "red" } else { "blue" };
            let width = if marked { 3 } else { 1 };
            writeln!(
                out,
                "    v{} -- v{} [color={color}, penwidth={width}];",
                e.lo(),
                e.hi()
            )
            .unwrap();
        }
        writeln!(out, "  }}").unwrap();
    }
    for (i, spine) in b.spines.iter().enumerate() {
        let chain: Vec<String> = spine.path.iter().map(|v| format!("v{v}")).collect();
        writeln!(
            out,
            "  {} [style=dashed, color=gray40, label=\"spine {i}\"];",
            chain.join(" -- ")
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
