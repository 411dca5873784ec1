//! Graphviz rendering of decision trees.

use std::fmt::Write;

use rcu_core::{DecisionTree, EventSpace, NodeSpec, Rational, Strategy};

/// Renders `t` as a DOT digraph. Nodes are named `n0, n1, ...` in pre-order
/// so the output only depends on the tree. Decision nodes are squares,
/// chance nodes circles and leaves plain text showing the gain. With a
/// strategy, the edges it selects at the nodes it reaches are drawn bold.
pub fn render(t: &DecisionTree, overlay: Option<&Strategy>) -> String {
    let mut r = Renderer {
        space: t.space(),
        overlay,
        nodes: String::new(),
        edges: String::new(),
        next: 0,
    };
    r.node(&t.to_spec(), true);
    format!(
        "digraph tree {{\n  rankdir=LR;\n  node [fontname=\"Helvetica\"];\n  edge [fontname=\"Helvetica\"];\n{}{}}}\n",
        r.nodes, r.edges
    )
}

struct Renderer<'a> {
    space: &'a EventSpace,
    overlay: Option<&'a Strategy>,
    nodes: String,
    edges: String,
    next: usize,
}

impl Renderer<'_> {
    fn node(&mut self, spec: &NodeSpec, reached: bool) -> usize {
        let me = self.next;
        self.next += 1;
        match spec {
            NodeSpec::Leaf { gain } => {
                let _ = writeln!(self.nodes, "  n{me} [shape=plaintext, label=\"{}\"];", gain_label(gain));
            }
            NodeSpec::Decision { id, edges } => {
                let _ = writeln!(self.nodes, "  n{me} [shape=square, label=\"{}\"];", escape(id.as_str()));
                let chosen = self.overlay.filter(|_| reached).and_then(|s| s.choice(id));
                for (i, (action, child)) in edges.iter().enumerate() {
                    let bold = chosen == Some(i);
                    let to = self.node(child, bold);
                    let style = if bold { ", style=bold, penwidth=2" } else { "" };
                    let _ = writeln!(self.edges, "  n{me} -> n{to} [label=\"{}\"{style}];", escape(action));
                }
            }
            NodeSpec::Chance { id, edges } => {
                let _ = writeln!(self.nodes, "  n{me} [shape=circle, label=\"{}\"];", escape(id.as_str()));
                for (event, child) in edges {
                    let to = self.node(child, reached);
                    let label = self.space.names(*event).join(",");
                    let _ = writeln!(self.edges, "  n{me} -> n{to} [label=\"{}\"];", escape(&label));
                }
            }
        }
        me
    }
}

fn gain_label(g: &Rational) -> String {
    if g.is_integer() {
        g.numer().to_string()
    } else {
        format!("{}/{}", g.numer(), g.denom())
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
