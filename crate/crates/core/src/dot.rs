//! Graphviz emission.

use std::fmt::Write;

use crate::graph::{FiniteGraph, FinitePregraph};

pub fn graph_to_dot(g: &FiniteGraph) -> String {
    let mut s = String::from("graph G {\n");
    for v in g.vertices() {
        let _ = writeln!(s, "  {v};");
    }
    for e in g.edges() {
        let _ = writeln!(s, "  {} -- {};", e.lo(), e.hi());
    }
    s.push_str("}\n");
    s
}

/// Edges solid, nonedges dashed, undetermined pairs dotted.
pub fn pregraph_to_dot(pg: &FinitePregraph) -> String {
    let mut s = String::from("graph G {\n");
    for v in pg.allowed().vertices() {
        let _ = writeln!(s, "  {v};");
    }
    for p in pg.allowed().edges() {
        let style = if pg.edges().contains(&p) {
            "solid"
        } else if pg.nonedges().contains(&p) {
            "dashed"
        } else {
            "dotted"
        };
        let _ = writeln!(s, "  {} -- {} [style={style}];", p.lo(), p.hi());
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{FiniteGraph, Pair};

    #[test]
    fn styles_follow_status() {
        let pg = FinitePregraph::with(FiniteGraph::complete(3), [Pair::of(0, 1)], [Pair::of(1, 2)]).unwrap();
        let dot = pregraph_to_dot(&pg);
        assert!(dot.contains("0 -- 1 [style=solid]"));
        assert!(dot.contains("1 -- 2 [style=dashed]"));
        assert!(dot.contains("0 -- 2 [style=dotted]"));
    }
}
