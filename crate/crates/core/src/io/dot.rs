//! Graphviz export: nodes are structures, edges are embeddings.

use std::fmt::Write;

use crate::banach::BanachPushout;
use crate::boolean::{DualSurjection, PushoutSquare};
use crate::geometry::fmt_vec;
use crate::tower::banach::BanachTower;
use crate::tower::boolean::BoolTower;

fn esc(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn atoms(alg: &crate::boolean::FiniteBoolAlg) -> String {
    format!("{{{}}}", alg.atoms().join(","))
}

fn atom_map_label(e: &DualSurjection) -> String {
    let t = e.target().atoms();
    let s = e.source().atoms();
    e.atom_map()
        .iter()
        .enumerate()
        .map(|(b, &a)| format!("{}->{}", t[b], s[a]))
        .collect::<Vec<_>>()
        .join("\\n")
}

/// A push-out square; edge labels are the dual atom maps.
pub fn bool_square(sq: &PushoutSquare) -> String {
    let mut out = String::from("digraph square {\n  rankdir=BT;\n");
    for (id, alg) in [
        ("R", sq.r_to_s.source()),
        ("S", sq.s_to_b.source()),
        ("A", sq.a_to_b.source()),
        ("B", sq.b()),
    ] {
        writeln!(out, "  {id} [label=\"{id} {}\"];", esc(&atoms(alg))).unwrap();
    }
    for (from, to, e) in [
        ("R", "S", &sq.r_to_s),
        ("R", "A", &sq.r_to_a),
        ("S", "B", &sq.s_to_b),
        ("A", "B", &sq.a_to_b),
    ] {
        writeln!(out, "  {from} -> {to} [label=\"{}\"];", esc(&atom_map_label(e))).unwrap();
    }
    out.push_str("}\n");
    out
}

/// A square of spaces; edge labels are the embedding matrices by columns.
pub fn banach_square(po: &BanachPushout) -> String {
    let mut out = String::from("digraph square {\n  rankdir=BT;\n");
    for (id, x) in [
        ("R", po.r_to_s.source()),
        ("S", po.s_to_y.source()),
        ("X", po.x_to_y.source()),
        ("Y", po.y()),
    ] {
        writeln!(out, "  {id} [label=\"{id} dim {} ({} gens)\"];", x.dim(), x.dual_gens().len()).unwrap();
    }
    for (from, to, e) in [
        ("R", "S", &po.r_to_s),
        ("R", "X", &po.r_to_x),
        ("S", "Y", &po.s_to_y),
        ("X", "Y", &po.x_to_y),
    ] {
        let cols: Vec<String> = e.columns().iter().map(|c| format!("({})", fmt_vec(c).join(","))).collect();
        writeln!(out, "  {from} -> {to} [label=\"{}\"];", esc(&cols.join(" "))).unwrap();
    }
    out.push_str("}\n");
    out
}

/// The filtration `B_0 → B_1 → …` with each `R_α → S_α → B_{α+1}`.
pub fn bool_tower(t: &BoolTower) -> String {
    let mut out = String::from("digraph tower {\n  rankdir=LR;\n");
    for (k, b) in t.stages().iter().enumerate() {
        writeln!(out, "  B{k} [label=\"B{k} ({} atoms)\"];", b.len()).unwrap();
    }
    for (a, step) in t.steps().iter().enumerate() {
        let next = a + 1;
        writeln!(out, "  S{a} [shape=box,label=\"S{a} ({} atoms)\"];", step.s.len()).unwrap();
        writeln!(out, "  R{a} [shape=box,label=\"R{a} ({} blocks)\"];", step.r.num_blocks()).unwrap();
        writeln!(out, "  B{a} -> B{next};").unwrap();
        writeln!(out, "  R{a} -> B{a} [style=dashed];").unwrap();
        writeln!(out, "  R{a} -> S{a} [style=dashed];").unwrap();
        writeln!(out, "  S{a} -> B{next};").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn banach_tower(t: &BanachTower) -> String {
    let mut out = String::from("digraph tower {\n  rankdir=LR;\n");
    for (k, x) in t.stages().iter().enumerate() {
        writeln!(out, "  X{k} [label=\"X{k} (dim {})\"];", x.dim()).unwrap();
    }
    for (a, step) in t.steps().iter().enumerate() {
        let next = a + 1;
        writeln!(out, "  S{a} [shape=box,label=\"S{a} (dim {})\"];", step.spec.s.dim()).unwrap();
        writeln!(out, "  R{a} [shape=box,label=\"R{a} (dim {})\"];", step.spec.r_basis.len()).unwrap();
        writeln!(out, "  X{a} -> X{next};").unwrap();
        writeln!(out, "  R{a} -> X{a} [style=dashed];").unwrap();
        writeln!(out, "  R{a} -> S{a} [style=dashed];").unwrap();
        writeln!(out, "  S{a} -> X{next};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::{FiniteBoolAlg, Subalgebra};

    #[test]
    fn square_has_four_nodes_and_edges() {
        let b = FiniteBoolAlg::numbered(4).unwrap();
        let s = Subalgebra::from_labelling([0, 0, 1, 1]);
        let a = Subalgebra::from_labelling([0, 1, 0, 1]);
        let sq = PushoutSquare::from_subalgebras(&b, &s, &a).unwrap();
        let dot = bool_square(&sq);
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert!(dot.starts_with("digraph square {"));
    }

    #[test]
    fn tower_graph() {
        let t = BoolTower::build(&[crate::tower::boolean::BoolStepSpec::free(2)]).unwrap();
        let dot = bool_tower(&t);
        assert!(dot.contains("B0 -> B1"));
        assert!(dot.contains("S0 -> B1"));
    }
}
