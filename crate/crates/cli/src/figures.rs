//! DOT fixtures for the base case, the `n = 5` trees, a card isomorphism and
//! the gender duplication.

use std::fmt::Write as _;

use pedigree_core::counterexample::{
    build_counterexample, genderize, hypomorphism_witness, CounterexampleError, Orderings, Side,
    TreeVertex,
};
use pedigree_core::io::pedigree_to_dot;
use pedigree_core::isomorphism::LabelledIsomorphism;
use pedigree_core::label::Label;
use pedigree_core::pedigree::{Gender, Pedigree, VertexId};

fn tree_name(side: &Side, prefix: char, v: VertexId) -> String {
    match side.name(v) {
        Some(TreeVertex::Extant(i)) => format!("x{i}"),
        Some(TreeVertex::Internal { tuple, .. }) => {
            let b: String = tuple.iter().map(|d| char::from(b'0' + d)).collect();
            format!("{prefix}({b})")
        }
        Some(TreeVertex::Founder(k)) => k.to_string(),
        None => v.to_string(),
    }
}

/// Body lines for `p` with node ids prefixed by `prefix` and given labels.
fn body(
    out: &mut String,
    p: &Pedigree,
    prefix: &str,
    label: &dyn Fn(VertexId) -> String,
    indent: &str,
) {
    for v in p.vertices() {
        let shape = if p.label_of(v).is_some() {
            "box"
        } else {
            "ellipse"
        };
        writeln!(
            out,
            "{indent}{prefix}{} [label=\"{}\", shape={shape}];",
            v.0,
            label(v)
        )
        .unwrap();
    }
    for (c, q) in p.arcs() {
        writeln!(out, "{indent}{prefix}{} -> {prefix}{};", c.0, q.0).unwrap();
    }
}

fn named_dot(p: &Pedigree, name: &str, label: &dyn Fn(VertexId) -> String) -> String {
    let mut out = format!("digraph {name} {{\n  rankdir=BT;\n  node [fontsize=10];\n");
    body(&mut out, p, "n", label, "  ");
    out.push_str("}\n");
    out
}

/// Both sides of a card with the isomorphism drawn as dashed edges.
fn isomorphism_dot(
    a: &Pedigree,
    b: &Pedigree,
    map: &LabelledIsomorphism,
    la: &dyn Fn(VertexId) -> String,
    lb: &dyn Fn(VertexId) -> String,
) -> String {
    let mut out = String::from("digraph isomorphism {\n  rankdir=BT;\n  node [fontsize=10];\n");
    for (key, p, l) in [("t", a, la), ("u", b, lb)] {
        writeln!(out, "  subgraph cluster_{key} {{").unwrap();
        writeln!(out, "    label=\"{}\";", key.to_uppercase()).unwrap();
        body(&mut out, p, key, l, "    ");
        out.push_str("  }\n");
    }
    for (v, w) in &map.0 {
        if a.label_of(*v).is_none() {
            writeln!(
                out,
                "  t{} -> u{} [style=dashed, color=blue, constraint=false, arrowhead=none];",
                v.0, w.0
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

fn labels(xs: &[usize]) -> Vec<Label> {
    xs.iter().map(|&i| Label::indexed(i)).collect()
}

pub fn figures() -> Result<Vec<(String, String)>, CounterexampleError> {
    let mut files = Vec::new();

    let base = build_counterexample(3, None)?;
    for (key, side) in [("T", &base.t), ("U", &base.u)] {
        files.push((
            format!("fig1_{key}.dot"),
            pedigree_to_dot(&side.pedigree, key),
        ));
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            let card = side
                .pedigree
                .sub_pedigree(&labels(&[i, j]))
                .expect("labels are extant");
            let name = format!("{key}_x{i}_x{j}");
            files.push((format!("fig1_{name}.dot"), pedigree_to_dot(&card, &name)));
        }
    }

    let five = build_counterexample(5, Some(Orderings::ascending(5).with(5, vec![2, 3, 1, 4])))?;
    for (key, prefix, side) in [("T5", 't', &five.t), ("U5", 'u', &five.u)] {
        let tree = side
            .pedigree
            .sub_pedigree(&labels(&[5]))
            .expect("x5 is extant");
        files.push((
            format!("fig2_{key}.dot"),
            named_dot(&tree, key, &|v| tree_name(side, prefix, v)),
        ));
    }

    let four = build_counterexample(4, None)?;
    let j = four.t.trees[3].ordering()[1];
    let a = four
        .t
        .pedigree
        .sub_pedigree(&labels(&[4]))
        .expect("x4 is extant");
    let b = four
        .u
        .pedigree
        .sub_pedigree(&labels(&[4]))
        .expect("x4 is extant");
    let map = hypomorphism_witness(&four, j)?.restrict(&a);
    files.push((
        "fig3_isomorphism.dot".into(),
        isomorphism_dot(&a, &b, &map, &|v| tree_name(&four.t, 't', v), &|v| {
            tree_name(&four.u, 'u', v)
        }),
    ));

    let t1 = four
        .t
        .pedigree
        .sub_pedigree(&labels(&[1]))
        .expect("x1 is extant");
    files.push((
        "fig4_T1.dot".into(),
        named_dot(&t1, "T1", &|v| tree_name(&four.t, 't', v)),
    ));
    let g = genderize(&t1);
    let gendered = |v: VertexId| match (g.pedigree.label_of(v), g.genders.get(v)) {
        (Some(l), _) => l.to_string(),
        (None, Some(Gender::Male)) => "m".into(),
        (None, Some(Gender::Female)) => "f".into(),
        (None, None) => String::new(),
    };
    files.push((
        "fig4_T1_genderized.dot".into(),
        named_dot(&g.pedigree, "T1_genderized", &gendered),
    ));
    Ok(files)
}
