//! DOT rendering. Output depends only on the input, never on hashing order.

use crate::workspace::{Binding, CatValue, DiagramKind};
use hocat::fincat::FinCat;
use hocat::rewrite::FpCat;
use hocat::sset::TruncSSet;
use std::fmt::Write;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn header(name: &str) -> String {
    format!("digraph {} {{\n  rankdir=LR;\n  node [shape=circle];\n", quote(name))
}

/// Objects and non-identity morphisms as a labeled multigraph.
pub fn fincat_dot(name: &str, c: &FinCat) -> String {
    let mut out = header(name);
    for o in c.objects() {
        let _ = writeln!(out, "  {};", quote(o));
    }
    for (f, m) in c.morphisms().iter().enumerate() {
        if c.is_identity(f) {
            continue;
        }
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(&c.objects()[m.src]),
            quote(&c.objects()[m.tgt]),
            quote(&m.name)
        );
    }
    out.push_str("}\n");
    out
}

/// Irreducible generators as edges; rules of length two or more as comments.
pub fn fpcat_dot(name: &str, fp: &FpCat) -> String {
    let mut out = header(name);
    let ess = fp.essential();
    for o in fp.objects() {
        let _ = writeln!(out, "  {};", quote(o));
    }
    for &g in &ess.generators {
        let e = &fp.generators()[g];
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(&fp.objects()[e.src]),
            quote(&fp.objects()[e.tgt]),
            quote(&e.name)
        );
    }
    let word = |w: &[usize], anchor: usize| {
        if w.is_empty() {
            format!("id({})", fp.objects()[anchor])
        } else {
            w.iter().map(|&e| fp.generators()[e].name.as_str()).collect::<Vec<_>>().join(".")
        }
    };
    for (l, r) in &ess.relations {
        let anchor = fp.generators()[l[0]].src;
        let _ = writeln!(out, "  // {} = {}", word(l, anchor), word(r, anchor));
    }
    out.push_str("}\n");
    out
}

/// Nondegenerate simplices in one cluster per level, with face edges.
pub fn sset_dot(name: &str, x: &TruncSSet) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=BT;\n  node [shape=box];\n", quote(name));
    let id = |k: usize, s: usize| quote(&format!("{k}:{}", x.name(k, s)));
    for k in 0..=x.dim() {
        let _ = writeln!(out, "  subgraph cluster_{k} {{\n    label=\"level {k}\";");
        for s in x.nondegenerate(k) {
            let _ = writeln!(out, "    {} [label={}];", id(k, s), quote(x.name(k, s)));
        }
        out.push_str("  }\n");
    }
    for k in 1..=x.dim() {
        for s in x.nondegenerate(k) {
            for i in 0..=k {
                let t = x.face(k, i, s);
                let _ = writeln!(out, "  {} -> {} [label=\"d{i}\"];", id(k, s), id(k - 1, t));
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn binding_dot(name: &str, b: &Binding) -> String {
    match b {
        Binding::Category(c) => match &c.value {
            CatValue::Finite(cat) => fincat_dot(name, cat),
            CatValue::Presented { fp, .. } => fpcat_dot(name, fp),
        },
        Binding::SSet(x) => sset_dot(name, x),
        Binding::Diagram(d) => {
            let shape = match &d.kind {
                DiagramKind::Cat(cd) => &cd.shape,
                DiagramKind::SSet(sd) => &sd.shape,
            };
            let mut out = format!("digraph {} {{\n  rankdir=LR;\n  node [shape=box];\n", quote(name));
            for (a, o) in shape.objects().iter().enumerate() {
                let _ = writeln!(out, "  {} [label={}];", quote(o), quote(&format!("{o} = {}", d.nodes[a])));
            }
            for (u, m) in shape.morphisms().iter().enumerate() {
                if !shape.is_identity(u) {
                    let _ = writeln!(
                        out,
                        "  {} -> {} [label={}];",
                        quote(&shape.objects()[m.src]),
                        quote(&shape.objects()[m.tgt]),
                        quote(&m.name)
                    );
                }
            }
            out.push_str("}\n");
            out
        }
        Binding::Cocone(c) => fincat_dot(name, &c.cocone.apex),
    }
}

/// The text form of a simplicial set, one line per face or degeneracy
/// operator.
pub fn sset_text(name: &str, x: &TruncSSet) -> String {
    let dim = x.dim();
    let mut out = format!("sset {name} dim {dim} {{\n");
    for k in 0..=dim {
        let _ = writeln!(out, "  {k}: {}", x.names(k).join(" "));
    }
    let line = |out: &mut String, what: &str, k: usize, i: usize, to_level: usize, f: &dyn Fn(usize) -> usize| {
        let pairs: Vec<String> = (0..x.level_size(k))
            .map(|s| format!("{} -> {}", x.name(k, s), x.name(to_level, f(s))))
            .collect();
        let _ = writeln!(out, "  {what} {k} {i}: {}", pairs.join(", "));
    };
    for k in 1..=dim {
        for i in 0..=k {
            line(&mut out, "face", k, i, k - 1, &|s| x.face(k, i, s));
        }
    }
    for k in 0..dim {
        for i in 0..=k {
            line(&mut out, "degen", k, i, k + 1, &|s| x.degen(k, i, s));
        }
    }
    out.push_str("}\n");
    out
}

/// The generated part of the corpus: standard simplices and boundaries.
pub fn generated_corpus() -> String {
    let mut out = String::from("# Generated by the gen_corpus example; do not edit.\n");
    let items: [(&str, hocat::Result<TruncSSet>); 5] = [
        ("delta0", TruncSSet::standard_simplex(0, 2)),
        ("delta1", TruncSSet::standard_simplex(1, 2)),
        ("delta2", TruncSSet::standard_simplex(2, 2)),
        ("boundary2", TruncSSet::boundary(2, 2)),
        ("boundary3", TruncSSet::boundary(3, 4)),
    ];
    for (name, x) in items {
        out.push('\n');
        out.push_str(&sset_text(name, &x.expect("standard complexes are valid")));
    }
    out
}
