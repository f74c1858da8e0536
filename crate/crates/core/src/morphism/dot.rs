//! Graphviz export for derivation trees and morphism wiring graphs.
//!
//! Wiring graphs use one node per generator and one edge per tensor factor.
//! Copying (`Δ`) is drawn as a triangle and the comonad counit `ε` as a
//! filled dot; each curried subterm becomes a cluster holding the
//! abstraction node and the wire standing for its argument.

use std::fmt::Write;

use super::{typecheck, MorphTerm, ObjectTerm, TypedMorphism};
use crate::prover::Derivation;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Proof tree with one node per sequent, premises above conclusions.
pub fn export_derivation_dot(d: &Derivation) -> String {
    let mut out = String::from(
        "digraph derivation {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n",
    );
    let mut edges = String::new();
    let mut next = 0usize;
    fn visit(d: &Derivation, next: &mut usize, out: &mut String, edges: &mut String) -> usize {
        let me = *next;
        *next += 1;
        let _ = writeln!(
            out,
            "  n{me} [label=\"{}\\n[{}]\"];",
            escape(&d.conclusion.to_string()),
            escape(d.rule.label())
        );
        for p in &d.premises {
            let child = visit(p, next, out, edges);
            let _ = writeln!(edges, "  n{child} -> n{me};");
        }
        me
    }
    visit(d, &mut next, &mut out, &mut edges);
    out.push_str(&edges);
    out.push_str("}\n");
    out
}

#[derive(Clone)]
struct Port {
    node: usize,
    obj: ObjectTerm,
}

struct GraphNode {
    attrs: String,
    cluster: Option<usize>,
}

struct Cluster {
    parent: Option<usize>,
    label: String,
}

#[derive(Default)]
struct Wiring {
    nodes: Vec<GraphNode>,
    clusters: Vec<Cluster>,
    edges: Vec<(usize, usize, ObjectTerm)>,
    current: Option<usize>,
}

impl Wiring {
    fn add_node(&mut self, attrs: String) -> usize {
        self.nodes.push(GraphNode {
            attrs,
            cluster: self.current,
        });
        self.nodes.len() - 1
    }

    fn consume(&mut self, inputs: &[Port], node: usize) {
        for p in inputs {
            self.edges.push((p.node, node, p.obj.clone()));
        }
    }

    fn ports(node: usize, obj: &ObjectTerm) -> Vec<Port> {
        obj.factors()
            .into_iter()
            .map(|obj| Port { node, obj })
            .collect()
    }

    fn enter(&mut self, label: String) -> Option<usize> {
        self.clusters.push(Cluster {
            parent: self.current,
            label,
        });
        let saved = self.current;
        self.current = Some(self.clusters.len() - 1);
        saved
    }

    fn wire(&mut self, t: &MorphTerm, inputs: Vec<Port>) -> Vec<Port> {
        match t {
            MorphTerm::Id { .. } => inputs,
            MorphTerm::Compose { later, earlier } => {
                let mid = self.wire(earlier, inputs);
                self.wire(later, mid)
            }
            MorphTerm::Par { left, right } => {
                let n = typecheck(left).map(|(d, _)| d.factors().len()).unwrap_or(0);
                let mut inputs = inputs;
                let rest = inputs.split_off(n.min(inputs.len()));
                let mut out = self.wire(left, inputs);
                out.extend(self.wire(right, rest));
                out
            }
            MorphTerm::CurryL { arg, body } | MorphTerm::CurryR { arg, body } => {
                let left = matches!(t, MorphTerm::CurryL { .. });
                let saved = self.enter(format!("{} {arg}", if left { "Λˡ" } else { "Λʳ" }));
                let var = self.add_node(format!(
                    "shape=plaintext, label=\"{}\"",
                    escape(&format!("arg {arg}"))
                ));
                let var_ports = Self::ports(var, arg);
                let body_in = if left {
                    var_ports.into_iter().chain(inputs).collect()
                } else {
                    inputs.into_iter().chain(var_ports).collect()
                };
                let body_out = self.wire(body, body_in);
                let lam = self.add_node(format!(
                    "shape=house, label=\"{}\"",
                    if left { "Λˡ" } else { "Λʳ" }
                ));
                self.consume(&body_out, lam);
                self.current = saved;
                let cod = typecheck(t).map(|(_, c)| c).unwrap_or(ObjectTerm::UnitI);
                vec![Port {
                    node: lam,
                    obj: cod,
                }]
            }
            MorphTerm::BangF { body } => {
                let saved = self.enter("!(–)".to_string());
                let out = self.wire(body, inputs);
                self.current = saved;
                out
            }
            generator => {
                let attrs = match generator {
                    MorphTerm::CopyDelta { .. } => "shape=triangle, label=\"Δ\"".to_string(),
                    MorphTerm::Epsilon { .. } => {
                        "shape=point, style=filled, width=0.12, xlabel=\"ε\"".to_string()
                    }
                    MorphTerm::CounitE { .. } => "shape=circle, width=0.2, label=\"e\"".to_string(),
                    MorphTerm::EvR { .. } => "shape=box, label=\"evʳ\"".to_string(),
                    MorphTerm::EvL { .. } => "shape=box, label=\"evˡ\"".to_string(),
                    MorphTerm::DeltaComonad { .. } => "shape=invtriangle, label=\"δ\"".to_string(),
                    MorphTerm::LaxM { .. } => "shape=box, label=\"m\"".to_string(),
                    MorphTerm::SwapR { .. } => "shape=diamond, label=\"σʳ\"".to_string(),
                    MorphTerm::SwapL { .. } => "shape=diamond, label=\"σˡ\"".to_string(),
                    other => format!("shape=box, label=\"{}\"", other.name()),
                };
                let node = self.add_node(attrs);
                self.consume(&inputs, node);
                let cod = typecheck(generator)
                    .map(|(_, c)| c)
                    .unwrap_or(ObjectTerm::UnitI);
                Self::ports(node, &cod)
            }
        }
    }

    fn emit_cluster(&self, out: &mut String, cluster: Option<usize>, indent: usize) {
        let pad = "  ".repeat(indent);
        for (i, n) in self.nodes.iter().enumerate() {
            if n.cluster == cluster {
                let _ = writeln!(out, "{pad}g{i} [{}];", n.attrs);
            }
        }
        for (c, cl) in self.clusters.iter().enumerate() {
            if cl.parent == cluster {
                let _ = writeln!(out, "{pad}subgraph cluster_{c} {{");
                let _ = writeln!(out, "{pad}  label=\"{}\";", escape(&cl.label));
                self.emit_cluster(out, Some(c), indent + 1);
                let _ = writeln!(out, "{pad}}}");
            }
        }
    }
}

/// Generator wiring graph of a morphism, with one input node per domain
/// factor and one output node per codomain factor.
pub fn export_morphism_dot(m: &TypedMorphism) -> String {
    let mut w = Wiring::default();
    let inputs: Vec<Port> = m
        .domain
        .factors()
        .into_iter()
        .enumerate()
        .map(|(i, obj)| {
            let node = w.add_node(format!(
                "shape=plaintext, label=\"{}\"",
                escape(&format!("in{i}: {obj}"))
            ));
            Port { node, obj }
        })
        .collect();
    let outputs = w.wire(&m.term, inputs);
    for (i, p) in outputs.iter().enumerate() {
        let node = w.add_node(format!(
            "shape=plaintext, label=\"{}\"",
            escape(&format!("out{i}: {}", p.obj))
        ));
        w.edges.push((p.node, node, p.obj.clone()));
    }

    let mut out =
        String::from("digraph morphism {\n  rankdir=TB;\n  node [fontname=\"monospace\"];\n");
    w.emit_cluster(&mut out, None, 1);
    for (a, b, obj) in &w.edges {
        let _ = writeln!(
            out,
            "  g{a} -> g{b} [label=\"{}\"];",
            escape(&obj.to_string())
        );
    }
    out.push_str("}\n");
    out
}
