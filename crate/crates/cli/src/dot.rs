//! Graphviz export of Cayley-graph balls.

use std::collections::HashMap;
use std::fmt::Write;
use std::sync::Arc;

use coxwalls::{ball, CoxeterError, CoxeterSystem, Word};

fn label(nf: &Word) -> String {
    if nf.is_empty() {
        "e".to_string()
    } else {
        nf.letters().iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    }
}

/// Undirected Cayley graph on the ball of `radius`. Vertices are labelled by
/// normal form and each edge `{w, ws}` appears once, labelled by `s`.
pub fn cayley_dot(system: &Arc<CoxeterSystem>, radius: usize) -> Result<(String, usize, usize), CoxeterError> {
    let elems = ball(system, radius)?;
    let index: HashMap<&Word, usize> = elems.iter().enumerate().map(|(i, w)| (w.nf(), i)).collect();
    let mut out = String::from("graph cayley {\n");
    for (i, w) in elems.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", label(w.nf()));
    }
    let mut edges = 0;
    for (i, w) in elems.iter().enumerate() {
        for s in 0..system.rank() {
            let ws = w.mul_generator(s)?;
            if ws.length() < w.length() {
                continue;
            }
            if let Some(&j) = index.get(ws.nf()) {
                let _ = writeln!(out, "  n{i} -- n{j} [label=\"{s}\"];");
                edges += 1;
            }
        }
    }
    out.push_str("}\n");
    Ok((out, elems.len(), edges))
}
