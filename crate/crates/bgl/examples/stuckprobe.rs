// Probe: where does interpolant normalisation get stuck, and does an
// exhaustive module search find a redex the candidate list misses?
use bgl::proof::{apply_d_and_module, intersecting_clique_pairs, is_dnf};
use bgl::{LabelledGraph, NodeSet};
use std::collections::BTreeMap;

fn all_modules(g: &LabelledGraph) -> Vec<NodeSet> {
    let nodes: Vec<_> = g.nodes().cloned().collect();
    let n = nodes.len();
    let mut out = Vec::new();
    for mask in 1u64..(1 << n) {
        if mask.count_ones() as usize == n { continue; }
        let set: NodeSet = nodes.iter().enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| v.clone()).collect();
        if g.is_module(&set).unwrap() {
            out.push(set);
        }
    }
    out
}

fn exhaustive_redex(g: &LabelledGraph) -> Option<(NodeSet, NodeSet, NodeSet)> {
    for m in all_modules(g) {
        let nb: NodeSet = g.nodes().filter(|z| {
            !m.contains(*z) && g.has_edge(z, m.iter().next().unwrap())
        }).cloned().collect();
        if nb.is_empty() { continue; }
        let induced = g.induced_subgraph(&nb).unwrap();
        let comps = induced.connected_components();
        if comps.len() >= 2 {
            let p0 = comps[0].clone();
            let p1: NodeSet = nb.difference(&p0).cloned().collect();
            return Some((m, p0, p1));
        }
    }
    None
}

fn main() {
    let interp = LabelledGraph::linear(
        ["u","v","v'","w","w'","x","x'","y","y'","z"],
        [("w","u"),("u","y"),("y","y'"),("y","w'"),("w'","y'"),("y'","v'"),("w'","v'"),
         ("y'","x'"),("v'","x'"),("v'","v"),("x'","v"),("v","z"),("z","x")],
    ).unwrap();
    let mut g = interp;
    for step in 0..200 {
        if is_dnf(&g).unwrap() {
            println!("reached DNF in {step} steps, {} nodes", g.node_count());
            return;
        }
        match exhaustive_redex(&g) {
            None => {
                println!("STUCK after {step} steps at {} nodes, {} intersecting pairs",
                    g.node_count(), intersecting_clique_pairs(&g).unwrap());
                println!("{g}");
                return;
            }
            Some((m, p0, p1)) => {
                let copies: BTreeMap<_,_> = m.iter().map(|v| {
                    (v.clone(), bgl::NodeId::new(format!("{v}~s{step}")))
                }).collect();
                g = apply_d_and_module(&g, &m, &p0, &p1, &copies).unwrap();
            }
        }
    }
    println!("budget exhausted at {} nodes", g.node_count());
}
