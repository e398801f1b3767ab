// Exhaustive DFS over all d_and redex choices: is the interpolant (or the
// gem) normalisable under ANY order of clique-preserving splits?
use bgl::proof::{apply_d_and_module, is_dnf};
use bgl::{LabelledGraph, NodeSet};
use std::collections::{BTreeMap, BTreeSet};

fn all_redexes(g: &LabelledGraph) -> Vec<(NodeSet, NodeSet, NodeSet)> {
    let nodes: Vec<_> = g.nodes().cloned().collect();
    let n = nodes.len();
    let mut out = Vec::new();
    if n > 22 { panic!("too big"); }
    for mask in 1u64..(1 << n) {
        if mask.count_ones() as usize == n { continue; }
        let m: NodeSet = nodes.iter().enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| v.clone()).collect();
        if !g.is_module(&m).unwrap() { continue; }
        let nb: NodeSet = g.nodes().filter(|z| {
            !m.contains(*z) && g.has_edge(z, m.iter().next().unwrap())
        }).cloned().collect();
        if nb.is_empty() { continue; }
        let comps = g.induced_subgraph(&nb).unwrap().connected_components();
        if comps.len() < 2 { continue; }
        // All 2-part groupings of components (to not miss any partition).
        let k = comps.len();
        for sel in 0u64..(1 << (k - 1)) {
            let mut p0 = NodeSet::new();
            let mut p1 = NodeSet::new();
            for (i, c) in comps.iter().enumerate() {
                if i == 0 || sel >> (i - 1) & 1 == 1 {
                    p0.extend(c.iter().cloned());
                } else {
                    p1.extend(c.iter().cloned());
                }
            }
            if p1.is_empty() { continue; }
            out.push((m.clone(), p0, p1));
        }
    }
    out
}

fn canon(g: &LabelledGraph) -> String {
    // Label-blind-ish canonical key: sorted label-multiset adjacency rows.
    let mut rows: Vec<String> = g.nodes().map(|v| {
        let mut nb: Vec<&str> = g.nodes().filter(|u| g.has_edge(u, v)).map(|u| g.label(u).unwrap()).collect();
        nb.sort();
        format!("{}:{}", g.label(v).unwrap(), nb.join(","))
    }).collect();
    rows.sort();
    rows.join(";")
}

fn dfs(g: &LabelledGraph, seen: &mut BTreeSet<String>, depth: usize) -> bool {
    if is_dnf(g).unwrap() { return true; }
    if depth > 14 { return false; }
    let key = canon(g);
    if !seen.insert(key) { return false; }
    for (m, p0, p1) in all_redexes(g) {
        let copies: BTreeMap<_, _> = m.iter().map(|v| {
            (v.clone(), bgl::NodeId::new(format!("{v}~d{depth}")))
        }).collect();
        if let Ok(h) = apply_d_and_module(g, &m, &p0, &p1, &copies) {
            if dfs(&h, seen, depth + 1) { return true; }
        }
    }
    false
}

fn main() {
    let interp = LabelledGraph::linear(
        ["u","v","v'","w","w'","x","x'","y","y'","z"],
        [("w","u"),("u","y"),("y","y'"),("y","w'"),("w'","y'"),("y'","v'"),("w'","v'"),
         ("y'","x'"),("v'","x'"),("v'","v"),("x'","v"),("v","z"),("z","x")],
    ).unwrap();
    let mut seen = BTreeSet::new();
    println!("interpolant reaches DNF under some order: {}", dfs(&interp, &mut seen, 0));
    println!("states explored: {}", seen.len());

    let gem = LabelledGraph::linear(
        ["a","b","c","d","v"],
        [("a","b"),("b","c"),("c","d"),("v","a"),("v","b"),("v","c"),("v","d")],
    ).unwrap();
    let mut seen = BTreeSet::new();
    println!("gem reaches DNF under some order: {}", dfs(&gem, &mut seen, 0));
}
