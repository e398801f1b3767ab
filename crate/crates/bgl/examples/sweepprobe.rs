// Compare production to_dnf against exhaustive-DFS ground truth on all
// graphs up to 6 nodes (up to isomorphism).
use bgl::enumerate::graphs_up_to_iso_cumulative;
use bgl::proof::{apply_d_and_module, is_dnf, to_dnf};
use bgl::{LabelledGraph, NodeSet};
use std::collections::{BTreeMap, BTreeSet};

fn all_redexes(g: &LabelledGraph) -> Vec<(NodeSet, NodeSet, NodeSet)> {
    let nodes: Vec<_> = g.nodes().cloned().collect();
    let n = nodes.len();
    let mut out = Vec::new();
    if n > 24 { return out; }
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
        let k = comps.len();
        for sel in 0u64..(1 << (k - 1)) {
            let mut p0 = NodeSet::new();
            let mut p1 = NodeSet::new();
            for (i, c) in comps.iter().enumerate() {
                if i == 0 || (i >= 1 && sel >> (i - 1) & 1 == 1) {
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
    if depth > 30 || g.node_count() > 40 { return false; }
    if !seen.insert(canon(g)) { return false; }
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
    let mut greedy_fail = 0;
    let mut truth_fail = 0;
    let mut mismatch = Vec::new();
    let reps = graphs_up_to_iso_cumulative(6).unwrap();
    let total = reps.len();
    for mask in reps {
        let g = mask.to_graph();
        let greedy_ok = to_dnf(&g).is_ok();
        let mut seen = BTreeSet::new();
        let truth_ok = dfs(&g, &mut seen, 0);
        if !greedy_ok { greedy_fail += 1; }
        if !truth_ok { truth_fail += 1; }
        if greedy_ok != truth_ok {
            mismatch.push(format!("n={} greedy={} truth={}\n{}", g.node_count(), greedy_ok, truth_ok, g));
        }
    }
    println!("graphs: {total}, greedy failures: {greedy_fail}, true failures: {truth_fail}");
    for m in mismatch.iter().take(5) {
        println!("MISMATCH: {m}");
    }
    if mismatch.is_empty() {
        println!("greedy search matches exhaustive ground truth on <=6 nodes");
    }
}
