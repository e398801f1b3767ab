//! Labelled graphs and their combinatorics.
//!
//! A [`LabelledGraph`] is a finite simple loopless undirected graph in which
//! every node carries a variable name as its label. Labels need not be
//! distinct; a graph whose label map is injective is called *linear*. All
//! operations here are pure and the graph is an immutable value after
//! construction, so values may be freely shared between threads.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// Opaque node identifier. Identity is separate from the label so the same
/// variable may label several nodes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(id: impl Into<String>) -> Self {
        NodeId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        NodeId::new(s)
    }
}

impl From<String> for NodeId {
    fn from(s: String) -> Self {
        NodeId::new(s)
    }
}

/// A subset of a graph's nodes.
pub type NodeSet = BTreeSet<NodeId>;

/// Builds a [`NodeSet`] from anything yielding id-like values.
pub fn node_set<I, T>(ids: I) -> NodeSet
where
    I: IntoIterator<Item = T>,
    T: Into<NodeId>,
{
    ids.into_iter().map(Into::into).collect()
}

fn ordered_pair(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Finite simple loopless undirected graph with a variable label per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    labels: BTreeMap<NodeId, String>,
    edges: BTreeSet<(NodeId, NodeId)>,
}

impl LabelledGraph {
    /// Builds a graph from labelled nodes and edges. Duplicate edges are
    /// idempotent; self-loops and edges on undeclared nodes are rejected.
    pub fn new<N, E>(nodes: N, edges: E) -> Result<Self>
    where
        N: IntoIterator<Item = (NodeId, String)>,
        E: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut labels = BTreeMap::new();
        for (id, label) in nodes {
            if let Some(old) = labels.insert(id.clone(), label.clone()) {
                if old != label {
                    return Err(Error::input(format!(
                        "node `{id}` declared twice with labels `{old}` and `{label}`"
                    )));
                }
            }
        }
        let mut g = LabelledGraph {
            labels,
            edges: BTreeSet::new(),
        };
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: NodeId, v: NodeId) -> Result<()> {
        if u == v {
            return Err(Error::input(format!("self-loop on node `{u}`")));
        }
        for w in [&u, &v] {
            if !self.labels.contains_key(w) {
                return Err(Error::input(format!("edge endpoint `{w}` is not a declared node")));
            }
        }
        self.edges.insert(ordered_pair(u, v));
        Ok(())
    }

    /// Linear graph whose labels equal the node ids.
    pub fn linear<'a, N, E>(nodes: N, edges: E) -> Result<Self>
    where
        N: IntoIterator<Item = &'a str>,
        E: IntoIterator<Item = (&'a str, &'a str)>,
    {
        LabelledGraph::new(
            nodes.into_iter().map(|n| (NodeId::new(n), n.to_string())),
            edges.into_iter().map(|(u, v)| (NodeId::new(u), NodeId::new(v))),
        )
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = &NodeId> {
        self.labels.keys()
    }

    pub fn node_set(&self) -> NodeSet {
        self.labels.keys().cloned().collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = &(NodeId, NodeId)> {
        self.edges.iter()
    }

    pub fn contains_node(&self, v: &NodeId) -> bool {
        self.labels.contains_key(v)
    }

    pub fn label(&self, v: &NodeId) -> Option<&str> {
        self.labels.get(v).map(String::as_str)
    }

    pub fn has_edge(&self, u: &NodeId, v: &NodeId) -> bool {
        if u == v {
            return false;
        }
        let key = if u <= v {
            (u.clone(), v.clone())
        } else {
            (v.clone(), u.clone())
        };
        self.edges.contains(&key)
    }

    /// All distinct labels in use, sorted.
    pub fn label_universe(&self) -> BTreeSet<String> {
        self.labels.values().cloned().collect()
    }

    /// `{L(v) : v in x}`.
    pub fn label_set(&self, x: &NodeSet) -> Result<BTreeSet<String>> {
        let mut out = BTreeSet::new();
        for v in x {
            match self.labels.get(v) {
                Some(l) => {
                    out.insert(l.clone());
                }
                None => return Err(Error::input(format!("unknown node `{v}`"))),
            }
        }
        Ok(out)
    }

    /// True when the label map is injective.
    pub fn is_linear(&self) -> bool {
        self.label_universe().len() == self.labels.len()
    }

    /// Nodes in canonical order: lexicographic by `(label, id)`. All
    /// set-valued results elsewhere are reported consistently with this
    /// order, which keeps output stable across runs.
    pub fn canonical_nodes(&self) -> Vec<NodeId> {
        let mut nodes: Vec<_> = self.labels.keys().cloned().collect();
        nodes.sort_by(|a, b| (&self.labels[a], a).cmp(&(&self.labels[b], b)));
        nodes
    }

    /// First node of a set in canonical order.
    pub fn canonical_least(&self, x: &NodeSet) -> Option<NodeId> {
        x.iter()
            .min_by(|a, b| (&self.labels[*a], *a).cmp(&(&self.labels[*b], *b)))
            .cloned()
    }

    /// Same nodes and labels, complemented edge set. Involutive.
    pub fn complement(&self) -> LabelledGraph {
        let nodes: Vec<_> = self.labels.keys().cloned().collect();
        let mut edges = BTreeSet::new();
        for (i, u) in nodes.iter().enumerate() {
            for v in nodes.iter().skip(i + 1) {
                if !self.has_edge(u, v) {
                    edges.insert(ordered_pair(u.clone(), v.clone()));
                }
            }
        }
        LabelledGraph {
            labels: self.labels.clone(),
            edges,
        }
    }

    /// Subgraph induced by `x`.
    pub fn induced_subgraph(&self, x: &NodeSet) -> Result<LabelledGraph> {
        let mut labels = BTreeMap::new();
        for v in x {
            match self.labels.get(v) {
                Some(l) => {
                    labels.insert(v.clone(), l.clone());
                }
                None => return Err(Error::input(format!("unknown node `{v}`"))),
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|(u, v)| x.contains(u) && x.contains(v))
            .cloned()
            .collect();
        Ok(LabelledGraph { labels, edges })
    }

    /// Internal contiguous view: nodes in canonical order, adjacency as bit
    /// masks. Supports at most 128 nodes, which is ample at desk scale.
    pub(crate) fn mask_view(&self) -> Result<MaskView> {
        let order = self.canonical_nodes();
        if order.len() > 128 {
            return Err(Error::resource(format!(
                "graph has {} nodes; mask-based operations support at most 128",
                order.len()
            )));
        }
        let index: BTreeMap<&NodeId, usize> =
            order.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut adj = vec![0u128; order.len()];
        for (u, v) in &self.edges {
            let (i, j) = (index[u], index[v]);
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        Ok(MaskView { order, adj })
    }

    /// The inclusion-maximal cliques, in canonical order.
    pub fn max_cliques(&self) -> Result<Vec<NodeSet>> {
        let view = self.mask_view()?;
        let mut masks = Vec::new();
        if !view.order.is_empty() {
            let all = if view.order.len() == 128 {
                !0u128
            } else {
                (1u128 << view.order.len()) - 1
            };
            bron_kerbosch(&view.adj, 0, all, 0, &mut masks);
        }
        let mut cliques: Vec<NodeSet> = masks.iter().map(|m| view.set_of(*m)).collect();
        // Sort by member sequence in canonical order for stable output.
        let key = |s: &NodeSet| -> Vec<usize> {
            let mut ix: Vec<usize> = s
                .iter()
                .map(|v| view.order.iter().position(|w| w == v).unwrap())
                .collect();
            ix.sort_unstable();
            ix
        };
        cliques.sort_by_key(key);
        Ok(cliques)
    }

    /// The inclusion-maximal stable sets: exactly `MC(complement(self))`.
    pub fn max_stable_sets(&self) -> Result<Vec<NodeSet>> {
        self.complement().max_cliques()
    }

    /// True iff every pair in `m` has the same neighbourhood outside `m`.
    pub fn is_module(&self, m: &NodeSet) -> Result<bool> {
        for v in m {
            if !self.labels.contains_key(v) {
                return Err(Error::input(format!("unknown node `{v}`")));
            }
        }
        let mut members = m.iter();
        let first = match members.next() {
            Some(f) => f,
            None => return Ok(true), // the empty set is a trivial module
        };
        for z in self.labels.keys() {
            if m.contains(z) {
                continue;
            }
            let expected = self.has_edge(first, z);
            for v in m.iter() {
                if self.has_edge(v, z) != expected {
                    return Ok(false);
                }
            }
        }
        let _ = members;
        Ok(true)
    }

    /// The uniform external neighbourhood of a module.
    pub(crate) fn module_neighbourhood(&self, m: &NodeSet) -> NodeSet {
        let Some(v) = m.iter().next() else {
            return NodeSet::new();
        };
        self.labels
            .keys()
            .filter(|z| !m.contains(z) && self.has_edge(v, z))
            .cloned()
            .collect()
    }

    /// Quotient by a partition into modules. The block node id is the least
    /// member id; the block label comes from the canonically least member.
    pub fn quotient(&self, partition: &[NodeSet]) -> Result<LabelledGraph> {
        self.check_partition(partition)?;
        for block in partition {
            if !self.is_module(block)? {
                return Err(Error::input(format!(
                    "partition block {{{}}} is not a module",
                    join_ids(block)
                )));
            }
        }
        let mut nodes = Vec::new();
        let mut rep_of = Vec::new();
        for block in partition {
            let id = block.iter().next().unwrap().clone();
            let label = self.labels[&self.canonical_least(block).unwrap()].clone();
            rep_of.push((id.clone(), block));
            nodes.push((id, label));
        }
        let mut edges = Vec::new();
        for (i, (id_a, block_a)) in rep_of.iter().enumerate() {
            for (id_b, block_b) in rep_of.iter().skip(i + 1) {
                let u = block_a.iter().next().unwrap();
                let v = block_b.iter().next().unwrap();
                if self.has_edge(u, v) {
                    edges.push((id_a.clone(), id_b.clone()));
                }
            }
        }
        LabelledGraph::new(nodes, edges)
    }

    fn check_partition(&self, partition: &[NodeSet]) -> Result<()> {
        let mut seen = NodeSet::new();
        for block in partition {
            if block.is_empty() {
                return Err(Error::input("empty partition block"));
            }
            for v in block {
                if !self.labels.contains_key(v) {
                    return Err(Error::input(format!("unknown node `{v}`")));
                }
                if !seen.insert(v.clone()) {
                    return Err(Error::input(format!("node `{v}` appears in two blocks")));
                }
            }
        }
        if seen.len() != self.labels.len() {
            return Err(Error::input("partition does not cover all nodes"));
        }
        Ok(())
    }

    /// Connected components as node sets, ordered by canonical least member.
    pub fn connected_components(&self) -> Vec<NodeSet> {
        let mut remaining: NodeSet = self.labels.keys().cloned().collect();
        let mut components = Vec::new();
        while let Some(seed) = remaining.iter().next().cloned() {
            let mut comp = NodeSet::new();
            let mut stack = vec![seed];
            while let Some(v) = stack.pop() {
                if !remaining.remove(&v) {
                    continue;
                }
                for (a, b) in &self.edges {
                    if *a == v && remaining.contains(b) {
                        stack.push(b.clone());
                    } else if *b == v && remaining.contains(a) {
                        stack.push(a.clone());
                    }
                }
                comp.insert(v);
            }
            components.push(comp);
        }
        components.sort_by_key(|c| self.canonical_least(c));
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn is_co_connected(&self) -> bool {
        self.complement().is_connected()
    }

    /// True iff no four nodes induce a path. Graphs with this property are
    /// exactly the cographs, i.e. the relation webs of read-once formulas.
    pub fn is_p4_free(&self) -> bool {
        self.find_induced_p4().is_none()
    }

    /// A witness induced 4-path, as `[end, mid, mid, end]`, if one exists.
    pub fn find_induced_p4(&self) -> Option<[NodeId; 4]> {
        let nodes: Vec<_> = self.labels.keys().cloned().collect();
        let n = nodes.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let quad = [&nodes[a], &nodes[b], &nodes[c], &nodes[d]];
                        if let Some(path) = induced_p4(self, quad) {
                            return Some(path);
                        }
                    }
                }
            }
        }
        None
    }

    /// True iff the graph has at least 3 nodes and only trivial modules.
    pub fn is_prime(&self) -> bool {
        let n = self.labels.len();
        if n < 3 {
            return false;
        }
        let nodes: Vec<_> = self.labels.keys().cloned().collect();
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                let closure = self.minimal_module_containing(&nodes[i], &nodes[j]);
                if closure.len() < n {
                    return false;
                }
            }
        }
        true
    }

    /// The smallest module containing both nodes, computed by closing the
    /// pair under splitters: any outside node adjacent to part of the
    /// current set must join it.
    pub(crate) fn minimal_module_containing(&self, u: &NodeId, v: &NodeId) -> NodeSet {
        let mut m = node_set([u.clone(), v.clone()]);
        loop {
            let mut grew = false;
            let outside: Vec<_> = self
                .labels
                .keys()
                .filter(|z| !m.contains(*z))
                .cloned()
                .collect();
            for z in outside {
                let mut adj = None;
                let mut splits = false;
                for w in &m {
                    let e = self.has_edge(&z, w);
                    match adj {
                        None => adj = Some(e),
                        Some(prev) if prev != e => {
                            splits = true;
                            break;
                        }
                        _ => {}
                    }
                }
                if splits {
                    m.insert(z);
                    grew = true;
                }
            }
            if !grew {
                return m;
            }
        }
    }

    /// Unlabelled isomorphism by backtracking search. Intended for small
    /// graphs (roughly ten nodes); labels are ignored.
    pub fn is_isomorphic(&self, other: &LabelledGraph) -> bool {
        isomorphism(self, other, false)
    }

    /// Isomorphism that must also preserve labels.
    pub fn is_label_isomorphic(&self, other: &LabelledGraph) -> bool {
        isomorphism(self, other, true)
    }

    /// Parses the graph text format: `#`-comment lines, `node <id> [<label>]`
    /// and `edge <id> <id>` lines. The label defaults to the id.
    pub fn parse(text: &str) -> Result<LabelledGraph> {
        let mut nodes = Vec::new();
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut words = line.split_whitespace();
            let head = words.next().unwrap();
            let rest: Vec<&str> = words.collect();
            match head {
                "node" => match rest.as_slice() {
                    [id] => nodes.push((NodeId::new(*id), id.to_string())),
                    [id, label] => nodes.push((NodeId::new(*id), label.to_string())),
                    _ => {
                        return Err(Error::parse(
                            lineno + 1,
                            1,
                            "expected `node <id> [<label>]`".to_string(),
                        ))
                    }
                },
                "edge" => match rest.as_slice() {
                    [u, v] => edges.push((NodeId::new(*u), NodeId::new(*v))),
                    _ => {
                        return Err(Error::parse(
                            lineno + 1,
                            1,
                            "expected `edge <id> <id>`".to_string(),
                        ))
                    }
                },
                other => {
                    return Err(Error::parse(
                        lineno + 1,
                        1,
                        format!("unknown directive `{other}`"),
                    ))
                }
            }
        }
        LabelledGraph::new(nodes, edges)
    }
}

impl fmt::Display for LabelledGraph {
    /// Emits the graph text format deterministically: nodes in canonical
    /// order, edges in sorted id order. Labels equal to the id are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.canonical_nodes() {
            let label = &self.labels[&v];
            if label == v.as_str() {
                writeln!(f, "node {v}")?;
            } else {
                writeln!(f, "node {v} {label}")?;
            }
        }
        for (u, v) in &self.edges {
            writeln!(f, "edge {u} {v}")?;
        }
        Ok(())
    }
}

pub(crate) fn join_ids(set: &NodeSet) -> String {
    set.iter()
        .map(NodeId::as_str)
        .collect::<Vec<_>>()
        .join(",")
}

pub(crate) struct MaskView {
    pub order: Vec<NodeId>,
    pub adj: Vec<u128>,
}

impl MaskView {
    pub fn set_of(&self, mask: u128) -> NodeSet {
        self.order
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| v.clone())
            .collect()
    }
}

/// Pivoted Bron–Kerbosch enumeration of maximal cliques over bit masks.
fn bron_kerbosch(adj: &[u128], r: u128, mut p: u128, mut x: u128, out: &mut Vec<u128>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    let pivot = iter_bits(p | x)
        .max_by_key(|&u| (p & adj[u]).count_ones())
        .unwrap();
    let mut candidates = p & !adj[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        let bit = 1u128 << v;
        candidates &= !bit;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

fn iter_bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

fn induced_p4(g: &LabelledGraph, quad: [&NodeId; 4]) -> Option<[NodeId; 4]> {
    let mut degree = [0usize; 4];
    let mut edge_count = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if g.has_edge(quad[i], quad[j]) {
                degree[i] += 1;
                degree[j] += 1;
                edge_count += 1;
            }
        }
    }
    if edge_count != 3 {
        return None;
    }
    let mut sorted = degree;
    sorted.sort_unstable();
    if sorted != [1, 1, 2, 2] {
        return None;
    }
    // Reconstruct the path order: end, its neighbour, next, other end.
    let ends: Vec<usize> = (0..4).filter(|&i| degree[i] == 1).collect();
    let start = ends[0];
    let mut order = vec![start];
    let mut prev = start;
    while order.len() < 4 {
        let next = (0..4)
            .find(|&j| !order.contains(&j) && g.has_edge(quad[prev], quad[j]))
            .unwrap();
        order.push(next);
        prev = next;
    }
    Some([
        quad[order[0]].clone(),
        quad[order[1]].clone(),
        quad[order[2]].clone(),
        quad[order[3]].clone(),
    ])
}

fn isomorphism(g: &LabelledGraph, h: &LabelledGraph, with_labels: bool) -> bool {
    if g.node_count() != h.node_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let gn: Vec<NodeId> = g.labels.keys().cloned().collect();
    let hn: Vec<NodeId> = h.labels.keys().cloned().collect();
    let degree = |graph: &LabelledGraph, v: &NodeId| {
        graph.edges.iter().filter(|(a, b)| a == v || b == v).count()
    };
    let gd: Vec<usize> = gn.iter().map(|v| degree(g, v)).collect();
    let hd: Vec<usize> = hn.iter().map(|v| degree(h, v)).collect();
    {
        let mut a = gd.clone();
        let mut b = hd.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return false;
        }
    }
    fn assign(
        g: &LabelledGraph,
        h: &LabelledGraph,
        gn: &[NodeId],
        hn: &[NodeId],
        gd: &[usize],
        hd: &[usize],
        with_labels: bool,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let i = map.len();
        if i == gn.len() {
            return true;
        }
        for j in 0..hn.len() {
            if used[j] || gd[i] != hd[j] {
                continue;
            }
            if with_labels && g.labels[&gn[i]] != h.labels[&hn[j]] {
                continue;
            }
            let ok = (0..i).all(|k| {
                g.has_edge(&gn[i], &gn[k]) == h.has_edge(&hn[j], &hn[map[k]])
            });
            if ok {
                map.push(j);
                used[j] = true;
                if assign(g, h, gn, hn, gd, hd, with_labels, map, used) {
                    return true;
                }
                used[j] = false;
                map.pop();
            }
        }
        false
    }
    assign(
        g,
        h,
        &gn,
        &hn,
        &gd,
        &hd,
        with_labels,
        &mut Vec::new(),
        &mut vec![false; hn.len()],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn p4_paper() -> LabelledGraph {
        // The worked 4-path: z–x, x–w, w–y.
        LabelledGraph::linear(["w", "x", "y", "z"], [("z", "x"), ("x", "w"), ("w", "y")]).unwrap()
    }

    fn c5() -> LabelledGraph {
        LabelledGraph::linear(
            ["v", "w", "x", "y", "z"],
            [("v", "w"), ("w", "x"), ("x", "y"), ("y", "z"), ("z", "v")],
        )
        .unwrap()
    }

    fn k(n: usize) -> LabelledGraph {
        let names: Vec<String> = (0..n).map(|i| format!("k{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((refs[i], refs[j]));
            }
        }
        LabelledGraph::linear(refs.clone(), edges).unwrap()
    }

    #[test]
    fn complement_of_complete_is_edgeless() {
        let g = k(3).complement();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn complement_is_involutive() {
        let g = p4_paper();
        assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn p4_is_self_complementary_and_c5_too() {
        assert!(p4_paper().is_isomorphic(&p4_paper().complement()));
        assert!(c5().is_isomorphic(&c5().complement()));
    }

    #[test]
    fn induced_subgraph_restricts_edges() {
        let g = c5();
        let sub = g
            .induced_subgraph(&node_set(["v", "w", "x"]))
            .unwrap();
        assert_eq!(sub.edge_count(), 2);
        assert!(sub.has_edge(&"v".into(), &"w".into()));
        assert!(sub.has_edge(&"w".into(), &"x".into()));
        assert!(!sub.has_edge(&"v".into(), &"x".into()));
    }

    #[test]
    fn induced_subgraph_identity_and_empty() {
        let g = p4_paper();
        assert_eq!(g.induced_subgraph(&g.node_set()).unwrap(), g);
        let empty = g.induced_subgraph(&NodeSet::new()).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn induced_subgraph_rejects_unknown_node() {
        let g = p4_paper();
        assert!(g.induced_subgraph(&node_set(["nope"])).is_err());
    }

    #[test]
    fn max_cliques_of_paper_p4() {
        let g = p4_paper();
        let mc = g.max_cliques().unwrap();
        let expected: Vec<NodeSet> = vec![
            node_set(["w", "x"]),
            node_set(["w", "y"]),
            node_set(["x", "z"]),
        ];
        assert_eq!(
            mc.iter().cloned().collect::<BTreeSet<_>>(),
            expected.into_iter().collect::<BTreeSet<_>>()
        );
    }

    #[test]
    fn max_stable_sets_of_paper_p4() {
        let g = p4_paper();
        let ms = g.max_stable_sets().unwrap();
        let expected: Vec<NodeSet> = vec![
            node_set(["w", "z"]),
            node_set(["y", "z"]),
            node_set(["x", "y"]),
        ];
        assert_eq!(
            ms.into_iter().collect::<BTreeSet<_>>(),
            expected.into_iter().collect::<BTreeSet<_>>()
        );
    }

    #[test]
    fn max_cliques_of_complete_graph() {
        let g = k(4);
        let mc = g.max_cliques().unwrap();
        assert_eq!(mc, vec![g.node_set()]);
    }

    #[test]
    fn max_cliques_of_empty_graph() {
        let g = LabelledGraph::linear([], []).unwrap();
        assert!(g.max_cliques().unwrap().is_empty());
        assert!(g.max_stable_sets().unwrap().is_empty());
    }

    /// The 7-node example graph used for modules throughout: two modules
    /// {v',x'} and {v,x}, plus u, w', w.
    pub(crate) fn module_example() -> LabelledGraph {
        LabelledGraph::linear(
            ["v'", "x'", "v", "x", "u", "w'", "w"],
            [
                ("v'", "v"),
                ("v'", "x"),
                ("x'", "v"),
                ("x'", "x"),
                ("v", "u"),
                ("x", "u"),
                ("v", "w'"),
                ("x", "w'"),
                ("u", "w"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn module_example_has_the_stated_modules() {
        let g = module_example();
        assert!(g.is_module(&node_set(["v'", "x'"])).unwrap());
        assert!(g.is_module(&node_set(["v", "x"])).unwrap());
        assert!(g.is_module(&node_set(["v'", "x'", "w'"])).unwrap());
        assert!(g.is_module(&g.node_set()).unwrap());
    }

    #[test]
    fn p4_middle_pair_is_not_a_module() {
        // w–x–y–z: w is adjacent to x but not to y.
        let g = LabelledGraph::linear(
            ["w", "x", "y", "z"],
            [("w", "x"), ("x", "y"), ("y", "z")],
        )
        .unwrap();
        assert!(!g.is_module(&node_set(["x", "y"])).unwrap());
    }

    #[test]
    fn quotient_of_module_example_is_p4() {
        let g = module_example();
        let partition = vec![
            node_set(["v'", "x'", "w'"]),
            node_set(["v", "x"]),
            node_set(["u"]),
            node_set(["w"]),
        ];
        let q = g.quotient(&partition).unwrap();
        assert_eq!(q.node_count(), 4);
        let p4 = LabelledGraph::linear(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")])
            .unwrap();
        assert!(q.is_isomorphic(&p4));
    }

    #[test]
    fn quotient_by_singletons_is_identity_shape() {
        let g = p4_paper();
        let partition: Vec<NodeSet> = g.nodes().map(|v| node_set([v.clone()])).collect();
        let q = g.quotient(&partition).unwrap();
        assert_eq!(q, g);
    }

    #[test]
    fn quotient_whole_graph_is_single_node() {
        let g = k(3);
        let q = g.quotient(&[g.node_set()]).unwrap();
        assert_eq!(q.node_count(), 1);
    }

    #[test]
    fn quotient_rejects_non_module_blocks() {
        let g = LabelledGraph::linear(
            ["w", "x", "y", "z"],
            [("w", "x"), ("x", "y"), ("y", "z")],
        )
        .unwrap();
        let p = vec![node_set(["x", "y"]), node_set(["w"]), node_set(["z"])];
        assert!(g.quotient(&p).is_err());
    }

    #[test]
    fn p4_freeness_of_small_graphs() {
        let c4 = LabelledGraph::linear(
            ["a", "b", "c", "d"],
            [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        )
        .unwrap();
        assert!(c4.is_p4_free());
        assert!(!p4_paper().is_p4_free());
        assert!(!c5().is_p4_free());
    }

    #[test]
    fn p4_is_prime_and_small_graphs_are_not() {
        assert!(p4_paper().is_prime());
        assert!(!k(2).is_prime());
        assert!(!k(1).is_prime());
        assert!(!k(4).is_prime()); // every subset of K4 is a module
    }

    #[test]
    fn isomorphism_examples() {
        assert!(!k(3).is_isomorphic(&LabelledGraph::linear(
            ["a", "b", "c"],
            [("a", "b"), ("b", "c")]
        )
        .unwrap()));
        // Unlabelled isomorphism ignores labels.
        let g = LabelledGraph::new(
            [(NodeId::new("1"), "p".to_string()), (NodeId::new("2"), "q".to_string())],
            [(NodeId::new("1"), NodeId::new("2"))],
        )
        .unwrap();
        assert!(g.is_isomorphic(&k(2)));
        assert!(!g.is_label_isomorphic(&k(2)));
    }

    #[test]
    fn label_set_collapses_repeats() {
        let g = LabelledGraph::new(
            [
                (NodeId::new("n1"), "x".to_string()),
                (NodeId::new("n2"), "x".to_string()),
            ],
            [],
        )
        .unwrap();
        let l = g.label_set(&node_set(["n1", "n2"])).unwrap();
        assert_eq!(l.len(), 1);
        assert!(l.contains("x"));
        assert!(!g.is_linear());
    }

    #[test]
    fn cliques_and_stable_sets_intersect_at_most_once() {
        for g in [p4_paper(), c5(), module_example(), k(4)] {
            let mc = g.max_cliques().unwrap();
            let ms = g.max_stable_sets().unwrap();
            for s in &mc {
                for t in &ms {
                    assert!(s.intersection(t).count() <= 1);
                }
            }
        }
    }

    #[test]
    fn self_loop_and_unknown_endpoint_rejected() {
        assert!(LabelledGraph::linear(["a"], [("a", "a")]).is_err());
        assert!(LabelledGraph::linear(["a"], [("a", "b")]).is_err());
    }

    #[test]
    fn text_format_round_trip() {
        let g = module_example();
        let text = g.to_string();
        let parsed = LabelledGraph::parse(&text).unwrap();
        assert_eq!(parsed, g);
    }

    #[test]
    fn text_format_accepts_comments_labels_and_duplicate_edges() {
        let text = "# a comment\nnode n1 x\nnode n2 x\nnode m\nedge n1 n2\nedge n2 n1\n";
        let g = LabelledGraph::parse(text).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.label(&"m".into()), Some("m"));
        assert_eq!(g.label(&"n1".into()), Some("x"));
    }

    #[test]
    fn text_format_rejects_self_loops_and_junk() {
        assert!(LabelledGraph::parse("node a\nedge a a\n").is_err());
        assert!(LabelledGraph::parse("vertex a\n").is_err());
    }
}
