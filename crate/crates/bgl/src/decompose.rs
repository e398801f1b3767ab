//! Modular decomposition: Gallai's trichotomy, prime quotients, and
//! decomposition trees, plus classification of maximal cliques and stable
//! sets through the tree.
//!
//! Every nonempty graph is exactly one of: a singleton, disconnected,
//! co-disconnected, or partitioned by its maximal proper modules (in which
//! case the quotient by that partition is a prime graph). Recursing gives
//! the decomposition tree with `Leaf`, `Or`, `And` and `Prime` nodes; on
//! P4-free graphs the tree is a cotree, i.e. a formula.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{LabelledGraph, NodeId, NodeSet};

/// The four mutually exclusive cases of modular decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Singleton,
    /// Connected components, ordered by canonical least member.
    Disconnected(Vec<NodeSet>),
    /// Co-connected components (components of the complement).
    CoDisconnected(Vec<NodeSet>),
    /// Connected and co-connected; the maximal proper modules partition V.
    Biconnected,
}

/// Classifies a nonempty graph into exactly one trichotomy case.
pub fn classify(g: &LabelledGraph) -> Result<Classification> {
    if g.is_empty() {
        return Err(Error::input("cannot classify the empty graph"));
    }
    if g.node_count() == 1 {
        return Ok(Classification::Singleton);
    }
    let components = g.connected_components();
    if components.len() > 1 {
        return Ok(Classification::Disconnected(components));
    }
    let co = g.complement().connected_components();
    if co.len() > 1 {
        return Ok(Classification::CoDisconnected(co));
    }
    Ok(Classification::Biconnected)
}

/// The maximal proper modules of a biconnected graph, as a partition ordered
/// by canonical least member. Computed naively: close every seed pair into
/// its minimal module, merge overlapping proper modules, keep the maximal
/// ones, and pad with singletons.
pub fn prime_quotient(g: &LabelledGraph) -> Result<Vec<NodeSet>> {
    if classify(g)? != Classification::Biconnected {
        return Err(Error::input(
            "prime_quotient requires a connected and co-connected graph on >= 2 nodes",
        ));
    }
    let n = g.node_count();
    let nodes: Vec<NodeId> = g.nodes().cloned().collect();
    let mut candidates: Vec<NodeSet> = Vec::new();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            let m = g.minimal_module_containing(&nodes[i], &nodes[j]);
            if m.len() < n && !candidates.contains(&m) {
                candidates.push(m);
            }
        }
    }
    // Overlapping modules have a module as union; merged unions stay proper
    // in the biconnected case.
    loop {
        let mut merged = None;
        'outer: for i in 0..candidates.len() {
            for j in i + 1..candidates.len() {
                if !candidates[i].is_disjoint(&candidates[j]) {
                    merged = Some((i, j));
                    break 'outer;
                }
            }
        }
        match merged {
            Some((i, j)) => {
                let b = candidates.swap_remove(j);
                let union: NodeSet = candidates[i].union(&b).cloned().collect();
                if union.len() == n {
                    return Err(Error::input(
                        "merged proper modules covered the whole graph; input is not biconnected",
                    ));
                }
                debug_assert!(g.is_module(&union)?);
                candidates[i] = union;
            }
            None => break,
        }
    }
    let mut blocks = candidates;
    for v in &nodes {
        if !blocks.iter().any(|b| b.contains(v)) {
            blocks.push([v.clone()].into_iter().collect());
        }
    }
    blocks.sort_by_key(|b| g.canonical_least(b));
    Ok(blocks)
}

/// Modular decomposition tree. Each internal node records the node set of
/// the ambient graph it covers; leaves biject with the graph's nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecTree {
    Leaf {
        node: NodeId,
        label: String,
    },
    Or {
        cover: NodeSet,
        children: Vec<DecTree>,
    },
    And {
        cover: NodeSet,
        children: Vec<DecTree>,
    },
    Prime {
        cover: NodeSet,
        /// The prime quotient, over one node per block (the least node id of
        /// the block), aligned with `children`.
        quotient: LabelledGraph,
        children: Vec<DecTree>,
    },
}

impl DecTree {
    pub fn cover(&self) -> NodeSet {
        match self {
            DecTree::Leaf { node, .. } => [node.clone()].into_iter().collect(),
            DecTree::Or { cover, .. }
            | DecTree::And { cover, .. }
            | DecTree::Prime { cover, .. } => cover.clone(),
        }
    }

    pub fn children(&self) -> &[DecTree] {
        match self {
            DecTree::Leaf { .. } => &[],
            DecTree::Or { children, .. }
            | DecTree::And { children, .. }
            | DecTree::Prime { children, .. } => children,
        }
    }

    /// True when some node of the tree is prime; equivalently, the source
    /// graph is not a cograph.
    pub fn has_prime(&self) -> bool {
        match self {
            DecTree::Leaf { .. } => false,
            DecTree::Prime { .. } => true,
            DecTree::Or { children, .. } | DecTree::And { children, .. } => {
                children.iter().any(DecTree::has_prime)
            }
        }
    }

    /// Nested s-expression rendering, e.g.
    /// `(or (and a b) (prime P4 c d e (and f g)))`. Known prime shapes are
    /// named (`P4`, `C5`, `bull`, ...); others render as `prime<n>`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out);
        out
    }

    fn render_into(&self, out: &mut String) {
        match self {
            DecTree::Leaf { node, .. } => {
                let _ = write!(out, "{node}");
            }
            DecTree::Or { children, .. } => {
                out.push_str("(or");
                for c in children {
                    out.push(' ');
                    c.render_into(out);
                }
                out.push(')');
            }
            DecTree::And { children, .. } => {
                out.push_str("(and");
                for c in children {
                    out.push(' ');
                    c.render_into(out);
                }
                out.push(')');
            }
            DecTree::Prime {
                quotient, children, ..
            } => {
                let _ = write!(out, "(prime {}", shape_name(quotient));
                for c in children {
                    out.push(' ');
                    c.render_into(out);
                }
                out.push(')');
            }
        }
    }
}

/// A readable name for small prime shapes, used in tree rendering.
fn shape_name(q: &LabelledGraph) -> String {
    let n = q.node_count();
    for (name, path_len) in (3..=8).map(|k| (format!("P{k}"), k)) {
        if n == path_len && q.edge_count() == n - 1 && is_path(q) {
            return name;
        }
    }
    if n >= 4 && q.edge_count() == n && is_cycle(q) {
        return format!("C{n}");
    }
    if n == 5 && is_bull(q) {
        return "bull".to_string();
    }
    format!("prime{n}")
}

fn degree_sequence(g: &LabelledGraph) -> Vec<usize> {
    let mut d: Vec<usize> = g
        .nodes()
        .map(|v| g.nodes().filter(|u| g.has_edge(u, v)).count())
        .collect();
    d.sort_unstable();
    d
}

fn is_path(g: &LabelledGraph) -> bool {
    let d = degree_sequence(g);
    g.is_connected() && d.first() == Some(&1) && d.iter().filter(|&&x| x == 1).count() == 2
        && d.iter().all(|&x| x <= 2)
}

fn is_cycle(g: &LabelledGraph) -> bool {
    g.is_connected() && degree_sequence(g).iter().all(|&x| x == 2)
}

fn is_bull(g: &LabelledGraph) -> bool {
    degree_sequence(g) == vec![1, 1, 2, 3, 3] && g.is_connected()
}

/// Builds the decomposition tree of a nonempty graph. Children are ordered
/// canonically by the least node id they cover.
pub fn decompose(g: &LabelledGraph) -> Result<DecTree> {
    match classify(g)? {
        Classification::Singleton => {
            let node = g.nodes().next().unwrap().clone();
            let label = g.label(&node).unwrap().to_string();
            Ok(DecTree::Leaf { node, label })
        }
        Classification::Disconnected(parts) => Ok(DecTree::Or {
            cover: g.node_set(),
            children: subtrees(g, parts)?,
        }),
        Classification::CoDisconnected(parts) => Ok(DecTree::And {
            cover: g.node_set(),
            children: subtrees(g, parts)?,
        }),
        Classification::Biconnected => {
            let blocks = prime_quotient(g)?;
            let quotient = g.quotient(&blocks)?;
            debug_assert!(quotient.is_prime());
            Ok(DecTree::Prime {
                cover: g.node_set(),
                quotient,
                children: subtrees(g, blocks)?,
            })
        }
    }
}

fn subtrees(g: &LabelledGraph, mut parts: Vec<NodeSet>) -> Result<Vec<DecTree>> {
    parts.sort_by_key(|p| p.iter().next().cloned());
    parts
        .into_iter()
        .map(|p| decompose(&g.induced_subgraph(&p)?))
        .collect()
}

/// Rebuilds the graph a tree was computed from, exactly (same ids, labels
/// and edges). Inverse of [`decompose`] for testing and serialisation.
pub fn compose(t: &DecTree) -> LabelledGraph {
    match t {
        DecTree::Leaf { node, label } => LabelledGraph::new(
            [(node.clone(), label.clone())],
            std::iter::empty::<(NodeId, NodeId)>(),
        )
        .unwrap(),
        DecTree::Or { children, .. } => merge(children, |_, _| false),
        DecTree::And { children, .. } => merge(children, |_, _| true),
        DecTree::Prime {
            quotient, children, ..
        } => {
            let reps: Vec<NodeId> = children
                .iter()
                .map(|c| c.cover().iter().next().unwrap().clone())
                .collect();
            merge_indexed(children, |i, j| quotient.has_edge(&reps[i], &reps[j]))
        }
    }
}

fn merge(children: &[DecTree], cross: impl Fn(usize, usize) -> bool) -> LabelledGraph {
    merge_indexed(children, cross)
}

fn merge_indexed(children: &[DecTree], cross: impl Fn(usize, usize) -> bool) -> LabelledGraph {
    let parts: Vec<LabelledGraph> = children.iter().map(compose).collect();
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for p in &parts {
        for v in p.nodes() {
            nodes.push((v.clone(), p.label(v).unwrap().to_string()));
        }
        edges.extend(p.edges().cloned());
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if cross(i, j) {
                for u in parts[i].nodes() {
                    for v in parts[j].nodes() {
                        edges.push((u.clone(), v.clone()));
                    }
                }
            }
        }
    }
    LabelledGraph::new(nodes, edges).expect("composed graphs are well formed")
}

/// Maximal cliques computed by recursion on the decomposition tree: a
/// union clique per component at `Or`, a cross product at `And`, and at a
/// prime node one maximal clique of the quotient combined with one maximal
/// clique per selected block.
pub fn max_cliques_via_tree(g: &LabelledGraph) -> Result<Vec<NodeSet>> {
    let tree = decompose(g)?;
    let mut cliques = cliques_of(&tree, false)?;
    cliques.sort();
    Ok(cliques)
}

/// Dual of [`max_cliques_via_tree`].
pub fn max_stable_sets_via_tree(g: &LabelledGraph) -> Result<Vec<NodeSet>> {
    let tree = decompose(g)?;
    let mut stables = cliques_of(&tree, true)?;
    stables.sort();
    Ok(stables)
}

/// `dual = false` computes maximal cliques, `dual = true` maximal stable
/// sets (the recursion swaps the roles of `Or`/`And` and of MC/MS at prime
/// quotients).
fn cliques_of(t: &DecTree, dual: bool) -> Result<Vec<NodeSet>> {
    match t {
        DecTree::Leaf { node, .. } => Ok(vec![[node.clone()].into_iter().collect()]),
        DecTree::Or { children, .. } if !dual => union_case(children, dual),
        DecTree::Or { children, .. } => product_case(children, dual),
        DecTree::And { children, .. } if !dual => product_case(children, dual),
        DecTree::And { children, .. } => union_case(children, dual),
        DecTree::Prime {
            quotient, children, ..
        } => {
            let reps: Vec<NodeId> = children
                .iter()
                .map(|c| c.cover().iter().next().unwrap().clone())
                .collect();
            let quotient_sets = if dual {
                quotient.max_stable_sets()?
            } else {
                quotient.max_cliques()?
            };
            let per_child: Vec<Vec<NodeSet>> = children
                .iter()
                .map(|c| cliques_of(c, dual))
                .collect::<Result<_>>()?;
            let mut out = Vec::new();
            for s in quotient_sets {
                let picked: Vec<usize> = reps
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| s.contains(*r))
                    .map(|(i, _)| i)
                    .collect();
                let mut acc: Vec<NodeSet> = vec![NodeSet::new()];
                for &i in &picked {
                    let mut next = Vec::new();
                    for base in &acc {
                        for part in &per_child[i] {
                            let mut u = base.clone();
                            u.extend(part.iter().cloned());
                            next.push(u);
                        }
                    }
                    acc = next;
                }
                out.extend(acc);
            }
            Ok(out)
        }
    }
}

fn union_case(children: &[DecTree], dual: bool) -> Result<Vec<NodeSet>> {
    let mut out = Vec::new();
    for c in children {
        out.extend(cliques_of(c, dual)?);
    }
    Ok(out)
}

fn product_case(children: &[DecTree], dual: bool) -> Result<Vec<NodeSet>> {
    let mut acc: Vec<NodeSet> = vec![NodeSet::new()];
    for c in children {
        let parts = cliques_of(c, dual)?;
        let mut next = Vec::new();
        for base in &acc {
            for part in &parts {
                let mut u = base.clone();
                u.extend(part.iter().cloned());
                next.push(u);
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Convenience: renders `decompose(g)`.
pub fn render_decomposition(g: &LabelledGraph) -> Result<String> {
    Ok(decompose(g)?.render())
}

impl std::fmt::Display for DecTree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::node_set;

    fn module_example() -> LabelledGraph {
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

    /// The 7-node disconnected example: a K2 on {a,b} and a P4-shaped prime
    /// part over c, d, e and the K2 module {f,g}.
    fn seven_node_example() -> LabelledGraph {
        LabelledGraph::linear(
            ["a", "b", "c", "d", "e", "f", "g"],
            [
                ("a", "b"),
                ("c", "d"),
                ("d", "e"),
                ("e", "f"),
                ("e", "g"),
                ("f", "g"),
            ],
        )
        .unwrap()
    }

    fn p4() -> LabelledGraph {
        LabelledGraph::linear(["w", "x", "y", "z"], [("w", "x"), ("x", "y"), ("y", "z")])
            .unwrap()
    }

    #[test]
    fn classify_cases() {
        let single = LabelledGraph::linear(["x"], []).unwrap();
        assert_eq!(classify(&single).unwrap(), Classification::Singleton);

        let k2 = LabelledGraph::linear(["a", "b"], [("a", "b")]).unwrap();
        assert!(matches!(
            classify(&k2).unwrap(),
            Classification::CoDisconnected(_)
        ));

        assert_eq!(classify(&p4()).unwrap(), Classification::Biconnected);

        let empty = LabelledGraph::linear([], []).unwrap();
        assert!(classify(&empty).is_err());
    }

    #[test]
    fn prime_quotient_of_the_module_example() {
        let g = module_example();
        let blocks = prime_quotient(&g).unwrap();
        let expected = vec![
            node_set(["u"]),
            node_set(["v", "x"]),
            node_set(["v'", "x'", "w'"]),
            node_set(["w"]),
        ];
        assert_eq!(
            blocks.iter().cloned().collect::<std::collections::BTreeSet<_>>(),
            expected.into_iter().collect::<std::collections::BTreeSet<_>>()
        );
        let q = g.quotient(&blocks).unwrap();
        assert!(q.is_prime());
    }

    #[test]
    fn prime_quotient_of_p4_is_singletons() {
        let blocks = prime_quotient(&p4()).unwrap();
        assert_eq!(blocks.len(), 4);
        assert!(blocks.iter().all(|b| b.len() == 1));
    }

    #[test]
    fn prime_quotient_of_bull_is_singletons() {
        // Triangle v,x,y with horns w on x and z on y.
        let bull = LabelledGraph::linear(
            ["v", "x", "y", "w", "z"],
            [("v", "x"), ("v", "y"), ("x", "y"), ("x", "w"), ("y", "z")],
        )
        .unwrap();
        let blocks = prime_quotient(&bull).unwrap();
        assert_eq!(blocks.len(), 5);
        assert!(bull.is_prime());
    }

    #[test]
    fn decompose_renders_the_seven_node_example() {
        let g = seven_node_example();
        let tree = decompose(&g).unwrap();
        assert_eq!(tree.render(), "(or (and a b) (prime P4 c d e (and f g)))");
    }

    #[test]
    fn decompose_renders_the_module_example() {
        // Same tree as the worked example, with children in canonical
        // order (least covered node id first).
        let g = module_example();
        let tree = decompose(&g).unwrap();
        assert_eq!(tree.render(), "(prime P4 u (or v x) (or v' w' x') w)");
    }

    #[test]
    fn decompose_singleton_is_a_leaf() {
        let g = LabelledGraph::linear(["x"], []).unwrap();
        assert!(matches!(decompose(&g).unwrap(), DecTree::Leaf { .. }));
    }

    #[test]
    fn compose_inverts_decompose_on_fixtures() {
        for g in [module_example(), seven_node_example(), p4()] {
            let tree = decompose(&g).unwrap();
            assert_eq!(compose(&tree), g);
        }
    }

    #[test]
    fn tree_cliques_match_direct_enumeration_on_fixtures() {
        for g in [module_example(), seven_node_example(), p4()] {
            let direct: std::collections::BTreeSet<_> =
                g.max_cliques().unwrap().into_iter().collect();
            let via_tree: std::collections::BTreeSet<_> =
                max_cliques_via_tree(&g).unwrap().into_iter().collect();
            assert_eq!(direct, via_tree);

            let direct_ms: std::collections::BTreeSet<_> =
                g.max_stable_sets().unwrap().into_iter().collect();
            let via_tree_ms: std::collections::BTreeSet<_> =
                max_stable_sets_via_tree(&g).unwrap().into_iter().collect();
            assert_eq!(direct_ms, via_tree_ms);
        }
    }

    #[test]
    fn k2_via_tree() {
        let k2 = LabelledGraph::linear(["a", "b"], [("a", "b")]).unwrap();
        assert_eq!(
            max_cliques_via_tree(&k2).unwrap(),
            vec![node_set(["a", "b"])]
        );
        assert_eq!(
            max_stable_sets_via_tree(&k2).unwrap(),
            vec![node_set(["a"]), node_set(["b"])]
        );
    }

    #[test]
    fn cotree_has_no_prime_iff_p4_free() {
        use crate::enumerate::graphs_up_to_iso_cumulative;
        for mask in graphs_up_to_iso_cumulative(5).unwrap() {
            let g = mask.to_graph();
            let tree = decompose(&g).unwrap();
            assert_eq!(!tree.has_prime(), g.is_p4_free(), "at {g:?}");
        }
    }
}
