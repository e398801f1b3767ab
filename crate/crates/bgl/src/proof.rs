//! Deep-inference rewriting on graphs.
//!
//! Rules rewrite a module in place, leaving the ambient graph untouched:
//! the structural rules `w_r`, `w_l`, `c_r`, `c_l` introduce, project,
//! collapse and duplicate module halves, while `d_and`/`d_or` duplicate a
//! pivot and split its (non-)neighbourhood between the two copies. The
//! split rules preserve maximal cliques (respectively stable sets) up to
//! labels, which drives [`to_dnf`]/[`to_cnf`] normalisation and the
//! three-phase entailment derivation of [`derive_entailment`]. Every step
//! of a [`Derivation`] carries its full source and target graphs and can be
//! re-checked independently with [`check_derivation`].
//!
//! The split rules require the two partition parts to be fully
//! non-adjacent (`d_and`) or fully adjacent (`d_or`), as in their rule
//! shapes; this is what makes them invertible. A pivot may be any module,
//! not just a single node — the atomic rule cannot reach a normal form on
//! graphs as small as the diamond, while the module form can. Even so,
//! some prime graphs (the 5-node gem is the smallest) admit no
//! clique-preserving split at all; [`to_dnf`] reports those honestly as
//! stuck rather than changing the computed relation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::decompose::{decompose, DecTree};
use crate::error::{Error, Result};
use crate::graph::{LabelledGraph, NodeId, NodeSet};
use crate::semantics::{entails_and, entails_or};

/// Which entailment a derivation is meant to be sound for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    And,
    Or,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::And => "and",
            Flavor::Or => "or",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleName {
    WeakenRight,
    WeakenLeft,
    ContractRight,
    ContractLeft,
    DAnd,
    DOr,
    DAndInv,
    DOrInv,
    PrimeMedial,
    ModuleSplit,
}

impl RuleName {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleName::WeakenRight => "w_r",
            RuleName::WeakenLeft => "w_l",
            RuleName::ContractRight => "c_r",
            RuleName::ContractLeft => "c_l",
            RuleName::DAnd => "d_and",
            RuleName::DOr => "d_or",
            RuleName::DAndInv => "d_and_inv",
            RuleName::DOrInv => "d_or_inv",
            RuleName::PrimeMedial => "prime_medial",
            RuleName::ModuleSplit => "module_split",
        }
    }

    pub fn parse(s: &str) -> Option<RuleName> {
        Some(match s {
            "w_r" => RuleName::WeakenRight,
            "w_l" => RuleName::WeakenLeft,
            "c_r" => RuleName::ContractRight,
            "c_l" => RuleName::ContractLeft,
            "d_and" => RuleName::DAnd,
            "d_or" => RuleName::DOr,
            "d_and_inv" => RuleName::DAndInv,
            "d_or_inv" => RuleName::DOrInv,
            "prime_medial" => RuleName::PrimeMedial,
            "module_split" => RuleName::ModuleSplit,
            _ => return None,
        })
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where and how a rule was applied; enough to re-derive the target from
/// the source exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    /// `w_r`: a fresh part appears beside the module, non-adjacent to it.
    Weaken {
        module: NodeSet,
        fresh: LabelledGraph,
    },
    /// `w_l`: the module splits into kept and dropped parts with all cross
    /// edges present; the dropped part is deleted.
    CoWeaken { module: NodeSet, keep: NodeSet },
    /// `c_r`: the module is two label-isomorphic, fully non-adjacent
    /// halves; the half outside `keep` is deleted.
    Contract { module: NodeSet, keep: NodeSet },
    /// `c_l`: the module is duplicated with all cross edges between the
    /// copies; `copies` maps each node to its fresh twin.
    CoContract {
        module: NodeSet,
        copies: BTreeMap<NodeId, NodeId>,
    },
    /// `d_and`/`d_or` (and inverses): duplicate the pivot module and split
    /// its neighbourhood (`d_and`) or non-neighbourhood (`d_or`) into the
    /// two parts, one per copy.
    Copy {
        pivot: NodeSet,
        part0: NodeSet,
        part1: NodeSet,
        copies: BTreeMap<NodeId, NodeId>,
    },
    /// `prime_medial`: two aligned prime-shaped module halves interleave
    /// slotwise.
    Medial {
        left: Vec<NodeSet>,
        right: Vec<NodeSet>,
    },
    /// `module_split`: a joined module pair separates along a split of its
    /// external neighbourhood.
    Split {
        m0: NodeSet,
        m1: NodeSet,
        r0: NodeSet,
        r1: NodeSet,
    },
}

/// One checked rewrite: rule, location, and the full graphs either side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleInstance {
    pub rule: RuleName,
    pub location: Location,
    pub source: LabelledGraph,
    pub target: LabelledGraph,
}

/// A sequence of graphs linked by rule instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub initial: LabelledGraph,
    pub steps: Vec<RuleInstance>,
}

impl Derivation {
    pub fn identity(g: LabelledGraph) -> Derivation {
        Derivation {
            initial: g,
            steps: Vec::new(),
        }
    }

    pub fn final_graph(&self) -> &LabelledGraph {
        self.steps
            .last()
            .map(|s| &s.target)
            .unwrap_or(&self.initial)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

fn module_or_err(g: &LabelledGraph, m: &NodeSet, rule: &str) -> Result<()> {
    if m.is_empty() {
        return Err(Error::input(format!("{rule}: module is empty")));
    }
    if !g.is_module(m)? {
        return Err(Error::input(format!(
            "{rule}: {{{}}} is not a module",
            ids(m)
        )));
    }
    Ok(())
}

fn ids(s: &NodeSet) -> String {
    s.iter()
        .map(NodeId::as_str)
        .collect::<Vec<_>>()
        .join(",")
}

fn all_cross_edges(g: &LabelledGraph, a: &NodeSet, b: &NodeSet) -> bool {
    a.iter().all(|u| b.iter().all(|v| g.has_edge(u, v)))
}

fn no_cross_edges(g: &LabelledGraph, a: &NodeSet, b: &NodeSet) -> bool {
    a.iter().all(|u| b.iter().all(|v| !g.has_edge(u, v)))
}

/// Picks a fresh id `base~k` not used in `used`.
fn fresh_id(base: &NodeId, used: &BTreeSet<NodeId>) -> NodeId {
    for k in 1.. {
        let candidate = NodeId::new(format!("{base}~{k}"));
        if !used.contains(&candidate) {
            return candidate;
        }
    }
    unreachable!()
}

/// Fresh twin ids for every node of `set`.
fn fresh_copies(g: &LabelledGraph, set: &NodeSet) -> BTreeMap<NodeId, NodeId> {
    let mut used: BTreeSet<NodeId> = g.nodes().cloned().collect();
    let mut out = BTreeMap::new();
    for v in set {
        let id = fresh_id(v, &used);
        used.insert(id.clone());
        out.insert(v.clone(), id);
    }
    out
}

fn rebuild(
    g: &LabelledGraph,
    add_nodes: Vec<(NodeId, String)>,
    remove_nodes: &NodeSet,
    add_edges: Vec<(NodeId, NodeId)>,
    remove_edges: &BTreeSet<(NodeId, NodeId)>,
) -> Result<LabelledGraph> {
    let norm = |u: &NodeId, v: &NodeId| {
        if u <= v {
            (u.clone(), v.clone())
        } else {
            (v.clone(), u.clone())
        }
    };
    let removed: BTreeSet<(NodeId, NodeId)> =
        remove_edges.iter().map(|(u, v)| norm(u, v)).collect();
    let mut nodes: Vec<(NodeId, String)> = g
        .nodes()
        .filter(|v| !remove_nodes.contains(*v))
        .map(|v| (v.clone(), g.label(v).unwrap().to_string()))
        .collect();
    nodes.extend(add_nodes);
    let mut edges: Vec<(NodeId, NodeId)> = g
        .edges()
        .filter(|(u, v)| {
            !remove_nodes.contains(u)
                && !remove_nodes.contains(v)
                && !removed.contains(&norm(u, v))
        })
        .cloned()
        .collect();
    edges.extend(add_edges);
    LabelledGraph::new(nodes, edges)
}

/// `w_r`: replace module `M` by `M ∨ fresh` — the fresh part is added with
/// no edges to `M` and with `M`'s external adjacencies.
pub fn apply_weaken_right(
    g: &LabelledGraph,
    module: &NodeSet,
    fresh: &LabelledGraph,
) -> Result<LabelledGraph> {
    module_or_err(g, module, "w_r")?;
    if fresh.is_empty() {
        return Err(Error::input("w_r: fresh part is empty"));
    }
    for v in fresh.nodes() {
        if g.contains_node(v) {
            return Err(Error::input(format!(
                "w_r: fresh node `{v}` already exists"
            )));
        }
    }
    let outside = g.module_neighbourhood(module);
    let add_nodes = fresh
        .nodes()
        .map(|v| (v.clone(), fresh.label(v).unwrap().to_string()))
        .collect();
    let mut add_edges: Vec<(NodeId, NodeId)> = fresh.edges().cloned().collect();
    for v in fresh.nodes() {
        for z in &outside {
            add_edges.push((v.clone(), z.clone()));
        }
    }
    rebuild(g, add_nodes, &NodeSet::new(), add_edges, &BTreeSet::new())
}

/// `w_l`: the module splits as `keep ⊔ drop` with every cross pair an
/// edge; the dropped part is deleted.
pub fn apply_weaken_left(
    g: &LabelledGraph,
    module: &NodeSet,
    keep: &NodeSet,
) -> Result<LabelledGraph> {
    module_or_err(g, module, "w_l")?;
    if !keep.is_subset(module) || keep.is_empty() {
        return Err(Error::input(
            "w_l: keep must be a nonempty subset of the module",
        ));
    }
    let drop: NodeSet = module.difference(keep).cloned().collect();
    if drop.is_empty() {
        return Err(Error::input("w_l: nothing to drop"));
    }
    if !all_cross_edges(g, keep, &drop) {
        return Err(Error::input(
            "w_l: kept and dropped parts are not fully adjacent",
        ));
    }
    rebuild(g, Vec::new(), &drop, Vec::new(), &BTreeSet::new())
}

/// `c_r`: the module is two fully non-adjacent, label-isomorphic halves;
/// the half outside `keep` is deleted.
pub fn apply_contract_right(
    g: &LabelledGraph,
    module: &NodeSet,
    keep: &NodeSet,
) -> Result<LabelledGraph> {
    module_or_err(g, module, "c_r")?;
    if !keep.is_subset(module) || keep.is_empty() {
        return Err(Error::input(
            "c_r: keep must be a nonempty subset of the module",
        ));
    }
    let drop: NodeSet = module.difference(keep).cloned().collect();
    if drop.is_empty() {
        return Err(Error::input("c_r: nothing to contract"));
    }
    if !no_cross_edges(g, keep, &drop) {
        return Err(Error::input("c_r: the two halves must be non-adjacent"));
    }
    let kept = g.induced_subgraph(keep)?;
    let dropped = g.induced_subgraph(&drop)?;
    if !kept.is_label_isomorphic(&dropped) {
        return Err(Error::input("c_r: halves are not label-isomorphic"));
    }
    rebuild(g, Vec::new(), &drop, Vec::new(), &BTreeSet::new())
}

/// `c_l`: duplicate the module, joining original and copy with all cross
/// edges; the copy keeps the module's external adjacencies.
pub fn apply_contract_left(
    g: &LabelledGraph,
    module: &NodeSet,
    copies: &BTreeMap<NodeId, NodeId>,
) -> Result<LabelledGraph> {
    module_or_err(g, module, "c_l")?;
    check_copies(g, module, copies, "c_l")?;
    let outside = g.module_neighbourhood(module);
    let add_nodes: Vec<(NodeId, String)> = module
        .iter()
        .map(|v| (copies[v].clone(), g.label(v).unwrap().to_string()))
        .collect();
    let mut add_edges = mirrored_internal_edges(g, module, copies);
    for v in module {
        for w in module {
            add_edges.push((v.clone(), copies[w].clone()));
        }
    }
    for v in module {
        for z in &outside {
            add_edges.push((copies[v].clone(), z.clone()));
        }
    }
    rebuild(g, add_nodes, &NodeSet::new(), add_edges, &BTreeSet::new())
}

fn check_copies(
    g: &LabelledGraph,
    module: &NodeSet,
    copies: &BTreeMap<NodeId, NodeId>,
    rule: &str,
) -> Result<()> {
    if copies.keys().cloned().collect::<NodeSet>() != *module {
        return Err(Error::input(format!(
            "{rule}: copy map must cover exactly the module"
        )));
    }
    let mut seen = NodeSet::new();
    for c in copies.values() {
        if g.contains_node(c) {
            return Err(Error::input(format!(
                "{rule}: copy id `{c}` already exists"
            )));
        }
        if !seen.insert(c.clone()) {
            return Err(Error::input(format!("{rule}: duplicate copy id `{c}`")));
        }
    }
    Ok(())
}

fn mirrored_internal_edges(
    g: &LabelledGraph,
    module: &NodeSet,
    copies: &BTreeMap<NodeId, NodeId>,
) -> Vec<(NodeId, NodeId)> {
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        if module.contains(u) && module.contains(v) {
            out.push((copies[u].clone(), copies[v].clone()));
        }
    }
    out
}

/// `d_and` with a module pivot: the pivot is duplicated; the original keeps
/// the neighbours in `part0`, the copy gets those in `part1`, the copies
/// are non-adjacent, and the two parts must be fully non-adjacent to each
/// other. Preserves maximal cliques up to labels.
pub fn apply_d_and_module(
    g: &LabelledGraph,
    pivot: &NodeSet,
    part0: &NodeSet,
    part1: &NodeSet,
    copies: &BTreeMap<NodeId, NodeId>,
) -> Result<LabelledGraph> {
    apply_copy_rule(g, pivot, part0, part1, copies, Flavor::And)
}

/// `d_or` with a module pivot: dual to [`apply_d_and_module`] on the
/// non-neighbourhood, with the parts fully adjacent and the copies joined.
/// Preserves maximal stable sets up to labels.
pub fn apply_d_or_module(
    g: &LabelledGraph,
    pivot: &NodeSet,
    part0: &NodeSet,
    part1: &NodeSet,
    copies: &BTreeMap<NodeId, NodeId>,
) -> Result<LabelledGraph> {
    apply_copy_rule(g, pivot, part0, part1, copies, Flavor::Or)
}

/// Atomic `d_and` on a single pivot node, with fresh copy ids chosen
/// automatically.
pub fn apply_d_and(
    g: &LabelledGraph,
    pivot: &NodeId,
    r0: &NodeSet,
    r1: &NodeSet,
) -> Result<LabelledGraph> {
    let set: NodeSet = [pivot.clone()].into_iter().collect();
    let copies = fresh_copies(g, &set);
    apply_copy_rule(g, &set, r0, r1, &copies, Flavor::And)
}

/// Atomic `d_or` on a single pivot node, with fresh copy ids chosen
/// automatically.
pub fn apply_d_or(
    g: &LabelledGraph,
    pivot: &NodeId,
    g0: &NodeSet,
    g1: &NodeSet,
) -> Result<LabelledGraph> {
    let set: NodeSet = [pivot.clone()].into_iter().collect();
    let copies = fresh_copies(g, &set);
    apply_copy_rule(g, &set, g0, g1, &copies, Flavor::Or)
}

fn apply_copy_rule(
    g: &LabelledGraph,
    pivot: &NodeSet,
    part0: &NodeSet,
    part1: &NodeSet,
    copies: &BTreeMap<NodeId, NodeId>,
    flavor: Flavor,
) -> Result<LabelledGraph> {
    let rule = match flavor {
        Flavor::And => "d_and",
        Flavor::Or => "d_or",
    };
    module_or_err(g, pivot, rule)?;
    check_copies(g, pivot, copies, rule)?;
    if !part0.is_disjoint(part1) {
        return Err(Error::input(format!("{rule}: parts overlap")));
    }
    let expected: NodeSet = match flavor {
        Flavor::And => g.module_neighbourhood(pivot),
        Flavor::Or => {
            let witness = pivot.iter().next().unwrap();
            g.nodes()
                .filter(|z| !pivot.contains(*z) && !g.has_edge(z, witness))
                .cloned()
                .collect()
        }
    };
    let union: NodeSet = part0.union(part1).cloned().collect();
    if union != expected {
        return Err(Error::input(format!(
            "{rule}: parts must partition the pivot's {}",
            match flavor {
                Flavor::And => "neighbourhood",
                Flavor::Or => "non-neighbourhood",
            }
        )));
    }
    if part0.is_empty() != part1.is_empty() {
        return Err(Error::input(format!(
            "{rule}: one part is empty but the other is not"
        )));
    }
    match flavor {
        Flavor::And if !no_cross_edges(g, part0, part1) => {
            return Err(Error::input(
                "d_and: the two parts must have no edges between them",
            ));
        }
        Flavor::Or if !all_cross_edges(g, part0, part1) => {
            return Err(Error::input(
                "d_or: the two parts must be fully adjacent to each other",
            ));
        }
        _ => {}
    }

    let add_nodes: Vec<(NodeId, String)> = pivot
        .iter()
        .map(|v| (copies[v].clone(), g.label(v).unwrap().to_string()))
        .collect();
    let mut add_edges = mirrored_internal_edges(g, pivot, copies);
    let mut remove_edges = BTreeSet::new();
    match flavor {
        Flavor::And => {
            // Original keeps part0; copy gets part1; copies non-adjacent.
            for v in pivot {
                for z in part1 {
                    remove_edges.insert((v.clone(), z.clone()));
                    add_edges.push((copies[v].clone(), z.clone()));
                }
            }
        }
        Flavor::Or => {
            // Original becomes adjacent to part1; copy is adjacent to
            // part0, to the pivot's neighbours, and to the original.
            let neighbours = g.module_neighbourhood(pivot);
            for v in pivot {
                for z in part1 {
                    add_edges.push((v.clone(), z.clone()));
                }
                for z in part0 {
                    add_edges.push((copies[v].clone(), z.clone()));
                }
                for z in &neighbours {
                    add_edges.push((copies[v].clone(), z.clone()));
                }
                for w in pivot {
                    add_edges.push((v.clone(), copies[w].clone()));
                }
            }
        }
    }
    rebuild(g, add_nodes, &NodeSet::new(), add_edges, &remove_edges)
}

/// `prime_medial`: two non-adjacent module halves, each shaped as the same
/// prime graph over aligned slots, merge into one module with the slots
/// interleaved (slot i of the result is the non-adjacent union of the two
/// old slot i's).
pub fn apply_prime_medial(
    g: &LabelledGraph,
    left: &[NodeSet],
    right: &[NodeSet],
) -> Result<LabelledGraph> {
    if left.len() != right.len() || left.len() < 2 {
        return Err(Error::input(
            "prime_medial: slot lists must align and have at least two slots",
        ));
    }
    let m0: NodeSet = left.iter().flatten().cloned().collect();
    let m1: NodeSet = right.iter().flatten().cloned().collect();
    if !m0.is_disjoint(&m1) {
        return Err(Error::input("prime_medial: halves overlap"));
    }
    if m0.len() != left.iter().map(NodeSet::len).sum::<usize>()
        || m1.len() != right.iter().map(NodeSet::len).sum::<usize>()
    {
        return Err(Error::input("prime_medial: slots overlap within a half"));
    }
    if left.iter().chain(right).any(NodeSet::is_empty) {
        return Err(Error::input("prime_medial: empty slot"));
    }
    let module: NodeSet = m0.union(&m1).cloned().collect();
    module_or_err(g, &module, "prime_medial")?;
    if !no_cross_edges(g, &m0, &m1) {
        return Err(Error::input("prime_medial: halves must be non-adjacent"));
    }
    let half0 = g.induced_subgraph(&m0)?;
    let half1 = g.induced_subgraph(&m1)?;
    for (slots, half) in [(left, &half0), (right, &half1)] {
        for s in slots {
            if !half.is_module(s)? {
                return Err(Error::input(format!(
                    "prime_medial: {{{}}} is not a module of its half",
                    ids(s)
                )));
            }
        }
    }
    // The halves must realise the same shape slot-for-slot, and the shape
    // must be prime (the K2 case is the classical medial rule).
    let slot_edge = |slots: &[NodeSet], i: usize, j: usize| {
        let u = slots[i].iter().next().unwrap();
        let v = slots[j].iter().next().unwrap();
        g.has_edge(u, v)
    };
    for i in 0..left.len() {
        for j in i + 1..left.len() {
            if slot_edge(left, i, j) != slot_edge(right, i, j) {
                return Err(Error::input(
                    "prime_medial: halves do not share the same prime shape",
                ));
            }
        }
    }
    let shape = half0.quotient(&left.to_vec())?;
    if !(shape.is_prime() || (shape.node_count() == 2 && shape.edge_count() == 1)) {
        return Err(Error::input(
            "prime_medial: the shared shape must be prime (or a single conjunction)",
        ));
    }

    let mut add_edges = Vec::new();
    for i in 0..left.len() {
        for j in 0..left.len() {
            if i != j && slot_edge(left, i.min(j), i.max(j)) {
                for u in &left[i] {
                    for v in &right[j] {
                        add_edges.push((u.clone(), v.clone()));
                    }
                }
            }
        }
    }
    rebuild(g, Vec::new(), &NodeSet::new(), add_edges, &BTreeSet::new())
}

/// `module_split`: a module that is the join of `m0` and `m1`, whose
/// external neighbourhood splits into mutually non-adjacent `r0` and `r1`,
/// separates: `m0` keeps `r0`, `m1` keeps `r1`, and the join edges go.
pub fn apply_module_split(
    g: &LabelledGraph,
    m0: &NodeSet,
    m1: &NodeSet,
    r0: &NodeSet,
    r1: &NodeSet,
) -> Result<LabelledGraph> {
    if m0.is_empty() || m1.is_empty() || !m0.is_disjoint(m1) {
        return Err(Error::input(
            "module_split: halves must be disjoint and nonempty",
        ));
    }
    let module: NodeSet = m0.union(m1).cloned().collect();
    module_or_err(g, &module, "module_split")?;
    if !all_cross_edges(g, m0, m1) {
        return Err(Error::input("module_split: halves must be fully adjacent"));
    }
    if r0.is_empty() || r1.is_empty() || !r0.is_disjoint(r1) {
        return Err(Error::input(
            "module_split: neighbourhood parts must be disjoint and nonempty",
        ));
    }
    let outside = g.module_neighbourhood(&module);
    if r0.union(r1).cloned().collect::<NodeSet>() != outside {
        return Err(Error::input(
            "module_split: parts must partition the module's neighbourhood",
        ));
    }
    if !no_cross_edges(g, r0, r1) {
        return Err(Error::input(
            "module_split: neighbourhood parts must be non-adjacent",
        ));
    }
    let mut remove_edges = BTreeSet::new();
    for u in m0 {
        for v in m1 {
            remove_edges.insert((u.clone(), v.clone()));
        }
        for z in r1 {
            remove_edges.insert((u.clone(), z.clone()));
        }
    }
    for u in m1 {
        for z in r0 {
            remove_edges.insert((u.clone(), z.clone()));
        }
    }
    rebuild(g, Vec::new(), &NodeSet::new(), Vec::new(), &remove_edges)
}

/// A graph is a DNF when its maximal cliques are pairwise disjoint.
pub fn is_dnf(g: &LabelledGraph) -> Result<bool> {
    Ok(intersecting_clique_pairs(g)? == 0)
}

/// A graph is a CNF when its maximal stable sets are pairwise disjoint.
pub fn is_cnf(g: &LabelledGraph) -> Result<bool> {
    is_dnf(&g.complement())
}

/// Number of intersecting pairs of maximal cliques: the termination metric
/// of `d_and` normalisation.
pub fn intersecting_clique_pairs(g: &LabelledGraph) -> Result<usize> {
    let mc = g.max_cliques()?;
    let mut count = 0;
    for (i, a) in mc.iter().enumerate() {
        for b in mc.iter().skip(i + 1) {
            if !a.is_disjoint(b) {
                count += 1;
            }
        }
    }
    Ok(count)
}

fn apply_at(g: &LabelledGraph, rule: RuleName, location: &Location) -> Result<LabelledGraph> {
    match (rule, location) {
        (RuleName::WeakenRight, Location::Weaken { module, fresh }) => {
            apply_weaken_right(g, module, fresh)
        }
        (RuleName::WeakenLeft, Location::CoWeaken { module, keep }) => {
            apply_weaken_left(g, module, keep)
        }
        (RuleName::ContractRight, Location::Contract { module, keep }) => {
            apply_contract_right(g, module, keep)
        }
        (RuleName::ContractLeft, Location::CoContract { module, copies }) => {
            apply_contract_left(g, module, copies)
        }
        (
            RuleName::DAnd,
            Location::Copy {
                pivot,
                part0,
                part1,
                copies,
            },
        ) => apply_copy_rule(g, pivot, part0, part1, copies, Flavor::And),
        (
            RuleName::DOr,
            Location::Copy {
                pivot,
                part0,
                part1,
                copies,
            },
        ) => apply_copy_rule(g, pivot, part0, part1, copies, Flavor::Or),
        (RuleName::PrimeMedial, Location::Medial { left, right }) => {
            apply_prime_medial(g, left, right)
        }
        (RuleName::ModuleSplit, Location::Split { m0, m1, r0, r1 }) => {
            apply_module_split(g, m0, m1, r0, r1)
        }
        (RuleName::DAndInv | RuleName::DOrInv, _) => Err(Error::input(
            "inverse rules are validated against their forward direction",
        )),
        _ => Err(Error::input("rule and location do not match")),
    }
}

fn step(current: &LabelledGraph, rule: RuleName, location: Location) -> Result<RuleInstance> {
    let target = apply_at(current, rule, &location)?;
    Ok(RuleInstance {
        rule,
        location,
        source: current.clone(),
        target,
    })
}

/// Outcome of checking a derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Ok,
    Failed { step: usize, reason: String },
}

impl CheckOutcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, CheckOutcome::Ok)
    }
}

/// Re-applies every rule instance and compares graphs exactly; inverse
/// steps are checked by re-applying the forward rule to the step's target.
/// With a flavor, additionally verifies per-step entailment soundness.
pub fn check_derivation(d: &Derivation, flavor: Option<Flavor>) -> Result<CheckOutcome> {
    let mut current = &d.initial;
    for (i, inst) in d.steps.iter().enumerate() {
        if inst.source != *current {
            return Ok(CheckOutcome::Failed {
                step: i,
                reason: "step source does not match the previous graph".to_string(),
            });
        }
        let rederived = match inst.rule {
            RuleName::DAndInv => {
                apply_forward_of_inverse(&inst.target, &inst.location, Flavor::And)
            }
            RuleName::DOrInv => apply_forward_of_inverse(&inst.target, &inst.location, Flavor::Or),
            rule => apply_at(&inst.source, rule, &inst.location),
        };
        match rederived {
            Ok(expected) => {
                let matches = match inst.rule {
                    // For inverse rules, forward application of the target
                    // must reproduce the source.
                    RuleName::DAndInv | RuleName::DOrInv => expected == inst.source,
                    _ => expected == inst.target,
                };
                if !matches {
                    return Ok(CheckOutcome::Failed {
                        step: i,
                        reason: "re-applying the rule gives a different graph".to_string(),
                    });
                }
            }
            Err(e) => {
                return Ok(CheckOutcome::Failed {
                    step: i,
                    reason: format!("rule does not apply: {e}"),
                });
            }
        }
        if let Some(fl) = flavor {
            let sound = match fl {
                Flavor::And => entails_and(&inst.source, &inst.target)?,
                Flavor::Or => entails_or(&inst.source, &inst.target)?,
            };
            if !sound {
                return Ok(CheckOutcome::Failed {
                    step: i,
                    reason: format!("step is not sound for the {fl} entailment"),
                });
            }
        }
        current = &inst.target;
    }
    Ok(CheckOutcome::Ok)
}

fn apply_forward_of_inverse(
    target: &LabelledGraph,
    location: &Location,
    flavor: Flavor,
) -> Result<LabelledGraph> {
    match location {
        Location::Copy {
            pivot,
            part0,
            part1,
            copies,
        } => apply_copy_rule(target, pivot, part0, part1, copies, flavor),
        _ => Err(Error::input("inverse rule with a non-copy location")),
    }
}

const NORMALISE_STEP_BUDGET: usize = 4096;
const NORMALISE_NODE_BUDGET: usize = 120;

/// Rewrites a graph to a DNF by repeated `d_and` steps, preserving the
/// label sets of maximal cliques at every step. Returns the normal form and
/// the derivation. Errors with a resource message when no clique-preserving
/// redex exists (some prime graphs have none) or a budget is exceeded.
pub fn to_dnf(g: &LabelledGraph) -> Result<(LabelledGraph, Derivation)> {
    normalise(g, Flavor::And)
}

/// Dual of [`to_dnf`]: rewrites to a CNF by `d_or` steps, preserving the
/// label sets of maximal stable sets.
pub fn to_cnf(g: &LabelledGraph) -> Result<(LabelledGraph, Derivation)> {
    normalise(g, Flavor::Or)
}

fn normalise(g: &LabelledGraph, flavor: Flavor) -> Result<(LabelledGraph, Derivation)> {
    let mut derivation = Derivation::identity(g.clone());
    let mut current = g.clone();
    for _ in 0..NORMALISE_STEP_BUDGET {
        let done = match flavor {
            Flavor::And => is_dnf(&current)?,
            Flavor::Or => is_cnf(&current)?,
        };
        if done {
            return Ok((current, derivation));
        }
        if current.node_count() > NORMALISE_NODE_BUDGET {
            return Err(Error::resource(format!(
                "normalisation exceeded {NORMALISE_NODE_BUDGET} nodes"
            )));
        }
        let redex = match flavor {
            Flavor::And => find_copy_redex(&current),
            // A d_or redex of g is a d_and redex of its complement.
            Flavor::Or => find_copy_redex(&current.complement()),
        }?;
        let Some((pivot, part0, part1)) = redex else {
            return Err(Error::resource(format!(
                "normalisation is stuck: no {} redex preserves the computed relation",
                match flavor {
                    Flavor::And => "d_and",
                    Flavor::Or => "d_or",
                }
            )));
        };
        let copies = fresh_copies(&current, &pivot);
        let rule = match flavor {
            Flavor::And => RuleName::DAnd,
            Flavor::Or => RuleName::DOr,
        };
        let inst = step(
            &current,
            rule,
            Location::Copy {
                pivot,
                part0,
                part1,
                copies,
            },
        )?;
        current = inst.target.clone();
        derivation.steps.push(inst);
    }
    Err(Error::resource(format!(
        "normalisation exceeded {NORMALISE_STEP_BUDGET} steps"
    )))
}

/// Finds a `d_and` redex: a proper module pivot whose neighbourhood splits
/// into two mutually non-adjacent nonempty parts. Prefers redexes that
/// strictly reduce the number of intersecting maximal-clique pairs;
/// candidates are tried smallest first.
fn find_copy_redex(g: &LabelledGraph) -> Result<Option<(NodeSet, NodeSet, NodeSet)>> {
    let cliques = g.max_cliques()?;
    let mut candidates: Vec<NodeSet> = g
        .nodes()
        .map(|v| [v.clone()].into_iter().collect())
        .collect();
    if !g.is_empty() {
        let tree = decompose(g)?;
        collect_module_candidates(&tree, &mut candidates);
    }
    candidates.retain(|m| !m.is_empty() && m.len() < g.node_count());
    candidates.sort_by(|a, b| (a.len(), g.canonical_least(a)).cmp(&(b.len(), g.canonical_least(b))));
    candidates.dedup();

    let mut fallback = None;
    for pivot in candidates {
        if !g.is_module(&pivot)? {
            continue;
        }
        let neighbourhood = g.module_neighbourhood(&pivot);
        if neighbourhood.is_empty() {
            continue;
        }
        let induced = g.induced_subgraph(&neighbourhood)?;
        let components = induced.connected_components();
        if components.len() < 2 {
            continue;
        }
        let least = g.canonical_least(&neighbourhood).unwrap();
        let part0 = components
            .iter()
            .find(|c| c.contains(&least))
            .unwrap()
            .clone();
        let part1: NodeSet = neighbourhood.difference(&part0).cloned().collect();
        if copy_redex_makes_progress(g, &cliques, &pivot, &part0) {
            return Ok(Some((pivot, part0, part1)));
        }
        if fallback.is_none() {
            fallback = Some((pivot, part0, part1));
        }
    }
    Ok(fallback)
}

fn collect_module_candidates(tree: &DecTree, out: &mut Vec<NodeSet>) {
    match tree {
        DecTree::Leaf { .. } => {}
        DecTree::Or { children, .. } | DecTree::Prime { children, .. } => {
            for c in children {
                out.push(c.cover());
                collect_module_candidates(c, out);
            }
        }
        DecTree::And {
            cover, children, ..
        } => {
            for c in children {
                out.push(c.cover());
                // The union of all other co-components is also a module;
                // it is the pivot that distributes a conjunction.
                let rest: NodeSet = cover.difference(&c.cover()).cloned().collect();
                out.push(rest);
                collect_module_candidates(c, out);
            }
        }
    }
}

/// True when splitting `pivot` along `part0` separates at least one pair
/// of intersecting maximal cliques.
fn copy_redex_makes_progress(
    g: &LabelledGraph,
    cliques: &[NodeSet],
    pivot: &NodeSet,
    part0: &NodeSet,
) -> bool {
    let through: Vec<(&NodeSet, bool)> = cliques
        .iter()
        .filter(|s| !s.is_disjoint(pivot))
        .map(|s| {
            let outside_in_part0 = s
                .iter()
                .filter(|v| !pivot.contains(*v))
                .all(|v| part0.contains(v));
            (s, outside_in_part0)
        })
        .collect();
    let _ = g;
    for (i, (s, side_s)) in through.iter().enumerate() {
        for (t, side_t) in through.iter().skip(i + 1) {
            if side_s != side_t && !s.is_disjoint(t) {
                return true;
            }
        }
    }
    false
}

/// Derives one DNF from another that it entails conjunctively, using only
/// the structural rules: terms are reshaped with `c_l`/`w_l`, merged with
/// `c_r`, renamed through fresh copies, and missing terms added with `w_r`.
/// The derivation ends at `b` exactly (same ids).
pub fn derive_dnf_to_dnf(a: &LabelledGraph, b: &LabelledGraph) -> Result<Derivation> {
    if !is_dnf(a)? || !is_dnf(b)? {
        return Err(Error::input("both endpoints must be DNFs"));
    }
    if !entails_and(a, b)? {
        return Err(Error::input("the source DNF does not entail the target"));
    }
    if a == b {
        return Ok(Derivation::identity(a.clone()));
    }
    if a.is_empty() {
        return Err(Error::input("cannot derive from the empty graph"));
    }
    let mut derivation = Derivation::identity(a.clone());
    let mut current = a.clone();
    let a_terms = current.connected_components();
    let b_terms = b.connected_components();

    // Term map: each source term to the least target term it contains.
    let mut image: Vec<usize> = Vec::new();
    for t in &a_terms {
        let lt = current.label_set(t)?;
        let j = b_terms
            .iter()
            .position(|u| b.label_set(u).map(|lu| lu.is_subset(&lt)).unwrap_or(false))
            .expect("entailment guarantees a target term inside every source term");
        image.push(j);
    }

    // Phase 1: reshape every source term to the label multiset of its
    // target term (duplicate with c_l, then trim with w_l).
    let mut terms = a_terms.clone();
    for (i, j) in image.iter().enumerate() {
        let target_counts = label_counts(b, &b_terms[*j])?;
        let term = terms[i].clone();
        let reshaped = reshape_term(&mut current, &mut derivation, &term, &target_counts)?;
        terms[i] = reshaped;
    }

    // Phase 2: merge terms that map to the same target term with c_r.
    let mut survivors: BTreeMap<usize, NodeSet> = BTreeMap::new();
    for (i, j) in image.iter().enumerate() {
        match survivors.get(j) {
            None => {
                survivors.insert(*j, terms[i].clone());
            }
            Some(kept) => {
                let module: NodeSet = kept.union(&terms[i]).cloned().collect();
                let inst = step(
                    &current,
                    RuleName::ContractRight,
                    Location::Contract {
                        module,
                        keep: kept.clone(),
                    },
                )?;
                current = inst.target.clone();
                derivation.steps.push(inst);
            }
        }
    }

    // Phase 3: rename survivors to the exact target ids, hopping through
    // fresh ids so partially overlapping id sets cannot collide.
    for (j, term) in survivors.clone() {
        if current.induced_subgraph(&term)? == b.induced_subgraph(&b_terms[j])? {
            continue;
        }
        let temp = rename_term(&mut current, &mut derivation, &term, None)?;
        survivors.insert(j, temp);
    }
    for (j, term) in survivors.clone() {
        let target_part = b.induced_subgraph(&b_terms[j])?;
        if current.induced_subgraph(&term)? == target_part {
            continue;
        }
        let renamed = rename_term(&mut current, &mut derivation, &term, Some(&target_part))?;
        survivors.insert(j, renamed);
    }

    // Phase 4: add target terms nothing maps onto, with their exact ids.
    for (j, t) in b_terms.iter().enumerate() {
        if survivors.contains_key(&j) {
            continue;
        }
        let anchor = current.connected_components().into_iter().next().unwrap();
        let inst = step(
            &current,
            RuleName::WeakenRight,
            Location::Weaken {
                module: anchor,
                fresh: b.induced_subgraph(t)?,
            },
        )?;
        current = inst.target.clone();
        derivation.steps.push(inst);
    }

    if &current != b {
        return Err(Error::input(
            "internal error: structural derivation missed the target",
        ));
    }
    Ok(derivation)
}

fn label_counts(g: &LabelledGraph, set: &NodeSet) -> Result<BTreeMap<String, usize>> {
    let mut out = BTreeMap::new();
    for v in set {
        let l = g
            .label(v)
            .ok_or_else(|| Error::input(format!("unknown node `{v}`")))?;
        *out.entry(l.to_string()).or_insert(0) += 1;
    }
    Ok(out)
}

/// Rewrites one clique term in place until its label multiset equals
/// `target_counts`; returns the term's new node set.
fn reshape_term(
    current: &mut LabelledGraph,
    derivation: &mut Derivation,
    term: &NodeSet,
    target_counts: &BTreeMap<String, usize>,
) -> Result<NodeSet> {
    let mut term = term.clone();
    // Duplicate nodes whose label is under-represented.
    loop {
        let counts = label_counts(current, &term)?;
        let deficient = target_counts
            .iter()
            .find(|(l, want)| counts.get(*l).copied().unwrap_or(0) < **want);
        let Some((label, _)) = deficient else { break };
        let v = term
            .iter()
            .find(|v| current.label(v) == Some(label))
            .expect("entailment means the term covers the target labels")
            .clone();
        let module: NodeSet = [v.clone()].into_iter().collect();
        let copies = fresh_copies(current, &module);
        let copy_id = copies[&v].clone();
        let inst = step(
            current,
            RuleName::ContractLeft,
            Location::CoContract { module, copies },
        )?;
        *current = inst.target.clone();
        derivation.steps.push(inst);
        term.insert(copy_id);
    }
    // Trim surplus nodes, keeping canonically least ones.
    let mut keep = NodeSet::new();
    let mut budget: BTreeMap<String, usize> = target_counts.clone();
    for v in current.canonical_least_order(&term) {
        let l = current.label(&v).unwrap().to_string();
        if budget.get(&l).copied().unwrap_or(0) > 0 {
            *budget.get_mut(&l).unwrap() -= 1;
            keep.insert(v);
        }
    }
    if keep != term {
        let inst = step(
            current,
            RuleName::WeakenLeft,
            Location::CoWeaken {
                module: term.clone(),
                keep: keep.clone(),
            },
        )?;
        *current = inst.target.clone();
        derivation.steps.push(inst);
    }
    Ok(keep)
}

/// Renames a whole term by duplicating it with `c_l` and projecting onto
/// the copy with `w_l`. With `target`, the copy uses the target's exact
/// ids (which must be free); otherwise fresh decorated ids are chosen.
/// Returns the new term node set.
fn rename_term(
    current: &mut LabelledGraph,
    derivation: &mut Derivation,
    term: &NodeSet,
    target: Option<&LabelledGraph>,
) -> Result<NodeSet> {
    let copies: BTreeMap<NodeId, NodeId> = match target {
        None => fresh_copies(current, term),
        Some(t) => {
            // Match term nodes to target nodes label-for-label, canonical
            // order on both sides.
            let term_nodes = current.canonical_least_order(term);
            let target_nodes = t.canonical_nodes();
            if term_nodes.len() != target_nodes.len() {
                return Err(Error::input("rename: size mismatch"));
            }
            term_nodes.into_iter().zip(target_nodes).collect()
        }
    };
    let inst = step(
        current,
        RuleName::ContractLeft,
        Location::CoContract {
            module: term.clone(),
            copies: copies.clone(),
        },
    )?;
    *current = inst.target.clone();
    derivation.steps.push(inst);
    let new_term: NodeSet = copies.values().cloned().collect();
    let module: NodeSet = term.union(&new_term).cloned().collect();
    let inst = step(
        current,
        RuleName::WeakenLeft,
        Location::CoWeaken {
            module,
            keep: new_term.clone(),
        },
    )?;
    *current = inst.target.clone();
    derivation.steps.push(inst);
    Ok(new_term)
}

/// Dual of [`derive_dnf_to_dnf`] for CNFs under the disjunctive
/// entailment, built by complement transport: the structural derivation on
/// the complements is reversed and complemented, with the rule names
/// swapped under duality (`w_r`/`w_l` and `c_r`/`c_l`).
pub fn derive_cnf_to_cnf(a: &LabelledGraph, b: &LabelledGraph) -> Result<Derivation> {
    if !is_cnf(a)? || !is_cnf(b)? {
        return Err(Error::input("both endpoints must be CNFs"));
    }
    if !entails_or(a, b)? {
        return Err(Error::input("the source CNF does not entail the target"));
    }
    if a == b {
        return Ok(Derivation::identity(a.clone()));
    }
    if b.is_empty() {
        return Err(Error::input("cannot derive into the empty graph"));
    }
    // b-bar conjunctively entails a-bar; derive that and dualise.
    let forward = derive_dnf_to_dnf(&b.complement(), &a.complement())?;
    let mut derivation = Derivation::identity(a.clone());
    for inst in forward.steps.iter().rev() {
        let dual = dualise_structural_step(inst)?;
        debug_assert_eq!(&dual.source, derivation.final_graph());
        derivation.steps.push(dual);
    }
    debug_assert_eq!(derivation.final_graph(), b);
    Ok(derivation)
}

/// Complement-and-reverse a structural step: `X -> Y` on complements
/// becomes `complement(Y) -> complement(X)`, with `w_r` turning into `w_l`,
/// `w_l` into `w_r`, `c_r` into `c_l` and `c_l` into `c_r`.
fn dualise_structural_step(inst: &RuleInstance) -> Result<RuleInstance> {
    let source = inst.target.complement();
    let target = inst.source.complement();
    let (rule, location) = match (&inst.rule, &inst.location) {
        (RuleName::WeakenRight, Location::Weaken { module, fresh }) => {
            // Adding a green part on complements is deleting a red part
            // here: keep the original module.
            let combined: NodeSet = module.union(&fresh.node_set()).cloned().collect();
            (
                RuleName::WeakenLeft,
                Location::CoWeaken {
                    module: combined,
                    keep: module.clone(),
                },
            )
        }
        (RuleName::WeakenLeft, Location::CoWeaken { module, keep }) => {
            let dropped: NodeSet = module.difference(keep).cloned().collect();
            (
                RuleName::WeakenRight,
                Location::Weaken {
                    module: keep.clone(),
                    fresh: target.induced_subgraph(&dropped)?,
                },
            )
        }
        (RuleName::ContractRight, Location::Contract { module, keep }) => {
            let dropped: NodeSet = module.difference(keep).cloned().collect();
            let copies = match_halves(&target, keep, &dropped)?;
            (
                RuleName::ContractLeft,
                Location::CoContract {
                    module: keep.clone(),
                    copies,
                },
            )
        }
        (RuleName::ContractLeft, Location::CoContract { module, copies }) => {
            let combined: NodeSet = module.iter().chain(copies.values()).cloned().collect();
            (
                RuleName::ContractRight,
                Location::Contract {
                    module: combined,
                    keep: module.clone(),
                },
            )
        }
        _ => {
            return Err(Error::input(
                "only structural steps can be dualised by complement",
            ))
        }
    };
    Ok(RuleInstance {
        rule,
        location,
        source,
        target,
    })
}

/// A label-preserving pairing of two module halves by canonical order,
/// used when a `c_r` step is replayed as `c_l` on the dual side.
fn match_halves(
    g: &LabelledGraph,
    keep: &NodeSet,
    dropped: &NodeSet,
) -> Result<BTreeMap<NodeId, NodeId>> {
    let keep_sorted = g.canonical_least_order(keep);
    let drop_sorted = g.canonical_least_order(dropped);
    if keep_sorted.len() != drop_sorted.len() {
        return Err(Error::input("halves have different sizes"));
    }
    Ok(keep_sorted.into_iter().zip(drop_sorted).collect())
}

/// The constructive completeness procedure: normalise both sides, bridge
/// the normal forms with structural rules, and replay the target's
/// normalisation backwards as inverse split steps. The result is a
/// derivation from `g` to `h`, sound for the requested flavor, that
/// [`check_derivation`] accepts.
pub fn derive_entailment(
    g: &LabelledGraph,
    h: &LabelledGraph,
    flavor: Flavor,
) -> Result<Derivation> {
    let holds = match flavor {
        Flavor::And => entails_and(g, h)?,
        Flavor::Or => entails_or(g, h)?,
    };
    if !holds {
        return Err(Error::input(format!(
            "the {flavor} entailment does not hold between the endpoints"
        )));
    }
    if g == h {
        return Ok(Derivation::identity(g.clone()));
    }
    let (na, da) = match flavor {
        Flavor::And => to_dnf(g)?,
        Flavor::Or => to_cnf(g)?,
    };
    let (nb, db) = match flavor {
        Flavor::And => to_dnf(h)?,
        Flavor::Or => to_cnf(h)?,
    };
    let mid = match flavor {
        Flavor::And => derive_dnf_to_dnf(&na, &nb)?,
        Flavor::Or => derive_cnf_to_cnf(&na, &nb)?,
    };
    let mut derivation = Derivation::identity(g.clone());
    derivation.steps.extend(da.steps);
    derivation.steps.extend(mid.steps);
    let inverse_rule = match flavor {
        Flavor::And => RuleName::DAndInv,
        Flavor::Or => RuleName::DOrInv,
    };
    for inst in db.steps.into_iter().rev() {
        derivation.steps.push(RuleInstance {
            rule: inverse_rule,
            location: inst.location,
            source: inst.target,
            target: inst.source,
        });
    }
    debug_assert_eq!(derivation.final_graph(), h);
    Ok(derivation)
}

impl LabelledGraph {
    /// Nodes of `set` in canonical `(label, id)` order.
    pub(crate) fn canonical_least_order(&self, set: &NodeSet) -> Vec<NodeId> {
        let mut nodes: Vec<NodeId> = set.iter().cloned().collect();
        nodes.sort_by(|a, b| (self.label(a).unwrap(), a).cmp(&(self.label(b).unwrap(), b)));
        nodes
    }
}

// --- Derivation text format -------------------------------------------
//
// Numbered blocks: `graph 0` up to `end` holds the initial graph in the
// graph text format, then for each step a `step <n> <rule> <key>=<value>`
// line followed by `graph <n>` ... `end`. Node ids and labels in these
// files must avoid the separator characters `,`, `:`, `/`, `|` and `=`.

const RESERVED: &[char] = &[',', ':', '/', '|', '='];

fn check_token(s: &str) -> Result<()> {
    if s.contains(RESERVED) {
        return Err(Error::input(format!(
            "`{s}` contains a character reserved by the derivation format"
        )));
    }
    Ok(())
}

fn write_set(out: &mut String, key: &str, set: &NodeSet) -> Result<()> {
    out.push(' ');
    out.push_str(key);
    out.push('=');
    for (i, v) in set.iter().enumerate() {
        check_token(v.as_str())?;
        if i > 0 {
            out.push(',');
        }
        out.push_str(v.as_str());
    }
    Ok(())
}

fn write_copies(out: &mut String, copies: &BTreeMap<NodeId, NodeId>) -> Result<()> {
    out.push_str(" copies=");
    for (i, (from, to)) in copies.iter().enumerate() {
        check_token(from.as_str())?;
        check_token(to.as_str())?;
        if i > 0 {
            out.push(',');
        }
        out.push_str(from.as_str());
        out.push(':');
        out.push_str(to.as_str());
    }
    Ok(())
}

/// Serialises a derivation into the numbered-block text format.
pub fn derivation_to_text(d: &Derivation) -> Result<String> {
    let mut out = String::new();
    out.push_str("# bgl derivation\n");
    out.push_str("graph 0\n");
    out.push_str(&d.initial.to_string());
    out.push_str("end\n");
    for (i, inst) in d.steps.iter().enumerate() {
        let mut line = format!("step {} {}", i + 1, inst.rule);
        match &inst.location {
            Location::Weaken { module, fresh } => {
                write_set(&mut line, "module", module)?;
                line.push_str(" fresh-nodes=");
                for (k, v) in fresh.canonical_nodes().iter().enumerate() {
                    let label = fresh.label(v).unwrap();
                    check_token(v.as_str())?;
                    check_token(label)?;
                    if k > 0 {
                        line.push(',');
                    }
                    line.push_str(&format!("{v}:{label}"));
                }
                line.push_str(" fresh-edges=");
                for (k, (u, v)) in fresh.edges().enumerate() {
                    if k > 0 {
                        line.push(',');
                    }
                    line.push_str(&format!("{u}/{v}"));
                }
            }
            Location::CoWeaken { module, keep } | Location::Contract { module, keep } => {
                write_set(&mut line, "module", module)?;
                write_set(&mut line, "keep", keep)?;
            }
            Location::CoContract { module, copies } => {
                write_set(&mut line, "module", module)?;
                write_copies(&mut line, copies)?;
            }
            Location::Copy {
                pivot,
                part0,
                part1,
                copies,
            } => {
                write_set(&mut line, "pivot", pivot)?;
                write_set(&mut line, "r0", part0)?;
                write_set(&mut line, "r1", part1)?;
                write_copies(&mut line, copies)?;
            }
            Location::Medial { left, right } => {
                for (key, slots) in [("left", left), ("right", right)] {
                    line.push(' ');
                    line.push_str(key);
                    line.push('=');
                    for (k, slot) in slots.iter().enumerate() {
                        if k > 0 {
                            line.push('|');
                        }
                        for (j, v) in slot.iter().enumerate() {
                            check_token(v.as_str())?;
                            if j > 0 {
                                line.push(',');
                            }
                            line.push_str(v.as_str());
                        }
                    }
                }
            }
            Location::Split { m0, m1, r0, r1 } => {
                write_set(&mut line, "m0", m0)?;
                write_set(&mut line, "m1", m1)?;
                write_set(&mut line, "r0", r0)?;
                write_set(&mut line, "r1", r1)?;
            }
        }
        out.push_str(&line);
        out.push('\n');
        out.push_str(&format!("graph {}\n", i + 1));
        out.push_str(&inst.target.to_string());
        out.push_str("end\n");
    }
    Ok(out)
}

fn parse_set(value: &str) -> NodeSet {
    value
        .split(',')
        .filter(|s| !s.is_empty())
        .map(NodeId::new)
        .collect()
}

fn parse_copy_map(value: &str) -> Result<BTreeMap<NodeId, NodeId>> {
    let mut out = BTreeMap::new();
    for pair in value.split(',').filter(|s| !s.is_empty()) {
        let (from, to) = pair
            .split_once(':')
            .ok_or_else(|| Error::input(format!("bad copy pair `{pair}`")))?;
        out.insert(NodeId::new(from), NodeId::new(to));
    }
    Ok(out)
}

/// Parses the numbered-block derivation text format.
pub fn derivation_from_text(text: &str) -> Result<Derivation> {
    let mut lines = text.lines().enumerate().peekable();
    let mut graphs: Vec<LabelledGraph> = Vec::new();
    let mut step_specs: Vec<(RuleName, Location)> = Vec::new();

    while let Some((lineno, raw)) = lines.next() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("graph ") {
            let index: usize = rest
                .trim()
                .parse()
                .map_err(|_| Error::parse(lineno + 1, 1, "bad graph index"))?;
            if index != graphs.len() {
                return Err(Error::parse(
                    lineno + 1,
                    1,
                    format!("expected graph {}, found graph {index}", graphs.len()),
                ));
            }
            let mut body = String::new();
            let mut closed = false;
            for (_, raw) in lines.by_ref() {
                if raw.trim() == "end" {
                    closed = true;
                    break;
                }
                body.push_str(raw);
                body.push('\n');
            }
            if !closed {
                return Err(Error::parse(lineno + 1, 1, "unterminated graph block"));
            }
            graphs.push(LabelledGraph::parse(&body)?);
        } else if let Some(rest) = line.strip_prefix("step ") {
            let mut words = rest.split_whitespace();
            let index: usize = words
                .next()
                .and_then(|w| w.parse().ok())
                .ok_or_else(|| Error::parse(lineno + 1, 1, "bad step index"))?;
            if index != step_specs.len() + 1 {
                return Err(Error::parse(lineno + 1, 1, "steps out of order"));
            }
            let rule_name = words
                .next()
                .ok_or_else(|| Error::parse(lineno + 1, 1, "missing rule name"))?;
            let rule = RuleName::parse(rule_name)
                .ok_or_else(|| Error::parse(lineno + 1, 1, format!("unknown rule `{rule_name}`")))?;
            let mut kv: BTreeMap<&str, &str> = BTreeMap::new();
            for word in words {
                let (k, v) = word
                    .split_once('=')
                    .ok_or_else(|| Error::parse(lineno + 1, 1, format!("bad field `{word}`")))?;
                kv.insert(k, v);
            }
            let get = |k: &str| -> Result<&str> {
                kv.get(k)
                    .copied()
                    .ok_or_else(|| Error::parse(lineno + 1, 1, format!("missing field `{k}`")))
            };
            let location = match rule {
                RuleName::WeakenRight => {
                    let nodes: Vec<(NodeId, String)> = get("fresh-nodes")?
                        .split(',')
                        .filter(|s| !s.is_empty())
                        .map(|pair| {
                            pair.split_once(':')
                                .map(|(id, label)| (NodeId::new(id), label.to_string()))
                                .ok_or_else(|| {
                                    Error::parse(lineno + 1, 1, format!("bad node `{pair}`"))
                                })
                        })
                        .collect::<Result<_>>()?;
                    let edges: Vec<(NodeId, NodeId)> = get("fresh-edges")?
                        .split(',')
                        .filter(|s| !s.is_empty())
                        .map(|pair| {
                            pair.split_once('/')
                                .map(|(u, v)| (NodeId::new(u), NodeId::new(v)))
                                .ok_or_else(|| {
                                    Error::parse(lineno + 1, 1, format!("bad edge `{pair}`"))
                                })
                        })
                        .collect::<Result<_>>()?;
                    Location::Weaken {
                        module: parse_set(get("module")?),
                        fresh: LabelledGraph::new(nodes, edges)?,
                    }
                }
                RuleName::WeakenLeft => Location::CoWeaken {
                    module: parse_set(get("module")?),
                    keep: parse_set(get("keep")?),
                },
                RuleName::ContractRight => Location::Contract {
                    module: parse_set(get("module")?),
                    keep: parse_set(get("keep")?),
                },
                RuleName::ContractLeft => Location::CoContract {
                    module: parse_set(get("module")?),
                    copies: parse_copy_map(get("copies")?)?,
                },
                RuleName::DAnd | RuleName::DOr | RuleName::DAndInv | RuleName::DOrInv => {
                    Location::Copy {
                        pivot: parse_set(get("pivot")?),
                        part0: parse_set(get("r0")?),
                        part1: parse_set(get("r1")?),
                        copies: parse_copy_map(get("copies")?)?,
                    }
                }
                RuleName::PrimeMedial => Location::Medial {
                    left: get("left")?.split('|').map(parse_set).collect(),
                    right: get("right")?.split('|').map(parse_set).collect(),
                },
                RuleName::ModuleSplit => Location::Split {
                    m0: parse_set(get("m0")?),
                    m1: parse_set(get("m1")?),
                    r0: parse_set(get("r0")?),
                    r1: parse_set(get("r1")?),
                },
            };
            step_specs.push((rule, location));
        } else {
            return Err(Error::parse(lineno + 1, 1, format!("unexpected line `{line}`")));
        }
    }
    if graphs.is_empty() {
        return Err(Error::input("derivation has no graphs"));
    }
    if graphs.len() != step_specs.len() + 1 {
        return Err(Error::input(format!(
            "derivation has {} graphs but {} steps",
            graphs.len(),
            step_specs.len()
        )));
    }
    let initial = graphs[0].clone();
    let steps = step_specs
        .into_iter()
        .enumerate()
        .map(|(i, (rule, location))| RuleInstance {
            rule,
            location,
            source: graphs[i].clone(),
            target: graphs[i + 1].clone(),
        })
        .collect();
    Ok(Derivation { initial, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::node_set;

    fn web_of(text: &str) -> LabelledGraph {
        crate::formula::web(&crate::formula::parse_formula(text).unwrap())
    }

    #[test]
    fn weaken_right_on_singleton() {
        let g = LabelledGraph::linear(["x"], []).unwrap();
        let fresh = LabelledGraph::linear(["y"], []).unwrap();
        let h = apply_weaken_right(&g, &node_set(["x"]), &fresh).unwrap();
        assert_eq!(h.node_count(), 2);
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn contract_right_merges_green_twins() {
        let g = LabelledGraph::new(
            [
                (NodeId::new("x1"), "x".to_string()),
                (NodeId::new("x2"), "x".to_string()),
            ],
            [],
        )
        .unwrap();
        let h = apply_contract_right(&g, &node_set(["x1", "x2"]), &node_set(["x1"])).unwrap();
        assert_eq!(h.node_count(), 1);
        // A red pair is not a c_r redex.
        let joined = LabelledGraph::new(
            [
                (NodeId::new("x1"), "x".to_string()),
                (NodeId::new("x2"), "x".to_string()),
            ],
            [(NodeId::new("x1"), NodeId::new("x2"))],
        )
        .unwrap();
        assert!(apply_contract_right(&joined, &node_set(["x1", "x2"]), &node_set(["x1"])).is_err());
    }

    #[test]
    fn contract_left_duplicates_a_k2_module() {
        let g =
            LabelledGraph::linear(["a", "b", "c"], [("a", "b"), ("a", "c"), ("b", "c")]).unwrap();
        let module = node_set(["a", "b"]);
        let copies: BTreeMap<NodeId, NodeId> = [("a".into(), "a~1".into()), ("b".into(), "b~1".into())]
            .into_iter()
            .collect();
        let h = apply_contract_left(&g, &module, &copies).unwrap();
        assert_eq!(h.node_count(), 5);
        for u in ["a", "b"] {
            for v in ["a~1", "b~1"] {
                assert!(h.has_edge(&u.into(), &v.into()));
            }
        }
        // The copy keeps the module's external adjacency.
        assert!(h.has_edge(&"a~1".into(), &"c".into()));
    }

    #[test]
    fn weaken_left_projects_a_join() {
        let g = LabelledGraph::linear(["a", "b"], [("a", "b")]).unwrap();
        let h = apply_weaken_left(&g, &node_set(["a", "b"]), &node_set(["a"])).unwrap();
        assert_eq!(h.node_count(), 1);
        assert!(h.contains_node(&"a".into()));
        // Green pairs are not w_l redexes.
        let split = LabelledGraph::linear(["a", "b"], []).unwrap();
        assert!(apply_weaken_left(&split, &node_set(["a", "b"]), &node_set(["a"])).is_err());
    }

    #[test]
    fn d_and_turns_the_c4_web_into_a_p5() {
        // The web of (w|z)&(x|y) is the 4-cycle w–x, w–y, x–z, y–z.
        let g = web_of("(w | z) & (x | y)");
        let h = apply_d_and(&g, &"w".into(), &node_set(["x"]), &node_set(["y"])).unwrap();
        let p5 = LabelledGraph::linear(
            ["1", "2", "3", "4", "5"],
            [("1", "2"), ("2", "3"), ("3", "4"), ("4", "5")],
        )
        .unwrap();
        assert!(h.is_isomorphic(&p5));
        let labels = |g: &LabelledGraph| -> BTreeSet<BTreeSet<String>> {
            g.max_cliques()
                .unwrap()
                .iter()
                .map(|s| g.label_set(s).unwrap())
                .collect()
        };
        assert_eq!(labels(&g), labels(&h));
    }

    #[test]
    fn d_and_rejects_adjacent_parts_and_partial_partitions() {
        let g =
            LabelledGraph::linear(["x", "y", "z"], [("x", "y"), ("x", "z"), ("y", "z")]).unwrap();
        // y–z are adjacent, so they cannot be split.
        assert!(apply_d_and(&g, &"x".into(), &node_set(["y"]), &node_set(["z"])).is_err());
        // Parts must cover the whole neighbourhood.
        let p3 = LabelledGraph::linear(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
        assert!(apply_d_and(&p3, &"b".into(), &node_set(["a"]), &NodeSet::new()).is_err());
    }

    #[test]
    fn d_and_with_empty_parts_duplicates_an_isolated_pivot() {
        let g = LabelledGraph::linear(["x", "y"], []).unwrap();
        let h = apply_d_and(&g, &"x".into(), &NodeSet::new(), &NodeSet::new()).unwrap();
        assert_eq!(h.node_count(), 3);
        assert_eq!(h.label_universe().len(), 2);
    }

    #[test]
    fn d_or_duplicates_against_the_non_neighbourhood() {
        // Dual of the C4 example on the complement graph.
        let g = web_of("(w | z) & (x | y)").complement();
        let h = apply_d_or(&g, &"w".into(), &node_set(["x"]), &node_set(["y"])).unwrap();
        let labels = |g: &LabelledGraph| -> BTreeSet<BTreeSet<String>> {
            g.max_stable_sets()
                .unwrap()
                .iter()
                .map(|s| g.label_set(s).unwrap())
                .collect()
        };
        assert_eq!(labels(&g), labels(&h));
        // The two copies of w are adjacent after a d_or.
        let copies: Vec<_> = h
            .nodes()
            .filter(|v| h.label(v) == Some("w"))
            .cloned()
            .collect();
        assert_eq!(copies.len(), 2);
        assert!(h.has_edge(&copies[0], &copies[1]));
    }

    #[test]
    fn dnf_and_cnf_recognition() {
        let p4 = LabelledGraph::linear(["w", "x", "y", "z"], [("w", "x"), ("x", "y"), ("y", "z")])
            .unwrap();
        assert!(!is_dnf(&p4).unwrap());
        let edgeless = LabelledGraph::linear(["a", "b", "c"], []).unwrap();
        assert!(is_dnf(&edgeless).unwrap());
        let k3 =
            LabelledGraph::linear(["a", "b", "c"], [("a", "b"), ("a", "c"), ("b", "c")]).unwrap();
        assert!(is_dnf(&k3).unwrap());
        assert!(is_cnf(&edgeless.complement()).unwrap());
    }

    #[test]
    fn to_dnf_of_the_paper_example_has_four_terms() {
        let g = web_of("(w | z) & (x | y)");
        let (dnf, derivation) = to_dnf(&g).unwrap();
        assert!(is_dnf(&dnf).unwrap());
        let labels: BTreeSet<BTreeSet<String>> = dnf
            .max_cliques()
            .unwrap()
            .iter()
            .map(|s| dnf.label_set(s).unwrap())
            .collect();
        let expected: BTreeSet<BTreeSet<String>> = [["w", "x"], ["w", "y"], ["x", "z"], ["y", "z"]]
            .into_iter()
            .map(|p| p.into_iter().map(str::to_string).collect())
            .collect();
        assert_eq!(labels, expected);
        assert!(check_derivation(&derivation, Some(Flavor::And))
            .unwrap()
            .is_ok());
        for inst in &derivation.steps {
            let before: BTreeSet<BTreeSet<String>> = inst
                .source
                .max_cliques()
                .unwrap()
                .iter()
                .map(|s| inst.source.label_set(s).unwrap())
                .collect();
            let after: BTreeSet<BTreeSet<String>> = inst
                .target
                .max_cliques()
                .unwrap()
                .iter()
                .map(|s| inst.target.label_set(s).unwrap())
                .collect();
            assert_eq!(before, after);
        }
    }

    #[test]
    fn to_dnf_of_a_dnf_is_identity() {
        let g = LabelledGraph::linear(["a", "b"], [("a", "b")]).unwrap();
        let (dnf, derivation) = to_dnf(&g).unwrap();
        assert_eq!(dnf, g);
        assert!(derivation.is_empty());
    }

    #[test]
    fn to_dnf_needs_module_pivots_on_the_diamond() {
        // K4 minus an edge: no single-node pivot has a disconnected
        // neighbourhood, but the module {b,c} splits it in one step.
        let g = LabelledGraph::linear(
            ["a", "b", "c", "d"],
            [("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d")],
        )
        .unwrap();
        let (dnf, derivation) = to_dnf(&g).unwrap();
        assert!(is_dnf(&dnf).unwrap());
        assert_eq!(derivation.len(), 1);
        assert!(check_derivation(&derivation, Some(Flavor::And))
            .unwrap()
            .is_ok());
    }

    #[test]
    fn to_dnf_is_stuck_on_the_gem() {
        // P4 plus a dominating vertex: prime, and every neighbourhood is
        // connected, so no clique-preserving split exists.
        let gem = LabelledGraph::linear(
            ["a", "b", "c", "d", "v"],
            [
                ("a", "b"),
                ("b", "c"),
                ("c", "d"),
                ("v", "a"),
                ("v", "b"),
                ("v", "c"),
                ("v", "d"),
            ],
        )
        .unwrap();
        let err = to_dnf(&gem).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
    }

    #[test]
    fn to_cnf_mirrors_to_dnf() {
        let g = web_of("(w & z) | (x & y)");
        let (cnf, derivation) = to_cnf(&g).unwrap();
        assert!(is_cnf(&cnf).unwrap());
        assert!(check_derivation(&derivation, Some(Flavor::Or))
            .unwrap()
            .is_ok());
    }

    #[test]
    fn derive_dnf_to_dnf_simple_cases() {
        // (x&y) | (x&y) -> x&y by contraction.
        let two = web_of("(x & y) | (x & y)");
        let one = web_of("x & y");
        let d = derive_dnf_to_dnf(&two, &one).unwrap();
        assert!(check_derivation(&d, Some(Flavor::And)).unwrap().is_ok());
        assert_eq!(d.final_graph(), &one);

        // a -> a | b by weakening.
        let a = LabelledGraph::linear(["a"], []).unwrap();
        let ab = LabelledGraph::linear(["a", "b"], []).unwrap();
        let d = derive_dnf_to_dnf(&a, &ab).unwrap();
        assert!(check_derivation(&d, Some(Flavor::And)).unwrap().is_ok());
        assert_eq!(d.final_graph(), &ab);

        // Entailment failures are input errors.
        let b = LabelledGraph::linear(["b"], []).unwrap();
        assert!(derive_dnf_to_dnf(&a, &b).is_err());
    }

    #[test]
    fn derive_entailment_round_trips_the_switch_instance() {
        let g = web_of("x & (y | z)");
        let h = web_of("(x & y) | z");
        assert!(entails_and(&g, &h).unwrap());
        let d = derive_entailment(&g, &h, Flavor::And).unwrap();
        assert_eq!(&d.initial, &g);
        assert_eq!(d.final_graph(), &h);
        assert!(check_derivation(&d, Some(Flavor::And)).unwrap().is_ok());

        assert!(entails_or(&g, &h).unwrap());
        let d_or = derive_entailment(&g, &h, Flavor::Or).unwrap();
        assert!(check_derivation(&d_or, Some(Flavor::Or)).unwrap().is_ok());
        assert_eq!(d_or.final_graph(), &h);
    }

    #[test]
    fn derive_entailment_identity_and_failure() {
        let g = web_of("x & y");
        let d = derive_entailment(&g, &g, Flavor::And).unwrap();
        assert!(d.is_empty());
        let h = web_of("x | y");
        assert!(derive_entailment(&h, &g, Flavor::And).is_err());
    }

    #[test]
    fn check_derivation_catches_tampering() {
        let g = web_of("x & (y | z)");
        let h = web_of("(x & y) | z");
        let mut d = derive_entailment(&g, &h, Flavor::And).unwrap();
        let mid = d.steps.len() / 2;
        let tampered = {
            let t = &d.steps[mid].target;
            let nodes: Vec<_> = t.nodes().cloned().collect();
            let (u, v) = (nodes[0].clone(), nodes[1].clone());
            let mut edges: Vec<(NodeId, NodeId)> = t.edges().cloned().collect();
            if t.has_edge(&u, &v) {
                edges.retain(|(a, b)| !((a == &u && b == &v) || (a == &v && b == &u)));
            } else {
                edges.push((u, v));
            }
            LabelledGraph::new(
                t.nodes().map(|n| (n.clone(), t.label(n).unwrap().to_string())),
                edges,
            )
            .unwrap()
        };
        d.steps[mid].target = tampered;
        let outcome = check_derivation(&d, Some(Flavor::And)).unwrap();
        match outcome {
            CheckOutcome::Failed { step, .. } => assert!(step <= mid),
            CheckOutcome::Ok => panic!("tampered derivation accepted"),
        }
    }

    #[test]
    fn empty_derivation_checks_ok() {
        let g = web_of("x & y");
        let d = Derivation::identity(g);
        assert!(check_derivation(&d, Some(Flavor::And)).unwrap().is_ok());
    }

    #[test]
    fn derivation_text_round_trips() {
        let g = web_of("x & (y | z)");
        let h = web_of("(x & y) | z");
        let d = derive_entailment(&g, &h, Flavor::And).unwrap();
        let text = derivation_to_text(&d).unwrap();
        let parsed = derivation_from_text(&text).unwrap();
        assert_eq!(parsed, d);
        assert!(check_derivation(&parsed, Some(Flavor::And)).unwrap().is_ok());
        // Serialisation is stable.
        assert_eq!(derivation_to_text(&parsed).unwrap(), text);
    }

    #[test]
    fn derivation_text_rejects_malformed_blocks() {
        assert!(derivation_from_text("graph 1\nend\n").is_err());
        assert!(derivation_from_text("graph 0\nnode a\n").is_err());
        assert!(derivation_from_text("nonsense\n").is_err());
    }

    #[test]
    fn prime_medial_reproduces_the_formula_medial() {
        // (w&x) | (y&z) -> (w|y) & (x|z), as the K2 instance.
        let g = web_of("(w & x) | (y & z)");
        let h = apply_prime_medial(
            &g,
            &[node_set(["w"]), node_set(["x"])],
            &[node_set(["y"]), node_set(["z"])],
        )
        .unwrap();
        let expected = web_of("(w | y) & (x | z)");
        assert!(h.is_label_isomorphic(&expected));
        assert!(entails_and(&g, &h).unwrap());
        assert!(entails_or(&g, &h).unwrap());
    }

    #[test]
    fn prime_medial_on_p4_shaped_halves() {
        // Two disjoint P4s over singleton slots merge into a P4 over
        // two-node non-adjacent slots.
        let g = LabelledGraph::linear(
            ["a", "b", "c", "d", "a'", "b'", "c'", "d'"],
            [
                ("a", "b"),
                ("b", "c"),
                ("c", "d"),
                ("a'", "b'"),
                ("b'", "c'"),
                ("c'", "d'"),
            ],
        )
        .unwrap();
        let left: Vec<NodeSet> = ["a", "b", "c", "d"].iter().map(|v| node_set([*v])).collect();
        let right: Vec<NodeSet> = ["a'", "b'", "c'", "d'"]
            .iter()
            .map(|v| node_set([*v]))
            .collect();
        let h = apply_prime_medial(&g, &left, &right).unwrap();
        assert!(h.has_edge(&"a".into(), &"b'".into()));
        assert!(h.has_edge(&"a'".into(), &"b".into()));
        assert!(!h.has_edge(&"a".into(), &"a'".into()));
        assert!(!h.has_edge(&"a".into(), &"c'".into()));
        assert!(entails_and(&g, &h).unwrap());
        assert!(entails_or(&g, &h).unwrap());
    }

    #[test]
    fn module_split_separates_a_join() {
        let g = LabelledGraph::linear(
            ["m0", "m1", "r0", "r1"],
            [
                ("m0", "m1"),
                ("m0", "r0"),
                ("m0", "r1"),
                ("m1", "r0"),
                ("m1", "r1"),
            ],
        )
        .unwrap();
        let h = apply_module_split(
            &g,
            &node_set(["m0"]),
            &node_set(["m1"]),
            &node_set(["r0"]),
            &node_set(["r1"]),
        )
        .unwrap();
        assert!(!h.has_edge(&"m0".into(), &"m1".into()));
        assert!(h.has_edge(&"m0".into(), &"r0".into()));
        assert!(!h.has_edge(&"m0".into(), &"r1".into()));
        assert!(h.has_edge(&"m1".into(), &"r1".into()));
        assert!(!h.has_edge(&"m1".into(), &"r0".into()));
        assert!(entails_and(&g, &h).unwrap());
        assert!(entails_or(&g, &h).unwrap());
    }
}
