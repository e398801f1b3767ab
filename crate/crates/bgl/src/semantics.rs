//! Relational evaluation and entailment.
//!
//! A graph evaluates under an assignment to a *subset* of `{0,1}`: it
//! contains 1 when some maximal clique's labels lie inside the assignment,
//! and 0 when some maximal stable set's labels avoid it entirely. Both,
//! either, or neither may hold, so graphs compute Boolean relations rather
//! than functions. The two entailments `|-and` and `|-or` compare maximal
//! cliques and maximal stable sets by label containment.

use std::collections::BTreeSet;
use std::fmt;

use crate::decompose::{decompose, DecTree};
use crate::error::{Error, Result};
use crate::graph::{LabelledGraph, NodeSet};

/// A Boolean assignment, identified with its set of true variables.
pub type Assignment = BTreeSet<String>;

/// Parses the CLI assignment syntax: comma-separated names, empty string is
/// the empty assignment.
pub fn parse_assignment(text: &str) -> Assignment {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

/// The subset of `{0,1}` a graph evaluates to under one assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvalResult {
    Empty,
    Zero,
    One,
    Both,
}

impl EvalResult {
    pub fn from_bits(zero: bool, one: bool) -> EvalResult {
        match (zero, one) {
            (false, false) => EvalResult::Empty,
            (true, false) => EvalResult::Zero,
            (false, true) => EvalResult::One,
            (true, true) => EvalResult::Both,
        }
    }

    pub fn contains_zero(self) -> bool {
        matches!(self, EvalResult::Zero | EvalResult::Both)
    }

    pub fn contains_one(self) -> bool {
        matches!(self, EvalResult::One | EvalResult::Both)
    }

    /// Deterministic at this assignment: not `{0,1}`.
    pub fn is_deterministic(self) -> bool {
        self != EvalResult::Both
    }

    /// Total at this assignment: not the empty set.
    pub fn is_total(self) -> bool {
        self != EvalResult::Empty
    }
}

impl fmt::Display for EvalResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvalResult::Empty => "{}",
            EvalResult::Zero => "{0}",
            EvalResult::One => "{1}",
            EvalResult::Both => "{0,1}",
        })
    }
}

/// Direct evaluation from the definitions: 1 via a maximal clique whose
/// labels lie inside `x`, 0 via a maximal stable set whose labels avoid it.
pub fn evaluate(g: &LabelledGraph, x: &Assignment) -> Result<EvalResult> {
    let one = g.max_cliques()?.iter().any(|s| {
        g.label_set(s)
            .map(|l| l.iter().all(|v| x.contains(v)))
            .unwrap_or(false)
    });
    let zero = g.max_stable_sets()?.iter().any(|t| {
        g.label_set(t)
            .map(|l| l.iter().all(|v| !x.contains(v)))
            .unwrap_or(false)
    });
    Ok(EvalResult::from_bits(zero, one))
}

/// Evaluation by recursion on the decomposition tree. At `Or`/`And` nodes
/// the bits combine as any/all; at a prime node the quotient is evaluated
/// with its blocks as fresh variables, positively on the blocks that may
/// evaluate to 1 and negatively on the blocks that cannot evaluate to 0.
pub fn evaluate_recursive(g: &LabelledGraph, x: &Assignment) -> Result<EvalResult> {
    let tree = decompose(g)?;
    eval_tree(g, &tree, x)
}

fn eval_tree(g: &LabelledGraph, t: &DecTree, x: &Assignment) -> Result<EvalResult> {
    match t {
        DecTree::Leaf { label, .. } => {
            let one = x.contains(label);
            Ok(EvalResult::from_bits(!one, one))
        }
        DecTree::Or { children, .. } => {
            let results = children
                .iter()
                .map(|c| eval_tree(g, c, x))
                .collect::<Result<Vec<_>>>()?;
            Ok(EvalResult::from_bits(
                results.iter().all(|r| r.contains_zero()),
                results.iter().any(|r| r.contains_one()),
            ))
        }
        DecTree::And { children, .. } => {
            let results = children
                .iter()
                .map(|c| eval_tree(g, c, x))
                .collect::<Result<Vec<_>>>()?;
            Ok(EvalResult::from_bits(
                results.iter().any(|r| r.contains_zero()),
                results.iter().all(|r| r.contains_one()),
            ))
        }
        DecTree::Prime {
            quotient, children, ..
        } => {
            let reps: Vec<_> = children
                .iter()
                .map(|c| c.cover().iter().next().unwrap().clone())
                .collect();
            let mut positive = NodeSet::new();
            let mut negative_free = NodeSet::new();
            for (i, c) in children.iter().enumerate() {
                let r = eval_tree(g, c, x)?;
                if r.contains_one() {
                    positive.insert(reps[i].clone());
                }
                if !r.contains_zero() {
                    negative_free.insert(reps[i].clone());
                }
            }
            let one = quotient
                .max_cliques()?
                .iter()
                .any(|s| s.is_subset(&positive));
            let zero = quotient
                .max_stable_sets()?
                .iter()
                .any(|t0| t0.is_disjoint(&negative_free));
            Ok(EvalResult::from_bits(zero, one))
        }
    }
}

/// Conjunctive entailment: every maximal clique of `g` contains (by labels)
/// a maximal clique of `h`.
pub fn entails_and(g: &LabelledGraph, h: &LabelledGraph) -> Result<bool> {
    let g_mc = g.max_cliques()?;
    let h_mc = h.max_cliques()?;
    let h_labels: Vec<BTreeSet<String>> = h_mc
        .iter()
        .map(|s| h.label_set(s))
        .collect::<Result<_>>()?;
    for s in &g_mc {
        let ls = g.label_set(s)?;
        if !h_labels.iter().any(|l| l.is_subset(&ls)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Disjunctive entailment: every maximal stable set of `h` contains (by
/// labels) a maximal stable set of `g`.
pub fn entails_or(g: &LabelledGraph, h: &LabelledGraph) -> Result<bool> {
    let h_ms = h.max_stable_sets()?;
    let g_ms = g.max_stable_sets()?;
    let g_labels: Vec<BTreeSet<String>> = g_ms
        .iter()
        .map(|t| g.label_set(t))
        .collect::<Result<_>>()?;
    for t in &h_ms {
        let lt = h.label_set(t)?;
        if !g_labels.iter().any(|l| l.is_subset(&lt)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// CIS: every maximal clique intersects every maximal stable set.
pub fn is_cis(g: &LabelledGraph) -> Result<bool> {
    let mc = g.max_cliques()?;
    let ms = g.max_stable_sets()?;
    for s in &mc {
        for t in &ms {
            if s.is_disjoint(t) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A graph is deterministic (never evaluates to both 0 and 1) exactly when
/// it is CIS, so this simply delegates. The equivalence is exercised
/// exhaustively in the test suite.
pub fn is_deterministic(g: &LabelledGraph) -> Result<bool> {
    is_cis(g)
}

/// Totality by brute force over all assignments to the label universe.
/// Requires at most 20 distinct labels.
pub fn is_total(g: &LabelledGraph) -> Result<bool> {
    let labels: Vec<String> = g.label_universe().into_iter().collect();
    if labels.len() > 20 {
        return Err(Error::resource(format!(
            "totality check over {} labels exceeds the 2^20 budget",
            labels.len()
        )));
    }
    let mc = g.max_cliques()?;
    let ms = g.max_stable_sets()?;
    let mc_labels: Vec<BTreeSet<String>> = mc
        .iter()
        .map(|s| g.label_set(s))
        .collect::<Result<_>>()?;
    let ms_labels: Vec<BTreeSet<String>> = ms
        .iter()
        .map(|t| g.label_set(t))
        .collect::<Result<_>>()?;
    for m in 0..1usize << labels.len() {
        let x: Assignment = labels
            .iter()
            .enumerate()
            .filter(|(i, _)| m >> i & 1 == 1)
            .map(|(_, v)| v.clone())
            .collect();
        let one = mc_labels.iter().any(|l| l.iter().all(|v| x.contains(v)));
        let zero = ms_labels.iter().any(|l| l.iter().all(|v| !x.contains(v)));
        if !one && !zero {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A non-totality witness: the first assignment (in subset order over the
/// sorted label universe) on which the graph evaluates to the empty set.
pub fn non_totality_witness(g: &LabelledGraph) -> Result<Option<Assignment>> {
    let labels: Vec<String> = g.label_universe().into_iter().collect();
    if labels.len() > 20 {
        return Err(Error::resource("label budget exceeded"));
    }
    for m in 0..1usize << labels.len() {
        let x: Assignment = labels
            .iter()
            .enumerate()
            .filter(|(i, _)| m >> i & 1 == 1)
            .map(|(_, v)| v.clone())
            .collect();
        if evaluate(g, &x)? == EvalResult::Empty {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// A selection with respect to `y`: one maximal stable set per `x` in `y`,
/// each meeting `y` exactly in `{x}`.
pub fn is_selection(g: &LabelledGraph, y: &NodeSet, sel: &[NodeSet]) -> Result<bool> {
    for v in y {
        if !g.contains_node(v) {
            return Err(Error::input(format!("unknown node `{v}`")));
        }
    }
    let ms: BTreeSet<NodeSet> = g.max_stable_sets()?.into_iter().collect();
    if sel.len() != y.len() {
        return Ok(false);
    }
    let mut hit = NodeSet::new();
    for t in sel {
        if !ms.contains(t) {
            return Ok(false);
        }
        let meet: Vec<_> = t.intersection(y).cloned().collect();
        match meet.as_slice() {
            [x] => {
                if !hit.insert(x.clone()) {
                    return Ok(false);
                }
            }
            _ => return Ok(false),
        }
    }
    Ok(hit == *y)
}

/// A covering: a selection whose union contains some maximal stable set
/// disjoint from `y`.
pub fn is_covering(g: &LabelledGraph, y: &NodeSet, sel: &[NodeSet]) -> Result<bool> {
    if !is_selection(g, y, sel)? {
        return Ok(false);
    }
    let mut union = NodeSet::new();
    for t in sel {
        union.extend(t.iter().cloned());
    }
    for d in g.max_stable_sets()? {
        if d.is_subset(&union) && d.is_disjoint(y) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::node_set;

    fn p4() -> LabelledGraph {
        // z–x, x–w, w–y.
        LabelledGraph::linear(["w", "x", "y", "z"], [("z", "x"), ("x", "w"), ("w", "y")])
            .unwrap()
    }

    fn c5() -> LabelledGraph {
        LabelledGraph::linear(
            ["v", "w", "x", "y", "z"],
            [("v", "w"), ("w", "x"), ("x", "y"), ("y", "z"), ("z", "v")],
        )
        .unwrap()
    }

    fn p5() -> LabelledGraph {
        LabelledGraph::linear(
            ["v", "w", "x", "y", "z"],
            [("v", "w"), ("w", "x"), ("x", "y"), ("y", "z")],
        )
        .unwrap()
    }

    fn bull() -> LabelledGraph {
        LabelledGraph::linear(
            ["v", "x", "y", "w", "z"],
            [("v", "x"), ("v", "y"), ("x", "y"), ("x", "w"), ("y", "z")],
        )
        .unwrap()
    }

    /// Six-node CIS counterexample: triangle x,y,z with pendants x' on x,
    /// y' on y, z' on z.
    fn settled_non_cis() -> LabelledGraph {
        LabelledGraph::linear(
            ["x'", "x", "y", "y'", "z", "z'"],
            [
                ("x'", "x"),
                ("x", "z"),
                ("x", "y"),
                ("y", "y'"),
                ("z", "z'"),
                ("y", "z"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn p4_evaluation_quadruple() {
        let g = p4();
        assert_eq!(evaluate(&g, &parse_assignment("w,y")).unwrap(), EvalResult::One);
        assert_eq!(evaluate(&g, &parse_assignment("x,y")).unwrap(), EvalResult::Zero);
        assert_eq!(evaluate(&g, &parse_assignment("w,x")).unwrap(), EvalResult::Both);
        assert_eq!(evaluate(&g, &parse_assignment("y,z")).unwrap(), EvalResult::Empty);
    }

    #[test]
    fn repeated_labels_evaluate_through_label_sets() {
        let g = LabelledGraph::new(
            [
                (crate::NodeId::new("n1"), "x".to_string()),
                (crate::NodeId::new("n2"), "x".to_string()),
            ],
            [],
        )
        .unwrap();
        assert_eq!(evaluate(&g, &parse_assignment("x")).unwrap(), EvalResult::One);
        assert_eq!(evaluate(&g, &parse_assignment("")).unwrap(), EvalResult::Zero);
    }

    #[test]
    fn recursive_evaluation_agrees_on_fixtures() {
        let seven = LabelledGraph::linear(
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
        .unwrap();
        assert_eq!(
            evaluate_recursive(&seven, &parse_assignment("a,b")).unwrap(),
            EvalResult::One
        );
        for g in [p4(), c5(), seven] {
            let labels: Vec<String> = g.label_universe().into_iter().collect();
            for m in 0..1usize << labels.len() {
                let x: Assignment = labels
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .map(|(_, v)| v.clone())
                    .collect();
                assert_eq!(
                    evaluate_recursive(&g, &x).unwrap(),
                    evaluate(&g, &x).unwrap()
                );
            }
        }
        let single = LabelledGraph::linear(["x"], []).unwrap();
        assert_eq!(
            evaluate_recursive(&single, &parse_assignment("x")).unwrap(),
            EvalResult::One
        );
    }

    #[test]
    fn p5_c5_entailment_table() {
        let (p, c) = (p5(), c5());
        assert!(entails_and(&p, &c).unwrap());
        assert!(!entails_or(&p, &c).unwrap());
        assert!(entails_or(&c, &p).unwrap());
        assert!(!entails_and(&c, &p).unwrap());
        // Reflexivity.
        assert!(entails_and(&p, &p).unwrap());
        assert!(entails_or(&c, &c).unwrap());
    }

    #[test]
    fn bull_is_deterministic_but_not_total() {
        let g = bull();
        assert!(is_deterministic(&g).unwrap());
        assert!(!is_total(&g).unwrap());
        let witness = non_totality_witness(&g).unwrap().unwrap();
        assert_eq!(evaluate(&g, &witness).unwrap(), EvalResult::Empty);
    }

    #[test]
    fn c5_is_total_but_not_deterministic() {
        let g = c5();
        assert!(is_total(&g).unwrap());
        assert!(!is_deterministic(&g).unwrap());
    }

    #[test]
    fn settled_p4s_do_not_imply_cis() {
        let g = settled_non_cis();
        // The triangle is a maximal clique disjoint from the pendant
        // stable set {x',y',z'}.
        let mc = g.max_cliques().unwrap();
        assert!(mc.contains(&node_set(["x", "y", "z"])));
        let ms = g.max_stable_sets().unwrap();
        assert!(ms.contains(&node_set(["x'", "y'", "z'"])));
        assert!(!is_cis(&g).unwrap());
    }

    #[test]
    fn selection_and_covering_on_the_appendix_example() {
        // Edges ab, ac, ad, cd; Y = {a,c,d} is a maximal clique.
        let g = LabelledGraph::linear(
            ["a", "b", "c", "d"],
            [("a", "b"), ("a", "c"), ("a", "d"), ("c", "d")],
        )
        .unwrap();
        let y = node_set(["a", "c", "d"]);
        let sel = vec![node_set(["a"]), node_set(["b", "c"]), node_set(["b", "d"])];
        assert!(is_selection(&g, &y, &sel).unwrap());
        // Any maximal stable set inside the union must avoid Y, which only
        // leaves {b}; {b} extends to {b,c}, so there is no covering here.
        assert!(!is_covering(&g, &y, &sel).unwrap());

        // A singleton Y is covered by any stable set through it.
        let y1 = node_set(["b"]);
        let sel1 = vec![node_set(["b", "c"])];
        assert!(is_selection(&g, &y1, &sel1).unwrap());

        // Wrong multiplicity is not a selection.
        assert!(!is_selection(&g, &y, &sel1).unwrap());
    }

    #[test]
    fn parse_assignment_handles_empty_and_spaces() {
        assert!(parse_assignment("").is_empty());
        let x = parse_assignment("w, y");
        assert!(x.contains("w") && x.contains("y") && x.len() == 2);
    }

    #[test]
    fn eval_result_display() {
        assert_eq!(EvalResult::Both.to_string(), "{0,1}");
        assert_eq!(EvalResult::Empty.to_string(), "{}");
        assert_eq!(EvalResult::One.to_string(), "{1}");
        assert_eq!(EvalResult::Zero.to_string(), "{0}");
    }
}
