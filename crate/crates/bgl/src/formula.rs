//! Positive Boolean formulas, their evaluation, and relation webs.
//!
//! Formulas are built from variables with n-ary `|` and `&`. The *relation
//! web* of a formula has one node per variable occurrence and an edge where
//! the least common connective of two occurrences is `&`; webs of read-once
//! formulas are exactly the P4-free graphs, and [`cotree_to_formula`] is the
//! constructive inverse on that class.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::decompose::{decompose, DecTree};
use crate::error::{Error, Result};
use crate::graph::{LabelledGraph, NodeId};
use crate::semantics::Assignment;

/// Formula tree. Internal nodes have at least two children; children keep
/// their parsed order. Nested same-connective nodes are only merged by the
/// explicit [`Formula::flatten`] normaliser, never implicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Var(String),
    Or(Vec<Formula>),
    And(Vec<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::Var(name.into())
    }

    /// N-ary disjunction; a single child collapses to that child.
    pub fn or(mut children: Vec<Formula>) -> Formula {
        assert!(!children.is_empty(), "connectives need at least one child");
        if children.len() == 1 {
            children.pop().unwrap()
        } else {
            Formula::Or(children)
        }
    }

    /// N-ary conjunction; a single child collapses to that child.
    pub fn and(mut children: Vec<Formula>) -> Formula {
        assert!(!children.is_empty(), "connectives need at least one child");
        if children.len() == 1 {
            children.pop().unwrap()
        } else {
            Formula::And(children)
        }
    }

    /// Merges nested same-connective nodes: `(a | b) | c` becomes `a | b | c`.
    pub fn flatten(&self) -> Formula {
        match self {
            Formula::Var(x) => Formula::Var(x.clone()),
            Formula::Or(children) => {
                let mut out = Vec::new();
                for c in children {
                    match c.flatten() {
                        Formula::Or(gs) => out.extend(gs),
                        other => out.push(other),
                    }
                }
                Formula::or(out)
            }
            Formula::And(children) => {
                let mut out = Vec::new();
                for c in children {
                    match c.flatten() {
                        Formula::And(gs) => out.extend(gs),
                        other => out.push(other),
                    }
                }
                Formula::and(out)
            }
        }
    }

    /// Variable occurrences in left-to-right order (with repeats).
    pub fn occurrences(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_occurrences(&mut out);
        out
    }

    fn collect_occurrences(&self, out: &mut Vec<String>) {
        match self {
            Formula::Var(x) => out.push(x.clone()),
            Formula::Or(cs) | Formula::And(cs) => {
                for c in cs {
                    c.collect_occurrences(out);
                }
            }
        }
    }

    /// The set of variables.
    pub fn variables(&self) -> BTreeSet<String> {
        self.occurrences().into_iter().collect()
    }

    /// True when each variable occurs at most once.
    pub fn is_read_once(&self) -> bool {
        let occ = self.occurrences();
        occ.len() == occ.iter().collect::<BTreeSet<_>>().len()
    }
}

/// Recursive min/max evaluation of a formula under an assignment.
pub fn eval_formula(a: &Formula, x: &Assignment) -> bool {
    match a {
        Formula::Var(v) => x.contains(v),
        Formula::Or(cs) => cs.iter().any(|c| eval_formula(c, x)),
        Formula::And(cs) => cs.iter().all(|c| eval_formula(c, x)),
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(a: &Formula, parent_is_and: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match a {
                Formula::Var(x) => f.write_str(x),
                Formula::Or(cs) => {
                    if parent_is_and {
                        f.write_str("(")?;
                    }
                    for (i, c) in cs.iter().enumerate() {
                        if i > 0 {
                            f.write_str(" | ")?;
                        }
                        go(c, false, f)?;
                    }
                    if parent_is_and {
                        f.write_str(")")?;
                    }
                    Ok(())
                }
                Formula::And(cs) => {
                    for (i, c) in cs.iter().enumerate() {
                        if i > 0 {
                            f.write_str(" & ")?;
                        }
                        go(c, true, f)?;
                    }
                    Ok(())
                }
            }
        }
        go(self, false, f)
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            text,
        }
    }

    fn line_col(&self) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for c in self.text.chars().take(self.pos) {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.line_col();
        Error::parse(line, col, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn is_ident_char(c: char) -> bool {
        c.is_alphanumeric() || c == '_' || c == '\''
    }

    fn parse_or(&mut self) -> Result<Formula> {
        let mut children = vec![self.parse_and()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            children.push(self.parse_and()?);
        }
        Ok(Formula::or(children))
    }

    fn parse_and(&mut self) -> Result<Formula> {
        let mut children = vec![self.parse_atom()?];
        while self.peek() == Some('&') {
            self.pos += 1;
            children.push(self.parse_atom()?);
        }
        Ok(Formula::and(children))
    }

    fn parse_atom(&mut self) -> Result<Formula> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.parse_or()?;
                if self.peek() == Some(')') {
                    self.pos += 1;
                    Ok(inner)
                } else {
                    Err(self.err("expected `)`"))
                }
            }
            Some(c) if Self::is_ident_char(c) => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|&c| Self::is_ident_char(c))
                {
                    self.pos += 1;
                }
                Ok(Formula::Var(self.chars[start..self.pos].iter().collect()))
            }
            Some(c) => Err(self.err(format!("unexpected character `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses `F ::= atom | F '|' F | F '&' F | '(' F ')'` where `&` binds
/// tighter than `|`. The result is flattened, so `a | b | c` is a single
/// ternary disjunction.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser::new(text);
    let formula = p.parse_or()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input after formula"));
    }
    Ok(formula.flatten())
}

/// The relation web: one node per variable occurrence, an edge where the
/// least common connective is `&`. Read-once formulas give nodes named by
/// their variables; repeated variables get occurrence-numbered node ids
/// with the variable as label.
pub fn web(a: &Formula) -> LabelledGraph {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for v in a.occurrences() {
        *counts.entry(v).or_insert(0) += 1;
    }
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let mut nodes: Vec<(NodeId, String)> = Vec::new();
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();

    fn build(
        a: &Formula,
        counts: &BTreeMap<String, usize>,
        seen: &mut BTreeMap<String, usize>,
        nodes: &mut Vec<(NodeId, String)>,
        edges: &mut Vec<(NodeId, NodeId)>,
    ) -> Vec<NodeId> {
        match a {
            Formula::Var(v) => {
                let k = seen.entry(v.clone()).or_insert(0);
                *k += 1;
                let id = if counts[v] == 1 {
                    NodeId::new(v.clone())
                } else {
                    NodeId::new(format!("{v}~{k}"))
                };
                nodes.push((id.clone(), v.clone()));
                vec![id]
            }
            Formula::Or(cs) => {
                let mut all = Vec::new();
                for c in cs {
                    all.extend(build(c, counts, seen, nodes, edges));
                }
                all
            }
            Formula::And(cs) => {
                let parts: Vec<Vec<NodeId>> = cs
                    .iter()
                    .map(|c| build(c, counts, seen, nodes, edges))
                    .collect();
                for (i, left) in parts.iter().enumerate() {
                    for right in parts.iter().skip(i + 1) {
                        for u in left {
                            for v in right {
                                edges.push((u.clone(), v.clone()));
                            }
                        }
                    }
                }
                parts.into_iter().flatten().collect()
            }
        }
    }

    build(a, &counts, &mut seen, &mut nodes, &mut edges);
    LabelledGraph::new(nodes, edges).expect("webs are always well formed")
}

/// Explicit truth table of a monotone Boolean function over a finite
/// support, one bit per subset. Monotonicity is checked on construction.
#[derive(Debug, Clone)]
pub struct MonotoneFunctionTable {
    support: Vec<String>,
    bits: Vec<bool>,
}

impl MonotoneFunctionTable {
    pub fn new(support: Vec<String>, bits: Vec<bool>) -> Result<Self> {
        if support.len() > 16 {
            return Err(Error::resource(format!(
                "support of {} variables exceeds the exhaustive-scan limit of 16",
                support.len()
            )));
        }
        if bits.len() != 1 << support.len() {
            return Err(Error::input("truth table size does not match support"));
        }
        let table = MonotoneFunctionTable { support, bits };
        for m in 0..table.bits.len() {
            for b in 0..table.support.len() {
                if m >> b & 1 == 0 && table.bits[m] && !table.bits[m | 1 << b] {
                    return Err(Error::input("function is not monotone"));
                }
            }
        }
        Ok(table)
    }

    pub fn from_formula(a: &Formula) -> Result<Self> {
        let support: Vec<String> = a.variables().into_iter().collect();
        if support.len() > 16 {
            return Err(Error::resource(format!(
                "support of {} variables exceeds the exhaustive-scan limit of 16",
                support.len()
            )));
        }
        let bits = (0..1usize << support.len())
            .map(|m| {
                let x: Assignment = support
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .map(|(_, v)| v.clone())
                    .collect();
                eval_formula(a, &x)
            })
            .collect();
        MonotoneFunctionTable::new(support, bits)
    }

    pub fn support(&self) -> &[String] {
        &self.support
    }

    pub fn eval(&self, x: &Assignment) -> bool {
        let mut m = 0usize;
        for (i, v) in self.support.iter().enumerate() {
            if x.contains(v) {
                m |= 1 << i;
            }
        }
        self.bits[m]
    }

    fn subset(&self, m: usize) -> BTreeSet<String> {
        self.support
            .iter()
            .enumerate()
            .filter(|(i, _)| m >> i & 1 == 1)
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Inclusion-minimal sets on which the function is true.
    pub fn minterms(&self) -> Vec<BTreeSet<String>> {
        let n = self.support.len();
        let mut out: Vec<BTreeSet<String>> = (0..1usize << n)
            .filter(|&m| {
                self.bits[m] && (0..n).all(|b| m >> b & 1 == 0 || !self.bits[m & !(1 << b)])
            })
            .map(|m| self.subset(m))
            .collect();
        out.sort();
        out
    }

    /// Inclusion-minimal sets whose absence makes the function false.
    pub fn maxterms(&self) -> Vec<BTreeSet<String>> {
        let n = self.support.len();
        let full = (1usize << n) - 1;
        let mut out: Vec<BTreeSet<String>> = (0..1usize << n)
            .filter(|&m| {
                !self.bits[full & !m]
                    && (0..n).all(|b| m >> b & 1 == 0 || self.bits[full & !(m & !(1 << b))])
            })
            .map(|m| self.subset(m))
            .collect();
        out.sort();
        out
    }
}

/// Minterms of a formula via its truth table.
pub fn minterms(a: &Formula) -> Result<Vec<BTreeSet<String>>> {
    Ok(MonotoneFunctionTable::from_formula(a)?.minterms())
}

/// Maxterms of a formula via its truth table.
pub fn maxterms(a: &Formula) -> Result<Vec<BTreeSet<String>>> {
    Ok(MonotoneFunctionTable::from_formula(a)?.maxterms())
}

/// Associativity/commutativity equivalence of two read-once formulas,
/// decided by comparing relation webs up to label-preserving isomorphism.
pub fn ac_equivalent(a: &Formula, b: &Formula) -> Result<bool> {
    if !a.is_read_once() || !b.is_read_once() {
        return Err(Error::input("ac_equivalent requires read-once formulas"));
    }
    Ok(web(a).is_label_isomorphic(&web(b)))
}

/// Read-once synthesis: converts a P4-free graph to a formula by reading its
/// decomposition tree (which then contains no prime node).
pub fn cotree_to_formula(g: &LabelledGraph) -> Result<Formula> {
    if let Some([a, b, c, d]) = g.find_induced_p4() {
        return Err(Error::input(format!(
            "graph is not P4-free: nodes {a}, {b}, {c}, {d} induce a 4-path"
        )));
    }
    let tree = decompose(g)?;
    fn convert(t: &DecTree) -> Formula {
        match t {
            DecTree::Leaf { label, .. } => Formula::Var(label.clone()),
            DecTree::Or { children, .. } => {
                Formula::or(children.iter().map(convert).collect())
            }
            DecTree::And { children, .. } => {
                Formula::and(children.iter().map(convert).collect())
            }
            DecTree::Prime { .. } => unreachable!("P4-free graphs decompose without prime nodes"),
        }
    }
    Ok(convert(&tree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::node_set;
    use crate::semantics::parse_assignment;

    fn paper_formula() -> Formula {
        parse_formula("((v | (w & x)) | y) & z").unwrap()
    }

    #[test]
    fn parse_respects_precedence() {
        let f = parse_formula("x & (y | z)").unwrap();
        assert_eq!(
            f,
            Formula::and(vec![
                Formula::var("x"),
                Formula::or(vec![Formula::var("y"), Formula::var("z")])
            ])
        );
    }

    #[test]
    fn parse_flattens_chains() {
        let f = parse_formula("a | b | c").unwrap();
        assert_eq!(
            f,
            Formula::Or(vec![
                Formula::var("a"),
                Formula::var("b"),
                Formula::var("c")
            ])
        );
    }

    #[test]
    fn parse_reports_syntax_errors() {
        assert!(parse_formula("x &").is_err());
        assert!(parse_formula("( x | y").is_err());
        assert!(parse_formula("x y").is_err());
        assert!(parse_formula("").is_err());
    }

    #[test]
    fn evaluation_matches_the_worked_example() {
        let f = paper_formula();
        assert!(eval_formula(&f, &parse_assignment("w,y,z")));
        assert!(!eval_formula(&f, &parse_assignment("v,w,y")));
        // Any positive formula is true on all of its variables.
        let all: Assignment = f.variables();
        assert!(eval_formula(&f, &all));
    }

    #[test]
    fn web_of_the_worked_example() {
        let g = web(&paper_formula());
        assert_eq!(g.node_count(), 5);
        let expected_edges = [
            ("z", "v"),
            ("z", "w"),
            ("z", "x"),
            ("z", "y"),
            ("w", "x"),
        ];
        assert_eq!(g.edge_count(), expected_edges.len());
        for (u, v) in expected_edges {
            assert!(g.has_edge(&u.into(), &v.into()), "{u}-{v}");
        }
    }

    #[test]
    fn web_degenerate_cases() {
        let single = web(&Formula::var("x"));
        assert_eq!(single.node_count(), 1);
        assert_eq!(single.edge_count(), 0);
        let pair = web(&parse_formula("w & x").unwrap());
        assert_eq!(pair.edge_count(), 1);
    }

    #[test]
    fn web_of_non_read_once_uses_repeated_labels() {
        let g = web(&parse_formula("x | x").unwrap());
        assert_eq!(g.node_count(), 2);
        assert!(!g.is_linear());
        assert_eq!(g.label_universe().len(), 1);
    }

    #[test]
    fn minterms_of_the_worked_example() {
        let f = paper_formula();
        let mt = minterms(&f).unwrap();
        let expected: BTreeSet<BTreeSet<String>> = [
            node_set(["v", "z"]),
            node_set(["w", "x", "z"]),
            node_set(["y", "z"]),
        ]
        .into_iter()
        .map(|s| s.into_iter().map(|v| v.as_str().to_string()).collect())
        .collect();
        assert_eq!(mt.into_iter().collect::<BTreeSet<_>>(), expected);
    }

    #[test]
    fn minterms_and_maxterms_of_tiny_formulas() {
        let x_or_y = parse_formula("x | y").unwrap();
        let mt = minterms(&x_or_y).unwrap();
        assert_eq!(mt.len(), 2);
        let xt = maxterms(&x_or_y).unwrap();
        assert_eq!(xt, vec![["x".to_string(), "y".to_string()].into_iter().collect()]);

        let just_x = Formula::var("x");
        assert_eq!(minterms(&just_x).unwrap().len(), 1);
    }

    #[test]
    fn ac_equivalence_of_the_two_paper_presentations() {
        let a = paper_formula();
        let b = parse_formula("z & (((x & w) | y) | v)").unwrap();
        assert!(ac_equivalent(&a, &b).unwrap());
        assert!(ac_equivalent(&a, &a).unwrap());
        let c = parse_formula("x & y").unwrap();
        let d = parse_formula("x | y").unwrap();
        assert!(!ac_equivalent(&c, &d).unwrap());
        assert!(ac_equivalent(&parse_formula("x & x").unwrap(), &c).is_err());
    }

    #[test]
    fn cotree_round_trips_the_worked_example() {
        let g = web(&paper_formula());
        let f = cotree_to_formula(&g).unwrap();
        assert!(ac_equivalent(&f, &paper_formula()).unwrap());
        assert!(web(&f).is_label_isomorphic(&g));
    }

    #[test]
    fn cotree_of_singleton_and_c4() {
        let single = LabelledGraph::linear(["x"], []).unwrap();
        assert_eq!(cotree_to_formula(&single).unwrap(), Formula::var("x"));

        let c4 = LabelledGraph::linear(
            ["a", "b", "c", "d"],
            [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        )
        .unwrap();
        let f = cotree_to_formula(&c4).unwrap();
        let expected = parse_formula("(a | c) & (b | d)").unwrap();
        assert!(ac_equivalent(&f, &expected).unwrap());
    }

    #[test]
    fn cotree_rejects_p4_with_witness() {
        let p4 = LabelledGraph::linear(
            ["w", "x", "y", "z"],
            [("w", "x"), ("x", "y"), ("y", "z")],
        )
        .unwrap();
        let err = cotree_to_formula(&p4).unwrap_err();
        assert!(err.to_string().contains("4-path"));
    }

    #[test]
    fn monotone_table_rejects_non_monotone_bits() {
        // f({}) = 1 but f({x}) = 0.
        let r = MonotoneFunctionTable::new(vec!["x".into()], vec![true, false]);
        assert!(r.is_err());
    }

    #[test]
    fn display_round_trips_through_the_parser() {
        for text in ["x & (y | z)", "a | b | c", "((v | (w & x)) | y) & z"] {
            let f = parse_formula(text).unwrap();
            let again = parse_formula(&f.to_string()).unwrap();
            assert_eq!(f, again);
        }
    }
}
