//! Complexity-reduction constructions and the brute-force oracles that
//! certify them at desk scale.
//!
//! A CNF maps to a graph whose nodes are its literal occurrences plus one
//! fresh clause node per clause; the formula is satisfiable exactly when
//! the graph evaluates to 0 on the clause-node assignment. A quantified
//! formula `∀x.∃y.CNF` (normalised so every clause carries both kinds of
//! literal) maps to two graphs over the literal occurrences; the formula is
//! true exactly when the first disjunctively entails the second. Both
//! equivalences are exercised exhaustively in the tests against the
//! brute-force oracles below.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{LabelledGraph, NodeId};
use crate::semantics::Assignment;

/// A signed propositional literal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Literal {
    pub var: String,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: impl Into<String>) -> Literal {
        Literal {
            var: var.into(),
            positive: true,
        }
    }

    pub fn neg(var: impl Into<String>) -> Literal {
        Literal {
            var: var.into(),
            positive: false,
        }
    }

    fn sign_char(&self) -> char {
        if self.positive {
            '+'
        } else {
            '-'
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            write!(f, "~")?;
        }
        f.write_str(&self.var)
    }
}

/// A CNF: declared variables and clauses of literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfInstance {
    pub variables: Vec<String>,
    pub clauses: Vec<Vec<Literal>>,
}

impl CnfInstance {
    pub fn new(variables: Vec<String>, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        let instance = CnfInstance { variables, clauses };
        instance.check()?;
        Ok(instance)
    }

    fn check(&self) -> Result<()> {
        let declared: BTreeSet<&String> = self.variables.iter().collect();
        for clause in &self.clauses {
            for lit in clause {
                if !declared.contains(&lit.var) {
                    return Err(Error::input(format!(
                        "literal over undeclared variable `{}`",
                        lit.var
                    )));
                }
            }
        }
        Ok(())
    }

    fn satisfied_by(&self, x: &BTreeSet<String>) -> bool {
        self.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|lit| lit.positive == x.contains(&lit.var))
        })
    }
}

/// A `∀x.∃y.CNF` instance with disjoint quantifier blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Qbf2Instance {
    pub universals: Vec<String>,
    pub existentials: Vec<String>,
    pub clauses: Vec<Vec<Literal>>,
}

impl Qbf2Instance {
    pub fn new(
        universals: Vec<String>,
        existentials: Vec<String>,
        clauses: Vec<Vec<Literal>>,
    ) -> Result<Self> {
        for u in &universals {
            if existentials.contains(u) {
                return Err(Error::input(format!(
                    "variable `{u}` appears in both quantifier blocks"
                )));
            }
        }
        let declared: BTreeSet<&String> = universals.iter().chain(&existentials).collect();
        for clause in &clauses {
            for lit in clause {
                if !declared.contains(&lit.var) {
                    return Err(Error::input(format!(
                        "literal over undeclared variable `{}`",
                        lit.var
                    )));
                }
            }
        }
        Ok(Qbf2Instance {
            universals,
            existentials,
            clauses,
        })
    }

    fn is_universal(&self, var: &str) -> bool {
        self.universals.iter().any(|v| v == var)
    }
}

const ORACLE_VARIABLE_BUDGET: usize = 20;

/// Exhaustive satisfiability over all assignments to the declared
/// variables.
pub fn brute_force_sat(c: &CnfInstance) -> Result<bool> {
    if c.variables.len() > ORACLE_VARIABLE_BUDGET {
        return Err(Error::resource(format!(
            "{} variables exceed the oracle budget of {ORACLE_VARIABLE_BUDGET}",
            c.variables.len()
        )));
    }
    for m in 0..1usize << c.variables.len() {
        let x: BTreeSet<String> = c
            .variables
            .iter()
            .enumerate()
            .filter(|(i, _)| m >> i & 1 == 1)
            .map(|(_, v)| v.clone())
            .collect();
        if c.satisfied_by(&x) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Exhaustive truth of `∀x.∃y.matrix`.
pub fn brute_force_qbf2(q: &Qbf2Instance) -> Result<bool> {
    let total = q.universals.len() + q.existentials.len();
    if total > ORACLE_VARIABLE_BUDGET {
        return Err(Error::resource(format!(
            "{total} variables exceed the oracle budget of {ORACLE_VARIABLE_BUDGET}"
        )));
    }
    let matrix_true = |x: &BTreeSet<String>, y: &BTreeSet<String>| {
        q.clauses.iter().all(|clause| {
            clause.iter().any(|lit| {
                let val = x.contains(&lit.var) || y.contains(&lit.var);
                lit.positive == val
            })
        })
    };
    for mx in 0..1usize << q.universals.len() {
        let x: BTreeSet<String> = q
            .universals
            .iter()
            .enumerate()
            .filter(|(i, _)| mx >> i & 1 == 1)
            .map(|(_, v)| v.clone())
            .collect();
        let mut witnessed = false;
        for my in 0..1usize << q.existentials.len() {
            let y: BTreeSet<String> = q
                .existentials
                .iter()
                .enumerate()
                .filter(|(i, _)| my >> i & 1 == 1)
                .map(|(_, v)| v.clone())
                .collect();
            if matrix_true(&x, &y) {
                witnessed = true;
                break;
            }
        }
        if !witnessed {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of [`normalize_qbf`]: either a conforming instance or a truth
/// value the preprocessing already settled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizeOutcome {
    Normalized(Qbf2Instance),
    Resolved(bool),
}

/// Brings a `∀∃` instance into the convention the entailment construction
/// needs: tautological clauses are dropped, single-polarity variables are
/// substituted by constants, and any clause missing a universal or an
/// existential literal is split on the least variable of the missing kind.
/// The truth value is preserved throughout.
pub fn normalize_qbf(q: &Qbf2Instance) -> Result<NormalizeOutcome> {
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    for clause in &q.clauses {
        let mut c: Vec<Literal> = Vec::new();
        for lit in clause {
            if !c.contains(lit) {
                c.push(lit.clone());
            }
        }
        let tautological = c.iter().any(|l| {
            c.contains(&Literal {
                var: l.var.clone(),
                positive: !l.positive,
            })
        });
        if !tautological {
            clauses.push(c);
        }
    }
    let mut universals = q.universals.clone();
    let mut existentials = q.existentials.clone();

    // Substitute constants for single-polarity variables until stable.
    loop {
        if clauses.iter().any(Vec::is_empty) {
            return Ok(NormalizeOutcome::Resolved(false));
        }
        if clauses.is_empty() {
            return Ok(NormalizeOutcome::Resolved(true));
        }
        let mut changed = false;
        let all_vars: Vec<String> = universals.iter().chain(&existentials).cloned().collect();
        for var in all_vars {
            let pos = clauses.iter().flatten().any(|l| l.var == var && l.positive);
            let neg = clauses.iter().flatten().any(|l| l.var == var && !l.positive);
            if pos && neg {
                continue;
            }
            let is_universal = universals.contains(&var);
            if !pos && !neg {
                // Unused variable: just drop the binder.
                universals.retain(|v| v != &var);
                existentials.retain(|v| v != &var);
                changed = true;
                continue;
            }
            // A universal is set against its only polarity, falsifying its
            // literals; an existential is set with it, satisfying its
            // clauses.
            if is_universal {
                for clause in &mut clauses {
                    clause.retain(|l| l.var != var);
                }
            } else {
                clauses.retain(|clause| !clause.iter().any(|l| l.var == var));
            }
            universals.retain(|v| v != &var);
            existentials.retain(|v| v != &var);
            changed = true;
        }
        if !changed {
            break;
        }
    }
    if clauses.is_empty() {
        return Ok(NormalizeOutcome::Resolved(true));
    }
    if universals.is_empty() || existentials.is_empty() {
        // No variable of one kind survives, so the clause convention is
        // unreachable; settle the instance outright instead.
        let residual = Qbf2Instance::new(universals, existentials, clauses)?;
        return Ok(NormalizeOutcome::Resolved(brute_force_qbf2(&residual)?));
    }

    // Split clauses missing a universal or existential literal.
    loop {
        let missing = clauses.iter().position(|clause| {
            let has_u = clause.iter().any(|l| universals.contains(&l.var));
            let has_e = clause.iter().any(|l| existentials.contains(&l.var));
            !has_u || !has_e
        });
        let Some(idx) = missing else { break };
        let clause = clauses[idx].clone();
        let has_u = clause.iter().any(|l| universals.contains(&l.var));
        let z = if has_u {
            existentials.iter().min().unwrap().clone()
        } else {
            universals.iter().min().unwrap().clone()
        };
        let mut with_pos = clause.clone();
        with_pos.push(Literal::pos(z.clone()));
        let mut with_neg = clause;
        with_neg.push(Literal::neg(z));
        clauses.splice(idx..=idx, [with_pos, with_neg]);
    }
    Ok(NormalizeOutcome::Normalized(Qbf2Instance::new(
        universals,
        existentials,
        clauses,
    )?))
}

fn occurrence_id(lit: &Literal, clause: usize, position: usize) -> NodeId {
    NodeId::new(format!(
        "{}{}#{}#{}",
        lit.var,
        lit.sign_char(),
        clause + 1,
        position + 1
    ))
}

/// The satisfiability construction: nodes are literal occurrences plus one
/// clause node `c<n>` per clause; edges join occurrences within a clause,
/// dual occurrences of the same variable, and each occurrence to its clause
/// node. Returns the graph and the clause-node assignment `C`; the CNF is
/// satisfiable exactly when the graph evaluates to 0 on `C`. Clauses
/// containing dual literals are deleted first.
pub fn sat_to_evaluation(c: &CnfInstance) -> Result<(LabelledGraph, Assignment)> {
    let clauses: Vec<&Vec<Literal>> = c
        .clauses
        .iter()
        .filter(|clause| {
            !clause.iter().any(|l| {
                clause.contains(&Literal {
                    var: l.var.clone(),
                    positive: !l.positive,
                })
            })
        })
        .collect();
    if clauses.is_empty() {
        // A trivially true matrix: a single non-clause node gives the
        // stable set that witnesses evaluation to 0.
        let g = LabelledGraph::linear(["t"], [])?;
        return Ok((g, Assignment::new()));
    }
    let mut nodes: Vec<(NodeId, String)> = Vec::new();
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let mut occ_ids: Vec<Vec<NodeId>> = Vec::new();
    let mut assignment = Assignment::new();
    for (n, clause) in clauses.iter().enumerate() {
        let mut ids = Vec::new();
        for (p, lit) in clause.iter().enumerate() {
            let id = occurrence_id(lit, n, p);
            nodes.push((id.clone(), id.as_str().to_string()));
            ids.push(id);
        }
        let cn = NodeId::new(format!("c{}", n + 1));
        assignment.insert(cn.as_str().to_string());
        nodes.push((cn.clone(), cn.as_str().to_string()));
        // Within-clause clique, with the clause node joined to it.
        for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                edges.push((ids[i].clone(), ids[j].clone()));
            }
            edges.push((ids[i].clone(), cn.clone()));
        }
        occ_ids.push(ids);
    }
    // Dual occurrences of the same variable across all clauses.
    for (n, clause) in clauses.iter().enumerate() {
        for (p, lit) in clause.iter().enumerate() {
            for (m, other) in clauses.iter().enumerate() {
                for (q, lit2) in other.iter().enumerate() {
                    if (n, p) < (m, q) && lit.var == lit2.var && lit.positive != lit2.positive {
                        edges.push((occ_ids[n][p].clone(), occ_ids[m][q].clone()));
                    }
                }
            }
        }
    }
    Ok((LabelledGraph::new(nodes, edges)?, assignment))
}

/// The entailment construction for a normalised `∀∃` instance: both graphs
/// share the literal-occurrence nodes; the left one has within-clause
/// cliques and dual existential pairs, the right one only dual universal
/// pairs. The instance is true exactly when the left graph disjunctively
/// entails the right one.
pub fn qbf_to_entailment(q: &Qbf2Instance) -> Result<(LabelledGraph, LabelledGraph)> {
    match normalize_qbf(q)? {
        NormalizeOutcome::Normalized(n) if n == *q => {}
        _ => {
            return Err(Error::input(
                "instance is not in the normalised clause convention; run normalize_qbf first",
            ))
        }
    }
    let mut nodes: Vec<(NodeId, String)> = Vec::new();
    let mut occ: Vec<(NodeId, Literal, usize)> = Vec::new();
    for (n, clause) in q.clauses.iter().enumerate() {
        for (p, lit) in clause.iter().enumerate() {
            let id = occurrence_id(lit, n, p);
            nodes.push((id.clone(), id.as_str().to_string()));
            occ.push((id, lit.clone(), n));
        }
    }
    let mut g_edges: Vec<(NodeId, NodeId)> = Vec::new();
    let mut h_edges: Vec<(NodeId, NodeId)> = Vec::new();
    for (i, (id_a, lit_a, cl_a)) in occ.iter().enumerate() {
        for (id_b, lit_b, cl_b) in occ.iter().skip(i + 1) {
            let dual = lit_a.var == lit_b.var && lit_a.positive != lit_b.positive;
            if cl_a == cl_b {
                g_edges.push((id_a.clone(), id_b.clone()));
            } else if dual && !q.is_universal(&lit_a.var) {
                g_edges.push((id_a.clone(), id_b.clone()));
            }
            if dual && q.is_universal(&lit_a.var) {
                h_edges.push((id_a.clone(), id_b.clone()));
            }
        }
    }
    let g = LabelledGraph::new(nodes.clone(), g_edges)?;
    let h = LabelledGraph::new(nodes, h_edges)?;
    Ok((g, h))
}

/// Parses DIMACS CNF: `c` comments, a `p cnf <vars> <clauses>` header, then
/// zero-terminated clauses of signed integers. Variable `i` is named `x<i>`.
pub fn parse_dimacs(text: &str) -> Result<CnfInstance> {
    let mut n_vars: Option<usize> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            match parts.as_slice() {
                ["cnf", v, _] => {
                    n_vars = Some(v.parse().map_err(|_| {
                        Error::parse(lineno + 1, 1, "bad variable count in header")
                    })?);
                }
                _ => {
                    return Err(Error::parse(
                        lineno + 1,
                        1,
                        "expected `p cnf <vars> <clauses>`",
                    ))
                }
            }
            continue;
        }
        for tok in line.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| Error::parse(lineno + 1, 1, format!("bad literal `{tok}`")))?;
            if v == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(Literal {
                    var: format!("x{}", v.unsigned_abs()),
                    positive: v > 0,
                });
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    let n = n_vars.ok_or_else(|| Error::input("missing `p cnf` header"))?;
    let variables = (1..=n).map(|i| format!("x{i}")).collect();
    CnfInstance::new(variables, clauses)
}

/// Parses QDIMACS with exactly one `a` block followed by one `e` block.
pub fn parse_qdimacs(text: &str) -> Result<Qbf2Instance> {
    let mut universals: Vec<String> = Vec::new();
    let mut existentials: Vec<String> = Vec::new();
    let mut body = String::new();
    let mut n_vars = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            match parts.as_slice() {
                ["cnf", v, _] => {
                    n_vars = v
                        .parse()
                        .map_err(|_| Error::parse(lineno + 1, 1, "bad variable count"))?;
                }
                _ => {
                    return Err(Error::parse(
                        lineno + 1,
                        1,
                        "expected `p cnf <vars> <clauses>`",
                    ))
                }
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("a ") {
            collect_block(rest, &mut universals, lineno)?;
            continue;
        }
        if let Some(rest) = line.strip_prefix("e ") {
            collect_block(rest, &mut existentials, lineno)?;
            continue;
        }
        body.push_str(line);
        body.push('\n');
    }
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    for tok in body.split_whitespace() {
        let v: i64 = tok
            .parse()
            .map_err(|_| Error::input(format!("bad literal `{tok}`")))?;
        if v == 0 {
            clauses.push(std::mem::take(&mut current));
        } else {
            current.push(Literal {
                var: format!("x{}", v.unsigned_abs()),
                positive: v > 0,
            });
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    // Unquantified variables default to the existential block.
    let quantified: BTreeSet<String> = universals.iter().chain(&existentials).cloned().collect();
    for i in 1..=n_vars {
        let name = format!("x{i}");
        if !quantified.contains(&name) {
            existentials.push(name);
        }
    }
    Qbf2Instance::new(universals, existentials, clauses)
}

fn collect_block(rest: &str, out: &mut Vec<String>, lineno: usize) -> Result<()> {
    for tok in rest.split_whitespace() {
        let v: i64 = tok
            .parse()
            .map_err(|_| Error::parse(lineno + 1, 1, format!("bad variable `{tok}`")))?;
        if v != 0 {
            out.push(format!("x{v}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{entails_or, evaluate};

    fn cnf(vars: &[&str], clauses: &[&[(&str, bool)]]) -> CnfInstance {
        CnfInstance::new(
            vars.iter().map(|v| v.to_string()).collect(),
            clauses
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|(v, pos)| Literal {
                            var: v.to_string(),
                            positive: *pos,
                        })
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    fn qbf(u: &[&str], e: &[&str], clauses: &[&[(&str, bool)]]) -> Qbf2Instance {
        Qbf2Instance::new(
            u.iter().map(|v| v.to_string()).collect(),
            e.iter().map(|v| v.to_string()).collect(),
            clauses
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|(v, pos)| Literal {
                            var: v.to_string(),
                            positive: *pos,
                        })
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn brute_force_sat_basics() {
        assert!(!brute_force_sat(&cnf(&["x"], &[&[("x", true)], &[("x", false)]])).unwrap());
        assert!(brute_force_sat(&cnf(&["x"], &[])).unwrap());
        assert!(brute_force_sat(&cnf(&["x", "y"], &[&[("x", true), ("y", false)]])).unwrap());
    }

    #[test]
    fn sat_construction_on_tiny_formulas() {
        // A single positive clause is satisfiable: the occurrence node is a
        // stable set disjoint from the clause nodes.
        let (g, c) = sat_to_evaluation(&cnf(&["x"], &[&[("x", true)]])).unwrap();
        assert!(evaluate(&g, &c).unwrap().contains_zero());

        // x and not-x is unsatisfiable.
        let (g, c) = sat_to_evaluation(&cnf(&["x"], &[&[("x", true)], &[("x", false)]])).unwrap();
        assert!(!evaluate(&g, &c).unwrap().contains_zero());

        // The empty clause list is trivially true.
        let (g, c) = sat_to_evaluation(&cnf(&["x"], &[])).unwrap();
        assert!(evaluate(&g, &c).unwrap().contains_zero());

        // Tautological clauses are deleted first.
        let taut = cnf(&["x", "y"], &[&[("x", true), ("x", false)], &[("y", true)]]);
        let (g, c) = sat_to_evaluation(&taut).unwrap();
        assert_eq!(c.len(), 1);
        assert!(evaluate(&g, &c).unwrap().contains_zero());
    }

    #[test]
    fn normalize_splits_clauses_missing_a_kind() {
        // {x1} has no existential literal: it splits on the least
        // existential variable.
        let q = qbf(
            &["x1"],
            &["y1"],
            &[
                &[("x1", true)],
                &[("x1", false), ("y1", true)],
                &[("x1", true), ("y1", false)],
            ],
        );
        let out = normalize_qbf(&q).unwrap();
        let NormalizeOutcome::Normalized(n) = out else {
            panic!("expected a normalised instance");
        };
        assert_eq!(n.clauses.len(), 4);
        for clause in &n.clauses {
            assert!(clause.iter().any(|l| n.is_universal(&l.var)));
            assert!(clause.iter().any(|l| !n.is_universal(&l.var)));
        }
        assert_eq!(brute_force_qbf2(&q).unwrap(), brute_force_qbf2(&n).unwrap());
    }

    #[test]
    fn normalize_keeps_conforming_instances() {
        let q = qbf(
            &["x1"],
            &["y1"],
            &[
                &[("x1", true), ("y1", true)],
                &[("x1", false), ("y1", false)],
            ],
        );
        assert_eq!(
            normalize_qbf(&q).unwrap(),
            NormalizeOutcome::Normalized(q.clone())
        );
    }

    #[test]
    fn normalize_resolves_degenerate_instances() {
        // Single-polarity existential: y goes true, its clause vanishes.
        let q = qbf(&["x1"], &["y1"], &[&[("y1", true)]]);
        assert_eq!(normalize_qbf(&q).unwrap(), NormalizeOutcome::Resolved(true));

        // Single-polarity universal goes false and empties the clause.
        let q = qbf(&["x1"], &["y1"], &[&[("x1", true)]]);
        assert_eq!(
            normalize_qbf(&q).unwrap(),
            NormalizeOutcome::Resolved(false)
        );
    }

    #[test]
    fn qbf_construction_matches_the_oracle_on_named_instances() {
        // True: for every x there is y with (x|y) and (~x|~y): y = ~x.
        let q_true = qbf(
            &["x1"],
            &["y1"],
            &[
                &[("x1", true), ("y1", true)],
                &[("x1", false), ("y1", false)],
            ],
        );
        assert!(brute_force_qbf2(&q_true).unwrap());
        let (g, h) = qbf_to_entailment(&q_true).unwrap();
        assert!(entails_or(&g, &h).unwrap());

        // False: the clauses force y = ~x and y = x simultaneously.
        let q_false = qbf(
            &["x1"],
            &["y1"],
            &[
                &[("x1", true), ("y1", true)],
                &[("x1", false), ("y1", true)],
                &[("y1", false), ("x1", true)],
                &[("y1", false), ("x1", false)],
            ],
        );
        assert!(!brute_force_qbf2(&q_false).unwrap());
        let (g, h) = qbf_to_entailment(&q_false).unwrap();
        assert!(!entails_or(&g, &h).unwrap());
    }

    #[test]
    fn qbf_construction_rejects_non_normalised_input() {
        let q = qbf(&["x1"], &["y1"], &[&[("x1", true)]]);
        assert!(qbf_to_entailment(&q).is_err());
    }

    #[test]
    fn dimacs_round_trip() {
        let text = "c example\np cnf 3 2\n1 -2 0\n2 3 0\n";
        let c = parse_dimacs(text).unwrap();
        assert_eq!(c.variables.len(), 3);
        assert_eq!(c.clauses.len(), 2);
        assert_eq!(c.clauses[0][1], Literal::neg("x2"));
        assert!(brute_force_sat(&c).unwrap());
    }

    #[test]
    fn qdimacs_parses_blocks() {
        let text = "p cnf 2 2\na 1 0\ne 2 0\n1 2 0\n-1 -2 0\n";
        let q = parse_qdimacs(text).unwrap();
        assert_eq!(q.universals, vec!["x1"]);
        assert_eq!(q.existentials, vec!["x2"]);
        assert!(brute_force_qbf2(&q).unwrap());
    }

    #[test]
    fn dimacs_rejects_garbage() {
        assert!(parse_dimacs("1 2 0\n").is_err()); // missing header
        assert!(parse_dimacs("p cnf 2 1\n1 nope 0\n").is_err());
    }
}
