//! The evaluation game on decomposition trees.
//!
//! Two players walk the tree: Eloise chooses at `or` nodes, Abelard at
//! `and` nodes, and at a prime node Eloise names a maximal clique of the
//! quotient while Abelard names a maximal stable set. The play continues on
//! the unique block in their intersection, or ends in a deadlock when the
//! chosen sets are disjoint. The outcome of a completed play is a variable;
//! under an assignment Eloise wins when the outcome is true, Abelard when
//! it is false, and a deadlock is a draw.
//!
//! Strategies are positional: one choice per relevant tree node. A *static*
//! strategy fixes a prime-node choice outright; a *reactionary* strategy
//! (for a designated global second player) maps the opponent's choice at
//! that node to an answer. The distinction matters: the determinacy
//! theorems for the two modes characterise different evaluation bits.

use std::collections::BTreeMap;

use crate::decompose::{decompose, DecTree};
use crate::error::{Error, Result};
use crate::graph::{LabelledGraph, NodeSet};
use crate::semantics::{evaluate, Assignment};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Player {
    Eloise,
    Abelard,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Eloise => Player::Abelard,
            Player::Abelard => Player::Eloise,
        }
    }
}

impl std::fmt::Display for Player {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Player::Eloise => "Eloise",
            Player::Abelard => "Abelard",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Goal {
    Win,
    DrawOrWin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Static,
    Reactionary,
}

/// Address of a tree node: child indices from the root.
pub type TreePath = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategyChoice {
    /// Child index at an `or` (Eloise) or `and` (Abelard) node.
    Child(usize),
    /// Static prime-node choice: index into the canonical `MC`/`MS` list of
    /// the quotient (cliques for Eloise, stable sets for Abelard).
    PrimePick(usize),
    /// Reactionary prime-node choice: opponent's index to own index.
    PrimeReact(BTreeMap<usize, usize>),
}

/// A player's positional choice table over a decomposition tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    pub player: Player,
    pub mode: Mode,
    pub choices: BTreeMap<TreePath, StrategyChoice>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameOutcome {
    Label(String),
    Deadlock,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Winner {
    Eloise,
    Abelard,
    Draw,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlayEvent {
    Child {
        player: Player,
        index: usize,
    },
    Prime {
        eloise: usize,
        abelard: usize,
        /// Child index the play continued on; `None` is a deadlock.
        continued: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayStep {
    pub path: TreePath,
    pub event: PlayEvent,
}

/// A completed play: the root-to-stop trace and its outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Play {
    pub steps: Vec<PlayStep>,
    pub outcome: GameOutcome,
}

/// Precomputed game form of a decomposition tree: per prime node the
/// canonical clique/stable-set option lists as sets of child indices.
pub struct GameTree {
    root: GameNode,
}

struct GameNode {
    kind: GameNodeKind,
}

enum GameNodeKind {
    Leaf {
        label: String,
    },
    Or {
        children: Vec<GameNode>,
    },
    And {
        children: Vec<GameNode>,
    },
    Prime {
        children: Vec<GameNode>,
        /// Maximal cliques of the quotient, as child-index sets.
        mc: Vec<Vec<usize>>,
        /// Maximal stable sets of the quotient, as child-index sets.
        ms: Vec<Vec<usize>>,
    },
}

impl GameTree {
    pub fn new(g: &LabelledGraph) -> Result<GameTree> {
        let tree = decompose(g)?;
        Ok(GameTree {
            root: build_node(&tree)?,
        })
    }

    /// Legal option count per decision node of `player`, used for strategy
    /// space budgeting.
    fn option_counts(&self, player: Player) -> Vec<(TreePath, usize)> {
        let mut out = Vec::new();
        collect_options(&self.root, player, &mut Vec::new(), &mut out);
        out
    }
}

fn build_node(t: &DecTree) -> Result<GameNode> {
    Ok(GameNode {
        kind: match t {
            DecTree::Leaf { label, .. } => GameNodeKind::Leaf {
                label: label.clone(),
            },
            DecTree::Or { children, .. } => GameNodeKind::Or {
                children: children.iter().map(build_node).collect::<Result<_>>()?,
            },
            DecTree::And { children, .. } => GameNodeKind::And {
                children: children.iter().map(build_node).collect::<Result<_>>()?,
            },
            DecTree::Prime {
                quotient, children, ..
            } => {
                let reps: Vec<_> = children
                    .iter()
                    .map(|c| c.cover().iter().next().unwrap().clone())
                    .collect();
                let to_indices = |sets: Vec<NodeSet>| -> Vec<Vec<usize>> {
                    sets.iter()
                        .map(|s| {
                            reps.iter()
                                .enumerate()
                                .filter(|(_, r)| s.contains(*r))
                                .map(|(i, _)| i)
                                .collect()
                        })
                        .collect()
                };
                GameNodeKind::Prime {
                    mc: to_indices(quotient.max_cliques()?),
                    ms: to_indices(quotient.max_stable_sets()?),
                    children: children.iter().map(build_node).collect::<Result<_>>()?,
                }
            }
        },
    })
}

fn collect_options(
    node: &GameNode,
    player: Player,
    path: &mut TreePath,
    out: &mut Vec<(TreePath, usize)>,
) {
    match &node.kind {
        GameNodeKind::Leaf { .. } => {}
        GameNodeKind::Or { children } => {
            if player == Player::Eloise {
                out.push((path.clone(), children.len()));
            }
            descend(children, player, path, out);
        }
        GameNodeKind::And { children } => {
            if player == Player::Abelard {
                out.push((path.clone(), children.len()));
            }
            descend(children, player, path, out);
        }
        GameNodeKind::Prime { children, mc, ms } => {
            let n = match player {
                Player::Eloise => mc.len(),
                Player::Abelard => ms.len(),
            };
            out.push((path.clone(), n));
            descend(children, player, path, out);
        }
    }
}

fn descend(
    children: &[GameNode],
    player: Player,
    path: &mut TreePath,
    out: &mut Vec<(TreePath, usize)>,
) {
    for (i, c) in children.iter().enumerate() {
        path.push(i);
        collect_options(c, player, path, out);
        path.pop();
    }
}

/// Runs one play of the game. If either strategy is reactionary, `second`
/// must name that player (only the second mover may react); at prime nodes
/// the second player's choice is their map applied to the first player's
/// choice at that node.
pub fn play(
    g: &LabelledGraph,
    eloise: &Strategy,
    abelard: &Strategy,
    second: Option<Player>,
) -> Result<Play> {
    if eloise.player != Player::Eloise || abelard.player != Player::Abelard {
        return Err(Error::input("strategies passed for the wrong players"));
    }
    for s in [eloise, abelard] {
        if s.mode == Mode::Reactionary && second != Some(s.player) {
            return Err(Error::input(format!(
                "{} has a reactionary strategy but is not the designated second player",
                s.player
            )));
        }
    }
    let tree = GameTree::new(g)?;
    let mut steps = Vec::new();
    let mut node = &tree.root;
    let mut path: TreePath = Vec::new();
    loop {
        match &node.kind {
            GameNodeKind::Leaf { label } => {
                return Ok(Play {
                    steps,
                    outcome: GameOutcome::Label(label.clone()),
                });
            }
            GameNodeKind::Or { children } => {
                let i = child_choice(eloise, &path, children.len())?;
                steps.push(PlayStep {
                    path: path.clone(),
                    event: PlayEvent::Child {
                        player: Player::Eloise,
                        index: i,
                    },
                });
                path.push(i);
                node = &children[i];
            }
            GameNodeKind::And { children } => {
                let i = child_choice(abelard, &path, children.len())?;
                steps.push(PlayStep {
                    path: path.clone(),
                    event: PlayEvent::Child {
                        player: Player::Abelard,
                        index: i,
                    },
                });
                path.push(i);
                node = &children[i];
            }
            GameNodeKind::Prime { children, mc, ms } => {
                let (e_idx, a_idx) = match second {
                    Some(Player::Eloise) if eloise.mode == Mode::Reactionary => {
                        let a = prime_pick(abelard, &path, ms.len())?;
                        let e = prime_react(eloise, &path, a, mc.len())?;
                        (e, a)
                    }
                    Some(Player::Abelard) if abelard.mode == Mode::Reactionary => {
                        let e = prime_pick(eloise, &path, mc.len())?;
                        let a = prime_react(abelard, &path, e, ms.len())?;
                        (e, a)
                    }
                    _ => (
                        prime_pick(eloise, &path, mc.len())?,
                        prime_pick(abelard, &path, ms.len())?,
                    ),
                };
                let common: Vec<usize> = mc[e_idx]
                    .iter()
                    .filter(|i| ms[a_idx].contains(i))
                    .cloned()
                    .collect();
                debug_assert!(common.len() <= 1);
                let continued = common.first().copied();
                steps.push(PlayStep {
                    path: path.clone(),
                    event: PlayEvent::Prime {
                        eloise: e_idx,
                        abelard: a_idx,
                        continued,
                    },
                });
                match continued {
                    None => {
                        return Ok(Play {
                            steps,
                            outcome: GameOutcome::Deadlock,
                        })
                    }
                    Some(k) => {
                        path.push(k);
                        node = &children[k];
                    }
                }
            }
        }
    }
}

fn child_choice(s: &Strategy, path: &TreePath, n: usize) -> Result<usize> {
    match s.choices.get(path) {
        Some(StrategyChoice::Child(i)) if *i < n => Ok(*i),
        Some(StrategyChoice::Child(i)) => Err(Error::input(format!(
            "{} chose child {i} of {n} at {path:?}",
            s.player
        ))),
        _ => Err(Error::input(format!(
            "{} strategy does not cover tree node {path:?}",
            s.player
        ))),
    }
}

fn prime_pick(s: &Strategy, path: &TreePath, n: usize) -> Result<usize> {
    match s.choices.get(path) {
        Some(StrategyChoice::PrimePick(i)) if *i < n => Ok(*i),
        Some(StrategyChoice::PrimePick(i)) => Err(Error::input(format!(
            "{} chose option {i} of {n} at prime node {path:?}",
            s.player
        ))),
        _ => Err(Error::input(format!(
            "{} strategy does not cover prime node {path:?}",
            s.player
        ))),
    }
}

fn prime_react(s: &Strategy, path: &TreePath, opponent: usize, n: usize) -> Result<usize> {
    match s.choices.get(path) {
        Some(StrategyChoice::PrimeReact(map)) => match map.get(&opponent) {
            Some(i) if *i < n => Ok(*i),
            Some(i) => Err(Error::input(format!(
                "{} reacted with option {i} of {n} at {path:?}",
                s.player
            ))),
            None => Err(Error::input(format!(
                "{} reactionary map at {path:?} is not total (missing opponent option {opponent})",
                s.player
            ))),
        },
        _ => Err(Error::input(format!(
            "{} strategy has no reactionary map at prime node {path:?}",
            s.player
        ))),
    }
}

/// Who won a completed play under an assignment.
pub fn winner(p: &Play, x: &Assignment) -> Winner {
    match &p.outcome {
        GameOutcome::Deadlock => Winner::Draw,
        GameOutcome::Label(l) => {
            if x.contains(l) {
                Winner::Eloise
            } else {
                Winner::Abelard
            }
        }
    }
}

const STRATEGY_SPACE_BUDGET: u128 = 1_000_000;

fn space_size(counts: &[(TreePath, usize)]) -> u128 {
    counts
        .iter()
        .fold(1u128, |acc, (_, n)| acc.saturating_mul(*n as u128))
}

/// Whether `player` has a static strategy achieving `goal` against every
/// static strategy of the opponent, with a witness when one exists. The
/// search is an exhaustive per-subtree recursion (strategies are positional
/// so subtrees are independent).
pub fn exists_static_strategy(
    g: &LabelledGraph,
    x: &Assignment,
    player: Player,
    goal: Goal,
) -> Result<Option<Strategy>> {
    let tree = GameTree::new(g)?;
    check_budget(&tree)?;
    let mut choices = BTreeMap::new();
    let ok = solve_static(&tree.root, &mut Vec::new(), x, player, goal, &mut choices);
    Ok(if ok {
        let mut strategy = Strategy {
            player,
            mode: Mode::Static,
            choices,
        };
        fill_static_defaults(&tree, &mut strategy);
        Some(strategy)
    } else {
        None
    })
}

fn check_budget(tree: &GameTree) -> Result<()> {
    for p in [Player::Eloise, Player::Abelard] {
        let size = space_size(&tree.option_counts(p));
        if size > STRATEGY_SPACE_BUDGET {
            return Err(Error::resource(format!(
                "{p} has {size} candidate strategies, over the {STRATEGY_SPACE_BUDGET} budget"
            )));
        }
    }
    Ok(())
}

fn solve_static(
    node: &GameNode,
    path: &mut TreePath,
    x: &Assignment,
    player: Player,
    goal: Goal,
    choices: &mut BTreeMap<TreePath, StrategyChoice>,
) -> bool {
    match &node.kind {
        GameNodeKind::Leaf { label } => match player {
            Player::Eloise => x.contains(label),
            Player::Abelard => !x.contains(label),
        },
        GameNodeKind::Or { children } => solve_children(
            children,
            path,
            x,
            player,
            goal,
            choices,
            Player::Eloise,
        ),
        GameNodeKind::And { children } => solve_children(
            children,
            path,
            x,
            player,
            goal,
            choices,
            Player::Abelard,
        ),
        GameNodeKind::Prime { children, mc, ms } => {
            let solved: Vec<bool> = children
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    path.push(i);
                    let ok = solve_static(c, path, x, player, goal, choices);
                    path.pop();
                    ok
                })
                .collect();
            let (own, opp) = match player {
                Player::Eloise => (mc, ms),
                Player::Abelard => (ms, mc),
            };
            for (i, own_set) in own.iter().enumerate() {
                let all_ok = opp.iter().all(|opp_set| {
                    match own_set.iter().find(|k| opp_set.contains(k)) {
                        None => goal == Goal::DrawOrWin,
                        Some(&k) => solved[k],
                    }
                });
                if all_ok {
                    choices.insert(path.clone(), StrategyChoice::PrimePick(i));
                    return true;
                }
            }
            false
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn solve_children(
    children: &[GameNode],
    path: &mut TreePath,
    x: &Assignment,
    player: Player,
    goal: Goal,
    choices: &mut BTreeMap<TreePath, StrategyChoice>,
    chooser: Player,
) -> bool {
    if player == chooser {
        for (i, c) in children.iter().enumerate() {
            path.push(i);
            let ok = solve_static(c, path, x, player, goal, choices);
            path.pop();
            if ok {
                choices.insert(path.clone(), StrategyChoice::Child(i));
                return true;
            }
        }
        false
    } else {
        children.iter().enumerate().all(|(i, c)| {
            path.push(i);
            let ok = solve_static(c, path, x, player, goal, choices);
            path.pop();
            ok
        })
    }
}

/// Whether `player`, moving second at every prime node, has a reactionary
/// strategy achieving `goal` against every static strategy of the first
/// mover; returns a witness when one exists.
pub fn exists_reactionary_strategy(
    g: &LabelledGraph,
    x: &Assignment,
    player: Player,
    goal: Goal,
) -> Result<Option<Strategy>> {
    let tree = GameTree::new(g)?;
    check_budget(&tree)?;
    let mut choices = BTreeMap::new();
    let ok = solve_reactionary(&tree.root, &mut Vec::new(), x, player, goal, &mut choices);
    Ok(if ok {
        let mut strategy = Strategy {
            player,
            mode: Mode::Reactionary,
            choices,
        };
        fill_reactionary_defaults(&tree, &mut strategy);
        Some(strategy)
    } else {
        None
    })
}

fn solve_reactionary(
    node: &GameNode,
    path: &mut TreePath,
    x: &Assignment,
    player: Player,
    goal: Goal,
    choices: &mut BTreeMap<TreePath, StrategyChoice>,
) -> bool {
    match &node.kind {
        GameNodeKind::Leaf { label } => match player {
            Player::Eloise => x.contains(label),
            Player::Abelard => !x.contains(label),
        },
        GameNodeKind::Or { children } => solve_reactionary_children(
            children,
            path,
            x,
            player,
            goal,
            choices,
            Player::Eloise,
        ),
        GameNodeKind::And { children } => solve_reactionary_children(
            children,
            path,
            x,
            player,
            goal,
            choices,
            Player::Abelard,
        ),
        GameNodeKind::Prime { children, mc, ms } => {
            let solved: Vec<bool> = children
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    path.push(i);
                    let ok = solve_reactionary(c, path, x, player, goal, choices);
                    path.pop();
                    ok
                })
                .collect();
            let (own, opp) = match player {
                Player::Eloise => (mc, ms),
                Player::Abelard => (ms, mc),
            };
            let mut map = BTreeMap::new();
            for (j, opp_set) in opp.iter().enumerate() {
                let response = own.iter().position(|own_set| {
                    match own_set.iter().find(|k| opp_set.contains(k)) {
                        None => goal == Goal::DrawOrWin,
                        Some(&k) => solved[k],
                    }
                });
                match response {
                    Some(i) => {
                        map.insert(j, i);
                    }
                    None => return false,
                }
            }
            choices.insert(path.clone(), StrategyChoice::PrimeReact(map));
            true
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn solve_reactionary_children(
    children: &[GameNode],
    path: &mut TreePath,
    x: &Assignment,
    player: Player,
    goal: Goal,
    choices: &mut BTreeMap<TreePath, StrategyChoice>,
    chooser: Player,
) -> bool {
    if player == chooser {
        for (i, c) in children.iter().enumerate() {
            path.push(i);
            let ok = solve_reactionary(c, path, x, player, goal, choices);
            path.pop();
            if ok {
                choices.insert(path.clone(), StrategyChoice::Child(i));
                return true;
            }
        }
        false
    } else {
        children.iter().enumerate().all(|(i, c)| {
            path.push(i);
            let ok = solve_reactionary(c, path, x, player, goal, choices);
            path.pop();
            ok
        })
    }
}

/// Makes a strategy total: any decision node of its player without a
/// recorded choice gets the first legal option. Off-path nodes are
/// unreachable under the player's own choices, so defaults are harmless.
fn fill_static_defaults(tree: &GameTree, strategy: &mut Strategy) {
    for (path, n) in tree.option_counts(strategy.player) {
        if n == 0 {
            continue;
        }
        let choice = if is_prime_path(&tree.root, &path) {
            StrategyChoice::PrimePick(0)
        } else {
            StrategyChoice::Child(0)
        };
        strategy.choices.entry(path).or_insert(choice);
    }
}

fn fill_reactionary_defaults(tree: &GameTree, strategy: &mut Strategy) {
    let opponent_counts: BTreeMap<TreePath, usize> = tree
        .option_counts(strategy.player.opponent())
        .into_iter()
        .collect();
    for (path, n) in tree.option_counts(strategy.player) {
        if n == 0 {
            continue;
        }
        if is_prime_path(&tree.root, &path) {
            let opp_n = opponent_counts.get(&path).copied().unwrap_or(0);
            strategy
                .choices
                .entry(path)
                .or_insert_with(|| StrategyChoice::PrimeReact((0..opp_n).map(|j| (j, 0)).collect()));
        } else {
            strategy
                .choices
                .entry(path)
                .or_insert(StrategyChoice::Child(0));
        }
    }
}

fn is_prime_path(root: &GameNode, path: &TreePath) -> bool {
    let mut node = root;
    for &i in path {
        node = match &node.kind {
            GameNodeKind::Or { children }
            | GameNodeKind::And { children }
            | GameNodeKind::Prime { children, .. } => &children[i],
            GameNodeKind::Leaf { .. } => return false,
        };
    }
    matches!(node.kind, GameNodeKind::Prime { .. })
}

/// The clique-following static Eloise strategy: at every node met along a
/// maximal clique `s`, choose so that the play stays inside `s`. Under any
/// assignment containing the clique's labels, all plays end in a win or a
/// deadlock for Eloise.
pub fn strategy_from_clique(g: &LabelledGraph, s: &NodeSet) -> Result<Strategy> {
    if !g.max_cliques()?.contains(s) {
        return Err(Error::input("the given set is not a maximal clique"));
    }
    let dec = decompose(g)?;
    let tree = GameTree::new(g)?;
    let mut choices = BTreeMap::new();
    follow_clique(&dec, &tree.root, &mut Vec::new(), s, &mut choices)?;
    let mut strategy = Strategy {
        player: Player::Eloise,
        mode: Mode::Static,
        choices,
    };
    fill_static_defaults(&tree, &mut strategy);
    Ok(strategy)
}

fn follow_clique(
    dec: &DecTree,
    node: &GameNode,
    path: &mut TreePath,
    s: &NodeSet,
    choices: &mut BTreeMap<TreePath, StrategyChoice>,
) -> Result<()> {
    match (&node.kind, dec) {
        (GameNodeKind::Leaf { .. }, _) => Ok(()),
        (GameNodeKind::Or { children }, DecTree::Or { children: dc, .. }) => {
            let i = dc
                .iter()
                .position(|c| s.is_subset(&c.cover()))
                .ok_or_else(|| Error::input("clique spans several components"))?;
            choices.insert(path.clone(), StrategyChoice::Child(i));
            path.push(i);
            follow_clique(&dc[i], &children[i], path, s, choices)?;
            path.pop();
            Ok(())
        }
        (GameNodeKind::And { children }, DecTree::And { children: dc, .. }) => {
            for (i, (c, d)) in children.iter().zip(dc).enumerate() {
                let part: NodeSet = s.intersection(&d.cover()).cloned().collect();
                path.push(i);
                follow_clique(d, c, path, &part, choices)?;
                path.pop();
            }
            Ok(())
        }
        (GameNodeKind::Prime { children, mc, .. }, DecTree::Prime { children: dc, .. }) => {
            let picked: Vec<usize> = dc
                .iter()
                .enumerate()
                .filter(|(_, d)| !s.is_disjoint(&d.cover()))
                .map(|(i, _)| i)
                .collect();
            let idx = mc
                .iter()
                .position(|m| *m == picked)
                .ok_or_else(|| Error::input("clique does not project to a quotient clique"))?;
            choices.insert(path.clone(), StrategyChoice::PrimePick(idx));
            for &i in &picked {
                let part: NodeSet = s.intersection(&dc[i].cover()).cloned().collect();
                path.push(i);
                follow_clique(&dc[i], &children[i], path, &part, choices)?;
                path.pop();
            }
            Ok(())
        }
        _ => Err(Error::input("tree shape mismatch")),
    }
}

/// The reactionary Eloise strategy for an assignment that meets every
/// maximal stable set: at each prime node, answer the opponent's stable set
/// with a clique through a block that still cannot evaluate to 0. All plays
/// against static Abelard strategies end in a win for Eloise.
pub fn strategy_from_hitting_assignment(g: &LabelledGraph, x: &Assignment) -> Result<Strategy> {
    for t in g.max_stable_sets()? {
        if g.label_set(&t)?.iter().all(|l| !x.contains(l)) {
            return Err(Error::input(
                "assignment misses a maximal stable set; no winning reaction exists",
            ));
        }
    }
    let dec = decompose(g)?;
    let tree = GameTree::new(g)?;
    let mut choices = BTreeMap::new();
    follow_hitting(g, &dec, &tree.root, &mut Vec::new(), x, &mut choices)?;
    let mut strategy = Strategy {
        player: Player::Eloise,
        mode: Mode::Reactionary,
        choices,
    };
    fill_reactionary_defaults(&tree, &mut strategy);
    Ok(strategy)
}

fn hits_all_stable_sets(g: &LabelledGraph, cover: &NodeSet, x: &Assignment) -> Result<bool> {
    let sub = g.induced_subgraph(cover)?;
    Ok(!evaluate(&sub, x)?.contains_zero())
}

fn follow_hitting(
    g: &LabelledGraph,
    dec: &DecTree,
    node: &GameNode,
    path: &mut TreePath,
    x: &Assignment,
    choices: &mut BTreeMap<TreePath, StrategyChoice>,
) -> Result<()> {
    match (&node.kind, dec) {
        (GameNodeKind::Leaf { .. }, _) => Ok(()),
        (GameNodeKind::Or { children }, DecTree::Or { children: dc, .. }) => {
            let mut target = None;
            for (i, d) in dc.iter().enumerate() {
                if hits_all_stable_sets(g, &d.cover(), x)? {
                    target = Some(i);
                    break;
                }
            }
            let i =
                target.ok_or_else(|| Error::input("no component is hit on every stable set"))?;
            choices.insert(path.clone(), StrategyChoice::Child(i));
            path.push(i);
            follow_hitting(g, &dc[i], &children[i], path, x, choices)?;
            path.pop();
            Ok(())
        }
        (GameNodeKind::And { children }, DecTree::And { children: dc, .. }) => {
            for (i, (c, d)) in children.iter().zip(dc).enumerate() {
                path.push(i);
                follow_hitting(g, d, c, path, x, choices)?;
                path.pop();
            }
            Ok(())
        }
        (GameNodeKind::Prime { children, mc, ms }, DecTree::Prime { children: dc, .. }) => {
            let mut map = BTreeMap::new();
            let mut continue_on = Vec::new();
            for (j, t) in ms.iter().enumerate() {
                let mut good = None;
                for &k in t {
                    if hits_all_stable_sets(g, &dc[k].cover(), x)? {
                        good = Some(k);
                        break;
                    }
                }
                let k = good.ok_or_else(|| {
                    Error::input("a quotient stable set has no block hit on every stable set")
                })?;
                let i = mc
                    .iter()
                    .position(|m| m.contains(&k))
                    .expect("every block lies in some maximal clique of the quotient");
                map.insert(j, i);
                if !continue_on.contains(&k) {
                    continue_on.push(k);
                }
            }
            choices.insert(path.clone(), StrategyChoice::PrimeReact(map));
            for k in continue_on {
                path.push(k);
                follow_hitting(g, &dc[k], &children[k], path, x, choices)?;
                path.pop();
            }
            Ok(())
        }
        _ => Err(Error::input("tree shape mismatch")),
    }
}

/// The all-first-options static strategy; always total and legal.
pub fn default_static_strategy(g: &LabelledGraph, player: Player) -> Result<Strategy> {
    let tree = GameTree::new(g)?;
    let mut strategy = Strategy {
        player,
        mode: Mode::Static,
        choices: BTreeMap::new(),
    };
    fill_static_defaults(&tree, &mut strategy);
    Ok(strategy)
}

/// The all-first-options reactionary strategy for a designated second
/// player.
pub fn default_reactionary_strategy(g: &LabelledGraph, player: Player) -> Result<Strategy> {
    let tree = GameTree::new(g)?;
    let mut strategy = Strategy {
        player,
        mode: Mode::Reactionary,
        choices: BTreeMap::new(),
    };
    fill_reactionary_defaults(&tree, &mut strategy);
    Ok(strategy)
}

/// Enumerates all static strategies of a player (odometer over the per-node
/// option lists). Exposed for exhaustive cross-checks in tests.
pub fn all_static_strategies(g: &LabelledGraph, player: Player) -> Result<Vec<Strategy>> {
    let tree = GameTree::new(g)?;
    let counts = tree.option_counts(player);
    let size = space_size(&counts);
    if size > STRATEGY_SPACE_BUDGET {
        return Err(Error::resource(format!(
            "{size} strategies exceed the enumeration budget"
        )));
    }
    let mut out = Vec::new();
    let mut odometer = vec![0usize; counts.len()];
    loop {
        let choices = counts
            .iter()
            .zip(&odometer)
            .map(|((path, _), &i)| {
                let choice = if is_prime_path(&tree.root, path) {
                    StrategyChoice::PrimePick(i)
                } else {
                    StrategyChoice::Child(i)
                };
                (path.clone(), choice)
            })
            .collect();
        out.push(Strategy {
            player,
            mode: Mode::Static,
            choices,
        });
        let mut pos = 0;
        loop {
            if pos == counts.len() {
                return Ok(out);
            }
            odometer[pos] += 1;
            if odometer[pos] < counts[pos].1 {
                break;
            }
            odometer[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::node_set;
    use crate::semantics::parse_assignment;

    /// The eleven-node play example: K2 {j,k}, a P4 a–b–c–d, and a prime
    /// part e–f–g–{h,i}.
    fn fig2() -> LabelledGraph {
        LabelledGraph::linear(
            ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k"],
            [
                ("a", "b"),
                ("b", "c"),
                ("c", "d"),
                ("e", "f"),
                ("f", "g"),
                ("g", "h"),
                ("g", "i"),
                ("h", "i"),
                ("j", "k"),
            ],
        )
        .unwrap()
    }

    fn p4() -> LabelledGraph {
        LabelledGraph::linear(["w", "x", "y", "z"], [("w", "x"), ("x", "y"), ("y", "z")])
            .unwrap()
    }

    fn c5() -> LabelledGraph {
        LabelledGraph::linear(
            ["v", "w", "x", "y", "z"],
            [("v", "w"), ("w", "x"), ("x", "y"), ("y", "z"), ("z", "v")],
        )
        .unwrap()
    }

    #[test]
    fn the_paper_play_reaches_outcome_h() {
        let g = fig2();
        // Root children in canonical order: [a-P4, e-prime, jk-K2].
        // Quotient of the prime part is the path e–f–g–h with
        // MC = [{e,f},{f,g},{g,h}] and MS = [{e,g},{e,h},{f,h}].
        let eloise = Strategy {
            player: Player::Eloise,
            mode: Mode::Static,
            choices: [
                (vec![], StrategyChoice::Child(1)),
                (vec![0], StrategyChoice::PrimePick(0)),
                (vec![1], StrategyChoice::PrimePick(2)), // {g,{h,i}}
            ]
            .into_iter()
            .collect(),
        };
        let abelard = Strategy {
            player: Player::Abelard,
            mode: Mode::Static,
            choices: [
                (vec![0], StrategyChoice::PrimePick(0)),
                (vec![1], StrategyChoice::PrimePick(1)), // {e,{h,i}}
                (vec![1, 3], StrategyChoice::Child(0)),  // pick h in and(h,i)
                (vec![2], StrategyChoice::Child(0)),
            ]
            .into_iter()
            .collect(),
        };
        let p = play(&g, &eloise, &abelard, None).unwrap();
        assert_eq!(p.outcome, GameOutcome::Label("h".to_string()));
        assert_eq!(winner(&p, &parse_assignment("h")), Winner::Eloise);
        assert_eq!(winner(&p, &parse_assignment("")), Winner::Abelard);
    }

    #[test]
    fn the_paper_play_variant_deadlocks() {
        let g = fig2();
        let eloise = Strategy {
            player: Player::Eloise,
            mode: Mode::Static,
            choices: [
                (vec![], StrategyChoice::Child(1)),
                (vec![0], StrategyChoice::PrimePick(0)),
                (vec![1], StrategyChoice::PrimePick(1)), // {f,g}
            ]
            .into_iter()
            .collect(),
        };
        let abelard = Strategy {
            player: Player::Abelard,
            mode: Mode::Static,
            choices: [
                (vec![0], StrategyChoice::PrimePick(0)),
                (vec![1], StrategyChoice::PrimePick(1)), // {e,{h,i}}
                (vec![1, 3], StrategyChoice::Child(0)),
                (vec![2], StrategyChoice::Child(0)),
            ]
            .into_iter()
            .collect(),
        };
        let p = play(&g, &eloise, &abelard, None).unwrap();
        assert_eq!(p.outcome, GameOutcome::Deadlock);
        assert_eq!(winner(&p, &parse_assignment("h")), Winner::Draw);
    }

    #[test]
    fn singleton_play_is_empty() {
        let g = LabelledGraph::linear(["x"], []).unwrap();
        let empty = |player| Strategy {
            player,
            mode: Mode::Static,
            choices: BTreeMap::new(),
        };
        let p = play(&g, &empty(Player::Eloise), &empty(Player::Abelard), None).unwrap();
        assert!(p.steps.is_empty());
        assert_eq!(p.outcome, GameOutcome::Label("x".to_string()));
    }

    #[test]
    fn neither_player_draws_statically_on_the_p4_gap() {
        let g = p4();
        let x = parse_assignment("w,z");
        assert!(
            exists_static_strategy(&g, &x, Player::Eloise, Goal::DrawOrWin)
                .unwrap()
                .is_none()
        );
        assert!(
            exists_static_strategy(&g, &x, Player::Abelard, Goal::DrawOrWin)
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn eloise_cannot_force_a_static_win_on_c5() {
        let g = c5();
        let x = parse_assignment("v,z,w");
        assert!(exists_static_strategy(&g, &x, Player::Eloise, Goal::Win)
            .unwrap()
            .is_none());
        // But she does have a drawing strategy, since the graph evaluates
        // to 1 under this assignment.
        assert!(
            exists_static_strategy(&g, &x, Player::Eloise, Goal::DrawOrWin)
                .unwrap()
                .is_some()
        );
    }

    #[test]
    fn full_assignment_gives_eloise_a_draw() {
        for g in [p4(), c5(), fig2()] {
            let x: Assignment = g.label_universe();
            assert!(
                exists_static_strategy(&g, &x, Player::Eloise, Goal::DrawOrWin)
                    .unwrap()
                    .is_some()
            );
        }
    }

    #[test]
    fn eloise_wins_sequentially_on_c5() {
        let g = c5();
        let x = parse_assignment("v,z,w");
        let s = exists_reactionary_strategy(&g, &x, Player::Eloise, Goal::Win)
            .unwrap()
            .expect("reactionary win exists");
        // Verify directly against every static Abelard strategy.
        for ab in all_static_strategies(&g, Player::Abelard).unwrap() {
            let p = play(&g, &s, &ab, Some(Player::Eloise)).unwrap();
            assert_eq!(winner(&p, &x), Winner::Eloise);
        }
    }

    #[test]
    fn abelard_wins_sequentially_on_the_p4_gap() {
        let g = p4();
        let x = parse_assignment("w,z");
        let s = exists_reactionary_strategy(&g, &x, Player::Abelard, Goal::Win)
            .unwrap()
            .expect("Abelard wins as second player");
        for el in all_static_strategies(&g, Player::Eloise).unwrap() {
            let p = play(&g, &el, &s, Some(Player::Abelard)).unwrap();
            assert_eq!(winner(&p, &x), Winner::Abelard);
        }
    }

    #[test]
    fn singleton_reactionary_win() {
        let g = LabelledGraph::linear(["x"], []).unwrap();
        let x = parse_assignment("x");
        assert!(
            exists_reactionary_strategy(&g, &x, Player::Eloise, Goal::Win)
                .unwrap()
                .is_some()
        );
    }

    #[test]
    fn clique_following_strategy_draws_or_wins() {
        // P4 z–x–w–y with the maximal clique {w,y}.
        let g = LabelledGraph::linear(["w", "x", "y", "z"], [("z", "x"), ("x", "w"), ("w", "y")])
            .unwrap();
        let s = strategy_from_clique(&g, &node_set(["w", "y"])).unwrap();
        let x = parse_assignment("w,y");
        for ab in all_static_strategies(&g, Player::Abelard).unwrap() {
            let p = play(&g, &s, &ab, None).unwrap();
            assert_ne!(winner(&p, &x), Winner::Abelard);
            if let GameOutcome::Label(l) = &p.outcome {
                assert!(l == "w" || l == "y");
            }
        }
    }

    #[test]
    fn k2_clique_strategy_wins_under_full_assignment() {
        let g = LabelledGraph::linear(["a", "b"], [("a", "b")]).unwrap();
        let s = strategy_from_clique(&g, &node_set(["a", "b"])).unwrap();
        let x = parse_assignment("a,b");
        for ab in all_static_strategies(&g, Player::Abelard).unwrap() {
            let p = play(&g, &s, &ab, None).unwrap();
            assert_eq!(winner(&p, &x), Winner::Eloise);
        }
    }

    #[test]
    fn hitting_assignment_strategy_wins_on_c5() {
        let g = c5();
        let x = parse_assignment("v,z,w");
        let s = strategy_from_hitting_assignment(&g, &x).unwrap();
        for ab in all_static_strategies(&g, Player::Abelard).unwrap() {
            let p = play(&g, &s, &ab, Some(Player::Eloise)).unwrap();
            assert_eq!(winner(&p, &x), Winner::Eloise);
        }
        // Precondition violation: {y} misses the stable set {v,x}.
        assert!(strategy_from_hitting_assignment(&g, &parse_assignment("y")).is_err());
    }

    #[test]
    fn reactionary_strategy_must_be_second() {
        let g = p4();
        let x = parse_assignment("w,z");
        let e = exists_reactionary_strategy(&g, &x, Player::Eloise, Goal::DrawOrWin).unwrap();
        if let Some(s) = e {
            let ab = all_static_strategies(&g, Player::Abelard)
                .unwrap()
                .remove(0);
            assert!(play(&g, &s, &ab, None).is_err());
            assert!(play(&g, &s, &ab, Some(Player::Abelard)).is_err());
        }
    }
}
