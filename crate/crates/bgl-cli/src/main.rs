//! Command-line front end for the Boolean graph logic engine.
//!
//! Exit codes: 0 for success or a positive answer, 1 for a semantic "no"
//! (failed entailment, failed check, rejected derivation), 2 for input
//! errors, 3 for exceeded resource budgets.

use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bgl::decompose::{decompose, DecTree};
use bgl::error::Error;
use bgl::formula::{cotree_to_formula, parse_formula, web};
use bgl::games::{
    default_reactionary_strategy, default_static_strategy, exists_reactionary_strategy,
    exists_static_strategy, Goal, Player, Strategy, StrategyChoice, TreePath,
};
use bgl::proof::{
    check_derivation, derivation_from_text, derivation_to_text, derive_entailment, to_cnf, to_dnf,
    CheckOutcome, Flavor,
};
use bgl::reduce::{
    normalize_qbf, parse_dimacs, parse_qdimacs, qbf_to_entailment, sat_to_evaluation,
    NormalizeOutcome,
};
use bgl::semantics::{
    entails_and, entails_or, evaluate, is_cis, is_deterministic, is_total, parse_assignment,
    Assignment,
};
use bgl::{LabelledGraph, NodeSet};

#[derive(Parser)]
#[command(name = "bgl", about = "Boolean graph logic engine", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlayerArg {
    Eloise,
    Abelard,
}

impl From<PlayerArg> for Player {
    fn from(p: PlayerArg) -> Player {
        match p {
            PlayerArg::Eloise => Player::Eloise,
            PlayerArg::Abelard => Player::Abelard,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Static,
    Sequential,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Cis,
    Total,
    Prime,
    P4free,
    Deterministic,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a graph under an assignment; prints {}, {0}, {1} or {0,1}.
    Eval {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        #[arg(short = 'x', long = "assignment", default_value = "")]
        assignment: String,
    },
    /// Decide entailment between two graphs; prints true/false.
    Entail {
        #[arg(long = "and", conflicts_with = "or", required_unless_present = "or")]
        and: bool,
        #[arg(long = "or")]
        or: bool,
        g: PathBuf,
        h: PathBuf,
    },
    /// Print the modular decomposition tree as an s-expression.
    Decompose { graph: PathBuf },
    /// Print the relation web of a formula file as graph text.
    Web { formula: PathBuf },
    /// Synthesise a read-once formula from a P4-free graph.
    Synth { graph: PathBuf },
    /// Rewrite a graph to disjunctive or conjunctive normal form.
    Normalize {
        #[arg(long = "dnf", conflicts_with = "cnf", required_unless_present = "cnf")]
        dnf: bool,
        #[arg(long = "cnf")]
        cnf: bool,
        graph: PathBuf,
        #[arg(long = "emit-derivation")]
        emit_derivation: Option<PathBuf>,
    },
    /// Produce a checkable derivation witnessing an entailment.
    Derive {
        #[arg(long = "and", conflicts_with = "or", required_unless_present = "or")]
        and: bool,
        #[arg(long = "or")]
        or: bool,
        g: PathBuf,
        h: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Re-check a derivation file step by step.
    CheckDerivation {
        #[arg(long = "and", conflicts_with = "or", required_unless_present = "or")]
        and: bool,
        #[arg(long = "or")]
        or: bool,
        file: PathBuf,
    },
    /// Check a relation-class property of a graph; prints true/false.
    Check {
        #[arg(value_enum)]
        property: Property,
        graph: PathBuf,
    },
    /// Play the evaluation game on a graph's decomposition tree.
    Play {
        graph: PathBuf,
        #[arg(short = 'x', long = "assignment", default_value = "")]
        assignment: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, value_enum)]
        human: Option<PlayerArg>,
        #[arg(long, value_enum)]
        second: Option<PlayerArg>,
        #[arg(long)]
        script: Option<PathBuf>,
    },
    /// Run a complexity-reduction construction.
    Reduce {
        #[command(subcommand)]
        kind: ReduceKind,
    },
}

#[derive(Subcommand)]
enum ReduceKind {
    /// DIMACS CNF to a graph-evaluation instance.
    Sat { file: PathBuf },
    /// QDIMACS (one forall block, one exists block) to an entailment pair.
    Qbf { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Resource(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn read_graph(path: &Path) -> Result<LabelledGraph, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    LabelledGraph::parse(&text)
}

fn read_text(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))
}

fn flavor_of(and: bool) -> Flavor {
    if and {
        Flavor::And
    } else {
        Flavor::Or
    }
}

fn bool_code(b: bool) -> ExitCode {
    println!("{b}");
    if b {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Eval { graph, assignment } => {
            let g = read_graph(&graph)?;
            let x = parse_assignment(&assignment);
            println!("{}", evaluate(&g, &x)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Entail { and, or: _, g, h } => {
            let (g, h) = (read_graph(&g)?, read_graph(&h)?);
            let holds = match flavor_of(and) {
                Flavor::And => entails_and(&g, &h)?,
                Flavor::Or => entails_or(&g, &h)?,
            };
            Ok(bool_code(holds))
        }
        Command::Decompose { graph } => {
            let g = read_graph(&graph)?;
            println!("{}", decompose(&g)?.render());
            Ok(ExitCode::SUCCESS)
        }
        Command::Web { formula } => {
            let f = parse_formula(&read_text(&formula)?)?;
            print!("{}", web(&f));
            Ok(ExitCode::SUCCESS)
        }
        Command::Synth { graph } => {
            let g = read_graph(&graph)?;
            println!("{}", cotree_to_formula(&g)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Normalize {
            dnf,
            cnf: _,
            graph,
            emit_derivation,
        } => {
            let g = read_graph(&graph)?;
            let (normal, derivation) = if dnf { to_dnf(&g)? } else { to_cnf(&g)? };
            print!("{normal}");
            if let Some(path) = emit_derivation {
                fs::write(&path, derivation_to_text(&derivation)?)
                    .map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Derive {
            and,
            or: _,
            g,
            h,
            output,
        } => {
            let flavor = flavor_of(and);
            let (g, h) = (read_graph(&g)?, read_graph(&h)?);
            let derivation = derive_entailment(&g, &h, flavor)?;
            fs::write(&output, derivation_to_text(&derivation)?)
                .map_err(|e| Error::input(format!("cannot write {}: {e}", output.display())))?;
            println!("derived {flavor} entailment in {} steps", derivation.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckDerivation { and, or: _, file } => {
            let flavor = flavor_of(and);
            let derivation = derivation_from_text(&read_text(&file)?)?;
            match check_derivation(&derivation, Some(flavor))? {
                CheckOutcome::Ok => {
                    println!("ok: {} steps", derivation.len());
                    Ok(ExitCode::SUCCESS)
                }
                CheckOutcome::Failed { step, reason } => {
                    println!("step {} failed: {reason}", step + 1);
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Check { property, graph } => {
            let g = read_graph(&graph)?;
            let answer = match property {
                Property::Cis => is_cis(&g)?,
                Property::Total => is_total(&g)?,
                Property::Prime => g.is_prime(),
                Property::P4free => g.is_p4_free(),
                Property::Deterministic => is_deterministic(&g)?,
            };
            Ok(bool_code(answer))
        }
        Command::Play {
            graph,
            assignment,
            mode,
            human,
            second,
            script,
        } => {
            let g = read_graph(&graph)?;
            let x = parse_assignment(&assignment);
            play_command(
                &g,
                &x,
                mode,
                human.map(Into::into),
                second.map(Into::into),
                script,
            )
        }
        Command::Reduce { kind } => match kind {
            ReduceKind::Sat { file } => {
                let cnf = parse_dimacs(&read_text(&file)?)?;
                let (g, c) = sat_to_evaluation(&cnf)?;
                print!("{g}");
                println!(
                    "# assignment: {}",
                    c.iter().cloned().collect::<Vec<_>>().join(",")
                );
                Ok(ExitCode::SUCCESS)
            }
            ReduceKind::Qbf { file } => {
                let q = parse_qdimacs(&read_text(&file)?)?;
                match normalize_qbf(&q)? {
                    NormalizeOutcome::Resolved(truth) => {
                        println!("resolved: {truth}");
                        Ok(ExitCode::SUCCESS)
                    }
                    NormalizeOutcome::Normalized(n) => {
                        let (g, h) = qbf_to_entailment(&n)?;
                        println!("# graph G");
                        print!("{g}");
                        println!("# graph H");
                        print!("{h}");
                        Ok(ExitCode::SUCCESS)
                    }
                }
            }
        },
    }
}

// --- Interactive play ----------------------------------------------------

struct PlaySession {
    human: Option<Player>,
    script: Vec<usize>,
    script_pos: usize,
    scripted: bool,
    eloise: Strategy,
    abelard: Strategy,
    second: Option<Player>,
}

impl PlaySession {
    fn strategy_for(&self, p: Player) -> &Strategy {
        match p {
            Player::Eloise => &self.eloise,
            Player::Abelard => &self.abelard,
        }
    }

    /// Reads a 1-based option index for the human, reprompting on invalid
    /// input; scripted sessions consume the next script line instead.
    fn human_choice(&mut self, n_options: usize) -> Result<usize, Error> {
        loop {
            let raw = if self.scripted {
                let Some(&value) = self.script.get(self.script_pos) else {
                    return Err(Error::input("script ran out of choices"));
                };
                self.script_pos += 1;
                println!("> {value}");
                value.to_string()
            } else {
                print!("> ");
                std::io::stdout().flush().ok();
                let mut line = String::new();
                let read = std::io::stdin()
                    .lock()
                    .read_line(&mut line)
                    .map_err(|e| Error::input(format!("cannot read choice: {e}")))?;
                if read == 0 {
                    return Err(Error::input("end of input while waiting for a choice"));
                }
                line
            };
            match raw.trim().parse::<usize>() {
                Ok(k) if k >= 1 && k <= n_options => return Ok(k - 1),
                _ => {
                    println!("invalid option; enter a number from 1 to {n_options}");
                    if self.scripted {
                        return Err(Error::input("script contained an invalid option"));
                    }
                }
            }
        }
    }

    fn engine_child(&self, p: Player, path: &TreePath) -> Result<usize, Error> {
        match self.strategy_for(p).choices.get(path) {
            Some(StrategyChoice::Child(i)) => Ok(*i),
            _ => Err(Error::input("engine strategy is missing a child choice")),
        }
    }

    fn engine_pick(&self, p: Player, path: &TreePath) -> Result<usize, Error> {
        match self.strategy_for(p).choices.get(path) {
            Some(StrategyChoice::PrimePick(i)) => Ok(*i),
            _ => Err(Error::input("engine strategy is missing a prime choice")),
        }
    }

    fn engine_react(&self, p: Player, path: &TreePath, opp: usize) -> Result<usize, Error> {
        match self.strategy_for(p).choices.get(path) {
            Some(StrategyChoice::PrimeReact(map)) => map
                .get(&opp)
                .copied()
                .ok_or_else(|| Error::input("engine reactionary map is not total")),
            Some(StrategyChoice::PrimePick(i)) => Ok(*i),
            _ => Err(Error::input("engine strategy is missing a prime choice")),
        }
    }
}

/// Picks the strongest engine strategy available: a winning one, else a
/// drawing one, else the default.
fn engine_strategy(
    g: &LabelledGraph,
    x: &Assignment,
    player: Player,
    reactionary: bool,
) -> Result<Strategy, Error> {
    if reactionary {
        if let Some(s) = exists_reactionary_strategy(g, x, player, Goal::Win)? {
            return Ok(s);
        }
        if let Some(s) = exists_reactionary_strategy(g, x, player, Goal::DrawOrWin)? {
            return Ok(s);
        }
        default_reactionary_strategy(g, player)
    } else {
        if let Some(s) = exists_static_strategy(g, x, player, Goal::Win)? {
            return Ok(s);
        }
        if let Some(s) = exists_static_strategy(g, x, player, Goal::DrawOrWin)? {
            return Ok(s);
        }
        default_static_strategy(g, player)
    }
}

fn describe_set(set: &NodeSet) -> String {
    let names: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", names.join(","))
}

fn play_command(
    g: &LabelledGraph,
    x: &Assignment,
    mode: ModeArg,
    human: Option<Player>,
    second: Option<Player>,
    script: Option<PathBuf>,
) -> Result<ExitCode, Error> {
    let sequential = matches!(mode, ModeArg::Sequential);
    let second = match (sequential, second) {
        (true, Some(p)) => Some(p),
        (true, None) => {
            return Err(Error::input(
                "sequential mode requires --second eloise|abelard",
            ))
        }
        (false, Some(_)) => return Err(Error::input("--second only applies to sequential mode")),
        (false, None) => None,
    };
    let scripted = script.is_some();
    let script_values = match script {
        None => Vec::new(),
        Some(path) => {
            if human.is_none() {
                return Err(Error::input("--script requires --human"));
            }
            read_text(&path)?
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| {
                    l.parse::<usize>()
                        .map_err(|_| Error::input(format!("bad script line `{l}`")))
                })
                .collect::<Result<Vec<_>, _>>()?
        }
    };

    let tree = decompose(g)?;
    let mut session = PlaySession {
        human,
        script: script_values,
        script_pos: 0,
        scripted,
        eloise: make_side_strategy(g, x, Player::Eloise, human, second, sequential)?,
        abelard: make_side_strategy(g, x, Player::Abelard, human, second, sequential)?,
        second,
    };

    println!("tree: {}", tree.render());
    println!(
        "assignment: {{{}}}",
        x.iter().cloned().collect::<Vec<_>>().join(",")
    );
    let outcome = walk(&tree, &mut Vec::new(), &mut session)?;
    match &outcome {
        None => {
            println!("outcome: deadlock");
            println!("winner: draw");
        }
        Some(label) => {
            println!("outcome: {label}");
            let w = if x.contains(label) { "Eloise" } else { "Abelard" };
            println!("winner: {w}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn make_side_strategy(
    g: &LabelledGraph,
    x: &Assignment,
    player: Player,
    human: Option<Player>,
    second: Option<Player>,
    sequential: bool,
) -> Result<Strategy, Error> {
    if human == Some(player) {
        // Placeholder; human choices are read interactively.
        return default_static_strategy(g, player);
    }
    let reactionary = sequential && second == Some(player);
    engine_strategy(g, x, player, reactionary)
}

/// Walks the decomposition tree, mixing human and engine choices, printing
/// the transcript; returns the outcome label or `None` for a deadlock.
fn walk(
    tree: &DecTree,
    path: &mut TreePath,
    session: &mut PlaySession,
) -> Result<Option<String>, Error> {
    match tree {
        DecTree::Leaf { label, .. } => Ok(Some(label.clone())),
        DecTree::Or { children, .. } | DecTree::And { children, .. } => {
            let chooser = if matches!(tree, DecTree::Or { .. }) {
                Player::Eloise
            } else {
                Player::Abelard
            };
            let who = match chooser {
                Player::Eloise => "Eloise",
                Player::Abelard => "Abelard",
            };
            let i = if session.human == Some(chooser) {
                println!("{who} chooses a branch:");
                for (k, c) in children.iter().enumerate() {
                    println!("  {}. {}", k + 1, c.render());
                }
                session.human_choice(children.len())?
            } else {
                let i = session.engine_child(chooser, path)?;
                println!("{who} chooses branch {}: {}", i + 1, children[i].render());
                i
            };
            path.push(i);
            let out = walk(&children[i], path, session);
            path.pop();
            out
        }
        DecTree::Prime {
            quotient, children, ..
        } => {
            let mc = quotient.max_cliques()?;
            let ms = quotient.max_stable_sets()?;
            println!("prime node {}:", tree.render());
            println!(
                "  cliques: {}",
                mc.iter().map(describe_set).collect::<Vec<_>>().join(" ")
            );
            println!(
                "  stable sets: {}",
                ms.iter().map(describe_set).collect::<Vec<_>>().join(" ")
            );
            let (ei, ai) = match session.second {
                // Static: both choices are collected before either is
                // revealed.
                None => {
                    let ei = if session.human == Some(Player::Eloise) {
                        println!("Eloise picks a maximal clique (1-{}):", mc.len());
                        session.human_choice(mc.len())?
                    } else {
                        session.engine_pick(Player::Eloise, path)?
                    };
                    let ai = if session.human == Some(Player::Abelard) {
                        println!("Abelard picks a maximal stable set (1-{}):", ms.len());
                        session.human_choice(ms.len())?
                    } else {
                        session.engine_pick(Player::Abelard, path)?
                    };
                    (ei, ai)
                }
                Some(Player::Eloise) => {
                    let ai = if session.human == Some(Player::Abelard) {
                        println!("Abelard picks a maximal stable set (1-{}):", ms.len());
                        session.human_choice(ms.len())?
                    } else {
                        session.engine_pick(Player::Abelard, path)?
                    };
                    println!("Abelard declares {}", describe_set(&ms[ai]));
                    let ei = if session.human == Some(Player::Eloise) {
                        println!("Eloise picks a maximal clique (1-{}):", mc.len());
                        session.human_choice(mc.len())?
                    } else {
                        session.engine_react(Player::Eloise, path, ai)?
                    };
                    (ei, ai)
                }
                Some(Player::Abelard) => {
                    let ei = if session.human == Some(Player::Eloise) {
                        println!("Eloise picks a maximal clique (1-{}):", mc.len());
                        session.human_choice(mc.len())?
                    } else {
                        session.engine_pick(Player::Eloise, path)?
                    };
                    println!("Eloise declares {}", describe_set(&mc[ei]));
                    let ai = if session.human == Some(Player::Abelard) {
                        println!("Abelard picks a maximal stable set (1-{}):", ms.len());
                        session.human_choice(ms.len())?
                    } else {
                        session.engine_react(Player::Abelard, path, ei)?
                    };
                    (ei, ai)
                }
            };
            println!(
                "Eloise played {}, Abelard played {}",
                describe_set(&mc[ei]),
                describe_set(&ms[ai])
            );
            let common: Vec<_> = mc[ei].intersection(&ms[ai]).cloned().collect();
            match common.first() {
                None => Ok(None),
                Some(rep) => {
                    let k = children
                        .iter()
                        .position(|c| c.cover().contains(rep))
                        .expect("quotient nodes are block representatives");
                    println!("play continues on {}", children[k].render());
                    path.push(k);
                    let out = walk(&children[k], path, session);
                    path.pop();
                    out
                }
            }
        }
    }
}
