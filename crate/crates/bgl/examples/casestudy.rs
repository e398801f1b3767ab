// Scratch probe for the case-study fixtures.
use bgl::formula::{parse_formula, web};
use bgl::proof::{check_derivation, derive_entailment, to_cnf, to_dnf, Flavor};
use bgl::semantics::{entails_and, entails_or, is_cis, is_total};
use bgl::LabelledGraph;

fn main() {
    let lhs = web(&parse_formula("(u | (v & v')) & (w | x) & (w' | x') & ((y & y') | z)").unwrap());
    let rhs = web(&parse_formula("(u & (w | y)) | (w' & y') | (v' & x') | ((v | x) & z)").unwrap());
    let interp = LabelledGraph::linear(
        ["u","v","v'","w","w'","x","x'","y","y'","z"],
        [("w","u"),("u","y"),("y","y'"),("y","w'"),("w'","y'"),("y'","v'"),("w'","v'"),
         ("y'","x'"),("v'","x'"),("v'","v"),("x'","v"),("v","z"),("z","x")],
    ).unwrap();
    println!("lhs {} nodes, rhs {} nodes, interp {} nodes", lhs.node_count(), rhs.node_count(), interp.node_count());
    println!("interp total = {:?}", is_total(&interp));
    println!("interp cis = {:?}", is_cis(&interp));
    println!("MC(interp) = {}", interp.max_cliques().unwrap().len());
    println!("MS(interp) = {}", interp.max_stable_sets().unwrap().len());
    println!("lhs |-or interp: {:?}", entails_or(&lhs, &interp));
    println!("interp |-and rhs: {:?}", entails_and(&interp, &rhs));
    println!("lhs |-and interp: {:?}", entails_and(&lhs, &interp));
    println!("interp |-or rhs: {:?}", entails_or(&interp, &rhs));
    for (name, g) in [("lhs", &lhs), ("interp", &interp), ("rhs", &rhs)] {
        match to_dnf(g) {
            Ok((d, der)) => println!("to_dnf({name}): {} nodes, {} steps", d.node_count(), der.len()),
            Err(e) => println!("to_dnf({name}): ERR {e}"),
        }
        match to_cnf(g) {
            Ok((d, der)) => println!("to_cnf({name}): {} nodes, {} steps", d.node_count(), der.len()),
            Err(e) => println!("to_cnf({name}): ERR {e}"),
        }
    }
    for (a, b, fl, tag) in [
        (&lhs, &interp, Flavor::And, "lhs->interp and"),
        (&interp, &rhs, Flavor::And, "interp->rhs and"),
        (&lhs, &interp, Flavor::Or, "lhs->interp or"),
        (&interp, &rhs, Flavor::Or, "interp->rhs or"),
    ] {
        match derive_entailment(a, b, fl) {
            Ok(d) => {
                let ok = check_derivation(&d, Some(fl)).unwrap().is_ok();
                println!("derive {tag}: {} steps, check = {ok}", d.len());
            }
            Err(e) => println!("derive {tag}: ERR {e}"),
        }
    }
}
