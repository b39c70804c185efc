//! Checks a model against condition sets and prints the violations.

use std::collections::BTreeSet;

use bclkit::conditions::{admissible, ConditionSet};
use bclkit::semantics::RelatingModel;
use bclkit::syntax::parse;

fn main() {
    let f = |s: &str| parse(s).unwrap();
    // p is related to its own negation, and to both q and ~q.
    let pairs: BTreeSet<_> = [(f("p"), f("~p")), (f("p"), f("q")), (f("p"), f("~q"))].into_iter().collect();
    let model = RelatingModel::single_world(["p"], pairs).with_carrier(&[f("p -> q")]);
    for text in ["a2", "a1", "b0", "a1,a2,b0,b1,b2", "t"] {
        let conds = ConditionSet::parse(text).expect("known conditions");
        let report = admissible(&model, &conds);
        println!("{text}: admissible = {}", report.admissible);
        for v in report.violations.iter().take(3) {
            println!("  {} at {:?}: {}", v.condition, v.world, v.reason);
        }
        if report.violations.len() > 3 {
            println!("  ... {} more", report.violations.len() - 3);
        }
    }
}
