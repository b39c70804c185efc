//! Counts the relating relations over a formula's closure that satisfy a
//! condition set.
//!
//!     cargo run --example count_relations -- "~p -> p" a1,a2

use bclkit::conditions::ConditionSet;
use bclkit::decision::{count_admissible, Budget};
use bclkit::syntax::parse;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let formula = parse(args.first().map_or("(p -> q) -> ~(p -> ~q)", String::as_str)).unwrap();
    let sets: Vec<String> = match args.get(1) {
        Some(s) => vec![s.clone()],
        None => ["", "a1", "a2", "a1,a2", "b0", "a1,a2,b0,b1,b2", "a1,a2,b0,b1,b2,cun"]
            .map(String::from)
            .to_vec(),
    };
    for text in sets {
        let conds = ConditionSet::parse(&text).unwrap();
        let carrier = conds.search_carrier([&formula], true);
        let n = count_admissible(&carrier, &conds, &Budget::default()).unwrap();
        println!("{:<22} |closure| = {:<3} relations = {n}", if text.is_empty() { "(none)" } else { &text }, carrier.len());
    }
}
