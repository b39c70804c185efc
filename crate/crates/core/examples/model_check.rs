//! Evaluates formulas in a hand-built two-world model.
//!
//! At `w0` the relating relation links `p` to `q` only, so `p -> q` holds
//! there while `q -> p` fails even though both material implications hold.

use std::collections::BTreeSet;
use std::sync::Arc;

use bclkit::semantics::{eval, RelatingModel};
use bclkit::syntax::parse;

fn main() {
    let f = |s: &str| parse(s).unwrap();
    let pairs: BTreeSet<_> = [(f("p"), f("q"))].into_iter().collect();
    let model = RelatingModel::new(
        ["w0", "w1"],
        [("w0".to_string(), "w1".to_string())],
        [
            ("w0".to_string(), BTreeSet::from([Arc::from("p"), Arc::from("q")])),
            ("w1".to_string(), BTreeSet::from([Arc::from("q")])),
        ],
        [("w0".to_string(), pairs)],
        &[],
    )
    .expect("model is well formed");
    println!("{}", model.to_json());
    for text in ["p -> q", "q -> p", "p => q", "[]q", "<>p", "~(p -> ~q)"] {
        for w in ["w0", "w1"] {
            println!("{w} |= {text:<12} {}", eval(&model, w, &f(text)).unwrap());
        }
    }
}
