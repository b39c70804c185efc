//! Filtrates a random model through a subformula-closed set and checks
//! that every member keeps its truth value.
//!
//!     cargo run --example filtration -- 42

use bclkit::decision::filtration;
use bclkit::random::Generator;
use bclkit::syntax::{parse, subformula_closure};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let mut g = Generator::new(seed);
    let roots = [parse("<>p & q").unwrap(), parse("q -> p").unwrap()];
    let model = g.model(8, &roots, 0.02);
    let gamma = subformula_closure(&roots[..1]);
    let filt = filtration(&model, gamma.members()).unwrap();
    println!("seed {seed}: {} worlds -> {} classes over |Γ| = {}", model.worlds().len(), filt.model.worlds().len(), gamma.len());
    for (w, name) in model.worlds().iter().enumerate() {
        println!("  {name} in {}", filt.model.worlds()[filt.class_of[w]]);
    }
    let mismatches = (0..model.worlds().len())
        .flat_map(|w| gamma.iter().map(move |f| (w, f)))
        .filter(|&(w, f)| model.eval_at(w, f) != filt.model.eval_at(filt.class_of[w], f))
        .count();
    println!("truth mismatches on Γ: {mismatches}");
}
