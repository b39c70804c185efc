//! Decides the connexive theses and two non-theses in a few logics.

use bclkit::decision::{decide, SearchConfig};
use bclkit::logic::Logic;
use bclkit::semantics::Verdict;
use bclkit::syntax::parse;

fn main() {
    let formulas = [
        "~(p -> ~p)",
        "~(~p -> p)",
        "(p -> q) -> ~(p -> ~q)",
        "(p -> ~q) -> ~(p -> q)",
        "(p -> q) -> (q -> p)",
        "p -> p",
        "[]p -> p",
    ];
    let cfg = SearchConfig::default();
    for name in ["BCL", "BCL+cun", "MBCL+T"] {
        let logic = Logic::parse(name).unwrap();
        println!("{name}");
        for text in formulas {
            let f = parse(text).unwrap();
            if !logic.modal && !f.is_modal_free() {
                continue;
            }
            let verdict = match decide(&f, &logic.conditions(), &cfg) {
                Ok(Verdict::Valid) => "valid".to_string(),
                Ok(Verdict::Countermodel { world, .. }) => format!("refuted at {world}"),
                Ok(Verdict::BoundedValid { max_worlds, .. }) => format!("no countermodel up to {max_worlds} worlds"),
                Err(e) => format!("error: {e}"),
            };
            println!("  {text:<26} {verdict}");
        }
    }
}
