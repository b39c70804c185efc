//! A modal law holds once both its frame property and its relating
//! counterpart are imposed, and fails when either is dropped.

use bclkit::conditions::ConditionSet;
use bclkit::decision::{decide, SearchConfig};
use bclkit::semantics::Verdict;
use bclkit::syntax::parse;

fn main() {
    let law = parse("[]p -> p").unwrap();
    println!("{law}");
    let cfg = SearchConfig::default();
    // `t` is the frame property plus its pair condition; `reflexive` and
    // `rel:t` are the two halves on their own.
    for text in ["t", "reflexive", "rel:t", "a1,a2,b0,b1,b2,demL,t_d"] {
        let conds = ConditionSet::parse(text).unwrap();
        let shown = match decide(&law, &conds, &cfg).unwrap() {
            Verdict::Valid => "valid".to_string(),
            Verdict::Countermodel { world, model } => {
                format!("refuted at {world} of {} worlds, access {:?}", model.worlds.len(), model.access)
            }
            v => format!("{v:?}"),
        };
        println!("  {text:<26} {shown}");
    }
}
