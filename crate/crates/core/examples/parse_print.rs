//! Parses formulas, prints them back, and shows closure and demodalization.
//!
//!     cargo run --example parse_print -- "[](p -> q) & ~<>r"

use bclkit::syntax::{parse, subformula_closure};

fn main() {
    let inputs: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if inputs.is_empty() {
        vec!["(p -> q) -> ~(p -> ~q)".to_string(), "[](p -> q) & ~<>r".to_string(), "p => q <=> ~q => ~p".to_string()]
    } else {
        inputs
    };
    for text in &inputs {
        match parse(text) {
            Ok(f) => {
                println!("{text}");
                println!("  printed     {f}");
                println!("  size        {}", f.size());
                println!("  modal depth {}", f.modal_depth());
                println!("  demodalized {}", f.demodalize());
                let closure = subformula_closure([&f]);
                let members: Vec<String> = closure.iter().map(|g| g.to_string()).collect();
                println!("  closure     {{{}}}", members.join(", "));
            }
            Err(e) => println!("{text}\n  error: {e}"),
        }
    }
}
