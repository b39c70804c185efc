//! Verifies a Hilbert proof and a corrupted copy of it.
//!
//!     cargo run --example proof_check -- corpus/proofs/boethius.json

use bclkit::proofs::{verify, Proof, Rule};

const DEFAULT: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/proofs/aristotle.json");

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| DEFAULT.to_string());
    let text = std::fs::read_to_string(&path).expect("readable proof file");
    let proof = Proof::from_json(&text).expect("well-formed proof");
    println!("{path}: {} steps in {}", proof.steps.len(), proof.calculus.name());
    match verify(&proof) {
        Ok(()) => println!("  accepted; last line {}", proof.steps.last().unwrap().formula),
        Err(r) => println!("  rejected: {r}"),
    }
    // Claim the last step as a bare classical tautology.
    let mut broken = proof.clone();
    if let Some(last) = broken.steps.last_mut() {
        last.rule = Rule::Cpl;
    }
    match verify(&broken) {
        Ok(()) => println!("  corrupted copy accepted"),
        Err(r) => println!("  corrupted copy rejected: {r}"),
    }
}
