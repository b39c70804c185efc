use bclkit::decision::{decide, SearchConfig};
use bclkit::logic::Logic;
use bclkit::proofs::{verify, Proof};

fn proofs() -> Vec<(String, Proof)> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/proofs");
    let mut out: Vec<(String, Proof)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            (p.file_name().unwrap().to_string_lossy().into_owned(), Proof::from_json(&text).unwrap())
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[test]
fn every_corpus_proof_verifies() {
    for (name, proof) in proofs() {
        assert!(verify(&proof).is_ok(), "{name}: {:?}", verify(&proof));
    }
}

#[test]
fn corpus_theorems_have_no_small_countermodel() {
    let cfg = SearchConfig { deterministic: true, ..SearchConfig::default() };
    for (name, proof) in proofs() {
        let logic = Logic::parse(proof.calculus.name()).unwrap();
        let conds = logic.conditions();
        for f in proof.theorems() {
            let verdict = decide(f, &conds, &cfg).unwrap();
            assert!(!verdict.is_countermodel(), "{name}: {f} refuted in {logic}");
        }
    }
}
