//! Acceptance suite. Prints one PASS or FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use bclkit::conditions::{admissible, ConditionSet};
use bclkit::decision::{
    count_admissible, decide, demodal_complete, filtration, Budget, SearchConfig,
};
use bclkit::logic::Logic;
use bclkit::proofs::{verify, Proof, Rule};
use bclkit::random::{Generator, Sampler};
use bclkit::semantics::{eval, RelatingModel, Verdict};
use bclkit::syntax::{parse, subformula_closure, Formula};
use rand::Rng;

type Outcome = Result<String, String>;

fn f(text: &str) -> Formula {
    parse(text).unwrap()
}

fn conds(text: &str) -> ConditionSet {
    ConditionSet::parse(text).unwrap()
}

fn corpus(dir: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(dir)
}

fn run_cli(args: &[&str], stdin: &str) -> (i32, String) {
    let mut argv = vec!["bclkit"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = bclkit::cli::run(&argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
}

fn connexive_theses() -> Outcome {
    let base = ConditionSet::bcl();
    for text in ["~(p -> ~p)", "~(~p -> p)", "(p -> q) -> ~(p -> ~q)", "(p -> ~q) -> ~(p -> q)"] {
        let v = decide(&f(text), &base, &SearchConfig::default()).map_err(|e| e.to_string())?;
        if v != Verdict::Valid {
            return Err(format!("{text}: {v:?}"));
        }
    }
    Ok("4 theses valid".into())
}

fn non_theses() -> Outcome {
    let texts = ["(p -> q) => (q -> p)", "p -> p", "((p -> q) & (q -> r)) => (p -> r)"];
    for text in texts {
        let (code, out) = run_cli(&["decide", "--logic", "BCL", "--json", "--deterministic", text], "");
        if code != 1 {
            return Err(format!("{text}: decide exit {code}: {out}"));
        }
        let verdict: Verdict = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        let Verdict::Countermodel { world, model } = verdict else {
            return Err(format!("{text}: no countermodel"));
        };
        let model = RelatingModel::from_document(&model).map_err(|e| e.to_string())?;
        if eval(&model, &world, &f(text)).unwrap() || !admissible(&model, &ConditionSet::bcl()).admissible {
            return Err(format!("{text}: countermodel does not re-validate"));
        }
        let (code, report) = run_cli(&["check", "--model", "-", "--logic", "BCL", text], &out);
        if code != 1 || !report.contains("|/=") || report.contains("not admissible") {
            return Err(format!("{text}: check disagrees: {report}"));
        }
    }
    Ok("3 countermodels re-validated".into())
}

fn gcun_inconsistency() -> Outcome {
    let cases = [
        ("b0,b1,gcun:0,1,0,2", "(p -> q) -> ~~(p -> ~q)", true),
        ("a1,r1,r4", "~p", false),
        ("a2,r1,r3,r4", "~p", false),
        ("b0,b1,r1", "(p -> q) -> ~(p -> ~q)", false),
        ("b0,b2,r1", "(p -> ~q) -> ~(p -> q)", false),
    ];
    for (c, root, pad) in cases {
        let set = conds(c);
        let carrier = set.search_carrier([&f(root)], pad);
        let n = count_admissible(&carrier, &set, &Budget::default()).map_err(|e| e.to_string())?;
        if n != 0u32.into() {
            return Err(format!("{{{c}}} over closure of {root}: {n} relations"));
        }
    }
    Ok("5 condition sets admit no relation".into())
}

fn gcun_triviality() -> Outcome {
    let mut g = Generator::new(4);
    let mut carriers = Vec::new();
    while carriers.len() < 20 {
        let depth = g.rng().gen_range(1..=3);
        let root = g.formula(&["p", "q"], depth, false);
        let carrier = subformula_closure([&root]);
        if carrier.len() <= 4 {
            carriers.push(carrier);
        }
    }
    let budget = Budget::default();
    for carrier in &carriers {
        for k in 0..=2 {
            let g = bclkit::conditions::Condition::Gcun { k, l: k, m: k, n: k };
            for base in [ConditionSet::new(), ConditionSet::bcl()] {
                let with = base.clone().with(g);
                let a = count_admissible(carrier, &base, &budget).map_err(|e| e.to_string())?;
                let b = count_admissible(carrier, &with, &budget).map_err(|e| e.to_string())?;
                if a != b {
                    return Err(format!("{carrier:?} {{{base}}} + {g}: {a} vs {b}"));
                }
            }
        }
    }
    Ok("20 carriers, k = 0..2, counts equal".into())
}

fn filtration_lemma() -> Outcome {
    let mut truth_failures = 0;
    let mut bound_failures = Vec::new();
    for seed in 0..100u64 {
        let mut g = Generator::new(500 + seed);
        let gamma = loop {
            let depth = g.rng().gen_range(0..=3);
            let root = g.formula(&["p", "q"], depth, true);
            let gamma = subformula_closure([&root]);
            if gamma.len() <= 6 {
                break gamma;
            }
        };
        let worlds = g.rng().gen_range(1..=4);
        let model = g.model(worlds, gamma.members(), 0.3);
        let filt = filtration(&model, gamma.members()).map_err(|e| e.to_string())?;
        for w in 0..worlds {
            for a in gamma.iter() {
                if model.eval_at(w, a) != filt.model.eval_at(filt.class_of[w], a) {
                    truth_failures += 1;
                }
            }
        }
        if filt.model.worlds().len() > 1 << gamma.len() {
            bound_failures.push(format!(
                "seed {seed}: |Γ| = {}, {} classes",
                gamma.len(),
                filt.model.worlds().len()
            ));
        }
    }
    if truth_failures > 0 || !bound_failures.is_empty() {
        return Err(format!(
            "{truth_failures} truth mismatches; {} models exceed 2^|Γ| classes ({})",
            bound_failures.len(),
            bound_failures.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
        ));
    }
    Ok("100 models, truth preserved, bound respected".into())
}

fn demodal_equivalence() -> Outcome {
    let set = Logic::parse("MBCL+CUDL").unwrap().conditions();
    let dem_l = conds("demL");
    let mut made = 0;
    let mut seed = 0u64;
    while made < 100 {
        seed += 1;
        if seed > 1000 {
            return Err(format!("only {made} admissible models generated"));
        }
        let mut g = Generator::new(9000 + seed);
        let root = g.formula(&["p", "q"], 3, true);
        let worlds = g.rng().gen_range(1..=3);
        let Some(model) = g.admissible_model(worlds, &[root.clone()], &set) else {
            continue;
        };
        made += 1;
        let gamma = subformula_closure([&root]);
        let filt = filtration(&model, gamma.members()).map_err(|e| e.to_string())?;
        let plus = demodal_complete(&filt.model);
        for w in 0..plus.worlds().len() {
            for a in gamma.iter() {
                if filt.model.eval_at(w, a) != plus.eval_at(w, a) {
                    return Err(format!("seed {seed}: {a} differs at {}", plus.worlds()[w]));
                }
            }
        }
        let report = admissible(&plus, &dem_l);
        if !report.admissible {
            return Err(format!("seed {seed}: {}", report.violations[0].reason));
        }
    }
    Ok("100 models, equivalence and demL hold".into())
}

const REGISTRY: [&str; 16] = [
    "BCL",
    "BCL+cun",
    "BCL+gcun:0,0,2,2",
    "BCL+gcun:2,0,2,2",
    "MBCL",
    "MBCL+D1,D2",
    "MBCL+K",
    "MBCL+T",
    "MBCL+D",
    "MBCL+B",
    "MBCL+4",
    "MBCL+5",
    "MBCL+gcun:0,2,2,2",
    "MBCL+CUDR",
    "MBCL+CUDL",
    "MBCL+CUDE",
];

fn soundness() -> Outcome {
    const BATCHES: usize = 20;
    const PER_BATCH: usize = 10;
    const MODELS: usize = 50;
    for (ci, name) in REGISTRY.iter().enumerate() {
        let logic = Logic::parse(name).unwrap();
        let calc = logic.calculus().map_err(|e| e.to_string())?;
        let set = logic.conditions();
        let mut g = Generator::new(70_000 + ci as u64);
        for batch in 0..BATCHES {
            let instances: Vec<(String, Formula)> = (0..PER_BATCH)
                .map(|_| {
                    let schema = &calc.schemata()[g.rng().gen_range(0..calc.schemata().len())];
                    let bindings = schema
                        .metas()
                        .iter()
                        .map(|m| {
                            let depth = g.rng().gen_range(0..=2);
                            (m.to_string(), g.formula(&["p", "q"], depth, logic.modal))
                        })
                        .collect();
                    (schema.name().to_string(), schema.instantiate(&bindings).unwrap())
                })
                .collect();
            let roots: Vec<Formula> = instances.iter().map(|(_, f)| f.clone()).collect();
            let sampler = Sampler::new(set.search_carrier(&roots, false), &set);
            let mut made = 0;
            let mut tries = 0;
            while made < MODELS {
                tries += 1;
                if tries > 4 * MODELS {
                    return Err(format!("{name}: only {made} admissible models for batch {batch}"));
                }
                let worlds = g.rng().gen_range(1..=3);
                let Some(model) = sampler.sample(&mut g, worlds) else {
                    continue;
                };
                made += 1;
                for (schema, inst) in &instances {
                    for w in 0..worlds {
                        if !model.eval_at(w, inst) {
                            return Err(format!(
                                "{name}: {schema} instance {inst} fails at {}",
                                model.worlds()[w]
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{} calculi x {} instances x {MODELS} models",
        REGISTRY.len(),
        BATCHES * PER_BATCH
    ))
}

fn modal_reduction() -> Outcome {
    let target = f("[]p -> p");
    let cfg = SearchConfig::default();
    let run = |c: &str| decide(&target, &conds(c), &cfg).map_err(|e| e.to_string());
    let expect = [
        ("t", false),
        ("reflexive", true),
        ("rel:t", true),
        ("a1,a2,b0,b1,b2,demL,t_d", false),
    ];
    for (c, counter) in expect {
        let v = run(c)?;
        if v.is_countermodel() != counter || (!counter && v != Verdict::Valid) {
            return Err(format!("{{{c}}}: {v:?}"));
        }
    }
    Ok("valid under t and demL + t_d, refuted without pair or frame".into())
}

fn independence() -> Outcome {
    let load = |name: &str| {
        let text = std::fs::read_to_string(corpus("models").join(name)).unwrap();
        RelatingModel::from_json(&text).map_err(|e| e.to_string())
    };
    let m = load("independence_m.json")?;
    let m2 = load("independence_m_prime.json")?;
    let boxed = f("[]p");
    if eval(&m, "w", &boxed).unwrap() == eval(&m2, "w", &boxed).unwrap() {
        return Err("[]p does not separate M and M'".into());
    }
    let mut g = Generator::new(99);
    for _ in 0..5 {
        let sample = g.formula(&["p", "q"], 3, false);
        if eval(&m, "w", &sample).unwrap() != eval(&m2, "w", &sample).unwrap() {
            return Err(format!("{sample} separates M and M'"));
        }
    }
    let path = corpus("models").join("replacement_failure.json");
    let path = path.to_str().unwrap();
    let (kept, _) = run_cli(&["check", "--model", path, "(p -> q) -> ~(p -> ~q)"], "");
    let (lost, _) = run_cli(&["check", "--model", path, "((p -> q) & (r | ~r)) -> ~(p -> ~q)"], "");
    if (kept, lost) != (0, 1) {
        return Err(format!("replacement model: check exits {kept}, {lost}"));
    }
    Ok("[]p separates, 5 samples agree, replacement fails".into())
}

/// Ten single-step tamperings, each making its step unjustifiable.
fn mutations(proof: &Proof) -> Vec<(usize, Proof)> {
    let len = proof.steps.len();
    let foreign = bclkit::proofs::SCHEMA_NAMES
        .iter()
        .find(|n| proof.calculus.schema(n).is_none())
        .expect("some schema lies outside the calculus");
    let fresh = Formula::var("zz");
    (0..10)
        .map(|m| {
            let s = m % len;
            let mut p = proof.clone();
            let step = &mut p.steps[s];
            let original = step.formula.clone();
            match m {
                0 => step.formula = fresh.clone(),
                1 => step.formula = original.neg(),
                2 => step.formula = original.and(fresh.clone()),
                3 => step.rule = Rule::Ds(s + 1, s + 1),
                4 => step.rule = Rule::Nec(s + 2),
                5 => step.rule = Rule::Axiom { name: "A9".into(), bindings: None },
                6 => step.rule = Rule::Axiom { name: foreign.to_string(), bindings: None },
                7 => step.formula = fresh.clone().or(fresh.clone()),
                8 => step.formula = original.neg().neg().neg(),
                _ => step.formula = original.clone().and(original.neg()),
            }
            (s + 1, p)
        })
        .collect()
}

fn proof_corpus() -> Outcome {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus("proofs"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    if files.len() < 10 {
        return Err(format!("only {} proofs", files.len()));
    }
    let mut used = BTreeSet::new();
    for path in &files {
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        let proof = Proof::from_json(&std::fs::read_to_string(path).unwrap()).map_err(|e| format!("{name}: {e}"))?;
        verify(&proof).map_err(|r| format!("{name}: {r}"))?;
        for step in &proof.steps {
            used.insert(match &step.rule {
                Rule::Axiom { name, .. } => name.clone(),
                Rule::Cpl => "CPL".into(),
                Rule::Ds(..) => "DS".into(),
                Rule::Nec(_) => "Nec".into(),
            });
        }
        for (step, mutant) in mutations(&proof) {
            match verify(&mutant) {
                Err(r) if r.step == step => {}
                other => return Err(format!("{name}: mutation at step {step} gave {other:?}")),
            }
        }
    }
    let missing: Vec<&str> = bclkit::proofs::SCHEMA_NAMES
        .iter()
        .chain(&["CPL", "DS", "Nec"])
        .filter(|n| !used.contains(**n))
        .copied()
        .collect();
    if !missing.is_empty() {
        return Err(format!("corpus never uses {}", missing.join(", ")));
    }
    Ok(format!("{} proofs verified, {} mutants rejected", files.len(), files.len() * 10))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("connexive theses", connexive_theses),
        ("non-symmetry and non-reflexivity", non_theses),
        ("gcun inconsistency", gcun_inconsistency),
        ("gcun triviality", gcun_triviality),
        ("filtration truth lemma and bound", filtration_lemma),
        ("M+ equivalence", demodal_equivalence),
        ("soundness sampling", soundness),
        ("modal-law reduction", modal_reduction),
        ("independence spot-checks", independence),
        ("proof corpus", proof_corpus),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
