use std::collections::{BTreeMap, BTreeSet, HashMap};

use proptest::prelude::*;

use bclkit::conditions::{admissible, ConditionSet};
use bclkit::decision::{decide, demodal_complete, SearchConfig};
use bclkit::proofs::{is_cpl_instance, Bindings, Schema, SCHEMA_NAMES};
use bclkit::random::Generator;
use bclkit::semantics::{RelatingModel, Verdict};
use bclkit::syntax::{parse, subformula_closure, Formula};

fn formula(modal: bool) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just("p"), Just("q"), Just("r")].prop_map(Formula::var);
    leaf.prop_recursive(4, 12, 2, move |inner| {
        let mut arms = vec![
            inner.clone().prop_map(Formula::neg).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.arrow(b)).boxed(),
        ];
        if modal {
            arms.push(inner.clone().prop_map(Formula::boxed).boxed());
            arms.push(inner.prop_map(Formula::diamond).boxed());
        }
        proptest::strategy::Union::new(arms)
    })
}

fn schemata() -> Vec<Schema> {
    let mut all: Vec<Schema> = SCHEMA_NAMES.iter().filter_map(|n| Schema::named(n)).collect();
    all.push(Schema::gcun(0, 0, 2, 2));
    all.push(Schema::gcun2(2, 0, 2, 3));
    all
}

/// Some assignment of subformulas of `f` to the metavariables instantiates
/// the schema to `f`.
fn brute_match(schema: &Schema, f: &Formula) -> bool {
    let subs: Vec<Formula> = subformula_closure([f]).iter().cloned().collect();
    let metas = schema.metas();
    let mut choice = vec![0usize; metas.len()];
    loop {
        let bindings: Bindings = metas.iter().zip(&choice).map(|(m, &i)| (m.to_string(), subs[i].clone())).collect();
        if schema.instantiate(&bindings).ok().as_ref() == Some(f) {
            return true;
        }
        let Some(k) = choice.iter().position(|&i| i + 1 < subs.len()) else { return false };
        choice[k] += 1;
        choice[..k].iter_mut().for_each(|i| *i = 0);
    }
}

fn classical(f: &Formula, row: &HashMap<&str, bool>) -> bool {
    match f {
        Formula::Var(v) => row[&**v],
        Formula::Neg(a) => !classical(a, row),
        Formula::And(a, b) => classical(a, row) && classical(b, row),
        Formula::Or(a, b) => classical(a, row) || classical(b, row),
        _ => unreachable!("skeleton is Boolean"),
    }
}

fn boolean(vars: &'static [&'static str]) -> impl Strategy<Value = Formula> {
    let leaf = proptest::sample::select(vars).prop_map(Formula::var);
    leaf.prop_recursive(4, 14, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.or(b)),
        ]
    })
}

fn substitute(f: &Formula, map: &BTreeMap<&str, Formula>) -> Formula {
    match f {
        Formula::Var(v) => map[&**v].clone(),
        Formula::Neg(a) => substitute(a, map).neg(),
        Formula::And(a, b) => substitute(a, map).and(substitute(b, map)),
        Formula::Or(a, b) => substitute(a, map).or(substitute(b, map)),
        _ => unreachable!(),
    }
}

const SKELETON_VARS: &[&str] = &["x", "y", "z"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_is_identity(f in formula(true)) {
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn matcher_agrees_with_brute_force(f in formula(true), pick in 0usize..64) {
        let all = schemata();
        let schema = &all[pick % all.len()];
        if f.size() <= 12 {
            let found = schema.match_formula(&f);
            prop_assert_eq!(found.is_some(), brute_match(schema, &f), "{} on {}", schema.name(), f);
            if let Some(b) = found {
                prop_assert_eq!(schema.instantiate(&b).unwrap(), f);
            }
        }
    }

    #[test]
    fn matcher_finds_every_instance(a in formula(true), b in formula(true), pick in 0usize..64) {
        let all = schemata();
        let schema = &all[pick % all.len()];
        let bindings: Bindings = [("A".to_string(), a), ("B".to_string(), b)]
            .into_iter()
            .take(schema.metas().len())
            .collect();
        if let Ok(f) = schema.instantiate(&bindings) {
            prop_assert!(schema.match_formula(&f).is_some(), "{} on {}", schema.name(), f);
        }
    }

    #[test]
    fn demodalization_is_a_homomorphism(a in formula(true), b in formula(true)) {
        let d = |f: &Formula| f.demodalize();
        prop_assert!(d(&a).is_modal_free());
        prop_assert_eq!(d(&d(&a)), d(&a));
        prop_assert_eq!(d(&a.clone().arrow(b.clone())), d(&a).arrow(d(&b)));
        prop_assert_eq!(d(&a.clone().boxed()), d(&a));
        prop_assert_eq!(d(&a.clone().diamond().neg()), d(&a).neg());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn cpl_agrees_with_substitution(skeleton in boolean(SKELETON_VARS), fillers in proptest::collection::vec(formula(true), 3)) {
        // Distinct non-Boolean fillers keep the skeleton recoverable.
        let heads = [Formula::arrow, |a: Formula, b: Formula| a.and(b).boxed(), |a: Formula, b: Formula| a.or(b).diamond()];
        let map: BTreeMap<&str, Formula> = SKELETON_VARS
            .iter()
            .zip(fillers.iter().zip(heads))
            .map(|(v, (g, head))| (*v, head(g.clone(), Formula::var(v))))
            .collect();
        let tautology = (0u8..8).all(|bits| {
            let row: HashMap<&str, bool> = SKELETON_VARS.iter().enumerate().map(|(i, v)| (*v, bits >> i & 1 == 1)).collect();
            classical(&skeleton, &row)
        });
        prop_assert_eq!(is_cpl_instance(&substitute(&skeleton, &map)).unwrap(), tautology);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn countermodels_are_genuine(f in formula(true), which in 0usize..4) {
        let conds = ConditionSet::parse(["a1,a2,b0,b1,b2", "a1,a2,b0,b1,b2,cun", "a1,a2,b0,b1,b2,t,k1", "a1,a2,b0,b1,b2,demL,d"][which]).unwrap();
        let cfg = SearchConfig { deterministic: true, ..SearchConfig::default() };
        if let Ok(Verdict::Countermodel { world, model }) = decide(&f, &conds, &cfg) {
            let model = RelatingModel::from_document(&model).unwrap();
            let w = model.world_index(&world).unwrap();
            prop_assert!(!model.eval_at(w, &f));
            let report = admissible(&model, &conds);
            prop_assert!(report.admissible, "{:?}", report.violations.first());
        }
    }

    #[test]
    fn stronger_conditions_refute_less(f in formula(false)) {
        // Every model of the larger set is a model of the smaller one.
        let chain = ["a1", "a1,a2,b0", "a1,a2,b0,b1,b2", "a1,a2,b0,b1,b2,cun"];
        let cfg = SearchConfig { deterministic: true, ..SearchConfig::default() };
        let refuted: Vec<bool> = chain
            .iter()
            .map(|c| decide(&f, &ConditionSet::parse(c).unwrap(), &cfg).unwrap().is_countermodel())
            .collect();
        for pair in refuted.windows(2) {
            prop_assert!(pair[0] || !pair[1], "{}: {:?}", f, refuted);
        }
    }
}

#[test]
fn demodal_completion_satisfies_dem_l() {
    let mut g = Generator::new(5);
    let conds = ConditionSet::parse("demL").unwrap();
    for _ in 0..30 {
        let roots = [g.formula(&["p", "q"], 3, true), g.formula(&["p", "q"], 2, true)];
        let model = g.model(2, &roots, 0.05).with_carrier(&roots);
        let complete = demodal_complete(&model);
        let report = admissible(&complete, &conds);
        assert!(report.admissible, "{:?}", report.violations.first());
        let before: BTreeSet<_> = model.relating(0).iter().collect();
        assert!(before.iter().all(|p| complete.relating(0).contains(p)));
    }
}
