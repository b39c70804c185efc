//! Relating models and truth evaluation.
//!
//! A model has a nonempty set of worlds, an accessibility relation, a valuation
//! per world, and per world a finite relating relation over formula pairs. A
//! non-modal model is the one-world case with empty accessibility.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{parse, subformula_closure, ClosureSet, Formula, ParseError};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("a model needs at least one world")]
    NoWorlds,
    #[error("world `{0}` is listed twice")]
    DuplicateWorld(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("bad formula in {context}: {source}")]
    Formula {
        context: String,
        #[source]
        source: ParseError,
    },
    #[error("malformed model document: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Pair = (Formula, Formula);

/// A finite relating model. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatingModel {
    worlds: Vec<String>,
    access: BTreeSet<(usize, usize)>,
    successors: Vec<Vec<usize>>,
    valuation: Vec<BTreeSet<Arc<str>>>,
    relating: Vec<BTreeSet<Pair>>,
    carrier: ClosureSet,
}

impl RelatingModel {
    /// Builds a model. Worlds are stored sorted; `carrier_roots` widen the
    /// declared carrier beyond the closure of the formulas in relating pairs.
    pub fn new<W, A, V, R>(
        worlds: W,
        access: A,
        valuation: V,
        relating: R,
        carrier_roots: &[Formula],
    ) -> Result<RelatingModel, ModelError>
    where
        W: IntoIterator,
        W::Item: Into<String>,
        A: IntoIterator<Item = (String, String)>,
        V: IntoIterator<Item = (String, BTreeSet<Arc<str>>)>,
        R: IntoIterator<Item = (String, BTreeSet<Pair>)>,
    {
        let mut names: Vec<String> = worlds.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(ModelError::NoWorlds);
        }
        names.sort();
        for pair in names.windows(2) {
            if pair[0] == pair[1] {
                return Err(ModelError::DuplicateWorld(pair[0].clone()));
            }
        }
        let lookup = |w: &str| {
            names
                .binary_search_by(|n| n.as_str().cmp(w))
                .map_err(|_| ModelError::UnknownWorld(w.to_string()))
        };
        let mut edges = BTreeSet::new();
        for (from, to) in access {
            edges.insert((lookup(&from)?, lookup(&to)?));
        }
        let mut val = vec![BTreeSet::new(); names.len()];
        for (w, vars) in valuation {
            val[lookup(&w)?].extend(vars);
        }
        let mut rel = vec![BTreeSet::new(); names.len()];
        for (w, pairs) in relating {
            let slot = &mut rel[lookup(&w)?];
            if slot.is_empty() {
                *slot = pairs;
            } else {
                slot.extend(pairs);
            }
        }
        let declared = subformula_closure(carrier_roots);
        // Dedup by order first: clones share children, so comparing them is
        // shallow while hashing is not.
        let mentioned: BTreeSet<&Formula> = rel.iter().flatten().flat_map(|(a, b)| [a, b]).collect();
        let extra: Vec<&Formula> = mentioned.into_iter().filter(|f| !declared.contains(f)).collect();
        let carrier = if extra.is_empty() {
            declared
        } else {
            declared.extend(extra)
        };
        let mut successors = vec![Vec::new(); names.len()];
        for &(a, b) in &edges {
            successors[a].push(b);
        }
        Ok(RelatingModel {
            worlds: names,
            access: edges,
            successors,
            valuation: val,
            relating: rel,
            carrier,
        })
    }

    /// One world `w0`, no accessibility.
    pub fn single_world<'a, I, P>(true_vars: I, pairs: P) -> RelatingModel
    where
        I: IntoIterator<Item = &'a str>,
        P: IntoIterator<Item = Pair>,
    {
        let vars = true_vars.into_iter().map(Arc::from).collect();
        RelatingModel::new(
            ["w0"],
            [],
            [("w0".to_string(), vars)],
            [("w0".to_string(), pairs.into_iter().collect())],
            &[],
        )
        .expect("single world model is well formed")
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn world_index(&self, w: &str) -> Result<usize, ModelError> {
        self.worlds
            .binary_search_by(|n| n.as_str().cmp(w))
            .map_err(|_| ModelError::UnknownWorld(w.to_string()))
    }

    /// Accessibility as index pairs into [`worlds`](Self::worlds).
    pub fn access(&self) -> &BTreeSet<(usize, usize)> {
        &self.access
    }

    pub fn successors(&self, w: usize) -> &[usize] {
        &self.successors[w]
    }

    pub fn valuation(&self, w: usize) -> &BTreeSet<Arc<str>> {
        &self.valuation[w]
    }

    pub fn relating(&self, w: usize) -> &BTreeSet<Pair> {
        &self.relating[w]
    }

    /// Declared carrier: closed under subformulas, contains every formula of
    /// every relating pair.
    pub fn carrier(&self) -> &ClosureSet {
        &self.carrier
    }

    /// Same model with a wider declared carrier.
    pub fn with_carrier(&self, roots: &[Formula]) -> RelatingModel {
        let mut out = self.clone();
        out.carrier = self.carrier.extend(roots.iter());
        out
    }

    /// Same model with the relating relation of world `w` replaced.
    pub fn with_relating(&self, w: usize, pairs: BTreeSet<Pair>) -> RelatingModel {
        let mut out = self.clone();
        let extra: Vec<Formula> = pairs
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect();
        out.carrier = out.carrier.extend(extra.iter());
        out.relating[w] = pairs;
        out
    }

    /// Truth of `f` at the world with index `w`.
    pub fn eval_at(&self, w: usize, f: &Formula) -> bool {
        match f {
            Formula::Var(name) => self.valuation[w].contains(name),
            Formula::Neg(a) => !self.eval_at(w, a),
            Formula::And(a, b) => self.eval_at(w, a) && self.eval_at(w, b),
            Formula::Or(a, b) => self.eval_at(w, a) || self.eval_at(w, b),
            Formula::Box(a) => self.successors[w].iter().all(|&u| self.eval_at(u, a)),
            Formula::Diamond(a) => self.successors[w].iter().any(|&u| self.eval_at(u, a)),
            Formula::Arrow(a, b) => {
                (!self.eval_at(w, a) || self.eval_at(w, b))
                    && self.relating[w].contains(&((**a).clone(), (**b).clone()))
            }
        }
    }

    pub fn to_document(&self) -> ModelDocument {
        let name = |i: usize| self.worlds[i].clone();
        ModelDocument {
            worlds: self.worlds.clone(),
            access: self.access.iter().map(|&(a, b)| [name(a), name(b)]).collect(),
            valuation: (0..self.worlds.len())
                .map(|w| {
                    (
                        name(w),
                        self.valuation[w].iter().map(|v| v.to_string()).collect(),
                    )
                })
                .collect(),
            relating: (0..self.worlds.len())
                .map(|w| {
                    (
                        name(w),
                        self.relating[w]
                            .iter()
                            .map(|(a, b)| [a.to_string(), b.to_string()])
                            .collect(),
                    )
                })
                .collect(),
            carrier: Some(self.carrier.iter().map(|f| f.to_string()).collect()),
        }
    }

    pub fn from_document(doc: &ModelDocument) -> Result<RelatingModel, ModelError> {
        let formula = |text: &str, context: &str| {
            parse(text).map_err(|source| ModelError::Formula {
                context: context.to_string(),
                source,
            })
        };
        let mut relating = Vec::new();
        for (w, pairs) in &doc.relating {
            let mut set = BTreeSet::new();
            for [a, b] in pairs {
                let ctx = format!("relating pair of world `{w}`");
                set.insert((formula(a, &ctx)?, formula(b, &ctx)?));
            }
            relating.push((w.clone(), set));
        }
        let mut roots = Vec::new();
        for text in doc.carrier.iter().flatten() {
            roots.push(formula(text, "carrier")?);
        }
        RelatingModel::new(
            doc.worlds.iter().cloned(),
            doc.access.iter().map(|[a, b]| (a.clone(), b.clone())),
            doc.valuation
                .iter()
                .map(|(w, vars)| (w.clone(), vars.iter().map(|v| Arc::from(v.as_str())).collect())),
            relating,
            &roots,
        )
    }

    pub fn from_json(text: &str) -> Result<RelatingModel, ModelError> {
        let doc: ModelDocument = serde_json::from_str(text)?;
        RelatingModel::from_document(&doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("model documents serialize")
    }
}

/// Truth of `f` at world `world`.
pub fn eval(model: &RelatingModel, world: &str, f: &Formula) -> Result<bool, ModelError> {
    Ok(model.eval_at(model.world_index(world)?, f))
}

/// True at every world of the model.
pub fn holds_in_model(model: &RelatingModel, f: &Formula) -> bool {
    (0..model.worlds().len()).all(|w| model.eval_at(w, f))
}

/// On-disk model format. Formulas are grammar strings; missing valuation
/// entries mean every variable is false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub worlds: Vec<String>,
    #[serde(default)]
    pub access: Vec<[String; 2]>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub relating: BTreeMap<String, Vec<[String; 2]>>,
    /// Optional extra formulas whose closure joins the declared carrier.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carrier: Option<Vec<String>>,
}

/// Outcome of a bounded decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Valid,
    Countermodel {
        world: String,
        model: ModelDocument,
    },
    /// No countermodel within the searched bound, and the bound does not reach
    /// one that is known to be complete for this logic.
    BoundedValid {
        max_worlds: usize,
        required_worlds: Option<usize>,
        reason: String,
    },
}

impl Verdict {
    pub fn is_countermodel(&self) -> bool {
        matches!(self, Verdict::Countermodel { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn pair(a: &str, b: &str) -> Pair {
        (f(a), f(b))
    }

    #[test]
    fn arrow_needs_relation_and_material_truth() {
        let m = RelatingModel::single_world(["p", "q"], [pair("p", "q")]);
        assert!(eval(&m, "w0", &f("p -> q")).unwrap());
        let m = RelatingModel::single_world(["p", "q"], []);
        assert!(!eval(&m, "w0", &f("p -> q")).unwrap());
        let m = RelatingModel::single_world(["p"], [pair("p", "q")]);
        assert!(!eval(&m, "w0", &f("p -> q")).unwrap());
    }

    #[test]
    fn box_over_successors() {
        let m = RelatingModel::new(
            ["w0", "w1"],
            [("w0".to_string(), "w1".to_string())],
            [("w0".to_string(), [Arc::from("p")].into_iter().collect())],
            [],
            &[],
        )
        .unwrap();
        assert!(!eval(&m, "w0", &f("[]p")).unwrap());
        assert!(eval(&m, "w1", &f("[]p")).unwrap());
        assert!(!eval(&m, "w1", &f("<>p")).unwrap());
    }

    #[test]
    fn holds_in_model_examples() {
        let m = RelatingModel::single_world(["p"], []);
        assert!(holds_in_model(&m, &f("p | ~p")));
        assert!(!holds_in_model(&m, &f("p -> p")));

        let flip = RelatingModel::new(
            ["a", "b"],
            [],
            [("a".to_string(), [Arc::from("p")].into_iter().collect())],
            [],
            &[],
        )
        .unwrap();
        assert!(!holds_in_model(&flip, &f("p")));
    }

    #[test]
    fn unknown_world_is_an_error() {
        let m = RelatingModel::single_world([], []);
        assert!(matches!(
            eval(&m, "w9", &f("p")),
            Err(ModelError::UnknownWorld(_))
        ));
    }

    #[test]
    fn document_validation() {
        assert!(matches!(
            RelatingModel::from_json(r#"{"worlds":[]}"#),
            Err(ModelError::NoWorlds)
        ));
        assert!(matches!(
            RelatingModel::from_json(r#"{"worlds":["a"],"access":[["a","b"]]}"#),
            Err(ModelError::UnknownWorld(_))
        ));
        assert!(matches!(
            RelatingModel::from_json(r#"{"worlds":["a"],"relating":{"a":[["p","q ->"]]}}"#),
            Err(ModelError::Formula { .. })
        ));
        assert!(matches!(
            RelatingModel::from_json(r#"{"worlds":["a","a"]}"#),
            Err(ModelError::DuplicateWorld(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"worlds":["w1","w0"],"access":[["w0","w1"]],
            "valuation":{"w0":["p"]},"relating":{"w0":[["p","~q"]]},"carrier":["[]p"]}"#;
        let m = RelatingModel::from_json(text).unwrap();
        assert_eq!(m.worlds(), ["w0", "w1"]);
        assert!(m.carrier().contains(&f("[]p")));
        assert!(m.carrier().contains(&f("q")));
        let again = RelatingModel::from_json(&m.to_json()).unwrap();
        assert_eq!(again, m);
    }
}
