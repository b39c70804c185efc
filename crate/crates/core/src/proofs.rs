//! Hilbert-style proof checking: axiom schemata, schema matching, the CPL
//! test, and step-by-step verification.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logic::{Logic, LogicError};
use crate::syntax::{apply_negations, parse, Formula, ParseError};

/// Metavariable names, in binding order.
pub const METAS: [&str; 2] = ["A", "B"];

/// Largest number of skeleton atoms the CPL test will tabulate.
pub const CPL_ATOMS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Pat {
    Meta(usize),
    /// Demodalized image of a metavariable, bound elsewhere in the template.
    Dem(usize),
    Neg(Box<Pat>),
    And(Box<Pat>, Box<Pat>),
    Or(Box<Pat>, Box<Pat>),
    Arrow(Box<Pat>, Box<Pat>),
    Box(Box<Pat>),
    Diamond(Box<Pat>),
}

impl Pat {
    /// Templates are written as formulas over `a`, `b` and their
    /// demodalized forms `da`, `db`.
    fn from_template(f: &Formula) -> Pat {
        let b = |g: &Formula| Box::new(Pat::from_template(g));
        match f {
            Formula::Var(name) => match &**name {
                "a" => Pat::Meta(0),
                "b" => Pat::Meta(1),
                "da" => Pat::Dem(0),
                "db" => Pat::Dem(1),
                other => panic!("template variable {other}"),
            },
            Formula::Neg(x) => Pat::Neg(b(x)),
            Formula::And(x, y) => Pat::And(b(x), b(y)),
            Formula::Or(x, y) => Pat::Or(b(x), b(y)),
            Formula::Arrow(x, y) => Pat::Arrow(b(x), b(y)),
            Formula::Box(x) => Pat::Box(b(x)),
            Formula::Diamond(x) => Pat::Diamond(b(x)),
        }
    }

    fn matches(&self, f: &Formula, binds: &mut [Option<Formula>; 2], dems: &mut Vec<(usize, Formula)>) -> bool {
        match (self, f) {
            (Pat::Meta(i), _) => match &binds[*i] {
                Some(bound) => bound == f,
                None => {
                    binds[*i] = Some(f.clone());
                    true
                }
            },
            (Pat::Dem(i), _) => {
                dems.push((*i, f.clone()));
                true
            }
            (Pat::Neg(p), Formula::Neg(x))
            | (Pat::Box(p), Formula::Box(x))
            | (Pat::Diamond(p), Formula::Diamond(x)) => p.matches(x, binds, dems),
            (Pat::And(p, q), Formula::And(x, y))
            | (Pat::Or(p, q), Formula::Or(x, y))
            | (Pat::Arrow(p, q), Formula::Arrow(x, y)) => {
                p.matches(x, binds, dems) && q.matches(y, binds, dems)
            }
            _ => false,
        }
    }

    fn instantiate(&self, binds: &[Formula; 2]) -> Formula {
        match self {
            Pat::Meta(i) => binds[*i].clone(),
            Pat::Dem(i) => binds[*i].demodalize(),
            Pat::Neg(p) => p.instantiate(binds).neg(),
            Pat::And(p, q) => p.instantiate(binds).and(q.instantiate(binds)),
            Pat::Or(p, q) => p.instantiate(binds).or(q.instantiate(binds)),
            Pat::Arrow(p, q) => p.instantiate(binds).arrow(q.instantiate(binds)),
            Pat::Box(p) => p.instantiate(binds).boxed(),
            Pat::Diamond(p) => p.instantiate(binds).diamond(),
        }
    }

    fn arity(&self) -> usize {
        match self {
            Pat::Meta(i) | Pat::Dem(i) => i + 1,
            Pat::Neg(p) | Pat::Box(p) | Pat::Diamond(p) => p.arity(),
            Pat::And(p, q) | Pat::Or(p, q) | Pat::Arrow(p, q) => p.arity().max(q.arity()),
        }
    }
}

/// Metavariable bindings keyed by `A`, `B`.
pub type Bindings = BTreeMap<String, Formula>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schema {
    name: String,
    pattern: Pat,
    arity: usize,
}

/// Every schema name the checker knows, including ones outside a given
/// calculus.
pub const SCHEMA_NAMES: [&str; 22] = [
    "A1", "A2", "B1", "B2", "Imp", "CUN1", "CUN2", "GCUN", "GCUN2", "Dual", "K⊃", "D1", "D2",
    "K", "T", "D", "B", "4", "5", "CUDR", "CUDL", "CUDE",
];

const TEMPLATES: [(&str, &str); 19] = [
    ("A1", "~(a -> ~a)"),
    ("A2", "~(~a -> a)"),
    ("B1", "(a -> b) -> ~(a -> ~b)"),
    ("B2", "(a -> ~b) -> ~(a -> b)"),
    ("Imp", "(a -> b) => (a => b)"),
    ("CUN1", "(a -> b) => ((~a -> ~b) | (~a & b))"),
    ("CUN2", "(a -> b) => (~~a -> ~~b)"),
    ("Dual", "<>a <=> ~[]~a"),
    ("K⊃", "[](a => b) => ([]a => []b)"),
    ("D1", "<>a -> ~[]~a"),
    ("D2", "~[]~a -> <>a"),
    ("K", "[](a -> b) -> ([]a -> []b)"),
    ("T", "[]a -> a"),
    ("D", "[]a -> <>a"),
    ("B", "a -> []<>a"),
    ("4", "[]a -> [][]a"),
    ("5", "<>a -> []<>a"),
    ("CUDR", "(a -> b) => ((da -> db) | (da & ~db))"),
    ("CUDL", "(da -> db) => ((a -> b) | (a & ~b))"),
];

impl Schema {
    fn from_text(name: &str, template: &str) -> Schema {
        let pattern = Pat::from_template(&parse(template).expect("template parses"));
        Schema {
            name: name.to_string(),
            arity: pattern.arity(),
            pattern,
        }
    }

    /// A fixed schema by name. `GCUN` and `GCUN2` carry parameters and are
    /// built by [`Schema::gcun`] and [`Schema::gcun2`].
    pub fn named(name: &str) -> Option<Schema> {
        if name == "CUDE" {
            let r = TEMPLATES.iter().find(|t| t.0 == "CUDR").unwrap().1;
            let l = TEMPLATES.iter().find(|t| t.0 == "CUDL").unwrap().1;
            return Some(Schema::from_text("CUDE", &format!("({r}) & ({l})")));
        }
        TEMPLATES
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(n, t)| Schema::from_text(n, t))
    }

    pub fn gcun(k: usize, l: usize, m: usize, n: usize) -> Schema {
        let neg = |j: usize, x: &str| format!("{}{x}", "~".repeat(j));
        let text = format!(
            "({} -> {}) => (({} -> {}) | ({} & {}))",
            neg(k, "a"),
            neg(l, "b"),
            neg(m, "a"),
            neg(n, "b"),
            neg(m, "a"),
            neg(n + 1, "b")
        );
        Schema::from_text("GCUN", &text)
    }

    pub fn gcun2(k: usize, l: usize, m: usize, n: usize) -> Schema {
        let a = apply_negations(k, Formula::var("a"));
        let b = apply_negations(l, Formula::var("b"));
        let c = apply_negations(2 * m - k, Formula::var("a"));
        let d = apply_negations(2 * n - l, Formula::var("b"));
        let pattern = Pat::from_template(&a.arrow(b).implies(c.arrow(d)));
        Schema {
            name: "GCUN2".into(),
            arity: 2,
            pattern,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Metavariables the schema uses.
    pub fn metas(&self) -> &'static [&'static str] {
        &METAS[..self.arity]
    }

    /// Bindings under which the schema instantiates to exactly `f`.
    pub fn match_formula(&self, f: &Formula) -> Option<Bindings> {
        let mut binds = [None, None];
        let mut dems = Vec::new();
        if !self.pattern.matches(f, &mut binds, &mut dems) {
            return None;
        }
        for (i, image) in dems {
            if binds[i].as_ref()?.demodalize() != image {
                return None;
            }
        }
        Some(
            binds
                .into_iter()
                .enumerate()
                .filter_map(|(i, b)| b.map(|b| (METAS[i].to_string(), b)))
                .collect(),
        )
    }

    /// The instance for `bindings`; missing metavariables are an error.
    pub fn instantiate(&self, bindings: &Bindings) -> Result<Formula, String> {
        let get = |i: usize| -> Result<Formula, String> {
            if i >= self.arity {
                return Ok(Formula::var("unused"));
            }
            bindings
                .get(METAS[i])
                .cloned()
                .ok_or_else(|| format!("{} needs a binding for {}", self.name, METAS[i]))
        };
        if let Some(extra) = bindings.keys().find(|k| !self.metas().contains(&k.as_str())) {
            return Err(format!("{} has no metavariable {extra}", self.name));
        }
        Ok(self.pattern.instantiate(&[get(0)?, get(1)?]))
    }
}

/// The schema `name` matched against `f`.
pub fn match_schema(f: &Formula, schema: &Schema) -> Option<Bindings> {
    schema.match_formula(f)
}

#[derive(Clone, Debug)]
pub struct Calculus {
    name: String,
    schemata: Vec<Schema>,
    modal: bool,
}

impl Calculus {
    pub fn new(name: String, schemata: Vec<Schema>, modal: bool) -> Calculus {
        Calculus { name, schemata, modal }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn schemata(&self) -> &[Schema] {
        &self.schemata
    }

    pub fn schema(&self, name: &str) -> Option<&Schema> {
        self.schemata.iter().find(|s| s.name == name)
    }

    /// Whether necessitation is a rule.
    pub fn is_modal(&self) -> bool {
        self.modal
    }
}

/// Calculus registered under `name`, e.g. `MBCL+CUDL`.
pub fn calculus(name: &str) -> Result<Calculus, LogicError> {
    Logic::parse(name)?.calculus()
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("CPL check needs {0} atoms, limit {CPL_ATOMS}")]
pub struct TooManyAtoms(pub usize);

/// Whether `f` is a substitution instance of a classical tautology.
///
/// Variables and maximal subformulas headed by `->`, `[]` or `<>` become
/// atoms, with equal subformulas sharing one atom, and the Boolean skeleton
/// is tabulated.
pub fn is_cpl_instance(f: &Formula) -> Result<bool, TooManyAtoms> {
    let mut atoms: HashMap<Formula, usize> = HashMap::new();
    collect_atoms(f, &mut atoms);
    if atoms.len() > CPL_ATOMS {
        return Err(TooManyAtoms(atoms.len()));
    }
    Ok((0u32..1 << atoms.len()).all(|row| skeleton(f, &atoms, row)))
}

fn collect_atoms(f: &Formula, atoms: &mut HashMap<Formula, usize>) {
    match f {
        Formula::Neg(a) => collect_atoms(a, atoms),
        Formula::And(a, b) | Formula::Or(a, b) => {
            collect_atoms(a, atoms);
            collect_atoms(b, atoms);
        }
        _ => {
            let next = atoms.len();
            atoms.entry(f.clone()).or_insert(next);
        }
    }
}

fn skeleton(f: &Formula, atoms: &HashMap<Formula, usize>, row: u32) -> bool {
    match f {
        Formula::Neg(a) => !skeleton(a, atoms, row),
        Formula::And(a, b) => skeleton(a, atoms, row) && skeleton(b, atoms, row),
        Formula::Or(a, b) => skeleton(a, atoms, row) || skeleton(b, atoms, row),
        _ => row >> atoms[f] & 1 == 1,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Axiom { name: String, bindings: Option<Bindings> },
    Cpl,
    /// Disjunctive syllogism from steps `i` and `j`, 1-based, where step `j`
    /// is step `i` materially implying this step.
    Ds(usize, usize),
    Nec(usize),
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Axiom { name, .. } => f.write_str(name),
            Rule::Cpl => f.write_str("CPL"),
            Rule::Ds(i, j) => write!(f, "DS({i},{j})"),
            Rule::Nec(i) => write!(f, "Nec({i})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Step {
    pub formula: Formula,
    pub rule: Rule,
}

#[derive(Clone, Debug)]
pub struct Proof {
    pub calculus: Calculus,
    pub steps: Vec<Step>,
}

/// Problems with the proof file itself, as opposed to its reasoning.
#[derive(Debug, Error)]
pub enum ProofError {
    #[error("malformed proof JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("step {step}: {context} does not parse: {source}")]
    Formula {
        step: usize,
        context: String,
        source: ParseError,
    },
}

/// First step that fails to check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub step: usize,
    pub reason: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step, self.reason)
    }
}

#[derive(Serialize, Deserialize)]
struct ProofDocument {
    calculus: String,
    steps: Vec<StepDocument>,
}

#[derive(Serialize, Deserialize)]
struct StepDocument {
    formula: String,
    rule: RuleDocument,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RuleDocument {
    Name(String),
    Axiom {
        axiom: String,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        bindings: BTreeMap<String, String>,
    },
    Ds {
        ds: [usize; 2],
    },
    Nec {
        nec: usize,
    },
}

impl Proof {
    pub fn from_json(text: &str) -> Result<Proof, ProofError> {
        let doc: ProofDocument = serde_json::from_str(text)?;
        let calculus = calculus(&doc.calculus)?;
        let mut steps = Vec::with_capacity(doc.steps.len());
        for (k, s) in doc.steps.into_iter().enumerate() {
            let at = |context: String| {
                move |source| ProofError::Formula {
                    step: k + 1,
                    context,
                    source,
                }
            };
            let formula = parse(&s.formula).map_err(at("formula".into()))?;
            let rule = match s.rule {
                RuleDocument::Name(n) if n == "CPL" => Rule::Cpl,
                RuleDocument::Name(name) => Rule::Axiom { name, bindings: None },
                RuleDocument::Axiom { axiom, bindings } => {
                    let mut parsed = Bindings::new();
                    for (meta, text) in bindings {
                        let f = parse(&text).map_err(at(format!("binding {meta}")))?;
                        parsed.insert(meta, f);
                    }
                    Rule::Axiom {
                        name: axiom,
                        bindings: Some(parsed),
                    }
                }
                RuleDocument::Ds { ds: [i, j] } => Rule::Ds(i, j),
                RuleDocument::Nec { nec } => Rule::Nec(nec),
            };
            steps.push(Step { formula, rule });
        }
        Ok(Proof { calculus, steps })
    }

    pub fn to_json(&self) -> String {
        let steps = self
            .steps
            .iter()
            .map(|s| StepDocument {
                formula: s.formula.to_string(),
                rule: match &s.rule {
                    Rule::Cpl => RuleDocument::Name("CPL".into()),
                    Rule::Axiom { name, bindings: None } => RuleDocument::Name(name.clone()),
                    Rule::Axiom {
                        name,
                        bindings: Some(b),
                    } => RuleDocument::Axiom {
                        axiom: name.clone(),
                        bindings: b.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
                    },
                    Rule::Ds(i, j) => RuleDocument::Ds { ds: [*i, *j] },
                    Rule::Nec(i) => RuleDocument::Nec { nec: *i },
                },
            })
            .collect();
        let doc = ProofDocument {
            calculus: self.calculus.name().to_string(),
            steps,
        };
        serde_json::to_string_pretty(&doc).expect("proof serializes")
    }

    /// Theorems proved, in step order.
    pub fn theorems(&self) -> impl Iterator<Item = &Formula> {
        self.steps.iter().map(|s| &s.formula)
    }
}

/// Checks every step in order and reports the first failure.
pub fn verify(proof: &Proof) -> Result<(), Rejection> {
    for (k, step) in proof.steps.iter().enumerate() {
        check_step(proof, k, step).map_err(|reason| Rejection { step: k + 1, reason })?;
    }
    Ok(())
}

fn check_step(proof: &Proof, k: usize, step: &Step) -> Result<(), String> {
    let calc = &proof.calculus;
    let earlier = |i: usize| -> Result<&Formula, String> {
        if i == 0 || i > k {
            Err(format!("step {i} is not an earlier step"))
        } else {
            Ok(&proof.steps[i - 1].formula)
        }
    };
    match &step.rule {
        Rule::Cpl => match is_cpl_instance(&step.formula) {
            Ok(true) => Ok(()),
            Ok(false) => Err("not a substitution instance of a classical tautology".into()),
            Err(e) => Err(e.to_string()),
        },
        Rule::Axiom { name, bindings } => {
            let schema = calc.schema(name).ok_or_else(|| {
                if SCHEMA_NAMES.contains(&name.as_str()) {
                    format!("{name} is not an axiom of {}", calc.name())
                } else {
                    format!("unknown rule {name}")
                }
            })?;
            match bindings {
                None => schema
                    .match_formula(&step.formula)
                    .map(|_| ())
                    .ok_or_else(|| format!("no {name} bindings")),
                Some(b) => {
                    let instance = schema.instantiate(b)?;
                    if instance == step.formula {
                        Ok(())
                    } else {
                        Err(format!("the {name} bindings give {instance}"))
                    }
                }
            }
        }
        Rule::Ds(i, j) => {
            let minor = earlier(*i)?;
            let major = earlier(*j)?;
            let expected = minor.clone().implies(step.formula.clone());
            if *major == expected {
                Ok(())
            } else {
                Err(format!("DS needs step {j} to be {expected}"))
            }
        }
        Rule::Nec(i) => {
            if !calc.is_modal() {
                return Err(format!("Nec is not a rule of {}", calc.name()));
            }
            let premise = earlier(*i)?;
            if step.formula == premise.clone().boxed() {
                Ok(())
            } else {
                Err(format!("Nec from step {i} gives {}", premise.clone().boxed()))
            }
        }
    }
}
