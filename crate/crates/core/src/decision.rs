//! Bounded decision by enumerating admissible finite models, relation
//! counting, filtration, and demodal completion.
//!
//! A query only depends on the relating pairs `(A, B)` with `A -> B` among its
//! subformulas. For each world the search therefore enumerates just those
//! bits, restricted to the choices that extend to a full admissible relation
//! over the carrier. The extension itself is recovered by the solver once a
//! refuting combination has been found.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::conditions::{
    admissible, frame_check, instances, successor_instances, Condition, ConditionSet,
    FrameProperty, Instance, SuccessorInstance,
};
use crate::semantics::{eval, Pair, RelatingModel, Verdict};
use crate::solver::{count_models, BudgetExceeded, Cnf, Lit, Solver};
use crate::syntax::{subformula_closure, ClosureSet, Formula};

/// Largest world count the enumerator accepts.
pub const MAX_WORLDS_CAP: usize = 6;

#[derive(Debug, Error)]
pub enum DecideError {
    #[error("invalid search configuration: {0}")]
    Config(String),
    #[error("search space too large: {0}; shrink the query or raise BCLKIT_BUDGET")]
    Budget(String),
    #[error("`{0}` relates worlds to their successors; relation counting is per world")]
    ModelLevel(String),
    #[error("the set is not closed under subformulas: {0} is missing")]
    NotClosed(String),
    #[error("filtration is ill defined: {0}")]
    IllDefined(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<BudgetExceeded> for DecideError {
    fn from(_: BudgetExceeded) -> DecideError {
        DecideError::Budget("solver step limit reached".into())
    }
}

/// Enumeration limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Truth-relevant relating pairs enumerated per world.
    pub max_free_pairs: usize,
    /// Candidate models examined for one world count.
    pub max_candidates: u64,
    /// Solver decisions and counting steps.
    pub max_steps: u64,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_free_pairs: 36,
            max_candidates: 200_000_000,
            max_steps: 50_000_000,
        }
    }
}

impl Budget {
    /// Reads `BCLKIT_BUDGET` as `pairs` or `pairs,candidates`.
    pub fn from_env() -> Result<Budget, DecideError> {
        match std::env::var("BCLKIT_BUDGET") {
            Ok(text) => Budget::parse(&text),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn parse(text: &str) -> Result<Budget, DecideError> {
        let bad = || DecideError::Config(format!("bad budget `{text}`, expected N or N,M"));
        let mut b = Budget::default();
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        match parts[..] {
            [pairs] => b.max_free_pairs = pairs.parse().map_err(|_| bad())?,
            [pairs, cands] => {
                b.max_free_pairs = pairs.parse().map_err(|_| bad())?;
                b.max_candidates = cands.parse().map_err(|_| bad())?;
            }
            _ => return Err(bad()),
        }
        Ok(b)
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub max_worlds: usize,
    /// Pad the carrier with negation prefixes for gcun flags.
    pub pad: bool,
    /// Return the enumeration-least countermodel.
    pub deterministic: bool,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
    pub budget: Budget,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            max_worlds: 2,
            pad: true,
            deterministic: true,
            jobs: 0,
            budget: Budget::default(),
        }
    }
}

/// Condition instances over a carrier, ready to be turned into clauses.
pub(crate) struct Encoding {
    pub carrier: ClosureSet,
    /// Carrier indices in formula order, so decoded relations come out sorted.
    sorted: Vec<usize>,
    local: Vec<Instance>,
    successor: Vec<SuccessorInstance>,
}

impl Encoding {
    pub fn new(carrier: ClosureSet, conds: &ConditionSet) -> Encoding {
        let local = conds.iter().flat_map(|c| instances(&carrier, c)).collect();
        let successor = conds
            .iter()
            .flat_map(|c| successor_instances(&carrier, c))
            .collect();
        let mut sorted: Vec<usize> = (0..carrier.len()).collect();
        sorted.sort_by(|&a, &b| carrier.get(a).cmp(carrier.get(b)));
        Encoding {
            carrier,
            sorted,
            local,
            successor,
        }
    }

    pub fn pair_var(&self, (i, j): (usize, usize)) -> usize {
        i * self.carrier.len() + j
    }

    fn per_world(&self) -> usize {
        self.carrier.len() * self.carrier.len()
    }

    fn add_local(&self, cnf: &mut Cnf, offset: usize) {
        for inst in &self.local {
            let mut clause: Vec<Lit> = inst
                .premises
                .iter()
                .map(|&p| Lit::neg(offset + self.pair_var(p)))
                .collect();
            clause.extend(inst.conclusions.iter().map(|&c| Lit::pos(offset + self.pair_var(c))));
            cnf.add(&clause);
        }
    }

    /// Clauses for one world's relation.
    pub fn local_cnf(&self) -> Cnf {
        let mut cnf = Cnf::new(self.per_world());
        self.add_local(&mut cnf, 0);
        cnf
    }

    /// Clauses for all worlds of a frame; world `w` owns variables starting
    /// at `w * N^2`.
    pub fn model_cnf(&self, successors: &[Vec<usize>]) -> Cnf {
        let per = self.per_world();
        let mut cnf = Cnf::new(per * successors.len());
        for w in 0..successors.len() {
            self.add_local(&mut cnf, w * per);
            for inst in &self.successor {
                let mut clause: Vec<Lit> = successors[w]
                    .iter()
                    .map(|&u| Lit::neg(u * per + self.pair_var(inst.premise)))
                    .collect();
                clause.push(Lit::pos(w * per + self.pair_var(inst.conclusion)));
                cnf.add(&clause);
            }
        }
        cnf
    }

    pub fn has_successor_instances(&self) -> bool {
        !self.successor.is_empty()
    }

    /// Reads relation `w` out of a solver assignment.
    pub fn relation(&self, assignment: &[bool], w: usize) -> BTreeSet<Pair> {
        let n = self.carrier.len();
        let base = w * self.per_world();
        self.sorted
            .iter()
            .flat_map(|&i| self.sorted.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| assignment[base + i * n + j])
            .map(|(i, j)| (self.carrier.get(i).clone(), self.carrier.get(j).clone()))
            .collect()
    }
}

#[derive(Clone, Copy)]
enum Node {
    Var(usize),
    Neg(usize),
    And(usize, usize),
    Or(usize, usize),
    Arrow(usize, usize, usize),
    Box(usize),
    Diamond(usize),
}

/// Truth over all worlds at once, one bit per world.
struct Evaluator {
    nodes: Vec<Node>,
}

impl Evaluator {
    fn eval(&self, worlds: usize, var_masks: &[u64], arrow_masks: &[u64], succ: &[u64]) -> u64 {
        let all = (1u64 << worlds) - 1;
        let mut truth: Vec<u64> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let t = match *node {
                Node::Var(v) => var_masks[v],
                Node::Neg(a) => !truth[a] & all,
                Node::And(a, b) => truth[a] & truth[b],
                Node::Or(a, b) => truth[a] | truth[b],
                Node::Arrow(a, b, bit) => ((!truth[a] & all) | truth[b]) & arrow_masks[bit],
                Node::Box(a) => (0..worlds)
                    .filter(|&w| succ[w] & !truth[a] == 0)
                    .fold(0, |m, w| m | 1 << w),
                Node::Diamond(a) => (0..worlds)
                    .filter(|&w| succ[w] & truth[a] != 0)
                    .fold(0, |m, w| m | 1 << w),
            };
            truth.push(t);
        }
        *truth.last().unwrap()
    }
}

/// World count that is provably enough to find a countermodel when one
/// exists, if such a bound is known.
///
/// Without modalities one world suffices. With only reflexivity or seriality
/// required, unravelling a countermodel into a tree that keeps one witness per
/// modal formula at each node, to the query's modal depth, preserves truth.
/// Every world keeps its own relating relation, so world-local conditions
/// survive the construction.
pub fn world_bound(f: &Formula, conds: &ConditionSet) -> Option<usize> {
    if conds.has_model_level() {
        return None;
    }
    if f.is_modal_free() {
        return Some(1);
    }
    let allowed = [FrameProperty::Reflexive, FrameProperty::Serial];
    if !conds.frame_requirements().iter().all(|p| allowed.contains(p)) {
        return None;
    }
    let closure = subformula_closure([f]);
    let branching = closure
        .iter()
        .filter(|g| matches!(g, Formula::Box(_) | Formula::Diamond(_)))
        .count();
    let mut total: usize = 0;
    let mut layer: usize = 1;
    for _ in 0..=f.modal_depth() {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(branching);
    }
    Some(total)
}

/// Why a search without countermodels may not be reported as `Valid`, if it
/// may not.
fn coverage_gap(conds: &ConditionSet) -> Option<String> {
    conds.iter().find_map(|c| {
        let covered = match c {
            Condition::A1
            | Condition::A2
            | Condition::B0
            | Condition::B1
            | Condition::B2
            | Condition::DemL
            | Condition::Frame(_) => true,
            Condition::Law { .. } => !c.is_model_level(),
            _ => false,
        };
        (!covered).then(|| format!("no completeness bound is established for `{c}`"))
    })
}

struct Found {
    worlds: usize,
    access: BTreeSet<(usize, usize)>,
    valuation: u64,
    choices: Vec<u64>,
    world: usize,
    assignment: Option<Vec<bool>>,
}

/// Bounded validity check of `f` over models satisfying `conds`.
pub fn decide(f: &Formula, conds: &ConditionSet, cfg: &SearchConfig) -> Result<Verdict, DecideError> {
    if cfg.max_worlds == 0 || cfg.max_worlds > MAX_WORLDS_CAP {
        return Err(DecideError::Config(format!(
            "max_worlds must be between 1 and {MAX_WORLDS_CAP}"
        )));
    }
    let enc = Encoding::new(conds.search_carrier([f], cfg.pad), conds);
    let closure = subformula_closure([f]);
    let vars: Vec<Arc<str>> = f.variables().into_iter().collect();
    let mut nodes = Vec::with_capacity(closure.len());
    let mut arrows: Vec<usize> = Vec::new();
    let at = |g: &Formula| closure.position(g).unwrap();
    let in_carrier = |g: &Formula| enc.carrier.position(g).unwrap();
    for g in closure.iter() {
        nodes.push(match g {
            Formula::Var(name) => Node::Var(vars.iter().position(|v| v == name).unwrap()),
            Formula::Neg(a) => Node::Neg(at(a)),
            Formula::And(a, b) => Node::And(at(a), at(b)),
            Formula::Or(a, b) => Node::Or(at(a), at(b)),
            Formula::Box(a) => Node::Box(at(a)),
            Formula::Diamond(a) => Node::Diamond(at(a)),
            Formula::Arrow(a, b) => {
                arrows.push(enc.pair_var((in_carrier(a), in_carrier(b))));
                Node::Arrow(at(a), at(b), arrows.len() - 1)
            }
        });
    }
    let limit = cfg.budget.max_free_pairs.min(24);
    if arrows.len() > limit {
        return Err(DecideError::Budget(format!(
            "{} relating pairs per world, limit {limit}",
            arrows.len()
        )));
    }
    let evaluator = Evaluator { nodes };
    let mut steps = cfg.budget.max_steps;
    let local_cnf = enc.local_cnf();
    let choices = Solver::new(&local_cnf).project(&arrows, &mut steps)?;

    let bound = world_bound(f, conds);
    let searched = bound.map_or(cfg.max_worlds, |b| b.min(cfg.max_worlds));
    let run = || -> Result<Option<Found>, DecideError> {
        for n in 1..=searched {
            if let Some(found) = search_worlds(n, conds, &vars, &evaluator, &arrows, &choices, &enc, cfg)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    };
    let found = if cfg.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| DecideError::Config(e.to_string()))?
            .install(run)?
    } else {
        run()?
    };

    match found {
        Some(found) => {
            let (model, world) = build_countermodel(&found, &vars, &arrows, &enc, cfg)?;
            if eval(&model, &world, f).map_err(|e| DecideError::Internal(e.to_string()))? {
                return Err(DecideError::Internal(format!(
                    "countermodel does not refute {f} at {world}"
                )));
            }
            let report = admissible(&model, conds);
            if !report.admissible {
                return Err(DecideError::Internal(format!(
                    "countermodel is not admissible: {}",
                    report.violations[0].reason
                )));
            }
            Ok(Verdict::Countermodel {
                world,
                model: model.to_document(),
            })
        }
        None => {
            let gap = coverage_gap(conds).or_else(|| match bound {
                None => Some("no world bound is known for these conditions".to_string()),
                Some(b) if b > cfg.max_worlds => Some(format!(
                    "a complete search needs {b} worlds, {} were searched",
                    cfg.max_worlds
                )),
                Some(_) => None,
            });
            Ok(match gap {
                None => Verdict::Valid,
                Some(reason) => Verdict::BoundedValid {
                    max_worlds: searched,
                    required_worlds: bound,
                    reason,
                },
            })
        }
    }
}

fn search_worlds(
    n: usize,
    conds: &ConditionSet,
    vars: &[Arc<str>],
    evaluator: &Evaluator,
    arrows: &[usize],
    choices: &[u64],
    enc: &Encoding,
    cfg: &SearchConfig,
) -> Result<Option<Found>, DecideError> {
    let reqs = conds.frame_requirements();
    let frames: Vec<(BTreeSet<(usize, usize)>, Vec<u64>)> = (0u64..1 << (n * n))
        .map(|mask| {
            let access: BTreeSet<(usize, usize)> = (0..n * n)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| (b / n, b % n))
                .collect();
            let succ: Vec<u64> = (0..n)
                .map(|w| (0..n).filter(|&u| access.contains(&(w, u))).fold(0, |m, u| m | 1 << u))
                .collect();
            (access, succ)
        })
        .filter(|(access, _)| reqs.iter().all(|&p| frame_check(n, access, p)))
        .collect();
    let val_bits = vars.len() * n;
    if val_bits > 40 {
        return Err(DecideError::Budget(format!("{val_bits} valuation bits")));
    }
    let vals = 1u64 << val_bits;
    let s = choices.len() as u64;
    let combos = s.checked_pow(n as u32);
    let total = combos
        .and_then(|c| c.checked_mul(vals))
        .and_then(|c| c.checked_mul(frames.len() as u64));
    let total = match total {
        Some(t) if t <= cfg.budget.max_candidates => t,
        _ => {
            return Err(DecideError::Budget(format!(
                "more than {} candidate models with {n} worlds",
                cfg.budget.max_candidates
            )))
        }
    };
    if total == 0 {
        return Ok(None);
    }
    let combos = combos.unwrap();
    let all = (1u64 << n) - 1;
    let check = |idx: u64| -> Option<Found> {
        let combo = idx % combos;
        let rest = idx / combos;
        let valuation = rest % vals;
        let (access, succ) = &frames[(rest / vals) as usize];
        let picked: Vec<u64> = (0..n)
            .map(|w| choices[((combo / s.pow(w as u32)) % s) as usize])
            .collect();
        let var_masks: Vec<u64> = (0..vars.len())
            .map(|v| (0..n).filter(|w| valuation >> (w * vars.len() + v) & 1 == 1).fold(0, |m, w| m | 1 << w))
            .collect();
        let arrow_masks: Vec<u64> = (0..arrows.len())
            .map(|bit| (0..n).filter(|&w| picked[w] >> bit & 1 == 1).fold(0, |m, w| m | 1 << w))
            .collect();
        let truth = evaluator.eval(n, &var_masks, &arrow_masks, succ);
        if truth == all {
            return None;
        }
        let world = (0..n).find(|w| truth >> w & 1 == 0).unwrap();
        let assignment = if enc.has_successor_instances() {
            let succ_lists: Vec<Vec<usize>> = (0..n)
                .map(|w| (0..n).filter(|u| succ[w] >> u & 1 == 1).collect())
                .collect();
            let cnf = enc.model_cnf(&succ_lists);
            let per = enc.carrier.len() * enc.carrier.len();
            let picked = &picked;
            let assumptions: Vec<Lit> = (0..n)
                .flat_map(|w| {
                    arrows
                        .iter()
                        .enumerate()
                        .map(move |(bit, &v)| Lit::with_value(w * per + v, picked[w] >> bit & 1 == 1))
                })
                .collect();
            let mut steps = cfg.budget.max_steps;
            match Solver::new(&cnf).solve(&assumptions, |_| false, &mut steps) {
                Ok(Some(a)) => Some(a),
                _ => return None,
            }
        } else {
            None
        };
        Some(Found {
            worlds: n,
            access: access.clone(),
            valuation,
            choices: picked,
            world,
            assignment,
        })
    };
    let found = if cfg.deterministic {
        (0..total).into_par_iter().find_map_first(check)
    } else {
        (0..total).into_par_iter().find_map_any(check)
    };
    Ok(found)
}

fn build_countermodel(
    found: &Found,
    vars: &[Arc<str>],
    arrows: &[usize],
    enc: &Encoding,
    cfg: &SearchConfig,
) -> Result<(RelatingModel, String), DecideError> {
    let n = found.worlds;
    let names: Vec<String> = (0..n).map(|w| format!("w{w}")).collect();
    let mut relating = Vec::new();
    match &found.assignment {
        Some(assignment) => {
            for w in 0..n {
                relating.push((names[w].clone(), enc.relation(assignment, w)));
            }
        }
        None => {
            let mut solver = Solver::new(&enc.local_cnf());
            for w in 0..n {
                let assumptions: Vec<Lit> = arrows
                    .iter()
                    .enumerate()
                    .map(|(bit, &v)| Lit::with_value(v, found.choices[w] >> bit & 1 == 1))
                    .collect();
                let mut steps = cfg.budget.max_steps;
                let assignment = solver
                    .solve(&assumptions, |_| false, &mut steps)?
                    .ok_or_else(|| DecideError::Internal("projected choice has no extension".into()))?;
                relating.push((names[w].clone(), enc.relation(&assignment, 0)));
            }
        }
    }
    let valuation: Vec<(String, BTreeSet<Arc<str>>)> = (0..n)
        .map(|w| {
            let set = vars
                .iter()
                .enumerate()
                .filter(|(v, _)| found.valuation >> (w * vars.len() + v) & 1 == 1)
                .map(|(_, name)| name.clone())
                .collect();
            (names[w].clone(), set)
        })
        .collect();
    let access: Vec<(String, String)> = found
        .access
        .iter()
        .map(|&(a, b)| (names[a].clone(), names[b].clone()))
        .collect();
    let model = RelatingModel::new(
        names.clone(),
        access,
        valuation,
        relating,
        enc.carrier.members(),
    )
    .map_err(|e| DecideError::Internal(e.to_string()))?;
    Ok((model, names[found.world].clone()))
}

/// Number of relations over `carrier` satisfying every world-local flag.
pub fn count_admissible(
    carrier: &ClosureSet,
    conds: &ConditionSet,
    budget: &Budget,
) -> Result<BigUint, DecideError> {
    if let Some(c) = conds.iter().find(|c| c.is_model_level()) {
        return Err(DecideError::ModelLevel(c.to_string()));
    }
    let enc = Encoding::new(carrier.clone(), conds);
    let mut steps = budget.max_steps;
    Ok(count_models(&enc.local_cnf(), &mut steps)?)
}

/// A filtered model together with the class of every original world.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub model: RelatingModel,
    /// `class_of[w]` is the index in `model.worlds()` of the class of world `w`.
    pub class_of: Vec<usize>,
}

/// Quotient of `model` by agreement on `gamma`: two worlds are identified
/// when they give every member the same truth value and relate the same
/// pairs of members.
pub fn filtration(model: &RelatingModel, gamma: &[Formula]) -> Result<Filtration, DecideError> {
    let closed = subformula_closure(gamma);
    if let Some(missing) = closed.iter().find(|g| !gamma.contains(g)) {
        return Err(DecideError::NotClosed(missing.to_string()));
    }
    let gamma = &closed;
    let restrict = |w: usize| -> BTreeSet<Pair> {
        model
            .relating(w)
            .iter()
            .filter(|(a, b)| gamma.contains(a) && gamma.contains(b))
            .cloned()
            .collect()
    };
    let worlds = model.worlds();
    let mut by_signature: HashMap<(Vec<bool>, BTreeSet<Pair>), usize> = HashMap::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut class_of = Vec::with_capacity(worlds.len());
    for w in 0..worlds.len() {
        let truth: Vec<bool> = gamma.iter().map(|g| model.eval_at(w, g)).collect();
        let key = (truth, restrict(w));
        let next = members.len();
        let class = *by_signature.entry(key).or_insert(next);
        if class == next {
            members.push(Vec::new());
        }
        members[class].push(w);
        class_of.push(class);
    }
    let names: Vec<String> = members
        .iter()
        .map(|ws| {
            let inner: Vec<&str> = ws.iter().map(|&w| worlds[w].as_str()).collect();
            format!("[{}]", inner.join(","))
        })
        .collect();
    let gamma_vars: BTreeSet<Arc<str>> = gamma.iter().flat_map(|g| g.variables()).collect();
    let mut valuation = Vec::new();
    let mut relating = Vec::new();
    for (c, ws) in members.iter().enumerate() {
        let rep = ws[0];
        let vars: BTreeSet<Arc<str>> = model
            .valuation(rep)
            .intersection(&gamma_vars)
            .cloned()
            .collect();
        let rel = restrict(rep);
        for &w in &ws[1..] {
            let other: BTreeSet<Arc<str>> =
                model.valuation(w).intersection(&gamma_vars).cloned().collect();
            if other != vars || restrict(w) != rel {
                return Err(DecideError::IllDefined(format!(
                    "{} and {} disagree inside {}",
                    worlds[rep], worlds[w], names[c]
                )));
            }
        }
        valuation.push((names[c].clone(), vars));
        relating.push((names[c].clone(), rel));
    }
    let access: BTreeSet<(String, String)> = model
        .access()
        .iter()
        .map(|&(a, b)| (names[class_of[a]].clone(), names[class_of[b]].clone()))
        .collect();
    let filtered = RelatingModel::new(names.clone(), access, valuation, relating, gamma.members())
        .map_err(|e| DecideError::Internal(e.to_string()))?;
    // World names are sorted inside the model; map classes to their positions.
    let position: Vec<usize> = names
        .iter()
        .map(|name| filtered.world_index(name).expect("class name"))
        .collect();
    Ok(Filtration {
        class_of: class_of.into_iter().map(|c| position[c]).collect(),
        model: filtered,
    })
}

/// The filtered model of [`filtration`].
pub fn filtrate(model: &RelatingModel, gamma: &[Formula]) -> Result<RelatingModel, DecideError> {
    filtration(model, gamma).map(|f| f.model)
}

/// Adds every pair over the demodalization-extended carrier whose
/// demodalized image is already related at the same world.
pub fn demodal_complete(model: &RelatingModel) -> RelatingModel {
    let carrier = model.carrier().with_demodalized();
    let images: Vec<(Formula, Formula)> = carrier.iter().map(|f| (f.clone(), f.demodalize())).collect();
    let mut out = model.with_carrier(carrier.members());
    for w in 0..model.worlds().len() {
        let base = model.relating(w);
        let mut grown = base.clone();
        for (a, da) in &images {
            for (b, db) in &images {
                if base.contains(&(da.clone(), db.clone())) {
                    grown.insert((a.clone(), b.clone()));
                }
            }
        }
        out = out.with_relating(w, grown);
    }
    out
}

/// Convenience for callers holding pairs of printed formulas.
pub fn relation_from_strings(pairs: &[(&str, &str)]) -> Result<BTreeSet<Pair>, crate::syntax::ParseError> {
    pairs
        .iter()
        .map(|(a, b)| Ok((crate::syntax::parse(a)?, crate::syntax::parse(b)?)))
        .collect()
}
