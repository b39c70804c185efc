//! Seeded generators for formulas, frames, and admissible models.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conditions::{ConditionSet, FrameProperty};
use crate::decision::Encoding;
use crate::semantics::{Pair, RelatingModel};
use crate::solver::Solver;
use crate::syntax::{ClosureSet, Formula};

/// Share of relating pairs the solver tries to switch on first.
const PAIR_DENSITY: f64 = 0.3;

pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Generator {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A formula of depth at most `depth` over `vars`.
    pub fn formula(&mut self, vars: &[&str], depth: usize, modal: bool) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.2) {
            return Formula::var(vars[self.rng.gen_range(0..vars.len())]);
        }
        let choices = if modal { 7 } else { 5 };
        match self.rng.gen_range(0..choices) {
            0 => self.formula(vars, depth - 1, modal).neg(),
            1 => {
                let a = self.formula(vars, depth - 1, modal);
                a.and(self.formula(vars, depth - 1, modal))
            }
            2 => {
                let a = self.formula(vars, depth - 1, modal);
                a.or(self.formula(vars, depth - 1, modal))
            }
            5 => self.formula(vars, depth - 1, modal).boxed(),
            6 => self.formula(vars, depth - 1, modal).diamond(),
            _ => {
                let a = self.formula(vars, depth - 1, modal);
                a.arrow(self.formula(vars, depth - 1, modal))
            }
        }
    }

    /// Random access relation over `n` worlds with the required properties.
    pub fn frame(&mut self, n: usize, reqs: &BTreeSet<FrameProperty>) -> BTreeSet<(usize, usize)> {
        let mut access = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                if self.rng.gen_bool(0.35) {
                    access.insert((a, b));
                }
            }
        }
        repair_frame(n, access, reqs)
    }

    fn valuation(&mut self, vars: &BTreeSet<Arc<str>>) -> BTreeSet<Arc<str>> {
        vars.iter().filter(|_| self.rng.gen_bool(0.5)).cloned().collect()
    }

    /// Model with `n` worlds and unconstrained relating relations over the
    /// closure of `roots`.
    pub fn model(&mut self, n: usize, roots: &[Formula], density: f64) -> RelatingModel {
        let carrier = crate::syntax::subformula_closure(roots);
        let vars: BTreeSet<Arc<str>> = carrier.iter().flat_map(Formula::variables).collect();
        let access = self.frame(n, &BTreeSet::new());
        let mut relating = Vec::new();
        let mut valuation = Vec::new();
        for w in 0..n {
            let rel: BTreeSet<Pair> = carrier
                .iter()
                .flat_map(|a| carrier.iter().map(move |b| (a.clone(), b.clone())))
                .filter(|_| self.rng.gen_bool(density))
                .collect();
            relating.push((world_name(w), rel));
            valuation.push((world_name(w), self.valuation(&vars)));
        }
        assemble(n, &access, valuation, relating, &carrier)
    }

    /// Model with `n` worlds satisfying `conds` over the search carrier of
    /// `roots`, or `None` when no relation does.
    pub fn admissible_model(
        &mut self,
        n: usize,
        roots: &[Formula],
        conds: &ConditionSet,
    ) -> Option<RelatingModel> {
        Sampler::new(conds.search_carrier(roots, true), conds).sample(self, n)
    }
}

/// Draws admissible models over a fixed carrier, reusing the condition
/// instances between draws.
pub struct Sampler {
    enc: Encoding,
    frame: BTreeSet<FrameProperty>,
    vars: BTreeSet<Arc<str>>,
    /// Some world-local relation exists.
    consistent: bool,
}

impl Sampler {
    pub fn new(carrier: ClosureSet, conds: &ConditionSet) -> Sampler {
        let vars = carrier.iter().flat_map(Formula::variables).collect();
        let enc = Encoding::new(carrier, conds);
        let mut steps = 10_000_000;
        let consistent = matches!(Solver::new(&enc.local_cnf()).solve(&[], |_| false, &mut steps), Ok(Some(_)));
        Sampler {
            enc,
            frame: conds.frame_requirements(),
            vars,
            consistent,
        }
    }

    pub fn carrier(&self) -> &ClosureSet {
        &self.enc.carrier
    }

    /// A random admissible model with `n` worlds, or `None` if the drawn
    /// frame admits no relations.
    pub fn sample(&self, g: &mut Generator, n: usize) -> Option<RelatingModel> {
        if !self.consistent {
            return None;
        }
        let access = g.frame(n, &self.frame);
        let successors: Vec<Vec<usize>> = (0..n)
            .map(|w| (0..n).filter(|&u| access.contains(&(w, u))).collect())
            .collect();
        let cnf = self.enc.model_cnf(&successors);
        let prefs: Vec<bool> = (0..cnf.vars()).map(|_| g.rng.gen_bool(PAIR_DENSITY)).collect();
        let mut steps = 10_000_000;
        let assignment = Solver::new(&cnf)
            .solve(&[], |v| prefs[v], &mut steps)
            .ok()
            .flatten()?;
        let relating = (0..n).map(|w| (world_name(w), self.enc.relation(&assignment, w))).collect();
        let valuation = (0..n).map(|w| (world_name(w), g.valuation(&self.vars))).collect();
        Some(assemble(n, &access, valuation, relating, &self.enc.carrier))
    }
}

fn world_name(w: usize) -> String {
    format!("w{w}")
}

fn assemble(
    n: usize,
    access: &BTreeSet<(usize, usize)>,
    valuation: Vec<(String, BTreeSet<Arc<str>>)>,
    relating: Vec<(String, BTreeSet<Pair>)>,
    carrier: &ClosureSet,
) -> RelatingModel {
    let access = access.iter().map(|&(a, b)| (world_name(a), world_name(b)));
    RelatingModel::new((0..n).map(world_name), access, valuation, relating, carrier.members())
        .expect("generated model is well formed")
}

/// Least extension of `access` with every property in `reqs`.
///
/// Reflexive and serial loops go in first; symmetric, transitive, and
/// Euclidean closure are then iterated to a fixpoint. Each step only adds
/// edges, so the earlier properties survive.
pub fn repair_frame(
    n: usize,
    mut access: BTreeSet<(usize, usize)>,
    reqs: &BTreeSet<FrameProperty>,
) -> BTreeSet<(usize, usize)> {
    for w in 0..n {
        let has_successor = access.iter().any(|&(a, _)| a == w);
        if reqs.contains(&FrameProperty::Reflexive)
            || (reqs.contains(&FrameProperty::Serial) && !has_successor)
        {
            access.insert((w, w));
        }
    }
    loop {
        let mut extra = Vec::new();
        for &(a, b) in &access {
            if reqs.contains(&FrameProperty::Symmetric) {
                extra.push((b, a));
            }
            for &(c, d) in &access {
                if reqs.contains(&FrameProperty::Transitive) && b == c {
                    extra.push((a, d));
                }
                if reqs.contains(&FrameProperty::Euclidean) && a == c {
                    extra.push((b, d));
                }
            }
        }
        let before = access.len();
        access.extend(extra);
        if access.len() == before {
            return access;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::{admissible, frame_check};

    #[test]
    fn repaired_frames_have_their_properties() {
        let mut g = Generator::new(7);
        for mask in 0u32..32 {
            let reqs: BTreeSet<FrameProperty> = FrameProperty::ALL
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| *p)
                .collect();
            for n in 1..5 {
                let access = g.frame(n, &reqs);
                for &p in &reqs {
                    assert!(frame_check(n, &access, p), "{p:?} on {access:?}");
                }
            }
        }
    }

    #[test]
    fn admissible_models_pass_the_checker() {
        let mut g = Generator::new(11);
        let conds = ConditionSet::parse("a1,a2,b0,b1,b2,k1,k2,t,cun").unwrap();
        let mut made = 0;
        for _ in 0..30 {
            let f = g.formula(&["p", "q"], 3, true);
            if let Some(m) = g.admissible_model(3, &[f], &conds) {
                let report = admissible(&m, &conds);
                assert!(report.admissible, "{:?}", report.violations.first());
                made += 1;
            }
        }
        assert!(made > 20);
    }

    #[test]
    fn seeds_reproduce() {
        let a = Generator::new(3).formula(&["p", "q"], 4, true);
        let b = Generator::new(3).formula(&["p", "q"], 4, true);
        assert_eq!(a, b);
    }
}
