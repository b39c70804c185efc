//! A small propositional constraint engine for relation search.
//!
//! Condition instances become clauses over "pair is related" variables. The
//! clause sets are mostly binary, so plain chronological backtracking with
//! watched-literal propagation is fast enough.

use std::collections::HashMap;

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("search budget of {0} steps exhausted")]
pub struct BudgetExceeded(pub u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn pos(var: usize) -> Lit {
        Lit((var as u32) << 1)
    }

    pub fn neg(var: usize) -> Lit {
        Lit(((var as u32) << 1) | 1)
    }

    pub fn with_value(var: usize, value: bool) -> Lit {
        if value {
            Lit::pos(var)
        } else {
            Lit::neg(var)
        }
    }

    pub fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_neg(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn negate(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    fn index(self) -> usize {
        self.0 as usize
    }
}

/// Clause set over variables `0..vars`.
#[derive(Clone, Debug, Default)]
pub struct Cnf {
    vars: usize,
    clauses: Vec<Vec<Lit>>,
}

impl Cnf {
    pub fn new(vars: usize) -> Cnf {
        Cnf {
            vars,
            clauses: Vec::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    /// Adds a disjunction. Duplicate literals are merged and tautologies dropped.
    pub fn add(&mut self, lits: &[Lit]) {
        let mut c = lits.to_vec();
        c.sort();
        c.dedup();
        if c.windows(2).any(|w| w[0].var() == w[1].var()) {
            return;
        }
        debug_assert!(c.iter().all(|l| l.var() < self.vars));
        self.clauses.push(c);
    }
}

/// Backtracking solver over a fixed clause set. Reusable across calls with
/// different assumptions.
pub struct Solver {
    vars: usize,
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<usize>>,
    units: Vec<Lit>,
    trivially_unsat: bool,
    value: Vec<i8>,
    trail: Vec<Lit>,
}

struct Level {
    start: usize,
    lit: Lit,
    flipped: bool,
    assumption: bool,
}

impl Solver {
    pub fn new(cnf: &Cnf) -> Solver {
        let mut s = Solver {
            vars: cnf.vars,
            clauses: Vec::new(),
            watches: vec![Vec::new(); cnf.vars * 2],
            units: Vec::new(),
            trivially_unsat: false,
            value: vec![0; cnf.vars],
            trail: Vec::new(),
        };
        for c in &cnf.clauses {
            match c.len() {
                0 => s.trivially_unsat = true,
                1 => s.units.push(c[0]),
                _ => {
                    let idx = s.clauses.len();
                    s.watches[c[0].index()].push(idx);
                    s.watches[c[1].index()].push(idx);
                    s.clauses.push(c.clone());
                }
            }
        }
        s
    }

    fn lit_value(&self, l: Lit) -> i8 {
        let v = self.value[l.var()];
        if l.is_neg() {
            -v
        } else {
            v
        }
    }

    fn assign(&mut self, l: Lit) {
        self.value[l.var()] = if l.is_neg() { -1 } else { 1 };
        self.trail.push(l);
    }

    /// Unassigns the trail beyond `len`; returns the least variable freed.
    fn undo_to(&mut self, len: usize) -> usize {
        let mut least = usize::MAX;
        while self.trail.len() > len {
            let l = self.trail.pop().unwrap();
            self.value[l.var()] = 0;
            least = least.min(l.var());
        }
        least
    }

    /// Propagates from trail position `head`; false on conflict.
    fn propagate(&mut self, mut head: usize) -> bool {
        while head < self.trail.len() {
            let false_lit = self.trail[head].negate();
            head += 1;
            let mut list = std::mem::take(&mut self.watches[false_lit.index()]);
            let mut keep = 0;
            let mut ok = true;
            let mut i = 0;
            while i < list.len() {
                let ci = list[i];
                i += 1;
                let clause = &mut self.clauses[ci];
                if clause[0] == false_lit {
                    clause.swap(0, 1);
                }
                let first = clause[0];
                let first_val = {
                    let v = self.value[first.var()];
                    if first.is_neg() {
                        -v
                    } else {
                        v
                    }
                };
                if first_val == 1 {
                    list[keep] = ci;
                    keep += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..clause.len() {
                    let l = clause[k];
                    let v = self.value[l.var()];
                    let lv = if l.is_neg() { -v } else { v };
                    if lv != -1 {
                        clause.swap(1, k);
                        self.watches[clause[1].index()].push(ci);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                list[keep] = ci;
                keep += 1;
                if first_val == -1 {
                    ok = false;
                    while i < list.len() {
                        list[keep] = list[i];
                        keep += 1;
                        i += 1;
                    }
                    break;
                }
                self.assign(first);
            }
            list.truncate(keep);
            self.watches[false_lit.index()] = list;
            if !ok {
                return false;
            }
        }
        true
    }

    /// Finds an assignment extending `assumptions`. `prefer(var)` picks the
    /// polarity tried first for each decision. `budget` counts decisions.
    pub fn solve<F>(
        &mut self,
        assumptions: &[Lit],
        mut prefer: F,
        budget: &mut u64,
    ) -> Result<Option<Vec<bool>>, BudgetExceeded>
    where
        F: FnMut(usize) -> bool,
    {
        let result = self.search(assumptions, &mut prefer, budget);
        self.undo_to(0);
        result
    }

    fn search<F>(
        &mut self,
        assumptions: &[Lit],
        prefer: &mut F,
        budget: &mut u64,
    ) -> Result<Option<Vec<bool>>, BudgetExceeded>
    where
        F: FnMut(usize) -> bool,
    {
        if self.trivially_unsat {
            return Ok(None);
        }
        for i in 0..self.units.len() {
            let u = self.units[i];
            match self.lit_value(u) {
                -1 => return Ok(None),
                0 => self.assign(u),
                _ => {}
            }
        }
        if !self.propagate(0) {
            return Ok(None);
        }
        let mut levels: Vec<Level> = Vec::new();
        for &a in assumptions {
            match self.lit_value(a) {
                -1 => return Ok(None),
                1 => continue,
                _ => {}
            }
            let start = self.trail.len();
            levels.push(Level {
                start,
                lit: a,
                flipped: true,
                assumption: true,
            });
            self.assign(a);
            if !self.propagate(start) {
                return Ok(None);
            }
        }
        let mut cursor = 0;
        loop {
            while cursor < self.vars && self.value[cursor] != 0 {
                cursor += 1;
            }
            if cursor == self.vars {
                return Ok(Some(self.value.iter().map(|&v| v == 1).collect()));
            }
            if *budget == 0 {
                return Err(BudgetExceeded(0));
            }
            *budget -= 1;
            let lit = Lit::with_value(cursor, prefer(cursor));
            let start = self.trail.len();
            levels.push(Level {
                start,
                lit,
                flipped: false,
                assumption: false,
            });
            self.assign(lit);
            if self.propagate(start) {
                continue;
            }
            // Chronological backtracking: flip the newest unflipped decision.
            loop {
                let Some(top) = levels.last_mut() else {
                    return Ok(None);
                };
                if top.assumption {
                    return Ok(None);
                }
                let start = top.start;
                if top.flipped {
                    levels.pop();
                    continue;
                }
                top.flipped = true;
                let flipped = top.lit.negate();
                top.lit = flipped;
                cursor = cursor.min(self.undo_to(start));
                self.assign(flipped);
                if self.propagate(start) {
                    break;
                }
            }
        }
    }

    /// Every assignment to `vars` (bit i of each mask is `vars[i]`) that
    /// extends to a full solution, in increasing mask order.
    pub fn project(&mut self, vars: &[usize], budget: &mut u64) -> Result<Vec<u64>, BudgetExceeded> {
        assert!(vars.len() < 64, "projection onto at most 63 variables");
        let mut out = Vec::new();
        let mut assumptions = Vec::with_capacity(vars.len());
        self.project_rec(vars, &mut assumptions, 0, &mut out, budget)?;
        out.sort_unstable();
        Ok(out)
    }

    fn project_rec(
        &mut self,
        vars: &[usize],
        assumptions: &mut Vec<Lit>,
        mask: u64,
        out: &mut Vec<u64>,
        budget: &mut u64,
    ) -> Result<(), BudgetExceeded> {
        if self.solve(assumptions, |_| false, budget)?.is_none() {
            return Ok(());
        }
        let depth = assumptions.len();
        if depth == vars.len() {
            out.push(mask);
            return Ok(());
        }
        for value in [false, true] {
            assumptions.push(Lit::with_value(vars[depth], value));
            let bit = if value { 1u64 << depth } else { 0 };
            self.project_rec(vars, assumptions, mask | bit, out, budget)?;
            assumptions.pop();
        }
        Ok(())
    }
}

/// Exact number of satisfying assignments over all `cnf.vars()` variables.
pub fn count_models(cnf: &Cnf, budget: &mut u64) -> Result<BigUint, BudgetExceeded> {
    let mut counter = Counter {
        cache: HashMap::new(),
        budget,
    };
    let vars: Vec<u32> = (0..cnf.vars as u32).collect();
    counter.count(cnf.clauses.clone(), &vars)
}

struct Counter<'a> {
    cache: HashMap<Vec<Vec<Lit>>, BigUint>,
    budget: &'a mut u64,
}

impl Counter<'_> {
    /// Models of `clauses` over `vars` (every clause variable is in `vars`).
    fn count(&mut self, mut clauses: Vec<Vec<Lit>>, vars: &[u32]) -> Result<BigUint, BudgetExceeded> {
        if *self.budget == 0 {
            return Err(BudgetExceeded(0));
        }
        *self.budget -= 1;
        let mut fixed = 0usize;
        while let Some(unit) = clauses.iter().find(|c| c.len() == 1).map(|c| c[0]) {
            fixed += 1;
            let mut next = Vec::with_capacity(clauses.len());
            for c in clauses {
                if c.contains(&unit) {
                    continue;
                }
                let reduced: Vec<Lit> = c.into_iter().filter(|&l| l != unit.negate()).collect();
                if reduced.is_empty() {
                    return Ok(BigUint::from(0u32));
                }
                next.push(reduced);
            }
            clauses = next;
        }
        // Union-find over the variables still mentioned.
        let mut parent: HashMap<u32, u32> = HashMap::new();
        fn find(parent: &mut HashMap<u32, u32>, x: u32) -> u32 {
            let p = *parent.get(&x).unwrap();
            if p == x {
                return x;
            }
            let r = find(parent, p);
            parent.insert(x, r);
            r
        }
        for c in &clauses {
            for l in c {
                parent.entry(l.var() as u32).or_insert(l.var() as u32);
            }
            for w in c.windows(2) {
                let (a, b) = (find(&mut parent, w[0].var() as u32), find(&mut parent, w[1].var() as u32));
                if a != b {
                    parent.insert(a, b);
                }
            }
        }
        let mentioned = parent.len();
        let free = vars.len() - fixed - mentioned;
        let mut groups: HashMap<u32, (Vec<u32>, Vec<Vec<Lit>>)> = HashMap::new();
        let keys: Vec<u32> = parent.keys().copied().collect();
        for v in keys {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().0.push(v);
        }
        for c in clauses {
            let r = find(&mut parent, c[0].var() as u32);
            groups.get_mut(&r).unwrap().1.push(c);
        }
        let mut total = BigUint::from(1u32) << free;
        let mut comps: Vec<(Vec<u32>, Vec<Vec<Lit>>)> = groups.into_values().collect();
        comps.sort();
        for (cvars, cclauses) in comps {
            let n = self.component(cclauses, cvars)?;
            if n == BigUint::from(0u32) {
                return Ok(n);
            }
            total *= n;
        }
        Ok(total)
    }

    fn component(&mut self, mut clauses: Vec<Vec<Lit>>, vars: Vec<u32>) -> Result<BigUint, BudgetExceeded> {
        for c in clauses.iter_mut() {
            c.sort();
        }
        clauses.sort();
        if let Some(hit) = self.cache.get(&clauses) {
            return Ok(hit.clone());
        }
        let mut freq: HashMap<usize, usize> = HashMap::new();
        for c in &clauses {
            for l in c {
                *freq.entry(l.var()).or_default() += 1;
            }
        }
        let pick = freq
            .iter()
            .max_by_key(|&(v, n)| (*n, std::cmp::Reverse(*v)))
            .map(|(&v, _)| v)
            .unwrap();
        let mut total = BigUint::from(0u32);
        for lit in [Lit::pos(pick), Lit::neg(pick)] {
            let mut branch = clauses.clone();
            branch.push(vec![lit]);
            total += self.count(branch, &vars)?;
        }
        self.cache.insert(clauses, total.clone());
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_count(cnf: &Cnf) -> u64 {
        (0u64..1 << cnf.vars())
            .filter(|m| {
                cnf.clauses().iter().all(|c| {
                    c.iter()
                        .any(|l| ((m >> l.var()) & 1 == 1) != l.is_neg())
                })
            })
            .count() as u64
    }

    fn random_cnf(seed: u64, vars: usize, clauses: usize) -> Cnf {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut cnf = Cnf::new(vars);
        for _ in 0..clauses {
            let len = rng.gen_range(1..=3);
            let c: Vec<Lit> = (0..len)
                .map(|_| Lit::with_value(rng.gen_range(0..vars), rng.gen_bool(0.5)))
                .collect();
            cnf.add(&c);
        }
        cnf
    }

    #[test]
    fn solve_agrees_with_brute_force() {
        for seed in 0..300 {
            let cnf = random_cnf(seed, 8, 3 + (seed as usize % 20));
            let mut budget = u64::MAX;
            let got = Solver::new(&cnf).solve(&[], |_| false, &mut budget).unwrap();
            let expect = brute_count(&cnf) > 0;
            assert_eq!(got.is_some(), expect, "seed {seed}");
            if let Some(model) = got {
                for c in cnf.clauses() {
                    assert!(c.iter().any(|l| model[l.var()] != l.is_neg()));
                }
            }
        }
    }

    #[test]
    fn count_agrees_with_brute_force() {
        for seed in 0..300 {
            let cnf = random_cnf(seed, 9, 2 + (seed as usize % 16));
            let mut budget = u64::MAX;
            let got = count_models(&cnf, &mut budget).unwrap();
            assert_eq!(got, BigUint::from(brute_count(&cnf)), "seed {seed}");
        }
    }

    #[test]
    fn projection_agrees_with_brute_force() {
        for seed in 0..100 {
            let cnf = random_cnf(seed, 7, 4 + (seed as usize % 10));
            let vars = [1, 4, 6];
            let mut budget = u64::MAX;
            let got = Solver::new(&cnf).project(&vars, &mut budget).unwrap();
            let mut expect: Vec<u64> = (0u64..1 << 7)
                .filter(|m| {
                    cnf.clauses()
                        .iter()
                        .all(|c| c.iter().any(|l| ((m >> l.var()) & 1 == 1) != l.is_neg()))
                })
                .map(|m| {
                    vars.iter()
                        .enumerate()
                        .map(|(i, &v)| ((m >> v) & 1) << i)
                        .sum()
                })
                .collect();
            expect.sort_unstable();
            expect.dedup();
            assert_eq!(got, expect, "seed {seed}");
        }
    }

    #[test]
    fn assumptions_and_budget() {
        let mut cnf = Cnf::new(3);
        cnf.add(&[Lit::neg(0), Lit::pos(1)]);
        cnf.add(&[Lit::neg(1), Lit::pos(2)]);
        let mut s = Solver::new(&cnf);
        let mut budget = u64::MAX;
        let m = s.solve(&[Lit::pos(0)], |_| false, &mut budget).unwrap().unwrap();
        assert_eq!(m, vec![true, true, true]);
        assert!(s
            .solve(&[Lit::pos(0), Lit::neg(2)], |_| false, &mut budget)
            .unwrap()
            .is_none());
        let mut none = 0;
        assert!(s.solve(&[], |_| true, &mut none).is_err());
    }
}
