use std::collections::HashMap;
use std::fmt;

use super::Formula;

/// Finite, subformula-closed set of formulas in canonical order: by node
/// count, ties broken on the printed form.
///
/// Children always precede their parents, so a single forward pass over
/// `members` sees every subformula before the formulas built from it.
#[derive(Clone, Default)]
pub struct ClosureSet {
    members: Vec<Formula>,
    index: HashMap<Formula, usize>,
}

impl ClosureSet {
    pub fn new() -> ClosureSet {
        ClosureSet::default()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Formula] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.members.iter()
    }

    pub fn get(&self, i: usize) -> &Formula {
        &self.members[i]
    }

    pub fn position(&self, f: &Formula) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.index.contains_key(f)
    }

    /// Least closed superset of `self` and `roots`.
    pub fn extend<'a, I>(&self, roots: I) -> ClosureSet
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        let mut all: Vec<Formula> = self.members.clone();
        all.extend(roots.into_iter().cloned());
        subformula_closure(all.iter())
    }

    /// Adds the demodalized image of every member.
    pub fn with_demodalized(&self) -> ClosureSet {
        let images: Vec<Formula> = self.members.iter().map(Formula::demodalize).collect();
        self.extend(images.iter())
    }

    /// Adds `~^j c` for `j <= depth` and every negation-stripped core `c` of a member.
    pub fn with_negation_padding(&self, depth: usize) -> ClosureSet {
        let mut extra = Vec::new();
        for f in &self.members {
            let core = f.strip_negations().core;
            extra.push(super::apply_negations(depth, core));
        }
        self.extend(extra.iter())
    }

    fn from_unsorted(mut members: Vec<Formula>) -> ClosureSet {
        let mut keyed: Vec<(usize, String, Formula)> = members
            .drain(..)
            .map(|f| (f.size(), f.to_string(), f))
            .collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        keyed.dedup_by(|a, b| a.2 == b.2);
        let members: Vec<Formula> = keyed.into_iter().map(|(_, _, f)| f).collect();
        let index = members
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i))
            .collect();
        ClosureSet { members, index }
    }
}

impl PartialEq for ClosureSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for ClosureSet {}

impl fmt::Debug for ClosureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.members.iter().map(|m| m.to_string()))
            .finish()
    }
}

/// Least subformula-closed set containing every root.
pub fn subformula_closure<'a, I>(roots: I) -> ClosureSet
where
    I: IntoIterator<Item = &'a Formula>,
{
    let mut seen: std::collections::HashSet<Formula> = std::collections::HashSet::new();
    let mut stack: Vec<Formula> = roots.into_iter().cloned().collect();
    while let Some(f) = stack.pop() {
        if seen.contains(&f) {
            continue;
        }
        for child in f.children() {
            if !seen.contains(child) {
                stack.push(child.clone());
            }
        }
        seen.insert(f);
    }
    ClosureSet::from_unsorted(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn printed(c: &ClosureSet) -> Vec<String> {
        c.iter().map(|f| f.to_string()).collect()
    }

    #[test]
    fn closure_examples() {
        let c = subformula_closure([&parse("p -> q").unwrap()]);
        assert_eq!(printed(&c), ["p", "q", "p -> q"]);

        let c = subformula_closure([&parse("[]p").unwrap()]);
        assert_eq!(printed(&c), ["p", "[]p"]);

        let c = subformula_closure([&parse("~(p -> ~p)").unwrap()]);
        assert_eq!(printed(&c), ["p", "~p", "p -> ~p", "~(p -> ~p)"]);
    }

    #[test]
    fn children_precede_parents() {
        let c = subformula_closure([&parse("[](p -> ~q) | <>~~p & q").unwrap()]);
        for (i, f) in c.iter().enumerate() {
            for child in f.children() {
                assert!(c.position(child).unwrap() < i);
            }
        }
    }

    #[test]
    fn demodalized_extension_is_closed() {
        let c = subformula_closure([&parse("[]p -> <>(q & []p)").unwrap()]);
        let ext = c.with_demodalized();
        for f in c.iter() {
            assert!(ext.contains(&f.demodalize()));
        }
        assert_eq!(ext, subformula_closure(ext.iter()));
    }

    #[test]
    fn padding_adds_prefixed_cores() {
        let c = subformula_closure([&parse("p -> ~q").unwrap()]);
        let padded = c.with_negation_padding(2);
        for s in ["~~p", "~~q", "~~(p -> ~q)", "~(p -> ~q)"] {
            assert!(padded.contains(&parse(s).unwrap()), "{s}");
        }
        assert!(!padded.contains(&parse("~~~q").unwrap()));
    }
}
