//! Formula language of the connexive modal logics.
//!
//! Primitive connectives are `~`, `&`, `|`, the relating arrow `->`, and the
//! modalities `[]` / `<>`. Material implication `=>` and equivalence `<=>` are
//! accepted by the parser but expanded on the spot, so no AST node exists for
//! them.

mod closure;
mod parse;
mod print;

use std::collections::BTreeSet;
use std::sync::Arc;

pub use closure::{subformula_closure, ClosureSet};
pub use parse::{parse, ParseError};

/// A formula of the modal connexive language.
///
/// Children are reference counted, so cloning is cheap and values can be shared
/// across threads. Equality and ordering are structural; shared children
/// are recognized by pointer first.
#[derive(Clone, Debug)]
pub enum Formula {
    Var(Arc<str>),
    Neg(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    /// The relating (connexive) implication.
    Arrow(Arc<Formula>, Arc<Formula>),
    Box(Arc<Formula>),
    Diamond(Arc<Formula>),
}

fn same(a: &Arc<Formula>, b: &Arc<Formula>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn order(a: &Arc<Formula>, b: &Arc<Formula>) -> std::cmp::Ordering {
    if Arc::ptr_eq(a, b) {
        std::cmp::Ordering::Equal
    } else {
        (**a).cmp(&**b)
    }
}

impl Formula {
    fn rank(&self) -> u8 {
        match self {
            Formula::Var(_) => 0,
            Formula::Neg(_) => 1,
            Formula::And(..) => 2,
            Formula::Or(..) => 3,
            Formula::Arrow(..) => 4,
            Formula::Box(_) => 5,
            Formula::Diamond(_) => 6,
        }
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Formula) -> bool {
        use Formula::*;
        match (self, other) {
            (Var(a), Var(b)) => a == b,
            (Neg(a), Neg(b)) | (Box(a), Box(b)) | (Diamond(a), Diamond(b)) => same(a, b),
            (And(a, b), And(c, d)) | (Or(a, b), Or(c, d)) | (Arrow(a, b), Arrow(c, d)) => {
                same(a, c) && same(b, d)
            }
            _ => false,
        }
    }
}

impl Eq for Formula {}

impl Ord for Formula {
    fn cmp(&self, other: &Formula) -> std::cmp::Ordering {
        use Formula::*;
        match (self, other) {
            (Var(a), Var(b)) => a.cmp(b),
            (Neg(a), Neg(b)) | (Box(a), Box(b)) | (Diamond(a), Diamond(b)) => order(a, b),
            (And(a, b), And(c, d)) | (Or(a, b), Or(c, d)) | (Arrow(a, b), Arrow(c, d)) => {
                order(a, c).then_with(|| order(b, d))
            }
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl std::hash::Hash for Formula {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rank().hash(state);
        match self {
            Formula::Var(name) => name.hash(state),
            Formula::Neg(a) | Formula::Box(a) | Formula::Diamond(a) => a.hash(state),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Arrow(a, b) => {
                a.hash(state);
                b.hash(state);
            }
        }
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Formula) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(Arc::from(name))
    }

    pub fn neg(self) -> Formula {
        Formula::Neg(Arc::new(self))
    }

    pub fn and(self, rhs: Formula) -> Formula {
        Formula::And(Arc::new(self), Arc::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Formula {
        Formula::Or(Arc::new(self), Arc::new(rhs))
    }

    pub fn arrow(self, rhs: Formula) -> Formula {
        Formula::Arrow(Arc::new(self), Arc::new(rhs))
    }

    pub fn boxed(self) -> Formula {
        Formula::Box(Arc::new(self))
    }

    pub fn diamond(self) -> Formula {
        Formula::Diamond(Arc::new(self))
    }

    /// Material implication, `~self | rhs`.
    pub fn implies(self, rhs: Formula) -> Formula {
        self.neg().or(rhs)
    }

    /// Material equivalence, `(~self | rhs) & (~rhs | self)`.
    pub fn iff(self, rhs: Formula) -> Formula {
        let forward = self.clone().implies(rhs.clone());
        let backward = rhs.implies(self);
        forward.and(backward)
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) => 1,
            Formula::Neg(a) | Formula::Box(a) | Formula::Diamond(a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Arrow(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::Neg(a) => a.modal_depth(),
            Formula::Box(a) | Formula::Diamond(a) => 1 + a.modal_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Arrow(a, b) => {
                a.modal_depth().max(b.modal_depth())
            }
        }
    }

    pub fn is_modal_free(&self) -> bool {
        self.modal_depth() == 0
    }

    /// Variable names occurring in the formula.
    pub fn variables(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Var(name) => {
                out.insert(name.clone());
            }
            Formula::Neg(a) | Formula::Box(a) | Formula::Diamond(a) => a.collect_variables(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Arrow(a, b) => {
                a.collect_variables(out);
                b.collect_variables(out);
            }
        }
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Var(_) => Vec::new(),
            Formula::Neg(a) | Formula::Box(a) | Formula::Diamond(a) => vec![a],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Arrow(a, b) => vec![a, b],
        }
    }

    /// Returns `(antecedent, consequent)` when the head is the relating arrow.
    pub fn as_arrow(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Arrow(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn strip_negations(&self) -> NegPrefix {
        let mut depth = 0;
        let mut core = self;
        while let Formula::Neg(inner) = core {
            depth += 1;
            core = inner;
        }
        NegPrefix {
            depth,
            core: core.clone(),
        }
    }

    /// Erases every modal operator, acting homomorphically on the other
    /// connectives. Idempotent.
    pub fn demodalize(&self) -> Formula {
        match self {
            Formula::Var(_) => self.clone(),
            Formula::Neg(a) => a.demodalize().neg(),
            Formula::And(a, b) => a.demodalize().and(b.demodalize()),
            Formula::Or(a, b) => a.demodalize().or(b.demodalize()),
            Formula::Arrow(a, b) => a.demodalize().arrow(b.demodalize()),
            Formula::Box(a) | Formula::Diamond(a) => a.demodalize(),
        }
    }
}

impl serde::Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Formula, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

/// `k` leading negations in front of `core`.
pub fn apply_negations(k: usize, core: Formula) -> Formula {
    (0..k).fold(core, |f, _| f.neg())
}

/// A formula split into its count of leading negations and the remaining core,
/// whose head is not a negation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NegPrefix {
    pub depth: usize,
    pub core: Formula,
}

impl NegPrefix {
    pub fn rebuild(&self) -> Formula {
        apply_negations(self.depth, self.core.clone())
    }
}
