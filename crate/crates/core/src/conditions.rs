//! Conditions on relating relations and modal frames.
//!
//! Every universally quantified condition is relativized to a finite carrier:
//! an instance is enforced only when every formula it mentions is a carrier
//! member. Instances are exposed as clauses over carrier index pairs, which is
//! the shape the search engine consumes.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::semantics::{Pair, RelatingModel};
use crate::syntax::{apply_negations, ClosureSet, Formula};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConditionError {
    #[error("unknown condition `{0}`")]
    Unknown(String),
    #[error("bad gcun parameters `{0}`: expected gcun:k,l,m,n with k <= m and l <= n")]
    BadGcun(String),
    #[error("`{0}` relates worlds to their successors and needs a whole model")]
    ModelLevel(String),
    #[error("pair ({0}, {1}) lies outside the carrier")]
    OutsideCarrier(String, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FrameProperty {
    Reflexive,
    Serial,
    Symmetric,
    Transitive,
    Euclidean,
}

impl FrameProperty {
    pub const ALL: [FrameProperty; 5] = [
        FrameProperty::Reflexive,
        FrameProperty::Serial,
        FrameProperty::Symmetric,
        FrameProperty::Transitive,
        FrameProperty::Euclidean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FrameProperty::Reflexive => "reflexive",
            FrameProperty::Serial => "serial",
            FrameProperty::Symmetric => "symmetric",
            FrameProperty::Transitive => "transitive",
            FrameProperty::Euclidean => "euclidean",
        }
    }
}

/// Relating conditions matching the modal laws D1, D2, K, T, D, B, 4, 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModalLaw {
    D1,
    D2,
    K1,
    K2,
    T,
    D,
    B,
    Iv,
    V,
}

impl ModalLaw {
    pub const ALL: [ModalLaw; 9] = [
        ModalLaw::D1,
        ModalLaw::D2,
        ModalLaw::K1,
        ModalLaw::K2,
        ModalLaw::T,
        ModalLaw::D,
        ModalLaw::B,
        ModalLaw::Iv,
        ModalLaw::V,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModalLaw::D1 => "d1",
            ModalLaw::D2 => "d2",
            ModalLaw::K1 => "k1",
            ModalLaw::K2 => "k2",
            ModalLaw::T => "t",
            ModalLaw::D => "d",
            ModalLaw::B => "b",
            ModalLaw::Iv => "iv",
            ModalLaw::V => "v",
        }
    }

    pub fn frame(self) -> Option<FrameProperty> {
        match self {
            ModalLaw::T => Some(FrameProperty::Reflexive),
            ModalLaw::D => Some(FrameProperty::Serial),
            ModalLaw::B => Some(FrameProperty::Symmetric),
            ModalLaw::Iv => Some(FrameProperty::Transitive),
            ModalLaw::V => Some(FrameProperty::Euclidean),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    A1,
    A2,
    B0,
    B1,
    B2,
    B0Prime,
    B1Prime,
    B2Prime,
    Cun,
    Gcun {
        k: usize,
        l: usize,
        m: usize,
        n: usize,
    },
    R1,
    R2,
    R3,
    R4,
    R5,
    DemR,
    DemL,
    DemE,
    /// A modal-law condition. `demodalized` selects the `_d` form; with
    /// `relating_only` the frame property is not required.
    Law {
        law: ModalLaw,
        demodalized: bool,
        relating_only: bool,
    },
    Frame(FrameProperty),
}

impl Condition {
    pub fn law(law: ModalLaw) -> Condition {
        Condition::Law {
            law,
            demodalized: false,
            relating_only: false,
        }
    }

    pub fn frame_requirement(self) -> Option<FrameProperty> {
        match self {
            Condition::Law {
                law,
                relating_only: false,
                ..
            } => law.frame(),
            Condition::Frame(p) => Some(p),
            _ => None,
        }
    }

    /// Conditions that quantify over successor worlds.
    pub fn is_model_level(self) -> bool {
        matches!(
            self,
            Condition::Law {
                law: ModalLaw::K2,
                ..
            }
        )
    }

    /// Conditions of the form `R(X, Y) => R(X', Y')`, usable by [`close`].
    pub fn is_closure_shaped(self) -> bool {
        matches!(
            self,
            Condition::Cun
                | Condition::Gcun { .. }
                | Condition::R3
                | Condition::DemR
                | Condition::DemL
                | Condition::DemE
        )
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let plain = match self {
            Condition::A1 => "a1",
            Condition::A2 => "a2",
            Condition::B0 => "b0",
            Condition::B1 => "b1",
            Condition::B2 => "b2",
            Condition::B0Prime => "b0'",
            Condition::B1Prime => "b1'",
            Condition::B2Prime => "b2'",
            Condition::Cun => "cun",
            Condition::R1 => "r1",
            Condition::R2 => "r2",
            Condition::R3 => "r3",
            Condition::R4 => "r4",
            Condition::R5 => "r5",
            Condition::DemR => "demR",
            Condition::DemL => "demL",
            Condition::DemE => "demE",
            Condition::Frame(p) => p.name(),
            Condition::Gcun { k, l, m, n } => return write!(f, "gcun:{k},{l},{m},{n}"),
            Condition::Law {
                law,
                demodalized,
                relating_only,
            } => {
                let prefix = if *relating_only { "rel:" } else { "" };
                let suffix = if *demodalized { "_d" } else { "" };
                return write!(f, "{prefix}{}{suffix}", law.name());
            }
        };
        f.write_str(plain)
    }
}

impl FromStr for Condition {
    type Err = ConditionError;

    fn from_str(token: &str) -> Result<Condition, ConditionError> {
        let t = token.trim();
        if let Some(params) = t.strip_prefix("gcun:") {
            let nums: Vec<usize> = params
                .split(',')
                .map(|x| x.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| ConditionError::BadGcun(t.to_string()))?;
            return match nums[..] {
                [k, l, m, n] if k <= m && l <= n => Ok(Condition::Gcun { k, l, m, n }),
                _ => Err(ConditionError::BadGcun(t.to_string())),
            };
        }
        let simple = match t {
            "a1" => Some(Condition::A1),
            "a2" => Some(Condition::A2),
            "b0" => Some(Condition::B0),
            "b1" => Some(Condition::B1),
            "b2" => Some(Condition::B2),
            "b0'" | "b0p" | "b0′" => Some(Condition::B0Prime),
            "b1'" | "b1p" | "b1′" => Some(Condition::B1Prime),
            "b2'" | "b2p" | "b2′" => Some(Condition::B2Prime),
            "cun" => Some(Condition::Cun),
            "r1" => Some(Condition::R1),
            "r2" => Some(Condition::R2),
            "r3" => Some(Condition::R3),
            "r4" => Some(Condition::R4),
            "r5" => Some(Condition::R5),
            "demR" | "demr" => Some(Condition::DemR),
            "demL" | "deml" => Some(Condition::DemL),
            "demE" | "deme" => Some(Condition::DemE),
            _ => None,
        };
        if let Some(c) = simple {
            return Ok(c);
        }
        if let Some(p) = FrameProperty::ALL.iter().find(|p| p.name() == t) {
            return Ok(Condition::Frame(*p));
        }
        let (relating_only, rest) = match t.strip_prefix("rel:") {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let (demodalized, base) = match rest.strip_suffix("_d") {
            Some(base) => (true, base),
            None => (false, rest),
        };
        ModalLaw::ALL
            .iter()
            .find(|law| law.name() == base)
            .map(|&law| Condition::Law {
                law,
                demodalized,
                relating_only,
            })
            .ok_or_else(|| ConditionError::Unknown(t.to_string()))
    }
}

/// A set of condition flags.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ConditionSet {
    conds: BTreeSet<Condition>,
}

impl ConditionSet {
    pub fn new() -> ConditionSet {
        ConditionSet::default()
    }

    /// The connexive base: a1, a2, b0, b1, b2.
    pub fn bcl() -> ConditionSet {
        [
            Condition::A1,
            Condition::A2,
            Condition::B0,
            Condition::B1,
            Condition::B2,
        ]
        .into_iter()
        .collect()
    }

    /// Parses a comma separated list such as `a1,b0,gcun:0,1,0,2,t`. A gcun
    /// entry swallows the three numbers that follow it.
    pub fn parse(text: &str) -> Result<ConditionSet, ConditionError> {
        let mut out = ConditionSet::new();
        let mut tokens = text.split(',').map(str::trim).filter(|t| !t.is_empty());
        while let Some(tok) = tokens.next() {
            if tok.starts_with("gcun:") {
                let mut full = tok.to_string();
                for _ in 0..3 {
                    match tokens.next() {
                        Some(num) => {
                            full.push(',');
                            full.push_str(num);
                        }
                        None => return Err(ConditionError::BadGcun(full)),
                    }
                }
                out.insert(full.parse()?);
            } else {
                out.insert(tok.parse()?);
            }
        }
        Ok(out)
    }

    pub fn insert(&mut self, c: Condition) {
        self.conds.insert(c);
    }

    pub fn remove(&mut self, c: Condition) {
        self.conds.remove(&c);
    }

    pub fn with(mut self, c: Condition) -> ConditionSet {
        self.insert(c);
        self
    }

    pub fn union(&self, other: &ConditionSet) -> ConditionSet {
        self.conds.union(&other.conds).copied().collect()
    }

    pub fn contains(&self, c: Condition) -> bool {
        self.conds.contains(&c)
    }

    pub fn iter(&self) -> impl Iterator<Item = Condition> + '_ {
        self.conds.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.conds.is_empty()
    }

    pub fn frame_requirements(&self) -> BTreeSet<FrameProperty> {
        self.iter().filter_map(Condition::frame_requirement).collect()
    }

    pub fn has_model_level(&self) -> bool {
        self.iter().any(Condition::is_model_level)
    }

    /// True when some flag talks about demodalized images.
    pub fn mentions_demodalization(&self) -> bool {
        self.iter().any(|c| {
            matches!(
                c,
                Condition::DemR | Condition::DemL | Condition::DemE
            )
        })
    }

    /// Largest negation prefix any gcun flag can reach: max(m, n, 2m-k, 2n-l).
    pub fn gcun_padding(&self) -> Option<usize> {
        self.iter()
            .filter_map(|c| match c {
                Condition::Gcun { k, l, m, n } => Some(m.max(n).max(2 * m - k).max(2 * n - l)),
                _ => None,
            })
            .max()
    }

    /// Carrier used by the search: the closure of `roots`, extended by
    /// demodalized images when a dem flag is present, then padded with
    /// negation prefixes for gcun flags when `pad` is set.
    pub fn search_carrier<'a, I>(&self, roots: I, pad: bool) -> ClosureSet
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        let mut carrier = crate::syntax::subformula_closure(roots);
        if self.mentions_demodalization() {
            carrier = carrier.with_demodalized();
        }
        if pad {
            if let Some(depth) = self.gcun_padding() {
                carrier = carrier.with_negation_padding(depth);
            }
        }
        carrier
    }
}

impl FromIterator<Condition> for ConditionSet {
    fn from_iter<I: IntoIterator<Item = Condition>>(iter: I) -> ConditionSet {
        ConditionSet {
            conds: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for ConditionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.iter().map(|c| c.to_string()).collect();
        f.write_str(&names.join(","))
    }
}

impl FromStr for ConditionSet {
    type Err = ConditionError;

    fn from_str(s: &str) -> Result<ConditionSet, ConditionError> {
        ConditionSet::parse(s)
    }
}

/// One instance of a world-local condition over carrier indices: if every
/// premise pair is related then at least one conclusion pair is. No
/// conclusions means the premises may not all hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub condition: Condition,
    pub premises: Vec<(usize, usize)>,
    pub conclusions: Vec<(usize, usize)>,
}

/// One instance of a successor-quantified condition: if `premise` is related
/// at every successor of a world, `conclusion` is related at that world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuccessorInstance {
    pub condition: Condition,
    pub premise: (usize, usize),
    pub conclusion: (usize, usize),
}

struct Gen<'a> {
    carrier: &'a ClosureSet,
    cond: Condition,
    out: Vec<Instance>,
}

impl Gen<'_> {
    fn pos(&self, f: &Formula) -> Option<usize> {
        self.carrier.position(f)
    }

    fn push(&mut self, premises: Vec<(usize, usize)>, conclusions: Vec<(usize, usize)>) {
        if premises.iter().any(|p| conclusions.contains(p)) {
            return;
        }
        self.out.push(Instance {
            condition: self.cond,
            premises,
            conclusions,
        });
    }

    fn forbid(&mut self, pairs: Vec<(usize, usize)>) {
        self.push(pairs, Vec::new());
    }

    fn require(&mut self, pair: (usize, usize)) {
        self.push(Vec::new(), vec![pair]);
    }

    fn implies(&mut self, from: (usize, usize), to: (usize, usize)) {
        self.push(vec![from], vec![to]);
    }

    /// Requires `(f(x), g(x))` for every member `x` where both land in the carrier.
    fn require_each<F>(&mut self, mut shape: F)
    where
        F: FnMut(&Formula) -> Option<(Formula, Formula)>,
    {
        for x in self.carrier.iter() {
            if let Some((a, b)) = shape(x) {
                if let (Some(i), Some(j)) = (self.pos(&a), self.pos(&b)) {
                    self.require((i, j));
                }
            }
        }
    }
}

fn strip_exactly(f: &Formula, k: usize) -> Option<Formula> {
    let mut cur = f;
    for _ in 0..k {
        match cur {
            Formula::Neg(inner) => cur = inner,
            _ => return None,
        }
    }
    Some(cur.clone())
}

/// World-local instances of `cond` over the carrier. Successor-quantified
/// conditions and pure frame flags contribute none.
pub fn instances(carrier: &ClosureSet, cond: Condition) -> Vec<Instance> {
    let mut g = Gen {
        carrier,
        cond,
        out: Vec::new(),
    };
    let fs = carrier.members();
    let n = fs.len();
    let neg_pos: Vec<Option<usize>> = fs.iter().map(|f| g.pos(&f.clone().neg())).collect();
    match cond {
        Condition::A1 => {
            for a in 0..n {
                if let Some(na) = neg_pos[a] {
                    g.forbid(vec![(a, na)]);
                }
            }
        }
        Condition::A2 => {
            for a in 0..n {
                if let Some(na) = neg_pos[a] {
                    g.forbid(vec![(na, a)]);
                }
            }
        }
        Condition::B0 => {
            for a in 0..n {
                for b in 0..n {
                    if let Some(nb) = neg_pos[b] {
                        g.forbid(vec![(a, b), (a, nb)]);
                    }
                }
            }
        }
        Condition::B0Prime => {
            for a in 0..n {
                if let Some(na) = neg_pos[a] {
                    for b in 0..n {
                        g.forbid(vec![(a, b), (na, b)]);
                    }
                }
            }
        }
        Condition::B1 => g.require_each(|x| {
            let (a, b) = x.as_arrow()?;
            let target = a.clone().arrow(b.clone().neg()).neg();
            Some((x.clone(), target))
        }),
        Condition::B2 => g.require_each(|x| {
            let (a, nb) = x.as_arrow()?;
            let Formula::Neg(b) = nb else { return None };
            let target = a.clone().arrow((**b).clone()).neg();
            Some((x.clone(), target))
        }),
        Condition::B1Prime => g.require_each(|x| {
            let (a, b) = x.as_arrow()?;
            let target = a.clone().neg().arrow(b.clone()).neg();
            Some((x.clone(), target))
        }),
        Condition::B2Prime => g.require_each(|x| {
            let (na, b) = x.as_arrow()?;
            let Formula::Neg(a) = na else { return None };
            let target = (**a).clone().arrow(b.clone()).neg();
            Some((x.clone(), target))
        }),
        Condition::Cun => {
            for a in 0..n {
                for b in 0..n {
                    if let (Some(na), Some(nb)) = (neg_pos[a], neg_pos[b]) {
                        g.implies((a, b), (na, nb));
                    }
                }
            }
        }
        Condition::Gcun { k, l, m, n: nn } => {
            let lift = |f: &Formula, from: usize, to: usize| -> Option<usize> {
                let core = strip_exactly(f, from)?;
                carrier.position(&apply_negations(to, core))
            };
            let left: Vec<Option<usize>> = fs.iter().map(|f| lift(f, k, m)).collect();
            let right: Vec<Option<usize>> = fs.iter().map(|f| lift(f, l, nn)).collect();
            for x in 0..n {
                for y in 0..n {
                    if let (Some(x2), Some(y2)) = (left[x], right[y]) {
                        g.implies((x, y), (x2, y2));
                    }
                }
            }
        }
        Condition::R1 => {
            for a in 0..n {
                for b in 0..n {
                    if let Some(nb) = neg_pos[b] {
                        g.implies((a, nb), (a, b));
                        g.implies((a, b), (a, nb));
                    }
                }
            }
        }
        Condition::R2 => {
            for (x, f) in fs.iter().enumerate() {
                let Formula::And(b, c) = f else { continue };
                let arrow = (**b).clone().arrow((**c).clone());
                let Some(y) = g.pos(&arrow) else { continue };
                for a in 0..n {
                    g.implies((a, x), (a, y));
                    g.implies((a, y), (a, x));
                }
            }
        }
        Condition::R3 => {
            for a in 0..n {
                for b in 0..n {
                    g.implies((a, b), (b, a));
                }
            }
        }
        Condition::R4 => {
            for a in 0..n {
                g.require((a, a));
            }
        }
        Condition::R5 => {
            for (x, f) in fs.iter().enumerate() {
                let Formula::And(b, c) = f else { continue };
                let (b, c) = (g.pos(b).unwrap(), g.pos(c).unwrap());
                for a in 0..n {
                    g.push(vec![(a, x)], vec![(a, b), (a, c)]);
                    g.implies((a, b), (a, x));
                    g.implies((a, c), (a, x));
                }
            }
        }
        Condition::DemR | Condition::DemL | Condition::DemE => {
            let d: Vec<Option<usize>> = fs.iter().map(|f| g.pos(&f.demodalize())).collect();
            for a in 0..n {
                for b in 0..n {
                    let (Some(da), Some(db)) = (d[a], d[b]) else { continue };
                    if cond != Condition::DemL {
                        g.implies((a, b), (da, db));
                    }
                    if cond != Condition::DemR {
                        g.implies((da, db), (a, b));
                    }
                }
            }
        }
        Condition::Law {
            law,
            demodalized: false,
            ..
        } => law_instances(&mut g, law),
        Condition::Law {
            law,
            demodalized: true,
            ..
        } => demodalized_law_instances(&mut g, law),
        Condition::Frame(_) => {}
    }
    g.out
}

fn law_instances(g: &mut Gen<'_>, law: ModalLaw) {
    match law {
        ModalLaw::D1 => g.require_each(|x| match x {
            Formula::Diamond(a) => Some((x.clone(), (**a).clone().neg().boxed().neg())),
            _ => None,
        }),
        ModalLaw::D2 => g.require_each(|x| match x {
            Formula::Diamond(a) => Some(((**a).clone().neg().boxed().neg(), x.clone())),
            _ => None,
        }),
        ModalLaw::K1 => g.require_each(|x| match x {
            Formula::Box(inner) => {
                let (a, b) = inner.as_arrow()?;
                Some((x.clone(), a.clone().boxed().arrow(b.clone().boxed())))
            }
            _ => None,
        }),
        ModalLaw::T => g.require_each(|x| match x {
            Formula::Box(a) => Some((x.clone(), (**a).clone())),
            _ => None,
        }),
        ModalLaw::D => g.require_each(|x| match x {
            Formula::Box(a) => Some((x.clone(), (**a).clone().diamond())),
            _ => None,
        }),
        ModalLaw::B => g.require_each(|x| match x {
            Formula::Box(inner) => match &**inner {
                Formula::Diamond(a) => Some(((**a).clone(), x.clone())),
                _ => None,
            },
            _ => None,
        }),
        ModalLaw::Iv => g.require_each(|x| match x {
            Formula::Box(_) => Some((x.clone(), x.clone().boxed())),
            _ => None,
        }),
        ModalLaw::V => g.require_each(|x| match x {
            Formula::Diamond(_) => Some((x.clone(), x.clone().boxed())),
            _ => None,
        }),
        ModalLaw::K2 => {}
    }
}

// The `_d` forms after demodalization, with the metavariable ranging over
// modality-free carrier members (the image of demodalization).
fn demodalized_law_instances(g: &mut Gen<'_>, law: ModalLaw) {
    match law {
        ModalLaw::D1 => g.require_each(|x| {
            x.is_modal_free()
                .then(|| (x.clone(), x.clone().neg().neg()))
        }),
        ModalLaw::D2 => g.require_each(|x| {
            x.is_modal_free()
                .then(|| (x.clone().neg().neg(), x.clone()))
        }),
        ModalLaw::K1 => g.require_each(|x| {
            (x.is_modal_free() && x.as_arrow().is_some()).then(|| (x.clone(), x.clone()))
        }),
        ModalLaw::T | ModalLaw::D | ModalLaw::B | ModalLaw::Iv | ModalLaw::V => {
            g.require_each(|x| x.is_modal_free().then(|| (x.clone(), x.clone())))
        }
        ModalLaw::K2 => {}
    }
}

/// Instances of the successor-quantified conditions (k2 and k2_d).
pub fn successor_instances(carrier: &ClosureSet, cond: Condition) -> Vec<SuccessorInstance> {
    let Condition::Law {
        law: ModalLaw::K2,
        demodalized,
        ..
    } = cond
    else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let fs = carrier.members();
    let lifted: Vec<Option<usize>> = fs
        .iter()
        .map(|f| {
            if demodalized {
                carrier.position(&f.demodalize())
            } else {
                carrier.position(&f.clone().boxed())
            }
        })
        .collect();
    for a in 0..fs.len() {
        for b in 0..fs.len() {
            if let (Some(x), Some(y)) = (lifted[a], lifted[b]) {
                out.push(SuccessorInstance {
                    condition: cond,
                    premise: (a, b),
                    conclusion: (x, y),
                });
            }
        }
    }
    out
}

/// A failed condition instance or frame property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub world: Option<String>,
    /// Pairs that are related and trigger the instance.
    pub related: Vec<Pair>,
    /// Pairs of which at least one should have been related.
    pub missing: Vec<Pair>,
    /// Worlds witnessing a frame failure.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub worlds: Vec<String>,
    pub reason: String,
}

fn show(pairs: &[Pair]) -> String {
    let parts: Vec<String> = pairs.iter().map(|(a, b)| format!("({a}, {b})")).collect();
    parts.join(", ")
}

impl Violation {
    fn from_instance(carrier: &ClosureSet, inst: &Instance, world: Option<&str>) -> Violation {
        let pair = |&(i, j): &(usize, usize)| (carrier.get(i).clone(), carrier.get(j).clone());
        let related: Vec<Pair> = inst.premises.iter().map(pair).collect();
        let missing: Vec<Pair> = inst.conclusions.iter().map(pair).collect();
        let reason = match (related.is_empty(), missing.is_empty()) {
            (true, _) => format!("required pair {} is not related", show(&missing)),
            (false, true) if related.len() == 1 => {
                format!("forbidden pair {} is related", show(&related))
            }
            (false, true) => format!("pairs {} may not all be related", show(&related)),
            (false, false) => format!(
                "{} is related but {} is not",
                show(&related),
                if missing.len() == 1 {
                    show(&missing)
                } else {
                    format!("none of {}", show(&missing))
                }
            ),
        };
        Violation {
            condition: inst.condition.to_string(),
            world: world.map(str::to_string),
            related,
            missing,
            worlds: Vec::new(),
            reason,
        }
    }
}

fn index_relation(
    relation: &BTreeSet<Pair>,
    carrier: &ClosureSet,
) -> Result<HashSet<(usize, usize)>, ConditionError> {
    relation
        .iter()
        .map(|(a, b)| match (carrier.position(a), carrier.position(b)) {
            (Some(i), Some(j)) => Ok((i, j)),
            _ => Err(ConditionError::OutsideCarrier(a.to_string(), b.to_string())),
        })
        .collect()
}

fn violated(inst: &Instance, rel: &HashSet<(usize, usize)>) -> bool {
    inst.premises.iter().all(|p| rel.contains(p)) && !inst.conclusions.iter().any(|c| rel.contains(c))
}

/// Violations of one world-local condition by a single relation.
pub fn check(
    relation: &BTreeSet<Pair>,
    carrier: &ClosureSet,
    cond: Condition,
) -> Result<Vec<Violation>, ConditionError> {
    if cond.is_model_level() {
        return Err(ConditionError::ModelLevel(cond.to_string()));
    }
    let rel = index_relation(relation, carrier)?;
    Ok(instances(carrier, cond)
        .iter()
        .filter(|inst| violated(inst, &rel))
        .map(|inst| Violation::from_instance(carrier, inst, None))
        .collect())
}

/// Pairs that every admissible relation over the carrier must contain.
pub fn forced_pairs(carrier: &ClosureSet, conds: &ConditionSet) -> BTreeSet<Pair> {
    conds
        .iter()
        .flat_map(|c| instances(carrier, c))
        .filter(|inst| inst.premises.is_empty() && inst.conclusions.len() == 1)
        .map(|inst| {
            let (i, j) = inst.conclusions[0];
            (carrier.get(i).clone(), carrier.get(j).clone())
        })
        .collect()
}

/// Least superset of `relation` inside the carrier closed under the
/// closure-shaped flags of `conds` (cun, gcun, r3, demR, demL, demE). Other
/// flags are ignored.
pub fn close(
    relation: &BTreeSet<Pair>,
    carrier: &ClosureSet,
    conds: &ConditionSet,
) -> Result<BTreeSet<Pair>, ConditionError> {
    let n = carrier.len();
    let mut edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n * n];
    for cond in conds.iter().filter(|c| c.is_closure_shaped()) {
        for inst in instances(carrier, cond) {
            if let ([from], [to]) = (&inst.premises[..], &inst.conclusions[..]) {
                edges[from.0 * n + from.1].push(*to);
            }
        }
    }
    let mut seen = index_relation(relation, carrier)?;
    let mut queue: VecDeque<(usize, usize)> = seen.iter().copied().collect();
    while let Some((a, b)) = queue.pop_front() {
        for &next in &edges[a * n + b] {
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen
        .into_iter()
        .map(|(i, j)| (carrier.get(i).clone(), carrier.get(j).clone()))
        .collect())
}

/// Worlds witnessing failure of `prop`, or `None` if it holds. Worlds are
/// indices `0..worlds`.
pub fn frame_witness(
    worlds: usize,
    access: &BTreeSet<(usize, usize)>,
    prop: FrameProperty,
) -> Option<Vec<usize>> {
    let s = |a: usize, b: usize| access.contains(&(a, b));
    let ws = 0..worlds;
    match prop {
        FrameProperty::Reflexive => ws.clone().find(|&w| !s(w, w)).map(|w| vec![w]),
        FrameProperty::Serial => ws
            .clone()
            .find(|&w| !(0..worlds).any(|u| s(w, u)))
            .map(|w| vec![w]),
        FrameProperty::Symmetric => access.iter().find(|&&(a, b)| !s(b, a)).map(|&(a, b)| vec![a, b]),
        FrameProperty::Transitive => access.iter().find_map(|&(a, b)| {
            (0..worlds)
                .find(|&c| s(b, c) && !s(a, c))
                .map(|c| vec![a, b, c])
        }),
        FrameProperty::Euclidean => access.iter().find_map(|&(a, b)| {
            (0..worlds)
                .find(|&c| s(a, c) && !s(b, c))
                .map(|c| vec![a, b, c])
        }),
    }
}

/// Whether the access relation over `worlds` worlds has `prop`.
pub fn frame_check(worlds: usize, access: &BTreeSet<(usize, usize)>, prop: FrameProperty) -> bool {
    frame_witness(worlds, access, prop).is_none()
}

/// Result of [`admissible`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub violations: Vec<Violation>,
}

/// Checks every world's relation against every flag over the model's
/// declared carrier, plus the frame properties the flags require.
pub fn admissible(model: &RelatingModel, conds: &ConditionSet) -> AdmissibilityReport {
    let carrier = model.carrier();
    let worlds = model.worlds();
    let rels: Vec<HashSet<(usize, usize)>> = (0..worlds.len())
        .map(|w| index_relation(model.relating(w), carrier).expect("model carrier covers its pairs"))
        .collect();
    let mut violations = Vec::new();
    for cond in conds.iter() {
        let local = instances(carrier, cond);
        for (w, rel) in rels.iter().enumerate() {
            for inst in local.iter().filter(|inst| violated(inst, rel)) {
                violations.push(Violation::from_instance(carrier, inst, Some(&worlds[w])));
            }
        }
        for inst in successor_instances(carrier, cond) {
            for (w, rel) in rels.iter().enumerate() {
                let premise_everywhere = model
                    .successors(w)
                    .iter()
                    .all(|&u| rels[u].contains(&inst.premise));
                if premise_everywhere && !rel.contains(&inst.conclusion) {
                    let (a, b) = inst.premise;
                    let (x, y) = inst.conclusion;
                    let missing = (carrier.get(x).clone(), carrier.get(y).clone());
                    violations.push(Violation {
                        condition: cond.to_string(),
                        world: Some(worlds[w].clone()),
                        related: Vec::new(),
                        reason: format!(
                            "({}, {}) is related at every successor but {} is not related",
                            carrier.get(a),
                            carrier.get(b),
                            show(std::slice::from_ref(&missing))
                        ),
                        missing: vec![missing],
                        worlds: Vec::new(),
                    });
                }
            }
        }
    }
    for prop in conds.frame_requirements() {
        if let Some(witness) = frame_witness(worlds.len(), model.access(), prop) {
            let names: Vec<String> = witness.iter().map(|&w| worlds[w].clone()).collect();
            violations.push(Violation {
                condition: prop.name().to_string(),
                world: None,
                related: Vec::new(),
                missing: Vec::new(),
                reason: format!("the frame is not {} at {}", prop.name(), names.join(", ")),
                worlds: names,
            });
        }
    }
    AdmissibilityReport {
        admissible: violations.is_empty(),
        violations,
    }
}
