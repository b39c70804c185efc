//! Registry of named logics. Each name fixes a condition set for the
//! semantics and a calculus for the proof checker.
//!
//! Names are `BCL` or `MBCL` followed by `+`-separated items: `cun`,
//! `gcun:k,l,m,n`, `CUDR`, `CUDL`, `CUDE`, or a comma-separated list of modal
//! packages drawn from `D1,D2,K,T,D,B,4,5`. Demodalization and modal
//! packages need `MBCL`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::conditions::{Condition, ConditionSet, ModalLaw};
use crate::proofs::{Calculus, Schema};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LogicError {
    #[error("unknown logic `{0}`; expected BCL or MBCL followed by +items")]
    Unknown(String),
    #[error("unknown item `{item}` in logic `{logic}`")]
    Item { logic: String, item: String },
    #[error("`{item}` needs the modal base MBCL")]
    NeedsModal { item: String },
    #[error("gcun:{0},{1},{2},{3} needs k <= m and l <= n")]
    GcunOrder(usize, usize, usize, usize),
    #[error("the gcun calculus needs even k and l, got gcun:{0},{1},{2},{3}")]
    GcunParity(usize, usize, usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Demodal {
    Right,
    Left,
    Both,
}

impl Demodal {
    pub fn name(self) -> &'static str {
        match self {
            Demodal::Right => "CUDR",
            Demodal::Left => "CUDL",
            Demodal::Both => "CUDE",
        }
    }
}

/// Modal axiom packages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Package {
    D1,
    D2,
    K,
    T,
    D,
    B,
    Four,
    Five,
}

impl Package {
    pub const ALL: [Package; 8] = [
        Package::D1,
        Package::D2,
        Package::K,
        Package::T,
        Package::D,
        Package::B,
        Package::Four,
        Package::Five,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Package::D1 => "D1",
            Package::D2 => "D2",
            Package::K => "K",
            Package::T => "T",
            Package::D => "D",
            Package::B => "B",
            Package::Four => "4",
            Package::Five => "5",
        }
    }

    pub fn laws(self) -> &'static [ModalLaw] {
        match self {
            Package::D1 => &[ModalLaw::D1],
            Package::D2 => &[ModalLaw::D2],
            Package::K => &[ModalLaw::K1, ModalLaw::K2],
            Package::T => &[ModalLaw::T],
            Package::D => &[ModalLaw::D],
            Package::B => &[ModalLaw::B],
            Package::Four => &[ModalLaw::Iv],
            Package::Five => &[ModalLaw::V],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Logic {
    pub modal: bool,
    pub cun: bool,
    pub gcun: Option<[usize; 4]>,
    pub demodal: Option<Demodal>,
    pub packages: BTreeSet<Package>,
}

impl Logic {
    pub fn parse(text: &str) -> Result<Logic, LogicError> {
        let text = text.trim();
        let mut items = text.split('+').map(str::trim);
        let mut logic = Logic {
            modal: match items.next() {
                Some("BCL") => false,
                Some("MBCL") => true,
                _ => return Err(LogicError::Unknown(text.to_string())),
            },
            ..Logic::default()
        };
        let bad = |item: &str| LogicError::Item {
            logic: text.to_string(),
            item: item.to_string(),
        };
        for item in items {
            if let Some(params) = item.strip_prefix("gcun:") {
                let nums: Vec<usize> = params
                    .split(',')
                    .map(|t| t.trim().parse().map_err(|_| bad(item)))
                    .collect::<Result<_, _>>()?;
                let [k, l, m, n] = nums[..] else { return Err(bad(item)) };
                if k > m || l > n {
                    return Err(LogicError::GcunOrder(k, l, m, n));
                }
                logic.gcun = Some([k, l, m, n]);
                continue;
            }
            match item {
                "cun" => logic.cun = true,
                "CUDR" => logic.demodal = Some(Demodal::Right),
                "CUDL" => logic.demodal = Some(Demodal::Left),
                "CUDE" => logic.demodal = Some(Demodal::Both),
                _ => {
                    for name in item.split(',').map(str::trim) {
                        let p = Package::ALL
                            .into_iter()
                            .find(|p| p.name() == name)
                            .ok_or_else(|| bad(name))?;
                        logic.packages.insert(p);
                    }
                }
            }
            if !logic.modal && (logic.demodal.is_some() || !logic.packages.is_empty()) {
                return Err(LogicError::NeedsModal {
                    item: item.to_string(),
                });
            }
        }
        Ok(logic)
    }

    /// Semantic side: the conditions on relating relations and frames.
    pub fn conditions(&self) -> ConditionSet {
        let mut set = ConditionSet::bcl();
        if self.cun || self.gcun.is_some() {
            set.insert(Condition::Cun);
        }
        if let Some([k, l, m, n]) = self.gcun {
            set.insert(Condition::Gcun { k, l, m, n });
        }
        match self.demodal {
            Some(Demodal::Right) => set.insert(Condition::DemR),
            Some(Demodal::Left) => set.insert(Condition::DemL),
            Some(Demodal::Both) => set.insert(Condition::DemE),
            None => {}
        }
        for p in &self.packages {
            for &law in p.laws() {
                set.insert(Condition::law(law));
            }
        }
        set
    }

    /// Proof side: axiom schemata and rules.
    pub fn calculus(&self) -> Result<Calculus, LogicError> {
        let mut schemata: Vec<Schema> = ["A1", "A2", "B1", "B2", "Imp"]
            .iter()
            .map(|n| Schema::named(n).expect("base schema"))
            .collect();
        let mut add = |name: &str| schemata.push(Schema::named(name).expect("registered schema"));
        if self.modal {
            add("Dual");
            add("K⊃");
        }
        if self.cun || self.gcun.is_some() {
            add("CUN1");
            add("CUN2");
        }
        if let Some(d) = self.demodal {
            add(d.name());
        }
        for p in &self.packages {
            add(p.name());
        }
        if let Some([k, l, m, n]) = self.gcun {
            if k % 2 == 1 || l % 2 == 1 {
                return Err(LogicError::GcunParity(k, l, m, n));
            }
            schemata.push(Schema::gcun(k, l, m, n));
            schemata.push(Schema::gcun2(k, l, m, n));
        }
        Ok(Calculus::new(self.to_string(), schemata, self.modal))
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.modal { "MBCL" } else { "BCL" })?;
        if self.cun {
            f.write_str("+cun")?;
        }
        if let Some([k, l, m, n]) = self.gcun {
            write!(f, "+gcun:{k},{l},{m},{n}")?;
        }
        if let Some(d) = self.demodal {
            write!(f, "+{}", d.name())?;
        }
        if !self.packages.is_empty() {
            let names: Vec<&str> = self.packages.iter().map(|p| p.name()).collect();
            write!(f, "+{}", names.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Logic {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Logic, LogicError> {
        Logic::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn schema_names(name: &str) -> Vec<String> {
        let calc = Logic::parse(name).unwrap().calculus().unwrap();
        calc.schemata().iter().map(|s| s.name().to_string()).collect()
    }

    #[test]
    fn registry_calculi() {
        assert_eq!(schema_names("BCL"), ["A1", "A2", "B1", "B2", "Imp"]);
        assert_eq!(schema_names("BCL+cun"), ["A1", "A2", "B1", "B2", "Imp", "CUN1", "CUN2"]);
        assert_eq!(
            schema_names("MBCL+CUDL"),
            ["A1", "A2", "B1", "B2", "Imp", "Dual", "K⊃", "CUDL"]
        );
        assert!(schema_names("MBCL+K,T,4").ends_with(&["K".into(), "T".into(), "4".into()]));
    }

    #[test]
    fn registry_conditions() {
        let c = Logic::parse("MBCL+K,T").unwrap().conditions();
        assert_eq!(c.to_string(), ConditionSet::parse("a1,a2,b0,b1,b2,k1,k2,t").unwrap().to_string());
        let g = Logic::parse("BCL+gcun:0,1,0,2").unwrap();
        assert!(g.conditions().contains(Condition::Gcun { k: 0, l: 1, m: 0, n: 2 }));
        assert_eq!(g.calculus().unwrap_err(), LogicError::GcunParity(0, 1, 0, 2));
    }

    #[test]
    fn names_round_trip() {
        for name in ["BCL", "BCL+cun", "BCL+gcun:0,0,2,2", "MBCL+CUDE", "MBCL+D1,K,5", "MBCL+gcun:2,0,2,2"] {
            assert_eq!(Logic::parse(name).unwrap().to_string(), name);
        }
    }

    #[test]
    fn rejects_bad_names() {
        assert!(matches!(Logic::parse("KT"), Err(LogicError::Unknown(_))));
        assert!(matches!(Logic::parse("BCL+T"), Err(LogicError::NeedsModal { .. })));
        assert!(matches!(Logic::parse("MBCL+Q"), Err(LogicError::Item { .. })));
        assert!(matches!(Logic::parse("BCL+gcun:2,0,1,1"), Err(LogicError::GcunOrder(..))));
    }
}
