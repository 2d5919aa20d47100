use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cohomology_ring::{zcl, RingSpec, ZclBudget};
use crate::error::{Error, Result};

use super::interval::Interval;
use super::quantity::{Group, Quantity, Space};

/// Boolean hypotheses. Those the crate cannot verify (normality, cofibrations, group
/// structure) only ever enter as user assertions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Predicate {
    /// Every fixed set `Y^H`, `H ≤ G` closed, is path-connected.
    GConnected { space: Space, group: Group },
    FixedSetNonempty { space: Space, group: Group },
    Free { space: Space, group: Group },
    OneOrbitType { space: Space, group: Group },
    /// Some closed subgroup has a nonempty, disconnected fixed set.
    NonemptyDisconnectedFixedSet { space: Space, group: Group },
    CompletelyNormal { space: Space },
    /// The saturated diagonal of `Y^n` is a `G^n`-cofibration for every `n`.
    DiagonalCofibration { space: Space, group: Group },
    ActsByHomomorphisms { space: Space, group: Group },
    TopologicalGroup { space: Space },
    /// `G` is a connected paracompact Hausdorff group (acting freely on itself).
    GroupConnected { group: Group },
    Subgroup { sub: Group, of: Group },
    /// `Y^H` is invariant under `K`.
    InvariantFixedSet { space: Space, fixed_by: Group, group: Group },
}

/// Numeric facts emitted by the computational modules.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Datum {
    MinimalOrbitClasses { space: Space, group: Group, count: u64 },
    MaximalSimplices { space: Space, group: Group, count: u64 },
    /// Zero-divisor cup length of `H^*(space)` for the `n`-fold product.
    Zcl { space: Space, n: usize, value: u64 },
    /// `Σ (k_ij + 1)` for a moment-angle complex.
    KSum { space: Space, group: Group, value: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Judgment {
    Bound { quantity: Quantity, interval: Interval },
    Flag { predicate: Predicate, holds: bool },
    Datum(Datum),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    User,
    Module(String),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::User => f.write_str("user"),
            Source::Module(m) => write!(f, "module:{m}"),
        }
    }
}

impl Source {
    fn parse(text: &str) -> Result<Self> {
        match text {
            "user" => Ok(Source::User),
            _ => match text.strip_prefix("module:") {
                Some(m) if !m.is_empty() => Ok(Source::Module(m.to_string())),
                _ => Err(Error::Bounds(format!("unknown fact source '{text}'"))),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub judgment: Judgment,
    pub citation: String,
    pub source: Source,
}

impl Fact {
    pub fn user(judgment: Judgment, citation: &str) -> Self {
        Fact {
            judgment,
            citation: citation.to_string(),
            source: Source::User,
        }
    }

    pub fn module(module: &str, judgment: Judgment, citation: &str) -> Self {
        Fact {
            judgment,
            citation: citation.to_string(),
            source: Source::Module(module.to_string()),
        }
    }

    pub fn bound(quantity: Quantity, interval: Interval, citation: &str) -> Self {
        Fact::user(Judgment::Bound { quantity, interval }, citation)
    }

    pub fn flag(predicate: Predicate, citation: &str) -> Self {
        Fact::user(Judgment::Flag { predicate, holds: true }, citation)
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::GConnected { space, group } => write!(f, "{space} is {group}-connected"),
            Predicate::FixedSetNonempty { space, group } => write!(f, "fix({space},{group}) is nonempty"),
            Predicate::Free { space, group } => write!(f, "{group} acts freely on {space}"),
            Predicate::OneOrbitType { space, group } => write!(f, "{space} has one {group}-orbit type"),
            Predicate::NonemptyDisconnectedFixedSet { space, group } => {
                write!(f, "some subgroup of {group} has a nonempty disconnected fixed set in {space}")
            }
            Predicate::CompletelyNormal { space } => write!(f, "{space} is completely normal"),
            Predicate::DiagonalCofibration { space, group } => {
                write!(f, "the saturated diagonal of {space}^n is a {group}^n-cofibration")
            }
            Predicate::ActsByHomomorphisms { space, group } => {
                write!(f, "{group} acts on {space} by group homomorphisms")
            }
            Predicate::TopologicalGroup { space } => write!(f, "{space} is a topological group"),
            Predicate::GroupConnected { group } => write!(f, "{group} is a connected group acting freely on itself"),
            Predicate::Subgroup { sub, of } => write!(f, "{sub} is a closed subgroup of {of}"),
            Predicate::InvariantFixedSet { space, fixed_by, group } => {
                write!(f, "fix({space},{fixed_by}) is {group}-invariant")
            }
        }
    }
}

impl fmt::Display for Datum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Datum::MinimalOrbitClasses { space, group, count } => {
                write!(f, "{space} has {count} minimal {group}-orbit classes")
            }
            Datum::MaximalSimplices { space, group, count } => {
                write!(f, "{space} ({group}) comes from {count} maximal simplices")
            }
            Datum::Zcl { space, n, value } => write!(f, "zcl_{n}(H^*({space})) = {value}"),
            Datum::KSum { space, group, value } => write!(f, "sum(k_ij + 1) = {value} for {space} ({group})"),
        }
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Judgment::Bound { quantity, interval } => write!(f, "{quantity} in {interval}"),
            Judgment::Flag { predicate, holds: true } => write!(f, "{predicate}"),
            Judgment::Flag { predicate, holds: false } => write!(f, "not: {predicate}"),
            Judgment::Datum(d) => write!(f, "{d}"),
        }
    }
}

/// One entry of a facts file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactEntry {
    pub kind: String,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<Interval>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<bool>,
    #[serde(default)]
    pub citation: String,
    #[serde(default = "default_source")]
    pub source: String,
}

fn default_source() -> String {
    "user".into()
}

struct Params<'a> {
    kind: &'a str,
    map: &'a BTreeMap<String, Value>,
}

impl Params<'_> {
    fn raw(&self, key: &str) -> Result<&Value> {
        self.map
            .get(key)
            .ok_or_else(|| Error::Bounds(format!("'{}' fact needs parameter '{key}'", self.kind)))
    }

    fn text(&self, key: &str) -> Result<&str> {
        self.raw(key)?
            .as_str()
            .ok_or_else(|| Error::Bounds(format!("parameter '{key}' of '{}' must be a string", self.kind)))
    }

    fn int(&self, key: &str) -> Result<u64> {
        self.raw(key)?
            .as_u64()
            .ok_or_else(|| Error::Bounds(format!("parameter '{key}' of '{}' must be a non-negative integer", self.kind)))
    }

    fn space(&self, key: &str) -> Result<Space> {
        self.text(key)?.parse()
    }

    fn group(&self, key: &str) -> Result<Group> {
        self.text(key)?.parse()
    }
}

const FLAG_KINDS: &[&str] = &[
    "g_connected",
    "fixed_set_nonempty",
    "free",
    "one_orbit_type",
    "nonempty_disconnected_fixed_set",
    "completely_normal",
    "diagonal_cofibration",
    "acts_by_homomorphisms",
    "topological_group",
    "group_connected",
    "subgroup",
    "invariant_fixed_set",
];

fn predicate(kind: &str, p: &Params) -> Result<Predicate> {
    let sg = || -> Result<(Space, Group)> { Ok((p.space("space")?, p.group("group")?)) };
    Ok(match kind {
        "g_connected" => {
            let (space, group) = sg()?;
            Predicate::GConnected { space, group }
        }
        "fixed_set_nonempty" => {
            let (space, group) = sg()?;
            Predicate::FixedSetNonempty { space, group }
        }
        "free" => {
            let (space, group) = sg()?;
            Predicate::Free { space, group }
        }
        "one_orbit_type" => {
            let (space, group) = sg()?;
            Predicate::OneOrbitType { space, group }
        }
        "nonempty_disconnected_fixed_set" => {
            let (space, group) = sg()?;
            Predicate::NonemptyDisconnectedFixedSet { space, group }
        }
        "completely_normal" => Predicate::CompletelyNormal { space: p.space("space")? },
        "diagonal_cofibration" => {
            let (space, group) = sg()?;
            Predicate::DiagonalCofibration { space, group }
        }
        "acts_by_homomorphisms" => {
            let (space, group) = sg()?;
            Predicate::ActsByHomomorphisms { space, group }
        }
        "topological_group" => Predicate::TopologicalGroup { space: p.space("space")? },
        "group_connected" => Predicate::GroupConnected { group: p.group("group")? },
        "subgroup" => Predicate::Subgroup {
            sub: p.group("sub")?,
            of: p.group("of")?,
        },
        "invariant_fixed_set" => Predicate::InvariantFixedSet {
            space: p.space("space")?,
            fixed_by: p.group("fixed_by")?,
            group: p.group("group")?,
        },
        _ => unreachable!("checked against FLAG_KINDS"),
    })
}

fn positive(kind: &str, v: u64) -> Result<u64> {
    if v == 0 && kind != "zcl" {
        Err(Error::Bounds(format!("'{kind}' needs a positive value")))
    } else {
        Ok(v)
    }
}

impl FactEntry {
    /// Reads the entry; `cohomology_ring` entries expand into one zcl fact per
    /// `n = 2..=max_n` that fits the budget.
    pub fn into_facts(&self, max_n: usize, budget: &ZclBudget) -> Result<Vec<Fact>> {
        let source = Source::parse(&self.source)?;
        let kind = self.kind.as_str();
        let p = Params { kind, map: &self.params };
        let wrap = |judgment: Judgment| Fact {
            judgment,
            citation: self.citation.clone(),
            source: source.clone(),
        };
        let judgment = match kind {
            "bound" => {
                let interval = self
                    .interval
                    .ok_or_else(|| Error::Bounds("'bound' fact needs an interval".into()))?;
                Judgment::Bound {
                    quantity: p.text("quantity")?.parse()?,
                    interval,
                }
            }
            k if FLAG_KINDS.contains(&k) => Judgment::Flag {
                predicate: predicate(k, &p)?,
                holds: self.flag.unwrap_or(true),
            },
            "minimal_orbit_classes" => Judgment::Datum(Datum::MinimalOrbitClasses {
                space: p.space("space")?,
                group: p.group("group")?,
                count: positive(kind, p.int("count")?)?,
            }),
            "maximal_simplices" => Judgment::Datum(Datum::MaximalSimplices {
                space: p.space("space")?,
                group: p.group("group")?,
                count: positive(kind, p.int("count")?)?,
            }),
            "zcl" => Judgment::Datum(Datum::Zcl {
                space: p.space("space")?,
                n: p.int("n")? as usize,
                value: p.int("value")?,
            }),
            "k_sum" => Judgment::Datum(Datum::KSum {
                space: p.space("space")?,
                group: p.group("group")?,
                value: positive(kind, p.int("value")?)?,
            }),
            "cohomology_ring" => {
                let space = p.space("space")?;
                let spec: RingSpec = serde_json::from_value(p.raw("ring")?.clone())?;
                let ring = spec.build()?;
                let top = self.params.get("max_n").and_then(Value::as_u64).map_or(max_n, |v| v as usize);
                let mut out = Vec::new();
                for n in 2..=top {
                    match zcl(&ring, n, budget) {
                        Ok(value) => out.push(Fact {
                            judgment: Judgment::Datum(Datum::Zcl {
                                space: space.clone(),
                                n,
                                value: value as u64,
                            }),
                            citation: format!("zero-divisor cup length computed from the given ring of {space}"),
                            source: Source::Module("cohomology_ring".into()),
                        }),
                        Err(e) if e.is_budget() => break,
                        Err(e) => return Err(e),
                    }
                }
                return Ok(out);
            }
            other => return Err(Error::Bounds(format!("unknown fact kind '{other}'"))),
        };
        if let Judgment::Datum(Datum::Zcl { n, .. }) = &judgment {
            if *n < 2 {
                return Err(Error::Bounds("'zcl' needs n >= 2".into()));
            }
        }
        Ok(vec![wrap(judgment)])
    }

    pub fn from_fact(fact: &Fact) -> Self {
        let mut params = BTreeMap::new();
        let mut put = |k: &str, v: Value| {
            params.insert(k.to_string(), v);
        };
        let s = |x: &dyn fmt::Display| Value::String(x.to_string());
        let (kind, interval, flag) = match &fact.judgment {
            Judgment::Bound { quantity, interval } => {
                put("quantity", s(quantity));
                ("bound", Some(*interval), None)
            }
            Judgment::Flag { predicate, holds } => {
                let kind = match predicate {
                    Predicate::GConnected { space, group } => {
                        put("space", s(space));
                        put("group", s(group));
                        "g_connected"
                    }
                    Predicate::FixedSetNonempty { space, group } => {
                        put("space", s(space));
                        put("group", s(group));
                        "fixed_set_nonempty"
                    }
                    Predicate::Free { space, group } => {
                        put("space", s(space));
                        put("group", s(group));
                        "free"
                    }
                    Predicate::OneOrbitType { space, group } => {
                        put("space", s(space));
                        put("group", s(group));
                        "one_orbit_type"
                    }
                    Predicate::NonemptyDisconnectedFixedSet { space, group } => {
                        put("space", s(space));
                        put("group", s(group));
                        "nonempty_disconnected_fixed_set"
                    }
                    Predicate::CompletelyNormal { space } => {
                        put("space", s(space));
                        "completely_normal"
                    }
                    Predicate::DiagonalCofibration { space, group } => {
                        put("space", s(space));
                        put("group", s(group));
                        "diagonal_cofibration"
                    }
                    Predicate::ActsByHomomorphisms { space, group } => {
                        put("space", s(space));
                        put("group", s(group));
                        "acts_by_homomorphisms"
                    }
                    Predicate::TopologicalGroup { space } => {
                        put("space", s(space));
                        "topological_group"
                    }
                    Predicate::GroupConnected { group } => {
                        put("group", s(group));
                        "group_connected"
                    }
                    Predicate::Subgroup { sub, of } => {
                        put("sub", s(sub));
                        put("of", s(of));
                        "subgroup"
                    }
                    Predicate::InvariantFixedSet { space, fixed_by, group } => {
                        put("space", s(space));
                        put("fixed_by", s(fixed_by));
                        put("group", s(group));
                        "invariant_fixed_set"
                    }
                };
                (kind, None, Some(*holds))
            }
            Judgment::Datum(d) => {
                let kind = match d {
                    Datum::MinimalOrbitClasses { space, group, count } => {
                        put("space", s(space));
                        put("group", s(group));
                        put("count", Value::from(*count));
                        "minimal_orbit_classes"
                    }
                    Datum::MaximalSimplices { space, group, count } => {
                        put("space", s(space));
                        put("group", s(group));
                        put("count", Value::from(*count));
                        "maximal_simplices"
                    }
                    Datum::Zcl { space, n, value } => {
                        put("space", s(space));
                        put("n", Value::from(*n));
                        put("value", Value::from(*value));
                        "zcl"
                    }
                    Datum::KSum { space, group, value } => {
                        put("space", s(space));
                        put("group", s(group));
                        put("value", Value::from(*value));
                        "k_sum"
                    }
                };
                (kind, None, None)
            }
        };
        FactEntry {
            kind: kind.to_string(),
            params,
            interval,
            flag,
            citation: fact.citation.clone(),
            source: fact.source.to_string(),
        }
    }
}

/// Parses a facts file (a JSON list of entries).
pub fn load_facts(json: &str, max_n: usize, budget: &ZclBudget) -> Result<Vec<Fact>> {
    let entries: Vec<FactEntry> = serde_json::from_str(json)?;
    let mut out = Vec::new();
    for e in &entries {
        out.extend(e.into_facts(max_n, budget)?);
    }
    Ok(out)
}

pub fn facts_to_json(facts: &[Fact]) -> Result<String> {
    let entries: Vec<FactEntry> = facts.iter().map(FactEntry::from_fact).collect();
    Ok(serde_json::to_string_pretty(&entries)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::interval::Ext;

    #[test]
    fn parses_each_shape() {
        let json = r#"[
            {"kind": "bound", "params": {"quantity": "cat_{S1}(S3)"}, "interval": [2, 2], "citation": "two caps"},
            {"kind": "g_connected", "params": {"space": "S3", "group": "S1"}, "flag": true},
            {"kind": "subgroup", "params": {"sub": "Z2", "of": "S1"}},
            {"kind": "zcl", "params": {"space": "S3", "n": 2, "value": 1}, "source": "module:cohomology_ring"},
            {"kind": "cohomology_ring", "params": {"space": "S3", "ring": {"exterior": [{"name": "a", "degree": 3}]}}}
        ]"#;
        let facts = load_facts(json, 5, &ZclBudget::default()).unwrap();
        assert_eq!(facts.len(), 4 + 4);
        assert_eq!(
            facts[0].judgment,
            Judgment::Bound {
                quantity: "cat_{S1}(S3)".parse().unwrap(),
                interval: Interval::exact(2)
            }
        );
        assert_eq!(facts[3].source, Source::Module("cohomology_ring".into()));
        let zcls: Vec<u64> = facts[4..]
            .iter()
            .map(|f| match &f.judgment {
                Judgment::Datum(Datum::Zcl { value, .. }) => *value,
                _ => panic!(),
            })
            .collect();
        assert_eq!(zcls, vec![1, 2, 3, 4]);
    }

    #[test]
    fn round_trip() {
        let facts = vec![
            Fact::bound("TC_{2}(S1)".parse().unwrap(), Interval::new(Ext::Fin(2), Ext::Inf).unwrap(), "c"),
            Fact::flag(
                Predicate::InvariantFixedSet {
                    space: Space::named("Y"),
                    fixed_by: Group::named("H"),
                    group: Group::named("K"),
                },
                "",
            ),
            Fact::module(
                "orbit",
                Judgment::Datum(Datum::MinimalOrbitClasses {
                    space: Space::named("X"),
                    group: Group::named("G"),
                    count: 2,
                }),
                "computed",
            ),
        ];
        let json = facts_to_json(&facts).unwrap();
        assert_eq!(load_facts(&json, 5, &ZclBudget::default()).unwrap(), facts);
    }

    #[test]
    fn errors() {
        let bad = [
            r#"[{"kind": "nope"}]"#,
            r#"[{"kind": "bound", "params": {"quantity": "cat(X)"}}]"#,
            r#"[{"kind": "g_connected", "params": {"space": "X"}}]"#,
            r#"[{"kind": "zcl", "params": {"space": "X", "n": 1, "value": 0}}]"#,
            r#"[{"kind": "free", "params": {"space": "X", "group": "G"}, "source": "robot"}]"#,
        ];
        for json in bad {
            assert!(load_facts(json, 5, &ZclBudget::default()).is_err(), "{json}");
        }
    }
}
