use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::rc::Rc;

use serde::Serialize;

use super::facts::{Datum, Fact, Judgment, Predicate};
use super::interval::{cap_hi, cap_lo, Ext, Interval};
use super::quantity::{Group, Quantity, Space};
use super::rules::{self, RuleId};

pub const DEFAULT_CEILING: u64 = 64;
pub const DEFAULT_MAX_N: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    /// Finite values above this become `∞` (upper) or the ceiling itself (lower).
    pub ceiling: u64,
    /// TC-type quantities are instantiated for `n = 2..=max_n` (and any `n` named in a fact).
    pub max_n: usize,
    /// Enables the sharpened zero-divisor bound `zcl + 1 ≤ TC_n`.
    pub sharp_zcl: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            ceiling: DEFAULT_CEILING,
            max_n: DEFAULT_MAX_N,
            sharp_zcl: false,
        }
    }
}

/// Proof tree for one side of an interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum Derivation {
    Fact {
        id: usize,
        statement: String,
        citation: String,
        source: String,
    },
    Rule {
        rule: RuleId,
        conclusion: String,
        premises: Vec<Rc<Derivation>>,
    },
    NoInformation,
}

impl Derivation {
    /// Short label: `fact #k` or the rule id.
    pub fn label(&self) -> String {
        match self {
            Derivation::Fact { id, .. } => format!("fact #{id}"),
            Derivation::Rule { rule, .. } => rule.to_string(),
            Derivation::NoInformation => "no information".into(),
        }
    }

    /// `R4 <- [fact #1, R17]`.
    pub fn summary(&self) -> String {
        match self {
            Derivation::Rule { rule, premises, .. } => format!(
                "{rule} <- [{}]",
                premises.iter().map(|p| p.label()).collect::<Vec<_>>().join(", ")
            ),
            other => other.label(),
        }
    }

    pub fn render(&self, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match self {
            Derivation::Fact {
                id,
                statement,
                citation,
                source,
            } => {
                let _ = write!(out, "{pad}fact #{id} ({source}): {statement}");
                if !citation.is_empty() {
                    let _ = write!(out, " -- {citation}");
                }
                out.push('\n');
            }
            Derivation::Rule {
                rule,
                conclusion,
                premises,
            } => {
                let _ = writeln!(out, "{pad}{rule}: {conclusion}");
                for p in premises {
                    p.render(indent + 1, out);
                }
            }
            Derivation::NoInformation => {
                let _ = writeln!(out, "{pad}no information");
            }
        }
    }

    /// Rules used anywhere in the tree.
    pub fn rules(&self) -> BTreeSet<RuleId> {
        let mut out = BTreeSet::new();
        self.collect_rules(&mut out);
        out
    }

    fn collect_rules(&self, out: &mut BTreeSet<RuleId>) {
        if let Derivation::Rule { rule, premises, .. } = self {
            out.insert(*rule);
            for p in premises {
                p.collect_rules(out);
            }
        }
    }
}

#[derive(Clone, Debug)]
pub(super) struct Entry {
    pub interval: Interval,
    pub lo: Rc<Derivation>,
    pub hi: Rc<Derivation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(super) enum Side {
    Lo,
    Hi,
}

#[derive(Clone, Debug)]
pub(super) struct Update {
    pub quantity: Quantity,
    pub side: Side,
    pub value: Ext,
    pub why: Rc<Derivation>,
}

/// Both sides of a quantity's interval with their derivations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Explanation {
    pub quantity: Quantity,
    pub interval: Interval,
    pub lo: Rc<Derivation>,
    pub hi: Rc<Derivation>,
}

impl Explanation {
    pub fn to_text(&self) -> String {
        let mut out = format!("{} in {}\n", self.quantity, self.interval);
        let _ = writeln!(out, "lower bound {}:", self.interval.lo);
        self.lo.render(1, &mut out);
        let _ = writeln!(out, "upper bound {}:", self.interval.hi);
        self.hi.render(1, &mut out);
        out
    }
}

/// A quantity whose lower bound exceeds its upper bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inconsistency {
    pub quantity: Quantity,
    pub interval: Interval,
    pub lo: Rc<Derivation>,
    pub hi: Rc<Derivation>,
}

/// A fact base plus the intervals derived from it.
#[derive(Clone, Debug)]
pub struct Session {
    config: EngineConfig,
    facts: Vec<Fact>,
    flags: HashMap<Predicate, usize>,
    bounds: BTreeMap<Quantity, Entry>,
    queries: Vec<Quantity>,
}

impl Session {
    pub fn new(config: EngineConfig) -> Self {
        Session {
            config,
            facts: Vec::new(),
            flags: HashMap::new(),
            bounds: BTreeMap::new(),
            queries: Vec::new(),
        }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    /// Records a fact without inferring anything. Returns its id.
    pub fn assert_fact(&mut self, fact: Fact) -> usize {
        let id = self.facts.len();
        match &fact.judgment {
            Judgment::Bound { quantity, interval } => {
                let leaf = Rc::new(self.fact_leaf_for(id, &fact));
                let capped = interval.capped(self.config.ceiling);
                let q = quantity.clone();
                self.apply(Update {
                    quantity: q.clone(),
                    side: Side::Lo,
                    value: capped.lo,
                    why: leaf.clone(),
                });
                self.apply(Update {
                    quantity: q,
                    side: Side::Hi,
                    value: capped.hi,
                    why: leaf,
                });
            }
            Judgment::Flag { predicate, holds: true } => {
                self.flags.entry(predicate.clone()).or_insert(id);
            }
            _ => {}
        }
        self.facts.push(fact);
        id
    }

    pub fn assert_all(&mut self, facts: impl IntoIterator<Item = Fact>) {
        for f in facts {
            self.assert_fact(f);
        }
    }

    /// Marks a quantity for the report even if nothing is known about it.
    pub fn query(&mut self, q: Quantity) {
        if !self.queries.contains(&q) {
            self.queries.push(q);
        }
    }

    pub fn queries(&self) -> &[Quantity] {
        &self.queries
    }

    fn fact_leaf_for(&self, id: usize, fact: &Fact) -> Derivation {
        Derivation::Fact {
            id,
            statement: fact.judgment.to_string(),
            citation: fact.citation.clone(),
            source: fact.source.to_string(),
        }
    }

    pub(super) fn fact_leaf(&self, id: usize) -> Rc<Derivation> {
        Rc::new(self.fact_leaf_for(id, &self.facts[id]))
    }

    /// Id of an asserted (true) flag.
    pub(super) fn flag(&self, p: &Predicate) -> Option<usize> {
        self.flags.get(p).copied()
    }

    pub(super) fn true_flags(&self) -> impl Iterator<Item = (&Predicate, usize)> {
        let mut v: Vec<(&Predicate, usize)> = self.flags.iter().map(|(p, &i)| (p, i)).collect();
        v.sort_by_key(|&(_, i)| i);
        v.into_iter()
    }

    pub(super) fn data(&self) -> impl Iterator<Item = (&Datum, usize)> {
        self.facts.iter().enumerate().filter_map(|(i, f)| match &f.judgment {
            Judgment::Datum(d) => Some((d, i)),
            _ => None,
        })
    }

    pub(super) fn bound_keys(&self) -> impl Iterator<Item = &Quantity> {
        self.bounds.keys()
    }

    /// `(space, group)` pairs with a nontrivial group mentioned by any fact.
    pub(super) fn contexts(&self) -> BTreeSet<(Space, Group)> {
        let mut out = BTreeSet::new();
        let mut add = |s: &Space, g: &Group| {
            if !g.is_trivial() {
                out.insert((s.clone(), g.clone()));
            }
        };
        for f in &self.facts {
            match &f.judgment {
                Judgment::Bound { quantity, .. } => {
                    if let Quantity::CatG { group, space } | Quantity::TcG { group, space, .. } | Quantity::TcInv { group, space, .. } = quantity {
                        add(space, group);
                    }
                }
                Judgment::Flag { predicate, .. } => match predicate {
                    Predicate::GConnected { space, group }
                    | Predicate::FixedSetNonempty { space, group }
                    | Predicate::Free { space, group }
                    | Predicate::OneOrbitType { space, group }
                    | Predicate::NonemptyDisconnectedFixedSet { space, group }
                    | Predicate::DiagonalCofibration { space, group }
                    | Predicate::ActsByHomomorphisms { space, group } => add(space, group),
                    _ => {}
                },
                Judgment::Datum(d) => match d {
                    Datum::MinimalOrbitClasses { space, group, .. }
                    | Datum::MaximalSimplices { space, group, .. }
                    | Datum::KSum { space, group, .. } => add(space, group),
                    Datum::Zcl { .. } => {}
                },
            }
        }
        out
    }

    /// `2..=max_n` together with every `n` named by a fact.
    pub(super) fn ns(&self) -> Vec<usize> {
        let mut set: BTreeSet<usize> = (2..=self.config.max_n.max(2)).collect();
        for f in &self.facts {
            match &f.judgment {
                Judgment::Bound { quantity, .. } => set.extend(quantity.n()),
                Judgment::Datum(Datum::Zcl { n, .. }) => {
                    set.insert(*n);
                }
                _ => {}
            }
        }
        set.into_iter().collect()
    }

    pub fn interval(&self, q: &Quantity) -> Interval {
        self.bounds.get(q).map_or(Interval::UNKNOWN, |e| e.interval)
    }

    pub(super) fn lo(&self, q: &Quantity) -> Ext {
        self.interval(q).lo
    }

    pub(super) fn hi(&self, q: &Quantity) -> Ext {
        self.interval(q).hi
    }

    pub(super) fn lo_why(&self, q: &Quantity) -> Rc<Derivation> {
        self.bounds.get(q).map_or_else(|| Rc::new(Derivation::NoInformation), |e| e.lo.clone())
    }

    pub(super) fn hi_why(&self, q: &Quantity) -> Rc<Derivation> {
        self.bounds.get(q).map_or_else(|| Rc::new(Derivation::NoInformation), |e| e.hi.clone())
    }

    /// Meets one side; returns whether the interval changed.
    pub(super) fn apply(&mut self, u: Update) -> bool {
        let d = self.config.ceiling;
        let entry = self.bounds.entry(u.quantity).or_insert_with(|| Entry {
            interval: Interval::UNKNOWN,
            lo: Rc::new(Derivation::NoInformation),
            hi: Rc::new(Derivation::NoInformation),
        });
        match u.side {
            Side::Lo => {
                let v = cap_lo(u.value, d);
                if v > entry.interval.lo {
                    entry.interval.lo = v;
                    entry.lo = u.why;
                    return true;
                }
            }
            Side::Hi => {
                let v = cap_hi(u.value, d);
                if v < entry.interval.hi {
                    entry.interval.hi = v;
                    entry.hi = u.why;
                    return true;
                }
            }
        }
        false
    }

    /// Applies every rule to a fixpoint in the standard order.
    pub fn saturate(&mut self) {
        self.saturate_with_order(&RuleId::ALL);
    }

    /// Applies the rules round by round in the given order until nothing changes.
    /// The final intervals do not depend on the order.
    pub fn saturate_with_order(&mut self, order: &[RuleId]) {
        loop {
            let mut changed = false;
            for &rule in order {
                for u in rules::fire(self, rule) {
                    changed |= self.apply(u);
                }
            }
            if !changed {
                break;
            }
        }
    }

    pub fn explain(&self, q: &Quantity) -> Explanation {
        Explanation {
            quantity: q.clone(),
            interval: self.interval(q),
            lo: self.lo_why(q),
            hi: self.hi_why(q),
        }
    }

    /// Quantities with a known bound, in canonical order.
    pub fn known(&self) -> impl Iterator<Item = (&Quantity, Interval)> {
        self.bounds
            .iter()
            .filter(|(_, e)| !e.interval.is_unknown())
            .map(|(q, e)| (q, e.interval))
    }

    pub fn inconsistencies(&self) -> Vec<Inconsistency> {
        self.bounds
            .iter()
            .filter(|(_, e)| !e.interval.is_consistent())
            .map(|(q, e)| Inconsistency {
                quantity: q.clone(),
                interval: e.interval,
                lo: e.lo.clone(),
                hi: e.hi.clone(),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Fact;

    fn q(text: &str) -> Quantity {
        text.parse().unwrap()
    }

    fn s1_on_s3(sharp: bool) -> Session {
        let (x, g) = (Space::named("S3"), Group::named("S1"));
        let mut s = Session::new(EngineConfig {
            sharp_zcl: sharp,
            ..EngineConfig::default()
        });
        s.assert_fact(Fact::bound(q("cat_{S1}(S3)"), Interval::exact(2), "cat of S3 under S1"));
        s.assert_fact(Fact::flag(Predicate::GConnected { space: x.clone(), group: g.clone() }, "S1-connected"));
        s.assert_fact(Fact::flag(Predicate::FixedSetNonempty { space: x.clone(), group: g }, "fixed points"));
        for n in 2..=5 {
            // zcl(H^*(S^3), n) = n - 1
            s.assert_fact(Fact::module(
                "cohomology_ring",
                Judgment::Datum(Datum::Zcl { space: x.clone(), n, value: n as u64 - 1 }),
                "",
            ));
        }
        s.saturate();
        s
    }

    #[test]
    fn circle_on_three_sphere() {
        let s = s1_on_s3(true);
        for n in 2..=5u64 {
            let i = s.interval(&q(&format!("TC_{{S1,{n}}}(S3)")));
            assert_eq!(i, Interval::new(Ext::Fin(n), Ext::Fin(2 * n - 1)).unwrap(), "n = {n}");
        }
        let e = s.explain(&q("TC_{S1,3}(S3)"));
        assert!(e.hi.rules().contains(&RuleId::R4));
        assert!(e.lo.rules().contains(&RuleId::R18b));
        let plain = s1_on_s3(false);
        assert_eq!(plain.interval(&q("TC_{S1,3}(S3)")).lo, Ext::Fin(2));
    }

    #[test]
    fn saturation_is_idempotent_and_order_free() {
        let s = s1_on_s3(true);
        let mut again = s.clone();
        again.saturate();
        let a: Vec<_> = s.known().map(|(q, i)| (q.clone(), i)).collect();
        let b: Vec<_> = again.known().map(|(q, i)| (q.clone(), i)).collect();
        assert_eq!(a, b);
        let mut reversed = Session::new(*s.config());
        reversed.assert_all(s.facts().to_vec());
        let mut order = RuleId::ALL.to_vec();
        order.reverse();
        reversed.saturate_with_order(&order);
        let c: Vec<_> = reversed.known().map(|(q, i)| (q.clone(), i)).collect();
        assert_eq!(a, c);
    }

    #[test]
    fn nothing_known() {
        let s = Session::new(EngineConfig::default());
        let e = s.explain(&q("TC^{G,2}(Y)"));
        assert_eq!(e.interval, Interval::UNKNOWN);
        assert_eq!(*e.lo, Derivation::NoInformation);
    }

    #[test]
    fn minimal_classes_make_invariant_tc_infinite() {
        let mut s = Session::new(EngineConfig::default());
        s.assert_fact(Fact::module(
            "orbit",
            Judgment::Datum(Datum::MinimalOrbitClasses {
                space: Space::named("X"),
                group: Group::named("Z2"),
                count: 2,
            }),
            "",
        ));
        s.saturate();
        for n in 2..=4 {
            let e = s.explain(&q(&format!("TC^{{Z2,{n}}}(X)")));
            assert_eq!(e.interval.lo, Ext::Inf);
            assert_eq!(e.lo.summary(), "R10 <- [fact #0]");
        }
        assert_eq!(s.interval(&q("cat_{Z2}(X)")).lo, Ext::Fin(2));
    }

    #[test]
    fn free_action_rewrites_to_quotient() {
        let mut s = Session::new(EngineConfig::default());
        let (y, g) = (Space::named("S1"), Group::named("Z2"));
        s.assert_fact(Fact::flag(Predicate::Free { space: y.clone(), group: g.clone() }, ""));
        for n in 2..=5u64 {
            s.assert_fact(Fact::bound(q(&format!("TC_{{{n}}}(quot(S1,Z2))")), Interval::exact(n), "TC_n(S^1) = n"));
        }
        s.saturate();
        let e = s.explain(&q("TC^{Z2,3}(S1)"));
        assert_eq!(e.interval, Interval::exact(3));
        assert_eq!(e.lo.label(), "R11");
        assert_eq!(e.hi.label(), "R11");
    }

    #[test]
    fn contradictions_are_kept() {
        let mut s = Session::new(EngineConfig::default());
        s.assert_fact(Fact::bound(q("TC_{2}(X)"), Interval::at_least(Ext::Fin(3)), ""));
        s.assert_fact(Fact::bound(q("TC_{G,2}(X)"), Interval::at_most(Ext::Fin(2)), ""));
        s.saturate();
        let bad = s.inconsistencies();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].quantity, q("TC_{G,2}(X)"));
    }
}
