use std::fmt::Write as _;

use serde::Serialize;

use super::engine::{Inconsistency, Session};
use super::facts::{Datum, FactEntry, Judgment};
use super::interval::{Ext, Interval};
use super::quantity::Quantity;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub quantity: Quantity,
    pub interval: Interval,
    /// One-line provenance of each side, e.g. `R4 <- [fact #1, R17]`.
    pub lo: String,
    pub hi: String,
}

/// Both readings of a zero-divisor cup length: `zcl ≤ TC_n` and the sharpened `zcl + 1 ≤ TC_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZclRow {
    pub space: String,
    pub n: usize,
    pub zcl: u64,
    pub plain_lower: u64,
    pub sharp_lower: u64,
    pub sharp_enabled: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub rows: Vec<Row>,
    pub zcl: Vec<ZclRow>,
    pub inconsistencies: Vec<Row>,
    pub facts: Vec<FactEntry>,
}

fn row(session: &Session, q: &Quantity) -> Row {
    let e = session.explain(q);
    Row {
        quantity: q.clone(),
        interval: e.interval,
        lo: e.lo.summary(),
        hi: e.hi.summary(),
    }
}

impl Report {
    /// Queried quantities if any were marked, otherwise every quantity with a known bound.
    pub fn build(session: &Session) -> Self {
        let rows = if session.queries().is_empty() {
            session.known().map(|(q, _)| row(session, q)).collect()
        } else {
            session.queries().iter().map(|q| row(session, q)).collect()
        };
        let sharp = session.config().sharp_zcl;
        let zcl = session
            .facts()
            .iter()
            .filter_map(|f| match &f.judgment {
                Judgment::Datum(Datum::Zcl { space, n, value }) => Some(ZclRow {
                    space: space.to_string(),
                    n: *n,
                    zcl: *value,
                    plain_lower: (*value).max(1),
                    sharp_lower: value + 1,
                    sharp_enabled: sharp,
                }),
                _ => None,
            })
            .collect();
        let inconsistencies = session
            .inconsistencies()
            .into_iter()
            .map(|Inconsistency { quantity, interval, lo, hi }| Row {
                quantity,
                interval,
                lo: lo.summary(),
                hi: hi.summary(),
            })
            .collect();
        Report {
            rows,
            zcl,
            inconsistencies,
            facts: session.facts().iter().map(FactEntry::from_fact).collect(),
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.inconsistencies.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("# Bounds\n\n");
        out.push_str("| quantity | interval | lower bound from | upper bound from |\n");
        out.push_str("|---|---|---|---|\n");
        for r in &self.rows {
            let _ = writeln!(out, "| `{}` | {} | {} | {} |", r.quantity, show(r.interval), r.lo, r.hi);
        }
        if !self.zcl.is_empty() {
            out.push_str("\n## Zero-divisor cup length\n\n");
            out.push_str("| space | n | zcl | zcl <= TC_n | zcl + 1 <= TC_n |\n");
            out.push_str("|---|---|---|---|---|\n");
            for z in &self.zcl {
                let sharp = if z.sharp_enabled {
                    format!("{}", z.sharp_lower)
                } else {
                    format!("{} (not applied)", z.sharp_lower)
                };
                let _ = writeln!(out, "| {} | {} | {} | {} | {} |", z.space, z.n, z.zcl, z.plain_lower, sharp);
            }
        }
        if !self.inconsistencies.is_empty() {
            out.push_str("\n## Inconsistencies\n\n");
            for r in &self.inconsistencies {
                let _ = writeln!(
                    out,
                    "- `{}`: lower bound {} ({}) exceeds upper bound {} ({})",
                    r.quantity, r.interval.lo, r.lo, r.interval.hi, r.hi
                );
            }
        }
        out.push_str("\n## Facts\n\n");
        for (i, f) in self.facts.iter().enumerate() {
            let mut detail: Vec<String> = f.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            if let Some(iv) = f.interval {
                detail.push(format!("interval={iv}"));
            }
            if let Some(flag) = f.flag {
                detail.push(format!("holds={flag}"));
            }
            let _ = write!(out, "- #{i} [{}] {} {}", f.source, f.kind, detail.join(", "));
            if !f.citation.is_empty() {
                let _ = write!(out, " -- {}", f.citation);
            }
            out.push('\n');
        }
        out
    }
}

/// `[2, 6]`, `= 2` for exact values.
fn show(i: Interval) -> String {
    match (i.lo, i.hi) {
        (Ext::Fin(a), Ext::Fin(b)) if a == b => format!("= {a}"),
        _ => i.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{EngineConfig, Fact};

    #[test]
    fn empty_session_reports_unknown() {
        let mut s = Session::new(EngineConfig::default());
        let q: Quantity = "TC_{G,2}(Y)".parse().unwrap();
        s.query(q.clone());
        s.saturate();
        let r = Report::build(&s);
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0].interval, Interval::UNKNOWN);
        assert_eq!(r.rows[0].lo, "no information");
        assert!(r.to_markdown().contains("| `TC_{G,2}(Y)` | [1, inf] | no information | no information |"));
    }

    #[test]
    fn inconsistencies_are_listed() {
        let mut s = Session::new(EngineConfig::default());
        let q: Quantity = "cat(X)".parse().unwrap();
        s.assert_fact(Fact::bound(q.clone(), Interval::exact(3), "a"));
        s.assert_fact(Fact::bound(q, Interval::exact(2), "b"));
        s.saturate();
        let r = Report::build(&s);
        assert!(!r.is_consistent());
        assert!(r.to_markdown().contains("## Inconsistencies"));
    }
}
