use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A value in `{1, 2, ...} ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    Fin(u64),
    Inf,
}

impl Ext {
    /// `k·x - 1`, the shape of most product-type upper bounds.
    pub fn times_minus_one(self, k: u64) -> Ext {
        match self {
            Ext::Fin(x) => Ext::Fin((k * x).saturating_sub(1).max(1)),
            Ext::Inf => Ext::Inf,
        }
    }

    /// `a + b - 1`.
    pub fn sum_minus_one(self, other: Ext) -> Ext {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin((a + b).saturating_sub(1).max(1)),
            _ => Ext::Inf,
        }
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Ext::Fin(x) => Some(x),
            Ext::Inf => None,
        }
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::Fin(x) => write!(f, "{x}"),
            Ext::Inf => f.write_str("inf"),
        }
    }
}

impl Serialize for Ext {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Ext::Fin(x) => s.serialize_u64(*x),
            Ext::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Ext {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(0) => Err(serde::de::Error::custom("values start at 1")),
            Raw::Num(x) => Ok(Ext::Fin(x)),
            Raw::Text(t) if t == "inf" || t == "∞" => Ok(Ext::Inf),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("expected a positive integer or \"inf\", got {t:?}"))),
        }
    }
}

/// `[lo, hi]` over `{1, 2, ...} ∪ {∞}`; counts are unreduced, so a point has value 1.
/// `lo > hi` is representable and marks an inconsistency.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(Ext, Ext)", into = "(Ext, Ext)")]
pub struct Interval {
    pub lo: Ext,
    pub hi: Ext,
}

impl From<(Ext, Ext)> for Interval {
    fn from((lo, hi): (Ext, Ext)) -> Self {
        Interval { lo, hi }
    }
}

impl From<Interval> for (Ext, Ext) {
    fn from(i: Interval) -> Self {
        (i.lo, i.hi)
    }
}

impl Interval {
    pub const UNKNOWN: Interval = Interval {
        lo: Ext::Fin(1),
        hi: Ext::Inf,
    };

    pub fn new(lo: Ext, hi: Ext) -> Result<Self> {
        if lo < Ext::Fin(1) || hi < Ext::Fin(1) {
            return Err(Error::Bounds("interval endpoints start at 1".into()));
        }
        Ok(Interval { lo, hi })
    }

    pub fn exact(v: u64) -> Self {
        Interval {
            lo: Ext::Fin(v.max(1)),
            hi: Ext::Fin(v.max(1)),
        }
    }

    pub fn at_least(v: Ext) -> Self {
        Interval { lo: v, hi: Ext::Inf }
    }

    pub fn at_most(v: Ext) -> Self {
        Interval { lo: Ext::Fin(1), hi: v }
    }

    pub fn is_consistent(&self) -> bool {
        self.lo <= self.hi
    }

    pub fn is_unknown(&self) -> bool {
        *self == Self::UNKNOWN
    }

    /// Caps finite values at the ceiling `d`: larger upper bounds become `∞`, larger lower
    /// bounds drop to `d`. Both moves only weaken the claim.
    pub fn capped(self, d: u64) -> Self {
        Interval {
            lo: cap_lo(self.lo, d),
            hi: cap_hi(self.hi, d),
        }
    }
}

pub fn cap_lo(v: Ext, d: u64) -> Ext {
    match v {
        Ext::Fin(x) if x > d => Ext::Fin(d),
        other => other,
    }
}

pub fn cap_hi(v: Ext, d: u64) -> Ext {
    match v {
        Ext::Fin(x) if x > d => Ext::Inf,
        other => other,
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
