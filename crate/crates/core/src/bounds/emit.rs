//! Facts produced by the computational modules, ready for a session.

use crate::cohomology_ring::{build_ring, zcl, GradedRing, ZclBudget, DEFAULT_MAX_RING_VERTICES};
use crate::error::Result;
use crate::field::Field;
use crate::moment_angle;
use crate::orbit::GAction;
use crate::simplicial::SimplicialComplex;

use super::facts::{Datum, Fact, Judgment, Predicate};
use super::quantity::{Group, Space};

/// Space name used for `Z_K` in emitted facts.
pub const ZK: &str = "Z_K";

/// `T^m`.
pub fn torus(m: usize) -> Group {
    Group::named(&format!("T^{m}"))
}

fn flag(module: &str, predicate: Predicate, holds: bool, citation: &str) -> Fact {
    Fact::module(module, Judgment::Flag { predicate, holds }, citation)
}

fn datum(module: &str, d: Datum, citation: &str) -> Fact {
    Fact::module(module, Judgment::Datum(d), citation)
}

/// zcl facts for `n = 2..=max_n`, stopping quietly at the first `n` over budget.
pub fn ring_facts(module: &str, ring: &GradedRing, space: &Space, max_n: usize, budget: &ZclBudget) -> Result<Vec<Fact>> {
    let mut out = Vec::new();
    for n in 2..=max_n.max(2) {
        let value = match zcl(ring, n, budget) {
            Ok(v) => v as u64,
            Err(e) if e.is_budget() => break,
            Err(e) => return Err(e),
        };
        out.push(datum(
            module,
            Datum::Zcl {
                space: space.clone(),
                n,
                value,
            },
            "zero-divisor cup length of the computed cohomology ring",
        ));
    }
    Ok(out)
}

/// Everything known about `Z_K` with its `T^m` action: exact category, connectivity,
/// the fixed-point flag, `Σ(k_ij + 1)` and zcl values.
pub fn moment_angle_facts(k: &SimplicialComplex, field: Field, max_n: usize, budget: &ZclBudget) -> Result<Vec<Fact>> {
    let space = Space::named(ZK);
    let group = torus(k.m());
    let module = "moment_angle";
    let count = moment_angle::cat_torus(k)? as u64;
    let connected = moment_angle::g_connected_flag(k)?;
    // (Z_K)^{T^m} is the point (0,...,0), present iff [m] is a face
    let full: Vec<usize> = (1..=k.m()).collect();
    let mut out = vec![
        datum(
            module,
            Datum::MaximalSimplices {
                space: space.clone(),
                group: group.clone(),
                count,
            },
            "cat of Z_K under the torus is the number of maximal simplices",
        ),
        flag(
            module,
            Predicate::GConnected {
                space: space.clone(),
                group: group.clone(),
            },
            connected,
            "every nonempty fixed set of Z_K is again a moment-angle complex, hence connected",
        ),
        flag(
            module,
            Predicate::FixedSetNonempty {
                space: space.clone(),
                group: group.clone(),
            },
            k.contains(&full),
            "the torus fixes only the origin, which lies in Z_K iff K is a full simplex",
        ),
        datum(
            module,
            Datum::KSum {
                space: space.clone(),
                group,
                value: moment_angle::tc_upper_bound(k) as u64,
            },
            "sum of (k_ij + 1) over pairs of maximal simplices",
        ),
    ];
    let ring = build_ring(k, field, DEFAULT_MAX_RING_VERTICES)?;
    out.extend(ring_facts("cohomology_ring", &ring, &space, max_n, budget)?);
    Ok(out)
}

/// Facts about a finite simplicial action, with the given names for the space and group.
pub fn orbit_facts(action: &GAction, strict: bool, space: &Space, group: &Group) -> Result<Vec<Fact>> {
    let module = "orbit";
    let sg = || (space.clone(), group.clone());
    let conn = action.g_connectivity(strict)?;
    let (minimal, _) = action.minimal_orbit_classes()?;
    let whole: Vec<usize> = (0..action.group().order()).collect();
    let fixed_nonempty = !action.fixed_subcomplex(&whole).is_empty();
    let mut out = Vec::new();
    let (s, g) = sg();
    out.push(flag(
        module,
        Predicate::GConnected { space: s, group: g },
        conn.connected,
        "every fixed subcomplex is connected",
    ));
    let (s, g) = sg();
    out.push(flag(
        module,
        Predicate::NonemptyDisconnectedFixedSet { space: s, group: g },
        conn.nonempty_disconnected.is_some(),
        "some fixed subcomplex is nonempty and disconnected",
    ));
    let (s, g) = sg();
    out.push(flag(
        module,
        Predicate::FixedSetNonempty { space: s, group: g },
        fixed_nonempty,
        "fixed subcomplex of the whole group",
    ));
    let (s, g) = sg();
    out.push(flag(module, Predicate::Free { space: s, group: g }, action.is_free(), "all isotropy groups trivial"));
    let (s, g) = sg();
    out.push(flag(
        module,
        Predicate::OneOrbitType { space: s, group: g },
        action.one_orbit_type(),
        "all isotropy groups conjugate",
    ));
    let (s, g) = sg();
    out.push(datum(
        module,
        Datum::MinimalOrbitClasses {
            space: s,
            group: g,
            count: minimal as u64,
        },
        "minimal classes of the orbit diagram",
    ));
    Ok(out)
}
