use std::fmt;
use std::rc::Rc;

use serde::Serialize;

use super::engine::{Derivation, Session, Side, Update};
use super::facts::{Datum, Predicate};
use super::interval::Ext;
use super::quantity::{Group, Quantity, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RuleId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    R11,
    R12,
    R13,
    R14,
    R15,
    R16,
    R17,
    R18a,
    R18b,
    R19,
    R20,
}

impl RuleId {
    pub const ALL: [RuleId; 21] = [
        RuleId::R1,
        RuleId::R2,
        RuleId::R3,
        RuleId::R4,
        RuleId::R5,
        RuleId::R6,
        RuleId::R7,
        RuleId::R8,
        RuleId::R9,
        RuleId::R10,
        RuleId::R11,
        RuleId::R12,
        RuleId::R13,
        RuleId::R14,
        RuleId::R15,
        RuleId::R16,
        RuleId::R17,
        RuleId::R18a,
        RuleId::R18b,
        RuleId::R19,
        RuleId::R20,
    ];

    pub fn statement(self) -> &'static str {
        match self {
            RuleId::R1 => "TC_n(Y) <= TC_{G,n}(Y)",
            RuleId::R2 => "TC_{G,n}(Y) <= TC_{G,n+1}(Y)",
            RuleId::R3 => {
                "for closed H, K <= G: TC_n(Y^H) <= TC_{G,n}(Y), TC_{K,n}(Y) <= TC_{G,n}(Y), \
                 and TC_{K,n}(Y^H) <= TC_{G,n}(Y) when Y^H is K-invariant"
            }
            RuleId::R4 => {
                "X G-connected: TC_{G,n}(X) <= cat_G(X^n); if also X^G nonempty: TC_{G,n}(X) <= n cat_G(X) - 1"
            }
            RuleId::R5 => "X G-connected, X^G nonempty: TC_{G,n}(X) <= n TC_{G,2}(X) - 1",
            RuleId::R6 => {
                "X_k G_k-connected with X_k^{G_k} nonempty, X_1 x X_2 completely normal: \
                 cat_{G_1 x G_2}(X_1 x X_2) <= cat_{G_1}(X_1) + cat_{G_2}(X_2) - 1"
            }
            RuleId::R7 => "one orbit type: cat_G(X) = cat(X/G)",
            RuleId::R8 => "G connected, acting freely on itself: TC_{G,n}(G) = cat(G^{n-1})",
            RuleId::R9 => "some Y^H nonempty and disconnected: TC_{G,n}(Y) = inf",
            RuleId::R10 => "more than one minimal orbit class: TC^{G,n}(Y) = inf",
            RuleId::R11 => "G acts freely on Y: TC^{G,n}(Y) = TC_n(Y/G)",
            RuleId::R12 => "TC_n(Y^G) <= TC^{G,n}(Y)",
            RuleId::R13 => "TC^{G,n}(Y) <= TC^{G,n+1}(Y)",
            RuleId::R14 => {
                "saturated diagonals are cofibrations: TC^{G x K,n}(Y x Z) <= TC^{G,n}(Y) + TC^{K,n}(Z) - 1"
            }
            RuleId::R15 => "TC^{G,n}(Y) <= A-cat_{G^n}(Y^n) with A = O(y)^n",
            RuleId::R16 => "cat_G(X) >= number of minimal orbit classes",
            RuleId::R17 => "cat_{T^m}(Z_K) = number of maximal simplices of K",
            RuleId::R18a => "zcl_n(H^*(Y)) <= TC_n(Y); TC_{T^m,2}(Z_K) <= sum_{i,j} (k_ij + 1)",
            RuleId::R18b => "zcl_n(H^*(Y)) + 1 <= TC_n(Y) (enabled by the sharp-zcl flag)",
            RuleId::R19 => {
                "X a G-connected topological group, G acting by homomorphisms: TC_{G,2}(X) = cat(X/G)"
            }
            RuleId::R20 => "X G-connected, X^G nonempty: cat_G(X) <= TC_{G,2}(X)",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format!("{self:?}"))
    }
}

/// The rule registry as printable lines.
pub fn registry() -> Vec<String> {
    RuleId::ALL.iter().map(|r| format!("{r:<5} {}", r.statement())).collect()
}

struct Out<'a> {
    session: &'a Session,
    rule: RuleId,
    updates: Vec<Update>,
}

impl<'a> Out<'a> {
    fn push(&mut self, q: Quantity, side: Side, value: Ext, premises: Vec<Rc<Derivation>>) {
        let current = self.session.interval(&q);
        let better = match side {
            Side::Lo => value > current.lo,
            Side::Hi => value < current.hi,
        };
        if !better {
            return;
        }
        let relation = if side == Side::Lo { ">=" } else { "<=" };
        let why = Rc::new(Derivation::Rule {
            rule: self.rule,
            conclusion: format!("{q} {relation} {value}"),
            premises,
        });
        self.updates.push(Update {
            quantity: q,
            side,
            value,
            why,
        });
    }

    /// `target.lo >= source.lo`, with extra premises.
    fn lift_lo(&mut self, target: Quantity, source: &Quantity, extra: &[Rc<Derivation>]) {
        let v = self.session.lo(source);
        if v > Ext::Fin(1) {
            let mut premises = extra.to_vec();
            premises.push(self.session.lo_why(source));
            self.push(target, Side::Lo, v, premises);
        }
    }

    /// `target.hi <= source.hi`, with extra premises.
    fn lower_hi(&mut self, target: Quantity, source: &Quantity, extra: &[Rc<Derivation>]) {
        let v = self.session.hi(source);
        if v < Ext::Inf {
            let mut premises = extra.to_vec();
            premises.push(self.session.hi_why(source));
            self.push(target, Side::Hi, v, premises);
        }
    }

    fn equal(&mut self, a: &Quantity, b: &Quantity, extra: &[Rc<Derivation>]) {
        self.lift_lo(a.clone(), b, extra);
        self.lower_hi(a.clone(), b, extra);
        self.lift_lo(b.clone(), a, extra);
        self.lower_hi(b.clone(), a, extra);
    }

    fn leaf(&self, id: usize) -> Rc<Derivation> {
        self.session.fact_leaf(id)
    }
}

fn tcg(group: &Group, n: usize, space: &Space) -> Quantity {
    Quantity::TcG {
        group: group.clone(),
        n,
        space: space.clone(),
    }
}

fn tcinv(group: &Group, n: usize, space: &Space) -> Quantity {
    Quantity::TcInv {
        group: group.clone(),
        n,
        space: space.clone(),
    }
}

fn tc(n: usize, space: Space) -> Quantity {
    Quantity::Tc { n, space }
}

fn catg(group: &Group, space: &Space) -> Quantity {
    Quantity::CatG {
        group: group.clone(),
        space: space.clone(),
    }
}

fn cat(space: Space) -> Quantity {
    Quantity::Cat { space }
}

/// Both `G`-connectivity and a nonempty `X^G`, as fact ids.
fn connected_with_fixed_point(s: &Session, space: &Space, group: &Group) -> Option<(usize, usize)> {
    let c = s.flag(&Predicate::GConnected {
        space: space.clone(),
        group: group.clone(),
    })?;
    let f = s.flag(&Predicate::FixedSetNonempty {
        space: space.clone(),
        group: group.clone(),
    })?;
    Some((c, f))
}

pub(super) fn fire(s: &Session, rule: RuleId) -> Vec<Update> {
    let mut out = Out {
        session: s,
        rule,
        updates: Vec::new(),
    };
    let ns = s.ns();
    let contexts = s.contexts();
    match rule {
        RuleId::R1 => {
            for (y, g) in &contexts {
                for &n in &ns {
                    out.lift_lo(tcg(g, n, y), &tc(n, y.clone()), &[]);
                }
            }
        }
        RuleId::R2 | RuleId::R13 => {
            let make: fn(&Group, usize, &Space) -> Quantity = if rule == RuleId::R2 { tcg } else { tcinv };
            for (y, g) in &contexts {
                for w in ns.windows(2) {
                    if w[1] != w[0] + 1 {
                        continue;
                    }
                    let (a, b) = (make(g, w[0], y), make(g, w[1], y));
                    out.lift_lo(b.clone(), &a, &[]);
                    out.lower_hi(a, &b, &[]);
                }
            }
        }
        RuleId::R3 => {
            for (y, g) in &contexts {
                for &n in &ns {
                    // H = G needs no subgroup fact
                    out.lift_lo(tcg(g, n, y), &tc(n, Space::fixed(y.clone(), g.clone())), &[]);
                }
            }
            for (p, id) in s.true_flags() {
                let Predicate::Subgroup { sub, of } = p else { continue };
                for (y, g) in contexts.iter().filter(|(_, g)| g == of) {
                    for &n in &ns {
                        let leaf = out.leaf(id);
                        out.lift_lo(tcg(g, n, y), &tc(n, Space::fixed(y.clone(), sub.clone())), &[leaf.clone()]);
                        out.lift_lo(tcg(g, n, y), &tcg(sub, n, y), &[leaf]);
                    }
                }
            }
            for (p, id) in s.true_flags() {
                let Predicate::InvariantFixedSet { space: y, fixed_by: h, group: k } = p else { continue };
                for (q, sub_id) in s.true_flags() {
                    let Predicate::Subgroup { sub, of: g } = q else { continue };
                    if sub != k {
                        continue;
                    }
                    let h_ok = if h == g {
                        Some(None)
                    } else {
                        s.flag(&Predicate::Subgroup { sub: h.clone(), of: g.clone() }).map(Some)
                    };
                    let Some(h_fact) = h_ok else { continue };
                    let mut extra = vec![out.leaf(id), out.leaf(sub_id)];
                    extra.extend(h_fact.map(|i| out.leaf(i)));
                    for &n in &ns {
                        out.lift_lo(tcg(g, n, y), &tcg(k, n, &Space::fixed(y.clone(), h.clone())), &extra);
                    }
                }
            }
        }
        RuleId::R4 => {
            for (p, id) in s.true_flags() {
                let Predicate::GConnected { space: x, group: g } = p else { continue };
                let fixed = s.flag(&Predicate::FixedSetNonempty { space: x.clone(), group: g.clone() });
                for &n in &ns {
                    let leaf = out.leaf(id);
                    out.lower_hi(tcg(g, n, x), &catg(g, &Space::power(x.clone(), n)), &[leaf.clone()]);
                    if let Some(fid) = fixed {
                        let c = catg(g, x);
                        let v = s.hi(&c).times_minus_one(n as u64);
                        if v < Ext::Inf {
                            let premises = vec![leaf, out.leaf(fid), s.hi_why(&c)];
                            out.push(tcg(g, n, x), Side::Hi, v, premises);
                        }
                    }
                }
            }
        }
        RuleId::R5 => {
            for (y, g) in &contexts {
                let Some((c, f)) = connected_with_fixed_point(s, y, g) else { continue };
                let two = tcg(g, 2, y);
                for &n in ns.iter().filter(|&&n| n > 2) {
                    let v = s.hi(&two).times_minus_one(n as u64);
                    if v < Ext::Inf {
                        let premises = vec![out.leaf(c), out.leaf(f), s.hi_why(&two)];
                        out.push(tcg(g, n, y), Side::Hi, v, premises);
                    }
                }
            }
        }
        RuleId::R6 => {
            for (p, id) in s.true_flags() {
                let Predicate::CompletelyNormal { space: Space::Product(x1, x2) } = p else { continue };
                let groups_of = |x: &Space| -> Vec<(Group, usize, usize)> {
                    contexts
                        .iter()
                        .filter(|(y, _)| y == x)
                        .filter_map(|(y, g)| connected_with_fixed_point(s, y, g).map(|(c, f)| (g.clone(), c, f)))
                        .collect()
                };
                for (g1, c1, f1) in groups_of(x1) {
                    for (g2, c2, f2) in groups_of(x2) {
                        let (a, b) = (catg(&g1, x1), catg(&g2, x2));
                        let v = s.hi(&a).sum_minus_one(s.hi(&b));
                        if v < Ext::Inf {
                            let premises = [id, c1, f1, c2, f2]
                                .into_iter()
                                .map(|i| out.leaf(i))
                                .chain([s.hi_why(&a), s.hi_why(&b)])
                                .collect();
                            let target = catg(&Group::product(g1.clone(), g2), &p_space(x1, x2));
                            out.push(target, Side::Hi, v, premises);
                        }
                    }
                }
            }
        }
        RuleId::R7 => {
            for (p, id) in s.true_flags() {
                let Predicate::OneOrbitType { space: x, group: g } = p else { continue };
                let leaf = out.leaf(id);
                out.equal(&catg(g, x), &cat(Space::quotient(x.clone(), g.clone())), &[leaf]);
            }
        }
        RuleId::R8 => {
            for (p, id) in s.true_flags() {
                let Predicate::GroupConnected { group: g } = p else { continue };
                let Group::Named(name) = g else { continue };
                let space = Space::named(name);
                for &n in &ns {
                    let leaf = out.leaf(id);
                    out.equal(&tcg(g, n, &space), &cat(Space::power(space.clone(), n - 1)), &[leaf]);
                }
            }
        }
        RuleId::R9 => {
            for (p, id) in s.true_flags() {
                let Predicate::NonemptyDisconnectedFixedSet { space: y, group: g } = p else { continue };
                for &n in &ns {
                    let leaf = out.leaf(id);
                    out.push(tcg(g, n, y), Side::Lo, Ext::Inf, vec![leaf]);
                }
            }
        }
        RuleId::R10 => {
            for (d, id) in s.data() {
                let Datum::MinimalOrbitClasses { space: y, group: g, count } = d else { continue };
                if *count > 1 {
                    for &n in &ns {
                        let leaf = out.leaf(id);
                        out.push(tcinv(g, n, y), Side::Lo, Ext::Inf, vec![leaf]);
                    }
                }
            }
        }
        RuleId::R11 => {
            for (p, id) in s.true_flags() {
                let Predicate::Free { space: y, group: g } = p else { continue };
                for &n in &ns {
                    let leaf = out.leaf(id);
                    out.equal(&tcinv(g, n, y), &tc(n, Space::quotient(y.clone(), g.clone())), &[leaf]);
                }
            }
        }
        RuleId::R12 => {
            for (y, g) in &contexts {
                for &n in &ns {
                    out.lift_lo(tcinv(g, n, y), &tc(n, Space::fixed(y.clone(), g.clone())), &[]);
                }
            }
        }
        RuleId::R14 => {
            let cof: Vec<(&Space, &Group, usize)> = s
                .true_flags()
                .filter_map(|(p, id)| match p {
                    Predicate::DiagonalCofibration { space, group } => Some((space, group, id)),
                    _ => None,
                })
                .collect();
            for (i, &(y, g, a)) in cof.iter().enumerate() {
                for (j, &(z, k, b)) in cof.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    for &n in &ns {
                        let (qy, qz) = (tcinv(g, n, y), tcinv(k, n, z));
                        let v = s.hi(&qy).sum_minus_one(s.hi(&qz));
                        if v < Ext::Inf {
                            let premises = vec![out.leaf(a), out.leaf(b), s.hi_why(&qy), s.hi_why(&qz)];
                            let target = tcinv(&Group::product(g.clone(), k.clone()), n, &p_space(y, z));
                            out.push(target, Side::Hi, v, premises);
                        }
                    }
                }
            }
        }
        RuleId::R15 => {
            let keys: Vec<Quantity> = s.bound_keys().cloned().collect();
            for q in keys {
                let Quantity::ACatG { group: Group::Power(g, k), space: Space::Power(y, k2), .. } = &q else {
                    continue;
                };
                if k == k2 {
                    out.lower_hi(tcinv(g, *k, y), &q, &[]);
                }
            }
        }
        RuleId::R16 | RuleId::R17 => {
            for (d, id) in s.data() {
                match (rule, d) {
                    (RuleId::R16, Datum::MinimalOrbitClasses { space, group, count }) => {
                        let leaf = out.leaf(id);
                        out.push(catg(group, space), Side::Lo, Ext::Fin(*count), vec![leaf]);
                    }
                    (RuleId::R17, Datum::MaximalSimplices { space, group, count }) => {
                        let leaf = out.leaf(id);
                        out.push(catg(group, space), Side::Lo, Ext::Fin(*count), vec![leaf.clone()]);
                        out.push(catg(group, space), Side::Hi, Ext::Fin(*count), vec![leaf]);
                    }
                    _ => {}
                }
            }
        }
        RuleId::R18a | RuleId::R18b => {
            if rule == RuleId::R18b && !s.config().sharp_zcl {
                return Vec::new();
            }
            let bump = u64::from(rule == RuleId::R18b);
            for (d, id) in s.data() {
                match d {
                    Datum::Zcl { space, n, value } => {
                        let leaf = out.leaf(id);
                        out.push(tc(*n, space.clone()), Side::Lo, Ext::Fin((value + bump).max(1)), vec![leaf]);
                    }
                    Datum::KSum { space, group, value } if rule == RuleId::R18a => {
                        let leaf = out.leaf(id);
                        out.push(tcg(group, 2, space), Side::Hi, Ext::Fin(*value), vec![leaf]);
                    }
                    _ => {}
                }
            }
        }
        RuleId::R19 => {
            for (y, g) in &contexts {
                let c = s.flag(&Predicate::GConnected { space: y.clone(), group: g.clone() });
                let t = s.flag(&Predicate::TopologicalGroup { space: y.clone() });
                let h = s.flag(&Predicate::ActsByHomomorphisms { space: y.clone(), group: g.clone() });
                if let (Some(c), Some(t), Some(h)) = (c, t, h) {
                    let extra = [out.leaf(c), out.leaf(t), out.leaf(h)];
                    out.equal(&tcg(g, 2, y), &cat(Space::quotient(y.clone(), g.clone())), &extra);
                }
            }
        }
        RuleId::R20 => {
            for (y, g) in &contexts {
                let Some((c, f)) = connected_with_fixed_point(s, y, g) else { continue };
                let extra = [out.leaf(c), out.leaf(f)];
                out.lift_lo(tcg(g, 2, y), &catg(g, y), &extra);
            }
        }
    }
    out.updates
}

fn p_space(a: &Space, b: &Space) -> Space {
    Space::product(a.clone(), b.clone())
}
