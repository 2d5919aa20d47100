//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use eqtc::bounds::{emit, Fact, Group, Interval, Predicate, Quantity, Space};
use eqtc::cohomology_ring::{zcl_kernel_basis, GradedRing, SparseVec, ZclBudget};
use eqtc::fixtures;
use eqtc::orbit::{GAction, OrbitBudget};
use eqtc::field::{Field, Scalar};
use eqtc::SimplicialComplex;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

/// Rank of an integer matrix over `Q` (`p = None`) or `F_p`.
pub fn rank(mut rows: Vec<Vec<i64>>, p: Option<i64>) -> usize {
    match p {
        Some(p) => {
            for row in rows.iter_mut() {
                for x in row.iter_mut() {
                    *x = x.rem_euclid(p);
                }
            }
            let cols = rows.first().map_or(0, Vec::len);
            let mut r = 0;
            for c in 0..cols {
                let Some(pivot) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
                rows.swap(r, pivot);
                let inv = (1..p).find(|&x| x * rows[r][c] % p == 1).unwrap();
                for x in rows[r].iter_mut() {
                    *x = *x * inv % p;
                }
                for i in 0..rows.len() {
                    if i != r && rows[i][c] != 0 {
                        let f = rows[i][c];
                        for j in 0..cols {
                            rows[i][j] = (rows[i][j] - f * rows[r][j]).rem_euclid(p);
                        }
                    }
                }
                r += 1;
            }
            r
        }
        None => {
            let mut q: Vec<Vec<BigRational>> = rows
                .into_iter()
                .map(|row| row.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect())
                .collect();
            let cols = q.first().map_or(0, Vec::len);
            let mut r = 0;
            for c in 0..cols {
                let Some(pivot) = (r..q.len()).find(|&i| !q[i][c].is_zero()) else { continue };
                q.swap(r, pivot);
                let lead = q[r][c].clone();
                for x in q[r].iter_mut() {
                    *x = &*x / &lead;
                }
                for i in 0..q.len() {
                    if i != r && !q[i][c].is_zero() {
                        let f = q[i][c].clone();
                        for j in 0..cols {
                            let d = &f * &q[r][j];
                            q[i][j] -= d;
                        }
                    }
                }
                r += 1;
            }
            r
        }
    }
}

/// Betti numbers of `Z_K` from its cell structure: a cell is a word over
/// `{point, circle cell T, disc cell D}` whose `D`-positions form a face, of dimension
/// `#T + 2#D`, and `∂D_i = ±T_i` with the Koszul sign of the preceding letters.
pub fn cellular_betti(k: &SimplicialComplex, p: Option<i64>) -> Vec<usize> {
    let m = k.m();
    let mut cells: Vec<Vec<u8>> = Vec::new();
    let mut word = vec![0u8; m];
    loop {
        let disc: Vec<usize> = (0..m).filter(|&i| word[i] == 2).map(|i| i + 1).collect();
        if k.contains(&disc) {
            cells.push(word.clone());
        }
        let mut i = 0;
        while i < m && word[i] == 2 {
            word[i] = 0;
            i += 1;
        }
        if i == m {
            break;
        }
        word[i] += 1;
    }
    let dim = |w: &[u8]| w.iter().map(|&x| x as usize).sum::<usize>();
    let top = cells.iter().map(|w| dim(w)).max().unwrap_or(0);
    let mut by_dim: Vec<Vec<Vec<u8>>> = vec![Vec::new(); top + 2];
    for c in cells {
        by_dim[dim(&c)].push(c);
    }
    let index: Vec<HashMap<Vec<u8>, usize>> = by_dim
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
        .collect();
    // rank of d_d : C_d -> C_{d-1}
    let boundary_rank = |d: usize| -> usize {
        if d == 0 || d > top || by_dim[d - 1].is_empty() || by_dim[d].is_empty() {
            return 0;
        }
        let rows: Vec<Vec<i64>> = by_dim[d]
            .iter()
            .map(|c| {
                let mut row = vec![0i64; by_dim[d - 1].len()];
                let mut before = 0;
                for i in 0..m {
                    if c[i] == 2 {
                        let mut face = c.clone();
                        face[i] = 1;
                        row[index[d - 1][&face]] += if before % 2 == 0 { 1 } else { -1 };
                    }
                    before += c[i] as usize;
                }
                row
            })
            .collect();
        rank(rows, p)
    };
    (0..=top)
        .map(|d| by_dim[d].len() - boundary_rank(d) - boundary_rank(d + 1))
        .collect()
}

/// `F_p` as a crate field for `p = Some(..)`, else `Q`.
pub fn field(p: Option<i64>) -> Field {
    p.map_or(Field::Rational, |p| Field::prime(p as u32).unwrap())
}

/// Product in `R ⊗ R` with the Koszul sign, written out from the basis table.
pub fn tensor_mul(ring: &GradedRing, a: &SparseVec, b: &SparseVec) -> SparseVec {
    let f = ring.field();
    let d = ring.dim();
    let mut acc: HashMap<usize, Scalar> = HashMap::new();
    for (x, cx) in a {
        let (x1, x2) = (x / d, x % d);
        for (y, cy) in b {
            let (y1, y2) = (y / d, y % d);
            let sign = f.sign(ring.degree(x2) * ring.degree(y1) % 2 == 1);
            let c = f.mul(&f.mul(cx, cy), &sign);
            for (p, cp) in ring.product(x1, y1) {
                for (q, cq) in ring.product(x2, y2) {
                    let e = acc.entry(p * d + q).or_insert_with(|| f.zero());
                    *e = f.add(e, &f.mul(&c, &f.mul(cp, cq)));
                }
            }
        }
    }
    let mut out: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort_by_key(|(i, _)| *i);
    out
}

/// Largest `k ≤ cap` with a nonzero product of `k` kernel-basis elements of `μ_2`,
/// by enumerating nondecreasing index sequences.
pub fn brute_zcl(ring: &GradedRing, cap: usize) -> usize {
    let gens = zcl_kernel_basis(ring, 2);
    let mut frontier: Vec<(usize, SparseVec)> = gens.iter().cloned().enumerate().collect();
    if frontier.is_empty() {
        return 0;
    }
    let mut best = 1;
    while best < cap {
        let mut next = Vec::new();
        for (last, v) in &frontier {
            for (j, g) in gens.iter().enumerate().skip(*last) {
                let p = tensor_mul(ring, v, g);
                if !p.is_empty() {
                    next.push((j, p));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        best += 1;
        frontier = next;
    }
    best
}

pub fn sign_of(x: &Scalar) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Nonempty complexes on `1..=max_m` vertices, given by up to six random faces.
pub fn arb_complex(max_m: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_m).prop_flat_map(|m| {
        prop::collection::vec(1u32..(1u32 << m), 1..6).prop_map(move |masks| {
            let faces = masks
                .into_iter()
                .map(|mask| (1..=m).filter(|v| mask >> (v - 1) & 1 == 1).collect::<Vec<_>>());
            SimplicialComplex::new(m, faces).unwrap()
        })
    })
}

fn quantity(text: &str) -> Quantity {
    text.parse().unwrap()
}

/// Moment-angle facts for a few complexes, orbit facts for every action fixture under
/// its own names, and a handful of user facts about circles and spheres.
pub fn fixture_facts() -> Vec<Fact> {
    let mut facts = Vec::new();
    for name in ["two_vertices", "four_cycle", "boundary_triangle"] {
        let k = fixtures::complex(name).unwrap();
        let mut fs = emit::moment_angle_facts(&k, Field::Rational, 4, &ZclBudget::default()).unwrap();
        // keep the three complexes apart
        let json = eqtc::bounds::facts_to_json(&fs).unwrap().replace("Z_K", &format!("Z_{name}"));
        fs = eqtc::bounds::load_facts(&json, 4, &ZclBudget::default()).unwrap();
        facts.extend(fs);
    }
    for fx in fixtures::actions() {
        let action = GAction::from_spec(fx.action, OrbitBudget::default()).unwrap();
        let space = Space::named(&format!("X_{}", fx.name));
        facts.extend(emit::orbit_facts(&action, false, &space, &Group::named(&format!("G_{}", fx.name))).unwrap());
    }
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/circle-on-three-sphere.json"))
        .unwrap();
    facts.extend(eqtc::bounds::load_facts(&text, 5, &ZclBudget::default()).unwrap());
    for n in 2..=5 {
        facts.push(Fact::bound(quantity(&format!("TC_{{{n}}}(quot(S1,Z2))")), Interval::exact(n), "TC_n(S^1) = n"));
    }
    facts.push(Fact::flag(
        Predicate::Free {
            space: Space::named("S1"),
            group: Group::named("Z2"),
        },
        "antipodal action",
    ));
    facts
}
