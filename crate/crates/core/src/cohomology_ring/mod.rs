//! Finite-dimensional graded-commutative algebras over an exact field, the ring
//! `H^*(Z_K)` built through the Hochster decomposition, and cup-length invariants.

mod hochster;
mod spec;
mod zcl;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{is_zero_vector, Field, Scalar, Vector};

pub use hochster::{build_ring, DEFAULT_MAX_RING_VERTICES};
pub use spec::{BasisEntry, ProductEntry, RingSpec};
pub use zcl::{cup_length, zcl, zcl_kernel_basis, zcl_of_complex, TensorPower, ZclBudget};

/// Sorted sparse vector `(basis index, nonzero coefficient)`.
pub type SparseVec = Vec<(usize, Scalar)>;

/// A basis class `[α] ∈ H̃^l(K_J)` sitting in `H^{|J| + l + 1}(Z_K)`. The class vector is
/// the unit vector `e_index` over the stored representatives of `H̃^l(K_J)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HochsterClass {
    pub subset: Vec<usize>,
    pub l: isize,
    pub index: usize,
}

impl HochsterClass {
    pub fn total_degree(&self) -> usize {
        (self.subset.len() as isize + self.l + 1) as usize
    }

    pub fn label(&self) -> String {
        let j = self.subset.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        format!("[{j}]^{}.{}", self.l, self.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub degree: usize,
    pub hochster: Option<HochsterClass>,
}

/// One failed ring axiom, naming the basis indices involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    Unit { element: usize },
    Degree { left: usize, right: usize, term: usize },
    Commutativity { left: usize, right: usize },
    Associativity { a: usize, b: usize, c: usize },
}

#[derive(Clone, Debug)]
pub struct GradedRing {
    field: Field,
    basis: Vec<BasisElement>,
    table: Vec<Vec<SparseVec>>,
    unit: usize,
}

fn sparse_from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

impl GradedRing {
    /// Assembles a ring from a full multiplication table without checking axioms.
    pub(crate) fn from_parts(field: Field, basis: Vec<BasisElement>, table: Vec<Vec<SparseVec>>, unit: usize) -> Self {
        debug_assert_eq!(table.len(), basis.len());
        GradedRing {
            field,
            basis,
            table,
            unit,
        }
    }

    /// Assembles a ring and rejects it if any axiom fails.
    pub fn checked(field: Field, basis: Vec<BasisElement>, table: Vec<Vec<SparseVec>>, unit: usize) -> Result<Self> {
        let ring = Self::from_parts(field, basis, table, unit);
        if let Some(v) = ring.axiom_violations().first() {
            return Err(Error::Ring(format!("table violates ring axioms: {}", ring.describe(v))));
        }
        Ok(ring)
    }

    /// The field itself, concentrated in degree 0.
    pub fn trivial(field: Field) -> Self {
        let basis = vec![BasisElement {
            name: "1".into(),
            degree: 0,
            hochster: None,
        }];
        Self::from_parts(field, basis, vec![vec![vec![(0, field.one())]]], 0)
    }

    /// Exterior algebra on the given `(name, degree)` generators: every generator squares
    /// to zero and `x y = (-1)^{|x||y|} y x`.
    pub fn exterior(field: Field, generators: &[(String, usize)]) -> Result<Self> {
        let n = generators.len();
        if n > 12 {
            return Err(Error::budget("cohomology_ring", format!("exterior algebra on {n} generators")));
        }
        let mut masks: Vec<u32> = (0..(1u32 << n)).collect();
        let degree_of = |mask: u32| -> usize { (0..n).filter(|i| mask >> i & 1 == 1).map(|i| generators[i].1).sum() };
        masks.sort_by_key(|&mask| (degree_of(mask), mask.count_ones(), mask));
        let position: BTreeMap<u32, usize> = masks.iter().enumerate().map(|(i, &mk)| (mk, i)).collect();
        let basis: Vec<BasisElement> = masks
            .iter()
            .map(|&mask| BasisElement {
                name: if mask == 0 {
                    "1".to_string()
                } else {
                    (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| generators[i].0.clone())
                        .collect::<Vec<_>>()
                        .join("*")
                },
                degree: degree_of(mask),
                hochster: None,
            })
            .collect();
        let table = masks
            .iter()
            .map(|&a| {
                masks
                    .iter()
                    .map(|&b| {
                        if a & b != 0 {
                            return Vec::new();
                        }
                        // move each generator of b left past the larger generators of a
                        let odd_swaps = (0..n)
                            .filter(|i| b >> i & 1 == 1)
                            .map(|i| {
                                (i + 1..n)
                                    .filter(|k| a >> k & 1 == 1)
                                    .filter(|&k| generators[k].1 * generators[i].1 % 2 == 1)
                                    .count()
                            })
                            .sum::<usize>();
                        vec![(position[&(a | b)], field.sign(odd_swaps % 2 == 1))]
                    })
                    .collect()
            })
            .collect();
        Self::checked(field, basis, table, position[&0])
    }

    /// Graded tensor product with `(a ⊗ b)(a' ⊗ b') = (-1)^{|b||a'|} a a' ⊗ b b'`.
    pub fn tensor(&self, other: &GradedRing) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::Ring("tensor factors over different fields".into()));
        }
        let field = self.field;
        let (da, db) = (self.dim(), other.dim());
        let idx = |i: usize, j: usize| i * db + j;
        let basis = (0..da)
            .flat_map(|i| (0..db).map(move |j| (i, j)))
            .map(|(i, j)| BasisElement {
                name: format!("{}⊗{}", self.basis[i].name, other.basis[j].name),
                degree: self.basis[i].degree + other.basis[j].degree,
                hochster: None,
            })
            .collect();
        let mut table = vec![vec![Vec::new(); da * db]; da * db];
        for (a, b) in (0..da).flat_map(|i| (0..db).map(move |j| (i, j))) {
            for (a2, b2) in (0..da).flat_map(|i| (0..db).map(move |j| (i, j))) {
                let sign = field.sign(other.basis[b].degree * self.basis[a2].degree % 2 == 1);
                let mut out: SparseVec = Vec::new();
                for (x, cx) in &self.table[a][a2] {
                    for (y, cy) in &other.table[b][b2] {
                        out.push((idx(*x, *y), field.mul(&sign, &field.mul(cx, cy))));
                    }
                }
                out.sort_by_key(|e| e.0);
                table[idx(a, b)][idx(a2, b2)] = out;
            }
        }
        Self::checked(field, basis, table, idx(self.unit, other.unit))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> usize {
        self.basis[i].degree
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn top_degree(&self) -> usize {
        self.basis.iter().map(|b| b.degree).max().unwrap_or(0)
    }

    /// Dimension of each graded piece, indexed by degree.
    pub fn poincare_series(&self) -> Vec<usize> {
        let mut out = vec![0; self.top_degree() + 1];
        for b in &self.basis {
            out[b.degree] += 1;
        }
        out
    }

    /// Degree-zero part is spanned by the unit.
    pub fn is_connected(&self) -> bool {
        self.basis.iter().filter(|b| b.degree == 0).count() == 1 && self.basis[self.unit].degree == 0
    }

    /// Product of basis elements `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let mut out = self.field.zero_vector(self.dim());
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let c = self.field.mul(x, y);
                for (k, z) in &self.table[i][j] {
                    out[*k] = self.field.add(&out[*k], &self.field.mul(&c, z));
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        self.field.unit_vector(self.dim(), i)
    }

    fn sparse_mul_right(&self, a: &SparseVec, j: usize) -> SparseVec {
        let mut acc = self.field.zero_vector(self.dim());
        for (i, x) in a {
            for (k, z) in &self.table[*i][j] {
                acc[*k] = self.field.add(&acc[*k], &self.field.mul(x, z));
            }
        }
        sparse_from_dense(&acc)
    }

    fn sparse_mul_left(&self, i: usize, b: &SparseVec) -> SparseVec {
        let mut acc = self.field.zero_vector(self.dim());
        for (j, y) in b {
            for (k, z) in &self.table[i][*j] {
                acc[*k] = self.field.add(&acc[*k], &self.field.mul(y, z));
            }
        }
        sparse_from_dense(&acc)
    }

    /// Every failure of the unit law, degree additivity, graded commutativity, or
    /// associativity over basis elements.
    pub fn axiom_violations(&self) -> Vec<AxiomViolation> {
        let f = self.field;
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            let e = vec![(i, f.one())];
            if self.table[self.unit][i] != e || self.table[i][self.unit] != e {
                out.push(AxiomViolation::Unit { element: i });
            }
        }
        for i in 0..n {
            for j in 0..n {
                for (k, _) in &self.table[i][j] {
                    if self.degree(*k) != self.degree(i) + self.degree(j) {
                        out.push(AxiomViolation::Degree {
                            left: i,
                            right: j,
                            term: *k,
                        });
                    }
                }
                if j > i {
                    let sign = f.sign(self.degree(i) * self.degree(j) % 2 == 1);
                    let swapped: SparseVec = self.table[j][i].iter().map(|(k, c)| (*k, f.mul(&sign, c))).collect();
                    if self.table[i][j] != swapped {
                        out.push(AxiomViolation::Commutativity { left: i, right: j });
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = &self.table[a][b];
                for c in 0..n {
                    let left = if ab.is_empty() { Vec::new() } else { self.sparse_mul_right(ab, c) };
                    let bc = &self.table[b][c];
                    let right = if bc.is_empty() { Vec::new() } else { self.sparse_mul_left(a, bc) };
                    if left != right {
                        out.push(AxiomViolation::Associativity { a, b, c });
                    }
                }
            }
        }
        out
    }

    pub fn describe(&self, v: &AxiomViolation) -> String {
        let name = |i: &usize| self.basis[*i].name.as_str();
        match v {
            AxiomViolation::Unit { element } => format!("unit law fails for {}", name(element)),
            AxiomViolation::Degree { left, right, term } => {
                format!("{}*{} has a term {} of the wrong degree", name(left), name(right), name(term))
            }
            AxiomViolation::Commutativity { left, right } => {
                format!("{}*{} is not (-1)^(deg*deg) {}*{}", name(left), name(right), name(right), name(left))
            }
            AxiomViolation::Associativity { a, b, c } => {
                format!("({}*{})*{} != {}*({}*{})", name(a), name(b), name(c), name(a), name(b), name(c))
            }
        }
    }

    pub fn is_zero(&self, v: &[Scalar]) -> bool {
        is_zero_vector(v)
    }

    pub fn format_vector(&self, v: &SparseVec) -> String {
        if v.is_empty() {
            return "0".into();
        }
        v.iter()
            .map(|(k, c)| format!("{}·{}", c, self.basis[*k].name))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Basis listing and nonzero products of positive-degree elements.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "## Basis ({} elements over {})\n", self.dim(), self.field);
        out.push_str("| # | name | J | l | degree |\n|---|---|---|---|---|\n");
        for (i, b) in self.basis.iter().enumerate() {
            let (j, l) = match &b.hochster {
                Some(h) => (format!("{:?}", h.subset), h.l.to_string()),
                None => ("-".into(), "-".into()),
            };
            let _ = writeln!(out, "| {i} | {} | {j} | {l} | {} |", b.name, b.degree);
        }
        out.push_str("\n## Nonzero products of positive-degree classes\n\n");
        let mut any = false;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if i == self.unit || j == self.unit || self.table[i][j].is_empty() {
                    continue;
                }
                any = true;
                let _ = writeln!(
                    out,
                    "- {} * {} = {}",
                    self.basis[i].name,
                    self.basis[j].name,
                    self.format_vector(&self.table[i][j])
                );
            }
        }
        if !any {
            out.push_str("- none\n");
        }
        out
    }
}
