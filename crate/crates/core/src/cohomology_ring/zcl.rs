use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{kernel, Field, Scalar, Subspace, Vector};
use crate::simplicial::SimplicialComplex;

use super::{build_ring, GradedRing, SparseVec, DEFAULT_MAX_RING_VERTICES};

/// Size limits for tensor-power computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZclBudget {
    /// Largest ring dimension accepted for `n = 2`.
    pub max_dim_square: usize,
    /// Largest `dim(R)^n` accepted for `n >= 3`.
    pub max_tensor_dim: usize,
}

impl Default for ZclBudget {
    fn default() -> Self {
        ZclBudget {
            max_dim_square: 16,
            max_tensor_dim: 512,
        }
    }
}

impl ZclBudget {
    pub fn check(&self, dim: usize, n: usize) -> Result<()> {
        let ok = if n == 2 {
            dim <= self.max_dim_square
        } else {
            dim.checked_pow(n as u32).is_some_and(|t| t <= self.max_tensor_dim)
        };
        if ok {
            Ok(())
        } else {
            Err(Error::budget(
                "cohomology_ring",
                format!("tensor power of a {dim}-dimensional ring with n = {n} exceeds the budget"),
            ))
        }
    }
}

/// `R^{⊗n}` with the Koszul sign rule; basis tensors are flat mixed-radix indices with the
/// first factor most significant.
pub struct TensorPower<'a> {
    ring: &'a GradedRing,
    n: usize,
    degrees: Vec<usize>,
}

impl<'a> TensorPower<'a> {
    pub fn new(ring: &'a GradedRing, n: usize) -> Self {
        let d = ring.dim();
        let total = d.pow(n as u32);
        let mut tp = TensorPower {
            ring,
            n,
            degrees: Vec::with_capacity(total),
        };
        tp.degrees = (0..total)
            .map(|x| tp.digits(x).iter().map(|&i| ring.degree(i)).sum())
            .collect();
        tp
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, x: usize) -> usize {
        self.degrees[x]
    }

    pub fn digits(&self, mut x: usize) -> Vec<usize> {
        let d = self.ring.dim();
        let mut out = vec![0; self.n];
        for slot in out.iter_mut().rev() {
            *slot = x % d;
            x /= d;
        }
        out
    }

    pub fn flat(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &i| acc * self.ring.dim() + i)
    }

    /// Product of two basis tensors.
    pub fn mul_basis(&self, x: usize, y: usize) -> SparseVec {
        let f = self.ring.field();
        let (a, b) = (self.digits(x), self.digits(y));
        let mut swaps = 0;
        for j in 0..self.n {
            let later: usize = a[j + 1..].iter().map(|&i| self.ring.degree(i)).sum();
            swaps += self.ring.degree(b[j]) * later;
        }
        let mut terms: Vec<(usize, Scalar)> = vec![(0, f.sign(swaps % 2 == 1))];
        for j in 0..self.n {
            let factor = self.ring.product(a[j], b[j]);
            if factor.is_empty() {
                return Vec::new();
            }
            terms = terms
                .iter()
                .flat_map(|(prefix, c)| {
                    factor
                        .iter()
                        .map(move |(k, z)| (prefix * self.ring.dim() + k, f.mul(c, z)))
                })
                .collect();
        }
        terms.sort_by_key(|t| t.0);
        terms
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let f = self.ring.field();
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (x, cx) in a {
            for (y, cy) in b {
                let c = f.mul(cx, cy);
                for (z, cz) in self.mul_basis(*x, *y) {
                    let e = acc.entry(z).or_insert_with(Scalar::zero);
                    *e = f.add(e, &f.mul(&c, &cz));
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// `μ_n(e_{i_1} ⊗ ... ⊗ e_{i_n}) = e_{i_1} ⋯ e_{i_n}` as a vector of `R`.
    pub fn multiply_out(&self, x: usize) -> Vector {
        let digits = self.digits(x);
        let mut v = self.ring.basis_vector(digits[0]);
        for &i in &digits[1..] {
            v = self.ring.mul(&v, &self.ring.basis_vector(i));
        }
        v
    }

    fn by_degree(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (x, &g) in self.degrees.iter().enumerate() {
            out.entry(g).or_default().push(x);
        }
        out
    }
}

/// Homogeneous basis of `ker(μ_n : R^{⊗n} -> R)`, degree by degree.
pub fn zcl_kernel_basis(ring: &GradedRing, n: usize) -> Vec<SparseVec> {
    let tp = TensorPower::new(ring, n);
    let field = ring.field();
    let mut out = Vec::new();
    for (g, cols) in tp.by_degree() {
        let targets: Vec<usize> = (0..ring.dim()).filter(|&i| ring.degree(i) == g).collect();
        let images: Vec<Vector> = cols.iter().map(|&x| tp.multiply_out(x)).collect();
        let rows: Vec<Vector> = targets
            .iter()
            .map(|&t| images.iter().map(|img| img[t].clone()).collect())
            .collect();
        for v in kernel(field, &rows, cols.len()) {
            out.push(
                v.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (cols[i], c))
                    .collect(),
            );
        }
    }
    out
}

/// Per-degree spans inside `R^{⊗n}`.
struct GradedSpan<'a> {
    field: Field,
    index: &'a BTreeMap<usize, (Vec<usize>, BTreeMap<usize, usize>)>,
    parts: BTreeMap<usize, Subspace>,
}

impl<'a> GradedSpan<'a> {
    fn new(field: Field, index: &'a BTreeMap<usize, (Vec<usize>, BTreeMap<usize, usize>)>) -> Self {
        GradedSpan {
            field,
            index,
            parts: BTreeMap::new(),
        }
    }

    fn insert(&mut self, degree: usize, v: &SparseVec) -> bool {
        let (cols, local) = &self.index[&degree];
        let space = self
            .parts
            .entry(degree)
            .or_insert_with(|| Subspace::new(self.field, cols.len()));
        if space.is_full() {
            return false;
        }
        let mut dense = self.field.zero_vector(cols.len());
        for (x, c) in v {
            dense[local[x]] = c.clone();
        }
        space.insert(&dense)
    }

    fn is_zero(&self) -> bool {
        self.parts.values().all(|s| s.dim() == 0)
    }

    fn basis(&self) -> Vec<(usize, SparseVec)> {
        let mut out = Vec::new();
        for (g, space) in &self.parts {
            let cols = &self.index[g].0;
            for row in space.basis() {
                out.push((
                    *g,
                    row.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| (cols[i], c.clone()))
                        .collect(),
                ));
            }
        }
        out
    }
}

/// Largest `k` with `(ker μ_n)^k ≠ 0`, by iterating `V_{k+1} = span(V_k · V_1)`.
pub fn zcl(ring: &GradedRing, n: usize, budget: &ZclBudget) -> Result<usize> {
    if n < 2 {
        return Err(Error::Ring(format!("zero-divisor cup length needs n >= 2, got {n}")));
    }
    if !ring.is_connected() {
        return Err(Error::Ring("zero-divisor cup length needs a connected ring".into()));
    }
    budget.check(ring.dim(), n)?;
    let tp = TensorPower::new(ring, n);
    let index: BTreeMap<usize, (Vec<usize>, BTreeMap<usize, usize>)> = tp
        .by_degree()
        .into_iter()
        .map(|(g, cols)| {
            let local = cols.iter().enumerate().map(|(i, &x)| (x, i)).collect();
            (g, (cols, local))
        })
        .collect();
    let top = index.keys().max().copied().unwrap_or(0);

    let generators: Vec<(usize, SparseVec)> = zcl_kernel_basis(ring, n)
        .into_iter()
        .map(|v| (tp.degree(v[0].0), v))
        .collect();
    if generators.is_empty() {
        return Ok(0);
    }
    let mut power = generators.clone();
    let mut k = 1;
    loop {
        let mut next = GradedSpan::new(ring.field(), &index);
        for (g1, v) in &power {
            for (g2, w) in &generators {
                let g = g1 + g2;
                if g > top {
                    continue;
                }
                let p = tp.mul(v, w);
                if !p.is_empty() {
                    next.insert(g, &p);
                }
            }
        }
        if next.is_zero() {
            return Ok(k);
        }
        k += 1;
        if k > top + 1 {
            return Err(Error::Ring("zero-divisor ideal is not nilpotent".into()));
        }
        power = next.basis();
    }
}

/// Largest `k` with a nonzero `k`-fold product of positive-degree elements.
pub fn cup_length(ring: &GradedRing) -> usize {
    let field = ring.field();
    let positive: Vec<usize> = (0..ring.dim()).filter(|&i| ring.degree(i) > 0).collect();
    if positive.is_empty() {
        return 0;
    }
    let mut power: Vec<Vector> = positive.iter().map(|&i| ring.basis_vector(i)).collect();
    let mut k = 1;
    loop {
        let mut next = Subspace::new(field, ring.dim());
        for v in &power {
            for &i in &positive {
                next.insert(&ring.mul(v, &ring.basis_vector(i)));
            }
        }
        if next.dim() == 0 || k > ring.top_degree() {
            return k;
        }
        k += 1;
        power = next.basis().to_vec();
    }
}

/// `zcl(H^*(Z_K), n)`.
pub fn zcl_of_complex(k: &SimplicialComplex, field: Field, n: usize, budget: &ZclBudget) -> Result<usize> {
    let ring = build_ring(k, field, DEFAULT_MAX_RING_VERTICES)?;
    zcl(&ring, n, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(field: Field, d: usize) -> GradedRing {
        GradedRing::exterior(field, &[("x".into(), d)]).unwrap()
    }

    #[test]
    fn cup_lengths() {
        let q = Field::Rational;
        assert_eq!(cup_length(&sphere(q, 3)), 1);
        let s3s3 = sphere(q, 3).tensor(&sphere(q, 3)).unwrap();
        assert_eq!(cup_length(&s3s3), 2);
        assert_eq!(cup_length(&GradedRing::trivial(q)), 0);
    }

    #[test]
    fn zcl_of_odd_sphere() {
        let b = ZclBudget::default();
        assert_eq!(zcl(&sphere(Field::Rational, 3), 2, &b).unwrap(), 1);
        for n in 2..=4 {
            assert_eq!(zcl(&sphere(Field::Rational, 1), n, &b).unwrap(), n - 1, "n = {n}");
        }
    }

    #[test]
    fn zcl_of_even_sphere_is_two() {
        // z = 1⊗x - x⊗1 with x of even degree has z² = -2 x⊗x ≠ 0 over Q
        let b = ZclBudget::default();
        assert_eq!(zcl(&sphere(Field::Rational, 2), 2, &b).unwrap(), 2);
        assert_eq!(zcl(&sphere(Field::Prime(2), 2), 2, &b).unwrap(), 1);
    }

    #[test]
    fn zcl_of_product_and_trivial() {
        let q = Field::Rational;
        let b = ZclBudget::default();
        let s3s3 = sphere(q, 3).tensor(&sphere(q, 3)).unwrap();
        assert_eq!(zcl(&s3s3, 2, &b).unwrap(), 2);
        for n in 2..=4 {
            assert_eq!(zcl(&GradedRing::trivial(q), n, &b).unwrap(), 0);
        }
    }

    #[test]
    fn kernel_has_codimension_dim_r() {
        let r = sphere(Field::Rational, 3).tensor(&sphere(Field::Rational, 5)).unwrap();
        assert_eq!(zcl_kernel_basis(&r, 2).len(), 16 - 4);
    }

    #[test]
    fn budget_rejects_large_powers() {
        let r = sphere(Field::Rational, 1)
            .tensor(&sphere(Field::Rational, 1))
            .unwrap()
            .tensor(&sphere(Field::Rational, 1))
            .unwrap()
            .tensor(&sphere(Field::Rational, 1))
            .unwrap()
            .tensor(&sphere(Field::Rational, 1))
            .unwrap();
        assert_eq!(r.dim(), 32);
        assert!(zcl(&r, 2, &ZclBudget::default()).unwrap_err().is_budget());
        assert!(zcl(&sphere(Field::Rational, 1).tensor(&sphere(Field::Rational, 1)).unwrap().tensor(&sphere(Field::Rational, 1)).unwrap().tensor(&sphere(Field::Rational, 1)).unwrap(), 3, &ZclBudget::default()).unwrap_err().is_budget());
    }

    #[test]
    fn complexes() {
        let b = ZclBudget::default();
        let q = Field::Rational;
        let two = SimplicialComplex::new(2, [vec![1], vec![2]]).unwrap();
        assert_eq!(zcl_of_complex(&two, q, 2, &b).unwrap(), 1);
        assert_eq!(zcl_of_complex(&SimplicialComplex::cycle(4), q, 2, &b).unwrap(), 2);
        assert_eq!(zcl_of_complex(&SimplicialComplex::full_simplex(3), q, 2, &b).unwrap(), 0);
    }
}
