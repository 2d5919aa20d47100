//! Exact scalar fields and the dense linear algebra built on them.
//!
//! Every scalar is a [`BigRational`]. Over `F_p` the canonical representative is
//! the integer in `[0, p)`, so equality and zero tests are plain comparisons.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Scalar = BigRational;
pub type Vector = Vec<Scalar>;

const MAX_PRIME: u32 = 97;

/// Coefficient field of a computation: the rationals or a prime field `F_p`, `p <= 97`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Default for Field {
    fn default() -> Self {
        Field::Rational
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        if p > MAX_PRIME {
            return Err(Error::Field(format!("prime {p} exceeds {MAX_PRIME}")));
        }
        Ok(Field::Prime(p))
    }

    /// Accepts `Q`, `F2`, `F_2`, `Fp=2` style names.
    pub fn parse(name: &str) -> Result<Field> {
        let s = name.trim();
        if s.eq_ignore_ascii_case("q") || s.eq_ignore_ascii_case("rational") {
            return Ok(Field::Rational);
        }
        let digits = s
            .strip_prefix('F')
            .or_else(|| s.strip_prefix('f'))
            .map(|rest| rest.trim_start_matches(['_', 'p', '=']))
            .ok_or_else(|| Error::Field(format!("unknown field '{name}'")))?;
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::Field(format!("unknown field '{name}'")))?;
        Field::prime(p)
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    fn reduce(&self, x: Scalar) -> Scalar {
        match self {
            Field::Rational => x,
            Field::Prime(p) => {
                debug_assert!(x.is_integer());
                let p = BigInt::from(*p);
                let mut r = x.to_integer() % &p;
                if r.is_negative() {
                    r += &p;
                }
                BigRational::from_integer(r)
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_int(&self, v: i64) -> Scalar {
        self.reduce(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn sign(&self, negative: bool) -> Scalar {
        if negative {
            self.from_int(-1)
        } else {
            self.one()
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            Field::Rational => Some(a.recip()),
            Field::Prime(p) => {
                let p = *p as u64;
                let base = a.to_integer().to_u64().expect("canonical F_p residue") % p;
                Some(BigRational::from_integer(BigInt::from(pow_mod(base, p - 2, p))))
            }
        }
    }

    /// Maps an arbitrary rational into the field (denominators inverted mod p).
    pub fn embed(&self, x: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(x.clone()),
            Field::Prime(_) => {
                let num = self.reduce(BigRational::from_integer(x.numer().clone()));
                let den = self.reduce(BigRational::from_integer(x.denom().clone()));
                let inv = self.inv(&den).ok_or_else(|| {
                    Error::Field(format!("{x} has a denominator divisible by {}", self.characteristic()))
                })?;
                Ok(self.mul(&num, &inv))
            }
        }
    }

    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let raw: BigRational = text
            .trim()
            .parse()
            .map_err(|_| Error::Field(format!("bad scalar '{text}'")))?;
        self.embed(&raw)
    }

    pub fn zero_vector(&self, len: usize) -> Vector {
        vec![Scalar::zero(); len]
    }

    pub fn unit_vector(&self, len: usize, index: usize) -> Vector {
        let mut v = self.zero_vector(len);
        v[index] = self.one();
        v
    }

    /// `acc += c * v`
    pub fn axpy(&self, acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
        if c.is_zero() {
            return;
        }
        for (a, x) in acc.iter_mut().zip(v) {
            if !x.is_zero() {
                *a = self.add(a, &self.mul(c, x));
            }
        }
    }

    pub fn scale(&self, c: &Scalar, v: &[Scalar]) -> Vector {
        v.iter().map(|x| self.mul(c, x)).collect()
    }
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl From<Field> for String {
    fn from(f: Field) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for Field {
    type Error = Error;
    fn try_from(s: String) -> Result<Field> {
        Field::parse(&s)
    }
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// In-place reduced row echelon form over `ncols` columns; returns pivot columns.
pub fn rref(field: Field, rows: &mut Vec<Vector>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]).expect("nonzero pivot");
        rows[r] = field.scale(&inv, &rows[r]);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = field.neg(&row[c]);
                field.axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(field: Field, rows: &[Vector], ncols: usize) -> usize {
    let mut work = rows.to_vec();
    rref(field, &mut work, ncols).len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows; one vector per free column,
/// in increasing free-column order.
pub fn kernel(field: Field, rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut work = rows.to_vec();
    let pivots = rref(field, &mut work, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = field.zero_vector(ncols);
            v[free] = field.one();
            for (row, &p) in work.iter().zip(&pivots) {
                if !row[free].is_zero() {
                    v[p] = field.neg(&row[free]);
                }
            }
            v
        })
        .collect()
}

/// A subspace of `field^ambient` kept as a reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    /// Residue of `v` after elimination against the current basis.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let c = self.field.neg(&w[p]);
                self.field.axpy(&mut w, &c, row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        if self.is_full() {
            return false;
        }
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = self.field.inv(&w[p]).expect("nonzero");
        let w = self.field.scale(&inv, &w);
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = self.field.neg(&row[p]);
                self.field.axpy(row, &c, &w);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }
}

/// Expresses vectors in a fixed linearly independent family `v_1..v_k`.
///
/// Holds `E` with `E [v_1 .. v_k] = [I_k; 0]`; the top block yields coordinates and
/// the bottom block is a membership test for the span.
#[derive(Clone, Debug)]
pub struct Coordinates {
    field: Field,
    k: usize,
    top: Vec<Vector>,
    bottom: Vec<Vector>,
}

impl Coordinates {
    pub fn new(field: Field, columns: &[Vector], ambient: usize) -> Result<Self> {
        let k = columns.len();
        let mut aug: Vec<Vector> = (0..ambient)
            .map(|i| {
                let mut row: Vector = columns.iter().map(|c| c[i].clone()).collect();
                row.extend(field.unit_vector(ambient, i));
                row
            })
            .collect();
        let pivots = rref(field, &mut aug, k + ambient);
        if pivots.iter().take_while(|&&p| p < k).count() != k {
            return Err(Error::Complex("coordinate family is linearly dependent".into()));
        }
        let mut top = Vec::with_capacity(k);
        let mut bottom = Vec::with_capacity(ambient - k);
        for (i, row) in aug.into_iter().enumerate() {
            let e = row[k..].to_vec();
            if i < k {
                top.push(e);
            } else {
                bottom.push(e);
            }
        }
        Ok(Coordinates {
            field,
            k,
            top,
            bottom,
        })
    }

    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    fn apply(&self, row: &[Scalar], v: &[Scalar]) -> Scalar {
        row.iter()
            .zip(v)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(self.field.zero(), |acc, (a, b)| self.field.add(&acc, &self.field.mul(a, b)))
    }

    /// Coordinates of `v`, or `None` when `v` lies outside the span.
    pub fn solve(&self, v: &[Scalar]) -> Option<Vector> {
        if self.bottom.iter().any(|row| !self.apply(row, v).is_zero()) {
            return None;
        }
        Some(self.top.iter().map(|row| self.apply(row, v)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Field::Rational.from_int(v)
    }

    #[test]
    fn parses_field_names() {
        assert_eq!(Field::parse("Q").unwrap(), Field::Rational);
        assert_eq!(Field::parse("F2").unwrap(), Field::Prime(2));
        assert_eq!(Field::parse("F_97").unwrap(), Field::Prime(97));
        assert!(Field::parse("F4").is_err());
        assert!(Field::parse("F101").is_err());
        assert!(Field::parse("R").is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = Field::Prime(7);
        for a in 1..7 {
            let x = f.from_int(a);
            assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
        }
        assert_eq!(f.from_int(-1), f.from_int(6));
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_int(4));
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // [[1,1],[1,-1]] has determinant -2.
        let rows = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        assert_eq!(rank(Field::Rational, &rows, 2), 2);
        let f2 = Field::Prime(2);
        let rows2: Vec<Vector> = vec![vec![f2.from_int(1), f2.from_int(1)], vec![f2.from_int(1), f2.from_int(-1)]];
        assert_eq!(rank(f2, &rows2, 2), 1);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = Field::Rational;
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let ker = kernel(f, &rows, 3);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for r in &rows {
                let dot = r.iter().zip(v).fold(q(0), |acc, (a, b)| acc + a * b);
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn subspace_insert_and_coordinates() {
        let f = Field::Rational;
        let mut s = Subspace::new(f, 3);
        assert!(s.insert(&[q(1), q(1), q(0)]));
        assert!(!s.insert(&[q(2), q(2), q(0)]));
        assert!(s.insert(&[q(0), q(1), q(1)]));
        assert!(s.contains(&[q(1), q(2), q(1)]));
        assert!(!s.contains(&[q(0), q(0), q(1)]));

        let cols = vec![vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]];
        let co = Coordinates::new(f, &cols, 3).unwrap();
        assert_eq!(co.solve(&[q(2), q(5), q(3)]).unwrap(), vec![q(2), q(3)]);
        assert!(co.solve(&[q(0), q(0), q(1)]).is_none());
    }
}
