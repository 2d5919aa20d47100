use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

use super::{BasisElement, GradedRing, HochsterClass, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub name: String,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hochster: Option<HochsterClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    /// basis name -> coefficient written as an integer or `p/q`
    pub product: BTreeMap<String, String>,
}

/// JSON form of a graded ring. Exactly one of the three shapes is used:
/// an explicit basis with a table total on basis pairs, an exterior algebra on
/// named generators, or a tensor product of nested specs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    #[serde(default)]
    pub field: Field,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<BasisEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<ProductEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exterior: Option<Vec<BasisEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor: Option<Vec<RingSpec>>,
}

impl RingSpec {
    /// Builds the ring and runs the full axiom suite; violations reject the input.
    pub fn build(&self) -> Result<GradedRing> {
        match (&self.basis, &self.exterior, &self.tensor) {
            (Some(basis), None, None) => self.build_explicit(basis),
            (None, Some(gens), None) => {
                let gens: Vec<(String, usize)> = gens.iter().map(|g| (g.name.clone(), g.degree)).collect();
                GradedRing::exterior(self.field, &gens)
            }
            (None, None, Some(factors)) => {
                let mut ring = GradedRing::trivial(self.field);
                for factor in factors {
                    let mut f = factor.clone();
                    f.field = self.field;
                    ring = ring.tensor(&f.build()?)?;
                }
                Ok(ring)
            }
            _ => Err(Error::Ring(
                "ring spec needs exactly one of 'basis'+'table', 'exterior', or 'tensor'".into(),
            )),
        }
    }

    fn build_explicit(&self, entries: &[BasisEntry]) -> Result<GradedRing> {
        let field = self.field;
        let index: HashMap<&str, usize> = entries.iter().enumerate().map(|(i, b)| (b.name.as_str(), i)).collect();
        if index.len() != entries.len() {
            return Err(Error::Ring("duplicate basis names".into()));
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::Ring(format!("unknown basis element '{name}'")))
        };
        let unit = lookup(self.unit.as_deref().unwrap_or("1"))?;
        let n = entries.len();
        let mut table: Vec<Vec<Option<SparseVec>>> = vec![vec![None; n]; n];
        for entry in self.table.as_deref().unwrap_or_default() {
            let (i, j) = (lookup(&entry.left)?, lookup(&entry.right)?);
            let mut product: SparseVec = Vec::new();
            for (name, coeff) in &entry.product {
                let c = field.parse_scalar(coeff)?;
                if !num_traits::Zero::is_zero(&c) {
                    product.push((lookup(name)?, c));
                }
            }
            product.sort_by_key(|e| e.0);
            if table[i][j].replace(product).is_some() {
                return Err(Error::Ring(format!("product {}*{} listed twice", entry.left, entry.right)));
            }
        }
        let mut full = Vec::with_capacity(n);
        for (i, row) in table.into_iter().enumerate() {
            let mut out = Vec::with_capacity(n);
            for (j, cell) in row.into_iter().enumerate() {
                out.push(cell.ok_or_else(|| {
                    Error::Ring(format!("table is missing {}*{}", entries[i].name, entries[j].name))
                })?);
            }
            full.push(out);
        }
        let basis = entries
            .iter()
            .map(|b| BasisElement {
                name: b.name.clone(),
                degree: b.degree,
                hochster: b.hochster.clone(),
            })
            .collect();
        GradedRing::checked(field, basis, full, unit)
    }

    /// Explicit spec with the complete table; builds back to an identical ring.
    pub fn from_ring(ring: &GradedRing) -> Self {
        let names: Vec<&str> = ring.basis.iter().map(|b| b.name.as_str()).collect();
        let mut table = Vec::new();
        for i in 0..ring.dim() {
            for j in 0..ring.dim() {
                table.push(ProductEntry {
                    left: names[i].to_string(),
                    right: names[j].to_string(),
                    product: ring.table[i][j]
                        .iter()
                        .map(|(k, c)| (names[*k].to_string(), c.to_string()))
                        .collect(),
                });
            }
        }
        RingSpec {
            field: ring.field,
            basis: Some(
                ring.basis
                    .iter()
                    .map(|b| BasisEntry {
                        name: b.name.clone(),
                        degree: b.degree,
                        hochster: b.hochster.clone(),
                    })
                    .collect(),
            ),
            unit: Some(names[ring.unit].to_string()),
            table: Some(table),
            exterior: None,
            tensor: None,
        }
    }
}
