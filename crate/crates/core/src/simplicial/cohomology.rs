use std::collections::HashMap;

use crate::field::{kernel, Coordinates, Field, Subspace, Vector};

use super::{Simplex, SimplicialComplex};

/// Reduced cohomology in one degree, with cocycle representatives of a basis.
#[derive(Clone, Debug)]
pub struct DegreeCohomology {
    pub degree: isize,
    pub rank: usize,
    pub representatives: Vec<Vector>,
    coords: Coordinates,
}

/// `H̃^l(K)` for `l = -1 ..= dim K`. Cochains in degree `l` are vectors over the
/// `l`-simplices in the order of [`CohomologyBasis::simplices`]; degree `-1` has the
/// single empty simplex.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    pub field: Field,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    degrees: Vec<DegreeCohomology>,
}

impl CohomologyBasis {
    fn slot(l: isize) -> Option<usize> {
        usize::try_from(l + 1).ok()
    }

    pub fn degree(&self, l: isize) -> Option<&DegreeCohomology> {
        Self::slot(l).and_then(|i| self.degrees.get(i))
    }

    /// Reduced Betti number; zero outside `-1 ..= dim K`.
    pub fn rank(&self, l: isize) -> usize {
        self.degree(l).map_or(0, |d| d.rank)
    }

    /// `(l, rank)` for every computed degree.
    pub fn ranks(&self) -> Vec<(isize, usize)> {
        self.degrees.iter().map(|d| (d.degree, d.rank)).collect()
    }

    pub fn total_rank(&self) -> usize {
        self.degrees.iter().map(|d| d.rank).sum()
    }

    pub fn simplices(&self, l: isize) -> &[Simplex] {
        Self::slot(l).and_then(|i| self.simplices.get(i)).map_or(&[], Vec::as_slice)
    }

    pub fn simplex_index(&self, l: isize, s: &[usize]) -> Option<usize> {
        Self::slot(l)
            .and_then(|i| self.index.get(i))
            .and_then(|m| m.get(s).copied())
    }

    /// Coordinates of a cocycle's class over the representatives; `None` if `cochain`
    /// is not a cocycle.
    pub fn class_of(&self, l: isize, cochain: &[crate::field::Scalar]) -> Option<Vector> {
        let d = self.degree(l)?;
        let mut x = d.coords.solve(cochain)?;
        x.truncate(d.rank);
        Some(x)
    }
}

/// Matrix of `δ^l : C^l -> C^{l+1}` as rows over `(l+1)`-simplices, using
/// `(δf)(τ) = Σ_i (-1)^i f(τ \ τ_i)`.
fn coboundary(field: Field, lower: &HashMap<Simplex, usize>, lower_len: usize, upper: &[Simplex]) -> Vec<Vector> {
    upper
        .iter()
        .map(|tau| {
            let mut row = field.zero_vector(lower_len);
            for i in 0..tau.len() {
                let mut face = tau.clone();
                face.remove(i);
                let col = lower[&face];
                row[col] = field.sign(i % 2 == 1);
            }
            row
        })
        .collect()
}

/// Exact reduced cohomology by Gaussian elimination on coboundary matrices.
/// The empty complex has `H̃^{-1}` of rank one.
pub fn reduced_cohomology(k: &SimplicialComplex, field: Field) -> CohomologyBasis {
    let mut simplices = vec![vec![Vec::new()]];
    simplices.extend(k.simplices_by_dim());
    let index: Vec<HashMap<Simplex, usize>> = simplices
        .iter()
        .map(|layer| layer.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
        .collect();

    let deltas: Vec<Vec<Vector>> = (0..simplices.len())
        .map(|slot| match simplices.get(slot + 1) {
            Some(upper) => coboundary(field, &index[slot], simplices[slot].len(), upper),
            None => Vec::new(),
        })
        .collect();

    let mut degrees = Vec::with_capacity(simplices.len());
    for slot in 0..simplices.len() {
        let dim_c = simplices[slot].len();
        let cocycles = kernel(field, &deltas[slot], dim_c);

        let mut boundaries = Subspace::new(field, dim_c);
        if slot > 0 {
            // columns of δ^{l-1} span the coboundaries
            let prev = &deltas[slot - 1];
            for c in 0..simplices[slot - 1].len() {
                let col: Vector = prev.iter().map(|row| row[c].clone()).collect();
                boundaries.insert(&col);
            }
        }
        let boundary_basis: Vec<Vector> = boundaries.basis().to_vec();
        let mut span = boundaries;
        let representatives: Vec<Vector> = cocycles.into_iter().filter(|z| span.insert(z)).collect();

        let family: Vec<Vector> = representatives.iter().chain(&boundary_basis).cloned().collect();
        let coords = Coordinates::new(field, &family, dim_c).expect("independent by construction");
        degrees.push(DegreeCohomology {
            degree: slot as isize - 1,
            rank: representatives.len(),
            representatives,
            coords,
        });
    }

    CohomologyBasis {
        field,
        simplices,
        index,
        degrees,
    }
}
