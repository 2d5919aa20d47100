//! Invariants of the moment-angle complex `Z_K` read directly off `K`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::simplicial::{reduced_cohomology, CohomologyBasis, FullSubcomplex, Simplex, SimplicialComplex};

/// Largest `m` for which the `2^m` subset enumeration runs by default.
pub const DEFAULT_MAX_SUBSET_VERTICES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentAngleProfile {
    pub complex: SimplicialComplex,
    pub field: Field,
    pub cat_torus: usize,
    pub k_matrix: Vec<Vec<usize>>,
    pub tc_upper: usize,
    pub zk_dim: usize,
    pub zk_betti: Vec<usize>,
}

impl MomentAngleProfile {
    pub fn compute(k: &SimplicialComplex, field: Field, max_vertices: usize) -> Result<Self> {
        Ok(MomentAngleProfile {
            complex: k.clone(),
            field,
            cat_torus: cat_torus(k)?,
            k_matrix: k_matrix(k),
            tc_upper: tc_upper_bound(k),
            zk_dim: zk_dimension(k),
            zk_betti: zk_betti(k, field, max_vertices)?,
        })
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("# Moment-angle complex profile\n\n");
        out.push_str(&format!("- complex: `{}`\n", self.complex));
        out.push_str(&format!("- field: {}\n", self.field));
        out.push_str(&format!("- cat_T(Z_K) = |maximal simplices| = {}\n", self.cat_torus));
        out.push_str(&format!("- upper bound sum(k_ij + 1) = {}\n", self.tc_upper));
        out.push_str(&format!("- dim Z_K = {}\n", self.zk_dim));
        out.push_str(&format!(
            "- Betti numbers of Z_K: ({})\n\n",
            self.zk_betti.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        ));
        out.push_str("## k matrix (facets in lexicographic order)\n\n");
        for (facet, row) in self.complex.facets().iter().zip(&self.k_matrix) {
            out.push_str(&format!(
                "- {:?}: [{}]\n",
                facet,
                row.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            ));
        }
        out
    }
}

/// Equivariant category of `Z_K` under the torus: the number of maximal simplices.
pub fn cat_torus(k: &SimplicialComplex) -> Result<usize> {
    if k.is_empty() {
        return Err(Error::MomentAngle("the empty complex has no maximal simplices".into()));
    }
    Ok(k.facets().len())
}

/// `k_ij = |([m] - σ_i) ∩ ([m] - σ_j)| = m - |σ_i ∪ σ_j|` over lexicographically ordered facets.
pub fn k_matrix(k: &SimplicialComplex) -> Vec<Vec<usize>> {
    let facets = k.facets();
    facets
        .iter()
        .map(|a| facets.iter().map(|b| k.m() - union_len(a, b)).collect())
        .collect()
}

fn union_len(a: &[usize], b: &[usize]) -> usize {
    a.len() + b.iter().filter(|v| a.binary_search(v).is_err()).count()
}

/// `Σ_{i,j} (k_ij + 1)`.
pub fn tc_upper_bound(k: &SimplicialComplex) -> usize {
    k_matrix(k).iter().flatten().map(|&x| x + 1).sum()
}

/// Top cell dimension of `Z_K`: `max_σ 2|σ| + (m - |σ|)`.
pub fn zk_dimension(k: &SimplicialComplex) -> usize {
    (k.m() as isize + k.dim() + 1) as usize
}

/// `Z_K` is `T^m`-connected for every nonempty `K`.
pub fn g_connected_flag(k: &SimplicialComplex) -> Result<bool> {
    if k.is_empty() {
        return Err(Error::MomentAngle("no moment-angle space for the empty complex".into()));
    }
    Ok(true)
}

/// One summand of the Hochster decomposition: `J`, `K_J`, and `H̃^*(K_J)`.
#[derive(Clone, Debug)]
pub struct HochsterPiece {
    pub subset: Simplex,
    pub restriction: FullSubcomplex,
    pub cohomology: CohomologyBasis,
}

/// Reduced cohomology of every full subcomplex, indexed by the bitmask of `J`
/// (bit `i` set iff vertex `i + 1 ∈ J`).
pub fn hochster_pieces(k: &SimplicialComplex, field: Field, max_vertices: usize) -> Result<Vec<HochsterPiece>> {
    let m = k.m();
    if m > max_vertices || m >= 63 {
        return Err(Error::budget(
            "moment_angle",
            format!("2^{m} full subcomplexes exceed the configured limit of m <= {max_vertices}"),
        ));
    }
    (0u64..(1u64 << m))
        .map(|mask| {
            let subset: Simplex = (1..=m).filter(|v| mask >> (v - 1) & 1 == 1).collect();
            let restriction = k.full_subcomplex(&subset)?;
            let cohomology = reduced_cohomology(&restriction.complex, field);
            Ok(HochsterPiece {
                subset,
                restriction,
                cohomology,
            })
        })
        .collect()
}

/// Betti numbers of `Z_K`: `b_d = Σ_J rank H̃^{d - |J| - 1}(K_J)`.
pub fn zk_betti(k: &SimplicialComplex, field: Field, max_vertices: usize) -> Result<Vec<usize>> {
    let pieces = hochster_pieces(k, field, max_vertices)?;
    let mut betti = vec![0usize; zk_dimension(k) + 1];
    for piece in &pieces {
        for (l, rank) in piece.cohomology.ranks() {
            if rank == 0 {
                continue;
            }
            let d = (piece.subset.len() as isize + l + 1) as usize;
            if d >= betti.len() {
                betti.resize(d + 1, 0);
            }
            betti[d] += rank;
        }
    }
    Ok(betti)
}
