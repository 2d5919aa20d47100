use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::moment_angle::{hochster_pieces, HochsterPiece};
use crate::simplicial::SimplicialComplex;

use super::{BasisElement, GradedRing, HochsterClass, SparseVec};

pub const DEFAULT_MAX_RING_VERTICES: usize = 12;

fn mask_of(subset: &[usize]) -> u64 {
    subset.iter().fold(0, |acc, v| acc | 1 << (v - 1))
}

/// `#{x ∈ J : x < v}`
fn rank_in(j: &[usize], v: usize) -> usize {
    j.partition_point(|&x| x < v)
}

/// `(-1)^{Σ_{v ∈ σ} rank_J(v)}`: the sign identifying the cochain `χ_σ` on `K_J` with the
/// Koszul monomial `u_{J∖σ} v_σ`.
fn koszul_sign(sigma: &[usize], j: &[usize]) -> bool {
    sigma.iter().map(|&v| rank_in(j, v)).sum::<usize>() % 2 == 1
}

/// Shuffle sign `(-1)^{#{(a, b) ∈ A × B : a > b}}` of the exterior product `u_A u_B`.
fn shuffle_sign(a: &[usize], b: &[usize]) -> bool {
    a.iter().map(|&x| rank_in(b, x)).sum::<usize>() % 2 == 1
}

fn minus(set: &[usize], remove: &[usize]) -> Vec<usize> {
    set.iter().copied().filter(|v| remove.binary_search(v).is_err()).collect()
}

/// `H^*(Z_K)` with basis the Hochster classes `H̃^l(K_J)` and products computed at cochain
/// level, then reduced to the stored basis by exact linear solves.
///
/// For `J_1 ∩ J_2 = ∅` and `ρ = σ ⊔ τ` with `σ ⊆ J_1`, `τ ⊆ J_2`,
/// `(α·β)(ρ) = s(σ,J_1) s(τ,J_2) s(ρ,J) ε(J_1∖σ, J_2∖τ) α(σ) β(τ)` where `s` is
/// [`koszul_sign`] and `ε` is [`shuffle_sign`]; overlapping `J`s multiply to zero.
pub fn build_ring(k: &SimplicialComplex, field: Field, max_vertices: usize) -> Result<GradedRing> {
    if k.m() > max_vertices {
        return Err(Error::budget(
            "cohomology_ring",
            format!("m = {} exceeds the ring limit m <= {max_vertices}", k.m()),
        ));
    }
    let pieces = hochster_pieces(k, field, max_vertices)?;

    let mut classes: Vec<HochsterClass> = pieces
        .iter()
        .flat_map(|p| {
            p.cohomology.ranks().into_iter().flat_map(move |(l, rank)| {
                (0..rank).map(move |index| HochsterClass {
                    subset: p.subset.clone(),
                    l,
                    index,
                })
            })
        })
        .collect();
    classes.sort_by(|a, b| {
        (a.total_degree(), a.subset.len(), &a.subset, a.l, a.index).cmp(&(
            b.total_degree(),
            b.subset.len(),
            &b.subset,
            b.l,
            b.index,
        ))
    });
    let position: HashMap<(u64, isize, usize), usize> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| ((mask_of(&c.subset), c.l, c.index), i))
        .collect();

    let n = classes.len();
    let mut table = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            table[a][b] = product(field, &pieces, &classes[a], &classes[b], &position)?;
        }
    }

    let basis = classes
        .into_iter()
        .map(|c| BasisElement {
            name: if c.subset.is_empty() { "1".to_string() } else { c.label() },
            degree: c.total_degree(),
            hochster: Some(c),
        })
        .collect();
    let unit = position[&(0, -1, 0)];
    Ok(GradedRing::from_parts(field, basis, table, unit))
}

fn product(
    field: Field,
    pieces: &[HochsterPiece],
    a: &HochsterClass,
    b: &HochsterClass,
    position: &HashMap<(u64, isize, usize), usize>,
) -> Result<SparseVec> {
    let (ma, mb) = (mask_of(&a.subset), mask_of(&b.subset));
    if ma & mb != 0 {
        return Ok(Vec::new());
    }
    let (pa, pb) = (&pieces[ma as usize], &pieces[mb as usize]);
    let target = &pieces[(ma | mb) as usize];
    let l = a.l + b.l + 1;
    let Some(degree) = target.cohomology.degree(l) else {
        return Ok(Vec::new());
    };
    if degree.rank == 0 {
        return Ok(Vec::new());
    }
    let alpha = &pa.cohomology.degree(a.l).expect("class degree").representatives[a.index];
    let beta = &pb.cohomology.degree(b.l).expect("class degree").representatives[b.index];
    let j = &target.subset;

    let simplices = target.cohomology.simplices(l);
    let mut cochain: Vec<Scalar> = field.zero_vector(simplices.len());
    for (slot, local_rho) in simplices.iter().enumerate() {
        let rho = target.restriction.to_original(local_rho);
        let sigma: Vec<usize> = rho.iter().copied().filter(|v| ma >> (v - 1) & 1 == 1).collect();
        if sigma.len() as isize != a.l + 1 {
            continue;
        }
        let tau = minus(&rho, &sigma);
        let sigma_local = pa.restriction.to_local(&sigma).expect("σ ⊆ J_1");
        let tau_local = pb.restriction.to_local(&tau).expect("τ ⊆ J_2");
        let x = &alpha[pa.cohomology.simplex_index(a.l, &sigma_local).expect("σ ∈ K_{J_1}")];
        let y = &beta[pb.cohomology.simplex_index(b.l, &tau_local).expect("τ ∈ K_{J_2}")];
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let negative = koszul_sign(&sigma, &a.subset)
            ^ koszul_sign(&tau, &b.subset)
            ^ koszul_sign(&rho, j)
            ^ shuffle_sign(&minus(&a.subset, &sigma), &minus(&b.subset, &tau));
        cochain[slot] = field.mul(&field.sign(negative), &field.mul(x, y));
    }

    let coords = target
        .cohomology
        .class_of(l, &cochain)
        .ok_or_else(|| Error::Ring(format!("product {} * {} is not a cocycle", a.label(), b.label())))?;
    let mj = ma | mb;
    Ok(coords
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(index, c)| (position[&(mj, l, index)], c))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points_is_cohomology_of_s3() {
        let k = SimplicialComplex::new(2, [vec![1], vec![2]]).unwrap();
        let r = build_ring(&k, Field::Rational, 12).unwrap();
        assert_eq!(r.poincare_series(), vec![1, 0, 0, 1]);
        assert!(r.product(1, 1).is_empty());
    }

    #[test]
    fn four_cycle_is_cohomology_of_s3_times_s3() {
        let r = build_ring(&SimplicialComplex::cycle(4), Field::Rational, 12).unwrap();
        assert_eq!(r.poincare_series(), vec![1, 0, 0, 2, 0, 0, 1]);
        let (a, b, t) = (1, 2, 3);
        assert_eq!(r.degree(t), 6);
        assert!(r.product(a, a).is_empty());
        assert!(r.product(b, b).is_empty());
        let ab = r.product(a, b);
        assert_eq!(ab.len(), 1);
        assert_eq!(ab[0].0, t);
        assert_eq!(r.product(b, a)[0].1, Field::Rational.neg(&ab[0].1));
        assert!(r.axiom_violations().is_empty());
    }

    #[test]
    fn full_simplex_ring_is_the_field() {
        let r = build_ring(&SimplicialComplex::full_simplex(3), Field::Prime(2), 12).unwrap();
        assert_eq!(r.dim(), 1);
    }

    #[test]
    fn odd_sphere_times_odd_sphere_anticommutes() {
        // ∂Δ² * ∂Δ¹ gives Z_K = S^5 × S^3; the degree 5 and 3 classes must anticommute
        let pair = SimplicialComplex::new(2, [vec![1], vec![2]]).unwrap();
        let k = SimplicialComplex::simplex_boundary(3).join(&pair);
        let r = build_ring(&k, Field::Rational, 12).unwrap();
        assert_eq!(r.poincare_series(), vec![1, 0, 0, 1, 0, 1, 0, 0, 1]);
        assert!(r.axiom_violations().is_empty());
        let (x3, x5) = (1, 2);
        assert!(!r.product(x3, x5).is_empty());
    }

    #[test]
    fn budget() {
        let k = SimplicialComplex::cycle(13);
        assert!(build_ring(&k, Field::Rational, 12).unwrap_err().is_budget());
    }
}
