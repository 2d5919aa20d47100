mod common;

use common::{brute_zcl, cellular_betti, field, tensor_mul};
use eqtc::cohomology_ring::{build_ring, cup_length, zcl, zcl_kernel_basis, ZclBudget, DEFAULT_MAX_RING_VERTICES};
use eqtc::fixtures;
use eqtc::moment_angle::{zk_betti, DEFAULT_MAX_SUBSET_VERTICES};
use eqtc::SimplicialComplex;

fn betti(k: &SimplicialComplex, p: Option<i64>) -> Vec<usize> {
    let mut b = zk_betti(k, field(p), DEFAULT_MAX_SUBSET_VERTICES).unwrap();
    while b.len() > 1 && b.last() == Some(&0) {
        b.pop();
    }
    b
}

fn trimmed(mut b: Vec<usize>) -> Vec<usize> {
    while b.len() > 1 && b.last() == Some(&0) {
        b.pop();
    }
    b
}

#[test]
fn hochster_matches_cellular_chains() {
    for fx in fixtures::complexes() {
        for p in [None, Some(2), Some(3)] {
            assert_eq!(betti(&fx.complex, p), trimmed(cellular_betti(&fx.complex, p)), "{} over {p:?}", fx.name);
        }
    }
}

#[test]
fn projective_plane_sees_torsion() {
    // RP^2 has H~^2 = Z/2, so Z_K gains classes mod 2 that are invisible rationally
    let k = fixtures::complex("projective_plane").unwrap();
    let q: usize = betti(&k, None).iter().sum();
    let f2: usize = betti(&k, Some(2)).iter().sum();
    assert!(f2 > q);
}

#[test]
fn joins_give_products() {
    let pieces = [
        fixtures::complex("two_vertices").unwrap(),
        fixtures::complex("boundary_triangle").unwrap(),
        fixtures::complex("path3").unwrap(),
        fixtures::complex("edge_and_point").unwrap(),
    ];
    for a in &pieces {
        for b in &pieces {
            let (ba, bb) = (betti(a, None), betti(b, None));
            let mut expected = vec![0; ba.len() + bb.len() - 1];
            for (i, x) in ba.iter().enumerate() {
                for (j, y) in bb.iter().enumerate() {
                    expected[i + j] += x * y;
                }
            }
            assert_eq!(betti(&a.join(b), None), trimmed(expected));
        }
    }
}

#[test]
fn euler_characteristic_vanishes_off_the_full_simplex() {
    // every cell with a circle letter cancels against the one with a point there
    for fx in fixtures::complexes() {
        let chi: i64 = betti(&fx.complex, None)
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        let full: Vec<usize> = (1..=fx.complex.m()).collect();
        assert_eq!(chi, i64::from(fx.complex.contains(&full)), "{}", fx.name);
    }
}

#[test]
fn sphere_fixtures_satisfy_duality() {
    for fx in fixtures::complexes().into_iter().filter(|f| f.sphere) {
        let b = betti(&fx.complex, None);
        let mut r = b.clone();
        r.reverse();
        assert_eq!(b, r, "{}", fx.name);
    }
}

#[test]
fn ring_axioms_hold_on_the_corpus() {
    for fx in fixtures::complexes() {
        for p in [None, Some(2)] {
            let ring = build_ring(&fx.complex, field(p), DEFAULT_MAX_RING_VERTICES).unwrap();
            let n = ring.dim();
            let f = ring.field();
            for i in 0..n {
                for j in 0..n {
                    let ij = ring.product(i, j);
                    for (t, _) in ij {
                        assert_eq!(ring.degree(*t), ring.degree(i) + ring.degree(j), "{}", fx.name);
                    }
                    let sign = f.sign(ring.degree(i) * ring.degree(j) % 2 == 1);
                    let ji: Vec<_> = ring.product(j, i).iter().map(|(t, c)| (*t, f.mul(c, &sign))).collect();
                    assert_eq!(*ij, ji, "{}: commutativity of {i}, {j}", fx.name);
                    let (a, b) = (&ring.basis()[i].hochster, &ring.basis()[j].hochster);
                    if let (Some(a), Some(b)) = (a, b) {
                        if a.subset.iter().any(|v| b.subset.contains(v)) {
                            assert!(ij.is_empty(), "{}: overlapping J must multiply to zero", fx.name);
                        }
                    }
                }
            }
            for a in 0..n {
                for b in 0..n {
                    let ab = ring.mul(&ring.basis_vector(a), &ring.basis_vector(b));
                    for c in 0..n {
                        let bc = ring.mul(&ring.basis_vector(b), &ring.basis_vector(c));
                        assert_eq!(
                            ring.mul(&ab, &ring.basis_vector(c)),
                            ring.mul(&ring.basis_vector(a), &bc),
                            "{}: associativity",
                            fx.name
                        );
                    }
                }
            }
            assert!(ring.axiom_violations().is_empty(), "{}", fx.name);
        }
    }
}

#[test]
fn zcl_matches_brute_force_products() {
    let budget = ZclBudget::default();
    let mut checked = 0;
    for fx in fixtures::complexes() {
        for p in [None, Some(2)] {
            let ring = build_ring(&fx.complex, field(p), DEFAULT_MAX_RING_VERTICES).unwrap();
            if ring.dim() > 8 {
                continue;
            }
            let fast = zcl(&ring, 2, &budget).unwrap();
            let brute = brute_zcl(&ring, 4);
            assert_eq!(fast.min(4), brute, "{} over {p:?}", fx.name);
            checked += 1;
        }
    }
    assert!(checked >= 10);
}

#[test]
fn kernel_elements_multiply_to_zero() {
    let ring = build_ring(&SimplicialComplex::cycle(4), field(None), DEFAULT_MAX_RING_VERTICES).unwrap();
    let d = ring.dim();
    let f = ring.field();
    for v in zcl_kernel_basis(&ring, 2) {
        let mut image = f.zero_vector(d);
        for (x, c) in &v {
            for (k, e) in ring.product(x / d, x % d) {
                image[*k] = f.add(&image[*k], &f.mul(c, e));
            }
        }
        assert!(image.iter().all(|x| *x == f.zero()));
    }
    // 1⊗x - x⊗1 squared is -2 x⊗x for odd x; it cannot vanish over Q
    let gens = zcl_kernel_basis(&ring, 2);
    assert!(gens.iter().any(|g| !tensor_mul(&ring, g, g).is_empty()) || cup_length(&ring) == 0);
}

#[test]
fn sanity_bounds_on_zcl() {
    let budget = ZclBudget::default();
    for fx in fixtures::complexes() {
        let ring = build_ring(&fx.complex, field(None), DEFAULT_MAX_RING_VERTICES).unwrap();
        let Ok(z2) = zcl(&ring, 2, &budget) else { continue };
        assert!(z2 <= 2 * cup_length(&ring), "{}", fx.name);
        if let Ok(z3) = zcl(&ring, 3, &budget) {
            assert!(z2 <= z3, "{}", fx.name);
        }
    }
}
