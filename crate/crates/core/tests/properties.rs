mod common;

use common::{arb_complex, cellular_betti, field};
use eqtc::cohomology_ring::{build_ring, zcl, ZclBudget, DEFAULT_MAX_RING_VERTICES};
use eqtc::fixtures;
use eqtc::moment_angle::{cat_torus, tc_upper_bound, zk_betti, DEFAULT_MAX_SUBSET_VERTICES};
use eqtc::orbit::{GAction, OrbitBudget};
use eqtc::simplicial::reduced_cohomology;
use eqtc::SimplicialComplex;
use proptest::prelude::*;

fn trimmed(mut b: Vec<usize>) -> Vec<usize> {
    while b.len() > 1 && b.last() == Some(&0) {
        b.pop();
    }
    b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn betti_numbers_agree_with_cells(k in arb_complex(5)) {
        let hochster = trimmed(zk_betti(&k, field(None), DEFAULT_MAX_SUBSET_VERTICES).unwrap());
        prop_assert_eq!(hochster, trimmed(cellular_betti(&k, None)));
    }

    #[test]
    fn join_is_product(a in arb_complex(3), b in arb_complex(3)) {
        let ba = trimmed(zk_betti(&a, field(None), 20).unwrap());
        let bb = trimmed(zk_betti(&b, field(None), 20).unwrap());
        let mut expected = vec![0; ba.len() + bb.len() - 1];
        for (i, x) in ba.iter().enumerate() {
            for (j, y) in bb.iter().enumerate() {
                expected[i + j] += x * y;
            }
        }
        prop_assert_eq!(trimmed(zk_betti(&a.join(&b), field(None), 20).unwrap()), trimmed(expected));
    }

    #[test]
    fn euler_characteristic_of_complex(k in arb_complex(5)) {
        // reduced Euler characteristic equals the alternating sum of reduced Betti numbers
        let h = reduced_cohomology(&k, field(None));
        let alt: i64 = h.ranks().iter().map(|&(l, r)| if l.rem_euclid(2) == 0 { r as i64 } else { -(r as i64) }).sum();
        prop_assert_eq!(alt, k.euler_characteristic() - 1);
    }

    #[test]
    fn category_bounds(k in arb_complex(5)) {
        prop_assert!(tc_upper_bound(&k) >= cat_torus(&k).unwrap());
    }

    #[test]
    fn zcl_grows_with_n(k in arb_complex(3)) {
        let ring = build_ring(&k, field(None), DEFAULT_MAX_RING_VERTICES).unwrap();
        let budget = ZclBudget::default();
        if let (Ok(a), Ok(b)) = (zcl(&ring, 2, &budget), zcl(&ring, 3, &budget)) {
            prop_assert!(a <= b);
        }
    }

    #[test]
    fn ring_axioms_on_random_complexes(k in arb_complex(4)) {
        for p in [None, Some(2)] {
            let ring = build_ring(&k, field(p), DEFAULT_MAX_RING_VERTICES).unwrap();
            prop_assert!(ring.axiom_violations().is_empty());
        }
    }
}

fn all_actions() -> Vec<(&'static str, GAction)> {
    fixtures::actions()
        .into_iter()
        .map(|f| (f.name, GAction::from_spec(f.action, OrbitBudget::default()).unwrap()))
        .collect()
}

#[test]
fn reachability_respects_isotropy() {
    for (name, action) in all_actions() {
        let simplices = action.simplices().to_vec();
        for s in &simplices {
            for t in &simplices {
                if action.orbit_reachable(s, t).unwrap() {
                    let (hs, ht) = (action.isotropy(s), action.isotropy(t));
                    assert!(action.group().is_subconjugate(&hs, &ht), "{name}: {s:?} -> {t:?}");
                }
            }
        }
    }
}

#[test]
fn subdivision_keeps_orbit_verdicts() {
    for (name, action) in all_actions() {
        let finer = action.subdivide().unwrap();
        assert_eq!(
            action.minimal_orbit_classes().unwrap().0,
            finer.minimal_orbit_classes().unwrap().0,
            "{name}"
        );
        for strict in [false, true] {
            assert_eq!(
                action.is_g_connected(strict).unwrap(),
                finer.is_g_connected(strict).unwrap(),
                "{name}"
            );
        }
        assert_eq!(action.is_free(), finer.is_free(), "{name}");
    }
}

#[test]
fn quotients_of_free_circle_actions_are_circles() {
    for (name, action) in all_actions() {
        let circle = |k: &SimplicialComplex| {
            k.dim() == 1 && reduced_cohomology(k, field(None)).ranks().into_iter().filter(|&(_, r)| r > 0).eq([(1, 1)])
        };
        if !action.is_free() || !circle(action.complex()) {
            continue;
        }
        let q = action.quotient_complex().unwrap();
        assert!(circle(&q.complex), "{name}");
    }
}

#[test]
fn empty_complex_has_the_empty_class() {
    let h = reduced_cohomology(&SimplicialComplex::empty(0), field(None));
    assert_eq!(h.rank(-1), 1);
    assert_eq!(h.total_rank(), 1);
}
