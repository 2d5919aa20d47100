//! Small named complexes and actions used by the test suites and the CLI's `--fixture` lookups.

use crate::orbit::ActionSpec;
use crate::simplicial::SimplicialComplex;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub complex: SimplicialComplex,
    /// Triangulation of a sphere (so `Z_K` satisfies Poincaré duality).
    pub sphere: bool,
}

fn k(m: usize, facets: &[&[usize]]) -> SimplicialComplex {
    SimplicialComplex::new(m, facets.iter().map(|f| f.to_vec())).expect("fixture complexes are valid")
}

/// The corpus: nonempty complexes with `m ≤ 6`.
pub fn complexes() -> Vec<Fixture> {
    let f = |name, complex, sphere| Fixture { name, complex, sphere };
    vec![
        f("point", SimplicialComplex::full_simplex(1), false),
        f("two_vertices", k(2, &[&[1], &[2]]), true),
        f("edge", SimplicialComplex::full_simplex(2), false),
        f("three_points", k(3, &[&[1], &[2], &[3]]), false),
        f("boundary_triangle", SimplicialComplex::simplex_boundary(3), true),
        f("triangle", SimplicialComplex::full_simplex(3), false),
        f("path3", k(3, &[&[1, 2], &[2, 3]]), false),
        f("edge_and_point", k(3, &[&[1, 2], &[3]]), false),
        f("four_cycle", SimplicialComplex::cycle(4), true),
        f("path4", k(4, &[&[1, 2], &[2, 3], &[3, 4]]), false),
        f("two_edges", k(4, &[&[1, 2], &[3, 4]]), false),
        f("four_points", k(4, &[&[1], &[2], &[3], &[4]]), false),
        f("boundary_tetrahedron", SimplicialComplex::simplex_boundary(4), true),
        f("star4", k(4, &[&[1, 2], &[1, 3], &[1, 4]]), false),
        f("two_triangles_on_edge", k(4, &[&[1, 2, 3], &[2, 3, 4]]), false),
        f("triangle_and_edge", k(4, &[&[1, 2, 3], &[3, 4]]), false),
        f("filled_square", k(4, &[&[1, 2, 3], &[1, 3, 4]]), false),
        f("five_cycle", SimplicialComplex::cycle(5), true),
        f("five_cycle_chord", k(5, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[1, 5], &[1, 3]]), false),
        f("triangle_and_two_points", k(5, &[&[1, 2, 3], &[4], &[5]]), false),
        f("path5", k(5, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5]]), false),
        f("bowtie", k(5, &[&[1, 2, 3], &[3, 4, 5]]), false),
        f("four_cycle_with_ghost", k(5, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]), false),
        f("boundary_4_simplex", SimplicialComplex::simplex_boundary(5), true),
        f("six_cycle", SimplicialComplex::cycle(6), true),
        f(
            "octahedron",
            k(
                6,
                &[
                    &[1, 2, 3],
                    &[1, 2, 6],
                    &[1, 5, 3],
                    &[1, 5, 6],
                    &[4, 2, 3],
                    &[4, 2, 6],
                    &[4, 5, 3],
                    &[4, 5, 6],
                ],
            ),
            true,
        ),
        f("two_triangles", k(6, &[&[1, 2, 3], &[4, 5, 6]]), false),
        f(
            "two_hollow_triangles",
            k(6, &[&[1, 2], &[2, 3], &[1, 3], &[4, 5], &[5, 6], &[4, 6]]),
            false,
        ),
        f(
            "projective_plane",
            k(
                6,
                &[
                    &[1, 2, 3],
                    &[1, 3, 4],
                    &[1, 4, 5],
                    &[1, 5, 6],
                    &[1, 2, 6],
                    &[2, 3, 5],
                    &[3, 4, 6],
                    &[2, 4, 5],
                    &[3, 5, 6],
                    &[2, 4, 6],
                ],
            ),
            false,
        ),
    ]
}

pub fn complex(name: &str) -> Option<SimplicialComplex> {
    complexes().into_iter().find(|f| f.name == name).map(|f| f.complex)
}

#[derive(Clone, Debug)]
pub struct ActionFixture {
    pub name: &'static str,
    pub action: ActionSpec,
}

/// Finite simplicial actions on small complexes.
pub fn actions() -> Vec<ActionFixture> {
    let a = |name, generators: &[&[usize]], complex| ActionFixture {
        name,
        action: ActionSpec {
            generators: generators.iter().map(|g| g.to_vec()).collect(),
            complex,
        },
    };
    let two = k(2, &[&[1], &[2]]);
    vec![
        a("reflection_c4", &[&[1, 4, 3, 2]], SimplicialComplex::cycle(4)),
        a("antipodal_c4", &[&[3, 4, 1, 2]], SimplicialComplex::cycle(4)),
        a("antipodal_c8", &[&[5, 6, 7, 8, 1, 2, 3, 4]], SimplicialComplex::cycle(8)),
        a("rotation_c4", &[&[2, 3, 4, 1]], SimplicialComplex::cycle(4)),
        a("dihedral_c4", &[&[2, 3, 4, 1], &[1, 4, 3, 2]], SimplicialComplex::cycle(4)),
        a("trivial_two_points", &[&[1, 2]], two.clone()),
        a("swap_two_points", &[&[2, 1]], two),
        a("edge_swap", &[&[2, 1]], SimplicialComplex::full_simplex(2)),
        a("rotation_triangle", &[&[2, 3, 1]], SimplicialComplex::simplex_boundary(3)),
        a("symmetric_triangle", &[&[2, 1, 3], &[2, 3, 1]], SimplicialComplex::simplex_boundary(3)),
    ]
}

pub fn action(name: &str) -> Option<ActionSpec> {
    actions().into_iter().find(|f| f.name == name).map(|f| f.action)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shape() {
        let all = complexes();
        assert!(all.len() >= 25);
        assert!(all.iter().all(|f| f.complex.m() <= 6 && !f.complex.is_empty()));
        let mut names: Vec<_> = all.iter().map(|f| f.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), all.len());
    }

    #[test]
    fn projective_plane_is_a_closed_surface() {
        let rp2 = complex("projective_plane").unwrap();
        let mut edges = std::collections::BTreeMap::new();
        for f in rp2.facets() {
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                *edges.entry((f[i], f[j])).or_insert(0) += 1;
            }
        }
        assert_eq!(edges.len(), 15);
        assert!(edges.values().all(|&c| c == 2));
        assert_eq!(rp2.euler_characteristic(), 1);
    }
}
