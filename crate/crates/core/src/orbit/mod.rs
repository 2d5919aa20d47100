//! Finite simplicial group actions: isotropy, fixed subcomplexes, G-connectivity,
//! orbit classes with their Hasse diagram, and quotient complexes.

mod diagram;
mod group;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplicial::{Simplex, SimplicialComplex};

pub use diagram::{OrbitClass, OrbitDiagram};
pub use group::{
    apply, check_perm, compose, identity, inverse, Perm, PermGroup, Subgroup, DEFAULT_MAX_GROUP_ORDER,
    DEFAULT_MAX_SUBGROUPS,
};

/// Barycentric subdivisions attempted before an action is declared irregular.
pub const MAX_SUBDIVISIONS: usize = 2;

/// Input form: one-line permutation images plus the complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSpec {
    pub generators: Vec<Perm>,
    pub complex: SimplicialComplex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitBudget {
    pub max_group_order: usize,
    pub max_subgroups: usize,
}

impl Default for OrbitBudget {
    fn default() -> Self {
        OrbitBudget {
            max_group_order: DEFAULT_MAX_GROUP_ORDER,
            max_subgroups: DEFAULT_MAX_SUBGROUPS,
        }
    }
}

/// Verdict on G-connectivity with the subgroup that breaks it, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GConnectivity {
    pub connected: bool,
    /// A subgroup whose fixed set is disconnected (or empty, in strict mode).
    pub witness: Option<Subgroup>,
    /// A subgroup whose fixed set is nonempty and disconnected.
    pub nonempty_disconnected: Option<Subgroup>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub complex: SimplicialComplex,
    /// `vertex_orbits[i - 1]` lists the vertices of the (possibly subdivided) complex over vertex `i`.
    pub vertex_orbits: Vec<Vec<usize>>,
    /// Extra subdivisions needed before the orbit map became simplicial.
    pub subdivisions: usize,
}

/// A finite group acting on a complex through vertex permutations.
#[derive(Clone, Debug)]
pub struct GAction {
    group: PermGroup,
    complex: SimplicialComplex,
    regular: bool,
    subdivisions: usize,
    simplices: Vec<Simplex>,
    simplex_index: HashMap<Simplex, usize>,
    budget: OrbitBudget,
}

impl GAction {
    /// Checks that the group preserves `K` and subdivides (at most twice) until the
    /// action is regular.
    pub fn validate(generators: Vec<Perm>, complex: SimplicialComplex, budget: OrbitBudget) -> Result<Self> {
        let group = PermGroup::generate(complex.m(), generators, budget.max_group_order)?;
        for g in group.elements() {
            for f in complex.facets() {
                let image = apply(g, f);
                if !complex.facets().contains(&image) {
                    return Err(Error::Orbit(format!(
                        "permutation {g:?} maps facet {f:?} to {image:?}, which is not a facet"
                    )));
                }
            }
        }
        let mut action = Self::assemble(group, complex, 0, budget);
        while !action.regular {
            if action.subdivisions == MAX_SUBDIVISIONS {
                return Err(Error::Orbit(format!(
                    "action is still irregular after {MAX_SUBDIVISIONS} barycentric subdivisions"
                )));
            }
            action = action.subdivide()?;
        }
        Ok(action)
    }

    pub fn from_spec(spec: ActionSpec, budget: OrbitBudget) -> Result<Self> {
        Self::validate(spec.generators, spec.complex, budget)
    }

    fn assemble(group: PermGroup, complex: SimplicialComplex, subdivisions: usize, budget: OrbitBudget) -> Self {
        let simplices = complex.simplices();
        let simplex_index = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let regular = group.elements().iter().all(|g| {
            simplices
                .iter()
                .all(|s| apply(g, s) != *s || s.iter().all(|&v| g[v - 1] == v))
        });
        GAction {
            group,
            complex,
            regular,
            subdivisions,
            simplices,
            simplex_index,
            budget,
        }
    }

    /// The induced action on the barycentric subdivision.
    pub fn subdivide(&self) -> Result<Self> {
        let sd = self.complex.barycentric_subdivision();
        let label_index: HashMap<&Simplex, usize> =
            sd.labels.iter().enumerate().map(|(i, s)| (s, i + 1)).collect();
        let generators: Vec<Perm> = self
            .group
            .generators()
            .iter()
            .map(|g| sd.labels.iter().map(|s| label_index[&apply(g, s)]).collect())
            .collect();
        let group = PermGroup::generate(sd.complex.m(), generators, self.budget.max_group_order)?;
        Ok(Self::assemble(group, sd.complex, self.subdivisions + 1, self.budget))
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn is_regular(&self) -> bool {
        self.regular
    }

    /// Subdivisions applied during validation.
    pub fn subdivisions(&self) -> usize {
        self.subdivisions
    }

    /// Nonempty simplices in dimension-then-lexicographic order.
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn subgroups(&self) -> Result<Vec<Subgroup>> {
        self.group.subgroups(self.budget.max_subgroups)
    }

    /// Pointwise stabilizer of `σ`.
    pub fn isotropy(&self, sigma: &[usize]) -> Subgroup {
        (0..self.group.order())
            .filter(|&g| sigma.iter().all(|&v| self.group.element(g)[v - 1] == v))
            .collect()
    }

    /// Vertices fixed by every element of `h`.
    fn fixed_vertices(&self, h: &[usize]) -> Vec<usize> {
        (1..=self.complex.m())
            .filter(|&v| h.iter().all(|&g| self.group.element(g)[v - 1] == v))
            .collect()
    }

    /// `{σ ∈ K : h fixes σ pointwise for all h ∈ H}` on the same vertex set.
    pub fn fixed_subcomplex(&self, h: &[usize]) -> SimplicialComplex {
        let fixed = self.fixed_vertices(h);
        let facets: Vec<Simplex> = self
            .complex
            .facets()
            .iter()
            .map(|f| f.iter().copied().filter(|v| fixed.binary_search(v).is_ok()).collect::<Simplex>())
            .filter(|s| !s.is_empty())
            .collect();
        SimplicialComplex::new(self.complex.m(), facets).expect("faces of a valid complex")
    }

    /// Every fixed set `K^H` must be path-connected; an empty one counts as connected
    /// unless `strict` is set.
    pub fn g_connectivity(&self, strict: bool) -> Result<GConnectivity> {
        let mut out = GConnectivity {
            connected: true,
            witness: None,
            nonempty_disconnected: None,
        };
        for h in self.subgroups()? {
            let components = self.fixed_subcomplex(&h).realized_components().len();
            let broken = components > 1 || (strict && components == 0);
            if broken && out.witness.is_none() {
                out.connected = false;
                out.witness = Some(h.clone());
            }
            if components > 1 && out.nonempty_disconnected.is_none() {
                out.nonempty_disconnected = Some(h);
            }
        }
        Ok(out)
    }

    pub fn is_g_connected(&self, strict: bool) -> Result<bool> {
        Ok(self.g_connectivity(strict)?.connected)
    }

    pub fn is_free(&self) -> bool {
        self.simplices.iter().all(|s| self.isotropy(s).len() == 1)
    }

    /// All simplex isotropy groups are conjugate.
    pub fn one_orbit_type(&self) -> bool {
        let Some(first) = self.simplices.first() else {
            return true;
        };
        let h0 = self.isotropy(first);
        self.simplices
            .iter()
            .all(|s| self.group.are_conjugate(&h0, &self.isotropy(s)))
    }

    fn component_labels(complex: &SimplicialComplex) -> Vec<usize> {
        let mut label = vec![usize::MAX; complex.m() + 1];
        for (c, comp) in complex.path_components().into_iter().enumerate() {
            for v in comp {
                label[v] = c;
            }
        }
        label
    }

    /// Whether a G-path runs from the orbit of `σ` to the orbit of `τ`: some `g·τ` lies in
    /// the component of `σ` inside the subcomplex where isotropy contains `G_σ`.
    pub fn orbit_reachable(&self, sigma: &[usize], tau: &[usize]) -> Result<bool> {
        if !self.regular {
            return Err(Error::Orbit("reachability needs a regular action".into()));
        }
        for s in [sigma, tau] {
            if s.is_empty() || !self.complex.contains(s) {
                return Err(Error::Orbit(format!("{s:?} is not a simplex of the complex")));
            }
        }
        let carrier = self.fixed_subcomplex(&self.isotropy(sigma));
        let labels = Self::component_labels(&carrier);
        let target = labels[sigma[0]];
        Ok(self.group.elements().iter().any(|g| {
            let image = apply(g, tau);
            carrier.contains(&image) && labels[image[0]] == target
        }))
    }

    /// Partition of the simplices into G-orbits, each listed by simplex index, ordered by
    /// their first member.
    pub fn simplex_orbits(&self) -> Vec<Vec<usize>> {
        let mut orbit_of = vec![usize::MAX; self.simplices.len()];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for (i, s) in self.simplices.iter().enumerate() {
            if orbit_of[i] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = self
                .group
                .elements()
                .iter()
                .map(|g| self.simplex_index[&apply(g, s)])
                .collect();
            members.sort_unstable();
            members.dedup();
            for &j in &members {
                orbit_of[j] = orbits.len();
            }
            orbits.push(members);
        }
        orbits
    }

    pub fn orbit_classes(&self) -> Result<OrbitDiagram> {
        OrbitDiagram::compute(self)
    }

    /// Number of minimal orbit classes and a representative simplex of each.
    pub fn minimal_orbit_classes(&self) -> Result<(usize, Vec<Simplex>)> {
        let d = self.orbit_classes()?;
        let reps: Vec<Simplex> = d.minimal().map(|c| c.representative.clone()).collect();
        Ok((reps.len(), reps))
    }

    /// More than one minimal orbit class forces invariant TC to be infinite; `false`
    /// means no conclusion.
    pub fn invariant_tc_infinite(&self) -> Result<bool> {
        Ok(self.minimal_orbit_classes()?.0 > 1)
    }

    fn vertex_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.complex.m() + 1];
        let mut out = Vec::new();
        for v in 1..=self.complex.m() {
            if seen[v] {
                continue;
            }
            let mut orbit: Vec<usize> = self.group.elements().iter().map(|g| g[v - 1]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &w in &orbit {
                seen[w] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Why the orbit map is not simplicial on this complex, if it is not.
    fn quotient_obstruction(&self) -> Option<String> {
        if !self.regular {
            return Some("action is not regular".into());
        }
        let orbits = self.vertex_orbits();
        let mut orbit_of = vec![0; self.complex.m() + 1];
        for (i, o) in orbits.iter().enumerate() {
            for &v in o {
                orbit_of[v] = i + 1;
            }
        }
        let simplex_orbit: Vec<usize> = {
            let mut out = vec![0; self.simplices.len()];
            for (i, o) in self.simplex_orbits().iter().enumerate() {
                for &s in o {
                    out[s] = i;
                }
            }
            out
        };
        let mut by_image: BTreeMap<Simplex, usize> = BTreeMap::new();
        for (i, s) in self.simplices.iter().enumerate() {
            let mut image: Simplex = s.iter().map(|&v| orbit_of[v]).collect();
            image.sort_unstable();
            if image.windows(2).any(|w| w[0] == w[1]) {
                return Some(format!("simplex {s:?} has two vertices in one orbit"));
            }
            if let Some(&other) = by_image.get(&image) {
                if other != simplex_orbit[i] {
                    return Some(format!("simplex {s:?} shares its orbit image with another simplex orbit"));
                }
            } else {
                by_image.insert(image, simplex_orbit[i]);
            }
        }
        None
    }

    /// `K/G` on the vertex orbits, subdividing (at most twice) until the orbit map is simplicial.
    pub fn quotient_complex(&self) -> Result<Quotient> {
        let mut current = self.clone();
        let mut extra = 0;
        while let Some(reason) = current.quotient_obstruction() {
            if extra == MAX_SUBDIVISIONS {
                return Err(Error::Orbit(format!(
                    "no simplicial quotient after {MAX_SUBDIVISIONS} subdivisions: {reason}"
                )));
            }
            current = current.subdivide()?;
            extra += 1;
        }
        let orbits = current.vertex_orbits();
        let mut orbit_of = vec![0; current.complex.m() + 1];
        for (i, o) in orbits.iter().enumerate() {
            for &v in o {
                orbit_of[v] = i + 1;
            }
        }
        let facets: Vec<Simplex> = current
            .complex
            .facets()
            .iter()
            .map(|f| f.iter().map(|&v| orbit_of[v]).collect())
            .collect();
        Ok(Quotient {
            complex: SimplicialComplex::new(orbits.len(), facets)?,
            vertex_orbits: orbits,
            subdivisions: extra,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn act(generators: Vec<Perm>, k: SimplicialComplex) -> GAction {
        GAction::validate(generators, k, OrbitBudget::default()).unwrap()
    }

    fn reflection() -> GAction {
        act(vec![vec![1, 4, 3, 2]], SimplicialComplex::cycle(4))
    }

    fn antipodal4() -> GAction {
        act(vec![vec![3, 4, 1, 2]], SimplicialComplex::cycle(4))
    }

    #[test]
    fn validation() {
        assert!(reflection().is_regular());
        assert_eq!(reflection().subdivisions(), 0);
        assert!(antipodal4().is_regular());
        let err = GAction::validate(vec![vec![2, 1, 3, 4]], SimplicialComplex::cycle(4), OrbitBudget::default())
            .unwrap_err();
        assert!(err.to_string().contains("not a facet"));
    }

    #[test]
    fn swapping_an_edge_needs_a_subdivision() {
        let edge = SimplicialComplex::full_simplex(2);
        let a = act(vec![vec![2, 1]], edge);
        assert_eq!(a.subdivisions(), 1);
        assert_eq!(a.complex().facets().len(), 2);
        // midpoint is fixed
        assert_eq!(a.fixed_subcomplex(&a.group().whole()).vertices().len(), 1);
    }

    #[test]
    fn isotropy_and_fixed_sets() {
        let r = reflection();
        assert_eq!(r.isotropy(&[1]).len(), 2);
        assert_eq!(r.isotropy(&[2]).len(), 1);
        let fixed = r.fixed_subcomplex(&r.group().whole());
        assert_eq!(fixed.facets(), &[vec![1], vec![3]]);
        assert!(antipodal4().fixed_subcomplex(&antipodal4().group().whole()).is_empty());
        assert_eq!(r.fixed_subcomplex(&r.group().trivial()), *r.complex());
        assert!(antipodal4().isotropy(&[1, 2]).len() == 1);
    }

    #[test]
    fn g_connectivity() {
        let c = reflection().g_connectivity(false).unwrap();
        assert!(!c.connected);
        assert_eq!(c.witness.as_ref().map(Vec::len), Some(2));
        assert!(c.nonempty_disconnected.is_some());
        assert!(antipodal4().is_g_connected(false).unwrap());
        assert!(!antipodal4().is_g_connected(true).unwrap());
        assert!(antipodal4().g_connectivity(true).unwrap().nonempty_disconnected.is_none());
        assert!(act(vec![], SimplicialComplex::cycle(5)).is_g_connected(true).unwrap());
    }

    #[test]
    fn reachability() {
        let r = reflection();
        assert!(!r.orbit_reachable(&[1], &[3]).unwrap());
        assert!(r.orbit_reachable(&[2], &[1]).unwrap());
        assert!(!r.orbit_reachable(&[1], &[2]).unwrap());
        assert!(r.orbit_reachable(&[1], &[1]).unwrap());
        assert!(r.orbit_reachable(&[1, 2], &[3, 4]).unwrap());
    }

    #[test]
    fn orbit_types_and_freeness() {
        assert!(antipodal4().is_free());
        assert!(antipodal4().one_orbit_type());
        assert!(!reflection().one_orbit_type());
        assert!(!reflection().is_free());
        assert!(act(vec![], SimplicialComplex::cycle(4)).one_orbit_type());
    }

    #[test]
    fn minimal_classes() {
        assert_eq!(reflection().minimal_orbit_classes().unwrap().0, 2);
        assert!(reflection().invariant_tc_infinite().unwrap());
        assert_eq!(antipodal4().minimal_orbit_classes().unwrap().0, 1);
        assert!(!antipodal4().invariant_tc_infinite().unwrap());
        let two = SimplicialComplex::new(2, [vec![1], vec![2]]).unwrap();
        assert_eq!(act(vec![], two).orbit_classes().unwrap().classes.len(), 2);
    }

    #[test]
    fn quotients() {
        let q = antipodal4().quotient_complex().unwrap();
        assert_eq!(q.subdivisions, 1);
        assert!(q.complex.is_isomorphic(&SimplicialComplex::cycle(4)));

        let c8 = act(vec![vec![5, 6, 7, 8, 1, 2, 3, 4]], SimplicialComplex::cycle(8));
        let q = c8.quotient_complex().unwrap();
        assert_eq!(q.subdivisions, 0);
        assert_eq!(q.complex, SimplicialComplex::cycle(4));

        let two = SimplicialComplex::new(2, [vec![1], vec![2]]).unwrap();
        let q = act(vec![vec![2, 1]], two).quotient_complex().unwrap();
        assert_eq!(q.complex, SimplicialComplex::full_simplex(1));

        let k = SimplicialComplex::cycle(5);
        assert_eq!(act(vec![], k.clone()).quotient_complex().unwrap().complex, k);
    }

    #[test]
    fn rotating_a_triangle_needs_two_subdivisions_for_its_quotient() {
        let a = act(vec![vec![2, 3, 1]], SimplicialComplex::simplex_boundary(3));
        let q = a.quotient_complex().unwrap();
        assert_eq!(q.subdivisions, 2);
        assert!(q.complex.is_isomorphic(&SimplicialComplex::cycle(4)));
    }
}
