//! Finite abstract simplicial complexes on `[m] = {1, ..., m}`, stored by facets.
//!
//! Vertices are 1-based. A simplex is a strictly increasing vertex list; the global
//! order `1 < 2 < ... < m` fixes every orientation sign in the crate.

mod cohomology;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cohomology::{reduced_cohomology, CohomologyBasis, DegreeCohomology};

/// Sorted, duplicate-free vertex list.
pub type Simplex = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ComplexJson", into = "ComplexJson")]
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<Simplex>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    m: usize,
    facets: Vec<Vec<usize>>,
}

impl TryFrom<ComplexJson> for SimplicialComplex {
    type Error = Error;
    fn try_from(j: ComplexJson) -> Result<Self> {
        SimplicialComplex::new(j.m, j.facets)
    }
}

impl From<SimplicialComplex> for ComplexJson {
    fn from(k: SimplicialComplex) -> Self {
        ComplexJson {
            m: k.m,
            facets: k.facets,
        }
    }
}

/// `K_J` re-indexed over `J`, with `vertex_map[i - 1]` the original label of local vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullSubcomplex {
    pub complex: SimplicialComplex,
    pub vertex_map: Vec<usize>,
}

impl FullSubcomplex {
    pub fn to_original(&self, local: &[usize]) -> Simplex {
        local.iter().map(|&v| self.vertex_map[v - 1]).collect()
    }

    /// Local labels of an original simplex contained in `J`.
    pub fn to_local(&self, original: &[usize]) -> Option<Simplex> {
        original
            .iter()
            .map(|v| self.vertex_map.binary_search(v).ok().map(|i| i + 1))
            .collect()
    }
}

/// Barycentric subdivision with `labels[i - 1]` the simplex of the original complex
/// that vertex `i` stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    pub labels: Vec<Simplex>,
}

impl SimplicialComplex {
    /// Builds a complex, absorbing listed faces that are contained in other listed faces.
    pub fn new<I, F>(m: usize, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = usize>,
    {
        let mut candidates: BTreeSet<Simplex> = BTreeSet::new();
        for facet in facets {
            let mut s: Simplex = facet.into_iter().collect();
            if s.is_empty() {
                return Err(Error::Complex("empty facet".into()));
            }
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Complex(format!("facet {s:?} repeats a vertex")));
            }
            if let Some(&v) = s.iter().find(|&&v| v == 0 || v > m) {
                return Err(Error::Complex(format!("vertex {v} outside [1, {m}]")));
            }
            candidates.insert(s);
        }
        Ok(Self::from_candidates(m, candidates))
    }

    fn from_candidates(m: usize, candidates: BTreeSet<Simplex>) -> Self {
        let all: Vec<Simplex> = candidates.into_iter().collect();
        let facets = all
            .iter()
            .filter(|s| !all.iter().any(|t| t.len() > s.len() && is_subset(s, t)))
            .cloned()
            .collect();
        SimplicialComplex { m, facets }
    }

    /// The complex with no simplices on `m` (ghost) vertices.
    pub fn empty(m: usize) -> Self {
        SimplicialComplex { m, facets: Vec::new() }
    }

    /// The full simplex on `[m]`.
    pub fn full_simplex(m: usize) -> Self {
        if m == 0 {
            return Self::empty(0);
        }
        SimplicialComplex {
            m,
            facets: vec![(1..=m).collect()],
        }
    }

    /// Boundary of the simplex on `[m]` (a triangulated `(m-2)`-sphere).
    pub fn simplex_boundary(m: usize) -> Self {
        let full: Simplex = (1..=m).collect();
        let faces = (0..m).map(|skip| {
            full.iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect::<Vec<_>>()
        });
        Self::new(m, faces.filter(|f| !f.is_empty())).expect("valid boundary")
    }

    /// The `m`-gon, `m >= 3`.
    pub fn cycle(m: usize) -> Self {
        assert!(m >= 3, "a cycle needs at least three vertices");
        Self::new(m, (1..=m).map(|i| vec![i, i % m + 1])).expect("valid cycle")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Facets in lexicographic order.
    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// True when the complex has no simplices at all (ghost vertices aside).
    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension, `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    /// Membership; the empty simplex belongs to every complex.
    pub fn contains(&self, s: &[usize]) -> bool {
        s.is_empty() || self.facets.iter().any(|f| is_subset(s, f))
    }

    /// All nonempty simplices, grouped by dimension and lexicographic within a dimension.
    pub fn simplices_by_dim(&self) -> Vec<Vec<Simplex>> {
        let mut by_dim: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); (self.dim() + 1) as usize];
        for f in &self.facets {
            for mask in 1u64..(1u64 << f.len()) {
                let s: Simplex = f
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                by_dim[s.len() - 1].insert(s);
            }
        }
        by_dim.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    pub fn simplices(&self) -> Vec<Simplex> {
        self.simplices_by_dim().into_iter().flatten().collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices_by_dim().iter().map(Vec::len).collect()
    }

    /// Vertices that lie in some facet.
    pub fn vertices(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.facets.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    pub fn ghost_vertices(&self) -> Vec<usize> {
        let used: BTreeSet<usize> = self.facets.iter().flatten().copied().collect();
        (1..=self.m).filter(|v| !used.contains(v)).collect()
    }

    /// Unreduced Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// `K_J = {σ ∈ K : σ ⊆ J}`, re-indexed over `J` in increasing order.
    pub fn full_subcomplex(&self, j: &[usize]) -> Result<FullSubcomplex> {
        let mut vertex_map: Vec<usize> = j.to_vec();
        vertex_map.sort_unstable();
        vertex_map.dedup();
        if let Some(&v) = vertex_map.iter().find(|&&v| v == 0 || v > self.m) {
            return Err(Error::Complex(format!("vertex {v} of J outside [1, {}]", self.m)));
        }
        let local = |v: usize| vertex_map.binary_search(&v).map(|i| i + 1);
        let restricted: BTreeSet<Simplex> = self
            .facets
            .iter()
            .map(|f| f.iter().filter_map(|&v| local(v).ok()).collect::<Simplex>())
            .filter(|s| !s.is_empty())
            .collect();
        Ok(FullSubcomplex {
            complex: Self::from_candidates(vertex_map.len(), restricted),
            vertex_map,
        })
    }

    /// Union-find over edges. Every vertex of `[m]` appears; ghosts are singletons.
    pub fn path_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..=self.m).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for f in &self.facets {
            for w in f.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 1..=self.m {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    /// Components of the geometric realization (ghost vertices are not points of it).
    pub fn realized_components(&self) -> Vec<Vec<usize>> {
        let ghosts: BTreeSet<usize> = self.ghost_vertices().into_iter().collect();
        self.path_components()
            .into_iter()
            .filter(|c| !(c.len() == 1 && ghosts.contains(&c[0])))
            .collect()
    }

    /// Nonempty and path-connected.
    pub fn is_connected(&self) -> bool {
        self.realized_components().len() == 1
    }

    /// Vertices are the simplices of `K` (grouped by dimension, then lexicographic);
    /// facets are the maximal chains of faces.
    pub fn barycentric_subdivision(&self) -> Subdivision {
        let labels = self.simplices();
        let index: BTreeMap<&Simplex, usize> =
            labels.iter().enumerate().map(|(i, s)| (s, i + 1)).collect();
        let mut chains: BTreeSet<Simplex> = BTreeSet::new();
        for f in &self.facets {
            for order in permutations(f) {
                let mut chain: Simplex = (1..=order.len())
                    .map(|k| {
                        let mut face = order[..k].to_vec();
                        face.sort_unstable();
                        index[&face]
                    })
                    .collect();
                chain.sort_unstable();
                chains.insert(chain);
            }
        }
        Subdivision {
            complex: Self::from_candidates(labels.len(), chains),
            labels,
        }
    }

    /// Image under a vertex relabeling `v -> perm[v - 1]` (a permutation of `[m]`).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.m);
        Self::new(
            self.m,
            self.facets.iter().map(|f| f.iter().map(|&v| perm[v - 1]).collect::<Vec<_>>()),
        )
        .expect("relabeling preserves validity")
    }

    /// Whether some relabeling of `[m]` carries `self` onto `other`, by search over
    /// degree-compatible vertex bijections.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        if self.m != other.m || self.f_vector() != other.f_vector() {
            return false;
        }
        let signature = |k: &Self, v: usize| -> Vec<usize> {
            let mut sizes: Vec<usize> = k.facets.iter().filter(|f| f.contains(&v)).map(Vec::len).collect();
            sizes.sort_unstable();
            sizes
        };
        let ours: Vec<Vec<usize>> = (1..=self.m).map(|v| signature(self, v)).collect();
        let theirs: Vec<Vec<usize>> = (1..=self.m).map(|v| signature(other, v)).collect();
        let target: BTreeSet<&Simplex> = other.facets.iter().collect();
        let mut perm = vec![0; self.m];
        let mut used = vec![false; self.m + 1];
        fn extend(
            v: usize,
            k: &SimplicialComplex,
            ours: &[Vec<usize>],
            theirs: &[Vec<usize>],
            target: &BTreeSet<&Simplex>,
            perm: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if v > k.m {
                return k.facets.iter().all(|f| {
                    let mut image: Simplex = f.iter().map(|&x| perm[x - 1]).collect();
                    image.sort_unstable();
                    target.contains(&image)
                });
            }
            for w in 1..=k.m {
                if used[w] || ours[v - 1] != theirs[w - 1] {
                    continue;
                }
                perm[v - 1] = w;
                used[w] = true;
                if extend(v + 1, k, ours, theirs, target, perm, used) {
                    return true;
                }
                used[w] = false;
            }
            false
        }
        extend(1, self, &ours, &theirs, &target, &mut perm, &mut used)
    }

    /// Join `K * L` on `[m_K + m_L]`, with `L`'s vertices shifted by `m_K`.
    pub fn join(&self, other: &Self) -> Self {
        let shift = self.m;
        let shifted = |f: &Simplex| f.iter().map(|&v| v + shift).collect::<Simplex>();
        let facets: Vec<Simplex> = match (self.is_empty(), other.is_empty()) {
            (true, _) => other.facets.iter().map(shifted).collect(),
            (_, true) => self.facets.clone(),
            _ => self
                .facets
                .iter()
                .flat_map(|a| other.facets.iter().map(move |b| a.iter().copied().chain(shifted(b)).collect()))
                .collect(),
        };
        Self::new(self.m + other.m, facets).expect("join is valid")
    }

    /// Disjoint union on `[m_K + m_L]`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.m;
        let facets = self
            .facets
            .iter()
            .cloned()
            .chain(other.facets.iter().map(|f| f.iter().map(|&v| v + shift).collect()));
        Self::new(self.m + other.m, facets).expect("union is valid")
    }

    /// Facet-list text: `m=<m>; a b c; ...`.
    pub fn to_text(&self) -> String {
        let mut out = format!("m={};", self.m);
        for f in &self.facets {
            out.push(' ');
            out.push_str(&f.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
            out.push(';');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse::parse_facet_list(text)
    }

    /// Reads either the JSON mirror (`{"m": .., "facets": ..}`) or the facet-list text.
    pub fn from_source(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Ok(serde_json::from_str(text)?)
        } else {
            Self::parse(text)
        }
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    // both sorted
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphism() {
        let relabeled = SimplicialComplex::cycle(4).relabel(&[1, 3, 2, 4]);
        assert_ne!(relabeled, SimplicialComplex::cycle(4));
        assert!(relabeled.is_isomorphic(&SimplicialComplex::cycle(4)));
        assert!(!SimplicialComplex::cycle(4).is_isomorphic(&SimplicialComplex::new(4, [vec![1, 2], vec![2, 3], vec![3, 4]]).unwrap()));
        assert!(!SimplicialComplex::cycle(6).is_isomorphic(&SimplicialComplex::cycle(3).disjoint_union(&SimplicialComplex::cycle(3))));
    }

    fn four_cycle() -> SimplicialComplex {
        SimplicialComplex::new(4, [vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]]).unwrap()
    }

    #[test]
    fn absorbs_non_maximal_faces() {
        let k = SimplicialComplex::new(3, [vec![1, 2], vec![2]]).unwrap();
        assert_eq!(k.facets(), &[vec![1, 2]]);
        assert_eq!(k.ghost_vertices(), vec![3]);
    }

    #[test]
    fn rejects_bad_facets() {
        assert!(SimplicialComplex::new(3, [vec![1, 4]]).is_err());
        assert!(SimplicialComplex::new(3, [vec![0, 1]]).is_err());
        assert!(SimplicialComplex::new(3, [Vec::<usize>::new()]).is_err());
        assert!(SimplicialComplex::new(3, [vec![1, 1]]).is_err());
    }

    #[test]
    fn full_subcomplex_examples() {
        let k = four_cycle();
        let two = k.full_subcomplex(&[1, 3]).unwrap();
        assert_eq!(two.complex.facets(), &[vec![1], vec![2]]);
        assert_eq!(two.vertex_map, vec![1, 3]);

        let none = k.full_subcomplex(&[]).unwrap();
        assert!(none.complex.is_empty());
        assert_eq!(none.complex.m(), 0);

        let path = k.full_subcomplex(&[1, 2, 3]).unwrap();
        assert_eq!(path.complex.facets(), &[vec![1, 2], vec![2, 3]]);

        assert!(k.full_subcomplex(&[5]).is_err());
        assert_eq!(k.full_subcomplex(&[1, 2, 3, 4]).unwrap().complex, k);
    }

    #[test]
    fn components() {
        assert_eq!(four_cycle().path_components().len(), 1);
        let two = SimplicialComplex::new(2, [vec![1], vec![2]]).unwrap();
        assert_eq!(two.path_components().len(), 2);
        let ghost = SimplicialComplex::new(5, four_cycle().facets().to_vec()).unwrap();
        assert_eq!(ghost.path_components().len(), 2);
        assert!(ghost.is_connected());
        assert!(!SimplicialComplex::empty(3).is_connected());
    }

    #[test]
    fn subdivision_counts() {
        let edge = SimplicialComplex::full_simplex(2);
        let sd = edge.barycentric_subdivision();
        assert_eq!(sd.complex.facets().len(), 2);
        assert_eq!(sd.complex.m(), 3);

        let tri = SimplicialComplex::full_simplex(3);
        let sd = tri.barycentric_subdivision();
        assert_eq!(sd.complex.facets().len(), 6);
        assert_eq!(sd.complex.euler_characteristic(), 1);

        let empty = SimplicialComplex::empty(0).barycentric_subdivision();
        assert!(empty.complex.is_empty());
    }

    #[test]
    fn join_of_point_pairs_is_four_cycle() {
        let pair = SimplicialComplex::new(2, [vec![1], vec![2]]).unwrap();
        let j = pair.join(&pair);
        // vertices 1,2 | 3,4: edges 13,14,23,24 -> a 4-cycle 1-3-2-4-1
        assert_eq!(j.facets().len(), 4);
        assert_eq!(j.euler_characteristic(), 0);
        assert!(j.is_connected());
    }

    #[test]
    fn contains_and_dim() {
        let k = four_cycle();
        assert!(k.contains(&[1, 2]));
        assert!(!k.contains(&[1, 3]));
        assert!(k.contains(&[]));
        assert!(SimplicialComplex::empty(2).contains(&[]));
        assert_eq!(k.dim(), 1);
        assert_eq!(SimplicialComplex::empty(1).dim(), -1);
        assert_eq!(k.f_vector(), vec![4, 4]);
    }
}
