use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

/// Permutation of `[m]` in one-line form: vertex `v` maps to `p[v - 1]`.
pub type Perm = Vec<usize>;

pub const DEFAULT_MAX_GROUP_ORDER: usize = 10080;
pub const DEFAULT_MAX_SUBGROUPS: usize = 4096;

pub fn identity(m: usize) -> Perm {
    (1..=m).collect()
}

/// `(a ∘ b)(v) = a(b(v))`.
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&v| a[v - 1]).collect()
}

pub fn inverse(a: &[usize]) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &v) in a.iter().enumerate() {
        out[v - 1] = i + 1;
    }
    out
}

pub fn check_perm(p: &[usize], m: usize) -> Result<()> {
    if p.len() != m {
        return Err(Error::Orbit(format!("permutation {p:?} has length {} but m = {m}", p.len())));
    }
    let mut seen = vec![false; m + 1];
    for &v in p {
        if v == 0 || v > m || std::mem::replace(&mut seen[v], true) {
            return Err(Error::Orbit(format!("{p:?} is not a permutation of [1, {m}]")));
        }
    }
    Ok(())
}

/// Image of a simplex, sorted.
pub fn apply(p: &[usize], simplex: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = simplex.iter().map(|&v| p[v - 1]).collect();
    out.sort_unstable();
    out
}

/// A subgroup as the sorted indices of its elements in the parent's element list.
pub type Subgroup = Vec<usize>;

/// A finite permutation group with its elements enumerated; element 0 is the identity.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl PermGroup {
    pub fn generate(degree: usize, generators: Vec<Perm>, max_order: usize) -> Result<Self> {
        for g in &generators {
            check_perm(g, degree)?;
        }
        let id = identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let h = compose(g, &elements[i]);
                if !index.contains_key(&h) {
                    if elements.len() == max_order {
                        return Err(Error::budget(
                            "orbit",
                            format!("group order exceeds the limit of {max_order}"),
                        ));
                    }
                    index.insert(h.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            elements,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &[usize]) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&compose(&self.elements[a], &self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&inverse(&self.elements[a])]
    }

    pub fn whole(&self) -> Subgroup {
        (0..self.order()).collect()
    }

    pub fn trivial(&self) -> Subgroup {
        vec![0]
    }

    /// Smallest subgroup containing `seeds`.
    pub fn closure(&self, seeds: &[usize]) -> Subgroup {
        let mut members: BTreeSet<usize> = BTreeSet::from([0]);
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in seeds {
                let y = self.mul(s, x);
                if members.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        members.into_iter().collect()
    }

    /// Every subgroup, found by closing under joins starting from the cyclic subgroups.
    /// Sorted by order, then by element indices.
    pub fn subgroups(&self, max_count: usize) -> Result<Vec<Subgroup>> {
        let cyclic: BTreeSet<Subgroup> = (0..self.order()).map(|g| self.closure(&[g])).collect();
        let cyclic: Vec<Subgroup> = cyclic.into_iter().collect();
        let mut all: BTreeSet<Subgroup> = cyclic.iter().cloned().collect();
        let mut frontier: Vec<Subgroup> = cyclic.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    if c.iter().all(|x| h.binary_search(x).is_ok()) {
                        continue;
                    }
                    let seeds: Vec<usize> = h.iter().chain(c.iter()).copied().collect();
                    let joined = self.closure(&seeds);
                    if all.insert(joined.clone()) {
                        if all.len() > max_count {
                            return Err(Error::budget(
                                "orbit",
                                format!("more than {max_count} subgroups"),
                            ));
                        }
                        next.push(joined);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Subgroup> = all.into_iter().collect();
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        Ok(out)
    }

    /// `g H g⁻¹`.
    pub fn conjugate(&self, h: &[usize], g: usize) -> Subgroup {
        let gi = self.inv(g);
        let mut out: Subgroup = h.iter().map(|&x| self.mul(self.mul(g, x), gi)).collect();
        out.sort_unstable();
        out
    }

    /// Whether some conjugate of `h` lies inside `k`.
    pub fn is_subconjugate(&self, h: &[usize], k: &[usize]) -> bool {
        h.len() <= k.len()
            && k.len() % h.len() == 0
            && (0..self.order()).any(|g| self.conjugate(h, g).iter().all(|x| k.binary_search(x).is_ok()))
    }

    pub fn are_conjugate(&self, h: &[usize], k: &[usize]) -> bool {
        h.len() == k.len() && self.is_subconjugate(h, k)
    }
}
