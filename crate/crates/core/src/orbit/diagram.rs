use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::simplicial::Simplex;

use super::GAction;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitClass {
    pub representative: Simplex,
    pub isotropy_order: usize,
    /// Number of simplex orbits in the class.
    pub orbit_count: usize,
    pub minimal: bool,
}

/// Orbit classes ordered by first simplex, with Hasse edges `(upper, lower)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitDiagram {
    pub classes: Vec<OrbitClass>,
    pub edges: Vec<(usize, usize)>,
}

impl OrbitDiagram {
    pub(super) fn compute(action: &GAction) -> Result<Self> {
        let simplices = action.simplices();
        let orbits = action.simplex_orbits();
        let r = orbits.len();
        let mut reach = vec![vec![false; r]; r];
        for a in 0..r {
            for b in 0..r {
                reach[a][b] =
                    action.orbit_reachable(&simplices[orbits[a][0]], &simplices[orbits[b][0]])?;
            }
        }
        for k in 0..r {
            for a in 0..r {
                if reach[a][k] {
                    for b in 0..r {
                        if reach[k][b] {
                            reach[a][b] = true;
                        }
                    }
                }
            }
        }

        let mut class_of = vec![usize::MAX; r];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for a in 0..r {
            if class_of[a] != usize::MAX {
                continue;
            }
            let group: Vec<usize> = (a..r).filter(|&b| reach[a][b] && reach[b][a]).collect();
            for &b in &group {
                class_of[b] = members.len();
            }
            members.push(group);
        }

        let c = members.len();
        let above = |x: usize, y: usize| x != y && reach[members[x][0]][members[y][0]];
        for x in 0..c {
            for y in 0..c {
                if above(x, y) && above(y, x) {
                    return Err(Error::Orbit("orbit class order is not antisymmetric".into()));
                }
            }
        }
        let mut edges = Vec::new();
        for x in 0..c {
            for y in 0..c {
                if above(x, y) && !(0..c).any(|z| above(x, z) && above(z, y)) {
                    edges.push((x, y));
                }
            }
        }
        let classes = members
            .iter()
            .enumerate()
            .map(|(x, group)| {
                let rep = simplices[orbits[group[0]][0]].clone();
                OrbitClass {
                    isotropy_order: action.isotropy(&rep).len(),
                    representative: rep,
                    orbit_count: group.len(),
                    minimal: !(0..c).any(|y| above(x, y)),
                }
            })
            .collect();
        Ok(OrbitDiagram { classes, edges })
    }

    pub fn minimal(&self) -> impl Iterator<Item = &OrbitClass> {
        self.classes.iter().filter(|c| c.minimal)
    }

    pub fn minimal_count(&self) -> usize {
        self.minimal().count()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph orbit_diagram {\n    rankdir=TB;\n");
        for (k, c) in self.classes.iter().enumerate() {
            let _ = writeln!(
                out,
                "    c{k} [label=\"class#{k}: isotropy={}, minimal={}\"];",
                c.isotropy_order, c.minimal
            );
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "    c{a} -> c{b};");
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::OrbitBudget;
    use super::*;
    use crate::simplicial::SimplicialComplex;

    #[test]
    fn reflection_diagram() {
        let a = GAction::validate(vec![vec![1, 4, 3, 2]], SimplicialComplex::cycle(4), OrbitBudget::default())
            .unwrap();
        let d = a.orbit_classes().unwrap();
        assert_eq!(d.classes.len(), 3);
        assert_eq!(d.minimal_count(), 2);
        assert_eq!(d.edges.len(), 2);
        let dot = d.to_dot();
        assert!(dot.contains("isotropy=2, minimal=true"));
        assert!(dot.contains("isotropy=1, minimal=false"));
    }

    #[test]
    fn chain_is_transitively_reduced() {
        // path 2 - 1 - 3 with its ends swapped; the middle vertex is the only fixed point
        let k = SimplicialComplex::new(3, [vec![1, 2], vec![1, 3]]).unwrap();
        let a = GAction::validate(vec![vec![1, 3, 2]], k, OrbitBudget::default()).unwrap();
        let d = a.orbit_classes().unwrap();
        assert_eq!(d.minimal_count(), 1);
        for (x, y) in &d.edges {
            assert!(!d.classes[*x].minimal || d.classes[*y].minimal);
        }
    }
}
