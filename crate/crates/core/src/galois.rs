//! Fields of definition, Frobenius orbits on `^J W^K` and the induced order
//! on the orbit set.

use std::collections::HashSet;

use crate::coxeter::{TypeSubset, WeylElement, WeylGroup};
use crate::error::{Error, Result};
use crate::root_data::DiagramAutomorphism;

/// Smallest `d >= 1` with `phi^d(J) = J`.
pub fn definition_degree(j: &TypeSubset, phi: &DiagramAutomorphism) -> usize {
    let mut image = j.image(phi);
    let mut d = 1;
    while &image != j {
        image = image.image(phi);
        d += 1;
    }
    d
}

/// The Frobenius together with the stabilizer data of a type `J`.
///
/// The Galois group fixing `J` acts through the cyclic group generated by
/// `phi^d`, so only `d` and that generator are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisData {
    pub phi: DiagramAutomorphism,
    pub j: TypeSubset,
    pub degree: usize,
}

impl GaloisData {
    pub fn new(phi: DiagramAutomorphism, j: TypeSubset) -> Result<Self> {
        let degree = definition_degree(&j, &phi);
        if !phi.order().is_multiple_of(degree) {
            return Err(Error::Internal(format!(
                "definition degree {degree} does not divide the order {} of the Frobenius",
                phi.order()
            )));
        }
        Ok(GaloisData { phi, j, degree })
    }

    pub fn generator(&self) -> DiagramAutomorphism {
        self.phi.pow(self.degree)
    }
}

fn canonical_sort(group: &WeylGroup, orbit: &mut [WeylElement]) {
    orbit.sort_by_cached_key(|w| (w.length(), group.reduced_word(w)));
}

/// Orbits of the cyclic group generated by `generator` on `elements`, in order
/// of first appearance; each orbit sorted by reduced word.
pub fn galois_orbits(
    group: &WeylGroup,
    elements: &[WeylElement],
    generator: &DiagramAutomorphism,
) -> Result<Vec<Vec<WeylElement>>> {
    let members: HashSet<&WeylElement> = elements.iter().collect();
    let mut assigned: HashSet<WeylElement> = HashSet::new();
    let mut orbits = Vec::new();
    for w in elements {
        if assigned.contains(w) {
            continue;
        }
        let mut orbit = vec![w.clone()];
        assigned.insert(w.clone());
        let mut next = group.apply_automorphism(generator, w);
        while &next != w {
            if !members.contains(&next) {
                return Err(Error::NotStable(format!(
                    "{} maps to {}, outside the set",
                    group.word_string(orbit.last().expect("orbit is non-empty")),
                    group.word_string(&next)
                )));
            }
            assigned.insert(next.clone());
            orbit.push(next.clone());
            next = group.apply_automorphism(generator, &next);
        }
        canonical_sort(group, &mut orbit);
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Orbits with the order `[a] <= [b]` iff some member of `a` lies below some
/// member of `b`.
#[derive(Debug, Clone)]
pub struct OrbitPoset {
    orbits: Vec<Vec<WeylElement>>,
    leq: Vec<Vec<bool>>,
}

impl OrbitPoset {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbits(&self) -> &[Vec<WeylElement>] {
        &self.orbits
    }

    /// Lexicographically smallest reduced word in the orbit.
    pub fn representative(&self, id: usize) -> &WeylElement {
        &self.orbits[id][0]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.leq
    }

    /// All ids `a` with `[a] <= [b]`, ascending.
    pub fn below(&self, b: usize) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.leq[a][b]).collect()
    }

    pub fn orbit_of(&self, w: &WeylElement) -> Option<usize> {
        self.orbits.iter().position(|o| o.contains(w))
    }

    /// Covering pairs `(a, b)`, `[a] < [b]` with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let lt = |a: usize, b: usize| a != b && self.leq[a][b];
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// Checks reflexivity, antisymmetry and transitivity.
    pub fn check_partial_order(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            if !self.leq[a][a] {
                return Err(Error::Internal(format!("orbit relation is not reflexive at {a}")));
            }
            for b in 0..n {
                if a != b && self.leq[a][b] && self.leq[b][a] {
                    return Err(Error::Internal(format!(
                        "orbit relation is not antisymmetric: {a} <= {b} <= {a}"
                    )));
                }
                for c in 0..n {
                    if self.leq[a][b] && self.leq[b][c] && !self.leq[a][c] {
                        return Err(Error::Internal(format!(
                            "orbit relation is not transitive at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds the induced order from an element comparison and verifies it is a
/// partial order.
pub fn orbit_poset<F>(orbits: Vec<Vec<WeylElement>>, leq: F) -> Result<OrbitPoset>
where
    F: Fn(&WeylElement, &WeylElement) -> bool,
{
    let n = orbits.len();
    let mut relation = vec![vec![false; n]; n];
    for (a, lower) in orbits.iter().enumerate() {
        for (b, upper) in orbits.iter().enumerate() {
            relation[a][b] = a == b || lower.iter().any(|y| upper.iter().any(|z| leq(y, z)));
        }
    }
    let poset = OrbitPoset { orbits, leq: relation };
    poset.check_partial_order()?;
    Ok(poset)
}
