//! Enumeration of Aut(G) and the orbit/stabilizer data of its natural action.

use std::collections::HashMap;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::group::{center, FiniteGroup, MakeOptions, Subgroup};
use crate::iso::{for_each_isomorphism, DEFAULT_NODE_BUDGET};

/// Default largest group order whose automorphisms are enumerated.
pub const DEFAULT_MAX_ORDER: usize = 64;
/// Default largest number of automorphisms kept in memory.
pub const DEFAULT_MAX_AUTOMORPHISMS: usize = 100_000;

#[derive(Clone, Copy, Debug)]
pub struct AutLimits {
    pub max_order: usize,
    pub max_automorphisms: usize,
    pub node_budget: u64,
}

impl Default for AutLimits {
    fn default() -> Self {
        AutLimits {
            max_order: DEFAULT_MAX_ORDER,
            max_automorphisms: DEFAULT_MAX_AUTOMORPHISMS,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl AutLimits {
    /// Defaults, with `AUTOCOMM_MAX_ORDER` overriding the order cap.
    pub fn from_env() -> Self {
        let mut l = AutLimits::default();
        if let Some(cap) = std::env::var("AUTOCOMM_MAX_ORDER")
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            l.max_order = cap;
        }
        l
    }
}

/// An automorphism stored as its full image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Automorphism {
    images: Vec<usize>,
}

impl Automorphism {
    /// Validates bijectivity, `images[0] = 0` and the homomorphism law.
    pub fn new(g: &FiniteGroup, images: Vec<usize>) -> Result<Self> {
        let a = Automorphism { images };
        if a.images.len() != g.order() || a.images[0] != 0 {
            return Err(Error::Internal("automorphism must fix the identity".into()));
        }
        let mut hit = vec![false; g.order()];
        for &y in &a.images {
            if y >= g.order() || hit[y] {
                return Err(Error::Internal("automorphism is not a bijection".into()));
            }
            hit[y] = true;
        }
        if !a.preserves(g) {
            return Err(Error::Internal(
                "map does not preserve multiplication".into(),
            ));
        }
        Ok(a)
    }

    pub fn identity(order: usize) -> Self {
        Automorphism {
            images: (0..order).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i == y)
    }

    /// Checks `images[i*j] = images[i]*images[j]` on all pairs.
    pub fn preserves(&self, g: &FiniteGroup) -> bool {
        g.elements().all(|i| {
            g.elements()
                .all(|j| self.images[g.mul(i, j)] == g.mul(self.images[i], self.images[j]))
        })
    }

    /// `(self ∘ other)(x) = self(other(x))`
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Automorphism { images }
    }
}

/// All automorphisms of a group, sorted by image array (identity first).
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    base: FiniteGroup,
    elements: Vec<Automorphism>,
    lookup: HashMap<Vec<usize>, usize>,
}

impl AutomorphismGroup {
    fn from_elements(base: FiniteGroup, mut elements: Vec<Automorphism>) -> Self {
        elements.sort();
        elements.dedup();
        let lookup = elements
            .iter()
            .enumerate()
            .map(|(i, a)| (a.images.clone(), i))
            .collect();
        AutomorphismGroup {
            base,
            elements,
            lookup,
        }
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &Automorphism {
        &self.elements[i]
    }

    pub fn index_of(&self, a: &Automorphism) -> Option<usize> {
        self.lookup.get(&a.images).copied()
    }

    /// Index of `σ ∘ α`.
    pub fn compose_idx(&self, sigma: usize, alpha: usize) -> usize {
        self.index_of(&self.elements[sigma].compose(&self.elements[alpha]))
            .expect("automorphism group is closed under composition")
    }

    pub fn inverse_idx(&self, a: usize) -> usize {
        self.index_of(&self.elements[a].inverse())
            .expect("automorphism group is closed under inversion")
    }

    /// Closure check: every product and inverse is present and the identity
    /// sits at position 0.
    pub fn is_closed(&self) -> bool {
        if self.elements.first().is_none_or(|a| !a.is_identity()) {
            return false;
        }
        self.elements.iter().all(|a| {
            self.index_of(&a.inverse()).is_some()
                && self
                    .elements
                    .iter()
                    .all(|b| self.index_of(&a.compose(b)).is_some())
        })
    }

    /// Aut(G) as an abstract group: element `i` is automorphism `i` and the
    /// product is composition.
    pub fn as_group(&self) -> Result<FiniteGroup> {
        let table = (0..self.order())
            .map(|s| (0..self.order()).map(|a| self.compose_idx(s, a)).collect())
            .collect();
        let labels = (0..self.order()).map(|i| format!("a{i}")).collect();
        FiniteGroup::from_table_with(
            format!("Aut({})", self.base.name()),
            table,
            Some(labels),
            MakeOptions {
                trusted: true,
                ..MakeOptions::default()
            },
        )
    }
}

/// Every automorphism of `g`, found by backtracking over images of a small
/// generating set with element-order and span-size pruning.
pub fn enumerate_automorphisms(g: &FiniteGroup) -> Result<AutomorphismGroup> {
    enumerate_automorphisms_with(g, AutLimits::default())
}

pub fn enumerate_automorphisms_with(
    g: &FiniteGroup,
    limits: AutLimits,
) -> Result<AutomorphismGroup> {
    if g.order() > limits.max_order {
        return Err(Error::OrderCapExceeded {
            order: g.order(),
            cap: limits.max_order,
        });
    }
    let mut found = Vec::new();
    let mut overflow = false;
    for_each_isomorphism(g, g, limits.node_budget, |images| {
        if found.len() == limits.max_automorphisms {
            overflow = true;
            return ControlFlow::Break(());
        }
        found.push(Automorphism {
            images: images.to_vec(),
        });
        ControlFlow::Continue(())
    })?;
    if overflow {
        return Err(Error::SearchBudgetExceeded {
            budget: limits.max_automorphisms as u64,
        });
    }
    Ok(AutomorphismGroup::from_elements(g.clone(), found))
}

/// Indices (into `a`) of the inner automorphisms `x ↦ g x g^-1`.
pub fn inner_automorphisms(g: &FiniteGroup, a: &AutomorphismGroup) -> Vec<usize> {
    let mut out: Vec<usize> = g
        .elements()
        .map(|c| {
            let images = g
                .elements()
                .map(|x| g.mul(g.mul(c, x), g.inv(c)))
                .collect::<Vec<_>>();
            a.index_of(&Automorphism { images })
                .expect("conjugation is an automorphism")
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    debug_assert_eq!(out.len() * center(g).order(), g.order());
    out
}

/// Orbits of Aut(G) acting on G, numbered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    pub orbit_id: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    pub fn orbit_of(&self, x: usize) -> &[usize] {
        &self.orbits[self.orbit_id[x]]
    }

    pub fn orbit_size(&self, x: usize) -> usize {
        self.orbit_of(x).len()
    }

    pub fn same_orbit(&self, x: usize, y: usize) -> bool {
        self.orbit_id[x] == self.orbit_id[y]
    }
}

pub fn orbits(g: &FiniteGroup, a: &AutomorphismGroup) -> OrbitPartition {
    let mut orbit_id = vec![usize::MAX; g.order()];
    let mut orbits = Vec::new();
    for x in g.elements() {
        if orbit_id[x] != usize::MAX {
            continue;
        }
        let mut orb: Vec<usize> = a.elements().iter().map(|al| al.apply(x)).collect();
        orb.sort_unstable();
        orb.dedup();
        for &y in &orb {
            orbit_id[y] = orbits.len();
        }
        orbits.push(orb);
    }
    OrbitPartition { orbit_id, orbits }
}

/// Indices of the automorphisms fixing `x`.
pub fn aut_stabilizer(a: &AutomorphismGroup, x: usize) -> Vec<usize> {
    a.elements()
        .iter()
        .enumerate()
        .filter(|(_, al)| al.apply(x) == x)
        .map(|(i, _)| i)
        .collect()
}

/// `|C_Aut(G)(x)|` for every `x`.
pub fn stabilizer_sizes(g: &FiniteGroup, a: &AutomorphismGroup, exec: Execution) -> Vec<usize> {
    exec.map_range(g.order(), |x| {
        a.elements().iter().filter(|al| al.apply(x) == x).count()
    })
}

/// Fixed-point subgroup of one automorphism.
pub fn acentralizer(g: &FiniteGroup, alpha: &Automorphism) -> Subgroup {
    let members = g.elements().filter(|&x| alpha.apply(x) == x).collect();
    Subgroup::from_sorted_unchecked(g.order(), members)
}

/// Automorphisms fixing every element. The action is faithful, so this is
/// always just the identity, but it is computed rather than assumed.
pub fn pointwise_stabilizer(a: &AutomorphismGroup) -> Vec<usize> {
    a.elements()
        .iter()
        .enumerate()
        .filter(|(_, al)| al.is_identity())
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::tests::{cyclic, s3};

    #[test]
    fn trivial_group() {
        let t = cyclic(1);
        let a = enumerate_automorphisms(&t).unwrap();
        assert_eq!(a.order(), 1);
        assert_eq!(orbits(&t, &a).count(), 1);
    }

    #[test]
    fn z8_and_s3_sizes() {
        assert_eq!(enumerate_automorphisms(&cyclic(8)).unwrap().order(), 4);
        let g = s3();
        let a = enumerate_automorphisms(&g).unwrap();
        assert_eq!(a.order(), 6);
        assert_eq!(inner_automorphisms(&g, &a).len(), 6);
        assert!(a.is_closed());
    }

    #[test]
    fn z4_orbits_and_stabilizers() {
        let z4 = cyclic(4);
        let a = enumerate_automorphisms(&z4).unwrap();
        assert_eq!(a.order(), 2);
        let o = orbits(&z4, &a);
        assert_eq!(o.orbits, vec![vec![0], vec![1, 3], vec![2]]);
        assert_eq!(aut_stabilizer(&a, 0).len(), 2);
        assert_eq!(aut_stabilizer(&a, 1), vec![0]);
        assert_eq!(aut_stabilizer(&a, 2).len(), 2);
        assert_eq!(inner_automorphisms(&z4, &a), vec![0]);
    }

    #[test]
    fn s3_orbits_follow_element_order() {
        let g = s3();
        let a = enumerate_automorphisms(&g).unwrap();
        let o = orbits(&g, &a);
        assert_eq!(o.count(), 3);
        let mut sizes: Vec<usize> = o.orbits.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn acentralizers() {
        let z4 = cyclic(4);
        let a = enumerate_automorphisms(&z4).unwrap();
        assert!(acentralizer(&z4, a.get(0)).is_whole());
        let inversion = Automorphism::new(&z4, vec![0, 3, 2, 1]).unwrap();
        assert_eq!(acentralizer(&z4, &inversion).members(), &[0, 2]);
        let z3 = cyclic(3);
        let inv3 = Automorphism::new(&z3, vec![0, 2, 1]).unwrap();
        assert_eq!(acentralizer(&z3, &inv3).members(), &[0]);
    }

    #[test]
    fn pointwise_stabilizer_is_identity() {
        for g in [cyclic(4), s3(), cyclic(1)] {
            let a = enumerate_automorphisms(&g).unwrap();
            assert_eq!(pointwise_stabilizer(&a), vec![0]);
        }
    }

    #[test]
    fn rejects_non_automorphisms() {
        let z4 = cyclic(4);
        assert!(Automorphism::new(&z4, vec![0, 2, 1, 3]).is_err());
        assert!(Automorphism::new(&z4, vec![1, 0, 3, 2]).is_err());
    }

    #[test]
    fn caps() {
        let limits = AutLimits {
            max_order: 4,
            ..AutLimits::default()
        };
        assert!(matches!(
            enumerate_automorphisms_with(&cyclic(5), limits),
            Err(Error::OrderCapExceeded { .. })
        ));
        let limits = AutLimits {
            max_automorphisms: 3,
            ..AutLimits::default()
        };
        assert!(matches!(
            enumerate_automorphisms_with(&s3(), limits),
            Err(Error::SearchBudgetExceeded { .. })
        ));
    }

    #[test]
    fn aut_as_group() {
        let a = enumerate_automorphisms(&s3()).unwrap();
        let ag = a.as_group().unwrap();
        assert_eq!(ag.order(), 6);
        assert!(!ag.is_abelian());
    }
}
