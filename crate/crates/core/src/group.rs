//! Finite groups given by complete multiplication tables.
//!
//! Every group keeps its identity at index 0. Subgroups are sorted member
//! lists tied to the order of their parent, and homomorphisms are plain image
//! arrays.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest order for which construction runs the full n^3 associativity check.
pub const DEFAULT_ASSOCIATIVITY_CAP: usize = 512;

/// Construction knobs for [`FiniteGroup::from_table_with`].
#[derive(Clone, Copy, Debug)]
pub struct MakeOptions {
    pub associativity_cap: usize,
    /// Skip the associativity check for orders above the cap instead of
    /// refusing to build.
    pub trusted: bool,
}

impl Default for MakeOptions {
    fn default() -> Self {
        MakeOptions {
            associativity_cap: DEFAULT_ASSOCIATIVITY_CAP,
            trusted: false,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    orders: Vec<usize>,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

/// Validates a multiplication table and builds a group from it.
pub fn make_group(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<FiniteGroup> {
    FiniteGroup::from_table("G", table, labels)
}

impl FiniteGroup {
    pub fn from_table(
        name: impl Into<String>,
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        Self::from_table_with(name, table, labels, MakeOptions::default())
    }

    pub fn from_table_with(
        name: impl Into<String>,
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
        opts: MakeOptions,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(Error::BadDimensions {
                    rows: n,
                    row,
                    len: r.len(),
                });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(Error::NotClosed {
                        row,
                        col,
                        value,
                        order: n,
                    });
                }
            }
        }
        let mut labels = match labels {
            Some(l) if l.len() != n => {
                return Err(Error::BadLabels(format!(
                    "expected {n} labels, got {}",
                    l.len()
                )))
            }
            Some(l) => l,
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let distinct: HashSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(Error::BadLabels("labels are not distinct".into()));
        }

        let e = (0..n)
            .find(|&e| (0..n).all(|i| table[e][i] == i && table[i][e] == i))
            .ok_or(Error::NoIdentity)?;

        let mut flat: Vec<usize> = table.into_iter().flatten().collect();
        if e != 0 {
            // swap indices e and 0 everywhere
            let swap = |i: usize| {
                if i == e {
                    0
                } else if i == 0 {
                    e
                } else {
                    i
                }
            };
            let mut moved = vec![0; n * n];
            for i in 0..n {
                for j in 0..n {
                    moved[swap(i) * n + swap(j)] = swap(flat[i * n + j]);
                }
            }
            flat = moved;
            labels.swap(0, e);
        }

        let mut inverses = vec![usize::MAX; n];
        for i in 0..n {
            let inv = (0..n)
                .find(|&j| flat[i * n + j] == 0 && flat[j * n + i] == 0)
                .ok_or(Error::NoInverse { element: i })?;
            inverses[i] = inv;
        }

        if n <= opts.associativity_cap {
            for a in 0..n {
                for b in 0..n {
                    let ab = flat[a * n + b];
                    for c in 0..n {
                        if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                            return Err(Error::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        } else if !opts.trusted {
            return Err(Error::Unverifiable {
                order: n,
                cap: opts.associativity_cap,
            });
        }

        let mut seen = vec![usize::MAX; n];
        for row in 0..n {
            for col in 0..n {
                let value = flat[row * n + col];
                if seen[value] == row {
                    return Err(Error::NotLatinSquare { row, value });
                }
                seen[value] = row;
            }
        }
        let mut seen = vec![usize::MAX; n];
        for col in 0..n {
            for row in 0..n {
                let value = flat[row * n + col];
                if seen[value] == col {
                    return Err(Error::NotLatinSquare { row, value });
                }
                seen[value] = col;
            }
        }

        let mut g = FiniteGroup {
            name: name.into(),
            order: n,
            table: flat,
            inverses,
            orders: Vec::new(),
            labels,
        };
        g.orders = (0..n).map(|x| g.compute_order(x)).collect();
        Ok(g)
    }

    fn compute_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverses
    }

    /// Order of the element `x`.
    pub fn element_order(&self, x: usize) -> usize {
        self.orders[x]
    }

    pub fn element_orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The table as nested rows.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn check_element(&self, x: usize) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::NoSuchElement {
                element: x,
                order: self.order,
            })
        }
    }

    /// `x^-1 y^-1 x y`
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let a = self.mul(self.inv(x), self.inv(y));
        self.mul(self.mul(a, x), y)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted element orders; a cheap isomorphism invariant.
    pub fn order_statistics(&self) -> Vec<usize> {
        let mut v = self.orders.clone();
        v.sort_unstable();
        v
    }

    /// Greedy small generating set: repeatedly adds the element whose
    /// inclusion enlarges the generated subgroup the most (lowest index wins
    /// ties).
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = vec![0];
        while current.len() < self.order {
            let mut in_current = vec![false; self.order];
            for &x in &current {
                in_current[x] = true;
            }
            let mut best: Option<(usize, Vec<usize>)> = None;
            for x in (0..self.order).filter(|&x| !in_current[x]) {
                let mut trial = gens.clone();
                trial.push(x);
                let span = self.closure(&trial);
                if best.as_ref().is_none_or(|(_, b)| span.len() > b.len()) {
                    best = Some((x, span));
                }
                if best.as_ref().is_some_and(|(_, b)| b.len() == self.order) {
                    break;
                }
            }
            let (x, span) = best.expect("proper subgroup has an outside element");
            gens.push(x);
            current = span;
        }
        gens
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub(crate) fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            i += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// A subgroup, stored as the sorted member list of a parent of known order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Subgroup {
    parent_order: usize,
    members: Vec<usize>,
}

impl Subgroup {
    /// Checks that `members` is a subgroup of `g`.
    pub fn from_members(g: &FiniteGroup, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            g.check_element(m)?;
        }
        if members.first() != Some(&0) {
            return Err(Error::NotSubgroup("missing identity".into()));
        }
        let s = Subgroup {
            parent_order: g.order(),
            members,
        };
        for &a in &s.members {
            if !s.contains(g.inv(a)) {
                return Err(Error::NotSubgroup(format!("inverse of {a} missing")));
            }
            for &b in &s.members {
                if !s.contains(g.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        Ok(s)
    }

    pub(crate) fn from_sorted_unchecked(parent_order: usize, members: Vec<usize>) -> Self {
        Subgroup {
            parent_order,
            members,
        }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Subgroup::from_sorted_unchecked(g.order(), vec![0])
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup::from_sorted_unchecked(g.order(), g.elements().collect())
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn index(&self) -> usize {
        self.parent_order / self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent_order
    }

    /// `Ok(())` if normal in `g`, otherwise the first offending
    /// (element, conjugator) pair.
    pub fn check_normal(&self, g: &FiniteGroup) -> Result<()> {
        for c in g.elements() {
            for &m in &self.members {
                let conj = g.mul(g.mul(g.inv(c), m), c);
                if !self.contains(conj) {
                    return Err(Error::NotNormal {
                        element: m,
                        conjugator: c,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        self.check_normal(g).is_ok()
    }

    /// The subgroup as a group in its own right, with the embedding into the
    /// parent (`embedding[i]` is the parent index of element `i`).
    pub fn to_group(
        &self,
        g: &FiniteGroup,
        name: impl Into<String>,
    ) -> Result<(FiniteGroup, Vec<usize>)> {
        let pos = |x: usize| self.members.binary_search(&x).expect("closed subgroup");
        let table = self
            .members
            .iter()
            .map(|&a| self.members.iter().map(|&b| pos(g.mul(a, b))).collect())
            .collect();
        let labels = self
            .members
            .iter()
            .map(|&m| g.label(m).to_string())
            .collect();
        let sub = FiniteGroup::from_table(name, table, Some(labels))?;
        Ok((sub, self.members.clone()))
    }
}

/// A map between two groups given by images of every source element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupMap {
    pub source_order: usize,
    pub target_order: usize,
    pub images: Vec<usize>,
}

impl GroupMap {
    pub fn identity(g: &FiniteGroup) -> Self {
        GroupMap {
            source_order: g.order(),
            target_order: g.order(),
            images: g.elements().collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_homomorphism(&self, src: &FiniteGroup, tgt: &FiniteGroup) -> bool {
        self.images.len() == src.order()
            && self.images.iter().all(|&y| y < tgt.order())
            && src.elements().all(|i| {
                src.elements()
                    .all(|j| self.images[src.mul(i, j)] == tgt.mul(self.images[i], self.images[j]))
            })
    }

    pub fn is_bijective(&self) -> bool {
        if self.source_order != self.target_order {
            return false;
        }
        let mut hit = vec![false; self.target_order];
        for &y in &self.images {
            if y >= self.target_order || hit[y] {
                return false;
            }
            hit[y] = true;
        }
        true
    }

    pub fn is_isomorphism(&self, src: &FiniteGroup, tgt: &FiniteGroup) -> bool {
        self.is_bijective() && self.is_homomorphism(src, tgt)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target_order];
        for &y in &self.images {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn inverse(&self) -> Option<GroupMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut images = vec![0; self.source_order];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Some(GroupMap {
            source_order: self.target_order,
            target_order: self.source_order,
            images,
        })
    }
}

/// Smallest subgroup containing `gens`.
pub fn subgroup_generated_by(g: &FiniteGroup, gens: &[usize]) -> Result<Subgroup> {
    for &x in gens {
        g.check_element(x)?;
    }
    Ok(Subgroup::from_sorted_unchecked(g.order(), g.closure(gens)))
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let members = g
        .elements()
        .filter(|&x| g.elements().all(|y| g.mul(x, y) == g.mul(y, x)))
        .collect();
    Subgroup::from_sorted_unchecked(g.order(), members)
}

/// The subgroup generated by all commutators.
pub fn derived_subgroup(g: &FiniteGroup) -> Subgroup {
    let mut comms: Vec<usize> = g
        .elements()
        .flat_map(|x| g.elements().map(move |y| (x, y)))
        .map(|(x, y)| g.commutator(x, y))
        .collect();
    comms.sort_unstable();
    comms.dedup();
    Subgroup::from_sorted_unchecked(g.order(), g.closure(&comms))
}

/// Quotient by a normal subgroup. Cosets are numbered by their smallest
/// member, so the coset of the identity is 0.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, GroupMap)> {
    if n.parent_order() != g.order() {
        return Err(Error::NotSubgroup(
            "subgroup belongs to another group".into(),
        ));
    }
    n.check_normal(g)?;
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &m in n.members() {
            coset[g.mul(x, m)] = id;
        }
    }
    let table = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| coset[g.mul(a, b)]).collect())
        .collect();
    let labels = reps.iter().map(|&r| format!("[{}]", g.label(r))).collect();
    let name = format!("{}/N{}", g.name(), n.order());
    let q = FiniteGroup::from_table(name, table, Some(labels))?;
    let proj = GroupMap {
        source_order: g.order(),
        target_order: q.order(),
        images: coset,
    };
    Ok((q, proj))
}

/// `G x H` with element `(i, j)` at index `i * |H| + j`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (n, m) = (g.order(), h.order());
    let idx = |i: usize, j: usize| i * m + j;
    let table = (0..n * m)
        .map(|a| {
            let (ai, aj) = (a / m, a % m);
            (0..n * m)
                .map(|b| idx(g.mul(ai, b / m), h.mul(aj, b % m)))
                .collect()
        })
        .collect();
    let labels = (0..n * m)
        .map(|a| format!("({},{})", g.label(a / m), h.label(a % m)))
        .collect();
    let name = format!("{}x{}", g.name(), h.name());
    // products of valid groups are groups; skip the cubic check at large orders
    FiniteGroup::from_table_with(
        name,
        table,
        Some(labels),
        MakeOptions {
            trusted: true,
            ..MakeOptions::default()
        },
    )
    .expect("direct product of groups is a group")
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn cyclic(n: usize) -> FiniteGroup {
        let t = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        FiniteGroup::from_table(format!("Z{n}"), t, None).unwrap()
    }

    /// S_3 by composing permutations of {0,1,2} by hand: (p*q)(i) = p(q(i)).
    pub fn s3() -> FiniteGroup {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let find = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let t = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| find([p[q[0]], p[q[1]], p[q[2]]]))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table("S3", t, None).unwrap()
    }

    #[test]
    fn trivial_and_z2() {
        let t = make_group(vec![vec![0]], None).unwrap();
        assert_eq!(t.order(), 1);
        let z2 = make_group(vec![vec![0, 1], vec![1, 0]], None).unwrap();
        assert_eq!(z2.order(), 2);
        assert_eq!(z2.inv(1), 1);
    }

    #[test]
    fn s3_from_permutations() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert_eq!(g.element_orders().iter().filter(|&&o| o == 3).count(), 2);
        assert!(!g.is_abelian());
    }

    #[test]
    fn identity_is_relocated() {
        // Z_3 with identity stored at index 2
        let t = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let labels = vec!["a".to_string(), "b".to_string(), "e".to_string()];
        let g = make_group(t, Some(labels)).unwrap();
        assert_eq!(g.label(0), "e");
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.element_order(1), 3);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            make_group(vec![vec![0, 2], vec![1, 0]], None),
            Err(Error::NotClosed {
                row: 0,
                col: 1,
                value: 2,
                ..
            })
        ));
        assert!(matches!(
            make_group(vec![vec![1, 1], vec![1, 1]], None),
            Err(Error::NoIdentity)
        ));
        assert!(matches!(
            make_group(vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 2]], None),
            Err(Error::NoInverse { element: 1 })
        ));
        let bad_z3 = vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]];
        assert!(matches!(
            make_group(bad_z3, None),
            Err(Error::NotAssociative { .. })
        ));
        assert!(matches!(
            make_group(vec![vec![0, 1], vec![1]], None),
            Err(Error::BadDimensions { .. })
        ));
    }

    #[test]
    fn single_entry_mutations_are_rejected() {
        for g in [cyclic(4), s3(), cyclic(5)] {
            let rows = g.table_rows();
            let n = g.order();
            for i in 0..n {
                for j in 0..n {
                    for v in 0..n {
                        if v == rows[i][j] {
                            continue;
                        }
                        let mut t = rows.clone();
                        t[i][j] = v;
                        assert!(make_group(t, None).is_err(), "{} ({i},{j})->{v}", g.name());
                    }
                }
            }
        }
    }

    #[test]
    fn large_tables_need_trust() {
        let n = 600;
        let t: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        assert!(matches!(
            FiniteGroup::from_table("Z600", t.clone(), None),
            Err(Error::Unverifiable { .. })
        ));
        let opts = MakeOptions {
            trusted: true,
            ..Default::default()
        };
        assert_eq!(
            FiniteGroup::from_table_with("Z600", t, None, opts)
                .unwrap()
                .order(),
            600
        );
    }

    #[test]
    fn generated_subgroups() {
        let z4 = cyclic(4);
        assert_eq!(subgroup_generated_by(&z4, &[]).unwrap().members(), &[0]);
        assert_eq!(subgroup_generated_by(&z4, &[2]).unwrap().members(), &[0, 2]);
        let g = s3();
        let three_cycle = g.elements().find(|&x| g.element_order(x) == 3).unwrap();
        let c3 = subgroup_generated_by(&g, &[three_cycle]).unwrap();
        assert_eq!(c3.order(), 3);
        assert!(c3.members().iter().all(|&x| g.element_order(x) != 2));
        assert!(subgroup_generated_by(&g, &[6]).is_err());
    }

    #[test]
    fn center_and_derived() {
        let z4 = cyclic(4);
        assert!(center(&z4).is_whole());
        assert!(derived_subgroup(&z4).is_trivial());
        let g = s3();
        assert!(center(&g).is_trivial());
        let d = derived_subgroup(&g);
        assert_eq!(d.order(), 3);
        assert!(d.is_normal(&g));
    }

    #[test]
    fn quotients() {
        let z4 = cyclic(4);
        let (q, p) = quotient(&z4, &Subgroup::whole(&z4)).unwrap();
        assert_eq!(q.order(), 1);
        assert!(p.is_homomorphism(&z4, &q));
        let n = subgroup_generated_by(&z4, &[2]).unwrap();
        let (q, p) = quotient(&z4, &n).unwrap();
        assert_eq!(q.order(), 2);
        assert!(p.is_homomorphism(&z4, &q) && p.is_surjective());

        let g = s3();
        let (q, _) = quotient(&g, &derived_subgroup(&g)).unwrap();
        assert_eq!(q.order(), 2);
        let t = subgroup_generated_by(&g, &[1]).unwrap();
        assert!(matches!(quotient(&g, &t), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn products() {
        let t = make_group(vec![vec![0]], None).unwrap();
        let z3 = cyclic(3);
        let p = direct_product(&t, &z3);
        assert_eq!(p.table_rows(), z3.table_rows());

        let v4 = direct_product(&cyclic(2), &cyclic(2));
        assert!(v4.elements().all(|x| g_pow(&v4, x, 2) == 0));
        let z12 = direct_product(&cyclic(3), &cyclic(4));
        assert_eq!(z12.element_order(4 + 1), 12);
    }

    fn g_pow(g: &FiniteGroup, x: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| g.mul(acc, x))
    }

    #[test]
    fn generating_sets_generate() {
        for g in [cyclic(12), s3(), direct_product(&cyclic(2), &cyclic(2))] {
            let gens = g.generating_set();
            assert_eq!(g.closure(&gens).len(), g.order());
        }
        assert_eq!(cyclic(12).generating_set().len(), 1);
        assert_eq!(
            direct_product(&cyclic(2), &cyclic(2))
                .generating_set()
                .len(),
            2
        );
        assert!(make_group(vec![vec![0]], None)
            .unwrap()
            .generating_set()
            .is_empty());
    }
}
