//! Isomorphism search by backtracking over images of a generating set.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupMap};

/// Default node budget for a single isomorphism search.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Outcome of an exhaustive enumeration that was not cut short by the visitor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Search {
    Completed,
    Stopped,
}

/// Enumerates every isomorphism `src -> tgt`, calling `visit` with the full
/// image array of each. Candidate images for a generator must have the same
/// element order, and every prefix of generator images must span a subgroup
/// of the same size as the corresponding prefix of generators.
///
/// When `src` and `tgt` share indices, index-preserving candidates are tried
/// first, so for `src == tgt` the identity map is always the first visited.
pub fn for_each_isomorphism<F>(
    src: &FiniteGroup,
    tgt: &FiniteGroup,
    budget: u64,
    mut visit: F,
) -> Result<Search>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if src.order() != tgt.order() || src.order_statistics() != tgt.order_statistics() {
        return Ok(Search::Completed);
    }
    let gens = src.generating_set();
    let prefix_sizes: Vec<usize> = (1..=gens.len())
        .map(|k| src.closure(&gens[..k]).len())
        .collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let want = src.element_order(g);
            let mut c: Vec<usize> = tgt
                .elements()
                .filter(|&y| tgt.element_order(y) == want && y != g)
                .collect();
            if g < tgt.order() && tgt.element_order(g) == want {
                c.insert(0, g);
            }
            c
        })
        .collect();

    let mut state = Backtrack {
        src,
        tgt,
        gens: &gens,
        prefix_sizes: &prefix_sizes,
        candidates: &candidates,
        images: Vec::with_capacity(gens.len()),
        nodes: 0,
        budget,
    };
    match state.descend(&mut visit)? {
        ControlFlow::Continue(()) => Ok(Search::Completed),
        ControlFlow::Break(()) => Ok(Search::Stopped),
    }
}

struct Backtrack<'a> {
    src: &'a FiniteGroup,
    tgt: &'a FiniteGroup,
    gens: &'a [usize],
    prefix_sizes: &'a [usize],
    candidates: &'a [Vec<usize>],
    images: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Backtrack<'_> {
    fn descend<F>(&mut self, visit: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let depth = self.images.len();
        if depth == self.gens.len() {
            if let Some(map) = extend_homomorphism(self.src, self.tgt, self.gens, &self.images) {
                if is_bijection(&map) {
                    return Ok(visit(&map));
                }
            }
            return Ok(ControlFlow::Continue(()));
        }
        for &y in &self.candidates[depth] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudgetExceeded {
                    budget: self.budget,
                });
            }
            if self.images.contains(&y) {
                continue;
            }
            self.images.push(y);
            let ok = self.tgt.closure(&self.images).len() == self.prefix_sizes[depth];
            if ok {
                if let ControlFlow::Break(()) = self.descend(visit)? {
                    return Ok(ControlFlow::Break(()));
                }
            }
            self.images.pop();
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Extends generator images to a map on all of `src`, requiring
/// `f(x g) = f(x) f(g)` for every element `x` and generator `g`. That
/// condition makes the result a homomorphism; `None` if it is not well
/// defined.
pub(crate) fn extend_homomorphism(
    src: &FiniteGroup,
    tgt: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    let mut map = vec![UNSET; src.order()];
    map[0] = 0;
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (&g, &h) in gens.iter().zip(images) {
            let y = src.mul(x, g);
            let im = tgt.mul(map[x], h);
            if map[y] == UNSET {
                map[y] = im;
                queue.push(y);
            } else if map[y] != im {
                return None;
            }
        }
    }
    if map.contains(&UNSET) {
        return None;
    }
    Some(map)
}

fn is_bijection(map: &[usize]) -> bool {
    let mut hit = vec![false; map.len()];
    for &y in map {
        if y >= map.len() || hit[y] {
            return false;
        }
        hit[y] = true;
    }
    true
}

/// An isomorphism `g -> h` if one exists.
pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<GroupMap>> {
    is_isomorphic_with_budget(g, h, DEFAULT_NODE_BUDGET)
}

pub fn is_isomorphic_with_budget(
    g: &FiniteGroup,
    h: &FiniteGroup,
    budget: u64,
) -> Result<Option<GroupMap>> {
    if g.order() != h.order()
        || g.order_statistics() != h.order_statistics()
        || g.is_abelian() != h.is_abelian()
        || crate::group::center(g).order() != crate::group::center(h).order()
    {
        return Ok(None);
    }
    let mut found = None;
    for_each_isomorphism(g, h, budget, |images| {
        found = Some(images.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(found.map(|images| GroupMap {
        source_order: g.order(),
        target_order: h.order(),
        images,
    }))
}

/// Every isomorphism `g -> h`, in search order.
pub fn all_isomorphisms(g: &FiniteGroup, h: &FiniteGroup, budget: u64) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for_each_isomorphism(g, h, budget, |images| {
        out.push(images.to_vec());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}
