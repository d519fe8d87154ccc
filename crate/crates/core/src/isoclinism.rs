//! Autoisoclinism search and the invariance of the `Pr_g` distribution.
//!
//! An autoisoclinism between `G` and `H` is a triple of isomorphisms
//! `ψ: G/L(G) → H/L(H)`, `γ: Aut(G) → Aut(H)`, `β: K(G) → K(H)` such that
//! `β([x, α]) = [y, γ(α)]` whenever `y L(H) = ψ(x L(G))`.
//!
//! The search runs over `(ψ, γ)` pairs; `β` is then forced on `S(G,Aut(G))`
//! by the diagram and extended multiplicatively to `K(G)`.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use serde::Serialize;

use crate::autocomm::{
    absolute_center, autocommutator, autocommutator_set, autocommutator_subgroup, distribution,
};
use crate::automorphism::{enumerate_automorphisms_with, AutLimits, AutomorphismGroup};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::group::{quotient, FiniteGroup, GroupMap, Subgroup};
use crate::iso::{all_isomorphisms, DEFAULT_NODE_BUDGET};
use crate::rational::Rational;

/// Default number of `(ψ, γ)` pairs checked before giving up.
pub const DEFAULT_BUDGET: u64 = 1_000_000;
/// Largest `|Aut(G)|` whose multiplication table is built for the search.
pub const MAX_AUT_TABLE: usize = 2048;

/// `a(x L(G), α) = [x, α]`, tabulated as `values[coset][automorphism]`.
#[derive(Clone, Debug)]
pub struct AutocommutatorMap {
    pub values: Vec<Vec<usize>>,
}

impl AutocommutatorMap {
    pub fn eval(&self, coset: usize, alpha: usize) -> usize {
        self.values[coset][alpha]
    }
}

/// Tabulates the autocommutator map on cosets of `L(G)` and checks that it
/// does not depend on the coset representative.
pub fn autocommutator_map(
    g: &FiniteGroup,
    a: &AutomorphismGroup,
    projection: &GroupMap,
    cosets: usize,
) -> Result<AutocommutatorMap> {
    const UNSET: usize = usize::MAX;
    let mut values = vec![vec![UNSET; a.order()]; cosets];
    for x in g.elements() {
        let c = projection.apply(x);
        for (i, al) in a.elements().iter().enumerate() {
            let v = autocommutator(g, x, al);
            match values[c][i] {
                UNSET => values[c][i] = v,
                w if w != v => {
                    return Err(Error::IllDefined(format!(
                        "coset {c}, automorphism {i}: representatives give {w} and {v}"
                    )))
                }
                _ => {}
            }
        }
    }
    Ok(AutocommutatorMap { values })
}

/// Everything about one group that the search consults.
#[derive(Clone, Debug)]
pub struct IsoclinismData {
    pub group: FiniteGroup,
    pub auts: AutomorphismGroup,
    pub aut_group: FiniteGroup,
    pub l: Subgroup,
    pub s: Vec<usize>,
    pub k: Subgroup,
    pub k_group: FiniteGroup,
    pub quotient: FiniteGroup,
    pub projection: GroupMap,
    pub amap: AutocommutatorMap,
    pub distribution: Vec<Rational>,
}

impl IsoclinismData {
    pub fn new(g: &FiniteGroup, limits: AutLimits, exec: Execution) -> Result<Self> {
        let auts = enumerate_automorphisms_with(g, limits)?;
        if auts.order() > MAX_AUT_TABLE {
            return Err(Error::OrderCapExceeded {
                order: auts.order(),
                cap: MAX_AUT_TABLE,
            });
        }
        let aut_group = auts.as_group()?;
        let l = absolute_center(g, &auts);
        let s = autocommutator_set(g, &auts);
        let k = autocommutator_subgroup(g, &auts);
        let (k_group, _) = k.to_group(g, format!("K({})", g.name()))?;
        let (quotient, projection) = quotient(g, &l)?;
        let amap = autocommutator_map(g, &auts, &projection, quotient.order())?;
        let distribution = distribution(g, &auts, exec)?;
        Ok(IsoclinismData {
            group: g.clone(),
            auts,
            aut_group,
            l,
            s,
            k,
            k_group,
            quotient,
            projection,
            amap,
            distribution,
        })
    }

    fn invariants(&self) -> (usize, Vec<usize>, usize, Vec<usize>, usize, Vec<usize>) {
        (
            self.quotient.order(),
            self.quotient.order_statistics(),
            self.k.order(),
            self.k_group.order_statistics(),
            self.auts.order(),
            self.aut_group.order_statistics(),
        )
    }
}

/// Witness triple. `beta` acts on `K` as a group in its own right, with
/// `k_source`/`k_target` embedding those local indices into `G` and `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Autoisoclinism {
    pub psi: Vec<usize>,
    pub gamma: Vec<usize>,
    pub beta: Vec<usize>,
    pub k_source: Vec<usize>,
    pub k_target: Vec<usize>,
}

impl Autoisoclinism {
    /// `β` on an element of `K(G)` given by its index in `G`.
    pub fn beta_of(&self, x: usize) -> Option<usize> {
        let i = self.k_source.binary_search(&x).ok()?;
        Some(self.k_target[self.beta[i]])
    }

    /// Checks that all three maps are isomorphisms and that the diagram
    /// commutes on every (coset, automorphism) pair.
    pub fn validate(&self, g: &IsoclinismData, h: &IsoclinismData) -> Result<()> {
        let fail = |m: &str| Err(Error::Internal(format!("invalid autoisoclinism: {m}")));
        let psi = GroupMap {
            source_order: g.quotient.order(),
            target_order: h.quotient.order(),
            images: self.psi.clone(),
        };
        if !psi.is_isomorphism(&g.quotient, &h.quotient) {
            return fail("psi is not an isomorphism");
        }
        let gamma = GroupMap {
            source_order: g.aut_group.order(),
            target_order: h.aut_group.order(),
            images: self.gamma.clone(),
        };
        if !gamma.is_isomorphism(&g.aut_group, &h.aut_group) {
            return fail("gamma is not an isomorphism");
        }
        let beta = GroupMap {
            source_order: g.k_group.order(),
            target_order: h.k_group.order(),
            images: self.beta.clone(),
        };
        if !beta.is_isomorphism(&g.k_group, &h.k_group)
            || self.k_source != g.k.members()
            || self.k_target != h.k.members()
        {
            return fail("beta is not an isomorphism K(G) -> K(H)");
        }
        for c in 0..g.quotient.order() {
            for al in 0..g.auts.order() {
                let lhs = self.beta_of(g.amap.eval(c, al));
                if lhs != Some(h.amap.eval(self.psi[c], self.gamma[al])) {
                    return fail("diagram does not commute");
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoclinismResult {
    Found(Autoisoclinism),
    /// Exhaustive search (or an invariant mismatch) rules it out.
    None {
        reason: String,
    },
}

/// Builds both sides and searches.
pub fn find_autoisoclinism(
    g: &FiniteGroup,
    h: &FiniteGroup,
    budget: u64,
    limits: AutLimits,
    exec: Execution,
) -> Result<IsoclinismResult> {
    let dg = IsoclinismData::new(g, limits, exec)?;
    let dh = IsoclinismData::new(h, limits, exec)?;
    search(&dg, &dh, budget, exec)
}

/// Searches `(ψ, γ)` pairs; `budget` counts pairs fully checked.
pub fn search(
    g: &IsoclinismData,
    h: &IsoclinismData,
    budget: u64,
    exec: Execution,
) -> Result<IsoclinismResult> {
    let (ig, ih) = (g.invariants(), h.invariants());
    let names = [
        "|G/L|",
        "G/L element orders",
        "|K|",
        "K element orders",
        "|Aut|",
        "Aut element orders",
    ];
    let mismatch = [
        ig.0 != ih.0,
        ig.1 != ih.1,
        ig.2 != ih.2,
        ig.3 != ih.3,
        ig.4 != ih.4,
        ig.5 != ih.5,
    ];
    if let Some(i) = mismatch.iter().position(|&m| m) {
        return Ok(IsoclinismResult::None {
            reason: format!("invariant mismatch: {}", names[i]),
        });
    }
    if budget == 0 {
        return Err(Error::SearchBudgetExceeded { budget });
    }

    let psis = all_isomorphisms(&g.quotient, &h.quotient, DEFAULT_NODE_BUDGET)?;
    let gammas = all_isomorphisms(&g.aut_group, &h.aut_group, DEFAULT_NODE_BUDGET)?;
    if psis.is_empty() || gammas.is_empty() {
        return Ok(IsoclinismResult::None {
            reason: "no isomorphism between quotients or automorphism groups".into(),
        });
    }

    let checked = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let found = exec.find_map_first(psis.len(), |pi| {
        let psi = &psis[pi];
        for gamma in &gammas {
            if exhausted.load(Ordering::Relaxed) {
                return None;
            }
            if checked.fetch_add(1, Ordering::Relaxed) >= budget {
                exhausted.store(true, Ordering::Relaxed);
                return None;
            }
            if let Some(beta) = solve_beta(g, h, psi, gamma) {
                return Some(Autoisoclinism {
                    psi: psi.clone(),
                    gamma: gamma.clone(),
                    beta,
                    k_source: g.k.members().to_vec(),
                    k_target: h.k.members().to_vec(),
                });
            }
        }
        None
    });
    match found {
        Some(iso) => {
            iso.validate(g, h)?;
            Ok(IsoclinismResult::Found(iso))
        }
        None if exhausted.load(Ordering::Relaxed) => Err(Error::SearchBudgetExceeded { budget }),
        None => Ok(IsoclinismResult::None {
            reason: format!(
                "exhausted {} x {} candidate (psi, gamma) pairs",
                psis.len(),
                gammas.len()
            ),
        }),
    }
}

/// The `β` forced by `(ψ, γ)`, as local `K` indices, if it exists.
fn solve_beta(
    g: &IsoclinismData,
    h: &IsoclinismData,
    psi: &[usize],
    gamma: &[usize],
) -> Option<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    // images of S(G) as H-elements, indexed by G-element
    let mut on_s = vec![UNSET; g.group.order()];
    for (c, row) in g.amap.values.iter().enumerate() {
        let target_row = &h.amap.values[psi[c]];
        for (al, &v) in row.iter().enumerate() {
            let w = target_row[gamma[al]];
            match on_s[v] {
                UNSET => on_s[v] = w,
                prev if prev != w => return None,
                _ => {}
            }
        }
    }
    // extend multiplicatively from the generating set S(G)
    let (gg, hg) = (&g.group, &h.group);
    let mut full = vec![UNSET; gg.order()];
    full[0] = 0;
    if on_s[0] != 0 {
        return None;
    }
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for &s in &g.s {
            let y = gg.mul(x, s);
            let im = hg.mul(full[x], on_s[s]);
            if full[y] == UNSET {
                full[y] = im;
                queue.push(y);
            } else if full[y] != im {
                return None;
            }
        }
    }
    let mut hit = vec![false; h.k.order()];
    let mut beta = Vec::with_capacity(g.k.order());
    for &x in g.k.members() {
        let y = full[x];
        let j = h.k.members().binary_search(&y).ok()?;
        if std::mem::replace(&mut hit[j], true) {
            return None;
        }
        beta.push(j);
    }
    Some(beta)
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceEntry {
    pub g: usize,
    pub beta_g: usize,
    pub pr_source: Rational,
    pub pr_target: Rational,
    pub equal: bool,
    /// `(x L, α) ↦ (ψ(x L), γ(α))` maps the fiber over `g` onto the fiber
    /// over `β(g)`.
    pub fiber_bijection: bool,
    /// `|{(x, α) : [x, α] = g}| = |L(G)| · |fiber|`
    pub fiber_count_matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceVerdict {
    pub entries: Vec<InvarianceEntry>,
}

impl InvarianceVerdict {
    pub fn holds(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.equal && e.fiber_bijection && e.fiber_count_matches)
    }
}

/// Checks `Pr_g(G) = Pr_β(g)(H)` for every `g ∈ K(G)` along with the
/// fiber bijection behind it.
pub fn verify_invariance(
    g: &IsoclinismData,
    h: &IsoclinismData,
    iso: &Autoisoclinism,
) -> Result<InvarianceVerdict> {
    iso.validate(g, h)?;
    let fiber = |d: &IsoclinismData, t: usize| -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = d
            .amap
            .values
            .iter()
            .enumerate()
            .flat_map(|(c, row)| {
                row.iter()
                    .enumerate()
                    .filter(move |(_, &v)| v == t)
                    .map(move |(al, _)| (c, al))
            })
            .collect();
        v.sort_unstable();
        v
    };
    let pairs_hitting = |d: &IsoclinismData, t: usize| -> usize {
        d.group
            .elements()
            .map(|x| {
                d.auts
                    .elements()
                    .iter()
                    .filter(|al| autocommutator(&d.group, x, al) == t)
                    .count()
            })
            .sum()
    };
    let mut entries = Vec::new();
    for &t in g.k.members() {
        let bt = iso.beta_of(t).expect("t in K(G)");
        let src = fiber(g, t);
        let tgt = fiber(h, bt);
        let mut mapped: Vec<(usize, usize)> = src
            .iter()
            .map(|&(c, al)| (iso.psi[c], iso.gamma[al]))
            .collect();
        mapped.sort_unstable();
        let count_ok = pairs_hitting(g, t) == g.l.order() * src.len()
            && pairs_hitting(h, bt) == h.l.order() * tgt.len();
        entries.push(InvarianceEntry {
            g: t,
            beta_g: bt,
            pr_source: g.distribution[t],
            pr_target: h.distribution[bt],
            equal: g.distribution[t] == h.distribution[bt],
            fiber_bijection: mapped == tgt,
            fiber_count_matches: count_ok,
        });
    }
    Ok(InvarianceVerdict { entries })
}
