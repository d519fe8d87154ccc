//! Autocommutators and the generalized autocommuting probability.
//!
//! `Pr_g` is the fraction of pairs `(x, α)` in `G × Aut(G)` whose
//! autocommutator `x^-1 α(x)` equals `g`. It is computed three ways: by
//! counting pairs, by summing `1/|orb(x)|` over the `x` with `xg ∈ orb(x)`,
//! and (for `g = 1`) by summing acentralizer sizes.

use serde::Serialize;

use crate::automorphism::{
    acentralizer, enumerate_automorphisms_with, orbits, AutLimits, Automorphism, AutomorphismGroup,
    OrbitPartition,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::group::{FiniteGroup, Subgroup};
use crate::rational::Rational;

/// Largest order for which [`distribution`] cross-checks against brute force.
pub const DEFAULT_ORACLE_CAP: usize = 24;

/// `[x, α] = x^-1 α(x)`
#[inline]
pub fn autocommutator(g: &FiniteGroup, x: usize, alpha: &Automorphism) -> usize {
    g.mul(g.inv(x), alpha.apply(x))
}

/// `L(G)`: elements fixed by every automorphism.
pub fn absolute_center(g: &FiniteGroup, a: &AutomorphismGroup) -> Subgroup {
    let members = g
        .elements()
        .filter(|&x| a.elements().iter().all(|al| al.apply(x) == x))
        .collect();
    Subgroup::from_sorted_unchecked(g.order(), members)
}

/// `S(G, Aut(G))`, sorted.
pub fn autocommutator_set(g: &FiniteGroup, a: &AutomorphismGroup) -> Vec<usize> {
    let mut hit = vec![false; g.order()];
    for x in g.elements() {
        for al in a.elements() {
            hit[autocommutator(g, x, al)] = true;
        }
    }
    g.elements().filter(|&y| hit[y]).collect()
}

/// `K(G)`, the subgroup generated by all autocommutators.
pub fn autocommutator_subgroup(g: &FiniteGroup, a: &AutomorphismGroup) -> Subgroup {
    let s = autocommutator_set(g, a);
    Subgroup::from_sorted_unchecked(g.order(), g.closure(&s))
}

/// Number of pairs with `[x, α] = target`, for every target.
pub fn pair_counts(g: &FiniteGroup, a: &AutomorphismGroup, exec: Execution) -> Vec<usize> {
    let per_x = exec.map_range(g.order(), |x| {
        let mut c = vec![0usize; g.order()];
        for al in a.elements() {
            c[autocommutator(g, x, al)] += 1;
        }
        c
    });
    let mut total = vec![0usize; g.order()];
    for c in per_x {
        for (t, v) in total.iter_mut().zip(c) {
            *t += v;
        }
    }
    total
}

/// `Pr_g` by direct count over all `|G||Aut(G)|` pairs.
pub fn pr_g_bruteforce(g: &FiniteGroup, a: &AutomorphismGroup, target: usize) -> Rational {
    let count = g
        .elements()
        .map(|x| {
            a.elements()
                .iter()
                .filter(|al| autocommutator(g, x, al) == target)
                .count()
        })
        .sum::<usize>();
    Rational::ratio(count, g.order() * a.order())
}

/// Whole distribution by brute force.
pub fn distribution_bruteforce(
    g: &FiniteGroup,
    a: &AutomorphismGroup,
    exec: Execution,
) -> Vec<Rational> {
    let denom = g.order() * a.order();
    pair_counts(g, a, exec)
        .into_iter()
        .map(|c| Rational::ratio(c, denom))
        .collect()
}

/// `Pr_g = (1/|G|) Σ_{x : xg ∈ orb(x)} 1/|orb(x)|`
pub fn pr_g_orbit_formula(g: &FiniteGroup, orbits: &OrbitPartition, target: usize) -> Rational {
    let sum: Rational = g
        .elements()
        .filter(|&x| orbits.same_orbit(x, g.mul(x, target)))
        .map(|x| Rational::ratio(1, orbits.orbit_size(x)))
        .sum();
    sum / Rational::from(g.order())
}

/// `Pr_1` as `Σ_α |C_G(α)| / (|G||Aut(G)|)`.
pub fn pr_acentralizer_sum(g: &FiniteGroup, a: &AutomorphismGroup, exec: Execution) -> Rational {
    let sizes = exec.map_slice(a.elements(), |al| acentralizer(g, al).order());
    Rational::ratio(sizes.into_iter().sum(), g.order() * a.order())
}

/// `1/|G| + 1/|Aut(G)| - 1/(|G||Aut(G)|)`, or `None` unless every
/// non-identity element has trivial stabilizer.
pub fn pr_trivial_stabilizer_formula(g: &FiniteGroup, a: &AutomorphismGroup) -> Option<Rational> {
    let applies = g
        .elements()
        .skip(1)
        .all(|x| a.elements().iter().filter(|al| al.apply(x) == x).count() == 1);
    if !applies {
        return None;
    }
    let (n, m) = (Rational::from(g.order()), Rational::from(a.order()));
    Some(n.recip() + m.recip() - (n * m).recip())
}

/// `Pr_g` for every `g`, indexed by element, via the orbit formula. For
/// orders up to `oracle_cap` the result is checked against brute force.
pub fn distribution(
    g: &FiniteGroup,
    a: &AutomorphismGroup,
    exec: Execution,
) -> Result<Vec<Rational>> {
    distribution_with(g, a, exec, DEFAULT_ORACLE_CAP)
}

pub fn distribution_with(
    g: &FiniteGroup,
    a: &AutomorphismGroup,
    exec: Execution,
    oracle_cap: usize,
) -> Result<Vec<Rational>> {
    let orb = orbits(g, a);
    let dist = exec.map_range(g.order(), |t| pr_g_orbit_formula(g, &orb, t));
    if g.order() <= oracle_cap {
        let brute = distribution_bruteforce(g, a, exec);
        if let Some(t) = (0..g.order()).find(|&t| brute[t] != dist[t]) {
            return Err(Error::Internal(format!(
                "orbit formula gives {} for g={} but counting gives {}",
                dist[t], t, brute[t]
            )));
        }
    }
    Ok(dist)
}

/// `T_{x,g} = {α : [x, α] = g}` as automorphism indices.
pub fn autocommutator_fiber(
    g: &FiniteGroup,
    a: &AutomorphismGroup,
    x: usize,
    target: usize,
) -> Vec<usize> {
    a.elements()
        .iter()
        .enumerate()
        .filter(|(_, al)| autocommutator(g, x, al) == target)
        .map(|(i, _)| i)
        .collect()
}

/// Everything the autocommuting analysis knows about one group.
#[derive(Clone, Debug, Serialize)]
pub struct AutocommutingReport {
    pub group: String,
    pub order: usize,
    pub aut_order: usize,
    pub absolute_center: Subgroup,
    pub autocommutator_set: Vec<usize>,
    pub autocommutator_subgroup: Subgroup,
    pub orbits: OrbitPartition,
    pub orbit_count: usize,
    pub stabilizer_sizes: Vec<usize>,
    pub distribution: Vec<Rational>,
    pub pr: Rational,
}

impl AutocommutingReport {
    pub fn compute(g: &FiniteGroup, a: &AutomorphismGroup, exec: Execution) -> Result<Self> {
        Self::compute_with(g, a, exec, DEFAULT_ORACLE_CAP)
    }

    pub fn compute_with(
        g: &FiniteGroup,
        a: &AutomorphismGroup,
        exec: Execution,
        oracle_cap: usize,
    ) -> Result<Self> {
        let orb = orbits(g, a);
        let distribution = distribution_with(g, a, exec, oracle_cap)?;
        let pr = distribution[0];
        let report = AutocommutingReport {
            group: g.name().to_string(),
            order: g.order(),
            aut_order: a.order(),
            absolute_center: absolute_center(g, a),
            autocommutator_set: autocommutator_set(g, a),
            autocommutator_subgroup: autocommutator_subgroup(g, a),
            orbit_count: orb.count(),
            stabilizer_sizes: crate::automorphism::stabilizer_sizes(g, a, exec),
            orbits: orb,
            distribution,
            pr,
        };
        report.check_invariants(g)?;
        Ok(report)
    }

    fn check_invariants(&self, g: &FiniteGroup) -> Result<()> {
        let total: Rational = self.distribution.iter().copied().sum();
        if total != Rational::one() {
            return Err(Error::Internal(format!("distribution sums to {total}")));
        }
        for t in g.elements() {
            let in_s = self.autocommutator_set.binary_search(&t).is_ok();
            if self.distribution[t].is_zero() == in_s {
                return Err(Error::Internal(format!(
                    "Pr_g zero/nonzero disagrees with S membership at {t}"
                )));
            }
        }
        if self.pr != Rational::ratio(self.orbit_count, self.order) {
            return Err(Error::Internal(
                "Pr_1 differs from orbit count / |G|".into(),
            ));
        }
        Ok(())
    }

    /// True when `G = L(G)`, the case excluded from every bound.
    pub fn is_degenerate(&self) -> bool {
        self.absolute_center.is_whole()
    }
}

/// Per-pair result of the coprime product rule.
#[derive(Clone, Debug, Serialize)]
pub struct ProductPair {
    pub g: usize,
    pub h: usize,
    pub product: Rational,
    pub factors: Rational,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductRuleVerdict {
    pub aut_left: usize,
    pub aut_right: usize,
    pub aut_product: usize,
    pub aut_order_multiplicative: bool,
    pub pairs: Vec<ProductPair>,
}

impl ProductRuleVerdict {
    pub fn holds(&self) -> bool {
        self.aut_order_multiplicative && self.pairs.iter().all(|p| p.equal)
    }
}

/// Enumerates `Aut(G × H)` directly and compares
/// `Pr_{(g,h)}(G × H)` with `Pr_g(G) Pr_h(H)` for every pair.
pub fn check_product_rule(
    left: &FiniteGroup,
    right: &FiniteGroup,
    limits: AutLimits,
    exec: Execution,
) -> Result<ProductRuleVerdict> {
    if num_integer::gcd(left.order(), right.order()) != 1 {
        return Err(Error::NotCoprime {
            left: left.order(),
            right: right.order(),
        });
    }
    let prod = crate::catalog::product(left, right);
    let a_l = enumerate_automorphisms_with(left, limits)?;
    let a_r = enumerate_automorphisms_with(right, limits)?;
    let a_p = enumerate_automorphisms_with(&prod, limits)?;
    let d_l = distribution(left, &a_l, exec)?;
    let d_r = distribution(right, &a_r, exec)?;
    let d_p = distribution(&prod, &a_p, exec)?;
    let m = right.order();
    let pairs = prod
        .elements()
        .map(|gh| {
            let (g, h) = (gh / m, gh % m);
            let factors = d_l[g] * d_r[h];
            ProductPair {
                g,
                h,
                product: d_p[gh],
                factors,
                equal: d_p[gh] == factors,
            }
        })
        .collect();
    Ok(ProductRuleVerdict {
        aut_left: a_l.order(),
        aut_right: a_r.order(),
        aut_product: a_p.order(),
        aut_order_multiplicative: a_p.order() == a_l.order() * a_r.order(),
        pairs,
    })
}
