//! Exact evaluation of the upper and lower bounds on `Pr_g`, and the
//! characterizations of `G/L(G)` that follow from equality in them.
//!
//! Every entry carries the bound value and the actual probability as exact
//! rationals. Entries whose hypothesis fails are kept in the report and
//! marked inapplicable.

use serde::{Deserialize, Serialize};

use crate::autocomm::AutocommutingReport;
use crate::automorphism::{pointwise_stabilizer, AutomorphismGroup};
use crate::catalog::{cyclic, elementary_abelian, is_prime};
use crate::error::Result;
use crate::group::{quotient, FiniteGroup};
use crate::iso::is_isomorphic;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lower,
    Upper,
    /// `actual < bound`
    StrictUpper,
}

/// Extra data explaining an entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Primes {
        p: usize,
        q: usize,
    },
    /// Form with `|C_Aut(G)(G)| = 1` substituted.
    Reduced {
        value: Rational,
    },
    /// Both readings of the orbit condition for the `S`/`K` lower bounds.
    OrbitCondition {
        /// `orb(x) = x S(G,Aut(G))` for every `x ∉ L(G)`
        orbit_is_translate_of_s: bool,
        /// `orb(x) = S(G,Aut(G))` for every `x ∉ L(G)`
        orbit_equals_s: bool,
        k_equals_s: bool,
    },
    XG {
        size: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub id: String,
    pub side: Side,
    /// Target element for per-`g` entries.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
    /// `None` when the entry's hypothesis does not hold.
    pub bound_value: Option<Rational>,
    pub actual: Rational,
    pub holds: Option<bool>,
    pub equality: Option<bool>,
    /// Equality the accompanying characterization predicts, when it makes one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_equality: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundEntry {
    fn evaluate(id: &str, side: Side, g: Option<usize>, bound: Rational, actual: Rational) -> Self {
        let holds = match side {
            Side::Lower => actual >= bound,
            Side::Upper => actual <= bound,
            Side::StrictUpper => actual < bound,
        };
        BoundEntry {
            id: id.to_string(),
            side,
            g,
            bound_value: Some(bound),
            actual,
            holds: Some(holds),
            equality: Some(actual == bound),
            expected_equality: None,
            witness: None,
            note: None,
        }
    }

    fn inapplicable(id: &str, side: Side, g: Option<usize>, actual: Rational, why: &str) -> Self {
        BoundEntry {
            id: id.to_string(),
            side,
            g,
            bound_value: None,
            actual,
            holds: None,
            equality: None,
            expected_equality: None,
            witness: None,
            note: Some(why.to_string()),
        }
    }

    fn expect_equality(mut self, expected: bool) -> Self {
        self.expected_equality = Some(expected);
        self
    }

    fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn is_applicable(&self) -> bool {
        self.bound_value.is_some()
    }

    /// The inequality fails, or equality disagrees with its predicted value.
    pub fn violated(&self) -> bool {
        self.holds == Some(false)
            || matches!((self.expected_equality, self.equality), (Some(e), Some(q)) if e != q)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BoundReport {
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn violations(&self) -> impl Iterator<Item = &BoundEntry> {
        self.entries.iter().filter(|e| e.violated())
    }

    pub fn get(&self, id: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn entries_for(&self, id: &str) -> impl Iterator<Item = &BoundEntry> + '_ {
        let id = id.to_string();
        self.entries.iter().filter(move |e| e.id == id)
    }
}

pub const OUT_OF_HYPOTHESIS: &str = "G = L(G): outside the standing hypothesis G != L(G)";

pub fn smallest_prime_factor(n: usize) -> Option<usize> {
    (2..=n).find(|&d| n.is_multiple_of(d) && is_prime(d))
}

/// Integer parameters shared by the bounds.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundParams {
    pub order: usize,
    pub aut_order: usize,
    pub l: usize,
    pub k: usize,
    pub s: usize,
    /// `|C_Aut(G)(G)|`
    pub c: usize,
    /// `|X_G|`, elements with trivial stabilizer
    pub x_g: usize,
    /// smallest prime dividing `|Aut(G)|`
    pub p: Option<usize>,
    /// smallest prime dividing `|G|`
    pub q: Option<usize>,
}

impl BoundParams {
    pub fn new(rep: &AutocommutingReport, a: &AutomorphismGroup) -> Self {
        BoundParams {
            order: rep.order,
            aut_order: rep.aut_order,
            l: rep.absolute_center.order(),
            k: rep.autocommutator_subgroup.order(),
            s: rep.autocommutator_set.len(),
            c: pointwise_stabilizer(a).len(),
            x_g: rep.stabilizer_sizes.iter().filter(|&&s| s == 1).count(),
            p: smallest_prime_factor(rep.aut_order),
            q: smallest_prime_factor(rep.order),
        }
    }

    fn index(&self) -> usize {
        self.order / self.l
    }

    /// `(1/m)(1 + (m - 1)/|G:L(G)|)`
    pub fn translate_bound(&self, m: usize) -> Rational {
        let m_r = Rational::from(m);
        m_r.recip() * (Rational::one() + (m_r - Rational::one()) / Rational::from(self.index()))
    }

    /// `(1/p)((p - 1)/|G:L(G)| + 1)`
    pub fn index_form(&self, p: usize) -> Rational {
        let p_r = Rational::from(p);
        p_r.recip() * ((p_r - Rational::one()) / Rational::from(self.index()) + Rational::one())
    }
}

fn r(n: usize) -> Rational {
    Rational::from(n)
}

/// Every bound entry for `g` and its autocommuting report.
pub fn bound_report(
    g: &FiniteGroup,
    a: &AutomorphismGroup,
    rep: &AutocommutingReport,
) -> BoundReport {
    let pr = rep.pr;
    let bp = BoundParams::new(rep, a);
    let mut out = Vec::new();

    if rep.is_degenerate() {
        for id in [
            "B1",
            "B2",
            "B3",
            "B4",
            "B4-strict",
            "B5-lower",
            "B5-upper",
            "B6",
            "B7",
            "B8",
            "B9",
            "B10",
            "B10-chain",
        ] {
            out.push(BoundEntry::inapplicable(
                id,
                Side::Lower,
                None,
                pr,
                OUT_OF_HYPOTHESIS,
            ));
        }
        return BoundReport { entries: out };
    }

    let (n, au, l, c) = (r(bp.order), r(bp.aut_order), r(bp.l), r(bp.c));
    // G != L(G) forces a nontrivial automorphism, so p exists; q exists as |G| > 1
    let p = bp.p.expect("|Aut(G)| > 1");
    let q = bp.q.expect("|G| > 1");
    let (pr_p, pr_q) = (r(p), r(q));

    // B1: g = 1 lower bound
    let b1 = l / n + c * (n - l) / (n * au);
    let reduced = l / n + (n - l) / (n * au);
    out.push(
        BoundEntry::evaluate("B1", Side::Lower, Some(0), b1, pr)
            .with_witness(Witness::Reduced { value: reduced }),
    );

    // B2: g in S \ {1}
    let b2 = l * c / (n * au);
    for &t in rep.autocommutator_set.iter().filter(|&&t| t != 0) {
        out.push(
            BoundEntry::evaluate("B2", Side::Lower, Some(t), b2, rep.distribution[t]).with_witness(
                Witness::Reduced {
                    value: l / (n * au),
                },
            ),
        );
    }

    // B3: Pr_g <= Pr_1, equality exactly at g = 1
    for t in g.elements() {
        out.push(
            BoundEntry::evaluate("B3", Side::Upper, Some(t), pr, rep.distribution[t])
                .expect_equality(t == 0),
        );
    }

    // B4: g != 1
    let b4 = (n - l) / (pr_p * n);
    for t in g.elements().skip(1) {
        let actual = rep.distribution[t];
        out.push(
            BoundEntry::evaluate("B4", Side::Upper, Some(t), b4, actual)
                .with_witness(Witness::Primes { p, q }),
        );
        out.push(BoundEntry::evaluate(
            "B4-strict",
            Side::StrictUpper,
            Some(t),
            pr_p.recip(),
            actual,
        ));
    }
    // the bound itself sits strictly below 1/p
    out.push(BoundEntry::evaluate(
        "B4-strict",
        Side::StrictUpper,
        None,
        pr_p.recip(),
        b4,
    ));

    // B5: two-sided bound refined by X_G
    let x = r(bp.x_g);
    let b5_lo = l / n + (pr_p * (n - x - l) + x) / (n * au);
    let b5_hi = ((pr_p - Rational::one()) * l + n) / (pr_p * n) - x * (au - pr_p) / (pr_p * n * au);
    out.push(
        BoundEntry::evaluate("B5-lower", Side::Lower, None, b5_lo, pr)
            .with_witness(Witness::XG { size: bp.x_g }),
    );
    out.push(
        BoundEntry::evaluate("B5-upper", Side::Upper, None, b5_hi, pr)
            .with_witness(Witness::XG { size: bp.x_g }),
    );

    // B6
    let b6 = (pr_p + pr_q - Rational::one()) / (pr_p * pr_q);
    out.push(
        BoundEntry::evaluate("B6", Side::Upper, None, b6, pr)
            .with_witness(Witness::Primes { p, q }),
    );

    // B7: non-abelian only
    if g.is_abelian() {
        out.push(BoundEntry::inapplicable(
            "B7",
            Side::Upper,
            None,
            pr,
            "G is abelian",
        ));
    } else {
        let b7 = (pr_q * pr_q + pr_p - Rational::one()) / (pr_p * pr_q * pr_q);
        out.push(
            BoundEntry::evaluate("B7", Side::Upper, None, b7, pr)
                .with_witness(Witness::Primes { p, q }),
        );
    }

    // B8 / B9: lower bounds through |S| and |K|
    let cond = orbit_conditions(g, rep);
    let b8 = bp.translate_bound(bp.s);
    let b9 = bp.translate_bound(bp.k);
    out.push(
        BoundEntry::evaluate("B8", Side::Lower, None, b8, pr)
            .expect_equality(cond.0)
            .with_witness(Witness::OrbitCondition {
                orbit_is_translate_of_s: cond.0,
                orbit_equals_s: cond.1,
                k_equals_s: bp.k == bp.s,
            }),
    );
    out.push(
        BoundEntry::evaluate("B9", Side::Lower, None, b9, pr).with_witness(
            Witness::OrbitCondition {
                orbit_is_translate_of_s: cond.0,
                orbit_equals_s: cond.1,
                k_equals_s: bp.k == bp.s,
            },
        ),
    );

    // B10: B8 >= B9, then B9 against the older bound |L|/|G| + p(|G|-|L|)/(|G||Aut|)
    out.push(BoundEntry::evaluate("B10", Side::Lower, None, b9, b8));
    let chain = l / n + pr_p * (n - l) / (n * au);
    out.push(BoundEntry::evaluate(
        "B10-chain",
        Side::Lower,
        None,
        chain,
        b9,
    ));

    BoundReport { entries: out }
}

/// (`orb(x) = xS` for all `x ∉ L`, `orb(x) = S` for all `x ∉ L`)
fn orbit_conditions(g: &FiniteGroup, rep: &AutocommutingReport) -> (bool, bool) {
    let s = &rep.autocommutator_set;
    let outside = g.elements().filter(|&x| !rep.absolute_center.contains(x));
    let mut translate = true;
    let mut plain = true;
    for x in outside {
        let orb = rep.orbits.orbit_of(x);
        let mut xs: Vec<usize> = s.iter().map(|&t| g.mul(x, t)).collect();
        xs.sort_unstable();
        translate &= orb == xs.as_slice();
        plain &= orb == s.as_slice();
    }
    (translate, plain)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    /// Hypothesis met and every conclusion verified.
    Confirmed,
    HypothesisNotMet,
    /// Hypothesis met but a conclusion failed.
    Failed,
    OutOfHypothesis,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Characterization {
    pub id: String,
    pub status: VerdictStatus,
    pub detail: String,
}

impl Characterization {
    fn new(id: &str, status: VerdictStatus, detail: impl Into<String>) -> Self {
        Characterization {
            id: id.to_string(),
            status,
            detail: detail.into(),
        }
    }
}

fn confirmed_or_failed(ok: bool) -> VerdictStatus {
    if ok {
        VerdictStatus::Confirmed
    } else {
        VerdictStatus::Failed
    }
}

/// Checks the three characterizations of `G/L(G)` through `Pr(G, Aut(G))`.
pub fn characterization_check(
    g: &FiniteGroup,
    a: &AutomorphismGroup,
    rep: &AutocommutingReport,
) -> Result<Vec<Characterization>> {
    if rep.is_degenerate() {
        return Ok(["C1", "C2", "C3"]
            .iter()
            .map(|id| Characterization::new(id, VerdictStatus::OutOfHypothesis, OUT_OF_HYPOTHESIS))
            .collect());
    }
    let bp = BoundParams::new(rep, a);
    let (p, q) = (bp.p.expect("|Aut(G)| > 1"), bp.q.expect("|G| > 1"));
    let (pr_p, pr_q) = (r(p), r(q));
    let one = Rational::one();
    let pr = rep.pr;
    let (quo, _) = quotient(g, &rep.absolute_center)?;
    let zq = cyclic(q);
    let zq2 = elementary_abelian(q, 2);
    let quotient_is_zq = quo.order() == q && is_isomorphic(&quo, &zq)?.is_some();
    let quotient_is_zq2 = quo.order() == q * q && is_isomorphic(&quo, &zq2)?.is_some();
    let pq_divides = (bp.order * bp.aut_order).is_multiple_of(p * q);

    let c1_value = (pr_p + pr_q - one) / (pr_p * pr_q);
    let c1 = if pr == c1_value {
        Characterization::new(
            "C1",
            confirmed_or_failed(pq_divides && quotient_is_zq),
            format!(
                "Pr = {c1_value} with p={p}, q={q}; G/L(G) has order {} ({}); pq | |G||Aut(G)|: {pq_divides}",
                quo.order(),
                if quotient_is_zq { format!("cyclic of order {q}") } else { "not Z_q".into() }
            ),
        )
    } else {
        Characterization::new(
            "C1",
            VerdictStatus::HypothesisNotMet,
            format!("Pr = {pr} != (p+q-1)/(pq) = {c1_value}"),
        )
    };

    let c2_value = (pr_q * pr_q + pr_p - one) / (pr_p * pr_q * pr_q);
    let c2 = if g.is_abelian() {
        Characterization::new("C2", VerdictStatus::HypothesisNotMet, "G is abelian")
    } else if pr == c2_value {
        Characterization::new(
            "C2",
            confirmed_or_failed(pq_divides && quotient_is_zq2),
            format!(
                "Pr = {c2_value} with p={p}, q={q}; G/L(G) has order {}; isomorphic to Z_{q} x Z_{q}: {quotient_is_zq2}",
                quo.order()
            ),
        )
    } else {
        Characterization::new(
            "C2",
            VerdictStatus::HypothesisNotMet,
            format!("Pr = {pr} != (q^2+p-1)/(pq^2) = {c2_value}"),
        )
    };

    let all_index_p = g
        .elements()
        .filter(|&x| !rep.absolute_center.contains(x))
        .all(|x| rep.stabilizer_sizes[x] * p == bp.aut_order);
    let c3 = if all_index_p {
        let formula = bp.index_form(p);
        let mut ok = pr == formula;
        let mut detail = format!("every x outside L(G) has stabilizer index {p}; Pr = {pr}, (1/p)((p-1)/|G:L|+1) = {formula}");
        if quotient_is_zq {
            ok &= pr == c1_value;
            detail.push_str(&format!("; G/L(G) = Z_{q} so Pr should be {c1_value}"));
        }
        if quotient_is_zq2 {
            ok &= pr == c2_value;
            detail.push_str(&format!(
                "; G/L(G) = Z_{q} x Z_{q} so Pr should be {c2_value}"
            ));
        }
        Characterization::new("C3", confirmed_or_failed(ok), detail)
    } else {
        Characterization::new(
            "C3",
            VerdictStatus::HypothesisNotMet,
            format!("some x outside L(G) has stabilizer index other than {p}"),
        )
    };

    Ok(vec![c1, c2, c3])
}
