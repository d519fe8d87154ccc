//! Acceptance criteria. Runs every criterion, prints one PASS/FAIL line for
//! each, and exits non-zero if any fails. All comparisons are exact.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;

use autocomm::autocomm::{
    autocommutator, autocommutator_fiber, check_product_rule, pr_acentralizer_sum, pr_g_bruteforce,
    pr_g_orbit_formula, AutocommutingReport,
};
use autocomm::automorphism::{
    aut_stabilizer, enumerate_automorphisms, orbits, AutLimits, AutomorphismGroup,
};
use autocomm::bounds::{bound_report, characterization_check, VerdictStatus};
use autocomm::catalog::{build_str, cyclic, standard_corpus};
use autocomm::group::quotient;
use autocomm::iso::is_isomorphic;
use autocomm::isoclinism::{search, verify_invariance, IsoclinismData, IsoclinismResult};
use autocomm::report::{survey, survey_csv};
use autocomm::{Execution, FiniteGroup, Rational};

const FORMULA_ORDER: usize = 16;
const FORMULA_TIME_LIMIT: Duration = Duration::from_secs(60);
const BOUND_ORDER: usize = 24;
const CORPUS_ORDER: usize = 24;
const FIBER_ORDER: usize = 12;
const ORACLE_ORDER: usize = 10;
const ISOCLINISM_ORDER: usize = 12;
const ISOCLINISM_BUDGET: u64 = 1_000_000;
const SURVEY_ORDER: usize = 16;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rat(s: &str) -> Rational {
    s.parse().unwrap()
}

fn analysed(max_order: usize) -> Vec<(FiniteGroup, AutocommutingReport, AutomorphismGroup)> {
    standard_corpus(max_order)
        .into_iter()
        .map(|g| {
            let a = enumerate_automorphisms(&g).unwrap();
            let rep = AutocommutingReport::compute(&g, &a, Execution::Parallel).unwrap();
            (g, rep, a)
        })
        .collect()
}

fn formula_equivalence() -> Outcome {
    let start = Instant::now();
    let corpus = standard_corpus(FORMULA_ORDER);
    let mut checks = 0;
    for g in &corpus {
        let a = enumerate_automorphisms(g).map_err(|e| e.to_string())?;
        let orb = orbits(g, &a);
        for t in g.elements() {
            let brute = pr_g_bruteforce(g, &a, t);
            let orbit = pr_g_orbit_formula(g, &orb, t);
            ensure(brute == orbit, || {
                format!("{} g={t}: {brute} vs {orbit}", g.name())
            })?;
            if t == g.identity() {
                let acent = pr_acentralizer_sum(g, &a, Execution::Parallel);
                ensure(acent == brute, || {
                    format!("{} acentralizer sum {acent} vs {brute}", g.name())
                })?;
            }
            checks += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < FORMULA_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} groups, {checks} elements, {elapsed:.1?}",
        corpus.len()
    ))
}

fn known_values() -> Outcome {
    for (spec, pr) in [
        ("cyclic:3", "2/3"),
        ("cyclic:4", "3/4"),
        ("symmetric:3", "1/2"),
        ("dicyclic:2", "3/8"),
    ] {
        let g = build_str(spec).unwrap();
        let a = enumerate_automorphisms(&g).unwrap();
        let brute = pr_g_bruteforce(&g, &a, g.identity());
        let rep = AutocommutingReport::compute(&g, &a, Execution::Parallel).unwrap();
        ensure(brute == rat(pr) && rep.pr == rat(pr), || {
            format!("Pr({spec}) = {} (counting {brute}), expected {pr}", rep.pr)
        })?;
    }
    let z4 = cyclic(4);
    let a = enumerate_automorphisms(&z4).unwrap();
    let two = z4.element_by_label("2").unwrap();
    let v = pr_g_bruteforce(&z4, &a, two);
    ensure(v == rat("1/4"), || format!("Pr_2(Z4) = {v}"))?;
    let corpus = analysed(CORPUS_ORDER);
    for (g, rep, _) in &corpus {
        let total: Rational = rep.distribution.iter().copied().sum();
        ensure(total == Rational::one(), || {
            format!("{} sums to {total}", g.name())
        })?;
    }
    Ok(format!(
        "4 values, Pr_2(Z4), {} distributions sum to 1",
        corpus.len()
    ))
}

fn bound_suite() -> Outcome {
    let mut failures = Vec::new();
    let mut groups = 0;
    let mut entries = 0;
    for (g, rep, a) in analysed(BOUND_ORDER) {
        if rep.is_degenerate() {
            continue;
        }
        groups += 1;
        let br = bound_report(&g, &a, &rep);
        for e in &br.entries {
            entries += 1;
            if e.holds == Some(false) {
                failures.push(format!(
                    "{} {}: {} vs bound {}",
                    g.name(),
                    e.id,
                    e.actual,
                    e.bound_value.map(|b| b.to_string()).unwrap_or_default()
                ));
            }
        }
        for e in br.entries_for("B3") {
            let at_identity = e.g == Some(g.identity());
            if e.equality != Some(at_identity) {
                failures.push(format!(
                    "{} B3 equality {:?} at g={:?}",
                    g.name(),
                    e.equality,
                    e.g
                ));
            }
        }
        let p = Rational::from(autocomm::bounds::smallest_prime_factor(rep.aut_order).unwrap());
        for t in g.elements().skip(1) {
            if rep.distribution[t] >= p.recip() {
                failures.push(format!(
                    "{} Pr_{t} = {} not below 1/p",
                    g.name(),
                    rep.distribution[t]
                ));
            }
        }
        if let Some(e) = br.get("B10") {
            if e.is_applicable() && e.holds != Some(true) {
                failures.push(format!("{} B8 >= B9 ordering fails", g.name()));
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{groups} groups, {entries} entries"))
    } else {
        let by_id = failures
            .iter()
            .map(|f| {
                f.split(' ')
                    .nth(1)
                    .unwrap_or("")
                    .trim_end_matches(':')
                    .to_string()
            })
            .counts();
        Err(format!(
            "{} failing entries across {groups} groups ({:?}); first: {}",
            failures.len(),
            by_id,
            failures.iter().take(3).join("; ")
        ))
    }
}

fn characterization() -> Outcome {
    for (spec, q) in [("cyclic:4", 2usize), ("cyclic:3", 3)] {
        let g = build_str(spec).unwrap();
        let a = enumerate_automorphisms(&g).unwrap();
        let rep = AutocommutingReport::compute(&g, &a, Execution::Parallel).unwrap();
        let cs = characterization_check(&g, &a, &rep).unwrap();
        ensure(
            cs[0].id == "C1" && cs[0].status == VerdictStatus::Confirmed,
            || format!("{spec}: C1 {:?}: {}", cs[0].status, cs[0].detail),
        )?;
        let (quo, _) = quotient(&g, &rep.absolute_center).unwrap();
        ensure(
            quo.order() == q && is_isomorphic(&quo, &cyclic(q)).unwrap().is_some(),
            || format!("{spec}: G/L(G) of order {} is not Z{q}", quo.order()),
        )?;
    }
    let z4 = cyclic(4);
    let a = enumerate_automorphisms(&z4).unwrap();
    let rep = AutocommutingReport::compute(&z4, &a, Execution::Parallel).unwrap();
    let l: Vec<&str> = rep
        .absolute_center
        .members()
        .iter()
        .map(|&x| z4.label(x))
        .collect();
    ensure(l == ["0", "2"], || format!("L(Z4) = {l:?}"))?;

    let mut triggered = 0;
    for (g, rep, a) in analysed(CORPUS_ORDER) {
        for c in characterization_check(&g, &a, &rep).unwrap() {
            ensure(c.status != VerdictStatus::Failed, || {
                format!("{} {}: {}", g.name(), c.id, c.detail)
            })?;
            if c.id != "C3" && c.status == VerdictStatus::Confirmed {
                triggered += 1;
            }
        }
    }
    Ok(format!(
        "Z4 and Z3 confirmed; {triggered} C1/C2 triggers in corpus, none failing"
    ))
}

fn product_rule() -> Outcome {
    let v = check_product_rule(
        &cyclic(3),
        &cyclic(4),
        AutLimits::default(),
        Execution::Parallel,
    )
    .map_err(|e| e.to_string())?;
    ensure(v.aut_product == 4 && v.aut_left * v.aut_right == 4, || {
        format!(
            "|Aut| {} vs {} * {}",
            v.aut_product, v.aut_left, v.aut_right
        )
    })?;
    ensure(v.pairs.len() == 12, || format!("{} pairs", v.pairs.len()))?;
    if let Some(p) = v.pairs.iter().find(|p| !p.equal) {
        return Err(format!(
            "({}, {}): {} vs {}",
            p.g, p.h, p.product, p.factors
        ));
    }
    let z12 = enumerate_automorphisms(&cyclic(12)).unwrap().order();
    ensure(z12 == 4, || format!("|Aut(Z12)| = {z12}"))?;
    Ok("|Aut(Z12)| = 4, 12 pairs multiply".into())
}

fn inverse_symmetry() -> Outcome {
    let corpus = analysed(CORPUS_ORDER);
    for (g, rep, _) in &corpus {
        for x in g.elements() {
            ensure(rep.distribution[x] == rep.distribution[g.inv(x)], || {
                format!("{} g={x}", g.name())
            })?;
        }
    }
    Ok(format!("{} groups", corpus.len()))
}

fn fiber_criteria() -> Outcome {
    let mut pairs = 0;
    for g in standard_corpus(FIBER_ORDER) {
        let a = enumerate_automorphisms(&g).unwrap();
        let orb = orbits(&g, &a);
        for x in g.elements() {
            let stab = aut_stabilizer(&a, x);
            for t in g.elements() {
                pairs += 1;
                let fiber = autocommutator_fiber(&g, &a, x, t);
                let criterion = orb.same_orbit(x, g.mul(x, t));
                ensure(fiber.is_empty() != criterion, || {
                    format!(
                        "{} x={x} g={t}: nonempty {} vs xg in orb(x) {criterion}",
                        g.name(),
                        !fiber.is_empty()
                    )
                })?;
                if let Some(&sigma) = fiber.first() {
                    let coset: Vec<usize> = stab
                        .iter()
                        .map(|&s| a.compose_idx(sigma, s))
                        .sorted()
                        .collect();
                    ensure(coset == fiber, || {
                        format!("{} x={x} g={t}: fiber is not a coset", g.name())
                    })?;
                    ensure(
                        fiber.iter().all(|&i| autocommutator(&g, x, a.get(i)) == t),
                        || format!("{} x={x} g={t}", g.name()),
                    )?;
                }
            }
        }
    }
    Ok(format!("{pairs} (x, g) pairs"))
}

fn automorphism_oracle() -> Outcome {
    let corpus = standard_corpus(ORACLE_ORDER);
    for g in &corpus {
        let n = g.order();
        let oracle: Vec<Vec<usize>> = (1..n)
            .permutations(n - 1)
            .map(|p| std::iter::once(0).chain(p).collect::<Vec<_>>())
            .filter(|f| {
                g.elements()
                    .all(|x| g.elements().all(|y| f[g.mul(x, y)] == g.mul(f[x], f[y])))
            })
            .sorted()
            .collect();
        let fast: Vec<Vec<usize>> = enumerate_automorphisms(g)
            .unwrap()
            .elements()
            .iter()
            .map(|a| a.images().to_vec())
            .sorted()
            .collect();
        ensure(fast == oracle, || {
            format!("{}: {} vs {}", g.name(), fast.len(), oracle.len())
        })?;
    }
    for (spec, order) in [
        ("cyclic:8", 4),
        ("symmetric:3", 6),
        ("dicyclic:2", 24),
        ("elementary_abelian:2,3", 168),
    ] {
        let got = enumerate_automorphisms(&build_str(spec).unwrap())
            .unwrap()
            .order();
        ensure(got == order, || {
            format!("|Aut({spec})| = {got}, expected {order}")
        })?;
    }
    Ok(format!(
        "{} groups match the bijection search",
        corpus.len()
    ))
}

fn isoclinism() -> Outcome {
    let corpus = standard_corpus(ISOCLINISM_ORDER);
    for g in &corpus {
        let d = IsoclinismData::new(g, AutLimits::default(), Execution::Parallel)
            .map_err(|e| e.to_string())?;
        let w = match search(&d, &d, ISOCLINISM_BUDGET, Execution::Parallel)
            .map_err(|e| e.to_string())?
        {
            IsoclinismResult::Found(w) => w,
            IsoclinismResult::None { reason } => return Err(format!("{}: {reason}", g.name())),
        };
        let v = verify_invariance(&d, &d, &w).map_err(|e| e.to_string())?;
        ensure(v.holds(), || format!("{}: invariance fails", g.name()))?;
        for x in g.elements() {
            let mapped = w.beta_of(x).map_or(rat("0"), |y| d.distribution[y]);
            ensure(mapped == d.distribution[x], || {
                format!("{} g={x}", g.name())
            })?;
        }
    }
    let z3 = IsoclinismData::new(&cyclic(3), AutLimits::default(), Execution::Parallel).unwrap();
    let z4 = IsoclinismData::new(&cyclic(4), AutLimits::default(), Execution::Parallel).unwrap();
    match search(&z3, &z4, ISOCLINISM_BUDGET, Execution::Parallel) {
        Ok(IsoclinismResult::None { .. }) => {}
        other => return Err(format!("(Z3, Z4): {other:?}")),
    }
    Ok(format!(
        "{} groups self-autoisoclinic; (Z3, Z4) none",
        corpus.len()
    ))
}

fn determinism() -> Outcome {
    let limits = AutLimits::default();
    let one = Execution::with_jobs(1, |e| survey_csv(&survey(SURVEY_ORDER, limits, e)));
    let four = Execution::with_jobs(4, |e| survey_csv(&survey(SURVEY_ORDER, limits, e)));
    let again = Execution::with_jobs(3, |e| survey_csv(&survey(SURVEY_ORDER, limits, e)));
    ensure(one == four && four == again, || {
        "survey output differs between job counts".into()
    })?;
    Ok(format!(
        "{} rows, {} bytes identical at 1, 3 and 4 jobs",
        one.lines().count() - 1,
        one.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("formula equivalence", formula_equivalence),
        ("known values", known_values),
        ("bound suite", bound_suite),
        ("characterization", characterization),
        ("product rule", product_rule),
        ("inverse symmetry", inverse_symmetry),
        ("coset and orbit criteria", fiber_criteria),
        ("automorphism oracle", automorphism_oracle),
        ("isoclinism", isoclinism),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name:<26} PASS  {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name:<26} FAIL  {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
