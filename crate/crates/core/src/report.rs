//! Serializable analysis reports and the corpus survey.

use std::fmt::Write as _;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::autocomm::AutocommutingReport;
use crate::automorphism::{enumerate_automorphisms_with, AutLimits};
use crate::bounds::{bound_report, characterization_check, BoundEntry, Characterization};
use crate::catalog::standard_corpus_entries;
use crate::error::Result;
use crate::exec::Execution;
use crate::group::FiniteGroup;
use crate::rational::Rational;

/// `label -> Pr_g`, kept in element order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabeledDistribution(pub Vec<(String, Rational)>);

impl Serialize for LabeledDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for LabeledDistribution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = LabeledDistribution;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a map from element labels to rationals")
            }
            fn visit_map<A: MapAccess<'de>>(
                self,
                mut a: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = a.next_entry::<String, Rational>()? {
                    out.push((k, v));
                }
                Ok(LabeledDistribution(out))
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AnalyzeOptions {
    pub all_g: bool,
    pub bounds: bool,
    pub characterize: bool,
    pub automorphisms: bool,
}

/// The JSON report for one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub group: String,
    pub order: usize,
    pub aut_order: usize,
    #[serde(rename = "L")]
    pub l: Vec<usize>,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    pub orbit_count: usize,
    pub pr: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distribution: Option<LabeledDistribution>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Vec<BoundEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characterizations: Option<Vec<Characterization>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automorphisms: Option<Vec<Vec<usize>>>,
}

impl AnalysisReport {
    pub fn violations(&self) -> Vec<&BoundEntry> {
        self.bounds
            .iter()
            .flatten()
            .filter(|e| e.violated())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn analyze(
    g: &FiniteGroup,
    opts: AnalyzeOptions,
    limits: AutLimits,
    exec: Execution,
) -> Result<AnalysisReport> {
    let a = enumerate_automorphisms_with(g, limits)?;
    let rep = AutocommutingReport::compute(g, &a, exec)?;
    let distribution = opts.all_g.then(|| {
        LabeledDistribution(
            g.elements()
                .map(|x| (g.label(x).to_string(), rep.distribution[x]))
                .collect(),
        )
    });
    let bounds = opts.bounds.then(|| bound_report(g, &a, &rep).entries);
    let characterizations = if opts.characterize {
        Some(characterization_check(g, &a, &rep)?)
    } else {
        None
    };
    Ok(AnalysisReport {
        group: rep.group.clone(),
        order: rep.order,
        aut_order: rep.aut_order,
        l: rep.absolute_center.members().to_vec(),
        k: rep.autocommutator_subgroup.members().to_vec(),
        s: rep.autocommutator_set.clone(),
        orbit_count: rep.orbit_count,
        pr: rep.pr,
        distribution,
        bounds,
        characterizations,
        automorphisms: opts
            .automorphisms
            .then(|| a.elements().iter().map(|al| al.images().to_vec()).collect()),
    })
}

/// Plain-text rendering of a report.
pub fn render_table(r: &AnalysisReport, g: &FiniteGroup) -> String {
    let labels = |xs: &[usize]| {
        xs.iter()
            .map(|&x| g.label(x))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let mut out = String::new();
    let _ = writeln!(out, "group        {}", r.group);
    let _ = writeln!(out, "|G|          {}", r.order);
    let _ = writeln!(out, "|Aut(G)|     {}", r.aut_order);
    let _ = writeln!(out, "L(G)         {{{}}}", labels(&r.l));
    let _ = writeln!(out, "K(G)         {{{}}}", labels(&r.k));
    let _ = writeln!(out, "S(G,Aut(G))  {{{}}}", labels(&r.s));
    let _ = writeln!(out, "orbits       {}", r.orbit_count);
    let _ = writeln!(out, "Pr           {}", r.pr);
    if let Some(d) = &r.distribution {
        let _ = writeln!(out, "\n{:<16} Pr_g", "g");
        for (label, v) in &d.0 {
            let _ = writeln!(out, "{label:<16} {v}");
        }
    }
    if let Some(b) = &r.bounds {
        let _ = writeln!(
            out,
            "\n{:<10} {:<6} {:<13} {:<12} {:<12} {:<6} {:<6}",
            "bound", "g", "side", "bound", "actual", "holds", "equal"
        );
        for e in b {
            let opt = |v: Option<bool>| v.map_or("-".to_string(), |b| b.to_string());
            let _ = writeln!(
                out,
                "{:<10} {:<6} {:<13} {:<12} {:<12} {:<6} {:<6}{}",
                e.id,
                e.g.map_or("-".to_string(), |x| g.label(x).to_string()),
                format!("{:?}", e.side).to_lowercase(),
                e.bound_value.map_or("n/a".to_string(), |v| v.to_string()),
                e.actual.to_string(),
                opt(e.holds),
                opt(e.equality),
                if e.violated() { "  VIOLATED" } else { "" }
            );
        }
    }
    if let Some(cs) = &r.characterizations {
        let _ = writeln!(out);
        for c in cs {
            let _ = writeln!(out, "{}: {:?}: {}", c.id, c.status, c.detail);
        }
    }
    out
}

/// One survey line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub name: String,
    pub order: usize,
    pub aut_order: Option<usize>,
    pub l: Option<usize>,
    pub k: Option<usize>,
    pub s: Option<usize>,
    pub orbit_count: Option<usize>,
    pub pr: Option<Rational>,
    pub b6_bound: Option<Rational>,
    pub b7_bound: Option<Rational>,
    pub b6_equality: Option<bool>,
    pub b7_equality: Option<bool>,
    pub violations: Option<usize>,
    pub status: String,
}

fn survey_row(g: &FiniteGroup, limits: AutLimits, exec: Execution) -> SurveyRow {
    let mut row = SurveyRow {
        name: g.name().to_string(),
        order: g.order(),
        aut_order: None,
        l: None,
        k: None,
        s: None,
        orbit_count: None,
        pr: None,
        b6_bound: None,
        b7_bound: None,
        b6_equality: None,
        b7_equality: None,
        violations: None,
        status: "ok".into(),
    };
    let res = enumerate_automorphisms_with(g, limits).and_then(|a| {
        let rep = AutocommutingReport::compute(g, &a, exec)?;
        Ok((bound_report(g, &a, &rep), rep))
    });
    match res {
        Ok((br, rep)) => {
            row.aut_order = Some(rep.aut_order);
            row.l = Some(rep.absolute_center.order());
            row.k = Some(rep.autocommutator_subgroup.order());
            row.s = Some(rep.autocommutator_set.len());
            row.orbit_count = Some(rep.orbit_count);
            row.pr = Some(rep.pr);
            if let Some(e) = br.get("B6") {
                row.b6_bound = e.bound_value;
                row.b6_equality = e.equality;
            }
            if let Some(e) = br.get("B7") {
                row.b7_bound = e.bound_value;
                row.b7_equality = e.equality;
            }
            row.violations = Some(br.violations().count());
        }
        Err(e) => row.status = e.to_string(),
    }
    row
}

/// Analyzes every corpus group up to `max_order`. Rows come back sorted by
/// (order, name) whatever the execution strategy.
pub fn survey(max_order: usize, limits: AutLimits, exec: Execution) -> Vec<SurveyRow> {
    let corpus = standard_corpus_entries(max_order);
    let mut rows = exec.map_slice(&corpus, |e| survey_row(&e.group, limits, exec));
    rows.sort_by(|a, b| (a.order, &a.name).cmp(&(b.order, &b.name)));
    rows
}

pub const SURVEY_HEADER: [&str; 14] = [
    "name",
    "order",
    "aut_order",
    "L",
    "K",
    "S",
    "orbit_count",
    "pr",
    "b6_bound",
    "b7_bound",
    "b6_equality",
    "b7_equality",
    "violations",
    "status",
];

fn row_fields(r: &SurveyRow) -> Vec<String> {
    fn o<T: ToString>(v: &Option<T>) -> String {
        v.as_ref().map_or(String::new(), |v| v.to_string())
    }
    vec![
        r.name.clone(),
        r.order.to_string(),
        o(&r.aut_order),
        o(&r.l),
        o(&r.k),
        o(&r.s),
        o(&r.orbit_count),
        o(&r.pr),
        o(&r.b6_bound),
        o(&r.b7_bound),
        o(&r.b6_equality),
        o(&r.b7_equality),
        o(&r.violations),
        r.status.clone(),
    ]
}

/// Comma-separated, header row first, rationals as `a/b`.
pub fn survey_csv(rows: &[SurveyRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SURVEY_HEADER).expect("in-memory write");
    for r in rows {
        w.write_record(row_fields(r)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub fn survey_table(rows: &[SurveyRow]) -> String {
    let cells: Vec<Vec<String>> =
        std::iter::once(SURVEY_HEADER.iter().map(|s| s.to_string()).collect())
            .chain(rows.iter().map(row_fields))
            .collect();
    let widths: Vec<usize> = (0..SURVEY_HEADER.len())
        .map(|c| cells.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in &cells {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::cyclic;

    #[test]
    fn z4_report_json() {
        let opts = AnalyzeOptions {
            all_g: true,
            bounds: true,
            characterize: true,
            automorphisms: true,
        };
        let r = analyze(&cyclic(4), opts, AutLimits::default(), Execution::Parallel).unwrap();
        let json = r.to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["pr"], "3/4");
        assert_eq!(v["distribution"]["2"], "1/4");
        assert_eq!(v["distribution"]["1"], "0/1");
        assert_eq!(v["L"], serde_json::json!([0, 2]));
        assert_eq!(v["automorphisms"][1], serde_json::json!([0, 3, 2, 1]));
        let back: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn survey_of_order_one() {
        let rows = survey(1, AutLimits::default(), Execution::Sequential);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].pr, Some(Rational::one()));
        let csv = survey_csv(&rows);
        assert!(csv.starts_with("name,order,aut_order"));
        assert!(csv
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("Z1,1,1,1,1,1,1,1/1,"));
    }

    #[test]
    fn z4_row_has_b6_equality() {
        let rows = survey(4, AutLimits::default(), Execution::Parallel);
        let z4 = rows.iter().find(|r| r.name == "Z4").unwrap();
        assert_eq!(z4.b6_equality, Some(true));
        assert_eq!(z4.b6_bound, Some(Rational::new(3, 4)));
    }
}
