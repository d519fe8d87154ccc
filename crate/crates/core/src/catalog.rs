//! Built-in small groups, the `kind:params` spec language, and group files.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{direct_product, FiniteGroup, MakeOptions};
use crate::iso::is_isomorphic;

/// Largest degree accepted for `symmetric` and `alternating`.
pub const DEFAULT_MAX_DEGREE: usize = 6;
/// Largest closure built from a permutation-generator file.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    /// Dicyclic group of order `4n`; `Dicyclic(2)` is Q_8.
    Dicyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    ElementaryAbelian {
        p: usize,
        k: usize,
    },
    Product(Box<GroupSpec>, Box<GroupSpec>),
    File(String),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Dicyclic(n) => write!(f, "dicyclic:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Alternating(n) => write!(f, "alternating:{n}"),
            GroupSpec::ElementaryAbelian { p, k } => write!(f, "elementary_abelian:{p},{k}"),
            GroupSpec::Product(a, b) => write!(f, "product:{a},{b}"),
            GroupSpec::File(p) => write!(f, "file:{p}"),
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = SpecParser { src: s, pos: 0 };
        let spec = p.spec()?;
        if p.pos != s.len() {
            return Err(Error::InvalidSpec(format!(
                "trailing input {:?} in {s:?}",
                &s[p.pos..]
            )));
        }
        Ok(spec)
    }
}

struct SpecParser<'a> {
    src: &'a str,
    pos: usize,
}

impl SpecParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::InvalidSpec(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, c: char) -> Result<()> {
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn word(&mut self) -> &str {
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        self.pos += len;
        &self.src[start..self.pos]
    }

    fn int(&mut self) -> Result<usize> {
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        self.pos += len;
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("expected an integer"))
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let kind = self.word().to_ascii_lowercase();
        self.eat(':')?;
        let spec = match kind.as_str() {
            "cyclic" => GroupSpec::Cyclic(self.int()?),
            "dihedral" => GroupSpec::Dihedral(self.int()?),
            "dicyclic" => GroupSpec::Dicyclic(self.int()?),
            "symmetric" => GroupSpec::Symmetric(self.int()?),
            "alternating" => GroupSpec::Alternating(self.int()?),
            "elementary_abelian" => {
                let p = self.int()?;
                self.eat(',')?;
                let k = self.int()?;
                GroupSpec::ElementaryAbelian { p, k }
            }
            "product" => {
                let a = self.spec()?;
                self.eat(',')?;
                let b = self.spec()?;
                GroupSpec::Product(Box::new(a), Box::new(b))
            }
            "file" => {
                let path = self.rest().to_string();
                self.pos = self.src.len();
                if path.is_empty() {
                    return Err(self.err("missing file path"));
                }
                GroupSpec::File(path)
            }
            other => return Err(Error::InvalidSpec(format!("unknown group kind {other:?}"))),
        };
        Ok(spec)
    }
}

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSpec(m));
        match *self {
            GroupSpec::Cyclic(0) => bad("cyclic order must be at least 1".into()),
            GroupSpec::Dihedral(0) => bad("dihedral parameter must be at least 1".into()),
            GroupSpec::Dicyclic(n) if n < 2 => bad("dicyclic parameter must be at least 2".into()),
            GroupSpec::Symmetric(n) | GroupSpec::Alternating(n)
                if n == 0 || n > DEFAULT_MAX_DEGREE =>
            {
                bad(format!("degree must be in 1..={DEFAULT_MAX_DEGREE}"))
            }
            GroupSpec::ElementaryAbelian { p, k } if !is_prime(p) || k == 0 => {
                bad("elementary_abelian needs a prime p and k >= 1".into())
            }
            GroupSpec::ElementaryAbelian { p, k }
                if p.checked_pow(k as u32).is_none_or(|o| o > 4096) =>
            {
                bad("elementary_abelian order too large".into())
            }
            GroupSpec::Product(ref a, ref b) => {
                a.validate()?;
                b.validate()
            }
            _ => Ok(()),
        }
    }
}

/// Builds the group described by `spec`.
pub fn build(spec: &GroupSpec) -> Result<FiniteGroup> {
    spec.validate()?;
    match spec {
        GroupSpec::Cyclic(n) => Ok(cyclic(*n)),
        GroupSpec::Dihedral(n) => Ok(dihedral(*n)),
        GroupSpec::Dicyclic(n) => Ok(dicyclic(*n)),
        GroupSpec::Symmetric(n) => Ok(symmetric(*n)),
        GroupSpec::Alternating(n) => Ok(alternating(*n)),
        GroupSpec::ElementaryAbelian { p, k } => Ok(elementary_abelian(*p, *k)),
        GroupSpec::Product(a, b) => {
            let (ga, gb) = (build(a)?, build(b)?);
            Ok(product(&ga, &gb))
        }
        GroupSpec::File(path) => read_group_file(Path::new(path)),
    }
}

/// Parses and builds in one step.
pub fn build_str(spec: &str) -> Result<FiniteGroup> {
    build(&spec.parse()?)
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn trusted() -> MakeOptions {
    MakeOptions {
        trusted: true,
        ..MakeOptions::default()
    }
}

fn from_rule(
    name: String,
    n: usize,
    mul: impl Fn(usize, usize) -> usize,
    labels: Vec<String>,
) -> FiniteGroup {
    let table = (0..n)
        .map(|a| (0..n).map(|b| mul(a, b)).collect())
        .collect();
    FiniteGroup::from_table_with(name, table, Some(labels), trusted())
        .expect("built-in constructor yields a group")
}

pub fn cyclic(n: usize) -> FiniteGroup {
    from_rule(
        format!("Z{n}"),
        n,
        |a, b| (a + b) % n,
        (0..n).map(|i| i.to_string()).collect(),
    )
}

fn power_label(base: &str, i: usize) -> String {
    match i {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{i}"),
    }
}

/// Dihedral group of order `2n`: `r^i` at index `i`, `s r^i` at `n + i`.
pub fn dihedral(n: usize) -> FiniteGroup {
    let labels = (0..2 * n)
        .map(|x| {
            let r = power_label("r", x % n);
            match (x < n, r.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => r,
                (false, true) => "s".to_string(),
                (false, false) => format!("s {r}"),
            }
        })
        .collect();
    from_rule(
        format!("D{n}"),
        2 * n,
        |a, b| {
            let (ra, sa) = (a % n, a >= n);
            let (rb, sb) = (b % n, b >= n);
            // r^a s = s r^-a
            let r = if sb { (n - ra + rb) % n } else { (ra + rb) % n };
            r + if sa != sb { n } else { 0 }
        },
        labels,
    )
}

/// Dicyclic group of order `4n`: `a^i b^j` at index `i + 2n j`, with
/// `a^2n = 1`, `b^2 = a^n`, `b a b^-1 = a^-1`.
pub fn dicyclic(n: usize) -> FiniteGroup {
    let m = 2 * n;
    let labels = (0..2 * m)
        .map(|x| {
            let a = power_label("a", x % m);
            match (x < m, a.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => a,
                (false, true) => "b".to_string(),
                (false, false) => format!("{a} b"),
            }
        })
        .collect();
    let name = if n == 2 {
        "Q8".to_string()
    } else {
        format!("Dic{n}")
    };
    from_rule(
        name,
        2 * m,
        |x, y| {
            let (i, j) = (x % m, x / m);
            let (k, l) = (y % m, y / m);
            match (j, l) {
                (0, _) => (i + k) % m + l * m,
                (_, 0) => (i + m - k) % m + m,
                _ => (i + m - k + n) % m,
            }
        },
        labels,
    )
}

fn one_line(p: &[usize]) -> String {
    if p.len() <= 9 {
        p.iter().map(|&i| char::from(b'1' + i as u8)).collect()
    } else {
        let parts: Vec<String> = p.iter().map(|i| (i + 1).to_string()).collect();
        format!("[{}]", parts.join(" "))
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn is_even(p: &[usize]) -> bool {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2 == 0
}

/// Group on the given permutations (identity first) with `p * q = p ∘ q`.
fn permutation_group(name: String, perms: Vec<Vec<usize>>) -> FiniteGroup {
    let index: HashMap<&[usize], usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    let table = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| {
                    let pq: Vec<usize> = q.iter().map(|&i| p[i]).collect();
                    index[pq.as_slice()]
                })
                .collect()
        })
        .collect();
    let labels = perms.iter().map(|p| one_line(p)).collect();
    FiniteGroup::from_table_with(name, table, Some(labels), trusted())
        .expect("permutation closure is a group")
}

/// All permutations of `0..n` in lexicographic order.
pub fn symmetric(n: usize) -> FiniteGroup {
    permutation_group(format!("S{n}"), permutations(n))
}

pub fn alternating(n: usize) -> FiniteGroup {
    let perms = permutations(n).into_iter().filter(|p| is_even(p)).collect();
    permutation_group(format!("A{n}"), perms)
}

/// `(Z_p)^k`; element index is the base-`p` number whose digits are the
/// coordinates.
pub fn elementary_abelian(p: usize, k: usize) -> FiniteGroup {
    let n = p.pow(k as u32);
    let digits = |mut x: usize| {
        (0..k)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect::<Vec<_>>()
    };
    let labels = (0..n)
        .map(|x| {
            let d: Vec<String> = digits(x).iter().map(|d| d.to_string()).collect();
            format!("({})", d.join(","))
        })
        .collect();
    from_rule(
        if k == 1 {
            format!("Z{p}")
        } else {
            format!("Z{p}^{k}")
        },
        n,
        |a, b| {
            let (da, db) = (digits(a), digits(b));
            da.iter()
                .zip(&db)
                .enumerate()
                .map(|(i, (x, y))| ((x + y) % p) * p.pow(i as u32))
                .sum()
        },
        labels,
    )
}

/// Direct product with a readable name.
pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let wrap = |n: &str| {
        if n.contains('x') {
            format!("({n})")
        } else {
            n.to_string()
        }
    };
    let name = format!("{}x{}", wrap(a.name()), wrap(b.name()));
    direct_product(a, b).with_name(name)
}

/// Table file: `{"name", "order", "table", "labels"?}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct TableFile {
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// Permutation-generator file: `{"name", "degree", "generators"}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl TableFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        TableFile {
            name: g.name().to_string(),
            order: g.order(),
            table: g.table_rows(),
            labels: Some(g.labels().to_vec()),
        }
    }
}

pub fn read_group_file(path: &Path) -> Result<FiniteGroup> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::FileFormat {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_group_json(&text, &path.display().to_string(), DEFAULT_CLOSURE_CAP)
}

/// Parses either file format; `origin` names the source in diagnostics.
pub fn parse_group_json(text: &str, origin: &str, closure_cap: usize) -> Result<FiniteGroup> {
    let fmt_err = |message: String| Error::FileFormat {
        path: origin.to_string(),
        message,
    };
    let json_err =
        |e: serde_json::Error| fmt_err(format!("line {}, column {}: {e}", e.line(), e.column()));
    let value: serde_json::Value = serde_json::from_str(text).map_err(json_err)?;
    let obj = value
        .as_object()
        .ok_or_else(|| fmt_err("top level must be a JSON object".into()))?;
    if obj.contains_key("table") {
        let f: TableFile = serde_json::from_value(value).map_err(|e| fmt_err(e.to_string()))?;
        if f.order != f.table.len() {
            return Err(fmt_err(format!(
                "field `order` is {} but `table` has {} rows",
                f.order,
                f.table.len()
            )));
        }
        for (i, row) in f.table.iter().enumerate() {
            if row.len() != f.order {
                return Err(fmt_err(format!(
                    "field `table`: row {i} has {} entries, expected {}",
                    row.len(),
                    f.order
                )));
            }
        }
        FiniteGroup::from_table(f.name, f.table, f.labels)
    } else if obj.contains_key("generators") {
        let f: GeneratorFile = serde_json::from_value(value).map_err(|e| fmt_err(e.to_string()))?;
        for (i, g) in f.generators.iter().enumerate() {
            let mut seen = vec![false; f.degree];
            let ok = g.len() == f.degree
                && g.iter()
                    .all(|&x| x < f.degree && !std::mem::replace(&mut seen[x], true));
            if !ok {
                return Err(fmt_err(format!(
                    "field `generators`: entry {i} is not a permutation of 0..{}",
                    f.degree
                )));
            }
        }
        permutation_closure(f.name, f.degree, &f.generators, closure_cap)
    } else {
        Err(fmt_err("expected a `table` or `generators` field".into()))
    }
}

/// Closure of permutation generators under composition, in breadth-first
/// order from the identity.
pub fn permutation_closure(
    name: String,
    degree: usize,
    generators: &[Vec<usize>],
    cap: usize,
) -> Result<FiniteGroup> {
    let identity: Vec<usize> = (0..degree).collect();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut elements = vec![identity];
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let next: Vec<usize> = g.iter().map(|&j| elements[i][j]).collect();
            if !seen.contains_key(&next) {
                if elements.len() == cap {
                    return Err(Error::ClosureCapExceeded { cap });
                }
                seen.insert(next.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
            }
        }
    }
    Ok(permutation_group(name, elements))
}

/// Candidate corpus members in preference order; the first of each
/// isomorphism class survives deduplication.
fn corpus_candidates(max_order: usize) -> Vec<GroupSpec> {
    use GroupSpec::*;
    let c = |n| Box::new(Cyclic(n));
    let mut v: Vec<GroupSpec> = (1..=max_order).map(Cyclic).collect();
    for p in (2..=max_order).filter(|&p| is_prime(p)) {
        let mut k = 2;
        while p.pow(k as u32) <= max_order {
            v.push(ElementaryAbelian { p, k });
            k += 1;
        }
    }
    v.extend([Symmetric(3), Symmetric(4), Alternating(4), Alternating(5)]);
    v.extend((3..=max_order / 2).map(Dihedral));
    v.extend((2..=max_order / 4).map(Dicyclic));
    let prods: Vec<(GroupSpec, GroupSpec)> = vec![
        (Cyclic(2), Cyclic(3)),
        (Cyclic(2), Cyclic(4)),
        (Cyclic(3), Cyclic(3)),
        (Cyclic(3), Cyclic(4)),
        (Cyclic(2), Cyclic(6)),
        (Cyclic(2), Cyclic(8)),
        (Cyclic(4), Cyclic(4)),
        (ElementaryAbelian { p: 2, k: 2 }, Cyclic(4)),
        (Cyclic(2), Dihedral(4)),
        (Cyclic(2), Dicyclic(2)),
        (Cyclic(3), Cyclic(6)),
        (Cyclic(3), Symmetric(3)),
        (Cyclic(2), Cyclic(10)),
        (Cyclic(2), Cyclic(12)),
        (ElementaryAbelian { p: 2, k: 2 }, Cyclic(6)),
        (Cyclic(2), Alternating(4)),
        (Cyclic(3), Dihedral(4)),
        (Cyclic(3), Dicyclic(2)),
        (Cyclic(4), Symmetric(3)),
        (Cyclic(2), Dicyclic(3)),
        (Cyclic(5), Symmetric(3)),
        (Cyclic(3), Dihedral(5)),
        (Cyclic(2), Cyclic(14)),
        (Cyclic(4), Cyclic(8)),
        (Cyclic(2), Cyclic(16)),
        (Cyclic(4), Dihedral(4)),
        (Symmetric(3), Symmetric(3)),
        (Cyclic(6), Cyclic(6)),
        (Cyclic(3), Alternating(4)),
        (Cyclic(2), Symmetric(4)),
        (Cyclic(8), Cyclic(8)),
    ];
    v.extend(
        prods
            .into_iter()
            .map(|(a, b)| Product(Box::new(a), Box::new(b))),
    );
    v.push(Product(c(2), Box::new(Product(c(2), c(4)))));
    v
}

fn spec_order(spec: &GroupSpec) -> usize {
    match spec {
        GroupSpec::Cyclic(n) => *n,
        GroupSpec::Dihedral(n) => 2 * n,
        GroupSpec::Dicyclic(n) => 4 * n,
        GroupSpec::Symmetric(n) => (1..=*n).product(),
        GroupSpec::Alternating(n) => ((1..=*n).product::<usize>() / 2).max(1),
        GroupSpec::ElementaryAbelian { p, k } => p.pow(*k as u32),
        GroupSpec::Product(a, b) => spec_order(a) * spec_order(b),
        GroupSpec::File(_) => usize::MAX,
    }
}

/// A corpus member together with the spec that built it.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub spec: GroupSpec,
    pub group: FiniteGroup,
}

/// The fixed test corpus: every isomorphism type produced by the built-in
/// constructors up to `max_order`, sorted by (order, name).
pub fn standard_corpus(max_order: usize) -> Vec<FiniteGroup> {
    standard_corpus_entries(max_order)
        .into_iter()
        .map(|e| e.group)
        .collect()
}

pub fn standard_corpus_entries(max_order: usize) -> Vec<CorpusEntry> {
    let mut kept: Vec<CorpusEntry> = Vec::new();
    for spec in corpus_candidates(max_order) {
        if spec_order(&spec) > max_order {
            continue;
        }
        let group = build(&spec).expect("corpus specs are valid");
        let duplicate = kept.iter().any(|e| {
            e.group.order() == group.order()
                && is_isomorphic(&e.group, &group)
                    .expect("corpus orders are small")
                    .is_some()
        });
        if !duplicate {
            kept.push(CorpusEntry { spec, group });
        }
    }
    kept.sort_by(|a, b| (a.group.order(), a.group.name()).cmp(&(b.group.order(), b.group.name())));
    kept
}
