//! Classification of globally colorized categories into the rows of the
//! complete table, driven by tri-valued membership evidence.

use std::fmt;

use crate::category::{generate_closure, BoundedCategory, ClosureOptions, Membership};
use crate::engine::BoundError;
use crate::named;
use crate::partition::{Partition, PartitionError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    OGlob,
    HGlob,
    SGlob,
    BGlob,
    BPrimeGlob,
    OGrp,
    HGrp,
    SGrp,
    BGrp,
    OHl,
    HHl,
    BHl,
    HPi,
    HPiInf,
    HA,
}

impl Family {
    pub const ALL: [Family; 15] = [
        Family::OGlob,
        Family::HGlob,
        Family::SGlob,
        Family::BGlob,
        Family::BPrimeGlob,
        Family::OGrp,
        Family::HGrp,
        Family::SGrp,
        Family::BGrp,
        Family::OHl,
        Family::HHl,
        Family::BHl,
        Family::HPi,
        Family::HPiInf,
        Family::HA,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::OGlob => "O_glob",
            Family::HGlob => "H_glob",
            Family::SGlob => "S_glob",
            Family::BGlob => "B_glob",
            Family::BPrimeGlob => "B'_glob",
            Family::OGrp => "O_grp,glob",
            Family::HGrp => "H_grp,glob",
            Family::SGrp => "S_grp,glob",
            Family::BGrp => "B_grp,glob",
            Family::OHl => "O_hl,glob",
            Family::HHl => "H_hl,glob",
            Family::BHl => "B_hl,glob",
            Family::HPi => "H_pi",
            Family::HPiInf => "H_pi_inf",
            Family::HA => "H_A",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Only even degrees occur.
    pub fn even_k_only(self) -> bool {
        !matches!(
            self,
            Family::SGlob | Family::BPrimeGlob | Family::SGrp | Family::BGrp
        )
    }

    /// The non-colored category the family is built from.
    pub fn noncolored(self) -> &'static str {
        match self {
            Family::OGlob => "<>",
            Family::HGlob => "<fourblock>",
            Family::SGlob => "<fourblock, singleton^2>",
            Family::BGlob => "<singleton^2>",
            Family::BPrimeGlob => "<positioner>",
            Family::OGrp => "<crossing>",
            Family::HGrp => "<fourblock, crossing>",
            Family::SGrp => "<fourblock, singleton^2, crossing>",
            Family::BGrp => "<singleton^2, crossing>",
            Family::OHl => "<halflib>",
            Family::HHl => "<fourblock, halflib, h_s>",
            Family::BHl => "<singleton^2, halflib>",
            Family::HPi => "<pi_s>",
            Family::HPiInf => "<pi_l | l >= 1>",
            Family::HA => "<A>",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Confidence {
    ConsistentAtBound,
    Certified,
}

impl fmt::Display for Confidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Confidence::Certified => "certified",
            Confidence::ConsistentAtBound => "consistent-at-bound",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Table1Row {
    pub family: Family,
    pub k: u64,
    pub s: Option<usize>,
    pub confidence: Confidence,
}

impl Table1Row {
    pub fn new(family: Family, k: u64, s: Option<usize>) -> Self {
        Table1Row {
            family,
            k,
            s,
            confidence: Confidence::Certified,
        }
    }

    /// Family and parameters agree.
    pub fn same_row(&self, other: &Table1Row) -> bool {
        self.family == other.family && self.k == other.k && self.s == other.s
    }

    pub fn label(&self) -> String {
        match self.s {
            Some(s) => format!("{}({},{})", self.family, self.k, s),
            None => format!("{}({})", self.family, self.k),
        }
    }

    /// The representative the classifier reports for this row.
    pub fn canonical(&self) -> Table1Row {
        let family = match self.family {
            Family::BGlob if self.k % 2 == 1 => Family::BPrimeGlob,
            Family::BHl if self.k % 2 == 1 => Family::BGrp,
            f => f,
        };
        Table1Row { family, ..*self }
    }

    fn validate(&self) -> Result<(), ClassifyError> {
        let bad = |msg: String| Err(ClassifyError::Parameter(msg));
        if self.family.even_k_only() && self.k % 2 == 1 {
            return bad(format!("{} needs an even k, got {}", self.family, self.k));
        }
        match (self.family, self.s) {
            (Family::HHl, Some(s)) if s != 0 && s < 3 => {
                bad(format!("H_hl,glob needs s = 0 or s >= 3, got {s}"))
            }
            (Family::HHl, None) => bad("H_hl,glob needs s".into()),
            (Family::HPi, Some(s)) if s < 2 => bad(format!("H_pi needs s >= 2, got {s}")),
            (Family::HPi, None) => bad("H_pi needs s".into()),
            (Family::HHl | Family::HPi, Some(_)) => Ok(()),
            (f, Some(_)) => bad(format!("{f} takes no s")),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Table1Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evidence {
    pub query: Partition,
    pub verdict: Membership,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub row: Table1Row,
    pub evidence: Vec<Evidence>,
    pub noncolored_family: String,
    /// Remarks on unresolved alternatives.
    pub flags: Vec<String>,
}

impl ClassificationReport {
    pub fn verdict_of(&self, query: &Partition) -> Option<Membership> {
        self.evidence
            .iter()
            .find(|e| &e.query == query)
            .map(|e| e.verdict)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("family: {}\n", self.row.family));
        let params = match self.row.s {
            Some(s) => format!("k={} s={}", self.row.k, s),
            None => format!("k={}", self.row.k),
        };
        out.push_str(&format!("parameters: {params}\n"));
        out.push_str(&format!("confidence: {}\n", self.row.confidence));
        out.push_str(&format!("noncolored: {}\n", self.noncolored_family));
        for flag in &self.flags {
            out.push_str(&format!("note: {flag}\n"));
        }
        let width = self
            .evidence
            .iter()
            .map(|e| e.query.to_string().len())
            .max()
            .unwrap_or(0)
            .max(10);
        out.push_str(&format!("{:<width$}  {:<12}  certificate\n", "query-word", "verdict"));
        for e in &self.evidence {
            let cert = match e.verdict {
                Membership::CertifiedNo(c) => c.name(),
                _ => "-".into(),
            };
            out.push_str(&format!(
                "{:<width$}  {:<12}  {}\n",
                e.query.to_string(),
                e.verdict.to_string(),
                cert
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("category is not globally colorized (aaBB: {0})")]
    NotGloballyColorized(Membership),
    #[error("classification inconclusive: no discriminating query was decided")]
    Inconclusive { evidence: Vec<Evidence> },
    #[error("inconsistent evidence: {reason}")]
    Inconsistent {
        reason: String,
        evidence: Vec<Evidence>,
    },
    #[error("invalid row parameters: {0}")]
    Parameter(String),
    #[error("row {0} has no finite generating set")]
    NotFinitelyGenerated(String),
    #[error(transparent)]
    Bound(#[from] BoundError),
}

impl From<PartitionError> for ClassifyError {
    fn from(e: PartitionError) -> Self {
        ClassifyError::Parameter(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Largest `s` probed for `h_s` and `π_s`.
    pub s_max: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { s_max: 4 }
    }
}

struct Probe<'a> {
    cat: &'a BoundedCategory,
    evidence: Vec<Evidence>,
}

impl Probe<'_> {
    fn ask(&mut self, query: Partition) -> Membership {
        if let Some(e) = self.evidence.iter().find(|e| e.query == query) {
            return e.verdict;
        }
        let verdict = self.cat.contains(&query);
        self.evidence.push(Evidence { query, verdict });
        verdict
    }

    fn all_decided(&self) -> bool {
        self.evidence.iter().all(|e| e.verdict.is_decided())
    }
}

pub fn classify(cat: &BoundedCategory) -> Result<ClassificationReport, ClassifyError> {
    classify_with(cat, ClassifyOptions::default())
}

pub fn classify_with(
    cat: &BoundedCategory,
    options: ClassifyOptions,
) -> Result<ClassificationReport, ClassifyError> {
    let mut probe = Probe {
        cat,
        evidence: Vec::new(),
    };
    let global = probe.ask(named::global_pair());
    if !global.is_yes() {
        return Err(ClassifyError::NotGloballyColorized(global));
    }
    let degree = cat.degree_of_reflection();
    let k = degree.k;
    let mut flags = Vec::new();

    let t = probe.ask(named::singletons_wb());
    let v = probe.ask(named::fourblock_wbwb());
    let x = probe.ask(named::crossing_wwbb());
    let (t, v) = (t.is_yes(), v.is_yes());
    if probe.evidence[1..].iter().all(|e| !e.verdict.is_decided()) {
        return Err(ClassifyError::Inconclusive {
            evidence: probe.evidence,
        });
    }

    let (family, s) = if x.is_yes() {
        let family = match (v, t) {
            (false, false) => Family::OGrp,
            (true, false) => Family::HGrp,
            (true, true) => Family::SGrp,
            (false, true) => Family::BGrp,
        };
        (family, None)
    } else if probe.ask(named::halflib_wwwbbb()).is_yes() {
        match (v, t) {
            (false, false) => (Family::OHl, None),
            (false, true) if k % 2 == 1 => (Family::BGrp, None),
            (false, true) => (Family::BHl, None),
            (true, false) => {
                let found = (3..=options.s_max).find(|&s| probe.ask(named::h0(s)).is_yes());
                match found {
                    Some(s) => (Family::HHl, Some(s)),
                    None if probe.all_decided() => (Family::HHl, Some(0)),
                    None => {
                        flags.push(format!(
                            "h_s undecided for some s <= {}; H_hl,glob(k,s) with larger s or another H_A(k) not excluded",
                            options.s_max
                        ));
                        (Family::HHl, Some(0))
                    }
                }
            }
            (true, true) => {
                flags.push("fourblock and singleton pair without crossing; crossing undecided".into());
                (Family::SGrp, None)
            }
        }
    } else if t {
        if v {
            (Family::SGlob, None)
        } else if k % 2 == 1 || probe.ask(named::positioner_wwbb()).is_yes() {
            if k % 2 == 1 {
                probe.ask(named::positioner_wwbb());
            }
            (Family::BPrimeGlob, None)
        } else {
            (Family::BGlob, None)
        }
    } else if !v {
        (Family::OGlob, None)
    } else {
        let mut largest = None;
        let mut all_yes = true;
        for s in 2..=options.s_max {
            if probe.ask(named::pi0(s)?).is_yes() {
                largest = Some(s);
            } else {
                all_yes = false;
                break;
            }
        }
        match largest {
            None => (Family::HGlob, None),
            Some(_) if all_yes => {
                flags.push(format!(
                    "pi_s present for every probed s <= {}; reported as the infinitely generated family",
                    options.s_max
                ));
                (Family::HPiInf, None)
            }
            Some(s) => (Family::HPi, Some(s)),
        }
    };

    let row = Table1Row {
        family,
        k,
        s,
        confidence: Confidence::ConsistentAtBound,
    };
    if row.validate().is_err() {
        return Err(ClassifyError::Inconsistent {
            reason: format!("{} observed with degree {k}", family),
            evidence: probe.evidence,
        });
    }
    let certified = probe.all_decided()
        && degree.exact
        && !matches!(family, Family::HPiInf | Family::HA);
    let row = Table1Row {
        confidence: if certified {
            Confidence::Certified
        } else {
            Confidence::ConsistentAtBound
        },
        ..row
    };
    if !degree.exact {
        flags.push(format!("degree {k} observed at the bound but not certified"));
    }
    Ok(ClassificationReport {
        row,
        evidence: probe.evidence,
        noncolored_family: family.noncolored().into(),
        flags,
    })
}

/// Generators listed for the family, without parameter checks.
fn family_generators(family: Family, k: u64, s: Option<usize>) -> Result<Vec<Partition>, ClassifyError> {
    let k_i = k as i64;
    let u = || named::u(k_i);
    let sk = || named::s(k_i);
    let mut gens = match family {
        Family::OGlob => vec![u()?],
        Family::HGlob => vec![u()?, named::fourblock_wbwb()],
        Family::SGlob => vec![sk(), named::fourblock_wbwb(), named::singletons_wb()],
        Family::BGlob => vec![sk(), named::singletons_wb()],
        Family::BPrimeGlob => vec![sk(), named::positioner_wwbb()],
        Family::OGrp => vec![u()?, named::crossing_wwbb()],
        Family::HGrp => vec![u()?, named::fourblock_wbwb(), named::crossing_wwbb()],
        Family::SGrp => vec![
            sk(),
            named::fourblock_wbwb(),
            named::singletons_wb(),
            named::crossing_wwbb(),
        ],
        Family::BGrp => vec![sk(), named::singletons_wb(), named::crossing_wwbb()],
        Family::OHl => vec![u()?, named::halflib_wwwbbb()],
        Family::HHl => match s {
            Some(0) | None => vec![u()?, named::fourblock_wbwb(), named::halflib_wwwbbb()],
            Some(s) => vec![
                u()?,
                named::h0(s),
                named::fourblock_wbwb(),
                named::halflib_wwwbbb(),
            ],
        },
        Family::BHl => vec![sk(), named::singletons_wb(), named::halflib_wwwbbb()],
        Family::HPi => vec![u()?, named::pi0(s.unwrap_or(2))?],
        Family::HPiInf | Family::HA => {
            return Err(ClassifyError::NotFinitelyGenerated(family.name().into()))
        }
    };
    gens.push(named::global_pair());
    gens.retain(|g| !g.is_empty());
    Ok(gens)
}

pub fn generators_of(row: &Table1Row) -> Result<Vec<Partition>, ClassifyError> {
    row.validate()?;
    family_generators(row.family, row.k, row.s)
}

/// Bounds used for a fixture row: the working bound is raised to fit the
/// longest generator.
pub fn fixture_options(bound: usize, working_bound: usize, generators: &[Partition]) -> ClosureOptions {
    let longest = generators.iter().map(Partition::len).max().unwrap_or(0);
    ClosureOptions::new(bound, working_bound.max(longest))
}

pub fn closure_of_row(
    row: &Table1Row,
    bound: usize,
    working_bound: usize,
) -> Result<BoundedCategory, ClassifyError> {
    let gens = generators_of(row)?;
    Ok(generate_closure(&gens, fixture_options(bound, working_bound, &gens))?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrip {
    pub row: Table1Row,
    pub result: Result<ClassificationReport, ClassifyError>,
}

impl RoundTrip {
    /// Classification reproduced the canonical representative of the row.
    pub fn matches(&self) -> bool {
        match &self.result {
            Ok(report) => report.row.same_row(&self.row.canonical()),
            Err(_) => false,
        }
    }
}

pub fn round_trip_report(row: &Table1Row, bound: usize, working_bound: usize) -> RoundTrip {
    let result = closure_of_row(row, bound, working_bound).and_then(|cat| classify(&cat));
    RoundTrip { row: *row, result }
}

pub fn round_trip(row: &Table1Row, bound: usize, working_bound: usize) -> bool {
    round_trip_report(row, bound, working_bound).matches()
}

/// Rows with finite generating sets for the given `k` and `s` ranges,
/// respecting each family's parity and `s` constraints.
pub fn fixture_rows(ks: &[u64], ss: &[usize]) -> Vec<Table1Row> {
    let mut rows = Vec::new();
    for family in Family::ALL {
        for &k in ks {
            if family.even_k_only() && k % 2 == 1 {
                continue;
            }
            match family {
                Family::HPiInf | Family::HA => {}
                Family::HHl => {
                    rows.push(Table1Row::new(family, k, Some(0)));
                    for &s in ss.iter().filter(|&&s| s >= 3) {
                        rows.push(Table1Row::new(family, k, Some(s)));
                    }
                }
                Family::HPi => {
                    for &s in ss.iter().filter(|&&s| s >= 2) {
                        rows.push(Table1Row::new(family, k, Some(s)));
                    }
                }
                _ => rows.push(Table1Row::new(family, k, None)),
            }
        }
    }
    rows
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    /// An element of length at most the bound in exactly one closure.
    Witness(Partition),
    /// The closures agree up to the bound but hold different certificates.
    CertificatesDiffer(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoincidenceCheck {
    pub left: Family,
    pub right: Family,
    pub k: u64,
    pub expected_equal: bool,
    pub comparison: Comparison,
}

impl CoincidenceCheck {
    pub fn as_expected(&self) -> bool {
        (self.comparison == Comparison::Equal) == self.expected_equal
    }
}

impl fmt::Display for CoincidenceCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let outcome = match &self.comparison {
            Comparison::Equal => "equal".to_string(),
            Comparison::Witness(p) => format!("differ, witness {p}"),
            Comparison::CertificatesDiffer(c) => format!("inconclusive at bound, certificates differ: {c}"),
        };
        write!(
            f,
            "{}({}) vs {}({}): {}",
            self.left, self.k, self.right, self.k, outcome
        )
    }
}

pub fn compare_families(
    left: Family,
    right: Family,
    k: u64,
    bound: usize,
    working_bound: usize,
) -> Result<CoincidenceCheck, ClassifyError> {
    let close = |family| -> Result<BoundedCategory, ClassifyError> {
        let gens = family_generators(family, k, None)?;
        Ok(generate_closure(&gens, fixture_options(bound, working_bound, &gens))?)
    };
    let (a, b) = (close(left)?, close(right)?);
    let comparison = match a.witness_difference(&b, bound) {
        Some(w) => Comparison::Witness(w),
        None => {
            let (ca, cb) = (a.certificates(), b.certificates());
            let only_a: Vec<String> = ca.iter().filter(|c| !cb.contains(c)).map(|c| c.name()).collect();
            let only_b: Vec<String> = cb.iter().filter(|c| !ca.contains(c)).map(|c| c.name()).collect();
            if only_a.is_empty() && only_b.is_empty() {
                Comparison::Equal
            } else {
                Comparison::CertificatesDiffer(format!(
                    "[{}] vs [{}]",
                    only_a.join(", "),
                    only_b.join(", ")
                ))
            }
        }
    };
    Ok(CoincidenceCheck {
        left,
        right,
        k,
        expected_equal: k % 2 == 1,
        comparison,
    })
}

/// The two odd-degree coincidences for `k` in {1, 3} and their failure for
/// `k = 2`.
pub fn verify_coincidences(bound: usize, working_bound: usize) -> Result<Vec<CoincidenceCheck>, ClassifyError> {
    let mut out = Vec::new();
    for k in [1, 3, 2] {
        out.push(compare_families(Family::BGlob, Family::BPrimeGlob, k, bound, working_bound)?);
        out.push(compare_families(Family::BGrp, Family::BHl, k, bound, working_bound)?);
    }
    Ok(out)
}

/// The table with symbolic generators, one row per line.
pub fn table1_text() -> String {
    let rows: [(&str, &str, &str, bool); 16] = [
        ("O_glob(k)", "k in 2N0", "<u_k, aaBB>", false),
        ("H_glob(k)", "k in 2N0", "<u_k, aAaA, aaBB>", false),
        ("S_glob(k)", "k in N0", "<s_k, aAaA, aB, aaBB>", false),
        ("B_glob(k)", "k in 2N0", "<s_k, aB, aaBB>", false),
        ("B'_glob(k)", "k in N0", "<s_k, abCB, aaBB>", false),
        ("O_grp,glob(k)", "k in 2N0", "<u_k, abAB, aaBB>", false),
        ("H_grp,glob(k)", "k in 2N0", "<u_k, aAaA, abAB, aaBB>", true),
        ("S_grp,glob(k)", "k in N0", "<s_k, aAaA, aB, abAB, aaBB>", false),
        ("B_grp,glob(k)", "k in N0", "<s_k, aB, abAB, aaBB>", false),
        ("O_hl,glob(k)", "k in 2N0", "<u_k, abcABC, aaBB>", false),
        ("H_hl,glob(k,0)", "k in 2N0", "<u_k, aAaA, abcABC, aaBB>", true),
        ("H_hl,glob(k,s)", "k in 2N0, s >= 3", "<u_k, h0_s, aAaA, abcABC, aaBB>", true),
        ("B_hl,glob(k)", "k in 2N0", "<s_k, aB, abcABC, aaBB>", false),
        ("H_pi(k,s)", "k in 2N0, s >= 2", "<u_k, pi0_s, aaBB>", false),
        ("H_pi(k,inf)", "k in 2N0", "<u_k, pi0_l (l >= 1), aaBB>", false),
        ("H_A(k)", "k in 2N0", "<u_k, A_0, aaBB>", false),
    ];
    let mut out = String::new();
    for (name, range, gens, star) in rows {
        let mark = if star { "  (*) group-theoretical instance" } else { "" };
        out.push_str(&format!("{name:<16}{range:<18}{gens}{mark}\n"));
    }
    out
}
