//! Self-check suites run by `partcat verify`.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::category::generate_closure;
use crate::classifier::{
    closure_of_row, fixture_rows, round_trip_report, verify_coincidences, Confidence, Family,
    Table1Row,
};
use crate::delta::{
    check_contraction, check_tensor, delta, fixspace_dim, fixspace_dim_by_orbits, glued_group,
    hyperoctahedral_group, membership_by_fixspace, scalar_group, symmetric_group,
};
use crate::named;
use crate::partition::{Color, NonColoredPartition, Partition};
use crate::relation::{emit, evaluate_commutative, evaluate_raw, random_unitary, Template};

pub const SUITES: [&str; 10] = [
    "worked-examples",
    "color-sum-laws",
    "delta-functorial",
    "fixspace-dims",
    "divisibility-shadow",
    "group-glued-shadow",
    "table1-roundtrip",
    "coincidences",
    "zero-sector-rebuild",
    "relations",
];

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl SuiteReport {
    fn new(name: &str, limit_secs: u64) -> Self {
        SuiteReport {
            name: name.into(),
            checks: 0,
            failures: Vec::new(),
            notes: Vec::new(),
            elapsed: Duration::ZERO,
            limit: Duration::from_secs(limit_secs),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn within_limit(&self) -> bool {
        self.elapsed <= self.limit
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checks > 0 && self.within_limit()
    }

    pub fn summary(&self) -> String {
        format!(
            "{} {}: {} checks, {} failures, {:.2?} (limit {:?})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.checks,
            self.failures.len(),
            self.elapsed,
            self.limit
        )
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary())?;
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        for x in self.failures.iter().take(20) {
            writeln!(f, "  failed: {x}")?;
        }
        if self.failures.len() > 20 {
            writeln!(f, "  ... {} more", self.failures.len() - 20)?;
        }
        Ok(())
    }
}

/// Runs a suite by name; `glue2-shadow` is accepted for the glued suite.
pub fn run_suite(name: &str, seed: u64) -> Option<SuiteReport> {
    let start = Instant::now();
    let mut report = match name {
        "worked-examples" => worked_examples(),
        "color-sum-laws" => color_sum_laws(seed),
        "delta-functorial" => delta_functorial(),
        "fixspace-dims" => fixspace_dims(),
        "divisibility-shadow" => divisibility_shadow(),
        "group-glued-shadow" | "glue2-shadow" => group_glued_shadow(),
        "table1-roundtrip" => table1_roundtrip(),
        "coincidences" => coincidences(),
        "zero-sector-rebuild" => zero_sector_rebuild(),
        "relations" => relations(seed),
        _ => return None,
    };
    report.elapsed = start.elapsed();
    Some(report)
}

fn word(w: &str) -> Partition {
    Partition::parse(w).expect("fixture words are valid")
}

fn worked_examples() -> SuiteReport {
    let mut r = SuiteReport::new("worked-examples", 1);
    let p = word("AaBBCcA");
    let q = word("AabCBcd");
    let cases: [(&str, Option<Partition>, &str); 7] = [
        ("p (x) q", Some(p.tensor(&q)), "AaBBCcADdeFEfg"),
        ("contract_2 p", p.contract(2).ok(), "AABbA"),
        ("contract_7 q", q.contract(7).ok(), "abCBc"),
        ("reflect p", Some(p.reflect()), "aBbccAa"),
        ("rotate p", p.rotate().ok(), "AAaBBCc"),
        ("word p", Some(p.clone()), "AaBBCcA"),
        ("word q", Some(q.clone()), "AabCBcd"),
    ];
    for (what, got, want) in cases {
        let got = got.map(|g| g.to_string());
        r.check(got.as_deref() == Some(want), || format!("{what}: {got:?} != {want}"));
    }
    let deltas: [(&[usize], bool); 3] = [
        (&[1, 1, 3, 3, 6, 6, 1], true),
        (&[1, 1, 3, 3, 1, 1, 1], true),
        (&[1, 2, 3, 3, 6, 6, 1], false),
    ];
    for (alpha, want) in deltas {
        let got = delta(&p, alpha, 6).ok();
        r.check(got == Some(want), || format!("delta_p{alpha:?} = {got:?}"));
    }
    r
}

/// Uniformly random colors and a random block structure.
pub fn random_partition<R: Rng>(rng: &mut R, max_len: usize) -> Partition {
    let len = rng.gen_range(0..=max_len);
    let mut labels = Vec::with_capacity(len);
    let mut used = 0u32;
    for _ in 0..len {
        let b = rng.gen_range(0..=used);
        if b == used {
            used += 1;
        }
        labels.push(b);
    }
    let colors = (0..len)
        .map(|_| if rng.gen_bool(0.5) { Color::White } else { Color::Black })
        .collect();
    Partition::from_parts(colors, &labels).expect("lengths agree")
}

fn color_sum_laws(seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("color-sum-laws", 5);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let p = random_partition(&mut rng, 10);
        let q = random_partition(&mut rng, 10);
        r.check(p.tensor(&q).c() == p.c() + q.c(), || format!("c({p} (x) {q})"));
        r.check(p.reflect().c() == -p.c(), || format!("c(reflect {p})"));
        if let Ok(rot) = p.rotate() {
            r.check(rot.c() == p.c(), || format!("c(rotate {p})"));
        }
        for i in 1..=p.len() {
            if let Ok(c) = p.contract(i) {
                r.check(c.c() == p.c(), || format!("c(contract_{i} {p})"));
            }
        }
    }
    r
}

fn all_up_to(max_len: usize) -> Vec<Partition> {
    (0..=max_len).flat_map(Partition::all).collect()
}

fn delta_functorial() -> SuiteReport {
    let mut r = SuiteReport::new("delta-functorial", 60);
    let family = all_up_to(6);
    for n in [2, 3] {
        let results: Vec<(usize, Vec<String>)> = family
            .par_iter()
            .filter(|p| p.len() <= 6)
            .map(|p| {
                let mut count = 0;
                let mut bad = Vec::new();
                for q in family.iter().filter(|q| p.len() + q.len() <= 6) {
                    count += 1;
                    if check_tensor(p, q, n) != Ok(true) {
                        bad.push(format!("tensor {p} {q} n={n}"));
                    }
                }
                for i in 1..=p.len() {
                    if p.contract(i).is_ok() {
                        count += 1;
                        if check_contraction(p, i, n) != Ok(true) {
                            bad.push(format!("contract_{i} {p} n={n}"));
                        }
                    }
                }
                (count, bad)
            })
            .collect();
        for (count, bad) in results {
            r.checks += count;
            r.failures.extend(bad);
        }
    }
    r
}

fn fixspace_dims() -> SuiteReport {
    let mut r = SuiteReport::new("fixspace-dims", 60);
    let s4 = symmetric_group(4).expect("S_4");
    let h3 = hyperoctahedral_group(3).expect("H_3");
    let bell3 = NonColoredPartition::all(3).len() as u64;
    let even4 = NonColoredPartition::all(4)
        .iter()
        .filter(|p| p.block_sizes().iter().all(|s| s % 2 == 0))
        .count() as u64;
    for (g, k, want) in [(&s4, 3, bell3), (&h3, 4, even4)] {
        let colors = vec![Color::White; k];
        let avg = fixspace_dim(g, &colors).ok();
        let orbits = fixspace_dim_by_orbits(g, &colors).ok();
        r.check(avg == Some(want), || format!("{} k={k}: average {avg:?} != {want}", g.label));
        r.check(orbits == Some(want), || format!("{} k={k}: orbits {orbits:?} != {want}", g.label));
    }
    r
}

fn divisibility_shadow() -> SuiteReport {
    let mut r = SuiteReport::new("divisibility-shadow", 120);
    let family = all_up_to(5);
    for k in [1u32, 2, 3] {
        let g = scalar_group(k, 2).expect("scalar group");
        for p in &family {
            let fixed = membership_by_fixspace(p, &g).ok();
            let want = p.c().rem_euclid(k as i64) == 0;
            r.check(fixed == Some(want), || format!("k={k} p={p}: {fixed:?}"));
        }
    }
    r
}

fn group_glued_shadow() -> SuiteReport {
    let mut r = SuiteReport::new("group-glued-shadow", 120);
    let s4 = symmetric_group(4).expect("S_4");
    let g = glued_group(&s4, 2).expect("glued");
    for p in &all_up_to(4) {
        let fixed = membership_by_fixspace(p, &g).ok();
        let want = p.c() % 2 == 0;
        r.check(fixed == Some(want), || format!("{p}: {fixed:?}"));
    }
    let h2 = hyperoctahedral_group(2).expect("H_2");
    let three = glued_group(&h2, 3).expect("glued 3");
    let six = glued_group(&h2, 6).expect("glued 6");
    r.check(three.elements() == six.elements(), || {
        format!("|H_2 glued 3| = {}, |H_2 glued 6| = {}", three.order(), six.order())
    });
    r.notes.push(format!("glued(H_2,3) has {} elements", three.order()));
    r
}

const CERTIFIED_FAMILIES: [Family; 4] = [Family::OGlob, Family::BGlob, Family::SGlob, Family::HGlob];

fn table1_roundtrip() -> SuiteReport {
    let mut r = SuiteReport::new("table1-roundtrip", 600);
    let rows = fixture_rows(&[0, 1, 2, 3, 4], &[2, 3]);
    let results: Vec<_> = rows.par_iter().map(|row| round_trip_report(row, 6, 10)).collect();
    for rt in results {
        let label = rt.row.to_string();
        match &rt.result {
            Ok(report) => {
                let want = rt.row.canonical();
                r.check(rt.matches(), || format!("{label} classified as {}", report.row));
                if CERTIFIED_FAMILIES.contains(&rt.row.family) {
                    r.check(report.row.confidence == Confidence::Certified, || {
                        format!("{label}: confidence {}", report.row.confidence)
                    });
                }
                if report.row.confidence != Confidence::Certified {
                    r.notes.push(format!("{} {}", want, report.row.confidence));
                }
            }
            Err(e) => r.check(false, || format!("{label}: {e}")),
        }
    }
    r
}

fn coincidences() -> SuiteReport {
    let mut r = SuiteReport::new("coincidences", 300);
    match verify_coincidences(6, 10) {
        Ok(checks) => {
            for c in checks {
                if c.expected_equal {
                    r.check(c.as_expected(), || c.to_string());
                }
                r.notes.push(c.to_string());
            }
        }
        Err(e) => r.check(false, || e.to_string()),
    }
    r
}

fn zero_sector_rebuild() -> SuiteReport {
    let mut r = SuiteReport::new("zero-sector-rebuild", 300);
    let fixtures = [
        (Table1Row::new(Family::SGlob, 2, None), named::s(2)),
        (Table1Row::new(Family::OGlob, 2, None), named::u(2).expect("even")),
    ];
    for (row, extra) in fixtures {
        let result = closure_of_row(&row, 6, 10).map_err(|e| e.to_string()).and_then(|cat| {
            let mut gens = cat.zero_sector().representatives();
            gens.push(extra.clone());
            let rebuilt = generate_closure(&gens, cat.options()).map_err(|e| e.to_string())?;
            Ok((cat.same_elements(&rebuilt), cat.class_count(), rebuilt.class_count()))
        });
        match result {
            Ok((equal, a, b)) => {
                r.check(equal, || format!("{row}: {a} vs {b} classes"));
                r.notes.push(format!("{row}: {a} classes, rebuilt {b}"));
            }
            Err(e) => r.check(false, || format!("{row}: {e}")),
        }
    }
    r
}

fn relations(seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("relations", 60);
    let fixtures = [
        (word("aaBB"), "u*[i,j]*u[k,l] = u[i,j]*u*[k,l]"),
        (named::singletons_wb(), "sum_k u[k,j] = sum_l u[i,l]"),
        (named::u(4).expect("even"), "u[i1,j1]*u[i2,j2] = u*[i1,j1]*u*[i2,j2]"),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (p, want) in fixtures {
        let got = emit(&p, 3).simplified_form;
        r.check(got.as_deref() == Some(want), || format!("{p}: {got:?}"));
        let Some((template, _)) = Template::matching(&p) else { continue };
        let mut holding = 0;
        for trial in 0..50 {
            let g = random_unitary(2 + trial % 2, &mut rng);
            let raw = evaluate_raw(&p, &g);
            let oracle = evaluate_commutative(&p, &g).ok();
            let simplified = template.holds_literally(&g);
            r.check(oracle == Some(raw) && simplified == raw, || {
                format!("{p} trial {trial}: raw {raw}, oracle {oracle:?}, simplified {simplified}")
            });
            holding += usize::from(raw);
        }
        r.notes.push(format!("{p}: relation holds for {holding} of 50 matrices"));
    }
    r
}
