//! Bounded categories: closures, tri-valued membership and global invariants.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use rustc_hash::FxHashSet;

use crate::certificate::{base_pairs, Certificate};
use crate::engine::{saturate, BoundError, Mode, Outcome, Shape, MAX_POINTS};
use crate::named;
use crate::partition::{Color, NonColoredPartition, Partition};

/// Verdict of a membership query against a bounded closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    /// Derived within the working bound.
    Yes,
    /// The query violates a law every element satisfies.
    CertifiedNo(Certificate),
    /// Not derived up to this working bound and no certificate excludes it.
    UnknownAtBound(usize),
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Membership::Yes)
    }

    pub fn is_decided(&self) -> bool {
        !matches!(self, Membership::UnknownAtBound(_))
    }
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Membership::Yes => f.write_str("yes"),
            Membership::CertifiedNo(_) => f.write_str("no"),
            Membership::UnknownAtBound(b) => write!(f, "unknown@{b}"),
        }
    }
}

/// Bounds and switches for closure generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureOptions {
    pub bound: usize,
    pub working_bound: usize,
    /// Use closure under color permutations once `aaBB` is derived.
    pub color_symmetry: bool,
}

impl ClosureOptions {
    pub fn new(bound: usize, working_bound: usize) -> Self {
        ClosureOptions {
            bound,
            working_bound,
            color_symmetry: true,
        }
    }

    /// Working bound `L + max(4, longest generator)`, capped at the maximum.
    pub fn with_default_working(bound: usize, generators: &[Partition]) -> Self {
        let longest = generators.iter().map(Partition::len).max().unwrap_or(0);
        let working = (bound + longest.max(4)).min(MAX_POINTS).max(bound);
        ClosureOptions::new(bound, working)
    }

    pub fn plain(mut self) -> Self {
        self.color_symmetry = false;
        self
    }
}

/// Result of degree-of-reflection computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Degree {
    pub k: u64,
    /// The value is pinned by the color-sum certificate rather than only
    /// observed at the bound.
    pub exact: bool,
}

/// The four cases determined by the singleton pair and the four-block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    O,
    B,
    H,
    S,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseReport {
    pub case: Case,
    pub singletons: Membership,
    pub fourblock: Membership,
}

impl CaseReport {
    /// Both tests were decided.
    pub fn is_certain(&self) -> bool {
        self.singletons.is_decided() && self.fourblock.is_decided()
    }
}

/// Canonical partitions derivable from the generators up to a working bound.
#[derive(Debug, Clone)]
pub struct BoundedCategory {
    generators: Vec<Partition>,
    bound: usize,
    working_bound: usize,
    mode: Mode,
    classes: FxHashSet<u128>,
    certificates: Vec<Certificate>,
}

/// Closure of `generators` and the two mixed pairs.
pub fn generate_closure(
    generators: &[Partition],
    options: ClosureOptions,
) -> Result<BoundedCategory, BoundError> {
    let ClosureOptions {
        bound,
        working_bound,
        color_symmetry,
    } = options;
    if bound < 2 {
        return Err(BoundError::BoundTooSmall { bound });
    }
    if working_bound < bound {
        return Err(BoundError::WorkingBelowBound {
            bound,
            working: working_bound,
        });
    }
    if working_bound > MAX_POINTS {
        return Err(BoundError::WorkingTooLarge(working_bound));
    }
    if let Some(g) = generators.iter().find(|g| g.len() > working_bound) {
        return Err(BoundError::GeneratorTooLong {
            generator: g.to_string(),
            len: g.len(),
            working: working_bound,
        });
    }
    let certificates = Certificate::derive(generators.iter().chain(base_pairs().iter()));
    let (mode, classes) = close(generators, working_bound, color_symmetry);
    Ok(BoundedCategory {
        generators: generators.to_vec(),
        bound,
        working_bound,
        mode,
        classes,
        certificates,
    })
}

fn close(generators: &[Partition], working: usize, color_symmetry: bool) -> (Mode, FxHashSet<u128>) {
    let global = named::global_pair();
    let mut seeds: Vec<Partition> = generators.to_vec();
    seeds.extend(base_pairs());
    let plain_seeds: Vec<Shape> = seeds.iter().map(|p| Shape::from_partition(p, Mode::Plain)).collect();
    let trigger = (color_symmetry && working >= global.len())
        .then(|| Shape::from_partition(&global, Mode::Plain).canonical_key(Mode::Plain));
    let seeded_global = trigger.is_some_and(|t| plain_seeds.iter().any(|s| s.canonical_key(Mode::Plain) == t));
    if !seeded_global {
        if let Outcome::Done(classes) = saturate(&plain_seeds, Mode::Plain, working, trigger) {
            return (Mode::Plain, classes);
        }
    }
    seeds.push(global);
    let colorized: Vec<Shape> = seeds
        .iter()
        .map(|p| Shape::from_partition(p, Mode::Colorized))
        .collect();
    match saturate(&colorized, Mode::Colorized, working, None) {
        Outcome::Done(classes) => (Mode::Colorized, classes),
        Outcome::Triggered => unreachable!("no trigger in colorized mode"),
    }
}

impl BoundedCategory {
    pub fn generators(&self) -> &[Partition] {
        &self.generators
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn working_bound(&self) -> usize {
        self.working_bound
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn options(&self) -> ClosureOptions {
        ClosureOptions {
            bound: self.bound,
            working_bound: self.working_bound,
            color_symmetry: true,
        }
    }

    pub fn certificates(&self) -> &[Certificate] {
        &self.certificates
    }

    /// Number of stored orbit classes.
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    fn key_of(&self, p: &Partition) -> u128 {
        Shape::from_partition(p, self.mode).canonical_key(self.mode)
    }

    fn shapes(&self) -> impl Iterator<Item = Shape> + '_ {
        self.classes.iter().map(|&k| Shape::unpack(k))
    }

    /// One partition per stored class, sorted.
    pub fn representatives(&self) -> Vec<Partition> {
        let mut reps: Vec<Partition> = self.shapes().map(|s| s.to_partition(self.mode)).collect();
        reps.sort();
        reps
    }

    pub fn violated_certificate(&self, p: &Partition) -> Option<Certificate> {
        self.certificates.iter().copied().find(|c| !c.holds_for(p))
    }

    pub fn contains(&self, p: &Partition) -> Membership {
        if p.len() <= self.working_bound && self.classes.contains(&self.key_of(p)) {
            return Membership::Yes;
        }
        match self.violated_certificate(p) {
            Some(cert) => Membership::CertifiedNo(cert),
            None => Membership::UnknownAtBound(self.working_bound),
        }
    }

    pub fn is_globally_colorized(&self) -> Membership {
        self.contains(&named::global_pair())
    }

    pub fn case_of(&self) -> CaseReport {
        let singletons = self.contains(&named::singletons_wb());
        let fourblock = self.contains(&named::fourblock_wbwb());
        let case = match (singletons.is_yes(), fourblock.is_yes()) {
            (false, false) => Case::O,
            (true, false) => Case::B,
            (false, true) => Case::H,
            (true, true) => Case::S,
        };
        CaseReport {
            case,
            singletons,
            fourblock,
        }
    }

    /// Every element of length at most `max_len`, expanded from the classes.
    pub fn elements_up_to(&self, max_len: usize) -> BTreeSet<Partition> {
        let mut out = BTreeSet::new();
        for s in self.shapes().filter(|s| s.len <= max_len) {
            for img in s.images(self.mode, true) {
                let p = img.to_partition(self.mode);
                match self.mode {
                    Mode::Plain => {
                        out.insert(p);
                    }
                    Mode::Colorized => {
                        let white = img.data as usize;
                        for colors in colorings_with_white(img.len, white) {
                            out.insert(p.recolor(colors).expect("same length"));
                        }
                    }
                }
            }
        }
        out
    }

    /// Sorted canonical words of the elements with `1..=max_len` points.
    pub fn words_up_to(&self, max_len: usize) -> Vec<String> {
        let mut words: Vec<String> = self
            .elements_up_to(max_len)
            .iter()
            .filter(|p| !p.is_empty())
            .map(|p| p.to_string())
            .collect();
        words.sort();
        words
    }

    /// Element sets agree on all lengths up to `max_len`.
    pub fn same_elements_up_to(&self, other: &BoundedCategory, max_len: usize) -> bool {
        if self.mode == other.mode {
            let mine: FxHashSet<u128> = self
                .classes
                .iter()
                .copied()
                .filter(|&k| Shape::unpack(k).len <= max_len)
                .collect();
            let theirs: FxHashSet<u128> = other
                .classes
                .iter()
                .copied()
                .filter(|&k| Shape::unpack(k).len <= max_len)
                .collect();
            mine == theirs
        } else {
            self.elements_up_to(max_len) == other.elements_up_to(max_len)
        }
    }

    /// All stored elements agree.
    pub fn same_elements(&self, other: &BoundedCategory) -> bool {
        self.same_elements_up_to(other, self.working_bound.max(other.working_bound))
    }

    /// A partition of length at most `max_len` present in exactly one of the
    /// two categories.
    pub fn witness_difference(&self, other: &BoundedCategory, max_len: usize) -> Option<Partition> {
        let mine = self.elements_up_to(max_len);
        let theirs = other.elements_up_to(max_len);
        mine.symmetric_difference(&theirs).next().cloned()
    }

    pub fn degree_of_reflection(&self) -> Degree {
        let observed = self
            .shapes()
            .map(|s| s.c(self.mode).unsigned_abs())
            .filter(|&c| c > 0)
            .reduce(gcd);
        let divisor = self.certificates.iter().find_map(|c| match c {
            Certificate::ColorSumDivisibleBy(d) => Some(*d),
            _ => None,
        });
        match (observed, divisor) {
            (None, Some(0)) => Degree { k: 0, exact: true },
            (None, _) => Degree { k: 0, exact: false },
            (Some(k), Some(d)) => Degree { k, exact: k == d },
            (Some(k), None) => Degree { k, exact: k == 1 },
        }
    }

    /// Elements with `c = 0`.
    pub fn zero_sector(&self) -> BoundedCategory {
        let classes: FxHashSet<u128> = self
            .classes
            .iter()
            .copied()
            .filter(|&k| Shape::unpack(k).c(self.mode) == 0)
            .collect();
        let mut certificates = self.certificates.clone();
        certificates.retain(|c| !matches!(c, Certificate::ColorSumDivisibleBy(_)));
        certificates.push(Certificate::ColorSumDivisibleBy(0));
        let generators = classes
            .iter()
            .map(|&k| Shape::unpack(k).to_partition(self.mode))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        BoundedCategory {
            generators,
            bound: self.bound,
            working_bound: self.working_bound,
            mode: self.mode,
            classes,
            certificates,
        }
    }

    /// Closure of these elements together with `extra`, at the same bounds.
    pub fn extend_with(&self, extra: &[Partition]) -> Result<BoundedCategory, BoundError> {
        let mut gens = self.representatives();
        gens.extend_from_slice(extra);
        let mut cat = generate_closure(&gens, self.options())?;
        // a law held by this category and by the extras holds for the join
        cat.certificates = merge_certificates(&self.certificates, extra);
        cat.generators = self.generators.iter().chain(extra.iter()).cloned().collect();
        Ok(cat)
    }

    /// The join with the white pair `aa`.
    pub fn noncolored_join(&self) -> Result<BoundedCategory, BoundError> {
        self.extend_with(&[named::pair_ww()])
    }

    /// Non-colored shapes of all elements up to `max_len`.
    pub fn noncolored_image(&self, max_len: usize) -> BTreeSet<NonColoredPartition> {
        self.shapes()
            .filter(|s| s.len <= max_len)
            .flat_map(|s| s.images(self.mode, true))
            .map(|img| img.to_partition(self.mode).forget_colors())
            .collect()
    }

    /// Random elements with randomly permuted colors are found again.
    pub fn color_permutation_property<R: Rng>(&self, trials: usize, rng: &mut R) -> bool {
        let shapes: Vec<Shape> = {
            let mut v: Vec<u128> = self.classes.iter().copied().collect();
            v.sort_unstable();
            v.into_iter().map(Shape::unpack).filter(|s| s.len > 0).collect()
        };
        if shapes.is_empty() {
            return true;
        }
        for _ in 0..trials {
            let s = shapes[rng.gen_range(0..shapes.len())];
            let images = s.images(self.mode, true);
            let img = images[rng.gen_range(0..images.len())];
            let mut p = img.to_partition(self.mode);
            if self.mode == Mode::Colorized {
                let mut colors = p.colors().to_vec();
                colors.shuffle(rng);
                p = p.recolor(colors).expect("same length");
            }
            let mut colors = p.colors().to_vec();
            colors.shuffle(rng);
            let permuted = p.recolor(colors).expect("same length");
            if !self.contains(&permuted).is_yes() {
                return false;
            }
        }
        true
    }

    /// Checks closure under the operations within the working bound; returns
    /// an offending derived partition if any.
    pub fn verify_closed(&self) -> Result<(), Partition> {
        let shapes: Vec<Shape> = self.shapes().collect();
        let check = |s: Shape| -> Result<(), Partition> {
            if self.classes.contains(&s.canonical_key(self.mode)) {
                Ok(())
            } else {
                Err(s.to_partition(self.mode))
            }
        };
        for base in base_pairs() {
            check(Shape::from_partition(&base, self.mode))?;
        }
        for x in &shapes {
            for i in 0..x.len {
                if let Some(y) = x.contract(self.mode, i) {
                    check(y)?;
                }
            }
        }
        for x in &shapes {
            for y in &shapes {
                if x.len + y.len > self.working_bound || x.len == 0 || y.len == 0 {
                    continue;
                }
                for xa in x.images(self.mode, false) {
                    for yb in y.images(self.mode, true) {
                        check(xa.tensor(&yb, self.mode))?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Certificates of `held` that the added partitions also satisfy, plus the
/// color-sum divisor recomputed for the union.
fn merge_certificates(held: &[Certificate], extra: &[Partition]) -> Vec<Certificate> {
    let mut out: Vec<Certificate> = Vec::new();
    for &c in held {
        match c {
            Certificate::ColorSumDivisibleBy(d) => {
                let d = extra.iter().fold(d, |acc, p| gcd(acc, p.c().unsigned_abs()));
                if d != 1 {
                    out.push(Certificate::ColorSumDivisibleBy(d));
                }
            }
            Certificate::BlockColorSumDivisibleBy(m) => {
                let m = extra.iter().fold(m, |acc, p| {
                    crate::certificate::block_color_sums(p)
                        .into_iter()
                        .fold(acc, |a, v| gcd(a, v.unsigned_abs()))
                });
                if m != 1 {
                    out.push(Certificate::BlockColorSumDivisibleBy(m));
                }
            }
            Certificate::BlockParityDivisibleBy(m) => {
                if extra.iter().all(|p| p.len() % 2 == 0) {
                    let m = extra.iter().fold(m, |acc, p| {
                        crate::certificate::block_parity_differences(p)
                            .into_iter()
                            .fold(acc, |a, v| gcd(a, v.unsigned_abs()))
                    });
                    if m != 1 {
                        out.push(Certificate::BlockParityDivisibleBy(m));
                    }
                }
            }
            other => {
                if extra.iter().all(|p| other.holds_for(p)) {
                    out.push(other);
                }
            }
        }
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::Integer::gcd(&a, &b)
}

/// All color vectors of length `len` with exactly `white` white points.
fn colorings_with_white(len: usize, white: usize) -> Vec<Vec<Color>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn go(len: usize, white: usize, current: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
        let placed_white = current.iter().filter(|c| **c == Color::White).count();
        let remaining = len - current.len();
        if remaining == 0 {
            if placed_white == white {
                out.push(current.clone());
            }
            return;
        }
        if placed_white < white {
            current.push(Color::White);
            go(len, white, current, out);
            current.pop();
        }
        if white - placed_white < remaining {
            current.push(Color::Black);
            go(len, white, current, out);
            current.pop();
        }
    }
    go(len, white, &mut current, &mut out);
    out
}
