//! Two-colored set partitions and the four category operations.
//!
//! A partition of `k` points is stored in canonical form: a color per point
//! and a block label per point, where labels are assigned `0, 1, 2, ...` in
//! order of first occurrence. Equality, hashing and ordering all work on this
//! canonical form, so two partitions describing the same decomposition are
//! always equal no matter how they were built.
//!
//! The word notation writes one letter per point. Points sharing a letter
//! (ignoring case) share a block, lowercase letters are white and uppercase
//! letters are black: `AaBBCcA` is a seven point partition with blocks
//! `{1,2,7}, {3,4}, {5,6}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Number of distinct block letters available in the word notation.
pub const WORD_ALPHABET: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("invalid character {found:?} at position {position}")]
    Parse { position: usize, found: char },
    #[error("{blocks} blocks exceed the {WORD_ALPHABET} letters of the word notation")]
    AlphabetExhausted { blocks: usize },
    #[error("cannot contract at position {position}: both points are {color}")]
    SameColors { position: usize, color: Color },
    #[error("{op} needs at least {needed} points, got {len}")]
    TooShort {
        op: &'static str,
        needed: usize,
        len: usize,
    },
    #[error("position {position} is outside 1..={len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("malformed partition: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn inverse(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }

    /// `+1` for white, `-1` for black.
    pub fn sign(self) -> i64 {
        match self {
            Color::White => 1,
            Color::Black => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Color::White => 'w',
            Color::Black => 'b',
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::White => f.write_str("white"),
            Color::Black => f.write_str("black"),
        }
    }
}

/// Relabel blocks by order of first occurrence.
pub(crate) fn canonical_labels<T: Copy + Eq + std::hash::Hash>(labels: &[T]) -> Vec<u32> {
    let mut seen: Vec<T> = Vec::new();
    labels
        .iter()
        .map(|l| match seen.iter().position(|s| s == l) {
            Some(i) => i as u32,
            None => {
                seen.push(*l);
                (seen.len() - 1) as u32
            }
        })
        .collect()
}

fn block_count_of(blocks: &[u32]) -> usize {
    blocks.iter().max().map_or(0, |m| *m as usize + 1)
}

fn block_sizes_of(blocks: &[u32]) -> Vec<usize> {
    let mut sizes = vec![0; block_count_of(blocks)];
    for &b in blocks {
        sizes[b as usize] += 1;
    }
    sizes
}

fn noncrossing(blocks: &[u32]) -> bool {
    // a < b < c < d with a,c in one block and b,d in another
    let k = blocks.len();
    for a in 0..k {
        for b in a + 1..k {
            if blocks[b] == blocks[a] {
                continue;
            }
            for c in b + 1..k {
                if blocks[c] != blocks[a] {
                    continue;
                }
                if blocks[c + 1..].iter().any(|&d| d == blocks[b]) {
                    return false;
                }
            }
        }
    }
    true
}

fn letter(block: u32, upper: bool) -> char {
    let c = (b'a' + block as u8) as char;
    if upper {
        c.to_ascii_uppercase()
    } else {
        c
    }
}

/// A two-colored partition in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    colors: Vec<Color>,
    blocks: Vec<u32>,
}

/// Color counts of a partition: `c = white - black`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorSum {
    pub white: usize,
    pub black: usize,
    pub c: i64,
}

impl Partition {
    pub fn empty() -> Self {
        Partition {
            colors: Vec::new(),
            blocks: Vec::new(),
        }
    }

    /// Builds a partition from colors and arbitrary block labels; labels are
    /// canonicalized.
    pub fn from_parts<T: Copy + Eq + std::hash::Hash>(
        colors: Vec<Color>,
        labels: &[T],
    ) -> Result<Self, PartitionError> {
        if colors.len() != labels.len() {
            return Err(PartitionError::Malformed(format!(
                "{} colors for {} points",
                colors.len(),
                labels.len()
            )));
        }
        Ok(Partition {
            colors,
            blocks: canonical_labels(labels),
        })
    }

    pub(crate) fn from_canonical(colors: Vec<Color>, blocks: Vec<u32>) -> Self {
        debug_assert_eq!(canonical_labels(&blocks), blocks);
        Partition { colors, blocks }
    }

    /// Parses the word notation.
    pub fn parse(text: &str) -> Result<Self, PartitionError> {
        let mut colors = Vec::with_capacity(text.len());
        let mut labels = Vec::with_capacity(text.len());
        for (position, ch) in text.chars().enumerate() {
            if !ch.is_ascii_alphabetic() {
                return Err(PartitionError::Parse {
                    position: position + 1,
                    found: ch,
                });
            }
            colors.push(if ch.is_ascii_lowercase() {
                Color::White
            } else {
                Color::Black
            });
            labels.push(ch.to_ascii_lowercase());
        }
        Partition::from_parts(colors, &labels)
    }

    /// Renders the canonical word, `a, b, c, ...` by first occurrence.
    pub fn render(&self) -> Result<String, PartitionError> {
        let blocks = self.block_count();
        if blocks > WORD_ALPHABET {
            return Err(PartitionError::AlphabetExhausted { blocks });
        }
        Ok(self
            .blocks
            .iter()
            .zip(&self.colors)
            .map(|(&b, &c)| letter(b, c == Color::Black))
            .collect())
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Block label of every point, canonical.
    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        block_count_of(&self.blocks)
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        block_sizes_of(&self.blocks)
    }

    /// Side by side placement of `self` and `other`.
    pub fn tensor(&self, other: &Partition) -> Partition {
        let shift = self.block_count() as u32;
        let mut colors = self.colors.clone();
        colors.extend_from_slice(&other.colors);
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().map(|b| b + shift));
        Partition { colors, blocks }
    }

    /// Contraction at the 1-based `position`: the blocks of this point and of
    /// its cyclic successor are unified and both points are removed.
    pub fn contract(&self, position: usize) -> Result<Partition, PartitionError> {
        let k = self.len();
        if k < 2 {
            return Err(PartitionError::TooShort {
                op: "contraction",
                needed: 2,
                len: k,
            });
        }
        if position == 0 || position > k {
            return Err(PartitionError::PositionOutOfRange { position, len: k });
        }
        let i = position - 1;
        let j = (i + 1) % k;
        if self.colors[i] == self.colors[j] {
            return Err(PartitionError::SameColors {
                position,
                color: self.colors[i],
            });
        }
        let (keep, merge) = (self.blocks[i], self.blocks[j]);
        let mut colors = Vec::with_capacity(k - 2);
        let mut labels = Vec::with_capacity(k - 2);
        for t in (0..k).filter(|&t| t != i && t != j) {
            colors.push(self.colors[t]);
            let b = self.blocks[t];
            labels.push(if b == merge { keep } else { b });
        }
        Ok(Partition {
            colors,
            blocks: canonical_labels(&labels),
        })
    }

    /// Mirror image with all colors inverted.
    pub fn reflect(&self) -> Partition {
        let colors = self.colors.iter().rev().map(|c| c.inverse()).collect();
        let labels: Vec<u32> = self.blocks.iter().rev().copied().collect();
        Partition {
            colors,
            blocks: canonical_labels(&labels),
        }
    }

    /// Moves the last point to the front, keeping its color and block.
    pub fn rotate(&self) -> Result<Partition, PartitionError> {
        let k = self.len();
        if k == 0 {
            return Err(PartitionError::TooShort {
                op: "rotation",
                needed: 1,
                len: 0,
            });
        }
        let mut colors = Vec::with_capacity(k);
        colors.push(self.colors[k - 1]);
        colors.extend_from_slice(&self.colors[..k - 1]);
        let mut labels = Vec::with_capacity(k);
        labels.push(self.blocks[k - 1]);
        labels.extend_from_slice(&self.blocks[..k - 1]);
        Ok(Partition {
            colors,
            blocks: canonical_labels(&labels),
        })
    }

    /// Rotation by `steps` positions; the empty partition is returned as is.
    pub fn rotate_by(&self, steps: usize) -> Partition {
        let k = self.len();
        if k == 0 {
            return self.clone();
        }
        let s = steps % k;
        let idx = |t: usize| (t + k - s) % k;
        let colors = (0..k).map(|t| self.colors[idx(t)]).collect();
        let labels: Vec<u32> = (0..k).map(|t| self.blocks[idx(t)]).collect();
        Partition {
            colors,
            blocks: canonical_labels(&labels),
        }
    }

    pub fn color_sum(&self) -> ColorSum {
        let white = self.colors.iter().filter(|c| **c == Color::White).count();
        let black = self.len() - white;
        ColorSum {
            white,
            black,
            c: white as i64 - black as i64,
        }
    }

    /// `c(p)`: white points minus black points.
    pub fn c(&self) -> i64 {
        self.color_sum().c
    }

    pub fn forget_colors(&self) -> NonColoredPartition {
        NonColoredPartition {
            blocks: self.blocks.clone(),
        }
    }

    /// Same blocks with new colors.
    pub fn recolor(&self, colors: Vec<Color>) -> Result<Partition, PartitionError> {
        if colors.len() != self.len() {
            return Err(PartitionError::Malformed(format!(
                "{} colors for {} points",
                colors.len(),
                self.len()
            )));
        }
        Ok(Partition {
            colors,
            blocks: self.blocks.clone(),
        })
    }

    pub fn is_noncrossing(&self) -> bool {
        noncrossing(&self.blocks)
    }

    /// Number of blocks that disappear or merge when contracting at the
    /// 1-based `position`; `None` if the contraction is not defined.
    pub fn contraction_block_loss(&self, position: usize) -> Option<usize> {
        let k = self.len();
        if k < 2 || position == 0 || position > k {
            return None;
        }
        let i = position - 1;
        let j = (i + 1) % k;
        if self.colors[i] == self.colors[j] {
            return None;
        }
        let (bi, bj) = (self.blocks[i], self.blocks[j]);
        let merged = if bi == bj { 0 } else { 1 };
        let remaining = self
            .blocks
            .iter()
            .enumerate()
            .filter(|&(t, &b)| t != i && t != j && (b == bi || b == bj))
            .count();
        Some(merged + usize::from(remaining == 0))
    }
}

impl FromStr for Partition {
    type Err = PartitionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Partition::parse(s)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.render() {
            Ok(word) => f.write_str(&word),
            Err(_) => f.write_str(&ExplicitPartition::from(self).to_json()),
        }
    }
}

/// Explicit JSON form without the alphabet limit:
/// `{"colors":"wbw","blocks":[0,1,0]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitPartition {
    pub colors: String,
    pub blocks: Vec<u32>,
}

impl ExplicitPartition {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, PartitionError> {
        serde_json::from_str(text).map_err(|e| PartitionError::Malformed(e.to_string()))
    }
}

impl From<&Partition> for ExplicitPartition {
    fn from(p: &Partition) -> Self {
        ExplicitPartition {
            colors: p.colors.iter().map(|c| c.symbol()).collect(),
            blocks: p.blocks.clone(),
        }
    }
}

impl TryFrom<ExplicitPartition> for Partition {
    type Error = PartitionError;
    fn try_from(e: ExplicitPartition) -> Result<Self, Self::Error> {
        let colors = e
            .colors
            .chars()
            .enumerate()
            .map(|(i, ch)| match ch {
                'w' => Ok(Color::White),
                'b' => Ok(Color::Black),
                other => Err(PartitionError::Parse {
                    position: i + 1,
                    found: other,
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::from_parts(colors, &e.blocks)
    }
}

/// A set partition without colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NonColoredPartition {
    blocks: Vec<u32>,
}

impl NonColoredPartition {
    pub fn from_labels<T: Copy + Eq + std::hash::Hash>(labels: &[T]) -> Self {
        NonColoredPartition {
            blocks: canonical_labels(labels),
        }
    }

    /// Parses a word; case is ignored.
    pub fn parse(text: &str) -> Result<Self, PartitionError> {
        Ok(Partition::parse(text)?.forget_colors())
    }

    pub fn render(&self) -> Result<String, PartitionError> {
        let blocks = self.block_count();
        if blocks > WORD_ALPHABET {
            return Err(PartitionError::AlphabetExhausted { blocks });
        }
        Ok(self.blocks.iter().map(|&b| letter(b, false)).collect())
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        block_count_of(&self.blocks)
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        block_sizes_of(&self.blocks)
    }

    pub fn is_noncrossing(&self) -> bool {
        noncrossing(&self.blocks)
    }

    pub fn with_colors(&self, colors: Vec<Color>) -> Result<Partition, PartitionError> {
        Partition::from_parts(colors, &self.blocks)
    }

    /// All `2^k` colorings, ordered by the binary pattern of black points.
    pub fn colorings(&self) -> Vec<Partition> {
        let k = self.len();
        assert!(k < usize::BITS as usize, "too many points to color");
        (0..1usize << k)
            .map(|mask| {
                let colors = (0..k)
                    .map(|t| {
                        if mask >> (k - 1 - t) & 1 == 1 {
                            Color::Black
                        } else {
                            Color::White
                        }
                    })
                    .collect();
                Partition {
                    colors,
                    blocks: self.blocks.clone(),
                }
            })
            .collect()
    }

    /// Every set partition of `len` points, in lexicographic order of the
    /// block labels.
    pub fn all(len: usize) -> Vec<NonColoredPartition> {
        let mut out = Vec::new();
        let mut labels = vec![0u32; len];
        fn go(t: usize, max: u32, labels: &mut Vec<u32>, out: &mut Vec<NonColoredPartition>) {
            if t == labels.len() {
                out.push(NonColoredPartition {
                    blocks: labels.clone(),
                });
                return;
            }
            for b in 0..=max {
                labels[t] = b;
                go(t + 1, max.max(b + 1), labels, out);
            }
        }
        go(0, 0, &mut labels, &mut out);
        out
    }
}

impl Partition {
    /// Every two-colored partition of `len` points.
    pub fn all(len: usize) -> Vec<Partition> {
        NonColoredPartition::all(len)
            .iter()
            .flat_map(NonColoredPartition::colorings)
            .collect()
    }
}

impl fmt::Display for NonColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.render() {
            Ok(word) => f.write_str(&word),
            Err(_) => write!(f, "{:?}", self.blocks),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        let bell: Vec<usize> = (0..7).map(|k| NonColoredPartition::all(k).len()).collect();
        assert_eq!(bell, vec![1, 1, 2, 5, 15, 52, 203]);
        assert_eq!(Partition::all(3).len(), 40);
    }

    fn p(word: &str) -> Partition {
        Partition::parse(word).unwrap()
    }

    #[test]
    fn parse_running_example() {
        let q = p("AaBBCcA");
        assert_eq!(q.blocks(), &[0, 0, 1, 1, 2, 2, 0]);
        let expected: Vec<Color> = "bwbbbwb"
            .chars()
            .map(|c| if c == 'w' { Color::White } else { Color::Black })
            .collect();
        assert_eq!(q.colors(), expected.as_slice());
        assert_eq!(p(""), Partition::empty());
        assert_eq!(p("xX"), p("aA"));
    }

    #[test]
    fn parse_rejects_non_letters() {
        assert_eq!(
            Partition::parse("ab1"),
            Err(PartitionError::Parse {
                position: 3,
                found: '1'
            })
        );
        assert!(Partition::parse("a b").is_err());
    }

    #[test]
    fn render_canonical_letters() {
        let q = Partition::from_parts(
            "bwwbbww"
                .chars()
                .map(|c| if c == 'w' { Color::White } else { Color::Black })
                .collect(),
            &[1, 1, 2, 3, 2, 3, 4],
        )
        .unwrap();
        assert_eq!(q.render().unwrap(), "AabCBcd");
        assert_eq!(Partition::empty().render().unwrap(), "");
        assert_eq!(p("zzQQ").render().unwrap(), "aaBB");
    }

    #[test]
    fn render_alphabet_limit() {
        let labels: Vec<u32> = (0..27).collect();
        let wide = Partition::from_parts(vec![Color::White; 27], &labels).unwrap();
        assert_eq!(
            wide.render(),
            Err(PartitionError::AlphabetExhausted { blocks: 27 })
        );
        let json = wide.to_string();
        let back: Partition = ExplicitPartition::from_json(&json).unwrap().try_into().unwrap();
        assert_eq!(back, wide);
    }

    #[test]
    fn tensor_examples() {
        let pq = p("AaBBCcA").tensor(&p("AabCBcd"));
        assert_eq!(pq.render().unwrap(), "AaBBCcADdeFEfg");
        assert_eq!(pq.len(), 14);
        assert_eq!(p("AaBBCcA").tensor(&Partition::empty()), p("AaBBCcA"));
        assert_eq!(p("a").tensor(&p("A")), p("aB"));
    }

    #[test]
    fn contract_examples() {
        assert_eq!(p("AaBBCcA").contract(2).unwrap(), p("AABbA"));
        assert_eq!(p("AabCBcd").contract(7).unwrap(), p("abCBc"));
        assert_eq!(p("aA").contract(1).unwrap(), Partition::empty());
    }

    #[test]
    fn contract_errors() {
        assert_eq!(
            p("aa").contract(1),
            Err(PartitionError::SameColors {
                position: 1,
                color: Color::White
            })
        );
        assert!(matches!(
            p("a").contract(1),
            Err(PartitionError::TooShort { .. })
        ));
        assert!(matches!(
            p("aA").contract(3),
            Err(PartitionError::PositionOutOfRange { .. })
        ));
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(p("AaBBCcA").reflect(), p("aBbccAa"));
        assert_eq!(Partition::empty().reflect(), Partition::empty());
        let q = p("AabCBcd");
        assert_eq!(q.reflect().reflect(), q);
    }

    #[test]
    fn rotate_examples() {
        let q = p("AaBBCcA");
        assert_eq!(q.rotate().unwrap(), p("AAaBBCc"));
        assert_eq!(p("a").rotate().unwrap(), p("a"));
        let mut r = q.clone();
        for _ in 0..7 {
            r = r.rotate().unwrap();
        }
        assert_eq!(r, q);
        assert!(Partition::empty().rotate().is_err());
        assert_eq!(q.rotate_by(3), q.rotate().unwrap().rotate().unwrap().rotate().unwrap());
    }

    #[test]
    fn color_sums() {
        assert_eq!(
            p("AaBBCcA").color_sum(),
            ColorSum {
                white: 2,
                black: 5,
                c: -3
            }
        );
        assert_eq!(p("aB").color_sum().c, 0);
    }

    #[test]
    fn forget_and_color() {
        assert_eq!(p("AaBBCcA").forget_colors().render().unwrap(), "aabbcca");
        assert_eq!(p("aB").forget_colors(), p("Ab").forget_colors());
        assert_eq!(Partition::empty().forget_colors().colorings(), vec![Partition::empty()]);
        let ab = NonColoredPartition::parse("ab").unwrap();
        assert_eq!(ab.colorings().len(), 4);
        let aa = NonColoredPartition::parse("aa").unwrap();
        let balanced = aa.colorings().iter().filter(|q| q.c() == 0).count();
        assert_eq!(balanced, 2);
    }

    #[test]
    fn crossing_detection() {
        assert!(p("AaBBCcA").is_noncrossing());
        assert!(!p("AabCBcd").is_noncrossing());
        assert!(Partition::empty().is_noncrossing());
        assert!(p("abba").is_noncrossing());
    }

    #[test]
    fn contraction_block_loss_cases() {
        // distinct blocks, both survive
        assert_eq!(p("AaBBCcA").contraction_block_loss(2), Some(1));
        // a full pair vanishes
        assert_eq!(p("aA").contraction_block_loss(1), Some(1));
        // two singletons vanish
        assert_eq!(p("aB").contraction_block_loss(1), Some(2));
        // same block, other points remain
        assert_eq!(p("aAa").contraction_block_loss(1), Some(0));
        assert_eq!(p("aa").contraction_block_loss(1), None);
    }
}
