//! Structural laws that survive every category operation.
//!
//! Each certificate is a property of single partitions that holds for the two
//! mixed pairs and is preserved by tensor products, contractions, reflections
//! and rotations. If every generator satisfies it, so does every partition of
//! the generated category, however long the derivation. A query that violates
//! a held certificate is therefore certified absent.

use std::fmt;

use num_integer::Integer;

use crate::partition::{Color, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Certificate {
    /// Every partition has even length.
    EvenLength,
    /// Every block has exactly two points.
    PairBlocksOnly,
    /// Every block has an even number of points.
    EvenBlocksOnly,
    /// Every block has one or two points.
    BlocksAtMostTwo,
    /// No two blocks cross.
    NonCrossing,
    /// `d` divides `c(p)`; `d = 0` means `c(p) = 0`.
    ColorSumDivisibleBy(u64),
    /// `m` divides the white-minus-black count of every block; `m = 0` means
    /// every block is color balanced.
    BlockColorSumDivisibleBy(u64),
    /// Even length and `m` divides, for every block, the number of its points
    /// at odd positions minus those at even positions; `m = 0` means equal.
    BlockParityDivisibleBy(u64),
    /// Even length, blocks of size one or two, and every pair joins an odd
    /// and an even position.
    OppositeParityPairs,
}

impl Certificate {
    pub fn holds_for(&self, p: &Partition) -> bool {
        let sizes = p.block_sizes();
        match *self {
            Certificate::EvenLength => p.len() % 2 == 0,
            Certificate::PairBlocksOnly => sizes.iter().all(|&s| s == 2),
            Certificate::EvenBlocksOnly => sizes.iter().all(|&s| s % 2 == 0),
            Certificate::BlocksAtMostTwo => sizes.iter().all(|&s| s <= 2),
            Certificate::NonCrossing => p.is_noncrossing(),
            Certificate::ColorSumDivisibleBy(d) => divides(d, p.c()),
            Certificate::BlockColorSumDivisibleBy(m) => {
                block_color_sums(p).into_iter().all(|v| divides(m, v))
            }
            Certificate::BlockParityDivisibleBy(m) => {
                p.len() % 2 == 0 && block_parity_differences(p).into_iter().all(|v| divides(m, v))
            }
            Certificate::OppositeParityPairs => {
                p.len() % 2 == 0
                    && sizes.iter().all(|&s| s <= 2)
                    && block_parity_differences(p)
                        .into_iter()
                        .zip(&sizes)
                        .all(|(v, &s)| s != 2 || v == 0)
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Certificate::EvenLength => "even-length".into(),
            Certificate::PairBlocksOnly => "pair-blocks-only".into(),
            Certificate::EvenBlocksOnly => "even-blocks-only".into(),
            Certificate::BlocksAtMostTwo => "blocks-at-most-two".into(),
            Certificate::NonCrossing => "noncrossing".into(),
            Certificate::ColorSumDivisibleBy(d) => format!("c-divisible-by-{d}"),
            Certificate::BlockColorSumDivisibleBy(m) => format!("block-c-divisible-by-{m}"),
            Certificate::BlockParityDivisibleBy(m) => format!("block-parity-divisible-by-{m}"),
            Certificate::OppositeParityPairs => "opposite-parity-pairs".into(),
        }
    }

    /// All certificates satisfied by every generator.
    pub fn derive<'a, I>(generators: I) -> Vec<Certificate>
    where
        I: IntoIterator<Item = &'a Partition>,
    {
        let generators: Vec<&Partition> = generators.into_iter().collect();
        let all = |cert: Certificate| generators.iter().all(|g| cert.holds_for(g));
        let mut held: Vec<Certificate> = [
            Certificate::EvenLength,
            Certificate::PairBlocksOnly,
            Certificate::EvenBlocksOnly,
            Certificate::BlocksAtMostTwo,
            Certificate::NonCrossing,
            Certificate::OppositeParityPairs,
        ]
        .into_iter()
        .filter(|c| all(*c))
        .collect();

        let d = generators
            .iter()
            .fold(0u64, |acc, g| acc.gcd(&g.c().unsigned_abs()));
        if d != 1 {
            held.push(Certificate::ColorSumDivisibleBy(d));
        }
        let m = generators.iter().fold(0u64, |acc, g| {
            block_color_sums(g)
                .into_iter()
                .fold(acc, |a, v| a.gcd(&v.unsigned_abs()))
        });
        if m != 1 {
            held.push(Certificate::BlockColorSumDivisibleBy(m));
        }
        if generators.iter().all(|g| g.len() % 2 == 0) {
            let m = generators.iter().fold(0u64, |acc, g| {
                block_parity_differences(g)
                    .into_iter()
                    .fold(acc, |a, v| a.gcd(&v.unsigned_abs()))
            });
            if m != 1 {
                held.push(Certificate::BlockParityDivisibleBy(m));
            }
        }
        held
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn divides(d: u64, v: i64) -> bool {
    if d == 0 {
        v == 0
    } else {
        v.unsigned_abs() % d == 0
    }
}

/// White minus black points of every block.
pub fn block_color_sums(p: &Partition) -> Vec<i64> {
    let mut sums = vec![0i64; p.block_count()];
    for (&b, &c) in p.blocks().iter().zip(p.colors()) {
        sums[b as usize] += c.sign();
    }
    sums
}

/// Points at odd (1-based) positions minus points at even positions, per block.
pub fn block_parity_differences(p: &Partition) -> Vec<i64> {
    let mut diffs = vec![0i64; p.block_count()];
    for (t, &b) in p.blocks().iter().enumerate() {
        diffs[b as usize] += if t % 2 == 0 { 1 } else { -1 };
    }
    diffs
}

/// Partitions every category contains.
pub fn base_pairs() -> [Partition; 2] {
    [
        Partition::from_parts(vec![Color::White, Color::Black], &[0, 0]).expect("valid"),
        Partition::from_parts(vec![Color::Black, Color::White], &[0, 0]).expect("valid"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn p(w: &str) -> Partition {
        Partition::parse(w).unwrap()
    }

    #[test]
    fn base_pairs_satisfy_everything() {
        let all = Certificate::derive(base_pairs().iter());
        assert!(all.contains(&Certificate::ColorSumDivisibleBy(0)));
        assert!(all.contains(&Certificate::BlockColorSumDivisibleBy(0)));
        assert!(all.contains(&Certificate::BlockParityDivisibleBy(0)));
        assert!(all.contains(&Certificate::OppositeParityPairs));
        assert_eq!(all.len(), 9);
    }

    #[test]
    fn empty_category_excludes_global_pair() {
        let held = Certificate::derive(std::iter::empty());
        let violated: Vec<_> = held
            .iter()
            .filter(|c| !c.holds_for(&named::global_pair()))
            .collect();
        assert_eq!(violated, vec![&Certificate::BlockColorSumDivisibleBy(0)]);
    }

    #[test]
    fn parity_certificates() {
        assert!(Certificate::OppositeParityPairs.holds_for(&named::halflib_wwwbbb()));
        assert!(!Certificate::OppositeParityPairs.holds_for(&named::crossing_wwbb()));
        assert!(!Certificate::OppositeParityPairs.holds_for(&named::positioner_wwbb()));
        assert!(Certificate::BlockParityDivisibleBy(0).holds_for(&named::pi0(2).unwrap()));
        assert!(Certificate::BlockParityDivisibleBy(3).holds_for(&named::h0(3)));
        assert!(!Certificate::BlockParityDivisibleBy(3).holds_for(&named::h0(4)));
        assert!(!Certificate::BlockParityDivisibleBy(0).holds_for(&p("a")));
    }

    #[test]
    fn derive_gcds() {
        let gens = [named::u(4).unwrap(), named::global_pair()];
        let held = Certificate::derive(gens.iter());
        assert!(held.contains(&Certificate::ColorSumDivisibleBy(4)));
        assert!(held.contains(&Certificate::BlockColorSumDivisibleBy(2)));
        let gens = [named::s(3)];
        let held = Certificate::derive(gens.iter());
        assert!(held.contains(&Certificate::ColorSumDivisibleBy(3)));
        assert!(!held.contains(&Certificate::EvenLength));
        assert!(!held.iter().any(|c| matches!(c, Certificate::BlockParityDivisibleBy(_))));
    }
}
