//! Named partitions used throughout the classification.
//!
//! Signed parameters follow the usual convention: `u(-k)` and `s(-k)` are the
//! reflections of `u(k)` and `s(k)`, i.e. the same shapes with black points.

use crate::partition::{Color, NonColoredPartition, Partition, PartitionError};

fn word(w: &str) -> Partition {
    Partition::parse(w).expect("builder words are valid")
}

/// White-black pair `aA`.
pub fn pair_wb() -> Partition {
    word("aA")
}

/// Black-white pair `Aa`.
pub fn pair_bw() -> Partition {
    word("Aa")
}

/// Unicolored white pair `aa`.
pub fn pair_ww() -> Partition {
    word("aa")
}

/// Unicolored black pair `AA`.
pub fn pair_bb() -> Partition {
    word("AA")
}

pub fn singleton_w() -> Partition {
    word("a")
}

pub fn singleton_b() -> Partition {
    word("A")
}

/// White pair next to black pair, `aaBB`. Its presence makes a category
/// globally colorized.
pub fn global_pair() -> Partition {
    pair_ww().tensor(&pair_bb())
}

/// One block of `|k|` points, white for `k > 0` and black for `k < 0`.
pub fn block(k: i64) -> Partition {
    let color = if k < 0 { Color::Black } else { Color::White };
    let n = k.unsigned_abs() as usize;
    Partition::from_parts(vec![color; n], &vec![0u32; n]).expect("lengths agree")
}

/// `u_k`: `k/2` unicolored pairs side by side. Negative `k` gives black pairs.
pub fn u(k: i64) -> Result<Partition, PartitionError> {
    if k % 2 != 0 {
        return Err(PartitionError::Parameter(format!(
            "u_k needs an even k, got {k}"
        )));
    }
    let pair = if k < 0 { pair_bb() } else { pair_ww() };
    Ok((0..k.unsigned_abs() / 2).fold(Partition::empty(), |acc, _| acc.tensor(&pair)))
}

/// `s_k`: `|k|` singletons side by side. Negative `k` gives black singletons.
pub fn s(k: i64) -> Partition {
    let one = if k < 0 { singleton_b() } else { singleton_w() };
    (0..k.unsigned_abs()).fold(Partition::empty(), |acc, _| acc.tensor(&one))
}

/// Non-colored `h_s`: the word `(ab)^s`.
pub fn h(s: usize) -> NonColoredPartition {
    let labels: Vec<u32> = (0..2 * s).map(|t| (t % 2) as u32).collect();
    NonColoredPartition::from_labels(&labels)
}

fn alternating(n: usize) -> Vec<Color> {
    (0..n)
        .map(|t| if t % 2 == 0 { Color::White } else { Color::Black })
        .collect()
}

/// `h_s` with colors alternating from white, so that `c = 0`.
pub fn h0(s: usize) -> Partition {
    h(s).with_colors(alternating(2 * s)).expect("lengths agree")
}

/// Non-colored `π_s`: `a1..as as..a1 a1..as as..a1`, length `4s`.
pub fn pi(s: usize) -> Result<NonColoredPartition, PartitionError> {
    if s == 0 {
        return Err(PartitionError::Parameter("π_s needs s >= 1".into()));
    }
    let up: Vec<u32> = (0..s as u32).collect();
    let palindrome: Vec<u32> = up.iter().chain(up.iter().rev()).copied().collect();
    let labels: Vec<u32> = palindrome.iter().chain(palindrome.iter()).copied().collect();
    Ok(NonColoredPartition::from_labels(&labels))
}

/// `π_s` with colors alternating from white.
pub fn pi0(s: usize) -> Result<Partition, PartitionError> {
    pi(s)?.with_colors(alternating(4 * s))
}

/// Rotated crossing `abAB`.
pub fn crossing_wwbb() -> Partition {
    word("abAB")
}

/// Rotated half-liberating partition `abcABC`.
pub fn halflib_wwwbbb() -> Partition {
    word("abcABC")
}

/// Four-block with alternating colors `aAaA`.
pub fn fourblock_wbwb() -> Partition {
    word("aAaA")
}

/// Positioner `abCB`: a white singleton, a pair on points 2 and 4 and a
/// black singleton between its legs.
pub fn positioner_wwbb() -> Partition {
    word("abCB")
}

/// White singleton next to a black singleton, `aB`.
pub fn singletons_wb() -> Partition {
    word("aB")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u_and_s() {
        assert_eq!(u(4).unwrap(), word("aabb"));
        assert_eq!(u(-2).unwrap(), word("AA"));
        assert_eq!(u(0).unwrap(), Partition::empty());
        assert!(u(3).is_err());
        assert_eq!(s(3), word("abc"));
        assert_eq!(s(-2), word("AB"));
        assert_eq!(u(6).unwrap().color_sum().c, 6);
        assert_eq!(u(-4).unwrap(), u(4).unwrap().reflect());
        assert_eq!(s(-3), s(3).reflect());
    }

    #[test]
    fn blocks() {
        assert_eq!(block(2), pair_ww());
        assert_eq!(block(-3), word("AAA"));
        assert_eq!(block(0), Partition::empty());
    }

    #[test]
    fn h_and_pi() {
        assert_eq!(h(3).render().unwrap(), "ababab");
        assert_eq!(h0(2), word("aBaB"));
        assert_eq!(h0(2).c(), 0);
        assert_eq!(pi(1).unwrap().render().unwrap(), "aaaa");
        assert_eq!(pi(2).unwrap().render().unwrap(), "abbaabba");
        assert_eq!(pi0(1).unwrap(), fourblock_wbwb());
        assert_eq!(pi0(3).unwrap().len(), 12);
        assert_eq!(pi0(3).unwrap().c(), 0);
        assert!(pi(0).is_err());
    }

    #[test]
    fn colored_generators() {
        assert_eq!(global_pair(), word("aaBB"));
        assert_eq!(positioner_wwbb().contract(2).unwrap(), singletons_wb());
        for q in [crossing_wwbb(), halflib_wwwbbb(), fourblock_wbwb(), positioner_wwbb()] {
            assert_eq!(q.c(), 0, "{q}");
        }
        assert!(!crossing_wwbb().is_noncrossing());
        assert!(positioner_wwbb().is_noncrossing());
    }
}
