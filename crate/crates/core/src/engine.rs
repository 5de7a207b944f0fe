//! Bounded closure of generators under the category operations.
//!
//! Elements are stored up to rotation and reflection: a category contains a
//! partition iff it contains all its rotations and its reflection, so only one
//! representative per orbit is kept. Representatives are packed into a `u128`
//! (block labels as nibbles, then color data, then length) and the smallest
//! packing over the orbit is the canonical key.
//!
//! Once the white/black pair `aaBB` is derived, the category is closed under
//! arbitrary permutations of colors that keep the number of white points. The
//! engine then switches to a colorized store where a class is a non-colored
//! partition together with its white count, and restarts from the generators.

use std::collections::VecDeque;

use rustc_hash::FxHashSet;
use thiserror::Error;

use crate::partition::{Color, Partition};

/// Largest working bound the packed representation supports.
pub const MAX_POINTS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("bound {bound} must be at least 2")]
    BoundTooSmall { bound: usize },
    #[error("working bound {working} is below the reported bound {bound}")]
    WorkingBelowBound { bound: usize, working: usize },
    #[error("generator {generator} has {len} points, more than the working bound {working}")]
    GeneratorTooLong {
        generator: String,
        len: usize,
        working: usize,
    },
    #[error("working bound {0} exceeds the supported maximum of {MAX_POINTS} points")]
    WorkingTooLarge(usize),
}

/// How colors are stored in a class key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Exact colors; one bit per point, set for black.
    Plain,
    /// Only the number of white points; the category is closed under color
    /// permutations.
    Colorized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Shape {
    pub len: usize,
    pub blocks: [u8; MAX_POINTS],
    /// Plain: bit `t` set iff point `t` is black. Colorized: white count.
    pub data: u16,
}

impl Shape {
    fn new(len: usize) -> Shape {
        Shape {
            len,
            blocks: [0; MAX_POINTS],
            data: 0,
        }
    }

    pub fn from_partition(p: &Partition, mode: Mode) -> Shape {
        debug_assert!(p.len() <= MAX_POINTS);
        let mut s = Shape::new(p.len());
        for (t, &b) in p.blocks().iter().enumerate() {
            s.blocks[t] = b as u8;
        }
        s.data = match mode {
            Mode::Plain => p
                .colors()
                .iter()
                .enumerate()
                .filter(|(_, c)| **c == Color::Black)
                .fold(0u16, |acc, (t, _)| acc | 1 << t),
            Mode::Colorized => p.color_sum().white as u16,
        };
        s
    }

    /// A partition in this class: exact colors in plain mode, the first
    /// `white` points white in colorized mode.
    pub fn to_partition(self, mode: Mode) -> Partition {
        let colors = (0..self.len)
            .map(|t| {
                let black = match mode {
                    Mode::Plain => self.data >> t & 1 == 1,
                    Mode::Colorized => t >= self.data as usize,
                };
                if black {
                    Color::Black
                } else {
                    Color::White
                }
            })
            .collect();
        let blocks = self.blocks[..self.len].iter().map(|&b| b as u32).collect();
        Partition::from_canonical(colors, blocks)
    }

    pub fn white_count(&self, mode: Mode) -> usize {
        match mode {
            Mode::Plain => self.len - (self.data & mask(self.len)).count_ones() as usize,
            Mode::Colorized => self.data as usize,
        }
    }

    /// `c` of the class; reflection flips its sign.
    pub fn c(&self, mode: Mode) -> i64 {
        2 * self.white_count(mode) as i64 - self.len as i64
    }

    fn block_count(&self) -> u8 {
        self.blocks[..self.len].iter().max().map_or(0, |m| m + 1)
    }

    pub fn pack(&self) -> u128 {
        let mut blocks = 0u64;
        for t in 0..self.len {
            blocks |= (self.blocks[t] as u64) << (4 * t);
        }
        (blocks as u128) | (self.data as u128) << 64 | (self.len as u128) << 80
    }

    pub fn unpack(key: u128) -> Shape {
        let len = (key >> 80) as usize & 0x1f;
        let mut s = Shape::new(len);
        let blocks = key as u64;
        for t in 0..len {
            s.blocks[t] = (blocks >> (4 * t) & 0xf) as u8;
        }
        s.data = (key >> 64) as u16;
        s
    }

    /// The linear image obtained by reading from `start`, backwards when
    /// `reversed`; colors are inverted on reversal.
    fn image(&self, mode: Mode, start: usize, reversed: bool) -> Shape {
        let n = self.len;
        let mut out = Shape::new(n);
        let mut relabel = [u8::MAX; MAX_POINTS];
        let mut next = 0u8;
        let mut bits = 0u16;
        for t in 0..n {
            let src = if reversed {
                (start + n - t) % n
            } else {
                (start + t) % n
            };
            let b = self.blocks[src] as usize;
            if relabel[b] == u8::MAX {
                relabel[b] = next;
                next += 1;
            }
            out.blocks[t] = relabel[b];
            if mode == Mode::Plain {
                let black = self.data >> src & 1 == 1;
                if black != reversed {
                    bits |= 1 << t;
                }
            }
        }
        out.data = match mode {
            Mode::Plain => bits,
            Mode::Colorized if reversed => n as u16 - self.data,
            Mode::Colorized => self.data,
        };
        out
    }

    /// Canonical key of the rotation/reflection orbit.
    pub fn canonical_key(&self, mode: Mode) -> u128 {
        let n = self.len;
        if n == 0 {
            return self.pack();
        }
        let mut best = u128::MAX;
        for reversed in [false, true] {
            for start in 0..n {
                let k = self.image(mode, start, reversed).pack();
                if k < best {
                    best = k;
                }
            }
        }
        best
    }

    /// Distinct linear images under rotation, and reflection when asked.
    pub fn images(&self, mode: Mode, with_reflection: bool) -> Vec<Shape> {
        let n = self.len;
        if n == 0 {
            return vec![*self];
        }
        let mut out: Vec<Shape> = Vec::with_capacity(2 * n);
        let mut seen: Vec<u128> = Vec::with_capacity(2 * n);
        let directions: &[bool] = if with_reflection { &[false, true] } else { &[false] };
        for &reversed in directions {
            for start in 0..n {
                let img = self.image(mode, start, reversed);
                let k = img.pack();
                if !seen.contains(&k) {
                    seen.push(k);
                    out.push(img);
                }
            }
        }
        out
    }

    /// Contraction of points `i` and `i + 1` (cyclic), if the colors allow it.
    pub fn contract(&self, mode: Mode, i: usize) -> Option<Shape> {
        let n = self.len;
        if n < 2 {
            return None;
        }
        let j = (i + 1) % n;
        let data = match mode {
            Mode::Plain => {
                if (self.data >> i & 1) == (self.data >> j & 1) {
                    return None;
                }
                0
            }
            Mode::Colorized => {
                if self.data == 0 || self.data as usize == n {
                    return None;
                }
                self.data - 1
            }
        };
        let (keep, merge) = (self.blocks[i], self.blocks[j]);
        let mut out = Shape::new(n - 2);
        let mut relabel = [u8::MAX; MAX_POINTS];
        let mut next = 0u8;
        let mut bits = 0u16;
        let mut t_out = 0;
        for t in 0..n {
            if t == i || t == j {
                continue;
            }
            let mut b = self.blocks[t];
            if b == merge {
                b = keep;
            }
            if relabel[b as usize] == u8::MAX {
                relabel[b as usize] = next;
                next += 1;
            }
            out.blocks[t_out] = relabel[b as usize];
            if self.data >> t & 1 == 1 {
                bits |= 1 << t_out;
            }
            t_out += 1;
        }
        out.data = match mode {
            Mode::Plain => bits,
            Mode::Colorized => data,
        };
        Some(out)
    }

    pub fn tensor(&self, other: &Shape, mode: Mode) -> Shape {
        let mut out = Shape::new(self.len + other.len);
        out.blocks[..self.len].copy_from_slice(&self.blocks[..self.len]);
        let shift = self.block_count();
        for t in 0..other.len {
            out.blocks[self.len + t] = other.blocks[t] + shift;
        }
        out.data = match mode {
            Mode::Plain => self.data | other.data << self.len,
            Mode::Colorized => self.data + other.data,
        };
        out
    }
}

fn mask(len: usize) -> u16 {
    if len >= 16 {
        u16::MAX
    } else {
        (1u16 << len) - 1
    }
}

pub(crate) enum Outcome {
    Done(FxHashSet<u128>),
    /// The trigger class appeared; the plain run was abandoned.
    Triggered,
}

/// Least fixed point of `seeds` under contraction, rotation, reflection and
/// tensor products of length at most `working`.
pub(crate) fn saturate(
    seeds: &[Shape],
    mode: Mode,
    working: usize,
    trigger: Option<u128>,
) -> Outcome {
    let mut elements: FxHashSet<u128> = FxHashSet::default();
    let mut queue: VecDeque<u128> = VecDeque::new();
    // processed representatives by length, with their images for tensoring
    let mut processed: Vec<Vec<Vec<Shape>>> = vec![Vec::new(); working + 1];

    macro_rules! insert {
        ($shape:expr) => {{
            let key = $shape.canonical_key(mode);
            if elements.insert(key) {
                if Some(key) == trigger {
                    return Outcome::Triggered;
                }
                queue.push_back(key);
            }
        }};
    }

    for s in seeds {
        insert!(s);
    }

    while let Some(key) = queue.pop_front() {
        let x = Shape::unpack(key);
        for i in 0..x.len {
            if let Some(y) = x.contract(mode, i) {
                insert!(y);
            }
        }
        if x.len == 0 {
            continue;
        }
        processed[x.len].push(x.images(mode, true));
        let rotations = x.images(mode, false);
        for other_len in 1..=working - x.len {
            for other in 0..processed[other_len].len() {
                for b in 0..processed[other_len][other].len() {
                    let yb = processed[other_len][other][b];
                    for xa in &rotations {
                        insert!(xa.tensor(&yb, mode));
                    }
                }
            }
        }
    }
    Outcome::Done(elements)
}
