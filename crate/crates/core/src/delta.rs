//! δ-tensors of partitions, their compatibility with the category operations,
//! and fixed spaces of finite matrix groups acting on colored tensor powers.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rustc_hash::FxHashSet;

use crate::cyclotomic::{Cyclo, ROOT_ORDER};
use crate::partition::{Color, Partition, PartitionError};

/// Largest number of tensor entries built by default.
pub const DEFAULT_CAPACITY: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeltaError {
    #[error("tensor with {entries} entries exceeds the capacity {cap}")]
    Capacity { entries: u128, cap: usize },
    #[error("multi-index of length {got} for a partition of length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("index {value} out of range 1..={n}")]
    IndexOutOfRange { value: usize, n: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("roots of unity of order {0} are outside the exact field")]
    OrderLimit(u32),
    #[error("group is not closed: {0}")]
    NotClosed(String),
    #[error("invalid group spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

fn entry_count(n: usize, k: usize) -> Result<usize, DeltaError> {
    let entries = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if entries > DEFAULT_CAPACITY as u128 {
        return Err(DeltaError::Capacity {
            entries,
            cap: DEFAULT_CAPACITY,
        });
    }
    Ok(entries as usize)
}

/// Decodes a flat index into 0-based leg values, leg 1 most significant.
fn legs_of(mut idx: usize, n: usize, k: usize, out: &mut [usize]) {
    for t in (0..k).rev() {
        out[t] = idx % n;
        idx /= n;
    }
}

fn index_of(legs: &[usize], n: usize) -> usize {
    legs.iter().fold(0, |acc, &v| acc * n + v)
}

/// `δ_p(α)` with `α` given by 1-based indices.
pub fn delta(p: &Partition, alpha: &[usize], n: usize) -> Result<bool, DeltaError> {
    if alpha.len() != p.len() {
        return Err(DeltaError::LengthMismatch {
            expected: p.len(),
            got: alpha.len(),
        });
    }
    if let Some(&value) = alpha.iter().find(|&&a| a == 0 || a > n) {
        return Err(DeltaError::IndexOutOfRange { value, n });
    }
    Ok(constant_on_blocks(p.blocks(), alpha))
}

fn constant_on_blocks(blocks: &[u32], alpha: &[usize]) -> bool {
    let mut seen: HashMap<u32, usize> = HashMap::new();
    blocks
        .iter()
        .zip(alpha)
        .all(|(&b, &a)| *seen.entry(b).or_insert(a) == a)
}

/// All values of `δ_p` for one dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaTensor {
    pub n: usize,
    pub colors: Vec<Color>,
    /// Row-major, leg 1 most significant, indices 0-based.
    pub entries: Vec<u8>,
}

impl DeltaTensor {
    pub fn legs(&self) -> usize {
        self.colors.len()
    }

    pub fn ones(&self) -> usize {
        self.entries.iter().filter(|&&e| e == 1).count()
    }

    pub fn get(&self, alpha: &[usize]) -> u8 {
        self.entries[index_of(alpha, self.n)]
    }

    /// Outer product, legs of `self` first.
    pub fn outer(&self, other: &DeltaTensor) -> Result<DeltaTensor, DeltaError> {
        if self.n != other.n {
            return Err(DeltaError::Dimension(format!("{} vs {}", self.n, other.n)));
        }
        entry_count(self.n, self.legs() + other.legs())?;
        let mut entries = Vec::with_capacity(self.entries.len() * other.entries.len());
        for &a in &self.entries {
            for &b in &other.entries {
                entries.push(a * b);
            }
        }
        let mut colors = self.colors.clone();
        colors.extend_from_slice(&other.colors);
        Ok(DeltaTensor {
            n: self.n,
            colors,
            entries,
        })
    }

    /// `index: value` lines, 1-based indices.
    pub fn debug_dump(&self) -> String {
        let k = self.legs();
        let mut legs = vec![0; k];
        let mut out = String::new();
        for (idx, v) in self.entries.iter().enumerate() {
            legs_of(idx, self.n, k, &mut legs);
            let label: Vec<String> = legs.iter().map(|l| (l + 1).to_string()).collect();
            out.push_str(&format!("({}): {v}\n", label.join(",")));
        }
        out
    }
}

pub fn t_vector(p: &Partition, n: usize) -> Result<DeltaTensor, DeltaError> {
    if n == 0 {
        return Err(DeltaError::Dimension("n must be positive".into()));
    }
    let k = p.len();
    let size = entry_count(n, k)?;
    let mut entries = vec![0u8; size];
    // enumerate block assignments instead of all indices
    let blocks = p.block_count();
    let mut values = vec![0usize; blocks];
    let assignments = n.pow(blocks as u32);
    let labels = p.blocks();
    for _ in 0..assignments {
        let idx = labels.iter().fold(0, |acc, &b| acc * n + values[b as usize]);
        entries[idx] = 1;
        for v in values.iter_mut().rev() {
            *v += 1;
            if *v < n {
                break;
            }
            *v = 0;
        }
    }
    Ok(DeltaTensor {
        n,
        colors: p.colors().to_vec(),
        entries,
    })
}

pub fn check_tensor(p: &Partition, q: &Partition, n: usize) -> Result<bool, DeltaError> {
    let lhs = t_vector(&p.tensor(q), n)?;
    let rhs = t_vector(p, n)?.outer(&t_vector(q, n)?)?;
    Ok(lhs.entries == rhs.entries)
}

/// `b` in the contraction identity: 1 when the merged block consists of the
/// two contracted points only.
pub fn contraction_exponent(p: &Partition, i: usize) -> Result<u32, DeltaError> {
    let k = p.len();
    if k < 2 {
        return Err(PartitionError::TooShort {
            op: "contract",
            needed: 2,
            len: k,
        }
        .into());
    }
    if i == 0 || i > k {
        return Err(PartitionError::PositionOutOfRange { position: i, len: k }.into());
    }
    let (a, b) = (i - 1, i % k);
    let blocks = p.blocks();
    let merged = |t: usize| blocks[t] == blocks[a] || blocks[t] == blocks[b];
    Ok(u32::from((0..k).filter(|&t| t != a && t != b).all(|t| !merged(t))))
}

/// Sums the legs `i` and its cyclic successor along the diagonal and compares
/// with `n^b` times the tensor of the contracted partition.
pub fn check_contraction(p: &Partition, i: usize, n: usize) -> Result<bool, DeltaError> {
    let contracted = p.contract(i)?;
    let b = contraction_exponent(p, i)?;
    let full = t_vector(p, n)?;
    let small = t_vector(&contracted, n)?;
    let k = p.len();
    let (a, c) = (i - 1, i % k);
    let mut sums = vec![0u64; small.entries.len()];
    let mut legs = vec![0usize; k];
    let mut rest = Vec::with_capacity(k);
    for (idx, &v) in full.entries.iter().enumerate() {
        if v == 0 {
            continue;
        }
        legs_of(idx, n, k, &mut legs);
        if legs[a] != legs[c] {
            continue;
        }
        rest.clear();
        rest.extend((0..k).filter(|&t| t != a && t != c).map(|t| legs[t]));
        sums[index_of(&rest, n)] += 1;
    }
    let factor = (n as u64).pow(b);
    Ok(sums
        .iter()
        .zip(&small.entries)
        .all(|(&s, &e)| s == factor * u64::from(e)))
}

/// Square matrix over the exact field, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub n: usize,
    pub entries: Vec<Cyclo>,
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Cyclo::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Cyclo::one();
        }
        Matrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Cyclo>>) -> Result<Self, DeltaError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(DeltaError::Dimension("matrix must be square".into()));
        }
        Ok(Matrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn diagonal(values: Vec<Cyclo>) -> Self {
        let n = values.len();
        let mut m = Matrix {
            n,
            entries: vec![Cyclo::zero(); n * n],
        };
        for (i, v) in values.into_iter().enumerate() {
            m.entries[i * n + i] = v;
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclo {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        let n = self.n;
        let mut entries = vec![Cyclo::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(l, j);
                    if !b.is_zero() {
                        entries[i * n + j] += &(a * b);
                    }
                }
            }
        }
        Matrix { n, entries }
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Matrix {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(Cyclo::conj).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix { n, entries }
    }

    pub fn adjoint(&self) -> Matrix {
        self.transpose().conj()
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n)
    }

    pub fn is_unitary(&self) -> bool {
        self.mul(&self.adjoint()).is_identity()
    }

    pub fn trace(&self) -> Cyclo {
        let mut t = Cyclo::zero();
        for i in 0..self.n {
            t += self.get(i, i);
        }
        t
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        Matrix {
            n: self.n,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        Matrix {
            n: self.n,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect(),
        }
    }

    /// Inverse by Gauss-Jordan elimination, `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.n;
        let mut a: Vec<Vec<Cyclo>> = (0..n)
            .map(|i| {
                let mut row: Vec<Cyclo> = (0..n).map(|j| self.get(i, j).clone()).collect();
                row.extend((0..n).map(|j| if i == j { Cyclo::one() } else { Cyclo::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            let inv = a[col][col].inv()?;
            for v in a[col].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..2 * n {
                        let d = &a[col][c] * &f;
                        a[r][c] = &a[r][c] - &d;
                    }
                }
            }
        }
        Some(Matrix {
            n,
            entries: a.into_iter().flat_map(|row| row.into_iter().skip(n)).collect(),
        })
    }
}

/// A matrix with one nonzero entry per row and column, each a 12th root of
/// unity: row `i` holds `z^phase[i]` in column `perm[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub perm: Vec<u8>,
    pub phase: Vec<u8>,
}

impl Monomial {
    pub fn identity(n: usize) -> Self {
        Monomial {
            perm: (0..n as u8).collect(),
            phase: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let perm = self.perm.iter().map(|&l| o.perm[l as usize]).collect();
        let phase = self
            .perm
            .iter()
            .zip(&self.phase)
            .map(|(&l, &a)| (a + o.phase[l as usize]) % ROOT_ORDER as u8)
            .collect();
        Monomial { perm, phase }
    }

    pub fn scaled(&self, e: u8) -> Monomial {
        Monomial {
            perm: self.perm.clone(),
            phase: self
                .phase
                .iter()
                .map(|&a| (a + e) % ROOT_ORDER as u8)
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Matrix {
        let n = self.n();
        let mut entries = vec![Cyclo::zero(); n * n];
        for (i, (&j, &e)) in self.perm.iter().zip(&self.phase).enumerate() {
            entries[i * n + j as usize] = Cyclo::zeta(e as i64);
        }
        Matrix { n, entries }
    }

    /// Recognizes monomial matrices whose entries are 12th roots of unity.
    pub fn from_matrix(m: &Matrix) -> Option<Monomial> {
        let n = m.n;
        let roots: Vec<Cyclo> = (0..ROOT_ORDER as i64).map(Cyclo::zeta).collect();
        let mut perm = Vec::with_capacity(n);
        let mut phase = Vec::with_capacity(n);
        for i in 0..n {
            let nonzero: Vec<usize> = (0..n).filter(|&j| !m.get(i, j).is_zero()).collect();
            let [j] = nonzero[..] else { return None };
            let e = roots.iter().position(|r| r == m.get(i, j))?;
            perm.push(j as u8);
            phase.push(e as u8);
        }
        let mut seen = perm.clone();
        seen.sort_unstable();
        seen.dedup();
        (seen.len() == n).then_some(Monomial { perm, phase })
    }

    pub fn trace(&self) -> Cyclo {
        let mut t = Cyclo::zero();
        for (i, (&j, &e)) in self.perm.iter().zip(&self.phase).enumerate() {
            if i == j as usize {
                t += &Cyclo::zeta(e as i64);
            }
        }
        t
    }
}

/// Finite group of monomial matrices, closed under products (inverses follow
/// from finiteness).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMatrixGroup {
    pub n: usize,
    pub label: String,
    elements: Vec<Monomial>,
}

impl FiniteMatrixGroup {
    /// Builds the group from an element list, verifying closure and identity.
    pub fn from_elements(n: usize, label: &str, elements: Vec<Monomial>) -> Result<Self, DeltaError> {
        if elements.iter().any(|g| g.n() != n) {
            return Err(DeltaError::Dimension(format!("{label}: elements must be {n}x{n}")));
        }
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        let set: FxHashSet<&Monomial> = elements.iter().collect();
        if !set.contains(&Monomial::identity(n)) {
            return Err(DeltaError::NotClosed(format!("{label}: identity missing")));
        }
        for a in &elements {
            for b in &elements {
                if !set.contains(&a.mul(b)) {
                    return Err(DeltaError::NotClosed(format!("{label}: product outside the set")));
                }
            }
        }
        Ok(FiniteMatrixGroup {
            n,
            label: label.into(),
            elements,
        })
    }

    /// Group generated by `generators`.
    pub fn generated(n: usize, label: &str, generators: &[Monomial]) -> Result<Self, DeltaError> {
        let mut seen: FxHashSet<Monomial> = FxHashSet::default();
        let mut frontier = vec![Monomial::identity(n)];
        seen.insert(Monomial::identity(n));
        while let Some(g) = frontier.pop() {
            for h in generators {
                let gh = g.mul(h);
                if seen.insert(gh.clone()) {
                    frontier.push(gh);
                }
            }
        }
        FiniteMatrixGroup::from_elements(n, label, seen.into_iter().collect())
    }

    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn matrices(&self) -> Vec<Matrix> {
        self.elements.iter().map(Monomial::to_matrix).collect()
    }
}

fn transposition(n: usize, a: usize, b: usize) -> Monomial {
    let mut g = Monomial::identity(n);
    g.perm.swap(a, b);
    g
}

/// Permutation matrices of size `n`.
pub fn symmetric_group(n: usize) -> Result<FiniteMatrixGroup, DeltaError> {
    let gens: Vec<Monomial> = (1..n).map(|i| transposition(n, i - 1, i)).collect();
    FiniteMatrixGroup::generated(n, &format!("S_{n}"), &gens)
}

/// Signed permutation matrices of size `n`.
pub fn hyperoctahedral_group(n: usize) -> Result<FiniteMatrixGroup, DeltaError> {
    let mut gens: Vec<Monomial> = (1..n).map(|i| transposition(n, i - 1, i)).collect();
    if n > 0 {
        let mut flip = Monomial::identity(n);
        flip.phase[0] = (ROOT_ORDER / 2) as u8;
        gens.push(flip);
    }
    FiniteMatrixGroup::generated(n, &format!("H_{n}"), &gens)
}

fn root_step(k: u32) -> Result<u8, DeltaError> {
    if k == 0 || ROOT_ORDER % k != 0 {
        return Err(DeltaError::OrderLimit(k));
    }
    Ok((ROOT_ORDER / k) as u8)
}

/// `{ζ^a I_n : a = 0..k-1}` for a primitive `k`-th root of unity `ζ`.
pub fn scalar_group(k: u32, n: usize) -> Result<FiniteMatrixGroup, DeltaError> {
    let step = root_step(k)?;
    let gens = [Monomial::identity(n).scaled(step)];
    FiniteMatrixGroup::generated(n, &format!("scalar_{k}"), &gens)
}

/// `{z h : z^k = 1, h in H}`.
pub fn glued_group(h: &FiniteMatrixGroup, k: u32) -> Result<FiniteMatrixGroup, DeltaError> {
    let step = root_step(k)?;
    let elements: Vec<Monomial> = (0..k as u8)
        .flat_map(|a| h.elements.iter().map(move |g| g.scaled(a * step)))
        .collect();
    FiniteMatrixGroup::from_elements(h.n, &format!("glued({},{k})", h.label), elements)
}

/// Group description: `S:n`, `H:n`, `scalar:k:n` or `glued:(INNER,k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Symmetric(usize),
    Hyperoctahedral(usize),
    Scalar { k: u32, n: usize },
    Glued(Box<GroupSpec>, u32),
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteMatrixGroup, DeltaError> {
        match self {
            GroupSpec::Symmetric(n) => symmetric_group(*n),
            GroupSpec::Hyperoctahedral(n) => hyperoctahedral_group(*n),
            GroupSpec::Scalar { k, n } => scalar_group(*k, *n),
            GroupSpec::Glued(inner, k) => glued_group(&inner.build()?, *k),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = DeltaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || DeltaError::Spec(s.to_string());
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| err());
        if let Some(rest) = s.strip_prefix("glued:") {
            let inner = rest
                .trim()
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(err)?;
            let (spec, k) = inner.rsplit_once(',').ok_or_else(err)?;
            return Ok(GroupSpec::Glued(Box::new(spec.parse()?), num(k)? as u32));
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts[..] {
            ["S", n] => Ok(GroupSpec::Symmetric(num(n)?)),
            ["H", n] => Ok(GroupSpec::Hyperoctahedral(num(n)?)),
            ["scalar", k, n] => Ok(GroupSpec::Scalar {
                k: num(k)? as u32,
                n: num(n)?,
            }),
            _ => Err(err()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Symmetric(n) => write!(f, "S:{n}"),
            GroupSpec::Hyperoctahedral(n) => write!(f, "H:{n}"),
            GroupSpec::Scalar { k, n } => write!(f, "scalar:{k}:{n}"),
            GroupSpec::Glued(inner, k) => write!(f, "glued:({inner},{k})"),
        }
    }
}

/// Acts on the tensor leg by leg: by `g` on white legs and by its entrywise
/// conjugate on black legs.
pub fn apply_group_element(g: &Matrix, t: &DeltaTensor) -> Result<Vec<Cyclo>, DeltaError> {
    if g.n != t.n {
        return Err(DeltaError::Dimension(format!(
            "matrix is {0}x{0}, tensor has dimension {1}",
            g.n, t.n
        )));
    }
    let n = t.n;
    let k = t.legs();
    let conj = g.conj();
    let mut cur: Vec<Cyclo> = t.entries.iter().map(|&e| Cyclo::from_int(e as i64)).collect();
    let stride: Vec<usize> = (0..k).map(|leg| n.pow((k - 1 - leg) as u32)).collect();
    for leg in 0..k {
        let m = if t.colors[leg] == Color::White { g } else { &conj };
        let mut next = vec![Cyclo::zero(); cur.len()];
        for (idx, slot) in next.iter_mut().enumerate() {
            let beta = (idx / stride[leg]) % n;
            let base = idx - beta * stride[leg];
            for gamma in 0..n {
                let a = m.get(beta, gamma);
                let v = &cur[base + gamma * stride[leg]];
                if !a.is_zero() && !v.is_zero() {
                    *slot += &(a * v);
                }
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// Whether the monomial action fixes the tensor.
fn monomial_fixes(g: &Monomial, t: &DeltaTensor) -> bool {
    let n = t.n;
    let k = t.legs();
    let mut legs = vec![0usize; k];
    let mut image = vec![0usize; k];
    let order = ROOT_ORDER as i64;
    for (idx, &v) in t.entries.iter().enumerate() {
        legs_of(idx, n, k, &mut legs);
        let mut e = 0i64;
        for t_ in 0..k {
            image[t_] = g.perm[legs[t_]] as usize;
            let ph = g.phase[legs[t_]] as i64;
            e += if t.colors[t_] == Color::White { ph } else { -ph };
        }
        let w = t.entries[index_of(&image, n)];
        // (g.T)[β] = z^e T[perm(β)]
        let fixed = if w == 0 { v == 0 } else { v == 1 && e.rem_euclid(order) == 0 };
        if !fixed {
            return false;
        }
    }
    true
}

pub fn membership_by_fixspace(p: &Partition, g: &FiniteMatrixGroup) -> Result<bool, DeltaError> {
    let t = t_vector(p, g.n)?;
    Ok(g.elements.iter().all(|h| monomial_fixes(h, &t)))
}

/// Same check through the general exact action, for arbitrary matrices.
pub fn fixed_by_matrices(p: &Partition, matrices: &[Matrix]) -> Result<bool, DeltaError> {
    let Some(first) = matrices.first() else { return Ok(true) };
    let t = t_vector(p, first.n)?;
    let original: Vec<Cyclo> = t.entries.iter().map(|&e| Cyclo::from_int(e as i64)).collect();
    for m in matrices {
        if apply_group_element(m, &t)? != original {
            return Ok(false);
        }
    }
    Ok(true)
}

fn white_black(colors: &[Color]) -> (u32, u32) {
    let white = colors.iter().filter(|&&c| c == Color::White).count() as u32;
    (white, colors.len() as u32 - white)
}

/// Dimension of the joint fixed space by averaging the character
/// `tr(g)^w conj(tr(g))^b` over the group.
pub fn fixspace_dim(g: &FiniteMatrixGroup, colors: &[Color]) -> Result<u64, DeltaError> {
    let (w, b) = white_black(colors);
    let mut by_trace: HashMap<Cyclo, u64> = HashMap::new();
    for h in &g.elements {
        *by_trace.entry(h.trace()).or_default() += 1;
    }
    let mut total = Cyclo::zero();
    for (tr, count) in by_trace {
        let term = &tr.pow(w) * &tr.conj().pow(b);
        total += &term.scale(&BigRational::from_integer(BigInt::from(count)));
    }
    let avg = total.scale(&BigRational::new(BigInt::from(1), BigInt::from(g.order())));
    let value = avg
        .as_rational()
        .filter(|r| r.is_integer())
        .ok_or_else(|| DeltaError::NotClosed(format!("non-integral average {avg}")))?;
    value
        .to_integer()
        .to_u64()
        .ok_or_else(|| DeltaError::NotClosed(format!("negative average {avg}")))
}

/// Dimension of the joint fixed space by solving the fixed-point equations:
/// for a monomial action the solutions are spanned by sums over basis orbits
/// whose stabilizers act trivially.
pub fn fixspace_dim_by_orbits(g: &FiniteMatrixGroup, colors: &[Color]) -> Result<u64, DeltaError> {
    let n = g.n;
    let k = colors.len();
    let size = entry_count(n, k)?;
    let mut orbit_of = vec![usize::MAX; size];
    let mut dim = 0u64;
    let mut legs = vec![0usize; k];
    let mut image = vec![0usize; k];
    for start in 0..size {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        // phase relative to the start vector along the orbit
        let mut phase_at: HashMap<usize, i64> = HashMap::new();
        phase_at.insert(start, 0);
        orbit_of[start] = start;
        let mut stack = vec![start];
        let mut consistent = true;
        while let Some(idx) = stack.pop() {
            legs_of(idx, n, k, &mut legs);
            let base = phase_at[&idx];
            for h in &g.elements {
                let mut e = 0i64;
                for t in 0..k {
                    image[t] = h.perm[legs[t]] as usize;
                    let ph = h.phase[legs[t]] as i64;
                    e += if colors[t] == Color::White { ph } else { -ph };
                }
                // a fixed vector v satisfies v[β] = z^e v[perm(β)]
                let target = index_of(&image, n);
                let want = (base - e).rem_euclid(ROOT_ORDER as i64);
                match phase_at.get(&target) {
                    Some(&have) => {
                        if have != want {
                            consistent = false;
                        }
                    }
                    None => {
                        phase_at.insert(target, want);
                        orbit_of[target] = start;
                        stack.push(target);
                    }
                }
            }
        }
        if consistent {
            dim += 1;
        }
    }
    Ok(dim)
}

/// Greedy rank of the δ-vectors of `partitions` over the integers, a lower
/// bound for the fixed-space dimension when all of them are fixed.
pub fn rank_of_tensors(tensors: &[DeltaTensor]) -> usize {
    let Some(first) = tensors.first() else { return 0 };
    let len = first.entries.len();
    let mut rows: Vec<Vec<BigRational>> = tensors
        .iter()
        .map(|t| t.entries.iter().map(|&e| BigRational::from_integer(BigInt::from(e))).collect())
        .collect();
    let mut rank = 0;
    for col in 0..len {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &p;
                for c in col..len {
                    let d = &rows[rank][c] * &f;
                    rows[r][c] -= d;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn p(w: &str) -> Partition {
        Partition::parse(w).unwrap()
    }

    #[test]
    fn delta_values() {
        let q = p("AaBBCcA");
        assert!(delta(&q, &[1, 1, 3, 3, 6, 6, 1], 6).unwrap());
        assert!(delta(&q, &[1, 1, 3, 3, 1, 1, 1], 6).unwrap());
        assert!(!delta(&q, &[1, 2, 3, 3, 6, 6, 1], 6).unwrap());
        assert!(delta(&q, &[1, 1], 6).is_err());
    }

    #[test]
    fn t_vectors() {
        assert_eq!(t_vector(&named::pair_ww(), 3).unwrap().ones(), 3);
        let unit = t_vector(&Partition::empty(), 5).unwrap();
        assert_eq!(unit.entries, vec![1]);
        let four = t_vector(&named::fourblock_wbwb(), 2).unwrap();
        assert_eq!((four.entries.len(), four.ones()), (16, 2));
        assert!(t_vector(&named::u(22).unwrap(), 2).is_err());
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(contraction_exponent(&named::pair_wb(), 1).unwrap(), 1);
        assert!(check_contraction(&named::pair_wb(), 1, 5).unwrap());
        assert_eq!(contraction_exponent(&p("AaBBCcA"), 2).unwrap(), 0);
        assert!(check_contraction(&p("AaBBCcA"), 2, 3).unwrap());
        assert!(check_contraction(&p("aAbB"), 2, 2).unwrap());
        assert!(check_tensor(&named::pair_wb(), &named::pair_wb(), 2).unwrap());
        assert!(check_tensor(&named::singleton_w(), &Partition::empty(), 4).unwrap());
    }

    #[test]
    fn group_actions() {
        let z3 = Cyclo::root_of_unity(3, 1).unwrap();
        let g = Matrix::diagonal(vec![z3.clone(), z3.clone()]);
        let t = t_vector(&named::u(2).unwrap(), 2).unwrap();
        let moved = apply_group_element(&g, &t).unwrap();
        let scale = z3.pow(2);
        for (m, &e) in moved.iter().zip(&t.entries) {
            assert_eq!(*m, scale.scale(&BigRational::from_integer(BigInt::from(e))));
        }
        assert_ne!(scale, Cyclo::one());
        let t = t_vector(&named::pair_wb(), 2).unwrap();
        let moved = apply_group_element(&g, &t).unwrap();
        assert!(moved.iter().zip(&t.entries).all(|(m, &e)| *m == Cyclo::from_int(e as i64)));
    }

    #[test]
    fn group_orders() {
        assert_eq!(symmetric_group(4).unwrap().order(), 24);
        assert_eq!(hyperoctahedral_group(3).unwrap().order(), 48);
        assert_eq!(scalar_group(3, 2).unwrap().order(), 3);
        let s3 = symmetric_group(3).unwrap();
        assert_eq!(glued_group(&s3, 2).unwrap().order(), 12);
        assert_eq!(glued_group(&symmetric_group(2).unwrap(), 1).unwrap(), {
            let mut g = symmetric_group(2).unwrap();
            g.label = "glued(S_2,1)".into();
            g
        });
        let h2 = hyperoctahedral_group(2).unwrap();
        assert_eq!(
            glued_group(&h2, 3).unwrap().elements(),
            glued_group(&h2, 6).unwrap().elements()
        );
        assert!(scalar_group(5, 2).is_err());
    }

    #[test]
    fn fixspace_examples() {
        let s4 = symmetric_group(4).unwrap();
        let h3 = hyperoctahedral_group(3).unwrap();
        assert_eq!(fixspace_dim(&s4, &[Color::White; 3]).unwrap(), 5);
        assert_eq!(fixspace_dim(&h3, &[Color::White; 4]).unwrap(), 4);
        assert_eq!(fixspace_dim_by_orbits(&s4, &[Color::White; 3]).unwrap(), 5);
        assert_eq!(fixspace_dim_by_orbits(&h3, &[Color::White; 4]).unwrap(), 4);
        let sc = scalar_group(3, 2).unwrap();
        assert_eq!(fixspace_dim(&sc, &[Color::White; 3]).unwrap(), 8);
        assert_eq!(fixspace_dim(&sc, &[Color::White; 2]).unwrap(), 0);
        assert!(!membership_by_fixspace(&named::singleton_w(), &hyperoctahedral_group(2).unwrap()).unwrap());
    }

    #[test]
    fn spec_parsing() {
        for s in ["S:4", "H:3", "scalar:3:2", "glued:(S:4,2)", "glued:(glued:(H:2,3),2)"] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("X:3".parse::<GroupSpec>().is_err());
        assert!("glued:(S:4)".parse::<GroupSpec>().is_err());
    }
}
