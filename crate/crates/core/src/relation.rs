//! Text form of the relation attached to a partition, the simplified forms of
//! the standard templates, and their evaluation at commutative points.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::cyclotomic::Cyclo;
use crate::delta::{fixed_by_matrices, DeltaError, Matrix};
use crate::named;
use crate::partition::{Color, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Template {
    /// White singleton next to a black one.
    Singletons,
    Positioner,
    GlobalPair,
    /// `u_{2l}`.
    Pairs(usize),
    /// `s_k`.
    SingletonsWhite(usize),
}

impl Template {
    pub fn partition(&self) -> Partition {
        match *self {
            Template::Singletons => named::singletons_wb(),
            Template::Positioner => named::positioner_wwbb(),
            Template::GlobalPair => named::global_pair(),
            Template::Pairs(l) => named::u(2 * l as i64).expect("even"),
            Template::SingletonsWhite(k) => named::s(k as i64),
        }
    }

    pub fn simplified(&self) -> String {
        match *self {
            Template::Singletons => "sum_k u[k,j] = sum_l u[i,l]".into(),
            Template::Positioner => "u[i,j]*(sum_k1 u[k1,j1]) = (sum_l1 u[i1,l1])*u[i,j]".into(),
            Template::GlobalPair => "u*[i,j]*u[k,l] = u[i,j]*u*[k,l]".into(),
            Template::Pairs(l) => {
                let lhs: Vec<String> = (1..=l).map(|t| format!("u[i{t},j{t}]")).collect();
                let rhs: Vec<String> = (1..=l).map(|t| format!("u*[i{t},j{t}]")).collect();
                format!("{} = {}", lhs.join("*"), rhs.join("*"))
            }
            Template::SingletonsWhite(k) => {
                let factors: Vec<String> = (1..=k).map(|t| format!("(sum_j{t} u[i{t},j{t}])")).collect();
                format!("1 = {}", factors.join("*"))
            }
        }
    }

    /// The template `p` is, exactly or after rotating.
    pub fn matching(p: &Partition) -> Option<(Template, bool)> {
        let k = p.len();
        let mut candidates = vec![Template::Singletons, Template::Positioner, Template::GlobalPair];
        if k >= 2 && k % 2 == 0 {
            candidates.push(Template::Pairs(k / 2));
        }
        if k >= 1 {
            candidates.push(Template::SingletonsWhite(k));
        }
        for t in candidates {
            let shape = t.partition();
            if shape.len() != k {
                continue;
            }
            if shape == *p {
                return Some((t, false));
            }
            if (1..k).any(|r| shape.rotate_by(r) == *p) {
                return Some((t, true));
            }
        }
        None
    }

    /// The simplified relation at a commutative point `u = g`, evaluated
    /// literally over all index values.
    pub fn holds_literally(&self, g: &Matrix) -> bool {
        let n = g.n;
        let row_sum = |i: usize| (0..n).fold(Cyclo::zero(), |acc, l| &acc + g.get(i, l));
        let col_sum = |j: usize| (0..n).fold(Cyclo::zero(), |acc, l| &acc + g.get(l, j));
        match *self {
            Template::Singletons => {
                (0..n).all(|i| (0..n).all(|j| col_sum(j) == row_sum(i)))
            }
            Template::Positioner => {
                let rows: Vec<Cyclo> = (0..n).map(row_sum).collect();
                let cols: Vec<Cyclo> = (0..n).map(col_sum).collect();
                (0..n).all(|i| {
                    (0..n).all(|j| {
                        let u = g.get(i, j);
                        rows.iter()
                            .all(|r| cols.iter().all(|c| &(u * c) == &(r * u)))
                    })
                })
            }
            Template::GlobalPair => g.entries.iter().all(|a| {
                g.entries
                    .iter()
                    .all(|b| &a.conj() * b == a * &b.conj())
            }),
            Template::Pairs(l) => {
                let mut products = vec![Cyclo::one()];
                for _ in 0..l {
                    products = products
                        .iter()
                        .flat_map(|p| g.entries.iter().map(move |e| p * e))
                        .collect();
                }
                products.iter().all(|p| *p == p.conj())
            }
            Template::SingletonsWhite(k) => {
                let rows: Vec<Cyclo> = (0..n).map(row_sum).collect();
                let mut products = vec![Cyclo::one()];
                for _ in 0..k {
                    products = products
                        .iter()
                        .flat_map(|p| rows.iter().map(move |r| p * r))
                        .collect();
                }
                products.iter().all(Cyclo::is_one)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationText {
    pub partition: Partition,
    pub n: usize,
    pub raw_form: String,
    pub simplified_form: Option<String>,
    pub free_indices: Vec<String>,
    /// Set when the template matched only after rotation.
    pub note: Option<String>,
}

impl RelationText {
    /// `.rel` file contents.
    pub fn to_rel(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n={}  p={}", self.n, self.partition);
        let _ = writeln!(out, "forall {}:", self.free_indices.join(","));
        let _ = writeln!(out, "{}", self.raw_form);
        if let Some(s) = &self.simplified_form {
            let _ = writeln!(out, "simplified: {s}");
        }
        if let Some(note) = &self.note {
            let _ = writeln!(out, "note: {note}");
        }
        out
    }
}

fn factor(color: Color, i: usize, j: usize) -> String {
    match color {
        Color::White => format!("u[i{i},j{j}]"),
        Color::Black => format!("u*[i{i},j{j}]"),
    }
}

pub fn emit(p: &Partition, n: usize) -> RelationText {
    let k = p.len();
    let blocks = p.blocks();
    // left side: δ_p(i1..ik) as a product of Kronecker deltas along each block
    let mut deltas = Vec::new();
    for b in 0..p.block_count() as u32 {
        let points: Vec<usize> = (0..k).filter(|&t| blocks[t] == b).collect();
        for w in points.windows(2) {
            deltas.push(format!("delta(i{},i{})", w[0] + 1, w[1] + 1));
        }
    }
    let lhs = if deltas.is_empty() {
        "1".to_string()
    } else {
        deltas.join("*")
    };
    let sums: String = (1..=p.block_count())
        .map(|j| format!("sum_{{j{j}=1..{n}}} "))
        .collect();
    let product = if k == 0 {
        "1".to_string()
    } else {
        (0..k)
            .map(|t| factor(p.colors()[t], t + 1, blocks[t] as usize + 1))
            .collect::<Vec<_>>()
            .join("*")
    };
    let raw_form = format!("{lhs} = {sums}{product}");
    let (simplified_form, note) = match Template::matching(p) {
        Some((t, rotated)) => (
            Some(t.simplified()),
            rotated.then(|| format!("simplified form of the template {} up to rotation", t.partition())),
        ),
        None => (None, None),
    };
    RelationText {
        partition: p.clone(),
        n,
        raw_form,
        simplified_form,
        free_indices: (1..=k).map(|t| format!("i{t}")).collect(),
        note,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RelationError {
    #[error("matrix is singular")]
    Singular,
    #[error(transparent)]
    Delta(#[from] DeltaError),
}

/// The relation of `p` at the commutative point `u = g`, via the δ-tensor
/// fixed-vector test.
pub fn evaluate_commutative(p: &Partition, g: &Matrix) -> Result<bool, RelationError> {
    if g.inverse().is_none() {
        return Err(RelationError::Singular);
    }
    Ok(fixed_by_matrices(p, std::slice::from_ref(g))?)
}

/// The raw relation evaluated term by term: for every `β`, the sum over one
/// index per block of the product of entries.
pub fn evaluate_raw(p: &Partition, g: &Matrix) -> bool {
    let n = g.n;
    let k = p.len();
    let conj = g.conj();
    let blocks = p.blocks();
    let mut beta = vec![0usize; k];
    loop {
        let mut rhs = Cyclo::one();
        for b in 0..p.block_count() as u32 {
            let mut s = Cyclo::zero();
            for j in 0..n {
                let mut term = Cyclo::one();
                for t in (0..k).filter(|&t| blocks[t] == b) {
                    let m = if p.colors()[t] == Color::White { g } else { &conj };
                    term = &term * m.get(beta[t], j);
                }
                s += &term;
            }
            rhs = &rhs * &s;
        }
        let lhs = (0..k).all(|t| (0..k).all(|u| blocks[t] != blocks[u] || beta[t] == beta[u]));
        let lhs = if lhs { Cyclo::one() } else { Cyclo::zero() };
        if lhs != rhs {
            return false;
        }
        let mut t = k;
        loop {
            if t == 0 {
                return true;
            }
            t -= 1;
            beta[t] += 1;
            if beta[t] < n {
                break;
            }
            beta[t] = 0;
        }
    }
}

fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-3..=3)), BigInt::from(rng.gen_range(1..=3)))
}

/// `(I - A)(I + A)^{-1}` for skew-Hermitian `A` (skew-symmetric when `real`).
fn cayley<R: Rng>(n: usize, real: bool, rng: &mut R) -> Matrix {
    loop {
        let mut a = Matrix {
            n,
            entries: vec![Cyclo::zero(); n * n],
        };
        for i in 0..n {
            for j in i..n {
                let re = small_rational(rng);
                let im = if real { BigRational::from_integer(0.into()) } else { small_rational(rng) };
                let z = if i == j {
                    Cyclo::gaussian(BigRational::from_integer(0.into()), im)
                } else {
                    Cyclo::gaussian(re, im)
                };
                a.entries[j * n + i] = -z.conj();
                a.entries[i * n + j] = z;
            }
        }
        let id = Matrix::identity(n);
        if let Some(inv) = id.add(&a).inverse() {
            return id.sub(&a).mul(&inv);
        }
    }
}

/// Unitary test matrices mixing generic and structured cases, so that every
/// template relation is seen both holding and failing.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> Matrix {
    let phase = Cyclo::zeta(rng.gen_range(0..12));
    let scale = |m: Matrix, z: &Cyclo| Matrix {
        n: m.n,
        entries: m.entries.iter().map(|e| e * z).collect(),
    };
    match rng.gen_range(0..5) {
        0 => cayley(n, false, rng),
        1 => scale(cayley(n, true, rng), &phase),
        2 => {
            let mut perm: Vec<usize> = (0..n).collect();
            rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), rng);
            let mut m = Matrix {
                n,
                entries: vec![Cyclo::zero(); n * n],
            };
            for (i, &j) in perm.iter().enumerate() {
                m.entries[i * n + j] = Cyclo::zeta(rng.gen_range(0..12));
            }
            m
        }
        3 => {
            let mut perm: Vec<usize> = (0..n).collect();
            rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), rng);
            let mut m = Matrix {
                n,
                entries: vec![Cyclo::zero(); n * n],
            };
            for (i, &j) in perm.iter().enumerate() {
                m.entries[i * n + j] = phase.clone();
            }
            m
        }
        _ => {
            // a real orthogonal matrix with all row sums 1, times a phase
            let r = cayley(n, true, rng);
            let ones: Vec<Cyclo> = (0..n)
                .map(|i| (0..n).fold(Cyclo::zero(), |acc, l| &acc + r.get(i, l)))
                .collect();
            if ones.iter().all(|s| *s == ones[0]) {
                scale(r, &phase)
            } else {
                scale(Matrix::identity(n), &phase)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn p(w: &str) -> Partition {
        Partition::parse(w).unwrap()
    }

    #[test]
    fn simplified_fixtures() {
        assert_eq!(
            emit(&p("aaBB"), 3).simplified_form.unwrap(),
            "u*[i,j]*u[k,l] = u[i,j]*u*[k,l]"
        );
        assert_eq!(
            emit(&named::singletons_wb(), 3).simplified_form.unwrap(),
            "sum_k u[k,j] = sum_l u[i,l]"
        );
        assert_eq!(
            emit(&named::u(4).unwrap(), 2).simplified_form.unwrap(),
            "u[i1,j1]*u[i2,j2] = u*[i1,j1]*u*[i2,j2]"
        );
        assert_eq!(
            emit(&named::s(2), 2).simplified_form.unwrap(),
            "1 = (sum_j1 u[i1,j1])*(sum_j2 u[i2,j2])"
        );
        assert!(emit(&p("abAB"), 2).simplified_form.is_none());
    }

    #[test]
    fn raw_form_and_rotation() {
        let rel = emit(&p("aaBB"), 3);
        assert_eq!(
            rel.raw_form,
            "delta(i1,i2)*delta(i3,i4) = sum_{j1=1..3} sum_{j2=1..3} u[i1,j1]*u[i2,j1]*u*[i3,j2]*u*[i4,j2]"
        );
        assert!(rel.note.is_none());
        let rotated = emit(&p("aBBa"), 3);
        assert_eq!(rotated.simplified_form, rel.simplified_form);
        assert!(rotated.note.is_some());
        let text = rel.to_rel();
        assert!(text.starts_with("n=3  p=aaBB\nforall i1,i2,i3,i4:\n"));
        assert_eq!(emit(&Partition::empty(), 2).raw_form, "1 = 1");
    }

    #[test]
    fn commutative_examples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let o = cayley(3, true, &mut rng);
        assert!(o.is_unitary());
        let zeta = Cyclo::zeta(1);
        let g = Matrix {
            n: 3,
            entries: o.entries.iter().map(|e| e * &zeta).collect(),
        };
        assert!(evaluate_commutative(&p("aaBB"), &g).unwrap());
        assert!(!evaluate_commutative(&named::u(2).unwrap(), &g).unwrap());
        assert!(evaluate_commutative(&p("abAcB"), &Matrix::identity(3)).unwrap());
        let singular = Matrix {
            n: 2,
            entries: vec![Cyclo::zero(); 4],
        };
        assert_eq!(evaluate_commutative(&p("aA"), &singular), Err(RelationError::Singular));
    }

    #[test]
    fn raw_and_simplified_agree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for t in [
            Template::Singletons,
            Template::Positioner,
            Template::GlobalPair,
            Template::Pairs(2),
            Template::SingletonsWhite(2),
        ] {
            let q = t.partition();
            let mut seen = [false; 2];
            for trial in 0..30 {
                let g = random_unitary(2 + trial % 2, &mut rng);
                assert!(g.is_unitary());
                let raw = evaluate_raw(&q, &g);
                assert_eq!(raw, evaluate_commutative(&q, &g).unwrap());
                assert_eq!(raw, t.holds_literally(&g), "{q} {g:?}");
                seen[raw as usize] = true;
            }
            assert!(seen[0] && seen[1], "{q}");
        }
    }
}
