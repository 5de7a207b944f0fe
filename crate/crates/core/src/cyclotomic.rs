//! Exact arithmetic in the cyclotomic field of 12th roots of unity.
//!
//! Elements are `a0 + a1 z + a2 z^2 + a3 z^3` with rational coefficients and
//! `z = exp(2 pi i / 12)`, reduced by `z^4 = z^2 - 1`. The field contains
//! `i = z^3`, the cube roots of unity and `sqrt(3)`, so Gaussian rationals and
//! every root of unity of order dividing 12 are exact.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Order of the roots of unity the field contains.
pub const ROOT_ORDER: u32 = 12;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyclo([BigRational; 4]);

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo([
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ])
    }

    pub fn one() -> Self {
        Cyclo::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut c = Cyclo::zero();
        c.0[0] = r;
        c
    }

    pub fn from_int(v: i64) -> Self {
        Cyclo::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Cyclo::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Cyclo::zeta(3)
    }

    /// `a + b i` for rationals `a`, `b`.
    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        let mut c = Cyclo::from_rational(re);
        c.0[3] = im;
        c
    }

    /// `z^e`, a root of unity of order dividing 12.
    pub fn zeta(e: i64) -> Self {
        let e = e.rem_euclid(ROOT_ORDER as i64) as usize;
        // z^6 = -1
        let (e, sign) = if e >= 6 { (e - 6, -1) } else { (e, 1) };
        let mut c = Cyclo::zero();
        match e {
            0..=3 => c.0[e] = BigRational::from_integer(BigInt::from(sign)),
            // z^4 = z^2 - 1
            4 => {
                c.0[2] = BigRational::from_integer(BigInt::from(sign));
                c.0[0] = BigRational::from_integer(BigInt::from(-sign));
            }
            // z^5 = z^3 - z
            _ => {
                c.0[3] = BigRational::from_integer(BigInt::from(sign));
                c.0[1] = BigRational::from_integer(BigInt::from(-sign));
            }
        }
        c
    }

    /// Primitive `order`-th root of unity raised to `e`; `order` must divide 12.
    pub fn root_of_unity(order: u32, e: i64) -> Option<Self> {
        if order == 0 || ROOT_ORDER % order != 0 {
            return None;
        }
        Some(Cyclo::zeta(e * (ROOT_ORDER / order) as i64))
    }

    pub fn coefficients(&self) -> &[BigRational; 4] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.0[0].is_one() && self.0[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element is rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.0[1..].iter().all(Zero::is_zero).then_some(&self.0[0])
    }

    /// Complex conjugate, the automorphism `z -> z^11`.
    pub fn conj(&self) -> Self {
        let [a0, a1, a2, a3] = &self.0;
        Cyclo([a0 + a2, a1.clone(), -a2, -(a1 + a3)])
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cyclo([&self.0[0] * r, &self.0[1] * r, &self.0[2] * r, &self.0[3] * r])
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // columns of the multiplication-by-self matrix are self * z^j
        let cols: Vec<Cyclo> = (0..4).map(|j| self * &Cyclo::zeta(j)).collect();
        let mut m: Vec<Vec<BigRational>> = (0..4)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..4).map(|c| cols[c].0[r].clone()).collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..4 {
            let pivot = (col..4).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, pivot);
            let p = m[col][col].clone();
            for v in m[col].iter_mut() {
                *v = &*v / &p;
            }
            for r in 0..4 {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..5 {
                        let d = &m[col][c] * &f;
                        m[r][c] -= d;
                    }
                }
            }
        }
        Some(Cyclo([
            m[0][4].clone(),
            m[1][4].clone(),
            m[2][4].clone(),
            m[3][4].clone(),
        ]))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclo::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Floating-point value, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, a) in self.0.iter().enumerate() {
            let a = a.to_f64().unwrap_or(f64::NAN);
            let angle = std::f64::consts::PI * j as f64 / 6.0;
            re += a * angle.cos();
            im += a * angle.sin();
        }
        (re, im)
    }
}

impl Default for Cyclo {
    fn default() -> Self {
        Cyclo::zero()
    }
}

impl Add<&Cyclo> for &Cyclo {
    type Output = Cyclo;
    fn add(self, o: &Cyclo) -> Cyclo {
        Cyclo([
            &self.0[0] + &o.0[0],
            &self.0[1] + &o.0[1],
            &self.0[2] + &o.0[2],
            &self.0[3] + &o.0[3],
        ])
    }
}

impl Add for Cyclo {
    type Output = Cyclo;
    fn add(self, o: Cyclo) -> Cyclo {
        &self + &o
    }
}

impl AddAssign<&Cyclo> for Cyclo {
    fn add_assign(&mut self, o: &Cyclo) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a += b;
        }
    }
}

impl Sub<&Cyclo> for &Cyclo {
    type Output = Cyclo;
    fn sub(self, o: &Cyclo) -> Cyclo {
        Cyclo([
            &self.0[0] - &o.0[0],
            &self.0[1] - &o.0[1],
            &self.0[2] - &o.0[2],
            &self.0[3] - &o.0[3],
        ])
    }
}

impl Sub for Cyclo {
    type Output = Cyclo;
    fn sub(self, o: Cyclo) -> Cyclo {
        &self - &o
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo([-&self.0[0], -&self.0[1], -&self.0[2], -&self.0[3]])
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl Mul<&Cyclo> for &Cyclo {
    type Output = Cyclo;
    fn mul(self, o: &Cyclo) -> Cyclo {
        let mut c: [BigRational; 7] = Default::default();
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        // z^6 = -1, z^5 = z^3 - z, z^4 = z^2 - 1
        let [c0, c1, c2, c3, c4, c5, c6] = c;
        Cyclo([c0 - &c4 - c6, c1 - &c5, c2 + c4, c3 + c5])
    }
}

impl Mul for Cyclo {
    type Output = Cyclo;
    fn mul(self, o: Cyclo) -> Cyclo {
        &self * &o
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let sign = if a.is_negative() { "-" } else { "+" };
            if first {
                if a.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = a.abs();
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{j}")?,
                (_, false) => write!(f, "{mag}*z^{j}")?,
            }
        }
        Ok(())
    }
}
