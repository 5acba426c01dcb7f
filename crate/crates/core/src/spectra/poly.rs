use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

/// Polynomial with exact integer coefficients, lowest degree first.
///
/// Trailing zero coefficients are trimmed, so the zero polynomial has an
/// empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntegerPolynomial {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntegerPolynomial {
        IntegerPolynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn derivative(&self) -> IntegerPolynomial {
        IntegerPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn eval_integer(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Sign of `p(a / 2^k)`, computed without fractions.
    pub(crate) fn sign_at_dyadic(&self, a: &BigInt, k: u32) -> i8 {
        let Some(d) = self.degree() else { return 0 };
        // 2^(k·d) p(a/2^k) = Σ cᵢ aⁱ 2^(k(d−i))
        let mut total = BigInt::zero();
        let mut apow = BigInt::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            total += (c * &apow) << (k as usize * (d - i));
            apow *= a;
        }
        sign(&total)
    }

    /// Divides out the integer content and makes the leading coefficient
    /// positive. Roots are unchanged.
    pub fn primitive(&self) -> IntegerPolynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        IntegerPolynomial::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn mul(&self, other: &IntegerPolynomial) -> IntegerPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntegerPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntegerPolynomial::new(out)
    }

    pub(crate) fn to_rational(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    /// Coefficients as `i64`, when every one fits.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }
}

pub(crate) fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for IntegerPolynomial {
    /// `x^3 - 2x^2 - 6x + 6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntegerPolynomial {
    /// JSON array, lowest degree first; numbers when they fit in `i64`,
    /// decimal strings otherwise.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

/// Polynomial over the rationals; internal helper for division and gcd.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct RatPoly(pub Vec<BigRational>);

impl RatPoly {
    pub fn new(mut c: Vec<BigRational>) -> RatPoly {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        RatPoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        let mut r = self.0.clone();
        let dl = d.0.last().expect("division by zero polynomial");
        let dd = d.0.len() - 1;
        while r.len() > dd && !r.is_empty() {
            let q = r.last().unwrap() / dl;
            let shift = r.len() - 1 - dd;
            for (i, c) in d.0.iter().enumerate() {
                r[shift + i] -= &q * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        RatPoly(r)
    }

    pub fn div_exact(&self, d: &RatPoly) -> RatPoly {
        let mut r = self.0.clone();
        let dl = d.0.last().expect("division by zero polynomial");
        let dd = d.0.len() - 1;
        if r.len() <= dd {
            return RatPoly(Vec::new());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        while r.len() > dd {
            let c = r.last().unwrap() / dl;
            let shift = r.len() - 1 - dd;
            for (i, dc) in d.0.iter().enumerate() {
                r[shift + i] -= &c * dc;
            }
            q[shift] = c;
            r.pop();
        }
        RatPoly::new(q)
    }

    /// Clears denominators into a primitive integer polynomial with positive
    /// leading coefficient.
    pub fn to_integer(&self) -> IntegerPolynomial {
        self.scaled_integer().primitive()
    }

    /// Integer multiple by a positive constant, content removed; the sign of
    /// every value is preserved.
    pub fn scaled_integer(&self) -> IntegerPolynomial {
        let l = self.0.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return IntegerPolynomial::zero();
        }
        IntegerPolynomial::new(ints.into_iter().map(|c| c / &g).collect())
    }
}

/// `det(xI − M)` for an exact integer matrix, by Faddeev–LeVerrier.
///
/// Every division in the recurrence is exact over the integers; this is
/// asserted.
pub fn char_poly(m: &[Vec<BigInt>]) -> IntegerPolynomial {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "char_poly needs a square matrix");
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // mk = M_k, starting from M_1 = I
    let mut mk: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    for k in 1..=n {
        let am = mat_mul(m, &mk);
        let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let (q, r) = (-trace).div_rem(&BigInt::from(k));
        assert!(r.is_zero(), "Faddeev–LeVerrier division must be exact");
        coeffs[n - k] = q.clone();
        mk = am;
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] += &q;
        }
    }
    IntegerPolynomial::new(coeffs)
}

/// `char_poly` for an `i64` matrix.
pub fn char_poly_i64(m: &[Vec<i64>]) -> IntegerPolynomial {
    let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    char_poly(&big)
}

/// Characteristic polynomial of a rational matrix, scaled to a primitive
/// integer polynomial with the same roots. Integer matrices give the monic
/// polynomial exactly.
pub fn char_poly_rational(m: &[Vec<BigRational>]) -> IntegerPolynomial {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "char_poly needs a square matrix");
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for k in 1..=n {
        let am = mat_mul(m, &mk);
        let trace: BigRational = (0..n).map(|i| am[i][i].clone()).fold(BigRational::zero(), |a, b| a + b);
        let q = -trace / BigRational::from_integer(BigInt::from(k));
        coeffs[n - k] = q.clone();
        mk = am;
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] += &q;
        }
    }
    RatPoly::new(coeffs).to_integer()
}

fn mat_mul<T>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>>
where
    T: Clone + Zero + for<'x> std::ops::AddAssign<&'x T>,
    for<'x> &'x T: std::ops::Mul<&'x T, Output = T>,
{
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = T::zero();
                    for (k, aik) in a[i].iter().enumerate() {
                        if !aik.is_zero() {
                            s += &(aik * &b[k][j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}
