//! Real roots of integer polynomials by Sturm sequences and exact bisection
//! over dyadic rationals.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{sign, IntegerPolynomial};
use crate::error::{Error, Result};

/// Greatest common divisor over ℚ, returned primitive with positive leading
/// coefficient. `gcd(0, 0) = 0`.
pub fn gcd(p: &IntegerPolynomial, q: &IntegerPolynomial) -> IntegerPolynomial {
    let mut a = p.to_rational();
    let mut b = q.to_rational();
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    a.to_integer()
}

/// `p / gcd(p, p')`: the same roots, each simple.
pub fn squarefree(p: &IntegerPolynomial) -> IntegerPolynomial {
    if p.degree().unwrap_or(0) == 0 {
        return p.primitive();
    }
    let g = gcd(p, &p.derivative());
    p.to_rational().div_exact(&g.to_rational()).to_integer()
}

/// `a / 2^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    fn int(n: BigInt) -> Dyadic {
        Dyadic { num: n, exp: 0 }
    }

    fn from_f64(x: f64) -> Dyadic {
        let r = BigRational::from_float(x).expect("finite hint");
        let den = r.denom();
        let exp = den.bits().saturating_sub(1) as u32;
        debug_assert_eq!(den, &(BigInt::one() << exp));
        Dyadic { num: r.numer().clone(), exp }
    }

    fn rescale(&self, exp: u32) -> BigInt {
        &self.num << (exp - self.exp)
    }

    fn to_f64(&self) -> f64 {
        let bits = self.num.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (&self.num >> shift as usize).to_f64().unwrap_or(f64::NAN);
        top * 2f64.powi(shift as i32 - self.exp as i32)
    }

    fn cmp(&self, other: &Dyadic) -> Ordering {
        let e = self.exp.max(other.exp);
        self.rescale(e).cmp(&other.rescale(e))
    }

    fn mid(a: &Dyadic, b: &Dyadic) -> Dyadic {
        let e = a.exp.max(b.exp);
        Dyadic { num: a.rescale(e) + b.rescale(e), exp: e + 1 }
    }
}

/// Sturm sequence of a squarefree polynomial.
#[derive(Debug, Clone)]
struct Sturm {
    chain: Vec<IntegerPolynomial>,
}

impl Sturm {
    fn new(p: &IntegerPolynomial) -> Sturm {
        let mut chain = vec![p.clone(), p.derivative().to_rational().scaled_integer()];
        if chain[1].is_zero() {
            chain.pop();
            return Sturm { chain };
        }
        loop {
            let n = chain.len();
            let r = chain[n - 2].to_rational().rem(&chain[n - 1].to_rational());
            if r.is_zero() {
                break;
            }
            // −r scaled by a positive constant; signs are what matter
            let neg = r.scaled_integer();
            let neg = IntegerPolynomial::new(neg.coeffs().iter().map(|c| -c).collect());
            chain.push(neg);
        }
        Sturm { chain }
    }

    fn variations(&self, signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    fn at(&self, x: &Dyadic) -> usize {
        self.variations(self.chain.iter().map(|p| p.sign_at_dyadic(&x.num, x.exp)))
    }

    fn at_infinity(&self, positive: bool) -> usize {
        self.variations(self.chain.iter().map(|p| {
            let lead = sign(p.leading().expect("chain has no zero polynomial"));
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if positive || !odd {
                lead
            } else {
                -lead
            }
        }))
    }

    /// Distinct roots in `(a, b]`.
    fn count(&self, a: &Dyadic, b: &Dyadic) -> usize {
        self.at(a) - self.at(b)
    }

    fn total(&self) -> usize {
        self.at_infinity(false) - self.at_infinity(true)
    }
}

/// `1 + max |aᵢ / a_lead|`, rounded up to an integer.
fn cauchy_bound(p: &IntegerPolynomial) -> BigInt {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let n = p.degree().unwrap_or(0);
    let max = p.coeffs()[..n]
        .iter()
        .map(|c| {
            let (q, r) = (c.abs() / &lead, c.abs() % &lead);
            if r.is_zero() {
                q
            } else {
                q + 1
            }
        })
        .max()
        .unwrap_or_else(BigInt::zero);
    max + 1
}

/// An interval `(lo, hi]` holding exactly one root of `poly`, which is
/// squarefree.
#[derive(Debug, Clone)]
struct Isolated {
    poly: IntegerPolynomial,
    lo: Dyadic,
    hi: Dyadic,
}

impl Isolated {
    /// Isolates the largest real root; `hint` narrows the first bracket.
    fn largest(p: &IntegerPolynomial, hint: Option<f64>) -> Result<Isolated> {
        if p.degree().unwrap_or(0) == 0 {
            return Err(Error::Root(format!("constant polynomial {p}")));
        }
        let poly = squarefree(p);
        let sturm = Sturm::new(&poly);
        if sturm.total() == 0 {
            return Err(Error::Root(format!("{p} has no real root")));
        }
        let bound = cauchy_bound(&poly);
        let mut hi = Dyadic::int(bound.clone());
        let mut lo = Dyadic::int(-bound);
        if let Some(h) = hint.filter(|h| h.is_finite()) {
            let h = Dyadic::from_f64(h);
            if h.cmp(&lo) == Ordering::Greater && h.cmp(&hi) == Ordering::Less {
                if sturm.count(&h, &hi) > 0 {
                    lo = h;
                } else {
                    hi = h;
                }
            }
        }
        loop {
            let c = sturm.count(&lo, &hi);
            if c == 1 {
                break;
            }
            let mid = Dyadic::mid(&lo, &hi);
            if sturm.count(&mid, &hi) > 0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(Isolated { poly, lo, hi })
    }

    /// Halves the interval, keeping the root inside.
    fn bisect(&mut self) {
        let mid = Dyadic::mid(&self.lo, &self.hi);
        let s_mid = self.poly.sign_at_dyadic(&mid.num, mid.exp);
        if s_mid == 0 {
            self.hi = mid.clone();
            // keep a nondegenerate interval that still holds the root
            self.lo = Dyadic::mid(&self.lo, &mid);
            return;
        }
        let s_hi = self.poly.sign_at_dyadic(&self.hi.num, self.hi.exp);
        if s_hi == 0 || s_hi == s_mid {
            // root in (lo, mid] unless hi itself is the root
            if s_hi == 0 {
                self.lo = mid;
            } else {
                self.hi = mid;
            }
        } else {
            self.lo = mid;
        }
    }

    fn width(&self) -> f64 {
        let e = self.lo.exp.max(self.hi.exp);
        Dyadic { num: self.hi.rescale(e) - self.lo.rescale(e), exp: e }.to_f64()
    }

    fn refine_to(&mut self, tol: f64) -> f64 {
        if self.poly.degree() == Some(1) {
            let c = self.poly.coeffs();
            return (-BigRational::new(c[0].clone(), c[1].clone())).to_f64().unwrap_or(f64::NAN);
        }
        while self.width() > tol * self.hi.to_f64().abs().max(1.0) {
            self.bisect();
        }
        Dyadic::mid(&self.lo, &self.hi).to_f64()
    }

    /// Does `q` vanish at the isolated root?
    fn is_root_of(&self, q: &IntegerPolynomial) -> bool {
        if q.degree().unwrap_or(0) == 0 {
            return q.is_zero();
        }
        let g = gcd(&self.poly, q);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        // roots of g are roots of self.poly, so at most the isolated one
        Sturm::new(&g).count(&self.lo, &self.hi) > 0
    }
}

/// Largest real root to within `1e-12` relative (and so well inside `1e-10`
/// for roots of moderate size).
pub fn largest_real_root(p: &IntegerPolynomial, hint: Option<f64>) -> Result<f64> {
    Ok(Isolated::largest(p, hint)?.refine_to(1e-13))
}

/// All distinct real roots, ascending.
pub fn real_roots(p: &IntegerPolynomial) -> Result<Vec<f64>> {
    if p.is_zero() {
        return Err(Error::Root("zero polynomial".into()));
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let poly = squarefree(p);
    let sturm = Sturm::new(&poly);
    let bound = cauchy_bound(&poly);
    let mut out = Vec::new();
    let mut stack = vec![(Dyadic::int(-bound.clone()), Dyadic::int(bound))];
    while let Some((lo, hi)) = stack.pop() {
        match sturm.count(&lo, &hi) {
            0 => {}
            1 => {
                let mut iso = Isolated { poly: poly.clone(), lo, hi };
                out.push(iso.refine_to(1e-13));
            }
            _ => {
                let mid = Dyadic::mid(&lo, &hi);
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Exact comparison of the largest real roots of two polynomials.
pub fn compare_largest_roots(p: &IntegerPolynomial, q: &IntegerPolynomial) -> Result<Ordering> {
    let mut a = Isolated::largest(p, None)?;
    let mut b = Isolated::largest(q, None)?;
    if a.is_root_of(&b.poly) && b.is_root_of(&a.poly) {
        return Ok(Ordering::Equal);
    }
    loop {
        if a.hi.cmp(&b.lo) != Ordering::Greater {
            return Ok(Ordering::Less);
        }
        if b.hi.cmp(&a.lo) != Ordering::Greater {
            return Ok(Ordering::Greater);
        }
        if a.width() >= b.width() {
            a.bisect();
        } else {
            b.bisect();
        }
    }
}

/// Exact sign of `λ − r`, where `λ` is the largest real root of `p` and `r` a
/// rational.
pub fn compare_largest_root_to(p: &IntegerPolynomial, r: &BigRational) -> Result<Ordering> {
    let q = IntegerPolynomial::new(vec![-r.numer().clone(), r.denom().clone()]);
    compare_largest_roots(p, &q)
}

/// Sign of `p` at an exact rational point.
pub fn sign_at(p: &IntegerPolynomial, x: &BigRational) -> i8 {
    let v = p.eval_rational(x);
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}
