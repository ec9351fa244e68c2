//! Exact rational polynomials and the classical families built on them.
//!
//! Hermite polynomials use the physicists' convention (weight `exp(-x^2)`,
//! `H_{n+1} = 2x H_n - 2n H_{n-1}`, leading coefficient `2^n`). Swapping in the
//! probabilists' convention breaks every downstream residual.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dd::{two_prod, two_sum};

pub type BigRat = BigRational;

/// `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(r: &BigRat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Dense polynomial with exact rational coefficients, lowest power first.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRat>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRat {
        self.coeffs.last().cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `p(a*x + b)`.
    pub fn compose_linear(&self, a: &BigRat, b: &BigRat) -> Self {
        let lin = Self::new(vec![b.clone(), a.clone()]);
        let mut out = Self::zero();
        for c in self.coeffs.iter().rev() {
            out = &(&out * &lin) + &Self::constant(c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Horner evaluation in exact arithmetic.
    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Compensated Horner evaluation in floating point.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.to_f64().eval(x)
    }

    pub fn to_f64(&self) -> F64Poly {
        F64Poly::from_exact(&self.coeffs)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRat::zero();
        Polynomial::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Floating-point copy of a polynomial for hot evaluation loops.
///
/// Coefficients are kept as unevaluated sums `hi + lo` and evaluated with a
/// compensated Horner scheme, so values are accurate to a few ulps unless the
/// polynomial is ill-conditioned beyond `1/ε`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct F64Poly {
    c: Vec<f64>,
    lo: Vec<f64>,
}

impl F64Poly {
    pub fn new(c: Vec<f64>) -> Self {
        let lo = vec![0.0; c.len()];
        F64Poly { c, lo }
    }

    fn from_exact(coeffs: &[BigRat]) -> Self {
        let c: Vec<f64> = coeffs.iter().map(rat_to_f64).collect();
        let lo = coeffs
            .iter()
            .zip(&c)
            .map(|(r, &h)| match BigRat::from_float(h) {
                Some(hr) => rat_to_f64(&(r - hr)),
                None => 0.0,
            })
            .collect();
        F64Poly { c, lo }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut s = 0.0;
        let mut err = 0.0;
        for (&c, &lo) in self.c.iter().zip(&self.lo).rev() {
            let (p, pe) = two_prod(s, x);
            let (t, se) = two_sum(p, c);
            s = t;
            err = err * x + (pe + se + lo);
        }
        s + err
    }

    pub fn derivative(&self) -> F64Poly {
        let mut c = Vec::with_capacity(self.c.len().saturating_sub(1));
        let mut lo = Vec::with_capacity(c.capacity());
        for k in 1..self.c.len() {
            let (p, pe) = two_prod(k as f64, self.c[k]);
            c.push(p);
            lo.push(pe + k as f64 * self.lo[k]);
        }
        F64Poly { c, lo }
    }
}

/// Quotient of two exact polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        RationalFunction { num, den }
    }

    pub fn poly(p: Polynomial) -> Self {
        Self::new(p, Polynomial::one())
    }

    pub fn derivative(&self) -> Self {
        let num = &(&derivative(&self.num) * &self.den) - &(&self.num * &derivative(&self.den));
        Self::new(num, &self.den * &self.den)
    }

    pub fn eval(&self, x: &BigRat) -> Option<BigRat> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn to_f64(&self) -> F64Rational {
        F64Rational {
            num: self.num.to_f64(),
            den: self.den.to_f64(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct F64Rational {
    pub num: F64Poly,
    pub den: F64Poly,
}

impl F64Rational {
    pub fn eval(&self, x: f64) -> f64 {
        self.num.eval(x) / self.den.eval(x)
    }
}

/// Physicists' Hermite polynomial `H_n`.
pub fn hermite(n: usize) -> Polynomial {
    let two_x = Polynomial::from_ints(&[0, 2]);
    let mut prev = Polynomial::one();
    if n == 0 {
        return prev;
    }
    let mut cur = two_x.clone();
    for k in 1..n {
        let next = &(&two_x * &cur) - &prev.scale(&int(2 * k as i64));
        prev = cur;
        cur = next;
    }
    cur
}

/// Associated Laguerre polynomial `L_n^alpha`.
pub fn laguerre(n: usize, alpha: &BigRat) -> Polynomial {
    let mut prev = Polynomial::one();
    if n == 0 {
        return prev;
    }
    // L_1 = 1 + alpha - x
    let mut cur = Polynomial::new(vec![BigRat::one() + alpha, int(-1)]);
    for k in 1..n {
        // (k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}
        let kk = int(k as i64);
        let lin = Polynomial::new(vec![int(2 * k as i64 + 1) + alpha, int(-1)]);
        let next = (&(&lin * &cur) - &prev.scale(&(&kk + alpha))).scale(&rat(1, k as i64 + 1));
        prev = cur;
        cur = next;
    }
    cur
}

/// `L_n^alpha` with the convention `L_n = 0` for negative `n`.
pub fn laguerre_signed(n: i64, alpha: &BigRat) -> Polynomial {
    if n < 0 {
        Polynomial::zero()
    } else {
        laguerre(n as usize, alpha)
    }
}

/// Jacobi polynomial `P_n^{(a,b)}` from the three-term recurrence.
///
/// Where the recurrence's leading factor vanishes the explicit binomial sum
/// is used for that degree instead.
pub fn jacobi(n: usize, a: &BigRat, b: &BigRat) -> Polynomial {
    let mut prev = Polynomial::one();
    if n == 0 {
        return prev;
    }
    let one = BigRat::one();
    let two = int(2);
    // P_1 = (a+1) + (a+b+2)(x-1)/2
    let s = a + b + &two;
    let mut cur = Polynomial::new(vec![(a + &one) - &s / &two, &s / &two]);
    for k in 2..=n {
        let kk = int(k as i64);
        let c = &(&two * &kk) + a + b; // 2k + a + b
        let lead = &two * &kk * (&kk + a + b) * (&c - &two);
        let next = if lead.is_zero() {
            jacobi_explicit(k, a, b)
        } else {
            let c1 = &c - &one;
            let lin = Polynomial::new(vec![&c1 * (a * a - b * b), &c1 * &c * (&c - &two)]);
            let tail = &two * (&kk + a - &one) * (&kk + b - &one) * &c;
            (&(&lin * &cur) - &prev.scale(&tail)).scale(&(one.clone() / lead))
        };
        prev = cur;
        cur = next;
    }
    cur
}

/// `sum_k C(n+a, n-k) C(n+b, k) ((x-1)/2)^k ((x+1)/2)^(n-k)` with generalized binomials.
pub fn jacobi_explicit(n: usize, a: &BigRat, b: &BigRat) -> Polynomial {
    let half = rat(1, 2);
    let xm = Polynomial::new(vec![-half.clone(), half.clone()]);
    let xp = Polynomial::new(vec![half.clone(), half]);
    let nn = int(n as i64);
    let mut out = Polynomial::zero();
    for k in 0..=n {
        let c = binom(&(&nn + a), n - k) * binom(&(&nn + b), k);
        if c.is_zero() {
            continue;
        }
        let term = &xm.pow(k as u32) * &xp.pow((n - k) as u32);
        out = &out + &term.scale(&c);
    }
    out
}

/// Generalized binomial coefficient `C(t, k)` for rational `t`.
pub fn binom(t: &BigRat, k: usize) -> BigRat {
    let mut acc = BigRat::one();
    for j in 0..k {
        acc = acc * (t - int(j as i64)) / int(j as i64 + 1);
    }
    acc
}

pub fn derivative(p: &Polynomial) -> Polynomial {
    Polynomial::new(
        p.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * int(k as i64))
            .collect(),
    )
}

/// `q(x) = p(-x)`.
pub fn negate_argument(p: &Polynomial) -> Polynomial {
    Polynomial::new(
        p.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
            .collect(),
    )
}

/// Wronskian determinant of `ps`: row `i` holds the `i`-th derivatives.
pub fn wronskian(ps: &[Polynomial]) -> Polynomial {
    assert!(!ps.is_empty(), "wronskian of an empty sequence");
    let k = ps.len();
    let mut rows: Vec<Vec<Polynomial>> = Vec::with_capacity(k);
    rows.push(ps.to_vec());
    for i in 1..k {
        let next = rows[i - 1].iter().map(derivative).collect();
        rows.push(next);
    }
    determinant(&rows)
}

/// Cofactor expansion along the first row.
fn determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    let k = m.len();
    if k == 1 {
        return m[0][0].clone();
    }
    let mut out = Polynomial::zero();
    for j in 0..k {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &determinant(&minor);
        out = if j % 2 == 0 { &out + &term } else { &out - &term };
    }
    out
}
