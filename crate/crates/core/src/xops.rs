//! Exceptional orthogonal polynomial families (X-Hermite, X-Jacobi, X-Laguerre I–III),
//! their second-order ODE coefficients and classical weights.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::quad::{quad, QuadratureSettings};
use crate::ratpoly::{
    derivative, hermite, int, jacobi, laguerre, laguerre_signed, negate_argument, rat_to_f64, wronskian,
    BigRat, F64Poly, F64Rational, Polynomial, RationalFunction,
};

/// Strictly increasing sequence of distinct nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSeq(Vec<usize>);

impl LambdaSeq {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ParameterOutOfRange("λ must have at least one entry".into()));
        }
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::ParameterOutOfRange(format!(
                "λ entries must be strictly increasing, got {entries:?}"
            )));
        }
        Ok(LambdaSeq(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, n: usize) -> bool {
        self.0.contains(&n)
    }
}

impl std::fmt::Display for LambdaSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaguerreType {
    I,
    II,
    III,
}

/// Reading of a primed composite such as `L'(-x)` in the Laguerre ODEs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivativeConvention {
    /// `d/dx [L(-x)]`.
    Composite,
    /// `L'(z)` evaluated at `z = -x`.
    Outer,
}

#[derive(Clone, Debug, PartialEq)]
pub enum XFamily {
    Hermite { lambda: LambdaSeq },
    Jacobi { m: usize, a: BigRat, b: BigRat },
    Laguerre { kind: LaguerreType, m: usize, alpha: BigRat },
}

impl XFamily {
    pub fn hermite(lambda: LambdaSeq) -> Self {
        XFamily::Hermite { lambda }
    }

    pub fn jacobi(m: usize, a: BigRat, b: BigRat) -> Result<Self> {
        if m < 1 {
            return Err(Error::ParameterOutOfRange("X_m-Jacobi requires m >= 1".into()));
        }
        Ok(XFamily::Jacobi { m, a, b })
    }

    pub fn laguerre(kind: LaguerreType, m: usize, alpha: BigRat) -> Result<Self> {
        if m < 1 {
            return Err(Error::ParameterOutOfRange("X_m-Laguerre requires m >= 1".into()));
        }
        let ok = match kind {
            LaguerreType::I => alpha.is_positive(),
            LaguerreType::II => alpha > int(m as i64 - 1),
            LaguerreType::III => alpha > int(-1) && alpha.is_negative(),
        };
        if !ok {
            let range = match kind {
                LaguerreType::I => "α > 0".to_string(),
                LaguerreType::II => format!("α > {}", m as i64 - 1),
                LaguerreType::III => "-1 < α < 0".to_string(),
            };
            return Err(Error::ParameterOutOfRange(format!(
                "type {kind:?} X_{m}-Laguerre requires {range}, got α = {alpha}"
            )));
        }
        Ok(XFamily::Laguerre { kind, m, alpha })
    }

    /// Interval carrying the classical weight.
    pub fn interval(&self) -> Interval {
        match self {
            XFamily::Hermite { .. } => Interval::REAL_LINE,
            XFamily::Jacobi { .. } => Interval::new(-1.0, 1.0),
            XFamily::Laguerre { .. } => Interval::POSITIVE,
        }
    }

    pub fn check_index(&self, n: i64) -> Result<()> {
        let excluded = |reason: String| Err(Error::IndexExcluded { n, reason });
        match self {
            XFamily::Hermite { lambda } => {
                if n < 0 {
                    excluded("negative degree".into())
                } else if lambda.contains(n as usize) {
                    excluded(format!("λ={lambda}"))
                } else {
                    Ok(())
                }
            }
            XFamily::Jacobi { m, .. } => {
                if n <= *m as i64 {
                    excluded(format!("the X_{m}-Jacobi range n >= {}", m + 1))
                } else {
                    Ok(())
                }
            }
            XFamily::Laguerre { kind, m, .. } => {
                let m = *m as i64;
                let ok = match kind {
                    LaguerreType::I | LaguerreType::II => n >= m,
                    LaguerreType::III => n == 0 || n > m,
                };
                if ok {
                    Ok(())
                } else {
                    excluded(format!("the type {kind:?} X_{m}-Laguerre index set"))
                }
            }
        }
    }

    /// The `n`-th polynomial of the family.
    pub fn polynomial(&self, n: i64) -> Result<Polynomial> {
        match self {
            XFamily::Hermite { lambda } => {
                self.check_index(n)?;
                x_hermite(lambda, n as usize)
            }
            XFamily::Jacobi { m, a, b } => x_jacobi(*m, a, b, n),
            XFamily::Laguerre { kind, m, alpha } => x_laguerre(*kind, *m, alpha, n),
        }
    }

    /// Polynomial `D` appearing squared in the weight denominator and in the
    /// solution prefactor.
    pub fn denominator(&self) -> Result<Polynomial> {
        let d = match self {
            XFamily::Hermite { lambda } => {
                let hs: Vec<Polynomial> = lambda.entries().iter().map(|&l| hermite(l)).collect();
                wronskian(&hs)
            }
            XFamily::Jacobi { m, a, b } => jacobi(*m, &(-a - int(1)), &(b - int(1))),
            XFamily::Laguerre { kind, m, alpha } => match kind {
                LaguerreType::I => negate_argument(&laguerre(*m, &(alpha - int(1)))),
                LaguerreType::II => laguerre(*m, &(-alpha - int(1))),
                LaguerreType::III => negate_argument(&laguerre(*m, &(-alpha - int(1)))),
            },
        };
        if d.is_zero() {
            return Err(Error::ParameterSingular(format!(
                "denominator polynomial of {self:?} vanishes identically"
            )));
        }
        Ok(d)
    }
}

/// X_λ-Hermite polynomial: Wronskian of `[H_{l1}, …, H_{lm}, H_n]`.
pub fn x_hermite(lambda: &LambdaSeq, n: usize) -> Result<Polynomial> {
    if lambda.contains(n) {
        return Err(Error::IndexExcluded {
            n: n as i64,
            reason: format!("λ={lambda}"),
        });
    }
    let mut hs: Vec<Polynomial> = lambda.entries().iter().map(|&l| hermite(l)).collect();
    hs.push(hermite(n));
    Ok(wronskian(&hs))
}

/// X_m-Jacobi polynomial, defined for `n >= m + 1`.
pub fn x_jacobi(m: usize, a: &BigRat, b: &BigRat, n: i64) -> Result<Polynomial> {
    if m < 1 {
        return Err(Error::ParameterOutOfRange("X_m-Jacobi requires m >= 1".into()));
    }
    let mi = m as i64;
    if n <= mi {
        return Err(Error::IndexExcluded {
            n,
            reason: format!("the X_{m}-Jacobi range n >= {}", m + 1),
        });
    }
    let one = BigRat::one();
    let nm = int(n - mi);
    let denom = int(2) * (&one + a - int(mi) + int(n));
    if denom.is_zero() {
        return Err(Error::ParameterSingular(format!(
            "1 + a - m + n = 0 for m={m}, a={a}, n={n}"
        )));
    }
    let k = (n - mi) as usize;
    let c1 = &one + a + b + &nm;
    let c2 = int(2) * (&one + a - int(mi));
    let x_minus_1 = Polynomial::from_ints(&[-1, 1]);
    let t1 = &(&x_minus_1 * &jacobi(m, &(-a - &one), &(b - &one))) * &jacobi(k - 1, &(a + int(2)), b);
    let t2 = &jacobi(m, &(-a - int(2)), b) * &jacobi(k, &(a + &one), &(b - &one));
    let sign = if m % 2 == 0 { one.clone() } else { -one.clone() };
    Ok((&t1.scale(&c1) + &t2.scale(&c2)).scale(&(sign / denom)))
}

/// X_m-Laguerre polynomial of the given type. `L_{-1} ≡ 0` throughout.
pub fn x_laguerre(kind: LaguerreType, m: usize, alpha: &BigRat, n: i64) -> Result<Polynomial> {
    let fam = XFamily::laguerre(kind, m, alpha.clone())?;
    fam.check_index(n)?;
    let mi = m as i64;
    let one = BigRat::one();
    let x = Polynomial::x();
    Ok(match kind {
        LaguerreType::I => {
            let t1 = &negate_argument(&laguerre(m, alpha)) * &laguerre_signed(n - mi, &(alpha - &one));
            let t2 = &negate_argument(&laguerre(m, &(alpha - &one))) * &laguerre_signed(n - mi - 1, alpha);
            &t1 + &t2
        }
        LaguerreType::II => {
            let t1 = &(&x * &laguerre(m, &(-alpha - &one))) * &laguerre_signed(n - mi - 1, &(alpha + int(2)));
            let t2 = (&laguerre(m, &(-alpha - int(2))) * &laguerre_signed(n - mi, &(alpha + &one)))
                .scale(&(int(mi) - alpha - &one));
            &t1 + &t2
        }
        LaguerreType::III => {
            if n == 0 {
                return Ok(Polynomial::one());
            }
            let t1 = &(&x * &laguerre_signed(n - mi - 2, &(alpha + int(2))))
                * &negate_argument(&laguerre(m, &(-alpha - &one)));
            let t2 = (&laguerre_signed(n - mi - 1, &(alpha + &one))
                * &negate_argument(&laguerre(m + 1, &(-alpha - int(2)))))
            .scale(&int(mi + 1));
            &t1 + &t2
        }
    })
}

/// Coefficients of `f χ'' + g χ' + h χ = 0` as exact rational functions.
#[derive(Clone, Debug, PartialEq)]
pub struct ODECoefficients {
    pub f: RationalFunction,
    pub g: RationalFunction,
    pub h: RationalFunction,
}

impl ODECoefficients {
    pub fn compile(&self) -> CompiledCoefficients {
        CompiledCoefficients {
            f: self.f.to_f64(),
            fp: self.f.derivative().to_f64(),
            g: self.g.to_f64(),
            gp: self.g.derivative().to_f64(),
            h: self.h.to_f64(),
        }
    }
}

/// Floating-point form of [`ODECoefficients`] with `f'` and `g'`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompiledCoefficients {
    pub f: F64Rational,
    pub fp: F64Rational,
    pub g: F64Rational,
    pub gp: F64Rational,
    pub h: F64Rational,
}

pub fn ode_coefficients(family: &XFamily, n: i64) -> Result<ODECoefficients> {
    ode_coefficients_with(family, n, DerivativeConvention::Composite)
}

/// As [`ode_coefficients`], with an explicit reading of the primed composites
/// in the type I and III Laguerre equations. Other families ignore `conv`.
pub fn ode_coefficients_with(family: &XFamily, n: i64, conv: DerivativeConvention) -> Result<ODECoefficients> {
    family.check_index(n)?;
    let d = family.denominator()?;
    let x = Polynomial::x();
    let one = Polynomial::one();
    let nn = int(n);
    let rf = |num: Polynomial| RationalFunction::new(num, d.clone());
    Ok(match family {
        XFamily::Hermite { lambda } => {
            let w1 = derivative(&d);
            let w2 = derivative(&w1);
            let g = (&(&x * &d) + &w1).scale(&int(-2));
            let m = int(lambda.m() as i64);
            let h = &(&w2 + &(&x * &w1).scale(&int(2))) - &d.scale(&(int(2) * (m - &nn)));
            ODECoefficients {
                f: RationalFunction::poly(one),
                g: rf(g),
                h: rf(h),
            }
        }
        XFamily::Jacobi { m, a, b } => {
            let r = jacobi(m - 1, &(-a), b);
            let k = a - b - int(*m as i64) + int(1);
            let f = Polynomial::from_ints(&[1, 0, -1]);
            let lin = Polynomial::new(vec![b - a, -(a + b + int(2))]); // -(a+1)(x+1) + (b+1)(1-x)
            let g = &(&f * &r).scale(&k) + &(&lin * &d);
            let cst = &nn * &nn + &nn * (a + b - int(2 * *m as i64) + int(1)) - int(2 * *m as i64) * b;
            let h = &(&Polynomial::from_ints(&[1, -1]) * &r).scale(&(b * &k)) + &d.scale(&cst);
            ODECoefficients {
                f: RationalFunction::poly(f),
                g: rf(g),
                h: rf(h),
            }
        }
        XFamily::Laguerre { kind, m, alpha } => {
            let f = RationalFunction::poly(Polynomial::from_ints(&[0, -1]));
            let base = Polynomial::new(vec![-int(1) - alpha, int(1)]); // -1 + x - α
            let prime_of_composite = |p: &Polynomial| match conv {
                DerivativeConvention::Composite => derivative(&negate_argument(p)),
                DerivativeConvention::Outer => negate_argument(&derivative(p)),
            };
            match kind {
                LaguerreType::I => {
                    let r = prime_of_composite(&laguerre(*m, &(alpha - int(1))));
                    let g = &(&base * &d) + &(&x * &r).scale(&int(2));
                    let h = &d.scale(&(-&nn)) + &r.scale(&(int(2) * alpha));
                    ODECoefficients { f, g: rf(g), h: rf(h) }
                }
                LaguerreType::II => {
                    let s = laguerre(m - 1, &(-alpha));
                    let xs2 = (&x * &s).scale(&int(2));
                    let g = &(&base * &d) - &xs2;
                    let h = &d.scale(&(int(2 * *m as i64) - &nn)) + &xs2;
                    ODECoefficients { f, g: rf(g), h: rf(h) }
                }
                LaguerreType::III => {
                    let r = prime_of_composite(&laguerre(*m, &(-alpha - int(1))));
                    let g = &(&base * &d) + &(&x * &r).scale(&int(2));
                    ODECoefficients {
                        f,
                        g: rf(g),
                        h: RationalFunction::poly(Polynomial::constant(-nn)),
                    }
                }
            }
        }
    })
}

/// Numerator of `f p'' + g p' + h p` over the common denominator.
pub fn residual_numerator(ode: &ODECoefficients, p: &Polynomial) -> Polynomial {
    let p1 = derivative(p);
    let p2 = derivative(&p1);
    let (f, g, h) = (&ode.f, &ode.g, &ode.h);
    let t1 = &(&(&f.num * &g.den) * &h.den) * &p2;
    let t2 = &(&(&g.num * &f.den) * &h.den) * &p1;
    let t3 = &(&(&h.num * &f.den) * &g.den) * p;
    &(&t1 + &t2) + &t3
}

/// Cleared-denominator residual of the family's defining ODE at index `n`.
pub fn ode_residual_exact(family: &XFamily, n: i64) -> Result<Polynomial> {
    let ode = ode_coefficients(family, n)?;
    Ok(residual_numerator(&ode, &family.polynomial(n)?))
}

/// Returns the convention under which every index in `ns` has an exactly
/// vanishing residual, if exactly one does.
pub fn select_convention(family: &XFamily, ns: &[i64]) -> Result<Option<DerivativeConvention>> {
    let mut passing = Vec::new();
    for conv in [DerivativeConvention::Composite, DerivativeConvention::Outer] {
        let mut ok = true;
        for &n in ns {
            let ode = ode_coefficients_with(family, n, conv)?;
            if !residual_numerator(&ode, &family.polynomial(n)?).is_zero() {
                ok = false;
                break;
            }
        }
        if ok {
            passing.push(conv);
        }
    }
    Ok(if passing.len() == 1 { Some(passing[0]) } else { None })
}

/// Classical weight `w(x)` of a family on its interval.
#[derive(Clone, Debug)]
pub struct ClassicalWeight {
    kind: WeightKind,
    den: F64Poly,
    interval: Interval,
}

#[derive(Clone, Debug)]
enum WeightKind {
    Gaussian,
    Jacobi { a: f64, b: f64 },
    Laguerre { alpha: f64 },
}

impl ClassicalWeight {
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !self.interval.contains_closed(x) {
            return Err(Error::DomainError(format!("x = {x} outside {}", self.interval)));
        }
        Ok(self.value(x))
    }

    /// Evaluation without the domain check.
    pub fn value(&self, x: f64) -> f64 {
        let d = self.den.eval(x);
        let num = match self.kind {
            WeightKind::Gaussian => (-x * x).exp(),
            WeightKind::Jacobi { a, b } => (1.0 - x).powf(a) * (1.0 + x).powf(b),
            WeightKind::Laguerre { alpha } => {
                if x == 0.0 {
                    0.0
                } else {
                    (alpha * x.ln() - x).exp()
                }
            }
        };
        if num == 0.0 {
            0.0
        } else {
            num / (d * d)
        }
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }
}

pub fn classical_weight(family: &XFamily) -> Result<ClassicalWeight> {
    let kind = match family {
        XFamily::Hermite { .. } => WeightKind::Gaussian,
        XFamily::Jacobi { a, b, .. } => WeightKind::Jacobi {
            a: rat_to_f64(a),
            b: rat_to_f64(b),
        },
        XFamily::Laguerre { alpha, .. } => WeightKind::Laguerre {
            alpha: rat_to_f64(alpha),
        },
    };
    Ok(ClassicalWeight {
        kind,
        den: family.denominator()?.to_f64(),
        interval: family.interval(),
    })
}

/// `∫ X_{n1} X_{n2} w dx` over the family interval.
pub fn classical_orthogonality(family: &XFamily, n1: i64, n2: i64, settings: &QuadratureSettings) -> Result<f64> {
    let p1 = family.polynomial(n1)?.to_f64();
    let p2 = family.polynomial(n2)?.to_f64();
    let w = classical_weight(family)?;
    let iv = family.interval();
    let r = quad(
        |x| {
            let wx = w.value(x);
            if wx == 0.0 {
                0.0
            } else {
                p1.eval(x) * p2.eval(x) * wx
            }
        },
        iv.lo,
        iv.hi,
        settings,
    )?;
    Ok(r.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;

    fn lam12() -> LambdaSeq {
        LambdaSeq::new(vec![1, 2]).unwrap()
    }

    #[test]
    fn lambda_seq_validation() {
        assert!(LambdaSeq::new(vec![2, 1]).is_err());
        assert!(LambdaSeq::new(vec![1, 1]).is_err());
        assert!(LambdaSeq::new(vec![]).is_err());
        assert_eq!(lam12().m(), 2);
    }

    #[test]
    fn x_hermite_examples() {
        assert_eq!(x_hermite(&lam12(), 0).unwrap(), Polynomial::from_ints(&[16]));
        assert!(matches!(x_hermite(&lam12(), 1), Err(Error::IndexExcluded { n: 1, .. })));
        let x3 = x_hermite(&lam12(), 3).unwrap();
        assert_eq!(x3, Polynomial::from_ints(&[0, 192, 0, 128]));
        assert_eq!(x3.degree(), Some(3));
        assert_eq!(
            x_hermite(&lam12(), 4).unwrap(),
            Polynomial::from_ints(&[-192, 0, 768, 0, 768])
        );
    }

    #[test]
    fn x_hermite_error_message_names_lambda() {
        let e = x_hermite(&lam12(), 1).unwrap_err();
        assert_eq!(e.to_string(), "index 1 excluded by λ={1,2}");
    }

    #[test]
    fn x_jacobi_examples() {
        let one = int(1);
        assert!(matches!(x_jacobi(1, &one, &one, 1), Err(Error::IndexExcluded { .. })));
        // with a = b = m = 1 the family reduces to P_{n-1}^{(1,1)}
        for n in 2..=8 {
            let p = x_jacobi(1, &one, &one, n).unwrap();
            assert_eq!(p, jacobi((n - 1) as usize, &one, &one), "n={n}");
            assert!(p.degree().unwrap() >= 1);
        }
        assert_eq!(x_jacobi(1, &one, &one, 2).unwrap(), Polynomial::from_ints(&[0, 2]));
    }

    #[test]
    fn x_jacobi_singular_prefactor() {
        // 1 + a - m + n = 0 with m=1, n=2 needs a = -2
        let e = x_jacobi(1, &int(-2), &int(1), 2).unwrap_err();
        assert!(matches!(e, Error::ParameterSingular(_)));
    }

    #[test]
    fn x_laguerre_examples() {
        let t3 = x_laguerre(LaguerreType::III, 2, &rat(-1, 3), 0).unwrap();
        assert_eq!(t3, Polynomial::one());
        let t1 = x_laguerre(LaguerreType::I, 1, &int(5), 1).unwrap();
        assert_eq!(t1, Polynomial::from_ints(&[6, 1]));
        let t2 = x_laguerre(LaguerreType::II, 1, &int(1), 1).unwrap();
        assert_eq!(t2, Polynomial::from_ints(&[2, 1]));
        assert_eq!(
            x_laguerre(LaguerreType::I, 1, &int(5), 2).unwrap(),
            Polynomial::from_ints(&[35, 0, -1])
        );
    }

    #[test]
    fn x_laguerre_parameter_ranges() {
        assert!(matches!(
            x_laguerre(LaguerreType::I, 1, &int(0), 1),
            Err(Error::ParameterOutOfRange(_))
        ));
        assert!(matches!(
            x_laguerre(LaguerreType::II, 2, &int(1), 2),
            Err(Error::ParameterOutOfRange(_))
        ));
        assert!(matches!(
            x_laguerre(LaguerreType::III, 1, &rat(1, 2), 0),
            Err(Error::ParameterOutOfRange(_))
        ));
        assert!(matches!(
            x_laguerre(LaguerreType::III, 1, &rat(-1, 2), 1),
            Err(Error::IndexExcluded { .. })
        ));
        assert!(matches!(
            x_laguerre(LaguerreType::I, 2, &int(5), 1),
            Err(Error::IndexExcluded { .. })
        ));
    }

    #[test]
    fn ode_coefficient_examples() {
        let h = ode_coefficients(&XFamily::hermite(lam12()), 0).unwrap();
        assert_eq!(h.f, RationalFunction::poly(Polynomial::one()));
        assert_eq!(h.g.den, Polynomial::from_ints(&[4, 0, 8]));
        // g = -2(x + W'/W) = -2 (8x^3 + 4x + 16x) / W
        assert_eq!(h.g.num, Polynomial::from_ints(&[0, -40, 0, -16]));

        let l1 = XFamily::laguerre(LaguerreType::I, 1, int(5)).unwrap();
        assert_eq!(ode_coefficients(&l1, 1).unwrap().f.num, Polynomial::from_ints(&[0, -1]));
        let j = XFamily::jacobi(1, int(1), int(1)).unwrap();
        assert_eq!(ode_coefficients(&j, 2).unwrap().f.num, Polynomial::from_ints(&[1, 0, -1]));
    }

    #[test]
    fn hermite_residual_zero() {
        let fam = XFamily::hermite(lam12());
        for n in [0, 3, 4, 5, 10] {
            assert!(ode_residual_exact(&fam, n).unwrap().is_zero(), "n={n}");
        }
    }

    #[test]
    fn laguerre2_residual_zero_from_n_equals_m() {
        for alpha in [1, 3, 5] {
            let fam = XFamily::laguerre(LaguerreType::II, 1, int(alpha)).unwrap();
            for n in 1..=5 {
                assert!(ode_residual_exact(&fam, n).unwrap().is_zero(), "α={alpha} n={n}");
            }
        }
    }

    #[test]
    fn composite_convention_is_the_unique_reading() {
        let l1 = XFamily::laguerre(LaguerreType::I, 1, int(5)).unwrap();
        assert_eq!(
            select_convention(&l1, &[1, 2, 3, 4]).unwrap(),
            Some(DerivativeConvention::Composite)
        );
        let l3 = XFamily::laguerre(LaguerreType::III, 1, rat(-1, 2)).unwrap();
        assert_eq!(
            select_convention(&l3, &[0, 2, 3, 4]).unwrap(),
            Some(DerivativeConvention::Composite)
        );
    }

    #[test]
    fn printed_jacobi_h_variant_fails() {
        // h with b(a + a - b - m) in place of b(a - b - m + 1)
        let (a, b, m) = (int(2), int(1), 1usize);
        let fam = XFamily::jacobi(m, a.clone(), b.clone()).unwrap();
        let n = 3;
        let good = ode_coefficients(&fam, n).unwrap();
        assert!(residual_numerator(&good, &fam.polynomial(n).unwrap()).is_zero());
        let d = fam.denominator().unwrap();
        let r = jacobi(m - 1, &(-&a), &b);
        let nn = int(n);
        let cst = &nn * &nn + &nn * (&a + &b - int(2) + int(1)) - int(2) * &b;
        let bad_k = &b * (&a + &a - &b - int(1));
        let h = &(&Polynomial::from_ints(&[1, -1]) * &r).scale(&bad_k) + &d.scale(&cst);
        let bad = ODECoefficients {
            h: RationalFunction::new(h, d),
            ..good
        };
        assert!(!residual_numerator(&bad, &fam.polynomial(n).unwrap()).is_zero());
    }

    #[test]
    fn weights_at_reference_points() {
        let w = classical_weight(&XFamily::hermite(lam12())).unwrap();
        assert_eq!(w.eval(0.0).unwrap(), 1.0 / 16.0);
        let j = classical_weight(&XFamily::jacobi(1, int(1), int(1)).unwrap()).unwrap();
        assert_eq!(j.eval(1.0).unwrap(), 0.0);
        assert_eq!(j.eval(-1.0).unwrap(), 0.0);
        assert!(j.eval(1.5).is_err());
        let l = classical_weight(&XFamily::laguerre(LaguerreType::I, 1, int(5)).unwrap()).unwrap();
        assert_eq!(l.eval(0.0).unwrap(), 0.0);
        assert!(l.eval(-0.1).is_err());
    }

    #[test]
    fn vanishing_denominator_is_singular() {
        // P_1^{(-1,-1)} is identically zero
        let fam = XFamily::jacobi(1, int(0), int(0)).unwrap();
        assert!(matches!(ode_coefficients(&fam, 2), Err(Error::ParameterSingular(_))));
        assert!(XFamily::jacobi(1, rat(3, 2), rat(1, 2)).unwrap().denominator().is_ok());
    }
}
