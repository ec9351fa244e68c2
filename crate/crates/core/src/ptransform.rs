//! Point transformation of `f χ'' + g χ' + h χ = 0` into `Φ'' + Q(y) Φ = 0`.
//!
//! With `x = x(y)`:
//!
//! ```text
//! Q = -g²x'²/(4f²) + h x'²/f + g f' x'²/(2f²) - g' x'²/(2f) - 3x''²/(4x'²) + x'''/(2x')
//! Φ = P(x) · X_n(x) / D(x) · |x'|^{-1/2}
//! ```
//!
//! where `P/D` is the closed-form prefactor `exp(∫ g/(2f) dx)` of the family.

use crate::dd::DD;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::ratpoly::{rat_to_f64, F64Poly};
use crate::xops::{ode_coefficients, CompiledCoefficients, ODECoefficients, XFamily};

/// Coordinate maps with analytic derivatives through third order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SmoothMap {
    /// `x = c·y`
    Linear { c: f64 },
    /// `x = exp(s·y)`
    Exponential { s: f64 },
    /// `x = y²/2`
    QuadraticHalf,
}

impl SmoothMap {
    pub fn value(&self, y: f64) -> f64 {
        match *self {
            SmoothMap::Linear { c } => c * y,
            SmoothMap::Exponential { s } => (s * y).exp(),
            SmoothMap::QuadraticHalf => 0.5 * y * y,
        }
    }

    pub fn d1(&self, y: f64) -> f64 {
        match *self {
            SmoothMap::Linear { c } => c,
            SmoothMap::Exponential { s } => s * (s * y).exp(),
            SmoothMap::QuadraticHalf => y,
        }
    }

    pub fn d2(&self, y: f64) -> f64 {
        match *self {
            SmoothMap::Linear { .. } => 0.0,
            SmoothMap::Exponential { s } => s * s * (s * y).exp(),
            SmoothMap::QuadraticHalf => 1.0,
        }
    }

    pub fn d3(&self, y: f64) -> f64 {
        match *self {
            SmoothMap::Linear { .. } | SmoothMap::QuadraticHalf => 0.0,
            SmoothMap::Exponential { s } => s * s * s * (s * y).exp(),
        }
    }

    /// `x(y)` in double-double for a double-double `y`.
    fn value_dd(&self, y: DD) -> DD {
        match *self {
            SmoothMap::Linear { c } => y.scale(c),
            SmoothMap::Exponential { s } => y.scale(s).exp(),
            SmoothMap::QuadraticHalf => {
                let sq = y.mul(y);
                DD {
                    hi: 0.5 * sq.hi,
                    lo: 0.5 * sq.lo,
                }
            }
        }
    }

    fn image(&self, j: Interval) -> Result<Interval> {
        let (a, b) = match *self {
            SmoothMap::Linear { c } if c != 0.0 => {
                let (a, b) = (c * j.lo, c * j.hi);
                (a.min(b), a.max(b))
            }
            SmoothMap::Exponential { s } if s != 0.0 => {
                let (a, b) = ((s * j.lo).exp(), (s * j.hi).exp());
                (a.min(b), a.max(b))
            }
            SmoothMap::QuadraticHalf if j.lo >= 0.0 => (self.value(j.lo), self.value(j.hi)),
            _ => {
                return Err(Error::DomainError(format!("{self:?} is not injective on {j}")));
            }
        };
        Ok(Interval { lo: a, hi: b })
    }
}

/// Injective map `x(y)` from `domain` into `image`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoordinateChange {
    pub map: SmoothMap,
    pub domain: Interval,
    pub image: Interval,
}

impl CoordinateChange {
    /// Builds the change of variables, checking `map(domain) ⊆ target`.
    pub fn new(map: SmoothMap, domain: Interval, target: Interval) -> Result<Self> {
        let image = map.image(domain)?;
        if image.lo < target.lo || image.hi > target.hi {
            return Err(Error::DomainError(format!(
                "{map:?} maps {domain} onto {image}, outside {target}"
            )));
        }
        Ok(CoordinateChange { map, domain, image })
    }

    pub fn identity() -> Self {
        CoordinateChange {
            map: SmoothMap::Linear { c: 1.0 },
            domain: Interval::REAL_LINE,
            image: Interval::REAL_LINE,
        }
    }
}

/// `Q(y)` of the transformed equation.
#[derive(Clone, Debug)]
pub struct PotentialCoefficient {
    coeffs: CompiledCoefficients,
    cc: CoordinateChange,
}

impl PotentialCoefficient {
    pub fn eval(&self, y: f64) -> Result<f64> {
        if !self.cc.domain.contains(y) {
            return Err(Error::DomainError(format!("y = {y} outside {}", self.cc.domain)));
        }
        let x = self.cc.map.value(y);
        if !self.cc.image.contains_closed(x) {
            return Err(Error::DomainError(format!("x(y) = {x} outside {}", self.cc.image)));
        }
        if self.coeffs.f.eval(x) == 0.0 {
            return Err(Error::DomainError(format!("f vanishes at x = {x}")));
        }
        Ok(self.value(y))
    }

    /// Evaluation without domain checks.
    pub fn value(&self, y: f64) -> f64 {
        let m = &self.cc.map;
        let (x, x1, x2, x3) = (m.value(y), m.d1(y), m.d2(y), m.d3(y));
        let c = &self.coeffs;
        let (f, fp, g, gp, h) = (c.f.eval(x), c.fp.eval(x), c.g.eval(x), c.gp.eval(x), c.h.eval(x));
        let xs = x1 * x1;
        xs * (-g * g / (4.0 * f * f) + h / f + g * fp / (2.0 * f * f) - gp / (2.0 * f))
            - 3.0 * x2 * x2 / (4.0 * xs)
            + x3 / (2.0 * x1)
    }

    pub fn coordinate_change(&self) -> &CoordinateChange {
        &self.cc
    }
}

pub fn transform_potential_coefficient(ode: &ODECoefficients, cc: &CoordinateChange) -> PotentialCoefficient {
    PotentialCoefficient {
        coeffs: ode.compile(),
        cc: *cc,
    }
}

/// Closed-form `P(x)` of the solution prefactor `P/D`.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Kernel {
    /// `exp(-x²/2)`
    Gaussian,
    /// `(1-x)^ea (1+x)^eb`
    Jacobi { ea: f64, eb: f64 },
    /// `exp(-x/2) x^e`
    Laguerre { e: f64 },
}

impl Kernel {
    fn value(&self, x: f64) -> f64 {
        match *self {
            Kernel::Gaussian => (-0.5 * x * x).exp(),
            Kernel::Jacobi { ea, eb } => (1.0 - x).powf(ea) * (1.0 + x).powf(eb),
            Kernel::Laguerre { e } => {
                if x <= 0.0 || x.is_infinite() {
                    0.0
                } else {
                    (-0.5 * x + e * x.ln()).exp()
                }
            }
        }
    }

    /// `P'(x)/P(x)`.
    fn log_derivative(&self, x: f64) -> f64 {
        match *self {
            Kernel::Gaussian => -x,
            Kernel::Jacobi { ea, eb } => -ea / (1.0 - x) + eb / (1.0 + x),
            Kernel::Laguerre { e } => -0.5 + e / x,
        }
    }
}

/// Transformed solution `Φ_n(y)` of a family under a coordinate change.
#[derive(Clone, Debug)]
pub struct TransformedSolution {
    kernel: Kernel,
    poly: F64Poly,
    dpoly: F64Poly,
    den: F64Poly,
    dden: F64Poly,
    cc: CoordinateChange,
    scale: f64,
}

impl TransformedSolution {
    pub fn eval(&self, y: f64) -> Result<f64> {
        if !self.cc.domain.contains(y) {
            return Err(Error::DomainError(format!("y = {y} outside {}", self.cc.domain)));
        }
        Ok(self.value(y))
    }

    /// Evaluation without domain checks.
    pub fn value(&self, y: f64) -> f64 {
        self.value_dd(DD::from_f64(y))
    }

    /// Evaluation at the double-double abscissa `y`.
    ///
    /// `x(y)` is formed in double-double and fed to the polynomial and kernel
    /// factors to first order, so rounding of the abscissa does not leak into
    /// finite-difference stencils.
    fn value_dd(&self, y: DD) -> f64 {
        let m = &self.cc.map;
        let x = m.value_dd(y);
        let (xh, xl) = (x.hi, x.lo);
        let p = self.kernel.value(xh);
        if p == 0.0 || !p.is_finite() {
            return if p == 0.0 { 0.0 } else { f64::NAN };
        }
        let p = p * (1.0 + self.kernel.log_derivative(xh) * xl);
        let num = self.poly.eval(xh) + self.dpoly.eval(xh) * xl;
        let den = self.den.eval(xh) + self.dden.eval(xh) * xl;
        let d1 = match *m {
            SmoothMap::Linear { c } => c,
            SmoothMap::Exponential { s } => s * (xh + xl),
            SmoothMap::QuadraticHalf => y.hi + y.lo,
        };
        self.scale * p * num / den / d1.abs().sqrt()
    }

    /// Analytic `dΦ/dy`.
    pub fn derivative(&self, y: f64) -> f64 {
        let m = &self.cc.map;
        let x = m.value(y);
        let p = self.kernel.value(x);
        if p == 0.0 {
            return 0.0;
        }
        let (x1, x2) = (m.d1(y), m.d2(y));
        let (xp, dxp, d, dd) = (self.poly.eval(x), self.dpoly.eval(x), self.den.eval(x), self.dden.eval(x));
        // d/dx [P X / D] = P [ (P'/P) X / D + (X' D - X D') / D² ]
        let dx_part = p * (self.kernel.log_derivative(x) * xp / d + (dxp * d - xp * dd) / (d * d));
        let base = p * xp / d;
        self.scale * (x1 * dx_part - 0.5 * x2 / x1 * base) / x1.abs().sqrt()
    }

    /// Multiplies the solution by a constant.
    pub fn scaled(mut self, k: f64) -> Self {
        self.scale *= k;
        self
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn coordinate_change(&self) -> &CoordinateChange {
        &self.cc
    }

    /// `|P(x)/D(x)|² · |x'|^{-1}`, the squared prefactor of `X_n` in `Φ`.
    pub fn prefactor_squared(&self, y: f64) -> f64 {
        let x = self.cc.map.value(y);
        let v = self.kernel.value(x) / self.den.eval(x);
        v * v / self.cc.map.d1(y).abs()
    }
}

fn is_integer(v: f64) -> bool {
    v == v.floor()
}

pub fn transform_solution(family: &XFamily, n: i64, cc: &CoordinateChange) -> Result<TransformedSolution> {
    let poly = family.polynomial(n)?.to_f64();
    let den = family.denominator()?.to_f64();
    let kernel = match family {
        XFamily::Hermite { .. } => Kernel::Gaussian,
        XFamily::Jacobi { a, b, .. } => {
            let (ea, eb) = ((rat_to_f64(a) + 1.0) / 2.0, (rat_to_f64(b) + 1.0) / 2.0);
            let outside = cc.image.lo < -1.0 || cc.image.hi > 1.0;
            if outside && !(is_integer(ea) && is_integer(eb)) {
                return Err(Error::ComplexPrefactor(format!(
                    "(1-x)^{ea} (1+x)^{eb} is not real on {}",
                    cc.image
                )));
            }
            Kernel::Jacobi { ea, eb }
        }
        XFamily::Laguerre { alpha, .. } => {
            let e = (rat_to_f64(alpha) + 1.0) / 2.0;
            if cc.image.lo < 0.0 && !is_integer(e) {
                return Err(Error::ComplexPrefactor(format!("x^{e} is not real on {}", cc.image)));
            }
            Kernel::Laguerre { e }
        }
    };
    Ok(TransformedSolution {
        kernel,
        dpoly: poly.derivative(),
        poly,
        dden: den.derivative(),
        den,
        cc: *cc,
        scale: 1.0,
    })
}

/// `Q` and `Φ_n` for one family member under one coordinate change.
#[derive(Clone, Debug)]
pub struct TransformedSystem {
    pub q: PotentialCoefficient,
    pub phi: TransformedSolution,
}

impl TransformedSystem {
    pub fn new(family: &XFamily, n: i64, cc: &CoordinateChange) -> Result<Self> {
        let ode = ode_coefficients(family, n)?;
        Ok(TransformedSystem {
            q: transform_potential_coefficient(&ode, cc),
            phi: transform_solution(family, n, cc)?,
        })
    }
}

/// Finite-difference step used by [`check_transformed`].
pub fn fd_step(y: f64) -> f64 {
    1e-4f64.max(1e-4 * y.abs())
}

/// Five-point central second derivative.
pub fn second_derivative<F: Fn(f64) -> f64>(f: &F, y: f64, h: f64) -> f64 {
    (-f(y + 2.0 * h) + 16.0 * f(y + h) - 30.0 * f(y) + 16.0 * f(y - h) - f(y - 2.0 * h)) / (12.0 * h * h)
}

/// Five-point central first derivative.
pub fn first_derivative<F: Fn(f64) -> f64>(f: &F, y: f64, h: f64) -> f64 {
    (-f(y + 2.0 * h) + 8.0 * f(y + h) - 8.0 * f(y - h) + f(y - 2.0 * h)) / (12.0 * h)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResidualReport {
    pub max_residual: f64,
    pub at: f64,
    pub passed: bool,
}

/// Function sampled by finite-difference stencils at `y + dy`.
pub trait Profile {
    fn at(&self, y: f64, dy: f64) -> f64;
}

impl<F: Fn(f64) -> f64> Profile for F {
    fn at(&self, y: f64, dy: f64) -> f64 {
        self(y + dy)
    }
}

impl Profile for TransformedSolution {
    /// Evaluates at the exact sum `y + dy`.
    fn at(&self, y: f64, dy: f64) -> f64 {
        self.value_dd(DD::sum(y, dy))
    }
}

fn stencil_second_derivative<P: Profile + ?Sized>(phi: &P, y: f64, h: f64) -> f64 {
    let f = |k: f64| phi.at(y, k * h);
    (-f(2.0) + 16.0 * f(1.0) - 30.0 * f(0.0) + 16.0 * f(-1.0) - f(-2.0)) / (12.0 * h * h)
}

/// Max over `grid` of `|Φ'' + QΦ| / (1 + |Φ|)`, with `Φ''` by five-point differences
/// of step [`fd_step`].
pub fn check_transformed<Q, P>(q: Q, phi: &P, grid: &[f64], tol: f64) -> ResidualReport
where
    Q: Fn(f64) -> f64,
    P: Profile + ?Sized,
{
    let mut worst = ResidualReport {
        max_residual: 0.0,
        at: f64::NAN,
        passed: true,
    };
    for &y in grid {
        let v = phi.at(y, 0.0);
        let r = (stencil_second_derivative(phi, y, fd_step(y)) + q(y) * v).abs() / (1.0 + v.abs());
        if !(r <= worst.max_residual) {
            worst.max_residual = r;
            worst.at = y;
        }
    }
    worst.passed = worst.max_residual < tol;
    worst
}
