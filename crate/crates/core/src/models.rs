//! The four worked spectral models.
//!
//! | id          | family                     | x(y)            | E_n            |
//! |-------------|----------------------------|-----------------|----------------|
//! | `hermite12` | X-Hermite, λ = {1,2}       | `y/√(n+1)`      | `2 − 5/(n+1)`  |
//! | `jacobi111` | X₁-Jacobi, a = b = 1       | `exp(−y/n)`     | `−1/(4n²)`     |
//! | `laguerre1` | X₁-Laguerre I, α = 5       | `exp(y/n²)`     | `−29/(4n⁴)`    |
//! | `dirac`     | X₁-Laguerre II, α = α(E)   | `y²/2`          | `2n − 1`       |
//!
//! Wavefunctions come out of [`transform_solution`] multiplied by a fixed
//! constant `κ_n` so that they coincide with the closed forms
//!
//! ```text
//! hermite12  Φ_n = e^{−x²/2} X_n(x) / W[H₁,H₂](x) · (n+1)^{1/4},             x = y/√(n+1)
//! jacobi111  Φ_n = 4 e^{−3y/(2n)} (e^{2y/n} − 1) X_n(e^{−y/n})
//! laguerre1  Φ_n = ½ e^{5y/(2n²) − x/2} X_n(x) / (x + 5),                     x = e^{y/n²}
//! dirac      Φ_n = y^{α+½} e^{−y²/4} X_n(y²/2) / (y² + 2α)
//! ```

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::ptransform::{
    transform_potential_coefficient, transform_solution, CoordinateChange, PotentialCoefficient, SmoothMap,
    TransformedSolution,
};
use crate::ratpoly::{int, rat, rat_to_f64, BigRat};
use crate::xops::{ode_coefficients, LambdaSeq, LaguerreType, XFamily};

/// Rule assigning the Laguerre parameter of the Dirac base model from the energy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AlphaRule {
    /// `α = E`.
    Energy,
    /// `α` held fixed.
    Fixed(f64),
}

impl AlphaRule {
    pub fn alpha(&self, e: f64) -> f64 {
        match *self {
            AlphaRule::Energy => e,
            AlphaRule::Fixed(a) => a,
        }
    }

    pub fn d_alpha_d_e(&self) -> f64 {
        match self {
            AlphaRule::Energy => 1.0,
            AlphaRule::Fixed(_) => 0.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ModelKind {
    Hermite12,
    Jacobi111,
    Laguerre1,
    Dirac(AlphaRule),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralModel {
    pub kind: ModelKind,
}

pub const MODEL_IDS: [&str; 4] = ["hermite12", "jacobi111", "laguerre1", "dirac"];

pub fn model_hermite12() -> SpectralModel {
    SpectralModel {
        kind: ModelKind::Hermite12,
    }
}

pub fn model_jacobi111() -> SpectralModel {
    SpectralModel {
        kind: ModelKind::Jacobi111,
    }
}

pub fn model_laguerre1_a5m1() -> SpectralModel {
    SpectralModel {
        kind: ModelKind::Laguerre1,
    }
}

pub fn model_dirac_base(alpha_rule: AlphaRule) -> Result<SpectralModel> {
    // E_n = 2n − 1 ≥ 1 over the index set.
    let smallest = match alpha_rule {
        AlphaRule::Energy => 1.0,
        AlphaRule::Fixed(a) => a,
    };
    if !(smallest > 0.0) {
        return Err(Error::ParameterOutOfRange(format!(
            "Dirac base model needs α > 0 on the spectrum, got α = {smallest}"
        )));
    }
    Ok(SpectralModel {
        kind: ModelKind::Dirac(alpha_rule),
    })
}

/// Integer `r` with `r^k = v`, if `v` is a nonnegative integer perfect power.
fn exact_root(v: &BigRat, k: u32) -> Option<BigInt> {
    if !v.is_integer() || v.is_negative() {
        return None;
    }
    let n = v.to_integer();
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == n).then_some(r)
}

impl SpectralModel {
    pub fn from_id(id: &str) -> Result<Self> {
        match id {
            "hermite12" => Ok(model_hermite12()),
            "jacobi111" => Ok(model_jacobi111()),
            "laguerre1" => Ok(model_laguerre1_a5m1()),
            "dirac" => model_dirac_base(AlphaRule::Energy),
            _ => Err(Error::UnsupportedModel(format!(
                "unknown model '{id}', expected one of {}",
                MODEL_IDS.join(", ")
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ModelKind::Hermite12 => "hermite12",
            ModelKind::Jacobi111 => "jacobi111",
            ModelKind::Laguerre1 => "laguerre1",
            ModelKind::Dirac(_) => "dirac",
        }
    }

    pub fn domain(&self) -> Interval {
        match self.kind {
            ModelKind::Hermite12 | ModelKind::Laguerre1 => Interval::REAL_LINE,
            ModelKind::Jacobi111 | ModelKind::Dirac(_) => Interval::POSITIVE,
        }
    }

    /// Smallest allowed index.
    pub fn first_index(&self) -> i64 {
        match self.kind {
            ModelKind::Hermite12 => 0,
            ModelKind::Jacobi111 => 2,
            ModelKind::Laguerre1 | ModelKind::Dirac(_) => 1,
        }
    }

    pub fn check_index(&self, n: i64) -> Result<()> {
        match self.kind {
            ModelKind::Hermite12 => self.family(n.max(0)).and_then(|f| f.check_index(n)),
            _ if n < self.first_index() => Err(Error::IndexExcluded {
                n,
                reason: format!("the {} index set n >= {}", self.name(), self.first_index()),
            }),
            _ => Ok(()),
        }
    }

    /// The first `count` allowed indices.
    pub fn allowed_indices(&self, count: usize) -> Vec<i64> {
        (self.first_index()..)
            .filter(|&n| self.check_index(n).is_ok())
            .take(count)
            .collect()
    }

    pub fn energy_exact(&self, n: i64) -> Result<BigRat> {
        self.check_index(n)?;
        Ok(match self.kind {
            ModelKind::Hermite12 => int(2) - rat(5, n + 1),
            ModelKind::Jacobi111 => rat(-1, 4 * n * n),
            ModelKind::Laguerre1 => BigRat::new(BigInt::from(-29), BigInt::from(4) * num_traits::pow(BigInt::from(n), 4)),
            ModelKind::Dirac(_) => int(2 * n - 1),
        })
    }

    pub fn energy(&self, n: i64) -> Result<f64> {
        Ok(rat_to_f64(&self.energy_exact(n)?))
    }

    /// Inverts the spectrum exactly; fails unless `e` is an eigenvalue.
    pub fn index_from_energy_exact(&self, e: &BigRat) -> Result<i64> {
        let not_eigen = || Error::DomainError(format!("E = {e} is not in the {} spectrum", self.name()));
        let n: Option<BigInt> = match self.kind {
            ModelKind::Hermite12 => {
                let two = int(2);
                if *e == two {
                    None
                } else {
                    let v = -(e + int(3)) / (e - two);
                    v.is_integer().then(|| v.to_integer())
                }
            }
            ModelKind::Jacobi111 => {
                if !e.is_negative() {
                    None
                } else {
                    exact_root(&(-(e * int(4)).recip()), 2)
                }
            }
            ModelKind::Laguerre1 => {
                if !e.is_negative() {
                    None
                } else {
                    exact_root(&(int(-29) / (e * int(4))), 4)
                }
            }
            ModelKind::Dirac(_) => {
                let v = (e + BigRat::one()) / int(2);
                v.is_integer().then(|| v.to_integer())
            }
        };
        let n = n.and_then(|n| n.to_i64()).ok_or_else(not_eigen)?;
        self.check_index(n)?;
        if self.energy_exact(n)? != *e {
            return Err(not_eigen());
        }
        Ok(n)
    }

    /// Continuous inverse `n(E)`.
    pub fn index_from_energy(&self, e: f64) -> f64 {
        match self.kind {
            ModelKind::Hermite12 => -(e + 3.0) / (e - 2.0),
            ModelKind::Jacobi111 => (-0.25 / e).sqrt(),
            ModelKind::Laguerre1 => (-29.0 / e).powf(0.25) / std::f64::consts::SQRT_2,
            ModelKind::Dirac(_) => 0.5 * (e + 1.0),
        }
    }

    /// Energy-dependent potential `V(y, E)`.
    pub fn potential(&self, y: f64, e: f64) -> f64 {
        match self.kind {
            ModelKind::Hermite12 => {
                let s = e - 2.0;
                let u = 2.0 * y * y * s - 5.0;
                y * y * s * s / 25.0 + 8.0 * s / u + 80.0 * s / (u * u)
            }
            ModelKind::Jacobi111 => {
                let r = (-e).sqrt();
                -(1.0 + 2.0 * r) / (4.0 * r * y).exp_m1()
            }
            ModelKind::Laguerre1 => {
                let s = (-4.0 * e / 29.0).sqrt();
                let t = (s * y).exp();
                let s2 = s * s;
                s2 * t * t / 4.0 - s.powf(1.5) * t - 2.0 * s2 * t - 15.0 * s2 / (t + 5.0)
                    + 50.0 * s2 / ((t + 5.0) * (t + 5.0))
            }
            ModelKind::Dirac(rule) => {
                let a = rule.alpha(e);
                let y2 = y * y;
                let d = y2 + 2.0 * a;
                -a - (1.0 - 4.0 * a * a) / (4.0 * y2) + y2 / 4.0 - 4.0 / d + 8.0 * y2 / (d * d)
            }
        }
    }

    /// Analytic `∂V/∂E`.
    pub fn dv_de(&self, y: f64, e: f64) -> f64 {
        match self.kind {
            ModelKind::Hermite12 => {
                let s = e - 2.0;
                let y2 = y * y;
                let u = 2.0 * y2 * s - 5.0;
                let (u2, u3) = (u * u, u * u * u);
                2.0 * y2 * s / 25.0 + 8.0 / u - 16.0 * y2 * s / u2 + 80.0 / u2 - 320.0 * y2 * s / u3
            }
            ModelKind::Jacobi111 => {
                let r = (-e).sqrt();
                let tm1 = (4.0 * r * y).exp_m1();
                let t = tm1 + 1.0;
                let dv_dr = -2.0 / tm1 + (1.0 + 2.0 * r) * 4.0 * y * t / (tm1 * tm1);
                -dv_dr / (2.0 * r)
            }
            ModelKind::Laguerre1 => {
                let s = (-4.0 * e / 29.0).sqrt();
                let t = (s * y).exp();
                let (s2, p) = (s * s, t + 5.0);
                let yt = y * t;
                let dv_ds = 0.5 * s * t * t + 0.5 * s2 * yt * t - 1.5 * s.sqrt() * t - s.powf(1.5) * yt - 4.0 * s * t
                    - 2.0 * s2 * yt
                    - 30.0 * s / p
                    + 15.0 * s2 * yt / (p * p)
                    + 100.0 * s / (p * p)
                    - 100.0 * s2 * yt / (p * p * p);
                dv_ds * (-2.0 / (29.0 * s))
            }
            ModelKind::Dirac(rule) => {
                let a = rule.alpha(e);
                let y2 = y * y;
                let d = y2 + 2.0 * a;
                let dv_da = -1.0 + 2.0 * a / y2 + 8.0 / (d * d) - 32.0 * y2 / (d * d * d);
                dv_da * rule.d_alpha_d_e()
            }
        }
    }

    /// Central-difference `∂V/∂E` with step `10⁻⁶·|E|`, for cross-checking [`Self::dv_de`].
    pub fn dv_de_numeric(&self, y: f64, e: f64) -> f64 {
        let h = 1e-6 * e.abs().max(1e-300);
        (self.potential(y, e + h) - self.potential(y, e - h)) / (2.0 * h)
    }

    /// Polynomial family behind the model at index `n`.
    pub fn family(&self, n: i64) -> Result<XFamily> {
        match self.kind {
            ModelKind::Hermite12 => Ok(XFamily::hermite(LambdaSeq::new(vec![1, 2])?)),
            ModelKind::Jacobi111 => XFamily::jacobi(1, int(1), int(1)),
            ModelKind::Laguerre1 => XFamily::laguerre(LaguerreType::I, 1, int(5)),
            ModelKind::Dirac(rule) => {
                let a = rule.alpha((2 * n - 1) as f64);
                let alpha = BigRat::from_float(a)
                    .ok_or_else(|| Error::ParameterOutOfRange(format!("α = {a} is not finite")))?;
                XFamily::laguerre(LaguerreType::II, 1, alpha)
            }
        }
    }

    pub fn coordinate_change(&self, n: i64) -> Result<CoordinateChange> {
        self.check_index(n)?;
        let nf = n as f64;
        let (map, target) = match self.kind {
            ModelKind::Hermite12 => (SmoothMap::Linear { c: 1.0 / (nf + 1.0).sqrt() }, Interval::REAL_LINE),
            ModelKind::Jacobi111 => (SmoothMap::Exponential { s: -1.0 / nf }, Interval::new(-1.0, 1.0)),
            ModelKind::Laguerre1 => (SmoothMap::Exponential { s: 1.0 / (nf * nf) }, Interval::POSITIVE),
            ModelKind::Dirac(_) => (SmoothMap::QuadraticHalf, Interval::POSITIVE),
        };
        CoordinateChange::new(map, self.domain(), target)
    }

    /// Constant relating `Φ_n` to the bare point-transformed solution.
    pub fn kappa(&self, n: i64) -> f64 {
        let nf = n as f64;
        match self.kind {
            ModelKind::Hermite12 => 1.0,
            ModelKind::Jacobi111 => -4.0 / nf.sqrt(),
            ModelKind::Laguerre1 => 1.0 / (2.0 * nf),
            ModelKind::Dirac(rule) => -(2f64).powf(0.5 * (rule.alpha(2.0 * nf - 1.0) - 1.0)),
        }
    }

    pub fn wavefunction(&self, n: i64) -> Result<TransformedSolution> {
        let cc = self.coordinate_change(n)?;
        Ok(transform_solution(&self.family(n)?, n, &cc)?.scaled(self.kappa(n)))
    }

    /// `Q(y)` of the transformed equation at index `n`.
    pub fn q_coefficient(&self, n: i64) -> Result<PotentialCoefficient> {
        let cc = self.coordinate_change(n)?;
        let ode = ode_coefficients(&self.family(n)?, n)?;
        Ok(transform_potential_coefficient(&ode, &cc))
    }

    /// Closed range on which the model's figures are drawn at index `n`.
    pub fn plot_range(&self, n: i64) -> (f64, f64) {
        let nf = n as f64;
        match self.kind {
            ModelKind::Hermite12 => {
                let w = 4.0 * (nf + 1.0).sqrt();
                (-w, w)
            }
            ModelKind::Jacobi111 => (0.05, 10.0 * nf),
            ModelKind::Laguerre1 => (-8.0 * nf * nf, 4.0 * nf * nf),
            ModelKind::Dirac(_) => (0.2, 8.0),
        }
    }

    /// `points` equally spaced abscissae over [`Self::plot_range`].
    pub fn plot_grid(&self, n: i64, points: usize) -> Vec<f64> {
        let (lo, hi) = self.plot_range(n);
        linspace(lo, hi, points)
    }
}

pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => vec![],
        1 => vec![lo],
        _ => (0..points)
            .map(|k| {
                if k + 1 == points {
                    hi
                } else {
                    lo + (hi - lo) * k as f64 / (points - 1) as f64
                }
            })
            .collect(),
    }
}

/// Grid `lo, lo + step, …` up to `hi` inclusive (with a relative slack of 1e-9 steps).
pub fn step_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::DomainError(format!("step must be positive, got {step}")));
    }
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(Error::DomainError(format!("invalid range {lo}:{hi}")));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| lo + step * k as f64).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Potential,
    Density,
    Wavefunction,
    Q,
}

impl Quantity {
    pub fn tag(&self) -> &'static str {
        match self {
            Quantity::Potential => "potential",
            Quantity::Density => "density",
            Quantity::Wavefunction => "wavefunction",
            Quantity::Q => "q",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "potential" => Ok(Quantity::Potential),
            "density" => Ok(Quantity::Density),
            "wavefunction" => Ok(Quantity::Wavefunction),
            "q" => Ok(Quantity::Q),
            _ => Err(Error::DomainError(format!(
                "unknown quantity '{s}', expected potential, density, wavefunction or q"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableSeries {
    pub abscissae: Vec<f64>,
    pub values: Vec<f64>,
    pub model: String,
    pub n: i64,
    pub quantity: Quantity,
}

/// Options used only by the `q` quantity of the Dirac model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiracOptions {
    pub mass: f64,
    pub variant: crate::diracmap::QVariant,
}

impl Default for DiracOptions {
    fn default() -> Self {
        DiracOptions {
            mass: 1.0,
            variant: crate::diracmap::QVariant::LogDerivative,
        }
    }
}

pub fn tabulate(model: &SpectralModel, quantity: Quantity, n: i64, range: (f64, f64, f64)) -> Result<TableSeries> {
    tabulate_with(model, quantity, n, range, &DiracOptions::default())
}

pub fn tabulate_with(
    model: &SpectralModel,
    quantity: Quantity,
    n: i64,
    (lo, hi, step): (f64, f64, f64),
    dirac: &DiracOptions,
) -> Result<TableSeries> {
    model.check_index(n)?;
    let ys = step_grid(lo, hi, step)?;
    let j = model.domain();
    if lo < j.lo || hi > j.hi {
        return Err(Error::DomainError(format!(
            "range [{lo}, {hi}] leaves the closure of {j} for {}",
            model.name()
        )));
    }
    let values: Vec<f64> = match quantity {
        Quantity::Potential => {
            let e = model.energy(n)?;
            ys.iter().map(|&y| model.potential(y, e)).collect()
        }
        Quantity::Density | Quantity::Wavefunction => {
            let phi = model.wavefunction(n)?;
            ys.iter()
                .map(|&y| {
                    let v = phi.value(y);
                    if quantity == Quantity::Density {
                        v * v
                    } else {
                        v
                    }
                })
                .collect()
        }
        Quantity::Q => {
            if !matches!(model.kind, ModelKind::Dirac(AlphaRule::Energy)) {
                return Err(Error::UnsupportedModel(format!(
                    "quantity q is defined for the dirac model only, not {}",
                    model.name()
                )));
            }
            let pot = crate::diracmap::build_q(n, dirac.mass, dirac.variant, 0.0, 0.0)?;
            ys.iter().map(|&y| pot.eval(y)).collect::<Result<Vec<_>>>()?
        }
    };
    if let Some((y, v)) = ys.iter().zip(&values).find(|(_, v)| !v.is_finite()) {
        return Err(Error::DomainError(format!("{} is not finite at y = {y} (value {v})", quantity.tag())));
    }
    Ok(TableSeries {
        abscissae: ys,
        values,
        model: model.name().to_string(),
        n,
        quantity,
    })
}
