//! Dirac system `iσ₂Ψ' + (Mσ₃ + qσ₁ − ε)Ψ = 0` built on the `dirac` base model.
//!
//! With `α = 2n − 1`, the auxiliary solution at degree ½ is
//! `Φ_½(y) = y^{α+½} e^{−y²/4} X_½(y²/2) / (y² + 2α)` where
//!
//! ```text
//! X_ν(x) = x L₁^{−α−1}(x) L_{ν−2}^{α+2}(x) − α L₁^{−α−2}(x) L_{ν−1}^{α+1}(x)
//! ```
//!
//! and `q = (ln Φ_½)'`. The spinor is `ψ₁ = Φ_n`, `ψ₂ = (qψ₁ − ψ₁')/(M + ε)`,
//! with `ε = √(2n − 1 + M²)`.

use crate::error::{Error, Result};
use crate::models::{model_dirac_base, AlphaRule};
use crate::ptransform::{fd_step, TransformedSolution};
use crate::quad::{quad, QuadratureSettings};
use crate::specfun::{laguerre_nu_with, AccuracyBudget};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QVariant {
    /// `q = d/dy ln Φ_½`, whose leading rational term is `(α+½)/y`.
    LogDerivative,
    /// The same expression with `(2α+1)/y = (4n−1)/y` as leading term.
    Literal,
}

impl QVariant {
    pub fn tag(&self) -> &'static str {
        match self {
            QVariant::LogDerivative => "log",
            QVariant::Literal => "literal",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "log" | "log_derivative" => Ok(QVariant::LogDerivative),
            "literal" => Ok(QVariant::Literal),
            _ => Err(Error::DomainError(format!("unknown q variant '{s}', expected log or literal"))),
        }
    }
}

/// `Mσ₃ + q(y)σ₁` for index `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoscalarPotential {
    pub mass: f64,
    pub variant: QVariant,
    /// Coefficient of the second solution mixed into `Φ_½` (experimental when nonzero).
    pub big_c: f64,
    pub small_c: f64,
    pub n: i64,
    pub alpha: f64,
}

/// `(X_ν(x), X_ν'(x))` for the type-II family with `m = 1`.
fn x_aux(nu: f64, alpha: f64, x: f64) -> Result<(f64, f64)> {
    let b = AccuracyBudget::tight();
    let l = |k: f64, a: f64| laguerre_nu_with(nu + k, alpha + a, x, &b);
    let (l2, l1, l3) = (l(-2.0, 2.0)?, l(-1.0, 1.0)?, l(-3.0, 3.0)?);
    let p = -alpha - x;
    let r = -alpha - 1.0 - x;
    let value = x * p * l2 - alpha * r * l1;
    let deriv = (p - x) * l2 - x * p * l3 - alpha * (-l1 - r * l2);
    Ok((value, deriv))
}

impl PseudoscalarPotential {
    /// `q(y)`.
    pub fn eval(&self, y: f64) -> Result<f64> {
        if !(y > 0.0) {
            return Err(Error::DomainError(format!("q is defined for y > 0, got {y}")));
        }
        let a = self.alpha;
        let (xv, xd) = x_aux(0.5, a, 0.5 * y * y)?;
        let lead = match self.variant {
            QVariant::LogDerivative => (a + 0.5) / y,
            QVariant::Literal => (2.0 * a + 1.0) / y,
        };
        let mut q = lead - 2.0 * y / (y * y + 2.0 * a) - 0.5 * y + y * xd / xv;
        if self.big_c != 0.0 {
            q += self.second_solution_term(y)?;
        }
        if !q.is_finite() {
            return Err(Error::NonConvergent(format!("q is not finite at y = {y}")));
        }
        Ok(q)
    }

    /// `Φ_½(y)`.
    pub fn aux(&self, y: f64) -> Result<f64> {
        let a = self.alpha;
        let (xv, _) = x_aux(0.5, a, 0.5 * y * y)?;
        Ok(y.powf(a + 0.5) * (-0.25 * y * y).exp() * xv / (y * y + 2.0 * a))
    }

    /// `C / (Φ_½² (c + C ∫₁^y Φ_½⁻²))`, the change in `q` from mixing in the second solution.
    fn second_solution_term(&self, y: f64) -> Result<f64> {
        let inv2 = |t: f64| self.aux(t).map(|p| 1.0 / (p * p)).unwrap_or(f64::NAN);
        let s = QuadratureSettings::default();
        let integral = if y == 1.0 {
            0.0
        } else if y > 1.0 {
            quad(inv2, 1.0, y, &s)?.value
        } else {
            -quad(inv2, y, 1.0, &s)?.value
        };
        let p = self.aux(y)?;
        Ok(self.big_c / (p * p * (self.small_c + self.big_c * integral)))
    }
}

pub fn build_q(n: i64, mass: f64, variant: QVariant, big_c: f64, small_c: f64) -> Result<PseudoscalarPotential> {
    if n < 1 {
        return Err(Error::ParameterOutOfRange(format!("Dirac index must be >= 1, got {n}")));
    }
    if !(mass > 0.0) {
        return Err(Error::ParameterOutOfRange(format!("mass must be positive, got {mass}")));
    }
    Ok(PseudoscalarPotential {
        mass,
        variant,
        big_c,
        small_c,
        n,
        alpha: AlphaRule::Energy.alpha((2 * n - 1) as f64),
    })
}

pub fn dirac_energy(n: i64, mass: f64) -> Result<f64> {
    if n < 1 || !(mass > 0.0) {
        return Err(Error::ParameterOutOfRange(format!(
            "need n >= 1 and M > 0, got n = {n}, M = {mass}"
        )));
    }
    Ok(((2 * n - 1) as f64 + mass * mass).sqrt())
}

#[derive(Clone, Debug)]
pub struct Spinor {
    pub n: i64,
    pub epsilon: f64,
    phi: TransformedSolution,
    pot: PseudoscalarPotential,
}

impl Spinor {
    pub fn psi1(&self, y: f64) -> f64 {
        self.phi.value(y)
    }

    /// Analytic `ψ₁'`.
    pub fn psi1_prime(&self, y: f64) -> f64 {
        self.phi.derivative(y)
    }

    pub fn psi2(&self, y: f64) -> Result<f64> {
        let q = self.pot.eval(y)?;
        Ok((q * self.psi1(y) - self.psi1_prime(y)) / (self.pot.mass + self.epsilon))
    }
}

pub fn spinor(n: i64, mass: f64, pot: &PseudoscalarPotential) -> Result<Spinor> {
    if pot.n != n || pot.mass != mass {
        return Err(Error::ParameterOutOfRange(format!(
            "potential built for n = {}, M = {}, spinor requested for n = {n}, M = {mass}",
            pot.n, pot.mass
        )));
    }
    let phi = model_dirac_base(AlphaRule::Energy)?.wavefunction(n)?;
    Ok(Spinor {
        n,
        epsilon: dirac_energy(n, mass)?,
        phi,
        pot: pot.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RowResidual {
    pub max: f64,
    pub at: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiracResidualReport {
    /// `|ψ₂' + (M − ε)ψ₁ + qψ₂|`.
    pub row1: RowResidual,
    /// `|−ψ₁' + qψ₁ − (M + ε)ψ₂|`.
    pub row2: RowResidual,
}

/// Maximum residuals of both rows over `grid`; `ψ₂'` by five-point differences.
pub fn dirac_residual(sp: &Spinor, pot: &PseudoscalarPotential, grid: &[f64]) -> Result<DiracResidualReport> {
    if let Some(&y) = grid.iter().find(|&&y| !(y > 0.0)) {
        return Err(Error::DomainError(format!("residual grid must lie in (0, ∞), found {y}")));
    }
    let (m, e) = (pot.mass, sp.epsilon);
    let mut row1 = RowResidual { max: 0.0, at: f64::NAN };
    let mut row2 = row1;
    for &y in grid {
        let q = pot.eval(y)?;
        let (p1, p2) = (sp.psi1(y), sp.psi2(y)?);
        let h = fd_step(y).min(0.25 * y);
        let mut st = [0.0; 4];
        for (slot, k) in st.iter_mut().zip([-2.0, -1.0, 1.0, 2.0]) {
            *slot = sp.psi2(y + k * h)?;
        }
        let d2 = (st[0] - 8.0 * st[1] + 8.0 * st[2] - st[3]) / (12.0 * h);
        let r1 = (d2 + (m - e) * p1 + q * p2).abs();
        let r2 = (-sp.psi1_prime(y) + q * p1 - (m + e) * p2).abs();
        if !(r1 <= row1.max) {
            row1 = RowResidual { max: r1, at: y };
        }
        if !(r2 <= row2.max) {
            row2 = RowResidual { max: r2, at: y };
        }
    }
    Ok(DiracResidualReport { row1, row2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::linspace;
    use crate::ptransform::first_derivative;

    #[test]
    fn energies() {
        assert_eq!(dirac_energy(1, 1.0).unwrap(), 2f64.sqrt());
        assert!((dirac_energy(1, 1e-9).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(dirac_energy(5, 2.0).unwrap(), 13f64.sqrt());
        assert!(dirac_energy(0, 1.0).is_err());
    }

    #[test]
    fn variants_differ_by_leading_term() {
        for n in 1..=3 {
            let a = build_q(n, 1.0, QVariant::LogDerivative, 0.0, 0.0).unwrap();
            let b = build_q(n, 1.0, QVariant::Literal, 0.0, 0.0).unwrap();
            for y in [0.3, 1.0, 2.5, 7.0] {
                let d = b.eval(y).unwrap() - a.eval(y).unwrap();
                assert!((d - (a.alpha + 0.5) / y).abs() < 1e-12 * (1.0 + d.abs()));
            }
        }
    }

    #[test]
    fn log_variant_is_log_derivative_of_aux() {
        let p = build_q(2, 1.0, QVariant::LogDerivative, 0.0, 0.0).unwrap();
        for y in [0.5, 1.5, 4.0] {
            let fd = first_derivative(&|t| p.aux(t).unwrap().ln(), y, 1e-4);
            assert!((p.eval(y).unwrap() - fd).abs() < 1e-8);
        }
    }

    #[test]
    fn row_two_holds_by_construction() {
        let pot = build_q(1, 1.0, QVariant::Literal, 0.0, 0.0).unwrap();
        let sp = spinor(1, 1.0, &pot).unwrap();
        let r = dirac_residual(&sp, &pot, &linspace(0.2, 8.0, 40)).unwrap();
        assert!(r.row2.max < 1e-12, "{r:?}");
        assert!(sp.psi2(1.0).unwrap().is_finite());
    }

    #[test]
    fn zero_in_grid_is_rejected() {
        let pot = build_q(1, 1.0, QVariant::LogDerivative, 0.0, 0.0).unwrap();
        let sp = spinor(1, 1.0, &pot).unwrap();
        assert!(matches!(dirac_residual(&sp, &pot, &[0.0, 1.0]), Err(Error::DomainError(_))));
    }

    #[test]
    fn second_solution_term_vanishes_with_c() {
        let a = build_q(1, 1.0, QVariant::LogDerivative, 0.0, 0.0).unwrap();
        let b = build_q(1, 1.0, QVariant::LogDerivative, 1e-3, 1.0).unwrap();
        let (qa, qb) = (a.eval(2.0).unwrap(), b.eval(2.0).unwrap());
        assert!(qb != qa && (qb - qa).abs() < 1e-1);
    }
}
