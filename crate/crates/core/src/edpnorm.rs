//! Inner product and norm for energy-dependent potentials:
//!
//! ```text
//! ⟨n₂|n₁⟩ = ∫_J [1 − (V(y,E_{n₂}) − V(y,E_{n₁}))/(E_{n₂} − E_{n₁})] Φ_{n₂} Φ_{n₁} dy
//! ‖Φ_n‖   = ∫_J [1 − ∂V/∂E(y,E_n)] Φ_n² dy
//! ```
//!
//! The norm also equals `W[Φ, ∂Φ/∂E](y₀) − W[Φ, ∂Φ/∂E](y₁)` taken at the lower and
//! upper ends of `J`, which needs `Φ` for non-integer index; that route is
//! available for `hermite12` through [`hermite_nu`].

use std::fmt;

use crate::error::{Error, Result};
use crate::models::{ModelKind, SpectralModel};
use crate::quad::{quad, QuadratureSettings};
use crate::specfun::{hermite_nu_with, AccuracyBudget};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Quadrature,
    WronskianLimit,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Quadrature => "quadrature",
            Method::WronskianLimit => "wronskian_limit",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormResult {
    pub value: f64,
    pub error_estimate: f64,
    pub method: Method,
    pub evaluations: usize,
    pub energy: f64,
    pub n: i64,
    /// Finite range actually integrated, or `(−y_far, y_far)` for the Wronskian route.
    pub lo: f64,
    pub hi: f64,
}

pub fn modified_norm(model: &SpectralModel, n: i64, settings: &QuadratureSettings) -> Result<NormResult> {
    let phi = model.wavefunction(n)?;
    let e = model.energy(n)?;
    let j = model.domain();
    let integrand = |y: f64| {
        let v = phi.value(y);
        if v == 0.0 {
            0.0
        } else {
            (1.0 - model.dv_de(y, e)) * v * v
        }
    };
    let r = quad(integrand, j.lo, j.hi, settings).map_err(|err| match err {
        Error::QuadratureNonConvergent(msg) => {
            Error::QuadratureNonConvergent(format!("{} norm of n = {n}: {msg}", model.name()))
        }
        other => other,
    })?;
    Ok(NormResult {
        value: r.value,
        error_estimate: r.error_estimate,
        method: Method::Quadrature,
        evaluations: r.evaluations,
        energy: e,
        n,
        lo: r.lo,
        hi: r.hi,
    })
}

pub fn modified_inner(model: &SpectralModel, n1: i64, n2: i64, settings: &QuadratureSettings) -> Result<f64> {
    if n1 == n2 {
        return Err(Error::DomainError(format!(
            "modified_inner needs distinct indices, got {n1} twice; use modified_norm"
        )));
    }
    let (p1, p2) = (model.wavefunction(n1)?, model.wavefunction(n2)?);
    let (e1, e2) = (model.energy(n1)?, model.energy(n2)?);
    let j = model.domain();
    let integrand = |y: f64| {
        let (a, b) = (p1.value(y), p2.value(y));
        if a == 0.0 || b == 0.0 {
            return 0.0;
        }
        let slope = (model.potential(y, e2) - model.potential(y, e1)) / (e2 - e1);
        (1.0 - slope) * a * b
    };
    Ok(quad(integrand, j.lo, j.hi, settings)?.value)
}

/// Matrix of [`modified_inner`] off the diagonal and [`modified_norm`] on it.
pub fn ortho_matrix(model: &SpectralModel, ns: &[i64], settings: &QuadratureSettings) -> Result<Vec<Vec<f64>>> {
    let k = ns.len();
    let mut m = vec![vec![0.0; k]; k];
    for i in 0..k {
        m[i][i] = modified_norm(model, ns[i], settings)?.value;
        for j in 0..i {
            let v = modified_inner(model, ns[j], ns[i], settings)?;
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    Ok(m)
}

/// `Φ(y; E)` and `∂Φ/∂y` for `hermite12` at the continuous index `ν = n(E)`.
fn hermite12_profile(e: f64, y: f64) -> Result<(f64, f64)> {
    let nu = -(e + 3.0) / (e - 2.0);
    let m = nu + 1.0;
    if !(m > 0.0) {
        return Err(Error::DomainError(format!("E = {e} gives n(E) + 1 = {m} <= 0")));
    }
    let x = y / m.sqrt();
    let b = AccuracyBudget::tight();
    let h = |k: f64| hermite_nu_with(nu - k, x, &b);
    let (h0, h1, h2, h3) = (h(0.0)?, h(1.0)?, h(2.0)?, h(3.0)?);
    let q = 2.0 * x * x + 1.0;
    // X_ν = W[H₁, H₂, H_ν] and its x-derivative
    let xv = 16.0 * (nu * (nu - 1.0) * q * h2 - 2.0 * x * nu * h1 + h0);
    let xd = 32.0 * nu * (nu - 1.0) * (nu - 2.0) * q * h3;
    let d = 8.0 * x * x + 4.0;
    let g = (-0.5 * x * x).exp();
    let val = g * xv / d;
    let dval = g * ((xd - x * xv) / d - 16.0 * x * xv / (d * d));
    let s = m.powf(0.25);
    Ok((s * val, s * dval / m.sqrt()))
}

/// `W[Φ, ∂Φ/∂E](y)` at `E = E_n`, with `∂/∂E` by central differences of step `delta_e`.
pub fn wronskian_at(model: &SpectralModel, n: i64, delta_e: f64, y: f64) -> Result<f64> {
    if model.kind != ModelKind::Hermite12 {
        return Err(Error::UnsupportedModel(format!(
            "{} has no continuous-index wavefunction; the Wronskian route needs hermite12",
            model.name()
        )));
    }
    if !(delta_e > 0.0) || !delta_e.is_finite() {
        return Err(Error::DomainError(format!("energy step must be positive, got {delta_e}")));
    }
    let e = model.energy(n)?;
    let (p, dp) = hermite12_profile(e, y)?;
    let (pp, dpp) = hermite12_profile(e + delta_e, y)?;
    let (pm, dpm) = hermite12_profile(e - delta_e, y)?;
    let pe = (pp - pm) / (2.0 * delta_e);
    let dpe = (dpp - dpm) / (2.0 * delta_e);
    let w = p * dpe - dp * pe;
    if !w.is_finite() {
        return Err(Error::NumericalInstability(format!("Wronskian is not finite at y = {y}")));
    }
    Ok(w)
}

/// Norm as `W(−y_far) − W(y_far)`; `delta_e` defaults to `10⁻⁵|E_n|`.
///
/// The same difference at `2·y_far` must agree to `10⁻³` relative, otherwise
/// [`Error::NumericalInstability`] is returned.
pub fn norm_wronskian_limit(model: &SpectralModel, n: i64, delta_e: Option<f64>, y_far: f64) -> Result<NormResult> {
    if model.kind != ModelKind::Hermite12 {
        return Err(Error::UnsupportedModel(format!(
            "{} has no continuous-index wavefunction; the Wronskian route needs hermite12",
            model.name()
        )));
    }
    if !(y_far > 0.0) {
        return Err(Error::DomainError(format!("y_far must be positive, got {y_far}")));
    }
    let e = model.energy(n)?;
    let de = delta_e.unwrap_or(1e-5 * e.abs());
    let diff = |y: f64| -> Result<f64> { Ok(wronskian_at(model, n, de, -y)? - wronskian_at(model, n, de, y)?) };
    let near = diff(y_far)?;
    let far = diff(2.0 * y_far)?;
    let spread = (near - far).abs();
    if spread > 1e-3 * near.abs().max(far.abs()) {
        return Err(Error::NumericalInstability(format!(
            "Wronskian limits do not stabilize: {near:.9e} at y_far = {y_far}, {far:.9e} at {}",
            2.0 * y_far
        )));
    }
    Ok(NormResult {
        value: near,
        error_estimate: spread,
        method: Method::WronskianLimit,
        evaluations: 12,
        energy: e,
        n,
        lo: -y_far,
        hi: y_far,
    })
}
