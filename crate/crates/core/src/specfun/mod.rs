//! Continuous-degree special functions: Kummer's `M(a, b, x)`, Laguerre functions
//! `L_ν^α(x)` and Hermite functions `H_ν(x)`.
//!
//! `M` is summed as a power series with double-double accumulation. The
//! validated argument range is `|x| ≤ 50`; larger arguments are accepted as long
//! as the series fits the term budget and the result is finite.
//!
//! `H_ν` uses the two-Kummer combination except for non-integer `ν` at `x > 1`,
//! where that combination cancels catastrophically. There the integral
//! representation `H_μ(x) = Γ(-μ)⁻¹ ∫₀^∞ t^{-μ-1} e^{-t²-2xt} dt` (`μ < 0`) seeds
//! the upward recurrence `H_{μ+1} = 2x H_μ - 2μ H_{μ-1}`, which is stable for `x > 0`.


mod gamma;

use std::f64::consts::PI;

pub use gamma::{gamma, gamma_sign, log_gamma, rgamma, sin_pi};

use crate::error::{Error, Result};
use crate::quad::{quad, QuadratureSettings};
use crate::dd::DD;

/// Stopping rule for series evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AccuracyBudget {
    /// Target relative error.
    pub target: f64,
    pub max_terms: usize,
}

impl Default for AccuracyBudget {
    fn default() -> Self {
        AccuracyBudget {
            target: 1e-12,
            max_terms: 10_000,
        }
    }
}

impl AccuracyBudget {
    /// Tighter budget used internally where results feed finite differences.
    pub fn tight() -> Self {
        AccuracyBudget {
            target: 1e-17,
            max_terms: 10_000,
        }
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn is_nonnegative_integer(x: f64) -> bool {
    x >= 0.0 && x == x.floor()
}

/// Confluent hypergeometric function `M(a, b, x) = Σ (a)_k/(b)_k x^k/k!`.
pub fn kummer_m(a: f64, b: f64, x: f64) -> Result<f64> {
    kummer_m_with(a, b, x, &AccuracyBudget::default())
}

pub fn kummer_m_with(a: f64, b: f64, x: f64, budget: &AccuracyBudget) -> Result<f64> {
    if is_nonpositive_integer(b) {
        return Err(Error::PoleInB(b));
    }
    if !(a.is_finite() && b.is_finite() && x.is_finite()) {
        return Err(Error::DomainError(format!("M({a}, {b}, {x}) with non-finite input")));
    }
    // Kummer's transformation keeps non-terminating series positive for x < 0.
    if x < 0.0 && !is_nonpositive_integer(a) {
        return Ok(x.exp() * kummer_series(b - a, b, -x, budget)?);
    }
    kummer_series(a, b, x, budget)
}

fn kummer_series(a: f64, b: f64, x: f64, budget: &AccuracyBudget) -> Result<f64> {
    let xd = DD::from_f64(x);
    let mut term = DD::ONE;
    let mut sum = DD::ONE;
    for k in 0..budget.max_terms {
        let kf = k as f64;
        let num = DD::sum(a, kf).mul(xd);
        let den = DD::sum(b, kf).mul(DD::from_f64(kf + 1.0));
        term = term.mul(num).div(den);
        sum = sum.add(term);
        if term.hi == 0.0 {
            return finite(sum.to_f64(), a, b, x);
        }
        let ratio = ((a + kf + 1.0) * x / ((b + kf + 1.0) * (kf + 2.0))).abs();
        if ratio < 0.5 && term.abs() <= budget.target * sum.abs() {
            return finite(sum.to_f64(), a, b, x);
        }
        if !sum.hi.is_finite() {
            break;
        }
    }
    Err(Error::NonConvergent(format!(
        "M({a}, {b}, {x}) needs more than {} terms",
        budget.max_terms
    )))
}

fn finite(v: f64, a: f64, b: f64, x: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonConvergent(format!("M({a}, {b}, {x}) overflows")))
    }
}

/// Generalized Laguerre function `L_ν^α(x) = Γ(ν+α+1)/(Γ(ν+1)Γ(α+1)) M(-ν, α+1, x)`.
///
/// Returns 0 when `1/Γ(ν+1)` vanishes (`ν` a negative integer), so `L_{-1}^α ≡ 0`.
pub fn laguerre_nu(nu: f64, alpha: f64, x: f64) -> Result<f64> {
    laguerre_nu_with(nu, alpha, x, &AccuracyBudget::default())
}

pub fn laguerre_nu_with(nu: f64, alpha: f64, x: f64, budget: &AccuracyBudget) -> Result<f64> {
    if is_nonpositive_integer(nu + 1.0) {
        return Ok(0.0);
    }
    if is_nonnegative_integer(nu) {
        // binomial(n + α, n) as a product; avoids gamma poles in α
        let n = nu as usize;
        let mut pref = 1.0;
        for j in 1..=n {
            pref *= (alpha + j as f64) / j as f64;
        }
        if is_nonpositive_integer(alpha + 1.0) {
            return Err(Error::PoleInB(alpha + 1.0));
        }
        return Ok(pref * kummer_m_with(-nu, alpha + 1.0, x, budget)?);
    }
    if is_nonpositive_integer(nu + alpha + 1.0) {
        return Err(Error::GammaPole(nu + alpha + 1.0));
    }
    let m = kummer_m_with(-nu, alpha + 1.0, x, budget)?;
    let args = [nu + alpha + 1.0, nu + 1.0, alpha + 1.0];
    let pref = if args.iter().all(|t| t.abs() < 140.0) {
        gamma(args[0])? * rgamma(args[1]) * rgamma(args[2])
    } else {
        let sign = gamma_sign(args[0]) * gamma_sign(args[1]) * gamma_sign(args[2]);
        sign * (log_gamma(args[0])? - log_gamma(args[1])? - log_gamma(args[2])?).exp()
    };
    Ok(pref * m)
}

/// Hermite function `H_ν(x)` (physicists' normalization).
pub fn hermite_nu(nu: f64, x: f64) -> Result<f64> {
    hermite_nu_with(nu, x, &AccuracyBudget::default())
}

pub fn hermite_nu_with(nu: f64, x: f64, budget: &AccuracyBudget) -> Result<f64> {
    if is_nonnegative_integer(nu) || x <= 1.0 {
        hermite_kummer(nu, x, budget)
    } else {
        hermite_integral_ladder(nu, x, budget)
    }
}

fn hermite_kummer(nu: f64, x: f64, budget: &AccuracyBudget) -> Result<f64> {
    let x2 = x * x;
    let r1 = rgamma((1.0 - nu) / 2.0);
    let r2 = rgamma(-nu / 2.0);
    let t1 = if r1 == 0.0 {
        0.0
    } else {
        kummer_m_with(-nu / 2.0, 0.5, x2, budget)? * r1
    };
    let t2 = if r2 == 0.0 || x == 0.0 {
        0.0
    } else {
        2.0 * x * kummer_m_with((1.0 - nu) / 2.0, 1.5, x2, budget)? * r2
    };
    Ok(2f64.powf(nu) * PI.sqrt() * (t1 - t2))
}

/// `H_μ(x)` for `μ < 0`, `x > 0`, from the integral representation with `t = s²`.
fn hermite_integral(mu: f64, x: f64, budget: &AccuracyBudget) -> Result<f64> {
    debug_assert!(mu < 0.0);
    let p = -2.0 * mu - 1.0;
    let settings = QuadratureSettings {
        abs_tol: f64::MIN_POSITIVE,
        rel_tol: budget.target.max(1e-14),
        max_subdivisions: 4000,
        ..QuadratureSettings::default()
    };
    let r = quad(
        |s| {
            let s2 = s * s;
            (-(s2 * s2) - 2.0 * x * s2 + p * s.ln()).exp()
        },
        0.0,
        f64::INFINITY,
        &settings,
    )?;
    Ok(2.0 * r.value * rgamma(-mu))
}

fn hermite_integral_ladder(nu: f64, x: f64, budget: &AccuracyBudget) -> Result<f64> {
    if nu <= -2.0 {
        return hermite_integral(nu, x, budget);
    }
    let mu0 = nu - (nu + 2.0).ceil();
    let mut prev = hermite_integral(mu0, x, budget)?;
    let mut cur = hermite_integral(mu0 + 1.0, x, budget)?;
    let mut mu = mu0 + 1.0;
    while mu < nu - 0.5 {
        let next = 2.0 * x * cur - 2.0 * mu * prev;
        prev = cur;
        cur = next;
        mu += 1.0;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{hermite, laguerre, rat};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn kummer_examples() {
        assert_eq!(kummer_m(0.3, 1.7, 0.0).unwrap(), 1.0);
        for x in [-3.0, 0.5, 7.0] {
            assert!((kummer_m(-1.0, 2.0, x).unwrap() - (1.0 - x / 2.0)).abs() < 1e-14);
            let want = 1.0 - 2.0 * x + x * x / 2.0;
            assert!((kummer_m(-2.0, 1.0, x).unwrap() - want).abs() < 1e-13);
        }
        assert!(matches!(kummer_m(1.0, -2.0, 1.0), Err(Error::PoleInB(_))));
        assert!(matches!(kummer_m(1.0, 0.0, 1.0), Err(Error::PoleInB(_))));
    }

    #[test]
    fn kummer_against_reference() {
        // mpmath.hyp1f1, 40 digits
        let cases = [
            (0.5, 1.5, 2.0, 2.364_453_892_805_209_284_6),
            (1.5, 4.0, 30.0, 14_046_112_591.520_402_26),
            (-2.5, 3.0, 10.0, 0.992_566_220_322_177_395_77),
            (-6.0, 2.0, 30.0, 23_053.857_142_857_142_857),
            (0.3, 0.7, -5.0, 0.379_328_282_734_923_178_41),
            (2.2, 1.1, 45.0, 2.044_472_047_116_686_710_7e21),
            (-0.25, 0.5, 49.0, -3.798_337_824_714_042_571_7e19),
            (1.5, 6.0, 72.0, 1.068_498_497_440_669_592_4e25),
        ];
        for (a, b, x, want) in cases {
            let got = kummer_m(a, b, x).unwrap();
            assert!(rel(got, want) < 1e-12, "M({a},{b},{x}) = {got}, want {want}");
        }
    }

    #[test]
    fn kummer_budget_exhaustion() {
        let b = AccuracyBudget {
            target: 1e-12,
            max_terms: 5,
        };
        assert!(matches!(kummer_m_with(0.5, 1.5, 40.0, &b), Err(Error::NonConvergent(_))));
    }

    #[test]
    fn laguerre_nu_examples() {
        assert!((laguerre_nu(1.0, 5.0, 2.0).unwrap() - 4.0).abs() < 1e-14);
        assert_eq!(laguerre_nu(-1.0, 2.5, 3.0).unwrap(), 0.0);
        assert!((laguerre_nu(-0.5, 2.0, 0.0).unwrap() - 0.375).abs() < 1e-14);
    }

    #[test]
    fn laguerre_nu_against_reference() {
        // mpmath.laguerre, 40 digits
        let cases = [
            (-0.5, 3.0, 5.0, 0.887_827_510_508_695_277_78),
            (-1.5, 4.0, 10.0, -5.856_170_603_795_365_294_4),
            (-2.5, 5.0, 32.0, 379_382_722.389_540_543_13),
            (0.5, 1.0, 3.0, -0.071_342_723_027_572_404_42),
            (2.3, 0.5, 7.0, 7.778_248_406_264_406_093_2),
            (-1.5, 3.0, 72.0, -1.756_529_340_663_144_279_5e26),
        ];
        for (nu, a, x, want) in cases {
            let got = laguerre_nu(nu, a, x).unwrap();
            assert!(rel(got, want) < 1e-11, "L_{nu}^{a}({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn laguerre_nu_gamma_pole() {
        assert!(matches!(laguerre_nu(-0.5, -1.5, 1.0), Err(Error::GammaPole(_))));
    }

    #[test]
    fn hermite_nu_examples() {
        assert!((hermite_nu(2.0, 1.0).unwrap() - 2.0).abs() < 1e-14);
        for x in [-4.0, 0.0, 2.5, 9.0] {
            assert!((hermite_nu(0.0, x).unwrap() - 1.0).abs() < 1e-13);
        }
        assert!((hermite_nu(1.0, 3.0).unwrap() - 6.0).abs() < 1e-13);
    }

    #[test]
    fn hermite_nu_against_reference() {
        // mpmath.hermite, 40 digits
        let cases = [
            (0.5, 1.0, 1.481_284_396_061_407_814),
            (-0.5, 2.0, 0.480_992_246_844_393_396_58),
            (1.3, -3.0, 457.520_954_830_098_085_02),
            (2.7, 4.5, 355.702_187_477_147_348_86),
            (-2.2, 7.0, 0.002_907_168_915_878_834_722),
            (0.3, 12.0, 2.595_500_134_905_353_962_3),
            (-1.0, 5.0, 0.098_109_430_731_538_791_444),
            (-3.0, 8.0, 0.000_233_322_091_600_159_853_83),
            (1e-5, -6.0, -12_920_286_496.560_027_797),
            (4.5, -2.0, 157.535_808_393_117_081_43),
            (0.25, 0.0, 0.889_209_650_260_876_320_35),
            (-1.7, 0.4, 0.342_887_468_332_707_149_41),
            (2.5, 9.0, 1_358.699_565_369_479_334_5),
        ];
        for (nu, x, want) in cases {
            let got = hermite_nu(nu, x).unwrap();
            assert!(rel(got, want) < 1e-11, "H_{nu}({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn integer_degree_consistency_spot_checks() {
        for n in 0..=6usize {
            let h = hermite(n);
            let l = laguerre(n, &rat(3, 1));
            for &x in &[-5.5, -1.0, 0.3, 2.0, 6.0] {
                let want = h.eval_f64(x);
                assert!((hermite_nu(n as f64, x).unwrap() - want).abs() <= 1e-10 * (1.0 + want.abs()));
            }
            for &x in &[0.0, 1.5, 12.0, 29.0] {
                let want = l.eval_f64(x);
                assert!((laguerre_nu(n as f64, 3.0, x).unwrap() - want).abs() <= 1e-10 * (1.0 + want.abs()));
            }
        }
    }
}
