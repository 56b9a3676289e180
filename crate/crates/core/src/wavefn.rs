//! Approximate eigenfunctions `ψ_n = χ_n φ_n` on a spatial grid.
//!
//! `χ_n = H_n(√a x) exp(−a x²/2)` is the harmonic eigenfunction at the solved
//! scale `a*`, and `φ_n = exp(−S)` with `S′ = ΔW = Σ f_k x^(2k+1)`. Evaluation
//! is in `f64`; the exact pipeline ends at `a*`.
//!
//! At even orders the leading coefficient `f_N(a*)` is negative, so `S → −∞`
//! and the truncated `ψ` grows at large `|x|`; [`WavefunctionModel::normalize`]
//! reports that as [`Error::TailNotDecayed`].

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::recursion::CoefficientTable;
use crate::spectrum::{energy_from_table, EnergyEstimate, OscillatorProblem, RootRule};

/// Below this `|H_n(√a x)|` the superpotential is treated as singular.
pub const NODE_THRESHOLD: f64 = 1e-9;
/// Boundary-to-peak ratio a normalisable grid must reach.
pub const TAIL_RATIO: f64 = 1e-12;
pub const DEFAULT_POINTS: usize = 4001;

/// Physicists' Hermite polynomial by the three-term recurrence.
pub fn hermite(n: u32, y: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * y);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let next = 2.0 * y * cur - 2.0 * f64::from(k) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `W_n(x) = −√a [√a x − H_(n+1)(√a x) / H_n(√a x)]`.
pub fn superpotential(n: u32, a: f64, x: f64) -> Result<f64> {
    let s = a.sqrt();
    let y = s * x;
    let hn = hermite(n, y);
    if hn.abs() < NODE_THRESHOLD {
        return Err(Error::NodeSingularity { n, x });
    }
    Ok(-s * (y - hermite(n + 1, y) / hn))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub x: f64,
    pub chi: f64,
    pub phi: f64,
    pub psi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionModel {
    pub n: u32,
    pub a_star: f64,
    /// `f_1(a*) .. f_N(a*)`.
    pub f_values: Vec<f64>,
    pub norm: f64,
}

impl WavefunctionModel {
    pub fn new(n: u32, a_star: f64, f_values: Vec<f64>) -> Self {
        Self {
            n,
            a_star,
            f_values,
            norm: 1.0,
        }
    }

    /// Solve the problem and evaluate its coefficient table at `a*`.
    pub fn from_problem(
        problem: &OscillatorProblem,
        digits: u32,
    ) -> Result<(Self, EnergyEstimate)> {
        let table = CoefficientTable::build(problem.n, problem.g.clone(), problem.order);
        let est = energy_from_table(&table, problem.order, digits, RootRule::default())?;
        let f_values = table
            .eval_at(problem.order, &est.a_star.value)
            .iter()
            .map(|f| f.to_f64().unwrap_or(f64::NAN))
            .collect();
        let a = est.a_star.value.to_f64().unwrap_or(f64::NAN);
        Ok((Self::new(problem.n, a, f_values), est))
    }

    /// `ΔW(x) = Σ f_k x^(2k+1)`.
    pub fn delta_w(&self, x: f64) -> f64 {
        let x2 = x * x;
        let mut pow = x * x2;
        let mut sum = 0.0;
        for f in &self.f_values {
            sum += f * pow;
            pow *= x2;
        }
        sum
    }

    /// `S(x) = Σ f_k x^(2k+2) / (2k+2)`, so that `φ = exp(−S)`.
    pub fn perturbation_exponent(&self, x: f64) -> f64 {
        let x2 = x * x;
        let mut pow = x2 * x2;
        let mut sum = 0.0;
        for (i, f) in self.f_values.iter().enumerate() {
            let k = (i + 1) as f64;
            sum += f * pow / (2.0 * k + 2.0);
            pow *= x2;
        }
        sum
    }

    pub fn chi(&self, x: f64) -> f64 {
        hermite(self.n, self.a_star.sqrt() * x) * (-self.a_star * x * x / 2.0).exp()
    }

    pub fn phi(&self, x: f64) -> f64 {
        (-self.perturbation_exponent(x)).exp()
    }

    /// `norm · H_n(√a x) · exp(−a x²/2 − S(x))`, with the exponents combined
    /// so that large cancelling terms do not overflow separately.
    pub fn psi(&self, x: f64) -> f64 {
        let exponent = -self.a_star * x * x / 2.0 - self.perturbation_exponent(x);
        self.norm * hermite(self.n, self.a_star.sqrt() * x) * exponent.exp()
    }

    /// `−ψ′/ψ` in closed form: `W_n + ΔW`.
    pub fn total_superpotential(&self, x: f64) -> Result<f64> {
        Ok(superpotential(self.n, self.a_star, x)? + self.delta_w(x))
    }

    /// Half-width `10/√a*` used when the caller gives none.
    pub fn default_half_width(&self) -> f64 {
        10.0 / self.a_star.sqrt()
    }

    pub fn grid(&self, half_width: f64, points: usize) -> Vec<GridPoint> {
        uniform_grid(half_width, points)
            .map(|x| GridPoint {
                x,
                chi: self.chi(x),
                phi: self.phi(x),
                psi: self.psi(x),
            })
            .collect()
    }

    /// Scale so that the Simpson integral of `ψ²` over `[−L, L]` is one.
    pub fn normalize(&self, half_width: f64, points: usize) -> Result<Self> {
        if points < 3 || points.is_multiple_of(2) {
            return Err(Error::InvalidProblem(format!(
                "Simpson's rule needs an odd number of points >= 3, got {points}"
            )));
        }
        let mut unit = self.clone();
        unit.norm = 1.0;
        let values: Vec<f64> = uniform_grid(half_width, points)
            .map(|x| unit.psi(x))
            .collect();
        let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let edge = values[0].abs().max(values[points - 1].abs());
        let ratio = edge / peak;
        if !ratio.is_finite() || ratio >= TAIL_RATIO {
            return Err(Error::TailNotDecayed {
                half_width,
                ratio: if ratio.is_finite() {
                    ratio
                } else {
                    f64::INFINITY
                },
            });
        }
        let h = 2.0 * half_width / (points - 1) as f64;
        let squares: Vec<f64> = values.iter().map(|v| v * v).collect();
        unit.norm = 1.0 / simpson(&squares, h).sqrt();
        Ok(unit)
    }
}

/// `points` equally spaced abscissae on `[−L, L]`, mirror-symmetric and with
/// `x = 0` hit exactly when `points` is odd.
fn uniform_grid(half_width: f64, points: usize) -> impl Iterator<Item = f64> {
    let span = points.saturating_sub(1).max(1) as f64;
    (0..points).map(move |i| half_width * (2.0 * i as f64 - span) / span)
}

/// Composite Simpson rule on equally spaced samples (odd count).
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    debug_assert!(n >= 3 && n % 2 == 1);
    let mut sum = values[0] + values[n - 1];
    for (i, v) in values.iter().enumerate().take(n - 1).skip(1) {
        sum += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    sum * h / 3.0
}
