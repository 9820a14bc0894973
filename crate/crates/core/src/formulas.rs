//! A triple-sum formula for `D_n(1,q,t)`, evaluated in floating point.
//!
//! The formula combines three facts:
//!
//! * `A_n(1,q,q,1,1,t(1+1/q)) = (1+q)^{n-1} D_n(1,q,t)`,
//! * that specialization equals `R^{n-1} sum_sigma v^des q^les` for a
//!   rescaling factor `R` depending on `q` and `t`,
//! * a closed form of `sum_sigma y^des q^les` as a double sum in `y` and `q`.
//!
//! `v` is a root of `t v^2 - ((1+q) - 2t) v + t = 0`. For the rescaling, two
//! choices are available. The closed-form `u` choice uses
//! `R = (1+u)/(1+uv)`, with `u` given by an explicit radical
//! expression. The quadratic-root choice uses `R = (1+q)/(1+v)`.
//! Only the second reproduces `D_n(1,q,t)`; [`grid_report`] records how
//! every combination fares.

use num_integer::binomial;
use serde::Serialize;
use thiserror::Error;

use crate::cfrac::dn_series;
use crate::poly::Var;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("negative discriminant {0} (need t <= (1+q)/4)")]
    NegativeDiscriminant(f64),
    #[error("q = {0} is excluded")]
    ExcludedQ(f64),
    #[error("t must be nonzero")]
    ZeroT,
    #[error("vanishing denominator in {0}")]
    VanishingDenominator(&'static str),
}

/// The auxiliary quantities at a point `(q, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AlgebraicParams {
    pub q: f64,
    pub t: f64,
    pub u: f64,
    pub v: f64,
    /// `(1+q)^2 - 4t(1+q)`.
    pub discriminant: f64,
}

const EPS: f64 = 1e-14;

pub fn algebraic_params(q: f64, t: f64) -> Result<AlgebraicParams, DomainError> {
    if (q - 1.0).abs() < EPS || (q + 1.0).abs() < EPS {
        return Err(DomainError::ExcludedQ(q));
    }
    if t.abs() < EPS {
        return Err(DomainError::ZeroT);
    }
    let s = 1.0 + q;
    let discriminant = s * s - 4.0 * t * s;
    if discriminant < 0.0 {
        return Err(DomainError::NegativeDiscriminant(discriminant));
    }
    let root = discriminant.sqrt();
    let u_den = 2.0 * (q - t * s);
    if u_den.abs() < EPS {
        return Err(DomainError::VanishingDenominator("u"));
    }
    let u = (1.0 + q * q - 2.0 * s * t - s * root) / u_den;
    let v = (s - 2.0 * t - root) / (2.0 * t);
    Ok(AlgebraicParams {
        q,
        t,
        u,
        v,
        discriminant,
    })
}

impl AlgebraicParams {
    /// `t v^2 - ((1+q) - 2t) v + t`.
    pub fn v_residual(&self) -> f64 {
        let (q, t, v) = (self.q, self.t, self.v);
        t * v * v - ((1.0 + q) - 2.0 * t) * v + t
    }

    /// Residual of the quadratic whose smaller root defines `u`:
    /// `B u^2 - A u + (A^2 - (1+q)^2 disc) / (4B)` with
    /// `A = 1 + q^2 - 2(1+q)t` and `B = q - t(1+q)`.
    pub fn u_residual(&self) -> f64 {
        let (q, t, u) = (self.q, self.t, self.u);
        let s = 1.0 + q;
        let a = 1.0 + q * q - 2.0 * s * t;
        let b = q - t * s;
        b * u * u - a * u + (a * a - s * s * self.discriminant) / (4.0 * b)
    }
}

/// Where the `v^j` in the inner sum applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Reading {
    /// `sum_j v^j [C(n,j) C(n,j+k) - C(n,j-1) C(n,j+k+1)]`.
    BracketedDifference,
    /// `sum_j [v^j C(n,j) C(n,j+k) - C(n,j-1) C(n,j+k+1)]`.
    SeparateTerms,
}

/// How the `(1+q)^{n-1}` specialization is rescaled to `sum v^des q^les`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Rescaling {
    /// Ratio `(1+u)/((1+uv)(1-q^2))`, with `u` in explicit radical form.
    ClosedFormU,
    /// Ratio `1/((1+v)(1-q))`.
    QuadraticRoot,
}

fn binom(n: usize, k: i64) -> f64 {
    if k < 0 || k as usize > n {
        0.0
    } else {
        binomial(n as u64, k as u64) as f64
    }
}

/// The formula with the closed-form `u` and the bracketed inner sum.
pub fn dn_1q_triple_sum(n: usize, q: f64, t: f64) -> Result<f64, DomainError> {
    dn_1q_triple_sum_with(n, q, t, Reading::BracketedDifference, Rescaling::ClosedFormU)
}

pub fn dn_1q_triple_sum_with(
    n: usize,
    q: f64,
    t: f64,
    reading: Reading,
    rescaling: Rescaling,
) -> Result<f64, DomainError> {
    assert!(n >= 1, "defined for n >= 1");
    let AlgebraicParams { u, v, .. } = algebraic_params(q, t)?;
    if v.abs() < EPS {
        return Err(DomainError::VanishingDenominator("v"));
    }
    let ratio = match rescaling {
        Rescaling::ClosedFormU => {
            let den = (1.0 + u * v) * (1.0 - q * q);
            if den.abs() < EPS {
                return Err(DomainError::VanishingDenominator("1 + uv"));
            }
            (1.0 + u) / den
        }
        Rescaling::QuadraticRoot => {
            let den = (1.0 + v) * (1.0 - q);
            if den.abs() < EPS {
                return Err(DomainError::VanishingDenominator("1 + v"));
            }
            1.0 / den
        }
    };
    let prefactor = ratio.powi(n as i32 - 1) / (v * (1.0 - q));
    let mut total = 0.0;
    for k in 0..=n {
        let ki = k as i64;
        let inner: f64 = (0..=(n - k) as i64)
            .map(|j| {
                let vj = v.powi(j as i32);
                let first = binom(n, j) * binom(n, j + ki);
                let second = binom(n, j - 1) * binom(n, j + ki + 1);
                match reading {
                    Reading::BracketedDifference => vj * (first - second),
                    Reading::SeparateTerms => vj * first - second,
                }
            })
            .sum();
        let weights: f64 = (0..=k)
            .map(|i| v.powi(i as i32) * q.powi((i * (k + 1 - i)) as i32))
            .sum();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * inner * weights;
    }
    Ok(prefactor * total)
}

/// The `q` values of the comparison grid.
pub const GRID_Q: [f64; 4] = [-0.5, 0.1, 0.3, 0.6];
/// The `t` values of the comparison grid.
pub const GRID_T: [f64; 3] = [0.05, 0.1, 0.2];
/// Relative tolerance against exact values.
pub const REL_TOL: f64 = 1e-7;

/// Grid points inside the domain.
pub fn grid() -> Vec<(f64, f64)> {
    GRID_Q
        .iter()
        .flat_map(|&q| GRID_T.iter().map(move |&t| (q, t)))
        .filter(|&(q, t)| algebraic_params(q, t).is_ok())
        .collect()
}

/// `D_n(1,q,t)` from the exact polynomial, `n = 1..=n_max`.
pub fn exact_values(n_max: usize, q: f64, t: f64) -> Vec<f64> {
    dn_series(n_max - 1)
        .iter()
        .map(|d| {
            d.eval_f64(&[(Var::P, 1.0), (Var::Q, q), (Var::T, t)])
                .expect("D_n involves only p, q, t")
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct VariantOutcome {
    pub reading: Reading,
    pub rescaling: Rescaling,
    pub passes: bool,
    pub max_rel_error: f64,
    /// `(n, q, t)` where the relative error peaks.
    pub worst: (usize, f64, f64),
    /// `|D_n - 1|` at `t = 1e-6`, maximised over `n` and grid `q`.
    pub small_t_deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormulaReport {
    pub n_max: usize,
    pub points: usize,
    pub tolerance: f64,
    pub variants: Vec<VariantOutcome>,
}

impl FormulaReport {
    pub fn outcome(&self, reading: Reading, rescaling: Rescaling) -> &VariantOutcome {
        self.variants
            .iter()
            .find(|v| v.reading == reading && v.rescaling == rescaling)
            .expect("report covers every variant")
    }
}

/// Compares all four variants with exact `D_n(1,q,t)` for `n <= n_max` on
/// the grid, and checks the `t -> 0` limit.
pub fn grid_report(n_max: usize) -> FormulaReport {
    let points = grid();
    let exact: Vec<Vec<f64>> = points.iter().map(|&(q, t)| exact_values(n_max, q, t)).collect();
    let mut variants = Vec::new();
    for rescaling in [Rescaling::ClosedFormU, Rescaling::QuadraticRoot] {
        for reading in [Reading::BracketedDifference, Reading::SeparateTerms] {
            let mut max_rel_error = 0.0f64;
            let mut worst = (0, 0.0, 0.0);
            for (&(q, t), row) in points.iter().zip(&exact) {
                for n in 1..=n_max {
                    let got = dn_1q_triple_sum_with(n, q, t, reading, rescaling)
                        .expect("grid points are in the domain");
                    let want = row[n - 1];
                    let err = ((got - want) / want).abs();
                    let err = if err.is_nan() { f64::INFINITY } else { err };
                    if worst.0 == 0 || err > max_rel_error {
                        max_rel_error = err;
                        worst = (n, q, t);
                    }
                }
            }
            let small_t_deviation = GRID_Q
                .iter()
                .flat_map(|&q| (1..=n_max).map(move |n| (n, q)))
                .map(|(n, q)| {
                    let d = dn_1q_triple_sum_with(n, q, 1e-6, reading, rescaling)
                        .map(|x| (x - 1.0).abs())
                        .unwrap_or(f64::INFINITY);
                    if d.is_nan() { f64::INFINITY } else { d }
                })
                .fold(0.0, f64::max);
            variants.push(VariantOutcome {
                reading,
                rescaling,
                passes: max_rel_error < REL_TOL,
                max_rel_error,
                worst,
                small_t_deviation,
            });
        }
    }
    FormulaReport {
        n_max,
        points: points.len(),
        tolerance: REL_TOL,
        variants,
    }
}
