//! Power-series expansion of J-type and S-type continued fractions.
//!
//! A J-fraction
//!
//! ```text
//!            1
//! ---------------------------------
//! 1 - b_0 z - lambda_1 z^2
//!             ---------------------
//!             1 - b_1 z - lambda_2 z^2
//!                         ---------
//!                           ...
//! ```
//!
//! has `z^n` coefficient equal to the weighted sum over Motzkin paths of
//! length `n`, where a level step at height `h` weighs `b_h`, a down step
//! from height `h` weighs `lambda_h`, and up steps weigh 1. The expansion
//! here is a transfer computation over heights rather than a convergent
//! recurrence, so it is exact and needs only `O(N^2)` polynomial products.
//!
//! An S-fraction `1/(1 - lambda_1 z/(1 - lambda_2 z/(...)))` is treated as
//! a sum over Dyck paths, with `z^n` counting semilength `n`.

use std::fmt;
use std::sync::Arc;

use crate::poly::{c, MultiPoly, Var};
use crate::pqnum::{pq_binomial, pq_int};

type Coefficient = Arc<dyn Fn(usize) -> MultiPoly + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FractionKind {
    /// Level and down weights; series order is the Motzkin path length.
    Jacobi,
    /// Down weights only; series order is the Dyck path semilength.
    Stieltjes,
}

/// The two coefficient sequences of a continued fraction.
#[derive(Clone)]
pub struct CfSpec {
    name: &'static str,
    kind: FractionKind,
    level: Coefficient,
    down: Coefficient,
}

impl fmt::Debug for CfSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CfSpec")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .finish_non_exhaustive()
    }
}

impl CfSpec {
    pub fn jacobi(
        name: &'static str,
        level: impl Fn(usize) -> MultiPoly + Send + Sync + 'static,
        down: impl Fn(usize) -> MultiPoly + Send + Sync + 'static,
    ) -> Self {
        CfSpec {
            name,
            kind: FractionKind::Jacobi,
            level: Arc::new(level),
            down: Arc::new(down),
        }
    }

    pub fn stieltjes(
        name: &'static str,
        down: impl Fn(usize) -> MultiPoly + Send + Sync + 'static,
    ) -> Self {
        CfSpec {
            name,
            kind: FractionKind::Stieltjes,
            level: Arc::new(|_| MultiPoly::zero()),
            down: Arc::new(down),
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn kind(&self) -> FractionKind {
        self.kind
    }

    /// `b_h`; identically zero for S-fractions.
    pub fn level(&self, h: usize) -> MultiPoly {
        (self.level)(h)
    }

    /// `lambda_h` for `h >= 1`.
    pub fn down(&self, h: usize) -> MultiPoly {
        debug_assert!(h >= 1, "down weights start at height 1");
        (self.down)(h)
    }

    /// `b_h = [h+1]_{p,q}`, `lambda_h = binom(h+1, 2)_{p,q} t`; the series
    /// is `sum_n D_{n+1}(p,q,t) z^n`.
    pub fn dn() -> Self {
        CfSpec::jacobi("dn", |h| pq_int(h + 1), |h| {
            pq_binomial(h + 1, 2).expect("(p,q)-binomials are polynomials") * MultiPoly::var(Var::T)
        })
    }

    /// `b_h = (u + t v)[h+1]_{p,q}`, `lambda_h = [h]_{p,q}[h+1]_{p,q} t w`;
    /// the series is `sum_n A_{n+1}(p,q,t,u,v,w) z^n`.
    pub fn master() -> Self {
        let u_tv = || MultiPoly::var(Var::U) + MultiPoly::var(Var::T) * MultiPoly::var(Var::V);
        let tw = || MultiPoly::var(Var::T) * MultiPoly::var(Var::W);
        CfSpec::jacobi(
            "master",
            move |h| u_tv() * pq_int(h + 1),
            move |h| pq_int(h) * pq_int(h + 1) * tw(),
        )
    }

    /// The `(p,q) = (1,-1)` case of [`CfSpec::dn`]: `b_h` is 1 at even
    /// heights and 0 at odd ones, `lambda_h = floor((h+1)/2) t`.
    pub fn neg1() -> Self {
        CfSpec::jacobi(
            "neg1",
            |h| if h % 2 == 0 { c(1) } else { MultiPoly::zero() },
            |h| c(h.div_ceil(2) as i64) * MultiPoly::var(Var::T),
        )
    }

    /// Euler's S-fraction for `sum n! z^n`: `lambda_h = floor((h+1)/2)`.
    pub fn factorial() -> Self {
        CfSpec::stieltjes("factorial", |h| c(h.div_ceil(2) as i64))
    }

    /// The same weights as [`CfSpec::factorial`] read as a J-fraction with
    /// `b = 0`; its coefficient of `z^{2n}` is `n!`.
    pub fn factorial_jacobi() -> Self {
        CfSpec::jacobi("factorial-jacobi", |_| MultiPoly::zero(), |h| {
            c(h.div_ceil(2) as i64)
        })
    }

    /// `b_h = h + 1`, `lambda_h = binom(h+1, 2)`; the series is
    /// `sum_n E_{n+1} z^n`.
    pub fn euler_numbers() -> Self {
        CfSpec::jacobi("euler-numbers", |h| c(h as i64 + 1), |h| {
            c((h * (h + 1) / 2) as i64)
        })
    }

    /// Every named fraction the crate ships.
    pub fn catalogue() -> Vec<CfSpec> {
        vec![
            CfSpec::dn(),
            CfSpec::master(),
            CfSpec::neg1(),
            CfSpec::factorial(),
            CfSpec::factorial_jacobi(),
            CfSpec::euler_numbers(),
        ]
    }
}

/// Coefficients `mu_0 ..= mu_order` of the fraction's power series.
pub fn jfraction_series(spec: &CfSpec, order: usize) -> Vec<MultiPoly> {
    match spec.kind {
        FractionKind::Jacobi => motzkin_moments(spec, order),
        FractionKind::Stieltjes => dyck_moments(spec, order),
    }
}

fn motzkin_moments(spec: &CfSpec, order: usize) -> Vec<MultiPoly> {
    // A prefix of length m can only return to 0 if its height is at most
    // order - m, so heights never exceed order / 2.
    let max_h = order / 2;
    let level: Vec<MultiPoly> = (0..=max_h).map(|h| spec.level(h)).collect();
    let down: Vec<MultiPoly> = (0..=max_h)
        .map(|h| if h == 0 { MultiPoly::zero() } else { spec.down(h) })
        .collect();

    let mut row = vec![MultiPoly::one()];
    let mut moments = Vec::with_capacity(order + 1);
    for m in 0..=order {
        moments.push(row[0].clone());
        if m == order {
            break;
        }
        let cap = max_h.min(order - m - 1);
        let mut next = vec![MultiPoly::zero(); cap + 1];
        for (h, weight) in row.iter().enumerate() {
            if weight.is_zero() {
                continue;
            }
            if h < cap {
                next[h + 1] += weight;
            }
            if h <= cap && !level[h].is_zero() {
                next[h] += &(weight * &level[h]);
            }
            if h >= 1 && h - 1 <= cap {
                next[h - 1] += &(weight * &down[h]);
            }
        }
        row = next;
    }
    moments
}

fn dyck_moments(spec: &CfSpec, order: usize) -> Vec<MultiPoly> {
    let steps = 2 * order;
    let max_h = order;
    let down: Vec<MultiPoly> = (0..=max_h)
        .map(|h| if h == 0 { MultiPoly::zero() } else { spec.down(h) })
        .collect();

    let mut row = vec![MultiPoly::one()];
    let mut moments = Vec::with_capacity(order + 1);
    for m in 0..=steps {
        if m % 2 == 0 {
            moments.push(row[0].clone());
        }
        if m == steps {
            break;
        }
        let cap = max_h.min(steps - m - 1);
        let mut next = vec![MultiPoly::zero(); cap + 1];
        for (h, weight) in row.iter().enumerate() {
            if weight.is_zero() {
                continue;
            }
            if h < cap {
                next[h + 1] += weight;
            }
            if h >= 1 && h - 1 <= cap {
                next[h - 1] += &(weight * &down[h]);
            }
        }
        row = next;
    }
    moments
}

/// `[D_1, ..., D_{n_max+1}]` as polynomials in `p, q, t`.
pub fn dn_series(n_max: usize) -> Vec<MultiPoly> {
    jfraction_series(&CfSpec::dn(), n_max)
}

/// `[A_1, ..., A_{n_max+1}]` as polynomials in `p, q, t, u, v, w`.
pub fn master_series(n_max: usize) -> Vec<MultiPoly> {
    jfraction_series(&CfSpec::master(), n_max)
}

/// `[D_1(1,-1,t), ..., D_{n_max+1}(1,-1,t)]`.
pub fn neg1_series(n_max: usize) -> Vec<MultiPoly> {
    jfraction_series(&CfSpec::neg1(), n_max)
}
