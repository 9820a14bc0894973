//! André permutations, the classes `D_{n,k}` and `G_{n,k}`, and the
//! polynomials built from them by enumeration.
//!
//! `G_{n,k}` is the set of permutations of `[n]` with `k` valleys and no
//! double descents. `D_{n,k}` is the set of André permutations with `k`
//! descents: every restriction `sigma_[j]` is free of double descents.

use num_bigint::BigUint;
use thiserror::Error;

use crate::cfrac::{dn_series, master_series};
use crate::check::{CheckResult, IdentityViolation, Verified};
use crate::perm::{orbit_polynomial, LetterClass, Permutation};
use crate::poly::{c, Monomial, MultiPoly, Var};
use crate::sn::{filter_sn, find_first, permutations, sum_over_sn};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GammaError {
    #[error("polynomial is not a combination of t^k (1+t)^({n}-1-2k); residual {residual}")]
    NotGammaExpressible { n: usize, residual: String },
}

/// `h = sum_k gammas[k] t^k (1+t)^{n-1-2k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaExpansion {
    pub n: usize,
    pub gammas: Vec<MultiPoly>,
}

impl GammaExpansion {
    pub fn reconstruct(&self) -> MultiPoly {
        self.gammas
            .iter()
            .enumerate()
            .map(|(k, g)| g * &gamma_basis(self.n, k))
            .sum()
    }
}

/// `t^k (1+t)^{n-1-2k}`.
pub fn gamma_basis(n: usize, k: usize) -> MultiPoly {
    let t = MultiPoly::var(Var::T);
    t.pow(k as u32) * (c(1) + &t).pow((n - 1 - 2 * k) as u32)
}

/// Peels `h` against the basis `t^k (1+t)^{n-1-2k}`, lowest `k` first.
///
/// The coefficients of `h` may involve any variables other than `t`.
pub fn gamma_expand(h: &MultiPoly, n: usize) -> Result<GammaExpansion, GammaError> {
    assert!(n >= 1, "gamma expansion needs n >= 1");
    let mut residual = h.clone();
    let mut gammas = Vec::with_capacity((n - 1) / 2 + 1);
    for k in 0..=(n - 1) / 2 {
        let g = residual.coeff_of(Var::T, k as u32);
        residual -= &(&g * &gamma_basis(n, k));
        gammas.push(g);
    }
    if residual.is_zero() {
        Ok(GammaExpansion { n, gammas })
    } else {
        Err(GammaError::NotGammaExpressible {
            n,
            residual: residual.to_string(),
        })
    }
}

pub fn is_andre(sigma: &Permutation) -> bool {
    (1..=sigma.len()).all(|k| !sigma.restrict(k).has_double_descent())
}

/// The factorization criterion: no double descents, a final ascent, and
/// `min(w2) > min(w4)` at every valley.
pub fn is_andre_xfact(sigma: &Permutation) -> bool {
    let w = sigma.word();
    let n = w.len();
    if sigma.has_double_descent() || (n >= 2 && w[n - 2] > w[n - 1]) {
        return false;
    }
    sigma.letters_of(LetterClass::Valley).into_iter().all(|x| {
        let f = sigma.x_factorization(x);
        f.w2.iter().min() > f.w4.iter().min()
    })
}

/// `D_n` in lexicographic order.
pub fn andre_permutations(n: usize) -> Vec<Permutation> {
    filter_sn(n, is_andre)
}

pub fn enumerate_d(n: usize, k: usize) -> Vec<Permutation> {
    filter_sn(n, |s| s.des() == k && is_andre(s))
}

pub fn enumerate_g(n: usize, k: usize) -> Vec<Permutation> {
    filter_sn(n, |s| s.valleys() == k && !s.has_double_descent())
}

fn p_res_q_les(s: &Permutation) -> Monomial {
    Monomial::var(Var::P, s.res() as u32).with(Var::Q, s.les() as u32)
}

/// `gamma_{n,k}(p,q) = sum over G_{n,k} of p^res q^les`.
pub fn gamma_poly(n: usize, k: usize) -> MultiPoly {
    sum_over_sn(n, |s| {
        (s.valleys() == k && !s.has_double_descent()).then(|| p_res_q_les(s))
    })
}

/// `d_{n,k}(p,q) = sum over D_{n,k} of p^res q^(les - k)`.
pub fn d_poly(n: usize, k: usize) -> MultiPoly {
    sum_over_sn(n, |s| {
        (s.des() == k && is_andre(s)).then(|| {
            Monomial::var(Var::P, s.res() as u32).with(Var::Q, (s.les() - k) as u32)
        })
    })
}

/// `A_n(p,q,t) = sum over S_n of p^res q^les t^des`.
pub fn eulerian_poly(n: usize) -> MultiPoly {
    sum_over_sn(n, |s| Some(s.res_les_des()))
}

/// `A_n(p,q,t,u,v,w)`, additionally marking double ascents, double
/// descents and valleys.
pub fn eulerian_poly6(n: usize) -> MultiPoly {
    sum_over_sn(n, |s| Some(s.six_statistics()))
}

/// `D_n(p,q,t) = sum over D_n of p^res q^(les - des) t^des`.
pub fn andre_poly(n: usize) -> MultiPoly {
    sum_over_sn(n, |s| {
        is_andre(s).then(|| {
            Monomial::var(Var::P, s.res() as u32)
                .with(Var::Q, (s.les() - s.des()) as u32)
                .with(Var::T, s.des() as u32)
        })
    })
}

/// `table[n - 1][k] = d_{n,k}` from `d_{n,k} = (k+1) d_{n-1,k} + (n-2k) d_{n-1,k-1}`.
pub fn d_recurrence_table(n_max: usize) -> Vec<Vec<BigUint>> {
    let mut table: Vec<Vec<BigUint>> = Vec::with_capacity(n_max);
    if n_max == 0 {
        return table;
    }
    table.push(vec![BigUint::from(1u32)]);
    for n in 2..=n_max {
        let prev = &table[n - 2];
        let row: Vec<BigUint> = (0..=(n - 1) / 2)
            .map(|k| {
                let stay = prev.get(k).map(|d| d * (k + 1)).unwrap_or_default();
                let grow = match k.checked_sub(1).and_then(|j| prev.get(j)) {
                    Some(d) => d * (n - 2 * k),
                    None => BigUint::default(),
                };
                stay + grow
            })
            .collect();
        table.push(row);
    }
    table
}

/// `(p+q)^k`.
fn p_plus_q_pow(k: usize) -> MultiPoly {
    (MultiPoly::var(Var::P) + MultiPoly::var(Var::Q)).pow(k as u32)
}

/// The gamma expansion of `A_n(p,q,t)` has coefficients `gamma_{n,k}(p,q)`,
/// each divisible by `(p+q)^k` with quotient `d_{n,k}(p,q)`.
pub fn verify_main1(n: usize) -> CheckResult {
    const ID: &str = "gamma expansion of A_n(p,q,t)";
    let a = eulerian_poly(n);
    let expansion = gamma_expand(&a, n)
        .map_err(|e| IdentityViolation::new(ID, n, "a gamma expansion", e))?;
    let mut checks = 0;
    for (k, g) in expansion.gammas.iter().enumerate() {
        let direct = gamma_poly(n, k);
        if &direct != g {
            return Err(IdentityViolation::new(ID, n, &direct, g).at_k(k));
        }
        let d = d_poly(n, k);
        let quotient = g
            .exact_div(&p_plus_q_pow(k))
            .map_err(|e| IdentityViolation::new(ID, n, &d, e).at_k(k))?;
        if quotient != d {
            return Err(IdentityViolation::new(ID, n, &d, &quotient).at_k(k));
        }
        checks += 2;
    }
    Ok(Verified {
        identity: ID,
        n,
        checks,
    })
}

/// The J-fraction coefficient `D_n(p,q,t)` equals both the André sum and
/// `sum_k d_{n,k}(p,q) t^k`.
pub fn verify_main2(n: usize) -> CheckResult {
    const ID: &str = "D_n(p,q,t) from the J-fraction";
    let from_cf = dn_series(n - 1).pop().expect("series has n terms");
    let enumerated = andre_poly(n);
    if from_cf != enumerated {
        return Err(IdentityViolation::new(ID, n, &from_cf, &enumerated));
    }
    let by_k: MultiPoly = (0..=(n - 1) / 2)
        .map(|k| d_poly(n, k) * MultiPoly::var(Var::T).pow(k as u32))
        .sum();
    if from_cf != by_k {
        return Err(IdentityViolation::new(ID, n, &from_cf, &by_k));
    }
    Ok(Verified {
        identity: ID,
        n,
        checks: 2,
    })
}

/// The `(inv - exc, exc)` expansion over `S_n`, through both
/// `gamma_{n,k}(q^2, q)` and `(1+q)^k d_{n,k}(q)` with
/// `d_{n,k}(q) = sum over D_{n,k} of q^(2 res + les)`.
pub fn verify_inv_exc(n: usize) -> CheckResult {
    const ID: &str = "(inv - exc, exc) gamma expansion";
    let lhs = sum_over_sn(n, |s| {
        Some(Monomial::var(Var::Q, (s.inv() - s.exc()) as u32).with(Var::T, s.exc() as u32))
    });
    let q = MultiPoly::var(Var::Q);
    let q_sq = q.pow(2);
    let mut via_gamma = MultiPoly::zero();
    let mut via_d = MultiPoly::zero();
    for k in 0..=(n - 1) / 2 {
        let g = gamma_poly(n, k).substitute(&[(Var::P, q_sq.clone()), (Var::Q, q.clone())]);
        via_gamma += &(g * gamma_basis(n, k));
        let d = sum_over_sn(n, |s| {
            (s.des() == k && is_andre(s))
                .then(|| Monomial::var(Var::Q, (2 * s.res() + s.les()) as u32))
        });
        via_d += &((c(1) + &q).pow(k as u32) * d * gamma_basis(n, k));
    }
    if lhs != via_gamma {
        return Err(IdentityViolation::new(ID, n, &lhs, &via_gamma));
    }
    if lhs != via_d {
        return Err(IdentityViolation::new(ID, n, &lhs, &via_d));
    }
    Ok(Verified {
        identity: ID,
        n,
        checks: 2,
    })
}

/// `E_n(q) = D_n(1,q,1) = D_n(q,1,1)` equals both `sum q^res` and
/// `sum q^(les - des)` over `D_n`.
pub fn verify_en_q(n: usize) -> CheckResult {
    const ID: &str = "q-Euler numbers";
    let d = dn_series(n - 1).pop().expect("series has n terms");
    let e_q = d.specialize(&[(Var::P, 1), (Var::T, 1)]);
    let swapped = d
        .specialize(&[(Var::Q, 1), (Var::T, 1)])
        .swap_vars(Var::P, Var::Q);
    if e_q != swapped {
        return Err(IdentityViolation::new(ID, n, &e_q, &swapped));
    }
    let by_res = sum_over_sn(n, |s| is_andre(s).then(|| Monomial::var(Var::Q, s.res() as u32)));
    if e_q != by_res {
        return Err(IdentityViolation::new(ID, n, &e_q, &by_res));
    }
    let by_les = sum_over_sn(n, |s| {
        is_andre(s).then(|| Monomial::var(Var::Q, (s.les() - s.des()) as u32))
    });
    if e_q != by_les {
        return Err(IdentityViolation::new(ID, n, &e_q, &by_les));
    }
    Ok(Verified {
        identity: ID,
        n,
        checks: 3,
    })
}

/// Every MFS orbit sums to `p^res q^les t^des (1+t)^{n-1-2 des}` evaluated
/// at its representative.
pub fn verify_orbit_identity(n: usize) -> CheckResult {
    const ID: &str = "MFS orbit sum";
    let t1 = c(1) + MultiPoly::var(Var::T);
    let orbits = find_first(n, |s| {
        if s.has_double_descent() {
            return Ok(());
        }
        let orbit = s.mfs_orbit();
        let found = orbit_polynomial(&orbit);
        let rep = &orbit.representative;
        let expected =
            MultiPoly::monomial(1, rep.res_les_des()) * t1.pow((n - 1 - 2 * rep.des()) as u32);
        if found == expected {
            Ok(())
        } else {
            Err(IdentityViolation::new(ID, n, expected, found))
        }
    })?;
    Ok(Verified {
        identity: ID,
        n,
        checks: orbits as u64,
    })
}

/// The six-variable refinement: enumerated `A_n(p,q,t,u,v,w)` equals both
/// the master J-fraction coefficient and `sum_k gamma_{n,k} (tw)^k (u+vt)^{n-1-2k}`.
pub fn verify_master(n: usize) -> CheckResult {
    const ID: &str = "A_n(p,q,t,u,v,w)";
    let enumerated = eulerian_poly6(n);
    let from_cf = master_series(n - 1).pop().expect("series has n terms");
    if enumerated != from_cf {
        return Err(IdentityViolation::new(ID, n, &from_cf, &enumerated));
    }
    let tw = MultiPoly::var(Var::T) * MultiPoly::var(Var::W);
    let u_vt = MultiPoly::var(Var::U) + MultiPoly::var(Var::V) * MultiPoly::var(Var::T);
    let gamma: MultiPoly = (0..=(n - 1) / 2)
        .map(|k| gamma_poly(n, k) * tw.pow(k as u32) * u_vt.pow((n - 1 - 2 * k) as u32))
        .sum();
    if enumerated != gamma {
        return Err(IdentityViolation::new(ID, n, &gamma, &enumerated));
    }
    Ok(Verified {
        identity: ID,
        n,
        checks: 2,
    })
}

/// Both André recognizers agree on all of `S_n`.
pub fn verify_recognizers(n: usize) -> CheckResult {
    const ID: &str = "André recognizers agree";
    let count = find_first(n, |s| {
        let (a, b) = (is_andre(s), is_andre_xfact(s));
        if a == b {
            Ok(())
        } else {
            Err(IdentityViolation::new(ID, n, format!("{s}: {a}"), format!("{s}: {b}")))
        }
    })?;
    Ok(Verified {
        identity: ID,
        n,
        checks: count as u64,
    })
}

/// `les >= des` on every André permutation.
pub fn verify_les_at_least_des(n: usize) -> CheckResult {
    const ID: &str = "les >= des on D_n";
    let count = find_first(n, |s| {
        if is_andre(s) && s.les() < s.des() {
            Err(IdentityViolation::new(
                ID,
                n,
                format!("les >= {}", s.des()),
                format!("{s}: les = {}", s.les()),
            ))
        } else {
            Ok(())
        }
    })?;
    Ok(Verified {
        identity: ID,
        n,
        checks: count as u64,
    })
}

/// Counts of `|D_{n,k}|` from enumeration, indexed like [`d_recurrence_table`].
pub fn d_count_table(n_max: usize) -> Vec<Vec<usize>> {
    (1..=n_max)
        .map(|n| {
            let mut row = vec![0; (n - 1) / 2 + 1];
            for s in permutations(n).filter(is_andre) {
                row[s.des()] += 1;
            }
            row
        })
        .collect()
}
