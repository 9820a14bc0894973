//! `(p,q)`-analogues of integers and binomial coefficients.

use crate::poly::{Monomial, MultiPoly, PolyError, Var};

/// `[n]_{p,q} = sum_{i+j=n-1} p^i q^j`, with `[0]_{p,q} = 0`.
pub fn pq_int(n: usize) -> MultiPoly {
    if n == 0 {
        return MultiPoly::zero();
    }
    let top = (n - 1) as u32;
    MultiPoly::from_terms(
        (0..=top).map(|i| (Monomial::var(Var::P, i).with(Var::Q, top - i), 1)),
    )
}

/// `[n]_{p,q} [n-1]_{p,q} ... [n-k+1]_{p,q} / ([1]_{p,q} ... [k]_{p,q})`.
///
/// The quotient is computed by exact division, so an `Err` here means the
/// arithmetic is broken; it never happens for `k <= n`. For `k > n` the
/// result is zero.
pub fn pq_binomial(n: usize, k: usize) -> Result<MultiPoly, PolyError> {
    if k > n {
        return Ok(MultiPoly::zero());
    }
    let k = k.min(n - k);
    let num: MultiPoly = (n - k + 1..=n).map(pq_int).product();
    let den: MultiPoly = (1..=k).map(pq_int).product();
    num.exact_div(&den)
}

/// A `(p,q)`-integer together with the `n` it refines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PqAnalogue {
    pub n: usize,
    pub value: MultiPoly,
}

impl PqAnalogue {
    pub fn of(n: usize) -> Self {
        PqAnalogue {
            n,
            value: pq_int(n),
        }
    }

    /// The value at `p = q = 1`, which is `n` itself.
    pub fn at_one(&self) -> MultiPoly {
        self.value.specialize(&[(Var::P, 1), (Var::Q, 1)])
    }
}
