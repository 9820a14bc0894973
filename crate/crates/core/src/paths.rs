//! Motzkin, Dyck and André paths, path weights, and the decomposition of an
//! André path into a weak composition and a Dyck path.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use thiserror::Error;

use crate::cfrac::{jfraction_series, neg1_series, CfSpec, FractionKind};
use crate::check::{CheckResult, IdentityViolation, Verified};
use crate::poly::{Monomial, MultiPoly, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("`{0}` goes below the axis or does not return to it")]
    NotAPath(String),
    #[error("`{0}` has a level step at odd height")]
    NotAnAndrePath(String),
    #[error("unknown step `{0}`")]
    UnknownStep(char),
    #[error("malformed decomposition: {0}")]
    MalformedDecomposition(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    U,
    L,
    D,
}

impl Step {
    fn letter(self) -> char {
        match self {
            Step::U => 'U',
            Step::L => 'L',
            Step::D => 'D',
        }
    }
}

/// A path from height 0 back to height 0 that never goes below it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Result<Self, PathError> {
        let path = LatticePath { steps };
        let mut h: i64 = 0;
        for &s in &path.steps {
            h += match s {
                Step::U => 1,
                Step::L => 0,
                Step::D => -1,
            };
            if h < 0 {
                return Err(PathError::NotAPath(path.to_string()));
            }
        }
        if h != 0 {
            return Err(PathError::NotAPath(path.to_string()));
        }
        Ok(path)
    }

    /// Like [`LatticePath::new`], but also rejects level steps at odd height.
    pub fn andre(steps: Vec<Step>) -> Result<Self, PathError> {
        let path = LatticePath::new(steps)?;
        if path.is_andre() {
            Ok(path)
        } else {
            Err(PathError::NotAnAndrePath(path.to_string()))
        }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Each step paired with the height it starts from.
    pub fn with_heights(&self) -> impl Iterator<Item = (Step, usize)> + '_ {
        self.steps.iter().scan(0usize, |h, &s| {
            let start = *h;
            match s {
                Step::U => *h += 1,
                Step::D => *h -= 1,
                Step::L => {}
            }
            Some((s, start))
        })
    }

    pub fn is_dyck(&self) -> bool {
        !self.steps.contains(&Step::L)
    }

    pub fn is_andre(&self) -> bool {
        self.with_heights().all(|(s, h)| s != Step::L || h % 2 == 0)
    }

    pub fn level_steps(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::L).count()
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.letter())?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let steps = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'U' => Ok(Step::U),
                'L' => Ok(Step::L),
                'D' => Ok(Step::D),
                other => Err(PathError::UnknownStep(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        LatticePath::new(steps)
    }
}

fn extend(
    n: usize,
    allow: &dyn Fn(Step, usize) -> bool,
    prefix: &mut Vec<Step>,
    h: usize,
    out: &mut Vec<LatticePath>,
) {
    let left = n - prefix.len();
    if left == 0 {
        if h == 0 {
            out.push(LatticePath {
                steps: prefix.clone(),
            });
        }
        return;
    }
    for s in [Step::U, Step::L, Step::D] {
        let next = match s {
            Step::U if h < left => h + 1,
            Step::L if h <= left => h,
            Step::D if h > 0 => h - 1,
            _ => continue,
        };
        if !allow(s, h) || next > left - 1 {
            continue;
        }
        prefix.push(s);
        extend(n, allow, prefix, next, out);
        prefix.pop();
    }
}

fn enumerate_with(n: usize, allow: &dyn Fn(Step, usize) -> bool) -> Vec<LatticePath> {
    let mut out = Vec::new();
    extend(n, allow, &mut Vec::with_capacity(n), 0, &mut out);
    out
}

/// Motzkin paths of length `n`, in the order `U < L < D`.
pub fn enumerate_motzkin(n: usize) -> Vec<LatticePath> {
    enumerate_with(n, &|_, _| true)
}

/// Dyck paths of semilength `k`.
pub fn enumerate_dyck(k: usize) -> Vec<LatticePath> {
    enumerate_with(2 * k, &|s, _| s != Step::L)
}

/// Motzkin paths of length `n` whose level steps all start at even height.
pub fn enumerate_andre_paths(n: usize) -> Vec<LatticePath> {
    enumerate_with(n, &|s, h| s != Step::L || h % 2 == 0)
}

/// Product of step weights: `U` is 1, `L` at height `h` is `b_h`, `D`
/// from height `h` is `lambda_h`.
pub fn weight(path: &LatticePath, spec: &CfSpec) -> MultiPoly {
    path.with_heights()
        .map(|(s, h)| match s {
            Step::U => MultiPoly::one(),
            Step::L => spec.level(h),
            Step::D => spec.down(h),
        })
        .product()
}

/// An André path split into the lengths of its level-step runs and the
/// Dyck path left after deleting them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AndrePathDecomposition {
    pub composition: Vec<usize>,
    pub dyck: LatticePath,
}

/// Deletes the level steps of an André path.
///
/// Level steps only occur at even height, so they never split a pair of
/// consecutive non-level steps starting at even height; the path is
/// `L^{y_1} w_1 L^{y_2} ... w_k L^{y_{k+1}}` with each `w_i` two steps long.
pub fn psi(path: &LatticePath) -> Result<AndrePathDecomposition, PathError> {
    if !path.is_andre() {
        return Err(PathError::NotAnAndrePath(path.to_string()));
    }
    let mut composition = vec![0];
    let mut dyck = Vec::with_capacity(path.len());
    for &s in path.steps() {
        if s == Step::L {
            assert!(dyck.len() % 2 == 0, "level step inside a block of {path}");
            *composition.last_mut().expect("nonempty") += 1;
        } else {
            dyck.push(s);
            if dyck.len() % 2 == 0 {
                composition.push(0);
            }
        }
    }
    Ok(AndrePathDecomposition {
        composition,
        dyck: LatticePath::new(dyck).expect("deleting level steps keeps a valid path"),
    })
}

pub fn psi_inverse(dec: &AndrePathDecomposition) -> Result<LatticePath, PathError> {
    let blocks = dec.dyck.steps().chunks(2);
    if dec.composition.len() != blocks.len() + 1 || !dec.dyck.is_dyck() {
        return Err(PathError::MalformedDecomposition(format!(
            "{} runs for a Dyck path of length {}",
            dec.composition.len(),
            dec.dyck.len()
        )));
    }
    let mut steps = Vec::with_capacity(dec.dyck.len() + dec.composition.iter().sum::<usize>());
    let mut runs = dec.composition.iter();
    for block in blocks {
        steps.extend(std::iter::repeat_n(Step::L, *runs.next().expect("checked length")));
        steps.extend_from_slice(block);
    }
    steps.extend(std::iter::repeat_n(Step::L, *runs.next().expect("checked length")));
    LatticePath::andre(steps).map_err(|e| PathError::MalformedDecomposition(e.to_string()))
}

/// Weak compositions of `total` into `parts` parts, lexicographically.
pub fn weak_compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// `Y_{n,k}`: weak compositions of `n - 2k` into `k + 1` parts.
pub fn y_set(n: usize, k: usize) -> Vec<Vec<usize>> {
    assert!(2 * k <= n, "Y_(n,k) needs 2k <= n");
    weak_compositions(n - 2 * k, k + 1)
}

/// `D_n(1,-1,t) = sum_k binom(n-1-k, k) k! t^k`.
pub fn closed_formula_neg1(n: usize) -> MultiPoly {
    assert!(n >= 1, "defined for n >= 1");
    MultiPoly::from_terms((0..n).filter(|k| 2 * k < n).map(|k| {
        let factorial: BigInt = (1..=k).map(BigInt::from).product();
        let coeff = BigInt::from(binomial(n - 1 - k, k)) * factorial;
        (Monomial::var(Var::T, k as u32), coeff)
    }))
}

/// Every fraction in the catalogue agrees with explicit path sums through
/// length `n` (semilength for S-fractions).
pub fn verify_flajolet(n: usize) -> CheckResult {
    const ID: &str = "continued fraction equals weighted path sum";
    let mut checks = 0;
    for spec in CfSpec::catalogue() {
        let series = jfraction_series(&spec, n);
        for (m, mu) in series.iter().enumerate() {
            let paths = match spec.kind() {
                FractionKind::Jacobi => enumerate_motzkin(m),
                FractionKind::Stieltjes => enumerate_dyck(m),
            };
            let sum: MultiPoly = paths.iter().map(|p| weight(p, &spec)).sum();
            if &sum != mu {
                return Err(IdentityViolation::new(ID, m, mu, format!("{sum} ({})", spec.name())));
            }
            checks += 1;
        }
    }
    Ok(Verified {
        identity: ID,
        n,
        checks,
    })
}

/// `psi` round-trips and preserves the weight under the `(1,-1)` fraction,
/// for André paths of every length up to `n`.
pub fn verify_psi(n: usize) -> CheckResult {
    const ID: &str = "psi decomposition";
    let spec = CfSpec::neg1();
    let mut checks = 0;
    for len in 0..=n {
        for path in enumerate_andre_paths(len) {
            let dec = psi(&path).map_err(|e| IdentityViolation::new(ID, len, &path, e))?;
            let k = dec.dyck.len() / 2;
            let ok = dec.composition.iter().sum::<usize>() == len - 2 * k
                && psi_inverse(&dec).as_ref() == Ok(&path)
                && weight(&path, &spec) == weight(&dec.dyck, &spec);
            if !ok {
                return Err(IdentityViolation::new(
                    ID,
                    len,
                    &path,
                    format!("{:?} {}", dec.composition, dec.dyck),
                ));
            }
            checks += 1;
        }
    }
    Ok(Verified {
        identity: ID,
        n,
        checks,
    })
}

/// The closed formula for `D_n(1,-1,t)` against the `(1,-1)` fraction, and
/// `E_n(-1)` from the closed formula, the fraction and `D_n(1,-1,1)`.
pub fn verify_neg1(n: usize) -> CheckResult {
    const ID: &str = "closed formula for D_n(1,-1,t)";
    let series = neg1_series(n - 1);
    let dn = crate::cfrac::dn_series(n - 1);
    let mut checks = 0;
    for m in 1..=n {
        let closed = closed_formula_neg1(m);
        let from_cf = &series[m - 1];
        let specialised = dn[m - 1].specialize(&[(Var::P, 1), (Var::Q, -1)]);
        if &closed != from_cf || closed != specialised {
            return Err(IdentityViolation::new(
                ID,
                m,
                &closed,
                format!("{from_cf} / {specialised}"),
            ));
        }
        let at_one = |p: &MultiPoly| p.specialize(&[(Var::T, 1)]);
        let e = at_one(&closed);
        let e_dn = dn[m - 1].specialize(&[(Var::P, 1), (Var::Q, -1), (Var::T, 1)]);
        if e != at_one(from_cf) || e != e_dn {
            return Err(IdentityViolation::new(ID, m, &e, &e_dn));
        }
        checks += 2;
    }
    Ok(Verified {
        identity: ID,
        n,
        checks,
    })
}
