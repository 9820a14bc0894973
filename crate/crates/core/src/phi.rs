//! A valley-moving action on permutations without double descents, and the
//! bijection `D_{n,k} x 2^[k] -> G_{n,k}` it induces.
//!
//! For a valley `x` with factorization `w1 w2 x w4 w5`, let `y1 = min w2`,
//! `y2 = min w4` and `y = min(y1, y2)`. The transform [`phi_x`] moves `y` to
//! the other side of `x`; how the surrounding letters are rearranged depends
//! on whether `y` is a peak, a double ascent or a valley.

use std::collections::BTreeSet;
use std::fmt;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::andre::{enumerate_d, is_andre};
use crate::check::{CheckResult, IdentityViolation, Verified};
use crate::perm::{LetterClass, Permutation};
use crate::sn::{filter_sn, find_first};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhiError {
    #[error("{letter} is not a valley of {sigma}")]
    NotAValley { sigma: String, letter: usize },
    #[error("{0} has a double descent")]
    NotInG(String),
    #[error("{0} is not an André permutation")]
    NotAndre(String),
    #[error("{letters:?} is not a set of valleys of {sigma}")]
    NotASubset { sigma: String, letters: Vec<usize> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Quality {
    /// `y1 > y2`.
    Good,
    /// `y1 < y2`.
    Bad,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ValleyType {
    /// `min(y1, y2)` is a peak or a double ascent.
    I,
    /// `min(y1, y2)` is a valley.
    II,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValleyInfo {
    pub x: usize,
    pub y1: usize,
    pub y2: usize,
    pub quality: Quality,
    pub vtype: ValleyType,
}

impl ValleyInfo {
    pub fn y(&self) -> usize {
        self.y1.min(self.y2)
    }
}

/// Which rule of the transform fired, named by the class of `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    Peak,
    DoubleAscent,
    Valley,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Peak => "i",
            Case::DoubleAscent => "ii",
            Case::Valley => "iii",
        })
    }
}

/// One application of [`phi_x`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub x: usize,
    pub case: Case,
    pub before: Permutation,
    pub after: Permutation,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "step: x={} case={} before={} after={}",
            self.x, self.case, self.before, self.after
        )
    }
}

/// A set of valleys, held as letters, with its image in `2^[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValleySubset {
    /// Increasing.
    pub letters: Vec<usize>,
    /// 1-based ranks of `letters` among all valleys of the reference
    /// permutation, increasing.
    pub indices: Vec<usize>,
}

impl ValleySubset {
    pub fn from_letters(sigma: &Permutation, letters: &[usize]) -> Result<Self, PhiError> {
        let valleys = sigma.letters_of(LetterClass::Valley);
        let set: BTreeSet<usize> = letters.iter().copied().collect();
        let indices: Option<Vec<usize>> = set
            .iter()
            .map(|a| valleys.iter().position(|v| v == a).map(|i| i + 1))
            .collect();
        match indices {
            Some(indices) => Ok(ValleySubset {
                letters: set.into_iter().collect(),
                indices,
            }),
            None => Err(PhiError::NotASubset {
                sigma: sigma.to_string(),
                letters: letters.to_vec(),
            }),
        }
    }

    pub fn from_indices(sigma: &Permutation, indices: &[usize]) -> Result<Self, PhiError> {
        let valleys = sigma.letters_of(LetterClass::Valley);
        let letters: Option<Vec<usize>> = indices
            .iter()
            .map(|&i| i.checked_sub(1).and_then(|i| valleys.get(i)).copied())
            .collect();
        let letters = letters.ok_or_else(|| PhiError::NotASubset {
            sigma: sigma.to_string(),
            letters: indices.to_vec(),
        })?;
        ValleySubset::from_letters(sigma, &letters)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

fn require_g(sigma: &Permutation) -> Result<(), PhiError> {
    if sigma.has_double_descent() {
        Err(PhiError::NotInG(sigma.to_string()))
    } else {
        Ok(())
    }
}

pub fn valley_info(sigma: &Permutation, x: usize) -> Result<ValleyInfo, PhiError> {
    require_g(sigma)?;
    if x == 0 || x > sigma.len() || sigma.class_of(x) != LetterClass::Valley {
        return Err(PhiError::NotAValley {
            sigma: sigma.to_string(),
            letter: x,
        });
    }
    let f = sigma.x_factorization(x);
    // both sides of a valley are nonempty runs of larger letters
    let y1 = *f.w2.iter().min().expect("a valley has a larger left neighbour");
    let y2 = *f.w4.iter().min().expect("a valley has a larger right neighbour");
    let quality = if y1 > y2 { Quality::Good } else { Quality::Bad };
    let vtype = match sigma.class_of(y1.min(y2)) {
        LetterClass::Peak | LetterClass::DoubleAscent => ValleyType::I,
        LetterClass::Valley => ValleyType::II,
        LetterClass::DoubleDescent => unreachable!("permutation has no double descents"),
    };
    Ok(ValleyInfo {
        x,
        y1,
        y2,
        quality,
        vtype,
    })
}

fn join(parts: &[&[usize]]) -> Permutation {
    Permutation::from_word_unchecked(parts.concat())
}

/// `phi(sigma, x)` together with the rule that produced it.
pub fn phi_step(sigma: &Permutation, x: usize) -> Result<(Permutation, Case), PhiError> {
    let info = valley_info(sigma, x)?;
    let y = info.y();
    let f = sigma.x_factorization(x);
    let (w1, w2, w4, w5) = (&f.w1[..], &f.w2[..], &f.w4[..], &f.w5[..]);
    let right = y == info.y2;
    let split = |w: &[usize]| {
        let i = w.iter().position(|&a| a == y).expect("y lies in its run");
        (w[..i].to_vec(), w[i + 1..].to_vec())
    };
    let case = match sigma.class_of(y) {
        LetterClass::Peak => Case::Peak,
        LetterClass::DoubleAscent => Case::DoubleAscent,
        LetterClass::Valley => Case::Valley,
        LetterClass::DoubleDescent => unreachable!("permutation has no double descents"),
    };
    let out = match (case, right) {
        (Case::Peak, true) => {
            debug_assert_eq!(w4, [y]);
            join(&[w1, &[y], &[x], w2, w5])
        }
        (Case::Peak, false) => {
            debug_assert_eq!(w2, [y]);
            join(&[w1, w4, &[x], &[y], w5])
        }
        (Case::DoubleAscent, true) => {
            let (head, rest) = split(w4);
            assert!(head.is_empty(), "double ascent y must open w4 in {sigma}");
            join(&[w1, &[y], w2, &[x], &rest, w5])
        }
        (Case::DoubleAscent, false) => {
            let (head, rest) = split(w2);
            assert!(head.is_empty(), "double ascent y must open w2 in {sigma}");
            join(&[w1, &rest, &[x], &[y], w4, w5])
        }
        (Case::Valley, true) => {
            let (w_a, w_b) = split(w4);
            assert!(!w_a.is_empty() && !w_b.is_empty(), "valley y splits w4 in {sigma}");
            join(&[w1, w2, &[y], &w_a, &[x], &w_b, w5])
        }
        (Case::Valley, false) => {
            let (w_a, w_b) = split(w2);
            assert!(!w_a.is_empty() && !w_b.is_empty(), "valley y splits w2 in {sigma}");
            join(&[w1, &w_a, &[x], &w_b, &[y], w4, w5])
        }
    };
    Ok((out, case))
}

pub fn phi_x(sigma: &Permutation, x: usize) -> Result<Permutation, PhiError> {
    phi_step(sigma, x).map(|(s, _)| s)
}

fn apply(sigma: Permutation, x: usize, trace: &mut Vec<Step>) -> Permutation {
    let (after, case) = phi_step(&sigma, x).expect("letter stays a valley under the action");
    trace.push(Step {
        x,
        case,
        before: sigma,
        after: after.clone(),
    });
    after
}

/// `phi(sigma, S)` and every elementary step taken.
///
/// Valley types are read off `sigma` once. Type I valleys are handled first
/// in increasing order, then type II valleys in decreasing order.
pub fn phi_set_traced(
    sigma: &Permutation,
    letters: &[usize],
) -> Result<(Permutation, Vec<Step>), PhiError> {
    if !is_andre(sigma) {
        return Err(PhiError::NotAndre(sigma.to_string()));
    }
    let subset = ValleySubset::from_letters(sigma, letters)?;
    let mut type1 = Vec::new();
    let mut type2 = Vec::new();
    for &x in &subset.letters {
        match valley_info(sigma, x)?.vtype {
            ValleyType::I => type1.push(x),
            ValleyType::II => type2.push(x),
        }
    }
    let mut trace = Vec::with_capacity(subset.len());
    let mut current = sigma.clone();
    for x in type1 {
        current = apply(current, x, &mut trace);
    }
    for x in type2.into_iter().rev() {
        current = apply(current, x, &mut trace);
    }
    Ok((current, trace))
}

pub fn phi_set(sigma: &Permutation, letters: &[usize]) -> Result<Permutation, PhiError> {
    phi_set_traced(sigma, letters).map(|(s, _)| s)
}

fn bad_valleys(sigma: &Permutation, vtype: ValleyType) -> Vec<usize> {
    sigma
        .letters_of(LetterClass::Valley)
        .into_iter()
        .filter(|&x| {
            let info = valley_info(sigma, x).expect("letters_of returned a valley");
            info.quality == Quality::Bad && info.vtype == vtype
        })
        .collect()
}

/// Recovers `(sigma, S)` from `tau` in `G_{n,k}`, with every step taken.
///
/// Bad type II valleys are cleared one at a time, smallest first, with
/// types recomputed after each step; the remaining bad valleys are all of
/// type I and are cleared together.
pub fn phi_inverse_traced(
    tau: &Permutation,
) -> Result<(Permutation, ValleySubset, Vec<Step>), PhiError> {
    require_g(tau)?;
    let mut current = tau.clone();
    let mut chosen = Vec::new();
    let mut trace = Vec::new();
    let mut last: Option<usize> = None;
    while let Some(&z) = bad_valleys(&current, ValleyType::II).first() {
        assert!(
            last.is_none_or(|l| z > l),
            "recovery loop must move to larger valleys (tau = {tau})"
        );
        last = Some(z);
        current = apply(current, z, &mut trace);
        chosen.push(z);
    }
    for z in bad_valleys(&current, ValleyType::I) {
        current = apply(current, z, &mut trace);
        chosen.push(z);
    }
    let subset = ValleySubset::from_letters(&current, &chosen)
        .expect("the action preserves the valley set");
    Ok((current, subset, trace))
}

pub fn phi_inverse(tau: &Permutation) -> Result<(Permutation, ValleySubset), PhiError> {
    phi_inverse_traced(tau).map(|(s, subset, _)| (s, subset))
}

fn subsets(letters: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0u64..1 << letters.len()).map(move |mask| {
        letters
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &x)| x)
            .collect()
    })
}

/// Exhaustive check that `phi` is a bijection `D_{n,k} x 2^[k] -> G_{n,k}`
/// for every `k`, shifting `res` up and `les` down by `|S|`, and that
/// [`phi_inverse`] undoes it.
pub fn verify_bijection(n: usize) -> CheckResult {
    const ID: &str = "phi bijection D_{n,k} x 2^[k] -> G_{n,k}";
    let mut checks = 0u64;
    for k in 0..=n.saturating_sub(1) / 2 {
        let d = enumerate_d(n, k);
        let images: Vec<Vec<Permutation>> = d
            .par_iter()
            .map(|sigma| -> Result<Vec<Permutation>, IdentityViolation> {
                let fail = |expected: String, found: String| {
                    IdentityViolation::new(ID, n, expected, found).at_k(k)
                };
                let valleys = sigma.letters_of(LetterClass::Valley);
                let mut out = Vec::with_capacity(1 << valleys.len());
                for s in subsets(&valleys) {
                    let tau = phi_set(sigma, &s).map_err(|e| fail(format!("phi({sigma}, {s:?})"), e.to_string()))?;
                    if tau.has_double_descent() || tau.valleys() != k {
                        return Err(fail(format!("phi({sigma}, {s:?}) in G_(n,k)"), tau.to_string()));
                    }
                    let shift = s.len();
                    if tau.res() != sigma.res() + shift || tau.les() + shift != sigma.les() {
                        return Err(fail(
                            format!("res {} les {}", sigma.res() + shift, sigma.les() - shift),
                            format!("{tau}: res {} les {}", tau.res(), tau.les()),
                        ));
                    }
                    let (back, subset) = phi_inverse(&tau).map_err(|e| fail(format!("inverse of {tau}"), e.to_string()))?;
                    if &back != sigma || subset.letters != s {
                        return Err(fail(
                            format!("({sigma}, {s:?})"),
                            format!("({back}, {:?})", subset.letters),
                        ));
                    }
                    out.push(tau);
                }
                Ok(out)
            })
            .collect::<Result<_, _>>()?;
        let total: usize = images.iter().map(Vec::len).sum();
        let distinct: BTreeSet<&Permutation> = images.iter().flatten().collect();
        let g = filter_sn(n, |s| s.valleys() == k && !s.has_double_descent());
        if distinct.len() != total || total != g.len() {
            return Err(IdentityViolation::new(
                ID,
                n,
                format!("{} distinct images", g.len()),
                format!("{} images, {} distinct", total, distinct.len()),
            )
            .at_k(k));
        }
        checks += total as u64;
    }
    Ok(Verified {
        identity: ID,
        n,
        checks,
    })
}

/// Every valley of every `sigma` in `G_n`: `phi_x` stays in `G_n`, keeps
/// `des` and the valley set, is an involution, and moves `res`/`les` by one
/// in the direction set by the valley's quality.
pub fn verify_single_steps(n: usize) -> CheckResult {
    const ID: &str = "single phi step";
    let checks = find_first(n, |sigma| {
        if sigma.has_double_descent() {
            return Ok(());
        }
        for x in sigma.letters_of(LetterClass::Valley) {
            let info = valley_info(sigma, x).expect("x is a valley");
            let tau = phi_x(sigma, x).expect("x is a valley");
            let (dr, dl): (isize, isize) = match info.quality {
                Quality::Good => (1, -1),
                Quality::Bad => (-1, 1),
            };
            let ok = !tau.has_double_descent()
                && tau.des() == sigma.des()
                && tau.letters_of(LetterClass::Valley) == sigma.letters_of(LetterClass::Valley)
                && tau.res() as isize == sigma.res() as isize + dr
                && tau.les() as isize == sigma.les() as isize + dl
                && phi_x(&tau, x).as_ref() == Ok(sigma);
            if !ok {
                return Err(IdentityViolation::new(
                    ID,
                    n,
                    format!("a valid step from {sigma} at {x}"),
                    tau.to_string(),
                ));
            }
        }
        Ok(())
    })? as u64;
    Ok(Verified {
        identity: ID,
        n,
        checks,
    })
}

/// Applying the type I part of `S` in random orders never changes the image.
pub fn verify_type1_order_independence(n: usize, seed: u64) -> CheckResult {
    const ID: &str = "type I order independence";
    let mut rng = StdRng::seed_from_u64(seed);
    let mut checks = 0u64;
    for k in 0..=n.saturating_sub(1) / 2 {
        for sigma in enumerate_d(n, k) {
            let type1: Vec<usize> = sigma
                .letters_of(LetterClass::Valley)
                .into_iter()
                .filter(|&x| valley_info(&sigma, x).unwrap().vtype == ValleyType::I)
                .collect();
            for s in subsets(&type1) {
                let canonical = s.iter().fold(sigma.clone(), |acc, &x| phi_x(&acc, x).unwrap());
                let mut order = s.clone();
                for _ in 0..4 {
                    order.shuffle(&mut rng);
                    let image = order.iter().fold(sigma.clone(), |acc, &x| phi_x(&acc, x).unwrap());
                    if image != canonical {
                        return Err(IdentityViolation::new(
                            ID,
                            n,
                            format!("{canonical} for {sigma} with {s:?}"),
                            format!("{image} with order {order:?}"),
                        ));
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(Verified {
        identity: ID,
        n,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn valley_information() {
        let s = perm("31524");
        let two = valley_info(&s, 2).unwrap();
        assert_eq!((two.y1, two.y2, two.quality, two.vtype), (5, 4, Quality::Good, ValleyType::I));
        let one = valley_info(&s, 1).unwrap();
        assert_eq!((one.y1, one.y2, one.quality, one.vtype), (3, 2, Quality::Good, ValleyType::II));
        let other = valley_info(&perm("53412"), 1).unwrap();
        assert_eq!((other.y1, other.y2, other.vtype), (3, 2, ValleyType::I));
        assert!(matches!(valley_info(&s, 5), Err(PhiError::NotAValley { .. })));
        assert!(matches!(valley_info(&perm("321"), 1), Err(PhiError::NotInG(_))));
    }

    #[test]
    fn worked_example_forward() {
        let s = perm("31524");
        assert_eq!(phi_x(&s, 2).unwrap(), perm("31425"));
        assert_eq!(phi_x(&perm("31425"), 1).unwrap(), perm("32415"));
        let (tau, trace) = phi_set_traced(&s, &[1, 2]).unwrap();
        assert_eq!(tau, perm("32415"));
        let lines: Vec<String> = trace.iter().map(|s| s.to_string()).collect();
        assert_eq!(
            lines,
            [
                "step: x=2 case=i before=31524 after=31425",
                "step: x=1 case=iii before=31425 after=32415",
            ]
        );
        assert_eq!(phi_set(&s, &[]).unwrap(), s);
    }

    #[test]
    fn worked_example_inverse() {
        let tau: Permutation = "11,2,12,13,1,6,4,5,3,8,9,7,10".parse().unwrap();
        let (sigma, subset, trace) = phi_inverse_traced(&tau).unwrap();
        let expected: Permutation = "11,1,12,13,2,6,3,9,7,8,10,4,5".parse().unwrap();
        assert_eq!(sigma, expected);
        assert_eq!(subset.letters, vec![1, 3, 4, 7]);
        assert_eq!(trace[0].after.to_string(), "11,1,12,13,2,6,4,5,3,8,9,7,10");
        assert_eq!(trace[1].after.to_string(), "11,1,12,13,2,6,3,5,4,8,9,7,10");
        assert!(is_andre(&sigma));
        assert_eq!(phi_set(&sigma, &subset.letters).unwrap(), tau);
        // exchanging 9 and 10 gives another André permutation, with a different image
        let near: Permutation = "11,1,12,13,2,6,3,10,7,8,9,4,5".parse().unwrap();
        assert!(is_andre(&near));
        assert_ne!(phi_set(&near, &[1, 3, 4, 7]).unwrap(), tau);
    }

    #[test]
    fn valley_hopping_table() {
        let rows: [(&str, &[usize], &str, usize, usize); 16] = [
            ("31524", &[], "31524", 2, 2),
            ("31524", &[1], "32514", 3, 1),
            ("31524", &[2], "31425", 3, 1),
            ("31524", &[1, 2], "32415", 4, 0),
            ("41523", &[], "41523", 1, 3),
            ("41523", &[1], "42513", 2, 2),
            ("41523", &[2], "41325", 2, 2),
            ("41523", &[1, 2], "42315", 3, 1),
            ("51423", &[], "51423", 0, 4),
            ("51423", &[1], "52413", 1, 3),
            ("51423", &[2], "51324", 1, 3),
            ("51423", &[1, 2], "52314", 2, 2),
            ("53412", &[], "53412", 0, 2),
            ("53412", &[1], "21534", 1, 1),
            ("53412", &[3], "43512", 1, 1),
            ("53412", &[1, 3], "21435", 2, 0),
        ];
        for (sigma, s, tau, res, les) in rows {
            let image = phi_set(&perm(sigma), s).unwrap();
            assert_eq!(image, perm(tau), "phi({sigma}, {s:?})");
            assert_eq!((image.res(), image.les()), (res, les), "{tau}");
            let (back, subset) = phi_inverse(&image).unwrap();
            assert_eq!((back, subset.letters), (perm(sigma), s.to_vec()));
        }
    }

    #[test]
    fn subset_views() {
        let s = perm("53412");
        let sub = ValleySubset::from_letters(&s, &[3]).unwrap();
        assert_eq!(sub.indices, vec![2]);
        assert_eq!(ValleySubset::from_indices(&s, &[1, 2]).unwrap().letters, vec![1, 3]);
        assert!(ValleySubset::from_letters(&s, &[2]).is_err());
        assert!(ValleySubset::from_indices(&s, &[3]).is_err());
        assert!(matches!(phi_set(&perm("43512"), &[]), Err(PhiError::NotAndre(_))));
        assert!(matches!(phi_set(&s, &[4]), Err(PhiError::NotASubset { .. })));
    }

    #[test]
    fn andre_inputs_invert_trivially() {
        let s = perm("53412");
        let (back, subset) = phi_inverse(&s).unwrap();
        assert_eq!(back, s);
        assert!(subset.is_empty());
        assert_eq!(phi_inverse(&perm("21534")).unwrap().1.letters, vec![1]);
    }

    #[test]
    fn small_exhaustive_checks() {
        for n in 1..=6 {
            verify_bijection(n).unwrap();
            verify_single_steps(n).unwrap();
            verify_type1_order_independence(n, 7).unwrap();
        }
    }
}
