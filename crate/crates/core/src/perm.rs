//! Permutations in one-line notation and the statistics built on them.
//!
//! Letters are compared against the boundary `sigma_0 = sigma_{n+1} = 0`, so
//! every letter is exactly one of peak, valley, double ascent or double
//! descent. Actions are keyed by letter value; positions are looked up.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::check::{CheckResult, IdentityViolation, Verified};
use crate::poly::{Monomial, MultiPoly, Var};
use crate::sn::find_first;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("`{0}` is not a permutation of 1..=n")]
    NotAPermutation(String),
    #[error("cannot parse `{0}` as a permutation")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LetterClass {
    Peak,
    Valley,
    DoubleAscent,
    DoubleDescent,
}

/// The three vincular patterns the crate counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vincular {
    /// `2-13`, counted by [`Permutation::res`].
    TwoDashOneThree,
    /// `31-2`, counted by [`Permutation::les`].
    ThreeOneDashTwo,
    /// `13-2`: an adjacent ascent `a b` followed later by a letter strictly
    /// between `a` and `b`.
    OneThreeDashTwo,
}

impl FromStr for Vincular {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "2-13" => Ok(Vincular::TwoDashOneThree),
            "31-2" => Ok(Vincular::ThreeOneDashTwo),
            "13-2" => Ok(Vincular::OneThreeDashTwo),
            _ => Err(PermError::Parse(s.to_string())),
        }
    }
}

/// A bijection of `{1, ..., n}` written as the word `sigma_1 ... sigma_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

/// The `x`-factorization `w1 w2 x w4 w5` of a permutation: `w2` and `w4` are
/// the maximal runs of letters larger than `x` on either side of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub w1: Vec<usize>,
    pub w2: Vec<usize>,
    pub x: usize,
    pub w4: Vec<usize>,
    pub w5: Vec<usize>,
}

impl Factorization {
    pub fn concat(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.w1.len() + self.w2.len() + self.w4.len() + self.w5.len() + 1);
        out.extend_from_slice(&self.w1);
        out.extend_from_slice(&self.w2);
        out.push(self.x);
        out.extend_from_slice(&self.w4);
        out.extend_from_slice(&self.w5);
        out
    }
}

/// An orbit of the modified Foata–Strehl action.
#[derive(Clone, Debug)]
pub struct Orbit {
    /// The unique member without double descents.
    pub representative: Permutation,
    pub members: Vec<Permutation>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self, PermError> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &a in &word {
            if a == 0 || a > n || seen[a] {
                return Err(PermError::NotAPermutation(format!("{word:?}")));
            }
            seen[a] = true;
        }
        Ok(Permutation { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation { word }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn into_word(self) -> Vec<usize> {
        self.word
    }

    /// 0-based index of `letter` in the word.
    pub fn position(&self, letter: usize) -> usize {
        self.word
            .iter()
            .position(|&a| a == letter)
            .unwrap_or_else(|| panic!("letter {letter} does not occur in {self}"))
    }

    /// `sigma_i` with the zero boundary, for `i` in `0..=n+1`.
    fn padded(&self, i: usize) -> usize {
        if i == 0 || i > self.word.len() {
            0
        } else {
            self.word[i - 1]
        }
    }

    pub fn des(&self) -> usize {
        self.word.windows(2).filter(|w| w[0] > w[1]).count()
    }

    pub fn asc(&self) -> usize {
        self.word.windows(2).filter(|w| w[0] < w[1]).count()
    }

    pub fn exc(&self) -> usize {
        self.word
            .iter()
            .enumerate()
            .filter(|&(i, &a)| a > i + 1)
            .count()
    }

    pub fn inv(&self) -> usize {
        let w = &self.word;
        (0..w.len())
            .map(|i| w[i + 1..].iter().filter(|&&b| b < w[i]).count())
            .sum()
    }

    /// Class of the letter at 1-based position `i`.
    fn class_at(&self, i: usize) -> LetterClass {
        let (prev, cur, next) = (self.padded(i - 1), self.padded(i), self.padded(i + 1));
        match (prev < cur, cur < next) {
            (true, false) => LetterClass::Peak,
            (false, true) => LetterClass::Valley,
            (true, true) => LetterClass::DoubleAscent,
            (false, false) => LetterClass::DoubleDescent,
        }
    }

    /// `classes[a - 1]` is the class of letter `a`.
    pub fn classify(&self) -> Vec<LetterClass> {
        let mut out = vec![LetterClass::Peak; self.len()];
        for i in 1..=self.len() {
            out[self.word[i - 1] - 1] = self.class_at(i);
        }
        out
    }

    pub fn class_of(&self, letter: usize) -> LetterClass {
        self.class_at(self.position(letter) + 1)
    }

    /// Letters of the given class, in increasing order.
    pub fn letters_of(&self, class: LetterClass) -> Vec<usize> {
        self.classify()
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c == class)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn count_class(&self, class: LetterClass) -> usize {
        (1..=self.len()).filter(|&i| self.class_at(i) == class).count()
    }

    pub fn peaks(&self) -> usize {
        self.count_class(LetterClass::Peak)
    }

    pub fn valleys(&self) -> usize {
        self.count_class(LetterClass::Valley)
    }

    pub fn double_ascents(&self) -> usize {
        self.count_class(LetterClass::DoubleAscent)
    }

    pub fn double_descents(&self) -> usize {
        self.count_class(LetterClass::DoubleDescent)
    }

    pub fn has_double_descent(&self) -> bool {
        (1..=self.len()).any(|i| self.class_at(i) == LetterClass::DoubleDescent)
    }

    /// Occurrences of `2-13`: pairs `i < j` with `sigma_j < sigma_i < sigma_{j+1}`.
    pub fn res(&self) -> usize {
        let w = &self.word;
        let mut count = 0;
        for j in 0..w.len().saturating_sub(1) {
            let (lo, hi) = (w[j], w[j + 1]);
            if lo < hi {
                count += w[..j].iter().filter(|&&a| lo < a && a < hi).count();
            }
        }
        count
    }

    /// Occurrences of `31-2`: pairs `i < j` with `sigma_{i-1} > sigma_j > sigma_i`.
    pub fn les(&self) -> usize {
        let w = &self.word;
        let mut count = 0;
        for i in 1..w.len() {
            let (hi, lo) = (w[i - 1], w[i]);
            if hi > lo {
                count += w[i + 1..].iter().filter(|&&a| lo < a && a < hi).count();
            }
        }
        count
    }

    /// Occurrences of `13-2`: pairs `i + 1 < j` with `sigma_i < sigma_j < sigma_{i+1}`.
    pub fn pattern_13_2(&self) -> usize {
        let w = &self.word;
        let mut count = 0;
        for i in 0..w.len().saturating_sub(1) {
            let (lo, hi) = (w[i], w[i + 1]);
            if lo < hi {
                count += w[i + 2..].iter().filter(|&&a| lo < a && a < hi).count();
            }
        }
        count
    }

    pub fn count_vincular(&self, pattern: Vincular) -> usize {
        match pattern {
            Vincular::TwoDashOneThree => self.res(),
            Vincular::ThreeOneDashTwo => self.les(),
            Vincular::OneThreeDashTwo => self.pattern_13_2(),
        }
    }

    /// The subword of letters `1..=k`, itself a permutation of `[k]`.
    pub fn restrict(&self, k: usize) -> Permutation {
        Permutation {
            word: self.word.iter().copied().filter(|&a| a <= k).collect(),
        }
    }

    pub fn x_factorization(&self, x: usize) -> Factorization {
        let pos = self.position(x);
        let w = &self.word;
        let mut left = pos;
        while left > 0 && w[left - 1] > x {
            left -= 1;
        }
        let mut right = pos + 1;
        while right < w.len() && w[right] > x {
            right += 1;
        }
        Factorization {
            w1: w[..left].to_vec(),
            w2: w[left..pos].to_vec(),
            x,
            w4: w[pos + 1..right].to_vec(),
            w5: w[right..].to_vec(),
        }
    }

    /// The MFS involution at `x`: swaps `w2` and `w4` when `x` is a double
    /// ascent or double descent, and fixes the permutation otherwise.
    pub fn mfs(&self, x: usize) -> Permutation {
        match self.class_of(x) {
            LetterClass::DoubleAscent | LetterClass::DoubleDescent => {
                let f = self.x_factorization(x);
                let mut word = f.w1;
                word.extend_from_slice(&f.w4);
                word.push(x);
                word.extend_from_slice(&f.w2);
                word.extend_from_slice(&f.w5);
                Permutation { word }
            }
            LetterClass::Peak | LetterClass::Valley => self.clone(),
        }
    }

    /// Applies [`Permutation::mfs`] for each letter in turn.
    pub fn mfs_set(&self, letters: &[usize]) -> Permutation {
        letters.iter().fold(self.clone(), |s, &x| s.mfs(x))
    }

    /// The full MFS orbit.
    ///
    /// Each MFS involution leaves the class of every other letter alone, so
    /// toggling all double descents lands on the representative, and the
    /// orbit is the image of the representative under every subset of its
    /// double ascents.
    pub fn mfs_orbit(&self) -> Orbit {
        let representative = self.mfs_set(&self.letters_of(LetterClass::DoubleDescent));
        debug_assert!(!representative.has_double_descent());
        let free = representative.letters_of(LetterClass::DoubleAscent);
        let members = (0u64..1 << free.len())
            .map(|mask| {
                let chosen: Vec<usize> = free
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &x)| x)
                    .collect();
                representative.mfs_set(&chosen)
            })
            .collect();
        Orbit {
            representative,
            members,
        }
    }

    /// `p^res q^les t^des`.
    pub fn res_les_des(&self) -> Monomial {
        Monomial::var(Var::P, self.res() as u32)
            .with(Var::Q, self.les() as u32)
            .with(Var::T, self.des() as u32)
    }

    /// `p^res q^les t^des u^da v^dd w^valley`.
    pub fn six_statistics(&self) -> Monomial {
        let classes = self.classify();
        let count = |c: LetterClass| classes.iter().filter(|&&x| x == c).count() as u32;
        self.res_les_des()
            .with(Var::U, count(LetterClass::DoubleAscent))
            .with(Var::V, count(LetterClass::DoubleDescent))
            .with(Var::W, count(LetterClass::Valley))
    }
}

/// Orbit generating function `sum p^res q^les t^des` over an orbit.
pub fn orbit_polynomial(orbit: &Orbit) -> MultiPoly {
    MultiPoly::from_terms(orbit.members.iter().map(|s| (s.res_les_des(), 1)))
}

impl fmt::Display for Permutation {
    /// Digits without separators up to `n = 9`, comma-separated beyond.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for a in &self.word {
                write!(f, "{a}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|a| a.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let word: Option<Vec<usize>> = if s.contains(',') {
            s.split(',').map(|x| x.trim().parse().ok()).collect()
        } else if s.contains(char::is_whitespace) {
            s.split_whitespace().map(|x| x.parse().ok()).collect()
        } else {
            s.chars().map(|ch| ch.to_digit(10).map(|d| d as usize)).collect()
        };
        let word = word.ok_or_else(|| PermError::Parse(s.to_string()))?;
        Permutation::new(word)
    }
}

/// The class of every letter is read off from which of `w2`, `w4` are empty.
pub fn verify_factorization_classes(n: usize) -> CheckResult {
    const ID: &str = "class from x-factorization";
    let count = find_first(n, |s| {
        for x in 1..=n {
            let f = s.x_factorization(x);
            let predicted = match (f.w2.is_empty(), f.w4.is_empty()) {
                (true, true) => LetterClass::Peak,
                (false, false) => LetterClass::Valley,
                (true, false) => LetterClass::DoubleAscent,
                (false, true) => LetterClass::DoubleDescent,
            };
            if predicted != s.class_of(x) || f.concat() != s.word() {
                return Err(IdentityViolation::new(
                    ID,
                    n,
                    format!("{s} at {x}: {predicted:?}"),
                    format!("{:?}", s.class_of(x)),
                ));
            }
        }
        Ok(())
    })?;
    Ok(Verified {
        identity: ID,
        n,
        checks: count as u64 * n as u64,
    })
}

/// Each MFS map is an involution and any two of them commute.
pub fn verify_mfs_commutation(n: usize) -> CheckResult {
    const ID: &str = "MFS maps commute";
    let count = find_first(n, |s| {
        for x in 1..=n {
            if s.mfs(x).mfs(x) != *s {
                return Err(IdentityViolation::new(ID, n, s, format!("{} at {x}", s.mfs(x).mfs(x))));
            }
            for y in x + 1..=n {
                let (a, b) = (s.mfs(x).mfs(y), s.mfs(y).mfs(x));
                if a != b {
                    return Err(IdentityViolation::new(ID, n, format!("{s} at {x},{y}: {a}"), b));
                }
            }
        }
        Ok(())
    })?;
    Ok(Verified {
        identity: ID,
        n,
        checks: count as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn basic_statistics() {
        let id = perm("1234");
        assert_eq!((id.des(), id.exc(), id.inv()), (0, 0, 0));
        assert_eq!(perm("31524").des(), 2);
        let s = perm("21");
        assert_eq!((s.inv(), s.exc()), (1, 1));
    }

    #[test]
    fn classification_of_nine_letter_example() {
        let s = perm("591638427");
        assert_eq!(s.letters_of(LetterClass::Peak), vec![6, 7, 8, 9]);
        assert_eq!(s.letters_of(LetterClass::Valley), vec![1, 2, 3]);
        assert_eq!(s.letters_of(LetterClass::DoubleAscent), vec![5]);
        assert_eq!(s.letters_of(LetterClass::DoubleDescent), vec![4]);
    }

    #[test]
    fn classification_edge_cases() {
        let id = Permutation::identity(6);
        assert_eq!(id.letters_of(LetterClass::Peak), vec![6]);
        assert_eq!(id.letters_of(LetterClass::DoubleAscent), vec![1, 2, 3, 4, 5]);
        let s = perm("132");
        assert_eq!(s.letters_of(LetterClass::Valley), Vec::<usize>::new());
        assert_eq!(s.letters_of(LetterClass::Peak), vec![3]);
        assert_eq!(s.letters_of(LetterClass::DoubleAscent), vec![1]);
        assert_eq!(s.letters_of(LetterClass::DoubleDescent), vec![2]);
        assert_eq!(perm("1").classify(), vec![LetterClass::Peak]);
    }

    #[test]
    fn vincular_counts() {
        let s = perm("31524");
        assert_eq!((s.res(), s.les()), (2, 2));
        assert_eq!((perm("4123").res(), perm("4123").les()), (0, 2));
        assert_eq!((perm("3124").res(), perm("3124").les()), (1, 1));
        assert_eq!(s.count_vincular("2-13".parse().unwrap()), 2);
        assert_eq!(s.count_vincular("31-2".parse().unwrap()), 2);
        // 1 3 2: the ascent 13 followed by 2
        assert_eq!(perm("132").pattern_13_2(), 1);
        assert_eq!(perm("123").pattern_13_2(), 0);
        assert!("12-3".parse::<Vincular>().is_err());
    }

    #[test]
    fn factorizations() {
        let f = perm("76314582").x_factorization(4);
        assert_eq!(f.w1, vec![7, 6, 3, 1]);
        assert!(f.w2.is_empty());
        assert_eq!(f.w4, vec![5, 8]);
        assert_eq!(f.w5, vec![2]);
        let f = perm("31524").x_factorization(1);
        assert_eq!((f.w1.clone(), f.w2.clone(), f.w4.clone(), f.w5.clone()),
                   (vec![], vec![3], vec![5, 2, 4], vec![]));
        let f = perm("1").x_factorization(1);
        assert!(f.w1.is_empty() && f.w2.is_empty() && f.w4.is_empty() && f.w5.is_empty());
        assert_eq!(f.concat(), vec![1]);
    }

    #[test]
    fn mfs_moves_double_ascent() {
        let s = perm("591638427");
        let moved = s.mfs(5);
        assert_eq!(moved, perm("951638427"));
        assert_eq!(moved.class_of(5), LetterClass::DoubleDescent);
        assert_eq!(moved.mfs(5), s);
        // valleys and peaks are fixed points
        assert_eq!(s.mfs(1), s);
        assert_eq!(s.mfs(9), s);
    }

    #[test]
    fn identity_orbit() {
        let orbit = Permutation::identity(5).mfs_orbit();
        assert_eq!(orbit.members.len(), 16);
        assert_eq!(orbit.representative, Permutation::identity(5));
        for m in &orbit.members {
            assert_eq!(m.mfs_orbit().representative, orbit.representative);
        }
    }

    #[test]
    fn text_forms() {
        let s = perm("31524");
        assert_eq!(s.to_string(), "31524");
        let long: Permutation = "11,2,12,13,1,6,4,5,3,8,9,7,10".parse().unwrap();
        assert_eq!(long.to_string(), "11,2,12,13,1,6,4,5,3,8,9,7,10");
        assert_eq!(perm("3 1 2"), perm("312"));
        assert!("3124x".parse::<Permutation>().is_err());
        assert!("3124 4".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().unwrap().is_empty());
    }

    #[test]
    fn restriction() {
        assert_eq!(perm("43512").restrict(4), perm("4312"));
        assert_eq!(perm("43512").restrict(0), Permutation::identity(0));
    }
}
