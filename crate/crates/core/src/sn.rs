//! Enumeration of the symmetric group, sequential and parallel.
//!
//! The parallel helpers split `S_n` by the first two letters and hand each
//! block to rayon. Blocks are visited in lexicographic order internally and
//! reassembled in order, so results never depend on the thread count.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::perm::Permutation;
use crate::poly::{Monomial, MultiPoly};

/// Lexicographic iterator over the permutations of a fixed word.
#[derive(Clone, Debug)]
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Permutations {
    fn starting_at(word: Vec<usize>) -> Self {
        Permutations { next: Some(word) }
    }
}

impl Iterator for Permutations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(current)
    }
}

fn next_permutation(w: &mut [usize]) -> bool {
    if w.len() < 2 {
        return false;
    }
    let mut i = w.len() - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = w.len() - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

/// All of `S_n` in lexicographic order.
pub fn permutations(n: usize) -> impl Iterator<Item = Permutation> {
    Permutations::starting_at((1..=n).collect()).map(Permutation::from_word_unchecked)
}

fn prefixes(n: usize) -> Vec<Vec<usize>> {
    match n {
        0 => vec![vec![]],
        1 => vec![vec![1]],
        _ => {
            let mut out = Vec::with_capacity(n * (n - 1));
            for a in 1..=n {
                for b in (1..=n).filter(|&b| b != a) {
                    out.push(vec![a, b]);
                }
            }
            out
        }
    }
}

fn block(n: usize, prefix: &[usize]) -> impl Iterator<Item = Permutation> + '_ {
    let rest: Vec<usize> = (1..=n).filter(|a| !prefix.contains(a)).collect();
    Permutations::starting_at(rest).map(move |tail| {
        let mut word = prefix.to_vec();
        word.extend(tail);
        Permutation::from_word_unchecked(word)
    })
}

/// `sum` of the monomials returned by `weight` over `S_n`; `None` skips a
/// permutation.
pub fn sum_over_sn<F>(n: usize, weight: F) -> MultiPoly
where
    F: Fn(&Permutation) -> Option<Monomial> + Sync,
{
    let counts = prefixes(n)
        .par_iter()
        .map(|prefix| {
            let mut acc: HashMap<Monomial, i64> = HashMap::new();
            for s in block(n, prefix) {
                if let Some(m) = weight(&s) {
                    *acc.entry(m).or_insert(0) += 1;
                }
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (m, k) in b {
                *a.entry(m).or_insert(0) += k;
            }
            a
        });
    MultiPoly::from_terms(counts)
}

/// Permutations of `S_n` satisfying `keep`, in lexicographic order.
pub fn filter_sn<F>(n: usize, keep: F) -> Vec<Permutation>
where
    F: Fn(&Permutation) -> bool + Sync,
{
    prefixes(n)
        .par_iter()
        .map(|prefix| block(n, prefix).filter(|s| keep(s)).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Runs `check` on every permutation of `S_n` and returns the
/// lexicographically first failure.
pub fn find_first<F, E>(n: usize, check: F) -> Result<usize, E>
where
    F: Fn(&Permutation) -> Result<(), E> + Sync,
    E: Send,
{
    let results: Vec<Result<usize, E>> = prefixes(n)
        .par_iter()
        .map(|prefix| {
            let mut seen = 0;
            for s in block(n, prefix) {
                check(&s)?;
                seen += 1;
            }
            Ok(seen)
        })
        .collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(total)
}
