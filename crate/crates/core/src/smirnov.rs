//! Segmented Smirnov words, their statistics, and the bijection ψ between
//! the (1,2) basis and segmented permutations.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::basis::{BasisElement, BasisVariant};
use crate::combinat::IndexSubset;
use crate::error::{Error, Result};
use crate::qpoly::{q_integer, QuvPolynomial};

/// A word over positive integers cut into blocks; adjacent letters inside a
/// block differ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SegmentedWord {
    letters: Vec<u32>,
    splits: IndexSubset,
}

impl SegmentedWord {
    pub fn new(letters: Vec<u32>, splits: IndexSubset) -> Result<Self> {
        let n = letters.len() as u32;
        if splits.ambient() != n {
            return Err(Error::InvalidArgument(format!(
                "split set has ambient {} but the word has length {n}",
                splits.ambient()
            )));
        }
        if letters.contains(&0) {
            return Err(Error::InvalidArgument("letters must be positive".into()));
        }
        for i in 1..letters.len() {
            if !splits.contains(i as u32) && letters[i - 1] == letters[i] {
                return Err(Error::InvalidArgument(format!(
                    "equal adjacent letters at positions {i} and {} inside a block",
                    i + 1
                )));
            }
        }
        Ok(Self { letters, splits })
    }

    pub fn from_blocks(blocks: &[Vec<u32>]) -> Result<Self> {
        let mut letters = Vec::new();
        let mut cuts = Vec::new();
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            letters.extend_from_slice(block);
            if b + 1 < blocks.len() {
                cuts.push(letters.len() as u32);
            }
        }
        let splits = IndexSubset::from_elements(letters.len() as u32, &cuts)?;
        Self::new(letters, splits)
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn splits(&self) -> IndexSubset {
        self.splits
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Whether 1-indexed position `i` starts a block.
    pub fn is_initial(&self, i: usize) -> bool {
        i == 1 || self.splits.contains(i as u32 - 1)
    }

    pub fn blocks(&self) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = Vec::new();
        for (idx, &a) in self.letters.iter().enumerate() {
            if self.is_initial(idx + 1) {
                out.push(Vec::new());
            }
            out.last_mut().expect("a block was opened").push(a);
        }
        out
    }

    pub fn block_count(&self) -> usize {
        if self.letters.is_empty() {
            0
        } else {
            self.splits.len() + 1
        }
    }

    /// `content[a-1]` = number of occurrences of letter `a`.
    pub fn content(&self) -> Vec<u32> {
        let max = self.letters.iter().copied().max().unwrap_or(0) as usize;
        let mut c = vec![0; max];
        for &a in &self.letters {
            c[a as usize - 1] += 1;
        }
        c
    }

    pub fn is_permutation(&self) -> bool {
        let c = self.content();
        c.len() == self.letters.len() && c.iter().all(|&m| m == 1)
    }

    /// Within-block rises.
    pub fn ascents(&self) -> usize {
        (1..self.len())
            .filter(|&i| !self.splits.contains(i as u32) && self.letters[i - 1] < self.letters[i])
            .count()
    }

    /// Within-block falls.
    pub fn descents(&self) -> usize {
        (1..self.len())
            .filter(|&i| !self.splits.contains(i as u32) && self.letters[i - 1] > self.letters[i])
            .count()
    }

    /// Thick: initial in its block or the end of a descent (1-indexed `i`).
    pub fn is_thick(&self, i: usize) -> bool {
        self.is_initial(i) || self.letters[i - 2] > self.letters[i - 1]
    }

    pub fn is_thin(&self, i: usize) -> bool {
        !self.is_thick(i)
    }

    /// Single-digit rendering such as `2|13`; `None` once a letter exceeds 9.
    pub fn compact(&self) -> Option<String> {
        if self.letters.iter().any(|&a| a > 9) {
            return None;
        }
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(u32::to_string).collect::<String>())
            .collect();
        Some(blocks.join("|"))
    }
}

impl fmt::Display for SegmentedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        f.write_str(&blocks.join("|"))
    }
}

impl FromStr for SegmentedWord {
    type Err = Error;

    /// Accepts `2|1 3` (letters separated by whitespace) or, when the whole
    /// literal has no whitespace, single-digit letters such as `2|13`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty segmented word".into()));
        }
        let spaced = s.chars().any(char::is_whitespace);
        let mut blocks = Vec::new();
        for raw in s.split('|') {
            let raw = raw.trim();
            let letters: Vec<u32> = if spaced {
                raw.split_whitespace()
                    .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad letter {t:?} in {s:?}"))))
                    .collect::<Result<_>>()?
            } else {
                raw.chars()
                    .map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad letter {c:?} in {s:?}"))))
                    .collect::<Result<_>>()?
            };
            if letters.is_empty() {
                return Err(Error::Parse(format!("empty block in {s:?}")));
            }
            blocks.push(letters);
        }
        Self::from_blocks(&blocks).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Number of sminversions: pairs `i < j` with `w_i > w_j` such that
/// (1) `w_j` starts its block, or (2) `w_{j-1} > w_i`, or
/// (3) `i ≠ j-1`, `w_{j-1} = w_i` and `w_{j-1}` starts its block, or
/// (4) `i ≠ j-1` and `w_{j-2} > w_{j-1} = w_i`.
pub fn sminv(w: &SegmentedWord) -> u32 {
    let l = &w.letters;
    let n = l.len();
    let mut count = 0;
    for j in 2..=n {
        let wj = l[j - 1];
        for i in 1..j {
            let wi = l[i - 1];
            if wi <= wj {
                continue;
            }
            let prev = l[j - 2];
            let hit = w.is_initial(j)
                || prev > wi
                || (i != j - 1 && prev == wi && w.is_initial(j - 1))
                || (i != j - 1 && j >= 3 && l[j - 3] > prev && prev == wi);
            if hit {
                count += 1;
            }
        }
    }
    count
}

/// Letters `m ∈ [1, n-1]` that are splitting: with `i = pos(m)`, `j = pos(m+1)`,
/// either `i` thick and `j` thin, or both thin and `i < j`, or both thick and `j < i`.
pub fn split_set(sigma: &SegmentedWord) -> Result<IndexSubset> {
    if !sigma.is_permutation() {
        return Err(Error::NotSegmentedPermutation(sigma.to_string()));
    }
    let n = sigma.len();
    let mut pos = vec![0usize; n + 1];
    for (idx, &a) in sigma.letters.iter().enumerate() {
        pos[a as usize] = idx + 1;
    }
    let mut out = Vec::new();
    for m in 1..n {
        let (i, j) = (pos[m], pos[m + 1]);
        let (ti, tj) = (sigma.is_thick(i), sigma.is_thick(j));
        if (ti && !tj) || (!ti && !tj && i < j) || (ti && tj && j < i) {
            out.push(m as u32);
        }
    }
    IndexSubset::from_elements(n as u32, &out)
}

fn next_permutation(p: &mut [u32]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Streams every segmented word of the given content (`content[a-1]` copies of
/// letter `a`), ordered by underlying word (lex) then by split bitmask.
pub fn for_each_segmented_word(content: &[u32], mut visit: impl FnMut(&SegmentedWord)) {
    let mut word: Vec<u32> = content
        .iter()
        .enumerate()
        .flat_map(|(a, &m)| std::iter::repeat_n(a as u32 + 1, m as usize))
        .collect();
    let n = word.len();
    if n == 0 {
        return;
    }
    loop {
        // a bar is forced between equal neighbours
        let forced: u64 = (1..n).filter(|&i| word[i - 1] == word[i]).fold(0, |m, i| m | 1 << (i - 1));
        for mask in 0..(1u64 << (n - 1)) {
            if mask & forced != forced {
                continue;
            }
            let splits = IndexSubset::from_mask(n as u32, mask).expect("mask fits");
            visit(&SegmentedWord {
                letters: word.clone(),
                splits,
            });
        }
        if !next_permutation(&mut word) {
            break;
        }
    }
}

/// All `n!·2^{n-1}` segmented permutations of `[n]`.
pub fn enumerate_segmented_permutations(n: usize) -> Vec<SegmentedWord> {
    let mut out = Vec::new();
    for_each_segmented_word(&vec![1; n], |w| out.push(w.clone()));
    out
}

/// Segmented permutations with exactly `k` ascents and `l` descents.
pub fn enumerate_segmented_permutations_kl(n: usize, k: usize, l: usize) -> Vec<SegmentedWord> {
    let mut out = Vec::new();
    for_each_segmented_word(&vec![1; n], |w| {
        if w.ascents() == k && w.descents() == l {
            out.push(w.clone());
        }
    });
    out
}

/// `Σ q^{sminv(w)}` over segmented words of the given content with `k`
/// ascents and `l` descents.
pub fn sw_q_enumerated(content: &[u32], k: usize, l: usize) -> QuvPolynomial {
    let mut acc = QuvPolynomial::zero();
    for_each_segmented_word(content, |w| {
        if w.ascents() == k && w.descents() == l {
            acc += QuvPolynomial::q_pow(sminv(w));
        }
    });
    acc
}

/// `SW_q(1^n,k,l) = [n-k-l]_q (SW_q(n-1,k,l) + SW_q(n-1,k,l-1) + SW_q(n-1,k-1,l) + SW_q(n-1,k-1,l-1))`
/// with `SW_q(∅,k,l) = δ_{k,0}δ_{l,0}`.
pub fn sw_q_recursion(n: u32, k: i64, l: i64) -> QuvPolynomial {
    fn go(n: u32, k: i64, l: i64, memo: &mut HashMap<(u32, i64, i64), QuvPolynomial>) -> QuvPolynomial {
        if k < 0 || l < 0 {
            return QuvPolynomial::zero();
        }
        if n == 0 {
            return if k == 0 && l == 0 {
                QuvPolynomial::one()
            } else {
                QuvPolynomial::zero()
            };
        }
        let blocks = n as i64 - k - l;
        if blocks <= 0 {
            return QuvPolynomial::zero();
        }
        if let Some(v) = memo.get(&(n, k, l)) {
            return v.clone();
        }
        let inner = go(n - 1, k, l, memo) + go(n - 1, k, l - 1, memo) + go(n - 1, k - 1, l, memo) + go(n - 1, k - 1, l - 1, memo);
        let v = &q_integer(blocks as u32) * &inner;
        memo.insert((n, k, l), v.clone());
        v
    }
    go(n, k, l, &mut HashMap::new())
}

/// `Σ_{k+l<n} u^k v^l SW_q(1^n,k,l)`.
pub fn sw_hilbert(n: u32) -> QuvPolynomial {
    let mut total = QuvPolynomial::zero();
    for k in 0..n {
        for l in 0..(n - k) {
            total += &QuvPolynomial::uv_pow(k, l) * &sw_q_recursion(n, k as i64, l as i64);
        }
    }
    total
}

/// The bijection ψ from the (1,2) basis to segmented permutations.
pub fn psi(b: &BasisElement) -> Result<SegmentedWord> {
    if !b.variant().is_type_a() {
        return Err(Error::InvalidArgument("psi is defined on type A basis elements".into()));
    }
    let mut blocks: Vec<Vec<u32>> = vec![vec![1]];
    for i in 2..=b.n() {
        let a = b.alpha()[i - 1] as usize;
        let letter = i as u32;
        let len = blocks.len();
        match (b.theta()[i - 1], b.xi()[i - 1]) {
            (0, 0) => {
                if a > len {
                    return Err(Error::InvalidArgument(format!("x-exponent {a} too large at position {i}")));
                }
                blocks.insert(len - a, vec![letter]);
            }
            (1, 0) => {
                let idx = len
                    .checked_sub(1 + a)
                    .ok_or_else(|| Error::InvalidArgument(format!("no block for position {i}")))?;
                blocks[idx].push(letter);
            }
            (0, 1) => {
                let idx = len
                    .checked_sub(1 + a)
                    .ok_or_else(|| Error::InvalidArgument(format!("no block for position {i}")))?;
                blocks[idx].insert(0, letter);
            }
            _ => {
                let left = len
                    .checked_sub(2 + a)
                    .ok_or_else(|| Error::InvalidArgument(format!("no blocks to merge at position {i}")))?;
                let right = blocks.remove(left + 1);
                blocks[left].push(letter);
                blocks[left].extend(right);
            }
        }
    }
    SegmentedWord::from_blocks(&blocks)
}

/// Inverse of [`psi`]: peel off the largest letter, reading `(α_i, θ_i, ξ_i)`
/// from its block position and its place inside the block.
pub fn psi_inverse(sigma: &SegmentedWord) -> Result<BasisElement> {
    if !sigma.is_permutation() {
        return Err(Error::NotSegmentedPermutation(sigma.to_string()));
    }
    let n = sigma.len();
    let mut alpha = vec![0u32; n];
    let mut theta = vec![0u8; n];
    let mut xi = vec![0u8; n];
    let mut blocks = sigma.blocks();
    for i in (2..=n).rev() {
        let letter = i as u32;
        let (bi, pi) = blocks
            .iter()
            .enumerate()
            .find_map(|(bi, b)| b.iter().position(|&a| a == letter).map(|pi| (bi, pi)))
            .expect("permutation contains every letter");
        let len = blocks.len();
        alpha[i - 1] = (len - 1 - bi) as u32;
        let size = blocks[bi].len();
        if size == 1 {
            blocks.remove(bi);
        } else if pi == size - 1 {
            theta[i - 1] = 1;
            blocks[bi].pop();
        } else if pi == 0 {
            xi[i - 1] = 1;
            blocks[bi].remove(0);
        } else {
            theta[i - 1] = 1;
            xi[i - 1] = 1;
            let right = blocks[bi].split_off(pi + 1);
            blocks[bi].pop();
            blocks.insert(bi + 1, right);
        }
    }
    BasisElement::new(BasisVariant::A12, alpha, theta, xi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> SegmentedWord {
        s.parse().unwrap()
    }

    fn b(s: &str, n: usize) -> BasisElement {
        BasisElement::parse_monomial(s, n, BasisVariant::A12).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let x = w("2|1 3");
        assert_eq!(x.letters(), [2, 1, 3]);
        assert_eq!(x.splits().elements(), [1]);
        assert_eq!(x.to_string(), "2|1 3");
        assert_eq!(w("2|13"), x);
        assert_eq!(x.compact().unwrap(), "2|13");
        let big = w("10 2|1 3 4 5 6 7 8 9");
        assert_eq!(big.letters()[0], 10);
        assert!(big.is_permutation());
        assert!("1 1".parse::<SegmentedWord>().is_err());
        assert!("1||2".parse::<SegmentedWord>().is_err());
        assert!("0".parse::<SegmentedWord>().is_err());
        assert!(w("1|1").content() == [2]);
        assert_eq!(w("1 2 1|1 3").blocks(), vec![vec![1, 2, 1], vec![1, 3]]);
    }

    #[test]
    fn enumeration_counts() {
        let two: Vec<String> = enumerate_segmented_permutations(2).iter().map(|x| x.to_string()).collect();
        assert_eq!(two, ["1 2", "1|2", "2 1", "2|1"]);
        for n in 1..=6 {
            let all = enumerate_segmented_permutations(n);
            let fact: usize = (1..=n).product();
            assert_eq!(all.len(), fact << (n - 1));
            for x in &all {
                assert_eq!(x.block_count(), n - x.ascents() - x.descents());
            }
        }
        assert_eq!(enumerate_segmented_permutations_kl(3, 1, 1).len(), 4);
    }

    #[test]
    fn sminv_examples() {
        assert_eq!(sminv(&w("2|1 3")), 1);
        assert_eq!(sminv(&w("3|2|1")), 3);
        assert_eq!(sminv(&w("1 2 3")), 0);
        assert_eq!(sminv(&w("3 2|1")), 2);
        assert_eq!(sminv(&w("2 3|1")), 2);
        assert_eq!(sminv(&w("2 3 1")), 1);
    }

    #[test]
    fn sminv_general_content_conditions() {
        // condition (3): w_{j-1} = w_i starts its block
        assert_eq!(sminv(&w("2|2 1")), 1);
        // condition (4): w_{j-2} > w_{j-1} = w_i
        assert_eq!(sminv(&w("2 3 2 1")), 1);
        assert_eq!(sminv(&w("1|1")), 0);
    }

    #[test]
    fn split_examples() {
        assert_eq!(split_set(&w("1 3 2")).unwrap().elements(), [2]);
        assert_eq!(split_set(&w("2|3 1")).unwrap().elements(), [1]);
        assert_eq!(split_set(&w("3|1|2")).unwrap().elements(), [2]);
        assert!(split_set(&w("1 2 1")).is_err());
    }

    #[test]
    fn recursion_values() {
        let p = |s: &str| s.parse::<QuvPolynomial>().unwrap();
        assert_eq!(sw_q_recursion(1, 0, 0), QuvPolynomial::one());
        assert_eq!(sw_q_recursion(3, 1, 1), p("q+3"));
        assert_eq!(sw_q_recursion(2, 0, 0), p("1+q"));
        assert_eq!(sw_q_recursion(0, 0, 0), QuvPolynomial::one());
        assert!(sw_q_recursion(2, 1, 1).is_zero());
        for n in 1..=5u32 {
            for k in 0..n as usize {
                for l in 0..(n as usize - k) {
                    assert_eq!(sw_q_recursion(n, k as i64, l as i64), sw_q_enumerated(&vec![1; n as usize], k, l));
                }
            }
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&b("x3*th3*th4*xi4*xi5", 5)).unwrap(), w("5 1 3 4 2"));
        assert_eq!(psi(&b("1", 3)).unwrap(), w("1|2|3"));
        assert_eq!(psi(&b("x2*x3^2", 3)).unwrap(), w("3|2|1"));
        assert_eq!(psi_inverse(&w("2|1 3")).unwrap(), b("x2*th3", 3));
        assert_eq!(psi_inverse(&w("3|2 1")).unwrap(), b("x3*xi2", 3));
        assert_eq!(psi_inverse(&w("1|2|3|4")).unwrap(), b("1", 4));
        assert_eq!(psi_inverse(&w("5 1 3 4 2")).unwrap(), b("x3*th3*th4*xi4*xi5", 5));
    }

    #[test]
    fn psi_round_trip_small() {
        for n in 1..=5 {
            crate::basis::for_each_basis_element(n, BasisVariant::A12, |el| {
                let s = psi(el).unwrap();
                assert_eq!(&psi_inverse(&s).unwrap(), el);
                assert_eq!(s.ascents() as u32, el.deg_theta());
                assert_eq!(s.descents() as u32, el.deg_xi());
                assert_eq!(sminv(&s), el.deg_x());
                assert_eq!(split_set(&s).unwrap(), el.ascent_set());
            })
            .unwrap();
        }
    }
}
