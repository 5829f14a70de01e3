//! Partitions, compositions and subsets of `{1, …, n-1}`, with the
//! `Comp`/`Set` conversions used to index quasisymmetric functions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Self { parts })
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// Hook `(d+1, 1^{n-d-1})`; requires `d < n`.
    pub fn hook(n: u32, d: u32) -> Result<Self> {
        if d >= n {
            return Err(Error::InvalidArgument(format!("hook needs d < n, got n={n} d={d}")));
        }
        let mut parts = vec![d + 1];
        parts.extend(std::iter::repeat_n(1, (n - d - 1) as usize));
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn to_composition(&self) -> Composition {
        Composition { parts: self.parts.clone() }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// Sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(format!("composition {parts:?} has a zero part")));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }
}

/// A subset of `{1, …, n-1}` for a fixed ambient `n`, stored as a bitmask
/// (bit `i-1` set iff `i` is present).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexSubset {
    n: u32,
    mask: u64,
}

pub const MAX_AMBIENT: u32 = 64;

impl IndexSubset {
    pub fn empty(n: u32) -> Self {
        Self { n, mask: 0 }
    }

    pub fn from_mask(n: u32, mask: u64) -> Result<Self> {
        if n > MAX_AMBIENT {
            return Err(Error::InvalidArgument(format!("ambient n={n} exceeds {MAX_AMBIENT}")));
        }
        let allowed = if n <= 1 { 0 } else { (1u64 << (n - 1)) - 1 };
        if mask & !allowed != 0 {
            return Err(Error::InvalidArgument(format!(
                "mask {mask:#b} has elements outside {{1..{}}}",
                n.saturating_sub(1)
            )));
        }
        Ok(Self { n, mask })
    }

    pub fn from_elements(n: u32, elements: &[u32]) -> Result<Self> {
        let mut mask = 0u64;
        for &e in elements {
            if e == 0 || e >= n {
                return Err(Error::InvalidArgument(format!("element {e} not in [1, {}]", n.saturating_sub(1))));
            }
            mask |= 1 << (e - 1);
        }
        Self::from_mask(n, mask)
    }

    /// `{lo, lo+1, …, n-1}`.
    pub fn interval_to_end(n: u32, lo: u32) -> Self {
        let mut mask = 0u64;
        for e in lo.max(1)..n {
            mask |= 1 << (e - 1);
        }
        Self { n, mask }
    }

    pub fn ambient(&self) -> u32 {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, e: u32) -> bool {
        e >= 1 && e < self.n && self.mask & (1 << (e - 1)) != 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_subset_of(&self, other: &IndexSubset) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn elements(&self) -> Vec<u32> {
        (1..self.n).filter(|&e| self.contains(e)).collect()
    }

    /// `(s_1, s_2-s_1, …, n-s_k)`.
    pub fn to_composition(&self) -> Composition {
        let mut parts = Vec::with_capacity(self.len() + 1);
        let mut prev = 0;
        for e in self.elements() {
            parts.push(e - prev);
            prev = e;
        }
        if self.n > 0 {
            parts.push(self.n - prev);
        }
        Composition { parts }
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/n={}", set_braces(&self.elements()), self.n)
    }
}

/// `{2,3}` style rendering of a list of integers.
pub fn set_braces(elements: &[u32]) -> String {
    let s: Vec<String> = elements.iter().map(u32::to_string).collect();
    format!("{{{}}}", s.join(","))
}

impl FromStr for IndexSubset {
    type Err = Error;

    /// Parses `{2,3}/n=5`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected '{{a,b,...}}/n=N', got {s:?}"));
        let (set, amb) = s.trim().split_once("/n=").ok_or_else(bad)?;
        let n: u32 = amb.trim().parse().map_err(|_| bad())?;
        let inner = set.trim().strip_prefix('{').and_then(|t| t.strip_suffix('}')).ok_or_else(bad)?;
        let elems = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_elements(n, &elems)
    }
}

pub fn comp_of_set(s: &IndexSubset) -> Composition {
    s.to_composition()
}

/// Partial sums `α_1, α_1+α_2, …` excluding the total.
pub fn set_of_comp(alpha: &Composition) -> IndexSubset {
    let n = alpha.size();
    let mut mask = 0u64;
    let mut acc = 0;
    for &p in &alpha.parts[..alpha.parts.len().saturating_sub(1)] {
        acc += p;
        mask |= 1 << (acc - 1);
    }
    IndexSubset { n, mask }
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    fn go(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All subsets of `{1, …, n-1}` ordered by bitmask value.
pub fn enumerate_subsets(n: u32) -> Vec<IndexSubset> {
    let count = if n <= 1 { 1u64 } else { 1u64 << (n - 1) };
    (0..count).map(|mask| IndexSubset { n, mask }).collect()
}

/// All compositions of `n`, in the order of their descent subsets.
pub fn enumerate_compositions(n: u32) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition { parts: Vec::new() }];
    }
    enumerate_subsets(n).iter().map(IndexSubset::to_composition).collect()
}
