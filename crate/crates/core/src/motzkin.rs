//! Decorated modified Motzkin paths.
//!
//! Type A paths start with an up-step and afterwards never drop below
//! height 1; type B paths never drop below height 0. Decorations are not
//! stored: a horizontal step at position `i` carries `θ_i` or `ξ_i`, and a
//! down-step at position `i` carries `θ_i ξ_i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    Up,
    HorizTheta,
    HorizXi,
    Down,
}

impl Step {
    pub const ALL: [Step; 4] = [Step::Up, Step::HorizTheta, Step::HorizXi, Step::Down];

    pub fn delta(self) -> i32 {
        match self {
            Step::Up => 1,
            Step::HorizTheta | Step::HorizXi => 0,
            Step::Down => -1,
        }
    }

    pub fn has_theta(self) -> bool {
        matches!(self, Step::HorizTheta | Step::Down)
    }

    pub fn has_xi(self) -> bool {
        matches!(self, Step::HorizXi | Step::Down)
    }

    /// The step carrying the given fermionic occupancy.
    pub fn from_bits(theta: bool, xi: bool) -> Step {
        match (theta, xi) {
            (false, false) => Step::Up,
            (true, false) => Step::HorizTheta,
            (false, true) => Step::HorizXi,
            (true, true) => Step::Down,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Step::Up => 'U',
            Step::HorizTheta => 'T',
            Step::HorizXi => 'X',
            Step::Down => 'D',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PathVariant {
    TypeA,
    TypeB,
}

impl PathVariant {
    fn floor(self) -> i32 {
        match self {
            PathVariant::TypeA => 1,
            PathVariant::TypeB => 0,
        }
    }
}

/// A subset of `{1, …, n}` (positions of a path).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PositionSet {
    n: u32,
    mask: u64,
}

impl PositionSet {
    pub fn empty(n: u32) -> Self {
        Self { n, mask: 0 }
    }

    pub fn from_elements(n: u32, elements: &[u32]) -> Result<Self> {
        let mut s = Self::empty(n);
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::InvalidArgument(format!("position {e} not in [1, {n}]")));
            }
            s.insert(e);
        }
        Ok(s)
    }

    pub fn insert(&mut self, e: u32) {
        self.mask |= 1 << (e - 1);
    }

    pub fn contains(&self, e: u32) -> bool {
        e >= 1 && e <= self.n && self.mask & (1 << (e - 1)) != 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn ambient(&self) -> u32 {
        self.n
    }

    pub fn elements(&self) -> Vec<u32> {
        (1..=self.n).filter(|&e| self.contains(e)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MotzkinPath {
    steps: Vec<Step>,
    variant: PathVariant,
}

impl MotzkinPath {
    /// Validates the floor condition for `variant`.
    pub fn new(steps: Vec<Step>, variant: PathVariant) -> Result<Self> {
        if variant == PathVariant::TypeA {
            if steps.is_empty() {
                return Err(Error::InvalidArgument("type A paths have length at least 1".into()));
            }
            if steps[0] != Step::Up {
                return Err(Error::InvalidArgument("type A paths start with an up-step".into()));
            }
        }
        let floor = variant.floor();
        let mut h = 0;
        for (i, s) in steps.iter().enumerate() {
            h += s.delta();
            if h < floor {
                return Err(Error::FloorViolation { position: i + 1 });
            }
        }
        Ok(Self { steps, variant })
    }

    /// Path whose step at position `i` carries exactly the decorations in `theta`/`xi`.
    pub fn from_weight_sets(theta: &PositionSet, xi: &PositionSet, variant: PathVariant) -> Result<Self> {
        let n = theta.ambient();
        let steps = (1..=n).map(|i| Step::from_bits(theta.contains(i), xi.contains(i))).collect();
        Self::new(steps, variant)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn variant(&self) -> PathVariant {
        self.variant
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Height after the first `i` steps.
    pub fn height_after(&self, i: usize) -> u32 {
        self.steps[..i].iter().map(|s| s.delta()).sum::<i32>() as u32
    }

    /// Heights after each step, `heights()[i-1] = height_after(i)`.
    pub fn heights(&self) -> Vec<u32> {
        let mut h = 0i32;
        self.steps
            .iter()
            .map(|s| {
                h += s.delta();
                h as u32
            })
            .collect()
    }

    pub fn final_height(&self) -> u32 {
        self.height_after(self.steps.len())
    }

    /// `(T, S)`: positions carrying `θ` and positions carrying `ξ`.
    pub fn weight_sets(&self) -> (PositionSet, PositionSet) {
        let n = self.steps.len() as u32;
        let mut t = PositionSet::empty(n);
        let mut s = PositionSet::empty(n);
        for (i, st) in self.steps.iter().enumerate() {
            if st.has_theta() {
                t.insert(i as u32 + 1);
            }
            if st.has_xi() {
                s.insert(i as u32 + 1);
            }
        }
        (t, s)
    }

    pub fn theta_degree(&self) -> u32 {
        self.steps.iter().filter(|s| s.has_theta()).count() as u32
    }

    pub fn xi_degree(&self) -> u32 {
        self.steps.iter().filter(|s| s.has_xi()).count() as u32
    }

    /// Product of decorations, e.g. `θ_2ξ_3`, rendered as `th2*xi3`.
    pub fn weight_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, st) in self.steps.iter().enumerate() {
            if st.has_theta() {
                parts.push(format!("th{}", i + 1));
            }
            if st.has_xi() {
                parts.push(format!("xi{}", i + 1));
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for MotzkinPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.steps.iter().map(|s| s.letter().to_string()).collect();
        f.write_str(&s.join(" "))
    }
}

/// Parses the literal form `"U U D"` into a path of the given variant.
pub fn parse_path(s: &str, variant: PathVariant) -> Result<MotzkinPath> {
    let steps = s
        .split_whitespace()
        .map(|t| match t {
            "U" => Ok(Step::Up),
            "T" => Ok(Step::HorizTheta),
            "X" => Ok(Step::HorizXi),
            "D" => Ok(Step::Down),
            other => Err(Error::Parse(format!("unknown step {other:?}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    MotzkinPath::new(steps, variant)
}

impl FromStr for MotzkinPath {
    type Err = Error;

    /// Parses as a type A path; use [`parse_path`] for type B.
    fn from_str(s: &str) -> Result<Self> {
        parse_path(s, PathVariant::TypeA)
    }
}

/// Depth-first visit of every path in canonical order
/// (lexicographic with `Up < HorizTheta < HorizXi < Down`).
pub fn for_each_path(n: usize, variant: PathVariant, mut visit: impl FnMut(&[Step])) -> Result<()> {
    if variant == PathVariant::TypeA && n == 0 {
        return Err(Error::InvalidArgument("type A paths need n >= 1".into()));
    }
    fn go(n: usize, floor: i32, h: i32, cur: &mut Vec<Step>, visit: &mut dyn FnMut(&[Step])) {
        if cur.len() == n {
            visit(cur);
            return;
        }
        for s in Step::ALL {
            let nh = h + s.delta();
            if nh < floor {
                continue;
            }
            // a path can always come back down, so no lookahead pruning is needed
            cur.push(s);
            go(n, floor, nh, cur, visit);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(n);
    match variant {
        PathVariant::TypeA => {
            cur.push(Step::Up);
            go(n, 1, 1, &mut cur, &mut visit);
        }
        PathVariant::TypeB => go(n, 0, 0, &mut cur, &mut visit),
    }
    Ok(())
}

pub fn enumerate_paths(n: usize, variant: PathVariant) -> Result<Vec<MotzkinPath>> {
    let mut out = Vec::new();
    for_each_path(n, variant, |steps| {
        out.push(MotzkinPath {
            steps: steps.to_vec(),
            variant,
        })
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_paths(3, PathVariant::TypeA).unwrap().len(), 10);
        let one = enumerate_paths(1, PathVariant::TypeA).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].steps(), &[Step::Up]);
        let b1: Vec<String> = enumerate_paths(1, PathVariant::TypeB)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(b1, ["U", "T", "X"]);
        assert!(enumerate_paths(0, PathVariant::TypeA).is_err());
        assert_eq!(enumerate_paths(0, PathVariant::TypeB).unwrap().len(), 1);
    }

    #[test]
    fn labels_of_three_step_paths() {
        let labels: Vec<String> = enumerate_paths(3, PathVariant::TypeA)
            .unwrap()
            .iter()
            .map(|p| p.weight_string())
            .collect();
        let mut sorted = labels.clone();
        sorted.sort();
        let mut expected = vec![
            "1", "th2", "xi2", "th3", "xi3", "th2*th3", "th3*xi3", "xi2*th3", "th2*xi3", "xi2*xi3",
        ];
        expected.sort();
        assert_eq!(sorted, expected);
    }

    #[test]
    fn weight_sets_examples() {
        let p: MotzkinPath = "U U D".parse().unwrap();
        let (t, s) = p.weight_sets();
        assert_eq!(t.elements(), [3]);
        assert_eq!(s.elements(), [3]);
        let p: MotzkinPath = "U T X".parse().unwrap();
        let (t, s) = p.weight_sets();
        assert_eq!(t.elements(), [2]);
        assert_eq!(s.elements(), [3]);
        let p: MotzkinPath = "U U U".parse().unwrap();
        let (t, s) = p.weight_sets();
        assert!(t.is_empty() && s.is_empty());
    }

    #[test]
    fn heights() {
        let p: MotzkinPath = "U U U".parse().unwrap();
        assert_eq!(p.height_after(3), 3);
        assert_eq!(p.height_after(0), 0);
        let p: MotzkinPath = "U U D".parse().unwrap();
        assert_eq!(p.height_after(3), 1);
        let p: MotzkinPath = "U T T".parse().unwrap();
        assert_eq!(p.height_after(3), 1);
        assert_eq!(p.heights(), [1, 1, 1]);
    }

    #[test]
    fn invalid_paths_rejected() {
        assert!("U D".parse::<MotzkinPath>().is_err());
        assert!("T".parse::<MotzkinPath>().is_err());
        assert!(parse_path("D", PathVariant::TypeB).is_err());
        assert!(parse_path("T U D D", PathVariant::TypeB).is_err());
        assert!(parse_path("U Q", PathVariant::TypeB).is_err());
        assert!(parse_path("U D T", PathVariant::TypeB).is_ok());
    }

    #[test]
    fn counts_match_fermionic_dimension() {
        // |Π(n)_{>0}| = C(2n-1, n)
        for n in 1..=8usize {
            let paths = enumerate_paths(n, PathVariant::TypeA).unwrap();
            assert_eq!(paths.len() as u64, binom(2 * n as u64 - 1, n as u64), "n={n}");
            // type A of length n <-> type B of length n-1
            let b = enumerate_paths(n - 1, PathVariant::TypeB).unwrap();
            assert_eq!(paths.len(), b.len());
            for p in &paths {
                assert!(MotzkinPath::new(p.steps().to_vec(), PathVariant::TypeA).is_ok());
            }
            for p in &b {
                assert!(MotzkinPath::new(p.steps().to_vec(), PathVariant::TypeB).is_ok());
            }
        }
    }

    #[test]
    fn canonical_order_is_sorted_and_unique() {
        for n in 1..=6 {
            let paths = enumerate_paths(n, PathVariant::TypeA).unwrap();
            assert!(paths.windows(2).all(|w| w[0].steps() < w[1].steps()));
            let paths = enumerate_paths(n, PathVariant::TypeB).unwrap();
            assert!(paths.windows(2).all(|w| w[0].steps() < w[1].steps()));
        }
    }

    #[test]
    fn round_trip_through_weight_sets() {
        for p in enumerate_paths(5, PathVariant::TypeB).unwrap() {
            let (t, s) = p.weight_sets();
            assert_eq!(MotzkinPath::from_weight_sets(&t, &s, PathVariant::TypeB).unwrap(), p);
        }
    }
}
