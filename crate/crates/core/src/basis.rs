//! Monomial bases built on Motzkin paths and their staircases.
//!
//! A basis element is `x^α θ_T ξ_S`, stored as exponent data only. The sign
//! of the ordered fermionic product is dropped: every statistic computed
//! here (degrees, ascents, series) is sign-blind.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::IndexSubset;
use crate::error::{Error, Result};
use crate::motzkin::{for_each_path, MotzkinPath, PathVariant, PositionSet, Step};
use crate::qpoly::{q_double_factorial_even, q_factorial, q_integer, q_stirling_row, QuvPolynomial, StirlingKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisVariant {
    /// `x^α θ_T ξ_S`, type A paths, `α ≤ α(T,S)`.
    A12,
    /// Super-Artin set: `x^α θ_T`, `T ⊆ {2..n}`, `α ≤ α(T)`.
    A11,
    /// Weights of type A paths.
    A02,
    /// Type B paths, `α ≤ β(T,S)`.
    B12,
    /// Type B super-Artin set: `T ⊆ {1..n}`, `α ≤ β(T)`.
    B11,
}

impl BasisVariant {
    pub fn path_variant(self) -> PathVariant {
        match self {
            BasisVariant::A12 | BasisVariant::A11 | BasisVariant::A02 => PathVariant::TypeA,
            BasisVariant::B12 | BasisVariant::B11 => PathVariant::TypeB,
        }
    }

    pub fn is_type_a(self) -> bool {
        self.path_variant() == PathVariant::TypeA
    }

    fn allows_xi(self) -> bool {
        matches!(self, BasisVariant::A12 | BasisVariant::A02 | BasisVariant::B12)
    }

    pub fn name(self) -> &'static str {
        match self {
            BasisVariant::A12 => "a12",
            BasisVariant::A11 => "a11",
            BasisVariant::A02 => "a02",
            BasisVariant::B12 => "b12",
            BasisVariant::B11 => "b11",
        }
    }
}

impl std::str::FromStr for BasisVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a12" => Ok(BasisVariant::A12),
            "a11" => Ok(BasisVariant::A11),
            "a02" => Ok(BasisVariant::A02),
            "b12" => Ok(BasisVariant::B12),
            "b11" => Ok(BasisVariant::B11),
            other => Err(Error::Parse(format!("unknown basis variant {other:?}"))),
        }
    }
}

/// Per-position upper bounds on x-exponents (the maximal staircase).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StairBound {
    pub values: Vec<u32>,
}

impl StairBound {
    /// `∏ [k+1]_q` over the bounds.
    pub fn stair_q(&self) -> QuvPolynomial {
        self.values.iter().map(|&k| q_integer(k + 1)).product()
    }

    /// Number of exponent vectors under the staircase.
    pub fn volume(&self) -> u64 {
        self.values.iter().map(|&k| k as u64 + 1).product()
    }
}

fn chi(b: bool) -> i64 {
    b as i64
}

/// Generalized α-sequence: `α_1 = 0`,
/// `α_i = α_{i-1} - 1 + χ(i∉T) + χ(i∉S)`. Requires `T, S ⊆ {2..n}`.
pub fn alpha_sequence(t: &PositionSet, s: &PositionSet) -> Result<StairBound> {
    let n = t.ambient();
    if s.ambient() != n {
        return Err(Error::InvalidArgument("T and S have different ambient sizes".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("alpha sequence needs n >= 1".into()));
    }
    if t.contains(1) || s.contains(1) {
        return Err(Error::InvalidArgument("T and S must be subsets of {2..n}".into()));
    }
    let mut values = Vec::with_capacity(n as usize);
    let mut cur = 0i64;
    values.push(0);
    for i in 2..=n {
        cur += -1 + chi(!t.contains(i)) + chi(!s.contains(i));
        if cur < 0 {
            return Err(Error::FloorViolation { position: i as usize });
        }
        values.push(cur as u32);
    }
    Ok(StairBound { values })
}

/// Generalized β-sequence: `β_1 = -1 + χ(1∉T) + χ(1∉S)`,
/// `β_i = β_{i-1} - 2 + χ(i∉T) + χ(i-1∉T) + χ(i∉S) + χ(i-1∉S)`.
pub fn beta_sequence(t: &PositionSet, s: &PositionSet) -> Result<StairBound> {
    let n = t.ambient();
    if s.ambient() != n {
        return Err(Error::InvalidArgument("T and S have different ambient sizes".into()));
    }
    let mut values = Vec::with_capacity(n as usize);
    let mut cur = 0i64;
    for i in 1..=n {
        cur += if i == 1 {
            -1 + chi(!t.contains(1)) + chi(!s.contains(1))
        } else {
            -2 + chi(!t.contains(i)) + chi(!t.contains(i - 1)) + chi(!s.contains(i)) + chi(!s.contains(i - 1))
        };
        if cur < 0 {
            return Err(Error::FloorViolation { position: i as usize });
        }
        values.push(cur as u32);
    }
    Ok(StairBound { values })
}

/// The bound sequence that governs `variant` for decoration sets `(T, S)`.
pub fn bound_for(t: &PositionSet, s: &PositionSet, variant: BasisVariant) -> Result<StairBound> {
    match variant {
        BasisVariant::A12 | BasisVariant::A11 => alpha_sequence(t, s),
        BasisVariant::A02 => {
            alpha_sequence(t, s)?;
            Ok(StairBound {
                values: vec![0; t.ambient() as usize],
            })
        }
        BasisVariant::B12 | BasisVariant::B11 => beta_sequence(t, s),
    }
}

/// `stair_q` of a path: the q-count of exponent fillings under its staircase.
pub fn stair_q(path: &MotzkinPath) -> Result<QuvPolynomial> {
    let (t, s) = path.weight_sets();
    let b = match path.variant() {
        PathVariant::TypeA => alpha_sequence(&t, &s)?,
        PathVariant::TypeB => beta_sequence(&t, &s)?,
    };
    Ok(b.stair_q())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElement {
    variant: BasisVariant,
    alpha: Vec<u32>,
    theta: Vec<u8>,
    xi: Vec<u8>,
}

/// JSON shape `{alpha: [...], theta: [...], xi: [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisRecord {
    pub alpha: Vec<u32>,
    pub theta: Vec<u8>,
    pub xi: Vec<u8>,
}

impl BasisElement {
    /// Validates the exponent data against the definition of `variant`.
    pub fn new(variant: BasisVariant, alpha: Vec<u32>, theta: Vec<u8>, xi: Vec<u8>) -> Result<Self> {
        let n = alpha.len();
        if n == 0 || theta.len() != n || xi.len() != n {
            return Err(Error::InvalidArgument("alpha, theta and xi must share a positive length".into()));
        }
        if theta.iter().chain(&xi).any(|&b| b > 1) {
            return Err(Error::InvalidArgument("fermionic exponents must be 0 or 1".into()));
        }
        if !variant.allows_xi() && xi.contains(&1) {
            return Err(Error::InvalidArgument(format!("variant {} has no xi variables", variant.name())));
        }
        let el = Self { variant, alpha, theta, xi };
        let steps = el.steps();
        MotzkinPath::new(steps, variant.path_variant())?;
        let bound = el.bound()?;
        for (i, (&a, &b)) in el.alpha.iter().zip(&bound.values).enumerate() {
            if a > b {
                return Err(Error::InvalidArgument(format!(
                    "x-exponent {a} at position {} exceeds bound {b}",
                    i + 1
                )));
            }
        }
        Ok(el)
    }

    pub fn from_record(variant: BasisVariant, r: &BasisRecord) -> Result<Self> {
        Self::new(variant, r.alpha.clone(), r.theta.clone(), r.xi.clone())
    }

    pub fn to_record(&self) -> BasisRecord {
        BasisRecord {
            alpha: self.alpha.clone(),
            theta: self.theta.clone(),
            xi: self.xi.clone(),
        }
    }

    pub fn variant(&self) -> BasisVariant {
        self.variant
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn theta(&self) -> &[u8] {
        &self.theta
    }

    pub fn xi(&self) -> &[u8] {
        &self.xi
    }

    pub fn steps(&self) -> Vec<Step> {
        self.theta
            .iter()
            .zip(&self.xi)
            .map(|(&t, &x)| Step::from_bits(t == 1, x == 1))
            .collect()
    }

    pub fn path(&self) -> MotzkinPath {
        MotzkinPath::new(self.steps(), self.variant.path_variant()).expect("basis elements carry valid paths")
    }

    pub fn weight_sets(&self) -> (PositionSet, PositionSet) {
        let n = self.n() as u32;
        let mut t = PositionSet::empty(n);
        let mut s = PositionSet::empty(n);
        for i in 0..self.n() {
            if self.theta[i] == 1 {
                t.insert(i as u32 + 1);
            }
            if self.xi[i] == 1 {
                s.insert(i as u32 + 1);
            }
        }
        (t, s)
    }

    pub fn bound(&self) -> Result<StairBound> {
        let (t, s) = self.weight_sets();
        bound_for(&t, &s, self.variant)
    }

    pub fn deg_x(&self) -> u32 {
        self.alpha.iter().sum()
    }

    pub fn deg_theta(&self) -> u32 {
        self.theta.iter().map(|&b| b as u32).sum()
    }

    pub fn deg_xi(&self) -> u32 {
        self.xi.iter().map(|&b| b as u32).sum()
    }

    /// `q^{deg_x} u^{deg_θ} v^{deg_ξ}`.
    pub fn weight(&self) -> QuvPolynomial {
        QuvPolynomial::monomial(self.deg_x(), self.deg_theta(), self.deg_xi(), 1)
    }

    /// Positions `i ∈ [1, n-1]` that are ascents: `β_i < β_{i+1}`, or
    /// `β_i = β_{i+1} = 1` with `α_i ≥ α_{i+1} + γ_{i+1}`, or
    /// `β_i = β_{i+1} = 0` with `α_i < α_{i+1} + γ_{i+1}`
    /// (β = θ-occupancy, γ = ξ-occupancy).
    pub fn ascent_set(&self) -> IndexSubset {
        ascent_mask(&self.alpha, &self.theta, &self.xi)
    }

    /// Monomial string such as `x2*x3^2*th3*xi3`.
    pub fn monomial_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, &a) in self.alpha.iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                _ => parts.push(format!("x{}^{a}", i + 1)),
            }
        }
        for i in 0..self.n() {
            if self.theta[i] == 1 {
                parts.push(format!("th{}", i + 1));
            }
            if self.xi[i] == 1 {
                parts.push(format!("xi{}", i + 1));
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Parses a monomial string (`"1"`, `"x2*th3"`, …) for an element of length `n`.
    pub fn parse_monomial(s: &str, n: usize, variant: BasisVariant) -> Result<Self> {
        let mut alpha = vec![0u32; n];
        let mut theta = vec![0u8; n];
        let mut xi = vec![0u8; n];
        let s = s.trim();
        if s != "1" {
            for f in s.split('*').map(str::trim) {
                let bad = || Error::Parse(format!("bad monomial factor {f:?}"));
                let (head, exp) = match f.split_once('^') {
                    Some((h, e)) => (h, e.parse::<u32>().map_err(|_| bad())?),
                    None => (f, 1),
                };
                let (kind, idx) = if let Some(r) = head.strip_prefix("th") {
                    (1, r)
                } else if let Some(r) = head.strip_prefix("xi") {
                    (2, r)
                } else if let Some(r) = head.strip_prefix('x') {
                    (0, r)
                } else {
                    return Err(bad());
                };
                let i: usize = idx.parse().map_err(|_| bad())?;
                if i == 0 || i > n {
                    return Err(bad());
                }
                match kind {
                    0 => alpha[i - 1] += exp,
                    1 if exp == 1 && theta[i - 1] == 0 => theta[i - 1] = 1,
                    2 if exp == 1 && xi[i - 1] == 0 => xi[i - 1] = 1,
                    _ => return Err(bad()),
                }
            }
        }
        Self::new(variant, alpha, theta, xi)
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.monomial_string())
    }
}

pub(crate) fn ascent_mask(alpha: &[u32], theta: &[u8], xi: &[u8]) -> IndexSubset {
    let n = alpha.len();
    let mut mask = 0u64;
    for i in 0..n.saturating_sub(1) {
        let (b0, b1) = (theta[i], theta[i + 1]);
        let rhs = alpha[i + 1] + xi[i + 1] as u32;
        let asc = b0 < b1 || (b0 == 1 && b1 == 1 && alpha[i] >= rhs) || (b0 == 0 && b1 == 0 && alpha[i] < rhs);
        if asc {
            mask |= 1 << i;
        }
    }
    IndexSubset::from_mask(n as u32, mask).expect("ascents lie in [1, n-1]")
}

/// Visits every exponent vector `0 ≤ α ≤ bound` in lexicographic order.
fn for_each_alpha(bound: &[u32], alpha: &mut [u32], mut visit: impl FnMut(&[u32])) {
    alpha.iter_mut().for_each(|a| *a = 0);
    loop {
        visit(alpha);
        let mut i = alpha.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if alpha[i] < bound[i] {
                alpha[i] += 1;
                break;
            }
            alpha[i] = 0;
        }
    }
}

/// Visits the decoration patterns underlying `variant`, in canonical order.
fn for_each_skeleton(n: usize, variant: BasisVariant, mut visit: impl FnMut(&[Step])) -> Result<()> {
    match variant {
        BasisVariant::A12 | BasisVariant::A02 => for_each_path(n, PathVariant::TypeA, visit),
        BasisVariant::B12 => for_each_path(n, PathVariant::TypeB, visit),
        BasisVariant::A11 | BasisVariant::B11 => {
            // T ranges over subsets of {2..n} (type A) or {1..n} (type B)
            let first = if variant == BasisVariant::A11 { 1 } else { 0 };
            if n == 0 && variant == BasisVariant::A11 {
                return Err(Error::InvalidArgument("type A bases need n >= 1".into()));
            }
            let free = n - first;
            let mut steps = vec![Step::Up; n];
            for code in 0..(1u64 << free) {
                // most significant bit = earliest position, so Up < HorizTheta order is lexicographic
                for j in 0..free {
                    let bit = (code >> (free - 1 - j)) & 1;
                    steps[first + j] = if bit == 1 { Step::HorizTheta } else { Step::Up };
                }
                visit(&steps);
            }
            Ok(())
        }
    }
}

/// Streams every basis element in canonical order (skeleton order, then α
/// lexicographic). The element passed to `visit` is reused between calls.
pub fn for_each_basis_element(n: usize, variant: BasisVariant, mut visit: impl FnMut(&BasisElement)) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("bases need n >= 1".into()));
    }
    let mut el = BasisElement {
        variant,
        alpha: vec![0; n],
        theta: vec![0; n],
        xi: vec![0; n],
    };
    let mut err = None;
    for_each_skeleton(n, variant, |steps| {
        if err.is_some() {
            return;
        }
        for (i, s) in steps.iter().enumerate() {
            el.theta[i] = s.has_theta() as u8;
            el.xi[i] = s.has_xi() as u8;
        }
        let bound = match el.bound() {
            Ok(b) => b,
            Err(e) => {
                err = Some(e);
                return;
            }
        };
        let mut alpha = std::mem::take(&mut el.alpha);
        for_each_alpha(&bound.values, &mut alpha, |a| {
            el.alpha.clear();
            el.alpha.extend_from_slice(a);
            visit(&el);
        });
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

pub fn enumerate_basis(n: usize, variant: BasisVariant) -> Result<Vec<BasisElement>> {
    let mut out = Vec::new();
    for_each_basis_element(n, variant, |b| out.push(b.clone()))?;
    Ok(out)
}

/// Number of basis elements, counted by streaming the enumeration.
pub fn count_basis(n: usize, variant: BasisVariant) -> Result<u64> {
    let mut count = 0u64;
    for_each_skeleton(n, variant, |steps| {
        let t: Vec<u32> = (1..=n as u32).filter(|&i| steps[i as usize - 1].has_theta()).collect();
        let s: Vec<u32> = (1..=n as u32).filter(|&i| steps[i as usize - 1].has_xi()).collect();
        let t = PositionSet::from_elements(n as u32, &t).expect("positions in range");
        let s = PositionSet::from_elements(n as u32, &s).expect("positions in range");
        count += bound_for(&t, &s, variant).expect("enumerated skeletons are valid").volume();
    })?;
    Ok(count)
}

/// `Σ_π u^{deg_θ(π)} v^{deg_ξ(π)} stair_q(π)` over the skeletons of `variant`.
pub fn hilbert_series(n: usize, variant: BasisVariant) -> Result<QuvPolynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument("bases need n >= 1".into()));
    }
    let mut total = QuvPolynomial::zero();
    let mut err = None;
    for_each_skeleton(n, variant, |steps| {
        let path = MotzkinPath::new(steps.to_vec(), variant.path_variant()).expect("valid skeleton");
        let (t, s) = path.weight_sets();
        match bound_for(&t, &s, variant) {
            Ok(b) => {
                let w = QuvPolynomial::uv_pow(t.len() as u32, s.len() as u32);
                total += &w * &b.stair_q();
            }
            Err(e) => err = Some(e),
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from((n - i) as u64) / BigUint::from((i + 1) as u64);
    }
    acc
}

/// `p(n, r) = n!·C(n-1, r)`: elements of the (1,2) basis whose path ends `r`
/// steps above the floor line `y = 1`. Zero for `n = 0`.
pub fn count_by_height(n: u32, r: i64) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    factorial(n) * binomial(n as i64 - 1, r)
}

/// The same numbers from `p(n,r) = (r+1)[p(n-1,r-1) + 2p(n-1,r) + p(n-1,r+1)]`
/// starting at `p(1, 0) = 1`.
pub fn count_by_height_recursive(n: u32, r: i64) -> BigUint {
    if n == 0 || r < 0 || r >= n as i64 {
        return BigUint::zero();
    }
    let mut row = vec![BigUint::one()];
    for m in 2..=n as usize {
        let get = |v: &Vec<BigUint>, i: i64| -> BigUint {
            if i < 0 {
                BigUint::zero()
            } else {
                v.get(i as usize).cloned().unwrap_or_default()
            }
        };
        let next: Vec<BigUint> = (0..m as i64)
            .map(|r| BigUint::from((r + 1) as u64) * (get(&row, r - 1) + get(&row, r) * 2u32 + get(&row, r + 1)))
            .collect();
        row = next;
    }
    row[r as usize].clone()
}

/// Class of the last step, used by the type B counting recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StepClass {
    /// Horizontal (θ or ξ).
    E,
    U,
    D,
}

impl StepClass {
    pub fn of(step: Step) -> Self {
        match step {
            Step::Up => StepClass::U,
            Step::Down => StepClass::D,
            Step::HorizTheta | Step::HorizXi => StepClass::E,
        }
    }
}

/// Tables `p_E, p_U, p_D` indexed by maximal-staircase height `r`, for length `n`.
fn type_b_tables(n: u32) -> [Vec<BigUint>; 3] {
    let width = 2 * n as usize + 3;
    let mut e = vec![BigUint::zero(); width];
    let mut u = vec![BigUint::zero(); width];
    let mut d = vec![BigUint::zero(); width];
    e[0] = BigUint::one();
    let at = |v: &Vec<BigUint>, i: i64| -> BigUint {
        if i < 0 {
            BigUint::zero()
        } else {
            v.get(i as usize).cloned().unwrap_or_default()
        }
    };
    for _ in 0..n {
        let mut ne = vec![BigUint::zero(); width];
        let mut nu = vec![BigUint::zero(); width];
        let mut nd = vec![BigUint::zero(); width];
        for r in 0..width as i64 {
            let w = BigUint::from((r + 1) as u64);
            ne[r as usize] = &w * 2u32 * (at(&e, r) + at(&u, r - 1) + at(&d, r + 1));
            nu[r as usize] = &w * (at(&e, r - 1) + at(&u, r - 2) + at(&d, r));
            nd[r as usize] = &w * (at(&e, r + 1) + at(&u, r) + at(&d, r + 2));
        }
        e = ne;
        u = nu;
        d = nd;
    }
    [e, u, d]
}

/// `p_E / p_U / p_D (n, r)` from the type B counting recursion.
pub fn count_type_b_refined(n: u32, r: i64, class: StepClass) -> BigUint {
    if r < 0 {
        return BigUint::zero();
    }
    let [e, u, d] = type_b_tables(n);
    let table = match class {
        StepClass::E => e,
        StepClass::U => u,
        StepClass::D => d,
    };
    table.get(r as usize).cloned().unwrap_or_default()
}

/// Closed forms for `p_E(n, 2r)`, `p_U(n, 2r+1)`, `p_D(n, 2r+1)` (`n ≥ 1`);
/// zero on the wrong parity.
pub fn count_type_b_refined_closed(n: u32, height: i64, class: StepClass) -> BigUint {
    if n == 0 || height < 0 {
        return BigUint::zero();
    }
    let base = factorial(n - 1) * (BigUint::one() << n as usize);
    match class {
        StepClass::E if height % 2 == 0 => {
            let r = height / 2;
            base * binomial(n as i64 - 1, r) * BigUint::from((2 * r + 1) as u64)
        }
        StepClass::U if height % 2 == 1 => {
            let r = height / 2;
            base * binomial(n as i64 - 1, r) * BigUint::from((r + 1) as u64)
        }
        StepClass::D if height % 2 == 1 => {
            let r = height / 2;
            if (n as i64) - r - 1 < 0 {
                return BigUint::zero();
            }
            base * binomial(n as i64 - 1, r) * BigUint::from((n as i64 - r - 1) as u64)
        }
        _ => BigUint::zero(),
    }
}

/// Total of the type B recursion over all heights and step classes.
pub fn count_type_b(n: u32) -> BigUint {
    type_b_tables(n).iter().flat_map(|t| t.iter()).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylType {
    A,
    B,
}

/// Closed-form (1,1) Hilbert series in `q, u`:
/// type A `Σ_k u^{n-k} [k]_q! Stir_q(n,k)`, type B `Σ_k u^{n-k} [2k]_q!! Stir^B_q(n,k)`,
/// summed over `0 ≤ k ≤ n`.
pub fn hilbert_11_formula(n: u32, kind: WeylType) -> QuvPolynomial {
    let row = q_stirling_row(
        n,
        match kind {
            WeylType::A => StirlingKind::TypeA,
            WeylType::B => StirlingKind::TypeB,
        },
    );
    let mut total = QuvPolynomial::zero();
    for (k, st) in row.iter().enumerate() {
        let k = k as u32;
        let fact = match kind {
            WeylType::A => q_factorial(k),
            WeylType::B => q_double_factorial_even(k),
        };
        total += &(&QuvPolynomial::uv_pow(n - k, 0) * &fact) * st;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(n: u32, e: &[u32]) -> PositionSet {
        PositionSet::from_elements(n, e).unwrap()
    }

    fn p(s: &str) -> QuvPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn alpha_sequences() {
        assert_eq!(alpha_sequence(&ps(3, &[]), &ps(3, &[])).unwrap().values, [0, 1, 2]);
        assert_eq!(alpha_sequence(&ps(3, &[3]), &ps(3, &[3])).unwrap().values, [0, 1, 0]);
        assert_eq!(alpha_sequence(&ps(3, &[2]), &ps(3, &[])).unwrap().values, [0, 0, 1]);
        assert!(matches!(
            alpha_sequence(&ps(2, &[2]), &ps(2, &[2])),
            Err(Error::FloorViolation { position: 2 })
        ));
        assert!(alpha_sequence(&ps(2, &[1]), &ps(2, &[])).is_err());
    }

    #[test]
    fn beta_sequences() {
        let b = beta_sequence(&ps(6, &[3, 4]), &ps(6, &[3, 6])).unwrap();
        assert_eq!(b.values, [1, 3, 3, 2, 3, 4]);
        assert_eq!(b.volume(), 2 * 4 * 4 * 3 * 4 * 5);
        assert_eq!(beta_sequence(&ps(2, &[]), &ps(2, &[])).unwrap().values, [1, 3]);
        assert!(beta_sequence(&ps(1, &[1]), &ps(1, &[1])).is_err());
    }

    #[test]
    fn staircase_matches_heights() {
        // α_i = h_i - 1 in type A; β_i = h_{i-1} + h_i in type B
        for path in crate::motzkin::enumerate_paths(6, PathVariant::TypeA).unwrap() {
            let (t, s) = path.weight_sets();
            let a = alpha_sequence(&t, &s).unwrap();
            let h = path.heights();
            assert!(a.values.iter().zip(&h).all(|(a, h)| *a + 1 == *h));
        }
        for path in crate::motzkin::enumerate_paths(6, PathVariant::TypeB).unwrap() {
            let (t, s) = path.weight_sets();
            let b = beta_sequence(&t, &s).unwrap();
            let h = path.heights();
            for i in 0..6 {
                let prev = if i == 0 { 0 } else { h[i - 1] };
                assert_eq!(b.values[i], prev + h[i]);
            }
        }
    }

    #[test]
    fn small_bases() {
        let b2: Vec<String> = enumerate_basis(2, BasisVariant::A12)
            .unwrap()
            .iter()
            .map(|b| b.to_string())
            .collect();
        assert_eq!(b2, ["1", "x2", "th2", "xi2"]);
        assert_eq!(enumerate_basis(3, BasisVariant::A12).unwrap().len(), 24);
        let b1: Vec<String> = enumerate_basis(1, BasisVariant::B12)
            .unwrap()
            .iter()
            .map(|b| b.to_string())
            .collect();
        assert_eq!(b1, ["1", "x1", "th1", "xi1"]);
        let a11: Vec<String> = enumerate_basis(3, BasisVariant::A11)
            .unwrap()
            .iter()
            .map(|b| b.to_string())
            .collect();
        assert_eq!(a11.len(), 13);
        assert!(a11.contains(&"x2*x3*th3".to_string()));
        assert_eq!(enumerate_basis(3, BasisVariant::A02).unwrap().len(), 10);
    }

    #[test]
    fn stair_q_examples() {
        let all_up: MotzkinPath = "U U U".parse().unwrap();
        assert_eq!(stair_q(&all_up).unwrap(), p("1+2q+2q^2+q^3"));
        let thetas: MotzkinPath = "U T T".parse().unwrap();
        assert_eq!(stair_q(&thetas).unwrap(), QuvPolynomial::one());
        let b = crate::motzkin::parse_path("U", PathVariant::TypeB).unwrap();
        assert_eq!(stair_q(&b).unwrap(), p("1+q"));
    }

    #[test]
    fn hilbert_small() {
        assert_eq!(hilbert_series(1, BasisVariant::A12).unwrap(), QuvPolynomial::one());
        assert_eq!(hilbert_series(2, BasisVariant::A12).unwrap(), p("1+q+u+v"));
        assert_eq!(
            hilbert_series(3, BasisVariant::A12).unwrap(),
            p("(q^3+2q^2+2q+1) + (q^2+3q+2)u + (q^2+3q+2)v + u^2 + (q+3)uv + v^2")
        );
    }

    #[test]
    fn hilbert_agrees_with_enumeration() {
        for variant in [
            BasisVariant::A12,
            BasisVariant::A11,
            BasisVariant::A02,
            BasisVariant::B12,
            BasisVariant::B11,
        ] {
            for n in 1..=4 {
                let mut direct = QuvPolynomial::zero();
                for_each_basis_element(n, variant, |b| direct += b.weight()).unwrap();
                assert_eq!(hilbert_series(n, variant).unwrap(), direct, "{variant:?} n={n}");
                assert_eq!(count_basis(n, variant).unwrap(), enumerate_basis(n, variant).unwrap().len() as u64);
            }
        }
    }

    #[test]
    fn ascent_examples() {
        let b = BasisElement::parse_monomial("x2*th3", 3, BasisVariant::A12).unwrap();
        assert_eq!(b.ascent_set().elements(), [1, 2]);
        let b = BasisElement::parse_monomial("1", 3, BasisVariant::A12).unwrap();
        assert!(b.ascent_set().is_empty());
        let b = BasisElement::parse_monomial("x3*xi3", 3, BasisVariant::A12).unwrap();
        assert_eq!(b.ascent_set().elements(), [2]);
    }

    #[test]
    fn element_validation() {
        assert!(BasisElement::parse_monomial("x2^2", 2, BasisVariant::A12).is_err());
        assert!(BasisElement::parse_monomial("th2*xi2", 2, BasisVariant::A12).is_err());
        assert!(BasisElement::parse_monomial("xi2", 2, BasisVariant::A11).is_err());
        assert!(BasisElement::parse_monomial("x2", 2, BasisVariant::A02).is_err());
        assert!(BasisElement::parse_monomial("th1", 2, BasisVariant::A12).is_err());
        assert!(BasisElement::parse_monomial("th1", 1, BasisVariant::B12).is_ok());
        assert!(BasisElement::parse_monomial("th3*th3", 3, BasisVariant::A12).is_err());
        assert!(BasisElement::new(BasisVariant::A12, vec![0], vec![2], vec![0]).is_err());
    }

    #[test]
    fn record_round_trip() {
        let b = BasisElement::parse_monomial("x2*x3^2*th3*xi3", 4, BasisVariant::A12);
        assert!(b.is_err());
        let b = BasisElement::parse_monomial("x2*x3*th3", 3, BasisVariant::A12).unwrap();
        let js = serde_json::to_string(&b.to_record()).unwrap();
        assert_eq!(js, r#"{"alpha":[0,1,1],"theta":[0,0,1],"xi":[0,0,0]}"#);
        let back: BasisRecord = serde_json::from_str(&js).unwrap();
        assert_eq!(BasisElement::from_record(BasisVariant::A12, &back).unwrap(), b);
    }

    #[test]
    fn height_counts() {
        assert_eq!(count_by_height(3, 1), BigUint::from(12u32));
        assert_eq!(count_by_height(3, -1), BigUint::zero());
        let total: BigUint = (0..4).map(|r| count_by_height(4, r)).sum();
        assert_eq!(total, BigUint::from(192u32));
        for n in 1..=10 {
            for r in -1..=n as i64 {
                assert_eq!(count_by_height(n, r), count_by_height_recursive(n, r), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn type_b_counts() {
        assert_eq!(count_type_b(1), BigUint::from(4u32));
        assert_eq!(count_type_b_refined(1, 0, StepClass::E), BigUint::from(2u32));
        for r in 0..4 {
            assert!(count_type_b_refined(1, r, StepClass::D).is_zero());
        }
        for n in 1..=10u32 {
            let expected = factorial(n) * (BigUint::one() << (2 * n as usize));
            assert_eq!(count_type_b(n), expected);
            for h in 0..=2 * n as i64 + 2 {
                for c in [StepClass::E, StepClass::U, StepClass::D] {
                    assert_eq!(
                        count_type_b_refined(n, h, c),
                        count_type_b_refined_closed(n, h, c),
                        "n={n} h={h} {c:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn hilbert_11_examples() {
        assert_eq!(hilbert_11_formula(2, WeylType::A), p("1+q+u"));
        assert_eq!(hilbert_11_formula(1, WeylType::B), p("1+q+u"));
        assert_eq!(
            hilbert_11_formula(3, WeylType::A),
            hilbert_series(3, BasisVariant::A12).unwrap().at_v_zero()
        );
    }
}
