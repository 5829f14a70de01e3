//! Brute-force dimensions of the quotient rings by exact linear algebra.
//!
//! The ambient ring is `C[x_1..x_n] ⊗ Λ[θ_1..θ_n] ⊗ Λ[ξ_1..ξ_n]`; monomials
//! are kept in the canonical order `x^a θ_{t_1}⋯θ_{t_s} ξ_{u_1}⋯ξ_{u_t}` with
//! ascending indices. The ideal is generated by all invariants of positive
//! degree under the symmetric group (type A) or the signed permutations
//! (type B).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::basis::WeylType;
use crate::error::{Error, Result};
use crate::qpoly::{QuvPolynomial, TermRecord};

pub type Degree = (u32, u32, u32);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperMonomial {
    pub x: Vec<u32>,
    pub theta: u32,
    pub xi: u32,
}

impl SuperMonomial {
    pub fn one(n: usize) -> Self {
        Self {
            x: vec![0; n],
            theta: 0,
            xi: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn degree(&self) -> Degree {
        (self.x.iter().sum(), self.theta.count_ones(), self.xi.count_ones())
    }
}

impl fmt::Display for SuperMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &a) in self.x.iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                _ => parts.push(format!("x{}^{a}", i + 1)),
            }
        }
        for i in 0..self.n() {
            if self.theta >> i & 1 == 1 {
                parts.push(format!("th{}", i + 1));
            }
        }
        for i in 0..self.n() {
            if self.xi >> i & 1 == 1 {
                parts.push(format!("xi{}", i + 1));
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Number of pairs `(i ∈ a, j ∈ b)` with `i > j`: the sign of merging two
/// ascending runs of anticommuting factors.
fn merge_inversions(a: u32, b: u32) -> u32 {
    let mut count = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        count += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    count
}

/// Product of canonical monomials; `None` when a fermionic square appears.
pub fn multiply(m1: &SuperMonomial, m2: &SuperMonomial) -> Option<(i8, SuperMonomial)> {
    if m1.theta & m2.theta != 0 || m1.xi & m2.xi != 0 {
        return None;
    }
    // θ_{T1} ξ_{S1} θ_{T2} ξ_{S2}: move θ_{T2} past ξ_{S1}, then merge both runs
    let swaps = m1.xi.count_ones() * m2.theta.count_ones() + merge_inversions(m1.theta, m2.theta) + merge_inversions(m1.xi, m2.xi);
    let x = m1.x.iter().zip(&m2.x).map(|(a, b)| a + b).collect();
    let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
    Some((
        sign,
        SuperMonomial {
            x,
            theta: m1.theta | m2.theta,
            xi: m1.xi | m2.xi,
        },
    ))
}

/// `i ↦ ε_i · e_{perm[i]}` on every variable family (`ε ≡ 1` in type A).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if signs.len() != n || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidArgument("signs must be ±1, one per index".into()));
        }
        Ok(Self { perm, signs })
    }
}

/// All elements of `S_n` (type A) or of the signed permutation group (type B).
pub fn group_elements(n: usize, kind: WeylType) -> Vec<GroupElement> {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    let mut ps = perms(n);
    ps.sort();
    let sign_patterns: Vec<Vec<i8>> = match kind {
        WeylType::A => vec![vec![1; n]],
        WeylType::B => (0..1u32 << n)
            .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { -1 } else { 1 }).collect())
            .collect(),
    };
    let mut out = Vec::new();
    for p in &ps {
        for s in &sign_patterns {
            out.push(GroupElement {
                perm: p.clone(),
                signs: s.clone(),
            });
        }
    }
    out
}

fn permute_mask(mask: u32, perm: &[usize]) -> (u32, u32) {
    // image indices in the original ascending order, then count inversions
    let images: Vec<usize> = (0..perm.len()).filter(|&i| mask >> i & 1 == 1).map(|i| perm[i]).collect();
    let mut inv = 0;
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            if images[a] > images[b] {
                inv += 1;
            }
        }
    }
    (images.iter().fold(0, |m, &i| m | 1 << i), inv)
}

/// `g · m` as a signed canonical monomial.
pub fn group_action(g: &GroupElement, m: &SuperMonomial) -> Result<(i8, SuperMonomial)> {
    let n = m.n();
    if g.perm.len() != n {
        return Err(Error::InvalidArgument(format!(
            "group element acts on {} indices, monomial has {n}",
            g.perm.len()
        )));
    }
    let mut x = vec![0; n];
    let mut flips = 0;
    for i in 0..n {
        x[g.perm[i]] = m.x[i];
        if g.signs[i] < 0 {
            flips += m.x[i] + (m.theta >> i & 1) + (m.xi >> i & 1);
        }
    }
    let (theta, it) = permute_mask(m.theta, &g.perm);
    let (xi, ix) = permute_mask(m.xi, &g.perm);
    let sign = if (flips + it + ix) % 2 == 0 { 1 } else { -1 };
    Ok((sign, SuperMonomial { x, theta, xi }))
}

fn compositions_into(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions_into(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn masks_of_size(n: usize, k: u32) -> Vec<u32> {
    (0..1u32 << n).filter(|m| m.count_ones() == k).collect()
}

/// Canonically ordered monomials of one multidegree.
pub fn monomials_of_degree(n: usize, d: Degree) -> Vec<SuperMonomial> {
    let xs = compositions_into(d.0, n);
    let ts = masks_of_size(n, d.1);
    let ss = masks_of_size(n, d.2);
    let mut out = Vec::with_capacity(xs.len() * ts.len() * ss.len());
    for x in &xs {
        for &theta in &ts {
            for &xi in &ss {
                out.push(SuperMonomial { x: x.clone(), theta, xi });
            }
        }
    }
    out
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of monomials of multidegree `d`.
pub fn piece_size(n: usize, d: Degree) -> usize {
    let x = if n == 0 {
        (d.0 == 0) as u64
    } else {
        binom(d.0 as u64 + n as u64 - 1, n as u64 - 1)
    };
    (x * binom(n as u64, d.1 as u64) * binom(n as u64, d.2 as u64)) as usize
}

/// Exact scalars for elimination: checked `i128` first, `BigInt` on overflow.
trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `a*x - b*y`
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_negative(&self) -> bool;
    fn negate(&self) -> Self;
    fn is_one(&self) -> bool;
}

impl Scalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_one(&self) -> bool {
        *self == BigInt::from(1)
    }
}

struct Overflow;

/// Incremental row echelon form with fraction-free updates. Pivots sit on
/// the first nonzero column of each stored row; rows are kept primitive with
/// a positive leading entry.
struct Echelon<T: Scalar> {
    ncols: usize,
    pivot_of_col: Vec<Option<usize>>,
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> Echelon<T> {
    fn new(ncols: usize) -> Self {
        Self {
            ncols,
            pivot_of_col: vec![None; ncols],
            rows: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Reduces `v` against the stored rows; stores it if independent.
    fn insert(&mut self, mut v: Vec<T>) -> std::result::Result<bool, Overflow> {
        for c in 0..self.ncols {
            if v[c].is_zero() {
                continue;
            }
            let Some(p) = self.pivot_of_col[c] else {
                let mut g = v[c].clone();
                for e in &v[c + 1..] {
                    if g.is_one() {
                        break;
                    }
                    if !e.is_zero() {
                        g = g.gcd(e);
                    }
                }
                if v[c].is_negative() {
                    g = g.negate();
                }
                if !g.is_one() {
                    for e in v[c..].iter_mut() {
                        if !e.is_zero() {
                            *e = e.div_exact(&g);
                        }
                    }
                }
                self.pivot_of_col[c] = Some(self.rows.len());
                self.rows.push(v);
                return Ok(true);
            };
            let row = &self.rows[p];
            let (a, b) = (row[c].clone(), v[c].clone());
            for j in c..self.ncols {
                if row[j].is_zero() {
                    if !v[j].is_zero() && !a.is_one() {
                        v[j] = T::cross(&a, &v[j], &T::from_i64(0), &T::from_i64(0)).ok_or(Overflow)?;
                    }
                } else {
                    v[j] = T::cross(&a, &v[j], &b, &row[j]).ok_or(Overflow)?;
                }
            }
            // keep entries small
            let mut g: Option<T> = None;
            for e in v[c + 1..].iter().filter(|e| !e.is_zero()) {
                g = Some(match g {
                    None => e.clone(),
                    Some(g) => g.gcd(e),
                });
                if g.as_ref().is_some_and(|g| g.is_one()) {
                    break;
                }
            }
            if let Some(g) = g {
                if !g.is_one() {
                    let g = if g.is_negative() { g.negate() } else { g };
                    for e in v[c + 1..].iter_mut().filter(|e| !e.is_zero()) {
                        *e = e.div_exact(&g);
                    }
                }
            }
        }
        Ok(false)
    }
}

/// Rank of a stream of sparse integer rows over `ncols` columns, stopping
/// early at full rank. Returns the rank and the independent rows kept.
/// Pushes sparse rows into the sink until it returns `false`.
type RowSource<'a> = dyn FnMut(&mut dyn FnMut(&[(usize, i64)]) -> bool) + 'a;

fn rank_of_rows(ncols: usize, rows: &mut RowSource<'_>) -> (usize, Vec<Vec<BigInt>>) {
    let mut small: Echelon<i128> = Echelon::new(ncols);
    let mut big: Option<Echelon<BigInt>> = None;
    rows(&mut |sparse: &[(usize, i64)]| {
        if let Some(b) = big.as_mut() {
            let mut v = vec![BigInt::zero(); ncols];
            for &(c, x) in sparse {
                v[c] += x;
            }
            let _ = b.insert(v);
            return !b.is_full();
        }
        let mut v = vec![0i128; ncols];
        for &(c, x) in sparse {
            v[c] += x as i128;
        }
        if small.insert(v).is_err() {
            // redo everything kept so far in arbitrary precision
            let mut b: Echelon<BigInt> = Echelon::new(ncols);
            for r in &small.rows {
                let _ = b.insert(r.iter().map(|&e| BigInt::from(e)).collect());
            }
            let mut v = vec![BigInt::zero(); ncols];
            for &(c, x) in sparse {
                v[c] += x;
            }
            let _ = b.insert(v);
            let full = b.is_full();
            big = Some(b);
            return !full;
        }
        !small.is_full()
    });
    match big {
        Some(b) => (b.rank(), b.rows),
        None => (
            small.rank(),
            small.rows.iter().map(|r| r.iter().map(|&e| BigInt::from(e)).collect()).collect(),
        ),
    }
}

/// A polynomial as sparse `(monomial, coefficient)` terms.
pub type SparsePoly = Vec<(SuperMonomial, BigInt)>;

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub max_x_degree: u32,
    /// Largest graded piece (monomial count) the oracle will handle.
    pub piece_cap: usize,
    /// Only use invariant generators of x-degree at most this.
    pub generator_x_cap: Option<u32>,
}

impl OracleConfig {
    pub fn new(max_x_degree: u32) -> Self {
        Self {
            max_x_degree,
            piece_cap: 20_000,
            generator_x_cap: None,
        }
    }
}

/// Quotient data for one multidegree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPiece {
    pub degree: [u32; 3],
    pub ambient: usize,
    pub ideal_rank: usize,
    pub quotient: usize,
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub n: usize,
    pub kind: WeylType,
    pub max_x_degree: u32,
    pub pieces: Vec<GradedPiece>,
    pub series: QuvPolynomial,
    /// All pieces with x-degree in the top two rows vanished.
    pub complete: bool,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    pieces: &'a [GradedPiece],
    series: Vec<TermRecord>,
    complete: bool,
}

impl OracleReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ReportJson {
            pieces: &self.pieces,
            series: self.series.to_records(),
            complete: self.complete,
        })
        .expect("report serializes")
    }
}

/// A basis of the invariants in degree `d`, from Reynolds sums of every
/// monomial reduced by exact elimination.
pub fn invariant_subspace(n: usize, kind: WeylType, d: Degree) -> Result<Vec<SparsePoly>> {
    invariant_subspace_with(n, kind, d, &group_elements(n, kind), usize::MAX)
}

fn invariant_subspace_with(n: usize, kind: WeylType, d: Degree, group: &[GroupElement], cap: usize) -> Result<Vec<SparsePoly>> {
    if d == (0, 0, 0) {
        return Err(Error::InvalidArgument("invariants are taken in positive degree".into()));
    }
    let _ = kind;
    let size = piece_size(n, d);
    if size > cap {
        return Err(Error::PieceTooLarge { degree: d, size, cap });
    }
    let monos = monomials_of_degree(n, d);
    let index: HashMap<&SuperMonomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let (_, rows) = rank_of_rows(monos.len(), &mut |push| {
        for m in &monos {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for g in group {
                let (s, img) = group_action(g, m).expect("sizes agree");
                *acc.entry(index[&img]).or_default() += s as i64;
            }
            let sparse: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
            if !sparse.is_empty() && !push(&sparse) {
                return;
            }
        }
    });
    Ok(rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .enumerate()
                .filter(|(_, c)| !Zero::is_zero(c))
                .map(|(i, c)| (monos[i].clone(), c))
                .collect()
        })
        .collect())
}

fn degrees_up_to(n: usize, max_x: u32) -> Vec<Degree> {
    let mut out = Vec::new();
    for r in 0..=max_x {
        for s in 0..=n as u32 {
            for t in 0..=n as u32 {
                out.push((r, s, t));
            }
        }
    }
    out
}

fn leq(a: Degree, b: Degree) -> bool {
    a.0 <= b.0 && a.1 <= b.1 && a.2 <= b.2
}

/// Ideal rank and quotient dimension in degree `d`, given invariant bases
/// for every positive degree `≤ d`.
fn piece_dimension(n: usize, d: Degree, invariants: &BTreeMap<Degree, Vec<SparsePoly>>, config: &OracleConfig) -> Result<GradedPiece> {
    let size = piece_size(n, d);
    if size > config.piece_cap {
        return Err(Error::PieceTooLarge {
            degree: d,
            size,
            cap: config.piece_cap,
        });
    }
    let monos = monomials_of_degree(n, d);
    let index: HashMap<&SuperMonomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut cofactor_cache: BTreeMap<Degree, Vec<SuperMonomial>> = BTreeMap::new();
    let (rank, _) = rank_of_rows(monos.len(), &mut |push| {
        for (&e, invs) in invariants.iter() {
            if e == (0, 0, 0) || !leq(e, d) {
                continue;
            }
            if config.generator_x_cap.is_some_and(|cap| e.0 > cap) {
                continue;
            }
            let rest = (d.0 - e.0, d.1 - e.1, d.2 - e.2);
            let cofactors = cofactor_cache.entry(rest).or_insert_with(|| monomials_of_degree(n, rest));
            for inv in invs {
                for m in cofactors.iter() {
                    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                    for (term, c) in inv {
                        if let Some((s, prod)) = multiply(term, m) {
                            let c: i64 = c.try_into().expect("invariant coefficients are small");
                            *acc.entry(index[&prod]).or_default() += s as i64 * c;
                        }
                    }
                    let sparse: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
                    if !sparse.is_empty() && !push(&sparse) {
                        return;
                    }
                }
            }
        }
    });
    Ok(GradedPiece {
        degree: [d.0, d.1, d.2],
        ambient: monos.len(),
        ideal_rank: rank,
        quotient: monos.len() - rank,
    })
}

/// Dimension of one graded piece of the quotient.
pub fn quotient_dimension(n: usize, kind: WeylType, d: Degree, config: &OracleConfig) -> Result<GradedPiece> {
    if d.0 > config.max_x_degree {
        return Err(Error::InvalidArgument(format!(
            "x-degree {} exceeds the configured maximum {}",
            d.0, config.max_x_degree
        )));
    }
    let group = group_elements(n, kind);
    let mut invariants = BTreeMap::new();
    for e in degrees_up_to(n, d.0) {
        if e != (0, 0, 0) && leq(e, d) {
            invariants.insert(e, invariant_subspace_with(n, kind, e, &group, config.piece_cap)?);
        }
    }
    piece_dimension(n, d, &invariants, config)
}

/// Sums quotient dimensions over `r ≤ max_x`, `s, t ≤ n`; pieces are
/// computed in parallel and merged in degree order.
pub fn hilbert_via_oracle(n: usize, kind: WeylType, config: &OracleConfig) -> Result<OracleReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if n > 16 {
        return Err(Error::InvalidArgument("n too large for the oracle".into()));
    }
    let group = group_elements(n, kind);
    let degrees = degrees_up_to(n, config.max_x_degree);
    let inv_list: Vec<(Degree, Vec<SparsePoly>)> = degrees
        .par_iter()
        .filter(|&&d| d != (0, 0, 0))
        .map(|&d| invariant_subspace_with(n, kind, d, &group, config.piece_cap).map(|b| (d, b)))
        .collect::<Result<_>>()?;
    let invariants: BTreeMap<Degree, Vec<SparsePoly>> = inv_list.into_iter().collect();
    let pieces: Vec<GradedPiece> = degrees
        .par_iter()
        .map(|&d| piece_dimension(n, d, &invariants, config))
        .collect::<Result<_>>()?;
    let mut series = QuvPolynomial::zero();
    for p in &pieces {
        series.add_term((p.degree[0], p.degree[1], p.degree[2]), BigInt::from(p.quotient));
    }
    let band = config.max_x_degree.saturating_sub(1);
    let complete = config.max_x_degree >= 2 && pieces.iter().filter(|p| p.degree[0] >= band).all(|p| p.quotient == 0);
    Ok(OracleReport {
        n,
        kind,
        max_x_degree: config.max_x_degree,
        pieces,
        series,
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(n: usize, x: &[u32], theta: &[usize], xi: &[usize]) -> SuperMonomial {
        let mut m = SuperMonomial::one(n);
        m.x[..x.len()].copy_from_slice(x);
        m.theta = theta.iter().fold(0, |acc, &i| acc | 1 << (i - 1));
        m.xi = xi.iter().fold(0, |acc, &i| acc | 1 << (i - 1));
        m
    }

    fn p(s: &str) -> QuvPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn action_examples() {
        let swap = GroupElement::new(vec![1, 0], vec![1, 1]).unwrap();
        let tt = mono(2, &[], &[1, 2], &[]);
        assert_eq!(group_action(&swap, &tt).unwrap(), (-1, tt.clone()));
        let id = GroupElement::identity(2);
        let m = mono(2, &[2, 1], &[2], &[1]);
        assert_eq!(group_action(&id, &m).unwrap(), (1, m.clone()));
        let flip = GroupElement::new(vec![0], vec![-1]).unwrap();
        let xt = mono(1, &[1], &[1], &[]);
        assert_eq!(group_action(&flip, &xt).unwrap(), (1, xt.clone()));
        let x = mono(1, &[1], &[], &[]);
        assert_eq!(group_action(&flip, &x).unwrap().0, -1);
        assert!(group_action(&flip, &m).is_err());
    }

    #[test]
    fn action_is_a_group_action() {
        // (gh)·m = g·(h·m) with signs
        let n = 3;
        let group = group_elements(n, WeylType::B);
        assert_eq!(group.len(), 48);
        let monos = monomials_of_degree(n, (2, 2, 1));
        for g in group.iter().step_by(7) {
            for h in group.iter().step_by(5) {
                let gh = GroupElement {
                    perm: (0..n).map(|i| g.perm[h.perm[i]]).collect(),
                    signs: (0..n).map(|i| h.signs[i] * g.signs[h.perm[i]]).collect(),
                };
                for m in &monos {
                    let (s1, m1) = group_action(h, m).unwrap();
                    let (s2, m2) = group_action(g, &m1).unwrap();
                    assert_eq!(group_action(&gh, m).unwrap(), (s1 * s2, m2));
                }
            }
        }
    }

    #[test]
    fn products() {
        let a = mono(2, &[1], &[2], &[]);
        let b = mono(2, &[], &[1], &[]);
        // θ2 θ1 = -θ1 θ2
        assert_eq!(multiply(&a, &b).unwrap(), (-1, mono(2, &[1], &[1, 2], &[])));
        assert!(multiply(&b, &b).is_none());
        let xi1 = mono(2, &[], &[], &[1]);
        let th2 = mono(2, &[], &[2], &[]);
        // ξ1 θ2 = -θ2 ξ1
        assert_eq!(multiply(&xi1, &th2).unwrap(), (-1, mono(2, &[], &[2], &[1])));
        assert_eq!(multiply(&th2, &xi1).unwrap(), (1, mono(2, &[], &[2], &[1])));
    }

    #[test]
    fn invariant_dimensions() {
        assert_eq!(invariant_subspace(2, WeylType::A, (1, 0, 0)).unwrap().len(), 1);
        assert_eq!(invariant_subspace(2, WeylType::A, (0, 1, 0)).unwrap().len(), 1);
        assert_eq!(invariant_subspace(2, WeylType::A, (0, 1, 1)).unwrap().len(), 2);
        assert_eq!(invariant_subspace(2, WeylType::A, (0, 2, 0)).unwrap().len(), 0);
        assert_eq!(invariant_subspace(1, WeylType::B, (1, 0, 0)).unwrap().len(), 0);
        assert_eq!(invariant_subspace(1, WeylType::B, (2, 0, 0)).unwrap().len(), 1);
        assert!(invariant_subspace(2, WeylType::A, (0, 0, 0)).is_err());
    }

    #[test]
    fn small_quotients() {
        let cfg = OracleConfig::new(4);
        assert_eq!(quotient_dimension(2, WeylType::A, (0, 0, 0), &cfg).unwrap().quotient, 1);
        let r2 = hilbert_via_oracle(2, WeylType::A, &cfg).unwrap();
        assert_eq!(r2.series, p("1+q+u+v"));
        assert!(r2.complete);
        let b1 = hilbert_via_oracle(1, WeylType::B, &cfg).unwrap();
        assert_eq!(b1.series, p("1+q+u+v"));
        assert!(b1.complete);
        let low = hilbert_via_oracle(2, WeylType::A, &OracleConfig::new(1)).unwrap();
        assert!(!low.complete);
    }

    #[test]
    fn ranks_do_not_depend_on_truncation() {
        let a = hilbert_via_oracle(2, WeylType::A, &OracleConfig::new(3)).unwrap();
        let b = hilbert_via_oracle(2, WeylType::A, &OracleConfig::new(6)).unwrap();
        for piece in &a.pieces {
            assert!(b.pieces.contains(piece));
        }
        let mut capped = OracleConfig::new(4);
        capped.generator_x_cap = Some(4);
        assert_eq!(
            hilbert_via_oracle(2, WeylType::A, &capped).unwrap().pieces,
            hilbert_via_oracle(2, WeylType::A, &OracleConfig::new(4)).unwrap().pieces
        );
    }

    #[test]
    fn piece_cap_is_enforced() {
        let mut cfg = OracleConfig::new(4);
        cfg.piece_cap = 3;
        assert!(matches!(hilbert_via_oracle(2, WeylType::A, &cfg), Err(Error::PieceTooLarge { .. })));
    }

    #[test]
    fn sizes() {
        assert_eq!(piece_size(3, (2, 1, 1)), 6 * 3 * 3);
        assert_eq!(monomials_of_degree(3, (2, 1, 1)).len(), 54);
    }

    #[test]
    fn bigint_fallback_matches() {
        let mut small: Echelon<i128> = Echelon::new(3);
        let mut big: Echelon<BigInt> = Echelon::new(3);
        for row in [[2i64, 4, 6], [1, 2, 3], [0, 5, 1], [3, 0, 7]] {
            let s = small.insert(row.iter().map(|&e| e as i128).collect()).is_ok_and(|b| b);
            let b = big.insert(row.iter().map(|&e| BigInt::from(e)).collect()).is_ok_and(|b| b);
            assert_eq!(s, b);
        }
        assert_eq!(small.rank(), 3);
    }
}
