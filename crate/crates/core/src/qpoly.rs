//! Sparse polynomials in `q`, `u`, `v` with arbitrary-precision integer
//! coefficients, plus the q-analogue building blocks used by the series
//! computations.
//!
//! `q` tracks bosonic (x) degree, `u` tracks θ-degree and `v` tracks
//! ξ-degree. Exponents are never negative.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Exponent triple `(q, u, v)`.
pub type Exponent = (u32, u32, u32);

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuvPolynomial {
    terms: BTreeMap<Exponent, BigInt>,
}

impl QuvPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::monomial(0, 0, 0, c)
    }

    pub fn monomial<T: Into<BigInt>>(q: u32, u: u32, v: u32, coeff: T) -> Self {
        let mut p = Self::zero();
        p.add_term((q, u, v), coeff.into());
        p
    }

    pub fn q() -> Self {
        Self::monomial(1, 0, 0, 1)
    }

    pub fn u() -> Self {
        Self::monomial(0, 1, 0, 1)
    }

    pub fn v() -> Self {
        Self::monomial(0, 0, 1, 1)
    }

    /// `q^e`.
    pub fn q_pow(e: u32) -> Self {
        Self::monomial(e, 0, 0, 1)
    }

    /// `u^b v^c`.
    pub fn uv_pow(b: u32, c: u32) -> Self {
        Self::monomial(0, b, c, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff · q^a u^b v^c`, dropping the entry if it cancels.
    pub fn add_term(&mut self, exp: Exponent, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, q: u32, u: u32, v: u32) -> BigInt {
        self.terms.get(&(q, u, v)).cloned().unwrap_or_default()
    }

    /// Terms in canonical (lexicographic `(q, u, v)`) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    /// Largest exponent of `q` appearing, or `None` for the zero polynomial.
    pub fn q_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn eval(&self, q: &BigInt, u: &BigInt, v: &BigInt) -> BigInt {
        self.terms.iter().map(|(&(a, b, c), k)| k * q.pow(a) * u.pow(b) * v.pow(c)).sum()
    }

    /// Sum of all coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Keeps only the terms whose exponent satisfies `keep`.
    pub fn filter_terms(&self, keep: impl Fn(Exponent) -> bool) -> Self {
        Self {
            terms: self.terms.iter().filter(|(e, _)| keep(**e)).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    /// Specialization `v = 0`.
    pub fn at_v_zero(&self) -> Self {
        self.filter_terms(|(_, _, c)| c == 0)
    }

    /// Specialization `q = 0`.
    pub fn at_q_zero(&self) -> Self {
        self.filter_terms(|(a, _, _)| a == 0)
    }

    /// Coefficient of `u^b v^c`, as a polynomial in `q` alone.
    pub fn uv_coefficient(&self, b: u32, c: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|((_, tb, tc), _)| *tb == b && *tc == c)
                .map(|(&(a, _, _), k)| ((a, 0, 0), k.clone()))
                .collect(),
        }
    }

    /// The distinct `(u, v)` exponent pairs, in increasing order.
    pub fn uv_support(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = self.terms.keys().map(|&(_, b, c)| (b, c)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_univariate_q(&self) -> bool {
        self.terms.keys().all(|&(_, b, c)| b == 0 && c == 0)
    }

    /// Exact quotient of two polynomials in `q` alone.
    pub fn div_exact_q(&self, divisor: &Self) -> Result<Self, Error> {
        if !self.is_univariate_q() || !divisor.is_univariate_q() {
            return Err(Error::Polynomial("exact division needs univariate q-polynomials".into()));
        }
        let Some(dd) = divisor.q_degree() else {
            return Err(Error::Polynomial("division by zero polynomial".into()));
        };
        let lead = divisor.coefficient(dd, 0, 0);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = rem.q_degree() {
            if rd < dd {
                break;
            }
            let rc = rem.coefficient(rd, 0, 0);
            if !(&rc % &lead).is_zero() {
                break;
            }
            let t = Self::monomial(rd - dd, 0, 0, &rc / &lead);
            rem -= &(&t * divisor);
            quot += &t;
        }
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::Polynomial("division is not exact".into()))
        }
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(&(q, u, v), c)| TermRecord {
                q,
                u,
                v,
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<Self, Error> {
        let mut p = Self::zero();
        for r in records {
            let c = BigInt::from_str(&r.coeff).map_err(|_| Error::Parse(format!("bad coefficient {:?}", r.coeff)))?;
            p.add_term((r.q, r.u, r.v), c);
        }
        Ok(p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_records()).expect("records serialize")
    }

    /// Display order: total degree descending, then `(q, u, v)` descending.
    fn display_order(&self) -> Vec<(&Exponent, &BigInt)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(x, _), (y, _)| {
            let dx = x.0 + x.1 + x.2;
            let dy = y.0 + y.1 + y.2;
            dy.cmp(&dx).then_with(|| y.cmp(x))
        });
        ts
    }

    /// Renders with an explicit variable-name map (used for LaTeX output).
    pub fn render(&self, names: [&str; 3], explicit_mul: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&(a, b, c), coeff)) in self.display_order().into_iter().enumerate() {
            let neg = coeff.is_negative();
            let mag = coeff.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (name, e) in names.iter().zip([a, b, c]) {
                match e {
                    0 => {}
                    1 => factors.push((*name).to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            let sep = if explicit_mul { "*" } else { "" };
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push_str(sep);
                }
                out.push_str(&factors.join(sep));
            }
        }
        out
    }
}

/// One term of the JSON serialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub q: u32,
    pub u: u32,
    pub v: u32,
    pub coeff: String,
}

impl fmt::Display for QuvPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(["q", "u", "v"], false))
    }
}

impl Serialize for QuvPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_records().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuvPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let recs = Vec::<TermRecord>::deserialize(d)?;
        Self::from_records(&recs).map_err(serde::de::Error::custom)
    }
}

impl AddAssign<&QuvPolynomial> for QuvPolynomial {
    fn add_assign(&mut self, rhs: &QuvPolynomial) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl AddAssign for QuvPolynomial {
    fn add_assign(&mut self, rhs: QuvPolynomial) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl SubAssign<&QuvPolynomial> for QuvPolynomial {
    fn sub_assign(&mut self, rhs: &QuvPolynomial) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Add for QuvPolynomial {
    type Output = QuvPolynomial;
    fn add(mut self, rhs: QuvPolynomial) -> QuvPolynomial {
        self += rhs;
        self
    }
}

impl Add<&QuvPolynomial> for &QuvPolynomial {
    type Output = QuvPolynomial;
    fn add(self, rhs: &QuvPolynomial) -> QuvPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for QuvPolynomial {
    type Output = QuvPolynomial;
    fn sub(mut self, rhs: QuvPolynomial) -> QuvPolynomial {
        self -= &rhs;
        self
    }
}

impl Sub<&QuvPolynomial> for &QuvPolynomial {
    type Output = QuvPolynomial;
    fn sub(self, rhs: &QuvPolynomial) -> QuvPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for QuvPolynomial {
    type Output = QuvPolynomial;
    fn neg(mut self) -> QuvPolynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul<&QuvPolynomial> for &QuvPolynomial {
    type Output = QuvPolynomial;
    fn mul(self, rhs: &QuvPolynomial) -> QuvPolynomial {
        let mut out = QuvPolynomial::zero();
        for (&(a1, b1, c1), k1) in &self.terms {
            for (&(a2, b2, c2), k2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2, c1 + c2), k1 * k2);
            }
        }
        out
    }
}

impl Mul for QuvPolynomial {
    type Output = QuvPolynomial;
    fn mul(self, rhs: QuvPolynomial) -> QuvPolynomial {
        &self * &rhs
    }
}

impl MulAssign<&QuvPolynomial> for QuvPolynomial {
    fn mul_assign(&mut self, rhs: &QuvPolynomial) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for QuvPolynomial {
    fn sum<I: Iterator<Item = QuvPolynomial>>(iter: I) -> Self {
        let mut acc = QuvPolynomial::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

impl std::iter::Product for QuvPolynomial {
    fn product<I: Iterator<Item = QuvPolynomial>>(iter: I) -> Self {
        let mut acc = QuvPolynomial::one();
        for p in iter {
            acc *= &p;
        }
        acc
    }
}

// --- parsing ---------------------------------------------------------------
//
// Grammar (whitespace ignored):
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*'? factor)*
//   factor := atom ('^' integer)?
//   atom   := integer | 'q' | 'u' | 'v' | '(' expr ')'

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            src,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in polynomial {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<QuvPolynomial, Error> {
        let mut acc = QuvPolynomial::zero();
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            if sign < 0 {
                acc -= &t;
            } else {
                acc += t;
            }
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<QuvPolynomial, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc *= &self.factor()?;
                }
                Some(c) if c == '(' || c.is_ascii_digit() || "quv".contains(c) => {
                    acc *= &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(BigInt::from_str(&s).expect("digits"))
    }

    fn factor(&mut self) -> Result<QuvPolynomial, Error> {
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                e
            }
            Some('q') => {
                self.pos += 1;
                QuvPolynomial::q()
            }
            Some('u') => {
                self.pos += 1;
                QuvPolynomial::u()
            }
            Some('v') => {
                self.pos += 1;
                QuvPolynomial::v()
            }
            Some(c) if c.is_ascii_digit() => QuvPolynomial::constant(self.integer()?),
            _ => return Err(self.err("unexpected token")),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?.to_u32().ok_or_else(|| self.err("exponent out of range"))?;
            let mut out = QuvPolynomial::one();
            for _ in 0..e {
                out *= &base;
            }
            return Ok(out);
        }
        Ok(base)
    }
}

impl FromStr for QuvPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s);
        let out = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }
}

// --- q-analogues -------------------------------------------------------------

/// `[k]_q = 1 + q + … + q^{k-1}`; zero for `k = 0`.
pub fn q_integer(k: u32) -> QuvPolynomial {
    let mut p = QuvPolynomial::zero();
    for e in 0..k {
        p.add_term((e, 0, 0), BigInt::one());
    }
    p
}

/// `[k]_q! = [1]_q [2]_q … [k]_q`.
pub fn q_factorial(k: u32) -> QuvPolynomial {
    (1..=k).map(q_integer).product()
}

/// `[2k]_q!! = [2]_q [4]_q … [2k]_q`.
pub fn q_double_factorial_even(k: u32) -> QuvPolynomial {
    (1..=k).map(|i| q_integer(2 * i)).product()
}

/// Gaussian binomial `[m choose r]_q`, zero outside `0 ≤ r ≤ m`.
///
/// Computed as `[m]_q! / ([r]_q! [m-r]_q!)` with exact division.
pub fn q_binomial(m: i64, r: i64) -> QuvPolynomial {
    if m < 0 || r < 0 || r > m {
        return QuvPolynomial::zero();
    }
    let (m, r) = (m as u32, r as u32);
    let r = r.min(m - r);
    // [m]!/[m-r]! = [m-r+1]…[m]
    let num: QuvPolynomial = (m - r + 1..=m).map(q_integer).product();
    num.div_exact_q(&q_factorial(r)).expect("q-binomial quotient is always exact")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StirlingKind {
    TypeA,
    TypeB,
}

/// q-Stirling numbers of the second kind.
///
/// Type A: `S(n,k) = [k]_q S(n-1,k) + S(n-1,k-1)`;
/// type B: `S(n,k) = [2k+1]_q S(n-1,k) + S(n-1,k-1)`; both with `S(0,k) = δ_{k,0}`.
pub fn q_stirling(n: u32, k: u32, kind: StirlingKind) -> QuvPolynomial {
    q_stirling_row(n, kind).into_iter().nth(k as usize).unwrap_or_default()
}

/// All of `S(n, 0..=n)`.
pub fn q_stirling_row(n: u32, kind: StirlingKind) -> Vec<QuvPolynomial> {
    let mut row = vec![QuvPolynomial::one()];
    for m in 1..=n as usize {
        let mut next = vec![QuvPolynomial::zero(); m + 1];
        for (k, slot) in next.iter_mut().enumerate() {
            let weight = match kind {
                StirlingKind::TypeA => q_integer(k as u32),
                StirlingKind::TypeB => q_integer(2 * k as u32 + 1),
            };
            if let Some(same) = row.get(k) {
                *slot += &weight * same;
            }
            if k > 0 {
                if let Some(prev) = row.get(k - 1) {
                    *slot += prev;
                }
            }
        }
        row = next;
    }
    row
}

/// `C(a, 2) = a(a-1)/2` for every integer `a`; zero for `a ∈ {0, 1}` and
/// positive again for negative `a` (`C(-1, 2) = 1`).
pub fn choose2(a: i64) -> u32 {
    (a * (a - 1) / 2) as u32
}

/// Both sides of the q-Chu-Vandermonde identity
/// `q^{C(m-k-ℓ,2)} [m-1, ℓ] = Σ_f q^{C(m-k-f,2)+C(ℓ-f,2)} [m-1-k, f] [k, ℓ-f]`
/// with `m = n - d`.
pub fn chu_vandermonde_sides(n: i64, d: i64, k: i64, l: i64) -> (QuvPolynomial, QuvPolynomial) {
    let m = n - d;
    let lhs = QuvPolynomial::q_pow(choose2(m - k - l)) * q_binomial(m - 1, l);
    let mut rhs = QuvPolynomial::zero();
    for f in 0..=l {
        rhs += &(QuvPolynomial::q_pow(choose2(m - k - f) + choose2(l - f)) * q_binomial(m - 1 - k, f) * q_binomial(k, l - f));
    }
    (lhs, rhs)
}
