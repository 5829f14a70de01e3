//! Quasisymmetric and Schur expansions of the conjectural Frobenius series,
//! monomial (h_μ) pairings, the slinky rule and the hook-shape formulas.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::basis::{for_each_basis_element, BasisElement, BasisVariant};
use crate::combinat::{set_of_comp, Composition, IndexSubset, Partition};
use crate::error::{Error, Result};
use crate::qpoly::{choose2, q_binomial, QuvPolynomial, TermRecord};
use crate::smirnov::{for_each_segmented_word, sminv, split_set};

/// `Σ_S c_S Q_{S,n}` keyed by subsets of `[n-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSymExpansion {
    n: u32,
    coeffs: BTreeMap<IndexSubset, QuvPolynomial>,
}

impl QSymExpansion {
    pub fn new(n: u32) -> Self {
        Self {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn add(&mut self, s: IndexSubset, c: &QuvPolynomial) -> Result<()> {
        if s.ambient() != self.n {
            return Err(Error::InvalidArgument(format!(
                "subset ambient {} does not match expansion ambient {}",
                s.ambient(),
                self.n
            )));
        }
        let e = self.coeffs.entry(s).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&s);
        }
        Ok(())
    }

    pub fn coefficient(&self, s: &IndexSubset) -> QuvPolynomial {
        self.coeffs.get(s).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IndexSubset, &QuvPolynomial)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `⟨f, h_1^n⟩`: the sum of all coefficients.
    pub fn total(&self) -> QuvPolynomial {
        self.coeffs.values().cloned().sum()
    }

    pub fn map_coefficients(&self, f: impl Fn(&QuvPolynomial) -> QuvPolynomial) -> Self {
        let mut out = Self::new(self.n);
        for (s, c) in &self.coeffs {
            out.add(*s, &f(c)).expect("same ambient");
        }
        out
    }
}

/// `Σ_λ c_λ s_λ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchurExpansion {
    coeffs: BTreeMap<Partition, QuvPolynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurRecord {
    pub partition: Vec<u32>,
    pub coeff: Vec<TermRecord>,
}

impl SchurExpansion {
    pub fn coefficient(&self, lambda: &Partition) -> QuvPolynomial {
        self.coeffs.get(lambda).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &QuvPolynomial)> {
        self.coeffs.iter()
    }

    pub fn add(&mut self, lambda: Partition, c: &QuvPolynomial) {
        let e = self.coeffs.entry(lambda.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&lambda);
        }
    }

    pub fn to_records(&self) -> Vec<SchurRecord> {
        self.coeffs
            .iter()
            .map(|(p, c)| SchurRecord {
                partition: p.parts().to_vec(),
                coeff: c.to_records(),
            })
            .collect()
    }

    /// Layout of the form `\Big((q^2+q)+(q+1)u+uv\Big)s_{2 1} + s_{3}`.
    pub fn to_latex(&self) -> String {
        let mut parts = Vec::new();
        for (p, c) in &self.coeffs {
            let idx: Vec<String> = p.parts().iter().map(u32::to_string).collect();
            let s = format!("s_{{{}}}", idx.join(" "));
            let body = latex_grouped(c);
            if body == "1" {
                parts.push(s);
            } else if c.len() == 1 {
                parts.push(format!("{body}{s}"));
            } else {
                parts.push(format!("\\Big({body}\\Big){s}"));
            }
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for SchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (p, c) in &self.coeffs {
            let s = format!("s[{p}]");
            if *c == QuvPolynomial::one() {
                parts.push(s);
            } else if c.len() == 1 {
                parts.push(format!("{c}*{s}"));
            } else {
                parts.push(format!("({c})*{s}"));
            }
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

fn latex_q(p: &QuvPolynomial) -> String {
    p.render(["q", "u", "v"], false).replace(' ', "")
}

fn latex_uv(b: u32, c: u32) -> String {
    let pow = |name: &str, e: u32| match e {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{e}"),
    };
    format!("{}{}", pow("u", b), pow("v", c))
}

/// Groups a `q,u,v` polynomial by its `u,v` monomials.
pub fn latex_grouped(p: &QuvPolynomial) -> String {
    let mut support = p.uv_support();
    support.sort_by(|a, b| (a.0 + a.1).cmp(&(b.0 + b.1)).then(b.0.cmp(&a.0)));
    let many = support.len() > 1;
    let mut out = Vec::new();
    for (b, c) in support {
        let qpart = p.uv_coefficient(b, c);
        let qs = latex_q(&qpart);
        let uv = latex_uv(b, c);
        let term = if uv.is_empty() {
            if many && qpart.len() > 1 {
                format!("({qs})")
            } else {
                qs
            }
        } else if qs == "1" {
            uv
        } else if qs == "-1" {
            format!("-{uv}")
        } else if qpart.len() == 1 {
            format!("{qs}{uv}")
        } else {
            format!("({qs}){uv}")
        };
        out.push(term);
    }
    out.join("+").replace("+-", "-")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlinkyResult {
    Zero,
    Signed { sign: i8, shape: Partition },
}

fn is_french_partition(rows: &[Vec<bool>]) -> bool {
    let mut prev = usize::MAX;
    for row in rows {
        let len = row.iter().take_while(|&&b| b).count();
        if row[len..].iter().any(|&b| b) || len > prev {
            return false;
        }
        prev = len;
    }
    true
}

/// Slinky rule: draw `α` in French notation with `α_1` as the top row, pin
/// every row's left endpoint, and let each row fall as a ribbon.
pub fn slinky(alpha: &Composition) -> Result<SlinkyResult> {
    let parts = alpha.parts();
    if parts.is_empty() {
        return Err(Error::InvalidArgument("slinky needs a nonempty composition".into()));
    }
    let width = alpha.size() as usize + 1;
    let height = parts.len();
    let mut grid = vec![vec![false; width]; height];
    let mut sign = 1i8;
    for (r, &len) in parts.iter().rev().enumerate() {
        let (mut c, mut y) = (0usize, r);
        grid[y][c] = true;
        for _ in 1..len {
            if y > 0 && !grid[y - 1][c] {
                y -= 1;
            } else {
                c += 1;
            }
            grid[y][c] = true;
        }
        if (r - y) % 2 == 1 {
            sign = -sign;
        }
        if !is_french_partition(&grid[..=r]) {
            return Ok(SlinkyResult::Zero);
        }
    }
    let shape: Vec<u32> = grid
        .iter()
        .map(|row| row.iter().filter(|&&b| b).count() as u32)
        .filter(|&l| l > 0)
        .collect();
    Ok(SlinkyResult::Signed {
        sign,
        shape: Partition::new(shape)?,
    })
}

/// Jacobi–Trudi straightening of `s_β` (`β_1` = top row in English notation):
/// sort `β_i - i` decreasingly, sign of the sort, zero on a repeat.
pub fn straighten_jacobi_trudi(beta: &[u32]) -> SlinkyResult {
    let mut l: Vec<i64> = beta.iter().enumerate().map(|(i, &b)| b as i64 - (i as i64 + 1)).collect();
    let mut sign = 1i8;
    for i in 0..l.len() {
        for j in 0..l.len() - 1 - i {
            if l[j] == l[j + 1] {
                return SlinkyResult::Zero;
            }
            if l[j] < l[j + 1] {
                l.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if l.windows(2).any(|w| w[0] == w[1]) {
        return SlinkyResult::Zero;
    }
    let shape: Vec<u32> = l
        .iter()
        .enumerate()
        .map(|(i, &x)| (x + i as i64 + 1) as u32)
        .filter(|&p| p > 0)
        .collect();
    SlinkyResult::Signed {
        sign,
        shape: Partition::new(shape).expect("sorted Jacobi-Trudi indices give a partition"),
    }
}

/// Replaces each `Q_{S,n}` by `s_{Comp(S)}` and straightens with [`slinky`].
pub fn schur_expansion(f: &QSymExpansion) -> Result<SchurExpansion> {
    let mut out = SchurExpansion::default();
    for (s, c) in f.iter() {
        if let SlinkyResult::Signed { sign, shape } = slinky(&s.to_composition())? {
            let term = if sign > 0 { c.clone() } else { -c.clone() };
            out.add(shape, &term);
        }
    }
    Ok(out)
}

/// Per-element data needed by every pairing below.
#[derive(Clone, Copy, Debug)]
struct ElementStats {
    deg_x: u32,
    k: u32,
    l: u32,
    asc: IndexSubset,
    /// Number of leading positions with `α = β = γ = 0`.
    bare_prefix: usize,
}

fn stats_of(b: &BasisElement) -> ElementStats {
    let bare_prefix = (0..b.n())
        .take_while(|&i| b.alpha()[i] == 0 && b.theta()[i] == 0 && b.xi()[i] == 0)
        .count();
    ElementStats {
        deg_x: b.deg_x(),
        k: b.deg_theta(),
        l: b.deg_xi(),
        asc: b.ascent_set(),
        bare_prefix,
    }
}

/// Frobenius data of the (1,2) basis for one `n`, computed once and queried
/// for many `(k, ℓ, μ, d)`.
#[derive(Clone, Debug)]
pub struct FrobeniusData {
    n: u32,
    stats: Vec<ElementStats>,
}

impl FrobeniusData {
    pub fn new(n: u32) -> Result<Self> {
        let mut stats = Vec::new();
        for_each_basis_element(n as usize, BasisVariant::A12, |b| stats.push(stats_of(b)))?;
        Ok(Self { n, stats })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    fn sum_where(&self, k: u32, l: u32, keep: impl Fn(&ElementStats) -> bool) -> QuvPolynomial {
        let mut acc = QuvPolynomial::zero();
        for s in self.stats.iter().filter(|s| s.k == k && s.l == l && keep(s)) {
            acc += QuvPolynomial::q_pow(s.deg_x);
        }
        acc
    }

    pub fn qsym(&self) -> QSymExpansion {
        let mut f = QSymExpansion::new(self.n);
        for s in &self.stats {
            f.add(s.asc, &QuvPolynomial::monomial(s.deg_x, s.k, s.l, 1)).expect("same ambient");
        }
        f
    }

    pub fn qsym_refined(&self, k: u32, l: u32) -> QSymExpansion {
        let mut f = QSymExpansion::new(self.n);
        for s in self.stats.iter().filter(|s| s.k == k && s.l == l) {
            f.add(s.asc, &QuvPolynomial::q_pow(s.deg_x)).expect("same ambient");
        }
        f
    }

    /// `Σ q^{deg_x(b)}` over `b` with `deg_θ = k`, `deg_ξ = ℓ`, `Asc(b) ⊆ Set(μ)`.
    pub fn h_mu_coefficient(&self, k: u32, l: u32, mu: &Partition) -> Result<QuvPolynomial> {
        if mu.size() != self.n {
            return Err(Error::InvalidArgument(format!("{mu} is not a partition of {}", self.n)));
        }
        let set = set_of_comp(&mu.to_composition());
        Ok(self.sum_where(k, l, |s| s.asc.is_subset_of(&set)))
    }

    /// Sum over elements whose first `d+1` positions carry no variables.
    pub fn hook_h_coefficient(&self, k: u32, l: u32, d: u32) -> Result<QuvPolynomial> {
        check_hook(self.n, d)?;
        Ok(self.sum_where(k, l, |s| s.bare_prefix > d as usize))
    }

    /// Sum over elements with `Asc(b) = {d+1, …, n-1}`.
    pub fn hook_schur_coefficient(&self, k: u32, l: u32, d: u32) -> Result<QuvPolynomial> {
        check_hook(self.n, d)?;
        let target = IndexSubset::interval_to_end(self.n, d + 1);
        Ok(self.sum_where(k, l, |s| s.asc == target))
    }
}

fn check_hook(n: u32, d: u32) -> Result<()> {
    if d >= n {
        return Err(Error::InvalidArgument(format!("hook parameter d={d} must be below n={n}")));
    }
    Ok(())
}

/// `Σ_b u^{deg_θ} v^{deg_ξ} q^{deg_x} Q_{Asc(b),n}` over the (1,2) basis.
pub fn frobenius_qsym(n: u32) -> Result<QSymExpansion> {
    frobenius_qsym_variant(n, BasisVariant::A12)
}

/// The same sum over any type A basis variant (A11 and A02 give the
/// specializations at `v = 0` and `q = 0`).
pub fn frobenius_qsym_variant(n: u32, variant: BasisVariant) -> Result<QSymExpansion> {
    if !variant.is_type_a() {
        return Err(Error::InvalidArgument("quasisymmetric expansions use type A bases".into()));
    }
    let mut f = QSymExpansion::new(n);
    for_each_basis_element(n as usize, variant, |b| {
        f.add(b.ascent_set(), &b.weight()).expect("same ambient");
    })?;
    Ok(f)
}

pub fn frobenius_qsym_refined(n: u32, k: u32, l: u32) -> Result<QSymExpansion> {
    Ok(FrobeniusData::new(n)?.qsym_refined(k, l))
}

/// `Σ_σ u^{asc} v^{des} q^{sminv(σ)} Q_{Split(σ),n}` over segmented permutations.
pub fn frobenius_qsym_via_smirnov(n: u32) -> Result<QSymExpansion> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let mut f = QSymExpansion::new(n);
    let mut err = None;
    for_each_segmented_word(&vec![1; n as usize], |w| match split_set(w) {
        Ok(s) => {
            let c = QuvPolynomial::monomial(sminv(w), w.ascents() as u32, w.descents() as u32, 1);
            f.add(s, &c).expect("same ambient");
        }
        Err(e) => err = Some(e),
    });
    match err {
        Some(e) => Err(e),
        None => Ok(f),
    }
}

pub fn h_mu_coefficient(n: u32, k: u32, l: u32, mu: &Partition) -> Result<QuvPolynomial> {
    FrobeniusData::new(n)?.h_mu_coefficient(k, l, mu)
}

pub fn hook_h_coefficient(n: u32, k: u32, l: u32, d: u32) -> Result<QuvPolynomial> {
    FrobeniusData::new(n)?.hook_h_coefficient(k, l, d)
}

pub fn hook_schur_coefficient(n: u32, k: u32, l: u32, d: u32) -> Result<QuvPolynomial> {
    FrobeniusData::new(n)?.hook_schur_coefficient(k, l, d)
}

/// `q^{C(n-d-k-ℓ,2)} [n-1-d, ℓ]_q [n-1-k, d]_q [n-1-ℓ, k]_q`.
pub fn hook_qbinomial_formula(n: u32, k: u32, l: u32, d: u32) -> Result<QuvPolynomial> {
    check_hook(n, d)?;
    let (n, k, l, d) = (n as i64, k as i64, l as i64, d as i64);
    if k + l >= n {
        return Err(Error::InvalidArgument("need k + l < n".into()));
    }
    Ok(QuvPolynomial::q_pow(choose2(n - d - k - l)) * q_binomial(n - 1 - d, l) * q_binomial(n - 1 - k, d) * q_binomial(n - 1 - l, k))
}

/// `q^{C(n-k-ℓ,2)} [n-1, k+ℓ]_q [k+ℓ, k]_q`.
pub fn sign_character_formula(n: u32, k: u32, l: u32) -> QuvPolynomial {
    let (n, k, l) = (n as i64, k as i64, l as i64);
    QuvPolynomial::q_pow(choose2(n - k - l)) * q_binomial(n - 1, k + l) * q_binomial(k + l, k)
}

/// Whether some pivot `a ∈ {d+1, …, n}` satisfies: (a) positions `1..=d+1`
/// are bare; (b) `β_m = 0`, `α_{m-1} < α_m + γ_m` for `m ∈ [d+2, a]`;
/// (c) `β_a = 0`, `β_{a+1} = 1`; (d) `β_m = 1`, `α_{m-1} ≥ α_m + γ_m` for `m ∈ [a+2, n]`.
pub fn hook_asc_characterization(b: &BasisElement, d: u32) -> Result<bool> {
    let n = b.n();
    check_hook(n as u32, d)?;
    let d = d as usize;
    let (al, be, ga) = (b.alpha(), b.theta(), b.xi());
    // 1-indexed accessors
    let a_ = |m: usize| al[m - 1];
    let b_ = |m: usize| be[m - 1];
    let g_ = |m: usize| ga[m - 1] as u32;
    if !(1..=d + 1).all(|m| a_(m) == 0 && b_(m) == 0 && g_(m) == 0) {
        return Ok(false);
    }
    for a in d + 1..=n {
        let cond_b = (d + 2..=a).all(|m| b_(m) == 0 && a_(m - 1) < a_(m) + g_(m));
        let cond_c = a == n || (b_(a) == 0 && b_(a + 1) == 1);
        let cond_d = (a + 2..=n).all(|m| b_(m) == 1 && a_(m - 1) >= a_(m) + g_(m));
        if cond_b && cond_c && cond_d {
            return Ok(true);
        }
    }
    Ok(false)
}

fn for_each_weakly_increasing(n: usize, letters: u32, strict: &IndexSubset, mut visit: impl FnMut(&[u32])) {
    fn go(pos: usize, seq: &mut Vec<u32>, n: usize, letters: u32, strict: &IndexSubset, visit: &mut dyn FnMut(&[u32])) {
        if pos == n {
            visit(seq);
            return;
        }
        let lo = match seq.last() {
            None => 1,
            Some(&prev) if strict.contains(pos as u32) => prev + 1,
            Some(&prev) => prev,
        };
        for a in lo..=letters {
            seq.push(a);
            go(pos + 1, seq, n, letters, strict, visit);
            seq.pop();
        }
    }
    go(0, &mut Vec::with_capacity(n), n, letters, strict, &mut visit);
}

/// Expands every `Q_{S,n}` into monomials `z_{a_1}⋯z_{a_n}` over an alphabet of
/// `letters` variables; keys are exponent vectors of length `letters`.
pub fn monomial_expansion(f: &QSymExpansion, letters: u32) -> BTreeMap<Vec<u32>, QuvPolynomial> {
    let n = f.n() as usize;
    let mut out: BTreeMap<Vec<u32>, QuvPolynomial> = BTreeMap::new();
    for (s, c) in f.iter() {
        for_each_weakly_increasing(n, letters, s, |seq| {
            let mut exp = vec![0u32; letters as usize];
            for &a in seq {
                exp[a as usize - 1] += 1;
            }
            *out.entry(exp).or_default() += c;
        });
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Coefficient of `z^μ` in the brute-force monomial expansion over `n` letters.
pub fn monomial_coefficient_bruteforce(f: &QSymExpansion, mu: &Partition) -> QuvPolynomial {
    let letters = f.n();
    let mut target = mu.parts().to_vec();
    target.resize(letters as usize, 0);
    monomial_expansion(f, letters).remove(&target).unwrap_or_default()
}

/// Adjacent-variable swap that changes the monomial expansion, if any.
pub fn symmetry_witness(f: &QSymExpansion, letters: u32) -> Option<(Vec<u32>, usize)> {
    let m = monomial_expansion(f, letters);
    for (exp, c) in &m {
        for i in 0..exp.len().saturating_sub(1) {
            let mut sw = exp.clone();
            sw.swap(i, i + 1);
            if m.get(&sw) != Some(c) {
                return Some((exp.clone(), i + 1));
            }
        }
    }
    None
}

/// Hook shapes `(d+1, 1^{n-d-1})` in the order `d = 0, 1, …`.
pub fn hook_partitions(n: u32) -> Vec<Partition> {
    (0..n).map(|d| Partition::hook(n, d).expect("d < n")).collect()
}

/// Subsets whose compositions straighten to a hook.
pub fn hook_preimages(n: u32) -> BTreeSet<IndexSubset> {
    crate::combinat::enumerate_subsets(n)
        .into_iter()
        .filter(|s| match slinky(&s.to_composition()) {
            Ok(SlinkyResult::Signed { shape, .. }) => hook_partitions(n).contains(&shape),
            _ => false,
        })
        .collect()
}
