//! Exhaustive property checks across every module, stopping at the first
//! counterexample.

use std::collections::HashSet;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::basis::{count_basis, for_each_basis_element, hilbert_11_formula, hilbert_series, BasisVariant, WeylType};
use crate::combinat::enumerate_partitions;
use crate::error::Result;
use crate::oracle::{hilbert_via_oracle, OracleConfig};
use crate::qpoly::{chu_vandermonde_sides, QuvPolynomial};
use crate::smirnov::{psi, psi_inverse, sminv, split_set, sw_hilbert, sw_q_enumerated, sw_q_recursion};
use crate::symfun::{
    frobenius_qsym, frobenius_qsym_via_smirnov, hook_asc_characterization, hook_qbinomial_formula, monomial_coefficient_bruteforce,
    schur_expansion, sign_character_formula, symmetry_witness, FrobeniusData,
};

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// The offending object when `passed` is false.
    pub witness: Option<Value>,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_n: u32,
    /// Largest n for the quotient-ring oracle (type A; type B uses one less).
    pub oracle_n: u32,
}

impl VerifyOptions {
    pub fn new(max_n: u32) -> Self {
        Self {
            max_n,
            oracle_n: max_n.min(3),
        }
    }
}

type Check = std::result::Result<(), Value>;
type NamedCheck = (&'static str, Box<dyn Fn() -> Result<Check>>);

fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

fn poly(p: &QuvPolynomial) -> Value {
    Value::String(p.to_string())
}

/// Number of standard Young tableaux, by the hook length formula.
pub fn standard_tableaux(shape: &[u32]) -> u64 {
    let n: u32 = shape.iter().sum();
    let mut hooks = 1u64;
    for (i, &row) in shape.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = shape[i + 1..].iter().filter(|&&r| r > j).count() as u32;
            hooks *= (arm + leg + 1) as u64;
        }
    }
    factorial(n) / hooks
}

fn check_cardinality(max_n: u32) -> Result<Check> {
    for n in 1..=max_n {
        let a = count_basis(n as usize, BasisVariant::A12)?;
        let want = (1u64 << (n - 1)) * factorial(n);
        if a != want {
            return Ok(Err(json!({"n": n, "variant": "a12", "count": a, "expected": want})));
        }
        if n <= 6 {
            let b = count_basis(n as usize, BasisVariant::B12)?;
            let want = (1u64 << (2 * n)) * factorial(n);
            if b != want {
                return Ok(Err(json!({"n": n, "variant": "b12", "count": b, "expected": want})));
            }
        }
    }
    Ok(Ok(()))
}

fn check_hilbert(max_n: u32) -> Result<Check> {
    for n in 1..=max_n {
        let h = hilbert_series(n as usize, BasisVariant::A12)?;
        let sw = sw_hilbert(n);
        if h != sw {
            return Ok(Err(json!({"n": n, "basis": poly(&h), "smirnov": poly(&sw)})));
        }
        let formula = hilbert_11_formula(n, WeylType::A);
        if h.at_v_zero() != formula {
            return Ok(Err(json!({"n": n, "at_v_zero": poly(&h.at_v_zero()), "formula": poly(&formula)})));
        }
        if h.eval_at_one() != BigInt::from((1u64 << (n - 1)) * factorial(n)) {
            return Ok(Err(json!({"n": n, "series": poly(&h)})));
        }
        if n <= 5 {
            let hb = hilbert_series(n as usize, BasisVariant::B12)?;
            let formula = hilbert_11_formula(n, WeylType::B);
            if hb.at_v_zero() != formula {
                return Ok(Err(
                    json!({"n": n, "type": "B", "at_v_zero": poly(&hb.at_v_zero()), "formula": poly(&formula)}),
                ));
            }
        }
    }
    Ok(Ok(()))
}

fn check_bijection(max_n: u32) -> Result<Check> {
    for n in 1..=max_n {
        let mut seen = HashSet::new();
        let mut failure: Option<Value> = None;
        for_each_basis_element(n as usize, BasisVariant::A12, |b| {
            if failure.is_some() {
                return;
            }
            let fail = |why: &str, sigma: Option<String>| json!({"n": n, "element": b.monomial_string(), "sigma": sigma, "reason": why});
            let sigma = match psi(b) {
                Ok(s) => s,
                Err(e) => {
                    failure = Some(fail(&e.to_string(), None));
                    return;
                }
            };
            let shown = Some(sigma.to_string());
            if psi_inverse(&sigma).ok().as_ref() != Some(b) {
                failure = Some(fail("round trip", shown));
            } else if sigma.ascents() as u32 != b.deg_theta() || sigma.descents() as u32 != b.deg_xi() {
                failure = Some(fail("ascent/descent counts", shown));
            } else if sminv(&sigma) != b.deg_x() {
                failure = Some(fail("sminv", shown));
            } else if split_set(&sigma).ok() != Some(b.ascent_set()) {
                failure = Some(fail("split set", shown));
            } else if !seen.insert(sigma) {
                failure = Some(fail("not injective", shown));
            }
        })?;
        if let Some(w) = failure {
            return Ok(Err(w));
        }
    }
    Ok(Ok(()))
}

fn check_recursion(max_n: u32) -> Result<Check> {
    for n in 1..=max_n {
        let ones = vec![1u32; n as usize];
        for k in 0..n {
            for l in 0..n - k {
                let rec = sw_q_recursion(n, k as i64, l as i64);
                let direct = sw_q_enumerated(&ones, k as usize, l as usize);
                if rec != direct {
                    return Ok(Err(
                        json!({"n": n, "k": k, "l": l, "recursion": poly(&rec), "enumeration": poly(&direct)}),
                    ));
                }
            }
        }
    }
    Ok(Ok(()))
}

fn check_frobenius(max_n: u32) -> Result<Check> {
    for n in 1..=max_n {
        let f = frobenius_qsym(n)?;
        let g = frobenius_qsym_via_smirnov(n)?;
        if f != g {
            return Ok(Err(json!({"n": n, "reason": "basis and segmented-permutation expansions differ"})));
        }
        if n <= 5 {
            if let Some((exp, i)) = symmetry_witness(&f, n) {
                return Ok(Err(json!({"n": n, "reason": "not symmetric", "exponent": exp, "swap": i})));
            }
        }
        let schur = schur_expansion(&f)?;
        let mut dim = QuvPolynomial::zero();
        for (lambda, c) in schur.iter() {
            dim += &(c * &QuvPolynomial::constant(standard_tableaux(lambda.parts())));
        }
        let h = hilbert_series(n as usize, BasisVariant::A12)?;
        if dim != h {
            return Ok(Err(
                json!({"n": n, "reason": "Σ f^λ c_λ differs from the Hilbert series", "sum": poly(&dim)}),
            ));
        }
    }
    Ok(Ok(()))
}

fn check_h_mu(max_n: u32) -> Result<Check> {
    for n in 1..=max_n.min(5) {
        let data = FrobeniusData::new(n)?;
        for k in 0..n {
            for l in 0..n - k {
                let f = data.qsym_refined(k, l);
                for mu in enumerate_partitions(n) {
                    let thm = data.h_mu_coefficient(k, l, &mu)?;
                    let brute = monomial_coefficient_bruteforce(&f, &mu);
                    if thm != brute {
                        return Ok(Err(
                            json!({"n": n, "k": k, "l": l, "mu": mu.to_string(), "sum_over_basis": poly(&thm), "brute_force": poly(&brute)}),
                        ));
                    }
                }
            }
        }
    }
    Ok(Ok(()))
}

fn check_hooks(max_n: u32) -> Result<Check> {
    for n in 1..=max_n {
        let data = FrobeniusData::new(n)?;
        for k in 0..n {
            for l in 0..n - k {
                for d in 0..n {
                    let lhs = data.hook_schur_coefficient(k, l, d)?;
                    let rhs = hook_qbinomial_formula(n, k, l, d)?;
                    if lhs != rhs {
                        return Ok(Err(
                            json!({"n": n, "k": k, "l": l, "d": d, "basis": poly(&lhs), "formula": poly(&rhs)}),
                        ));
                    }
                }
                let sign = sign_character_formula(n, k, l);
                if data.hook_schur_coefficient(k, l, 0)? != sign {
                    return Ok(Err(json!({"n": n, "k": k, "l": l, "sign_character": poly(&sign)})));
                }
            }
        }
        let mut failure = None;
        for_each_basis_element(n as usize, BasisVariant::A12, |b| {
            if failure.is_some() {
                return;
            }
            for d in 0..n {
                let asc = b.ascent_set() == crate::combinat::IndexSubset::interval_to_end(n, d + 1);
                if hook_asc_characterization(b, d).ok() != Some(asc) {
                    failure = Some(json!({"n": n, "d": d, "element": b.monomial_string()}));
                }
            }
        })?;
        if let Some(w) = failure {
            return Ok(Err(w));
        }
    }
    Ok(Ok(()))
}

fn check_chu_vandermonde(max_n: u32) -> Check {
    for n in 1..=max_n.max(10) as i64 {
        for d in 0..n {
            for k in 0..n - d {
                for l in 0..n - d {
                    let (lhs, rhs) = chu_vandermonde_sides(n, d, k, l);
                    if lhs != rhs {
                        return Err(json!({"n": n, "d": d, "k": k, "l": l, "lhs": poly(&lhs), "rhs": poly(&rhs)}));
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_oracle(oracle_n: u32) -> Result<Check> {
    for (kind, variant, top) in [
        (WeylType::A, BasisVariant::A12, oracle_n),
        (WeylType::B, BasisVariant::B12, oracle_n.saturating_sub(1)),
    ] {
        for n in 1..=top {
            let max_q = match kind {
                WeylType::A => n * (n - 1) / 2,
                WeylType::B => n * n,
            };
            let report = hilbert_via_oracle(n as usize, kind, &OracleConfig::new(max_q + 2))?;
            let want = hilbert_series(n as usize, variant)?;
            if !report.complete || report.series != want {
                return Ok(Err(
                    json!({"n": n, "variant": variant.name(), "oracle": poly(&report.series), "basis": poly(&want), "complete": report.complete}),
                ));
            }
        }
    }
    Ok(Ok(()))
}

/// Runs every check up to `max_n`, stopping after the first failing one.
pub fn run_suite(opts: &VerifyOptions) -> Result<Vec<CheckOutcome>> {
    let n = opts.max_n;
    let oracle_n = opts.oracle_n;
    let mut out = Vec::new();
    let checks: Vec<NamedCheck> = vec![
        ("cardinality", Box::new(move || check_cardinality(n))),
        ("hilbert", Box::new(move || check_hilbert(n))),
        ("bijection", Box::new(move || check_bijection(n))),
        ("recursion", Box::new(move || check_recursion(n))),
        ("frobenius", Box::new(move || check_frobenius(n))),
        ("h_mu", Box::new(move || check_h_mu(n))),
        ("hooks", Box::new(move || check_hooks(n))),
        ("chu_vandermonde", Box::new(move || Ok(check_chu_vandermonde(n)))),
        ("oracle", Box::new(move || check_oracle(oracle_n))),
    ];
    for (name, check) in checks {
        let result = check()?;
        let passed = result.is_ok();
        out.push(CheckOutcome {
            name,
            passed,
            witness: result.err(),
        });
        if !passed {
            break;
        }
    }
    Ok(out)
}
