//! Acceptance criteria 1 to 11, one PASS/FAIL line each.
//!
//! Set `COINV_ACCEPTANCE_LONG=1` to add the type A n = 4 oracle run.

use std::collections::HashSet;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};

use coinvariant::basis::{count_basis, for_each_basis_element, hilbert_series, BasisVariant, WeylType};
use coinvariant::combinat::{enumerate_partitions, Partition};
use coinvariant::oracle::{hilbert_via_oracle, OracleConfig};
use coinvariant::qpoly::{chu_vandermonde_sides, q_binomial, q_integer, QuvPolynomial};
use coinvariant::smirnov::{enumerate_segmented_permutations, psi, psi_inverse, sminv, split_set, sw_q_enumerated, sw_q_recursion};
use coinvariant::symfun::{
    frobenius_qsym, hook_qbinomial_formula, monomial_coefficient_bruteforce, schur_expansion, sign_character_formula, FrobeniusData,
};

fn p(s: &str) -> QuvPolynomial {
    s.parse().unwrap_or_else(|e| panic!("{s:?}: {e}"))
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

const HILBERT: [&str; 4] = [
    "1",
    "q+u+v+1",
    "(q^3 + 2q^2 + 2q + 1) + (q^2 + 3q + 2)u + (q^2 + 3q + 2)v + u^2 + (q + 3)uv + v^2",
    "(q^6 + 3q^5 + 5q^4 + 6q^3 + 5q^2 + 3q + 1) + (q^5 + 4q^4 + 9q^3 + 11q^2 + 8q + 3)u \
     + (q^5 + 4q^4 + 9q^3 + 11q^2 + 8q + 3)v + (q^3 + 4q^2 + 6q + 3)u^2 \
     + (q^4 + 5q^3 + 13q^2 + 17q + 8)uv + (q^3 + 4q^2 + 6q + 3)v^2 \
     + (q^2 + 4q + 6)u^2v + (q^2 + 4q + 6)uv^2 + u^3 + v^3",
];

fn frobenius_table(n: u32) -> Vec<(&'static str, &'static str)> {
    match n {
        1 => vec![("1", "1")],
        2 => vec![("1,1", "q+u+v"), ("2", "1")],
        3 => vec![
            ("1,1,1", "q^3+(q^2 +q)u+(q^2+q)v+u^2+(q+1)uv+v^2"),
            ("2,1", "(q^2+q)+(q+1)u+(q+1)v+uv"),
            ("3", "1"),
        ],
        4 => vec![
            (
                "1,1,1,1",
                "q^6+(q^5+q^4+q^3)u+(q^5+q^4+q^3)v+(q^3+q^2+q)u^2+(q^4+2q^3+2q^2+q)uv\
                 +(q^3+q^2+q)v^2+(q^2+q+1)u^2v+(q^2+q+1)uv^2+u^3+v^3",
            ),
            (
                "2,1,1",
                "(q^5+q^4+q^3)+(q^4+2q^3+2q^2+q)u+(q^4+2q^3+2q^2+q)v+(q^2+q+1)u^2\
                 +(q^3+3q^2+3q+1)uv+(q^2+q+1)v^2+(q+1)u^2v+(q+1)uv^2",
            ),
            ("2,2", "(q^4+q^2)+(q^3+q^2+q)u+(q^3+q^2+q)v+(q^2+2q+1)uv+qu^2+qv^2+u^2v+uv^2"),
            ("3,1", "(q^3+q^2+q)+(q^2+q+1)u+(q+1)uv+(q^2+q+1)v"),
            ("4", "1"),
        ],
        _ => unreachable!(),
    }
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = coinvariant::cli::run(std::iter::once("coinv").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn criterion_1() {
    for n in 1..=8u64 {
        assert_eq!(
            count_basis(n as usize, BasisVariant::A12).unwrap(),
            (1 << (n - 1)) * factorial(n),
            "type A n={n}"
        );
    }
    for n in 1..=6u64 {
        assert_eq!(
            count_basis(n as usize, BasisVariant::B12).unwrap(),
            (1 << (2 * n)) * factorial(n),
            "type B n={n}"
        );
    }
    // the streamed element count agrees with the volume count
    for n in 1..=6 {
        let mut seen = 0u64;
        for_each_basis_element(n, BasisVariant::A12, |_| seen += 1).unwrap();
        assert_eq!(seen, count_basis(n, BasisVariant::A12).unwrap());
    }
}

fn criterion_2() {
    for (i, s) in HILBERT.iter().enumerate() {
        assert_eq!(hilbert_series(i + 1, BasisVariant::A12).unwrap(), p(s), "n={}", i + 1);
    }
    let (code, out) = run_cli(&["hilbert", "--n", "2", "--variant", "a12", "--format", "text"]);
    assert_eq!((code, out.as_str()), (0, "q + u + v + 1\n"));
}

fn criterion_3() {
    for n in 1..=4u32 {
        let schur = schur_expansion(&frobenius_qsym(n).unwrap()).unwrap();
        let table = frobenius_table(n);
        assert_eq!(schur.iter().count(), table.len(), "n={n}: partitions with nonzero coefficient");
        for (lambda, coeff) in table {
            let lambda: Partition = lambda.parse().unwrap();
            assert_eq!(schur.coefficient(&lambda), p(coeff), "n={n} λ={lambda}");
        }
    }
}

fn criterion_4() {
    for n in 1..=7usize {
        let mut images = HashSet::new();
        for_each_basis_element(n, BasisVariant::A12, |b| {
            let sigma = psi(b).unwrap();
            assert_eq!(&psi_inverse(&sigma).unwrap(), b, "round trip at {}", b.monomial_string());
            assert_eq!(sigma.ascents() as u32, b.deg_theta(), "{sigma}");
            assert_eq!(sigma.descents() as u32, b.deg_xi(), "{sigma}");
            assert_eq!(sminv(&sigma), b.deg_x(), "{sigma}");
            assert_eq!(split_set(&sigma).unwrap(), b.ascent_set(), "{sigma}");
            images.insert(sigma);
        })
        .unwrap();
        assert_eq!(
            images.len() as u64,
            (1 << (n - 1)) * factorial(n as u64),
            "ψ is injective onto a set of the right size"
        );
        if n <= 5 {
            for sigma in enumerate_segmented_permutations(n) {
                assert_eq!(psi(&psi_inverse(&sigma).unwrap()).unwrap(), sigma);
            }
        }
    }
}

fn criterion_5() {
    let fixtures = [
        include_str!("fixtures/bijection_n1.csv"),
        include_str!("fixtures/bijection_n2.csv"),
        include_str!("fixtures/bijection_n3.csv"),
    ];
    for (i, expected) in fixtures.iter().enumerate() {
        let n = (i + 1).to_string();
        let (code, out) = run_cli(&["bijection", "--n", &n, "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, *expected, "n={n}");
    }
}

fn criterion_6() {
    for n in 1..=7u32 {
        let ones = vec![1; n as usize];
        let mut total = QuvPolynomial::zero();
        for k in 0..n {
            for l in 0..n - k {
                let rec = sw_q_recursion(n, k as i64, l as i64);
                assert_eq!(rec, sw_q_enumerated(&ones, k as usize, l as usize), "n={n} k={k} l={l}");
                total += &(&rec * &QuvPolynomial::uv_pow(k, l));
            }
        }
        assert_eq!(total, hilbert_series(n as usize, BasisVariant::A12).unwrap(), "n={n}");
    }
}

fn criterion_7() {
    for n in 1..=7u32 {
        let data = FrobeniusData::new(n).unwrap();
        for k in 0..n {
            for l in 0..n - k {
                for d in 0..n {
                    assert_eq!(
                        data.hook_schur_coefficient(k, l, d).unwrap(),
                        hook_qbinomial_formula(n, k, l, d).unwrap(),
                        "n={n} k={k} l={l} d={d}"
                    );
                }
                let sign = sign_character_formula(n, k, l);
                assert_eq!(data.hook_schur_coefficient(k, l, 0).unwrap(), sign);
                assert_eq!(hook_qbinomial_formula(n, k, l, 0).unwrap(), sign);
            }
        }
    }
}

fn criterion_8() {
    for n in 1..=5u32 {
        let data = FrobeniusData::new(n).unwrap();
        for k in 0..n {
            for l in 0..n - k {
                let f = data.qsym_refined(k, l);
                for mu in enumerate_partitions(n) {
                    assert_eq!(
                        data.h_mu_coefficient(k, l, &mu).unwrap(),
                        monomial_coefficient_bruteforce(&f, &mu),
                        "n={n} k={k} l={l} μ={mu}"
                    );
                }
            }
        }
    }
}

fn criterion_9() {
    for n in 1..=10i64 {
        for d in 0..n {
            for k in 0..n - d {
                for l in 0..n - d {
                    let (lhs, rhs) = chu_vandermonde_sides(n, d, k, l);
                    assert_eq!(lhs, rhs, "n={n} d={d} k={k} l={l}");
                }
            }
        }
    }
    // one side recomputed from the q-Pascal rule
    fn pascal(m: i64, r: i64) -> QuvPolynomial {
        if r < 0 || r > m {
            return QuvPolynomial::zero();
        }
        if r == 0 || r == m {
            return QuvPolynomial::one();
        }
        pascal(m - 1, r - 1) + QuvPolynomial::q_pow(r as u32) * pascal(m - 1, r)
    }
    for m in 0..=10 {
        for r in 0..=m {
            assert_eq!(q_binomial(m, r), pascal(m, r));
        }
    }
}

fn oracle_matches(n: usize, kind: WeylType, variant: BasisVariant) {
    let max_q = match kind {
        WeylType::A => n * (n - 1) / 2,
        WeylType::B => n * n,
    } as u32;
    let report = hilbert_via_oracle(n, kind, &OracleConfig::new(max_q + 2)).unwrap();
    assert!(report.complete, "{kind:?} n={n}: top x-degrees not empty");
    assert_eq!(report.series, hilbert_series(n, variant).unwrap(), "{kind:?} n={n}");
    if kind == WeylType::A {
        assert_eq!(report.series, p(HILBERT[n - 1]));
    }
}

fn criterion_10() {
    for n in 1..=3 {
        oracle_matches(n, WeylType::A, BasisVariant::A12);
    }
    for n in 1..=2 {
        oracle_matches(n, WeylType::B, BasisVariant::B12);
    }
}

/// `Σ_k u^{n-k} F(k) S(n,k)` with `S(m,k) = w(k) S(m-1,k) + S(m-1,k-1)`.
fn eleven_closed_form(n: u32, kind: WeylType) -> QuvPolynomial {
    let weight = |k: u32| match kind {
        WeylType::A => q_integer(k),
        WeylType::B => q_integer(2 * k + 1),
    };
    let fact = |k: u32| -> QuvPolynomial {
        (1..=k)
            .map(|i| match kind {
                WeylType::A => q_integer(i),
                WeylType::B => q_integer(2 * i),
            })
            .fold(QuvPolynomial::one(), |a, b| a * b)
    };
    let mut row = vec![QuvPolynomial::one()];
    for m in 1..=n as usize {
        let mut next = vec![QuvPolynomial::zero(); m + 1];
        for (k, slot) in next.iter_mut().enumerate() {
            if k < row.len() {
                *slot += &(weight(k as u32) * row[k].clone());
            }
            if k >= 1 {
                *slot += &row[k - 1];
            }
        }
        row = next;
    }
    let mut total = QuvPolynomial::zero();
    for (k, s) in row.into_iter().enumerate() {
        total += &(QuvPolynomial::uv_pow(n - k as u32, 0) * fact(k as u32) * s);
    }
    total
}

fn criterion_11() {
    for n in 1..=7u32 {
        let h = hilbert_series(n as usize, BasisVariant::A12).unwrap();
        assert_eq!(h.at_v_zero(), eleven_closed_form(n, WeylType::A), "type A n={n}");
        assert_eq!(h.eval_at_one(), ((1u64 << (n - 1)) * factorial(n as u64)).into());
    }
    for n in 1..=5u32 {
        let h = hilbert_series(n as usize, BasisVariant::B12).unwrap();
        assert_eq!(h.at_v_zero(), eleven_closed_form(n, WeylType::B), "type B n={n}");
        assert_eq!(h.eval_at_one(), ((1u64 << (2 * n)) * factorial(n as u64)).into());
    }
}

#[test]
fn acceptance_criteria() {
    let criteria: Vec<(&str, fn())> = vec![
        ("cardinality of the type A and type B bases", criterion_1),
        ("Hilbert series for n = 1..4", criterion_2),
        ("Schur expansions for n = 1..4", criterion_3),
        ("bijection statistics for n <= 7", criterion_4),
        ("bijection tables for n = 1..3", criterion_5),
        ("segmented-permutation recursion for n <= 7", criterion_6),
        ("hook coefficients against the q-binomial formula for n <= 7", criterion_7),
        ("h_mu coefficients against brute force for n <= 5", criterion_8),
        ("q-Chu-Vandermonde for n <= 10", criterion_9),
        ("quotient-ring oracle, type A n <= 3 and type B n <= 2", criterion_10),
        ("(1,1) specializations and total dimensions", criterion_11),
    ];
    let results: Vec<Result<(), String>> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, f)| {
                scope.spawn(move || {
                    catch_unwind(AssertUnwindSafe(f)).map_err(|e| {
                        e.downcast_ref::<String>()
                            .cloned()
                            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                            .unwrap_or_default()
                    })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut stdout = std::io::stdout();
    let mut failures = Vec::new();
    for (i, ((name, _), result)) in criteria.iter().zip(&results).enumerate() {
        let status = if result.is_ok() { "PASS" } else { "FAIL" };
        writeln!(stdout, "acceptance criterion {:>2}: {status}  {name}", i + 1).unwrap();
        if let Err(msg) = result {
            writeln!(stdout, "    {}", msg.lines().next().unwrap_or("")).unwrap();
            failures.push(i + 1);
        }
    }
    if std::env::var_os("COINV_ACCEPTANCE_LONG").is_some() {
        let long = catch_unwind(|| oracle_matches(4, WeylType::A, BasisVariant::A12));
        let status = if long.is_ok() { "PASS" } else { "FAIL" };
        writeln!(
            stdout,
            "acceptance criterion 10 (long): {status}  quotient-ring oracle, type A n = 4"
        )
        .unwrap();
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
