//! Acceptance suite: one timed, exact check per criterion.
//!
//! Run with `cargo test -p digisheff-cli --test acceptance`. Each criterion
//! prints a PASS/FAIL line with its elapsed time against a fixed budget; a
//! criterion that fails or overruns its budget makes the run exit nonzero.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use digisheff::digits::{dominated_range, dominates, is_carry_free, sum_of_digits, to_digits};
use digisheff::identity::{
    verify_bernoulli_power, verify_digital_binomial, verify_digital_power, verify_multinomial, IdentityForm,
    IdentityReport,
};
use digisheff::sierpinski::{
    build_direct, build_kronecker, dominant_pairs, symbolic_vars, verify_multiplicative, DenseMatrix,
};
use digisheff::umbral::{functional_product, seeded_functionals, verify_roman_rota, LinearFunctional, UmbralForm};
use digisheff::{
    expand_system, Axis, FamilyId, MatrixKind, Monomial, MultiPoly, Rational, SierpinskiMatrix, TruncatedSeries, VarId,
    VerifyOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

fn grid_families() -> Vec<FamilyId> {
    FamilyId::builtins(&[q(0, 1), q(1, 2)])
}

const FORMS: [IdentityForm; 2] = [IdentityForm::Sheffer, IdentityForm::BinomialType];

fn passed(r: &IdentityReport, what: impl FnOnce() -> String) -> Result<(), String> {
    ensure(r.pass, || format!("{} failed, witness {:?}", what(), r.witness))
}

/// `(base, levels)` with `b in {2, 3, 4}`, `N <= 3` and `b^N <= 64`.
fn matrix_grid() -> Vec<(u64, usize)> {
    let mut v = Vec::new();
    for b in 2u64..=4 {
        for n in 0..=3usize {
            if b.pow(n as u32) <= 64 {
                v.push((b, n));
            }
        }
    }
    v
}

fn builders_agree() -> Check {
    let mut count = 0;
    for fam in grid_families() {
        for (b, n) in matrix_grid() {
            let sys = expand_system(&fam, b as usize - 1).map_err(|e| e.to_string())?;
            let vars = symbolic_vars(Axis::X, n);
            for kind in [MatrixKind::S, MatrixKind::P] {
                let d = build_direct(kind, &sys, b, n, &vars).map_err(|e| e.to_string())?;
                let k = build_kronecker(kind, &sys, b, n, &vars).map_err(|e| e.to_string())?;
                ensure(d.matrix().values_eq(k.matrix()), || {
                    format!(
                        "{fam} b={b} N={n} {kind:?}: first difference {:?}",
                        d.matrix().first_difference(k.matrix())
                    )
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} matrix pairs"))
}

fn multiplicative() -> Check {
    let mut count = 0;
    for fam in grid_families() {
        for (b, n) in matrix_grid() {
            let sys = expand_system(&fam, b as usize - 1).map_err(|e| e.to_string())?;
            let r = verify_multiplicative(&sys, b, n, &VerifyOptions::exact()).map_err(|e| e.to_string())?;
            ensure(r.pass() && r.checks.len() == 2, || format!("{fam} b={b} N={n}: {:?}", r.checks))?;
            count += 1;
        }
    }
    Ok(format!("{count} (family, b, N) cases, both identities"))
}

fn digital_binomial() -> Check {
    let mut count = 0;
    for fam in grid_families() {
        for b in [2u64, 3] {
            let sys = expand_system(&fam, b as usize - 1).map_err(|e| e.to_string())?;
            for n in 0..b.pow(3) {
                for form in FORMS {
                    let r = verify_digital_binomial(&sys, b, n, 3, form, &VerifyOptions::exact())
                        .map_err(|e| e.to_string())?;
                    passed(&r, || format!("{fam} b={b} n={n} {}", form.label()))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} instances"))
}

fn power_identities() -> Check {
    let mut count = 0;
    for fam in grid_families() {
        for b in 2u64..=4 {
            let sys = expand_system(&fam, b as usize - 1).map_err(|e| e.to_string())?;
            for n in 0..=3 {
                for form in FORMS {
                    let r =
                        verify_digital_power(&sys, b, n, form, &VerifyOptions::exact()).map_err(|e| e.to_string())?;
                    passed(&r, || format!("digital power {fam} b={b} N={n} {}", form.label()))?;
                    count += 1;
                }
            }
        }
    }
    for b in [2u64, 3] {
        for n in 0..=3 {
            for with_y in [true, false] {
                let r = verify_bernoulli_power(b, n, with_y, &VerifyOptions::exact()).map_err(|e| e.to_string())?;
                passed(&r, || format!("bernoulli power b={b} N={n} y={with_y}"))?;
                let norms: Vec<&str> = r.forms.iter().filter_map(|f| f.params["normalization"].as_str()).collect();
                ensure(norms == ["rescaled", "literal"], || format!("companion forms {norms:?}"))?;
                passed(&r.forms[0], || format!("rescaled bernoulli power b={b} N={n}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances"))
}

fn multinomial() -> Check {
    let mut count = 0;
    for fam in [FamilyId::Monomial, FamilyId::Bernoulli] {
        let sys = expand_system(&fam, 1).map_err(|e| e.to_string())?;
        for n in 0..8 {
            for form in FORMS {
                let r =
                    verify_multinomial(&sys, 2, n, 3, 3, form, &VerifyOptions::exact()).map_err(|e| e.to_string())?;
                passed(&r, || format!("{fam} n={n} {}", form.label()))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances"))
}

fn umbral() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..20 {
        let a = q(rng.gen_range(-50..=50), rng.gen_range(1..=30));
        let b = q(rng.gen_range(-50..=50), rng.gen_range(1..=30));
        let ab = functional_product(&LinearFunctional::eval_at(&a, 8), &LinearFunctional::eval_at(&b, 8))
            .map_err(|e| e.to_string())?;
        ensure(ab == LinearFunctional::eval_at(&(&a + &b), 8), || format!("eval({a}) * eval({b})"))?;
    }
    let mut count = 0;
    for fam in grid_families() {
        let sys = expand_system(&fam, 6).map_err(|e| e.to_string())?;
        for n in 0..=6 {
            for d in [2, 3] {
                let fs = seeded_functionals(1000 + n as u64, d, 6);
                let r = verify_roman_rota(&sys, &fs, UmbralForm::Classical { n }, &VerifyOptions::exact())
                    .map_err(|e| e.to_string())?;
                passed(&r, || format!("classical {fam} n={n} d={d}"))?;
                count += 1;
            }
        }
    }
    let mono = expand_system(&FamilyId::Monomial, 1).map_err(|e| e.to_string())?;
    for n in 0..8 {
        for d in [2, 3] {
            let fs = seeded_functionals(2000 + n, d, 1);
            let form = UmbralForm::Digital { base: 2, n, width: 3 };
            let r = verify_roman_rota(&mono, &fs, form, &VerifyOptions::exact()).map_err(|e| e.to_string())?;
            passed(&r, || format!("digital n={n} d={d}"))?;
            count += 1;
        }
    }
    Ok(format!("20 evaluation products, {count} identity instances"))
}

/// Schoolbook base-`b` addition; true when no position carries.
fn adds_without_carry(mut m: u64, mut k: u64, b: u64) -> bool {
    while m > 0 || k > 0 {
        if m % b + k % b >= b {
            return false;
        }
        m /= b;
        k /= b;
    }
    true
}

fn digit_layer() -> Check {
    let mut pairs = 0u64;
    for b in 2u64..=4 {
        for width in 0..=5usize {
            let top = b.pow(width as u32);
            for n in 0..top {
                let nd = to_digits(n, b, width).map_err(|e| e.to_string())?;
                let range = dominated_range(&nd);
                let expected: u64 = nd.digits().iter().map(|d| d + 1).product();
                ensure(range.len() as u64 == expected, || format!("|range({n})| in base {b}"))?;
                let sn = sum_of_digits(n, b).map_err(|e| e.to_string())?;
                for m in &range {
                    let (mv, kv) = (m.value(), n - m.value());
                    let s = sum_of_digits(mv, b).unwrap() + sum_of_digits(kv, b).unwrap();
                    ensure(s == sn, || format!("digit sums of {mv} + {kv} in base {b}"))?;
                }
                for m in 0..=n {
                    let md = to_digits(m, b, width).unwrap();
                    let dom = dominates(&md, &nd).unwrap();
                    let oracle = adds_without_carry(m, n - m, b);
                    let lib = is_carry_free(m, n - m, b).unwrap();
                    ensure(dom == oracle && lib == oracle, || format!("m={m} n={n} b={b}"))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} (m, n) pairs"))
}

/// `B_0 = 1`, `sum_(k<=n) binom(n+1, k) B_k = 0`.
fn bernoulli_numbers(n_max: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for n in 1..=n_max {
        let s: Rational = (0..n).map(|k| &Rational::binomial(n + 1, k) * &b[k]).sum();
        b.push(-(s * q(1, n as i64 + 1)));
    }
    b
}

fn random_poly(rng: &mut ChaCha8Rng) -> MultiPoly {
    let vars = [VarId::x(0), VarId::x(1), VarId::y(0)];
    (0..rng.gen_range(0..4))
        .map(|_| {
            let m = Monomial::from_pairs(vars.iter().map(|&v| (v, rng.gen_range(0..3))));
            MultiPoly::term(q(rng.gen_range(-9..=9), rng.gen_range(1..=5)), m)
        })
        .sum()
}

fn random_structured(rng: &mut ChaCha8Rng) -> SierpinskiMatrix {
    let entries: BTreeMap<(usize, usize), MultiPoly> =
        dominant_pairs(3, 2).unwrap().into_iter().map(|jk| (jk, random_poly(rng))).collect();
    SierpinskiMatrix::from_entries(3, 2, MatrixKind::S, symbolic_vars(Axis::X, 2), entries).unwrap()
}

fn oracles() -> Check {
    let bern = expand_system(&FamilyId::Bernoulli, 12).map_err(|e| e.to_string())?;
    let oracle = bernoulli_numbers(12);
    for (n, bn) in oracle.iter().enumerate() {
        let at0 = bern.s()[n].constant_term();
        ensure(&at0 == bn, || format!("B_{n}: engine {at0}, oracle {bn}"))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..20 {
        let (a, b) = (random_structured(&mut rng), random_structured(&mut rng));
        let sparse = a.mul(&b).map_err(|e| e.to_string())?;
        let dense = DenseMatrix::from_sparse(a.matrix())
            .mul(&DenseMatrix::from_sparse(b.matrix()))
            .map_err(|e| e.to_string())?;
        ensure(sparse.values_eq(&dense.to_sparse()), || format!("9x9 trial {trial}"))?;
    }

    let t = TruncatedSeries::t(10);
    for trial in 0..50 {
        let mut cs: Vec<Rational> = vec![Rational::zero()];
        cs.push(loop {
            let c = q(rng.gen_range(-7..=7), rng.gen_range(1..=4));
            if !c.is_zero() {
                break c;
            }
        });
        cs.extend((2..=10).map(|_| q(rng.gen_range(-7..=7), rng.gen_range(1..=4))));
        let f = TruncatedSeries::from_rationals(cs, 10);
        let inv = f.compositional_inverse().map_err(|e| e.to_string())?;
        let there = f.compose(&inv).map_err(|e| e.to_string())?;
        let back = inv.compose(&f).map_err(|e| e.to_string())?;
        ensure(there == t && back == t, || format!("delta series trial {trial}"))?;
    }
    Ok("B_0..B_12, 20 products of 9x9 matrices, 50 inverses".into())
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_digisheff"))
        .args(args)
        .env_remove("DIGISHEFF_SIZE_CAP")
        .output()
        .expect("run digisheff");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn cli_contract() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bad_spec = dir.path().join("bad.json");
    std::fs::write(&bad_spec, r#"{"form": "pair", "g": [0, 1], "f": [0, 1]}"#).map_err(|e| e.to_string())?;
    let bad_family = format!("custom:{}", bad_spec.display());
    let table: [(&[&str], i32); 8] = [
        (&["verify", "digital", "--family", "monomial", "--base", "2", "--n", "5"], 0),
        (&["verify", "mult", "--family", "hermite", "--base", "2", "--levels", "2"], 0),
        (&["verify", "digital", "--family", "monomial", "--base", "2", "--n", "5", "--tamper"], 1),
        (&["matrix", "--kind", "P", "--base", "1", "--levels", "2"], 2),
        (&["verify", "digital", "--base", "2", "--n", "5", "--fast"], 2),
        (&["expand", "--family", "nope", "--degree", "2"], 2),
        (&["expand", "--family", &bad_family, "--degree", "1"], 3),
        (&["matrix", "--kind", "S", "--base", "3", "--levels", "6"], 4),
    ];
    for (args, want) in table {
        let (code, _) = cli(args);
        ensure(code == want, || format!("{args:?}: exit {code}, wanted {want}"))?;
    }

    let (_, tampered) = cli(&["verify", "digital", "--family", "bernoulli", "--base", "3", "--n", "7", "--tamper"]);
    let v: Value = serde_json::from_slice(&tampered).map_err(|e| e.to_string())?;
    ensure(v["pass"] == Value::Bool(false) && v["witness"].is_array(), || format!("tamper report {v}"))?;

    let mut compared = 0;
    for family in ["monomial", "bernoulli", "laguerre:1/2", "rising"] {
        for (base, levels) in [("2", "0"), ("2", "3"), ("3", "2"), ("4", "2")] {
            for kind in ["S", "P"] {
                let run = |builder| {
                    cli(&[
                        "matrix",
                        "--kind",
                        kind,
                        "--family",
                        family,
                        "--base",
                        base,
                        "--levels",
                        levels,
                        "--builder",
                        builder,
                    ])
                };
                let (d, k) = (run("direct"), run("kronecker"));
                ensure(d.0 == 0 && d == k, || format!("builders differ for {family} b={base} N={levels} {kind}"))?;
                compared += 1;
            }
        }
    }
    Ok(format!("9 exit-code cases, {compared} builder comparisons"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, u64, fn() -> Check);
    let criteria: [Criterion; 9] = [
        ("direct and Kronecker builders agree", 60, builders_agree),
        ("multiplicative matrix identities", 120, multiplicative),
        ("digital binomial identity", 120, digital_binomial),
        ("digital power and Bernoulli power formulas", 60, power_identities),
        ("multinomial identity, d = 3", 60, multinomial),
        ("umbral functional product", 30, umbral),
        ("digit layer", 10, digit_layer),
        ("oracle cross-checks", 30, oracles),
        ("CLI contract", 10, cli_contract),
    ];
    let mut failures = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        let status = if outcome.is_ok() && !over { "PASS" } else { "FAIL" };
        let detail = match &outcome {
            Ok(s) if over => format!("{s}; over budget"),
            Ok(s) => s.clone(),
            Err(e) => e.clone(),
        };
        println!("{status} [{}] {name} ({:.2}s / {budget}s): {detail}", i + 1, elapsed.as_secs_f64());
        if status == "FAIL" {
            failures += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
