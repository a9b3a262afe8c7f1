//! Acceptance suite. One test per criterion; each prints a PASS/FAIL line
//! (visible with `--nocapture`). All comparisons are exact: the only
//! tolerances are zero.
//!
//! The oracles here are deliberately independent of the library internals:
//! double-loop semigroup membership, run scans over it, direct polynomial
//! expansion, and direct minimization for the Upsilon envelope.

use std::process::Command;
use std::time::Instant;

use num::{BigInt, BigRational};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use concordance::order::verify_json_document;
use concordance::{
    check_recursion, decompose_torus, upsilon_of_sum, upsilon_torus, Staircase, TorusKnot,
    TorusKnotSum,
};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Oracle: double-loop membership in <p,q>.
fn brute_member(p: u64, q: u64, n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let n = n as u64;
    let mut x = 0;
    while x * p <= n {
        if (n - x * p).is_multiple_of(q) {
            return true;
        }
        x += 1;
    }
    false
}

/// Oracle: staircase by run scan over double-loop membership.
fn brute_staircase(p: u64, q: u64) -> Vec<u64> {
    let conductor = (p - 1) * (q - 1);
    let mut steps = Vec::new();
    let mut in_run = true;
    let mut run_len = 0u64;
    for n in 0..conductor {
        if brute_member(p, q, n as i64) == in_run {
            run_len += 1;
        } else {
            steps.push(run_len);
            in_run = !in_run;
            run_len = 1;
        }
    }
    if conductor > 0 {
        steps.push(run_len);
    }
    steps
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn coprime_pairs(max: u64) -> Vec<(u64, u64)> {
    let mut pairs = Vec::new();
    for p in 2..=max {
        for q in (p + 1)..=max {
            if gcd(p, q) == 1 {
                pairs.push((p, q));
            }
        }
    }
    pairs
}

fn report(criterion: u32, name: &str, started: Instant, failures: Vec<String>, detail: String) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "acceptance criterion {criterion} ({name}): {status} [{:.2}s] {detail}",
        started.elapsed().as_secs_f64()
    );
    assert!(
        failures.is_empty(),
        "criterion {criterion} ({name}) failed:\n{}",
        failures.join("\n")
    );
}

/// Criterion 1: staircase structure and the Alexander polynomial identity
/// for every coprime pair 2 <= p < q <= 40.
#[test]
fn criterion_1_staircase_suite() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let pairs = coprime_pairs(40);
    for &(p, q) in &pairs {
        let knot = TorusKnot::new(p, q).unwrap();
        let s = Staircase::of(&knot);
        let b = s.entries();
        let conductor = (p - 1) * (q - 1);
        let genus = conductor / 2;
        let mut complain = |msg: String| failures.push(format!("T({p},{q}): {msg}"));
        if !b.len().is_multiple_of(2) || !(0..b.len() / 2).all(|i| b[i] == b[b.len() - 1 - i]) {
            complain("not palindromic of even length".into());
        }
        if b.contains(&0) {
            complain("nonpositive entry".into());
        }
        if b.iter().sum::<u64>() != conductor {
            complain(format!("entry sum is not {conductor}"));
        }
        if b.iter().skip(1).step_by(2).sum::<u64>() != genus {
            complain(format!("even-position sum is not the genus {genus}"));
        }
        if b.iter().max().copied().unwrap_or(0) > p - 1 {
            complain(format!("an entry exceeds {}", p - 1));
        }
        // (1-t) * sum_{s in S} t^s must equal sum_i (-1)^i t^{alpha_i}.
        let alpha = s.alexander_exponents();
        let mut alternating = vec![0i64; conductor as usize + 1];
        for (i, &a) in alpha.iter().enumerate() {
            alternating[a as usize] += if i % 2 == 0 { 1 } else { -1 };
        }
        let expansion: Vec<i64> = (0..=conductor as i64)
            .map(|n| brute_member(p, q, n) as i64 - brute_member(p, q, n - 1) as i64)
            .collect();
        if expansion != alternating {
            complain("Alexander polynomial expansion mismatch".into());
        }
    }
    report(
        1,
        "staircase suite",
        started,
        failures,
        format!("{} coprime pairs with 2 <= p < q <= 40", pairs.len()),
    );
}

/// Criterion 2: exact recursion identity for all coprime 2 <= p < q <= 25
/// and k in 1..=4. Zero tolerance.
#[test]
fn criterion_2_recursion_suite() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut checks = 0;
    for &(p, q) in &coprime_pairs(25) {
        for k in 1..=4 {
            checks += 1;
            match check_recursion(q, p, k) {
                Ok(true) => {}
                Ok(false) => failures.push(format!("recursion fails for q={q}, p={p}, k={k}")),
                Err(e) => failures.push(format!("recursion errored for q={q}, p={p}, k={k}: {e}")),
            }
        }
    }
    report(
        2,
        "recursion suite",
        started,
        failures,
        format!("{checks} exact identities"),
    );
}

/// Criterion 3: endpoint vanishing, symmetry, convexity and the initial
/// slope for every knot of suite 1, plus the direct-minimization spot value
/// Upsilon_{T(2,3)}(1) = -1.
#[test]
fn criterion_3_upsilon_structure() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let pairs = coprime_pairs(40);
    for &(p, q) in &pairs {
        let knot = TorusKnot::new(p, q).unwrap();
        let f = upsilon_torus(&knot);
        let mut complain = |msg: &str| failures.push(format!("T({p},{q}): {msg}"));
        if !f.eval(&rat(0, 1)).unwrap().eq(&rat(0, 1)) {
            complain("Upsilon(0) != 0");
        }
        if !f.eval(&rat(2, 1)).unwrap().eq(&rat(0, 1)) {
            complain("Upsilon(2) != 0");
        }
        if f.reflected() != f {
            complain("not symmetric under t -> 2-t");
        }
        if !f.is_convex() {
            complain("not convex");
        }
        if f.slopes()[0] != rat(-(knot.genus() as i64), 1) {
            complain("initial slope is not -genus");
        }
    }
    // Spot value via direct minimization of I(m) + (t/2)(g - m) at t = 1.
    let spot = {
        let sg = TorusKnot::new(2, 3).unwrap().semigroup();
        let direct = (0..=2)
            .map(|m| 2 * sg.counting(m) as i64 + (1 - m as i64))
            .min()
            .unwrap();
        rat(-direct, 1)
    };
    if spot != rat(-1, 1)
        || upsilon_torus(&TorusKnot::new(2, 3).unwrap())
            .eval(&rat(1, 1))
            .unwrap()
            != spot
    {
        failures.push("Upsilon_{T(2,3)}(1) != -1".into());
    }
    report(
        3,
        "upsilon structure",
        started,
        failures,
        format!("{} torus knots", pairs.len()),
    );
}

/// Criterion 4: the three-member family reproduced end to end through the
/// command-line interface, with verified certificates and exact vanishing.
#[test]
fn criterion_4_family_reproduced() {
    let started = Instant::now();
    let mut failures = Vec::new();

    let output = Command::new(env!("CARGO_BIN_EXE_concordance"))
        .args(["family", "--count", "3"])
        .output()
        .expect("binary runs");
    if output.status.code() != Some(0) {
        failures.push(format!(
            "family --count 3 exited with {:?}",
            output.status.code()
        ));
    }
    let doc: serde_json::Value =
        serde_json::from_slice(&output.stdout).unwrap_or(serde_json::Value::Null);

    let expected_members = [
        (4u64, 9u64, "T(9,13) - T(4,9) - T(9,10)"),
        (10, 21, "T(21,31) - T(10,21) - T(21,22)"),
        (28, 57, "T(57,85) - T(28,57) - T(57,58)"),
    ];
    let members = doc["members"].as_array().cloned().unwrap_or_default();
    if members.len() != 3 {
        failures.push(format!("expected 3 members, got {}", members.len()));
    }
    for (i, (p, q, knot)) in expected_members.iter().enumerate() {
        let member = members.get(i).cloned().unwrap_or(serde_json::Value::Null);
        if member["p"] != serde_json::json!(p)
            || member["q"] != serde_json::json!(q)
            || member["k"] != serde_json::json!(1)
            || member["knot"] != serde_json::json!(knot)
        {
            failures.push(format!("member {} is not {knot}: {member}", i + 1));
        }
        // Exact vanishing, recomputed in the library.
        let sum: TorusKnotSum = knot.parse().unwrap();
        if !upsilon_of_sum(&sum).is_zero() {
            failures.push(format!("Upsilon({knot}) != 0"));
        }
    }

    // Every certificate re-verifies: structural hypotheses recomputed, axiom
    // steps labeled, the chain and per-member conclusions established.
    let text = String::from_utf8_lossy(&output.stdout).to_string();
    if let Err(e) = verify_json_document(&text) {
        failures.push(format!("family certificate does not verify: {e}"));
    }
    let steps = doc["certificate"]["steps"].as_array().cloned().unwrap_or_default();
    for wanted in [
        "[[T(9,13) - T(4,9) - T(9,10)]] >> [1,3,3,1]",
        "[[T(21,31) - T(10,21) - T(21,22)]] >> [1,9,9,1]",
        "[[T(57,85) - T(28,57) - T(57,58)]] >> [1,27,27,1]",
        "[[T(9,13) - T(4,9) - T(9,10)]] << [[T(21,31) - T(10,21) - T(21,22)]]",
        "[[T(21,31) - T(10,21) - T(21,22)]] << [[T(57,85) - T(28,57) - T(57,58)]]",
    ] {
        if !steps.iter().any(|s| s["claim"] == serde_json::json!(wanted)) {
            failures.push(format!("missing certified conclusion: {wanted}"));
        }
    }
    if !steps
        .iter()
        .any(|s| s["lemma"] == serde_json::json!("chain-independence")
            && s["kind"] == serde_json::json!("axiom"))
    {
        failures.push("independence step missing or not labeled as an axiom".into());
    }
    if !steps
        .iter()
        .all(|s| s["kind"] == serde_json::json!("axiom") || s["kind"] == serde_json::json!("structural"))
    {
        failures.push("a step is neither structural nor an axiom".into());
    }

    report(4, "family reproduced", started, failures, String::new());
}

/// Criterion 5: the split-pattern prefixes for every coprime pair with
/// 4 <= p < q <= 40, checked against the run-scan oracle.
#[test]
fn criterion_5_split_prefixes() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    for &(p, q) in &coprime_pairs(40) {
        if p < 4 {
            continue;
        }
        count += 1;
        let (k, r) = (q / p, q % p);
        let mut expected: Vec<u64> = Vec::new();
        for _ in 0..k {
            expected.extend([1, p - 1]);
        }
        if r == 1 {
            expected.push(2);
        } else if r >= 3 && 2 * r < p {
            expected.extend([1, r - 1, 1, p - r - 1]);
        } else {
            expected.extend([1, r - 1]);
        }
        if !brute_staircase(p, q).starts_with(&expected) {
            failures.push(format!("T({p},{q}): run scan does not start with {expected:?}"));
        }
        match decompose_torus(p, q) {
            Ok(record) => {
                if record.prefix() != expected.as_slice() {
                    failures.push(format!(
                        "T({p},{q}): decomposition verified {:?}, expected {expected:?}",
                        record.prefix()
                    ));
                }
            }
            Err(e) => failures.push(format!("T({p},{q}): decomposition failed: {e}")),
        }
    }
    report(
        5,
        "split prefixes",
        started,
        failures,
        format!("{count} pairs with 4 <= p < q <= 40"),
    );
}

/// Criterion 6: certificate integrity. Incrementing any JSON number in the
/// serialized certificates must make re-verification fail; through the
/// binary, `--verify` must exit 3.
#[test]
fn criterion_6_certificate_integrity() {
    let started = Instant::now();
    let mut failures = Vec::new();

    let output = Command::new(env!("CARGO_BIN_EXE_concordance"))
        .args(["certify", "4", "9", "1"])
        .output()
        .expect("binary runs");
    let doc: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();

    fn number_paths(value: &serde_json::Value, prefix: String, out: &mut Vec<String>) {
        match value {
            serde_json::Value::Number(_) => out.push(prefix),
            serde_json::Value::Array(items) => {
                for (i, item) in items.iter().enumerate() {
                    number_paths(item, format!("{prefix}/{i}"), out);
                }
            }
            serde_json::Value::Object(map) => {
                for (key, item) in map {
                    number_paths(item, format!("{prefix}/{key}"), out);
                }
            }
            _ => {}
        }
    }
    fn bump(value: &mut serde_json::Value, path: &[&str]) {
        if path.is_empty() {
            let n = value.as_i64().expect("integer leaf");
            *value = serde_json::Value::from(n + 1);
            return;
        }
        match value {
            serde_json::Value::Array(items) => {
                bump(&mut items[path[0].parse::<usize>().unwrap()], &path[1..])
            }
            serde_json::Value::Object(map) => bump(map.get_mut(path[0]).unwrap(), &path[1..]),
            _ => unreachable!(),
        }
    }

    let mut paths = Vec::new();
    number_paths(&doc, String::new(), &mut paths);
    let mut undetected = 0;
    for path in &paths {
        let mut mutated = doc.clone();
        let segments: Vec<&str> = path.split('/').filter(|s| !s.is_empty()).collect();
        bump(&mut mutated, &segments);
        if verify_json_document(&serde_json::to_string(&mutated).unwrap()).is_ok() {
            undetected += 1;
            failures.push(format!("mutation at {path} went undetected"));
        }
    }

    // Spot-check the exit code through the binary on a spread of mutations.
    let dir = tempfile::tempdir().unwrap();
    for (i, path) in paths.iter().step_by(paths.len() / 8).enumerate() {
        let mut mutated = doc.clone();
        let segments: Vec<&str> = path.split('/').filter(|s| !s.is_empty()).collect();
        bump(&mut mutated, &segments);
        let file = dir.path().join(format!("mutated_{i}.json"));
        std::fs::write(&file, serde_json::to_string(&mutated).unwrap()).unwrap();
        let status = Command::new(env!("CARGO_BIN_EXE_concordance"))
            .args(["--verify", file.to_str().unwrap()])
            .output()
            .expect("binary runs")
            .status;
        if status.code() != Some(3) {
            failures.push(format!(
                "--verify on mutation at {path} exited {:?}, expected 3",
                status.code()
            ));
        }
    }

    report(
        6,
        "certificate integrity",
        started,
        failures,
        format!("{} numbers mutated, {undetected} undetected", paths.len()),
    );
}

/// Criterion 7: oracle equivalence. Membership against the double loop on
/// [-5, 2pq] and the Upsilon envelope against direct minimization at 200
/// random rational points per knot, for 20 seeded random pairs.
#[test]
fn criterion_7_oracle_equivalence() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(20260809);
    let pool = coprime_pairs(40);
    for _ in 0..20 {
        let (p, q) = pool[rng.random_range(0..pool.len())];
        let knot = TorusKnot::new(p, q).unwrap();
        let sg = knot.semigroup();
        for n in -5..=(2 * p * q) as i64 {
            if sg.contains(n) != brute_member(p, q, n) {
                failures.push(format!("membership of {n} in <{p},{q}> disagrees"));
            }
        }

        let g = knot.genus();
        let counting: Vec<u64> = {
            // I(m) accumulated from the double-loop oracle.
            let mut acc = Vec::with_capacity(2 * g as usize + 1);
            let mut count = 0u64;
            for m in 0..=2 * g {
                acc.push(count);
                if brute_member(p, q, m as i64) {
                    count += 1;
                }
            }
            acc
        };
        let f = upsilon_torus(&knot);
        for _ in 0..200 {
            let den = rng.random_range(1i64..=60);
            let num = rng.random_range(0i64..=2 * den);
            // min over m of I(m) + (num/(2 den))(g - m), scaled by 2 den.
            let direct = (0..=2 * g)
                .map(|m| {
                    2 * den as i128 * counting[m as usize] as i128
                        + num as i128 * (g as i128 - m as i128)
                })
                .min()
                .unwrap();
            let expected = BigRational::new(BigInt::from(-direct), BigInt::from(den));
            let got = f.eval(&rat(num, den)).unwrap();
            if got != expected {
                failures.push(format!(
                    "T({p},{q}) at t={num}/{den}: envelope {got} vs direct {expected}"
                ));
            }
        }
    }
    report(
        7,
        "oracle equivalence",
        started,
        failures,
        "20 pairs, 200 rational points each".into(),
    );
}
