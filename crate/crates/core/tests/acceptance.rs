//! Acceptance suite: one PASS/FAIL line per criterion, each with a runtime
//! limit. Exits nonzero if any criterion fails for a reason other than one
//! of the known reference misprints listed in `KNOWN_RED`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use pascent_core::gf;
use pascent_core::patterns::{self, Pattern};
use pascent_core::sequence::{oracle_table, StatSelector};
use pascent_core::series::{parse_series, TSeries};
use pascent_core::verify::{self, check_identity, check_oracle_vs, CheckReport, OracleTarget};

type Outcome = Result<String, String>;

fn series(text: &str, order: usize) -> TSeries {
    parse_series(text, order).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn same(label: &str, expected: &TSeries, actual: &TSeries) -> Result<(), String> {
    match expected.first_difference(actual) {
        None => Ok(()),
        Some((n, e, a, b)) => Err(format!("{label}: t^{n} monomial {e:?} expected {a}, got {b}")),
    }
}

fn report_ok(r: CheckReport) -> Result<(), String> {
    if r.passed() {
        Ok(())
    } else {
        Err(r.to_json_line())
    }
}

fn within(label: &str, elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed > limit {
        Err(format!("{label} took {elapsed:.2?}, limit {limit:?}"))
    } else {
        Ok(())
    }
}

fn big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

const A2: &str = "1 + z t + (2z+z^2) t^2 + (6z+4z^2+z^3) t^3 + (21z+18z^2+6z^3+z^4) t^4
    + (84z+87z^2+36z^3+8z^4+z^5) t^5 + (380z+456z^2+222z^3+60z^4+10z^5+z^6) t^6";
const A3: &str = "1 + z t + (3z+z^2) t^2 + (12z+6z^2+z^3) t^3 + (54z+36z^2+9z^3+z^4) t^4
    + (270z+222z^2+72z^3+12z^4+z^5) t^5 + (1490z+140z^2+564z^3+120z^4+15z^5+z^6) t^6";
const A4: &str = "1 + z t + (4z+z^2) t^2 + (20z+8z^2+z^3) t^3 + (110z+60z^2+12z^3+z^4) t^4
    + (660z+450z^2+90z^3+16z^4+z^5) t^5 + (4300z+3480z^2+1140z^3+200z^4+20z^5+z^6) t^6";

fn monomial(e: &[u32; 4]) -> String {
    let parts: Vec<String> = ["u", "v", "z", "x"]
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(n, &k)| if k == 1 { n.to_string() } else { format!("{n}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// Every coefficient where `printed` and `computed` disagree, with the oracle value alongside.
fn differences(label: &str, printed: &TSeries, computed: &TSeries, oracle: &TSeries, skip: &[(usize, [u32; 4])]) -> Vec<String> {
    let mut out = Vec::new();
    for (n, (a, b)) in printed.coeffs().iter().zip(computed.coeffs()).enumerate() {
        let diff = a - b;
        for (e, _) in diff.terms() {
            if skip.contains(&(n, *e)) {
                continue;
            }
            let o = oracle.coeffs().get(n).map(|c| c.coeff(e).to_string()).unwrap_or("-".into());
            out.push(format!("{label} t^{n} {}: printed {}, computed {}, oracle {o}", monomial(e), a.coeff(e), b.coeff(e)));
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let a2 = gf::eval_a(2, 6);
    let a3 = gf::eval_a(3, 6);
    let a4 = gf::eval_a(4, 6);
    within("series", start.elapsed(), Duration::from_secs(1))?;

    let start = Instant::now();
    let oracles: Vec<TSeries> = (2..=4).map(|p| oracle_table(p, 6, StatSelector::zeros_only())).collect();
    within("oracles", start.elapsed(), Duration::from_secs(60))?;

    let flagged = (6usize, [0u32, 0, 2, 0]);
    let mut problems = Vec::new();
    problems.extend(differences("A^(2)", &series(A2, 6), &a2, &oracles[0], &[]));
    problems.extend(differences("A^(3)", &series(A3, 6), &a3, &oracles[1], &[flagged]));
    problems.extend(differences("A^(4)", &series(A4, 6), &a4, &oracles[2], &[]));
    same("A^(3) vs oracle", &oracles[1], &a3)?;
    if !problems.is_empty() {
        return Err(problems.join("; "));
    }
    let printed = series(A3, 6).coeffs()[6].coeff(&flagged.1);
    let computed = a3.coeffs()[6].coeff(&flagged.1);
    Ok(format!(
        "A^(2), A^(4) as printed; A^(3) as printed except t^6 z^2 = {computed} (printed {printed}), oracle agrees"
    ))
}

const R_PRINTED: [(u32, [u64; 10]); 3] = [
    (2, [1, 1, 2, 6, 21, 87, 413, 2213, 13205, 86828]),
    (3, [1, 1, 3, 12, 54, 276, 1574, 9916, 68394, 512671]),
    (4, [1, 1, 4, 20, 110, 670, 4470, 32440, 254490, 2146525]),
];

fn criterion_2() -> Outcome {
    let start = Instant::now();
    for (p, row) in R_PRINTED {
        let got = gf::eval_r(p, 9).scalar_coeffs().ok_or("R is not scalar")?;
        if got != big(&row) {
            return Err(format!("R^({p}): expected {row:?}, got {got:?}"));
        }
    }
    within("series", start.elapsed(), Duration::from_secs(1))?;
    Ok("R^(2), R^(3), R^(4) through t^9".into())
}

const G1_FULL_2: &str = "(u v z+u v^2 z)t^2 + (2 u v z+u v^2 z+u^2 v^2 z+2 u^2 v^3 z+2 u z^2)t^3
    + (3 u v z+3 u^2 v z+u v^2 z+5 u^2 v^2 z+5 u^2 v^3 z+u^3 v^3 z+3 u^3 v^4 z+3 u z^2+3 u^2 z^2
       + 2 u^2 v z^2+2 u^2 v^2 z^2+2 u^2 v^3 z^2+2 u z^3)t^4
    + (4 u v z+13 u^2 v z+4 u^3 v z+u v^2 z+13 u^2 v^2 z+7 u^3 v^2 z+9 u^2 v^3 z+12 u^3 v^3 z
       + 16 u^3 v^4 z+u^4 v^4 z+4 u^4 v^5 z+4 u z^2+13 u^2 z^2+4 u^3 z^2+9 u^2 v z^2+3 u^3 v z^2
       + 7 u^2 v^2 z^2+5 u^3 v^2 z^2+5 u^2 v^3 z^2+7 u^3 v^3 z^2+9 u^3 v^4 z^2+3 u z^3+9 u^2 z^3
       + 2 u^2 v z^3+2 u^2 v^2 z^3+2 u^2 v^3 z^3+2 u z^4)t^5";

const G1_FULL_3: &str = "(u v z+u v^2 z+u v^3 z)t^2
    + (3 u v z+2 u v^2 z+u^2 v^2 z+u v^3 z+2 u^2 v^3 z+3 u^2 v^4 z+3 u z^2)t^3
    + (6 u v z+6 u^2 v z+3 u v^2 z+9 u^2 v^2 z+u v^3 z+10 u^2 v^3 z+u^3 v^3 z+9 u^2 v^4 z+3 u^3 v^4 z
       + 6 u^3 v^5 z+6 u z^2+6 u^2 z^2+3 u^2 v z^2+3 u^2 v^2 z^2+3 u^2 v^3 z^2+3 u^2 v^4 z^2+3 u z^3)t^4
    + (10 u v z+34 u^2 v z+10 u^3 v z+4 u v^2 z+34 u^2 v^2 z+16 u^3 v^2 z+u v^3 z+28 u^2 v^3 z
       + 25 u^3 v^3 z+19 u^2 v^4 z+34 u^3 v^4 z+u^4 v^4 z+40 u^3 v^5 z+4 u^4 v^5 z+10 u^4 v^6 z
       + 10 u z^2+34 u^2 z^2+10 u^3 z^2+18 u^2 v z^2+6 u^3 v z^2+15 u^2 v^2 z^2+9 u^3 v^2 z^2
       + 12 u^2 v^3 z^2+12 u^3 v^3 z^2+9 u^2 v^4 z^2+15 u^3 v^4 z^2+18 u^3 v^5 z^2+6 u z^3
       + 18 u^2 z^3+3 u^2 v z^3+3 u^2 v^2 z^3+3 u^2 v^3 z^3+3 u^2 v^4 z^3+3 u z^4)t^5";

const G1_U: [(u32, &str); 3] = [
    (
        2,
        "2u z t^2 + (3z u^2+(3z+2z^2)u) t^3 + (4z u^3+(13z+9z^2)u^2+(4z+3z^2+2z^3)u) t^4
         + (5z u^4+(39z+28z^2)u^3+(35z+34z^2+15z^3)u^2+(5z+4z^2+3z^3+2z^4)u) t^5",
    ),
    (
        3,
        "3u z t^2 + (6z u^2+(6z+3z^2)u) t^3 + (10z u^3+(34z+18z^2)u^2+(10z+6z^2+3z^3)u) t^4
         + (15z u^4+(125z+70z^2)u^3+(115z+88z^2+30z^3)u^2+(15z+10z^2+6z^3+3z^4)u) t^5",
    ),
    (
        4,
        "4u z t^2 + (10z u^2+(10z+4z^2)u) t^3 + (20z u^3+(70z+30z^2)u^2+(20z+10z^2+4z^3)u) t^4
         + (35z u^4+(305z+140z^2)u^3+(285z+180z^2+50z^3)u^2+(35z+20z^2+10z^3+4z^4)u) t^5",
    ),
];

fn criterion_3() -> Outcome {
    let start = Instant::now();
    same("G1^(2) full", &series(G1_FULL_2, 5), &gf::eval_g1_full(2, 5).map_err(|e| e.to_string())?)?;
    same("G1^(3) full", &series(G1_FULL_3, 5), &gf::eval_g1_full(3, 5).map_err(|e| e.to_string())?)?;
    for (p, text) in G1_U {
        same(&format!("G1^({p}) at v=1"), &series(text, 5), &gf::eval_g1_u(p, 5, 5))?;
    }
    // the term 3uv^2z t^4 of G1^(3) counts 0222, 0322, 0332
    let c = gf::eval_g1_full(3, 4).unwrap().monomial_coefficient([4, 1, 2, 1, 0]).unwrap();
    if c != BigInt::from(3) {
        return Err(format!("3uv^2z t^4 coefficient is {c}"));
    }
    within("series", start.elapsed(), Duration::from_secs(5))?;
    Ok("G1^(2), G1^(3) in four variables and G1^(2..4) at v=1 through t^5".into())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    for p in 1..=4 {
        for target in [OracleTarget::G, OracleTarget::R] {
            report_ok(check_oracle_vs(target, p, 8).map_err(|e| e.to_string())?)?;
        }
    }
    within("oracle", start.elapsed(), Duration::from_secs(300))?;
    Ok("oracle = G (five variables) and primitive oracle = R for p <= 4, n <= 8".into())
}

const PRINTED_AVOIDANCE: [(u32, &str, &[u64], usize); 6] = [
    (2, "012", &[1, 3, 8, 20, 48, 112, 256], 7),
    (3, "012", &[1, 4, 13, 38, 104, 272, 688], 7),
    (4, "012", &[1, 5, 19, 63, 192, 552, 1520, 4048, 10496, 26264], 10),
    (3, "00", &[1, 3, 9, 24, 57, 122, 239, 435, 745, 1213, 1893, 2850], 10),
    (4, "00", &[1, 4, 16, 58, 190, 564, 1526, 3794], 8),
    (2, "10", &[1, 3, 8, 20, 48, 112, 256], 7),
];

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    for (p, pat_s, printed, brute_to) in PRINTED_AVOIDANCE {
        let pat: Pattern = pat_s.parse().unwrap();
        let brute: Vec<BigInt> = (1..=brute_to).map(|n| patterns::count_avoiders(p, &pat, n, false)).collect();
        for (i, b) in brute.iter().enumerate() {
            if *b != BigInt::from(printed[i]) {
                let n = i + 1;
                let closed = patterns::closed_count(p, &pat, n, false).map(|c| c.to_string()).unwrap_or("-".into());
                problems.push(format!("a({n},{p},{pat_s}): printed {}, enumerated {b}, closed form {closed}", printed[i]));
            }
        }
        // enumerated values where available, printed values beyond
        let all: Vec<BigInt> = (1..=printed.len())
            .map(|n| if n <= brute_to { brute[n - 1].clone() } else { BigInt::from(printed[n - 1]) })
            .collect();
        if patterns::closed_count(p, &pat, 1, false).is_ok() {
            for n in 1..=printed.len() {
                let c = patterns::closed_count(p, &pat, n, false).map_err(|e| e.to_string())?;
                if c != all[n - 1] {
                    return Err(format!("closed a({n},{p},{pat_s}) = {c}, expected {}", all[n - 1]));
                }
            }
        }
        if let Ok(s) = patterns::gf_avoiders(p, &pat, false, printed.len()) {
            let coeffs = s.scalar_coeffs().ok_or("avoider series is not scalar")?;
            if coeffs[1..] != all[..] || coeffs[0] != BigInt::from(1) {
                return Err(format!("series for ({p},{pat_s}) gives {coeffs:?}"));
            }
        }
    }
    within("pattern counts", start.elapsed(), Duration::from_secs(120))?;
    if !problems.is_empty() {
        return Err(problems.join("; "));
    }
    Ok("printed avoidance sequences reproduced by enumeration, closed forms and series".into())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut jobs: Vec<(&str, u32, usize)> = Vec::new();
    for p in 1..=3 {
        jobs.push(("kernel_G", p, 10));
        jobs.push(("kernel_H", p, 10));
        jobs.push(("rel16", p, 8));
        jobs.push(("maxk_boundary", p, 10));
    }
    jobs.push(("psi", 1, 20));
    jobs.push(("jelinek", 1, 30));
    for p in 1..=4 {
        jobs.push(("H_gives_A", p, 12));
        jobs.push(("cancellation", p, 12));
    }
    jobs.push(("delta_gamma_calculus", 1, 12));
    for (name, p, n) in &jobs {
        report_ok(check_identity(name, *p, *n).map_err(|e| format!("{name}: {e}"))?)?;
    }
    within("identities", start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("{} identity checks", jobs.len()))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    for p in 1..=4 {
        for r in verify::check_pattern_suite("embed_project", p, 8).map_err(|e| e.to_string())? {
            report_ok(r)?;
        }
    }
    for r in verify::check_pattern_suite("bijection_10_012", 2, 12).map_err(|e| e.to_string())? {
        report_ok(r)?;
    }
    within("bijections", start.elapsed(), Duration::from_secs(60))?;
    Ok("embed/project for p <= 4, n <= 8; 10 -> 012 bijection for lengths <= 12".into())
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let pat: Pattern = "00".parse().unwrap();
    for n in 1..=10 {
        let words = patterns::count_vincular_212_ternary(n);
        let avoiders = patterns::count_avoiders(3, &pat, n, false);
        if words != avoiders {
            return Err(format!("n = {n}: {words} ternary words, {avoiders} avoiders"));
        }
    }
    within("vincular", start.elapsed(), Duration::from_secs(30))?;
    Ok("21-2-avoiding ternary words = 00-avoiding 3-ascent sequences for n <= 10".into())
}

/// Failures whose only cause is a misprinted reference value, confirmed by the
/// oracle and the closed forms. They stay red; any other failure fails the run.
const KNOWN_RED: [(u32, &str); 2] = [
    (1, "A^(4) t^5 z^3: printed 90, computed 120, oracle 120"),
    (5, "a(10,4,012): printed 26264, enumerated 26624, closed form 26624"),
];

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 8] = [
        (1, "printed A series", criterion_1),
        (2, "printed R series", criterion_2),
        (3, "printed G1 series", criterion_3),
        (4, "oracle equivalence", criterion_4),
        (5, "pattern counts", criterion_5),
        (6, "identity suites", criterion_6),
        (7, "bijections", criterion_7),
        (8, "vincular cross-check", criterion_8),
    ];
    let (mut known, mut unexpected) = (0, 0);
    for (k, name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(msg) => println!("PASS criterion {k} ({name}, {elapsed:.2?}): {msg}"),
            Err(msg) if KNOWN_RED.contains(&(k, msg.as_str())) => {
                known += 1;
                println!("FAIL criterion {k} ({name}, {elapsed:.2?}): {msg} [known misprint in the reference value]");
            }
            Err(msg) => {
                unexpected += 1;
                println!("FAIL criterion {k} ({name}, {elapsed:.2?}): {msg}");
            }
        }
    }
    println!("{} passed, {known} failed on known reference misprints, {unexpected} failed unexpectedly", 8 - known - unexpected);
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
