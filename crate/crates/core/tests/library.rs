use num_bigint::BigInt;

use pascent_core::gf;
use pascent_core::patterns::{self, Pattern};
use pascent_core::sequence::{oracle_table, PAscentSequence, StatSelector};
use pascent_core::series::Var;
use pascent_core::verify;

#[test]
fn a_series_matches_oracle_for_small_p() {
    for p in 1..=3 {
        assert_eq!(gf::eval_a(p, 6), oracle_table(p, 6, StatSelector::zeros_only()), "p = {p}");
    }
}

#[test]
fn ascent_sequence_counts_at_z_one() {
    let a = gf::eval_a(1, 7).specialize_i64(&[(Var::Z, 1)]);
    let counts = a.scalar_coeffs().unwrap();
    let want: Vec<BigInt> = [1u64, 1, 2, 5, 15, 53, 217, 1014].iter().map(|&x| BigInt::from(x)).collect();
    assert_eq!(counts, want);
}

#[test]
fn closed_forms_agree_with_enumeration() {
    for (p, pat) in [(2, "012"), (3, "012"), (2, "10"), (3, "00")] {
        let pat: Pattern = pat.parse().unwrap();
        for n in 1..=7 {
            assert_eq!(
                patterns::closed_count(p, &pat, n, false).unwrap(),
                patterns::count_avoiders(p, &pat, n, false),
                "p = {p}, {pat}, n = {n}"
            );
        }
    }
}

#[test]
fn embed_then_project_is_identity() {
    let w = PAscentSequence::new(2, vec![0, 2, 1, 3, 0]).unwrap();
    let up = patterns::embed(&w);
    assert_eq!(patterns::project(&up, 2).unwrap(), w);
}

#[test]
fn run_all_is_deterministic_and_green() {
    let a = verify::run_all(4);
    let b = verify::run_all(4);
    let lines = |r: &[verify::CheckReport]| r.iter().map(|x| x.to_json_line()).collect::<Vec<_>>();
    assert_eq!(lines(&a), lines(&b));
    assert!(a.iter().all(|r| r.passed()));
}
