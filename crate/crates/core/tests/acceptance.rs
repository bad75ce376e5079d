//! Acceptance suite: each test covers one release criterion, prints a
//! PASS/FAIL line per sub-case plus a summary line, and enforces the
//! criterion's runtime budget. Every comparison is exact; there are no
//! tolerances anywhere.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use z4lee::field::FieldCtx;
use z4lee::report::VerificationReport;
use z4lee::ring::Z4;
use z4lee::verify::{
    code_summary, verify_appendix_a, verify_lemma1_paths, verify_lemma2, verify_lemma3,
    verify_lemma4, verify_lemma9, verify_lemma10, verify_moments, verify_multiplicity,
    verify_n_identities, verify_table2, verify_theorem,
};
use z4lee::DefiningSetSpec;

fn ctx(m: u32) -> FieldCtx {
    FieldCtx::with_default_poly(m).unwrap()
}

/// Print per-sub-case lines and return whether everything passed.
fn gate(criterion: &str, reports: &[VerificationReport]) -> bool {
    let mut ok = true;
    for r in reports {
        println!(
            "ACCEPTANCE {criterion} {} m={}: {} ({} ms)",
            r.subject,
            r.m,
            if r.passed() { "PASS" } else { "FAIL" },
            r.runtime_ms
        );
        for d in &r.diffs {
            println!(
                "  diff {}: predicted {} enumerated {}",
                d.key, d.predicted, d.enumerated
            );
        }
        ok &= r.passed();
    }
    ok
}

fn finish(criterion: &str, ok: bool, started: Instant, budget: Option<Duration>) {
    let elapsed = started.elapsed();
    println!(
        "ACCEPTANCE {criterion}: {} ({:.1} s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    assert!(ok, "{criterion} failed");
    if let Some(budget) = budget {
        assert!(
            elapsed <= budget,
            "{criterion} exceeded budget: {elapsed:?} > {budget:?}"
        );
    }
}

#[test]
fn acceptance_1_theorem1() {
    let started = Instant::now();
    let mut ok = true;
    for m in [5u32, 7, 9] {
        let reports = verify_theorem(&ctx(m), 1).unwrap();
        ok &= gate("criterion-1", &reports);
    }
    finish("criterion-1 theorem1", ok, started, Some(Duration::from_secs(120)));
}

#[test]
fn acceptance_2_theorem2() {
    let started = Instant::now();
    let mut ok = true;
    for m in [3u32, 5, 7, 9, 11] {
        let reports = verify_theorem(&ctx(m), 2).unwrap();
        ok &= gate("criterion-2", &reports);
    }
    finish("criterion-2 theorem2", ok, started, Some(Duration::from_secs(120)));
}

#[test]
fn acceptance_3_theorem3() {
    let started = Instant::now();
    let mut ok = true;
    for m in [5u32, 7, 9] {
        let reports = verify_theorem(&ctx(m), 3).unwrap();
        ok &= gate("criterion-3", &reports);
    }
    finish("criterion-3 theorem3", ok, started, Some(Duration::from_secs(180)));
}

#[test]
fn acceptance_4_table2_regression() {
    let started = Instant::now();
    let mut ok = true;
    for m in [3u32, 5, 7, 9] {
        let reports = verify_table2(&ctx(m)).unwrap();
        ok &= gate("criterion-4", &reports);
    }
    finish("criterion-4 table2", ok, started, Some(Duration::from_secs(600)));
}

#[test]
fn acceptance_5_lemma_suite() {
    let started = Instant::now();
    let mut ok = true;
    for m in [3u32, 5, 7] {
        let c = ctx(m);
        ok &= gate("criterion-5", &[verify_lemma2(&c).unwrap()]);
        ok &= gate("criterion-5", &[verify_lemma3(&c).unwrap()]);
    }
    for m in [3u32, 5, 7, 9] {
        let c = ctx(m);
        ok &= gate("criterion-5", &verify_lemma4(&c).unwrap());
        ok &= gate("criterion-5", &[verify_lemma9(&c).unwrap()]);
        ok &= gate("criterion-5", &[verify_lemma10(&c).unwrap()]);
    }
    finish("criterion-5 lemmas", ok, started, Some(Duration::from_secs(180)));
}

#[test]
fn acceptance_6_moment_suite() {
    let started = Instant::now();
    let mut ok = true;
    for m in [3u32, 5, 7, 9] {
        ok &= gate("criterion-6", &verify_moments(&ctx(m)).unwrap());
    }
    finish("criterion-6 moments", ok, started, Some(Duration::from_secs(120)));
}

#[test]
fn acceptance_7_identity_suite() {
    let started = Instant::now();
    let mut ok = true;
    // two-path trace equality, even m included
    for m in 3u32..=10 {
        ok &= gate("criterion-7", &[verify_lemma1_paths(&ctx(m)).unwrap()]);
    }
    for m in [3u32, 5, 7] {
        let c = ctx(m);
        ok &= gate("criterion-7", &[verify_appendix_a(&c).unwrap()]);
        ok &= gate("criterion-7", &verify_n_identities(&c, 1000, 0x5eed).unwrap());
        ok &= gate("criterion-7", &verify_multiplicity(&c).unwrap());
    }
    finish("criterion-7 identities", ok, started, Some(Duration::from_secs(60)));
}

/// Every code built in criteria 1-4 has 4^k1·2^k2 equal to its distinct
/// codeword count; `code_summary` enforces the identity internally.
#[test]
fn acceptance_8_type_consistency() {
    let started = Instant::now();
    let mut ok = true;
    let mut cells: Vec<(u32, DefiningSetSpec)> = Vec::new();
    for m in [5u32, 7, 9] {
        for t in 0..4 {
            cells.push((m, DefiningSetSpec::Single(Z4(t))));
            cells.push((m, DefiningSetSpec::Complement(Z4(t))));
        }
    }
    for m in [3u32, 5, 7, 9, 11] {
        cells.push((m, DefiningSetSpec::Pair(Z4(0), Z4(2))));
        cells.push((m, DefiningSetSpec::Pair(Z4(1), Z4(3))));
    }
    for m in [3u32, 5, 7, 9] {
        let snap = z4lee::TableIISnapshot::bundled();
        for row in snap.rows_for_m(m) {
            for spec in z4lee::table2::candidate_specs(row) {
                if !cells.contains(&(m, spec)) {
                    cells.push((m, spec));
                }
            }
        }
    }
    for (m, spec) in cells {
        let summary = code_summary(&ctx(m), spec).unwrap();
        let type_count = 4u64.pow(summary.k1 as u32) * 2u64.pow(summary.k2 as u32);
        let pass = type_count == summary.codewords;
        println!(
            "ACCEPTANCE criterion-8 type/{spec} m={m}: {} (4^{}·2^{} = {type_count}, distinct {})",
            if pass { "PASS" } else { "FAIL" },
            summary.k1,
            summary.k2,
            summary.codewords
        );
        ok &= pass;
    }
    finish("criterion-8 type-consistency", ok, started, None);
}
