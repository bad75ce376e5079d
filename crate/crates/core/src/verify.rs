//! Verification drivers: build the enumerated side, fetch the predicted
//! side, compare exactly, and wrap the outcome in reports. Shared by the
//! CLI `verify`/`batch` commands and the acceptance suite.

use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::json;

use crate::code::{
    build_defining_set, codeword, count_n_identity, enumerate, min_lee_distance, DefiningSetSpec,
};
use crate::error::{Error, Result};
use crate::expsum::{
    chi, chi_distribution_for_a, joint_distribution, moments_bundle, sweep_s_distribution, SKind,
};
use crate::field::{FieldCtx, FieldElem};
use crate::gauss::GaussInt;
use crate::oracle::{predict, predict_lemma, predict_moment, LemmaDist, MOMENT_CASES};
use crate::report::{
    compare_code, compare_distributions, compare_gauss, CompareOutcome, EnumeratedCode,
    VerificationReport,
};
use crate::ring::{gr_add, trace_z4, trace_z4_direct, GRElem, Z4};
use crate::table2::{candidate_specs, TableIISnapshot};
use crate::zmat::standard_form;

/// Everything `construct` reports for one code.
#[derive(Debug, Clone)]
pub struct CodeSummary {
    pub m: u32,
    pub poly: u32,
    pub spec: DefiningSetSpec,
    pub n: u64,
    pub codewords: u64,
    pub k1: usize,
    pub k2: usize,
    pub d_lee: Option<u64>,
    pub dist: BTreeMap<u64, u64>,
    pub kernel: u64,
}

impl CodeSummary {
    pub fn to_enumerated(&self) -> EnumeratedCode {
        EnumeratedCode {
            n: self.n,
            codewords: self.codewords,
            d_lee: self.d_lee,
            table: self.dist.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let dist: Vec<serde_json::Value> = self
            .dist
            .iter()
            .map(|(w, f)| json!([w, f]))
            .collect();
        json!({
            "m": self.m,
            "poly": format!("{:#x}", self.poly),
            "spec": self.spec.to_string(),
            "n": self.n,
            "codewords": self.codewords,
            "k1": self.k1,
            "k2": self.k2,
            "d_lee": self.d_lee,
            "distribution": dist,
        })
    }
}

/// Construct, enumerate, reduce to standard form. The type identity
/// 4^k1·2^k2 = distinct codewords is enforced here for every code built.
pub fn code_summary(ctx: &FieldCtx, spec: DefiningSetSpec) -> Result<CodeSummary> {
    let code = build_defining_set(ctx, spec)?;
    let e = enumerate(ctx, &code)?;
    let t = standard_form(ctx, &code)?;
    if t.group_order() != e.dedup.total_codewords {
        return Err(Error::Internal(format!(
            "type 4^{}·2^{} = {} disagrees with {} distinct codewords for {spec} at m={}",
            t.k1,
            t.k2,
            t.group_order(),
            e.dedup.total_codewords,
            ctx.m()
        )));
    }
    let d_lee = match min_lee_distance(&e.dedup) {
        Ok(d) => Some(d),
        Err(Error::ZeroCode) => None,
        Err(e) => return Err(e),
    };
    Ok(CodeSummary {
        m: ctx.m(),
        poly: ctx.poly(),
        spec,
        n: code.n() as u64,
        codewords: e.dedup.total_codewords,
        k1: t.k1,
        k2: t.k2,
        d_lee,
        dist: e.dedup.entries,
        kernel: e.kernel_size,
    })
}

fn timed<F: FnOnce() -> Result<CompareOutcome>>(
    m: u32,
    subject: String,
    f: F,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let outcome = f()?;
    Ok(VerificationReport::new(
        m,
        subject,
        outcome,
        start.elapsed().as_millis(),
    ))
}

/// One theorem cell: enumerate the code and compare against the closed form.
pub fn verify_theorem_cell(ctx: &FieldCtx, spec: DefiningSetSpec) -> Result<VerificationReport> {
    timed(ctx.m(), format!("theorem{}/{}", crate::oracle::theorem_of(spec), spec), || {
        let predicted = predict(ctx.m(), spec)?;
        let summary = code_summary(ctx, spec)?;
        Ok(compare_code(&predicted, &summary.to_enumerated()))
    })
}

pub fn verify_theorem(ctx: &FieldCtx, theorem: u8) -> Result<Vec<VerificationReport>> {
    let specs: Vec<DefiningSetSpec> = match theorem {
        1 => (0..4).map(|t| DefiningSetSpec::Single(Z4(t))).collect(),
        2 => vec![
            DefiningSetSpec::Pair(Z4(0), Z4(2)),
            DefiningSetSpec::Pair(Z4(1), Z4(3)),
        ],
        3 => (0..4).map(|t| DefiningSetSpec::Complement(Z4(t))).collect(),
        _ => return Err(Error::ShapeMismatch(format!("no theorem {theorem}"))),
    };
    specs
        .into_iter()
        .map(|spec| verify_theorem_cell(ctx, spec))
        .collect()
}

/// Lemma 2: the per-a distribution of χ over b, for every a ≠ 0.
pub fn verify_lemma2(ctx: &FieldCtx) -> Result<VerificationReport> {
    timed(ctx.m(), "lemma2".into(), || {
        let predicted = predict_lemma(ctx.m(), LemmaDist::L2)?;
        let mut out = CompareOutcome::default();
        for a in 1..ctx.size() {
            let enumerated = chi_distribution_for_a(ctx, FieldElem(a as u16));
            let cmp = compare_distributions(&predicted, &enumerated)?;
            if !cmp.pass() {
                for mut d in cmp.diffs {
                    d.key = format!("a={a:#x}/{}", d.key);
                    out.diffs.push(d);
                }
                break;
            }
        }
        Ok(out)
    })
}

/// Lemma 3: χ_{Q_a}(b) = i^{−Tr(b/a)}·χ_{Q_1}(0), exhaustively.
pub fn verify_lemma3(ctx: &FieldCtx) -> Result<VerificationReport> {
    timed(ctx.m(), "lemma3".into(), || {
        let base = chi(ctx, FieldElem::ONE, FieldElem::ZERO);
        let mut out = CompareOutcome::default();
        'outer: for a in 1..ctx.size() {
            let ae = FieldElem(a as u16);
            let ainv = ctx.inv(ae);
            for b in 0..ctx.size() {
                let be = FieldElem(b as u16);
                let lhs = chi(ctx, ae, be);
                let ratio = ctx.mul(be, ainv);
                let t = trace_z4(ctx, GRElem::teich(ratio));
                let rhs = GaussInt::i_pow(4 - t.0 as u32) * base;
                if lhs != rhs {
                    out.diffs.push(crate::report::Diff {
                        key: format!("a={a:#x},b={b:#x}"),
                        predicted: rhs.to_string(),
                        enumerated: lhs.to_string(),
                    });
                    break 'outer;
                }
            }
        }
        Ok(out)
    })
}

pub fn verify_lemma4(ctx: &FieldCtx) -> Result<Vec<VerificationReport>> {
    let mut reports = Vec::new();
    for (kind, name, which) in [
        (SKind::Plus, "lemma4/plus", LemmaDist::L4Plus),
        (SKind::Minus, "lemma4/minus", LemmaDist::L4Minus),
    ] {
        reports.push(timed(ctx.m(), name.into(), || {
            let predicted = predict_lemma(ctx.m(), which)?;
            let enumerated = sweep_s_distribution(ctx, kind);
            compare_distributions(&predicted, &enumerated)
        })?);
    }
    Ok(reports)
}

pub fn verify_lemma9(ctx: &FieldCtx) -> Result<VerificationReport> {
    timed(ctx.m(), "lemma9".into(), || {
        let predicted = predict_lemma(ctx.m(), LemmaDist::L9)?;
        let enumerated = joint_distribution(ctx, &[Z4(0), Z4(2)])?;
        compare_distributions(&predicted, &enumerated)
    })
}

pub fn verify_lemma10(ctx: &FieldCtx) -> Result<VerificationReport> {
    timed(ctx.m(), "lemma10".into(), || {
        let predicted = predict_lemma(ctx.m(), LemmaDist::L10)?;
        let enumerated = joint_distribution(ctx, &[Z4(0), Z4(1), Z4(2), Z4(3)])?;
        compare_distributions(&predicted, &enumerated)
    })
}

/// All nine closed forms of the moment lemmas, one grid sweep total.
pub fn verify_moments(ctx: &FieldCtx) -> Result<Vec<VerificationReport>> {
    let m = ctx.m();
    if m % 2 == 0 {
        return Err(Error::EvenM(m));
    }
    let start = Instant::now();

    let mut flat = Vec::new();
    let mut owners = Vec::new();
    for case in MOMENT_CASES {
        for (idx, (factors, mult)) in case.sweeps().into_iter().enumerate() {
            flat.push(factors);
            owners.push((case, idx, mult));
        }
    }
    let enumerated = moments_bundle(ctx, &flat);

    let mut per_case: BTreeMap<&'static str, CompareOutcome> = BTreeMap::new();
    for ((case, idx, mult), value) in owners.into_iter().zip(enumerated) {
        let expected = {
            let v = predict_moment(m, case)?;
            if mult == 1 {
                v
            } else {
                -v
            }
        };
        let cmp = compare_gauss(expected, value);
        let slot = per_case.entry(case.name()).or_default();
        for mut d in cmp.diffs {
            d.key = format!("sweep{idx}/{}", d.key);
            slot.diffs.push(d);
        }
    }

    let runtime = start.elapsed().as_millis();
    Ok(per_case
        .into_iter()
        .map(|(name, outcome)| {
            VerificationReport::new(m, format!("moments/{name}"), outcome, runtime)
        })
        .collect())
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Lemma 1 cross-check: table path vs direct Frobenius-orbit sum, for every
/// x + 2y (sampled beyond m=10). Works for even m too.
pub fn verify_lemma1_paths(ctx: &FieldCtx) -> Result<VerificationReport> {
    timed(ctx.m(), "identities/lemma1-trace-paths".into(), || {
        let size = ctx.size();
        let mut out = CompareOutcome::default();
        let check = |x: u16, y: u16, out: &mut CompareOutcome| {
            let u = GRElem::new(FieldElem(x), FieldElem(y));
            let fast = trace_z4(ctx, u);
            let direct = trace_z4_direct(ctx, u);
            if fast != direct && out.diffs.is_empty() {
                out.diffs.push(crate::report::Diff {
                    key: format!("x={x:#x},y={y:#x}"),
                    predicted: direct.0.to_string(),
                    enumerated: fast.0.to_string(),
                });
            }
        };
        if ctx.m() <= 10 {
            for x in 0..size as u16 {
                for y in 0..size as u16 {
                    check(x, y, &mut out);
                }
            }
        } else {
            let mut state = 0x5eed_0000 + ctx.m() as u64;
            for _ in 0..100_000 {
                let r = splitmix64(&mut state);
                check(
                    (r & (size as u64 - 1)) as u16,
                    ((r >> 16) & (size as u64 - 1)) as u16,
                    &mut out,
                );
            }
        }
        Ok(out)
    })
}

/// Appendix identity (√x⊕√y)(x⊕y⊕√(xy)) = √x³⊕√y³ over the Teichmüller
/// labels, exhaustively, plus the odd-m corollary that x⊕y⊕√(xy) = 0 only
/// at x = y = 0.
pub fn verify_appendix_a(ctx: &FieldCtx) -> Result<VerificationReport> {
    timed(ctx.m(), "identities/appendix-a".into(), || {
        let size = ctx.size();
        let mut out = CompareOutcome::default();
        for x in 0..size {
            let xe = FieldElem(x as u16);
            let sx = ctx.teich_sqrt(xe);
            let x3 = ctx.mul(ctx.sqr(xe), xe);
            for y in 0..size {
                let ye = FieldElem(y as u16);
                let sy = ctx.teich_sqrt(ye);
                let lhs = ctx.mul(
                    ctx.oplus(sx, sy),
                    ctx.oplus(ctx.oplus(xe, ye), ctx.teich_sqrt(ctx.mul(xe, ye))),
                );
                let y3 = ctx.mul(ctx.sqr(ye), ye);
                let rhs = ctx.oplus(ctx.teich_sqrt(x3), ctx.teich_sqrt(y3));
                if lhs != rhs {
                    out.diffs.push(crate::report::Diff {
                        key: format!("product:x={x:#x},y={y:#x}"),
                        predicted: format!("{:#x}", rhs.0),
                        enumerated: format!("{:#x}", lhs.0),
                    });
                    return Ok(out);
                }
                if ctx.m() % 2 == 1 {
                    let core = ctx.oplus(ctx.oplus(xe, ye), ctx.teich_sqrt(ctx.mul(xe, ye)));
                    let vanishes = core.is_zero();
                    let at_origin = x == 0 && y == 0;
                    if vanishes != at_origin {
                        out.diffs.push(crate::report::Diff {
                            key: format!("vanishing:x={x:#x},y={y:#x}"),
                            predicted: at_origin.to_string(),
                            enumerated: vanishes.to_string(),
                        });
                        return Ok(out);
                    }
                }
            }
        }
        Ok(out)
    })
}

/// Appendix facts about μ³ ⊕ μ ⊕ 1: three Teichmüller roots with tr(μ)=0
/// and Tr(μ)=2 when 3 | m (m odd), no roots otherwise.
pub fn verify_appendix_b(ctx: &FieldCtx) -> Result<VerificationReport> {
    timed(ctx.m(), "identities/appendix-b-cubic".into(), || {
        let mut out = CompareOutcome::default();
        let mut roots = Vec::new();
        for x in 0..ctx.size() {
            let xe = FieldElem(x as u16);
            let cube = ctx.mul(ctx.sqr(xe), xe);
            if ctx.oplus(ctx.oplus(cube, xe), FieldElem::ONE).is_zero() {
                roots.push(xe);
            }
        }
        let expected = if ctx.m() % 3 == 0 { 3 } else { 0 };
        if roots.len() != expected {
            out.diffs.push(crate::report::Diff {
                key: "root-count".into(),
                predicted: expected.to_string(),
                enumerated: roots.len().to_string(),
            });
        }
        for mu in roots {
            if ctx.tr_bin(mu) != 0 {
                out.diffs.push(crate::report::Diff {
                    key: format!("tr(mu={:#x})", mu.0),
                    predicted: "0".into(),
                    enumerated: ctx.tr_bin(mu).to_string(),
                });
            }
            let t = trace_z4(ctx, GRElem::teich(mu));
            if t != Z4(2) {
                out.diffs.push(crate::report::Diff {
                    key: format!("Tr(mu={:#x})", mu.0),
                    predicted: "2".into(),
                    enumerated: t.0.to_string(),
                });
            }
        }
        Ok(out)
    })
}

/// N₀−N₂ counting identities on random generators for the three proof
/// families.
pub fn verify_n_identities(ctx: &FieldCtx, samples: u32, seed: u64) -> Result<Vec<VerificationReport>> {
    let specs = [
        DefiningSetSpec::Single(Z4(0)),
        DefiningSetSpec::Pair(Z4(0), Z4(2)),
        DefiningSetSpec::Complement(Z4(0)),
    ];
    let mask = ctx.size() as u64 - 1;
    specs
        .iter()
        .map(|&spec| {
            timed(ctx.m(), format!("identities/n0-n2/{spec}"), || {
                let mut out = CompareOutcome::default();
                let mut state = seed ^ (ctx.m() as u64) << 32;
                let fixed = [
                    GRElem::ZERO,
                    GRElem::from_z4(Z4(1)),
                    GRElem::from_z4(Z4(2)),
                    GRElem::from_z4(Z4(3)),
                ];
                let randoms = (0..samples).map(|_| {
                    let r = splitmix64(&mut state);
                    GRElem::new(
                        FieldElem((r & mask) as u16),
                        FieldElem((r >> 20 & mask) as u16),
                    )
                });
                for u in fixed.into_iter().chain(randoms) {
                    if let Err(e) = count_n_identity(ctx, spec, u) {
                        out.diffs.push(crate::report::Diff {
                            key: format!("u=({:#x},{:#x})", u.x.0, u.y.0),
                            predicted: "identity".into(),
                            enumerated: e.to_string(),
                        });
                        break;
                    }
                }
                Ok(out)
            })
        })
        .collect()
}

/// Codeword multiplicity invariants on the proof families, at the m where
/// the theorems make the claim: 4-fold for Single(0) (m>3), 2-fold for
/// Pair(0,2), all-distinct for Complement (m>3).
pub fn verify_multiplicity(ctx: &FieldCtx) -> Result<Vec<VerificationReport>> {
    let m = ctx.m();
    let mut cases: Vec<(DefiningSetSpec, u64, u8)> = Vec::new();
    if m > 3 {
        cases.push((DefiningSetSpec::Single(Z4(0)), 4, 1));
    }
    cases.push((DefiningSetSpec::Pair(Z4(0), Z4(2)), 2, 2));
    if m > 3 {
        for t in 0..4 {
            cases.push((DefiningSetSpec::Complement(Z4(t)), 1, 0));
        }
    }
    cases
        .into_iter()
        .map(|(spec, expected_kernel, period)| {
            timed(m, format!("identities/multiplicity/{spec}"), || {
                let mut out = CompareOutcome::default();
                let code = build_defining_set(ctx, spec)?;
                let e = enumerate(ctx, &code)?;
                if e.kernel_size != expected_kernel {
                    out.diffs.push(crate::report::Diff {
                        key: "kernel".into(),
                        predicted: expected_kernel.to_string(),
                        enumerated: e.kernel_size.to_string(),
                    });
                }
                if period > 0 {
                    let shift = GRElem::from_z4(Z4(period));
                    let mut state = 0xabcdu64 + m as u64;
                    for _ in 0..64 {
                        let r = splitmix64(&mut state);
                        let mask = ctx.size() as u64 - 1;
                        let u = GRElem::new(
                            FieldElem((r & mask) as u16),
                            FieldElem((r >> 24 & mask) as u16),
                        );
                        let same =
                            codeword(ctx, &code, u) == codeword(ctx, &code, gr_add(ctx, u, shift));
                        if !same {
                            out.diffs.push(crate::report::Diff {
                                key: format!("period:u=({:#x},{:#x})", u.x.0, u.y.0),
                                predicted: format!("c(u) = c(u+{period})"),
                                enumerated: "differs".into(),
                            });
                            break;
                        }
                    }
                }
                Ok(out)
            })
        })
        .collect()
}

/// The `identities` verify subject.
pub fn verify_identities(ctx: &FieldCtx, samples: u32, seed: u64) -> Result<Vec<VerificationReport>> {
    let mut reports = vec![
        verify_lemma1_paths(ctx)?,
        verify_lemma3(ctx)?,
        verify_appendix_a(ctx)?,
        verify_appendix_b(ctx)?,
    ];
    reports.extend(verify_n_identities(ctx, samples, seed)?);
    reports.extend(verify_multiplicity(ctx)?);
    Ok(reports)
}

/// Snapshot regression for the rows at this field's m: every candidate spec
/// must reproduce (n, k1, k2, d_L).
pub fn verify_table2(ctx: &FieldCtx) -> Result<Vec<VerificationReport>> {
    let snap = TableIISnapshot::bundled();
    let rows = snap.rows_for_m(ctx.m());
    if rows.is_empty() {
        return Err(Error::OutOfTheoremScope(format!(
            "snapshot has no rows for m={}",
            ctx.m()
        )));
    }
    let mut reports = Vec::new();
    for (ridx, row) in rows.iter().enumerate() {
        let label = format!(
            "table2/[{},{},{}]dL{}#{}",
            row.n, row.k1, row.k2, row.our_dl, ridx
        );
        let candidates = candidate_specs(row);
        if candidates.is_empty() {
            let mut out = CompareOutcome::default();
            out.diffs.push(crate::report::Diff {
                key: "candidates".into(),
                predicted: "a matching defining set".into(),
                enumerated: "none".into(),
            });
            reports.push(VerificationReport::new(ctx.m(), label, out, 0));
            continue;
        }
        for spec in candidates {
            reports.push(timed(ctx.m(), format!("{label}/{spec}"), || {
                let summary = code_summary(ctx, spec)?;
                let mut out = CompareOutcome::default();
                let mut field = |key: &str, pred: u64, enr: u64| {
                    if pred != enr {
                        out.diffs.push(crate::report::Diff {
                            key: key.into(),
                            predicted: pred.to_string(),
                            enumerated: enr.to_string(),
                        });
                    }
                };
                field("n", row.n, summary.n);
                field("k1", row.k1 as u64, summary.k1 as u64);
                field("k2", row.k2 as u64, summary.k2 as u64);
                field("our_dL", row.our_dl, summary.d_lee.unwrap_or(0));
                Ok(out)
            })?);
        }
    }
    Ok(reports)
}

/// CLI verify subjects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subject {
    Lemma2,
    Lemma4,
    Lemma9,
    Lemma10,
    Moments,
    Theorem1,
    Theorem2,
    Theorem3,
    Identities,
    Table2,
}

impl Subject {
    pub fn parse(s: &str) -> Result<Subject> {
        Ok(match s {
            "lemma2" => Subject::Lemma2,
            "lemma4" => Subject::Lemma4,
            "lemma9" => Subject::Lemma9,
            "lemma10" => Subject::Lemma10,
            "moments" => Subject::Moments,
            "theorem1" => Subject::Theorem1,
            "theorem2" => Subject::Theorem2,
            "theorem3" => Subject::Theorem3,
            "identities" => Subject::Identities,
            "table2" => Subject::Table2,
            _ => {
                return Err(Error::OutOfTheoremScope(format!(
                    "unknown subject `{s}`"
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Subject::Lemma2 => "lemma2",
            Subject::Lemma4 => "lemma4",
            Subject::Lemma9 => "lemma9",
            Subject::Lemma10 => "lemma10",
            Subject::Moments => "moments",
            Subject::Theorem1 => "theorem1",
            Subject::Theorem2 => "theorem2",
            Subject::Theorem3 => "theorem3",
            Subject::Identities => "identities",
            Subject::Table2 => "table2",
        }
    }

    /// Scope check, mirroring the lemma/theorem hypotheses.
    pub fn check_scope(&self, m: u32) -> Result<()> {
        let odd = m % 2 == 1;
        let ok = match self {
            Subject::Theorem1 | Subject::Theorem3 => odd && m > 3,
            Subject::Theorem2 => odd && m > 1,
            Subject::Table2 => !TableIISnapshot::bundled().rows_for_m(m).is_empty(),
            _ => odd && m >= 3,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::OutOfTheoremScope(match self {
                Subject::Theorem1 => format!("theorem1 requires odd m>3, got {m}"),
                Subject::Theorem3 => format!("theorem3 requires odd m>3, got {m}"),
                Subject::Theorem2 => format!("theorem2 requires odd m>1, got {m}"),
                Subject::Table2 => format!("snapshot has no rows for m={m}"),
                s => format!("{} requires odd m>=3, got {m}", s.name()),
            }))
        }
    }
}

pub fn run_subject(
    ctx: &FieldCtx,
    subject: Subject,
    samples: u32,
    seed: u64,
) -> Result<Vec<VerificationReport>> {
    subject.check_scope(ctx.m())?;
    match subject {
        Subject::Lemma2 => Ok(vec![verify_lemma2(ctx)?]),
        Subject::Lemma4 => verify_lemma4(ctx),
        Subject::Lemma9 => Ok(vec![verify_lemma9(ctx)?]),
        Subject::Lemma10 => Ok(vec![verify_lemma10(ctx)?]),
        Subject::Moments => verify_moments(ctx),
        Subject::Theorem1 => verify_theorem(ctx, 1),
        Subject::Theorem2 => verify_theorem(ctx, 2),
        Subject::Theorem3 => verify_theorem(ctx, 3),
        Subject::Identities => verify_identities(ctx, samples, seed),
        Subject::Table2 => verify_table2(ctx),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(m: u32) -> FieldCtx {
        FieldCtx::with_default_poly(m).unwrap()
    }

    #[test]
    fn theorem2_m3_passes() {
        let reports = verify_theorem(&ctx(3), 2).unwrap();
        assert_eq!(reports.len(), 2);
        assert!(reports.iter().all(|r| r.passed()), "{reports:?}");
    }

    #[test]
    fn lemma2_and_lemma3_m3() {
        assert!(verify_lemma2(&ctx(3)).unwrap().passed());
        assert!(verify_lemma3(&ctx(3)).unwrap().passed());
    }

    #[test]
    fn identities_m3() {
        let reports = verify_identities(&ctx(3), 50, 42).unwrap();
        assert!(
            reports.iter().all(|r| r.passed()),
            "{:?}",
            reports.iter().filter(|r| !r.passed()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn lemma1_paths_even_m() {
        assert!(verify_lemma1_paths(&ctx(4)).unwrap().passed());
        assert!(verify_lemma1_paths(&ctx(6)).unwrap().passed());
    }

    #[test]
    fn subject_scope_checks() {
        assert!(Subject::Theorem1.check_scope(3).is_err());
        assert!(Subject::Theorem1.check_scope(5).is_ok());
        assert!(Subject::Theorem2.check_scope(3).is_ok());
        assert!(Subject::Lemma4.check_scope(4).is_err());
        assert!(Subject::Table2.check_scope(11).is_err());
        assert!(Subject::Table2.check_scope(9).is_ok());
        assert!(Subject::parse("theorem9").is_err());
    }

    #[test]
    fn summary_json_shape() {
        let c = ctx(3);
        let s = code_summary(&c, DefiningSetSpec::Pair(Z4(0), Z4(2))).unwrap();
        let j = s.to_json();
        assert_eq!(j["n"], 4);
        assert_eq!(j["codewords"], 32);
        assert_eq!(j["poly"], "0xb");
        assert_eq!(j["spec"], "pair:0,2");
        assert_eq!(j["distribution"][0][0], 0);
    }
}
