//! Property tests for the algebraic invariants: ring axioms, the ⊕/√ pair
//! law, trace additivity and Frobenius invariance, Lee weight identities,
//! and the shape of the S-sums.

use proptest::prelude::*;

use z4lee::code::{lee_weight, Codeword};
use z4lee::expsum::{s_minus, s_plus};
use z4lee::field::{FieldCtx, FieldElem};
use z4lee::gauss::GaussInt;
use z4lee::ring::{gr_add, gr_mul, trace_z4, GRElem, Z4};

fn ctx(m: u32) -> FieldCtx {
    FieldCtx::with_default_poly(m).unwrap()
}

/// Strategy yielding (m, three ring elements) over the odd desk sizes.
fn m_and_triple() -> impl Strategy<Value = (u32, [(u16, u16); 3])> {
    (prop_oneof![Just(3u32), Just(5), Just(7), Just(9)]).prop_flat_map(|m| {
        let size = 1u16 << m;
        let elem = (0..size, 0..size);
        (Just(m), [elem.clone(), elem.clone(), elem])
    })
}

proptest! {
    #[test]
    fn gr_ring_axioms((m, raw) in m_and_triple()) {
        let c = ctx(m);
        let [u, v, w] = raw.map(|(x, y)| GRElem::new(FieldElem(x), FieldElem(y)));
        prop_assert_eq!(gr_add(&c, u, v), gr_add(&c, v, u));
        prop_assert_eq!(gr_mul(&c, u, v), gr_mul(&c, v, u));
        prop_assert_eq!(
            gr_add(&c, gr_add(&c, u, v), w),
            gr_add(&c, u, gr_add(&c, v, w))
        );
        prop_assert_eq!(
            gr_mul(&c, gr_mul(&c, u, v), w),
            gr_mul(&c, u, gr_mul(&c, v, w))
        );
        prop_assert_eq!(
            gr_mul(&c, u, gr_add(&c, v, w)),
            gr_add(&c, gr_mul(&c, u, v), gr_mul(&c, u, w))
        );
        // additive order divides 4
        let four = gr_add(&c, gr_add(&c, u, u), gr_add(&c, u, u));
        prop_assert_eq!(four, GRElem::ZERO);
    }

    #[test]
    fn trace_is_additive((m, raw) in m_and_triple()) {
        let c = ctx(m);
        let [u, v, _] = raw.map(|(x, y)| GRElem::new(FieldElem(x), FieldElem(y)));
        let lhs = trace_z4(&c, gr_add(&c, u, v));
        let rhs = Z4::new(trace_z4(&c, u).0 + trace_z4(&c, v).0);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_is_frobenius_invariant((m, raw) in m_and_triple()) {
        let c = ctx(m);
        let (x, y) = raw[0];
        let u = GRElem::new(FieldElem(x), FieldElem(y));
        let frob = GRElem::new(c.sqr(FieldElem(x)), c.sqr(FieldElem(y)));
        prop_assert_eq!(trace_z4(&c, u), trace_z4(&c, frob));
    }

    #[test]
    fn s_plus_real_s_minus_imaginary((m, raw) in m_and_triple()) {
        let c = ctx(m);
        let (x, y) = raw[0];
        let u = GRElem::new(FieldElem(x), FieldElem(y));
        prop_assert!(s_plus(&c, u).is_real());
        prop_assert_eq!(s_minus(&c, u).re, 0);
    }

    #[test]
    fn lee_weight_phase_identity(symbols in proptest::collection::vec(0u8..4, 0..128)) {
        // lee_weight itself asserts the n - Re Σ i^c identity
        let cw = Codeword { symbols: symbols.iter().map(|&s| Z4(s)).collect() };
        let w = lee_weight(&cw);
        let direct: u64 = symbols.iter().map(|&s| [0u64, 1, 2, 1][s as usize]).sum();
        prop_assert_eq!(w, direct);
    }

    #[test]
    fn chi_norm_is_field_size_for_unit_a((m, raw) in m_and_triple()) {
        let c = ctx(m);
        let (x, y) = raw[0];
        let a = if x == 0 { FieldElem(1) } else { FieldElem(x) };
        let v = z4lee::chi(&c, a, FieldElem(y));
        prop_assert_eq!(v.norm(), 1i128 << m);
    }
}

/// The pair law x + y = (x⊕y) + 2√(xy), exhaustively per odd m ≤ 7.
#[test]
fn oplus_pair_law_exhaustive() {
    for m in [3u32, 5, 7] {
        let c = ctx(m);
        for x in 0..c.size() as u16 {
            for y in 0..c.size() as u16 {
                let (xe, ye) = (FieldElem(x), FieldElem(y));
                let sum = gr_add(&c, GRElem::teich(xe), GRElem::teich(ye));
                assert_eq!(sum.x, c.oplus(xe, ye), "m={m}");
                assert_eq!(sum.y, c.teich_sqrt(c.mul(xe, ye)), "m={m}");
            }
        }
    }
}

/// Trace additivity, exhaustive. Full (u, v) grids at m ≤ 5; at m = 7 the
/// pair law reduces additivity to the x-part identity
/// Tr(x1⊕x2) + 2·tr(√(x1·x2)) = Tr(x1) + Tr(x2), checked on all 2^14 pairs.
#[test]
fn trace_additivity_exhaustive() {
    for m in [3u32, 5] {
        let c = ctx(m);
        let size = c.size() as u16;
        for x1 in 0..size {
            for y1 in 0..size {
                let u = GRElem::new(FieldElem(x1), FieldElem(y1));
                let tu = trace_z4(&c, u).0;
                for x2 in 0..size {
                    for y2 in 0..size {
                        let v = GRElem::new(FieldElem(x2), FieldElem(y2));
                        let lhs = trace_z4(&c, gr_add(&c, u, v));
                        assert_eq!(lhs, Z4::new(tu + trace_z4(&c, v).0), "m={m}");
                    }
                }
            }
        }
    }
    let c = ctx(7);
    for x1 in 0..c.size() {
        for x2 in 0..c.size() {
            let lhs = (c.tr4_raw(x1 ^ x2) + 2 * c.tr_bin_raw(c.sqrt_raw(c.mul_raw(x1, x2)))) & 3;
            let rhs = (c.tr4_raw(x1) + c.tr4_raw(x2)) & 3;
            assert_eq!(lhs, rhs, "x1={x1:#x} x2={x2:#x}");
        }
    }
}

/// Ring axioms exhaustively at m=3 (4^3 elements make full triples cheap).
#[test]
fn gr_axioms_exhaustive_m3() {
    let c = ctx(3);
    let all: Vec<GRElem> = (0..8u16)
        .flat_map(|x| (0..8u16).map(move |y| GRElem::new(FieldElem(x), FieldElem(y))))
        .collect();
    for &u in &all {
        for &v in &all {
            assert_eq!(gr_add(&c, u, v), gr_add(&c, v, u));
            assert_eq!(gr_mul(&c, u, v), gr_mul(&c, v, u));
            for &w in &all {
                assert_eq!(
                    gr_add(&c, gr_add(&c, u, v), w),
                    gr_add(&c, u, gr_add(&c, v, w))
                );
                assert_eq!(
                    gr_mul(&c, u, gr_add(&c, v, w)),
                    gr_add(&c, gr_mul(&c, u, v), gr_mul(&c, u, w))
                );
            }
        }
    }
}

/// Defining-set length matches |D_t| = 2^(m-2) + Re(i^(-t)·χ_{Q_1}(0))/2.
#[test]
fn defining_set_size_closed_form() {
    for m in [3u32, 5, 7, 9] {
        let c = ctx(m);
        let base = z4lee::chi(&c, FieldElem::ONE, FieldElem::ZERO);
        for t in 0..4u8 {
            let spec = z4lee::DefiningSetSpec::Single(Z4(t));
            let n = match z4lee::build_defining_set(&c, spec) {
                Ok(code) => code.coords.len() as i128,
                Err(_) => 0,
            };
            let phased = GaussInt::i_pow(4 - t as u32) * base;
            assert_eq!(n, (1 << (m - 2)) + phased.re / 2, "m={m} t={t}");
        }
    }
}
