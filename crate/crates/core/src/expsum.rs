//! Exact evaluation of the character sum χ and the derived sums S₊/S₋,
//! their value distributions over the (a, b) grid, joint distributions of
//! Z4-shifted tuples, and shift-product moments.
//!
//! χ is always computed as the literal 2^m-term sum with the precomputed
//! trace tables; none of the closed forms being verified feed back into the
//! enumeration path.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::gauss::GaussInt;
use crate::ring::{GRElem, Z4};

/// Which of the two sums a single-sum sweep tallies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SKind {
    Plus,
    Minus,
}

/// One factor S_sign(u + shift) of a moment product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MomentFactor {
    pub shift: Z4,
    pub sign: SKind,
}

impl MomentFactor {
    pub fn plus(shift: u8) -> MomentFactor {
        MomentFactor {
            shift: Z4::new(shift),
            sign: SKind::Plus,
        }
    }

    pub fn minus(shift: u8) -> MomentFactor {
        MomentFactor {
            shift: Z4::new(shift),
            sign: SKind::Minus,
        }
    }
}

/// Exact multiset of values attained by a sum as its parameters sweep an
/// index set. `arity` is 1 for single sums, the tuple length for joint
/// distributions. Entries are sorted lexicographically by (re, im) per
/// coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueDistribution {
    pub arity: usize,
    pub entries: Vec<(Vec<GaussInt>, u64)>,
}

impl ValueDistribution {
    pub fn from_map(arity: usize, map: BTreeMap<Vec<GaussInt>, u64>) -> ValueDistribution {
        ValueDistribution {
            arity,
            entries: map.into_iter().collect(),
        }
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|(_, f)| f).sum()
    }

    /// CSV export: `value_re,value_im,frequency` for single sums,
    /// `v1_re,v1_im,...,frequency` for joint distributions.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        if self.arity == 1 {
            out.push_str("value_re,value_im,frequency\n");
        } else {
            for k in 1..=self.arity {
                out.push_str(&format!("v{k}_re,v{k}_im,"));
            }
            out.push_str("frequency\n");
        }
        for (vals, freq) in &self.entries {
            for v in vals {
                out.push_str(&format!("{},{},", v.re, v.im));
            }
            out.push_str(&format!("{freq}\n"));
        }
        out
    }

    /// JSON mirror of the CSV columns.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(vals, freq)| {
                let mut obj = serde_json::Map::new();
                if self.arity == 1 {
                    obj.insert("value_re".into(), json!(vals[0].re as i64));
                    obj.insert("value_im".into(), json!(vals[0].im as i64));
                } else {
                    for (k, v) in vals.iter().enumerate() {
                        obj.insert(format!("v{}_re", k + 1), json!(v.re as i64));
                        obj.insert(format!("v{}_im", k + 1), json!(v.im as i64));
                    }
                }
                obj.insert("frequency".into(), json!(freq));
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

/// χ_{Q_a}(b) = Σ_{x∈𝒯} i^{Tr((a+2b)x)}, summed term by term.
pub fn chi(ctx: &FieldCtx, a: FieldElem, b: FieldElem) -> GaussInt {
    let size = ctx.size();
    let (ai, bi) = (a.index(), b.index());
    let mut counts = [0i64; 4];
    for x in 0..size {
        let e = (ctx.tr4_raw(ctx.mul_raw(ai, x)) + 2 * ctx.tr_bin_raw(ctx.mul_raw(bi, x))) & 3;
        counts[e as usize] += 1;
    }
    counts_to_gauss(&counts)
}

fn counts_to_gauss(counts: &[i64; 4]) -> GaussInt {
    GaussInt::new(
        (counts[0] - counts[2]) as i128,
        (counts[1] - counts[3]) as i128,
    )
}

/// S₊(u) = Σ i^{Tr(ux)} + Σ i^{3Tr(ux)}. Both component sums are assembled
/// and added; the result must come out real.
pub fn s_plus(ctx: &FieldCtx, u: GRElem) -> GaussInt {
    let c = chi(ctx, u.x, u.y);
    let c3 = c.conj(); // i^{3t} = conj(i^t)
    let s = c + c3;
    assert!(s.is_real(), "S+ must be real, got {s}");
    s
}

/// S₋(u) = Σ i^{Tr(ux)} − Σ i^{3Tr(ux)}; purely imaginary.
pub fn s_minus(ctx: &FieldCtx, u: GRElem) -> GaussInt {
    let c = chi(ctx, u.x, u.y);
    let s = c - c.conj();
    assert!(s.re == 0, "S- must be purely imaginary, got {s}");
    s
}

/// Per-a working rows for the shifted-quad kernel. Byte layout per x:
/// bits 0-1 Tr(a·x), bits 2-3 Tr((a⊕1)·x), bit 4 tr(√a·x), bit 5 tr(x).
struct ARows {
    packed: Vec<u8>,
}

impl ARows {
    fn build(ctx: &FieldCtx, a: usize) -> ARows {
        let size = ctx.size();
        let a1 = a ^ 1;
        let sa = ctx.sqrt_raw(a);
        let packed = (0..size)
            .map(|x| {
                let t0 = ctx.tr4_raw(ctx.mul_raw(a, x));
                let t1 = ctx.tr4_raw(ctx.mul_raw(a1, x));
                let qs = ctx.tr_bin_raw(ctx.mul_raw(sa, x));
                let q1 = ctx.tr_bin_raw(x);
                t0 | t1 << 2 | qs << 4 | q1 << 5
            })
            .collect();
        ARows { packed }
    }
}

/// S₊ and S₋ values for one u; S₋ carried as its imaginary part.
#[derive(Debug, Clone, Copy, Default)]
pub struct SVal {
    pub plus: i64,
    pub minus_im: i64,
}

impl SVal {
    pub fn get(&self, sign: SKind) -> GaussInt {
        match sign {
            SKind::Plus => GaussInt::real(self.plus as i128),
            SKind::Minus => GaussInt::new(0, self.minus_im as i128),
        }
    }
}

/// All four shifted values (S(u), S(u+1), S(u+2), S(u+3)) in one pass over x.
/// For u = a+2b the shifts are (a,b), (a⊕1, √a⊕b), (a, b⊕1), (a⊕1, √a⊕b⊕1),
/// and the binary-trace parts split linearly, so a single product b·x per x
/// feeds all four exponents.
fn shifted_quad(ctx: &FieldCtx, rows: &ARows, b: usize) -> [SVal; 4] {
    let size = ctx.size();
    let mut counts = [[0i32; 4]; 4];
    for x in 0..size {
        let p = rows.packed[x] as usize;
        let qb = ctx.tr_bin_raw(ctx.mul_raw(b, x)) as usize;
        let qs = p >> 4 & 1;
        let q1 = p >> 5 & 1;
        let t0 = p & 3;
        let t1 = p >> 2 & 3;
        counts[0][(t0 + 2 * qb) & 3] += 1;
        counts[1][(t1 + 2 * (qs ^ qb)) & 3] += 1;
        counts[2][(t0 + 2 * (qb ^ q1)) & 3] += 1;
        counts[3][(t1 + 2 * (qs ^ qb ^ q1)) & 3] += 1;
    }
    let mut out = [SVal::default(); 4];
    for c in 0..4 {
        let n = counts[c];
        out[c] = SVal {
            plus: 2 * (n[0] - n[2]) as i64,
            minus_im: 2 * (n[1] - n[3]) as i64,
        };
    }
    out
}

/// Value distribution of S₊ or S₋ over all 4^m pairs (a, b).
pub fn sweep_s_distribution(ctx: &FieldCtx, which: SKind) -> ValueDistribution {
    let size = ctx.size();
    let map = (0..size)
        .into_par_iter()
        .map(|a| {
            let mut local: BTreeMap<Vec<GaussInt>, u64> = BTreeMap::new();
            for b in 0..size {
                let mut counts = [0i64; 4];
                for x in 0..size {
                    let e = (ctx.tr4_raw(ctx.mul_raw(a, x))
                        + 2 * ctx.tr_bin_raw(ctx.mul_raw(b, x)))
                        & 3;
                    counts[e as usize] += 1;
                }
                let c = counts_to_gauss(&counts);
                let v = match which {
                    SKind::Plus => c + c.conj(),
                    SKind::Minus => c - c.conj(),
                };
                *local.entry(vec![v]).or_insert(0) += 1;
            }
            local
        })
        .reduce(BTreeMap::new, merge_maps);
    ValueDistribution::from_map(1, map)
}

/// Distribution over b of χ_{Q_a}(b) for one fixed a.
pub fn chi_distribution_for_a(ctx: &FieldCtx, a: FieldElem) -> ValueDistribution {
    let mut map: BTreeMap<Vec<GaussInt>, u64> = BTreeMap::new();
    for b in 0..ctx.size() {
        let v = chi(ctx, a, FieldElem(b as u16));
        *map.entry(vec![v]).or_insert(0) += 1;
    }
    ValueDistribution::from_map(1, map)
}

fn merge_maps(
    mut acc: BTreeMap<Vec<GaussInt>, u64>,
    other: BTreeMap<Vec<GaussInt>, u64>,
) -> BTreeMap<Vec<GaussInt>, u64> {
    for (k, v) in other {
        *acc.entry(k).or_insert(0) += v;
    }
    acc
}

/// Σ_{a∈𝒯⋆} Σ_{b∈𝒯} Π_j S_{sign_j}(u + shift_j), exact.
pub fn moment(ctx: &FieldCtx, factors: &[MomentFactor]) -> Result<GaussInt> {
    if factors.is_empty() {
        return Err(Error::ShapeMismatch("moment spec must be nonempty".into()));
    }
    let size = ctx.size();
    let total = (2..size)
        .into_par_iter()
        .map(|a| {
            let rows = ARows::build(ctx, a);
            let mut acc = GaussInt::ZERO;
            for b in 0..size {
                let quad = shifted_quad(ctx, &rows, b);
                let mut prod = GaussInt::ONE;
                for f in factors {
                    prod = prod * quad[f.shift.0 as usize].get(f.sign);
                }
                acc = acc + prod;
            }
            acc
        })
        .reduce(|| GaussInt::ZERO, |x, y| x + y);
    Ok(total)
}

/// Joint value distribution of (S₊(u+c₁), …, S₊(u+c_k)) over a∈𝒯⋆, b∈𝒯.
pub fn joint_distribution(ctx: &FieldCtx, shifts: &[Z4]) -> Result<ValueDistribution> {
    if shifts.is_empty() {
        return Err(Error::ShapeMismatch("shift list must be nonempty".into()));
    }
    let size = ctx.size();
    let map = (2..size)
        .into_par_iter()
        .map(|a| {
            let rows = ARows::build(ctx, a);
            let mut local: BTreeMap<Vec<GaussInt>, u64> = BTreeMap::new();
            for b in 0..size {
                let quad = shifted_quad(ctx, &rows, b);
                let key: Vec<GaussInt> = shifts
                    .iter()
                    .map(|c| quad[c.0 as usize].get(SKind::Plus))
                    .collect();
                *local.entry(key).or_insert(0) += 1;
            }
            local
        })
        .reduce(BTreeMap::new, merge_maps);
    Ok(ValueDistribution::from_map(shifts.len(), map))
}

/// The nine moment sweeps above, evaluated in a single pass. Returns the
/// sums keyed by the factor lists, so callers pay one grid sweep for all of
/// them.
pub fn moments_bundle(ctx: &FieldCtx, specs: &[Vec<MomentFactor>]) -> Vec<GaussInt> {
    let size = ctx.size();
    (2..size)
        .into_par_iter()
        .map(|a| {
            let rows = ARows::build(ctx, a);
            let mut acc = vec![GaussInt::ZERO; specs.len()];
            for b in 0..size {
                let quad = shifted_quad(ctx, &rows, b);
                for (slot, factors) in acc.iter_mut().zip(specs) {
                    let mut prod = GaussInt::ONE;
                    for f in factors {
                        prod = prod * quad[f.shift.0 as usize].get(f.sign);
                    }
                    *slot = *slot + prod;
                }
            }
            acc
        })
        .reduce(
            || vec![GaussInt::ZERO; specs.len()],
            |mut xs, ys| {
                for (x, y) in xs.iter_mut().zip(ys) {
                    *x = *x + y;
                }
                xs
            },
        )
}
