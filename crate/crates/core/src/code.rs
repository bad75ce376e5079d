//! Defining-set construction of trace codes over Z4 and exact Lee weight
//! enumeration.
//!
//! The enumeration sweep walks all 4^m generators u = a + 2b, evaluates each
//! codeword symbol from precomputed trace rows, and deduplicates distinct
//! codewords by hashing full symbol vectors. The fiber identity
//! raw_count(w) = |kernel| · distinct(w) holds unconditionally for a group
//! homomorphism and is asserted per weight; a hash collision cannot pass it.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::gauss::GaussInt;
use crate::ring::{gr_add, gr_mul, trace_z4, GRElem, Z4};

/// Lee weights of the residues 0..3.
pub const LEE: [u64; 4] = [0, 1, 2, 1];

/// The three defining-set families: D_t, D_t1 ∪ D_t2, 𝒯 \ D_t.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefiningSetSpec {
    Single(Z4),
    Pair(Z4, Z4),
    Complement(Z4),
}

impl DefiningSetSpec {
    /// Parse the CLI syntax `single:t | pair:t1,t2 | complement:t`.
    pub fn parse(s: &str) -> Result<DefiningSetSpec> {
        let err = || Error::OutOfTheoremScope(format!("cannot parse defining set `{s}`"));
        let (kind, rest) = s.split_once(':').ok_or_else(err)?;
        let parse_t = |v: &str| -> Result<Z4> {
            let t: u8 = v.trim().parse().map_err(|_| err())?;
            if t > 3 {
                return Err(err());
            }
            Ok(Z4(t))
        };
        match kind.trim() {
            "single" => Ok(DefiningSetSpec::Single(parse_t(rest)?)),
            "complement" => Ok(DefiningSetSpec::Complement(parse_t(rest)?)),
            "pair" => {
                let (t1, t2) = rest.split_once(',').ok_or_else(err)?;
                let (t1, t2) = (parse_t(t1)?, parse_t(t2)?);
                if t1 == t2 {
                    return Err(Error::OutOfTheoremScope(format!(
                        "pair requires distinct residues, got {},{}",
                        t1.0, t2.0
                    )));
                }
                Ok(DefiningSetSpec::Pair(t1, t2))
            }
            _ => Err(err()),
        }
    }

    /// Trace residues selected by this spec.
    pub fn t_set(&self) -> Vec<u8> {
        match *self {
            DefiningSetSpec::Single(t) => vec![t.0],
            DefiningSetSpec::Pair(t1, t2) => {
                let mut v = vec![t1.0, t2.0];
                v.sort_unstable();
                v
            }
            DefiningSetSpec::Complement(t) => (0..4).filter(|&j| j != t.0).collect(),
        }
    }

    /// Kernel of u -> c(u) restricted to the Z4 constants: the v with
    /// v·t = 0 for every selected residue t. For the odd-m theorem families
    /// this is the whole kernel (the codeword counts say so), giving the
    /// codeword multiplicities 4, 2, 1.
    pub fn z4_kernel_size(&self) -> u64 {
        let ts = self.t_set();
        (0u8..4)
            .filter(|&v| ts.iter().all(|&t| (v * t) % 4 == 0))
            .count() as u64
    }
}

impl fmt::Display for DefiningSetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DefiningSetSpec::Single(t) => write!(f, "single:{}", t.0),
            DefiningSetSpec::Pair(t1, t2) => write!(f, "pair:{},{}", t1.0, t2.0),
            DefiningSetSpec::Complement(t) => write!(f, "complement:{}", t.0),
        }
    }
}

/// A constructed code: the defining set in ascending label order.
#[derive(Debug, Clone)]
pub struct Code {
    pub m: u32,
    pub spec: DefiningSetSpec,
    pub coords: Vec<FieldElem>,
}

impl Code {
    pub fn n(&self) -> usize {
        self.coords.len()
    }
}

/// Codeword as a Z4 symbol vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub symbols: Vec<Z4>,
}

/// Exact Lee weight -> frequency table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    pub entries: BTreeMap<u64, u64>,
    pub total_codewords: u64,
}

impl WeightDistribution {
    pub fn from_entries(entries: BTreeMap<u64, u64>) -> WeightDistribution {
        let total_codewords = entries.values().sum();
        WeightDistribution {
            entries,
            total_codewords,
        }
    }
}

/// All x ∈ 𝒯 with Tr(x) in the selected residues, ascending label order.
pub fn build_defining_set(ctx: &FieldCtx, spec: DefiningSetSpec) -> Result<Code> {
    let ts = spec.t_set();
    let coords: Vec<FieldElem> = (0..ctx.size())
        .filter(|&x| ts.contains(&ctx.tr4_raw(x)))
        .map(|x| FieldElem(x as u16))
        .collect();
    if coords.is_empty() {
        return Err(Error::EmptyDefiningSet {
            m: ctx.m(),
            spec: spec.to_string(),
        });
    }
    Ok(Code {
        m: ctx.m(),
        spec,
        coords,
    })
}

/// The codeword (Tr(u·d₁), …, Tr(u·d_n)).
pub fn codeword(ctx: &FieldCtx, code: &Code, u: GRElem) -> Codeword {
    let symbols = code
        .coords
        .iter()
        .map(|&d| trace_z4(ctx, gr_mul(ctx, u, GRElem::teich(d))))
        .collect();
    Codeword { symbols }
}

/// Symbol-wise Lee weight; cross-checked against n − Re Σ i^{c_j}.
pub fn lee_weight(cw: &Codeword) -> u64 {
    let by_symbol: u64 = cw.symbols.iter().map(|c| LEE[c.0 as usize]).sum();
    let phase_sum = cw
        .symbols
        .iter()
        .fold(GaussInt::ZERO, |acc, c| acc + GaussInt::i_pow(c.0 as u32));
    let by_phase = cw.symbols.len() as i128 - phase_sum.re;
    assert_eq!(by_symbol as i128, by_phase, "lee weight identity violated");
    by_symbol
}

/// Raw sweep (4^m generators) and hash-deduplicated weight distributions.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub raw: WeightDistribution,
    pub dedup: WeightDistribution,
    /// |{u : c(u) = 0}|; every distinct codeword is generated exactly this
    /// many times.
    pub kernel_size: u64,
}

/// Weight distribution: raw sweep counts over all 4^m generators, or
/// distinct codewords when `dedup` is set.
pub fn weight_distribution(ctx: &FieldCtx, code: &Code, dedup: bool) -> Result<WeightDistribution> {
    let e = enumerate(ctx, code)?;
    Ok(if dedup { e.dedup } else { e.raw })
}

/// Smallest nonzero Lee weight present.
pub fn min_lee_distance(dist: &WeightDistribution) -> Result<u64> {
    dist.entries
        .iter()
        .find(|&(&w, &f)| w > 0 && f > 0)
        .map(|(&w, _)| w)
        .ok_or(Error::ZeroCode)
}

const FLUSH: u32 = 32;
const K1: u64 = 0x9e37_79b9_7f4a_7c15;
const K2: u64 = 0xc2b2_ae3d_27d4_eb4f;

#[inline]
fn mum(a: u64, b: u64) -> u64 {
    let r = (a as u128).wrapping_mul(b as u128);
    (r >> 64) as u64 ^ r as u64
}

/// Streaming 128-bit hash of a Z4 symbol vector: symbols packed 32 to a
/// word, each word folded through two independent multiply-mix lanes.
struct SymbolHasher {
    h1: u64,
    h2: u64,
    acc: u64,
    pending: u32,
}

impl SymbolHasher {
    fn new() -> SymbolHasher {
        SymbolHasher {
            h1: K1,
            h2: K2,
            acc: 0,
            pending: 0,
        }
    }

    #[inline]
    fn push(&mut self, sym: u64) {
        self.acc = self.acc << 2 | sym;
        self.pending += 1;
        if self.pending == FLUSH {
            self.flush();
        }
    }

    #[inline]
    fn flush(&mut self) {
        self.h1 = mum(self.h1 ^ self.acc, K1 | 1);
        self.h2 = mum(self.h2 ^ self.acc.rotate_left(32), K2 | 1);
        self.acc = 0;
        self.pending = 0;
    }

    fn finish(mut self, len: u64) -> u128 {
        if self.pending > 0 {
            self.flush();
        }
        self.h1 = mum(self.h1 ^ len, K2 | 1);
        self.h2 = mum(self.h2 ^ len.rotate_left(17), K1 | 1);
        (self.h1 as u128) << 64 | self.h2 as u128
    }
}

/// Per-generator accumulators for one worker.
#[derive(Default)]
struct Tally {
    raw: BTreeMap<u64, u64>,
    sets: HashMap<u64, HashSet<u128>>,
}

impl Tally {
    fn absorb(&mut self, weight: u64, hash: u128) {
        *self.raw.entry(weight).or_insert(0) += 1;
        self.sets.entry(weight).or_default().insert(hash);
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (w, f) in other.raw {
            *self.raw.entry(w).or_insert(0) += f;
        }
        for (w, set) in other.sets {
            self.sets.entry(w).or_default().extend(set);
        }
        self
    }
}

#[inline]
fn scan_codeword(row4: &[u8], row2: &[u8]) -> (u64, u128) {
    let mut weight = 0u64;
    let mut hasher = SymbolHasher::new();
    for (&t4, &t2) in row4.iter().zip(row2) {
        let sym = (t4 + t2) & 3;
        weight += LEE[sym as usize];
        hasher.push(sym as u64);
    }
    (weight, hasher.finish(row4.len() as u64))
}

// Cap on each precomputed trace matrix; beyond it rows are rebuilt per
// generator half instead (only reachable for m >= 14 with complement sets).
const MATRIX_CAP: usize = 128 << 20;

fn build_row4(ctx: &FieldCtx, coords: &[FieldElem], a: usize, out: &mut Vec<u8>) {
    out.clear();
    out.extend(
        coords
            .iter()
            .map(|d| ctx.tr4_raw(ctx.mul_raw(a, d.index()))),
    );
}

fn build_row2(ctx: &FieldCtx, coords: &[FieldElem], b: usize, out: &mut Vec<u8>) {
    out.clear();
    out.extend(
        coords
            .iter()
            .map(|d| 2 * ctx.tr_bin_raw(ctx.mul_raw(b, d.index()))),
    );
}

/// Full 4^m sweep: raw and deduplicated weight distributions.
pub fn enumerate(ctx: &FieldCtx, code: &Code) -> Result<Enumeration> {
    enumerate_with_cap(ctx, code, MATRIX_CAP)
}

fn enumerate_with_cap(ctx: &FieldCtx, code: &Code, cap: usize) -> Result<Enumeration> {
    let n = code.n();
    if n == 0 {
        return Err(Error::EmptyDefiningSet {
            m: ctx.m(),
            spec: code.spec.to_string(),
        });
    }
    let size = ctx.size();
    let use_matrix = size.saturating_mul(n) <= cap;

    let (mt4, mt2) = if use_matrix {
        let mut mt4 = vec![0u8; size * n];
        let mut mt2 = vec![0u8; size * n];
        for x in 0..size {
            for (j, d) in code.coords.iter().enumerate() {
                let prod = ctx.mul_raw(x, d.index());
                mt4[x * n + j] = ctx.tr4_raw(prod);
                mt2[x * n + j] = 2 * ctx.tr_bin_raw(prod);
            }
        }
        (mt4, mt2)
    } else {
        (Vec::new(), Vec::new())
    };

    let tally = (0..size)
        .into_par_iter()
        .map(|a| {
            let mut local = Tally::default();
            let mut row4_buf = Vec::new();
            let mut row2_buf = Vec::new();
            let row4: &[u8] = if use_matrix {
                &mt4[a * n..(a + 1) * n]
            } else {
                build_row4(ctx, &code.coords, a, &mut row4_buf);
                &row4_buf
            };
            for b in 0..size {
                let row2: &[u8] = if use_matrix {
                    &mt2[b * n..(b + 1) * n]
                } else {
                    build_row2(ctx, &code.coords, b, &mut row2_buf);
                    &row2_buf
                };
                let (w, h) = scan_codeword(row4, row2);
                local.absorb(w, h);
            }
            local
        })
        .reduce(Tally::default, Tally::merge);

    let raw = WeightDistribution::from_entries(tally.raw.clone());
    let swept = (size as u64) * (size as u64);
    if raw.total_codewords != swept {
        return Err(Error::Internal(format!(
            "raw sweep counted {} generators, expected {swept}",
            raw.total_codewords
        )));
    }

    let kernel_size = *tally.raw.get(&0).unwrap_or(&0);
    if kernel_size == 0 {
        return Err(Error::Internal("zero generator missing from sweep".into()));
    }

    let mut dedup_entries = BTreeMap::new();
    for (&w, set) in &tally.sets {
        let distinct = set.len() as u64;
        let raw_w = tally.raw[&w];
        if raw_w != kernel_size * distinct {
            return Err(Error::Internal(format!(
                "fiber identity failed at weight {w}: raw {raw_w} != kernel {kernel_size} x distinct {distinct} (hash collision?)"
            )));
        }
        dedup_entries.insert(w, distinct);
    }
    let dedup = WeightDistribution::from_entries(dedup_entries);

    Ok(Enumeration {
        raw,
        dedup,
        kernel_size,
    })
}

/// Record returned by the N₀−N₂ counting identity check.
#[derive(Debug, Clone)]
pub struct NIdentityCheck {
    pub counts: [u64; 4],
    pub lhs: i64,
    pub rhs: GaussInt,
}

/// Count N_j = |{x ∈ D : Tr(ux) = j}| directly and verify the matching
/// S₊-identity for the three proof families.
pub fn count_n_identity(
    ctx: &FieldCtx,
    spec: DefiningSetSpec,
    u: GRElem,
) -> Result<NIdentityCheck> {
    let supported = matches!(
        spec,
        DefiningSetSpec::Single(Z4(0)) | DefiningSetSpec::Complement(Z4(0))
    ) || spec == DefiningSetSpec::Pair(Z4(0), Z4(2))
        || spec == DefiningSetSpec::Pair(Z4(2), Z4(0));
    if !supported {
        return Err(Error::OutOfTheoremScope(format!(
            "no S-identity on file for {spec}"
        )));
    }
    if ctx.m() % 2 == 0 {
        return Err(Error::EvenM(ctx.m()));
    }

    let code = build_defining_set(ctx, spec)?;
    let mut counts = [0u64; 4];
    for &d in &code.coords {
        let t = trace_z4(ctx, gr_mul(ctx, u, GRElem::teich(d)));
        counts[t.0 as usize] += 1;
    }
    let lhs = counts[0] as i64 - counts[2] as i64;

    let s_at = |shift: u8| {
        crate::expsum::s_plus(ctx, gr_add(ctx, u, GRElem::from_z4(Z4(shift))))
    };
    let (numer, denom): (GaussInt, i128) = match spec {
        DefiningSetSpec::Single(_) => (s_at(0) + s_at(1) + s_at(2) + s_at(3), 8),
        DefiningSetSpec::Pair(_, _) => (s_at(0) + s_at(2), 4),
        DefiningSetSpec::Complement(_) => {
            let three = GaussInt::real(3);
            (three * s_at(0) - s_at(1) - s_at(2) - s_at(3), 8)
        }
    };
    if numer.re % denom != 0 || numer.im != 0 {
        return Err(Error::IdentityViolation(format!(
            "S-side {numer} not divisible by {denom} for {spec}"
        )));
    }
    let rhs = GaussInt::real(numer.re / denom);
    if rhs.re != lhs as i128 {
        return Err(Error::IdentityViolation(format!(
            "N0-N2 = {lhs} but S-side gives {rhs} for {spec} at u=({:#x},{:#x})",
            u.x.0, u.y.0
        )));
    }
    Ok(NIdentityCheck { counts, lhs, rhs })
}
