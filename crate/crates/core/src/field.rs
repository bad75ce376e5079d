//! Exact arithmetic for GF(2^m) in a polynomial basis, together with the
//! derived tables used by the ring and sweep layers.
//!
//! Elements are m-bit labels: bit i is the coefficient of α^i, where α is a
//! root of the defining polynomial. The same labels canonically index the
//! Teichmüller set of GR(4,m), so this module also houses the Teichmüller
//! square root and the 2-adic trace table.

use crate::error::{Error, Result};

/// Hard enumeration guard: sweeps are O(4^m) and moment accumulators are
/// sized for m ≤ 15.
pub const MAX_M: u32 = 15;

/// Element of GF(2^m), also the canonical label of a Teichmüller element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(pub u16);

impl FieldElem {
    pub const ZERO: Self = FieldElem(0);
    pub const ONE: Self = FieldElem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Built-in defining polynomials, bit i = coefficient of X^i.
///
/// The odd-m entries are the library defaults named in the docs; weight
/// distributions do not depend on the choice (ring isomorphism), a fixed
/// table just makes outputs byte-reproducible.
pub const DEFAULT_POLYS: [(u32, u32); 15] = [
    (1, 0x3),      // X + 1
    (2, 0x7),      // X^2 + X + 1
    (3, 0xB),      // X^3 + X + 1
    (4, 0x13),     // X^4 + X + 1
    (5, 0x25),     // X^5 + X^2 + 1
    (6, 0x43),     // X^6 + X + 1
    (7, 0x83),     // X^7 + X + 1
    (8, 0x11D),    // X^8 + X^4 + X^3 + X^2 + 1
    (9, 0x211),    // X^9 + X^4 + 1
    (10, 0x409),   // X^10 + X^3 + 1
    (11, 0x805),   // X^11 + X^2 + 1
    (12, 0x1053),  // X^12 + X^6 + X^4 + X + 1
    (13, 0x201B),  // X^13 + X^4 + X^3 + X + 1
    (14, 0x402B),  // X^14 + X^5 + X^3 + X + 1
    (15, 0x8003),  // X^15 + X + 1
];

/// Look up the built-in defining polynomial for m.
pub fn default_poly(m: u32) -> Result<u32> {
    DEFAULT_POLYS
        .iter()
        .find(|&&(mm, _)| mm == m)
        .map(|&(_, p)| p)
        .ok_or_else(|| Error::InvalidField(format!("no built-in polynomial for m={m}")))
}

/// Immutable context for GF(2^m): defining polynomial plus derived tables.
///
/// Construction validates irreducibility and finds a multiplicative
/// generator; afterwards every operation is a pure function of the context,
/// so it can be shared freely across worker threads.
#[derive(Debug)]
pub struct FieldCtx {
    m: u32,
    poly: u32,
    generator: FieldElem,
    exp: Vec<u16>,
    log: Vec<u16>,
    /// Binary trace as a linear functional: tr(x) = parity(x & tr_mask).
    tr_mask: u16,
    /// Z4-valued Galois ring trace of each Teichmüller element.
    tr4: Vec<u8>,
}

impl FieldCtx {
    /// Build a context from the built-in polynomial table.
    pub fn with_default_poly(m: u32) -> Result<FieldCtx> {
        FieldCtx::new(m, default_poly(m)?)
    }

    pub fn new(m: u32, poly: u32) -> Result<FieldCtx> {
        if !(1..=MAX_M).contains(&m) {
            return Err(Error::InvalidField(format!(
                "m={m} out of range 1..={MAX_M}"
            )));
        }
        if poly_degree(poly) != m {
            return Err(Error::InvalidField(format!(
                "poly {poly:#x} has degree {} but m={m}",
                poly_degree(poly)
            )));
        }
        if !is_irreducible(poly, m) {
            return Err(Error::InvalidField(format!(
                "poly {poly:#x} is reducible over GF(2)"
            )));
        }

        let size = 1usize << m;
        let order = (size - 1) as u32;

        // Multiplicative generator: α (label 2) for primitive polynomials,
        // otherwise sweep. m=1 has the trivial group, generated by 1.
        let generator = if m == 1 {
            1u32
        } else {
            (2..size as u32)
                .find(|&g| element_order(g, poly, m) == order)
                .expect("GF(2^m)* is cyclic; a generator exists")
        };

        // exp table doubled so products of two logs index without a mod.
        let mut exp = vec![0u16; 2 * order as usize + 2];
        let mut log = vec![0u16; size];
        let mut acc = 1u32;
        for (k, slot) in exp.iter_mut().enumerate().take(order as usize) {
            *slot = acc as u16;
            log[acc as usize] = k as u16;
            acc = clmul_mod(acc, generator, poly, m);
        }
        if acc != 1 {
            return Err(Error::Internal("generator order sweep failed".into()));
        }
        for k in 0..order as usize + 2 {
            exp[order as usize + k] = exp[k % order as usize];
        }

        let tr_mask = {
            let mut mask = 0u16;
            for i in 0..m {
                let basis = 1u32 << i;
                if trace_by_squaring(basis, poly, m) == 1 {
                    mask |= 1 << i;
                }
            }
            mask
        };

        let mut ctx = FieldCtx {
            m,
            poly,
            generator: FieldElem(generator as u16),
            exp,
            log,
            tr_mask,
            tr4: Vec::new(),
        };
        ctx.tr4 = ctx.build_tr4_table();
        Ok(ctx)
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn poly(&self) -> u32 {
        self.poly
    }

    pub fn generator(&self) -> FieldElem {
        self.generator
    }

    /// Number of field elements, 2^m.
    #[inline]
    pub fn size(&self) -> usize {
        1 << self.m
    }

    #[inline]
    fn order(&self) -> usize {
        (1 << self.m) - 1
    }

    /// Raw product of two labels.
    #[inline]
    pub fn mul_raw(&self, a: usize, b: usize) -> usize {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[self.log[a] as usize + self.log[b] as usize] as usize
    }

    /// Product in GF(2^m).
    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.mul_raw(a.index(), b.index()) as u16)
    }

    #[inline]
    pub fn sqr(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    /// x^k for nonnegative k.
    pub fn pow(&self, a: FieldElem, mut k: u64) -> FieldElem {
        if a.is_zero() {
            return if k == 0 { FieldElem::ONE } else { FieldElem::ZERO };
        }
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.sqr(base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; zero maps to zero.
    pub fn inv(&self, a: FieldElem) -> FieldElem {
        if a.is_zero() {
            return FieldElem::ZERO;
        }
        let order = self.order();
        let l = self.log[a.index()] as usize;
        FieldElem(self.exp[(order - l) % order])
    }

    /// Square root on the Teichmüller labels: a^(2^(m-1)), computed by m-1
    /// repeated squarings (squaring is a bijection in characteristic 2).
    pub fn teich_sqrt(&self, a: FieldElem) -> FieldElem {
        let mut acc = a;
        for _ in 0..self.m.saturating_sub(1) {
            acc = self.sqr(acc);
        }
        acc
    }

    #[inline]
    pub fn sqrt_raw(&self, a: usize) -> usize {
        self.teich_sqrt(FieldElem(a as u16)).index()
    }

    /// Transported field addition on the Teichmüller labels: plain XOR under
    /// the canonical labeling.
    #[inline]
    pub fn oplus(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(a.0 ^ b.0)
    }

    /// Binary field trace tr: GF(2^m) -> GF(2).
    #[inline]
    pub fn tr_bin(&self, x: FieldElem) -> u8 {
        ((x.0 & self.tr_mask).count_ones() & 1) as u8
    }

    #[inline]
    pub fn tr_bin_raw(&self, x: usize) -> u8 {
        ((x as u16 & self.tr_mask).count_ones() & 1) as u8
    }

    /// Z4 trace of the Teichmüller element with label x (the 2-adic
    /// expansion tr(x) + 2p(x); see `ring::trace_z4` for full ring elements).
    #[inline]
    pub fn tr4_raw(&self, x: usize) -> u8 {
        self.tr4[x]
    }

    /// tr(x) + 2p(x) mod 4 with p the quadratic part of the 2-adic trace
    /// expansion. Odd m sums tr(x^(2^j+1)) for j = 1..=(m-1)/2; even m stops
    /// at m/2-1 and adds the half-field trace of x^(2^(m/2)+1).
    fn trace_z4_teich_expansion(&self, x: FieldElem) -> u8 {
        let tr = self.tr_bin(x);
        let mut p = 0u8;
        let half = self.m / 2;
        let upper = if self.m % 2 == 1 { half } else { half - 1 };
        let mut pow = x; // x^(2^j)
        for _ in 1..=upper {
            pow = self.sqr(pow);
            p ^= self.tr_bin(self.mul(pow, x));
        }
        if self.m % 2 == 0 {
            // subfield trace tr_1^{m/2} of the norm x^(2^(m/2)+1)
            let w = self.mul(self.pow(x, 1 << half), x);
            let mut s = FieldElem::ZERO;
            let mut q = w;
            for _ in 0..half {
                s = self.oplus(s, q);
                q = self.sqr(q);
            }
            debug_assert!(s.0 <= 1, "subfield trace must land in GF(2)");
            p ^= s.0 as u8;
        }
        (tr + 2 * p) & 3
    }

    fn build_tr4_table(&self) -> Vec<u8> {
        (0..self.size())
            .map(|x| self.trace_z4_teich_expansion(FieldElem(x as u16)))
            .collect()
    }
}

fn poly_degree(poly: u32) -> u32 {
    31 - poly.leading_zeros()
}

/// Carry-less product of two labels reduced by `poly` (degree m).
pub fn clmul_mod(a: u32, b: u32, poly: u32, m: u32) -> u32 {
    let mut prod = 0u32;
    let mut aa = a;
    let mut bb = b;
    while bb != 0 {
        if bb & 1 == 1 {
            prod ^= aa;
        }
        aa <<= 1;
        if aa >> m & 1 == 1 {
            aa ^= poly;
        }
        bb >>= 1;
    }
    prod & ((1 << m) - 1)
}

fn trace_by_squaring(x: u32, poly: u32, m: u32) -> u8 {
    let mut acc = 0u32;
    let mut pow = x;
    for _ in 0..m {
        acc ^= pow;
        pow = clmul_mod(pow, pow, poly, m);
    }
    debug_assert!(acc <= 1);
    acc as u8
}

fn element_order(x: u32, poly: u32, m: u32) -> u32 {
    let mut acc = x;
    let mut k = 1u32;
    while acc != 1 {
        acc = clmul_mod(acc, x, poly, m);
        k += 1;
        if k > (1 << m) {
            return 0; // not a unit (cannot happen for x != 0 in a field)
        }
    }
    k
}

/// Irreducibility over GF(2): x^(2^m) ≡ x mod f, and x^(2^(m/p)) ≢ x for
/// every prime p | m.
pub fn is_irreducible(poly: u32, m: u32) -> bool {
    if poly_degree(poly) != m {
        return false;
    }
    if m == 1 {
        return true;
    }
    let frob = |x: u32, times: u32| -> u32 {
        let mut acc = x;
        for _ in 0..times {
            acc = clmul_mod(acc, acc, poly, m);
        }
        acc
    };
    // x = label 2
    if frob(2, m) != 2 {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13] {
        if p > m {
            break;
        }
        if m % p == 0 && frob(2, m / p) == 2 {
            return false;
        }
    }
    true
}
